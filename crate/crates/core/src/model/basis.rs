use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Statistics};

/// Ordered two-particle basis `|l1 l2>` in lexicographic order.
///
/// Bosons use `l1 <= l2` (doublons included), fermions and hard-core bosons
/// use `l1 < l2`. Pairs are stored as site indices `0..L_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleBasis {
    spec: LatticeSpec,
    pairs: Vec<(usize, usize)>,
    // dense `L_t x L_t` lookup, `usize::MAX` for pairs outside the basis
    lookup: Vec<usize>,
}

impl TwoParticleBasis {
    pub fn new(spec: LatticeSpec) -> Self {
        let n = spec.sites();
        let doublons = spec.statistics().allows_double_occupancy();
        let mut pairs = Vec::with_capacity(n * (n + 1) / 2);
        let mut lookup = vec![usize::MAX; n * n];
        for a in 0..n {
            let start = if doublons { a } else { a + 1 };
            for b in start..n {
                lookup[a * n + b] = pairs.len();
                pairs.push((a, b));
            }
        }
        TwoParticleBasis { spec, pairs, lookup }
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn statistics(&self) -> Statistics {
        self.spec.statistics()
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Site indices of basis state `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    /// Site labels of basis state `i`.
    pub fn pair_labels(&self, i: usize) -> (i64, i64) {
        let (a, b) = self.pairs[i];
        (self.spec.site_label(a), self.spec.site_label(b))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Basis position of an ordered index pair.
    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.spec.sites();
        if a >= n || b >= n {
            return None;
        }
        match self.lookup[a * n + b] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    /// Basis position of the pair with site labels `(l1, l2)`, `l1 <= l2`.
    pub fn index_of(&self, l1: i64, l2: i64) -> Result<usize> {
        let a = self.spec.site_index(l1)?;
        let b = self.spec.site_index(l2)?;
        if a > b {
            return Err(Error::UnorderedPair(l1, l2));
        }
        self.index(a, b).ok_or(Error::DoubleOccupancy {
            site: l1,
            statistics: self.statistics(),
        })
    }

    /// Basis position of an unordered pair together with the sign of the
    /// reordering, so that `a+_a a+_b |0> = sign * norm * |basis(idx)>`.
    pub fn index_unordered(&self, a: usize, b: usize) -> Option<(usize, f64)> {
        if a <= b {
            self.index(a, b).map(|i| (i, 1.0))
        } else {
            self.index(b, a).map(|i| (i, self.statistics().exchange_sign()))
        }
    }
}
