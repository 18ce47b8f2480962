//! Second-quantized operator algebra on occupation-number states.
//!
//! Fermionic signs follow the Jordan-Wigner ordering of site indices, so the
//! ordered pair state `a+_{l1} a+_{l2} |0>` with `l1 < l2` is `+|n_{l1} = n_{l2} = 1>`.
//! This module is a literal operator implementation, deliberately separate
//! from the amplitude-matrix shortcuts used by the production code paths.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::lattice::Statistics;
use crate::model::TwoParticleBasis;

pub type Occupation = Vec<u8>;

/// Superposition of occupation-number states.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<Occupation, Complex64>,
}

impl FockVector {
    pub fn vacuum(sites: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; sites], Complex64::new(1.0, 0.0));
        FockVector { terms }
    }

    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm() == 0.0)
    }

    pub fn add_term(&mut self, occ: Occupation, amp: Complex64) {
        if amp == Complex64::new(0.0, 0.0) {
            return;
        }
        *self.terms.entry(occ).or_default() += amp;
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        FockVector {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    pub fn add(&mut self, other: &FockVector) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), *v);
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.terms
            .iter()
            .filter_map(|(k, v)| other.terms.get(k).map(|w| v.conj() * w))
            .sum()
    }

    pub fn get(&self, occ: &[u8]) -> Complex64 {
        self.terms.get(occ).copied().unwrap_or_default()
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Occupation) -> Option<(Occupation, f64)>) -> Self {
        let mut out = FockVector::zero();
        for (occ, amp) in &self.terms {
            if let Some((next, factor)) = f(occ) {
                out.add_term(next, amp * factor);
            }
        }
        out
    }
}

/// Creation/annihilation operators for one kind of statistics.
#[derive(Debug, Clone, Copy)]
pub struct FockAlgebra {
    pub statistics: Statistics,
}

impl FockAlgebra {
    pub fn new(statistics: Statistics) -> Self {
        FockAlgebra { statistics }
    }

    fn string_sign(&self, occ: &[u8], site: usize) -> f64 {
        match self.statistics {
            Statistics::Fermion => {
                let below: u32 = occ[..site].iter().map(|&n| n as u32).sum();
                if below % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            _ => 1.0,
        }
    }

    pub fn create(&self, site: usize, v: &FockVector) -> FockVector {
        v.map_terms(|occ| {
            let n = occ[site];
            let factor = match self.statistics {
                Statistics::Boson => ((n + 1) as f64).sqrt(),
                _ if n >= 1 => return None,
                _ => 1.0,
            };
            let sign = self.string_sign(occ, site);
            let mut next = occ.clone();
            next[site] += 1;
            Some((next, factor * sign))
        })
    }

    pub fn annihilate(&self, site: usize, v: &FockVector) -> FockVector {
        v.map_terms(|occ| {
            let n = occ[site];
            if n == 0 {
                return None;
            }
            let factor = match self.statistics {
                Statistics::Boson => (n as f64).sqrt(),
                _ => 1.0,
            };
            let sign = self.string_sign(occ, site);
            let mut next = occ.clone();
            next[site] -= 1;
            Some((next, factor * sign))
        })
    }

    /// `a+_to a_from`.
    pub fn hop(&self, to: usize, from: usize, v: &FockVector) -> FockVector {
        self.create(to, &self.annihilate(from, v))
    }

    /// `a+_a a+_b |0>` as a literal operator product.
    pub fn pair(&self, sites: usize, a: usize, b: usize) -> FockVector {
        self.create(a, &self.create(b, &FockVector::vacuum(sites)))
    }

    /// `-J sum_l (a+_l a_{l+1} + h.c.)` with periodic wrap.
    pub fn apply_hopping(&self, sites: usize, hopping: f64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for l in 0..sites {
            let next = (l + 1) % sites;
            out.add(&self.hop(l, next, v));
            out.add(&self.hop(next, l, v));
        }
        out.scaled(Complex64::new(-hopping, 0.0))
    }

    /// `V sum_l n_l n_{l+1}` with periodic wrap (diagonal in occupations).
    pub fn apply_interaction(&self, sites: usize, interaction: f64, v: &FockVector) -> FockVector {
        v.map_terms(|occ| {
            let e: f64 = (0..sites)
                .map(|l| occ[l] as f64 * occ[(l + 1) % sites] as f64)
                .sum();
            Some((occ.clone(), interaction * e))
        })
    }
}

/// Occupation vector of basis state `i` (sign +1 by the ordering convention).
pub fn basis_occupation(basis: &TwoParticleBasis, i: usize) -> Occupation {
    let (a, b) = basis.pair(i);
    let mut occ = vec![0u8; basis.spec().sites()];
    occ[a] += 1;
    occ[b] += 1;
    occ
}

/// Embed basis amplitudes as a Fock vector.
pub fn to_fock(basis: &TwoParticleBasis, amplitudes: &[Complex64]) -> FockVector {
    let mut v = FockVector::zero();
    for (i, amp) in amplitudes.iter().enumerate() {
        v.add_term(basis_occupation(basis, i), *amp);
    }
    v
}

/// Project a two-particle Fock vector back onto basis amplitudes.
pub fn from_fock(basis: &TwoParticleBasis, v: &FockVector) -> Vec<Complex64> {
    (0..basis.dim())
        .map(|i| v.get(&basis_occupation(basis, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSpec;
    use crate::model::build_hamiltonian;

    #[test]
    fn fermion_anticommutes() {
        let alg = FockAlgebra::new(Statistics::Fermion);
        let ab = alg.pair(5, 1, 3);
        let ba = alg.pair(5, 3, 1);
        let mut sum = ab.clone();
        sum.add(&ba);
        assert!(sum.is_zero());
        assert_eq!(ab.get(&[0, 1, 0, 1, 0]), Complex64::new(1.0, 0.0));
        assert!(alg.pair(5, 2, 2).is_zero());
    }

    #[test]
    fn boson_doublon_norm() {
        let alg = FockAlgebra::new(Statistics::Boson);
        let d = alg.pair(3, 1, 1);
        assert!((d.get(&[0, 2, 0]).re - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn hcb_commutes_off_site() {
        let alg = FockAlgebra::new(Statistics::HardCoreBoson);
        assert_eq!(alg.pair(4, 0, 2), alg.pair(4, 2, 0));
        assert!(alg.pair(4, 1, 1).is_zero());
    }

    #[test]
    fn operator_hamiltonian_matches_dense_build() {
        for stats in Statistics::ALL {
            let spec = LatticeSpec::with_sites(5, 1.3, -0.7, stats).unwrap();
            let basis = TwoParticleBasis::new(spec);
            let alg = FockAlgebra::new(stats);
            let h = build_hamiltonian(&spec);
            for j in 0..basis.dim() {
                let mut col = FockVector::zero();
                let unit = to_fock(&basis, &{
                    let mut a = vec![Complex64::new(0.0, 0.0); basis.dim()];
                    a[j] = Complex64::new(1.0, 0.0);
                    a
                });
                col.add(&alg.apply_hopping(5, spec.hopping(), &unit));
                col.add(&alg.apply_interaction(5, spec.interaction(), &unit));
                let amps = from_fock(&basis, &col);
                for i in 0..basis.dim() {
                    assert!((amps[i].re - h[(i, j)]).abs() < 1e-14, "{stats} ({i},{j})");
                    assert_eq!(amps[i].im, 0.0);
                }
            }
        }
    }
}
