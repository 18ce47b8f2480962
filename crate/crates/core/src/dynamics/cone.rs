use serde::Serialize;

use crate::error::{Error, Result};

/// Default arrival threshold on the summed minor-diagonal weight.
pub const CONE_THRESHOLD: f64 = 0.05;

/// Minimum number of arrival points for a slope fit.
pub const MIN_POINTS: usize = 4;

/// Farthest distance used in a fit, further capped at `L - 3`.
pub const MAX_DISTANCE: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeFit {
    /// Sites per unit time (1/J).
    pub speed: f64,
    pub intercept: f64,
    /// `(first sample time, last arrival time)`.
    pub window: (f64, f64),
    /// `(distance, arrival time)` pairs used by the fit.
    pub arrivals: Vec<(usize, f64)>,
}

/// Ring distance between two site indices.
fn ring_distance(a: usize, b: usize, sites: usize) -> usize {
    let d = (a + sites - b) % sites;
    d.min(sites - d)
}

/// Light-cone speed of the composite from a minor-diagonal series.
///
/// `series[i][q]` is `Gamma_{q, q+1}` at `times[i]`, with the pair starting
/// on bond `origin`. The arrival time at distance `d` is the first
/// threshold crossing of `Gamma` summed over bonds `origin +- d`, linearly
/// interpolated between samples; the speed is the least-squares slope of
/// distance against arrival time.
pub fn cone_speed(times: &[f64], series: &[Vec<f64>], origin: usize, threshold: f64) -> Result<ConeFit> {
    if times.len() < MIN_POINTS || series.len() != times.len() {
        return Err(Error::InsufficientPoints {
            found: times.len().min(series.len()),
            required: MIN_POINTS,
        });
    }
    let sites = series[0].len();
    let half = sites / 2;
    let dmax = MAX_DISTANCE.min(half.saturating_sub(3));

    let mut arrivals = Vec::new();
    for d in 1..=dmax {
        let plus = (origin + d) % sites;
        let minus = (origin + sites - d) % sites;
        let weight = |i: usize| series[i][plus] + series[i][minus];
        let Some(i) = (0..times.len()).find(|&i| weight(i) > threshold) else {
            break;
        };
        let t = if i == 0 {
            times[0]
        } else {
            let (w0, w1) = (weight(i - 1), weight(i));
            times[i - 1] + (threshold - w0) / (w1 - w0) * (times[i] - times[i - 1])
        };
        arrivals.push((d, t));
    }
    if arrivals.len() < MIN_POINTS {
        return Err(Error::InsufficientPoints {
            found: arrivals.len(),
            required: MIN_POINTS,
        });
    }

    let last = arrivals.last().map(|a| a.1).unwrap_or(times[0]);
    for (i, &t) in times.iter().enumerate() {
        if t > last {
            break;
        }
        let far: f64 = (0..sites)
            .filter(|&q| ring_distance(q, origin, sites) + 1 >= half)
            .map(|q| series[i][q])
            .sum();
        if far > threshold {
            return Err(Error::BoundaryContamination { time: t, weight: far });
        }
    }

    let n = arrivals.len() as f64;
    let mean_t = arrivals.iter().map(|a| a.1).sum::<f64>() / n;
    let mean_d = arrivals.iter().map(|a| a.0 as f64).sum::<f64>() / n;
    let sxy: f64 = arrivals
        .iter()
        .map(|&(d, t)| (t - mean_t) * (d as f64 - mean_d))
        .sum();
    let sxx: f64 = arrivals.iter().map(|&(_, t)| (t - mean_t).powi(2)).sum();
    let speed = sxy / sxx;
    Ok(ConeFit {
        speed,
        intercept: mean_d - speed * mean_t,
        window: (times[0], last),
        arrivals,
    })
}

/// `n` evenly spaced samples on `[start, end]`.
pub fn time_grid(start: f64, end: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![start];
    }
    (0..n)
        .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
        .collect()
}
