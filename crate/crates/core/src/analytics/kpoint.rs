//! Discrete transmission points: the two-point optimum, the `M_k` recurrence
//! and the optimal k-point rates.

use serde::{Deserialize, Serialize};

use super::check_stations;
use crate::distributions::PointProbs;
use crate::error::{check_closed, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPointOptimum {
    /// Probability of transmitting immediately.
    pub p: f64,
    /// Probability of transmitting after one quantum.
    pub q: f64,
    pub success: f64,
}

/// `N p (1-p)^(N-1) + N q (1-(p+q))^(N-1)`.
pub fn two_point_success(n: u32, p: f64, q: f64) -> Result<f64> {
    check_stations(n)?;
    check_closed("p", p, 0.0, 1.0)?;
    check_closed("q", q, 0.0, 1.0)?;
    if p + q > 1.0 + crate::distributions::PROB_SUM_SLACK {
        return Err(Error::ProbabilitySum { sum: p + q });
    }
    let e = n as i32 - 1;
    let nf = n as f64;
    let v = nf * p * (1.0 - p).powi(e) + nf * q * (1.0 - (p + q)).max(0.0).powi(e);
    Ok(v.clamp(0.0, 1.0))
}

/// Closed-form maximizer of [`two_point_success`] for `N >= 2`.
pub fn two_point_optimum(n: u32) -> Result<TwoPointOptimum> {
    if n < 2 {
        return Err(Error::invalid(
            "n",
            "the two-point optimum needs at least two stations",
        ));
    }
    let nf = n as f64;
    let m = nf - 1.0;
    let q = m * m / (nf * nf * (m - (m / nf).powi(n as i32)));
    let p = 1.0 - q * nf;
    Ok(TwoPointOptimum {
        p,
        q,
        success: two_point_success(n, p, q)?,
    })
}

/// `M_1 = 1/e`, `M_{j+1} = e^(M_j - 1)`: the best asymptotic single-winner
/// probability reachable with `j` transmission points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MSequence {
    values: Vec<f64>,
}

impl MSequence {
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `M_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> Option<f64> {
        j.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("k >= 1")
    }
}

pub fn m_sequence(k: usize) -> Result<MSequence> {
    if k == 0 {
        return Err(Error::invalid(
            "k",
            "at least one transmission point is required",
        ));
    }
    let mut values = Vec::with_capacity(k);
    values.push((-1.0f64).exp());
    for j in 1..k {
        values.push((values[j - 1] - 1.0).exp());
    }
    Ok(MSequence { values })
}

/// `f_k(a) = Σ a_i e^-(a_1 + ... + a_i)`, the large-`N` limit of the k-point
/// success probability with `p_i = a_i / N`.
pub fn f_k_objective(a: &[f64]) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::invalid("a", "the rate vector must be non-empty"));
    }
    if let Some(bad) = a.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
        return Err(Error::invalid(
            "a",
            format!("rate {bad} must be finite and >= 0"),
        ));
    }
    let mut acc = 0.0;
    Ok(a.iter()
        .map(|&ai| {
            acc += ai;
            ai * (-acc).exp()
        })
        .sum())
}

/// Rates `a_1..a_k` that maximize `f_k`; the station population `N` scales
/// them to probabilities `p_i = a_i / N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateVector {
    a: Vec<f64>,
}

impl RateVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.a.iter().sum()
    }

    /// `p_i = a_i / N`; fails when the probabilities would sum past 1.
    pub fn to_probs(&self, n: u32) -> Result<PointProbs> {
        check_stations(n)?;
        PointProbs::new(self.a.iter().map(|a| a / n as f64).collect())
    }
}

/// `a_k = 1` and `a_i = 1 - M_{k-i}` for `i < k`.
pub fn k_point_optimal_rates(k: usize) -> Result<RateVector> {
    let m = m_sequence(k)?;
    let a = (1..=k)
        .map(|i| {
            if i == k {
                1.0
            } else {
                1.0 - m.get(k - i).unwrap()
            }
        })
        .collect();
    Ok(RateVector { a })
}

/// Exact finite-`N` success probability `Σ N p_i (1 - (p_1 + ... + p_i))^(N-1)`.
pub fn k_point_success_exact(n: u32, probs: &[f64]) -> Result<f64> {
    check_stations(n)?;
    let probs = PointProbs::new(probs.to_vec())?;
    let e = n as i32 - 1;
    let nf = n as f64;
    let v: f64 = probs
        .as_slice()
        .iter()
        .zip(probs.cumulative())
        .map(|(&p, &c)| nf * p * (1.0 - c).max(0.0).powi(e))
        .sum();
    Ok(v.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    const PUBLISHED_TWO_POINT: [f64; 9] = [
        0.666667, 0.612476, 0.589383, 0.576551, 0.568379, 0.562717, 0.558561, 0.555382, 0.55287,
    ];

    #[test]
    fn two_point_examples() {
        assert!((two_point_success(2, 1.0 / 3.0, 1.0 / 3.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((two_point_success(1, 0.4, 0.3).unwrap() - 0.7).abs() < 1e-15);
        assert!((two_point_success(3, 0.2, 0.3).unwrap() - 0.609).abs() < 1e-15);
        assert!(matches!(
            two_point_success(3, 0.6, 0.5),
            Err(Error::ProbabilitySum { .. })
        ));
    }

    /// Joint enumeration over {now, after λ, silent}^N.
    fn enumerate_two_point(n: u32, p: f64, q: f64) -> f64 {
        let choices = [p, q, 1.0 - p - q];
        let mut total = 0.0;
        for code in 0..3usize.pow(n) {
            let mut c = code;
            let (mut weight, mut counts) = (1.0, [0usize; 3]);
            for _ in 0..n {
                weight *= choices[c % 3];
                counts[c % 3] += 1;
                c /= 3;
            }
            if counts[0] == 1 || (counts[0] == 0 && counts[1] == 1) {
                total += weight;
            }
        }
        total
    }

    #[test]
    fn two_point_matches_enumeration() {
        for n in 1..=7 {
            for &(p, q) in &[
                (0.2, 0.3),
                (0.0, 0.5),
                (0.5, 0.5),
                (0.1, 0.0),
                (1.0 / 3.0, 1.0 / 3.0),
            ] {
                let v = two_point_success(n, p, q).unwrap();
                assert!((v - enumerate_two_point(n, p, q)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn two_point_table() {
        let first = two_point_optimum(2).unwrap();
        assert!((first.p - 1.0 / 3.0).abs() < 1e-15 && (first.q - 1.0 / 3.0).abs() < 1e-15);
        for (j, &expected) in PUBLISHED_TWO_POINT.iter().enumerate() {
            let opt = two_point_optimum(j as u32 + 2).unwrap();
            assert!((opt.success - expected).abs() < 1e-5, "N={}", j + 2);
            assert!((opt.p - (1.0 - opt.q * (j as f64 + 2.0))).abs() < 1e-15);
            assert!(opt.p >= 0.0 && opt.q >= 0.0 && opt.p + opt.q <= 1.0);
        }
        assert!(two_point_optimum(1).is_err());
    }

    #[test]
    fn two_point_optimum_beats_grid_search() {
        let n = 6;
        let f = |p: f64, q: f64| two_point_success(n, p, q).unwrap_or(f64::NEG_INFINITY);
        // coarse grid over the simplex, then successively finer local grids
        let (mut bp, mut bq, mut best) = (0.0, 0.0, f64::NEG_INFINITY);
        let steps = 200;
        for i in 0..=steps {
            for j in 0..=(steps - i) {
                let (p, q) = (i as f64 / steps as f64, j as f64 / steps as f64);
                let v = f(p, q);
                if v > best {
                    (bp, bq, best) = (p, q, v);
                }
            }
        }
        let mut h = 1.0 / steps as f64;
        for _ in 0..30 {
            let (cp, cq) = (bp, bq);
            for di in -10..=10 {
                for dj in -10..=10 {
                    let (p, q) = (cp + di as f64 * h / 10.0, cq + dj as f64 * h / 10.0);
                    if p < 0.0 || q < 0.0 || p + q > 1.0 {
                        continue;
                    }
                    let v = f(p, q);
                    if v > best {
                        (bp, bq, best) = (p, q, v);
                    }
                }
            }
            h /= 5.0;
        }
        let opt = two_point_optimum(n).unwrap();
        assert!((opt.success - best).abs() < 1e-6, "{opt:?} vs grid {best}");
    }

    #[test]
    fn two_point_optimum_is_local_max() {
        for n in 2..=10 {
            let opt = two_point_optimum(n).unwrap();
            for dir in 0..8 {
                let ang = dir as f64 * std::f64::consts::FRAC_PI_4;
                let (p, q) = (opt.p + 1e-3 * ang.cos(), opt.q + 1e-3 * ang.sin());
                if let Ok(v) = two_point_success(n, p.max(0.0), q.max(0.0)) {
                    assert!(v <= opt.success + 1e-6, "n={n} dir={dir}");
                }
            }
        }
    }

    #[test]
    fn m_sequence_examples() {
        assert_eq!(m_sequence(1).unwrap().as_slice(), &[1.0 / E]);
        assert!((m_sequence(1).unwrap().last() - 0.367879).abs() < 1e-6);
        let m2 = m_sequence(2).unwrap().last();
        assert!((m2 - (-1.0 + 1.0 / E).exp()).abs() < 1e-15);
        assert!((m2 - 0.531464).abs() < 1e-6);
        let m = m_sequence(50).unwrap();
        assert!((m.last() - 1.0).abs() < 0.05);
        assert!(m.as_slice().windows(2).all(|w| w[0] < w[1]));
        assert!(m.as_slice().iter().all(|&v| v > 0.0 && v < 1.0));
        for w in m.as_slice().windows(2) {
            assert_eq!(w[1], (-1.0 + w[0]).exp());
        }
        assert!(m_sequence(0).is_err());
    }

    #[test]
    fn f_k_examples() {
        assert!((f_k_objective(&[1.0]).unwrap() - 1.0 / E).abs() < 1e-15);
        assert_eq!(f_k_objective(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        let two = k_point_optimal_rates(2).unwrap();
        assert!((f_k_objective(two.as_slice()).unwrap() - 0.531464).abs() < 1e-6);
        assert!(f_k_objective(&[]).is_err());
        assert!(f_k_objective(&[0.5, -0.1]).is_err());
    }

    #[test]
    fn optimal_rates_examples() {
        assert_eq!(k_point_optimal_rates(1).unwrap().as_slice(), &[1.0]);
        let two = k_point_optimal_rates(2).unwrap();
        assert!((two.as_slice()[0] - (1.0 - 1.0 / E)).abs() < 1e-15);
        assert!((two.as_slice()[0] - 0.632121).abs() < 1e-6);
        assert_eq!(two.as_slice()[1], 1.0);
    }

    #[test]
    fn optimal_rates_reach_m_k() {
        let m = m_sequence(20).unwrap();
        for k in 1..=20 {
            let a = k_point_optimal_rates(k).unwrap();
            assert!(a.as_slice().iter().all(|&v| v > 0.0 && v <= 1.0));
            let v = f_k_objective(a.as_slice()).unwrap();
            assert!((v - m.get(k).unwrap()).abs() < 1e-12, "k={k}");
        }
    }

    /// Cyclic coordinate ascent with golden-section line searches on [0, 3].
    fn coordinate_maximize(mut a: Vec<f64>) -> f64 {
        let f = |a: &[f64]| f_k_objective(a).unwrap();
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            for i in 0..a.len() {
                let (mut lo, mut hi) = (0.0, 3.0);
                while hi - lo > 1e-12 {
                    let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
                    let mut t1 = a.clone();
                    t1[i] = x1;
                    let mut t2 = a.clone();
                    t2[i] = x2;
                    if f(&t1) < f(&t2) {
                        lo = x1;
                    } else {
                        hi = x2;
                    }
                }
                a[i] = 0.5 * (lo + hi);
            }
        }
        f(&a)
    }

    #[test]
    fn optimal_rates_match_numeric_maximum() {
        let numeric = coordinate_maximize(vec![0.5, 0.5, 0.5]);
        let closed = f_k_objective(k_point_optimal_rates(3).unwrap().as_slice()).unwrap();
        assert!((numeric - closed).abs() < 1e-9, "{numeric} vs {closed}");
    }

    /// Enumeration over (k+1)^N joint choices.
    fn enumerate_k_point(n: u32, probs: &[f64]) -> f64 {
        let k = probs.len();
        let silent = 1.0 - probs.iter().sum::<f64>();
        let mut total = 0.0;
        for code in 0..(k + 1).pow(n) {
            let mut c = code;
            let mut weight = 1.0;
            let mut counts = vec![0usize; k];
            for _ in 0..n {
                let choice = c % (k + 1);
                c /= k + 1;
                if choice == k {
                    weight *= silent;
                } else {
                    weight *= probs[choice];
                    counts[choice] += 1;
                }
            }
            if counts.iter().find(|&&c| c > 0) == Some(&1) {
                total += weight;
            }
        }
        total
    }

    #[test]
    fn k_point_exact_examples() {
        assert!(
            (k_point_success_exact(2, &[1.0 / 3.0, 1.0 / 3.0]).unwrap() - 2.0 / 3.0).abs() < 1e-15
        );
        assert!((k_point_success_exact(1, &[0.25, 0.25]).unwrap() - 0.5).abs() < 1e-15);
        let v = k_point_success_exact(4, &[0.3, 0.2, 0.1]).unwrap();
        assert!((v - enumerate_k_point(4, &[0.3, 0.2, 0.1])).abs() < 1e-12);
        assert!(k_point_success_exact(3, &[0.7, 0.4]).is_err());
    }

    #[test]
    fn k_point_exact_approaches_m_k() {
        let probs = k_point_optimal_rates(5).unwrap().to_probs(1000).unwrap();
        let v = k_point_success_exact(1000, probs.as_slice()).unwrap();
        let m5 = m_sequence(5).unwrap().last();
        assert!(((v - m5) / m5).abs() < 0.01, "{v} vs {m5}");
    }

    #[test]
    fn single_point_is_nakano_olariu() {
        for n in 1..20 {
            for i in 0..=10 {
                let p = i as f64 / 10.0;
                let a = k_point_success_exact(n, &[p]).unwrap();
                let b = crate::analytics::clw_success_prob(n, p, 1.0, 0.0).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rates_scale_to_probabilities() {
        assert!(k_point_optimal_rates(2).unwrap().to_probs(1).is_err());
        assert!(k_point_optimal_rates(15).unwrap().to_probs(5).is_ok());
    }
}
