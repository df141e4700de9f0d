//! Quota gaps in large economies with i.i.d. types.
//!
//! Under the independent prior with marginal `π`, a qualified majority with
//! quota `j >= 1` separates the two interim probabilities by exactly
//!
//! ```text
//! Q^j(a) - Q^j(b) = C(n-1, j-1) · π^(j-1) · (1-π)^(n-j),
//! ```
//!
//! and the quota-`j` anti-majority attains the same gap with the roles of
//! `a` and `b` swapped. Holding `π` fixed, the maximal gap over quotas is a
//! binomial mode and vanishes as `n` grows; holding the mean `μ = nπ` fixed
//! instead, the gap at quota `k_μ + 1` converges to the Poisson floor
//! `M(μ) = μ^(k_μ)·e^(-μ)/k_μ!` where `k_μ` maximizes `μ^k/k!`.
//!
//! Exact rational evaluation is available for rational `π`; the large-`n`
//! paths use floating point with log-gamma binomials so that nothing
//! overflows.

use alloc::vec::Vec;

use num_traits::{One, ToPrimitive, Zero};

use crate::rational::{binomial, pow, rat, Rational};
use crate::{Error, Result};

/// `C(n-1,j-1)·π^(j-1)·(1-π)^(n-j)` as an exact rational.
///
/// Equals both `Q^j(a) - Q^j(b)` for the quota-`j` majority and
/// `Q̄^j(b) - Q̄^j(a)` for the quota-`j` anti-majority under
/// `independent(n, π)`.
pub fn quota_gap_exact(n: usize, pi: &Rational, j: usize) -> Result<Rational> {
    if j < 1 || j > n {
        return Err(Error::QuotaRange {
            family: crate::rules::QuotaFamily::QualifiedMajority,
            quota: j,
            n,
        });
    }
    if pi <= &Rational::zero() || pi >= &Rational::one() {
        return Err(Error::DegenerateMarginal);
    }
    let complement = Rational::one() - pi;
    Ok(binomial(n - 1, j - 1) * pow(pi, j as i64 - 1) * pow(&complement, (n - j) as i64))
}

/// `ln C(n, k)` via log-gamma.
fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// Floating-point quota gap, evaluated in log space.
pub fn quota_gap(n: u64, pi: f64, j: u64) -> Result<f64> {
    if j < 1 || j > n {
        return Err(Error::QuotaRange {
            family: crate::rules::QuotaFamily::QualifiedMajority,
            quota: j as usize,
            n: n as usize,
        });
    }
    if !(pi > 0.0 && pi < 1.0) {
        return Err(Error::DegenerateMarginal);
    }
    let ln_gap = ln_choose(n - 1, j - 1)
        + (j as f64 - 1.0) * libm::log(pi)
        + ((n - j) as f64) * libm::log(1.0 - pi);
    Ok(libm::exp(ln_gap))
}

/// Largest gap over all quotas `1..=n` at fixed `π`; returns the attaining
/// quota and the gap.
pub fn max_gap_fixed_pi(pi: f64, n: u64) -> Result<(u64, f64)> {
    if !(pi > 0.0 && pi < 1.0) {
        return Err(Error::DegenerateMarginal);
    }
    let mut best = (1, quota_gap(n, pi, 1)?);
    for j in 2..=n {
        let gap = quota_gap(n, pi, j)?;
        if gap > best.1 {
            best = (j, gap);
        }
    }
    Ok(best)
}

/// Which limiting regime a gap table was computed under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// Fixed marginal; gaps vanish, the limit column is 0.
    FixedPi(f64),
    /// Fixed mean `μ = nπ`; gaps at quota `k_μ+1` converge to `M(μ)`.
    FixedMu(f64),
}

/// One row of a gap table.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub n: u64,
    /// Quota the gap was evaluated at (the maximizing quota in the fixed-π
    /// regime, `k_μ + 1` in the fixed-μ regime).
    pub quota: u64,
    pub gap: f64,
    /// Limiting value of the gap as `n` grows.
    pub limit: f64,
}

impl GapRow {
    pub fn error(&self) -> f64 {
        libm::fabs(self.gap - self.limit)
    }
}

/// Gap rows over a list of economy sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct GapTable {
    pub regime: Regime,
    pub rows: Vec<GapRow>,
}

/// Maximal quota gaps along `n_list` for fixed `π` (they converge to 0).
pub fn gap_convergence(pi: f64, n_list: &[u64]) -> Result<GapTable> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n < 2 {
            return Err(Error::Domain("economy size must be at least 2"));
        }
        let (quota, gap) = max_gap_fixed_pi(pi, n)?;
        rows.push(GapRow {
            n,
            quota,
            gap,
            limit: 0.0,
        });
    }
    Ok(GapTable {
        regime: Regime::FixedPi(pi),
        rows,
    })
}

/// The Poisson floor: the smallest maximizer `k_μ` of `μ^k/k!` and
/// `M(μ) = μ^(k_μ)·e^(-μ)/k_μ!`.
///
/// `μ^k/k!` rises while `k < μ` and falls after, so `k_μ = ⌈μ⌉ - 1` for
/// non-integer `μ`; at integer `μ` the values at `μ-1` and `μ` tie and the
/// tie is broken downward (`M(μ)` itself is tie-invariant).
pub fn poisson_bound(mu: &Rational) -> Result<PoissonBound> {
    if mu <= &Rational::zero() {
        return Err(Error::Domain("the mean must be positive"));
    }
    let k_mu = if mu.is_integer() {
        (mu.to_integer().to_u64().ok_or(Error::Domain("mean too large"))?) - 1
    } else {
        mu.floor()
            .to_integer()
            .to_u64()
            .ok_or(Error::Domain("mean too large"))?
    };
    let mu_f = mu.to_f64().ok_or(Error::Domain("mean not representable"))?;
    let limit = libm::exp(k_mu as f64 * libm::log(mu_f) - mu_f - libm::lgamma(k_mu as f64 + 1.0));
    Ok(PoissonBound { k_mu, limit })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonBound {
    pub k_mu: u64,
    /// `M(μ)`.
    pub limit: f64,
}

/// Gaps at quota `k_μ+1` along `n_list` with `π_n = μ/n`; they converge to
/// `M(μ)`. Each `n` must exceed `μ`.
pub fn gap_convergence_fixed_mu(mu: &Rational, n_list: &[u64]) -> Result<GapTable> {
    let bound = poisson_bound(mu)?;
    let mu_f = mu.to_f64().ok_or(Error::Domain("mean not representable"))?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if rat(n as i64) <= *mu {
            return Err(Error::Domain("economy size must exceed the mean"));
        }
        let quota = bound.k_mu + 1;
        let gap = quota_gap(n, mu_f / n as f64, quota)?;
        rows.push(GapRow {
            n,
            quota,
            gap,
            limit: bound.limit,
        });
    }
    Ok(GapTable {
        regime: Regime::FixedMu(mu_f),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prior::ExchangeablePrior;
    use crate::rational::ratio;
    use crate::rules::{quota_rule, QuotaFamily};

    #[test]
    fn exact_gap_known_values() {
        assert_eq!(
            quota_gap_exact(3, &ratio(1, 2), 2).unwrap(),
            ratio(1, 2),
            "matches 3/4 - 1/4"
        );
        assert_eq!(quota_gap_exact(4, &ratio(1, 2), 2).unwrap(), ratio(3, 8));
        // j = 1 collapses to (1-pi)^(n-1)
        assert_eq!(quota_gap_exact(5, &ratio(1, 3), 1).unwrap(), ratio(16, 81));
        assert!(quota_gap_exact(3, &ratio(1, 2), 0).is_err());
        assert!(quota_gap_exact(3, &ratio(1, 2), 4).is_err());
    }

    #[test]
    fn exact_gap_equals_reduced_form_difference() {
        for n in 2..=8 {
            for pi in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
                let prior = ExchangeablePrior::independent(n, pi.clone()).unwrap();
                for j in 1..=n {
                    let gap = quota_gap_exact(n, &pi, j).unwrap();
                    let maj = quota_rule(QuotaFamily::QualifiedMajority, j, n)
                        .unwrap()
                        .reduced_form(&prior)
                        .unwrap();
                    assert_eq!(&maj.qa - &maj.qb, gap, "majority n={n} j={j}");
                    let anti = quota_rule(QuotaFamily::QualifiedAntiMajority, j, n)
                        .unwrap()
                        .reduced_form(&prior)
                        .unwrap();
                    assert_eq!(&anti.qb - &anti.qa, gap, "anti-majority n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn float_gap_tracks_exact_gap() {
        for n in [2u64, 5, 12, 40, 64] {
            for j in [1u64, 2, n / 2 + 1, n] {
                let exact = quota_gap_exact(n as usize, &ratio(1, 3), j as usize)
                    .unwrap()
                    .to_f64()
                    .unwrap();
                let float = quota_gap(n, 1.0 / 3.0, j).unwrap();
                assert!(
                    (exact - float).abs() < 1e-12,
                    "n={n} j={j}: {exact} vs {float}"
                );
            }
        }
    }

    #[test]
    fn max_gap_uniform_small_cases() {
        let (j, gap) = max_gap_fixed_pi(0.5, 3).unwrap();
        assert_eq!(j, 2);
        assert!((gap - 0.5).abs() < 1e-15);
        // for pi=1/2 the maximum is the central binomial term
        let (_, gap) = max_gap_fixed_pi(0.5, 9).unwrap();
        assert!((gap - 70.0 / 256.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_pi_gaps_vanish() {
        let table = gap_convergence(0.5, &[2, 8, 32, 128, 201]).unwrap();
        for pair in table.rows.windows(2) {
            assert!(pair[1].gap <= pair[0].gap + 1e-15);
        }
        let last = table.rows.last().unwrap();
        assert!(last.gap < 0.06, "n=201 central gap ~ 0.0562");
        assert!(last.gap > 0.055);
    }

    #[test]
    fn poisson_bound_known_values() {
        let b = poisson_bound(&rat(1)).unwrap();
        assert_eq!(b.k_mu, 0);
        assert!((b.limit - (-1.0f64).exp()).abs() < 1e-12);

        let b = poisson_bound(&rat(2)).unwrap();
        assert_eq!(b.k_mu, 1, "tie between k=1 and k=2 broken downward");
        assert!((b.limit - 2.0 * (-2.0f64).exp()).abs() < 1e-12);

        let b = poisson_bound(&ratio(1, 2)).unwrap();
        assert_eq!(b.k_mu, 0);
        assert!((b.limit - (-0.5f64).exp()).abs() < 1e-12);

        assert!(poisson_bound(&rat(0)).is_err());
        assert!(poisson_bound(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn fixed_mu_gap_at_small_n() {
        // n=10, mu=2: C(9,1)·0.2·0.8^8
        let table = gap_convergence_fixed_mu(&rat(2), &[10]).unwrap();
        let row = &table.rows[0];
        assert_eq!(row.quota, 2);
        let expected = 9.0 * 0.2 * 0.8f64.powi(8);
        assert!((row.gap - expected).abs() < 1e-12);
        assert!(row.gap > row.limit, "finite-n gap sits above the limit");
    }

    #[test]
    fn fixed_mu_gap_converges_to_poisson_floor() {
        for mu in [ratio(1, 2), rat(1), rat(2)] {
            let table = gap_convergence_fixed_mu(&mu, &[10_000]).unwrap();
            let row = &table.rows[0];
            assert!(
                row.error() < 1e-3,
                "mu={mu}: gap {} vs limit {}",
                row.gap,
                row.limit
            );
        }
    }

    #[test]
    fn fixed_mu_requires_n_above_mu() {
        assert!(gap_convergence_fixed_mu(&rat(5), &[4]).is_err());
        assert!(gap_convergence_fixed_mu(&rat(5), &[5]).is_err());
        assert!(gap_convergence_fixed_mu(&rat(5), &[6]).is_ok());
    }
}
