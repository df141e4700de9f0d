//! Closed-form design results: the ex-ante Rawlsian rule and the prior
//! conditions under which unanimity already implies OBIC.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::prior::ExchangeablePrior;
use crate::rational::{binomial, pow, rat, Rational};
use crate::rules::{QuotaFamily, QuotaRule, ReducedForm, SymmetricRule};
use crate::{Error, Result};

/// The monotone rule maximizing `min(π·Q(a), (1-π)·(1-Q(b)))` — the smaller
/// of the expected per-capita satisfied masses of the two types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawlsianSolution {
    /// The lower of the two optimal quotas.
    pub j_star: usize,
    /// Weight on the quota-`j_star` majority; the rest goes on `j_star + 1`.
    pub alpha: Rational,
    pub reduced: ReducedForm,
    pub rule: SymmetricRule,
    /// Optimal value `min(π·Q(a), (1-π)·(1-Q(b))) = H(j*)/n`.
    pub objective: Rational,
}

/// `H(j) = j·(1-π) + Σ_{k=j}^n (k-j)·B(k)`, the binding level of the upper
/// constraint family along the diagonal `π·Q(a) = (1-π)·(1-Q(b))`. `H`
/// decreases up to `j*` and increases after it.
pub fn rawlsian_level(prior: &ExchangeablePrior, j: usize) -> Rational {
    let n = prior.n();
    let mut tail = Rational::zero();
    for k in j..=n {
        tail += rat((k - j) as i64) * prior.counts().as_slice()[k].clone();
    }
    rat(j as i64) * (Rational::one() - prior.marginal()) + tail
}

/// Compute the ex-ante Rawlsian rule in closed form.
///
/// `j* = max{ j : Σ_{k=j}^n B(k) >= 1-π }` (nonempty: `j = 0` always
/// qualifies), and the optimum mixes the majorities with quotas `j*` and
/// `j*+1` with weight `alpha = (1-π - Σ_{k=j*+1}^n B(k)) / B(j*)` on the
/// former. Maximality of `j*` forces `B(j*) > 0` and `alpha ∈ (0, 1]`; the
/// degenerate branch is unreachable for a valid prior and reported as an
/// error if ever hit.
pub fn rawlsian(prior: &ExchangeablePrior) -> Result<RawlsianSolution> {
    let n = prior.n();
    let b = prior.counts().as_slice();
    let one_minus_pi = Rational::one() - prior.marginal();

    let mut tail = Rational::zero(); // Σ_{k=j}^n B(k), maintained downward
    let mut j_star = 0;
    for j in (0..=n).rev() {
        tail += &b[j];
        if tail >= one_minus_pi {
            j_star = j;
            break;
        }
    }

    let mut tail_above = Rational::zero(); // Σ_{k=j*+1}^n B(k)
    for item in b.iter().skip(j_star + 1) {
        tail_above += item;
    }
    let numerator = &one_minus_pi - tail_above;
    let alpha = if numerator.is_zero() {
        Rational::zero()
    } else if b[j_star].is_zero() {
        return Err(Error::Degenerate(
            "B(j*) = 0 with a nonzero mixing weight contradicts the maximality of j*",
        ));
    } else {
        numerator / &b[j_star]
    };

    // mixture of the step rules with quotas j* and j*+1 (the latter is the
    // constant-b rule when j* = n)
    let q = (0..=n)
        .map(|k| {
            if k > j_star {
                Rational::one()
            } else if k == j_star {
                alpha.clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let rule = SymmetricRule::new(q)?;

    let level = rawlsian_level(prior, j_star);
    let n_rat = rat(n as i64);
    let reduced = ReducedForm::new(
        &level / (&n_rat * prior.marginal()),
        (rat((n - j_star) as i64) * &one_minus_pi - (&level - rat(j_star as i64) * &one_minus_pi))
            / (&n_rat * &one_minus_pi),
    );
    let objective = level / n_rat;

    Ok(RawlsianSolution {
        j_star,
        alpha,
        reduced,
        rule,
        objective,
    })
}

/// Which of the two bounds of the OBIC-free condition failed.
///
/// The first branch caps `λ(j)` by `(λ(1)+λ(n))/C(n-1,j-1)` and corresponds
/// to an `a`-type's deviation in the u-anti-majority with quota `j`; the
/// second caps it by `(λ(0)+λ(n-1))/C(n-1,j)` and corresponds to a
/// `b`-type's deviation in the u-anti-majority with quota `j+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObicBranch {
    ATypeDeviation,
    BTypeDeviation,
}

impl ObicBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObicBranch::ATypeDeviation => "a_type_deviation",
            ObicBranch::BTypeDeviation => "b_type_deviation",
        }
    }
}

impl fmt::Display for ObicBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One violated bound: `lambda_j > bound` at index `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObicFreeFailure {
    pub j: usize,
    pub branch: ObicBranch,
    /// `λ(j)`.
    pub lhs: Rational,
    /// The violated cap on `λ(j)`.
    pub rhs: Rational,
    /// Quota of a u-qualified anti-majority rule that fails OBIC because of
    /// this violation.
    pub witness_quota: usize,
}

/// Result of the belief condition test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObicFreeReport {
    pub holds: bool,
    pub failures: Vec<ObicFreeFailure>,
}

/// Does every unanimous symmetric rule satisfy OBIC under `prior`?
///
/// Checks, for `j = 1..=n-1`,
/// `λ(j) <= min((λ(1)+λ(n))/C(n-1,j-1), (λ(0)+λ(n-1))/C(n-1,j))`,
/// reporting every violated branch with exact sides and a witnessing
/// u-qualified anti-majority quota.
pub fn obic_free_check(prior: &ExchangeablePrior) -> ObicFreeReport {
    let n = prior.n();
    let lambda = prior.lambda();
    let cap_a = &lambda[1] + &lambda[n];
    let cap_b = &lambda[0] + &lambda[n - 1];
    let mut failures = Vec::new();
    for j in 1..n {
        let bound_a = &cap_a / binomial(n - 1, j - 1);
        if lambda[j] > bound_a {
            failures.push(ObicFreeFailure {
                j,
                branch: ObicBranch::ATypeDeviation,
                lhs: lambda[j].clone(),
                rhs: bound_a,
                witness_quota: j,
            });
        }
        let bound_b = &cap_b / binomial(n - 1, j);
        if lambda[j] > bound_b {
            failures.push(ObicFreeFailure {
                j,
                branch: ObicBranch::BTypeDeviation,
                lhs: lambda[j].clone(),
                rhs: bound_b,
                witness_quota: j + 1,
            });
        }
    }
    ObicFreeReport {
        holds: failures.is_empty(),
        failures,
    }
}

/// Independent-prior specialization: the condition reduces to
/// `C(n-1,j-1) <= (π/(1-π))^(n-j) + (π/(1-π))^(1-j)` for `j = 1..=n-1`,
/// which agrees exactly with [`obic_free_check`] on `independent(n, π)`.
pub fn obic_free_independent_check(n: usize, pi: &Rational) -> Result<ObicFreeReport> {
    if pi <= &Rational::zero() || pi >= &Rational::one() {
        return Err(Error::DegenerateMarginal);
    }
    if n < 2 {
        return Err(Error::Dimension {
            expected: 2,
            actual: n,
        });
    }
    let odds = pi / (Rational::one() - pi);
    let mut failures = Vec::new();
    for j in 1..n {
        let lhs = binomial(n - 1, j - 1);
        let rhs = pow(&odds, (n - j) as i64) + pow(&odds, 1 - j as i64);
        if lhs > rhs {
            // the two min-branches coincide under independence up to an
            // index shift; report the a-type form with its witness
            failures.push(ObicFreeFailure {
                j,
                branch: ObicBranch::ATypeDeviation,
                lhs,
                rhs,
                witness_quota: j,
            });
        }
    }
    Ok(ObicFreeReport {
        holds: failures.is_empty(),
        failures,
    })
}

/// The u-qualified anti-majority rule named by a failure witness.
pub fn witness_rule(failure: &ObicFreeFailure, n: usize) -> Result<QuotaRule> {
    QuotaRule::new(QuotaFamily::UQualifiedAntiMajority, failure.witness_quota, n)
}
