//! Symmetric voting rules, quota-rule families, and interim probabilities.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::prior::ExchangeablePrior;
use crate::rational::{rat, Rational};
use crate::{Error, Result};

/// A symmetric voting rule: `q[k]` is the probability that alternative `a`
/// is chosen when exactly `k` agents report type `a`.
///
/// Deterministic rules are the 0/1 special case; there is no separate type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricRule {
    q: Vec<Rational>,
}

impl SymmetricRule {
    /// Validate `0 <= q[k] <= 1` for all entries.
    pub fn new(q: Vec<Rational>) -> Result<Self> {
        if q.len() < 2 {
            return Err(Error::Dimension {
                expected: 3,
                actual: q.len(),
            });
        }
        if q.iter()
            .any(|p| p < &Rational::zero() || p > &Rational::one())
        {
            return Err(Error::Domain("rule probabilities must lie in [0, 1]"));
        }
        Ok(Self { q })
    }

    /// The rule choosing `a` with constant probability `value`.
    pub fn constant(n: usize, value: Rational) -> Result<Self> {
        Self::new(alloc::vec![value; n + 1])
    }

    /// Number of agents the rule is defined for (`q` has length `n+1`).
    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.q
    }

    /// `q(k)`.
    pub fn probability(&self, k: usize) -> Result<&Rational> {
        self.q.get(k).ok_or(Error::Index {
            index: k,
            len: self.q.len(),
        })
    }

    /// `q(k) >= q(k-1)` for all `k`; equivalent to strategy-proofness in the
    /// two-alternative model.
    pub fn is_monotone(&self) -> bool {
        self.q.windows(2).all(|w| w[1] >= w[0])
    }

    /// `q(0) = 0` and `q(n) = 1`.
    pub fn is_unanimous(&self) -> bool {
        self.q[0].is_zero() && self.q[self.q.len() - 1].is_one()
    }

    /// Interim probabilities of `a` under truthful reporting:
    /// `Q(a) = (1/(nπ))·Σ_k k·q(k)·B(k)` and
    /// `Q(b) = (1/(n(1-π)))·Σ_k (n-k)·q(k)·B(k)`.
    pub fn reduced_form(&self, prior: &ExchangeablePrior) -> Result<ReducedForm> {
        let n = self.check_dimension(prior)?;
        let mut weighted_a = Rational::zero();
        let mut weighted_b = Rational::zero();
        for (k, q) in self.q.iter().enumerate() {
            let mass = prior.mass(k)?;
            weighted_a += rat(k as i64) * q * mass;
            weighted_b += rat((n - k) as i64) * q * mass;
        }
        let scale = rat(n as i64);
        Ok(ReducedForm {
            qa: weighted_a / (&scale * prior.marginal()),
            qb: weighted_b / (scale * (Rational::one() - prior.marginal())),
        })
    }

    /// Interim probabilities of `a` when one agent misreports while the
    /// others are truthful: reporting `b` as an `a`-type shifts the count
    /// down by one, reporting `a` as a `b`-type shifts it up by one, so
    /// `Q(b|a) = (1/(nπ))·Σ_{k>=1} q(k-1)·k·B(k)` and
    /// `Q(a|b) = (1/(n(1-π)))·Σ_{k<n} q(k+1)·(n-k)·B(k)`.
    pub fn interim_misreport(&self, prior: &ExchangeablePrior) -> Result<MisreportForm> {
        let n = self.check_dimension(prior)?;
        let mut down = Rational::zero();
        let mut up = Rational::zero();
        for k in 1..=n {
            down += &self.q[k - 1] * rat(k as i64) * prior.mass(k)?;
        }
        for k in 0..n {
            up += &self.q[k + 1] * rat((n - k) as i64) * prior.mass(k)?;
        }
        let scale = rat(n as i64);
        Ok(MisreportForm {
            q_b_given_a: down / (&scale * prior.marginal()),
            q_a_given_b: up / (scale * (Rational::one() - prior.marginal())),
        })
    }

    /// Ordinal Bayesian incentive compatibility: truthtelling first-order
    /// stochastically dominates misreporting for both types, which with two
    /// alternatives reduces to `Q(a|a) >= Q(b|a)` and `Q(a|b) >= Q(b|b)`.
    /// Weak inequalities; binding cases count as OBIC.
    pub fn is_obic(&self, prior: &ExchangeablePrior) -> Result<bool> {
        let truthful = self.reduced_form(prior)?;
        let misreport = self.interim_misreport(prior)?;
        Ok(truthful.qa >= misreport.q_b_given_a && misreport.q_a_given_b >= truthful.qb)
    }

    /// Convex combination `Σ weight·rule`, entrywise. Weights must be
    /// nonnegative and sum to one.
    pub fn mix(parts: &[(Rational, &SymmetricRule)]) -> Result<SymmetricRule> {
        let first = parts.first().ok_or(Error::Domain("empty mixture"))?;
        let len = first.1.q.len();
        let mut total = Rational::zero();
        let mut q = alloc::vec![Rational::zero(); len];
        for (weight, rule) in parts {
            if rule.q.len() != len {
                return Err(Error::Dimension {
                    expected: len,
                    actual: rule.q.len(),
                });
            }
            total += weight;
            for (acc, p) in q.iter_mut().zip(&rule.q) {
                *acc += weight * p;
            }
        }
        if !total.is_one() {
            return Err(Error::Domain("mixture weights must sum to 1"));
        }
        SymmetricRule::new(q)
    }

    fn check_dimension(&self, prior: &ExchangeablePrior) -> Result<usize> {
        let n = prior.n();
        if self.q.len() != n + 1 {
            return Err(Error::Dimension {
                expected: n + 1,
                actual: self.q.len(),
            });
        }
        Ok(n)
    }
}

/// The four deterministic quota-rule families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotaFamily {
    /// Chooses `a` iff at least `j` agents report `a`; quota 0 is the
    /// constant-`a` rule.
    QualifiedMajority,
    /// Chooses `a` iff fewer than `j` agents report `a`; quota 0 is the
    /// constant-`b` rule.
    QualifiedAntiMajority,
    /// A qualified majority with quota in `1..=n` (hence unanimous).
    UQualifiedMajority,
    /// The unanimity-respecting anti-majority: chooses `a` iff the count is
    /// in `{1,...,j-1}` or equals `n`.
    UQualifiedAntiMajority,
}

impl QuotaFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuotaFamily::QualifiedMajority => "qualified_majority",
            QuotaFamily::QualifiedAntiMajority => "qualified_anti_majority",
            QuotaFamily::UQualifiedMajority => "u_qualified_majority",
            QuotaFamily::UQualifiedAntiMajority => "u_qualified_anti_majority",
        }
    }

    /// Admissible quota range for `n` agents.
    pub fn quota_range(&self, n: usize) -> core::ops::RangeInclusive<usize> {
        match self {
            QuotaFamily::QualifiedMajority | QuotaFamily::QualifiedAntiMajority => 0..=n,
            QuotaFamily::UQualifiedMajority | QuotaFamily::UQualifiedAntiMajority => 1..=n,
        }
    }
}

impl fmt::Display for QuotaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Symbolic descriptor of a deterministic quota rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotaRule {
    family: QuotaFamily,
    quota: usize,
    n: usize,
}

impl QuotaRule {
    pub fn new(family: QuotaFamily, quota: usize, n: usize) -> Result<Self> {
        if !family.quota_range(n).contains(&quota) {
            return Err(Error::QuotaRange { family, quota, n });
        }
        Ok(Self { family, quota, n })
    }

    pub fn family(&self) -> QuotaFamily {
        self.family
    }

    pub fn quota(&self) -> usize {
        self.quota
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Expand the descriptor into its 0/1 probability vector.
    pub fn to_rule(&self) -> SymmetricRule {
        let (j, n) = (self.quota, self.n);
        let chosen = |k: usize| -> bool {
            match self.family {
                QuotaFamily::QualifiedMajority | QuotaFamily::UQualifiedMajority => k >= j,
                QuotaFamily::QualifiedAntiMajority => k < j,
                QuotaFamily::UQualifiedAntiMajority => (1..j).contains(&k) || k == n,
            }
        };
        let q = (0..=n)
            .map(|k| if chosen(k) { rat(1) } else { rat(0) })
            .collect();
        SymmetricRule { q }
    }
}

impl fmt::Display for QuotaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.quota)
    }
}

/// Free-function form of [`QuotaRule::to_rule`].
pub fn quota_rule(family: QuotaFamily, quota: usize, n: usize) -> Result<SymmetricRule> {
    Ok(QuotaRule::new(family, quota, n)?.to_rule())
}

/// Interim probabilities of alternative `a` by own type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedForm {
    /// `Q(a)`: probability `a` is chosen, conditional on having type `a`.
    pub qa: Rational,
    /// `Q(b)`: probability `a` is chosen, conditional on having type `b`.
    pub qb: Rational,
}

impl ReducedForm {
    pub fn new(qa: Rational, qb: Rational) -> Self {
        Self { qa, qb }
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.qa, self.qb)
    }
}

/// Interim probabilities of `a` after a unilateral misreport.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisreportForm {
    /// `Q(b|a)`: probability of `a` when an `a`-type reports `b`.
    pub q_b_given_a: Rational,
    /// `Q(a|b)`: probability of `a` when a `b`-type reports `a`.
    pub q_a_given_b: Rational,
}
