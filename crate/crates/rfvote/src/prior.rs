//! Exchangeable priors over type profiles.
//!
//! An exchangeable prior over `{a,b}^n` is fully described by the weights
//! `λ(k)`: the probability that one *fixed* set of `k` agents has type `a`
//! and the remaining `n-k` agents have type `b`. The derived count
//! distribution `B(k) = C(n,k)·λ(k)` gives the probability that exactly `k`
//! agents are of type `a`, and the marginal `π = (1/n)·Σ_k k·B(k)` is the
//! probability that any single agent is of type `a`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::{binomial, pow, rat, Rational};
use crate::{Error, Result};

/// Distribution of the number of type-`a` agents: `b[k] = B(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountDistribution {
    b: Vec<Rational>,
}

impl CountDistribution {
    /// `B(k)`.
    pub fn mass(&self, k: usize) -> Result<&Rational> {
        self.b.get(k).ok_or(Error::Index {
            index: k,
            len: self.b.len(),
        })
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

/// A validated exchangeable prior: agent count `n`, profile weights
/// `λ(0..=n)`, with the count distribution and marginal cached.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeablePrior {
    n: usize,
    lambda: Vec<Rational>,
    counts: CountDistribution,
    pi: Rational,
}

impl ExchangeablePrior {
    /// Build a prior from the profile weights `λ(0..=n)`.
    ///
    /// Requires `n >= 2`, a weight vector of length `n+1` with nonnegative
    /// entries satisfying `Σ C(n,k)·λ(k) = 1` exactly, and a marginal
    /// strictly inside `(0, 1)`: priors concentrated on a single type leave
    /// the interim probabilities of the other type undefined.
    pub fn from_lambda(n: usize, lambda: Vec<Rational>) -> Result<Self> {
        if n < 2 || lambda.len() != n + 1 {
            return Err(Error::Dimension {
                expected: n.max(2) + 1,
                actual: lambda.len(),
            });
        }
        if lambda.iter().any(|w| w.is_negative()) {
            return Err(Error::Domain("profile weights must be nonnegative"));
        }
        let b: Vec<Rational> = lambda
            .iter()
            .enumerate()
            .map(|(k, w)| binomial(n, k) * w)
            .collect();
        let total = crate::rational::sum(&b);
        if !total.is_one() {
            return Err(Error::Normalization {
                total: alloc::string::ToString::to_string(&total),
            });
        }
        let mut expected_count = Rational::zero();
        for (k, mass) in b.iter().enumerate() {
            expected_count += rat(k as i64) * mass;
        }
        let pi = expected_count / rat(n as i64);
        if pi <= Rational::zero() || pi >= Rational::one() {
            return Err(Error::DegenerateMarginal);
        }
        Ok(Self {
            n,
            lambda,
            counts: CountDistribution { b },
            pi,
        })
    }

    /// The independent prior with `λ(k) = π^k (1-π)^(n-k)`, so that types
    /// are i.i.d. with marginal exactly `pi`.
    pub fn independent(n: usize, pi: Rational) -> Result<Self> {
        if pi <= Rational::zero() || pi >= Rational::one() {
            return Err(Error::DegenerateMarginal);
        }
        let complement = Rational::one() - &pi;
        let lambda = (0..=n)
            .map(|k| pow(&pi, k as i64) * pow(&complement, (n - k) as i64))
            .collect();
        Self::from_lambda(n, lambda)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Profile weights `λ(0..=n)`.
    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn counts(&self) -> &CountDistribution {
        &self.counts
    }

    /// `B(k)`, the probability that exactly `k` agents have type `a`.
    pub fn mass(&self, k: usize) -> Result<&Rational> {
        self.counts.mass(k)
    }

    /// The marginal probability `π` that a single agent has type `a`.
    pub fn marginal(&self) -> &Rational {
        &self.pi
    }

    /// `n·π`, the expected number of type-`a` agents.
    pub fn expected_count(&self) -> Rational {
        rat(self.n as i64) * &self.pi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    pub(crate) fn uniform(n: usize) -> ExchangeablePrior {
        ExchangeablePrior::independent(n, ratio(1, 2)).unwrap()
    }

    #[test]
    fn uniform_n3_counts_and_marginal() {
        let prior = ExchangeablePrior::from_lambda(3, vec![ratio(1, 8); 4]).unwrap();
        assert_eq!(
            prior.counts().as_slice(),
            &[ratio(1, 8), ratio(3, 8), ratio(3, 8), ratio(1, 8)]
        );
        assert_eq!(prior.marginal(), &ratio(1, 2));
        assert_eq!(prior.mass(1).unwrap(), &ratio(3, 8));
    }

    #[test]
    fn independent_uniform_matches_explicit_lambda() {
        let via_pi = uniform(3);
        let via_lambda = ExchangeablePrior::from_lambda(3, vec![ratio(1, 8); 4]).unwrap();
        assert_eq!(via_pi, via_lambda);

        let n4 = uniform(4);
        assert_eq!(n4.lambda(), vec![ratio(1, 16); 5].as_slice());
        assert_eq!(
            n4.counts().as_slice(),
            &[
                ratio(1, 16),
                ratio(4, 16),
                ratio(6, 16),
                ratio(4, 16),
                ratio(1, 16)
            ]
        );
        assert_eq!(n4.marginal(), &ratio(1, 2));
    }

    #[test]
    fn independent_third_recovers_marginal_exactly() {
        let prior = ExchangeablePrior::independent(2, ratio(1, 3)).unwrap();
        assert_eq!(
            prior.counts().as_slice(),
            &[ratio(4, 9), ratio(4, 9), ratio(1, 9)]
        );
        assert_eq!(prior.marginal(), &ratio(1, 3));
    }

    #[test]
    fn degenerate_marginal_rejected() {
        // all agents surely type b: no a-marginal to condition on
        let err = ExchangeablePrior::from_lambda(2, vec![rat(1), rat(0), rat(0)]).unwrap_err();
        assert_eq!(err, Error::DegenerateMarginal);
        assert_eq!(
            ExchangeablePrior::independent(3, rat(0)).unwrap_err(),
            Error::DegenerateMarginal
        );
        assert_eq!(
            ExchangeablePrior::independent(3, rat(1)).unwrap_err(),
            Error::DegenerateMarginal
        );
    }

    #[test]
    fn misnormalized_weights_rejected() {
        let err =
            ExchangeablePrior::from_lambda(4, vec![ratio(1, 2), rat(0), rat(0), rat(0), rat(0)])
                .unwrap_err();
        assert!(matches!(err, Error::Normalization { .. }));
    }

    #[test]
    fn wrong_length_rejected() {
        let err = ExchangeablePrior::from_lambda(3, vec![ratio(1, 8); 3]).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn zero_intermediate_weights_accepted() {
        // correlated prior that kills all mixed profiles
        let prior =
            ExchangeablePrior::from_lambda(2, vec![ratio(1, 2), rat(0), ratio(1, 2)]).unwrap();
        assert_eq!(prior.marginal(), &ratio(1, 2));
        assert_eq!(prior.mass(1).unwrap(), &rat(0));
    }

    #[test]
    fn round_trip_reproduces_prior() {
        let prior = ExchangeablePrior::independent(4, ratio(2, 7)).unwrap();
        let again = ExchangeablePrior::from_lambda(4, prior.lambda().to_vec()).unwrap();
        assert_eq!(prior, again);
    }

    #[test]
    fn mass_index_checked() {
        let prior = uniform(3);
        assert!(matches!(prior.mass(4), Err(Error::Index { .. })));
    }
}
