//! Brute-force ground truth for small instances.
//!
//! Everything here recomputes quantities from first principles — profile
//! enumeration, exhaustive rule sweeps, hull membership — independently of
//! the closed forms in the other modules, so the two routes can be checked
//! against each other exactly.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::decomposition::{vertices, VertexClass, VertexSet};
use crate::feasibility::check_implementable;
use crate::prior::ExchangeablePrior;
use crate::rational::{rat, ratio, Rational};
use crate::rules::{MisreportForm, QuotaFamily, QuotaRule, ReducedForm, SymmetricRule};
use crate::{Error, Result};

/// Largest agent count for the `2^(n+1)`-size exhaustive sweeps.
pub const MAX_EXHAUSTIVE_N: usize = 16;

/// Seed of the pseudo-random rule sampler in [`verify_projection`]; fixed
/// so oracle runs are reproducible bit for bit.
pub const RULE_SAMPLE_SEED: u64 = 0x5245_4456_4f54_45u64;

/// Number of pseudo-random rules checked per [`verify_projection`] call.
pub const RANDOM_RULE_SAMPLES: usize = 10_000;

/// All deterministic symmetric rules for `n` agents, in canonical binary
/// order (`q(0)` is the least significant bit).
pub fn enumerate_deterministic(n: usize) -> Result<Vec<SymmetricRule>> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Size {
            limit: MAX_EXHAUSTIVE_N,
            actual: n,
        });
    }
    let mut rules = Vec::with_capacity(1 << (n + 1));
    for bits in 0u32..(1 << (n + 1)) {
        let q = (0..=n)
            .map(|k| {
                if bits >> k & 1 == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rules.push(SymmetricRule::new(q).expect("0/1 entries"));
    }
    Ok(rules)
}

fn check_profile_dims(rule: &SymmetricRule, prior: &ExchangeablePrior) -> Result<usize> {
    let n = prior.n();
    if rule.n() != n {
        return Err(Error::Dimension {
            expected: n + 1,
            actual: rule.n() + 1,
        });
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Size {
            limit: MAX_EXHAUSTIVE_N,
            actual: n,
        });
    }
    Ok(n)
}

/// Reduced form by enumerating all `2^n` type profiles: condition on agent
/// 0's type and weight each profile by its `λ(k)`. Independent of the
/// closed-form route in [`SymmetricRule::reduced_form`].
pub fn reduced_form_by_profiles(
    rule: &SymmetricRule,
    prior: &ExchangeablePrior,
) -> Result<ReducedForm> {
    let n = check_profile_dims(rule, prior)?;
    let mut given_a = Rational::zero();
    let mut given_b = Rational::zero();
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        let term = &prior.lambda()[k] * rule.probability(k)?;
        if mask & 1 == 1 {
            given_a += term;
        } else {
            given_b += term;
        }
    }
    Ok(ReducedForm {
        qa: given_a / prior.marginal(),
        qb: given_b / (Rational::one() - prior.marginal()),
    })
}

/// Misreport probabilities by profile enumeration: agent 0 flips its
/// report, shifting the reported count by one.
pub fn misreport_by_profiles(
    rule: &SymmetricRule,
    prior: &ExchangeablePrior,
) -> Result<MisreportForm> {
    let n = check_profile_dims(rule, prior)?;
    let mut down = Rational::zero();
    let mut up = Rational::zero();
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if mask & 1 == 1 {
            down += &prior.lambda()[k] * rule.probability(k - 1)?;
        } else {
            up += &prior.lambda()[k] * rule.probability(k + 1)?;
        }
    }
    Ok(MisreportForm {
        q_b_given_a: down / prior.marginal(),
        q_a_given_b: up / (Rational::one() - prior.marginal()),
    })
}

/// Objective weights of the support-function query
/// `max μ_a·Q(a) + μ_b·Q(b)` over implementable reduced forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportDirection {
    pub mu_a: Rational,
    pub mu_b: Rational,
}

/// Closed-form maximizer of a support-function query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportOptimum {
    pub rule: QuotaRule,
    /// `μ_a·Q(a) + μ_b·Q(b)` at the optimum.
    pub value: Rational,
    /// All objective coefficients vanish (`μ_a = μ_b = 0`): every rule is
    /// optimal and the constant-`a` rule is returned by convention.
    pub degenerate: bool,
}

/// Maximize `μ_a·Q(a) + μ_b·Q(b)` over all rules by the coefficient sign
/// rule: in rule space the objective is `Σ_k c_k·q(k)·B(k)` with
/// `c_k = n·μ̂_b + k·(μ̂_a - μ̂_b)`, `μ̂_a = μ_a/(nπ)`,
/// `μ̂_b = μ_b/(n(1-π))`. The coefficient sequence is affine in `k`, so its
/// positive set is a suffix (some qualified majority) or a prefix (some
/// qualified anti-majority).
pub fn support_maximize(prior: &ExchangeablePrior, dir: &SupportDirection) -> SupportOptimum {
    let n = prior.n();
    let n_rat = rat(n as i64);
    let mu_hat_a = &dir.mu_a / (&n_rat * prior.marginal());
    let mu_hat_b = &dir.mu_b / (&n_rat * (Rational::one() - prior.marginal()));
    let slope = &mu_hat_a - &mu_hat_b;
    let coefficients: Vec<Rational> = (0..=n)
        .map(|k| &n_rat * &mu_hat_b + rat(k as i64) * &slope)
        .collect();

    let quota = |family, j| QuotaRule::new(family, j, n).expect("quota in range");
    let any_positive = coefficients.iter().any(|c| c.is_positive());
    let any_negative = coefficients.iter().any(|c| c.is_negative());

    let (rule, degenerate) = if !any_positive && !any_negative {
        (quota(QuotaFamily::QualifiedMajority, 0), true)
    } else if !any_positive {
        (quota(QuotaFamily::QualifiedAntiMajority, 0), false)
    } else if !slope.is_negative() {
        // nondecreasing coefficients: 1 exactly on the positive suffix
        let cutoff = coefficients
            .iter()
            .position(|c| c.is_positive())
            .expect("some positive coefficient");
        (quota(QuotaFamily::QualifiedMajority, cutoff), false)
    } else {
        // decreasing coefficients: 1 exactly on the positive prefix
        match coefficients.iter().position(|c| !c.is_positive()) {
            Some(cutoff) => (quota(QuotaFamily::QualifiedAntiMajority, cutoff), false),
            None => (quota(QuotaFamily::QualifiedMajority, 0), false),
        }
    };

    let reduced = rule
        .to_rule()
        .reduced_form(prior)
        .expect("quota rule has length n+1");
    let value = &dir.mu_a * &reduced.qa + &dir.mu_b * &reduced.qb;
    SupportOptimum {
        rule,
        value,
        degenerate,
    }
}

/// Outcome of cross-validating the inequality system against hull
/// membership and exhaustive/sampled rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionReport {
    pub n: usize,
    pub grid_denominator: u32,
    pub grid_points: usize,
    /// Grid points where the inequality system and hull membership differ
    /// (must be empty).
    pub membership_disagreements: Vec<ReducedForm>,
    pub deterministic_rules: usize,
    pub random_rules: usize,
    /// Rules whose reduced form fails the inequality system (must be
    /// empty).
    pub infeasible_rules: Vec<SymmetricRule>,
}

impl ProjectionReport {
    pub fn is_clean(&self) -> bool {
        self.membership_disagreements.is_empty() && self.infeasible_rules.is_empty()
    }
}

/// Cross-validate the implementability check three ways on one prior:
///
/// 1. on the `(g+1)²` rational grid over `[0,1]²`, the inequality system
///    must agree with exact membership in the hull of the extreme points;
/// 2. every deterministic rule's reduced form must pass the check;
/// 3. so must the reduced forms of [`RANDOM_RULE_SAMPLES`] pseudo-random
///    rules with entries `k/64` (seed [`RULE_SAMPLE_SEED`]).
pub fn verify_projection(
    prior: &ExchangeablePrior,
    grid_denominator: u32,
) -> Result<ProjectionReport> {
    verify_projection_with_samples(prior, grid_denominator, RANDOM_RULE_SAMPLES)
}

/// [`verify_projection`] with an explicit sample count.
pub fn verify_projection_with_samples(
    prior: &ExchangeablePrior,
    grid_denominator: u32,
    samples: usize,
) -> Result<ProjectionReport> {
    let n = prior.n();
    if n > 10 {
        return Err(Error::Size {
            limit: 10,
            actual: n,
        });
    }
    if grid_denominator == 0 {
        return Err(Error::Domain("grid denominator must be positive"));
    }

    let hull: VertexSet = vertices(prior, VertexClass::All);
    let g = grid_denominator as i64;
    let mut membership_disagreements = Vec::new();
    for i in 0..=g {
        for j in 0..=g {
            let q = ReducedForm::new(ratio(i, g), ratio(j, g));
            let by_system = check_implementable(&q, prior).feasible;
            let by_hull = hull.contains(&q);
            if by_system != by_hull {
                membership_disagreements.push(q);
            }
        }
    }

    let mut infeasible_rules = Vec::new();
    let deterministic = enumerate_deterministic(n)?;
    let deterministic_rules = deterministic.len();
    for rule in deterministic {
        let q = rule.reduced_form(prior)?;
        if !check_implementable(&q, prior).feasible {
            infeasible_rules.push(rule);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RULE_SAMPLE_SEED);
    for _ in 0..samples {
        let q_vec: Vec<Rational> = (0..=n)
            .map(|_| ratio((rng.next_u32() % 65) as i64, 64))
            .collect();
        let rule = SymmetricRule::new(q_vec).expect("entries in [0,1]");
        let q = rule.reduced_form(prior)?;
        if !check_implementable(&q, prior).feasible {
            infeasible_rules.push(rule);
        }
    }

    Ok(ProjectionReport {
        n,
        grid_denominator,
        grid_points: ((g + 1) * (g + 1)) as usize,
        membership_disagreements,
        deterministic_rules,
        random_rules: samples,
        infeasible_rules,
    })
}

/// Grid-search Rawlsian optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteRawlsian {
    pub best_rule: SymmetricRule,
    pub objective: Rational,
}

/// Maximize `min(π·Q(a), (1-π)·(1-Q(b)))` over all monotone rules whose
/// entries lie on the grid `{0, 1/g, ..., 1}`, by exhaustive enumeration of
/// nondecreasing level vectors. A lower bound for the closed form, within
/// `1/(2g)` of it.
pub fn brute_rawlsian(prior: &ExchangeablePrior, grid_steps: u32) -> Result<BruteRawlsian> {
    let n = prior.n();
    if n > 5 {
        return Err(Error::Size {
            limit: 5,
            actual: n,
        });
    }
    if grid_steps == 0 {
        return Err(Error::Domain("grid must have at least one step"));
    }
    let g = grid_steps as i64;
    let b = prior.counts().as_slice();
    let n_rat = rat(n as i64);
    // per-unit contributions of q(k) to the two satisfied masses
    let weight_a: Vec<Rational> = (0..=n).map(|k| rat(k as i64) * &b[k] / &n_rat).collect();
    let weight_b: Vec<Rational> = (0..=n)
        .map(|k| rat((n - k) as i64) * &b[k] / &n_rat)
        .collect();
    let total_b = crate::rational::sum(&weight_b); // (1-π)

    let mut levels = alloc::vec![0i64; n + 1];
    let mut best: Option<(Vec<i64>, Rational)> = None;
    loop {
        let mut satisfied_a = Rational::zero();
        let mut chosen_b = Rational::zero();
        for (k, &level) in levels.iter().enumerate() {
            let q = ratio(level, g);
            satisfied_a += &q * &weight_a[k];
            chosen_b += &q * &weight_b[k];
        }
        let satisfied_b = &total_b - chosen_b;
        let objective = satisfied_a.min(satisfied_b);
        if best.as_ref().map_or(true, |(_, obj)| objective > *obj) {
            best = Some((levels.clone(), objective));
        }

        // next nondecreasing level vector
        let mut idx = n + 1;
        for i in (0..=n).rev() {
            if levels[i] < g {
                idx = i;
                break;
            }
        }
        if idx == n + 1 {
            break;
        }
        levels[idx] += 1;
        for i in idx + 1..=n {
            levels[i] = levels[idx];
        }
    }

    let (levels, objective) = best.expect("grid is nonempty");
    let best_rule = SymmetricRule::new(levels.iter().map(|&l| ratio(l, g)).collect())?;
    Ok(BruteRawlsian {
        best_rule,
        objective,
    })
}
