//! Linear inequality systems deciding reduced-form implementability.
//!
//! For each quota level `j`, write `D_j = (n-j)·π·Q(a) - j·(1-π)·Q(b)`.
//! Implementability is equivalent to sandwiching `D_j` between the extremes
//! attainable by a rule:
//!
//! - upper family: `Σ_{k=j}^n (k-j)·B(k) - D_j >= 0`,
//! - lower family: `D_j + Σ_{k=0}^j (j-k)·B(k) >= 0`,
//!
//! both for `j = 0..=n`. The `j ∈ {0, n}` members reduce to the box
//! `0 <= Q <= 1`, so out-of-box inputs are processed rather than rejected;
//! the report simply comes back infeasible. Implementability by a monotone
//! rule replaces the lower family with the single ordering constraint
//! `Q(a) - Q(b) >= 0`, and implementability by a unanimous rule tightens the
//! lower family to `D_j + Σ_{k=0}^j (j-k)·B(k) >= j·λ(0) + (n-j)·λ(n)`.
//!
//! Reports are never fail-fast: every slack is evaluated, so binding sets
//! identify extreme points exactly.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::prior::ExchangeablePrior;
use crate::rational::{rat, Rational};
use crate::rules::ReducedForm;

/// Which inequality system a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    General,
    Monotone,
    Unanimous,
}

impl System {
    pub fn as_str(&self) -> &'static str {
        match self {
            System::General => "general",
            System::Monotone => "monotone",
            System::Unanimous => "unanimous",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constraint family within a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Lower bound on `D_j` (indexed by `j`).
    Lower,
    /// Upper bound on `D_j` (indexed by `j`).
    Upper,
    /// The single `Q(a) >= Q(b)` constraint of the monotone system.
    Order,
}

/// Stable address of one inequality: system, family, and quota index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstraintId {
    pub system: System,
    pub family: Family,
    pub j: usize,
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Lower => write!(f, "{}.lower[{}]", self.system, self.j),
            Family::Upper => write!(f, "{}.upper[{}]", self.system, self.j),
            Family::Order => write!(f, "{}.order", self.system),
        }
    }
}

/// Exact slacks of one inequality system at a given reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub system: System,
    /// All constraint slacks, ascending in `j` with the lower family first
    /// at each index; the order constraint, when present, comes last.
    pub slacks: Vec<(ConstraintId, Rational)>,
    pub feasible: bool,
    /// Constraints with slack exactly zero.
    pub binding: Vec<ConstraintId>,
}

impl FeasibilityReport {
    fn from_slacks(system: System, slacks: Vec<(ConstraintId, Rational)>) -> Self {
        let feasible = slacks.iter().all(|(_, s)| !s.is_negative());
        let binding = slacks
            .iter()
            .filter(|(_, s)| s.is_zero())
            .map(|(id, _)| *id)
            .collect();
        Self {
            system,
            slacks,
            feasible,
            binding,
        }
    }

    /// Slack of a single constraint, if present.
    pub fn slack(&self, family: Family, j: usize) -> Option<&Rational> {
        self.slacks
            .iter()
            .find(|(id, _)| id.family == family && id.j == j)
            .map(|(_, s)| s)
    }
}

struct Terms {
    n: usize,
    /// `D_j` for each j.
    d: Vec<Rational>,
    /// `Σ_{k=j}^n (k-j)·B(k)` for each j.
    upper_tail: Vec<Rational>,
    /// `Σ_{k=0}^j (j-k)·B(k)` for each j.
    lower_head: Vec<Rational>,
}

fn terms(q: &ReducedForm, prior: &ExchangeablePrior) -> Terms {
    let n = prior.n();
    let b = prior.counts().as_slice();
    let pi_qa = prior.marginal() * &q.qa;
    let pi_qb = (rat(1) - prior.marginal()) * &q.qb;

    // suffix sums: tail_mass(j) = Σ_{k=j}^n B(k), tail_count(j) = Σ_{k=j}^n k·B(k)
    let mut tail_mass = alloc::vec![Rational::zero(); n + 2];
    let mut tail_count = alloc::vec![Rational::zero(); n + 2];
    for k in (0..=n).rev() {
        tail_mass[k] = &tail_mass[k + 1] + &b[k];
        tail_count[k] = &tail_count[k + 1] + rat(k as i64) * &b[k];
    }
    let expected = tail_count[0].clone(); // n·π

    let mut d = Vec::with_capacity(n + 1);
    let mut upper_tail = Vec::with_capacity(n + 1);
    let mut lower_head = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let jr = rat(j as i64);
        d.push(rat((n - j) as i64) * &pi_qa - &jr * &pi_qb);
        upper_tail.push(&tail_count[j] - &jr * &tail_mass[j]);
        // Σ_{k=0}^j (j-k)·B(k) = j·(1 - tail_mass(j+1)) - (n·π - tail_count(j+1))
        let head_mass = rat(1) - &tail_mass[j + 1];
        let head_count = &expected - &tail_count[j + 1];
        lower_head.push(jr * head_mass - head_count);
    }
    Terms {
        n,
        d,
        upper_tail,
        lower_head,
    }
}

fn paired_slacks(
    system: System,
    t: &Terms,
    lower_shift: impl Fn(usize) -> Rational,
) -> Vec<(ConstraintId, Rational)> {
    let mut slacks = Vec::with_capacity(2 * (t.n + 1));
    for j in 0..=t.n {
        slacks.push((
            ConstraintId {
                system,
                family: Family::Lower,
                j,
            },
            &t.d[j] + &t.lower_head[j] - lower_shift(j),
        ));
        slacks.push((
            ConstraintId {
                system,
                family: Family::Upper,
                j,
            },
            &t.upper_tail[j] - &t.d[j],
        ));
    }
    slacks
}

/// Is `q` the reduced form of some symmetric voting rule?
pub fn check_implementable(q: &ReducedForm, prior: &ExchangeablePrior) -> FeasibilityReport {
    let t = terms(q, prior);
    let slacks = paired_slacks(System::General, &t, |_| Rational::zero());
    FeasibilityReport::from_slacks(System::General, slacks)
}

/// Is `q` the reduced form of some *monotone* symmetric voting rule?
pub fn check_monotone_implementable(
    q: &ReducedForm,
    prior: &ExchangeablePrior,
) -> FeasibilityReport {
    let t = terms(q, prior);
    let mut slacks = Vec::with_capacity(t.n + 2);
    for j in 0..=t.n {
        slacks.push((
            ConstraintId {
                system: System::Monotone,
                family: Family::Upper,
                j,
            },
            &t.upper_tail[j] - &t.d[j],
        ));
    }
    slacks.push((
        ConstraintId {
            system: System::Monotone,
            family: Family::Order,
            j: 0,
        },
        &q.qa - &q.qb,
    ));
    FeasibilityReport::from_slacks(System::Monotone, slacks)
}

/// Is `q` the reduced form of some *unanimous* symmetric voting rule?
pub fn check_u_implementable(q: &ReducedForm, prior: &ExchangeablePrior) -> FeasibilityReport {
    let t = terms(q, prior);
    let lambda0 = prior.lambda()[0].clone();
    let lambda_n = prior.lambda()[prior.n()].clone();
    let n = t.n;
    let slacks = paired_slacks(System::Unanimous, &t, |j| {
        rat(j as i64) * &lambda0 + rat((n - j) as i64) * &lambda_n
    });
    FeasibilityReport::from_slacks(System::Unanimous, slacks)
}

/// Dispatch on [`System`].
pub fn check(q: &ReducedForm, prior: &ExchangeablePrior, system: System) -> FeasibilityReport {
    match system {
        System::General => check_implementable(q, prior),
        System::Monotone => check_monotone_implementable(q, prior),
        System::Unanimous => check_u_implementable(q, prior),
    }
}
