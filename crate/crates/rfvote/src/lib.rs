//! Exact-arithmetic reduced-form analysis of symmetric two-alternative voting.
//!
//! A symmetric voting rule over alternatives `a` and `b` is a vector
//! `q(0..=n)` giving the probability that `a` is chosen when `k` of the `n`
//! agents report type `a`. Together with an exchangeable prior this induces
//! the *reduced form*: the interim probabilities `Q(a)` and `Q(b)` that `a`
//! is chosen, conditional on an agent's own type. This crate answers the
//! inverse question — which pairs `(Q(a), Q(b))` arise from some rule — with
//! exact rational arithmetic throughout:
//!
//! - [`prior`]: exchangeable priors, the count distribution `B(k)` and the
//!   marginal `π`;
//! - [`rules`]: symmetric rules, the quota-rule families, reduced forms,
//!   misreport probabilities, and the monotone/unanimous/OBIC predicates;
//! - [`feasibility`]: the linear inequality systems deciding implementability
//!   (plain, by a monotone rule, by a unanimous rule) with per-constraint
//!   slacks;
//! - [`decomposition`]: extreme points of the reduced-form polytopes and
//!   synthesis of an implementing rule via exact Carathéodory certificates;
//! - [`designer`]: the ex-ante Rawlsian rule in closed form and the prior
//!   conditions under which unanimity already implies OBIC;
//! - [`asymptotics`]: quota gaps `Q^j(a) - Q^j(b)` in large economies, for a
//!   fixed marginal and in the Poisson regime of a fixed mean;
//! - [`oracle`]: brute-force ground truth (profile enumeration, exhaustive
//!   rule sweeps, support-function maximization, hull membership) used to
//!   cross-validate everything above at small scale.
//!
//! The crate is `no_std` (with `alloc`); all probabilities are
//! arbitrary-precision rationals and every identity is checked exactly, so
//! binding constraints and extreme points are unambiguous. Floating point
//! appears only on the explicitly approximate large-`n` paths in
//! [`asymptotics`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod decomposition;
pub mod designer;
mod error;
pub mod feasibility;
pub mod oracle;
pub mod prior;
pub mod rational;
pub mod rules;

pub use error::Error;
pub use prior::ExchangeablePrior;
pub use rational::Rational;
pub use rules::{QuotaFamily, QuotaRule, ReducedForm, SymmetricRule};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
