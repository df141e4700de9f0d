//! Extreme points of the reduced-form polytopes and rule synthesis.
//!
//! The implementable reduced forms make up a two-dimensional polytope whose
//! extreme points are realized by the deterministic quota rules:
//!
//! - all rules: the qualified majorities and anti-majorities with quotas
//!   `0..=n` (the two constants included);
//! - monotone rules: the qualified majorities plus the constant-`b` rule;
//! - unanimous rules: the u-qualified majorities and u-qualified
//!   anti-majorities, `2(n-1)` rules after removing the two overlaps
//!   between the families.
//!
//! [`vertices`] evaluates those candidates, deduplicates equal reduced forms
//! (possible when some `B(k) = 0`), and orders the survivors
//! counterclockwise along the boundary. [`decompose`] then produces an exact
//! Carathéodory certificate — at most three vertices with positive rational
//! weights mixing to the target — by fan-triangulating the polygon, and
//! [`synthesize_rule`] turns the certificate into an explicit voting rule
//! with the target reduced form.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::prior::ExchangeablePrior;
use crate::rational::{rat, Rational};
use crate::rules::{QuotaFamily, QuotaRule, ReducedForm, SymmetricRule};
use crate::{Error, Result};

/// Which rule class a vertex set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    All,
    Monotone,
    Unanimous,
}

impl VertexClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            VertexClass::All => "all",
            VertexClass::Monotone => "monotone",
            VertexClass::Unanimous => "unanimous",
        }
    }

    /// The feasibility system whose solutions this vertex set spans.
    pub fn system(&self) -> crate::feasibility::System {
        match self {
            VertexClass::All => crate::feasibility::System::General,
            VertexClass::Monotone => crate::feasibility::System::Monotone,
            VertexClass::Unanimous => crate::feasibility::System::Unanimous,
        }
    }
}

impl core::fmt::Display for VertexClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One extreme point: the quota rule realizing it and its reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub rule: QuotaRule,
    pub reduced: ReducedForm,
}

/// Deduplicated extreme points in counterclockwise boundary order.
///
/// The cycle is rotated so that, when the constant-`b` point `(0,0)` is a
/// vertex, the listing starts at its successor and ends at `(0,0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    pub class: VertexClass,
    pub vertices: Vec<Vertex>,
}

/// Convex-combination certificate: `(vertex index, weight)` pairs with
/// positive weights summing to one, at most three of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<(usize, Rational)>,
}

fn candidate_rules(class: VertexClass, n: usize) -> Vec<QuotaRule> {
    let quota = |family, j| QuotaRule::new(family, j, n).expect("quota in range");
    let mut rules = Vec::new();
    match class {
        VertexClass::All => {
            rules.extend((0..=n).map(|j| quota(QuotaFamily::QualifiedMajority, j)));
            rules.extend((0..=n).map(|j| quota(QuotaFamily::QualifiedAntiMajority, j)));
        }
        VertexClass::Monotone => {
            rules.extend((0..=n).map(|j| quota(QuotaFamily::QualifiedMajority, j)));
            rules.push(quota(QuotaFamily::QualifiedAntiMajority, 0));
        }
        VertexClass::Unanimous => {
            rules.extend((1..=n).map(|j| quota(QuotaFamily::UQualifiedMajority, j)));
            // u-anti-majority quotas 1 and n coincide with u-majorities n and 1
            rules.extend((2..n).map(|j| quota(QuotaFamily::UQualifiedAntiMajority, j)));
        }
    }
    rules
}

fn cross(origin: &ReducedForm, p: &ReducedForm, q: &ReducedForm) -> Rational {
    (&p.qa - &origin.qa) * (&q.qb - &origin.qb) - (&p.qb - &origin.qb) * (&q.qa - &origin.qa)
}

/// Angle-sort key around `center`, counterclockwise from the +x direction,
/// by half-plane classification and cross products — no trigonometry.
fn angle_order(center: &ReducedForm, p: &ReducedForm, q: &ReducedForm) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    let half = |v: &ReducedForm| -> u8 {
        let dy = &v.qb - &center.qb;
        if dy.is_positive() || (dy.is_zero() && v.qa > center.qa) {
            0
        } else {
            1
        }
    };
    match half(p).cmp(&half(q)) {
        Ordering::Equal => {}
        other => return other,
    }
    let turn = cross(center, p, q);
    if turn.is_positive() {
        Ordering::Less
    } else if turn.is_negative() {
        Ordering::Greater
    } else {
        // same ray from the center: nearer point first (deterministic)
        let dp = (&p.qa - &center.qa) * (&p.qa - &center.qa)
            + (&p.qb - &center.qb) * (&p.qb - &center.qb);
        let dq = (&q.qa - &center.qa) * (&q.qa - &center.qa)
            + (&q.qb - &center.qb) * (&q.qb - &center.qb);
        dp.cmp(&dq)
    }
}

/// Enumerate the extreme points of the reduced-form polytope for `class`.
///
/// Candidates with equal reduced forms are deduplicated keeping the first in
/// family order (majorities before anti-majorities) and lowest quota, so the
/// kept representative is well-defined; any representative implements the
/// same reduced form.
pub fn vertices(prior: &ExchangeablePrior, class: VertexClass) -> VertexSet {
    let n = prior.n();
    let mut distinct: Vec<Vertex> = Vec::new();
    for rule in candidate_rules(class, n) {
        let reduced = rule
            .to_rule()
            .reduced_form(prior)
            .expect("quota rule has length n+1");
        if !distinct.iter().any(|v| v.reduced == reduced) {
            distinct.push(Vertex { rule, reduced });
        }
    }

    if distinct.len() > 2 {
        let count = rat(distinct.len() as i64);
        let mut sum_a = Rational::zero();
        let mut sum_b = Rational::zero();
        for v in &distinct {
            sum_a += &v.reduced.qa;
            sum_b += &v.reduced.qb;
        }
        let center = ReducedForm::new(sum_a / &count, sum_b / count);
        distinct.sort_by(|p, q| angle_order(&center, &p.reduced, &q.reduced));
    }

    // start the cycle just after the constant-b vertex when present
    let origin = ReducedForm::new(Rational::zero(), Rational::zero());
    if let Some(pos) = distinct.iter().position(|v| v.reduced == origin) {
        let shift = (pos + 1) % distinct.len();
        distinct.rotate_left(shift);
    }

    VertexSet {
        class,
        vertices: distinct,
    }
}

impl VertexSet {
    /// Exact membership of `q` in the convex hull of the vertices.
    pub fn contains(&self, q: &ReducedForm) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0].reduced == q,
            2 => on_segment(&self.vertices[0].reduced, &self.vertices[1].reduced, q).is_some(),
            m => (0..m).all(|i| {
                let a = &self.vertices[i].reduced;
                let b = &self.vertices[(i + 1) % m].reduced;
                !cross(a, b, q).is_negative()
            }),
        }
    }

    /// Exact Carathéodory certificate for `q`, or [`Error::Infeasible`] when
    /// `q` lies outside the polytope.
    ///
    /// The polygon is fan-triangulated from vertex 0; the first triangle
    /// containing `q` (boundary inclusive) supplies exact barycentric
    /// weights. Zero weights are dropped, so a point on an edge gets a
    /// two-vertex certificate and a vertex gets a singleton.
    pub fn decompose(&self, q: &ReducedForm) -> Result<Decomposition> {
        let verts = &self.vertices;
        match verts.len() {
            0 => Err(Error::Infeasible),
            1 => {
                if &verts[0].reduced == q {
                    Ok(Decomposition {
                        parts: alloc::vec![(0, Rational::one())],
                    })
                } else {
                    Err(Error::Infeasible)
                }
            }
            2 => {
                let t = on_segment(&verts[0].reduced, &verts[1].reduced, q)
                    .ok_or(Error::Infeasible)?;
                Ok(Decomposition {
                    parts: positive_parts([(0, Rational::one() - &t), (1, t)]),
                })
            }
            m => {
                let anchor = &verts[0].reduced;
                for i in 1..m - 1 {
                    let u = &verts[i].reduced;
                    let v = &verts[i + 1].reduced;
                    let denom = cross(anchor, u, v);
                    if denom.is_zero() {
                        continue; // degenerate triangle
                    }
                    let alpha = cross(anchor, q, v) / &denom;
                    let beta = cross(anchor, u, q) / &denom;
                    if alpha.is_negative() || beta.is_negative() {
                        continue;
                    }
                    let rest = Rational::one() - &alpha - &beta;
                    if rest.is_negative() {
                        continue;
                    }
                    return Ok(Decomposition {
                        parts: positive_parts([(0, rest), (i, alpha), (i + 1, beta)]),
                    });
                }
                Err(Error::Infeasible)
            }
        }
    }

    /// Mix the certificate's vertex rules into an explicit voting rule.
    pub fn synthesize(&self, decomposition: &Decomposition) -> Result<SymmetricRule> {
        let expanded: Vec<(Rational, SymmetricRule)> = decomposition
            .parts
            .iter()
            .map(|(index, weight)| (weight.clone(), self.vertices[*index].rule.to_rule()))
            .collect();
        let parts: Vec<(Rational, &SymmetricRule)> = expanded
            .iter()
            .map(|(w, rule)| (w.clone(), rule))
            .collect();
        SymmetricRule::mix(&parts)
    }
}

fn positive_parts<const N: usize>(parts: [(usize, Rational); N]) -> Vec<(usize, Rational)> {
    parts.into_iter().filter(|(_, w)| !w.is_zero()).collect()
}

/// Barycentric parameter of `q` on the segment `a..b`, if `q` lies on it.
fn on_segment(a: &ReducedForm, b: &ReducedForm, q: &ReducedForm) -> Option<Rational> {
    if !cross(a, b, q).is_zero() {
        return None;
    }
    let da = &b.qa - &a.qa;
    let db = &b.qb - &a.qb;
    let t = if !da.is_zero() {
        (&q.qa - &a.qa) / da
    } else if !db.is_zero() {
        (&q.qb - &a.qb) / db
    } else {
        return if q == a { Some(Rational::zero()) } else { None };
    };
    if t.is_negative() || t > Rational::one() {
        return None;
    }
    // collinearity plus a matching parameter on the dominant axis pins the
    // other coordinate as well
    Some(t)
}

/// [`VertexSet::decompose`] against the canonical vertex set of `class`.
pub fn decompose(
    q: &ReducedForm,
    prior: &ExchangeablePrior,
    class: VertexClass,
) -> Result<Decomposition> {
    vertices(prior, class).decompose(q)
}

/// Produce an explicit voting rule of `class` whose reduced form equals `q`
/// exactly.
pub fn synthesize_rule(
    q: &ReducedForm,
    prior: &ExchangeablePrior,
    class: VertexClass,
) -> Result<SymmetricRule> {
    let set = vertices(prior, class);
    let decomposition = set.decompose(q)?;
    set.synthesize(&decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn uniform3() -> ExchangeablePrior {
        ExchangeablePrior::independent(3, ratio(1, 2)).unwrap()
    }

    fn rf(qa: Rational, qb: Rational) -> ReducedForm {
        ReducedForm::new(qa, qb)
    }

    fn reduced_set(set: &VertexSet) -> BTreeSet<ReducedForm> {
        set.vertices.iter().map(|v| v.reduced.clone()).collect()
    }

    #[test]
    fn uniform3_all_class_has_eight_vertices() {
        let set = vertices(&uniform3(), VertexClass::All);
        let expected: BTreeSet<ReducedForm> = [
            (rat(0), rat(0)),
            (rat(1), rat(1)),
            (rat(1), ratio(3, 4)),
            (ratio(3, 4), ratio(1, 4)),
            (ratio(1, 4), rat(0)),
            (rat(0), ratio(1, 4)),
            (ratio(1, 4), ratio(3, 4)),
            (ratio(3, 4), rat(1)),
        ]
        .into_iter()
        .map(|(a, b)| rf(a, b))
        .collect();
        assert_eq!(reduced_set(&set), expected);
        assert_eq!(set.vertices.len(), 8);
    }

    #[test]
    fn uniform3_monotone_class_has_five_vertices() {
        let set = vertices(&uniform3(), VertexClass::Monotone);
        let expected: BTreeSet<ReducedForm> = [
            (rat(0), rat(0)),
            (ratio(1, 4), rat(0)),
            (ratio(3, 4), ratio(1, 4)),
            (rat(1), ratio(3, 4)),
            (rat(1), rat(1)),
        ]
        .into_iter()
        .map(|(a, b)| rf(a, b))
        .collect();
        assert_eq!(reduced_set(&set), expected);
    }

    #[test]
    fn uniform3_unanimous_class_has_four_vertices() {
        let set = vertices(&uniform3(), VertexClass::Unanimous);
        assert_eq!(set.vertices.len(), 4);
        let expected: BTreeSet<ReducedForm> = [
            (rat(1), ratio(3, 4)),
            (ratio(3, 4), ratio(1, 4)),
            (ratio(1, 4), rat(0)),
            (ratio(1, 2), ratio(1, 2)),
        ]
        .into_iter()
        .map(|(a, b)| rf(a, b))
        .collect();
        assert_eq!(reduced_set(&set), expected);
    }

    #[test]
    fn canonical_order_is_counterclockwise_and_starts_after_origin() {
        let set = vertices(&uniform3(), VertexClass::All);
        let m = set.vertices.len();
        assert_eq!(set.vertices[m - 1].reduced, rf(rat(0), rat(0)));
        assert_eq!(set.vertices[0].reduced, rf(ratio(1, 4), rat(0)));
        for i in 0..m {
            let a = &set.vertices[i].reduced;
            let b = &set.vertices[(i + 1) % m].reduced;
            let c = &set.vertices[(i + 2) % m].reduced;
            assert!(cross(a, b, c).is_positive(), "not strictly CCW at {i}");
        }
    }

    #[test]
    fn decompose_vertex_point_is_singleton() {
        let prior = uniform3();
        let set = vertices(&prior, VertexClass::All);
        let d = set.decompose(&rf(ratio(3, 4), ratio(1, 4))).unwrap();
        assert_eq!(d.parts.len(), 1);
        let (index, weight) = &d.parts[0];
        assert!(weight.is_one());
        assert_eq!(set.vertices[*index].reduced, rf(ratio(3, 4), ratio(1, 4)));
    }

    #[test]
    fn decompose_midpoint_in_monotone_class() {
        let prior = uniform3();
        let set = vertices(&prior, VertexClass::Monotone);
        let d = set.decompose(&rf(ratio(1, 2), ratio(1, 2))).unwrap();
        // (1/2,1/2) is the midpoint of the (0,0)-(1,1) edge
        assert_eq!(d.parts.len(), 2);
        let mut total = Rational::zero();
        let mut qa = Rational::zero();
        let mut qb = Rational::zero();
        for (index, weight) in &d.parts {
            total += weight;
            qa += weight * &set.vertices[*index].reduced.qa;
            qb += weight * &set.vertices[*index].reduced.qb;
        }
        assert!(total.is_one());
        assert_eq!(rf(qa, qb), rf(ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn unanimous_synthesis_recovers_example_rule() {
        let prior = uniform3();
        let q = rf(ratio(1, 2), ratio(1, 2));
        let rule = synthesize_rule(&q, &prior, VertexClass::Unanimous).unwrap();
        assert_eq!(
            rule.probabilities(),
            &[rat(0), rat(1), rat(0), rat(1)],
            "the unique unanimous implementation"
        );
        assert_eq!(rule.reduced_form(&prior).unwrap(), q);
    }

    #[test]
    fn synthesis_of_constant_b() {
        let prior = uniform3();
        let rule = synthesize_rule(&rf(rat(0), rat(0)), &prior, VertexClass::All).unwrap();
        assert_eq!(rule.probabilities(), vec![rat(0); 4].as_slice());
    }

    #[test]
    fn infeasible_targets_are_rejected() {
        let prior = uniform3();
        assert_eq!(
            decompose(&rf(rat(1), rat(0)), &prior, VertexClass::All).unwrap_err(),
            Error::Infeasible
        );
        assert_eq!(
            decompose(&rf(ratio(1, 4), ratio(3, 4)), &prior, VertexClass::Monotone).unwrap_err(),
            Error::Infeasible
        );
    }

    #[test]
    fn degenerate_prior_collapses_polytope_to_a_segment() {
        // all mass on k=1 of n=2: every rule yields Q(a) = Q(b) = q(1)
        let prior =
            ExchangeablePrior::from_lambda(2, vec![rat(0), ratio(1, 2), rat(0)]).unwrap();
        let set = vertices(&prior, VertexClass::All);
        assert_eq!(set.vertices.len(), 2);
        let d = set.decompose(&rf(ratio(1, 3), ratio(1, 3))).unwrap();
        let rule = set.synthesize(&d).unwrap();
        assert_eq!(
            rule.reduced_form(&prior).unwrap(),
            rf(ratio(1, 3), ratio(1, 3))
        );
        assert!(set.decompose(&rf(ratio(1, 3), ratio(1, 2))).is_err());
    }

    #[test]
    fn mixed_profile_free_prior_fills_the_unit_square() {
        let prior =
            ExchangeablePrior::from_lambda(2, vec![ratio(1, 2), rat(0), ratio(1, 2)]).unwrap();
        let set = vertices(&prior, VertexClass::All);
        assert_eq!(set.vertices.len(), 4);
        assert!(set.contains(&rf(rat(1), rat(0))));
        let rule = synthesize_rule(&rf(rat(1), rat(0)), &prior, VertexClass::All).unwrap();
        assert_eq!(rule.reduced_form(&prior).unwrap(), rf(rat(1), rat(0)));
    }

    #[test]
    fn unanimous_class_for_two_agents_is_a_segment() {
        let prior = ExchangeablePrior::independent(2, ratio(1, 2)).unwrap();
        let set = vertices(&prior, VertexClass::Unanimous);
        assert_eq!(set.vertices.len(), 2);
        let q = rf(ratio(3, 4), ratio(1, 4));
        let rule = synthesize_rule(&q, &prior, VertexClass::Unanimous).unwrap();
        assert_eq!(rule.reduced_form(&prior).unwrap(), q);
        assert!(rule.is_unanimous());
    }

    #[test]
    fn hull_membership_matches_feasibility_spot_checks() {
        let prior = uniform3();
        let set = vertices(&prior, VertexClass::All);
        for (qa, qb, expect) in [
            (ratio(1, 2), ratio(1, 2), true),
            (ratio(3, 4), ratio(1, 4), true),
            (rat(1), rat(0), false),
            (ratio(9, 10), ratio(1, 10), false),
        ] {
            let q = rf(qa, qb);
            assert_eq!(set.contains(&q), expect, "membership of {q}");
            assert_eq!(
                crate::feasibility::check_implementable(&q, &prior).feasible,
                expect
            );
        }
    }
}
