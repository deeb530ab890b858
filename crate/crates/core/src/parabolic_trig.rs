//! Parabolic trigonometric functions, the cosine laws, the area of an
//! inscribed DA triangle, Brocard points and the alternating product.

use serde::Serialize;

use crate::da_core::{interior_angle, slope, DaTriangle, Point, Slope, SlopeLine, Vertex};
use crate::error::{GeomError, Result};
use crate::inner_product::DaVector;
use crate::scalar::Scalar;

/// `cosp θ = sgn θ`, `sinp θ = tanp θ = θ`, `cotp θ = 1/θ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PTrigValue<S> {
    pub cosp: i8,
    pub sinp: S,
    pub tanp: S,
    pub cotp: S,
}

pub fn ptrig<S: Scalar>(theta: &S) -> Result<PTrigValue<S>> {
    if theta.is_zero() {
        return Err(GeomError::TrigUndefinedAtZero);
    }
    Ok(PTrigValue {
        cosp: if theta.is_positive() { 1 } else { -1 },
        sinp: theta.clone(),
        tanp: theta.clone(),
        cotp: S::one() / theta.clone(),
    })
}

pub fn cosp<S: Scalar>(theta: &S) -> Result<S> {
    if theta.is_zero() {
        return Err(GeomError::TrigUndefinedAtZero);
    }
    Ok(theta.signum())
}

/// Defined everywhere, including `tanp 0 = 0`.
pub fn tanp<S: Scalar>(theta: &S) -> S {
    theta.clone()
}

/// `ι(θ) = (θ/κ, θ²/κ)` on `y = κx²`; the chord from the origin has slope θ.
pub fn embed_angle<S: Scalar>(theta: &S, kappa: &S) -> Result<Point<S>> {
    if kappa.is_zero() {
        return Err(GeomError::ZeroKappa);
    }
    Ok(Point::new(theta.clone() / kappa.clone(), theta.sq() / kappa.clone()))
}

fn sides_and_cosp<S: Scalar>(t: &DaTriangle<S>) -> ((S, S, S), [S; 3]) {
    let cos = Vertex::ALL.map(|v| cosp(interior_angle(t, v).value()).expect("non-degenerate triangle has nonzero interior angles"));
    (t.sides(), cos)
}

/// `a = b cosp θ_C + c cosp θ_B` and its two cyclic companions.
pub fn first_cosine_law_check<S: Scalar>(t: &DaTriangle<S>) -> bool {
    let ((a, b, c), [ca, cb, cc]) = sides_and_cosp(t);
    let law_a = b.clone() * cc.clone() + c.clone() * cb.clone();
    let law_b = c.clone() * ca.clone() + a.clone() * cc;
    let law_c = a.clone() * cb + b.clone() * ca;
    law_a.is_close(&a) && law_b.is_close(&b) && law_c.is_close(&c)
}

/// `a² = b² + c² − 2bc cosp θ_A` (and cyclic). Also checks that squaring the
/// first law reproduces it, using `cosp θ_B · cosp θ_C = −cosp θ_A`.
pub fn second_cosine_law_check<S: Scalar>(t: &DaTriangle<S>) -> bool {
    let ((a, b, c), [ca, cb, cc]) = sides_and_cosp(t);
    let two = S::from_i64(2);
    let law = |x: &S, y: &S, z: &S, cos_x: &S| (y.sq() + z.sq() - two.clone() * y.clone() * z.clone() * cos_x.clone()).is_close(&x.sq());
    let all_three = law(&a, &b, &c, &ca) && law(&b, &c, &a, &cb) && law(&c, &a, &b, &cc);
    all_three && second_law_reduction_residual(t).is_zero()
}

/// `(b cosp θ_C + c cosp θ_B)² − (b² + c² − 2bc cosp θ_A)`; zero because the
/// triangle has exactly one negative interior angle.
pub fn second_law_reduction_residual<S: Scalar>(t: &DaTriangle<S>) -> S {
    let ((_, b, c), [ca, cb, cc]) = sides_and_cosp(t);
    let two = S::from_i64(2);
    let squared_first = (b.clone() * cc + c.clone() * cb).sq();
    let second = b.sq() + c.sq() - two * b * c * ca;
    let r = squared_first - second;
    if S::is_exact() || !r.is_close(&S::zero()) {
        r
    } else {
        S::zero()
    }
}

/// `|κ|/2 (b−a)(c−b)(c−a)` for a triangle inscribed in `y = κx²`.
pub fn da_area<S: Scalar>(t: &DaTriangle<S>, kappa: &S) -> Result<S> {
    if kappa.is_zero() {
        return Err(GeomError::ZeroKappa);
    }
    for v in Vertex::ALL {
        let p = t.vertex(v);
        if !(kappa.clone() * p.x.sq()).is_close(&p.y) {
            return Err(GeomError::NotInscribed);
        }
    }
    let s = t.sorted_by_x();
    let (a, b, c) = (&s.a().x, &s.b().x, &s.c().x);
    let prod = (b.clone() - a.clone()) * (c.clone() - b.clone()) * (c.clone() - a.clone());
    Ok(kappa.abs().half() * prod)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BrocardResult<S> {
    /// `(b−a)(c−b)(c−a) / (a²+b²+c²−ab−bc−ca)`.
    pub u: S,
    pub omega1: S,
    pub omega2: S,
    pub p1: Point<S>,
    pub p2: Point<S>,
}

fn line_with_slope<S: Scalar>(p: &Point<S>, m: S) -> SlopeLine<S> {
    let intercept = p.y.clone() - m.clone() * p.x.clone();
    SlopeLine::Sloped { slope: m, intercept }
}

fn chord_slope<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    match slope(p, q).expect("distinct vertices") {
        Slope::Finite(m) => m,
        Slope::Singular => unreachable!("DA triangle vertices have distinct abscissae"),
    }
}

/// The three lines `{X : ∠X V W = ω}` for the cyclic vertex pairs `(V, W)`.
/// For the first Brocard point the pairs are `(B,C), (C,A), (A,B)`; for the
/// second, `(C,B), (A,C), (B,A)`.
fn brocard_lines<S: Scalar>(pairs: [(&Point<S>, &Point<S>); 3], omega: &S) -> [SlopeLine<S>; 3] {
    pairs.map(|(v, w)| line_with_slope(v, chord_slope(v, w) + omega.clone()))
}

fn concurrent_point<S: Scalar>(lines: &[SlopeLine<S>; 3]) -> Option<Point<S>> {
    let x = lines[0].intersect(&lines[1])?;
    let y = lines[1].intersect(&lines[2])?;
    (x.x.is_close(&y.x) && x.y.is_close(&y.y) && lines[2].contains(&x)).then_some(x)
}

/// The closed form for the shift `u`; independent of κ.
pub fn brocard_u<S: Scalar>(a: &S, b: &S, c: &S) -> S {
    let num = (b.clone() - a.clone()) * (c.clone() - b.clone()) * (c.clone() - a.clone());
    let den = a.sq() + b.sq() + c.sq() - a.clone() * b.clone() - b.clone() * c.clone() - c.clone() * a.clone();
    assert!(!den.is_zero(), "distinct abscissae give a positive denominator");
    num / den
}

/// Solves for the Brocard angle from the line construction alone: the gap
/// between the two candidate intersections is affine in ω, so two probes
/// locate its root.
pub fn brocard_angle_by_intersection<S: Scalar>(t: &DaTriangle<S>) -> S {
    let pairs = [(t.b(), t.c()), (t.c(), t.a()), (t.a(), t.b())];
    let gap = |omega: &S| {
        let [lb, lc, la] = brocard_lines(pairs, omega);
        let x = lb.intersect(&lc).expect("slopes differ by a chord-slope gap");
        let y = lc.intersect(&la).expect("slopes differ by a chord-slope gap");
        x.x - y.x
    };
    let g0 = gap(&S::zero());
    let g1 = gap(&S::one());
    g0.clone() / (g0 - g1)
}

/// Both Brocard points of a triangle inscribed in `y = κx²` with
/// `x_A < x_B < x_C`.
pub fn brocard<S: Scalar>(t: &DaTriangle<S>, kappa: &S) -> Result<BrocardResult<S>> {
    if kappa.is_zero() {
        return Err(GeomError::ZeroKappa);
    }
    if !t.is_x_sorted() {
        return Err(GeomError::NotInXOrder);
    }
    da_area(t, kappa)?;
    let u = brocard_u(&t.a().x, &t.b().x, &t.c().x);
    let omega1 = kappa.clone() * u.clone();
    let omega2 = -omega1.clone();

    let first = brocard_lines([(t.b(), t.c()), (t.c(), t.a()), (t.a(), t.b())], &omega1);
    let p1 = concurrent_point(&first).expect("first Brocard lines are concurrent");
    let second = brocard_lines([(t.c(), t.b()), (t.a(), t.c()), (t.b(), t.a())], &omega2);
    let p2 = concurrent_point(&second).expect("second Brocard lines are concurrent");

    Ok(BrocardResult { u, omega1, omega2, p1, p2 })
}

/// Outcome of the three Brocard-angle identities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BrocardIdentities {
    pub tanp: bool,
    pub sinp_squared: bool,
    pub cotp: bool,
    /// `|sinp ω − 2S/√(a²b² + b²c² + c²a²)|` in floats.
    pub sinp_residual: f64,
}

impl BrocardIdentities {
    pub fn all_exact(&self) -> bool {
        self.tanp && self.sinp_squared && self.cotp
    }
}

pub fn brocard_identities<S: Scalar>(t: &DaTriangle<S>, kappa: &S) -> Result<BrocardIdentities> {
    let res = brocard(t, kappa)?;
    let area = da_area(t, kappa)?;
    let (a, b, c) = t.sides();
    let (a2, b2, c2) = (a.sq(), b.sq(), c.sq());
    let omega = ptrig(&res.omega1)?;
    let four = S::from_i64(4);

    let tanp = omega
        .tanp
        .is_close(&(four.clone() * area.clone() / (a2.clone() + b2.clone() + c2.clone())));
    let pair_sum = a2.clone() * b2.clone() + b2 * c2.clone() + c2 * a2;
    let sinp_squared = (omega.sinp.sq() * pair_sum.clone()).is_close(&(four * area.sq()));
    let cot_sum = Vertex::ALL
        .iter()
        .map(|&v| ptrig(interior_angle(t, v).value()).map(|p| p.cotp))
        .try_fold(S::zero(), |acc, c| c.map(|c| acc + c))?;
    let cotp = omega.cotp.is_close(&cot_sum);

    let sinp_residual = (omega.sinp.to_f64() - 2.0 * area.to_f64() / pair_sum.to_f64().sqrt()).abs();
    Ok(BrocardIdentities {
        tanp,
        sinp_squared,
        cotp,
        sinp_residual,
    })
}

pub fn brocard_identities_check<S: Scalar>(t: &DaTriangle<S>, kappa: &S) -> Result<bool> {
    Ok(brocard_identities(t, kappa)?.all_exact())
}

/// `slope(u) − slope(v)`, the oriented angle between two free vectors.
/// `None` when either is singular.
pub fn vector_angle<S: Scalar>(u: &DaVector<S>, v: &DaVector<S>) -> Option<S> {
    if u.is_null() || v.is_null() {
        return None;
    }
    Some(u.dy.clone() / u.dx.clone() - v.dy.clone() / v.dx.clone())
}

/// The angle between two free vectors with the interior-angle sign rule:
/// magnitude `|slope(u) − slope(v)|`, sign `sgn(dx_u·dx_v)`.
pub fn vector_interior_angle<S: Scalar>(u: &DaVector<S>, v: &DaVector<S>) -> Option<S> {
    let raw = vector_angle(u, v)?;
    Some((u.dx.clone() * v.dx.clone()).signum() * raw.abs())
}

/// `Π(u, v) = |u||v| sinp ∠(u, v)`, zero when either vector is singular.
pub fn alternating_product<S: Scalar>(u: &DaVector<S>, v: &DaVector<S>) -> Result<S> {
    if u.is_zero() || v.is_zero() {
        return Err(GeomError::ZeroVector);
    }
    Ok(match vector_angle(u, v) {
        Some(theta) => u.norm() * v.norm() * theta,
        None => S::zero(),
    })
}
