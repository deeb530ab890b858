//! Focal function, its zero-set parabola, the parabolic power, radical axes
//! and radical centers.

use serde::Serialize;

use crate::da_core::{da_norm, Point, SlopeLine};
use crate::error::{GeomError, Result};
use crate::scalar::{Scalar, Surd};

/// The axis-parallel parabola `y = κ(x − h)² + k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parabola<S> {
    kappa: S,
    h: S,
    k: S,
}

impl<S: Scalar> Parabola<S> {
    pub fn new(kappa: S, h: S, k: S) -> Result<Self> {
        if kappa.is_zero() {
            return Err(GeomError::ZeroKappa);
        }
        Ok(Self { kappa, h, k })
    }

    /// `y = κx²`.
    pub fn standard(kappa: S) -> Result<Self> {
        Self::new(kappa, S::zero(), S::zero())
    }

    /// The parabola with the given focus and horizontal directrix.
    pub fn from_focus_directrix(focus: &Point<S>, directrix_y: &S) -> Result<Self> {
        let gap = focus.y.clone() - directrix_y.clone();
        if gap.is_zero() {
            return Err(GeomError::FocusOnDirectrixLevel);
        }
        let kappa = S::one() / (S::from_i64(2) * gap);
        let k = (focus.y.clone() + directrix_y.clone()).half();
        Self::new(kappa, focus.x.clone(), k)
    }

    /// The unique axis-parallel parabola through three points with distinct
    /// abscissae.
    pub fn through(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Result<Self> {
        if p.x == q.x || q.x == r.x || r.x == p.x {
            return Err(GeomError::DegenerateTriangle("two vertices share a singular line"));
        }
        // divided differences
        let d1 = (q.y.clone() - p.y.clone()) / (q.x.clone() - p.x.clone());
        let d2 = (r.y.clone() - q.y.clone()) / (r.x.clone() - q.x.clone());
        let kappa = (d2 - d1.clone()) / (r.x.clone() - p.x.clone());
        if kappa.is_zero() {
            return Err(GeomError::NoCircumparabola);
        }
        // y = κx² + βx + γ
        let beta = d1 - kappa.clone() * (p.x.clone() + q.x.clone());
        let gamma = p.y.clone() - kappa.clone() * p.x.sq() - beta.clone() * p.x.clone();
        let h = -beta.clone() / (S::from_i64(2) * kappa.clone());
        let k = gamma - beta.sq() / (S::from_i64(4) * kappa.clone());
        Self::new(kappa, h, k)
    }

    pub fn kappa(&self) -> &S {
        &self.kappa
    }

    pub fn h(&self) -> &S {
        &self.h
    }

    pub fn k(&self) -> &S {
        &self.k
    }

    pub fn vertex(&self) -> Point<S> {
        Point::new(self.h.clone(), self.k.clone())
    }

    pub fn y_at(&self, x: &S) -> S {
        self.kappa.clone() * (x.clone() - self.h.clone()).sq() + self.k.clone()
    }

    pub fn point_at(&self, x: S) -> Point<S> {
        let y = self.y_at(&x);
        Point::new(x, y)
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.y_at(&p.x).is_close(&p.y)
    }

    fn quarter_focal_length(&self) -> S {
        S::one() / (S::from_i64(4) * self.kappa.clone())
    }

    pub fn focus(&self) -> Point<S> {
        Point::new(self.h.clone(), self.k.clone() + self.quarter_focal_length())
    }

    pub fn directrix_y(&self) -> S {
        self.k.clone() - self.quarter_focal_length()
    }

    /// Coefficients `(κ, β, γ)` of `y = κx² + βx + γ`.
    pub fn expanded(&self) -> (S, S, S) {
        let beta = -S::from_i64(2) * self.kappa.clone() * self.h.clone();
        let gamma = self.kappa.clone() * self.h.sq() + self.k.clone();
        (self.kappa.clone(), beta, gamma)
    }
}

/// A focus candidate `F` and base point `A`, with the normalized offsets
/// `q̂ = (y_F − y_A)/2` and `x̂ = x_A − x_F`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalFrame<S> {
    focus: Point<S>,
    base: Point<S>,
    q_hat: S,
    x_hat: S,
}

impl<S: Scalar> FocalFrame<S> {
    pub fn new(focus: Point<S>, base: Point<S>) -> Result<Self> {
        let q_hat = (focus.y.clone() - base.y.clone()).half();
        let x_hat = base.x.clone() - focus.x.clone();
        if q_hat.is_zero() {
            return Err(GeomError::FocusOnDirectrixLevel);
        }
        if x_hat.is_zero() {
            return Err(GeomError::FocusOnSingularLine);
        }
        Ok(Self { focus, base, q_hat, x_hat })
    }

    pub fn focus(&self) -> &Point<S> {
        &self.focus
    }

    pub fn base(&self) -> &Point<S> {
        &self.base
    }

    pub fn q_hat(&self) -> &S {
        &self.q_hat
    }

    pub fn x_hat(&self) -> &S {
        &self.x_hat
    }

    /// Height of the midpoint level between base and focus.
    fn mid_level(&self) -> S {
        (self.base.y.clone() + self.focus.y.clone()).half()
    }

    /// `ŷ` for a point on the singular line through the base.
    pub fn y_hat(&self, p: &Point<S>) -> S {
        p.y.clone() - self.mid_level()
    }
}

/// `1 − 4q̂ŷ/x̂²` for `P` on the singular line through `A`.
pub fn focal_function<S: Scalar>(frame: &FocalFrame<S>, p: &Point<S>) -> Result<S> {
    if p.x != frame.base.x {
        return Err(GeomError::NotOnSingularLine);
    }
    let y_hat = frame.y_hat(p);
    Ok(S::one() - S::from_i64(4) * frame.q_hat.clone() * y_hat / frame.x_hat.sq())
}

/// The unique zero of the focal function on the singular line through `A`:
/// `4q̂ŷ = x̂²`.
pub fn solve_focal<S: Scalar>(frame: &FocalFrame<S>) -> Point<S> {
    let y_hat = frame.x_hat.sq() / (S::from_i64(4) * frame.q_hat.clone());
    Point::new(frame.base.x.clone(), frame.mid_level() + y_hat)
}

/// Solves the focal equation for each base point `(x, directrix_y)`.
pub fn focal_locus<S: Scalar>(focus: &Point<S>, directrix_y: &S, xs: &[S]) -> Result<Vec<Point<S>>> {
    if focus.y == *directrix_y {
        return Err(GeomError::FocusOnDirectrixLevel);
    }
    xs.iter()
        .map(|x| {
            let frame = FocalFrame::new(focus.clone(), Point::new(x.clone(), directrix_y.clone()))?;
            Ok(solve_focal(&frame))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Position {
    Interior,
    OnCurve,
    Exterior,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerResult<S> {
    pub value: S,
    pub position: Position,
}

/// `Π(P; C) = (x_P − h)² − (y_P − k)/κ`; negative on the focal side.
pub fn parabolic_power<S: Scalar>(c: &Parabola<S>, p: &Point<S>) -> PowerResult<S> {
    let value = (p.x.clone() - c.h.clone()).sq() - (p.y.clone() - c.k.clone()) / c.kappa.clone();
    let position = if value.is_zero() {
        Position::OnCurve
    } else if value.is_positive() {
        Position::Exterior
    } else {
        Position::Interior
    };
    PowerResult { value, position }
}

/// Side test that does not go through the power: interior iff `P` lies on the
/// same side of the curve as the focus.
pub fn geometric_side<S: Scalar>(c: &Parabola<S>, p: &Point<S>) -> Position {
    let above = p.y.clone() - c.y_at(&p.x);
    if above.is_zero() {
        Position::OnCurve
    } else if above.signum() == c.kappa.signum() {
        Position::Interior
    } else {
        Position::Exterior
    }
}

/// The two abscissae where the line through `P` with slope `m` meets `C`,
/// as conjugate elements of `S(√disc)`.
pub fn secant_intersections<S: Scalar>(c: &Parabola<S>, p: &Point<S>, m: &S) -> Result<[Surd<S>; 2]> {
    // κx² − (2κh + m)x + (κh² + k + m·x_P − y_P) = 0
    let two = S::from_i64(2);
    let lin = two.clone() * c.kappa.clone() * c.h.clone() + m.clone();
    let constant = c.kappa.clone() * c.h.sq() + c.k.clone() + m.clone() * p.x.clone() - p.y.clone();
    let disc = lin.sq() - S::from_i64(4) * c.kappa.clone() * constant;
    if disc.is_negative() {
        return Err(GeomError::SecantMissesParabola);
    }
    let denom = two * c.kappa.clone();
    let root = Surd::new(lin / denom.clone(), S::one() / denom, disc);
    Ok([root.clone(), root.conj()])
}

/// `s_P(A)·s_P(B)` for the intersections of a secant through `P` with slope `m`.
pub fn secant_power_product<S: Scalar>(c: &Parabola<S>, p: &Point<S>, m: &S) -> Result<S> {
    let [r1, r2] = secant_intersections(c, p, m)?;
    let prod = r1.sub_scalar(&p.x).mul(&r2.sub_scalar(&p.x));
    Ok(prod.as_base().expect("conjugate product lies in the base field"))
}

/// The line of equal parabolic power of two intersecting parabolas (their
/// common chord, or the common tangent for a tangent pair).
pub fn radical_axis<S: Scalar>(c1: &Parabola<S>, c2: &Parabola<S>) -> Result<SlopeLine<S>> {
    if c1 == c2 {
        return Err(GeomError::CoincidentCurves);
    }
    let two = S::from_i64(2);
    if c1.kappa == c2.kappa {
        return Err(if c1.h == c2.h {
            GeomError::DisjointParabolas
        } else {
            GeomError::SingleCrossing
        });
    }
    // κ₁(x−h₁)² + k₁ = κ₂(x−h₂)² + k₂
    let qa = c1.kappa.clone() - c2.kappa.clone();
    let qb = -two.clone() * (c1.kappa.clone() * c1.h.clone() - c2.kappa.clone() * c2.h.clone());
    let qc = c1.kappa.clone() * c1.h.sq() + c1.k.clone() - c2.kappa.clone() * c2.h.sq() - c2.k.clone();
    let disc = qb.sq() - S::from_i64(4) * qa * qc;
    if disc.is_negative() {
        return Err(GeomError::DisjointParabolas);
    }
    // Π₁ − Π₂ = 0 is linear in (x, y)
    let a = two * (c2.h.clone() - c1.h.clone());
    let b = S::one() / c2.kappa.clone() - S::one() / c1.kappa.clone();
    let c = c1.h.sq() - c2.h.sq() + c1.k.clone() / c1.kappa.clone() - c2.k.clone() / c2.kappa.clone();
    Ok(SlopeLine::from_implicit(a, b, c).expect("distinct kappas give a proper line"))
}

/// Common point of the three pairwise radical axes.
pub fn radical_center<S: Scalar>(c1: &Parabola<S>, c2: &Parabola<S>, c3: &Parabola<S>) -> Result<Point<S>> {
    let l12 = radical_axis(c1, c2)?;
    let l23 = radical_axis(c2, c3)?;
    let l31 = radical_axis(c3, c1)?;
    let center = l12
        .intersect(&l23)
        .or_else(|| l23.intersect(&l31))
        .or_else(|| l31.intersect(&l12))
        .ok_or(GeomError::NoFiniteRadicalCenter)?;
    if !(l12.contains(&center) && l23.contains(&center) && l31.contains(&center)) {
        return Err(GeomError::NoFiniteRadicalCenter);
    }
    Ok(center)
}

/// `|AC|·|BD| = |AB|·|CD| + |AD|·|BC|` for four points of `C` taken at
/// increasing abscissae.
pub fn da_ptolemy_check<S: Scalar>(xs: &[S; 4], c: &Parabola<S>) -> Result<bool> {
    if !xs.windows(2).all(|w| w[0] < w[1]) {
        return Err(GeomError::NotInXOrder);
    }
    let [a, b, cc, d] = xs.clone().map(|x| c.point_at(x));
    let n = |p: &Point<S>, q: &Point<S>| da_norm(p, q);
    let lhs = n(&a, &cc) * n(&b, &d);
    let rhs = n(&a, &b) * n(&cc, &d) + n(&a, &d) * n(&b, &cc);
    Ok(lhs.is_close(&rhs))
}
