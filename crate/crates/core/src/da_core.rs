//! Points, slope lines, the difference angle, the DA norm and DA triangles.
//!
//! Frame: the projective reference line is the x-axis and the singular
//! direction is the y-axis, so singular lines are vertical.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(S::from_i64(x), S::from_i64(y))
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Point<T> {
        Point {
            x: f(&self.x),
            y: f(&self.y),
        }
    }
}

/// Slope of a segment; vertical segments have no finite slope.
#[derive(Debug, Clone, PartialEq)]
pub enum Slope<S> {
    Finite(S),
    Singular,
}

impl<S: Scalar> Slope<S> {
    /// Slope value with the singular-arm convention: a singular arm counts as 0.
    pub fn or_zero(self) -> S {
        match self {
            Slope::Finite(m) => m,
            Slope::Singular => S::zero(),
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Slope::Singular)
    }
}

/// A line that is either `y = slope·x + intercept` or the singular line `x = x0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SlopeLine<S> {
    Sloped { slope: S, intercept: S },
    Singular { x0: S },
}

impl<S: Scalar> SlopeLine<S> {
    pub fn through(p: &Point<S>, q: &Point<S>) -> Result<Self> {
        match slope(p, q)? {
            Slope::Finite(m) => {
                let intercept = p.y.clone() - m.clone() * p.x.clone();
                Ok(SlopeLine::Sloped { slope: m, intercept })
            }
            Slope::Singular => Ok(SlopeLine::Singular { x0: p.x.clone() }),
        }
    }

    /// The line `a·x + b·y + c = 0`, or `None` when `a = b = 0`.
    pub fn from_implicit(a: S, b: S, c: S) -> Option<Self> {
        if !b.is_zero() {
            Some(SlopeLine::Sloped {
                slope: -a / b.clone(),
                intercept: -c / b,
            })
        } else if !a.is_zero() {
            Some(SlopeLine::Singular { x0: -c / a })
        } else {
            None
        }
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        match self {
            SlopeLine::Sloped { slope, intercept } => (slope.clone() * p.x.clone() + intercept.clone()).is_close(&p.y),
            SlopeLine::Singular { x0 } => x0.is_close(&p.x),
        }
    }

    /// Point of the line at abscissa `x`; `None` for singular lines.
    pub fn at_x(&self, x: S) -> Option<Point<S>> {
        match self {
            SlopeLine::Sloped { slope, intercept } => {
                let y = slope.clone() * x.clone() + intercept.clone();
                Some(Point::new(x, y))
            }
            SlopeLine::Singular { .. } => None,
        }
    }

    /// Unique intersection point, or `None` for parallel (or equal) lines.
    pub fn intersect(&self, other: &Self) -> Option<Point<S>> {
        use SlopeLine::*;
        match (self, other) {
            (Sloped { slope: m1, intercept: c1 }, Sloped { slope: m2, intercept: c2 }) => {
                let dm = m1.clone() - m2.clone();
                if dm.is_zero() {
                    return None;
                }
                let x = (c2.clone() - c1.clone()) / dm;
                self.at_x(x)
            }
            (Sloped { .. }, Singular { x0 }) => self.at_x(x0.clone()),
            (Singular { x0 }, Sloped { .. }) => other.at_x(x0.clone()),
            (Singular { .. }, Singular { .. }) => None,
        }
    }
}

/// A signed slope difference. The straight angle is 0.
#[derive(Debug, Clone, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct DifferenceAngle<S>(pub S);

impl<S: Scalar> DifferenceAngle<S> {
    pub fn value(&self) -> &S {
        &self.0
    }

    pub fn into_inner(self) -> S {
        self.0
    }
}

pub fn slope<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Result<Slope<S>> {
    let dx = q.x.clone() - p.x.clone();
    let dy = q.y.clone() - p.y.clone();
    if dx.is_zero() {
        if dy.is_zero() {
            return Err(GeomError::DegenerateSegment);
        }
        return Ok(Slope::Singular);
    }
    Ok(Slope::Finite(dy / dx))
}

/// `|x_Q − x_P|`. Vanishes on singular pairs.
pub fn da_norm<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    (q.x.clone() - p.x.clone()).abs()
}

/// `∠XYZ := Slp(YX) − Slp(YZ)`, singular arms counting as slope 0.
pub fn oriented_angle<S: Scalar>(y: &Point<S>, x: &Point<S>, z: &Point<S>) -> Result<DifferenceAngle<S>> {
    let m_yx = slope(y, x)?.or_zero();
    let m_yz = slope(y, z)?.or_zero();
    Ok(DifferenceAngle(m_yx - m_yz))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];
}

/// Three points with pairwise distinct x-coordinates, not on a common line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DaTriangle<S> {
    a: Point<S>,
    b: Point<S>,
    c: Point<S>,
}

impl<S: Scalar> DaTriangle<S> {
    pub fn new(a: Point<S>, b: Point<S>, c: Point<S>) -> Result<Self> {
        if a.x == b.x || b.x == c.x || c.x == a.x {
            return Err(GeomError::DegenerateTriangle("two vertices share a singular line"));
        }
        let cross = (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone()) - (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone());
        if cross.is_zero() {
            return Err(GeomError::DegenerateTriangle("collinear vertices"));
        }
        Ok(Self { a, b, c })
    }

    /// Triangle inscribed in `y = κx²` with the given abscissae.
    pub fn on_parabola(kappa: &S, xa: S, xb: S, xc: S) -> Result<Self> {
        let p = |x: S| Point::new(x.clone(), kappa.clone() * x.clone() * x);
        Self::new(p(xa), p(xb), p(xc))
    }

    pub fn a(&self) -> &Point<S> {
        &self.a
    }

    pub fn b(&self) -> &Point<S> {
        &self.b
    }

    pub fn c(&self) -> &Point<S> {
        &self.c
    }

    pub fn vertex(&self, v: Vertex) -> &Point<S> {
        match v {
            Vertex::A => &self.a,
            Vertex::B => &self.b,
            Vertex::C => &self.c,
        }
    }

    /// The vertex together with the two others, in cyclic order.
    fn arms(&self, v: Vertex) -> (&Point<S>, &Point<S>, &Point<S>) {
        match v {
            Vertex::A => (&self.a, &self.b, &self.c),
            Vertex::B => (&self.b, &self.c, &self.a),
            Vertex::C => (&self.c, &self.a, &self.b),
        }
    }

    /// Side lengths `(a, b, c) = (|BC|, |CA|, |AB|)` in the DA norm.
    pub fn sides(&self) -> (S, S, S) {
        (da_norm(&self.b, &self.c), da_norm(&self.c, &self.a), da_norm(&self.a, &self.b))
    }

    /// The vertex whose abscissa lies between the other two.
    pub fn middle_vertex(&self) -> Vertex {
        let (xa, xb, xc) = (&self.a.x, &self.b.x, &self.c.x);
        let between = |m: &S, p: &S, q: &S| (m > p && m < q) || (m < p && m > q);
        if between(xa, xb, xc) {
            Vertex::A
        } else if between(xb, xc, xa) {
            Vertex::B
        } else {
            Vertex::C
        }
    }

    /// The same triangle relabelled so that `x_A < x_B < x_C`.
    pub fn sorted_by_x(&self) -> Self {
        let mut v = [self.a.clone(), self.b.clone(), self.c.clone()];
        v.sort_by(|p, q| p.x.partial_cmp(&q.x).expect("finite coordinates"));
        let [a, b, c] = v;
        Self { a, b, c }
    }

    pub fn is_x_sorted(&self) -> bool {
        self.a.x < self.b.x && self.b.x < self.c.x
    }
}

/// Interior difference angle at a vertex: magnitude `|Slp(YX) − Slp(YZ)|`,
/// sign `sgn((x_X − x_Y)(x_Z − x_Y))`.
pub fn interior_angle<S: Scalar>(t: &DaTriangle<S>, v: Vertex) -> DifferenceAngle<S> {
    let (y, x, z) = t.arms(v);
    let magnitude = oriented_angle(y, x, z)
        .expect("valid triangle has no degenerate arm")
        .into_inner()
        .abs();
    let sign = ((x.x.clone() - y.x.clone()) * (z.x.clone() - y.x.clone())).signum();
    DifferenceAngle(sign * magnitude)
}

pub fn interior_angles<S: Scalar>(t: &DaTriangle<S>) -> [S; 3] {
    Vertex::ALL.map(|v| interior_angle(t, v).into_inner())
}

/// The DA triangle inequality is always an equality: the two short sides
/// add up to the long one.
pub fn triangle_equality_check<S: Scalar>(t: &DaTriangle<S>) -> bool {
    let (a, b, c) = t.sides();
    let (short1, short2, long) = match t.middle_vertex() {
        Vertex::A => (b, c, a),
        Vertex::B => (a, c, b),
        Vertex::C => (a, b, c),
    };
    (short1 + short2).is_close(&long)
}
