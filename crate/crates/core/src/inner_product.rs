//! The degenerate pseudo-inner product and the identities built from it:
//! parallelogram law, Cauchy–Schwarz equality, cyclic identities, isoptics
//! and Stewart's theorem (two independent routes).

use serde::Serialize;

use crate::da_core::{da_norm, DaTriangle, Point, SlopeLine};
use crate::error::{GeomError, Result};
use crate::focal_power::Parabola;
use crate::scalar::Scalar;

/// Displacement between two points. Its DA norm is `|dx|`; vectors with
/// `dx = 0` form the null space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DaVector<S> {
    pub dx: S,
    pub dy: S,
}

impl<S: Scalar> DaVector<S> {
    pub fn new(dx: S, dy: S) -> Self {
        Self { dx, dy }
    }

    pub fn between(from: &Point<S>, to: &Point<S>) -> Self {
        Self::new(to.x.clone() - from.x.clone(), to.y.clone() - from.y.clone())
    }

    pub fn norm(&self) -> S {
        self.dx.abs()
    }

    pub fn is_null(&self) -> bool {
        self.dx.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.dx.clone() + other.dx.clone(), self.dy.clone() + other.dy.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(k.clone() * self.dx.clone(), k.clone() * self.dy.clone())
    }
}

/// Polarization: `½(|u+v|² − |u|² − |v|²)`.
pub fn da_inner<S: Scalar>(u: &DaVector<S>, v: &DaVector<S>) -> S {
    (u.add(v).norm().sq() - u.norm().sq() - v.norm().sq()).half()
}

/// Inner product induced on the quotient by the null space.
pub fn quotient_inner<S: Scalar>(u: &DaVector<S>, v: &DaVector<S>) -> S {
    u.dx.clone() * v.dx.clone()
}

fn midpoint<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Point<S> {
    Point::new((p.x.clone() + q.x.clone()).half(), (p.y.clone() + q.y.clone()).half())
}

/// `|AB|² + |AC|² = 2(|AM|² + |MB|²)` with `M` the midpoint of `BC`.
pub fn parallelogram_check<S: Scalar>(t: &DaTriangle<S>) -> bool {
    let m = midpoint(t.b(), t.c());
    let lhs = da_norm(t.a(), t.b()).sq() + da_norm(t.a(), t.c()).sq();
    let rhs = S::from_i64(2) * (da_norm(t.a(), &m).sq() + da_norm(&m, t.b()).sq());
    lhs.is_close(&rhs)
}

/// `|⟨OA, OB⟩| = |OA|·|OB|`.
pub fn cauchy_schwarz_check<S: Scalar>(a: &Point<S>, b: &Point<S>, o: &Point<S>) -> bool {
    let oa = DaVector::between(o, a);
    let ob = DaVector::between(o, b);
    da_inner(&oa, &ob).abs().is_close(&(oa.norm() * ob.norm()))
}

/// Edge vectors `u = BC`, `v = CA`, `w = AB`; returns
/// `(⟨u,v⟩ + ⟨v,w⟩ + ⟨w,u⟩, −½(|u|² + |v|² + |w|²))`.
pub fn cyclic_inner_identity<S: Scalar>(t: &DaTriangle<S>) -> (S, S) {
    let u = DaVector::between(t.b(), t.c());
    let v = DaVector::between(t.c(), t.a());
    let w = DaVector::between(t.a(), t.b());
    let lhs = da_inner(&u, &v) + da_inner(&v, &w) + da_inner(&w, &u);
    let rhs = -(u.norm().sq() + v.norm().sq() + w.norm().sq()).half();
    (lhs, rhs)
}

/// Squared form `(a² + b² + c²)² = 4(a²b² + b²c² + c²a²)`.
pub fn positive_cyclic_check<S: Scalar>(t: &DaTriangle<S>) -> bool {
    let (a, b, c) = t.sides();
    let (a2, b2, c2) = (a.sq(), b.sq(), c.sq());
    let lhs = (a2.clone() + b2.clone() + c2.clone()).sq();
    let rhs = S::from_i64(4) * (a2.clone() * b2.clone() + b2 * c2.clone() + c2 * a2);
    lhs.is_close(&rhs)
}

/// `|a² + b² + c² − 2√(a²b² + b²c² + c²a²)|` evaluated in floats.
pub fn positive_cyclic_residual<S: Scalar>(t: &DaTriangle<S>) -> f64 {
    let (a, b, c) = t.sides();
    let (a, b, c) = (a.to_f64(), b.to_f64(), c.to_f64());
    let lhs = a * a + b * b + c * c;
    let rhs = 2.0 * (a * a * b * b + b * b * c * c + c * c * a * a).sqrt();
    (lhs - rhs).abs()
}

/// The locus `⟨OA, OX⟩ = c`: the singular line `x = x_O + c/(x_A − x_O)`.
pub fn isoptic_line<S: Scalar>(a: &Point<S>, c: &S, o: &Point<S>) -> Result<SlopeLine<S>> {
    let xa = a.x.clone() - o.x.clone();
    if xa.is_zero() {
        return Err(GeomError::SingularDirectionFromOrigin);
    }
    Ok(SlopeLine::Singular {
        x0: o.x.clone() + c.clone() / xa,
    })
}

/// The point of segment `PQ` with abscissa `x`.
pub fn point_on_segment<S: Scalar>(p: &Point<S>, q: &Point<S>, x: S) -> Result<Point<S>> {
    if !strictly_between(&x, &p.x, &q.x) {
        return Err(GeomError::CevianFootOutsideSegment);
    }
    let line = SlopeLine::through(p, q)?;
    Ok(line.at_x(x).expect("segment with distinct abscissae is not singular"))
}

fn strictly_between<S: Scalar>(m: &S, p: &S, q: &S) -> bool {
    (m > p && m < q) || (m < p && m > q)
}

/// Lengths shared by both Stewart routes.
struct CevianLengths<S> {
    p: S,
    q: S,
    s: S,
    ab: S,
    ca: S,
    cb: S,
}

fn cevian_lengths<S: Scalar>(t: &DaTriangle<S>, foot: &Point<S>) -> Result<CevianLengths<S>> {
    if !strictly_between(&foot.x, &t.a().x, &t.b().x) {
        return Err(GeomError::CevianFootOutsideSegment);
    }
    Ok(CevianLengths {
        p: da_norm(t.a(), foot),
        q: da_norm(foot, t.b()),
        s: da_norm(t.c(), foot),
        ab: da_norm(t.a(), t.b()),
        ca: da_norm(t.c(), t.a()),
        cb: da_norm(t.c(), t.b()),
    })
}

/// Stewart's identity `q|CA|² + p|CB|² = |AB|(|CS|² + pq)` for a cevian foot
/// `S` strictly inside `AB` (only its abscissa matters).
pub fn stewart_check<S: Scalar>(t: &DaTriangle<S>, foot: &Point<S>) -> Result<(S, S)> {
    let l = cevian_lengths(t, foot)?;
    let lhs = l.q.clone() * l.ca.sq() + l.p.clone() * l.cb.sq();
    let rhs = l.ab * (l.s.sq() + l.p * l.q);
    Ok((lhs, rhs))
}

/// The identity with the exponents placed as `(q|CA|)² + (p|CB|)²`. Kept to
/// document that this placement is not an identity.
pub fn stewart_literal_squares<S: Scalar>(t: &DaTriangle<S>, foot: &Point<S>) -> Result<(S, S)> {
    let l = cevian_lengths(t, foot)?;
    let lhs = (l.q.clone() * l.ca).sq() + (l.p.clone() * l.cb).sq();
    let rhs = l.ab * (l.s.sq() + l.p * l.q);
    Ok((lhs, rhs))
}

/// Intermediate quantities of the circumparabola route to Stewart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StewartViaPower<S> {
    /// Second intersection of the cevian `CS` with the circumparabola.
    pub d: Point<S>,
    /// `s·(|AD||BC| + |BD||CA|)`.
    pub lhs: S,
    /// `s·|AB||CD|`.
    pub rhs: S,
    /// `|AS||BS| = |CS||SD|`.
    pub power_holds: bool,
    /// `|SD| = pq/s`, `|AD| = (p/s)|BC|`, `|BD| = (q/s)|CA|`.
    pub similarities_hold: bool,
}

/// Recomputes Stewart's identity through the circumparabola: intersect the
/// cevian with it, then combine the power of `S` with Ptolemy on `ADBC`.
/// `foot` must lie on segment `AB`.
pub fn stewart_via_power<S: Scalar>(t: &DaTriangle<S>, foot: &Point<S>) -> Result<StewartViaPower<S>> {
    let on_ab = SlopeLine::through(t.a(), t.b())?;
    if !on_ab.contains(foot) {
        return Err(GeomError::CevianFootOutsideSegment);
    }
    let l = cevian_lengths(t, foot)?;
    let circum = Parabola::through(t.a(), t.b(), t.c())?;
    let cevian = match SlopeLine::through(t.c(), foot)? {
        SlopeLine::Sloped { slope, .. } => slope,
        SlopeLine::Singular { .. } => return Err(GeomError::CevianSingular),
    };
    // roots of κx² + (β − m)x + … sum to (m − β)/κ, one of them is x_C
    let (kappa, beta, _) = circum.expanded();
    let xd = (cevian - beta) / kappa - t.c().x.clone();
    let d = circum.point_at(xd);

    let sd = da_norm(foot, &d);
    let ad = da_norm(t.a(), &d);
    let bd = da_norm(t.b(), &d);
    let cd = da_norm(t.c(), &d);

    let power_holds = (l.p.clone() * l.q.clone()).is_close(&(l.s.clone() * sd.clone()));
    let similarities_hold = (sd * l.s.clone()).is_close(&(l.p.clone() * l.q.clone()))
        && (ad.clone() * l.s.clone()).is_close(&(l.p.clone() * l.cb.clone()))
        && (bd.clone() * l.s.clone()).is_close(&(l.q.clone() * l.ca.clone()));

    let lhs = l.s.clone() * (ad * l.cb + bd * l.ca);
    let rhs = l.s * l.ab * cd;
    Ok(StewartViaPower {
        d,
        lhs,
        rhs,
        power_holds,
        similarities_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn v(dx: i64, dy: i64) -> DaVector<Rat> {
        DaVector::new(rat(dx, 1), rat(dy, 1))
    }

    fn tri(xs: [i64; 3]) -> DaTriangle<Rat> {
        DaTriangle::on_parabola(&rat(1, 1), rat(xs[0], 1), rat(xs[1], 1), rat(xs[2], 1)).unwrap()
    }

    #[test]
    fn inner_examples() {
        assert_eq!(da_inner(&v(2, 7), &v(3, -1)), rat(6, 1));
        assert_eq!(da_inner(&v(0, 4), &v(9, 2)), rat(0, 1));
        assert_eq!(da_inner(&v(5, 1), &v(5, 1)), rat(25, 1));
        assert_eq!(quotient_inner(&v(2, 0), &v(3, 0)), rat(6, 1));
        assert_eq!(quotient_inner(&v(0, 8), &v(3, 0)), rat(0, 1));
        assert!(quotient_inner(&v(5, 0), &v(5, 3)) > rat(0, 1));
    }

    #[test]
    fn parallelogram_examples() {
        assert!(parallelogram_check(&tri([0, 2, 6])));
        // A at the midpoint abscissa of BC: the median AM is singular
        assert!(parallelogram_check(&tri([2, 0, 4])));
        let t = DaTriangle::new(Point::<Rat>::from_ints(1, 5), Point::from_ints(-3, 2), Point::from_ints(7, -4)).unwrap();
        assert!(parallelogram_check(&t));
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let o = Point::<Rat>::from_ints(0, 0);
        assert!(cauchy_schwarz_check(&Point::from_ints(2, 1), &Point::from_ints(-3, 4), &o));
        assert!(cauchy_schwarz_check(&Point::from_ints(0, 5), &Point::from_ints(-3, 4), &o));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_inner_identity(&tri([0, 1, 3])), (rat(-7, 1), rat(-7, 1)));
        assert_eq!(cyclic_inner_identity(&tri([0, 2, 5])), (rat(-19, 1), rat(-19, 1)));
        assert!(positive_cyclic_check(&tri([0, 1, 3])));
        assert!(positive_cyclic_check(&tri([0, 1, 2])));
        assert!(positive_cyclic_residual(&tri([0, 1, 3])) < 1e-12);
    }

    #[test]
    fn isoptic_examples() {
        let o = Point::from_ints(0, 0);
        let line = isoptic_line(&Point::from_ints(2, 5), &rat(6, 1), &o).unwrap();
        assert_eq!(line, SlopeLine::Singular { x0: rat(3, 1) });
        let line = isoptic_line(&Point::from_ints(2, 5), &rat(0, 1), &o).unwrap();
        assert_eq!(line, SlopeLine::Singular { x0: rat(0, 1) });
        let line = isoptic_line(&Point::from_ints(-1, 0), &rat(4, 1), &o).unwrap();
        assert_eq!(line, SlopeLine::Singular { x0: rat(-4, 1) });
        assert_eq!(
            isoptic_line(&Point::from_ints(0, 3), &rat(1, 1), &o).unwrap_err(),
            GeomError::SingularDirectionFromOrigin
        );
    }

    #[test]
    fn stewart_examples() {
        let t = tri([0, 3, 5]);
        let s = point_on_segment(t.a(), t.b(), rat(1, 1)).unwrap();
        assert_eq!(stewart_check(&t, &s).unwrap(), (rat(54, 1), rat(54, 1)));

        let via = stewart_via_power(&t, &s).unwrap();
        assert_eq!(via.d.x, rat(1, 2));
        assert_eq!((via.lhs.clone(), via.rhs.clone()), (rat(54, 1), rat(54, 1)));
        assert!(via.power_holds && via.similarities_hold);

        // C between A and B
        let t = tri([0, 4, 1]);
        let s = point_on_segment(t.a(), t.b(), rat(3, 1)).unwrap();
        let (lhs, rhs) = stewart_check(&t, &s).unwrap();
        assert_eq!(lhs, rhs);
        let via = stewart_via_power(&t, &s).unwrap();
        assert_eq!(via.d.x, rat(9, 2));
        assert_eq!(via.lhs, via.rhs);
    }

    #[test]
    fn stewart_midpoint_is_parallelogram() {
        let t = tri([-2, 6, 3]);
        let s = point_on_segment(t.a(), t.b(), rat(2, 1)).unwrap();
        let (lhs, rhs) = stewart_check(&t, &s).unwrap();
        assert_eq!(lhs, rhs);
        // with p = q = |AB|/2 the identity is the parallelogram law at vertex C
        let relabelled = DaTriangle::new(t.c().clone(), t.a().clone(), t.b().clone()).unwrap();
        assert!(parallelogram_check(&relabelled));
    }

    #[test]
    fn literal_square_placement_fails_on_witness() {
        let t = tri([0, 3, 5]);
        let s = point_on_segment(t.a(), t.b(), rat(1, 1)).unwrap();
        let (lhs, rhs) = stewart_literal_squares(&t, &s).unwrap();
        assert_eq!((lhs, rhs), (rat(104, 1), rat(54, 1)));
    }

    #[test]
    fn stewart_errors() {
        let t = tri([0, 3, 5]);
        let outside = t.c().clone();
        assert_eq!(stewart_check(&t, &outside).unwrap_err(), GeomError::CevianFootOutsideSegment);
        let off_line = Point::from_ints(1, 100);
        assert_eq!(stewart_via_power(&t, &off_line).unwrap_err(), GeomError::CevianFootOutsideSegment);
        let t = tri([0, 4, 1]);
        let s = point_on_segment(t.a(), t.b(), rat(1, 1)).unwrap();
        assert_eq!(stewart_via_power(&t, &s).unwrap_err(), GeomError::CevianSingular);
    }

    fn r() -> impl Strategy<Value = Rat> {
        (-60i64..60, 1i64..9).prop_map(|(n, d)| rat(n, d))
    }

    fn vec2() -> impl Strategy<Value = DaVector<Rat>> {
        (r(), r()).prop_map(|(a, b)| DaVector::new(a, b))
    }

    proptest! {
        #[test]
        fn pseudo_inner_axioms(u in vec2(), w in vec2(), z in vec2(), k in r()) {
            // bilinearity and symmetry
            prop_assert_eq!(da_inner(&u.add(&w), &z), da_inner(&u, &z) + da_inner(&w, &z));
            prop_assert_eq!(da_inner(&u.scale(&k), &z), k.clone() * da_inner(&u, &z));
            prop_assert_eq!(da_inner(&u, &z), da_inner(&z, &u));
            // positive semidefinite
            prop_assert!(da_inner(&u, &u) >= rat(0, 1));
            // polarization equals dx·dx
            prop_assert_eq!(da_inner(&u, &z), quotient_inner(&u, &z));
            // null space is a subspace
            let n1 = DaVector::new(rat(0, 1), u.dy.clone());
            let n2 = DaVector::new(rat(0, 1), w.dy.clone());
            prop_assert!(n1.scale(&k).add(&n2).is_null());
            prop_assert_eq!(da_inner(&n1, &n1), rat(0, 1));
        }

        #[test]
        fn cauchy_schwarz_always(ax in r(), ay in r(), bx in r(), by in r(), ox in r(), oy in r()) {
            let o = Point::new(ox, oy);
            prop_assert!(cauchy_schwarz_check(&Point::new(ax, ay), &Point::new(bx, by), &o));
        }

        #[test]
        fn isoptic_points_have_constant_inner(ax in r(), c in r(), y in r()) {
            let o = Point::new(rat(1, 3), rat(-2, 1));
            prop_assume!(ax != o.x);
            let a = Point::new(ax, rat(0, 1));
            let SlopeLine::Singular { x0 } = isoptic_line(&a, &c, &o).unwrap() else { unreachable!() };
            let xpt = Point::new(x0, y);
            prop_assert_eq!(da_inner(&DaVector::between(&o, &a), &DaVector::between(&o, &xpt)), c);
        }
    }
}
