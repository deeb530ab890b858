//! Cross ratios on the projective line of slopes, Laguerre's formula, and the
//! Cayley–Klein angle with its axiom checks and bisector.
//!
//! The angle between slopes `m1` and `m2` relative to the isotropic slopes
//! `t1`, `t2` is `λ log Cr(m1, m2; t1, t2)`, defined where the cross ratio is
//! positive, i.e. where both slopes lie in the same component of the line
//! minus `{t1, t2}`. Complex isotropic pairs are covered by [`laguerre_angle`].

mod limits;

pub use limits::*;

use std::cmp::Ordering;

use num_traits::Num;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::scalar::{cx_log, Cx, Scalar};

/// A point `[x : 1]` or `∞ = [1 : 0]` of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ProjPoint<F> {
    Finite(F),
    Infinity,
}

impl<F: Clone + Num> ProjPoint<F> {
    fn homogeneous(&self) -> (F, F) {
        match self {
            ProjPoint::Finite(x) => (x.clone(), F::one()),
            ProjPoint::Infinity => (F::one(), F::zero()),
        }
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }
}

impl ProjPoint<f64> {
    /// Maps `±inf` to [`ProjPoint::Infinity`].
    pub fn from_f64(x: f64) -> Self {
        if x.is_infinite() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ProjPoint::Finite(x) => x,
            ProjPoint::Infinity => f64::INFINITY,
        }
    }
}

fn det<F: Clone + Num>(p: &ProjPoint<F>, q: &ProjPoint<F>) -> F {
    let (px, pw) = p.homogeneous();
    let (qx, qw) = q.homogeneous();
    px * qw - qx * pw
}

/// `Cr(a, b; c, d) = ((a−c)/(b−c)) / ((a−d)/(b−d))`, evaluated on
/// homogeneous coordinates so that `∞` needs no special cases.
pub fn cross_ratio<F: Clone + Num>(a: &ProjPoint<F>, b: &ProjPoint<F>, c: &ProjPoint<F>, d: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let num = det(a, c) * det(b, d);
    let den = det(b, c) * det(a, d);
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(GeomError::DegenerateCrossRatio),
        (_, true) => Ok(ProjPoint::Infinity),
        _ => Ok(ProjPoint::Finite(num / den)),
    }
}

/// `Cr(a, b; c, d)` for finite arguments.
pub fn cross_ratio_finite<F: Clone + Num>(a: F, b: F, c: F, d: F) -> Result<ProjPoint<F>> {
    use ProjPoint::Finite;
    cross_ratio(&Finite(a), &Finite(b), &Finite(c), &Finite(d))
}

/// `Cr(mL, mM; i, −i)`. Infinite slopes are vertical lines.
pub fn laguerre_cross_ratio(m_l: f64, m_m: f64) -> Result<Cx> {
    let lift = |m: f64| match ProjPoint::from_f64(m) {
        ProjPoint::Finite(x) => ProjPoint::Finite(Cx::new(x, 0.0)),
        ProjPoint::Infinity => ProjPoint::Infinity,
    };
    let i = ProjPoint::Finite(Cx::new(0.0, 1.0));
    let minus_i = ProjPoint::Finite(Cx::new(0.0, -1.0));
    match cross_ratio(&lift(m_l), &lift(m_m), &i, &minus_i)? {
        ProjPoint::Finite(z) => Ok(z),
        ProjPoint::Infinity => Err(GeomError::DivisionByZero),
    }
}

/// `(1/2i) log Cr(mL, mM; i, −i)` before discarding the imaginary part.
pub fn laguerre_phase(m_l: f64, m_m: f64) -> Result<Cx> {
    let log = cx_log(laguerre_cross_ratio(m_l, m_m)?)?;
    Ok(log / Cx::new(0.0, 2.0))
}

/// The Euclidean angle from `mM` to `mL`, in `(−π/2, π/2]`.
pub fn laguerre_angle(m_l: f64, m_m: f64) -> Result<f64> {
    Ok(laguerre_phase(m_l, m_m)?.re)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CkConfig<S> {
    t1: S,
    t2: S,
    lambda: S,
}

impl<S: Scalar> CkConfig<S> {
    /// Isotropic slopes `t1 ≠ t2` with `λ = 1`.
    pub fn new(t1: S, t2: S) -> Result<Self> {
        Self::with_lambda(t1, t2, S::one())
    }

    pub fn with_lambda(t1: S, t2: S, lambda: S) -> Result<Self> {
        if t1 == t2 {
            return Err(GeomError::InvalidParameter("isotropic slopes must be distinct"));
        }
        if lambda.is_zero() {
            return Err(GeomError::InvalidParameter("lambda must be nonzero"));
        }
        Ok(Self { t1, t2, lambda })
    }

    pub fn t1(&self) -> &S {
        &self.t1
    }

    pub fn t2(&self) -> &S {
        &self.t2
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn to_f64(&self) -> CkConfig<f64> {
        CkConfig {
            t1: self.t1.to_f64(),
            t2: self.t2.to_f64(),
            lambda: self.lambda.to_f64(),
        }
    }

    fn isotropic(&self) -> [ProjPoint<S>; 2] {
        [ProjPoint::Finite(self.t1.clone()), ProjPoint::Finite(self.t2.clone())]
    }

    /// `f(m) = (m − t1)/(m − t2)`, with `f(∞) = 1`. Its sign identifies the
    /// component of `m`, and `Cr(a, b; t1, t2) = f(a)/f(b)`.
    pub fn isotropic_coordinate(&self, m: &ProjPoint<S>) -> Result<S> {
        match m {
            ProjPoint::Infinity => Ok(S::one()),
            ProjPoint::Finite(x) => {
                if *x == self.t1 || *x == self.t2 {
                    return Err(GeomError::IsotropicDirection);
                }
                Ok((x.clone() - self.t1.clone()) / (x.clone() - self.t2.clone()))
            }
        }
    }

    /// `true` iff both slopes are non-isotropic and in the same component.
    pub fn same_component(&self, m1: &ProjPoint<S>, m2: &ProjPoint<S>) -> bool {
        match (self.isotropic_coordinate(m1), self.isotropic_coordinate(m2)) {
            (Ok(f1), Ok(f2)) => f1.is_positive() == f2.is_positive(),
            _ => false,
        }
    }
}

/// `Cr(m1, m2; t1, t2)`, which is finite and nonzero off the isotropic slopes.
pub fn ck_cross_ratio<S: Scalar>(m1: &ProjPoint<S>, m2: &ProjPoint<S>, cfg: &CkConfig<S>) -> Result<S> {
    let [t1, t2] = cfg.isotropic();
    if [m1, m2].iter().any(|m| **m == t1 || **m == t2) {
        return Err(GeomError::IsotropicDirection);
    }
    match cross_ratio(m1, m2, &t1, &t2)? {
        ProjPoint::Finite(v) => Ok(v),
        ProjPoint::Infinity => unreachable!("non-isotropic slopes give a finite cross ratio"),
    }
}

pub fn ck_angle_proj<S: Scalar>(m1: &ProjPoint<S>, m2: &ProjPoint<S>, cfg: &CkConfig<S>) -> Result<f64> {
    let cr = ck_cross_ratio(m1, m2, cfg)?;
    if !cr.is_positive() {
        return Err(GeomError::OutsidePositiveComponent);
    }
    Ok(cfg.lambda.to_f64() * cr.to_f64().ln())
}

/// `λ log Cr(m1, m2; t1, t2)`.
pub fn ck_angle<S: Scalar>(m1: &S, m2: &S, cfg: &CkConfig<S>) -> Result<f64> {
    ck_angle_proj(&ProjPoint::Finite(m1.clone()), &ProjPoint::Finite(m2.clone()), cfg)
}

/// The slope `M` in the component of `m1`, `m2` with
/// `Cr(m1, M; t1, t2) = Cr(M, m2; t1, t2)`.
///
/// In the coordinate `f` the condition reads `f(M)² = f(m1) f(m2)`; of its two
/// roots exactly one has the sign of the component.
pub fn ck_bisector(m1: &ProjPoint<f64>, m2: &ProjPoint<f64>, cfg: &CkConfig<f64>) -> Result<ProjPoint<f64>> {
    let f1 = cfg.isotropic_coordinate(m1)?;
    let f2 = cfg.isotropic_coordinate(m2)?;
    if f1 * f2 <= 0.0 {
        return Err(GeomError::OutsidePositiveComponent);
    }
    if m1 == m2 {
        return Ok(*m1);
    }
    let root = (f1 * f2).sqrt();
    let in_component: Vec<f64> = [root, -root].into_iter().filter(|r| r.signum() == f1.signum()).collect();
    let [f] = in_component[..] else {
        return Err(GeomError::BisectorSelectionFailed);
    };
    let (t1, t2) = (cfg.t1, cfg.t2);
    if f == 1.0 {
        return Ok(ProjPoint::Infinity);
    }
    Ok(ProjPoint::Finite((t1 - t2 * f) / (1.0 - f)))
}

/// `|∠(m1, M) − ∠(M, m2)|` for the bisector `M`.
pub fn bisector_residual(m1: &ProjPoint<f64>, m2: &ProjPoint<f64>, cfg: &CkConfig<f64>) -> Result<f64> {
    let mid = ck_bisector(m1, m2, cfg)?;
    Ok((ck_angle_proj(m1, &mid, cfg)? - ck_angle_proj(&mid, m2, cfg)?).abs())
}

/// Bisects `[m1, q]` repeatedly, starting from `q = m2`, and returns the worst
/// `|∠(m1, q_k) − 2^{−k} ∠(m1, m2)|` over `k = 1..=depth`.
pub fn dyadic_residual(m1: &ProjPoint<f64>, m2: &ProjPoint<f64>, cfg: &CkConfig<f64>, depth: u32) -> Result<f64> {
    let full = ck_angle_proj(m1, m2, cfg)?;
    let mut q = *m2;
    let mut worst = 0.0f64;
    for k in 1..=depth {
        q = ck_bisector(m1, &q, cfg)?;
        let r = (ck_angle_proj(m1, &q, cfg)? - full / f64::from(1u32 << k)).abs();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Residual tolerance for float-level axiom checks.
pub const AXIOM_FLOAT_TOL: f64 = 1e-12;
pub const DYADIC_TOL: f64 = 1e-10;
const DYADIC_DEPTH: u32 = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub worst_residual: f64,
}

impl AxiomCheck {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            worst_residual: 0.0,
        }
    }

    fn record(&mut self, exact_ok: bool, residual: f64, tol: f64) {
        self.checks += 1;
        self.worst_residual = self.worst_residual.max(residual);
        if !exact_ok || residual.partial_cmp(&tol).is_none_or(Ordering::is_gt) {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CkAxiomReport {
    pub samples: usize,
    /// Triples that are not entirely inside one component; excluded, not failed.
    pub rejected: usize,
    pub axioms: Vec<AxiomCheck>,
}

impl CkAxiomReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> usize {
        self.axioms.iter().map(|a| a.failures).sum()
    }

    pub fn worst_residual(&self) -> f64 {
        self.axioms.iter().map(|a| a.worst_residual).fold(0.0, f64::max)
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomCheck> {
        self.axioms.iter().find(|a| a.name == name)
    }
}

/// Runs A1–A5 on each slope triple. A1–A3 are checked exactly on cross
/// ratios and again after taking logs; A5 runs in floats.
pub fn ck_axiom_suite<S: Scalar>(cfg: &CkConfig<S>, triples: &[[S; 3]]) -> CkAxiomReport {
    let mut a1 = AxiomCheck::new("A1");
    let mut a2 = AxiomCheck::new("A2");
    let mut a3 = AxiomCheck::new("A3");
    let mut a4 = AxiomCheck::new("A4");
    let mut a5 = AxiomCheck::new("A5");
    let mut rejected = 0;
    let fcfg = cfg.to_f64();

    for [a, b, c] in triples {
        let [pa, pb, pc] = [a, b, c].map(|m| ProjPoint::Finite(m.clone()));
        if !(cfg.same_component(&pa, &pb) && cfg.same_component(&pb, &pc)) {
            rejected += 1;
            continue;
        }
        let cr = |x: &ProjPoint<S>, y: &ProjPoint<S>| ck_cross_ratio(x, y, cfg).expect("in-domain slopes");
        let ang = |x: &ProjPoint<S>, y: &ProjPoint<S>| ck_angle_proj(x, y, cfg).expect("in-domain slopes");

        let exact = (cr(&pa, &pb) * cr(&pb, &pa)).is_close(&S::one());
        a1.record(exact, (ang(&pa, &pb) + ang(&pb, &pa)).abs(), AXIOM_FLOAT_TOL);

        let exact = (cr(&pa, &pb) * cr(&pb, &pc)).is_close(&cr(&pa, &pc));
        let r = (ang(&pa, &pb) + ang(&pb, &pc) - ang(&pa, &pc)).abs();
        a2.record(exact, r, AXIOM_FLOAT_TOL);

        a3.record(cr(&pa, &pa).is_close(&S::one()) && ang(&pa, &pa) == 0.0, 0.0, 0.0);
        a3.record(a3_symbolic(a, b, cfg), 0.0, 0.0);

        // slopes are invariant under rescaling a direction vector
        let k = S::from_ratio(-7, 3);
        a4.record(((k.clone() * a.clone()) / k).is_close(a), 0.0, 0.0);

        let (fa, fc) = (ProjPoint::Finite(a.to_f64()), ProjPoint::Finite(c.to_f64()));
        match (bisector_residual(&fa, &fc, &fcfg), dyadic_residual(&fa, &fc, &fcfg, DYADIC_DEPTH)) {
            (Ok(r), Ok(d)) => {
                a5.record(true, r, AXIOM_FLOAT_TOL);
                a5.record(true, d, DYADIC_TOL);
            }
            _ => a5.record(false, f64::INFINITY, 0.0),
        }
    }

    CkAxiomReport {
        samples: triples.len(),
        rejected,
        axioms: vec![a1, a2, a3, a4, a5],
    }
}

/// With `Cr = N/D`, `N − D = (m1 − m2)(t1 − t2)`, so `Cr = 1` forces
/// `m1 = m2`.
pub fn a3_symbolic<S: Scalar>(m1: &S, m2: &S, cfg: &CkConfig<S>) -> bool {
    let (t1, t2) = (cfg.t1.clone(), cfg.t2.clone());
    let n = (m1.clone() - t1.clone()) * (m2.clone() - t2.clone());
    let d = (m2.clone() - t1.clone()) * (m1.clone() - t2.clone());
    let diff = (m1.clone() - m2.clone()) * (t1 - t2);
    (n.clone() - d.clone()).is_close(&diff) && ((n == d) == (m1 == m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn fin<F>(x: F) -> ProjPoint<F> {
        ProjPoint::Finite(x)
    }

    fn cfg22() -> CkConfig<f64> {
        CkConfig::new(2.0, -2.0).unwrap()
    }

    #[test]
    fn cross_ratio_examples() {
        let r = |n| fin(rat(n, 1));
        assert_eq!(cross_ratio(&r(3), &r(3), &r(1), &r(7)).unwrap(), fin(rat(1, 1)));
        let z = |re, im| fin(Cx::new(re, im));
        let v = cross_ratio(&z(1.0, 0.0), &z(0.0, 0.0), &z(0.0, 1.0), &z(0.0, -1.0)).unwrap();
        let v = *v.finite().unwrap();
        assert!((v - Cx::new(0.0, 1.0)).norm() < 1e-15);
        let x = cross_ratio(&r(1), &r(2), &r(5), &r(-3)).unwrap();
        let y = cross_ratio(&r(2), &r(1), &r(5), &r(-3)).unwrap();
        assert_eq!(x.finite().unwrap() * y.finite().unwrap(), rat(1, 1));
    }

    #[test]
    fn cross_ratio_infinity_and_degeneracy() {
        let r = |n| fin(rat(n, 1));
        // (a − c)/(b − c) once d goes to infinity
        let v = cross_ratio(&r(4), &r(2), &r(1), &ProjPoint::Infinity).unwrap();
        assert_eq!(v, fin(rat(3, 1)));
        assert_eq!(cross_ratio(&r(1), &r(2), &r(2), &r(3)).unwrap(), ProjPoint::Infinity);
        assert_eq!(cross_ratio(&r(1), &r(2), &r(1), &r(3)).unwrap(), fin(rat(0, 1)));
        let e = cross_ratio(&r(1), &r(1), &r(1), &r(3)).unwrap_err();
        assert_eq!(e.to_string(), "degenerate cross ratio");
    }

    #[test]
    fn laguerre_examples() {
        let cr = laguerre_cross_ratio(1.0, 0.0).unwrap();
        assert!((cr - Cx::new(0.0, 1.0)).norm() < 1e-15);
        assert!((laguerre_angle(1.0, 0.0).unwrap() - PI / 4.0).abs() < 1e-14);
        assert_eq!(laguerre_angle(0.7, 0.7).unwrap(), 0.0);
        assert!((laguerre_angle(0.0, 1.0).unwrap() + PI / 4.0).abs() < 1e-14);
        assert!(laguerre_phase(3.0, -2.0).unwrap().im.abs() < 1e-13);
        // a vertical line against a horizontal one
        assert!((laguerre_angle(f64::INFINITY, 0.0).unwrap() - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn ck_angle_examples() {
        let cfg = CkConfig::new(rat(2, 1), rat(-2, 1)).unwrap();
        assert_eq!(ck_angle(&rat(1, 1), &rat(1, 1), &cfg).unwrap(), 0.0);
        let v = ck_angle(&rat(1, 1), &rat(0, 1), &cfg).unwrap();
        assert!((v - (1.0f64 / 3.0).ln()).abs() < 1e-15);
        assert_eq!(ck_angle(&rat(0, 1), &rat(1, 1), &cfg).unwrap(), -v);
        assert_eq!(ck_angle(&rat(2, 1), &rat(0, 1), &cfg).unwrap_err(), GeomError::IsotropicDirection);
        let e = ck_angle(&rat(0, 1), &rat(5, 1), &cfg).unwrap_err();
        assert_eq!(e.to_string(), "outside positive component");
    }

    #[test]
    fn ck_angle_lambda_scales() {
        let c1 = CkConfig::new(rat(2, 1), rat(-2, 1)).unwrap();
        let c3 = CkConfig::with_lambda(rat(2, 1), rat(-2, 1), rat(3, 1)).unwrap();
        let a = ck_angle(&rat(1, 1), &rat(0, 1), &c1).unwrap();
        assert!((ck_angle(&rat(1, 1), &rat(0, 1), &c3).unwrap() - 3.0 * a).abs() < 1e-15);
        assert!(CkConfig::new(rat(1, 1), rat(1, 1)).is_err());
        assert!(CkConfig::with_lambda(rat(1, 1), rat(2, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn bisector_examples() {
        let cfg = cfg22();
        assert_eq!(ck_bisector(&fin(0.5), &fin(0.5), &cfg).unwrap(), fin(0.5));
        let m = *ck_bisector(&fin(0.0), &fin(1.0), &cfg).unwrap().finite().unwrap();
        assert!(m > -2.0 && m < 2.0);
        // f(M)² = f(0)f(1) = (−1)(−1/3) selects f(M) = −1/√3
        let f = -1.0 / 3f64.sqrt();
        assert!((m - (2.0 + 2.0 * f) / (1.0 - f)).abs() < 1e-15);
        assert!(bisector_residual(&fin(0.0), &fin(1.0), &cfg).unwrap() < 1e-12);
        assert!(dyadic_residual(&fin(0.0), &fin(1.0), &cfg, 2).unwrap() < 1e-10);
        let e = ck_bisector(&fin(0.0), &fin(3.0), &cfg).unwrap_err();
        assert_eq!(e, GeomError::OutsidePositiveComponent);
    }

    #[test]
    fn bisector_through_infinity() {
        let cfg = cfg22();
        // f(3) = 1/5 and f(−3) = 5, so the midpoint has f = 1: the vertical slope
        assert_eq!(ck_bisector(&fin(3.0), &fin(-3.0), &cfg).unwrap(), ProjPoint::Infinity);
        assert!(bisector_residual(&fin(3.0), &fin(-3.0), &cfg).unwrap() < 1e-12);
        assert!(dyadic_residual(&fin(3.0), &fin(-3.0), &cfg, 4).unwrap() < 1e-10);
    }

    #[test]
    fn axiom_suite_edges() {
        let cfg = CkConfig::new(rat(2, 1), rat(-2, 1)).unwrap();
        let empty = ck_axiom_suite::<Rat>(&cfg, &[]);
        assert!(empty.passed());
        assert_eq!((empty.samples, empty.rejected), (0, 0));
        let straddling = [[rat(0, 1), rat(1, 1), rat(3, 1)], [rat(1, 1), rat(2, 1), rat(0, 1)]];
        let r = ck_axiom_suite(&cfg, &straddling);
        assert_eq!(r.rejected, 2);
        assert!(r.passed());
        let good = [[rat(0, 1), rat(1, 2), rat(-3, 2)], [rat(3, 1), rat(-5, 1), rat(10, 1)]];
        let r = ck_axiom_suite(&cfg, &good);
        assert_eq!(r.rejected, 0);
        assert!(r.passed(), "{r:?}");
    }

    fn slope() -> impl Strategy<Value = Rat> {
        (-60i64..60, 1i64..8).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn laguerre_matches_arctan(ml in -10.0f64..10.0, mm in -10.0f64..10.0) {
            let cr = laguerre_cross_ratio(ml, mm).unwrap();
            let phi = ml.atan() - mm.atan();
            prop_assert!((cr - Cx::from_polar(1.0, 2.0 * phi)).norm() < 1e-12);
        }

        #[test]
        fn cross_ratio_chain_is_exact(a in slope(), b in slope(), c in slope()) {
            let cfg = CkConfig::new(rat(3, 1), rat(-1, 2)).unwrap();
            let [pa, pb, pc] = [a, b, c].map(ProjPoint::Finite);
            let cr = |x: &ProjPoint<Rat>, y: &ProjPoint<Rat>| ck_cross_ratio(x, y, &cfg);
            if let (Ok(ab), Ok(bc), Ok(ac), Ok(ba)) = (cr(&pa, &pb), cr(&pb, &pc), cr(&pa, &pc), cr(&pb, &pa)) {
                prop_assert_eq!(ab.clone() * bc, ac);
                prop_assert_eq!(ab * ba, rat(1, 1));
            }
        }

        #[test]
        fn a3_holds_symbolically(a in slope(), b in slope()) {
            let cfg = CkConfig::new(rat(3, 1), rat(-1, 2)).unwrap();
            prop_assert!(a3_symbolic(&a, &b, &cfg));
        }

        #[test]
        fn bisection_halves(a in -1.9f64..1.9, b in -1.9f64..1.9) {
            let cfg = cfg22();
            prop_assert!(bisector_residual(&fin(a), &fin(b), &cfg).unwrap() < 1e-12);
            prop_assert!(dyadic_residual(&fin(a), &fin(b), &cfg, 3).unwrap() < 1e-10);
        }
    }
}
