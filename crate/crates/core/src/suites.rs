//! Randomized verification suites.
//!
//! Case `i` of a suite draws from its own ChaCha stream, so a report depends
//! only on `(suite, cases, seed)` and not on scheduling. Aggregation uses
//! counts and a maximum, which are order-independent.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley_klein::{ck_angle_limit_probe, ck_axiom_suite, ck_distance_limit_probe, default_schedule, AngleLimitOptions, CkConfig};
use crate::da_core::{interior_angles, triangle_equality_check, DaTriangle, Point};
use crate::exec::Exec;
use crate::focal_power::{
    da_ptolemy_check, focal_function, geometric_side, parabolic_power, radical_axis, secant_power_product, solve_focal, FocalFrame,
    Parabola,
};
use crate::inner_product::{
    cyclic_inner_identity, parallelogram_check, point_on_segment, positive_cyclic_check, positive_cyclic_residual, stewart_check,
    stewart_via_power,
};
use crate::parabolic_trig::{brocard, brocard_angle_by_intersection, brocard_identities, first_cosine_law_check, second_cosine_law_check};
use crate::scalar::{rat, Rat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Focal,
    Power,
    Radical,
    Parallelogram,
    Stewart,
    Trig,
    Brocard,
    CkAxioms,
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Focal,
        Suite::Power,
        Suite::Radical,
        Suite::Parallelogram,
        Suite::Stewart,
        Suite::Trig,
        Suite::Brocard,
        Suite::CkAxioms,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Focal => "focal",
            Suite::Power => "power",
            Suite::Radical => "radical",
            Suite::Parallelogram => "parallelogram",
            Suite::Stewart => "stewart",
            Suite::Trig => "trig",
            Suite::Brocard => "brocard",
            Suite::CkAxioms => "ck-axioms",
            Suite::Limits => "limits",
        }
    }

    fn salt(self) -> u64 {
        let idx = Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64;
        (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }

    fn case(self, rng: &mut ChaCha8Rng) -> CaseOutcome {
        match self {
            Suite::Focal => focal_case(rng, 50),
            Suite::Power => power_case(rng, 10),
            Suite::Radical => radical_case(rng),
            Suite::Parallelogram => parallelogram_case(rng),
            Suite::Stewart => stewart_case(rng),
            Suite::Trig => trig_case(rng),
            Suite::Brocard => brocard_case(rng),
            Suite::CkAxioms => ck_axioms_case(rng),
            Suite::Limits => limits_case(rng),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseOutcome {
    pub ok: bool,
    /// Float-level residual; zero for exact checks.
    pub residual: f64,
}

impl CaseOutcome {
    pub fn exact(ok: bool) -> Self {
        Self { ok, residual: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub worst_residual: f64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn case_rng(seed: u64, suite: Suite, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite.salt());
    rng.set_stream(case as u64);
    rng
}

pub fn run_suite(suite: Suite, cases: usize, seed: u64, exec: Exec) -> RunReport {
    let start = Instant::now();
    let outcomes = exec.map_indices(cases, |i| suite.case(&mut case_rng(seed, suite, i)));
    let failures = outcomes.iter().filter(|o| !o.ok).count();
    let worst_residual = outcomes.iter().map(|o| o.residual).fold(0.0, f64::max);
    RunReport {
        suite: suite.name().to_string(),
        cases,
        failures,
        worst_residual,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(cases: usize, seed: u64, exec: Exec) -> Vec<RunReport> {
    Suite::ALL.into_iter().map(|s| run_suite(s, cases, seed, exec)).collect()
}

pub fn random_rat(rng: &mut impl Rng, num: i64, den: i64) -> Rat {
    rat(rng.random_range(-num..=num), rng.random_range(1..=den))
}

pub fn random_nonzero_rat(rng: &mut impl Rng, num: i64, den: i64) -> Rat {
    loop {
        let r = random_rat(rng, num, den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_point(rng: &mut impl Rng) -> Point<Rat> {
    Point::new(random_rat(rng, 40, 6), random_rat(rng, 40, 6))
}

pub fn random_triangle(rng: &mut impl Rng) -> DaTriangle<Rat> {
    loop {
        if let Ok(t) = DaTriangle::new(random_point(rng), random_point(rng), random_point(rng)) {
            return t;
        }
    }
}

/// `n` distinct abscissae in increasing order.
pub fn random_sorted_xs<const N: usize>(rng: &mut impl Rng) -> [Rat; N] {
    loop {
        let mut xs: [Rat; N] = std::array::from_fn(|_| random_rat(rng, 30, 5));
        xs.sort();
        if xs.windows(2).all(|w| w[0] < w[1]) {
            return xs;
        }
    }
}

/// A triangle inscribed in `y = κx²`, `κ > 0`, with `x_A < x_B < x_C`.
pub fn random_inscribed(rng: &mut impl Rng) -> (Rat, DaTriangle<Rat>) {
    let kappa = rat(rng.random_range(1..=12), rng.random_range(1..=5));
    let [a, b, c] = random_sorted_xs::<3>(rng);
    let t = DaTriangle::on_parabola(&kappa, a, b, c).expect("distinct abscissae on a parabola");
    (kappa, t)
}

pub fn random_parabola(rng: &mut impl Rng) -> Parabola<Rat> {
    Parabola::new(random_nonzero_rat(rng, 12, 5), random_rat(rng, 20, 4), random_rat(rng, 20, 4)).expect("nonzero kappa")
}

/// Solves the focal equation for a random focus, directrix and base point,
/// then sweeps `samples` base points along the directrix.
pub fn focal_case(rng: &mut impl Rng, samples: usize) -> CaseOutcome {
    let focus = random_point(rng);
    let directrix = loop {
        let d = random_rat(rng, 40, 6);
        if d != focus.y {
            break d;
        }
    };
    let target = Parabola::from_focus_directrix(&focus, &directrix).expect("focus off the directrix");
    let mut ok = true;
    for _ in 0..samples.max(1) {
        let x = loop {
            let x = random_rat(rng, 60, 7);
            if x != focus.x {
                break x;
            }
        };
        let frame = FocalFrame::new(focus.clone(), Point::new(x, directrix.clone())).expect("valid frame");
        let p = solve_focal(&frame);
        let four_qy = rat(4, 1) * frame.q_hat().clone() * frame.y_hat(&p);
        ok &= focal_function(&frame, &p) == Ok(rat(0, 1));
        ok &= four_qy == frame.x_hat().sq();
        ok &= target.contains(&p);
    }
    CaseOutcome::exact(ok)
}

/// Secant products through a random point, for `slopes` secants aimed at
/// random points of the curve plus extra random slopes that happen to cut it.
pub fn power_case(rng: &mut impl Rng, slopes: usize) -> CaseOutcome {
    let c = random_parabola(rng);
    let p = random_point(rng);
    let power = parabolic_power(&c, &p);
    let mut products = Vec::new();
    while products.len() < slopes {
        let x = random_rat(rng, 40, 6);
        if x == p.x {
            continue;
        }
        let q = c.point_at(x.clone());
        let m = (q.y - p.y.clone()) / (x - p.x.clone());
        products.push(secant_power_product(&c, &p, &m).expect("secant through a curve point"));
    }
    for _ in 0..slopes {
        if let Ok(prod) = secant_power_product(&c, &p, &random_rat(rng, 60, 5)) {
            products.push(prod);
        }
    }
    let ok = products.iter().all(|x| *x == power.value) && power.position == geometric_side(&c, &p);
    CaseOutcome::exact(ok)
}

/// Three pairwise-crossing parabolas whose axes are not all parallel: the
/// axes must meet in one point with equal powers there.
pub fn radical_case(rng: &mut impl Rng) -> CaseOutcome {
    loop {
        let cs = [random_parabola(rng), random_parabola(rng), random_parabola(rng)];
        let axes = [(0, 1), (1, 2), (2, 0)].map(|(i, j)| radical_axis(&cs[i], &cs[j]));
        let [Ok(l12), Ok(l23), Ok(l31)] = axes else { continue };
        let Some(center) = l12.intersect(&l23) else { continue };
        let powers = cs.each_ref().map(|c| parabolic_power(c, &center).value);
        let ok = l31.contains(&center) && powers[0] == powers[1] && powers[1] == powers[2];
        return CaseOutcome::exact(ok);
    }
}

pub fn parallelogram_case(rng: &mut impl Rng) -> CaseOutcome {
    let t = random_triangle(rng);
    let (lhs, rhs) = cyclic_inner_identity(&t);
    let ok = parallelogram_check(&t) && lhs == rhs && positive_cyclic_check(&t);
    let (a, b, c) = t.sides();
    let scale = (a.sq() + b.sq() + c.sq()).to_f64();
    CaseOutcome {
        ok,
        residual: positive_cyclic_residual(&t) / scale,
    }
}

/// Stewart in proof form, the circumparabola route, and Ptolemy.
pub fn stewart_case(rng: &mut impl Rng) -> CaseOutcome {
    let t = random_triangle(rng);
    let (xa, xb) = (t.a().x.clone(), t.b().x.clone());
    let foot = loop {
        let w = rat(rng.random_range(1..=99), 100);
        let x = xa.clone() + w * (xb.clone() - xa.clone());
        if x != t.c().x {
            break point_on_segment(t.a(), t.b(), x).expect("strictly inside AB");
        }
    };
    let (lhs, rhs) = stewart_check(&t, &foot).expect("foot inside AB");
    let via = stewart_via_power(&t, &foot).expect("non-singular cevian");
    let mut ok = lhs == rhs && via.lhs == lhs && via.rhs == rhs && via.power_holds && via.similarities_hold;

    let c = random_parabola(rng);
    ok &= da_ptolemy_check(&random_sorted_xs::<4>(rng), &c) == Ok(true);
    CaseOutcome::exact(ok)
}

pub fn trig_case(rng: &mut impl Rng) -> CaseOutcome {
    let t = random_triangle(rng);
    let angles = interior_angles(&t);
    let sum = angles.iter().fold(rat(0, 1), |acc, a| acc + a);
    let negatives = angles.iter().filter(|a| a.is_negative()).count();
    let ok = first_cosine_law_check(&t) && second_cosine_law_check(&t) && sum.is_zero() && negatives == 1 && triangle_equality_check(&t);
    CaseOutcome::exact(ok)
}

/// The line construction, the closed form for `u`, and the three identities.
pub fn brocard_case(rng: &mut impl Rng) -> CaseOutcome {
    let (kappa, t) = random_inscribed(rng);
    let Ok(res) = brocard(&t, &kappa) else {
        return CaseOutcome::exact(false);
    };
    let Ok(ids) = brocard_identities(&t, &kappa) else {
        return CaseOutcome::exact(false);
    };
    let ok = brocard_angle_by_intersection(&t) == res.omega1
        && res.omega1 == kappa * res.u.clone()
        && res.omega1.is_positive()
        && res.omega2 == -res.omega1.clone()
        && ids.all_exact()
        && ids.sinp_residual < 1e-12;
    CaseOutcome {
        ok,
        residual: ids.sinp_residual,
    }
}

/// A random rational configuration and one slope triple inside a single
/// component, chosen by a coin flip.
pub fn ck_axioms_case(rng: &mut impl Rng) -> CaseOutcome {
    let (t1, t2) = loop {
        let (a, b) = (random_rat(rng, 8, 3), random_rat(rng, 8, 3));
        if a != b {
            break if a < b { (a, b) } else { (b, a) };
        }
    };
    let cfg = CkConfig::new(t1.clone(), t2.clone()).expect("distinct");
    let inside = rng.random_bool(0.5);
    let mut slope = || loop {
        let m = if inside {
            let w = rat(rng.random_range(1..=999), 1000);
            t1.clone() + w * (t2.clone() - t1.clone())
        } else {
            let off = rat(rng.random_range(1..=400), rng.random_range(1..=40));
            if rng.random_bool(0.5) {
                t2.clone() + off
            } else {
                t1.clone() - off
            }
        };
        if m != t1 && m != t2 {
            break m;
        }
    };
    let triple = [slope(), slope(), slope()];
    let report = ck_axiom_suite(&cfg, &[triple]);
    CaseOutcome {
        ok: report.passed() && report.rejected == 0,
        residual: report.worst_residual(),
    }
}

/// Order of the angle limit and the linear decay of `α_t` for a random
/// instance. The residual is the worst `|ratio − ¼|`.
pub fn limits_case(rng: &mut impl Rng) -> CaseOutcome {
    let schedule = &default_schedule()[2..10];
    let (m1, m2) = loop {
        let m1 = random_nonzero_rat(rng, 20, 4).to_f64();
        let m2 = random_nonzero_rat(rng, 20, 4).to_f64();
        if (m1.powi(3) - m2.powi(3)).abs() >= 0.5 {
            break (m1, m2);
        }
    };
    let Ok(angle) = ck_angle_limit_probe(m1, m2, 1.0, schedule, &AngleLimitOptions::default(), Exec::Sequential) else {
        return CaseOutcome::exact(false);
    };
    let ratios: Vec<f64> = angle.ratios().collect();
    let mut ok = ratios.len() >= 3 && ratios.iter().all(|r| (0.2..=0.32).contains(r));
    let residual = ratios.iter().map(|r| (r - 0.25).abs()).fold(0.0, f64::max);

    let b = f64::from(rng.random_range(2..=24u32)) / 4.0;
    ok &= distance_checks(1.0, b);
    CaseOutcome { ok, residual }
}

/// `α_t` halves with `t` to within 10%, and `d_t − log(1/t) − log κ` is
/// within `1e−3` of `2 log|b|` at `t = 1e−6`.
pub fn distance_checks(kappa: f64, b: f64) -> bool {
    let schedule: Vec<f64> = (0..8).map(|k| 1e-3 * 0.5f64.powi(k)).chain([1e-6]).collect();
    let Ok(probe) = ck_distance_limit_probe(kappa, 0.0, b, &schedule, Exec::Sequential) else {
        return false;
    };
    let linear = probe.rows.windows(2).all(|w| {
        let t_ratio = w[1].t / w[0].t;
        ((w[1].alpha_t / w[0].alpha_t) / t_ratio - 1.0).abs() < 0.1
    });
    let final_ok = probe.table.last().is_some_and(|r| r.t == 1e-6 && r.error < 1e-3);
    linear && final_ok && probe.table.skipped.is_empty()
}
