mod args;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use da_geom::cayley_klein::{
    ck_angle, ck_angle_limit_probe, ck_angle_proj, ck_bisector, ck_cross_ratio, ck_distance_chord, ck_distance_limit_probe,
    default_schedule, laguerre_cross_ratio, laguerre_phase, AngleLimitOptions, CkConfig, IsotropicApex, ProjPoint,
};
use da_geom::da_core::{interior_angles, triangle_equality_check, DaTriangle, Vertex};
use da_geom::error::GeomError;
use da_geom::exec::Exec;
use da_geom::focal_power::{
    focal_locus, geometric_side, parabolic_power, radical_axis, radical_center, secant_power_product, Parabola, Position,
};
use da_geom::inner_product::{da_inner, parallelogram_check, positive_cyclic_check, DaVector};
use da_geom::parabolic_trig::{
    alternating_product, brocard, brocard_identities, da_area, first_cosine_law_check, second_cosine_law_check, vector_interior_angle,
};
use da_geom::scalar::{Rat, Scalar};
use da_geom::suites::{run_all, run_suite};

use args::{Apex, CkArgs, CkCommand, Cli, Command, Pair, RatList, SuiteChoice, VerifyArgs};
use output::{emit_record, emit_table, line_json, point_json, r};

enum CliError {
    Domain(GeomError),
    Usage(String),
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<ExitCode, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Focal(a) => focal(&a.focus, &a.directrix, a.xs, a.point),
        Command::Power(a) => power(&a.parabola, &a.point, &a.slopes),
        Command::Radical(a) => radical(&a.parabolas),
        Command::Triangle(a) => triangle(&a.a, &a.b, &a.c, a.kappa.as_ref()),
        Command::Inner(a) => inner(&a.u, &a.v),
        Command::Brocard(a) => brocard_cmd(&a.kappa, &a.xs),
        Command::Ck(a) => ck(a),
        Command::Verify(a) => verify(&a),
    }
}

fn print_json(v: &Value) -> CliResult {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn parabola(p: &[Rat; 3]) -> Result<Parabola<Rat>, GeomError> {
    Parabola::new(p[0].clone(), p[1].clone(), p[2].clone())
}

fn parabola_json(c: &Parabola<Rat>) -> Value {
    json!({ "kappa": r(c.kappa()), "h": r(c.h()), "k": r(c.k()) })
}

fn position_name(p: Position) -> &'static str {
    match p {
        Position::Interior => "interior",
        Position::OnCurve => "on_curve",
        Position::Exterior => "exterior",
    }
}

fn focal(focus: &Pair, directrix: &Rat, xs: Option<RatList>, point: Option<Rat>) -> CliResult {
    let f = focus.point();
    let c = Parabola::from_focus_directrix(&f, directrix)?;
    let mut out = json!({
        "focus": point_json(&f),
        "directrix": r(directrix),
        "kappa": r(c.kappa()),
        "vertex": point_json(&c.vertex()),
    });
    if let Some(x) = point {
        let [p] = <[_; 1]>::try_from(focal_locus(&f, directrix, &[x])?).expect("one input, one point");
        out["point"] = point_json(&p);
    } else {
        let xs = xs.map(|l| l.0).unwrap_or_default();
        let pts = focal_locus(&f, directrix, &xs)?;
        out["points"] = pts.iter().map(point_json).collect();
    }
    print_json(&out)
}

fn power(p: &[Rat; 3], point: &Pair, slopes: &[Rat]) -> CliResult {
    let c = parabola(p)?;
    let pt = point.point();
    let pw = parabolic_power(&c, &pt);
    let mut secants = Vec::new();
    let mut agree = true;
    for m in slopes {
        let prod = secant_power_product(&c, &pt, m)?;
        agree &= prod == pw.value;
        secants.push(json!({ "slope": r(m), "product": r(&prod) }));
    }
    print_json(&json!({
        "parabola": parabola_json(&c),
        "point": point_json(&pt),
        "power": r(&pw.value),
        "position": position_name(pw.position),
        "geometric_side": position_name(geometric_side(&c, &pt)),
        "secants": secants,
        "secants_agree": agree,
    }))
}

fn radical(ps: &[[Rat; 3]]) -> CliResult {
    let cs = ps.iter().map(parabola).collect::<Result<Vec<_>, _>>()?;
    match cs.as_slice() {
        [c1, c2] => print_json(&json!({ "axis": line_json(&radical_axis(c1, c2)?) })),
        [c1, c2, c3] => {
            let center = radical_center(c1, c2, c3)?;
            let axes = [(c1, c2), (c2, c3), (c3, c1)]
                .iter()
                .map(|(a, b)| radical_axis(a, b).map(|l| line_json(&l)))
                .collect::<Result<Vec<_>, _>>()?;
            let powers: Vec<Value> = cs.iter().map(|c| r(&parabolic_power(c, &center).value)).collect();
            print_json(&json!({ "axes": axes, "center": point_json(&center), "powers": powers }))
        }
        _ => Err(CliError::Usage("give two or three --parabola values".into())),
    }
}

fn vertex_name(v: Vertex) -> &'static str {
    match v {
        Vertex::A => "A",
        Vertex::B => "B",
        Vertex::C => "C",
    }
}

fn triangle(a: &Pair, b: &Pair, c: &Pair, kappa: Option<&Rat>) -> CliResult {
    let t = DaTriangle::new(a.point(), b.point(), c.point())?;
    let (sa, sb, sc) = t.sides();
    let [aa, ab, ac] = interior_angles(&t);
    let sum = aa.clone() + ab.clone() + ac.clone();
    let mut out = json!({
        "sides": { "a": r(&sa), "b": r(&sb), "c": r(&sc) },
        "angles": { "A": r(&aa), "B": r(&ab), "C": r(&ac) },
        "middle_vertex": vertex_name(t.middle_vertex()),
        "checks": {
            "angle_sum_zero": sum == Rat::from_i64(0),
            "triangle_equality": triangle_equality_check(&t),
            "first_cosine_law": first_cosine_law_check(&t),
            "second_cosine_law": second_cosine_law_check(&t),
            "parallelogram": parallelogram_check(&t),
            "positive_cyclic": positive_cyclic_check(&t),
        },
    });
    if let Some(k) = kappa {
        out["area"] = r(&da_area(&t, k)?);
    }
    print_json(&out)
}

fn inner(u: &Pair, v: &Pair) -> CliResult {
    let u = DaVector::new(u.0.clone(), u.1.clone());
    let v = DaVector::new(v.0.clone(), v.1.clone());
    let alt = alternating_product(&u, &v)?;
    let angle = vector_interior_angle(&u, &v).map(|a| r(&a)).unwrap_or(Value::Null);
    print_json(&json!({
        "inner": r(&da_inner(&u, &v)),
        "norms": [r(&u.norm()), r(&v.norm())],
        "alternating": r(&alt),
        "angle": angle,
    }))
}

fn brocard_cmd(kappa: &Rat, xs: &[Rat; 3]) -> CliResult {
    let t = DaTriangle::on_parabola(kappa, xs[0].clone(), xs[1].clone(), xs[2].clone())?;
    let b = brocard(&t, kappa)?;
    let ids = brocard_identities(&t, kappa)?;
    print_json(&json!({
        "u": r(&b.u),
        "omega1": r(&b.omega1),
        "omega2": r(&b.omega2),
        "p1": point_json(&b.p1),
        "p2": point_json(&b.p2),
        "area": r(&da_area(&t, kappa)?),
        "identities": serde_json::to_value(&ids).expect("serializable"),
    }))
}

fn schedule_of(list: Option<RatList>) -> Vec<f64> {
    match list {
        Some(l) => l.0.iter().map(Scalar::to_f64).collect(),
        None => default_schedule(),
    }
}

fn ck(a: CkArgs) -> CliResult {
    let fmt = a.format;
    match a.command {
        CkCommand::Angle { m1, m2, t1, t2, lambda } => {
            let cfg = CkConfig::with_lambda(t1, t2, lambda)?;
            let angle = ck_angle(&m1, &m2, &cfg)?;
            let cr = ck_cross_ratio(&ProjPoint::Finite(m1), &ProjPoint::Finite(m2), &cfg)?;
            emit_record(fmt, vec![("cross_ratio", r(&cr)), ("angle", json!(angle))])
        }
        CkCommand::Distance { kappa, xa, xb, t } => {
            let (d, ci) = ck_distance_chord(kappa.to_f64(), t.to_f64(), xa.to_f64(), xb.to_f64())?;
            emit_record(
                fmt,
                vec![
                    ("d", json!(d)),
                    ("b", json!(ci.b)),
                    ("delta", json!(ci.delta)),
                    ("x_u", json!(ci.x_u)),
                    ("x_v", json!(ci.x_v)),
                ],
            )
        }
        CkCommand::LimitAngle {
            m1,
            m2,
            kappa,
            apex,
            include_horizontal,
            schedule,
        } => {
            let apex = match apex {
                Apex::InverseSquare => IsotropicApex::InverseSquare,
                Apex::Inverse => IsotropicApex::Inverse,
            };
            let opts = AngleLimitOptions { apex, include_horizontal };
            let schedule = schedule_of(schedule);
            let table = ck_angle_limit_probe(m1.to_f64(), m2.to_f64(), kappa.to_f64(), &schedule, &opts, Exec::default())?;
            emit_table(fmt, &table, None)
        }
        CkCommand::LimitDistance { kappa, xa, xb, schedule } => {
            let schedule = schedule_of(schedule);
            let probe = ck_distance_limit_probe(kappa.to_f64(), xa.to_f64(), xb.to_f64(), &schedule, Exec::default())?;
            emit_table(fmt, &probe.table, Some(&probe))
        }
        CkCommand::Bisector { m1, m2, t1, t2 } => {
            let cfg = CkConfig::new(t1.to_f64(), t2.to_f64())?;
            let (p1, p2) = (ProjPoint::Finite(m1.to_f64()), ProjPoint::Finite(m2.to_f64()));
            let mid = ck_bisector(&p1, &p2, &cfg)?;
            let halves = [ck_angle_proj(&p1, &mid, &cfg)?, ck_angle_proj(&mid, &p2, &cfg)?];
            let slope = mid.finite().map_or(Value::Null, |m| json!(m));
            emit_record(
                fmt,
                vec![
                    ("bisector", slope),
                    ("vertical", json!(mid == ProjPoint::Infinity)),
                    ("half_angle_1", json!(halves[0])),
                    ("half_angle_2", json!(halves[1])),
                ],
            )
        }
        CkCommand::Laguerre { m1, m2 } => {
            let (ml, mm) = (m1.to_f64(), m2.to_f64());
            let cr = laguerre_cross_ratio(ml, mm)?;
            let phase = laguerre_phase(ml, mm)?;
            emit_record(
                fmt,
                vec![
                    ("phi", json!(phase.re)),
                    ("imaginary_residue", json!(phase.im)),
                    ("cross_ratio_re", json!(cr.re)),
                    ("cross_ratio_im", json!(cr.im)),
                ],
            )
        }
    }
}

fn verify(a: &VerifyArgs) -> CliResult {
    let exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
    let reports = match a.suite {
        SuiteChoice::All => run_all(a.cases, a.seed, exec),
        SuiteChoice::One(s) => vec![run_suite(s, a.cases, a.seed, exec)],
    };
    for rep in &reports {
        eprintln!(
            "{:<14} {:>6} cases {:>4} failures  worst residual {:.2e}  {:.1?}  {}",
            rep.suite,
            rep.cases,
            rep.failures,
            rep.worst_residual,
            rep.elapsed,
            if rep.passed() { "ok" } else { "FAILED" }
        );
    }
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    print_json(&json!({
        "seed": a.seed,
        "cases": a.cases,
        "failures": failures,
        "reports": serde_json::to_value(&reports).expect("serializable"),
    }))?;
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
