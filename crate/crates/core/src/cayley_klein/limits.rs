//! The family of absolutes `Q_t : y = κx² + t` and the behaviour of the CK
//! angle and distance as `t → 0⁺`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::exec::Exec;
use crate::scalar::Scalar;

/// Where the two isotropic tangents to `Q_t` meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotropicApex {
    /// `(0, −1/t²)`.
    #[default]
    InverseSquare,
    /// `(0, −1/t)`.
    Inverse,
}

impl IsotropicApex {
    /// `c` with the apex at `(0, −c)`.
    fn depth(self, t: f64) -> f64 {
        match self {
            IsotropicApex::InverseSquare => 1.0 / (t * t),
            IsotropicApex::Inverse => 1.0 / t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotropicData {
    pub kappa: f64,
    pub t: f64,
    /// Tangent slopes are `±s`.
    pub s: f64,
    pub u: f64,
    pub apex: IsotropicApex,
}

impl IsotropicData {
    /// Relative discriminant of `κx² − sx + (t + c) = 0`; zero at tangency.
    pub fn tangency_residual(&self) -> f64 {
        let c = self.apex.depth(self.t);
        (self.s * self.s - 4.0 * self.kappa * (self.t + c)) / (self.s * self.s)
    }
}

pub fn isotropic_slopes(kappa: f64, t: f64) -> Result<IsotropicData> {
    isotropic_slopes_with(kappa, t, IsotropicApex::default())
}

/// `s = 2√(κ(t + c))`, the slopes of the tangents from the apex to `Q_t`.
pub fn isotropic_slopes_with(kappa: f64, t: f64, apex: IsotropicApex) -> Result<IsotropicData> {
    if t == 0.0 {
        return Err(GeomError::InvalidParameter("t must be nonzero"));
    }
    let radicand = kappa * (t + apex.depth(t));
    if radicand.partial_cmp(&0.0) != Some(Ordering::Greater) || !radicand.is_finite() {
        return Err(GeomError::NoRealIsotropicPair);
    }
    let s = 2.0 * radicand.sqrt();
    Ok(IsotropicData {
        kappa,
        t,
        s,
        u: 1.0 / s,
        apex,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AngleLimitOptions {
    pub apex: IsotropicApex,
    /// Admit horizontal slopes through the continuous extension.
    pub include_horizontal: bool,
}

/// `atanh(x) − x`, accurate for tiny `x`.
fn atanh_minus_identity(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        x * x2 * (1.0 / 3.0 + x2 * (1.0 / 5.0 + x2 * (1.0 / 7.0 + x2 / 9.0)))
    } else {
        x.atanh() - x
    }
}

fn check_slopes(m1: f64, m2: f64, u: f64, opts: &AngleLimitOptions) -> Result<()> {
    if !opts.include_horizontal && (m1 == 0.0 || m2 == 0.0) {
        return Err(GeomError::ZeroSlope);
    }
    for m in [m1, m2] {
        let x = (m * u).abs();
        if x == 1.0 {
            return Err(GeomError::IsotropicDirection);
        }
        if x > 1.0 {
            return Err(GeomError::OutsidePositiveComponent);
        }
    }
    Ok(())
}

/// `value − (m1 − m2)`, computed without cancellation.
///
/// `log Cr(1/m1, 1/m2; u, −u) = 2 atanh(m2 u) − 2 atanh(m1 u)`, so after
/// dividing by `−2u` the angle is `(atanh(m1 u) − atanh(m2 u))/u`.
pub fn parabolic_angle_deviation(m1: f64, m2: f64, kappa: f64, t: f64, opts: &AngleLimitOptions) -> Result<f64> {
    let u = isotropic_slopes_with(kappa, t, opts.apex)?.u;
    check_slopes(m1, m2, u, opts)?;
    Ok((atanh_minus_identity(m1 * u) - atanh_minus_identity(m2 * u)) / u)
}

/// `(1/α(t)) log Cr(1/m1, 1/m2; u, −u)` with `α(t) = −2u(t)`.
pub fn parabolic_angle_normalized(m1: f64, m2: f64, kappa: f64, t: f64) -> Result<f64> {
    parabolic_angle_normalized_with(m1, m2, kappa, t, &AngleLimitOptions::default())
}

pub fn parabolic_angle_normalized_with(m1: f64, m2: f64, kappa: f64, t: f64, opts: &AngleLimitOptions) -> Result<f64> {
    let dev = parabolic_angle_deviation(m1, m2, kappa, t, opts)?;
    Ok((m1 - m2) + dev)
}

/// `1/m1 − 1/m2`: the limit angle when the isotropic lines pass through
/// the origin.
pub fn dual_degenerate_angle<S: Scalar>(m1: &S, m2: &S) -> Result<S> {
    if m1.is_zero() || m2.is_zero() {
        return Err(GeomError::ZeroSlope);
    }
    Ok(S::one() / m1.clone() - S::one() / m2.clone())
}

/// Where the chord `AB` of `y = κx²` meets `Q_t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChordIntersection {
    pub b: f64,
    pub delta: f64,
    pub x_u: f64,
    pub x_v: f64,
}

struct Chord {
    abs_b: f64,
    delta: f64,
    /// `4t/κ`.
    eps: f64,
}

impl Chord {
    fn new(kappa: f64, t: f64, xa: f64, xb: f64) -> Result<Self> {
        let b = xb - xa;
        if b == 0.0 {
            return Err(GeomError::DegenerateSegment);
        }
        if kappa == 0.0 {
            return Err(GeomError::ZeroKappa);
        }
        let eps = 4.0 * t / kappa;
        if eps.partial_cmp(&0.0) != Some(Ordering::Greater) {
            return Err(GeomError::InvalidParameter("t and kappa must have the same sign"));
        }
        let radicand = b * b - eps;
        if radicand.partial_cmp(&0.0) != Some(Ordering::Greater) {
            return Err(GeomError::ChordMissesAbsolute);
        }
        Ok(Self {
            abs_b: b.abs(),
            delta: radicand.sqrt(),
            eps,
        })
    }

    /// `|b| − Δ = (4t/κ)/(|b| + Δ)`.
    fn gap(&self) -> f64 {
        self.eps / (self.abs_b + self.delta)
    }

    /// `d = log((|b| + Δ)/(|b| − Δ)) = 2 log(|b| + Δ) − log(4t/κ)`.
    fn distance(&self) -> f64 {
        2.0 * (self.abs_b + self.delta).ln() - self.eps.ln()
    }

    /// `((|b| − Δ)/(|b| + Δ))·κb²/t − 1 = (|b| − Δ)(3|b| + Δ)/(|b| + Δ)²`.
    fn alpha(&self) -> f64 {
        let sum = self.abs_b + self.delta;
        self.gap() * (3.0 * self.abs_b + self.delta) / (sum * sum)
    }
}

/// `d_t(A, B) = |log((b − Δ)/(b + Δ))|`, `Δ = √(b² − 4t/κ)`.
pub fn ck_distance_chord(kappa: f64, t: f64, xa: f64, xb: f64) -> Result<(f64, ChordIntersection)> {
    let chord = Chord::new(kappa, t, xa, xb)?;
    let ci = ChordIntersection {
        b: xb - xa,
        delta: chord.delta,
        x_u: (xa + xb - chord.delta) / 2.0,
        x_v: (xa + xb + chord.delta) / 2.0,
    };
    Ok((chord.distance(), ci))
}

/// `α_t` with `AU_t/BU_t = t/(κb²)·(1 + α_t)`.
pub fn deviation_extract(kappa: f64, t: f64, xa: f64, xb: f64) -> Result<f64> {
    Ok(Chord::new(kappa, t, xa, xb)?.alpha())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub t: f64,
    pub value: f64,
    pub error: f64,
    /// `error(tᵢ)/error(tᵢ₋₁)`; absent on the first row.
    pub ratio_to_previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedRow {
    pub t: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub limit: f64,
    pub rows: Vec<ConvergenceRow>,
    pub skipped: Vec<SkippedRow>,
}

impl ConvergenceTable {
    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().filter_map(|r| r.ratio_to_previous)
    }

    pub fn last(&self) -> Option<&ConvergenceRow> {
        self.rows.last()
    }
}

/// `t = 10⁻¹·2⁻ᵏ`, `k = 0..=20`.
pub fn default_schedule() -> Vec<f64> {
    (0..=20).map(|k| 0.1 * 0.5f64.powi(k)).collect()
}

fn check_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.iter().any(|&t| t.partial_cmp(&0.0) != Some(Ordering::Greater)) || schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(GeomError::InvalidParameter("schedule must be positive and strictly decreasing"));
    }
    Ok(())
}

fn tabulate<F>(schedule: &[f64], limit: f64, exec: Exec, eval: F) -> ConvergenceTable
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let evaluated = exec.map(schedule, |&t| (t, eval(t)));
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    let mut skipped = Vec::new();
    for (t, res) in evaluated {
        match res {
            Ok(value) => {
                let error = (value - limit).abs();
                let ratio_to_previous = rows.last().map(|p| error / p.error);
                rows.push(ConvergenceRow {
                    t,
                    value,
                    error,
                    ratio_to_previous,
                });
            }
            Err(e) => skipped.push(SkippedRow { t, reason: e.to_string() }),
        }
    }
    ConvergenceTable { limit, rows, skipped }
}

/// Tabulates the normalized angle against its limit `m1 − m2`. The error
/// column comes from [`parabolic_angle_deviation`], so it stays accurate
/// long after `value` has rounded to the limit.
pub fn ck_angle_limit_probe(
    m1: f64,
    m2: f64,
    kappa: f64,
    schedule: &[f64],
    opts: &AngleLimitOptions,
    exec: Exec,
) -> Result<ConvergenceTable> {
    check_schedule(schedule)?;
    let limit = m1 - m2;
    let mut table = tabulate(schedule, 0.0, exec, |t| parabolic_angle_deviation(m1, m2, kappa, t, opts));
    for row in &mut table.rows {
        row.value += limit;
    }
    table.limit = limit;
    Ok(table)
}

/// One row of the distance probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceProbeRow {
    pub t: f64,
    pub d_t: f64,
    /// `d_t − log(κb²/t)`.
    pub shifted: f64,
    pub alpha_t: f64,
    /// Deviation from `BV_t/AV_t = t/(κb²)·(1 + β_t)`; coincides with `α_t`.
    pub beta_t: f64,
    /// `½|α_t − β_t|`, the candidate normalized distance.
    pub candidate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceProbe {
    pub kappa: f64,
    pub b: f64,
    /// `d_t − log(1/t) − log κ` against `2 log|b|`.
    pub table: ConvergenceTable,
    pub rows: Vec<DistanceProbeRow>,
    /// `|candidate − |b||` on the last row. Reported, never asserted.
    pub candidate_gap_to_abs_b: Option<f64>,
}

pub fn ck_distance_limit_probe(kappa: f64, xa: f64, xb: f64, schedule: &[f64], exec: Exec) -> Result<DistanceProbe> {
    check_schedule(schedule)?;
    if kappa.partial_cmp(&0.0) != Some(Ordering::Greater) {
        return Err(GeomError::InvalidParameter("kappa must be positive"));
    }
    let b = xb - xa;
    if b == 0.0 {
        return Err(GeomError::DegenerateSegment);
    }
    let limit = 2.0 * b.abs().ln();
    // d_t + log t − log κ = 2 log(|b| + Δ) − log 4
    let table = tabulate(schedule, limit, exec, |t| {
        let chord = Chord::new(kappa, t, xa, xb)?;
        Ok(2.0 * (chord.abs_b + chord.delta).ln() - 4f64.ln())
    });
    let rows: Vec<DistanceProbeRow> = exec
        .map(schedule, |&t| {
            let chord = Chord::new(kappa, t, xa, xb).ok()?;
            let d_t = chord.distance();
            let alpha_t = chord.alpha();
            let beta_t = alpha_t;
            Some(DistanceProbeRow {
                t,
                d_t,
                shifted: d_t - (kappa * b * b / t).ln(),
                alpha_t,
                beta_t,
                candidate: 0.5 * (alpha_t - beta_t).abs(),
            })
        })
        .into_iter()
        .flatten()
        .collect();
    let candidate_gap_to_abs_b = rows.last().map(|r| (r.candidate - b.abs()).abs());
    Ok(DistanceProbe {
        kappa,
        b,
        table,
        rows,
        candidate_gap_to_abs_b,
    })
}
