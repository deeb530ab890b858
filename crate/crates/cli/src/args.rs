use clap::{Args, Parser, Subcommand, ValueEnum};
use da_geom::da_core::Point;
use da_geom::scalar::{parse_rat, Rat};
use da_geom::suites::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "da-geom",
    version,
    about = "Difference-angle geometry: exact computations and verification suites"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the focal equation along a directrix.
    Focal(FocalArgs),
    /// Parabolic power of a point, optionally checked against secants.
    Power(PowerArgs),
    /// Radical axis of two parabolas or radical center of three.
    Radical(RadicalArgs),
    /// Sides, interior angles and identity checks for a triangle.
    Triangle(TriangleArgs),
    /// Degenerate inner product and alternating product of two vectors.
    Inner(InnerArgs),
    /// Brocard points of a triangle inscribed in y = kappa x^2.
    Brocard(BrocardArgs),
    /// Cayley-Klein angles, distances and their parabolic limits.
    Ck(CkArgs),
    /// Run randomized verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone)]
pub struct Pair(pub Rat, pub Rat);

impl Pair {
    pub fn point(&self) -> Point<Rat> {
        Point::new(self.0.clone(), self.1.clone())
    }
}

#[derive(Debug, Clone)]
pub struct RatList(pub Vec<Rat>);

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn list_arg(s: &str) -> Result<RatList, String> {
    s.split(',').map(rat_arg).collect::<Result<_, _>>().map(RatList)
}

fn pair_arg(s: &str) -> Result<Pair, String> {
    match list_arg(s)?.0.as_slice() {
        [x, y] => Ok(Pair(x.clone(), y.clone())),
        _ => Err(format!("expected two comma-separated numbers, got {s:?}")),
    }
}

fn triple_arg(s: &str) -> Result<[Rat; 3], String> {
    match list_arg(s)?.0.as_slice() {
        [a, b, c] => Ok([a.clone(), b.clone(), c.clone()]),
        _ => Err(format!("expected three comma-separated numbers, got {s:?}")),
    }
}

#[derive(Debug, Args)]
pub struct FocalArgs {
    /// Focus as x,y.
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub focus: Pair,
    /// Height of the horizontal directrix.
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    pub directrix: Rat,
    /// Base abscissae on the directrix, comma-separated.
    #[arg(long, value_parser = list_arg, allow_hyphen_values = true, conflicts_with = "point")]
    pub xs: Option<RatList>,
    /// A single base abscissa.
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    pub point: Option<Rat>,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    /// Parabola y = kappa (x - h)^2 + k as kappa,h,k.
    #[arg(long, value_parser = triple_arg, allow_hyphen_values = true)]
    pub parabola: [Rat; 3],
    /// The point as x,y.
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub point: Pair,
    /// Secant slopes through the point; repeatable.
    #[arg(long = "slope", value_parser = rat_arg, allow_hyphen_values = true)]
    pub slopes: Vec<Rat>,
}

#[derive(Debug, Args)]
pub struct RadicalArgs {
    /// kappa,h,k; give two or three.
    #[arg(long = "parabola", value_parser = triple_arg, allow_hyphen_values = true, num_args = 1, required = true)]
    pub parabolas: Vec<[Rat; 3]>,
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub a: Pair,
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub b: Pair,
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub c: Pair,
    /// Also report the area, for a triangle inscribed in y = kappa x^2.
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    pub kappa: Option<Rat>,
}

#[derive(Debug, Args)]
pub struct InnerArgs {
    /// First vector as dx,dy.
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub u: Pair,
    /// Second vector as dx,dy.
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    pub v: Pair,
}

#[derive(Debug, Args)]
pub struct BrocardArgs {
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    pub kappa: Rat,
    /// Increasing vertex abscissae a,b,c.
    #[arg(long, value_parser = triple_arg, allow_hyphen_values = true)]
    pub xs: [Rat; 3],
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CkArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: CkCommand,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Apex {
    /// (0, -1/t^2)
    #[default]
    InverseSquare,
    /// (0, -1/t)
    Inverse,
}

#[derive(Debug, Subcommand)]
pub enum CkCommand {
    /// lambda log Cr(m1, m2; t1, t2).
    Angle {
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m1: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m2: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        t1: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        t2: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true, default_value = "1")]
        lambda: Rat,
    },
    /// Distance between two points of y = kappa x^2 relative to y = kappa x^2 + t.
    Distance {
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        kappa: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        xa: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        xb: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        t: Rat,
    },
    /// Convergence of the normalized angle to m1 - m2.
    LimitAngle {
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m1: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m2: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true, default_value = "1")]
        kappa: Rat,
        #[arg(long, value_enum, default_value_t = Apex::InverseSquare)]
        apex: Apex,
        /// Admit zero slopes through the continuous extension.
        #[arg(long)]
        include_horizontal: bool,
        /// Decreasing t values; defaults to 0.1 * 2^-k, k = 0..20.
        #[arg(long, value_parser = list_arg)]
        schedule: Option<RatList>,
    },
    /// Expansion of the distance as t -> 0.
    LimitDistance {
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true, default_value = "1")]
        kappa: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        xa: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        xb: Rat,
        #[arg(long, value_parser = list_arg)]
        schedule: Option<RatList>,
    },
    /// The slope halving the angle between m1 and m2.
    Bisector {
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m1: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m2: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        t1: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        t2: Rat,
    },
    /// Euclidean angle via Cr(mL, mM; i, -i).
    Laguerre {
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m1: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        m2: Rat,
    },
}

#[derive(Debug, Clone, Copy)]
pub enum SuiteChoice {
    All,
    One(Suite),
}

fn suite_arg(s: &str) -> Result<SuiteChoice, String> {
    if s == "all" {
        Ok(SuiteChoice::All)
    } else {
        s.parse().map(SuiteChoice::One)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, focal, power, radical, parallelogram, stewart, trig, brocard, ck-axioms or limits.
    #[arg(long, value_parser = suite_arg, default_value = "all")]
    pub suite: SuiteChoice,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    #[arg(long, env = "DA_GEOM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Run cases one at a time.
    #[arg(long)]
    pub sequential: bool,
}
