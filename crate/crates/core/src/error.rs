use thiserror::Error;

/// Every failure mode of the kernel. The display strings are part of the
/// CLI contract and show up verbatim on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("log of zero")]
    LogOfZero,
    #[error("cannot parse number {0:?}")]
    Parse(String),

    #[error("degenerate segment")]
    DegenerateSegment,
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(&'static str),

    #[error("P not on singular line through A")]
    NotOnSingularLine,
    #[error("focus on directrix level")]
    FocusOnDirectrixLevel,
    #[error("F on L_A")]
    FocusOnSingularLine,
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error("secant misses parabola")]
    SecantMissesParabola,
    #[error("coincident curves")]
    CoincidentCurves,
    #[error("disjoint parabolas")]
    DisjointParabolas,
    #[error("parabolas with equal kappa cross only once")]
    SingleCrossing,
    #[error("no finite radical center")]
    NoFiniteRadicalCenter,

    #[error("A in singular direction from O")]
    SingularDirectionFromOrigin,
    #[error("cevian foot outside segment")]
    CevianFootOutsideSegment,
    #[error("cevian in singular direction")]
    CevianSingular,
    #[error("triangle has no circumparabola (collinear vertices)")]
    NoCircumparabola,

    #[error("parabolic trig undefined at 0")]
    TrigUndefinedAtZero,
    #[error("not inscribed")]
    NotInscribed,
    #[error("vertices must have strictly increasing x-coordinates")]
    NotInXOrder,
    #[error("zero vector")]
    ZeroVector,

    #[error("degenerate cross ratio")]
    DegenerateCrossRatio,
    #[error("isotropic direction")]
    IsotropicDirection,
    #[error("outside positive component")]
    OutsidePositiveComponent,
    #[error("bisector selection failed")]
    BisectorSelectionFailed,
    #[error("no real isotropic pair")]
    NoRealIsotropicPair,
    #[error("zero slope")]
    ZeroSlope,
    #[error("chord misses Q_t")]
    ChordMissesAbsolute,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = std::result::Result<T, GeomError>;
