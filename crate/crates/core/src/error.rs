//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when constructing domain values or
/// running the numerical operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A value that must lie on the unit circle could not be normalized
    /// (zero or non-finite modulus).
    #[error("cannot normalize to the unit circle: modulus {modulus}")]
    NotOnCircle { modulus: f64 },

    /// A transvection parameter outside the open unit disc (or too close
    /// to its boundary to be numerically meaningful).
    #[error("point with modulus {modulus} is outside the open unit disc")]
    OutsideDisc { modulus: f64 },

    /// Polar coordinates degenerate at the disc origin.
    #[error("polar chart is degenerate at rho = 0")]
    DegenerateChart,

    /// Two sampled fields live on quadrature rules of different sizes.
    #[error("node count mismatch: {left} vs {right}")]
    NodeMismatch { left: usize, right: usize },

    /// Quadrature rules need at least 8 nodes and an even count.
    #[error("invalid quadrature size {n}: need n >= 8 and even")]
    BadQuadrature { n: usize },

    /// A numeric argument violates a documented precondition.
    #[error("parameter {name} = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    /// Finite-difference stencil does not fit the requested step.
    #[error("step {step} too large for the stencil at rho = {rho}")]
    StepTooLarge { step: f64, rho: f64 },

    /// The trajectory equation applies only to paths with nonzero
    /// angular momentum.
    #[error("path is radial: the trajectory equation in theta does not apply")]
    RadialTrajectory,

    /// The hypocycloid fit needs one full inner-tangency arc
    /// (boundary approach, minimum, boundary approach).
    #[error("path does not contain a complete inner-tangency arc")]
    IncompleteArc,

    /// A time index too close to the ends of a sampled motion for the
    /// centered stencil.
    #[error("time index {index} lacks stencil neighbors (motion has {len} samples)")]
    BoundaryIndex { index: usize, len: usize },

    /// Sampled motions need at least five samples.
    #[error("motion has {len} samples; at least 5 required")]
    TooFewSamples { len: usize },

    /// Sampled motions must be on a uniform, strictly increasing time grid.
    #[error("motion time grid is not uniform and strictly increasing")]
    NonUniformTimes,

    /// Input text that does not parse as the expected format.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Unknown validation suite name.
    #[error("unknown validation suite \"{0}\"")]
    UnknownSuite(String),
}
