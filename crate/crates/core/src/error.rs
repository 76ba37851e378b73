use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the solver.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The origin has no sextant.
    UndefinedSector,
    /// A polygonal chain violated one of its structural invariants.
    InvalidChain(&'static str),
    /// An operation that needs a closed chain got an open one.
    NotClosed,
    /// Two bubbles whose interiors intersect.
    OverlappingInteriors,
    /// A shared boundary piece that does not follow one of the lattice directions.
    NonLatticeOverlap,
    /// The requested volume cannot be enclosed with the given side lengths.
    InfeasibleVolume,
    /// A parameter combination outside the feasible set of a formula.
    Infeasible(&'static str),
    /// An argument outside the documented domain.
    Domain(&'static str),
    /// The oracle grid contained no feasible point.
    NoFeasiblePoint,
    /// A bracketing search found no sign change.
    NoSignChange,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UndefinedSector => f.write_str("undefined sector: the origin lies in every sextant"),
            Error::InvalidChain(why) => write!(f, "invalid polygonal chain: {why}"),
            Error::NotClosed => f.write_str("operation requires a closed chain"),
            Error::OverlappingInteriors => f.write_str("bubble interiors overlap"),
            Error::NonLatticeOverlap => {
                f.write_str("shared boundary is not parallel to a lattice direction")
            }
            Error::InfeasibleVolume => f.write_str("infeasible volume for the given side lengths"),
            Error::Infeasible(why) => write!(f, "infeasible configuration: {why}"),
            Error::Domain(why) => write!(f, "argument out of domain: {why}"),
            Error::NoFeasiblePoint => f.write_str("no feasible grid point"),
            Error::NoSignChange => f.write_str("no sign change in bracket"),
        }
    }
}

impl core::error::Error for Error {}
