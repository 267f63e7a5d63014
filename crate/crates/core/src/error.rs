//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the analysis pipeline.
///
/// Errors split into two families, mirrored by the CLI exit codes:
/// argument/domain problems (exit code 1) and numerical failures of the
/// root finders and eigensolvers (exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the physical domain (e.g. a film radius on or inside
    /// the rod, a nonpositive length).
    #[error("domain error: {0}")]
    Domain(String),

    /// Mode whose eigenfunction violates the zero-mean volume constraint
    /// and therefore cannot be assigned a critical length.
    #[error("mode (k={k}, m={m}) violates the volume constraint")]
    InadmissibleMode { k: u32, m: u32 },

    /// A bracketed root/sign search was handed an interval without a sign
    /// change.
    #[error("no sign change in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// Bracket expansion hit its hard cap even though the analytic
    /// structure of the problem demands a crossing.
    #[error("bracket expansion reached {limit:e} without a sign change")]
    BracketExhausted { limit: f64 },

    /// Bisection did not reach its tolerance within the iteration cap;
    /// signals a tolerance misconfiguration rather than a bad input.
    #[error("bisection failed to converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },

    /// Discretization request too coarse to be meaningful.
    #[error("operator needs at least {min} interior grid points, got {n}")]
    TooFewPoints { n: usize, min: usize },

    /// A grid sweep failed at a specific cell; carries the coordinates.
    #[error("at cell (r={r}, l={l}): {source}")]
    AtCell {
        r: f64,
        l: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 1 for argument/domain errors, 2 for numerical
    /// failures (bracketing, convergence).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::InadmissibleMode { .. }
            | Error::TooFewPoints { .. }
            | Error::Io(_) => 1,
            Error::NoSignChange { .. }
            | Error::BracketExhausted { .. }
            | Error::NoConvergence { .. } => 2,
            Error::AtCell { source, .. } => source.exit_code(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_by_family() {
        assert_eq!(Error::Domain("x".into()).exit_code(), 1);
        assert_eq!(Error::InadmissibleMode { k: 0, m: 1 }.exit_code(), 1);
        assert_eq!(Error::NoSignChange { lo: 0.0, hi: 1.0 }.exit_code(), 2);
        assert_eq!(Error::NoConvergence { max_iter: 200 }.exit_code(), 2);
        let nested = Error::AtCell {
            r: 1.0,
            l: 2.0,
            source: Box::new(Error::NoConvergence { max_iter: 10 }),
        };
        assert_eq!(nested.exit_code(), 2);
    }
}
