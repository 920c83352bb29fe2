use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two inputs that must share a pixel grid do not. `field` names the
    /// offending argument.
    #[error("{field}: expected {expected_width}x{expected_height}, got {width}x{height}")]
    DimensionMismatch {
        field: &'static str,
        expected_width: usize,
        expected_height: usize,
        width: usize,
        height: usize,
    },

    #[error("{name} = {value} violates: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("image is {width}x{height}, need at least {min}x{min}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },

    #[error("{what} has {left} entries, expected {right}")]
    LengthMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("{what} is empty")]
    EmptyInput { what: &'static str },

    #[error("{field} contains a non-finite value at index {index}")]
    NonFinite { field: &'static str, index: usize },

    #[error("malformed PFM: {reason}")]
    MalformedPfm { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Guards a pairwise grid match; `field` names the argument being checked.
pub(crate) fn check_dims(
    field: &'static str,
    expected: (usize, usize),
    actual: (usize, usize),
) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch {
            field,
            expected_width: expected.0,
            expected_height: expected.1,
            width: actual.0,
            height: actual.1,
        });
    }
    Ok(())
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidParameter {
            name,
            value,
            requirement: "must be a positive finite number",
        });
    }
    Ok(())
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
        return Err(Error::InvalidParameter {
            name,
            value,
            requirement: "must lie in [0, 1]",
        });
    }
    Ok(())
}
