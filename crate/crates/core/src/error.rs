use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "basis {setting} is not orthonormal: |<phi_{a}|phi_{b}> - delta_{a}{b}| = {deviation:.3e} \
         (setting x={setting}, outcomes a={a}, b={b})"
    )]
    NotOrthonormal {
        setting: usize,
        a: usize,
        b: usize,
        deviation: f64,
    },

    #[error("unsupported dimension {dim}: only prime dimensions are supported (try 2, 3, 5, 7, 11, ...)")]
    UnsupportedDimension { dim: usize },

    #[error(
        "capacity exceeded: enumerating {dim}^{settings} strategies exceeds the limit of {limit}"
    )]
    Capacity {
        dim: usize,
        settings: usize,
        limit: u64,
    },

    #[error("precision limit: {0}")]
    Precision(String),
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidInput(alloc::format!($($arg)*))
    };
}

pub(crate) use invalid;
