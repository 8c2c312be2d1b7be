use thiserror::Error;

/// Errors produced by the shapesuite library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("buffer holds {len} values but a {width}x{height} image needs {}", width * height)]
    BufferSize { width: usize, height: usize, len: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("statistic undefined: {0}")]
    Undefined(&'static str),

    #[error("unsupported raster: {0}")]
    UnsupportedRaster(String),

    #[error(transparent)]
    Image(#[from] image::ImageError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
