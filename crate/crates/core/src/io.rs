//! Single-channel raster files: PGM and 8- or 16-bit grayscale PNG.

use std::path::Path;

use image::{DynamicImage, ImageBuffer, Luma};

use crate::error::{Error, Result};
use crate::morphology::GrayImage;
use crate::raster::LabelImage;

fn load(path: &Path) -> Result<(usize, usize, Vec<u16>)> {
    let img = image::ImageReader::open(path)?.with_guessed_format()?.decode()?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data = match img {
        DynamicImage::ImageLuma8(b) => b.into_raw().into_iter().map(u16::from).collect(),
        DynamicImage::ImageLuma16(b) => b.into_raw(),
        other => {
            return Err(Error::UnsupportedRaster(format!(
                "{}: expected a single-channel raster, found {:?}",
                path.display(),
                other.color()
            )))
        }
    };
    Ok((w, h, data))
}

/// Reads a label raster; pixel values are labels.
pub fn read_label_image(path: impl AsRef<Path>) -> Result<LabelImage> {
    let (w, h, data) = load(path.as_ref())?;
    LabelImage::new(w, h, data.into_iter().map(u32::from).collect())
}

pub fn read_gray_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let (w, h, data) = load(path.as_ref())?;
    GrayImage::new(w, h, data)
}

fn save16(path: &Path, w: usize, h: usize, data: Vec<u16>) -> Result<()> {
    let buf: ImageBuffer<Luma<u16>, Vec<u16>> =
        ImageBuffer::from_raw(w as u32, h as u32, data).expect("buffer matches dimensions");
    buf.save(path)?;
    Ok(())
}

/// Writes labels as a 16-bit grayscale PNG. Labels above 65535 are an error.
pub fn write_label_png(path: impl AsRef<Path>, img: &LabelImage) -> Result<()> {
    let data = img
        .labels()
        .iter()
        .map(|&l| u16::try_from(l).map_err(|_| Error::UnsupportedRaster(format!("label {l} does not fit 16 bits"))))
        .collect::<Result<Vec<_>>>()?;
    save16(path.as_ref(), img.width(), img.height(), data)
}

pub fn write_gray_png(path: impl AsRef<Path>, img: &GrayImage) -> Result<()> {
    save16(path.as_ref(), img.width(), img.height(), img.data().to_vec())
}
