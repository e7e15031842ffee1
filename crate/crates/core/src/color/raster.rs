use super::RgbColor;
use crate::{Error, Result};

/// Row-major RGB image.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    width: usize,
    height: usize,
    pixels: Vec<RgbColor>,
}

impl Raster {
    pub fn new(width: usize, height: usize, pixels: Vec<RgbColor>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::PixelCount {
                width,
                height,
                actual: pixels.len(),
            });
        }
        Ok(Raster {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, color: RgbColor) -> Self {
        Raster {
            width,
            height,
            pixels: vec![color; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> RgbColor) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Raster {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[RgbColor] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<RgbColor> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> RgbColor {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: RgbColor) {
        self.pixels[y * self.width + x] = c;
    }

    pub fn map(&self, f: impl Fn(RgbColor) -> RgbColor) -> Raster {
        Raster {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&c| f(c)).collect(),
        }
    }

    pub(crate) fn ensure_non_empty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyRaster)
        } else {
            Ok(())
        }
    }
}
