//! Image decoding/encoding and all-or-nothing output staging.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use craftgen_core::{Raster, RgbColor};
use image::{ImageFormat, RgbImage};

pub fn read_image(path: &Path) -> Result<Raster> {
    let img = image::open(path)
        .with_context(|| format!("cannot read image {}", path.display()))?
        .to_rgb8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    let pixels = img.pixels().map(|p| RgbColor::from_u8(p[0], p[1], p[2])).collect();
    Ok(Raster::new(w, h, pixels)?)
}

pub fn encode_png(img: &Raster) -> Result<Vec<u8>> {
    let mut buf = RgbImage::new(img.width() as u32, img.height() as u32);
    for (dst, src) in buf.pixels_mut().zip(img.pixels()) {
        dst.0 = src.to_u8();
    }
    let mut out = std::io::Cursor::new(Vec::new());
    buf.write_to(&mut out, ImageFormat::Png)?;
    Ok(out.into_inner())
}

pub fn read_text(path: &Path, what: &str) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {what} {}", path.display()))
}

/// Files are collected in memory and only written once the whole command
/// has succeeded. Each file goes to a temporary sibling and is renamed into
/// place, so readers never observe a half-written file.
#[derive(Debug, Default)]
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Outputs {
            dir: dir.into(),
            files: Vec::new(),
        }
    }

    pub fn add(&mut self, name: impl Into<String>, bytes: impl Into<Vec<u8>>) {
        self.files.push((name.into(), bytes.into()));
    }

    pub fn commit(self) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("cannot create output directory {}", self.dir.display()))?;
        let mut staged = Vec::with_capacity(self.files.len());
        for (name, bytes) in &self.files {
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)
                .with_context(|| format!("cannot write to {}", self.dir.display()))?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            staged.push((tmp, self.dir.join(name)));
        }
        let mut written = Vec::with_capacity(staged.len());
        for (tmp, dest) in staged {
            tmp.persist(&dest)
                .with_context(|| format!("cannot move output into {}", dest.display()))?;
            written.push(dest);
        }
        Ok(written)
    }
}
