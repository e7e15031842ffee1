pub mod blockprint;
pub mod evaluate;
pub mod ikat;
pub mod palette;
pub mod pruner;

use anyhow::{Context, Result};
use std::path::{Path, PathBuf};

pub(crate) fn required<'a>(value: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    value
        .as_deref()
        .with_context(|| format!("missing --{flag} (flag or config key)"))
}
