//! Option records shared by the flag parser and `--config` JSON files.
//!
//! Every command's options are a flat record of optional fields. A config
//! file supplies a base layer; flags given on the command line win.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_OUT_DIR: &str = "craftgen-out";

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct Common {
    /// JSON file providing defaults for this command's options
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Seed for every random choice [default: 42]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Draw the seed from system entropy instead (it is echoed for replay)
    #[arg(long, conflicts_with = "seed")]
    #[serde(skip)]
    pub random_seed: bool,
    /// Directory outputs are written to [default: craftgen-out]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

impl Common {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
    }
}

/// Commands whose options can be layered from a config file.
pub trait Options: Serialize + DeserializeOwned + Default {
    fn common(&self) -> &Common;
    fn common_mut(&mut self) -> &mut Common;
}

fn is_unset(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Bool(b) => !b,
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

fn known_keys<T: Options>() -> Result<Vec<String>> {
    match serde_json::to_value(T::default())? {
        Value::Object(m) => Ok(m.keys().cloned().collect()),
        _ => bail!("options must serialize to an object"),
    }
}

/// Loads the config file named by `--config` (if any) under the flags, fixes
/// the seed, and returns the effective options.
pub fn resolve<T: Options>(flags: T) -> Result<T> {
    let config_path = flags.common().config.clone();
    let random_seed = flags.common().random_seed;
    let mut merged = match &config_path {
        Some(path) => load_config::<T>(path)?,
        None => Map::new(),
    };
    if let Value::Object(given) = serde_json::to_value(&flags)? {
        for (k, v) in given {
            if !is_unset(&v) {
                merged.insert(k, v);
            }
        }
    }
    let mut opts: T = serde_json::from_value(Value::Object(merged)).context("invalid options")?;
    let common = opts.common_mut();
    common.config = config_path;
    if random_seed {
        common.seed = Some(rand::random());
    } else if common.seed.is_none() {
        common.seed = Some(DEFAULT_SEED);
    }
    Ok(opts)
}

fn load_config<T: Options>(path: &Path) -> Result<Map<String, Value>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("config {} is not valid JSON", path.display()))?;
    let Value::Object(map) = value else {
        bail!("config {} must hold a JSON object", path.display());
    };
    let known = known_keys::<T>()?;
    if let Some(k) = map.keys().find(|k| !known.contains(k)) {
        bail!("config {}: unknown option {k:?}", path.display());
    }
    Ok(map)
}

/// The effective options as pretty JSON, for the run log and replay.
pub fn echo<T: Options>(opts: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(opts)?)
}
