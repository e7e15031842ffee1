use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use craftgen_core::evaluation::{compare_report, report, AnnotationMatrix};
use serde::{Deserialize, Serialize};

use crate::config::{self, Common, Options};
use crate::io::{read_text, Outputs};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct EvaluateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Row labels for the report, one per annotation file [default: file stem]
    #[arg(long = "label")]
    pub labels: Vec<String>,
    /// Annotation CSVs: header of judge ids, one 0/1 row per design
    pub annotations: Vec<PathBuf>,
}

impl Options for EvaluateArgs {
    fn common(&self) -> &Common {
        &self.common
    }
    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }
}

pub fn run(args: EvaluateArgs) -> Result<()> {
    let opts = config::resolve(args)?;
    if opts.annotations.is_empty() {
        bail!("no annotation files given");
    }
    if !opts.labels.is_empty() && opts.labels.len() != opts.annotations.len() {
        bail!("{} labels for {} annotation files", opts.labels.len(), opts.annotations.len());
    }
    let mut entries = Vec::with_capacity(opts.annotations.len());
    for (i, path) in opts.annotations.iter().enumerate() {
        let m = AnnotationMatrix::from_csv(read_text(path, "annotations")?.as_bytes())
            .with_context(|| format!("invalid annotations {}", path.display()))?;
        let label = match opts.labels.get(i) {
            Some(l) => l.clone(),
            None => path.file_stem().map_or_else(|| format!("matrix{i}"), |s| s.to_string_lossy().into_owned()),
        };
        let r = report(&m);
        println!(
            "{label}: likeability-index {} ({} designs x {} judges)",
            r.index,
            m.n_designs(),
            m.n_judges()
        );
        entries.push((label, m));
    }
    let table = compare_report(&entries)?;
    print!("{}", table.to_text());
    let mut out = Outputs::new(opts.common.out_dir());
    out.add("likeability.csv", table.to_csv()?);
    out.add("likeability.txt", table.to_text());
    out.commit()?;
    Ok(())
}
