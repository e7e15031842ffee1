use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use craftgen_core::blockprint::DesignDocument;
use craftgen_core::pruning::{
    extract_features, log_loss, prune as prune_designs, read_dataset, train_gbm_traced, FeatureVector,
    GbmHyperparams, GbmModel, LabeledDesign, Split,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::required;
use crate::config::{self, Common, Options};
use crate::io::{read_text, Outputs};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// CSV with columns design,vote1,vote2,vote3,split; design paths are
    /// relative to the CSV's directory
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Shrinkage per tree [default: 0.3]
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Leaves per tree [default: 85]
    #[arg(long)]
    pub max_leaves: Option<usize>,
    /// Training samples per leaf [default: 50]
    #[arg(long)]
    pub min_samples_leaf: Option<usize>,
    /// Boosting stages [default: 100]
    #[arg(long)]
    pub n_trees: Option<usize>,
}

impl Options for TrainArgs {
    fn common(&self) -> &Common {
        &self.common
    }
    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct PruneArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Trained pruning model
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Minimum score for a design to be kept [default: 0.5]
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Design documents to score
    pub designs: Vec<PathBuf>,
}

impl Options for PruneArgs {
    fn common(&self) -> &Common {
        &self.common
    }
    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }
}

fn design_features(path: &Path) -> Result<FeatureVector> {
    let doc = DesignDocument::from_json(&read_text(path, "design")?)
        .with_context(|| format!("invalid design document {}", path.display()))?;
    Ok(extract_features(&doc.render()?)?)
}

fn accuracy(model: &GbmModel, data: &[LabeledDesign]) -> Result<(f64, f64)> {
    let mut scores = Vec::with_capacity(data.len());
    let mut correct = 0;
    for d in data {
        let s = model.score(&d.features.to_vec())?;
        correct += usize::from((s >= 0.0) == d.label());
        scores.push(s);
    }
    let labels: Vec<bool> = data.iter().map(LabeledDesign::label).collect();
    Ok((log_loss(&scores, &labels), correct as f64 / data.len() as f64))
}

pub fn train(args: TrainArgs) -> Result<()> {
    let mut opts = config::resolve(args)?;
    let dataset = required(&opts.dataset, "dataset")?;
    let base = dataset.parent().unwrap_or(Path::new("."));
    let rows = read_dataset(read_text(dataset, "dataset")?.as_bytes())
        .with_context(|| format!("invalid dataset {}", dataset.display()))?;
    if rows.is_empty() {
        bail!("dataset {} has no rows", dataset.display());
    }
    let defaults = GbmHyperparams::default();
    let hp = GbmHyperparams {
        learning_rate: opts.learning_rate.unwrap_or(defaults.learning_rate),
        max_leaves: opts.max_leaves.unwrap_or(defaults.max_leaves),
        min_samples_leaf: opts.min_samples_leaf.unwrap_or(defaults.min_samples_leaf),
        n_trees: opts.n_trees.unwrap_or(defaults.n_trees),
    };
    hp.validate()?;
    opts.learning_rate = Some(hp.learning_rate);
    opts.max_leaves = Some(hp.max_leaves);
    opts.min_samples_leaf = Some(hp.min_samples_leaf);
    opts.n_trees = Some(hp.n_trees);

    let labeled: Vec<(Split, LabeledDesign)> = rows
        .par_iter()
        .map(|row| {
            let f = design_features(&base.join(&row.design))?;
            Ok((row.split, LabeledDesign::new(f, row.votes())))
        })
        .collect::<Result<_>>()?;
    let (train, test): (Vec<_>, Vec<_>) = labeled.into_iter().partition(|(s, _)| *s == Split::Train);
    let train: Vec<LabeledDesign> = train.into_iter().map(|(_, d)| d).collect();
    let test: Vec<LabeledDesign> = test.into_iter().map(|(_, d)| d).collect();
    println!("config: {}", config::echo(&opts)?.replace('\n', " "));
    println!("split: {} train / {} test", train.len(), test.len());

    let (model, history) = train_gbm_traced(&train, &hp, opts.common.seed())?;
    let (train_loss, train_acc) = accuracy(&model, &train)?;
    println!(
        "train: log-loss {train_loss:.4} (initial {:.4}), accuracy {:.3}",
        history[0], train_acc
    );
    if !test.is_empty() {
        let (test_loss, test_acc) = accuracy(&model, &test)?;
        println!("test: log-loss {test_loss:.4}, accuracy {test_acc:.3}");
    }
    let mut out = Outputs::new(opts.common.out_dir());
    out.add("model.json", model.to_json()?);
    out.add("run_config.json", config::echo(&opts)?);
    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn prune(args: PruneArgs) -> Result<()> {
    let mut opts = config::resolve(args)?;
    let model = GbmModel::from_json(&read_text(required(&opts.model, "model")?, "model")?)?;
    if opts.designs.is_empty() {
        bail!("no design documents given");
    }
    let threshold = opts.threshold.unwrap_or(0.5);
    opts.threshold = Some(threshold);
    let scored: Vec<(PathBuf, FeatureVector)> = opts
        .designs
        .par_iter()
        .map(|p| Ok((p.clone(), design_features(p)?)))
        .collect::<Result<_>>()?;
    let outcome = prune_designs(scored, &model, threshold)?;
    let mut report = String::from("design,score,kept\n");
    let mut rows: Vec<(&PathBuf, f64, bool)> = outcome
        .kept
        .iter()
        .map(|s| (&s.item, s.score, true))
        .chain(outcome.discarded.iter().map(|s| (&s.item, s.score, false)))
        .collect();
    rows.sort_by_key(|r| opts.designs.iter().position(|p| p == r.0));
    for (path, score, keep) in rows {
        let _ = writeln!(report, "{},{score:.6},{keep}", path.display());
        println!("{} {score:.4} {}", path.display(), if keep { "kept" } else { "discarded" });
    }
    println!("kept {} of {}", outcome.kept.len(), opts.designs.len());
    let mut out = Outputs::new(opts.common.out_dir());
    out.add("prune_report.csv", report);
    out.add("run_config.json", config::echo(&opts)?);
    out.commit()?;
    Ok(())
}
