//! Aesthetic features of flat-fill renders and the boosted-tree pruning model.

mod features;
mod gbm;

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use features::{
    area_fractions, area_fractions_with, color_counts, darkness_class, darkness_class_with, dullness_score,
    extract_features, extract_features_with, global_contrast, harmony_type, harmony_type_with, AestheticRules,
    FeatureVector, Harmony, FEATURE_DIM, TOP_COLORS,
};
pub use gbm::{fit, log_loss, sigmoid, GbmHyperparams, GbmModel, Node, Tree, MODEL_FORMAT, MODEL_VERSION};

/// Features of one design plus the three judges' like/dislike votes.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDesign {
    pub features: FeatureVector,
    pub judge_votes: [bool; 3],
}

impl LabeledDesign {
    pub fn new(features: FeatureVector, judge_votes: [bool; 3]) -> Self {
        LabeledDesign { features, judge_votes }
    }

    /// Majority vote.
    pub fn label(&self) -> bool {
        self.judge_votes.iter().filter(|&&v| v).count() >= 2
    }
}

fn matrix(data: &[LabeledDesign]) -> (Vec<Vec<f64>>, Vec<bool>) {
    data.iter().map(|d| (d.features.to_vec(), d.label())).unzip()
}

pub fn train_gbm(data: &[LabeledDesign], hp: &GbmHyperparams, seed: u64) -> Result<GbmModel> {
    train_gbm_traced(data, hp, seed).map(|(m, _)| m)
}

/// Like [`train_gbm`], also returning the training log-loss before the first
/// tree and after each stage.
pub fn train_gbm_traced(data: &[LabeledDesign], hp: &GbmHyperparams, seed: u64) -> Result<(GbmModel, Vec<f64>)> {
    let (x, y) = matrix(data);
    fit(&x, &y, hp, seed)
}

pub fn predict(model: &GbmModel, f: &FeatureVector) -> Result<f64> {
    model.predict_raw(&f.to_vec())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scored<T> {
    pub item: T,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PruneOutcome<T> {
    pub kept: Vec<Scored<T>>,
    pub discarded: Vec<Scored<T>>,
}

/// Keeps designs scoring at least `threshold`, preserving input order.
pub fn prune<T>(designs: Vec<(T, FeatureVector)>, model: &GbmModel, threshold: f64) -> Result<PruneOutcome<T>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::invalid("threshold", format!("{threshold} not in (0, 1)")));
    }
    let mut out = PruneOutcome {
        kept: Vec::new(),
        discarded: Vec::new(),
    };
    for (item, f) in designs {
        let score = predict(model, &f)?;
        let scored = Scored { item, score };
        if score >= threshold {
            out.kept.push(scored);
        } else {
            out.discarded.push(scored);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One row of a pruning dataset: a design document path and its votes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub design: String,
    pub vote1: u8,
    pub vote2: u8,
    pub vote3: u8,
    pub split: Split,
}

impl DatasetRow {
    pub fn votes(&self) -> [bool; 3] {
        [self.vote1 != 0, self.vote2 != 0, self.vote3 != 0]
    }
}

/// Reads `design,vote1,vote2,vote3,split` rows (votes 0/1, split train/test).
pub fn read_dataset<R: Read>(reader: R) -> Result<Vec<DatasetRow>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut rows = Vec::new();
    for (i, rec) in rdr.deserialize::<DatasetRow>().enumerate() {
        let row = rec?;
        if [row.vote1, row.vote2, row.vote3].iter().any(|&v| v > 1) {
            return Err(Error::Parse(format!("row {}: votes must be 0 or 1", i + 1)));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_dataset(rows: &[DatasetRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Train/test assignment in the 1000:100 proportion: the last `round(n/11)`
/// items are held out.
pub fn default_split(n: usize) -> Vec<Split> {
    let n_test = (n as f64 / 11.0).round() as usize;
    (0..n)
        .map(|i| if i + n_test >= n { Split::Test } else { Split::Train })
        .collect()
}
