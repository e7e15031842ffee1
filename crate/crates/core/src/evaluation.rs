//! Likeability index over a designs-by-judges vote matrix.
//!
//! An index of `x` means at least `x`% of the designs are liked by at least
//! `x`% of the judges; the largest such integer is reported.

use std::fmt::Write as _;
use std::io::Read;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationMatrix {
    design_ids: Vec<String>,
    judge_ids: Vec<String>,
    /// Row-major, one row per design.
    votes: Vec<bool>,
}

impl AnnotationMatrix {
    /// Builds a matrix from rows of votes, with generated ids.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n_judges = rows.first().map_or(0, Vec::len);
        let design_ids = (0..rows.len()).map(|i| format!("d{i}")).collect();
        let judge_ids = (0..n_judges).map(|j| format!("j{j}")).collect();
        Self::with_ids(design_ids, judge_ids, rows)
    }

    pub fn with_ids(design_ids: Vec<String>, judge_ids: Vec<String>, rows: &[Vec<bool>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("annotations", "no designs"));
        }
        if judge_ids.is_empty() {
            return Err(Error::invalid("annotations", "no judges"));
        }
        if design_ids.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                actual: design_ids.len(),
            });
        }
        let mut votes = Vec::with_capacity(rows.len() * judge_ids.len());
        for row in rows {
            if row.len() != judge_ids.len() {
                return Err(Error::DimensionMismatch {
                    expected: judge_ids.len(),
                    actual: row.len(),
                });
            }
            votes.extend_from_slice(row);
        }
        Ok(AnnotationMatrix {
            design_ids,
            judge_ids,
            votes,
        })
    }

    /// Parses CSV: a header naming the judges (first header cell labels the
    /// design column), then one row per design with 0/1 cells.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .has_headers(true)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let judge_ids: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut design_ids = Vec::new();
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let mut cells = rec.iter();
            design_ids.push(cells.next().unwrap_or_default().to_string());
            let row = cells
                .map(|c| match c {
                    "1" => Ok(true),
                    "0" => Ok(false),
                    other => Err(Error::Parse(format!("design row {}: vote {other:?} is not 0 or 1", i + 1))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::with_ids(design_ids, judge_ids, &rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("design");
        for j in &self.judge_ids {
            out.push(',');
            out.push_str(j);
        }
        out.push('\n');
        for (d, id) in self.design_ids.iter().enumerate() {
            out.push_str(id);
            for &v in self.row(d) {
                out.push_str(if v { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }

    pub fn n_designs(&self) -> usize {
        self.design_ids.len()
    }

    pub fn n_judges(&self) -> usize {
        self.judge_ids.len()
    }

    pub fn design_ids(&self) -> &[String] {
        &self.design_ids
    }

    pub fn judge_ids(&self) -> &[String] {
        &self.judge_ids
    }

    pub fn row(&self, design: usize) -> &[bool] {
        let n = self.n_judges();
        &self.votes[design * n..(design + 1) * n]
    }

    pub fn vote(&self, design: usize, judge: usize) -> bool {
        self.row(design)[judge]
    }

    pub fn set_vote(&mut self, design: usize, judge: usize, like: bool) {
        let n = self.n_judges();
        self.votes[design * n + judge] = like;
    }

    fn like_counts(&self) -> Vec<usize> {
        (0..self.n_designs())
            .map(|d| self.row(d).iter().filter(|&&v| v).count())
            .collect()
    }
}

pub fn like_rates(m: &AnnotationMatrix) -> Vec<f64> {
    let n = m.n_judges() as f64;
    m.like_counts().into_iter().map(|c| c as f64 / n).collect()
}

/// Largest integer `x` in `[0, 100]` such that at least `x`% of designs have
/// a like-rate of at least `x`%. Comparisons are done in integers.
pub fn likeability_index(m: &AnnotationMatrix) -> u32 {
    let counts = m.like_counts();
    let (n_designs, n_judges) = (m.n_designs(), m.n_judges());
    (0..=100u32)
        .rev()
        .find(|&x| {
            let x = x as usize;
            let liked = counts.iter().filter(|&&c| c * 100 >= x * n_judges).count();
            liked * 100 >= x * n_designs
        })
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LikeabilityReport {
    pub index: u32,
    pub like_rates: Vec<f64>,
}

pub fn report(m: &AnnotationMatrix) -> LikeabilityReport {
    LikeabilityReport {
        index: likeability_index(m),
        like_rates: like_rates(m),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareRow {
    pub label: String,
    pub index: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0).max(6);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:>16}", "method", "likeability-index");
        for r in &self.rows {
            let _ = writeln!(out, "{:<width$}  {:>16}", r.label, r.index);
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["method", "likeability_index"])?;
        for r in &self.rows {
            w.write_record([r.label.as_str(), &r.index.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn compare_report(entries: &[(String, AnnotationMatrix)]) -> Result<CompareReport> {
    if entries.is_empty() {
        return Err(Error::invalid("entries", "nothing to compare"));
    }
    Ok(CompareReport {
        rows: entries
            .iter()
            .map(|(label, m)| CompareRow {
                label: label.clone(),
                index: likeability_index(m),
            })
            .collect(),
    })
}
