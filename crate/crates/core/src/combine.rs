//! Weighted score combination, ranking, and rank correlation.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Interner, ScoreVector};

/// One weight per score component. Any finite reals are allowed,
/// including zero and negative values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightVector {
    pub publication: f64,
    pub age: f64,
    pub pagerank: f64,
    pub author: f64,
    pub venue: f64,
    pub institution: f64,
}

impl Default for WeightVector {
    fn default() -> Self {
        Self {
            publication: 2.5,
            age: 0.1,
            pagerank: 1.0,
            author: 1.0,
            venue: 0.1,
            institution: 0.01,
        }
    }
}

impl WeightVector {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.publication,
            self.age,
            self.pagerank,
            self.author,
            self.venue,
            self.institution,
        ]
    }

    pub fn from_array(values: [f64; 6]) -> Self {
        Self {
            publication: values[0],
            age: values[1],
            pagerank: values[2],
            author: values[3],
            venue: values[4],
            institution: values[5],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.as_array().iter().all(|w| w.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidConfig("weights must be finite".into()))
        }
    }

    /// Weighted sum of the six components, with Neumaier compensation
    /// so the result is the correctly rounded value of the exact sum.
    /// Plain left-to-right addition would drift by an ulp on sums that
    /// users legitimately compare against decimal literals.
    pub fn dot(&self, scores: &ScoreVector) -> f64 {
        let weights = self.as_array();
        let components = scores.as_array();
        let mut total = 0.0f64;
        let mut compensation = 0.0f64;
        for i in 0..6 {
            let term = weights[i] * components[i];
            let sum = total + term;
            if total.abs() >= term.abs() {
                compensation += (total - sum) + term;
            } else {
                compensation += (term - sum) + total;
            }
            total = sum;
        }
        let result = total + compensation;
        // Collapse -0.0 so equal-scoring papers tie cleanly.
        if result == 0.0 {
            0.0
        } else {
            result
        }
    }
}

/// Optional per-component rescaling applied before weighting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    None,
    /// Rescale each component to [0, 1] across the corpus; a component
    /// that is constant over all papers maps to 0.
    MinMax,
}

fn minmax_rescale(score_vectors: &[ScoreVector]) -> Vec<ScoreVector> {
    let mut lo = [f64::INFINITY; 6];
    let mut hi = [f64::NEG_INFINITY; 6];
    for sv in score_vectors {
        let values = sv.as_array();
        for i in 0..6 {
            lo[i] = lo[i].min(values[i]);
            hi[i] = hi[i].max(values[i]);
        }
    }
    score_vectors
        .iter()
        .map(|sv| {
            let values = sv.as_array();
            let mut out = [0.0f64; 6];
            for i in 0..6 {
                let range = hi[i] - lo[i];
                out[i] = if range > 0.0 {
                    (values[i] - lo[i]) / range
                } else {
                    0.0
                };
            }
            ScoreVector::from_array(out)
        })
        .collect()
}

/// Collapses each paper's score vector to a single combined score.
pub fn combine(
    score_vectors: &[ScoreVector],
    weights: &WeightVector,
    normalization: Normalization,
) -> Result<Vec<f64>> {
    weights.validate()?;
    match normalization {
        Normalization::None => Ok(score_vectors.iter().map(|sv| weights.dot(sv)).collect()),
        Normalization::MinMax => {
            let rescaled = minmax_rescale(score_vectors);
            Ok(rescaled.iter().map(|sv| weights.dot(sv)).collect())
        }
    }
}

/// One row of a ranking: raw paper id, combined score, 1-based rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub paper: String,
    pub score: f64,
    pub rank: u32,
}

/// Papers ordered by non-increasing score; equal scores are ordered by
/// ascending raw paper id (bytewise), so ranks 1..=N are unambiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    entries: Vec<RankedEntry>,
}

impl RankedList {
    /// Ranks papers by their combined scores. `combined[i]` belongs to
    /// the paper with dense index `i`.
    pub fn from_scores(papers: &Interner, combined: &[f64]) -> Self {
        assert_eq!(papers.len(), combined.len());
        let mut order: Vec<u32> = (0..combined.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            combined[b as usize]
                .total_cmp(&combined[a as usize])
                .then_with(|| papers.name(a).cmp(papers.name(b)))
        });
        let entries = order
            .into_iter()
            .enumerate()
            .map(|(i, idx)| RankedEntry {
                paper: papers.name(idx).to_owned(),
                score: combined[idx as usize],
                rank: (i + 1) as u32,
            })
            .collect();
        Self { entries }
    }

    /// Builds a list from already-ordered (paper, score) rows, e.g. a
    /// parsed ranking file. Scores must be non-increasing and finite,
    /// and ids must be unique.
    pub fn from_rows(rows: Vec<(String, f64)>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len());
        let mut seen = std::collections::HashSet::new();
        let mut previous = f64::INFINITY;
        for (i, (paper, score)) in rows.into_iter().enumerate() {
            if !score.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "ranking row {}: score {score} is not finite",
                    i + 1
                )));
            }
            if score > previous {
                return Err(Error::InvalidConfig(format!(
                    "ranking row {}: scores increase ({score} after {previous})",
                    i + 1
                )));
            }
            previous = score;
            if !seen.insert(paper.clone()) {
                return Err(Error::DuplicatePaperId(paper));
            }
            entries.push(RankedEntry {
                paper,
                score,
                rank: (i + 1) as u32,
            });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes `paper_id \t score` rows in rank order. Scores are
    /// printed with 17 significant digits so they parse back to the
    /// identical f64.
    pub fn write_tsv<W: Write>(&self, mut writer: W) -> io::Result<()> {
        for entry in &self.entries {
            writeln!(writer, "{}\t{:.16e}", entry.paper, entry.score)?;
        }
        Ok(())
    }

    /// Parses what [`Self::write_tsv`] produces.
    pub fn read_tsv<R: BufRead>(reader: R) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let mut fields = line.split('\t');
            let (Some(paper), Some(score), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::InvalidConfig(format!(
                    "ranking row {}: expected 2 tab-separated fields",
                    i + 1
                )));
            };
            if paper.is_empty() {
                return Err(Error::InvalidConfig(format!(
                    "ranking row {}: empty paper id",
                    i + 1
                )));
            }
            let score: f64 = score.parse().map_err(|_| {
                Error::InvalidConfig(format!("ranking row {}: bad score '{score}'", i + 1))
            })?;
            rows.push((paper.to_owned(), score));
        }
        Self::from_rows(rows)
    }
}

/// Combines and ranks in one step.
pub fn rank_papers(
    papers: &Interner,
    score_vectors: &[ScoreVector],
    weights: &WeightVector,
    normalization: Normalization,
) -> Result<RankedList> {
    let combined = combine(score_vectors, weights, normalization)?;
    Ok(RankedList::from_scores(papers, combined.as_slice()))
}

/// Spearman correlation of the ordinal ranks of two rankings over the
/// same paper set: `1 - 6 * sum(d^2) / (n * (n^2 - 1))`.
pub fn rank_correlation(a: &RankedList, b: &RankedList) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::MismatchedPaperSets);
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewPapers);
    }
    let positions: std::collections::HashMap<&str, u32> = b
        .entries()
        .iter()
        .map(|e| (e.paper.as_str(), e.rank))
        .collect();
    let mut sum_d2: u128 = 0;
    for entry in a.entries() {
        let Some(&other) = positions.get(entry.paper.as_str()) else {
            return Err(Error::MismatchedPaperSets);
        };
        let d = entry.rank as i64 - other as i64;
        sum_d2 += (d * d) as u128;
    }
    let n = n as u128;
    let denominator = n * (n * n - 1);
    Ok(1.0 - (6 * sum_d2) as f64 / denominator as f64)
}
