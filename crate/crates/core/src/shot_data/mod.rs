//! Shot records, dataset ingestion and the synthetic-data oracle.
//!
//! The record model follows event-data feeds: a shot is a location in pitch
//! meters, a body part, a penalty flag and a goal/no-goal label, tagged with
//! competition/season/match/player identifiers. All coordinates are
//! normalized to the canonical 105x68 left-to-right pitch on load.

mod csv_io;
mod synthetic;

pub use csv_io::{load_csv, write_csv, CoordSpec, IngestReport};
pub use synthetic::{generate_synthetic, GroundTruth, LogisticSurfaceParams};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::{real, Real};
use crate::pitch::{PitchPoint, PITCH_LENGTH, PITCH_WIDTH};

/// Body part used to take the shot. Exactly one category holds per shot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BodyPart {
    Foot,
    Head,
    Other,
}

impl BodyPart {
    pub fn as_str(&self) -> &'static str {
        match self {
            BodyPart::Foot => "foot",
            BodyPart::Head => "head",
            BodyPart::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "foot" => Some(BodyPart::Foot),
            "head" => Some(BodyPart::Head),
            "other" => Some(BodyPart::Other),
            _ => None,
        }
    }
}

/// One shot event in canonical pitch coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotRecord<S> {
    /// Pitch length coordinate in meters, [0, 105], attacking left to right.
    pub x: S,
    /// Pitch width coordinate in meters, [0, 68].
    pub y: S,
    pub body_part: BodyPart,
    pub is_penalty: bool,
    pub is_goal: bool,
    pub competition: String,
    pub season: String,
    pub match_id: String,
    pub player_id: String,
}

impl<S: Real> ShotRecord<S> {
    pub fn location(&self) -> PitchPoint<S> {
        PitchPoint::new(self.x, self.y)
    }

    /// Checks the record invariants: coordinates in bounds and penalties
    /// taken with the foot.
    pub fn validate(&self) -> Result<(), ShotDataError> {
        if !(self.x >= S::zero()
            && self.x <= real(PITCH_LENGTH)
            && self.y >= S::zero()
            && self.y <= real(PITCH_WIDTH))
        {
            return Err(ShotDataError::OutOfRangeCoordinate {
                line: 0,
                x: self.x.as_f64(),
                y: self.y.as_f64(),
            });
        }
        if self.is_penalty && self.body_part != BodyPart::Foot {
            return Err(ShotDataError::PenaltyBodyPart {
                body_part: self.body_part.as_str(),
            });
        }
        Ok(())
    }
}

/// An ordered collection of shots with a provenance tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset<S> {
    pub records: Vec<ShotRecord<S>>,
    /// Source descriptor: file path or generator seed.
    pub provenance: String,
}

impl<S: Real> Dataset<S> {
    pub fn new(records: Vec<ShotRecord<S>>, provenance: impl Into<String>) -> Self {
        Self {
            records,
            provenance: provenance.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Season tags present in the dataset, sorted.
    pub fn seasons(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.records.iter().map(|r| r.season.as_str()).collect();
        set.into_iter().map(String::from).collect()
    }
}

/// Errors from dataset construction and ingestion.
#[derive(Debug, Error)]
pub enum ShotDataError {
    #[error("missing column `{column}` in header")]
    MissingColumn { column: String },
    #[error("coordinate out of range after normalization at line {line}: ({x}, {y})")]
    OutOfRangeCoordinate { line: usize, x: f64, y: f64 },
    #[error("unknown {field} value `{value}` at line {line}")]
    InvalidEnum {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("penalty shot recorded with body part `{body_part}`")]
    PenaltyBodyPart { body_part: &'static str },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("season split leaves the {side} side empty")]
    EmptyPartition { side: &'static str },
    #[error("synthetic generation needs n >= 1")]
    InvalidCount,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Splits a dataset into (train, test) by season tag.
///
/// The test side contains exactly the records whose season is in
/// `test_seasons`; order is preserved on both sides.
pub fn split_by_season<S: Real>(
    d: &Dataset<S>,
    test_seasons: &BTreeSet<String>,
) -> Result<(Dataset<S>, Dataset<S>), ShotDataError> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for r in &d.records {
        if test_seasons.contains(&r.season) {
            test.push(r.clone());
        } else {
            train.push(r.clone());
        }
    }
    if train.is_empty() {
        return Err(ShotDataError::EmptyPartition { side: "train" });
    }
    if test.is_empty() {
        return Err(ShotDataError::EmptyPartition { side: "test" });
    }
    Ok((
        Dataset::new(train, format!("{} [train]", d.provenance)),
        Dataset::new(test, format!("{} [test]", d.provenance)),
    ))
}

/// Proportion of shots that are goals.
pub fn class_rate<S: Real>(d: &Dataset<S>) -> Result<S, ShotDataError> {
    if d.is_empty() {
        return Err(ShotDataError::EmptyDataset);
    }
    let goals = d.records.iter().filter(|r| r.is_goal).count();
    Ok(real::<S>(goals as f64) / real(d.len() as f64))
}
