//! CSV ingestion and export for shot datasets.
//!
//! Schema (UTF-8, `.` decimal separator, booleans as 0/1):
//! `x,y,body_part,is_penalty,is_goal,competition,season,match_id,player_id`

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BodyPart, Dataset, ShotDataError, ShotRecord};
use crate::num::{real, Real};
use crate::pitch::{PITCH_LENGTH, PITCH_WIDTH};

const COLUMNS: [&str; 9] = [
    "x",
    "y",
    "body_part",
    "is_penalty",
    "is_goal",
    "competition",
    "season",
    "match_id",
    "player_id",
];

/// Coordinate convention of an input file: axis ranges and attack direction.
///
/// Coordinates are rescaled linearly onto the canonical 105x68 pitch; if the
/// data attacks right-to-left, the pitch is rotated 180 degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// True when the input data already attacks left to right.
    pub attack_left_to_right: bool,
}

impl CoordSpec {
    /// Native convention: meters on a 105x68 pitch, attacking left to right.
    pub fn native() -> Self {
        Self {
            x_min: 0.0,
            x_max: PITCH_LENGTH,
            y_min: 0.0,
            y_max: PITCH_WIDTH,
            attack_left_to_right: true,
        }
    }

    fn normalize(&self, x: f64, y: f64) -> (f64, f64) {
        let mut nx = (x - self.x_min) / (self.x_max - self.x_min) * PITCH_LENGTH;
        let mut ny = (y - self.y_min) / (self.y_max - self.y_min) * PITCH_WIDTH;
        if !self.attack_left_to_right {
            nx = PITCH_LENGTH - nx;
            ny = PITCH_WIDTH - ny;
        }
        (nx, ny)
    }
}

impl Default for CoordSpec {
    fn default() -> Self {
        Self::native()
    }
}

/// Statistics from one ingestion run.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct IngestReport {
    pub rows_read: usize,
    pub rows_accepted: usize,
    /// Shots accepted but located outside the attacking half (x < 52.5).
    pub outside_attacking_half: Vec<usize>,
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows_read: {}", self.rows_read)?;
        writeln!(f, "rows_accepted: {}", self.rows_accepted)?;
        writeln!(
            f,
            "outside_attacking_half: {}",
            self.outside_attacking_half.len()
        )?;
        for line in &self.outside_attacking_half {
            writeln!(f, "  flagged line {}: x < 52.5", line)?;
        }
        Ok(())
    }
}

fn parse_bool(s: &str, line: usize, field: &'static str) -> Result<bool, ShotDataError> {
    match s.trim() {
        "0" | "false" => Ok(false),
        "1" | "true" => Ok(true),
        other => Err(ShotDataError::InvalidEnum {
            line,
            field,
            value: other.to_string(),
        }),
    }
}

fn parse_float(s: &str, line: usize, field: &'static str) -> Result<f64, ShotDataError> {
    s.trim().parse::<f64>().map_err(|_| ShotDataError::InvalidEnum {
        line,
        field,
        value: s.to_string(),
    })
}

/// Loads a shot dataset from CSV, normalizing coordinates via `coord_spec`.
///
/// Errors are fatal and carry the 1-based data line number of the offending
/// row. On success every row becomes a record, in file order, and the report
/// flags accepted rows outside the attacking half.
pub fn load_csv<S: Real>(
    path: &Path,
    coord_spec: &CoordSpec,
) -> Result<(Dataset<S>, IngestReport), ShotDataError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    let mut index = [0usize; 9];
    for (i, col) in COLUMNS.iter().enumerate() {
        index[i] = headers
            .iter()
            .position(|h| h == *col)
            .ok_or_else(|| ShotDataError::MissingColumn {
                column: col.to_string(),
            })?;
    }

    let mut records = Vec::new();
    let mut report = IngestReport::default();
    for (row_idx, row) in reader.records().enumerate() {
        let line = row_idx + 1;
        let row = row?;
        report.rows_read += 1;
        let field = |i: usize| row.get(index[i]).unwrap_or("");

        let raw_x = parse_float(field(0), line, "x")?;
        let raw_y = parse_float(field(1), line, "y")?;
        let (x, y) = coord_spec.normalize(raw_x, raw_y);
        if !(0.0..=PITCH_LENGTH).contains(&x) || !(0.0..=PITCH_WIDTH).contains(&y) {
            return Err(ShotDataError::OutOfRangeCoordinate { line, x, y });
        }

        let body_part = BodyPart::parse(field(2)).ok_or_else(|| ShotDataError::InvalidEnum {
            line,
            field: "body_part",
            value: field(2).to_string(),
        })?;
        let record = ShotRecord {
            x: real::<S>(x),
            y: real::<S>(y),
            body_part,
            is_penalty: parse_bool(field(3), line, "is_penalty")?,
            is_goal: parse_bool(field(4), line, "is_goal")?,
            competition: field(5).to_string(),
            season: field(6).to_string(),
            match_id: field(7).to_string(),
            player_id: field(8).to_string(),
        };
        record.validate().map_err(|e| match e {
            ShotDataError::OutOfRangeCoordinate { x, y, .. } => {
                ShotDataError::OutOfRangeCoordinate { line, x, y }
            }
            other => other,
        })?;
        if x < PITCH_LENGTH / 2.0 {
            report.outside_attacking_half.push(line);
        }
        report.rows_accepted += 1;
        records.push(record);
    }

    Ok((
        Dataset::new(records, path.display().to_string()),
        report,
    ))
}

/// Writes a dataset in the canonical CSV schema.
///
/// Floats are printed with shortest round-trip formatting, so
/// `load_csv(write_csv(d))` reproduces coordinates exactly.
pub fn write_csv<S: Real>(d: &Dataset<S>, path: &Path) -> Result<(), ShotDataError> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(COLUMNS)?;
    for r in &d.records {
        writer.write_record([
            format!("{}", r.x.as_f64()),
            format!("{}", r.y.as_f64()),
            r.body_part.as_str().to_string(),
            if r.is_penalty { "1" } else { "0" }.to_string(),
            if r.is_goal { "1" } else { "0" }.to_string(),
            r.competition.clone(),
            r.season.clone(),
            r.match_id.clone(),
            r.player_id.clone(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
