//! Fuzzy pitch zones.
//!
//! Shot locations are represented by their graded membership to 16 named
//! zones. Zone centers are seeded manually (a Caley-style grid over the
//! attacking zone plus four goal-line centers for tight angles) and can be
//! refined with c-means iterations over training locations. Membership of a
//! location to zone i is the classic c-means weight
//! `u_i = 1 / sum_k (d_i / d_k)^(2/(m-1))`, which sums to one across zones.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::{real, Real};
use crate::pitch::{in_penalty_area, penalty_spot, PitchPoint};
use crate::shot_data::Dataset;

/// Number of zones. The interaction whitelist and the feature layout both
/// assume this layout, so it is fixed.
pub const ZONE_COUNT: usize = 16;
/// Zones whose seed centers lie inside the penalty area.
pub const PENALTY_AREA_ZONE_COUNT: usize = 12;
/// Membership exponent of the hard-assignment variant.
pub const HARD_EXPONENT: f64 = 1.001;
/// Squared-distance threshold under which a location counts as coinciding
/// with a center (distance < 1e-12 m).
const COINCIDENT_D2: f64 = 1e-24;
/// Default early-exit threshold on center movement during refinement.
pub const DEFAULT_MOVEMENT_TOL: f64 = 1e-9;

/// Seed table: name, x, y. Twelve grid centers (eight inside the penalty
/// area, four covering the edge-of-box and long-range areas beyond it) and
/// four goal-line centers inside the penalty-area width, so exactly twelve
/// centers fall in the closed penalty-area rectangle. zone_6 sits on the
/// penalty spot and zone_14 is the farthest center from goal.
const DEFAULT_CENTERS: [(&str, f64, f64); ZONE_COUNT] = [
    ("zone_1", 101.5, 34.0),  // six-yard box, central
    ("zone_2", 101.5, 24.5),  // six-yard depth, right
    ("zone_3", 101.5, 43.5),  // six-yard depth, left
    ("zone_4", 94.0, 22.0),   // penalty-spot depth, right
    ("zone_5", 94.0, 46.0),   // penalty-spot depth, left
    ("zone_6", 94.0, 34.0),   // penalty spot
    ("zone_7", 90.0, 26.0),   // deep box, right half-space
    ("zone_8", 90.0, 42.0),   // deep box, left half-space
    ("zone_9", 105.0, 31.0),  // goal line, right post
    ("zone_10", 105.0, 37.0), // goal line, left post
    ("zone_11", 105.0, 20.0), // goal line, tight angle right
    ("zone_12", 105.0, 48.0), // goal line, tight angle left
    ("zone_13", 85.0, 20.0),  // outside the box, wide right
    ("zone_14", 77.0, 34.0),  // long range, central
    ("zone_15", 85.0, 48.0),  // outside the box, wide left
    ("zone_16", 85.0, 34.0),  // edge of the box, central
];

#[derive(Debug, Error)]
pub enum ZoneError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("zone model is already frozen")]
    AlreadyFrozen,
    #[error("invalid center table: {0}")]
    InvalidCenterTable(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Membership of one location to the 16 zones. Components lie in [0, 1]
/// and sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership<S> {
    values: Vec<S>,
}

impl<S: Real> Membership<S> {
    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    /// Index of the largest component.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        best
    }
}

/// The 16-zone model: centers, membership exponent and frozen flag.
///
/// `penalty_area_zone_ids` and `penalty_spot_zone_id` are fixed from the
/// seed table and survive center refinement; zone identity comes from the
/// manual table, not from where a refined center drifts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneModel<S> {
    centers: Vec<PitchPoint<S>>,
    exponent: S,
    frozen: bool,
    zone_names: Vec<String>,
    penalty_area_zone_ids: Vec<usize>,
    penalty_spot_zone_id: usize,
}

/// Trace of one refinement run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZoneFitReport<S> {
    pub iterations_requested: usize,
    pub iterations_run: usize,
    /// Fuzzy objective `sum_ij u_ij^m d_ij^2` per iteration, evaluated at the
    /// centers the memberships were computed against.
    pub objective: Vec<S>,
    pub final_movement: S,
}

impl<S: Real> ZoneModel<S> {
    /// Builds an unfrozen model from a 16-row center table.
    ///
    /// Validates the invariants the rest of the pipeline relies on: 16
    /// in-bounds centers, unique names, exponent > 1 and exactly 12 centers
    /// inside the closed penalty-area rectangle.
    pub fn from_centers(
        names: Vec<String>,
        centers: Vec<PitchPoint<S>>,
        exponent: S,
    ) -> Result<Self, ZoneError> {
        if centers.len() != ZONE_COUNT || names.len() != ZONE_COUNT {
            return Err(ZoneError::InvalidCenterTable(format!(
                "expected {} rows, got {}",
                ZONE_COUNT,
                centers.len()
            )));
        }
        if exponent <= S::one() {
            return Err(ZoneError::InvalidCenterTable(
                "membership exponent must be > 1".into(),
            ));
        }
        for (name, c) in names.iter().zip(&centers) {
            if !c.in_bounds() {
                return Err(ZoneError::InvalidCenterTable(format!(
                    "center {name} at ({}, {}) is off the pitch",
                    c.x, c.y
                )));
            }
        }
        for i in 1..names.len() {
            if names[..i].contains(&names[i]) {
                return Err(ZoneError::InvalidCenterTable(format!(
                    "duplicate zone name {}",
                    names[i]
                )));
            }
        }
        let penalty_area_zone_ids: Vec<usize> = centers
            .iter()
            .enumerate()
            .filter(|(_, c)| in_penalty_area(*c))
            .map(|(i, _)| i)
            .collect();
        if penalty_area_zone_ids.len() != PENALTY_AREA_ZONE_COUNT {
            return Err(ZoneError::InvalidCenterTable(format!(
                "{} centers fall inside the penalty area, expected {}",
                penalty_area_zone_ids.len(),
                PENALTY_AREA_ZONE_COUNT
            )));
        }
        let spot = penalty_spot::<S>();
        let penalty_spot_zone_id = centers
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.dist2(&spot).partial_cmp(&b.dist2(&spot)).expect("finite")
            })
            .map(|(i, _)| i)
            .expect("non-empty centers");
        if !penalty_area_zone_ids.contains(&penalty_spot_zone_id) {
            return Err(ZoneError::InvalidCenterTable(
                "penalty-spot zone is not a penalty-area zone".into(),
            ));
        }
        Ok(Self {
            centers,
            exponent,
            frozen: false,
            zone_names: names,
            penalty_area_zone_ids,
            penalty_spot_zone_id,
        })
    }

    pub fn centers(&self) -> &[PitchPoint<S>] {
        &self.centers
    }

    pub fn exponent(&self) -> S {
        self.exponent
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn zone_names(&self) -> &[String] {
        &self.zone_names
    }

    pub fn penalty_area_zone_ids(&self) -> &[usize] {
        &self.penalty_area_zone_ids
    }

    pub fn penalty_spot_zone_id(&self) -> usize {
        self.penalty_spot_zone_id
    }

    /// Index of the nearest center.
    pub fn nearest_zone(&self, location: PitchPoint<S>) -> usize {
        let mut best = 0;
        let mut best_d2 = self.centers[0].dist2(&location);
        for (i, c) in self.centers.iter().enumerate().skip(1) {
            let d2 = c.dist2(&location);
            if d2 < best_d2 {
                best = i;
                best_d2 = d2;
            }
        }
        best
    }

    /// c-means membership of a location to all 16 zones.
    pub fn membership(&self, location: PitchPoint<S>) -> Membership<S> {
        let mut d2 = [S::zero(); ZONE_COUNT];
        for (slot, c) in d2.iter_mut().zip(&self.centers) {
            *slot = c.dist2(&location);
        }
        let mut values = vec![S::zero(); ZONE_COUNT];
        membership_from_d2(&d2, self.exponent, &mut values);
        Membership { values }
    }

    /// Copy with the hard-assignment exponent (1.001), all else unchanged.
    pub fn hard_variant(&self) -> Self {
        Self {
            exponent: real(HARD_EXPONENT),
            ..self.clone()
        }
    }

    /// Copy with an arbitrary exponent (> 1), all else unchanged.
    pub fn with_exponent(&self, exponent: S) -> Result<Self, ZoneError> {
        if exponent <= S::one() {
            return Err(ZoneError::InvalidCenterTable(
                "membership exponent must be > 1".into(),
            ));
        }
        Ok(Self {
            exponent,
            ..self.clone()
        })
    }

    /// Frozen copy with centers untouched (fixed-centers mode).
    pub fn freeze(&self) -> Self {
        Self {
            frozen: true,
            ..self.clone()
        }
    }

    /// Refines centers with c-means iterations over the training locations
    /// and returns the frozen model.
    ///
    /// `iterations = 0` freezes the seed centers unchanged. Iteration exits
    /// early once the largest center movement drops below
    /// [`DEFAULT_MOVEMENT_TOL`]; see [`ZoneModel::fit_with_tol`] to control
    /// that threshold.
    pub fn fit(
        &self,
        train: &Dataset<S>,
        iterations: usize,
    ) -> Result<(Self, ZoneFitReport<S>), ZoneError> {
        self.fit_with_tol(train, iterations, real(DEFAULT_MOVEMENT_TOL))
    }

    /// As [`ZoneModel::fit`] with an explicit movement threshold; a
    /// non-positive threshold disables the early exit.
    pub fn fit_with_tol(
        &self,
        train: &Dataset<S>,
        iterations: usize,
        movement_tol: S,
    ) -> Result<(Self, ZoneFitReport<S>), ZoneError> {
        if self.frozen {
            return Err(ZoneError::AlreadyFrozen);
        }
        if train.is_empty() {
            return Err(ZoneError::EmptyDataset);
        }
        let locations: Vec<PitchPoint<S>> = train.records.iter().map(|r| r.location()).collect();
        let n = locations.len();
        let m = self.exponent;

        let mut centers = self.centers.clone();
        let mut d2 = vec![S::zero(); n * ZONE_COUNT];
        let mut um = vec![S::zero(); n * ZONE_COUNT];
        let mut objective = Vec::new();
        let mut iterations_run = 0;
        let mut final_movement = S::zero();

        for _ in 0..iterations {
            // Membership pass, parallel over shots; each row is independent
            // so the buffers come out identical under any scheduling.
            let centers_now = &centers;
            d2.par_chunks_mut(ZONE_COUNT)
                .zip(um.par_chunks_mut(ZONE_COUNT))
                .zip(locations.par_iter())
                .for_each(|((d2_row, um_row), loc)| {
                    for (slot, c) in d2_row.iter_mut().zip(centers_now) {
                        *slot = c.dist2(loc);
                    }
                    membership_from_d2(d2_row, m, um_row);
                    for u in um_row.iter_mut() {
                        *u = fuzzy_weight(*u, m);
                    }
                });

            // Objective and center update, sequential in row order.
            let mut obj = S::zero();
            let mut num_x = [S::zero(); ZONE_COUNT];
            let mut num_y = [S::zero(); ZONE_COUNT];
            let mut den = [S::zero(); ZONE_COUNT];
            for (row, loc) in locations.iter().enumerate() {
                let base = row * ZONE_COUNT;
                for z in 0..ZONE_COUNT {
                    let w = um[base + z];
                    obj = obj + w * d2[base + z];
                    num_x[z] = num_x[z] + w * loc.x;
                    num_y[z] = num_y[z] + w * loc.y;
                    den[z] = den[z] + w;
                }
            }
            objective.push(obj);

            let mut movement = S::zero();
            for z in 0..ZONE_COUNT {
                if den[z] > S::zero() {
                    let updated = PitchPoint::new(num_x[z] / den[z], num_y[z] / den[z]);
                    movement = movement.max(centers[z].dist(&updated));
                    centers[z] = updated;
                }
            }
            final_movement = movement;
            iterations_run += 1;
            if movement_tol > S::zero() && movement < movement_tol {
                break;
            }
        }

        let model = Self {
            centers,
            frozen: true,
            ..self.clone()
        };
        Ok((
            model,
            ZoneFitReport {
                iterations_requested: iterations,
                iterations_run,
                objective,
                final_movement,
            },
        ))
    }

    /// Writes the center table as CSV (`name,x,y`).
    pub fn write_centers_csv(&self, path: &Path) -> Result<(), ZoneError> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["name", "x", "y"])?;
        for (name, c) in self.zone_names.iter().zip(&self.centers) {
            w.write_record([
                name.clone(),
                format!("{}", c.x.as_f64()),
                format!("{}", c.y.as_f64()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a 16-row center table (`name,x,y`) into an unfrozen model with
    /// the default exponent.
    pub fn from_centers_csv(path: &Path) -> Result<Self, ZoneError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
        let headers = reader.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| ZoneError::InvalidCenterTable(format!("missing column {name}")))
        };
        let (ni, xi, yi) = (col("name")?, col("x")?, col("y")?);
        let mut names = Vec::new();
        let mut centers = Vec::new();
        for row in reader.records() {
            let row = row?;
            let parse = |i: usize| -> Result<f64, ZoneError> {
                row.get(i)
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .ok_or_else(|| {
                        ZoneError::InvalidCenterTable(format!("bad numeric field in row {row:?}"))
                    })
            };
            names.push(row.get(ni).unwrap_or("").to_string());
            centers.push(PitchPoint::new(real::<S>(parse(xi)?), real::<S>(parse(yi)?)));
        }
        Self::from_centers(names, centers, real(2.0))
    }
}

/// The documented default 16-center table with exponent 2, unfrozen.
pub fn default_centers<S: Real>() -> ZoneModel<S> {
    let names = DEFAULT_CENTERS.iter().map(|(n, _, _)| n.to_string()).collect();
    let centers = DEFAULT_CENTERS
        .iter()
        .map(|(_, x, y)| PitchPoint::new(real(*x), real(*y)))
        .collect();
    ZoneModel::from_centers(names, centers, real(2.0)).expect("default table is valid")
}

#[inline]
fn fuzzy_weight<S: Real>(u: S, m: S) -> S {
    if m == real(2.0) {
        u * u
    } else {
        u.powf(m)
    }
}

/// c-means membership from squared distances to each center.
///
/// Writes `u_i = (d2_min / d2_i)^(1/(m-1)) / sum_k (d2_min / d2_k)^(1/(m-1))`
/// into `out`. All ratios are <= 1 and the shared denominator is >= 1, so the
/// components sum to one at machine precision regardless of the exponent. A
/// location within 1e-12 m of a center gets that zone one-hot.
pub fn membership_from_d2<S: Real>(d2: &[S], m: S, out: &mut [S]) {
    debug_assert_eq!(d2.len(), out.len());
    let coincident = real::<S>(COINCIDENT_D2);
    if let Some(hit) = d2.iter().position(|&d| d < coincident) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = if i == hit { S::one() } else { S::zero() };
        }
        return;
    }
    let mut d2_min = d2[0];
    for &d in &d2[1..] {
        if d < d2_min {
            d2_min = d;
        }
    }
    // Exponent on squared-distance ratios: (d_i/d_k)^(2/(m-1)) = (d2 ratio)^(1/(m-1)).
    let inv = S::one() / (m - S::one());
    let fast_linear = inv == S::one();
    let mut sum = S::zero();
    for (slot, &d) in out.iter_mut().zip(d2) {
        let ratio = d2_min / d;
        let w = if fast_linear { ratio } else { ratio.powf(inv) };
        *slot = w;
        sum = sum + w;
    }
    for slot in out.iter_mut() {
        *slot = *slot / sum;
    }
}

/// Convenience wrapper over [`membership_from_d2`] for arbitrary center
/// counts (the 2-center reductions in the tests use it directly).
pub fn cmeans_membership<S: Real>(d2: &[S], m: S) -> Vec<S> {
    let mut out = vec![S::zero(); d2.len()];
    membership_from_d2(d2, m, &mut out);
    out
}
