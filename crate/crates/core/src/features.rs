//! Feature vectors for shots under the three location representations.
//!
//! Zone specs concatenate the 16 zone memberships with four indicator
//! features; the distance-angle spec replaces the memberships with the
//! distance to the goal center and the goal-mouth angle.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::Real;
use crate::pitch::{angle_to_goal, dist_to_goal};
use crate::shot_data::{BodyPart, Dataset, ShotRecord};
use crate::zones::{ZoneModel, ZONE_COUNT};

/// Indicator features shared by every representation.
pub const INDICATOR_NAMES: [&str; 4] = [
    "bodypart_foot_a0",
    "bodypart_head_a0",
    "bodypart_other_a0",
    "type_shot_penalty_a0",
];
pub const DIST_FEATURE: &str = "start_dist_to_goal";
pub const ANGLE_FEATURE: &str = "start_angle_to_goal";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    SoftZones,
    HardZones,
    DistanceAngle,
}

impl Representation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Representation::SoftZones => "soft-zones",
            Representation::HardZones => "hard-zones",
            Representation::DistanceAngle => "distance-angle",
        }
    }
}

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("zone representation needs a frozen zone model")]
    MissingZoneModel,
    #[error("zone model must be frozen before featurization")]
    UnfrozenZoneModel,
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("featurization failed at row {row}: {source}")]
    AtRow {
        row: usize,
        #[source]
        source: Box<FeatureError>,
    },
}

/// A representation choice bound to its (frozen) zone model and the derived
/// feature-name layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpec<S> {
    representation: Representation,
    zone_model: Option<ZoneModel<S>>,
    feature_names: Vec<String>,
}

impl<S: Real> FeatureSpec<S> {
    fn zone_spec(representation: Representation, zone_model: ZoneModel<S>) -> Result<Self, FeatureError> {
        if !zone_model.is_frozen() {
            return Err(FeatureError::UnfrozenZoneModel);
        }
        let mut feature_names: Vec<String> = zone_model.zone_names().to_vec();
        feature_names.extend(INDICATOR_NAMES.iter().map(|s| s.to_string()));
        Ok(Self {
            representation,
            zone_model: Some(zone_model),
            feature_names,
        })
    }

    pub fn soft_zones(zone_model: ZoneModel<S>) -> Result<Self, FeatureError> {
        Self::zone_spec(Representation::SoftZones, zone_model)
    }

    pub fn hard_zones(zone_model: ZoneModel<S>) -> Result<Self, FeatureError> {
        Self::zone_spec(Representation::HardZones, zone_model)
    }

    pub fn distance_angle() -> Self {
        let mut feature_names = vec![DIST_FEATURE.to_string(), ANGLE_FEATURE.to_string()];
        feature_names.extend(INDICATOR_NAMES.iter().map(|s| s.to_string()));
        Self {
            representation: Representation::DistanceAngle,
            zone_model: None,
            feature_names,
        }
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn zone_model(&self) -> Option<&ZoneModel<S>> {
        self.zone_model.as_ref()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn feature_count(&self) -> usize {
        self.feature_names.len()
    }

    /// Builds the feature vector for one shot.
    pub fn featurize(&self, s: &ShotRecord<S>) -> Result<FeatureVector<S>, FeatureError> {
        let mut values = Vec::with_capacity(self.feature_count());
        match self.representation {
            Representation::SoftZones | Representation::HardZones => {
                let zm = self.zone_model.as_ref().ok_or(FeatureError::MissingZoneModel)?;
                values.extend(zm.membership(s.location()).into_values());
            }
            Representation::DistanceAngle => {
                let loc = s.location();
                values.push(dist_to_goal(&loc));
                values.push(angle_to_goal(&loc));
            }
        }
        let one = S::one();
        let zero = S::zero();
        values.push(if s.body_part == BodyPart::Foot { one } else { zero });
        values.push(if s.body_part == BodyPart::Head { one } else { zero });
        values.push(if s.body_part == BodyPart::Other { one } else { zero });
        values.push(if s.is_penalty { one } else { zero });
        Ok(FeatureVector { values })
    }

    /// Featurizes a whole dataset, preserving row order; labels are the
    /// goal flags.
    pub fn featurize_dataset(
        &self,
        d: &Dataset<S>,
    ) -> Result<(FeatureMatrix<S>, Vec<bool>), FeatureError> {
        if d.is_empty() {
            return Err(FeatureError::EmptyDataset);
        }
        let n_cols = self.feature_count();
        let mut data = Vec::with_capacity(d.len() * n_cols);
        let mut labels = Vec::with_capacity(d.len());
        for (row, record) in d.records.iter().enumerate() {
            let v = self.featurize(record).map_err(|e| FeatureError::AtRow {
                row,
                source: Box::new(e),
            })?;
            data.extend(v.values);
            labels.push(record.is_goal);
        }
        Ok((
            FeatureMatrix {
                feature_names: self.feature_names.clone(),
                n_rows: d.len(),
                data,
            },
            labels,
        ))
    }
}

/// Feature values for one shot, aligned with the spec's feature names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<S> {
    values: Vec<S>,
}

impl<S: Real> FeatureVector<S> {
    pub fn from_values(values: Vec<S>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Row-major feature matrix with named columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix<S> {
    feature_names: Vec<String>,
    n_rows: usize,
    data: Vec<S>,
}

impl<S: Real> FeatureMatrix<S> {
    pub fn from_rows(feature_names: Vec<String>, rows: &[Vec<S>]) -> Self {
        let n_cols = feature_names.len();
        let mut data = Vec::with_capacity(rows.len() * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "row width mismatch");
            data.extend_from_slice(r);
        }
        Self {
            feature_names,
            n_rows: rows.len(),
            data,
        }
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.feature_names.len()
    }

    pub fn row(&self, i: usize) -> &[S] {
        let w = self.n_cols();
        &self.data[i * w..(i + 1) * w]
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.data[row * self.n_cols() + col]
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.n_rows).map(|r| self.get(r, col)).collect()
    }

    /// Writes the matrix as CSV with the feature names as header.
    pub fn write_csv(&self, path: &Path) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(self.feature_names.iter())?;
        for i in 0..self.n_rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{}", v.as_f64())).collect();
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shot_data::{generate_synthetic, GroundTruth};
    use crate::zones::default_centers;

    fn shot(x: f64, y: f64, body_part: BodyPart, is_penalty: bool) -> ShotRecord<f64> {
        ShotRecord {
            x,
            y,
            body_part,
            is_penalty,
            is_goal: false,
            competition: "SYN".into(),
            season: "s".into(),
            match_id: "m".into(),
            player_id: "p".into(),
        }
    }

    fn soft_spec() -> FeatureSpec<f64> {
        FeatureSpec::soft_zones(default_centers::<f64>().freeze()).unwrap()
    }

    #[test]
    fn shot_at_zone_center_is_one_hot_with_indicators() {
        let spec = soft_spec();
        let zm = default_centers::<f64>();
        let c = zm.centers()[2];
        let v = spec.featurize(&shot(c.x, c.y, BodyPart::Foot, false)).unwrap();
        assert_eq!(v.values()[2], 1.0);
        for (i, &val) in v.values()[..16].iter().enumerate() {
            if i != 2 {
                assert_eq!(val, 0.0);
            }
        }
        // bodypart_foot_a0 = 1, the rest 0.
        assert_eq!(&v.values()[16..], &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn headed_shot_sets_head_indicator_only() {
        let spec = soft_spec();
        let v = spec.featurize(&shot(94.0, 33.0, BodyPart::Head, false)).unwrap();
        assert_eq!(v.values()[16], 0.0); // foot
        assert_eq!(v.values()[17], 1.0); // head
        assert_eq!(v.values()[18], 0.0); // other
    }

    #[test]
    fn distance_angle_features() {
        let spec = FeatureSpec::<f64>::distance_angle();
        assert_eq!(
            spec.feature_names()[..2],
            [DIST_FEATURE.to_string(), ANGLE_FEATURE.to_string()]
        );
        let v = spec.featurize(&shot(94.0, 34.0, BodyPart::Foot, false)).unwrap();
        assert!((v.values()[0] - 11.0).abs() < 1e-12);
        assert!(v.values()[1] > 0.0 && v.values()[1] < std::f64::consts::PI);
    }

    #[test]
    fn unfrozen_zone_model_is_rejected() {
        let err = FeatureSpec::soft_zones(default_centers::<f64>()).unwrap_err();
        assert!(matches!(err, FeatureError::UnfrozenZoneModel));
    }

    #[test]
    fn dataset_featurization_dimensions_and_alignment() {
        let gt = GroundTruth::logistic(15);
        let (d, _) = generate_synthetic::<f64>(&gt, 200).unwrap();
        let spec = soft_spec();
        let (m, labels) = spec.featurize_dataset(&d).unwrap();
        assert_eq!(m.n_rows(), 200);
        assert_eq!(m.n_cols(), 20);
        assert_eq!(labels.len(), 200);
        for i in [0usize, 7, 199] {
            let v = spec.featurize(&d.records[i]).unwrap();
            assert_eq!(m.row(i), v.values());
            assert_eq!(labels[i], d.records[i].is_goal);
        }
    }

    #[test]
    fn all_penalty_dataset_sets_the_penalty_column() {
        let records = vec![shot(94.0, 34.0, BodyPart::Foot, true); 5];
        let d = Dataset::new(records, "t");
        let spec = soft_spec();
        let (m, _) = spec.featurize_dataset(&d).unwrap();
        let col = m.n_cols() - 1;
        for r in 0..m.n_rows() {
            assert_eq!(m.get(r, col), 1.0);
        }
    }

    #[test]
    fn zone_block_sums_to_one_and_ranges_hold() {
        let gt = GroundTruth::logistic(99);
        let (d, _) = generate_synthetic::<f64>(&gt, 500).unwrap();
        let spec = soft_spec();
        let da = FeatureSpec::<f64>::distance_angle();
        let max_dist = (105.0f64.powi(2) + 68.0f64.powi(2)).sqrt();
        for r in &d.records {
            let v = spec.featurize(r).unwrap();
            let zone_sum: f64 = v.values()[..16].iter().sum();
            assert!((zone_sum - 1.0).abs() < 1e-9);
            let exactly_one_bodypart: f64 = v.values()[16..19].iter().sum();
            assert_eq!(exactly_one_bodypart, 1.0);

            let w = da.featurize(r).unwrap();
            assert!(w.values()[0] >= 0.0 && w.values()[0] <= max_dist);
            assert!(w.values()[1] >= 0.0 && w.values()[1] <= std::f64::consts::PI);
        }
    }

    #[test]
    fn featurize_is_pure() {
        let spec = soft_spec();
        let s = shot(88.3, 41.2, BodyPart::Other, false);
        assert_eq!(spec.featurize(&s).unwrap(), spec.featurize(&s).unwrap());
    }

    #[test]
    fn matrix_csv_export_has_header() {
        let spec = soft_spec();
        let d = Dataset::new(vec![shot(94.0, 34.0, BodyPart::Foot, false)], "t");
        let (m, _) = spec.featurize_dataset(&d).unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        m.write_csv(f.path()).unwrap();
        let text = std::fs::read_to_string(f.path()).unwrap();
        assert!(text.starts_with("zone_1,"));
        assert!(text.contains("type_shot_penalty_a0"));
    }
}
