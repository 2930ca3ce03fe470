//! Canonical pitch geometry.
//!
//! All coordinates in this crate live on a 105 m x 68 m pitch, attacking
//! left to right, with the goal center at (105, 34). Inputs in other
//! conventions are normalized on load (see [`crate::shot_data`]).

use serde::{Deserialize, Serialize};

use crate::num::{real, Real};

/// Pitch length in meters.
pub const PITCH_LENGTH: f64 = 105.0;
/// Pitch width in meters.
pub const PITCH_WIDTH: f64 = 68.0;
/// Goal mouth width in meters (posts at y = 34 +- 3.66).
pub const GOAL_WIDTH: f64 = 7.32;
/// y coordinate of the goal center.
pub const GOAL_CENTER_Y: f64 = PITCH_WIDTH / 2.0;
/// Penalty area depth from the goal line.
pub const PENALTY_AREA_DEPTH: f64 = 16.5;
/// Penalty area width (16.5 m beyond each post).
pub const PENALTY_AREA_WIDTH: f64 = GOAL_WIDTH + 2.0 * 16.5;
/// Penalty spot distance from the goal line.
pub const PENALTY_SPOT_DEPTH: f64 = 11.0;

/// A point on the pitch, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PitchPoint<S> {
    pub x: S,
    pub y: S,
}

impl<S: Real> PitchPoint<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    /// Squared Euclidean distance to another point.
    #[inline]
    pub fn dist2(&self, other: &Self) -> S {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Self) -> S {
        self.dist2(other).sqrt()
    }

    pub fn in_bounds(&self) -> bool {
        self.x >= S::zero()
            && self.x <= real(PITCH_LENGTH)
            && self.y >= S::zero()
            && self.y <= real(PITCH_WIDTH)
    }
}

/// Center of the goal mouth.
pub fn goal_center<S: Real>() -> PitchPoint<S> {
    PitchPoint::new(real(PITCH_LENGTH), real(GOAL_CENTER_Y))
}

/// The penalty spot, 11 m out from the goal line.
pub fn penalty_spot<S: Real>() -> PitchPoint<S> {
    PitchPoint::new(real(PITCH_LENGTH - PENALTY_SPOT_DEPTH), real(GOAL_CENTER_Y))
}

/// Whether a point lies in the closed penalty-area rectangle.
pub fn in_penalty_area<S: Real>(p: &PitchPoint<S>) -> bool {
    let x_min = real::<S>(PITCH_LENGTH - PENALTY_AREA_DEPTH);
    let y_lo = real::<S>(GOAL_CENTER_Y - PENALTY_AREA_WIDTH / 2.0);
    let y_hi = real::<S>(GOAL_CENTER_Y + PENALTY_AREA_WIDTH / 2.0);
    p.x >= x_min && p.x <= real(PITCH_LENGTH) && p.y >= y_lo && p.y <= y_hi
}

/// Straight-line distance from a shot location to the goal center.
pub fn dist_to_goal<S: Real>(p: &PitchPoint<S>) -> S {
    p.dist(&goal_center())
}

/// Angle subtended by the goal mouth at the shot location, in radians.
///
/// On the goal line between the posts the angle is pi; on the goal line
/// outside the posts it is 0.
pub fn angle_to_goal<S: Real>(p: &PitchPoint<S>) -> S {
    let half = real::<S>(GOAL_WIDTH / 2.0);
    let gx = real::<S>(PITCH_LENGTH);
    let cy = real::<S>(GOAL_CENTER_Y);
    // Vectors from the shot location to each post.
    let ux = gx - p.x;
    let uy = (cy - half) - p.y;
    let vx = gx - p.x;
    let vy = (cy + half) - p.y;
    let cross = (ux * vy - uy * vx).abs();
    let dot = ux * vx + uy * vy;
    cross.atan2(dot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn distance_to_goal_from_penalty_spot() {
        let p = PitchPoint::new(94.0f64, 34.0);
        assert!((dist_to_goal(&p) - 11.0).abs() < 1e-12);
    }

    #[test]
    fn angle_on_goal_line_between_posts_is_pi() {
        let p = PitchPoint::new(105.0f64, 34.0);
        assert!((angle_to_goal(&p) - PI).abs() < 1e-12);
        let near_post = PitchPoint::new(105.0f64, 31.0);
        assert!((angle_to_goal(&near_post) - PI).abs() < 1e-12);
    }

    #[test]
    fn angle_on_goal_line_outside_posts_is_zero() {
        let p = PitchPoint::new(105.0f64, 10.0);
        assert!(angle_to_goal(&p).abs() < 1e-12);
    }

    #[test]
    fn angle_matches_two_atan_on_the_center_line() {
        // Central locations see the goal symmetrically: 2*atan(3.66/d).
        for d in [5.0f64, 11.0, 20.0, 40.0] {
            let p = PitchPoint::new(105.0 - d, 34.0);
            let expect = 2.0 * (GOAL_WIDTH / 2.0 / d).atan();
            assert!((angle_to_goal(&p) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn penalty_area_membership() {
        assert!(in_penalty_area(&PitchPoint::new(94.0f64, 34.0)));
        assert!(in_penalty_area(&PitchPoint::new(105.0f64, 20.0)));
        assert!(!in_penalty_area(&PitchPoint::new(85.0f64, 34.0)));
        assert!(!in_penalty_area(&PitchPoint::new(105.0f64, 10.0)));
    }
}
