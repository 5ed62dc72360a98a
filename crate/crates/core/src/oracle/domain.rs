use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::physical::{ChamberGeometry, ChamberShape};

pub type Vec3 = [f64; 3];

/// The region an electron walks in. Leaving it means loss to a wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WalkDomain {
    /// No walls; only useful for fixed-length displacement statistics.
    Unbounded,
    /// Cylinder centred on the origin, axis along z.
    Cylinder { radius: f64, half_height: f64 },
    /// Sphere of `radius` about the origin cut by the absorbing baseplate z = 0;
    /// the gas is the z > 0 half.
    Dome { radius: f64 },
}

impl WalkDomain {
    pub fn from_geometry(geometry: &ChamberGeometry) -> Result<Self> {
        geometry.validate()?;
        Ok(match geometry.shape {
            ChamberShape::PaperHemisphere { diameter } => WalkDomain::Dome {
                radius: diameter / 2.0,
            },
            ChamberShape::Cylinder { radius, height } => WalkDomain::Cylinder {
                radius,
                half_height: height / 2.0,
            },
        })
    }

    /// Launch point. For the dome this is the centre of the largest inscribed
    /// sphere, on the axis at half the radius.
    pub fn start(&self) -> Vec3 {
        match *self {
            WalkDomain::Unbounded | WalkDomain::Cylinder { .. } => [0.0; 3],
            WalkDomain::Dome { radius } => [0.0, 0.0, 0.5 * radius],
        }
    }

    /// Closed-interior test. Every domain is convex, so a straight flight
    /// crosses a wall exactly when its end point lies outside.
    #[inline]
    pub fn contains(&self, p: &Vec3) -> bool {
        match *self {
            WalkDomain::Unbounded => true,
            WalkDomain::Cylinder {
                radius,
                half_height,
            } => p[0] * p[0] + p[1] * p[1] <= radius * radius && p[2].abs() <= half_height,
            WalkDomain::Dome { radius } => {
                p[2] >= 0.0 && p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= radius * radius
            }
        }
    }
}
