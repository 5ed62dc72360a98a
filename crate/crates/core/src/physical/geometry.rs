use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First zero of the Bessel function J₀.
pub const BESSEL_J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChamberShape {
    /// Inverted bowl on a flat baseplate, described by its diameter [m].
    PaperHemisphere { diameter: f64 },
    /// Closed cylinder of radius and height [m].
    Cylinder { radius: f64, height: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffusionMode {
    /// Λ = d/π, the order-of-magnitude estimate.
    PaperApproximation,
    /// Fundamental diffusion mode of a cylinder: Λ⁻² = (π/L)² + (j₀₁/R)².
    LowestDiffusionMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChamberGeometry {
    pub shape: ChamberShape,
    pub diffusion_mode: DiffusionMode,
}

impl ChamberGeometry {
    pub fn paper_hemisphere(diameter: f64) -> Result<Self> {
        let g = ChamberGeometry {
            shape: ChamberShape::PaperHemisphere { diameter },
            diffusion_mode: DiffusionMode::PaperApproximation,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn cylinder(radius: f64, height: f64, diffusion_mode: DiffusionMode) -> Result<Self> {
        let g = ChamberGeometry {
            shape: ChamberShape::Cylinder { radius, height },
            diffusion_mode,
        };
        g.validate()?;
        Ok(g)
    }

    /// Characteristic diameter used by the d/π approximation (2R for a cylinder).
    pub fn diameter(&self) -> f64 {
        match self.shape {
            ChamberShape::PaperHemisphere { diameter } => diameter,
            ChamberShape::Cylinder { radius, .. } => 2.0 * radius,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.shape {
            ChamberShape::PaperHemisphere { diameter } => {
                positive("diameter", diameter)?;
                if self.diffusion_mode == DiffusionMode::LowestDiffusionMode {
                    return Err(Error::Unsupported(
                        "the lowest diffusion mode is only implemented for cylinders",
                    ));
                }
            }
            ChamberShape::Cylinder { radius, height } => {
                positive("radius", radius)?;
                positive("height", height)?;
            }
        }
        Ok(())
    }

    /// Scales every length by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let shape = match self.shape {
            ChamberShape::PaperHemisphere { diameter } => ChamberShape::PaperHemisphere {
                diameter: diameter * factor,
            },
            ChamberShape::Cylinder { radius, height } => ChamberShape::Cylinder {
                radius: radius * factor,
                height: height * factor,
            },
        };
        let g = ChamberGeometry { shape, ..*self };
        g.validate()?;
        Ok(g)
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            field,
            v,
            "length must be positive and finite",
        ))
    }
}

/// Diffusion length Λ [m]: the distance scale over which electrons are lost to the walls.
pub fn diffusion_length(geometry: &ChamberGeometry) -> Result<f64> {
    geometry.validate()?;
    Ok(match (geometry.diffusion_mode, geometry.shape) {
        (DiffusionMode::PaperApproximation, _) => geometry.diameter() / PI,
        (DiffusionMode::LowestDiffusionMode, ChamberShape::Cylinder { radius, height }) => {
            let axial = PI / height;
            let radial = BESSEL_J0_FIRST_ZERO / radius;
            1.0 / axial.hypot(radial)
        }
        (DiffusionMode::LowestDiffusionMode, ChamberShape::PaperHemisphere { .. }) => {
            unreachable!("rejected by validate")
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowl_23cm() {
        let g = ChamberGeometry::paper_hemisphere(0.23).unwrap();
        let lambda = diffusion_length(&g).unwrap();
        assert_eq!(lambda, 0.23 / PI);
        assert!((lambda - 0.0732).abs() < 5e-5);

        let unit = ChamberGeometry::paper_hemisphere(PI).unwrap();
        assert!((diffusion_length(&unit).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(ChamberGeometry::paper_hemisphere(0.0).is_err());
        assert!(ChamberGeometry::cylinder(-1.0, 1.0, DiffusionMode::PaperApproximation).is_err());
        assert!(ChamberGeometry::cylinder(1.0, 0.0, DiffusionMode::LowestDiffusionMode).is_err());
        let bad = ChamberGeometry {
            shape: ChamberShape::PaperHemisphere { diameter: -0.2 },
            diffusion_mode: DiffusionMode::PaperApproximation,
        };
        assert!(diffusion_length(&bad).is_err());
        let hemi_lowest = ChamberGeometry {
            shape: ChamberShape::PaperHemisphere { diameter: 0.2 },
            diffusion_mode: DiffusionMode::LowestDiffusionMode,
        };
        assert!(matches!(
            diffusion_length(&hemi_lowest),
            Err(Error::Unsupported(_))
        ));
    }

    proptest::proptest! {
        #[test]
        fn d_over_pi_monotone_in_d(d1 in 1e-3f64..10.0, d2 in 1e-3f64..10.0) {
            let l1 = diffusion_length(&ChamberGeometry::paper_hemisphere(d1).unwrap()).unwrap();
            let l2 = diffusion_length(&ChamberGeometry::paper_hemisphere(d2).unwrap()).unwrap();
            if d1 < d2 { proptest::prop_assert!(l1 < l2); }
        }
    }

    #[test]
    fn lowest_mode_below_d_over_pi_on_grid() {
        for i in 1..=20 {
            let r = 0.01 * i as f64;
            for j in 1..=20 {
                let l = 2.0 * r * j as f64 / 20.0;
                let low = diffusion_length(
                    &ChamberGeometry::cylinder(r, l, DiffusionMode::LowestDiffusionMode).unwrap(),
                )
                .unwrap();
                let approx = diffusion_length(
                    &ChamberGeometry::cylinder(r, l, DiffusionMode::PaperApproximation).unwrap(),
                )
                .unwrap();
                assert!(low < approx, "R={r} L={l}: {low} !< {approx}");
            }
        }
    }
}
