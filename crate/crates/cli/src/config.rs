//! TOML run configuration: schema, validation and conversion into library
//! types.

use serde::Deserialize;
use slitprop::numerics::QuadratureSpec;
use slitprop::{BoundaryCondition, Complex64, Particle};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema_version: u32,
    /// Default computation method; `--method` overrides it.
    #[serde(default)]
    pub method: Option<String>,
    pub particle: ParticleCfg,
    pub geometry: GeometryCfg,
    pub aperture: ApertureCfg,
    pub boundary: BoundaryCfg,
    pub time: TimeCfg,
    pub grid: GridCfg,
    #[serde(default)]
    pub quadrature: QuadratureCfg,
    #[serde(default)]
    pub gravity: Option<GravityCfg>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleCfg {
    pub mass: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryCfg {
    /// Source plane coordinate (negative; the slit plane sits at 0).
    pub x0: f64,
    /// Screen plane distance beyond the slit (positive).
    pub x_screen: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApertureCfg {
    /// "rect" or "double".
    pub kind: String,
    pub half_width_y: f64,
    pub half_height_z: f64,
    /// Required for kind = "double": slit centers sit at ±center_offset_z.
    #[serde(default)]
    pub center_offset_z: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryCfg {
    /// "dirichlet", "neumann" or "free"; mutually exclusive with lambda1/2.
    #[serde(default)]
    pub name: Option<String>,
    /// General image-combination weights as [re, im] pairs.
    #[serde(default)]
    pub lambda1: Option<[f64; 2]>,
    #[serde(default)]
    pub lambda2: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeCfg {
    /// Total flight time source → screen.
    pub t: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridCfg {
    pub z_min: f64,
    pub z_max: f64,
    pub n_z: usize,
    /// Single y value; mutually exclusive with y_min/y_max/n_y.
    #[serde(default)]
    pub y: Option<f64>,
    #[serde(default)]
    pub y_min: Option<f64>,
    #[serde(default)]
    pub y_max: Option<f64>,
    #[serde(default)]
    pub n_y: Option<usize>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct QuadratureCfg {
    #[serde(default)]
    pub rel_tolerance: Option<f64>,
    #[serde(default)]
    pub abs_tolerance: Option<f64>,
    #[serde(default)]
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GravityCfg {
    /// Field strength along the fall direction, ≥ 0.
    pub g: f64,
}

/// Computation method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    Exact,
    Semiclassical,
    Truncation,
    FourthOrder,
    Gravity,
    GravitySemiclassical,
}

impl MethodKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "exact" => Ok(Self::Exact),
            "semiclassical" => Ok(Self::Semiclassical),
            "truncation" => Ok(Self::Truncation),
            "fourth_order" => Ok(Self::FourthOrder),
            "gravity" => Ok(Self::Gravity),
            "gravity_semiclassical" => Ok(Self::GravitySemiclassical),
            other => Err(CliError::Validation(format!(
                "unknown method '{other}'; expected one of exact, semiclassical, \
                 truncation, fourth_order, gravity, gravity_semiclassical"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Semiclassical => "semiclassical",
            Self::Truncation => "truncation",
            Self::FourthOrder => "fourth_order",
            Self::Gravity => "gravity",
            Self::GravitySemiclassical => "gravity_semiclassical",
        }
    }

    pub fn needs_gravity(&self) -> bool {
        matches!(self, Self::Gravity | Self::GravitySemiclassical)
    }
}

/// Aperture shape after validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApertureShape {
    Rect { half_width_y: f64, half_height_z: f64 },
    Double { center_offset_z: f64, half_height_z: f64, half_width_y: f64 },
}

impl ApertureShape {
    pub fn half_width_y(&self) -> f64 {
        match self {
            Self::Rect { half_width_y, .. } | Self::Double { half_width_y, .. } => *half_width_y,
        }
    }

    pub fn half_height_z(&self) -> f64 {
        match self {
            Self::Rect { half_height_z, .. } | Self::Double { half_height_z, .. } => *half_height_z,
        }
    }

    pub fn overlaps(&self) -> bool {
        match self {
            Self::Rect { .. } => false,
            Self::Double { center_offset_z, half_height_z, .. } => {
                half_height_z > center_offset_z
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Rect { half_width_y, half_height_z } => {
                format!("rect(half_width_y={half_width_y}, half_height_z={half_height_z})")
            }
            Self::Double { center_offset_z, half_height_z, half_width_y } => format!(
                "double(center_offset_z={center_offset_z}, half_height_z={half_height_z}, \
                 half_width_y={half_width_y})"
            ),
        }
    }
}

/// Fully validated run parameters in library units.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub particle: Particle,
    pub x0: f64,
    pub x_screen: f64,
    pub aperture: ApertureShape,
    pub bc: BoundaryCondition,
    pub bc_label: String,
    pub t: f64,
    pub y_values: Vec<f64>,
    pub z_values: Vec<f64>,
    pub spec: QuadratureSpec,
    pub g: Option<f64>,
    pub method: Option<MethodKind>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n as f64 - 1.0);
    (0..n).map(|i| lo + step * i as f64).collect()
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("config parse error: {e}")))
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let bad = |msg: String| Err(CliError::Validation(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let particle = Particle::new(self.particle.mass, self.particle.hbar)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        if !(self.geometry.x0 < 0.0) || !self.geometry.x0.is_finite() {
            return bad(format!("geometry.x0 must be negative, got {}", self.geometry.x0));
        }
        if !(self.geometry.x_screen > 0.0) || !self.geometry.x_screen.is_finite() {
            return bad(format!(
                "geometry.x_screen must be positive, got {}",
                self.geometry.x_screen
            ));
        }
        if !(self.time.t > 0.0) || !self.time.t.is_finite() {
            return bad(format!("time.t must be positive, got {}", self.time.t));
        }

        let a = self.aperture.half_height_z;
        let b = self.aperture.half_width_y;
        if !(a > 0.0) || !(b > 0.0) {
            return bad(format!(
                "aperture half-sizes must be positive, got half_height_z={a}, half_width_y={b}"
            ));
        }
        let aperture = match self.aperture.kind.as_str() {
            "rect" => {
                if self.aperture.center_offset_z.is_some() {
                    return bad("aperture.center_offset_z is only valid for kind = \"double\""
                        .into());
                }
                ApertureShape::Rect { half_width_y: b, half_height_z: a }
            }
            "double" => {
                let c = match self.aperture.center_offset_z {
                    Some(c) if c > 0.0 => c,
                    Some(c) => {
                        return bad(format!(
                            "aperture.center_offset_z must be positive, got {c}"
                        ))
                    }
                    None => {
                        return bad("aperture.center_offset_z is required for kind = \"double\""
                            .into())
                    }
                };
                ApertureShape::Double { center_offset_z: c, half_height_z: a, half_width_y: b }
            }
            other => return bad(format!("unknown aperture.kind '{other}'")),
        };

        let (bc, bc_label) = match (&self.boundary.name, self.boundary.lambda1, self.boundary.lambda2)
        {
            (Some(name), None, None) => {
                let bc = match name.as_str() {
                    "dirichlet" => BoundaryCondition::dirichlet(),
                    "neumann" => BoundaryCondition::neumann(),
                    "free" => BoundaryCondition::free(),
                    other => return bad(format!("unknown boundary.name '{other}'")),
                };
                (bc, name.clone())
            }
            (None, Some(l1), Some(l2)) => {
                let bc = BoundaryCondition::general(
                    Complex64::new(l1[0], l1[1]),
                    Complex64::new(l2[0], l2[1]),
                );
                (bc, bc.describe())
            }
            _ => {
                return bad(
                    "boundary requires either name or both lambda1 and lambda2".into(),
                )
            }
        };

        let gc = &self.grid;
        if gc.n_z == 0 {
            return bad("grid.n_z must be at least 1".into());
        }
        if gc.n_z > 1 && !(gc.z_min < gc.z_max) {
            return bad(format!(
                "grid requires z_min < z_max for n_z > 1, got [{}, {}]",
                gc.z_min, gc.z_max
            ));
        }
        let z_values = linspace(gc.z_min, gc.z_max, gc.n_z);
        let y_values = match (gc.y, gc.y_min, gc.y_max, gc.n_y) {
            (Some(y), None, None, None) => vec![y],
            (None, Some(lo), Some(hi), Some(n)) => {
                if n == 0 {
                    return bad("grid.n_y must be at least 1".into());
                }
                if n > 1 && !(lo < hi) {
                    return bad(format!(
                        "grid requires y_min < y_max for n_y > 1, got [{lo}, {hi}]"
                    ));
                }
                linspace(lo, hi, n)
            }
            _ => {
                return bad(
                    "grid requires either y, or all of y_min, y_max and n_y".into(),
                )
            }
        };

        let qc = &self.quadrature;
        let spec = QuadratureSpec::default()
            .with_tolerances(
                qc.rel_tolerance.unwrap_or(1e-8),
                qc.abs_tolerance.unwrap_or(1e-14),
            )
            .with_max_subdivisions(qc.max_subdivisions.unwrap_or(6000));
        spec.validate().map_err(|e| CliError::Validation(e.to_string()))?;

        let method = match &self.method {
            Some(m) => Some(MethodKind::parse(m)?),
            None => None,
        };
        let g = match &self.gravity {
            Some(gc) => {
                if !(gc.g >= 0.0) || !gc.g.is_finite() {
                    return bad(format!("gravity.g must be ≥ 0, got {}", gc.g));
                }
                Some(gc.g)
            }
            None => None,
        };

        Ok(Resolved {
            particle,
            x0: self.geometry.x0,
            x_screen: self.geometry.x_screen,
            aperture,
            bc,
            bc_label,
            t: self.time.t,
            y_values,
            z_values,
            spec,
            g,
            method,
        })
    }
}

impl Resolved {
    /// Picks the effective method: CLI flag first, then the config default.
    pub fn method_or(&self, flag: Option<&str>) -> Result<MethodKind, CliError> {
        let m = match flag {
            Some(s) => MethodKind::parse(s)?,
            None => self.method.ok_or_else(|| {
                CliError::Validation(
                    "no method given: set `method` in the config or pass --method".into(),
                )
            })?,
        };
        if m.needs_gravity() && self.g.is_none() {
            return Err(CliError::Validation(format!(
                "method '{}' requires a [gravity] table with g",
                m.name()
            )));
        }
        Ok(m)
    }
}
