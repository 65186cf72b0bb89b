//! Shared domain types: particles, 3-vectors, boundary conditions, spacetime points.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Physical constants of the propagating particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub mass: f64,
    pub hbar: f64,
}

impl Particle {
    pub fn new(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0) || !(hbar > 0.0) || !mass.is_finite() || !hbar.is_finite() {
            return Err(Error::Domain(format!(
                "particle requires mass > 0 and hbar > 0, got mass={mass}, hbar={hbar}"
            )));
        }
        Ok(Self { mass, hbar })
    }

    /// Natural units m = ħ = 1.
    pub fn natural() -> Self {
        Self { mass: 1.0, hbar: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// A point in space and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub r: Vec3,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(r: Vec3, t: f64) -> Self {
        Self { r, t }
    }
}

/// Screen boundary condition as the image-combination pair (λ1, λ2).
///
/// The derived weights η1 = (λ1+λ2)/2 and η2 = (λ1−λ2)/2 multiply the
/// Neumann-like and Dirichlet-like surface terms respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCondition {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

impl BoundaryCondition {
    pub fn general(lambda1: Complex64, lambda2: Complex64) -> Self {
        Self { lambda1, lambda2 }
    }

    /// Reflective screen: λ1 = 1, λ2 = −1 (η1 = 0, η2 = 1).
    pub fn dirichlet() -> Self {
        Self {
            lambda1: Complex64::new(1.0, 0.0),
            lambda2: Complex64::new(-1.0, 0.0),
        }
    }

    /// λ1 = λ2 = 1 (η1 = 1, η2 = 0).
    pub fn neumann() -> Self {
        Self {
            lambda1: Complex64::new(1.0, 0.0),
            lambda2: Complex64::new(1.0, 0.0),
        }
    }

    /// Absorbing/free screen: λ1 = 1, λ2 = 0 (η1 = η2 = 1/2).
    pub fn free() -> Self {
        Self {
            lambda1: Complex64::new(1.0, 0.0),
            lambda2: Complex64::new(0.0, 0.0),
        }
    }

    pub fn eta1(&self) -> Complex64 {
        (self.lambda1 + self.lambda2) * 0.5
    }

    pub fn eta2(&self) -> Complex64 {
        (self.lambda1 - self.lambda2) * 0.5
    }

    /// Short name for reporting; general pairs are printed numerically.
    pub fn describe(&self) -> String {
        if *self == Self::dirichlet() {
            "dirichlet".into()
        } else if *self == Self::neumann() {
            "neumann".into()
        } else if *self == Self::free() {
            "free".into()
        } else {
            format!("general(λ1={}, λ2={})", self.lambda1, self.lambda2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_weights_of_named_conditions() {
        let d = BoundaryCondition::dirichlet();
        assert_eq!(d.eta1(), Complex64::new(0.0, 0.0));
        assert_eq!(d.eta2(), Complex64::new(1.0, 0.0));
        let n = BoundaryCondition::neumann();
        assert_eq!(n.eta1(), Complex64::new(1.0, 0.0));
        assert_eq!(n.eta2(), Complex64::new(0.0, 0.0));
        let f = BoundaryCondition::free();
        assert_eq!(f.eta1(), Complex64::new(0.5, 0.0));
        assert_eq!(f.eta2(), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn particle_validation() {
        assert!(Particle::new(0.0, 1.0).is_err());
        assert!(Particle::new(1.0, -1.0).is_err());
        assert!(Particle::new(3.349e-26, 1.054571817e-34).is_ok());
    }
}
