//! Protocol descriptors and the flat parameter layout.
//!
//! Layout is layer-major; within each layer the XX-sublayer angles come
//! first, then the Z-sublayer angles (the rightmost factors of the circuit
//! act first, and each layer applies XX before Z).

use fgs_core::BoundaryCondition;

use crate::{Result, VqaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProtocolFamily {
    /// One shared angle per sublayer (2 parameters per layer).
    SiteIndependent,
    /// One angle per site / bond per sublayer.
    SiteDependent,
}

impl std::fmt::Display for ProtocolFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProtocolFamily::SiteIndependent => write!(f, "site_independent"),
            ProtocolFamily::SiteDependent => write!(f, "site_dependent"),
        }
    }
}

impl std::str::FromStr for ProtocolFamily {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dep" | "site_dependent" | "dependent" => Ok(ProtocolFamily::SiteDependent),
            "indep" | "site_independent" | "independent" => Ok(ProtocolFamily::SiteIndependent),
            other => Err(format!("unknown protocol family '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolSpec {
    pub family: ProtocolFamily,
    pub bc: BoundaryCondition,
    pub l: usize,
    /// Circuit depth (number of layers).
    pub p: usize,
}

impl ProtocolSpec {
    pub fn new(family: ProtocolFamily, bc: BoundaryCondition, l: usize, p: usize) -> Result<Self> {
        if l < 2 || p == 0 {
            return Err(VqaError::BadProtocol(l, p));
        }
        Ok(Self { family, bc, l, p })
    }

    /// Number of XX-bond angles per layer.
    pub fn xx_count(&self) -> usize {
        match self.family {
            ProtocolFamily::SiteIndependent => 1,
            ProtocolFamily::SiteDependent => {
                if self.bc.is_periodic() {
                    self.l
                } else {
                    self.l - 1
                }
            }
        }
    }

    /// Number of Z-site angles per layer.
    pub fn z_count(&self) -> usize {
        match self.family {
            ProtocolFamily::SiteIndependent => 1,
            ProtocolFamily::SiteDependent => self.l,
        }
    }

    /// Parameters per layer, `q`.
    pub fn params_per_layer(&self) -> usize {
        self.xx_count() + self.z_count()
    }

    pub fn param_count(&self) -> usize {
        self.params_per_layer() * self.p
    }

    /// The (xx, z) angle slices of one 0-based layer.
    pub fn layer_slices<'a>(&self, theta: &'a [f64], layer: usize) -> (&'a [f64], &'a [f64]) {
        let q = self.params_per_layer();
        let base = layer * q;
        let xx = &theta[base..base + self.xx_count()];
        let z = &theta[base + self.xx_count()..base + q];
        (xx, z)
    }
}

/// A validated flat parameter vector for a given protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector {
    theta: Vec<f64>,
}

impl ParameterVector {
    pub fn new(spec: &ProtocolSpec, theta: Vec<f64>) -> Result<Self> {
        if theta.len() != spec.param_count() {
            return Err(VqaError::LayoutMismatch(theta.len(), spec.param_count()));
        }
        if !theta.iter().all(|t| t.is_finite()) {
            return Err(VqaError::NonFinite("parameter vector"));
        }
        Ok(Self { theta })
    }

    pub fn zeros(spec: &ProtocolSpec) -> Self {
        Self {
            theta: vec![0.0; spec.param_count()],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.theta
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.theta
    }
}
