//! JSON interchange formats.
//!
//! Net files carry exact numerators, never floats, so goldens are
//! platform-independent. Canonical serialization is compact JSON with keys
//! in sorted order (struct fields are declared alphabetically), which makes
//! `parse . emit` the identity on canonical files, byte for byte.

use serde::{Deserialize, Serialize};

use crate::badic::pow_checked;
use crate::error::Error;
use crate::points::NetPoints;
use crate::recursive::{Permutation, PermutationFamily};
use crate::Result;

/// Version-1 net file: a `b^m`-element point set at exponent `g >= m` plus
/// provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub b: u64,
    pub g: u32,
    pub m: u32,
    pub points: Vec<Vec<u64>>,
    pub provenance: Provenance,
    pub s: usize,
    pub version: u32,
}

/// How a net file came to be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn bare(algorithm: &str) -> Self {
        Provenance {
            algorithm: algorithm.to_string(),
            permutations: None,
            policy: None,
            seed: None,
        }
    }
}

impl NetFile {
    pub fn from_points(points: &NetPoints, m: u32, provenance: Provenance) -> Result<Self> {
        let file = NetFile {
            b: points.base(),
            g: points.exponent(),
            m,
            points: points.points().to_vec(),
            provenance,
            s: points.dim(),
            version: 1,
        };
        file.validate()?;
        Ok(file)
    }

    pub fn to_points(&self) -> Result<NetPoints> {
        self.validate()?;
        NetPoints::new(self.b, self.s, self.g, self.points.clone())
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != 1 {
            return Err(Error::MalformedFile(format!(
                "unsupported version {}",
                self.version
            )));
        }
        if self.b < 2 {
            return Err(Error::MalformedFile("base must be at least 2".into()));
        }
        if self.s < 1 {
            return Err(Error::MalformedFile("dimension must be at least 1".into()));
        }
        if self.g < self.m {
            return Err(Error::MalformedFile(format!(
                "exponent g = {} is coarser than the resolution m = {}",
                self.g, self.m
            )));
        }
        let expected = pow_checked(self.b, self.m)
            .map_err(|_| Error::MalformedFile("b^m overflows".into()))?;
        if self.points.len() as u64 != expected {
            return Err(Error::MalformedFile(format!(
                "{} points, expected b^m = {expected}",
                self.points.len()
            )));
        }
        let denom = pow_checked(self.b, self.g)
            .map_err(|_| Error::MalformedFile("b^g overflows".into()))?;
        for p in &self.points {
            if p.len() != self.s {
                return Err(Error::MalformedFile(format!(
                    "point has {} coordinates, expected {}",
                    p.len(),
                    self.s
                )));
            }
            if p.iter().any(|&x| x >= denom) {
                return Err(Error::MalformedFile(
                    "coordinate numerator out of range".into(),
                ));
            }
        }
        Ok(())
    }

    /// Compact JSON with sorted keys; the canonical byte form.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("net files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedFile(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }
}

/// Permutation-family interchange: `{"b": …, "levels": [[[…], …], …], "m": …}`,
/// level `n` holding `b^(n-1)` index arrays of length `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub b: u64,
    pub levels: Vec<Vec<Vec<u32>>>,
    pub m: u32,
}

impl FamilyFile {
    pub fn from_family(family: &PermutationFamily) -> Self {
        FamilyFile {
            b: family.base(),
            levels: family
                .levels()
                .iter()
                .map(|level| level.iter().map(|p| p.map().to_vec()).collect())
                .collect(),
            m: family.resolution(),
        }
    }

    pub fn to_family(&self) -> Result<PermutationFamily> {
        if self.levels.len() as u64 != self.m as u64 {
            return Err(Error::MalformedFamily(format!(
                "file says m = {} but carries {} levels",
                self.m,
                self.levels.len()
            )));
        }
        let levels = self
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|map| Permutation::new(map.clone()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PermutationFamily::new(self.b, levels)
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("family files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedFamily(e.to_string()))
    }
}
