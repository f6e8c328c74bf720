//! Exact point sets with b-adic rational coordinates.
//!
//! Every coordinate is a numerator over the common denominator `b^g`; the
//! exponent `g` is carried once per set. Constructions emit points at box
//! corners (`g = m`); placements can move each point anywhere within its
//! resolution-`m` box at a finer exponent without disturbing the net
//! property.

use crate::badic::{pow_checked, GridBox};
use crate::error::Error;
use crate::sampling;
use crate::Result;

/// A finite point set in `[0,1)^s` with all coordinates in `Q(b^g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetPoints {
    base: u64,
    dim: usize,
    exponent: u32,
    points: Vec<Vec<u64>>,
}

impl NetPoints {
    pub fn new(base: u64, dim: usize, exponent: u32, points: Vec<Vec<u64>>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument("base must be at least 2".into()));
        }
        if dim < 1 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        let denom = pow_checked(base, exponent)?;
        for p in &points {
            if p.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "point has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if let Some(&x) = p.iter().find(|&&x| x >= denom) {
                return Err(Error::InvalidArgument(format!(
                    "coordinate numerator {x} out of range for exponent {exponent}"
                )));
            }
        }
        Ok(NetPoints {
            base,
            dim,
            exponent,
            points,
        })
    }

    /// Corner placement of a box sequence: one point per box at `g = m`.
    pub fn from_boxes(boxes: &[GridBox]) -> Result<Self> {
        let first = boxes.first().ok_or_else(|| {
            Error::InvalidArgument("cannot build a point set from zero boxes".into())
        })?;
        let (base, m, dim) = (first.base(), first.resolution(), first.dim());
        let mut points = Vec::with_capacity(boxes.len());
        for bx in boxes {
            if bx.base() != base || bx.resolution() != m || bx.dim() != dim {
                return Err(Error::InvalidArgument(
                    "boxes disagree on base, resolution or dimension".into(),
                ));
            }
            points.push(bx.corner().to_vec());
        }
        NetPoints::new(base, dim, m, points)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Number of axes `s`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common denominator exponent `g`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    /// The resolution-`m` grid box containing point `i` (coordinates floored).
    pub fn grid_box(&self, i: usize, m: u32) -> Result<GridBox> {
        if m > self.exponent {
            return Err(Error::InvalidArgument(format!(
                "resolution {m} exceeds coordinate exponent {}",
                self.exponent
            )));
        }
        let down = pow_checked(self.base, self.exponent - m)?;
        let corner = self.points[i].iter().map(|&x| x / down).collect();
        GridBox::new(self.base, m, corner)
    }

    /// The same points re-expressed at a finer exponent `g2 >= g`.
    pub fn refined(&self, g2: u32) -> Result<Self> {
        if g2 < self.exponent {
            return Err(Error::InvalidArgument(
                "refinement exponent below current exponent".into(),
            ));
        }
        let up = pow_checked(self.base, g2 - self.exponent)?;
        pow_checked(self.base, g2)?; // denominator must stay representable
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| x.checked_mul(up)).collect())
            .collect::<Option<Vec<Vec<u64>>>>()
            .ok_or(Error::Overflow {
                what: "coordinate refinement",
            })?;
        NetPoints::new(self.base, self.dim, g2, points)
    }

    /// Set equality as exact rationals (same base required).
    pub fn same_set(&self, other: &NetPoints) -> bool {
        if self.base != other.base || self.dim != other.dim || self.len() != other.len() {
            return false;
        }
        let g = self.exponent.max(other.exponent);
        let (a, b) = match (self.refined(g), other.refined(g)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return false,
        };
        let mut pa = a.points;
        let mut pb = b.points;
        pa.sort_unstable();
        pb.sort_unstable();
        pa == pb
    }

    /// Re-place every point within its resolution-`m` box.
    pub fn placed(&self, m: u32, placement: Placement) -> Result<Self> {
        let down = if m > self.exponent {
            return Err(Error::InvalidArgument(format!(
                "placement resolution {m} exceeds coordinate exponent {}",
                self.exponent
            )));
        } else {
            pow_checked(self.base, self.exponent - m)?
        };
        let corners: Vec<Vec<u64>> = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| x / down).collect())
            .collect();
        match placement {
            Placement::Corner => NetPoints::new(self.base, self.dim, m, corners),
            Placement::Center => {
                // Lower corner of the middle cell one level down; the exact
                // midpoint for even bases, just left of it for odd ones.
                let offset = self.base / 2;
                let points = corners
                    .iter()
                    .map(|p| p.iter().map(|&u| u * self.base + offset).collect())
                    .collect();
                NetPoints::new(self.base, self.dim, m + 1, points)
            }
            Placement::Random { exponent, seed } => {
                if exponent <= m {
                    return Err(Error::InvalidArgument(
                        "random placement needs an exponent finer than the box resolution".into(),
                    ));
                }
                let up = pow_checked(self.base, exponent - m)?;
                pow_checked(self.base, exponent)?;
                let mut rng = sampling::rng_from_seed(seed);
                let points = corners
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|&u| {
                                u.checked_mul(up)
                                    .map(|base| base + sampling::uniform_below(&mut rng, up))
                                    .ok_or(Error::Overflow {
                                        what: "random placement",
                                    })
                            })
                            .collect::<Result<Vec<u64>>>()
                    })
                    .collect::<Result<Vec<Vec<u64>>>>()?;
                NetPoints::new(self.base, self.dim, exponent, points)
            }
        }
    }
}

/// Where each point sits inside its resolution-`m` grid box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Lower-left corner; exponent stays `m`.
    Corner,
    /// Midpoint cell at exponent `m + 1`.
    Center,
    /// Seeded uniform offset at the given exponent `> m`.
    Random { exponent: u32, seed: u64 },
}
