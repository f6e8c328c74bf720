//! Exact b-adic combinatorics: shapes, elementary intervals, grid boxes,
//! containment and the counting identities behind them.
//!
//! An *elementary b-adic interval* is a product of half-open dyadic-style
//! intervals `[a_j / b^d_j, (a_j + 1) / b^d_j)`, one per axis. Its *shape*
//! is the exponent tuple `(d_1, ..., d_s)`; the sum of the exponents is the
//! shape's *weight* and fixes the volume `b^-weight`. A *grid box* is the
//! special case where every axis uses the same exponent `m`.
//!
//! Everything here is integer arithmetic on numerators and exponents. Net
//! membership is a statement about half-open boxes, and floating point would
//! get the boundaries wrong, so none is used.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// `base^exp` as `u64`, reported as an error on overflow.
///
/// Constructions in this crate support `b^m` up to at least `2^62`; anything
/// wider fails loudly here instead of wrapping.
pub fn pow_checked(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow {
        what: "b^m exceeds the supported integer width",
    })
}

/// Binomial coefficient `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Product of i consecutive integers is divisible by i, so this stays exact.
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or(Error::Overflow {
                what: "binomial coefficient",
            })?
            / i as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow {
        what: "binomial coefficient",
    })
}

/// Exponent tuple `(d_1, ..., d_s)` of an elementary interval family.
///
/// All intervals of one shape are congruent, tile the unit cube, and have
/// volume `b^-weight`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape {
    dims: Vec<u32>,
}

impl Shape {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument(
                "shape needs at least one axis".into(),
            ));
        }
        let weight: u64 = dims.iter().map(|&d| d as u64).sum();
        if u32::try_from(weight).is_err() {
            return Err(Error::Overflow {
                what: "shape weight",
            });
        }
        Ok(Shape { dims })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Number of axes `s`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `d_1 + ... + d_s`; the volume of an interval of this shape is `b^-weight`.
    pub fn weight(&self) -> u32 {
        self.dims.iter().sum()
    }
}

/// Axis-aligned box `prod_j [u_j / b^m, (u_j + 1) / b^m)` at a common
/// per-axis resolution `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridBox {
    base: u64,
    resolution: u32,
    corner: Vec<u64>,
}

impl GridBox {
    pub fn new(base: u64, resolution: u32, corner: Vec<u64>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument("base must be at least 2".into()));
        }
        if corner.is_empty() {
            return Err(Error::InvalidArgument(
                "grid box needs at least one axis".into(),
            ));
        }
        let side = pow_checked(base, resolution)?;
        if let Some(&u) = corner.iter().find(|&&u| u >= side) {
            return Err(Error::InvalidArgument(format!(
                "corner index {u} out of range for resolution {resolution} in base {base}"
            )));
        }
        Ok(GridBox {
            base,
            resolution,
            corner,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn corner(&self) -> &[u64] {
        &self.corner
    }

    /// Number of axes `s`.
    pub fn dim(&self) -> usize {
        self.corner.len()
    }
}

/// Elementary b-adic interval `prod_j [a_j / b^d_j, (a_j + 1) / b^d_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementaryInterval {
    base: u64,
    cells: Vec<u64>,
    shape: Shape,
}

impl ElementaryInterval {
    pub fn new(base: u64, shape: Shape, cells: Vec<u64>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument("base must be at least 2".into()));
        }
        if cells.len() != shape.len() {
            return Err(Error::InvalidArgument(format!(
                "{} cells given for a {}-axis shape",
                cells.len(),
                shape.len()
            )));
        }
        for (axis, (&a, &d)) in cells.iter().zip(shape.dims()).enumerate() {
            if a >= pow_checked(base, d)? {
                return Err(Error::InvalidArgument(format!(
                    "cell index {a} out of range on axis {axis}"
                )));
            }
        }
        Ok(ElementaryInterval { base, cells, shape })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    /// The interval has volume `b^-volume_exponent()`.
    pub fn volume_exponent(&self) -> u32 {
        self.shape.weight()
    }

    /// Exact containment test `box ⊆ interval`, by endpoint comparison.
    ///
    /// `a / b^d <= u / b^m` and `(u + 1) / b^m <= (a + 1) / b^d` are checked
    /// per axis after cross-multiplying, so no rounding is involved.
    pub fn contains_box(&self, bx: &GridBox) -> bool {
        debug_assert_eq!(self.base, bx.base());
        debug_assert_eq!(self.shape.len(), bx.dim());
        if self.base != bx.base() || self.shape.len() != bx.dim() {
            return false;
        }
        let m = bx.resolution();
        self.cells
            .iter()
            .zip(self.shape.dims())
            .zip(bx.corner())
            .all(|((&a, &d), &u)| {
                let bd = self.base.pow(d) as u128;
                let bm = self.base.pow(m) as u128;
                let (a, u) = (a as u128, u as u128);
                a * bm <= u * bd && (u + 1) * bd <= (a + 1) * bm
            })
    }

    /// Exact membership test for a point with numerators at exponent `g`.
    pub fn contains_point(&self, numerators: &[u64], exponent: u32) -> bool {
        debug_assert_eq!(numerators.len(), self.shape.len());
        self.cells
            .iter()
            .zip(self.shape.dims())
            .zip(numerators)
            .all(|((&a, &d), &x)| {
                let bd = self.base.pow(d) as u128;
                let bg = self.base.pow(exponent) as u128;
                let (a, x) = (a as u128, x as u128);
                a * bg <= x * bd && x * bd < (a + 1) * bg
            })
    }
}

/// All compositions of `m` into `s` non-negative parts, in lexicographic
/// order. There are `C(m + s - 1, m)` of them.
pub fn shapes_of_weight(s: usize, m: u32) -> Vec<Shape> {
    assert!(s >= 1, "dimension must be at least 1");
    let mut out = Vec::new();
    let mut current = vec![0u32; s];
    fill_compositions(&mut out, &mut current, 0, m);
    out
}

fn fill_compositions(out: &mut Vec<Shape>, current: &mut Vec<u32>, axis: usize, remaining: u32) {
    if axis + 1 == current.len() {
        current[axis] = remaining;
        out.push(Shape {
            dims: current.clone(),
        });
        return;
    }
    for d in 0..=remaining {
        current[axis] = d;
        fill_compositions(out, current, axis + 1, remaining - d);
    }
}

/// The unique interval of the given shape containing the box.
///
/// Requires `d_j <= m` on every axis; a finer shape cannot contain a coarser
/// box. Cell indices come out as `a_j = floor(u_j / b^(m - d_j))`.
pub fn containing_interval(bx: &GridBox, shape: &Shape) -> Result<ElementaryInterval> {
    if shape.len() != bx.dim() {
        return Err(Error::InvalidArgument(format!(
            "shape has {} axes but box has {}",
            shape.len(),
            bx.dim()
        )));
    }
    let m = bx.resolution();
    let mut cells = Vec::with_capacity(shape.len());
    for (axis, (&d, &u)) in shape.dims().iter().zip(bx.corner()).enumerate() {
        if d > m {
            return Err(Error::ShapeTooFine {
                axis,
                depth: d,
                resolution: m,
            });
        }
        cells.push(u / bx.base().pow(m - d));
    }
    ElementaryInterval::new(bx.base(), shape.clone(), cells)
}

/// All elementary intervals of volume `b^-m` containing the box: exactly one
/// per shape of weight `m`, so `C(m + s - 1, m)` in total.
pub fn cover_set(bx: &GridBox) -> Vec<ElementaryInterval> {
    shapes_of_weight(bx.dim(), bx.resolution())
        .iter()
        .map(|shape| {
            containing_interval(bx, shape).expect("weight-m shapes never exceed resolution m")
        })
        .collect()
}

/// Number of s-dimensional elementary intervals of volume `b^-m`:
/// `b^m * C(m + s - 1, m)`.
pub fn count_intervals(b: u64, m: u32, s: usize) -> Result<u64> {
    if b < 2 {
        return Err(Error::InvalidArgument("base must be at least 2".into()));
    }
    if s < 1 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let shapes = binomial(m as u64 + s as u64 - 1, m as u64)?;
    pow_checked(b, m)?
        .checked_mul(shapes)
        .ok_or(Error::Overflow {
            what: "interval count b^m * C(m+s-1, m)",
        })
}
