//! Exhaustive net verification and backtracking existence search.
//!
//! [`is_net`] decides the (t,m,s)-net property by counting points in every
//! elementary interval of volume `b^(t-m)` with exact integer arithmetic.
//! [`strength`] finds the minimal `t` that passes. [`exhaustive_search`]
//! looks for a (0,m,s)-net — or proves there is none — by backtracking over
//! grid-box assignments.
//!
//! The search places point `k` in the `k`-th vertical strip of width
//! `b^-m`. That loses no generality: the strips are themselves elementary
//! intervals of volume `b^-m`, so a (0,m,s)-net has exactly one point in
//! each, and reordering points is free. The premise is asserted against
//! constructed nets in the test suite rather than assumed silently.

use serde::Serialize;

use crate::badic::{count_intervals, pow_checked, shapes_of_weight, ElementaryInterval, Shape};
use crate::error::Error;
use crate::points::NetPoints;
use crate::{Result, DEFAULT_SEARCH_BUDGET};

/// One elementary interval holding the wrong number of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub interval: ElementaryInterval,
    pub observed: u64,
}

/// Outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetReport {
    pub b: u64,
    /// Number of intervals examined; equals `count_intervals(b, m-t, s)`
    /// when the check runs to completion.
    pub checked: u64,
    pub m: u32,
    pub passed: bool,
    pub s: usize,
    pub t: u32,
    pub violations: Vec<Violation>,
}

fn resolution_of(base: u64, count: u64) -> Result<u32> {
    let mut m = 0u32;
    let mut value = 1u64;
    while value < count {
        value = value.checked_mul(base).ok_or(Error::Overflow {
            what: "b^m while matching the point count",
        })?;
        m += 1;
    }
    if value == count && count > 0 {
        Ok(m)
    } else {
        Err(Error::CardinalityMismatch { base, count })
    }
}

/// Check the (t,m,s)-net property of a `b^m`-element point set.
///
/// Every elementary interval of volume `b^(t-m)` must contain exactly `b^t`
/// points, where membership is decided on exact b-adic numerators. The
/// report lists every violated interval in lexicographic shape order, so it
/// is empty iff the check passed.
pub fn is_net(points: &NetPoints, t: u32) -> Result<NetReport> {
    let base = points.base();
    let s = points.dim();
    let g = points.exponent();
    let m = resolution_of(base, points.len() as u64)?;
    if t > m {
        return Err(Error::InvalidArgument(format!(
            "quality parameter {t} exceeds resolution {m}"
        )));
    }
    if g < m {
        return Err(Error::InvalidArgument(format!(
            "coordinate exponent {g} is coarser than the resolution {m}"
        )));
    }
    pow_checked(base, g)?;
    let weight = m - t;
    let expected = pow_checked(base, t)?;
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for shape in shapes_of_weight(s, weight) {
        let radices: Vec<u64> = shape.dims().iter().map(|&d| base.pow(d)).collect();
        let downs: Vec<u64> = shape.dims().iter().map(|&d| base.pow(g - d)).collect();
        let table_len = radices.iter().product::<u64>() as usize;
        let mut counts = vec![0u64; table_len];
        for p in points.points() {
            let mut idx = 0u64;
            for j in 0..s {
                idx = idx * radices[j] + p[j] / downs[j];
            }
            counts[idx as usize] += 1;
        }
        checked += table_len as u64;
        for (idx, &observed) in counts.iter().enumerate() {
            if observed != expected {
                violations.push(Violation {
                    interval: decode_interval(base, &shape, &radices, idx as u64)?,
                    observed,
                });
            }
        }
    }
    debug_assert_eq!(checked, count_intervals(base, weight, s)?);
    Ok(NetReport {
        b: base,
        checked,
        m,
        passed: violations.is_empty(),
        s,
        t,
        violations,
    })
}

fn decode_interval(
    base: u64,
    shape: &Shape,
    radices: &[u64],
    mut idx: u64,
) -> Result<ElementaryInterval> {
    let mut cells = vec![0u64; radices.len()];
    for j in (0..radices.len()).rev() {
        cells[j] = idx % radices[j];
        idx /= radices[j];
    }
    ElementaryInterval::new(base, shape.clone(), cells)
}

/// Minimal `t` for which [`is_net`] passes; `t = m` always does.
pub fn strength(points: &NetPoints) -> Result<u32> {
    let m = resolution_of(points.base(), points.len() as u64)?;
    for t in 0..=m {
        if is_net(points, t)?.passed {
            return Ok(t);
        }
    }
    unreachable!("the single interval of weight zero contains all b^m = b^t points")
}

/// [`exhaustive_search`] with the default node budget.
pub fn exhaustive_search(base: u64, resolution: u32, dim: usize) -> Result<Option<NetPoints>> {
    exhaustive_search_budgeted(base, resolution, dim, DEFAULT_SEARCH_BUDGET)
}

/// Backtracking search for a (0,m,s)-net in base b, one point per grid-box
/// corner.
///
/// Point `k` is pinned to the `k`-th first-axis strip; the remaining
/// coordinates are enumerated lexicographically, pruning any partial
/// assignment that puts two points into one elementary interval of volume
/// `b^-m`. Returns a witness, or `None` once the space is exhausted —
/// distinct from the `BudgetExceeded` error, which means the search was cut
/// short after `budget` attempted placements.
pub fn exhaustive_search_budgeted(
    base: u64,
    resolution: u32,
    dim: usize,
    budget: u64,
) -> Result<Option<NetPoints>> {
    if base < 2 {
        return Err(Error::InvalidArgument("base must be at least 2".into()));
    }
    if dim < 1 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let side = pow_checked(base, resolution)?;
    let shapes = shapes_of_weight(dim, resolution);
    let mut search = Search {
        side,
        dim,
        radices: shapes
            .iter()
            .map(|sh| sh.dims().iter().map(|&d| base.pow(d)).collect())
            .collect(),
        extents: shapes
            .iter()
            .map(|sh| {
                sh.dims()
                    .iter()
                    .map(|&d| base.pow(resolution - d))
                    .collect()
            })
            .collect(),
        occupied: shapes.iter().map(|_| vec![false; side as usize]).collect(),
        points: Vec::with_capacity(side as usize),
        nodes: 0,
        budget,
    };
    if search.place_strip(0)? {
        let points = std::mem::take(&mut search.points);
        return Ok(Some(NetPoints::new(base, dim, resolution, points)?));
    }
    Ok(None)
}

struct Search {
    side: u64,
    dim: usize,
    radices: Vec<Vec<u64>>,
    extents: Vec<Vec<u64>>,
    occupied: Vec<Vec<bool>>,
    points: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn interval_index(&self, si: usize, corner: &[u64]) -> usize {
        let mut acc = 0u64;
        for (j, &u) in corner.iter().enumerate() {
            acc = acc * self.radices[si][j] + u / self.extents[si][j];
        }
        acc as usize
    }

    fn place_strip(&mut self, k: u64) -> Result<bool> {
        if k == self.side {
            return Ok(true);
        }
        let mut corner = vec![0u64; self.dim];
        corner[0] = k;
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let indices: Vec<usize> = (0..self.occupied.len())
                .map(|si| self.interval_index(si, &corner))
                .collect();
            if indices
                .iter()
                .enumerate()
                .all(|(si, &e)| !self.occupied[si][e])
            {
                for (si, &e) in indices.iter().enumerate() {
                    self.occupied[si][e] = true;
                }
                self.points.push(corner.clone());
                if self.place_strip(k + 1)? {
                    return Ok(true);
                }
                self.points.pop();
                for (si, &e) in indices.iter().enumerate() {
                    self.occupied[si][e] = false;
                }
            }
            // Advance the free coordinates (axes 1..s) lexicographically.
            let mut j = self.dim - 1;
            loop {
                if j == 0 {
                    return Ok(false);
                }
                corner[j] += 1;
                if corner[j] < self.side {
                    break;
                }
                corner[j] = 0;
                j -= 1;
            }
        }
    }
}
