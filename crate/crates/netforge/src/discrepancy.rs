//! Exact discrepancy of plane point sets with b-adic coordinates.
//!
//! The local discrepancy of a box is the fraction of points it contains
//! minus its volume. The star discrepancy is the supremum of its absolute
//! value over boxes `[0,x) x [0,y)` anchored at the origin; the extreme
//! discrepancy ranges over all axis-aligned boxes. For point sets on the
//! `b^-g` grid both suprema are attained at grid corners — provided each
//! corner is evaluated twice, once counting boundary points (the closed
//! limit) and once not (the open limit). Evaluating both makes the supremum
//! over real-valued boxes exact with no epsilon games, and every value is
//! returned as a reduced [`Rational`].
//!
//! [`bound_0m2`] evaluates the classical `O(log N / N)` discrepancy bound
//! that every (0,m,2)-net satisfies, again exactly.

use crate::badic::pow_checked;
use crate::error::Error;
use crate::points::NetPoints;
use crate::rational::Rational;
use crate::Result;

/// Largest grid `b^g` the star-discrepancy sweep will enumerate.
pub const STAR_GRID_LIMIT: u64 = 1 << 22;

/// Largest grid `b^g` the quartic extreme-discrepancy enumeration accepts.
pub const EXTREME_GRID_LIMIT: u64 = 64;

/// Local discrepancy of the box `prod_j [lo_j, hi_j)`: exact point fraction
/// minus exact volume.
pub fn local_discrepancy(bounds: &[(Rational, Rational)], points: &NetPoints) -> Result<Rational> {
    if bounds.len() != points.dim() {
        return Err(Error::InvalidArgument(format!(
            "{} bounds for a {}-dimensional point set",
            bounds.len(),
            points.dim()
        )));
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "local discrepancy needs a non-empty point set".into(),
        ));
    }
    for (axis, (lo, hi)) in bounds.iter().enumerate() {
        if lo > hi {
            return Err(Error::MalformedInterval { axis });
        }
        if *lo < Rational::zero() || *hi > Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "axis {axis} bounds leave the unit cube"
            )));
        }
    }
    let base = points.base();
    let g = points.exponent();
    let mut inside = 0u64;
    for p in points.points() {
        let contained = bounds.iter().zip(p).all(|((lo, hi), &x)| {
            let coord = Rational::b_adic(x, base, g).expect("validated at construction");
            *lo <= coord && coord < *hi
        });
        if contained {
            inside += 1;
        }
    }
    let volume = bounds
        .iter()
        .fold(Rational::one(), |acc, (lo, hi)| acc * (*hi - *lo));
    Ok(Rational::new(inside as i128, points.len() as i128)? - volume)
}

/// Exact star discrepancy of a plane point set.
///
/// Sweeps the `(b^g + 1)^2` grid corners row by row with cumulative
/// per-column counts, evaluating the open and closed limit at each corner.
pub fn star_discrepancy(points: &NetPoints) -> Result<Rational> {
    if points.dim() != 2 {
        return Err(Error::DimensionUnsupported { s: points.dim() });
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "star discrepancy needs a non-empty point set".into(),
        ));
    }
    let grid = pow_checked(points.base(), points.exponent())?;
    if grid > STAR_GRID_LIMIT {
        return Err(Error::GridTooLarge {
            size: grid,
            limit: STAR_GRID_LIMIT,
        });
    }
    let n = points.len() as u64;
    let g = grid as usize;

    // Points sorted by y; two monotone pointers feed the per-column counts.
    let mut by_y: Vec<(u64, u64)> = points.points().iter().map(|p| (p[1], p[0])).collect();
    by_y.sort_unstable();
    let mut col_lt = vec![0u32; g + 1]; // columns of points with py < j
    let mut col_le = vec![0u32; g + 1]; // columns of points with py <= j
    let (mut p_lt, mut p_le) = (0usize, 0usize);

    let g2 = (grid as i128) * (grid as i128);
    let mut max_num: i128 = 0;
    for j in 0..=grid {
        while p_lt < by_y.len() && by_y[p_lt].0 < j {
            col_lt[by_y[p_lt].1 as usize] += 1;
            p_lt += 1;
        }
        while p_le < by_y.len() && by_y[p_le].0 <= j {
            col_le[by_y[p_le].1 as usize] += 1;
            p_le += 1;
        }
        let jn = (j as i128) * (n as i128);
        let mut open = 0i128; // points with px < i, py < j
        let mut closed = 0i128; // points with px <= i, py <= j
        for i in 0..=g {
            if i > 0 {
                open += col_lt[i - 1] as i128;
            }
            closed += col_le[i] as i128;
            let volume_num = i as i128 * jn;
            let d = (open * g2 - volume_num)
                .abs()
                .max((closed * g2 - volume_num).abs());
            if d > max_num {
                max_num = d;
            }
        }
    }
    Rational::new(max_num, n as i128 * g2)
}

/// Exact extreme discrepancy of a plane point set: the supremum of the
/// local discrepancy magnitude over *all* axis-aligned boxes.
///
/// Quartic in the grid side, so it is limited to `b^g <=`
/// [`EXTREME_GRID_LIMIT`].
pub fn extreme_discrepancy(points: &NetPoints) -> Result<Rational> {
    if points.dim() != 2 {
        return Err(Error::DimensionUnsupported { s: points.dim() });
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "extreme discrepancy needs a non-empty point set".into(),
        ));
    }
    let grid = pow_checked(points.base(), points.exponent())?;
    if grid > EXTREME_GRID_LIMIT {
        return Err(Error::GridTooLarge {
            size: grid,
            limit: EXTREME_GRID_LIMIT,
        });
    }
    let n = points.len() as u64;
    let g = grid as usize;

    // prefix[a][c] = #{p : px < a, py < c}
    let mut prefix = vec![vec![0u32; g + 2]; g + 2];
    for p in points.points() {
        prefix[p[0] as usize + 1][p[1] as usize + 1] += 1;
    }
    for a in 0..g + 2 {
        for c in 0..g + 2 {
            let mut v = prefix[a][c];
            if a > 0 {
                v += prefix[a - 1][c];
            }
            if c > 0 {
                v += prefix[a][c - 1];
            }
            if a > 0 && c > 0 {
                v -= prefix[a - 1][c - 1];
            }
            prefix[a][c] = v;
        }
    }

    // Each side of a candidate box sits on a grid line and is approached
    // from either side: the counted numerators form the integer range
    // [lo + dl, hi + dh), while the limit volume is (hi - lo) / grid in all
    // four variants. Empty ranges with positive width are legitimate limits
    // (an open sliver containing no grid point).
    let mut spans = Vec::with_capacity(2 * (g + 1) * (g + 2));
    for lo in 0..=g {
        for hi in lo..=g {
            for dl in 0..=1usize {
                for dh in 0..=1usize {
                    spans.push((lo + dl, hi + dh, (hi - lo) as u64));
                }
            }
        }
    }
    spans.sort_unstable();
    spans.dedup();

    let g2 = (grid as i128) * (grid as i128);
    let mut max_num: i128 = 0;
    for &(x1, x2, wx) in &spans {
        for &(y1, y2, wy) in &spans {
            let count = if x1 >= x2 || y1 >= y2 {
                0i128
            } else {
                (prefix[x2][y2] + prefix[x1][y1]) as i128
                    - (prefix[x1][y2] + prefix[x2][y1]) as i128
            };
            let d = (count * g2 - (wx as i128) * (wy as i128) * (n as i128)).abs();
            if d > max_num {
                max_num = d;
            }
        }
    }
    Rational::new(max_num, n as i128 * g2)
}

/// The constant `c_b` of the (0,m,2)-net discrepancy bound: `b^2 / (b+1)`
/// for even bases, `b - 1` for odd ones.
pub fn c_constant(base: u64) -> Result<Rational> {
    if base < 2 {
        return Err(Error::InvalidArgument("base must be at least 2".into()));
    }
    let b = base as i128;
    if base.is_multiple_of(2) {
        Rational::new(b * b, b + 1)
    } else {
        Ok(Rational::from_integer(base as i64 - 1))
    }
}

/// Exact value of the discrepancy bound `(c_b * m + 9 + 4/b) / b^m` that
/// every (0,m,2)-net in base `b` satisfies.
pub fn bound_0m2(base: u64, resolution: u32) -> Result<Rational> {
    let c = c_constant(base)?;
    let linear = c * Rational::from_integer(resolution as i64)
        + Rational::from_integer(9)
        + Rational::new(4, base as i128)?;
    let scale = Rational::new(1, pow_checked(base, resolution)? as i128)?;
    Ok(linear * scale)
}
