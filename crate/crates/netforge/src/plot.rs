//! Deterministic SVG rendering of plane nets.
//!
//! The drawing lives in a viewBox of 16 units per resolution-`m` grid cell,
//! so every coordinate is an integer and the output is byte-stable across
//! runs and platforms. Points are drawn as filled squares of side `b^-m`
//! (their grid boxes); optional overlays show the b-adic grid lines at
//! resolutions `1..m` and the volume-`b^-m` elementary intervals containing
//! each point.

use std::fmt::Write;

use crate::badic::{cover_set, pow_checked};
use crate::error::Error;
use crate::points::NetPoints;
use crate::Result;

const CELL: u64 = 16;

#[derive(Debug, Clone, Copy, Default)]
pub struct PlotOptions {
    /// Draw b-adic grid lines at resolutions `1..m`.
    pub grid: bool,
    /// Shade every weight-`m` elementary interval containing a point.
    pub boxes: bool,
}

/// Render the point set as an SVG document (512x512 pixels).
pub fn render_svg(points: &NetPoints, m: u32, options: &PlotOptions) -> Result<String> {
    if points.dim() != 2 {
        return Err(Error::DimensionUnsupported { s: points.dim() });
    }
    let base = points.base();
    let side = pow_checked(base, m)?;
    let size = side.checked_mul(CELL).ok_or(Error::Overflow {
        what: "plot canvas size",
    })?;
    if size > (1 << 20) {
        return Err(Error::GridTooLarge {
            size: side,
            limit: (1 << 20) / CELL,
        });
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" \
         viewBox=\"0 0 {size} {size}\" shape-rendering=\"crispEdges\">"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>"
    );

    if options.boxes {
        for i in 0..points.len() {
            let bx = points.grid_box(i, m)?;
            for interval in cover_set(&bx) {
                let (d1, d2) = (interval.shape().dims()[0], interval.shape().dims()[1]);
                let (a1, a2) = (interval.cells()[0], interval.cells()[1]);
                let w = base.pow(m - d1) * CELL;
                let h = base.pow(m - d2) * CELL;
                let x = a1 * w;
                let y = size - (a2 + 1) * h;
                let _ = writeln!(
                    svg,
                    "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"#c8c8c8\"/>"
                );
            }
        }
    }

    if options.grid {
        // Fine lines first so coarser resolutions paint over them.
        for k in (1..=m).rev() {
            let step = base.pow(m - k) * CELL;
            let (width, color) = if k == 1 {
                (3, "#707070")
            } else {
                (1, "#b8b8b8")
            };
            for i in 1..base.pow(k) {
                let at = i * step;
                let offset = width / 2;
                let _ = writeln!(
                    svg,
                    "<rect x=\"{x}\" y=\"0\" width=\"{width}\" height=\"{size}\" fill=\"{color}\"/>",
                    x = at.saturating_sub(offset)
                );
                let _ = writeln!(
                    svg,
                    "<rect x=\"0\" y=\"{y}\" width=\"{size}\" height=\"{width}\" fill=\"{color}\"/>",
                    y = at.saturating_sub(offset)
                );
            }
        }
    }

    for i in 0..points.len() {
        let bx = points.grid_box(i, m)?;
        let x = bx.corner()[0] * CELL;
        let y = size - (bx.corner()[1] + 1) * CELL;
        let _ = writeln!(
            svg,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"#000000\"/>"
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
