//! Greedy b-adic box packing.
//!
//! The construction repeatedly picks a free grid box of resolution `m` and
//! then retires every grid box lying in any volume-`b^-m` elementary
//! interval that contains the pick. In the plane this provably runs for
//! exactly `b^m` steps and the chosen boxes form a (0,m,2)-net. From
//! dimension three on the process can stall early; [`stall_search`] hunts
//! for the shortest such prefixes exhaustively.
//!
//! The free region is a union of grid boxes at all times, so the state
//! keeps one occupancy table per shape of weight `m` (the authoritative
//! record: a box is free iff all of its containing intervals are unmarked)
//! plus a plain bitset over grid boxes as a derived index for O(1) counting
//! and uniform sampling.
//!
//! Randomized choices use ChaCha8 seeded via `seed_from_u64` and rejection
//! sampling on the raw 64-bit stream; identical seeds reproduce identical
//! runs on every platform.

use rand_chacha::ChaCha8Rng;

use crate::badic::{pow_checked, shapes_of_weight, GridBox, Shape};
use crate::error::Error;
use crate::sampling;
use crate::{Result, DEFAULT_SEARCH_BUDGET};

/// Upper limit on `b^(m*s)`, the number of grid boxes a state may track.
const MAX_BOXES: u64 = 1 << 28;

const BLOCK_BITS: u64 = 4096;

/// How the next box is picked at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// First free box in row-major (lexicographic corner) order.
    Lexicographic,
    /// Uniformly random among the currently free boxes, derived
    /// deterministically from the seed.
    SeededUniform(u64),
    /// Externally supplied choices; a choice that is not free at its step is
    /// an error, never a silent skip.
    Scripted(Vec<GridBox>),
}

/// Result of a greedy run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// All `b^m` boxes were placed; the corners form a (0,m,s)-net.
    Complete(Vec<GridBox>),
    /// The free region emptied early (possible only for `s >= 3`).
    Stalled(StallReport),
}

impl RunOutcome {
    pub fn boxes(&self) -> &[GridBox] {
        match self {
            RunOutcome::Complete(boxes) => boxes,
            RunOutcome::Stalled(report) => &report.chosen,
        }
    }
}

/// Evidence of a stall: the chosen prefix after which no grid box is free.
///
/// `confirmed_empty` is recomputed from the per-shape occupancy tables
/// alone, independently of the incremental bitset bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallReport {
    pub steps: usize,
    pub chosen: Vec<GridBox>,
    pub confirmed_empty: bool,
}

/// The mutable state of a greedy run: per-shape interval occupancy tables,
/// the derived free-box bitset, and the chosen boxes so far.
#[derive(Debug, Clone)]
pub struct AvailabilityState {
    base: u64,
    resolution: u32,
    dim: usize,
    side: u64,
    box_count: u64,
    shapes: Vec<Shape>,
    // Per shape: per-axis block extents b^(m-d_j) and cell radices b^d_j.
    extents: Vec<Vec<u64>>,
    radices: Vec<Vec<u64>>,
    marked: Vec<Vec<bool>>,
    words: Vec<u64>,
    block_counts: Vec<u32>,
    free: u64,
    chosen: Vec<GridBox>,
}

impl AvailabilityState {
    pub fn new(base: u64, resolution: u32, dim: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument("base must be at least 2".into()));
        }
        if dim < 1 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        let side = pow_checked(base, resolution)?;
        let mut box_count: u64 = 1;
        for _ in 0..dim {
            box_count = box_count.checked_mul(side).ok_or(Error::Overflow {
                what: "grid box count b^(m*s)",
            })?;
        }
        if box_count > MAX_BOXES {
            return Err(Error::GridTooLarge {
                size: box_count,
                limit: MAX_BOXES,
            });
        }
        let shapes = shapes_of_weight(dim, resolution);
        let mut extents = Vec::with_capacity(shapes.len());
        let mut radices = Vec::with_capacity(shapes.len());
        let mut marked = Vec::with_capacity(shapes.len());
        for shape in &shapes {
            extents.push(
                shape
                    .dims()
                    .iter()
                    .map(|&d| base.pow(resolution - d))
                    .collect(),
            );
            radices.push(shape.dims().iter().map(|&d| base.pow(d)).collect());
            marked.push(vec![false; side as usize]);
        }
        let word_count = (box_count as usize).div_ceil(64);
        let mut words = vec![u64::MAX; word_count];
        // Trailing bits past box_count must stay clear.
        let spare = word_count as u64 * 64 - box_count;
        if spare > 0 {
            *words.last_mut().unwrap() >>= spare;
        }
        let block_count = (box_count).div_ceil(BLOCK_BITS) as usize;
        let mut block_counts = vec![BLOCK_BITS as u32; block_count];
        *block_counts.last_mut().unwrap() =
            (box_count - (block_count as u64 - 1) * BLOCK_BITS) as u32;
        Ok(AvailabilityState {
            base,
            resolution,
            dim,
            side,
            box_count,
            shapes,
            extents,
            radices,
            marked,
            words,
            block_counts,
            free: box_count,
            chosen: Vec::new(),
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn chosen(&self) -> &[GridBox] {
        &self.chosen
    }

    /// Exact number of currently free grid boxes; zero iff the run must stop.
    pub fn available_count(&self) -> u64 {
        self.free
    }

    /// Marked intervals per shape; each entry equals the number of choices
    /// made so far.
    pub fn marked_counts(&self) -> Vec<u64> {
        self.marked
            .iter()
            .map(|t| t.iter().filter(|&&x| x).count() as u64)
            .collect()
    }

    fn index_of(&self, corner: &[u64]) -> u64 {
        corner.iter().fold(0, |acc, &u| acc * self.side + u)
    }

    fn box_at(&self, mut idx: u64) -> GridBox {
        let mut corner = vec![0u64; self.dim];
        for j in (0..self.dim).rev() {
            corner[j] = idx % self.side;
            idx /= self.side;
        }
        GridBox::new(self.base, self.resolution, corner)
            .expect("indices below b^(m*s) decode to valid boxes")
    }

    fn bit(&self, idx: u64) -> bool {
        self.words[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    fn clear_bit(&mut self, idx: u64) {
        let word = &mut self.words[(idx / 64) as usize];
        let mask = 1u64 << (idx % 64);
        if *word & mask != 0 {
            *word &= !mask;
            self.free -= 1;
            self.block_counts[(idx / BLOCK_BITS) as usize] -= 1;
        }
    }

    pub fn is_available(&self, bx: &GridBox) -> bool {
        if bx.base() != self.base || bx.resolution() != self.resolution || bx.dim() != self.dim {
            return false;
        }
        self.bit(self.index_of(bx.corner()))
    }

    fn interval_index(&self, shape_idx: usize, corner: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (j, &u) in corner.iter().enumerate() {
            acc = acc * self.radices[shape_idx][j] + u / self.extents[shape_idx][j];
        }
        acc
    }

    /// Pick the box: mark its containing interval in every shape table and
    /// retire all grid boxes those intervals cover.
    pub fn choose(&mut self, bx: &GridBox) -> Result<()> {
        if bx.base() != self.base || bx.resolution() != self.resolution || bx.dim() != self.dim {
            return Err(Error::InvalidArgument(
                "box does not match the state's base, resolution or dimension".into(),
            ));
        }
        if !self.bit(self.index_of(bx.corner())) {
            return Err(Error::ScriptedUnavailable {
                step: self.chosen.len(),
                corner: bx.corner().to_vec(),
            });
        }
        for si in 0..self.shapes.len() {
            let e = self.interval_index(si, bx.corner());
            debug_assert!(
                !self.marked[si][e as usize],
                "a free box cannot lie in a marked interval"
            );
            self.marked[si][e as usize] = true;
            self.retire_interval(si, bx.corner());
        }
        self.chosen.push(bx.clone());
        Ok(())
    }

    /// Clear the bits of every grid box inside the shape-`si` interval
    /// containing `corner`. The last axis is contiguous in index space.
    fn retire_interval(&mut self, si: usize, corner: &[u64]) {
        let lows: Vec<u64> = corner
            .iter()
            .zip(&self.extents[si])
            .map(|(&u, &ext)| u / ext * ext)
            .collect();
        let extents = self.extents[si].clone();
        let last = self.dim - 1;
        let mut offsets = vec![0u64; last];
        loop {
            let mut start = 0u64;
            for j in 0..last {
                start = start * self.side + lows[j] + offsets[j];
            }
            start = start * self.side + lows[last];
            for k in 0..extents[last] {
                self.clear_bit(start + k);
            }
            // Odometer over the leading axes.
            let mut j = last;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                offsets[j] += 1;
                if offsets[j] < extents[j] {
                    break;
                }
                offsets[j] = 0;
            }
        }
    }

    /// Lexicographically first free box.
    pub fn first_available(&self) -> Option<GridBox> {
        let block = self.block_counts.iter().position(|&c| c > 0)?;
        let word_lo = block * (BLOCK_BITS as usize / 64);
        let word_hi = (word_lo + BLOCK_BITS as usize / 64).min(self.words.len());
        for w in word_lo..word_hi {
            if self.words[w] != 0 {
                let idx = w as u64 * 64 + self.words[w].trailing_zeros() as u64;
                return Some(self.box_at(idx));
            }
        }
        unreachable!("non-empty block must contain a set bit")
    }

    /// Uniformly random free box, or `None` when nothing is free.
    pub fn sample_available(&self, rng: &mut ChaCha8Rng) -> Option<GridBox> {
        if self.free == 0 {
            return None;
        }
        let mut r = sampling::uniform_below(rng, self.free);
        let mut block = 0usize;
        while r >= self.block_counts[block] as u64 {
            r -= self.block_counts[block] as u64;
            block += 1;
        }
        let word_lo = block * (BLOCK_BITS as usize / 64);
        for w in word_lo..self.words.len() {
            let pop = self.words[w].count_ones() as u64;
            if r < pop {
                let mut word = self.words[w];
                for _ in 0..r {
                    word &= word - 1;
                }
                let idx = w as u64 * 64 + word.trailing_zeros() as u64;
                return Some(self.box_at(idx));
            }
            r -= pop;
        }
        unreachable!("free count says a set bit exists")
    }

    /// All free boxes in lexicographic order.
    pub fn available_boxes(&self) -> Vec<GridBox> {
        let mut out = Vec::with_capacity(self.free as usize);
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let idx = w as u64 * 64 + bits.trailing_zeros() as u64;
                out.push(self.box_at(idx));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Free-box count recomputed from the occupancy tables alone, ignoring
    /// the bitset. Slow; used to confirm stalls and in tests.
    pub fn available_count_from_tables(&self) -> u64 {
        let mut count = 0;
        let mut corner = vec![0u64; self.dim];
        for idx in 0..self.box_count {
            let mut v = idx;
            for j in (0..self.dim).rev() {
                corner[j] = v % self.side;
                v /= self.side;
            }
            let free = (0..self.shapes.len())
                .all(|si| !self.marked[si][self.interval_index(si, &corner) as usize]);
            if free {
                count += 1;
            }
        }
        count
    }
}

/// Run the greedy packing to exhaustion of the free region.
///
/// For `s = 2` the outcome is always `Complete` with exactly `b^m` boxes;
/// for `s >= 3` a `Stalled` outcome is possible. `m = 0` returns the single
/// box immediately without consulting the policy.
pub fn greedy_run(
    base: u64,
    resolution: u32,
    dim: usize,
    policy: &ChoicePolicy,
) -> Result<RunOutcome> {
    if resolution == 0 {
        if base < 2 {
            return Err(Error::InvalidArgument("base must be at least 2".into()));
        }
        if dim < 1 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        return Ok(RunOutcome::Complete(vec![GridBox::new(
            base,
            0,
            vec![0; dim],
        )?]));
    }
    let mut state = AvailabilityState::new(base, resolution, dim)?;
    let mut rng = match policy {
        ChoicePolicy::SeededUniform(seed) => Some(sampling::rng_from_seed(*seed)),
        _ => None,
    };
    while state.available_count() > 0 {
        let step = state.chosen().len();
        let bx = match policy {
            ChoicePolicy::Lexicographic => state.first_available().expect("free region non-empty"),
            ChoicePolicy::SeededUniform(_) => state
                .sample_available(rng.as_mut().expect("rng initialized for seeded policy"))
                .expect("free region non-empty"),
            ChoicePolicy::Scripted(list) => match list.get(step) {
                Some(bx) => bx.clone(),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "scripted choices exhausted after {step} steps with boxes still free"
                    )))
                }
            },
        };
        state.choose(&bx)?;
        debug_assert!(state.chosen().len() as u64 <= state.side);
    }
    let complete = state.chosen().len() as u64 == state.side;
    if complete {
        Ok(RunOutcome::Complete(state.chosen))
    } else {
        let confirmed_empty = state.available_count_from_tables() == 0;
        Ok(RunOutcome::Stalled(StallReport {
            steps: state.chosen.len(),
            chosen: state.chosen,
            confirmed_empty,
        }))
    }
}

/// Exhaustively search choice prefixes of length at most `depth` for one
/// that empties the free region before `b^m` boxes are placed. Returns the
/// lexicographically least stalling prefix, or `None`.
///
/// For `s <= 2` no stall exists and the answer is `None` immediately.
pub fn stall_search(
    base: u64,
    resolution: u32,
    dim: usize,
    depth: usize,
) -> Result<Option<Vec<GridBox>>> {
    stall_search_budgeted(base, resolution, dim, depth, DEFAULT_SEARCH_BUDGET)
}

/// [`stall_search`] with an explicit node budget; each applied choice costs
/// one node.
pub fn stall_search_budgeted(
    base: u64,
    resolution: u32,
    dim: usize,
    depth: usize,
    budget: u64,
) -> Result<Option<Vec<GridBox>>> {
    if dim < 1 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    if dim <= 2 || resolution == 0 {
        return Ok(None);
    }
    let side = pow_checked(base, resolution)?;
    let state = AvailabilityState::new(base, resolution, dim)?;
    let mut nodes = 0u64;
    stall_dfs(&state, depth, side, &mut nodes, budget)
}

fn stall_dfs(
    state: &AvailabilityState,
    depth_left: usize,
    side: u64,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<GridBox>>> {
    if depth_left == 0 {
        return Ok(None);
    }
    for bx in state.available_boxes() {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut child = state.clone();
        child
            .choose(&bx)
            .expect("enumerated boxes are free by construction");
        if child.available_count() == 0 {
            if (child.chosen().len() as u64) < side {
                return Ok(Some(child.chosen().to_vec()));
            }
            continue; // the prefix completed a net; not a stall
        }
        if let Some(witness) = stall_dfs(&child, depth_left - 1, side, nodes, budget)? {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}
