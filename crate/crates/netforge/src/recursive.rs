//! Recursive net synthesis in the plane.
//!
//! A (0,m,2)-net can be grown level by level: take `b` nets of resolution
//! `m - 1`, compress them horizontally into the `b` vertical strips of width
//! `1/b`, then repair the second coordinate so that every horizontal sliver
//! of height `b^-m` is hit exactly once. The repair appends one base-`b`
//! digit to each `y` coordinate, and which digit goes to which point is
//! governed by one permutation of `{0, ..., b-1}` per row of the coarser
//! grid — `b^(n-1)` permutations at level `n`.
//!
//! Choosing the identity permutation everywhere reproduces the classical
//! Hammersley net ([`hammersley`]); arbitrary permutation families sweep out
//! a large space of distinct nets, and the input nets of a level do not even
//! have to be equal ([`compose_level`]).

use serde::{Deserialize, Serialize};

use crate::badic::pow_checked;
use crate::error::Error;
use crate::points::NetPoints;
use crate::sampling;
use crate::Result;

/// A bijection on `{0, ..., b-1}`, stored as an index array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    /// Validates bijectivity once; applications are unchecked lookups.
    pub fn new(map: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if (v as usize) >= map.len() || seen[v as usize] {
                return Err(Error::MalformedFamily(format!(
                    "{map:?} is not a permutation of 0..{}",
                    map.len()
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(degree: u64) -> Self {
        Permutation {
            map: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> u64 {
        self.map.len() as u64
    }

    pub fn apply(&self, digit: u64) -> u64 {
        self.map[digit as usize] as u64
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }
}

/// Permutations driving one full recursive construction: level `n` holds
/// `b^(n-1)` permutations of `{0, ..., b-1}`, for `n = 1, ..., m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationFamily {
    base: u64,
    levels: Vec<Vec<Permutation>>,
}

impl PermutationFamily {
    pub fn new(base: u64, levels: Vec<Vec<Permutation>>) -> Result<Self> {
        if base < 2 {
            return Err(Error::MalformedFamily("base must be at least 2".into()));
        }
        for (i, level) in levels.iter().enumerate() {
            let n = i as u32 + 1;
            let expected = pow_checked(base, n - 1)?;
            if level.len() as u64 != expected {
                return Err(Error::MalformedFamily(format!(
                    "level {n} has {} permutations, expected b^{} = {expected}",
                    level.len(),
                    n - 1
                )));
            }
            if let Some(p) = level.iter().find(|p| p.degree() != base) {
                return Err(Error::MalformedFamily(format!(
                    "level {n} contains a permutation of degree {}, expected {base}",
                    p.degree()
                )));
            }
        }
        Ok(PermutationFamily { base, levels })
    }

    /// The identity family: recursion with it yields the Hammersley net.
    pub fn identity(base: u64, resolution: u32) -> Result<Self> {
        let levels = (1..=resolution)
            .map(|n| {
                let count = pow_checked(base, n - 1)?;
                Ok(vec![Permutation::identity(base); count as usize])
            })
            .collect::<Result<_>>()?;
        PermutationFamily::new(base, levels)
    }

    /// Uniformly random permutation in every slot, deterministic in the seed.
    pub fn random(base: u64, resolution: u32, seed: u64) -> Result<Self> {
        let mut rng = sampling::rng_from_seed(seed);
        let levels = (1..=resolution)
            .map(|n| {
                let count = pow_checked(base, n - 1)?;
                (0..count)
                    .map(|_| Permutation::new(sampling::random_permutation(&mut rng, base)))
                    .collect()
            })
            .collect::<Result<_>>()?;
        PermutationFamily::new(base, levels)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Number of levels `m`.
    pub fn resolution(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Permutations of level `n` (1-based).
    pub fn level(&self, n: u32) -> &[Permutation] {
        &self.levels[n as usize - 1]
    }

    pub fn levels(&self) -> &[Vec<Permutation>] {
        &self.levels
    }
}

/// Intermediate stack of one synthesis level: `x` lives at exponent `level`,
/// `y` still at `level - 1`. Keeping the exponents separate makes the row
/// index of the repair map an exact integer read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackedPoints {
    base: u64,
    level: u32,
    points: Vec<(u64, u64)>,
}

impl StackedPoints {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }
}

/// The Hammersley net: `b^m` points whose `x` numerator is the running index
/// and whose `y` numerator is its base-`b` digit reversal.
pub fn hammersley(base: u64, resolution: u32) -> Result<NetPoints> {
    if base < 2 {
        return Err(Error::InvalidArgument("base must be at least 2".into()));
    }
    let count = pow_checked(base, resolution)?;
    let points = (0..count)
        .map(|k| vec![k, reverse_digits(k, base, resolution)])
        .collect();
    NetPoints::new(base, 2, resolution, points)
}

fn reverse_digits(mut k: u64, base: u64, digits: u32) -> u64 {
    let mut out = 0;
    for _ in 0..digits {
        out = out * base + k % base;
        k /= base;
    }
    out
}

/// Compress `b` resolution-`(n-1)` point sets into the `b` vertical strips
/// of width `1/b`: part `j` gets `x -> (x + j) / b`, `y` untouched.
pub fn scale_stack(parts: &[NetPoints]) -> Result<StackedPoints> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("no parts to stack".into()))?;
    let base = first.base();
    if parts.len() as u64 != base {
        return Err(Error::InvalidArgument(format!(
            "{} parts given, expected one per strip: b = {base}",
            parts.len()
        )));
    }
    let prev = first.exponent();
    let level = prev + 1;
    let strip = pow_checked(base, prev)?;
    pow_checked(base, level)?;
    let expected = strip;
    let mut points = Vec::with_capacity((strip * base) as usize);
    for (j, part) in parts.iter().enumerate() {
        if part.base() != base || part.dim() != 2 {
            return Err(Error::InvalidArgument(
                "parts must be plane point sets over one base".into(),
            ));
        }
        if part.exponent() != prev {
            return Err(Error::InvalidArgument(format!(
                "part {j} has exponent {}, expected {prev}",
                part.exponent()
            )));
        }
        if part.len() as u64 != expected {
            return Err(Error::InvalidArgument(format!(
                "part {j} has {} points, expected b^{prev} = {expected}",
                part.len()
            )));
        }
        for p in part.points() {
            points.push((p[0] + j as u64 * strip, p[1]));
        }
    }
    Ok(StackedPoints {
        base,
        level,
        points,
    })
}

/// Append one digit to every `y` coordinate: with leading `x` digit `x_1`
/// and row `r = y * b^(n-1)`, the new numerator is `b*y + perm_r(x_1)`.
///
/// `x` is never altered, and the added offset is at most `(b-1) / b^n`.
pub fn psi_apply(stacked: &StackedPoints, perms: &[Permutation]) -> Result<NetPoints> {
    let base = stacked.base;
    let level = stacked.level;
    let rows = pow_checked(base, level - 1)?;
    if perms.len() as u64 != rows {
        return Err(Error::MalformedFamily(format!(
            "{} permutations given, expected b^{} = {rows}",
            perms.len(),
            level - 1
        )));
    }
    if let Some(p) = perms.iter().find(|p| p.degree() != base) {
        return Err(Error::MalformedFamily(format!(
            "permutation of degree {} cannot permute base-{base} digits",
            p.degree()
        )));
    }
    let points = stacked
        .points
        .iter()
        .map(|&(x, y)| {
            debug_assert!(x < rows * base && y < rows);
            let leading = x / rows;
            let offset = perms[y as usize].apply(leading);
            debug_assert!(offset < base);
            vec![x, y * base + offset]
        })
        .collect();
    NetPoints::new(base, 2, level, points)
}

/// One synthesis level in a single call: stack `b` (not necessarily equal)
/// resolution-`(n-1)` nets and repair the second coordinate. If every part
/// is a (0,n-1,2)-net the output is a (0,n,2)-net, whatever the permutations.
pub fn compose_level(parts: &[NetPoints], perms: &[Permutation]) -> Result<NetPoints> {
    psi_apply(&scale_stack(parts)?, perms)
}

/// Full recursive construction: starting from the single point at the
/// origin, run [`compose_level`] with `b` copies of the previous level for
/// every level of the family.
pub fn recursive_run(base: u64, resolution: u32, family: &PermutationFamily) -> Result<NetPoints> {
    if family.base() != base || family.resolution() != resolution {
        return Err(Error::MalformedFamily(format!(
            "family is for (b, m) = ({}, {}), requested ({base}, {resolution})",
            family.base(),
            family.resolution()
        )));
    }
    let mut current = NetPoints::new(base, 2, 0, vec![vec![0, 0]])?;
    for n in 1..=resolution {
        let parts = vec![current; base as usize];
        current = compose_level(&parts, family.level(n))?;
    }
    Ok(current)
}
