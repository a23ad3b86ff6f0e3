//! R-MAT recursive-matrix graph generator.

use crate::error::{Error, Result};
use crate::graph::EdgeList;
use crate::prng::SplitMix64;

/// Quadrant probabilities used when none are given.
pub const DEFAULT_PROBS: (f64, f64, f64, f64) = (0.57, 0.19, 0.19, 0.05);

#[derive(Debug, Clone)]
pub struct RmatParams {
    pub scale: u32,
    pub edge_factor: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

impl RmatParams {
    pub fn new(scale: u32, edge_factor: u32, seed: u64) -> Self {
        let (a, b, c, d) = DEFAULT_PROBS;
        Self {
            scale,
            edge_factor,
            a,
            b,
            c,
            d,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale < 1 {
            return Err(Error::InvalidParams("scale must be >= 1".into()));
        }
        if self.edge_factor < 1 {
            return Err(Error::InvalidParams("edge factor must be >= 1".into()));
        }
        let probs = [self.a, self.b, self.c, self.d];
        if probs.iter().any(|p| *p < 0.0) {
            return Err(Error::InvalidParams("probabilities must be >= 0".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "probabilities must sum to 1 (got {sum})"
            )));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.scale
    }

    pub fn pair_count(&self) -> u64 {
        (self.edge_factor as u64) << self.scale
    }
}

/// Sample exactly `edge_factor * 2^scale` directed pairs over `2^scale`
/// vertices by recursive quadrant selection. One uniform draw per level
/// decides the quadrant. Deterministic for a fixed seed; duplicates and
/// self-loops are kept here and merged later by graph normalization.
pub fn generate_rmat(params: &RmatParams) -> Result<EdgeList> {
    params.validate()?;
    let mut rng = SplitMix64::new(params.seed);
    let n = params.vertex_count();
    let count = params.pair_count();
    let ab = params.a + params.b;
    let abc = ab + params.c;

    let mut pairs = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let mut u = 0u32;
        let mut v = 0u32;
        for _ in 0..params.scale {
            let r = rng.next_f64();
            let (ubit, vbit) = if r < params.a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            u = (u << 1) | ubit;
            v = (v << 1) | vbit;
        }
        pairs.push((u, v));
    }
    Ok(EdgeList { n, pairs })
}
