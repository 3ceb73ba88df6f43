use rayon::prelude::*;
use serde::Serialize;

use super::{antichain_pair, check_owner, distance, random_extension, LinearExtension};
use crate::bits;
use crate::error::Result;
use crate::poset::{enumerate_linear_extensions, width_and_antichain, Poset};
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LedMode {
    Exact,
    HeuristicLowerBound,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LedStats {
    pub extensions: usize,
    pub pairs_scanned: u64,
    pub restarts: usize,
    pub search_steps: u64,
}

#[derive(Clone, Debug)]
pub struct LedResult {
    pub value: usize,
    pub witness: (LinearExtension, LinearExtension),
    pub mode: LedMode,
    pub stats: LedStats,
}

/// Exact diameter by scanning every unordered pair of fingerprints.
///
/// The witness is the first maximum in canonical enumeration order. Work is
/// split per first index and merged by (value desc, index asc), which gives
/// the same witness as a sequential scan.
pub fn led_exact(p: &Poset, limit: usize) -> Result<LedResult> {
    let all = enumerate_linear_extensions(p, limit)?;
    let count = all.len();
    let (value, i, j) = (0..count)
        .into_par_iter()
        .map(|i| {
            let fi = all[i].fingerprint();
            let mut best = (0usize, i, i);
            for (j, l) in all.iter().enumerate().skip(i + 1) {
                let d = bits::hamming(fi, l.fingerprint());
                if d > best.0 {
                    best = (d, i, j);
                }
            }
            best
        })
        .reduce(|| (0, 0, 0), better);
    Ok(LedResult {
        value,
        witness: (all[i].clone(), all[j].clone()),
        mode: LedMode::Exact,
        stats: LedStats {
            extensions: count,
            pairs_scanned: (count as u64) * (count.saturating_sub(1) as u64) / 2,
            ..LedStats::default()
        },
    })
}

fn better(a: (usize, usize, usize), b: (usize, usize, usize)) -> (usize, usize, usize) {
    if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) {
        b
    } else {
        a
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSearchParams {
    pub restarts: usize,
    pub max_steps: usize,
    pub seed: u64,
}

impl Default for LocalSearchParams {
    fn default() -> Self {
        LocalSearchParams { restarts: 32, max_steps: 10_000, seed: 0 }
    }
}

/// Hill climbing on pairs of extensions.
///
/// A move swaps two adjacent incomparable elements in one of the two
/// extensions; only moves that increase the distance (always by exactly one)
/// are taken, scanning the first extension then the second, left to right.
/// Restart 0 starts from [`antichain_pair`] on a maximum antichain, the
/// others from two seeded random extensions.
pub fn led_local_search(p: &Poset, params: &LocalSearchParams) -> Result<LedResult> {
    let restarts = params.restarts.max(1);
    let runs: Vec<(usize, Vec<usize>, Vec<usize>, u64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let (a, b) = if r == 0 {
                let (_, antichain) = width_and_antichain(p);
                antichain_pair(p, &antichain).expect("maximum antichain is an antichain")
            } else {
                let mut rng = seed::rng(seed::derive_seed(params.seed, r as u64));
                (random_extension(p, &mut rng), random_extension(p, &mut rng))
            };
            let start = bits::hamming(a.fingerprint(), b.fingerprint());
            let (o1, o2, value, steps) = climb(p, a.order, b.order, start, params.max_steps);
            (value, o1, o2, steps)
        })
        .collect();

    let steps: u64 = runs.iter().map(|r| r.3).sum();
    // lowest restart index wins ties
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best].0 {
            best = i;
        }
    }
    let (value, o1, o2, _) = runs.into_iter().nth(best).expect("at least one restart");

    let l1 = LinearExtension::from_valid(p, o1);
    let l2 = LinearExtension::from_valid(p, o2);
    debug_assert_eq!(distance(p, &l1, &l2).ok(), Some(value));
    Ok(LedResult {
        value,
        witness: (l1, l2),
        mode: LedMode::HeuristicLowerBound,
        stats: LedStats { restarts, search_steps: steps, ..LedStats::default() },
    })
}

fn climb(
    p: &Poset,
    mut o1: Vec<usize>,
    mut o2: Vec<usize>,
    mut value: usize,
    max_steps: usize,
) -> (Vec<usize>, Vec<usize>, usize, u64) {
    let n = o1.len();
    let mut pos1 = inverse(&o1);
    let mut pos2 = inverse(&o2);
    let mut steps = 0u64;
    'search: while (steps as usize) < max_steps {
        for side in 0..2 {
            let (order, pos, other) = if side == 0 {
                (&mut o1, &mut pos1, &pos2)
            } else {
                (&mut o2, &mut pos2, &pos1)
            };
            for i in 0..n.saturating_sub(1) {
                let (x, y) = (order[i], order[i + 1]);
                // x precedes y here; the swap gains iff the other agrees.
                if other[x] < other[y] && p.incomparable(x, y) {
                    order.swap(i, i + 1);
                    pos[x] = i + 1;
                    pos[y] = i;
                    value += 1;
                    steps += 1;
                    continue 'search;
                }
            }
        }
        break;
    }
    (o1, o2, value, steps)
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

impl LedResult {
    /// Distance of the witness recomputed from scratch.
    pub fn recheck(&self, p: &Poset) -> Result<usize> {
        check_owner(p, &[&self.witness.0, &self.witness.1])?;
        distance(p, &self.witness.0, &self.witness.1)
    }
}
