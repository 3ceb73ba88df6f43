// Doubling and (alpha, rho) vertex-expansion checks.
//
// Side A of a bipartite graph must satisfy |Γ(X)| > 2|X| and side B
// |Γ(Y)| >= 2|Y| for all subsets of size at most k/3. Exact mode walks
// every subset by size, then lexicographically, and returns the first
// violation. Randomized mode only ever falsifies.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{neighborhood, BipartiteGraph, Side, SimpleGraph};
use crate::error::{Error, Result};
use crate::seed;

pub const DEFAULT_EXACT_LIMIT: usize = 24;

// Subsets are bitmasks in exact mode.
const MASK_BITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    Randomized { budget: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoublingConfig {
    pub exact_limit: usize,
    /// Require `|Γ(Y)| > 2|Y|` on side B as well.
    pub strict_both: bool,
}

impl Default for DoublingConfig {
    fn default() -> Self {
        DoublingConfig { exact_limit: DEFAULT_EXACT_LIMIT, strict_both: false }
    }
}

/// The inequality a set must satisfy: `|Γ(X)| > ρ|X|` or `|Γ(X)| >= ρ|X|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    Strict,
    Weak,
}

impl Inequality {
    fn violated(self, gamma: usize, size: usize, rho: f64) -> bool {
        let need = rho * size as f64;
        match self {
            Inequality::Strict => gamma as f64 <= need,
            Inequality::Weak => (gamma as f64) < need,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// `None` for a general (non-bipartite) graph.
    pub side: Option<Side>,
    pub members: Vec<usize>,
    pub neighborhood: Vec<usize>,
    pub required: Inequality,
    pub rho: f64,
}

impl Violation {
    fn verified(
        side: Option<Side>,
        members: Vec<usize>,
        neighborhood: Vec<usize>,
        required: Inequality,
        rho: f64,
    ) -> Self {
        assert!(
            required.violated(neighborhood.len(), members.len(), rho),
            "witness {members:?} does not violate the expansion inequality"
        );
        Violation { side, members, neighborhood, required, rho }
    }

    /// Recomputes the neighbourhood in `g` and confirms the violation.
    pub fn reverify_bipartite(&self, g: &BipartiteGraph, max_size: usize) -> bool {
        let Some(side) = self.side else { return false };
        match neighborhood(g, &self.members, side) {
            Ok(nb) => {
                !self.members.is_empty()
                    && self.members.len() <= max_size
                    && nb == self.neighborhood
                    && self.required.violated(nb.len(), self.members.len(), self.rho)
            }
            Err(_) => false,
        }
    }

    pub fn reverify_general(&self, g: &SimpleGraph, max_size: usize) -> bool {
        let nb = general_neighborhood(g, &self.members);
        !self.members.is_empty()
            && self.members.len() <= max_size
            && nb == self.neighborhood
            && self.required.violated(nb.len(), self.members.len(), self.rho)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "witness")]
pub enum Outcome {
    Holds,
    NotFalsified,
    Violated(Violation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictMode {
    Exact,
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublingVerdict {
    pub outcome: Outcome,
    pub mode: VerdictMode,
    pub subsets_checked: u64,
}

impl DoublingVerdict {
    /// True only for an exact certificate.
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match &self.outcome {
            Outcome::Violated(v) => Some(v),
            _ => None,
        }
    }
}

struct SideSpec<'a> {
    label: Option<Side>,
    lists: Vec<&'a [usize]>,
    universe: usize,
    required: Inequality,
}

pub fn check_doubling(g: &BipartiteGraph, mode: CheckMode, config: &DoublingConfig) -> Result<DoublingVerdict> {
    let k = g.k();
    let side_b = if config.strict_both { Inequality::Strict } else { Inequality::Weak };
    let sides = [
        SideSpec {
            label: Some(Side::A),
            lists: (0..k).map(|v| g.neighbors(Side::A, v)).collect(),
            universe: k,
            required: Inequality::Strict,
        },
        SideSpec {
            label: Some(Side::B),
            lists: (0..k).map(|v| g.neighbors(Side::B, v)).collect(),
            universe: k,
            required: side_b,
        },
    ];
    run(&sides, k / 3, 2.0, mode, config.exact_limit)
}

/// `(alpha, rho)` vertex expansion of a general graph: every `X` with
/// `|X| <= alpha |V|` has `|Γ(X)| >= rho |X|`, where `Γ(X)` is the union of
/// neighbour lists (so members of `X` count only if adjacent to `X`).
pub fn check_vertex_expansion(
    g: &SimpleGraph,
    alpha: f64,
    rho: f64,
    mode: CheckMode,
    config: &DoublingConfig,
) -> Result<DoublingVerdict> {
    if !(alpha > 0.0 && alpha <= 1.0) || rho.is_nan() || rho < 0.0 {
        return Err(Error::InvalidParameter(format!("need 0 < alpha <= 1 and rho >= 0, got {alpha}, {rho}")));
    }
    let n = g.len();
    let max_size = (alpha * n as f64 + 1e-9).floor() as usize;
    let sides = [SideSpec {
        label: None,
        lists: (0..n).map(|v| g.neighbors(v)).collect(),
        universe: n,
        required: Inequality::Weak,
    }];
    run(&sides, max_size, rho, mode, config.exact_limit)
}

fn general_neighborhood(g: &SimpleGraph, x: &[usize]) -> Vec<usize> {
    let mut hit = vec![false; g.len()];
    for &v in x {
        for &w in g.neighbors(v) {
            hit[w] = true;
        }
    }
    (0..g.len()).filter(|&w| hit[w]).collect()
}

fn run(sides: &[SideSpec], max_size: usize, rho: f64, mode: CheckMode, exact_limit: usize) -> Result<DoublingVerdict> {
    match mode {
        CheckMode::Exact => {
            let n = sides.iter().map(|s| s.lists.len()).max().unwrap_or(0);
            let limit = exact_limit.min(MASK_BITS);
            if n > limit {
                return Err(Error::ExactLimitExceeded { k: n, limit });
            }
            let mut checked = 0u64;
            for side in sides {
                let masks: Vec<u64> =
                    side.lists.iter().map(|l| l.iter().fold(0u64, |m, &w| m | 1 << w)).collect();
                let (found, count) = exact_search(&masks, max_size, |gamma, size| side.required.violated(gamma, size, rho));
                checked += count;
                if let Some(members) = found {
                    let nb = union(&side.lists, &members, side.universe);
                    let v = Violation::verified(side.label, members, nb, side.required, rho);
                    return Ok(DoublingVerdict { outcome: Outcome::Violated(v), mode: VerdictMode::Exact, subsets_checked: checked });
                }
            }
            Ok(DoublingVerdict { outcome: Outcome::Holds, mode: VerdictMode::Exact, subsets_checked: checked })
        }
        CheckMode::Randomized { budget, seed } => {
            let mut rng = seed::rng(seed);
            let mut checked = 0u64;
            if max_size > 0 {
                for _ in 0..budget {
                    let side = &sides[if sides.len() > 1 { rng.random_range(0..sides.len()) } else { 0 }];
                    let size = rng.random_range(1..=max_size.min(side.lists.len()));
                    let mut members = index::sample(&mut rng, side.lists.len(), size).into_vec();
                    members.sort_unstable();
                    checked += 1;
                    let nb = union(&side.lists, &members, side.universe);
                    if side.required.violated(nb.len(), members.len(), rho) {
                        let v = Violation::verified(side.label, members, nb, side.required, rho);
                        return Ok(DoublingVerdict {
                            outcome: Outcome::Violated(v),
                            mode: VerdictMode::Randomized,
                            subsets_checked: checked,
                        });
                    }
                }
            }
            Ok(DoublingVerdict { outcome: Outcome::NotFalsified, mode: VerdictMode::Randomized, subsets_checked: checked })
        }
    }
}

fn union(lists: &[&[usize]], members: &[usize], universe: usize) -> Vec<usize> {
    let mut hit = vec![false; universe];
    for &v in members {
        for &w in lists[v] {
            hit[w] = true;
        }
    }
    (0..universe).filter(|&w| hit[w]).collect()
}

/// First violating subset by (size, lexicographic order) and the number of
/// search nodes visited. Each first element is an independent work unit;
/// the count covers units up to and including the one holding the witness.
fn exact_search<F>(masks: &[u64], max_size: usize, violates: F) -> (Option<Vec<usize>>, u64)
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let n = masks.len();
    let mut checked = 0u64;
    for size in 1..=max_size.min(n) {
        let units: Vec<(Option<Vec<usize>>, u64)> = (0..=n - size)
            .into_par_iter()
            .map(|first| {
                let mut members = vec![first];
                let mut count = 0u64;
                let found = dfs(masks, first + 1, size - 1, masks[first], &mut members, size, &violates, &mut count);
                (found.then_some(members), count)
            })
            .collect();
        for (found, count) in units {
            checked += count;
            if found.is_some() {
                return (found, checked);
            }
        }
    }
    (None, checked)
}

#[allow(clippy::too_many_arguments)]
fn dfs<F>(
    masks: &[u64],
    start: usize,
    remaining: usize,
    mask: u64,
    members: &mut Vec<usize>,
    size: usize,
    violates: &F,
    count: &mut u64,
) -> bool
where
    F: Fn(usize, usize) -> bool,
{
    *count += 1;
    let gamma = mask.count_ones() as usize;
    // Γ only grows, so no completion of this prefix can violate.
    if !violates(gamma, size) {
        return false;
    }
    if remaining == 0 {
        return true;
    }
    for next in start..=masks.len() - remaining {
        members.push(next);
        if dfs(masks, next + 1, remaining - 1, mask | masks[next], members, size, violates, count) {
            return true;
        }
        members.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(g: &BipartiteGraph) -> DoublingVerdict {
        check_doubling(g, CheckMode::Exact, &DoublingConfig::default()).unwrap()
    }

    #[test]
    fn complete_graph_doubles() {
        assert!(exact(&BipartiteGraph::complete(6)).holds());
    }

    #[test]
    fn matching_fails_on_a_singleton() {
        let v = exact(&BipartiteGraph::perfect_matching(6));
        let w = v.violation().unwrap();
        assert_eq!(w.side, Some(Side::A));
        assert_eq!(w.members, vec![0]);
        assert_eq!(w.neighborhood, vec![0]);
        assert_eq!(w.required, Inequality::Strict);
    }

    #[test]
    fn empty_graph_fails_with_empty_neighborhood() {
        let g = BipartiteGraph::from_edges(6, 1, []).unwrap();
        let v = exact(&g);
        let w = v.violation().unwrap();
        assert_eq!(w.members, vec![0]);
        assert!(w.neighborhood.is_empty());
        assert!(w.reverify_bipartite(&g, 2));
    }

    #[test]
    fn side_b_is_weak_unless_forced() {
        // Circulant a -- {a, .., a+3} on 6 + 6 vertices, rewired so that b0
        // has exactly two neighbours: weak side B holds, strict fails on {b0}.
        let mut edges: Vec<(usize, usize)> =
            (0..6).flat_map(|a| (0..4).map(move |d| (a, (a + d) % 6))).collect();
        edges.retain(|&e| e != (3, 0) && e != (4, 0));
        edges.extend([(3, 1), (4, 2)]);
        let g = BipartiteGraph::from_edges(6, 5, edges).unwrap();
        assert_eq!(g.neighbors(Side::B, 0), &[0, 5]);
        assert!(exact(&g).holds());
        let strict = DoublingConfig { strict_both: true, ..Default::default() };
        let v = check_doubling(&g, CheckMode::Exact, &strict).unwrap();
        let w = v.violation().expect("strict side B must fail");
        assert_eq!((w.side, w.members.clone()), (Some(Side::B), vec![0]));
    }

    #[test]
    fn exact_limit_is_enforced() {
        let g = BipartiteGraph::complete(25);
        assert_eq!(
            check_doubling(&g, CheckMode::Exact, &DoublingConfig::default()).unwrap_err(),
            Error::ExactLimitExceeded { k: 25, limit: 24 }
        );
        let v = check_doubling(&g, CheckMode::Randomized { budget: 50, seed: 1 }, &DoublingConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::NotFalsified);
        assert_eq!(v.subsets_checked, 50);
    }

    #[test]
    fn vertex_expansion_examples() {
        let cfg = DoublingConfig::default();
        for m in 7..12 {
            let v = check_vertex_expansion(&SimpleGraph::complete(m), 1.0 / 3.0, 2.0, CheckMode::Exact, &cfg).unwrap();
            assert!(v.holds(), "K_{m}");
        }
        let isolated = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let v = check_vertex_expansion(&isolated, 1.0 / 3.0, 1.0, CheckMode::Exact, &cfg).unwrap();
        assert_eq!(v.violation().unwrap().members, vec![5]);

        // In C_9 no singleton violates; {0, 1} has |Γ| = 4, {0, 2} only 3.
        let c9 = SimpleGraph::cycle(9);
        let v = check_vertex_expansion(&c9, 1.0 / 3.0, 2.0, CheckMode::Exact, &cfg).unwrap();
        let w = v.violation().unwrap();
        assert_eq!(w.members, vec![0, 2]);
        assert_eq!(w.neighborhood, vec![1, 3, 8]);
        assert!(w.reverify_general(&c9, 3));
    }
}
