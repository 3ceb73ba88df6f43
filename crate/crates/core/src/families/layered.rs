use std::ops::Range;

use crate::error::{Error, Result};
use crate::expander::{check_doubling, sample_configuration, BipartiteGraph, CheckMode, DoublingConfig, DoublingVerdict};
use crate::linext::LinearExtension;
use crate::poset::Poset;
use crate::seed::derive_seed;

/// How each layer graph's doubling property is checked: exactly when
/// `k <= config.exact_limit`, otherwise by `budget` random subsets. With
/// `enabled` off no verdicts are recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerCheck {
    pub config: DoublingConfig,
    pub budget: usize,
    pub seed: u64,
    pub enabled: bool,
}

impl Default for LayerCheck {
    fn default() -> Self {
        LayerCheck { config: DoublingConfig::default(), budget: 10_000, seed: 0, enabled: true }
    }
}

impl LayerCheck {
    pub fn disabled() -> Self {
        LayerCheck { enabled: false, ..LayerCheck::default() }
    }

    /// Exact checks up to `k` vertices per side.
    pub fn exact_up_to(k: usize) -> Self {
        let mut check = LayerCheck::default();
        check.config.exact_limit = check.config.exact_limit.max(k);
        check
    }

    fn verdict(&self, g: &BipartiteGraph, layer: usize) -> Result<DoublingVerdict> {
        let mode = if g.k() <= self.config.exact_limit.min(64) {
            CheckMode::Exact
        } else {
            CheckMode::Randomized { budget: self.budget, seed: derive_seed(self.seed, layer as u64) }
        };
        check_doubling(g, mode, &self.config)
    }
}

/// Layers `A_1..A_m` of size `k`; `graphs[i - 1]` joins `A_i` (side A) to
/// `A_{i+1}` (side B) and the order is the transitive closure of those edges.
#[derive(Clone, Debug)]
pub struct LayeredPoset {
    pub base: Poset,
    pub k: usize,
    pub m: usize,
    pub graphs: Vec<BipartiteGraph>,
    pub epsilon: Option<f64>,
    pub r: usize,
    /// Doubling verdict of each layer graph, recorded but never enforced.
    pub doubling: Vec<DoublingVerdict>,
}

impl LayeredPoset {
    /// 1-based layer of element `x`.
    pub fn layer(&self, x: usize) -> usize {
        x / self.k + 1
    }

    /// Element indices of layer `i` (1-based).
    pub fn members(&self, i: usize) -> Range<usize> {
        (i - 1) * self.k..i * self.k
    }

    /// True when every layer graph has an exact doubling certificate.
    pub fn all_layers_double(&self) -> bool {
        self.doubling.len() == self.graphs.len() && self.doubling.iter().all(DoublingVerdict::holds)
    }
}

/// `m = floor(epsilon * ln k)`, with a `1e-9` allowance so that products
/// landing just under an integer (`ln 10^6 / ln 10`) round as intended.
pub fn layer_count(k: usize, epsilon: f64) -> usize {
    if k < 2 || epsilon.is_nan() || epsilon <= 0.0 {
        return 0;
    }
    (epsilon * (k as f64).ln() + 1e-9).floor() as usize
}

/// `P_{k,ε}` with independent configuration-model layers `G_r(A_i, A_{i+1})`,
/// layer `i` sampled from `derive_seed(seed, i)`.
pub fn expander_layered_poset(k: usize, epsilon: f64, r: usize, seed: u64, check: &LayerCheck) -> Result<LayeredPoset> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("layered poset needs k >= 2, got {k}")));
    }
    let m = layer_count(k, epsilon);
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon} gives m = floor(epsilon ln {k}) = {m} layers; need at least 2"
        )));
    }
    let graphs = (1..m).map(|i| sample_configuration(k, r, derive_seed(seed, i as u64))).collect::<Result<Vec<_>>>()?;
    layered_from_graphs(graphs, Some(epsilon), check)
}

pub fn layered_from_graphs(graphs: Vec<BipartiteGraph>, epsilon: Option<f64>, check: &LayerCheck) -> Result<LayeredPoset> {
    let k = match graphs.first() {
        Some(g) => g.k(),
        None => return Err(Error::InvalidParameter("need at least one layer graph".into())),
    };
    if graphs.iter().any(|g| g.k() != k) {
        return Err(Error::InvalidParameter("layer graphs must share the class size k".into()));
    }
    let m = graphs.len() + 1;
    let n = k * m;
    if n > super::ELEMENT_CAP {
        return Err(Error::InvalidParameter(format!("{n} elements exceed the element cap")));
    }
    let relations = graphs
        .iter()
        .enumerate()
        .flat_map(|(i, g)| g.edges().map(move |(a, b)| (i * k + a, (i + 1) * k + b)));
    let base = Poset::from_relations(n, relations)?;
    let doubling = if check.enabled {
        graphs.iter().enumerate().map(|(i, g)| check.verdict(g, i + 1)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let r = graphs.iter().map(BipartiteGraph::r).max().unwrap_or(0);
    Ok(LayeredPoset { base, k, m, graphs, epsilon, r, doubling })
}

/// `L'`: all of `A_i` before all of `A_{i+1}`, each layer in `L`'s order.
pub fn quotient_extension(lp: &LayeredPoset, l: &LinearExtension) -> Result<LinearExtension> {
    layer_quotient(&lp.base, lp.k, l)
}

/// [`quotient_extension`] for any poset whose elements are grouped into
/// consecutive layers of `k` indices. The result must still extend `p`.
pub fn layer_quotient(p: &Poset, k: usize, l: &LinearExtension) -> Result<LinearExtension> {
    if k == 0 || !p.len().is_multiple_of(k) {
        return Err(Error::InvalidParameter(format!("{} elements do not split into layers of {k}", p.len())));
    }
    if !l.belongs_to(p) {
        return Err(Error::PosetMismatch);
    }
    let mut order = l.order().to_vec();
    order.sort_by_key(|&x| x / k);
    LinearExtension::new(p, order)
}

/// Number of `(x, y)` with `x ∈ A_i`, `y ∈ A_j` and `x` above `y` in `L`.
pub fn layer_reversed_count(lp: &LayeredPoset, l: &LinearExtension, i: usize, j: usize) -> Result<usize> {
    if !(1 <= i && i < j && j <= lp.m) {
        return Err(Error::InvalidParameter(format!("need 1 <= i < j <= {}, got ({i}, {j})", lp.m)));
    }
    if !l.belongs_to(&lp.base) {
        return Err(Error::PosetMismatch);
    }
    let pos = l.position();
    let mut upper: Vec<usize> = lp.members(j).map(|y| pos[y]).collect();
    upper.sort_unstable();
    Ok(lp.members(i).map(|x| upper.partition_point(|&py| py < pos[x])).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_with_unit_epsilon_has_three_layers() {
        assert_eq!(layer_count(30, 1.0), 3);
        let lp = expander_layered_poset(30, 1.0, 10, 7, &LayerCheck::default()).unwrap();
        assert_eq!((lp.m, lp.base.len(), lp.graphs.len()), (3, 90, 2));
        assert!(expander_layered_poset(30, 0.5, 10, 7, &LayerCheck::default()).is_err());
    }

    #[test]
    fn complete_layers_dominate_everything_above() {
        let graphs = vec![BipartiteGraph::complete(4); 3];
        let lp = layered_from_graphs(graphs, None, &LayerCheck::default()).unwrap();
        for x in 0..16 {
            for y in 0..16 {
                assert_eq!(lp.base.lt(x, y), lp.layer(x) < lp.layer(y));
            }
        }
    }

    #[test]
    fn reversed_counts_of_monotone_extension_vanish() {
        let lp = expander_layered_poset(9, 1.0, 3, 1, &LayerCheck::default()).unwrap();
        let l = LinearExtension::new(&lp.base, (0..lp.base.len()).collect()).unwrap();
        assert_eq!(quotient_extension(&lp, &l).unwrap(), l);
        assert_eq!(layer_reversed_count(&lp, &l, 1, 2).unwrap(), 0);
        assert!(layer_reversed_count(&lp, &l, 2, 2).is_err());
    }
}
