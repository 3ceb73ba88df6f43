//! Linear extensions, their distance, and the linear extension diameter.
//!
//! Every [`LinearExtension`] carries a fingerprint: bit `i` is set iff the
//! `i`-th incomparable pair `{x, y}` (`x < y` as indices) has `x` before `y`.
//! The distance of two extensions of the same poset is then the Hamming
//! distance of their fingerprints.

mod led;
mod realizer;

use num_rational::Ratio;
use rand::Rng;

use crate::bits;
use crate::error::{Error, Result};
use crate::poset::{check_permutation, Poset};

pub use led::{led_exact, led_local_search, LedMode, LedResult, LedStats, LocalSearchParams};
pub use realizer::{dim_at_most, find_realizer, verify_realizer, DimVerdict, RealizerCheck};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearExtension {
    order: Vec<usize>,
    position: Vec<usize>,
    fingerprint: Vec<u64>,
    inc: usize,
    poset_id: u64,
}

impl LinearExtension {
    /// Validates `order` against `p` and builds its fingerprint.
    pub fn new(p: &Poset, order: Vec<usize>) -> Result<Self> {
        let position = check_permutation(p.len(), &order)?;
        if let Some(&(below, above)) =
            p.covers().iter().find(|&&(u, v)| position[u] > position[v])
        {
            return Err(Error::NotAnExtension { below, above });
        }
        Ok(Self::build(p, order, position))
    }

    pub(crate) fn from_valid(p: &Poset, order: Vec<usize>) -> Self {
        let position = check_permutation(p.len(), &order).expect("valid permutation");
        debug_assert!(p.covers().iter().all(|&(u, v)| position[u] < position[v]));
        Self::build(p, order, position)
    }

    fn build(p: &Poset, order: Vec<usize>, position: Vec<usize>) -> Self {
        let index = p.inc_index();
        let mut fingerprint = vec![0u64; bits::words_for(index.count())];
        for (i, (x, y)) in index.pairs().enumerate() {
            if position[x] < position[y] {
                bits::set(&mut fingerprint, i);
            }
        }
        LinearExtension { order, position, fingerprint, inc: index.count(), poset_id: p.id() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self) -> &[usize] {
        &self.position
    }

    pub fn fingerprint(&self) -> &[u64] {
        &self.fingerprint
    }

    /// Number of fingerprint bits, i.e. `inc(P)`.
    pub fn fingerprint_len(&self) -> usize {
        self.inc
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn before(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    pub fn belongs_to(&self, p: &Poset) -> bool {
        self.poset_id == p.id() && self.order.len() == p.len() && self.inc == p.inc_count()
    }
}

fn check_owner(p: &Poset, ls: &[&LinearExtension]) -> Result<()> {
    if ls.iter().all(|l| l.belongs_to(p)) {
        Ok(())
    } else {
        Err(Error::PosetMismatch)
    }
}

/// Number of incomparable pairs ordered oppositely by `l1` and `l2`.
pub fn distance(p: &Poset, l1: &LinearExtension, l2: &LinearExtension) -> Result<usize> {
    check_owner(p, &[l1, l2])?;
    Ok(bits::hamming(&l1.fingerprint, &l2.fingerprint))
}

/// `dist(l1, l2) / inc(P)`, reduced.
pub fn reversal_ratio_pair(p: &Poset, l1: &LinearExtension, l2: &LinearExtension) -> Result<Ratio<u64>> {
    let d = distance(p, l1, l2)?;
    if p.inc_count() == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(Ratio::new(d as u64, p.inc_count() as u64))
}

/// `"num/den (0.xxxxxx)"`.
pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{} ({:.6})", r.numer(), r.denom(), ratio_to_f64(r))
}

pub fn ratio_to_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Neighbours in the linear extension graph: one adjacent swap of two
/// incomparable elements, in order of swap position.
pub fn le_graph_neighbors(p: &Poset, l: &LinearExtension) -> Result<Vec<LinearExtension>> {
    check_owner(p, &[l])?;
    let mut out = Vec::new();
    for i in 0..l.order.len().saturating_sub(1) {
        if p.incomparable(l.order[i], l.order[i + 1]) {
            let mut order = l.order.clone();
            order.swap(i, i + 1);
            out.push(LinearExtension::from_valid(p, order));
        }
    }
    Ok(out)
}

/// Greedy topological sort. `pick` chooses among the currently available
/// elements (ascending); `chain` forces its members to appear in the given
/// relative order.
pub(crate) fn greedy_extension<F>(p: &Poset, chain: &[usize], mut pick: F) -> Vec<usize>
where
    F: FnMut(&[usize]) -> usize,
{
    let n = p.len();
    let mut pending = vec![0usize; n];
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in p.covers() {
        pending[v] += 1;
        upper[u].push(v);
    }
    let mut chain_next = vec![usize::MAX; n];
    for w in chain.windows(2) {
        pending[w[1]] += 1;
        chain_next[w[0]] = w[1];
    }
    let mut available: Vec<usize> = (0..n).filter(|&x| pending[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while !available.is_empty() {
        let i = pick(&available);
        let x = available.remove(i);
        order.push(x);
        let release = upper[x].iter().copied().chain((chain_next[x] != usize::MAX).then_some(chain_next[x]));
        for v in release {
            pending[v] -= 1;
            if pending[v] == 0 {
                let at = available.partition_point(|&a| a < v);
                available.insert(at, v);
            }
        }
    }
    assert_eq!(order.len(), n, "forced chain must be consistent with the order");
    order
}

/// Extension built by repeatedly taking a uniformly random minimal element.
pub fn random_extension<R: Rng + ?Sized>(p: &Poset, rng: &mut R) -> LinearExtension {
    let order = greedy_extension(p, &[], |avail| rng.random_range(0..avail.len()));
    LinearExtension::from_valid(p, order)
}

/// Two extensions that place the antichain `a` in ascending index order in
/// the first and descending order in the second, so all `C(|a|, 2)` pairs
/// inside `a` are reversed. Remaining elements are filled greedily, lowest
/// index first in the first extension and highest index first in the second.
pub fn antichain_pair(p: &Poset, a: &[usize]) -> Result<(LinearExtension, LinearExtension)> {
    if let Some((x, y)) = p.is_antichain(a)? {
        return Err(Error::NotAnAntichain(x, y));
    }
    let mut asc = a.to_vec();
    asc.sort_unstable();
    asc.dedup();
    let mut desc = asc.clone();
    desc.reverse();
    let first = greedy_extension(p, &asc, |_| 0);
    let second = greedy_extension(p, &desc, |avail| avail.len() - 1);
    Ok((LinearExtension::from_valid(p, first), LinearExtension::from_valid(p, second)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_linear_extension;

    fn diamond() -> Poset {
        Poset::from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn distance_on_diamond() {
        let p = diamond();
        let a = LinearExtension::new(&p, vec![0, 1, 2, 3]).unwrap();
        let b = LinearExtension::new(&p, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(distance(&p, &a, &a).unwrap(), 0);
        assert_eq!(distance(&p, &a, &b).unwrap(), 1);
        assert_eq!(reversal_ratio_pair(&p, &a, &b).unwrap(), Ratio::new(1, 1));
        assert_eq!(reversal_ratio_pair(&p, &a, &a).unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn invalid_extensions_are_rejected() {
        let p = diamond();
        assert_eq!(
            LinearExtension::new(&p, vec![1, 0, 2, 3]).unwrap_err(),
            Error::NotAnExtension { below: 0, above: 1 }
        );
        assert!(matches!(LinearExtension::new(&p, vec![0, 1, 2]), Err(Error::NotAPermutation { .. })));
    }

    #[test]
    fn mismatched_posets_and_chains() {
        let p = diamond();
        let q = Poset::antichain(4);
        let a = LinearExtension::new(&p, vec![0, 1, 2, 3]).unwrap();
        let b = LinearExtension::new(&q, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(distance(&p, &a, &b).unwrap_err(), Error::PosetMismatch);
        let c = Poset::chain(3);
        let l = LinearExtension::new(&c, vec![0, 1, 2]).unwrap();
        assert_eq!(reversal_ratio_pair(&c, &l, &l).unwrap_err(), Error::UndefinedRatio);
    }

    #[test]
    fn neighbours() {
        let c = Poset::chain(4);
        let l = LinearExtension::new(&c, vec![0, 1, 2, 3]).unwrap();
        assert!(le_graph_neighbors(&c, &l).unwrap().is_empty());

        let a = Poset::antichain(3);
        let l = LinearExtension::new(&a, vec![0, 1, 2]).unwrap();
        let got: Vec<Vec<usize>> =
            le_graph_neighbors(&a, &l).unwrap().iter().map(|m| m.order().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 0, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn antichain_pairs() {
        let a = Poset::antichain(5);
        let (l1, l2) = antichain_pair(&a, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(distance(&a, &l1, &l2).unwrap(), 10);

        let c = Poset::chain(3);
        let (l1, l2) = antichain_pair(&c, &[1]).unwrap();
        assert_eq!(distance(&c, &l1, &l2).unwrap(), 0);
        assert_eq!(antichain_pair(&c, &[0, 2]).unwrap_err(), Error::NotAnAntichain(0, 2));

        let p = diamond();
        let (l1, l2) = antichain_pair(&p, &[2, 1]).unwrap();
        assert!(is_linear_extension(&p, l1.order()).unwrap());
        assert!(l1.before(1, 2) && l2.before(2, 1));
    }
}
