//! Finite strict partial orders on dense element indices `0..n`.
//!
//! A [`Poset`] stores the full strict order as a bit matrix (both the
//! "above" and "below" rows), the cover relation, and the canonical list of
//! incomparable pairs. It is immutable after construction.

mod enumerate;
mod width;

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use crate::bits;
use crate::error::{Error, Result};

pub use enumerate::{count_linear_extensions, enumerate_linear_extensions, LinearExtensions};
pub use width::{brute_force_width, width_and_antichain};

/// Default cap on the number of linear extensions any enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 200_000;

/// Canonical list of unordered incomparable pairs `{x, y}`, stored as
/// `(x, y)` with `x < y` and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncPairIndex {
    pairs: Vec<(u32, u32)>,
}

impl IncPairIndex {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|&(x, y)| (x as usize, y as usize))
    }

    pub fn get(&self, i: usize) -> (usize, usize) {
        let (x, y) = self.pairs[i];
        (x as usize, y as usize)
    }

    /// Index of the pair `{x, y}` (in either order), if it is incomparable.
    pub fn position(&self, x: usize, y: usize) -> Option<usize> {
        let key = if x < y { (x as u32, y as u32) } else { (y as u32, x as u32) };
        self.pairs.binary_search(&key).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    words: usize,
    // up[x] has bit y iff x < y; down[y] has bit x iff x < y.
    up: Vec<u64>,
    down: Vec<u64>,
    covers: Vec<(usize, usize)>,
    inc: IncPairIndex,
    id: u64,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds the poset generated by `relations` (each `(u, v)` meaning
    /// `u < v`) under transitive closure.
    pub fn from_relations<I>(n: usize, relations: I) -> Result<Poset>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, v) in relations {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(Error::Cycle(vec![u]));
            }
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }

        let topo = topological_order(n, &succ)?;

        let words = bits::words_for(n);
        let mut up = vec![0u64; n * words];
        for &x in topo.iter().rev() {
            let mut row = vec![0u64; words];
            for &s in &succ[x] {
                bits::set(&mut row, s);
                for (r, w) in row.iter_mut().zip(&up[s * words..(s + 1) * words]) {
                    *r |= w;
                }
            }
            up[x * words..(x + 1) * words].copy_from_slice(&row);
        }
        assert!(
            (0..n).all(|x| !bits::get(&up[x * words..(x + 1) * words], x)),
            "closure must be irreflexive"
        );

        let mut down = vec![0u64; n * words];
        for x in 0..n {
            for y in bits::ones(&up[x * words..(x + 1) * words]) {
                bits::set(&mut down[y * words..(y + 1) * words], x);
            }
        }

        // A cover x < y is always an input edge; it is a cover iff y is not
        // above any other successor of x.
        let mut covers = Vec::new();
        let mut reach = vec![0u64; words];
        for (x, sx) in succ.iter().enumerate() {
            reach.iter_mut().for_each(|w| *w = 0);
            for &s in sx {
                for (r, w) in reach.iter_mut().zip(&up[s * words..(s + 1) * words]) {
                    *r |= w;
                }
            }
            covers.extend(sx.iter().filter(|&&y| !bits::get(&reach, y)).map(|&y| (x, y)));
        }

        let mut pairs = Vec::new();
        for x in 0..n {
            let ux = &up[x * words..(x + 1) * words];
            let dx = &down[x * words..(x + 1) * words];
            for y in x + 1..n {
                if !bits::get(ux, y) && !bits::get(dx, y) {
                    pairs.push((x as u32, y as u32));
                }
            }
        }

        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        covers.hash(&mut hasher);
        let id = hasher.finish();

        Ok(Poset { n, words, up, down, covers, inc: IncPairIndex { pairs }, id })
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_relations(n, std::iter::empty()).expect("antichain is acyclic")
    }

    pub fn chain(n: usize) -> Poset {
        Poset::from_relations(n, (1..n).map(|i| (i - 1, i))).expect("chain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Strict order test `x < y`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        bits::get(self.up_row(x), y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y) || self.lt(y, x)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn inc_index(&self) -> &IncPairIndex {
        &self.inc
    }

    /// Number of unordered incomparable pairs.
    pub fn inc_count(&self) -> usize {
        self.inc.count()
    }

    /// Number of unordered strictly comparable pairs.
    pub fn comparable_pairs(&self) -> usize {
        bits::count(&self.up)
    }

    /// Elements strictly above `x`, ascending.
    pub fn above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.up_row(x))
    }

    /// Elements strictly below `x`, ascending.
    pub fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(&self.down[x * self.words..(x + 1) * self.words])
    }

    /// Number of elements comparable to `x`, counting `x` itself.
    pub fn comparability_count(&self, x: usize) -> usize {
        1 + bits::count(self.up_row(x)) + bits::count(&self.down[x * self.words..(x + 1) * self.words])
    }

    pub fn is_chain(&self) -> bool {
        self.inc_count() == 0
    }

    /// All strict relations `(x, y)` with `x < y`, in lexicographic order.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| self.above(x).map(move |y| (x, y)))
    }

    /// Structural identity used to reject extensions built for another poset.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub(crate) fn up_row(&self, x: usize) -> &[u64] {
        &self.up[x * self.words..(x + 1) * self.words]
    }

    pub fn is_antichain(&self, set: &[usize]) -> Result<Option<(usize, usize)>> {
        for &x in set {
            if x >= self.n {
                return Err(Error::IndexOutOfRange { index: x, n: self.n });
            }
        }
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                if self.comparable(x, y) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }
}

/// Kahn's algorithm; on failure names one cycle.
fn topological_order(n: usize, succ: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &v in s {
            indeg[v] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &v in &succ[x] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover vertex has a leftover predecessor; walk backwards
    // until a vertex repeats.
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for (u, s) in succ.iter().enumerate() {
        if indeg[u] == 0 {
            continue;
        }
        for &v in s {
            if indeg[v] > 0 && pred[v].is_none() {
                pred[v] = Some(u);
            }
        }
    }
    let start = (0..n).find(|&x| indeg[x] > 0).expect("leftover vertex");
    let mut seen = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut x = start;
    while seen[x] == usize::MAX {
        seen[x] = walk.len();
        walk.push(x);
        x = pred[x].expect("leftover vertex has a leftover predecessor");
    }
    let mut cycle = walk[seen[x]..].to_vec();
    cycle.reverse();
    Err(Error::Cycle(cycle))
}

/// Checks that `order` is a permutation of `0..n` and respects the order.
pub fn is_linear_extension(p: &Poset, order: &[usize]) -> Result<bool> {
    let position = check_permutation(p.len(), order)?;
    Ok(p.covers().iter().all(|&(u, v)| position[u] < position[v]))
}

/// Inverse permutation of `order`, or an input error.
pub(crate) fn check_permutation(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::NotAPermutation {
            n,
            reason: format!("length {} instead of {n}", order.len()),
        });
    }
    let mut position = vec![usize::MAX; n];
    for (i, &x) in order.iter().enumerate() {
        if x >= n {
            return Err(Error::NotAPermutation { n, reason: format!("entry {x} out of range") });
        }
        if position[x] != usize::MAX {
            return Err(Error::NotAPermutation { n, reason: format!("entry {x} repeated") });
        }
        position[x] = i;
    }
    Ok(position)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_from_relations() {
        let p = Poset::from_relations(3, [(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(p.inc_count(), 0);
    }

    #[test]
    fn antichain_has_all_pairs() {
        let p = Poset::antichain(3);
        assert_eq!(p.inc_count(), 3);
        assert_eq!(p.inc_index().pairs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::from_relations(2, [(0, 1), (1, 0)]).unwrap_err();
        match err {
            Error::Cycle(c) => {
                let mut c = c;
                c.sort_unstable();
                assert_eq!(c, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn longer_cycle_is_named() {
        let err = Poset::from_relations(5, [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)]).unwrap_err();
        let Error::Cycle(c) = err else { panic!() };
        assert_eq!(c.len(), 3);
        for w in 0..c.len() {
            let (u, v) = (c[w], c[(w + 1) % c.len()]);
            assert!([(1, 2), (2, 3), (3, 1)].contains(&(u, v)), "{u}->{v} not an edge");
        }
    }

    #[test]
    fn self_loop_and_range_errors() {
        assert_eq!(Poset::from_relations(2, [(1, 1)]).unwrap_err(), Error::Cycle(vec![1]));
        assert_eq!(
            Poset::from_relations(2, [(0, 2)]).unwrap_err(),
            Error::IndexOutOfRange { index: 2, n: 2 }
        );
    }

    #[test]
    fn redundant_relations_are_not_covers() {
        let p = Poset::from_relations(3, [(0, 2), (0, 1), (1, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn linear_extension_checks() {
        let p = Poset::chain(3);
        assert!(is_linear_extension(&p, &[0, 1, 2]).unwrap());
        assert!(!is_linear_extension(&p, &[1, 0, 2]).unwrap());
        assert!(is_linear_extension(&p, &[0, 1]).is_err());
        assert!(is_linear_extension(&p, &[0, 0, 1]).is_err());
        let a = Poset::antichain(3);
        assert!(is_linear_extension(&a, &[2, 0, 1]).unwrap());
    }
}
