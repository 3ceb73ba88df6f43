use super::Poset;
use crate::error::{Error, Result};
use crate::linext::LinearExtension;

/// Streams every linear extension of a poset exactly once.
///
/// Backtracking over currently minimal elements, always trying the
/// smallest-index candidate first, so the output order is canonical.
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    order: Vec<usize>,
    placed: Vec<bool>,
    // number of unplaced lower covers
    pending: Vec<usize>,
    upper_covers: Vec<Vec<usize>>,
    // next candidate to try at each depth
    cursor: Vec<usize>,
    emitted_leaf: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    pub fn new(poset: &'a Poset) -> Self {
        let n = poset.len();
        let mut pending = vec![0; n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(u, v) in poset.covers() {
            pending[v] += 1;
            upper_covers[u].push(v);
        }
        LinearExtensions {
            poset,
            order: Vec::with_capacity(n),
            placed: vec![false; n],
            pending,
            upper_covers,
            cursor: vec![0; n + 1],
            emitted_leaf: false,
            done: false,
        }
    }

    fn place(&mut self, x: usize) {
        self.placed[x] = true;
        self.order.push(x);
        for &v in &self.upper_covers[x] {
            self.pending[v] -= 1;
        }
    }

    fn unplace(&mut self) -> Option<usize> {
        let x = self.order.pop()?;
        self.placed[x] = false;
        for &v in &self.upper_covers[x] {
            self.pending[v] += 1;
        }
        Some(x)
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let n = self.poset.len();
        if self.emitted_leaf {
            self.emitted_leaf = false;
            if self.unplace().is_none() {
                self.done = true;
                return None;
            }
        }
        loop {
            let depth = self.order.len();
            if depth == n {
                self.emitted_leaf = true;
                return Some(self.order.clone());
            }
            let from = self.cursor[depth];
            let next = (from..n).find(|&c| !self.placed[c] && self.pending[c] == 0);
            match next {
                Some(c) => {
                    self.cursor[depth] = c + 1;
                    self.cursor[depth + 1] = 0;
                    self.place(c);
                }
                None => {
                    if self.unplace().is_none() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// All linear extensions in canonical order, or an overflow error once more
/// than `limit` have been produced.
pub fn enumerate_linear_extensions(p: &Poset, limit: usize) -> Result<Vec<LinearExtension>> {
    let mut out = Vec::new();
    for order in LinearExtensions::new(p) {
        if out.len() == limit {
            return Err(Error::EnumerationOverflow { limit, partial: out.len() });
        }
        out.push(LinearExtension::from_valid(p, order));
    }
    Ok(out)
}

pub fn count_linear_extensions(p: &Poset, limit: usize) -> Result<usize> {
    let mut count = 0;
    for _ in LinearExtensions::new(p) {
        if count == limit {
            return Err(Error::EnumerationOverflow { limit, partial: count });
        }
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_linear_extensions(&Poset::chain(5), 10).unwrap(), 1);
        assert_eq!(count_linear_extensions(&Poset::antichain(3), 10).unwrap(), 6);
        assert_eq!(count_linear_extensions(&Poset::antichain(0), 10).unwrap(), 1);
    }

    #[test]
    fn canonical_order_for_antichain() {
        let all: Vec<_> = LinearExtensions::new(&Poset::antichain(3)).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn overflow_reports_partial_count() {
        let err = enumerate_linear_extensions(&Poset::antichain(4), 10).unwrap_err();
        assert_eq!(err, Error::EnumerationOverflow { limit: 10, partial: 10 });
        assert_eq!(enumerate_linear_extensions(&Poset::antichain(4), 24).unwrap().len(), 24);
    }
}
