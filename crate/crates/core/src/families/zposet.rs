// Z_{t,k}: t blocks A_1..A_t, each a k-chain a_{i,1} < .. < a_{i,k}, with
// a_{i,j} < a_{i+1,j} and every block fully below every block three or more
// places higher. Between blocks one or two apart, a_{i,j} < a_{l,m} iff
// j <= m; those are the only incomparable pairs.

use std::collections::BTreeSet;

use super::basic::ELEMENT_CAP;
use crate::error::{Error, Result};
use crate::linext::LinearExtension;
use crate::poset::Poset;

fn index(k: usize, block: usize, level: usize) -> usize {
    (block - 1) * k + (level - 1)
}

pub fn zposet(t: usize, k: usize) -> Result<Poset> {
    if t == 0 || k == 0 {
        return Err(Error::InvalidParameter("zposet needs t, k >= 1".into()));
    }
    if t < 3 || k < 3 {
        log::warn!("zposet({t}, {k}) is below the t, k >= 3 range of the construction");
    }
    let n = t.checked_mul(k).filter(|&n| n <= ELEMENT_CAP).ok_or_else(|| {
        Error::InvalidParameter(format!("zposet({t}, {k}) exceeds the element cap of {ELEMENT_CAP}"))
    })?;
    let mut relations = Vec::new();
    for i in 1..=t {
        for j in 1..k {
            relations.push((index(k, i, j), index(k, i, j + 1)));
        }
        if i < t {
            for j in 1..=k {
                relations.push((index(k, i, j), index(k, i + 1, j)));
            }
        }
        if i + 3 <= t {
            relations.push((index(k, i, k), index(k, i + 3, 1)));
        }
    }
    Poset::from_relations(n, relations)
}

/// Block segments of the two extensions, bottom to top. A segment with
/// several blocks is interleaved level by level (`A_l / A_{l+1} / ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSchedule {
    pub first: Vec<Vec<usize>>,
    pub second: Vec<Vec<usize>>,
}

/// The first extension interleaves the triples starting at `4i - 3` with
/// `A_{4i}` alone; the second interleaves the triples starting at `4i - 1`
/// with `A_{4i + 2}` alone. Blocks outside `1..=t` are dropped.
pub fn z_schedule(t: usize) -> ZSchedule {
    let pattern = |triple_start: i64| -> Vec<Vec<usize>> {
        let mut segments = Vec::new();
        // triple at s, s+1, s+2, then a single at s+3, repeating every 4
        let mut s = triple_start;
        while s <= t as i64 {
            let triple: Vec<usize> = (s..s + 3).filter(|&b| b >= 1 && b <= t as i64).map(|b| b as usize).collect();
            if !triple.is_empty() {
                segments.push(triple);
            }
            if s + 3 >= 1 && s + 3 <= t as i64 {
                segments.push(vec![(s + 3) as usize]);
            }
            s += 4;
        }
        segments
    };
    ZSchedule { first: pattern(1), second: pattern(-1) }
}

fn segments_to_order(segments: &[Vec<usize>], k: usize) -> Vec<usize> {
    let mut order = Vec::new();
    for seg in segments {
        for level in 1..=k {
            order.extend(seg.iter().map(|&b| index(k, b, level)));
        }
    }
    order
}

pub fn z_extension_orders(t: usize, k: usize) -> (Vec<usize>, Vec<usize>) {
    let s = z_schedule(t);
    (segments_to_order(&s.first, k), segments_to_order(&s.second, k))
}

/// The two extensions of `zposet(t, k)` reversing
/// `(t - 1 + ceil((t - 2) / 2)) C(k, 2)` pairs.
pub fn z_extensions(z: &Poset, t: usize, k: usize) -> Result<(LinearExtension, LinearExtension)> {
    if z.len() != t * k {
        return Err(Error::InvalidParameter(format!("poset has {} elements, zposet({t}, {k}) has {}", z.len(), t * k)));
    }
    let (a, b) = z_extension_orders(t, k);
    Ok((LinearExtension::new(z, a)?, LinearExtension::new(z, b)?))
}

/// Block pairs `(i, j)`, `i < j`, sharing an interleaved segment.
pub fn z_entangled_pairs(segments: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for seg in segments {
        for (x, &i) in seg.iter().enumerate() {
            for &j in &seg[x + 1..] {
                out.insert((i.min(j), i.max(j)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linext::distance;

    #[test]
    fn schedule_for_twelve_blocks() {
        let s = z_schedule(12);
        assert_eq!(
            s.first,
            vec![vec![1, 2, 3], vec![4], vec![5, 6, 7], vec![8], vec![9, 10, 11], vec![12]]
        );
        assert_eq!(
            s.second,
            vec![vec![1], vec![2], vec![3, 4, 5], vec![6], vec![7, 8, 9], vec![10], vec![11, 12]]
        );
    }

    #[test]
    fn schedules_cover_every_block_once() {
        for t in 1..30 {
            let s = z_schedule(t);
            for segs in [&s.first, &s.second] {
                let flat: Vec<usize> = segs.iter().flatten().copied().collect();
                assert_eq!(flat, (1..=t).collect::<Vec<_>>(), "t = {t}");
            }
        }
    }

    #[test]
    fn smallest_case_reverses_everything() {
        let z = zposet(3, 3).unwrap();
        assert_eq!(z.inc_count(), 9);
        let (a, b) = z_extensions(&z, 3, 3).unwrap();
        assert_eq!(distance(&z, &a, &b).unwrap(), 9);
    }

    #[test]
    fn wrong_size_is_rejected() {
        let z = zposet(4, 3).unwrap();
        assert!(z_extensions(&z, 3, 4).is_err());
    }
}
