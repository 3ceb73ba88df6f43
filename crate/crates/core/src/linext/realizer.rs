use rayon::prelude::*;
use serde::Serialize;

use super::{check_owner, led_exact, LinearExtension};
use crate::bits;
use crate::error::{Error, Result};
use crate::poset::{enumerate_linear_extensions, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealizerCheck {
    pub is_realizer: bool,
    pub pairwise_distance_sum: u64,
}

/// Checks whether `r` realizes `p` (every incomparable pair appears in both
/// orders somewhere in `r`) and sums the pairwise distances.
///
/// For a realizer each incomparable pair split `a : |r| - a` contributes
/// `a (|r| - a) >= |r| - 1` to the sum; this is asserted.
pub fn verify_realizer(p: &Poset, r: &[LinearExtension]) -> Result<RealizerCheck> {
    let refs: Vec<&LinearExtension> = r.iter().collect();
    check_owner(p, &refs)?;
    let inc = p.inc_count();
    let is_realizer = covers_both_orders(inc, r.iter().map(|l| l.fingerprint()));
    let mut sum = 0u64;
    for (i, a) in r.iter().enumerate() {
        for b in &r[i + 1..] {
            sum += bits::hamming(a.fingerprint(), b.fingerprint()) as u64;
        }
    }
    if is_realizer {
        assert!(
            sum >= (r.len().saturating_sub(1) * inc) as u64,
            "realizer distance sum {sum} below (|R| - 1) inc"
        );
    }
    Ok(RealizerCheck { is_realizer, pairwise_distance_sum: sum })
}

fn covers_both_orders<'a>(inc: usize, fps: impl Iterator<Item = &'a [u64]>) -> bool {
    let words = bits::words_for(inc);
    let mut all = vec![u64::MAX; words];
    let mut any = vec![0u64; words];
    for f in fps {
        for w in 0..words {
            all[w] &= f[w];
            any[w] |= f[w];
        }
    }
    (0..words).all(|w| all[w] & valid_mask(inc, w) == 0 && any[w] | !valid_mask(inc, w) == u64::MAX)
}

#[inline]
fn valid_mask(inc: usize, word: usize) -> u64 {
    let rem = inc - word * 64;
    if rem >= 64 {
        u64::MAX
    } else {
        (1u64 << rem) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimVerdict {
    Yes,
    No,
    Unknown,
}

/// Exhaustive search for a realizer of at most `d` extensions (`d` is 2 or
/// 3), returning the lexicographically first one in enumeration order.
pub fn find_realizer(p: &Poset, d: usize, limit: usize) -> Result<Option<Vec<LinearExtension>>> {
    if !(2..=3).contains(&d) {
        return Err(Error::InvalidParameter(format!("realizer search supports d = 2 or 3, got {d}")));
    }
    let all = enumerate_linear_extensions(p, limit)?;
    let inc = p.inc_count();
    let count = all.len();
    let found = if d == 2 {
        (0..count).into_par_iter().find_map_first(|i| {
            (i..count)
                .find(|&j| covers_both_orders(inc, [all[i].fingerprint(), all[j].fingerprint()].into_iter()))
                .map(|j| vec![i, j])
        })
    } else {
        (0..count).into_par_iter().find_map_first(|i| {
            (i..count).find_map(|j| {
                (j..count)
                    .find(|&k| {
                        covers_both_orders(
                            inc,
                            [all[i].fingerprint(), all[j].fingerprint(), all[k].fingerprint()].into_iter(),
                        )
                    })
                    .map(|k| vec![i, j, k])
            })
        })
    };
    Ok(found.map(|mut idx| {
        idx.dedup();
        idx.into_iter().map(|i| all[i].clone()).collect()
    }))
}

/// Decides `dim(P) <= d` for `d` in {2, 3}, or `Unknown` when enumeration
/// exceeds `limit`. For `d = 2` the test is `led(P) = inc(P)`.
pub fn dim_at_most(p: &Poset, d: usize, limit: usize) -> Result<DimVerdict> {
    let verdict = match d {
        2 => match led_exact(p, limit) {
            Ok(r) => Some(r.value == p.inc_count()),
            Err(Error::EnumerationOverflow { .. }) => None,
            Err(e) => return Err(e),
        },
        3 => match find_realizer(p, 3, limit) {
            Ok(r) => Some(r.is_some()),
            Err(Error::EnumerationOverflow { .. }) => None,
            Err(e) => return Err(e),
        },
        _ => return Err(Error::InvalidParameter(format!("dim_at_most supports d = 2 or 3, got {d}"))),
    };
    Ok(match verdict {
        Some(true) => DimVerdict::Yes,
        Some(false) => DimVerdict::No,
        None => DimVerdict::Unknown,
    })
}
