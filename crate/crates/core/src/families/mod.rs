//! Generators for the poset families studied by this crate.
//!
//! Index layouts are fixed and part of the file format contract:
//!
//! | family | element | index |
//! |---|---|---|
//! | `grid(n, d)` | `(c_1, .., c_d)` | `Σ c_i n^(d-i)` (first coordinate most significant) |
//! | `boolean(d)` | subset `S ⊆ {1..d}` | bitmask, element `i` at bit `i-1` |
//! | `standard(d)` | `a_i`, `b_j` | `i-1`, `d+j-1` |
//! | `wstack(k)` | `a_i, b_i, c_i` | `3i, 3i+1, 3i+2` for `i = 0..=k` |
//! | `zposet(t, k)` | `a_{i,j}` | `(i-1)k + (j-1)` |
//! | expander-layered | `x ∈ A_i` at position `w` | `(i-1)k + w` |

mod basic;
mod layered;
mod zposet;

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub use basic::{boolean, grid, grid_lex_realizer, standard_example, wstack, wstack_blocks, ELEMENT_CAP};
pub use layered::{
    expander_layered_poset, layer_count, layer_quotient, layered_from_graphs, layer_reversed_count, quotient_extension, LayerCheck,
    LayeredPoset,
};
pub use zposet::{z_entangled_pairs, z_extension_orders, z_extensions, z_schedule, zposet, ZSchedule};

#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Grid { n: usize, d: usize },
    Boolean { d: usize },
    Standard { d: usize },
    WStack { k: usize },
    ZPoset { t: usize, k: usize },
    ExpanderLayered { k: usize, epsilon: f64, r: usize, seed: u64 },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Grid { n, d } => write!(f, "grid n={n} d={d}"),
            FamilySpec::Boolean { d } => write!(f, "boolean d={d}"),
            FamilySpec::Standard { d } => write!(f, "standard d={d}"),
            FamilySpec::WStack { k } => write!(f, "wstack k={k}"),
            FamilySpec::ZPoset { t, k } => write!(f, "zposet t={t} k={k}"),
            FamilySpec::ExpanderLayered { k, epsilon, r, seed } => {
                write!(f, "expander k={k} eps={epsilon} r={r} seed={seed}")
            }
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Poset> {
        match *self {
            FamilySpec::Grid { n, d } => grid(n, d),
            FamilySpec::Boolean { d } => boolean(d),
            FamilySpec::Standard { d } => standard_example(d),
            FamilySpec::WStack { k } => wstack(k),
            FamilySpec::ZPoset { t, k } => zposet(t, k),
            FamilySpec::ExpanderLayered { k, epsilon, r, seed } => {
                Ok(expander_layered_poset(k, epsilon, r, seed, &LayerCheck::default())?.base)
            }
        }
    }

    /// Seed for randomized families.
    pub fn seed(&self) -> Option<u64> {
        match *self {
            FamilySpec::ExpanderLayered { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

fn binom2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// Closed-form `inc` for the families where one is known.
pub fn closed_form_inc(spec: &FamilySpec) -> Result<u64> {
    let value: u128 = match *spec {
        FamilySpec::Grid { n, d } => {
            let (n, d) = (n as u128, d as u32);
            let total = n.checked_pow(d).ok_or_else(|| overflow(spec))?;
            let le_pairs = (n * (n + 1) / 2).checked_pow(d).ok_or_else(|| overflow(spec))?;
            binom2(total) - (le_pairs - total)
        }
        FamilySpec::Boolean { d } => {
            let d = d as u32;
            let total = 2u128.checked_pow(d).ok_or_else(|| overflow(spec))?;
            binom2(total) - (3u128.pow(d) - total)
        }
        FamilySpec::WStack { k } => 6 * k as u128 + 3,
        FamilySpec::ZPoset { t, k } => {
            if t < 2 {
                0
            } else {
                (2 * t as u128 - 3) * binom2(k as u128)
            }
        }
        _ => return Err(Error::Unsupported(format!("no closed form for {spec}"))),
    };
    u64::try_from(value).map_err(|_| overflow(spec))
}

fn overflow(spec: &FamilySpec) -> Error {
    Error::InvalidParameter(format!("{spec} is too large"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_inc(&FamilySpec::ZPoset { t: 5, k: 4 }).unwrap(), 42);
        assert_eq!(closed_form_inc(&FamilySpec::WStack { k: 2 }).unwrap(), 15);
        assert_eq!(closed_form_inc(&FamilySpec::Boolean { d: 4 }).unwrap(), 55);
        assert_eq!(closed_form_inc(&FamilySpec::Boolean { d: 3 }).unwrap(), 9);
        assert_eq!(closed_form_inc(&FamilySpec::Grid { n: 2, d: 2 }).unwrap(), 1);
        assert!(matches!(closed_form_inc(&FamilySpec::Standard { d: 3 }), Err(Error::Unsupported(_))));
    }
}
