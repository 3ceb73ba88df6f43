use crate::error::{Error, Result};
use crate::linext::LinearExtension;
use crate::poset::Poset;

/// Largest element count any generator will build (the closure is an
/// `n x n` bit matrix).
pub const ELEMENT_CAP: usize = 1 << 14;

fn check_size(n: Option<usize>, what: &str) -> Result<usize> {
    match n {
        Some(n) if n <= ELEMENT_CAP => Ok(n),
        _ => Err(Error::InvalidParameter(format!("{what} exceeds the element cap of {ELEMENT_CAP}"))),
    }
}

/// The grid `n^d`: componentwise order on `{0..n-1}^d`.
pub fn grid(n: usize, d: usize) -> Result<Poset> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter("grid needs n, d >= 1".into()));
    }
    let size = check_size(u32::try_from(d).ok().and_then(|d| n.checked_pow(d)), &format!("grid({n}, {d})"))?;
    let mut relations = Vec::new();
    for x in 0..size {
        let mut stride = 1;
        // coordinate d-1 is least significant
        for _ in 0..d {
            let digit = (x / stride) % n;
            if digit + 1 < n {
                relations.push((x, x + stride));
            }
            stride *= n;
        }
    }
    Poset::from_relations(size, relations)
}

/// The Boolean lattice `Q_d` on subsets of `{1..d}` under inclusion.
pub fn boolean(d: usize) -> Result<Poset> {
    if d > 20 {
        return Err(Error::InvalidParameter(format!("boolean lattice needs d <= 20, got {d}")));
    }
    let size = check_size(Some(1usize << d), &format!("boolean({d})"))?;
    let relations = (0..size).flat_map(|s| (0..d).filter(move |i| s >> i & 1 == 0).map(move |i| (s, s | 1 << i)));
    Poset::from_relations(size, relations)
}

/// Standard example `S_d`: `a_i < b_j` iff `i != j`.
pub fn standard_example(d: usize) -> Result<Poset> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("standard example needs d >= 2, got {d}")));
    }
    check_size(d.checked_mul(2), "standard example")?;
    Poset::from_relations(2 * d, (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, d + j))))
}

/// `W_k`: antichains `A_i = {a_i, b_i, c_i}` for `i = 0..=k`, each `A_{i-1}`
/// below `A_i` except for `(a_{i-1}, b_i)`, `(b_{i-1}, c_i)`, `(c_{i-1}, a_i)`.
pub fn wstack(k: usize) -> Result<Poset> {
    let size = check_size(k.checked_add(1).and_then(|m| m.checked_mul(3)), "wstack")?;
    let mut relations = Vec::new();
    for i in 1..=k {
        for p in 0..3 {
            for q in 0..3 {
                // (a,b), (b,c), (c,a) stay incomparable
                if q != (p + 1) % 3 {
                    relations.push((3 * (i - 1) + p, 3 * i + q));
                }
            }
        }
    }
    Poset::from_relations(size, relations)
}

/// For block `i` in `1..=k`, the six element pairs of which no pair of
/// extensions can reverse all: the three pairs inside `A_i` and the three
/// incomparable pairs between `A_{i-1}` and `A_i`.
pub fn wstack_blocks(k: usize) -> Vec<[(usize, usize); 6]> {
    (1..=k)
        .map(|i| {
            let (prev, cur) = (3 * (i - 1), 3 * i);
            [
                (cur, cur + 1),
                (cur, cur + 2),
                (cur + 1, cur + 2),
                (prev, cur + 1),
                (prev + 1, cur + 2),
                (prev + 2, cur),
            ]
        })
        .collect()
}

/// The `d` lexicographic orders of `n^d`, the `c`-th making coordinate `c`
/// most significant (remaining coordinates in their natural order). They
/// form a realizer.
pub fn grid_lex_realizer(p: &Poset, n: usize, d: usize) -> Result<Vec<LinearExtension>> {
    let size = p.len();
    let coords = |x: usize| -> Vec<usize> {
        let mut c = vec![0; d];
        let mut rest = x;
        for slot in c.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        c
    };
    (0..d)
        .map(|lead| {
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by_key(|&x| {
                let c = coords(x);
                let mut key = vec![c[lead]];
                key.extend((0..d).filter(|&i| i != lead).map(|i| c[i]));
                key
            });
            LinearExtension::new(p, order)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_and_boolean_agree() {
        let g = grid(2, 2).unwrap();
        assert_eq!(g.inc_count(), 1);
        for d in 1..=4 {
            assert_eq!(grid(2, d).unwrap(), boolean(d).unwrap());
        }
    }

    #[test]
    fn standard_example_shape() {
        let s = standard_example(3).unwrap();
        assert_eq!(s.inc_count(), 9);
        assert!(s.lt(0, 4) && !s.lt(0, 3));
        assert!(standard_example(1).is_err());
    }

    #[test]
    fn wstack_shape() {
        let w0 = wstack(0).unwrap();
        assert_eq!((w0.len(), w0.inc_count()), (3, 3));
        for k in 1..4 {
            let w = wstack(k).unwrap();
            assert_eq!(w.inc_count(), 6 * k + 3);
            for block in wstack_blocks(k) {
                assert!(block.iter().all(|&(x, y)| w.incomparable(x, y)));
            }
        }
    }

    #[test]
    fn size_caps() {
        assert!(grid(200, 2).is_err());
        assert!(boolean(21).is_err());
        assert!(grid(0, 2).is_err());
    }
}
