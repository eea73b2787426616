//! Exact rank over the rationals by fraction-free column reduction.
//!
//! Each column is an integer vector. Eliminating the leading entry `a` of a
//! column against a pivot column with leading entry `b` replaces the column
//! by `b·c − a·p` and divides out the content, so no fractions appear.
//! Arithmetic runs in `i64` and restarts in `BigInt` on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse column: `(row, value)` pairs, sorted by row, no zero values.
pub type SparseColumn<T> = Vec<(usize, T)>;

trait Exact: Clone + Eq + Zero + One + Signed + Integer {
    /// `b·x − a·y`, or `None` on overflow.
    fn combine(b: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self>;
}

impl Exact for i64 {
    fn combine(b: &i64, x: &i64, a: &i64, y: &i64) -> Option<i64> {
        b.checked_mul(*x)?.checked_sub(a.checked_mul(*y)?)
    }
}

impl Exact for BigInt {
    fn combine(b: &BigInt, x: &BigInt, a: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(b * x - a * y)
    }
}

/// `b·c − a·p` over the union of supports.
fn eliminate<T: Exact>(c: &[(usize, T)], p: &[(usize, T)], a: &T, b: &T) -> Option<SparseColumn<T>> {
    let mut out = Vec::with_capacity(c.len() + p.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::zero();
    while i < c.len() || j < p.len() {
        let ri = c.get(i).map_or(usize::MAX, |e| e.0);
        let rj = p.get(j).map_or(usize::MAX, |e| e.0);
        let (row, x, y) = if ri == rj {
            i += 1;
            j += 1;
            (ri, &c[i - 1].1, &p[j - 1].1)
        } else if ri < rj {
            i += 1;
            (ri, &c[i - 1].1, &zero)
        } else {
            j += 1;
            (rj, &zero, &p[j - 1].1)
        };
        let v = T::combine(b, x, a, y)?;
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Some(out)
}

fn normalize<T: Exact>(c: &mut SparseColumn<T>) {
    let g = c.iter().fold(T::zero(), |g, (_, v)| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in c.iter_mut() {
        *v = v.div_floor(&g);
    }
}

fn rank_in<T: Exact>(rows: usize, cols: Vec<SparseColumn<T>>) -> Option<usize> {
    let mut pivot: Vec<Option<SparseColumn<T>>> = vec![None; rows];
    let mut rank = 0;
    for mut col in cols {
        while let Some((low, a)) = col.last().cloned() {
            match &pivot[low] {
                Some(p) => {
                    let b = &p.last().unwrap().1;
                    col = eliminate(&col, p, &a, b)?;
                    normalize(&mut col);
                }
                None => {
                    pivot[low] = Some(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Rank over `Q` of the integer matrix given by sparse columns.
pub fn rank(rows: usize, cols: &[SparseColumn<i64>]) -> usize {
    if let Some(r) = rank_in::<i64>(rows, cols.to_vec()) {
        return r;
    }
    let big = cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect())
        .collect();
    rank_in::<BigInt>(rows, big).expect("arbitrary precision cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Gaussian elimination with exact rational arithmetic.
    fn rank_by_fractions(rows: usize, cols: &[SparseColumn<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|_| vec![BigRational::zero(); cols.len()])
            .collect();
        for (j, c) in cols.iter().enumerate() {
            for &(r, v) in c {
                m[r][j] = BigRational::from_integer(BigInt::from(v));
            }
        }
        let mut rank = 0;
        for j in 0..cols.len() {
            let Some(p) = (rank..rows).find(|&i| !m[i][j].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..rows {
                if i != rank && !m[i][j].is_zero() {
                    let f = &m[i][j] / &m[rank][j];
                    let pivot = m[rank].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn sparse(col: Vec<(usize, i64)>, rows: usize) -> SparseColumn<i64> {
        let mut dense = vec![0i64; rows];
        for (r, v) in col {
            dense[r % rows] = v;
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0)
            .collect()
    }

    #[test]
    fn triangle_boundary_has_rank_two() {
        let cols = vec![
            vec![(0, -1), (1, 1)],
            vec![(0, -1), (2, 1)],
            vec![(1, -1), (2, 1)],
        ];
        assert_eq!(rank(3, &cols), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let cols = vec![
            vec![(0, big), (1, 3)],
            vec![(0, big - 1), (1, 7)],
            vec![(0, 5), (1, big)],
        ];
        assert_eq!(rank(2, &cols), 2);
    }

    #[test]
    fn rank_two_where_gf2_sees_one() {
        // det = 2: singular mod 2, invertible over Q.
        let cols = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, -1)]];
        assert_eq!(rank(2, &cols), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_fraction_elimination(
            rows in 1usize..9,
            raw in proptest::collection::vec(proptest::collection::vec((0usize..9, -4i64..5), 0..5), 0..9),
        ) {
            let cols: Vec<_> = raw.into_iter().map(|c| sparse(c, rows)).collect();
            prop_assert_eq!(rank(rows, &cols), rank_by_fractions(rows, &cols));
        }
    }
}
