//! Rank over GF(2) by column reduction on packed bit columns.

/// Rank of the matrix whose `j`-th column has ones exactly in the rows listed
/// in `cols[j]`.
pub fn rank(rows: usize, cols: &[Vec<usize>]) -> usize {
    let words = rows.div_ceil(64);
    // pivot[r] holds a reduced column whose highest set row is r.
    let mut pivot: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut bits = vec![0u64; words];
        for &r in col {
            bits[r / 64] ^= 1 << (r % 64);
        }
        while let Some(low) = highest_bit(&bits) {
            match &pivot[low] {
                Some(p) => {
                    for (b, w) in bits.iter_mut().zip(p) {
                        *b ^= w;
                    }
                }
                None => {
                    pivot[low] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}
