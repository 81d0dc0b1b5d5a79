use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{kernel, RationalMatrix};
use crate::rational::{q, Q};
use crate::{Error, Result};

const TRIES: usize = 24;

/// Finds an invertible `P` with `P A_i = B_i P` for every pair, or `None`.
///
/// The intertwiners form the null space of a linear system; a random
/// combination of its basis is invertible unless every intertwiner is singular,
/// so a failure after [`TRIES`] seeded draws is reported as "not similar".
pub fn simultaneous_similarity(
    pairs: &[(&RationalMatrix, &RationalMatrix)],
    seed: u64,
) -> Result<Option<RationalMatrix>> {
    let Some((a0, _)) = pairs.first() else {
        return Ok(None);
    };
    let n = a0.rows();
    for (a, b) in pairs {
        for m in [a, b] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.rows() });
            }
        }
    }
    if n == 0 {
        return Ok(Some(RationalMatrix::zeros(0, 0)));
    }
    // unknown P[r][c] sits at r * n + c
    let mut rows = Vec::new();
    for (a, b) in pairs {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Q::zero(); n * n];
                for k in 0..n {
                    row[r * n + k] += &a[(k, c)];
                    row[k * n + c] -= &b[(r, k)];
                }
                rows.push(row);
            }
        }
    }
    let space = kernel(&RationalMatrix::from_rows(rows)?);
    if space.dim() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TRIES {
        let mut flat = vec![Q::zero(); n * n];
        for b in space.basis() {
            let c = q(rng.gen_range(-64..=64));
            for (x, y) in flat.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        let p = RationalMatrix::from_rows(flat.chunks(n).map(<[Q]>::to_vec).collect())?;
        if !p.determinant()?.is_zero() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
