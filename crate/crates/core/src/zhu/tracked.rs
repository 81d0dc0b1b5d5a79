use num_traits::{One, Zero};

use crate::rational::Q;

/// Echelon span of a growing list of generator vectors that remembers, for
/// every echelon row, its expression as a combination of the generators.
///
/// Pivot convention matches [`crate::linalg::Subspace`]: highest nonzero
/// coordinate, normalized to 1, fully reduced.
#[derive(Clone, Debug)]
pub struct TrackedSpan {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    /// Combination over the independent generators, indexed by position in `basis_gens`.
    combos: Vec<Vec<Q>>,
    /// Indices (into the caller's generator list) of the generators that enlarged the span.
    basis_gens: Vec<usize>,
}

impl TrackedSpan {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            basis_gens: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Residual of `v` and the combination of echelon rows that was subtracted.
    fn reduce_with(&self, mut v: Vec<Q>) -> (Vec<Q>, Vec<Q>) {
        let mut used = vec![Q::zero(); self.rows.len()];
        for (r, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            used[r] = f;
        }
        (v, used)
    }

    pub fn reduce(&self, v: Vec<Q>) -> Vec<Q> {
        self.reduce_with(v).0
    }

    /// Adds generator number `gen_index`. Returns true if the span grew.
    pub fn insert(&mut self, gen_index: usize, v: Vec<Q>) -> bool {
        let (mut r, used) = self.reduce_with(v);
        let Some(p) = r.iter().rposition(|x| !x.is_zero()) else {
            return false;
        };
        let k = self.basis_gens.len();
        // combination for r = g - sum used_i row_i
        let mut combo = vec![Q::zero(); k + 1];
        combo[k] = Q::one();
        for (u, c) in used.iter().zip(&self.combos) {
            if u.is_zero() {
                continue;
            }
            for (x, y) in combo.iter_mut().zip(c) {
                if !y.is_zero() {
                    *x -= u * y;
                }
            }
        }
        for c in self.combos.iter_mut() {
            c.push(Q::zero());
        }
        let inv = Q::one() / &r[p];
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for x in combo.iter_mut() {
            *x *= &inv;
        }
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in c.iter_mut().zip(&combo) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.combos.push(combo);
        self.basis_gens.push(gen_index);
        true
    }

    /// `Ok(witness)` with `v = sum c * generator[i]` over `(i, c)` pairs, or `Err(residual)`.
    pub fn witness(&self, v: Vec<Q>) -> std::result::Result<Vec<(usize, Q)>, Vec<Q>> {
        let (r, used) = self.reduce_with(v);
        if r.iter().any(|x| !x.is_zero()) {
            return Err(r);
        }
        let mut total = vec![Q::zero(); self.basis_gens.len()];
        for (u, c) in used.iter().zip(&self.combos) {
            if u.is_zero() {
                continue;
            }
            for (x, y) in total.iter_mut().zip(c) {
                if !y.is_zero() {
                    *x += u * y;
                }
            }
        }
        Ok(total
            .into_iter()
            .zip(&self.basis_gens)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &g)| (g, c))
            .collect())
    }

    /// Coordinates that are not pivots, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&i| !is_pivot[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn witnesses_reconstruct_vectors() {
        let gens = [v(&[1, 1, 0]), v(&[0, 2, 0]), v(&[1, 3, 0]), v(&[0, 0, 5])];
        let mut s = TrackedSpan::new(3);
        for (i, g) in gens.iter().enumerate() {
            s.insert(i, g.clone());
        }
        assert_eq!(s.dim(), 3);
        let target = v(&[3, 5, 10]);
        let w = s.witness(target.clone()).unwrap();
        let mut sum = v(&[0, 0, 0]);
        for (i, c) in w {
            for (x, y) in sum.iter_mut().zip(&gens[i]) {
                *x += &c * y;
            }
        }
        assert_eq!(sum, target);
        let mut t = TrackedSpan::new(2);
        t.insert(0, v(&[1, 0]));
        assert_eq!(t.witness(v(&[0, 1])), Err(v(&[0, 1])));
    }
}
