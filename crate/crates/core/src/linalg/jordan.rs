use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::RationalMatrix;
use crate::error::{Error, Result};
use crate::rational::{serde_q, Q};

/// Generalized eigenvalues with their Jordan block sizes (descending).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanReport {
    pub blocks: Vec<EigenBlocks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlocks {
    #[serde(with = "serde_q")]
    pub eigenvalue: Q,
    pub sizes: Vec<usize>,
}

impl JordanReport {
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.sizes.iter().sum::<usize>()).sum()
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.blocks.iter().all(|b| b.sizes.iter().all(|&s| s == 1))
    }

    pub fn sizes_at(&self, lambda: &Q) -> Vec<usize> {
        self.blocks
            .iter()
            .find(|b| &b.eigenvalue == lambda)
            .map(|b| b.sizes.clone())
            .unwrap_or_default()
    }

    /// Block sizes of the only eigenvalue, or `None` when the spectrum is not a single point.
    pub fn single(&self) -> Option<(&Q, &[usize])> {
        match self.blocks.as_slice() {
            [b] => Some((&b.eigenvalue, &b.sizes)),
            _ => None,
        }
    }
}

/// `rank((M - lambda I)^j)` for `j = 0, 1, ...` until it stops dropping.
pub fn rank_sequence(m: &RationalMatrix, lambda: &Q) -> Result<Vec<usize>> {
    let n = m.rows();
    let shifted = m.sub(&RationalMatrix::scalar(n, lambda))?;
    let mut ranks = vec![n];
    let mut power = RationalMatrix::identity(n);
    loop {
        power = power.mul(&shifted)?;
        let r = power.rank();
        let last = *ranks.last().unwrap();
        ranks.push(r);
        if r == last {
            break;
        }
    }
    Ok(ranks)
}

fn sizes_from_ranks(ranks: &[usize]) -> Vec<usize> {
    // blocks of size >= j: ranks[j-1] - ranks[j]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (j, &count) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..count - next {
            sizes.push(j + 1);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Characteristic polynomial `det(tI - M)`, ascending coefficients (Faddeev-LeVerrier).
pub(crate) fn characteristic_polynomial(m: &RationalMatrix) -> Result<Vec<Q>> {
    let n = m.rows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let prev = coeffs[n - k + 1].clone();
        mk = m.mul(&mk.add(&RationalMatrix::scalar(n, &prev))?)?;
        let trace = (0..n).fold(Q::zero(), |acc, i| acc + &mk[(i, i)]);
        coeffs[n - k] = -trace / Q::from_integer(BigInt::from(k));
    }
    Ok(coeffs)
}

const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_DIVISORS: usize = 200_000;

/// Positive divisors of `n` from its factorization by trial division.
/// `None` when a cofactor above `TRIAL_LIMIT^2` remains or there are too many divisors.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.abs();
    if rest.is_zero() {
        return Some(vec![]);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    loop {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        if d > TRIAL_LIMIT {
            return None;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let count = factors.iter().try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1))?;
    if count > MAX_DIVISORS {
        return None;
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for x in &out {
            let mut pk = x.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        out = next;
    }
    Some(out)
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Q]) -> Vec<Q> {
    if p.len() <= 1 {
        return vec![Q::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
        .collect()
}

/// Quotient and remainder of ascending polynomials; `b` must be nonzero.
fn div_rem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let mut quot = vec![Q::zero(); r.len() - db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        quot[k] = c;
        r.pop();
        r = trim(r);
        if r.len() <= db {
            break;
        }
    }
    (quot, r)
}

fn is_zero_poly(p: &[Q]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero_poly(&b) {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().clone();
    a.into_iter().map(|c| c / &lead).collect()
}

/// `p / gcd(p, p')`: same roots, all simple, usually much smaller coefficients.
fn squarefree_part(p: &[Q]) -> Vec<Q> {
    let g = gcd(p, &derivative(p));
    if g.len() <= 1 {
        return p.to_vec();
    }
    div_rem(p, &g).0
}

fn eval(poly: &[Q], x: &Q) -> Q {
    poly.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn deflate(poly: &[Q], root: &Q) -> Vec<Q> {
    // synthetic division of an ascending polynomial by (t - root)
    let n = poly.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for i in (0..n).rev() {
        carry = &poly[i + 1] + carry * root;
        out[i] = carry.clone();
    }
    out
}

fn poly_string(poly: &[Q]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{i}"),
        })
        .collect();
    terms.join(" + ")
}

/// Rational roots with multiplicity; errors if an irreducible factor of degree > 1 remains.
fn rational_roots(mut poly: Vec<Q>) -> Result<BTreeMap<Q, usize>> {
    let mut roots = BTreeMap::new();
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        *roots.entry(Q::zero()).or_insert(0) += 1;
    }
    if poly.len() <= 1 {
        return Ok(roots);
    }
    // candidates come from the squarefree part; multiplicities from deflating `poly`
    let simple = squarefree_part(&poly);
    let lcm = simple.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = simple
        .iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let unresolved = || Error::IrrationalSpectrum {
        factor: poly_string(&poly),
    };
    let ps = divisors(&ints[0]).ok_or_else(unresolved)?;
    let qs = divisors(ints.last().unwrap()).ok_or_else(unresolved)?;
    let mut candidates: Vec<Q> = Vec::new();
    for p in &ps {
        for qd in &qs {
            let c = Q::new(p.clone(), qd.clone());
            candidates.push(c.clone());
            candidates.push(-c);
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut found = 0;
    let wanted = simple.len() - 1;
    for c in candidates {
        if found == wanted {
            break;
        }
        if !eval(&simple, &c).is_zero() {
            continue;
        }
        found += 1;
        while poly.len() > 1 && eval(&poly, &c).is_zero() {
            poly = deflate(&poly, &c);
            *roots.entry(c.clone()).or_insert(0) += 1;
        }
    }
    if poly.len() > 1 {
        return Err(Error::IrrationalSpectrum {
            factor: poly_string(&poly),
        });
    }
    Ok(roots)
}

/// Jordan structure of a square matrix with rational spectrum.
pub fn jordan_data(m: &RationalMatrix) -> Result<JordanReport> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Ok(JordanReport { blocks: vec![] });
    }
    let roots = rational_roots(characteristic_polynomial(m)?)?;
    let mut blocks = Vec::new();
    for (lambda, mult) in roots {
        let ranks = rank_sequence(m, &lambda)?;
        let sizes = sizes_from_ranks(&ranks);
        debug_assert_eq!(sizes.iter().sum::<usize>(), mult);
        blocks.push(EigenBlocks {
            eigenvalue: lambda,
            sizes,
        });
    }
    Ok(JordanReport { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn zero_matrix_is_all_ones() {
        let r = jordan_data(&RationalMatrix::zeros(4, 4)).unwrap();
        assert_eq!(r.single(), Some((&q(0), &[1, 1, 1, 1][..])));
        assert!(r.is_diagonalizable());
    }

    #[test]
    fn single_jordan_block() {
        for k in 1..=5 {
            let lam = qf(3, 2);
            let r = jordan_data(&RationalMatrix::jordan_block(&lam, k)).unwrap();
            assert_eq!(r.single(), Some((&lam, &[k][..])));
        }
    }

    #[test]
    fn mixed_spectrum() {
        let mut m = RationalMatrix::zeros(4, 4);
        m[(0, 0)] = q(2);
        m[(0, 1)] = q(1);
        m[(1, 1)] = q(2);
        m[(2, 2)] = q(2);
        m[(3, 3)] = q(-1);
        let r = jordan_data(&m).unwrap();
        assert_eq!(r.sizes_at(&q(2)), vec![2, 1]);
        assert_eq!(r.sizes_at(&q(-1)), vec![1]);
        assert_eq!(r.dimension(), 4);
    }

    #[test]
    fn irrational_spectrum_is_reported() {
        let m = RationalMatrix::from_rows(vec![vec![q(0), q(2)], vec![q(1), q(0)]]).unwrap();
        assert!(matches!(jordan_data(&m), Err(Error::IrrationalSpectrum { .. })));
    }

    #[test]
    fn high_multiplicity_eigenvalue() {
        // charpoly (t - 6)^22 has constant term 6^22, beyond plain trial division
        let r = jordan_data(&RationalMatrix::scalar(22, &q(6))).unwrap();
        assert_eq!(r.sizes_at(&q(6)), vec![1; 22]);
        let mut m = RationalMatrix::scalar(9, &qf(7, 3));
        m[(0, 1)] = q(1);
        m[(5, 6)] = q(1);
        m[(6, 7)] = q(1);
        let r = jordan_data(&m).unwrap();
        assert_eq!(r.sizes_at(&qf(7, 3)), vec![3, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn squarefree_part_and_divisors() {
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        let p = vec![q(2), q(-3), q(0), q(1)];
        assert_eq!(squarefree_part(&p), vec![q(-2), q(1), q(1)]);
        let mut d = divisors(&BigInt::from(72)).unwrap();
        d.sort();
        let want: Vec<BigInt> = [1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(d, want);
        assert_eq!(divisors(&BigInt::from(6u64).pow(22)).unwrap().len(), 23 * 23);
    }

    #[test]
    fn charpoly_of_companion() {
        // t^2 - 3t + 2
        let m = RationalMatrix::from_rows(vec![vec![q(0), q(-2)], vec![q(1), q(3)]]).unwrap();
        assert_eq!(characteristic_polynomial(&m).unwrap(), vec![q(2), q(-3), q(1)]);
    }
}
