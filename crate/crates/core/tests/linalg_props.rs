use num_traits::Zero;
use proptest::prelude::*;

use zhu_core::linalg::{jordan_data, kernel, quotient_basis, solve, RationalMatrix, Subspace};
use zhu_core::rational::{q, qf, Q};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |xs| {
        RationalMatrix::from_rows(xs.chunks(cols).map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .unwrap()
    })
}

fn upper_triangular(n: usize) -> impl Strategy<Value = RationalMatrix> {
    (matrix(n, n), prop::collection::vec(-2i64..=2, n)).prop_map(move |(m, diag)| {
        let mut t = RationalMatrix::zeros(n, n);
        for i in 0..n {
            t[(i, i)] = q(diag[i]);
            for j in (i + 1)..n {
                t[(i, j)] = m[(i, j)].clone();
            }
        }
        t
    })
}

/// Upper triangular with few distinct rational eigenvalues, so multiplicities are large.
fn clustered_spectrum() -> impl Strategy<Value = RationalMatrix> {
    (6usize..=16).prop_flat_map(|n| {
        (
            prop::collection::vec((-3i64..=3, 1i64..=3), 2),
            prop::collection::vec(0usize..2, n),
            prop::collection::vec(prop::option::weighted(0.3, -2i64..=2), n * n),
        )
            .prop_map(move |(eigs, pick, upper)| {
                let mut t = RationalMatrix::zeros(n, n);
                for i in 0..n {
                    let (p, d) = eigs[pick[i]];
                    t[(i, i)] = qf(p, d);
                    for j in (i + 1)..n {
                        if let Some(x) = upper[i * n + j] {
                            t[(i, j)] = q(x);
                        }
                    }
                }
                t
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(3, 5)) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), 5);
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_finds_preimages(m in matrix(4, 3), x in prop::collection::vec(-3i64..=3, 3)) {
        let x: Vec<Q> = x.into_iter().map(q).collect();
        let b = m.apply(&x).unwrap();
        let sol = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.apply(&sol).unwrap(), b);
    }

    #[test]
    fn intersection_and_sum_dimensions(a in matrix(2, 4), b in matrix(2, 4)) {
        let sa = Subspace::span(4, (0..2).map(|r| a.row(r).to_vec()));
        let sb = Subspace::span(4, (0..2).map(|r| b.row(r).to_vec()));
        prop_assert_eq!(sa.sum(&sb).dim() + sa.intersection(&sb).dim(), sa.dim() + sb.dim());
        prop_assert!(sa.intersection(&sb).is_subspace_of(&sa));
    }

    #[test]
    fn quotient_basis_completes_the_subspace(a in matrix(2, 5)) {
        let sub = Subspace::span(5, (0..2).map(|r| a.row(r).to_vec()));
        let reps = quotient_basis(&Subspace::full(5), &sub).unwrap();
        prop_assert_eq!(reps.len() + sub.dim(), 5);
        let mut all = sub.clone();
        for i in reps {
            let mut e = vec![Q::zero(); 5];
            e[i] = q(1);
            prop_assert!(all.insert(e));
        }
    }

    #[test]
    fn jordan_sizes_sum_to_dimension(t in upper_triangular(4)) {
        let report = jordan_data(&t).unwrap();
        prop_assert_eq!(report.dimension(), 4);
        for b in &report.blocks {
            // algebraic multiplicity equals the count on the diagonal
            let count = (0..4).filter(|&i| t[(i, i)] == b.eigenvalue).count();
            prop_assert_eq!(b.sizes.iter().sum::<usize>(), count);
        }
    }

    #[test]
    fn clustered_spectra_resolve(t in clustered_spectrum()) {
        let n = t.rows();
        let report = jordan_data(&t).unwrap();
        prop_assert_eq!(report.dimension(), n);
        for b in &report.blocks {
            let count = (0..n).filter(|&i| t[(i, i)] == b.eigenvalue).count();
            prop_assert_eq!(b.sizes.iter().sum::<usize>(), count);
        }
    }
}
