//! Seeded randomized property suites for both presets, shared by the
//! `properties` and `acceptance` test targets.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zhu_core::functor::*;
use zhu_core::linalg::RationalMatrix;
use zhu_core::rational::{q, qf, Q};
use zhu_core::voa::*;
use zhu_core::zhu::{on_generators, OnMembership, ZhuAlgebra, ZhuLevel};
use zhu_core::Error;

const SEED: u64 = 20_240_611;
const CASES: usize = 25;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn small_q(r: &mut ChaCha8Rng) -> Q {
    qf(r.gen_range(-6..=6), r.gen_range(1..=3))
}

fn presets(r: &mut ChaCha8Rng) -> [VoaPreset; 2] {
    let cs = [q(1), qf(1, 2), q(-2), qf(7, 3)];
    let as_ = [q(0), qf(1, 2), q(-1), qf(2, 5)];
    [
        VoaPreset::virasoro(cs.choose(r).unwrap().clone()),
        VoaPreset::heisenberg(as_.choose(r).unwrap().clone()),
    ]
}

fn random_module(preset: &VoaPreset, r: &mut ChaCha8Rng, top: usize) -> GradedModule {
    match preset.kind {
        VoaKind::Virasoro => verma(preset.param.clone(), small_q(r), top).unwrap(),
        VoaKind::Heisenberg => {
            heisenberg_module(preset.param.clone(), small_q(r), r.gen_range(1..=2), top).unwrap()
        }
    }
}

fn random_state(preset: &VoaPreset, r: &mut ChaCha8Rng, max_weight: u32) -> VoaElement {
    loop {
        let w = r.gen_range(0..=max_weight);
        let basis = weight_basis(preset, w);
        if let Some(m) = basis.choose(r) {
            return VoaElement::monomial(m.clone());
        }
    }
}

fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| q(r.gen_range(-3..=3))).collect()
}

fn tolerate_window<T>(res: zhu_core::Result<T>) -> Option<T> {
    match res {
        Ok(v) => Some(v),
        Err(Error::TruncationExceeded { .. }) => None,
        Err(e) => panic!("unexpected error {e}"),
    }
}

pub fn commutator_formula_holds() {
    let mut r = rng(1);
    for preset in presets(&mut r) {
        let vac = VacuumModule::new(&preset, 10).unwrap();
        let target = random_module(&preset, &mut r, 5);
        let mut checked = 0;
        let mut attempts = 0;
        while checked < 50 {
            attempts += 1;
            assert!(attempts < 5000, "too few in-window samples");
            let u = random_state(&preset, &mut r, 5);
            let v = random_state(&preset, &mut r, 5);
            let (j, k) = (r.gen_range(-3..=4), r.gen_range(-3..=4));
            let d = r.gen_range(0..=5);
            let w = random_vector(&mut r, target.dim(d));
            let Some(res) = tolerate_window(bracket_sides(&vac, &target, &u, j, &v, k, d, &w)) else {
                continue;
            };
            if let Some((lhs, rhs)) = res {
                assert_eq!(lhs, rhs, "[{u}_{j}, {v}_{k}] on degree {d}");
                checked += 1;
            }
        }
    }
}

pub fn translation_is_a_derivative_of_modes() {
    let mut r = rng(2);
    for preset in presets(&mut r) {
        let vac = VacuumModule::new(&preset, 8).unwrap();
        let target = random_module(&preset, &mut r, 5);
        let mut checked = 0;
        while checked < CASES {
            let u = random_state(&preset, &mut r, 4);
            // translate is L(-1) + L(0); keep the L(-1) part
            let wt = q(u.max_weight().unwrap() as i64);
            let tu = vac.translate(&u).unwrap().sub(&u.scale(&wt));
            if tu.is_zero() {
                // only the vacuum is translation invariant
                assert_eq!(u, VoaElement::vacuum());
                continue;
            }
            let n = r.gen_range(-2..=5);
            let d = r.gen_range(0..=5);
            let (Some(lhs), Some(rhs)) = (
                tolerate_window(target.mode_matrix(&tu, n, d)),
                tolerate_window(target.mode_matrix(&u, n - 1, d)),
            ) else {
                continue;
            };
            assert_eq!(lhs.target, rhs.target);
            assert_eq!(lhs.matrix, rhs.matrix.scale(&q(-n)), "(L(-1){u})_{n} on degree {d}");
            checked += 1;
        }
    }
}

pub fn modes_respect_the_grading() {
    let mut r = rng(3);
    for preset in presets(&mut r) {
        let vac = VacuumModule::new(&preset, 10).unwrap();
        for _ in 0..CASES {
            let u = random_state(&preset, &mut r, 4);
            let v = random_state(&preset, &mut r, 4);
            let i = r.gen_range(-3..=4);
            let x = vac.mode_action(&u, i, &v).unwrap();
            let expect = u.max_weight().unwrap() as i64 + v.max_weight().unwrap() as i64 - i - 1;
            if let Some(w) = x.homogeneous_weight() {
                assert_eq!(w as i64, expect);
            } else {
                assert!(x.is_zero());
            }
        }
    }
}

fn inside(alg: &ZhuAlgebra, v: &VoaElement) -> bool {
    matches!(alg.membership(v).unwrap(), OnMembership::Inside(_))
}

pub fn zhu_algebra_axioms_modulo_o_n() {
    let mut r = rng(4);
    for preset in presets(&mut r) {
        for n in [0usize, 1] {
            let alg = ZhuAlgebra::new(ZhuLevel::new(preset.clone(), n, 10).unwrap()).unwrap();
            let budget = 6 - 2 * n as u32;
            let one = VoaElement::vacuum();
            let omega = conformal_vector(&preset);
            for _ in 0..CASES {
                let a = random_state(&preset, &mut r, budget);
                let b = random_state(&preset, &mut r, budget.saturating_sub(a.max_weight().unwrap()));
                // unit
                assert!(inside(&alg, &alg.star(&one, &a).unwrap().sub(&a)), "1 * {a}");
                assert!(inside(&alg, &alg.star(&a, &one).unwrap().sub(&a)), "{a} * 1");
                // centrality of the conformal class
                if alg.fits(&omega, &a) {
                    let comm = alg.star(&omega, &a).unwrap().sub(&alg.star(&a, &omega).unwrap());
                    assert!(inside(&alg, &comm), "[omega, {a}]");
                }
                // associativity
                let c = random_state(&preset, &mut r, 2);
                let ab = alg.star(&a, &b).unwrap();
                let bc = alg.star(&b, &c).unwrap();
                if alg.fits(&ab, &c) && alg.fits(&a, &bc) {
                    let lhs = alg.star(&ab, &c).unwrap();
                    let rhs = alg.star(&a, &bc).unwrap();
                    assert!(inside(&alg, &lhs.sub(&rhs)), "({a} * {b}) * {c}");
                }
            }
        }
    }
}

pub fn o_n_is_a_two_sided_ideal() {
    let mut r = rng(5);
    for preset in presets(&mut r) {
        for n in [0usize, 1] {
            let alg = ZhuAlgebra::new(ZhuLevel::new(preset.clone(), n, 10).unwrap()).unwrap();
            let small: Vec<_> = alg
                .generators()
                .iter()
                .filter(|g| g.element.max_weight().unwrap_or(0) <= 4)
                .collect();
            assert!(!small.is_empty());
            let mut checked = 0;
            while checked < CASES {
                let g = &small.choose(&mut r).unwrap().element;
                let a = random_state(&preset, &mut r, 3);
                if !alg.fits(g, &a) {
                    continue;
                }
                assert!(inside(&alg, &alg.star(g, &a).unwrap()), "{g} * {a}");
                assert!(inside(&alg, &alg.star(&a, g).unwrap()), "{a} * {g}");
                checked += 1;
            }
        }
    }
}

pub fn omega_properties_on_random_modules() {
    let mut r = rng(6);
    let mut checked = 0;
    while checked < CASES {
        let [vir, heis] = presets(&mut r);
        let preset = if checked % 2 == 0 { vir } else { heis };
        let m = random_module(&preset, &mut r, 4);
        let vac = VacuumModule::new(&preset, 6).unwrap();
        let o0 = omega_n(&m, 0).unwrap();
        let o1 = omega_n(&m, 1).unwrap();
        assert!(o0.is_subspace_of(&o1));
        for (n, om) in [(0usize, &o0), (1, &o1)] {
            for g in on_generators(&vac, n, 6).unwrap() {
                for d in 0..=4 {
                    let z = m.zero_mode(&g.element, d).unwrap();
                    for b in om.spaces[d].basis() {
                        assert!(z.apply(b).unwrap().iter().all(Zero::is_zero));
                    }
                }
            }
        }
        checked += 1;
    }
}

fn random_spec(r: &mut ChaCha8Rng) -> AnModuleSpec {
    match r.gen_range(0..4) {
        0 => AnModuleSpec::heisenberg_u1(small_q(r), small_q(r), r.gen_range(1..=3)).unwrap(),
        1 => AnModuleSpec::virasoro_factoring_family(small_q(r), r.gen_range(1..=2)).unwrap(),
        2 => AnModuleSpec::level_zero(
            VoaPreset::virasoro(small_q(r)),
            RationalMatrix::jordan_block(&small_q(r), r.gen_range(1..=2)),
        )
        .unwrap(),
        _ => AnModuleSpec::level_zero(
            VoaPreset::heisenberg(small_q(r)),
            RationalMatrix::jordan_block(&small_q(r), r.gen_range(1..=2)),
        )
        .unwrap(),
    }
}

pub fn induced_modules_respect_degree_bounds() {
    let mut r = rng(7);
    for _ in 0..CASES {
        let u = random_spec(&mut r);
        let ind = induce_ln(&u, 4).unwrap();
        assert!(ind.j_meets_u_trivially && ind.top_matches, "{u:?}");
        assert!(l0_check(&ind.module).unwrap());
        let report = degree_bound_check(&ind.module, u.level()).unwrap();
        assert!(report.holds, "{u:?}: {report:?}");
    }
}
