use zhu_core::linalg::RationalMatrix;
use zhu_core::rational::{q, qf, Q};
use zhu_core::voa::*;

fn vir(c: Q) -> VoaPreset {
    VoaPreset::virasoro(c)
}

fn heis(a: Q) -> VoaPreset {
    VoaPreset::heisenberg(a)
}

fn el(parts: &[u32]) -> VoaElement {
    VoaElement::from_parts(parts)
}

fn verma(c: Q, h: Q, d: usize) -> GradedModule {
    let spec = PbwSpec {
        preset: vir(c),
        max_degree: d,
        base_degree: 0,
        level: 0,
        min_creation: 1,
        zero_mode: RationalMatrix::scalar(1, &h),
        names: vec!["|h>".into()],
        lowest_weight: Some(h),
    };
    build_pbw_module(&spec).unwrap().0
}

#[test]
fn normal_order_word_examples() {
    let v = VacuumModule::new(&vir(q(1)), 6).unwrap();
    assert!(v.normal_order_word(&[1, -1], &VoaElement::vacuum()).unwrap().is_zero());
    assert_eq!(v.normal_order_word(&[-1], &el(&[2])).unwrap(), el(&[3]));
    let h = VacuumModule::new(&heis(q(0)), 4).unwrap();
    assert!(h.normal_order_word(&[0, -1], &VoaElement::vacuum()).unwrap().is_zero());
}

#[test]
fn zero_mode_of_omega_squared_on_verma() {
    for (c, h) in [(q(1), q(0)), (q(1), q(2)), (q(-2), qf(1, 3))] {
        let m = verma(c, h.clone(), 3);
        let u = el(&[2, 2]);
        let z0 = m.zero_mode(&u, 0).unwrap();
        assert_eq!(z0[(0, 0)], &h * &h + q(2) * &h);
        let z1 = m.zero_mode(&u, 1).unwrap();
        assert_eq!(z1[(0, 0)], &h * &h + q(8) * &h + q(3));
    }
}

#[test]
fn vacuum_mode_is_identity() {
    let v = VacuumModule::new(&vir(qf(1, 2)), 6).unwrap();
    let x = el(&[4]).add(&el(&[2, 2]).scale(&qf(3, 2)));
    assert_eq!(v.mode_action(&VoaElement::vacuum(), -1, &x).unwrap(), x);
    assert!(v.mode_action(&VoaElement::vacuum(), 0, &x).unwrap().is_zero());
}

#[test]
fn translate_examples() {
    let v = VacuumModule::new(&vir(q(1)), 6).unwrap();
    assert!(v.translate(&VoaElement::vacuum()).unwrap().is_zero());
    assert_eq!(
        v.translate(&el(&[2])).unwrap(),
        el(&[3]).add(&el(&[2]).scale(&q(2)))
    );
    let h = VacuumModule::new(&heis(q(0)), 6).unwrap();
    assert_eq!(h.translate(&el(&[1])).unwrap(), el(&[2]).add(&el(&[1])));
}

#[test]
fn creation_property() {
    for p in [vir(q(1)), heis(qf(1, 2))] {
        let v = VacuumModule::new(&p, 6).unwrap();
        for w in 0..=6 {
            for m in weight_basis(&p, w) {
                let u = VoaElement::monomial(m);
                assert_eq!(v.mode_action(&u, -1, &VoaElement::vacuum()).unwrap(), u);
                for n in 0..3 {
                    assert!(v.mode_action(&u, n, &VoaElement::vacuum()).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn bracket_examples() {
    let v = VacuumModule::new(&vir(q(1)), 8).unwrap();
    let w = el(&[2]);
    assert!(bracket_check(&v, v.module(), &w, 3, &w, 1, 0, &vacuum_vector()).unwrap());
    let h = VacuumModule::new(&heis(q(0)), 8).unwrap();
    let a = el(&[1]);
    let (l, r) = bracket_sides(&h, h.module(), &a, 1, &a, -1, 0, &vacuum_vector())
        .unwrap()
        .unwrap();
    assert_eq!(l, vec![q(1)]);
    assert_eq!(r, vec![q(1)]);
    let om = conformal_vector(&heis(q(0)));
    assert!(bracket_check(&h, h.module(), &om, 2, &a, -1, 0, &vacuum_vector()).unwrap());
}
