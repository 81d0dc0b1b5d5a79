//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 2 and 8 do not hold as literally stated (see the comments on
//! their functions); their lines still say FAIL, and the process exits
//! nonzero only for other failures.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use zhu_core::functor::*;
use zhu_core::linalg::RationalMatrix;
use zhu_core::rational::{q, qf, Q};
use zhu_core::voa::{VoaElement, VoaPreset};
use zhu_core::zhu::{an_presentation, check_defining_relation, check_idempotent, ZhuAlgebra, ZhuLevel};

/// Criteria whose literal statement cannot be met.
const KNOWN_UNATTAINABLE: [usize; 2] = [2, 8];

const TIME_1: Duration = Duration::from_secs(10);
const TIME_2: Duration = Duration::from_secs(120);
const TIME_10: Duration = Duration::from_secs(600);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Partitions by Euler's pentagonal recurrence.
fn partitions(max: usize) -> Vec<i64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max as i64 {
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n as usize] += sign * p[(n - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                p[n as usize] += sign * p[(n - g2) as usize];
            }
            k += 1;
        }
    }
    p
}

fn cs() -> [Q; 3] {
    [q(1), qf(1, 2), q(-2)]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    for c in cs() {
        let alg = ZhuAlgebra::new(ZhuLevel::new(VoaPreset::virasoro(c), 0, 8).unwrap()).unwrap();
        let r = check_defining_relation(&alg).unwrap().unwrap();
        ok &= r.certified && r.within_cutoff;
    }
    let t = start.elapsed();
    outcome(ok && t < TIME_1, format!("y = x^2 + 2x certified at W = 8 for c in {{1, 1/2, -2}}; {t:.2?}"))
}

/// Every representative of the class of q0 has weight >= 6, and the top term of
/// `u *_1 v` is `-2 u_{-3} v`, so the product q0 * q1 reaches weight 14 before
/// it can be reduced. Certification needs an O_1 span up to weight 12.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut within = true;
    let mut certified = true;
    let mut stable = true;
    let mut used = Vec::new();
    for c in cs() {
        let p = an_presentation(&ZhuLevel::new(VoaPreset::virasoro(c), 1, 10).unwrap()).unwrap();
        let r = &p.relations[0];
        certified &= r.certified;
        within &= r.within_cutoff;
        stable &= p.stabilized;
        used.push(r.cutoff_used);
    }
    let t = start.elapsed();
    outcome(
        certified && within && stable && t < TIME_2,
        format!(
            "q0*q1 certified: {certified}, inside O_1 at W = 10: {within} (cutoffs used {used:?}), stable vs W = 9: {stable}; {t:.2?}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for a in [q(0), qf(1, 2)] {
        for w in [8, 10] {
            let preset = VoaPreset::heisenberg(a.clone());
            let a0 = ZhuAlgebra::new(ZhuLevel::new(preset.clone(), 0, w).unwrap()).unwrap();
            let a1 = ZhuAlgebra::new(ZhuLevel::new(preset, 1, w).unwrap()).unwrap();
            for r in [
                check_defining_relation(&a0).unwrap().unwrap(),
                check_defining_relation(&a1).unwrap().unwrap(),
                check_idempotent(&a1).unwrap().unwrap(),
            ] {
                let good = r.certified && r.within_cutoff;
                if !good {
                    notes.push(format!("{} a={a} W={w}", r.name));
                }
                ok &= good;
            }
        }
    }
    outcome(ok, format!("p0, p0*p1 and e*e = e certified for a in {{0, 1/2}}, W in {{8, 10}}{}", fmt_notes(&notes)))
}

fn fmt_notes(notes: &[String]) -> String {
    if notes.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", notes.join(", "))
    }
}

fn criterion_4() -> Outcome {
    let y = VoaElement::from_parts(&[2, 2]);
    let mut ok = true;
    for (c, h) in [(q(1), q(0)), (q(1), q(2)), (q(-2), qf(1, 3))] {
        let m = verma(c, h.clone(), 4).unwrap();
        for d in 0..=4 {
            let o = m.zero_mode(&y, d).unwrap();
            let l0 = m.l0(d).unwrap();
            let mut rhs = l0.scale(&q(2)).add(&l0.mul(&l0).unwrap()).unwrap();
            for i in 1..=d as i32 {
                let up = m.generator_matrix(i, d).unwrap();
                let t = up.target.unwrap();
                let down = m.generator_matrix(-i, t).unwrap().matrix;
                rhs.add_scaled(&down.mul(&up.matrix).unwrap(), &q(2));
            }
            ok &= o == rhs;
        }
        let spot0 = &h * &h + q(2) * &h;
        let spot1 = &h * &h + q(8) * &h + q(3);
        ok &= m.zero_mode(&y, 0).unwrap()[(0, 0)] == spot0;
        ok &= m.zero_mode(&y, 1).unwrap()[(0, 0)] == spot1;
    }
    outcome(ok, "o(L(-2)^2 1) = 2L(0) + L(0)^2 + 2 sum L(-i)L(i) on M(c,h), d <= 4; spot values h^2+2h, h^2+8h+3")
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut seen = Vec::new();
    for k in 1..=3 {
        let u = AnModuleSpec::virasoro_factoring_family(q(1), k).unwrap();
        let (ind, rep) = roundtrip_report(&u, 4, &InduceOptions::default()).unwrap();
        let jb = jordan_by_degree(&ind.module).unwrap();
        let b0 = jb[0].jordan.single().map(|(_, s)| s.to_vec()).unwrap_or_default();
        let b1 = jb[1].jordan.single().map(|(_, s)| s.to_vec()).unwrap_or_default();
        ok &= b0 == [k] && b1 == [k + 1];
        ok &= rep.verdict() == "FAILS" && rep.defect_dim == 1;
        ok &= rep.classification == Classification::HasFactoringSubmodule { dim: 1 };
        seen.push(format!("k={k}: {b0:?}/{b1:?} {} defect {}", rep.verdict(), rep.defect_dim));
    }
    outcome(ok, format!("factoring family at c = 1, D = 4: {}", seen.join("; ")))
}

fn criterion_6() -> Outcome {
    let p = partitions(4);
    let mut ok = true;
    for lambda in [q(0), q(1)] {
        let u = AnModuleSpec::heisenberg_u1(q(0), lambda, 2).unwrap();
        let (ind, rep) = roundtrip_report(&u, 4, &InduceOptions::default()).unwrap();
        ok &= rep.verdict() == "HOLDS";
        ok &= ind.module.dims().iter().zip(&p).all(|(d, p)| *d as i64 == 2 * p);
    }
    outcome(ok, "Heisenberg U_1(lambda, 2), lambda in {0, 1}: roundtrip HOLDS, dims 2 p(d) for d <= 4")
}

fn criterion_7() -> Outcome {
    let p = partitions(10);
    let listed = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    let mut ok = p == listed;
    for (lambda, k) in [(q(0), 1), (q(1), 2), (qf(3, 2), 3)] {
        let m = heisenberg_module(q(0), lambda.clone(), k, 10).unwrap();
        let g = gdim(&m, 10);
        let expect: Vec<Q> = listed.iter().map(|x| q(x * k as i64)).collect();
        ok &= g.coefficients == expect;
        // prefactor of k η(q)^{-1}: the η normalization absorbs the -c/24
        ok &= &g.leading_exponent + qf(1, 24) == &lambda * &lambda * qf(1, 2);
    }
    outcome(ok, "gdim of M_0(1) (x) Omega(lambda, k) = k [1,1,2,3,5,7,11,15,22,30,42], exponent 1/2 lambda^2 before eta")
}

/// At c = 1 the weight h = 0 is degenerate at level 4 as well as level 1, so
/// M(1, 0) has a third singular vector in degree 4 and Omega_0 is 3-dimensional
/// through degree 6. The generic central charge c = 3 shows the expected 2 + 1.
fn criterion_8() -> Outcome {
    let m = verma(q(1), q(0), 6).unwrap();
    let o0 = omega_n(&m, 0).unwrap();
    let o1 = omega_n(&m, 1).unwrap();
    let literal = o0.total_dim() == 2 && o1.total_dim() == 3 && o0.stabilized && o1.stabilized;
    let (dims, x, y, _) = omega_quotient_spec(&m, 1).unwrap();
    let at2 = dims[2];
    let u = AnModuleSpec::new(
        VoaPreset::virasoro(q(1)),
        1,
        RationalMatrix::scalar(1, &x[(0, 0)]),
        RationalMatrix::scalar(1, &y[(0, 0)]),
    )
    .unwrap();
    let l1 = induce_ln(&u, 6).unwrap();
    let generic = verma(q(3), q(0), 6).unwrap();
    let g0 = omega_n(&generic, 0).unwrap().dims();
    let g1 = omega_n(&generic, 1).unwrap().dims();
    outcome(
        literal && at2 == 1 && l1.module.dim(0) == 1,
        format!(
            "c = 1: Omega_0 dims {:?}, Omega_1 dims {:?} (level-4 singular vector at c = 1); \
             L_1 of the degree-2 quotient has dim {} in degree 0; generic c = 3: Omega_0 {:?}, Omega_1 {:?}",
            o0.dims(),
            o1.dims(),
            l1.module.dim(0),
            g0,
            g1
        ),
    )
}

fn criterion_9() -> Outcome {
    let v = vacuum_module(&VoaPreset::virasoro(q(1)), 6).unwrap();
    let (dims, x, y, _) = omega_quotient_spec(&v, 1).unwrap();
    let zero_quotient = dims.iter().all(|&d| d == 0);
    let u = AnModuleSpec::new(VoaPreset::virasoro(q(1)), 1, x, y).unwrap();
    let ind = induce_ln(&u, 6).unwrap();
    outcome(
        v.dim(1) == 0 && zero_quotient && ind.module.total_dim() == 0,
        format!("V_Vir(1,0): W(1) = {}, Omega_1/Omega_0 dims {dims:?}, induced total dim {}", v.dim(1), ind.module.total_dim()),
    )
}

fn criterion_10() -> Outcome {
    use common::props;
    let suites: [(&str, fn()); 7] = [
        ("commutator", props::commutator_formula_holds),
        ("translation", props::translation_is_a_derivative_of_modes),
        ("grading", props::modes_respect_the_grading),
        ("zhu axioms", props::zhu_algebra_axioms_modulo_o_n),
        ("ideal", props::o_n_is_a_two_sided_ideal),
        ("omega", props::omega_properties_on_random_modules),
        ("degree bound", props::induced_modules_respect_degree_bounds),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, f) in suites {
        if catch_unwind(f).is_err() {
            failed.push(name);
        }
    }
    let t = start.elapsed();
    outcome(
        failed.is_empty() && t < TIME_10,
        format!("{} seeded suites, both presets; failing: {failed:?}; {t:.2?}", suites.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut unexpected = 0;
    for (i, f) in criteria.into_iter().enumerate() {
        let n = i + 1;
        let res = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| outcome(false, "panicked"));
        let known = KNOWN_UNATTAINABLE.contains(&n);
        let tag = match (res.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !res.pass && !known {
            unexpected += 1;
        }
        println!("criterion {n:>2}: {tag}: {}", res.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
