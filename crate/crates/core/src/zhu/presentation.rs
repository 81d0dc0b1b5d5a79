use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::{GeneratorKind, OnMembership, WitnessTerm, ZhuAlgebra, ZhuLevel};
use crate::linalg::{solve, RationalMatrix};
use crate::rational::{fmt_q, q, qf, Q};
use crate::voa::{generator_state, VoaElement, VoaKind, VoaPreset};
use crate::{Error, Result};

/// A commutative polynomial `sum c x^a y^b` in the two Zhu generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyXY(pub Vec<(Q, u32, u32)>);

impl PolyXY {
    pub fn x() -> Self {
        PolyXY(vec![(Q::one(), 1, 0)])
    }

    /// `y - x^2 + c1 x + c0`
    pub fn y_minus_x2(c1: i64, c0: i64) -> Self {
        PolyXY(vec![
            (Q::one(), 0, 1),
            (-Q::one(), 2, 0),
            (q(c1), 1, 0),
            (q(c0), 0, 0),
        ])
    }

    /// Evaluates on a pair of commuting square matrices.
    pub fn eval(&self, x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::zeros(x.rows(), x.cols());
        for (c, a, b) in &self.0 {
            let term = x.pow(*a as usize)?.mul(&y.pow(*b as usize)?)?;
            acc.add_scaled(&term, c);
        }
        Ok(acc)
    }

    /// Evaluates a product of factors.
    pub fn eval_product(factors: &[PolyXY], x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::identity(x.rows());
        for f in factors {
            acc = acc.mul(&f.eval(x, y)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, a, b) in &self.0 {
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            match a {
                0 => {}
                1 => mono.push('x'),
                _ => mono.push_str(&format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => mono.push('y'),
                _ => mono.push_str(&format!("y^{b}")),
            }
            let mag = c.abs();
            let body = if mono.is_empty() {
                format!("{mag}")
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}{mono}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            write!(f, "{body}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The second Zhu generator: `[L(-2)^2 1]` or `[a(-1)^2 1]`.
pub fn second_generator(preset: &VoaPreset) -> VoaElement {
    let g = preset.generator_weight();
    VoaElement::from_parts(&[g, g])
}

/// The defining relation of the level-`n` algebra as a product of factors, when known.
pub fn defining_relation(preset: &VoaPreset, n: usize) -> Option<(String, Vec<PolyXY>)> {
    let (name, factors) = match (preset.kind, n) {
        (VoaKind::Virasoro, 0) => ("q0", vec![PolyXY::y_minus_x2(-2, 0)]),
        (VoaKind::Virasoro, 1) => (
            "q0*q1",
            vec![PolyXY::y_minus_x2(-2, 0), PolyXY::y_minus_x2(-6, 4)],
        ),
        (VoaKind::Heisenberg, 0) => ("p0", vec![PolyXY::y_minus_x2(0, 0)]),
        (VoaKind::Heisenberg, 1) => (
            "p0*p1",
            vec![PolyXY::y_minus_x2(0, 0), PolyXY::y_minus_x2(0, -2)],
        ),
        _ => return None,
    };
    Some((name.to_string(), factors))
}

/// One link of a certificate chain: `element` lies in the truncated `O_n` span via `witness`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub claim: String,
    pub element: String,
    pub witness: Vec<WitnessTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub polynomial: String,
    pub certified: bool,
    /// Weight cutoff of the `O_n` span the certificate lives in.
    pub cutoff_used: usize,
    /// True when `cutoff_used` equals the cutoff of the presentation.
    pub within_cutoff: bool,
    pub steps: Vec<CertificateStep>,
    /// Nonzero reduced class when the relation could not be certified.
    pub residual: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Letter {
    X,
    Y,
}

/// Evaluates polynomials in `x`, `y` with `*_n` inside one window.
///
/// Polynomials are expanded into ordered words in `x` and `y`; each word is
/// multiplied out left to right. When the next product would leave the
/// window, the partial product is replaced by its reduced class and the
/// congruence is recorded as a certificate step (valid because `O_n` is a
/// two-sided ideal).
pub struct RelationEvaluator<'a> {
    alg: &'a ZhuAlgebra,
    x: VoaElement,
    y: VoaElement,
    prefixes: std::collections::HashMap<Vec<Letter>, VoaElement>,
    pub steps: Vec<CertificateStep>,
}

impl<'a> RelationEvaluator<'a> {
    pub fn new(alg: &'a ZhuAlgebra) -> Self {
        let preset = &alg.level().preset;
        Self {
            alg,
            x: generator_state(preset),
            y: second_generator(preset),
            prefixes: std::collections::HashMap::new(),
            steps: Vec::new(),
        }
    }

    fn kind(&self) -> VoaKind {
        self.alg.level().preset.kind
    }

    /// Replaces `v` by its reduced class, recording the certificate of `v - reduce(v)`.
    pub fn reduce_certified(&mut self, v: &VoaElement, what: &str) -> Result<VoaElement> {
        let r = self.alg.reduce(v)?;
        let diff = v.sub(&r);
        if diff.is_zero() {
            return Ok(r);
        }
        match self.alg.membership(&diff)? {
            OnMembership::Inside(witness) => {
                self.steps.push(CertificateStep {
                    claim: format!("{what} is congruent to its reduced representative"),
                    element: diff.to_text(self.kind()),
                    witness,
                });
                Ok(r)
            }
            OnMembership::NotInWindow(_) => Err(Error::Unsupported(
                "reduction residual left the span".into(),
            )),
        }
    }

    /// `a *_n b`, replacing `a` by its reduced class first if the product does not fit.
    pub fn times(&mut self, a: &VoaElement, b: &VoaElement, what: &str) -> Result<VoaElement> {
        if self.alg.fits(a, b) {
            return self.alg.star(a, b);
        }
        let ra = self.reduce_certified(a, what)?;
        self.alg.star(&ra, b)
    }

    fn word_text(word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|l| if *l == Letter::X { "x" } else { "y" })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn word(&mut self, word: &[Letter]) -> Result<VoaElement> {
        if word.is_empty() {
            return Ok(VoaElement::vacuum());
        }
        if let Some(v) = self.prefixes.get(word) {
            return Ok(v.clone());
        }
        let (last, init) = word.split_last().expect("nonempty");
        let head = self.word(init)?;
        let g = if *last == Letter::X { self.x.clone() } else { self.y.clone() };
        let v = if init.is_empty() {
            g
        } else {
            self.times(&head, &g, &Self::word_text(init))?
        };
        self.prefixes.insert(word.to_vec(), v.clone());
        Ok(v)
    }

    /// `x^a y^b` as the word `x*...*x*y*...*y`.
    pub fn monomial(&mut self, a: u32, b: u32) -> Result<VoaElement> {
        let w: Vec<Letter> = std::iter::repeat_n(Letter::X, a as usize)
            .chain(std::iter::repeat_n(Letter::Y, b as usize))
            .collect();
        self.word(&w)
    }

    pub fn poly(&mut self, p: &PolyXY) -> Result<VoaElement> {
        self.product(std::slice::from_ref(p))
    }

    /// The product of the factors, expanded into ordered words by distributivity.
    pub fn product(&mut self, factors: &[PolyXY]) -> Result<VoaElement> {
        let mut words: Vec<(Q, Vec<Letter>)> = vec![(Q::one(), Vec::new())];
        for f in factors {
            let mut next = Vec::new();
            for (c, w) in &words {
                for (c2, a, b) in &f.0 {
                    if c2.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.extend(std::iter::repeat_n(Letter::X, *a as usize));
                    w2.extend(std::iter::repeat_n(Letter::Y, *b as usize));
                    next.push((c * c2, w2));
                }
            }
            words = next;
        }
        let mut out = VoaElement::zero();
        for (c, w) in words {
            out.add_assign(&self.word(&w)?.scale(&c));
        }
        Ok(out)
    }

    /// Certifies that `value` lies in the span and wraps the chain into a report.
    pub fn finish(mut self, name: &str, polynomial: String, value: &VoaElement, within: usize) -> Result<RelationCheck> {
        let kind = self.kind();
        let cutoff_used = self.alg.level().cutoff;
        Ok(match self.alg.membership(value)? {
            OnMembership::Inside(witness) => {
                self.steps.push(CertificateStep {
                    claim: format!("{name} evaluates into O_n"),
                    element: value.to_text(kind),
                    witness,
                });
                RelationCheck {
                    name: name.to_string(),
                    polynomial,
                    certified: true,
                    cutoff_used,
                    within_cutoff: cutoff_used == within,
                    steps: self.steps,
                    residual: None,
                }
            }
            OnMembership::NotInWindow(res) => RelationCheck {
                name: name.to_string(),
                polynomial,
                certified: false,
                cutoff_used,
                within_cutoff: cutoff_used == within,
                steps: self.steps,
                residual: Some(res.to_text(kind)),
            },
        })
    }
}

fn factors_text(factors: &[PolyXY]) -> String {
    factors.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*")
}

/// How far above the presentation cutoff a relation check may raise the window.
pub const MAX_RELATION_ESCALATION: usize = 6;

/// Runs `check` at the algebra's cutoff, and at successively larger cutoffs
/// while the evaluation does not fit the window.
fn with_escalation(
    alg: &ZhuAlgebra,
    check: impl Fn(&ZhuAlgebra, usize) -> Result<RelationCheck>,
) -> Result<RelationCheck> {
    let base = alg.level().cutoff;
    match check(alg, base) {
        Err(Error::TruncationExceeded { .. }) => {}
        other => return other,
    }
    let mut last = None;
    for w in base + 1..=base + MAX_RELATION_ESCALATION {
        let level = ZhuLevel::new(alg.level().preset.clone(), alg.level().n, w)?;
        let bigger = ZhuAlgebra::new(level)?;
        match check(&bigger, base) {
            Err(e @ Error::TruncationExceeded { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("escalation ran at least once"))
}

/// Checks the defining relation of the level, if one is known for the preset.
pub fn check_defining_relation(alg: &ZhuAlgebra) -> Result<Option<RelationCheck>> {
    let level = alg.level();
    let Some((name, factors)) = defining_relation(&level.preset, level.n) else {
        return Ok(None);
    };
    with_escalation(alg, |a, base| {
        let mut ev = RelationEvaluator::new(a);
        let value = ev.product(&factors)?;
        ev.finish(&name, factors_text(&factors), &value, base)
    })
    .map(Some)
}

/// For the Heisenberg algebra at level 1: `e = 1/2 (y - x*x)` satisfies `e*e = e`.
pub fn check_idempotent(alg: &ZhuAlgebra) -> Result<Option<RelationCheck>> {
    let level = alg.level();
    if level.preset.kind != VoaKind::Heisenberg || level.n != 1 {
        return Ok(None);
    }
    let e_poly = PolyXY(vec![(qf(1, 2), 0, 1), (qf(-1, 2), 2, 0)]);
    with_escalation(alg, |a, base| {
        let mut ev = RelationEvaluator::new(a);
        let sq = ev.product(&[e_poly.clone(), e_poly.clone()])?;
        let e = ev.poly(&e_poly)?;
        let value = sq.sub(&e);
        ev.finish("e*e - e", format!("e*e - e, e = {e_poly}"), &value, base)
    })
    .map(Some)
}

/// Expression of a class as a polynomial in `x`, `y` found by the completeness check.
fn solve_in_monomials(
    columns: &[(u32, u32, Vec<Q>)],
    target: &[Q],
) -> Result<Option<PolyXY>> {
    if columns.is_empty() {
        return Ok(target.iter().all(Zero::is_zero).then(|| PolyXY(Vec::new())));
    }
    let cols: Vec<Vec<Q>> = columns.iter().map(|c| c.2.clone()).collect();
    let m = RationalMatrix::from_columns(target.len(), &cols);
    Ok(solve(&m, target)?.map(|sol| {
        PolyXY(
            sol.into_iter()
                .zip(columns)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, (a, b, _))| (c, *a, *b))
                .collect(),
        )
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentativeInfo {
    pub label: String,
    pub weight: u32,
    /// The class as a polynomial in `x`, `y` when the completeness check found one.
    pub polynomial: Option<String>,
}

/// Truncated presentation of `A_n(V)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZhuPresentation {
    pub level: ZhuLevel,
    pub generator_count: usize,
    /// `generators[i]` is the `O_n` spanning element that witness index `i` refers to.
    pub generators: Vec<String>,
    pub span_dim: usize,
    pub x: String,
    pub y: String,
    pub representatives: Vec<RepresentativeInfo>,
    /// `table[i][j]`: coordinates of `r_i * r_j` over the representatives, when the product fits the window.
    pub table: Vec<Vec<Option<Vec<String>>>>,
    pub relations: Vec<RelationCheck>,
    pub generators_complete: bool,
    pub stabilized: bool,
    pub stabilization_note: String,
}

fn rep_elements(alg: &ZhuAlgebra) -> Vec<VoaElement> {
    alg.representatives()
        .iter()
        .map(|m| VoaElement::monomial(m.clone()))
        .collect()
}

fn product_table(alg: &ZhuAlgebra) -> Result<Vec<Vec<Option<Vec<Q>>>>> {
    let reps = rep_elements(alg);
    let mut table = Vec::with_capacity(reps.len());
    for a in &reps {
        let mut row = Vec::with_capacity(reps.len());
        for b in &reps {
            row.push(if alg.fits(a, b) {
                Some(alg.coordinates(&alg.star(a, b)?)?)
            } else {
                None
            });
        }
        table.push(row);
    }
    Ok(table)
}

/// Representatives up to this weight must be polynomials in `x`, `y` for the
/// generator check to pass; above it the window is too small to form the products.
pub fn core_weight(level: &ZhuLevel) -> usize {
    level.cutoff.saturating_sub(2 * level.n + 2)
}

/// Expresses every representative through `x`, `y`; returns the expressions and whether all were found.
fn polynomial_expressions(alg: &ZhuAlgebra) -> Result<(Vec<Option<PolyXY>>, bool)> {
    let preset = &alg.level().preset;
    let gw = preset.generator_weight();
    let cutoff = alg.level().cutoff as u32;
    let mut cols = Vec::new();
    for b in 0..=cutoff / (2 * gw) {
        for a in 0..=(cutoff - b * 2 * gw) / gw {
            let mut ev = RelationEvaluator::new(alg);
            match ev.monomial(a, b) {
                Ok(v) => cols.push((a, b, alg.coordinates(&v)?)),
                Err(Error::TruncationExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    cols.sort_by_key(|(a, b, _)| (a * gw + 2 * b * gw, *b));
    let k = alg.representatives().len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = vec![Q::zero(); k];
        e[i] = Q::one();
        out.push(solve_in_monomials(&cols, &e)?);
    }
    let core = core_weight(alg.level());
    let complete = out
        .iter()
        .zip(alg.representatives())
        .all(|(p, m)| p.is_some() || m.weight() as usize > core);
    Ok((out, complete))
}

fn generator_label(g: &GeneratorKind, kind: VoaKind, n: usize) -> String {
    match g {
        GeneratorKind::Circ { u, v } => format!("{} o_{n} {}", u.display(kind, "|0>"), v.display(kind, "|0>")),
        GeneratorKind::Translate { v } => format!("(L(-1)+L(0)) {}", v.display(kind, "|0>")),
    }
}

/// Builds the truncated presentation at `level`, including the stability comparison against `cutoff - 1`.
pub fn an_presentation(level: &ZhuLevel) -> Result<ZhuPresentation> {
    let alg = ZhuAlgebra::new(level.clone())?;
    let kind = level.preset.kind;
    let (exprs, complete) = polynomial_expressions(&alg)?;
    let representatives = alg
        .representatives()
        .iter()
        .zip(&exprs)
        .map(|(m, p)| RepresentativeInfo {
            label: m.display(kind, "|0>"),
            weight: m.weight(),
            polynomial: p.as_ref().map(ToString::to_string),
        })
        .collect();
    let table = product_table(&alg)?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| c.map(|v| v.iter().map(fmt_q).collect()))
                .collect()
        })
        .collect();
    let mut relations = Vec::new();
    if let Some(r) = check_defining_relation(&alg)? {
        relations.push(r);
    }
    if let Some(r) = check_idempotent(&alg)? {
        relations.push(r);
    }
    let (stabilized, stabilization_note) = stability(&alg)?;
    Ok(ZhuPresentation {
        level: level.clone(),
        generator_count: alg.generators().len(),
        generators: alg.generators().iter().map(|g| generator_label(&g.kind, kind, level.n)).collect(),
        span_dim: alg.span_dim(),
        x: generator_state(&level.preset).to_text(kind),
        y: second_generator(&level.preset).to_text(kind),
        representatives,
        table,
        relations,
        generators_complete: complete,
        stabilized,
        stabilization_note,
    })
}

/// Compares the run at `cutoff` with the run at `cutoff - 1` on everything the smaller window can see.
pub fn stability(alg: &ZhuAlgebra) -> Result<(bool, String)> {
    let level = alg.level();
    let smaller = level.cutoff - 1;
    if smaller < 2 * level.n + 2 {
        return Ok((false, format!("cutoff {smaller} is below the minimum window")));
    }
    let small = ZhuAlgebra::new(ZhuLevel::new(level.preset.clone(), level.n, smaller)?)?;
    let big_reps: Vec<_> = alg
        .representatives()
        .iter()
        .filter(|m| m.weight() as usize <= smaller)
        .cloned()
        .collect();
    if big_reps != small.representatives() {
        return Ok((
            false,
            format!(
                "representatives of weight <= {smaller} differ between cutoffs {smaller} and {}",
                level.cutoff
            ),
        ));
    }
    let reps = rep_elements(&small);
    for a in &reps {
        for b in &reps {
            if !small.fits(a, b) {
                continue;
            }
            let p_small = small.reduce(&small.star(a, b)?)?;
            let p_big = alg.reduce(&alg.star(a, b)?)?;
            if p_small != p_big {
                return Ok((
                    false,
                    format!("product table differs between cutoffs {smaller} and {}", level.cutoff),
                ));
            }
        }
    }
    Ok((
        true,
        format!(
            "representatives and products agree with cutoff {smaller}; stability is evidence, not proof"
        ),
    ))
}
