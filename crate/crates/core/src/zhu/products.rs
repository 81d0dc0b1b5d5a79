use crate::rational::{binom, Q};
use crate::voa::{VacuumModule, VoaElement};
use crate::{Error, Result};

fn homogeneous(u: &VoaElement) -> Result<i64> {
    match u.homogeneous_weight() {
        Some(w) => Ok(w as i64),
        None if u.is_zero() => Ok(0),
        None => Err(Error::Unsupported(
            "the circle product needs a homogeneous left factor".into(),
        )),
    }
}

/// `u o_n v = sum_{j=0}^{wt u + n} binom(wt u + n, j) u_{j-2n-2} v` for homogeneous `u`.
pub fn circ_n(vac: &VacuumModule, u: &VoaElement, v: &VoaElement, n: usize) -> Result<VoaElement> {
    let wt = homogeneous(u)?;
    let top = wt + n as i64;
    let mut out = VoaElement::zero();
    for j in 0..=top {
        let term = vac.mode_action(u, j - 2 * n as i64 - 2, v)?;
        out.add_assign(&term.scale(&binom(top, j)));
    }
    Ok(out)
}

/// `u *_n v = sum_{m=0}^{n} (-1)^m binom(m+n, n) sum_{j=0}^{wt u+n} binom(wt u+n, j) u_{j-n-m-1} v`,
/// extended linearly in `u` over its homogeneous components.
pub fn star_n(vac: &VacuumModule, u: &VoaElement, v: &VoaElement, n: usize) -> Result<VoaElement> {
    let n_i = n as i64;
    let mut out = VoaElement::zero();
    for (wt, uc) in u.components() {
        let top = wt as i64 + n_i;
        for m in 0..=n_i {
            let sign = if m % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
            let outer = sign * binom(m + n_i, n_i);
            for j in 0..=top {
                let c = &outer * binom(top, j);
                let term = vac.mode_action(&uc, j - n_i - m - 1, v)?;
                out.add_assign(&term.scale(&c));
            }
        }
    }
    Ok(out)
}

/// Weight bound of `u *_n v` or `u o_n v`: `wt u + wt v + 2n` (resp. `+ 2n + 1`).
pub fn star_weight_bound(u: &VoaElement, v: &VoaElement, n: usize) -> usize {
    u.max_weight().unwrap_or(0) as usize + v.max_weight().unwrap_or(0) as usize + 2 * n
}
