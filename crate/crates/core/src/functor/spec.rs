use serde::{Deserialize, Serialize};

use crate::linalg::{kernel, MatrixStrings, RationalMatrix};
use crate::rational::{q, Q};
use crate::voa::VoaPreset;
use crate::zhu::{defining_relation, PolyXY};
use crate::{Error, Result};

/// A finite-dimensional module over the level-`n` Zhu algebra, given by the
/// commuting actions `X`, `Y` of the generators `x`, `y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct AnModuleSpec {
    preset: VoaPreset,
    n: usize,
    x: RationalMatrix,
    y: RationalMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSpec {
    preset: VoaPreset,
    n: usize,
    x: MatrixStrings,
    /// May be omitted at level 0, where it is fixed by `x`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<MatrixStrings>,
}

impl TryFrom<RawSpec> for AnModuleSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let x = RationalMatrix::from_strings(&raw.x.0)?;
        match raw.y {
            Some(y) => AnModuleSpec::new(raw.preset, raw.n, x, RationalMatrix::from_strings(&y.0)?),
            None if raw.n == 0 => AnModuleSpec::level_zero(raw.preset, x),
            None => Err(Error::InvalidSpec("y is required above level 0".into())),
        }
    }
}

impl From<AnModuleSpec> for RawSpec {
    fn from(s: AnModuleSpec) -> Self {
        RawSpec {
            preset: s.preset,
            n: s.n,
            x: MatrixStrings::from(&s.x),
            y: Some(MatrixStrings::from(&s.y)),
        }
    }
}

/// How a module sits relative to the surjection onto the next lower level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    FactorsThroughLower,
    HasFactoringSubmodule { dim: usize },
    NoFactoringSubmodule,
}

impl AnModuleSpec {
    pub fn new(preset: VoaPreset, n: usize, x: RationalMatrix, y: RationalMatrix) -> Result<Self> {
        let spec = AnModuleSpec { preset, n, x, y };
        spec.validate()?;
        Ok(spec)
    }

    /// Level-0 module: `y` acts by `X^2 + 2X` (Virasoro) or `X^2` (Heisenberg).
    pub fn level_zero(preset: VoaPreset, x: RationalMatrix) -> Result<Self> {
        let (_, rel) = defining_relation(&preset, 0).expect("level 0 is always presented");
        // the relation is y - f(x); solve for y
        let f = rel[0].eval(&x, &RationalMatrix::zeros(x.rows(), x.cols()))?;
        let y = RationalMatrix::zeros(x.rows(), x.cols()).sub(&f)?;
        AnModuleSpec::new(preset, 0, x, y)
    }

    /// Virasoro level-1 family: `X` the Jordan block of size `k+1` at 1, `Y = X^2 + 6X - 4`.
    pub fn virasoro_factoring_family(c: Q, k: usize) -> Result<Self> {
        let x = RationalMatrix::jordan_block(&q(1), k + 1);
        let y = x.poly(&[q(-4), q(6), q(1)])?;
        AnModuleSpec::new(VoaPreset::virasoro(c), 1, x, y)
    }

    /// Heisenberg level-1 module with `X` the Jordan block at `λ` and `Y = X^2 + 2`.
    pub fn heisenberg_u1(a: Q, lambda: Q, k: usize) -> Result<Self> {
        let x = RationalMatrix::jordan_block(&lambda, k);
        let y = x.poly(&[q(2), q(0), q(1)])?;
        AnModuleSpec::new(VoaPreset::heisenberg(a), 1, x, y)
    }

    /// Heisenberg level-1 module factoring through level 0: `Y = X^2`.
    pub fn heisenberg_u0(a: Q, lambda: Q, k: usize) -> Result<Self> {
        let x = RationalMatrix::jordan_block(&lambda, k);
        let y = x.pow(2)?;
        AnModuleSpec::new(VoaPreset::heisenberg(a), 1, x, y)
    }

    pub fn preset(&self) -> &VoaPreset {
        &self.preset
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &RationalMatrix {
        &self.x
    }

    pub fn y(&self) -> &RationalMatrix {
        &self.y
    }

    fn validate(&self) -> Result<()> {
        let d = self.x.rows();
        for m in [&self.x, &self.y] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::InvalidSpec(format!(
                    "invariant X, Y square of equal size fails: X is {d}x{}, got {}x{}",
                    self.x.cols(),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if self.x.mul(&self.y)? != self.y.mul(&self.x)? {
            return Err(Error::InvalidSpec("invariant XY = YX fails: X and Y do not commute".into()));
        }
        let (name, rel) = defining_relation(&self.preset, self.n).ok_or_else(|| {
            Error::Unsupported(format!("no presentation known at level {}", self.n))
        })?;
        if !PolyXY::eval_product(&rel, &self.x, &self.y)?.is_zero() {
            return Err(Error::InvalidSpec(format!("relation {name} does not vanish on (X, Y)")));
        }
        Ok(())
    }

    /// The action of the element generating the kernel of the surjection onto level `n - 1`.
    pub fn lower_relation_action(&self) -> Result<Option<RationalMatrix>> {
        if self.n == 0 {
            return Ok(None);
        }
        let (_, rel) = defining_relation(&self.preset, self.n - 1).ok_or_else(|| {
            Error::Unsupported(format!("no presentation known at level {}", self.n - 1))
        })?;
        Ok(Some(PolyXY::eval_product(&rel, &self.x, &self.y)?))
    }
}

/// The largest submodule on which the lower-level relation acts by zero decides the class.
pub fn classify_an_module(u: &AnModuleSpec) -> Result<Classification> {
    let Some(k) = u.lower_relation_action()? else {
        return Ok(Classification::NoFactoringSubmodule);
    };
    let dim = kernel(&k).dim();
    Ok(if dim == u.dim() {
        Classification::FactorsThroughLower
    } else if dim > 0 {
        Classification::HasFactoringSubmodule { dim }
    } else {
        Classification::NoFactoringSubmodule
    })
}
