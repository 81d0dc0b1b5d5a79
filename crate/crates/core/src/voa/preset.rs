use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{q, qf, serde_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VoaKind {
    Heisenberg,
    Virasoro,
}

impl fmt::Display for VoaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VoaKind::Heisenberg => "heisenberg",
            VoaKind::Virasoro => "virasoro",
        })
    }
}

/// One of the two shipped vertex operator algebras.
///
/// `param` is the conformal shift `a` of `M_a(1)` (conformal vector
/// `1/2 a(-1)^2 1 + a a(-2) 1`) or the central charge `c` of `V_Vir(c, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VoaPreset {
    pub kind: VoaKind,
    #[serde(with = "serde_q")]
    pub param: Q,
}

/// Result of bracketing two generator modes: a multiple of a generator mode
/// plus a central scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub mode: Option<(i32, Q)>,
    pub central: Q,
}

impl VoaPreset {
    pub fn heisenberg(a: Q) -> Self {
        Self {
            kind: VoaKind::Heisenberg,
            param: a,
        }
    }

    pub fn virasoro(c: Q) -> Self {
        Self {
            kind: VoaKind::Virasoro,
            param: c,
        }
    }

    pub fn central_charge(&self) -> Q {
        match self.kind {
            VoaKind::Heisenberg => q(1) - q(12) * &self.param * &self.param,
            VoaKind::Virasoro => self.param.clone(),
        }
    }

    /// Weight of the generating state: `a(-1)1` has weight 1, `omega` weight 2.
    pub fn generator_weight(&self) -> u32 {
        match self.kind {
            VoaKind::Heisenberg => 1,
            VoaKind::Virasoro => 2,
        }
    }

    /// Smallest admissible part in a PBW monomial of the vacuum module.
    pub fn min_vacuum_part(&self) -> u32 {
        self.generator_weight()
    }

    /// Generator mode `a_p` of the generating state, as an index of `a(m)` or `L(m)`.
    pub fn state_mode(&self, p: i64) -> i32 {
        match self.kind {
            VoaKind::Heisenberg => p as i32,
            VoaKind::Virasoro => (p - 1) as i32,
        }
    }

    /// `k` such that the creation operator of a monomial part equals `a_{-k}`.
    pub fn part_to_state_index(&self, part: u32) -> i64 {
        match self.kind {
            VoaKind::Heisenberg => part as i64,
            VoaKind::Virasoro => part as i64 - 1,
        }
    }

    pub fn bracket(&self, x: i32, y: i32) -> Bracket {
        match self.kind {
            VoaKind::Heisenberg => Bracket {
                mode: None,
                central: if x + y == 0 { q(x as i64) } else { Q::zero() },
            },
            VoaKind::Virasoro => {
                let mode = if x != y { Some((x + y, q((x - y) as i64))) } else { None };
                let central = if x + y == 0 {
                    let x = x as i64;
                    qf(x * x * x - x, 12) * &self.param
                } else {
                    Q::zero()
                };
                Bracket { mode, central }
            }
        }
    }

    pub fn mode_name(&self, m: i32) -> String {
        match self.kind {
            VoaKind::Heisenberg => format!("a({m})"),
            VoaKind::Virasoro => format!("L({m})"),
        }
    }
}

impl fmt::Display for VoaPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VoaKind::Heisenberg => write!(f, "heisenberg(a={})", self.param),
            VoaKind::Virasoro => write!(f, "virasoro(c={})", self.param),
        }
    }
}
