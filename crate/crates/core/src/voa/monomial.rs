use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::preset::{VoaKind, VoaPreset};

/// A normal-ordered word of creation modes applied to a generating vector.
///
/// `parts` is sorted descending: `[k1, k2, ...]` stands for
/// `a(-k1) a(-k2) ... 1` or `L(-k1) L(-k2) ... 1`. The empty word is the vacuum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PbwMonomial {
    parts: Vec<u32>,
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.parts.is_empty()
    }

    /// Splits off the leftmost creation operator: `(k1, rest)`.
    pub fn split_first(&self) -> Option<(u32, PbwMonomial)> {
        self.parts.split_first().map(|(&k, rest)| {
            (
                k,
                PbwMonomial {
                    parts: rest.to_vec(),
                },
            )
        })
    }

    /// Creation modes as generator mode indices, leftmost first.
    pub fn modes(&self) -> Vec<i32> {
        self.parts.iter().map(|&k| -(k as i32)).collect()
    }

    pub fn display(&self, kind: VoaKind, vacuum: &str) -> String {
        let sym = match kind {
            VoaKind::Heisenberg => "a",
            VoaKind::Virasoro => "L",
        };
        let mut s: String = self.parts.iter().map(|k| format!("{sym}(-{k})")).collect();
        s.push_str(vacuum);
        s
    }
}

impl Ord for PbwMonomial {
    /// Graded-lexicographic: weight first, then the descending part lists lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(VoaKind::Virasoro, "|0>"))
    }
}

/// Partitions of `k` into parts `>= min_part`, descending parts, graded-lex order.
pub fn partitions_with_min(k: u32, min_part: u32) -> Vec<PbwMonomial> {
    fn rec(rem: u32, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<PbwMonomial>) {
        if rem == 0 {
            out.push(PbwMonomial { parts: cur.clone() });
            return;
        }
        let hi = rem.min(max);
        for p in min..=hi {
            cur.push(p);
            rec(rem - p, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if min_part == 0 {
        return out;
    }
    rec(k, k, min_part, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All canonical monomials of weight `k` of the vacuum module, in graded-lex order.
pub fn weight_basis(preset: &VoaPreset, k: u32) -> Vec<PbwMonomial> {
    partitions_with_min(k, preset.min_vacuum_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn heisenberg_weight_three() {
        let h = VoaPreset::heisenberg(q(0));
        assert_eq!(weight_basis(&h, 0), vec![PbwMonomial::vacuum()]);
        let b = weight_basis(&h, 3);
        assert_eq!(
            b,
            vec![
                PbwMonomial::new(vec![1, 1, 1]),
                PbwMonomial::new(vec![2, 1]),
                PbwMonomial::new(vec![3]),
            ]
        );
    }

    #[test]
    fn virasoro_weight_four() {
        let v = VoaPreset::virasoro(q(1));
        let b = weight_basis(&v, 4);
        assert_eq!(b, vec![PbwMonomial::new(vec![2, 2]), PbwMonomial::new(vec![4])]);
        assert!(weight_basis(&v, 1).is_empty());
    }

    #[test]
    fn counts_match_partition_numbers() {
        let h = VoaPreset::heisenberg(q(0));
        let p = crate::linalg::partition_numbers(12);
        for k in 0..=12u32 {
            assert_eq!(weight_basis(&h, k).len(), p[k as usize]);
        }
        // parts >= 2: p(k) - p(k-1)
        let v = VoaPreset::virasoro(q(1));
        for k in 1..=12u32 {
            assert_eq!(weight_basis(&v, k).len(), p[k as usize] - p[k as usize - 1]);
        }
    }
}
