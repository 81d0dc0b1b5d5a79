use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{q, serde_q, serde_qvec, Q};

/// A truncated q-series `q^leading * sum_i coeffs[i] q^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    #[serde(with = "serde_q")]
    pub leading_exponent: Q,
    #[serde(with = "serde_qvec")]
    pub coefficients: Vec<Q>,
}

impl QSeries {
    pub fn scaled(&self, k: &Q) -> QSeries {
        QSeries {
            leading_exponent: self.leading_exponent.clone(),
            coefficients: self.coefficients.iter().map(|c| c * k).collect(),
        }
    }
}

/// Coefficients of `prod_{n>=1} (1 - q^n)^{-1}` through `q^max`.
pub fn partition_qseries(max: usize) -> QSeries {
    let mut c = vec![Q::zero(); max + 1];
    c[0] = q(1);
    // multiply by 1/(1 - q^n) = 1 + q^n + q^{2n} + ...
    for n in 1..=max {
        for i in n..=max {
            let prev = c[i - n].clone();
            c[i] += prev;
        }
    }
    QSeries {
        leading_exponent: Q::zero(),
        coefficients: c,
    }
}

/// `p(0..=max)` as plain integers.
pub fn partition_numbers(max: usize) -> Vec<usize> {
    let mut c = vec![0usize; max + 1];
    c[0] = 1;
    for n in 1..=max {
        for i in n..=max {
            c[i] += c[i - n];
        }
    }
    c
}
