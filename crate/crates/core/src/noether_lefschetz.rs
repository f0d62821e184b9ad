//! Discriminants and Noether-Lefschetz numbers of the STU family, whose
//! fiberwise Picard lattice is the hyperbolic plane `U`.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Result, SeriesError};
use crate::modular;
use crate::rat::{self, Rat};

/// The lattice `U` with Gram matrix `[[0,1],[1,0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StuLattice {
    pub gram: [[i64; 2]; 2],
}

impl Default for StuLattice {
    fn default() -> Self {
        StuLattice { gram: [[0, 1], [1, 0]] }
    }
}

impl StuLattice {
    /// Gram matrix of the lattice spanned by a class of norm `2h−2` and the
    /// two lattice generators, with pairings `d1`, `d2` against them.
    pub fn extended_gram(&self, h: i64, d1: i64, d2: i64) -> [[i64; 3]; 3] {
        let g = self.gram;
        [[2 * h - 2, d1, d2], [d1, g[0][0], g[0][1]], [d2, g[1][0], g[1][1]]]
    }

    /// `(−1)^r det` of the extended Gram matrix, `r = 2`.
    pub fn discriminant(&self, h: i64, d1: i64, d2: i64) -> i64 {
        det3(&self.extended_gram(h, d1, d2))
    }
}

pub fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `Δ(h, d1, d2) = 2·d1·d2 + 2 − 2h`.
pub fn discriminant(h: i64, d1: i64, d2: i64) -> i64 {
    StuLattice::default().discriminant(h, d1, d2)
}

/// Coefficient of `qⁿ` in `E₁₀ = E₄E₆ = 1 − 264 Σ σ₉(n) qⁿ`.
pub fn e10_coefficient(n: i64) -> Rat {
    match n {
        n if n < 0 => Rat::zero(),
        0 => rat::one(),
        n => rat::big(modular::sigma(9, n as u64) * -264),
    }
}

/// `NL_{h,(d1,d2)} = −4·E₄E₆[Δ/2]`, zero for negative discriminant.
pub fn nl_number(h: i64, d1: i64, d2: i64) -> Rat {
    let delta = discriminant(h, d1, d2);
    if delta < 0 {
        return Rat::zero();
    }
    e10_coefficient(delta / 2) * rat::int(-4)
}

/// Memoized refined numbers `NL_{m,h,(d1,d2)}` (classes of divisibility m).
#[derive(Debug, Default)]
pub struct RefinedNl {
    memo: HashMap<(i64, i64, i64, i64), Rat>,
}

impl RefinedNl {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, m: i64, h: i64, d1: i64, d2: i64) -> Result<Rat> {
        if d1 == 0 && d2 == 0 {
            return Err(SeriesError::InvalidArgument("refined numbers need (d1, d2) != (0, 0)".into()));
        }
        if m < 1 {
            return Err(SeriesError::InvalidArgument(format!("divisibility m = {m} must be positive")));
        }
        if let Some(v) = self.memo.get(&(m, h, d1, d2)) {
            return Ok(v.clone());
        }
        let v = self.compute(m, h, d1, d2)?;
        self.memo.insert((m, h, d1, d2), v.clone());
        Ok(v)
    }

    fn compute(&mut self, m: i64, h: i64, d1: i64, d2: i64) -> Result<Rat> {
        let g = d1.gcd(&d2);
        if g % m != 0 {
            return Ok(Rat::zero());
        }
        let delta = discriminant(h, d1, d2);
        if delta < 0 {
            return Ok(Rat::zero());
        }
        if delta == 0 {
            return Ok(if m == g { nl_number(h, d1, d2) } else { Rat::zero() });
        }
        if m >= 2 {
            if (h - 1) % (m * m) != 0 {
                return Ok(Rat::zero());
            }
            return self.get(1, (h - 1) / (m * m) + 1, d1 / m, d2 / m);
        }
        let mut v = nl_number(h, d1, d2);
        for k in 2..=g {
            if g % k == 0 {
                v -= self.get(k, h, d1, d2)?;
            }
        }
        Ok(v)
    }
}

/// One-off refined number; use [`RefinedNl`] when evaluating many keys.
pub fn nl_refined(m: i64, h: i64, d1: i64, d2: i64) -> Result<Rat> {
    RefinedNl::new().get(m, h, d1, d2)
}
