//! Dimension-vector numerics for the Kronecker quiver with arrows `v0 → v1`.
//!
//! Vertex `v0` carries the `O(−1)` side and `v1` the `T_{P⁴}(−2)` side. With
//! this orientation the Ringel form is `⟨v, w⟩ = v0·w0 + v1·w1 − n·v0·w1`.

use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::chow::{FanoModel, KClass};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KroneckerModel {
    arrows: u32,
}

impl KroneckerModel {
    pub fn new(arrows: u32) -> Result<Self> {
        if arrows == 0 {
            return Err(Error::Invalid("a Kronecker quiver needs at least one arrow".into()));
        }
        Ok(Self { arrows })
    }

    pub fn arrows(&self) -> u32 {
        self.arrows
    }
}

impl Default for KroneckerModel {
    fn default() -> Self {
        Self { arrows: 5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector {
    pub a: i64,
    pub b: i64,
}

impl DimVector {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 0 || b < 0 {
            return Err(Error::OutOfRange(format!(
                "dimension vector ({a}, {b}) has a negative entry"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.a <= other.a && self.b <= other.b
    }
}

impl Add for DimVector {
    type Output = DimVector;
    fn add(self, rhs: DimVector) -> DimVector {
        DimVector {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl std::str::FromStr for DimVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("dimension vector `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Invalid(format!("dimension vector `{s}`")))
        };
        DimVector::new(parse(a)?, parse(b)?)
    }
}

pub fn euler_form(m: &KroneckerModel, v: &DimVector, w: &DimVector) -> i64 {
    v.a * w.a + v.b * w.b - m.arrows as i64 * v.a * w.b
}

/// `1 − ⟨v, v⟩`.
pub fn moduli_dim(m: &KroneckerModel, v: &DimVector) -> Result<i64> {
    if v.is_zero() {
        return Err(Error::Invalid("the zero dimension vector has no moduli".into()));
    }
    Ok(1 - euler_form(m, v, v))
}

/// `Θ(a, b) = 7b − 2a`, the stability function vanishing on `(7, 2)`.
pub fn theta(v: &DimVector) -> i64 {
    theta_for(&DimVector { a: 7, b: 2 }, v)
}

/// `Θ_v(w) = v.a·w.b − v.b·w.a`, the canonical stability function with `Θ_v(v) = 0`.
pub fn theta_for(v: &DimVector, w: &DimVector) -> i64 {
    v.a * w.b - v.b * w.a
}

/// Proper nonzero `w ≤ v` with `Θ_v(w) ≥ 0`, sorted by `(b, a)`.
pub fn destabilizer_candidates(v: &DimVector) -> Vec<DimVector> {
    let mut out = Vec::new();
    for b in 0..=v.b {
        for a in 0..=v.a {
            let w = DimVector { a, b };
            if !w.is_zero() && w != *v && theta_for(v, &w) >= 0 {
                out.push(w);
            }
        }
    }
    out
}

/// Rank and `c₁` of `K = ker(O⁷ ↠ E(2))` for `E = (−1, 4)`, together with
/// the class `7·O(−1) − 2·O(−2)` it should match.
pub fn kernel_ledger() -> (KClass, KClass) {
    let m = FanoModel::quadric();
    let e2 = KClass::rank2(&m, -1, 4).twist(2, &m);
    let k = KClass::trivial(7) - e2;
    let expected = KClass::line(&m, -1).scale(7) - KClass::line(&m, -2).scale(2);
    (k, expected)
}
