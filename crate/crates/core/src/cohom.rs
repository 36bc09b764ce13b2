//! Closed-form cohomology tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chow::{chi, FanoModel, KClass};
use crate::resolutions::spinor_class;
use crate::{to_integer, Error, Result};

/// Cohomology dimensions by degree. Degrees may be negative after shifts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GradedDim {
    dims: BTreeMap<i32, u64>,
}

impl GradedDim {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `ℂ^dim` placed in degree `degree`.
    pub fn concentrated(degree: i32, dim: u64) -> Self {
        let mut g = Self::zero();
        g.set(degree, dim);
        g
    }

    /// Entries listed from degree 0 upward.
    pub fn from_vec(v: &[u64]) -> Self {
        let mut g = Self::zero();
        for (i, d) in v.iter().enumerate() {
            g.set(i as i32, *d);
        }
        g
    }

    pub fn set(&mut self, degree: i32, dim: u64) {
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn get(&self, degree: i32) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .map(|(i, d)| if i % 2 == 0 { *d as i64 } else { -(*d as i64) })
            .sum()
    }

    /// `X[k]`, so `hⁱ(X[k]) = hⁱ⁺ᵏ(X)`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            dims: self.dims.iter().map(|(i, d)| (i - k, *d)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GradedDim) -> Self {
        let mut out = self.clone();
        for (i, d) in &other.dims {
            out.set(*i, out.get(*i) + d);
        }
        out
    }

    pub fn times(&self, m: u64) -> Self {
        Self {
            dims: self.dims.iter().filter(|_| m > 0).map(|(i, d)| (*i, d * m)).collect(),
        }
    }

    /// Dense vector for degrees `0..len`; entries outside are dropped.
    pub fn to_vec(&self, len: usize) -> Vec<u64> {
        (0..len as i32).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.dims.iter().map(|(i, d)| format!("h{i}={d}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `RΓ(Pⁿ, O(k))`.
pub fn h_pn_line(n: i64, k: i64) -> GradedDim {
    if k >= 0 {
        GradedDim::concentrated(0, binomial(n + k, n))
    } else if k < -n {
        GradedDim::concentrated(n as i32, binomial(-k - 1, n))
    } else {
        GradedDim::zero()
    }
}

/// `RΓ(Pⁿ, Ωᵖ(k))` by Bott's formula.
pub fn h_pn_omega(n: i64, p: i64, k: i64) -> Result<GradedDim> {
    if n < 1 || p < 0 || p > n {
        return Err(Error::OutOfRange(format!("Ω^{p} on P^{n}")));
    }
    let mut g = GradedDim::zero();
    if k == 0 {
        g.set(p as i32, 1);
    }
    if k > p {
        g.set(0, binomial(k + n - p, k) * binomial(k - 1, p));
    }
    if k < p - n {
        g.set(n as i32, binomial(-k + p, -k) * binomial(-k - 1, n - p));
    }
    Ok(g)
}

/// `RΓ(Q³, O(k))`; the quadric has no intermediate cohomology.
pub fn h_q3_line(k: i64) -> GradedDim {
    if k >= 0 {
        GradedDim::concentrated(0, binomial(k + 4, 4) - binomial(k + 2, 4))
    } else if k <= -3 {
        h_q3_line(-k - 3).shift(-3)
    } else {
        GradedDim::zero()
    }
}

/// Twists of the spinor bundle for which the table is pinned down.
pub const SPINOR_WINDOW: std::ops::RangeInclusive<i64> = -4..=4;

/// `RΓ(S(n))` for `n` in [`SPINOR_WINDOW`].
///
/// `S` is ACM, has no sections for `n ≤ 0`, and `h³(S(n)) = h⁰(S(−n−2))`
/// since `S^∨ = S(1)` and `ω = O(−3)`. Whatever survives carries `|χ|`.
pub fn rgamma_spinor_twist(n: i64) -> Result<GradedDim> {
    if !SPINOR_WINDOW.contains(&n) {
        return Err(Error::OutOfRange(format!("spinor twist {n} outside [-4, 4]")));
    }
    let m = FanoModel::quadric();
    let c = chi(&m, &spinor_class(&m).twist(n, &m));
    let c = to_integer(&c).ok_or_else(|| Error::NonIntegral(c.to_string()))?;
    let h0_allowed = n >= 1;
    let h3_allowed = -n - 2 >= 1;
    let g = match (h0_allowed, h3_allowed) {
        (true, false) if c >= 0 => GradedDim::concentrated(0, c as u64),
        (false, true) if c <= 0 => GradedDim::concentrated(3, (-c) as u64),
        (false, false) if c == 0 => GradedDim::zero(),
        _ => {
            return Err(Error::Invalid(format!(
                "spinor twist {n}: χ = {c} incompatible with vanishing"
            )))
        }
    };
    Ok(g)
}

/// `RΓ(Fl(5; 2, 1), 3L₁ − aL₂)` for `a ∈ [1, 5]`.
///
/// Serre duality with `ω = −2L₁ − 4L₂` turns this into `−5L₁ + (a−4)L₂`,
/// pushed down along the `P³`-bundle over `P⁴`. The relative twist
/// `m = a − 4` kills everything for `m ∈ [−3, −1]`, leaves `O(−5)` for
/// `m = 0` and `Ω(−3)` for `m = 1`. The answer is reindexed by `i ↦ 7 − i`.
pub fn flag_rgamma(a: i64) -> Result<GradedDim> {
    const DIM: i32 = 7;
    let m = a - 4;
    let dual = match m {
        -3..=-1 => GradedDim::zero(),
        0 => h_pn_line(4, -5),
        1 => h_pn_omega(4, 1, -3)?,
        _ => {
            return Err(Error::Unsupported(format!(
                "Fl(5;2,1) class 3L1 - {a}L2 outside a in [1, 5]"
            )))
        }
    };
    let mut g = GradedDim::zero();
    for j in dual.support() {
        g.set(DIM - j, dual.get(j));
    }
    Ok(g)
}

/// Euler characteristic of the class as a signed integer.
pub fn chi_integer(model: &FanoModel, k: &KClass) -> Result<i64> {
    let c = chi(model, k);
    to_integer(&c).ok_or_else(|| Error::NonIntegral(c.to_string()))
}
