//! Numerical Chow ring of a Picard-rank-one Fano threefold and
//! Hirzebruch–Riemann–Roch on it.
//!
//! Classes are written in the basis `(1, H, ℓ, pt)` with `H² = deg·ℓ`,
//! `H·ℓ = pt` and `H³ = deg·pt`.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rational, serde_rational_array};
use crate::{int, to_integer, Error, Rational, Result};

/// Numerical model of a Fano threefold with Picard rank one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanoModel {
    index: u32,
    degree: i64,
}

impl FanoModel {
    pub fn new(index: u32, degree: i64) -> Result<Self> {
        if !(1..=4).contains(&index) {
            return Err(Error::InvalidModel(format!("index {index} outside 1..=4")));
        }
        if degree < 1 {
            return Err(Error::InvalidModel(format!("degree {degree} must be positive")));
        }
        if 24 % index != 0 {
            return Err(Error::InvalidModel(format!("24 is not divisible by index {index}")));
        }
        if index == 1 && degree % 2 != 0 {
            return Err(Error::InvalidModel(format!("index-one model with odd degree {degree}")));
        }
        Ok(Self { index, degree })
    }

    /// The quadric threefold: index 3, degree 2.
    pub fn quadric() -> Self {
        Self { index: 3, degree: 2 }
    }

    /// Index-one model of genus `g`, so `(-K)³ = 2g - 2`.
    pub fn index_one(genus: i64) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidModel(format!("genus {genus} < 2")));
        }
        Self::new(1, 2 * genus - 2)
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Genus `deg/2 + 1`, defined for index one only.
    pub fn genus(&self) -> Option<i64> {
        (self.index == 1).then_some(self.degree / 2 + 1)
    }

    /// `H·c₂(X)` in point units, forced by `c₁·c₂ = 24`.
    pub fn c2_pairing(&self) -> i64 {
        24 / self.index as i64
    }

    pub fn todd(&self) -> NumClass {
        todd(self)
    }
}

/// A numerical cycle class `n0·1 + n1·H + n2·ℓ + n3·pt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumClass(#[serde(with = "serde_rational_array")] pub [Rational; 4]);

impl NumClass {
    pub fn new(n0: Rational, n1: Rational, n2: Rational, n3: Rational) -> Self {
        Self([n0, n1, n2, n3])
    }

    pub fn zero() -> Self {
        Self([Rational::zero(); 4])
    }

    pub fn one() -> Self {
        Self([Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn component(&self, i: usize) -> Rational {
        self.0[i]
    }

    /// Graded product truncated above degree 3.
    pub fn mul(&self, other: &NumClass, model: &FanoModel) -> NumClass {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = other.0;
        let deg = int(model.degree);
        NumClass([
            a0 * b0,
            a0 * b1 + a1 * b0,
            a0 * b2 + a2 * b0 + deg * a1 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }

    pub fn scale(&self, s: Rational) -> NumClass {
        NumClass(self.0.map(|c| c * s))
    }

    /// `exp(nH)` truncated above degree 3.
    pub fn exp_h(n: i64, model: &FanoModel) -> NumClass {
        let n = int(n);
        let deg = int(model.degree);
        NumClass([Rational::one(), n, n * n * deg / int(2), n * n * n * deg / int(6)])
    }
}

impl Add for NumClass {
    type Output = NumClass;
    fn add(self, rhs: NumClass) -> NumClass {
        NumClass(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for NumClass {
    type Output = NumClass;
    fn sub(self, rhs: NumClass) -> NumClass {
        NumClass(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass(self.0.map(|c| -c))
    }
}

/// Todd class `(1, i/2, (i²·deg + 24/i)/12, 1)`.
pub fn todd(model: &FanoModel) -> NumClass {
    let i = int(model.index as i64);
    let deg = int(model.degree);
    NumClass([
        Rational::one(),
        i / int(2),
        (i * i * deg + int(model.c2_pairing())) / int(12),
        Rational::one(),
    ])
}

/// A K-theory class, stored as its Chern character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KClass {
    pub ch: NumClass,
}

/// Chern data `(rank, c₁, c₂, c₃)` in `(1, H, ℓ, pt)` units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    #[serde(with = "crate::rational::serde_rational")]
    pub rank: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c1: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c2: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c3: Rational,
}

impl KClass {
    pub fn from_ch(ch: NumClass) -> Self {
        Self { ch }
    }

    pub fn zero() -> Self {
        Self { ch: NumClass::zero() }
    }

    /// Trivial bundle of rank `r`.
    pub fn trivial(r: i64) -> Self {
        Self {
            ch: NumClass::one().scale(int(r)),
        }
    }

    /// `O(n)`.
    pub fn line(model: &FanoModel, n: i64) -> Self {
        Self {
            ch: NumClass::exp_h(n, model),
        }
    }

    /// Rank-2 class with `c₁ = e1·H`, `c₂ = e2·ℓ`, `c₃ = 0`.
    pub fn rank2(model: &FanoModel, e1: i64, e2: i64) -> Self {
        let deg = int(model.degree);
        let (e1, e2) = (int(e1), int(e2));
        Self {
            ch: NumClass([
                int(2),
                e1,
                (e1 * e1 * deg - int(2) * e2) / int(2),
                (e1 * e1 * e1 * deg - int(3) * e1 * e2) / int(6),
            ]),
        }
    }

    pub fn rank(&self) -> Rational {
        self.ch.0[0]
    }

    /// Chern classes recovered by Newton's identities.
    pub fn chern(&self, model: &FanoModel) -> ChernData {
        let deg = int(model.degree);
        let [r, ch1, ch2, ch3] = self.ch.0;
        let c1 = ch1;
        // c1² in ℓ-units is deg·c1², c1³ in pt-units is deg·c1³, c1·c2 is c1·c2.
        let c2 = (deg * c1 * c1 - int(2) * ch2) / int(2);
        let c3 = (int(6) * ch3 - deg * c1 * c1 * c1 + int(3) * c1 * c2) / int(3);
        ChernData { rank: r, c1, c2, c3 }
    }

    /// `(e1, e2)` when this is an integral rank-2 class with `c₃ = 0`.
    pub fn rank2_chern(&self, model: &FanoModel) -> Option<(i64, i64)> {
        let c = self.chern(model);
        if c.rank != int(2) || !c.c3.is_zero() {
            return None;
        }
        Some((to_integer(&c.c1)?, to_integer(&c.c2)?))
    }

    pub fn dual(&self) -> Self {
        let [a, b, c, d] = self.ch.0;
        Self {
            ch: NumClass([a, -b, c, -d]),
        }
    }

    pub fn tensor(&self, other: &KClass, model: &FanoModel) -> Self {
        Self {
            ch: self.ch.mul(&other.ch, model),
        }
    }

    pub fn twist(&self, n: i64, model: &FanoModel) -> Self {
        Self {
            ch: self.ch.mul(&NumClass::exp_h(n, model), model),
        }
    }

    pub fn scale(&self, m: i64) -> Self {
        Self {
            ch: self.ch.scale(int(m)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ch == NumClass::zero()
    }

    pub fn chi(&self, model: &FanoModel) -> Rational {
        chi(model, self)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.ch.0.iter().map(fmt_rational).collect();
        format!("ch=({})", parts.join(", "))
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, rhs: KClass) -> KClass {
        KClass { ch: self.ch + rhs.ch }
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, rhs: KClass) -> KClass {
        KClass { ch: self.ch - rhs.ch }
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass { ch: -self.ch }
    }
}

/// `∫ ch(k)·td(X)`.
pub fn chi(model: &FanoModel, k: &KClass) -> Rational {
    k.ch.mul(&todd(model), model).0[3]
}

pub fn twist(k: &KClass, n: i64, model: &FanoModel) -> KClass {
    k.twist(n, model)
}

pub fn dual(k: &KClass) -> KClass {
    k.dual()
}

pub fn tensor(a: &KClass, b: &KClass, model: &FanoModel) -> KClass {
    a.tensor(b, model)
}

/// Riemann–Roch for a rank-2 bundle on the quadric threefold, as a polynomial
/// in `(c₁, c₂)`.
pub fn chi_rr_q3_closed_form(e1: i64, e2: i64) -> Rational {
    let (c1, c2) = (int(e1), int(e2));
    (int(2) * c1 * c1 * c1 - int(3) * c1 * c2) / int(6)
        + int(3) * (c1 * c1 - c2) / int(2)
        + int(13) * c1 / int(6)
        + int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;
    use proptest::prelude::*;

    fn q3() -> FanoModel {
        FanoModel::quadric()
    }

    #[test]
    fn todd_values() {
        assert_eq!(todd(&q3()), NumClass::new(int(1), frac(3, 2), frac(13, 6), int(1)));
        let g12 = FanoModel::index_one(12).unwrap();
        assert_eq!(todd(&g12), NumClass::new(int(1), frac(1, 2), frac(23, 6), int(1)));
        for (i, d) in [(1, 2), (1, 22), (2, 1), (2, 5), (3, 2), (4, 1)] {
            let m = FanoModel::new(i, d).unwrap();
            assert_eq!(todd(&m).component(3), int(1));
            assert_eq!(chi(&m, &KClass::trivial(1)), int(1));
        }
    }

    #[test]
    fn projective_space_line_bundles() {
        let p3 = FanoModel::new(4, 1).unwrap();
        for n in -8..8i64 {
            let expected = frac((n + 1) * (n + 2) * (n + 3), 6);
            assert_eq!(chi(&p3, &KClass::line(&p3, n)), expected);
        }
    }

    #[test]
    fn model_validation() {
        assert!(FanoModel::new(5, 1).is_err());
        assert!(FanoModel::new(0, 1).is_err());
        assert!(FanoModel::new(2, 0).is_err());
        assert!(FanoModel::new(1, 7).is_err());
        assert_eq!(FanoModel::index_one(10).unwrap().genus(), Some(10));
        assert_eq!(q3().genus(), None);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&q3(), &KClass::rank2(&q3(), 0, 2)), int(-1));
        assert_eq!(chi(&q3(), &KClass::rank2(&q3(), -1, 1)), int(0));
        assert_eq!(chi_rr_q3_closed_form(-1, 4), int(-3));
        assert_eq!(chi_rr_q3_closed_form(0, 0), int(2));
        assert_eq!(chi_rr_q3_closed_form(-1, 1), int(0));
    }

    #[test]
    fn twist_and_dual_examples() {
        let m = q3();
        let e = KClass::rank2(&m, -1, 4);
        assert_eq!(e.twist(-2, &m).rank2_chern(&m), Some((-5, 16)));
        assert_eq!(KClass::line(&m, 1).twist(-1, &m), KClass::trivial(1));
        let k = KClass::from_ch(NumClass::new(int(2), int(-1), int(-3), frac(5, 3)));
        assert_eq!(k.dual().ch, NumClass::new(int(2), int(1), int(-3), frac(-5, 3)));
        assert_eq!(
            KClass::line(&m, 1).tensor(&KClass::line(&m, -1), &m),
            KClass::trivial(1)
        );
        assert_eq!(chi(&m, &e.dual().tensor(&e, &m)), int(-17));
    }

    #[test]
    fn serre_duality_on_q3() {
        let m = q3();
        for e1 in -3..=3 {
            for e2 in -6..=6 {
                let e = KClass::rank2(&m, e1, e2);
                for n in -5..=5 {
                    assert_eq!(chi(&m, &e.twist(n, &m)), -chi(&m, &e.dual().twist(-n - 3, &m)));
                }
            }
        }
    }

    #[test]
    fn closed_form_grid() {
        let m = q3();
        for e1 in -20..=20 {
            for e2 in -20..=20 {
                assert_eq!(chi(&m, &KClass::rank2(&m, e1, e2)), chi_rr_q3_closed_form(e1, e2));
            }
        }
    }

    proptest! {
        #[test]
        fn rank2_roundtrip(idx in 0usize..4, e1 in -30i64..30, e2 in -30i64..30, g in 2i64..13) {
            let m = match idx {
                0 => q3(),
                1 => FanoModel::index_one(g).unwrap(),
                2 => FanoModel::new(2, (g % 5) + 1).unwrap(),
                _ => FanoModel::new(4, 1).unwrap(),
            };
            prop_assert_eq!(KClass::rank2(&m, e1, e2).rank2_chern(&m), Some((e1, e2)));
        }

        #[test]
        fn twist_formula(e1 in -10i64..10, e2 in -10i64..10, n in -6i64..6) {
            let m = q3();
            let t = KClass::rank2(&m, e1, e2).twist(n, &m);
            let d = m.degree();
            prop_assert_eq!(t.rank2_chern(&m), Some((e1 + 2 * n, e2 + n * e1 * d + n * n * d)));
        }

        #[test]
        fn group_laws(e1 in -8i64..8, e2 in -8i64..8, f1 in -8i64..8, f2 in -8i64..8,
                      n in -5i64..5, k in -5i64..5) {
            let m = q3();
            let a = KClass::rank2(&m, e1, e2);
            let b = KClass::rank2(&m, f1, f2).twist(k, &m);
            prop_assert_eq!(chi(&m, &(a + b)), chi(&m, &a) + chi(&m, &b));
            prop_assert_eq!(a.twist(n, &m).twist(k, &m), a.twist(n + k, &m));
            prop_assert_eq!(a.dual().dual(), a);
            let spinor = KClass::rank2(&m, -1, 1).twist(n, &m);
            let line = KClass::line(&m, k);
            prop_assert!(chi(&m, &(spinor - line.scale(3))).is_integer());
            prop_assert!(chi(&m, &spinor.tensor(&line.dual(), &m)).is_integer());
        }
    }
}
