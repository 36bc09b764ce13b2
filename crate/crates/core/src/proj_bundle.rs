//! Intersection ring of the fourfold `P(E)` for a rank-2 bundle `E`.
//!
//! The ring is generated over the Chow ring of the base by the tautological
//! class `ξ`, subject to `ξ² = c₁ξ − c₂`. With `c₁ = e1·H` and
//! `c₂ = e2·ℓ = (e2/deg)·H²` every monomial reduces to the span of
//! `{Hᵇ, ξHᵇ : b ≤ 3}`, and the degree-4 number is `deg` times the
//! coefficient of `ξH³`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chow::FanoModel;
use crate::rational::fmt_rational;
use crate::{int, to_integer, Error, Rational, Result};

/// Rank-2 bundle on a Fano threefold, recorded by its Chern coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleOnX {
    pub model: FanoModel,
    pub e1: i64,
    pub e2: i64,
}

impl BundleOnX {
    pub fn new(model: FanoModel, e1: i64, e2: i64) -> Self {
        Self { model, e1, e2 }
    }

    pub fn on_quadric(e1: i64, e2: i64) -> Self {
        Self::new(FanoModel::quadric(), e1, e2)
    }

    /// `s₃ = c₁³ − 2c₁c₂` in point units.
    pub fn segre3(&self) -> i64 {
        self.e1.pow(3) * self.model.degree() - 2 * self.e1 * self.e2
    }

    pub fn twist(&self, n: i64) -> Self {
        let d = self.model.degree();
        Self {
            model: self.model,
            e1: self.e1 + 2 * n,
            e2: self.e2 + n * self.e1 * d + n * n * d,
        }
    }
}

/// Monomial `ξᵃ Hᵇ`, ordered so that higher `ξ`-powers come last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub xi: u32,
    pub h: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.xi + self.h
    }
}

/// Polynomial in `ξ` and `H` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TautExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl TautExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, xi: u32, h: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial { xi, h }, c);
        e
    }

    pub fn xi() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn h() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, xi: u32, h: u32) -> Rational {
        self.terms
            .get(&Monomial { xi, h })
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, s: Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, *c * s);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of degree above 4, which vanish on a fourfold.
    pub fn truncate(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.degree() <= 4 {
                out.add_term(*m, *c);
            }
        }
        out
    }
}

impl std::fmt::Display for TautExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = *c < Rational::zero();
            let mag = if neg { -*c } else { *c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(fmt_rational(&mag));
            }
            for (name, e) in [("xi", m.xi), ("H", m.h)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &TautExpr {
    type Output = TautExpr;
    fn add(self, rhs: &TautExpr) -> TautExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, *c);
        }
        out
    }
}

impl Sub for &TautExpr {
    type Output = TautExpr;
    fn sub(self, rhs: &TautExpr) -> TautExpr {
        self + &(-rhs)
    }
}

impl Neg for &TautExpr {
    type Output = TautExpr;
    fn neg(self) -> TautExpr {
        self.scale(-Rational::one())
    }
}

impl Mul for &TautExpr {
    type Output = TautExpr;
    fn mul(self, rhs: &TautExpr) -> TautExpr {
        let mut out = TautExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(
                    Monomial {
                        xi: m1.xi + m2.xi,
                        h: m1.h + m2.h,
                    },
                    *c1 * *c2,
                );
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for TautExpr {
            type Output = TautExpr;
            fn $f(self, rhs: TautExpr) -> TautExpr {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn check_degree(expr: &TautExpr) -> Result<()> {
    match expr.max_degree() {
        Some(d) if d > 4 => Err(Error::DimensionOverflow { degree: d }),
        _ => Ok(()),
    }
}

/// One rewriting step `ξᵃHᵇ ↦ ξᵃ⁻²Hᵇ(e1·ξH − (e2/deg)·H²)`, or `Hᵇ ↦ 0` for
/// `b ≥ 4`. Returns `None` if `m` is already in normal form.
fn rewrite(m: Monomial, bundle: &BundleOnX) -> Option<Vec<(Monomial, Rational)>> {
    if m.h >= 4 {
        return Some(Vec::new());
    }
    if m.xi < 2 {
        return None;
    }
    let e1 = int(bundle.e1);
    let c2 = int(bundle.e2) / int(bundle.model.degree());
    Some(vec![
        (
            Monomial {
                xi: m.xi - 1,
                h: m.h + 1,
            },
            e1,
        ),
        (
            Monomial {
                xi: m.xi - 2,
                h: m.h + 2,
            },
            -c2,
        ),
    ])
}

/// Normal form, rewriting whichever reducible monomial `pick` selects.
pub(crate) fn reduce_with<F>(expr: &TautExpr, bundle: &BundleOnX, mut pick: F) -> Result<TautExpr>
where
    F: FnMut(&[Monomial]) -> usize,
{
    check_degree(expr)?;
    let mut cur = expr.clone();
    loop {
        let reducible: Vec<Monomial> = cur
            .terms
            .keys()
            .copied()
            .filter(|m| rewrite(*m, bundle).is_some())
            .collect();
        if reducible.is_empty() {
            return Ok(cur);
        }
        let m = reducible[pick(&reducible) % reducible.len()];
        let c = cur.terms.remove(&m).expect("monomial present");
        for (m2, c2) in rewrite(m, bundle).expect("reducible") {
            cur.add_term(m2, c * c2);
        }
    }
}

/// Normal form of `expr` in the span of `{Hᵇ, ξHᵇ : b ≤ 3}`.
pub fn reduce(expr: &TautExpr, bundle: &BundleOnX) -> Result<TautExpr> {
    reduce_with(expr, bundle, |r| r.len() - 1)
}

/// Degree of a homogeneous degree-4 class, in point units.
pub fn intersection_number(expr: &TautExpr, bundle: &BundleOnX) -> Result<Rational> {
    if !expr.is_homogeneous_of(4) {
        return Err(Error::NotHomogeneous { expected: 4 });
    }
    let nf = reduce(expr, bundle)?;
    Ok(nf.coeff(1, 3) * int(bundle.model.degree()))
}

/// `−K = 2ξ + (index − e1)H`.
pub fn anticanonical(bundle: &BundleOnX) -> TautExpr {
    &TautExpr::xi().scale(int(2)) + &TautExpr::h().scale(int(bundle.model.index() as i64 - bundle.e1))
}

/// `(−K)⁴`.
pub fn antican_quartic(bundle: &BundleOnX) -> Result<i64> {
    let v = intersection_number(&anticanonical(bundle).pow(4), bundle)?;
    to_integer(&v).ok_or_else(|| Error::NonIntegral(fmt_rational(&v)))
}

/// `(−K)³·(ξ − aH)`.
pub fn h0van_pairing(bundle: &BundleOnX, a: Rational) -> Result<Rational> {
    let k = anticanonical(bundle);
    let probe = &TautExpr::xi() - &TautExpr::h().scale(a);
    intersection_number(&(&k.pow(3) * &probe), bundle)
}

/// Segre numbers `sᵢ·H³⁻ⁱ` in point units: `1`, `c₁`, `c₁² − c₂`, `c₁³ − 2c₁c₂`.
///
/// `s₀` is reported as the bare value `1`; the other entries are pushed
/// against `H³⁻ⁱ`.
pub fn segre(bundle: &BundleOnX, i: i64) -> Result<i64> {
    let d = bundle.model.degree();
    let (e1, e2) = (bundle.e1, bundle.e2);
    match i {
        0 => Ok(1),
        1 => Ok(e1 * d),
        2 => Ok(e1 * e1 * d - e2),
        3 => Ok(bundle.segre3()),
        _ => Err(Error::OutOfRange(format!("segre index {i} outside 0..=3"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn mono(xi: u32, h: u32) -> TautExpr {
        TautExpr::monomial(Rational::one(), xi, h)
    }

    fn h0van_closed(c1: i64, c2: i64, a: Rational) -> Rational {
        let (c1, c2) = (int(c1), int(c2));
        int(2)
            * (int(-2) * a * (c1 * c1 - int(2) * c2 + int(27)) + c1 * c1 * c1 - int(2) * c1 * c2
                + int(9) * (c1 * c1 + int(3) * c1 - int(2) * c2 + int(3)))
    }

    #[test]
    fn quadric_monomials() {
        for e1 in -3..=3 {
            for e2 in -12..=12 {
                let b = BundleOnX::on_quadric(e1, e2);
                let n = |xi, h| intersection_number(&mono(xi, h), &b).unwrap();
                assert_eq!(n(0, 4), int(0));
                assert_eq!(n(1, 3), int(2));
                assert_eq!(n(2, 2), int(2 * e1));
                assert_eq!(n(3, 1), int(2 * e1 * e1 - e2));
                assert_eq!(n(4, 0), int(2 * e1.pow(3) - 2 * e1 * e2));
            }
        }
    }

    #[test]
    fn quadric_identities() {
        for e1 in -3..=3 {
            for e2 in -12..=12 {
                let b = BundleOnX::on_quadric(e1, e2);
                assert_eq!(antican_quartic(&b).unwrap(), 48 * (e1 * e1 - 2 * e2 + 9));
                for a in [int(-3), int(-1), int(0), int(2), frac(1, 2), frac(-7, 3)] {
                    assert_eq!(h0van_pairing(&b, a).unwrap(), h0van_closed(e1, e2, a));
                }
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(antican_quartic(&BundleOnX::on_quadric(0, 2)).unwrap(), 240);
        assert_eq!(antican_quartic(&BundleOnX::on_quadric(-1, 2)).unwrap(), 288);
        assert_eq!(h0van_pairing(&BundleOnX::on_quadric(0, 2), int(0)).unwrap(), int(-18));
        assert_eq!(h0van_pairing(&BundleOnX::on_quadric(-1, 1), int(0)).unwrap(), int(-16));
        let g10 = FanoModel::index_one(10).unwrap();
        assert_eq!(antican_quartic(&BundleOnX::new(g10, 0, 4)).unwrap(), 16);
        assert_eq!(
            anticanonical(&BundleOnX::on_quadric(0, 2)),
            &TautExpr::xi().scale(int(2)) + &TautExpr::h().scale(int(3))
        );
        assert_eq!(
            anticanonical(&BundleOnX::on_quadric(-1, 2)),
            &TautExpr::xi().scale(int(2)) + &TautExpr::h().scale(int(4))
        );
        assert_eq!(anticanonical(&BundleOnX::new(g10, 1, 6)), TautExpr::xi().scale(int(2)));
        let e2 = BundleOnX::on_quadric(-1, 4).twist(2);
        assert_eq!((e2.e1, segre(&e2, 3).unwrap()), (3, 6));
        let g6 = FanoModel::index_one(6).unwrap();
        assert_eq!(segre(&BundleOnX::new(g6, 1, 4), 3).unwrap(), 2);
        assert!(segre(&e2, 4).is_err());
        assert!(segre(&e2, -1).is_err());
    }

    #[test]
    fn index_one_identities() {
        for g in 2..=12 {
            let m = FanoModel::index_one(g).unwrap();
            for c2 in -10..=20 {
                let b = BundleOnX::new(m, 0, c2);
                assert_eq!(antican_quartic(&b).unwrap(), 8 * ((2 * g - 2) - 4 * c2));
                let k = anticanonical(&b);
                let k3xi = intersection_number(&(&k.pow(3) * &TautExpr::xi()), &b).unwrap();
                assert_eq!(k3xi, int((2 * g - 2) - 12 * c2));
                let f = BundleOnX::new(m, 1, c2);
                assert_eq!(intersection_number(&mono(4, 0), &f).unwrap(), int(2 * g - 2 - 2 * c2));
            }
        }
    }

    #[test]
    fn errors() {
        let b = BundleOnX::on_quadric(0, 2);
        assert_eq!(reduce(&mono(3, 2), &b), Err(Error::DimensionOverflow { degree: 5 }));
        let mixed = &mono(4, 0) + &mono(1, 0);
        assert_eq!(
            intersection_number(&mixed, &b),
            Err(Error::NotHomogeneous { expected: 4 })
        );
        assert_eq!(intersection_number(&mono(0, 4), &b), Ok(int(0)));
    }

    #[test]
    fn reduce_is_confluent() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let b = BundleOnX::new(
                FanoModel::index_one(rng.gen_range(2..13)).unwrap(),
                rng.gen_range(-3..4),
                rng.gen_range(-10..10),
            );
            let mut e = TautExpr::zero();
            for _ in 0..6 {
                let xi = rng.gen_range(0..5);
                let h = rng.gen_range(0..=(4 - xi));
                e = &e + &TautExpr::monomial(frac(rng.gen_range(-9..10), rng.gen_range(1..5)), xi, h);
            }
            let canonical = reduce(&e, &b).unwrap();
            let mut r2 = rand::rngs::StdRng::seed_from_u64(rng.gen());
            let random = reduce_with(&e, &b, |r| r2.gen_range(0..r.len())).unwrap();
            let first = reduce_with(&e, &b, |_| 0).unwrap();
            assert_eq!(canonical, random);
            assert_eq!(canonical, first);
            assert!(canonical.terms().all(|(m, _)| m.xi <= 1 && m.h <= 3));
        }
    }

    proptest! {
        #[test]
        fn pushforward_matches_segre(g in 2i64..13, e1 in -4i64..5, e2 in -15i64..15) {
            let b = BundleOnX::new(FanoModel::index_one(g).unwrap(), e1, e2);
            for i in 0..=3u32 {
                let v = intersection_number(&mono(1 + i, 3 - i), &b).unwrap();
                let s = segre(&b, i as i64).unwrap();
                let expected = if i == 0 { int(b.model.degree()) } else { int(s) };
                prop_assert_eq!(v, expected);
            }
        }

        #[test]
        fn linear(e1 in -3i64..3, e2 in -8i64..8, p in -20i64..20, q in 1i64..7,
                  a in 0u32..5, c in 0u32..5) {
            let b = BundleOnX::on_quadric(e1, e2);
            let x = mono(a, 4 - a);
            let y = mono(c, 4 - c);
            let s = frac(p, q);
            let lhs = intersection_number(&(&x.scale(s) + &y), &b).unwrap();
            let rhs = intersection_number(&x, &b).unwrap() * s + intersection_number(&y, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weak_fano_bound(e1 in -1i64..1, e2 in -20i64..20) {
            let b = BundleOnX::on_quadric(e1, e2);
            prop_assert_eq!(antican_quartic(&b).unwrap() > 0, e2 <= 4);
        }
    }
}
