//! Small even lattices standing in for Picard groups of K3 surfaces.

use std::collections::BTreeSet;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::classify::index1_c2_range;
use crate::{frac, Error, Rational, Result};

pub type LatticeClass = Vec<i64>;

/// Lattice with an explicit Gram matrix and an optional list of
/// `(−2)`-curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeModel {
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default)]
    pub curves: Vec<LatticeClass>,
}

impl LatticeModel {
    pub const MAX_RANK: usize = 4;

    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_curves(gram, Vec::new())
    }

    pub fn with_curves(gram: Vec<Vec<i64>>, curves: Vec<LatticeClass>) -> Result<Self> {
        let m = Self {
            gram,
            labels: Vec::new(),
            curves,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.gram.len();
        if n == 0 || n > Self::MAX_RANK {
            return Err(Error::Invalid(format!("rank {n} outside 1..=4")));
        }
        for (i, row) in self.gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row[i] % 2 != 0 {
                return Err(Error::Parity(format!("diagonal entry {i} is odd")));
            }
            for (j, v) in row.iter().enumerate() {
                if *v != self.gram[j][i] {
                    return Err(Error::Invalid("Gram matrix is not symmetric".into()));
                }
            }
        }
        if !self.labels.is_empty() && self.labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.labels.len(),
            });
        }
        for c in &self.curves {
            let s = self.square(c)?;
            if s != -2 {
                return Err(Error::Invalid(format!("listed curve {c:?} has square {s}, not -2")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let n = self.rank();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok((0..n)
            .map(|i| (0..n).map(|j| x[i] * self.gram[i][j] * y[j]).sum::<i64>())
            .sum())
    }

    pub fn square(&self, x: &[i64]) -> Result<i64> {
        self.pairing(x, x)
    }
}

pub fn pairing(m: &LatticeModel, x: &[i64], y: &[i64]) -> Result<i64> {
    m.pairing(x, y)
}

/// Riemann–Roch lower bound `h⁰(D) ≥ D²/2 + 2` on a K3 surface.
pub fn rr_h0_lower_from_square(s: i64) -> Result<i64> {
    if s % 2 != 0 {
        return Err(Error::Parity(format!("odd square {s} on an even lattice")));
    }
    if s < -2 {
        return Err(Error::OutOfRange(format!("D^2 = {s} < -2")));
    }
    Ok(s / 2 + 2)
}

pub fn rr_h0_lower(m: &LatticeModel, d: &[i64]) -> Result<i64> {
    rr_h0_lower_from_square(m.square(d)?)
}

/// How much of the solution set a search is guaranteed to have found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Guarantee {
    /// Only the box `[−bound, bound]ʳ` was searched.
    BoxSearch { bound: i64 },
    /// The listed solutions are all of them.
    Complete { certificate: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representations {
    pub target: i64,
    pub solutions: Vec<LatticeClass>,
    pub guarantee: Guarantee,
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.extend([d, -d, n / d, -(n / d)]);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn exact_sqrt(n: i64) -> Option<i64> {
    (n >= 0).then(|| n.sqrt()).filter(|r| r * r == n)
}

/// Integer roots `x` of `p x² + 2q y x + (r y² − t) = 0`.
fn roots_in_x(p: i64, q: i64, r: i64, t: i64, y: i64) -> Vec<i64> {
    let c = r * y * y - t;
    if p == 0 {
        let b = 2 * q * y;
        return if b != 0 && (-c) % b == 0 {
            vec![-c / b]
        } else {
            Vec::new()
        };
    }
    let disc = q * q * y * y - p * c;
    let Some(s) = exact_sqrt(disc) else { return Vec::new() };
    let mut out: Vec<i64> = [-q * y + s, -q * y - s]
        .into_iter()
        .filter(|n| n % p == 0)
        .map(|n| n / p)
        .collect();
    out.dedup();
    out
}

/// Complete solution set of `p x² + 2q xy + r y² = t`, when a finite
/// certificate exists.
fn binary_complete(p: i64, q: i64, r: i64, t: i64) -> Option<(BTreeSet<(i64, i64)>, String)> {
    let mut sols = BTreeSet::new();
    let disc = q * q - p * r;
    if t == 0 {
        return None;
    }
    if p == 0 && q != 0 {
        // y (2q x + r y) = t, so y divides t.
        for y in divisors(t) {
            for x in roots_in_x(p, q, r, t, y) {
                sols.insert((x, y));
            }
        }
        return Some((
            sols,
            format!("the form equals y*({}x + {}y), so y divides {t}", 2 * q, r),
        ));
    }
    if r == 0 && q != 0 {
        return binary_complete(r, q, p, t).map(|(s, _)| {
            (
                s.into_iter().map(|(y, x)| (x, y)).collect(),
                format!("the form equals x*({p}x + {}y), so x divides {t}", 2 * q),
            )
        });
    }
    if p == 0 {
        return None;
    }
    if disc < 0 {
        // p·Q = (px + qy)² + (pr − q²)y², so y² ≤ p·t / (pr − q²).
        if p * t < 0 {
            return Some((sols, "definite form of the opposite sign to the target".into()));
        }
        let ymax = (p * t / (p * r - q * q)).sqrt();
        for y in -ymax..=ymax {
            for x in roots_in_x(p, q, r, t, y) {
                sols.insert((x, y));
            }
        }
        return Some((sols, format!("definite form, so |y| <= {ymax}")));
    }
    if let Some(s) = exact_sqrt(disc).filter(|s| *s > 0) {
        // p·Q = (px + (q+s)y)(px + (q−s)y); both factors divide p·t.
        for u in divisors(p * t) {
            let v = p * t / u;
            if (u - v) % (2 * s) != 0 {
                continue;
            }
            let y = (u - v) / (2 * s);
            let num = u - (q + s) * y;
            if num % p == 0 {
                sols.insert((num / p, y));
            }
        }
        return Some((
            sols,
            format!(
                "{p}*Q factors as a product of linear forms; enumerated divisors of {}",
                p * t
            ),
        ));
    }
    None
}

/// Classes of square `target` in the box `[−bound, bound]ʳ`, completed by a
/// certificate whenever the form admits one.
pub fn represent(m: &LatticeModel, target: i64, bound: i64) -> Result<Representations> {
    m.validate()?;
    if m.rank() == 2 {
        let (p, q, r) = (m.gram[0][0], m.gram[0][1], m.gram[1][1]);
        if let Some((sols, certificate)) = binary_complete(p, q, r, target) {
            let solutions = sols.into_iter().map(|(x, y)| vec![x, y]).collect();
            return Ok(Representations {
                target,
                solutions,
                guarantee: Guarantee::Complete { certificate },
            });
        }
    }
    Ok(Representations {
        target,
        solutions: box_search(m, target, bound)?,
        guarantee: Guarantee::BoxSearch { bound },
    })
}

/// Exhaustive search over the box, sorted lexicographically.
pub fn box_search(m: &LatticeModel, target: i64, bound: i64) -> Result<Vec<LatticeClass>> {
    let n = m.rank();
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        if m.square(&v)? == target {
            out.push(v.clone());
        }
        let Some(i) = (0..n).rev().find(|i| v[*i] < bound) else {
            break;
        };
        v[i] += 1;
        for x in v.iter_mut().skip(i + 1) {
            *x = -bound;
        }
    }
    Ok(out)
}

pub fn minus_two_solutions(m: &LatticeModel, bound: i64) -> Result<Representations> {
    represent(m, -2, bound)
}

/// Lattice spanned by `H` with `H² = 2g − 2` and a conic `γ` with `H·γ = 2`, `γ² = −2`.
pub fn conic_lattice(g: i64) -> LatticeModel {
    LatticeModel {
        gram: vec![vec![2 * g - 2, 2], vec![2, -2]],
        labels: vec!["H".into(), "gamma".into()],
        curves: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicSolution {
    pub d: i64,
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicReport {
    pub genus: i64,
    pub dmax: i64,
    pub genus_is_square: bool,
    /// Every rational `(a, b)` with `E² = 0`, `H·E = d`, `1 ≤ d ≤ dmax`.
    pub rational: Vec<IsotropicSolution>,
    /// Degrees carrying an integral solution.
    pub integral_degrees: Vec<i64>,
}

/// Solves `E = aH + bγ`, `E² = 0`, `H·E = d` on [`conic_lattice`]:
/// `a = d(1 ± 1/√g) / (2(g−1))`, `b = ∓d / (2√g)`.
pub fn isotropic_degree_solutions(g: i64, dmax: i64) -> Result<IsotropicReport> {
    if !(9..=12).contains(&g) {
        return Err(Error::OutOfRange(format!("genus {g} outside 9..=12")));
    }
    let root = exact_sqrt(g);
    let mut rational = Vec::new();
    if let Some(s) = root {
        for d in 1..=dmax {
            for sign in [1, -1] {
                let a = frac(d, 2 * (g - 1)) * (Rational::from_integer(1) + frac(sign, s));
                let b = frac(-sign * d, 2 * s);
                rational.push(IsotropicSolution {
                    d,
                    a,
                    b,
                    integral: a.is_integer() && b.is_integer(),
                });
            }
        }
    }
    let mut integral_degrees: Vec<i64> = rational.iter().filter(|s| s.integral).map(|s| s.d).collect();
    integral_degrees.dedup();
    Ok(IsotropicReport {
        genus: g,
        dmax,
        genus_is_square: root.is_some(),
        rational,
        integral_degrees,
    })
}

/// `h⁰(L)·h⁰(H − L) ≥ g + 1`, i.e. Brill–Noether generality fails.
pub fn bn_product_violation(g: i64, h0_l: i64, h0_h_minus_l: i64) -> Result<bool> {
    if h0_l < 0 || h0_h_minus_l < 0 || g < 0 {
        return Err(Error::OutOfRange("dimensions must be non-negative".into()));
    }
    Ok(h0_l * h0_h_minus_l > g)
}

/// The hyperelliptic configuration: `h⁰(L) = 2a + 2`, `h⁰(C) = 2` with
/// `4(a + 1) = g + 3`. Returns `None` when `g + 3` is not divisible by 4.
pub fn hyperelliptic_violation(g: i64) -> Result<Option<bool>> {
    if (g + 3) % 4 != 0 || g < 1 {
        return Ok(None);
    }
    let a = (g + 3) / 4 - 1;
    bn_product_violation(g, 2 * a + 2, 2).map(Some)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefDecomposition {
    pub p: LatticeClass,
    /// Indices into the model's curve list removed at each step.
    pub chain: Vec<Vec<usize>>,
}

impl NefDecomposition {
    pub fn total_removed(&self, m: &LatticeModel) -> LatticeClass {
        let mut acc = vec![0; m.rank()];
        for step in &self.chain {
            for i in step {
                for (a, c) in acc.iter_mut().zip(&m.curves[*i]) {
                    *a += c;
                }
            }
        }
        acc
    }
}

pub const DEFAULT_BUDGET: usize = 64;

/// Peels off `(−2)`-curves that meet the running divisor negatively until it
/// is nef against every listed curve.
///
/// Each step requires every negative curve to pair to exactly `−1` and the
/// negative curves to be pairwise disjoint.
pub fn nef_decompose(m: &LatticeModel, d: &[i64], budget: usize) -> Result<NefDecomposition> {
    m.validate()?;
    if d.len() != m.rank() {
        return Err(Error::DimensionMismatch {
            expected: m.rank(),
            found: d.len(),
        });
    }
    let mut cur = d.to_vec();
    let mut chain = Vec::new();
    let mut seen = BTreeSet::new();
    for _ in 0..budget {
        if !seen.insert(cur.clone()) {
            return Err(Error::HypothesisViolated(format!(
                "the peeling process revisits {cur:?}"
            )));
        }
        let mut negative = Vec::new();
        for (i, c) in m.curves.iter().enumerate() {
            let v = m.pairing(&cur, c)?;
            if v <= -2 {
                return Err(Error::HypothesisViolated(format!("D.Gamma_{i} = {v} <= -2")));
            }
            if v < 0 {
                negative.push(i);
            }
        }
        if negative.is_empty() {
            return Ok(NefDecomposition { p: cur, chain });
        }
        for (k, i) in negative.iter().enumerate() {
            for j in &negative[k + 1..] {
                if m.pairing(&m.curves[*i], &m.curves[*j])? != 0 {
                    return Err(Error::HypothesisViolated(format!("curves {i} and {j} meet")));
                }
            }
        }
        for i in &negative {
            for (x, c) in cur.iter_mut().zip(&m.curves[*i]) {
                *x -= c;
            }
        }
        chain.push(negative);
    }
    Err(Error::BudgetExhausted(budget))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step4Report {
    pub g: i64,
    pub d: i64,
    pub m1: i64,
    /// `(2m₁ + 2)(1 + g − d)`.
    pub lower_product: i64,
    /// `g + 1`, which the product must stay strictly below.
    pub bound: i64,
    pub feasible: bool,
    /// For `m₁ = 1`, the only value of `E·N` compatible with the bound.
    pub forced_e_dot_n: Option<i64>,
    /// `H·N = E·N − 1` for that value.
    pub forced_h_dot_n: Option<i64>,
}

/// `E·N` for a component `N` with `(H − E)·N = −1` and `H·N = h_dot_n`.
pub fn exceptional_degree(h_dot_n: i64) -> i64 {
    h_dot_n + 1
}

pub fn step4_case_analysis(g: i64, d: i64, m1: i64) -> Result<Step4Report> {
    let table = index1_c2_range(g)?;
    if !table.rows.iter().any(|r| r.d == d) {
        return Err(Error::OutOfRange(format!(
            "(g, d) = ({g}, {d}) is not in the index-one table"
        )));
    }
    if m1 < 0 {
        return Err(Error::OutOfRange(format!("m1 = {m1} < 0")));
    }
    let h0_m = rr_h0_lower_from_square(2 * g - 2 - 2 * d)?;
    let lower_product = (2 * m1 + 2) * h0_m;
    let bound = g + 1;
    let feasible = m1 == 0 || lower_product < bound;
    let (mut forced_e_dot_n, mut forced_h_dot_n) = (None, None);
    if m1 == 1 && feasible {
        // h⁰(L) ≥ E·N + 1 with E·N ≥ 3, from a line being excluded.
        let allowed: Vec<i64> = (3..=bound).filter(|e| (e + 1) * h0_m < bound).collect();
        if let [e] = allowed[..] {
            forced_e_dot_n = Some(e);
            forced_h_dot_n = Some(e - 1);
        }
    }
    Ok(Step4Report {
        g,
        d,
        m1,
        lower_product,
        bound,
        feasible,
        forced_e_dot_n,
        forced_h_dot_n,
    })
}

/// Every admissible `(g, d, m₁)` with `1 ≤ m₁ ≤ g` that survives the inequality.
pub fn step4_feasible_cases() -> Result<Vec<Step4Report>> {
    let mut out = Vec::new();
    for g in (2..=12).filter(|g| *g != 11) {
        for row in index1_c2_range(g)?.rows {
            for m1 in 1..=g {
                let r = step4_case_analysis(g, row.d, m1)?;
                if r.feasible {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

/// Random rank-2 or rank-3 configuration `(P, Γ₁[, Γ₂])` with `Γᵢ² = −2`,
/// `Γ₁·Γ₂ ∈ {0, 1}`, even `P² ∈ [0, 8]` and `P·Γᵢ ∈ {0, 1, 2}`, together with
/// `D = P + Σ cᵢΓᵢ`, `cᵢ ∈ [0, 3]`.
pub fn random_configuration<R: rand::Rng>(rng: &mut R) -> (LatticeModel, LatticeClass) {
    let rank = rng.gen_range(2..=3);
    let p2 = 2 * rng.gen_range(0..=4);
    let mut gram = vec![vec![0; rank]; rank];
    gram[0][0] = p2;
    #[allow(clippy::needless_range_loop)]
    for i in 1..rank {
        gram[i][i] = -2;
        let v = rng.gen_range(0..=2);
        gram[0][i] = v;
        gram[i][0] = v;
    }
    if rank == 3 {
        let v = rng.gen_range(0..=1);
        gram[1][2] = v;
        gram[2][1] = v;
    }
    let curves: Vec<LatticeClass> = (1..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut d = vec![0; rank];
    d[0] = 1;
    for x in d.iter_mut().skip(1) {
        *x = rng.gen_range(0..=3);
    }
    (
        LatticeModel {
            gram,
            labels: Vec::new(),
            curves,
        },
        d,
    )
}

/// Checks the output contract of [`nef_decompose`] for one run.
pub fn nef_run_is_valid(m: &LatticeModel, d: &[i64], outcome: &Result<NefDecomposition>) -> bool {
    match outcome {
        Ok(r) => {
            let total = r.total_removed(m);
            let sums = r.p.iter().zip(&total).map(|(p, t)| p + t).eq(d.iter().copied());
            let nef = m
                .curves
                .iter()
                .all(|c| m.pairing(&r.p, c).map(|v| v >= 0).unwrap_or(false));
            sums && nef
        }
        Err(Error::HypothesisViolated(_)) => true,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn q3_model() -> LatticeModel {
        LatticeModel::new(vec![vec![6, 7], vec![7, 0]]).unwrap()
    }

    #[test]
    fn pairings() {
        assert_eq!(q3_model().square(&[1, 1]).unwrap(), 20);
        assert_eq!(q3_model().square(&[0, 0]).unwrap(), 0);
        assert_eq!(conic_lattice(9).pairing(&[1, 0], &[0, 1]).unwrap(), 2);
        assert!(matches!(
            q3_model().pairing(&[1], &[1, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(LatticeModel::new(vec![vec![1, 0], vec![0, 2]]).is_err());
        assert!(LatticeModel::new(vec![vec![2, 1], vec![0, 2]]).is_err());
        assert!(LatticeModel::with_curves(vec![vec![2]], vec![vec![1]]).is_err());
    }

    #[test]
    fn rr_bounds() {
        assert_eq!(rr_h0_lower_from_square(2 * 12 - 2 - 2 * 10).unwrap(), 3);
        assert_eq!(rr_h0_lower_from_square(0).unwrap(), 2);
        assert_eq!(rr_h0_lower_from_square(2).unwrap(), 3);
        assert!(rr_h0_lower_from_square(3).is_err());
        assert!(rr_h0_lower_from_square(-4).is_err());
        assert_eq!(rr_h0_lower(&conic_lattice(9), &[1, 0]).unwrap(), 10);
    }

    #[test]
    fn minus_two() {
        let r = minus_two_solutions(&q3_model(), 100).unwrap();
        assert!(r.solutions.is_empty());
        assert!(matches!(r.guarantee, Guarantee::Complete { .. }));
        assert!(box_search(&q3_model(), -2, 100).unwrap().is_empty());

        let with_curve = LatticeModel::new(vec![vec![4, 1], vec![1, -2]]).unwrap();
        let r = minus_two_solutions(&with_curve, 10).unwrap();
        assert!(r.solutions.contains(&vec![0, 1]) && r.solutions.contains(&vec![0, -1]));

        let elliptic = LatticeModel::new(vec![vec![12, 5], vec![5, 0]]).unwrap();
        let r = minus_two_solutions(&elliptic, 50).unwrap();
        assert_eq!(r.solutions, box_search(&elliptic, -2, 50).unwrap());
    }

    #[test]
    fn certificates_agree_with_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut certified = 0;
        for _ in 0..60 {
            let p = 2 * rng.gen_range(-6..7);
            let r = 2 * rng.gen_range(-6..7);
            let q = rng.gen_range(-9..10);
            let t = 2 * rng.gen_range(-4..4);
            let m = LatticeModel::new(vec![vec![p, q], vec![q, r]]).unwrap();
            let rep = represent(&m, t, 200).unwrap();
            if let Guarantee::Complete { .. } = rep.guarantee {
                certified += 1;
                let brute = box_search(&m, t, 200).unwrap();
                let mut sols = rep.solutions.clone();
                sols.sort();
                assert!(sols.iter().all(|s| m.square(s).unwrap() == t));
                assert_eq!(
                    sols.iter()
                        .filter(|s| s.iter().all(|x| x.abs() <= 200))
                        .cloned()
                        .collect::<Vec<_>>(),
                    brute,
                    "{m:?} t={t}"
                );
            }
        }
        assert!(certified > 20);
    }

    #[test]
    fn isotropic() {
        let r = isotropic_degree_solutions(9, 7).unwrap();
        assert!(r.genus_is_square && r.integral_degrees.is_empty());
        let r = isotropic_degree_solutions(10, 8).unwrap();
        assert!(!r.genus_is_square && r.rational.is_empty());
        let r = isotropic_degree_solutions(9, 12).unwrap();
        assert_eq!(r.integral_degrees, vec![12]);
        let sol: Vec<_> = r.rational.iter().filter(|s| s.integral).collect();
        assert_eq!(sol.len(), 1);
        assert_eq!(
            (sol[0].a, sol[0].b),
            (Rational::from_integer(1), Rational::from_integer(-2))
        );
        assert!(isotropic_degree_solutions(8, 7).is_err());
        assert!(isotropic_degree_solutions(13, 7).is_err());
    }

    #[test]
    fn isotropic_brute_force() {
        for g in 9..=12 {
            let m = conic_lattice(g);
            let report = isotropic_degree_solutions(g, 24).unwrap();
            for d in 1..=24 {
                let brute: Vec<(i64, i64)> = (-24..=24)
                    .flat_map(|a| (-24..=24).map(move |b| (a, b)))
                    .filter(|(a, b)| m.square(&[*a, *b]).unwrap() == 0 && m.pairing(&[1, 0], &[*a, *b]).unwrap() == d)
                    .collect();
                let found: Vec<(i64, i64)> = report
                    .rational
                    .iter()
                    .filter(|s| s.d == d && s.integral)
                    .map(|s| (s.a.to_integer() as i64, s.b.to_integer() as i64))
                    .collect();
                let mut found = found;
                found.sort();
                assert_eq!(brute, found, "g={g} d={d}");
                for s in report.rational.iter().filter(|s| s.d == d) {
                    let (a, b) = (s.a, s.b);
                    assert_eq!(a * a * int(2 * g - 2) + int(4) * a * b - int(2) * b * b, int(0));
                }
            }
        }
    }

    #[test]
    fn brill_noether() {
        assert!(bn_product_violation(12, 2, 7).unwrap());
        assert!(!bn_product_violation(12, 2, 6).unwrap());
        assert!(bn_product_violation(12, -1, 6).is_err());
        for g in [5, 9, 13] {
            assert_eq!(hyperelliptic_violation(g).unwrap(), Some(true));
        }
        assert_eq!(hyperelliptic_violation(6).unwrap(), None);
        for g in (6..=12).filter(|g| *g != 11) {
            for r in index1_c2_range(g).unwrap().rows {
                assert!(!bn_product_violation(g, 2, r.s3 / 2 + 2).unwrap());
            }
        }
    }

    fn rank2_example() -> (LatticeModel, LatticeClass) {
        // Basis (P, Γ): P² = 2, P·Γ = 1, Γ² = −2.
        (
            LatticeModel::with_curves(vec![vec![2, 1], vec![1, -2]], vec![vec![0, 1]]).unwrap(),
            vec![1, 1],
        )
    }

    fn rank3_example() -> LatticeModel {
        // Basis (P, Γ₁, Γ₂).
        LatticeModel::with_curves(
            vec![vec![4, 0, 1], vec![0, -2, 1], vec![1, 1, -2]],
            vec![vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn nef_examples() {
        let (m, _) = rank2_example();
        let nef = nef_decompose(&m, &[1, 0], DEFAULT_BUDGET).unwrap();
        assert_eq!(
            nef,
            NefDecomposition {
                p: vec![1, 0],
                chain: vec![]
            }
        );
        let (m, d) = rank2_example();
        let r = nef_decompose(&m, &d, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            r,
            NefDecomposition {
                p: vec![1, 0],
                chain: vec![vec![0]]
            }
        );
        let m = rank3_example();
        let r = nef_decompose(&m, &[1, 1, 1], DEFAULT_BUDGET).unwrap();
        assert_eq!(
            r,
            NefDecomposition {
                p: vec![1, 0, 0],
                chain: vec![vec![0], vec![1]]
            }
        );
    }

    #[test]
    fn nef_errors() {
        let (m, _) = rank2_example();
        assert!(matches!(
            nef_decompose(&m, &[0, 1], DEFAULT_BUDGET),
            Err(Error::HypothesisViolated(_))
        ));
        let meeting = LatticeModel::with_curves(
            vec![vec![4, 0, 0], vec![0, -2, 1], vec![0, 1, -2]],
            vec![vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        // D·Γ₁ = D·Γ₂ = −1 with Γ₁·Γ₂ = 1.
        assert!(matches!(
            nef_decompose(&meeting, &[1, 1, 1], DEFAULT_BUDGET),
            Err(Error::HypothesisViolated(_))
        ));
        let (m, d) = rank2_example();
        assert_eq!(nef_decompose(&m, &d, 1), Err(Error::BudgetExhausted(1)));
        assert!(nef_decompose(&m, &d, 2).is_ok());
        assert!(matches!(nef_decompose(&m, &d, 0), Err(Error::BudgetExhausted(0))));
    }

    #[test]
    fn step4() {
        let r = step4_case_analysis(12, 10, 1).unwrap();
        assert!(r.feasible);
        assert_eq!(
            (r.lower_product, r.forced_e_dot_n, r.forced_h_dot_n),
            (12, Some(3), Some(2))
        );
        assert!(!step4_case_analysis(10, 8, 1).unwrap().feasible);
        assert_eq!(step4_case_analysis(10, 8, 1).unwrap().lower_product, 12);
        assert!(step4_case_analysis(9, 6, 0).unwrap().feasible);
        assert!(step4_case_analysis(12, 11, 1).is_err());
        assert!(step4_case_analysis(11, 8, 1).is_err());
        let feasible: Vec<(i64, i64, i64)> = step4_feasible_cases()
            .unwrap()
            .iter()
            .map(|r| (r.g, r.d, r.m1))
            .collect();
        assert_eq!(feasible, vec![(12, 10, 1)]);
        assert_eq!(exceptional_degree(1), 2);
    }

    proptest! {
        #[test]
        fn bilinear_symmetric(a in -6i64..6, b in -6i64..6, c in -6i64..6,
                              x in proptest::collection::vec(-9i64..9, 3),
                              y in proptest::collection::vec(-9i64..9, 3),
                              z in proptest::collection::vec(-9i64..9, 3), s in -5i64..5) {
            let m = LatticeModel::new(vec![vec![2 * a, b, c], vec![b, -2, a], vec![c, a, 2 * c]]).unwrap();
            prop_assert_eq!(m.pairing(&x, &y).unwrap(), m.pairing(&y, &x).unwrap());
            let sum: Vec<i64> = x.iter().zip(&z).map(|(u, v)| s * u + v).collect();
            prop_assert_eq!(m.pairing(&sum, &y).unwrap(), s * m.pairing(&x, &y).unwrap() + m.pairing(&z, &y).unwrap());
            prop_assert_eq!(m.square(&x).unwrap() % 2, 0);
        }
    }
}
