//! Numerical classification sieves on the quadric threefold and on
//! index-one Fano threefolds.

use serde::{Deserialize, Serialize};

use crate::chow::{chi, FanoModel, KClass};
use crate::proj_bundle::{antican_quartic, BundleOnX};
use crate::{frac, int, to_integer, Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FanoFlag {
    Fano,
    StrictlyWeakFano,
    NotWeakFano,
}

/// Whether a sieve step is forced by arithmetic or imported as a cited result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    Arithmetic,
    Cited,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Excluded { reason: String, rule: RuleKind },
    SplitType { splittings: Vec<SplitEntry> },
    StableCandidate { label: String, citation: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub c1: i64,
    pub c2: i64,
    pub verdict: Verdict,
    pub fano_flag: Option<FanoFlag>,
}

impl CandidatePair {
    pub fn is_stable_candidate(&self) -> bool {
        matches!(self.verdict, Verdict::StableCandidate { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub a: i64,
    pub b: i64,
    pub verdict: FanoFlag,
}

/// `O(a) ⊕ O(b)` on the quadric: weak Fano iff `|a − b| ≤ 3`, Fano iff `|a − b| ≤ 2`.
pub fn split_weak_fano(a: i64, b: i64) -> FanoFlag {
    match (a - b).abs() {
        0..=2 => FanoFlag::Fano,
        3 => FanoFlag::StrictlyWeakFano,
        _ => FanoFlag::NotWeakFano,
    }
}

/// Twist `(c₁, c₂)` on the quadric so that `c₁ ∈ {0, −1}`.
pub fn normalize(c1: i64, c2: i64) -> (i64, i64) {
    let n = -(c1 + 1).div_euclid(2);
    let b = BundleOnX::on_quadric(c1, c2).twist(n);
    (b.e1, b.e2)
}

/// Splittings `O(a) ⊕ O(b)`, `a ≤ b`, with `a + b = c₁` and `2ab = c₂`.
pub fn q3_split_table(c1: i64, c2: i64) -> Vec<SplitEntry> {
    if c2 % 2 != 0 {
        return Vec::new();
    }
    let bound = c2.abs() + c1.abs() + 1;
    (-bound..=bound)
        .filter_map(|a| {
            let b = c1 - a;
            (a <= b && 2 * a * b == c2).then(|| SplitEntry {
                a,
                b,
                verdict: split_weak_fano(a, b),
            })
        })
        .collect()
}

struct Labelled {
    c1: i64,
    c2: i64,
    label: &'static str,
    citation: &'static str,
    flag: FanoFlag,
}

const LABELS: [Labelled; 5] = [
    Labelled {
        c1: 0,
        c2: 2,
        label: "null-correlation pull-back",
        citation: "main quadric theorem, item (ii)",
        flag: FanoFlag::Fano,
    },
    Labelled {
        c1: -1,
        c2: 1,
        label: "spinor bundle",
        citation: "main quadric theorem, item (iii)",
        flag: FanoFlag::Fano,
    },
    Labelled {
        c1: -1,
        c2: 2,
        label: "Cayley restriction",
        citation: "main quadric theorem, item (iv)",
        flag: FanoFlag::StrictlyWeakFano,
    },
    Labelled {
        c1: -1,
        c2: 3,
        label: "resolution by S^5 and O(-1)^10",
        citation: "main quadric theorem, item (v)",
        flag: FanoFlag::StrictlyWeakFano,
    },
    Labelled {
        c1: -1,
        c2: 4,
        label: "resolution by O^7 and O(-1)^7",
        citation: "main quadric theorem, item (vi)",
        flag: FanoFlag::StrictlyWeakFano,
    },
];

fn excluded(c1: i64, c2: i64, reason: impl Into<String>, rule: RuleKind) -> CandidatePair {
    CandidatePair {
        c1,
        c2,
        verdict: Verdict::Excluded {
            reason: reason.into(),
            rule,
        },
        fano_flag: None,
    }
}

/// Applies the sieve to one pair of Chern classes.
pub fn q3_verdict(c1: i64, c2: i64) -> CandidatePair {
    if c1 != 0 && c1 != -1 {
        return excluded(c1, c2, "not normalized (c1 must be 0 or -1)", RuleKind::Arithmetic);
    }
    let quartic = antican_quartic(&BundleOnX::on_quadric(c1, c2)).expect("integral on the quadric");
    if quartic <= 0 {
        return excluded(c1, c2, format!("(-K)^4 = {quartic} <= 0"), RuleKind::Arithmetic);
    }
    if c1 == 0 && c2 % 2 != 0 {
        return excluded(c1, c2, "c1 = 0 forces c2 even", RuleKind::Arithmetic);
    }
    if c2 <= 0 {
        let splittings = q3_split_table(c1, c2);
        if splittings.is_empty() {
            return excluded(
                c1,
                c2,
                "c2 <= 0 forces a splitting, and none has these Chern classes",
                RuleKind::Arithmetic,
            );
        }
        let best = splittings
            .iter()
            .map(|s| s.verdict)
            .min_by_key(|f| *f as u8)
            .expect("nonempty");
        if best == FanoFlag::NotWeakFano {
            return excluded(c1, c2, "the only splitting is not weak Fano", RuleKind::Arithmetic);
        }
        return CandidatePair {
            c1,
            c2,
            verdict: Verdict::SplitType { splittings },
            fano_flag: Some(best),
        };
    }
    if (c1, c2) == (0, 4) {
        return excluded(
            c1,
            c2,
            "a conic with splitting type (-d, d), d >= 3, contradicts nefness (cited conic argument)",
            RuleKind::Cited,
        );
    }
    match LABELS.iter().find(|l| l.c1 == c1 && l.c2 == c2) {
        Some(l) => CandidatePair {
            c1,
            c2,
            verdict: Verdict::StableCandidate {
                label: l.label.into(),
                citation: l.citation.into(),
            },
            fano_flag: Some(l.flag),
        },
        None => excluded(c1, c2, "no surviving bundle", RuleKind::Cited),
    }
}

/// Every verdict for normalized `c₁` and `c₂ ∈ [c2_min, c2_max]`.
pub fn q3_sieve(c2_min: i64, c2_max: i64) -> Vec<CandidatePair> {
    [0, -1]
        .into_iter()
        .flat_map(|c1| (c2_min..=c2_max).map(move |c2| q3_verdict(c1, c2)))
        .collect()
}

/// The stable candidates surviving the sieve.
pub fn q3_candidates() -> Vec<CandidatePair> {
    let mut out: Vec<CandidatePair> = q3_sieve(-40, 40)
        .into_iter()
        .filter(CandidatePair::is_stable_candidate)
        .collect();
    out.sort_by_key(|p| (-p.c1, p.c2));
    out
}

/// Largest `t` such that `(−K)³·(ξ − aH) ≤ 0` fails to force vanishing;
/// `H⁰(E(−a)) = 0` for every `a > t`.
pub fn h0_vanishing_threshold(c1: i64, c2: i64) -> Result<Rational> {
    let (c1, c2) = (int(c1), int(c2));
    let den = int(2) * (c1 * c1 - int(2) * c2 + int(27));
    if den <= int(0) {
        return Err(Error::OutOfRange(format!("c1^2 - 2c2 + 27 = {} <= 0", den / int(2))));
    }
    let num = c1 * c1 * c1 - int(2) * c1 * c2 + int(9) * (c1 * c1 + int(3) * c1 + int(3) - int(2) * c2);
    Ok(num / den)
}

/// Smallest integer `a` with `a > t`.
pub fn first_vanishing_twist(c1: i64, c2: i64) -> Result<i64> {
    Ok(h0_vanishing_threshold(c1, c2)?.floor().to_integer() as i64 + 1)
}

/// `(−1 − c₁, (3 − c₁)/2)`: higher cohomology of `E(n)` vanishes from the
/// first threshold on, `i ≥ 1` from the second.
pub fn vanishing_ranges(c1: i64) -> (i64, Rational) {
    (-1 - c1, frac(3 - c1, 2))
}

/// Genera of index-one Fano threefolds admitted by the tables.
pub fn admitted_genus(g: i64) -> bool {
    (2..=12).contains(&g) && g != 11
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index1Row {
    pub d: i64,
    pub s3: i64,
    pub h0: i64,
    /// `s₃ + 4 ≤ g`.
    pub bn_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index1Table {
    pub genus: i64,
    /// `[⌊(g+3)/2⌋, g − 2]`, absent when empty.
    pub range: Option<(i64, i64)>,
    pub rows: Vec<Index1Row>,
}

pub fn index1_c2_range(g: i64) -> Result<Index1Table> {
    if !admitted_genus(g) {
        return Err(Error::OutOfRange(format!("genus {g} not in 2..=12 minus 11")));
    }
    let (lo, hi) = ((g + 3).div_euclid(2), g - 2);
    let rows: Vec<Index1Row> = (lo..=hi)
        .map(|d| {
            let s3 = 2 * g - 2 - 2 * d;
            Index1Row {
                d,
                s3,
                h0: s3 / 2 + 4,
                bn_bound: s3 + 4 <= g,
            }
        })
        .collect();
    Ok(Index1Table {
        genus: g,
        range: (lo <= hi).then_some((lo, hi)),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiRecord {
    pub genus: i64,
    pub c1: i64,
    pub c2: i64,
    pub chi: i64,
}

/// Euler characteristic of a rank-2 bundle with `c₁ ∈ {0, c₁(X)}` on an
/// index-one threefold of genus `g`.
pub fn index1_chi_table(g: i64, c1: i64, c2: i64) -> Result<ChiRecord> {
    if !admitted_genus(g) {
        return Err(Error::OutOfRange(format!("genus {g} not in 2..=12 minus 11")));
    }
    let chi = match c1 {
        1 => g - 1 + 4 - c2,
        0 if c2 % 2 != 0 => return Err(Error::Parity(format!("c1 = 0 needs c2 even, got {c2}"))),
        0 => 2 - c2 / 2,
        _ => return Err(Error::Unsupported(format!("c1 = {c1}; only 0 and 1 are tabulated"))),
    };
    Ok(ChiRecord { genus: g, c1, c2, chi })
}

/// Riemann–Roch cross-check of [`index1_chi_table`].
pub fn index1_chi_rr(g: i64, c1: i64, c2: i64) -> Result<Option<i64>> {
    let m = FanoModel::index_one(g)?;
    Ok(to_integer(&chi(&m, &KClass::rank2(&m, c1, c2))))
}
