//! Sheaf symbols on the quadric threefold, K-theoretic exactness of
//! resolutions, multiplicity systems and propagation of cohomology through
//! short exact sequences.
//!
//! Exactness is checked on Chern characters only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chow::{chi, ChernData, FanoModel, KClass};
use crate::cohom::GradedDim;
use crate::rational::fmt_rational;
use crate::{int, Error, Rational, Result};

/// `S`, the spinor bundle: rank 2, `c₁ = −1`, `c₂ = 1`.
pub fn spinor_class(model: &FanoModel) -> KClass {
    KClass::rank2(model, -1, 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SheafKind {
    LineBundle,
    Spinor,
    /// `Ω_{P⁴}|_{Q³}`, rank 4.
    OmegaP4Restricted,
    /// `T_{P⁴}|_{Q³}`, rank 4.
    TP4Restricted,
    /// A rank-2 bundle known only through `(c₁, c₂)`.
    Named {
        e1: i64,
        e2: i64,
    },
    /// Kernel of a surjection `O^copies ↠ of`.
    Kernel {
        copies: u32,
        of: Box<SheafSymbol>,
    },
    /// Cokernel of an injection `O^copies ↪ of`.
    Cokernel {
        copies: u32,
        of: Box<SheafSymbol>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SheafSymbol {
    pub kind: SheafKind,
    pub twist: i64,
}

impl SheafSymbol {
    pub fn new(kind: SheafKind, twist: i64) -> Self {
        Self { kind, twist }
    }

    pub fn line(n: i64) -> Self {
        Self::new(SheafKind::LineBundle, n)
    }

    pub fn spinor(n: i64) -> Self {
        Self::new(SheafKind::Spinor, n)
    }

    pub fn omega(n: i64) -> Self {
        Self::new(SheafKind::OmegaP4Restricted, n)
    }

    pub fn tangent(n: i64) -> Self {
        Self::new(SheafKind::TP4Restricted, n)
    }

    pub fn named(e1: i64, e2: i64, n: i64) -> Self {
        Self::new(SheafKind::Named { e1, e2 }, n)
    }

    pub fn twisted(&self, n: i64) -> Self {
        Self {
            kind: self.kind.clone(),
            twist: self.twist + n,
        }
    }
}

impl fmt::Display for SheafSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SheafKind::LineBundle => write!(f, "O")?,
            SheafKind::Spinor => write!(f, "S")?,
            SheafKind::OmegaP4Restricted => write!(f, "Omega")?,
            SheafKind::TP4Restricted => write!(f, "T")?,
            SheafKind::Named { e1, e2 } => write!(f, "E[{e1},{e2}]")?,
            SheafKind::Kernel { copies, of } => write!(f, "Ker({copies},{of})")?,
            SheafKind::Cokernel { copies, of } => write!(f, "Coker({copies},{of})")?,
        }
        if self.twist != 0 {
            write!(f, "({})", self.twist)?;
        }
        Ok(())
    }
}

impl FromStr for SheafSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = SymParser { src: s, pos: 0 };
        let sym = p.symbol()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::UnknownSymbol(s.to_string()));
        }
        Ok(sym)
    }
}

impl Serialize for SheafSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SheafSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

struct SymParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SymParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unknown())
        }
    }

    fn unknown(&self) -> Error {
        Error::UnknownSymbol(self.src.to_string())
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && (*c == '-' || *c == '+')))
            .count();
        let v = rest[..len].parse().map_err(|_| self.unknown())?;
        self.pos += len;
        Ok(v)
    }

    fn copies(&mut self) -> Result<u32> {
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.unknown())
    }

    fn symbol(&mut self) -> Result<SheafSymbol> {
        let kind = if self.eat("Omega") {
            SheafKind::OmegaP4Restricted
        } else if self.eat("Ker(") {
            self.wrapped(|copies, of| SheafKind::Kernel { copies, of })?
        } else if self.eat("Coker(") {
            self.wrapped(|copies, of| SheafKind::Cokernel { copies, of })?
        } else if self.eat("E[") {
            let e1 = self.integer()?;
            self.expect(",")?;
            let e2 = self.integer()?;
            self.expect("]")?;
            SheafKind::Named { e1, e2 }
        } else if self.eat("O") {
            SheafKind::LineBundle
        } else if self.eat("S") {
            SheafKind::Spinor
        } else if self.eat("T") {
            SheafKind::TP4Restricted
        } else {
            return Err(self.unknown());
        };
        let twist = if self.eat("(") {
            let t = self.integer()?;
            self.expect(")")?;
            t
        } else {
            0
        };
        Ok(SheafSymbol { kind, twist })
    }

    fn wrapped(&mut self, build: impl FnOnce(u32, Box<SheafSymbol>) -> SheafKind) -> Result<SheafKind> {
        let copies = self.copies()?;
        self.expect(",")?;
        let inner = self.symbol()?;
        self.expect(")")?;
        Ok(build(copies, Box::new(inner)))
    }
}

/// K-theory class of a symbol on the quadric threefold.
pub fn kclass_of(symbol: &SheafSymbol) -> KClass {
    let m = FanoModel::quadric();
    let base = match &symbol.kind {
        SheafKind::LineBundle => KClass::trivial(1),
        SheafKind::Spinor => spinor_class(&m),
        SheafKind::OmegaP4Restricted => KClass::line(&m, -1).scale(5) - KClass::trivial(1),
        SheafKind::TP4Restricted => KClass::line(&m, 1).scale(5) - KClass::trivial(1),
        SheafKind::Named { e1, e2 } => KClass::rank2(&m, *e1, *e2),
        SheafKind::Kernel { copies, of } => KClass::trivial(*copies as i64) - kclass_of(of),
        SheafKind::Cokernel { copies, of } => kclass_of(of) - KClass::trivial(*copies as i64),
    };
    base.twist(symbol.twist, &m)
}

/// A direct sum `⊕ (mult · symbol)` occupying one slot of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqTerm {
    pub mult: u32,
    pub symbol: SheafSymbol,
}

/// One slot of a sequence; a slot may be a direct sum of terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Slot(pub Vec<SeqTerm>);

impl Slot {
    pub fn single(mult: u32, symbol: SheafSymbol) -> Self {
        Slot(vec![SeqTerm { mult, symbol }])
    }

    pub fn kclass(&self) -> KClass {
        self.0
            .iter()
            .fold(KClass::zero(), |acc, t| acc + kclass_of(&t.symbol).scale(t.mult as i64))
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| {
                if t.mult == 1 {
                    t.symbol.to_string()
                } else {
                    format!("{}^{}", t.symbol, t.mult)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for Slot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for part in split_top_level(s, '+') {
            let part = part.trim();
            let (sym, mult) = match part.rfind('^') {
                Some(i) if !part[i + 1..].contains(')') => {
                    let m: u32 = part[i + 1..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::UnknownSymbol(part.to_string()))?;
                    (&part[..i], m)
                }
                _ => (part, 1),
            };
            if mult == 0 {
                return Err(Error::Invalid(format!("zero multiplicity in `{part}`")));
            }
            terms.push(SeqTerm {
                mult,
                symbol: sym.parse()?,
            });
        }
        Ok(Slot(terms))
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// A sequence of slots asserted to be exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequence {
    pub terms: Vec<Slot>,
}

impl Sequence {
    pub fn new(terms: Vec<Slot>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::Invalid("a sequence needs at least two terms".into()));
        }
        if terms.iter().any(|s| s.0.is_empty() || s.0.iter().any(|t| t.mult == 0)) {
            return Err(Error::Invalid("multiplicities must be at least 1".into()));
        }
        Ok(Self { terms })
    }

    pub fn twisted(&self, n: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|s| {
                    Slot(
                        s.0.iter()
                            .map(|t| SeqTerm {
                                mult: t.mult,
                                symbol: t.symbol.twisted(n),
                            })
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        for s in &self.terms {
            write!(f, " -> {s}")?;
        }
        write!(f, " -> 0")
    }
}

impl FromStr for Sequence {
    type Err = Error;
    /// `0 -> O(-2) -> O(-1)^4 -> O^5 -> E[0,2](1) -> 0`; the outer zeros are optional.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts: Vec<&str> = s.split("->").map(str::trim).collect();
        if parts.first() == Some(&"0") {
            parts.remove(0);
        }
        if parts.last() == Some(&"0") {
            parts.pop();
        }
        Sequence::new(parts.into_iter().map(str::parse).collect::<Result<_>>()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub sequence: String,
    pub residue: KClass,
    /// Indices `0..4` of Chern-character components that fail to cancel.
    pub nonzero_components: Vec<usize>,
    pub exact: bool,
}

/// Alternating sum of the slots' classes, which vanishes for an exact sequence.
pub fn alternating_sum(seq: &Sequence) -> KClass {
    seq.terms.iter().enumerate().fold(KClass::zero(), |acc, (i, s)| {
        let k = s.kclass();
        if i % 2 == 0 {
            acc + k
        } else {
            acc - k
        }
    })
}

pub fn check_exact(seq: &Sequence) -> ExactnessReport {
    let residue = alternating_sum(seq);
    let nonzero_components: Vec<usize> = (0..4).filter(|i| !residue.ch.0[*i].is_zero()).collect();
    ExactnessReport {
        sequence: seq.to_string(),
        residue,
        exact: nonzero_components.is_empty(),
        nonzero_components,
    }
}

/// Multiplicity of one template slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Mult {
    Known(u32),
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateTerm {
    pub mult: Mult,
    pub symbol: SheafSymbol,
}

/// A sequence whose slots are single symbols with possibly unknown
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub terms: Vec<TemplateTerm>,
}

impl Template {
    pub fn unknowns(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for t in &self.terms {
            if let Mult::Unknown(n) = &t.mult {
                if !names.contains(n) {
                    names.push(n.clone());
                }
            }
        }
        names
    }

    pub fn instantiate(&self, assignment: &BTreeMap<String, u64>) -> Result<Sequence> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let m = match &t.mult {
                    Mult::Known(m) => *m as u64,
                    Mult::Unknown(n) => *assignment.get(n).ok_or_else(|| Error::Missing(n.clone()))?,
                };
                Ok(Slot::single(m as u32, t.symbol.clone()))
            })
            .collect::<Result<_>>()?;
        Sequence::new(terms)
    }
}

/// Which additive invariants the solver must balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Constraints {
    #[default]
    RankAndC1,
    FullCh,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SolveOutcome {
    Unique {
        assignment: BTreeMap<String, u64>,
    },
    NoSolution {
        reason: String,
    },
    NonUnique {
        free_parameters: usize,
        samples: Vec<BTreeMap<String, u64>>,
    },
}

impl SolveOutcome {
    pub fn unique(self) -> Result<BTreeMap<String, u64>> {
        match self {
            SolveOutcome::Unique { assignment } => Ok(assignment),
            SolveOutcome::NoSolution { reason } => Err(Error::Invalid(format!("no solution: {reason}"))),
            SolveOutcome::NonUnique { free_parameters, .. } => {
                Err(Error::Ambiguous(format!("{free_parameters} free parameter(s)")))
            }
        }
    }
}

fn invariants(k: &KClass, c: Constraints) -> Vec<Rational> {
    let d: ChernData = k.chern(&FanoModel::quadric());
    match c {
        Constraints::RankAndC1 => vec![d.rank, d.c1],
        Constraints::FullCh => k.ch.0.to_vec(),
    }
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|i| !rows[*i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solves the linear system forcing the alternating sum's invariants to
/// vanish. Multiplicities must be integers `≥ 1`. Underdetermined systems are
/// reported with samples from a box search over `[1, SAMPLE_BOX]`.
pub fn solve_multiplicities(template: &Template, constraints: Constraints) -> SolveOutcome {
    const SAMPLE_BOX: u64 = 30;
    let names = template.unknowns();
    let n = names.len();
    let neqs = match constraints {
        Constraints::RankAndC1 => 2,
        Constraints::FullCh => 4,
    };
    // Row layout: coefficients of the unknowns, then the constant term.
    let mut rows = vec![vec![Rational::zero(); n + 1]; neqs];
    for (i, t) in template.terms.iter().enumerate() {
        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        let inv = invariants(&kclass_of(&t.symbol), constraints);
        for (eq, v) in inv.iter().enumerate() {
            match &t.mult {
                Mult::Known(m) => rows[eq][n] -= sign * *v * int(*m as i64),
                Mult::Unknown(name) => {
                    let j = names.iter().position(|x| x == name).expect("listed");
                    rows[eq][j] += sign * *v;
                }
            }
        }
    }
    let pivots = rref(&mut rows, n + 1);
    if pivots.contains(&n) {
        return SolveOutcome::NoSolution {
            reason: "the invariant equations are inconsistent".into(),
        };
    }
    if pivots.len() < n {
        let samples = box_search(template, &names, constraints, SAMPLE_BOX);
        if samples.is_empty() {
            return SolveOutcome::NoSolution {
                reason: format!("no integer solution with all multiplicities in [1, {SAMPLE_BOX}]"),
            };
        }
        return SolveOutcome::NonUnique {
            free_parameters: n - pivots.len(),
            samples,
        };
    }
    let mut assignment = BTreeMap::new();
    for (r, col) in pivots.iter().enumerate() {
        let v = rows[r][n];
        if !v.is_integer() || v < Rational::one() {
            return SolveOutcome::NoSolution {
                reason: format!("{} = {} is not an integer ≥ 1", names[*col], fmt_rational(&v)),
            };
        }
        assignment.insert(names[*col].clone(), v.to_integer() as u64);
    }
    SolveOutcome::Unique { assignment }
}

fn box_search(template: &Template, names: &[String], c: Constraints, bound: u64) -> Vec<BTreeMap<String, u64>> {
    const MAX_SAMPLES: usize = 5;
    let mut out = Vec::new();
    let mut current = vec![1u64; names.len()];
    loop {
        let assignment: BTreeMap<String, u64> = names.iter().cloned().zip(current.iter().copied()).collect();
        if let Ok(seq) = template.instantiate(&assignment) {
            let res = alternating_sum(&seq);
            if invariants(&res, c).iter().all(Zero::is_zero) {
                out.push(assignment);
                if out.len() == MAX_SAMPLES {
                    return out;
                }
            }
        }
        let Some(i) = current.iter().position(|v| *v < bound) else {
            return out;
        };
        current[i] += 1;
        for v in current.iter_mut().take(i) {
            *v = 1;
        }
    }
}

/// Position of an entry in an exact triangle `A → B → C → A[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Entry {
    Known(GradedDim),
    /// The value solved for in the preceding triangle of the chain.
    Previous,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub label: String,
    pub a: Entry,
    pub b: Entry,
    pub c: Entry,
}

fn degrees(gs: &[&GradedDim]) -> Vec<i32> {
    let mut ds: Vec<i32> = gs
        .iter()
        .flat_map(|g| g.support().flat_map(|i| [i - 1, i, i + 1]))
        .collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

/// Solves one triangle from its two known vertices, provided the long exact
/// sequence forces every connecting map to vanish.
pub fn solve_triangle(a: Option<&GradedDim>, b: Option<&GradedDim>, c: Option<&GradedDim>) -> Result<GradedDim> {
    let mut out = GradedDim::zero();
    match (a, b, c) {
        (Some(a), Some(b), None) => {
            for i in degrees(&[a, b]) {
                if a.get(i) * b.get(i) != 0 {
                    return Err(Error::Ambiguous(format!("A and B both live in degree {i}")));
                }
                out.set(i, b.get(i) + a.get(i + 1));
            }
        }
        (None, Some(b), Some(c)) => {
            for i in degrees(&[b, c]) {
                if b.get(i) * c.get(i) != 0 {
                    return Err(Error::Ambiguous(format!("B and C both live in degree {i}")));
                }
                out.set(i, c.get(i - 1) + b.get(i));
            }
        }
        (Some(a), None, Some(c)) => {
            for i in degrees(&[a, c]) {
                if c.get(i) * a.get(i + 1) != 0 {
                    return Err(Error::Ambiguous(format!(
                        "connecting map from degree {i} may be nonzero"
                    )));
                }
                out.set(i, a.get(i) + c.get(i));
            }
        }
        _ => return Err(Error::Invalid("a triangle needs exactly one unknown vertex".into())),
    }
    Ok(out)
}

/// Runs a chain of triangles, each feeding its solution to the next as
/// [`Entry::Previous`]; returns every intermediate solution.
pub fn rgamma_propagate(chain: &[Triangle]) -> Result<Vec<GradedDim>> {
    let mut solved: Vec<GradedDim> = Vec::new();
    for t in chain {
        let resolve = |e: &Entry| -> Result<Option<GradedDim>> {
            match e {
                Entry::Known(g) => Ok(Some(g.clone())),
                Entry::Previous => solved
                    .last()
                    .cloned()
                    .map(Some)
                    .ok_or_else(|| Error::Invalid(format!("{}: no previous triangle", t.label))),
                Entry::Unknown => Ok(None),
            }
        };
        let (a, b, c) = (resolve(&t.a)?, resolve(&t.b)?, resolve(&t.c)?);
        let g = solve_triangle(a.as_ref(), b.as_ref(), c.as_ref()).map_err(|e| match e {
            Error::Ambiguous(m) => Error::Ambiguous(format!("{}: {m}", t.label)),
            other => other,
        })?;
        solved.push(g);
    }
    if solved.is_empty() {
        return Err(Error::Invalid("empty chain".into()));
    }
    Ok(solved)
}

/// The Koszul-type chain computing `RΓ(Y, O_Y(D))` from line bundles
/// `3L₁ − aL₂` on `Fl(5; 2, 1)`.
pub fn ideal_resolution_chain() -> Result<Vec<Triangle>> {
    use crate::cohom::flag_rgamma;
    let f = flag_rgamma;
    Ok(vec![
        Triangle {
            label: "O(3L1-5L2) -> O(3L1-3L2) + O(3L1-4L2)^2 -> Im(alpha)(3L1-L2)".into(),
            a: Entry::Known(f(5)?),
            b: Entry::Known(f(3)?.direct_sum(&f(4)?.times(2))),
            c: Entry::Unknown,
        },
        Triangle {
            label: "Im(alpha)(3L1-L2) -> O(3L1-2L2)^2 + O(3L1-3L2) -> I_Y(3L1-L2)".into(),
            a: Entry::Previous,
            b: Entry::Known(f(2)?.times(2).direct_sum(&f(3)?)),
            c: Entry::Unknown,
        },
        Triangle {
            label: "I_Y(3L1-L2) -> O(3L1-L2) -> O_Y(D)".into(),
            a: Entry::Previous,
            b: Entry::Known(f(1)?),
            c: Entry::Unknown,
        },
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RgammaCheck {
    pub claimed: GradedDim,
    pub claimed_chi: i64,
    #[serde(with = "crate::rational::serde_rational")]
    pub computed_chi: Rational,
    pub consistent: bool,
}

/// Compares the Euler characteristic of a claimed `RΓ` with Riemann–Roch.
pub fn verify_claimed_rgamma(class: &KClass, claimed: &GradedDim) -> RgammaCheck {
    let computed = chi(&FanoModel::quadric(), class);
    let claimed_chi = claimed.euler();
    RgammaCheck {
        claimed: claimed.clone(),
        claimed_chi,
        computed_chi: computed,
        consistent: computed == int(claimed_chi),
    }
}

/// A named resolution to be checked for K-theoretic exactness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub sequence: Sequence,
}

fn entry(id: &str, description: &str, seq: &str) -> CatalogEntry {
    CatalogEntry {
        id: id.into(),
        description: description.into(),
        sequence: seq.parse().expect("catalog sequences parse"),
    }
}

/// Resolutions of the classified bundles and the auxiliary sequences used
/// alongside them.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry(
            "split",
            "O(-2)+O(1) as an extension",
            "0 -> O(-2) -> E[-1,-4] -> O(1) -> 0",
        ),
        entry(
            "null-correlation",
            "pull-back of the null-correlation bundle, (c1,c2) = (0,2)",
            "0 -> O(-2) -> O(-1)^4 -> O^5 -> E[0,2](1) -> 0",
        ),
        entry(
            "spinor",
            "spinor bundle, (c1,c2) = (-1,1)",
            "0 -> S -> O^4 -> S(1) -> 0",
        ),
        entry(
            "cayley",
            "restricted Cayley bundle, (c1,c2) = (-1,2)",
            "0 -> O(-2) -> O(-1)^5 -> O^2 + S^2 -> E[-1,2](1) -> 0",
        ),
        entry(
            "c2-three",
            "bundle with (c1,c2) = (-1,3)",
            "0 -> O(-2)^2 -> O(-1)^10 -> S^5 -> E[-1,3](1) -> 0",
        ),
        entry(
            "c2-four",
            "bundle with (c1,c2) = (-1,4)",
            "0 -> O(-2)^2 -> O(-1)^7 -> O^7 -> E[-1,4](2) -> 0",
        ),
        entry(
            "euler-p4",
            "restricted Euler sequence of P^4",
            "0 -> Omega(2) -> O(1)^5 -> O(2) -> 0",
        ),
        entry(
            "euler-p4-tangent",
            "restricted Euler sequence of P^4, tangent form",
            "0 -> O(-2) -> O(-1)^5 -> T(-2) -> 0",
        ),
        entry(
            "c2-four-kernel",
            "kernel K of O^7 -> E(2) for (c1,c2) = (-1,4)",
            "0 -> O(-2)^2 -> O(-1)^7 -> Ker(7,E[-1,4](2)) -> 0",
        ),
        entry(
            "c2-three-short",
            "bundle with (c1,c2) = (-1,3) as a kernel of S(1)^5 -> Omega(2)^2",
            "0 -> E[-1,3] -> S(1)^5 -> Omega(2)^2 -> 0",
        ),
        entry(
            "cayley-torsion",
            "torsion quotient L_H = E(1)/O^2 for (c1,c2) = (-1,2)",
            "0 -> O(-2) -> O(-1)^5 -> S^2 -> Coker(2,E[-1,2](1)) -> 0",
        ),
    ]
}

/// Helpers shared by the multiplicity examples.
pub mod templates {
    use super::*;

    fn known(m: u32, s: &str) -> TemplateTerm {
        TemplateTerm {
            mult: Mult::Known(m),
            symbol: s.parse().expect("valid symbol"),
        }
    }

    fn unknown(name: &str, s: &str) -> TemplateTerm {
        TemplateTerm {
            mult: Mult::Unknown(name.into()),
            symbol: s.parse().expect("valid symbol"),
        }
    }

    /// `0 → O(−2) → O(−1)^x → S^y → L_H → 0` with `L_H = E(1)/O²`, `E = (−1, 2)`.
    pub fn cayley_torsion() -> Template {
        Template {
            terms: vec![
                known(1, "O(-2)"),
                unknown("x", "O(-1)"),
                unknown("y", "S"),
                known(1, "Coker(2,E[-1,2](1))"),
            ],
        }
    }

    /// `0 → E → S(1)^a → Ω(2)^b → 0` with `E = (−1, 3)`.
    pub fn c2_three_short() -> Template {
        Template {
            terms: vec![known(1, "E[-1,3]"), unknown("a", "S(1)"), unknown("b", "Omega(2)")],
        }
    }

    /// `0 → O(−1)^m → O^m → 0`, balanced only by `m = 0`.
    pub fn degenerate() -> Template {
        Template {
            terms: vec![unknown("m", "O(-1)"), unknown("m", "O")],
        }
    }
}

/// Absolute size of a residue, used for reporting.
pub fn residue_norm(k: &KClass) -> Rational {
    k.ch.0.iter().map(|c| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;
    use proptest::prelude::*;

    #[test]
    fn symbol_classes() {
        let m = FanoModel::quadric();
        let s = kclass_of(&SheafSymbol::spinor(0));
        assert_eq!(s.ch.0, [int(2), int(-1), int(0), frac(1, 6)]);
        for n in -4..=4 {
            assert_eq!(kclass_of(&SheafSymbol::line(n)), KClass::line(&m, n));
        }
        let om = kclass_of(&SheafSymbol::omega(2)).chern(&m);
        assert_eq!((om.rank, om.c1), (int(4), int(3)));
        let lh = kclass_of(&"Coker(2,E[-1,2](1))".parse().unwrap()).chern(&m);
        assert_eq!((lh.rank, lh.c1), (int(0), int(1)));
    }

    #[test]
    fn symbol_text_roundtrip() {
        for s in [
            "O",
            "O(-1)",
            "S(2)",
            "Omega(2)",
            "T(-2)",
            "E[-1,4](2)",
            "Ker(7,E[-1,4](2))",
            "Coker(2,E[-1,2](1))(-1)",
        ] {
            let sym: SheafSymbol = s.parse().unwrap();
            assert_eq!(sym.to_string(), s);
        }
        for bad in ["X", "O(", "E[1]", "Ker(-1,O)", "O(1)x"] {
            assert!(
                matches!(bad.parse::<SheafSymbol>(), Err(Error::UnknownSymbol(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn catalog_is_exact() {
        for e in catalog() {
            let r = check_exact(&e.sequence);
            assert!(r.exact, "{}: residue {:?}", e.id, r.residue);
        }
    }

    #[test]
    fn trivial_and_broken_sequences() {
        let s: Sequence = "0 -> S(3) -> S(3) -> 0".parse().unwrap();
        assert!(check_exact(&s).exact);
        let bad: Sequence = "0 -> O(-2) -> O(-1)^4 -> O^5 -> E[0,3](1) -> 0".parse().unwrap();
        let r = check_exact(&bad);
        assert!(!r.exact);
        assert_eq!(r.nonzero_components, vec![2, 3]);
        assert!(Sequence::from_str("0 -> O -> 0").is_err());
        assert!(Sequence::from_str("O^0 -> O").is_err());
    }

    #[test]
    fn multiplicity_systems() {
        let a = solve_multiplicities(&templates::cayley_torsion(), Constraints::RankAndC1)
            .unique()
            .unwrap();
        assert_eq!((a["x"], a["y"]), (5, 2));
        let b = solve_multiplicities(&templates::c2_three_short(), Constraints::RankAndC1)
            .unique()
            .unwrap();
        assert_eq!((b["a"], b["b"]), (5, 2));
        let full = solve_multiplicities(&templates::c2_three_short(), Constraints::FullCh)
            .unique()
            .unwrap();
        assert_eq!(full, b);
        assert!(matches!(
            solve_multiplicities(&templates::degenerate(), Constraints::RankAndC1),
            SolveOutcome::NoSolution { .. }
        ));
    }

    #[test]
    fn underdetermined_and_inconsistent() {
        let t = Template {
            terms: vec![
                TemplateTerm {
                    mult: Mult::Unknown("p".into()),
                    symbol: SheafSymbol::line(0),
                },
                TemplateTerm {
                    mult: Mult::Unknown("q".into()),
                    symbol: SheafSymbol::line(0),
                },
                TemplateTerm {
                    mult: Mult::Unknown("r".into()),
                    symbol: SheafSymbol::line(0),
                },
            ],
        };
        match solve_multiplicities(&t, Constraints::RankAndC1) {
            SolveOutcome::NonUnique {
                free_parameters,
                samples,
            } => {
                assert_eq!(free_parameters, 2);
                assert!(samples.iter().all(|s| s["p"] + s["r"] == s["q"]));
            }
            other => panic!("{other:?}"),
        }
        let t = Template {
            terms: vec![
                TemplateTerm {
                    mult: Mult::Known(1),
                    symbol: SheafSymbol::line(1),
                },
                TemplateTerm {
                    mult: Mult::Unknown("x".into()),
                    symbol: SheafSymbol::line(0),
                },
            ],
        };
        assert!(matches!(
            solve_multiplicities(&t, Constraints::RankAndC1),
            SolveOutcome::NoSolution { .. }
        ));
    }

    #[test]
    fn solved_templates_balance() {
        for t in [templates::cayley_torsion(), templates::c2_three_short()] {
            let a = solve_multiplicities(&t, Constraints::RankAndC1).unique().unwrap();
            let res = alternating_sum(&t.instantiate(&a).unwrap());
            assert!(invariants(&res, Constraints::RankAndC1).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn propagation() {
        let out = rgamma_propagate(&ideal_resolution_chain().unwrap()).unwrap();
        assert_eq!(out[0], GradedDim::concentrated(3, 2));
        assert_eq!(out[1], GradedDim::concentrated(2, 2));
        assert_eq!(out[2], GradedDim::concentrated(1, 2));

        let x = GradedDim::from_vec(&[1, 0, 4]);
        let z = GradedDim::zero();
        assert_eq!(solve_triangle(Some(&z), Some(&x), None).unwrap(), x);
        assert_eq!(solve_triangle(Some(&x), Some(&z), None).unwrap(), x.shift(1));
        assert_eq!(solve_triangle(None, Some(&z), Some(&x)).unwrap(), x.shift(-1));
        assert_eq!(solve_triangle(Some(&x), None, Some(&z)).unwrap(), x);
        let one = GradedDim::concentrated(1, 1);
        assert!(matches!(
            solve_triangle(Some(&one), Some(&one), None),
            Err(Error::Ambiguous(_))
        ));
        assert!(solve_triangle(Some(&one), None, None).is_err());
    }

    #[test]
    fn claimed_rgamma() {
        let m = FanoModel::quadric();
        let e2 = KClass::rank2(&m, -1, 2).twist(1, &m);
        assert!(verify_claimed_rgamma(&e2, &GradedDim::from_vec(&[2])).consistent);
        let e = KClass::rank2(&m, -1, 4);
        let ext = GradedDim::from_vec(&[1, 18, 0, 0]);
        assert!(verify_claimed_rgamma(&e.dual().tensor(&e, &m), &ext).consistent);
        let bad = verify_claimed_rgamma(&e.twist(-2, &m), &GradedDim::concentrated(2, 21));
        assert!(!bad.consistent);
        assert_eq!((bad.claimed_chi, bad.computed_chi), (21, int(3)));
    }

    #[test]
    fn json_shape() {
        let s: Sequence = serde_json::from_str(
            r#"{"terms":[[{"mult":5,"symbol":"O(-1)"}],[{"mult":1,"symbol":"Omega(0)"},{"mult":1,"symbol":"O"}]]}"#,
        )
        .unwrap();
        assert_eq!(s.terms.len(), 2);
        assert!(check_exact(&s).exact);
        let back = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Sequence>(&back).unwrap(), s);
    }

    proptest! {
        #[test]
        fn residue_twist_invariant(idx in 0usize..11, n in -5i64..5) {
            let e = &catalog()[idx];
            let r0 = check_exact(&e.sequence);
            let r1 = check_exact(&e.sequence.twisted(n));
            prop_assert_eq!(r0.exact, r1.exact);
        }

        #[test]
        fn broken_residue_twist_invariant(k in -3i64..3, e2 in -6i64..6, n in -5i64..5) {
            let s: Sequence = format!("0 -> O(-2) -> O(-1)^4 -> O^5 -> E[0,{e2}]({k}) -> 0").parse().unwrap();
            let m = FanoModel::quadric();
            prop_assert_eq!(check_exact(&s.twisted(n)).residue, check_exact(&s).residue.twist(n, &m));
        }
    }
}
