//! Expression language for intersection numbers on `P(E)`.
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" INT)*
//! atom    := NUMBER | "xi" | "H" | "K" | "(" sum ")"
//! NUMBER  := INT ("/" INT)?
//! ```
//!
//! `K` abbreviates the anticanonical class `2ξ + (index − c₁)H`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::proj_bundle::{anticanonical, intersection_number, BundleOnX, TautExpr};
use crate::rational::fmt_rational;
use crate::{Error, Rational, Result};

/// Largest exponent accepted by [`to_taut`]; anything above is zero on a fourfold anyway.
pub const MAX_EXPONENT: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Xi,
    H,
    K,
}

impl Symbol {
    pub fn name(&self) -> &'static str {
        match self {
            Symbol::Xi => "xi",
            Symbol::H => "H",
            Symbol::K => "K",
        }
    }
}

/// Abstract syntax. Literals produced by the parser are non-negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn mentions(&self, sym: Symbol) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Sym(s) => *s == sym,
            Expr::Neg(e) | Expr::Pow(e, _) => e.mentions(sym),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.mentions(sym) || b.mentions(sym),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParseErrorKind {
    Syntax,
    UnknownSymbol(String),
    ZeroDenominator,
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{}", render(self))]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub expected: Vec<String>,
    pub found: String,
}

fn render(e: &ParseError) -> String {
    match &e.kind {
        ParseErrorKind::Syntax => format!(
            "syntax error at byte {}: expected one of {}, found {}",
            e.offset,
            e.expected
                .iter()
                .map(|t| format!("`{t}`"))
                .collect::<Vec<_>>()
                .join(", "),
            e.found
        ),
        ParseErrorKind::UnknownSymbol(s) => format!("unknown symbol `{s}` at byte {}; expected xi, H or K", e.offset),
        ParseErrorKind::ZeroDenominator => format!("zero denominator at byte {}", e.offset),
        ParseErrorKind::ExponentTooLarge => format!("exponent above {MAX_EXPONENT} at byte {}", e.offset),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q) => format!("number `{}`", fmt_rational(q)),
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let end = digits(i);
                let num = &src[i..end];
                let syntax = |offset| ParseError {
                    offset,
                    kind: ParseErrorKind::Syntax,
                    expected: vec!["number".into()],
                    found: "an oversized literal".into(),
                };
                if end < bytes.len() && bytes[end] == b'/' && end + 1 < bytes.len() && bytes[end + 1].is_ascii_digit() {
                    let dend = digits(end + 1);
                    let n: i128 = num.parse().map_err(|_| syntax(start))?;
                    let d: i128 = src[end + 1..dend].parse().map_err(|_| syntax(end + 1))?;
                    if d == 0 {
                        return Err(ParseError {
                            offset: end + 1,
                            kind: ParseErrorKind::ZeroDenominator,
                            expected: vec![],
                            found: "0".into(),
                        });
                    }
                    i = dend;
                    out.push((start, Tok::Num(Rational::new(n, d))));
                } else {
                    i = end;
                    out.push((start, Tok::Int(num.parse().map_err(|_| syntax(start))?)));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                i = j;
                out.push((start, Tok::Ident(src[start..j].to_string())));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::Syntax,
                    expected: vec!["(".into(), "number".into(), "symbol".into()],
                    found: format!("`{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Tokens that would have been accepted at the current position.
    expected: Vec<&'static str>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        self.pos += 1;
        self.expected.clear();
        t
    }

    fn check(&mut self, t: &Tok, name: &'static str) -> bool {
        if self.peek() == t {
            true
        } else {
            if !self.expected.contains(&name) {
                self.expected.push(name);
            }
            false
        }
    }

    fn fail(&mut self, extra: &[&'static str]) -> ParseError {
        let mut expected: Vec<String> = self.expected.iter().chain(extra).map(|s| s.to_string()).collect();
        expected.sort();
        expected.dedup();
        ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Syntax,
            expected,
            found: self.peek().describe(),
        }
    }

    fn sum(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            if self.check(&Tok::Plus, "+") {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.check(&Tok::Minus, "-") {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.check(&Tok::Star, "*") {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.check(&Tok::Minus, "-") {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.check(&Tok::Caret, "^") {
            self.bump();
            let at = self.offset();
            match self.peek().clone() {
                Tok::Int(n) => {
                    self.bump();
                    if n > MAX_EXPONENT as u64 {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::ExponentTooLarge,
                            expected: vec![],
                            found: n.to_string(),
                        });
                    }
                    base = Expr::Pow(Box::new(base), n as u32);
                }
                _ => return Err(self.fail(&["integer exponent"])),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(Rational::from_integer(n as i128)))
            }
            Tok::Num(q) => {
                self.bump();
                Ok(Expr::Num(q))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "xi" => Ok(Expr::Sym(Symbol::Xi)),
                    "H" => Ok(Expr::Sym(Symbol::H)),
                    "K" => Ok(Expr::Sym(Symbol::K)),
                    _ => Err(ParseError {
                        offset: at,
                        kind: ParseErrorKind::UnknownSymbol(name.clone()),
                        expected: vec!["H".into(), "K".into(), "xi".into()],
                        found: format!("`{name}`"),
                    }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                if self.check(&Tok::RParen, ")") {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.fail(&[]))
                }
            }
            _ => {
                self.expected.retain(|t| *t == "-");
                Err(self.fail(&["(", "H", "K", "number", "xi"]))
            }
        }
    }
}

pub fn parse(input: &str) -> std::result::Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        expected: Vec::new(),
    };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.fail(&[]));
    }
    Ok(e)
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Mul(..) => PRODUCT,
            Expr::Neg(_) => UNARY,
            Expr::Pow(..) => POWER,
            Expr::Num(_) | Expr::Sym(_) => POWER + 1,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.level() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            Expr::Num(q) => write!(f, "{}", fmt_rational(q))?,
            Expr::Sym(s) => write!(f, "{}", s.name())?,
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, UNARY)?;
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                l.write_at(f, SUM)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                r.write_at(f, PRODUCT)?;
            }
            Expr::Mul(l, r) => {
                l.write_at(f, PRODUCT)?;
                write!(f, "*")?;
                r.write_at(f, UNARY)?;
            }
            Expr::Pow(b, n) => {
                b.write_at(f, POWER)?;
                write!(f, "^{n}")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Prints with the fewest parentheses that [`parse`] needs to rebuild the tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, SUM)
    }
}

/// Expands the expression in the intersection ring of `P(E)`.
pub fn to_taut(expr: &Expr, bundle: &BundleOnX) -> Result<TautExpr> {
    Ok(match expr {
        Expr::Num(q) => TautExpr::constant(*q),
        Expr::Sym(Symbol::Xi) => TautExpr::xi(),
        Expr::Sym(Symbol::H) => TautExpr::h(),
        Expr::Sym(Symbol::K) => anticanonical(bundle),
        Expr::Neg(x) => -&to_taut(x, bundle)?,
        Expr::Add(l, r) => &to_taut(l, bundle)? + &to_taut(r, bundle)?,
        Expr::Sub(l, r) => &to_taut(l, bundle)? - &to_taut(r, bundle)?,
        Expr::Mul(l, r) => &to_taut(l, bundle)? * &to_taut(r, bundle)?,
        Expr::Pow(b, n) => {
            if *n > MAX_EXPONENT {
                return Err(Error::OutOfRange(format!("exponent {n} above {MAX_EXPONENT}")));
            }
            to_taut(b, bundle)?.pow(*n)
        }
    })
}

/// Degree-4 intersection number of the expression on `P(E)`.
pub fn eval_intersection(expr: &Expr, bundle: &BundleOnX) -> Result<Rational> {
    let t = to_taut(expr, bundle)?;
    if let Some(d) = t.max_degree().filter(|d| *d > 4) {
        return Err(Error::DimensionOverflow { degree: d });
    }
    intersection_number(&t, bundle)
}

pub fn eval_str(input: &str, bundle: &BundleOnX) -> Result<Rational> {
    eval_intersection(&parse(input)?, bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::FanoModel;
    use crate::int;
    use proptest::prelude::*;

    #[test]
    fn parses() {
        let e = parse("(2*xi + 3*H)^4").unwrap();
        assert!(matches!(e, Expr::Pow(_, 4)));
        assert!(matches!(parse("xi^2*H^2").unwrap(), Expr::Mul(..)));
        assert!(matches!(parse("-xi^2").unwrap(), Expr::Neg(_)));
        assert_eq!(parse("1/2*xi").unwrap().to_string(), "1/2*xi");
        assert_eq!(parse("((xi))").unwrap(), Expr::Sym(Symbol::Xi));
    }

    #[test]
    fn diagnostics() {
        let e = parse("2*(xi").unwrap_err();
        assert_eq!(e.offset, 5);
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        for t in [")", "*", "+", "-", "^"] {
            assert!(e.expected.contains(&t.to_string()), "{t} in {:?}", e.expected);
        }
        let e = parse("xi + y").unwrap_err();
        assert_eq!((e.offset, e.kind), (5, ParseErrorKind::UnknownSymbol("y".into())));
        assert_eq!(parse("xi^H").unwrap_err().offset, 3);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("xi )").unwrap_err().offset, 3);
        assert_eq!(parse("1/0").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(parse("xi^99").unwrap_err().kind, ParseErrorKind::ExponentTooLarge);
        assert_eq!(parse("xi # H").unwrap_err().offset, 3);
        assert!(parse("2*(xi").unwrap_err().to_string().contains("byte 5"));
    }

    #[test]
    fn evaluates() {
        let b = BundleOnX::on_quadric(0, 2);
        assert_eq!(eval_str("K^4", &b).unwrap(), int(240));
        assert_eq!(eval_str("(2*xi + 3*H)^4", &b).unwrap(), int(240));
        assert_eq!(eval_str("H^4", &b).unwrap(), int(0));
        let g10 = BundleOnX::new(FanoModel::index_one(10).unwrap(), 1, 6);
        assert_eq!(eval_str("xi^4", &g10).unwrap(), int(6));
        assert!(matches!(
            eval_str("xi^3", &b),
            Err(Error::NotHomogeneous { expected: 4 })
        ));
        assert!(matches!(
            eval_str("K^5", &b),
            Err(Error::DimensionOverflow { degree: 5 })
        ));
        assert!(matches!(eval_str("xi^4 + 1", &b), Err(Error::NotHomogeneous { .. })));
        assert_eq!(eval_str("K^3*(xi - 1/2*H)", &b).unwrap(), int(2 * (-23 - 9)));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(crate::frac(n, d))),
            Just(Expr::Sym(Symbol::Xi)),
            Just(Expr::Sym(Symbol::H)),
            Just(Expr::Sym(Symbol::K)),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            ]
        })
    }

    fn arb_linear() -> impl Strategy<Value = String> {
        (-5i64..6, -5i64..6, 0usize..3).prop_map(|(a, b, k)| {
            let sym = ["xi", "H", "K"][k];
            format!("({a}*xi + {b}*H + {sym})").replace("+ -", "- ")
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e, "printed `{}`", printed);
            prop_assert_eq!(reparsed.to_string(), printed);
        }

        #[test]
        fn distributivity(a in arb_linear(), b in arb_linear(), c in arb_linear(), d in arb_linear(),
                          e1 in -1i64..1, e2 in -4i64..5) {
            let bundle = BundleOnX::on_quadric(e1, e2);
            let lhs = eval_str(&format!("{a}*{b}*({c} + {d})^2"), &bundle).unwrap();
            let rhs = eval_str(&format!("{a}*{b}*{c}^2 + 2*{a}*{b}*{c}*{d} + {a}*{b}*{d}^2"), &bundle).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
