//! Recursive-descent parser for both formula languages.
//!
//! ```text
//! formula := 'exists' VAR '.' formula | 'forall' VAR '.' formula
//!          | formula ('&&' | '||' | '->') formula | '!' formula
//!          | '(' formula ')' | 'true' | 'false' | atom
//! atom    := term ('=' | '<=' | '!=') term
//! term    := term ('+' | '-') term | term '*' term | '-' term
//!          | 'conj(' term ')' | VAR | INT | '(' term ')'
//! ```
//!
//! Precedence, tightest first: unary minus, `*`, `+`/`-`, comparisons, `!`,
//! `&&`, `||`, `->` (right associative). Quantifier bodies extend as far
//! right as possible. The real language drops `conj` and adds `<`, `>=`,
//! `>` and `^ INT`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::alg::{AlgAtom, AlgTerm};
use super::real::{RealAtom, Rel};
use super::{Formula, RealFormula};
use crate::formula::AlgFormula;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::var::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Language {
    Alg,
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{symbol}` at {line}:{column} in the {language} language")]
    UnknownSymbol {
        line: usize,
        column: usize,
        symbol: String,
        language: &'static str,
    },
}

impl ParseError {
    fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownSymbol { line, column, .. } => (*line, *column),
        }
    }
}

/// Result of [`parse`](super::parse_alg)-style entry points that accept
/// either language.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Alg(AlgFormula),
    Real(RealFormula),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    Dot,
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Ne,
    Bang,
    AndAnd,
    OrOr,
    Arrow,
    Plus,
    Minus,
    Star,
    Caret,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Int(n) => return write!(f, "`{n}`"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Dot => ".",
            Tok::Eq => "=",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Ne => "!=",
            Tok::Bang => "!",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            Tok::Arrow => "->",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        let next = chars.get(i + 1).copied();
        let two = |a: char, b: char| c == a && next == Some(b);
        let tok = if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Int(s.parse().unwrap()),
                line: l0,
                col: c0,
            });
            continue;
        } else if two('<', '=') {
            advance(2, &mut i, &mut col);
            Tok::Le
        } else if two('>', '=') {
            advance(2, &mut i, &mut col);
            Tok::Ge
        } else if two('!', '=') {
            advance(2, &mut i, &mut col);
            Tok::Ne
        } else if two('&', '&') {
            advance(2, &mut i, &mut col);
            Tok::AndAnd
        } else if two('|', '|') {
            advance(2, &mut i, &mut col);
            Tok::OrOr
        } else if two('-', '>') {
            advance(2, &mut i, &mut col);
            Tok::Arrow
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '!' => Tok::Bang,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                other => {
                    return Err(ParseError::Syntax {
                        line: l0,
                        column: c0,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            advance(1, &mut i, &mut col);
            t
        };
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

const KEYWORDS: &[&str] = &["exists", "forall", "conj", "true", "false"];

/// Language-neutral term tree, lowered after parsing.
#[derive(Clone, Debug)]
enum Raw {
    Var(String),
    Int(BigInt),
    Neg(Box<Raw>),
    Add(Box<Raw>, Box<Raw>),
    Sub(Box<Raw>, Box<Raw>),
    Mul(Box<Raw>, Box<Raw>),
    Pow(Box<Raw>, u32),
    Conj(Box<Raw>),
}

#[derive(Clone, Copy, Debug)]
enum Cmp {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Ne,
}

enum RawFormula {
    True,
    False,
    Atom(Raw, Cmp, Raw),
    Not(Box<RawFormula>),
    And(Vec<RawFormula>),
    Or(Vec<RawFormula>),
    Implies(Box<RawFormula>, Box<RawFormula>),
    Exists(String, Box<RawFormula>),
    Forall(String, Box<RawFormula>),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    lang: Language,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (line, column) = self.here();
        Err(ParseError::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn unknown<T>(&self, symbol: &str) -> PResult<T> {
        let (line, column) = self.here();
        Err(ParseError::UnknownSymbol {
            line,
            column,
            symbol: symbol.to_string(),
            language: match self.lang {
                Language::Alg => "algebra",
                Language::Real => "real",
            },
        })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn formula(&mut self) -> PResult<RawFormula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(RawFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<RawFormula> {
        let mut parts = vec![self.and()?];
        while *self.peek() == Tok::OrOr {
            self.bump();
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RawFormula::Or(parts)
        })
    }

    fn and(&mut self) -> PResult<RawFormula> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::AndAnd {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RawFormula::And(parts)
        })
    }

    fn unary(&mut self) -> PResult<RawFormula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(RawFormula::Not(Box::new(self.unary()?)))
            }
            Tok::Ident(s) if s == "exists" || s == "forall" => {
                self.bump();
                let v = self.var_name()?;
                self.expect(Tok::Dot)?;
                let body = Box::new(self.formula()?);
                Ok(if s == "exists" {
                    RawFormula::Exists(v, body)
                } else {
                    RawFormula::Forall(v, body)
                })
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(RawFormula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(RawFormula::False)
            }
            Tok::LParen => {
                // `(` opens either a term of an atom or a nested formula
                let save = self.pos;
                match self.atom() {
                    Ok(a) => Ok(a),
                    Err(e_atom) => {
                        let atom_pos = self.pos;
                        self.pos = save;
                        self.bump();
                        match self.formula().and_then(|f| {
                            self.expect(Tok::RParen)?;
                            Ok(f)
                        }) {
                            Ok(f) => Ok(f),
                            Err(e_formula) => {
                                let _ = atom_pos;
                                if e_formula.position() >= e_atom.position() {
                                    Err(e_formula)
                                } else {
                                    Err(e_atom)
                                }
                            }
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<RawFormula> {
        let lhs = self.term()?;
        let cmp = match self.peek() {
            Tok::Eq => Cmp::Eq,
            Tok::Le => Cmp::Le,
            Tok::Ne => Cmp::Ne,
            Tok::Lt if self.lang == Language::Real => Cmp::Lt,
            Tok::Ge if self.lang == Language::Real => Cmp::Ge,
            Tok::Gt if self.lang == Language::Real => Cmp::Gt,
            Tok::Lt => return self.unknown("<"),
            Tok::Ge => return self.unknown(">="),
            Tok::Gt => return self.unknown(">"),
            other => return self.error(format!("expected a comparison, found {other}")),
        };
        self.bump();
        let rhs = self.term()?;
        Ok(RawFormula::Atom(lhs, cmp, rhs))
    }

    fn var_name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a variable, found {other}")),
        }
    }

    fn term(&mut self) -> PResult<Raw> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Raw::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Raw::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> PResult<Raw> {
        let mut lhs = self.neg()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Raw::Mul(Box::new(lhs), Box::new(self.neg()?));
        }
        Ok(lhs)
    }

    fn neg(&mut self) -> PResult<Raw> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Raw::Neg(Box::new(self.neg()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Raw> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            if self.lang == Language::Alg {
                return self.unknown("^");
            }
            self.bump();
            return match self.bump() {
                Tok::Int(n) => match n.to_u32() {
                    Some(e) => Ok(Raw::Pow(Box::new(base), e)),
                    None => self.error("exponent too large"),
                },
                other => self.error(format!("expected an exponent, found {other}")),
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Raw> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Raw::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if s == "conj" => {
                if self.lang == Language::Real {
                    return self.unknown("conj");
                }
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Raw::Conj(Box::new(t)))
            }
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => {
                self.error(format!("unexpected keyword `{s}`"))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Raw::Var(s))
            }
            other => self.error(format!("expected a term, found {other}")),
        }
    }
}

fn parse_raw(src: &str, lang: Language) -> PResult<RawFormula> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        lang,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after formula", p.peek()));
    }
    Ok(f)
}

fn lower_alg_term(r: &Raw) -> AlgTerm {
    match r {
        Raw::Var(s) => AlgTerm::var(s),
        Raw::Int(n) => {
            if n.is_zero() {
                AlgTerm::Zero
            } else {
                // integer literals are sugar for 1 + 1 + ... + 1
                let k = n.to_u64().expect("integer literal too large");
                AlgTerm::ones(k)
            }
        }
        Raw::Neg(a) => AlgTerm::neg(lower_alg_term(a)),
        Raw::Add(a, b) => AlgTerm::add(lower_alg_term(a), lower_alg_term(b)),
        Raw::Sub(a, b) => AlgTerm::sub(lower_alg_term(a), lower_alg_term(b)),
        Raw::Mul(a, b) => AlgTerm::mul(lower_alg_term(a), lower_alg_term(b)),
        Raw::Conj(a) => AlgTerm::conj(lower_alg_term(a)),
        Raw::Pow(..) => unreachable!("`^` is rejected in the algebra language"),
    }
}

fn lower_poly(r: &Raw) -> Poly {
    match r {
        Raw::Var(s) => Poly::var(Var::new(s)),
        Raw::Int(n) => Poly::constant(Rational::from_bigint(n.clone())),
        Raw::Neg(a) => -lower_poly(a),
        Raw::Add(a, b) => &lower_poly(a) + &lower_poly(b),
        Raw::Sub(a, b) => &lower_poly(a) - &lower_poly(b),
        Raw::Mul(a, b) => &lower_poly(a) * &lower_poly(b),
        Raw::Pow(a, e) => lower_poly(a).pow(*e),
        Raw::Conj(_) => unreachable!("`conj` is rejected in the real language"),
    }
}

fn lower_alg(f: RawFormula) -> AlgFormula {
    match f {
        RawFormula::True => Formula::True,
        RawFormula::False => Formula::False,
        RawFormula::Atom(a, cmp, b) => {
            let (a, b) = (lower_alg_term(&a), lower_alg_term(&b));
            match cmp {
                Cmp::Eq => Formula::Atom(AlgAtom::Eq(a, b)),
                Cmp::Le => Formula::Atom(AlgAtom::Le(a, b)),
                Cmp::Ne => Formula::not(Formula::Atom(AlgAtom::Eq(a, b))),
                Cmp::Lt | Cmp::Ge | Cmp::Gt => unreachable!(),
            }
        }
        RawFormula::Not(g) => Formula::not(lower_alg(*g)),
        RawFormula::And(gs) => Formula::And(gs.into_iter().map(lower_alg).collect()),
        RawFormula::Or(gs) => Formula::Or(gs.into_iter().map(lower_alg).collect()),
        RawFormula::Implies(a, b) => Formula::implies(lower_alg(*a), lower_alg(*b)),
        RawFormula::Exists(v, g) => Formula::exists(Var::new(&v), lower_alg(*g)),
        RawFormula::Forall(v, g) => Formula::forall(Var::new(&v), lower_alg(*g)),
    }
}

fn lower_real(f: RawFormula) -> RealFormula {
    match f {
        RawFormula::True => Formula::True,
        RawFormula::False => Formula::False,
        RawFormula::Atom(a, cmp, b) => {
            let d = &lower_poly(&a) - &lower_poly(&b);
            Formula::Atom(match cmp {
                Cmp::Eq => RealAtom::new(d, Rel::Eq),
                Cmp::Le => RealAtom::new(d, Rel::Le),
                Cmp::Lt => RealAtom::new(d, Rel::Lt),
                Cmp::Ne => RealAtom::new(d, Rel::Ne),
                Cmp::Ge => RealAtom::ge(d),
                Cmp::Gt => RealAtom::gt(d),
            })
        }
        RawFormula::Not(g) => Formula::not(lower_real(*g)),
        RawFormula::And(gs) => Formula::And(gs.into_iter().map(lower_real).collect()),
        RawFormula::Or(gs) => Formula::Or(gs.into_iter().map(lower_real).collect()),
        RawFormula::Implies(a, b) => Formula::implies(lower_real(*a), lower_real(*b)),
        RawFormula::Exists(v, g) => Formula::exists(Var::new(&v), lower_real(*g)),
        RawFormula::Forall(v, g) => Formula::forall(Var::new(&v), lower_real(*g)),
    }
}

/// Parses a formula of the algebra language.
pub fn parse_alg(src: &str) -> Result<AlgFormula, ParseError> {
    parse_raw(src, Language::Alg).map(lower_alg)
}

/// Parses a formula of the ordered-field language.
pub fn parse_real(src: &str) -> Result<RealFormula, ParseError> {
    parse_raw(src, Language::Real).map(lower_real)
}

/// Parses either language.
pub fn parse(src: &str, lang: Language) -> Result<Parsed, ParseError> {
    match lang {
        Language::Alg => parse_alg(src).map(Parsed::Alg),
        Language::Real => parse_real(src).map(Parsed::Real),
    }
}

fn parse_term_raw(src: &str, lang: Language) -> PResult<Raw> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        lang,
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after term", p.peek()));
    }
    Ok(t)
}

pub fn parse_alg_term(src: &str) -> Result<AlgTerm, ParseError> {
    parse_term_raw(src, Language::Alg).map(|r| lower_alg_term(&r))
}

pub fn parse_real_poly(src: &str) -> Result<Poly, ParseError> {
    parse_term_raw(src, Language::Real).map(|r| lower_poly(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> AlgTerm {
        AlgTerm::var("x")
    }

    #[test]
    fn inverse_formula() {
        let f = parse_alg("exists y. x*y = 1").unwrap();
        let expect = Formula::exists(
            Var::new("y"),
            AlgFormula::eq(AlgTerm::mul(x(), AlgTerm::var("y")), AlgTerm::One),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn conj_atom() {
        assert_eq!(
            parse_alg("conj(x) = x").unwrap(),
            AlgFormula::eq(AlgTerm::conj(x()), x())
        );
    }

    #[test]
    fn integer_sugar() {
        let f = parse_alg("x <= 1+1").unwrap();
        assert_eq!(
            f,
            AlgFormula::le(x(), AlgTerm::add(AlgTerm::One, AlgTerm::One))
        );
        assert_eq!(parse_alg("x <= 2").unwrap(), f);
        assert_eq!(
            parse_alg("x = 0").unwrap(),
            AlgFormula::eq(x(), AlgTerm::Zero)
        );
    }

    #[test]
    fn precedence() {
        let f = parse_alg("!x = 0 && y = 0 || x = y -> false").unwrap();
        let a = AlgFormula::eq(x(), AlgTerm::Zero);
        let b = AlgFormula::eq(AlgTerm::var("y"), AlgTerm::Zero);
        let c = AlgFormula::eq(x(), AlgTerm::var("y"));
        let expect = Formula::implies(
            Formula::Or(vec![Formula::And(vec![Formula::not(a), b]), c]),
            Formula::False,
        );
        assert_eq!(f, expect);
        let t = parse_alg_term("-x*y + x").unwrap();
        assert_eq!(
            t,
            AlgTerm::add(AlgTerm::mul(AlgTerm::neg(x()), AlgTerm::var("y")), x())
        );
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse_alg("(x + 1) * x = 0").unwrap();
        assert!(matches!(
            f,
            Formula::Atom(AlgAtom::Eq(AlgTerm::Mul(..), AlgTerm::Zero))
        ));
        let g = parse_alg("(x = 0 || x = 1) && x <= 1").unwrap();
        assert!(matches!(g, Formula::And(ref v) if v.len() == 2));
        let h = parse_alg("((x) = (1))").unwrap();
        assert_eq!(h, AlgFormula::eq(x(), AlgTerm::One));
    }

    #[test]
    fn ne_is_negated_equality() {
        assert_eq!(
            parse_alg("x != 0").unwrap(),
            Formula::not(AlgFormula::eq(x(), AlgTerm::Zero))
        );
    }

    #[test]
    fn errors_carry_position() {
        match parse_alg("exists y.\n  x*y = ") {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_alg("x # y") {
            Err(ParseError::Syntax {
                line: 1, column: 3, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_alg("exists conj. x = 0").is_err());
        assert!(parse_alg("x = 0 y").is_err());
    }

    #[test]
    fn conj_is_unknown_in_real_language() {
        match parse_real("conj(x) = 0") {
            Err(ParseError::UnknownSymbol { symbol, .. }) => assert_eq!(symbol, "conj"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_alg("x < 1"),
            Err(ParseError::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse_alg("x^2 = 1"),
            Err(ParseError::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn real_atoms() {
        let f = parse_real("exists x. x^2 - 3*x + 2 <= 0 && x > 1").unwrap();
        let s = f.to_string();
        assert_eq!(s, "exists x. x^2 - 3*x + 2 <= 0 && -x + 1 < 0");
        assert_eq!(parse_real(&s).unwrap(), f);
        let g = parse_real("a*x + b = 0").unwrap();
        assert_eq!(g.to_string(), "a*x + b = 0");
    }

    #[test]
    fn parse_entry_dispatch() {
        assert!(matches!(parse("x = 1", Language::Alg), Ok(Parsed::Alg(_))));
        assert!(matches!(
            parse("x = 1", Language::Real),
            Ok(Parsed::Real(_))
        ));
    }
}
