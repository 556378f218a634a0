//! Expression syntax:
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' NAT)?
//! atom   := RATIONAL | GEN | '(' expr ')' | 'ox' '(' expr ',' expr ')' | 'inv' '(' expr ')'
//! GEN    := ('p' | 'q' | 'x' | 'y') NAT?
//! ```

use std::fmt;

use npa_core::algebra::Element;
use npa_core::linalg::Rat;
use npa_core::localization::LocElement;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::context::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Num(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => return err(pos, format!("unexpected character '{c}'")),
            }
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Num(Rat),
    Gen { letter: char, index: usize, pos: Pos },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Ox(Box<Expr>, Box<Expr>, Pos),
    Inv(Box<Expr>, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let (t, pos) = self.bump();
        if t == want {
            Ok(())
        } else {
            err(pos, format!("expected {want}, found {t}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let mut acc = self.term()?;
        if neg {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return err(self.pos(), "missing '*' between factors");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(atom);
        }
        self.bump();
        match self.bump() {
            (Tok::Num(n), pos) => {
                let e = u32::try_from(n).or_else(|_| err(pos, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(atom), e))
            }
            (t, pos) => err(pos, format!("expected a natural exponent, found {t}")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Num(Rat::from_integer(n)));
                }
                self.bump();
                match self.bump() {
                    (Tok::Num(d), dpos) if d.is_zero() => err(dpos, "zero denominator"),
                    (Tok::Num(d), _) => Ok(Expr::Num(Rat::new(n, d))),
                    (t, dpos) => err(dpos, format!("expected a denominator, found {t}")),
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "ox" => {
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Ox(Box::new(a), Box::new(b), pos))
            }
            Tok::Ident(name) if name == "inv" => {
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Inv(Box::new(a), pos))
            }
            Tok::Ident(name) => generator(&name, pos),
            t => err(pos, format!("expected an expression, found {t}")),
        }
    }
}

fn generator(name: &str, pos: Pos) -> Result<Expr, ParseError> {
    let mut chars = name.chars();
    let letter = chars.next().expect("identifiers are nonempty");
    let rest = chars.as_str();
    let known = matches!(letter, 'p' | 'q' | 'x' | 'y');
    if !known || !rest.chars().all(|c| c.is_ascii_digit()) {
        let hint = if known && rest.chars().any(|c| c.is_ascii_alphabetic()) {
            " (products need an explicit '*')"
        } else {
            ""
        };
        return err(pos, format!("unknown generator '{name}'{hint}"));
    }
    let index = if rest.is_empty() {
        1
    } else {
        rest.parse().or_else(|_| err(pos, format!("bad index in '{name}'")))?
    };
    Ok(Expr::Gen { letter, index, pos })
}

fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    match p.bump() {
        (Tok::End, _) => Ok(e),
        (t, pos) => err(pos, format!("unexpected {t}")),
    }
}

/// A polynomial, or an element of the localization when the context has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(Element),
    Loc(LocElement),
}

impl Value {
    fn into_loc(self, ctx: &Context, pos: Pos) -> Result<LocElement, ParseError> {
        match self {
            Value::Loc(l) => Ok(l),
            Value::Poly(a) => {
                let g = ctx.loc.as_ref().expect("only called in localized contexts");
                LocElement::embed(&a, g).or_else(|e| err(pos, e.to_string()))
            }
        }
    }

    /// The polynomial this value equals, if any.
    pub fn polynomial(&self) -> Option<Element> {
        match self {
            Value::Poly(a) => Some(a.clone()),
            Value::Loc(l) => l.as_polynomial().cloned(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(a) => write!(f, "{a}"),
            Value::Loc(l) => write!(f, "{}", format_loc(l)),
        }
    }
}

/// Prints a localized element in the input syntax, e.g. `-x*inv(y)^2`.
pub fn format_loc(l: &LocElement) -> String {
    let num = l.numerator();
    let k = l.denom_exp();
    if k == 0 {
        return num.to_string();
    }
    let den = match k {
        1 => format!("inv({})", l.denom_base()),
        _ => format!("inv({})^{k}", l.denom_base()),
    };
    if num.is_constant() {
        let c = num.coeff(&npa_core::algebra::Mono::one(num.algebra().n_pairs()));
        return if c.is_one() {
            den
        } else if (-c.clone()).is_one() {
            format!("-{den}")
        } else {
            format!("{c}*{den}")
        };
    }
    if num.len() == 1 {
        format!("{num}*{den}")
    } else {
        format!("({num})*{den}")
    }
}

struct Eval<'a> {
    ctx: &'a Context,
}

impl Eval<'_> {
    fn binary(
        &self,
        a: Value,
        b: Value,
        pos: Pos,
        poly: impl Fn(&Element, &Element) -> npa_core::Result<Element>,
        loc: impl Fn(&LocElement, &LocElement) -> npa_core::Result<LocElement>,
    ) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Poly(a), Value::Poly(b)) => poly(&a, &b).map(Value::Poly).or_else(|e| err(pos, e.to_string())),
            (a, b) => {
                let (a, b) = (a.into_loc(self.ctx, pos)?, b.into_loc(self.ctx, pos)?);
                loc(&a, &b).map(Value::Loc).or_else(|e| err(pos, e.to_string()))
            }
        }
    }

    fn eval(&self, e: &Expr, pos: Pos) -> Result<Value, ParseError> {
        let alg = &self.ctx.alg;
        match e {
            Expr::Num(c) => Ok(Value::Poly(alg.constant(c.clone()))),
            Expr::Gen { letter, index, pos } => {
                let (lp, lq) = alg.letters();
                let n = alg.n_pairs();
                if *letter != lp && *letter != lq {
                    return err(*pos, format!("unknown generator '{letter}' for {} (use {lp} and {lq})", alg.label()));
                }
                if *index == 0 || *index > n {
                    return err(*pos, format!("index {index} out of range 1..={n} for {}", alg.label()));
                }
                let g = if *letter == lp { alg.p(index - 1) } else { alg.q(index - 1) };
                Ok(Value::Poly(g))
            }
            Expr::Neg(a) => Ok(match self.eval(a, pos)? {
                Value::Poly(a) => Value::Poly(-&a),
                Value::Loc(l) => Value::Loc(l.neg()),
            }),
            Expr::Add(a, b) => self.binary(self.eval(a, pos)?, self.eval(b, pos)?, pos, Element::try_add, LocElement::try_add),
            Expr::Sub(a, b) => self.binary(self.eval(a, pos)?, self.eval(b, pos)?, pos, Element::try_sub, LocElement::try_sub),
            Expr::Mul(a, b) => self.binary(self.eval(a, pos)?, self.eval(b, pos)?, pos, Element::try_mul, LocElement::try_mul),
            Expr::Pow(a, k) => Ok(match self.eval(a, pos)? {
                Value::Poly(a) => Value::Poly(a.pow(*k)),
                Value::Loc(l) => Value::Loc(l.pow(*k)),
            }),
            Expr::Ox(a, b, pos) => {
                let Some(t) = &self.ctx.tensor else {
                    return err(*pos, format!("ox(...) needs a tensor algebra, not {}", alg.label()));
                };
                let a = polynomial_in(&t.left, a, *pos)?;
                let b = polynomial_in(&t.right, b, *pos)?;
                t.spec.tensor_elem(&a, &b).map(Value::Poly).or_else(|e| err(*pos, e.to_string()))
            }
            Expr::Inv(a, pos) => {
                let Some(g) = &self.ctx.loc else {
                    return err(*pos, format!("inv(...) needs a localized algebra, not {}", alg.label()));
                };
                let Some(a) = self.eval(a, *pos)?.polynomial() else {
                    return err(*pos, "inv(...) takes a polynomial argument");
                };
                invert_power(&a, g).ok_or(()).or_else(|_| {
                    err(*pos, format!("inv({a}) is not defined: only scalar multiples of powers of {g} are inverted"))
                })
            }
        }
    }
}

fn polynomial_in(ctx: &Context, e: &Expr, pos: Pos) -> Result<Element, ParseError> {
    match (Eval { ctx }).eval(e, pos)? {
        Value::Poly(a) => Ok(a),
        Value::Loc(_) => err(pos, "tensor factors must be polynomials"),
    }
}

/// `a^-1` for `a = c g^k`.
fn invert_power(a: &Element, g: &Element) -> Option<Value> {
    let (da, dg) = (a.degree().finite()?, g.degree().finite()?);
    if dg == 0 || da % dg != 0 {
        return None;
    }
    let k = da / dg;
    let gk = g.pow(k);
    let ((m, c), (mg, cg)) = (a.leading()?, gk.leading()?);
    if m != mg {
        return None;
    }
    let c = c / cg;
    if gk.scale(&c) != *a {
        return None;
    }
    let inv = LocElement::inverse_power(g, k).ok()?;
    Some(Value::Loc(inv.scale(&(Rat::one() / c))))
}

/// Values in a localized context are always returned as `Value::Loc`.
pub fn parse_value(src: &str, ctx: &Context) -> Result<Value, ParseError> {
    let e = parse(src)?;
    let pos = Pos { line: 1, col: 1 };
    let v = (Eval { ctx }).eval(&e, pos)?;
    match (&ctx.loc, v) {
        (Some(_), v) => Ok(Value::Loc(v.into_loc(ctx, pos)?)),
        (None, v) => Ok(v),
    }
}

/// Parses a polynomial; localized values must reduce to one.
pub fn parse_element(src: &str, ctx: &Context) -> Result<Element, ParseError> {
    let v = parse_value(src, ctx)?;
    v.polynomial().ok_or(()).or_else(|_| err(Pos { line: 1, col: 1 }, format!("{v} is not a polynomial")))
}
