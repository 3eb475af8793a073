//! Canonical text form and its parser.
//!
//! Terms are grouped by their outer monomial (q, X, x, P) in decreasing
//! graded reverse lexicographic order. The coefficient of each group is a
//! polynomial in t (or z), written in decreasing graded lexicographic order
//! with t1 > t2 > …; a coefficient with several terms is parenthesised after
//! pulling out the sign of its leading term, e.g. `X2*X1 - (t1+t3)*X2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{Coeff, Monomial, Poly};
use super::var::Var;
use super::ExactError;

fn inner_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.grlex_cmp(b)
}

fn fmt_inner_mono(m: &Monomial) -> String {
    m.pairs()
        .iter()
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn fmt_outer_mono(m: &Monomial) -> String {
    let mut vs: Vec<(Var, u32)> = m.pairs().to_vec();
    vs.sort_by(|a, b| {
        let qa = a.0 == Var::Q;
        let qb = b.0 == Var::Q;
        qb.cmp(&qa).then_with(|| b.0.outer_rank().cmp(&a.0.outer_rank()))
    });
    vs.iter()
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// `|c|·m` with the sign returned separately.
fn fmt_scaled<R: Coeff>(c: &R, m: &str) -> (bool, String) {
    let neg = c.is_negative();
    let a = if neg { c.neg_ref() } else { c.clone() };
    let s = if m.is_empty() {
        a.to_string()
    } else if a.is_one() {
        m.to_string()
    } else {
        format!("{a}*{m}")
    };
    (neg, s)
}

fn sorted_terms<R: Coeff>(p: &Poly<R>) -> Vec<(&Monomial, &R)> {
    let mut ts: Vec<_> = p.terms().collect();
    ts.sort_by(|a, b| inner_cmp(b.0, a.0));
    ts
}

/// Compact rendering of a coefficient-side polynomial: `t1+t3`, `-2*t1`.
fn render_inner<R: Coeff>(p: &Poly<R>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in sorted_terms(p).into_iter().enumerate() {
        let (neg, s) = fmt_scaled(c, &fmt_inner_mono(m));
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&s);
    }
    out
}

pub fn render<R: Coeff>(p: &Poly<R>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut groups: Vec<(Monomial, Poly<R>)> = p.split_outer().into_iter().collect();
    groups.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
    if groups.len() == 1 && groups[0].0.is_one() {
        return render_inner(&groups[0].1);
    }
    let mut out = String::new();
    for (i, (outer, coeff)) in groups.iter().enumerate() {
        let om = fmt_outer_mono(outer);
        let (neg, body) = if coeff.len() == 1 {
            let (im, c) = coeff.terms().next().unwrap();
            let joined = match (im.is_one(), om.is_empty()) {
                (true, _) => om.clone(),
                (false, true) => fmt_inner_mono(im),
                (false, false) => format!("{}*{}", fmt_inner_mono(im), om),
            };
            fmt_scaled(c, &joined)
        } else {
            let lead_neg = sorted_terms(coeff)[0].1.is_negative();
            let c = if lead_neg { -coeff } else { coeff.clone() };
            let s = format!("({})", render_inner(&c));
            let s = if om.is_empty() { s } else { format!("{s}*{om}") };
            (lead_neg, s)
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[st..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digit run")));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            i += 1;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ExactError::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, what: &str) -> Result<T, ExactError> {
        Err(ExactError::Parse(format!("{what} at token {}", self.pos)))
    }

    fn expr<R: Coeff>(&mut self, parse_num: &dyn Fn(&BigInt, &BigInt) -> Option<R>) -> Result<Poly<R>, ExactError> {
        let mut acc = Poly::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.product(parse_num)?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product<R: Coeff>(&mut self, parse_num: &dyn Fn(&BigInt, &BigInt) -> Option<R>) -> Result<Poly<R>, ExactError> {
        let mut acc = self.power(parse_num)?;
        while self.eat('*') {
            let f = self.power(parse_num)?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power<R: Coeff>(&mut self, parse_num: &dyn Fn(&BigInt, &BigInt) -> Option<R>) -> Result<Poly<R>, ExactError> {
        let base = self.atom(parse_num)?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| ExactError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<R: Coeff>(&mut self, parse_num: &dyn Fn(&BigInt, &BigInt) -> Option<R>) -> Result<Poly<R>, ExactError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let d = if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            d
                        }
                        _ => return self.err("expected denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                match parse_num(&n, &d) {
                    Some(c) => Ok(Poly::constant(c)),
                    None => self.err("coefficient outside the ring"),
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match Var::parse(&s) {
                    Some(v) => Ok(Poly::var(v)),
                    None => self.err(&format!("unknown variable {s}")),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr(parse_num)?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.power(parse_num)?)
            }
            _ => self.err("expected a term"),
        }
    }
}

fn parse_with<R: Coeff>(s: &str, parse_num: &dyn Fn(&BigInt, &BigInt) -> Option<R>) -> Result<Poly<R>, ExactError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ExactError::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr(parse_num)?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses an integral polynomial in canonical (or any infix) form.
pub fn parse_spoly(s: &str) -> Result<Poly<BigInt>, ExactError> {
    parse_with(s, &|n, d| (*d == BigInt::from(1)).then(|| n.clone()))
}

pub fn parse_qpoly(s: &str) -> Result<Poly<BigRational>, ExactError> {
    parse_with(s, &|n, d| (*d != BigInt::from(0)).then(|| BigRational::new(n.clone(), d.clone())))
}
