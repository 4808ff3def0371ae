//! Polynomial / rational-function literal syntax: integer or rational
//! constants, one-letter variables, `+ - * /`, `^` with a non-negative
//! integer exponent, and parentheses. Example: `(t^2-1)/(t^2+1)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::rational::Rat;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn variables(&self) -> Vec<char> {
        let mut v = Vec::new();
        self.collect_vars(&mut v);
        v.sort();
        v.dedup();
        v
    }

    fn collect_vars(&self, out: &mut Vec<char>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(c) => out.push(*c),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluate in any field given a binding for each variable.
    pub fn eval<F: Field>(&self, bind: &dyn Fn(char) -> Option<F>) -> Result<F> {
        Ok(match self {
            Expr::Num(n) => F::from_rat(&Rat::from_integer(n.clone())),
            Expr::Var(c) => bind(*c).ok_or_else(|| Error::Parse(format!("unbound variable '{c}'")))?,
            Expr::Neg(a) => -a.eval(bind)?,
            Expr::Add(a, b) => a.eval(bind)? + b.eval(bind)?,
            Expr::Sub(a, b) => a.eval(bind)? - b.eval(bind)?,
            Expr::Mul(a, b) => a.eval(bind)? * b.eval(bind)?,
            Expr::Div(a, b) => {
                let d = b.eval(bind)?;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                a.eval(bind)? / d
            }
            Expr::Pow(a, e) => a.eval(bind)?.pow(*e),
        })
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at position {} in \"{}\"", self.pos, self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                '-' => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                // implicit multiplication: `2t`, `3(t+1)`, `(t-1)(t+1)`
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a non-negative integer exponent");
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = s.parse().map_err(|_| Error::Parse(format!("exponent {s} too large")))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(Expr::Num(s.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                if let Some(&n) = self.chars.get(self.pos) {
                    if n.is_ascii_alphanumeric() && !n.is_ascii_digit() {
                        return self.err("variables are single letters");
                    }
                }
                Ok(Expr::Var(c))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, src };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a rational function in the single variable `var`.
pub fn parse_ratfunc(src: &str, var: char) -> Result<RatFunc> {
    let e = parse_expr(src)?;
    for v in e.variables() {
        if v != var {
            return Err(Error::Parse(format!("unexpected variable '{v}' (expected '{var}')")));
        }
    }
    e.eval(&|c| if c == var { Some(RatFunc::var()) } else { None })
}

/// Parse a polynomial in `var`; rejects genuine fractions.
pub fn parse_poly(src: &str, var: char) -> Result<Poly> {
    let r = parse_ratfunc(src, var)?;
    if !r.is_poly() {
        return Err(Error::Parse(format!("\"{src}\" is not a polynomial")));
    }
    Ok(r.num().clone())
}

/// Parse a rational constant expression such as `-3/4` or `2^5-1`.
pub fn parse_constant(src: &str) -> Result<Rat> {
    let e = parse_expr(src)?;
    if !e.variables().is_empty() {
        return Err(Error::Parse(format!("\"{src}\" is not a constant")));
    }
    let v: Rat = e.eval(&|_| None)?;
    if v.denom().is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(v)
}
