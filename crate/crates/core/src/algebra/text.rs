//! Canonical text form of polynomials and a small expression parser.
//!
//! Canonical polynomial text lists terms in ascending monomial order with
//! explicit rational coefficients, e.g. `-v1^2 + v1^4 + 3/2*v1^2*v2`. The
//! parser accepts any expression built from `+ - * / ^`, parentheses,
//! integer literals, registered generators and caller-provided macros, so
//! canonical text parses back to the same polynomial.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{Monomial, MultiPoly};
use super::rational::RationalExpr;
use super::registry::{Registry, VarId, MAX_VARS};
use super::scalar::ExactScalar;
use super::AlgebraError;

fn write_monomial(out: &mut String, m: &Monomial, reg: &Registry) {
    let mut first = true;
    for i in 0..MAX_VARS {
        let e = m.0[i];
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(reg.name(VarId(i as u8)));
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Canonical text of a polynomial.
pub fn poly_to_text(p: &MultiPoly, reg: &Registry) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            let _ = write!(out, "{mag}");
        } else {
            if !mag.is_one() {
                let _ = write!(out, "{mag}*");
            }
            write_monomial(&mut out, m, reg);
        }
    }
    out
}

/// Text of a rational expression: the numerator, then the factored
/// denominator when there is one.
pub fn rational_to_text(r: &RationalExpr, reg: &Registry) -> String {
    let num = poly_to_text(r.numerator(), reg);
    if r.is_polynomial() {
        return num;
    }
    let mut den = String::new();
    for (k, (f, e)) in r.den_factors().iter().enumerate() {
        if k > 0 {
            den.push('*');
        }
        let single = f.len() == 1;
        if single {
            den.push_str(&poly_to_text(f, reg));
        } else {
            let _ = write!(den, "({})", poly_to_text(f, reg));
        }
        if *e > 1 {
            let _ = write!(den, "^{e}");
        }
    }
    format!("({num})/({den})")
}

#[derive(Clone, Debug)]
enum Ast {
    Int(BigInt),
    Var(VarId),
    Macro(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

/// Expression parser bound to a registry and an optional macro table.
pub struct Parser<'a> {
    reg: &'a Registry,
    macros: HashMap<String, RationalExpr>,
}

impl<'a> Parser<'a> {
    pub fn new(reg: &'a Registry) -> Self {
        Self { reg, macros: HashMap::new() }
    }

    /// Makes `name` expand to `value` wherever it appears as an identifier;
    /// macros shadow generators of the same name.
    pub fn define(&mut self, name: &str, value: RationalExpr) {
        self.macros.insert(name.to_string(), value);
    }

    pub fn parse(&self, text: &str) -> Result<RationalExpr, AlgebraError> {
        let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
        let ast = self.expr(&mut lx)?;
        lx.skip_ws();
        if lx.pos != lx.src.len() {
            return Err(lx.err("trailing input"));
        }
        self.eval(&ast)
    }

    pub fn parse_poly(&self, text: &str) -> Result<MultiPoly, AlgebraError> {
        let r = self.parse(text)?.reduce();
        match r.as_polynomial() {
            Some(p) => Ok(p.clone()),
            None => Err(AlgebraError::Parse { pos: 0, msg: "expected a polynomial".into() }),
        }
    }

    fn expr(&self, lx: &mut Lexer) -> Result<Ast, AlgebraError> {
        let mut lhs = self.term(lx)?;
        loop {
            lx.skip_ws();
            match lx.peek() {
                Some(b'+') => {
                    lx.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term(lx)?));
                }
                Some(b'-') => {
                    lx.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term(lx)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&self, lx: &mut Lexer) -> Result<Ast, AlgebraError> {
        let mut lhs = self.unary(lx)?;
        loop {
            lx.skip_ws();
            match lx.peek() {
                Some(b'*') => {
                    lx.pos += 1;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary(lx)?));
                }
                Some(b'/') => {
                    lx.pos += 1;
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary(lx)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&self, lx: &mut Lexer) -> Result<Ast, AlgebraError> {
        lx.skip_ws();
        match lx.peek() {
            Some(b'-') => {
                lx.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary(lx)?)))
            }
            Some(b'+') => {
                lx.pos += 1;
                self.unary(lx)
            }
            _ => self.power(lx),
        }
    }

    fn power(&self, lx: &mut Lexer) -> Result<Ast, AlgebraError> {
        let base = self.atom(lx)?;
        lx.skip_ws();
        if lx.peek() == Some(b'^') {
            lx.pos += 1;
            lx.skip_ws();
            let digits = lx.take_while(|b| b.is_ascii_digit());
            if digits.is_empty() {
                return Err(lx.err("expected a non-negative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| lx.err("exponent too large"))?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&self, lx: &mut Lexer) -> Result<Ast, AlgebraError> {
        lx.skip_ws();
        match lx.peek() {
            Some(b'(') => {
                lx.pos += 1;
                let e = self.expr(lx)?;
                lx.skip_ws();
                if lx.peek() != Some(b')') {
                    return Err(lx.err("expected `)`"));
                }
                lx.pos += 1;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = lx.take_while(|b| b.is_ascii_digit());
                Ok(Ast::Int(digits.parse().expect("digits parse as an integer")))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = lx.pos;
                let name = lx.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                if self.macros.contains_key(&name) {
                    Ok(Ast::Macro(name))
                } else if let Some(v) = self.reg.lookup(&name) {
                    Ok(Ast::Var(v))
                } else {
                    Err(AlgebraError::Parse { pos: start, msg: format!("unknown identifier `{name}`") })
                }
            }
            Some(_) => Err(lx.err("unexpected character")),
            None => Err(lx.err("unexpected end of input")),
        }
    }

    fn eval(&self, ast: &Ast) -> Result<RationalExpr, AlgebraError> {
        Ok(match ast {
            Ast::Int(n) => RationalExpr::constant(ExactScalar::from_integer(n.clone())),
            Ast::Var(v) => RationalExpr::var(*v),
            Ast::Macro(name) => self.macros[name].clone(),
            Ast::Add(a, b) => &self.eval(a)? + &self.eval(b)?,
            Ast::Sub(a, b) => &self.eval(a)? - &self.eval(b)?,
            Ast::Mul(a, b) => &self.eval(a)? * &self.eval(b)?,
            Ast::Div(a, b) => &self.eval(a)? * &self.eval_recip(b)?,
            Ast::Neg(a) => -self.eval(a)?,
            Ast::Pow(a, e) => self.eval(a)?.pow(*e),
        })
    }

    /// Reciprocal that keeps products apart, so `x/(f*g^2)` gets the
    /// denominator factors `f` and `g` rather than their expanded product.
    fn eval_recip(&self, ast: &Ast) -> Result<RationalExpr, AlgebraError> {
        match ast {
            Ast::Mul(a, b) => Ok(&self.eval_recip(a)? * &self.eval_recip(b)?),
            Ast::Div(a, b) => Ok(&self.eval(b)? * &self.eval_recip(a)?),
            Ast::Pow(a, e) => Ok(self.eval_recip(a)?.pow(*e)),
            Ast::Neg(a) => Ok(-self.eval_recip(a)?),
            other => self.eval(other)?.recip(),
        }
    }
}

struct Lexer<'s> {
    src: &'s [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn take_while<F: Fn(u8) -> bool>(&mut self, f: F) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.to_string() }
    }
}

pub fn parse_rational(reg: &Registry, text: &str) -> Result<RationalExpr, AlgebraError> {
    Parser::new(reg).parse(text)
}

pub fn parse_poly(reg: &Registry, text: &str) -> Result<MultiPoly, AlgebraError> {
    Parser::new(reg).parse_poly(text)
}

impl MultiPoly {
    pub fn to_text(&self, reg: &Registry) -> String {
        poly_to_text(self, reg)
    }
}

impl RationalExpr {
    pub fn to_text(&self, reg: &Registry) -> String {
        rational_to_text(self, reg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Registry {
        Registry::standard()
    }

    #[test]
    fn theta_roundtrip() {
        let r = reg();
        let src = "-v1^2 + v1^4 + v2^2 - 10*v1^2*v2^2 + 9*v1^4*v2^2 + v2^4 - 9*v1^2*v2^4";
        let p = parse_poly(&r, src).unwrap();
        let text = p.to_text(&r);
        assert_eq!(parse_poly(&r, &text).unwrap(), p);
        assert_eq!(p.to_text(&r), parse_poly(&r, &text).unwrap().to_text(&r));
        assert!(text.starts_with("-v1^2 + v2^2 + v1^4"));
    }

    #[test]
    fn rational_coefficients() {
        let r = reg();
        let p = parse_poly(&r, "3/4*v1 - 1/2 + v2^3/5").unwrap();
        assert_eq!(p.to_text(&r), "-1/2 + 3/4*v1 + 1/5*v2^3");
    }

    #[test]
    fn factored_division() {
        let r = reg();
        let e = parse_rational(&r, "v1/(v2*(1 + v3^2)^2)").unwrap();
        assert_eq!(e.den_factors().len(), 2);
        assert_eq!(e.to_text(&r), "(v1)/(v2*(1 + v3^2)^2)");
        let back = parse_rational(&r, &e.to_text(&r)).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn macros_expand() {
        let r = reg();
        let mut p = Parser::new(&r);
        p.define("phi1", parse_rational(&r, "(1 - v1^2)*(1 - 3*v1^2)").unwrap());
        let e = p.parse("phi1^2 - phi1*phi1").unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = reg();
        match parse_poly(&r, "v1 + foo") {
            Err(AlgebraError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly(&r, "v1 +").is_err());
        assert!(parse_poly(&r, "(v1").is_err());
        assert!(parse_poly(&r, "1/v1").is_err());
        assert!(matches!(parse_rational(&r, "1/(v1 - v1)"), Err(AlgebraError::DivisionByZero)));
    }

    #[test]
    fn zero_prints() {
        assert_eq!(MultiPoly::zero().to_text(&reg()), "0");
    }
}
