//! Text expressions over the quantum plane.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ['^' ['-'] int]
//! atom   := 'x' | 'y' | 'q' | int ['/' int] | '(' expr ')' | gen '(' expr ')'
//! gen    := 'k' | 'kinv' | 'e' | 'f'
//! ```
//!
//! Division and negative exponents are only accepted for scalars. The same
//! grammar is used for [`QScalar`] and [`QPlanePoly`] text.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::hopf::{Evaluator, Generator};
use crate::qplane::QPlanePoly;
use crate::scalars::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("exponent at position {position} must be a nonnegative integer")]
    NonIntegerExponent { position: usize },
    #[error("generator application needs an action")]
    NoAction,
    #[error("division by a non-scalar")]
    NonScalarDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a scalar in q, found a polynomial in x, y")]
    NotScalar,
}

/// Abstract syntax tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    X,
    Y,
    Q,
    /// Nonnegative rational literal.
    Rational(BigRational),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    Pow(Box<Expression>, i64),
    Apply(Generator, Box<Expression>),
}

impl Expression {
    pub fn int(n: i64) -> Expression {
        Expression::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// True if the expression mentions `x`, `y` or a generator.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expression::X | Expression::Y | Expression::Apply(..) => true,
            Expression::Q | Expression::Rational(_) => false,
            Expression::Add(a, b)
            | Expression::Sub(a, b)
            | Expression::Mul(a, b)
            | Expression::Div(a, b) => a.is_polynomial() || b.is_polynomial(),
            Expression::Neg(a) | Expression::Pow(a, _) => a.is_polynomial(),
        }
    }

    /// Evaluates without an action; generator applications are an error.
    pub fn evaluate(&self) -> Result<QPlanePoly, ExprError> {
        self.eval(None)
    }

    /// Evaluates with generator applications bound to `ev`.
    pub fn evaluate_with(&self, ev: &Evaluator<'_>) -> Result<QPlanePoly, ExprError> {
        self.eval(Some(ev))
    }

    fn eval(&self, ev: Option<&Evaluator<'_>>) -> Result<QPlanePoly, ExprError> {
        Ok(match self {
            Expression::X => QPlanePoly::x(),
            Expression::Y => QPlanePoly::y(),
            Expression::Q => QPlanePoly::constant(QScalar::q()),
            Expression::Rational(r) => QPlanePoly::constant(QScalar::from_rational(r.clone())),
            Expression::Add(a, b) => &a.eval(ev)? + &b.eval(ev)?,
            Expression::Sub(a, b) => &a.eval(ev)? - &b.eval(ev)?,
            Expression::Mul(a, b) => a.eval(ev)?.multiply(&b.eval(ev)?),
            Expression::Div(a, b) => {
                let d = b.eval(ev)?.as_constant().ok_or(ExprError::NonScalarDivisor)?;
                let inv = d.inv().map_err(|_| ExprError::DivisionByZero)?;
                a.eval(ev)?.scale(&inv)
            }
            Expression::Neg(a) => -&a.eval(ev)?,
            Expression::Pow(a, k) => {
                let base = a.eval(ev)?;
                if *k >= 0 {
                    base.pow(u32::try_from(*k).map_err(|_| ExprError::NonIntegerExponent { position: 0 })?)
                } else {
                    let c = base.as_constant().ok_or(ExprError::NonIntegerExponent { position: 0 })?;
                    QPlanePoly::constant(c.pow(*k).map_err(|_| ExprError::DivisionByZero)?)
                }
            }
            Expression::Apply(g, a) => {
                let ev = ev.ok_or(ExprError::NoAction)?;
                let inner = a.eval(Some(ev))?;
                ev.on_poly(*g, &inner)
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) | Expression::Div(..) => 2,
            Expression::Neg(_) => 3,
            Expression::Pow(..) => 4,
            Expression::Rational(r) if !r.is_integer() => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expression::X => write!(f, "x"),
            Expression::Y => write!(f, "y"),
            Expression::Q => write!(f, "q"),
            Expression::Rational(r) => write!(f, "{r}"),
            Expression::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Expression::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Expression::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expression::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "/")?;
                // A bare integer here would be read back as part of a rational literal.
                let min = if matches!(**b, Expression::Rational(_)) { 6 } else { 3 };
                b.write_at(f, min)
            }
            Expression::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expression::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
            Expression::Apply(g, a) => {
                write!(f, "{g}(")?;
                a.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Renders an expression so that [`parse_expression`] reads it back unchanged.
pub fn render(e: &Expression) -> String {
    e.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax { position: pos, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { position: self.here(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expression, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expression::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expression::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expression, ExprError> {
        if self.eat('-') {
            return Ok(Expression::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.here();
        let negative = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                i64::try_from(n).map_err(|_| ExprError::NonIntegerExponent { position: at })?
            }
            _ => return Err(ExprError::NonIntegerExponent { position: at }),
        };
        let k = if negative { -k } else { k };
        if k < 0 && base.is_polynomial() {
            return Err(ExprError::NonIntegerExponent { position: at });
        }
        Ok(Expression::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expression, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if let (Some(Tok::Sym('/')), Some(Tok::Int(d))) = (self.peek(), self.peek_at(1)) {
                    let d = d.clone();
                    if d.is_zero() {
                        return Err(ExprError::DivisionByZero);
                    }
                    self.pos += 2;
                    return Ok(Expression::Rational(BigRational::new(n, d)));
                }
                Ok(Expression::Rational(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = match name.as_str() {
                    "x" => return Ok(Expression::X),
                    "y" => return Ok(Expression::Y),
                    "q" => return Ok(Expression::Q),
                    "k" => Generator::K,
                    "kinv" => Generator::KInv,
                    "e" => Generator::E,
                    "f" => Generator::F,
                    _ => {
                        self.pos -= 1;
                        return self.error(format!("unknown identifier '{name}'"));
                    }
                };
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expression::Apply(g, Box::new(inner)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(_) => self.error("expected an operand"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_expression(src: &str) -> Result<Expression, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(e)
}

impl FromStr for Expression {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse_expression(s)
    }
}

impl FromStr for QPlanePoly {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse_expression(s)?.evaluate()
    }
}

impl FromStr for QScalar {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        let e = parse_expression(s)?;
        if e.is_polynomial() {
            return Err(ExprError::NotScalar);
        }
        e.evaluate()?.as_constant().ok_or(ExprError::NotScalar)
    }
}

/// An expression for a scalar, built from its canonical parts.
pub fn scalar_expression(c: &QScalar) -> Expression {
    c.to_string().parse().expect("scalar rendering parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{Action, WeightPair};
    use crate::qplane::Monomial;

    #[test]
    fn plane_relation_evaluates_to_zero() {
        let e = parse_expression("y*x - q*x*y").unwrap();
        assert!(e.evaluate().unwrap().is_zero());
    }

    #[test]
    fn negative_power_of_variable_rejected() {
        assert!(matches!(parse_expression("x^-1"), Err(ExprError::NonIntegerExponent { .. })));
        assert!(matches!(parse_expression("(x+q)^-2"), Err(ExprError::NonIntegerExponent { .. })));
        assert!(matches!(parse_expression("x^q"), Err(ExprError::NonIntegerExponent { .. })));
        assert!(parse_expression("q^-2").is_ok());
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_expression("x + * y"),
            Err(ExprError::Syntax { position: 4, message: "expected an operand".into() })
        );
        assert!(matches!(parse_expression("x y"), Err(ExprError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expression("z"), Err(ExprError::Syntax { position: 0, .. })));
        assert!(matches!(parse_expression("e(x"), Err(ExprError::Syntax { position: 3, .. })));
    }

    #[test]
    fn nested_application_order() {
        let e = parse_expression("e(f(x))").unwrap();
        assert_eq!(
            e,
            Expression::Apply(
                Generator::E,
                Box::new(Expression::Apply(Generator::F, Box::new(Expression::X)))
            )
        );
        let standard = Action::new(
            WeightPair::q_powers(1, -1),
            QPlanePoly::zero(),
            QPlanePoly::x(),
            QPlanePoly::y(),
            QPlanePoly::zero(),
        );
        let ev = Evaluator::new(&standard);
        // f(x) = y, then e(y) = x
        assert_eq!(e.evaluate_with(&ev).unwrap(), QPlanePoly::x());
        assert_eq!(e.evaluate(), Err(ExprError::NoAction));
    }

    #[test]
    fn scalars_parse() {
        let s: QScalar = "(1+q^2)/q".parse().unwrap();
        assert_eq!(s, &QScalar::q() + &QScalar::q_pow(-1));
        let half: QScalar = "1/2".parse().unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!("x".parse::<QScalar>(), Err(ExprError::NotScalar));
        assert_eq!("1/(q-q)".parse::<QScalar>(), Err(ExprError::DivisionByZero));
        assert_eq!("x/y".parse::<QPlanePoly>(), Err(ExprError::NonScalarDivisor));
    }

    #[test]
    fn polynomial_display_round_trips() {
        for src in ["x^2 + (1+q)*x*y + y^2", "1 + x - 2*y^3", "-q*y^2", "(1/q^2)*y", "x/3 - 1/2*y"] {
            let p: QPlanePoly = src.parse().unwrap();
            let again: QPlanePoly = p.to_string().parse().unwrap();
            assert_eq!(p, again, "{src}");
        }
        let p: QPlanePoly = "y*x".parse().unwrap();
        assert_eq!(p, QPlanePoly::monomial(QScalar::q(), Monomial::new(1, 1)));
    }

    #[test]
    fn render_round_trip() {
        for src in [
            "x*(y*x)",
            "x - (y - q)",
            "3/(2)",
            "3/2*x",
            "(3/2)^2",
            "-x^2",
            "(-x)^2",
            "e(f(x)) - f(e(x))",
            "kinv(k(y))/(q - 1)",
            "q^-3*x",
            "x^2/3",
            "- -x",
        ] {
            let e = parse_expression(src).unwrap();
            let r = render(&e);
            assert_eq!(parse_expression(&r).unwrap(), e, "{src} -> {r}");
        }
    }
}
