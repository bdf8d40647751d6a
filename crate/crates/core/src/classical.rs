//! The `q → 1` limit of an action: an sl₂-action on ℂ[x,y] by
//! derivations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::hopf::Action;
use crate::qplane::{Monomial, QPlanePoly};
use crate::scalars::QScalar;

/// Largest `|a|` tried when recognising a weight as `q^a`.
pub const MAX_WEIGHT_EXPONENT: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoLimit {
    #[error("weight {which} = {value} is not q^a with |a| <= 8")]
    WeightNotQPower { which: String, value: String },
    #[error("coefficient {coefficient} of {entry} has a pole at q = 1")]
    Pole { entry: String, coefficient: String },
}

/// A commutative polynomial in `x`, `y` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn one() -> Self {
        CPoly::monomial(BigRational::from_integer(1.into()), Monomial::ONE)
    }

    pub fn x() -> Self {
        CPoly::monomial(BigRational::from_integer(1.into()), Monomial::X)
    }

    pub fn y() -> Self {
        CPoly::monomial(BigRational::from_integer(1.into()), Monomial::Y)
    }

    pub fn monomial(c: BigRational, mono: Monomial) -> Self {
        let mut p = CPoly::zero();
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = CPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Monomial) -> BigRational {
        self.terms.get(&mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale(&self, c: &BigRational) -> CPoly {
        CPoly::from_terms(self.terms.iter().map(|(m, d)| (*m, d * c)))
    }

    fn to_qplane(&self) -> QPlanePoly {
        QPlanePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, QScalar::from_rational(c.clone()))))
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(Monomial::new(a.m + b.m, a.n + b.n), c * d);
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Same text form as the quantum plane; the coefficients are rational.
        write!(f, "{}", self.to_qplane())
    }
}

impl Serialize for CPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An sl₂-action by derivations, fixed by its values on `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalAction {
    pub h_x: i64,
    pub h_y: i64,
    pub e_x: CPoly,
    pub e_y: CPoly,
    pub f_x: CPoly,
    pub f_y: CPoly,
}

#[derive(Serialize)]
struct Pair<T: Serialize> {
    x: T,
    y: T,
}

impl Serialize for ClassicalAction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            h: Pair<i64>,
            e: Pair<&'a CPoly>,
            f: Pair<&'a CPoly>,
        }
        Record {
            h: Pair { x: self.h_x, y: self.h_y },
            e: Pair { x: &self.e_x, y: &self.e_y },
            f: Pair { x: &self.f_x, y: &self.f_y },
        }
        .serialize(s)
    }
}

impl fmt::Display for ClassicalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h(x) = {}*x, h(y) = {}*y", self.h_x, self.h_y)?;
        writeln!(f, "e(x) = {}, e(y) = {}", self.e_x, self.e_y)?;
        write!(f, "f(x) = {}, f(y) = {}", self.f_x, self.f_y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalOp {
    H,
    E,
    F,
}

impl ClassicalAction {
    /// `h` as the grading derivation, `e` and `f` by the Leibniz rule.
    pub fn apply(&self, op: ClassicalOp, p: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        for (mono, c) in p.terms() {
            match op {
                ClassicalOp::H => {
                    let w = self.h_x * i64::from(mono.m) + self.h_y * i64::from(mono.n);
                    out.add_term(*mono, c * BigRational::from_integer(BigInt::from(w)));
                }
                ClassicalOp::E | ClassicalOp::F => {
                    let (dx, dy) = match op {
                        ClassicalOp::E => (&self.e_x, &self.e_y),
                        _ => (&self.f_x, &self.f_y),
                    };
                    out = &out + &derivation_on_monomial(*mono, dx, dy).scale(c);
                }
            }
        }
        out
    }
}

/// `D(x^m y^n) = m x^{m-1} y^n D(x) + n x^m y^{n-1} D(y)`.
fn derivation_on_monomial(mono: Monomial, dx: &CPoly, dy: &CPoly) -> CPoly {
    let mut out = CPoly::zero();
    let int = |k: u32| BigRational::from_integer(BigInt::from(k));
    if mono.m > 0 {
        let rest = CPoly::monomial(int(mono.m), Monomial::new(mono.m - 1, mono.n));
        out = &out + &(&rest * dx);
    }
    if mono.n > 0 {
        let rest = CPoly::monomial(int(mono.n), Monomial::new(mono.m, mono.n - 1));
        out = &out + &(&rest * dy);
    }
    out
}

fn limit_poly(entry: &str, p: &QPlanePoly) -> Result<CPoly, NoLimit> {
    let mut out = CPoly::zero();
    for (mono, c) in p.terms() {
        let v = c.eval_at_one().map_err(|_| NoLimit::Pole {
            entry: entry.to_string(),
            coefficient: c.to_string(),
        })?;
        out.add_term(*mono, v);
    }
    Ok(out)
}

fn weight_exponent(which: &str, w: &QScalar) -> Result<i64, NoLimit> {
    w.as_q_power()
        .filter(|a| a.abs() <= MAX_WEIGHT_EXPONENT)
        .ok_or_else(|| NoLimit::WeightNotQPower { which: which.to_string(), value: w.to_string() })
}

/// Substitutes `k = q^h` and lets `q → 1`.
pub fn classical_limit(action: &Action) -> Result<ClassicalAction, NoLimit> {
    Ok(ClassicalAction {
        h_x: weight_exponent("alpha", action.weights.alpha())?,
        h_y: weight_exponent("beta", action.weights.beta())?,
        e_x: limit_poly("e(x)", &action.e_x)?,
        e_y: limit_poly("e(y)", &action.e_y)?,
        f_x: limit_poly("f(x)", &action.f_x)?,
        f_y: limit_poly("f(y)", &action.f_y)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sl2Relation {
    #[serde(rename = "[h,e]=2e")]
    HE,
    #[serde(rename = "[h,f]=-2f")]
    HF,
    #[serde(rename = "[e,f]=h")]
    EF,
}

impl fmt::Display for Sl2Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Relation::HE => "[h,e] = 2e",
            Sl2Relation::HF => "[h,f] = -2f",
            Sl2Relation::EF => "[e,f] = h",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Failure {
    pub relation: Sl2Relation,
    #[serde(serialize_with = "display")]
    pub monomial: Monomial,
    pub residual: CPoly,
}

fn display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Report {
    pub passed: bool,
    pub max_degree: u32,
    pub checks_run: usize,
    pub failures: Vec<Sl2Failure>,
}

impl fmt::Display for Sl2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "sl2 check up to degree {}: {} ({} checks, {} failures)",
            self.max_degree,
            if self.passed { "passed" } else { "FAILED" },
            self.checks_run,
            self.failures.len()
        )?;
        for fail in self.failures.iter().take(20) {
            writeln!(f, "  [{}] on {}: residual {}", fail.relation, fail.monomial, fail.residual)?;
        }
        Ok(())
    }
}

/// Checks the three bracket relations on every monomial of degree
/// `<= max_degree`.
pub fn check_sl2(ca: &ClassicalAction, max_degree: u32) -> Sl2Report {
    use ClassicalOp::{E, F, H};
    let two = BigRational::from_integer(2.into());
    let mut failures = Vec::new();
    let mut checks_run = 0;
    for mono in Monomial::up_to_degree(max_degree) {
        let p = CPoly::monomial(BigRational::from_integer(1.into()), mono);
        let bracket = |a, b| &ca.apply(a, &ca.apply(b, &p)) - &ca.apply(b, &ca.apply(a, &p));
        let residuals = [
            (Sl2Relation::HE, &bracket(H, E) - &ca.apply(E, &p).scale(&two)),
            (Sl2Relation::HF, &bracket(H, F) + &ca.apply(F, &p).scale(&two)),
            (Sl2Relation::EF, &bracket(E, F) - &ca.apply(H, &p)),
        ];
        for (relation, residual) in residuals {
            checks_run += 1;
            if !residual.is_zero() {
                failures.push(Sl2Failure { relation, monomial: mono, residual });
            }
        }
    }
    Sl2Report { passed: failures.is_empty(), max_degree, checks_run, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FamilyTag, SeriesFamily};

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn eb0_limit() {
        let ca = classical_limit(&build(&SeriesFamily::default_for(FamilyTag::EB0))).unwrap();
        assert_eq!((ca.h_x, ca.h_y), (1, -2));
        assert!(ca.e_x.is_zero());
        assert_eq!(ca.e_y, CPoly::one());
        assert_eq!(ca.f_x, CPoly::monomial(rat(1), Monomial::new(1, 1)));
        assert_eq!(ca.f_y, CPoly::monomial(rat(-1), Monomial::new(0, 2)));
        assert!(check_sl2(&ca, 6).passed);
    }

    #[test]
    fn sign_flipped_trivial_has_no_limit() {
        let a = build(&SeriesFamily::trivial(-1, -1).unwrap());
        assert!(matches!(classical_limit(&a), Err(NoLimit::WeightNotQPower { .. })));
        let plain = classical_limit(&build(&SeriesFamily::trivial(1, 1).unwrap())).unwrap();
        assert_eq!((plain.h_x, plain.h_y), (0, 0));
    }

    #[test]
    fn pole_is_reported() {
        let tau = (&QScalar::q() - &QScalar::one()).inv().unwrap();
        let a = build(&SeriesFamily::standard(tau).unwrap());
        assert!(matches!(classical_limit(&a), Err(NoLimit::Pole { .. })));
    }

    #[test]
    fn tampered_limit_fails_on_y() {
        let mut ca = classical_limit(&build(&SeriesFamily::default_for(FamilyTag::EB0))).unwrap();
        ca.f_y = CPoly::monomial(rat(1), Monomial::new(0, 2));
        let r = check_sl2(&ca, 3);
        assert!(!r.passed);
        assert!(r.failures.iter().any(|f| f.relation == Sl2Relation::EF && f.monomial == Monomial::Y));
    }

    #[test]
    fn json_shape() {
        let ca = classical_limit(&build(&SeriesFamily::default_for(FamilyTag::Standard))).unwrap();
        let v = serde_json::to_value(&ca).unwrap();
        assert_eq!(v["h"]["x"], 1);
        assert_eq!(v["e"]["y"], "x");
        assert_eq!(v["f"]["x"], "y");
    }
}
