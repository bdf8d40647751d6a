//! The quantum plane: polynomials in `x`, `y` subject to `yx = q·xy`.
//!
//! Every element is kept in the normal form `Σ c_{mn} x^m y^n` with all
//! `x` factors to the left.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalars::QScalar;

/// The monomial `x^m y^n`.
///
/// Ordered graded-lexicographically: by total degree, then with higher
/// powers of `x` first inside a degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub m: u32,
    pub n: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { m: 0, n: 0 };
    pub const X: Monomial = Monomial { m: 1, n: 0 };
    pub const Y: Monomial = Monomial { m: 0, n: 1 };

    pub fn new(m: u32, n: u32) -> Self {
        Monomial { m, n }
    }

    pub fn degree(self) -> u32 {
        self.m + self.n
    }

    /// All monomials of total degree `<= max_degree`, in graded order.
    pub fn up_to_degree(max_degree: u32) -> Vec<Monomial> {
        (0..=max_degree).flat_map(Monomial::of_degree).collect()
    }

    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).rev().map(move |m| Monomial::new(m, d - m))
    }

    /// `self · other` as a monomial times the commutation factor `q^{n·m'}`.
    pub fn times(self, other: Monomial) -> (i64, Monomial) {
        (
            i64::from(self.n) * i64::from(other.m),
            Monomial::new(self.m + other.m, self.n + other.n),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.m.cmp(&self.m))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &str, e: u32| match e {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{e}")),
        };
        let parts: Vec<String> = [part("x", self.m), part("y", self.n)].into_iter().flatten().collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// A polynomial on the quantum plane in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPlanePoly {
    terms: BTreeMap<Monomial, QScalar>,
}

impl QPlanePoly {
    pub fn zero() -> Self {
        QPlanePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        QPlanePoly::constant(QScalar::one())
    }

    pub fn x() -> Self {
        QPlanePoly::monomial(QScalar::one(), Monomial::X)
    }

    pub fn y() -> Self {
        QPlanePoly::monomial(QScalar::one(), Monomial::Y)
    }

    pub fn constant(c: QScalar) -> Self {
        QPlanePoly::monomial(c, Monomial::ONE)
    }

    pub fn monomial(c: QScalar, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        QPlanePoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, QScalar)>) -> Self {
        let mut p = QPlanePoly::zero();
        for (mono, c) in terms {
            p.add_term(mono, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &QScalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Monomial) -> QScalar {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Lowest total degree among the terms.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Leading term in graded order.
    pub fn leading(&self) -> Option<(&Monomial, &QScalar)> {
        self.terms.iter().next_back()
    }

    /// The constant value, if the polynomial has no `x` or `y`.
    pub fn as_constant(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// `Some((c, mono))` when the polynomial is a single nonzero term.
    pub fn as_single_term(&self) -> Option<(Monomial, &QScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, mono: Monomial, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &QPlanePoly, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        for (mono, d) in &other.terms {
            self.add_term(*mono, &(c * d));
        }
    }

    pub fn scale(&self, c: &QScalar) -> QPlanePoly {
        if c.is_zero() {
            return QPlanePoly::zero();
        }
        QPlanePoly { terms: self.terms.iter().map(|(m, d)| (*m, c * d)).collect() }
    }

    /// `self · x^m y^n`.
    pub fn mul_monomial_right(&self, mono: Monomial) -> QPlanePoly {
        let terms = self.terms.iter().map(|(a, c)| {
            let (k, prod) = a.times(mono);
            (prod, if k == 0 { c.clone() } else { c * &QScalar::q_pow(k) })
        });
        QPlanePoly { terms: terms.collect() }
    }

    /// `x^m y^n · self`.
    pub fn mul_monomial_left(&self, mono: Monomial) -> QPlanePoly {
        let terms = self.terms.iter().map(|(a, c)| {
            let (k, prod) = mono.times(*a);
            (prod, if k == 0 { c.clone() } else { c * &QScalar::q_pow(k) })
        });
        QPlanePoly { terms: terms.collect() }
    }

    /// Normal-form product using `y^a x^b = q^{ab} x^b y^a`.
    pub fn multiply(&self, other: &QPlanePoly) -> QPlanePoly {
        let mut out = QPlanePoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let (k, prod) = a.times(*b);
                let mut coeff = c * d;
                if k != 0 {
                    coeff *= &QScalar::q_pow(k);
                }
                out.add_term(prod, &coeff);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> QPlanePoly {
        (0..e).fold(QPlanePoly::one(), |acc, _| acc.multiply(self))
    }

    /// The `i`-th homogeneous component.
    pub fn homogeneous_component(&self, i: u32) -> QPlanePoly {
        QPlanePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == i)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Projection to `ℂ[x]` along `yℂ_q[x,y]` (or to `ℂ[y]` along `xℂ_q[x,y]`).
    pub fn project_axis(&self, axis: Axis) -> QPlanePoly {
        let keep = |m: &Monomial| match axis {
            Axis::X => m.n == 0,
            Axis::Y => m.m == 0,
        };
        QPlanePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Applies `x ↦ θx, y ↦ ωy`.
    pub fn substitute_diagonal(&self, theta: &QScalar, omega: &QScalar) -> QPlanePoly {
        let terms = self.terms.iter().map(|(mono, c)| {
            let factor = &theta.pow(i64::from(mono.m)).expect("theta nonzero")
                * &omega.pow(i64::from(mono.n)).expect("omega nonzero");
            (*mono, c * &factor)
        });
        QPlanePoly { terms: terms.collect() }
    }
}

/// Free functions mirroring the operation names used elsewhere.
pub fn multiply(a: &QPlanePoly, b: &QPlanePoly) -> QPlanePoly {
    a.multiply(b)
}

pub fn homogeneous_component(p: &QPlanePoly, i: u32) -> QPlanePoly {
    p.homogeneous_component(i)
}

pub fn project_axis(p: &QPlanePoly, axis: Axis) -> QPlanePoly {
    p.project_axis(axis)
}

impl fmt::Display for QPlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, body) = if c.is_atomic() && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            let coeff = if c.is_atomic() { body } else { format!("({body})") };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *mono == Monomial::ONE {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QPlanePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QPlanePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &QPlanePoly {
    type Output = QPlanePoly;
    fn add(self, rhs: &QPlanePoly) -> QPlanePoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::one());
        out
    }
}

impl Sub for &QPlanePoly {
    type Output = QPlanePoly;
    fn sub(self, rhs: &QPlanePoly) -> QPlanePoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::from_int(-1));
        out
    }
}

impl Neg for &QPlanePoly {
    type Output = QPlanePoly;
    fn neg(self) -> QPlanePoly {
        self.scale(&QScalar::from_int(-1))
    }
}

impl Mul for &QPlanePoly {
    type Output = QPlanePoly;
    fn mul(self, rhs: &QPlanePoly) -> QPlanePoly {
        self.multiply(rhs)
    }
}
