//! Exact arithmetic in the rational function field ℚ(q).
//!
//! `q` is a formal indeterminate, so it is never a root of unity. Laurent
//! elements such as `q^-2` are ordinary fractions with denominator `q^2`.

mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1")]
    Pole,
}

/// An element of ℚ(q) in canonical form.
///
/// The numerator and denominator are coprime and the denominator is monic,
/// which makes the representation unique: equal field elements compare equal
/// structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with an explicit operator.
pub fn arith(a: &QScalar, b: &QScalar, op: ArithOp) -> Result<QScalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// The quantum integer `[n]_q = (q^n - q^-n) / (q - q^-1)`.
pub fn quantum_integer(n: i64) -> QScalar {
    if n == 0 {
        return QScalar::zero();
    }
    if n < 0 {
        return -quantum_integer(-n);
    }
    // q^{1-n} (1 + q^2 + ... + q^{2n-2}); the numerator has constant term 1,
    // so it is already coprime to the denominator.
    let n = n as usize;
    let mut coeffs = vec![BigRational::zero(); 2 * n - 1];
    for i in 0..n {
        coeffs[2 * i] = BigRational::one();
    }
    QScalar {
        num: Poly::from_coeffs(coeffs),
        den: Poly::monomial(BigRational::one(), n - 1),
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        QScalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn q() -> Self {
        QScalar::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let unit = BigRational::one();
        if k >= 0 {
            QScalar { num: Poly::monomial(unit, k as usize), den: Poly::one() }
        } else {
            QScalar { num: Poly::one(), den: Poly::monomial(unit, k.unsigned_abs() as usize) }
        }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QScalar::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        QScalar { num: Poly::constant(r), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        QScalar { num: p, den: Poly::one() }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QScalar::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QScalar::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        QScalar::normalized(num, den)
    }

    // Scales so the denominator is monic; assumes num and den are coprime.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            QScalar { num, den }
        } else {
            let inv = lead.recip();
            QScalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant rational value, if the element does not involve `q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            self.num.coeffs().first().or(Some(zero_rational()))
        } else {
            None
        }
    }

    /// `Some(k)` exactly when the element equals `q^k`.
    pub fn as_q_power(&self) -> Option<i64> {
        let (nc, nk) = self.num.as_monomial()?;
        let (dc, dk) = self.den.as_monomial()?;
        (nc.is_one() && dc.is_one()).then(|| nk as i64 - dk as i64)
    }

    /// `Some((c, k))` when the element is `c · q^k` with rational `c`.
    pub fn as_laurent_monomial(&self) -> Option<(&BigRational, i64)> {
        let (nc, nk) = self.num.as_monomial()?;
        let (_, dk) = self.den.as_monomial()?;
        Some((nc, nk as i64 - dk as i64))
    }

    pub fn inv(&self) -> Result<QScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QScalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<QScalar, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = QScalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Substitutes `q = 1` after reduction to lowest terms.
    pub fn eval_at_one(&self) -> Result<BigRational, ScalarError> {
        let one = BigRational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.eval(&one) / d)
    }

    /// A square root in ℚ(q), when one exists.
    pub fn sqrt(&self) -> Option<QScalar> {
        // Coprime with monic denominator: a square iff both parts are.
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(QScalar::normalized(n, d))
    }

    /// Denominator-free rendering pair used for display: the denominator is
    /// scaled to an integer polynomial with coprime coefficients.
    fn display_parts(&self) -> (Poly, Poly) {
        if self.den.is_one() {
            return (self.num.clone(), self.den.clone());
        }
        let scale = BigRational::new(poly::denominator_lcm(&self.den), BigInt::one());
        let den = self.den.scale(&scale);
        let content = BigRational::new(BigInt::one(), poly::numerator_gcd(&den));
        (self.num.scale(&scale).scale(&content), den.scale(&content))
    }

    /// Whether the text form is a single signed product (no top-level `+`/`-`
    /// between terms and no fraction bar).
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.term_count() <= 1
    }
}

fn zero_rational() -> &'static BigRational {
    use std::sync::OnceLock;
    static ZERO: OnceLock<BigRational> = OnceLock::new();
    ZERO.get_or_init(BigRational::zero)
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.display_parts();
        if den.is_one() {
            return write!(f, "{num}");
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.term_count() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&num), wrap(&den))
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return QScalar::zero();
            }
            return QScalar::normalized(num, &self.den * &rhs.den);
        }
        // a/(g·u) + b/(g·v) = (a·v + b·u) / (g·u·v)
        let u = self.den.div_rem(&g).0;
        let v = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &v) + &(&rhs.num * &u);
        QScalar::reduced(num, &(&g * &u) * &v)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num * &rhs.num, den: Poly::one() };
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let cut = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_rem(g).0 };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        QScalar::normalized(num, den)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("QScalar division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar { (&self).$m(&rhs) }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar { (&self).$m(rhs) }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    fn int(n: i64) -> QScalar {
        QScalar::from_int(n)
    }

    // [n]_q straight from its definition, reduced by the generic field code.
    fn bracket_by_definition(n: i64) -> QScalar {
        let num = &QScalar::q_pow(n) - &QScalar::q_pow(-n);
        let den = &q() - &QScalar::q_pow(-1);
        num.checked_div(&den).unwrap()
    }

    #[test]
    fn q_times_its_inverse_is_one() {
        let inv = int(1).checked_div(&q()).unwrap();
        assert_eq!(arith(&q(), &inv, ArithOp::Mul).unwrap(), int(1));
    }

    #[test]
    fn reduces_before_adding() {
        let a = QScalar::new(Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(a, QScalar::from_poly(Poly::from_i64s(&[1, 1])));
        assert_eq!(arith(&a, &-q(), ArithOp::Add).unwrap(), int(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(arith(&int(1), &int(0), ArithOp::Div), Err(ScalarError::DivisionByZero));
        assert_eq!(QScalar::new(Poly::one(), Poly::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn quantum_integers_match_their_definition() {
        assert_eq!(quantum_integer(1), int(1));
        assert_eq!(quantum_integer(0), int(0));
        // (q^2+1)/q
        let two = QScalar::new(Poly::from_i64s(&[1, 0, 1]), Poly::from_i64s(&[0, 1])).unwrap();
        assert_eq!(quantum_integer(2), two);
        for n in -15..=15 {
            assert_eq!(quantum_integer(n), bracket_by_definition(n), "n = {n}");
        }
    }

    #[test]
    fn limits_at_one() {
        assert_eq!(quantum_integer(3).eval_at_one().unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(QScalar::q_pow(5).eval_at_one().unwrap(), BigRational::one());
        let pole = int(1).checked_div(&(&q() - &int(1))).unwrap();
        assert_eq!(pole.eval_at_one(), Err(ScalarError::Pole));
        // (q^2-1)/(q-1) reduces first, so it has a limit.
        let removable = QScalar::new(Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(removable.eval_at_one().unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn q_power_detection() {
        assert_eq!(QScalar::q_pow(-3).as_q_power(), Some(-3));
        assert_eq!(int(1).as_q_power(), Some(0));
        assert_eq!(int(-1).as_q_power(), None);
        assert_eq!((&q() * &int(2)).as_q_power(), None);
    }

    #[test]
    fn square_roots() {
        let s = &(&q() + &int(1)) / &(&q() * &q());
        assert_eq!((&s * &s).sqrt().map(|r| &r * &r), Some(&s * &s));
        assert_eq!(q().sqrt(), None);
        assert_eq!(int(2).sqrt(), None);
        assert_eq!(int(4).sqrt(), Some(int(2)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(quantum_integer(2).to_string(), "(1+q^2)/q");
        assert_eq!(QScalar::q_pow(-1).to_string(), "1/q");
        assert_eq!((-QScalar::q_pow(-2)).to_string(), "-1/q^2");
        let half = QScalar::from_rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2");
        let x = &int(1) / &(&(&q() * &int(2)) + &int(1));
        assert_eq!(x.to_string(), "1/(1+2*q)");
    }
}
