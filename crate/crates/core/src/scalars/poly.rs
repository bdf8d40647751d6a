//! Dense univariate polynomials in `q` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial `c_0 + c_1 q + ... + c_d q^d` over ℚ.
///
/// Coefficients are stored in ascending exponent order with no trailing
/// zeros, so the zero polynomial is the empty vector and two equal
/// polynomials always have identical storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c · q^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Some((c, k))` when the polynomial is the single term `c · q^k`.
    pub fn as_monomial(&self) -> Option<(&BigRational, usize)> {
        let v = self.valuation()?;
        let d = self.degree()?;
        (v == d).then(|| (&self.coeffs[d], d))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn unshift(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        debug_assert!(self.valuation().map_or(true, |v| v >= k));
        Poly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Euclidean division over ℚ; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        if let Some((c, k)) = divisor.as_monomial() {
            // q^k·c divides every term of degree >= k.
            let inv = c.recip();
            let split = k.min(self.coeffs.len());
            let rem = Poly::from_coeffs(self.coeffs[..split].to_vec());
            let quo = Poly::from_coeffs(self.coeffs[split..].iter().map(|a| a * &inv).collect());
            return (quo, rem);
        }
        let mut rem = self.coeffs.clone();
        let lead_inv = divisor.coeffs[dd].recip();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if let Some((_, k)) = a.as_monomial() {
            return Poly::monomial(BigRational::one(), k.min(b.valuation().unwrap()));
        }
        if let Some((_, k)) = b.as_monomial() {
            return Poly::monomial(BigRational::one(), k.min(a.valuation().unwrap()));
        }
        // Pull out the common power of q first; it keeps the Euclidean
        // remainders short for the Laurent-heavy inputs we see.
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        let v = va.min(vb);
        let (mut x, mut y) = (a.unshift(va).monic(), b.unshift(vb).monic());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic().shift(v)
    }

    /// Exact square root, if this polynomial is a square in ℚ[q].
    pub fn sqrt(&self) -> Option<Poly> {
        let d = match self.degree() {
            None => return Some(Poly::zero()),
            Some(d) => d,
        };
        if d % 2 != 0 {
            return None;
        }
        let half = d / 2;
        let lead_root = rational_sqrt(&self.coeffs[d])?;
        // Determine root coefficients from the top down.
        let mut root = vec![BigRational::zero(); half + 1];
        root[half] = lead_root;
        let two_lead = &root[half] * BigRational::from_integer(2.into());
        for i in (0..half).rev() {
            // coefficient of q^{half+i} in root² must match.
            let target = &self.coeffs[half + i];
            let mut acc = BigRational::zero();
            for j in (i + 1)..half {
                let k = half + i - j;
                if k > i && k <= half {
                    acc += &root[j] * &root[k];
                }
            }
            root[i] = (target - acc) / &two_lead;
        }
        let root = Poly::from_coeffs(root);
        (&root * &root == *self).then_some(root)
    }

    pub(crate) fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let pow = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if pow.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&pow);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), pow));
            }
        }
        out
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Least common multiple of the coefficient denominators.
pub(crate) fn denominator_lcm(p: &Poly) -> BigInt {
    p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Gcd of the coefficient numerators (nonnegative).
pub(crate) fn numerator_gcd(p: &Poly) -> BigInt {
    p.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with_var("q"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with_var("q"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn division_reconstructs_dividend() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo, p(&[1, 1, 1]));
        assert!(rem.is_zero());
        let (quo, rem) = p(&[3, 1, 4, 1, 5]).div_rem(&p(&[2, 0, 7]));
        assert_eq!(&(&quo * &p(&[2, 0, 7])) + &rem, p(&[3, 1, 4, 1, 5]));
    }

    #[test]
    fn gcd_is_monic_and_strips_common_q_power() {
        // (q^2-1)·q and (q-1)·q^3
        let a = &p(&[-1, 0, 1]) * &p(&[0, 1]);
        let b = &p(&[-1, 1]) * &p(&[0, 0, 0, 2]);
        assert_eq!(Poly::gcd(&a, &b), p(&[0, -1, 1]));
        assert_eq!(Poly::gcd(&p(&[0, 0, 5]), &p(&[0, 3, 1])), p(&[0, 1]));
    }

    #[test]
    fn sqrt_of_squares_only() {
        let r = p(&[1, 2, 3]);
        assert_eq!((&r * &r).sqrt(), Some(r));
        assert_eq!(p(&[1, 1]).sqrt(), None);
        assert_eq!(p(&[2]).sqrt(), None);
        assert_eq!(p(&[0, 0, 0, 0, 4]).sqrt(), Some(p(&[0, 0, 2])));
    }

    #[test]
    fn renders_ascending() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "1+q^2");
        assert_eq!(p(&[0, -1, 2]).to_string(), "-q+2*q^2");
    }
}
