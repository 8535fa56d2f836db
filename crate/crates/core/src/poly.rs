//! Dense univariate integer polynomials (in the hauptmodul `y`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::{valuation, Coeff};
use crate::series::Series;

/// `c[0] + c[1] y + ... + c[d] y^d`, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64_exact(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 + 5y`, the generator of the localizing set.
    pub fn one_plus_5y() -> Self {
        Self::from_i64s(&[1, 5])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `y^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![T::zero(); n];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            o.add_assign_ref(c);
        }
        for (o, c) in out.iter_mut().zip(&other.coeffs) {
            o.add_assign_ref(c);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].mul_add_assign(a, b);
            }
        }
        Self::new(out)
    }

    /// `self * y^k`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplies by `(1 + 5y)^e` with one linear pass per factor.
    pub fn mul_one_plus_5y_pow(&self, e: u32) -> Self {
        let five = T::from_u32(5).unwrap();
        let mut c = self.coeffs.clone();
        for _ in 0..e {
            c.push(T::zero());
            for k in (1..c.len()).rev() {
                let (lo, hi) = c.split_at_mut(k);
                hi[0].mul_add_assign(&lo[k - 1], &five);
            }
        }
        Self::new(c)
    }

    /// Exact quotient by `1 + 5y`, or `None` if it does not divide.
    pub fn div_one_plus_5y(&self) -> Option<Self> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let five = T::from_u32(5).unwrap();
        let mut q: Vec<T> = Vec::with_capacity(d);
        q.push(self.coeffs[0].clone());
        for k in 1..d {
            let mut v = self.coeffs[k].clone();
            v.mul_sub_assign(&q[k - 1], &five);
            q.push(v);
        }
        if q[d - 1].mul_ref(&five) == self.coeffs[d] {
            Some(Self::new(q))
        } else {
            None
        }
    }

    pub fn exact_div_scalar(&self, d: &T) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision { divisor: d.to_string(), index: k as i64 });
            }
            out.push(q);
        }
        Ok(Self::new(out))
    }

    /// Substitutes `y -> other` (polynomial composition).
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Evaluates at a power series (offset >= 0) by Horner's rule.
    pub fn eval_series(&self, s: &Series<T>) -> Series<T> {
        assert!(s.offset() >= 0 || s.is_zero(), "polynomial evaluation needs a power series");
        let precision = s.precision();
        let mut acc = Series::zero(precision);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add(&Series::monomial(c.clone(), 0, precision));
        }
        acc
    }

    /// 5-adic valuation of each coefficient (`None` for zero coefficients).
    pub fn valuations(&self, p: u32) -> Vec<Option<u32>> {
        self.coeffs.iter().map(|c| valuation(c, p)).collect()
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "y")?,
                (1, false) => write!(f, "{mag}*y")?,
                (_, true) => write!(f, "y^{k}")?,
                (_, false) => write!(f, "{mag}*y^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        Poly::add(self, rhs)
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        Poly::sub(self, rhs)
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        Poly::mul(self, rhs)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<i64>;

    #[test]
    fn arithmetic() {
        let a = P::from_i64s(&[1, 2]);
        let b = P::from_i64s(&[0, 1, 1]);
        assert_eq!(&a * &b, P::from_i64s(&[0, 1, 3, 2]));
        assert_eq!(&a - &a, P::zero());
        assert_eq!(a.pow(3), P::from_i64s(&[1, 6, 12, 8]));
        assert_eq!(P::from_i64s(&[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn one_plus_5y_factors() {
        let p = P::from_i64s(&[3, -1, 7]);
        let q = p.mul_one_plus_5y_pow(3);
        assert_eq!(q, &p * &P::one_plus_5y().pow(3));
        assert_eq!(q.div_one_plus_5y().unwrap(), p.mul_one_plus_5y_pow(2));
        assert_eq!(P::from_i64s(&[1, 6]).div_one_plus_5y(), None);
        assert_eq!(P::from_i64s(&[2]).div_one_plus_5y(), None);
    }

    #[test]
    fn composition() {
        // (y^2)(1 + 5y) = 1 + 10y + 25y^2
        let sq = P::monomial(1, 2);
        assert_eq!(sq.compose(&P::one_plus_5y()), P::from_i64s(&[1, 10, 25]));
    }

    #[test]
    fn eval_on_series() {
        let y = Series::<i64>::from_i64s(1, &[1, 3, 8], 4);
        let p = P::from_i64s(&[2, 0, 1]);
        assert_eq!(p.eval_series(&y).to_dense(), vec![2, 0, 1, 6]);
    }

    #[test]
    fn display() {
        assert_eq!(P::from_i64s(&[0, 24, -361, 1]).to_string(), "24*y - 361*y^2 + y^3");
    }
}
