//! Exact coefficient rings.
//!
//! Series and polynomials are generic over [`Coeff`], an exact signed integer
//! type. `BigInt` is the production choice; `i64`/`i128` are handy for small
//! oracles and tests, and panic on overflow instead of wrapping.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Coeff:
    Integer + Signed + Num + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self);
    /// `self -= a * b`
    fn mul_sub_assign(&mut self, a: &Self, b: &Self);
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("integer does not fit the coefficient type")
    }
}

macro_rules! impl_coeff_primitive {
    ($($ty:ty),*) => {
        $(
            impl Coeff for $ty {
                #[inline]
                fn mul_add_assign(&mut self, a: &Self, b: &Self) {
                    let p = a.checked_mul(*b).expect("coefficient overflow");
                    *self = self.checked_add(p).expect("coefficient overflow");
                }
                #[inline]
                fn mul_sub_assign(&mut self, a: &Self, b: &Self) {
                    let p = a.checked_mul(*b).expect("coefficient overflow");
                    *self = self.checked_sub(p).expect("coefficient overflow");
                }
                #[inline]
                fn add_assign_ref(&mut self, other: &Self) {
                    *self = self.checked_add(*other).expect("coefficient overflow");
                }
                #[inline]
                fn sub_assign_ref(&mut self, other: &Self) {
                    *self = self.checked_sub(*other).expect("coefficient overflow");
                }
                #[inline]
                fn mul_ref(&self, other: &Self) -> Self {
                    self.checked_mul(*other).expect("coefficient overflow")
                }
            }
        )*
    };
}

impl_coeff_primitive!(i64, i128);

impl Coeff for BigInt {
    #[inline]
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.sign() != num_bigint::Sign::NoSign && b.sign() != num_bigint::Sign::NoSign {
            *self += a * b;
        }
    }
    #[inline]
    fn mul_sub_assign(&mut self, a: &Self, b: &Self) {
        if a.sign() != num_bigint::Sign::NoSign && b.sign() != num_bigint::Sign::NoSign {
            *self -= a * b;
        }
    }
    #[inline]
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    #[inline]
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    #[inline]
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// p-adic valuation; `None` stands for the valuation of zero (+infinity).
pub fn valuation<T: Coeff>(value: &T, p: u32) -> Option<u32> {
    if value.is_zero() {
        return None;
    }
    let p = T::from_u32(p).expect("prime fits coefficient type");
    let mut v = value.clone();
    let mut k = 0;
    loop {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        v = q;
        k += 1;
    }
}

/// Whether `value` is divisible by `p^k`; zero always is, negative `k` always is.
pub fn divisible_by_power<T: Coeff>(value: &T, p: u32, k: i64) -> bool {
    if k <= 0 {
        return true;
    }
    match valuation(value, p) {
        None => true,
        Some(v) => i64::from(v) >= k,
    }
}

pub fn pow_u32<T: Coeff>(base: u32, exp: u32) -> T {
    num_traits::pow(T::from_u32(base).expect("base fits coefficient type"), exp as usize)
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial<T: Coeff>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u32);
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    from_bigint(&acc)
}

pub fn from_bigint<T: Coeff>(v: &BigInt) -> T {
    T::from_str_radix(&v.to_str_radix(10), 10)
        .unwrap_or_else(|_| panic!("integer {v} does not fit the coefficient type"))
}

pub fn to_bigint<T: Coeff>(v: &T) -> BigInt {
    BigInt::parse_bytes(v.to_string().as_bytes(), 10).expect("integer display is decimal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(&0i64, 5), None);
        assert_eq!(valuation(&7900i64, 5), Some(2));
        assert_eq!(valuation(&BigInt::from(10000), 5), Some(4));
        assert_eq!(valuation(&-125i128, 5), Some(3));
        assert!(divisible_by_power(&0i64, 5, 100));
        assert!(divisible_by_power(&3i64, 5, -2));
        assert!(!divisible_by_power(&3i64, 5, 1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<i64>(5, 2), 10);
        assert_eq!(binomial::<i64>(5, 7), 0);
        assert_eq!(binomial::<BigInt>(60, 30), BigInt::parse_bytes(b"118264581564861424", 10).unwrap());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn primitive_overflow_panics() {
        let mut a = i64::MAX;
        a.mul_add_assign(&2, &1);
    }
}
