//! The named series: `Z`, `x`, `y`, `F`, the coefficients `c(n)` and the
//! family `L_alpha`, built both from `c` and by iterating `U_5`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::etaq::named;
use crate::scalar::Coeff;
use crate::series::{divisor_sums, e2_series, Series};

/// Index `alpha >= 1` of the congruence family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyIndex(u32);

impl FamilyIndex {
    pub fn new(alpha: u32) -> Option<Self> {
        (alpha >= 1).then_some(FamilyIndex(alpha))
    }

    pub fn alpha(self) -> u32 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn lambda(self) -> BigInt {
        lambda(self.0).expect("closed form divides exactly")
    }

    pub fn psi(self) -> BigInt {
        psi(self.0)
    }
}

pub fn z_series<T: Coeff>(precision: i64) -> Series<T> {
    named::z().q_expansion(precision).expect("integral prefactor")
}

pub fn x_series<T: Coeff>(precision: i64) -> Series<T> {
    named::x().q_expansion(precision).expect("integral prefactor")
}

pub fn y_series<T: Coeff>(precision: i64) -> Series<T> {
    named::y().q_expansion(precision).expect("integral prefactor")
}

pub fn rho_series<T: Coeff>(precision: i64) -> Series<T> {
    named::rho().q_expansion(precision).expect("integral prefactor")
}

pub fn t_series<T: Coeff>(precision: i64) -> Series<T> {
    named::t().q_expansion(precision).expect("integral prefactor")
}

fn dilated_e2<T: Coeff>(k: u32, precision: i64) -> Series<T> {
    let inner = Integer::div_ceil(&precision, &(k as i64));
    e2_series::<T>(inner).dilate(k).truncate(precision)
}

/// `F = (50 E2(10t) - 25 E2(5t) - 2 E2(2t) + E2(t)) / 24`.
pub fn f_series<T: Coeff>(precision: i64) -> Result<Series<T>> {
    let c = |v: i64| T::from_i64_exact(v);
    let sum = dilated_e2::<T>(10, precision)
        .scale(&c(50))
        .sub(&dilated_e2::<T>(5, precision).scale(&c(25)))
        .sub(&dilated_e2::<T>(2, precision).scale(&c(2)))
        .add(&e2_series::<T>(precision));
    sum.exact_div_scalar(&c(24))
}

/// `L_0 = 2 E2(2t) - E2(t)`.
pub fn l0_series<T: Coeff>(precision: i64) -> Series<T> {
    &dilated_e2::<T>(2, precision).scale(&T::from_i64_exact(2)) - &e2_series::<T>(precision)
}

fn c_memo() -> &'static RwLock<Vec<BigInt>> {
    static MEMO: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(Vec::new()))
}

/// `c(0), ..., c(len - 1)` computed from scratch, without touching the memo.
///
/// Dividing `L_0` by `(q^2; q^2)_oo` is done through Euler's pentagonal
/// expansion, which is sparse, so the cost is `O(len^1.5)` additions.
pub fn c_values_uncached(len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    extend_c_values(&mut out, len);
    out
}

fn extend_c_values(values: &mut Vec<BigInt>, len: usize) {
    if values.len() >= len {
        return;
    }
    let sig = divisor_sums(len);
    // exponents 2 g(k) of the pentagonal series of (q^2; q^2), with signs
    let mut pent: Vec<(usize, bool)> = Vec::new();
    for k in 1.. {
        let g_minus = k * (3 * k - 1);
        if g_minus >= len {
            break;
        }
        pent.push((g_minus, k % 2 == 1));
        let g_plus = k * (3 * k + 1);
        if g_plus < len {
            pent.push((g_plus, k % 2 == 1));
        }
    }
    for n in values.len()..len {
        let mut v = if n == 0 {
            BigInt::one()
        } else {
            let mut l0 = 24 * sig[n] as i128;
            if n % 2 == 0 {
                l0 -= 48 * sig[n / 2] as i128;
            }
            BigInt::from(l0)
        };
        // c(n) = L0(n) - sum_{k != 0} (-1)^k c(n - 2 g(k))
        for &(e, odd) in &pent {
            if e > n {
                break;
            }
            if odd {
                v += &values[n - e];
            } else {
                v -= &values[n - e];
            }
        }
        values.push(v);
    }
}

/// `c(0), ..., c(len - 1)`, shared through a process-wide memo.
pub fn c_values(len: usize) -> Vec<BigInt> {
    {
        let memo = c_memo().read().expect("memo lock");
        if memo.len() >= len {
            return memo[..len].to_vec();
        }
    }
    let mut memo = c_memo().write().expect("memo lock");
    extend_c_values(&mut memo, len);
    memo[..len].to_vec()
}

/// Installs externally loaded values of `c` (e.g. from a disk cache) when they
/// extend what is already known. Callers are responsible for validating them.
pub fn prime_c_values(values: Vec<BigInt>) {
    let mut memo = c_memo().write().expect("memo lock");
    if values.len() > memo.len() {
        *memo = values;
    }
}

/// How many values of `c` the memo currently holds.
pub fn c_values_known() -> usize {
    c_memo().read().expect("memo lock").len()
}

/// `sum_{n < precision} c(n) q^n`.
pub fn c_series(precision: i64) -> Series<BigInt> {
    Series::from_coeffs(0, c_values(precision.max(0) as usize), precision)
}

fn five_pow(alpha: u32) -> BigInt {
    num_traits::pow(BigInt::from(5), alpha as usize)
}

/// Least positive `lambda` with `12 lambda = 1 mod 5^alpha`, from its closed form.
pub fn lambda(alpha: u32) -> Result<BigInt> {
    assert!(alpha >= 1, "alpha must be positive");
    let k: u32 = if alpha % 2 == 1 { 7 } else { 11 };
    let num: BigInt = BigInt::one() + five_pow(alpha) * k;
    let (q, r) = num.div_rem(&BigInt::from(12));
    if !r.is_zero() {
        return Err(Error::InexactDivision { divisor: "12".into(), index: alpha as i64 });
    }
    Ok(q)
}

/// Localizing power `floor(5^(alpha+1) / 12) + 1`.
pub fn psi(alpha: u32) -> BigInt {
    assert!(alpha >= 1, "alpha must be positive");
    five_pow(alpha + 1) / 12 + 1
}

/// `L_alpha` from the coefficients `c`: `(q^10;q^10)` (odd alpha) or `(q^2;q^2)`
/// (even alpha) times `sum_n c(5^alpha n + lambda_alpha) q^(n+1)`.
/// `alpha = 0` gives `L_0`.
pub fn l_series_direct(alpha: u32, precision: i64) -> Series<BigInt> {
    if alpha == 0 {
        return l0_series(precision);
    }
    let step = five_pow(alpha).to_usize().expect("alpha is small");
    let lam = lambda(alpha).unwrap().to_usize().expect("alpha is small");
    let terms = (precision - 1).max(0) as usize;
    let needed = if terms == 0 { 0 } else { step * (terms - 1) + lam + 1 };
    let c = c_values(needed);
    let mut coeffs = vec![BigInt::zero(); terms + 1];
    for n in 0..terms {
        coeffs[n + 1] = c[step * n + lam].clone();
    }
    let mut s = Series::from_coeffs(0, coeffs, precision);
    s.mul_pochhammer(if alpha % 2 == 1 { 10 } else { 2 }, 1);
    s
}

/// `L_alpha` by `L_1 = U5(Z L_0)`, `L_{2a} = U5(L_{2a-1})`, `L_{2a+1} = U5(Z L_{2a})`,
/// starting from `L_0` to precision `5^alpha * precision`.
pub fn l_series_recursive(alpha: u32, precision: i64) -> Series<BigInt> {
    let start = precision * 5i64.pow(alpha);
    let mut l = l0_series::<BigInt>(start);
    let z = z_series::<BigInt>(start);
    for k in 1..=alpha {
        l = if k % 2 == 1 { z.mul(&l).u5() } else { l.u5() };
    }
    l.truncate(precision)
}

/// Looks up a named series for display: `z`, `x`, `y`, `rho`, `t`, `F`, `c`, `L0`..`L9`.
pub fn named_series(name: &str, precision: i64) -> Option<Result<Series<BigInt>>> {
    Some(Ok(match name {
        "z" | "Z" => z_series(precision),
        "x" => x_series(precision),
        "y" => y_series(precision),
        "rho" => rho_series(precision),
        "t" => t_series(precision),
        "F" | "f" => return Some(f_series(precision)),
        "c" => c_series(precision),
        _ => {
            let alpha: u32 = name.strip_prefix('L')?.parse().ok()?;
            if alpha > 9 {
                return None;
            }
            l_series_direct(alpha, precision)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn eta_based_series() {
        let y = y_series::<i64>(40);
        let x = x_series::<i64>(40);
        assert_eq!(&x - &Series::one(40), y.scale(&5));
        assert!(x.terms().all(|(n, c)| n == 0 || c % 5 == 0));
        assert_eq!(z_series::<i64>(7).to_dense(), vec![0, 0, 1, 0, 1, 0, 2]);
    }

    #[test]
    fn weight_two_form() {
        let f = f_series::<i64>(8).unwrap();
        assert_eq!(f.to_dense(), vec![1, -1, -1, -4, -1, 19, -4, -8]);
        let inv = f.invert_unit().unwrap();
        assert_eq!(f.mul(&inv), Series::one(8));
    }

    #[test]
    fn c_matches_series_division() {
        let mut l0 = l0_series::<BigInt>(300);
        l0.mul_pochhammer(2, -1);
        assert_eq!(c_values_uncached(300), l0.to_dense());
        assert_eq!(c_values(6), big(&[1, 24, 25, 120, 50, 288]));
        assert!((c_values(24)[23].clone() % 25u32).is_zero());
    }

    #[test]
    fn lambda_and_psi() {
        let l: Vec<BigInt> = (1..=4).map(|a| lambda(a).unwrap()).collect();
        assert_eq!(l, big(&[3, 23, 73, 573]));
        let p: Vec<BigInt> = (1..=4).map(psi).collect();
        assert_eq!(p, big(&[3, 11, 53, 261]));
        assert_eq!(FamilyIndex::new(0), None);
        assert!(FamilyIndex::new(3).unwrap().is_odd());
    }

    #[test]
    fn l_family_two_ways() {
        let l1 = l_series_direct(1, 5);
        assert_eq!(l1.to_dense(), big(&[0, 120, 245, 3480, 3870]));
        for alpha in 1..=3 {
            assert_eq!(l_series_direct(alpha, 12), l_series_recursive(alpha, 12), "alpha {alpha}");
        }
        assert!(l_series_direct(2, 30).terms().all(|(_, c)| (c % 25u32).is_zero()));
        assert_eq!(l_series_direct(0, 3).coeff(0), BigInt::one());
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named_series("L1", 3).unwrap().unwrap().coeff(1), BigInt::from(120));
        assert!(named_series("nope", 3).is_none());
        assert!(named_series("L12", 3).is_none());
    }
}
