//! The ring `Z[y]` localized at the powers of `1 + 5y`, and the 5-adic
//! valuation profiles used to describe the sets the `L_alpha` live in.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::valuation;
use crate::series::Series;
use crate::specialfns::{x_series, y_series};

/// Minimum number of spare coefficients [`recover`] insists on.
pub const RECOVER_GUARD: i64 = 10;

/// `numer(y) / (1 + 5y)^denom_exp`.
///
/// The representation is not forced to be canonical: membership in the
/// valuation sets depends on the exponent the caller chose.
#[derive(Clone)]
pub struct LocalizedElement {
    numer: Poly<BigInt>,
    denom_exp: u32,
}

impl LocalizedElement {
    pub fn new(numer: Poly<BigInt>, denom_exp: u32) -> Self {
        LocalizedElement { numer, denom_exp }
    }

    pub fn polynomial(numer: Poly<BigInt>) -> Self {
        Self::new(numer, 0)
    }

    pub fn from_i64s(coeffs: &[i64], denom_exp: u32) -> Self {
        Self::new(Poly::from_i64s(coeffs), denom_exp)
    }

    pub fn zero() -> Self {
        Self::polynomial(Poly::zero())
    }

    pub fn one() -> Self {
        Self::polynomial(Poly::one())
    }

    /// `y^m`
    pub fn y_pow(m: usize) -> Self {
        Self::polynomial(Poly::monomial(BigInt::one(), m))
    }

    /// `(1 + 5y)^n` for any integer `n`.
    pub fn x_pow(n: i64) -> Self {
        if n >= 0 {
            Self::polynomial(Poly::one().mul_one_plus_5y_pow(n as u32))
        } else {
            Self::new(Poly::one(), (-n) as u32)
        }
    }

    /// `y^m / (1 + 5y)^n`
    pub fn y_over_x(m: usize, n: i64) -> Self {
        Self::y_pow(m).mul_x_pow(-n)
    }

    pub fn numer(&self) -> &Poly<BigInt> {
        &self.numer
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Coefficient of `y^m` in the numerator.
    pub fn coeff(&self, m: usize) -> BigInt {
        self.numer.coeff(m)
    }

    /// Same value written over `(1 + 5y)^n`, if that is possible.
    pub fn with_denom_exp(&self, n: u32) -> Option<Self> {
        if n >= self.denom_exp {
            return Some(Self::new(self.numer.mul_one_plus_5y_pow(n - self.denom_exp), n));
        }
        let mut numer = self.numer.clone();
        for _ in n..self.denom_exp {
            numer = if numer.is_zero() { numer } else { numer.div_one_plus_5y()? };
        }
        Some(Self::new(numer, n))
    }

    /// Cancels common factors of `1 + 5y`.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        if out.numer.is_zero() {
            out.denom_exp = 0;
            return out;
        }
        while out.denom_exp > 0 {
            match out.numer.div_one_plus_5y() {
                Some(q) => {
                    out.numer = q;
                    out.denom_exp -= 1;
                }
                None => break,
            }
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().denom_exp == self.denom_exp
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.denom_exp.max(other.denom_exp);
        let a = self.numer.mul_one_plus_5y_pow(d - self.denom_exp);
        let b = other.numer.mul_one_plus_5y_pow(d - other.denom_exp);
        Self::new(a.add(&b), d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.numer.neg(), self.denom_exp)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.numer.scale(c), self.denom_exp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.numer.mul(&other.numer), self.denom_exp + other.denom_exp)
    }

    pub fn mul_poly(&self, p: &Poly<BigInt>) -> Self {
        Self::new(self.numer.mul(p), self.denom_exp)
    }

    /// Multiplies by `(1 + 5y)^k`; a negative `k` only raises the denominator.
    pub fn mul_x_pow(&self, k: i64) -> Self {
        if k >= 0 {
            Self::new(self.numer.mul_one_plus_5y_pow(k as u32), self.denom_exp)
        } else {
            Self::new(self.numer.clone(), self.denom_exp + (-k) as u32)
        }
    }

    pub fn exact_div_scalar(&self, d: &BigInt) -> Result<Self> {
        Ok(Self::new(self.numer.exact_div_scalar(d)?, self.denom_exp))
    }

    /// `numer(y) * x^{-denom_exp}` as a q-series to `O(q^precision)`.
    pub fn to_qseries(&self, precision: i64) -> Series<BigInt> {
        let y = y_series::<BigInt>(precision);
        let p = self.numer.eval_series(&y);
        if self.denom_exp == 0 {
            return p;
        }
        let xinv = x_series::<BigInt>(precision).pow_int(-(self.denom_exp as i64)).expect("x is a unit");
        p.mul(&xinv)
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        let d = self.denom_exp.max(other.denom_exp);
        self.numer.mul_one_plus_5y_pow(d - self.denom_exp) == other.numer.mul_one_plus_5y_pow(d - other.denom_exp)
    }
}

impl Eq for LocalizedElement {}

impl fmt::Debug for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / (1 + 5*y)^{}", self.numer, self.denom_exp)
        }
    }
}

/// The unique `p` of degree `<= max_deg` with `p(y) / (1 + 5y)^n = f` to the
/// precision of `f`.
pub fn recover(f: &Series<BigInt>, denom_exp: u32, max_deg: usize) -> Result<LocalizedElement> {
    let need = max_deg as i64 + 1 + RECOVER_GUARD;
    if f.precision() < need {
        return Err(Error::InsufficientPrecision { have: f.precision(), need });
    }
    recover_unguarded(f, denom_exp, max_deg)
}

/// [`recover`] without the guard requirement, for callers that check the
/// residual some other way.
pub fn recover_unguarded(f: &Series<BigInt>, denom_exp: u32, max_deg: usize) -> Result<LocalizedElement> {
    let precision = f.precision();
    if !f.is_zero() && f.offset() < 0 {
        return Err(Error::NotPolynomial { max_deg, index: f.offset() });
    }
    let x = x_series::<BigInt>(precision);
    let mut residual = f.mul(&x.pow_int(denom_exp as i64).expect("x is a unit"));
    let y = y_series::<BigInt>(precision);
    let mut ypow = Series::<BigInt>::one(precision);
    let mut p = Vec::with_capacity(max_deg + 1);
    for j in 0..=max_deg as i64 {
        if j >= precision {
            break;
        }
        // y^j = q^j + O(q^{j+1}), so the system is unitriangular
        debug_assert!(ypow.coeff(j).is_one());
        let pj = residual.coeff(j);
        if !pj.is_zero() {
            residual = residual.sub(&ypow.scale(&pj));
        }
        p.push(pj);
        ypow = ypow.mul(&y);
    }
    if let Some(index) = residual.valuation() {
        return Err(Error::NotPolynomial { max_deg, index });
    }
    Ok(LocalizedElement::new(Poly::new(p), denom_exp))
}

fn floor6(a: i64) -> i64 {
    Integer::div_floor(&a, &6)
}

fn check_domain(name: &'static str, m: i64, r: i64) -> Result<()> {
    if m < 1 || r < 1 {
        return Err(Error::DomainError { name, m, r });
    }
    Ok(())
}

pub fn theta(m: i64) -> Result<i64> {
    check_domain("theta", m, 1)?;
    Ok(floor6(5 * m - 5) - i64::from(m >= 3))
}

pub fn phi(m: i64) -> Result<i64> {
    check_domain("phi", m, 1)?;
    Ok(floor6(5 * m - 5) - i64::from(m >= 4))
}

/// Minimal 5-adic valuation of the `y^r` coefficient of `U^(1)(y^m / x^n)`.
pub fn pi1(m: i64, r: i64) -> Result<i64> {
    check_domain("pi1", m, r)?;
    Ok(match (m, r) {
        (1..=2, 1) => 0,
        (1..=2, 3) => 3,
        (1..=2, _) => floor6(5 * r + 1),
        (3, 2) => 2,
        (3, _) => floor6(5 * r - 2),
        _ => floor6(5 * r - m + 1),
    })
}

/// Minimal 5-adic valuation of the `y^r` coefficient of `U^(0)(y^m / x^n)`.
pub fn pi0(m: i64, r: i64) -> Result<i64> {
    check_domain("pi0", m, r)?;
    Ok(match (m, r) {
        (1, _) => floor6(5 * r + 1),
        (2, 3..=5) => floor6(5 * r - 5),
        (2, _) => floor6(5 * r + 1),
        _ => floor6(5 * r - m - 2),
    })
}

/// One of the piecewise valuation functions, with `pi0`/`pi1` fixing `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationProfile {
    Theta,
    Phi,
    Pi0(i64),
    Pi1(i64),
}

impl ValuationProfile {
    pub fn eval(self, arg: i64) -> Result<i64> {
        match self {
            ValuationProfile::Theta => theta(arg),
            ValuationProfile::Phi => phi(arg),
            ValuationProfile::Pi0(m) => pi0(m, arg),
            ValuationProfile::Pi1(m) => pi1(m, arg),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MembershipKind {
    V0,
    V1,
    W1,
}

impl MembershipKind {
    pub fn profile(self) -> ValuationProfile {
        match self {
            MembershipKind::V0 => ValuationProfile::Phi,
            MembershipKind::V1 | MembershipKind::W1 => ValuationProfile::Theta,
        }
    }
}

/// Outcome of a membership test. `s[m-1]` is `coeff_m / 5^profile(m)` when the
/// division is exact; `margins[m-1]` is `v5(coeff_m) - profile(m)` (`None` for
/// zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub kind: MembershipKind,
    pub denom_exp: u32,
    pub ok: bool,
    pub s: Vec<Option<BigInt>>,
    pub margins: Vec<Option<i64>>,
    /// `0` flags a nonzero constant term.
    pub first_violation: Option<usize>,
    pub sum_mod5: Option<u32>,
}

impl MembershipReport {
    pub fn to_json(&self) -> serde_json::Value {
        let s: Vec<_> = self.s.iter().map(|v| v.as_ref().map(|b| b.to_string())).collect();
        serde_json::json!({
            "kind": self.kind,
            "ok": self.ok,
            "denom_exp": self.denom_exp,
            "s": s,
            "first_violation": self.first_violation,
            "sum_mod5": self.sum_mod5,
            "profile": match self.kind.profile() { ValuationProfile::Phi => "phi", _ => "theta" },
            "note": "V1/W1 use theta and V0 uses phi, as in the proofs; the displayed set definitions have the two swapped",
        })
    }
}

/// Membership in `V_n^(0)` (`kind = 0`, profile `phi`) or `V_n^(1)` (`kind = 1`,
/// profile `theta`), with `n` the element's own denominator exponent.
pub fn membership_v(e: &LocalizedElement, kind: u8) -> MembershipReport {
    let kind = if kind == 0 { MembershipKind::V0 } else { MembershipKind::V1 };
    check_profile(e, kind)
}

fn check_profile(e: &LocalizedElement, kind: MembershipKind) -> MembershipReport {
    let profile = kind.profile();
    let mut first_violation = None;
    if !e.coeff(0).is_zero() {
        first_violation = Some(0);
    }
    let deg = e.numer().degree().unwrap_or(0);
    let mut s = Vec::with_capacity(deg);
    let mut margins = Vec::with_capacity(deg);
    for m in 1..=deg {
        let c = e.coeff(m);
        let need = profile.eval(m as i64).expect("m >= 1");
        let margin = valuation(&c, 5).map(|v| v as i64 - need);
        let ok = margin.is_none_or(|d| d >= 0);
        if !ok && first_violation.is_none() {
            first_violation = Some(m);
        }
        s.push(ok.then(|| divide_by_five_power(&c, need)));
        margins.push(margin);
    }
    MembershipReport {
        kind,
        denom_exp: e.denom_exp(),
        ok: first_violation.is_none(),
        s,
        margins,
        first_violation,
        sum_mod5: None,
    }
}

fn divide_by_five_power(c: &BigInt, k: i64) -> BigInt {
    if k <= 0 {
        c * num_traits::pow(BigInt::from(5), (-k) as usize)
    } else {
        c / num_traits::pow(BigInt::from(5), k as usize)
    }
}

/// Membership in `W_n^(1)`: `V_n^(1)` plus `s(1) + s(2) + s(3) = 0 (mod 5)`.
pub fn membership_w(e: &LocalizedElement) -> MembershipReport {
    let mut report = check_profile(e, MembershipKind::W1);
    if report.ok {
        let sum: BigInt = (0..3).filter_map(|k| report.s.get(k).cloned().flatten()).sum();
        let r = sum.mod_floor(&BigInt::from(5)).to_u32().unwrap();
        report.sum_mod5 = Some(r);
        report.ok = r == 0;
    }
    report
}

/// `sum_m s(m) 5^profile(m) y^m / (1 + 5y)^denom_exp`, with `s[0]` holding `s(1)`.
pub fn element_from_s(s: &[BigInt], kind: MembershipKind, denom_exp: u32) -> LocalizedElement {
    let profile = kind.profile();
    let mut coeffs = vec![BigInt::zero()];
    for (k, v) in s.iter().enumerate() {
        let need = profile.eval(k as i64 + 1).unwrap();
        coeffs.push(divide_by_five_power(v, -need));
    }
    LocalizedElement::new(Poly::new(coeffs), denom_exp)
}
