//! Truncated Laurent series in `q` with exact integer coefficients.
//!
//! A [`Series`] stores the coefficients of `q^offset .. q^(precision-1)`; every
//! coefficient at index `>= precision` is unknown. All operations propagate
//! precision pessimistically, so a coefficient that can be read is correct.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Eq)]
pub struct Series<T> {
    offset: i64,
    coeffs: Vec<T>,
    precision: i64,
}

impl<T: Coeff> Series<T> {
    /// Builds `sum coeffs[k] q^(offset+k) + O(q^precision)`.
    ///
    /// Coefficients at or beyond `precision` are dropped, missing ones up to
    /// `precision` are zero.
    pub fn from_coeffs(offset: i64, mut coeffs: Vec<T>, precision: i64) -> Self {
        if precision <= offset {
            return Self::zero(precision);
        }
        let len = (precision - offset) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, T::zero());
        let mut s = Series { offset, coeffs, precision };
        s.normalize();
        s
    }

    pub fn from_i64s(offset: i64, coeffs: &[i64], precision: i64) -> Self {
        Self::from_coeffs(offset, coeffs.iter().map(|&c| T::from_i64_exact(c)).collect(), precision)
    }

    /// The zero series known to `O(q^precision)`.
    pub fn zero(precision: i64) -> Self {
        Series { offset: precision - 1, coeffs: vec![T::zero()], precision }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(T::one(), 0, precision)
    }

    pub fn monomial(c: T, exponent: i64, precision: i64) -> Self {
        Self::from_coeffs(exponent, vec![c], precision)
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => *self = Self::zero(self.precision),
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.offset += k as i64;
            }
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset)
        }
    }

    /// Coefficient of `q^n`.
    ///
    /// # Panics
    /// If `n >= precision`: the coefficient is unknown.
    pub fn coeff(&self, n: i64) -> T {
        self.get(n)
            .unwrap_or_else(|| panic!("coefficient of q^{n} requested beyond precision {}", self.precision))
    }

    /// Coefficient of `q^n`, or `None` when it lies beyond the precision.
    pub fn get(&self, n: i64) -> Option<T> {
        if n >= self.precision {
            None
        } else if n < self.offset {
            Some(T::zero())
        } else {
            Some(self.coeffs[(n - self.offset) as usize].clone())
        }
    }

    /// `(exponent, coefficient)` pairs of the stored range.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.offset + k as i64, c))
    }

    /// Dense coefficients of `q^0 .. q^(precision-1)`; requires `offset >= 0`.
    pub fn to_dense(&self) -> Vec<T> {
        assert!(self.offset >= 0 || self.is_zero(), "to_dense on a Laurent series");
        (0..self.precision).map(|n| self.coeff(n)).collect()
    }

    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::from_coeffs(self.offset, self.coeffs.clone(), precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let precision = self.precision.min(other.precision);
        let offset = self.offset.min(other.offset).min(precision - 1);
        let len = (precision - offset) as usize;
        let mut out = vec![T::zero(); len];
        for (e, c) in self.terms() {
            if e < precision {
                out[(e - offset) as usize].add_assign_ref(c);
            }
        }
        for (e, c) in other.terms() {
            if e < precision {
                let slot = &mut out[(e - offset) as usize];
                if subtract {
                    slot.sub_assign_ref(c);
                } else {
                    slot.add_assign_ref(c);
                }
            }
        }
        Self::from_coeffs(offset, out, precision)
    }

    pub fn neg(&self) -> Self {
        Series {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            precision: self.precision,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        Series {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
            precision: self.precision,
        }
    }

    /// Cauchy product; precision `min(P_f + ord g, P_g + ord f)`.
    pub fn mul(&self, other: &Self) -> Self {
        match (self.valuation(), other.valuation()) {
            (None, None) => Self::zero(self.precision.min(other.precision)),
            (None, Some(v)) => Self::zero(self.precision + v),
            (Some(v), None) => Self::zero(other.precision + v),
            (Some(vf), Some(vg)) => {
                let precision = (self.precision + vg).min(other.precision + vf);
                let offset = vf + vg;
                let len = (precision - offset) as usize;
                let mut out = vec![T::zero(); len];
                for (i, a) in self.coeffs.iter().enumerate().take(len) {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                        out[i + j].mul_add_assign(a, b);
                    }
                }
                Self::from_coeffs(offset, out, precision)
            }
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Series { offset: self.offset + k, coeffs: self.coeffs.clone(), precision: self.precision + k }
    }

    /// Multiplicative inverse of `q^v (u0 + u1 q + ...)` with `u0 = +-1`.
    pub fn invert_unit(&self) -> Result<Self> {
        let v = self.offset;
        let u0 = &self.coeffs[0];
        if !(u0.is_one() || (-u0.clone()).is_one()) {
            return Err(Error::NonUnitLeading(u0.to_string()));
        }
        let len = self.coeffs.len();
        let mut g: Vec<T> = Vec::with_capacity(len);
        g.push(u0.clone());
        for n in 1..len {
            let mut acc = T::zero();
            for k in 1..=n {
                acc.mul_add_assign(&self.coeffs[k], &g[n - k]);
            }
            // 1/u0 == u0 for a unit
            g.push(-(acc.mul_ref(u0)));
        }
        Ok(Self::from_coeffs(-v, g, -v + len as i64))
    }

    /// `f^e`; negative exponents go through [`Series::invert_unit`].
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert_unit()? } else { self.clone() };
        let rel = base.precision - base.offset;
        let mut result = Self::one(rel);
        let mut square = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&square);
            }
            k >>= 1;
            if k > 0 {
                square = square.mul(&square);
            }
        }
        Ok(result)
    }

    /// `f(q) -> f(q^k)`.
    pub fn dilate(&self, k: u32) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let k64 = i64::from(k);
        if self.is_zero() {
            return Self::zero(self.precision * k64);
        }
        let offset = self.offset * k64;
        let precision = self.precision * k64;
        let mut out = vec![T::zero(); (precision - offset) as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * k as usize] = c.clone();
        }
        Self::from_coeffs(offset, out, precision)
    }

    /// Hecke-type coefficient extraction `sum a(l m) q^m`.
    pub fn u_ell(&self, ell: u32) -> Self {
        assert!(ell >= 1);
        let l = i64::from(ell);
        let precision = Integer::div_ceil(&self.precision, &l);
        let offset = Integer::div_ceil(&self.offset, &l).min(precision - 1);
        let out: Vec<T> = (offset..precision)
            .map(|m| self.get(l * m).unwrap_or_else(T::zero))
            .collect();
        Self::from_coeffs(offset, out, precision)
    }

    /// `U_5: sum a(m) q^m -> sum a(5m) q^m`.
    pub fn u5(&self) -> Self {
        self.u_ell(5)
    }

    /// Divides every coefficient by `d`, failing on the first inexact index.
    pub fn exact_div_scalar(&self, d: &T) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.terms() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision { divisor: d.to_string(), index: e });
            }
            out.push(q);
        }
        Ok(Self::from_coeffs(self.offset, out, self.precision))
    }

    /// Multiplies in place by `prod_{m>=1} (1 - q^(step*m))^exponent`.
    ///
    /// The factor is `1 + O(q^step)`, so offset and precision are unchanged.
    /// Each elementary factor `(1 - q^k)^{+-1}` is one linear pass.
    pub fn mul_pochhammer(&mut self, step: u64, exponent: i64) {
        assert!(step >= 1);
        let len = self.coeffs.len();
        let mut k = step as usize;
        while k < len {
            for _ in 0..exponent.unsigned_abs() {
                if exponent > 0 {
                    for n in (k..len).rev() {
                        let (lo, hi) = self.coeffs.split_at_mut(n);
                        hi[0].sub_assign_ref(&lo[n - k]);
                    }
                } else {
                    for n in k..len {
                        let (lo, hi) = self.coeffs.split_at_mut(n);
                        hi[0].add_assign_ref(&lo[n - k]);
                    }
                }
            }
            k += step as usize;
        }
        self.normalize();
    }

    /// Text form used by the on-disk cache: a header line `name offset precision`
    /// followed by one decimal coefficient per line for indices
    /// `offset..precision`, every line LF-terminated.
    pub fn to_cache_text(&self, name: &str) -> String {
        assert!(!name.is_empty() && !name.contains(char::is_whitespace), "cache names are single tokens");
        let mut s = format!("{} {} {}\n", name, self.offset, self.precision);
        for c in &self.coeffs {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }

    /// Strict inverse of [`Series::to_cache_text`].
    pub fn from_cache_text(text: &str) -> Result<(String, Self)> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let body = text.strip_suffix('\n').ok_or_else(|| bad("missing final LF"))?;
        let mut lines = body.split('\n');
        let header = lines.next().ok_or_else(|| bad("empty"))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 3 || fields.iter().any(|f| f.is_empty()) {
            return Err(bad("header must be `name offset precision`"));
        }
        let offset: i64 = fields[1].parse().map_err(|_| bad("bad offset"))?;
        let precision: i64 = fields[2].parse().map_err(|_| bad("bad precision"))?;
        if precision <= offset {
            return Err(bad("precision must exceed offset"));
        }
        let mut coeffs = Vec::with_capacity((precision - offset) as usize);
        for line in lines {
            if line.is_empty() || line.starts_with('+') || line.trim() != line {
                return Err(bad("coefficient lines must be bare decimal integers"));
            }
            coeffs.push(T::from_str_radix(line, 10).map_err(|_| bad("bad coefficient"))?);
        }
        if coeffs.len() as i64 != precision - offset {
            return Err(bad("coefficient count does not match header"));
        }
        let s = Series { offset, coeffs, precision };
        // only canonical text round-trips bit-exactly
        let mut canon = s.clone();
        canon.normalize();
        if canon != s {
            return Err(bad("series text is not in normalized form"));
        }
        Ok((fields[0].to_string(), s))
    }
}

/// `prod_{delta | level} eta(delta tau)^{r_delta}` expanded to `O(q^precision)`,
/// including the prefactor `q^{sum delta r_delta / 24}`.
pub fn eta_product<T: Coeff>(level: u64, exps: &BTreeMap<u64, i64>, precision: i64) -> Result<Series<T>> {
    let weighted: i64 = exps.iter().map(|(&d, &r)| d as i64 * r).sum();
    if weighted % 24 != 0 {
        return Err(Error::FractionalPrefactor(weighted));
    }
    let shift = weighted / 24;
    let rel = precision - shift;
    if rel <= 0 {
        return Ok(Series::zero(precision));
    }
    let mut s = Series::<T>::one(rel);
    for (&d, &r) in exps {
        assert!(d >= 1 && level.is_multiple_of(d), "eta exponent key {d} does not divide level {level}");
        if r != 0 {
            s.mul_pochhammer(d, r);
        }
    }
    Ok(s.shift(shift))
}

/// Sum of divisors `sigma_1(n)` for `n < len`, by sieve.
pub fn divisor_sums(len: usize) -> Vec<u64> {
    let mut sig = vec![0u64; len];
    for d in 1..len {
        for m in (d..len).step_by(d) {
            sig[m] += d as u64;
        }
    }
    sig
}

/// `E_2 = 1 - 24 sum sigma_1(n) q^n` to `O(q^precision)`.
pub fn e2_series<T: Coeff>(precision: i64) -> Series<T> {
    let len = precision.max(1) as usize;
    let sig = divisor_sums(len);
    let coeffs: Vec<T> = (0..len)
        .map(|n| {
            if n == 0 {
                T::one()
            } else {
                T::from_i64_exact(-24 * sig[n] as i64)
            }
        })
        .collect();
    Series::from_coeffs(0, coeffs, precision)
}

impl<T: Coeff> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Coeff> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
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
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision)
    }
}

impl<T: Coeff> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: Self) -> Series<T> {
        Series::add(self, rhs)
    }
}

impl<T: Coeff> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: Self) -> Series<T> {
        Series::sub(self, rhs)
    }
}

impl<T: Coeff> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: Self) -> Series<T> {
        Series::mul(self, rhs)
    }
}

impl<T: Coeff> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series::neg(self)
    }
}
