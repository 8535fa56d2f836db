//! The degree-5 modular equations for `y` and `x = 1 + 5y`, the twisted
//! operators `U^(i)(f) = U5(F Z^(1-i) f) / F`, evaluated both numerically on
//! q-series and symbolically on the localized ring, and the coefficient
//! arrays `h_i(m, n, r)` extracted from the symbolic images.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::localring::{pi0, pi1, LocalizedElement};
use crate::poly::Poly;
use crate::scalar::{binomial, pow_u32, valuation};
use crate::series::Series;
use crate::specialfns::{f_series, x_series, y_series, z_series};

/// Spare output coefficients used when a numeric check feeds `U5`.
pub const NUMERIC_GUARD: i64 = 25;

type P = Poly<BigInt>;

fn five_pow(k: u32) -> BigInt {
    pow_u32(5, k)
}

/// Coefficients written as `c * 5^e`, the way the relations are usually printed.
fn scaled(terms: &[(i64, u32)]) -> P {
    Poly::new(terms.iter().map(|&(c, e)| BigInt::from(c) * five_pow(e)).collect())
}

/// `y^5 + sum_j a_j(y(5t)) y^j = 0` and `x^5 + sum_k b_k(x(5t)) x^k = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularEquation {
    /// `a_0..a_4` as polynomials in `y`.
    pub a: [P; 5],
    /// `b_0..b_5` as polynomials in `x`; `b_5 = 1`.
    pub b: [P; 6],
}

impl ModularEquation {
    pub fn standard() -> Self {
        let a = [
            P::from_i64s(&[0, -1, -20, -150, -500, -625]),
            P::from_i64s(&[0, -15, -305, -2325, -7875, -10000]),
            P::from_i64s(&[0, -85, -1750, -13525, -46500, -60000]),
            P::from_i64s(&[0, -215, -4475, -35000, -122000, -160000]),
            P::from_i64s(&[0, -205, -4300, -34000, -120000, -160000]),
        ];
        let b = [
            P::from_i64s(&[0, 0, 0, 0, 0, -1]),
            P::from_i64s(&[1, 5, 5, 5, 5, -16]),
            P::from_i64s(&[-4, -15, 10, 35, 60, -96]),
            P::from_i64s(&[6, 15, -35, 40, 240, -256]),
            P::from_i64s(&[-4, -5, 20, -80, 320, -256]),
            P::one(),
        ];
        ModularEquation { a, b }
    }

    /// Adds `delta` to the `y^k` coefficient of `a_j`.
    pub fn with_a_perturbed(&self, j: usize, k: usize, delta: i64) -> Self {
        let mut out = self.clone();
        out.a[j] = out.a[j].add(&P::monomial(BigInt::from(delta), k));
        out
    }

    /// `b_k` rewritten as a polynomial in `y` through `x = 1 + 5y`.
    pub fn b_in_y(&self) -> [P; 6] {
        let x = P::one_plus_5y();
        std::array::from_fn(|k| self.b[k].compose(&x))
    }

    /// Expands `y^5 + sum_j a_j(y(5t)) y^j` and checks it vanishes to `O(q^precision)`.
    pub fn verify_y(&self, precision: i64) -> Result<()> {
        let y = y_series::<BigInt>(precision);
        let y5 = dilated(&y, precision);
        let mut total = y.pow_int(5).unwrap();
        let mut yj = Series::one(precision);
        for a in &self.a {
            total = total.add(&a.eval_series(&y5).mul(&yj));
            yj = yj.mul(&y);
        }
        vanishes(&total, "y^5 + sum a_j(y(5t)) y^j")
    }

    pub fn verify_x(&self, precision: i64) -> Result<()> {
        let x = x_series::<BigInt>(precision);
        let x5 = dilated(&x, precision);
        let mut total = Series::zero(precision);
        let mut xk = Series::one(precision);
        for b in &self.b {
            total = total.add(&b.eval_series(&x5).mul(&xk));
            xk = xk.mul(&x);
        }
        vanishes(&total, "sum b_k(x(5t)) x^k")
    }

    /// Substituting `x = 1 + 5y` (and `x(5t) = 1 + 5y(5t)`) into the `x`
    /// equation must give `5^5` times the `y` equation, as polynomials in two
    /// variables. Compares coefficients of `y^t` one at a time.
    pub fn verify_b_from_a(&self) -> Result<()> {
        let b = self.b_in_y();
        let scale = five_pow(5);
        for t in 0..=5u32 {
            let mut lhs = P::zero();
            for (k, bk) in b.iter().enumerate() {
                let c: BigInt = binomial::<BigInt>(k as u64, t as u64) * five_pow(t);
                lhs = lhs.add(&bk.scale(&c));
            }
            let rhs = if t == 5 { P::constant(scale.clone()) } else { self.a[t as usize].scale(&scale) };
            if lhs != rhs {
                return Err(Error::IdentityViolation {
                    identity: "x-equation at x = 1 + 5y versus 5^5 times the y-equation".into(),
                    index: t as i64,
                });
            }
        }
        Ok(())
    }
}

fn dilated(s: &Series<BigInt>, precision: i64) -> Series<BigInt> {
    s.truncate(Integer::div_ceil(&precision, &5)).dilate(5).truncate(precision)
}

fn vanishes(s: &Series<BigInt>, identity: &str) -> Result<()> {
    match s.valuation() {
        None => Ok(()),
        Some(index) => Err(Error::IdentityViolation { identity: identity.into(), index }),
    }
}

pub fn verify_modeq_y(precision: i64) -> Result<()> {
    ModularEquation::standard().verify_y(precision)
}

pub fn verify_modeq_x(precision: i64) -> Result<()> {
    ModularEquation::standard().verify_x(precision)
}

/// `U5(F Z^(1-i) f) / F` on a q-series; the result has precision about `P/5`.
pub fn u_op_numeric(i: u8, f: &Series<BigInt>) -> Series<BigInt> {
    let precision = f.precision();
    let big_f = f_series::<BigInt>(precision).expect("F has integral coefficients");
    let mut g = big_f.mul(f);
    if i == 0 {
        g = g.mul(&z_series(precision));
    }
    let u = g.u5();
    let f_inv = big_f.truncate(u.precision()).invert_unit().expect("F is a unit");
    u.mul(&f_inv)
}

/// Images `U^(i)(y^k)` for `k = 0..4`: the only hard-coded data the symbolic
/// operator rests on.
fn base_image_table(i: u8) -> [LocalizedElement; 5] {
    let poly = |t: &[(i64, u32)]| LocalizedElement::polynomial(scaled(t));
    if i == 1 {
        [
            LocalizedElement::new(scaled(&[(1, 0), (1, 2), (16, 1)]), 1),
            poly(&[(0, 0), (1, 0)]),
            poly(&[(0, 0), (51, 0), (471, 1), (1364, 2), (1776, 3), (1088, 4), (256, 5)]),
            poly(&[
                (0, 0), (41, 0), (2474, 1), (29193, 2), (152248, 3), (2231024, 3), (814336, 5),
                (4833536, 5), (3753984, 6), (1847296, 7), (524288, 8), (65536, 9),
            ]),
            poly(&[
                (0, 0), (11, 0), (3981, 1), (138181, 2), (8956203, 2), (62033852, 3), (53739872, 5),
                (791357952, 5), (1662808832, 6), (2561985536, 7), (14663327744, 7), (2496888832, 9),
                (7817854976, 9), (3503816704, 10), (1065353216, 11), (197132288, 12), (16777216, 13),
            ]),
        ]
    } else {
        [
            LocalizedElement::new(scaled(&[(0, 0), (-5, 0), (-4, 1)]), 1),
            poly(&[(0, 0), (5, 0), (4, 1)]),
            poly(&[(0, 0), (5, 0), (153, 1), (3956, 1), (8528, 2), (9152, 3), (4864, 4), (1024, 5)]),
            poly(&[
                (0, 0), (1, 0), (1874, 0), (40101, 1), (309864, 2), (1252624, 3), (3071232, 4),
                (4892928, 5), (26039296, 5), (18464768, 6), (8404992, 7), (2228224, 8), (262144, 9),
            ]),
            poly(&[
                (0, 0), (0, 0), (329, 1), (116926, 1), (2285653, 2), (21410212, 3), (119101984, 4),
                (438497152, 5), (45458688, 8), (2150618112, 7), (3033554944, 8), (3217784832, 9),
                (12811829248, 9), (37793038336, 9), (16051601408, 10), (4647288832, 11),
                (822083584, 12), (67108864, 13),
            ]),
        ]
    }
}

fn numeric_mismatch(
    i: u8,
    arg: &LocalizedElement,
    image: &LocalizedElement,
    out_precision: i64,
) -> Option<i64> {
    let input = 5 * (out_precision + NUMERIC_GUARD);
    let lhs = u_op_numeric(i, &arg.to_qseries(input));
    assert!(lhs.precision() >= out_precision + NUMERIC_GUARD, "numeric guard consumed");
    let lhs = lhs.truncate(out_precision);
    let rhs = image.to_qseries(out_precision);
    lhs.sub(&rhs).valuation()
}

/// The ten hard-coded images, each checked against the numeric operator to
/// `O(q^out_precision)`.
pub fn u_base_images(i: u8, out_precision: i64) -> Result<[LocalizedElement; 5]> {
    let table = base_image_table(i);
    for (k, image) in table.iter().enumerate() {
        if let Some(index) = numeric_mismatch(i, &LocalizedElement::y_pow(k), image, out_precision) {
            return Err(Error::FundamentalRelationViolation { i, k, index });
        }
    }
    Ok(table)
}

/// `kappa_i`: the image of `y^m / (1+5y)^n` has denominator `(1+5y)^(5n - kappa_i)`.
pub fn kappa(i: u8) -> i64 {
    if i == 1 {
        4
    } else {
        2
    }
}

/// Symbolic `U^(i)` on the localized ring.
///
/// Images of `y^k` (k >= 5) come from the `y` equation, images of `x^-n`
/// from the `x` equation; both are memoized behind a lock so the engine can
/// be shared across threads.
pub struct UEngine {
    i: u8,
    a: [P; 5],
    b_y: [P; 6],
    y_images: RwLock<Vec<LocalizedElement>>,
    /// `x_inv_images[n] = U(x^-n)`
    x_inv_images: RwLock<Vec<LocalizedElement>>,
}

impl UEngine {
    /// Builds the engine on hard-coded images that are trusted as given.
    pub fn with_equation(i: u8, eq: &ModularEquation) -> Self {
        let base = base_image_table(i);
        UEngine {
            i,
            a: eq.a.clone(),
            b_y: eq.b_in_y(),
            x_inv_images: RwLock::new(vec![base[0].clone()]),
            y_images: RwLock::new(base.to_vec()),
        }
    }

    /// Engine for `U^(i)` after checking the ten images numerically.
    pub fn new(i: u8) -> Result<Self> {
        assert!(i <= 1, "operator index is 0 or 1");
        let eq = ModularEquation::standard();
        eq.verify_b_from_a()?;
        u_base_images(i, 60)?;
        Ok(Self::with_equation(i, &eq))
    }

    /// Process-wide engines, built and checked on first use.
    pub fn shared(i: u8) -> Result<&'static UEngine> {
        static ENGINES: [OnceLock<std::result::Result<UEngine, Error>>; 2] = [OnceLock::new(), OnceLock::new()];
        ENGINES[i as usize].get_or_init(|| UEngine::new(i)).as_ref().map_err(Clone::clone)
    }

    pub fn index(&self) -> u8 {
        self.i
    }

    /// `U(y^k)`
    pub fn u_power_y(&self, k: usize) -> LocalizedElement {
        {
            let memo = self.y_images.read().unwrap();
            if let Some(v) = memo.get(k) {
                return v.clone();
            }
        }
        let mut memo = self.y_images.write().unwrap();
        while memo.len() <= k {
            // U(y^n) = -sum_j a_j(y) U(y^(n-5+j))
            let n = memo.len();
            let mut acc = LocalizedElement::zero();
            for (j, a) in self.a.iter().enumerate() {
                acc = acc.add(&memo[n - 5 + j].mul_poly(a));
            }
            memo.push(acc.neg().canonical());
        }
        memo[k].clone()
    }

    /// `U((1 + 5y)^n)` for any integer `n`.
    pub fn u_power_x(&self, n: i64) -> LocalizedElement {
        if n >= 0 {
            let mut acc = LocalizedElement::zero();
            for k in 0..=n as u64 {
                let c: BigInt = binomial::<BigInt>(n as u64, k) * five_pow(k as u32);
                acc = acc.add(&self.u_power_y(k as usize).scale(&c));
            }
            return acc.canonical();
        }
        let want = (-n) as usize;
        {
            let memo = self.x_inv_images.read().unwrap();
            if let Some(v) = memo.get(want) {
                return v.clone();
            }
        }
        let mut nonneg: Vec<LocalizedElement> = (0..=4).map(|k| self.u_power_x(k)).collect();
        let mut memo = self.x_inv_images.write().unwrap();
        while memo.len() <= want {
            // U(x^m) = x^-5 sum_{k=1..5} b_k(y) U(x^(m+k)),  m = -len
            let m = -(memo.len() as i64);
            let mut acc = LocalizedElement::zero();
            for k in 1..=5i64 {
                let e = m + k;
                let img = if e <= 0 { &memo[(-e) as usize] } else { &nonneg[e as usize] };
                acc = acc.add(&img.mul_poly(&self.b_y[k as usize]));
            }
            memo.push(acc.mul_x_pow(-5).canonical());
        }
        nonneg.clear();
        memo[want].clone()
    }

    /// `U` of an arbitrary element `p(y) / (1 + 5y)^d`.
    ///
    /// Writes `5^D p((x - 1)/5)` as a polynomial in `x` (D = deg p), applies
    /// `U` to each power `x^(r-d)`, and divides by `5^D` at the end. That last
    /// division is exact exactly when the integrality claims hold.
    pub fn apply(&self, e: &LocalizedElement) -> Result<LocalizedElement> {
        let Some(deg) = e.numer().degree() else {
            return Ok(LocalizedElement::zero());
        };
        let x_minus_1 = P::from_i64s(&[-1, 1]);
        let mut in_x = P::zero();
        for m in (0..=deg).rev() {
            let c = e.coeff(m) * five_pow((deg - m) as u32);
            in_x = in_x.mul(&x_minus_1).add(&P::constant(c));
        }
        let d = e.denom_exp() as i64;
        let mut acc = LocalizedElement::zero();
        for (r, c) in in_x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.u_power_x(r as i64 - d).scale(c));
            }
        }
        acc.exact_div_scalar(&five_pow(deg as u32)).map(|v| v.canonical())
    }

    /// `U(y^m / (1 + 5y)^n)`
    pub fn u_y_over_x(&self, m: usize, n: i64) -> Result<LocalizedElement> {
        self.apply(&LocalizedElement::y_over_x(m, n))
    }

    /// Checks `U(y^m/x^n) = -x^-5 sum_{j<5, 1<=k<=5} a_j b_k U(y^(m+j-5) / x^(n-k))`
    /// using the coefficient tables of `eq`.
    pub fn verify_recurrence_step(&self, eq: &ModularEquation, m: usize, n: i64) -> Result<()> {
        if m < 5 {
            return Err(Error::DomainError { name: "recurrence step", m: m as i64, r: n });
        }
        let lhs = self.u_y_over_x(m, n)?;
        let b_y = eq.b_in_y();
        let mut rhs = LocalizedElement::zero();
        for (j, a) in eq.a.iter().enumerate() {
            for (k, b) in b_y.iter().enumerate().skip(1) {
                let term = self.u_y_over_x(m + j - 5, n - k as i64)?;
                rhs = rhs.add(&term.mul_poly(&a.mul(b)));
            }
        }
        let rhs = rhs.neg().mul_x_pow(-5);
        if lhs != rhs {
            let diff = lhs.sub(&rhs).canonical();
            let index = diff.numer().coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0) as i64;
            return Err(Error::IdentityViolation {
                identity: format!("recurrence step for U^({})(y^{m}/(1+5y)^{n})", self.i),
                index,
            });
        }
        Ok(())
    }

    /// Compares `self.apply(arg)` with the numeric operator to `O(q^out_precision)`.
    pub fn check_numeric(&self, arg: &LocalizedElement, out_precision: i64) -> Result<LocalizedElement> {
        let image = self.apply(arg)?;
        if let Some(index) = numeric_mismatch(self.i, arg, &image, out_precision) {
            return Err(Error::SymbolicNumericMismatch { what: format!("U^({})({arg})", self.i), index });
        }
        Ok(image)
    }
}

/// `h_i(m, n, r)` for one `(m, n)`: the image written over `(1+5y)^(5n - kappa)`
/// with each coefficient divided by `5^pi_i(m, r)`; entry `r` of the result
/// is `h_i(m, n, r)` (entry 0 is always zero).
pub fn h_column(engine: &UEngine, m: usize, n: i64) -> Result<Vec<BigInt>> {
    let i = engine.index();
    let image = engine.u_y_over_x(m, n)?;
    let expected = 5 * n - kappa(i);
    if image.denom_exp() as i64 > expected || expected < 0 {
        return Err(Error::DenominatorMismatch { expected, found: image.denom_exp() as i64 });
    }
    let image = image.with_denom_exp(expected as u32).expect("raising the denominator always works");
    let min_r = if i == 1 { Integer::div_ceil(&m, &5) } else { Integer::div_ceil(&(m + 2), &5) };
    let mut out = Vec::with_capacity(image.numer().coeffs().len());
    for (r, c) in image.numer().coeffs().iter().enumerate() {
        if c.is_zero() {
            out.push(BigInt::zero());
            continue;
        }
        if r < min_r.max(1) {
            return Err(Error::SupportViolation { i, m: m as u32, n, r });
        }
        let need = if i == 1 { pi1(m as i64, r as i64) } else { pi0(m as i64, r as i64) }.expect("m, r >= 1");
        let found = valuation(c, 5).expect("nonzero");
        if (found as i64) < need {
            return Err(Error::ValuationViolation { i, m: m as u32, n, r, found, required: need });
        }
        out.push(if need >= 0 { c / five_pow(need as u32) } else { c * five_pow((-need) as u32) });
    }
    Ok(out)
}

/// `h_i(m, n, r)` over a rectangle of `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTable {
    pub i: u8,
    pub kappa: i64,
    pub entries: BTreeMap<(usize, i64), Vec<BigInt>>,
}

impl HTable {
    pub fn get(&self, m: usize, n: i64, r: usize) -> BigInt {
        self.entries.get(&(m, n)).and_then(|col| col.get(r)).cloned().unwrap_or_default()
    }
}

pub fn h_table(i: u8, m_max: usize, n_max: i64) -> Result<HTable> {
    let engine = UEngine::shared(i)?;
    let mut entries = BTreeMap::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            entries.insert((m, n), h_column(engine, m, n)?);
        }
    }
    Ok(HTable { i, kappa: kappa(i), entries })
}

/// One displayed congruence `h_i(m, g(n), r) = residue (mod 5)` for `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HCongruence {
    pub display: &'static str,
    pub i: u8,
    pub m: usize,
    pub r: usize,
    pub residue: u32,
    /// whether the second argument is `5n - 4` rather than `n`
    pub stepped: bool,
}

pub const H_CONGRUENCES: [HCongruence; 8] = [
    HCongruence { display: "h0(1,n,1) = 1 mod 5", i: 0, m: 1, r: 1, residue: 1, stepped: false },
    HCongruence { display: "h0(2,5n-4,1) = 0 mod 5", i: 0, m: 2, r: 1, residue: 0, stepped: true },
    HCongruence { display: "h0(3,n,1) = 1 mod 5", i: 0, m: 3, r: 1, residue: 1, stepped: false },
    HCongruence { display: "h0(1,n,2) = 4 mod 5", i: 0, m: 1, r: 2, residue: 4, stepped: false },
    HCongruence { display: "h0(2,5n-4,2) = 4 mod 5", i: 0, m: 2, r: 2, residue: 4, stepped: true },
    HCongruence { display: "h0(3,n,2) = 4 mod 5", i: 0, m: 3, r: 2, residue: 4, stepped: false },
    HCongruence { display: "h0(2,5n-4,3) = 1 mod 5", i: 0, m: 2, r: 3, residue: 1, stepped: true },
    HCongruence { display: "h1(m,n,1) = 1 mod 5 for m = 1, 2, 3", i: 1, m: 0, r: 1, residue: 1, stepped: false },
];

/// Checks every display for `n = 1..=n_max` and returns how many instances
/// each one covered.
pub fn corollary_congruences(n_max: i64) -> Result<Vec<(&'static str, usize)>> {
    let mut out = Vec::new();
    for cong in H_CONGRUENCES {
        let engine = UEngine::shared(cong.i)?;
        let ms: Vec<usize> = if cong.m == 0 { vec![1, 2, 3] } else { vec![cong.m] };
        let mut count = 0;
        for m in ms {
            for n in 1..=n_max {
                let arg = if cong.stepped { 5 * n - 4 } else { n };
                let h = h_column(engine, m, arg)?.get(cong.r).cloned().unwrap_or_default();
                let res = h.mod_floor(&BigInt::from(5)).to_u32().unwrap();
                if res != cong.residue {
                    return Err(Error::CongruenceViolation {
                        display: cong.display.into(),
                        witness: format!("m={m}, n={n}: h = {h} = {res} mod 5"),
                    });
                }
                count += 1;
            }
        }
        out.push((cong.display, count));
    }
    Ok(out)
}

/// One cell of the initial grid `1 <= m, n <= 5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEntry {
    pub i: u8,
    pub m: usize,
    pub n: i64,
    pub image: LocalizedElement,
}

/// Builds `U^(i)(y^m / (1+5y)^n)` for `1 <= m, n <= 5` from the ten images and
/// checks integrality, the denominator exponent, the coefficient valuations
/// and agreement with the numeric operator to `O(q^out_precision)`.
pub fn verify_grid(out_precision: i64) -> Result<Vec<GridEntry>> {
    use rayon::prelude::*;
    let cells: Vec<(u8, usize, i64)> =
        (0..=1u8).flat_map(|i| (1..=5).flat_map(move |m| (1..=5).map(move |n| (i, m, n)))).collect();
    cells
        .into_par_iter()
        .map(|(i, m, n)| {
            let engine = UEngine::shared(i)?;
            h_column(engine, m, n)?;
            let image = engine.check_numeric(&LocalizedElement::y_over_x(m, n), out_precision)?;
            Ok(GridEntry { i, m, n, image })
        })
        .collect()
}

/// Numerically checks the ten hard-coded images of both operators.
pub fn verify_fundamental_relations(out_precision: i64) -> Result<()> {
    u_base_images(1, out_precision)?;
    u_base_images(0, out_precision)?;
    Ok(())
}

/// Convenience for callers that want `U^(i)` without holding an engine.
pub fn u_apply(i: u8, e: &LocalizedElement) -> Result<LocalizedElement> {
    UEngine::shared(i)?.apply(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn le(c: &[i64], d: u32) -> LocalizedElement {
        LocalizedElement::from_i64s(c, d)
    }

    #[test]
    fn modular_equations_vanish() {
        verify_modeq_y(120).unwrap();
        verify_modeq_x(120).unwrap();
        ModularEquation::standard().verify_b_from_a().unwrap();
    }

    #[test]
    fn perturbed_equation_fails_early() {
        let bad = ModularEquation::standard().with_a_perturbed(0, 1, 1);
        match bad.verify_y(100) {
            Err(Error::IdentityViolation { index, .. }) => assert!(index <= 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(bad.verify_b_from_a().is_err());
    }

    #[test]
    fn numeric_operator_examples() {
        let p = 300;
        let u1y = u_op_numeric(1, &y_series(p));
        assert_eq!(u1y, y_series(u1y.precision()));
        let u0 = u_op_numeric(0, &Series::one(p));
        assert_eq!(u0, le(&[0, -5, -20], 1).to_qseries(u0.precision()));
        let u1 = u_op_numeric(1, &Series::one(p));
        assert_eq!(u1, le(&[1, 25, 80], 1).to_qseries(u1.precision()));
    }

    #[test]
    fn hard_coded_images() {
        let one = u_base_images(1, 40).unwrap();
        assert_eq!(one[2], le(&[0, 51, 2355, 34100, 222000, 680000, 800000], 0));
        let zero = u_base_images(0, 40).unwrap();
        assert_eq!(zero[1], le(&[0, 5, 20], 0));
        assert_eq!(zero[0], le(&[0, -5, -20], 1));
        assert_eq!(one[4].numer().degree(), Some(16));
        assert_eq!(zero[4].numer().degree(), Some(17));
    }

    #[test]
    fn powers_of_x() {
        for i in [0u8, 1] {
            let e = UEngine::shared(i).unwrap();
            assert_eq!(e.u_power_x(0), base_image_table(i)[0]);
            let lin = e.u_power_x(0).add(&e.u_power_y(1).scale(&BigInt::from(5)));
            assert_eq!(e.u_power_x(1), lin);
            for n in [-1i64, -2, -7, 3] {
                e.check_numeric(&LocalizedElement::x_pow(n), 30).unwrap();
            }
            for k in [5usize, 6, 9] {
                e.check_numeric(&LocalizedElement::y_pow(k), 30).unwrap();
            }
        }
    }

    #[test]
    fn y_over_x_images() {
        let one = UEngine::shared(1).unwrap();
        let zero = UEngine::shared(0).unwrap();
        assert_eq!(one.u_y_over_x(1, 0).unwrap(), LocalizedElement::y_pow(1));
        let img = zero.check_numeric(&LocalizedElement::y_over_x(1, 1), 30).unwrap();
        assert_eq!(img.denom_exp(), 3);
        assert_eq!(one.u_y_over_x(5, 5).unwrap().denom_exp(), 21);
    }

    #[test]
    fn dual_path_agreement() {
        for i in [0u8, 1] {
            let e = UEngine::shared(i).unwrap();
            for m in 1..=8 {
                for n in 1..=8 {
                    e.check_numeric(&LocalizedElement::y_over_x(m, n), 20).unwrap();
                }
            }
        }
    }

    #[test]
    fn recurrence_steps() {
        let eq = ModularEquation::standard();
        UEngine::shared(1).unwrap().verify_recurrence_step(&eq, 6, 6).unwrap();
        UEngine::shared(0).unwrap().verify_recurrence_step(&eq, 7, 6).unwrap();
        let bad = eq.with_a_perturbed(2, 3, 1);
        assert!(matches!(
            UEngine::shared(1).unwrap().verify_recurrence_step(&bad, 6, 6),
            Err(Error::IdentityViolation { .. })
        ));
    }

    #[test]
    fn h_examples() {
        let t1 = h_table(1, 3, 10).unwrap();
        for m in 1..=3 {
            for n in 1..=10 {
                assert_eq!(t1.get(m, n, 1).mod_floor(&BigInt::from(5)), BigInt::one(), "m={m} n={n}");
            }
        }
        let t0 = h_table(0, 2, 10).unwrap();
        assert!((t0.get(2, 1, 1) % 5u32).is_zero());
        for n in 1..=10 {
            assert_eq!(t0.get(1, n, 2).mod_floor(&BigInt::from(5)), BigInt::from(4));
        }
    }

    #[test]
    fn corollary_small() {
        let report = corollary_congruences(10).unwrap();
        assert_eq!(report.len(), 8);
        assert_eq!(report[7].1, 30);
    }
}
