//! Theorem-level checks and the suite runner.
//!
//! Every check returns a [`VerificationReport`]; failures carry the error that
//! stopped them as a witness instead of aborting the suite.

use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::etaq::{named, Cusp, EtaQuotient, Order};
use crate::localring::{
    element_from_s, membership_v, membership_w, pi0, pi1, recover, theta, LocalizedElement, MembershipKind,
    RECOVER_GUARD,
};
use crate::modeq::{self, ModularEquation, UEngine};
use crate::poly::Poly;
use crate::series::Series;
use crate::specialfns::{self, f_series, l0_series, psi, rho_series, t_series, x_series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    /// The display or table the check reproduces, quoted by content.
    pub anchor: String,
    pub status: Status,
    pub witness: Option<Value>,
    pub runtime_ms: u64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `body`, timing it; an `Err` becomes a failing report whose witness is
/// the error.
fn run_check(check_id: &str, anchor: &str, body: impl FnOnce() -> Result<(Value, Vec<String>)>) -> VerificationReport {
    let start = Instant::now();
    let outcome = body();
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (status, witness, notes) = match outcome {
        Ok((w, notes)) => (Status::Pass, Some(w), notes),
        Err(e) => (Status::Fail, Some(json!({ "error": e.to_string(), "detail": format!("{e:?}") })), Vec::new()),
    };
    VerificationReport { check_id: check_id.into(), anchor: anchor.into(), status, witness, runtime_ms, notes }
}

fn first_difference(a: &Series<BigInt>, b: &Series<BigInt>, identity: &str) -> Result<()> {
    match a.sub(b).valuation() {
        None => Ok(()),
        Some(index) => Err(Error::IdentityViolation { identity: identity.into(), index }),
    }
}

pub const L1_NUMERATOR: [i64; 6] = [0, 120, 1805, 12050, 39500, 50000];

/// Printed numerator of `f_1 = L1 / (5F)` over `(1+5y)^3`.
pub const F1_NUMERATOR: [i64; 6] = [0, 24, 361, 2410, 7900, 10000];

/// `L1 * x^3 / F` written in powers of `x` (from `x^-3` upward), as printed
/// alongside the substitution that turned out not to give integral data.
const L1_IN_X_PRINTED: [(i64, i64); 8] =
    [(-624, 625), (-2487, 625), (801, 625), (-422, 125), (-3148, 125), (19904, 625), (512, 625), (-256, 625)];

/// `5^5 * numer((x - 1)/5)`, i.e. the numerator of `L1/F` rewritten in `x`
/// and scaled to integers; index `k` holds the coefficient of `x^(k-3)` of
/// `5^5 L1 / F`.
fn l1_over_f_in_x() -> Vec<BigInt> {
    let numer = Poly::<BigInt>::from_i64s(&L1_NUMERATOR);
    let x_minus_1 = Poly::<BigInt>::from_i64s(&[-1, 1]);
    let deg = numer.degree().unwrap();
    let mut acc = Poly::<BigInt>::zero();
    for m in (0..=deg).rev() {
        let c = numer.coeff(m) * num_traits::pow(BigInt::from(5), deg - m);
        acc = acc.mul(&x_minus_1).add(&Poly::constant(c));
    }
    acc.coeffs().to_vec()
}

pub fn verify_witness_l1(precision: i64) -> VerificationReport {
    run_check("witness", "L1 = F (120y + 1805y^2 + 12050y^3 + 39500y^4 + 50000y^5) / (1+5y)^3", || {
        if precision < 30 {
            return Err(Error::InsufficientPrecision { have: precision, need: 30 });
        }
        let l1 = specialfns::l_series_direct(1, precision);
        let f = f_series::<BigInt>(precision)?;
        let rhs = LocalizedElement::from_i64s(&L1_NUMERATOR, 3).to_qseries(precision).mul(&f);
        first_difference(&l1, &rhs, "L1 = F p(y) / (1+5y)^3")?;

        // recovering the numerator from q-series data reproduces the five coefficients
        let over_f = l1.mul(&f.invert_unit()?);
        let recovered = recover(&over_f, 3, 5)?;
        if recovered.numer() != &Poly::from_i64s(&L1_NUMERATOR) {
            return Err(Error::IdentityViolation { identity: "recovered numerator of L1/F".into(), index: 0 });
        }

        let x = x_series::<BigInt>(precision);
        let one = Series::one(precision);
        let rho = rho_series::<BigInt>(precision);
        let t = t_series::<BigInt>(precision);
        let five = BigInt::from(5);
        first_difference(&rho.scale(&five), &x.scale(&BigInt::from(4)).add(&one), "5 rho = 4x + 1")?;
        let t_rhs = x.scale(&BigInt::from(4)).sub(&one.scale(&BigInt::from(3))).sub(&x.invert_unit()?);
        first_difference(&t.scale(&BigInt::from(25)), &t_rhs, "25 t = 4x - 3 - 1/x")?;
        let c = |v: i64| BigInt::from(v);
        let t2 = t.mul(&t);
        let t3 = t2.mul(&t);
        let wy = t
            .scale(&c(245))
            .add(&t2.scale(&c(3750)))
            .add(&t3.scale(&c(15625)))
            .sub(&rho.mul(&t.scale(&c(125)).add(&t2.scale(&c(3125)))));
        first_difference(&l1, &f.mul(&wy), "L1 = F ((245t + 3750t^2 + 15625t^3) - rho (125t + 3125t^2))")?;

        let derived = l1_over_f_in_x();
        let printed_matches = derived.len() == L1_IN_X_PRINTED.len()
            && derived.iter().zip(L1_IN_X_PRINTED).all(|(d, (p, q))| d * q == BigInt::from(p) * 3125);
        let derived_text: Vec<String> = derived
            .iter()
            .enumerate()
            .map(|(k, v)| format!("({}) x^{}", BigRational::new(v.clone(), BigInt::from(3125)), k as i64 - 3))
            .collect();
        let mut notes = vec![
            "rho = (4x+1)/5 and t = (4x - 3 - 1/x)/25 hold; substituting them into the rho/t form of L1 gives the same series".into(),
        ];
        if !printed_matches {
            notes.push(format!(
                "the printed Laurent expansion of L1/F in x (-624/(625x^3) - ... - 256x^4/625) does not equal L1/F; \
                 the direct rewrite of the verified identity is {}",
                derived_text.join(" + ")
            ));
        }
        let w = json!({
            "precision": precision,
            "numerator": L1_NUMERATOR[1..].to_vec(),
            "denominator_exponent": 3,
            "l1_over_f_in_x": derived_text,
            "printed_x_expansion_matches": printed_matches,
        });
        Ok((w, notes))
    })
}

pub fn verify_relations(precision: i64) -> VerificationReport {
    run_check("relations", "the ten images U^(i)(y^k), k = 0..4, i = 0, 1", || {
        modeq::verify_fundamental_relations(precision)?;
        let degrees: Vec<Value> = (0..=1u8)
            .map(|i| {
                let eng = UEngine::shared(i).map(|e| (0..5).map(|k| e.u_power_y(k).numer().degree()).collect::<Vec<_>>());
                json!({ "i": i, "degrees": eng.ok() })
            })
            .collect();
        Ok((json!({ "precision": precision, "images": degrees }), vec![]))
    })
}

pub fn verify_grid(precision: i64) -> VerificationReport {
    run_check("grid", "U^(i)(y^m/(1+5y)^n) for 1 <= m, n <= 5 with denominator (1+5y)^(5n - kappa_i)", || {
        let entries = modeq::verify_grid(precision)?;
        let summary: Vec<Value> = entries
            .iter()
            .map(|e| json!({ "i": e.i, "m": e.m, "n": e.n, "denom_exp": e.image.denom_exp(), "degree": e.image.numer().degree() }))
            .collect();
        Ok((json!({ "precision": precision, "cells": entries.len(), "entries": summary }), vec![]))
    })
}

pub fn verify_modeq(precision: i64) -> VerificationReport {
    run_check("modeq", "y^5 + sum a_j(5t) y^j = 0 and x^5 + sum b_k(5t) x^k = 0", || {
        let eq = ModularEquation::standard();
        eq.verify_y(precision)?;
        eq.verify_x(precision)?;
        eq.verify_b_from_a()?;
        Ok((json!({ "precision": precision, "b_from_a": true }), vec![]))
    })
}

pub fn verify_corollary(n_max: i64) -> VerificationReport {
    run_check("corollary", "h_0 and h_1 congruences modulo 5", || {
        if n_max < 10 {
            return Err(Error::InsufficientPrecision { have: n_max, need: 10 });
        }
        let rows = modeq::corollary_congruences(n_max)?;
        let displays: Vec<Value> =
            rows.iter().map(|(d, count)| json!({ "display": d, "instances": count, "status": "pass" })).collect();
        Ok((json!({ "n_max": n_max, "displays": displays }), vec![]))
    })
}

/// `f_alpha` for one alpha: the symbolic image and the numeric recovery agree.
#[derive(Debug, Clone)]
pub struct MainTheoremStep {
    pub alpha: u32,
    pub psi: u32,
    pub f: LocalizedElement,
    pub membership: crate::localring::MembershipReport,
}

/// `f_alpha` from the symbolic chain `f_(a+1) = U^(i)(f_a) / 5` (i = 1 after
/// odd a, 0 after even a), each one checked against `L_alpha (1+5y)^psi /
/// (5^alpha F)` recovered from the coefficients `c(n)`.
pub fn main_theorem_chain(alpha_max: u32) -> Result<Vec<MainTheoremStep>> {
    let mut out = Vec::new();
    let mut f = LocalizedElement::from_i64s(&L1_NUMERATOR, 3).exact_div_scalar(&BigInt::from(5))?;
    for alpha in 1..=alpha_max {
        if alpha > 1 {
            let i = if alpha % 2 == 0 { 1 } else { 0 };
            f = UEngine::shared(i)?.apply(&f)?.exact_div_scalar(&BigInt::from(5))?;
        }
        let p = psi(alpha).to_u32().expect("alpha is small");
        let at_psi = f.with_denom_exp(p).ok_or(Error::DenominatorMismatch {
            expected: p as i64,
            found: f.canonical().denom_exp() as i64,
        })?;
        let deg = at_psi.numer().degree().unwrap_or(0);
        let precision = deg as i64 + 1 + RECOVER_GUARD;
        let l = specialfns::l_series_direct(alpha, precision);
        let big_f = f_series::<BigInt>(precision)?;
        let g = l
            .mul(&x_series::<BigInt>(precision).pow_int(p as i64)?)
            .mul(&big_f.invert_unit()?)
            .exact_div_scalar(&num_traits::pow(BigInt::from(5), alpha as usize))?;
        let recovered = recover(&g, 0, deg)?;
        if recovered.numer() != at_psi.numer() {
            let index = (0..=deg).find(|&k| recovered.coeff(k) != at_psi.coeff(k)).unwrap_or(0) as i64;
            return Err(Error::SymbolicNumericMismatch { what: format!("f_{alpha}"), index });
        }
        if alpha == 1 && recovered.numer() != &Poly::from_i64s(&F1_NUMERATOR) {
            return Err(Error::IdentityViolation { identity: "printed numerator of f_1".into(), index: 0 });
        }
        let f_at = LocalizedElement::new(recovered.numer().clone(), p);
        let membership = if alpha % 2 == 1 { membership_w(&f_at) } else { membership_v(&f_at, 0) };
        if !membership.ok {
            return Err(Error::MembershipViolation {
                kind: format!("{:?}", membership.kind),
                m: membership.first_violation.unwrap_or(0),
            });
        }
        out.push(MainTheoremStep { alpha, psi: p, f: f_at, membership });
    }
    Ok(out)
}

pub fn verify_main_theorem(alpha_max: u32) -> VerificationReport {
    run_check("main", "(1+5y)^psi(alpha) L_alpha / (5^alpha F) is an integer polynomial in y", || {
        let steps = main_theorem_chain(alpha_max)?;
        let rows: Vec<Value> = steps
            .iter()
            .map(|s| {
                let head: Vec<String> = s.f.numer().coeffs().iter().take(6).map(|c| c.to_string()).collect();
                json!({
                    "alpha": s.alpha,
                    "psi": s.psi,
                    "degree": s.f.numer().degree(),
                    "leading_coefficients": head,
                    "membership": s.membership.to_json(),
                })
            })
            .collect();
        let notes = vec!["every numerator is recovered in full from c(n) and matches the symbolic chain".into()];
        Ok((json!({ "alpha_max": alpha_max, "steps": rows }), notes))
    })
}

/// `c(0..len)` by multiplying `L_0` with `1/(q^2;q^2)` factor by factor; no
/// pentagonal shortcut, no shared memo.
pub fn c_values_by_division(len: usize) -> Vec<BigInt> {
    let mut l0 = l0_series::<BigInt>(len as i64);
    l0.mul_pochhammer(2, -1);
    l0.to_dense()
}

pub const FAMILY_COUNTS: [usize; 4] = [200, 60, 20, 10];

pub fn congruence_family(alpha_max: u32, counts: &[usize]) -> Result<Vec<(u32, usize, usize)>> {
    let mut plan = Vec::new();
    let mut len = 0;
    for alpha in 1..=alpha_max {
        let count = counts.get(alpha as usize - 1).copied().unwrap_or(10);
        let step = 5usize.pow(alpha);
        let lam = specialfns::lambda(alpha)?.to_usize().unwrap();
        if count > 0 {
            len = len.max(step * (count - 1) + lam + 1);
        }
        plan.push((alpha, step, lam, count));
    }
    let c = c_values_by_division(len);
    let mut out = Vec::new();
    for (alpha, step, lam, count) in plan {
        let modulus = BigInt::from(step);
        for n in 0..count {
            let idx = step * n + lam;
            if !(&c[idx] % &modulus).is_zero() {
                return Err(Error::CongruenceViolation {
                    display: format!("c(5^{alpha} n + {lam}) = 0 mod 5^{alpha}"),
                    witness: format!("n = {n}, c({idx}) = {}", c[idx]),
                });
            }
        }
        out.push((alpha, count, if count > 0 { step * (count - 1) + lam } else { 0 }));
    }
    Ok(out)
}

pub fn verify_congruence_family(alpha_max: u32, counts: &[usize]) -> VerificationReport {
    run_check("family", "c(5^alpha n + lambda_alpha) = 0 mod 5^alpha", || {
        let rows = congruence_family(alpha_max, counts)?;
        let rows: Vec<Value> =
            rows.iter().map(|(a, count, max)| json!({ "alpha": a, "values": count, "max_index": max })).collect();
        let notes = vec!["c(n) is computed by plain series division, independently of the modular machinery".into()];
        Ok((json!({ "checks": rows }), notes))
    })
}

/// Printed values of `theta(m) + pi1(m, r) + pi0(r, w) - 2` for `w = 1, 2, 3`,
/// rows `m = 1..6`, columns `r = 1..3`; the `(6, 1)` cells are blank.
pub const VALUATION_TABLES: [[[Option<i64>; 3]; 6]; 3] = {
    const N: Option<i64> = None;
    const fn s(v: i64) -> Option<i64> {
        Some(v)
    }
    let t12 = [
        [s(-1), s(0), s(1)],
        [s(-1), s(0), s(1)],
        [s(-1), s(1), s(0)],
        [s(0), s(1), s(1)],
        [s(1), s(2), s(1)],
        [N, s(2), s(2)],
    ];
    [
        t12,
        t12,
        [
            [s(0), s(0), s(2)],
            [s(0), s(0), s(2)],
            [s(0), s(1), s(1)],
            [s(1), s(1), s(2)],
            [s(2), s(2), s(2)],
            [N, s(2), s(3)],
        ],
    ]
};

pub fn valuation_tables() -> Result<usize> {
    let mut cells = 0;
    for (w, table) in VALUATION_TABLES.iter().enumerate() {
        for (mi, row) in table.iter().enumerate() {
            for (ri, cell) in row.iter().enumerate() {
                let Some(printed) = *cell else { continue };
                let (m, r) = (mi as i64 + 1, ri as i64 + 1);
                let computed = theta(m)? + pi1(m, r)? + pi0(r, w as i64 + 1)? - 2;
                if computed != printed {
                    return Err(Error::TableMismatch { table: w as u8 + 1, m, r, computed, printed });
                }
                cells += 1;
            }
        }
    }
    Ok(cells)
}

pub fn verify_valuation_tables() -> VerificationReport {
    run_check("tables", "tables of theta(m) + pi1(m,r) + pi0(r,w) - 2 for w = 1, 2, 3", || {
        let cells = valuation_tables()?;
        Ok((json!({ "cells": cells }), vec![]))
    })
}

fn random_s(rng: &mut ChaCha8Rng, min_len: usize, w_condition: bool) -> Vec<BigInt> {
    let len = rng.gen_range(min_len..=12);
    let mut s: Vec<i64> = (0..len).map(|_| rng.gen_range(-50..=50)).collect();
    if w_condition {
        let excess = (s[0] + s[1] + s[2]).rem_euclid(5);
        s[2] -= excess;
        if s[2] < -50 {
            s[2] += 5;
        }
    }
    s.into_iter().map(BigInt::from).collect()
}

fn expect_member(
    property: &str,
    value: &LocalizedElement,
    denom_exp: i64,
    kind: MembershipKind,
    source: &LocalizedElement,
) -> Result<()> {
    let fail = |why: String| Error::PropertyViolation { property: property.into(), witness: format!("f = {source}: {why}") };
    let at = value
        .with_denom_exp(denom_exp as u32)
        .ok_or_else(|| fail(format!("denominator exponent {} exceeds {denom_exp}", value.canonical().denom_exp())))?;
    let report = match kind {
        MembershipKind::V0 => membership_v(&at, 0),
        MembershipKind::V1 => membership_v(&at, 1),
        MembershipKind::W1 => membership_w(&at),
    };
    if !report.ok {
        return Err(fail(format!("{kind:?} fails at y^{:?}", report.first_violation)));
    }
    Ok(())
}

/// Random-element checks of the three mapping properties; returns the
/// number of trials run per property.
pub fn mapping_theorems(trials: usize, n_max: u32, seed: u64) -> Result<usize> {
    let u0 = UEngine::shared(0)?;
    let u1 = UEngine::shared(1)?;
    let five = BigInt::from(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let nn = n as i64;

        // f in V_n^(0)  =>  U0(f)/5 in V_(5n-2)^(1)
        let f = element_from_s(&random_s(&mut rng, 1, false), MembershipKind::V0, n);
        let g = u0.apply(&f)?.exact_div_scalar(&five).map_err(|e| prop_err("V0 -> V1", &f, e))?;
        expect_member("V0 -> V1", &g, 5 * nn - 2, MembershipKind::V1, &f)?;

        // f in V_n^(1)  =>  (U1(f) - linear part)/5 in V_(5n-4)^(0)
        let f = element_from_s(&random_s(&mut rng, 1, false), MembershipKind::V1, n);
        let img = u1.apply(&f)?;
        let at = img.with_denom_exp((5 * nn - 4) as u32).ok_or_else(|| Error::PropertyViolation {
            property: "V1 -> V0".into(),
            witness: format!("f = {f}: denominator too large"),
        })?;
        let linear = LocalizedElement::new(Poly::monomial(at.coeff(1), 1), at.denom_exp());
        let g = at.sub(&linear).exact_div_scalar(&five).map_err(|e| prop_err("V1 -> V0", &f, e))?;
        expect_member("V1 -> V0", &g, 5 * nn - 4, MembershipKind::V0, &f)?;

        // f in W_n^(1)  =>  U1(f)/5 in V_(5n-4)^(0) and U0(U1(f))/25 in W_(25n-22)^(1)
        let f = element_from_s(&random_s(&mut rng, 3, true), MembershipKind::W1, n);
        if !membership_w(&f).ok {
            return Err(Error::PropertyViolation { property: "W generator".into(), witness: f.to_string() });
        }
        let g = u1.apply(&f)?.exact_div_scalar(&five).map_err(|e| prop_err("W1 -> V0", &f, e))?;
        expect_member("W1 -> V0", &g, 5 * nn - 4, MembershipKind::V0, &f)?;
        let h = u0.apply(&g)?.exact_div_scalar(&five).map_err(|e| prop_err("W1 -> W1", &f, e))?;
        expect_member("W1 -> W1", &h, 25 * nn - 22, MembershipKind::W1, &f)?;
    }
    Ok(trials)
}

fn prop_err(property: &str, f: &LocalizedElement, e: Error) -> Error {
    Error::PropertyViolation { property: property.into(), witness: format!("f = {f}: {e}") }
}

pub fn verify_mapping_theorems(trials: usize, n_max: u32, seed: u64) -> VerificationReport {
    run_check("mappings", "U^(0) maps V^(0) into 5 V^(1); U^(1) maps W^(1) into 5 V^(0); U^(0) U^(1) maps W^(1) into 25 W^(1)", || {
        if trials < 20 {
            return Err(Error::InsufficientPrecision { have: trials as i64, need: 20 });
        }
        let n = mapping_theorems(trials, n_max, seed)?;
        let notes = vec![
            "V^(1) and W^(1) use theta and V^(0) uses phi, the convention the proofs use; the displayed set definitions swap the two".into(),
            "the W-to-W step is checked on the composed image itself; in the closing estimate the coefficient summed over w is read as q(w), not q(r)".into(),
        ];
        Ok((json!({ "trials_per_property": n, "properties": 4, "n_max": n_max, "seed": seed }), notes))
    })
}

fn order_list(f: &EtaQuotient, cusps: &[Cusp]) -> Vec<Order> {
    cusps.iter().map(|c| f.order_at(c)).collect()
}

pub fn cusp_analysis() -> Result<(Value, Vec<String>)> {
    let ten = [Cusp::INFINITY, Cusp { a: 1, c: 5 }, Cusp { a: 1, c: 2 }, Cusp { a: 0, c: 1 }];
    let y_inv = order_list(&named::y().inv(), &ten);
    let expected: Vec<Order> = [-1, 0, 0, 1].into_iter().map(Order::from_integer).collect();
    if y_inv != expected {
        return Err(Error::PropertyViolation {
            property: "orders of 1/y at oo, 1/5, 1/2, 0".into(),
            witness: format!("{y_inv:?}"),
        });
    }
    let mut checked: Vec<(String, EtaQuotient)> = vec![
        ("y".into(), named::y()),
        ("x".into(), named::x()),
        ("Z".into(), named::z()),
        ("rho".into(), named::rho()),
        ("t".into(), named::t()),
        ("h".into(), named::h()),
        ("W_0".into(), named::w_i(0)),
        ("W_1".into(), named::w_i(1)),
        ("W_y".into(), named::w_y()),
    ];
    for i in 0..=1u8 {
        for l in 1..=5 {
            for m in 1..=5 {
                checked.push((format!("W_{i},{l},{m}"), named::w_ilm(i, l, m)));
            }
        }
    }
    for (name, f) in &checked {
        f.order_table(name)?;
    }
    let f_order = f_series::<BigInt>(10)?.valuation();
    let w0 = named::w_i(0);
    let notes = vec![
        format!(
            "F has order {} at oo by direct expansion (constant term 1); the printed table lists 1",
            f_order.map_or("inf".to_string(), |v| v.to_string())
        ),
        format!(
            "W_0 has orders {} at 0 and {} at 1/2 by the order formula; the printed values 1-i and 1-2i agree only for i = 1",
            w0.order_at(&Cusp { a: 0, c: 1 }),
            w0.order_at(&Cusp { a: 1, c: 2 })
        ),
    ];
    let w = json!({
        "y_inverse_orders": ten.iter().zip(&y_inv).map(|(c, o)| json!({ "cusp": c.to_string(), "order": o.to_string() })).collect::<Vec<_>>(),
        "quotients_checked": checked.len(),
        "newman_and_valence": "pass",
    });
    Ok((w, notes))
}

pub fn verify_cusps() -> VerificationReport {
    run_check("cusps", "orders of 1/y at oo, 1/5, 1/2, 0 are -1, 0, 0, 1", cusp_analysis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Witness,
    Relations,
    Grid,
    Modeq,
    Corollary,
    Main,
    Family,
    Tables,
    Mappings,
    Cusps,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Witness,
        CheckKind::Relations,
        CheckKind::Grid,
        CheckKind::Modeq,
        CheckKind::Corollary,
        CheckKind::Main,
        CheckKind::Family,
        CheckKind::Tables,
        CheckKind::Mappings,
        CheckKind::Cusps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Witness => "witness",
            CheckKind::Relations => "relations",
            CheckKind::Grid => "grid",
            CheckKind::Modeq => "modeq",
            CheckKind::Corollary => "corollary",
            CheckKind::Main => "main",
            CheckKind::Family => "family",
            CheckKind::Tables => "tables",
            CheckKind::Mappings => "mappings",
            CheckKind::Cusps => "cusps",
        }
    }
}

impl FromStr for CheckKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Knobs shared by all checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trunc: i64,
    pub alpha_max: u32,
    pub n_max: i64,
    pub trials: usize,
    pub seed: u64,
    pub family_counts: Vec<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trunc: 200, alpha_max: 4, n_max: 25, trials: 50, seed: 1, family_counts: FAMILY_COUNTS.to_vec() }
    }
}

pub fn run_check_kind(kind: CheckKind, cfg: &VerifyConfig) -> VerificationReport {
    match kind {
        CheckKind::Witness => verify_witness_l1(cfg.trunc),
        CheckKind::Relations => verify_relations(cfg.trunc),
        CheckKind::Grid => verify_grid(cfg.trunc),
        CheckKind::Modeq => verify_modeq(cfg.trunc.max(300)),
        CheckKind::Corollary => verify_corollary(cfg.n_max),
        CheckKind::Main => verify_main_theorem(cfg.alpha_max),
        CheckKind::Family => verify_congruence_family(cfg.alpha_max, &cfg.family_counts),
        CheckKind::Tables => verify_valuation_tables(),
        CheckKind::Mappings => verify_mapping_theorems(cfg.trials, 6, cfg.seed),
        CheckKind::Cusps => verify_cusps(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<VerificationReport>,
    pub all_pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {:<10} {:>8} ms  {}\n", c.check_id, c.runtime_ms, c.anchor));
            if !c.passed() {
                if let Some(w) = &c.witness {
                    out.push_str(&format!("     {}\n", w["error"].as_str().unwrap_or_default()));
                }
            }
            for n in &c.notes {
                out.push_str(&format!("     note: {n}\n"));
            }
        }
        out.push_str(if self.all_pass { "all checks passed\n" } else { "some checks FAILED\n" });
        out
    }
}

/// Runs the checks in parallel; reports come back in the order requested.
pub fn run_suite(name: &str, kinds: &[CheckKind], cfg: &VerifyConfig) -> SuiteReport {
    let checks: Vec<VerificationReport> = kinds.par_iter().map(|&k| run_check_kind(k, cfg)).collect();
    let all_pass = checks.iter().all(VerificationReport::passed);
    SuiteReport { suite: name.into(), checks, all_pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localring::phi;

    #[test]
    fn witness_passes_and_flags_x_form() {
        let r = verify_witness_l1(60);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witness.as_ref().unwrap()["printed_x_expansion_matches"], false);
        assert!(!verify_witness_l1(10).passed());
    }

    #[test]
    fn l1_in_x() {
        // 5^5 L1/F = 3125 (16x^5 - 84/5 x^4 + 18/5 x^3 + 11/5 x^2 - 4x - 1) / x^3
        let want: Vec<BigInt> = [-3125, -12500, 6875, 11250, -52500, 50000].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(l1_over_f_in_x(), want);
    }

    #[test]
    fn tables_match() {
        assert_eq!(valuation_tables().unwrap(), 51);
        assert_eq!(VALUATION_TABLES[0][0][0], Some(-1));
        assert_eq!(VALUATION_TABLES[2][0][0], Some(0));
        assert_eq!(VALUATION_TABLES[0][4][1], Some(2));
    }

    #[test]
    fn main_theorem_small() {
        let steps = main_theorem_chain(2).unwrap();
        assert_eq!(steps[0].f, LocalizedElement::from_i64s(&F1_NUMERATOR, 3));
        assert_eq!(steps[0].f.denom_exp(), 3);
        assert_eq!(steps[1].psi, 11);
        assert_eq!(steps[1].membership.kind, MembershipKind::V0);
    }

    #[test]
    fn family_small() {
        assert_eq!(congruence_family(2, &[30, 5]).unwrap()[1], (2, 5, 123));
        assert_eq!(c_values_by_division(40), specialfns::c_values_uncached(40));
    }

    #[test]
    fn mappings_small() {
        assert_eq!(mapping_theorems(5, 3, 7).unwrap(), 5);
    }

    #[test]
    fn cusp_report() {
        let r = verify_cusps();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.notes.len(), 2);
    }

    #[test]
    fn check_names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert!("nope".parse::<CheckKind>().is_err());
    }

    #[test]
    fn suite_json_shape() {
        let cfg = VerifyConfig::default();
        let s = run_suite("quick", &[CheckKind::Tables, CheckKind::Cusps], &cfg);
        let j = s.to_json();
        assert_eq!(j["suite"], "quick");
        assert_eq!(j["all_pass"], true);
        assert_eq!(j["checks"][0]["check_id"], "tables");
        assert_eq!(j["checks"][0]["status"], "pass");
        assert!(s.to_text().contains("PASS tables"));
    }

    #[test]
    fn profiles_are_ordered() {
        for m in 1..=60 {
            let (t, p) = (theta(m).unwrap(), phi(m).unwrap());
            assert!(t <= p && p <= t + 1);
        }
    }
}
