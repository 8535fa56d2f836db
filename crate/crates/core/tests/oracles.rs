//! Values cross-checked against naive reimplementations that share no code
//! with the library.

use congruence_core::etaq::{enumerate_cusps, named, Cusp, EtaQuotient};
use congruence_core::localring::LocalizedElement;
use congruence_core::modeq::{u_op_numeric, UEngine};
use congruence_core::series::e2_series;
use congruence_core::specialfns::{
    c_values, f_series, l_series_direct, lambda, psi, x_series, y_series, z_series,
};
use congruence_core::QSeries;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

/// Dense `prod_m (1 - q^(d m))^r` mod `q^len` by schoolbook multiplication.
fn naive_eta_factor(d: usize, r: i64, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    out[0] = BigInt::from(1);
    for m in 1.. {
        let step = d * m;
        if step >= len {
            break;
        }
        for _ in 0..r.unsigned_abs() {
            if r > 0 {
                for n in (step..len).rev() {
                    let v = out[n - step].clone();
                    out[n] -= v;
                }
            } else {
                for n in step..len {
                    let v = out[n - step].clone();
                    out[n] += v;
                }
            }
        }
    }
    out
}

fn naive_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dense coefficients of an eta quotient from `q^shift` up to `q^(shift + len)`.
fn naive_eta_quotient(exps: &[(usize, i64)], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::from(1);
    for &(d, r) in exps {
        acc = naive_mul(&acc, &naive_eta_factor(d, r, len));
    }
    acc
}

fn dense_from(s: &QSeries, start: i64, len: usize) -> Vec<BigInt> {
    (0..len as i64).map(|k| s.coeff(start + k)).collect()
}

#[test]
fn eta_quotients_match_naive_products() {
    type Case = (&'static str, QSeries, i64, Vec<(usize, i64)>);
    let cases: [Case; 3] = [
        ("y", y_series(61), 1, vec![(1, -3), (2, 1), (5, -1), (10, 3)]),
        ("x", x_series(60), 0, vec![(1, -5), (2, 5), (5, 1), (10, -1)]),
        ("Z", z_series(62), 2, vec![(2, -1), (50, 1)]),
    ];
    for (name, s, shift, exps) in cases {
        assert_eq!(s.valuation(), Some(shift), "{name}");
        assert_eq!(dense_from(&s, shift, 60), naive_eta_quotient(&exps, 60), "{name}");
    }
    assert_eq!(y_series::<i64>(8).to_dense(), vec![0, 1, 3, 8, 19, 41, 84, 164]);
}

fn sigma(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

#[test]
fn e2_from_trial_division() {
    let e2 = e2_series::<i64>(80);
    assert_eq!(e2.coeff(0), 1);
    for n in 1..80 {
        assert_eq!(e2.coeff(n), -24 * sigma(n as u64) as i64);
    }
    assert_eq!(e2.coeff(2), -72);
}

#[test]
fn weight_two_form_from_divisor_sums() {
    // F = 1 - sum_n (sigma(n) - 2 sigma(n/2) - 25 sigma(n/5) + 50 sigma(n/10)) q^n
    let f = f_series::<i64>(120).unwrap();
    let s = |n: u64, d: u64| if n.is_multiple_of(d) { sigma(n / d) as i64 } else { 0 };
    assert_eq!(f.coeff(0), 1);
    for n in 1..120u64 {
        let want = -(s(n, 1) - 2 * s(n, 2) - 25 * s(n, 5) + 50 * s(n, 10));
        assert_eq!(f.coeff(n as i64), want, "n = {n}");
    }
}

/// `c` by counting: `L0 * sum p(k) q^(2k)` with partition numbers from the
/// coin-change recurrence.
fn c_by_partitions(len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::from(1);
    for part in 1..len {
        for n in part..len {
            let v = p[n - part].clone();
            p[n] += v;
        }
    }
    let mut spread = vec![BigInt::zero(); len];
    for k in 0..len.div_ceil(2) {
        spread[2 * k] = p[k].clone();
    }
    let l0: Vec<BigInt> = (0..len as u64)
        .map(|n| {
            if n == 0 {
                BigInt::from(1)
            } else {
                let half = if n % 2 == 0 { 48 * sigma(n / 2) as i64 } else { 0 };
                BigInt::from(24 * sigma(n) as i64 - half)
            }
        })
        .collect();
    naive_mul(&l0, &spread)
}

#[test]
fn c_values_match_partition_oracle() {
    let oracle = c_by_partitions(700);
    assert_eq!(c_values(700), oracle);
    assert_eq!(&oracle[..6], &[1, 24, 25, 120, 50, 288].map(BigInt::from));
}

#[test]
fn lambda_and_psi_by_search() {
    for alpha in 1..=10u32 {
        let m = 5u64.pow(alpha);
        let brute = (1..m).find(|x| (12 * x) % m == 1).unwrap();
        assert_eq!(lambda(alpha).unwrap(), BigInt::from(brute));
        let p = 5u64.pow(alpha + 1);
        assert_eq!(psi(alpha), BigInt::from(p / 12 + 1));
    }
}

#[test]
fn l1_first_terms() {
    // (q^10;q^10) * sum c(5n + 3) q^(n+1)
    let c = c_by_partitions(5 * 30 + 4);
    let inner: Vec<BigInt> =
        (0..31).map(|k| if k == 0 { BigInt::zero() } else { c[5 * (k - 1) + 3].clone() }).collect();
    let want = naive_mul(&inner, &naive_eta_factor(10, 1, 31));
    assert_eq!(dense_from(&l_series_direct(1, 31), 0, 31), want);
    assert_eq!(&want[..5], &[0, 120, 245, 3480, 3870].map(BigInt::from));
}

/// Order at a cusp with denominator `c`, in the local uniformizer:
/// `N / (24 gcd(c^2, N)) * sum gcd(d, c)^2 r_d / d`.
fn ligozat(n: i64, exps: &[(i64, i64)], c: i64) -> Ratio<i64> {
    let sum: Ratio<i64> = exps.iter().map(|&(d, r)| Ratio::new(d.gcd(&c).pow(2) * r, d)).sum();
    sum * Ratio::new(n, 24 * (c * c).gcd(&n))
}

#[test]
fn orders_match_textbook_formula() {
    let y = [(1, -3), (2, 1), (5, -1), (10, 3)];
    for cusp in enumerate_cusps(10) {
        let c = if cusp.is_infinity() { 10 } else { cusp.c };
        assert_eq!(named::y().order_at(&cusp), ligozat(10, &y, c as i64), "cusp {cusp}");
    }
    let y_inv = named::y().inv();
    let at = |a, c| y_inv.order_at(&Cusp { a, c }).to_integer();
    assert_eq!(
        [y_inv.order_at(&Cusp::INFINITY).to_integer(), at(1, 5), at(1, 2), at(0, 1)],
        [-1, 0, 0, 1]
    );
}

#[test]
fn order_at_infinity_is_leading_exponent() {
    let quotients: Vec<EtaQuotient> = vec![
        named::y(),
        named::z(),
        named::rho(),
        named::t(),
        named::h(),
        named::w_i(0),
        named::w_ilm(1, 3, 2),
        named::w_y(),
    ];
    for f in quotients {
        let s: QSeries = f.q_expansion(40).unwrap();
        let ord = f.order_at(&Cusp::INFINITY);
        assert_eq!(Some(ord.to_integer()), s.valuation(), "{f}");
    }
}

#[test]
fn symbolic_images_agree_with_numeric_operator() {
    for i in 0..=1u8 {
        let eng = UEngine::shared(i).unwrap();
        for m in 1..=8usize {
            for n in [1i64, 4, 8] {
                let arg = LocalizedElement::y_over_x(m, n);
                let sym = eng.u_y_over_x(m, n).unwrap();
                let numeric = u_op_numeric(i, &arg.to_qseries(5 * 40 + 10));
                let overlap = numeric.precision().min(40);
                assert_eq!(sym.to_qseries(overlap), numeric.truncate(overlap), "i={i} m={m} n={n}");
            }
        }
    }
}

#[test]
fn mapping_example_five_y() {
    // 5y is in V_1^(0); U0(5y)/5 = U0(y) lies in V^(1) with denominator exponent 3
    let f = LocalizedElement::from_i64s(&[0, 5], 1);
    let g = UEngine::shared(0).unwrap().apply(&f).unwrap().exact_div_scalar(&BigInt::from(5)).unwrap();
    let g3 = g.with_denom_exp(3).expect("denominator fits");
    assert!(congruence_core::localring::membership_v(&g3, 1).ok);
}
