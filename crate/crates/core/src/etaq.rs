//! Eta quotients `prod eta(delta tau)^{r_delta}`, their cusps and orders.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::{eta_product, Series};

pub type Order = Ratio<i64>;

/// An eta quotient on `Gamma_0(level)`, stored as `delta -> r_delta`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    level: u64,
    exps: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new(level: u64, pairs: &[(u64, i64)]) -> Result<Self> {
        let mut exps = BTreeMap::new();
        for &(d, r) in pairs {
            if d == 0 || !level.is_multiple_of(d) {
                return Err(Error::NotADivisor { delta: d, level });
            }
            *exps.entry(d).or_insert(0) += r;
        }
        exps.retain(|_, r| *r != 0);
        Ok(EtaQuotient { level, exps })
    }

    fn known(level: u64, pairs: &[(u64, i64)]) -> Self {
        Self::new(level, pairs).expect("built-in quotient is well formed")
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    /// `sum delta r_delta / 24`, the exponent of the leading power of `q`.
    pub fn q_shift(&self) -> Result<i64> {
        let w = self.weighted_sum();
        if w % 24 != 0 {
            return Err(Error::FractionalPrefactor(w));
        }
        Ok(w / 24)
    }

    fn weighted_sum(&self) -> i64 {
        self.exps.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    /// The same quotient viewed on `Gamma_0(level)` for a multiple of the current level.
    pub fn at_level(&self, level: u64) -> Self {
        assert!(level.is_multiple_of(self.level), "{level} is not a multiple of {}", self.level);
        EtaQuotient { level, exps: self.exps.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let level = self.level.lcm(&other.level);
        let mut exps = self.exps.clone();
        for (&d, &r) in &other.exps {
            *exps.entry(d).or_insert(0) += r;
        }
        exps.retain(|_, r| *r != 0);
        EtaQuotient { level, exps }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut exps: BTreeMap<u64, i64> = self.exps.iter().map(|(&d, &r)| (d, r * e)).collect();
        exps.retain(|_, r| *r != 0);
        EtaQuotient { level: self.level, exps }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// `f(k tau)`
    pub fn dilate(&self, k: u64) -> Self {
        EtaQuotient { level: self.level * k, exps: self.exps.iter().map(|(&d, &r)| (d * k, r)).collect() }
    }

    pub fn q_expansion<T: Coeff>(&self, precision: i64) -> Result<Series<T>> {
        eta_product(self.level, &self.exps, precision)
    }

    pub fn newman(&self) -> NewmanReport {
        let n = self.level as i64;
        let weight_zero = self.exps.values().sum::<i64>() == 0;
        let at_infinity = self.weighted_sum() % 24 == 0;
        let at_zero = self.exps.iter().map(|(&d, &r)| (n / d as i64) * r).sum::<i64>() % 24 == 0;
        let mut parity: BTreeMap<u64, i64> = BTreeMap::new();
        for (&d, &r) in &self.exps {
            for (p, e) in factorize(d) {
                *parity.entry(p).or_insert(0) += e as i64 * r.abs();
            }
        }
        let square = parity.values().all(|e| e % 2 == 0);
        NewmanReport { weight_zero, at_infinity, at_zero, square }
    }

    /// Order at `cusp` in the local uniformizer there.
    pub fn order_at(&self, cusp: &Cusp) -> Order {
        let n = self.level as i64;
        let c = if cusp.c == 0 { n } else { cusp.c as i64 };
        let g = c.pow(2).gcd(&n);
        let mut sum = Order::from_integer(0);
        for (&d, &r) in &self.exps {
            let d = d as i64;
            sum += Order::new(r * c.gcd(&d).pow(2), d);
        }
        sum * Order::new(n, 24 * g)
    }

    /// Orders at every cusp of `Gamma_0(level)`; they must sum to zero.
    pub fn order_table(&self, name: &str) -> Result<OrderTable> {
        if !self.newman().all() {
            return Err(Error::NotModular(name.to_string()));
        }
        let entries: Vec<(Cusp, Order)> =
            enumerate_cusps(self.level).into_iter().map(|c| { let o = self.order_at(&c); (c, o) }).collect();
        let sum: Order = entries.iter().map(|(_, o)| *o).sum();
        if sum != Order::from_integer(0) {
            return Err(Error::ValenceMismatch { function: name.to_string(), level: self.level, sum: sum.to_string() });
        }
        Ok(OrderTable { function: name.to_string(), level: self.level, entries })
    }
}

impl fmt::Debug for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|(d, r)| format!("{d}:{r}")).collect();
        write!(f, "[{}] on Gamma0({})", parts.join(", "), self.level)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NewmanReport {
    pub weight_zero: bool,
    pub at_infinity: bool,
    pub at_zero: bool,
    pub square: bool,
}

impl NewmanReport {
    pub fn all(&self) -> bool {
        self.weight_zero && self.at_infinity && self.at_zero && self.square
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// A cusp `a/c` of `Gamma_0(level)` in canonical form; infinity is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub a: u64,
    pub c: u64,
}

impl Cusp {
    pub const INFINITY: Cusp = Cusp { a: 1, c: 0 };

    pub fn is_infinity(&self) -> bool {
        self.c == 0
    }

    /// Human label: `oo`, `0`, or `a/c`.
    pub fn label(&self) -> String {
        match (self.a, self.c) {
            (_, 0) => "oo".to_string(),
            (0, 1) => "0".to_string(),
            (a, c) => format!("{a}/{c}"),
        }
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.c)
    }
}

/// Number of cusps of `Gamma_0(n)`: `sum_{c | n} phi(gcd(c, n/c))`.
pub fn cusp_count(n: u64) -> u64 {
    divisors(n).into_iter().map(|c| euler_phi(c.gcd(&(n / c)))).sum()
}

/// One representative per cusp: for each `c | n` and each unit class modulo
/// `gcd(c, n/c)`, the least `a >= 0` coprime to `c`. Infinity comes first.
pub fn enumerate_cusps(n: u64) -> Vec<Cusp> {
    let mut out = vec![Cusp::INFINITY];
    for c in divisors(n) {
        if c == n {
            continue;
        }
        let g = c.gcd(&(n / c));
        for u in 0..g {
            if u.gcd(&g) != 1 {
                continue;
            }
            let a = (0..).map(|t| u + t * g).find(|a| a.gcd(&c) == 1).expect("coprime lift exists");
            out.push(Cusp { a, c });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTable {
    pub function: String,
    pub level: u64,
    pub entries: Vec<(Cusp, Order)>,
}

impl OrderTable {
    pub fn order(&self, cusp: &Cusp) -> Option<Order> {
        self.entries.iter().find(|(c, _)| c == cusp).map(|(_, o)| *o)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let orders: Vec<_> = self
            .entries
            .iter()
            .map(|(c, o)| serde_json::json!({ "cusp": c.to_string(), "order": o.to_string() }))
            .collect();
        serde_json::json!({ "function": self.function, "level": self.level, "orders": orders })
    }
}

impl fmt::Display for OrderTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on Gamma0({})", self.function, self.level)?;
        for (c, o) in &self.entries {
            writeln!(f, "  {:>6}  {}", c.label(), o)?;
        }
        Ok(())
    }
}

pub mod named {
    //! The quotients the congruence machinery is built from.

    use super::EtaQuotient;

    /// Hauptmodul of `Gamma_0(10)`, `q + 3q^2 + 8q^3 + ...`.
    pub fn y() -> EtaQuotient {
        EtaQuotient::known(10, &[(1, -3), (2, 1), (5, -1), (10, 3)])
    }

    /// `1 + 5y`
    pub fn x() -> EtaQuotient {
        EtaQuotient::known(10, &[(1, -5), (2, 5), (5, 1), (10, -1)])
    }

    /// `eta(50 tau) / eta(2 tau)`, the multiplier inside the twisted operators.
    pub fn z() -> EtaQuotient {
        EtaQuotient::known(50, &[(2, -1), (50, 1)])
    }

    pub fn rho() -> EtaQuotient {
        EtaQuotient::known(10, &[(1, -4), (2, 2), (5, 4), (10, -2)])
    }

    pub fn t() -> EtaQuotient {
        EtaQuotient::known(10, &[(1, -2), (2, -2), (5, 2), (10, 2)])
    }

    pub fn h() -> EtaQuotient {
        EtaQuotient::known(10, &[(1, -1), (2, 1), (5, 5), (10, -5)])
    }

    /// `y(5 tau)`
    pub fn y5() -> EtaQuotient {
        y().dilate(5)
    }

    /// `x(5 tau)`
    pub fn x5() -> EtaQuotient {
        x().dilate(5)
    }

    /// `Z^{1-i} y^l / y(5 tau)^m` on `Gamma_0(50)`.
    pub fn w_ilm(i: u8, l: i64, m: i64) -> EtaQuotient {
        z().pow(1 - i as i64).mul(&y().pow(l)).mul(&y5().pow(-m)).at_level(50)
    }

    /// `Z^{1-i} x(5 tau) / y(5 tau)^2`
    pub fn w_i(i: u8) -> EtaQuotient {
        z().pow(1 - i as i64).mul(&x5()).mul(&y5().pow(-2)).at_level(50)
    }

    /// `Z x(5 tau)^3 / y(5 tau)^5`
    pub fn w_y() -> EtaQuotient {
        z().mul(&x5().pow(3)).mul(&y5().pow(-5)).at_level(50)
    }

    /// Looks a quotient up by name (`y`, `x`, `z`, `rho`, `t`, `h`, `y5`, `x5`, `wy`).
    pub fn by_name(name: &str) -> Option<EtaQuotient> {
        Some(match name {
            "y" => y(),
            "x" => x(),
            "z" | "Z" => z(),
            "rho" => rho(),
            "t" => t(),
            "h" => h(),
            "y5" => y5(),
            "x5" => x5(),
            "wy" | "Wy" => w_y(),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn o(n: i64) -> Order {
        Order::from_integer(n)
    }

    fn cusp(a: u64, c: u64) -> Cusp {
        Cusp { a, c }
    }

    #[test]
    fn cusps_of_small_levels() {
        let ten: Vec<String> = enumerate_cusps(10).iter().map(|c| c.label()).collect();
        assert_eq!(ten, ["oo", "0", "1/2", "1/5"]);
        let fifty = enumerate_cusps(50);
        assert_eq!(fifty.len(), 12);
        for k in [1, 3, 7, 9] {
            assert!(fifty.contains(&cusp(k, 10)));
        }
        for n in 1..=100 {
            assert_eq!(enumerate_cusps(n).len() as u64, cusp_count(n), "level {n}");
        }
    }

    #[test]
    fn hauptmodul_expansion() {
        let s = y().q_expansion::<i64>(8).unwrap();
        assert_eq!(s.to_dense(), vec![0, 1, 3, 8, 19, 41, 84, 164]);
        let x_s = x().q_expansion::<i64>(8).unwrap();
        assert_eq!(x_s, &Series::one(8) + &s.scale(&5));
    }

    #[test]
    fn level_ten_orders() {
        let at = |f: &EtaQuotient| -> Vec<Order> {
            [Cusp::INFINITY, cusp(1, 5), cusp(1, 2), cusp(0, 1)].iter().map(|c| f.order_at(c)).collect()
        };
        assert_eq!(at(&y().inv()), vec![o(-1), o(0), o(0), o(1)]);
        assert_eq!(at(&t()), vec![o(1), o(1), o(-1), o(-1)]);
        assert_eq!(at(&rho()), vec![o(0), o(1), o(0), o(-1)]);
        assert_eq!(at(&x()), vec![o(0), o(0), o(1), o(-1)]);
        for f in [y(), x(), rho(), t(), h()] {
            assert!(f.newman().all());
            f.order_table("f").unwrap();
        }
    }

    #[test]
    fn level_fifty_orders() {
        assert_eq!(z().order_at(&Cusp::INFINITY), o(2));
        for (i, l, m) in [(0u8, 1, 1), (1, 2, 3), (0, 4, 2), (1, 3, 5)] {
            let w = w_ilm(i, l, m);
            let one_minus_i = 1 - i as i64;
            assert_eq!(w.order_at(&cusp(0, 1)), o(-one_minus_i - 5 * l + m));
            assert_eq!(w.order_at(&cusp(1, 2)), o(-2 * one_minus_i));
            for k in 1..=4 {
                assert_eq!(w.order_at(&cusp(k, 5)), o(m));
            }
            for k in [1, 3, 7, 9] {
                assert_eq!(w.order_at(&cusp(k, 10)), o(l));
            }
            w.order_table("w").unwrap();
        }
        // Z contributes -1 at 0 and -2 at 1/2, so the orders there are i and 2i - 1
        for i in [0u8, 1] {
            let w = w_i(i);
            assert_eq!(w.order_at(&cusp(0, 1)), o(i as i64));
            assert_eq!(w.order_at(&cusp(1, 2)), o(2 * i as i64 - 1));
            assert_eq!(w.order_at(&cusp(2, 5)), o(1));
            assert_eq!(w.order_at(&cusp(3, 10)), o(1));
        }
        let wy = w_y();
        assert_eq!(wy.order_at(&cusp(0, 1)), o(1));
        assert_eq!(wy.order_at(&cusp(1, 2)), o(1));
        assert_eq!(wy.order_at(&cusp(4, 5)), o(2));
        assert_eq!(wy.order_at(&cusp(9, 10)), o(3));
    }

    #[test]
    fn newman_rejects_odd_quotients() {
        let bad = EtaQuotient::new(2, &[(1, 1), (2, -2)]).unwrap();
        assert!(!bad.newman().all());
        assert!(matches!(bad.order_table("bad"), Err(Error::NotModular(_))));
        assert!(matches!(EtaQuotient::new(10, &[(3, 1)]), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn json_shape() {
        let v = y().order_table("y").unwrap().to_json();
        assert_eq!(v["level"], 10);
        assert_eq!(v["orders"][0]["cusp"], "1/0");
        assert_eq!(v["orders"][0]["order"], "1");
    }
}
