use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactRational;

/// Sparse polynomial in `q` and `t` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BivarPoly::monomial(c, 0, 0)
    }

    pub fn q() -> Self {
        BivarPoly::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        BivarPoly::monomial(1, 0, 1)
    }

    /// `c * q^deg_q * t^deg_t`
    pub fn monomial(c: impl Into<BigInt>, deg_q: u32, deg_t: u32) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(deg_q, deg_t, c.into());
        p
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (u32, u32, C)>) -> Self {
        let mut p = BivarPoly::zero();
        for (dq, dt, c) in terms {
            p.add_term(dq, dt, c.into());
        }
        p
    }

    fn add_term(&mut self, deg_q: u32, deg_t: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((deg_q, deg_t)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(deg_q, deg_t));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_q: u32, deg_t: u32) -> BigInt {
        self.terms.get(&(deg_q, deg_t)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(deg_q, deg_t)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(dq, dt), c)| (dq, dt, c))
    }

    /// Terms in the canonical display order: `t`-degree descending, then
    /// `q`-degree descending.
    pub fn canonical_terms(&self) -> Vec<(u32, u32, &BigInt)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(dq, dt, _)| std::cmp::Reverse((dt, dq)));
        terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|&(dq, _)| dq).max()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, dt)| dt).max()
    }

    /// True when no term involves `t`.
    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|&(_, dt)| dt == 0)
    }

    pub fn is_t_only(&self) -> bool {
        self.terms.keys().all(|&(dq, _)| dq == 0)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = BivarPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `q -> -q`, `t -> -t`.
    pub fn negate_vars(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(dq, dt), c)| ((dq, dt), if (dq + dt) % 2 == 1 { -c } else { c.clone() }))
            .collect();
        BivarPoly { terms }
    }

    /// Swaps the roles of `q` and `t`.
    pub fn swap_vars(&self) -> Self {
        let terms = self.terms.iter().map(|(&(dq, dt), c)| ((dt, dq), c.clone())).collect();
        BivarPoly { terms }
    }

    pub fn eval(&self, q0: &ExactRational, t0: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for (&(dq, dt), c) in &self.terms {
            acc += ExactRational::from_integer(c.clone()) * Pow::pow(q0, dq) * Pow::pow(t0, dt);
        }
        acc
    }

    /// Fixes `q` to an integer, leaving a polynomial in `t`.
    pub fn at_q(&self, q0: &BigInt) -> Self {
        let mut p = BivarPoly::zero();
        for (&(dq, dt), c) in &self.terms {
            p.add_term(0, dt, c * Pow::pow(q0, dq));
        }
        p
    }

    /// Fixes `t` to an integer, leaving a polynomial in `q`.
    pub fn at_t(&self, t0: &BigInt) -> Self {
        let mut p = BivarPoly::zero();
        for (&(dq, dt), c) in &self.terms {
            p.add_term(dq, 0, c * Pow::pow(t0, dt));
        }
        p
    }
}

impl From<i64> for BivarPoly {
    fn from(c: i64) -> Self {
        BivarPoly::constant(c)
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(aq, at), ac) in &self.terms {
            for (&(bq, bt), bc) in &rhs.terms {
                out.add_term(aq + bq, at + bt, ac * bc);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (&(dq, dt), c) in &rhs.terms {
            self.add_term(dq, dt, c.clone());
        }
    }
}

impl SubAssign<&BivarPoly> for BivarPoly {
    fn sub_assign(&mut self, rhs: &BivarPoly) {
        for (&(dq, dt), c) in &rhs.terms {
            self.add_term(dq, dt, -c);
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $method(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $method(self, rhs: &BivarPoly) -> BivarPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<BivarPoly> for &BivarPoly {
            type Output = BivarPoly;
            fn $method(self, rhs: BivarPoly) -> BivarPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl std::iter::Sum for BivarPoly {
    fn sum<I: Iterator<Item = BivarPoly>>(iter: I) -> Self {
        iter.fold(BivarPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for BivarPoly {
    fn product<I: Iterator<Item = BivarPoly>>(iter: I) -> Self {
        iter.fold(BivarPoly::one(), |acc, p| &acc * &p)
    }
}

/// `q^2*t^2 - 3*q*t^2 + 2*t^2 + 3*q*t - 3*t + 1`
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (dq, dt, c)) in self.canonical_terms().into_iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !magnitude.is_one() || (dq == 0 && dt == 0) {
                factors.push(magnitude.to_string());
            }
            for (var, deg) in [("q", dq), ("t", dt)] {
                match deg {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    d => factors.push(format!("{var}^{d}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// JSON form: `[[deg_q, deg_t, "coeff"], ...]` in canonical order.
impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self.canonical_terms();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for (dq, dt, c) in terms {
            seq.serialize_element(&(dq, dt, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(u32, u32, String)> = Vec::deserialize(deserializer)?;
        let mut p = BivarPoly::zero();
        for (dq, dt, c) in raw {
            let c: BigInt = c.parse().map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            p.add_term(dq, dt, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{integer, rational};

    fn qt_minus_t_plus_1() -> BivarPoly {
        BivarPoly::from_terms([(1, 1, 1), (0, 1, -1), (0, 0, 1)])
    }

    #[test]
    fn powers() {
        assert_eq!(qt_minus_t_plus_1().pow(0), BivarPoly::one());
        let qt1 = BivarPoly::from_terms([(1, 1, 1), (0, 0, 1)]);
        assert_eq!(qt1.pow(2), BivarPoly::from_terms([(2, 2, 1), (1, 1, 2), (0, 0, 1)]));
        let expected = BivarPoly::from_terms([(2, 2, 1), (1, 2, -2), (0, 2, 1), (1, 1, 2), (0, 1, -2), (0, 0, 1)]);
        assert_eq!(qt_minus_t_plus_1().pow(2), expected);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = &BivarPoly::q() - &BivarPoly::q();
        assert!(p.is_zero());
        assert_eq!(p, BivarPoly::zero());
        assert_eq!(BivarPoly::monomial(0, 3, 3), BivarPoly::zero());
    }

    #[test]
    fn negating_variables() {
        assert_eq!(BivarPoly::one().negate_vars(), BivarPoly::one());
        let qt = BivarPoly::monomial(1, 1, 1);
        assert_eq!(qt.negate_vars(), qt);
        let q_plus_t = &BivarPoly::q() + &BivarPoly::t();
        assert_eq!(q_plus_t.negate_vars(), -&q_plus_t);
    }

    #[test]
    fn evaluation() {
        let qt1 = BivarPoly::from_terms([(1, 1, 1), (0, 0, 1)]).pow(2);
        assert_eq!(qt1.eval(&integer(1), &integer(1)), integer(4));
        let p = BivarPoly::from_terms([(3, 1, 5), (0, 0, -7)]);
        assert_eq!(p.eval(&integer(0), &integer(0)), integer(-7));
        assert_eq!(qt_minus_t_plus_1().eval(&integer(2), &rational(1, 2)), rational(3, 2));
    }

    #[test]
    fn partial_specialization() {
        let p = qt_minus_t_plus_1();
        assert_eq!(p.at_q(&BigInt::from(1)), BivarPoly::one());
        assert_eq!(p.at_t(&BigInt::from(1)), BivarPoly::q());
    }

    #[test]
    fn display_is_canonical() {
        let m11 = BivarPoly::from_terms([(2, 2, 1), (1, 2, -3), (0, 2, 2), (1, 1, 3), (0, 1, -3), (0, 0, 1)]);
        assert_eq!(m11.to_string(), "q^2*t^2 - 3*q*t^2 + 2*t^2 + 3*q*t - 3*t + 1");
        assert_eq!(BivarPoly::zero().to_string(), "0");
        assert_eq!(BivarPoly::constant(-1).to_string(), "-1");
        assert_eq!((-&BivarPoly::q()).to_string(), "-q");
    }

    #[test]
    fn json_form() {
        let p = BivarPoly::from_terms([(1, 0, -3), (0, 0, 1), (2, 0, 2)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[2,0,"2"],[1,0,"-3"],[0,0,"1"]]"#);
        let back: BivarPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<BivarPoly>(r#"[[0,0,"x"]]"#).is_err());
    }

    #[test]
    fn large_coefficients_do_not_overflow() {
        let two = BivarPoly::constant(2);
        let big = two.pow(200);
        assert_eq!(big.coeff(0, 0), BigInt::from(2).pow(200u32));
    }
}
