//! The composition identity behind the M-triangle formula, its binomial
//! sub-steps, and the substitution relations linking the H-triangle to the
//! M-triangle and to the characteristic polynomial.
//!
//! Polynomials here are univariate in `t`; they are stored as `BivarPoly`
//! with no `q` terms.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyalg::{integer, BivarPoly, ExactRational};
use crate::triangles::{char_poly_formula, h_triangle_formula, m_triangle_formula};
use crate::words::{binomial, ShuffleParams};

/// A weak composition: nonnegative parts with a prescribed sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// All `C(total + parts - 1, parts - 1)` weak compositions of `total` into
/// `parts` parts, in reverse-lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Composition> {
    assert!(parts >= 1, "a composition needs at least one part");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fill_compositions(total, parts, &mut current, &mut out);
    out
}

fn fill_compositions(remaining: usize, parts_left: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if parts_left == 1 {
        current.push(remaining);
        out.push(Composition(current.clone()));
        current.pop();
        return;
    }
    for first in (0..=remaining).rev() {
        current.push(first);
        fill_compositions(remaining - first, parts_left - 1, current, out);
        current.pop();
    }
}

fn choose(n: usize, k: usize) -> BigInt {
    BigInt::from(binomial(n, k))
}

fn t_plus_one() -> BivarPoly {
    BivarPoly::from_terms([(0, 1, 1), (0, 0, 1)])
}

fn exp(e: usize) -> u32 {
    u32::try_from(e).expect("exponent fits in u32")
}

/// `sum_a C(lambda,a) C(eta,a) t^a (t+1)^(eta - a + extra)`.
fn block_factor(eta: usize, lambda: usize, extra: usize) -> BivarPoly {
    (0..=eta.min(lambda))
        .map(|a| {
            BivarPoly::monomial(choose(lambda, a) * choose(eta, a), 0, exp(a)) * t_plus_one().pow(exp(eta - a + extra))
        })
        .sum()
}

/// The binomial rewriting of one block factor, computed both ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VandermondeStep {
    /// `sum_a C(lambda,a) C(eta,a) t^a (t+1)^(eta-a)`
    pub expanded: BivarPoly,
    /// `sum_j C(eta, eta-j) C(lambda+j, j) t^j`
    pub collapsed: BivarPoly,
}

impl VandermondeStep {
    pub fn holds(&self) -> bool {
        self.expanded == self.collapsed
    }
}

pub fn vandermonde_step(eta: usize, lambda: usize) -> VandermondeStep {
    let collapsed =
        (0..=eta).map(|j| BivarPoly::monomial(choose(eta, eta - j) * choose(lambda + j, j), 0, exp(j))).sum();
    VandermondeStep { expanded: block_factor(eta, lambda, 0), collapsed }
}

/// Sum over pairs of compositions `eta` of `m` and `lambda` of `n` into
/// `k + 1` parts of `prod_i block(eta_i, lambda_i)`.
fn composition_pair_sum(m: usize, n: usize, k: usize, block: impl Fn(usize, usize) -> BivarPoly) -> BivarPoly {
    let etas = compositions(m, k + 1);
    let lambdas = compositions(n, k + 1);
    let mut cache: HashMap<(usize, usize), BivarPoly> = HashMap::new();
    let mut total = BivarPoly::zero();
    for eta in &etas {
        for lambda in &lambdas {
            let mut product = BivarPoly::one();
            for (&e, &l) in eta.parts().iter().zip(lambda.parts()) {
                let factor = cache.entry((e, l)).or_insert_with(|| block(e, l));
                product = &product * &*factor;
            }
            total += &product;
        }
    }
    total
}

/// Left side of the inner-sum identity:
/// `sum_{eta, lambda} prod_i sum_a C(lambda_i,a) C(eta_i,a) t^a (t+1)^(eta_i - a)`.
pub fn inner_sum_lhs(m: usize, n: usize, k: usize) -> BivarPoly {
    composition_pair_sum(m, n, k, |e, l| block_factor(e, l, 0))
}

/// Right side: `C(n+k, k) sum_l C(m+k, l+k) C(n+k+l, l) t^l`.
pub fn inner_sum_rhs(m: usize, n: usize, k: usize) -> BivarPoly {
    let sum: BivarPoly =
        (0..=m).map(|l| BivarPoly::monomial(choose(m + k, l + k) * choose(n + k + l, l), 0, exp(l))).sum();
    BivarPoly::constant(choose(n + k, k)) * sum
}

/// The sum as it arises from the grouped M-triangle, with exponent
/// `eta_i + lambda_i - a` on `(t+1)`.
pub fn grouped_inner_sum(m: usize, n: usize, k: usize) -> BivarPoly {
    composition_pair_sum(m, n, k, |e, l| block_factor(e, l, l))
}

/// `sum_r C(n,r) C(m+k, r+k) C(m-r, l-r)`
pub fn r_sum_lhs(m: usize, n: usize, k: usize, l: usize) -> BigUint {
    (0..=l.min(m).min(n)).map(|r| binomial(n, r) * binomial(m + k, r + k) * binomial(m - r, l - r)).sum()
}

/// `C(m+k, l+k) C(n+k+l, l)`
pub fn r_sum_rhs(m: usize, n: usize, k: usize, l: usize) -> BigUint {
    binomial(m + k, l + k) * binomial(n + k + l, l)
}

/// Witness carried by a verdict when the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Poly(BivarPoly),
    Value(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub name: String,
    pub params: Vec<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Evidence>,
}

impl IdentityVerdict {
    pub fn pass(name: &str, params: &[usize]) -> Self {
        IdentityVerdict { name: name.to_string(), params: params.to_vec(), passed: true, lhs: None, rhs: None }
    }

    pub fn fail(name: &str, params: &[usize], lhs: Evidence, rhs: Evidence) -> Self {
        IdentityVerdict {
            name: name.to_string(),
            params: params.to_vec(),
            passed: false,
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }

    /// Compares two polynomials.
    pub fn compare(name: &str, params: &[usize], lhs: &BivarPoly, rhs: &BivarPoly) -> Self {
        if lhs == rhs {
            IdentityVerdict::pass(name, params)
        } else {
            IdentityVerdict::fail(name, params, Evidence::Poly(lhs.clone()), Evidence::Poly(rhs.clone()))
        }
    }

    /// Records a yes/no property; `detail` is kept as evidence on failure.
    pub fn check(name: &str, params: &[usize], ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            IdentityVerdict::pass(name, params)
        } else {
            let detail = detail();
            IdentityVerdict::fail(name, params, Evidence::Value(detail), Evidence::Value(String::new()))
        }
    }
}

fn check_nonzero(value: &ExactRational, point: impl FnOnce() -> String) -> Result<()> {
    if value.is_zero() {
        Err(Error::ExcludedPoint { point: point() })
    } else {
        Ok(())
    }
}

/// Evaluation grid `{2, .., m+n+2}`: `m+n+1` points, avoiding 0 and 1.
fn grid(params: ShuffleParams) -> impl Iterator<Item = i64> + Clone {
    2..=(params.total() as i64 + 2)
}

/// `M(q,t) = (1-t)^(m+n) H(t(q-1)/(1-t), q/(q-1))`, checked at every point
/// of the grid using the given `M` and `H`. Both sides are polynomials of
/// degree at most `m+n` in each variable, so agreement on the
/// `(m+n+1) x (m+n+1)` grid proves equality.
pub fn verify_h_to_m_with(params: ShuffleParams, m_poly: &BivarPoly, h_poly: &BivarPoly) -> Result<IdentityVerdict> {
    let one = ExactRational::one();
    let total = exp(params.total());
    for q in grid(params) {
        for t in grid(params) {
            let (q, t) = (integer(q), integer(t));
            let one_minus_t = &one - &t;
            let q_minus_one = &q - &one;
            check_nonzero(&one_minus_t, || format!("t = {t}"))?;
            check_nonzero(&q_minus_one, || format!("q = {q}"))?;
            let lhs = m_poly.eval(&q, &t);
            let x = &t * &q_minus_one / &one_minus_t;
            let y = &q / &q_minus_one;
            let rhs = num_traits::Pow::pow(&one_minus_t, total) * h_poly.eval(&x, &y);
            if lhs != rhs {
                return Ok(IdentityVerdict::fail(
                    "h-to-m-relation",
                    &[params.m, params.n],
                    Evidence::Value(format!("M({q},{t}) = {lhs}")),
                    Evidence::Value(format!("(1-t)^(m+n) H(..) = {rhs}")),
                ));
            }
        }
    }
    Ok(IdentityVerdict::pass("h-to-m-relation", &[params.m, params.n]))
}

pub fn verify_h_to_m(params: ShuffleParams) -> Result<IdentityVerdict> {
    verify_h_to_m_with(params, &m_triangle_formula(params), &h_triangle_formula(params))
}

/// `ch~(q) = q^(m+n) H((q-1)/q, (1-2q)/(q-1))` on `m+n+1` points.
pub fn verify_char_from_h_with(
    params: ShuffleParams,
    ch_poly: &BivarPoly,
    h_poly: &BivarPoly,
) -> Result<IdentityVerdict> {
    let one = ExactRational::one();
    let two = integer(2);
    let total = exp(params.total());
    for q in grid(params) {
        let q = integer(q);
        let q_minus_one = &q - &one;
        check_nonzero(&q, || "q = 0".to_string())?;
        check_nonzero(&q_minus_one, || "q = 1".to_string())?;
        let lhs = ch_poly.eval(&q, &ExactRational::zero());
        let x = &q_minus_one / &q;
        let y = (&one - &two * &q) / &q_minus_one;
        let rhs = num_traits::Pow::pow(&q, total) * h_poly.eval(&x, &y);
        if lhs != rhs {
            return Ok(IdentityVerdict::fail(
                "char-from-h-relation",
                &[params.m, params.n],
                Evidence::Value(format!("ch({q}) = {lhs}")),
                Evidence::Value(format!("q^(m+n) H(..) = {rhs}")),
            ));
        }
    }
    Ok(IdentityVerdict::pass("char-from-h-relation", &[params.m, params.n]))
}

pub fn verify_char_from_h(params: ShuffleParams) -> Result<IdentityVerdict> {
    verify_char_from_h_with(params, &char_poly_formula(params), &h_triangle_formula(params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_poly(coeffs: &[i64]) -> BivarPoly {
        BivarPoly::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (0, i as u32, c)))
    }

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(0, 3), vec![Composition(vec![0, 0, 0])]);
        assert_eq!(compositions(2, 2), vec![Composition(vec![2, 0]), Composition(vec![1, 1]), Composition(vec![0, 2])]);
        assert_eq!(compositions(4, 3).len(), 15);
        assert!(compositions(4, 3).iter().all(|c| c.total() == 4));
    }

    #[test]
    fn inner_sum_cases() {
        for k in 0..4 {
            assert_eq!(inner_sum_lhs(0, 0, k), BivarPoly::one());
            assert_eq!(inner_sum_rhs(0, 0, k), BivarPoly::one());
        }
        assert_eq!(inner_sum_lhs(1, 0, 0), t_poly(&[1, 1]));
        assert_eq!(inner_sum_rhs(1, 0, 0), t_poly(&[1, 1]));
        assert_eq!(inner_sum_lhs(1, 1, 0), inner_sum_rhs(1, 1, 0));
        assert_eq!(inner_sum_lhs(3, 2, 2), inner_sum_rhs(3, 2, 2));
    }

    #[test]
    fn vandermonde_cases() {
        let s = vandermonde_step(0, 0);
        assert_eq!((s.expanded.clone(), s.holds()), (BivarPoly::one(), true));
        let s = vandermonde_step(1, 0);
        assert_eq!(s.expanded, t_poly(&[1, 1]));
        assert_eq!(s.collapsed, t_poly(&[1, 1]));
        assert!(vandermonde_step(2, 3).holds());
    }

    #[test]
    fn r_sum_cases() {
        assert_eq!(r_sum_lhs(2, 1, 1, 1), r_sum_rhs(2, 1, 1, 1));
        assert_eq!(r_sum_rhs(0, 0, 0, 0), BigUint::one());
    }

    #[test]
    fn relations_small() {
        for (m, n) in [(0, 0), (1, 1), (3, 2)] {
            assert!(verify_h_to_m(ShuffleParams::new(m, n)).unwrap().passed);
        }
        for (m, n) in [(0, 0), (1, 1), (4, 3)] {
            assert!(verify_char_from_h(ShuffleParams::new(m, n)).unwrap().passed);
        }
    }

    #[test]
    fn relation_detects_a_wrong_polynomial() {
        let params = ShuffleParams::new(1, 1);
        let wrong = &m_triangle_formula(params) + &BivarPoly::t();
        let verdict = verify_h_to_m_with(params, &wrong, &h_triangle_formula(params)).unwrap();
        assert!(!verdict.passed);
        assert!(verdict.lhs.is_some());
    }
}
