//! Reverse characteristic polynomials, M-triangles and H-triangles of the
//! shuffle lattice, each computed by several independent routes.
//!
//! * brute force: Möbius rows over the materialized lattice (or the bubble
//!   in-degree census for H);
//! * interval: `M = sum_u (qt)^rk(u) ch~_[u,1](t)` with each upper interval
//!   factored into smaller shuffle lattices;
//! * formula: the closed forms;
//! * composition sum: the grouped sum over `(j, k)` after the inner
//!   composition sum is collapsed to binomials, evaluated at `(-q, -t)`;
//! * series: coefficient extraction from the reciprocal of the bivariate
//!   generating function's denominator.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattices::{build_shuffle_lattice, degree_statistics, DegreeTriple};
use crate::polyalg::{series_reciprocal, BivarPoly, TruncatedSeries2};
use crate::poset::Poset;
use crate::words::{binomial, enumerate_shuffle_words, interval_shape, rank, ShuffleParams, ShuffleWord};

/// Largest lattice the brute-force routes build without an explicit override.
pub const BRUTE_SIZE_CAP: u64 = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleKind {
    CharPoly,
    MTriangle,
    HTriangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Brute,
    Interval,
    Formula,
    CompositionSum,
    Series,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Interval => "interval",
            Method::Formula => "formula",
            Method::CompositionSum => "compsum",
            Method::Series => "series",
        }
    }

    /// Methods available for a triangle kind.
    pub fn supported(kind: TriangleKind) -> &'static [Method] {
        match kind {
            TriangleKind::CharPoly | TriangleKind::HTriangle => &[Method::Brute, Method::Formula],
            TriangleKind::MTriangle => {
                &[Method::Brute, Method::Interval, Method::Formula, Method::CompositionSum, Method::Series]
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "brute" => Method::Brute,
            "interval" => Method::Interval,
            "formula" => Method::Formula,
            "compsum" => Method::CompositionSum,
            "series" => Method::Series,
            _ => return Err(Error::Parse { input: s.to_string(), reason: "unknown method".into() }),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleResult {
    pub params: ShuffleParams,
    pub kind: TriangleKind,
    pub method: Method,
    pub value: BivarPoly,
}

fn choose(n: usize, k: usize) -> BivarPoly {
    BivarPoly::constant(BigInt::from(binomial(n, k)))
}

fn qt() -> BivarPoly {
    BivarPoly::monomial(1, 1, 1)
}

/// `qt - t + 1`
fn qt_minus_t_plus_one() -> BivarPoly {
    BivarPoly::from_terms([(1, 1, 1), (0, 1, -1), (0, 0, 1)])
}

fn one_minus(p: &BivarPoly) -> BivarPoly {
    &BivarPoly::one() - p
}

fn exp(e: usize) -> u32 {
    u32::try_from(e).expect("exponent fits in u32")
}

/// `ch~_P(q) = sum_v mu(0, v) q^rk(v)`.
pub fn char_poly_of<L: Clone + Eq + std::hash::Hash>(poset: &Poset<L>) -> Result<BivarPoly> {
    let bottom = poset.bottom().ok_or(Error::NoBottom)?;
    let row = poset.mobius(bottom)?;
    Ok(BivarPoly::from_terms(row.values.iter().map(|(&v, &mu)| (exp(poset.rank_of(v)), 0, mu))))
}

/// `M_P(q, t) = sum_{u <= v} mu(u, v) q^rk(u) t^rk(v)`, one Möbius row per
/// source, rows computed in parallel.
pub fn m_triangle_of<L: Clone + Eq + std::hash::Hash + Send + Sync>(poset: &Poset<L>) -> Result<BivarPoly> {
    let height = poset.height();
    let rows: Vec<(usize, Vec<i64>)> = (0..poset.len())
        .into_par_iter()
        .map(|u| {
            let table = poset.mobius(u)?;
            let mut by_rank = vec![0i64; height + 1];
            for (&v, &mu) in &table.values {
                let slot = &mut by_rank[poset.rank_of(v)];
                *slot = slot.checked_add(mu).ok_or(Error::MobiusOverflow { element: v })?;
            }
            Ok((poset.rank_of(u), by_rank))
        })
        .collect::<Result<_>>()?;
    let mut table = vec![vec![BigInt::from(0); height + 1]; height + 1];
    for (ru, by_rank) in rows {
        for (rv, mu) in by_rank.into_iter().enumerate() {
            table[ru][rv] += mu;
        }
    }
    Ok(BivarPoly::from_terms(
        table
            .into_iter()
            .enumerate()
            .flat_map(|(ru, row)| row.into_iter().enumerate().map(move |(rv, c)| (exp(ru), exp(rv), c))),
    ))
}

pub fn char_poly_brute(params: ShuffleParams, cap: u64) -> Result<BivarPoly> {
    char_poly_of(&build_shuffle_lattice(params, cap)?)
}

/// `sum_a C(m,a) C(n,a) (-q)^a (1-q)^(m+n-a)`.
pub fn char_poly_formula(params: ShuffleParams) -> BivarPoly {
    let (m, n) = (params.m, params.n);
    let minus_q = -&BivarPoly::q();
    let one_minus_q = one_minus(&BivarPoly::q());
    (0..=m.min(n)).map(|a| choose(m, a) * choose(n, a) * minus_q.pow(exp(a)) * one_minus_q.pow(exp(m + n - a))).sum()
}

/// Product of `ch~_{eta_i, lambda_i}(q)` over the factors of `[u, top]`.
pub fn interval_char_poly(u: &ShuffleWord, params: ShuffleParams) -> BivarPoly {
    interval_shape(u, params).factors().map(char_poly_formula).product()
}

pub fn m_triangle_brute(params: ShuffleParams, cap: u64) -> Result<BivarPoly> {
    m_triangle_of(&build_shuffle_lattice(params, cap)?)
}

/// `sum_u (qt)^rk(u) prod_i ch~_{eta_i, lambda_i}(t)`.
pub fn m_triangle_interval(params: ShuffleParams, cap: u64) -> Result<BivarPoly> {
    let words = enumerate_shuffle_words(params, cap)?;
    let mut factor_cache: HashMap<ShuffleParams, BivarPoly> = HashMap::new();
    let mut total = BivarPoly::zero();
    for u in &words {
        let ch_t: BivarPoly = interval_shape(u, params)
            .factors()
            .map(|f| factor_cache.entry(f).or_insert_with(|| char_poly_formula(f).swap_vars()).clone())
            .product();
        total += &(qt().pow(exp(rank(u, params))) * ch_t);
    }
    Ok(total)
}

/// `sum_a C(m,a) C(n,a) t^a (1-t)^a (q-1)^a (qt-t+1)^(m+n-2a)`.
pub fn m_triangle_formula(params: ShuffleParams) -> BivarPoly {
    let (m, n) = (params.m, params.n);
    let t = BivarPoly::t();
    let weight = &t * &one_minus(&t) * (&BivarPoly::q() - &BivarPoly::one());
    let base = qt_minus_t_plus_one();
    (0..=m.min(n)).map(|a| choose(m, a) * choose(n, a) * weight.pow(exp(a)) * base.pow(exp(m + n - 2 * a))).sum()
}

/// `M(-q, -t) = sum_{j,k} C(n,k) C(m,j) (qt)^(k+j) (t+1)^(n-k)
///   sum_l C(m-j+k, l+k) C(n+l, l) t^l`, negated back to `M(q, t)`.
pub fn m_triangle_composition_sum(params: ShuffleParams) -> BivarPoly {
    let (m, n) = (params.m, params.n);
    let t_plus_one = &BivarPoly::t() + &BivarPoly::one();
    let mut negated = BivarPoly::zero();
    for j in 0..=m {
        for k in 0..=n {
            let inner: BivarPoly = (0..=m - j)
                .map(|l| {
                    let c = BigInt::from(binomial(m - j + k, l + k) * binomial(n + l, l));
                    BivarPoly::monomial(c, 0, exp(l))
                })
                .sum();
            negated += &(choose(n, k) * choose(m, j) * qt().pow(exp(k + j)) * t_plus_one.pow(exp(n - k)) * inner);
        }
    }
    negated.negate_vars()
}

/// The two renderings of the generating-function denominator that appear
/// for `sum x^m y^n M_{m,n}(q, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Denominator {
    /// `(1 - xA)(1 - yA) - t(1-t)(q-1)xy`, `A = qt - t + 1`
    MinusQMinusOne,
    /// `(1 - xA)(1 - yA) + t(1-t)(q+1)xy`
    PlusQPlusOne,
}

impl Denominator {
    pub fn rendering(self) -> &'static str {
        match self {
            Denominator::MinusQMinusOne => "(1-x(qt-t+1))(1-y(qt-t+1)) - t(1-t)(q-1)xy",
            Denominator::PlusQPlusOne => "(1-x(qt-t+1))(1-y(qt-t+1)) + t(1-t)(q+1)xy",
        }
    }

    pub fn series(self) -> TruncatedSeries2 {
        let a = qt_minus_t_plus_one();
        let t = BivarPoly::t();
        let t_one_minus_t = &t * &one_minus(&t);
        let xy = match self {
            Denominator::MinusQMinusOne => -(t_one_minus_t * (&BivarPoly::q() - &BivarPoly::one())),
            Denominator::PlusQPlusOne => t_one_minus_t * (&BivarPoly::q() + &BivarPoly::one()),
        };
        // (1 - xA)(1 - yA) = 1 - xA - yA + xy A^2
        TruncatedSeries2::from_terms(
            1,
            1,
            [(0, 0, BivarPoly::one()), (1, 0, -&a), (0, 1, -&a), (1, 1, &a.pow(2) + &xy)],
        )
    }
}

/// Denominator whose reciprocal generates `M_{m,n}(-q, -t)`:
/// `(1 - x(qt+t+1))(1 - y(qt+t+1)) - t(t+1)(q+1)xy`.
pub fn negated_denominator() -> TruncatedSeries2 {
    let b = BivarPoly::from_terms([(1, 1, 1), (0, 1, 1), (0, 0, 1)]);
    let xy = -(BivarPoly::from_terms([(0, 1, 1), (0, 2, 1)]) * (&BivarPoly::q() + &BivarPoly::one()));
    TruncatedSeries2::from_terms(1, 1, [(0, 0, BivarPoly::one()), (1, 0, -&b), (0, 1, -&b), (1, 1, &b.pow(2) + &xy)])
}

/// `1 / D` truncated at `(max_m, max_n)`, `D` the generating-function
/// denominator with the `- t(1-t)(q-1)xy` correction.
pub fn m_series(max_m: usize, max_n: usize) -> TruncatedSeries2 {
    series_reciprocal(&Denominator::MinusQMinusOne.series(), max_m, max_n).expect("denominator has constant term 1")
}

/// Which denominator rendering reproduces the brute-force M-triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorAdjudication {
    pub checked_up_to: ShuffleParams,
    pub matches: Vec<(Denominator, bool)>,
}

impl DenominatorAdjudication {
    pub fn matching(&self) -> Vec<Denominator> {
        self.matches.iter().filter(|(_, ok)| *ok).map(|(d, _)| *d).collect()
    }

    pub fn summary(&self) -> String {
        self.matches
            .iter()
            .map(|(d, ok)| {
                format!("{}: {}", d.rendering(), if *ok { "matches brute force" } else { "does NOT match brute force" })
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub fn adjudicate_denominators(max_m: usize, max_n: usize, cap: u64) -> Result<DenominatorAdjudication> {
    let mut brute = Vec::new();
    for m in 0..=max_m {
        for n in 0..=max_n {
            let params = ShuffleParams::new(m, n);
            brute.push((params, m_triangle_brute(params, cap)?));
        }
    }
    Ok(adjudicate_against(&brute))
}

/// Adjudicates the denominators against already computed M-triangles.
pub fn adjudicate_against(brute: &[(ShuffleParams, BivarPoly)]) -> DenominatorAdjudication {
    let max_m = brute.iter().map(|(p, _)| p.m).max().unwrap_or(0);
    let max_n = brute.iter().map(|(p, _)| p.n).max().unwrap_or(0);
    let matches = [Denominator::MinusQMinusOne, Denominator::PlusQPlusOne]
        .into_iter()
        .map(|d| {
            let s = series_reciprocal(&d.series(), max_m, max_n).expect("denominator has constant term 1");
            (d, brute.iter().all(|(p, value)| s.get(p.m, p.n) == *value))
        })
        .collect();
    DenominatorAdjudication { checked_up_to: ShuffleParams::new(max_m, max_n), matches }
}

/// `sum_u q^in(u) t^in_indel(u)`.
pub fn h_triangle_of<'a>(stats: impl IntoIterator<Item = &'a DegreeTriple>) -> BivarPoly {
    BivarPoly::from_terms(stats.into_iter().map(|d| (exp(d.in_total), exp(d.in_indel), 1)))
}

pub fn h_triangle_brute(params: ShuffleParams, cap: u64) -> Result<BivarPoly> {
    Ok(h_triangle_of(degree_statistics(params, cap)?.values()))
}

/// `sum_a C(m,a) C(n,a) q^a (qt+1)^(m+n-2a)`.
pub fn h_triangle_formula(params: ShuffleParams) -> BivarPoly {
    let (m, n) = (params.m, params.n);
    let qt_plus_one = &qt() + &BivarPoly::one();
    (0..=m.min(n))
        .map(|a| choose(m, a) * choose(n, a) * BivarPoly::monomial(1, exp(a), 0) * qt_plus_one.pow(exp(m + n - 2 * a)))
        .sum()
}

/// `sum_u q^rk(u)`.
pub fn rank_generating(params: ShuffleParams, cap: u64) -> Result<BivarPoly> {
    let words = enumerate_shuffle_words(params, cap)?;
    Ok(BivarPoly::from_terms(words.iter().map(|u| (exp(rank(u, params)), 0, 1))))
}

/// Dispatches a triangle computation; used by the command line.
pub fn compute(kind: TriangleKind, method: Method, params: ShuffleParams, cap: u64) -> Result<TriangleResult> {
    if !Method::supported(kind).contains(&method) {
        return Err(Error::Parse { input: method.to_string(), reason: format!("method not available for {kind:?}") });
    }
    let value = match (kind, method) {
        (TriangleKind::CharPoly, Method::Brute) => char_poly_brute(params, cap)?,
        (TriangleKind::CharPoly, _) => char_poly_formula(params),
        (TriangleKind::HTriangle, Method::Brute) => h_triangle_brute(params, cap)?,
        (TriangleKind::HTriangle, _) => h_triangle_formula(params),
        (TriangleKind::MTriangle, Method::Brute) => m_triangle_brute(params, cap)?,
        (TriangleKind::MTriangle, Method::Interval) => m_triangle_interval(params, cap)?,
        (TriangleKind::MTriangle, Method::Formula) => m_triangle_formula(params),
        (TriangleKind::MTriangle, Method::CompositionSum) => m_triangle_composition_sum(params),
        (TriangleKind::MTriangle, Method::Series) => m_series(params.m, params.n).get(params.m, params.n),
    };
    Ok(TriangleResult { params, kind, method, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;
    use crate::words::DEFAULT_SIZE_CAP;

    fn p(m: usize, n: usize) -> ShuffleParams {
        ShuffleParams::new(m, n)
    }

    fn m11() -> BivarPoly {
        BivarPoly::from_terms([(2, 2, 1), (1, 2, -3), (0, 2, 2), (1, 1, 3), (0, 1, -3), (0, 0, 1)])
    }

    fn ch11() -> BivarPoly {
        BivarPoly::from_terms([(2, 0, 2), (1, 0, -3), (0, 0, 1)])
    }

    #[test]
    fn char_poly_small_posets() {
        let single = build_poset(vec![0], &[]).unwrap();
        assert_eq!(char_poly_of(&single).unwrap(), BivarPoly::one());
        let chain = build_poset(vec![0, 1], &[(0, 1)]).unwrap();
        assert_eq!(char_poly_of(&chain).unwrap(), one_minus(&BivarPoly::q()));
        let antichain = build_poset(vec![0, 1], &[]).unwrap();
        assert_eq!(char_poly_of(&antichain).unwrap_err(), Error::NoBottom);
    }

    #[test]
    fn char_poly_routes() {
        assert_eq!(char_poly_brute(p(1, 1), DEFAULT_SIZE_CAP).unwrap(), ch11());
        assert_eq!(char_poly_formula(p(1, 1)), ch11());
        assert_eq!(char_poly_formula(p(0, 0)), BivarPoly::one());
        assert_eq!(char_poly_formula(p(3, 0)), one_minus(&BivarPoly::q()).pow(3));
    }

    #[test]
    fn m_triangle_small() {
        assert_eq!(m_triangle_brute(p(0, 0), DEFAULT_SIZE_CAP).unwrap(), BivarPoly::one());
        assert_eq!(m_triangle_brute(p(1, 0), DEFAULT_SIZE_CAP).unwrap(), qt_minus_t_plus_one());
        assert_eq!(m_triangle_brute(p(1, 1), DEFAULT_SIZE_CAP).unwrap(), m11());
        assert_eq!(m_triangle_formula(p(1, 1)), m11());
        assert_eq!(m_triangle_formula(p(4, 0)), qt_minus_t_plus_one().pow(4));
        assert_eq!(m_triangle_interval(p(0, 0), DEFAULT_SIZE_CAP).unwrap(), BivarPoly::one());
        assert_eq!(m_triangle_interval(p(1, 1), DEFAULT_SIZE_CAP).unwrap(), m11());
        assert_eq!(m_triangle_composition_sum(p(0, 0)), BivarPoly::one());
        assert_eq!(m_triangle_composition_sum(p(1, 1)), m11());
        assert_eq!(m_triangle_composition_sum(p(2, 3)), m_triangle_formula(p(2, 3)));
    }

    #[test]
    fn formula_at_t_one() {
        for (m, n) in [(0, 0), (2, 1), (3, 3)] {
            let at_one = m_triangle_formula(p(m, n)).at_t(&BigInt::from(1));
            assert_eq!(at_one, BivarPoly::monomial(1, exp(m + n), 0));
        }
    }

    #[test]
    fn figure_interval_factor() {
        let params = p(7, 3);
        let u = ShuffleWord::parse("x7y2", params).unwrap();
        let expected = char_poly_formula(p(1, 1)) * char_poly_formula(p(0, 1));
        assert_eq!(interval_char_poly(&u, params), expected);
    }

    #[test]
    fn series_coefficients() {
        let s = m_series(3, 3);
        assert_eq!(s.get(0, 0), BivarPoly::one());
        for m in 0..=3 {
            assert_eq!(s.get(m, 0), qt_minus_t_plus_one().pow(exp(m)));
        }
        assert_eq!(s.get(1, 1), m11());
    }

    #[test]
    fn h_triangle_small() {
        assert_eq!(h_triangle_brute(p(0, 0), DEFAULT_SIZE_CAP).unwrap(), BivarPoly::one());
        let expected = (&qt() + &BivarPoly::one()).pow(2) + BivarPoly::q();
        assert_eq!(h_triangle_brute(p(1, 1), DEFAULT_SIZE_CAP).unwrap(), expected);
        assert_eq!(h_triangle_formula(p(1, 1)), expected);
        assert_eq!(h_triangle_formula(p(3, 0)), (&qt() + &BivarPoly::one()).pow(3));
        let one = crate::polyalg::integer(1);
        assert_eq!(h_triangle_formula(p(1, 2)).eval(&one, &one), crate::polyalg::integer(12));
    }

    #[test]
    fn dispatch_rejects_unsupported_method() {
        assert!(compute(TriangleKind::HTriangle, Method::Series, p(1, 1), DEFAULT_SIZE_CAP).is_err());
        let r = compute(TriangleKind::MTriangle, Method::Series, p(1, 1), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.value, m11());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::supported(TriangleKind::MTriangle) {
            assert_eq!(m.name().parse::<Method>().unwrap(), *m);
        }
    }
}
