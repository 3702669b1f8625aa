//! Verification suites: every identity, every cross-method agreement and the
//! structural properties of the lattices, collected into one report.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::identities::{
    grouped_inner_sum, inner_sum_lhs, inner_sum_rhs, r_sum_lhs, r_sum_rhs, vandermonde_step, verify_char_from_h,
    verify_char_from_h_with, verify_h_to_m, verify_h_to_m_with, Evidence, IdentityVerdict,
};
use crate::lattices::{build_shuffle_lattice, check_interval_decomposition, degree_statistics, indel_successors};
use crate::polyalg::BivarPoly;
use crate::poset::{build_poset, check_order_isomorphism, product_all, Poset};
use crate::triangles::{
    adjudicate_against, char_poly_formula, char_poly_of, h_triangle_formula, h_triangle_of, interval_char_poly,
    m_series, m_triangle_composition_sum, m_triangle_formula, m_triangle_interval, m_triangle_of, rank_generating,
    BRUTE_SIZE_CAP,
};
use crate::words::{rank, ShuffleParams, ShuffleWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Identities,
    Relations,
    Methods,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "relations" => Suite::Relations,
            "methods" => Suite::Methods,
            "all" => Suite::All,
            _ => return Err(crate::Error::Parse { input: s.into(), reason: "unknown suite".into() }),
        })
    }
}

/// Parameter ranges for each family of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Lattices materialized for brute-force comparisons.
    pub brute_max: ShuffleParams,
    /// Every upper interval is factored and checked up to here.
    pub interval_max: ShuffleParams,
    pub series_max: ShuffleParams,
    pub relation_max: ShuffleParams,
    pub identity_max: ShuffleParams,
    pub identity_max_k: usize,
    pub vandermonde_max: usize,
    pub prefactor_max: ShuffleParams,
    pub prefactor_max_k: usize,
    /// Upper intervals sampled for the explicit isomorphism check.
    pub decomposition_samples: usize,
    pub seed: u64,
    pub cap: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            brute_max: ShuffleParams::new(4, 4),
            interval_max: ShuffleParams::new(4, 4),
            series_max: ShuffleParams::new(8, 8),
            relation_max: ShuffleParams::new(6, 6),
            identity_max: ShuffleParams::new(6, 6),
            identity_max_k: 4,
            vandermonde_max: 8,
            prefactor_max: ShuffleParams::new(5, 5),
            prefactor_max_k: 3,
            decomposition_samples: 50,
            seed: 0x5eed,
            cap: BRUTE_SIZE_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub verdicts: Vec<IdentityVerdict>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(verdicts: Vec<IdentityVerdict>, notes: Vec<String>) -> Self {
        VerificationReport { schema: 1, verdicts, notes }
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityVerdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }

    fn extend(&mut self, other: VerificationReport) {
        self.verdicts.extend(other.verdicts);
        self.notes.extend(other.notes);
    }

    /// Human-readable table, one line per verdict, notes at the end.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let params = v.params.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            writeln!(out, "{}  {:<32} ({})", if v.passed { "PASS" } else { "FAIL" }, v.name, params).unwrap();
            for (side, evidence) in [("lhs", &v.lhs), ("rhs", &v.rhs)] {
                match evidence {
                    Some(Evidence::Poly(p)) => writeln!(out, "      {side}: {p}").unwrap(),
                    Some(Evidence::Value(s)) if !s.is_empty() => writeln!(out, "      {side}: {s}").unwrap(),
                    _ => {}
                }
            }
        }
        let passed = self.verdicts.iter().filter(|v| v.passed).count();
        writeln!(out, "{passed}/{} passed", self.verdicts.len()).unwrap();
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn grid(max: ShuffleParams) -> Vec<ShuffleParams> {
    (0..=max.m).flat_map(|m| (0..=max.n).map(move |n| ShuffleParams::new(m, n))).collect()
}

fn mn(p: ShuffleParams) -> [usize; 2] {
    [p.m, p.n]
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Vec::new(), Vec::new());
    if matches!(suite, Suite::Identities | Suite::All) {
        report.extend(identities_suite(config));
    }
    if matches!(suite, Suite::Relations | Suite::All) {
        report.extend(relations_suite(config)?);
    }
    if matches!(suite, Suite::Methods | Suite::All) {
        report.extend(methods_suite(config)?);
    }
    Ok(report)
}

/// The inner-sum identity, its binomial sub-steps, and the `(t+1)^(n-k)`
/// bridge between the two exponent conventions.
pub fn identities_suite(config: &SuiteConfig) -> VerificationReport {
    let max_k = config.identity_max_k;
    let inner: Vec<IdentityVerdict> = grid(config.identity_max)
        .into_par_iter()
        .flat_map_iter(|p| {
            (0..=max_k).map(move |k| {
                IdentityVerdict::compare(
                    "inner-sum-identity",
                    &[p.m, p.n, k],
                    &inner_sum_lhs(p.m, p.n, k),
                    &inner_sum_rhs(p.m, p.n, k),
                )
            })
        })
        .collect();

    let mut verdicts = inner;
    for eta in 0..=config.vandermonde_max {
        for lambda in 0..=config.vandermonde_max {
            let step = vandermonde_step(eta, lambda);
            verdicts.push(IdentityVerdict::compare(
                "vandermonde-step",
                &[eta, lambda],
                &step.expanded,
                &step.collapsed,
            ));
        }
    }
    for p in grid(config.identity_max) {
        for k in 0..=max_k {
            for l in 0..=p.m {
                let (lhs, rhs) = (r_sum_lhs(p.m, p.n, k, l), r_sum_rhs(p.m, p.n, k, l));
                let verdict = if lhs == rhs {
                    IdentityVerdict::pass("r-sum-binomial", &[p.m, p.n, k, l])
                } else {
                    IdentityVerdict::fail(
                        "r-sum-binomial",
                        &[p.m, p.n, k, l],
                        Evidence::Value(lhs.to_string()),
                        Evidence::Value(rhs.to_string()),
                    )
                };
                verdicts.push(verdict);
            }
        }
    }
    let t_plus_one = BivarPoly::from_terms([(0, 1, 1), (0, 0, 1)]);
    for p in grid(config.prefactor_max) {
        for k in 0..=config.prefactor_max_k {
            let bridged = t_plus_one.pow(p.n as u32) * inner_sum_lhs(p.m, p.n, k);
            verdicts.push(IdentityVerdict::compare(
                "prefactor-bridge",
                &[p.m, p.n, k],
                &grouped_inner_sum(p.m, p.n, k),
                &bridged,
            ));
        }
    }
    VerificationReport::new(verdicts, Vec::new())
}

/// Substitution relations H -> M and H -> ch~, from the closed forms on the
/// whole relation range and from brute-force polynomials where those exist.
pub fn relations_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let formula: Vec<IdentityVerdict> = grid(config.relation_max)
        .into_par_iter()
        .map(|p| Ok(vec![verify_h_to_m(p)?, verify_char_from_h(p)?]))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let brute: Vec<IdentityVerdict> = grid(ShuffleParams::new(
        config.brute_max.m.min(config.relation_max.m),
        config.brute_max.n.min(config.relation_max.n),
    ))
    .into_par_iter()
    .map(|p| {
        let lattice = build_shuffle_lattice(p, config.cap)?;
        let m = m_triangle_of(&lattice)?;
        let ch = char_poly_of(&lattice)?;
        let h = h_triangle_of(degree_statistics(p, config.cap)?.values());
        let mut a = verify_h_to_m_with(p, &m, &h)?;
        let mut b = verify_char_from_h_with(p, &ch, &h)?;
        a.name = "h-to-m-relation-brute".into();
        b.name = "char-from-h-relation-brute".into();
        Ok(vec![a, b])
    })
    .collect::<Result<Vec<_>>>()?
    .into_iter()
    .flatten()
    .collect();
    let mut verdicts = formula;
    verdicts.extend(brute);
    Ok(VerificationReport::new(verdicts, Vec::new()))
}

struct BruteData {
    params: ShuffleParams,
    m: BivarPoly,
    ch: BivarPoly,
    h: BivarPoly,
    lattice: Poset<ShuffleWord>,
}

/// Cross-method agreement, specializations, and structural properties.
pub fn methods_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let brute: Vec<BruteData> = grid(config.brute_max)
        .into_par_iter()
        .map(|params| {
            let lattice = build_shuffle_lattice(params, config.cap)?;
            Ok(BruteData {
                params,
                m: m_triangle_of(&lattice)?,
                ch: char_poly_of(&lattice)?,
                h: h_triangle_of(degree_statistics(params, config.cap)?.values()),
                lattice,
            })
        })
        .collect::<Result<_>>()?;

    let mut verdicts = Vec::new();
    for d in &brute {
        let p = d.params;
        let key = mn(p);
        let formula = m_triangle_formula(p);
        verdicts.push(IdentityVerdict::compare("m-brute-vs-formula", &key, &d.m, &formula));
        verdicts.push(IdentityVerdict::compare(
            "m-interval-vs-brute",
            &key,
            &m_triangle_interval(p, config.cap)?,
            &d.m,
        ));
        verdicts.push(IdentityVerdict::compare("m-compsum-vs-brute", &key, &m_triangle_composition_sum(p), &d.m));
        verdicts.push(IdentityVerdict::compare("ch-brute-vs-formula", &key, &d.ch, &char_poly_formula(p)));
        verdicts.push(IdentityVerdict::compare("h-brute-vs-formula", &key, &d.h, &h_triangle_formula(p)));
        verdicts.push(IdentityVerdict::compare(
            "h-at-t-one-vs-rank-generating",
            &key,
            &d.h.at_t(&BigInt::from(1)),
            &rank_generating(p, config.cap)?,
        ));
        let size = BivarPoly::constant(d.lattice.len() as i64);
        verdicts.push(IdentityVerdict::compare(
            "h-at-one-one-vs-size",
            &key,
            &d.h.at_t(&BigInt::from(1)).at_q(&BigInt::from(1)),
            &size,
        ));
        verdicts.extend(specializations(p, &d.m, &d.ch));
        let swapped = brute.iter().find(|e| e.params == p.swapped()).expect("grid is symmetric");
        if config.brute_max.m == config.brute_max.n {
            verdicts.push(IdentityVerdict::compare("m-symmetry", &key, &d.m, &swapped.m));
            verdicts.push(IdentityVerdict::compare("ch-symmetry", &key, &d.ch, &swapped.ch));
            verdicts.push(IdentityVerdict::compare("h-symmetry", &key, &d.h, &swapped.h));
        }
        verdicts.extend(structure(d)?);
    }

    for d in brute.iter().filter(|d| d.params.m <= config.interval_max.m && d.params.n <= config.interval_max.n) {
        verdicts.push(interval_char_polys(d)?);
    }
    verdicts.extend(sampled_decompositions(&brute, config)?);

    let series = m_series(config.series_max.m, config.series_max.n);
    for p in grid(config.series_max) {
        let formula = m_triangle_formula(p);
        verdicts.push(IdentityVerdict::compare("m-series-vs-formula", &mn(p), &series.get(p.m, p.n), &formula));
        if p.m > config.brute_max.m || p.n > config.brute_max.n {
            verdicts.extend(specializations(p, &formula, &char_poly_formula(p)));
        }
    }
    let reciprocal_ok = crate::triangles::Denominator::MinusQMinusOne
        .series()
        .with_bounds(config.series_max.m, config.series_max.n)
        .mul(&series)
        .is_one();
    verdicts.push(IdentityVerdict::check(
        "series-times-denominator-is-one",
        &mn(config.series_max),
        reciprocal_ok,
        || "D * (1/D) differs from 1 inside the truncation".into(),
    ));

    let brute_pairs: Vec<(ShuffleParams, BivarPoly)> = brute.iter().map(|d| (d.params, d.m.clone())).collect();
    let adjudication = adjudicate_against(&brute_pairs);
    let mut notes = vec![format!(
        "generating-function denominator, checked against brute force up to {}: {}",
        adjudication.checked_up_to,
        adjudication.summary()
    )];
    notes.push(literal_interval_factor_note(&brute, config));
    Ok(VerificationReport::new(verdicts, notes))
}

fn specializations(p: ShuffleParams, m: &BivarPoly, ch: &BivarPoly) -> Vec<IdentityVerdict> {
    let key = mn(p);
    let one = BigInt::from(1);
    let mut out = vec![
        IdentityVerdict::compare("m-at-q-one", &key, &m.at_q(&one), &BivarPoly::one()),
        IdentityVerdict::compare("m-at-t-one", &key, &m.at_t(&one), &BivarPoly::monomial(1, p.total() as u32, 0)),
    ];
    if p.total() >= 1 {
        out.push(IdentityVerdict::compare("ch-at-one", &key, &ch.at_q(&one), &BivarPoly::zero()));
    }
    if p.n == 0 {
        let base = BivarPoly::from_terms([(1, 1, 1), (0, 1, -1), (0, 0, 1)]);
        out.push(IdentityVerdict::compare("m-column-zero", &key, m, &base.pow(p.m as u32)));
    }
    out
}

/// Möbius row sums, indel covers, and the Boolean shape of one-alphabet
/// lattices.
fn structure(d: &BruteData) -> Result<Vec<IdentityVerdict>> {
    let p = d.params;
    let key = mn(p);
    let lattice = &d.lattice;
    let mut row_sums_vanish = true;
    for a in 0..lattice.len() {
        let row = lattice.mobius(a)?;
        for b in lattice.up_set(a).filter(|&b| b != a) {
            let sum: i64 = lattice.up_set(a).filter(|&r| lattice.leq(r, b)).map(|r| row.get(r)).sum();
            row_sums_vanish &= sum == 0;
        }
    }
    let covers_raise_rank =
        lattice.labels().iter().all(|u| indel_successors(u, p).iter().all(|s| rank(s, p) == rank(u, p) + 1))
            && (0..lattice.len()).all(|i| lattice.rank_of(i) == rank(lattice.label(i), p));
    let mut out = vec![
        IdentityVerdict::check("mobius-row-sums-vanish", &key, row_sums_vanish, || {
            "some interval has nonzero Möbius sum".into()
        }),
        IdentityVerdict::check("indel-covers-raise-rank", &key, covers_raise_rank, || {
            "an indel cover does not raise rank by one".into()
        }),
    ];
    if p.m == 0 || p.n == 0 {
        out.push(IdentityVerdict::check("boolean-lattice-isomorphism", &key, boolean_isomorphism(lattice, p), || {
            "explicit map to the Boolean lattice is not an order isomorphism".into()
        }));
    }
    Ok(out)
}

/// `Shuf(m, 0)` (resp. `Shuf(0, n)`) against a product of 2-chains: bit `i`
/// records that `x_i` was deleted (resp. `y_i` inserted).
pub fn boolean_isomorphism(lattice: &Poset<ShuffleWord>, p: ShuffleParams) -> bool {
    let size = p.total();
    let two_chain = build_poset(vec![false, true], &[(0, 1)]).expect("2-chain");
    let cube = product_all(&vec![two_chain; size]);
    let map: Option<Vec<usize>> = lattice
        .labels()
        .iter()
        .map(|w| {
            let bits: Vec<bool> = (1..=size)
                .map(|i| {
                    if p.n == 0 {
                        !w.contains(crate::words::Letter::x(i))
                    } else {
                        w.contains(crate::words::Letter::y(i))
                    }
                })
                .collect();
            cube.index_of(&bits)
        })
        .collect();
    let mu_ok = match (lattice.bottom(), lattice.top()) {
        (Some(b), Some(t)) => lattice.mobius_value(b, t).ok() == Some(if size.is_multiple_of(2) { 1 } else { -1 }),
        _ => false,
    };
    mu_ok && map.is_some_and(|map| check_order_isomorphism(lattice, &cube, &map))
}

/// Brute `ch~` of every upper interval against the product of closed-form
/// factors from its interval shape.
fn interval_char_polys(d: &BruteData) -> Result<IdentityVerdict> {
    let lattice = &d.lattice;
    let top = lattice.top().expect("shuffle lattices have a top");
    for u in 0..lattice.len() {
        let brute = char_poly_of(&lattice.interval(u, top)?)?;
        let product = interval_char_poly(lattice.label(u), d.params);
        if brute != product {
            let mut v = IdentityVerdict::compare("interval-ch-vs-factor-product", &mn(d.params), &brute, &product);
            v.name = format!("interval-ch-vs-factor-product[{}]", lattice.label(u));
            return Ok(v);
        }
    }
    Ok(IdentityVerdict::pass("interval-ch-vs-factor-product", &mn(d.params)))
}

fn sampled_decompositions(brute: &[BruteData], config: &SuiteConfig) -> Result<Vec<IdentityVerdict>> {
    let mut rng = StdRng::seed_from_u64(config.seed);
    let candidates: Vec<(usize, usize)> =
        brute.iter().enumerate().flat_map(|(i, d)| (0..d.lattice.len()).map(move |u| (i, u))).collect();
    let picks: Vec<(usize, usize)> =
        candidates.choose_multiple(&mut rng, config.decomposition_samples).copied().collect();
    picks
        .into_par_iter()
        .map(|(i, u)| {
            let d = &brute[i];
            let word = d.lattice.label(u);
            let ok = check_interval_decomposition(&d.lattice, d.params, word, config.cap)?;
            let mut v = IdentityVerdict::check("interval-decomposition-isomorphism", &mn(d.params), ok, || {
                format!("index-shift map fails for u = {word}")
            });
            v.name = format!("interval-decomposition-isomorphism[{word}]");
            Ok(v)
        })
        .collect()
}

/// Whether the interval factor written with `(1-q)^a` (rather than
/// `(1-q)^(eta+lambda-a)`) would reproduce the brute-force interval
/// polynomials.
fn literal_interval_factor_note(brute: &[BruteData], config: &SuiteConfig) -> String {
    let literal = |eta: usize, lambda: usize| -> BivarPoly {
        let minus_q = -&BivarPoly::q();
        let one_minus_q = &BivarPoly::one() - &BivarPoly::q();
        (0..=eta.min(lambda))
            .map(|a| {
                let c = BigInt::from(crate::words::binomial(eta, a) * crate::words::binomial(lambda, a));
                BivarPoly::constant(c) * minus_q.pow(a as u32) * one_minus_q.pow(a as u32)
            })
            .sum()
    };
    let mut literal_ok = true;
    for d in brute.iter().filter(|d| d.params.m <= config.interval_max.m && d.params.n <= config.interval_max.n) {
        let top = d.lattice.top().expect("top");
        for u in 0..d.lattice.len() {
            let shape = crate::words::interval_shape(d.lattice.label(u), d.params);
            let product: BivarPoly = shape.eta.iter().zip(&shape.lambda).map(|(&e, &l)| literal(e, l)).product();
            let brute_ch = d.lattice.interval(u, top).and_then(|i| char_poly_of(&i));
            literal_ok &= brute_ch.is_ok_and(|b| b == product);
        }
    }
    format!(
        "interval factor with exponent (1-q)^a {} the brute-force interval polynomials; the exponent (1-q)^(eta+lambda-a) is used",
        if literal_ok { "reproduces" } else { "does not reproduce" }
    )
}
