//! Acceptance criteria, each checked with exact polynomial or integer
//! equality. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any fails.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use shuffle_lattice::identities::{
    inner_sum_lhs, inner_sum_rhs, r_sum_lhs, r_sum_rhs, vandermonde_step, verify_char_from_h, verify_h_to_m,
};
use shuffle_lattice::lattices::{build_shuffle_lattice, check_interval_decomposition, indel_successors};
use shuffle_lattice::poset::{build_poset, check_order_isomorphism, product_all, Poset};
use shuffle_lattice::triangles::{
    adjudicate_denominators, char_poly_brute, char_poly_formula, char_poly_of, h_triangle_brute, h_triangle_formula,
    m_series, m_triangle_brute, m_triangle_formula, m_triangle_interval, Denominator, BRUTE_SIZE_CAP,
};
use shuffle_lattice::words::{interval_shape, rank, Letter};
use shuffle_lattice::{BivarPoly, Result, ShuffleParams, ShuffleWord};

fn grid(max_m: usize, max_n: usize) -> impl Iterator<Item = ShuffleParams> {
    (0..=max_m).flat_map(move |m| (0..=max_n).map(move |n| ShuffleParams::new(m, n)))
}

fn lattice(p: ShuffleParams) -> Poset<ShuffleWord> {
    build_shuffle_lattice(p, BRUTE_SIZE_CAP).expect("lattice within cap")
}

/// Collects the first mismatch of a criterion, if any.
struct Check {
    failure: Option<String>,
}

impl Check {
    fn new() -> Self {
        Check { failure: None }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn equal(&mut self, lhs: &BivarPoly, rhs: &BivarPoly, what: impl FnOnce() -> String) {
        self.expect(lhs == rhs, || format!("{}: {lhs} != {rhs}", what()));
    }
}

fn criterion_1() -> Result<Check> {
    let mut c = Check::new();
    for p in grid(4, 4) {
        c.equal(&m_triangle_brute(p, BRUTE_SIZE_CAP)?, &m_triangle_formula(p), || format!("M{p}"));
    }
    Ok(c)
}

fn criterion_2() -> Result<Check> {
    let mut c = Check::new();
    let series = m_series(8, 8);
    for p in grid(8, 8) {
        c.equal(&series.get(p.m, p.n), &m_triangle_formula(p), || format!("series coefficient {p}"));
    }
    let adjudication = adjudicate_denominators(4, 4, BRUTE_SIZE_CAP)?;
    println!("  denominator adjudication: {}", adjudication.summary());
    c.expect(adjudication.matching() == vec![Denominator::MinusQMinusOne], || "unexpected adjudication".into());
    Ok(c)
}

fn criterion_3() -> Result<Check> {
    let mut c = Check::new();
    for p in grid(4, 4) {
        c.equal(&m_triangle_interval(p, BRUTE_SIZE_CAP)?, &m_triangle_brute(p, BRUTE_SIZE_CAP)?, || format!("M{p}"));
    }
    Ok(c)
}

fn criterion_4() -> Result<Check> {
    let mut c = Check::new();
    for p in grid(4, 4) {
        c.equal(&char_poly_brute(p, BRUTE_SIZE_CAP)?, &char_poly_formula(p), || format!("ch~{p}"));
    }
    for p in grid(3, 3) {
        let l = lattice(p);
        let top = l.top().expect("top");
        for u in 0..l.len() {
            let brute = char_poly_of(&l.interval(u, top)?)?;
            let product: BivarPoly = interval_shape(l.label(u), p).factors().map(char_poly_formula).product();
            c.equal(&brute, &product, || format!("ch~[{}, top] in {p}", l.label(u)));
        }
    }
    Ok(c)
}

fn criterion_5() -> Result<Check> {
    let mut c = Check::new();
    let one = BigInt::from(1);
    for p in grid(4, 4) {
        let h = h_triangle_brute(p, BRUTE_SIZE_CAP)?;
        c.equal(&h, &h_triangle_formula(p), || format!("H{p}"));
        let l = lattice(p);
        let rank_generating: BivarPoly = l.labels().iter().map(|w| BivarPoly::monomial(1, rank(w, p) as u32, 0)).sum();
        c.equal(&h.at_t(&one), &rank_generating, || format!("H{p}(q, 1)"));
        c.equal(&h.at_q(&one).at_t(&one), &BivarPoly::constant(l.len() as i64), || format!("H{p}(1, 1)"));
    }
    Ok(c)
}

fn criterion_6() -> Result<Check> {
    let mut c = Check::new();
    for p in grid(6, 6) {
        for verdict in [verify_h_to_m(p)?, verify_char_from_h(p)?] {
            c.expect(verdict.passed, || format!("{} {p}", verdict.name));
        }
    }
    Ok(c)
}

fn criterion_7() -> Result<Check> {
    let mut c = Check::new();
    for p in grid(6, 6) {
        for k in 0..=4 {
            c.equal(&inner_sum_lhs(p.m, p.n, k), &inner_sum_rhs(p.m, p.n, k), || format!("inner sum {p} k={k}"));
            for l in 0..=p.m {
                c.expect(r_sum_lhs(p.m, p.n, k, l) == r_sum_rhs(p.m, p.n, k, l), || format!("r-sum {p} k={k} l={l}"));
            }
        }
    }
    for eta in 0..=8 {
        for lambda in 0..=8 {
            let step = vandermonde_step(eta, lambda);
            c.equal(&step.expanded, &step.collapsed, || format!("vandermonde ({eta}, {lambda})"));
        }
    }
    Ok(c)
}

fn criterion_8() -> Result<Check> {
    let mut c = Check::new();
    let one = BigInt::from(1);
    let a = BivarPoly::from_terms([(1, 1, 1), (0, 1, -1), (0, 0, 1)]);
    for p in grid(4, 4) {
        let m = m_triangle_brute(p, BRUTE_SIZE_CAP)?;
        c.equal(&m.at_q(&one), &BivarPoly::one(), || format!("M{p}(1, t)"));
        c.equal(&m.at_t(&one), &BivarPoly::monomial(1, p.total() as u32, 0), || format!("M{p}(q, 1)"));
        if p.total() >= 1 {
            c.equal(&char_poly_brute(p, BRUTE_SIZE_CAP)?.at_q(&one), &BivarPoly::zero(), || format!("ch~{p}(1)"));
        }
        if p.n == 0 {
            c.equal(&m, &a.pow(p.m as u32), || format!("M{p}"));
        }
    }
    Ok(c)
}

fn boolean_map(l: &Poset<ShuffleWord>, m: usize, cube: &Poset<Vec<bool>>) -> Option<Vec<usize>> {
    l.labels().iter().map(|w| cube.index_of(&(1..=m).map(|i| !w.contains(Letter::x(i))).collect())).collect()
}

fn criterion_9() -> Result<Check> {
    let mut c = Check::new();
    let mut samples = Vec::new();
    for p in grid(4, 4) {
        let l = lattice(p);
        for a in 0..l.len() {
            let row = l.mobius(a)?;
            for b in l.up_set(a).filter(|&b| b != a) {
                let forward: i64 = l.up_set(a).filter(|&r| l.leq(r, b)).map(|r| row.get(r)).sum();
                let backward: i64 = l.up_set(a).filter(|&r| l.leq(r, b)).map(|r| l.mobius_value(r, b).unwrap()).sum();
                c.expect(forward == 0 && backward == 0, || format!("Möbius sums on [{}, {}]", l.label(a), l.label(b)));
            }
        }
        for (lower, upper) in l.covers() {
            c.expect(l.rank_of(*upper) == l.rank_of(*lower) + 1, || format!("cover rank in {p}"));
        }
        for w in l.labels() {
            for s in indel_successors(w, p) {
                c.expect(rank(&s, p) == rank(w, p) + 1, || format!("{w} -> {s} in {p}"));
            }
        }
        samples.extend(l.labels().iter().cloned().map(|w| (p, w)));
    }

    let two_chain = build_poset(vec![false, true], &[(0, 1)])?;
    for m in 0..=4 {
        let l = lattice(ShuffleParams::new(m, 0));
        let cube = product_all(&vec![two_chain.clone(); m]);
        let iso = boolean_map(&l, m, &cube).is_some_and(|map| check_order_isomorphism(&l, &cube, &map));
        c.expect(iso, || format!("Shuf({m}, 0) vs B_{m}"));
    }

    let mut rng = StdRng::seed_from_u64(20261015);
    for (p, u) in samples.choose_multiple(&mut rng, 50) {
        let l = lattice(*p);
        c.expect(check_interval_decomposition(&l, *p, u, BRUTE_SIZE_CAP)?, || format!("index shift at {u} in {p}"));
    }
    Ok(c)
}

type Criterion = (&'static str, fn() -> Result<Check>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 M brute = closed form, m,n <= 4", criterion_1),
        ("2 generating series = closed form, m,n <= 8", criterion_2),
        ("3 interval method = brute, m,n <= 4", criterion_3),
        ("4 ch~ brute = closed form and interval factorization", criterion_4),
        ("5 H brute = closed form, rank generating, cardinality", criterion_5),
        ("6 H -> M and H -> ch~ relations, m,n <= 6", criterion_6),
        ("7 composition identity, Vandermonde step, r-sum", criterion_7),
        ("8 specializations", criterion_8),
        ("9 structural properties", criterion_9),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(Check { failure: None }) => println!("PASS {name}"),
            Ok(Check { failure: Some(why) }) => {
                failures += 1;
                println!("FAIL {name}: {why}");
            }
            Err(e) => {
                failures += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
