//! Finite graded posets given by their cover relation.
//!
//! The order is stored as dense bit rows (`up[a]` holds every `b >= a`,
//! `down[b]` every `a <= b`), so comparability is O(1) and Möbius rows can
//! intersect up-sets with down-sets a machine word at a time.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Display, Write as _};
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.0.iter().copied())
    }

    fn and_ones<'a>(&'a self, other: &'a BitRow) -> impl Iterator<Item = usize> + 'a {
        iter_bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b))
    }
}

fn iter_bits(words: impl Iterator<Item = u64>) -> impl Iterator<Item = usize> {
    words.enumerate().flat_map(|(block, mut word)| {
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let bit = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(block * 64 + bit)
        })
    })
}

/// Row of the Möbius function `mu(source, .)`, restricted to the up-set of
/// `source` (it vanishes elsewhere).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    pub source: usize,
    pub values: BTreeMap<usize, i64>,
}

impl MobiusTable {
    pub fn get(&self, target: usize) -> i64 {
        self.values.get(&target).copied().unwrap_or(0)
    }
}

/// A finite graded poset on labelled elements.
#[derive(Clone, Debug)]
pub struct Poset<L> {
    labels: Vec<L>,
    lookup: HashMap<L, usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<BitRow>,
    down: Vec<BitRow>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    bottom: Option<usize>,
    top: Option<usize>,
    mobius_memo: Vec<OnceLock<Arc<MobiusTable>>>,
}

/// Builds a poset from labels and cover pairs `(lower, upper)`.
///
/// Ranks are longest-path distances from the minimal elements; every cover
/// must then raise the rank by exactly one.
pub fn build_poset<L: Clone + Eq + Hash>(labels: Vec<L>, covers: &[(usize, usize)]) -> Result<Poset<L>> {
    let len = labels.len();
    let mut lookup = HashMap::with_capacity(len);
    for (index, label) in labels.iter().enumerate() {
        if lookup.insert(label.clone(), index).is_some() {
            return Err(Error::DuplicateLabel { index });
        }
    }

    let mut covers: Vec<(usize, usize)> = covers.to_vec();
    covers.sort_unstable();
    covers.dedup();
    let mut upper = vec![Vec::new(); len];
    let mut lower = vec![Vec::new(); len];
    for &(a, b) in &covers {
        for index in [a, b] {
            if index >= len {
                return Err(Error::InvalidIndex { index, len });
            }
        }
        upper[a].push(b);
        lower[b].push(a);
    }

    // Kahn's algorithm; leftovers mean a cycle.
    let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..len).filter(|&i| indegree[i] == 0).collect();
    let mut topo = Vec::with_capacity(len);
    while let Some(a) = queue.pop_front() {
        topo.push(a);
        for &b in &upper[a] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                queue.push_back(b);
            }
        }
    }
    if topo.len() != len {
        return Err(Error::CycleDetected);
    }

    let mut rank = vec![0usize; len];
    for &b in &topo {
        rank[b] = lower[b].iter().map(|&a| rank[a] + 1).max().unwrap_or(0);
    }
    if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| rank[b] != rank[a] + 1) {
        return Err(Error::NotGraded { lower: a, upper: b });
    }

    let mut up: Vec<BitRow> = (0..len).map(|_| BitRow::new(len)).collect();
    for &a in topo.iter().rev() {
        let mut row = BitRow::new(len);
        row.insert(a);
        for &b in &upper[a] {
            row.union_with(&up[b]);
        }
        up[a] = row;
    }
    let mut down: Vec<BitRow> = (0..len).map(|_| BitRow::new(len)).collect();
    for &b in &topo {
        let mut row = BitRow::new(len);
        row.insert(b);
        for &a in &lower[b] {
            row.union_with(&down[a]);
        }
        down[b] = row;
    }

    let minimal: Vec<usize> = (0..len).filter(|&i| lower[i].is_empty()).collect();
    let maximal: Vec<usize> = (0..len).filter(|&i| upper[i].is_empty()).collect();
    let bottom = (minimal.len() == 1).then(|| minimal[0]);
    let top = (maximal.len() == 1).then(|| maximal[0]);

    let mut by_rank: Vec<usize> = (0..len).collect();
    by_rank.sort_by_key(|&i| (rank[i], i));

    Ok(Poset {
        labels,
        lookup,
        covers,
        upper,
        lower,
        up,
        down,
        rank,
        by_rank,
        bottom,
        top,
        mobius_memo: (0..len).map(|_| OnceLock::new()).collect(),
    })
}

impl<L: Clone + Eq + Hash> Poset<L> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &L {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    /// Sorted, deduplicated cover pairs `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, index: usize) -> &[usize] {
        &self.upper[index]
    }

    pub fn lower_covers(&self, index: usize) -> &[usize] {
        &self.lower[index]
    }

    pub fn rank_of(&self, index: usize) -> usize {
        self.rank[index]
    }

    /// Length of the longest chain.
    pub fn height(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Elements `b >= a`, in index order.
    pub fn up_set(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[a].ones()
    }

    /// Number of comparable pairs `a <= b`, including `a = a`.
    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(BitRow::count).sum()
    }

    /// Möbius row from `source`, computed on first use and memoized.
    pub fn mobius(&self, source: usize) -> Result<Arc<MobiusTable>> {
        if let Some(table) = self.mobius_memo[source].get() {
            return Ok(Arc::clone(table));
        }
        let table = Arc::new(self.compute_mobius(source)?);
        Ok(Arc::clone(self.mobius_memo[source].get_or_init(|| table)))
    }

    pub fn mobius_value(&self, a: usize, b: usize) -> Result<i64> {
        Ok(self.mobius(a)?.get(b))
    }

    fn compute_mobius(&self, source: usize) -> Result<MobiusTable> {
        let mut mu = vec![0i64; self.len()];
        let mut values = BTreeMap::new();
        let up = &self.up[source];
        for &v in self.by_rank.iter().filter(|&&v| up.contains(v)) {
            let value = if v == source {
                1
            } else {
                let mut sum = 0i64;
                for r in up.and_ones(&self.down[v]).filter(|&r| r != v) {
                    sum = sum.checked_add(mu[r]).ok_or(Error::MobiusOverflow { element: v })?;
                }
                sum.checked_neg().ok_or(Error::MobiusOverflow { element: v })?
            };
            mu[v] = value;
            values.insert(v, value);
        }
        Ok(MobiusTable { source, values })
    }

    /// Closed interval `[a, b]` as a standalone poset; ranks restart at 0.
    pub fn interval(&self, a: usize, b: usize) -> Result<Poset<L>> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable { lower: a, upper: b });
        }
        let members: Vec<usize> = self.up[a].and_ones(&self.down[b]).collect();
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let covers: Vec<(usize, usize)> = members
            .iter()
            .flat_map(|&e| {
                let local = &local;
                self.upper[e].iter().filter_map(move |c| local.get(c).map(|&j| (local[&e], j)))
            })
            .collect();
        let labels = members.iter().map(|&e| self.labels[e].clone()).collect();
        build_poset(labels, &covers)
    }

    /// Hasse diagram in DOT syntax. Nodes carry `rank=<r>`; covers point
    /// upward.
    pub fn to_dot(&self, name: &str) -> String
    where
        L: Display,
    {
        let edges: Vec<(usize, usize, Option<&str>)> = self.covers.iter().map(|&(a, b)| (a, b, None)).collect();
        hasse_dot(name, &self.labels, &self.rank, &edges)
    }
}

/// Direct product `p x q` with the componentwise order.
pub fn direct_product<L, M>(p: &Poset<L>, q: &Poset<M>) -> Poset<(L, M)>
where
    L: Clone + Eq + Hash,
    M: Clone + Eq + Hash,
{
    let width = q.len();
    let labels = p.labels.iter().flat_map(|a| q.labels.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let mut covers = Vec::with_capacity(p.covers.len() * q.len() + q.covers.len() * p.len());
    for &(a, b) in &p.covers {
        covers.extend((0..width).map(|j| (a * width + j, b * width + j)));
    }
    for i in 0..p.len() {
        covers.extend(q.covers.iter().map(|&(a, b)| (i * width + a, i * width + b)));
    }
    build_poset(labels, &covers).expect("product of graded posets is graded")
}

/// Product of any number of factors, labelled by tuples of factor labels.
/// The empty product is the one-element poset.
pub fn product_all<L: Clone + Eq + Hash>(factors: &[Poset<L>]) -> Poset<Vec<L>> {
    let mut acc = build_poset(vec![Vec::new()], &[]).expect("singleton");
    for factor in factors {
        let prod = direct_product(&acc, factor);
        let covers = prod.covers.clone();
        let labels = prod
            .labels
            .into_iter()
            .map(|(mut tuple, last)| {
                tuple.push(last);
                tuple
            })
            .collect();
        acc = build_poset(labels, &covers).expect("relabelling keeps the order");
    }
    acc
}

/// True iff `map` is a bijection from `p` onto `q` with
/// `a <= b` exactly when `map[a] <= map[b]`.
pub fn check_order_isomorphism<L, M>(p: &Poset<L>, q: &Poset<M>, map: &[usize]) -> bool
where
    L: Clone + Eq + Hash,
    M: Clone + Eq + Hash,
{
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut hit = vec![false; q.len()];
    for &image in map {
        if image >= q.len() || std::mem::replace(&mut hit[image], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

/// Writes a Hasse diagram. Each edge may carry a `kind` annotation.
pub fn hasse_dot<L: Display>(
    name: &str,
    labels: &[L],
    ranks: &[usize],
    edges: &[(usize, usize, Option<&str>)],
) -> String {
    let mut out = String::new();
    let quote = |s: &dyn fmt::Display| format!("\"{}\"", s.to_string().replace('"', "\\\""));
    writeln!(out, "digraph {} {{", quote(&name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (label, rank) in labels.iter().zip(ranks) {
        writeln!(out, "  {} [rank={}];", quote(label), rank).unwrap();
    }
    for &(a, b, kind) in edges {
        match kind {
            Some(kind) => writeln!(out, "  {} -> {} [kind={}];", quote(&labels[a]), quote(&labels[b]), kind),
            None => writeln!(out, "  {} -> {};", quote(&labels[a]), quote(&labels[b])),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(len: usize) -> Poset<usize> {
        let covers: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        build_poset((0..len).collect(), &covers).unwrap()
    }

    fn antichain(len: usize) -> Poset<usize> {
        build_poset((0..len).collect(), &[]).unwrap()
    }

    #[test]
    fn builds_chains() {
        let c = chain(2);
        assert_eq!((c.rank_of(0), c.rank_of(1)), (0, 1));
        assert_eq!((c.bottom(), c.top()), (Some(0), Some(1)));

        let s = chain(1);
        assert_eq!(s.len(), 1);
        assert_eq!(s.rank_of(0), 0);
    }

    #[test]
    fn rejects_cycles_and_ungraded_covers() {
        assert_eq!(build_poset(vec![0, 1], &[(0, 1), (1, 0)]).unwrap_err(), Error::CycleDetected);
        assert_eq!(build_poset(vec![0], &[(0, 0)]).unwrap_err(), Error::CycleDetected);
        let err = build_poset(vec![0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(err, Error::NotGraded { lower: 0, upper: 2 });
        assert!(matches!(build_poset(vec![0], &[(0, 3)]), Err(Error::InvalidIndex { .. })));
        assert!(matches!(build_poset(vec![7, 7], &[]), Err(Error::DuplicateLabel { index: 1 })));
    }

    #[test]
    fn comparability() {
        let c = chain(2);
        assert!(c.leq(0, 1));
        assert!(!c.leq(1, 0));
        let a = antichain(2);
        assert!(!a.leq(0, 1));
        assert!(a.leq(1, 1));
        assert_eq!((a.bottom(), a.top()), (None, None));
    }

    #[test]
    fn mobius_small() {
        let c = chain(2);
        assert_eq!(c.mobius_value(0, 1).unwrap(), -1);
        assert_eq!(c.mobius_value(1, 1).unwrap(), 1);
        assert_eq!(c.mobius_value(1, 0).unwrap(), 0);

        let b2 = direct_product(&chain(2), &chain(2));
        let (bot, top) = (b2.bottom().unwrap(), b2.top().unwrap());
        assert_eq!(b2.mobius_value(bot, top).unwrap(), 1);
        let ranks: Vec<_> = (0..4).map(|i| b2.rank_of(i)).collect();
        assert_eq!(ranks, [0, 1, 1, 2]);
    }

    #[test]
    fn mobius_is_memoized() {
        let c = chain(3);
        let first = c.mobius(0).unwrap();
        let second = c.mobius(0).unwrap();
        assert!(Arc::ptr_eq(&first, &second));
        assert_eq!(first.get(2), 0);
    }

    #[test]
    fn intervals() {
        let c = chain(3);
        let whole = c.interval(0, 2).unwrap();
        assert_eq!(whole.len(), 3);
        assert_eq!(whole.height(), 2);
        let point = c.interval(1, 1).unwrap();
        assert_eq!(point.len(), 1);
        assert_eq!(point.rank_of(0), 0);
        assert_eq!(c.interval(2, 0).unwrap_err(), Error::NotComparable { lower: 2, upper: 0 });
    }

    #[test]
    fn products() {
        let single = chain(1);
        let c3 = chain(3);
        let prod = direct_product(&single, &c3);
        let map: Vec<usize> = (0..3).collect();
        assert!(check_order_isomorphism(&c3, &prod, &map));

        let many = product_all(&[chain(2), chain(2), chain(2)]);
        assert_eq!(many.len(), 8);
        assert_eq!(many.height(), 3);
        let bot = many.bottom().unwrap();
        assert_eq!(many.mobius_value(bot, many.top().unwrap()).unwrap(), -1);
        assert_eq!(product_all::<usize>(&[]).len(), 1);
    }

    #[test]
    fn isomorphism_checks() {
        let c = chain(3);
        assert!(check_order_isomorphism(&c, &c, &[0, 1, 2]));
        assert!(!check_order_isomorphism(&c, &c, &[2, 1, 0]));
        assert!(!check_order_isomorphism(&c, &c, &[0, 0, 2]));
        assert!(!check_order_isomorphism(&chain(2), &antichain(2), &[0, 1]));
        assert!(!check_order_isomorphism(&chain(2), &antichain(2), &[1, 0]));
    }

    #[test]
    fn dot_export() {
        let dot = chain(2).to_dot("c2");
        assert!(dot.starts_with("digraph \"c2\" {"));
        assert!(dot.contains("\"0\" [rank=0];"));
        assert!(dot.contains("\"0\" -> \"1\";"));
    }
}
