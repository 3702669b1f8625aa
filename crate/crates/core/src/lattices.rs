//! The shuffle lattice `Shuf(m, n)` and the cover relation of the bubble
//! lattice `Bub(m, n)` on the same set of words.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{build_poset, check_order_isomorphism, hasse_dot, product_all, Poset};
use crate::words::{enumerate_shuffle_words, interval_shape, rank, Letter, ShuffleParams, ShuffleWord};

/// Words reachable from `u` by one indel: delete an X-letter, or insert a
/// missing Y-letter anywhere it keeps the Y-indices increasing.
pub fn indel_successors(u: &ShuffleWord, params: ShuffleParams) -> Vec<ShuffleWord> {
    let letters = u.letters();
    let mut out: Vec<ShuffleWord> =
        letters.iter().enumerate().filter(|(_, l)| l.is_x()).map(|(i, _)| u.without(i)).collect();
    for j in (1..=params.n).filter(|&j| !u.contains(Letter::y(j))) {
        let first = letters.iter().rposition(|l| l.is_y() && l.index < j).map_or(0, |p| p + 1);
        let last = letters.iter().position(|l| l.is_y() && l.index > j).unwrap_or(letters.len());
        out.extend((first..=last).map(|pos| u.with_inserted(pos, Letter::y(j))));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `Shuf(m, n)` with covers given by single indels.
pub fn build_shuffle_lattice(params: ShuffleParams, cap: u64) -> Result<Poset<ShuffleWord>> {
    let words = enumerate_shuffle_words(params, cap)?;
    let index: BTreeMap<&ShuffleWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let covers: Vec<(usize, usize)> = words
        .iter()
        .enumerate()
        .flat_map(|(i, w)| indel_successors(w, params).into_iter().map(move |s| (i, s)))
        .map(|(i, s)| (i, index[&s]))
        .collect();
    build_poset(words, &covers)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BubbleKind {
    RightIndel,
    Transposition,
}

impl BubbleKind {
    pub fn dot_name(self) -> &'static str {
        match self {
            BubbleKind::RightIndel => "indel",
            BubbleKind::Transposition => "transpose",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BubbleCover {
    pub lower: ShuffleWord,
    pub upper: ShuffleWord,
    pub kind: BubbleKind,
}

/// Covers `u` contributes as the longer word of a right indel, or as the
/// source of a forward transposition. Position `i` of `u`:
///
/// * X-letter followed by an X-letter or last: `u` is covered by `u` minus it;
/// * Y-letter followed by a Y-letter or last: `u` minus it is covered by `u`;
/// * X-letter followed by a Y-letter: `u` is covered by the swapped word.
fn covers_at(u: &ShuffleWord) -> impl Iterator<Item = BubbleCover> + '_ {
    let letters = u.letters();
    (0..letters.len()).filter_map(move |i| {
        let next = letters.get(i + 1);
        let here = letters[i];
        match (here.is_x(), next.map(|l| l.is_x())) {
            (true, None | Some(true)) => {
                Some(BubbleCover { lower: u.clone(), upper: u.without(i), kind: BubbleKind::RightIndel })
            }
            (false, None | Some(false)) => {
                Some(BubbleCover { lower: u.without(i), upper: u.clone(), kind: BubbleKind::RightIndel })
            }
            (true, Some(false)) => {
                Some(BubbleCover { lower: u.clone(), upper: u.with_swap(i), kind: BubbleKind::Transposition })
            }
            (false, Some(true)) => None,
        }
    })
}

/// Every cover pair of `Bub(m, n)`, sorted.
pub fn bubble_covers(params: ShuffleParams, cap: u64) -> Result<Vec<BubbleCover>> {
    let words = enumerate_shuffle_words(params, cap)?;
    let mut covers: Vec<BubbleCover> = words.iter().flat_map(covers_at).collect();
    covers.sort_unstable();
    covers.dedup();
    Ok(covers)
}

/// Lower-cover counts of a word in `Bub(m, n)`, split by cover kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeTriple {
    pub in_total: usize,
    pub in_indel: usize,
    pub in_transpose: usize,
}

pub fn degree_statistics(params: ShuffleParams, cap: u64) -> Result<BTreeMap<ShuffleWord, DegreeTriple>> {
    let mut stats: BTreeMap<ShuffleWord, DegreeTriple> =
        enumerate_shuffle_words(params, cap)?.into_iter().map(|w| (w, DegreeTriple::default())).collect();
    for cover in bubble_covers(params, cap)? {
        let entry = stats.get_mut(&cover.upper).expect("cover endpoints are shuffle words");
        entry.in_total += 1;
        match cover.kind {
            BubbleKind::RightIndel => entry.in_indel += 1,
            BubbleKind::Transposition => entry.in_transpose += 1,
        }
    }
    Ok(stats)
}

/// DOT for the Hasse diagram of `Shuf(m, n)` or the cover graph of
/// `Bub(m, n)`.
pub fn hasse_diagram(params: ShuffleParams, bubble: bool, cap: u64) -> Result<String> {
    if !bubble {
        return Ok(build_shuffle_lattice(params, cap)?.to_dot(&format!("Shuf({},{})", params.m, params.n)));
    }
    let words = enumerate_shuffle_words(params, cap)?;
    let index: BTreeMap<&ShuffleWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let ranks: Vec<usize> = words.iter().map(|w| rank(w, params)).collect();
    let edges: Vec<(usize, usize, Option<&str>)> = bubble_covers(params, cap)?
        .iter()
        .map(|c| (index[&c.lower], index[&c.upper], Some(c.kind.dot_name())))
        .collect();
    Ok(hasse_dot(&format!("Bub({},{})", params.m, params.n), &words, &ranks, &edges))
}

/// Image of `v` in `[u, y1..yn]` under the factorization
/// `[u, y] = Shuf(eta_1, lambda_1) x .. x Shuf(eta_{k+1}, lambda_{k+1})`.
///
/// `v` is cut at the Y-letters of `u`. In block `j`, an X-letter is renamed
/// by its position within `u_x` minus the X-letters of `u` in earlier
/// blocks, and `y_b` becomes `y_{b - i_{j-1}}`. Returns `None` when `v` is
/// not above `u`.
pub fn interval_factor_map(u: &ShuffleWord, params: ShuffleParams, v: &ShuffleWord) -> Option<Vec<ShuffleWord>> {
    let shape = interval_shape(u, params);
    let u_x: Vec<Letter> = u.letters().iter().copied().filter(|l| l.is_x()).collect();
    let chosen: Vec<usize> = u.letters().iter().filter(|l| l.is_y()).map(|l| l.index).collect();

    let mut blocks = vec![Vec::new(); shape.k + 1];
    let mut block = 0;
    let mut x_offset = 0;
    let mut y_offset = 0;
    for &letter in v.letters() {
        if letter.is_y() && chosen.get(block) == Some(&letter.index) {
            x_offset += shape.eta[block];
            y_offset = letter.index;
            block += 1;
            continue;
        }
        let renamed = if letter.is_x() {
            let position = u_x.iter().position(|&l| l == letter)? + 1;
            if position <= x_offset || position > x_offset + shape.eta[block] {
                return None;
            }
            Letter::x(position - x_offset)
        } else {
            let bound = chosen.get(block).copied().unwrap_or(params.n + 1);
            if letter.index <= y_offset || letter.index >= bound {
                return None;
            }
            Letter::y(letter.index - y_offset)
        };
        blocks[block].push(renamed);
    }
    if block != shape.k {
        return None;
    }
    Some(blocks.into_iter().map(ShuffleWord::from_letters_unchecked).collect())
}

/// Builds `[u, top]` inside `lattice`, the product of the factor lattices,
/// and checks the index-shift map between them is an order isomorphism.
pub fn check_interval_decomposition(
    lattice: &Poset<ShuffleWord>,
    params: ShuffleParams,
    u: &ShuffleWord,
    cap: u64,
) -> Result<bool> {
    let lower = lattice
        .index_of(u)
        .ok_or_else(|| Error::Parse { input: u.to_string(), reason: "not in the lattice".into() })?;
    let top = lattice.top().ok_or(Error::NoBottom)?;
    let interval = lattice.interval(lower, top)?;
    let factors =
        interval_shape(u, params).factors().map(|p| build_shuffle_lattice(p, cap)).collect::<Result<Vec<_>>>()?;
    let product = product_all(&factors);
    let map: Option<Vec<usize>> = interval
        .labels()
        .iter()
        .map(|v| interval_factor_map(u, params, v).and_then(|tuple| product.index_of(&tuple)))
        .collect();
    Ok(map.is_some_and(|map| check_order_isomorphism(&interval, &product, &map)))
}
