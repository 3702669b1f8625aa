//! Shuffle words over the alphabets `X = {x1..xm}` and `Y = {y1..yn}`.
//!
//! A shuffle word is simple (no repeated letter) and order-preserving (the
//! X-indices increase left to right, and so do the Y-indices). The set of
//! all shuffle words for parameters `(m, n)` is the ground set of both the
//! shuffle lattice and the bubble lattice.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default refusal threshold for enumerating `Shuf(m, n)`.
pub const DEFAULT_SIZE_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
}

/// A letter `x_i` or `y_j` (1-based index). The derived order puts every
/// X-letter before every Y-letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub family: Family,
    pub index: usize,
}

impl Letter {
    pub const fn x(index: usize) -> Self {
        Letter { family: Family::X, index }
    }

    pub const fn y(index: usize) -> Self {
        Letter { family: Family::Y, index }
    }

    pub fn is_x(self) -> bool {
        self.family == Family::X
    }

    pub fn is_y(self) -> bool {
        self.family == Family::Y
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::X => write!(f, "x{}", self.index),
            Family::Y => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShuffleParams {
    pub m: usize,
    pub n: usize,
}

impl ShuffleParams {
    pub const fn new(m: usize, n: usize) -> Self {
        ShuffleParams { m, n }
    }

    /// Length of a maximal chain, `m + n`.
    pub fn total(self) -> usize {
        self.m + self.n
    }

    pub fn swapped(self) -> Self {
        ShuffleParams { m: self.n, n: self.m }
    }

    /// `x1 x2 .. xm`, the minimum of `Shuf(m, n)`.
    pub fn bottom(self) -> ShuffleWord {
        ShuffleWord((1..=self.m).map(Letter::x).collect())
    }

    /// `y1 y2 .. yn`, the maximum of `Shuf(m, n)`.
    pub fn top(self) -> ShuffleWord {
        ShuffleWord((1..=self.n).map(Letter::y).collect())
    }

    /// `|Shuf(m, n)| = sum_a C(m,a) C(n,a) 2^(m+n-2a)`.
    pub fn cardinality(self) -> BigUint {
        let mut total = BigUint::zero();
        for a in 0..=self.m.min(self.n) {
            total += binomial(self.m, a) * binomial(self.n, a) * (BigUint::one() << (self.m + self.n - 2 * a));
        }
        total
    }

    /// Fails with `SizeLimitExceeded` when `|Shuf(m, n)| > cap`.
    pub fn check_cap(self, cap: u64) -> Result<usize> {
        let predicted = self.cardinality();
        match predicted.to_u64() {
            Some(count) if count <= cap => Ok(count as usize),
            _ => Err(Error::SizeLimitExceeded { predicted: predicted.to_string(), cap }),
        }
    }
}

impl fmt::Display for ShuffleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A validated shuffle word.
///
/// Words compare by length first and then lexicographically letter by
/// letter, which is the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ShuffleWord(Vec<Letter>);

impl ShuffleWord {
    pub fn empty() -> Self {
        ShuffleWord(Vec::new())
    }

    /// Wraps letters without validation. Callers guarantee the invariants.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        ShuffleWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }

    /// `|u_x|`
    pub fn count_x(&self) -> usize {
        self.0.iter().filter(|l| l.is_x()).count()
    }

    /// `|u_y|`
    pub fn count_y(&self) -> usize {
        self.0.iter().filter(|l| l.is_y()).count()
    }

    pub(crate) fn without(&self, position: usize) -> Self {
        let mut letters = self.0.clone();
        letters.remove(position);
        ShuffleWord(letters)
    }

    pub(crate) fn with_inserted(&self, position: usize, letter: Letter) -> Self {
        let mut letters = self.0.clone();
        letters.insert(position, letter);
        ShuffleWord(letters)
    }

    pub(crate) fn with_swap(&self, position: usize) -> Self {
        let mut letters = self.0.clone();
        letters.swap(position, position + 1);
        ShuffleWord(letters)
    }

    /// Parses the text syntax (`y1y2x2`, separators allowed, `e` for the
    /// empty word) and validates against `params`.
    pub fn parse(text: &str, params: ShuffleParams) -> Result<Self> {
        validate(&parse_letters(text)?, params)
    }
}

impl Ord for ShuffleWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ShuffleWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ShuffleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl Serialize for ShuffleWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a raw letter sequence. Only syntax is checked here; use
/// [`validate`] for the shuffle-word invariants.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let parse_err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "e" || trimmed == "ε" {
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    let mut chars = trimmed.chars().peekable();
    while let Some(c) = chars.next() {
        let family = match c {
            'x' | 'X' => Family::X,
            'y' | 'Y' => Family::Y,
            c if !c.is_alphanumeric() => continue,
            _ => return Err(parse_err(&format!("unexpected character {c:?}"))),
        };
        let mut digits = String::new();
        while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
            digits.push(d);
            chars.next();
        }
        if digits.is_empty() {
            return Err(parse_err("letter without index"));
        }
        let index = digits.parse().map_err(|_| parse_err("index too large"))?;
        letters.push(Letter { family, index });
    }
    Ok(letters)
}

/// Checks that `letters` form a shuffle word for `params`.
pub fn validate(letters: &[Letter], params: ShuffleParams) -> Result<ShuffleWord> {
    let mut seen = HashSet::with_capacity(letters.len());
    let mut last_x = 0;
    let mut last_y = 0;
    for (position, &letter) in letters.iter().enumerate() {
        let bound = match letter.family {
            Family::X => params.m,
            Family::Y => params.n,
        };
        if letter.index == 0 || letter.index > bound {
            return Err(Error::IndexOutOfRange { letter: letter.to_string(), position, m: params.m, n: params.n });
        }
        if !seen.insert(letter) {
            return Err(Error::DuplicateLetter { letter: letter.to_string(), position });
        }
        let last = match letter.family {
            Family::X => &mut last_x,
            Family::Y => &mut last_y,
        };
        if letter.index < *last {
            return Err(Error::OrderViolation { letter: letter.to_string(), position });
        }
        *last = letter.index;
    }
    Ok(ShuffleWord(letters.to_vec()))
}

/// All of `Shuf(m, n)` in canonical order.
pub fn enumerate_shuffle_words(params: ShuffleParams, cap: u64) -> Result<Vec<ShuffleWord>> {
    let count = params.check_cap(cap)?;
    let mut out = Vec::with_capacity(count);
    let mut current = Vec::with_capacity(params.total());
    extend_words(params, 1, 1, &mut current, &mut out);
    out.sort_unstable();
    debug_assert_eq!(out.len(), count);
    Ok(out)
}

fn extend_words(
    params: ShuffleParams,
    next_x: usize,
    next_y: usize,
    current: &mut Vec<Letter>,
    out: &mut Vec<ShuffleWord>,
) {
    out.push(ShuffleWord(current.clone()));
    for i in next_x..=params.m {
        current.push(Letter::x(i));
        extend_words(params, i + 1, next_y, current, out);
        current.pop();
    }
    for j in next_y..=params.n {
        current.push(Letter::y(j));
        extend_words(params, next_x, j + 1, current, out);
        current.pop();
    }
}

/// `u_v`: the letters of `u` that occur in `v`, in the order of `u`.
pub fn subword_in(u: &ShuffleWord, v: &ShuffleWord) -> ShuffleWord {
    let keep: HashSet<Letter> = v.0.iter().copied().collect();
    ShuffleWord(u.0.iter().copied().filter(|l| keep.contains(l)).collect())
}

/// `rk(u) = |u_y| + m - |u_x|`.
pub fn rank(u: &ShuffleWord, params: ShuffleParams) -> usize {
    u.count_y() + params.m - u.count_x()
}

/// The data `(k, eta, lambda)` by which `[u, y1..yn]` factors into a
/// product of smaller shuffle lattices.
///
/// `k = |u_y|`. The chosen Y-letters `y_{i_1} .. y_{i_k}` cut `y1..yn` into
/// `k + 1` runs whose lengths are `lambda`, and cut `u_x` (as it sits in
/// `u`) into `k + 1` blocks whose lengths are `eta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntervalShape {
    pub k: usize,
    pub eta: Vec<usize>,
    pub lambda: Vec<usize>,
}

impl IntervalShape {
    /// Parameter pairs `(eta_i, lambda_i)` of the product factors.
    pub fn factors(&self) -> impl Iterator<Item = ShuffleParams> + '_ {
        self.eta.iter().zip(&self.lambda).map(|(&m, &n)| ShuffleParams::new(m, n))
    }
}

pub fn interval_shape(u: &ShuffleWord, params: ShuffleParams) -> IntervalShape {
    let mut eta = vec![0];
    let mut lambda = Vec::new();
    let mut previous_y = 0;
    for letter in &u.0 {
        match letter.family {
            Family::X => *eta.last_mut().expect("eta is never empty") += 1,
            Family::Y => {
                lambda.push(letter.index - previous_y - 1);
                previous_y = letter.index;
                eta.push(0);
            }
        }
    }
    lambda.push(params.n - previous_y);
    IntervalShape { k: lambda.len() - 1, eta, lambda }
}

impl FromStr for ShuffleParams {
    type Err = Error;

    /// Parses `m,n`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { input: s.to_string(), reason: "expected m,n".to_string() };
        let (m, n) = s.split_once(',').ok_or_else(err)?;
        Ok(ShuffleParams::new(m.trim().parse().map_err(|_| err())?, n.trim().parse().map_err(|_| err())?))
    }
}
