use num_traits::One;

use super::BivarPoly;
use crate::error::{Error, Result};

/// Power series in `x` and `y` truncated to `x^max_x y^max_y`, with
/// coefficients in `Z[q, t]`. Every cell inside the bounds is populated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries2 {
    max_x: usize,
    max_y: usize,
    coeff: Vec<BivarPoly>,
}

impl TruncatedSeries2 {
    pub fn zero(max_x: usize, max_y: usize) -> Self {
        TruncatedSeries2 { max_x, max_y, coeff: vec![BivarPoly::zero(); (max_x + 1) * (max_y + 1)] }
    }

    /// Builds the series from `(i, j, coefficient)` terms; terms beyond the
    /// bounds are dropped and repeated cells accumulate.
    pub fn from_terms(max_x: usize, max_y: usize, terms: impl IntoIterator<Item = (usize, usize, BivarPoly)>) -> Self {
        let mut s = TruncatedSeries2::zero(max_x, max_y);
        for (i, j, p) in terms {
            if i <= max_x && j <= max_y {
                s.coeff[i * (max_y + 1) + j] += &p;
            }
        }
        s
    }

    pub fn max_x(&self) -> usize {
        self.max_x
    }

    pub fn max_y(&self) -> usize {
        self.max_y
    }

    /// Coefficient of `x^i y^j`; zero outside the bounds.
    pub fn get(&self, i: usize, j: usize) -> BivarPoly {
        if i <= self.max_x && j <= self.max_y {
            self.coeff[i * (self.max_y + 1) + j].clone()
        } else {
            BivarPoly::zero()
        }
    }

    /// The same coefficients re-embedded with new bounds; cells beyond the
    /// new bounds are dropped, new cells are zero.
    pub fn with_bounds(&self, max_x: usize, max_y: usize) -> TruncatedSeries2 {
        TruncatedSeries2::from_terms(max_x, max_y, self.nonzero_cells().map(|(i, j, p)| (i, j, p.clone())))
    }

    fn cell(&self, i: usize, j: usize) -> &BivarPoly {
        &self.coeff[i * (self.max_y + 1) + j]
    }

    fn nonzero_cells(&self) -> impl Iterator<Item = (usize, usize, &BivarPoly)> {
        let width = self.max_y + 1;
        self.coeff.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(move |(k, p)| (k / width, k % width, p))
    }

    /// Product truncated to the smaller of the two bounds in each variable.
    pub fn mul(&self, other: &TruncatedSeries2) -> TruncatedSeries2 {
        let (max_x, max_y) = (self.max_x.min(other.max_x), self.max_y.min(other.max_y));
        let mut out = TruncatedSeries2::zero(max_x, max_y);
        for (i, j, a) in self.nonzero_cells() {
            for (k, l, b) in other.nonzero_cells() {
                if i + k <= max_x && j + l <= max_y {
                    out.coeff[(i + k) * (max_y + 1) + j + l] += &(a * b);
                }
            }
        }
        out
    }

    /// True when the series is exactly 1 within its bounds.
    pub fn is_one(&self) -> bool {
        self.nonzero_cells().all(|(i, j, p)| i == 0 && j == 0 && *p == BivarPoly::one())
            && *self.cell(0, 0) == BivarPoly::one()
    }
}

/// Reciprocal `1/D` truncated at `(max_x, max_y)`, by the triangular
/// recurrence `S[a,b] = [a=b=0] - sum_{(i,j) != (0,0)} D[i,j] S[a-i,b-j]`.
pub fn series_reciprocal(d: &TruncatedSeries2, max_x: usize, max_y: usize) -> Result<TruncatedSeries2> {
    let constant = d.cell(0, 0);
    if constant.len() != 1 || !constant.coeff(0, 0).is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let tail: Vec<(usize, usize, &BivarPoly)> = d.nonzero_cells().filter(|&(i, j, _)| (i, j) != (0, 0)).collect();
    let mut s = TruncatedSeries2::zero(max_x, max_y);
    s.coeff[0] = BivarPoly::one();
    for a in 0..=max_x {
        for b in 0..=max_y {
            if (a, b) == (0, 0) {
                continue;
            }
            let mut acc = BivarPoly::zero();
            for &(i, j, dij) in tail.iter().filter(|&&(i, j, _)| i <= a && j <= b) {
                acc -= &(dij * s.cell(a - i, b - j));
            }
            s.coeff[a * (max_y + 1) + b] = acc;
        }
    }
    Ok(s)
}
