//! Strips, dominance, the flagged branching identity, and filtration ranks.
//!
//! A strip is the set of cells a new minimal letter can occupy in a straight
//! tableau: a horizontal strip for a positive letter, a vertical strip for a
//! negative one. Strips are determined by their column multisets, which are
//! compared in dominance order.

use crate::alphabet::{Alphabet, Letter, Parity};
use crate::basis::{character, rank_of_span, CharacterPolynomial, Flag};
use crate::error::{Error, Result};
use crate::letterplace::{tableau_to_polynomial, Polynomial};
use crate::shape::RowConvexShape;
use crate::tableau::{enumerate_row_standard, enumerate_straight, Tableau};
use num::bigint::BigInt;
use num::One;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum StripKind {
    /// Occupied by a minimal positive letter: at most one cell per column,
    /// a leftmost block in each row.
    Horizontal,
    /// Occupied by a minimal negative letter: at most one cell per row, each
    /// at its row's leftmost cell.
    Vertical,
}

impl StripKind {
    pub fn for_letter(letter: Letter) -> StripKind {
        match letter.parity {
            Parity::Plus => StripKind::Horizontal,
            Parity::Minus => StripKind::Vertical,
        }
    }

    fn parity(self) -> Parity {
        match self {
            StripKind::Horizontal => Parity::Plus,
            StripKind::Vertical => Parity::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Strip {
    pub kind: StripKind,
    pub cells: BTreeSet<(usize, u32)>,
    /// Column indices of the cells, ascending, with multiplicity.
    pub columns: Vec<u32>,
}

impl Strip {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The unique strip with the given column multiset, when realizable: fill a
/// minimal letter of the strip's sign into the listed columns and complete
/// every other cell with a fresh negative letter per column, always into the
/// northmost admissible cell.
pub fn strip_from_columns(
    shape: &RowConvexShape,
    kind: StripKind,
    columns: &[u32],
) -> Option<Strip> {
    let mut cols = columns.to_vec();
    cols.sort_unstable();
    if kind == StripKind::Horizontal && cols.windows(2).any(|w| w[0] == w[1]) {
        return None; // a positive letter cannot repeat in a column
    }
    let shape_columns = shape.columns();
    if cols.iter().any(|j| !shape_columns.contains(j)) {
        return None;
    }
    let strip_letter = Letter::new(-1, kind.parity());
    // biword: the strip letter first, then the per-column fillers
    let mut biword: Vec<(Letter, u32)> = cols.iter().map(|&j| (strip_letter, j)).collect();
    for &j in &shape_columns {
        let used = cols.iter().filter(|&&c| c == j).count();
        let height = shape.column_rows(j).len();
        if used > height {
            return None;
        }
        let filler = Letter::new(j as i32, Parity::Minus);
        biword.extend(std::iter::repeat((filler, j)).take(height - used));
    }

    let mut entries: Vec<Vec<Option<Letter>>> = shape
        .rows()
        .iter()
        .map(|r| vec![None; r.len()])
        .collect();
    for &(letter, column) in &biword {
        let mut placed = false;
        for i in shape.column_rows(column) {
            let r = shape.row(i);
            let offset = (column - r.start) as usize;
            if entries[i][offset].is_some() {
                continue;
            }
            let open = if column == r.start {
                true
            } else {
                match entries[i][offset - 1] {
                    Some(left) => left.lt_plus(letter),
                    None => false,
                }
            };
            if open {
                entries[i][offset] = Some(letter);
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    let rows: Vec<Vec<Letter>> = entries
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.unwrap()).collect())
        .collect();
    let filled = Tableau::new(shape.clone(), rows).ok()?;
    if !filled.is_straight() {
        return None;
    }
    let cells: BTreeSet<(usize, u32)> = shape
        .cells()
        .filter(|&(i, j)| filled.entry(i, j) == strip_letter)
        .collect();
    let mut got: Vec<u32> = cells.iter().map(|&(_, j)| j).collect();
    got.sort_unstable();
    (got == cols).then_some(Strip {
        kind,
        cells,
        columns: cols,
    })
}

/// All `a`-flagged strips of the given kind, the empty strip included.
/// Candidate column multisets are bounded by the column heights and checked
/// constructively.
pub fn enumerate_strips(
    shape: &RowConvexShape,
    kind: StripKind,
    a: Letter,
    lower: Option<&Flag>,
    upper: Option<&Flag>,
) -> Vec<Strip> {
    let columns = shape.columns();
    let heights: Vec<usize> = columns
        .iter()
        .map(|&j| {
            let height = shape.column_rows(j).len();
            if kind == StripKind::Horizontal {
                height.min(1)
            } else {
                height
            }
        })
        .collect();
    let allowed: Vec<bool> = columns
        .iter()
        .map(|&j| {
            let above = upper.map_or(true, |f| a.ord <= f.bound(j).ord);
            let below = lower.map_or(true, |g| a.ord >= g.bound(j).ord);
            above && below
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; columns.len()];
    loop {
        let in_flag = choice
            .iter()
            .enumerate()
            .all(|(idx, &count)| count == 0 || allowed[idx]);
        if in_flag {
            let multiset: Vec<u32> = columns
                .iter()
                .zip(&choice)
                .flat_map(|(&j, &count)| std::iter::repeat(j).take(count))
                .collect();
            if let Some(strip) = strip_from_columns(shape, kind, &multiset) {
                out.push(strip);
            }
        }
        let mut idx = 0;
        loop {
            if idx == choice.len() {
                out.sort();
                out.dedup();
                return out;
            }
            if choice[idx] < heights[idx] {
                choice[idx] += 1;
                break;
            }
            choice[idx] = 0;
            idx += 1;
        }
    }
}

/// Dominance: `e <= f` when every prefix count of `e`'s columns is at least
/// the matching count for `f`.
pub fn dominance_leq(e: &Strip, f: &Strip) -> Result<bool> {
    if e.kind != f.kind {
        return Err(Error::KindMismatch);
    }
    let max = e
        .columns
        .iter()
        .chain(f.columns.iter())
        .copied()
        .max()
        .unwrap_or(0);
    for bound in 1..=max {
        let ce = e.columns.iter().filter(|&&j| j <= bound).count();
        let cf = f.columns.iter().filter(|&&j| j <= bound).count();
        if ce < cf {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The shape left after removing a strip, with empty rows dropped.
pub fn quotient_shape(shape: &RowConvexShape, strip: &Strip) -> Result<RowConvexShape> {
    shape.remove_cells(&strip.cells)
}

#[derive(Debug, Clone)]
pub struct BranchReport {
    pub strips: Vec<Strip>,
    /// Left side: the full character.
    pub character: CharacterPolynomial,
    /// Right side with the degree-completing power of the removed letter.
    pub sum_with_factor: CharacterPolynomial,
    /// Right side without that power, as a control reading.
    pub sum_without_factor: CharacterPolynomial,
    pub holds_with_factor: bool,
    pub holds_without_factor: bool,
    /// Straight tableaux whose cells for the removed letter fail to form a
    /// strip with a straight remainder; empty in every observed case.
    pub restriction_counterexamples: Vec<Tableau>,
}

/// Verify the branching identity for removing `a`: the character of the
/// shape equals the sum over `a`-flagged strips `E` of `t_a^{|E|}` times the
/// quotient character of `D/E` over the alphabet without `a`. The removed
/// letter is expected to be minimal; the report records both readings.
pub fn branching_check(
    shape: &RowConvexShape,
    alphabet: &Alphabet,
    a: Letter,
    lower: Option<&Flag>,
    upper: Option<&Flag>,
) -> Result<BranchReport> {
    if a.ord < 0 || a.ord as usize >= alphabet.len() {
        return Err(Error::UnknownLetter {
            symbol: format!("rank {}", a.ord),
        });
    }
    if let Some(g) = lower {
        g.validate(alphabet, shape)?;
    }
    if let Some(f) = upper {
        f.validate(alphabet, shape)?;
    }
    let kind = StripKind::for_letter(a);
    let strips = enumerate_strips(shape, kind, a, lower, upper);
    let full = character(shape, alphabet, lower, upper)?;

    let mut with_factor = CharacterPolynomial::zero();
    let mut without_factor = CharacterPolynomial::zero();
    for strip in &strips {
        let quotient = quotient_shape(shape, strip)?;
        let ch = quotient_character(&quotient, alphabet, a, lower, upper)?;
        for (exps, coeff) in ch.terms() {
            let mut with = exps.clone();
            with[a.ord as usize] += strip.len() as u32;
            with_factor.add_monomial(with, coeff.clone());
            without_factor.add_monomial(exps.clone(), coeff.clone());
        }
    }

    // every straight tableau should split as a strip plus a straight rest
    let mut counterexamples = Vec::new();
    if a == alphabet.letter(0) {
        let flags = match (lower, upper) {
            (None, None) => None,
            _ => Some((
                lower
                    .cloned()
                    .unwrap_or_else(|| Flag::trivial_lower(alphabet, shape)),
                upper
                    .cloned()
                    .unwrap_or_else(|| Flag::trivial_upper(alphabet, shape)),
            )),
        };
        let flag_refs = flags.as_ref().map(|(g, f)| (g, f));
        for t in enumerate_straight(shape, alphabet, flag_refs)? {
            let cells: BTreeSet<(usize, u32)> = shape
                .cells()
                .filter(|&(i, j)| t.entry(i, j) == a)
                .collect();
            let mut cols: Vec<u32> = cells.iter().map(|&(_, j)| j).collect();
            cols.sort_unstable();
            let ok = match strip_from_columns(shape, kind, &cols) {
                Some(strip) => strip.cells == cells && restriction_is_straight(&t, &strip),
                None => false,
            };
            if !ok {
                counterexamples.push(t);
            }
        }
    }

    Ok(BranchReport {
        holds_with_factor: with_factor == full,
        holds_without_factor: without_factor == full,
        strips,
        character: full,
        sum_with_factor: with_factor,
        sum_without_factor: without_factor,
        restriction_counterexamples: counterexamples,
    })
}

/// Character of a quotient shape over the alphabet without `removed`,
/// expressed in the full alphabet's exponent vectors. Flag bounds compare
/// against the letters' original identities, so no flag rewriting is needed.
fn quotient_character(
    quotient: &RowConvexShape,
    alphabet: &Alphabet,
    removed: Letter,
    lower: Option<&Flag>,
    upper: Option<&Flag>,
) -> Result<CharacterPolynomial> {
    let mut out = CharacterPolynomial::zero();
    if quotient.n_rows() == 0 {
        out.add_monomial(vec![0; alphabet.len()], BigInt::one());
        return Ok(out);
    }
    let (rest, map) = alphabet.without(removed);
    if rest.is_empty() {
        return Ok(out);
    }
    // original rank of a rest-alphabet letter
    let original: Vec<usize> = map
        .iter()
        .enumerate()
        .filter_map(|(old, new)| new.map(|_| old))
        .collect();
    for t in enumerate_straight(quotient, &rest, None)? {
        let admissible = quotient.cells().all(|(i, j)| {
            let orig = original[t.entry(i, j).ord as usize] as i32;
            let above = upper.map_or(true, |f| orig <= f.bound(j).ord);
            let below = lower.map_or(true, |g| orig >= g.bound(j).ord);
            above && below
        });
        if !admissible {
            continue;
        }
        let mut exps = vec![0u32; alphabet.len()];
        for l in t.letters() {
            exps[original[l.ord as usize]] += 1;
        }
        out.add_monomial(exps, BigInt::one());
    }
    Ok(out)
}

fn restriction_is_straight(t: &Tableau, strip: &Strip) -> bool {
    let Ok(rest_shape) = t.shape().remove_cells(&strip.cells) else {
        return false;
    };
    if rest_shape.n_rows() == 0 {
        return true;
    }
    let mut rows = Vec::new();
    for (i, r) in t.shape().rows().iter().enumerate() {
        let row: Vec<Letter> = r
            .columns()
            .filter(|&j| !strip.cells.contains(&(i, j)))
            .map(|j| t.entry(i, j))
            .collect();
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Tableau::new(rest_shape, rows).map_or(false, |rest| rest.is_straight())
}

#[derive(Debug, Clone)]
pub struct StripRanks {
    pub strip: Strip,
    pub rank_ge: usize,
    pub rank_gt: usize,
    pub rank_quotient: usize,
}

/// For every strip, in a linear extension of dominance: the rank of the span
/// of tableaux whose strip of `a`-cells dominates it, the strictly dominating
/// rank, and the straight count of the quotient shape over the remaining
/// letters. The difference of the first two matches the third, and the
/// differences telescope to the full straight count.
pub fn filtration_ranks(
    shape: &RowConvexShape,
    alphabet: &Alphabet,
    a: Letter,
) -> Result<Vec<StripRanks>> {
    let kind = StripKind::for_letter(a);
    let mut strips = enumerate_strips(shape, kind, a, None, None);
    // a linear extension of dominance: lexicographic on the sorted multisets
    strips.sort_by(|e, f| e.columns.cmp(&f.columns));
    let (rest_alphabet, _) = alphabet.without(a);

    let expansions: Vec<(Vec<u32>, Polynomial)> = enumerate_row_standard(shape, alphabet)
        .iter()
        .filter_map(|t| {
            let p = tableau_to_polynomial(t);
            if p.is_zero() {
                return None;
            }
            let mut cols: Vec<u32> = shape
                .cells()
                .filter(|&(i, j)| t.entry(i, j) == a)
                .map(|(_, j)| j)
                .collect();
            cols.sort_unstable();
            Some((cols, p))
        })
        .collect();

    let max_col = shape.max_column();
    let prefix_counts = |columns: &[u32]| -> Vec<usize> {
        (1..=max_col)
            .map(|bound| columns.iter().filter(|&&j| j <= bound).count())
            .collect()
    };

    let mut out = Vec::new();
    for strip in strips {
        let strip_counts = prefix_counts(&strip.columns);
        let dominating: Vec<Polynomial> = expansions
            .iter()
            .filter(|(cols, _)| {
                prefix_counts(cols)
                    .iter()
                    .zip(&strip_counts)
                    .all(|(c, s)| c <= s)
            })
            .map(|(_, p)| p.clone())
            .collect();
        let strictly: Vec<Polynomial> = expansions
            .iter()
            .filter(|(cols, _)| {
                *cols != strip.columns
                    && prefix_counts(cols)
                        .iter()
                        .zip(&strip_counts)
                        .all(|(c, s)| c <= s)
            })
            .map(|(_, p)| p.clone())
            .collect();
        let rank_ge = rank_of_span(&dominating);
        let rank_gt = rank_of_span(&strictly);
        let quotient = quotient_shape(shape, &strip)?;
        let rank_quotient = if quotient.n_rows() == 0 {
            1
        } else if rest_alphabet.is_empty() {
            0
        } else {
            enumerate_straight(&quotient, &rest_alphabet, None)?.len()
        };
        out.push(StripRanks {
            strip,
            rank_ge,
            rank_gt,
            rank_quotient,
        });
    }
    Ok(out)
}
