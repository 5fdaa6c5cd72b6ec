//! The two-row exchange identities and the straightening algorithms.
//!
//! `syzygy` emits the formal exchange identity attached to a marking of a
//! two-row tableau; `row_straighten` drives it from the leftmost flippable
//! inversion; `straighten_tableau` expands any tableau into straight ones.
//! Every emitted identity is checked against the letterplace expansion; a
//! mismatch is a hard error, never silently repaired.

use crate::alphabet::{Letter, Parity};
use crate::error::{Error, Result};
use crate::letterplace::{tableau_to_polynomial, Polynomial};
use crate::shape::{make_shape, RowConvexShape, RowInterval};
use crate::tableau::{word_lex_cmp, Straightness, Tableau, WordVariant};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// An integer combination of tableaux of a fixed shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalTableauSum {
    shape: RowConvexShape,
    terms: BTreeMap<Tableau, BigInt>,
}

impl FormalTableauSum {
    pub fn zero(shape: RowConvexShape) -> Self {
        FormalTableauSum {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(t: Tableau) -> Self {
        let mut sum = FormalTableauSum::zero(t.shape().clone());
        sum.add_term(t, BigInt::one());
        sum
    }

    pub fn shape(&self) -> &RowConvexShape {
        &self.shape
    }

    pub fn add_term(&mut self, t: Tableau, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(t.shape(), &self.shape);
        let entry = self.terms.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FormalTableauSum, scale: &BigInt) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * scale);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tableau, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Tableau) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The letterplace expansion of the sum.
    pub fn expand(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (t, c) in &self.terms {
            let p = tableau_to_polynomial(t);
            out = out.add(&p.scale(&BigRational::from_integer(c.clone())));
        }
        out
    }
}

/// Marked columns for a two-row exchange: a run at the end of the top row
/// and a run inside the bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyzygySpec {
    /// First marked column of the top row; the marking extends to its end.
    pub top_start: u32,
    /// First marked column of the bottom row.
    pub bottom_start: u32,
    /// Last marked column of the bottom row.
    pub bottom_end: u32,
}

/// One way of splitting a word into two disjoint subwords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub subword: Vec<Letter>,
    pub complement: Vec<Letter>,
    /// Odd-odd inversions of `subword ++ complement`.
    pub signature: u64,
}

/// All distinct splits of `word` into a subword of length `k` and its
/// complement. Splits that agree as word pairs are listed once.
pub fn shuffles(word: &[Letter], k: usize) -> Vec<Shuffle> {
    use itertools::Itertools;
    assert!(k <= word.len());
    let n = word.len();
    let mut seen: BTreeSet<(Vec<Letter>, Vec<Letter>)> = BTreeSet::new();
    for picks in (0..n).combinations(k) {
        let mut in_pick = vec![false; n];
        for &i in &picks {
            in_pick[i] = true;
        }
        let subword: Vec<Letter> = picks.iter().map(|&i| word[i]).collect();
        let complement: Vec<Letter> = (0..n).filter(|&i| !in_pick[i]).map(|i| word[i]).collect();
        seen.insert((subword, complement));
    }
    seen.into_iter()
        .map(|(subword, complement)| {
            let joined: Vec<Letter> = subword.iter().chain(complement.iter()).copied().collect();
            Shuffle {
                signature: odd_inversions(&joined),
                subword,
                complement,
            }
        })
        .collect()
}

/// Pairs i < j with both letters odd and `w_i > w_j`.
pub fn odd_inversions(word: &[Letter]) -> u64 {
    let mut n = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i].is_odd() && word[j].is_odd() && word[i].ord > word[j].ord {
                n += 1;
            }
        }
    }
    n
}

fn odd_count(word: &[Letter]) -> u64 {
    word.iter().filter(|l| l.is_odd()).count() as u64
}

fn plus_count(word: &[Letter]) -> u64 {
    word.iter().filter(|l| !l.is_odd()).count() as u64
}

/// Sorting disorder of a word: odd-odd inversions plus `C(#odd, 2)`.
fn m_term(word: &[Letter]) -> u64 {
    let n = odd_count(word);
    odd_inversions(word) + n * (n.saturating_sub(1)) / 2
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn plus_multiplicities(word: &[Letter]) -> BTreeMap<Letter, u64> {
    let mut counts = BTreeMap::new();
    for &l in word {
        if !l.is_odd() {
            *counts.entry(l).or_insert(0u64) += 1;
        }
    }
    counts
}

/// `c(a ++ b)! / (c(a)! c(b)!)` as a product of binomials over plus letters.
fn merge_ratio(a: &[Letter], b: &[Letter]) -> BigInt {
    let ma = plus_multiplicities(a);
    let mb = plus_multiplicities(b);
    let mut out = BigInt::one();
    for (l, &eb) in &mb {
        let ea = ma.get(l).copied().unwrap_or(0);
        out *= binomial(ea + eb, eb);
    }
    out
}

/// `c(a ++ b ++ c)! / (c(a ++ c)! c(b)!)`.
fn merge_ratio3(a: &[Letter], b: &[Letter], c: &[Letter]) -> BigInt {
    let mut ac = a.to_vec();
    ac.extend_from_slice(c);
    merge_ratio(&ac, b)
}

fn concat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Sort both rows ascending; `None` when a row repeats an odd letter, in
/// which case the tableau stands for zero. No sign is produced here: the
/// exchange coefficients already account for the sorting.
fn sorted_two_row(
    shape: &RowConvexShape,
    top: Vec<Letter>,
    bottom: Vec<Letter>,
) -> Option<Tableau> {
    let sort = |mut w: Vec<Letter>| -> Option<Vec<Letter>> {
        w.sort();
        for pair in w.windows(2) {
            if pair[0] == pair[1] && pair[0].is_odd() {
                return None;
            }
        }
        Some(w)
    };
    let rows = vec![sort(top)?, sort(bottom)?];
    Some(Tableau::new(shape.clone(), rows).expect("rows sized by construction"))
}

/// Expansion caches shared by the straightening algorithms.
pub struct Straightener {
    memo: HashMap<Tableau, FormalTableauSum>,
    expansions: HashMap<Tableau, Polynomial>,
    /// When false, skip the per-identity expansion check (used by callers
    /// that validate the final result instead).
    pub validate_syzygies: bool,
    row_depth: usize,
    row_chain: Vec<Tableau>,
    /// Deepest `row_straighten` nesting observed; 1 means no recursion.
    pub max_row_depth: usize,
}

impl Default for Straightener {
    fn default() -> Self {
        Self::new()
    }
}

impl Straightener {
    pub fn new() -> Self {
        Straightener {
            memo: HashMap::new(),
            expansions: HashMap::new(),
            validate_syzygies: true,
            row_depth: 0,
            row_chain: Vec::new(),
            max_row_depth: 0,
        }
    }

    pub fn reset_depth_stats(&mut self) {
        self.row_depth = 0;
        self.max_row_depth = 0;
    }

    fn expansion(&mut self, t: &Tableau) -> Polynomial {
        if let Some(p) = self.expansions.get(t) {
            return p.clone();
        }
        let p = tableau_to_polynomial(t);
        self.expansions.insert(t.clone(), p.clone());
        p
    }

    fn check_identity(&mut self, t: &Tableau, sum: &FormalTableauSum, context: &str) -> Result<()> {
        let mut expansion = Polynomial::zero();
        for (s, c) in sum.terms() {
            let p = self.expansion(s);
            expansion = expansion.add(&p.scale(&BigRational::from_integer(c.clone())));
        }
        let target = self.expansion(t);
        if expansion != target {
            return Err(Error::OracleMismatch {
                context: format!("{context}: expansion of the emitted sum differs from the input"),
            });
        }
        Ok(())
    }

    /// The formal exchange identity for a marked two-row tableau.
    ///
    /// The first family antisymmetrizes the marked letters across the two
    /// rows; the second shuffles the unmarked head of the top row into the
    /// marked bottom cells. Coefficients are integral once the identity
    /// coefficient is a unit.
    pub fn syzygy(&mut self, t: &Tableau, spec: SyzygySpec) -> Result<FormalTableauSum> {
        if t.shape().n_rows() != 2 {
            return Err(Error::BadSpec {
                reason: "exchange identities apply to two-row tableaux".into(),
            });
        }
        if let Straightness::RowViolation { row, column } = t.straightness() {
            return Err(Error::NotRowStandard { row, column });
        }
        let top = t.shape().row(0);
        let bottom = t.shape().row(1);
        if bottom.start < top.start || bottom.end > top.end {
            return Err(Error::BadSpec {
                reason: "top row must contain the bottom row; use fake letters for skew pairs"
                    .into(),
            });
        }
        if spec.top_start < top.start || spec.top_start > top.end {
            return Err(Error::BadSpec {
                reason: "top marking out of range".into(),
            });
        }
        if spec.bottom_start < bottom.start
            || spec.bottom_end > bottom.end
            || spec.bottom_start > spec.bottom_end
        {
            return Err(Error::BadSpec {
                reason: "bottom marking out of range".into(),
            });
        }

        let v = t.row(0);
        let w = t.row(1);
        let at = |row: &[Letter], interval: RowInterval, col: u32| row[(col - interval.start) as usize];

        let x: Vec<Letter> = (top.start..spec.top_start).map(|c| at(v, top, c)).collect();
        let top_marked: Vec<Letter> = (spec.top_start..=top.end).map(|c| at(v, top, c)).collect();
        let bottom_marked: Vec<Letter> = (spec.bottom_start..=spec.bottom_end)
            .map(|c| at(w, bottom, c))
            .collect();
        let z1: Vec<Letter> = (bottom.start..spec.bottom_start)
            .map(|c| at(w, bottom, c))
            .collect();
        let z2: Vec<Letter> = (spec.bottom_end + 1..=bottom.end)
            .map(|c| at(w, bottom, c))
            .collect();
        let z = concat(&[&z1, &z2]);
        let u = concat(&[&bottom_marked, &top_marked]);

        let l = bottom_marked.len();
        let j = top_marked.len();
        if l == 0 && j == 0 {
            return Err(Error::BadSpec {
                reason: "empty marking".into(),
            });
        }
        let n_top = top.len() as u64;

        let alpha = |u_bot: &[Letter], u_top: &[Letter]| -> BigInt {
            let n1 = odd_count(&z1) * odd_count(u_bot)
                + odd_count(&z) * n_top
                + odd_count(u_bot) * n_top
                + odd_inversions(&concat(&[u_top, u_bot]))
                + m_term(&concat(&[&x, u_top]))
                + m_term(&concat(&[&z1, u_bot, &z2]));
            let magnitude = merge_ratio(&x, u_top) * merge_ratio3(&z1, u_bot, &z2);
            if n1 % 2 == 0 {
                magnitude
            } else {
                -magnitude
            }
        };

        let alpha_e = alpha(&bottom_marked, &top_marked);
        if alpha_e != BigInt::one() && alpha_e != -BigInt::one() {
            return Err(Error::NonUnitPivot {
                pivot: alpha_e.to_string(),
            });
        }

        let mut sum = FormalTableauSum::zero(t.shape().clone());

        // antisymmetrize the marked letters
        for shuffle in shuffles(&u, l) {
            let (u_bot, u_top) = (&shuffle.subword, &shuffle.complement);
            if u_bot == &bottom_marked && u_top == &top_marked {
                continue; // the trivial split reproduces the input
            }
            let coeff = -alpha(u_bot, u_top) / &alpha_e;
            let top_word = concat(&[&x, u_top]);
            let bottom_word = concat(&[&z1, u_bot, &z2]);
            if let Some(s) = sorted_two_row(t.shape(), top_word, bottom_word) {
                sum.add_term(s, coeff);
            }
        }

        // shuffle the unmarked head of the top row into the marked bottom cells
        if x.len() >= l {
            let i = x.len() - l;
            for shuffle in shuffles(&x, i) {
                let (x_top, x_bot) = (&shuffle.subword, &shuffle.complement);
                let n2 = odd_count(&z) * n_top
                    + odd_count(x_bot) * (n_top - odd_count(&u))
                    + odd_inversions(&concat(&[x_top, x_bot]))
                    + m_term(&concat(&[x_top, &u]))
                    + m_term(&concat(&[x_bot, &z]));
                let magnitude = merge_ratio(&u, x_top) * merge_ratio(x_bot, &z);
                let mut beta = if (n2 + l as u64) % 2 == 0 {
                    magnitude
                } else {
                    -magnitude
                };
                beta /= &alpha_e;
                let top_word = concat(&[x_top, &u]);
                let bottom_word = concat(&[&z1, x_bot, &z2]);
                if let Some(s) = sorted_two_row(t.shape(), top_word, bottom_word) {
                    sum.add_term(s, beta);
                }
            }
        }

        if self.validate_syzygies {
            self.check_identity(t, &sum, "syzygy")?;
        }
        Ok(sum)
    }

    /// Straighten a row-standard, non-straight two-row tableau around its
    /// leftmost flippable inversion. Every returned tableau is straight or
    /// has a strictly larger modified column word than the input.
    pub fn row_straighten(&mut self, t: &Tableau) -> Result<FormalTableauSum> {
        self.row_depth += 1;
        self.max_row_depth = self.max_row_depth.max(self.row_depth);
        let result = self.row_straighten_inner(t);
        self.row_depth -= 1;
        result
    }

    fn row_straighten_inner(&mut self, t: &Tableau) -> Result<FormalTableauSum> {
        if t.shape().n_rows() != 2 {
            return Err(Error::BadSpec {
                reason: "row straightening applies to two-row tableaux".into(),
            });
        }
        let top = t.shape().row(0);
        let bottom = t.shape().row(1);
        if top.start > bottom.start {
            return self.row_straighten_skew(t);
        }
        let column = match t.straightness() {
            Straightness::Straight => return Err(Error::AlreadyStraight),
            Straightness::RowViolation { row, column } => {
                return Err(Error::NotRowStandard { row, column })
            }
            Straightness::FlippableInversion { column, .. } => column,
        };
        let c2 = column;
        let v_at = |c: u32| t.entry(0, c);
        let w_at = |c: u32| t.entry(1, c);

        let c1 = (bottom.start..=c2)
            .find(|&c| c == top.start || (c > top.start && v_at(c - 1).lt_plus(w_at(c))))
            .expect("the bottom start column always qualifies when the top has no left cell");
        let c3 = (c2..=bottom.end)
            .take_while(|&c| w_at(c) == w_at(c2))
            .last()
            .unwrap();

        let top_start = if c1 < c2 {
            c2
        } else {
            (top.start..=c2)
                .find(|&c| v_at(c).gt_plus(w_at(c2)))
                .expect("the inversion column itself qualifies")
        };
        let spec = SyzygySpec {
            top_start,
            bottom_start: c1,
            bottom_end: c3,
        };

        let expansion = self.syzygy(t, spec)?;
        self.resolve_two_row(t, expansion)
    }

    /// Emit straight or word-increased terms; recurse on the rest. Repeated
    /// exchanges can revisit equal column words when a positive letter
    /// straddles the cut, so recursion is guarded by a cycle check rather
    /// than a per-step measure.
    fn resolve_two_row(
        &mut self,
        t: &Tableau,
        expansion: FormalTableauSum,
    ) -> Result<FormalTableauSum> {
        let w_t = t.column_word(WordVariant::Modified);
        let mut out = FormalTableauSum::zero(t.shape().clone());
        for (s, coeff) in expansion.terms() {
            if s.is_straight()
                || word_lex_cmp(&s.column_word(WordVariant::Modified), &w_t) == Ordering::Greater
            {
                out.add_term(s.clone(), coeff.clone());
            } else {
                if self.row_chain.contains(s) {
                    return Err(Error::OracleMismatch {
                        context: "straightening revisited a tableau".into(),
                    });
                }
                self.row_chain.push(s.clone());
                let deeper = self.row_straighten(s);
                self.row_chain.pop();
                out.add_scaled(&deeper?, coeff);
            }
        }
        Ok(out)
    }

    /// Skew two-row straightening by fake letters: extend the top row with
    /// new minimal negative letters, straighten, then erase them; terms that
    /// displace a fake letter vanish under the erasure.
    fn row_straighten_skew(&mut self, t: &Tableau) -> Result<FormalTableauSum> {
        match t.straightness() {
            Straightness::Straight => return Err(Error::AlreadyStraight),
            Straightness::RowViolation { row, column } => {
                return Err(Error::NotRowStandard { row, column })
            }
            Straightness::FlippableInversion { .. } => {}
        }
        let top = t.shape().row(0);
        let bottom = t.shape().row(1);
        // work one column to the right when the bottom row starts at column 1,
        // so the extension cell has a valid column index
        let shift = u32::from(bottom.start == 1);
        let fakes = (top.start - bottom.start + 1) as usize;
        let (ext_shape, _) = make_shape(&[
            (bottom.start + shift - 1, top.end + shift),
            (bottom.start + shift, bottom.end + shift),
        ])
        .expect("extended intervals are nonempty");
        let fake_letters: Vec<Letter> = (0..fakes)
            .map(|i| Letter::new(i as i32 - fakes as i32, Parity::Minus))
            .collect();
        let mut ext_top = fake_letters.clone();
        ext_top.extend_from_slice(t.row(0));
        let ext =
            Tableau::new(ext_shape, vec![ext_top, t.row(1).to_vec()]).expect("sized rows");

        let expansion = self.row_straighten_inner(&ext)?;

        let t_top_odd = odd_count(t.row(0));
        let mut out = FormalTableauSum::zero(t.shape().clone());
        for (s, coeff) in expansion.terms() {
            if s.row(1).iter().any(|l| l.ord < 0) {
                continue; // a fake letter left its home column
            }
            let real_top: Vec<Letter> = s.row(0)[fakes..].to_vec();
            debug_assert!(s.row(0)[..fakes].iter().all(|l| l.ord < 0));
            let sign_exp = (odd_count(&real_top) + t_top_odd) * fakes as u64;
            let coeff = if sign_exp % 2 == 0 {
                coeff.clone()
            } else {
                -coeff.clone()
            };
            let erased = Tableau::new(t.shape().clone(), vec![real_top, s.row(1).to_vec()])
                .expect("sized rows");
            out.add_term(erased, coeff);
        }
        if self.validate_syzygies {
            self.check_identity(t, &out, "skew straightening")?;
        }
        let c_t = t.column_word(WordVariant::Plain);
        for (s, _) in out.terms() {
            if word_lex_cmp(&s.column_word(WordVariant::Plain), &c_t) != Ordering::Greater {
                return Err(Error::OracleMismatch {
                    context: "skew straightening failed to increase the column word".into(),
                });
            }
        }
        Ok(out)
    }

    /// Expand `[T]` in the straight basis of its shape. The input need not
    /// be row-standard; rows are sorted first with the sign of the odd
    /// transpositions, and a row repeating an odd letter yields the empty
    /// sum.
    pub fn straighten(&mut self, t: &Tableau) -> Result<FormalTableauSum> {
        let Some((sign, sorted)) = t.row_sorted() else {
            return Ok(FormalTableauSum::zero(t.shape().clone()));
        };
        let sum = self.straighten_sorted(&sorted)?;
        if sign == 1 {
            Ok(sum)
        } else {
            let mut out = FormalTableauSum::zero(t.shape().clone());
            out.add_scaled(&sum, &BigInt::from(-1));
            Ok(out)
        }
    }

    fn straighten_sorted(&mut self, t: &Tableau) -> Result<FormalTableauSum> {
        if let Some(hit) = self.memo.get(t) {
            return Ok(hit.clone());
        }
        let result = match t.straightness() {
            Straightness::Straight => FormalTableauSum::singleton(t.clone()),
            Straightness::RowViolation { row, column } => {
                return Err(Error::NotRowStandard { row, column })
            }
            Straightness::FlippableInversion {
                top_row: i,
                bottom_row: j,
                ..
            } => {
                let pair_shape = RowConvexShape::from_sorted_rows_unchecked(vec![
                    t.shape().row(i),
                    t.shape().row(j),
                ]);
                let pair = Tableau::new(
                    pair_shape,
                    vec![t.row(i).to_vec(), t.row(j).to_vec()],
                )
                .expect("rows sized by their own intervals");
                let rows_between: Vec<Letter> = (i + 1..j)
                    .flat_map(|r| t.row(r).iter().copied())
                    .collect();
                let crossing = plus_count(&rows_between);
                let old_bottom_plus = plus_count(t.row(j));

                let expansion = self.row_straighten(&pair)?;
                let mut out = FormalTableauSum::zero(t.shape().clone());
                for (s, coeff) in expansion.terms() {
                    let interleave_sign =
                        (plus_count(s.row(1)) + old_bottom_plus) * crossing;
                    let coeff = if interleave_sign % 2 == 0 {
                        coeff.clone()
                    } else {
                        -coeff.clone()
                    };
                    let replaced = t
                        .with_row(i, s.row(0).to_vec())
                        .with_row(j, s.row(1).to_vec());
                    let deeper = self.straighten_sorted(&replaced)?;
                    out.add_scaled(&deeper, &coeff);
                }
                if self.validate_syzygies {
                    self.check_identity(t, &out, "straighten")?;
                }
                out
            }
        };
        self.memo.insert(t.clone(), result.clone());
        Ok(result)
    }
}

/// Convenience wrappers constructing a fresh [`Straightener`].
pub fn syzygy(t: &Tableau, spec: SyzygySpec) -> Result<FormalTableauSum> {
    Straightener::new().syzygy(t, spec)
}

pub fn row_straighten(t: &Tableau) -> Result<FormalTableauSum> {
    Straightener::new().row_straighten(t)
}

pub fn straighten_tableau(t: &Tableau) -> Result<FormalTableauSum> {
    Straightener::new().straighten(t)
}
