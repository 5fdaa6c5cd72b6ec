//! Flags, echelon certificates, straight-basis coordinates, and characters.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::letterplace::{
    initial_monomial, tableau_to_polynomial, DiagonalOrder, Monomial, Polynomial,
};
use crate::shape::RowConvexShape;
use crate::straighten::FormalTableauSum;
use crate::tableau::{enumerate_straight, straight_filling, Tableau};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A per-column letter bound. Bounds are indexed by column, weakly
/// increasing left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    bounds: Vec<Letter>,
}

impl Flag {
    pub fn new(bounds: Vec<Letter>) -> Result<Self> {
        if bounds.windows(2).any(|w| w[0].ord > w[1].ord) {
            return Err(Error::BadFlag {
                reason: "flag letters must weakly increase".into(),
            });
        }
        Ok(Flag { bounds })
    }

    /// The trivial lower flag: the smallest letter in every column.
    pub fn trivial_lower(alphabet: &Alphabet, shape: &RowConvexShape) -> Flag {
        Flag {
            bounds: vec![alphabet.letter(0); shape.max_column() as usize],
        }
    }

    /// The trivial upper flag: the largest letter in every column.
    pub fn trivial_upper(alphabet: &Alphabet, shape: &RowConvexShape) -> Flag {
        Flag {
            bounds: vec![alphabet.letter(alphabet.len() - 1); shape.max_column() as usize],
        }
    }

    /// Bound for a 1-based column.
    pub fn bound(&self, column: u32) -> Letter {
        self.bounds[(column - 1) as usize]
    }

    pub fn bounds(&self) -> &[Letter] {
        &self.bounds
    }

    pub fn validate(&self, alphabet: &Alphabet, shape: &RowConvexShape) -> Result<()> {
        if (self.bounds.len() as u32) < shape.max_column() {
            return Err(Error::BadFlag {
                reason: format!(
                    "flag covers {} columns but the shape reaches column {}",
                    self.bounds.len(),
                    shape.max_column()
                ),
            });
        }
        for l in &self.bounds {
            if l.ord < 0 || l.ord as usize >= alphabet.len() {
                return Err(Error::BadFlag {
                    reason: "flag letter outside the alphabet".into(),
                });
            }
        }
        Ok(())
    }
}

/// Kill every monomial containing a variable `(l|p)` with `l` above the
/// upper bound or below the lower bound of its place's column.
pub fn apply_flag(p: &Polynomial, lower: Option<&Flag>, upper: Option<&Flag>) -> Polynomial {
    let mut out = Polynomial::zero();
    'terms: for (m, c) in p.terms() {
        for &(v, _) in m.factors() {
            let column = v.place.ord;
            if column >= 1 {
                if let Some(f) = upper {
                    if (column as usize) <= f.bounds().len() && v.letter.ord > f.bound(column as u32).ord {
                        continue 'terms;
                    }
                }
                if let Some(g) = lower {
                    if (column as usize) <= g.bounds().len() && v.letter.ord < g.bound(column as u32).ord {
                        continue 'terms;
                    }
                }
            }
        }
        out.add_term(m.clone(), c.clone());
    }
    out
}

/// Whether every entry of column j lies in `g_j ..= f_j`.
pub fn is_flagged(t: &Tableau, lower: Option<&Flag>, upper: Option<&Flag>) -> bool {
    t.shape().cells().all(|(i, j)| {
        let l = t.entry(i, j);
        let above = upper.map_or(true, |f| l.ord <= f.bound(j).ord);
        let below = lower.map_or(true, |g| l.ord >= g.bound(j).ord);
        above && below
    })
}

#[derive(Debug, Clone)]
pub struct EchelonPivot {
    pub tableau: Tableau,
    pub monomial: Monomial,
    pub coefficient: BigRational,
}

#[derive(Debug, Clone)]
pub struct EchelonReport {
    pub pivots: Vec<EchelonPivot>,
}

/// Compute the initial monomial of `[T]` for every straight tableau and
/// certify that the pivots are pairwise distinct with coefficient plus or
/// minus one. The table is sorted by modified column word.
pub fn echelon_certificate(shape: &RowConvexShape, alphabet: &Alphabet) -> Result<EchelonReport> {
    let order = DiagonalOrder::default();
    let mut pivots = Vec::new();
    let mut seen: BTreeMap<Monomial, Tableau> = BTreeMap::new();
    for t in enumerate_straight(shape, alphabet, None)? {
        let p = tableau_to_polynomial(&t);
        if p.is_zero() {
            return Err(Error::CertificateFailure {
                reason: format!("straight tableau {t:?} expands to zero"),
            });
        }
        let (coefficient, monomial) = initial_monomial(&p, &order)?;
        if coefficient.abs() != BigRational::one() {
            return Err(Error::CertificateFailure {
                reason: format!("pivot coefficient {coefficient} is not a unit for {t:?}"),
            });
        }
        if let Some(other) = seen.get(&monomial) {
            return Err(Error::CertificateFailure {
                reason: format!("straight tableaux {other:?} and {t:?} share a pivot"),
            });
        }
        seen.insert(monomial.clone(), t.clone());
        pivots.push(EchelonPivot {
            tableau: t,
            monomial,
            coefficient,
        });
    }
    Ok(EchelonReport { pivots })
}

/// Coordinates of a formal tableau sum in the straight basis, computed by
/// straightening every term.
pub fn coordinates_of_sum(sum: &FormalTableauSum) -> Result<BTreeMap<Tableau, BigInt>> {
    let mut straightener = crate::straighten::Straightener::new();
    let mut out: BTreeMap<Tableau, BigInt> = BTreeMap::new();
    for (t, c) in sum.terms() {
        let expansion = straightener.straighten(t)?;
        for (s, d) in expansion.terms() {
            let entry = out.entry(s.clone()).or_insert_with(BigInt::zero);
            *entry += c * d;
            if entry.is_zero() {
                out.remove(s);
            }
        }
    }
    Ok(out)
}

/// Coordinates of a raw polynomial in the straight basis of the given shape
/// and alphabet, by elimination against the echelon pivots in ascending
/// diagonal order. A leftover monomial that is not a pivot of any straight
/// tableau witnesses non-membership, as does a non-integral coefficient.
pub fn coordinates_of_polynomial(
    p: &Polynomial,
    shape: &RowConvexShape,
    alphabet: &Alphabet,
) -> Result<BTreeMap<Tableau, BigInt>> {
    let order = DiagonalOrder::default();
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let (coeff, monomial) = initial_monomial(&rest, &order)?;
        let tableau = straight_tableau_for_pivot(&monomial, shape, alphabet)
            .ok_or_else(|| Error::NotInModule {
                witness: format!("{monomial:?}"),
            })?;
        let expansion = tableau_to_polynomial(&tableau);
        let (pivot_coeff, pivot_monomial) = initial_monomial(&expansion, &order)?;
        if pivot_monomial != monomial {
            return Err(Error::NotInModule {
                witness: format!("{monomial:?}"),
            });
        }
        let ratio = coeff / pivot_coeff;
        if !ratio.is_integer() {
            return Err(Error::NotInModule {
                witness: format!("non-integral coordinate {ratio} at {monomial:?}"),
            });
        }
        rest = rest.sub(&expansion.scale(&ratio));
        let entry = out
            .entry(tableau)
            .or_insert_with(BigInt::zero);
        *entry += ratio.to_integer();
    }
    out.retain(|_, c: &mut BigInt| !c.is_zero());
    Ok(out)
}

/// The straight tableau whose pivot is the given monomial, when one exists:
/// read the letter word off the monomial, regroup it per column, and run the
/// straight filling.
fn straight_tableau_for_pivot(
    monomial: &Monomial,
    shape: &RowConvexShape,
    alphabet: &Alphabet,
) -> Option<Tableau> {
    // group letters by place, ascending; within a place psi reads letters
    // descending, so reverse each group for the reverse column word
    let mut by_place: BTreeMap<i32, Vec<Letter>> = BTreeMap::new();
    for v in monomial.expanded() {
        by_place.entry(v.place.ord).or_default().push(v.letter);
    }
    let columns = shape.columns();
    if by_place.len() != columns.len() {
        return None;
    }
    let mut wprime = Vec::new();
    for (&j, group) in columns.iter().zip(by_place.iter()) {
        if *group.0 != j as i32 || group.1.len() != shape.column_rows(j).len() {
            return None;
        }
        let mut g = group.1.clone();
        g.sort();
        if g.iter().any(|l| l.ord < 0 || l.ord as usize >= alphabet.len()) {
            return None;
        }
        wprime.extend(g);
    }
    let t = straight_filling(&wprime, shape).ok()??;
    t.is_straight().then_some(t)
}

/// A character: exponent vectors over the alphabet with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CharacterPolynomial {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl CharacterPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_monomial(&mut self, exponents: Vec<u32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-express over a larger alphabet via a rank map.
    pub fn lift(&self, map: &[Option<usize>], target_len: usize) -> CharacterPolynomial {
        let mut out = CharacterPolynomial::zero();
        for (exps, c) in &self.terms {
            let mut lifted = vec![0u32; target_len];
            for (old, &e) in exps.iter().enumerate() {
                if e > 0 {
                    let new = map[old].expect("exponent on a removed letter");
                    lifted[new] = e;
                }
            }
            out.add_monomial(lifted, c.clone());
        }
        out
    }
}

/// The doubly flagged character: one monomial per doubly flagged straight
/// tableau, recording letter multiplicities.
pub fn character(
    shape: &RowConvexShape,
    alphabet: &Alphabet,
    lower: Option<&Flag>,
    upper: Option<&Flag>,
) -> Result<CharacterPolynomial> {
    let mut out = CharacterPolynomial::zero();
    if alphabet.is_empty() {
        return Ok(out);
    }
    if shape.n_rows() == 0 {
        out.add_monomial(vec![0; alphabet.len()], BigInt::one());
        return Ok(out);
    }
    let g = match lower {
        Some(g) => g.clone(),
        None => Flag::trivial_lower(alphabet, shape),
    };
    let f = match upper {
        Some(f) => f.clone(),
        None => Flag::trivial_upper(alphabet, shape),
    };
    for t in enumerate_straight(shape, alphabet, Some((&g, &f)))? {
        let mut exps = vec![0u32; alphabet.len()];
        for l in t.letters() {
            exps[l.ord as usize] += 1;
        }
        out.add_monomial(exps, BigInt::one());
    }
    Ok(out)
}

/// Exact rank of the span of a family of polynomials, by Gaussian
/// elimination over the rationals.
pub fn rank_of_span(polys: &[Polynomial]) -> usize {
    let mut basis: Vec<(Monomial, Polynomial)> = Vec::new();
    let order = DiagonalOrder::default();
    'outer: for p in polys {
        let mut rest = p.clone();
        loop {
            if rest.is_zero() {
                continue 'outer;
            }
            let (_, init) = initial_monomial(&rest, &order).expect("nonzero");
            if let Some((_, pivot)) = basis.iter().find(|(m, _)| *m == init) {
                let ratio = rest.coeff(&init) / pivot.coeff(&init);
                rest = rest.sub(&pivot.scale(&ratio));
            } else {
                basis.push((init, rest));
                continue 'outer;
            }
        }
    }
    basis.len()
}
