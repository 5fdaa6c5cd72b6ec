//! The ring generated by the polynomials of all tableaux of a fixed shape:
//! interleaving, the tableau-variable term order, degree-2 Groebner
//! relations, and subduction against the straight generators.
//!
//! Everything here works over all-negative alphabets, where the letterplace
//! algebra is a commutative polynomial ring.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::letterplace::{initial_monomial, tableau_to_polynomial, DiagonalOrder, Monomial, Polynomial};
use crate::shape::RowConvexShape;
use crate::straighten::Straightener;
use crate::tableau::{enumerate_straight, straight_filling, Tableau, WordVariant};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Alternate the rows of two same-shape tableaux, top row of `t` first. The
/// result lives on the doubled shape.
pub fn interleave(t: &Tableau, u: &Tableau) -> Result<Tableau> {
    if t.shape() != u.shape() {
        return Err(Error::ShapeMismatch);
    }
    let shape = t.shape().power(2);
    let mut rows = Vec::with_capacity(2 * t.shape().n_rows());
    for i in 0..t.shape().n_rows() {
        rows.push(t.row(i).to_vec());
        rows.push(u.row(i).to_vec());
    }
    Tableau::new(shape, rows)
}

/// Alternate `k` tableaux row block by row block.
pub fn interleave_many(factors: &[Tableau]) -> Result<Tableau> {
    let first = factors.first().ok_or(Error::ShapeMismatch)?;
    if factors.iter().any(|f| f.shape() != first.shape()) {
        return Err(Error::ShapeMismatch);
    }
    let shape = first.shape().power(factors.len());
    let mut rows = Vec::new();
    for i in 0..first.shape().n_rows() {
        for f in factors {
            rows.push(f.row(i).to_vec());
        }
    }
    Tableau::new(shape, rows)
}

/// Split a tableau on the `k`-fold power of `base` back into its factors.
pub fn split_interleave(t: &Tableau, base: &RowConvexShape, k: usize) -> Result<Vec<Tableau>> {
    if t.shape() != &base.power(k) {
        return Err(Error::ShapeMismatch);
    }
    let mut factors = Vec::with_capacity(k);
    for f in 0..k {
        let rows = (0..base.n_rows())
            .map(|i| t.row(i * k + f).to_vec())
            .collect();
        factors.push(Tableau::new(base.clone(), rows)?);
    }
    Ok(factors)
}

/// A product of straight tableaux of a common shape, kept sorted ascending
/// in the degree-one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauMonomial {
    factors: Vec<Tableau>,
}

impl TableauMonomial {
    pub fn new(mut factors: Vec<Tableau>) -> Self {
        factors.sort_by(Self::factor_cmp);
        TableauMonomial { factors }
    }

    pub fn factors(&self) -> &[Tableau] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Degree-one order: plain column word, full tableau as a tiebreak.
    fn factor_cmp(a: &Tableau, b: &Tableau) -> Ordering {
        crate::tableau::word_lex_cmp(
            &a.column_word(WordVariant::Plain),
            &b.column_word(WordVariant::Plain),
        )
        .then_with(|| a.cmp(b))
    }

    /// Column `i` of a factor, bottom to top.
    fn column_read(t: &Tableau, column: u32) -> Vec<Letter> {
        let mut col: Vec<Letter> = t.column(column).into_iter().map(|(_, l)| l).collect();
        col.reverse();
        col
    }

    /// The graded comparison: degree first, then the columns of the factors
    /// interleaved from the last factor to the first, column by column.
    pub fn order_cmp(&self, other: &TableauMonomial) -> Ordering {
        if self.degree() != other.degree() {
            return self.degree().cmp(&other.degree());
        }
        let key = |m: &TableauMonomial| -> Vec<Letter> {
            let mut out = Vec::new();
            let max_col = m
                .factors
                .iter()
                .map(|t| t.shape().max_column())
                .max()
                .unwrap_or(0);
            for column in 1..=max_col {
                for t in m.factors.iter().rev() {
                    out.extend(Self::column_read(t, column));
                }
            }
            out
        };
        crate::tableau::word_lex_cmp(&key(self), &key(other))
    }

    pub fn expand(&self) -> Polynomial {
        let mut out = Polynomial::one();
        for t in &self.factors {
            out = out.mul(&tableau_to_polynomial(t));
        }
        out
    }
}

impl PartialOrd for TableauMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TableauMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_cmp(other)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

/// A degree-2 relation: the lead monomial minus a combination of products.
#[derive(Debug, Clone)]
pub struct QuadraticRelation {
    pub lead: TableauMonomial,
    pub tail: Vec<(BigInt, TableauMonomial)>,
}

impl QuadraticRelation {
    /// The relation's image under tableau -> polynomial; zero for a valid
    /// relation.
    pub fn image(&self) -> Polynomial {
        let mut out = self.lead.expand();
        for (c, m) in &self.tail {
            out = out.sub(&m.expand().scale(&BigRational::from_integer(c.clone())));
        }
        out
    }
}

fn require_all_minus(alphabet: &Alphabet) -> Result<()> {
    if alphabet.all_minus() {
        Ok(())
    } else {
        Err(Error::MixedSignUnsupported)
    }
}

/// Degree-2 Groebner relations: for every ordered pair of straight tableaux
/// whose stacked row pair (i, j) fails to be straight, exchange the two rows
/// and emit `T'.T'' - sum beta (T'[i -> v]).(T''[j -> w])`. With
/// `full_family`, every admissible marking is used instead of only the one
/// the row straightening picks.
pub fn groebner_relations_deg2(
    shape: &RowConvexShape,
    alphabet: &Alphabet,
    full_family: bool,
) -> Result<Vec<QuadraticRelation>> {
    require_all_minus(alphabet)?;
    let straight = enumerate_straight(shape, alphabet, None)?;
    let mut straightener = Straightener::new();
    let mut out = Vec::new();
    for t1 in &straight {
        for t2 in &straight {
            for i in 0..shape.n_rows() {
                for j in i..shape.n_rows() {
                    let pair_shape = RowConvexShape::from_sorted_rows_unchecked(vec![
                        shape.row(i),
                        shape.row(j),
                    ]);
                    let pair = Tableau::new(
                        pair_shape.clone(),
                        vec![t1.row(i).to_vec(), t2.row(j).to_vec()],
                    )?;
                    if pair.is_straight() {
                        continue;
                    }
                    let expansions = if full_family {
                        all_markings(&mut straightener, &pair)?
                    } else {
                        vec![straightener.row_straighten(&pair)?]
                    };
                    for expansion in expansions {
                        let lead = TableauMonomial::new(vec![t1.clone(), t2.clone()]);
                        let mut tail_map: BTreeMap<TableauMonomial, BigInt> = BTreeMap::new();
                        for (s, c) in expansion.terms() {
                            let m = TableauMonomial::new(vec![
                                t1.with_row(i, s.row(0).to_vec()),
                                t2.with_row(j, s.row(1).to_vec()),
                            ]);
                            let entry = tail_map.entry(m).or_insert_with(BigInt::zero);
                            *entry += c;
                        }
                        tail_map.retain(|_, c| !c.is_zero());
                        // the exchange can hand a factor straight back
                        let lead_extra = tail_map.remove(&lead);
                        let lead_coeff = BigInt::one() - lead_extra.unwrap_or_else(BigInt::zero);
                        if lead_coeff.is_zero() && tail_map.is_empty() {
                            continue; // the exchange merely permutes the factors
                        }
                        if lead_coeff != BigInt::one() {
                            return Err(Error::OracleMismatch {
                                context: format!(
                                    "relation lead coefficient {lead_coeff} is not 1"
                                ),
                            });
                        }
                        let relation = QuadraticRelation {
                            lead,
                            tail: tail_map.into_iter().map(|(m, c)| (c, m)).collect(),
                        };
                        if !relation.image().is_zero() {
                            return Err(Error::OracleMismatch {
                                context: "relation image does not vanish".into(),
                            });
                        }
                        out.push(relation);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every admissible consecutive marking of a non-straight contained two-row
/// pair, as in the full, non-reduced relation family.
fn all_markings(
    straightener: &mut Straightener,
    pair: &Tableau,
) -> Result<Vec<crate::straighten::FormalTableauSum>> {
    let top = pair.shape().row(0);
    let bottom = pair.shape().row(1);
    if top.start > bottom.start {
        // skew pairs always go through the straightening choice
        return Ok(vec![straightener.row_straighten(pair)?]);
    }
    let mut out = Vec::new();
    for bottom_start in bottom.start..=bottom.end {
        for bottom_end in bottom_start..=bottom.end {
            for top_start in top.start..=top.end {
                let spec = crate::straighten::SyzygySpec {
                    top_start,
                    bottom_start,
                    bottom_end,
                };
                match straightener.syzygy(pair, spec) {
                    Ok(sum) => out.push(sum),
                    Err(Error::NonUnitPivot { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// The outcome of subducting a polynomial against the straight generators.
#[derive(Debug, Clone)]
pub enum Subduction {
    Member {
        /// Coefficients on products of straight tableaux.
        expression: Vec<(BigRational, TableauMonomial)>,
    },
    NotMember {
        /// The initial monomial no product of generators matches.
        blocking: Monomial,
    },
}

/// Classical subduction: repeatedly match the initial monomial of `p` with
/// the product of initial monomials of straight tableaux, recovered through
/// the straight filling of the power shape, and subtract.
pub fn sagbi_subduct(
    p: &Polynomial,
    shape: &RowConvexShape,
    alphabet: &Alphabet,
) -> Result<Subduction> {
    require_all_minus(alphabet)?;
    let order = DiagonalOrder::default();
    let cell_count = shape.n_cells();
    let degrees: Vec<u32> = p.terms().map(|(m, _)| m.degree()).collect();
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NotHomogeneous);
    }
    let mut rest = p.clone();
    let mut expression = Vec::new();
    while !rest.is_zero() {
        let (coeff, init) = initial_monomial(&rest, &order)?;
        let degree = init.degree() as usize;
        if degree % cell_count != 0 {
            return Ok(Subduction::NotMember { blocking: init });
        }
        let k = degree / cell_count;
        let power = shape.power(k);
        let Some(candidate) = straight_on_power(&init, &power, alphabet) else {
            return Ok(Subduction::NotMember { blocking: init });
        };
        let factors = split_interleave(&candidate, shape, k)?;
        debug_assert!(factors.iter().all(|f| f.is_straight()));
        let monomial = TableauMonomial::new(factors);
        let product = monomial.expand();
        let (pivot_coeff, pivot) = initial_monomial(&product, &order)?;
        if pivot != init {
            return Ok(Subduction::NotMember { blocking: init });
        }
        let scale = coeff / pivot_coeff;
        rest = rest.sub(&product.scale(&scale));
        expression.push((scale, monomial));
    }
    Ok(Subduction::Member { expression })
}

/// The straight tableau on `power` whose pivot is `init`, when one exists.
fn straight_on_power(
    init: &Monomial,
    power: &RowConvexShape,
    alphabet: &Alphabet,
) -> Option<Tableau> {
    let mut by_place: BTreeMap<i32, Vec<Letter>> = BTreeMap::new();
    for v in init.expanded() {
        by_place.entry(v.place.ord).or_default().push(v.letter);
    }
    let columns = power.columns();
    if by_place.len() != columns.len() {
        return None;
    }
    let mut wprime = Vec::new();
    for (&j, (place, group)) in columns.iter().zip(by_place.iter()) {
        if *place != j as i32 || group.len() != power.column_rows(j).len() {
            return None;
        }
        let mut g = group.clone();
        g.sort();
        if g.iter()
            .any(|l| l.ord < 0 || l.ord as usize >= alphabet.len())
        {
            return None;
        }
        wprime.extend(g);
    }
    let t = straight_filling(&wprime, power).ok()??;
    t.is_straight().then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::make_shape;

    fn minus_alphabet(n: usize) -> Alphabet {
        let spec: Vec<String> = (1..=n).map(|i| format!("{i}-")).collect();
        Alphabet::parse(&spec.join(",")).unwrap()
    }

    fn tab(shape: &RowConvexShape, rows: &[&[usize]], alphabet: &Alphabet) -> Tableau {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&o| alphabet.letter(o)).collect())
            .collect();
        Tableau::new(shape.clone(), rows).unwrap()
    }

    #[test]
    fn interleave_of_single_rows_stacks_them() {
        let (shape, _) = make_shape(&[(1, 2)]).unwrap();
        let a = minus_alphabet(3);
        let t = tab(&shape, &[&[0, 1]], &a);
        let d = interleave(&t, &t).unwrap();
        assert_eq!(d.shape(), &shape.power(2));
        assert_eq!(d.row(0), d.row(1));
    }

    #[test]
    fn interleave_splits_back_into_its_factors() {
        let (shape, _) = make_shape(&[(1, 2), (1, 1)]).unwrap();
        let a = minus_alphabet(3);
        let t1 = tab(&shape, &[&[0, 1], &[1]], &a);
        let t2 = tab(&shape, &[&[0, 2], &[2]], &a);
        let d = interleave(&t1, &t2).unwrap();
        assert_eq!(
            split_interleave(&d, &shape, 2).unwrap(),
            vec![t1.clone(), t2.clone()]
        );
        let many = interleave_many(&[t1.clone(), t2.clone(), t1.clone()]).unwrap();
        assert_eq!(
            split_interleave(&many, &shape, 3).unwrap(),
            vec![t1.clone(), t2, t1]
        );
    }

    #[test]
    fn single_cell_pairs_emit_no_relations() {
        let (shape, _) = make_shape(&[(1, 1)]).unwrap();
        let a = minus_alphabet(2);
        // stacking x over y with x > y merely swaps the factors, so the
        // exchange is the trivial relation and nothing is emitted
        let relations = groebner_relations_deg2(&shape, &a, false).unwrap();
        assert!(relations.is_empty());
    }

    #[test]
    fn relations_vanish_under_expansion_and_lead_with_the_pair() {
        let (shape, _) = make_shape(&[(1, 2), (1, 1)]).unwrap();
        let a = minus_alphabet(3);
        let relations = groebner_relations_deg2(&shape, &a, false).unwrap();
        assert!(!relations.is_empty());
        for r in &relations {
            assert!(r.image().is_zero());
            for (_, m) in &r.tail {
                assert_eq!(
                    r.lead.order_cmp(m),
                    Ordering::Less,
                    "the lead is the initial term"
                );
            }
        }
    }

    #[test]
    fn standard_monomials_are_the_straight_interleaves() {
        let (shape, _) = make_shape(&[(1, 2), (1, 1)]).unwrap();
        let a = minus_alphabet(3);
        let straight = enumerate_straight(&shape, &a, None).unwrap();
        let relations = groebner_relations_deg2(&shape, &a, false).unwrap();
        let leads: Vec<&TableauMonomial> = relations.iter().map(|r| &r.lead).collect();
        for t1 in &straight {
            for t2 in &straight {
                let monomial = TableauMonomial::new(vec![t1.clone(), t2.clone()]);
                let sorted = interleave_many(monomial.factors()).unwrap();
                let is_standard = !leads.contains(&&monomial);
                assert_eq!(sorted.is_straight(), is_standard, "pair {t1:?}, {t2:?}");
            }
        }
    }

    #[test]
    fn subduction_expresses_products_of_straight_generators() {
        let (shape, _) = make_shape(&[(1, 2), (1, 1)]).unwrap();
        let a = minus_alphabet(2);
        let straight = enumerate_straight(&shape, &a, None).unwrap();
        for t1 in &straight {
            for t2 in &straight {
                let p = tableau_to_polynomial(t1).mul(&tableau_to_polynomial(t2));
                match sagbi_subduct(&p, &shape, &a).unwrap() {
                    Subduction::Member { expression } => {
                        let mut check = Polynomial::zero();
                        for (c, m) in &expression {
                            check = check.add(&m.expand().scale(c));
                        }
                        assert_eq!(check, p);
                    }
                    Subduction::NotMember { blocking } => {
                        panic!("product of generators rejected at {blocking:?}")
                    }
                }
            }
        }
    }

    #[test]
    fn subduction_of_a_single_generator_is_itself() {
        let (shape, _) = make_shape(&[(1, 2), (1, 1)]).unwrap();
        let a = minus_alphabet(2);
        for t in enumerate_straight(&shape, &a, None).unwrap() {
            let p = tableau_to_polynomial(&t);
            match sagbi_subduct(&p, &shape, &a).unwrap() {
                Subduction::Member { expression } => {
                    assert_eq!(expression.len(), 1);
                    assert_eq!(expression[0].1.factors(), &[t.clone()]);
                    assert_eq!(expression[0].0, BigRational::one());
                }
                Subduction::NotMember { .. } => panic!("generator rejected"),
            }
        }
    }

    #[test]
    fn subduction_rejects_degree_obstructions() {
        let (shape, _) = make_shape(&[(1, 2)]).unwrap();
        let a = minus_alphabet(2);
        let p = Polynomial::variable(crate::letterplace::LetterPlace::new(
            a.letter(0),
            crate::alphabet::minus_place(1),
        ));
        match sagbi_subduct(&p, &shape, &a).unwrap() {
            Subduction::NotMember { blocking } => assert_eq!(blocking.degree(), 1),
            Subduction::Member { .. } => panic!("degree-1 element cannot be a member"),
        }
        let inhomogeneous = p.add(&p.mul(&p));
        assert!(matches!(
            sagbi_subduct(&inhomogeneous, &shape, &a),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn mixed_alphabets_are_rejected() {
        let (shape, _) = make_shape(&[(1, 1)]).unwrap();
        let ab = Alphabet::parse("a+,b-").unwrap();
        assert!(matches!(
            groebner_relations_deg2(&shape, &ab, false),
            Err(Error::MixedSignUnsupported)
        ));
    }
}
