//! The letterplace superalgebra over exact rationals.
//!
//! Variables are pairs `(letter|place)` of parity `|letter| + |place|`. Odd
//! variables anticommute and square to zero; even variables commute. The
//! integral form is carried by the divided-powers basis `M / c(M)!` where
//! `c(M)!` multiplies the factorials of the exponents of the variables whose
//! letter and place are both positive; negative-negative variables generate
//! an ordinary symmetric algebra over the integers.

use crate::alphabet::{minus_place, Letter};
use crate::error::{Error, Result};
use crate::tableau::Tableau;
use itertools::Itertools;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LetterPlace {
    pub letter: Letter,
    pub place: Letter,
}

impl LetterPlace {
    pub fn new(letter: Letter, place: Letter) -> Self {
        LetterPlace { letter, place }
    }

    /// Parity of the variable: odd iff exactly one of letter, place is odd.
    pub fn is_odd(&self) -> bool {
        self.letter.is_odd() != self.place.is_odd()
    }
}

/// Canonical storage order: places ascending; within a positive place,
/// letters ascending; within a negative place, letters descending.
fn storage_cmp(a: &LetterPlace, b: &LetterPlace) -> Ordering {
    match a.place.cmp(&b.place) {
        Ordering::Equal => {
            if a.place.is_odd() {
                b.letter.cmp(&a.letter)
            } else {
                a.letter.cmp(&b.letter)
            }
        }
        other => other,
    }
}

/// Default diagonal order on variables: `(i|j) > (i'|j')` when `j < j'`, or
/// `j = j'` and `i > i'`.
fn default_var_cmp(a: &LetterPlace, b: &LetterPlace) -> Ordering {
    match b.place.cmp(&a.place) {
        Ordering::Equal => a.letter.cmp(&b.letter),
        other => other,
    }
}

/// A sorted monomial with exponents. Odd variables always carry exponent 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(LetterPlace, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn factors(&self) -> &[(LetterPlace, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Every variable with multiplicity, in storage order.
    pub fn expanded(&self) -> Vec<LetterPlace> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for &(v, e) in &self.factors {
            out.extend(std::iter::repeat(v).take(e as usize));
        }
        out
    }

    /// `c(M)!`: the product of exponent factorials over divided-powers
    /// variables, i.e. those with both letter and place positive. Variables
    /// with both sides negative generate a symmetric algebra over the
    /// integers and contribute nothing.
    pub fn divided_factorial(&self) -> BigInt {
        let mut out = BigInt::one();
        for &(v, e) in &self.factors {
            if !v.letter.is_odd() && !v.place.is_odd() {
                out *= factorial(e);
            }
        }
        out
    }
}

/// Sum of odd-odd inversions of `factors` needed to reach storage order; the
/// result is `None` when an odd variable repeats.
pub fn normalize_monomial(factors: &[LetterPlace]) -> Option<(i64, Monomial)> {
    let mut v = factors.to_vec();
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut k = i;
        while k > 0 && storage_cmp(&v[k - 1], &v[k]) == Ordering::Greater {
            if v[k - 1].is_odd() && v[k].is_odd() {
                sign = -sign;
            }
            v.swap(k - 1, k);
            k -= 1;
        }
    }
    let mut out: Vec<(LetterPlace, u32)> = Vec::new();
    for var in v {
        match out.last_mut() {
            Some((prev, e)) if *prev == var => {
                if var.is_odd() {
                    return None;
                }
                *e += 1;
            }
            _ => out.push((var, 1)),
        }
    }
    Some((sign, Monomial { factors: out }))
}

/// A polynomial with exact rational coefficients over sorted monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::from_term(Monomial::one(), BigRational::one())
    }

    pub fn from_term(monomial: Monomial, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Polynomial { terms }
    }

    pub fn variable(v: LetterPlace) -> Self {
        Polynomial::from_term(
            Monomial {
                factors: vec![(v, 1)],
            },
            BigRational::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial);
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

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * s))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let left = m.expanded();
            for (n, d) in other.terms() {
                let mut factors = left.clone();
                factors.extend(n.expanded());
                if let Some((sign, prod)) = normalize_monomial(&factors) {
                    out.add_term(prod, c * d * BigRational::from_integer(sign.into()));
                }
            }
        }
        out
    }

    /// True when every coefficient times `c(M)!` is an integer.
    pub fn integral_divided_powers(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            (c * BigRational::from_integer(m.divided_factorial()))
                .is_integer()
        })
    }

    /// Parity of the polynomial when homogeneous in the Z_2 grading.
    pub fn parity(&self) -> Option<bool> {
        let mut parities = self.terms.keys().map(|m| {
            m.expanded().iter().filter(|v| v.is_odd()).count() % 2 == 1
        });
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `c(w)!` of a word: the product over positive letters of the factorial of
/// their multiplicities.
pub fn c_factorial(word: &[Letter]) -> BigInt {
    let mut counts: BTreeMap<Letter, u32> = BTreeMap::new();
    for &l in word {
        if !l.is_odd() {
            *counts.entry(l).or_insert(0) += 1;
        }
    }
    counts.values().fold(BigInt::one(), |acc, &e| acc * factorial(e))
}

/// The biproduct `(w|v)`: the signed sum over all ways of matching the
/// letters of `w` against the places of `v`.
pub fn biproduct(w: &[Letter], v: &[Letter]) -> Result<Polynomial> {
    if w.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: v.len(),
        });
    }
    let k = w.len();
    let mut out = Polynomial::zero();
    for sigma in (0..k).permutations(k) {
        // inverse[i] = position of w_i in the product
        let mut inverse = vec![0usize; k];
        for (pos, &i) in sigma.iter().enumerate() {
            inverse[i] = pos;
        }
        let mut n: u64 = 0;
        for i in 0..k {
            for j in (i + 1)..k {
                if w[i].is_odd() && w[j].is_odd() && inverse[i] > inverse[j] {
                    n += 1;
                }
            }
        }
        for i in 0..k {
            for j in 0..i {
                if w[sigma[i]].is_odd() && v[j].is_odd() {
                    n += 1;
                }
            }
        }
        let factors: Vec<LetterPlace> = (0..k)
            .map(|l| LetterPlace::new(w[sigma[l]], v[l]))
            .collect();
        if let Some((norm_sign, m)) = normalize_monomial(&factors) {
            let sign = if n % 2 == 0 { norm_sign } else { -norm_sign };
            out.add_term(m, BigRational::from_integer(sign.into()));
        }
    }
    Ok(out)
}

/// `Tab(w|v)`: the biproduct scaled by `1/(c(w)! c(v)!)` and the sign that
/// makes diagonal divided-powers coefficients come out at +1 for sorted
/// words.
pub fn tab(w: &[Letter], v: &[Letter]) -> Result<Polynomial> {
    let mut n: u64 = 0;
    for i in 0..w.len() {
        for j in 0..i {
            if w[i].is_odd() && j < v.len() && !v[j].is_odd() {
                n += 1;
            }
        }
    }
    let p = biproduct(w, v)?;
    let denom = c_factorial(w) * c_factorial(v);
    let mut scale = BigRational::new(BigInt::one(), denom);
    if n % 2 == 1 {
        scale = -scale;
    }
    Ok(p.scale(&scale))
}

/// `[T]`: the product over rows of `Tab(row | row of the Deruyts tableau)`,
/// top row first.
pub fn tableau_to_polynomial(t: &Tableau) -> Polynomial {
    let mut out = Polynomial::one();
    for (i, row) in t.rows().iter().enumerate() {
        let places: Vec<Letter> = t.shape().row(i).columns().map(minus_place).collect();
        let row_poly = tab(row, &places).expect("row and its places have equal length");
        out = out.mul(&row_poly);
    }
    out
}

/// A diagonal term order. The default compares the largest variable held to
/// a different power; more of a larger variable makes a monomial larger.
#[derive(Clone)]
pub struct DiagonalOrder {
    var_cmp: fn(&LetterPlace, &LetterPlace) -> Ordering,
}

impl Default for DiagonalOrder {
    fn default() -> Self {
        DiagonalOrder {
            var_cmp: default_var_cmp,
        }
    }
}

impl fmt::Debug for DiagonalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("DiagonalOrder")
    }
}

impl DiagonalOrder {
    pub fn with_comparator(var_cmp: fn(&LetterPlace, &LetterPlace) -> Ordering) -> Self {
        DiagonalOrder { var_cmp }
    }

    pub fn compare_vars(&self, a: &LetterPlace, b: &LetterPlace) -> Ordering {
        (self.var_cmp)(a, b)
    }

    /// Compare monomials: walk variables from largest to smallest and decide
    /// at the first exponent difference.
    pub fn compare(&self, m: &Monomial, n: &Monomial) -> Ordering {
        let mut vars: Vec<LetterPlace> = m
            .factors()
            .iter()
            .chain(n.factors().iter())
            .map(|&(v, _)| v)
            .collect();
        vars.sort_by(|a, b| (self.var_cmp)(b, a));
        vars.dedup();
        let exp = |mm: &Monomial, v: &LetterPlace| -> u32 {
            mm.factors()
                .iter()
                .find(|(w, _)| w == v)
                .map(|&(_, e)| e)
                .unwrap_or(0)
        };
        for v in &vars {
            let (em, en) = (exp(m, v), exp(n, v));
            match em.cmp(&en) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

pub fn compare_diag(m: &Monomial, n: &Monomial, order: &DiagonalOrder) -> Ordering {
    order.compare(m, n)
}

/// The smallest monomial of `p` together with its divided-powers coefficient
/// `coeff(M) * c(M)!`.
pub fn initial_monomial(p: &Polynomial, order: &DiagonalOrder) -> Result<(BigRational, Monomial)> {
    let mut best: Option<&Monomial> = None;
    for m in p.terms.keys() {
        best = Some(match best {
            None => m,
            Some(b) => {
                if order.compare(m, b) == Ordering::Less {
                    m
                } else {
                    b
                }
            }
        });
    }
    let m = best.ok_or(Error::ZeroPolynomial)?;
    let coeff = p.coeff(m) * BigRational::from_integer(m.divided_factorial());
    Ok((coeff, m.clone()))
}

/// The letter word of a normalized monomial: variables read in descending
/// default order, i.e. places ascending and letters descending per place.
pub fn psi(m: &Monomial) -> Vec<Letter> {
    let mut vars = m.expanded();
    vars.sort_by(|a, b| default_var_cmp(b, a));
    vars.into_iter().map(|v| v.letter).collect()
}

/// The letter polarization `D_{a,b}`: the superderivation of sign
/// `|a| + |b|` with `D(c|p) = delta_{b,c} (a|p)`.
pub fn polarize(a: Letter, b: Letter, p: &Polynomial) -> Polynomial {
    let d_odd = a.is_odd() != b.is_odd();
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let vars = m.expanded();
        let mut prefix_odd = false;
        for (r, v) in vars.iter().enumerate() {
            if v.letter == b {
                let mut factors: Vec<LetterPlace> = Vec::with_capacity(vars.len());
                factors.extend_from_slice(&vars[..r]);
                factors.push(LetterPlace::new(a, v.place));
                factors.extend_from_slice(&vars[r + 1..]);
                if let Some((sign, prod)) = normalize_monomial(&factors) {
                    let mut coeff = c * BigRational::from_integer(sign.into());
                    if d_odd && prefix_odd {
                        coeff = -coeff;
                    }
                    out.add_term(prod, coeff);
                }
            }
            if v.is_odd() {
                prefix_odd = !prefix_odd;
            }
        }
    }
    out
}

/// Commutative cofactor determinant of the matrix `(w_i|v_j)`, an
/// independent oracle for all-minus biproducts.
pub fn determinant_oracle(w: &[Letter], v: &[Letter]) -> Polynomial {
    assert_eq!(w.len(), v.len());
    fn det(rows: &[Letter], cols: &[Letter]) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one();
        }
        let mut out = Polynomial::zero();
        for (r, &letter) in rows.iter().enumerate() {
            let minor_rows: Vec<Letter> = rows
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != r)
                .map(|(_, &l)| l)
                .collect();
            let sub = det(&minor_rows, &cols[1..]);
            let term = Polynomial::variable(LetterPlace::new(letter, cols[0])).mul(&sub);
            if r % 2 == 0 {
                out = out.add(&term);
            } else {
                out = out.sub(&term);
            }
        }
        out
    }
    det(w, v)
}

// --- JSON form ----------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct PolynomialJson(pub Vec<TermJson>);

#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<(String, String, u32)>,
}

/// Render places: the rank as a number with the sign suffix.
fn place_string(p: Letter) -> String {
    format!("{}{}", p.ord, p.parity.suffix())
}

fn parse_place(text: &str) -> Result<Letter> {
    let sl = crate::alphabet::parse_signed_letter(text)?;
    let ord: i32 = sl.symbol.parse().map_err(|_| Error::Parse {
        reason: format!("place {text:?} is not numeric"),
    })?;
    Ok(Letter::new(ord, sl.parity))
}

pub fn polynomial_to_json(p: &Polynomial, alphabet: &crate::alphabet::Alphabet) -> PolynomialJson {
    PolynomialJson(
        p.terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                monomial: m
                    .factors()
                    .iter()
                    .map(|&(v, e)| (alphabet.display(v.letter), place_string(v.place), e))
                    .collect(),
            })
            .collect(),
    )
}

pub fn polynomial_from_json(
    json: &PolynomialJson,
    alphabet: &crate::alphabet::Alphabet,
) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for term in &json.0 {
        let coeff: BigRational = term.coeff.parse().map_err(|_| Error::Parse {
            reason: format!("bad coefficient {:?}", term.coeff),
        })?;
        let mut factors = Vec::new();
        for (l, p, e) in &term.monomial {
            let letter = alphabet.lookup(l)?;
            let place = parse_place(p)?;
            factors.extend(std::iter::repeat(LetterPlace::new(letter, place)).take(*e as usize));
        }
        if let Some((sign, m)) = normalize_monomial(&factors) {
            out.add_term(m, coeff * BigRational::from_integer(sign.into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Parity};
    use crate::shape::make_shape;
    use crate::tableau::Tableau;
    use proptest::prelude::*;

    fn minus(n: i32) -> Letter {
        Letter::new(n, Parity::Minus)
    }

    fn plus(n: i32) -> Letter {
        Letter::new(n, Parity::Plus)
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn even_variables_commute() {
        let a = LetterPlace::new(minus(1), minus(1));
        let b = LetterPlace::new(minus(2), minus(1));
        let (s1, m1) = normalize_monomial(&[b, a]).unwrap();
        let (s2, m2) = normalize_monomial(&[a, b]).unwrap();
        assert_eq!(s1, 1);
        assert_eq!(s1, s2);
        assert_eq!(m1, m2);
    }

    #[test]
    fn odd_square_vanishes() {
        let v = LetterPlace::new(plus(0), minus(1));
        assert_eq!(normalize_monomial(&[v, v]), None);
        let p = Polynomial::variable(v);
        assert!(p.mul(&p).is_zero());
    }

    #[test]
    fn odd_odd_swap_flips_the_sign() {
        let a2 = LetterPlace::new(plus(0), minus(2));
        let b1 = LetterPlace::new(plus(1), minus(1));
        let (sign, m) = normalize_monomial(&[a2, b1]).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(m.factors()[0].0, b1);
        assert_eq!(m.factors()[1].0, a2);
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let p = biproduct(&[minus(1), minus(2)], &[minus(1), minus(2)]).unwrap();
        assert_eq!(p.mul(&Polynomial::one()), p);
    }

    #[test]
    fn even_case_distributes() {
        let a1 = Polynomial::variable(LetterPlace::new(minus(1), minus(1)));
        let b1 = Polynomial::variable(LetterPlace::new(minus(2), minus(1)));
        let a2 = Polynomial::variable(LetterPlace::new(minus(1), minus(2)));
        let sum = a1.add(&b1).mul(&a2);
        assert_eq!(sum.n_terms(), 2);
        assert!(sum.terms().all(|(_, c)| c == &int(1)));
    }

    #[test]
    fn biproduct_of_length_one_is_the_variable() {
        let p = biproduct(&[minus(3)], &[minus(1)]).unwrap();
        assert_eq!(p, Polynomial::variable(LetterPlace::new(minus(3), minus(1))));
    }

    #[test]
    fn all_minus_biproduct_matches_the_determinant_oracle() {
        // the three-letter row of the Schur module example
        let w = vec![minus(2), minus(3), minus(5)];
        let v = vec![minus(1), minus(3), minus(4)];
        let bp = biproduct(&w, &v).unwrap();
        let det = determinant_oracle(&w, &v);
        // (w|v) = (-1)^{k(k-1)/2} det for k = 3
        assert_eq!(bp, det.scale(&int(-1)));
        for k in 1..=4usize {
            let w: Vec<Letter> = (0..k as i32).map(minus).collect();
            let v: Vec<Letter> = (10..10 + k as i32).map(minus).collect();
            let bp = biproduct(&w, &v).unwrap();
            let mut det = determinant_oracle(&w, &v);
            if (k * (k - 1) / 2) % 2 == 1 {
                det = det.scale(&int(-1));
            }
            assert_eq!(bp, det, "k = {k}");
        }
    }

    #[test]
    fn biproduct_vanishes_on_repeated_minus_letters() {
        let p = biproduct(&[minus(1), minus(1)], &[minus(1), minus(2)]).unwrap();
        assert!(p.is_zero());
        let q = biproduct(&[minus(1), minus(2)], &[minus(3), minus(3)]).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn tab_diagonal_coefficient_is_one_for_sorted_words() {
        // both words <+-sorted ascending: diagonal divided-powers coefficient +1
        let w = vec![plus(0), plus(0), plus(1)];
        let v = vec![minus(1), minus(2), minus(3)];
        let t = tab(&w, &v).unwrap();
        let diag: Vec<LetterPlace> = w
            .iter()
            .zip(&v)
            .map(|(&l, &p)| LetterPlace::new(l, p))
            .collect();
        let (_, m) = normalize_monomial(&diag).unwrap();
        let c = t.coeff(&m) * BigRational::from_integer(m.divided_factorial());
        assert_eq!(c, int(1));
        assert!(t.integral_divided_powers());
    }

    #[test]
    fn tab_of_repeated_plus_letters_is_integral() {
        let t = tab(&[plus(0), plus(0)], &[minus(1), minus(2)]).unwrap();
        assert!(t.integral_divided_powers());
        assert_eq!(t.n_terms(), 1, "both expansion terms agree up to sign");
    }

    fn weyl_tableau(top: &[usize], bottom: usize) -> Tableau {
        let (shape, _) = make_shape(&[(1, 3), (2, 2)]).unwrap();
        let ab = Alphabet::parse("a+,b+").unwrap();
        Tableau::new(
            shape,
            vec![
                top.iter().map(|&i| ab.letter(i)).collect(),
                vec![ab.letter(bottom)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn repeated_letter_tableaux_vanish() {
        assert!(tableau_to_polynomial(&weyl_tableau(&[0, 0, 0], 0)).is_zero());
        assert!(tableau_to_polynomial(&weyl_tableau(&[1, 1, 1], 1)).is_zero());
        assert!(!tableau_to_polynomial(&weyl_tableau(&[0, 0, 0], 1)).is_zero());
    }

    #[test]
    fn single_cell_tableau_is_one_variable() {
        let (shape, _) = make_shape(&[(1, 1)]).unwrap();
        let ab = Alphabet::parse("a+").unwrap();
        let t = Tableau::new(shape, vec![vec![ab.letter(0)]]).unwrap();
        let p = tableau_to_polynomial(&t);
        assert_eq!(
            p,
            Polynomial::variable(LetterPlace::new(ab.letter(0), minus_place(1)))
        );
    }

    #[test]
    fn default_order_reproduces_the_printed_chain() {
        // letters 1- < 2-, places a+ < x-
        let (l1, l2) = (minus(1), minus(2));
        let (pa, px) = (plus(0), minus(1));
        let order = DiagonalOrder::default();
        let mono = |factors: &[LetterPlace]| normalize_monomial(factors).unwrap().1;
        let v2a = LetterPlace::new(l2, pa);
        let v1a = LetterPlace::new(l1, pa);
        let v2x = LetterPlace::new(l2, px);
        let v1x = LetterPlace::new(l1, px);
        assert_eq!(order.compare_vars(&v2a, &v1a), Ordering::Greater);
        assert_eq!(order.compare_vars(&v1a, &v2x), Ordering::Greater);
        assert_eq!(order.compare_vars(&v2x, &v1x), Ordering::Greater);
        let chain = vec![
            mono(&[v1x]),
            mono(&[v1x; 6]),
            mono(&[v2a, v1x, v1x, v2x]),
            mono(&[v2a, v2x, v2x, v1x]),
            mono(&[v2a, v1a, v1x, v1x]),
        ];
        for w in chain.windows(2) {
            assert_eq!(order.compare(&w[0], &w[1]), Ordering::Less);
        }
        assert_eq!(order.compare(&chain[2], &chain[2]), Ordering::Equal);
    }

    #[test]
    fn initial_monomial_of_weyl_basis_elements_is_a_unit() {
        let order = DiagonalOrder::default();
        let p = tableau_to_polynomial(&weyl_tableau(&[0, 0, 0], 1));
        let (c, m) = initial_monomial(&p, &order).unwrap();
        assert!(c == int(1) || c == int(-1));
        // pivot is (a|1)(a|2)(b|2)(a|3)
        let ab = Alphabet::parse("a+,b+").unwrap();
        let (a, b) = (ab.letter(0), ab.letter(1));
        let expect = normalize_monomial(&[
            LetterPlace::new(a, minus_place(1)),
            LetterPlace::new(a, minus_place(2)),
            LetterPlace::new(b, minus_place(2)),
            LetterPlace::new(a, minus_place(3)),
        ])
        .unwrap()
        .1;
        assert_eq!(m, expect);
    }

    #[test]
    fn psi_reads_the_modified_column_word_of_straight_tableaux() {
        use crate::tableau::{enumerate_straight, WordVariant};
        let (shape, _) = make_shape(&[(1, 3), (2, 2)]).unwrap();
        let ab = Alphabet::parse("a+,b+").unwrap();
        let order = DiagonalOrder::default();
        for t in enumerate_straight(&shape, &ab, None).unwrap() {
            let p = tableau_to_polynomial(&t);
            let (_, m) = initial_monomial(&p, &order).unwrap();
            assert_eq!(psi(&m), t.column_word(WordVariant::Modified));
        }
    }

    #[test]
    fn psi_of_a_single_variable_is_its_letter() {
        let m = normalize_monomial(&[LetterPlace::new(minus(7), minus(1))])
            .unwrap()
            .1;
        assert_eq!(psi(&m), vec![minus(7)]);
    }

    #[test]
    fn polarization_generator_rule() {
        let (a, b, c) = (minus(1), minus(2), minus(3));
        let bp = Polynomial::variable(LetterPlace::new(b, minus(1)));
        assert_eq!(
            polarize(a, b, &bp),
            Polynomial::variable(LetterPlace::new(a, minus(1)))
        );
        assert!(polarize(a, b, &Polynomial::variable(LetterPlace::new(c, minus(1)))).is_zero());
    }

    #[test]
    fn polarization_acts_as_a_first_order_operator_in_the_all_minus_case() {
        let (i, j) = (minus(1), minus(2));
        let jj = Polynomial::variable(LetterPlace::new(j, minus(1)))
            .mul(&Polynomial::variable(LetterPlace::new(j, minus(2))));
        let got = polarize(i, j, &jj);
        let want = Polynomial::variable(LetterPlace::new(i, minus(1)))
            .mul(&Polynomial::variable(LetterPlace::new(j, minus(2))))
            .add(
                &Polynomial::variable(LetterPlace::new(j, minus(1)))
                    .mul(&Polynomial::variable(LetterPlace::new(i, minus(2)))),
            );
        assert_eq!(got, want);
    }

    #[test]
    fn diagonal_property_on_sorted_biproducts() {
        let order = DiagonalOrder::default();
        let w: Vec<Letter> = vec![minus(1), minus(2), minus(3)];
        let v: Vec<Letter> = vec![minus(1), minus(2), minus(4)];
        let p = biproduct(&w, &v).unwrap();
        let (_, init) = initial_monomial(&p, &order).unwrap();
        let diag: Vec<LetterPlace> = w
            .iter()
            .zip(&v)
            .map(|(&l, &pl)| LetterPlace::new(l, pl))
            .collect();
        assert_eq!(init, normalize_monomial(&diag).unwrap().1);
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        (0..4i32, prop::bool::ANY).prop_map(|(ord, odd)| {
            Letter::new(ord, if odd { Parity::Minus } else { Parity::Plus })
        })
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(arb_letter(), 1..=max_len)
    }

    proptest! {
        #[test]
        fn variables_supercommute(a in arb_letter(), b in arb_letter(), p in 1..3i32, q in 1..3i32) {
            let x = LetterPlace::new(a, minus(p));
            let y = LetterPlace::new(b, minus(q));
            let px = Polynomial::variable(x);
            let py = Polynomial::variable(y);
            let xy = px.mul(&py);
            let yx = py.mul(&px);
            if x.is_odd() && y.is_odd() {
                prop_assert_eq!(xy, yx.scale(&int(-1)));
            } else {
                prop_assert_eq!(xy, yx);
            }
        }

        #[test]
        fn biproduct_is_antisymmetric_in_repeated_minus_letters(
            w in arb_word(4), pos in 0..4usize
        ) {
            // force a repeated minus letter somewhere
            let mut w = w;
            let dup = Letter::new(9, Parity::Minus);
            w.insert(pos.min(w.len()), dup);
            w.insert(pos.min(w.len()), dup);
            let v: Vec<Letter> = (1..=w.len() as i32).map(minus).collect();
            prop_assert!(biproduct(&w, &v).unwrap().is_zero());
        }

        #[test]
        fn superderivation_law(
            a in 0..3i32, b in 0..3i32,
            w1 in arb_word(2), w2 in arb_word(2)
        ) {
            let (a, b) = (minus(a), minus(b));
            let mk = |word: &[Letter]| -> Polynomial {
                let v: Vec<Letter> = (1..=word.len() as i32).map(minus).collect();
                biproduct(word, &v).unwrap()
            };
            let p = mk(&w1);
            let q = mk(&w2);
            if let Some(p_odd) = p.parity() {
                let lhs = polarize(a, b, &p.mul(&q));
                let mut rhs = polarize(a, b, &p).mul(&q);
                let d_odd = a.is_odd() != b.is_odd();
                let cross = p.mul(&polarize(a, b, &q));
                rhs = if d_odd && p_odd { rhs.sub(&cross) } else { rhs.add(&cross) };
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn json_round_trip(w in arb_word(3)) {
            let alphabet = Alphabet::parse("a+,b+,c-,d-").unwrap();
            let w: Vec<Letter> = w.iter().map(|l| alphabet.letter((l.ord as usize) % 4)).collect();
            let v: Vec<Letter> = (1..=w.len() as i32).map(minus).collect();
            let p = tab(&w, &v).unwrap();
            let json = polynomial_to_json(&p, &alphabet);
            let back = polynomial_from_json(&json, &alphabet).unwrap();
            prop_assert_eq!(p, back);
        }
    }

    #[test]
    fn bilinearity_is_respected_under_permuting_equal_letters() {
        // permuting equal letters inside w changes nothing
        let w1 = vec![plus(0), plus(0), plus(1)];
        let v = vec![minus(1), minus(2), minus(3)];
        let p1 = biproduct(&w1, &v).unwrap();
        let w2 = vec![plus(0), plus(1), plus(0)];
        let p2 = biproduct(&w2, &v).unwrap();
        assert_eq!(p1, p2);
    }
}
