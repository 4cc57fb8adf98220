//! Schreier bases modulo a graded ideal, free right-module bases of the
//! ideal, and decomposition of ideal elements over such a basis.
//!
//! A word is reducible when it is the pivot of the ideal's component at its
//! own multidegree; the irreducible words of each degree project to a basis
//! of the quotient. The set of irreducible words is closed under taking
//! prefixes and under the index shift x_i -> x_{i+1}, and both closures are
//! asserted on every constructed basis.
//!
//! Basis elements of the ideal as a free right module come from minimal
//! reducible words: u reducible with every proper prefix irreducible yields
//! e_u = u - nf(u). For a proper graded ideal these are exactly the words
//! s*x_i with s irreducible; if the ideal contains 1 the empty word is the
//! single minimal reducible word and the basis is {1}.

use crate::error::{EngineError, Result};
use crate::ideal::ProductIdeal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use std::collections::BTreeMap;
use std::fmt;

/// Irreducible words per degree, over a fixed variable window.
#[derive(Debug, Clone)]
pub struct SchreierBasis {
    window: u32,
    /// degrees[m] = irreducible words of degree m, ascending.
    degrees: Vec<Vec<Monomial>>,
}

impl SchreierBasis {
    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn bound(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    pub fn at_degree(&self, m: u32) -> &[Monomial] {
        &self.degrees[m as usize]
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let d = m.degree() as usize;
        d < self.degrees.len() && self.degrees[d].binary_search(m).is_ok()
    }
}

fn is_reducible(ideal: &ProductIdeal, word: &Monomial) -> bool {
    ideal.component(&word.multidegree()).has_pivot(word)
}

/// Irreducible words of each degree <= bound over x1..window.
pub fn schreier_basis(ideal: &ProductIdeal, bound: u32, window: u32) -> Result<SchreierBasis> {
    ideal.field().require_char_above(bound)?;
    let mut degrees = Vec::with_capacity(bound as usize + 1);
    for m in 0..=bound {
        let irreducible: Vec<Monomial> = monomials_of_degree(m, window)
            .into_iter()
            .filter(|u| !is_reducible(ideal, u))
            .collect();
        degrees.push(irreducible);
    }
    let basis = SchreierBasis { window, degrees };
    assert_prefix_closed(&basis);
    assert_shift_stable(&basis);
    Ok(basis)
}

fn assert_prefix_closed(basis: &SchreierBasis) {
    for degree in 1..=basis.bound() {
        for u in basis.at_degree(degree) {
            let head = u.prefix(u.degree() as usize - 1);
            assert!(
                basis.contains(&head),
                "prefix {head} of irreducible {u} is reducible"
            );
        }
    }
}

fn assert_shift_stable(basis: &SchreierBasis) {
    for degree in 0..=basis.bound() {
        for u in basis.at_degree(degree) {
            if u.max_var() + 1 > basis.window {
                continue;
            }
            let shifted = u.shift_up();
            assert!(
                basis.contains(&shifted),
                "shift {shifted} of irreducible {u} is reducible"
            );
        }
    }
}

/// One free-module basis element e = lead - reduction, an element of the
/// ideal whose reduction is supported on irreducible words of the same
/// multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasisElement {
    lead: Monomial,
    reduction: Polynomial,
    value: Polynomial,
}

impl ModuleBasisElement {
    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn reduction(&self) -> &Polynomial {
        &self.reduction
    }

    pub fn value(&self) -> &Polynomial {
        &self.value
    }
}

impl fmt::Display for ModuleBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The free right-module basis of an ideal, up to a degree bound.
#[derive(Debug, Clone)]
pub struct FreeModuleBasis {
    window: u32,
    bound: u32,
    elements: Vec<ModuleBasisElement>,
    by_lead: BTreeMap<Monomial, usize>,
}

impl FreeModuleBasis {
    pub fn elements(&self) -> &[ModuleBasisElement] {
        &self.elements
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn index_of_lead(&self, lead: &Monomial) -> Option<usize> {
        self.by_lead.get(lead).copied()
    }
}

/// Basis elements with lead degree <= bound over x1..window.
pub fn free_module_basis(ideal: &ProductIdeal, bound: u32, window: u32) -> Result<FreeModuleBasis> {
    ideal.field().require_char_above(bound)?;
    let field = ideal.field();
    let mut elements = Vec::new();
    let mut by_lead = BTreeMap::new();
    for degree in 0..=bound {
        for u in monomials_of_degree(degree, window) {
            if !is_reducible(ideal, &u) {
                continue;
            }
            if degree > 0 {
                let head = u.prefix(degree as usize - 1);
                if is_reducible(ideal, &head) {
                    continue; // not minimal
                }
            }
            let nf = ideal
                .component(&u.multidegree())
                .reduce(&Polynomial::monomial(u.clone(), field.one()));
            let value = Polynomial::monomial(u.clone(), field.one()).sub(&nf);
            by_lead.insert(u.clone(), elements.len());
            elements.push(ModuleBasisElement {
                lead: u,
                reduction: nf,
                value,
            });
        }
    }
    let basis = FreeModuleBasis {
        window,
        bound,
        elements,
        by_lead,
    };
    assert_basis_shift_stable(&basis);
    Ok(basis)
}

fn assert_basis_shift_stable(basis: &FreeModuleBasis) {
    for e in &basis.elements {
        let reach = e.lead.max_var().max(e.reduction.max_var());
        if reach + 1 > basis.window || e.lead.is_one() {
            continue;
        }
        let shifted_lead = e.lead.shift_up();
        let Some(k) = basis.index_of_lead(&shifted_lead) else {
            panic!("shift of basis lead {} is not a basis lead", e.lead);
        };
        let shifted_reduction = e.reduction.rename(|i| i + 1);
        assert!(
            basis.elements[k].reduction == shifted_reduction,
            "shift of basis element at {} is not the basis element at {}",
            e.lead,
            shifted_lead
        );
    }
}

/// Right coefficients of an ideal element over a free-module basis:
/// z = sum of value(e) * coefficient(e).
#[derive(Debug, Clone, Default)]
pub struct Decomposition {
    /// (basis index, coefficient), sparse, ascending by index.
    coefficients: Vec<(usize, Polynomial)>,
}

impl Decomposition {
    pub fn coefficients(&self) -> &[(usize, Polynomial)] {
        &self.coefficients
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn reconstruct(&self, basis: &FreeModuleBasis) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, f) in &self.coefficients {
            out = out.add(&basis.elements()[*k].value().mul(f));
        }
        out
    }
}

/// Rewrite z to zero over the basis, accumulating right coefficients.
///
/// Each step takes the leading word u of the remainder, finds its shortest
/// reducible prefix p (irreducibility of the whole leading word means z is
/// not in the ideal), and subtracts coefficient * value(e_p) * tail. The
/// reduction part of e_p is below p in the word order, so the leading word
/// strictly decreases and the loop terminates.
pub fn decompose(
    z: &Polynomial,
    ideal: &ProductIdeal,
    basis: &FreeModuleBasis,
) -> Result<Decomposition> {
    if let Some(d) = z.degree() {
        if d > basis.bound() {
            return Err(EngineError::DegreeBoundExceeded {
                degree: d,
                bound: basis.bound(),
            });
        }
    }
    let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
    let mut rem = z.clone();
    while let Some((u, c)) = rem.leading_term() {
        let (u, c) = (u.clone(), c.clone());
        let len = u.degree() as usize;
        let mut found = None;
        for take in 0..=len {
            let p = u.prefix(take);
            if is_reducible(ideal, &p) {
                found = Some(p);
                break;
            }
        }
        let Some(p) = found else {
            return Err(EngineError::NotInIdeal {
                monomial: u.to_string(),
            });
        };
        let k = basis
            .index_of_lead(&p)
            .expect("shortest reducible prefix is a minimal reducible word");
        let tail = Monomial::from_word(u.letters()[p.degree() as usize..].to_vec());
        let step = Polynomial::monomial(tail, c);
        rem = rem.sub(&basis.elements()[k].value().mul(&step));
        acc.entry(k)
            .and_modify(|f| *f = f.add(&step))
            .or_insert(step);
    }
    Ok(Decomposition {
        coefficients: acc
            .into_iter()
            .filter(|(_, f)| !f.is_zero())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::TIdeal;
    use crate::poly::{commutator, Polynomial};
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn x(i: u32) -> Polynomial {
        Polynomial::var(i, q())
    }

    fn c_ideal() -> ProductIdeal {
        ProductIdeal::single(TIdeal::new("C", vec![commutator(&x(1), &x(2))], q()).unwrap())
    }

    fn m(word: &[u32]) -> Monomial {
        Monomial::from_word(word.to_vec())
    }

    #[test]
    fn commutator_schreier_degree_two() {
        let s = schreier_basis(&c_ideal(), 2, 2).unwrap();
        assert_eq!(
            s.at_degree(2),
            &[m(&[1, 1]), m(&[1, 2]), m(&[2, 2])],
            "x2*x1 is the reducible word"
        );
    }

    #[test]
    fn zero_and_unit_ideal_bases() {
        let zero = ProductIdeal::single(TIdeal::zero(q()));
        let s = schreier_basis(&zero, 3, 2).unwrap();
        for d in 0..=3u32 {
            assert_eq!(s.at_degree(d).len(), 2usize.pow(d));
        }
        assert!(free_module_basis(&zero, 3, 2).unwrap().elements().is_empty());

        let unit = ProductIdeal::single(TIdeal::unit(q()));
        let s = schreier_basis(&unit, 2, 2).unwrap();
        assert!((0..=2u32).all(|d| s.at_degree(d).is_empty()));
        // the empty word is the single minimal reducible word
        let b = free_module_basis(&unit, 2, 2).unwrap();
        assert_eq!(b.elements().len(), 1);
        assert_eq!(b.elements()[0].value(), &Polynomial::one(q()));
    }

    #[test]
    fn counting_per_degree() {
        let c = c_ideal();
        let window = 3u32;
        let s = schreier_basis(&c, 4, window).unwrap();
        for d in 0..=4u32 {
            let comp_dim: usize = crate::monomial::keys_of_degree(d, window)
                .iter()
                .map(|k| c.component(k).dim())
                .sum();
            assert_eq!(
                s.at_degree(d).len() + comp_dim,
                (window as usize).pow(d),
                "degree {d}"
            );
        }
    }

    #[test]
    fn module_basis_contains_reordered_commutator() {
        let b = free_module_basis(&c_ideal(), 2, 2).unwrap();
        let k = b.index_of_lead(&m(&[2, 1])).expect("x2*x1 is minimal reducible");
        assert_eq!(b.elements()[k].value(), &commutator(&x(2), &x(1)));
    }

    #[test]
    fn decompose_basis_multiple() {
        // [x2,x1] * x3 decomposes with coefficient x3 on the x2*x1 element
        let c = c_ideal();
        let b = free_module_basis(&c, 3, 3).unwrap();
        let z = commutator(&x(2), &x(1)).mul(&x(3));
        let d = decompose(&z, &c, &b).unwrap();
        assert_eq!(d.coefficients().len(), 1);
        let (k, f) = &d.coefficients()[0];
        assert_eq!(b.elements()[*k].lead(), &m(&[2, 1]));
        assert_eq!(f, &x(3));
        assert_eq!(d.reconstruct(&b), z);
    }

    #[test]
    fn decompose_zero_is_empty() {
        let c = c_ideal();
        let b = free_module_basis(&c, 2, 2).unwrap();
        assert!(decompose(&Polynomial::zero(), &c, &b).unwrap().is_empty());
    }

    #[test]
    fn decompose_iterated_commutator_roundtrip() {
        // [[x1,x2],x1] rewrites over at least two basis elements
        let c = c_ideal();
        let b = free_module_basis(&c, 3, 2).unwrap();
        let z = commutator(&commutator(&x(1), &x(2)), &x(1));
        let d = decompose(&z, &c, &b).unwrap();
        assert!(d.coefficients().len() >= 2);
        assert_eq!(d.reconstruct(&b), z);
    }

    #[test]
    fn decompose_rejects_outsiders() {
        let c = c_ideal();
        let b = free_module_basis(&c, 2, 2).unwrap();
        let err = decompose(&x(1).mul(&x(2)), &c, &b).unwrap_err();
        assert!(matches!(err, EngineError::NotInIdeal { .. }));
    }
}
