//! T-ideal handles: substitution-closed ideals presented by generators, with
//! exact graded components, products, and truncated inclusion testing.
//!
//! A handle stores fully multilinearized generators. The component of the
//! closure at a multidegree key is the span of all u * g(w1..wm) * v with u,
//! wi, v words and total multidegree equal to the key; multilinearity of g
//! makes this span exact (polynomial substitutions expand linearly into word
//! substitutions). Setting wi = 1 is folded into a precomputed table of unit
//! contractions of each generator, so the remaining enumeration runs over
//! nonempty words only.

use crate::echelon::EchelonSpace;
use crate::error::{EngineError, Result};
use crate::monomial::{canonical_keys, Monomial, MultiDeg};
use crate::poly::{multilinearize, Polynomial, Substitution};
use crate::scalar::{Field, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

/// How a handle's components relate to the untruncated object it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Components are exactly those of the T-ideal generated by the listed
    /// generators.
    Exact,
    /// Componentwise superset of the intended ideal, computed at the bound.
    OuterApprox { bound: u32 },
    /// Componentwise subset of the intended ideal, computed at the bound.
    InnerApprox { bound: u32 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exact => write!(f, "exact"),
            Provenance::OuterApprox { bound } => write!(f, "outer-approx@{bound}"),
            Provenance::InnerApprox { bound } => write!(f, "inner-approx@{bound}"),
        }
    }
}

/// One multilinear generator with its nonzero unit contractions.
#[derive(Debug)]
struct ClosureGenerator {
    /// Number of variables; every term uses each of x1..xm exactly once.
    arity: usize,
    /// Terms as (word over 1..=arity, coefficient).
    terms: Vec<(Vec<u32>, Scalar)>,
}

#[derive(Debug)]
struct Inner {
    name: String,
    generators: Vec<Polynomial>,
    multilinear: Vec<Polynomial>,
    contractions: Vec<ClosureGenerator>,
    field: Field,
    is_zero: bool,
    is_unit: bool,
    provenance: Provenance,
    components: RwLock<BTreeMap<MultiDeg, Arc<EchelonSpace>>>,
}

/// A T-ideal presented by generators. Cheap to clone; clones share the
/// component cache, which is write-once per key.
#[derive(Clone)]
pub struct TIdeal {
    inner: Arc<Inner>,
}

impl fmt::Debug for TIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TIdeal({})", self.inner.name)
    }
}

impl TIdeal {
    pub fn new(name: impl Into<String>, generators: Vec<Polynomial>, field: Field) -> Result<TIdeal> {
        Self::with_provenance(name, generators, field, Provenance::Exact)
    }

    pub fn with_provenance(
        name: impl Into<String>,
        generators: Vec<Polynomial>,
        field: Field,
        provenance: Provenance,
    ) -> Result<TIdeal> {
        let generators: Vec<Polynomial> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut multilinear: Vec<Polynomial> = Vec::new();
        for g in &generators {
            for m in multilinearize(g, field)? {
                if !multilinear.contains(&m) {
                    multilinear.push(m);
                }
            }
        }
        let mut is_unit = false;
        let mut contractions: Vec<ClosureGenerator> = Vec::new();
        let mut seen: Vec<Polynomial> = Vec::new();
        for g in &multilinear {
            for c in unit_contractions(g, field) {
                if c.num_vars == 0 {
                    is_unit = true;
                    continue;
                }
                if seen.contains(&c.poly) {
                    continue;
                }
                contractions.push(ClosureGenerator {
                    arity: c.num_vars,
                    terms: c
                        .poly
                        .terms()
                        .map(|(m, s)| (m.letters().to_vec(), s.clone()))
                        .collect(),
                });
                seen.push(c.poly);
            }
        }
        let is_zero = multilinear.is_empty();
        Ok(TIdeal {
            inner: Arc::new(Inner {
                name: name.into(),
                generators,
                multilinear,
                contractions,
                field,
                is_zero,
                is_unit,
                provenance,
                components: RwLock::new(BTreeMap::new()),
            }),
        })
    }

    pub fn zero(field: Field) -> TIdeal {
        TIdeal::new("0", Vec::new(), field).unwrap()
    }

    pub fn unit(field: Field) -> TIdeal {
        TIdeal::new("1", vec![Polynomial::one(field)], field).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn field(&self) -> Field {
        self.inner.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.inner.generators
    }

    pub fn multilinear_generators(&self) -> &[Polynomial] {
        &self.inner.multilinear
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero
    }

    pub fn is_unit(&self) -> bool {
        self.inner.is_unit
    }

    pub fn provenance(&self) -> Provenance {
        self.inner.provenance
    }

    /// The exact span of the closure at a multidegree key.
    pub fn component(&self, key: &MultiDeg) -> Arc<EchelonSpace> {
        self.inner
            .field
            .require_char_above(key.total())
            .expect("character guard must be enforced before component queries");
        if let Some(hit) = self.inner.components.read().unwrap().get(key) {
            return Arc::clone(hit);
        }
        let space = Arc::new(self.compute_component(key));
        let mut cache = self.inner.components.write().unwrap();
        Arc::clone(cache.entry(key.clone()).or_insert(space))
    }

    fn compute_component(&self, key: &MultiDeg) -> EchelonSpace {
        let mut space = EchelonSpace::new();
        if self.inner.is_zero {
            return space;
        }
        if self.inner.is_unit {
            for m in key.monomials() {
                space.insert(&Polynomial::monomial(m, self.inner.field.one()));
            }
            return space;
        }
        let full_dim = key.monomials().len();
        for generator in &self.inner.contractions {
            if space.dim() == full_dim {
                break;
            }
            instance_span(generator, key, self.inner.field, &mut space, full_dim);
        }
        space
    }

    /// Dimension of the closure at total degree `degree` over x1..window.
    pub fn degree_dim(&self, degree: u32, window: u32) -> usize {
        crate::monomial::keys_of_degree(degree, window)
            .iter()
            .map(|k| self.component(k).dim())
            .sum()
    }
}

struct Contraction {
    num_vars: usize,
    poly: Polynomial,
}

/// All distinct results of sending a subset of the variables of a
/// multilinear polynomial to 1, variables recompressed, zero images dropped.
fn unit_contractions(g: &Polynomial, field: Field) -> Vec<Contraction> {
    let arity = g.max_var();
    let mut out: Vec<Contraction> = Vec::new();
    for mask in 0..(1u32 << arity) {
        let mut sub = Substitution::new();
        for v in 1..=arity {
            if mask & (1 << (v - 1)) != 0 {
                sub = sub.assign_var(v, Polynomial::one(field));
            }
        }
        let image = g.substitute(&sub).compress_variables();
        if image.is_zero() {
            continue;
        }
        if out.iter().any(|c| c.poly == image) {
            continue;
        }
        out.push(Contraction {
            num_vars: image.max_var() as usize,
            poly: image,
        });
    }
    out
}

/// Insert all instances u * g(w1..wm) * v of multidegree `key` into `space`,
/// with every wi a nonempty word.
fn instance_span(
    generator: &ClosureGenerator,
    key: &MultiDeg,
    field: Field,
    space: &mut EchelonSpace,
    full_dim: usize,
) {
    let m = generator.arity;
    let mut parts: Vec<MultiDeg> = Vec::with_capacity(m + 2);
    split_key(key, m + 2, &mut parts, &mut |parts| {
        if space.dim() == full_dim {
            return;
        }
        // middle parts are the wi and must be nonempty
        if parts[1..=m].iter().any(|p| p.is_zero()) {
            return;
        }
        let monomial_lists: Vec<Vec<Monomial>> = parts.iter().map(|p| p.monomials()).collect();
        let mut picked: Vec<&Monomial> = Vec::with_capacity(m + 2);
        cartesian(&monomial_lists, &mut picked, &mut |picked| {
            if space.dim() == full_dim {
                return;
            }
            let mut inst = Polynomial::zero();
            for (word, coeff) in &generator.terms {
                let mut letters: Vec<u32> = picked[0].letters().to_vec();
                for &slot in word {
                    letters.extend_from_slice(picked[slot as usize].letters());
                }
                letters.extend_from_slice(picked[m + 1].letters());
                inst.add_term(Monomial::from_word(letters), coeff.clone());
            }
            if !inst.is_zero() {
                space.insert(&inst);
            }
        });
    });
    let _ = field;
}

/// Enumerate ordered decompositions of `key` into `parts` multidegrees.
fn split_key(
    key: &MultiDeg,
    parts: usize,
    acc: &mut Vec<MultiDeg>,
    f: &mut impl FnMut(&[MultiDeg]),
) {
    if parts == 1 {
        acc.push(key.clone());
        f(acc);
        acc.pop();
        return;
    }
    for first in key.sub_keys() {
        let rest = key.checked_sub(&first).unwrap();
        acc.push(first);
        split_key(&rest, parts - 1, acc, f);
        acc.pop();
    }
}

fn cartesian<'a>(
    lists: &'a [Vec<Monomial>],
    acc: &mut Vec<&'a Monomial>,
    f: &mut impl FnMut(&[&Monomial]),
) {
    if acc.len() == lists.len() {
        f(acc);
        return;
    }
    for m in &lists[acc.len()] {
        acc.push(m);
        cartesian(lists, acc, f);
        acc.pop();
    }
}

/// A formal product of T-ideal factors. Components are computed by
/// convolving factor components over multidegree splits, which is exact
/// because the factors are multigraded. A single handle is the one-factor
/// product.
#[derive(Clone)]
pub struct ProductIdeal {
    factors: Vec<TIdeal>,
    cache: Arc<RwLock<BTreeMap<(usize, MultiDeg), Arc<EchelonSpace>>>>,
}

impl fmt::Debug for ProductIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProductIdeal({})", self.name())
    }
}

impl ProductIdeal {
    pub fn product(factors: Vec<TIdeal>) -> ProductIdeal {
        assert!(!factors.is_empty(), "empty ideal products are not representable");
        ProductIdeal {
            factors,
            cache: Arc::new(RwLock::new(BTreeMap::new())),
        }
    }

    pub fn single(ideal: TIdeal) -> ProductIdeal {
        ProductIdeal::product(vec![ideal])
    }

    /// Concatenation of factor lists.
    pub fn then(&self, other: &ProductIdeal) -> ProductIdeal {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ProductIdeal::product(factors)
    }

    pub fn factors(&self) -> &[TIdeal] {
        &self.factors
    }

    pub fn field(&self) -> Field {
        self.factors[0].field()
    }

    pub fn name(&self) -> String {
        self.factors
            .iter()
            .map(|f| f.name().to_string())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn is_zero(&self) -> bool {
        self.factors.iter().any(|f| f.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.factors.iter().all(|f| f.is_unit())
    }

    pub fn component(&self, key: &MultiDeg) -> Arc<EchelonSpace> {
        if self.is_zero() {
            return Arc::new(EchelonSpace::new());
        }
        // unit factors are absorbed by the rest of the product
        let proper: Vec<&TIdeal> = self.factors.iter().filter(|f| !f.is_unit()).collect();
        if proper.is_empty() {
            return TIdeal::unit(self.field()).component(key);
        }
        if proper.len() == 1 {
            return proper[0].component(key);
        }
        self.suffix_component(&proper, 0, key)
    }

    fn suffix_component(
        &self,
        proper: &[&TIdeal],
        at: usize,
        key: &MultiDeg,
    ) -> Arc<EchelonSpace> {
        if at + 1 == proper.len() {
            return proper[at].component(key);
        }
        let cache_key = (at, key.clone());
        if let Some(hit) = self.cache.read().unwrap().get(&cache_key) {
            return Arc::clone(hit);
        }
        let mut space = EchelonSpace::new();
        for left_key in key.sub_keys() {
            if left_key.is_zero() || &left_key == key {
                continue;
            }
            let right_key = key.checked_sub(&left_key).unwrap();
            let left = proper[at].component(&left_key);
            if left.is_empty() {
                continue;
            }
            let right = self.suffix_component(proper, at + 1, &right_key);
            if right.is_empty() {
                continue;
            }
            for a in left.rows() {
                for b in right.rows() {
                    space.insert(&a.mul(b));
                }
            }
        }
        let space = Arc::new(space);
        let mut cache = self.cache.write().unwrap();
        Arc::clone(cache.entry(cache_key).or_insert(space))
    }

    pub fn degree_dim(&self, degree: u32, window: u32) -> usize {
        crate::monomial::keys_of_degree(degree, window)
            .iter()
            .map(|k| self.component(k).dim())
            .sum()
    }
}

/// Outcome of a truncated inclusion scan.
#[derive(Debug, Clone)]
pub struct InclusionVerdict {
    /// The degree bound that was scanned.
    pub bound: u32,
    /// An element of the smaller ideal outside the larger one, with its key.
    pub witness: Option<(Polynomial, MultiDeg)>,
}

impl InclusionVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Componentwise test of small ⊆ big at all canonical keys of total degree
/// <= bound. A witness certifies non-inclusion; absence of a witness is
/// evidence up to the bound only. Scanning canonical (sorted) keys loses
/// nothing: renaming variables is an invertible substitution, so inclusion
/// at a key is equivalent to inclusion at its sorted key.
pub fn includes(
    big: &ProductIdeal,
    small: &ProductIdeal,
    bound: u32,
    window: u32,
) -> Result<InclusionVerdict> {
    big.field().require_char_above(bound)?;
    for key in canonical_keys(bound, window) {
        let small_comp = small.component(&key);
        if small_comp.is_empty() {
            continue;
        }
        let big_comp = big.component(&key);
        if let Some(w) = small_comp.witness_outside(&big_comp) {
            return Ok(InclusionVerdict {
                bound,
                witness: Some((w, key)),
            });
        }
    }
    Ok(InclusionVerdict {
        bound,
        witness: None,
    })
}

/// Spec surface: the closure component of a single handle, with the bound
/// check made explicit.
pub fn tclosure_component(ideal: &TIdeal, key: &MultiDeg, bound: u32) -> Result<Arc<EchelonSpace>> {
    if key.total() > bound {
        return Err(EngineError::DegreeBoundExceeded {
            degree: key.total(),
            bound,
        });
    }
    ideal.field().require_char_above(bound)?;
    Ok(ideal.component(key))
}

/// Spec surface: the component of a product at a key.
pub fn product_component(
    factors: &[TIdeal],
    key: &MultiDeg,
    bound: u32,
) -> Result<Arc<EchelonSpace>> {
    if key.total() > bound {
        return Err(EngineError::DegreeBoundExceeded {
            degree: key.total(),
            bound,
        });
    }
    let product = ProductIdeal::product(factors.to_vec());
    product.field().require_char_above(bound)?;
    Ok(product.component(key))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::commutator;

    fn q() -> Field {
        Field::Rational
    }

    fn x(i: u32) -> Polynomial {
        Polynomial::var(i, q())
    }

    fn commutator_ideal() -> TIdeal {
        TIdeal::new("C", vec![commutator(&x(1), &x(2))], q()).unwrap()
    }

    #[test]
    fn unit_detection_through_substitution() {
        // closing <x1> under substitution forces x1 -> 1
        let i = TIdeal::new("X1", vec![x(1)], q()).unwrap();
        assert!(i.is_unit());
        let deg0 = i.component(&MultiDeg::zero());
        assert_eq!(deg0.dim(), 1);
    }

    #[test]
    fn zero_ideal_components_vanish() {
        let z = TIdeal::zero(q());
        assert!(z.is_zero());
        assert_eq!(z.component(&MultiDeg::multilinear(3)).dim(), 0);
    }

    #[test]
    fn commutator_component_degree_two() {
        let c = commutator_ideal();
        // over x1, x2: only the (1,1) key is nonzero, dimension 1
        assert_eq!(c.degree_dim(2, 2), 1);
        let space = c.component(&MultiDeg::new(vec![1, 1]));
        assert!(space.contains(&commutator(&x(1), &x(2))));
    }

    #[test]
    fn commutator_multilinear_codimension_is_one() {
        let c = commutator_ideal();
        for n in 1..=4u32 {
            let dim = c.component(&MultiDeg::multilinear(n)).dim();
            let full: usize = (1..=n as usize).product();
            assert_eq!(dim, full - 1, "degree {n}");
        }
    }

    #[test]
    fn product_of_commutator_ideals() {
        let c = commutator_ideal();
        let cc = ProductIdeal::product(vec![c.clone(), c.clone()]);
        // no multilinear elements below degree 4
        assert_eq!(cc.component(&MultiDeg::multilinear(3)).dim(), 0);
        // dimension 6 at the multilinear degree-4 key
        assert_eq!(cc.component(&MultiDeg::multilinear(4)).dim(), 6);
    }

    #[test]
    fn single_factor_product_matches_closure() {
        let c = commutator_ideal();
        let p = ProductIdeal::single(c.clone());
        let key = MultiDeg::new(vec![2, 1]);
        assert_eq!(p.component(&key).rows(), c.component(&key).rows());
    }

    #[test]
    fn unit_factor_is_absorbed() {
        let c = commutator_ideal();
        let u = TIdeal::unit(q());
        let p = ProductIdeal::product(vec![u, c.clone()]);
        let key = MultiDeg::new(vec![1, 1]);
        assert_eq!(p.component(&key).rows(), c.component(&key).rows());
    }

    #[test]
    fn includes_basic_verdicts() {
        let c = ProductIdeal::single(commutator_ideal());
        let cc = c.then(&c);
        // products of subideals stay inside
        assert!(includes(&c, &cc, 4, 4).unwrap().holds());
        // the commutator itself escapes the product at degree 2
        let v = includes(&cc, &c, 2, 2).unwrap();
        let (w, key) = v.witness.unwrap();
        assert_eq!(key.total(), 2);
        // the witness is the monic echelon row with pivot x2*x1
        assert_eq!(w, commutator(&x(2), &x(1)));
        // reflexivity
        assert!(includes(&c, &c, 3, 3).unwrap().holds());
    }

    #[test]
    fn closure_respects_gf_char_guard() {
        let gf7 = Field::gf(7).unwrap();
        let c = TIdeal::new("C", vec![commutator(&Polynomial::var(1, gf7), &Polynomial::var(2, gf7))], gf7).unwrap();
        assert!(tclosure_component(&c, &MultiDeg::multilinear(3), 8).is_err());
        assert!(tclosure_component(&c, &MultiDeg::multilinear(3), 6).is_ok());
    }
}
