//! Finite-dimensional algebras, modules with a right action written as
//! row-vector times matrix, triangular products, and the multilinear
//! identity components of an algebra.
//!
//! The multiplicative convention is row vectors acting on the right, so the
//! matrix of a product a*b is matrix(a) * matrix(b) with no order reversal,
//! and a polynomial evaluates to the matrix product of its letters in
//! written order.

use crate::echelon::{EchelonSpace, MultilinearSpace, RowSpace};
use crate::error::{EngineError, Result};
use crate::monomial::{Monomial, MultiDeg};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};
use std::collections::{BTreeMap, HashSet};
use std::fmt;

/// Dense matrix over the scalar field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for k in 0..n {
            m.set(k, k, field.one());
        }
        m
    }

    pub fn unit(rows: usize, cols: usize, r: usize, c: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(rows, cols, field);
        m.set(r, c, field.one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix, field: Field) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols, field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    fn vectorize(&self) -> Vec<Scalar> {
        self.entries.clone()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A unital subalgebra of square matrices, stored as a reduced echelon basis
/// of its vectorizations.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    carrier: usize,
    field: Field,
    basis: Vec<Matrix>,
    /// pivot entry index per basis matrix, strictly increasing
    pivots: Vec<usize>,
}

impl MatrixAlgebra {
    /// Span closure of the generators together with the identity, iterating
    /// products until the span is multiplicatively closed.
    pub fn span_closure(carrier: usize, generators: &[Matrix], field: Field) -> MatrixAlgebra {
        let mut alg = MatrixAlgebra {
            carrier,
            field,
            basis: Vec::new(),
            pivots: Vec::new(),
        };
        alg.insert(Matrix::identity(carrier, field));
        for g in generators {
            alg.insert(g.clone());
        }
        loop {
            let snapshot = alg.basis.clone();
            let before = snapshot.len();
            for a in &snapshot {
                for b in &snapshot {
                    alg.insert(a.mul(b, field));
                }
            }
            if alg.basis.len() == before {
                break;
            }
        }
        alg
    }

    fn insert(&mut self, m: Matrix) -> bool {
        let mut v = m.vectorize();
        for (k, pivot) in self.pivots.iter().enumerate() {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            let basis_vec = self.basis[k].vectorize();
            for (slot, b) in v.iter_mut().zip(basis_vec.iter()) {
                *slot = slot.sub(&c.mul(b));
            }
        }
        let Some(pivot) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inverse().unwrap();
        let reduced: Vec<Scalar> = v.iter().map(|e| e.mul(&inv)).collect();
        let new = Matrix {
            rows: self.carrier,
            cols: self.carrier,
            entries: reduced,
        };
        // clear the new pivot from earlier basis matrices
        for k in 0..self.basis.len() {
            let c = self.basis[k].vectorize()[pivot].clone();
            if !c.is_zero() {
                self.basis[k] = self.basis[k].add(&new.scale(&c.neg()));
            }
        }
        let at = self.pivots.partition_point(|p| *p < pivot);
        self.pivots.insert(at, pivot);
        self.basis.insert(at, new);
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coordinates over the echelon basis, None if outside the span.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let mut v = m.vectorize();
        let mut coords = vec![self.field.zero(); self.basis.len()];
        for (k, pivot) in self.pivots.iter().enumerate() {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            let basis_vec = self.basis[k].vectorize();
            for (slot, b) in v.iter_mut().zip(basis_vec.iter()) {
                *slot = slot.sub(&c.mul(b));
            }
            coords[k] = c;
        }
        if v.iter().all(|e| e.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coords(m).is_some()
    }
}

/// An abstract finite-dimensional unital algebra given by structure
/// constants over a labelled basis.
#[derive(Debug, Clone)]
pub struct FinDimAlgebra {
    labels: Vec<String>,
    /// table[i][j] = coordinates of e_i * e_j
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    field: Field,
}

impl FinDimAlgebra {
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        field: Field,
    ) -> Result<FinDimAlgebra> {
        let alg = FinDimAlgebra {
            labels,
            table,
            unit,
            field,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Recover structure constants from a multiplicatively closed matrix
    /// span; the unit is the identity matrix.
    pub fn from_matrix_algebra(labels: Vec<String>, alg: &MatrixAlgebra) -> Result<FinDimAlgebra> {
        let d = alg.dim();
        assert_eq!(labels.len(), d);
        let mut table = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let product = alg.basis()[i].mul(&alg.basis()[j], alg.field());
                let coords = alg
                    .coords(&product)
                    .expect("span closure guarantees products stay inside");
                row.push(coords);
            }
            table.push(row);
        }
        let unit = alg
            .coords(&Matrix::identity(alg.carrier_dim(), alg.field()))
            .expect("unital span contains the identity");
        FinDimAlgebra::new(labels, table, unit, alg.field())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[i][j][k]
    }

    fn multiply_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let c = a[i].mul(&b[j]);
                for k in 0..d {
                    let t = &self.table[i][j][k];
                    if !t.is_zero() {
                        out[k] = out[k].add(&c.mul(t));
                    }
                }
            }
        }
        out
    }

    /// Associativity on all basis triples and both unit laws.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let basis_coords = |i: usize| {
            let mut v = vec![self.field.zero(); d];
            v[i] = self.field.one();
            v
        };
        for i in 0..d {
            let e = basis_coords(i);
            if self.multiply_coords(&self.unit, &e) != e || self.multiply_coords(&e, &self.unit) != e
            {
                return Err(EngineError::KeyMismatch {
                    expected: "unit laws".into(),
                    found: format!("unit fails on basis element {}", self.labels[i]),
                });
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left =
                        self.multiply_coords(&self.table[i][j].clone(), &basis_coords(k));
                    let right =
                        self.multiply_coords(&basis_coords(i), &self.table[j][k].clone());
                    if left != right {
                        return Err(EngineError::KeyMismatch {
                            expected: "associative structure constants".into(),
                            found: format!(
                                "({} {}) {} differs from {} ({} {})",
                                self.labels[i],
                                self.labels[j],
                                self.labels[k],
                                self.labels[i],
                                self.labels[j],
                                self.labels[k]
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Faithful right regular representation: the matrix of right
    /// multiplication by e_k on row-vector coordinates.
    pub fn regular_representation(&self) -> Vec<Matrix> {
        let d = self.dim();
        (0..d)
            .map(|k| {
                let mut m = Matrix::zero(d, d, self.field);
                for i in 0..d {
                    for j in 0..d {
                        m.set(i, j, self.table[i][k][j].clone());
                    }
                }
                m
            })
            .collect()
    }
}

/// A right module over a finite-dimensional algebra: one action matrix per
/// algebra basis element, acting on row vectors.
#[derive(Debug, Clone)]
pub struct ModuleSpec {
    name: String,
    algebra: FinDimAlgebra,
    carrier: usize,
    action: Vec<Matrix>,
}

impl ModuleSpec {
    pub fn new(
        name: impl Into<String>,
        algebra: FinDimAlgebra,
        carrier: usize,
        action: Vec<Matrix>,
    ) -> Result<ModuleSpec> {
        let spec = ModuleSpec {
            name: name.into(),
            algebra,
            carrier,
            action,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    fn action_of_coords(&self, coords: &[Scalar]) -> Matrix {
        let field = self.algebra.field();
        let mut out = Matrix::zero(self.carrier, self.carrier, field);
        for (c, m) in coords.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// The action must be a unital algebra homomorphism.
    pub fn validate(&self) -> Result<()> {
        let field = self.algebra.field();
        let d = self.algebra.dim();
        assert_eq!(self.action.len(), d);
        if self.action_of_coords(self.algebra.unit()) != Matrix::identity(self.carrier, field) {
            return Err(EngineError::KeyMismatch {
                expected: "unital action".into(),
                found: format!("module {}", self.name),
            });
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j], field);
                let rhs = self.action_of_coords(&self.algebra.table[i][j]);
                if lhs != rhs {
                    return Err(EngineError::KeyMismatch {
                        expected: "multiplicative action".into(),
                        found: format!(
                            "module {} on {} * {}",
                            self.name, self.algebra.labels[i], self.algebra.labels[j]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// The image of the algebra inside the endomorphisms of the carrier.
    pub fn image_algebra(&self) -> MatrixAlgebra {
        MatrixAlgebra::span_closure(self.carrier, &self.action, self.algebra.field())
    }

    /// Whether the action matrices span faithfully, i.e. the image has the
    /// same dimension as the abstract algebra.
    pub fn is_faithful(&self) -> bool {
        self.image_algebra().dim() == self.algebra.dim()
    }
}

/// The block algebra of a triangular product: diagonal blocks act on the
/// two carriers, the corner block is every linear map from the second
/// carrier into the first. The first module embeds as an invariant
/// submodule.
#[derive(Debug, Clone)]
pub struct TriangularProduct {
    algebra: MatrixAlgebra,
    m1_dim: usize,
    m2_dim: usize,
    q_dim: usize,
    corner_dim: usize,
}

impl TriangularProduct {
    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn m1_dim(&self) -> usize {
        self.m1_dim
    }

    pub fn m2_dim(&self) -> usize {
        self.m2_dim
    }

    pub fn q_dim(&self) -> usize {
        self.q_dim
    }

    pub fn corner_dim(&self) -> usize {
        self.corner_dim
    }
}

/// Build the triangular product of two modules. With row vectors
/// (m1 | m2), the diagonal blocks are the two image algebras and the corner
/// block sits at rows of the second carrier and columns of the first, so it
/// maps the second summand into the first and the first summand is
/// invariant.
pub fn triangular_product(m1: &ModuleSpec, m2: &ModuleSpec) -> TriangularProduct {
    let field = m1.algebra.field();
    let a1 = m1.image_algebra();
    let a2 = m2.image_algebra();
    let n1 = m1.carrier_dim();
    let n2 = m2.carrier_dim();
    let n = n1 + n2;
    let mut generators: Vec<Matrix> = Vec::new();
    for a in a1.basis() {
        let mut block = Matrix::zero(n, n, field);
        for r in 0..n1 {
            for c in 0..n1 {
                block.set(r, c, a.get(r, c).clone());
            }
        }
        generators.push(block);
    }
    for b in a2.basis() {
        let mut block = Matrix::zero(n, n, field);
        for r in 0..n2 {
            for c in 0..n2 {
                block.set(n1 + r, n1 + c, b.get(r, c).clone());
            }
        }
        generators.push(block);
    }
    for r in 0..n2 {
        for c in 0..n1 {
            generators.push(Matrix::unit(n, n, n1 + r, c, field));
        }
    }
    let algebra = MatrixAlgebra::span_closure(n, &generators, field);
    let tri = TriangularProduct {
        algebra,
        m1_dim: n1,
        m2_dim: n2,
        q_dim: a1.dim() + a2.dim(),
        corner_dim: n1 * n2,
    };
    assert_eq!(
        tri.algebra.dim(),
        tri.q_dim + tri.corner_dim,
        "triangular block count"
    );
    tri
}

/// The multilinear identities of a matrix algebra in degree n: the kernel of
/// evaluating P_n at all n-tuples of basis elements, which suffices by
/// multilinearity.
pub fn identities_component(alg: &MatrixAlgebra, n: u32) -> Result<MultilinearSpace> {
    let field = alg.field();
    field.require_char_above(n)?;
    let monomials = monomials_of_multideg_one(n);
    let cols = monomials.len();
    let d = alg.dim();
    let carrier = alg.carrier_dim();
    let mut constraints = RowSpace::new(cols);
    let mut seen_rows: HashSet<Vec<Scalar>> = HashSet::new();

    let mut multiset = vec![0usize; n as usize];
    'sets: loop {
        // evaluate every arrangement of the current multiset once
        let mut products: BTreeMap<Vec<usize>, Matrix> = BTreeMap::new();
        arrangements_of(&multiset, &mut |word| {
            if !products.contains_key(word) {
                let mut acc = Matrix::identity(carrier, field);
                for &i in word {
                    acc = acc.mul(&alg.basis()[i], field);
                }
                products.insert(word.to_vec(), acc);
            }
        });
        let tuples: Vec<Vec<usize>> = products.keys().cloned().collect();
        for tuple in &tuples {
            for r in 0..carrier {
                for c in 0..carrier {
                    let row: Vec<Scalar> = monomials
                        .iter()
                        .map(|mono| {
                            let word: Vec<usize> = mono
                                .letters()
                                .iter()
                                .map(|&v| tuple[(v - 1) as usize])
                                .collect();
                            products[&word].get(r, c).clone()
                        })
                        .collect();
                    if row.iter().all(|e| e.is_zero()) {
                        continue;
                    }
                    if seen_rows.insert(row.clone()) {
                        constraints.insert(row);
                        if constraints.rank() == cols {
                            break 'sets;
                        }
                    }
                }
            }
        }
        // next non-decreasing multiset over 0..d
        let mut k = n as usize;
        loop {
            if k == 0 {
                break 'sets;
            }
            k -= 1;
            if multiset[k] + 1 < d {
                let v = multiset[k] + 1;
                for slot in multiset.iter_mut().skip(k) {
                    *slot = v;
                }
                break;
            }
        }
    }

    let mut space = EchelonSpace::new();
    for coords in constraints.kernel_basis(field.zero(), field.one()) {
        let mut p = Polynomial::zero();
        for (mono, c) in monomials.iter().zip(coords) {
            p.add_term(mono.clone(), c);
        }
        space.insert(&p);
    }
    Ok(MultilinearSpace::from_space((1..=n).collect(), space))
}

/// The n! words using each of x1..xn once, ascending.
fn monomials_of_multideg_one(n: u32) -> Vec<Monomial> {
    MultiDeg::multilinear(n).monomials()
}

fn arrangements_of(multiset: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut pool = multiset.to_vec();
    let mut acc = Vec::with_capacity(multiset.len());
    fn rec(pool: &mut Vec<usize>, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if pool.is_empty() {
            f(acc);
            return;
        }
        let mut used = Vec::new();
        for k in 0..pool.len() {
            let v = pool[k];
            if used.contains(&v) {
                continue;
            }
            used.push(v);
            pool.swap_remove(k);
            acc.push(v);
            rec(pool, acc, f);
            acc.pop();
            pool.push(v);
            let last = pool.len() - 1;
            pool.swap(k, last);
        }
    }
    rec(&mut pool, &mut acc, f);
}

/// Comparison of the identities of a triangular product with the product of
/// the factor identities.
#[derive(Debug, Clone)]
pub struct TriangularReport {
    pub degree: u32,
    pub dim_triangular: usize,
    pub dim_product: usize,
    pub contains_product: bool,
    pub equal: bool,
}

/// Multilinear identity components of an algebra for every arity up to n,
/// packaged for subset products.
pub fn identity_components_up_to(alg: &MatrixAlgebra, n: u32) -> Result<Vec<EchelonSpace>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(EchelonSpace::new()); // no constant identities of a unital algebra
    for m in 1..=n {
        out.push(identities_component(alg, m)?.space().clone());
    }
    Ok(out)
}

/// Span of all products a*b with a a degree-|S| identity of `left` relabeled
/// to the subset S and b an identity of `right` on the complement, over all
/// subsets S of x1..xn.
pub fn identity_subset_product(
    left: &[EchelonSpace],
    right: &[EchelonSpace],
    n: u32,
) -> EchelonSpace {
    let mut space = EchelonSpace::new();
    let vars: Vec<u32> = (1..=n).collect();
    for mask in 0u32..(1 << n) {
        let s: Vec<u32> = vars
            .iter()
            .copied()
            .filter(|v| mask & (1 << (v - 1)) != 0)
            .collect();
        let sc: Vec<u32> = vars
            .iter()
            .copied()
            .filter(|v| mask & (1 << (v - 1)) == 0)
            .collect();
        let a = &left[s.len()];
        let b = &right[sc.len()];
        if a.is_empty() || b.is_empty() {
            continue;
        }
        for f in a.rows() {
            let f = f.rename(|i| s[(i - 1) as usize]);
            for g in b.rows() {
                let g = g.rename(|i| sc[(i - 1) as usize]);
                space.insert(&f.mul(&g));
            }
        }
    }
    space
}

/// Check that the identities of the triangular product coincide with the
/// product of the second factor's identities by the first factor's, in the
/// multilinear component of degree n. The containment of the product inside
/// the triangular identities holds by construction and is reported
/// separately from equality.
pub fn verify_triangular_identity(
    m1: &ModuleSpec,
    m2: &ModuleSpec,
    n: u32,
) -> Result<TriangularReport> {
    let tri = triangular_product(m1, m2);
    let tri_ids = identities_component(tri.algebra(), n)?;
    let left = identity_components_up_to(&m2.image_algebra(), n)?;
    let right = identity_components_up_to(&m1.image_algebra(), n)?;
    let product = identity_subset_product(&left, &right, n);
    let contains_product = product.is_subspace_of(tri_ids.space());
    let equal = contains_product && tri_ids.space().is_subspace_of(&product);
    Ok(TriangularReport {
        degree: n,
        dim_triangular: tri_ids.dim(),
        dim_product: product.dim(),
        contains_product,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn one_dimensional_identities_are_commutators() {
        let triv = fixtures::module_fixture("triv1", q()).unwrap();
        let alg = triv.image_algebra();
        let ids = identities_component(&alg, 2).unwrap();
        assert_eq!(ids.dim(), 1);
        let c = crate::poly::commutator(
            &Polynomial::var(1, q()),
            &Polynomial::var(2, q()),
        );
        assert!(ids.space().contains(&c));
    }

    #[test]
    fn full_matrix_identities_start_at_degree_four() {
        let m2 = fixtures::module_fixture("m2nat", q()).unwrap();
        let alg = m2.image_algebra();
        assert_eq!(alg.dim(), 4);
        assert_eq!(identities_component(&alg, 3).unwrap().dim(), 0);
        let ids4 = identities_component(&alg, 4).unwrap();
        let s4 = crate::poly::standard_polynomial(4, q());
        assert!(ids4.space().contains(&s4));
    }

    #[test]
    fn upper_triangular_identity_dimension_at_four() {
        let ut2 = fixtures::module_fixture("ut2nat", q()).unwrap();
        let alg = ut2.image_algebra();
        assert_eq!(alg.dim(), 3);
        assert_eq!(identities_component(&alg, 4).unwrap().dim(), 6);
    }

    #[test]
    fn triangular_product_of_trivial_modules_is_two_by_two_triangular() {
        let triv = fixtures::module_fixture("triv1", q()).unwrap();
        let tri = triangular_product(&triv, &triv);
        assert_eq!(tri.algebra().dim(), 3);
        assert_eq!(tri.q_dim(), 2);
        assert_eq!(tri.corner_dim(), 1);
        // same structure constants as the 2x2 triangular matrix algebra on
        // the natural module, up to swapping the diagonal idempotents
        let a = FinDimAlgebra::from_matrix_algebra(
            vec!["d1".into(), "d2".into(), "h".into()],
            tri.algebra(),
        )
        .unwrap();
        a.validate().unwrap();
        let ids = identities_component(tri.algebra(), 4).unwrap();
        let ut2 = fixtures::module_fixture("ut2nat", q()).unwrap();
        let ut2_ids = identities_component(&ut2.image_algebra(), 4).unwrap();
        assert_eq!(ids.space().rows(), ut2_ids.space().rows());
    }

    #[test]
    fn triangular_dimension_count() {
        let m1 = fixtures::module_fixture("m2nat", q()).unwrap();
        let triv = fixtures::module_fixture("triv1", q()).unwrap();
        let tri = triangular_product(&m1, &triv);
        // carrier 2 + 1, blocks 4 + 1 + corner 2
        assert_eq!(tri.algebra().carrier_dim(), 3);
        assert_eq!(tri.algebra().dim(), 7);
    }

    #[test]
    fn vovsi_equality_for_trivial_pair() {
        let triv = fixtures::module_fixture("triv1", q()).unwrap();
        let report = verify_triangular_identity(&triv, &triv, 4).unwrap();
        assert!(report.contains_product);
        assert!(report.equal);
        assert_eq!(report.dim_triangular, 6);
        assert_eq!(report.dim_product, 6);
    }

    #[test]
    fn degree_one_identities_vanish() {
        let d = fixtures::module_fixture("dual2", q()).unwrap();
        let report = verify_triangular_identity(&d, &d, 1).unwrap();
        assert_eq!(report.dim_triangular, 0);
        assert_eq!(report.dim_product, 0);
        assert!(report.equal);
    }
}
