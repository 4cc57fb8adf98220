//! Exact echelonized spans of homogeneous polynomials, the keyed graded
//! wrapper, and a small dense kernel solver.
//!
//! Every span is kept in reduced form: rows are monic on their pivot (the
//! greatest monomial) and no pivot occurs in any other row. Reduced form is
//! unique for a given span, so bases are canonical and comparisons are
//! deterministic.

use crate::error::{EngineError, Result};
use crate::monomial::{Monomial, MultiDeg};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Reduced echelon basis of a span of polynomials, all sharing one key.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EchelonSpace {
    /// Rows sorted by descending pivot.
    rows: Vec<Polynomial>,
}

impl EchelonSpace {
    pub fn new() -> EchelonSpace {
        EchelonSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> {
        self.rows.iter().map(|r| r.leading_term().unwrap().0)
    }

    pub fn has_pivot(&self, m: &Monomial) -> bool {
        self.row_with_pivot(m).is_some()
    }

    fn row_with_pivot(&self, m: &Monomial) -> Option<usize> {
        self.rows
            .binary_search_by(|row| {
                let pivot = row.leading_term().unwrap().0;
                m.cmp(pivot)
            })
            .ok()
    }

    /// Normal form of `f` modulo the span: no pivot monomial remains, and
    /// f - reduce(f) lies in the span.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut rem = f.clone();
        loop {
            let hit = rem
                .terms_desc()
                .find_map(|(m, c)| self.row_with_pivot(m).map(|k| (k, c.clone())));
            match hit {
                None => return rem,
                Some((k, c)) => {
                    rem = rem.sub(&self.rows[k].scale(&c));
                }
            }
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Insert `f`, keeping reduced form. Returns true when the span grew.
    pub fn insert(&mut self, f: &Polynomial) -> bool {
        let rem = self.reduce(f);
        if rem.is_zero() {
            return false;
        }
        let (pivot, lead) = {
            let (m, c) = rem.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let monic = rem.scale(&lead.inverse().unwrap());
        // clear the new pivot from existing rows
        for row in &mut self.rows {
            if let Some(c) = row.coefficient(&pivot).cloned() {
                *row = row.sub(&monic.scale(&c));
            }
        }
        let at = self
            .rows
            .partition_point(|row| row.leading_term().unwrap().0 > &pivot);
        self.rows.insert(at, monic);
        true
    }

    /// Persistent insert: a fresh space plus the growth flag.
    pub fn inserted(&self, f: &Polynomial) -> (EchelonSpace, bool) {
        let mut next = self.clone();
        let grew = next.insert(f);
        (next, grew)
    }

    /// Span of all pairwise products a*b, a from `self`, b from `other`.
    pub fn product(&self, other: &EchelonSpace) -> EchelonSpace {
        let mut out = EchelonSpace::new();
        for a in &self.rows {
            for b in &other.rows {
                out.insert(&a.mul(b));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &EchelonSpace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// First basis row (smallest pivot first) escaping `other`, if any.
    pub fn witness_outside(&self, other: &EchelonSpace) -> Option<Polynomial> {
        self.rows
            .iter()
            .rev()
            .find(|r| !other.contains(r))
            .cloned()
    }
}

/// Per-key echelon spans with homogeneity checks at the boundary.
#[derive(Debug, Clone, Default)]
pub struct GradedSubspace {
    spaces: BTreeMap<MultiDeg, EchelonSpace>,
}

impl GradedSubspace {
    pub fn new() -> GradedSubspace {
        GradedSubspace::default()
    }

    fn key_of(f: &Polynomial) -> Result<MultiDeg> {
        f.multidegree().ok_or_else(|| EngineError::KeyMismatch {
            expected: "a single multidegree".into(),
            found: "mixed multidegrees".into(),
        })
    }

    /// Insert a homogeneous polynomial under its own key.
    pub fn echelon_insert(&mut self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        let key = Self::key_of(f)?;
        Ok(self.spaces.entry(key).or_default().insert(f))
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.is_zero() {
            return Ok(Polynomial::zero());
        }
        let key = Self::key_of(f)?;
        Ok(match self.spaces.get(&key) {
            Some(space) => space.reduce(f),
            None => f.clone(),
        })
    }

    pub fn space(&self, key: &MultiDeg) -> Option<&EchelonSpace> {
        self.spaces.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &MultiDeg> {
        self.spaces.keys()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|s| s.dim()).sum()
    }
}

/// Echelon span inside P(S): multilinear polynomials using each variable of
/// a fixed set exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearSpace {
    vars: Vec<u32>,
    space: EchelonSpace,
}

impl MultilinearSpace {
    pub fn new(vars: Vec<u32>) -> MultilinearSpace {
        MultilinearSpace {
            vars,
            space: EchelonSpace::new(),
        }
    }

    pub fn from_space(vars: Vec<u32>, space: EchelonSpace) -> MultilinearSpace {
        let ms = MultilinearSpace { vars, space };
        debug_assert!(ms.space.rows().iter().all(|r| ms.key_matches(r)));
        ms
    }

    fn key_matches(&self, f: &Polynomial) -> bool {
        f.terms().all(|(m, _)| {
            let mut letters: Vec<u32> = m.letters().to_vec();
            letters.sort_unstable();
            letters == self.vars
        })
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &EchelonSpace {
        &self.space
    }

    pub fn insert(&mut self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        if !self.key_matches(f) {
            return Err(EngineError::KeyMismatch {
                expected: format!("multilinear in {:?}", self.vars),
                found: f.to_string(),
            });
        }
        Ok(self.space.insert(f))
    }
}

/// Span of all products a*b over ordered two-block splits of the variable
/// set x1..xn: a ranges over the degree-|S| spaces of `left` relabeled to a
/// subset S, b over the complementary spaces of `right`. Index m of each
/// slice holds the component inside P_m on canonical variables x1..xm;
/// index 0 is the constant part and participates only when nonempty.
pub fn subset_product(
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

/// Dense reduced row echelon over the scalar field, for kernel extraction.
/// Columns are indexed 0..cols; callers fix their own column meaning.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    /// (pivot column, row) sorted by pivot column.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> RowSpace {
        RowSpace {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (pivot, basis_row) in &self.rows {
            let c = row[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (slot, b) in row.iter_mut().zip(basis_row.iter()) {
                *slot = slot.sub(&c.mul(b));
            }
        }
        let Some(pivot) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[pivot].inverse().unwrap();
        for slot in row.iter_mut() {
            *slot = slot.mul(&inv);
        }
        // clear the new pivot column from existing rows
        for (_, basis_row) in &mut self.rows {
            let c = basis_row[pivot].clone();
            if !c.is_zero() {
                for (slot, b) in basis_row.iter_mut().zip(row.iter()) {
                    *slot = slot.sub(&c.mul(b));
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, row));
        true
    }

    /// Basis of the right kernel: all v with r . v = 0 for every row r.
    /// `zero`/`one` supply field constants.
    pub fn kernel_basis(&self, zero: Scalar, one: Scalar) -> Vec<Vec<Scalar>> {
        let pivot_cols: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (pivot, row) in &self.rows {
                v[*pivot] = row[free].neg();
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::commutator;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn x(i: u32) -> Polynomial {
        Polynomial::var(i, q())
    }

    #[test]
    fn insert_tracks_dimension() {
        let mut s = GradedSubspace::new();
        let c = commutator(&x(1), &x(2));
        assert!(s.echelon_insert(&c).unwrap());
        assert!(!s.echelon_insert(&c.scale(&q().from_i64(2))).unwrap());
        assert!(s.echelon_insert(&x(1).mul(&x(2))).unwrap());
        assert_eq!(s.total_dim(), 2);
    }

    #[test]
    fn reduce_single_step() {
        // span{x2*x1 - x1*x2}: the normal form of x2*x1 is x1*x2
        let mut s = EchelonSpace::new();
        s.insert(&commutator(&x(2), &x(1)));
        let nf = s.reduce(&x(2).mul(&x(1)));
        assert_eq!(nf, x(1).mul(&x(2)));
    }

    #[test]
    fn reduce_trivial_cases() {
        let mut s = EchelonSpace::new();
        s.insert(&commutator(&x(1), &x(2)));
        assert!(s.reduce(&Polynomial::zero()).is_zero());
        let empty = EchelonSpace::new();
        let f = x(1).mul(&x(1));
        assert_eq!(empty.reduce(&f), f);
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut s = EchelonSpace::new();
        s.insert(&commutator(&x(1), &x(2)));
        s.insert(&commutator(&x(1), &x(3)));
        let f = x(3).mul(&x(1)).add(&x(2).mul(&x(1)));
        let once = s.reduce(&f);
        assert_eq!(s.reduce(&once), once);
    }

    #[test]
    fn mixed_key_rejected() {
        let mut s = GradedSubspace::new();
        let f = x(1).add(&x(1).mul(&x(2)));
        assert!(s.echelon_insert(&f).is_err());
    }

    #[test]
    fn kernel_of_small_system() {
        // rows (1 1 0) and (0 0 1): kernel spanned by (-1 1 0)
        let f = q();
        let mut rs = RowSpace::new(3);
        rs.insert(vec![f.one(), f.one(), f.zero()]);
        rs.insert(vec![f.zero(), f.zero(), f.one()]);
        let kernel = rs.kernel_basis(f.zero(), f.one());
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], vec![f.from_i64(-1), f.one(), f.zero()]);
    }
}
