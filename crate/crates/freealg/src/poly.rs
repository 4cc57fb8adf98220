//! Sparse polynomials in non-commuting variables, endomorphism application,
//! multihomogeneous decomposition and full multilinearization.

use crate::error::{EngineError, Result};
use crate::monomial::{Monomial, MultiDeg, Variable};
use crate::scalar::{is_negative, Field, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A non-commutative polynomial: a sparse map from words to nonzero scalars.
/// The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn var(index: u32, field: Field) -> Polynomial {
        Polynomial::monomial(Monomial::var(index), field.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending deg-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending deg-lex order; printers and pivot searches use this.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Greatest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
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
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    /// u * self * v for words u, v.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (left.mul(m).mul(right), c.clone()))
                .collect(),
        }
    }

    /// Total degree of the highest term, None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(|m| m.max_var()).max().unwrap_or(0)
    }

    /// The single multidegree of a multihomogeneous polynomial.
    pub fn multidegree(&self) -> Option<MultiDeg> {
        let mut keys = self.terms.keys().map(|m| m.multidegree());
        let first = keys.next()?;
        for k in keys {
            if k != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.multidegree().is_multilinear())
    }

    /// Rename variables through an index map.
    pub fn rename(&self, map: impl Fn(u32) -> u32 + Copy) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            out.add_term(m.rename(map), c.clone());
        }
        out
    }

    /// Apply an algebra endomorphism given by a substitution.
    pub fn substitute(&self, s: &Substitution) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let mut image = Polynomial::constant(c.clone());
            for &letter in m.letters() {
                image = match s.assignments.get(&letter) {
                    Some(p) => image.mul(p),
                    None => {
                        // unassigned letters map to themselves
                        let mut shifted = Polynomial::zero();
                        for (w, k) in image.terms() {
                            shifted.add_term(w.mul(&Monomial::var(letter)), k.clone());
                        }
                        shifted
                    }
                };
                if image.is_zero() {
                    break;
                }
            }
            out = out.add(&image);
        }
        out
    }

    /// Split into multihomogeneous parts, sorted by multidegree. The parts
    /// sum back to the polynomial.
    pub fn multihomogeneous_components(&self) -> Vec<Polynomial> {
        let mut buckets: BTreeMap<MultiDeg, Polynomial> = BTreeMap::new();
        for (m, c) in self.terms() {
            buckets
                .entry(m.multidegree())
                .or_insert_with(Polynomial::zero)
                .add_term(m.clone(), c.clone());
        }
        buckets
            .into_iter()
            .map(|(_, p)| p)
            .collect()
    }

    /// Keep only the terms whose multidegree equals `key`.
    pub fn component_at(&self, key: &MultiDeg) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            if &m.multidegree() == key {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Relabel the occurring variables to x1..xm preserving their order,
    /// m = number of distinct variables.
    pub fn compress_variables(&self) -> Polynomial {
        let mut vars: Vec<u32> = Vec::new();
        for m in self.terms.keys() {
            for &i in m.letters() {
                if !vars.contains(&i) {
                    vars.push(i);
                }
            }
        }
        vars.sort_unstable();
        self.rename(|i| vars.iter().position(|&v| v == i).unwrap() as u32 + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let (sign, mag) = if is_negative(c) {
                ("-", c.neg())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A finitely supported variable assignment; unassigned variables map to
/// themselves, so every substitution is an algebra endomorphism.
#[derive(Debug, Clone, Default)]
pub struct Substitution {
    assignments: BTreeMap<u32, Polynomial>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn assign(mut self, v: Variable, image: Polynomial) -> Substitution {
        self.assignments.insert(v.0, image);
        self
    }

    pub fn assign_var(mut self, index: u32, image: Polynomial) -> Substitution {
        assert!(index >= 1);
        self.assignments.insert(index, image);
        self
    }

    /// The shift x_i -> x_{i+1} on variables up to `max_index`.
    pub fn shift_up(max_index: u32, field: Field) -> Substitution {
        let mut s = Substitution::new();
        for i in 1..=max_index {
            s.assignments.insert(i, Polynomial::var(i + 1, field));
        }
        s
    }

    /// The left inverse of the shift: x_{i+1} -> x_i and x_1 -> 0.
    pub fn shift_down(max_index: u32, field: Field) -> Substitution {
        let mut s = Substitution::new();
        s.assignments.insert(1, Polynomial::zero());
        for i in 2..=max_index {
            s.assignments.insert(i, Polynomial::var(i - 1, field));
        }
        s
    }
}

/// Commutator a*b - b*a.
pub fn commutator(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.mul(b).sub(&b.mul(a))
}

/// The standard polynomial of degree k: the signed sum over all
/// permutations of x1..xk.
pub fn standard_polynomial(k: u32, field: Field) -> Polynomial {
    let mut out = Polynomial::zero();
    let mut perm: Vec<u32> = (1..=k).collect();
    loop {
        let sign = permutation_sign(&perm);
        out.add_term(
            Monomial::from_word(perm.clone()),
            if sign { field.one() } else { field.from_i64(-1) },
        );
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// True for even permutations of a duplicate-free sequence.
pub fn permutation_sign(seq: &[u32]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(seq: &mut [u32]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Fully polarize `f`: split into multihomogeneous parts and polarize each
/// repeated variable into fresh ones until every part is multilinear. The
/// outputs generate the same T-ideal as `f` when the characteristic is 0 or
/// exceeds deg f, and each output has its variables compressed to x1..xm.
pub fn multilinearize(f: &Polynomial, field: Field) -> Result<Vec<Polynomial>> {
    if let Some(d) = f.degree() {
        field.require_char_above(d).map_err(|_| {
            EngineError::CharacteristicTooSmall {
                characteristic: field.characteristic(),
                needed: d,
            }
        })?;
    }
    let mut out = Vec::new();
    for part in f.multihomogeneous_components() {
        let mut g = part;
        loop {
            let key = g.multidegree().expect("parts are multihomogeneous");
            let repeated = key
                .exponents()
                .iter()
                .position(|&e| e >= 2)
                .map(|k| k as u32 + 1);
            let Some(var) = repeated else { break };
            let fresh = g.max_var() + 1;
            let sub = Substitution::new().assign_var(
                var,
                Polynomial::var(var, field).add(&Polynomial::var(fresh, field)),
            );
            let expanded = g.substitute(&sub);
            // keep the slice where one copy moved to the fresh variable
            let mut target = key.exponents().to_vec();
            target[(var - 1) as usize] -= 1;
            target.resize(fresh as usize, 0);
            target[(fresh - 1) as usize] = 1;
            g = expanded.component_at(&MultiDeg::new(target));
        }
        if !g.is_zero() {
            out.push(g.compress_variables());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn x(i: u32) -> Polynomial {
        Polynomial::var(i, q())
    }

    #[test]
    fn substitute_shift() {
        let f = commutator(&x(1), &x(2));
        let phi = Substitution::shift_up(2, q());
        assert_eq!(f.substitute(&phi), commutator(&x(2), &x(3)));
    }

    #[test]
    fn substitute_kill_annihilates() {
        let f = x(1).mul(&x(2));
        let psi = Substitution::new().assign_var(1, Polynomial::zero());
        assert!(f.substitute(&psi).is_zero());
    }

    #[test]
    fn commutator_vanishes_on_equal_arguments() {
        let f = commutator(&x(1), &x(2));
        let s = Substitution::new().assign_var(2, x(1));
        assert!(f.substitute(&s).is_zero());
    }

    #[test]
    fn shift_down_after_up_is_identity() {
        let f = commutator(&x(1), &x(3)).add(&x(2));
        let up = Substitution::shift_up(4, q());
        let down = Substitution::shift_down(5, q());
        assert_eq!(f.substitute(&up).substitute(&down), f);
    }

    #[test]
    fn multihomogeneous_split() {
        let f = x(1).add(&x(1).mul(&x(2)));
        let parts = f.multihomogeneous_components();
        assert_eq!(parts, vec![x(1), x(1).mul(&x(2))]);

        let g = commutator(&x(1), &x(2));
        assert_eq!(g.multihomogeneous_components(), vec![g.clone()]);

        assert!(Polynomial::zero().multihomogeneous_components().is_empty());
    }

    #[test]
    fn components_sum_back() {
        let f = x(1)
            .mul(&x(1))
            .add(&x(2).mul(&x(1)))
            .sub(&Polynomial::one(q()))
            .add(&x(3));
        let sum = f
            .multihomogeneous_components()
            .into_iter()
            .fold(Polynomial::zero(), |acc, p| acc.add(&p));
        assert_eq!(sum, f);
    }

    #[test]
    fn multilinearize_keeps_multilinear_input() {
        let f = commutator(&x(1), &x(2));
        assert_eq!(multilinearize(&f, q()).unwrap(), vec![f]);
    }

    #[test]
    fn multilinearize_square() {
        // x1*x1 polarizes to x1*x2 + x2*x1
        let f = x(1).mul(&x(1));
        let expect = x(1).mul(&x(2)).add(&x(2).mul(&x(1)));
        assert_eq!(multilinearize(&f, q()).unwrap(), vec![expect]);
    }

    #[test]
    fn multilinearize_iterated_commutator() {
        // [[x1,x2],x2] polarizes to [[x1,x2],x3] + [[x1,x3],x2]
        let f = commutator(&commutator(&x(1), &x(2)), &x(2));
        let expect = commutator(&commutator(&x(1), &x(2)), &x(3))
            .add(&commutator(&commutator(&x(1), &x(3)), &x(2)));
        assert_eq!(multilinearize(&f, q()).unwrap(), vec![expect]);
    }

    #[test]
    fn multilinearize_char_guard() {
        let f = x(1).mul(&x(1)).mul(&x(1));
        let gf3 = Field::gf(3).unwrap();
        assert!(multilinearize(&f, gf3).is_err());
    }

    #[test]
    fn standard_polynomial_s3() {
        let s3 = standard_polynomial(3, q());
        assert_eq!(s3.num_terms(), 6);
        // s3(1, a, b) collapses to the commutator [a, b]
        let s = Substitution::new().assign_var(1, Polynomial::one(q()));
        let collapsed = s3.substitute(&s).compress_variables();
        assert_eq!(collapsed, commutator(&x(1), &x(2)));
    }

    #[test]
    fn standard_polynomial_s4_kills_unit() {
        let s4 = standard_polynomial(4, q());
        let s = Substitution::new().assign_var(1, Polynomial::one(q()));
        assert!(s4.substitute(&s).is_zero());
    }

    #[test]
    fn display_roundtrip_shape() {
        let f = x(2).mul(&x(1)).scale(&q().from_i64(-2)).add(&x(1));
        assert_eq!(format!("{f}"), "-2*x2*x1 + x1");
    }
}
