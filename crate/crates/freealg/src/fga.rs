//! The group algebra of a free group: reduced words, the canonical basis
//! made of products (1 - x_{i1}^{n1})...(1 - x_{it}^{nt}) with nonzero
//! exponents and distinct adjacent indices, its degree-lexicographic order,
//! Schreier-set checks for that basis, and the index shifts.

use crate::error::{EngineError, Result};
use crate::scalar::{is_negative, Field, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A reduced word in the free group: syllables (variable index, nonzero
/// exponent) with distinct adjacent indices. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FGWord {
    syllables: Vec<(u32, i64)>,
}

impl FGWord {
    pub fn one() -> FGWord {
        FGWord::default()
    }

    pub fn generator(index: u32, exponent: i64) -> FGWord {
        FGWord::from_syllables(vec![(index, exponent)])
    }

    /// Normalize a syllable sequence: merge equal adjacent indices, drop
    /// zero exponents.
    pub fn from_syllables(syllables: Vec<(u32, i64)>) -> FGWord {
        let mut stack: Vec<(u32, i64)> = Vec::with_capacity(syllables.len());
        for (i, n) in syllables {
            assert!(i >= 1);
            if n == 0 {
                continue;
            }
            match stack.last_mut() {
                Some((j, m)) if *j == i => {
                    *m += n;
                    if *m == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push((i, n)),
            }
        }
        FGWord { syllables: stack }
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    pub fn is_one(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn mul(&self, other: &FGWord) -> FGWord {
        let mut all = self.syllables.clone();
        all.extend_from_slice(&other.syllables);
        FGWord::from_syllables(all)
    }

    pub fn inverse(&self) -> FGWord {
        FGWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|&(i, n)| (i, -n))
                .collect(),
        }
    }

    /// Sum of absolute syllable exponents.
    pub fn degree(&self) -> u32 {
        self.syllables
            .iter()
            .map(|&(_, n)| n.unsigned_abs() as u32)
            .sum()
    }
}

impl fmt::Display for FGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, (i, n)) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *n == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{n}")?;
            }
        }
        Ok(())
    }
}

/// A sparse group-algebra element: reduced words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FGElement {
    terms: BTreeMap<FGWord, Scalar>,
}

impl FGElement {
    pub fn zero() -> FGElement {
        FGElement::default()
    }

    pub fn one(field: Field) -> FGElement {
        FGElement::term(FGWord::one(), field.one())
    }

    pub fn term(word: FGWord, coefficient: Scalar) -> FGElement {
        let mut e = FGElement::zero();
        e.add_term(word, coefficient);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FGWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, word: FGWord, coefficient: Scalar) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.remove(&word) {
            None => {
                self.terms.insert(word, coefficient);
            }
            Some(old) => {
                let sum = old.add(&coefficient);
                if !sum.is_zero() {
                    self.terms.insert(word, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &FGElement) -> FGElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FGElement) -> FGElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FGElement {
        if c.is_zero() {
            return FGElement::zero();
        }
        FGElement {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &FGElement) -> FGElement {
        let mut out = FGElement::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.mul(w2), c1.mul(c2));
            }
        }
        out
    }

    /// Largest word degree present.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|w| w.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for FGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter() {
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
            if w.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A canonical basis monomial: the product of factors (1 - x_i^n) with
/// nonzero exponents and distinct adjacent indices. The empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FGMonomial {
    factors: Vec<(u32, i64)>,
}

impl FGMonomial {
    pub fn one() -> FGMonomial {
        FGMonomial {
            factors: Vec::new(),
        }
    }

    pub fn new(factors: Vec<(u32, i64)>) -> FGMonomial {
        assert!(factors.iter().all(|&(i, n)| i >= 1 && n != 0));
        assert!(
            factors.windows(2).all(|w| w[0].0 != w[1].0),
            "adjacent factor indices must differ"
        );
        FGMonomial { factors }
    }

    pub fn factors(&self) -> &[(u32, i64)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors
            .iter()
            .map(|&(_, n)| n.unsigned_abs() as u32)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Expand the product into the group algebra.
    pub fn expand(&self, field: Field) -> FGElement {
        let mut out = FGElement::one(field);
        for &(i, n) in &self.factors {
            let factor = FGElement::one(field).sub(&FGElement::term(
                FGWord::generator(i, n),
                field.one(),
            ));
            out = out.mul(&factor);
        }
        out
    }

    /// Every left factor: full factor prefixes and, within each factor, the
    /// partial exponents of the same sign up to the factor's exponent. The
    /// monomial itself and 1 are included.
    pub fn left_factors(&self) -> Vec<FGMonomial> {
        let mut out = vec![FGMonomial::one()];
        for r in 0..self.factors.len() {
            let (i, n) = self.factors[r];
            let sign = n.signum();
            let mut m = sign;
            loop {
                let mut factors = self.factors[..r].to_vec();
                factors.push((i, m));
                out.push(FGMonomial { factors });
                if m == n {
                    break;
                }
                m += sign;
            }
        }
        out
    }

    pub fn shift_up(&self) -> FGMonomial {
        FGMonomial {
            factors: self.factors.iter().map(|&(i, n)| (i + 1, n)).collect(),
        }
    }
}

impl fmt::Display for FGMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (i, n)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *n == 1 {
                write!(f, "(1-x{i})")?;
            } else {
                write!(f, "(1-x{i}^{n})")?;
            }
        }
        Ok(())
    }
}

/// Degree first; at equal degree, factor sequences compare left to right
/// with factor key (index, |exponent|, sign), positive exponents first.
/// This refines the seed 1 < (1-x1) < (1-x1^-1) < (1-x2) < ...
pub fn compare_fg(a: &FGMonomial, b: &FGMonomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (fa, fb) in a.factors.iter().zip(b.factors.iter()) {
            let key = |&(i, n): &(u32, i64)| (i, n.unsigned_abs(), n < 0);
            match key(fa).cmp(&key(fb)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        a.factors.len().cmp(&b.factors.len())
    })
}

impl PartialOrd for FGMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(compare_fg(self, other))
    }
}

impl Ord for FGMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_fg(self, other)
    }
}

/// True when the set contains every left factor of every member; otherwise
/// the first (member, missing left factor) pair in iteration order.
pub fn is_schreier_set(set: &[FGMonomial]) -> (bool, Option<(FGMonomial, FGMonomial)>) {
    for member in set {
        for factor in member.left_factors() {
            if !set.contains(&factor) {
                return (false, Some((member.clone(), factor)));
            }
        }
    }
    (true, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Up,
    Down,
}

/// Index shift on group-algebra elements: up sends x_i to x_{i+1}; down
/// sends x_{i+1} to x_i and x_1 to 1, so down(up(e)) = e.
pub fn apply_fg_shift(e: &FGElement, direction: ShiftDirection) -> FGElement {
    let mut out = FGElement::zero();
    for (w, c) in e.terms() {
        let syllables: Vec<(u32, i64)> = match direction {
            ShiftDirection::Up => w.syllables().iter().map(|&(i, n)| (i + 1, n)).collect(),
            ShiftDirection::Down => w
                .syllables()
                .iter()
                .filter(|&&(i, _)| i > 1)
                .map(|&(i, n)| (i - 1, n))
                .collect(),
        };
        out.add_term(FGWord::from_syllables(syllables), c.clone());
    }
    out
}

/// Expand a group-algebra element over the canonical basis. Fails when any
/// word degree exceeds the cap; the conversion itself never raises degree.
pub fn to_canonical(
    e: &FGElement,
    degree_cap: u32,
) -> Result<BTreeMap<FGMonomial, Scalar>> {
    let mut out: BTreeMap<FGMonomial, Scalar> = BTreeMap::new();
    for (word, coefficient) in e.terms() {
        if word.degree() > degree_cap {
            return Err(EngineError::DegreeBoundExceeded {
                degree: word.degree(),
                bound: degree_cap,
            });
        }
        // word = product over syllables of (1 - (1 - x^n)): expand over
        // subsets of chosen (1 - x^n) factors with alternating sign
        let syllables = word.syllables();
        let t = syllables.len();
        for mask in 0u32..(1 << t) {
            let chosen: Vec<(u32, i64)> = (0..t)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| syllables[k])
                .collect();
            let sign = if chosen.len() % 2 == 0 { 1 } else { -1 };
            for (factors, multiplier) in normalize_factors(chosen) {
                let monomial = FGMonomial::new(factors);
                let add = coefficient
                    .mul(&coefficient.field().from_i64(sign * multiplier));
                accumulate(&mut out, monomial, add);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn accumulate(map: &mut BTreeMap<FGMonomial, Scalar>, key: FGMonomial, add: Scalar) {
    match map.remove(&key) {
        None => {
            if !add.is_zero() {
                map.insert(key, add);
            }
        }
        Some(old) => {
            let sum = old.add(&add);
            if !sum.is_zero() {
                map.insert(key, sum);
            }
        }
    }
}

/// Rewrite a factor sequence with possibly equal adjacent indices into a
/// combination of valid canonical factor sequences, using
/// (1-x^n)(1-x^m) = (1-x^n) + (1-x^m) - (1-x^{n+m}).
fn normalize_factors(factors: Vec<(u32, i64)>) -> Vec<(Vec<(u32, i64)>, i64)> {
    let clash = factors
        .windows(2)
        .position(|w| w[0].0 == w[1].0);
    let Some(at) = clash else {
        return vec![(factors, 1)];
    };
    let (i, n) = factors[at];
    let (_, m) = factors[at + 1];
    let mut out = Vec::new();
    let mut variant = |replacement: Option<(u32, i64)>, sign: i64| {
        let mut seq = factors[..at].to_vec();
        if let Some(f) = replacement {
            seq.push(f);
        }
        seq.extend_from_slice(&factors[at + 2..]);
        for (normalized, k) in normalize_factors(seq) {
            out.push((normalized, sign * k));
        }
    };
    variant(Some((i, n)), 1);
    variant(Some((i, m)), 1);
    if n + m != 0 {
        variant(Some((i, n + m)), -1);
    }
    out
}

/// Inverse of [`to_canonical`]: expand every basis monomial.
pub fn from_canonical(map: &BTreeMap<FGMonomial, Scalar>, field: Field) -> FGElement {
    let mut out = FGElement::zero();
    for (monomial, c) in map {
        out = out.add(&monomial.expand(field).scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn mon(factors: &[(u32, i64)]) -> FGMonomial {
        FGMonomial::new(factors.to_vec())
    }

    #[test]
    fn word_reduction() {
        let w = FGWord::from_syllables(vec![(1, 2), (1, -2), (2, 1)]);
        assert_eq!(w, FGWord::generator(2, 1));
        let u = FGWord::generator(1, 1).mul(&FGWord::generator(1, -1));
        assert!(u.is_one());
    }

    #[test]
    fn ordering_seed_facts() {
        let one = FGMonomial::one();
        let f1 = mon(&[(1, 1)]);
        let f1inv = mon(&[(1, -1)]);
        let f2 = mon(&[(2, 1)]);
        assert!(compare_fg(&one, &f1) == Ordering::Less);
        assert!(compare_fg(&f1, &f1inv) == Ordering::Less);
        assert!(compare_fg(&f1inv, &f2) == Ordering::Less);
    }

    #[test]
    fn degree_dominates_order() {
        let heavy = mon(&[(1, -2), (2, 1)]);
        let light = mon(&[(1, 1), (2, 1)]);
        assert_eq!(compare_fg(&heavy, &light), Ordering::Greater);
    }

    #[test]
    fn canonical_of_single_generator() {
        let e = FGElement::term(FGWord::generator(1, 1), q().one());
        let can = to_canonical(&e, 5).unwrap();
        assert_eq!(can.len(), 2);
        assert_eq!(can[&FGMonomial::one()], q().one());
        assert_eq!(can[&mon(&[(1, 1)])], q().from_i64(-1));
    }

    #[test]
    fn canonical_of_product_word() {
        // x1*x2 = 1 - (1-x1) - (1-x2) + (1-x1)(1-x2)
        let e = FGElement::term(
            FGWord::from_syllables(vec![(1, 1), (2, 1)]),
            q().one(),
        );
        let can = to_canonical(&e, 5).unwrap();
        assert_eq!(can.len(), 4);
        assert_eq!(can[&mon(&[(1, 1), (2, 1)])], q().one());
        assert_eq!(can[&mon(&[(1, 1)])], q().from_i64(-1));
    }

    #[test]
    fn canonical_of_unit() {
        let can = to_canonical(&FGElement::one(q()), 2).unwrap();
        assert_eq!(can.len(), 1);
        assert_eq!(can[&FGMonomial::one()], q().one());
    }

    #[test]
    fn roundtrip_with_clashing_subwords() {
        // subsets of x1*x2*x1 produce adjacent equal indices that must be
        // rewritten before they form basis monomials
        let e = FGElement::term(
            FGWord::from_syllables(vec![(1, 1), (2, 1), (1, 1)]),
            q().one(),
        )
        .add(&FGElement::term(FGWord::generator(1, -2), q().from_i64(3)));
        let can = to_canonical(&e, 6).unwrap();
        assert_eq!(from_canonical(&can, q()), e);
    }

    #[test]
    fn degree_cap_enforced() {
        let e = FGElement::term(FGWord::generator(1, 4), q().one());
        assert!(to_canonical(&e, 3).is_err());
    }

    #[test]
    fn schreier_set_checks() {
        let good = vec![FGMonomial::one(), mon(&[(1, 1)])];
        assert!(is_schreier_set(&good).0);

        let bad = vec![FGMonomial::one(), mon(&[(1, 1), (2, 1)])];
        let (ok, pair) = is_schreier_set(&bad);
        assert!(!ok);
        let (_, missing) = pair.unwrap();
        assert_eq!(missing, mon(&[(1, 1)]));

        assert!(is_schreier_set(&[]).0);
    }

    #[test]
    fn partial_exponents_are_left_factors() {
        let m = mon(&[(1, 3)]);
        let lf = m.left_factors();
        assert!(lf.contains(&mon(&[(1, 1)])));
        assert!(lf.contains(&mon(&[(1, 2)])));
        // the lower set of a negative exponent keeps the sign
        let m = mon(&[(2, 1), (1, -2)]);
        let lf = m.left_factors();
        assert!(lf.contains(&mon(&[(2, 1), (1, -1)])));
        assert!(!lf.contains(&mon(&[(2, 1), (1, 1)])));
    }

    #[test]
    fn shifts_are_sections() {
        let e = FGElement::term(FGWord::from_syllables(vec![(1, 1), (3, -1)]), q().one())
            .add(&FGElement::one(q()).scale(&q().from_i64(2)));
        let up = apply_fg_shift(&e, ShiftDirection::Up);
        assert_eq!(apply_fg_shift(&up, ShiftDirection::Down), e);
        // down kills 1 - x1
        let kill = FGElement::one(q()).sub(&FGElement::term(
            FGWord::generator(1, 1),
            q().one(),
        ));
        assert!(apply_fg_shift(&kill, ShiftDirection::Down).is_zero());
    }
}
