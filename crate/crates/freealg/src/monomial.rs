//! Words over the free generators x1, x2, ... and their deg-lex order.

use std::cmp::Ordering;
use std::fmt;

/// A free generator, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub u32);

impl Variable {
    pub fn index(&self) -> u32 {
        self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A word in the free monoid on x1, x2, ...; the empty word is the unit.
///
/// Ordered by total degree first, then left-to-right lexicographically with
/// x1 < x2 < ... . The order is a well-order on words of bounded degree and
/// is compatible with multiplication by a fixed word on either side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    word: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { word: Vec::new() }
    }

    pub fn var(index: u32) -> Monomial {
        assert!(index >= 1, "variable indices start at 1");
        Monomial { word: vec![index] }
    }

    pub fn from_word(word: Vec<u32>) -> Monomial {
        assert!(word.iter().all(|&i| i >= 1));
        Monomial { word }
    }

    pub fn letters(&self) -> &[u32] {
        &self.word
    }

    pub fn degree(&self) -> u32 {
        self.word.len() as u32
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Monomial { word }
    }

    /// Largest variable index occurring, 0 for the empty word.
    pub fn max_var(&self) -> u32 {
        self.word.iter().copied().max().unwrap_or(0)
    }

    /// Exponent vector over x1..xv where v is the largest index present.
    pub fn multidegree(&self) -> MultiDeg {
        let mut counts = vec![0u32; self.max_var() as usize];
        for &i in &self.word {
            counts[(i - 1) as usize] += 1;
        }
        MultiDeg::new(counts)
    }

    /// Prefix of the first `len` letters.
    pub fn prefix(&self, len: usize) -> Monomial {
        Monomial {
            word: self.word[..len].to_vec(),
        }
    }

    /// The word with its last letter removed, plus that letter.
    pub fn split_last(&self) -> Option<(Monomial, Variable)> {
        let (&last, head) = self.word.split_last()?;
        Some((
            Monomial {
                word: head.to_vec(),
            },
            Variable(last),
        ))
    }

    /// Rename every letter through `map` (1-based index -> 1-based index).
    pub fn rename(&self, map: impl Fn(u32) -> u32) -> Monomial {
        Monomial {
            word: self.word.iter().map(|&i| map(i)).collect(),
        }
    }

    /// Shift every index up by one: the embedding x_i -> x_{i+1}.
    pub fn shift_up(&self) -> Monomial {
        self.rename(|i| i + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &i in &self.word {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "x{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// Multidegree key: exponent of x_{k+1} at position k, canonical with no
/// trailing zeros. Homogeneous components of all engine objects are keyed
/// by these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDeg(Vec<u32>);

impl MultiDeg {
    pub fn new(mut counts: Vec<u32>) -> MultiDeg {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        MultiDeg(counts)
    }

    pub fn zero() -> MultiDeg {
        MultiDeg(Vec::new())
    }

    /// The all-ones key (1,...,1) of length n.
    pub fn multilinear(n: u32) -> MultiDeg {
        MultiDeg(vec![1; n as usize])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: u32) -> u32 {
        self.0.get((var - 1) as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &MultiDeg) -> MultiDeg {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0u32; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0.get(k).copied().unwrap_or(0) + other.0.get(k).copied().unwrap_or(0);
        }
        MultiDeg::new(out)
    }

    /// Componentwise difference, None if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiDeg) -> Option<MultiDeg> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (k, &e) in other.0.iter().enumerate() {
            out[k] = out[k].checked_sub(e)?;
        }
        Some(MultiDeg::new(out))
    }

    /// Exponents sorted descending: the canonical representative of the
    /// orbit under variable permutation.
    pub fn sorted(&self) -> MultiDeg {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        MultiDeg::new(v)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// All monomials with exactly this multidegree, ascending.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut pool: Vec<u32> = Vec::new();
        for (k, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                pool.push(k as u32 + 1);
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(pool.len());
        arrangements(&mut pool, &mut current, &mut out);
        out.sort();
        out
    }

    /// All keys κ' with κ' + rest = self for some rest, i.e. 0 <= κ' <= self
    /// componentwise, ascending by (total, lex).
    pub fn sub_keys(&self) -> Vec<MultiDeg> {
        let mut out = vec![Vec::new()];
        for &e in &self.0 {
            let mut next = Vec::new();
            for partial in &out {
                for pick in 0..=e {
                    let mut p = partial.clone();
                    p.push(pick);
                    next.push(p);
                }
            }
            out = next;
        }
        let mut keys: Vec<MultiDeg> = out.into_iter().map(MultiDeg::new).collect();
        keys.sort_by_key(|k| (k.total(), k.0.clone()));
        keys
    }
}

fn arrangements(pool: &mut Vec<u32>, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pool.is_empty() {
        out.push(Monomial::from_word(current.clone()));
        return;
    }
    let mut seen = Vec::new();
    for k in 0..pool.len() {
        let letter = pool[k];
        if seen.contains(&letter) {
            continue;
        }
        seen.push(letter);
        pool.swap_remove(k);
        current.push(letter);
        arrangements(pool, current, out);
        current.pop();
        pool.push(letter);
        let last = pool.len() - 1;
        pool.swap(k, last);
    }
}

impl fmt::Display for MultiDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Sorted multidegree keys of total degree 0..=bound over a window of
/// `window` variables: partitions with at most `window` parts. Inclusion
/// checks range over these; arbitrary keys reduce to them by renaming.
pub fn canonical_keys(bound: u32, window: u32) -> Vec<MultiDeg> {
    let mut keys = Vec::new();
    for total in 0..=bound {
        let mut parts = Vec::new();
        partitions_into(total, total, window, &mut parts, &mut keys);
    }
    keys
}

fn partitions_into(
    remaining: u32,
    max_part: u32,
    slots: u32,
    acc: &mut Vec<u32>,
    out: &mut Vec<MultiDeg>,
) {
    if remaining == 0 {
        out.push(MultiDeg::new(acc.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        acc.push(part);
        partitions_into(remaining - part, part, slots - 1, acc, out);
        acc.pop();
    }
}

/// All multidegree keys of exact total degree `degree` over x1..x`window`,
/// in ascending lex order. Unlike [`canonical_keys`] these are not sorted
/// descending, so they enumerate every component of a fixed total degree.
pub fn keys_of_degree(degree: u32, window: u32) -> Vec<MultiDeg> {
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::new();
    fn rec(remaining: u32, slots: u32, acc: &mut Vec<u32>, out: &mut Vec<MultiDeg>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(MultiDeg::new(acc.clone()));
            }
            return;
        }
        for pick in 0..=remaining {
            acc.push(pick);
            rec(remaining - pick, slots - 1, acc, out);
            acc.pop();
        }
    }
    rec(degree, window, &mut acc, &mut out);
    out
}

/// All monomials of exact total degree `degree` over x1..x`window`, ascending.
pub fn monomials_of_degree(degree: u32, window: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(degree as usize);
    fn rec(depth: u32, window: u32, word: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if depth == 0 {
            out.push(Monomial::from_word(word.clone()));
            return;
        }
        for ltr in 1..=window {
            word.push(ltr);
            rec(depth - 1, window, word, out);
            word.pop();
        }
    }
    rec(degree, window, &mut word, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(word: &[u32]) -> Monomial {
        Monomial::from_word(word.to_vec())
    }

    #[test]
    fn deglex_examples() {
        assert!(m(&[1]) < m(&[2]));
        assert!(m(&[2]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[1, 2]));
    }

    #[test]
    fn order_compatible_with_multiplication() {
        let words = [m(&[1]), m(&[2]), m(&[1, 2]), m(&[2, 1]), m(&[1, 1, 2])];
        let w = m(&[2, 1]);
        for a in &words {
            for b in &words {
                if a < b {
                    assert!(w.mul(a) < w.mul(b));
                    assert!(a.mul(&w) < b.mul(&w));
                }
            }
        }
    }

    #[test]
    fn multideg_roundtrip() {
        let u = m(&[3, 1, 3]);
        assert_eq!(u.multidegree(), MultiDeg::new(vec![1, 0, 2]));
        assert_eq!(u.multidegree().total(), 3);
    }

    #[test]
    fn multideg_monomials_count() {
        // arrangements of the multiset {1,1,2}
        let key = MultiDeg::new(vec![2, 1]);
        let mons = key.monomials();
        assert_eq!(mons.len(), 3);
        assert!(mons.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_key_counts() {
        // partitions of 0..=4 into at most 2 parts: 1,1,2,2,3
        assert_eq!(canonical_keys(4, 2).len(), 9);
    }

    #[test]
    fn sub_keys_of_multilinear() {
        let key = MultiDeg::multilinear(3);
        assert_eq!(key.sub_keys().len(), 8);
    }
}
