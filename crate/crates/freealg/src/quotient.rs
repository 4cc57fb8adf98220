//! Annihilators (N : Z) and separators J ÷ U of T-ideals, truncated at a
//! degree bound.
//!
//! The annihilator solves, per multidegree key, the linear conditions
//! z * a ∈ N against echelon bases of Z. Only finitely many z are checked,
//! so the computed components contain the true ones (outer approximation).
//!
//! The separator decomposes the graded components of J over a free-module
//! basis of U and closes the collected right coefficients under
//! substitution. Only finitely many elements of J contribute, so the result
//! sits inside the true separator (inner approximation). The defining
//! containment J ⊆ U * (J ÷ U) still holds componentwise up to the bound,
//! because every basis element of every component of J is accounted for.

use crate::echelon::RowSpace;
use crate::error::{EngineError, Result};
use crate::ideal::{includes, ProductIdeal, Provenance, TIdeal};
use crate::monomial::{canonical_keys, keys_of_degree, MultiDeg};
use crate::poly::Polynomial;
use crate::schreier::{decompose, free_module_basis};

/// Incrementally collect generators, skipping anything already inside the
/// closure of what was collected before.
struct GeneratorAccumulator {
    name: String,
    provenance: Provenance,
    field: crate::scalar::Field,
    generators: Vec<Polynomial>,
    handle: TIdeal,
}

impl GeneratorAccumulator {
    fn new(name: String, provenance: Provenance, field: crate::scalar::Field) -> Self {
        GeneratorAccumulator {
            handle: TIdeal::with_provenance(name.clone(), Vec::new(), field, provenance).unwrap(),
            name,
            provenance,
            field,
            generators: Vec::new(),
        }
    }

    fn offer(&mut self, candidate: Polynomial) -> Result<()> {
        if candidate.is_zero() {
            return Ok(());
        }
        let key = candidate
            .multidegree()
            .expect("generator candidates are multihomogeneous");
        if self.handle.component(&key).contains(&candidate) {
            return Ok(());
        }
        self.generators.push(candidate);
        self.handle = TIdeal::with_provenance(
            self.name.clone(),
            self.generators.clone(),
            self.field,
            self.provenance,
        )?;
        Ok(())
    }

    fn finish(self) -> TIdeal {
        self.handle
    }
}

/// The annihilator handle (numerator : divisor) at the given bound.
///
/// Component semantics: a of multidegree κ with |κ| = m <= bound - 1 is kept
/// iff z * a lands in the numerator component for every z in a divisor
/// component of total degree <= bound - m. The result handle is generated by
/// the kernels found at canonical keys and carries outer provenance.
pub fn annihilator(
    numerator: &ProductIdeal,
    divisor: &ProductIdeal,
    bound: u32,
    window: u32,
) -> Result<TIdeal> {
    let field = numerator.field();
    field.require_char_above(bound)?;
    if divisor.is_zero() {
        return Err(EngineError::JZero);
    }
    let name = format!("({}:{})", numerator.name(), divisor.name());
    // a = 1 works iff the divisor already sits inside the numerator
    if includes(numerator, divisor, bound, window)?.holds() {
        return TIdeal::with_provenance(
            name,
            vec![Polynomial::one(field)],
            field,
            Provenance::OuterApprox { bound },
        );
    }
    let mut acc = GeneratorAccumulator::new(name, Provenance::OuterApprox { bound }, field);
    for key in canonical_keys(bound.saturating_sub(1), window) {
        if key.is_zero() {
            continue;
        }
        for solution in annihilator_kernel(numerator, divisor, &key, bound, window) {
            acc.offer(solution)?;
        }
    }
    Ok(acc.finish())
}

/// Kernel of the conditions z * a ∈ numerator at one key for a.
fn annihilator_kernel(
    numerator: &ProductIdeal,
    divisor: &ProductIdeal,
    key: &MultiDeg,
    bound: u32,
    window: u32,
) -> Vec<Polynomial> {
    let field = numerator.field();
    let candidates = key.monomials();
    let cols = candidates.len();
    let mut constraints = RowSpace::new(cols);
    'outer: for z_degree in 1..=(bound - key.total()) {
        for z_key in keys_of_degree(z_degree, window) {
            let z_space = divisor.component(&z_key);
            if z_space.is_empty() {
                continue;
            }
            let target = numerator.component(&z_key.add(key));
            for z in z_space.rows() {
                // normal forms of z * u for each candidate word u
                let normal_forms: Vec<Polynomial> = candidates
                    .iter()
                    .map(|u| target.reduce(&z.mul(&Polynomial::monomial(u.clone(), field.one()))))
                    .collect();
                let mut residual_monomials: Vec<&crate::monomial::Monomial> = Vec::new();
                for nf in &normal_forms {
                    for (m, _) in nf.terms() {
                        if !residual_monomials.contains(&m) {
                            residual_monomials.push(m);
                        }
                    }
                }
                for m in residual_monomials {
                    let row: Vec<_> = normal_forms
                        .iter()
                        .map(|nf| nf.coefficient(m).cloned().unwrap_or_else(|| field.zero()))
                        .collect();
                    constraints.insert(row);
                    if constraints.rank() == cols {
                        break 'outer;
                    }
                }
            }
        }
    }
    constraints
        .kernel_basis(field.zero(), field.one())
        .into_iter()
        .map(|coords| {
            let mut p = Polynomial::zero();
            for (u, c) in candidates.iter().zip(coords) {
                p.add_term(u.clone(), c);
            }
            p
        })
        .collect()
}

/// Pair of runs at bound and bound + 1, with the canonical keys at which
/// the components differ.
pub struct Stabilized {
    pub handle: TIdeal,
    pub probe: TIdeal,
    pub changed_keys: Vec<MultiDeg>,
}

impl Stabilized {
    pub fn stable(&self) -> bool {
        self.changed_keys.is_empty()
    }

    /// Keys of total degree <= max_total that stayed put between the runs.
    pub fn stable_keys(&self, max_total: u32, window: u32) -> Vec<MultiDeg> {
        canonical_keys(max_total, window)
            .into_iter()
            .filter(|k| !self.changed_keys.contains(k))
            .collect()
    }
}

fn compare_components(a: &TIdeal, b: &TIdeal, bound: u32, window: u32) -> Vec<MultiDeg> {
    canonical_keys(bound, window)
        .into_iter()
        .filter(|key| a.component(key).rows() != b.component(key).rows())
        .collect()
}

/// Annihilator with a stabilization probe at bound + 1: reports at which
/// keys of total degree <= bound - 1 the recomputation moved.
pub fn annihilator_stabilized(
    numerator: &ProductIdeal,
    divisor: &ProductIdeal,
    bound: u32,
    window: u32,
) -> Result<Stabilized> {
    let handle = annihilator(numerator, divisor, bound, window)?;
    let probe = annihilator(numerator, divisor, bound + 1, window)?;
    let changed_keys = compare_components(&handle, &probe, bound.saturating_sub(1), window);
    Ok(Stabilized {
        handle,
        probe,
        changed_keys,
    })
}

/// The separator handle J ÷ U at the given bound: the ideal generated by
/// all right coefficients of the component bases of J over the free-module
/// basis of U.
pub fn separator(j: &ProductIdeal, u: &ProductIdeal, bound: u32, window: u32) -> Result<TIdeal> {
    let field = u.field();
    field.require_char_above(bound)?;
    if u.is_zero() {
        return Err(EngineError::UZero);
    }
    let name = format!("({}/{})", j.name(), u.name());
    if j.is_zero() {
        return TIdeal::with_provenance(name, Vec::new(), field, Provenance::InnerApprox { bound });
    }
    let verdict = includes(u, j, bound, window)?;
    if let Some((w, key)) = verdict.witness {
        return Err(EngineError::InclusionViolated {
            witness: w.to_string(),
            degree: key.total(),
        });
    }
    let basis = free_module_basis(u, bound, window)?;
    let mut acc = GeneratorAccumulator::new(name, Provenance::InnerApprox { bound }, field);
    for key in canonical_keys(bound, window) {
        if key.is_zero() {
            continue;
        }
        let space = j.component(&key);
        for z in space.rows() {
            let dec = decompose(z, u, &basis)?;
            for (_, coefficient) in dec.coefficients() {
                acc.offer(coefficient.clone())?;
            }
        }
        if acc.handle.is_unit() {
            break;
        }
    }
    Ok(acc.finish())
}

/// Separator with a stabilization probe at bound + 1.
pub fn separator_stabilized(
    j: &ProductIdeal,
    u: &ProductIdeal,
    bound: u32,
    window: u32,
) -> Result<Stabilized> {
    let handle = separator(j, u, bound, window)?;
    let probe = separator(j, u, bound + 1, window)?;
    let changed_keys = compare_components(&handle, &probe, bound, window);
    Ok(Stabilized {
        handle,
        probe,
        changed_keys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{commutator, standard_polynomial};
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn x(i: u32) -> Polynomial {
        Polynomial::var(i, q())
    }

    fn c() -> TIdeal {
        TIdeal::new("C", vec![commutator(&x(1), &x(2))], q()).unwrap()
    }

    fn cc() -> ProductIdeal {
        ProductIdeal::product(vec![c(), c()])
    }

    #[test]
    fn annihilator_by_unit_recovers_ideal() {
        // the closure of <x1> is everything, and (CC : everything) = CC
        let unit_like = ProductIdeal::single(TIdeal::new("X1", vec![x(1)], q()).unwrap());
        let result = ProductIdeal::single(annihilator(&cc(), &unit_like, 5, 4).unwrap());
        assert!(includes(&result, &cc(), 4, 4).unwrap().holds());
        assert!(includes(&cc(), &result, 4, 4).unwrap().holds());
    }

    #[test]
    fn annihilator_of_ideal_by_itself_is_unit() {
        // z * a ∈ C for every a once z ∈ C
        let ci = ProductIdeal::single(c());
        let result = annihilator(&ci, &ci, 4, 3).unwrap();
        assert!(result.is_unit());
    }

    #[test]
    fn annihilator_rejects_zero_divisor() {
        let zero = ProductIdeal::single(TIdeal::zero(q()));
        assert!(matches!(
            annihilator(&ProductIdeal::single(c()), &zero, 3, 2),
            Err(EngineError::JZero)
        ));
    }

    #[test]
    fn separator_of_ideal_by_itself_is_unit() {
        let ci = ProductIdeal::single(c());
        let result = separator(&ci, &ci, 4, 3).unwrap();
        assert!(result.is_unit());
    }

    #[test]
    fn separator_of_zero_is_zero() {
        let zero = ProductIdeal::single(TIdeal::zero(q()));
        let result = separator(&zero, &ProductIdeal::single(c()), 4, 3).unwrap();
        assert!(result.is_zero());
    }

    #[test]
    fn separator_requires_inclusion() {
        let s4 = ProductIdeal::single(
            TIdeal::new("S4", vec![standard_polynomial(4, q())], q()).unwrap(),
        );
        // C is not inside S4
        let err = separator(&ProductIdeal::single(c()), &s4, 4, 4).unwrap_err();
        assert!(matches!(err, EngineError::InclusionViolated { .. }));
    }

    #[test]
    fn separator_cc_by_c_matches_c_at_degree_two() {
        let result = separator(&cc(), &ProductIdeal::single(c()), 4, 4).unwrap();
        let c_handle = c();
        for key in keys_of_degree(2, 2) {
            assert_eq!(
                result.component(&key).rows(),
                c_handle.component(&key).rows(),
                "key {key}"
            );
        }
        // the defining containment: CC ⊆ C * (CC ÷ C) up to the bound
        let reassembled = ProductIdeal::product(vec![c_handle, result.clone()]);
        assert!(includes(&reassembled, &cc(), 4, 4).unwrap().holds());
        // and the separator stays inside C
        assert!(includes(
            &ProductIdeal::single(c()),
            &ProductIdeal::single(result),
            4,
            4
        )
        .unwrap()
        .holds());
    }
}
