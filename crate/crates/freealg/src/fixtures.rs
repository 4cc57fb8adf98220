//! Named fixtures: the recurring T-ideals (C, G, S3, S4 and their products)
//! and a list of small faithful modules used by the triangular-product
//! checks.

use crate::error::Result;
use crate::ideal::{ProductIdeal, TIdeal};
use crate::modalg::{FinDimAlgebra, Matrix, MatrixAlgebra, ModuleSpec};
use crate::poly::{commutator, standard_polynomial, Polynomial};
use crate::scalar::Field;

/// The T-ideal generated by the commutator [x1, x2].
pub fn commutator_ideal(field: Field) -> TIdeal {
    TIdeal::new(
        "C",
        vec![commutator(
            &Polynomial::var(1, field),
            &Polynomial::var(2, field),
        )],
        field,
    )
    .unwrap()
}

/// The T-ideal generated by the iterated commutator [[x1, x2], x3].
pub fn grassmann_ideal(field: Field) -> TIdeal {
    let x = |i| Polynomial::var(i, field);
    TIdeal::new(
        "G",
        vec![commutator(&commutator(&x(1), &x(2)), &x(3))],
        field,
    )
    .unwrap()
}

/// The T-ideal generated by the standard polynomial of degree k.
pub fn standard_ideal(k: u32, field: Field) -> Result<TIdeal> {
    TIdeal::new(format!("S{k}"), vec![standard_polynomial(k, field)], field)
}

/// Lookup for single named handles.
pub fn ideal_fixture(name: &str, field: Field) -> Option<TIdeal> {
    match name {
        "C" => Some(commutator_ideal(field)),
        "G" => Some(grassmann_ideal(field)),
        "S3" => standard_ideal(3, field).ok(),
        "S4" => standard_ideal(4, field).ok(),
        "0" => Some(TIdeal::zero(field)),
        "1" => Some(TIdeal::unit(field)),
        _ => None,
    }
}

/// The product C * C.
pub fn cc(field: Field) -> ProductIdeal {
    ProductIdeal::product(vec![commutator_ideal(field), commutator_ideal(field)])
}

fn matrix(field: Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect(),
    )
}

/// Build the abstract algebra spanned by the given independent matrices and
/// wrap the matrices as the module action on the natural carrier.
fn module_from_matrices(
    name: &str,
    field: Field,
    carrier: usize,
    labels: &[&str],
    action: Vec<Matrix>,
) -> Result<ModuleSpec> {
    let span = MatrixAlgebra::span_closure(carrier, &action, field);
    assert_eq!(
        span.dim(),
        action.len(),
        "fixture action matrices must be independent and span a closed algebra"
    );
    let algebra = FinDimAlgebra::from_matrix_algebra(
        labels.iter().map(|s| s.to_string()).collect(),
        &span,
    )?;
    // the echelonized span basis is the action basis
    ModuleSpec::new(name, algebra, carrier, span.basis().to_vec())
}

/// Small faithful modules with carrier dimension at most 3.
pub fn module_fixture(name: &str, field: Field) -> Option<ModuleSpec> {
    let spec = match name {
        // the base field acting on itself
        "triv1" => module_from_matrices("triv1", field, 1, &["1"], vec![matrix(field, &[&[1]])]),
        // diagonal plane: F + F on its natural carrier
        "diag2" => module_from_matrices(
            "diag2",
            field,
            2,
            &["p1", "p2"],
            vec![
                matrix(field, &[&[1, 0], &[0, 0]]),
                matrix(field, &[&[0, 0], &[0, 1]]),
            ],
        ),
        // dual numbers: 1 and a square-zero element
        "dual2" => module_from_matrices(
            "dual2",
            field,
            2,
            &["1", "eps"],
            vec![
                matrix(field, &[&[1, 0], &[0, 1]]),
                matrix(field, &[&[0, 1], &[0, 0]]),
            ],
        ),
        // 2x2 upper triangular matrices on the plane
        "ut2nat" => module_from_matrices(
            "ut2nat",
            field,
            2,
            &["e11", "e12", "e22"],
            vec![
                matrix(field, &[&[1, 0], &[0, 0]]),
                matrix(field, &[&[0, 1], &[0, 0]]),
                matrix(field, &[&[0, 0], &[0, 1]]),
            ],
        ),
        // full 2x2 matrix algebra on the plane
        "m2nat" => module_from_matrices(
            "m2nat",
            field,
            2,
            &["e11", "e12", "e21", "e22"],
            vec![
                matrix(field, &[&[1, 0], &[0, 0]]),
                matrix(field, &[&[0, 1], &[0, 0]]),
                matrix(field, &[&[0, 0], &[1, 0]]),
                matrix(field, &[&[0, 0], &[0, 1]]),
            ],
        ),
        // three orthogonal idempotents on a 3-dimensional carrier
        "diag3" => module_from_matrices(
            "diag3",
            field,
            3,
            &["p1", "p2", "p3"],
            vec![
                matrix(field, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
                matrix(field, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
                matrix(field, &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]),
            ],
        ),
        _ => return None,
    };
    Some(spec.expect("fixture modules validate"))
}

/// The names in the fixed module list, in report order.
pub const MODULE_FIXTURES: [&str; 6] = ["triv1", "diag2", "dual2", "ut2nat", "m2nat", "diag3"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate_and_are_faithful() {
        for name in MODULE_FIXTURES {
            let m = module_fixture(name, Field::Rational).unwrap();
            assert!(m.is_faithful(), "{name}");
            assert!(m.carrier_dim() <= 3, "{name}");
        }
    }

    #[test]
    fn standard_three_collapses_to_commutators() {
        // substituting 1 into the degree-3 standard polynomial leaves a
        // commutator, so S3 and C generate the same closure
        let f = Field::Rational;
        let s3 = ProductIdeal::single(standard_ideal(3, f).unwrap());
        let c = ProductIdeal::single(commutator_ideal(f));
        assert!(crate::ideal::includes(&c, &s3, 4, 4).unwrap().holds());
        assert!(crate::ideal::includes(&s3, &c, 4, 4).unwrap().holds());
    }
}
