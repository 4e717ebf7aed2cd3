//! Certificates that a tangent field is complete (integrates to an algebraic
//! flow), and their independent re-verification.

use crate::derivation::{pushforward, Derivation, RingAutomorphism};
use crate::polyring::{ExponentVector, Polynomial};

/// Why a field is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessCertificate {
    /// Locally nilpotent; `orders[i]` is the least `m` with `X^m(a_i) = 0`.
    Lnd { field: Derivation, orders: [u32; 4] },
    /// Each coordinate is an eigenvector with integer eigenvalue.
    Diagonal { field: Derivation },
    /// `f · X` where `X(X(f)) = 0` and `X` is complete.
    FunctionTimesField {
        factor: Polynomial,
        base: Box<CompletenessCertificate>,
        field: Derivation,
    },
    /// `α ∘ X ∘ α⁻¹` for a complete `X`.
    Conjugated {
        automorphism: RingAutomorphism,
        base: Box<CompletenessCertificate>,
        field: Derivation,
    },
}

/// Nilpotency orders of `x` on the coordinates, if all are at most `bound`.
pub fn is_locally_nilpotent(x: &Derivation, bound: Option<u32>) -> Option<[u32; 4]> {
    x.nilpotency_orders(bound.unwrap_or_else(|| x.default_nilpotency_bound()))
}

/// Integer eigenvalues of a diagonal field `Σ λ_i a_i ∂_i`.
fn diagonal_eigenvalues(x: &Derivation) -> Option<[i64; 4]> {
    let mut out = [0i64; 4];
    for (i, c) in x.coefficients().iter().enumerate() {
        match c.len() {
            0 => {}
            1 => {
                let (e, v) = c.leading_term()?;
                if *e != ExponentVector::unit(i) || !v.is_integer() {
                    return None;
                }
                out[i] = i64::try_from(v.to_integer()).ok()?;
            }
            _ => return None,
        }
    }
    Some(out)
}

impl CompletenessCertificate {
    pub fn lnd(field: Derivation, bound: Option<u32>) -> Option<Self> {
        let orders = is_locally_nilpotent(&field, bound)?;
        Some(CompletenessCertificate::Lnd { field, orders })
    }

    pub fn diagonal(field: Derivation) -> Option<Self> {
        diagonal_eigenvalues(&field)?;
        Some(CompletenessCertificate::Diagonal { field })
    }

    pub fn function_times(factor: Polynomial, base: CompletenessCertificate) -> Self {
        let field = base.field().times(&factor);
        CompletenessCertificate::FunctionTimesField {
            factor: factor.reduced(field.params()),
            base: Box::new(base),
            field,
        }
    }

    /// Transports the certificate along `alpha`. Fails only on a parameter
    /// mismatch.
    pub fn conjugate(&self, alpha: &RingAutomorphism) -> crate::Result<Self> {
        let field = pushforward(alpha, self.field())?;
        Ok(CompletenessCertificate::Conjugated {
            automorphism: alpha.clone(),
            base: Box::new(self.clone()),
            field,
        })
    }

    pub fn field(&self) -> &Derivation {
        match self {
            CompletenessCertificate::Lnd { field, .. }
            | CompletenessCertificate::Diagonal { field }
            | CompletenessCertificate::FunctionTimesField { field, .. }
            | CompletenessCertificate::Conjugated { field, .. } => field,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CompletenessCertificate::Lnd { .. } => "lnd",
            CompletenessCertificate::Diagonal { .. } => "diagonal",
            CompletenessCertificate::FunctionTimesField { .. } => "function_times_field",
            CompletenessCertificate::Conjugated { .. } => "conjugated",
        }
    }
}

/// Re-checks a certificate from scratch. The certified field must also be
/// tangent to the threefold.
pub fn verify_completeness(cert: &CompletenessCertificate) -> bool {
    cert.field().is_tangent() && verify_structure(cert)
}

fn verify_structure(cert: &CompletenessCertificate) -> bool {
    match cert {
        CompletenessCertificate::Lnd { field, orders } => {
            let bound = orders.iter().copied().max().unwrap_or(0);
            field.nilpotency_orders(bound).as_ref() == Some(orders)
        }
        CompletenessCertificate::Diagonal { field } => diagonal_eigenvalues(field).is_some(),
        CompletenessCertificate::FunctionTimesField { factor, base, field } => {
            let x = base.field();
            x.apply_reduced(&x.apply_reduced(factor)).is_zero()
                && *field == x.times(factor)
                && verify_completeness(base)
        }
        CompletenessCertificate::Conjugated {
            automorphism,
            base,
            field,
        } => {
            let inverse_ok = RingAutomorphism::from_images(
                *automorphism.params(),
                automorphism.images().clone(),
                automorphism.inverse_images().clone(),
            )
            .is_ok();
            inverse_ok
                && automorphism.preserves_defining_polynomial()
                && pushforward(automorphism, base.field()).as_ref() == Ok(field)
                && verify_completeness(base)
        }
    }
}
