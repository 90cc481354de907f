//! Free bigraded-commutative algebra with exact rational coefficients.
//!
//! Generators carry a form degree and a ghost number; the total degree mod 2
//! decides whether they commute or anticommute. Graded derivations such as
//! the de Rham differential or a BRS operator are given by their values on
//! generators and extended by the Leibniz rule.

mod derivation;
mod expr;
mod gen;
mod mixed;

pub use derivation::{compose_check, graded_commutator, Derivation, Residual};
pub use expr::{Expr, Monomial};
pub use gen::{Bidegree, Gen, GenBuilder};
pub use mixed::Mixed;

use crate::error::Result;
use crate::scalar::Scalar;

/// Coefficient rings a [`Derivation`] can act on.
pub trait Differentiable: Scalar {
    fn derive(&self, d: &Derivation) -> Result<Self>;
}

impl Differentiable for Expr {
    fn derive(&self, d: &Derivation) -> Result<Self> {
        d.apply(self)
    }
}

impl Differentiable for Mixed {
    fn derive(&self, d: &Derivation) -> Result<Self> {
        self.apply(d)
    }
}
