use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{chain, exact_sqrt, id_tensor, tensor_id, Mor};

/// A self-duality `(η, ε)` on an object of dimension `n`, with
/// `η : I → n·n` and `ε : n·n → I` satisfying both snake equations.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityPair<S: Scalar> {
    n: usize,
    eta: Mor<S>,
    eps: Mor<S>,
}

impl<S: Scalar> DualityPair<S> {
    /// Validates the snake equations at the scalar model's default tolerance.
    pub fn new(eta: Mor<S>, eps: Mor<S>) -> Result<Self> {
        Self::with_tolerance(eta, eps, S::default_tolerance())
    }

    pub fn with_tolerance(eta: Mor<S>, eps: Mor<S>, tol: f64) -> Result<Self> {
        if eta.dom() != 1 || eps.cod() != 1 || eta.cod() != eps.dom() {
            return Err(Error::shape(
                "DualityPair",
                format!("η {:?} and ε {:?} do not form a pairing", eta.shape(), eps.shape()),
            ));
        }
        let n = exact_sqrt(eta.cod())
            .ok_or_else(|| Error::shape("DualityPair", format!("{} is not a square", eta.cod())))?;
        let pair = DualityPair { n, eta, eps };
        let residual = pair.snake_residual()?;
        if residual > tol {
            return Err(Error::InvalidDuality { residual });
        }
        Ok(pair)
    }

    pub(crate) fn unchecked(n: usize, eta: Mor<S>, eps: Mor<S>) -> Self {
        DualityPair { n, eta, eps }
    }

    /// `η = Σ_i e_i ⊗ e_i`, `ε = η‡`.
    pub fn canonical(n: usize) -> Result<Self> {
        let eta = Mor::from_entries(n * n, 1, (0..n).map(|i| (i * n + i, 0, S::one())))?;
        let eps = eta.dagger();
        Ok(DualityPair { n, eta, eps })
    }

    /// `(η, η‡)` for a strongly entangled `η`.
    pub fn from_entangled(eta: &Mor<S>, tol: f64) -> Result<Self> {
        Self::with_tolerance(eta.clone(), eta.dagger(), tol)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> &Mor<S> {
        &self.eta
    }

    pub fn eps(&self) -> &Mor<S> {
        &self.eps
    }

    /// Worst residual of `(ε⊗X)(X⊗η) = id` and `(X⊗ε)(η⊗X) = id`.
    pub fn snake_residual(&self) -> Result<f64> {
        let n = self.n;
        let id = Mor::identity(n)?;
        let left = chain(&[&id_tensor(n, &self.eta)?, &tensor_id(&self.eps, n)?])?;
        let right = chain(&[&tensor_id(&self.eta, n)?, &id_tensor(n, &self.eps)?])?;
        Ok(left.residual(&id)?.max(right.residual(&id)?))
    }
}
