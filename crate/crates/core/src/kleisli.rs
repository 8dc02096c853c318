//! Arrows `X⊗A → B` in the Kleisli category of a comonoid `X`: morphisms
//! that may read a shared variable of type `X`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frobenius::ClassicalStructure;
use crate::scalar::Scalar;
use crate::tensor::{id_tensor, tensor_id, Mor};

#[derive(Clone, Debug)]
pub struct KleisliArrow<S: Scalar> {
    ctx: Arc<ClassicalStructure<S>>,
    f: Mor<S>,
    a: usize,
    b: usize,
}

/// Result of substituting a vector that need not be copyable.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution<S: Scalar> {
    pub value: Mor<S>,
    /// Whether the substituted vector was a comonoid homomorphism.
    pub copyable: bool,
}

fn same_ctx<S: Scalar>(a: &Arc<ClassicalStructure<S>>, b: &Arc<ClassicalStructure<S>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<S: Scalar> KleisliArrow<S> {
    /// `f : X⊗A → B`, with `A` of dimension `a`.
    pub fn new(ctx: Arc<ClassicalStructure<S>>, f: Mor<S>, a: usize) -> Result<Self> {
        if f.dom() != ctx.n() * a {
            return Err(Error::DimensionMismatch {
                op: "KleisliArrow",
                left: f.shape(),
                right: (f.cod(), ctx.n() * a),
            });
        }
        let b = f.cod();
        Ok(KleisliArrow { ctx, f, a, b })
    }

    /// The constant arrow `⊤⊗g`, which ignores the variable.
    pub fn embed(ctx: Arc<ClassicalStructure<S>>, g: &Mor<S>) -> Result<Self> {
        let f = ctx.top().tensor(g)?;
        Self::new(ctx, f, g.dom())
    }

    pub fn identity(ctx: Arc<ClassicalStructure<S>>, a: usize) -> Result<Self> {
        Self::embed(ctx, &Mor::identity(a)?)
    }

    /// `κx. φ(x)` for a family indexed by the context basis:
    /// `Σ_β φ_β ∘ (β‡ ⊗ A)`.
    pub fn abstract_family(ctx: Arc<ClassicalStructure<S>>, family: &[Mor<S>]) -> Result<Self> {
        let basis = ctx.find_basis()?;
        if family.len() != basis.len() {
            return Err(Error::shape(
                "abstract_family",
                format!("{} members for a basis of {}", family.len(), basis.len()),
            ));
        }
        let (b, a) = family
            .first()
            .map(Mor::shape)
            .ok_or_else(|| Error::shape("abstract_family", "empty basis"))?;
        let mut f = Mor::zero(b, ctx.n() * a)?;
        for (phi, beta) in family.iter().zip(basis) {
            f = f.add(&phi.compose(&tensor_id(&beta.dagger(), a)?)?)?;
        }
        Self::new(ctx, f, a)
    }

    pub fn ctx(&self) -> &Arc<ClassicalStructure<S>> {
        &self.ctx
    }

    pub fn f(&self) -> &Mor<S> {
        &self.f
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// `self ; s = s.f ∘ (X ⊗ self.f) ∘ (Δ ⊗ A)`.
    pub fn compose(&self, s: &KleisliArrow<S>) -> Result<Self> {
        if !same_ctx(&self.ctx, &s.ctx) {
            return Err(Error::shape("kleisli_compose", "arrows live over different contexts"));
        }
        if self.b != s.a {
            return Err(Error::DimensionMismatch {
                op: "kleisli_compose",
                left: (self.b, self.a),
                right: (s.b, s.a),
            });
        }
        let n = self.ctx.n();
        let f =
            s.f.compose(&id_tensor(n, &self.f)?)?
                .compose(&tensor_id(self.ctx.delta(), self.a)?)?;
        Self::new(self.ctx.clone(), f, self.a)
    }

    /// `f ∘ (v ⊗ A)` for a copyable `v`.
    pub fn substitute(&self, v: &Mor<S>, tol: f64) -> Result<Mor<S>> {
        let s = self.substitute_any(v, tol)?;
        if !s.copyable {
            return Err(Error::NotCopyable);
        }
        Ok(s.value)
    }

    /// `f ∘ (v ⊗ A)` for any vector, tagged with whether `v` is copyable.
    pub fn substitute_any(&self, v: &Mor<S>, tol: f64) -> Result<Substitution<S>> {
        let copyable = self.ctx.is_copyable(v, tol)?;
        let value = self.f.compose(&tensor_id(v, self.a)?)?;
        Ok(Substitution { value, copyable })
    }

    /// `(ε ⊗ A) ∘ (X ⊗ f‡) : X⊗B → A`, characterized by
    /// `substitute(dagger(k), β) = substitute(k, β)‡` for basis vectors `β`.
    pub fn dagger(&self, tol: f64) -> Result<Self> {
        let report = self.ctx.check_laws(tol)?;
        if !report.holds("frobenius") || !report.holds("self_duality") {
            return Err(Error::LawFailure("the context is not a Frobenius algebra".into()));
        }
        let n = self.ctx.n();
        let f = tensor_id(&self.ctx.cap()?, self.a)?.compose(&id_tensor(n, &self.f.dagger())?)?;
        Self::new(self.ctx.clone(), f, self.b)
    }
}

/// Whether the context basis separates morphisms, so that arrows agreeing
/// on every basis substitution are equal. In both models this amounts to
/// having `n` basis vectors.
pub fn basis_generates<S: Scalar>(ctx: &ClassicalStructure<S>) -> Result<bool> {
    Ok(ctx.find_basis()?.len() == ctx.n())
}

/// Whether two arrows agree on every basis substitution.
pub fn agree_on_basis<S: Scalar>(k1: &KleisliArrow<S>, k2: &KleisliArrow<S>, tol: f64) -> Result<bool> {
    for beta in k1.ctx.find_basis()? {
        if !k1.substitute(beta, tol)?.approx_eq(&k2.substitute(beta, tol)?, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
