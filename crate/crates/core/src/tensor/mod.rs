//! Morphisms as matrices and the dagger-symmetric-monoidal toolkit built on
//! them: dualities, conjugates, inner products, entanglement and traces.

mod duality;
mod mor;

pub use duality::DualityPair;
pub use mor::{Mor, RowIter};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `g ∘ f`.
pub fn compose<S: Scalar>(g: &Mor<S>, f: &Mor<S>) -> Result<Mor<S>> {
    g.compose(f)
}

/// Composes a chain given in diagrammatic order: `chain(&[f, g, h]) = h ∘ g ∘ f`.
pub fn chain<S: Scalar>(maps: &[&Mor<S>]) -> Result<Mor<S>> {
    let (first, rest) = maps.split_first().ok_or_else(|| Error::shape("chain", "empty chain"))?;
    rest.iter().try_fold((*first).clone(), |acc, next| next.compose(&acc))
}

pub fn tensor<S: Scalar>(f: &Mor<S>, g: &Mor<S>) -> Result<Mor<S>> {
    f.tensor(g)
}

/// `f ⊗ id_n`.
pub fn tensor_id<S: Scalar>(f: &Mor<S>, n: usize) -> Result<Mor<S>> {
    f.tensor(&Mor::identity(n)?)
}

/// `id_n ⊗ f`.
pub fn id_tensor<S: Scalar>(n: usize, f: &Mor<S>) -> Result<Mor<S>> {
    Mor::identity(n)?.tensor(f)
}

/// Dual of `f : A → B` with respect to self-dualities on `A` and `B`:
/// `f* = (ε_B ⊗ A) ∘ (B ⊗ f ⊗ A) ∘ (B ⊗ η_A) : B → A`.
pub fn dual<S: Scalar>(f: &Mor<S>, d_dom: &DualityPair<S>, d_cod: &DualityPair<S>) -> Result<Mor<S>> {
    let (a, b) = (f.dom(), f.cod());
    if d_dom.n() != a || d_cod.n() != b {
        return Err(Error::DimensionMismatch {
            op: "dual",
            left: f.shape(),
            right: (d_cod.n(), d_dom.n()),
        });
    }
    let open = id_tensor(b, d_dom.eta())?;
    let apply = id_tensor(b, &tensor_id(f, a)?)?;
    let close = tensor_id(d_cod.eps(), a)?;
    chain(&[&open, &apply, &close])
}

/// Conjugate `f_* = (f*)‡`.
pub fn lower_star<S: Scalar>(f: &Mor<S>, d_dom: &DualityPair<S>, d_cod: &DualityPair<S>) -> Result<Mor<S>> {
    Ok(dual(f, d_dom, d_cod)?.dagger())
}

/// `f` is real when `f = f_*`.
pub fn is_real<S: Scalar>(f: &Mor<S>, d_dom: &DualityPair<S>, d_cod: &DualityPair<S>, tol: f64) -> Result<bool> {
    Ok(f.approx_eq(&lower_star(f, d_dom, d_cod)?, tol))
}

fn check_vector<S: Scalar>(op: &'static str, v: &Mor<S>) -> Result<()> {
    if v.dom() != 1 {
        return Err(Error::shape(op, format!("expected a vector, got {:?}", v.shape())));
    }
    Ok(())
}

/// `⟨a|b⟩ = b‡ ∘ a`.
pub fn inner<S: Scalar>(a: &Mor<S>, b: &Mor<S>) -> Result<S> {
    check_vector("inner", a)?;
    check_vector("inner", b)?;
    b.dagger().compose(a)?.as_scalar()
}

/// `(a‡ ⊗ id_B) ∘ b` for `a : I → A`, `b : I → A ⊗ B`.
pub fn partial_inner<S: Scalar>(a: &Mor<S>, b: &Mor<S>) -> Result<Mor<S>> {
    check_vector("partial_inner", a)?;
    check_vector("partial_inner", b)?;
    if !b.cod().is_multiple_of(a.cod()) {
        return Err(Error::DimensionMismatch {
            op: "partial_inner",
            left: a.shape(),
            right: b.shape(),
        });
    }
    tensor_id(&a.dagger(), b.cod() / a.cod())?.compose(b)
}

/// Dimension `n` with `n·n == d`.
pub fn exact_sqrt(d: usize) -> Option<usize> {
    let r = (d as f64).sqrt().round() as usize;
    (r * r == d).then_some(r)
}

/// The two snake composites `(η‡ ⊗ X)(X ⊗ η)` and `(X ⊗ η‡)(η ⊗ X)`.
pub fn snake_composites<S: Scalar>(eta: &Mor<S>) -> Result<(Mor<S>, Mor<S>)> {
    check_vector("snake", eta)?;
    let n = exact_sqrt(eta.cod())
        .ok_or_else(|| Error::shape("is_entangled", format!("codomain {} is not a square", eta.cod())))?;
    let eps = eta.dagger();
    let left = chain(&[&id_tensor(n, eta)?, &tensor_id(&eps, n)?])?;
    let right = chain(&[&tensor_id(eta, n)?, &id_tensor(n, &eps)?])?;
    Ok((left, right))
}

/// Strong entanglement: `(η, η‡)` satisfies both snake equations.
pub fn is_entangled<S: Scalar>(eta: &Mor<S>, tol: f64) -> Result<bool> {
    let (l, r) = snake_composites(eta)?;
    let id = Mor::identity(l.cod())?;
    Ok(l.approx_eq(&id, tol) && r.approx_eq(&id, tol))
}

/// If `m` equals `s · id` for a nonzero scalar `s`, returns `s`.
pub fn scalar_multiple_of_identity<S: Scalar>(m: &Mor<S>, tol: f64) -> Option<S> {
    if m.cod() != m.dom() {
        return None;
    }
    let s = m.get(0, 0);
    if s.distance(S::zero()) <= tol {
        return None;
    }
    let target = Mor::identity(m.cod()).ok()?.scale(s);
    m.approx_eq(&target, tol).then_some(s)
}

/// Strong entanglement up to a nonzero scalar: both snake composites equal
/// the same multiple `s · id`. Returns `s`.
pub fn entangled_up_to_scalar<S: Scalar>(eta: &Mor<S>, tol: f64) -> Result<Option<S>> {
    let (l, r) = snake_composites(eta)?;
    Ok(
        match (
            scalar_multiple_of_identity(&l, tol),
            scalar_multiple_of_identity(&r, tol),
        ) {
            (Some(a), Some(b)) if a.distance(b) <= tol => Some(a),
            _ => None,
        },
    )
}

/// Partial trace `Tr_X : (X⊗A → X⊗B) ↦ (A → B)`, computed as
/// `(ε ⊗ B) ∘ (X ⊗ g) ∘ (η ⊗ A)`.
pub fn trace_partial<S: Scalar>(g: &Mor<S>, d: &DualityPair<S>) -> Result<Mor<S>> {
    let x = d.n();
    if !g.dom().is_multiple_of(x) || !g.cod().is_multiple_of(x) {
        return Err(Error::shape(
            "trace_partial",
            format!("{:?} does not factor through an object of dimension {x}", g.shape()),
        ));
    }
    let (a, b) = (g.dom() / x, g.cod() / x);
    chain(&[&tensor_id(d.eta(), a)?, &id_tensor(x, g)?, &tensor_id(d.eps(), b)?])
}

/// Full trace of an endomorphism, as a scalar.
pub fn trace<S: Scalar>(g: &Mor<S>, d: &DualityPair<S>) -> Result<S> {
    trace_partial(g, d)?.as_scalar()
}

pub fn is_unitary<S: Scalar>(u: &Mor<S>, tol: f64) -> Result<bool> {
    let ud = u.dagger();
    Ok(ud.compose(u)?.approx_eq(&Mor::identity(u.dom())?, tol)
        && u.compose(&ud)?.approx_eq(&Mor::identity(u.cod())?, tol))
}

/// Unitary up to a nonzero scalar: `u‡u = s · id = u u‡`.
pub fn unitary_up_to_scalar<S: Scalar>(u: &Mor<S>, tol: f64) -> Result<Option<S>> {
    if u.cod() != u.dom() {
        return Ok(None);
    }
    let ud = u.dagger();
    let l = scalar_multiple_of_identity(&ud.compose(u)?, tol);
    let r = scalar_multiple_of_identity(&u.compose(&ud)?, tol);
    Ok(match (l, r) {
        (Some(a), Some(b)) if a.distance(b) <= tol => Some(a),
        _ => None,
    })
}

/// `p = p‡ = p ∘ p`.
pub fn is_projector<S: Scalar>(p: &Mor<S>, tol: f64) -> Result<bool> {
    if p.cod() != p.dom() {
        return Ok(false);
    }
    Ok(p.approx_eq(&p.dagger(), tol) && p.approx_eq(&p.compose(p)?, tol))
}

/// A projector whose full trace is the unit scalar.
pub fn is_pure_projector<S: Scalar>(p: &Mor<S>, d: &DualityPair<S>, tol: f64) -> Result<bool> {
    Ok(is_projector(p, tol)? && trace(p, d)?.distance(S::one()) <= tol)
}
