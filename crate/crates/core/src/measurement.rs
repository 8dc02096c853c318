//! Actions of a classical structure `X` on an object `A`, and measurements:
//! actions whose basis substitutions are projectors.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{ClassicalStructure, LawResult};
use crate::kleisli::KleisliArrow;
use crate::scalar::Scalar;
use crate::tensor::{id_tensor, tensor_id, Mor};

/// A candidate `α : X⊗A → A`; only shapes are checked on construction.
#[derive(Clone, Debug)]
pub struct ActionCandidate<S: Scalar> {
    ctx: Arc<ClassicalStructure<S>>,
    alpha: Mor<S>,
    a: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasReport {
    /// `α(X⊗α) = α(∇⊗A)`.
    pub action: LawResult,
    /// `α(X⊗α)(Δ⊗A) = α`.
    pub kleisli_idempotent: LawResult,
    /// `α = (ε⊗A)(X⊗α‡)`.
    pub dagger_cap: LawResult,
    /// `(X⊗α)(Δ⊗A) = (∇⊗A)(X⊗α‡)`.
    pub dagger_frobenius: LawResult,
    /// `α(⊥⊗A) = id`.
    pub normal: LawResult,
    /// `(X⊗α)(Δ⊗A) = α‡α = (∇⊗A)(X⊗α‡)`.
    pub retract: LawResult,
    /// `α‡α = (X⊗α)(c⊗A)(X⊗α‡)`.
    pub swap_retract: LawResult,
}

impl MeasReport {
    pub fn idempotence_agrees(&self) -> bool {
        self.action.holds == self.kleisli_idempotent.holds
    }

    pub fn self_adjointness_agrees(&self) -> bool {
        self.dagger_cap.holds == self.dagger_frobenius.holds
    }

    /// Clauses that fail, by name.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            &self.action,
            &self.kleisli_idempotent,
            &self.dagger_cap,
            &self.dagger_frobenius,
        ]
        .into_iter()
        .filter(|l| !l.holds)
        .map(|l| l.name)
        .collect()
    }
}

fn law(name: &'static str, residual: f64, tol: f64) -> LawResult {
    LawResult {
        name,
        holds: residual <= tol,
        residual,
    }
}

impl<S: Scalar> ActionCandidate<S> {
    pub fn new(ctx: Arc<ClassicalStructure<S>>, alpha: Mor<S>) -> Result<Self> {
        let n = ctx.n();
        let a = alpha.cod();
        if alpha.dom() != n * a {
            return Err(Error::DimensionMismatch {
                op: "ActionCandidate",
                left: alpha.shape(),
                right: (a, n * a),
            });
        }
        Ok(ActionCandidate { ctx, alpha, a })
    }

    /// `α = Σ_β p_β ∘ (β‡⊗A)` from a family indexed by the context basis.
    pub fn from_family(ctx: Arc<ClassicalStructure<S>>, family: &[Mor<S>]) -> Result<Self> {
        let k = KleisliArrow::abstract_family(ctx.clone(), family)?;
        if k.a() != k.b() {
            return Err(Error::shape("from_family", "family members must be endomorphisms"));
        }
        Self::new(ctx, k.f().clone())
    }

    /// `⊤ ⊗ id_A`.
    pub fn discard(ctx: Arc<ClassicalStructure<S>>, a: usize) -> Result<Self> {
        let alpha = ctx.top().tensor(&Mor::identity(a)?)?;
        Self::new(ctx, alpha)
    }

    /// The multiplication acting on `A = X`.
    pub fn regular(ctx: Arc<ClassicalStructure<S>>) -> Result<Self> {
        let alpha = ctx.nabla().clone();
        Self::new(ctx, alpha)
    }

    pub fn ctx(&self) -> &Arc<ClassicalStructure<S>> {
        &self.ctx
    }

    pub fn alpha(&self) -> &Mor<S> {
        &self.alpha
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn action_residual(&self) -> Result<f64> {
        let n = self.ctx.n();
        let lhs = self.alpha.compose(&id_tensor(n, &self.alpha)?)?;
        let rhs = self.alpha.compose(&tensor_id(self.ctx.nabla(), self.a)?)?;
        lhs.residual(&rhs)
    }

    pub fn normal_residual(&self) -> Result<f64> {
        self.alpha
            .compose(&tensor_id(self.ctx.bot(), self.a)?)?
            .residual(&Mor::identity(self.a)?)
    }

    pub fn is_x_action(&self, tol: f64) -> bool {
        self.action_residual().is_ok_and(|r| r <= tol)
    }

    pub fn is_normal_action(&self, tol: f64) -> bool {
        self.is_x_action(tol) && self.normal_residual().is_ok_and(|r| r <= tol)
    }

    /// Evaluates every clause without judging agreement.
    pub fn meas_lemma_report(&self, tol: f64) -> Result<MeasReport> {
        let n = self.ctx.n();
        let a = self.a;
        let alpha = &self.alpha;
        let alpha_d = alpha.dagger();
        let x_alpha = id_tensor(n, alpha)?;
        let x_alpha_d = id_tensor(n, &alpha_d)?;
        let delta_a = tensor_id(self.ctx.delta(), a)?;
        let nabla_a = tensor_id(self.ctx.nabla(), a)?;

        let idem = alpha.compose(&x_alpha)?.compose(&delta_a)?.residual(alpha)?;
        let cap = tensor_id(&self.ctx.cap()?, a)?.compose(&x_alpha_d)?.residual(alpha)?;
        let copy_then_act = x_alpha.compose(&delta_a)?;
        let merge_then_coact = nabla_a.compose(&x_alpha_d)?;
        let frob = copy_then_act.residual(&merge_then_coact)?;
        let ada = alpha_d.compose(alpha)?;
        let retract = copy_then_act.residual(&ada)?.max(ada.residual(&merge_then_coact)?);
        let swapped = x_alpha
            .compose(&tensor_id(&Mor::swap(n, n)?, a)?)?
            .compose(&x_alpha_d)?;
        let swap_retract = ada.residual(&swapped)?;

        Ok(MeasReport {
            action: law("action", self.action_residual()?, tol),
            kleisli_idempotent: law("kleisli_idempotent", idem, tol),
            dagger_cap: law("dagger_cap", cap, tol),
            dagger_frobenius: law("dagger_frobenius", frob, tol),
            normal: law("normal", self.normal_residual()?, tol),
            retract: law("retract", retract, tol),
            swap_retract: law("swap_retract", swap_retract, tol),
        })
    }

    /// Like [`meas_lemma_report`](Self::meas_lemma_report), but disagreement
    /// between the two idempotence clauses or the two self-adjointness
    /// clauses is a theorem violation.
    pub fn meas_lemma_checks(&self, tol: f64) -> Result<MeasReport> {
        let r = self.meas_lemma_report(tol)?;
        if !r.idempotence_agrees() {
            return Err(Error::TheoremViolation(format!(
                "action law {} but Kleisli idempotence {}",
                r.action.holds, r.kleisli_idempotent.holds
            )));
        }
        if !r.self_adjointness_agrees() {
            return Err(Error::TheoremViolation(format!(
                "cap form {} but Frobenius form {}",
                r.dagger_cap.holds, r.dagger_frobenius.holds
            )));
        }
        Ok(r)
    }

    /// An action satisfying the self-adjointness clause.
    pub fn is_measurement(&self, tol: f64) -> bool {
        self.meas_lemma_report(tol)
            .is_ok_and(|r| r.action.holds && r.dagger_cap.holds)
    }

    /// `p_β = α ∘ (β ⊗ A)` for each basis vector `β`.
    pub fn outcomes(&self, tol: f64) -> Result<Vec<Mor<S>>> {
        if !self.is_measurement(tol) {
            return Err(Error::NotAMeasurement(
                "the action law or the self-adjointness clause fails".into(),
            ));
        }
        self.ctx
            .find_basis()?
            .iter()
            .map(|beta| self.alpha.compose(&tensor_id(beta, self.a)?))
            .collect()
    }

    /// `α ∘ α‡`.
    pub fn alpha_alpha_dagger(&self) -> Result<Mor<S>> {
        self.alpha.compose(&self.alpha.dagger())
    }
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;
    use crate::models::{fhilb_computational, rel_rect, AbelianGroup};
    use crate::scalar::C64;
    use crate::tensor::is_projector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    fn proj(n: usize, i: usize) -> Mor<C64> {
        Mor::from_pairs(n, n, [(i, i)]).unwrap()
    }

    fn comp2() -> Arc<ClassicalStructure<C64>> {
        Arc::new(fhilb_computational(2).unwrap())
    }

    #[test]
    fn regular_action() {
        let c = ActionCandidate::regular(comp2()).unwrap();
        assert!(c.is_x_action(TOL) && c.is_normal_action(TOL));
        let r = c.meas_lemma_checks(TOL).unwrap();
        assert!(r.failures().is_empty());
        assert!(r.retract.holds && r.swap_retract.holds);
        assert!(c.is_measurement(TOL));
        assert_eq!(c.outcomes(TOL).unwrap(), vec![proj(2, 0), proj(2, 1)]);
    }

    #[test]
    fn discard_is_an_action_only_on_one_point() {
        let one = ActionCandidate::discard(Arc::new(fhilb_computational(1).unwrap()), 3).unwrap();
        assert!(one.is_normal_action(TOL));
        assert_eq!(one.outcomes(TOL).unwrap(), vec![Mor::identity(3).unwrap()]);
        let two = ActionCandidate::discard(comp2(), 3).unwrap();
        assert!(!two.is_x_action(TOL));
        assert!(two.normal_residual().unwrap() > 0.0);
        let r = two.meas_lemma_report(TOL).unwrap();
        assert!(r.kleisli_idempotent.holds && !r.action.holds);
        assert!(two.meas_lemma_checks(TOL).is_err());
    }

    #[test]
    fn projector_family_is_a_measurement() {
        let c = ActionCandidate::from_family(comp2(), &[proj(2, 0), proj(2, 1)]).unwrap();
        assert_eq!(c.alpha(), ActionCandidate::regular(comp2()).unwrap().alpha());
        let r = c.meas_lemma_checks(TOL).unwrap();
        assert!(r.failures().is_empty() && r.normal.holds);
        assert!(c
            .alpha_alpha_dagger()
            .unwrap()
            .approx_eq(&Mor::identity(2).unwrap(), TOL));
    }

    #[test]
    fn non_self_adjoint_member_breaks_self_adjointness() {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let skew = Mor::from_rows(vec![vec![one, one], vec![zero, zero]]).unwrap();
        let c = ActionCandidate::from_family(comp2(), &[skew, Mor::zero(2, 2).unwrap()]).unwrap();
        let r = c.meas_lemma_checks(TOL).unwrap();
        assert_eq!(r.failures(), vec!["dagger_cap", "dagger_frobenius"]);
        assert!(!c.is_measurement(TOL));
        assert!(matches!(c.outcomes(TOL), Err(Error::NotAMeasurement(_))));
    }

    #[test]
    fn random_relations_are_rarely_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ctx = Arc::new(rel_rect(&AbelianGroup::cyclic(2).unwrap()).unwrap().structure().clone());
        let mut seen_failure = false;
        for _ in 0..20 {
            let alpha = Mor::from_fn(2, 8, |_, _| rng.gen_bool(0.5)).unwrap();
            let c = ActionCandidate::new(ctx.clone(), alpha).unwrap();
            if !c.is_x_action(0.0) {
                assert!(c.action_residual().unwrap() > 0.0);
                seen_failure = true;
            }
        }
        assert!(seen_failure);
    }

    #[test]
    fn rectangle_outcomes_are_rectangle_projectors() {
        let r = rel_rect(&AbelianGroup::cyclic(2).unwrap()).unwrap();
        let ctx = Arc::new(r.structure().clone());
        let c = ActionCandidate::regular(ctx).unwrap();
        assert!(c.is_measurement(0.0));
        let outs = c.outcomes(0.0).unwrap();
        assert_eq!(outs.len(), 2);
        for (i, p) in outs.iter().enumerate() {
            let b = r.basis_vector(i).unwrap();
            assert_eq!(p, &b.compose(&b.dagger()).unwrap());
            assert!(is_projector(p, 0.0).unwrap());
        }
    }

    #[test]
    fn shape_is_checked() {
        assert!(ActionCandidate::new(comp2(), Mor::zero(2, 3).unwrap()).is_err());
    }
}
