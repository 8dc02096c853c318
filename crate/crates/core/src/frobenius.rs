//! Classical structures: commutative special dagger-Frobenius algebras.
//!
//! A structure is given by its comultiplication `Δ : X → X⊗X` and counit
//! `⊤ : X → I`; the multiplication and unit are their daggers. Nothing is
//! assumed at construction beyond shapes, so law failures can be reported
//! rather than rejected. Use [`ClassicalStructure::checked`] to require them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use nalgebra::{DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};
use crate::tensor::{
    entangled_up_to_scalar, id_tensor, inner, is_pure_projector, tensor_id, unitary_up_to_scalar, DualityPair, Mor,
};

const BASIS_SEED: u64 = 0x5eed_ba5e;
const BASIS_RETRIES: usize = 3;
const EIGEN_GAP: f64 = 1e-6;
const MAX_BOOLEAN_SEARCH: usize = 20;

pub struct ClassicalStructure<S: Scalar> {
    n: usize,
    delta: Mor<S>,
    top: Mor<S>,
    nabla: Mor<S>,
    bot: Mor<S>,
    basis: OnceLock<Result<Basis<S>>>,
}

impl<S: Scalar> Clone for ClassicalStructure<S> {
    fn clone(&self) -> Self {
        ClassicalStructure {
            n: self.n,
            delta: self.delta.clone(),
            top: self.top.clone(),
            nabla: self.nabla.clone(),
            bot: self.bot.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl<S: Scalar> fmt::Debug for ClassicalStructure<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassicalStructure")
            .field("model", &S::MODEL)
            .field("n", &self.n)
            .field("delta", &self.delta)
            .field("top", &self.top)
            .finish()
    }
}

impl<S: Scalar> PartialEq for ClassicalStructure<S> {
    fn eq(&self, other: &Self) -> bool {
        self.delta == other.delta && self.top == other.top
    }
}

/// Outcome of one law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawResult {
    pub name: &'static str,
    pub holds: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.laws.iter().all(|l| l.holds)
    }

    pub fn get(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn holds(&self, name: &str) -> bool {
        self.get(name).is_some_and(|l| l.holds)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.laws.iter().filter(|l| !l.holds).map(|l| l.name).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.laws.iter().map(|l| l.residual).fold(0.0, f64::max)
    }
}

/// Names used in [`LawReport`], in report order.
pub const LAW_NAMES: [&str; 7] = [
    "coassociativity",
    "counit",
    "commutativity",
    "frobenius",
    "frobenius_cup",
    "specialness",
    "self_duality",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CayleyClass {
    Unitary,
    PureProjector,
    Neither,
}

/// The copyable vectors of a structure, sorted by the index of their first
/// nonzero entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis<S: Scalar> {
    vectors: Vec<Mor<S>>,
}

impl<S: Scalar> Basis<S> {
    pub fn new(mut vectors: Vec<Mor<S>>, tol: f64) -> Self {
        vectors.sort_by(|a, b| basis_order(a, b, tol));
        Basis { vectors }
    }

    pub fn vectors(&self) -> &[Mor<S>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Mor<S>> {
        self.vectors.iter()
    }

    /// Worst deviation from `⟨β|β⟩ = 1` and `⟨β|β'⟩² = ⟨β|β'⟩`.
    pub fn orthonormality_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let p = inner(a, b)?;
                let r = if i == j {
                    p.distance(S::one())
                } else {
                    p.mul(p).distance(p)
                };
                worst = worst.max(r);
            }
        }
        Ok(worst)
    }

    pub fn is_orthonormal(&self, tol: f64) -> Result<bool> {
        Ok(self.orthonormality_residual()? <= tol)
    }
}

impl<'a, S: Scalar> IntoIterator for &'a Basis<S> {
    type Item = &'a Mor<S>;
    type IntoIter = std::slice::Iter<'a, Mor<S>>;
    fn into_iter(self) -> Self::IntoIter {
        self.vectors.iter()
    }
}

fn first_nonzero<S: Scalar>(v: &Mor<S>, tol: f64) -> usize {
    (0..v.cod())
        .find(|&i| v.get(i, 0).distance(S::zero()) > tol)
        .unwrap_or(v.cod())
}

fn basis_order<S: Scalar>(a: &Mor<S>, b: &Mor<S>, tol: f64) -> Ordering {
    first_nonzero(a, tol).cmp(&first_nonzero(b, tol)).then_with(|| {
        // larger entries first, so that e.g. (1, 1) precedes (1, -1)
        for i in 0..a.cod().min(b.cod()) {
            let (x, y) = (a.get(i, 0), b.get(i, 0));
            if x.distance(y) <= tol {
                continue;
            }
            return y
                .weight()
                .partial_cmp(&x.weight())
                .unwrap_or(Ordering::Equal)
                .then_with(|| {
                    let dx = x.distance(S::one());
                    let dy = y.distance(S::one());
                    dx.partial_cmp(&dy).unwrap_or(Ordering::Equal)
                });
        }
        Ordering::Equal
    })
}

impl<S: Scalar> ClassicalStructure<S> {
    /// Builds a structure from `Δ : n → n·n` and `⊤ : n → 1`, checking shapes
    /// only.
    pub fn new(delta: Mor<S>, top: Mor<S>) -> Result<Self> {
        let n = delta.dom();
        if delta.cod() != n * n {
            return Err(Error::shape(
                "ClassicalStructure",
                format!("Δ has shape {:?}, expected ({}, {n})", delta.shape(), n * n),
            ));
        }
        if top.shape() != (1, n) {
            return Err(Error::DimensionMismatch {
                op: "ClassicalStructure",
                left: top.shape(),
                right: (1, n),
            });
        }
        Ok(ClassicalStructure {
            n,
            nabla: delta.dagger(),
            bot: top.dagger(),
            delta,
            top,
            basis: OnceLock::new(),
        })
    }

    /// Like [`new`](Self::new) but every law must hold within `tol`.
    pub fn checked(delta: Mor<S>, top: Mor<S>, tol: f64) -> Result<Self> {
        let cs = Self::new(delta, top)?;
        let report = cs.check_laws(tol)?;
        if !report.all_hold() {
            return Err(Error::LawFailure(report.failures().join(", ")));
        }
        Ok(cs)
    }

    /// The unique structure on the tensor unit.
    pub fn trivial() -> Self {
        Self::new(Mor::scalar(S::one()), Mor::scalar(S::one())).expect("1 × 1 shapes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> &Mor<S> {
        &self.delta
    }

    pub fn top(&self) -> &Mor<S> {
        &self.top
    }

    pub fn nabla(&self) -> &Mor<S> {
        &self.nabla
    }

    pub fn bot(&self) -> &Mor<S> {
        &self.bot
    }

    /// `η = Δ∘⊥`, without checking anything.
    pub fn cup(&self) -> Result<Mor<S>> {
        self.delta.compose(&self.bot)
    }

    /// `ε = ⊤∘∇`, without checking anything.
    pub fn cap(&self) -> Result<Mor<S>> {
        self.top.compose(&self.nabla)
    }

    pub fn check_laws(&self, tol: f64) -> Result<LawReport> {
        let n = self.n;
        let id = Mor::identity(n)?;
        let d = &self.delta;
        let nab = &self.nabla;

        let coassoc = tensor_id(d, n)?.compose(d)?.residual(&id_tensor(n, d)?.compose(d)?)?;
        let counit = tensor_id(&self.top, n)?
            .compose(d)?
            .residual(&id)?
            .max(id_tensor(n, &self.top)?.compose(d)?.residual(&id)?);
        let commut = Mor::swap(n, n)?.compose(d)?.residual(d)?;

        let middle = d.compose(nab)?;
        let left = id_tensor(n, nab)?.compose(&tensor_id(d, n)?)?;
        let right = tensor_id(nab, n)?.compose(&id_tensor(n, d)?)?;
        let frob = left.residual(&middle)?.max(middle.residual(&right)?);

        let eta = self.cup()?;
        let cup_l = id_tensor(n, nab)?.compose(&tensor_id(&eta, n)?)?;
        let cup_r = tensor_id(nab, n)?.compose(&id_tensor(n, &eta)?)?;
        let frob_cup = cup_l.residual(d)?.max(cup_r.residual(d)?);

        let special = nab.compose(d)?.residual(&id)?;
        let snakes = DualityPair::unchecked(n, eta, self.cap()?).snake_residual()?;

        let residuals = [coassoc, counit, commut, frob, frob_cup, special, snakes];
        Ok(LawReport {
            laws: LAW_NAMES
                .iter()
                .zip(residuals)
                .map(|(&name, residual)| LawResult {
                    name,
                    holds: residual <= tol,
                    residual,
                })
                .collect(),
        })
    }

    /// The self-duality `η = Δ∘⊥`, `ε = ⊤∘∇`.
    pub fn induced_duality(&self, tol: f64) -> Result<DualityPair<S>> {
        DualityPair::with_tolerance(self.cup()?, self.cap()?, tol).map_err(|e| match e {
            Error::InvalidDuality { residual } => Error::TheoremViolation(format!(
                "Δ∘⊥ and ⊤∘∇ fail the snake equations (residual {residual}); the structure is not Frobenius"
            )),
            other => other,
        })
    }

    fn check_vector(&self, op: &'static str, v: &Mor<S>) -> Result<()> {
        if v.shape() != (self.n, 1) {
            return Err(Error::DimensionMismatch {
                op,
                left: v.shape(),
                right: (self.n, 1),
            });
        }
        Ok(())
    }

    /// `Δv = v⊗v` and `⊤v = 1`.
    pub fn is_copyable(&self, v: &Mor<S>, tol: f64) -> Result<bool> {
        self.check_vector("is_copyable", v)?;
        let copies = self.delta.compose(v)?.approx_eq(&v.tensor(v)?, tol);
        let deletes = self.top.compose(v)?.as_scalar()?.distance(S::one()) <= tol;
        Ok(copies && deletes)
    }

    /// The basis, computed once and cached.
    pub fn find_basis(&self) -> Result<&Basis<S>> {
        self.basis
            .get_or_init(|| self.compute_basis(S::default_tolerance()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Recomputes the basis at an explicit tolerance, bypassing the cache.
    pub fn compute_basis(&self, tol: f64) -> Result<Basis<S>> {
        Ok(Basis::new(S::copyables(self, tol)?, tol))
    }

    /// `a • b = ∇∘(a⊗b)`.
    pub fn convolution(&self, a: &Mor<S>, b: &Mor<S>) -> Result<Mor<S>> {
        self.check_vector("convolution", a)?;
        self.check_vector("convolution", b)?;
        self.nabla.compose(&a.tensor(b)?)
    }

    /// `a ↦ ∇∘(a⊗X)`.
    pub fn cayley(&self, a: &Mor<S>) -> Result<Mor<S>> {
        self.check_vector("cayley", a)?;
        self.nabla.compose(&tensor_id(a, self.n)?)
    }

    /// Both characterizations of unbiasedness: `Δa` entangled and `cayley(a)`
    /// unitary, each up to a positive scalar so that normalized vectors of a
    /// mutually unbiased basis qualify. Disagreement is a theorem violation.
    pub fn is_unbiased(&self, a: &Mor<S>, tol: f64) -> Result<bool> {
        self.check_vector("is_unbiased", a)?;
        let entangled = entangled_up_to_scalar(&self.delta.compose(a)?, tol)?.is_some_and(|s| s.is_positive(tol));
        let unitary = unitary_up_to_scalar(&self.cayley(a)?, tol)?.is_some_and(|s| s.is_positive(tol));
        if entangled != unitary {
            return Err(Error::TheoremViolation(format!(
                "Δa entangled = {entangled} but cayley(a) unitary = {unitary}"
            )));
        }
        Ok(entangled)
    }

    /// Unitary is tested first: in Rel a permutation can also be a pure
    /// projector (the identity, whose trace is nonempty).
    pub fn cayley_classify(&self, a: &Mor<S>, tol: f64) -> CayleyClass {
        let Ok(c) = self.cayley(a) else {
            return CayleyClass::Neither;
        };
        if unitary_up_to_scalar(&c, tol)
            .ok()
            .flatten()
            .is_some_and(|s| s.is_positive(tol))
        {
            return CayleyClass::Unitary;
        }
        let pure = DualityPair::canonical(self.n)
            .and_then(|d| is_pure_projector(&c, &d, tol))
            .unwrap_or(false);
        if pure {
            CayleyClass::PureProjector
        } else {
            CayleyClass::Neither
        }
    }

    /// The structure transported along `u`: `Δ' = (u⊗u)Δu‡`, `⊤' = ⊤u‡`.
    /// A classical structure stays classical when `u` is unitary.
    pub fn transport(&self, u: &Mor<S>) -> Result<Self> {
        if u.shape() != (self.n, self.n) {
            return Err(Error::DimensionMismatch {
                op: "transport",
                left: u.shape(),
                right: (self.n, self.n),
            });
        }
        let ud = u.dagger();
        let delta = u.tensor(u)?.compose(&self.delta)?.compose(&ud)?;
        let top = self.top.compose(&ud)?;
        Self::new(delta, top)
    }
}

/// Every basis vector of each structure is unbiased for the other.
pub fn are_complementary<S: Scalar>(a: &ClassicalStructure<S>, b: &ClassicalStructure<S>, tol: f64) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            op: "are_complementary",
            left: (a.n(), a.n()),
            right: (b.n(), b.n()),
        });
    }
    for v in a.find_basis()? {
        if !b.is_unbiased(v, tol)? {
            return Ok(false);
        }
    }
    for v in b.find_basis()? {
        if !a.is_unbiased(v, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product structure on `n1·n2`: `Δ = (X₁⊗c⊗X₂)(Δ₁⊗Δ₂)`, `⊤ = ⊤₁⊗⊤₂`.
/// If both factors already have cached bases, the product basis is seeded
/// from their pairwise tensors.
pub fn tensor_cs<S: Scalar>(a: &ClassicalStructure<S>, b: &ClassicalStructure<S>) -> Result<ClassicalStructure<S>> {
    let (n1, n2) = (a.n(), b.n());
    let shuffle = id_tensor(n1, &tensor_id(&Mor::swap(n1, n2)?, n2)?)?;
    let delta = shuffle.compose(&a.delta().tensor(b.delta())?)?;
    let top = a.top().tensor(b.top())?;
    let cs = ClassicalStructure::new(delta, top)?;
    if let (Some(Ok(ba)), Some(Ok(bb))) = (a.basis.get(), b.basis.get()) {
        let mut vs = Vec::with_capacity(ba.len() * bb.len());
        for x in ba {
            for y in bb {
                vs.push(x.tensor(y)?);
            }
        }
        let _ = cs.basis.set(Ok(Basis::new(vs, S::default_tolerance())));
    }
    Ok(cs)
}

/// Complex basis extraction: the Cayley image of a generic real vector is a
/// normal operator whose eigenvectors, rescaled to `⊤β = 1`, are the
/// copyables.
pub(crate) fn complex_copyables(cs: &ClassicalStructure<C64>, tol: f64) -> Result<Vec<Mor<C64>>> {
    let n = cs.n();
    let mut rng = ChaCha8Rng::seed_from_u64(BASIS_SEED);
    let mut gap = 0.0;
    for _ in 0..=BASIS_RETRIES {
        let v: Vec<C64> = (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let a = cs.cayley(&Mor::vector(v)?)?;
        let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j));
        let schur = Schur::try_new(m, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Degenerate("Schur decomposition did not converge".into()))?;
        let (q, t) = schur.unpack();
        gap = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                gap = gap.min((t[(i, i)] - t[(j, j)]).norm());
            }
        }
        if gap < EIGEN_GAP {
            continue;
        }
        let mut found = Vec::with_capacity(n);
        for k in 0..n {
            let cand = Mor::vector(q.column(k).iter().copied().collect())?;
            let deleted = cs.top().compose(&cand)?.as_scalar()?;
            if deleted.norm() < 1e-12 {
                continue;
            }
            let beta = cand.scale(deleted.inv());
            if cs.is_copyable(&beta, tol)? {
                found.push(beta);
            }
        }
        if found.len() < n {
            return Err(Error::Degenerate(format!(
                "found {} of {n} copyable vectors",
                found.len()
            )));
        }
        return Ok(found);
    }
    Err(Error::Degenerate(format!(
        "eigenvalue gap {gap:e} below {EIGEN_GAP:e} after {} attempts",
        BASIS_RETRIES + 1
    )))
}

/// Boolean basis extraction: every subset is tried.
pub(crate) fn boolean_copyables(cs: &ClassicalStructure<bool>) -> Result<Vec<Mor<bool>>> {
    let n = cs.n();
    if n > MAX_BOOLEAN_SEARCH {
        return Err(Error::SizeLimit {
            what: "boolean basis search",
            size: n,
            limit: MAX_BOOLEAN_SEARCH,
        });
    }
    let images: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|x| {
            (0..n * n)
                .filter(|&p| cs.delta().get(p, x))
                .map(|p| (p / n, p % n))
                .collect()
        })
        .collect();
    let top_mask: u32 = (0..n).filter(|&x| cs.top().get(0, x)).map(|x| 1 << x).sum();
    let words = (n * n).div_ceil(64);
    let mut seen = vec![0u64; words];
    let mut found = Vec::new();
    'subsets: for mask in 1u32..(1u32 << n) {
        if mask & top_mask == 0 {
            continue;
        }
        seen.iter_mut().for_each(|w| *w = 0);
        let mut covered = 0usize;
        for x in (0..n).filter(|&x| mask >> x & 1 == 1) {
            for &(y, z) in &images[x] {
                if mask >> y & 1 == 0 || mask >> z & 1 == 0 {
                    continue 'subsets;
                }
                let p = y * n + z;
                if seen[p / 64] >> (p % 64) & 1 == 0 {
                    seen[p / 64] |= 1 << (p % 64);
                    covered += 1;
                }
            }
        }
        let k = mask.count_ones() as usize;
        if covered == k * k {
            found.push(Mor::subset(n, (0..n).filter(|&x| mask >> x & 1 == 1))?);
        }
    }
    Ok(found)
}
