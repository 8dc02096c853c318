//! Simon's algorithm in both models, the GF(2) solver that finishes it, and
//! an exhaustive period oracle.
//!
//! Complex model: the state `(H^m⊗id) U_f (H^m⊗id)|0,0⟩` in unnormalized
//! integer amplitudes, measured on the first register.
//!
//! Boolean model: the same pipeline on `Ξ^{⊗(m+n)}` over Z_2 with the
//! coordinate swap for `H` and `Υ_f` for `U_f`, started at `β_0`, the unit
//! of the `H`-image structure. The result `S` is split along each
//! second-register basis label `y`, and for every first-register label `z`
//! the phase set `χ_z` of the branch (the Z_2-sum of the group coordinates
//! selected by `z`) is classified by its Cayley representation in Z_2: a
//! singleton (unitary) is constructive, the whole group (pure projector)
//! is destructive. `z` is observed when some branch is constructive.

use std::sync::Arc;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{tensor_cs, CayleyClass, ClassicalStructure};
use crate::limits;
use crate::measurement::ActionCandidate;
use crate::models::{hadamard_walsh, rel_group_structure, rel_h, rel_rect, AbelianGroup};
use crate::oracle::{lift_rel, lift_u_f, rect_power_basis_vector, rect_power_split, BitFn};
use crate::scalar::{Scalar, C64};
use crate::tensor::{id_tensor, is_projector, is_unitary, tensor_id, Mor};

fn dot(a: u64, b: u64) -> u32 {
    (a & b).count_ones() & 1
}

/// Linear equations `z · c = 0` over GF(2) in `m` unknowns, kept in reduced
/// row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gf2System {
    m: u32,
    /// Pivot rows keyed by the position of their leading (highest) bit.
    rows: Vec<u64>,
}

impl Gf2System {
    pub fn new(m: u32) -> Self {
        Gf2System { m, rows: Vec::new() }
    }

    pub fn from_rows(m: u32, rows: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Self::new(m);
        for r in rows {
            s.push(r);
        }
        s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation; returns whether the rank grew.
    pub fn push(&mut self, z: u64) -> bool {
        let mask = if self.m >= 64 { u64::MAX } else { (1u64 << self.m) - 1 };
        let mut v = z & mask;
        for &r in &self.rows {
            if v >> lead(r) & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            return false;
        }
        let p = lead(v);
        for r in &mut self.rows {
            if *r >> p & 1 == 1 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    /// Reduced rows, leading bit descending.
    pub fn reduced(&self) -> &[u64] {
        &self.rows
    }

    pub fn is_solution(&self, c: u64) -> bool {
        self.rows.iter().all(|&r| dot(r, c) == 0)
    }
}

fn lead(v: u64) -> u32 {
    63 - v.leading_zeros()
}

/// Basis of `{c | z · c = 0 for every row z}`, one vector per free bit,
/// sorted ascending.
pub fn gf2_nullspace(sys: &Gf2System) -> Vec<u64> {
    let pivots: u64 = sys.rows.iter().map(|&r| 1u64 << lead(r)).fold(0, |a, b| a | b);
    let mut out: Vec<u64> = (0..sys.m)
        .filter(|&j| pivots >> j & 1 == 0)
        .map(|j| {
            sys.rows
                .iter()
                .filter(|&&r| r >> j & 1 == 1)
                .fold(1u64 << j, |v, &r| v | 1u64 << lead(r))
        })
        .collect();
    out.sort_unstable();
    out
}

/// All elements of the span of `basis`, zero excluded.
fn span_nonzero(basis: &[u64]) -> impl Iterator<Item = u64> + '_ {
    (1u64..1 << basis.len()).map(move |sel| {
        basis
            .iter()
            .enumerate()
            .filter(|(i, _)| sel >> i & 1 == 1)
            .fold(0, |v, (_, &b)| v ^ b)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagnosis {
    Unique,
    TrivialOnly,
    Ambiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimonModel {
    Fhilb,
    Rel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimonReport {
    pub model: SimonModel,
    /// Labels `z` with nonzero outcome weight, ascending.
    pub support: Vec<u64>,
    /// The harvested equations in reduced echelon form.
    pub equations: Vec<u64>,
    pub period: Option<u64>,
    pub diagnosis: Diagnosis,
    pub samples_used: usize,
    /// Every label drawn in sampled mode, in order.
    #[serde(skip)]
    pub draws: Vec<u64>,
}

/// Outcome of the exhaustive period search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodOracle {
    Unique(u64),
    TrivialOnly,
    Ambiguous(Vec<u64>),
}

pub fn is_period(f: &BitFn, c: u64) -> bool {
    (0..1u64 << f.m()).all(|x| f.apply(x ^ c) == f.apply(x))
}

/// Every nonzero `c` with `f(x ⊕ c) = f(x)` for all `x`.
pub fn brute_force_period(f: &BitFn) -> PeriodOracle {
    let periods: Vec<u64> = (1u64..1 << f.m()).filter(|&c| is_period(f, c)).collect();
    match periods.len() {
        0 => PeriodOracle::TrivialOnly,
        1 => PeriodOracle::Unique(periods[0]),
        _ => PeriodOracle::Ambiguous(periods),
    }
}

fn check_qubits(f: &BitFn) -> Result<()> {
    let q = (f.m() + f.n()) as usize;
    let cap = limits::simon_max_qubits();
    if q > cap {
        return Err(Error::SizeLimit {
            what: "simon qubits (m + n)",
            size: q,
            limit: cap,
        });
    }
    Ok(())
}

/// `H^{⊗m} ⊗ id_{2^n}` as the product of single-qubit layers, applied to `v`.
fn apply_hadamard_register(v: &Mor<C64>, m: u32, n: u32) -> Result<Mor<C64>> {
    let h = hadamard_walsh(1)?;
    let mut out = v.clone();
    for k in 0..m {
        let layer = id_tensor(1 << k, &tensor_id(&h, 1usize << (m - k - 1 + n))?)?;
        out = layer.compose(&out)?;
    }
    Ok(out)
}

/// `(H^{⊗m}⊗id) U_f (H^{⊗m}⊗id)|0,0⟩ = Σ_{z,x} (−1)^{x·z} |z, f(x)⟩`.
pub fn simon_state_fhilb(f: &BitFn) -> Result<Mor<C64>> {
    check_qubits(f)?;
    let (m, n) = (f.m(), f.n());
    let start = Mor::basis_vector(1 << (m + n), 0)?;
    let prepared = apply_hadamard_register(&start, m, n)?;
    let queried = lift_u_f(f)?.compose(&prepared)?;
    apply_hadamard_register(&queried, m, n)
}

/// Outcome weights of the first register.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegisterDistribution {
    /// `Σ_y |amplitude(z, y)|²` for every `z`.
    pub weights: Vec<f64>,
    /// Labels with weight above the tolerance, ascending.
    pub support: Vec<u64>,
    /// Normalized probabilities aligned with `support`.
    pub probabilities: Vec<f64>,
}

pub fn first_register_support(state: &Mor<C64>, m: u32, n: u32, tol: f64) -> Result<RegisterDistribution> {
    let dim = 1usize << (m + n);
    if state.shape() != (dim, 1) {
        return Err(Error::DimensionMismatch {
            op: "first_register_support",
            left: state.shape(),
            right: (dim, 1),
        });
    }
    let mut weights = vec![0.0; 1 << m];
    for (i, _, a) in state.nonzeros() {
        weights[i >> n] += a.weight();
    }
    let support: Vec<u64> = (0..weights.len())
        .filter(|&z| weights[z] > tol)
        .map(|z| z as u64)
        .collect();
    if support.is_empty() {
        return Err(Error::EmptyState);
    }
    let total: f64 = support.iter().map(|&z| weights[z as usize]).sum();
    let probabilities = support.iter().map(|&z| weights[z as usize] / total).collect();
    Ok(RegisterDistribution {
        weights,
        support,
        probabilities,
    })
}

/// One label drawn according to the distribution.
pub fn sample_z<R: Rng + ?Sized>(dist: &RegisterDistribution, rng: &mut R) -> Result<u64> {
    let w = WeightedIndex::new(&dist.probabilities).map_err(|_| Error::EmptyState)?;
    Ok(dist.support[w.sample(rng)])
}

/// Periods among the nonzero solutions of `sys`, each verified on `f`.
fn verified_periods(f: &BitFn, sys: &Gf2System) -> Vec<u64> {
    let mut found: Vec<u64> = span_nonzero(&gf2_nullspace(sys)).filter(|&c| is_period(f, c)).collect();
    found.sort_unstable();
    found
}

fn conclude(
    f: &BitFn,
    model: SimonModel,
    support: Vec<u64>,
    sys: Gf2System,
    samples_used: usize,
    draws: Vec<u64>,
) -> SimonReport {
    let periods = verified_periods(f, &sys);
    let (period, diagnosis) = match periods.as_slice() {
        [] => (None, Diagnosis::TrivialOnly),
        [c] => (Some(*c), Diagnosis::Unique),
        _ => (None, Diagnosis::Ambiguous),
    };
    SimonReport {
        model,
        support,
        equations: sys.reduced().to_vec(),
        period,
        diagnosis,
        samples_used,
        draws,
    }
}

/// Draw cap in sampled mode.
pub fn sample_cutoff(m: u32) -> usize {
    10 * m as usize
}

pub fn simon_run_fhilb(f: &BitFn, mode: Mode) -> Result<SimonReport> {
    let state = simon_state_fhilb(f)?;
    let dist = first_register_support(&state, f.m(), f.n(), 0.5)?;
    let m = f.m();
    match mode {
        Mode::Exact => {
            let sys = Gf2System::from_rows(m, dist.support.iter().copied());
            Ok(conclude(f, SimonModel::Fhilb, dist.support, sys, 0, Vec::new()))
        }
        Mode::Sampled { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sys = Gf2System::new(m);
            let mut draws = Vec::new();
            while draws.len() < sample_cutoff(m) {
                let z = sample_z(&dist, &mut rng)?;
                draws.push(z);
                sys.push(z);
                let r = sys.rank();
                if r == m as usize || (r + 1 == m as usize && verified_periods(f, &sys).len() == 1) {
                    break;
                }
            }
            let used = draws.len();
            Ok(conclude(f, SimonModel::Fhilb, dist.support, sys, used, draws))
        }
    }
}

/// Intermediate objects of the boolean pipeline.
#[derive(Clone, Debug)]
pub struct RelSimonTrace {
    /// `Υ_f` on `Ξ^{⊗(m+n)}`.
    pub upsilon: Mor<bool>,
    pub upsilon_unitary: bool,
    /// `(H^{⊗m}⊗id) Υ_f (H^{⊗m}⊗id) β_0`.
    pub state: Mor<bool>,
    /// `(id ⊗ β_y‡) S` for each second-register label `y`.
    pub branches: Vec<Mor<bool>>,
    /// `phases[z][y]`: Cayley class of `χ_z` of branch `y` in Z_2, or
    /// `None` when the branch is empty.
    pub phases: Vec<Vec<Option<CayleyClass>>>,
    pub support: Vec<u64>,
    /// `∇_m ⊗ id` as an action of `Ξ^{⊗m}` on the whole carrier.
    pub sigma: ActionCandidate<bool>,
}

/// `χ_z` on a first-register vector of `Ξ^{⊗m}`: the set of sums of the
/// group coordinates in the factors selected by `z`.
fn phase_set(v: &Mor<bool>, m: u32, z: u64) -> Result<Mor<bool>> {
    Mor::subset(
        2,
        v.support().into_iter().map(|e| {
            let (_, coords) = rect_power_split(m, e);
            dot(coords, z) as usize
        }),
    )
}

fn rel_power(cs: &ClassicalStructure<bool>, k: u32) -> Result<ClassicalStructure<bool>> {
    let mut acc = ClassicalStructure::trivial();
    for _ in 0..k {
        acc = tensor_cs(&acc, cs)?;
    }
    Ok(acc)
}

fn mor_power(f: &Mor<bool>, k: u32) -> Result<Mor<bool>> {
    let mut acc = Mor::scalar(true);
    for _ in 0..k {
        acc = acc.tensor(f)?;
    }
    Ok(acc)
}

pub fn simon_rel_trace(f: &BitFn) -> Result<RelSimonTrace> {
    let (m, n) = (f.m(), f.n());
    let k = m + n;
    let cap = limits::DEFAULT_REL_SIMON_MAX_FACTORS;
    if k as usize > cap {
        return Err(Error::SizeLimit {
            what: "relational simon factors (m + n)",
            size: k as usize,
            limit: cap,
        });
    }
    let xi = rel_rect(&AbelianGroup::cyclic(2)?)?;
    let h = rel_h(&xi)?;
    let second = 1usize << (2 * n);
    let hm = tensor_id(&mor_power(&h, m)?, second)?;
    let upsilon = lift_rel(f, &xi)?;
    let upsilon_unitary = is_unitary(&upsilon, 0.0)?;
    let start = rect_power_basis_vector(k, 0)?;
    let state = hm.compose(&upsilon.compose(&hm.compose(&start)?)?)?;

    let first = 1usize << (2 * m);
    let branches = (0..1u64 << n)
        .map(|y| id_tensor(first, &rect_power_basis_vector(n, y)?.dagger())?.compose(&state))
        .collect::<Result<Vec<_>>>()?;

    let z2 = rel_group_structure(&AbelianGroup::cyclic(2)?)?;
    let mut phases = Vec::with_capacity(1 << m);
    let mut support = Vec::new();
    for z in 0..1u64 << m {
        let row = branches
            .iter()
            .map(|b| {
                if b.is_zero_mor() {
                    return Ok(None);
                }
                Ok(Some(z2.cayley_classify(&phase_set(b, m, z)?, 0.0)))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.contains(&Some(CayleyClass::Unitary)) {
            support.push(z);
        }
        phases.push(row);
    }

    let ctx = Arc::new(rel_power(xi.structure(), m)?);
    let sigma = ActionCandidate::new(ctx.clone(), tensor_id(ctx.nabla(), second)?)?;
    Ok(RelSimonTrace {
        upsilon,
        upsilon_unitary,
        state,
        branches,
        phases,
        support,
        sigma,
    })
}

/// Projectors `cayley(β) ⊗ id` obtained by substituting each basis vector
/// of `Ξ^{⊗m}` into the σ action, with whether each is a projector.
pub fn sigma_outcomes(trace: &RelSimonTrace) -> Result<Vec<(Mor<bool>, bool)>> {
    let a = trace.sigma.a();
    trace
        .sigma
        .ctx()
        .find_basis()?
        .iter()
        .map(|beta| {
            let p = trace.sigma.alpha().compose(&tensor_id(beta, a)?)?;
            let ok = is_projector(&p, 0.0)?;
            Ok((p, ok))
        })
        .collect()
}

pub fn simon_run_rel(f: &BitFn) -> Result<SimonReport> {
    let trace = simon_rel_trace(f)?;
    let sys = Gf2System::from_rows(f.m(), trace.support.iter().copied());
    Ok(conclude(f, SimonModel::Rel, trace.support, sys, 0, Vec::new()))
}
