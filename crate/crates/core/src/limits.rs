//! Process-wide size limits.
//!
//! All values can be adjusted at runtime; the defaults are sized for desk
//! scale experiments.

use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_SPARSE_THRESHOLD: usize = 1 << 16;
pub const DEFAULT_MAX_DIM: usize = 1 << 24;
pub const DEFAULT_SIMON_MAX_QUBITS: usize = 12;
pub const DEFAULT_REL_SIMON_MAX_FACTORS: usize = 4;

static SPARSE_THRESHOLD: AtomicUsize = AtomicUsize::new(DEFAULT_SPARSE_THRESHOLD);
static MAX_DIM: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DIM);
static SIMON_MAX_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_SIMON_MAX_QUBITS);

/// Matrices with more than this many entries are stored sparsely.
pub fn sparse_threshold() -> usize {
    SPARSE_THRESHOLD.load(Ordering::Relaxed)
}

pub fn set_sparse_threshold(entries: usize) {
    SPARSE_THRESHOLD.store(entries, Ordering::Relaxed);
}

/// Largest admissible object dimension.
pub fn max_dim() -> usize {
    MAX_DIM.load(Ordering::Relaxed)
}

pub fn set_max_dim(dim: usize) {
    MAX_DIM.store(dim, Ordering::Relaxed);
}

/// Largest `m + n` accepted by the complex Simon pipeline.
pub fn simon_max_qubits() -> usize {
    SIMON_MAX_QUBITS.load(Ordering::Relaxed)
}

pub fn set_simon_max_qubits(q: usize) {
    SIMON_MAX_QUBITS.store(q, Ordering::Relaxed);
}
