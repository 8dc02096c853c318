//! Bitstring functions and their reversible lifts.
//!
//! Bitstrings are integers; in a tensor power the leftmost factor is the
//! most significant bit, so `|x, y⟩` sits at index `x·2^n + y`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::RectStructure;
use crate::scalar::{Scalar, C64};
use crate::tensor::Mor;

/// Largest `m + n` for which a reversible table is built.
pub const MAX_REVERSIBLE_BITS: u32 = 24;

/// `f : Z_2^m → Z_2^n` as a table of `2^m` values below `2^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBitFn")]
pub struct BitFn {
    m: u32,
    n: u32,
    table: Vec<u64>,
}

#[derive(Deserialize)]
struct RawBitFn {
    m: u32,
    n: u32,
    table: Vec<u64>,
}

impl TryFrom<RawBitFn> for BitFn {
    type Error = Error;
    fn try_from(r: RawBitFn) -> Result<Self> {
        BitFn::new(r.m, r.n, r.table)
    }
}

impl BitFn {
    pub fn new(m: u32, n: u32, table: Vec<u64>) -> Result<Self> {
        if m > MAX_REVERSIBLE_BITS || n > MAX_REVERSIBLE_BITS {
            return Err(Error::InvalidBitFn(format!(
                "m = {m}, n = {n}; each must be at most {MAX_REVERSIBLE_BITS}"
            )));
        }
        if table.len() != 1usize << m {
            return Err(Error::InvalidBitFn(format!(
                "table has {} entries, expected 2^{m} = {}",
                table.len(),
                1usize << m
            )));
        }
        if let Some((x, &v)) = table.iter().enumerate().find(|(_, &v)| v >> n != 0) {
            return Err(Error::InvalidBitFn(format!("f({x}) = {v} does not fit in {n} bits")));
        }
        Ok(BitFn { m, n, table })
    }

    pub fn from_fn(m: u32, n: u32, f: impl FnMut(u64) -> u64) -> Result<Self> {
        if m > MAX_REVERSIBLE_BITS {
            return Err(Error::InvalidBitFn(format!("m = {m} exceeds {MAX_REVERSIBLE_BITS}")));
        }
        Self::new(m, n, (0..1u64 << m).map(f).collect())
    }

    pub fn constant(m: u32, n: u32, value: u64) -> Result<Self> {
        Self::from_fn(m, n, |_| value)
    }

    pub fn identity(m: u32) -> Result<Self> {
        Self::from_fn(m, m, |x| x)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    pub fn is_bijection(&self) -> bool {
        if self.m != self.n {
            return false;
        }
        let mut seen = vec![false; self.table.len()];
        self.table
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BitFn) -> Result<BitFn> {
        if other.n != self.m {
            return Err(Error::InvalidBitFn(format!(
                "cannot compose {}→{} after {}→{}",
                self.m, self.n, other.m, other.n
            )));
        }
        BitFn::new(other.m, self.n, other.table.iter().map(|&y| self.apply(y)).collect())
    }

    pub fn inverse(&self) -> Result<BitFn> {
        if !self.is_bijection() {
            return Err(Error::NotAPermutation(format!("{}-bit table is not bijective", self.m)));
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as u64;
        }
        BitFn::new(self.m, self.n, inv)
    }
}

/// `f'(x, y) = (x, y ⊕ f(x))` on `m + n` bits.
pub fn to_involution(f: &BitFn) -> Result<BitFn> {
    let bits = f.m + f.n;
    if bits > MAX_REVERSIBLE_BITS {
        return Err(Error::SizeLimit {
            what: "to_involution",
            size: bits as usize,
            limit: MAX_REVERSIBLE_BITS as usize,
        });
    }
    let n = f.n;
    let low = (1u64 << n) - 1;
    BitFn::from_fn(bits, bits, |xy| {
        let (x, y) = (xy >> n, xy & low);
        (x << n) | (y ^ f.apply(x))
    })
}

/// The permutation matrix with `F_{ij} = 1` exactly when `g(j) = i`.
pub fn perm_to_unitary<S: Scalar>(g: &BitFn) -> Result<Mor<S>> {
    if !g.is_bijection() {
        return Err(Error::NotAPermutation(format!(
            "{}→{} bit table is not a bijection",
            g.m, g.n
        )));
    }
    let d = g.table.len();
    Mor::from_entries(
        d,
        d,
        g.table.iter().enumerate().map(|(j, &i)| (i as usize, j, S::one())),
    )
}

/// `U_f|x, y⟩ = |x, y ⊕ f(x)⟩`.
pub fn lift_u_f(f: &BitFn) -> Result<Mor<C64>> {
    perm_to_unitary(&to_involution(f)?)
}

/// Index in `Ξ^{⊗k}` over Z_2 of the element whose factor `t` (from the
/// left) is `(labels_t, coords_t)`, with `labels` and `coords` read as
/// `k`-bit integers, leftmost factor most significant.
pub fn rect_power_index(k: u32, labels: u64, coords: u64) -> usize {
    (0..k).fold(0usize, |acc, t| {
        let shift = k - 1 - t;
        acc * 4 + ((labels >> shift & 1) * 2 + (coords >> shift & 1)) as usize
    })
}

/// Inverse of [`rect_power_index`].
pub fn rect_power_split(k: u32, index: usize) -> (u64, u64) {
    let (mut labels, mut coords) = (0u64, 0u64);
    for t in 0..k {
        let e = index >> (2 * (k - 1 - t)) & 3;
        labels = labels << 1 | (e >> 1) as u64;
        coords = coords << 1 | (e & 1) as u64;
    }
    (labels, coords)
}

/// `β_{labels}` in `Ξ^{⊗k}`: every coordinate pattern under fixed labels.
pub fn rect_power_basis_vector(k: u32, labels: u64) -> Result<Mor<bool>> {
    let d = 1usize << (2 * k);
    Mor::subset(d, (0..1u64 << k).map(|c| rect_power_index(k, labels, c)))
}

/// `Υ_f` on `Ξ^{⊗(m+n)}` over Z_2: labels move by `f'` and group
/// coordinates stay put.
pub fn lift_rel(f: &BitFn, base: &RectStructure) -> Result<Mor<bool>> {
    if base.labels() != 2 {
        return Err(Error::input(
            "base",
            format!("lift_rel needs Ξ over Z_2, got a group of order {}", base.labels()),
        ));
    }
    let g = to_involution(f)?;
    let k = f.m + f.n;
    if 2 * k > usize::BITS - 2 {
        return Err(Error::SizeLimit {
            what: "lift_rel",
            size: k as usize,
            limit: (usize::BITS / 2 - 1) as usize,
        });
    }
    let d = 1usize << (2 * k);
    Mor::from_pairs(
        d,
        d,
        (0..d).map(|e| {
            let (labels, coords) = rect_power_split(k, e);
            (rect_power_index(k, g.apply(labels), coords), e)
        }),
    )
}
