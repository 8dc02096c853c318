use std::fmt;

use crate::error::{Error, Result};
use crate::limits;
use crate::scalar::Scalar;

#[derive(Clone)]
enum Data<S> {
    /// Row-major `cod × dom` entries.
    Dense(Vec<S>),
    /// Compressed rows; column indices strictly increasing within a row and
    /// every stored value nonzero.
    Sparse {
        row_ptr: Vec<usize>,
        cols: Vec<usize>,
        vals: Vec<S>,
    },
}

/// A morphism `dom → cod`, stored as a `cod × dom` matrix.
///
/// A vector has `dom == 1`, a covector `cod == 1` and a scalar both.
/// Storage is dense up to [`limits::sparse_threshold`] entries and sparse
/// (sorted index pairs with values) beyond; every operation accepts either.
#[derive(Clone)]
pub struct Mor<S: Scalar> {
    cod: usize,
    dom: usize,
    data: Data<S>,
}

fn check_dim(what: &'static str, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::shape(what, "dimensions must be positive"));
    }
    let limit = limits::max_dim();
    if d > limit {
        return Err(Error::SizeLimit { what, size: d, limit });
    }
    Ok(())
}

fn mul_dims(what: &'static str, a: usize, b: usize) -> Result<usize> {
    let limit = limits::max_dim();
    match a.checked_mul(b) {
        Some(d) if d <= limit => Ok(d),
        _ => Err(Error::SizeLimit {
            what,
            size: a.saturating_mul(b),
            limit,
        }),
    }
}

pub enum RowIter<'a, S> {
    Dense {
        row: &'a [S],
        pos: usize,
    },
    Sparse {
        cols: &'a [usize],
        vals: &'a [S],
        pos: usize,
    },
}

impl<S: Scalar> Iterator for RowIter<'_, S> {
    type Item = (usize, S);

    fn next(&mut self) -> Option<(usize, S)> {
        match self {
            RowIter::Dense { row, pos } => {
                while *pos < row.len() {
                    let j = *pos;
                    *pos += 1;
                    if !row[j].is_zero() {
                        return Some((j, row[j]));
                    }
                }
                None
            }
            RowIter::Sparse { cols, vals, pos } => {
                let j = *pos;
                if j < cols.len() {
                    *pos += 1;
                    Some((cols[j], vals[j]))
                } else {
                    None
                }
            }
        }
    }
}

/// Accumulates rows in order and picks the storage format from the final
/// shape.
struct RowBuilder<S> {
    cod: usize,
    dom: usize,
    sparse: bool,
    dense: Vec<S>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<S>,
}

impl<S: Scalar> RowBuilder<S> {
    fn new(cod: usize, dom: usize) -> Self {
        let sparse = cod.saturating_mul(dom) > limits::sparse_threshold();
        RowBuilder {
            cod,
            dom,
            sparse,
            dense: if sparse { Vec::new() } else { vec![S::zero(); cod * dom] },
            row_ptr: if sparse { vec![0] } else { Vec::new() },
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Entries must have strictly increasing columns.
    fn push_row(&mut self, i: usize, entries: impl IntoIterator<Item = (usize, S)>) {
        if self.sparse {
            debug_assert_eq!(self.row_ptr.len(), i + 1);
            for (j, v) in entries {
                if !v.is_zero() {
                    self.cols.push(j);
                    self.vals.push(v);
                }
            }
            self.row_ptr.push(self.cols.len());
        } else {
            let row = &mut self.dense[i * self.dom..(i + 1) * self.dom];
            for (j, v) in entries {
                row[j] = v;
            }
        }
    }

    fn finish(self) -> Mor<S> {
        let data = if self.sparse {
            Data::Sparse {
                row_ptr: self.row_ptr,
                cols: self.cols,
                vals: self.vals,
            }
        } else {
            Data::Dense(self.dense)
        };
        Mor {
            cod: self.cod,
            dom: self.dom,
            data,
        }
    }
}

impl<S: Scalar> Mor<S> {
    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    /// `(cod, dom)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.cod, self.dom)
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.data, Data::Sparse { .. })
    }

    pub fn is_vector(&self) -> bool {
        self.dom == 1
    }

    /// Dense row-major constructor.
    pub fn from_vec(cod: usize, dom: usize, entries: Vec<S>) -> Result<Self> {
        check_dim("Mor::from_vec", cod)?;
        check_dim("Mor::from_vec", dom)?;
        if entries.len() != cod * dom {
            return Err(Error::shape(
                "Mor::from_vec",
                format!("expected {} entries, got {}", cod * dom, entries.len()),
            ));
        }
        let mut b = RowBuilder::new(cod, dom);
        for i in 0..cod {
            let row = &entries[i * dom..(i + 1) * dom];
            b.push_row(i, row.iter().copied().enumerate());
        }
        Ok(b.finish())
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cod = rows.len();
        let dom = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != dom) {
            return Err(Error::shape("Mor::from_rows", "ragged rows"));
        }
        Self::from_vec(cod, dom, rows.into_iter().flatten().collect())
    }

    /// Builds a morphism from `(row, col, value)` triples; repeated positions
    /// are summed.
    pub fn from_entries(cod: usize, dom: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        check_dim("Mor::from_entries", cod)?;
        check_dim("Mor::from_entries", dom)?;
        let mut triples: Vec<(usize, usize, S)> = Vec::new();
        for (i, j, v) in entries {
            if i >= cod || j >= dom {
                return Err(Error::shape(
                    "Mor::from_entries",
                    format!("entry ({i}, {j}) outside {cod} × {dom}"),
                ));
            }
            triples.push((i, j, v));
        }
        triples.sort_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, S)> = Vec::with_capacity(triples.len());
        for (i, j, v) in triples {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 = last.2.add(v),
                _ => merged.push((i, j, v)),
            }
        }
        let mut b = RowBuilder::new(cod, dom);
        let mut k = 0;
        for i in 0..cod {
            let start = k;
            while k < merged.len() && merged[k].0 == i {
                k += 1;
            }
            b.push_row(i, merged[start..k].iter().map(|&(_, j, v)| (j, v)));
        }
        Ok(b.finish())
    }

    pub fn from_fn(cod: usize, dom: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        check_dim("Mor::from_fn", cod)?;
        check_dim("Mor::from_fn", dom)?;
        let mut b = RowBuilder::new(cod, dom);
        for i in 0..cod {
            let row: Vec<(usize, S)> = (0..dom).map(|j| (j, f(i, j))).collect();
            b.push_row(i, row);
        }
        Ok(b.finish())
    }

    /// Relation given by the set of pairs `(row, col)`.
    pub fn from_pairs(cod: usize, dom: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_entries(cod, dom, pairs.into_iter().map(|(i, j)| (i, j, S::one())))
    }

    pub fn zero(cod: usize, dom: usize) -> Result<Self> {
        Self::from_entries(cod, dom, std::iter::empty())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_entries(n, n, (0..n).map(|i| (i, i, S::one())))
    }

    pub fn scalar(s: S) -> Self {
        Mor {
            cod: 1,
            dom: 1,
            data: Data::Dense(vec![s]),
        }
    }

    /// Column vector `I → n`.
    pub fn vector(entries: Vec<S>) -> Result<Self> {
        let n = entries.len();
        Self::from_vec(n, 1, entries)
    }

    /// Standard basis vector `e_i` of dimension `n`.
    pub fn basis_vector(n: usize, i: usize) -> Result<Self> {
        Self::from_entries(n, 1, [(i, 0, S::one())])
    }

    /// Subset vector: the indicator of `members` in a set of size `n`.
    pub fn subset(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_pairs(n, 1, members.into_iter().map(|i| (i, 0)))
    }

    /// Symmetry `a ⊗ b → b ⊗ a`, sending index `(i, j)` to `(j, i)`.
    pub fn swap(a: usize, b: usize) -> Result<Self> {
        let d = mul_dims("Mor::swap", a, b)?;
        Self::from_entries(
            d,
            d,
            (0..a).flat_map(move |i| (0..b).map(move |j| (j * a + i, i * b + j, S::one()))),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        assert!(i < self.cod && j < self.dom, "index out of range");
        match &self.data {
            Data::Dense(v) => v[i * self.dom + j],
            Data::Sparse { row_ptr, cols, vals } => {
                let (lo, hi) = (row_ptr[i], row_ptr[i + 1]);
                match cols[lo..hi].binary_search(&j) {
                    Ok(k) => vals[lo + k],
                    Err(_) => S::zero(),
                }
            }
        }
    }

    /// Nonzero entries of row `i`, by increasing column.
    pub fn row(&self, i: usize) -> RowIter<'_, S> {
        match &self.data {
            Data::Dense(v) => RowIter::Dense {
                row: &v[i * self.dom..(i + 1) * self.dom],
                pos: 0,
            },
            Data::Sparse { row_ptr, cols, vals } => {
                let (lo, hi) = (row_ptr[i], row_ptr[i + 1]);
                RowIter::Sparse {
                    cols: &cols[lo..hi],
                    vals: &vals[lo..hi],
                    pos: 0,
                }
            }
        }
    }

    /// All nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        (0..self.cod).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros().count()
    }

    pub fn is_zero_mor(&self) -> bool {
        self.nonzeros().next().is_none()
    }

    /// Entries of a vector (`dom == 1`) or covector (`cod == 1`).
    pub fn entries(&self) -> Vec<S> {
        if self.dom == 1 {
            (0..self.cod).map(|i| self.get(i, 0)).collect()
        } else if self.cod == 1 {
            (0..self.dom).map(|j| self.get(0, j)).collect()
        } else {
            (0..self.cod)
                .flat_map(|i| (0..self.dom).map(move |j| (i, j)))
                .map(|(i, j)| self.get(i, j))
                .collect()
        }
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.cod)
            .map(|i| (0..self.dom).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Indices of nonzero entries of a vector.
    pub fn support(&self) -> Vec<usize> {
        self.nonzeros().map(|(i, j, _)| i.max(j)).collect()
    }

    /// The sole entry of a `1 × 1` morphism.
    pub fn as_scalar(&self) -> Result<S> {
        if self.shape() != (1, 1) {
            return Err(Error::DimensionMismatch {
                op: "as_scalar",
                left: self.shape(),
                right: (1, 1),
            });
        }
        Ok(self.get(0, 0))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Mor<S>) -> Result<Mor<S>> {
        if f.cod != self.dom {
            return Err(Error::DimensionMismatch {
                op: "compose",
                left: self.shape(),
                right: f.shape(),
            });
        }
        let out_dom = f.dom;
        let mut acc = vec![S::zero(); out_dom];
        let mut touched = vec![false; out_dom];
        let mut idx: Vec<usize> = Vec::new();
        let mut b = RowBuilder::new(self.cod, out_dom);
        for i in 0..self.cod {
            for (k, a) in self.row(i) {
                for (j, v) in f.row(k) {
                    if !touched[j] {
                        touched[j] = true;
                        idx.push(j);
                    }
                    acc[j] = acc[j].add(a.mul(v));
                }
            }
            idx.sort_unstable();
            b.push_row(i, idx.iter().map(|&j| (j, acc[j])));
            for &j in &idx {
                acc[j] = S::zero();
                touched[j] = false;
            }
            idx.clear();
        }
        Ok(b.finish())
    }

    /// `self ⊗ other`; composite index `(i, j) ↦ i·d₂ + j`.
    pub fn tensor(&self, other: &Mor<S>) -> Result<Mor<S>> {
        let cod = mul_dims("tensor", self.cod, other.cod)?;
        let dom = mul_dims("tensor", self.dom, other.dom)?;
        let mut b = RowBuilder::new(cod, dom);
        let right_rows: Vec<Vec<(usize, S)>> = (0..other.cod).map(|i| other.row(i).collect()).collect();
        for i1 in 0..self.cod {
            let left: Vec<(usize, S)> = self.row(i1).collect();
            for (i2, right) in right_rows.iter().enumerate() {
                let entries = left
                    .iter()
                    .flat_map(|&(j1, a)| right.iter().map(move |&(j2, v)| (j1 * other.dom + j2, a.mul(v))));
                b.push_row(i1 * other.cod + i2, entries);
            }
        }
        Ok(b.finish())
    }

    pub fn transpose(&self) -> Mor<S> {
        self.map_transposed(|v| v)
    }

    /// Conjugate transpose; relational converse in the boolean model.
    pub fn dagger(&self) -> Mor<S> {
        self.map_transposed(S::conj)
    }

    fn map_transposed(&self, f: impl Fn(S) -> S) -> Mor<S> {
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.dom];
        for (i, j, v) in self.nonzeros() {
            cols[j].push((i, f(v)));
        }
        let mut b = RowBuilder::new(self.dom, self.cod);
        for (j, col) in cols.into_iter().enumerate() {
            b.push_row(j, col);
        }
        b.finish()
    }

    /// Entrywise involution.
    pub fn conjugate(&self) -> Mor<S> {
        self.map(S::conj)
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Mor<S> {
        let mut b = RowBuilder::new(self.cod, self.dom);
        for i in 0..self.cod {
            b.push_row(i, self.row(i).map(|(j, v)| (j, f(v))));
        }
        b.finish()
    }

    pub fn scale(&self, s: S) -> Mor<S> {
        self.map(|v| v.mul(s))
    }

    /// Entrywise sum (union of relations in the boolean model).
    pub fn add(&self, other: &Mor<S>) -> Result<Mor<S>> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Self::from_entries(self.cod, self.dom, self.nonzeros().chain(other.nonzeros()))
    }

    /// Largest entrywise distance to `other`.
    pub fn residual(&self, other: &Mor<S>) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "residual",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut worst = 0.0f64;
        for i in 0..self.cod {
            let mut a = self.row(i).peekable();
            let mut b = other.row(i).peekable();
            loop {
                let d = match (a.peek().copied(), b.peek().copied()) {
                    (None, None) => break,
                    (Some((_, x)), None) => {
                        a.next();
                        x.distance(S::zero())
                    }
                    (None, Some((_, y))) => {
                        b.next();
                        y.distance(S::zero())
                    }
                    (Some((ja, x)), Some((jb, y))) => {
                        if ja == jb {
                            a.next();
                            b.next();
                            x.distance(y)
                        } else if ja < jb {
                            a.next();
                            x.distance(S::zero())
                        } else {
                            b.next();
                            y.distance(S::zero())
                        }
                    }
                };
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }

    /// Shape equality and residual within `tol`.
    pub fn approx_eq(&self, other: &Mor<S>, tol: f64) -> bool {
        matches!(self.residual(other), Ok(r) if r <= tol)
    }
}

impl<S: Scalar> PartialEq for Mor<S> {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, 0.0)
    }
}

impl<S: Scalar> fmt::Debug for Mor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mor({} → {}", self.dom, self.cod)?;
        if self.cod * self.dom <= 64 {
            write!(f, ", {:?}", self.rows())?;
        } else {
            write!(f, ", nnz={}", self.nnz())?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;
    use crate::scalar::C64;

    #[test]
    fn sparse_and_dense_agree() {
        let old = limits::sparse_threshold();
        let dense = Mor::<bool>::swap(3, 5).unwrap();
        assert!(!dense.is_sparse());
        limits::set_sparse_threshold(4);
        let sparse = Mor::<bool>::swap(3, 5).unwrap();
        limits::set_sparse_threshold(old);
        assert!(sparse.is_sparse());
        assert_eq!(dense, sparse);
        let id = Mor::<bool>::identity(15).unwrap();
        assert_eq!(sparse.compose(&dense.dagger()).unwrap(), id);
    }

    #[test]
    fn compose_shape_error_carries_both_shapes() {
        let f = Mor::<C64>::identity(2).unwrap();
        let g = Mor::<C64>::identity(3).unwrap();
        match g.compose(&f) {
            Err(Error::DimensionMismatch { left, right, .. }) => {
                assert_eq!(left, (3, 3));
                assert_eq!(right, (2, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tensor_overflow_is_a_size_error() {
        let big = Mor::<bool>::zero(1 << 13, 1).unwrap();
        assert!(matches!(
            big.tensor(&big).and_then(|t| t.tensor(&big)),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn from_entries_sums_repeats() {
        let m = Mor::<C64>::from_entries(1, 1, [(0, 0, C64::new(1.0, 0.0)), (0, 0, C64::new(2.0, 0.0))]).unwrap();
        assert_eq!(m.get(0, 0), C64::new(3.0, 0.0));
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(Mor::<bool>::zero(0, 1).is_err());
    }
}
