//! Concrete structures.
//!
//! Complex model: the computational structure on `C^n` and its Fourier
//! transports (Hadamard-Walsh for powers of two, the DFT otherwise).
//! Boolean model: converses of abelian group tables, rectangular structures
//! `Ξ` over a group, the coordinate swap `H`, and an exhaustive classifier
//! for small carriers.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::ClassicalStructure;
use crate::scalar::{Scalar, C64};
use crate::tensor::Mor;

/// Largest carrier accepted by [`enumerate_rel_classical`].
pub const MAX_ENUMERATION: usize = 4;

/// `Δe_i = e_i⊗e_i`, `⊤e_i = 1`, in either model.
pub fn computational<S: Scalar>(n: usize) -> Result<ClassicalStructure<S>> {
    let delta = Mor::from_entries(n * n, n, (0..n).map(|i| (i * n + i, i, S::one())))?;
    let top = Mor::from_fn(1, n, |_, _| S::one())?;
    ClassicalStructure::new(delta, top)
}

pub fn fhilb_computational(n: usize) -> Result<ClassicalStructure<C64>> {
    computational(n)
}

/// The set comonoid `x ↦ (x, x)` with `⊤` total.
pub fn rel_standard(n: usize) -> Result<ClassicalStructure<bool>> {
    computational(n)
}

fn parity(x: usize) -> f64 {
    if x.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `H^{⊗m}` with entries `(−1)^{x·z}`, unnormalized.
pub fn hadamard_walsh(m: u32) -> Result<Mor<C64>> {
    let d = 1usize
        .checked_shl(m)
        .ok_or_else(|| Error::input("m", format!("2^{m} overflows")))?;
    Mor::from_fn(d, d, |x, z| C64::new(parity(x & z), 0.0))
}

/// `2^{−m/2} H^{⊗m}`, unitary and self-inverse.
pub fn hadamard_walsh_normalized(m: u32) -> Result<Mor<C64>> {
    let h = hadamard_walsh(m)?;
    Ok(h.scale(C64::new((h.cod() as f64).sqrt().recip(), 0.0)))
}

/// Normalized discrete Fourier transform `ω^{jk}/√n`.
pub fn dft(n: usize) -> Result<Mor<C64>> {
    let s = (n as f64).sqrt().recip();
    Mor::from_fn(n, n, |j, k| C64::from_polar(s, TAU * ((j * k) % n) as f64 / n as f64))
}

/// The Fourier transform used for the complementary partner of the
/// computational structure on `C^n`.
pub fn fourier(n: usize) -> Result<Mor<C64>> {
    if n.is_power_of_two() {
        hadamard_walsh_normalized(n.trailing_zeros())
    } else {
        dft(n)
    }
}

/// The computational structure transported along [`fourier`].
pub fn hadamard_structure(n: usize) -> Result<ClassicalStructure<C64>> {
    fhilb_computational(n)?.transport(&fourier(n)?)
}

/// A finite abelian group given by its addition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    order: usize,
    add: Vec<Vec<usize>>,
    zero: usize,
}

impl AbelianGroup {
    pub fn new(add: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let k = add.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if k == 0 {
            return bad("empty table".into());
        }
        if let Some(r) = add.iter().position(|row| row.len() != k) {
            return bad(format!("row {r} has length {}, expected {k}", add[r].len()));
        }
        if let Some((a, b)) = pairs(k).find(|&(a, b)| add[a][b] >= k) {
            return bad(format!("{a} + {b} = {} is out of range", add[a][b]));
        }
        if zero >= k {
            return bad(format!("zero {zero} is out of range"));
        }
        if let Some(a) = (0..k).find(|&a| add[zero][a] != a || add[a][zero] != a) {
            return bad(format!("{zero} is not neutral for {a}"));
        }
        if let Some((a, b)) = pairs(k).find(|&(a, b)| add[a][b] != add[b][a]) {
            return bad(format!("{a} + {b} != {b} + {a}"));
        }
        for (a, b) in pairs(k) {
            if let Some(c) = (0..k).find(|&c| add[add[a][b]][c] != add[a][add[b][c]]) {
                return bad(format!("({a} + {b}) + {c} != {a} + ({b} + {c})"));
            }
        }
        if let Some(a) = (0..k).find(|&a| !add[a].contains(&zero)) {
            return bad(format!("{a} has no inverse"));
        }
        Ok(AbelianGroup { order: k, add, zero })
    }

    pub fn cyclic(k: usize) -> Result<Self> {
        Self::new((0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect(), 0)
    }

    /// Direct product, element `(a, b)` at index `a·|h| + b`.
    pub fn product(g: &AbelianGroup, h: &AbelianGroup) -> Result<Self> {
        let (p, q) = (g.order, h.order);
        let add = (0..p * q)
            .map(|x| {
                (0..p * q)
                    .map(|y| g.add(x / q, y / q) * q + h.add(x % q, y % q))
                    .collect()
            })
            .collect();
        Self::new(add, g.zero * q + h.zero)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.add[a][b] == self.zero)
            .expect("validated inverses")
    }

    /// `j·a`.
    pub fn multiple(&self, j: usize, a: usize) -> usize {
        (0..j).fold(self.zero, |acc, _| self.add[acc][a])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add[x][a];
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Invariant factors `d_1 | d_2 | …`, each greater than one; empty for
    /// the trivial group.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
        for p in prime_factors(self.order) {
            // e[j] = log_p |{g : p^j g = 0}|
            let mut e = vec![0u32];
            let mut pj = 1;
            loop {
                pj *= p;
                let count = (0..self.order).filter(|&a| self.multiple(pj, a) == self.zero).count();
                let log = ilog(count, p);
                if log == *e.last().unwrap() {
                    break;
                }
                e.push(log);
            }
            // e[j] − e[j−1] counts parts of size at least j
            let at_least: Vec<u32> = e.windows(2).map(|w| w[1] - w[0]).collect();
            let parts = at_least[0] as usize;
            let mut lambda: Vec<u32> = (0..parts)
                .map(|i| at_least.iter().filter(|&&c| c as usize > i).count() as u32)
                .collect();
            lambda.sort_unstable();
            per_prime.push((p, lambda));
        }
        let r = per_prime.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
        let mut factors = vec![1usize; r];
        for (p, lambda) in &per_prime {
            let offset = r - lambda.len();
            for (i, &x) in lambda.iter().enumerate() {
                factors[offset + i] *= p.pow(x);
            }
        }
        factors
    }

    /// Isomorphism type as a product of cyclic groups, e.g. `Z4` or `Z2xZ2`.
    pub fn name(&self) -> String {
        let f = self.invariant_factors();
        if f.is_empty() {
            return "Z1".into();
        }
        f.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    }
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |a| (0..k).map(move |b| (a, b)))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// `Δ(u) = {(v, w) | v·w = u}`, `⊤ = {zero}` for any finite table; only
/// shapes and ranges are checked, so non-abelian or non-associative tables
/// can be studied through [`ClassicalStructure::check_laws`].
pub fn rel_group_converse(table: &[Vec<usize>], zero: usize) -> Result<ClassicalStructure<bool>> {
    let k = table.len();
    if k == 0 || table.iter().any(|r| r.len() != k) || zero >= k {
        return Err(Error::InvalidGroup("table must be square with zero in range".into()));
    }
    if table.iter().flatten().any(|&u| u >= k) {
        return Err(Error::InvalidGroup("table entry out of range".into()));
    }
    let delta = Mor::from_pairs(k * k, k, pairs(k).map(|(v, w)| (v * k + w, table[v][w])))?;
    let top = Mor::from_pairs(1, k, [(0, zero)])?;
    ClassicalStructure::new(delta, top)
}

/// The converse of the group addition.
pub fn rel_group_structure(g: &AbelianGroup) -> Result<ClassicalStructure<bool>> {
    rel_group_converse(g.table(), g.zero())
}

/// `Ξ` over a group `G` of order `k`: `k` disjoint copies of `G`, element
/// `(i, j)` at index `i·k + j`.
#[derive(Clone, Debug)]
pub struct RectStructure {
    group: AbelianGroup,
    cs: ClassicalStructure<bool>,
}

impl RectStructure {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn labels(&self) -> usize {
        self.group.order()
    }

    pub fn n(&self) -> usize {
        self.cs.n()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.group.order() + j
    }

    pub fn structure(&self) -> &ClassicalStructure<bool> {
        &self.cs
    }

    /// `β_i = {ij | j}`.
    pub fn basis_vector(&self, i: usize) -> Result<Mor<bool>> {
        let k = self.group.order();
        Mor::subset(k * k, (0..k).map(|j| i * k + j))
    }
}

/// `Δ(ij) = {⟨ik, iℓ⟩ | j = k+ℓ}`, `⊤ = {i0 | i}`.
pub fn rel_rect(g: &AbelianGroup) -> Result<RectStructure> {
    let k = g.order();
    let n = k * k;
    let mut entries = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for (a, b) in pairs(k) {
            entries.push(((i * k + a) * n + i * k + b, i * k + g.add(a, b)));
        }
    }
    let delta = Mor::from_pairs(n * n, n, entries)?;
    let top = Mor::from_pairs(1, n, (0..k).map(|i| (0, i * k + g.zero())))?;
    Ok(RectStructure {
        group: g.clone(),
        cs: ClassicalStructure::new(delta, top)?,
    })
}

/// `H : ij ↦ ji`.
pub fn rel_h(r: &RectStructure) -> Result<Mor<bool>> {
    let k = r.labels();
    if r.n() != k * k {
        return Err(Error::shape("rel_h", "rectangle is not square"));
    }
    Mor::from_pairs(k * k, k * k, pairs(k).map(|(i, j)| (j * k + i, i * k + j)))
}

/// One group component of a boolean classical structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupBlock {
    /// Carrier elements, ascending; local index `t` is `elements[t]`.
    pub elements: Vec<usize>,
    pub zero: usize,
    /// Addition in local indices.
    pub group: AbelianGroup,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub blocks: Vec<GroupBlock>,
}

impl Decomposition {
    /// Sorted block names: an isomorphism invariant of the structure.
    pub fn signature(&self) -> Vec<String> {
        let mut s: Vec<String> = self.blocks.iter().map(|b| b.name.clone()).collect();
        s.sort();
        s
    }
}

/// Splits a boolean classical structure into abelian groups, failing if any
/// component is not a group under `∇` with exactly one unit in `⊤`.
pub fn decompose_rel(cs: &ClassicalStructure<bool>) -> Result<Decomposition> {
    let n = cs.n();
    let fail = |m: String| Err(Error::TheoremViolation(m));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    // owner[v·n + w] = the u with (v, w) ∈ Δ(u)
    let mut owner = vec![None; n * n];
    for (p, u, _) in cs.delta().nonzeros() {
        let (v, w) = (p / n, p % n);
        if owner[p].replace(u).is_some() {
            return fail(format!("({v}, {w}) has two sums"));
        }
        for y in [v, w] {
            let (a, b) = (find(&mut parent, u), find(&mut parent, y));
            parent[a] = b;
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        components.entry(r).or_default().push(x);
    }
    let mut blocks = Vec::new();
    for elements in components.into_values() {
        let zeros: Vec<usize> = elements.iter().copied().filter(|&x| cs.top().get(0, x)).collect();
        if zeros.len() != 1 {
            return fail(format!("component {elements:?} has units {zeros:?}"));
        }
        let local = |x: usize| elements.binary_search(&x).ok();
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (a, &v) in elements.iter().enumerate() {
            for (b, &w) in elements.iter().enumerate() {
                match owner[v * n + w].and_then(local) {
                    Some(t) => table[a][b] = t,
                    None => return fail(format!("{v} + {w} is undefined in component {elements:?}")),
                }
            }
        }
        let group = AbelianGroup::new(table, local(zeros[0]).expect("zero in component"))
            .map_err(|e| Error::TheoremViolation(format!("component {elements:?}: {e}")))?;
        blocks.push(GroupBlock {
            name: group.name(),
            zero: zeros[0],
            elements,
            group,
        });
    }
    Ok(Decomposition { blocks })
}

/// Every boolean classical structure on `n ≤ 4` points, each verified by
/// the full law suite and by [`decompose_rel`]. Distinct labelings of the
/// same structure are listed separately.
pub fn enumerate_rel_classical(n: usize) -> Result<Vec<ClassicalStructure<bool>>> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::SizeLimit {
            what: "enumerate_rel_classical",
            size: n,
            limit: MAX_ENUMERATION,
        });
    }
    // symmetric pair sets encoded as n²-bit masks over v·n + w
    let unordered: Vec<u32> = pairs(n)
        .filter(|&(v, w)| v <= w)
        .map(|(v, w)| (1 << (v * n + w)) | (1 << (w * n + v)))
        .collect();
    let symmetric: Vec<u32> = (1u32..1 << unordered.len())
        .map(|s| {
            (0..unordered.len())
                .filter(|&b| s >> b & 1 == 1)
                .fold(0, |acc, b| acc | unordered[b])
        })
        .collect();
    let mut found = Vec::new();
    for top in 1u32..1 << n {
        // counit: {w | (v, w) ∈ Δ(x), v ∈ ⊤} = {x}; the other side follows by symmetry
        let columns: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                symmetric
                    .iter()
                    .copied()
                    .filter(|&m| {
                        let hit: u32 = pairs(n)
                            .filter(|&(v, w)| m >> (v * n + w) & 1 == 1 && top >> v & 1 == 1)
                            .fold(0, |acc, (_, w)| acc | 1 << w);
                        hit == 1 << x
                    })
                    .collect()
            })
            .collect();
        let mut chosen = Vec::with_capacity(n);
        search(n, top, &columns, 0, &mut chosen, &mut found)?;
    }
    found.sort_by_key(|cs| (cs.top().entries(), cs.delta().entries()));
    Ok(found)
}

fn search(
    n: usize,
    top: u32,
    columns: &[Vec<u32>],
    used: u32,
    chosen: &mut Vec<u32>,
    out: &mut Vec<ClassicalStructure<bool>>,
) -> Result<()> {
    let x = chosen.len();
    if x == n {
        if !coassociative_bits(n, chosen) {
            return Ok(());
        }
        let delta = Mor::from_pairs(
            n * n,
            n,
            chosen
                .iter()
                .enumerate()
                .flat_map(|(u, &m)| (0..n * n).filter(move |&p| m >> p & 1 == 1).map(move |p| (p, u))),
        )?;
        let top = Mor::from_pairs(1, n, (0..n).filter(|&v| top >> v & 1 == 1).map(|v| (0, v)))?;
        let cs = ClassicalStructure::new(delta, top)?;
        if cs.check_laws(0.0)?.all_hold() {
            decompose_rel(&cs)?;
            out.push(cs);
        }
        return Ok(());
    }
    // specialness forces the images Δ(x) to be pairwise disjoint
    for &m in &columns[x] {
        if m & used == 0 {
            chosen.push(m);
            search(n, top, columns, used | m, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Coassociativity on pair masks, with triples `(a, b, c)` as bits of a
/// `u64` (`n ≤ 4`).
fn coassociative_bits(n: usize, images: &[u32]) -> bool {
    let triples = |x: usize, left: bool| -> u64 {
        let mut out = 0u64;
        for (v, w) in pairs(n).filter(|&(v, w)| images[x] >> (v * n + w) & 1 == 1) {
            let (split, keep) = if left { (v, w) } else { (w, v) };
            for (a, b) in pairs(n).filter(|&(a, b)| images[split] >> (a * n + b) & 1 == 1) {
                let t = if left {
                    (a * n + b) * n + keep
                } else {
                    (keep * n + a) * n + b
                };
                out |= 1 << t;
            }
        }
        out
    };
    (0..n).all(|x| triples(x, true) == triples(x, false))
}

/// Isomorphism classes of boolean classical structures on `n` points.
#[derive(Clone, Debug, Serialize)]
pub struct RelClass {
    /// Sorted names of the group components.
    pub signature: Vec<String>,
    /// Number of labeled structures in the class.
    pub labeled: usize,
    /// Decomposition of the first labeled representative.
    pub decomposition: Decomposition,
}

pub fn classify_rel(n: usize) -> Result<Vec<RelClass>> {
    let mut classes: BTreeMap<Vec<String>, RelClass> = BTreeMap::new();
    for cs in enumerate_rel_classical(n)? {
        let d = decompose_rel(&cs)?;
        classes
            .entry(d.signature())
            .and_modify(|c| c.labeled += 1)
            .or_insert(RelClass {
                signature: d.signature(),
                labeled: 1,
                decomposition: d,
            });
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;
    use crate::frobenius::{are_complementary, tensor_cs};
    use crate::tensor::is_unitary;

    const TOL: f64 = 1e-9;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn computational_examples() {
        let one = fhilb_computational(1).unwrap();
        assert_eq!(one, ClassicalStructure::trivial());
        assert_eq!(one.find_basis().unwrap().vectors(), &[Mor::scalar(c(1.0))]);
        let two = fhilb_computational(2).unwrap();
        assert_eq!(two.find_basis().unwrap().len(), 2);
        assert_eq!(tensor_cs(&two, &two).unwrap(), fhilb_computational(4).unwrap());
        assert!(rel_standard(3).unwrap().check_laws(0.0).unwrap().all_hold());
    }

    #[test]
    fn walsh_entries() {
        assert_eq!(hadamard_walsh(0).unwrap(), Mor::scalar(c(1.0)));
        let h1 = Mor::from_rows(vec![vec![c(1.0), c(1.0)], vec![c(1.0), c(-1.0)]]).unwrap();
        assert_eq!(hadamard_walsh(1).unwrap(), h1);
        assert_eq!(hadamard_walsh(2).unwrap().get(3, 3), c(1.0));
        assert_eq!(hadamard_walsh(2).unwrap().get(1, 3), c(-1.0));
    }

    #[test]
    fn walsh_is_a_tensor_power() {
        let h1 = hadamard_walsh(1).unwrap();
        let mut acc = Mor::scalar(c(1.0));
        for m in 0..=6 {
            assert_eq!(hadamard_walsh(m).unwrap(), acc);
            acc = acc.tensor(&h1).unwrap();
        }
    }

    #[test]
    fn normalized_walsh_is_unitary_and_self_inverse() {
        for m in 0..=6 {
            let h = hadamard_walsh_normalized(m).unwrap();
            assert!(is_unitary(&h, TOL).unwrap());
            assert!(h.compose(&h).unwrap().approx_eq(&Mor::identity(h.cod()).unwrap(), TOL));
        }
        for n in [3, 5, 6] {
            assert!(is_unitary(&dft(n).unwrap(), TOL).unwrap());
        }
    }

    #[test]
    fn hadamard_structures_are_classical_and_complementary() {
        for n in 1..=5 {
            let h = hadamard_structure(n).unwrap();
            assert!(h.check_laws(TOL).unwrap().all_hold(), "n = {n}");
            let comp = fhilb_computational(n).unwrap();
            assert!(are_complementary(&comp, &h, TOL).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn group_validation() {
        assert!(AbelianGroup::cyclic(5).is_ok());
        assert!(matches!(AbelianGroup::new(vec![], 0), Err(Error::InvalidGroup(_))));
        assert!(AbelianGroup::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(AbelianGroup::new(vec![vec![0, 1], vec![1, 0]], 1).is_err());
        assert!(AbelianGroup::new(vec![vec![0, 1], vec![1, 2]], 0).is_err());
        // a commutative loop that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 0, 1, 2],
            vec![4, 2, 1, 2, 0],
        ];
        assert!(AbelianGroup::new(loop5, 0).is_err());
    }

    #[test]
    fn group_names() {
        let z2 = AbelianGroup::cyclic(2).unwrap();
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(AbelianGroup::cyclic(1).unwrap().name(), "Z1");
        assert_eq!(z4.name(), "Z4");
        assert_eq!(AbelianGroup::product(&z2, &z2).unwrap().name(), "Z2xZ2");
        assert_eq!(
            AbelianGroup::product(&z2, &AbelianGroup::cyclic(3).unwrap())
                .unwrap()
                .name(),
            "Z6"
        );
        assert_eq!(AbelianGroup::product(&z2, &z4).unwrap().name(), "Z2xZ4");
        let z2_3 = AbelianGroup::product(&AbelianGroup::product(&z2, &z2).unwrap(), &z2).unwrap();
        assert_eq!(z2_3.invariant_factors(), vec![2, 2, 2]);
        assert!(!z2_3.is_cyclic() && z4.is_cyclic());
        assert_eq!(z4.neg(1), 3);
    }

    #[test]
    fn group_structures() {
        assert_eq!(
            rel_group_structure(&AbelianGroup::cyclic(1).unwrap()).unwrap(),
            ClassicalStructure::trivial()
        );
        let z2 = rel_group_structure(&AbelianGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(z2.delta().nnz(), 4);
        assert!(z2.delta().get(0, 0) && z2.delta().get(3, 0) && z2.delta().get(1, 1) && z2.delta().get(2, 1));
        assert!(z2.check_laws(0.0).unwrap().all_hold());
        let klein = rel_group_structure(
            &AbelianGroup::product(&AbelianGroup::cyclic(2).unwrap(), &AbelianGroup::cyclic(2).unwrap()).unwrap(),
        )
        .unwrap();
        let z4 = rel_group_structure(&AbelianGroup::cyclic(4).unwrap()).unwrap();
        assert!(klein.check_laws(0.0).unwrap().all_hold());
        assert!(z4.check_laws(0.0).unwrap().all_hold());
        assert_ne!(klein, z4);
    }

    #[test]
    fn rectangle_examples() {
        let r = rel_rect(&AbelianGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(r.structure().top().entries(), vec![true, false, true, false]);
        let d01: Vec<usize> = (0..16).filter(|&p| r.structure().delta().get(p, 1)).collect();
        assert_eq!(d01, vec![0 * 4 + 1, 1 * 4 + 0]);
        let r3 = rel_rect(&AbelianGroup::cyclic(3).unwrap()).unwrap();
        assert_eq!(r3.n(), 9);
        assert!(r3.structure().check_laws(0.0).unwrap().all_hold());
        let b = r3.structure().find_basis().unwrap();
        assert_eq!(b.len(), 3);
        for (i, v) in b.iter().enumerate() {
            assert_eq!(v, &r3.basis_vector(i).unwrap());
        }
        assert!(b.is_orthonormal(0.0).unwrap());
    }

    #[test]
    fn h_examples() {
        let r = rel_rect(&AbelianGroup::cyclic(2).unwrap()).unwrap();
        let h = rel_h(&r).unwrap();
        assert_eq!(
            h.compose(&r.basis_vector(0).unwrap()).unwrap(),
            Mor::subset(4, [0, 2]).unwrap()
        );
        assert_eq!(h.compose(&h).unwrap(), Mor::identity(4).unwrap());
        assert!(is_unitary(&h, 0.0).unwrap());
        for k in 2..=4 {
            let r = rel_rect(&AbelianGroup::cyclic(k).unwrap()).unwrap();
            let h = rel_h(&r).unwrap();
            for i in 0..k {
                let image = h.compose(&r.basis_vector(i).unwrap()).unwrap();
                assert!(r.structure().is_unbiased(&image, 0.0).unwrap());
            }
            let image = r.structure().transport(&h).unwrap();
            assert!(are_complementary(r.structure(), &image, 0.0).unwrap());
        }
    }

    /// Labeled abelian group structures on a block of size k, i.e.
    /// Σ over isomorphism types of k!/|Aut|: Z1 → 1, Z2 → 2, Z3 → 3,
    /// Z4 → 24/2, Z2xZ2 → 24/6.
    const LABELED_GROUPS: [usize; 5] = [0, 1, 2, 3, 12 + 4];

    /// Σ over set partitions of Π LABELED_GROUPS[block size].
    fn labeled_count(n: usize) -> usize {
        if n == 0 {
            return 1;
        }
        // the block containing the smallest point has size s
        (1..=n)
            .map(|s| binomial(n - 1, s - 1) * LABELED_GROUPS[s] * labeled_count(n - s))
            .sum()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumeration_matches_partition_count() {
        assert_eq!((1..=4).map(labeled_count).collect::<Vec<_>>(), vec![1, 3, 10, 53]);
        for n in 1..=4 {
            assert_eq!(enumerate_rel_classical(n).unwrap().len(), labeled_count(n));
        }
    }

    #[test]
    fn classification_small() {
        let one = enumerate_rel_classical(1).unwrap();
        assert_eq!(one, vec![ClassicalStructure::trivial()]);
        let two = classify_rel(2).unwrap();
        let sigs: Vec<Vec<String>> = two.iter().map(|c| c.signature.clone()).collect();
        assert_eq!(
            sigs,
            vec![vec!["Z1".to_string(), "Z1".to_string()], vec!["Z2".to_string()]]
        );
        assert_eq!(two.iter().map(|c| c.labeled).sum::<usize>(), 3);
        assert_eq!(classify_rel(3).unwrap().len(), 3);
        assert!(enumerate_rel_classical(5).is_err());
        assert!(enumerate_rel_classical(0).is_err());
    }

    #[test]
    fn decomposition_of_rectangles() {
        let r = rel_rect(&AbelianGroup::cyclic(3).unwrap()).unwrap();
        let d = decompose_rel(r.structure()).unwrap();
        assert_eq!(d.signature(), vec!["Z3"; 3]);
        assert_eq!(d.blocks[1].elements, vec![3, 4, 5]);
        assert_eq!(d.blocks[1].zero, 3);
        let broken = ClassicalStructure::new(
            Mor::zero(4, 2).unwrap(),
            Mor::from_pairs(1, 2, [(0, 0), (0, 1)]).unwrap(),
        )
        .unwrap();
        assert!(decompose_rel(&broken).is_err());
    }
}
