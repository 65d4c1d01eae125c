//! Schur–Weyl machinery for N spin-½ particles.
//!
//! The Schur basis is built by coupling one qubit at a time with
//! Clebsch–Gordan coefficients. A basis vector `|j, m, α⟩` is labelled by its
//! total angular momentum `j`, magnetization `m` and the coupling path `α`
//! (the sequence of intermediate `j`s). Basis vectors are real and supported
//! on computational states of Hamming weight `N/2 − m`, so the basis is
//! stored as one dense orthogonal block per weight.
//!
//! Half-integers are passed around doubled (`two_j`, `two_m`).
//!
//! Qubit 1 is the leftmost tensor factor and the most significant bit of a
//! computational index; bit value 0 is `|0⟩`, i.e. spin up.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, binomial, c, CMatrix, Mat2};
use crate::majorana::{self, SpinState};

/// Largest N for which the Schur basis is materialized.
pub const MAX_BASIS_N: usize = 13;

/// Largest N for which dense `2^N × 2^N` operators are formed.
pub const MAX_DENSE_N: usize = 10;

/// Normalized pure state of N qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiQubitState {
    n: usize,
    amps: Vec<Complex64>,
}

impl MultiQubitState {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize {
            return Err(Error::DimensionMismatch { expected: 2, got: amps.len() });
        }
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: amps.len() });
        }
        let norm = linalg::norm(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { n, amps: amps.into_iter().map(|z| z / norm).collect() })
    }

    /// Computational basis state with the given index.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        *amps.get_mut(index).ok_or(Error::DimensionMismatch { expected: 1 << n, got: index + 1 })? = c(1.0, 0.0);
        Self::new(n, amps)
    }

    /// Embeds a spin-N/2 state into the symmetric subspace of N qubits.
    pub fn from_spin(s: &SpinState) -> Self {
        let n = s.two_j() as usize;
        let amps = (0..1usize << n)
            .map(|idx| {
                let k = idx.count_ones() as u64;
                s.amps()[k as usize] / (binomial(n as u64, k) as f64).sqrt()
            })
            .collect();
        Self { n, amps }
    }

    /// Spin-N/2 state of a permutation-symmetric qubit state.
    ///
    /// Fails with [`Error::NotSymmetric`] naming the first component that
    /// deviates from its weight-class mean by more than `tol`.
    pub fn to_spin(&self, tol: f64) -> Result<SpinState> {
        let n = self.n;
        let mut sums = vec![c(0.0, 0.0); n + 1];
        for (idx, a) in self.amps.iter().enumerate() {
            sums[idx.count_ones() as usize] += a;
        }
        let means: Vec<Complex64> =
            sums.iter().enumerate().map(|(k, s)| s / binomial(n as u64, k as u64) as f64).collect();
        for (idx, a) in self.amps.iter().enumerate() {
            let deviation = (a - means[idx.count_ones() as usize]).norm();
            if deviation > tol {
                return Err(Error::NotSymmetric { index: idx, n, deviation });
            }
        }
        let amps = means.iter().enumerate().map(|(k, m)| m * (binomial(n as u64, k as u64) as f64).sqrt()).collect();
        SpinState::new(n as u32, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn fidelity(&self, other: &MultiQubitState) -> f64 {
        if self.n != other.n {
            return 0.0;
        }
        linalg::inner(&self.amps, &other.amps).norm()
    }

    /// `m^⊗N |ψ⟩`, renormalized.
    pub fn apply_collective(&self, m: &Mat2) -> Result<Self> {
        let det_abs = m.determinant().norm();
        if det_abs == 0.0 {
            return Err(Error::Singular { det_abs });
        }
        Self::new(self.n, collective_op(m, self.n).apply(&self.amps))
    }

    pub fn apply_permutation(&self, s: &Permutation) -> Result<Self> {
        let op = permutation_op(s, self.n)?;
        Ok(Self { n: self.n, amps: op.apply(&self.amps) })
    }
}

/// Formats a computational index as a ket, qubit 1 first.
pub fn ket_label(index: usize, n: usize) -> String {
    let bits: String = (0..n).map(|k| if index >> (n - 1 - k) & 1 == 1 { '1' } else { '0' }).collect();
    format!("|{bits}⟩")
}

/// Permutation of `{1, …, N}` stored zero-based: `images[k] = s(k+1) − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From zero-based images; fails unless they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Transposition of qubits `a` and `b` (one-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!("({a}{b}) out of range for N = {n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    /// Parses cycle notation such as `(12)(3)` or `(1 10)(2,3)`. Inside a
    /// cycle, entries are separated by spaces or commas; without separators
    /// every digit is one entry. Unlisted points are fixed.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("{text:?}: {msg}"));
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        if rest.is_empty() || !rest.starts_with('(') {
            return Err(bad("expected cycle notation like (12)(3)"));
        }
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let body = &rest[1..body_end];
            let entries: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| bad("non-numeric entry")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("non-numeric entry")))
                    .collect::<Result<_>>()?
            };
            if entries.is_empty() {
                return Err(bad("empty cycle"));
            }
            for &e in &entries {
                if e == 0 || e > n {
                    return Err(bad(&format!("entry {e} out of range 1..={n}")));
                }
                if seen[e - 1] {
                    return Err(bad(&format!("entry {e} repeated")));
                }
                seen[e - 1] = true;
            }
            for (i, &e) in entries.iter().enumerate() {
                images[e - 1] = entries[(i + 1) % entries.len()] - 1;
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Self { images: inv }
    }

    /// The permutation `p` with `S(p) = S(self)·S(other)`, namely
    /// `p(k) = other(self(k))`.
    pub fn product(&self, other: &Permutation) -> Self {
        Self { images: self.images.iter().map(|&k| other.images[k]).collect() }
    }

    /// All permutations of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if k == cur.len() {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in k..cur.len() {
                cur[k..=i].rotate_right(1);
                rec(k + 1, cur, out);
                cur[k..=i].rotate_left(1);
            }
        }
        rec(0, &mut cur, &mut out);
        out
    }
}

/// `S(s)|a_1 … a_N⟩ = |a_{s(1)} … a_{s(N)}⟩` as an index map.
#[derive(Debug, Clone)]
pub struct PermutationOp {
    n: usize,
    perm: Permutation,
}

impl PermutationOp {
    /// Output index for a computational input index.
    pub fn map_index(&self, input: usize) -> usize {
        let n = self.n;
        let mut out = 0;
        for k in 0..n {
            let bit = input >> (n - 1 - self.perm.images[k]) & 1;
            out |= bit << (n - 1 - k);
        }
        out
    }

    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![c(0.0, 0.0); amps.len()];
        for (i, a) in amps.iter().enumerate() {
            out[self.map_index(i)] = *a;
        }
        out
    }

    pub fn dense(&self) -> Result<CMatrix> {
        if self.n > MAX_DENSE_N {
            return Err(Error::TooLarge { n: self.n, limit: MAX_DENSE_N });
        }
        let dim = 1 << self.n;
        let mut m = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(self.map_index(i), i)] = c(1.0, 0.0);
        }
        Ok(m)
    }
}

pub fn permutation_op(s: &Permutation, n: usize) -> Result<PermutationOp> {
    if s.len() != n {
        return Err(Error::InvalidPermutation(format!("permutation of {} points on {n} qubits", s.len())));
    }
    Ok(PermutationOp { n, perm: s.clone() })
}

/// `m^⊗N`, applied qubit by qubit.
#[derive(Debug, Clone)]
pub struct CollectiveOp {
    n: usize,
    m: Mat2,
}

impl CollectiveOp {
    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = amps.to_vec();
        for k in 0..self.n {
            let bit = 1usize << (self.n - 1 - k);
            for i in 0..out.len() {
                if i & bit == 0 {
                    let (a0, a1) = (out[i], out[i | bit]);
                    out[i] = self.m[(0, 0)] * a0 + self.m[(0, 1)] * a1;
                    out[i | bit] = self.m[(1, 0)] * a0 + self.m[(1, 1)] * a1;
                }
            }
        }
        out
    }

    pub fn dense(&self) -> Result<CMatrix> {
        if self.n > MAX_DENSE_N {
            return Err(Error::TooLarge { n: self.n, limit: MAX_DENSE_N });
        }
        let one = linalg::to_dense(&self.m);
        let mut full = CMatrix::from_element(1, 1, c(1.0, 0.0));
        for _ in 0..self.n {
            full = full.kronecker(&one);
        }
        Ok(full)
    }
}

pub fn collective_op(m: &Mat2, n: usize) -> CollectiveOp {
    CollectiveOp { n, m: *m }
}

fn factorial(n: i64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Condon–Shortley Clebsch–Gordan coefficient
/// `⟨j1 m1; j2 m2 | J M⟩` with every argument doubled. Returns zero outside
/// the triangle and magnetization constraints.
pub fn cg_coefficient(two_j1: i64, two_m1: i64, two_j2: i64, two_m2: i64, two_j: i64, two_m: i64) -> f64 {
    let valid_m = |tj: i64, tm: i64| tj >= 0 && tm.abs() <= tj && (tj - tm) % 2 == 0;
    if !valid_m(two_j1, two_m1) || !valid_m(two_j2, two_m2) || !valid_m(two_j, two_m) {
        return 0.0;
    }
    if two_m1 + two_m2 != two_m {
        return 0.0;
    }
    if two_j < (two_j1 - two_j2).abs() || two_j > two_j1 + two_j2 || (two_j1 + two_j2 + two_j) % 2 != 0 {
        return 0.0;
    }
    // Integer arguments of the Racah formula.
    let a = (two_j1 + two_j2 - two_j) / 2;
    let b = (two_j1 - two_m1) / 2;
    let cc = (two_j2 + two_m2) / 2;
    let d = (two_j - two_j2 + two_m1) / 2;
    let e = (two_j - two_j1 - two_m2) / 2;
    let prefactor = ((two_j + 1) as f64 * factorial((two_j + two_j1 - two_j2) / 2)
        * factorial((two_j - two_j1 + two_j2) / 2)
        * factorial(a)
        / factorial((two_j1 + two_j2 + two_j) / 2 + 1))
        .sqrt()
        * (factorial((two_j + two_m) / 2)
            * factorial((two_j - two_m) / 2)
            * factorial((two_j1 - two_m1) / 2)
            * factorial((two_j1 + two_m1) / 2)
            * factorial((two_j2 - two_m2) / 2)
            * factorial((two_j2 + two_m2) / 2))
            .sqrt();
    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(cc);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign
            / (factorial(k)
                * factorial(a - k)
                * factorial(b - k)
                * factorial(cc - k)
                * factorial(d + k)
                * factorial(e + k));
    }
    prefactor * sum
}

/// Sequence of doubled intermediate angular momenta `2j_1 = 1, 2j_2, …, 2j_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CouplingPath(pub Vec<u32>);

impl CouplingPath {
    pub fn two_j(&self) -> u32 {
        *self.0.last().expect("nonempty path")
    }

    /// `½→1→½` style rendering.
    pub fn describe(&self) -> String {
        self.0.iter().map(|&t| half_string(t)).collect::<Vec<_>>().join("→")
    }
}

/// Renders a doubled half-integer, e.g. `3` as `3/2`.
pub fn half_string(two: u32) -> String {
    if two.is_multiple_of(2) {
        format!("{}", two / 2)
    } else {
        format!("{two}/2")
    }
}

/// Label of one `(j, α)` block of the Schur basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLabel {
    pub two_j: u32,
    pub alpha: usize,
    pub path: CouplingPath,
}

#[derive(Debug, Clone)]
struct Sector {
    /// Computational indices of this Hamming weight, ascending.
    comp: Vec<usize>,
    /// Blocks present at this weight, in block order.
    blocks: Vec<usize>,
    /// `comp.len() × blocks.len()` orthogonal matrix of basis components.
    mat: DMatrix<f64>,
}

impl Sector {
    fn column_of(&self, block: usize) -> Option<usize> {
        self.blocks.binary_search(&block).ok()
    }
}

/// Orthonormal Schur basis of `(C²)^⊗N`.
#[derive(Debug, Clone)]
pub struct SchurBasis {
    n: usize,
    blocks: Vec<BlockLabel>,
    sectors: Vec<Sector>,
    position: Vec<usize>,
}

impl SchurBasis {
    fn build(n: usize) -> Self {
        // One qubit: |½, ½⟩ = |0⟩, |½, −½⟩ = |1⟩.
        let mut paths = vec![CouplingPath(vec![1])];
        let mut sectors = vec![
            Sector { comp: vec![0], blocks: vec![0], mat: DMatrix::from_element(1, 1, 1.0) },
            Sector { comp: vec![1], blocks: vec![0], mat: DMatrix::from_element(1, 1, 1.0) },
        ];
        let mut position = vec![0usize, 0];

        for level in 1..n {
            let new_n = level + 1;
            let mut children: Vec<(CouplingPath, usize)> = Vec::new();
            for (parent, path) in paths.iter().enumerate() {
                let tj = path.two_j();
                let mut up = path.0.clone();
                up.push(tj + 1);
                children.push((CouplingPath(up), parent));
                if tj > 0 {
                    let mut down = path.0.clone();
                    down.push(tj - 1);
                    children.push((CouplingPath(down), parent));
                }
            }
            children.sort_by(|(a, _), (b, _)| b.two_j().cmp(&a.two_j()).then_with(|| b.cmp(a)));

            let mut new_position = vec![0usize; 1 << new_n];
            let mut new_sectors = Vec::with_capacity(new_n + 1);
            for w in 0..=new_n {
                let comp: Vec<usize> = (0..1usize << new_n).filter(|i| i.count_ones() as usize == w).collect();
                for (p, &i) in comp.iter().enumerate() {
                    new_position[i] = p;
                }
                let two_m = new_n as i64 - 2 * w as i64;
                let blocks: Vec<usize> = (0..children.len())
                    .filter(|&b| children[b].0.two_j() as i64 >= two_m.abs())
                    .collect();
                let mut mat = DMatrix::<f64>::zeros(comp.len(), blocks.len());
                for (col, &b) in blocks.iter().enumerate() {
                    let (path, parent) = &children[b];
                    let two_big = path.two_j() as i64;
                    let two_small = paths[*parent].two_j() as i64;
                    for sigma in 0..2usize {
                        if sigma > w {
                            continue;
                        }
                        let old_w = w - sigma;
                        if old_w > level {
                            continue;
                        }
                        let two_s = if sigma == 0 { 1 } else { -1 };
                        let cg = cg_coefficient(two_small, two_m - two_s, 1, two_s, two_big, two_m);
                        if cg == 0.0 {
                            continue;
                        }
                        let old = &sectors[old_w];
                        let Some(old_col) = old.column_of(*parent) else { continue };
                        for (row, &idx) in old.comp.iter().enumerate() {
                            let v = old.mat[(row, old_col)];
                            if v != 0.0 {
                                mat[(new_position[2 * idx + sigma], col)] += cg * v;
                            }
                        }
                    }
                }
                new_sectors.push(Sector { comp, blocks, mat });
            }
            paths = children.into_iter().map(|(p, _)| p).collect();
            sectors = new_sectors;
            position = new_position;
        }

        let mut blocks = Vec::with_capacity(paths.len());
        let mut alpha = 0;
        for (i, path) in paths.into_iter().enumerate() {
            if i > 0 && blocks.last().is_some_and(|b: &BlockLabel| b.two_j != path.two_j()) {
                alpha = 0;
            }
            blocks.push(BlockLabel { two_j: path.two_j(), alpha, path });
            alpha += 1;
        }
        Self { n, blocks, sectors, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks ordered by `j` descending, then by path (lexicographically
    /// descending); `alpha` counts within each `j`.
    pub fn blocks(&self) -> &[BlockLabel] {
        &self.blocks
    }

    /// Distinct doubled `j` values, descending.
    pub fn two_js(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.blocks.iter().map(|b| b.two_j).collect();
        out.dedup();
        out
    }

    pub fn block_index(&self, two_j: u32, alpha: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.two_j == two_j && b.alpha == alpha)
    }

    /// Blocks of one `j`, in `α` order.
    pub fn blocks_of(&self, two_j: u32) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].two_j == two_j).collect()
    }

    fn sector_of(&self, two_m: i64) -> Option<&Sector> {
        let w = self.n as i64 - two_m;
        if w < 0 || w % 2 != 0 || w / 2 > self.n as i64 {
            return None;
        }
        self.sectors.get((w / 2) as usize)
    }

    /// `|j, m, α⟩` of block `block` as a dense real vector of length `2^N`.
    pub fn vector(&self, block: usize, two_m: i64) -> Option<Vec<f64>> {
        let sector = self.sector_of(two_m)?;
        let col = sector.column_of(block)?;
        let mut v = vec![0.0; 1 << self.n];
        for (row, &idx) in sector.comp.iter().enumerate() {
            v[idx] = sector.mat[(row, col)];
        }
        Some(v)
    }

    /// `⟨j, m, α | ψ⟩` for every `m = j, j−1, …, −j` of one block.
    pub fn block_components(&self, block: usize, amps: &[Complex64]) -> Vec<Complex64> {
        let tj = self.blocks[block].two_j as i64;
        (0..=tj)
            .map(|k| {
                let sector = self.sector_of(tj - 2 * k).expect("valid magnetization");
                let col = sector.column_of(block).expect("block present at this weight");
                sector.comp.iter().enumerate().map(|(row, &idx)| amps[idx] * sector.mat[(row, col)]).sum()
            })
            .collect()
    }

    /// Adds `scale · Σ_m rep[m] |j, m, α⟩` to `amps`.
    fn accumulate(&self, block: usize, rep: &[Complex64], scale: Complex64, amps: &mut [Complex64]) {
        let tj = self.blocks[block].two_j as i64;
        for (k, r) in rep.iter().enumerate() {
            let sector = self.sector_of(tj - 2 * k as i64).expect("valid magnetization");
            let col = sector.column_of(block).expect("block present at this weight");
            let w = scale * r;
            for (row, &idx) in sector.comp.iter().enumerate() {
                amps[idx] += w * sector.mat[(row, col)];
            }
        }
    }

    /// Column-per-basis-vector matrix ordered by block, then `m` descending.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        if self.n > MAX_DENSE_N {
            return Err(Error::TooLarge { n: self.n, limit: MAX_DENSE_N });
        }
        let dim = 1 << self.n;
        let mut out = DMatrix::<f64>::zeros(dim, dim);
        let mut col = 0;
        for (b, label) in self.blocks.iter().enumerate() {
            let tj = label.two_j as i64;
            for k in 0..=tj {
                let v = self.vector(b, tj - 2 * k).expect("basis vector");
                out.set_column(col, &nalgebra::DVector::from_vec(v));
                col += 1;
            }
        }
        Ok(out)
    }

    /// Offsets of each block's first column in [`SchurBasis::dense`].
    pub fn dense_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for b in &self.blocks {
            offsets.push(acc);
            acc += b.two_j as usize + 1;
        }
        offsets
    }

    /// Largest deviation of the basis Gram matrix from the identity,
    /// checked sector by sector (vectors of different weight are disjoint).
    pub fn orthonormality_deviation(&self) -> f64 {
        self.sectors
            .iter()
            .map(|s| {
                let gram = s.mat.transpose() * &s.mat;
                let id = DMatrix::<f64>::identity(gram.nrows(), gram.ncols());
                (gram - id).amax()
            })
            .fold(0.0, f64::max)
    }

    /// Position of a computational index inside its weight sector.
    fn row_of(&self, index: usize) -> usize {
        self.position[index]
    }
}

fn basis_cache() -> &'static Mutex<HashMap<usize, Arc<SchurBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SchurBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached Schur basis of N qubits.
pub fn schur_basis(n: usize) -> Result<Arc<SchurBasis>> {
    if n == 0 {
        return Err(Error::InvalidSpin("N must be at least 1".into()));
    }
    if n > MAX_BASIS_N {
        return Err(Error::TooLarge { n, limit: MAX_BASIS_N });
    }
    let mut cache = basis_cache().lock().expect("basis cache poisoned");
    Ok(cache.entry(n).or_insert_with(|| Arc::new(SchurBasis::build(n))).clone())
}

/// `d_j = (2j+1) C(N, N/2 − j) / (j + N/2 + 1)`, the multiplicity of spin `j`
/// among N qubits.
pub fn multiplicity_dim(n: usize, two_j: u32) -> Result<u128> {
    let tj = two_j as usize;
    if tj > n || !(n - tj).is_multiple_of(2) {
        return Err(Error::InvalidSpin(format!("j = {} is not reachable with N = {n}", half_string(two_j))));
    }
    let num = (tj as u128 + 1)
        .checked_mul(binomial(n as u64, ((n - tj) / 2) as u64))
        .ok_or(Error::Overflow("multiplicity dimension"))?;
    let den = ((n + tj) / 2 + 1) as u128;
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

/// Doubled `j` values reachable with N qubits, descending.
pub fn allowed_two_js(n: usize) -> Vec<u32> {
    (0..=n as u32).rev().filter(|tj| (n as u32 - tj).is_multiple_of(2)).collect()
}

/// A partition `λ` with the dimensions of the matching GL(d) and S_N irreps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepDims {
    pub partition: Vec<usize>,
    pub dim_gl: u128,
    pub dim_s: u128,
}

/// Partitions of `n` into at most `max_parts` parts, lexicographically
/// descending.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, largest: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for part in (1..=largest.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

fn hooks(partition: &[usize]) -> Vec<(usize, usize, u128)> {
    let mut cells = Vec::new();
    for (r, &len) in partition.iter().enumerate() {
        for col in 0..len {
            let arm = len - col - 1;
            let leg = partition[r + 1..].iter().filter(|&&l| l > col).count();
            cells.push((r, col, (arm + leg + 1) as u128));
        }
    }
    cells
}

/// Hook-length and Weyl dimension formulas over `Par(N, d)`.
pub fn irrep_dimensions(n: usize, d: usize) -> Result<Vec<IrrepDims>> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidSpin(format!("need N ≥ 1 and d ≥ 1 (got N = {n}, d = {d})")));
    }
    let overflow = || Error::Overflow("irrep dimension");
    let n_fact = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).ok_or_else(overflow)?;
    partitions(n, d)
        .into_iter()
        .map(|partition| {
            let cells = hooks(&partition);
            let hook_prod = cells.iter().try_fold(1u128, |acc, &(_, _, h)| acc.checked_mul(h)).ok_or_else(overflow)?;
            let content_prod = cells
                .iter()
                .try_fold(1u128, |acc, &(r, col, _)| acc.checked_mul((d + col - r) as u128))
                .ok_or_else(overflow)?;
            Ok(IrrepDims { partition, dim_gl: content_prod / hook_prod, dim_s: n_fact / hook_prod })
        })
        .collect()
}

/// One `(j, α)` block of a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurBlock {
    pub two_j: u32,
    pub alpha: usize,
    pub path: CouplingPath,
    /// Weight `ξ_j^α`.
    pub xi: Complex64,
    /// Normalized representation state; `None` when the block is empty.
    pub rep_state: Option<RepState>,
}

/// Representation state of one block. Spin zero has no [`SpinState`]
/// counterpart, so the amplitudes are kept directly.
#[derive(Debug, Clone, PartialEq)]
pub struct RepState {
    pub two_j: u32,
    /// Amplitudes over `m = j, j−1, …, −j`.
    pub amps: Vec<Complex64>,
}

impl RepState {
    /// The matching spin state, for `j ≥ ½`.
    pub fn spin_state(&self) -> Option<SpinState> {
        (self.two_j > 0).then(|| SpinState::new(self.two_j, self.amps.clone()).expect("normalized"))
    }

    /// Majorana points of the representation state (none for `j = 0`).
    pub fn points(&self, eps: f64) -> Result<Vec<crate::bloch::BlochPoint>> {
        match self.spin_state() {
            Some(s) => Ok(majorana::majorana_points(&s, eps)?.points().to_vec()),
            None => Ok(Vec::new()),
        }
    }
}

/// Schur decomposition `|Ψ⟩ = Σ ξ_j^α |ψ_j^α⟩ ⊗ |α⟩_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurDecomposition {
    pub n: usize,
    pub blocks: Vec<SchurBlock>,
}

/// Blocks with `‖v‖` below this carry `ξ = 0`.
pub const EMPTY_BLOCK: f64 = 1e-12;

/// Relative size below which an amplitude is skipped when fixing the phase.
const PHASE_PIVOT_REL: f64 = 1e-8;

impl SchurDecomposition {
    /// Multiplicity vector `(ξ_j^α)_α` of one `j`.
    pub fn multiplicity_state(&self, two_j: u32) -> Vec<Complex64> {
        self.blocks.iter().filter(|b| b.two_j == two_j).map(|b| b.xi).collect()
    }

    /// Distinct doubled `j`s, descending.
    pub fn two_js(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.blocks.iter().map(|b| b.two_j).collect();
        out.dedup();
        out
    }

    pub fn block(&self, two_j: u32, alpha: usize) -> Option<&SchurBlock> {
        self.blocks.iter().find(|b| b.two_j == two_j && b.alpha == alpha)
    }

    /// `Σ |ξ|²`.
    pub fn weight(&self) -> f64 {
        self.blocks.iter().map(|b| b.xi.norm_sqr()).sum()
    }

    /// Reduced density matrix of the multiplicity factor of spin `j`:
    /// `ρ_{αα'} = Σ_m ξ^α ψ^α_m (ξ^{α'} ψ^{α'}_m)^*`. Collective unitaries
    /// leave it unchanged.
    pub fn multiplicity_density(&self, two_j: u32) -> CMatrix {
        let blocks: Vec<&SchurBlock> = self.blocks.iter().filter(|b| b.two_j == two_j).collect();
        let raw: Vec<Vec<Complex64>> = blocks
            .iter()
            .map(|b| match &b.rep_state {
                Some(r) => r.amps.iter().map(|a| a * b.xi).collect(),
                None => vec![c(0.0, 0.0); two_j as usize + 1],
            })
            .collect();
        CMatrix::from_fn(blocks.len(), blocks.len(), |a, b| linalg::inner(&raw[b], &raw[a]))
    }
}

/// Splits `v = ξ · ψ` with `ψ` normalized and its first non-negligible
/// amplitude (in `m`-descending order) real positive.
fn split_block(v: &[Complex64]) -> (Complex64, Option<Vec<Complex64>>) {
    let norm = linalg::norm(v);
    if norm < EMPTY_BLOCK {
        return (c(0.0, 0.0), None);
    }
    let pivot = v.iter().find(|z| z.norm() > PHASE_PIVOT_REL * norm).expect("nonzero block");
    let phase = Complex64::from_polar(1.0, pivot.arg());
    let rep = v.iter().map(|z| z / (phase * norm)).collect();
    (phase * norm, Some(rep))
}

pub fn decompose(s: &MultiQubitState) -> Result<SchurDecomposition> {
    let basis = schur_basis(s.n)?;
    decompose_with(&basis, s)
}

pub fn decompose_with(basis: &SchurBasis, s: &MultiQubitState) -> Result<SchurDecomposition> {
    if basis.n != s.n {
        return Err(Error::DimensionMismatch { expected: 1 << basis.n, got: s.amps.len() });
    }
    let blocks = basis
        .blocks
        .iter()
        .enumerate()
        .map(|(b, label)| {
            let v = basis.block_components(b, &s.amps);
            let (xi, rep) = split_block(&v);
            SchurBlock {
                two_j: label.two_j,
                alpha: label.alpha,
                path: label.path.clone(),
                xi,
                rep_state: rep.map(|amps| RepState { two_j: label.two_j, amps }),
            }
        })
        .collect();
    Ok(SchurDecomposition { n: s.n, blocks })
}

/// Unnormalized reconstruction `Σ ξ (ψ ⊗ |α⟩)` in computational coordinates.
pub fn reconstruct_amps(d: &SchurDecomposition) -> Result<Vec<Complex64>> {
    let basis = schur_basis(d.n)?;
    let mut amps = vec![c(0.0, 0.0); 1 << d.n];
    for block in &d.blocks {
        let Some(rep) = &block.rep_state else { continue };
        let b = basis
            .block_index(block.two_j, block.alpha)
            .ok_or_else(|| Error::InvalidSpin(format!("no block j = {}, α = {}", half_string(block.two_j), block.alpha)))?;
        if rep.amps.len() != block.two_j as usize + 1 {
            return Err(Error::DimensionMismatch { expected: block.two_j as usize + 1, got: rep.amps.len() });
        }
        basis.accumulate(b, &rep.amps, block.xi, &mut amps);
    }
    Ok(amps)
}

pub fn reconstruct(d: &SchurDecomposition) -> Result<MultiQubitState> {
    MultiQubitState::new(d.n, reconstruct_amps(d)?)
}

/// `⟨j, m, α | S(s) | j, m, α'⟩` over the multiplicity labels of spin `j`
/// at magnetization `m`.
pub fn perm_irrep_matrix_at(s: &Permutation, two_j: u32, two_m: i64, n: usize) -> Result<DMatrix<f64>> {
    let basis = schur_basis(n)?;
    let op = permutation_op(s, n)?;
    if two_m.unsigned_abs() > two_j as u64 || (two_j as i64 - two_m) % 2 != 0 {
        return Err(Error::InvalidSpin(format!("m = {two_m}/2 invalid for j = {}", half_string(two_j))));
    }
    let blocks = basis.blocks_of(two_j);
    if blocks.is_empty() {
        return Err(Error::InvalidSpin(format!("j = {} is not reachable with N = {n}", half_string(two_j))));
    }
    let sector = basis.sector_of(two_m).expect("valid magnetization");
    let cols: Vec<usize> = blocks.iter().map(|&b| sector.column_of(b).expect("present")).collect();
    let mut out = DMatrix::<f64>::zeros(blocks.len(), blocks.len());
    for (row, &idx) in sector.comp.iter().enumerate() {
        let image_row = basis.row_of(op.map_index(idx));
        for (a, &ca) in cols.iter().enumerate() {
            let left = sector.mat[(image_row, ca)];
            if left == 0.0 {
                continue;
            }
            for (b, &cb) in cols.iter().enumerate() {
                out[(a, b)] += left * sector.mat[(row, cb)];
            }
        }
    }
    Ok(out)
}

/// Multiplicity-space matrix of `S(s)` for spin `j`, evaluated at `m = j`.
pub fn perm_irrep_matrix(s: &Permutation, two_j: u32, n: usize) -> Result<DMatrix<f64>> {
    perm_irrep_matrix_at(s, two_j, two_j as i64, n)
}

/// Outcome of [`verify_block_structure`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlockReport {
    pub n: usize,
    /// Largest entry coupling different `j`.
    pub max_off_block: f64,
    /// Per doubled `j`: largest deviation from the predicted factorized block.
    pub block_deviation: Vec<(u32, f64)>,
    pub tol: f64,
    pub pass: bool,
}

/// Conjugates `m^⊗N · S(s)` into the Schur basis and compares each
/// `j`-block with `det(m)^{N/2−j} · sym_power(m, 2j) ⊗ P_j(s)`, where the
/// determinant power is the GL(2) weight carried by the block's partition.
pub fn verify_block_structure(m: &Mat2, s: &Permutation, n: usize, tol: f64) -> Result<BlockReport> {
    let basis = schur_basis(n)?;
    let dense_basis = basis.dense()?.map(|x| c(x, 0.0));
    let total = collective_op(m, n).dense()? * permutation_op(s, n)?.dense()?;
    let conj = dense_basis.transpose() * total * &dense_basis;
    let offsets = basis.dense_offsets();
    let det = m.determinant();

    let dim = 1usize << n;
    let mut owner = vec![0u32; dim];
    for (b, label) in basis.blocks.iter().enumerate() {
        for k in 0..=label.two_j as usize {
            owner[offsets[b] + k] = label.two_j;
        }
    }
    let mut max_off_block: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if owner[i] != owner[j] {
                max_off_block = max_off_block.max(conj[(i, j)].norm());
            }
        }
    }

    let mut block_deviation = Vec::new();
    for two_j in basis.two_js() {
        let rep = sym_power_weighted(m, det, two_j, n);
        let mult = perm_irrep_matrix(s, two_j, n)?;
        let blocks = basis.blocks_of(two_j);
        let mut dev: f64 = 0.0;
        for (a, &ba) in blocks.iter().enumerate() {
            for (b, &bb) in blocks.iter().enumerate() {
                for k in 0..=two_j as usize {
                    for l in 0..=two_j as usize {
                        let got = conj[(offsets[ba] + k, offsets[bb] + l)];
                        let want = rep[(k, l)] * mult[(a, b)];
                        dev = dev.max((got - want).norm());
                    }
                }
            }
        }
        block_deviation.push((two_j, dev));
    }
    let pass = max_off_block < tol && block_deviation.iter().all(|&(_, d)| d < tol);
    Ok(BlockReport { n, max_off_block, block_deviation, tol, pass })
}

fn sym_power_weighted(m: &Mat2, det: Complex64, two_j: u32, n: usize) -> CMatrix {
    let weight = det.powu((n as u32 - two_j) / 2);
    let base = if two_j == 0 { CMatrix::identity(1, 1) } else { majorana::sym_power(m, two_j) };
    base * weight
}
