//! Index-level building blocks: circular shifts, interleaving permutations,
//! circulant and block-circulant constructors, the unitary DFT, Kronecker
//! products, and blockwise transpose / permutation operators.
//!
//! Everything downstream (measurement operators, block diagonalization,
//! fast inversion) is a composition of these pieces, so they are kept
//! deliberately small and are tested against dense enumerations.
//!
//! Indexing is 0-based internally. Where a formula is stated, `w` denotes
//! the primitive `d`-th root of unity `exp(2*pi*i/d)`.

use ndarray::Array2;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::{C64, DENSE_GUARD};

/// Interleaving permutation on vectors of length `d * n`.
///
/// Reads the input as `n` blocks of `d` entries and interleaves them into
/// `d` blocks of `n` entries: `out[a*n + b] = in[b*d + a]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterleavePerm {
    pub d: usize,
    pub n: usize,
}

impl InterleavePerm {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::Validation("interleave dimensions must be positive".into()));
        }
        Ok(Self { d, n })
    }

    pub fn len(&self) -> usize {
        self.d * self.n
    }

    #[allow(clippy::len_without_is_empty)]
    /// Inverse permutation; applying both in sequence is the identity.
    pub fn inverse(&self) -> Self {
        Self { d: self.n, n: self.d }
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        apply_interleave(self.d, self.n, v)
    }

    /// Gather map of the permutation: `out[i] = in[gather[i]]`.
    pub fn gather_map(&self) -> Vec<usize> {
        let (d, n) = (self.d, self.n);
        let mut g = vec![0usize; d * n];
        for a in 0..d {
            for b in 0..n {
                g[a * n + b] = b * d + a;
            }
        }
        g
    }
}

/// Applies the interleaving permutation: `out[a*n + b] = in[b*d + a]`.
pub fn apply_interleave(d: usize, n: usize, v: &[C64]) -> Result<Vec<C64>> {
    if v.len() != d * n {
        return Err(Error::Dimension(format!(
            "interleave expects length {}, got {}",
            d * n,
            v.len()
        )));
    }
    let mut out = vec![C64::new(0.0, 0.0); d * n];
    for a in 0..d {
        for b in 0..n {
            out[a * n + b] = v[b * d + a];
        }
    }
    Ok(out)
}

/// Circular down-shift by `k`: `out[i] = v[(i - k) mod len]`.
pub fn shift(v: &[C64], k: i64) -> Vec<C64> {
    let n = v.len() as i64;
    (0..v.len())
        .map(|i| v[(((i as i64 - k) % n + n) % n) as usize])
        .collect()
}

/// Index reversal fixing the first entry: `out[i] = v[(-i) mod len]`.
pub fn reversal(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    (0..n).map(|i| v[(n - i) % n]).collect()
}

/// Shape of a block-circulant assembly `circ^N(V)` for `V` with `l*N` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircBlockSpec {
    /// Row-shift stride between consecutive block columns.
    pub block_rows: usize,
    /// Columns per block (`m`).
    pub columns_per_block: usize,
    /// Number of block columns (`l = rows / block_rows`).
    pub block_count: usize,
}

impl CircBlockSpec {
    pub fn for_matrix(rows: usize, cols: usize, stride_n: usize) -> Result<Self> {
        if stride_n == 0 || rows == 0 {
            return Err(Error::Validation("block circulant needs positive dimensions".into()));
        }
        if rows % stride_n != 0 {
            return Err(Error::Dimension(format!(
                "row count {rows} not divisible by stride {stride_n}"
            )));
        }
        Ok(Self { block_rows: stride_n, columns_per_block: cols, block_count: rows / stride_n })
    }

    pub fn out_rows(&self) -> usize {
        self.block_rows * self.block_count
    }

    pub fn out_cols(&self) -> usize {
        self.columns_per_block * self.block_count
    }
}

/// Dense circulant matrix with columns `v, S v, S^2 v, ...`.
///
/// Oracle/test utility; guarded against accidental large allocations.
pub fn circ(v: &[C64]) -> Result<Array2<C64>> {
    let d = v.len();
    if d == 0 {
        return Err(Error::Validation("circ of empty vector".into()));
    }
    if d > DENSE_GUARD {
        return Err(Error::SizeGuard(format!("circ rows {d} > {DENSE_GUARD}")));
    }
    let mut out = Array2::zeros((d, d));
    for k in 0..d {
        for i in 0..d {
            out[(i, k)] = v[(i + d - k) % d];
        }
    }
    Ok(out)
}

/// Dense block circulant `circ^N(V) = [V, S^N V, ..., S^{(l-1)N} V]`, where
/// `S^N` shifts rows down cyclically by `N` and `l = rows / N`.
pub fn circ_block(v: &Array2<C64>, stride_n: usize) -> Result<Array2<C64>> {
    let (rows, cols) = v.dim();
    let spec = CircBlockSpec::for_matrix(rows, cols, stride_n)?;
    if rows > DENSE_GUARD {
        return Err(Error::SizeGuard(format!("circ_block rows {rows} > {DENSE_GUARD}")));
    }
    let l = spec.block_count;
    let mut out = Array2::zeros((rows, l * cols));
    for k in 0..l {
        let off = k * stride_n;
        for i in 0..rows {
            let src = (i + rows - off) % rows;
            for c in 0..cols {
                out[(i, k * cols + c)] = v[(src, c)];
            }
        }
    }
    Ok(out)
}

/// Blockwise transpose: splits `V` into `N x m` blocks stacked vertically and
/// stacks their conjugate transposes, giving an `l*m x N` matrix.
pub fn block_transpose(v: &Array2<C64>, n: usize) -> Result<Array2<C64>> {
    let (rows, cols) = v.dim();
    if n == 0 || rows % n != 0 {
        return Err(Error::Dimension(format!(
            "block_transpose: row count {rows} not divisible by block height {n}"
        )));
    }
    let l = rows / n;
    let mut out = Array2::zeros((l * cols, n));
    for w in 0..l {
        for r in 0..cols {
            for c in 0..n {
                out[(w * cols + r, c)] = v[(w * n + c, r)].conj();
            }
        }
    }
    Ok(out)
}

/// Blockwise permutation with gather semantics: output block `i` is input
/// block `perm[i]`, blocks sized per `sizes`.
pub fn block_perm(perm: &[usize], sizes: &[usize], v: &[C64]) -> Result<Vec<C64>> {
    let n = sizes.len();
    if perm.len() != n {
        return Err(Error::Dimension("block_perm: perm and sizes length differ".into()));
    }
    let total: usize = sizes.iter().sum();
    if v.len() != total {
        return Err(Error::Dimension(format!(
            "block_perm: vector length {} != total block size {total}",
            v.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Validation("block_perm: not a permutation".into()));
        }
        seen[p] = true;
    }
    let mut starts = vec![0usize; n + 1];
    for j in 0..n {
        starts[j + 1] = starts[j] + sizes[j];
    }
    let mut out = Vec::with_capacity(total);
    for i in 0..n {
        let src = perm[i];
        out.extend_from_slice(&v[starts[src]..starts[src] + sizes[src]]);
    }
    Ok(out)
}

/// Kronecker product `A (x) B`.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i1 in 0..ra {
        for j1 in 0..ca {
            let s = a[(i1, j1)];
            for i2 in 0..rb {
                for j2 in 0..cb {
                    out[(i1 * rb + i2, j1 * cb + j2)] = s * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Column-major vectorization.
pub fn vec_of(m: &Array2<C64>) -> Vec<C64> {
    let (rows, cols) = m.dim();
    let mut v = Vec::with_capacity(rows * cols);
    for j in 0..cols {
        for i in 0..rows {
            v.push(m[(i, j)]);
        }
    }
    v
}

/// Inverse of [`vec_of`]: reshapes a column-major vector into `rows x cols`.
pub fn mat_of(v: &[C64], rows: usize, cols: usize) -> Result<Array2<C64>> {
    if v.len() != rows * cols {
        return Err(Error::Dimension(format!(
            "mat_of: length {} != {rows}x{cols}",
            v.len()
        )));
    }
    let mut m = Array2::zeros((rows, cols));
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = v[j * rows + i];
        }
    }
    Ok(m)
}

/// `vec(A * B * C)`, the standard Kronecker vectorization identity's left side.
pub fn kron_vec(a: &Array2<C64>, b: &Array2<C64>, c: &Array2<C64>) -> Result<Vec<C64>> {
    if a.ncols() != b.nrows() || b.ncols() != c.nrows() {
        return Err(Error::Dimension(format!(
            "kron_vec: inner dimensions not conformable ({}x{})({}x{})({}x{})",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols(),
            c.nrows(),
            c.ncols()
        )));
    }
    let prod = a.dot(b).dot(c);
    Ok(vec_of(&prod))
}

/// Unitary DFT of a fixed length.
///
/// Column `j` of the represented matrix `F_d` is `f_j` with entries
/// `(f_j)_k = w^{jk} / sqrt(d)`. `forward` applies `F_d`, `adjoint` applies
/// `F_d^*`; they are mutually inverse. Any length is supported.
#[derive(Clone)]
pub struct DftPlan {
    len: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for DftPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DftPlan").field("len", &self.len).finish()
    }
}

impl DftPlan {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Validation("DFT length must be positive".into()));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            len,
            fwd: planner.plan_fft_forward(len),
            inv: planner.plan_fft_inverse(len),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    #[allow(clippy::len_without_is_empty)]
    /// `F_d v`: positive-exponent transform with `1/sqrt(d)` normalization.
    pub fn forward(&self, v: &[C64]) -> Result<Vec<C64>> {
        let mut buf = self.checked(v)?;
        self.inv.process(&mut buf);
        let scale = 1.0 / (self.len as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= scale);
        Ok(buf)
    }

    /// `F_d^* v`: negative-exponent transform with `1/sqrt(d)` normalization.
    pub fn adjoint(&self, v: &[C64]) -> Result<Vec<C64>> {
        let mut buf = self.checked(v)?;
        self.fwd.process(&mut buf);
        let scale = 1.0 / (self.len as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= scale);
        Ok(buf)
    }

    /// Unnormalized negative-exponent transform: `out[k] = sum_j w^{-kj} v[j]`.
    pub(crate) fn fft_neg_unnorm(&self, v: &mut [C64]) {
        debug_assert_eq!(v.len(), self.len);
        self.fwd.process(v);
    }

    /// Unnormalized positive-exponent transform: `out[k] = sum_j w^{+kj} v[j]`.
    pub(crate) fn fft_pos_unnorm(&self, v: &mut [C64]) {
        debug_assert_eq!(v.len(), self.len);
        self.inv.process(v);
    }

    fn checked(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.len {
            return Err(Error::Dimension(format!(
                "DFT length mismatch: plan {}, input {}",
                self.len,
                v.len()
            )));
        }
        Ok(v.to_vec())
    }
}

/// Dense unitary DFT matrix `F_d` (test/oracle utility).
pub fn dft_matrix(d: usize) -> Array2<C64> {
    let scale = 1.0 / (d as f64).sqrt();
    let mut f = Array2::zeros((d, d));
    for k in 0..d {
        for j in 0..d {
            let ang = 2.0 * std::f64::consts::PI * ((k * j) % d) as f64 / d as f64;
            f[(k, j)] = C64::new(ang.cos(), ang.sin()) * scale;
        }
    }
    f
}

/// Standard complex basis vector `e_k` of length `n`.
pub fn basis_vec(n: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[k] = C64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cv(vals: &[f64]) -> Vec<C64> {
        vals.iter().map(|&x| c(x, 0.0)).collect()
    }

    fn max_abs(v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    #[test]
    fn interleave_d1_is_identity() {
        let v = cv(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(apply_interleave(1, 5, &v).unwrap(), v);
    }

    #[test]
    fn interleave_2x2_swaps_middle() {
        let v = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        let w = apply_interleave(2, 2, &v).unwrap();
        assert_eq!(w, vec![c(1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
    }

    #[test]
    fn interleave_roundtrip_3x4() {
        let v: Vec<C64> = (0..12).map(|i| c(i as f64, (2 * i) as f64)).collect();
        let w = apply_interleave(4, 3, &apply_interleave(3, 4, &v).unwrap()).unwrap();
        assert_eq!(w, v);
    }

    #[test]
    fn interleave_length_mismatch_rejected() {
        assert!(apply_interleave(2, 3, &cv(&[1.0; 5])).is_err());
    }

    #[test]
    fn reversal_examples() {
        let v = cv(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(reversal(&v), cv(&[1.0, 4.0, 3.0, 2.0]));
        assert_eq!(reversal(&reversal(&v)), v);
        let e1 = basis_vec(5, 0);
        assert_eq!(reversal(&e1), e1);
    }

    #[test]
    fn circ_of_e1_is_identity() {
        let m = circ(&basis_vec(3, 0)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(m[(i, j)].re, want, epsilon = 0.0);
                assert_abs_diff_eq!(m[(i, j)].im, 0.0, epsilon = 0.0);
            }
        }
    }

    #[test]
    fn circ_of_ones_is_all_ones() {
        let m = circ(&cv(&[1.0, 1.0, 1.0])).unwrap();
        assert!(m.iter().all(|z| (z - c(1.0, 0.0)).norm() == 0.0));
    }

    #[test]
    fn circ_eigenvalues_via_dft() {
        // Eigenvalues of circ(v) are sqrt(d) * F_d^* v; checked as a set for
        // v = (2,1,0,1), expected {4, 2, 0, 2}.
        let v = cv(&[2.0, 1.0, 0.0, 1.0]);
        let plan = DftPlan::new(4).unwrap();
        let mut eig: Vec<f64> = plan
            .adjoint(&v)
            .unwrap()
            .iter()
            .map(|z| z.re * 2.0)
            .collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [0.0, 2.0, 2.0, 4.0];
        for (e, w) in eig.iter().zip(want.iter()) {
            assert_abs_diff_eq!(e, w, epsilon = 1e-12);
        }
        // and the similarity F diag(sqrt(d) F^* v) F^* reproduces circ(v)
        let f = dft_matrix(4);
        let lam = plan.adjoint(&v).unwrap();
        let mut dg = Array2::<C64>::zeros((4, 4));
        for i in 0..4 {
            dg[(i, i)] = lam[i] * 2.0;
        }
        let mut fh = Array2::<C64>::zeros((4, 4));
        for i in 0..4 {
            for j in 0..4 {
                fh[(i, j)] = f[(j, i)].conj();
            }
        }
        let rec = f.dot(&dg).dot(&fh);
        let cm = circ(&v).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((rec[(i, j)] - cm[(i, j)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn circ_block_stride_one_matches_circ() {
        let v = cv(&[1.0, 2.0, 3.0]);
        let m = mat_of(&v, 3, 1).unwrap();
        let a = circ_block(&m, 1).unwrap();
        let b = circ(&v).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn circ_block_divisibility_guard() {
        let m = Array2::<C64>::zeros((5, 2));
        assert!(circ_block(&m, 2).is_err());
    }

    #[test]
    fn block_transpose_single_block_is_adjoint() {
        let mut m = Array2::<C64>::zeros((2, 3));
        for i in 0..2 {
            for j in 0..3 {
                m[(i, j)] = c((i + 1) as f64, (j + 1) as f64);
            }
        }
        let t = block_transpose(&m, 2).unwrap();
        assert_eq!(t.dim(), (3, 2));
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(t[(j, i)], m[(i, j)].conj());
            }
        }
    }

    #[test]
    fn block_transpose_roundtrip() {
        // block_transpose(block_transpose(V, N), m) = V for V in C^{lN x m}
        let (l, n, m) = (3, 2, 3);
        let v = Array2::from_shape_fn((l * n, m), |(i, j)| c((3 * i + j) as f64, (i * j) as f64));
        let t = block_transpose(&v, n).unwrap();
        let back = block_transpose(&t, m).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn block_perm_identity_and_swap() {
        let v = cv(&[1.0, 2.0, 3.0, 4.0]);
        let id = block_perm(&[0, 1], &[2, 2], &v).unwrap();
        assert_eq!(id, v);
        let sw = block_perm(&[1, 0], &[2, 2], &v).unwrap();
        assert_eq!(sw, cv(&[3.0, 4.0, 1.0, 2.0]));
    }

    #[test]
    fn kron_vec_identity_cases() {
        let b = Array2::from_shape_fn((2, 3), |(i, j)| c((i + 1) as f64, j as f64));
        let eye2 = Array2::from_shape_fn((2, 2), |(i, j)| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let eye3 = Array2::from_shape_fn((3, 3), |(i, j)| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert_eq!(kron_vec(&eye2, &b, &eye3).unwrap(), vec_of(&b));
    }

    #[test]
    fn vec_of_outer_product_is_kron() {
        // vec(a b*) = conj(b) (x) a
        let a = vec![c(1.0, 2.0), c(-0.5, 0.25)];
        let b = vec![c(0.5, -1.0), c(2.0, 0.5)];
        let mut outer = Array2::zeros((2, 2));
        for i in 0..2 {
            for j in 0..2 {
                outer[(i, j)] = a[i] * b[j].conj();
            }
        }
        let lhs = vec_of(&outer);
        let bbar = mat_of(&[b[0].conj(), b[1].conj()], 2, 1).unwrap();
        let amat = mat_of(&a, 2, 1).unwrap();
        let rhs = vec_of(&kron(&bbar, &amat));
        assert!(max_abs(&sub(&lhs, &rhs)) < 1e-15);
    }

    #[test]
    fn dft_roundtrip_and_prime_length() {
        for d in [4usize, 7, 12, 13] {
            let plan = DftPlan::new(d).unwrap();
            let v: Vec<C64> = (0..d).map(|i| c((i as f64).sin(), (i as f64).cos())).collect();
            let w = plan.adjoint(&plan.forward(&v).unwrap()).unwrap();
            let err = max_abs(&sub(&w, &v));
            let scale = max_abs(&v);
            assert!(err <= 1e-12 * scale, "roundtrip error {err} at d={d}");
        }
    }

    #[test]
    fn dft_matrix_columns_match_plan() {
        let d = 5;
        let f = dft_matrix(d);
        let plan = DftPlan::new(d).unwrap();
        for j in 0..d {
            let fj = plan.forward(&basis_vec(d, j)).unwrap();
            for k in 0..d {
                assert!((f[(k, j)] - fj[k]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn shift_wraps_cyclically() {
        let v = cv(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(shift(&v, 1), cv(&[4.0, 1.0, 2.0, 3.0]));
        assert_eq!(shift(&v, -1), cv(&[2.0, 3.0, 4.0, 1.0]));
        assert_eq!(shift(&shift(&v, 3), -3), v);
    }
}
