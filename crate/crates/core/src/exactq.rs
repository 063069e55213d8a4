//! Exact rational linear algebra.
//!
//! Everything downstream (cohomology, truncations, the comparison maps of the
//! intersection-space model) reduces to a handful of primitives over `ℚ`:
//! kernels, images, solves, basis complements and coordinates in quotients.
//! All of them are implemented on top of a single deterministic reduced row
//! echelon form with a fixed pivot rule — leftmost column first, then the
//! smallest row index — so every basis produced by this module is reproducible
//! bit for bit. There is no floating point and no tolerance anywhere.
//!
//! Matrices are stored column-major with sparse columns. The elimination is
//! ordinary normalized rational elimination; entries are `BigRational`, so
//! intermediate growth costs time, never correctness. For the matrix sizes
//! this crate works with (thousands of simplices at most) cubic elimination
//! over `ℚ` is entirely adequate.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};
use thiserror::Error;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (an invariant `BigRational` maintains itself).
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// `n/d` as a rational (`d != 0`).
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Render as `"num/den"` (denominator always present, always positive).
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `"num/den"` or a plain integer string.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: num::BigInt = n.trim().parse().ok()?;
        let d: num::BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: num::BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("columns of the subspace basis are linearly dependent")]
    DependentColumns,
    #[error("vector is not in the span of the given vectors and subspace")]
    NotInSpan,
    #[error("linear system has no solution")]
    NoSolution,
}

/// Sparse column-major matrix over `ℚ`.
///
/// Columns double as vectors throughout the crate: a basis of a subspace of
/// `ℚ^rows` is simply a matrix whose columns are the basis vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    /// `data[j]` maps row index to a nonzero entry. Zero entries are never
    /// stored, which makes `PartialEq` structural equality.
    data: Vec<BTreeMap<usize, Rat>>,
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let e = self.get(i, j);
                    if e.is_zero() {
                        "0".into()
                    } else if e.denom().is_one() {
                        format!("{}", e.numer())
                    } else {
                        format!("{}/{}", e.numer(), e.denom())
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![BTreeMap::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMat::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty_shape(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[c].get(&r).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[c].remove(&r);
        } else {
            self.data[c].insert(r, v);
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, Rat)]) -> Self {
        let mut m = SparseMat::zeros(rows, cols);
        for (r, c, v) in entries {
            assert!(m.get(*r, *c).is_zero(), "duplicate entry at ({r},{c})");
            m.set(*r, *c, v.clone());
        }
        m
    }

    pub fn from_dense_i64(rows: &[&[i64]]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMat::zeros(nr, nc);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, rat(*v));
            }
        }
        m
    }

    /// Column `j` as a dense vector.
    pub fn col(&self, j: usize) -> Vec<Rat> {
        assert!(j < self.cols);
        let mut v = vec![Rat::zero(); self.rows];
        for (r, x) in &self.data[j] {
            v[*r] = x.clone();
        }
        v
    }

    /// Single-column matrix from a dense vector.
    pub fn from_col(v: &[Rat]) -> Self {
        let mut m = SparseMat::zeros(v.len(), 1);
        for (i, x) in v.iter().enumerate() {
            m.set(i, 0, x.clone());
        }
        m
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = SparseMat::zeros(self.rows, idx.len());
        for (out, j) in idx.iter().enumerate() {
            assert!(*j < self.cols);
            m.data[out] = self.data[*j].clone();
        }
        m
    }

    /// Keep only rows `lo..hi` (a contiguous band), reindexed from zero.
    pub fn select_row_band(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.rows);
        let mut m = SparseMat::zeros(hi - lo, self.cols);
        for j in 0..self.cols {
            for (r, x) in &self.data[j] {
                if *r >= lo && *r < hi {
                    m.data[j].insert(*r - lo, x.clone());
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = SparseMat::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for (r, x) in &self.data[j] {
                m.data[*r].insert(j, x.clone());
            }
        }
        m
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return SparseMat::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for col in &mut m.data {
            for x in col.values_mut() {
                *x *= s;
            }
        }
        m
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for j in 0..self.cols {
            for (r, x) in &other.data[j] {
                let cur = m.get(*r, j) + x;
                m.set(*r, j, cur);
            }
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "mul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut m = SparseMat::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, y) in &other.data[j] {
                for (r, x) in &self.data[*k] {
                    let e = acc.entry(*r).or_insert_with(Rat::zero);
                    *e += x * y;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            m.data[j] = acc;
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Rat::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, y) in &self.data[j] {
                out[*r] += y * x;
            }
        }
        out
    }

    pub fn hstack(parts: &[&SparseMat]) -> Self {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = SparseMat::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for j in 0..p.cols {
                m.data[off + j] = p.data[j].clone();
            }
            off += p.cols;
        }
        m
    }

    pub fn vstack(parts: &[&SparseMat]) -> Self {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = SparseMat::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack col mismatch");
            for j in 0..p.cols {
                for (r, x) in &p.data[j] {
                    m.data[j].insert(off + r, x.clone());
                }
            }
            off += p.rows;
        }
        m
    }

    /// Block matrix from a grid of blocks; every row of blocks must agree on
    /// heights and every column of blocks on widths.
    pub fn from_blocks(grid: &[Vec<&SparseMat>]) -> Self {
        let rows: Vec<SparseMat> = grid
            .iter()
            .map(|r| {
                let refs: Vec<&SparseMat> = r.to_vec();
                SparseMat::hstack(&refs)
            })
            .collect();
        let refs: Vec<&SparseMat> = rows.iter().collect();
        SparseMat::vstack(&refs)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    // ---- elimination-backed queries -------------------------------------

    fn rref(&self) -> Rref {
        rref_of(self)
    }

    /// Rank over `ℚ`.
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of the null space `{x : Mx = 0}`, one column per free
    /// column of the reduced echelon form, ordered by free-column index.
    pub fn kernel_basis(&self) -> SparseMat {
        let rr = self.rref();
        let pivot_cols: Vec<usize> = rr.pivots.iter().map(|p| p.col).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out = SparseMat::zeros(self.cols, free.len());
        for (j, f) in free.iter().enumerate() {
            out.set(*f, j, Rat::one());
            for p in &rr.pivots {
                let coeff = rr.rows[p.row].get(f).cloned().unwrap_or_else(Rat::zero);
                if !coeff.is_zero() {
                    out.set(p.col, j, -coeff);
                }
            }
        }
        // Scale each basis vector to primitive integer form (positive factor,
        // same span): downstream eliminations stay over small integers.
        for col in out.data.iter_mut() {
            let mut den = BigInt::one();
            for x in col.values() {
                den = den.lcm(x.denom());
            }
            let mut num = BigInt::zero();
            for x in col.values() {
                num = num.gcd(&(x.numer() * (&den / x.denom())));
            }
            if den.is_one() && (num.is_one() || num.is_zero()) {
                continue;
            }
            let scale = Rat::new(den, num);
            for x in col.values_mut() {
                *x = &*x * &scale;
            }
        }
        out
    }

    /// Indices of the pivot columns of the reduced echelon form, ascending.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots.iter().map(|p| p.col).collect()
    }

    /// Basis of the column span: the original columns at the pivot positions
    /// of the echelon form (leftmost-pivot rule, so the selection is the
    /// lexicographically earliest independent subset of columns).
    pub fn image_basis(&self) -> SparseMat {
        let rr = self.rref();
        let idx: Vec<usize> = rr.pivots.iter().map(|p| p.col).collect();
        self.select_cols(&idx)
    }

    /// One solution of `Mx = b` (free variables set to zero — the "pivot
    /// solution"), or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let rhs = SparseMat::from_col(b);
        let sol = self.solve_many(&rhs)?;
        Some(sol.col(0))
    }

    /// Is this exactly the identity matrix?
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(j, col)| {
                col.len() == 1 && col.get(&j).map_or(false, |x| x.is_one())
            })
    }

    /// Simultaneous pivot solutions of `MX = B`, column by column.
    pub fn solve_many(&self, b: &SparseMat) -> Option<SparseMat> {
        assert_eq!(self.rows, b.rows, "solve_many shape mismatch");
        if self.is_identity() {
            return Some(b.clone());
        }
        let aug = SparseMat::hstack(&[self, b]);
        let rr = rref_of(&aug);
        if rr.pivots.iter().any(|p| p.col >= self.cols) {
            return None;
        }
        let mut x = SparseMat::zeros(self.cols, b.cols);
        for p in &rr.pivots {
            for j in 0..b.cols {
                let v = rr.rows[p.row]
                    .get(&(self.cols + j))
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                if !v.is_zero() {
                    x.set(p.col, j, v);
                }
            }
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<SparseMat> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve_many(&SparseMat::identity(self.rows))?;
        // solve_many found *a* preimage for each basis vector; for square
        // matrices a full solve exists only if the matrix has full rank.
        if self.rank() < self.rows {
            return None;
        }
        Some(inv)
    }
}

struct Pivot {
    row: usize,
    col: usize,
}

struct Rref {
    /// Fully reduced rows, indexed by the original row index.
    rows: Vec<BTreeMap<usize, Rat>>,
    /// Pivots in ascending column order. Pivot rule: leftmost column first,
    /// then the smallest available row index.
    pivots: Vec<Pivot>,
}

/// Scale a row in place to its primitive integer form: clear denominators,
/// divide out the content (gcd of numerators). The scale factor is positive,
/// so the row spans the same ray. No-op on zero rows.
fn make_row_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &g;
        }
    }
}

fn rref_of(m: &SparseMat) -> Rref {
    // Dense integer row vectors: elimination touches most entries anyway, and
    // flat indexing beats tree maps by a wide margin on the hot path. Rows are
    // kept as primitive integer vectors throughout the elimination (pivots are
    // normalized to 1 only at the very end); this caps coefficient growth far
    // below what per-step rational normalization produces.
    let mut dense: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m.cols]; m.rows];
    {
        // Clear denominators row by row (positive factor: span unchanged).
        let mut den_lcm: Vec<BigInt> = vec![BigInt::one(); m.rows];
        for col in &m.data {
            for (r, x) in col {
                den_lcm[*r] = den_lcm[*r].lcm(x.denom());
            }
        }
        for j in 0..m.cols {
            for (r, x) in &m.data[j] {
                dense[*r][j] = x.numer() * (&den_lcm[*r] / x.denom());
            }
        }
        for row in dense.iter_mut() {
            make_row_primitive(row);
        }
    }
    let mut used = vec![false; m.rows];
    let mut pivots = Vec::new();
    for c in 0..m.cols {
        // Pivot on the sparsest eligible row (smallest index breaks ties):
        // the reduced echelon form is canonical, so the row choice only
        // affects fill-in and coefficient growth, never the result.
        let pr = (0..m.rows)
            .filter(|&r| !used[r] && !dense[r][c].is_zero())
            .min_by_key(|&r| {
                let weight = dense[r].iter().filter(|x| !x.is_zero()).count();
                (weight, r)
            });
        let Some(pr) = pr else { continue };
        // Eliminate column c from every other row (full reduction) by
        // cross-multiplication: row ← (p/g)·row − (f/g)·prow with
        // g = gcd(p, f), then strip the content. The pivot row can carry
        // nonzero entries in earlier free columns, so the subtraction sweeps
        // every column where either row is nonzero.
        let prow = std::mem::take(&mut dense[pr]);
        let p = prow[c].clone();
        for r in 0..m.rows {
            if r == pr || dense[r][c].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut dense[r][c], BigInt::zero());
            let g = p.gcd(&f);
            let (ps, fs) = (&p / &g, &f / &g);
            let scale_needed = !ps.is_one();
            let row = &mut dense[r];
            for (j, pj) in prow.iter().enumerate() {
                if j == c {
                    continue;
                }
                if pj.is_zero() {
                    if scale_needed && !row[j].is_zero() {
                        row[j] = &row[j] * &ps;
                    }
                } else if scale_needed {
                    row[j] = &row[j] * &ps - &fs * pj;
                } else {
                    row[j] = &row[j] - &fs * pj;
                }
            }
            make_row_primitive(row);
        }
        dense[pr] = prow;
        used[pr] = true;
        pivots.push(Pivot { row: pr, col: c });
    }
    // Normalize pivot rows (pivot entry 1) while converting back to rationals.
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    for p in &pivots {
        pivot_of_row[p.row] = Some(p.col);
    }
    let rows = dense
        .into_iter()
        .enumerate()
        .map(|(r, row)| {
            let div = pivot_of_row[r]
                .map(|c| row[c].clone())
                .unwrap_or_else(BigInt::one);
            row.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, Rat::new(x, div.clone())))
                .collect::<BTreeMap<usize, Rat>>()
        })
        .collect();
    Rref { rows, pivots }
}

/// Extend an independent set of columns `sub` (a basis of a subspace of
/// `ℚ^ambient_dim`) to a basis of the whole space by standard basis vectors,
/// greedily in ascending index order (leftmost-pivot rule). Returns only the
/// added vectors, as columns.
///
/// Fails with [`LinAlgError::DependentColumns`] if `sub` is not independent.
pub fn complement_in(sub: &SparseMat, ambient_dim: usize) -> Result<SparseMat, LinAlgError> {
    let order: Vec<usize> = (0..ambient_dim).collect();
    complement_in_with_order(sub, ambient_dim, &order)
}

/// Same as [`complement_in`], but the standard basis vectors are tried in the
/// given order. Used by the alternative-splitting mode: a seeded permutation
/// selects a different (equally valid) complement.
pub fn complement_in_with_order(
    sub: &SparseMat,
    ambient_dim: usize,
    order: &[usize],
) -> Result<SparseMat, LinAlgError> {
    if sub.rows() != ambient_dim {
        return Err(LinAlgError::DimensionMismatch(format!(
            "subspace lives in dim {}, ambient is {}",
            sub.rows(),
            ambient_dim
        )));
    }
    assert_eq!(order.len(), ambient_dim, "order must list every index once");
    let mut perm = SparseMat::zeros(ambient_dim, ambient_dim);
    for (j, i) in order.iter().enumerate() {
        perm.set(*i, j, Rat::one());
    }
    let aug = SparseMat::hstack(&[sub, &perm]);
    let rr = rref_of(&aug);
    let sub_pivots = rr.pivots.iter().filter(|p| p.col < sub.cols()).count();
    if sub_pivots < sub.cols() {
        return Err(LinAlgError::DependentColumns);
    }
    let picked: Vec<usize> = rr
        .pivots
        .iter()
        .filter(|p| p.col >= sub.cols())
        .map(|p| order[p.col - sub.cols()])
        .collect();
    let mut out = SparseMat::zeros(ambient_dim, picked.len());
    for (j, i) in picked.iter().enumerate() {
        out.set(*i, j, Rat::one());
    }
    Ok(out)
}

/// Coordinates of `v` with respect to `vectors`, working modulo the subspace
/// spanned by `sub`: finds `c` with `v ≡ Σ cᵢ·vectorsᵢ (mod span sub)`.
///
/// The caller guarantees the `vectors` are independent modulo `sub`, which
/// makes the coordinates unique. Errors if `v` is not in the combined span.
pub fn coordinates_in_quotient(
    vectors: &SparseMat,
    sub: &SparseMat,
    v: &[Rat],
) -> Result<Vec<Rat>, LinAlgError> {
    if vectors.rows() != sub.rows() || vectors.rows() != v.len() {
        return Err(LinAlgError::DimensionMismatch(format!(
            "vectors in dim {}, sub in dim {}, v in dim {}",
            vectors.rows(),
            sub.rows(),
            v.len()
        )));
    }
    let aug = SparseMat::hstack(&[vectors, sub]);
    let sol = aug.solve(v).ok_or(LinAlgError::NotInSpan)?;
    Ok(sol[..vectors.cols()].to_vec())
}

/// Batched [`coordinates_in_quotient`]: one elimination for all columns of
/// `vs` at once. Returns the coordinate matrix (`vectors.cols()` × `vs.cols()`).
pub fn coordinates_in_quotient_many(
    vectors: &SparseMat,
    sub: &SparseMat,
    vs: &SparseMat,
) -> Result<SparseMat, LinAlgError> {
    if vectors.rows() != sub.rows() || vectors.rows() != vs.rows() {
        return Err(LinAlgError::DimensionMismatch(format!(
            "vectors in dim {}, sub in dim {}, vs in dim {}",
            vectors.rows(),
            sub.rows(),
            vs.rows()
        )));
    }
    let aug = SparseMat::hstack(&[vectors, sub]);
    let sol = aug.solve_many(vs).ok_or(LinAlgError::NotInSpan)?;
    Ok(sol.select_row_band(0, vectors.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_sum_functional() {
        // ker [1 1] = span{(1, -1)}
        let m = SparseMat::from_dense_i64(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // canonical form: free column is the second one
        assert_eq!(k.get(0, 0), rat(-1));
        assert_eq!(k.get(1, 0), rat(1));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = SparseMat::identity(4);
        assert_eq!(m.kernel_basis().cols(), 0);
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn kernel_of_triangle_boundary() {
        // ∂₁ of the triangle complex: edges [01],[02],[12] over vertices 0,1,2.
        let d1 = SparseMat::from_dense_i64(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        let k = d1.kernel_basis();
        assert_eq!(k.cols(), 1, "one independent 1-cycle");
        assert!(d1.mul(&k).is_zero());
    }

    #[test]
    fn image_basis_cases() {
        let z = SparseMat::zeros(3, 2);
        assert_eq!(z.image_basis().cols(), 0);

        let m = SparseMat::from_dense_i64(&[&[1, 1], &[0, 0]]);
        let im = m.image_basis();
        assert_eq!(im.cols(), 1);
        assert_eq!(im.get(0, 0), rat(1)); // first column (leftmost pivot)
    }

    /// ∂₂ of the solid tetrahedron [0,1,2,3]: four faces, rank 3.
    #[test]
    fn image_basis_tetrahedron_faces() {
        let d2 = tetra_d2();
        assert_eq!(d2.rank(), 3);
        let im = d2.image_basis();
        assert_eq!(im.cols(), 3);
        // leftmost-pivot rule: the three selected columns are the first three
        for j in 0..3 {
            assert_eq!(im.data[j], d2.data[j]);
        }
    }

    fn tetra_d2() -> SparseMat {
        // edges of [0,1,2,3] in lex order: 01,02,03,12,13,23 (rows)
        // faces in lex order: 012,013,023,123 (cols)
        SparseMat::from_dense_i64(&[
            &[1, 1, 0, 0],
            &[-1, 0, 1, 0],
            &[0, -1, -1, 0],
            &[1, 0, 0, 1],
            &[0, 1, 0, -1],
            &[0, 0, 1, 1],
        ])
    }

    #[test]
    fn solve_cases() {
        let id = SparseMat::identity(2);
        let b = vec![rat(3), rat(5)];
        assert_eq!(id.solve(&b).unwrap(), b);

        // underdetermined: pivot solution puts free variables to zero
        let m = SparseMat::from_dense_i64(&[&[1, 1]]);
        assert_eq!(m.solve(&[rat(2)]).unwrap(), vec![rat(2), rat(0)]);

        // inconsistent
        let z = SparseMat::zeros(1, 1);
        assert!(z.solve(&[rat(1)]).is_none());
    }

    #[test]
    fn complement_cases() {
        // span{(1,0)} in dim 2 -> (0,1)
        let sub = SparseMat::from_dense_i64(&[&[1], &[0]]);
        let c = complement_in(&sub, 2).unwrap();
        assert_eq!(c.cols(), 1);
        assert_eq!(c.get(1, 0), rat(1));

        // empty subspace in dim 3 -> identity
        let empty = SparseMat::zeros(3, 0);
        let c = complement_in(&empty, 3).unwrap();
        assert_eq!(c, SparseMat::identity(3));

        // dependent columns rejected
        let dep = SparseMat::from_dense_i64(&[&[1, 2], &[1, 2]]);
        assert_eq!(complement_in(&dep, 2), Err(LinAlgError::DependentColumns));
    }

    #[test]
    fn complement_of_tetra_kernel() {
        // sub = ker ∂₂ of the boundary-of-tetrahedron 2-chains (dim 1) inside
        // the 4 faces -> 3 standard basis columns complete it.
        let d2 = tetra_d2();
        let ker = d2.kernel_basis();
        assert_eq!(ker.cols(), 1);
        let c = complement_in(&ker, 4).unwrap();
        assert_eq!(c.cols(), 3);
        for j in 0..3 {
            assert_eq!(c.data[j].len(), 1, "standard basis column");
        }
        // together they span: [ker | c] has rank 4
        let full = SparseMat::hstack(&[&ker, &c]);
        assert_eq!(full.rank(), 4);
    }

    #[test]
    fn complement_with_order_changes_selection() {
        let sub = SparseMat::from_dense_i64(&[&[1], &[1], &[0]]);
        let a = complement_in(&sub, 3).unwrap();
        let b = complement_in_with_order(&sub, 3, &[2, 1, 0]).unwrap();
        assert_eq!(a.cols(), 2);
        assert_eq!(b.cols(), 2);
        assert_ne!(a, b);
        for m in [&a, &b] {
            assert_eq!(SparseMat::hstack(&[&sub, m]).rank(), 3);
        }
    }

    #[test]
    fn quotient_coordinates_cases() {
        // identity vectors, empty sub: plain coordinates
        let vectors = SparseMat::identity(2);
        let sub = SparseMat::zeros(2, 0);
        let c = coordinates_in_quotient(&vectors, &sub, &[rat(2), rat(-7)]).unwrap();
        assert_eq!(c, vec![rat(2), rat(-7)]);

        // vector inside sub: all coordinates zero
        let vectors = SparseMat::from_dense_i64(&[&[1], &[0]]);
        let sub = SparseMat::from_dense_i64(&[&[0], &[1]]);
        let c = coordinates_in_quotient(&vectors, &sub, &[rat(0), rat(5)]).unwrap();
        assert_eq!(c, vec![rat(0)]);

        // not in span
        let vectors = SparseMat::from_dense_i64(&[&[1], &[0], &[0]]);
        let sub = SparseMat::zeros(3, 0);
        assert_eq!(
            coordinates_in_quotient(&vectors, &sub, &[rat(0), rat(0), rat(1)]),
            Err(LinAlgError::NotInSpan)
        );
    }

    #[test]
    fn rational_string_roundtrip() {
        let x = ratio(-6, 4);
        assert_eq!(rat_to_string(&x), "-3/2");
        assert_eq!(rat_from_str("-3/2").unwrap(), x);
        assert_eq!(rat_from_str("7").unwrap(), rat(7));
        assert!(rat_from_str("1/0").is_none());
    }

    // ---- property tests --------------------------------------------------

    fn arb_mat(max_dim: usize) -> impl Strategy<Value = SparseMat> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c).prop_map(move |vals| {
                let mut m = SparseMat::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, rat(vals[i * c + j]));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in arb_mat(6)) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols()); // kernel basis independent
        }

        #[test]
        fn solve_roundtrip(m in arb_mat(6), x in proptest::collection::vec(-3i64..=3, 6)) {
            let x: Vec<Rat> = x[..m.cols()].iter().map(|v| rat(*v)).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).expect("consistent system must solve");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }

        #[test]
        fn image_basis_spans(m in arb_mat(6)) {
            let im = m.image_basis();
            prop_assert_eq!(im.cols(), m.rank());
            // every original column solves against the image basis
            for j in 0..m.cols() {
                prop_assert!(im.solve(&m.col(j)).is_some());
            }
        }

        #[test]
        fn complement_completes(m in arb_mat(6)) {
            let im = m.image_basis();
            let c = complement_in(&im, m.rows()).unwrap();
            prop_assert_eq!(im.cols() + c.cols(), m.rows());
            prop_assert_eq!(SparseMat::hstack(&[&im, &c]).rank(), m.rows());
        }
    }
}
