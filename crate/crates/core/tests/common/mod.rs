//! Test-side oracles, deliberately independent of the library's linear
//! algebra: dense Gaussian elimination over `BigRational` written from
//! scratch, plus a long-exact-sequence rank oracle for the reduced
//! cohomology of the mapping cone of `g♯`.

#![allow(dead_code)]

use num::BigRational;
use num::Zero;

use intersection_space::complexes::CochainComplex;
use intersection_space::exactq::SparseMat;
use intersection_space::ispace::ISpaceModel;

pub type Q = BigRational;

pub fn to_dense(m: &SparseMat) -> Vec<Vec<Q>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

/// Rank by plain dense Gaussian elimination with first-nonzero pivoting.
pub fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pivot = (row..rows).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for j in col..cols {
            m[row][j] = &m[row][j] / &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..cols {
                    let sub = &factor * &m[row][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// Kernel basis (as columns) by back-substitution from a dense RREF.
pub fn dense_kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut work: Vec<Vec<Q>> = m.to_vec();
    let rows = work.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(row, p);
        let inv = work[row][col].clone();
        for j in 0..cols {
            work[row][j] = &work[row][j] / &inv;
        }
        for i in 0..rows {
            if i != row && !work[i][col].is_zero() {
                let factor = work[i][col].clone();
                for j in 0..cols {
                    let sub = &factor * &work[row][j];
                    work[i][j] = &work[i][j] - &sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::from_integer(1.into());
        for &(r, c) in &pivots {
            v[c] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

fn hcat(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect()
}

fn matvec_cols(m: &[Vec<Q>], cols: &[Vec<Q>]) -> Vec<Vec<Q>> {
    // m is rows×n dense; cols is a list of n-vectors; result rows×len(cols)
    let rows = m.len();
    let mut out = vec![vec![Q::zero(); cols.len()]; rows];
    for (j, v) in cols.iter().enumerate() {
        for i in 0..rows {
            let mut acc = Q::zero();
            for (x, e) in m[i].iter().zip(v) {
                if !x.is_zero() && !e.is_zero() {
                    acc += x * e;
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Betti numbers of a cochain complex by dense rank computations:
/// `b_r = dim_r − rank d_r − rank d_{r−1}`.
pub fn oracle_betti(c: &CochainComplex) -> Vec<usize> {
    let top = c.top();
    let ranks: Vec<usize> = (0..top)
        .map(|r| dense_rank(to_dense(&c.d_block(r as isize))))
        .collect();
    (0..=top)
        .map(|r| {
            let rank_out = if r < top { ranks[r] } else { 0 };
            let rank_in = if r > 0 { ranks[r - 1] } else { 0 };
            c.dim(r as isize) - rank_out - rank_in
        })
        .collect()
}

/// Long-exact-sequence oracle for the reduced cohomology of the mapping
/// cone of `g♯ : C^•(X̄) → C^•(t)`:
/// `b̃_r = dim ker(g*_r) + dim coker(g*_{r−1})`, where the rank of the map
/// `g*_r` induced on cohomology is
/// `rank [ d_t^{r−1} | g♯·(cocycles of X̄) ] − rank d_t^{r−1}`.
pub fn oracle_cone_betti(model: &ISpaceModel) -> Vec<usize> {
    let x = &model.x_cochain;
    let t = &model.trunc.t_cochain;
    let n = model.pair.n;

    let b_x = oracle_betti(x);
    let b_t = oracle_betti(t);
    let get_bx = |r: usize| b_x.get(r).copied().unwrap_or(0);
    let get_bt = |r: usize| b_t.get(r).copied().unwrap_or(0);

    let mut rank_gstar = vec![0usize; n + 2];
    for r in 0..=t.top() {
        let z_x = dense_kernel(&to_dense(&x.d_block(r as isize)), x.dim(r as isize));
        let g_r = to_dense(&model.g_sharp.block(r as isize));
        let g_z = matvec_cols(&g_r, &z_x);
        let b_t_mat = to_dense(&t.d_block(r as isize - 1));
        let rank_b = dense_rank(b_t_mat.clone());
        let rank_both = dense_rank(hcat(&b_t_mat, &g_z));
        rank_gstar[r] = rank_both - rank_b;
    }

    (0..=n)
        .map(|r| {
            let ker = get_bx(r) - rank_gstar[r];
            let coker = if r == 0 {
                0
            } else {
                get_bt(r - 1) - rank_gstar[r - 1]
            };
            ker + coker
        })
        .collect()
}
