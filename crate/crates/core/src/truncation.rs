//! Chain-level Moore truncation `t_{<k}L` and metric cotruncation
//! `τ_{≥k}C^•(L)` / lower truncation `τ_{<k}C^•(L)` of the boundary.
//!
//! Moore truncation happens on chains: pick a complement `Y_k` of
//! `ker ∂_k` inside `C_k(L)` (so `∂|_{Y_k}` is injective), keep everything
//! below `k`, keep `Y_k` in degree `k`, drop everything above. The induced
//! cochain map `f♯ : C^•(L) → C^•(t_{<k}L)` is the identity below `k`, the
//! `Y_k`-coordinate projection in degree `k` and zero above. For `k = 1` the
//! truncation is the base-point complex: a single vertex (the
//! lexicographically first vertex of `L`) with `f♯` the evaluation at it.
//!
//! Cotruncation happens on cochains with respect to a diagonal positive
//! inner product (identity by default): `τ_{≥k}` is zero below `k`, the
//! kernel of the adjoint `d^* = d^{k−1,∗}` in degree `k`, and everything
//! above. Its orthogonal complement `τ_{<k}` is again a subcomplex (the
//! complement of `ker d^*` in degree `k` is exactly `im d^{k−1}`), so the
//! orthogonal projection `C^•(L) → τ_{<k}` is a strict chain map and
//! `0 → τ_{≥k} → C^•(L) → τ_{<k} → 0` is degreewise exact.

use thiserror::Error;

use crate::complexes::{subcomplex_from_bases, CochainComplex, ComplexError, ComplexMap};
use crate::exactq::{complement_in_with_order, rat, LinAlgError, Rat, SparseMat};
use crate::rng::SplitMix64;

#[derive(Debug, Error)]
pub enum TruncationError {
    #[error("cutoff k = {0} out of range 1..={1}")]
    CutoffOutOfRange(usize, usize),
    #[error("boundary complex is empty; a base vertex is required for k = 1")]
    EmptyBoundary,
    #[error("inner product weights invalid: {0}")]
    BadWeights(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Moore truncation of the boundary together with the comparison map `f♯`.
#[derive(Debug, Clone)]
pub struct TruncationData {
    pub k: usize,
    /// Complement of `ker ∂_k`, as columns in `C_k(L)` (empty for `k = 1`).
    pub y_k: SparseMat,
    /// Cochain complex of `t_{<k}L`, degrees `0..=?` where the top degree
    /// is `k` (or `0` for the base-point complex).
    pub t_cochain: CochainComplex,
    /// `f♯ : C^•(L) → C^•(t_{<k}L)`.
    pub f_sharp: ComplexMap,
}

/// Recover the chain boundary matrices from a simplicial cochain complex
/// built with the `(dα)(a) = (−1)^{deg a} α(∂a)` convention:
/// `∂_{r+1} = (−1)^{r+1} (d^r)ᵀ`.
fn boundaries_of(cochain: &CochainComplex) -> Vec<SparseMat> {
    (0..cochain.top())
        .map(|r| {
            let t = cochain.d_block(r as isize).transpose();
            if r % 2 == 0 {
                t.neg()
            } else {
                t
            }
        })
        .collect()
}

/// Chain-level Moore truncation below `k` of the boundary `L`, presented by
/// its cochain complex. `order_seed`, when set, permutes the candidate order
/// used to complete `ker ∂_k` to a basis, producing an alternative (equally
/// valid) splitting `Y_k`.
pub fn moore_truncate(
    l_cochain: &CochainComplex,
    k: usize,
    order_seed: Option<u64>,
) -> Result<TruncationData, TruncationError> {
    let l_top = l_cochain.top();
    if k < 1 || k > l_top + 1 {
        return Err(TruncationError::CutoffOutOfRange(k, l_top + 1));
    }
    if l_cochain.dim(0) == 0 {
        return Err(TruncationError::EmptyBoundary);
    }

    if k == 1 {
        // base-point complex: evaluation at the lexicographically first
        // vertex of L, which is the first basis element of C^0(L)
        let t = CochainComplex::new(vec![1], vec![])?;
        let mut ev = SparseMat::zeros(1, l_cochain.dim(0));
        ev.set(0, 0, rat(1));
        let mut blocks = vec![ev];
        for r in 1..=l_top {
            blocks.push(SparseMat::zeros(0, l_cochain.dim(r as isize)));
        }
        let f_sharp = ComplexMap::strict(l_cochain.clone(), t.clone(), blocks)?;
        return Ok(TruncationData {
            k,
            y_k: SparseMat::zeros(l_cochain.dim(0), 0),
            t_cochain: t,
            f_sharp,
        });
    }

    let boundaries = boundaries_of(l_cochain);
    let dim_k = l_cochain.dim(k as isize);
    // ∂_k : C_k → C_{k−1}; above the top of L this is the zero map from 0
    let ker = if k <= l_top {
        boundaries[k - 1].kernel_basis()
    } else {
        SparseMat::zeros(dim_k, 0)
    };
    let order = match order_seed {
        None => (0..dim_k).collect::<Vec<_>>(),
        Some(s) => SplitMix64::new(s).permutation(dim_k),
    };
    let y_k = complement_in_with_order(&ker, dim_k, &order)?;

    // cochain complex of t_{<k}L: identical below k, Y_k-dual in degree k.
    // For k = l_top + 1 there is nothing to kill and t_{<k}L = L.
    let mut dims: Vec<usize> = (0..k).map(|r| l_cochain.dim(r as isize)).collect();
    let mut d = Vec::new();
    for r in 0..k.saturating_sub(1) {
        d.push(l_cochain.d_block(r as isize));
    }
    if k <= l_top {
        dims.push(y_k.cols());
        // d^{k−1}_t = Y_kᵀ · d^{k−1}_L (the signed transpose of ∂_k·Y_k)
        d.push(y_k.transpose().mul(&l_cochain.d_block(k as isize - 1)));
    }
    let t_cochain = CochainComplex::new(dims, d)?;

    let mut blocks = Vec::new();
    for r in 0..k.min(l_top + 1) {
        blocks.push(SparseMat::identity(l_cochain.dim(r as isize)));
    }
    if k <= l_top {
        blocks.push(y_k.transpose());
        for r in k + 1..=l_top {
            blocks.push(SparseMat::zeros(0, l_cochain.dim(r as isize)));
        }
    }
    let f_sharp = ComplexMap::strict(l_cochain.clone(), t_cochain.clone(), blocks)?;

    Ok(TruncationData {
        k,
        y_k,
        t_cochain,
        f_sharp,
    })
}

/// Metric cotruncation and its complementary lower truncation.
#[derive(Debug, Clone)]
pub struct CotruncationData {
    pub k: usize,
    /// Diagonal inner-product weights per degree of `L` (all positive).
    pub weights: Vec<Vec<Rat>>,
    /// `τ_{≥k} C^•(L)` in its own basis.
    pub tau_geq: CochainComplex,
    /// Inclusion `τ_{≥k} ↪ C^•(L)`.
    pub geq_inclusion: ComplexMap,
    /// `τ_{<k} C^•(L)` (the orthogonal complement subcomplex).
    pub tau_lt: CochainComplex,
    /// Inclusion `τ_{<k} ↪ C^•(L)`.
    pub lt_inclusion: ComplexMap,
    /// Orthogonal projection `C^•(L) → τ_{<k}` (a strict chain map).
    pub lt_projection: ComplexMap,
}

fn diagonal(weights: &[Rat]) -> SparseMat {
    let mut m = SparseMat::zeros(weights.len(), weights.len());
    for (i, w) in weights.iter().enumerate() {
        m.set(i, i, w.clone());
    }
    m
}

/// Identity weights for a boundary cochain complex.
pub fn identity_weights(l_cochain: &CochainComplex) -> Vec<Vec<Rat>> {
    (0..=l_cochain.top())
        .map(|r| vec![rat(1); l_cochain.dim(r as isize)])
        .collect()
}

/// Seeded strictly-positive weights, for the metric-independence checks.
pub fn random_weights(l_cochain: &CochainComplex, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = SplitMix64::new(seed ^ 0xDA7A_5EED);
    (0..=l_cochain.top())
        .map(|r| {
            (0..l_cochain.dim(r as isize))
                .map(|_| {
                    let num = 1 + rng.below(9) as i64;
                    let den = 1 + rng.below(9) as i64;
                    Rat::new(num.into(), den.into())
                })
                .collect()
        })
        .collect()
}

/// Cotruncation `τ_{≥k}` of the boundary cochain complex with respect to the
/// diagonal inner products `weights` (identity when `None`), together with
/// the complementary `τ_{<k}` and the strict projection onto it.
pub fn cotruncate(
    l_cochain: &CochainComplex,
    k: usize,
    weights: Option<Vec<Vec<Rat>>>,
) -> Result<CotruncationData, TruncationError> {
    let l_top = l_cochain.top();
    if k < 1 || k > l_top + 1 {
        return Err(TruncationError::CutoffOutOfRange(k, l_top + 1));
    }
    let weights = weights.unwrap_or_else(|| identity_weights(l_cochain));
    if weights.len() != l_top + 1 {
        return Err(TruncationError::BadWeights(format!(
            "{} weight vectors for {} degrees",
            weights.len(),
            l_top + 1
        )));
    }
    for (r, w) in weights.iter().enumerate() {
        if w.len() != l_cochain.dim(r as isize) {
            return Err(TruncationError::BadWeights(format!(
                "degree {r}: {} weights for dimension {}",
                w.len(),
                l_cochain.dim(r as isize)
            )));
        }
        if w.iter().any(|x| x <= &Rat::from_integer(0.into())) {
            return Err(TruncationError::BadWeights(format!(
                "degree {r}: weights must be strictly positive"
            )));
        }
    }

    // degree-k piece: ker d* where d* = W_{k−1}⁻¹ d^{k−1,T} W_k; the kernel
    // does not see the invertible left factor, so ker d* = ker(d^{k−1,T} W_k)
    let ker_dstar = if k <= l_top {
        let w_k = diagonal(&weights[k]);
        l_cochain
            .d_block(k as isize - 1)
            .transpose()
            .mul(&w_k)
            .kernel_basis()
    } else {
        SparseMat::zeros(0, 0)
    };

    let mut geq_bases = Vec::new();
    let mut lt_bases = Vec::new();
    for r in 0..=l_top {
        let dim = l_cochain.dim(r as isize);
        if r < k {
            geq_bases.push(SparseMat::zeros(dim, 0));
            lt_bases.push(SparseMat::identity(dim));
        } else if r == k {
            geq_bases.push(ker_dstar.clone());
            // W-orthogonal complement of ker d*: solutions of (ker)ᵀ W x = 0
            let w_k = diagonal(&weights[k]);
            let complement = ker_dstar.transpose().mul(&w_k).kernel_basis();
            lt_bases.push(complement);
        } else {
            geq_bases.push(SparseMat::identity(dim));
            lt_bases.push(SparseMat::zeros(dim, 0));
        }
    }

    let (tau_geq, geq_inclusion) = subcomplex_from_bases(l_cochain, geq_bases)?;
    let (tau_lt, lt_inclusion) = subcomplex_from_bases(l_cochain, lt_bases)?;

    // orthogonal projection onto τ_{<k}: coordinates in the combined basis
    let mut proj_blocks = Vec::new();
    for r in 0..=l_top {
        let r = r as isize;
        let both = SparseMat::hstack(&[&lt_inclusion.block(r), &geq_inclusion.block(r)]);
        let dim = l_cochain.dim(r);
        let sol = both
            .solve_many(&SparseMat::identity(dim))
            .ok_or_else(|| TruncationError::BadWeights(format!(
                "τ decomposition does not span degree {r}"
            )))?;
        proj_blocks.push(sol.select_row_band(0, tau_lt.dim(r)));
    }
    let lt_projection = ComplexMap::strict(l_cochain.clone(), tau_lt.clone(), proj_blocks)?;

    Ok(CotruncationData {
        k,
        weights,
        tau_geq,
        geq_inclusion,
        tau_lt,
        lt_inclusion,
        lt_projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{cohomology, verify_exact_sequence};
    use crate::simplicial::{ingest, SpaceDocument};

    fn circle_cochain() -> CochainComplex {
        // boundary of disk2 is the triangle circle
        let p = ingest(&SpaceDocument::auto("disk2", 2, vec![vec![0, 1, 2]])).unwrap();
        p.l_cochain_complex()
    }

    fn sphere2_cochain() -> CochainComplex {
        let p = ingest(&SpaceDocument::auto("disk3", 3, vec![vec![0, 1, 2, 3]])).unwrap();
        p.l_cochain_complex()
    }

    #[test]
    fn base_point_truncation() {
        let l = circle_cochain();
        let t = moore_truncate(&l, 1, None).unwrap();
        assert_eq!(t.t_cochain.dims(), &[1]);
        // f♯ evaluates at the first vertex and kills degree 1
        assert_eq!(t.f_sharp.block(0).get(0, 0), rat(1));
        assert_eq!(t.f_sharp.block(1).rows(), 0);
        let h = cohomology(&t.t_cochain);
        assert_eq!(h.betti_vec(), vec![1]);
    }

    #[test]
    fn sphere_truncation_spectra() {
        let l = sphere2_cochain(); // S², Betti (1,0,1)
        for k in 1..=3 {
            let t = moore_truncate(&l, k, None).unwrap();
            let h = cohomology(&t.t_cochain);
            let hl = cohomology(&l);
            for r in 0..=l.top() {
                let expected = if r < k { hl.betti(r as isize) } else { 0 };
                assert_eq!(
                    h.betti(r as isize),
                    expected,
                    "t_<{k} S² in degree {r}"
                );
            }
        }
    }

    #[test]
    fn truncation_kills_top_of_circle() {
        // t_<1 S¹ is a point; the generic k with k = l_top + 1 keeps all of L
        let l = circle_cochain();
        let t = moore_truncate(&l, 2, None).unwrap();
        let h = cohomology(&t.t_cochain);
        assert_eq!(h.betti_vec(), vec![1, 1], "t_<2 S¹ ≃ S¹");
        // there is no degree 2 in S¹, so the splitting is empty
        assert_eq!(t.y_k.cols(), 0);
        assert!(t.f_sharp.block(1).is_zero() == false);
    }

    #[test]
    fn seeded_splitting_is_still_a_complement() {
        let l = sphere2_cochain();
        let base = moore_truncate(&l, 2, None).unwrap();
        for seed in 1..=5u64 {
            let alt = moore_truncate(&l, 2, Some(seed)).unwrap();
            let h = cohomology(&alt.t_cochain);
            assert_eq!(h.betti_vec(), cohomology(&base.t_cochain).betti_vec());
        }
    }

    #[test]
    fn circle_cotruncation() {
        let l = circle_cochain();
        let c = cotruncate(&l, 1, None).unwrap();
        // degree-1 part of τ_{≥1} is ker d*, dim = dim C¹ − rank d⁰ = 3 − 2
        assert_eq!(c.tau_geq.dims(), &[0, 1]);
        let h = cohomology(&c.tau_geq);
        assert_eq!(h.betti_vec(), vec![0, 1]);
        // the SES is degreewise exact
        let rep = verify_exact_sequence(&[&c.geq_inclusion, &c.lt_projection]);
        assert!(rep.pass, "{:?}", rep.failures);
    }

    #[test]
    fn cotruncation_spectra_on_the_sphere() {
        let l = sphere2_cochain();
        let hl = cohomology(&l);
        for k in 1..=3 {
            let c = cotruncate(&l, k, None).unwrap();
            let hg = cohomology(&c.tau_geq);
            let hlt = cohomology(&c.tau_lt);
            for r in 0..=l.top() {
                let b = hl.betti(r as isize);
                assert_eq!(hg.betti(r as isize), if r >= k { b } else { 0 });
                assert_eq!(hlt.betti(r as isize), if r < k { b } else { 0 });
            }
            let rep = verify_exact_sequence(&[&c.geq_inclusion, &c.lt_projection]);
            assert!(rep.pass, "k={k}: {:?}", rep.failures);
        }
    }

    #[test]
    fn weighted_metric_changes_the_subspace_not_the_spectra() {
        let l = circle_cochain();
        let id = cotruncate(&l, 1, None).unwrap();
        let w = random_weights(&l, 77);
        let alt = cotruncate(&l, 1, Some(w)).unwrap();
        assert_eq!(
            cohomology(&id.tau_geq).betti_vec(),
            cohomology(&alt.tau_geq).betti_vec()
        );
        // different metric, generally a different subspace
        assert_eq!(alt.tau_geq.dims(), id.tau_geq.dims());
    }

    #[test]
    fn bad_weights_rejected() {
        let l = circle_cochain();
        let mut w = identity_weights(&l);
        w[1][0] = rat(0);
        assert!(matches!(
            cotruncate(&l, 1, Some(w)),
            Err(TruncationError::BadWeights(_))
        ));
        assert!(matches!(
            moore_truncate(&l, 0, None),
            Err(TruncationError::CutoffOutOfRange(0, _))
        ));
    }
}
