//! Cochain complexes over `ℚ` and the operations the intersection-space
//! model needs: cohomology with deterministic representatives, chain maps
//! (strict or commuting with `d` only up to a per-degree sign), induced maps
//! on cohomology, kernel subcomplexes, degreewise pullbacks with their
//! universal property, exactness checks for short exact sequences, and the
//! connecting homomorphism of a short exact sequence.
//!
//! All complexes are concentrated in degrees `0..=top`; a degree outside the
//! stored range has dimension zero. Differentials raise degree by one.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactq::{coordinates_in_quotient, coordinates_in_quotient_many, Rat, SparseMat};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("differential shapes are inconsistent: {0}")]
    BadShape(String),
    #[error("d∘d ≠ 0 starting in degree {0}")]
    NotAComplex(usize),
    #[error("map does not commute with the differentials in degree {0} (even up to sign)")]
    NotAChainMap(usize),
    #[error("basis columns in degree {0} are not independent")]
    DependentBasis(usize),
    #[error("subspace in degree {0} is not closed under the differential")]
    NotDStable(usize),
    #[error("source/target complexes do not match for {0}")]
    EndpointMismatch(String),
    #[error("no factorization through the pullback: {0}")]
    NoFactorization(String),
    #[error("cohomology computation failed: {0}")]
    Internal(String),
}

/// A bounded cochain complex `C^0 → C^1 → … → C^top`.
#[derive(Debug, Clone, PartialEq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    /// `d[r]` maps degree `r` to `r+1`; shaped `dims[r+1] × dims[r]`.
    d: Vec<SparseMat>,
}

impl CochainComplex {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(dims: Vec<usize>, d: Vec<SparseMat>) -> Result<Self, ComplexError> {
        assert!(!dims.is_empty());
        if d.len() + 1 != dims.len() {
            return Err(ComplexError::BadShape(format!(
                "{} dims need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                d.len()
            )));
        }
        for (r, m) in d.iter().enumerate() {
            if m.rows() != dims[r + 1] || m.cols() != dims[r] {
                return Err(ComplexError::BadShape(format!(
                    "d[{r}] is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[r + 1],
                    dims[r]
                )));
            }
        }
        let c = CochainComplex { dims, d };
        for r in 0..c.d.len().saturating_sub(1) {
            if !c.d[r + 1].mul(&c.d[r]).is_zero() {
                return Err(ComplexError::NotAComplex(r));
            }
        }
        Ok(c)
    }

    pub fn zero_complex() -> Self {
        CochainComplex {
            dims: vec![0],
            d: vec![],
        }
    }

    /// Highest stored degree.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, r: isize) -> usize {
        if r < 0 || r as usize >= self.dims.len() {
            0
        } else {
            self.dims[r as usize]
        }
    }

    /// Differential out of degree `r`, zero-shaped outside the stored range.
    pub fn d_block(&self, r: isize) -> SparseMat {
        if r >= 0 && (r as usize) < self.d.len() {
            self.d[r as usize].clone()
        } else {
            SparseMat::zeros(self.dim(r + 1), self.dim(r))
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Degree shift by one: `(shift C)^{r+1} = C^r`, with the *same*
    /// differential blocks (no sign). Maps out of a complex shifted this way
    /// may therefore only commute with `d` up to sign.
    pub fn shift_up(&self) -> CochainComplex {
        let mut dims = vec![0];
        dims.extend_from_slice(&self.dims);
        let mut d = vec![SparseMat::zeros(self.dims[0], 0)];
        d.extend(self.d.iter().cloned());
        CochainComplex { dims, d }
    }
}

/// A degreewise linear map between complexes.
///
/// `Strict` maps satisfy `d∘f = f∘d`; `UpToSign` maps satisfy
/// `d∘f_r = ε_r · f_{r+1}∘d` with the recorded signs `ε_r ∈ {±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignRule {
    Strict,
    UpToSign(Vec<i8>),
}

#[derive(Debug, Clone)]
pub struct ComplexMap {
    source: CochainComplex,
    target: CochainComplex,
    /// `blocks[r]` is shaped `target.dim(r) × source.dim(r)`, for
    /// `r = 0..=source.top()`.
    blocks: Vec<SparseMat>,
    sign_rule: SignRule,
}

impl ComplexMap {
    fn check_shapes(
        source: &CochainComplex,
        target: &CochainComplex,
        blocks: &[SparseMat],
    ) -> Result<(), ComplexError> {
        if blocks.len() != source.dims.len() {
            return Err(ComplexError::BadShape(format!(
                "{} blocks for {} source degrees",
                blocks.len(),
                source.dims.len()
            )));
        }
        for (r, b) in blocks.iter().enumerate() {
            if b.rows() != target.dim(r as isize) || b.cols() != source.dim(r as isize) {
                return Err(ComplexError::BadShape(format!(
                    "block {r} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(r as isize),
                    source.dim(r as isize)
                )));
            }
        }
        Ok(())
    }

    /// A map that commutes with the differentials on the nose.
    pub fn strict(
        source: CochainComplex,
        target: CochainComplex,
        blocks: Vec<SparseMat>,
    ) -> Result<Self, ComplexError> {
        Self::check_shapes(&source, &target, &blocks)?;
        let m = ComplexMap {
            source,
            target,
            blocks,
            sign_rule: SignRule::Strict,
        };
        for r in 0..m.blocks.len() {
            let r = r as isize;
            let lhs = m.target.d_block(r).mul(&m.block(r));
            let rhs = m.block(r + 1).mul(&m.source.d_block(r));
            if lhs != rhs {
                return Err(ComplexError::NotAChainMap(r as usize));
            }
        }
        Ok(m)
    }

    /// A map that commutes with the differentials up to a per-degree sign,
    /// inferred here. Where both sides vanish the sign defaults to `+1`.
    pub fn up_to_sign(
        source: CochainComplex,
        target: CochainComplex,
        blocks: Vec<SparseMat>,
    ) -> Result<Self, ComplexError> {
        Self::check_shapes(&source, &target, &blocks)?;
        let probe = ComplexMap {
            source,
            target,
            blocks,
            sign_rule: SignRule::Strict,
        };
        let mut signs = Vec::with_capacity(probe.blocks.len());
        for r in 0..probe.blocks.len() {
            let r = r as isize;
            let lhs = probe.target.d_block(r).mul(&probe.block(r));
            let rhs = probe.block(r + 1).mul(&probe.source.d_block(r));
            if lhs == rhs {
                signs.push(1i8);
            } else if lhs == rhs.neg() {
                signs.push(-1i8);
            } else {
                return Err(ComplexError::NotAChainMap(r as usize));
            }
        }
        Ok(ComplexMap {
            sign_rule: SignRule::UpToSign(signs),
            ..probe
        })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let blocks = (0..c.dims.len())
            .map(|r| SparseMat::identity(c.dims[r]))
            .collect();
        ComplexMap {
            source: c.clone(),
            target: c.clone(),
            blocks,
            sign_rule: SignRule::Strict,
        }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        let blocks = (0..source.dims.len())
            .map(|r| SparseMat::zeros(target.dim(r as isize), source.dims[r]))
            .collect();
        ComplexMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
            sign_rule: SignRule::Strict,
        }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn sign_rule(&self) -> &SignRule {
        &self.sign_rule
    }

    pub fn is_strict(&self) -> bool {
        matches!(self.sign_rule, SignRule::Strict)
            || matches!(&self.sign_rule, SignRule::UpToSign(s) if s.iter().all(|&e| e == 1))
    }

    /// Block in degree `r`, zero-shaped outside the stored range.
    pub fn block(&self, r: isize) -> SparseMat {
        if r >= 0 && (r as usize) < self.blocks.len() {
            self.blocks[r as usize].clone()
        } else {
            SparseMat::zeros(self.target.dim(r), self.source.dim(r))
        }
    }

    /// `self ∘ first` (both strict).
    pub fn compose(&self, first: &ComplexMap) -> Result<ComplexMap, ComplexError> {
        if first.target != self.source {
            return Err(ComplexError::EndpointMismatch("compose".into()));
        }
        assert!(
            self.is_strict() && first.is_strict(),
            "compose only supports strict maps"
        );
        let blocks = (0..first.source.dims.len())
            .map(|r| self.block(r as isize).mul(&first.block(r as isize)))
            .collect();
        ComplexMap::strict(first.source.clone(), self.target.clone(), blocks)
    }

    pub fn rank(&self, r: isize) -> usize {
        self.block(r).rank()
    }

    /// Degreewise surjectivity.
    pub fn is_surjective(&self) -> bool {
        (0..=self.target.top() as isize).all(|r| self.rank(r) == self.target.dim(r))
    }
}

/// Cohomology of a complex: in each degree a deterministic set of
/// representative cocycles together with a basis of the coboundaries.
///
/// Representatives are the leftmost-pivot complement of the coboundaries
/// inside the canonical kernel basis of `d`, so they are reproducible and
/// they are honest cocycles.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    /// `reps[r]`: columns are cocycle representatives of a basis of `H^r`.
    pub reps: Vec<SparseMat>,
    /// `cobounds[r]`: columns are a basis of `im d^{r-1}`.
    pub cobounds: Vec<SparseMat>,
}

impl CohomologyBasis {
    pub fn betti(&self, r: isize) -> usize {
        if r < 0 || r as usize >= self.reps.len() {
            0
        } else {
            self.reps[r as usize].cols()
        }
    }

    pub fn betti_vec(&self) -> Vec<usize> {
        self.reps.iter().map(|m| m.cols()).collect()
    }

    /// Coordinates of a cocycle's class in the chosen basis of `H^r`.
    pub fn class_coords(&self, r: usize, cocycle: &[Rat]) -> Result<Vec<Rat>, ComplexError> {
        coordinates_in_quotient(&self.reps[r], &self.cobounds[r], cocycle)
            .map_err(|e| ComplexError::Internal(format!("class coordinates in degree {r}: {e}")))
    }

    /// Batched [`Self::class_coords`]: one elimination for all columns.
    pub fn class_coords_many(
        &self,
        r: usize,
        cocycles: &SparseMat,
    ) -> Result<SparseMat, ComplexError> {
        coordinates_in_quotient_many(&self.reps[r], &self.cobounds[r], cocycles)
            .map_err(|e| ComplexError::Internal(format!("class coordinates in degree {r}: {e}")))
    }
}

pub fn cohomology(c: &CochainComplex) -> CohomologyBasis {
    let mut reps = Vec::with_capacity(c.dims.len());
    let mut cobounds = Vec::with_capacity(c.dims.len());
    for r in 0..c.dims.len() {
        let r = r as isize;
        let cocycles = c.d_block(r).kernel_basis();
        let b = c.d_block(r - 1).image_basis();
        // representatives: the leftmost cocycle columns that stay independent
        // after the coboundaries (pivot columns of [B | Z] beyond B)
        let aug = SparseMat::hstack(&[&b, &cocycles]);
        let rr_pivots = aug.pivot_columns();
        let chosen: Vec<usize> = rr_pivots
            .into_iter()
            .filter(|&p| p >= b.cols())
            .map(|p| p - b.cols())
            .collect();
        reps.push(cocycles.select_cols(&chosen));
        cobounds.push(b);
    }
    CohomologyBasis { reps, cobounds }
}

/// Matrices of the map induced on cohomology, one per degree of the source.
/// Well defined for strict and up-to-sign maps alike (either way cocycles go
/// to cocycles and coboundaries to coboundaries).
pub fn induced_map(
    f: &ComplexMap,
    src: &CohomologyBasis,
    tgt: &CohomologyBasis,
) -> Result<Vec<SparseMat>, ComplexError> {
    let mut out = Vec::new();
    for r in 0..=f.source.top() {
        if r >= tgt.reps.len() {
            out.push(SparseMat::zeros(0, src.betti(r as isize)));
            continue;
        }
        let img = f.block(r as isize).mul(&src.reps[r]);
        out.push(tgt.class_coords_many(r, &img)?);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct QuasiIsoReport {
    /// Per degree: (source Betti, target Betti, rank of the induced map).
    pub degrees: Vec<(usize, usize, usize)>,
    pub ok: bool,
}

/// Does `f` induce an isomorphism on cohomology in every degree?
pub fn is_quasi_iso(f: &ComplexMap) -> Result<QuasiIsoReport, ComplexError> {
    let hs = cohomology(&f.source);
    let ht = cohomology(&f.target);
    let ind = induced_map(f, &hs, &ht)?;
    let top = f.source.top().max(f.target.top());
    let mut degrees = Vec::new();
    let mut ok = true;
    for r in 0..=top {
        let bs = hs.betti(r as isize);
        let bt = ht.betti(r as isize);
        let rank = ind.get(r).map_or(0, |m| m.rank());
        if bs != bt || rank != bs {
            ok = false;
        }
        degrees.push((bs, bt, rank));
    }
    Ok(QuasiIsoReport { degrees, ok })
}

/// A subcomplex presented by per-degree basis columns inside an ambient
/// complex. Returns the abstract complex (in basis coordinates) and the
/// inclusion. Errors if the given spans are not `d`-stable or not
/// independent.
pub fn subcomplex_from_bases(
    ambient: &CochainComplex,
    bases: Vec<SparseMat>,
) -> Result<(CochainComplex, ComplexMap), ComplexError> {
    assert_eq!(bases.len(), ambient.dims.len());
    for (r, b) in bases.iter().enumerate() {
        if b.rows() != ambient.dims[r] {
            return Err(ComplexError::BadShape(format!(
                "basis in degree {r} lives in dim {}, ambient is {}",
                b.rows(),
                ambient.dims[r]
            )));
        }
        if b.rank() != b.cols() {
            return Err(ComplexError::DependentBasis(r));
        }
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let mut d = Vec::new();
    for r in 0..dims.len() - 1 {
        let img = ambient.d_block(r as isize).mul(&bases[r]);
        let sol = bases[r + 1]
            .solve_many(&img)
            .ok_or(ComplexError::NotDStable(r))?;
        d.push(sol);
    }
    let sub = CochainComplex::new(dims, d)?;
    let incl = ComplexMap::strict(sub.clone(), ambient.clone(), bases)?;
    Ok((sub, incl))
}

/// Degreewise kernel of a map, as a subcomplex of the source with its
/// inclusion.
pub fn kernel_subcomplex(
    f: &ComplexMap,
) -> Result<(CochainComplex, ComplexMap), ComplexError> {
    let bases: Vec<SparseMat> = (0..f.source.dims.len())
        .map(|r| f.block(r as isize).kernel_basis())
        .collect();
    subcomplex_from_bases(&f.source, bases)
}

/// The degreewise pullback `Q = A ×_T B` of `f: A → T` and `g: B → T`:
/// `Q^r = {(a, b) : f a = g b}`, realized as the kernel of `[f, −g]` inside
/// the direct sum complex `A ⊕ B`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub complex: CochainComplex,
    pub proj1: ComplexMap,
    pub proj2: ComplexMap,
    f: ComplexMap,
    g: ComplexMap,
    /// Per-degree basis of `Q^r` in `A^r ⊕ B^r` coordinates.
    kernel_bases: Vec<SparseMat>,
}

pub fn pullback_complex(f: &ComplexMap, g: &ComplexMap) -> Result<Pullback, ComplexError> {
    if f.target != g.target {
        return Err(ComplexError::EndpointMismatch("pullback target".into()));
    }
    assert!(f.is_strict() && g.is_strict());
    let a = &f.source;
    let b = &g.source;
    let top = a.top().max(b.top());
    let mut ds_dims = Vec::new();
    let mut ds_d = Vec::new();
    for r in 0..=top as isize {
        ds_dims.push(a.dim(r) + b.dim(r));
        if r < top as isize {
            let za = SparseMat::zeros(a.dim(r + 1), b.dim(r));
            let zb = SparseMat::zeros(b.dim(r + 1), a.dim(r));
            ds_d.push(SparseMat::from_blocks(&[
                vec![&a.d_block(r), &za],
                vec![&zb, &b.d_block(r)],
            ]));
        }
    }
    ds_dims.push(a.dim(top as isize + 1) + b.dim(top as isize + 1));
    ds_d.push(SparseMat::zeros(0, *ds_dims.last().unwrap()));
    // trim: the extra degree above top is zero-dimensional
    ds_dims.pop();
    ds_d.pop();
    let ds = CochainComplex::new(ds_dims, ds_d)?;

    let combined_blocks: Vec<SparseMat> = (0..=top as isize)
        .map(|r| SparseMat::hstack(&[&f.block(r), &g.block(r).neg()]))
        .collect();
    let combined = ComplexMap::strict(ds.clone(), f.target.clone(), combined_blocks)?;
    let kernel_bases: Vec<SparseMat> = (0..=top as isize)
        .map(|r| combined.block(r).kernel_basis())
        .collect();
    let (q, incl) = subcomplex_from_bases(&ds, kernel_bases.clone())?;
    let proj1_blocks: Vec<SparseMat> = (0..=top as isize)
        .map(|r| incl.block(r).select_row_band(0, a.dim(r)))
        .collect();
    let proj2_blocks: Vec<SparseMat> = (0..=top as isize)
        .map(|r| {
            incl.block(r)
                .select_row_band(a.dim(r), a.dim(r) + b.dim(r))
        })
        .collect();
    let proj1 = ComplexMap::strict(q.clone(), a.clone(), proj1_blocks)?;
    let proj2 = ComplexMap::strict(q.clone(), b.clone(), proj2_blocks)?;
    Ok(Pullback {
        complex: q,
        proj1,
        proj2,
        f: f.clone(),
        g: g.clone(),
        kernel_bases,
    })
}

impl Pullback {
    /// Universal property: given `u: Z → A` and `v: Z → B` with
    /// `f∘u = g∘v`, produce the unique `w: Z → Q` with `proj1∘w = u` and
    /// `proj2∘w = v`.
    pub fn factor(&self, u: &ComplexMap, v: &ComplexMap) -> Result<ComplexMap, ComplexError> {
        if u.source != v.source {
            return Err(ComplexError::EndpointMismatch("factor source".into()));
        }
        if u.target != self.f.source || v.target != self.g.source {
            return Err(ComplexError::EndpointMismatch("factor targets".into()));
        }
        for r in 0..=u.source.top() as isize {
            if self.f.block(r).mul(&u.block(r)) != self.g.block(r).mul(&v.block(r)) {
                return Err(ComplexError::NoFactorization(format!(
                    "square does not commute in degree {r}"
                )));
            }
        }
        let mut blocks = Vec::new();
        for r in 0..u.source.dims.len() {
            let r = r as isize;
            let stacked = SparseMat::vstack(&[&u.block(r), &v.block(r)]);
            let k = if (r as usize) < self.kernel_bases.len() {
                self.kernel_bases[r as usize].clone()
            } else {
                SparseMat::zeros(stacked.rows(), 0)
            };
            let sol = k.solve_many(&stacked).ok_or_else(|| {
                ComplexError::NoFactorization(format!("image misses the pullback in degree {r}"))
            })?;
            blocks.push(sol);
        }
        ComplexMap::strict(u.source.clone(), self.complex.clone(), blocks)
    }
}

/// Exactness report for a sequence `0 → C_0 → C_1 → … → C_m → 0`.
#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Degreewise exactness of a short (or longer) exact sequence of complexes
/// presented by its maps. The first map must be injective, images must equal
/// kernels at every intermediate node, and the last map must be surjective.
/// Up-to-sign maps are fine: exactness is a statement about images and
/// kernels of the blocks.
pub fn verify_exact_sequence(maps: &[&ComplexMap]) -> ExactnessReport {
    assert!(!maps.is_empty());
    for w in maps.windows(2) {
        assert!(
            w[0].target == *w[1].source(),
            "maps are not composable as a sequence"
        );
    }
    let mut failures = Vec::new();
    let top = maps
        .iter()
        .map(|m| m.source.top().max(m.target.top()))
        .max()
        .unwrap();
    for r in 0..=top as isize {
        let first = maps[0];
        if first.rank(r) != first.source.dim(r) {
            failures.push(format!("degree {r}: first map is not injective"));
        }
        for (i, w) in maps.windows(2).enumerate() {
            let (f, g) = (w[0], w[1]);
            if !g.block(r).mul(&f.block(r)).is_zero() {
                failures.push(format!("degree {r}: composite at node {} is nonzero", i + 1));
            }
            let mid = f.target.dim(r);
            if f.rank(r) + g.rank(r) != mid {
                failures.push(format!(
                    "degree {r}: node {}: rank {} + rank {} ≠ dim {}",
                    i + 1,
                    f.rank(r),
                    g.rank(r),
                    mid
                ));
            }
        }
        let last = maps.last().unwrap();
        if last.rank(r) != last.target.dim(r) {
            failures.push(format!("degree {r}: last map is not surjective"));
        }
    }
    ExactnessReport {
        pass: failures.is_empty(),
        failures,
    }
}

/// Connecting homomorphism `H^r(C) → H^{r+1}(A)` of a degreewise short exact
/// sequence `0 → A → B → C → 0`, computed by the usual zig-zag: lift a
/// representative through the projection, apply `d`, pull back through the
/// inclusion. One matrix per degree `r = 0..=C.top()`.
pub fn connecting_hom(
    incl: &ComplexMap,
    proj: &ComplexMap,
    h_a: &CohomologyBasis,
    h_c: &CohomologyBasis,
) -> Result<Vec<SparseMat>, ComplexError> {
    if incl.target != proj.source {
        return Err(ComplexError::EndpointMismatch("connecting_hom".into()));
    }
    let b = &incl.target;
    let mut out = Vec::new();
    for r in 0..=proj.target.top() as isize {
        if (r + 1) as usize >= incl.source.dims.len() {
            out.push(SparseMat::zeros(0, h_c.betti(r)));
            continue;
        }
        let lifts = proj
            .block(r)
            .solve_many(&h_c.reps[r as usize])
            .ok_or_else(|| ComplexError::Internal(format!("no lift in degree {r}")))?;
        let db = b.d_block(r).mul(&lifts);
        let a = incl
            .block(r + 1)
            .solve_many(&db)
            .ok_or_else(|| ComplexError::Internal(format!("d(lift) not in A, degree {r}")))?;
        out.push(h_a.class_coords_many((r + 1) as usize, &a)?);
    }
    Ok(out)
}

/// The structure constants of a graded ring on chosen cohomology bases:
/// `constants[(p, i, q, j)]` are the coordinates of `[xᵖᵢ ∪ x^q_j]` in the
/// degree-`p+q` basis.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    pub betti: Vec<usize>,
    pub constants: BTreeMap<(usize, usize, usize, usize), Vec<Rat>>,
}

impl RingPresentation {
    /// Rank of the cup pairing `H^p ⊗ H^q → H^{p+q}` as a matrix whose
    /// columns are the products of basis classes.
    pub fn pairing_rank(&self, p: usize, q: usize) -> usize {
        let bp = *self.betti.get(p).unwrap_or(&0);
        let bq = *self.betti.get(q).unwrap_or(&0);
        let bpq = *self.betti.get(p + q).unwrap_or(&0);
        if bp == 0 || bq == 0 || bpq == 0 {
            return 0;
        }
        let mut m = SparseMat::zeros(bpq, bp * bq);
        for i in 0..bp {
            for j in 0..bq {
                let c = &self.constants[&(p, i, q, j)];
                for (row, x) in c.iter().enumerate() {
                    m.set(row, i * bq + j, x.clone());
                }
            }
        }
        m.rank()
    }

    /// All pairing ranks `(p, q) → rank` for degrees with classes on both
    /// sides and a nonzero target.
    pub fn pairing_ranks(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        let top = self.betti.len();
        for p in 0..top {
            for q in 0..top {
                if p + q < top && self.betti[p] > 0 && self.betti[q] > 0 && self.betti[p + q] > 0 {
                    out.insert((p, q), self.pairing_rank(p, q));
                }
            }
        }
        out
    }
}
