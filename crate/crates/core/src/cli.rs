//! Command-line orchestration: built-in example spaces, JSON report
//! serialization, and the check runner behind the `ispace` binary.
//!
//! Input documents are JSON of the form
//! `{"name": ..., "dimension": n, "facets": [[...], ...], "boundary": "auto"}`
//! (or an explicit facet list for `boundary`). Reports are JSON with exact
//! rational entries rendered as `"num/den"` strings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{cohomology, RingPresentation};
use crate::exactq::rat_to_string;
use crate::ispace::{
    check_cup_closure, check_cup_identities, poincare_duality_report, ring_structure,
    verify_main_theorem, verify_sequences, BuildOptions, ISpaceModel, ModelError, Perversity,
};
use crate::simplicial::{ingest, IngestError, SimplicialPair, SpaceDocument};
use crate::truncation::random_weights;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown example {0:?}; available: {}", EXAMPLE_NAMES.join(", "))]
    UnknownExample(String),
    #[error("exactly one of an input file or an example name is required")]
    NoInput,
    #[error("unknown check {0:?}; available: main-theorem, duality, ses, invariants")]
    UnknownCheck(String),
    #[error("failed to read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub const EXAMPLE_NAMES: [&str; 6] = [
    "disk2",
    "disk3",
    "disk4",
    "solid_torus",
    "s1_x_d3",
    "t2_x_d2",
];

// ---------------------------------------------------------------------------
// Built-in example spaces
// ---------------------------------------------------------------------------

/// Staircase (monotone lattice path) triangulation of products: every pair
/// of facets `σ × τ` is subdivided into one top simplex per monotone path
/// through the `(dim σ) × (dim τ)` grid. Vertex `(u, v)` is encoded as
/// `u * nb + v`, where `nb` is the number of vertices of the right factor.
fn product_facets(
    facets_a: &[Vec<usize>],
    facets_b: &[Vec<usize>],
    nb: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for fa in facets_a {
        for fb in facets_b {
            let p = fa.len() - 1;
            let q = fb.len() - 1;
            // enumerate monotone paths from (0,0) to (p,q) as bitstrings of
            // p "right" moves and q "up" moves
            let mut stack = vec![(0usize, 0usize, vec![(0usize, 0usize)])];
            while let Some((i, j, path)) = stack.pop() {
                if i == p && j == q {
                    let simplex: Vec<usize> =
                        path.iter().map(|&(a, b)| fa[a] * nb + fb[b]).collect();
                    out.push(simplex);
                    continue;
                }
                if i < p {
                    let mut next = path.clone();
                    next.push((i + 1, j));
                    stack.push((i + 1, j, next));
                }
                if j < q {
                    let mut next = path.clone();
                    next.push((i, j + 1));
                    stack.push((i, j + 1, next));
                }
            }
        }
    }
    out
}

fn simplex_facets(dim: usize) -> Vec<Vec<usize>> {
    vec![(0..=dim).collect()]
}

fn circle_facets() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![0, 2]]
}

/// One of the built-in spaces, as an input document.
pub fn generate_example(name: &str) -> Result<SpaceDocument, CliError> {
    match name {
        "disk2" => Ok(SpaceDocument::auto("disk2", 2, simplex_facets(2))),
        "disk3" => Ok(SpaceDocument::auto("disk3", 3, simplex_facets(3))),
        "disk4" => Ok(SpaceDocument::auto("disk4", 4, simplex_facets(4))),
        "solid_torus" => Ok(SpaceDocument::auto(
            "solid_torus",
            3,
            product_facets(&circle_facets(), &simplex_facets(2), 3),
        )),
        "s1_x_d3" => Ok(SpaceDocument::auto(
            "s1_x_d3",
            4,
            product_facets(&circle_facets(), &simplex_facets(3), 4),
        )),
        "t2_x_d2" => {
            let torus = product_facets(&circle_facets(), &circle_facets(), 3);
            Ok(SpaceDocument::auto(
                "t2_x_d2",
                4,
                product_facets(&torus, &simplex_facets(2), 3),
            ))
        }
        other => Err(CliError::UnknownExample(other.into())),
    }
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingEntry {
    pub p: usize,
    pub i: usize,
    pub q: usize,
    pub j: usize,
    /// Coordinates of the product class in the degree-`p+q` basis, each a
    /// `"num/den"` string.
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingReport {
    pub betti: Vec<usize>,
    pub products: Vec<RingEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub space: String,
    pub n: usize,
    pub k: usize,
    pub perversity: usize,
    /// Betti numbers per model complex, degrees `0..=n`.
    pub betti: BTreeMap<String, Vec<usize>>,
    /// Cup-product structure constants per subalgebra.
    pub rings: BTreeMap<String, RingReport>,
    pub checks: Vec<CheckResult>,
}

fn ring_report(ring: &RingPresentation) -> RingReport {
    RingReport {
        betti: ring.betti.clone(),
        products: ring
            .constants
            .iter()
            .map(|((p, i, q, j), coords)| RingEntry {
                p: *p,
                i: *i,
                q: *q,
                j: *j,
                coords: coords.iter().map(rat_to_string).collect(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    /// Path to a JSON input document.
    pub input: Option<String>,
    /// Name of a built-in example (alternative to `input`).
    pub example: Option<String>,
    /// Perversity name (`zero`, `top`, `lower-middle`, `upper-middle`) or a
    /// numeric value for `p̄(n)`.
    pub perversity: String,
    /// Seed for the alternative splitting and random spot checks.
    pub seed: Option<u64>,
    /// Use seeded random inner-product weights instead of the identity.
    pub random_weights: bool,
    /// Checks to run: any of `main-theorem`, `duality`, `ses`, `invariants`.
    pub checks: Vec<String>,
    /// Write the JSON report here instead of stdout.
    pub out: Option<String>,
    pub quiet: bool,
}

pub struct RunOutcome {
    pub report: Report,
    /// True iff every requested check passed.
    pub all_pass: bool,
}

fn load_document(cfg: &RunConfig) -> Result<SpaceDocument, CliError> {
    match (&cfg.input, &cfg.example) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(path.clone(), e))?;
            Ok(serde_json::from_str(&text)?)
        }
        (None, Some(name)) => generate_example(name),
        _ => Err(CliError::NoInput),
    }
}

fn betti_vec(c: &crate::complexes::CochainComplex, n: usize) -> Vec<usize> {
    let h = cohomology(c);
    (0..=n as isize).map(|r| h.betti(r)).collect()
}

pub fn run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let doc = load_document(cfg)?;
    let pair = ingest(&doc)?;
    let perversity = Perversity::named(&cfg.perversity, pair.n)?;
    let base_seed = cfg.seed.unwrap_or(0);

    let opts = BuildOptions {
        splitting_seed: cfg.seed,
        weights: if cfg.random_weights {
            Some(random_weights(&pair.l_cochain_complex(), base_seed))
        } else {
            None
        },
    };
    let model = ISpaceModel::build(&pair, perversity, &opts)?;
    let n = pair.n;

    let mut betti = BTreeMap::new();
    betti.insert("ix".to_string(), model.ix_betti());
    betti.insert("q".to_string(), betti_vec(&model.q.complex, n));
    betti.insert("oi".to_string(), betti_vec(&model.oi.complex, n));
    betti.insert("ker_g".to_string(), betti_vec(&model.ker_g.complex, n));

    let h_oi = cohomology(&model.oi.complex);
    let h_ker = cohomology(&model.ker_g.complex);
    let ring_oi = ring_structure(&pair, &model.oi, &h_oi)?;
    let ring_ker = ring_structure(&pair, &model.ker_g, &h_ker)?;
    let mut rings = BTreeMap::new();
    rings.insert("oi".to_string(), ring_report(&ring_oi));
    rings.insert("ker_g".to_string(), ring_report(&ring_ker));

    let mut checks = Vec::new();
    for name in &cfg.checks {
        let result = match name.as_str() {
            "main-theorem" => {
                let rep = verify_main_theorem(&model)?;
                CheckResult {
                    name: name.clone(),
                    pass: rep.pass,
                    witness: if rep.pass {
                        None
                    } else {
                        Some(rep.failures.join("; "))
                    },
                }
            }
            "duality" => {
                let rep = poincare_duality_report(&pair, perversity, None, &opts)?;
                let witness = if rep.pass {
                    None
                } else {
                    Some(format!(
                        "betti_p = {:?}, betti_q = {:?}",
                        rep.betti_p, rep.betti_q
                    ))
                };
                CheckResult {
                    name: name.clone(),
                    pass: rep.pass,
                    witness,
                }
            }
            "ses" => {
                let rep = verify_sequences(&model)?;
                CheckResult {
                    name: name.clone(),
                    pass: rep.pass,
                    witness: if rep.pass {
                        None
                    } else {
                        Some(rep.failures.join("; "))
                    },
                }
            }
            "invariants" => {
                let pass = invariants_check(&pair, perversity, base_seed)?;
                CheckResult {
                    name: name.clone(),
                    pass,
                    witness: if pass {
                        None
                    } else {
                        Some("Betti numbers or pairing ranks changed with the splitting".into())
                    },
                }
            }
            other => return Err(CliError::UnknownCheck(other.into())),
        };
        checks.push(result);
    }

    // light structural spot checks are always run (cheap, deterministic)
    check_cup_identities(&pair, 1, base_seed ^ 0x51D3)?;
    check_cup_closure(&pair, &model.oi, 2, base_seed ^ 0xC10)?;
    check_cup_closure(&pair, &model.ker_g, 2, base_seed ^ 0xC11)?;

    let all_pass = checks.iter().all(|c| c.pass);
    let report = Report {
        schema_version: 1,
        space: pair.name.clone(),
        n,
        k: model.k,
        perversity: perversity.p_of_n,
        betti,
        rings,
        checks,
    };

    let text = serde_json::to_string_pretty(&report)?;
    match &cfg.out {
        Some(path) => {
            fs::write(Path::new(path), &text).map_err(|e| CliError::Io(path.clone(), e))?;
            if !cfg.quiet {
                println!("report written to {path}");
            }
        }
        None => {
            if !cfg.quiet {
                println!("{text}");
            }
        }
    }
    if !cfg.quiet {
        for c in &report.checks {
            eprintln!(
                "check {}: {}",
                c.name,
                if c.pass { "pass" } else { "FAIL" }
            );
        }
    }

    Ok(RunOutcome { report, all_pass })
}

/// Rebuild the model with a different splitting of `C^k(L)` and with random
/// inner-product weights; Betti numbers and cup-pairing ranks must not move.
fn invariants_check(
    pair: &SimplicialPair,
    perversity: Perversity,
    seed: u64,
) -> Result<bool, CliError> {
    let base = ISpaceModel::build(pair, perversity, &BuildOptions::default())?;
    let alt_opts = BuildOptions {
        splitting_seed: Some(seed.wrapping_add(1)),
        weights: Some(random_weights(&pair.l_cochain_complex(), seed.wrapping_add(2))),
    };
    let alt = ISpaceModel::build(pair, perversity, &alt_opts)?;

    if base.ix_betti() != alt.ix_betti() {
        return Ok(false);
    }
    for (a, b) in [
        (&base.oi, &alt.oi),
        (&base.ker_g, &alt.ker_g),
        (&base.cbar, &alt.cbar),
    ] {
        let ha = cohomology(&a.complex);
        let hb = cohomology(&b.complex);
        if ha.betti_vec() != hb.betti_vec() {
            return Ok(false);
        }
        let ra = ring_structure(pair, a, &ha)?;
        let rb = ring_structure(pair, b, &hb)?;
        if ra.pairing_ranks() != rb.pairing_ranks() {
            return Ok(false);
        }
    }
    Ok(true)
}
