//! Poincaré duality between complementary perversities: for an orientable
//! blowup, the intersection-space Betti numbers of `p̄` mirror those of the
//! complementary `q̄` (with `p̄(n) + q̄(n) = n − 2`). A non-complementary
//! pairing serves as a negative control.
//!
//! Run with `cargo run --example duality`.

use intersection_space::cli::generate_example;
use intersection_space::ispace::{poincare_duality_report, BuildOptions, Perversity};
use intersection_space::simplicial::ingest;

fn main() {
    let pair = ingest(&generate_example("solid_torus").unwrap()).unwrap();
    let p = Perversity::zero(pair.n).unwrap();

    let rep = poincare_duality_report(&pair, p, None, &BuildOptions::default()).unwrap();
    println!(
        "solid torus, 0̄ vs t̄: orientable = {}, Betti_p = {:?}, Betti_q = {:?}, mirrored: {}",
        rep.orientable, rep.betti_p, rep.betti_q, rep.mirror_equal
    );

    // negative control: pairing 0̄ with itself is not complementary in
    // dimension 3 and the mirror test must fail
    let control =
        poincare_duality_report(&pair, p, Some(p), &BuildOptions::default()).unwrap();
    println!(
        "negative control (0̄ vs 0̄): complementary = {}, mirrored: {}",
        control.complementary, control.mirror_equal
    );
}
