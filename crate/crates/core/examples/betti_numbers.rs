//! Compute ordinary simplicial cohomology of a triangulated pair: ingest a
//! space, build the cochain complexes of the blowup and its boundary, and
//! print Betti numbers.
//!
//! Run with `cargo run --example betti_numbers`.

use intersection_space::cli::generate_example;
use intersection_space::complexes::cohomology;
use intersection_space::simplicial::ingest;

fn main() {
    for name in ["disk2", "disk3", "solid_torus", "s1_x_d3", "t2_x_d2"] {
        let pair = ingest(&generate_example(name).unwrap()).unwrap();
        let h_x = cohomology(&pair.cochain_complex());
        let h_l = cohomology(&pair.l_cochain_complex());
        println!(
            "{name}: n = {}, Betti(X̄) = {:?}, Betti(L) = {:?}",
            pair.n,
            h_x.betti_vec(),
            h_l.betti_vec()
        );
    }
}
