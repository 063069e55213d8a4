//! Build the full intersection-space model for a fixture and machine-verify
//! the main comparison: the cohomology ring of the cochain subalgebra `OI`
//! is isomorphic, as a ring, to the cohomology ring of `ker g♯`, via the
//! map θ transported through the pullback `Q`, and both compute the reduced
//! cohomology of the intersection space.
//!
//! Run with `cargo run --example main_theorem`.

use intersection_space::cli::generate_example;
use intersection_space::ispace::{verify_main_theorem, BuildOptions, ISpaceModel, Perversity};
use intersection_space::simplicial::ingest;

fn main() {
    for name in ["solid_torus", "s1_x_d3", "t2_x_d2"] {
        let pair = ingest(&generate_example(name).unwrap()).unwrap();
        for p in [
            Perversity::zero(pair.n).unwrap(),
            Perversity::lower_middle(pair.n).unwrap(),
            Perversity::top(pair.n).unwrap(),
        ] {
            let model = ISpaceModel::build(&pair, p, &BuildOptions::default()).unwrap();
            let rep = verify_main_theorem(&model).unwrap();
            println!(
                "{name}, p̄(n) = {}, k = {}: HI Betti = {:?}, θ ring iso: {}, nonzero \
                 positive-degree products: {}",
                p.p_of_n,
                model.k,
                rep.betti_ix,
                rep.pass,
                rep.nonzero_positive_products
            );
            if !rep.pass {
                for f in &rep.failures {
                    println!("  failure: {f}");
                }
            }
        }
    }
}
