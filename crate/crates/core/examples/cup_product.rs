//! The simplicial cup product: the ring of the 2-torus. The two degree-1
//! generator classes multiply to the fundamental degree-2 class (up to
//! sign), and squares of degree-1 classes vanish.
//!
//! Run with `cargo run --example cup_product`.

use intersection_space::cli::generate_example;
use intersection_space::complexes::{cohomology, ComplexMap};
use intersection_space::exactq::{rat, rat_to_string};
use intersection_space::ispace::{ring_structure, SubOfXbar};
use intersection_space::simplicial::ingest;

fn main() {
    // t2_x_d2 deformation-retracts to the torus, so its cochain ring on X̄
    // has the torus cohomology ring
    let pair = ingest(&generate_example("t2_x_d2").unwrap()).unwrap();
    let x = pair.cochain_complex();
    let full = SubOfXbar {
        complex: x.clone(),
        inclusion: ComplexMap::identity(&x),
    };
    let h = cohomology(&x);
    println!("Betti(T² × D²) = {:?}", h.betti_vec());

    let ring = ring_structure(&pair, &full, &h).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let c = &ring.constants[&(1, i, 1, j)];
            let rendered: Vec<String> = c.iter().map(rat_to_string).collect();
            println!("[a_{i}] ∪ [a_{j}] = {rendered:?} in the H² basis");
        }
    }
    let anti = ring.constants[&(1, 0, 1, 1)]
        .iter()
        .zip(&ring.constants[&(1, 1, 1, 0)])
        .all(|(x, y)| x == &-y.clone());
    let squares_vanish = ring.constants[&(1, 0, 1, 0)].iter().all(|x| x == &rat(0))
        && ring.constants[&(1, 1, 1, 1)].iter().all(|x| x == &rat(0));
    println!("anticommutative: {anti}, squares vanish: {squares_vanish}");
    println!("(1,1) pairing rank: {}", ring.pairing_rank(1, 1));
}
