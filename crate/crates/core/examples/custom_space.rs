//! Ingest a space from the JSON document format instead of a built-in
//! example: a Möbius-like strip fails the orientability gate, and an
//! explicitly declared boundary is cross-checked against the detected one.
//!
//! Run with `cargo run --example custom_space`.

use intersection_space::complexes::cohomology;
use intersection_space::simplicial::ingest;

fn main() {
    // minimal Möbius strip: 5 vertices, boundary detected automatically
    let text = r#"{
        "name": "mobius",
        "dimension": 2,
        "facets": [[0,1,2],[1,2,3],[2,3,4],[3,4,0],[4,0,1]],
        "boundary": "auto"
    }"#;
    let doc = serde_json::from_str(text).unwrap();
    let pair = ingest(&doc).unwrap();
    println!(
        "mobius: Betti(X̄) = {:?}, Betti(L) = {:?}, orientable: {}",
        cohomology(&pair.cochain_complex()).betti_vec(),
        cohomology(&pair.l_cochain_complex()).betti_vec(),
        pair.orientable()
    );

    // the same triangle with its boundary given explicitly
    let explicit = r#"{
        "name": "disk2-explicit",
        "dimension": 2,
        "facets": [[0,1,2]],
        "boundary": [[0,1],[1,2],[0,2]]
    }"#;
    let doc2 = serde_json::from_str(&explicit).unwrap();
    let pair2 = ingest(&doc2).unwrap();
    println!(
        "disk2-explicit: boundary accepted, Betti(L) = {:?}",
        cohomology(&pair2.l_cochain_complex()).betti_vec()
    );

    // a wrong boundary declaration is rejected
    let wrong = r#"{
        "name": "disk2-wrong",
        "dimension": 2,
        "facets": [[0,1,2]],
        "boundary": [[0,1]]
    }"#;
    let doc3 = serde_json::from_str(&wrong).unwrap();
    match ingest(&doc3) {
        Err(e) => println!("disk2-wrong rejected: {e}"),
        Ok(_) => println!("unexpected: wrong boundary accepted"),
    }
}
