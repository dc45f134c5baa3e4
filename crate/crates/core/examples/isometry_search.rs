//! Isometry testing: genus obstructions, exhaustive definite search, and
//! bounded indefinite search.

use hodgelat::isometry::{lattices_isometric, SearchBounds};
use hodgelat::lattice::{CatalogLattice, Lattice};

fn report(name: &str, a: &Lattice, b: &Lattice, bounds: SearchBounds) {
    let v = lattices_isometric(a, b, bounds);
    match v.witness() {
        Some(w) => println!("{name}: {} via {:?}", v.state(), w.to_rows()),
        None => println!("{name}: {} ({})", v.state(), v.reason().unwrap_or("")),
    }
}

fn main() -> hodgelat::Result<()> {
    let bounds = SearchBounds::from_env();
    println!(
        "entry bound {}, fingerprint bound {}\n",
        bounds.entry_bound, bounds.fingerprint_bound
    );

    let t = CatalogLattice::U
        .lattice()
        .direct_sum(&Lattice::rank_one(-4)?);
    report("T vs T(2)", &t, &t.rescale(2)?, bounds);

    let a = Lattice::from_rows(vec![vec![2, 1], vec![1, 2]])?;
    let b = Lattice::from_rows(vec![vec![2, -1], vec![-1, 2]])?;
    report("A2 vs A2'", &a, &b, bounds);

    // Same genus, different classes: only the exhaustive search separates them.
    let c = Lattice::from_rows(vec![vec![2, 1], vec![1, 12]])?;
    let d = Lattice::from_rows(vec![vec![4, 1], vec![1, 6]])?;
    report("[[2,1],[1,12]] vs [[4,1],[1,6]]", &c, &d, bounds);

    let e = Lattice::from_rows(vec![vec![4, 1], vec![1, 6]])?;
    let f = Lattice::from_rows(vec![vec![4, -1], vec![-1, 6]])?;
    report("[[4,1],[1,6]] vs [[4,-1],[-1,6]]", &e, &f, bounds);

    let h = Lattice::from_rows(vec![vec![2, 1], vec![1, -2]])?;
    let k = Lattice::from_rows(vec![vec![-2, 1], vec![1, 2]])?;
    report("indefinite pair", &h, &k, bounds);
    Ok(())
}
