//! Invariants of the catalog lattices and of a few derived ones.

use hodgelat::lattice::{CatalogLattice, Lattice};

fn main() -> hodgelat::Result<()> {
    for c in CatalogLattice::ALL {
        let l = c.lattice();
        println!(
            "{:<9} rank {:>2}  det {:>3}  disc {}  signature {}",
            c.name(),
            l.rank(),
            l.determinant(),
            l.discriminant(),
            l.signature()
        );
    }

    let u = CatalogLattice::U.lattice();
    let t = u
        .direct_sum(&Lattice::rank_one(-2)?)
        .direct_sum(&Lattice::rank_one(-6)?);
    println!(
        "\nT = U + <-2> + <-6>: disc {}, signature {}",
        t.discriminant(),
        t.signature()
    );
    for n in [-3, 2, 5] {
        let scaled = t.rescale(n)?;
        println!(
            "T({n}): disc {} = {}^{} * {}",
            scaled.discriminant(),
            n.abs(),
            t.rank(),
            t.discriminant()
        );
    }
    Ok(())
}
