//! Sufficient condition for a primitive embedding into the K3 lattice.

use hodgelat::isometry::embeds_primitively_in_k3_lattice;
use hodgelat::lattice::{CatalogLattice, Lattice};

fn main() -> hodgelat::Result<()> {
    let u = CatalogLattice::U.lattice();
    let e8m = CatalogLattice::E8Minus.lattice();
    let mut cases = vec![
        ("U + <-2>", u.direct_sum(&Lattice::rank_one(-2)?)),
        (
            "U + U + <-4>",
            u.direct_sum(&u).direct_sum(&Lattice::rank_one(-4)?),
        ),
        ("E8(-1) + U", e8m.direct_sum(&u)),
        ("E8(-1) + E8(-1)", e8m.direct_sum(&e8m)),
        ("E8", CatalogLattice::E8.lattice()),
    ];
    let mut big = u.direct_sum(&u).direct_sum(&u);
    for _ in 0..10 {
        big = big.direct_sum(&Lattice::rank_one(-2)?);
    }
    cases.push(("U^3 + <-2>^10", big));

    for (name, l) in cases {
        let v = embeds_primitively_in_k3_lattice(&l);
        println!(
            "{name:<18} sig {:<7} -> {} ({})",
            l.signature().to_string(),
            if v.embeds() { "embeds" } else { "inconclusive" },
            v.reason()
        );
    }
    Ok(())
}
