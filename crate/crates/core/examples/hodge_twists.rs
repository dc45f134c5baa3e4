//! Twisting Hodge-lattice models by endomorphisms.

use hodgelat::hodge::HodgeLatticeModel;
use hodgelat::lattice::{CatalogLattice, Lattice};
use hodgelat::linalg::{format_rational, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> hodgelat::Result<()> {
    // E = Q on U: scalar twists.
    let u = HodgeLatticeModel::with_rational_endomorphisms(CatalogLattice::U.lattice());
    for (a, b) in [(2, 1), (-3, 1), (1, 2)] {
        let q = BigRational::new(BigInt::from(a), BigInt::from(b));
        match u.scalar_endomorphism(&q) {
            Ok(phi) => {
                let check = u.verify_twist_discriminant(&phi)?;
                println!(
                    "U_({}): disc {} = |{}|^{} * {}",
                    format_rational(&q),
                    check.disc_twisted,
                    format_rational(&check.norm),
                    check.m,
                    check.disc_original
                );
            }
            Err(e) => println!("U_({}): rejected ({e})", format_rational(&q)),
        }
    }

    // E = Q(sqrt 2) acting on <2> + <4> through g = [[0,2],[1,0]].
    let lattice = Lattice::from_rows(vec![vec![2, 0], vec![0, 4]])?;
    let g = IntMatrix::from_rows(vec![vec![0, 2], vec![1, 0]])?.to_rational();
    let t = HodgeLatticeModel::new(lattice, g.clone(), true, true)?;
    println!(
        "\nT = <2>+<4>, minimal polynomial of g: {}",
        t.minimal_polynomial()
    );
    let phi = t.is_in_f(&g)?;
    let twisted = t.twist(&phi)?;
    let check = t.verify_twist_discriminant(&phi)?;
    println!("T_g gram {:?}", twisted.gram().to_rows());
    println!(
        "disc(T_g) = {}, N(g) = {}, m = {}, prediction {}",
        check.disc_twisted,
        format_rational(&check.norm),
        check.m,
        format_rational(&check.predicted)
    );

    for disc in [4, 9, 8] {
        let twists = u.enumerate_scalar_twists(&BigInt::from(disc))?;
        let list: Vec<String> = twists.iter().map(format_rational).collect();
        println!("scalar twists of U with disc {disc}: [{}]", list.join(", "));
    }
    Ok(())
}
