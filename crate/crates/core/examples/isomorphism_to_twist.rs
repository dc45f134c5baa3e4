//! From a Hodge isomorphism T1 -> T2 to the twist φ with T1_φ ≅ T2, and
//! deciding when two twists agree.

use hodgelat::hodge::{
    construct_phi_from_isomorphism, is_hodge_isometry, twists_equivalent, HodgeIsomorphism,
    HodgeLatticeModel,
};
use hodgelat::isometry::SearchBounds;
use hodgelat::lattice::{CatalogLattice, Lattice};
use hodgelat::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> hodgelat::Result<()> {
    let lattice = Lattice::from_rows(vec![vec![2, 0], vec![0, 4]])?;
    let g = IntMatrix::from_rows(vec![vec![0, 2], vec![1, 0]])?.to_rational();
    let t1 = HodgeLatticeModel::new(lattice, g.clone(), true, true)?;

    // Multiplication by the unit 1 + sqrt 2 commutes with g.
    let f = IntMatrix::from_rows(vec![vec![1, 2], vec![1, 1]])?;
    let iso = HodgeIsomorphism::new(&t1, &t1, f.clone())?;
    let phi = construct_phi_from_isomorphism(&t1, &t1, &iso)?;
    println!("f = {:?}", f.to_rows());
    println!("phi = G1^-1 f^T G2 f = {}", phi.matrix());
    let t_phi = t1.twist(&phi)?;
    println!(
        "f is a Hodge isometry T1_phi -> T2: {}",
        is_hodge_isometry(&t_phi, &t1, &f)
    );

    let u = HodgeLatticeModel::with_rational_endomorphisms(CatalogLattice::U.lattice());
    let one = u.scalar_endomorphism(&BigRational::from_integer(BigInt::from(1)))?;
    let two = u.scalar_endomorphism(&BigRational::from_integer(BigInt::from(2)))?;
    let bounds = SearchBounds::default();
    println!(
        "\nU: id ~ id  -> {}",
        twists_equivalent(&u, &one, &one, bounds)?.state()
    );
    println!(
        "U: id ~ 2id -> {}",
        twists_equivalent(&u, &one, &two, bounds)?.state()
    );
    Ok(())
}
