//! A K3 surface of Picard rank 2 inside the K3 lattice: NS, T and the
//! glue between them.

use hodgelat::k3::{glue_index, k3_diagonal_vector, ns_basis, K3SurfaceModel};

fn main() -> hodgelat::Result<()> {
    // NS spanned by h = e1 + f1 (h² = 2) and a (-2)-class e2 - f2.
    let mut minus_two = vec![0i64; 22];
    minus_two[2] = 1;
    minus_two[3] = -1;
    let model =
        K3SurfaceModel::in_k3_lattice(ns_basis(vec![k3_diagonal_vector(0), minus_two])?, None)?;

    let ns = model.ns_lattice();
    let t = model.t_lattice();
    println!("Picard rank {}", model.picard_rank());
    println!(
        "NS: gram {:?}, signature {}, disc {}",
        ns.gram().to_rows(),
        ns.signature(),
        ns.discriminant()
    );
    println!(
        "T:  rank {}, signature {}, disc {}",
        t.rank(),
        t.signature(),
        t.discriminant()
    );

    let index = glue_index(model.ambient(), model.ns(), model.transcendental())?;
    println!("[H : NS + T] = {index}; for unimodular H this equals disc(NS) = disc(T)");
    Ok(())
}
