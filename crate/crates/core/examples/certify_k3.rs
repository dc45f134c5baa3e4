//! Certificates for K3 surfaces: the T-to-D pipeline, the rank-4
//! ambiguity, and the discriminant obstruction.

use hodgelat::certify::{
    certify_l_implies_d, certify_l_implies_d_models, certify_t_implies_d, replay_certificate,
    EquivalenceCertificate,
};
use hodgelat::hodge::HodgeLatticeModel;
use hodgelat::k3::{k3_diagonal_vector, ns_basis, K3SurfaceModel};
use hodgelat::lattice::{CatalogLattice, Lattice};

fn show(name: &str, c: &EquivalenceCertificate) -> hodgelat::Result<()> {
    println!(
        "{name}: {} (replays: {})",
        c.verdict,
        replay_certificate(c)?
    );
    for a in &c.assumptions {
        println!("    assumes: {}", a.cite);
    }
    for s in c.witness_chain.iter().skip(1) {
        println!("    {}   [{} | {}]", s.claim, s.lhs, s.rhs);
    }
    Ok(())
}

fn t_model(extra: &[i64]) -> hodgelat::Result<HodgeLatticeModel> {
    let mut l = CatalogLattice::U
        .lattice()
        .direct_sum(&CatalogLattice::U.lattice());
    for &n in extra {
        l = l.direct_sum(&Lattice::rank_one(n)?);
    }
    Ok(HodgeLatticeModel::with_rational_endomorphisms(l))
}

fn main() -> hodgelat::Result<()> {
    let x = K3SurfaceModel::in_k3_lattice(ns_basis(vec![k3_diagonal_vector(0)])?, None)?;
    let y = K3SurfaceModel::in_k3_lattice(ns_basis(vec![k3_diagonal_vector(2)])?, None)?;
    show("degree-2 K3 surfaces", &certify_l_implies_d_models(&x, &y)?)?;

    // Rank 4 means Picard rank 18, which the L-to-D pipeline refuses; the
    // T-level pipeline reports the ambiguity instead.
    let t4 = t_model(&[])?;
    show(
        "\nrank-4 transcendental lattice",
        &certify_t_implies_d(&t4, &t4)?,
    )?;

    let t = t_model(&[-2])?;
    let t2 = HodgeLatticeModel::with_rational_endomorphisms(t.lattice().rescale(2)?);
    show("\nT vs T(2)", &certify_l_implies_d(&t, &t2)?)?;

    let json = serde_json::to_string(&certify_l_implies_d(&t, &t)?.to_json()).expect("serializes");
    println!("\ncertificate JSON: {} bytes", json.len());
    Ok(())
}
