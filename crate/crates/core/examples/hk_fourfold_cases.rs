//! The case split for K3^[2]-type fourfolds of Picard rank one, and the
//! moduli-space criterion.

use hodgelat::certify::{
    certify_hk_fourfold, certify_moduli_unimodular, HkFourfoldInput, Polarization,
};
use hodgelat::k3::HyperkahlerModel;
use hodgelat::lattice::{CatalogLattice, Lattice};
use num_bigint::BigInt;

fn main() -> hodgelat::Result<()> {
    println!(" g   d  div  verdict");
    for (g, d, div) in [(5, 3, 1), (3, 16, 1), (3, 6, 2), (3, 6, 1), (2, 10, 1)] {
        let input = HkFourfoldInput {
            t_iso: true,
            g,
            d,
            div_h: Some(div),
            polarization: None,
        };
        println!(
            "{g:>2} {d:>3} {div:>4}  {}",
            certify_hk_fourfold(&input)?.verdict
        );
    }

    // div(H) computed from the lattice: H = 2e + 2f + v in U + <-2> has H² = 6.
    let lattice = CatalogLattice::U
        .lattice()
        .direct_sum(&Lattice::rank_one(-2)?);
    let input = HkFourfoldInput {
        t_iso: true,
        g: 3,
        d: 6,
        div_h: None,
        polarization: Some(Polarization {
            lattice,
            vector: vec![BigInt::from(2), BigInt::from(2), BigInt::from(1)],
        }),
    };
    println!(
        "\npolarized example: {}",
        certify_hk_fourfold(&input)?.verdict
    );

    let hk = HyperkahlerModel::new(
        hodgelat::k3::k3n_ambient(2)?,
        hodgelat::linalg::IntMatrix::from_rows(vec![{
            let mut h = vec![0i64; 23];
            h[0] = 1;
            h[1] = 1;
            h
        }])?,
        None,
        Some(2),
    )?;
    println!(
        "K3^[2] model: T rank {}, glue index {}, glue defect {}",
        hk.t_lattice().rank(),
        hk.glue_index()?,
        hk.glue_defect()?
    );

    let moduli = certify_moduli_unimodular(&CatalogLattice::U.lattice(), true, 20)?;
    println!("moduli of sheaves on S with NS(S) = U: {}", moduli.verdict);
    Ok(())
}
