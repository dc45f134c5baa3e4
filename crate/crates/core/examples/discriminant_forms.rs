//! Discriminant groups, their quadratic forms, and comparison of forms.

use hodgelat::isometry::{disc_forms_isomorphic, genus_invariants};
use hodgelat::lattice::{CatalogLattice, Lattice};
use hodgelat::linalg::format_rational;

fn describe(name: &str, l: &Lattice) {
    let d = l.discriminant_form();
    let factors: Vec<String> = d
        .invariant_factors()
        .iter()
        .map(|f| f.to_string())
        .collect();
    let q: Vec<String> = d.q_values().iter().map(format_rational).collect();
    println!(
        "{name}: A_L = Z/[{}], q on generators = [{}] mod 2",
        factors.join(", "),
        q.join(", ")
    );
}

fn main() -> hodgelat::Result<()> {
    let u = CatalogLattice::U.lattice();
    let a = Lattice::rank_one(2)?.direct_sum(&Lattice::rank_one(-2)?);
    let b = u.rescale(2)?;
    let c = Lattice::from_rows(vec![vec![2, 1], vec![1, -2]])?;
    describe("<2>+<-2>", &a);
    describe("U(2)", &b);
    describe("[[2,1],[1,-2]]", &c);

    // Same group Z/2 x Z/2, different forms: <2>+<-2> has q = 1/2, U(2) only 0 and 1.
    let verdict = disc_forms_isomorphic(&a.discriminant_form(), &b.discriminant_form(), 4096);
    println!("\nA(<2>+<-2>) vs A(U(2)): {}", verdict.state());

    let g = genus_invariants(&c, 4096);
    let fp: Vec<String> = g
        .fingerprint
        .unwrap_or_default()
        .iter()
        .map(format_rational)
        .collect();
    println!("genus fingerprint of [[2,1],[1,-2]]: [{}]", fp.join(", "));
    Ok(())
}
