//! Premises and cited results that certificates may rest on.

use super::Assumption;

fn a(cite: &str, quote: &str) -> Assumption {
    Assumption {
        cite: cite.into(),
        quote: quote.into(),
    }
}

pub fn derived_torelli() -> Assumption {
    a(
        "Derived Torelli theorem for K3 surfaces (Mukai, Orlov)",
        "Projective K3 surfaces X and Y have equivalent bounded derived categories iff T(X) and T(Y) are Hodge isometric.",
    )
}

pub fn derived_torelli_k3_2() -> Assumption {
    a(
        "Derived Torelli for K3^[2]-type fourfolds of Picard rank one",
        "For such fourfolds a Hodge isometry T(X) = T(Y) gives a derived equivalence provided g = 1 mod 4, or 8 divides d, or div(H) = 2.",
    )
}

pub fn twisted_derived_torelli_k3_2() -> Assumption {
    a(
        "Twisted derived Torelli for K3^[2]-type fourfolds of Picard rank one",
        "For such fourfolds a Hodge isometry T(X) = T(Y) gives a twisted derived equivalence.",
    )
}

pub fn scalar_endomorphisms() -> Assumption {
    a(
        "Premise: End(T(X)) = Z",
        "Every rational Hodge endomorphism of T(X) is a scalar; the model's endomorphism field is Q.",
    )
}

pub fn t_equivalence() -> Assumption {
    a(
        "Premise: X and Y are T-equivalent",
        "T(X) and T(Y) are isomorphic as rational Hodge structures.",
    )
}

pub fn twist_correspondence() -> Assumption {
    a(
        "Twist correspondence for irreducible K3-type Hodge lattices",
        "A Hodge lattice rationally Hodge isomorphic to T is Hodge isometric to a twist T_phi by an admissible phi in the endomorphism field of T.",
    )
}

pub fn l_equivalence() -> Assumption {
    a(
        "Premise: X and Y are L-equivalent",
        "L^n([X] - [Y]) = 0 in the Grothendieck ring of varieties for some n >= 0.",
    )
}

pub fn l_implies_t() -> Assumption {
    a(
        "L-equivalence implies T-equivalence when End(T(X)) = Z (Efimov)",
        "L-equivalent hyperkähler manifolds with End(T(X)) = Z have rationally Hodge isomorphic transcendental lattices.",
    )
}

pub fn disc_invariance() -> Assumption {
    a(
        "Discriminant invariance under L-equivalence for K3 surfaces",
        "H^2(X,Z)/(NS(X) + T(X)) is isomorphic to A_T(X) for a K3 surface, so L-equivalent K3 surfaces satisfy disc T(X) = disc T(Y).",
    )
}

pub fn picard_not_18() -> Assumption {
    a(
        "Premise: Picard rank is not 18",
        "rho != 18, so T(X) does not have signature (2,2) and T(X) is not isometric to T(X)(-1).",
    )
}

pub fn picard_one() -> Assumption {
    a(
        "Premise: Picard rank one",
        "NS(X) is generated by an ample class H with H^2 = 2g.",
    )
}

pub fn hodge_isometry_established() -> Assumption {
    a(
        "Premise: a Hodge isometry of transcendental lattices is established",
        "T(X) and T(Y) are Hodge isometric, as obtained from the twist correspondence with equal discriminants.",
    )
}

pub fn moduli_birationality() -> Assumption {
    a(
        "Birationality criterion for moduli of sheaves on K3 surfaces with unimodular NS",
        "If T(X) is Hodge isometric to T(M) for a smooth moduli space M of sheaves on S with NS(S) unimodular, then X is birational to M.",
    )
}

pub fn birational_implies_derived() -> Assumption {
    a(
        "Birational K3^[n]-type manifolds are D-equivalent",
        "Birational projective hyperkähler manifolds of K3^[n]-type have equivalent bounded derived categories.",
    )
}
