use num_traits::{One, Signed};

use super::{HodgeEndomorphism, HodgeLatticeModel, TwistRejection};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// An integral map `f: T₁ → T₂` (columns are images of the `T₁` basis)
/// with `det f = ±1` that intertwines the generators: `f·g₁ = g₂·f`.
///
/// Intertwining is the model's stand-in for preserving the Hodge
/// structure; `f` need not preserve the forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeIsomorphism {
    matrix: IntMatrix,
}

impl HodgeIsomorphism {
    pub fn new(
        source: &HodgeLatticeModel,
        target: &HodgeLatticeModel,
        matrix: IntMatrix,
    ) -> Result<Self> {
        let n = source.rank();
        if target.rank() != n || matrix.rows() != n || matrix.cols() != n {
            return Err(Error::InvalidIsomorphism(format!(
                "ranks {} and {} with a {}x{} map",
                source.rank(),
                target.rank(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.determinant()?.abs().is_one() {
            return Err(Error::InvalidIsomorphism(
                "map is not invertible over Z".into(),
            ));
        }
        let f = matrix.to_rational();
        if &f * source.generator() != target.generator() * &f {
            return Err(Error::InvalidIsomorphism(
                "map does not intertwine the endomorphism generators".into(),
            ));
        }
        Ok(HodgeIsomorphism { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// `φ = G₁⁻¹·fᵀ·G₂·f`, the endomorphism with `T₁_φ ≅ T₂` via `f`.
///
/// Checks that the twisted Gram equals the pulled-back form `fᵀ·G₂·f` and
/// that `φ` passes the admissibility test on `T₁`.
pub fn construct_phi_from_isomorphism(
    t1: &HodgeLatticeModel,
    t2: &HodgeLatticeModel,
    f: &HodgeIsomorphism,
) -> Result<HodgeEndomorphism> {
    let fm = f.matrix.to_rational();
    let g1 = t1.lattice().rational_gram();
    let pulled = &(&fm.transpose() * &t2.lattice().rational_gram()) * &fm;
    let phi = &g1.inverse()? * &pulled;
    if &phi.transpose() * &g1 != pulled {
        return Err(Error::AssertionFailed("φᵀ·G₁ differs from fᵀ·G₂·f".into()));
    }
    match t1.is_in_f(&phi) {
        Ok(endo) => Ok(endo),
        Err(Error::TwistRejected(TwistRejection::OutsideAlgebra)) => Err(
            Error::InvalidIsomorphism("induced φ is not in the endomorphism field of T₁".into()),
        ),
        Err(Error::TwistRejected(reason)) => Err(Error::AssertionFailed(format!(
            "induced φ failed admissibility: {reason}"
        ))),
        Err(e) => Err(e),
    }
}

/// `f` intertwines the generators and `fᵀ·G₂·f = G₁`.
pub fn is_hodge_isometry(t1: &HodgeLatticeModel, t2: &HodgeLatticeModel, f: &IntMatrix) -> bool {
    match HodgeIsomorphism::new(t1, t2, f.clone()) {
        Ok(iso) => &(&iso.matrix.transpose() * t2.gram()) * &iso.matrix == *t1.gram(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog, Lattice};
    use crate::linalg::RatMatrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn scalar_model(l: Lattice) -> HodgeLatticeModel {
        HodgeLatticeModel::with_rational_endomorphisms(l)
    }

    #[test]
    fn identity_from_u_to_u2_gives_phi_two() {
        let u = scalar_model(catalog("U").unwrap());
        let u2 = scalar_model(catalog("U").unwrap().rescale(2).unwrap());
        let f = HodgeIsomorphism::new(&u, &u2, IntMatrix::identity(2)).unwrap();
        let phi = construct_phi_from_isomorphism(&u, &u2, &f).unwrap();
        assert_eq!(
            phi.matrix(),
            &RatMatrix::identity(2).scale(&BigRational::from_integer(BigInt::from(2)))
        );
        assert_eq!(u.twist(&phi).unwrap().gram(), u2.gram());
    }

    #[test]
    fn non_scalar_phi_rejected_for_scalar_model() {
        // ⟨2⟩⊕⟨2⟩ to ⟨2⟩⊕⟨8⟩ via the identity: φ = diag(1,4) is not scalar.
        let a = scalar_model(Lattice::from_rows(vec![vec![2, 0], vec![0, 2]]).unwrap());
        let b = scalar_model(Lattice::from_rows(vec![vec![2, 0], vec![0, 8]]).unwrap());
        let f = HodgeIsomorphism::new(&a, &b, IntMatrix::identity(2)).unwrap();
        assert!(matches!(
            construct_phi_from_isomorphism(&a, &b, &f),
            Err(Error::InvalidIsomorphism(_))
        ));
    }

    #[test]
    fn swap_is_a_hodge_isometry_of_u() {
        let u = scalar_model(catalog("U").unwrap());
        let swap = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(is_hodge_isometry(&u, &u, &swap));
        assert!(!is_hodge_isometry(
            &u,
            &u,
            &IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap()
        ));
    }

    #[test]
    fn intertwining_required() {
        let l = Lattice::from_rows(vec![vec![2, 0], vec![0, 4]]).unwrap();
        let g = IntMatrix::from_rows(vec![vec![0, 2], vec![1, 0]])
            .unwrap()
            .to_rational();
        let m = HodgeLatticeModel::new(l, g, true, true).unwrap();
        let swap = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(HodgeIsomorphism::new(&m, &m, swap).is_err());
        // the unit 1 + √2 acts as I + g, with det -1
        let unit = IntMatrix::from_rows(vec![vec![1, 2], vec![1, 1]]).unwrap();
        let f = HodgeIsomorphism::new(&m, &m, unit).unwrap();
        let phi = construct_phi_from_isomorphism(&m, &m, &f).unwrap();
        // ḡ = g, so φ = (1 + g)² = 3 + 2g
        assert_eq!(
            phi.matrix(),
            &IntMatrix::from_rows(vec![vec![3, 4], vec![2, 3]])
                .unwrap()
                .to_rational()
        );
        assert!(HodgeIsomorphism::new(
            &m,
            &m,
            IntMatrix::from_rows(vec![vec![0, 2], vec![1, 0]]).unwrap()
        )
        .is_err());
    }
}
