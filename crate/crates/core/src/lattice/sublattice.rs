use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, integer_kernel, smith_normal_form, IntMatrix};

/// A sublattice given by basis rows written in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMatrix,
}

impl PartialEq for Sublattice {
    /// Same ambient form and same Z-span.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.hermite_basis() == other.hermite_basis()
    }
}

impl Sublattice {
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch(format!(
                "basis vectors have {} coordinates but the ambient rank is {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        if basis.rank() != basis.rows() {
            return Err(Error::DependentBasis);
        }
        Ok(Sublattice { ambient, basis })
    }

    pub fn from_rows<I: Into<BigInt>>(ambient: Lattice, rows: Vec<Vec<I>>) -> Result<Self> {
        Sublattice::new(ambient, IntMatrix::from_rows(rows)?)
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis in row Hermite normal form; identifies the Z-span.
    pub fn hermite_basis(&self) -> IntMatrix {
        hermite_normal_form(&self.basis).expect("basis rows are independent")
    }

    /// Induced Gram matrix `B·G·Bᵀ`.
    pub fn gram(&self) -> IntMatrix {
        &(&self.basis * self.ambient.gram()) * &self.basis.transpose()
    }

    /// The induced form as a lattice; fails when it is degenerate.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram()).map_err(|e| match e {
            Error::Degenerate => Error::DegenerateSublattice,
            other => other,
        })
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram().determinant().expect("square").is_zero()
    }

    /// Primitive iff every Smith invariant of the basis matrix is 1.
    pub fn is_primitive(&self) -> bool {
        smith_normal_form(&self.basis)
            .diagonal
            .iter()
            .all(One::is_one)
    }

    /// `ambient ∩ Q·span(S)`.
    pub fn saturation(&self) -> Sublattice {
        let basis = match integer_kernel(&self.basis) {
            None => IntMatrix::identity(self.ambient.rank()),
            Some(k) => integer_kernel(&k).expect("kernel of a proper kernel is nonzero"),
        };
        Sublattice {
            ambient: self.ambient.clone(),
            basis,
        }
    }

    /// `{v ∈ ambient : v·s = 0 for all s ∈ S}` as a sublattice.
    pub fn orthogonal_complement(&self) -> Result<Sublattice> {
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateSublattice);
        }
        let constraints = &self.basis * self.ambient.gram();
        let basis = integer_kernel(&constraints).ok_or_else(|| {
            Error::InvalidModel("orthogonal complement is zero (sublattice has full rank)".into())
        })?;
        Ok(Sublattice {
            ambient: self.ambient.clone(),
            basis,
        })
    }

    /// Whether every basis vector of `self` is orthogonal to every basis
    /// vector of `other`.
    pub fn is_orthogonal_to(&self, other: &Sublattice) -> bool {
        (&(&self.basis * self.ambient.gram()) * &other.basis.transpose()).is_zero()
    }

    /// Coordinates `c` with `cᵀ·B = v`, when `v` lies in the span.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let bt = self.basis.transpose().to_rational();
        let rhs: Vec<_> = v
            .iter()
            .map(|x| num_rational::BigRational::from_integer(x.clone()))
            .collect();
        let c = bt.solve(&rhs)?;
        let back = bt.mul_vec(&c);
        if back != rhs || !c.iter().all(|x| x.is_integer()) {
            return None;
        }
        Some(c.into_iter().map(|x| x.to_integer()).collect())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.iter().all(Zero::is_zero) || self.coordinates_of(v).is_some()
    }
}

/// The orthogonal complement of `s` as a lattice with its induced form.
pub fn orthogonal_complement(s: &Sublattice) -> Result<Lattice> {
    s.orthogonal_complement()?.lattice()
}

pub fn saturation(s: &Sublattice) -> Sublattice {
    s.saturation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog;

    fn u() -> Lattice {
        catalog("U").unwrap()
    }

    #[test]
    fn complement_of_e_plus_f_in_u() {
        let s = Sublattice::from_rows(u(), vec![vec![1, 1]]).unwrap();
        let t = s.orthogonal_complement().unwrap();
        assert!(t.is_orthogonal_to(&s));
        assert!(t.contains(&[BigInt::from(1), BigInt::from(-1)]));
        let l = t.lattice().unwrap();
        assert_eq!(l.gram(), &IntMatrix::from_rows(vec![vec![-2]]).unwrap());
        assert!(t.is_primitive());
    }

    #[test]
    fn isotropic_line_is_rejected() {
        let s = Sublattice::from_rows(u(), vec![vec![1, 0]]).unwrap();
        assert_eq!(orthogonal_complement(&s), Err(Error::DegenerateSublattice));
    }

    #[test]
    fn complement_in_k3_lattice_has_rank_22_minus_rho() {
        let k3 = catalog("LambdaK3").unwrap();
        let mut v = vec![0i64; 22];
        v[0] = 1;
        v[1] = 1;
        let s = Sublattice::from_rows(k3.clone(), vec![v]).unwrap();
        let t = s.orthogonal_complement().unwrap();
        assert_eq!(t.rank(), 21);
        let mut rows = vec![vec![0i64; 22], vec![0i64; 22]];
        rows[0][0] = 1;
        rows[1][1] = 1;
        let s = Sublattice::from_rows(k3, rows).unwrap();
        assert_eq!(s.orthogonal_complement().unwrap().rank(), 20);
    }

    #[test]
    fn saturation_examples() {
        let s = Sublattice::from_rows(u(), vec![vec![2, 0]]).unwrap();
        let sat = s.saturation();
        assert_eq!(sat, Sublattice::from_rows(u(), vec![vec![1, 0]]).unwrap());
        assert!(!s.is_primitive());
        assert_eq!(sat.saturation(), sat);

        let s = Sublattice::from_rows(u(), vec![vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(
            s.saturation(),
            Sublattice::new(u(), IntMatrix::identity(2)).unwrap()
        );
    }

    #[test]
    fn dependent_basis_rejected() {
        assert_eq!(
            Sublattice::from_rows(u(), vec![vec![1, 1], vec![2, 2]]).unwrap_err(),
            Error::DependentBasis
        );
    }
}
