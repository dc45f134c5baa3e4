//! Hodge-lattice models: a lattice `T` together with a generator `g` of the
//! rational endomorphism field `E = Q(g)` acting on `T ⊗ Q`.
//!
//! The analytic Hodge structure is not represented. Everything downstream
//! only needs the lattice, the field `E` and the Rosati involution, so a
//! model carries exactly that, plus two declared flags (irreducible,
//! K3-type) that callers assert about the structure they are modelling.
//!
//! Matrices act on column vectors of lattice coordinates. For an
//! endomorphism `φ` the twisted form `(x·y)_φ = (φx)·y` has Gram matrix
//! `φᵀ·G`.

mod equivalence;
mod isomorphism;

pub use equivalence::{twists_equivalent, TwistEquivalence};
pub use isomorphism::{construct_phi_from_isomorphism, is_hodge_isometry, HodgeIsomorphism};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{IntMatrix, RatMatrix};
use crate::poly::{minimal_polynomial, Irreducibility, Polynomial};

/// Why an endomorphism does not define a twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistRejection {
    NotInvertible,
    OutsideAlgebra,
    NotRosatiInvariant,
    NotIntegral,
    OddTwist,
}

impl TwistRejection {
    pub fn code(&self) -> &'static str {
        match self {
            TwistRejection::NotInvertible => "not_invertible",
            TwistRejection::OutsideAlgebra => "outside_algebra",
            TwistRejection::NotRosatiInvariant => "not_rosati_invariant",
            TwistRejection::NotIntegral => "not_integral",
            TwistRejection::OddTwist => "odd_twist",
        }
    }
}

impl fmt::Display for TwistRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            TwistRejection::NotInvertible => "endomorphism is not invertible",
            TwistRejection::OutsideAlgebra => "endomorphism is not a polynomial in the generator",
            TwistRejection::NotRosatiInvariant => {
                "endomorphism is not fixed by the Rosati involution"
            }
            TwistRejection::NotIntegral => "endomorphism does not map T into T* (φᵀG not integral)",
            TwistRejection::OddTwist => "twisted form is odd (φᵀG has an odd diagonal entry)",
        };
        f.write_str(msg)
    }
}

/// An element `φ ∈ E` with its admissibility flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeEndomorphism {
    matrix: RatMatrix,
    minimal_polynomial: Polynomial,
    rosati_invariant: bool,
    maps_into_dual: bool,
    twist_even: bool,
}

impl HodgeEndomorphism {
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn minimal_polynomial(&self) -> &Polynomial {
        &self.minimal_polynomial
    }

    pub fn rosati_invariant(&self) -> bool {
        self.rosati_invariant
    }

    pub fn maps_into_dual(&self) -> bool {
        self.maps_into_dual
    }

    pub fn twist_even(&self) -> bool {
        self.twist_even
    }

    /// All three flags hold, so `T_φ` is a well-defined even lattice.
    pub fn is_admissible(&self) -> bool {
        self.rosati_invariant && self.maps_into_dual && self.twist_even
    }
}

/// `N_{E/Q}(φ)` and `m = dim_E(T ⊗ Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldNorm {
    pub norm: BigRational,
    pub m: usize,
}

/// Both sides of `disc(T_φ) = |N(φ)|^m · disc(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistDiscriminantCheck {
    pub disc_original: BigInt,
    pub disc_twisted: BigInt,
    pub norm: BigRational,
    pub m: usize,
    pub predicted: BigRational,
}

#[derive(Clone, Debug)]
pub struct HodgeLatticeModel {
    lattice: Lattice,
    generator: RatMatrix,
    minimal_polynomial: Polynomial,
    generator_powers: Vec<RatMatrix>,
    irreducible: bool,
    k3_type: bool,
}

impl PartialEq for HodgeLatticeModel {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.generator == other.generator
            && self.irreducible == other.irreducible
            && self.k3_type == other.k3_type
    }
}

impl HodgeLatticeModel {
    /// Validates that `Q(g)` is a field whose degree divides the rank and
    /// that it is stable under the Rosati involution.
    pub fn new(
        lattice: Lattice,
        generator: RatMatrix,
        irreducible: bool,
        k3_type: bool,
    ) -> Result<Self> {
        let n = lattice.rank();
        if generator.rows() != n || generator.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{} but the lattice has rank {n}",
                generator.rows(),
                generator.cols()
            )));
        }
        let minimal_polynomial = minimal_polynomial(&generator)?;
        match minimal_polynomial.irreducibility() {
            Irreducibility::Irreducible => {}
            Irreducibility::Reducible => {
                return Err(Error::InvalidGenerator(format!(
                    "minimal polynomial {minimal_polynomial} is reducible, so Q(g) is not a field"
                )))
            }
            Irreducibility::Undecided => {
                return Err(Error::InvalidGenerator(format!(
                    "could not decide irreducibility of {minimal_polynomial}"
                )))
            }
        }
        let degree = minimal_polynomial.degree().expect("nonzero");
        if !n.is_multiple_of(degree) {
            return Err(Error::InvalidGenerator(format!(
                "field degree {degree} does not divide rank {n}"
            )));
        }
        let mut generator_powers = vec![RatMatrix::identity(n)];
        for i in 1..degree {
            let next = &generator_powers[i - 1] * &generator;
            generator_powers.push(next);
        }
        let model = HodgeLatticeModel {
            lattice,
            generator,
            minimal_polynomial,
            generator_powers,
            irreducible,
            k3_type,
        };
        let adjoint = model.rosati_adjoint(&model.generator)?;
        if !model.contains(&adjoint) {
            return Err(Error::InvalidGenerator(
                "Rosati adjoint of the generator is not in Q(g)".into(),
            ));
        }
        Ok(model)
    }

    /// Model with `E = Q` (generator the identity) and both flags declared.
    pub fn with_rational_endomorphisms(lattice: Lattice) -> Self {
        let n = lattice.rank();
        HodgeLatticeModel {
            lattice,
            generator: RatMatrix::identity(n),
            minimal_polynomial: Polynomial::from_integers(&[-1, 1]),
            generator_powers: vec![RatMatrix::identity(n)],
            irreducible: true,
            k3_type: true,
        }
    }

    /// Replaces the declared irreducibility and K3-type flags.
    pub fn with_flags(mut self, irreducible: bool, k3_type: bool) -> Self {
        self.irreducible = irreducible;
        self.k3_type = k3_type;
        self
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn gram(&self) -> &IntMatrix {
        self.lattice.gram()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn generator(&self) -> &RatMatrix {
        &self.generator
    }

    pub fn minimal_polynomial(&self) -> &Polynomial {
        &self.minimal_polynomial
    }

    pub fn irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn k3_type(&self) -> bool {
        self.k3_type
    }

    /// `[E : Q]`.
    pub fn field_degree(&self) -> usize {
        self.generator_powers.len()
    }

    /// `m = dim_E(T ⊗ Q) = rank / [E : Q]`.
    pub fn dimension_over_field(&self) -> usize {
        self.rank() / self.field_degree()
    }

    /// `E = Q`.
    pub fn is_scalar(&self) -> bool {
        self.field_degree() == 1
    }

    /// Same generator and flags on a different lattice of the same rank.
    pub(crate) fn with_lattice(&self, lattice: Lattice) -> Self {
        debug_assert_eq!(lattice.rank(), self.rank());
        HodgeLatticeModel {
            lattice,
            ..self.clone()
        }
    }

    fn check_dims(&self, phi: &RatMatrix) -> Result<()> {
        let n = self.rank();
        if phi.rows() != n || phi.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism is {}x{} but the lattice has rank {n}",
                phi.rows(),
                phi.cols()
            )));
        }
        Ok(())
    }

    /// Coefficients `c` with `φ = Σ cᵢ gⁱ`, `i < [E:Q]`.
    pub fn algebra_coordinates(&self, phi: &RatMatrix) -> Result<Vec<BigRational>> {
        self.check_dims(phi)?;
        let n = self.rank();
        let d = self.field_degree();
        let system = RatMatrix::from_fn(n * n, d, |r, c| {
            self.generator_powers[c].entries()[r].clone()
        });
        let coords = system
            .solve(phi.entries())
            .ok_or(Error::OutsideEndomorphismAlgebra)?;
        Ok(coords)
    }

    pub fn contains(&self, phi: &RatMatrix) -> bool {
        self.algebra_coordinates(phi).is_ok()
    }

    /// `φ̄ = G⁻¹·φᵀ·G`, characterised by `(φx)·y = x·(φ̄y)`.
    pub fn rosati_adjoint(&self, phi: &RatMatrix) -> Result<RatMatrix> {
        self.check_dims(phi)?;
        let g = self.lattice.rational_gram();
        let g_inv = g.inverse()?;
        Ok(&(&g_inv * &phi.transpose()) * &g)
    }

    /// Membership in the Rosati-fixed subfield `K(T)`.
    pub fn is_in_k(&self, phi: &RatMatrix) -> Result<bool> {
        self.algebra_coordinates(phi)?;
        Ok(self.rosati_adjoint(phi)? == *phi)
    }

    /// Flags of an element of `E`, without rejecting.
    pub fn classify(&self, phi: &RatMatrix) -> Result<HodgeEndomorphism> {
        self.algebra_coordinates(phi)?;
        let g = self.lattice.rational_gram();
        let twisted = &phi.transpose() * &g;
        let rosati_invariant = twisted == &g * phi;
        let maps_into_dual = twisted.entries().iter().all(|x| x.is_integer());
        let twist_even =
            maps_into_dual && (0..self.rank()).all(|i| twisted[(i, i)].to_integer().is_even());
        Ok(HodgeEndomorphism {
            matrix: phi.clone(),
            minimal_polynomial: minimal_polynomial(phi)?,
            rosati_invariant,
            maps_into_dual,
            twist_even,
        })
    }

    /// Accepts `φ` iff it is invertible, lies in `Q(g)`, is Rosati-invariant,
    /// maps `T` into `T*`, and yields an even twisted form.
    pub fn is_in_f(&self, phi: &RatMatrix) -> Result<HodgeEndomorphism> {
        self.check_dims(phi)?;
        if phi.determinant()?.is_zero() {
            return Err(Error::TwistRejected(TwistRejection::NotInvertible));
        }
        let endo = match self.classify(phi) {
            Ok(e) => e,
            Err(Error::OutsideEndomorphismAlgebra) => {
                return Err(Error::TwistRejected(TwistRejection::OutsideAlgebra))
            }
            Err(e) => return Err(e),
        };
        if !endo.rosati_invariant {
            return Err(Error::TwistRejected(TwistRejection::NotRosatiInvariant));
        }
        if !endo.maps_into_dual {
            return Err(Error::TwistRejected(TwistRejection::NotIntegral));
        }
        if !endo.twist_even {
            return Err(Error::TwistRejected(TwistRejection::OddTwist));
        }
        Ok(endo)
    }

    /// `q·id`, checked for admissibility.
    pub fn scalar_endomorphism(&self, q: &BigRational) -> Result<HodgeEndomorphism> {
        self.is_in_f(&RatMatrix::identity(self.rank()).scale(q))
    }

    /// Gram matrix `φᵀ·G` of the twisted lattice, after re-checking `φ`.
    pub fn twisted_gram(&self, phi: &HodgeEndomorphism) -> Result<IntMatrix> {
        let endo = self.is_in_f(&phi.matrix)?;
        let g = self.lattice.rational_gram();
        (&endo.matrix.transpose() * &g)
            .to_integer()
            .ok_or_else(|| Error::AssertionFailed("accepted twist has non-integral Gram".into()))
    }

    /// The model `T_φ`: same generator, Gram replaced by `φᵀ·G`.
    pub fn twist(&self, phi: &HodgeEndomorphism) -> Result<HodgeLatticeModel> {
        let gram = self.twisted_gram(phi)?;
        let lattice = Lattice::new(gram)?;
        Ok(self.with_lattice(lattice))
    }

    /// Norm from `E` to `Q`, computed from the minimal polynomial of `φ`:
    /// `N_{Q(φ)/Q}(φ) = (-1)^deg · c₀`, raised to `[E : Q(φ)]`.
    pub fn field_norm(&self, phi: &RatMatrix) -> Result<FieldNorm> {
        self.algebra_coordinates(phi)?;
        let mp = minimal_polynomial(phi)?;
        let sub_degree = mp.degree().expect("nonzero");
        let field_degree = self.field_degree();
        if !field_degree.is_multiple_of(sub_degree) {
            return Err(Error::AssertionFailed(format!(
                "deg Q(φ) = {sub_degree} does not divide [E:Q] = {field_degree}"
            )));
        }
        let mut sub_norm = mp.constant_term();
        if sub_degree % 2 == 1 {
            sub_norm = -sub_norm;
        }
        let norm = pow_rational(&sub_norm, field_degree / sub_degree);
        let m = self.dimension_over_field();
        let det = phi.determinant()?;
        if det != pow_rational(&norm, m) {
            return Err(Error::AssertionFailed(format!(
                "det(φ) = {det} but N(φ)^m = ({norm})^{m}"
            )));
        }
        Ok(FieldNorm { norm, m })
    }

    /// Computes both sides of `disc(T_φ) = |N(φ)|^m · disc(T)` and fails
    /// with [`Error::AssertionFailed`] if they differ.
    pub fn verify_twist_discriminant(
        &self,
        phi: &HodgeEndomorphism,
    ) -> Result<TwistDiscriminantCheck> {
        let twisted = self.twist(phi)?;
        let FieldNorm { norm, m } = self.field_norm(&phi.matrix)?;
        let disc_original = self.lattice.discriminant();
        let disc_twisted = twisted.lattice.discriminant();
        let predicted =
            pow_rational(&norm.abs(), m) * BigRational::from_integer(disc_original.clone());
        if predicted != BigRational::from_integer(disc_twisted.clone()) {
            return Err(Error::AssertionFailed(format!(
                "disc(T_φ) = {disc_twisted} but |N(φ)|^m·disc(T) = {predicted}"
            )));
        }
        Ok(TwistDiscriminantCheck {
            disc_original,
            disc_twisted,
            norm,
            m,
            predicted,
        })
    }

    /// All `q ∈ Q` with `q·id` admissible and `|q|^rank · disc(T) = target`,
    /// in increasing order. Requires `E = Q`.
    pub fn enumerate_scalar_twists(&self, target_disc: &BigInt) -> Result<Vec<BigRational>> {
        if !self.generator.scalar_value().is_some() || !self.is_scalar() {
            return Err(Error::NonScalarGenerator);
        }
        if !target_disc.is_positive() {
            return Ok(Vec::new());
        }
        let n = self.rank() as u32;
        let ratio = BigRational::new(target_disc.clone(), self.lattice.discriminant());
        let (Some(a), Some(b)) = (exact_root(ratio.numer(), n), exact_root(ratio.denom(), n))
        else {
            return Ok(Vec::new());
        };
        let q = BigRational::new(a, b);
        let mut out: Vec<BigRational> = [-q.clone(), q]
            .into_iter()
            .filter(|q| self.scalar_endomorphism(q).is_ok())
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// The non-negative `n`-th root of `x ≥ 0`, if it is an integer.
fn exact_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (r.pow(n) == *x).then_some(r)
}
