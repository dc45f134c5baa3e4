//! Lattice-level models of K3 surfaces and of hyperkähler manifolds of
//! K3^[n]-type: an ambient lattice, a primitive Néron–Severi sublattice and
//! its orthogonal complement carrying a Hodge-lattice model.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hodge::HodgeLatticeModel;
use crate::lattice::{catalog, Lattice, Signature, Sublattice};
use crate::linalg::{IntMatrix, RatMatrix};

/// Sublattice data shared by both model kinds.
#[derive(Clone, Debug, PartialEq)]
struct Decomposition {
    ambient: Lattice,
    ns: Sublattice,
    t: Sublattice,
    t_model: HodgeLatticeModel,
}

fn require_signature(what: &str, got: Signature, expected: Signature) -> Result<()> {
    if got != expected {
        return Err(Error::InvalidModel(format!(
            "{what} has signature {got}, expected {expected}"
        )));
    }
    Ok(())
}

impl Decomposition {
    /// Checks primitivity of NS, the NS and T signatures against the
    /// ambient's `(3, r-3)`, and attaches the generator to T.
    fn build(
        ambient: Lattice,
        ns_basis: IntMatrix,
        endo_generator: Option<RatMatrix>,
    ) -> Result<Self> {
        let r = ambient.rank();
        require_signature(
            "ambient lattice",
            ambient.signature(),
            Signature::new(3, r.saturating_sub(3)),
        )?;
        let ns = Sublattice::new(ambient.clone(), ns_basis)?;
        if !ns.is_primitive() {
            return Err(Error::InvalidModel(
                "NS basis spans a non-primitive sublattice".into(),
            ));
        }
        let rho = ns.rank();
        let ns_lattice = ns.lattice()?;
        require_signature("NS", ns_lattice.signature(), Signature::new(1, rho - 1))?;
        let t = ns.orthogonal_complement()?;
        let t_lattice = t.lattice()?;
        require_signature("T", t_lattice.signature(), Signature::new(2, r - rho - 2))?;
        let t_model = match endo_generator {
            None => HodgeLatticeModel::with_rational_endomorphisms(t_lattice),
            Some(g) => HodgeLatticeModel::new(t_lattice, g, true, true)?,
        };
        Ok(Decomposition {
            ambient,
            ns,
            t,
            t_model,
        })
    }
}

/// `(Λ, NS, T)` with `Λ` even unimodular of signature `(3,19)`.
#[derive(Clone, Debug, PartialEq)]
pub struct K3SurfaceModel {
    inner: Decomposition,
}

impl K3SurfaceModel {
    /// `endo_generator` is written in the computed basis of `T` (see
    /// [`K3SurfaceModel::transcendental`]); `None` means `E = Q`.
    pub fn new(
        ambient: Lattice,
        ns_basis: IntMatrix,
        endo_generator: Option<RatMatrix>,
    ) -> Result<Self> {
        if ambient.rank() != 22 || !ambient.is_unimodular() {
            return Err(Error::InvalidModel(
                "K3 ambient lattice must be unimodular of rank 22".into(),
            ));
        }
        let inner = Decomposition::build(ambient, ns_basis, endo_generator)?;
        let model = K3SurfaceModel { inner };
        let (ns, t) = (
            model.ns_lattice().discriminant(),
            model.t_lattice().discriminant(),
        );
        if ns != t {
            return Err(Error::AssertionFailed(format!(
                "disc(NS) = {ns} differs from disc(T) = {t} in a unimodular ambient"
            )));
        }
        Ok(model)
    }

    /// Model inside the catalog lattice `Λ_K3`.
    pub fn in_k3_lattice(ns_basis: IntMatrix, endo_generator: Option<RatMatrix>) -> Result<Self> {
        K3SurfaceModel::new(catalog("LambdaK3")?, ns_basis, endo_generator)
    }

    pub fn ambient(&self) -> &Lattice {
        &self.inner.ambient
    }

    pub fn ns(&self) -> &Sublattice {
        &self.inner.ns
    }

    pub fn transcendental(&self) -> &Sublattice {
        &self.inner.t
    }

    pub fn t_model(&self) -> &HodgeLatticeModel {
        &self.inner.t_model
    }

    pub fn ns_lattice(&self) -> Lattice {
        self.inner.ns.lattice().expect("validated on construction")
    }

    pub fn t_lattice(&self) -> Lattice {
        self.inner.t_model.lattice().clone()
    }

    pub fn picard_rank(&self) -> usize {
        self.inner.ns.rank()
    }

    /// `|Λ / (NS ⊕ T)|`, which equals `disc(T)`.
    pub fn glue_index(&self) -> Result<BigInt> {
        glue_index(self.ambient(), self.ns(), self.transcendental())
    }
}

/// `(H, NS, T)` for a caller-supplied even ambient of signature
/// `(3, rank-3)`, such as a BBF lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperkahlerModel {
    inner: Decomposition,
    n: Option<u32>,
}

impl HyperkahlerModel {
    pub fn new(
        ambient: Lattice,
        ns_basis: IntMatrix,
        endo_generator: Option<RatMatrix>,
        n: Option<u32>,
    ) -> Result<Self> {
        Ok(HyperkahlerModel {
            inner: Decomposition::build(ambient, ns_basis, endo_generator)?,
            n,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.inner.ambient
    }

    pub fn ns(&self) -> &Sublattice {
        &self.inner.ns
    }

    pub fn transcendental(&self) -> &Sublattice {
        &self.inner.t
    }

    pub fn t_model(&self) -> &HodgeLatticeModel {
        &self.inner.t_model
    }

    pub fn ns_lattice(&self) -> Lattice {
        self.inner.ns.lattice().expect("validated on construction")
    }

    pub fn t_lattice(&self) -> Lattice {
        self.inner.t_model.lattice().clone()
    }

    pub fn picard_rank(&self) -> usize {
        self.inner.ns.rank()
    }

    /// The `n` of K3^[n]-type, if declared. Informational only.
    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn glue_index(&self) -> Result<BigInt> {
        glue_index(self.ambient(), self.ns(), self.transcendental())
    }

    /// `disc(T) / |H / (NS ⊕ T)|`: how far the injection of the glue group
    /// into `A_T` is from being onto.
    pub fn glue_defect(&self) -> Result<BigInt> {
        let index = self.glue_index()?;
        let disc = self.t_lattice().discriminant();
        let (q, r) = disc.div_rem(&index);
        if !r.is_zero() {
            return Err(Error::AssertionFailed(format!(
                "glue index {index} does not divide disc(T) = {disc}"
            )));
        }
        Ok(q)
    }
}

/// `Λ_K3 ⊕ ⟨-2(n-1)⟩`, the usual choice of BBF lattice for K3^[n]-type.
/// The label marks it as a convention rather than derived data.
pub fn k3n_ambient(n: u32) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::InvalidModel("K3^[n] ambient needs n >= 2".into()));
    }
    let extra = -2 * (i64::from(n) - 1);
    Ok(catalog("LambdaK3")?
        .direct_sum(&Lattice::rank_one(extra)?)
        .with_label(format!("LambdaK3+<{extra}> (conventional)")))
}

/// `|H / (S ⊕ T)|` for orthogonal sublattices of full total rank.
///
/// Computed twice: as `|det|` of the stacked bases (the coset count) and
/// from `index² = disc(S)·disc(T)/disc(H)`. A disagreement is an internal
/// error.
pub fn glue_index(h: &Lattice, s: &Sublattice, t: &Sublattice) -> Result<BigInt> {
    if s.ambient() != h || t.ambient() != h {
        return Err(Error::InvalidGlue(
            "sublattices live in a different ambient".into(),
        ));
    }
    if !s.is_orthogonal_to(t) {
        return Err(Error::InvalidGlue("S and T are not orthogonal".into()));
    }
    if s.rank() + t.rank() != h.rank() {
        return Err(Error::InvalidGlue(format!(
            "ranks {} + {} do not add up to {}",
            s.rank(),
            t.rank(),
            h.rank()
        )));
    }
    let stacked = s.basis().vstack(t.basis())?;
    let count = stacked.determinant()?.abs();
    if count.is_zero() {
        return Err(Error::InvalidGlue(
            "S ⊕ T does not have finite index".into(),
        ));
    }
    let ds = s.lattice()?.discriminant();
    let dt = t.lattice()?.discriminant();
    let (square, rem) = (ds * dt).div_rem(&h.discriminant());
    let root = square.sqrt();
    if !rem.is_zero() || &root * &root != square || root != count {
        return Err(Error::AssertionFailed(format!(
            "coset count {count} disagrees with disc(S)·disc(T)/disc(H) = {square}"
        )));
    }
    Ok(count)
}

/// Anything carrying a transcendental lattice.
pub trait TranscendentalData {
    fn transcendental_lattice(&self) -> Lattice;
    /// Whether unequal discriminants certify that no L-equivalence exists.
    fn certifies_disc_obstruction(&self) -> bool;
}

impl TranscendentalData for K3SurfaceModel {
    fn transcendental_lattice(&self) -> Lattice {
        self.t_lattice()
    }

    fn certifies_disc_obstruction(&self) -> bool {
        true
    }
}

impl TranscendentalData for HyperkahlerModel {
    fn transcendental_lattice(&self) -> Lattice {
        self.t_lattice()
    }

    fn certifies_disc_obstruction(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscCheck {
    pub disc_x: BigInt,
    pub disc_y: BigInt,
    pub passed: bool,
    /// False for hyperkähler input, where the result only feeds other
    /// arguments as a necessary condition.
    pub certified: bool,
}

impl DiscCheck {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn scope(&self) -> &'static str {
        if self.certified {
            "certified"
        } else {
            "necessary_condition_input"
        }
    }
}

/// Compares `disc(T)`; L-equivalent K3 surfaces have equal values.
pub fn l_equivalence_disc_check(
    x: &dyn TranscendentalData,
    y: &dyn TranscendentalData,
) -> DiscCheck {
    let disc_x = x.transcendental_lattice().discriminant();
    let disc_y = y.transcendental_lattice().discriminant();
    DiscCheck {
        passed: disc_x == disc_y,
        certified: x.certifies_disc_obstruction() && y.certifies_disc_obstruction(),
        disc_x,
        disc_y,
    }
}

/// Basis rows for NS given by vectors in `Λ_K3` coordinates.
pub fn ns_basis(rows: Vec<Vec<i64>>) -> Result<IntMatrix> {
    IntMatrix::from_rows(rows)
}

/// The vector `e + f` of the `k`-th copy of `U` in `Λ_K3`, of norm 2.
pub fn k3_diagonal_vector(k: usize) -> Vec<i64> {
    let mut v = vec![0i64; 22];
    v[2 * k] = 1;
    v[2 * k + 1] = 1;
    v
}
