use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Lattice;
use crate::linalg::smith_normal_form;

/// Canonical representative of `r` in `[0, 2)`.
pub fn mod_two(r: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    r - (r / &two).floor() * two
}

/// Canonical representative of `r` in `[0, 1)`.
pub fn mod_one(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// The finite quadratic module `A_L = L*/L`.
///
/// Generators are dual vectors written in the lattice basis; the `i`-th
/// generator has order `invariant_factors[i]`. `q_values` live in `Q/2Z`
/// and `b_values` in `Q/Z`, both as canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    invariant_factors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    q_values: Vec<BigRational>,
    b_values: Vec<Vec<BigRational>>,
}

impl DiscriminantForm {
    /// With `P·G·Q = D`, the dual vector `Q·eᵢ/dᵢ` generates the cyclic
    /// factor of order `dᵢ`.
    pub fn of(lattice: &Lattice) -> Self {
        let gram = lattice.rational_gram();
        let snf = smith_normal_form(lattice.gram());
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let d_rat = BigRational::from_integer(d.clone());
            let g: Vec<BigRational> = snf
                .right
                .column(i)
                .into_iter()
                .map(|x| BigRational::from_integer(x) / &d_rat)
                .collect();
            invariant_factors.push(d.clone());
            generators.push(g);
        }
        let q_values = generators
            .iter()
            .map(|g| mod_two(&gram.bilinear(g, g)))
            .collect();
        let b_values = generators
            .iter()
            .map(|g| {
                generators
                    .iter()
                    .map(|h| mod_one(&gram.bilinear(g, h)))
                    .collect()
            })
            .collect();
        DiscriminantForm {
            invariant_factors,
            generators,
            q_values,
            b_values,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    pub fn q_values(&self) -> &[BigRational] {
        &self.q_values
    }

    pub fn b_values(&self) -> &[Vec<BigRational>] {
        &self.b_values
    }

    /// Number of cyclic factors.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `q(Σ aᵢgᵢ)` in `[0, 2)`.
    pub fn q(&self, coeffs: &[BigInt]) -> BigRational {
        let mut total = BigRational::zero();
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = BigRational::from_integer(a.clone());
            total += &a * &a * &self.q_values[i];
            for (j, c) in coeffs.iter().enumerate().skip(i + 1) {
                if c.is_zero() {
                    continue;
                }
                let c = BigRational::from_integer(c.clone());
                total += BigRational::from_integer(2.into()) * &a * c * &self.b_values[i][j];
            }
        }
        mod_two(&total)
    }

    /// `b(Σ aᵢgᵢ, Σ cⱼgⱼ)` in `[0, 1)`.
    pub fn b(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut total = BigRational::zero();
        for (i, a) in x.iter().enumerate() {
            for (j, c) in y.iter().enumerate() {
                if a.is_zero() || c.is_zero() {
                    continue;
                }
                total += BigRational::from_integer(a * c) * &self.b_values[i][j];
            }
        }
        mod_one(&total)
    }

    /// Reduces coefficients into `0 ≤ aᵢ < dᵢ`.
    pub fn normalize(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        coeffs
            .iter()
            .zip(&self.invariant_factors)
            .map(|(a, d)| a.mod_floor(d))
            .collect()
    }

    /// Every element as a normalized coefficient tuple, in lexicographic
    /// order, or `None` when the group has more than `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order().to_u64()?;
        if order > limit {
            return None;
        }
        let factors: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("factor divides a u64 order"))
            .collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut current = vec![0u64; factors.len()];
        loop {
            out.push(current.iter().map(|&a| BigInt::from(a)).collect());
            let mut i = factors.len();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                current[i] += 1;
                if current[i] < factors[i] {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    /// Sorted multiset of `q` over all elements, if `|A| ≤ limit`.
    pub fn q_fingerprint(&self, limit: u64) -> Option<Vec<BigRational>> {
        let mut values: Vec<BigRational> =
            self.elements(limit)?.iter().map(|e| self.q(e)).collect();
        values.sort();
        Some(values)
    }

    /// The dual vector (in lattice coordinates) representing `Σ aᵢgᵢ`.
    pub fn lift(&self, coeffs: &[BigInt]) -> Vec<BigRational> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut v = vec![BigRational::zero(); n];
        for (a, g) in coeffs.iter().zip(&self.generators) {
            let a = BigRational::from_integer(a.clone());
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += &a * gi;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn unimodular_lattices_have_trivial_group() {
        for name in ["U", "E8", "LambdaK3"] {
            let d = catalog(name).unwrap().discriminant_form();
            assert!(d.is_trivial(), "{name}");
            assert_eq!(d.order(), BigInt::one());
        }
    }

    #[test]
    fn u2_discriminant_form() {
        let d = catalog("U")
            .unwrap()
            .rescale(2)
            .unwrap()
            .discriminant_form();
        assert_eq!(d.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
        assert_eq!(d.q_values(), &[r(0, 1), r(0, 1)]);
        assert_eq!(d.b_values()[0][1], r(1, 2));
        assert_eq!(d.q(&[BigInt::one(), BigInt::one()]), r(1, 1));
        assert_eq!(
            d.q_fingerprint(16).unwrap(),
            vec![r(0, 1), r(0, 1), r(0, 1), r(1, 1)]
        );
    }

    #[test]
    fn rank_one_forms() {
        let d = Lattice::rank_one(2).unwrap().discriminant_form();
        assert_eq!(d.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(d.q_values(), &[r(1, 2)]);
        let d = Lattice::rank_one(-2).unwrap().discriminant_form();
        assert_eq!(d.q_values(), &[r(3, 2)]);
    }

    #[test]
    fn generators_are_dual_vectors_of_the_stated_order() {
        let l = Lattice::from_rows(vec![vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]).unwrap();
        let d = l.discriminant_form();
        assert_eq!(d.order(), l.discriminant());
        let g = l.rational_gram();
        for (gen, ord) in d.generators().iter().zip(d.invariant_factors()) {
            // dual: G·x integral
            assert!(g.mul_vec(gen).iter().all(|x| x.is_integer()));
            // order exactly d: d·x ∈ Z^n, and no smaller multiple
            let ord_r = BigRational::from_integer(ord.clone());
            assert!(gen.iter().all(|x| (x * &ord_r).is_integer()));
        }
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(mod_two(&r(-1, 2)), r(3, 2));
        assert_eq!(mod_two(&r(5, 1)), r(1, 1));
        assert_eq!(mod_one(&r(-1, 3)), r(2, 3));
    }
}
