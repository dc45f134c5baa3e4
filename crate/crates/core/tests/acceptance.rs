//! The acceptance suite. Runs as a plain program and prints one line per
//! criterion; exits non-zero if any fails. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};

use common::*;
use hodgelat::certify::{
    certify_hk_fourfold, certify_l_implies_d, certify_l_implies_d_models,
    certify_moduli_unimodular, certify_t_implies_d, replay_certificate, EquivalenceCertificate,
    HkFourfoldInput, Verdict,
};
use hodgelat::hodge::{
    construct_phi_from_isomorphism, twists_equivalent, HodgeIsomorphism, HodgeLatticeModel,
    TwistEquivalence,
};
use hodgelat::isometry::{
    embeds_primitively_in_k3_lattice, lattices_isometric, IsometryVerdict, SearchBounds,
};
use hodgelat::k3::{glue_index, k3_diagonal_vector, ns_basis, K3SurfaceModel};
use hodgelat::lattice::{catalog, Lattice, Signature, Sublattice};
use hodgelat::linalg::{IntMatrix, RatMatrix};
use hodgelat::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn scalar_model(g: &Mat) -> HodgeLatticeModel {
    HodgeLatticeModel::with_rational_endomorphisms(lattice(g))
}

/// `⟨2⟩ ⊕ ⟨2k⟩` with `g² = k`, `E = Q(√k)`.
fn quadratic_model(k: i64) -> HodgeLatticeModel {
    let l = Lattice::from_rows(vec![vec![2, 0], vec![0, 2 * k]]).unwrap();
    let g = IntMatrix::from_rows(vec![vec![0, k], vec![1, 0]])
        .unwrap()
        .to_rational();
    HodgeLatticeModel::new(l, g, true, true).unwrap()
}

fn rat_from(m: &Mat) -> RatMatrix {
    to_int_matrix(m).to_rational()
}

fn c1_catalog() -> Outcome {
    let expected = [
        ("U", u(), Signature::new(1, 1)),
        ("E8", e8(), Signature::new(8, 0)),
        (
            "LambdaK3",
            {
                let e8m = scale(&e8(), -1);
                block(&block(&block(&block(&u(), &u()), &u()), &e8m), &e8m)
            },
            Signature::new(3, 19),
        ),
    ];
    for (name, oracle_gram, sig) in expected {
        let l = catalog(name).map_err(|e| e.to_string())?;
        ensure!(
            l.discriminant() == BigInt::from(1),
            "disc({name}) = {}",
            l.discriminant()
        );
        ensure!(det(&oracle_gram).abs() == 1, "oracle det({name}) != ±1");
        ensure!(
            l.signature() == sig,
            "signature({name}) = {}",
            l.signature()
        );
        let g = from_int_matrix(l.gram());
        ensure!((0..g.len()).all(|i| g[i][i] % 2 == 0), "{name} is not even");
        // Even unimodular of signature (3,19) is unique in its genus, so only
        // the small lattices are matched against the construction.
        if l.rank() <= 8 {
            ensure!(
                lattices_isometric(&l, &lattice(&oracle_gram), SearchBounds::default())
                    .is_isometric(),
                "{name} differs from the Dynkin-diagram construction"
            );
        }
    }
    Ok("U, E8, LambdaK3: disc 1, signatures (1,1), (8,0), (3,19), even".into())
}

fn c2_rescale() -> Outcome {
    let mut rng = rng(2);
    for i in 0..200 {
        let g = random_even(&mut rng, 5, 4);
        let mut n = rng.gen_range(-5i64..=5);
        if n == 0 {
            n = 5;
        }
        let l = lattice(&g);
        let scaled = l.rescale(n).map_err(|e| e.to_string())?;
        let r = g.len() as u32;
        let expected = big(i128::from(n.abs()).pow(r) * det(&g).abs());
        ensure!(
            scaled.discriminant() == expected,
            "case {i}: n = {n}, got {}",
            scaled.discriminant()
        );
        ensure!(
            big(det(&scale(&g, n as i128)).abs()) == expected,
            "oracle disagrees on case {i}"
        );
    }
    Ok("200 random lattices, rank <= 5, |n| <= 5".into())
}

fn c3_twist_discriminant() -> Outcome {
    let lattices: Vec<(&str, Mat)> = vec![
        ("U", u()),
        ("U(2)", scale(&u(), 2)),
        ("E8", e8()),
        ("<2>+<-4>", diag(&[2, -4])),
    ];
    let mut accepted = 0;
    for (name, g) in &lattices {
        let t = scalar_model(g);
        let r = g.len() as u32;
        for a in -3i64..=3 {
            for b in 1i64..=3 {
                if a == 0 || a.gcd(&b) != 1 {
                    continue;
                }
                let Ok(phi) = t.scalar_endomorphism(&q(a, b)) else {
                    continue;
                };
                accepted += 1;
                let check = t
                    .verify_twist_discriminant(&phi)
                    .map_err(|e| format!("{name}, q = {a}/{b}: {e}"))?;
                // disc(qG) = |a/b|^r disc(G), computed on b^r-scaled integers.
                let twisted = from_int_matrix(t.twist(&phi).unwrap().gram());
                let lhs = big(det(&twisted).abs()) * BigInt::from(b).pow(r);
                let rhs = BigInt::from(a.abs()).pow(r) * big(det(g).abs());
                ensure!(lhs == rhs, "{name}, q = {a}/{b}: oracle law fails");
                ensure!(
                    BigRational::from_integer(check.disc_twisted.clone()) == check.predicted,
                    "{name}, q = {a}/{b}"
                );
            }
        }
    }
    ensure!(accepted >= 20, "only {accepted} scalar twists accepted");

    let t = quadratic_model(2);
    let g = t.generator().clone();
    let phi = t.is_in_f(&g).map_err(|e| e.to_string())?;
    let check = t
        .verify_twist_discriminant(&phi)
        .map_err(|e| e.to_string())?;
    ensure!(
        check.norm == q(-2, 1) && check.m == 1,
        "N = {}, m = {}",
        check.norm,
        check.m
    );
    let twisted = from_int_matrix(t.twist(&phi).unwrap().gram());
    ensure!(
        det(&twisted).abs() == 2 * 8,
        "disc(T_g) = {}",
        det(&twisted).abs()
    );
    Ok(format!(
        "{accepted} scalar twists on 4 lattices; x^2 - 2 model: N = -2, m = 1, disc 8 -> 16"
    ))
}

fn c4_round_trip() -> Outcome {
    let mut rng = rng(4);
    let mut done = 0;
    let mut non_scalar = 0;
    while done < 100 {
        let (t1, phi0) = if rng.gen_bool(0.5) {
            let t1 = scalar_model(&random_even(&mut rng, 4, 3));
            let c = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            let phi0 = t1
                .scalar_endomorphism(&q(c, 1))
                .map_err(|e| e.to_string())?;
            (t1, phi0)
        } else {
            let t1 = quadratic_model([2, 3, 5, 6, 7][rng.gen_range(0..5)]);
            let (a, b) = (rng.gen_range(-3i64..=3), rng.gen_range(-2i64..=2));
            if b == 0 {
                continue;
            }
            let id = RatMatrix::identity(2);
            let phi = &id.scale(&q(a, 1)) + &t1.generator().scale(&q(b, 1));
            let Ok(phi0) = t1.is_in_f(&phi) else { continue };
            non_scalar += 1;
            (t1, phi0)
        };
        let n = t1.rank();
        let f = random_unimodular(&mut rng, n, 6);
        let f_inv = unimodular_inverse(&f);
        let twisted = from_int_matrix(&t1.twisted_gram(&phi0).map_err(|e| e.to_string())?);
        let g2 = congruent(&twisted, &f_inv);
        let gen2 = &(&rat_from(&f) * t1.generator()) * &rat_from(&f_inv);
        let t2 =
            HodgeLatticeModel::new(lattice(&g2), gen2, true, true).map_err(|e| e.to_string())?;
        let iso = HodgeIsomorphism::new(&t1, &t2, to_int_matrix(&f)).map_err(|e| e.to_string())?;
        let phi = construct_phi_from_isomorphism(&t1, &t2, &iso)
            .map_err(|e| format!("case {done}: {e}"))?;
        ensure!(
            phi.matrix() == phi0.matrix(),
            "case {done}: recovered a different φ"
        );
        let recovered = from_int_matrix(t1.twist(&phi).unwrap().gram());
        ensure!(
            recovered == congruent(&g2, &f),
            "case {done}: fᵀG₂f differs from the twisted Gram"
        );
        done += 1;
    }
    Ok(format!("100 cases ({non_scalar} with E of degree 2)"))
}

fn c5_scalar_bijection() -> Outcome {
    let t = scalar_model(&u());
    let bounds = SearchBounds::default();
    let mut admissible = Vec::new();
    for a in -3i64..=3 {
        for b in 1i64..=3 {
            if a != 0 && a.gcd(&b) == 1 {
                if let Ok(phi) = t.scalar_endomorphism(&q(a, b)) {
                    admissible.push((a, b, phi));
                }
            }
        }
    }
    ensure!(
        admissible.iter().all(|(_, b, _)| *b == 1),
        "non-integral scalar accepted on U"
    );
    for (a1, _, p1) in &admissible {
        for (a2, _, p2) in &admissible {
            let v = twists_equivalent(&t, p1, p2, bounds).map_err(|e| e.to_string())?;
            // U(-c) ≅ U(c), so the classes are {±c}.
            let expected = a1.abs() == a2.abs();
            match (&v, expected) {
                (TwistEquivalence::Equivalent(h), true) => {
                    let g1 = scale(&u(), *a1 as i128);
                    let g2 = scale(&u(), *a2 as i128);
                    ensure!(
                        congruent(&g2, &from_int_matrix(h)) == g1,
                        "bad witness for {a1} ~ {a2}"
                    );
                }
                (TwistEquivalence::NotEquivalent(_), false) => {}
                _ => return Err(format!("twists {a1} and {a2}: {}", v.state())),
            }
        }
    }
    let one = t.scalar_endomorphism(&q(1, 1)).unwrap();
    let two = t.scalar_endomorphism(&q(2, 1)).unwrap();
    ensure!(
        matches!(
            twists_equivalent(&t, &one, &two, bounds),
            Ok(TwistEquivalence::NotEquivalent(_))
        ),
        "id ~ 2id"
    );
    for (_, _, p) in &admissible {
        match twists_equivalent(&t, p, p, bounds) {
            Ok(TwistEquivalence::Equivalent(h)) if h == IntMatrix::identity(2) => {}
            other => return Err(format!("φ ~ φ gave {other:?}")),
        }
    }
    Ok(format!(
        "{} admissible scalars, classes {{±1}}, {{±2}}, {{±3}}",
        admissible.len()
    ))
}

/// Even lattice of signature (2, r - 2).
fn k3_transcendental(r: usize, extra: i128) -> Mat {
    match r {
        2 => diag(&[2, 2 * extra]),
        3 => block(&u(), &diag(&[2 * extra])),
        _ => {
            let mut g = block(&u(), &vec![vec![2, 1], vec![1, -2 * extra]]);
            while g.len() < r {
                g = block(&g, &diag(&[-2]));
            }
            g
        }
    }
}

fn c6_t_implies_d(certs: &mut Vec<EquivalenceCertificate>) -> Outcome {
    let mut rng = rng(6);
    let mut seen = BTreeMap::new();
    for r in 2..=9usize {
        for extra in 1..=3i128 {
            let gx = k3_transcendental(r, extra);
            ensure!(
                lattice(&gx).signature() == Signature::new(2, r - 2),
                "fixture of rank {r} has signature {}",
                lattice(&gx).signature()
            );
            let f = random_unimodular(&mut rng, r, 8);
            let gy = congruent(&gx, &f);
            let c = certify_t_implies_d(&scalar_model(&gx), &scalar_model(&gy))
                .map_err(|e| format!("rank {r}: {e}"))?;
            let expected = if r == 4 {
                Verdict::AmbiguousTorTminus1
            } else {
                Verdict::DEquivalent
            };
            ensure!(c.verdict == expected, "rank {r}: {}", c.verdict);
            ensure!(
                c.cites("Derived Torelli") == (r != 4),
                "rank {r}: Derived Torelli citation"
            );
            *seen.entry(c.verdict.name()).or_insert(0) += 1;
            certs.push(c);
        }
    }
    let tx = scalar_model(&k3_transcendental(5, 1));
    let ty = scalar_model(&k3_transcendental(5, 2));
    match certify_t_implies_d(&tx, &ty) {
        Err(Error::PremiseRejected(msg))
            if msg.contains("L-equivalent K3 surfaces have equal transcendental discriminants") => {
        }
        other => return Err(format!("unequal discriminants: {other:?}")),
    }
    Ok(format!("ranks 2..9: {seen:?}; unequal disc rejected"))
}

fn c7_shioda_inose(certs: &mut Vec<EquivalenceCertificate>) -> Outcome {
    let mut rng = rng(7);
    for i in 0..50 {
        let g = random_even(&mut rng, 5, 3);
        let r = g.len() as u32;
        ensure!(
            det(&scale(&g, 2)).abs() == 2i128.pow(r) * det(&g).abs(),
            "oracle"
        );
        let t = lattice(&g);
        let t2 = t.rescale(2).unwrap();
        match lattices_isometric(&t, &t2, SearchBounds::default()) {
            IsometryVerdict::NotIsometric { reason } if reason == "discriminant" => {}
            other => return Err(format!("case {i}: {other:?}")),
        }
        let c = certify_l_implies_d(
            &HodgeLatticeModel::with_rational_endomorphisms(t),
            &HodgeLatticeModel::with_rational_endomorphisms(t2),
        )
        .map_err(|e| format!("case {i}: {e}"))?;
        ensure!(
            c.verdict == Verdict::ObstructedNotLEquivalent,
            "case {i}: {}",
            c.verdict
        );
        if i < 10 {
            certs.push(c);
        }
    }
    Ok("50 random T: NotIsometric(discriminant), ObstructedNotLEquivalent".into())
}

fn c8_glue() -> Outcome {
    let mut rng = rng(8);
    let mut glued = 0;
    while glued < 30 {
        let g = random_even(&mut rng, 5, 3);
        let n = g.len();
        if n < 2 {
            continue;
        }
        let v: Vec<i128> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let content = v.iter().fold(0, |acc, &x| gcd(acc, x));
        let norm = mul(&mul(&vec![v.clone()], &g), &transpose(&vec![v.clone()]))[0][0];
        if content != 1 || norm == 0 {
            continue;
        }
        let h = lattice(&g);
        let s = Sublattice::new(h.clone(), to_int_matrix(&vec![v.clone()])).unwrap();
        let t = s.orthogonal_complement().map_err(|e| e.to_string())?;
        let tb = from_int_matrix(t.basis());
        ensure!(tb.len() == n - 1, "complement rank");
        ensure!(
            mul(&mul(&tb, &g), &transpose(&vec![v.clone()]))
                .iter()
                .all(|r| r[0] == 0),
            "not orthogonal"
        );
        let index = glue_index(&h, &s, &t).map_err(|e| e.to_string())?;
        let mut stacked = vec![v.clone()];
        stacked.extend(tb.iter().cloned());
        let disc_t = det(&congruent(&g, &transpose(&tb))).abs();
        ensure!(
            index == big(det(&stacked).abs()),
            "index disagrees with the stacked basis"
        );
        ensure!(
            &index * &index * big(det(&g).abs()) == big(norm.abs() * disc_t),
            "glue identity fails for {g:?}, v = {v:?}"
        );
        glued += 1;
    }

    let k3 = catalog("LambdaK3").unwrap();
    let kg = from_int_matrix(k3.gram());
    let mut done = 0;
    while done < 20 {
        let rho = rng.gen_range(1..=3);
        let rows: Mat = (0..rho)
            .map(|_| {
                (0..22)
                    .map(|j| if j < 10 { rng.gen_range(-2..=2) } else { 0 })
                    .collect()
            })
            .collect();
        let Ok(s) = Sublattice::new(k3.clone(), to_int_matrix(&rows)) else {
            continue;
        };
        let s = s.saturation();
        if !s.is_nondegenerate() {
            continue;
        }
        let t = s.orthogonal_complement().map_err(|e| e.to_string())?;
        let index = glue_index(&k3, &s, &t).map_err(|e| e.to_string())?;
        let disc_t = det(&congruent(&kg, &transpose(&from_int_matrix(t.basis())))).abs();
        let disc_s = det(&congruent(&kg, &transpose(&from_int_matrix(s.basis())))).abs();
        ensure!(
            index == big(disc_t) && disc_s == disc_t,
            "NS {rows:?}: index {index}, disc T {disc_t}"
        );
        done += 1;
    }
    Ok("30 glued overlattices; 20 random NS of rank <= 3 in LambdaK3".into())
}

fn c9_embedding() -> Outcome {
    let a2 = vec![vec![2, -1], vec![-1, 2]];
    let blocks: Vec<(Mat, (usize, usize))> = vec![
        (u(), (1, 1)),
        (diag(&[2]), (1, 0)),
        (diag(&[4]), (1, 0)),
        (diag(&[-2]), (0, 1)),
        (diag(&[-6]), (0, 1)),
        (a2.clone(), (2, 0)),
        (scale(&a2, -1), (0, 2)),
        (e8(), (8, 0)),
        (scale(&e8(), -1), (0, 8)),
    ];
    let mut corpus: Vec<(Mat, (usize, usize))> = Vec::new();
    // Every signature (2, k), k <= 8.
    for k in 0..=8usize {
        let mut g = a2.clone();
        for _ in 0..k {
            g = block(&g, &diag(&[-2]));
        }
        corpus.push((g, (2, k)));
        if k >= 1 {
            let mut g = block(&u(), &diag(&[2]));
            for _ in 1..k {
                g = block(&g, &diag(&[-4]));
            }
            corpus.push((g, (2, k)));
        }
    }
    let mut rng = rng(9);
    for _ in 0..60 {
        let mut g: Mat = Vec::new();
        let mut sig = (0, 0);
        for _ in 0..rng.gen_range(1..=4) {
            let (b, s) = &blocks[rng.gen_range(0..blocks.len())];
            g = if g.is_empty() {
                b.clone()
            } else {
                block(&g, b)
            };
            sig = (sig.0 + s.0, sig.1 + s.1);
        }
        corpus.push((g, sig));
    }
    let (mut yes, mut inconclusive) = (0, 0);
    for (g, (np, nm)) in corpus {
        let n = g.len();
        let f = random_unimodular(&mut rng, n, 4);
        let l = lattice(&congruent(&g, &f));
        ensure!(
            l.signature() == Signature::new(np, nm),
            "signature of {g:?}"
        );
        let v = embeds_primitively_in_k3_lattice(&l);
        let expected = np <= 3 && nm <= 19 && n <= 11;
        ensure!(
            v.embeds() == expected,
            "sig ({np},{nm}) rank {n}: embeds = {}",
            v.embeds()
        );
        if expected {
            yes += 1;
        } else {
            inconclusive += 1;
        }
    }
    Ok(format!(
        "{yes} embed, {inconclusive} inconclusive, none false"
    ))
}

fn c10_hk_table(certs: &mut Vec<EquivalenceCertificate>) -> Outcome {
    use Verdict::*;
    #[rustfmt::skip]
    let table: [(bool, u64, u64, u64, Verdict); 16] = [
        // t_iso, g, d, div(H), verdict
        (true,  5, 16, 2, DEquivalent),
        (true,  5, 16, 1, DEquivalent),
        (true,  5,  6, 2, DEquivalent),
        (true,  5,  6, 1, DEquivalent),
        (true,  3, 16, 2, DEquivalent),
        (true,  3, 16, 1, DEquivalent),
        (true,  3,  6, 2, DEquivalent),
        (true,  3,  6, 1, TwistedDerivedEquivalent),
        (true,  2, 24, 1, DEquivalent),
        (true,  4, 12, 1, TwistedDerivedEquivalent),
        (true,  9,  3, 1, DEquivalent),
        (true,  7, 10, 2, DEquivalent),
        (true,  6,  4, 3, TwistedDerivedEquivalent),
        (false, 5, 16, 2, Unknown),
        (false, 3,  6, 1, Unknown),
        (false, 2,  8, 1, Unknown),
    ];
    for (i, &(t_iso, g, d, div, expected)) in table.iter().enumerate() {
        let c = certify_hk_fourfold(&HkFourfoldInput {
            t_iso,
            g,
            d,
            div_h: Some(div),
            polarization: None,
        })
        .map_err(|e| format!("row {i}: {e}"))?;
        ensure!(
            c.verdict == expected,
            "row {i}: {} instead of {expected}",
            c.verdict
        );
        let cites_untwisted = c.cites("Derived Torelli for K3^[2]");
        let cites_twisted = c.cites("Twisted derived Torelli");
        ensure!(
            cites_untwisted == (expected == DEquivalent),
            "row {i}: citation"
        );
        ensure!(
            cites_twisted == (expected == TwistedDerivedEquivalent),
            "row {i}: citation"
        );
        certs.push(c);
    }
    Ok("16 rows".into())
}

/// `Z^n / G Z^n` as the subgroup of `(Z/d)^n` spanned by the columns of
/// `adj(G)`; each element `k` is the dual vector `k/d`.
fn coset_oracle(g: &Mat) -> (Vec<i128>, Vec<BigRational>) {
    let n = g.len();
    let d = det(g).abs();
    let adj: Mat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Mat = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| g[r][c]).collect())
                        .collect();
                    (if (i + j) % 2 == 0 { 1 } else { -1 }) * det(&minor)
                })
                .collect()
        })
        .collect();
    let reduce = |v: Vec<i128>| v.into_iter().map(|x| x.rem_euclid(d)).collect::<Vec<_>>();
    let gens: Vec<Vec<i128>> = (0..n)
        .map(|j| reduce((0..n).map(|i| adj[i][j]).collect()))
        .collect();
    let mut elems = std::collections::BTreeSet::new();
    elems.insert(vec![0i128; n]);
    let mut frontier = vec![vec![0i128; n]];
    while let Some(x) = frontier.pop() {
        for gen in &gens {
            let y = reduce(x.iter().zip(gen).map(|(a, b)| a + b).collect());
            if elems.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut orders = Vec::new();
    let mut qs = Vec::new();
    for k in &elems {
        let order = (1..=d)
            .find(|t| k.iter().all(|x| (x * t) % d == 0))
            .unwrap();
        orders.push(order);
        let num = mul(&mul(&vec![k.clone()], g), &transpose(&vec![k.clone()]))[0][0];
        let val = BigRational::new(big(num), big(d * d));
        let two = BigRational::from_integer(BigInt::from(2));
        let r = &val - (&val / &two).floor() * &two;
        qs.push(r);
    }
    orders.sort();
    qs.sort();
    (orders, qs)
}

fn c11_snf_oracle() -> Outcome {
    let mut corpus: Vec<Mat> = vec![
        u(),
        scale(&u(), 2),
        diag(&[2, -4]),
        diag(&[2, 2, -2]),
        e8(),
        vec![vec![2, 1], vec![1, -2]],
    ];
    let mut rng = rng(11);
    while corpus.len() < 80 {
        let g = random_even(&mut rng, 4, 3);
        if det(&g).abs() <= 64 {
            corpus.push(g);
        }
    }
    for g in &corpus {
        let l = lattice(g);
        let form = l.discriminant_form();
        let (oracle_orders, oracle_q) = coset_oracle(g);
        ensure!(
            form.order() == big(oracle_orders.len() as i128),
            "|A_L| for {g:?}"
        );
        // Element orders of ⊕ Z/d_i.
        let factors: Vec<i128> = form
            .invariant_factors()
            .iter()
            .map(|f| f.to_i128().unwrap())
            .collect();
        let mut orders = vec![1i128];
        for &f in &factors {
            orders = orders
                .iter()
                .flat_map(|&o| (0..f).map(move |x| o.lcm(&(f / gcd(x, f)))))
                .collect();
        }
        orders.sort();
        ensure!(
            orders == oracle_orders,
            "group structure of {g:?}: {factors:?}"
        );
        let fp = form.q_fingerprint(4096).ok_or("fingerprint missing")?;
        ensure!(fp == oracle_q, "q-values of {g:?}");
        ensure!(
            factors.windows(2).all(|w| w[1] % w[0] == 0) && factors.iter().all(|&f| f > 1),
            "not in SNF: {factors:?}"
        );
        ensure!(!BigInt::is_zero(&l.discriminant()), "degenerate");
    }
    Ok(format!("{} lattices with disc <= 64", corpus.len()))
}

fn mutations(c: &EquivalenceCertificate) -> Vec<EquivalenceCertificate> {
    let mut out = Vec::new();
    for v in Verdict::ALL {
        if v != c.verdict {
            out.push(EquivalenceCertificate {
                verdict: v,
                ..c.clone()
            });
        }
    }
    for i in 0..c.assumptions.len() {
        let mut m = c.clone();
        m.assumptions[i].cite.push('.');
        out.push(m);
        let mut m = c.clone();
        m.assumptions[i].quote.push('.');
        out.push(m);
    }
    for i in 0..c.witness_chain.len() {
        for field in 0..3 {
            let mut m = c.clone();
            let s = &mut m.witness_chain[i];
            match field {
                0 => s.claim.push(' '),
                1 => s.lhs.push('0'),
                _ => s.rhs.push('0'),
            }
            out.push(m);
        }
    }
    out
}

fn c12_replay(mut certs: Vec<EquivalenceCertificate>) -> Outcome {
    let x = K3SurfaceModel::in_k3_lattice(ns_basis(vec![k3_diagonal_vector(0)]).unwrap(), None)
        .unwrap();
    let y = K3SurfaceModel::in_k3_lattice(ns_basis(vec![k3_diagonal_vector(1)]).unwrap(), None)
        .unwrap();
    certs.push(certify_l_implies_d_models(&x, &y).map_err(|e| e.to_string())?);
    certs.push(
        certify_moduli_unimodular(&catalog("U").unwrap(), true, 20).map_err(|e| e.to_string())?,
    );
    certs.push(
        certify_moduli_unimodular(&lattice(&diag(&[2])), true, 21).map_err(|e| e.to_string())?,
    );
    certs.push(
        certify_moduli_unimodular(&catalog("U").unwrap(), false, 20).map_err(|e| e.to_string())?,
    );
    let mut mutated = 0;
    for (i, c) in certs.iter().enumerate() {
        ensure!(
            replay_certificate(c).map_err(|e| e.to_string())?,
            "certificate {i} ({}) fails replay",
            c.verdict
        );
        let reparsed =
            EquivalenceCertificate::from_json(&c.to_json()).map_err(|e| e.to_string())?;
        ensure!(
            reparsed == *c,
            "certificate {i} changes under JSON round trip"
        );
        for m in mutations(c) {
            ensure!(
                !replay_certificate(&m).map_err(|e| e.to_string())?,
                "certificate {i}: mutation replays true: {m:?}"
            );
            mutated += 1;
        }
    }
    Ok(format!(
        "{} certificates replay; {mutated} single-field mutations rejected",
        certs.len()
    ))
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let mut certs = Vec::new();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        results.push((name, outcome));
    };
    run("catalog invariants", &mut c1_catalog);
    run("rescale law", &mut c2_rescale);
    run("twist discriminant law", &mut c3_twist_discriminant);
    run("isomorphism-to-twist round trip", &mut c4_round_trip);
    run("scalar twist classes on U", &mut c5_scalar_bijection);
    run("T-equivalence to D-equivalence", &mut || {
        c6_t_implies_d(&mut certs)
    });
    run("T vs T(2) obstruction", &mut || c7_shioda_inose(&mut certs));
    run("glue identity", &mut c8_glue);
    run("K3 embedding predicate", &mut c9_embedding);
    run("K3^[2] case table", &mut || c10_hk_table(&mut certs));
    run("discriminant groups vs coset oracle", &mut c11_snf_oracle);
    let collected = std::mem::take(&mut certs);
    run("certificate replay", &mut || c12_replay(collected.clone()));

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
