use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use nmix_core::coeffs::{homology, tensor_complex, ChainComplex, CoeffRing, Matrix};
use nmix_core::cubes::{chain_boundary, chain_product, enumerate_cubes, pairing_target, Chain, ExactCatSpec};
use nmix_core::hopf::{antipode_is_involutive, function_hopf, group_algebra, verify_hopf, FinGroup};
use nmix_core::motivic_bar::{compose_k0, gaussian_corpus, hh_action, K0HomClass};
use nmix_core::orbit::{orbit_hom, two_object, Obj};

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, rows * cols)
}

/// Leibniz expansion, fine for n ≤ 4.
fn det(a: &[i64], n: usize) -> i64 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| a[i * n + p[i]]).product::<i64>()
        })
        .sum()
}

/// `C2 → C1 → C0` with `d1 d2 = 0`: split block shape, then conjugated by a
/// unitriangular integer change of basis on `C1`.
fn complex(ring: CoeffRing, a: usize, k: usize, m: usize, c: usize, seed: &[i64]) -> ChainComplex {
    let n1 = k + m;
    let mut it = seed.iter().copied().cycle();
    let mut b = vec![0i64; n1 * a];
    for i in 0..k {
        for j in 0..a {
            b[i * a + j] = it.next().unwrap();
        }
    }
    let mut d = vec![0i64; c * n1];
    for i in 0..c {
        for j in k..n1 {
            d[i * n1 + j] = it.next().unwrap();
        }
    }
    let mut t = vec![0i64; n1 * n1];
    for i in 0..n1 {
        t[i * n1 + i] = 1;
        for j in i + 1..n1 {
            t[i * n1 + j] = it.next().unwrap() % 3;
        }
    }
    // (I + N)⁻¹ = Σ (−N)^k for strictly upper triangular N
    let nil: Vec<i64> = (0..n1 * n1).map(|i| if i / n1 == i % n1 { 0 } else { -t[i] }).collect();
    let mut inv = vec![0i64; n1 * n1];
    let mut power: Vec<i64> = (0..n1 * n1).map(|i| i64::from(i / n1 == i % n1)).collect();
    for _ in 0..n1 {
        for (x, y) in inv.iter_mut().zip(&power) {
            *x += y;
        }
        power = (0..n1 * n1)
            .map(|i| (0..n1).map(|k| power[(i / n1) * n1 + k] * nil[k * n1 + i % n1]).sum())
            .collect();
    }
    let t = Matrix::from_i64(ring, n1, n1, &t).unwrap();
    let inv = Matrix::from_i64(ring, n1, n1, &inv).unwrap();
    let b = t.mul(&Matrix::from_i64(ring, n1, a, &b).unwrap()).unwrap();
    let d = Matrix::from_i64(ring, c, n1, &d).unwrap().mul(&inv).unwrap();
    let d0 = Matrix::zeros(ring, 0, c).unwrap();
    ChainComplex::new(ring, 0, vec![c, n1, a], vec![d0, d, b]).unwrap()
}

fn betti(c: &ChainComplex) -> Vec<usize> {
    (c.lo()..=c.hi()).map(|n| homology(c, n).unwrap().free_rank).collect()
}

fn groups() -> impl Strategy<Value = FinGroup> {
    prop_oneof![
        (1usize..=7).prop_map(FinGroup::cyclic),
        (1usize..=3, 1usize..=3).prop_map(|(a, b)| FinGroup::product(&FinGroup::cyclic(a), &FinGroup::cyclic(b))),
        Just(FinGroup::symmetric3()),
    ]
}

fn rings() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![
        Just(CoeffRing::Rationals),
        Just(CoeffRing::PrimeField(2)),
        Just(CoeffRing::PrimeField(5)),
        Just(CoeffRing::PrimeField(7)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_certified_diagonalization(n in 1usize..=4, m in 1usize..=4, seed in int_matrix(4, 4)) {
        let a = Matrix::from_i64(CoeffRing::Integers, n, m, &seed[..n * m]).unwrap();
        let s = a.smith_normal_form().unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.diagonal.clone());
        let f = &s.invariant_factors;
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let q = Matrix::from_i64(CoeffRing::Rationals, n, m, &seed[..n * m]).unwrap();
        prop_assert_eq!(f.len(), q.rank());
        if n == m {
            let d = det(&seed[..n * n], n);
            let prod = f.iter().fold(BigInt::one(), |acc, x| acc * x);
            let want = if f.len() == n { BigInt::from(d.abs()) } else { BigInt::zero() };
            prop_assert_eq!(if f.len() == n { prod } else { BigInt::zero() }, want);
        }
    }

    #[test]
    fn euler_characteristic_matches_homology(
        ring in rings(),
        (a, k, m, c) in (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3),
        seed in proptest::collection::vec(-4i64..=4, 1..40),
    ) {
        let cx = complex(ring, a, k, m, c, &seed);
        let h = betti(&cx);
        let chi: i64 = h.iter().enumerate().map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        prop_assert_eq!(chi, cx.euler_characteristic());
    }

    #[test]
    fn integral_free_rank_is_rational_rank(
        (a, k, m, c) in (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3),
        seed in proptest::collection::vec(-4i64..=4, 1..40),
    ) {
        let z = complex(CoeffRing::Integers, a, k, m, c, &seed);
        let q = complex(CoeffRing::Rationals, a, k, m, c, &seed);
        prop_assert_eq!(betti(&z), betti(&q));
    }

    #[test]
    fn kunneth_over_fields(
        ring in rings(),
        x in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2),
        y in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2),
        seed in proptest::collection::vec(-4i64..=4, 1..30),
    ) {
        let c = complex(ring, x.0, x.1, x.2, x.3, &seed);
        let d = complex(ring, y.0, y.1, y.2, y.3, &seed[seed.len() / 2..]);
        let (hc, hd) = (betti(&c), betti(&d));
        let t = tensor_complex(&c, &d).unwrap();
        let ht = betti(&t);
        for (n, &r) in ht.iter().enumerate() {
            let want: usize = (0..=n).filter(|&i| i < hc.len() && n - i < hd.len()).map(|i| hc[i] * hd[n - i]).sum();
            prop_assert_eq!(r, want, "degree {}", n);
        }
    }

    #[test]
    fn finite_group_hopf_algebras(g in groups(), ring in rings()) {
        for h in [function_hopf(&g, ring), group_algebra(&g, ring)] {
            prop_assert!(verify_hopf(&h).passes());
            prop_assert_eq!(h.dim(), g.order());
            prop_assert!(antipode_is_involutive(&h));
        }
    }

    #[test]
    fn perturbed_counit_is_caught(g in groups(), i in 0usize..42, delta in 1i64..4) {
        let mut h = function_hopf(&g, CoeffRing::Rationals);
        h.perturb_counit(i % g.order(), delta);
        prop_assert!(!verify_hopf(&h).passes());
    }

    #[test]
    fn orbit_hom_is_shift_invariant(x in 0usize..2, y in 0usize..2, m in -3i64..=3, n in -3i64..=3, k in -3i64..=3) {
        let (cat, tw) = two_object(CoeffRing::Rationals).unwrap();
        let h = orbit_hom(&cat, &tw, &Obj::basic(x, m), &Obj::basic(y, n)).unwrap();
        let shifted = orbit_hom(&cat, &tw, &Obj::basic(x, m + k), &Obj::basic(y, n + k)).unwrap();
        prop_assert_eq!(h, shifted);
    }

    #[test]
    fn k0_composition_is_associative_and_acts_functorially(
        objs in proptest::collection::vec(0usize..3, 4),
        coeffs in proptest::collection::vec(-3i64..=3, 48),
        v in proptest::collection::vec(-5i64..=5, 4),
    ) {
        let gs = gaussian_corpus().unwrap();
        let mut it = coeffs.into_iter().cycle();
        let class = |s: usize, t: usize, it: &mut dyn Iterator<Item = i64>| {
            let r = gs.pair(t, s).orbits.len();
            let c: Vec<i64> = (0..r).map(|_| it.next().unwrap()).collect();
            K0HomClass::from_orbits(&gs, s, t, &c).unwrap()
        };
        let f = class(objs[0], objs[1], &mut it);
        let g = class(objs[1], objs[2], &mut it);
        let h = class(objs[2], objs[3], &mut it);
        let left = compose_k0(&compose_k0(&f, &g).unwrap(), &h).unwrap();
        let right = compose_k0(&f, &compose_k0(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left.entries(), right.entries());

        let q = CoeffRing::Rationals;
        let x: Vec<_> = (0..gs.points(objs[0])).map(|i| q.from_i64(v[i % v.len()])).collect();
        let gf = compose_k0(&f, &g).unwrap();
        let once = hh_action(&gf, &x, q).unwrap();
        let twice = hh_action(&g, &hh_action(&f, &x, q).unwrap(), q).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn boundary_squares_to_zero_on_cube_products(i in 0usize..1000, j in 0usize..1000) {
        let s = ExactCatSpec::new(vec![2], 2).unwrap();
        let t = pairing_target(&s, &s).unwrap();
        let ones = enumerate_cubes(&s, 1, 100_000).unwrap();
        let (a, b) = (&ones[i % ones.len()], &ones[j % ones.len()]);
        let x: Chain = [(a.clone(), 1)].into();
        let y: Chain = [(b.clone(), 1)].into();
        let p = chain_product(&s, &x, &s, &y, &t).unwrap();
        prop_assert!(chain_boundary(&t, &chain_boundary(&t, &p)).is_empty());
    }
}
