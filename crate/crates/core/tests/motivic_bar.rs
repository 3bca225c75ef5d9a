use std::time::Instant;

use nmix_core::algebras::{etale_algebra, factor_degrees, tensor_algebra, EtaleSpec};
use nmix_core::coeffs::CoeffRing;
use nmix_core::hopf::FinGroup;
use nmix_core::motivic_bar::{
    bialgebra_check, build_bar, compose_k0, gaussian_corpus, hh_action, transfer, K0HomClass,
};

/// Σ (dim V)² over the complex irreducibles of an abelian group: one
/// character per conjugacy class.
fn peter_weyl_abelian(g: &FinGroup) -> usize {
    let n = g.order();
    assert!((0..n).all(|a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a))), "oracle needs an abelian group");
    let mut classes = std::collections::BTreeSet::new();
    for x in 0..n {
        let class: std::collections::BTreeSet<usize> = (0..n).map(|y| g.mul(g.mul(y, x), g.inv(y))).collect();
        classes.insert(class);
    }
    classes.len()
}

#[test]
fn gaussian_bar_at_two() {
    let t = Instant::now();
    let gs = gaussian_corpus().unwrap();
    let bar = build_bar(&gs, 2, CoeffRing::Rationals).unwrap();
    let s = bar.check_simplicial(2);
    assert!(s.passes(), "{:?}", s.failures);
    assert!(s.checked > 10_000);
    let r = bialgebra_check(&bar).unwrap();
    assert!(r.passes(), "{r:?}");
    assert_eq!(r.h0_dim, peter_weyl_abelian(gs.group()));
    assert!(t.elapsed().as_secs() < 60);
}

#[test]
fn gaussian_h0_is_stable_at_three() {
    let gs = gaussian_corpus().unwrap();
    let two = build_bar(&gs, 2, CoeffRing::Rationals).unwrap().h0_dim().unwrap();
    let three = build_bar(&gs, 3, CoeffRing::Rationals).unwrap();
    assert_eq!(three.term_dims()[3], 24481);
    assert_eq!(three.h0_dim().unwrap(), two);
}

#[test]
fn gaussian_bar_mod_five() {
    let gs = gaussian_corpus().unwrap();
    let bar = build_bar(&gs, 2, CoeffRing::PrimeField(5)).unwrap();
    let r = bialgebra_check(&bar).unwrap();
    assert!(r.passes());
    assert_eq!(r.h0_dim, 2);
}

#[test]
fn orbit_factors_match_tensor_algebras() {
    // (F1 × F2) ⊗ B = F1 ⊗ B × F2 ⊗ B, so factor fields are compared pairwise.
    let gs = gaussian_corpus().unwrap();
    let q = CoeffRing::Rationals;
    for i in 0..gs.len() {
        for j in 0..gs.len() {
            let mut direct = Vec::new();
            for f in gs.generators()[i].spec.polys() {
                for g in gs.generators()[j].spec.polys() {
                    let a = etale_algebra(&EtaleSpec::new(q, vec![f.clone()]).unwrap()).unwrap();
                    let b = etale_algebra(&EtaleSpec::new(q, vec![g.clone()]).unwrap()).unwrap();
                    direct.extend(factor_degrees(&tensor_algebra(&a, &b).unwrap()).unwrap());
                }
            }
            direct.sort_unstable();
            assert_eq!(gs.tensor_factor_degrees(i, j), direct, "pair ({i}, {j})");
        }
    }
}

/// Every equivariant map between the point sets, by brute force.
fn equivariant_maps(gs: &nmix_core::motivic_bar::GeneratorSet, from: usize, to: usize) -> Vec<Vec<usize>> {
    let (xs, xt) = (&gs.generators()[from].points, &gs.generators()[to].points);
    let mut out = Vec::new();
    let total = xt.len().pow(xs.len() as u32);
    for code in 0..total {
        let f: Vec<usize> = (0..xs.len()).map(|k| code / xt.len().pow(k as u32) % xt.len()).collect();
        if xs.is_equivariant(xt, &f) {
            out.push(f);
        }
    }
    out
}

#[test]
fn graphs_compose_like_maps() {
    let gs = gaussian_corpus().unwrap();
    let n = gs.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // Algebra maps a → b are point maps X_b → X_a.
                for g in equivariant_maps(&gs, b, a) {
                    for f in equivariant_maps(&gs, c, b) {
                        let gf: Vec<usize> = f.iter().map(|&y| g[y]).collect();
                        let lhs = compose_k0(
                            &K0HomClass::graph(&gs, a, b, &g).unwrap(),
                            &K0HomClass::graph(&gs, b, c, &f).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(lhs, K0HomClass::graph(&gs, a, c, &gf).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn composition_is_associative_and_hh_is_functorial() {
    let gs = gaussian_corpus().unwrap();
    let q = CoeffRing::Rationals;
    let basis = |s: usize, t: usize| -> Vec<K0HomClass> {
        (0..gs.pair(t, s).orbits.len()).map(|o| K0HomClass::basis(&gs, s, t, o).unwrap()).collect()
    };
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    for f in basis(a, b) {
                        for g in basis(b, c) {
                            for h in basis(c, d) {
                                let l = compose_k0(&compose_k0(&f, &g).unwrap(), &h).unwrap();
                                let r = compose_k0(&f, &compose_k0(&g, &h).unwrap()).unwrap();
                                assert_eq!(l, r);
                            }
                            let gf = compose_k0(&f, &g).unwrap();
                            let v: Vec<_> = (0..gs.points(a)).map(|k| q.from_i64(k as i64 + 2)).collect();
                            let step = hh_action(&g, &hh_action(&f, &v, q).unwrap(), q).unwrap();
                            assert_eq!(step, hh_action(&gf, &v, q).unwrap());
                            assert_eq!(
                                transfer(&gf),
                                compose_k0(&transfer(&g), &transfer(&f)).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }
}
