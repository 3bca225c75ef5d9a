use std::time::Instant;

use nmix_core::coeffs::CoeffRing;
use nmix_core::cubes::{cube_complex, CubeComplexOptions, ExactCatSpec};

fn run(base: &str, ring: CoeffRing) -> (usize, usize, f64) {
    let s = ExactCatSpec::parse_base(base, 2).unwrap();
    let t = Instant::now();
    let r = cube_complex(&s, ring, &CubeComplexOptions::default()).unwrap();
    assert!(r.d_squared_zero && r.degenerate_closed);
    assert_eq!(r.h0_agrees, Some(true));
    (r.homology[0].free_rank, r.homology[1].free_rank, t.elapsed().as_secs_f64())
}

#[test]
fn f3_cap_two() {
    let (h0, h1, secs) = run("f3", CoeffRing::Rationals);
    eprintln!("f3: {secs:.1}s");
    assert_eq!((h0, h1), (1, 0));
}

#[test]
fn f2xf2_cap_two() {
    let (h0, h1, secs) = run("f2xf2", CoeffRing::Rationals);
    eprintln!("f2xf2: {secs:.1}s");
    assert_eq!((h0, h1), (2, 0));
}

#[test]
fn f3_mod_two_sees_units() {
    // K₁(F₃) = ℤ/2 survives ⊗F₂
    let (h0, _, _) = run("f3", CoeffRing::PrimeField(2));
    assert_eq!(h0, 1);
}

#[test]
#[ignore]
fn f2_cap_three_probe() {
    let s = ExactCatSpec::parse_base("f2", 3).unwrap();
    let t = Instant::now();
    let opts = CubeComplexOptions { stop_when_exact: true, budget: 100_000_000, ..Default::default() };
    let r = cube_complex(&s, CoeffRing::Rationals, &opts).unwrap();
    eprintln!("{:?} {:?} {:?} {:.1}s", r.counts, r.homology, r.differential_ranks, t.elapsed().as_secs_f64());
}
