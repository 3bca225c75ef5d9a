use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::cube::{coord, pow3, Cube};
use super::{ExactCatSpec, Mor, MAX_DIM_CAP};
use crate::error::{invalid, Error, Result};

/// Formal integer combination of cubes.
pub type Chain = BTreeMap<Cube, i64>;

/// Category receiving `E ⊗ E'`: same factors, dimension cap `D·D'`.
pub fn pairing_target(a: &ExactCatSpec, b: &ExactCatSpec) -> Result<ExactCatSpec> {
    if a.primes() != b.primes() {
        return Err(invalid!("tensor pairing needs the same base, got {} and {}", a.describe(), b.describe()));
    }
    let cap = a.dim_cap() * b.dim_cap();
    if cap > MAX_DIM_CAP {
        return Err(Error::Unsupported(format!(
            "pairing lands in dimension cap {cap}, above the supported {MAX_DIM_CAP}"
        )));
    }
    ExactCatSpec::new(a.primes().to_vec(), cap)
}

/// The 0-cube on the base ring itself, unit for the pairing.
pub fn unit_cube(spec: &ExactCatSpec) -> Result<Cube> {
    let ones = alloc::vec![1u8; spec.factors()];
    spec.object(&ones)
        .map(Cube::point)
        .ok_or_else(|| invalid!("the base ring does not fit under the dimension cap"))
}

fn tensor_obj(t: &ExactCatSpec, sa: &ExactCatSpec, a: u16, sb: &ExactCatSpec, b: u16) -> Result<u16> {
    let dims: Vec<u8> = sa.dims(a).iter().zip(sb.dims(b)).map(|(x, y)| x * y).collect();
    t.object(&dims)
        .ok_or_else(|| invalid!("tensor product of dimensions {dims:?} exceeds the cap"))
}

/// Blockwise Kronecker product `f ⊗ g`.
fn tensor_mor(t: &ExactCatSpec, sa: &ExactCatSpec, f: &Mor, sb: &ExactCatSpec, g: &Mor) -> Result<Mor> {
    let src = tensor_obj(t, sa, f.src, sb, g.src)?;
    let tgt = tensor_obj(t, sa, f.tgt, sb, g.tgt)?;
    let mut out = t.zero_mor(src, tgt);
    let bf: Vec<_> = sa.blocks(f.src, f.tgt).collect();
    let bg: Vec<_> = sb.blocks(g.src, g.tgt).collect();
    let bo: Vec<_> = t.blocks(src, tgt).collect();
    for k in 0..t.factors() {
        let (of, rf, cf, p) = bf[k];
        let (og, rg, cg, _) = bg[k];
        let oo = bo[k].0;
        let w = cf * cg;
        for i1 in 0..rf {
            for j1 in 0..cf {
                let x = f.e[of + i1 * cf + j1] as u64;
                for i2 in 0..rg {
                    for j2 in 0..cg {
                        let y = g.e[og + i2 * cg + j2] as u64;
                        out.e[oo + (i1 * rg + i2) * w + j1 * cg + j2] = (x * y % p) as u8;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `c1 · c2`, an (m+n)-cube with vertex `(α, β) ↦ c1(α) ⊗ c2(β)`; the first
/// `m` directions carry `f ⊗ id`, the last `n` carry `id ⊗ g`.
pub fn cube_pairing(
    sa: &ExactCatSpec,
    c1: &Cube,
    sb: &ExactCatSpec,
    c2: &Cube,
    target: &ExactCatSpec,
) -> Result<Cube> {
    let (m, n) = (c1.n(), c2.n());
    let nn = m + n;
    let mut objs = Vec::with_capacity(pow3(nn));
    for beta in 0..pow3(n) {
        for alpha in 0..pow3(m) {
            objs.push(tensor_obj(target, sa, c1.vertex(alpha), sb, c2.vertex(beta))?);
        }
    }
    let mut arrows = alloc::vec![target.zero_mor(0, 0); 2 * nn * pow3(nn.saturating_sub(1)) * usize::from(nn > 0)];
    for v in 0..pow3(nn) {
        let (alpha, beta) = (v % pow3(m), v / pow3(m));
        for k in 0..nn {
            if coord(v, k) == 1 {
                continue;
            }
            let mor = if k < m {
                tensor_mor(target, sa, c1.arrow(k, alpha), sb, &sb.identity(c2.vertex(beta)))?
            } else {
                tensor_mor(target, sa, &sa.identity(c1.vertex(alpha)), sb, c2.arrow(k - m, beta))?
            };
            arrows[super::cube::arrow_slot(nn, k, v)] = mor;
        }
    }
    Cube::new(target, nn, objs, arrows)
}

/// Normalized boundary of a chain; degenerate cubes and faces are zero.
pub fn chain_boundary(spec: &ExactCatSpec, x: &Chain) -> Chain {
    let mut out = Chain::new();
    for (c, &a) in x {
        if c.is_degenerate(spec) {
            continue;
        }
        for i in 0..c.n() {
            for j in [-1i8, 0, 1] {
                let f = c.face(i, j);
                if f.is_degenerate(spec) {
                    continue;
                }
                let sign = if ((i + 1) as i64 + j as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                *out.entry(f).or_insert(0) += sign * a;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Bilinear extension of [`cube_pairing`], degenerate products dropped.
pub fn chain_product(
    sa: &ExactCatSpec,
    x: &Chain,
    sb: &ExactCatSpec,
    y: &Chain,
    target: &ExactCatSpec,
) -> Result<Chain> {
    let mut out = Chain::new();
    for (c1, &a) in x {
        for (c2, &b) in y {
            let c = cube_pairing(sa, c1, sb, c2, target)?;
            if !c.is_degenerate(target) {
                *out.entry(c).or_insert(0) += a * b;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// `d(c1·c2) − d(c1)·c2 − (−1)^m c1·d(c2)` on normalized chains; empty when
/// the Leibniz identity holds.
pub fn leibniz_defect(
    sa: &ExactCatSpec,
    c1: &Cube,
    sb: &ExactCatSpec,
    c2: &Cube,
    target: &ExactCatSpec,
) -> Result<Chain> {
    let one = |c: &Cube| -> Chain { [(c.clone(), 1i64)].into_iter().collect() };
    let (x, y) = (one(c1), one(c2));
    let lhs = chain_boundary(target, &chain_product(sa, &x, sb, &y, target)?);
    let left = chain_product(sa, &chain_boundary(sa, &x), sb, &y, target)?;
    let right = chain_product(sa, &x, sb, &chain_boundary(sb, &y), target)?;
    let sign = if c1.n().is_multiple_of(2) { 1 } else { -1 };
    let mut out = lhs;
    for (c, v) in left {
        *out.entry(c).or_insert(0) -= v;
    }
    for (c, v) in right {
        *out.entry(c).or_insert(0) -= sign * v;
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::enumerate_cubes;

    #[test]
    fn unit_acts_trivially_on_dimensions() {
        let s = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        let t = pairing_target(&s, &s).unwrap();
        let u = unit_cube(&s).unwrap();
        for c in enumerate_cubes(&s, 1, 10_000).unwrap() {
            let p = cube_pairing(&s, &u, &s, &c, &t).unwrap();
            let dims: Vec<&[u8]> = p.objs().iter().map(|&o| t.dims(o)).collect();
            let want: Vec<&[u8]> = c.objs().iter().map(|&o| s.dims(o)).collect();
            assert_eq!(dims, want);
        }
    }

    #[test]
    fn leibniz_on_low_degrees() {
        let s = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        let t = pairing_target(&s, &s).unwrap();
        let mut cubes = enumerate_cubes(&s, 0, 100).unwrap();
        cubes.extend(enumerate_cubes(&s, 1, 10_000).unwrap());
        let mut nonzero = 0;
        for a in &cubes {
            for b in &cubes {
                assert!(leibniz_defect(&s, a, &s, b, &t).unwrap().is_empty());
                if !chain_product(&s, &[(a.clone(), 1)].into(), &s, &[(b.clone(), 1)].into(), &t)
                    .unwrap()
                    .is_empty()
                {
                    nonzero += 1;
                }
            }
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn boundary_squares_to_zero_on_products() {
        let s = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        let t = pairing_target(&s, &s).unwrap();
        let ones = enumerate_cubes(&s, 1, 10_000).unwrap();
        for a in ones.iter().take(6) {
            for b in ones.iter().take(6) {
                let x = chain_product(&s, &[(a.clone(), 1)].into(), &s, &[(b.clone(), 1)].into(), &t).unwrap();
                assert!(chain_boundary(&t, &chain_boundary(&t, &x)).is_empty());
            }
        }
    }

    #[test]
    fn mismatched_bases_and_large_caps_fail() {
        let a = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        let b = ExactCatSpec::new(alloc::vec![3], 2).unwrap();
        assert!(pairing_target(&a, &b).is_err());
        let c = ExactCatSpec::new(alloc::vec![2], 3).unwrap();
        assert!(matches!(pairing_target(&c, &a), Err(Error::Unsupported(_))));
    }
}
