use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::category::{CMor, GradedCat, Obj};
use super::twist::TwistData;
use crate::error::{invalid, Error, Result};

/// Morphism `a → b` of the orbit category: component `i` lies in
/// `Hom(a, b ⊗ O^i)`. Zero components are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMor {
    pub src: Obj,
    pub tgt: Obj,
    pub components: BTreeMap<i64, CMor>,
}

impl OrbitMor {
    pub fn zero(src: &Obj, tgt: &Obj) -> Self {
        OrbitMor {
            src: src.clone(),
            tgt: tgt.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn identity(cat: &GradedCat, a: &Obj) -> Self {
        project(&cat.identity(a))
    }

    /// Single component `f` at index `i`.
    pub fn single(tw: &TwistData, i: i64, f: CMor) -> Result<Self> {
        let tgt = f.tgt.shifted(-i * tw.step());
        if tw.apply_obj(&tgt, i) != f.tgt {
            return Err(invalid!("component target is not a twist of the target"));
        }
        let mut m = OrbitMor::zero(&f.src, &tgt);
        if !f.is_zero() {
            m.components.insert(i, f);
        }
        Ok(m)
    }
}

/// Rank of `Hom(a, b ⊗ O^i)` for each `i` where it is nonzero.
pub fn orbit_hom(cat: &GradedCat, tw: &TwistData, a: &Obj, b: &Obj) -> Result<BTreeMap<i64, usize>> {
    cat.check_obj(a)?;
    cat.check_obj(b)?;
    let tau = tw.step();
    let mut out = BTreeMap::new();
    for &(x, m) in &a.summands {
        for &(y, n) in &b.summands {
            for g in cat.support(x, y) {
                // n + iτ - m = g
                let d = g - n + m;
                if d % tau == 0 {
                    *out.entry(d / tau).or_insert(0) += cat.rank(x, y, g);
                }
            }
        }
    }
    Ok(out)
}

/// `g ∘ f`, with component `i + j` equal to `Σ (g_j ⊗ O^i) ∘ f_i`.
pub fn orbit_compose(cat: &GradedCat, tw: &TwistData, f: &OrbitMor, g: &OrbitMor) -> Result<OrbitMor> {
    if f.tgt != g.src {
        return Err(invalid!("cannot compose orbit morphisms: middle objects differ"));
    }
    let mut out = OrbitMor::zero(&f.src, &g.tgt);
    for (&i, fi) in &f.components {
        for (&j, gj) in &g.components {
            let c = cat.compose(&tw.apply(gj, i), fi)?;
            match out.components.get_mut(&(i + j)) {
                Some(acc) => {
                    for (row, add) in acc.blocks.iter_mut().zip(&c.blocks) {
                        for (v, w) in row.iter_mut().zip(add) {
                            for (p, q) in v.iter_mut().zip(w) {
                                *p = cat.ring().add(p, q);
                            }
                        }
                    }
                }
                None => {
                    out.components.insert(i + j, c);
                }
            }
        }
    }
    out.components.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// π: the projection, concentrated in component 0.
pub fn project(f: &CMor) -> OrbitMor {
    let mut m = OrbitMor::zero(&f.src, &f.tgt);
    if !f.is_zero() {
        m.components.insert(0, f.clone());
    }
    m
}

/// `π(a ⊗ O) ≅ π(a)` and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistIso {
    pub forward: OrbitMor,
    pub inverse: OrbitMor,
}

/// The identity of `a ⊗ O` seen in component 1 of `Hom(a ⊗ O, a)`, with
/// inverse the identity of `a` in component −1 of `Hom(a, a ⊗ O)`.
pub fn twist_projection_iso(cat: &GradedCat, tw: &TwistData, a: &Obj) -> Result<TwistIso> {
    cat.check_obj(a)?;
    if tw.witnesses().is_none() {
        return Err(Error::Unsupported("twist isomorphism needs tensor data".into()));
    }
    let (o, t) = tw.object();
    let ao = cat.tensor_obj(a, &Obj::basic(o, t))?;
    debug_assert_eq!(ao, tw.apply_obj(a, 1));
    let mut forward = OrbitMor::zero(&ao, a);
    forward.components.insert(1, cat.identity(&ao));
    forward.components.retain(|_, c| !c.is_zero());
    let mut inverse = OrbitMor::zero(a, &ao);
    inverse.components.insert(-1, cat.identity(a));
    inverse.components.retain(|_, c| !c.is_zero());
    Ok(TwistIso { forward, inverse })
}

/// Basis orbit morphisms `a → b` with component index in `[-max, max]`.
fn orbit_basis(cat: &GradedCat, tw: &TwistData, a: &Obj, b: &Obj, max: i64) -> Result<Vec<OrbitMor>> {
    let mut out = Vec::new();
    for i in -max..=max {
        for f in cat.hom_basis(a, &tw.apply_obj(b, i)) {
            out.push(OrbitMor::single(tw, i, f)?);
        }
    }
    Ok(out)
}

/// Checks `(h∘g)∘f = h∘(g∘f)` and both unit laws over every basis triple
/// among `objects` with component indices bounded by `max`. Returns
/// `(checked, failures)`.
pub fn associativity_defects(cat: &GradedCat, tw: &TwistData, objects: &[Obj], max: i64) -> Result<(usize, usize)> {
    let (mut checked, mut failed) = (0, 0);
    let mut basis = BTreeMap::new();
    for (p, a) in objects.iter().enumerate() {
        for (q, b) in objects.iter().enumerate() {
            basis.insert((p, q), orbit_basis(cat, tw, a, b, max)?);
        }
    }
    for (&(p, q), fs) in &basis {
        let (ida, idb) = (OrbitMor::identity(cat, &objects[p]), OrbitMor::identity(cat, &objects[q]));
        for f in fs {
            checked += 1;
            if orbit_compose(cat, tw, &ida, f)? != *f || orbit_compose(cat, tw, f, &idb)? != *f {
                failed += 1;
            }
        }
    }
    for p in 0..objects.len() {
        for q in 0..objects.len() {
            for r in 0..objects.len() {
                for s in 0..objects.len() {
                    for f in &basis[&(p, q)] {
                        for g in &basis[&(q, r)] {
                            let gf = orbit_compose(cat, tw, f, g)?;
                            for h in &basis[&(r, s)] {
                                checked += 1;
                                let left = orbit_compose(cat, tw, &gf, h)?;
                                let right = orbit_compose(cat, tw, f, &orbit_compose(cat, tw, g, h)?)?;
                                if left != right {
                                    failed += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((checked, failed))
}

/// Checks `iso_b ∘ π(f ⊗ O) = π(f) ∘ iso_a` for every basis morphism
/// `f : a → b` among `objects`, and that each iso is two-sided invertible.
/// Returns `(checked, failures)`.
pub fn twist_naturality_defects(cat: &GradedCat, tw: &TwistData, objects: &[Obj]) -> Result<(usize, usize)> {
    let (mut checked, mut failed) = (0, 0);
    let mut isos = Vec::new();
    for a in objects {
        let iso = twist_projection_iso(cat, tw, a)?;
        checked += 1;
        let there = orbit_compose(cat, tw, &iso.inverse, &iso.forward)?;
        let back = orbit_compose(cat, tw, &iso.forward, &iso.inverse)?;
        if there != OrbitMor::identity(cat, a) || back != OrbitMor::identity(cat, &iso.forward.src) {
            failed += 1;
        }
        isos.push(iso);
    }
    for (p, a) in objects.iter().enumerate() {
        for (q, b) in objects.iter().enumerate() {
            for f in cat.hom_basis(a, b) {
                checked += 1;
                let left = orbit_compose(cat, tw, &project(&tw.apply(&f, 1)), &isos[q].forward)?;
                let right = orbit_compose(cat, tw, &isos[p].forward, &project(&f))?;
                if left != right {
                    failed += 1;
                }
            }
        }
    }
    Ok((checked, failed))
}
