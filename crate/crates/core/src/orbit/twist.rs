use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::category::{BasicObj, CMor, GradedCat, Obj};
use crate::coeffs::{Matrix, Scalar};
use crate::error::{invalid, shape, Error, Result};

/// Action of `−⊗O` on `hom(x, y)(grade)`, as a matrix on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistAction {
    pub x: usize,
    pub y: usize,
    pub grade: i64,
    pub matrix: Matrix,
}

/// A ⊗-invertible object `O = l⟨τ⟩` (τ ≠ 0) acting on objects by
/// `x⟨n⟩ ↦ x⟨n + τ⟩` and on homs by the tabulated matrices (identity where
/// no entry is given).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistData {
    o: BasicObj,
    inverse: BasicObj,
    action: BTreeMap<(usize, usize, i64), (Matrix, Matrix)>,
    /// `O⊗O⁻¹ → 1`, `1 → O⊗O⁻¹`, `O⁻¹⊗O → 1`, `1 → O⁻¹⊗O`.
    witnesses: Option<[CMor; 4]>,
}

impl TwistData {
    /// Validates the action as an invertible functor and, when the category
    /// has a tensor, certifies the witness isomorphisms. `witnesses = None`
    /// uses identities, which requires `O⊗O⁻¹` and `O⁻¹⊗O` to be the unit.
    pub fn new(
        cat: &GradedCat,
        o: BasicObj,
        inverse: BasicObj,
        actions: Vec<TwistAction>,
        witnesses: Option<[CMor; 4]>,
    ) -> Result<Self> {
        cat.check_obj(&Obj::basic(o.0, o.1))?;
        cat.check_obj(&Obj::basic(inverse.0, inverse.1))?;
        if o.1 == 0 {
            return Err(invalid!("the twist object must have nonzero twist"));
        }
        if inverse.1 != -o.1 {
            return Err(invalid!("inverse twist {} does not cancel {}", inverse.1, o.1));
        }
        let mut action = BTreeMap::new();
        for a in actions {
            let r = cat.rank(a.x, a.y, a.grade);
            if a.matrix.rows() != r || a.matrix.cols() != r || a.matrix.ring() != cat.ring() {
                return Err(shape!("twist action on hom({}, {})({}) must be {r}×{r}", a.x, a.y, a.grade));
            }
            let inv = a.matrix.inverse().map_err(|_| invalid!("twist action on hom({}, {})({}) is not invertible", a.x, a.y, a.grade))?;
            action.insert((a.x, a.y, a.grade), (a.matrix, inv));
        }
        let mut tw = TwistData {
            o,
            inverse,
            action,
            witnesses: None,
        };
        tw.check_functor(cat)?;
        if let Some((_, table)) = cat.tensor() {
            let n = cat.labels().len();
            if (0..n).any(|x| table[x][o.0] != x || table[x][inverse.0] != x) {
                return Err(invalid!("tensoring with the twist object must only shift twists"));
            }
            tw.witnesses = Some(certify_witnesses(cat, &tw, witnesses)?);
        } else if witnesses.is_some() {
            return Err(invalid!("witness isomorphisms need tensor data"));
        }
        Ok(tw)
    }

    pub fn object(&self) -> BasicObj {
        self.o
    }

    pub fn inverse(&self) -> BasicObj {
        self.inverse
    }

    /// τ, the twist carried by `O`.
    pub fn step(&self) -> i64 {
        self.o.1
    }

    pub fn witnesses(&self) -> Option<&[CMor; 4]> {
        self.witnesses.as_ref()
    }

    /// `a ⊗ O^k`.
    pub fn apply_obj(&self, a: &Obj, k: i64) -> Obj {
        a.shifted(k * self.o.1)
    }

    fn apply_coords(&self, x: usize, y: usize, g: i64, v: &[Scalar], k: i64) -> Vec<Scalar> {
        let Some((m, inv)) = self.action.get(&(x, y, g)) else {
            return v.to_vec();
        };
        let step = if k >= 0 { m } else { inv };
        let mut out = v.to_vec();
        for _ in 0..k.unsigned_abs() {
            out = step.mul_vec(&out).expect("square action");
        }
        out
    }

    /// `f ⊗ O^k`.
    pub fn apply(&self, f: &CMor, k: i64) -> CMor {
        let mut out = CMor {
            src: self.apply_obj(&f.src, k),
            tgt: self.apply_obj(&f.tgt, k),
            blocks: f.blocks.clone(),
        };
        for (t, &(y, n)) in f.tgt.summands.iter().enumerate() {
            for (s, &(x, m)) in f.src.summands.iter().enumerate() {
                out.blocks[t][s] = self.apply_coords(x, y, n - m, &f.blocks[t][s], k);
            }
        }
        out
    }

    fn check_functor(&self, cat: &GradedCat) -> Result<()> {
        let n = cat.labels().len();
        for x in 0..n {
            let id = cat.identity(&Obj::basic(x, 0));
            if self.apply(&id, 1).blocks != id.blocks {
                return Err(invalid!("twist action does not fix the identity of {}", cat.labels()[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for i in cat.support(x, y) {
                        for j in cat.support(y, z) {
                            for f in cat.hom_basis(&Obj::basic(x, 0), &Obj::basic(y, i)) {
                                for g in cat.hom_basis(&Obj::basic(y, i), &Obj::basic(z, i + j)) {
                                    let lhs = self.apply(&cat.compose(&g, &f)?, 1);
                                    let rhs = cat.compose(&self.apply(&g, 1), &self.apply(&f, 1))?;
                                    if lhs != rhs {
                                        return Err(invalid!("twist action is not compatible with composition"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn certify_witnesses(cat: &GradedCat, tw: &TwistData, given: Option<[CMor; 4]>) -> Result<[CMor; 4]> {
    let (unit, _) = cat.tensor().expect("checked by caller");
    let one = Obj::basic(unit, 0);
    let o = Obj::basic(tw.o.0, tw.o.1);
    let oi = Obj::basic(tw.inverse.0, tw.inverse.1);
    let ooi = cat.tensor_obj(&o, &oi)?;
    let oio = cat.tensor_obj(&oi, &o)?;
    let w = match given {
        Some(w) => w,
        None => {
            if ooi != one || oio != one {
                return Err(invalid!("O⊗O⁻¹ is not literally the unit; witness isomorphisms are required"));
            }
            let id = cat.identity(&one);
            [id.clone(), id.clone(), id.clone(), id]
        }
    };
    let ends = [(&ooi, &one), (&one, &ooi), (&oio, &one), (&one, &oio)];
    for (m, (s, t)) in w.iter().zip(ends) {
        if &m.src != s || &m.tgt != t {
            return Err(invalid!("witness isomorphism has the wrong endpoints"));
        }
    }
    for (f, g) in [(&w[0], &w[1]), (&w[2], &w[3])] {
        let fg = cat.compose(f, g)?;
        let gf = cat.compose(g, f)?;
        if fg != cat.identity(&fg.src) || gf != cat.identity(&gf.src) {
            return Err(Error::Invalid("witness isomorphisms do not compose to identities".into()));
        }
    }
    Ok(w)
}
