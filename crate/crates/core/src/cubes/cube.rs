use alloc::vec::Vec;

use super::{ExactCatSpec, Mor};
use crate::error::{invalid, Result};

/// Exact n-cube over a skeleton.
///
/// Vertex `v ∈ {-1,0,1}^n` sits at index `Σ_i (v_i + 1) 3^i`. The arrow in
/// direction `i` leaving a vertex `v` with `v_i ∈ {-1, 0}` is stored at
/// `i * 2 * 3^(n-1) + 2 r + (v_i + 1)`, where `r` is the index of `v` with
/// coordinate `i` deleted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    objs: Vec<u16>,
    arrows: Vec<Mor>,
}

pub(crate) fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Digit `i` of a vertex index, as a coordinate in {-1, 0, 1}.
pub(crate) fn coord(v: usize, i: usize) -> i8 {
    ((v / pow3(i)) % 3) as i8 - 1
}

/// Vertex index with coordinate `i` deleted.
pub(crate) fn delete_coord(v: usize, i: usize) -> usize {
    let low = v % pow3(i);
    let high = v / pow3(i + 1);
    low + high * pow3(i)
}

/// Vertex index with coordinate value `j` inserted at position `i`.
pub(crate) fn insert_coord(w: usize, i: usize, j: i8) -> usize {
    let low = w % pow3(i);
    let high = w / pow3(i);
    low + ((j + 1) as usize) * pow3(i) + high * pow3(i + 1)
}

pub(crate) fn arrow_slot(n: usize, i: usize, v: usize) -> usize {
    let c = coord(v, i);
    debug_assert!(c < 1);
    i * 2 * pow3(n - 1) + 2 * delete_coord(v, i) + (c + 1) as usize
}

impl Cube {
    pub(crate) fn from_parts(objs: Vec<u16>, arrows: Vec<Mor>) -> Self {
        Cube { objs, arrows }
    }

    /// Builds and checks a cube: shapes, commuting squares and exact edges.
    pub fn new(spec: &ExactCatSpec, n: usize, objs: Vec<u16>, arrows: Vec<Mor>) -> Result<Self> {
        if objs.len() != pow3(n) || arrows.len() != 2 * n * pow3(n.saturating_sub(1)) * usize::from(n > 0) {
            return Err(invalid!("wrong number of vertices or arrows for a {n}-cube"));
        }
        let c = Cube { objs, arrows };
        c.validate(spec)?;
        Ok(c)
    }

    pub fn zero_cube(spec: &ExactCatSpec, n: usize) -> Self {
        let z = spec.zero_object();
        let arrows = if n == 0 {
            Vec::new()
        } else {
            alloc::vec![spec.identity(z); 2 * n * pow3(n - 1)]
        };
        Cube {
            objs: alloc::vec![z; pow3(n)],
            arrows,
        }
    }

    pub fn point(obj: u16) -> Self {
        Cube {
            objs: alloc::vec![obj],
            arrows: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        let mut n = 0;
        while pow3(n) < self.objs.len() {
            n += 1;
        }
        n
    }

    pub fn objs(&self) -> &[u16] {
        &self.objs
    }

    pub fn arrows(&self) -> &[Mor] {
        &self.arrows
    }

    pub fn vertex(&self, v: usize) -> u16 {
        self.objs[v]
    }

    /// Arrow in direction `i` out of vertex `v` (requires `v_i < 1`).
    pub fn arrow(&self, i: usize, v: usize) -> &Mor {
        &self.arrows[arrow_slot(self.n(), i, v)]
    }

    /// Face `∂_i^j`: coordinate `i` fixed at `j`.
    pub fn face(&self, i: usize, j: i8) -> Cube {
        let n = self.n();
        let m = n - 1;
        let objs = (0..pow3(m)).map(|w| self.objs[insert_coord(w, i, j)]).collect();
        let mut arrows = Vec::with_capacity(2 * m * pow3(m.saturating_sub(1)));
        for k in 0..m {
            let dir = if k < i { k } else { k + 1 };
            for r in 0..pow3(m - 1) {
                for c in [-1i8, 0] {
                    let w = insert_coord(r, k, c);
                    arrows.push(*self.arrow(dir, insert_coord(w, i, j)));
                }
            }
        }
        Cube { objs, arrows }
    }

    /// In the image of a degeneracy: either every `v_i = -1` vertex is zero
    /// and every `0 → 1` arrow in direction `i` is an identity, or every
    /// `v_i = 1` vertex is zero and every `-1 → 0` arrow is an identity. The
    /// zero 0-cube (the basepoint) is degenerate as well.
    pub fn is_degenerate(&self, spec: &ExactCatSpec) -> bool {
        let n = self.n();
        let z = spec.zero_object();
        if n == 0 {
            return self.objs[0] == z;
        }
        (0..n).any(|i| {
            [(-1i8, 0i8), (1, -1)].iter().any(|&(zero_at, id_from)| {
                (0..pow3(n - 1)).all(|r| {
                    self.objs[insert_coord(r, i, zero_at)] == z
                        && spec.is_identity(self.arrow(i, insert_coord(r, i, id_from)))
                })
            })
        })
    }

    fn validate(&self, spec: &ExactCatSpec) -> Result<()> {
        let n = self.n();
        for &o in &self.objs {
            if o as usize >= spec.objects().len() {
                return Err(invalid!("unknown object {o}"));
            }
        }
        for i in 0..n {
            for v in 0..pow3(n) {
                if coord(v, i) == 1 {
                    continue;
                }
                let a = self.arrow(i, v);
                if a.src != self.objs[v] || a.tgt != self.objs[v + pow3(i)] {
                    return Err(invalid!("arrow {i} at vertex {v} has the wrong endpoints"));
                }
            }
        }
        // commuting squares
        for i in 0..n {
            for k in i + 1..n {
                for v in 0..pow3(n) {
                    if coord(v, i) == 1 || coord(v, k) == 1 {
                        continue;
                    }
                    let a = spec.compose(self.arrow(k, v + pow3(i)), self.arrow(i, v));
                    let b = spec.compose(self.arrow(i, v + pow3(k)), self.arrow(k, v));
                    if a != b {
                        return Err(invalid!("square in directions {i},{k} at vertex {v} does not commute"));
                    }
                }
            }
        }
        // exact edges
        for i in 0..n {
            for r in 0..pow3(n - 1) {
                let v = insert_coord(r, i, -1);
                let (f, g) = (self.arrow(i, v), self.arrow(i, v + pow3(i)));
                if !is_short_exact(spec, f, g) {
                    return Err(invalid!("edge in direction {i} through vertex {v} is not short exact"));
                }
            }
        }
        Ok(())
    }
}

/// `f` mono, `g` epi, `g f = 0` and dimensions add up (so `im f = ker g`).
pub(crate) fn is_short_exact(spec: &ExactCatSpec, f: &Mor, g: &Mor) -> bool {
    if f.tgt != g.src || !spec.is_mono(f) || !spec.is_epi(g) {
        return false;
    }
    let gf = spec.compose(g, f);
    if gf != spec.zero_mor(f.src, g.tgt) {
        return false;
    }
    let (a, b, c) = (spec.dims(f.src), spec.dims(f.tgt), spec.dims(g.tgt));
    (0..a.len()).all(|k| a[k] + c[k] == b[k])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_helpers_roundtrip() {
        for n in 1..=3 {
            for v in 0..pow3(n) {
                for i in 0..n {
                    assert_eq!(insert_coord(delete_coord(v, i), i, coord(v, i)), v);
                }
            }
        }
    }

    #[test]
    fn zero_cube_is_degenerate_and_valid() {
        let s = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        for n in 0..=2 {
            let z = Cube::zero_cube(&s, n);
            assert!(z.is_degenerate(&s));
            assert_eq!(z.n(), n);
            Cube::new(&s, n, z.objs.clone(), z.arrows.clone()).unwrap();
        }
    }

    #[test]
    fn faces_of_a_ses() {
        let s = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        let (a, b) = (s.object(&[1]).unwrap(), s.object(&[2]).unwrap());
        let mut i = s.zero_mor(a, b);
        i.e[..2].copy_from_slice(&[1, 0]);
        let mut p = s.zero_mor(b, a);
        p.e[..2].copy_from_slice(&[0, 1]);
        let c = Cube::new(&s, 1, alloc::vec![a, b, a], alloc::vec![i, p]).unwrap();
        assert_eq!(c.face(0, -1), Cube::point(a));
        assert_eq!(c.face(0, 0), Cube::point(b));
        assert!(!c.is_degenerate(&s));
        // swapping the maps breaks exactness
        assert!(Cube::new(&s, 1, alloc::vec![a, b, a], alloc::vec![i, s.transpose(&i)]).is_err());
    }
}
