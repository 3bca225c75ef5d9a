use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::cube::{arrow_slot, coord, pow3, Cube};
use super::{small_kernel, small_rank, ExactCatSpec, Mor};
use crate::error::{Error, Result};

/// One short exact sequence `a ↣ b ↠ c` inside a single field factor.
#[derive(Clone)]
struct BlockSes {
    dims: (usize, usize, usize),
    mono: Vec<u8>,
    epi: Vec<u8>,
}

fn all_matrices(r: usize, c: usize, p: u64) -> impl Iterator<Item = Vec<u8>> {
    let total = (p as usize).pow((r * c) as u32);
    (0..total).map(move |mut code| {
        let mut m = vec![0u8; r * c];
        for x in m.iter_mut() {
            *x = (code % p as usize) as u8;
            code /= p as usize;
        }
        m
    })
}

fn mat_mul(a: &[u8], b: &[u8], r: usize, k: usize, c: usize, p: u64) -> Vec<u8> {
    let mut out = vec![0u8; r * c];
    for i in 0..r {
        for j in 0..c {
            let s: u64 = (0..k).map(|t| a[i * k + t] as u64 * b[t * c + j] as u64).sum();
            out[i * c + j] = (s % p) as u8;
        }
    }
    out
}

/// All short exact sequences of F_p-vector spaces with middle dimension at
/// most `cap`: every epi paired with every basis of its kernel.
fn block_ses(p: u64, cap: usize) -> Vec<BlockSes> {
    let mut out = Vec::new();
    let mut gl: BTreeMap<usize, Vec<Vec<u8>>> = BTreeMap::new();
    for a in 0..=cap {
        gl.insert(a, all_matrices(a, a, p).filter(|g| small_rank(g, a, a, p) == a).collect());
    }
    for b in 0..=cap {
        for c in 0..=b {
            let a = b - c;
            for q in all_matrices(c, b, p).filter(|q| small_rank(q, c, b, p) == c) {
                let (k, ka) = small_kernel(&q, c, b, p);
                debug_assert_eq!(ka, a);
                for g in &gl[&a] {
                    out.push(BlockSes {
                        dims: (a, b, c),
                        mono: mat_mul(&k, g, b, a, a, p),
                        epi: q.clone(),
                    });
                }
            }
        }
    }
    out
}

/// All 1-cubes (short exact sequences) over the skeleton, sorted.
pub fn enumerate_ses(spec: &ExactCatSpec) -> Result<Vec<Cube>> {
    let per_factor: Vec<Vec<BlockSes>> = spec.primes().iter().map(|&p| block_ses(p, spec.dim_cap())).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_factor.len()];
    'outer: loop {
        let parts: Vec<&BlockSes> = idx.iter().zip(&per_factor).map(|(&i, l)| &l[i]).collect();
        let total: usize = parts.iter().map(|s| s.dims.1).sum();
        if total <= spec.dim_cap() {
            let a: Vec<u8> = parts.iter().map(|s| s.dims.0 as u8).collect();
            let b: Vec<u8> = parts.iter().map(|s| s.dims.1 as u8).collect();
            let c: Vec<u8> = parts.iter().map(|s| s.dims.2 as u8).collect();
            let (oa, ob, oc) = (
                spec.object(&a).expect("in skeleton"),
                spec.object(&b).expect("in skeleton"),
                spec.object(&c).expect("in skeleton"),
            );
            let mut i = spec.zero_mor(oa, ob);
            let mut q = spec.zero_mor(ob, oc);
            let mut oi = 0;
            let mut oq = 0;
            for s in &parts {
                i.e[oi..oi + s.mono.len()].copy_from_slice(&s.mono);
                q.e[oq..oq + s.epi.len()].copy_from_slice(&s.epi);
                oi += s.mono.len();
                oq += s.epi.len();
            }
            out.push(Cube::from_parts(vec![oa, ob, oc], vec![i, q]));
        }
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < per_factor[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}

struct MonoInfo {
    mono: Mor,
    left: Mor,
    /// Cokernel maps with kernel exactly the image, each with a section.
    epis: Vec<(Mor, Mor)>,
}

/// Builds n-cubes from a middle (n-1)-cube by choosing, vertex by vertex,
/// a natural mono into it and then a cokernel at every vertex.
pub struct Extender<'a> {
    spec: &'a ExactCatSpec,
    lower: BTreeMap<Cube, usize>,
    monos_into: Vec<Vec<MonoInfo>>,
    m: usize,
}

impl<'a> Extender<'a> {
    /// `lower` must be the complete list of exact (n-1)-cubes.
    pub fn new(spec: &'a ExactCatSpec, lower: &[Cube], ses: &[Cube]) -> Self {
        let m = lower.first().map(|c| c.n()).unwrap_or(0);
        let mut grouped: BTreeMap<Mor, Vec<Mor>> = BTreeMap::new();
        for s in ses {
            grouped.entry(s.arrows()[0]).or_default().push(s.arrows()[1]);
        }
        let mut monos_into: Vec<Vec<MonoInfo>> = (0..spec.objects().len()).map(|_| Vec::new()).collect();
        for (mono, epis) in grouped {
            let left = spec.left_inverse(&mono);
            let epis = epis.into_iter().map(|p| (p, spec.right_inverse(&p))).collect();
            monos_into[mono.tgt as usize].push(MonoInfo { mono, left, epis });
        }
        Extender {
            spec,
            lower: lower.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect(),
            monos_into,
            m,
        }
    }

    /// Degree of the cubes produced.
    pub fn degree(&self) -> usize {
        self.m + 1
    }

    /// Visits every exact n-cube whose middle slice in the last direction
    /// is `x0`.
    pub fn extend_from_middle(&self, x0: &Cube, visit: &mut dyn FnMut(Cube) -> ControlFlow<()>) -> ControlFlow<()> {
        let m = self.m;
        let verts = pow3(m);
        let mut chosen: Vec<usize> = vec![0; verts];
        let mut induced: Vec<Mor> = x0.arrows().to_vec();
        self.choose_monos(x0, 0, &mut chosen, &mut induced, visit)
    }

    fn choose_monos(
        &self,
        x0: &Cube,
        w: usize,
        chosen: &mut Vec<usize>,
        induced: &mut Vec<Mor>,
        visit: &mut dyn FnMut(Cube) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let m = self.m;
        let spec = self.spec;
        if w == pow3(m) {
            let objs: Vec<u16> = (0..w).map(|v| self.info(x0, v, chosen).mono.src).collect();
            let xm = Cube::from_parts(objs, induced.clone());
            if !self.lower.contains_key(&xm) {
                return ControlFlow::Continue(());
            }
            return self.choose_epis(x0, &xm, chosen, visit);
        }
        let candidates = &self.monos_into[x0.vertex(w) as usize];
        'cand: for (ci, info) in candidates.iter().enumerate() {
            for k in 0..m {
                if coord(w, k) < 0 {
                    continue;
                }
                let u = w - pow3(k);
                let a = x0.arrow(k, u);
                let t = spec.compose(a, &self.info(x0, u, chosen).mono);
                let mm = spec.compose(&info.left, &t);
                if spec.compose(&info.mono, &mm) != t {
                    continue 'cand;
                }
                induced[arrow_slot(m, k, u)] = mm;
            }
            chosen[w] = ci;
            self.choose_monos(x0, w + 1, chosen, induced, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn info<'b>(&'b self, x0: &Cube, v: usize, chosen: &[usize]) -> &'b MonoInfo {
        &self.monos_into[x0.vertex(v) as usize][chosen[v]]
    }

    fn choose_epis(
        &self,
        x0: &Cube,
        xm: &Cube,
        chosen: &[usize],
        visit: &mut dyn FnMut(Cube) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let m = self.m;
        let n = m + 1;
        let spec = self.spec;
        let verts = pow3(m);
        let infos: Vec<&MonoInfo> = (0..verts).map(|v| self.info(x0, v, chosen)).collect();
        let mut pick = vec![0usize; verts];
        loop {
            let mut objs = Vec::with_capacity(3 * verts);
            objs.extend_from_slice(xm.objs());
            objs.extend_from_slice(x0.objs());
            objs.extend((0..verts).map(|v| infos[v].epis[pick[v]].0.tgt));
            let mut arrows = vec![spec.zero_mor(0, 0); 2 * n * verts];
            for k in 0..m {
                for u in 0..verts {
                    if coord(u, k) == 1 {
                        continue;
                    }
                    let w = u + pow3(k);
                    let a = x0.arrow(k, u);
                    let (pw, _) = infos[w].epis[pick[w]];
                    let (_, su) = infos[u].epis[pick[u]];
                    let x1 = spec.compose(&pw, &spec.compose(a, &su));
                    arrows[arrow_slot(n, k, u)] = *xm.arrow(k, u);
                    arrows[arrow_slot(n, k, u + verts)] = *a;
                    arrows[arrow_slot(n, k, u + 2 * verts)] = x1;
                }
            }
            for w in 0..verts {
                arrows[arrow_slot(n, m, w)] = infos[w].mono;
                arrows[arrow_slot(n, m, w + verts)] = infos[w].epis[pick[w]].0;
            }
            visit(Cube::from_parts(objs, arrows))?;
            let mut k = 0;
            loop {
                if k == verts {
                    return ControlFlow::Continue(());
                }
                pick[k] += 1;
                if pick[k] < infos[k].epis.len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
}

/// Streams every exact n-cube (n ≥ 1) given the complete lists of
/// (n-1)-cubes and of short exact sequences.
pub fn for_each_cube(
    spec: &ExactCatSpec,
    lower: &[Cube],
    ses: &[Cube],
    visit: &mut dyn FnMut(Cube) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let ext = Extender::new(spec, lower, ses);
    for x0 in lower {
        ext.extend_from_middle(x0, visit)?;
    }
    ControlFlow::Continue(())
}

/// Complete sorted list of exact n-cubes; fails rather than truncating if
/// any degree would exceed `budget` cubes.
pub fn enumerate_cubes(spec: &ExactCatSpec, n: usize, budget: usize) -> Result<Vec<Cube>> {
    let points: Vec<Cube> = (0..spec.objects().len() as u16).map(Cube::point).collect();
    if n == 0 {
        return Ok(points);
    }
    let ses = enumerate_ses(spec)?;
    let mut level = points;
    for degree in 1..=n {
        let mut next = Vec::new();
        let mut over = false;
        let flow = for_each_cube(spec, &level, &ses, &mut |c| {
            if next.len() >= budget {
                over = true;
                return ControlFlow::Break(());
            }
            next.push(c);
            ControlFlow::Continue(())
        });
        if over || flow.is_break() {
            return Err(Error::BudgetExceeded {
                what: format!("enumerating {degree}-cubes over {}", spec.describe()),
                counted: next.len(),
                budget,
            });
        }
        next.sort();
        level = next;
    }
    Ok(level)
}

/// Positions of the non-degenerate cubes of one degree.
#[derive(Debug, Clone, Default)]
pub struct CubeIndex {
    map: BTreeMap<Cube, usize>,
}

impl CubeIndex {
    pub fn new(spec: &ExactCatSpec, cubes: &[Cube]) -> Self {
        let mut map = BTreeMap::new();
        for c in cubes {
            if !c.is_degenerate(spec) {
                let k = map.len();
                map.insert(c.clone(), k);
            }
        }
        CubeIndex { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, c: &Cube) -> Option<usize> {
        self.map.get(c).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every arrow filling of every dimension-compatible vertex assignment,
    /// kept when [`Cube::new`] accepts it.
    fn brute_cubes(spec: &ExactCatSpec, n: usize) -> Vec<Cube> {
        let nobj = spec.objects().len();
        let slots = if n == 0 { 0 } else { 2 * n * pow3(n - 1) };
        let mut out = Vec::new();
        let mut objs = vec![0u16; pow3(n)];
        loop {
            let additive = (0..n).all(|i| {
                (0..pow3(n - 1)).all(|r| {
                    let v = super::super::cube::insert_coord(r, i, -1);
                    let (a, b, c) = (objs[v], objs[v + pow3(i)], objs[v + 2 * pow3(i)]);
                    let (a, b, c) = (spec.dims(a), spec.dims(b), spec.dims(c));
                    (0..a.len()).all(|k| a[k] + c[k] == b[k])
                })
            });
            if additive {
                let mut ends = vec![(0u16, 0u16); slots];
                for i in 0..n {
                    for v in 0..pow3(n) {
                        if coord(v, i) < 1 {
                            ends[arrow_slot(n, i, v)] = (objs[v], objs[v + pow3(i)]);
                        }
                    }
                }
                let sizes: Vec<usize> = ends
                    .iter()
                    .map(|&(s, t)| spec.blocks(s, t).map(|(_, r, c, _)| r * c).sum())
                    .collect();
                let total: usize = sizes.iter().sum();
                let p = spec.primes()[0];
                for code in 0..(p as usize).pow(total as u32) {
                    let mut x = code;
                    let arrows: Vec<Mor> = ends
                        .iter()
                        .zip(&sizes)
                        .map(|(&(s, t), &len)| {
                            let mut m = spec.zero_mor(s, t);
                            for e in m.e.iter_mut().take(len) {
                                *e = (x % p as usize) as u8;
                                x /= p as usize;
                            }
                            m
                        })
                        .collect();
                    if let Ok(c) = Cube::new(spec, n, objs.clone(), arrows) {
                        out.push(c);
                    }
                }
            }
            let mut k = 0;
            while k < objs.len() && objs[k] as usize == nobj - 1 {
                objs[k] = 0;
                k += 1;
            }
            if k == objs.len() {
                break;
            }
            objs[k] += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn ses_match_brute_force() {
        let f2 = ExactCatSpec::new(vec![2], 1).unwrap();
        assert_eq!(enumerate_ses(&f2).unwrap().len(), 3);
        for (primes, cap) in [(vec![2], 1), (vec![2], 2), (vec![3], 2), (vec![2, 2], 2)] {
            let s = ExactCatSpec::new(primes, cap).unwrap();
            let mut ses = enumerate_ses(&s).unwrap();
            ses.sort();
            assert_eq!(ses, brute_cubes(&s, 1), "{}", s.describe());
        }
    }

    #[test]
    fn extender_matches_brute_force_squares() {
        let f2 = ExactCatSpec::new(vec![2], 1).unwrap();
        assert_eq!(enumerate_cubes(&f2, 2, 1000).unwrap(), brute_cubes(&f2, 2));
        let f3 = ExactCatSpec::new(vec![3], 1).unwrap();
        assert_eq!(enumerate_cubes(&f3, 2, 1000).unwrap(), brute_cubes(&f3, 2));
    }

    #[test]
    fn one_cubes_are_the_ses() {
        let s = ExactCatSpec::new(vec![2, 3], 2).unwrap();
        let mut ses = enumerate_ses(&s).unwrap();
        ses.sort();
        assert_eq!(enumerate_cubes(&s, 1, 100_000).unwrap(), ses);
    }

    #[test]
    fn faces_stay_in_the_enumeration() {
        let s = ExactCatSpec::new(vec![2], 2).unwrap();
        let ones = enumerate_cubes(&s, 1, 100_000).unwrap();
        let twos = enumerate_cubes(&s, 2, 1_000_000).unwrap();
        assert!(twos.iter().any(|c| !c.is_degenerate(&s)));
        for c in &twos {
            for i in 0..2 {
                for j in [-1, 0, 1] {
                    assert!(ones.binary_search(&c.face(i, j)).is_ok());
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = ExactCatSpec::new(vec![2], 2).unwrap();
        assert!(matches!(enumerate_cubes(&s, 2, 10), Err(Error::BudgetExceeded { .. })));
    }
}
