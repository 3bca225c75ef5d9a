use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::coeffs::{CoeffRing, Scalar};
use crate::error::{invalid, shape, Error, Result};

/// `x⟨n⟩`: label index and twist.
pub type BasicObj = (usize, i64);

/// Finite direct sum of basic objects, in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj {
    pub summands: Vec<BasicObj>,
}

impl Obj {
    pub fn basic(label: usize, twist: i64) -> Self {
        Obj {
            summands: vec![(label, twist)],
        }
    }

    pub fn sum(parts: &[Obj]) -> Self {
        Obj {
            summands: parts.iter().flat_map(|p| p.summands.iter().copied()).collect(),
        }
    }

    /// Every summand twisted by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        Obj {
            summands: self.summands.iter().map(|&(x, n)| (x, n + k)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEntry {
    pub src: usize,
    pub tgt: usize,
    pub grade: i64,
    pub rank: usize,
}

/// Structure constants of `hom(y,z)(j) × hom(x,y)(i) → hom(x,z)(i+j)`,
/// flattened as `table[(k * r_g + a) * r_f + b]` where `a` indexes the
/// left factor `g` and `b` the right factor `f`. Missing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompEntry {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub i: i64,
    pub j: i64,
    pub table: Vec<Scalar>,
}

/// Raw presentation, validated by [`GradedCat::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCatSpec {
    pub ring: CoeffRing,
    pub labels: Vec<String>,
    pub homs: Vec<HomEntry>,
    pub comps: Vec<CompEntry>,
    /// Coordinates of `id_x` in `hom(x, x)(0)`, per label.
    pub identities: Vec<Vec<Scalar>>,
    /// Optional tensor on labels: unit label and `table[x][y] = x ⊗ y`,
    /// twists adding.
    pub tensor: Option<(usize, Vec<Vec<usize>>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCat {
    ring: CoeffRing,
    labels: Vec<String>,
    hom: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    comp: BTreeMap<(usize, usize, usize, i64, i64), Vec<Scalar>>,
    identities: Vec<Vec<Scalar>>,
    tensor: Option<(usize, Vec<Vec<usize>>)>,
}

/// Morphism of the graded category between two direct sums:
/// `blocks[t][s]` are the coordinates of the component from source summand
/// `s` to target summand `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMor {
    pub src: Obj,
    pub tgt: Obj,
    pub blocks: Vec<Vec<Vec<Scalar>>>,
}

impl GradedCat {
    pub fn new(spec: GradedCatSpec) -> Result<Self> {
        let GradedCatSpec {
            ring,
            labels,
            homs,
            comps,
            identities,
            tensor,
        } = spec;
        let n = labels.len();
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(invalid!("duplicate label {l}"));
            }
        }
        let mut hom: BTreeMap<(usize, usize), BTreeMap<i64, usize>> = BTreeMap::new();
        for h in homs {
            if h.src >= n || h.tgt >= n {
                return Err(invalid!("hom entry refers to label {} of {n}", h.src.max(h.tgt)));
            }
            if h.rank > 0 && hom.entry((h.src, h.tgt)).or_default().insert(h.grade, h.rank).is_some() {
                return Err(invalid!("hom({}, {})({}) given twice", labels[h.src], labels[h.tgt], h.grade));
            }
        }
        let mut cat = GradedCat {
            ring,
            labels,
            hom,
            comp: BTreeMap::new(),
            identities: Vec::new(),
            tensor: None,
        };
        for c in comps {
            if c.x >= n || c.y >= n || c.z >= n {
                return Err(invalid!("composition entry refers to an unknown label"));
            }
            let want = cat.rank(c.x, c.z, c.i + c.j) * cat.rank(c.y, c.z, c.j) * cat.rank(c.x, c.y, c.i);
            if c.table.len() != want {
                return Err(shape!(
                    "composition table ({}, {}, {}; {}, {}) has {} entries, expected {want}",
                    c.x, c.y, c.z, c.i, c.j, c.table.len()
                ));
            }
            let table = c.table.into_iter().map(|s| ring.normalize(s)).collect::<Result<Vec<_>>>()?;
            cat.comp.insert((c.x, c.y, c.z, c.i, c.j), table);
        }
        if identities.len() != n {
            return Err(shape!("{} identities for {n} labels", identities.len()));
        }
        for (x, id) in identities.iter().enumerate() {
            if id.len() != cat.rank(x, x, 0) {
                return Err(shape!("identity of {} has the wrong length", cat.labels[x]));
            }
        }
        cat.identities = identities
            .into_iter()
            .map(|v| v.into_iter().map(|s| ring.normalize(s)).collect())
            .collect::<Result<_>>()?;
        cat.check_unital()?;
        cat.check_associative()?;
        if let Some((unit, table)) = tensor {
            cat.check_tensor(unit, &table)?;
            cat.tensor = Some((unit, table));
        }
        Ok(cat)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == name).ok_or_else(|| Error::Unknown {
            kind: "object",
            name: name.into(),
        })
    }

    /// Rank of `hom(x, y)(g)`.
    pub fn rank(&self, x: usize, y: usize, g: i64) -> usize {
        self.hom.get(&(x, y)).and_then(|m| m.get(&g)).copied().unwrap_or(0)
    }

    /// Grades with nonzero rank.
    pub fn support(&self, x: usize, y: usize) -> Vec<i64> {
        self.hom.get(&(x, y)).map(|m| m.keys().copied().collect()).unwrap_or_default()
    }

    pub fn tensor(&self) -> Option<(usize, &[Vec<usize>])> {
        self.tensor.as_ref().map(|(u, t)| (*u, t.as_slice()))
    }

    pub(crate) fn check_obj(&self, a: &Obj) -> Result<()> {
        for &(x, _) in &a.summands {
            if x >= self.labels.len() {
                return Err(Error::Unknown {
                    kind: "object",
                    name: alloc::format!("#{x}"),
                });
            }
        }
        Ok(())
    }

    /// Rank of `Hom(a, b)`.
    pub fn hom_rank(&self, a: &Obj, b: &Obj) -> usize {
        let mut r = 0;
        for &(x, m) in &a.summands {
            for &(y, n) in &b.summands {
                r += self.rank(x, y, n - m);
            }
        }
        r
    }

    /// Product of basis-coordinate vectors `g ∘ f` with `f ∈ hom(x,y)(i)`
    /// and `g ∈ hom(y,z)(j)`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn compose_basic(&self, x: usize, y: usize, z: usize, i: i64, j: i64, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let rk = self.rank(x, z, i + j);
        let (rg, rf) = (g.len(), f.len());
        let mut out = vec![Scalar::zero(); rk];
        let Some(t) = self.comp.get(&(x, y, z, i, j)) else {
            return out;
        };
        for (k, o) in out.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for (a, ga) in g.iter().enumerate() {
                if ga.is_zero() {
                    continue;
                }
                for (b, fb) in f.iter().enumerate() {
                    let c = &t[(k * rg + a) * rf + b];
                    if !c.is_zero() && !fb.is_zero() {
                        acc += ga * fb * c;
                    }
                }
            }
            *o = self.ring.normalize(acc).expect("canonical inputs");
        }
        out
    }

    fn unit_vec(&self, len: usize, k: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); len];
        v[k] = self.ring.one();
        v
    }

    fn check_unital(&self) -> Result<()> {
        for (&(x, y), grades) in &self.hom {
            for (&g, &r) in grades {
                for k in 0..r {
                    let f = self.unit_vec(r, k);
                    let left = self.compose_basic(x, y, y, g, 0, &self.identities[y], &f);
                    let right = self.compose_basic(x, x, y, 0, g, &f, &self.identities[x]);
                    if left != f || right != f {
                        return Err(invalid!(
                            "identities are not unital on hom({}, {})({g})",
                            self.labels[x], self.labels[y]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.labels.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for i in self.support(x, y) {
                            for j in self.support(y, z) {
                                for k in self.support(z, w) {
                                    self.check_triple(x, y, z, w, i, j, k)?;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn check_triple(&self, x: usize, y: usize, z: usize, w: usize, i: i64, j: i64, k: i64) -> Result<()> {
        let (rf, rg, rh) = (self.rank(x, y, i), self.rank(y, z, j), self.rank(z, w, k));
        for a in 0..rf {
            let f = self.unit_vec(rf, a);
            for b in 0..rg {
                let g = self.unit_vec(rg, b);
                let gf = self.compose_basic(x, y, z, i, j, &g, &f);
                for c in 0..rh {
                    let h = self.unit_vec(rh, c);
                    let hg = self.compose_basic(y, z, w, j, k, &h, &g);
                    let l = self.compose_basic(x, z, w, i + j, k, &h, &gf);
                    let r = self.compose_basic(x, y, w, i, j + k, &hg, &f);
                    if l != r {
                        return Err(invalid!(
                            "composition is not associative on {} → {} → {} → {}",
                            self.labels[x], self.labels[y], self.labels[z], self.labels[w]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_tensor(&self, unit: usize, table: &[Vec<usize>]) -> Result<()> {
        let n = self.labels.len();
        if unit >= n || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&z| z >= n)) {
            return Err(shape!("tensor table must be {n}×{n} over known labels"));
        }
        for x in 0..n {
            if table[unit][x] != x || table[x][unit] != x {
                return Err(invalid!("{} is not a unit for {}", self.labels[unit], self.labels[x]));
            }
            for y in 0..n {
                if table[x][y] != table[y][x] {
                    return Err(invalid!("tensor is not symmetric on {}, {}", self.labels[x], self.labels[y]));
                }
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(invalid!("tensor on labels is not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Tensor of objects, summands in lexicographic order of the factors.
    pub fn tensor_obj(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        let (_, table) = self.tensor().ok_or_else(|| Error::Unsupported("category has no tensor data".into()))?;
        let mut summands = Vec::new();
        for &(x, m) in &a.summands {
            for &(y, n) in &b.summands {
                summands.push((table[x][y], m + n));
            }
        }
        Ok(Obj { summands })
    }

    pub fn zero_mor(&self, a: &Obj, b: &Obj) -> CMor {
        let blocks = b
            .summands
            .iter()
            .map(|&(y, n)| {
                a.summands
                    .iter()
                    .map(|&(x, m)| vec![self.ring.zero(); self.rank(x, y, n - m)])
                    .collect()
            })
            .collect();
        CMor {
            src: a.clone(),
            tgt: b.clone(),
            blocks,
        }
    }

    pub fn identity(&self, a: &Obj) -> CMor {
        let mut m = self.zero_mor(a, a);
        for (s, &(x, _)) in a.summands.iter().enumerate() {
            m.blocks[s][s] = self.identities[x].clone();
        }
        m
    }

    /// Morphism `x⟨m⟩ → y⟨n⟩` with the given coordinates.
    pub fn basic_mor(&self, src: BasicObj, tgt: BasicObj, coords: Vec<Scalar>) -> Result<CMor> {
        let a = Obj::basic(src.0, src.1);
        let b = Obj::basic(tgt.0, tgt.1);
        self.check_obj(&a)?;
        self.check_obj(&b)?;
        if coords.len() != self.rank(src.0, tgt.0, tgt.1 - src.1) {
            return Err(shape!("{} coordinates for a hom space of rank {}", coords.len(), self.rank(src.0, tgt.0, tgt.1 - src.1)));
        }
        let coords = coords.into_iter().map(|c| self.ring.normalize(c)).collect::<Result<_>>()?;
        Ok(CMor {
            src: a,
            tgt: b,
            blocks: vec![vec![coords]],
        })
    }

    /// Basis of `Hom(a, b)`, one morphism per coordinate.
    pub fn hom_basis(&self, a: &Obj, b: &Obj) -> Vec<CMor> {
        let zero = self.zero_mor(a, b);
        let mut out = Vec::new();
        for t in 0..b.summands.len() {
            for s in 0..a.summands.len() {
                for k in 0..zero.blocks[t][s].len() {
                    let mut m = zero.clone();
                    m.blocks[t][s][k] = self.ring.one();
                    out.push(m);
                }
            }
        }
        out
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &CMor, f: &CMor) -> Result<CMor> {
        if f.tgt != g.src {
            return Err(invalid!("cannot compose: target {:?} is not source {:?}", f.tgt, g.src));
        }
        let mut out = self.zero_mor(&f.src, &g.tgt);
        for (u, &(z, p)) in g.tgt.summands.iter().enumerate() {
            for (s, &(x, m)) in f.src.summands.iter().enumerate() {
                for (t, &(y, n)) in f.tgt.summands.iter().enumerate() {
                    let prod = self.compose_basic(x, y, z, n - m, p - n, &g.blocks[u][t], &f.blocks[t][s]);
                    for (o, v) in out.blocks[u][s].iter_mut().zip(prod) {
                        *o = self.ring.add(o, &v);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl CMor {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Number of coordinates, the rank of the ambient hom space.
    pub fn len(&self) -> usize {
        self.blocks.iter().flatten().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
