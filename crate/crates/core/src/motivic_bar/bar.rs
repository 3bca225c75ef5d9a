use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::gens::GeneratorSet;
use crate::coeffs::{CoeffRing, Matrix, Scalar};
use crate::error::{invalid, Error, Result};
use crate::hopf::{verify_hopf, HopfAlg, HopfAxiom};

/// Largest simplicial degree a bar datum will index.
pub const MAX_TERM_DIM: usize = 50_000_000;

type Sparse = BTreeMap<usize, i64>;
type OrbitCombination = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
struct Term {
    tuples: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl Term {
    fn dim(&self) -> usize {
        *self.offsets.last().expect("offsets start at 0")
    }
}

/// The simplicial bar object truncated at degree `N`: in degree `n` the sum
/// over `(A_0, …, A_n)` of `HH₀(A_0^op) ⊗ K₀(A_0, A_1) ⊗ ⋯ ⊗ HH₀(A_n)`, where
/// the class between `A_{i-1}` and `A_i` maps `A_i → A_{i-1}`.
///
/// A basis element is `(u, o_1, …, o_n, v)`: a point `u ∈ X_{A_0}`, orbit
/// classes `o_i`, and a point `v ∈ X_{A_n}`.
#[derive(Debug, Clone)]
pub struct BarDatum {
    gens: GeneratorSet,
    ring: CoeffRing,
    terms: Vec<Term>,
    /// `comp[(a·g + b)·g + c][o][p]`: `[o]·[p]` in the orbit basis of `(a, c)`.
    comp: Vec<Vec<Vec<OrbitCombination>>>,
    /// Orbits of `X_a × X_a` on the diagonal.
    diagonal: Vec<Vec<usize>>,
}

pub fn build_bar(gens: &GeneratorSet, truncation: usize, ring: CoeffRing) -> Result<BarDatum> {
    if truncation < 2 {
        return Err(invalid!("bar truncation must be at least 2, got {truncation}"));
    }
    ring.require_field()?;
    let g = gens.len();
    let mut terms = Vec::with_capacity(truncation + 1);
    for n in 0..=truncation {
        let count = g.checked_pow(n as u32 + 1).filter(|&c| c <= MAX_TERM_DIM).ok_or_else(|| Error::SizeGuard {
            what: format!("bar degree {n}"),
            needed: usize::MAX,
            cap: MAX_TERM_DIM,
        })?;
        let mut tuples = Vec::with_capacity(count);
        let mut offsets = vec![0usize];
        let mut index = BTreeMap::new();
        for code in 0..count {
            let t: Vec<usize> = (0..=n).rev().map(|i| code / g.pow(i as u32) % g).collect();
            let mut size = gens.points(t[0]) * gens.points(t[n]);
            for w in t.windows(2) {
                size = size.saturating_mul(gens.pair(w[0], w[1]).orbits.len());
            }
            let next = offsets.last().expect("nonempty").saturating_add(size);
            if next > MAX_TERM_DIM {
                return Err(Error::SizeGuard {
                    what: format!("bar degree {n}"),
                    needed: next,
                    cap: MAX_TERM_DIM,
                });
            }
            index.insert(t.clone(), tuples.len());
            tuples.push(t);
            offsets.push(next);
        }
        terms.push(Term { tuples, offsets, index });
    }
    let mut comp = Vec::with_capacity(g * g * g);
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                comp.push(orbit_products(gens, a, b, c));
            }
        }
    }
    let diagonal = (0..g)
        .map(|a| {
            let n = gens.points(a);
            let pair = gens.pair(a, a);
            let mut d: Vec<usize> = (0..n).map(|x| pair.orbit_of[x * n + x]).collect();
            d.sort_unstable();
            d.dedup();
            d
        })
        .collect();
    Ok(BarDatum {
        gens: gens.clone(),
        ring,
        terms,
        comp,
        diagonal,
    })
}

fn orbit_products(gs: &GeneratorSet, a: usize, b: usize, c: usize) -> Vec<Vec<OrbitCombination>> {
    let (nb, nc) = (gs.points(b), gs.points(c));
    let (ab, bc, ac) = (gs.pair(a, b), gs.pair(b, c), gs.pair(a, c));
    ab.orbits
        .iter()
        .enumerate()
        .map(|(o, _)| {
            bc.orbits
                .iter()
                .enumerate()
                .map(|(p, _)| {
                    let mut out = Vec::new();
                    for (q, orbit) in ac.orbits.iter().enumerate() {
                        let (x, z) = (orbit[0] / nc, orbit[0] % nc);
                        let k = (0..nb)
                            .filter(|&y| ab.orbit_of[x * nb + y] == o && bc.orbit_of[y * nc + z] == p)
                            .count() as i64;
                        if k != 0 {
                            out.push((q, k));
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

struct Simplex {
    tuple: Vec<usize>,
    u: usize,
    orbits: Vec<usize>,
    v: usize,
}

fn add(out: &mut Sparse, k: usize, c: i64) {
    let e = out.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        out.remove(&k);
    }
}

impl BarDatum {
    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn truncation(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(Term::dim).collect()
    }

    fn radices(&self, t: &[usize]) -> Vec<usize> {
        let mut r = Vec::with_capacity(t.len() + 1);
        r.push(self.gens.points(t[0]));
        for w in t.windows(2) {
            r.push(self.gens.pair(w[0], w[1]).orbits.len());
        }
        r.push(self.gens.points(t[t.len() - 1]));
        r
    }

    fn decode(&self, n: usize, idx: usize) -> Simplex {
        let term = &self.terms[n];
        let block = term.offsets.partition_point(|&o| o <= idx) - 1;
        let tuple = term.tuples[block].clone();
        let radices = self.radices(&tuple);
        let mut local = idx - term.offsets[block];
        let mut digits = vec![0; radices.len()];
        for (d, &r) in digits.iter_mut().zip(&radices).rev() {
            *d = local % r;
            local /= r;
        }
        Simplex {
            tuple,
            u: digits[0],
            orbits: digits[1..digits.len() - 1].to_vec(),
            v: digits[digits.len() - 1],
        }
    }

    fn encode(&self, s: &Simplex) -> usize {
        let n = s.tuple.len() - 1;
        let term = &self.terms[n];
        let block = term.index[&s.tuple];
        let radices = self.radices(&s.tuple);
        let mut local = s.u;
        for (k, &o) in s.orbits.iter().enumerate() {
            local = local * radices[k + 1] + o;
        }
        local = local * radices[n + 1] + s.v;
        term.offsets[block] + local
    }

    /// `∂_i: B_n → B_{n-1}` on a basis element.
    pub fn face(&self, n: usize, i: usize, idx: usize) -> BTreeMap<usize, i64> {
        let s = self.decode(n, idx);
        let t = &s.tuple;
        let mut out = Sparse::new();
        if i == 0 {
            let m = self.gens.points(t[1]);
            let pair = self.gens.pair(t[0], t[1]);
            for y in (0..m).filter(|&y| pair.orbit_of[s.u * m + y] == s.orbits[0]) {
                let k = self.encode(&Simplex {
                    tuple: t[1..].to_vec(),
                    u: y,
                    orbits: s.orbits[1..].to_vec(),
                    v: s.v,
                });
                add(&mut out, k, 1);
            }
        } else if i == n {
            let m = self.gens.points(t[n]);
            let pair = self.gens.pair(t[n - 1], t[n]);
            for x in (0..self.gens.points(t[n - 1])).filter(|&x| pair.orbit_of[x * m + s.v] == s.orbits[n - 1]) {
                let k = self.encode(&Simplex {
                    tuple: t[..n].to_vec(),
                    u: s.u,
                    orbits: s.orbits[..n - 1].to_vec(),
                    v: x,
                });
                add(&mut out, k, 1);
            }
        } else {
            let g = self.gens.len();
            let table = &self.comp[(t[i - 1] * g + t[i]) * g + t[i + 1]];
            let mut tuple = t.clone();
            tuple.remove(i);
            for &(q, c) in &table[s.orbits[i - 1]][s.orbits[i]] {
                let mut orbits = s.orbits.clone();
                orbits.remove(i);
                orbits[i - 1] = q;
                let k = self.encode(&Simplex {
                    tuple: tuple.clone(),
                    u: s.u,
                    orbits,
                    v: s.v,
                });
                add(&mut out, k, c);
            }
        }
        out
    }

    /// `s_j: B_n → B_{n+1}`, inserting the identity class of `A_j`.
    pub fn degeneracy(&self, n: usize, j: usize, idx: usize) -> BTreeMap<usize, i64> {
        let s = self.decode(n, idx);
        let mut tuple = s.tuple.clone();
        tuple.insert(j, s.tuple[j]);
        let mut out = Sparse::new();
        for &d in &self.diagonal[s.tuple[j]] {
            let mut orbits = s.orbits.clone();
            orbits.insert(j, d);
            let k = self.encode(&Simplex {
                tuple: tuple.clone(),
                u: s.u,
                orbits,
                v: s.v,
            });
            add(&mut out, k, 1);
        }
        out
    }

    /// `d = Σ (-1)^i ∂_i: B_n → B_{n-1}` on a basis element.
    pub fn differential(&self, n: usize, idx: usize) -> BTreeMap<usize, i64> {
        let mut out = Sparse::new();
        for i in 0..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (k, c) in self.face(n, i, idx) {
                add(&mut out, k, sign * c);
            }
        }
        out
    }

    fn apply(&self, x: &Sparse, f: impl Fn(usize) -> Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&k, &c) in x {
            for (j, d) in f(k) {
                add(&mut out, j, c * d);
            }
        }
        out
    }

    /// Simplicial identities and `d² = 0` on every basis element of degree
    /// at most `max_degree` (capped at the truncation).
    pub fn check_simplicial(&self, max_degree: usize) -> SimplicialReport {
        let top = max_degree.min(self.truncation());
        let mut report = SimplicialReport {
            max_degree: top,
            checked: 0,
            failures: Vec::new(),
            d_squared_zero: true,
        };
        let unit = |k: usize| -> Sparse { [(k, 1)].into_iter().collect() };
        let fail = |report: &mut SimplicialReport, what: String| {
            if report.failures.len() < 16 {
                report.failures.push(what);
            }
        };
        for n in 0..=top {
            for idx in 0..self.terms[n].dim() {
                let x = unit(idx);
                if n >= 2 {
                    for j in 0..=n {
                        for i in 0..j {
                            report.checked += 1;
                            let l = self.apply(&self.face(n, j, idx), |k| self.face(n - 1, i, k));
                            let r = self.apply(&self.face(n, i, idx), |k| self.face(n - 1, j - 1, k));
                            if l != r {
                                fail(&mut report, format!("d{i} d{j} on B{n}[{idx}]"));
                            }
                        }
                    }
                    report.checked += 1;
                    let dd = self.apply(&self.differential(n, idx), |k| self.differential(n - 1, k));
                    if !dd.is_empty() {
                        report.d_squared_zero = false;
                        fail(&mut report, format!("d² on B{n}[{idx}]"));
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let sj = self.degeneracy(n, j, idx);
                        for i in 0..=n + 1 {
                            report.checked += 1;
                            let l = self.apply(&sj, |k| self.face(n + 1, i, k));
                            let r = if i < j {
                                self.apply(&self.face(n, i, idx), |k| self.degeneracy(n - 1, j - 1, k))
                            } else if i == j || i == j + 1 {
                                x.clone()
                            } else {
                                self.apply(&self.face(n, i - 1, idx), |k| self.degeneracy(n - 1, j, k))
                            };
                            if l != r {
                                fail(&mut report, format!("d{i} s{j} on B{n}[{idx}]"));
                            }
                        }
                    }
                }
                if n + 2 <= top {
                    for j in 0..=n {
                        for i in 0..=j {
                            report.checked += 1;
                            let l = self.apply(&self.degeneracy(n, j, idx), |k| self.degeneracy(n + 1, i, k));
                            let r = self.apply(&self.degeneracy(n, i, idx), |k| self.degeneracy(n + 1, j + 1, k));
                            if l != r {
                                fail(&mut report, format!("s{i} s{j} on B{n}[{idx}]"));
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// `d_1: B_1 → B_0` as a dense matrix over the coefficient ring.
    pub fn d1_matrix(&self) -> Result<Matrix> {
        let (rows, cols) = (self.terms[0].dim(), self.terms[1].dim());
        let mut m = Matrix::zeros(self.ring, rows, cols)?;
        for c in 0..cols {
            for (r, v) in self.differential(1, c) {
                m.add_to(r, c, &self.ring.from_i64(v));
            }
        }
        Ok(m)
    }

    /// `dim H₀ = dim B_0 − rank d_1`.
    pub fn h0_dim(&self) -> Result<usize> {
        Ok(self.terms[0].dim() - self.d1_matrix()?.rank_kernel()?.0)
    }

    fn b0(&self, a: usize, x: usize, y: usize) -> usize {
        self.encode(&Simplex {
            tuple: vec![a],
            u: x,
            orbits: Vec::new(),
            v: y,
        })
    }

    /// `(a, x, y)·(b, x', y')`: the pair `((x, x'), (y, y'))` in `X_a × X_b`,
    /// carried by the closure witness when both points share an orbit.
    fn b0_product(&self, i: usize, j: usize) -> Option<usize> {
        let (s, t) = (self.decode(0, i), self.decode(0, j));
        let (a, b) = (s.tuple[0], t.tuple[0]);
        let nb = self.gens.points(b);
        let pair = self.gens.pair(a, b);
        let (p, q) = (s.u * nb + t.u, s.v * nb + t.v);
        let o = pair.orbit_of[p];
        (o == pair.orbit_of[q]).then(|| self.b0(pair.witnesses[o].target, pair.embed[p], pair.embed[q]))
    }

    fn b0_coproduct(&self, i: usize) -> Vec<(usize, usize)> {
        let s = self.decode(0, i);
        let a = s.tuple[0];
        (0..self.gens.points(a)).map(|z| (self.b0(a, s.u, z), self.b0(a, z, s.v))).collect()
    }
}

/// Outcome of [`BarDatum::check_simplicial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialReport {
    pub max_degree: usize,
    pub checked: usize,
    /// First few failing identities.
    pub failures: Vec<String>,
    pub d_squared_zero: bool,
}

impl SimplicialReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty() && self.d_squared_zero
    }
}

/// Structure maps on `H₀` in a chosen basis, with the flattened layouts of
/// [`HopfAlg`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Structure {
    pub dim: usize,
    pub mult: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    pub comult: Vec<Scalar>,
    pub counit: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraReport {
    pub h0_dim: usize,
    /// Product, coproduct and counit kill the image of `d_1`.
    pub descends: bool,
    /// Associativity, unit, coassociativity, counit, multiplicativity of
    /// `Δ` and of `ε`.
    pub flags: Vec<(HopfAxiom, bool)>,
    pub structure: H0Structure,
}

impl BialgebraReport {
    pub fn passes(&self) -> bool {
        self.descends && self.flags.iter().all(|(_, ok)| *ok)
    }
}

/// Bialgebra structure on `H₀` of the sum-total complex: product through the
/// closure witnesses, coproduct by inserting `Σ e_z ⊗ e_z`, counit the trace.
pub fn bialgebra_check(bar: &BarDatum) -> Result<BialgebraReport> {
    let ring = bar.ring;
    let d1 = bar.d1_matrix()?;
    let n0 = d1.rows();
    let (_, ann) = d1.transpose().rank_kernel()?;
    let h = ann.len();
    let p = Matrix::new(ring, h, n0, ann.concat())?;
    let mut pivots: Vec<usize> = Vec::with_capacity(h);
    for c in 0..n0 {
        let mut cand = pivots.clone();
        cand.push(c);
        if p.select_columns(&cand)?.rank() == cand.len() {
            pivots = cand;
        }
        if pivots.len() == h {
            break;
        }
    }
    let inv = p.select_columns(&pivots)?.inverse()?;
    let lift: Vec<Vec<Scalar>> = (0..h)
        .map(|alpha| {
            let mut v = vec![ring.zero(); n0];
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = inv.get(k, alpha).clone();
            }
            v
        })
        .collect();
    let project = |v: &[Scalar]| p.mul_vec(v);
    let product = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![ring.zero(); n0];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if let Some(k) = bar.b0_product(i, j) {
                    out[k] = ring.add(&out[k], &ring.mul(a, b));
                }
            }
        }
        out
    };
    let coproduct_projected = |x: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![ring.zero(); h * h];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (l, r) in bar.b0_coproduct(i) {
                for al in 0..h {
                    let pl = p.get(al, l);
                    if pl.is_zero() {
                        continue;
                    }
                    let s = ring.mul(a, pl);
                    for be in 0..h {
                        let t = ring.mul(&s, p.get(be, r));
                        out[al * h + be] = ring.add(&out[al * h + be], &t);
                    }
                }
            }
        }
        out
    };
    let counit = |x: &[Scalar]| -> Scalar {
        let mut acc = ring.zero();
        for (i, a) in x.iter().enumerate() {
            let s = bar.decode(0, i);
            if s.u == s.v {
                acc = ring.add(&acc, a);
            }
        }
        acc
    };
    let norm = |v: Vec<Scalar>| v.into_iter().map(|x| ring.normalize(x)).collect::<Result<Vec<_>>>();
    let is_zero = |v: &[Scalar]| -> Result<bool> { Ok(norm(v.to_vec())?.iter().all(Zero::is_zero)) };

    let mut descends = true;
    let basis = |k: usize| -> Vec<Scalar> {
        let mut v = vec![ring.zero(); n0];
        v[k] = ring.one();
        v
    };
    'outer: for c in 0..d1.cols() {
        let r = d1.column(c);
        if !is_zero(&[counit(&r)])? || !is_zero(&coproduct_projected(&r))? {
            descends = false;
            break;
        }
        for k in 0..n0 {
            let e = basis(k);
            if !is_zero(&project(&product(&r, &e))?)? || !is_zero(&project(&product(&e, &r))?)? {
                descends = false;
                break 'outer;
            }
        }
    }

    let mut mult = vec![ring.zero(); h * h * h];
    for a in 0..h {
        for b in 0..h {
            let m = norm(project(&product(&lift[a], &lift[b]))?)?;
            for (g, x) in m.into_iter().enumerate() {
                mult[(a * h + b) * h + g] = x;
            }
        }
    }
    let mut comult = vec![ring.zero(); h * h * h];
    for g in 0..h {
        let d = norm(coproduct_projected(&lift[g]))?;
        for (k, x) in d.into_iter().enumerate() {
            comult[g * h * h + k] = x;
        }
    }
    let unit_vec = basis(bar.b0(bar.gens.unit(), 0, 0));
    let unit = norm(project(&unit_vec)?)?;
    let counit_h = norm(lift.iter().map(|v| counit(v)).collect())?;
    let structure = H0Structure {
        dim: h,
        mult,
        unit,
        comult,
        counit: counit_h,
    };
    let labels = (0..h).map(|i| format!("h{i}")).collect();
    let alg = HopfAlg::new(
        ring,
        labels,
        structure.mult.clone(),
        structure.unit.clone(),
        structure.comult.clone(),
        structure.counit.clone(),
        Matrix::identity(ring, h)?,
    )?;
    let flags = verify_hopf(&alg)
        .flags
        .into_iter()
        .filter(|(a, _)| *a != HopfAxiom::Antipode)
        .map(|(a, w)| (a, w.is_none()))
        .collect();
    Ok(BialgebraReport {
        h0_dim: h,
        descends,
        flags,
        structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motivic_bar::{base_corpus, gaussian_corpus};

    #[test]
    fn base_field_gives_the_ring() {
        let gs = base_corpus(CoeffRing::Rationals).unwrap();
        let bar = build_bar(&gs, 2, CoeffRing::Rationals).unwrap();
        assert_eq!(bar.term_dims(), [1, 1, 1]);
        assert!(bar.check_simplicial(2).passes());
        let r = bialgebra_check(&bar).unwrap();
        assert_eq!(r.h0_dim, 1);
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn gaussian_terms() {
        let gs = gaussian_corpus().unwrap();
        let bar = build_bar(&gs, 2, CoeffRing::Rationals).unwrap();
        assert_eq!(bar.term_dims(), [21, 221, 2326]);
        assert_eq!(bar.h0_dim().unwrap(), 2);
    }

    #[test]
    fn truncation_below_two_is_rejected() {
        let gs = base_corpus(CoeffRing::Rationals).unwrap();
        assert!(build_bar(&gs, 1, CoeffRing::Rationals).is_err());
        assert!(build_bar(&gs, 2, CoeffRing::Integers).is_err());
    }
}
