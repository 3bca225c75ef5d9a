use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::hopf::FinGroup;

/// Finite left G-set: `action[g][x] = g·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn empty(g: &FinGroup) -> Self {
        GSet {
            action: vec![Vec::new(); g.order()],
        }
    }

    /// Left cosets `G/H`, numbered by smallest element.
    pub fn cosets(g: &FinGroup, h: &[usize]) -> Self {
        let n = g.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if label[x] == usize::MAX {
                for &y in h {
                    label[g.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        let action = (0..n).map(|a| reps.iter().map(|&r| label[g.mul(a, r)]).collect()).collect();
        GSet { action }
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let off = self.len();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + off)).collect())
            .collect();
        GSet { action }
    }

    /// Diagonal action on `X × Y`, point `(x, y)` at `x·|Y| + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        let m = other.len();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                (0..self.len() * m).map(|p| a[p / m] * m + b[p % m]).collect()
            })
            .collect();
        GSet { action }
    }

    pub fn len(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.action.len()).filter(|&g| self.action[g][x] == x).collect()
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.action.iter().map(|a| a[x]).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// An equivariant map `orbit(x) → orbit(y)` sending `x ↦ y`, when the
    /// stabilizers agree; as `(source point, image)` pairs.
    pub fn orbit_iso(&self, x: usize, other: &GSet, y: usize) -> Option<Vec<(usize, usize)>> {
        if self.stabilizer(x) != other.stabilizer(y) {
            return None;
        }
        let mut out: Vec<(usize, usize)> = (0..self.action.len())
            .map(|g| (self.act(g, x), other.act(g, y)))
            .collect();
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// `f(g·x) = g·f(x)` for a map `self → other`.
    pub fn is_equivariant(&self, other: &GSet, f: &[usize]) -> bool {
        f.len() == self.len()
            && f.iter().all(|&y| y < other.len())
            && (0..self.action.len()).all(|g| (0..self.len()).all(|x| f[self.act(g, x)] == other.act(g, f[x])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_and_orbits() {
        let s3 = FinGroup::symmetric3();
        let x = GSet::cosets(&s3, &[0, 1]);
        assert_eq!(x.len(), 3);
        assert_eq!(x.orbits().len(), 1);
        let xx = x.product(&x);
        let orbit_sizes: Vec<usize> = xx.orbits().iter().map(Vec::len).collect();
        assert_eq!(orbit_sizes.iter().sum::<usize>(), 9);
        assert_eq!(orbit_sizes.len(), 2);
        let t = GSet::cosets(&s3, &[0]);
        assert!(x.orbit_iso(0, &t, 0).is_none());
        assert!(x.orbit_iso(0, &x, 0).is_some());
    }
}
