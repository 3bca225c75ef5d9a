use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, shape, Result};

/// Finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FinGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(shape!("multiplication table must be a nonempty square over 0..{n}"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| invalid!("no identity element"))?;
        let mut inverses = vec![0; n];
        for x in 0..n {
            inverses[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| invalid!("element {x} has no inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(invalid!("multiplication is not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FinGroup {
            name: name.into(),
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(format!("Z{n}"), table).expect("cyclic group")
    }

    /// `a × b`, element `(x, y)` at index `x * |b| + y`.
    pub fn product(a: &FinGroup, b: &FinGroup) -> Self {
        let (n, m) = (a.order(), b.order());
        let table = (0..n * m)
            .map(|p| (0..n * m).map(|q| a.mul(p / m, q / m) * m + b.mul(p % m, q % m)).collect())
            .collect();
        Self::new(format!("{}x{}", a.name, b.name), table).expect("product of groups")
    }

    /// Group generated by permutations of `0..degree`; elements sorted
    /// lexicographically, so the identity permutation comes first.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let id: Vec<usize> = (0..degree).collect();
        for g in gens {
            let mut s = g.clone();
            s.sort_unstable();
            if s != id {
                return Err(invalid!("{g:?} is not a permutation of 0..{degree}"));
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..degree).map(|i| p[q[i]]).collect() };
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let r = compose(g, &p);
                if seen.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: BTreeMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let table = elems
            .iter()
            .map(|p| elems.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        Self::new(name, table)
    }

    /// S₃ acting on three points; `(0 1)` is element 1.
    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        !h.is_empty()
            && h.iter().all(|&x| x < self.order())
            && h.iter().all(|&a| h.contains(&self.inv(a)) && h.iter().all(|&b| h.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        self.is_subgroup(h)
            && (0..self.order()).all(|g| h.iter().all(|&x| h.contains(&self.mul(self.mul(g, x), self.inv(g)))))
    }

    /// Left cosets `gN` of a normal subgroup as a quotient group, with the
    /// projection; cosets are numbered by their smallest element.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FinGroup, GroupHom)> {
        if !self.is_normal(normal) {
            return Err(invalid!("{normal:?} is not a normal subgroup of {}", self.name));
        }
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if label[g] == usize::MAX {
                for &x in normal {
                    label[self.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| label[self.mul(a, b)]).collect())
            .collect();
        let q = FinGroup::new(format!("{}/N", self.name), table)?;
        let pi = GroupHom::new(self, &q, label)?;
        Ok((q, pi))
    }
}

/// Group homomorphism, checked on the full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    map: Vec<usize>,
    target_order: usize,
}

impl GroupHom {
    pub fn new(source: &FinGroup, target: &FinGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(shape!("map must send {} elements into 0..{}", source.order(), target.order()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(invalid!("not a homomorphism at ({a}, {b})"));
                }
            }
        }
        Ok(GroupHom {
            map,
            target_order: target.order(),
        })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let s3 = FinGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(s3.is_subgroup(&[0, 1]));
        assert!(!s3.is_normal(&[0, 1]));
        let a3: Vec<usize> = (0..6).filter(|&g| s3.mul(g, s3.mul(g, g)) == 0).collect();
        assert_eq!(a3.len(), 3);
        assert!(s3.is_normal(&a3));
        let v4 = FinGroup::product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        assert!((0..4).all(|g| v4.mul(g, g) == 0));
    }

    #[test]
    fn quotients() {
        let z6 = FinGroup::cyclic(6);
        let (q, pi) = z6.quotient(&[0, 2, 4]).unwrap();
        assert_eq!(q.order(), 2);
        assert!(pi.is_surjective());
        assert!(z6.quotient(&[0, 2]).is_err());
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FinGroup::new("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FinGroup::from_permutations("bad", 3, &[vec![0, 0, 1]]).is_err());
        let z4 = FinGroup::cyclic(4);
        let z2 = FinGroup::cyclic(2);
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 1, 0]).is_err());
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap().is_surjective());
    }
}
