use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::group::FinGroup;
use crate::algebras::{etale_algebra, factor_degrees, tensor_algebra, EtaleSpec};
use crate::coeffs::CoeffRing;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub name: String,
    /// Sorted element indices.
    pub elements: Vec<usize>,
    pub normal: bool,
}

/// A finite Galois group with named subgroups and, optionally, the fixed
/// field of some of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisDatum {
    group: FinGroup,
    subgroups: Vec<Subgroup>,
    fields: BTreeMap<String, EtaleSpec>,
}

impl GaloisDatum {
    pub fn new(group: FinGroup) -> Self {
        GaloisDatum {
            group,
            subgroups: Vec::new(),
            fields: BTreeMap::new(),
        }
    }

    /// Registers a subgroup; normality is computed, not trusted.
    pub fn add_subgroup(&mut self, name: &str, elements: &[usize]) -> Result<&Subgroup> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.group.is_subgroup(&elems) {
            return Err(invalid!("{name} = {elements:?} is not a subgroup of {}", self.group.name()));
        }
        if self.subgroups.iter().any(|s| s.name == name) {
            return Err(invalid!("subgroup {name} registered twice"));
        }
        let normal = self.group.is_normal(&elems);
        self.subgroups.push(Subgroup {
            name: name.into(),
            elements: elems,
            normal,
        });
        Ok(self.subgroups.last().expect("just pushed"))
    }

    /// Records the fixed field of a registered subgroup; its degree must be
    /// the index of the subgroup.
    pub fn set_field(&mut self, subgroup: &str, field: EtaleSpec) -> Result<()> {
        let h = self.subgroup(subgroup)?;
        let index = self.group.order() / h.elements.len();
        if field.dim() != index || field.factor_degrees().len() != 1 {
            return Err(invalid!(
                "fixed field of {subgroup} must be a field of degree {index}, got factor degrees {:?}",
                field.factor_degrees()
            ));
        }
        self.fields.insert(subgroup.into(), field);
        Ok(())
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        self.subgroups.iter().find(|s| s.name == name).ok_or_else(|| Error::Unknown {
            kind: "subgroup",
            name: name.into(),
        })
    }

    pub fn field(&self, subgroup: &str) -> Option<&EtaleSpec> {
        self.fields.get(subgroup)
    }

    /// `[G : H]`.
    pub fn index(&self, subgroup: &str) -> Result<usize> {
        Ok(self.group.order() / self.subgroup(subgroup)?.elements.len())
    }
}

/// The classes `H' g H`, each sorted, ordered by smallest element.
pub fn double_cosets(gd: &GaloisDatum, h_prime: &str, h: &str) -> Result<Vec<Vec<usize>>> {
    let g = gd.group();
    let (hp, hh) = (&gd.subgroup(h_prime)?.elements, &gd.subgroup(h)?.elements);
    let mut seen = alloc::vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut class = BTreeSet::new();
        for &a in hp {
            for &b in hh {
                class.insert(g.mul(g.mul(a, x), b));
            }
        }
        for &y in &class {
            seen[y] = true;
        }
        out.push(class.into_iter().collect());
    }
    Ok(out)
}

/// Degrees `[G : H' ∩ σHσ⁻¹]` of the factors of `l' ⊗ l`, one per double
/// coset `H'σH`, sorted.
pub fn galois_tensor_degrees(gd: &GaloisDatum, h_prime: &str, h: &str) -> Result<Vec<usize>> {
    let g = gd.group();
    let hp = &gd.subgroup(h_prime)?.elements;
    let hh = &gd.subgroup(h)?.elements;
    let mut out = Vec::new();
    for class in double_cosets(gd, h_prime, h)? {
        let s = class[0];
        let conj: BTreeSet<usize> = hh.iter().map(|&x| g.mul(g.mul(s, x), g.inv(s))).collect();
        let meet = hp.iter().filter(|x| conj.contains(x)).count();
        out.push(g.order() / meet);
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionRoute {
    /// Factor degrees of the tensor algebra computed from its structure.
    Direct,
    /// Read off the double cosets of a Galois datum.
    Galois,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDecomposition {
    /// `(degree, multiplicity)`, ascending by degree.
    pub factors: Vec<(usize, usize)>,
    pub route: DecompositionRoute,
}

impl TensorDecomposition {
    fn from_degrees(degrees: &[usize], route: DecompositionRoute) -> Self {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for &d in degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        TensorDecomposition {
            factors: m.into_iter().collect(),
            route,
        }
    }

    pub fn count(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.0 * f.1).sum()
    }
}

/// Factor degrees of `l' ⊗ l` read from the multiplication table of the
/// tensor algebra (any base).
pub fn direct_tensor_degrees(lp: &EtaleSpec, l: &EtaleSpec) -> Result<Vec<usize>> {
    if lp.base() != l.base() {
        return Err(Error::RingMismatch(alloc::format!("{} vs {}", lp.base(), l.base())));
    }
    let t = tensor_algebra(&etale_algebra(lp)?, &etale_algebra(l)?)?;
    let mut d = factor_degrees(&t)?;
    d.sort_unstable();
    Ok(d)
}

/// `l' ⊗_k l` as a product of fields. Over a prime field the decomposition
/// is computed from the tensor algebra; over ℚ it is read from the Galois
/// datum `(gd, H', H)` whose fixed fields must be `l'` and `l`.
pub fn etale_tensor_decompose(
    lp: &EtaleSpec,
    l: &EtaleSpec,
    galois: Option<(&GaloisDatum, &str, &str)>,
) -> Result<TensorDecomposition> {
    if lp.base() != l.base() {
        return Err(Error::RingMismatch(alloc::format!("{} vs {}", lp.base(), l.base())));
    }
    match lp.base() {
        CoeffRing::PrimeField(_) => Ok(TensorDecomposition::from_degrees(
            &direct_tensor_degrees(lp, l)?,
            DecompositionRoute::Direct,
        )),
        CoeffRing::Rationals => {
            let (gd, hp, h) = galois.ok_or_else(|| {
                Error::Unsupported("tensor decomposition over ℚ needs Galois data".into())
            })?;
            for (name, field) in [(hp, lp), (h, l)] {
                if gd.index(name)? != field.dim() {
                    return Err(invalid!("degree {} does not match the index of {name}", field.dim()));
                }
                if let Some(known) = gd.field(name) {
                    if known != field {
                        return Err(invalid!("field does not match the recorded fixed field of {name}"));
                    }
                }
            }
            Ok(TensorDecomposition::from_degrees(
                &galois_tensor_degrees(gd, hp, h)?,
                DecompositionRoute::Galois,
            ))
        }
        CoeffRing::Integers => Err(Error::NotAField("ℤ".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_datum() -> GaloisDatum {
        let mut gd = GaloisDatum::new(FinGroup::cyclic(4));
        gd.add_subgroup("1", &[0]).unwrap();
        gd.add_subgroup("2", &[0, 2]).unwrap();
        gd.add_subgroup("G", &[0, 1, 2, 3]).unwrap();
        gd
    }

    #[test]
    fn z4_counts() {
        let gd = z4_datum();
        assert_eq!(double_cosets(&gd, "2", "1").unwrap().len(), 2);
        assert_eq!(double_cosets(&gd, "G", "G").unwrap().len(), 1);
        assert!(gd.subgroup("2").unwrap().normal);
        assert!(double_cosets(&gd, "3", "1").is_err());
    }

    #[test]
    fn s3_reflections() {
        let mut gd = GaloisDatum::new(FinGroup::symmetric3());
        gd.add_subgroup("t", &[0, 1]).unwrap();
        assert!(!gd.subgroup("t").unwrap().normal);
        let dc = double_cosets(&gd, "t", "t").unwrap();
        assert_eq!(dc.len(), 2);
        assert_eq!(dc.iter().map(Vec::len).sum::<usize>(), 6);
        assert_eq!(galois_tensor_degrees(&gd, "t", "t").unwrap(), [3, 6]);
    }

    #[test]
    fn finite_field_tensors() {
        let f4 = EtaleSpec::finite_field(2, 2).unwrap();
        let f16 = EtaleSpec::finite_field(2, 4).unwrap();
        let d = etale_tensor_decompose(&f4, &f16, None).unwrap();
        assert_eq!(d.factors, [(4, 2)]);
        assert_eq!(d.total_dim(), 8);
        let f2 = EtaleSpec::finite_field(2, 1).unwrap();
        assert_eq!(etale_tensor_decompose(&f4, &f2, None).unwrap().factors, [(2, 1)]);
    }

    #[test]
    fn gaussian_square() {
        let qi = EtaleSpec::from_i64(CoeffRing::Rationals, &[&[1, 0, 1]]).unwrap();
        assert!(etale_tensor_decompose(&qi, &qi, None).is_err());
        let mut gd = GaloisDatum::new(FinGroup::cyclic(2));
        gd.add_subgroup("1", &[0]).unwrap();
        gd.set_field("1", qi.clone()).unwrap();
        let d = etale_tensor_decompose(&qi, &qi, Some((&gd, "1", "1"))).unwrap();
        assert_eq!(d.factors, [(2, 2)]);
        assert_eq!(direct_tensor_degrees(&qi, &qi).unwrap(), [2, 2]);
        let q = EtaleSpec::from_i64(CoeffRing::Rationals, &[&[0, 1]]).unwrap();
        assert!(gd.set_field("1", q).is_err());
    }
}
