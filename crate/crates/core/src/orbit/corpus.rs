use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::category::{CompEntry, GradedCat, GradedCatSpec, HomEntry};
use super::twist::{TwistAction, TwistData};
use crate::coeffs::{CoeffRing, Matrix, Scalar};
use crate::error::Result;

fn ints(ring: CoeffRing, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| ring.from_i64(x)).collect()
}

/// One label `R`, `Hom(R⟨m⟩, R⟨n⟩) = R` exactly when `m = n`, twist
/// `O = R⟨1⟩`.
pub fn pure_grade(ring: CoeffRing) -> Result<(GradedCat, TwistData)> {
    let cat = GradedCat::new(GradedCatSpec {
        ring,
        labels: vec!["R".to_string()],
        homs: vec![HomEntry { src: 0, tgt: 0, grade: 0, rank: 1 }],
        comps: vec![CompEntry { x: 0, y: 0, z: 0, i: 0, j: 0, table: ints(ring, &[1]) }],
        identities: vec![ints(ring, &[1])],
        tensor: Some((0, vec![vec![0]])),
    })?;
    let tw = TwistData::new(&cat, (0, 1), (0, -1), Vec::new(), None)?;
    Ok((cat, tw))
}

/// Labels `1` and `E`: `hom(1, E)` has rank 2 in grades 0 and 1, `E`
/// carries a square-zero endomorphism `ε` of grade 1 and the twist acts on
/// `hom(1, E)` by a unipotent matrix.
pub fn two_object(ring: CoeffRing) -> Result<(GradedCat, TwistData)> {
    let id2 = ints(ring, &[1, 0, 0, 1]);
    let c = |x, y, z, i, j, t: &[Scalar]| CompEntry { x, y, z, i, j, table: t.to_vec() };
    let h = |src, tgt, grade, rank| HomEntry { src, tgt, grade, rank };
    let cat = GradedCat::new(GradedCatSpec {
        ring,
        labels: vec!["1".to_string(), "E".to_string()],
        homs: vec![h(0, 0, 0, 1), h(1, 1, 0, 1), h(1, 1, 1, 1), h(0, 1, 0, 2), h(0, 1, 1, 2)],
        comps: vec![
            c(0, 0, 0, 0, 0, &ints(ring, &[1])),
            c(1, 1, 1, 0, 0, &ints(ring, &[1])),
            c(1, 1, 1, 0, 1, &ints(ring, &[1])),
            c(1, 1, 1, 1, 0, &ints(ring, &[1])),
            c(0, 0, 1, 0, 0, &id2),
            c(0, 0, 1, 0, 1, &id2),
            c(0, 1, 1, 0, 0, &id2),
            c(0, 1, 1, 1, 0, &id2),
            c(0, 1, 1, 0, 1, &id2),
        ],
        identities: vec![ints(ring, &[1]), ints(ring, &[1])],
        tensor: Some((0, vec![vec![0, 1], vec![1, 1]])),
    })?;
    let u = Matrix::from_i64(ring, 2, 2, &[1, 1, 0, 1])?;
    let actions = vec![
        TwistAction { x: 0, y: 1, grade: 0, matrix: u.clone() },
        TwistAction { x: 0, y: 1, grade: 1, matrix: u },
    ];
    let tw = TwistData::new(&cat, (0, 1), (0, -1), actions, None)?;
    Ok((cat, tw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{
        associativity_defects, orbit_compose, orbit_hom, project, twist_naturality_defects, twist_projection_iso,
        Obj, OrbitMor,
    };

    const Q: CoeffRing = CoeffRing::Rationals;

    #[test]
    fn pure_grade_collapses() {
        let (cat, tw) = pure_grade(Q).unwrap();
        for m in -3..=3 {
            for n in -3..=3 {
                let h = orbit_hom(&cat, &tw, &Obj::basic(0, m), &Obj::basic(0, n)).unwrap();
                assert_eq!(h.into_iter().collect::<Vec<_>>(), [(m - n, 1)]);
            }
        }
    }

    #[test]
    fn direct_sum_against_a_point() {
        let (cat, tw) = pure_grade(Q).unwrap();
        let a = Obj::sum(&[Obj::basic(0, 0), Obj::basic(0, 1)]);
        let h = orbit_hom(&cat, &tw, &a, &Obj::basic(0, 0)).unwrap();
        // brute force: sum over a window of twists of the plain hom ranks
        let brute: usize = (-10..=10).map(|i| cat.hom_rank(&a, &tw.apply_obj(&Obj::basic(0, 0), i))).sum();
        assert_eq!(h.values().sum::<usize>(), 2);
        assert_eq!(brute, 2);
    }

    #[test]
    fn identity_sits_in_component_zero() {
        let (cat, tw) = two_object(Q).unwrap();
        let e = Obj::basic(1, 0);
        let h = orbit_hom(&cat, &tw, &e, &e).unwrap();
        assert!(h[&0] >= 1);
        let id = OrbitMor::identity(&cat, &e);
        assert_eq!(id.components.keys().copied().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn grading_is_additive() {
        let (cat, tw) = pure_grade(Q).unwrap();
        let f = OrbitMor::single(&tw, 2, cat.identity(&Obj::basic(0, 0))).unwrap();
        assert_eq!(f.tgt, Obj::basic(0, -2));
        let g = OrbitMor::single(&tw, -1, cat.identity(&Obj::basic(0, -2))).unwrap();
        let gf = orbit_compose(&cat, &tw, &f, &g).unwrap();
        assert_eq!(gf.components.keys().copied().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn pure_grade_associativity() {
        let (cat, tw) = pure_grade(Q).unwrap();
        let objs: Vec<Obj> = (-1..=1).map(|n| Obj::basic(0, n)).collect();
        let (checked, failed) = associativity_defects(&cat, &tw, &objs, 3).unwrap();
        assert!(checked > 0);
        assert_eq!(failed, 0);
    }

    #[test]
    fn two_object_checks() {
        let (cat, tw) = two_object(Q).unwrap();
        let objs = [Obj::basic(0, 0), Obj::basic(1, 0), Obj::basic(1, 1)];
        assert_eq!(associativity_defects(&cat, &tw, &objs, 1).unwrap().1, 0);
        let (checked, failed) = twist_naturality_defects(&cat, &tw, &objs).unwrap();
        assert!(checked > 3);
        assert_eq!(failed, 0);
        let h = orbit_hom(&cat, &tw, &objs[0], &objs[1]).unwrap();
        assert_eq!(h.values().sum::<usize>(), 4);
    }

    #[test]
    fn projection_is_functorial_and_faithful() {
        let (cat, tw) = two_object(Q).unwrap();
        let (a, b, c) = (Obj::basic(0, 0), Obj::basic(1, 0), Obj::basic(1, 1));
        assert_eq!(project(&cat.identity(&a)), OrbitMor::identity(&cat, &a));
        for f in cat.hom_basis(&a, &b) {
            for g in cat.hom_basis(&b, &c) {
                let lhs = project(&cat.compose(&g, &f).unwrap());
                let rhs = orbit_compose(&cat, &tw, &project(&f), &project(&g)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let images = cat.hom_basis(&a, &b).iter().map(project).filter(|m| !m.components.is_empty()).count();
        assert_eq!(images, cat.hom_rank(&a, &b));
        assert_eq!(orbit_hom(&cat, &tw, &a, &b).unwrap()[&0], cat.hom_rank(&a, &b));
    }

    #[test]
    fn twist_iso_is_invertible() {
        let (cat, tw) = pure_grade(Q).unwrap();
        let a = Obj::basic(0, 4);
        let iso = twist_projection_iso(&cat, &tw, &a).unwrap();
        assert_eq!(iso.forward.src, Obj::basic(0, 5));
        let back = orbit_compose(&cat, &tw, &iso.forward, &iso.inverse).unwrap();
        assert_eq!(back, OrbitMor::identity(&cat, &Obj::basic(0, 5)));
    }

    #[test]
    fn bad_presentations_are_rejected() {
        let mut spec = GradedCatSpec {
            ring: Q,
            labels: vec!["R".to_string()],
            homs: vec![HomEntry { src: 0, tgt: 0, grade: 0, rank: 1 }],
            comps: vec![CompEntry { x: 0, y: 0, z: 0, i: 0, j: 0, table: ints(Q, &[2]) }],
            identities: vec![ints(Q, &[1])],
            tensor: None,
        };
        assert!(GradedCat::new(spec.clone()).is_err());
        spec.comps[0].table = ints(Q, &[1]);
        let cat = GradedCat::new(spec).unwrap();
        let tw = TwistData::new(&cat, (0, 1), (0, -1), Vec::new(), None).unwrap();
        assert!(twist_projection_iso(&cat, &tw, &Obj::basic(0, 0)).is_err());
        assert!(TwistData::new(&cat, (0, 0), (0, 0), Vec::new(), None).is_err());
        let bad = Matrix::from_i64(Q, 1, 1, &[2]).unwrap();
        // scaling the identity is not a functor
        assert!(TwistData::new(&cat, (0, 1), (0, -1), vec![TwistAction { x: 0, y: 0, grade: 0, matrix: bad }], None).is_err());
        assert!(orbit_hom(&cat, &tw, &Obj::basic(3, 0), &Obj::basic(0, 0)).is_err());
    }
}
