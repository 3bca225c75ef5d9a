use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;

use super::cube::Cube;
use super::enumerate::{enumerate_ses, CubeIndex, Extender};
use super::oracle::{k_oracle, KOracleReport};
use super::ExactCatSpec;
use crate::coeffs::sparse::SparseRank;
use crate::coeffs::{ChainComplex, CoeffRing, HomologyReport, Matrix, Scalar, MAX_COLS};
use crate::error::{invalid, Error, Result};

/// Boundary columns of one degree, as sparse `(row, coefficient)` lists.
type SparseColumns = Vec<Vec<(usize, i64)>>;

/// Boundary `Σ_i Σ_j (-1)^(i+j) ∂_i^j` (with `i` counted from one) of a
/// cube, as coordinates over the non-degenerate cubes one degree down.
/// Degenerate faces vanish.
pub fn boundary(spec: &ExactCatSpec, cube: &Cube, lower: &CubeIndex) -> Result<Vec<(usize, i64)>> {
    let n = cube.n();
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for i in 0..n {
        for j in [-1i8, 0, 1] {
            let f = cube.face(i, j);
            if f.is_degenerate(spec) {
                continue;
            }
            let k = lower
                .get(&f)
                .ok_or_else(|| invalid!("face ∂_{}^{j} is missing from the enumeration", i + 1))?;
            let sign = if ((i + 1) as i64 + j as i64).rem_euclid(2) == 0 { 1 } else { -1 };
            *acc.entry(k).or_insert(0) += sign;
        }
    }
    Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

/// Normalized boundary of a degenerate cube; must be zero for the quotient
/// by degenerate cubes to be a complex. Returns the offending coordinates.
pub fn degenerate_closure_defect(spec: &ExactCatSpec, cube: &Cube, lower: &CubeIndex) -> Result<Vec<(usize, i64)>> {
    boundary(spec, cube, lower)
}

fn boundary_squared_is_zero(
    spec: &ExactCatSpec,
    col: &[(usize, i64)],
    lower_cubes: &[Cube],
    lower2: &CubeIndex,
) -> Result<bool> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for &(k, c) in col {
        for (r, x) in boundary(spec, &lower_cubes[k], lower2)? {
            *acc.entry(r).or_insert(0) += c * x;
        }
    }
    Ok(acc.values().all(|&x| x == 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComplexOptions {
    /// Highest cube degree enumerated; homology is reported below it.
    pub max_degree: usize,
    /// Maximum number of cubes visited in any single degree.
    pub budget: usize,
    /// Stop the top degree as soon as the rank of the top differential
    /// equals the dimension of the cycles below it. The homology is still
    /// exact; the top-degree counts become lower bounds.
    pub stop_when_exact: bool,
}

impl Default for CubeComplexOptions {
    fn default() -> Self {
        CubeComplexOptions {
            max_degree: 2,
            budget: 2_000_000,
            stop_when_exact: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCounts {
    pub degree: usize,
    pub raw: usize,
    pub nondegenerate: usize,
    /// False when enumeration of this degree stopped early.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComplexReport {
    pub base: String,
    pub ring: CoeffRing,
    pub counts: Vec<DegreeCounts>,
    /// Rank of `d_n` for `n = 1..=max_degree`.
    pub differential_ranks: Vec<usize>,
    /// Every cube up to this degree was enumerated.
    pub complete_through: usize,
    /// Homology in degrees `0..max_degree`.
    pub homology: Vec<HomologyReport>,
    /// Dense complex when every degree fits under the column cap.
    pub complex: Option<ChainComplex>,
    pub oracle: KOracleReport,
    pub h0_agrees: Option<bool>,
    /// Asserted only over ℚ.
    pub h1_agrees: Option<bool>,
    pub d_squared_zero: bool,
    pub degenerate_closed: bool,
    pub stopped_early: bool,
}

pub fn cube_complex(spec: &ExactCatSpec, ring: CoeffRing, opts: &CubeComplexOptions) -> Result<CubeComplexReport> {
    cube_complex_with_progress(spec, ring, opts, &mut |_, _| true)
}

/// As [`cube_complex`]; `progress(degree, visited)` is polled while
/// streaming and aborts the run with a budget error when it returns false.
pub fn cube_complex_with_progress(
    spec: &ExactCatSpec,
    ring: CoeffRing,
    opts: &CubeComplexOptions,
    progress: &mut dyn FnMut(usize, usize) -> bool,
) -> Result<CubeComplexReport> {
    if !ring.is_field() {
        return Err(Error::Unsupported(format!(
            "cube homology over {ring}; only field coefficients are supported"
        )));
    }
    if opts.max_degree == 0 {
        return Err(invalid!("max degree must be at least 1"));
    }
    let top = opts.max_degree;
    let ses = enumerate_ses(spec)?;
    let mut levels: Vec<Vec<Cube>> = vec![(0..spec.objects().len() as u16).map(Cube::point).collect()];
    let mut nondeg: Vec<Vec<Cube>> = Vec::new();
    let mut indexes: Vec<CubeIndex> = Vec::new();
    let mut counts = Vec::new();
    let mut ranks = Vec::new();
    let mut columns: Vec<Option<SparseColumns>> = vec![None];
    let mut d_squared_zero = true;
    let mut degenerate_closed = true;
    let mut stopped_early = false;

    let idx0 = CubeIndex::new(spec, &levels[0]);
    nondeg.push(levels[0].iter().filter(|c| !c.is_degenerate(spec)).cloned().collect());
    counts.push(DegreeCounts {
        degree: 0,
        raw: levels[0].len(),
        nondegenerate: idx0.len(),
        complete: true,
    });
    indexes.push(idx0);

    for n in 1..=top {
        let lower_idx = &indexes[n - 1];
        let cycles_below = counts[n - 1].nondegenerate - if n >= 2 { ranks[n - 2] } else { 0 };
        let mut rank = SparseRank::new(ring, lower_idx.len());
        let mut raw = 0usize;
        let mut nd_streamed = 0usize;
        let mut keep_cols: Option<SparseColumns> = Some(Vec::new());
        let mut stored: Vec<Cube> = Vec::new();
        let mut failure: Option<Error> = None;
        let store = n < top;
        let ext = Extender::new(spec, &levels[n - 1], &ses);
        let mut visit = |c: Cube| -> ControlFlow<()> {
            raw += 1;
            if raw > opts.budget || ((raw == 1 || raw.is_multiple_of(4096)) && !progress(n, raw)) {
                failure = Some(Error::BudgetExceeded {
                    what: format!("enumerating {n}-cubes over {}", spec.describe()),
                    counted: raw - 1,
                    budget: opts.budget,
                });
                return ControlFlow::Break(());
            }
            let step = (|| -> Result<bool> {
                let col = boundary(spec, &c, lower_idx)?;
                if c.is_degenerate(spec) {
                    if !col.is_empty() {
                        degenerate_closed = false;
                    }
                    if store {
                        stored.push(c);
                    }
                    return Ok(false);
                }
                if n >= 2 && !boundary_squared_is_zero(spec, &col, &nondeg[n - 1], &indexes[n - 2])? {
                    d_squared_zero = false;
                }
                if !store {
                    nd_streamed += 1;
                    rank.push(&col)?;
                    if let Some(k) = keep_cols.as_mut() {
                        if k.len() < MAX_COLS {
                            k.push(col);
                        } else {
                            keep_cols = None;
                        }
                    }
                } else {
                    stored.push(c);
                }
                Ok(!store && opts.stop_when_exact && rank.rank() == cycles_below)
            })();
            match step {
                Ok(true) => {
                    stopped_early = true;
                    ControlFlow::Break(())
                }
                Ok(false) => ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        };
        for x0 in &levels[n - 1] {
            if ext.extend_from_middle(x0, &mut visit).is_break() {
                break;
            }
        }
        if let Some(e) = failure {
            return Err(e);
        }
        let (nd_count, cols) = if store {
            // stored degrees are sorted first so column order is canonical
            stored.sort();
            let idx = CubeIndex::new(spec, &stored);
            let nd: Vec<Cube> = stored.iter().filter(|c| !c.is_degenerate(spec)).cloned().collect();
            let mut cols = Vec::with_capacity(nd.len());
            for c in &nd {
                let col = boundary(spec, c, lower_idx)?;
                rank.push(&col)?;
                cols.push(col);
            }
            let count = nd.len();
            nondeg.push(nd);
            indexes.push(idx);
            levels.push(stored);
            (count, Some(cols))
        } else {
            (nd_streamed, keep_cols)
        };
        counts.push(DegreeCounts {
            degree: n,
            raw,
            nondegenerate: nd_count,
            complete: !(n == top && stopped_early),
        });
        ranks.push(rank.rank());
        columns.push(cols.filter(|c| c.len() <= MAX_COLS));
    }

    let mut homology = Vec::new();
    for k in 0..top {
        let free = counts[k].nondegenerate - if k >= 1 { ranks[k - 1] } else { 0 } - ranks[k];
        homology.push(HomologyReport {
            degree: k as i64,
            free_rank: free,
            torsion: Vec::<BigInt>::new(),
        });
    }
    let complex = if !stopped_early && columns.iter().skip(1).all(|c| c.is_some()) {
        Some(dense_complex(ring, &counts, &columns)?)
    } else {
        None
    };
    let oracle = k_oracle(spec, ring)?;
    let h0_agrees = Some(homology[0].free_rank == oracle.k0_tensored_rank);
    let h1_agrees = match (ring, homology.get(1)) {
        (CoeffRing::Rationals, Some(h1)) => Some(h1.free_rank == oracle.k1_tensored_rank),
        _ => None,
    };
    let complete_through = if stopped_early { top - 1 } else { top };
    Ok(CubeComplexReport {
        base: spec.describe(),
        ring,
        counts,
        differential_ranks: ranks,
        complete_through,
        homology,
        complex,
        oracle,
        h0_agrees,
        h1_agrees,
        d_squared_zero,
        degenerate_closed,
        stopped_early,
    })
}

fn dense_complex(
    ring: CoeffRing,
    counts: &[DegreeCounts],
    columns: &[Option<SparseColumns>],
) -> Result<ChainComplex> {
    let ranks: Vec<usize> = counts.iter().map(|c| c.nondegenerate).collect();
    let mut diffs = vec![Matrix::zeros(ring, 0, ranks[0])?];
    for n in 1..ranks.len() {
        let mut m = Matrix::zeros(ring, ranks[n - 1], ranks[n])?;
        for (j, col) in columns[n].as_ref().expect("kept").iter().enumerate() {
            for &(i, c) in col {
                m.set(i, j, ring.normalize(Scalar::from_integer(c.into()))?);
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(ring, 0, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_cap_one_is_tiny() {
        let s = ExactCatSpec::new(vec![2], 1).unwrap();
        let r = cube_complex(&s, CoeffRing::Rationals, &CubeComplexOptions::default()).unwrap();
        assert_eq!(r.counts[0].nondegenerate, 1);
        assert_eq!(r.homology[0].free_rank, 1);
        assert!(r.d_squared_zero && r.degenerate_closed);
        assert_eq!(r.h0_agrees, Some(true));
        assert!(r.complex.is_some());
    }

    #[test]
    fn f2_cap_two_matches_k_theory() {
        let s = ExactCatSpec::new(vec![2], 2).unwrap();
        let r = cube_complex(&s, CoeffRing::Rationals, &CubeComplexOptions::default()).unwrap();
        assert_eq!((r.homology[0].free_rank, r.homology[1].free_rank), (1, 0));
        assert_eq!((r.h0_agrees, r.h1_agrees), (Some(true), Some(true)));
        assert!(r.d_squared_zero && r.degenerate_closed && !r.stopped_early);
        // the dense complex reproduces the streamed homology
        let cx = r.complex.as_ref().unwrap();
        for k in 0..2 {
            assert_eq!(crate::coeffs::homology(cx, k).unwrap().free_rank, r.homology[k as usize].free_rank);
        }
    }

    #[test]
    fn early_stop_keeps_homology() {
        let s = ExactCatSpec::new(vec![2], 2).unwrap();
        let opts = CubeComplexOptions {
            stop_when_exact: true,
            ..Default::default()
        };
        let full = cube_complex(&s, CoeffRing::Rationals, &CubeComplexOptions::default()).unwrap();
        let fast = cube_complex(&s, CoeffRing::Rationals, &opts).unwrap();
        assert_eq!(full.homology, fast.homology);
    }

    #[test]
    fn integers_are_refused() {
        let s = ExactCatSpec::new(vec![2], 1).unwrap();
        assert!(matches!(
            cube_complex(&s, CoeffRing::Integers, &CubeComplexOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn progress_can_abort() {
        let s = ExactCatSpec::new(vec![2], 2).unwrap();
        let r = cube_complex_with_progress(&s, CoeffRing::Rationals, &CubeComplexOptions::default(), &mut |_, _| false);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
