//! The flowing-flags pipeline: nilradical, dualization, and a bounded search
//! for parabolic targets whose nilradical is isomorphic to the dual algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::nilradical::{nilradical_presentation, Nilradical};
use crate::rootsys::{FlagSpec, Series};
use crate::scalar::Scalar;
use crate::tduality::{
    check_admissible, dualize, duality_certificate, iso_small, triples_equivalent, AdmissibilityReport,
    AdmissibleTriple, CertificateReport, DualizationResult, IsoOutcome, SignedPermutation,
};

pub const DEFAULT_RANK_BOUND: usize = 13;

/// A flag manifold together with an invariant 3-form on its nilradical.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowingFlag<T: Scalar> {
    pub spec: FlagSpec,
    pub flux: Form<T>,
}

impl<T: Scalar> FlowingFlag<T> {
    pub fn new(spec: FlagSpec, flux: Form<T>) -> Result<Self> {
        spec.validate()?;
        if !flux.is_zero() && flux.degree() != 3 {
            return Err(Error::Degree {
                expected: 3,
                found: flux.degree(),
            });
        }
        let dim = spec.dim();
        if flux.max_index() > dim {
            return Err(Error::IndexOutOfRange {
                index: flux.max_index(),
                dim,
            });
        }
        Ok(FlowingFlag { spec, flux })
    }

    pub fn without_flux(spec: FlagSpec) -> Result<Self> {
        Self::new(spec, Form::zero(3))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetCandidate {
    pub spec: FlagSpec,
    /// From the candidate's nilradical to the dual algebra.
    pub witness: SignedPermutation,
    pub pretty_name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetSearch {
    pub rank_bound: usize,
    pub targets: Vec<TargetCandidate>,
    /// Flags of the right dimension that were examined, after mirror dedup.
    pub examined: usize,
    /// Candidates whose invariants differ from the dual algebra.
    pub ruled_out: usize,
    /// Candidates left undecided by the signed-permutation search.
    pub inconclusive: Vec<FlagSpec>,
    /// Set when no target was found.
    pub reason: Option<String>,
}

/// `SU(N)/S(U(b_1)×...×U(b_k))`, with `≅ CP^{N-1}` for projective spaces.
pub fn pretty_name(spec: &FlagSpec) -> String {
    let n = spec.rank + 1;
    let removed = spec.complement();
    let mut blocks = Vec::new();
    let mut start = 0;
    for &p in &removed {
        blocks.push(p - start);
        start = p;
    }
    blocks.push(n - start);
    let inner: Vec<String> = blocks.iter().map(|b| format!("U({b})")).collect();
    let mut name = format!("SU({n})/S({})", inner.join("×"));
    if removed.len() == 1 && blocks.contains(&1) {
        name.push_str(&format!(" ≅ CP^{}", n - 1));
    }
    name
}

fn mirror(rank: usize, set: &[usize]) -> Vec<usize> {
    let mut m: Vec<usize> = set.iter().map(|&i| rank + 1 - i).collect();
    m.sort_unstable();
    m
}

/// Of a flag and its Dynkin mirror image keep the one whose removed nodes,
/// sorted descending, compare larger.
fn is_mirror_representative(rank: usize, removed: &[usize]) -> bool {
    let key = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    key(removed) >= key(&mirror(rank, removed))
}

/// Nonempty sets of removed simple roots of `A_rank` whose flag has complex
/// dimension `dim`, in lexicographic order. The removed nodes cut
/// `{1..rank+1}` into blocks `b_i` and the dimension is `(N² − Σ b_i²)/2`.
fn removed_sets_with_dim(rank: usize, dim: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, squares_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let rest = n - start;
        if rest * rest == squares_left && !cur.is_empty() {
            out.push(cur.clone());
        }
        for b in 1..rest {
            // each of the rest - b later positions costs at least 1
            if b * b + (rest - b) > squares_left {
                break;
            }
            cur.push(start + b);
            go(start + b, n, squares_left - b * b, cur, out);
            cur.pop();
        }
    }
    let n = rank + 1;
    let mut out = Vec::new();
    if 2 * dim <= n * n {
        go(0, n, n * n - 2 * dim, &mut Vec::new(), &mut out);
    }
    out
}

/// Searches type-A flags up to `rank_bound` for nilradicals isomorphic to `target`.
pub fn search_targets<T: Scalar>(
    target: &crate::exterior::MalcevPresentation<T>,
    rank_bound: usize,
    budget: usize,
) -> Result<TargetSearch> {
    let dim = target.dim();
    let mut search = TargetSearch {
        rank_bound,
        targets: Vec::new(),
        examined: 0,
        ruled_out: 0,
        inconclusive: Vec::new(),
        reason: None,
    };
    for rank in 1..=rank_bound {
        if rank * (rank + 1) / 2 < dim {
            continue;
        }
        for removed in removed_sets_with_dim(rank, dim) {
            if !is_mirror_representative(rank, &removed) {
                continue;
            }
            let spec = FlagSpec::complement_of(Series::A, rank, &removed)?;
            search.examined += 1;
            let cand = nilradical_presentation::<T>(&spec)?;
            match iso_small(&cand.presentation, target, budget) {
                IsoOutcome::Witness(witness) => search.targets.push(TargetCandidate {
                    pretty_name: pretty_name(&spec),
                    spec,
                    witness,
                }),
                IsoOutcome::NonIsomorphic { .. } => search.ruled_out += 1,
                IsoOutcome::Inconclusive { .. } => search.inconclusive.push(spec),
            }
        }
    }
    if search.targets.is_empty() {
        search.reason = Some(format!(
            "no target within rank bound {rank_bound}: {} flag(s) of dimension {dim} examined, \
             {} differ from the dual algebra in an invariant, {} undecided",
            search.examined,
            search.ruled_out,
            search.inconclusive.len()
        ));
    }
    Ok(search)
}

/// Basis indices of a union of isotropy summands (1-based summand numbers).
pub fn graded_ideal<T: Scalar>(nil: &Nilradical<T>, summands: &[usize]) -> Result<Vec<usize>> {
    nil.summand_indices(summands)
}

#[derive(Clone, Debug)]
pub struct Correspondence<T: Scalar> {
    pub nilradical: Nilradical<T>,
    pub triple: AdmissibleTriple<T>,
    pub admissibility: AdmissibilityReport,
    pub dualization: DualizationResult<T>,
    pub certificate: CertificateReport<T>,
    pub search: TargetSearch,
}

pub fn correspond<T: Scalar>(
    flag: &FlowingFlag<T>,
    ideal: &[usize],
    rank_bound: usize,
    budget: usize,
) -> Result<Correspondence<T>> {
    if rank_bound == 0 {
        return Err(Error::Constraint("rank bound must be at least 1".into()));
    }
    let nilradical = nilradical_presentation::<T>(&flag.spec)?;
    let triple = AdmissibleTriple::new(nilradical.presentation.clone(), ideal.to_vec(), flag.flux.clone())?;
    if triple.ideal.is_empty() {
        return Err(Error::InvalidIdeal("the ideal is empty".into()));
    }
    let admissibility = check_admissible(&triple)?;
    if !(admissibility.ideal && admissibility.abelian) {
        return Err(Error::InvalidIdeal(admissibility.notes.join("; ")));
    }
    let dualization = dualize(&triple)?;
    let certificate = duality_certificate(&dualization)?;
    let search = search_targets(&dualization.dual.algebra, rank_bound, budget)?;
    Ok(Correspondence {
        nilradical,
        triple,
        admissibility,
        dualization,
        certificate,
        search,
    })
}

#[derive(Clone, Debug)]
pub struct SelfDualReport<T: Scalar> {
    pub spec: FlagSpec,
    pub triple: AdmissibleTriple<T>,
    pub admissibility: AdmissibilityReport,
    /// `dH = -(de^l)∧(de^l)`.
    pub dh: Form<T>,
    pub dual: Option<AdmissibleTriple<T>>,
    /// `None` when the triple is not admissible and nothing can be decided.
    pub selfdual: Option<bool>,
    pub witness: Option<SignedPermutation>,
}

/// On a maximal flag, takes `a` to be the highest-root slot `e_l` and
/// `H = -(de^l)∧e^l`, then dualizes and compares.
pub fn selfdual_flux<T: Scalar>(spec: &FlagSpec, budget: usize) -> Result<SelfDualReport<T>> {
    if !spec.theta.is_empty() {
        return Err(Error::InvalidFlag(format!("{spec} is not a maximal flag")));
    }
    let nil = nilradical_presentation::<T>(spec)?;
    let l = nil.dim();
    let de = nil.presentation.de(l).clone();
    let flux = -de.wedge(&Form::basis(&[l]));
    let flux = if flux.is_zero() { Form::zero(3) } else { flux };
    let triple = AdmissibleTriple::new(nil.presentation, vec![l], flux)?;
    let admissibility = check_admissible(&triple)?;
    let dh = triple.algebra.d(&triple.flux);
    let (dual, selfdual, witness) = if admissibility.admissible() {
        let dual = dualize(&triple)?.dual;
        let outcome = triples_equivalent(&triple, &dual, budget);
        let verdict = match &outcome {
            IsoOutcome::Witness(_) => Some(true),
            IsoOutcome::NonIsomorphic { .. } => Some(false),
            IsoOutcome::Inconclusive { .. } => None,
        };
        (Some(dual), verdict, outcome.witness().cloned())
    } else {
        (None, None, None)
    };
    Ok(SelfDualReport {
        spec: spec.clone(),
        triple,
        admissibility,
        dh,
        dual,
        selfdual,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct ThreeSummandReport<T: Scalar> {
    pub dims: (usize, usize, usize),
    pub correspondence: Correspondence<T>,
    pub dual_abelian: bool,
    pub flux_nonzero: bool,
    /// `CP^{d1+d2+d3}` among the targets.
    pub projective_target: Option<TargetCandidate>,
}

impl<T: Scalar> ThreeSummandReport<T> {
    pub fn holds(&self) -> bool {
        self.dual_abelian && self.flux_nonzero && self.projective_target.is_some()
    }
}

/// Flag of `SU(l+m+n)/S(U(l)×U(m)×U(n))` with `H = 0` and `a = m_3`.
pub fn three_summand_correspond<T: Scalar>(
    l: usize,
    m: usize,
    n: usize,
    rank_bound: usize,
    budget: usize,
) -> Result<ThreeSummandReport<T>> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::Constraint("block sizes must be positive".into()));
    }
    let spec = FlagSpec::complement_of(Series::A, l + m + n - 1, &[l, l + m])?;
    let nil = nilradical_presentation::<T>(&spec)?;
    let dims = (nil.summands[0].dim, nil.summands[1].dim, nil.summands[2].dim);
    let ideal = nil.summand_indices(&[3])?;
    let correspondence = correspond(&FlowingFlag::without_flux(spec)?, &ideal, rank_bound, budget)?;
    let total = dims.0 + dims.1 + dims.2;
    let cp = FlagSpec::complement_of(Series::A, total, &[total])?;
    let projective_target = correspondence
        .search
        .targets
        .iter()
        .find(|t| t.spec == cp)
        .cloned();
    Ok(ThreeSummandReport {
        dims,
        dual_abelian: correspondence.dualization.dual.algebra.is_abelian(),
        flux_nonzero: !correspondence.dualization.dual.flux.is_zero(),
        projective_target,
        correspondence,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionScan {
    pub max: u64,
    /// Pairs `(n, l)` with `n² + n − 2 = l² − l`, `4 ≤ n ≤ max`, `2 ≤ l ≤ max`.
    pub solutions: Vec<(u64, u64)>,
    /// Complex dimensions of the `E_6` flag and of the Hermitian symmetric space.
    pub e6_dims: (u64, u64),
    pub e6_check: bool,
}

/// Counts positive roots of `E_6` (36) minus those of `D_4` (12).
const E6_THREE_SUMMAND_DIM: u64 = 36 - 12;
/// Positive roots of `E_6` (36) minus those of `D_5` (20).
const E6_HERMITIAN_DIM: u64 = 36 - 20;

pub fn dimension_obstruction_scan(max: u64) -> Result<ObstructionScan> {
    if max < 4 {
        return Err(Error::Constraint(format!("scan bound {max} is below 4")));
    }
    let lhs = |n: u64| n * n + n - 2;
    let rhs = |l: u64| l * l - l;
    let mut solutions = Vec::new();
    let mut l = 2;
    for n in 4..=max {
        while l < max && rhs(l) < lhs(n) {
            l += 1;
        }
        if rhs(l) == lhs(n) {
            solutions.push((n, l));
        }
    }
    Ok(ObstructionScan {
        max,
        solutions,
        e6_dims: (E6_THREE_SUMMAND_DIM, E6_HERMITIAN_DIM),
        e6_check: E6_THREE_SUMMAND_DIM != E6_HERMITIAN_DIM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn spec(rank: usize, theta: &[usize]) -> FlagSpec {
        FlagSpec::new(Series::A, rank, theta.to_vec()).unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(pretty_name(&spec(3, &[1, 2])), "SU(4)/S(U(3)×U(1)) ≅ CP^3");
        assert_eq!(pretty_name(&spec(4, &[1, 2, 4])), "SU(5)/S(U(3)×U(2))");
        assert_eq!(pretty_name(&spec(2, &[])), "SU(3)/S(U(1)×U(1)×U(1))");
        assert_eq!(pretty_name(&spec(1, &[])), "SU(2)/S(U(1)×U(1)) ≅ CP^1");
    }

    #[test]
    fn removed_sets_match_brute_force() {
        for rank in 1..=7 {
            for dim in 1..=rank * (rank + 1) / 2 {
                let mut brute: Vec<Vec<usize>> = (1u32..1 << rank)
                    .map(|mask| (1..=rank).filter(|&i| mask >> (i - 1) & 1 == 1).collect::<Vec<_>>())
                    .filter(|removed| FlagSpec::complement_of(Series::A, rank, removed).unwrap().dim() == dim)
                    .collect();
                brute.sort();
                assert_eq!(removed_sets_with_dim(rank, dim), brute, "rank {rank} dim {dim}");
            }
        }
    }

    #[test]
    fn mirror_dedup() {
        assert!(is_mirror_representative(6, &[6]));
        assert!(!is_mirror_representative(6, &[1]));
        assert!(is_mirror_representative(4, &[3]));
        assert!(!is_mirror_representative(4, &[2]));
        assert!(is_mirror_representative(2, &[1, 2]));
    }

    #[test]
    fn maximal_sl3_reaches_cp3() {
        let flag = FlowingFlag::<Rational>::without_flux(spec(2, &[])).unwrap();
        let c = correspond(&flag, &[3], 7, crate::tduality::DEFAULT_BUDGET).unwrap();
        assert_eq!(c.dualization.dual.flux.to_string(), "-e^{123}");
        let names: Vec<&str> = c.search.targets.iter().map(|t| t.pretty_name.as_str()).collect();
        assert_eq!(names, vec!["SU(4)/S(U(3)×U(1)) ≅ CP^3"]);
        assert!(c.certificate.holds());
    }

    #[test]
    fn bad_ideal_is_rejected() {
        let flag = FlowingFlag::<Rational>::without_flux(spec(2, &[])).unwrap();
        let err = correspond(&flag, &[1, 2], 3, 1000).unwrap_err();
        assert!(matches!(err, Error::InvalidIdeal(_)));
    }

    #[test]
    fn selfdual_small_ranks() {
        let a2 = selfdual_flux::<Rational>(&spec(2, &[]), 1000).unwrap();
        assert_eq!(a2.triple.flux.to_string(), "e^{123}");
        assert_eq!(a2.selfdual, Some(true));
        let a1 = selfdual_flux::<Rational>(&spec(1, &[]), 1000).unwrap();
        assert!(a1.triple.flux.is_zero());
        assert_eq!(a1.selfdual, Some(true));
        let a3 = selfdual_flux::<Rational>(&spec(3, &[]), 1000).unwrap();
        assert!(!a3.admissibility.closed);
        assert_eq!(a3.selfdual, None);
        assert!(selfdual_flux::<Rational>(&spec(3, &[1]), 1000).is_err());
    }

    #[test]
    fn small_obstruction_scan() {
        let s = dimension_obstruction_scan(1000).unwrap();
        assert!(s.solutions.is_empty());
        assert_eq!(s.e6_dims, (24, 16));
        assert!(dimension_obstruction_scan(3).is_err());
    }
}
