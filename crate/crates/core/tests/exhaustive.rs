mod common;

use common::q;
use flagflux::tduality::DEFAULT_BUDGET;
use flagflux::{
    build_root_system, complementary_positive_roots, correspond, graded_ideal, isotropy_summands, jacobi_check,
    nilradical_presentation, three_summand_correspond, three_summand_dims, FlagSpec, FlowingFlag, Form,
    MalcevPresentation, QMalcev, QNilradical, Rational, Series,
};

fn all_theta(rank: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << rank) - 1)
        .map(|mask| (1..=rank).filter(|p| mask & (1 << (p - 1)) != 0).collect())
        .collect()
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` on basis vectors, from brackets alone.
fn bracket_jacobi_holds(p: &QMalcev) -> bool {
    let n = p.dim();
    let br = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![q(0); n];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if *ui == q(0) || *vj == q(0) {
                    continue;
                }
                for (k, c) in p.bracket(i + 1, j + 1) {
                    out[k - 1] += ui.clone() * vj.clone() * c;
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Rational> { (0..n).map(|j| if j == i { q(1) } else { q(0) }).collect() };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (e(a), e(b), e(c));
                let s1 = br(&x, &br(&y, &z));
                let s2 = br(&y, &br(&z, &x));
                let s3 = br(&z, &br(&x, &y));
                if (0..n).any(|k| s1[k].clone() + s2[k].clone() + s3[k].clone() != q(0)) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn jacobi_check_agrees_with_brackets_in_dim_five() {
    let pairs: Vec<[usize; 2]> = (1..=5).flat_map(|i| (i + 1..=5).map(move |j| [i, j])).collect();
    let mut failing = 0;
    let mut checked = 0;
    // de^4 and de^5 each a single term over lower indices, de^1..de^3 = (0,0,-e^{12}) or abelian
    for de3 in [None, Some([1, 2])] {
        for de4 in pairs.iter().filter(|p| p[1] < 4).map(Some).chain([None]) {
            for de5 in pairs.iter().filter(|p| p[1] < 5).map(Some).chain([None]) {
                let mk = |t: Option<&[usize; 2]>| t.map_or(Form::zero(2), |p| Form::monomial(q(-1), p));
                let diffs = vec![Form::zero(2), Form::zero(2), mk(de3.as_ref()), mk(de4), mk(de5)];
                let p = MalcevPresentation::new(diffs).unwrap();
                let report = jacobi_check(&p);
                assert_eq!(report.passes, bracket_jacobi_holds(&p), "{p}");
                if !report.passes {
                    failing += 1;
                    assert_eq!(report.first_failure, Some(5), "{p}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 50 && failing > 0, "checked {checked}, failing {failing}");
}

#[test]
fn minimal_non_jacobi_tuple() {
    let p: QMalcev = flagflux::parse_malcev("(0,0,-e^{12},0,-e^{34})").unwrap();
    let r = jacobi_check(&p);
    assert!(!r.passes);
    assert_eq!(r.first_failure, Some(5));
    assert!(!bracket_jacobi_holds(&p));
}

#[test]
fn nilradicals_satisfy_jacobi_up_to_rank_five() {
    for rank in 1..=5 {
        for theta in all_theta(rank) {
            let spec = FlagSpec::new(Series::A, rank, theta.clone()).unwrap();
            let n: QNilradical = nilradical_presentation(&spec).unwrap();
            assert!(jacobi_check(&n.presentation).passes, "{spec}");
            assert_eq!(n.dim(), spec.dim());
        }
    }
}

#[test]
fn abelian_iff_single_removed_node() {
    for rank in 1..=6 {
        for theta in all_theta(rank) {
            let spec = FlagSpec::new(Series::A, rank, theta.clone()).unwrap();
            let n: QNilradical = nilradical_presentation(&spec).unwrap();
            assert_eq!(n.presentation.is_abelian(), theta.len() == rank - 1, "{spec}");
        }
    }
}

#[test]
fn summands_partition_the_complementary_roots() {
    for rank in 1..=6 {
        let rs = build_root_system(Series::A, rank).unwrap();
        for theta in all_theta(rank) {
            let roots = complementary_positive_roots(&rs, &theta).unwrap();
            let summands = isotropy_summands(&rs, &theta).unwrap();
            assert_eq!(summands.iter().map(|s| s.roots.len()).sum::<usize>(), roots.len());
            for r in &roots {
                assert_eq!(summands.iter().filter(|s| s.roots.contains(r)).count(), 1);
            }
        }
    }
}

#[test]
fn three_summand_dims_match_root_counts() {
    for total in 3..=8 {
        for l in 1..total {
            for m in 1..total - l {
                let n = total - l - m;
                let rank = total - 1;
                let spec = FlagSpec::complement_of(Series::A, rank, &[l, l + m]).unwrap();
                let rs = build_root_system(Series::A, rank).unwrap();
                let summands = isotropy_summands(&rs, &spec.theta).unwrap();
                let mut dims: Vec<usize> = summands.iter().map(|s| s.roots.len()).collect();
                dims.sort_by_key(|d| std::cmp::Reverse(*d));
                let (d1, d2, d3) = three_summand_dims(l, m, n).unwrap();
                let mut expected = vec![d1, d2, d3];
                expected.sort_by_key(|d| std::cmp::Reverse(*d));
                assert_eq!(dims, expected, "({l},{m},{n})");
            }
        }
    }
}

#[test]
fn three_summand_dual_flux_size() {
    for (l, m, n) in [(1, 1, 1), (1, 2, 1), (2, 1, 2), (1, 1, 3), (2, 2, 1)] {
        let (d1, d2, d3) = three_summand_dims(l, m, n).unwrap();
        let r = three_summand_correspond::<Rational>(l, m, n, d1 + d2 + d3, DEFAULT_BUDGET).unwrap();
        let c = &r.correspondence;
        let nil = &c.nilradical.presentation;
        // one x^k ∧ e^{ij} term per bracket m_1 × m_2 → m_3; all distinct
        let expected: usize = c.triple.ideal.iter().map(|&k| nil.de(k).len()).sum();
        assert_eq!(c.dualization.dual.flux.len(), expected, "({l},{m},{n})");
        assert_eq!(expected, l * m * n, "({l},{m},{n})");
        assert!(r.holds(), "({l},{m},{n})");
    }
}

#[test]
fn target_searches_are_deterministic_and_witnessed() {
    let mut runs = 0;
    for rank in 1..=4 {
        for theta in all_theta(rank) {
            let spec = FlagSpec::new(Series::A, rank, theta).unwrap();
            let nil: QNilradical = nilradical_presentation(&spec).unwrap();
            for first in 1..=nil.summands.len() {
                let suffix: Vec<usize> = (first..=nil.summands.len()).collect();
                let ideal = graded_ideal(&nil, &suffix).unwrap();
                let flag = FlowingFlag::without_flux(spec.clone()).unwrap();
                let Ok(a) = correspond(&flag, &ideal, 6, DEFAULT_BUDGET) else { continue };
                let b = correspond(&flag, &ideal, 6, DEFAULT_BUDGET).unwrap();
                let names = |c: &flagflux::Correspondence<Rational>| -> Vec<String> {
                    c.search.targets.iter().map(|t| t.pretty_name.clone()).collect()
                };
                assert_eq!(names(&a), names(&b));
                for t in &a.search.targets {
                    assert_eq!(t.spec.dim(), spec.dim());
                    let target: QNilradical = nilradical_presentation(&t.spec).unwrap();
                    assert!(t.witness.is_isomorphism(&target.presentation, &a.dualization.dual.algebra));
                }
                runs += 1;
            }
        }
    }
    assert!(runs > 20, "{runs}");
}
