//! Malcev presentation of the nilradical of `p_Θ` in type A, computed from
//! the matrix-unit realisation of `sl(l+1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Form, MalcevPresentation};
use crate::rootsys::{build_root_system, isotropy_summands, FlagSpec, IsotropySummand, Root};
use crate::scalar::{from_i64, Scalar};

/// Brackets of strictly upper-triangular matrix units `E_ij` in `sl(size)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylConstants {
    pub size: usize,
}

impl WeylConstants {
    pub fn for_rank(rank: usize) -> Self {
        WeylConstants { size: rank + 1 }
    }

    /// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`, as `(coefficient, unit)`.
    pub fn bracket(&self, a: (usize, usize), b: (usize, usize)) -> Option<(i64, (usize, usize))> {
        let ((i, j), (k, l)) = (a, b);
        if j == k && i != l {
            Some((1, (i, l)))
        } else if l == i && k != j {
            Some((-1, (k, j)))
        } else {
            None
        }
    }

    /// Matrix unit carrying the root `α_i + ... + α_j`.
    pub fn unit_of(root: &Root) -> (usize, usize) {
        let (i, j) = root.support().expect("positive root");
        (i, j + 1)
    }
}

/// A nilradical together with its basis legend.
#[derive(Clone, Debug)]
pub struct Nilradical<T: Scalar> {
    pub spec: FlagSpec,
    pub presentation: MalcevPresentation<T>,
    /// `legend[k-1]` is the root whose root vector is `e_k`.
    pub legend: Vec<Root>,
    pub summands: Vec<IsotropySummand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendEntry {
    pub index: usize,
    pub root: Root,
    pub summand: usize,
}

impl<T: Scalar> Nilradical<T> {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }

    /// 1-based summand number of each basis index.
    pub fn summand_of(&self, index: usize) -> usize {
        let mut seen = 0;
        for (s, summand) in self.summands.iter().enumerate() {
            seen += summand.dim;
            if index <= seen {
                return s + 1;
            }
        }
        panic!("basis index {index} outside the nilradical");
    }

    /// Basis indices spanned by the given (1-based) summands.
    pub fn summand_indices(&self, summands: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut start = 1;
        for (s, summand) in self.summands.iter().enumerate() {
            if summands.contains(&(s + 1)) {
                out.extend(start..start + summand.dim);
            }
            start += summand.dim;
        }
        if let Some(&bad) = summands.iter().find(|&&s| s == 0 || s > self.summands.len()) {
            return Err(Error::InvalidIdeal(format!(
                "summand {bad} outside 1..={}",
                self.summands.len()
            )));
        }
        Ok(out)
    }

    pub fn legend_entries(&self) -> Vec<LegendEntry> {
        self.legend
            .iter()
            .enumerate()
            .map(|(k, root)| LegendEntry {
                index: k + 1,
                root: root.clone(),
                summand: self.summand_of(k + 1),
            })
            .collect()
    }
}

/// Builds `n = sum of g_α over complementary positive roots α`.
///
/// Basis order: isotropy summands in their canonical order, roots in root
/// order inside each summand. Brackets always land in later summands, so the
/// presentation is filtration-compatible.
pub fn nilradical_presentation<T: Scalar>(spec: &FlagSpec) -> Result<Nilradical<T>> {
    spec.validate()?;
    let rs = build_root_system(spec.series, spec.rank)?;
    let summands = isotropy_summands(&rs, &spec.theta)?;
    let legend: Vec<Root> = summands.iter().flat_map(|s| s.roots.iter().cloned()).collect();
    let units: Vec<(usize, usize)> = legend.iter().map(WeylConstants::unit_of).collect();
    let weyl = WeylConstants::for_rank(spec.rank);

    let dim = legend.len();
    if dim == 0 {
        return Err(Error::InvalidFlag(format!(
            "{spec} has Θ = Σ, so the nilradical is zero"
        )));
    }
    let mut diffs = vec![Form::zero(2); dim];
    for a in 0..dim {
        for b in a + 1..dim {
            if let Some((c, unit)) = weyl.bracket(units[a], units[b]) {
                let k = units
                    .iter()
                    .position(|&u| u == unit)
                    .expect("bracket of nilradical elements stays in the nilradical");
                // de^k = -sum c^k_ab e^{ab}
                diffs[k].add_term(&[a + 1, b + 1], from_i64::<T>(-c));
            }
        }
    }
    Ok(Nilradical {
        spec: spec.clone(),
        presentation: MalcevPresentation::new(diffs)?,
        legend,
        summands,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport<T: Scalar> {
    pub passes: bool,
    /// First `k` with `d(de^k) != 0`.
    pub first_failure: Option<usize>,
    pub residual: Form<T>,
}

/// `d∘d = 0` on every basis covector.
pub fn jacobi_check<T: Scalar>(p: &MalcevPresentation<T>) -> JacobiReport<T> {
    for k in 1..=p.dim() {
        let dd = p.d(p.de(k));
        if !dd.is_zero() {
            return JacobiReport {
                passes: false,
                first_failure: Some(k),
                residual: dd,
            };
        }
    }
    JacobiReport {
        passes: true,
        first_failure: None,
        residual: Form::zero(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_malcev;
    use crate::rootsys::Series;
    use crate::Rational;

    fn nil(rank: usize, theta: &[usize]) -> Nilradical<Rational> {
        nilradical_presentation(&FlagSpec::new(Series::A, rank, theta.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn sl3_maximal() {
        let n = nil(2, &[]);
        assert_eq!(n.presentation.to_string(), "(0,0,-e^{12})");
    }

    #[test]
    fn sl4_maximal() {
        // e4 = E13, e5 = E24, e6 = E14; [E12,E24] = E14, [E13,E34] = E14
        let n = nil(3, &[]);
        assert_eq!(n.presentation.to_string(), "(0,0,0,-e^{12},-e^{23},-e^{15}+e^{34})");
    }

    #[test]
    fn weyl_bracket_rule() {
        let w = WeylConstants { size: 4 };
        assert_eq!(w.bracket((1, 2), (2, 3)), Some((1, (1, 3))));
        assert_eq!(w.bracket((2, 3), (1, 2)), Some((-1, (1, 3))));
        assert_eq!(w.bracket((1, 2), (3, 4)), None);
    }

    #[test]
    fn jacobi_examples() {
        let p: MalcevPresentation<Rational> = parse_malcev("(0,0,-e^{12})").unwrap();
        assert!(jacobi_check(&p).passes);
        let ab: MalcevPresentation<Rational> = MalcevPresentation::abelian(6);
        assert!(jacobi_check(&ab).passes);
    }

    #[test]
    fn summand_indices_and_legend() {
        let n = nil(5, &[1, 3, 5]);
        assert_eq!(n.summand_indices(&[3]).unwrap(), (9..=12).collect::<Vec<_>>());
        assert_eq!(n.summand_of(5), 2);
        let legend = n.legend_entries();
        assert_eq!(legend[0].root.coeffs, vec![0, 1, 0, 0, 0]);
        assert!(n.summand_indices(&[4]).is_err());
    }

    #[test]
    fn full_theta_is_rejected() {
        let spec = FlagSpec::new(Series::A, 2, vec![1, 2]).unwrap();
        assert!(nilradical_presentation::<Rational>(&spec).is_err());
    }
}
