//! Admissible triples `(g, a, H)` and their infinitesimal T-duals.
//!
//! The dual keeps every basis slot: quotient slots keep their differentials,
//! and each ideal slot `x_k` is reused for the dual generator `z_k` with
//! `dz_k = ι_{x_k} H`. The dual flux is
//! `H∨ = Σ_k z^k ∧ dx^k + δ`, where `δ` collects the terms of `H` without
//! ideal legs and ideal legs inside `dx^k` are read as `z` legs.

mod certificate;
mod fingerprint;
mod iso;

pub use certificate::{duality_certificate, CertificateReport, CertificateSummary, CERTIFICATE_SIGN};
pub use fingerprint::{first_difference, Fingerprint};
pub use iso::{iso_small, iso_small_with, triples_equivalent, IsoOutcome, SignedPermutation, DEFAULT_BUDGET};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Form, MalcevPresentation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleTriple<T: Scalar> {
    pub algebra: MalcevPresentation<T>,
    /// Sorted 1-based basis indices spanning the abelian ideal `a`.
    pub ideal: Vec<usize>,
    /// The flux `H`, a 3-form.
    pub flux: Form<T>,
}

impl<T: Scalar> AdmissibleTriple<T> {
    pub fn new(algebra: MalcevPresentation<T>, mut ideal: Vec<usize>, flux: Form<T>) -> Result<Self> {
        ideal.sort_unstable();
        ideal.dedup();
        let dim = algebra.dim();
        if let Some(&bad) = ideal.iter().find(|&&i| i == 0 || i > dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        if !flux.is_zero() && flux.degree() != 3 {
            return Err(Error::Degree {
                expected: 3,
                found: flux.degree(),
            });
        }
        if flux.max_index() > dim {
            return Err(Error::IndexOutOfRange {
                index: flux.max_index(),
                dim,
            });
        }
        let flux = if flux.is_zero() { Form::zero(3) } else { flux };
        Ok(AdmissibleTriple {
            algebra,
            ideal,
            flux,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn in_ideal(&self, i: usize) -> bool {
        self.ideal.binary_search(&i).is_ok()
    }

    fn ideal_legs(&self, idx: &[usize]) -> usize {
        idx.iter().filter(|&&i| self.in_ideal(i)).count()
    }
}

/// Each condition evaluated independently; `notes` explains failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub ideal: bool,
    pub abelian: bool,
    pub central: bool,
    pub closed: bool,
    pub degenerate: bool,
    pub notes: Vec<String>,
}

impl AdmissibilityReport {
    /// Everything dualization needs. Centrality is not required.
    pub fn admissible(&self) -> bool {
        self.ideal && self.abelian && self.closed && self.degenerate
    }

    fn failures(&self) -> String {
        self.notes.join("; ")
    }
}

pub fn check_admissible<T: Scalar>(t: &AdmissibleTriple<T>) -> Result<AdmissibilityReport> {
    let dim = t.dim();
    if let Some(&bad) = t.ideal.iter().find(|&&i| i == 0 || i > dim) {
        return Err(Error::IndexOutOfRange { index: bad, dim });
    }
    let mut notes = Vec::new();

    // [g, a] ⊆ a: a quotient covector never sees an ideal leg
    let mut ideal = true;
    // [a, a] = 0
    let mut abelian = true;
    // [g, a] = 0
    let mut central = true;
    for k in 1..=dim {
        for (idx, _) in t.algebra.de(k).terms() {
            let legs = t.ideal_legs(idx);
            if legs > 0 && !t.in_ideal(k) && ideal {
                ideal = false;
                notes.push(format!(
                    "quotient differential de^{k} contains ideal legs"
                ));
            }
            if legs == 2 && abelian {
                abelian = false;
                notes.push(format!("de^{k} has both legs in the ideal"));
            }
            if legs > 0 && central {
                central = false;
                notes.push(format!("ideal is not central: de^{k} contains an ideal leg"));
            }
        }
    }

    let dh = t.algebra.d(&t.flux);
    let closed = dh.is_zero();
    if !closed {
        notes.push(format!("flux is not closed: dH = {dh}"));
    }

    let degenerate = t.flux.terms().all(|(idx, _)| t.ideal_legs(idx) <= 1);
    if !degenerate {
        notes.push("flux has a term with two ideal legs".into());
    }

    Ok(AdmissibilityReport {
        ideal,
        abelian,
        central,
        closed,
        degenerate,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualizationResult<T: Scalar> {
    /// The source triple as dualized, i.e. after moving the ideal to the end.
    pub source: AdmissibleTriple<T>,
    pub dual: AdmissibleTriple<T>,
    /// `m = dim a`.
    pub ideal_dim: usize,
    /// `(x slot, z slot)` pairs; slots are reused so each pair is equal.
    pub slot_map: Vec<(usize, usize)>,
    /// Terms of `H` without ideal legs.
    pub basic_part: Form<T>,
    /// `reordering[i-1]` is the new slot of original basis index `i`;
    /// `None` when the ideal already occupied the last slots.
    pub reordering: Option<Vec<usize>>,
    pub admissibility: AdmissibilityReport,
}

/// Moves the ideal to the trailing slots, keeping relative order elsewhere.
/// Returns the old→new map, or `None` when nothing moves.
pub fn ideal_to_end<T: Scalar>(t: &AdmissibleTriple<T>) -> Option<Vec<usize>> {
    let n = t.dim();
    let m = t.ideal.len();
    if t.ideal.iter().copied().eq(n - m + 1..=n) {
        return None;
    }
    let mut map = vec![0; n];
    let mut next = 1;
    for i in (1..=n).filter(|&i| !t.in_ideal(i)) {
        map[i - 1] = next;
        next += 1;
    }
    for &i in &t.ideal {
        map[i - 1] = next;
        next += 1;
    }
    Some(map)
}

/// Relabels a triple along an old→new basis map.
pub fn relabel_triple<T: Scalar>(t: &AdmissibleTriple<T>, old_to_new: &[usize]) -> Result<AdmissibleTriple<T>> {
    let algebra = MalcevPresentation::new(t.algebra.relabel_unchecked(old_to_new))?;
    let ideal = t.ideal.iter().map(|&i| old_to_new[i - 1]).collect();
    let flux = t.flux.map_indices(|i| old_to_new[i - 1]);
    AdmissibleTriple::new(algebra, ideal, flux)
}

pub fn dualize<T: Scalar>(t: &AdmissibleTriple<T>) -> Result<DualizationResult<T>> {
    let report = check_admissible(t)?;
    if !report.admissible() {
        return Err(Error::NotAdmissible(report.failures()));
    }
    let reordering = ideal_to_end(t);
    let source = match &reordering {
        Some(map) => relabel_triple(t, map)?,
        None => t.clone(),
    };

    let n = source.dim();
    let mut diffs = source.algebra.differentials().to_vec();
    let mut dual_flux = source
        .flux
        .filter_terms(|idx| idx.iter().all(|&i| !source.in_ideal(i)));
    let basic_part = dual_flux.clone();
    for &k in &source.ideal {
        // dx^k with ideal legs now read as z legs, same slots
        let dx = source.algebra.de(k);
        dual_flux += &Form::basis(&[k]).wedge(dx);
        diffs[k - 1] = source.flux.interior(k);
    }
    let dual_algebra = MalcevPresentation::new(diffs)?;
    debug_assert_eq!(dual_algebra.dim(), n);
    let dual = AdmissibleTriple::new(dual_algebra, source.ideal.clone(), dual_flux)?;

    Ok(DualizationResult {
        ideal_dim: source.ideal.len(),
        slot_map: source.ideal.iter().map(|&k| (k, k)).collect(),
        basic_part,
        reordering,
        admissibility: report,
        source,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_form, parse_malcev};
    use crate::Rational;

    fn triple(alg: &str, ideal: &[usize], flux: &str) -> AdmissibleTriple<Rational> {
        let algebra = parse_malcev(alg).unwrap();
        let dim = algebra.dim();
        AdmissibleTriple::new(algebra, ideal.to_vec(), parse_form(flux, 3, Some(dim)).unwrap()).unwrap()
    }

    #[test]
    fn fixed_point_triple_is_admissible_and_central() {
        let r = check_admissible(&triple("(0,0,-e^{12})", &[3], "e^{123}")).unwrap();
        assert!(r.admissible());
        assert!(r.central);
    }

    #[test]
    fn sl4_graded_ideal_is_not_central() {
        let r = check_admissible(&triple("(0,0,0,-e^{12},-e^{23},-e^{14}+e^{35})", &[4, 5, 6], "0")).unwrap();
        assert!(r.ideal && r.abelian && r.closed && r.degenerate);
        assert!(!r.central);
    }

    #[test]
    fn generators_of_sl3_are_not_an_ideal() {
        let r = check_admissible(&triple("(0,0,-e^{12})", &[1, 2], "0")).unwrap();
        assert!(!r.ideal);
        assert!(!r.abelian);
        assert!(r.notes[0].contains("quotient differential de^3 contains ideal legs"));
    }

    #[test]
    fn out_of_range_ideal() {
        let algebra: MalcevPresentation<Rational> = parse_malcev("(0,0,-e^{12})").unwrap();
        assert!(AdmissibleTriple::new(algebra, vec![4], Form::zero(3)).is_err());
    }

    #[test]
    fn dualize_sl3_without_flux() {
        let d = dualize(&triple("(0,0,-e^{12})", &[3], "0")).unwrap();
        assert_eq!(d.dual.algebra.to_string(), "(0,0,0)");
        assert_eq!(d.dual.flux.to_string(), "-e^{123}");
        assert!(d.reordering.is_none());
    }

    #[test]
    fn dualize_fixed_point() {
        let d = dualize(&triple("(0,0,-e^{12})", &[3], "e^{123}")).unwrap();
        assert_eq!(d.dual.algebra.to_string(), "(0,0,e^{12})");
        assert_eq!(d.dual.flux.to_string(), "-e^{123}");
    }

    #[test]
    fn dualize_sl4_runs() {
        let n = "(0,0,0,-e^{12},-e^{23},-e^{14}+e^{35})";
        let d6 = dualize(&triple(n, &[6], "0")).unwrap();
        assert_eq!(d6.dual.algebra.to_string(), "(0,0,0,-e^{12},-e^{23},0)");
        assert_eq!(d6.dual.flux.to_string(), "-e^{146}+e^{356}");

        let d456 = dualize(&triple(n, &[4, 5, 6], "0")).unwrap();
        assert!(d456.dual.algebra.is_abelian());
        let expected: Form<Rational> = parse_form("-e^{124}-e^{235}-e^{146}+e^{356}", 3, None).unwrap();
        assert_eq!(d456.dual.flux, expected);
    }

    #[test]
    fn non_trailing_ideal_is_moved() {
        let t = triple("(0,0,0,-e^{12},-e^{23},-e^{15}+e^{34})", &[4, 6], "0");
        let d = dualize(&t).unwrap();
        assert_eq!(d.reordering, Some(vec![1, 2, 3, 5, 4, 6]));
        assert_eq!(d.source.algebra.to_string(), "(0,0,0,-e^{23},-e^{12},-e^{14}+e^{35})");
        assert_eq!(d.source.ideal, vec![5, 6]);
        assert_eq!(d.dual.algebra.to_string(), "(0,0,0,-e^{23},0,0)");
    }

    #[test]
    fn refuses_inadmissible() {
        let err = dualize(&triple("(0,0,-e^{12})", &[1, 2], "0")).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible(_)));
    }
}
