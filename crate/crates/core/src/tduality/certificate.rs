//! The correspondence-space certificate `p*H − p∨*H∨ = dF`.
//!
//! With the ideal in the trailing slots, the correspondence algebra `c` has
//! `n + m` slots: the `n` slots of `g` with their differentials, then one
//! slot `n + j` per ideal generator carrying `z_j` with `dz_j = ι_{x_j} H`.
//! `p` forgets the `z` slots and `p∨` forgets the `x` slots, so `p*` is the
//! identity on indices and `p∨*` sends the ideal slot of `z_j` to `n + j`.

use serde::Serialize;

use crate::error::Result;
use crate::exterior::{Form, MalcevPresentation};
use crate::nilradical::jacobi_check;
use crate::scalar::{from_i64, Scalar};

use super::DualizationResult;

/// `F = σ Σ_j x^j ∧ z^j`; σ is fixed by the maximal flag of `SL(3)`.
pub const CERTIFICATE_SIGN: i64 = -1;

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport<T: Scalar> {
    pub correspondence: MalcevPresentation<T>,
    /// `d∘d = 0` on `c`. Fails for some non-central ideals.
    pub jacobi: bool,
    pub f: Form<T>,
    pub residual: Form<T>,
}

impl<T: Scalar> CertificateReport<T> {
    pub fn holds(&self) -> bool {
        self.jacobi && self.residual.is_zero()
    }
}

#[derive(Serialize)]
pub struct CertificateSummary {
    pub holds: bool,
    pub jacobi: bool,
    pub residual: String,
}

impl<T: Scalar> From<&CertificateReport<T>> for CertificateSummary {
    fn from(r: &CertificateReport<T>) -> Self {
        CertificateSummary {
            holds: r.holds(),
            jacobi: r.jacobi,
            residual: r.residual.to_string(),
        }
    }
}

pub fn duality_certificate<T: Scalar>(d: &DualizationResult<T>) -> Result<CertificateReport<T>> {
    let g = &d.source;
    let n = g.dim();
    let ideal = &g.ideal;

    let mut diffs = g.algebra.differentials().to_vec();
    for &k in ideal {
        diffs.push(g.flux.interior(k));
    }
    let correspondence = MalcevPresentation::new(diffs)?;
    let jacobi = jacobi_check(&correspondence).passes;

    let z_slot = |i: usize| match ideal.binary_search(&i) {
        Ok(j) => n + j + 1,
        Err(_) => i,
    };
    let pulled_dual = d.dual.flux.map_indices(z_slot);

    let sigma = from_i64::<T>(CERTIFICATE_SIGN);
    let mut f = Form::zero(2);
    for (j, &k) in ideal.iter().enumerate() {
        f.add_term(&[k, n + j + 1], sigma.clone());
    }

    let mut residual = &g.flux - &pulled_dual;
    residual -= &correspondence.d(&f);
    Ok(CertificateReport {
        correspondence,
        jacobi,
        f,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_form, parse_malcev};
    use crate::tduality::{dualize, AdmissibleTriple};
    use crate::Rational;

    fn cert(alg: &str, ideal: &[usize], flux: &str) -> CertificateReport<Rational> {
        let algebra = parse_malcev(alg).unwrap();
        let dim = algebra.dim();
        let t = AdmissibleTriple::new(algebra, ideal.to_vec(), parse_form(flux, 3, Some(dim)).unwrap()).unwrap();
        duality_certificate(&dualize(&t).unwrap()).unwrap()
    }

    #[test]
    fn maximal_sl3_calibrates_sign() {
        let r = cert("(0,0,-e^{12})", &[3], "0");
        assert_eq!(r.correspondence.to_string(), "(0,0,-e^{12},0)");
        assert_eq!(r.f.to_string(), "-e^{34}");
        assert!(r.holds(), "residual {}", r.residual);
    }

    #[test]
    fn fixed_point_certificate() {
        let r = cert("(0,0,-e^{12})", &[3], "e^{123}");
        assert!(r.holds(), "residual {}", r.residual);
    }

    #[test]
    fn abelian_whole_algebra() {
        let r = cert("(0,0,0,0)", &[1, 2, 3, 4], "0");
        assert!(r.f.len() == 4 && r.holds());
    }

    #[test]
    fn opposite_sign_fails() {
        let r = cert("(0,0,-e^{12})", &[3], "0");
        let flipped = &r.residual + &r.correspondence.d(&(&r.f + &r.f));
        assert!(!flipped.is_zero());
    }
}
