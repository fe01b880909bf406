//! Invariant generalized complex structures, one 4×4 block per root space,
//! and their transport along the duality map `φ`.
//!
//! Block coordinates are ordered `(y, x, y*, x*)`: the undualized tangent
//! direction, the dualized one, then their duals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsys::IsotropySummand;
use crate::scalar::{from_i64, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum BlockKind<T> {
    /// `±` the standard complex block.
    Complex { sign: i8 },
    /// B-transform of a symplectic block; requires `a² − xy = −1`.
    Noncomplex { a: T, x: T, y: T },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockClass {
    Complex,
    Symplectic,
    BSymplectic,
    Other,
}

/// The coarse type that must be constant on an isotropy summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureType {
    Complex,
    Noncomplex,
    Other,
}

impl BlockClass {
    pub fn structure_type(self) -> StructureType {
        match self {
            BlockClass::Complex => StructureType::Complex,
            BlockClass::Symplectic | BlockClass::BSymplectic => StructureType::Noncomplex,
            BlockClass::Other => StructureType::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GcsBlock<T: Scalar> {
    pub matrix: Matrix<T>,
    pub class: BlockClass,
}

impl<T: Scalar> GcsBlock<T> {
    pub fn from_matrix(matrix: Matrix<T>) -> Result<Self> {
        let class = classify_block(&matrix)?;
        Ok(GcsBlock { matrix, class })
    }
}

pub fn make_block<T: Scalar>(kind: &BlockKind<T>) -> Result<GcsBlock<T>> {
    let matrix = match kind {
        BlockKind::Complex { sign } => {
            if sign.abs() != 1 {
                return Err(Error::Constraint(format!("complex block sign must be ±1, got {sign}")));
            }
            Matrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
                .scale(&from_i64(i64::from(*sign)))
        }
        BlockKind::Noncomplex { a, x, y } => {
            let det = a.clone() * a.clone() - x.clone() * y.clone();
            if det != -T::one() {
                return Err(Error::Constraint(format!("a² − xy = {det}, expected −1")));
            }
            let z = T::zero;
            Matrix::from_rows(vec![
                vec![a.clone(), z(), z(), -x.clone()],
                vec![z(), a.clone(), x.clone(), z()],
                vec![z(), -y.clone(), -a.clone(), z()],
                vec![y.clone(), z(), z(), -a.clone()],
            ])
        }
    };
    GcsBlock::from_matrix(matrix)
}

fn quadrant<T: Scalar>(m: &Matrix<T>, row: usize, col: usize) -> [[T; 2]; 2] {
    let g = |i: usize, j: usize| m.get(2 * row + i, 2 * col + j).clone();
    [[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]]
}

fn is_zero2<T: Scalar>(q: &[[T; 2]; 2]) -> bool {
    q.iter().flatten().all(|v| v.is_zero())
}

/// Classifies a 4×4 matrix squaring to `−I` by its shape.
pub fn classify_block<T: Scalar>(m: &Matrix<T>) -> Result<BlockClass> {
    if m.size() != 4 {
        return Err(Error::SizeMismatch {
            expected: 4,
            found: m.size(),
        });
    }
    if !(m * m).is_neg_identity() {
        return Err(Error::NotComplexStructure);
    }
    let (tt, tc) = (quadrant(m, 0, 0), quadrant(m, 0, 1));
    let (ct, cc) = (quadrant(m, 1, 0), quadrant(m, 1, 1));

    if is_zero2(&tc) && is_zero2(&ct) {
        let neg_transpose = (0..2).all(|i| (0..2).all(|j| cc[i][j] == -tt[j][i].clone()));
        return Ok(if neg_transpose {
            BlockClass::Complex
        } else {
            BlockClass::Other
        });
    }
    if is_zero2(&tt) && is_zero2(&cc) {
        return Ok(BlockClass::Symplectic);
    }
    let e = |i, j| m.get(i, j).clone();
    let a = e(0, 0);
    let (x, y) = (e(1, 2), e(3, 0));
    let shaped = e(1, 1) == a
        && e(2, 2) == -a.clone()
        && e(3, 3) == -a.clone()
        && e(0, 3) == -x.clone()
        && e(2, 1) == -y.clone()
        && [(0, 1), (1, 0), (2, 3), (3, 2), (0, 2), (1, 3), (2, 0), (3, 1)]
            .iter()
            .all(|&(i, j)| e(i, j).is_zero());
    Ok(if shaped && !a.is_zero() {
        BlockClass::BSymplectic
    } else {
        BlockClass::Other
    })
}

/// Exchanges the last `m` tangent directions with minus their duals:
/// blocks `(1_t, 0, 0, 0; 0, 0, 0, −1_m; 0, 0, 1_t, 0; 0, −1_m, 0, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiMap<T: Scalar> {
    pub t: usize,
    pub m: usize,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> PhiMap<T> {
    pub fn new(t: usize, m: usize) -> Self {
        let n = t + m;
        let mut matrix = Matrix::zeros(2 * n);
        for i in 0..t {
            matrix.set(i, i, T::one());
            matrix.set(n + i, n + i, T::one());
        }
        for j in t..n {
            matrix.set(j, n + j, -T::one());
            matrix.set(n + j, j, -T::one());
        }
        PhiMap { t, m, matrix }
    }

    /// `⟨X+ξ, Y+η⟩ = (ξ(Y) + η(X))/2`.
    pub fn pairing(&self) -> Matrix<T> {
        let n = self.t + self.m;
        let half = T::one() / from_i64::<T>(2);
        let mut g = Matrix::zeros(2 * n);
        for i in 0..n {
            g.set(i, n + i, half.clone());
            g.set(n + i, i, half.clone());
        }
        g
    }

    pub fn is_involution(&self) -> bool {
        (&self.matrix * &self.matrix).is_identity()
    }

    pub fn preserves_pairing(&self) -> bool {
        let g = self.pairing();
        &(&self.matrix.transpose() * &g) * &self.matrix == g
    }

    /// `φ J φ⁻¹`, using `φ⁻¹ = φ`.
    pub fn conjugate(&self, j: &Matrix<T>) -> Matrix<T> {
        &(&self.matrix * j) * &self.matrix
    }
}

/// Transports one root block along the `t = m = 1` map.
pub fn phi_conjugate<T: Scalar>(block: &GcsBlock<T>) -> Result<GcsBlock<T>> {
    GcsBlock::from_matrix(PhiMap::new(1, 1).conjugate(&block.matrix))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandCheck {
    pub summand: usize,
    pub classes: Vec<BlockClass>,
    pub uniform: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegrabilityReport {
    pub passes: bool,
    pub summands: Vec<SummandCheck>,
}

/// Necessary condition: every block in an isotropy summand has the same
/// structure type. `blocks` follow the root order of `summands`.
pub fn integrability_necessary<T: Scalar>(
    blocks: &[GcsBlock<T>],
    summands: &[IsotropySummand],
) -> Result<IntegrabilityReport> {
    let expected: usize = summands.iter().map(|s| s.dim).sum();
    if blocks.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: blocks.len(),
        });
    }
    let mut checks = Vec::new();
    let mut rest = blocks;
    for (s, summand) in summands.iter().enumerate() {
        let (here, tail) = rest.split_at(summand.dim);
        rest = tail;
        let classes: Vec<BlockClass> = here.iter().map(|b| b.class).collect();
        let uniform = classes
            .windows(2)
            .all(|w| w[0].structure_type() == w[1].structure_type());
        checks.push(SummandCheck {
            summand: s + 1,
            classes,
            uniform,
        });
    }
    Ok(IntegrabilityReport {
        passes: checks.iter().all(|c| c.uniform),
        summands: checks,
    })
}

/// JSON form of a block: `{"kind":"complex","sign":1}` or
/// `{"kind":"noncomplex","a":"1","x":"2","y":"1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockSpec {
    Complex {
        #[serde(default = "plus_one")]
        sign: i8,
    },
    Noncomplex {
        a: String,
        x: String,
        y: String,
    },
}

fn plus_one() -> i8 {
    1
}

impl BlockSpec {
    pub fn to_kind<T: Scalar>(&self) -> Result<BlockKind<T>> {
        Ok(match self {
            BlockSpec::Complex { sign } => BlockKind::Complex { sign: *sign },
            BlockSpec::Noncomplex { a, x, y } => BlockKind::Noncomplex {
                a: parse_scalar(a)?,
                x: parse_scalar(x)?,
                y: parse_scalar(y)?,
            },
        })
    }
}

/// Parses `-3`, `2/5` and the like.
pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let v = (ok(num) && den.is_none_or(ok))
        .then(|| crate::scalar::parse_decimal_ratio::<T>(num, den))
        .flatten()
        .ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: format!("not a rational number: {text:?}"),
        })?;
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn complex_block_matches_printed_matrix() {
        let b = make_block::<Rational>(&BlockKind::Complex { sign: 1 }).unwrap();
        assert_eq!(
            b.matrix,
            Matrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
        );
        assert_eq!(b.class, BlockClass::Complex);
        let minus = make_block::<Rational>(&BlockKind::Complex { sign: -1 }).unwrap();
        assert_eq!(minus.class, BlockClass::Complex);
    }

    #[test]
    fn pure_symplectic_specialization() {
        let b = make_block(&BlockKind::Noncomplex {
            a: q(0),
            x: q(1),
            y: q(1),
        })
        .unwrap();
        assert_eq!(
            b.matrix,
            Matrix::from_i64(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]])
        );
        assert_eq!(b.class, BlockClass::Symplectic);
    }

    #[test]
    fn b_symplectic() {
        let b = make_block(&BlockKind::Noncomplex {
            a: q(1),
            x: q(2),
            y: q(1),
        })
        .unwrap();
        assert_eq!(b.class, BlockClass::BSymplectic);
        assert!((&b.matrix * &b.matrix).is_neg_identity());
    }

    #[test]
    fn constraint_violation() {
        let err = make_block(&BlockKind::Noncomplex {
            a: q(1),
            x: q(1),
            y: q(1),
        })
        .unwrap_err();
        assert!(matches!(err, Error::Constraint(_)));
        assert!(make_block::<Rational>(&BlockKind::Complex { sign: 2 }).is_err());
    }

    #[test]
    fn classify_rejects_non_structures() {
        assert_eq!(
            classify_block(&Matrix::<Rational>::identity(4)),
            Err(Error::NotComplexStructure)
        );
        assert!(matches!(
            classify_block(&Matrix::<Rational>::identity(2)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn phi_small_cases() {
        let phi = PhiMap::<Rational>::new(1, 1);
        assert_eq!(
            phi.matrix,
            Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0]])
        );
        assert!(phi.is_involution() && phi.preserves_pairing());
    }

    #[test]
    fn block_spec_json() {
        let s: BlockSpec = serde_json::from_str(r#"{"kind":"noncomplex","a":"1","x":"2","y":"1"}"#).unwrap();
        let b = make_block::<Rational>(&s.to_kind().unwrap()).unwrap();
        assert_eq!(b.class, BlockClass::BSymplectic);
        let c: BlockSpec = serde_json::from_str(r#"{"kind":"complex"}"#).unwrap();
        assert_eq!(c, BlockSpec::Complex { sign: 1 });
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar::<Rational>("-3/6").unwrap(), Rational::new((-1).into(), 2.into()));
        assert!(parse_scalar::<Rational>("1/0").is_err());
        assert!(parse_scalar::<Rational>("x").is_err());
        assert!(parse_scalar::<Rational>("--1").is_err());
    }
}
