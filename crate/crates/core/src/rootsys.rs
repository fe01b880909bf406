//! Root data of type A: positive roots, parabolic choices `Θ ⊂ Σ`, and the
//! splitting of the complementary roots into isotropy summands.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan series label. Only [`Series::A`] carries root data here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A root as its coefficient vector over the simple roots `α_1..α_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    pub coeffs: Vec<i32>,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    /// Coefficient of `α_p` (1-based), i.e. the height with respect to `α_p`.
    pub fn coeff(&self, p: usize) -> i32 {
        self.coeffs[p - 1]
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    /// For a type-A root `α_i + ... + α_j` returns `(i, j)` (1-based).
    pub fn support(&self) -> Option<(usize, usize)> {
        let i = self.coeffs.iter().position(|&c| c != 0)?;
        let j = self.coeffs.iter().rposition(|&c| c != 0)?;
        Some((i + 1, j + 1))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "α{}", p + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    /// Ordered by height, then by leftmost simple root.
    pub positive_roots: Vec<Root>,
}

/// Series, rank and the simple roots `Θ` (1-based) kept in the Levi factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagSpec {
    pub series: Series,
    pub rank: usize,
    pub theta: Vec<usize>,
}

impl FlagSpec {
    pub fn new(series: Series, rank: usize, mut theta: Vec<usize>) -> Result<Self> {
        theta.sort_unstable();
        theta.dedup();
        let spec = FlagSpec {
            series,
            rank,
            theta,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The maximal flag, `Θ = ∅`.
    pub fn maximal(series: Series, rank: usize) -> Result<Self> {
        Self::new(series, rank, Vec::new())
    }

    /// `Θ = Σ \ removed`.
    pub fn complement_of(series: Series, rank: usize, removed: &[usize]) -> Result<Self> {
        let theta = (1..=rank).filter(|p| !removed.contains(p)).collect();
        if let Some(&bad) = removed.iter().find(|&&p| p == 0 || p > rank) {
            return Err(Error::InvalidFlag(format!(
                "simple root {bad} outside 1..={rank}"
            )));
        }
        Self::new(series, rank, theta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::InvalidFlag("rank must be positive".into()));
        }
        if let Some(&bad) = self.theta.iter().find(|&&p| p == 0 || p > self.rank) {
            return Err(Error::InvalidFlag(format!(
                "simple root {bad} outside 1..={}",
                self.rank
            )));
        }
        Ok(())
    }

    pub fn in_theta(&self, p: usize) -> bool {
        self.theta.binary_search(&p).is_ok()
    }

    /// `Σ \ Θ`, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&p| !self.in_theta(p)).collect()
    }

    /// Complex dimension `|Π_M^+|`, counted without building roots.
    pub fn dim(&self) -> usize {
        let l = self.rank;
        let mut inside = 0;
        let mut run = 0;
        for p in 1..=l + 1 {
            if p <= l && self.in_theta(p) {
                run += 1;
            } else {
                inside += run * (run + 1) / 2;
                run = 0;
            }
        }
        l * (l + 1) / 2 - inside
    }
}

impl fmt::Display for FlagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} Θ={{", self.series, self.rank)?;
        for (n, p) in self.theta.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "α{p}")?;
        }
        write!(f, "}}")
    }
}

/// One isotropy summand: the complementary roots sharing a coefficient
/// signature over `Σ \ Θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropySummand {
    pub signature: Vec<i32>,
    pub roots: Vec<Root>,
    pub dim: usize,
}

pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    if series != Series::A {
        return Err(Error::UnsupportedSeries(series.to_string()));
    }
    if rank == 0 {
        return Err(Error::InvalidFlag("rank must be positive".into()));
    }
    let mut roots = Vec::with_capacity(rank * (rank + 1) / 2);
    for h in 1..=rank {
        for i in 1..=rank + 1 - h {
            let mut coeffs = vec![0; rank];
            coeffs[i - 1..i - 1 + h].iter_mut().for_each(|c| *c = 1);
            roots.push(Root { coeffs });
        }
    }
    Ok(RootSystem {
        series,
        rank,
        positive_roots: roots,
    })
}

fn check_theta(rs: &RootSystem, theta: &[usize]) -> Result<()> {
    if let Some(&bad) = theta.iter().find(|&&p| p == 0 || p > rs.rank) {
        return Err(Error::InvalidFlag(format!(
            "simple root {bad} outside 1..={}",
            rs.rank
        )));
    }
    Ok(())
}

/// Positive roots with a nonzero coefficient on some simple root outside `Θ`.
pub fn complementary_positive_roots(rs: &RootSystem, theta: &[usize]) -> Result<Vec<Root>> {
    check_theta(rs, theta)?;
    Ok(rs
        .positive_roots
        .iter()
        .filter(|r| {
            r.coeffs
                .iter()
                .enumerate()
                .any(|(p, &c)| c != 0 && !theta.contains(&(p + 1)))
        })
        .cloned()
        .collect())
}

/// Groups the complementary roots by signature over `Σ \ Θ`.
///
/// Summands are ordered by total signature height, and within a height by
/// decreasing signature, so for two removed roots `α_p, α_q` the order is
/// `(1,0), (0,1), (1,1)`. Brackets of summands land in later summands.
pub fn isotropy_summands(rs: &RootSystem, theta: &[usize]) -> Result<Vec<IsotropySummand>> {
    let comp: Vec<usize> = (1..=rs.rank).filter(|p| !theta.contains(p)).collect();
    let mut summands: Vec<IsotropySummand> = Vec::new();
    for root in complementary_positive_roots(rs, theta)? {
        let sig: Vec<i32> = comp.iter().map(|&p| root.coeff(p)).collect();
        match summands.iter_mut().find(|s| s.signature == sig) {
            Some(s) => {
                s.roots.push(root);
                s.dim += 1;
            }
            None => summands.push(IsotropySummand {
                signature: sig,
                roots: vec![root],
                dim: 1,
            }),
        }
    }
    summands.sort_by(|a, b| {
        let ha: i32 = a.signature.iter().sum();
        let hb: i32 = b.signature.iter().sum();
        ha.cmp(&hb).then_with(|| b.signature.cmp(&a.signature))
    });
    Ok(summands)
}

/// Complex dimensions of the three summands of `SU(l+m+n)/S(U(l)×U(m)×U(n))`,
/// obtained by counting roots for `Θ = Σ \ {α_l, α_{l+m}}`.
pub fn three_summand_dims(l: usize, m: usize, n: usize) -> Result<(usize, usize, usize)> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::InvalidFlag("block sizes must be positive".into()));
    }
    let spec = FlagSpec::complement_of(Series::A, l + m + n - 1, &[l, l + m])?;
    let rs = build_root_system(spec.series, spec.rank)?;
    let s = isotropy_summands(&rs, &spec.theta)?;
    assert_eq!(s.len(), 3, "two removed simple roots give three summands");
    Ok((s[0].dim, s[1].dim, s[2].dim))
}
