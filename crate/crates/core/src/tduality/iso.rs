//! Isomorphism search restricted to signed permutations of the basis.
//!
//! Indices of `p` are assigned in increasing order. Because `de^k` only
//! mentions indices below `k`, the structure equations for `k` can be tested
//! as soon as `π(k)` is chosen: supports must map onto supports with equal
//! coefficient magnitudes, and the signs reduce to parity equations
//! `s_i s_j s_k = ±1` solved incrementally over GF(2).

use serde::Serialize;

use crate::exterior::{sort_with_parity, Form, MalcevPresentation};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::fingerprint::first_difference;
use super::AdmissibleTriple;

pub const DEFAULT_BUDGET: usize = 200_000;

/// `e_i ↦ signs[i-1] · f_{perm[i-1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (1..=n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.perm.len())
    }

    /// Pushes a form on the source basis forward: `e^i` becomes `s_i f^{π(i)}`.
    pub fn transport_form<T: Scalar>(&self, f: &Form<T>) -> Form<T> {
        let mut out = Form::zero(f.degree());
        for (idx, c) in f.terms() {
            let image: Vec<usize> = idx.iter().map(|&i| self.perm[i - 1]).collect();
            let negative = idx.iter().filter(|&&i| self.signs[i - 1] < 0).count() % 2 == 1;
            out.add_term(&image, if negative { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Column `i` is the image of `e_i` in the target basis.
    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let n = self.perm.len();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            let s = if self.signs[i] < 0 { -T::one() } else { T::one() };
            m.set(self.perm[i] - 1, i, s);
        }
        m
    }

    /// Whether this is an isomorphism `p → q`.
    pub fn is_isomorphism<T: Scalar>(&self, p: &MalcevPresentation<T>, q: &MalcevPresentation<T>) -> bool {
        p.dim() == q.dim()
            && (1..=p.dim()).all(|k| {
                let lhs = self.transport_form(p.de(k));
                let rhs = q.de(self.perm[k - 1]);
                if self.signs[k - 1] < 0 {
                    lhs == -rhs
                } else {
                    lhs == *rhs
                }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum IsoOutcome {
    Witness(SignedPermutation),
    /// An invariant differs, which proves the algebras are not isomorphic.
    NonIsomorphic { reason: String },
    /// No signed permutation found. When `exhausted` the whole signed
    /// permutation space was ruled out, which still leaves general basis
    /// changes open.
    Inconclusive { explored: usize, exhausted: bool },
}

impl IsoOutcome {
    pub fn witness(&self) -> Option<&SignedPermutation> {
        match self {
            IsoOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// Incremental GF(2) elimination; bit `i` is the sign of `e_{i+1}`.
#[derive(Clone, Default)]
struct Parity {
    rows: Vec<(u128, bool)>,
    pivot_row: Vec<Option<usize>>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Parity {
            rows: Vec::new(),
            pivot_row: vec![None; n],
        }
    }

    /// Adds `Σ_{i ∈ mask} b_i = rhs`; false on contradiction.
    fn push(&mut self, mut mask: u128, mut rhs: bool) -> Option<bool> {
        while mask != 0 {
            let h = 127 - mask.leading_zeros() as usize;
            match self.pivot_row[h] {
                Some(r) => {
                    mask ^= self.rows[r].0;
                    rhs ^= self.rows[r].1;
                }
                None => {
                    self.pivot_row[h] = Some(self.rows.len());
                    self.rows.push((mask, rhs));
                    return Some(true);
                }
            }
        }
        if rhs {
            None
        } else {
            Some(false)
        }
    }

    fn pop(&mut self) {
        let (mask, _) = self.rows.pop().expect("nothing to undo");
        let h = 127 - mask.leading_zeros() as usize;
        self.pivot_row[h] = None;
    }

    /// Free variables are `+1`.
    fn solve(&self, n: usize) -> Vec<i8> {
        let mut bits = vec![false; n];
        for h in 0..n {
            if let Some(r) = self.pivot_row[h] {
                let (mask, rhs) = self.rows[r];
                let mut v = rhs;
                for (i, &b) in bits.iter().enumerate().take(h) {
                    if mask >> i & 1 == 1 {
                        v ^= b;
                    }
                }
                bits[h] = v;
            }
        }
        bits.into_iter().map(|b| if b { -1 } else { 1 }).collect()
    }
}

struct Search<'a, T, F> {
    n: usize,
    p: &'a MalcevPresentation<T>,
    q: &'a MalcevPresentation<T>,
    /// Extra forms that must transport exactly, `(on p, on q)`.
    extra: &'a [(Form<T>, Form<T>)],
    /// Terms of each extra form grouped by their largest index.
    extra_by_top: Vec<Vec<(usize, Vec<usize>, T)>>,
    allowed: Vec<Vec<usize>>,
    perm: Vec<usize>,
    used: Vec<bool>,
    parity: Parity,
    explored: usize,
    budget: usize,
    accept: F,
}

/// Sign bit of `c' / (ε c)` or `None` when magnitudes differ.
fn ratio_bit<T: Scalar>(c: &T, target: &T, odd: bool) -> Option<bool> {
    let c = if odd { -c.clone() } else { c.clone() };
    if *target == c {
        Some(false)
    } else if *target == -c {
        Some(true)
    } else {
        None
    }
}

impl<'a, T: Scalar, F: FnMut(&SignedPermutation) -> bool> Search<'a, T, F> {
    /// Parity equations for index `k` after `π(k)` is placed, or `None`.
    fn equations(&self, k: usize) -> Option<Vec<(u128, bool)>> {
        let mut eqs = Vec::new();
        let src = self.p.de(k);
        let dst = self.q.de(self.perm[k - 1]);
        if src.len() != dst.len() {
            return None;
        }
        for (idx, c) in src.terms() {
            let mut image = [self.perm[idx[0] - 1], self.perm[idx[1] - 1]];
            let odd = sort_with_parity(&mut image)?;
            let target = dst.coeff(&image);
            let bit = ratio_bit(c, &target, odd)?;
            eqs.push((1u128 << (idx[0] - 1) | 1u128 << (idx[1] - 1) | 1u128 << (k - 1), bit));
        }
        for (which, idx, c) in &self.extra_by_top[k - 1] {
            let g = &self.extra[*which].1;
            let mut image: Vec<usize> = idx.iter().map(|&i| self.perm[i - 1]).collect();
            let odd = sort_with_parity(&mut image)?;
            let target = g.coeff(&image);
            let bit = ratio_bit(c, &target, odd)?;
            let mask = idx.iter().fold(0u128, |m, &i| m | 1u128 << (i - 1));
            eqs.push((mask, bit));
        }
        Some(eqs)
    }

    fn run(&mut self, k: usize) -> Option<SignedPermutation> {
        if k > self.n {
            let w = SignedPermutation {
                perm: self.perm.clone(),
                signs: self.parity.solve(self.n),
            };
            return (self.accept)(&w).then_some(w);
        }
        for ci in 0..self.allowed[k - 1].len() {
            let cand = self.allowed[k - 1][ci];
            if self.used[cand - 1] {
                continue;
            }
            if self.explored >= self.budget {
                return None;
            }
            self.explored += 1;
            self.perm[k - 1] = cand;
            self.used[cand - 1] = true;
            if let Some(eqs) = self.equations(k) {
                let mut pushed = 0;
                let mut ok = true;
                for (mask, rhs) in eqs {
                    match self.parity.push(mask, rhs) {
                        None => {
                            ok = false;
                            break;
                        }
                        Some(true) => pushed += 1,
                        Some(false) => {}
                    }
                }
                if ok {
                    if let Some(w) = self.run(k + 1) {
                        return Some(w);
                    }
                }
                for _ in 0..pushed {
                    self.parity.pop();
                }
            }
            self.used[cand - 1] = false;
        }
        None
    }
}

/// Per-index data that any signed permutation must preserve.
fn profiles<T: Scalar>(p: &MalcevPresentation<T>, extra: &[&Form<T>], marked: &[usize]) -> Vec<Vec<usize>> {
    let n = p.dim();
    let mut layer = vec![0usize; n + 1];
    for k in 1..=n {
        layer[k] = p
            .de(k)
            .terms()
            .flat_map(|(idx, _)| idx.iter().map(|&i| layer[i] + 1))
            .max()
            .unwrap_or(0);
    }
    (1..=n)
        .map(|i| {
            let mut occurs: Vec<usize> = Vec::new();
            for k in i + 1..=n {
                for (idx, _) in p.de(k).terms() {
                    if let Some(&other) = idx.iter().find(|&&j| j != i).filter(|_| idx.contains(&i)) {
                        occurs.push(layer[k] * (n + 1) + layer[other]);
                    }
                }
            }
            occurs.sort_unstable();
            let mut prof = vec![layer[i], p.de(i).len(), usize::from(marked.contains(&i))];
            for f in extra {
                prof.push(f.terms().filter(|(idx, _)| idx.contains(&i)).count());
            }
            prof.push(occurs.len());
            prof.extend(occurs);
            prof
        })
        .collect()
}

/// Searches for a signed permutation `p → q` that also carries each
/// `extra.0` onto `extra.1`, maps `marked.0` onto `marked.1`, and satisfies
/// `accept`. Returns the first accepted witness.
pub fn iso_small_with<T: Scalar>(
    p: &MalcevPresentation<T>,
    q: &MalcevPresentation<T>,
    extra: &[(Form<T>, Form<T>)],
    marked: (&[usize], &[usize]),
    budget: usize,
    accept: impl FnMut(&SignedPermutation) -> bool,
) -> IsoOutcome {
    if let Some(reason) = first_difference(p, q) {
        return IsoOutcome::NonIsomorphic { reason };
    }
    let n = p.dim();
    assert!(n <= 128, "signed-permutation search supports at most 128 basis vectors");
    if marked.0.len() != marked.1.len() || extra.iter().any(|(a, b)| a.len() != b.len()) {
        return IsoOutcome::Inconclusive {
            explored: 0,
            exhausted: true,
        };
    }
    let pp = profiles(p, &extra.iter().map(|e| &e.0).collect::<Vec<_>>(), marked.0);
    let qp = profiles(q, &extra.iter().map(|e| &e.1).collect::<Vec<_>>(), marked.1);
    let allowed: Vec<Vec<usize>> = pp
        .iter()
        .map(|a| (1..=n).filter(|&j| qp[j - 1] == *a).collect())
        .collect();

    let mut extra_by_top = vec![Vec::new(); n];
    for (w, (f, _)) in extra.iter().enumerate() {
        for (idx, c) in f.terms() {
            if let Some(&top) = idx.last() {
                extra_by_top[top - 1].push((w, idx.to_vec(), c.clone()));
            }
        }
    }

    let mut s = Search {
        n,
        p,
        q,
        extra,
        extra_by_top,
        allowed,
        perm: vec![0; n],
        used: vec![false; n],
        parity: Parity::new(n),
        explored: 0,
        budget,
        accept,
    };
    match s.run(1) {
        Some(w) => IsoOutcome::Witness(w),
        None => IsoOutcome::Inconclusive {
            explored: s.explored,
            exhausted: s.explored < budget,
        },
    }
}

pub fn iso_small<T: Scalar>(p: &MalcevPresentation<T>, q: &MalcevPresentation<T>, budget: usize) -> IsoOutcome {
    iso_small_with(p, q, &[], (&[], &[]), budget, |_| true)
}

/// Signed permutation carrying algebra, ideal and flux of `a` onto `b`.
pub fn triples_equivalent<T: Scalar>(a: &AdmissibleTriple<T>, b: &AdmissibleTriple<T>, budget: usize) -> IsoOutcome {
    iso_small_with(
        &a.algebra,
        &b.algebra,
        &[(a.flux.clone(), b.flux.clone())],
        (&a.ideal, &b.ideal),
        budget,
        |_| true,
    )
}
