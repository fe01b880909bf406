//! Basis-independent invariants of a nilpotent Lie algebra, used to rule out
//! isomorphisms before any search.

use serde::Serialize;

use crate::exterior::{Form, MalcevPresentation};
use crate::linalg::{kernel, rank, span};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...` down to zero.
    pub lower_central: Vec<usize>,
    /// Dimensions of `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ...` down to zero.
    pub derived: Vec<usize>,
    pub center: usize,
    /// Rank of `d` on 1-forms and on 2-forms.
    pub d_ranks: [usize; 2],
}

struct Brackets<T> {
    n: usize,
    /// `(i, j, k, c)` with `[e_i, e_j] = c e_k`, `i < j`, 0-based.
    table: Vec<(usize, usize, usize, T)>,
}

impl<T: Scalar> Brackets<T> {
    fn new(p: &MalcevPresentation<T>) -> Self {
        let n = p.dim();
        let mut table = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for (k, c) in p.bracket(i, j) {
                    table.push((i - 1, j - 1, k - 1, c));
                }
            }
        }
        Brackets { n, table }
    }

    fn apply(&self, u: &[T], v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        for (i, j, k, c) in &self.table {
            let w = u[*i].clone() * v[*j].clone() - u[*j].clone() * v[*i].clone();
            if !w.is_zero() {
                out[*k] = out[*k].clone() + c.clone() * w;
            }
        }
        out
    }

    fn commutator(&self, a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
        let mut vecs = Vec::new();
        for u in a {
            for v in b {
                let w = self.apply(u, v);
                if w.iter().any(|x| !x.is_zero()) {
                    vecs.push(w);
                }
            }
        }
        span(vecs, self.n)
    }

    fn unit_basis(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| {
                let mut v = vec![T::zero(); self.n];
                v[i] = T::one();
                v
            })
            .collect()
    }

    fn lower_central(&self) -> Vec<usize> {
        let g = self.unit_basis();
        let mut dims = vec![self.n];
        let mut cur = g.clone();
        while !cur.is_empty() {
            let next = self.commutator(&g, &cur);
            if next.len() == cur.len() {
                break;
            }
            dims.push(next.len());
            cur = next;
        }
        dims
    }

    fn derived(&self) -> Vec<usize> {
        let mut dims = vec![self.n];
        let mut cur = self.unit_basis();
        while !cur.is_empty() {
            let next = self.commutator(&cur, &cur);
            if next.len() == cur.len() {
                break;
            }
            dims.push(next.len());
            cur = next;
        }
        dims
    }

    fn center(&self) -> usize {
        // rows: coefficient of e_k in [x, e_j], as a linear form in x
        let mut rows = Vec::new();
        for j in 0..self.n {
            for k in 0..self.n {
                let mut row = vec![T::zero(); self.n];
                for (a, b, kk, c) in &self.table {
                    if *kk != k {
                        continue;
                    }
                    if *b == j {
                        row[*a] = row[*a].clone() + c.clone();
                    } else if *a == j {
                        row[*b] = row[*b].clone() - c.clone();
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        kernel(rows, self.n).len()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank of `d: Λ^k → Λ^{k+1}`.
fn d_rank<T: Scalar>(p: &MalcevPresentation<T>, k: usize) -> usize {
    let n = p.dim();
    let targets = subsets(n, k + 1);
    let images: Vec<Form<T>> = subsets(n, k).iter().map(|idx| p.d(&Form::basis(idx))).collect();
    // columns are the images; transpose to rows over the target basis
    let rows: Vec<Vec<T>> = images
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| targets.iter().map(|t| f.coeff(t)).collect())
        .collect();
    rank(rows, targets.len())
}

impl Fingerprint {
    pub fn compute<T: Scalar>(p: &MalcevPresentation<T>) -> Self {
        let b = Brackets::new(p);
        Fingerprint {
            dim: p.dim(),
            lower_central: b.lower_central(),
            derived: b.derived(),
            center: b.center(),
            d_ranks: [d_rank(p, 1), d_rank(p, 2)],
        }
    }
}

/// Compares invariants cheapest first and names the first that differs.
pub fn first_difference<T: Scalar>(p: &MalcevPresentation<T>, q: &MalcevPresentation<T>) -> Option<String> {
    if p.dim() != q.dim() {
        return Some(format!("dimension {} vs {}", p.dim(), q.dim()));
    }
    let (bp, bq) = (Brackets::new(p), Brackets::new(q));
    let (lp, lq) = (bp.lower_central(), bq.lower_central());
    if lp != lq {
        return Some(format!("lower central series dims {lp:?} vs {lq:?}"));
    }
    let (dp, dq) = (bp.derived(), bq.derived());
    if dp != dq {
        return Some(format!("derived series dims {dp:?} vs {dq:?}"));
    }
    let (cp, cq) = (bp.center(), bq.center());
    if cp != cq {
        return Some(format!("center dim {cp} vs {cq}"));
    }
    for k in 1..=2 {
        let (rp, rq) = (d_rank(p, k), d_rank(q, k));
        if rp != rq {
            return Some(format!("rank of d on {k}-forms {rp} vs {rq}"));
        }
    }
    None
}
