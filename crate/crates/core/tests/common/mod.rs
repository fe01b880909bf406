#![allow(dead_code)]

use flagflux::linalg::kernel;
use flagflux::{Form, MalcevPresentation, QForm, QMalcev, QTriple, Rational};
use rand::Rng;

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    go(1, n, k, &mut cur, &mut out);
    out
}

/// Random integer combination of `basis` vectors over `shapes`.
fn combine<R: Rng>(rng: &mut R, basis: &[Vec<Rational>], shapes: &[Vec<usize>], degree: usize) -> QForm {
    let mut f = Form::zero(degree);
    for v in basis {
        let c = rng.gen_range(-2i64..=2);
        if c == 0 {
            continue;
        }
        for (coef, idx) in v.iter().zip(shapes) {
            if *coef != q(0) {
                f.add_term(idx, coef.clone() * q(c));
            }
        }
    }
    f
}

/// Closed forms of `degree` spanned by `shapes`, as coefficient vectors.
fn closed_forms(p: &QMalcev, shapes: &[Vec<usize>], degree: usize) -> Vec<Vec<Rational>> {
    let n = p.dim();
    let targets = subsets(n, degree + 1);
    let images: Vec<QForm> = shapes.iter().map(|s| p.d(&Form::basis(s))).collect();
    let rows: Vec<Vec<Rational>> = targets
        .iter()
        .map(|t| images.iter().map(|f| f.coeff(t)).collect())
        .filter(|r: &Vec<Rational>| r.iter().any(|c| *c != q(0)))
        .collect();
    kernel(rows, shapes.len())
}

/// A nilpotent presentation built by successive central extensions by
/// random closed 2-forms.
pub fn random_nilpotent<R: Rng>(rng: &mut R, dim: usize) -> QMalcev {
    let start = rng.gen_range(2..=3.min(dim));
    let mut diffs: Vec<QForm> = vec![Form::zero(2); start];
    while diffs.len() < dim {
        let p = MalcevPresentation::new(diffs.clone()).unwrap();
        let shapes = subsets(p.dim(), 2);
        let closed = closed_forms(&p, &shapes, 2);
        diffs.push(combine(rng, &closed, &shapes, 2));
    }
    MalcevPresentation::new(diffs).unwrap()
}

/// Random admissible triple of dimension `3..=max_dim`: the ideal is a
/// trailing run of central basis vectors and `H` a random closed 3-form
/// with at most one ideal leg per term.
pub fn random_triple<R: Rng>(rng: &mut R, max_dim: usize) -> QTriple {
    let dim = rng.gen_range(3..=max_dim);
    let algebra = random_nilpotent(rng, dim);
    let mut central_tail = 0;
    for k in (1..=dim).rev() {
        if (1..=dim).any(|j| algebra.de(j).mentions(k)) {
            break;
        }
        central_tail += 1;
    }
    let m = rng.gen_range(1..=central_tail.min(dim - 1));
    let ideal: Vec<usize> = (dim - m + 1..=dim).collect();
    let shapes: Vec<Vec<usize>> = subsets(dim, 3)
        .into_iter()
        .filter(|s| s.iter().filter(|i| ideal.contains(i)).count() <= 1)
        .collect();
    let closed = closed_forms(&algebra, &shapes, 3);
    let flux = combine(rng, &closed, &shapes, 3);
    QTriple::new(algebra, ideal, flux).unwrap()
}
