use serde::Serialize;

use super::{q_functional, SymplecticMatrix, WindingSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub set: WindingSet,
    pub matrix: SymplecticMatrix,
    pub q_before: i64,
    pub q_after: i64,
    /// False when the minimum is only a local one.
    pub certified: bool,
}

fn image(v: &WindingSet, u: &SymplecticMatrix) -> WindingSet {
    WindingSet::new(v.vectors().iter().map(|x| u.apply(x)))
}

fn mat2(a: i64, b: i64, c: i64, d: i64) -> SymplecticMatrix {
    SymplecticMatrix {
        rows: vec![vec![a, b], vec![c, d]],
    }
}

/// Minimizes the sum of squared norms over the symplectic group. Ties are
/// broken first by the lexicographically greatest transformed set, then by
/// the lexicographically least matrix. Exact for genus 1; a transvection
/// descent otherwise.
pub fn canonical_form(v: &WindingSet, genus: usize) -> CanonicalForm {
    let q_before = q_functional(v);
    let dim = 2 * genus;
    let (set, matrix, certified) = if v.is_empty() || v.vectors().iter().all(|x| x.iter().all(|&y| y == 0)) {
        (v.clone(), SymplecticMatrix::identity(dim), true)
    } else if genus == 1 {
        let u = torus_minimizer(v);
        (image(v, &u), u, true)
    } else {
        let u = descend(v, dim);
        (image(v, &u), u, false)
    };
    CanonicalForm {
        q_after: q_functional(&set),
        set,
        matrix,
        q_before,
        certified,
    }
}

/// Gram matrix `sum v^T v` as `(g11, g12, g22)`.
fn gram(v: &WindingSet) -> (i64, i64, i64) {
    v.vectors()
        .iter()
        .fold((0, 0, 0), |(a, b, c), x| (a + x[0] * x[0], b + x[0] * x[1], c + x[1] * x[1]))
}

fn torus_minimizer(v: &WindingSet) -> SymplecticMatrix {
    let (g11, g12, g22) = gram(v);
    let det = g11 * g22 - g12 * g12;
    let candidates = if det == 0 { rank_one(v) } else { definite(g11, g12, g22, det) };
    candidates
        .into_iter()
        .map(|u| (image(v, &u), u))
        .max_by(|(s1, u1), (s2, u2)| s1.cmp(s2).then(u2.cmp(u1)))
        .map(|(_, u)| u)
        .unwrap()
}

/// Every minimizer when the Gram form is positive definite. Columns of a
/// minimizer cannot be longer than the reduced basis total, which bounds the
/// search box.
fn definite(g11: i64, g12: i64, g22: i64, det: i64) -> Vec<SymplecticMatrix> {
    let norm = |x: i64, y: i64| g11 * x * x + 2 * g12 * x * y + g22 * y * y;
    let inner = |p: (i64, i64), q: (i64, i64)| g11 * p.0 * q.0 + g12 * (p.0 * q.1 + p.1 * q.0) + g22 * p.1 * q.1;
    let (mut b1, mut b2) = ((1i64, 0i64), (0i64, 1i64));
    loop {
        if norm(b2.0, b2.1) < norm(b1.0, b1.1) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let n1 = norm(b1.0, b1.1);
        let ip = inner(b1, b2);
        if 2 * ip.abs() <= n1 {
            break;
        }
        let mu = (ip as f64 / n1 as f64).round() as i64;
        b2 = (b2.0 - mu * b1.0, b2.1 - mu * b1.1);
    }
    let bound = norm(b1.0, b1.1) + norm(b2.0, b2.1);
    let xmax = ((bound * g22) as f64 / det as f64).sqrt().ceil() as i64;
    let ymax = ((bound * g11) as f64 / det as f64).sqrt().ceil() as i64;
    let mut short = Vec::new();
    for x in -xmax..=xmax {
        for y in -ymax..=ymax {
            if (x, y) != (0, 0) && norm(x, y) <= bound {
                short.push((x, y));
            }
        }
    }
    let mut best = i64::MAX;
    let mut out = Vec::new();
    for &c1 in &short {
        for &c2 in &short {
            if c1.0 * c2.1 - c1.1 * c2.0 != 1 {
                continue;
            }
            let q = norm(c1.0, c1.1) + norm(c2.0, c2.1);
            if q < best {
                best = q;
                out.clear();
            }
            if q == best {
                out.push(mat2(c1.0, c2.0, c1.1, c2.1));
            }
        }
    }
    out
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// All windings are multiples of one primitive `p`. The minimizers send `p`
/// to a unit vector; one matrix per unit vector is returned, with the
/// stabilizer freedom spent on making the entries small.
fn rank_one(v: &WindingSet) -> Vec<SymplecticMatrix> {
    let x = v.vectors().iter().find(|x| x.iter().any(|&y| y != 0)).unwrap();
    let (g, _, _) = ext_gcd(x[0], x[1]);
    let p = (x[0] / g, x[1] / g);
    // M = [[p0, p1], [r, s]] has det 1, and U = M^-1 sends p to (1, 0)
    let (_, s0, r0) = ext_gcd(p.0, p.1);
    let (r0, s0) = (-r0, s0);
    let pp = p.0 * p.0 + p.1 * p.1;
    let t = ((r0 * p.0 + s0 * p.1) as f64 / pp as f64).round() as i64;
    let (r, s) = (r0 - t * p.0, s0 - t * p.1);
    let u = mat2(s, -p.1, -r, p.0);
    let quarter = mat2(0, 1, -1, 0);
    let mut out = vec![u];
    for _ in 0..3 {
        let next = out.last().unwrap().mul(&quarter);
        out.push(next);
    }
    out
}

/// Transvection `x -> x + e <x, w> w` as a matrix, with `<x, w> = x J w^T`.
fn transvection(w: &[i64], e: i64) -> SymplecticMatrix {
    let n = w.len();
    let g = n / 2;
    // row i of the matrix is the image of basis vector i
    let rows = (0..n)
        .map(|i| {
            let pair = if i < g { w[g + i] } else { -w[i - g] };
            (0..n).map(|j| (i == j) as i64 + e * pair * w[j]).collect()
        })
        .collect();
    SymplecticMatrix { rows }
}

fn generators(dim: usize) -> Vec<SymplecticMatrix> {
    let mut ws: Vec<Vec<i64>> = Vec::new();
    for i in 0..dim {
        let mut w = vec![0; dim];
        w[i] = 1;
        ws.push(w);
        for j in i + 1..dim {
            for s in [1, -1] {
                let mut w = vec![0; dim];
                w[i] = 1;
                w[j] = s;
                ws.push(w);
            }
        }
    }
    ws.iter().flat_map(|w| [transvection(w, 1), transvection(w, -1)]).collect()
}

fn descend(v: &WindingSet, dim: usize) -> SymplecticMatrix {
    let gens = generators(dim);
    let mut u = SymplecticMatrix::identity(dim);
    let mut cur = v.clone();
    let mut q = q_functional(&cur);
    loop {
        let best = gens
            .iter()
            .map(|t| {
                let next = image(&cur, t);
                (q_functional(&next), next, t)
            })
            .min_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((nq, next, t)) if nq < q => {
                q = nq;
                cur = next;
                u = u.mul(t);
            }
            _ => return u,
        }
    }
}
