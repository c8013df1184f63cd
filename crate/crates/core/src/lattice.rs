//! Integer lattices: Hermite and Smith normal forms, kernels, intersections.
//!
//! Matrices are lists of rows and a lattice is the row span of its matrix.

#![allow(clippy::needless_range_loop)]

use num_traits::{PrimInt, Signed};

pub type IntMatrix<T> = Vec<Vec<T>>;

fn abs<T: PrimInt + Signed>(x: T) -> T {
    x.abs()
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd<T: PrimInt + Signed>(a: T, b: T) -> (T, T, T) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while r != T::zero() {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < T::zero() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd_all<T: PrimInt + Signed>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |g, &x| ext_gcd(g, x).0)
}

/// Divide by the gcd of the entries and make the first nonzero entry positive.
pub fn primitive<T: PrimInt + Signed>(v: &[T]) -> Vec<T> {
    let g = gcd_all(v);
    if g == T::zero() {
        return v.to_vec();
    }
    let mut out: Vec<T> = v.iter().map(|&x| x / g).collect();
    if let Some(first) = out.iter().find(|x| **x != T::zero()) {
        if *first < T::zero() {
            out.iter_mut().for_each(|x| *x = -*x);
        }
    }
    out
}

fn floor_div<T: PrimInt + Signed>(a: T, b: T) -> T {
    let q = a / b;
    if (a % b != T::zero()) && ((a < T::zero()) != (b < T::zero())) {
        q - T::one()
    } else {
        q
    }
}

/// Row-style Hermite normal form of the row lattice. Zero rows are dropped;
/// pivots are positive and entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form<T: PrimInt + Signed>(rows: &[Vec<T>]) -> IntMatrix<T> {
    let (h, _) = hnf_with_transform(rows);
    h.into_iter().filter(|r| r.iter().any(|x| *x != T::zero())).collect()
}

/// HNF together with the unimodular transform `u` such that `u * rows = h`.
/// Zero rows of `h` are kept (at the bottom) so that they expose the left kernel.
pub fn hnf_with_transform<T: PrimInt + Signed>(rows: &[Vec<T>]) -> (IntMatrix<T>, IntMatrix<T>) {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: IntMatrix<T> = rows.to_vec();
    let mut u: IntMatrix<T> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // Euclid on the column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m {
                if a[r][col] != T::zero() && best.is_none_or(|b| abs(a[r][col]) < abs(a[b][col])) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m {
                if a[r][col] != T::zero() {
                    let q = a[r][col] / a[pivot_row][col];
                    for c in 0..n {
                        a[r][c] = a[r][c] - q * a[pivot_row][c];
                    }
                    for c in 0..m {
                        u[r][c] = u[r][c] - q * u[pivot_row][c];
                    }
                    if a[r][col] != T::zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col] == T::zero() {
            continue;
        }
        if a[pivot_row][col] < T::zero() {
            a[pivot_row].iter_mut().for_each(|x| *x = -*x);
            u[pivot_row].iter_mut().for_each(|x| *x = -*x);
        }
        let p = a[pivot_row][col];
        for r in 0..pivot_row {
            let q = floor_div(a[r][col], p);
            if q != T::zero() {
                for c in 0..n {
                    a[r][c] = a[r][c] - q * a[pivot_row][c];
                }
                for c in 0..m {
                    u[r][c] = u[r][c] - q * u[pivot_row][c];
                }
            }
        }
        pivot_row += 1;
    }
    (a, u)
}

pub fn rank<T: PrimInt + Signed>(rows: &[Vec<T>]) -> usize {
    hermite_normal_form(rows).len()
}

fn transpose<T: Copy>(rows: &[Vec<T>], ncols: usize) -> IntMatrix<T> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c]).collect()).collect()
}

/// Basis of `{x in Z^ncols : rows * x = 0}` in Hermite normal form.
pub fn kernel<T: PrimInt + Signed>(rows: &[Vec<T>], ncols: usize) -> IntMatrix<T> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
    }
    let t = transpose(rows, ncols);
    let (h, u) = hnf_with_transform(&t);
    let basis: IntMatrix<T> = h
        .iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(|x| *x == T::zero()))
        .map(|(_, k)| k)
        .collect();
    hermite_normal_form(&basis)
}

/// Whether `v` lies in the row lattice of `rows`.
pub fn contains_vector<T: PrimInt + Signed>(rows: &[Vec<T>], v: &[T]) -> bool {
    let base = hermite_normal_form(rows);
    let mut ext = base.clone();
    ext.push(v.to_vec());
    hermite_normal_form(&ext) == base
}

/// Whether the row lattice of `sub` is contained in that of `sup`.
pub fn lattice_le<T: PrimInt + Signed>(sub: &[Vec<T>], sup: &[Vec<T>]) -> bool {
    let base = hermite_normal_form(sup);
    let mut ext = base.clone();
    ext.extend(sub.iter().cloned());
    hermite_normal_form(&ext) == base
}

pub fn lattice_sum<T: PrimInt + Signed>(a: &[Vec<T>], b: &[Vec<T>]) -> IntMatrix<T> {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    hermite_normal_form(&all)
}

pub fn lattice_intersection<T: PrimInt + Signed>(a: &[Vec<T>], b: &[Vec<T>], ncols: usize) -> IntMatrix<T> {
    let a = hermite_normal_form(a);
    let b = hermite_normal_form(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // (u, v) with u*A - v*B = 0, i.e. the left kernel of [A; B].
    let mut stacked = a.clone();
    stacked.extend(b.iter().map(|r| r.iter().map(|x| -*x).collect::<Vec<_>>()));
    let left = kernel(&transpose(&stacked, ncols), stacked.len());
    let rows: IntMatrix<T> = left
        .iter()
        .map(|coef| {
            (0..ncols)
                .map(|c| (0..a.len()).fold(T::zero(), |s, i| s + coef[i] * a[i][c]))
                .collect()
        })
        .collect();
    hermite_normal_form(&rows)
}

/// Saturation `(L ⊗ Q) ∩ Z^n` of a row lattice.
pub fn saturation<T: PrimInt + Signed>(rows: &[Vec<T>], ncols: usize) -> IntMatrix<T> {
    let perp = kernel(rows, ncols);
    kernel(&perp, ncols)
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of the Smith normal form.
pub fn smith_invariants<T: PrimInt + Signed>(rows: &[Vec<T>]) -> Vec<T> {
    let mut a: IntMatrix<T> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != T::zero() && best.is_none_or(|(bi, bj)| abs(a[i][j]) < abs(a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t] / a[t][t];
            if q != T::zero() {
                for j in t..n {
                    a[i][j] = a[i][j] - q * a[t][j];
                }
            }
            if a[i][t] != T::zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = a[t][j] / a[t][t];
            if q != T::zero() {
                for i in t..m {
                    a[i][j] = a[i][j] - q * a[i][t];
                }
            }
            if a[t][j] != T::zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition
        let p = a[t][t];
        let mut fixed = true;
        'outer: for i in t + 1..m {
            for j in t + 1..n {
                if a[i][j] % p != T::zero() {
                    for c in t..n {
                        a[t][c] = a[t][c] + a[i][c];
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            diag.push(abs(p));
            t += 1;
        }
    }
    diag
}

/// Invariant factors of `Z^n / L` as `(torsion factors > 1, free rank)`.
pub fn quotient_invariants<T: PrimInt + Signed>(rows: &[Vec<T>], n: usize) -> (Vec<T>, usize) {
    let d = smith_invariants(rows);
    let torsion = d.iter().copied().filter(|x| *x != T::one()).collect();
    (torsion, n - d.len())
}

/// Index of the full-rank-in-span sublattice `sub` in `sup` (`sub ⊆ sup`, equal rank).
pub fn index_in<T: PrimInt + Signed>(sub: &[Vec<T>], sup: &[Vec<T>], ncols: usize) -> Option<T> {
    let sup = hermite_normal_form(sup);
    let sub = hermite_normal_form(sub);
    if sup.len() != sub.len() || !lattice_le(&sub, &sup) {
        return None;
    }
    if sup.is_empty() {
        return Some(T::one());
    }
    // coordinates of sub rows in the basis of sup
    let coords = coordinates(&sub, &sup, ncols)?;
    Some(smith_invariants(&coords).into_iter().fold(T::one(), |p, x| p * x))
}

/// Express each row of `vs` in the basis `basis` (which must be in HNF).
pub fn coordinates<T: PrimInt + Signed>(vs: &[Vec<T>], basis: &[Vec<T>], ncols: usize) -> Option<IntMatrix<T>> {
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| r.iter().position(|x| *x != T::zero()).unwrap_or(ncols))
        .collect();
    vs.iter()
        .map(|v| {
            let mut rest = v.clone();
            let mut c = vec![T::zero(); basis.len()];
            for (i, b) in basis.iter().enumerate() {
                let p = pivots[i];
                if rest[p] % b[p] != T::zero() {
                    return None;
                }
                let q = rest[p] / b[p];
                c[i] = q;
                for j in 0..ncols {
                    rest[j] = rest[j] - q * b[j];
                }
            }
            rest.iter().all(|x| *x == T::zero()).then_some(c)
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant<T: PrimInt + Signed>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k] == T::zero() {
            let Some(s) = (k + 1..n).find(|&r| a[r][k] != T::zero()) else {
                return T::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        T::one()
    } else {
        sign * a[n - 1][n - 1]
    }
}
