//! Dense linear algebra over a prime field F_l with l < 2^32.

#![allow(clippy::needless_range_loop)]

pub(crate) fn add(a: u64, b: u64, l: u64) -> u64 {
    let s = a + b;
    if s >= l {
        s - l
    } else {
        s
    }
}

pub(crate) fn sub(a: u64, b: u64, l: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + l - b
    }
}

pub(crate) fn mul(a: u64, b: u64, l: u64) -> u64 {
    a * b % l
}

pub(crate) fn inv(a: u64, l: u64) -> u64 {
    crate::arith::inv_mod_prime(a, l)
}

pub(crate) fn from_i64(v: i64, l: u64) -> u64 {
    v.rem_euclid(l as i64) as u64
}

pub(crate) fn mat_vec(m: &[Vec<u64>], v: &[u64], l: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| (acc + a * b) % l)
        })
        .collect()
}

/// Row-reduces in place, drops zero rows, and returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let s = inv(rows[r][col], l);
        for x in rows[r].iter_mut() {
            *x = mul(*x, s, l);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = sub(*x, mul(f, p, l), l);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : m x = 0}` for a square matrix.
pub(crate) fn nullspace(m: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, l);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; n];
            x[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                x[pc] = sub(0, row[f], l);
            }
            x
        })
        .collect()
}

/// Characteristic polynomial `det(xI - m)`, coefficients from the constant term
/// up, via reduction to upper Hessenberg form.
pub(crate) fn charpoly(m: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let pinv = inv(h[j + 1][j], l);
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let f = mul(h[i][j], pinv, l);
            // row_i -= f * row_{j+1}, then col_{j+1} += f * col_i
            for c in 0..n {
                let v = mul(f, h[j + 1][c], l);
                h[i][c] = sub(h[i][c], v, l);
            }
            for row in h.iter_mut() {
                let v = mul(f, row[i], l);
                row[j + 1] = add(row[j + 1], v, l);
            }
        }
    }
    // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (prod_{t=i+1..k} h_{t,t-1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add(next[d + 1], c, l);
            next[d] = sub(next[d], mul(h[k][k], c, l), l);
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mul(prod, h[i + 1][i], l);
            if prod == 0 {
                break;
            }
            let f = mul(h[i][k], prod, l);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub(next[d], mul(f, c, l), l);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

pub(crate) fn eval(poly: &[u64], x: u64, l: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0u64, |acc, &c| add(mul(acc, x, l), c, l))
}

/// Roots of a polynomial in F_l by exhaustive evaluation.
pub(crate) fn roots(poly: &[u64], l: u64) -> Vec<u64> {
    (0..l).filter(|&x| eval(poly, x, l) == 0).collect()
}
