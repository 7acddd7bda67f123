//! Smith normal form over the integers and coset representatives of
//! `Z^l / M Z^l`.

use crate::error::{invalid, Error, Result};

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`,
/// `d_i ≥ 0`. `u_inv` is kept alongside `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub u_inv: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

fn narrow(m: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>> {
    m.into_iter()
        .map(|row| row.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::InvalidArgument("overflow in Smith form".into()))).collect())
        .collect()
}

struct Work {
    a: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    u_inv: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += q·row_j
    fn add_row(&mut self, i: usize, j: usize, q: i128) {
        for m in [&mut self.a, &mut self.u] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(rj) {
                *x += q * y;
            }
        }
        for row in self.u_inv.iter_mut() {
            row[j] -= q * row[i];
        }
    }

    /// col_i += q·col_j
    fn add_col(&mut self, i: usize, j: usize, q: i128) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] += q * row[j];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -*x;
            }
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i];
        }
    }
}

/// Smith normal form of a square integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<Smith> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return invalid("Smith normal form expects a square matrix");
    }
    let mut w = Work {
        a: m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect(),
        u: identity(n),
        u_inv: identity(n),
        v: identity(n),
    };
    for t in 0..n {
        loop {
            // Move the smallest non-zero entry of the trailing block to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if w.a[i][j] != 0 && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = w.a[i][t].div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = w.a[t][j].div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    let d = (0..n).map(|i| w.a[i][i] as i64).collect();
    Ok(Smith { d, u: narrow(w.u)?, u_inv: narrow(w.u_inv)?, v: narrow(w.v)? })
}

/// `|det M|` pairwise inequivalent representatives of `Z^l / M Z^l`:
/// the images `U⁻¹·y` of the box `Π [0, d_i)`.
pub fn enumerate_quotient(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let s = smith_normal_form(m)?;
    if s.d.contains(&0) {
        return Err(Error::Singular);
    }
    let n = s.d.len();
    let total: usize = s.d.iter().map(|&x| x as usize).product();
    let mut out = Vec::with_capacity(total);
    let mut y = vec![0i64; n];
    for _ in 0..total {
        out.push((0..n).map(|i| (0..n).map(|j| s.u_inv[i][j] * y[j]).sum()).collect());
        for (yi, &di) in y.iter_mut().zip(&s.d).rev() {
            *yi += 1;
            if *yi < di {
                break;
            }
            *yi = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn factorisation_holds() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.d, vec![2, 6, 12]);
        let dm = mul(&mul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(dm[i][j], if i == j { s.d[i] } else { 0 });
            }
        }
        let id = mul(&s.u, &s.u_inv);
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn small_quotients() {
        assert_eq!(enumerate_quotient(&[vec![2]]).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(enumerate_quotient(&[vec![2, 0], vec![0, 2]]).unwrap().len(), 4);
        assert_eq!(enumerate_quotient(&[vec![2, 1], vec![0, 3]]).unwrap().len(), 6);
        assert_eq!(enumerate_quotient(&[vec![-3]]).unwrap().len(), 3);
        assert!(enumerate_quotient(&[vec![1, 2], vec![2, 4]]).is_err());
    }
}
