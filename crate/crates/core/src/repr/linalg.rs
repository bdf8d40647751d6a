//! Dense exact linear algebra over ℚ(q).

use crate::scalars::QScalar;

pub type Vector = Vec<QScalar>;
/// Row-major.
pub type Matrix = Vec<Vec<QScalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![QScalar::zero(); cols]; rows]
}

pub fn zero_vector(n: usize) -> Vector {
    vec![QScalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = QScalar::one();
    v
}

pub fn is_zero(v: &[QScalar]) -> bool {
    v.iter().all(QScalar::is_zero)
}

pub fn column(m: &Matrix, j: usize) -> Vector {
    m.iter().map(|row| row[j].clone()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[QScalar]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(QScalar::zero(), |mut acc, (a, b)| {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
                acc
            })
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &QScalar) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn axpy(target: &mut [QScalar], c: &QScalar, source: &[QScalar]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= &(c * s);
        }
    }
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut rows: Vec<Vector> = m.iter().filter(|r| !is_zero(r)).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free = (0..cols).filter(|c| !pivots.contains(c));
    free.map(|fc| {
        let mut v = zero_vector(cols);
        v[fc] = QScalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[row][fc];
        }
        v
    })
    .collect()
}

/// A subspace of `ℚ(q)^dim` kept in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new() }
    }

    pub fn spanned_by<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Subspace::new(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vector> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// `v` with every pivot coordinate eliminated.
    pub fn reduce(&self, v: &[QScalar]) -> Vector {
        let mut out = v.to_vec();
        for (p, row) in &self.rows {
            if !out[*p].is_zero() {
                let c = out[*p].clone();
                axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[QScalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[QScalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        r = r.iter().map(|x| x * &inv).collect();
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                axpy(row, &c, &r);
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> QScalar {
        QScalar::from_int(n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero(&mat_vec(&m, v)));
        }
    }

    #[test]
    fn kernel_of_q_matrix() {
        let q = QScalar::q();
        let m = vec![vec![q.clone(), s(1)], vec![&q * &q, q.clone()]];
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        assert!(is_zero(&mat_vec(&m, &k[0])));
    }

    #[test]
    fn subspace_membership() {
        let mut sub = Subspace::new(3);
        assert!(sub.insert(&[s(1), s(1), s(0)]));
        assert!(sub.insert(&[s(0), s(1), s(1)]));
        assert!(!sub.insert(&[s(1), s(2), s(1)]));
        assert!(sub.contains(&[s(1), s(0), s(-1)]));
        assert!(!sub.contains(&[s(0), s(0), s(1)]));
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.pivots(), vec![0, 1]);
    }
}
