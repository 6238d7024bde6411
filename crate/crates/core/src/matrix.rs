//! Small dense matrices over `Scalar`: characteristic polynomials by
//! cofactor expansion, exact nullspaces, pivoted linear solves.

use crate::poly::{Poly, Var};
use crate::scalar::Scalar;
use crate::Error;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(|v| v.is_exact())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length".into()));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                acc = &acc + &(self.get(i, j) * &v[j]);
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Monic characteristic polynomial det(q*I - M) by cofactor expansion;
    /// meant for the small matrices that arise here.
    pub fn charpoly(&self) -> Result<Poly, Error> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut entries = vec![vec![Poly::zero(Var::Q); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut p = Poly::constant(Var::Q, -self.get(i, j));
                if i == j {
                    p = &p + &Poly::gen(Var::Q);
                }
                entries[i][j] = p;
            }
        }
        Ok(det_poly(&entries))
    }

    /// Basis of the right nullspace.  Exact matrices pivot on any nonzero
    /// entry; float matrices treat entries below a relative threshold as
    /// zero and pivot on the largest magnitude.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>, Error> {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let exact = self.is_exact();
        let tol = if exact {
            Scalar::zero()
        } else {
            let mut scale = Scalar::zero();
            for row in &a {
                for v in row {
                    let m = v.abs();
                    if m.cmp_value(&scale) == std::cmp::Ordering::Greater {
                        scale = m;
                    }
                }
            }
            &scale * &tiny(50)
        };
        let is_negligible = |v: &Scalar| -> bool {
            if exact {
                v.is_zero()
            } else {
                v.abs().cmp_value(&tol) != std::cmp::Ordering::Greater
            }
        };
        let mut pivot_col_of_row: Vec<usize> = vec![];
        let mut r = 0usize;
        for c in 0..self.cols {
            // choose pivot
            let mut best: Option<usize> = None;
            for i in r..self.rows {
                if !is_negligible(&a[i][c]) {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if !exact
                                && a[i][c].abs().cmp_value(&a[b][c].abs())
                                    == std::cmp::Ordering::Greater
                            {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                    if exact {
                        break;
                    }
                }
            }
            let Some(p) = best else { continue };
            a.swap(r, p);
            let inv = Scalar::one().checked_div(&a[r][c])?;
            for j in 0..self.cols {
                a[r][j] = &a[r][j] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..self.cols {
                        let sub = &a[r][j] * &f;
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let mut basis = vec![];
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Solve M x = b with partial pivoting (works for exact and float).
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::ShapeMismatch("solve needs square system".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row: Vec<Scalar> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        for c in 0..n {
            let mut p = c;
            for i in c + 1..n {
                if a[i][c].abs().cmp_value(&a[p][c].abs()) == std::cmp::Ordering::Greater {
                    p = i;
                }
            }
            if a[p][c].is_zero() {
                return Err(Error::SingularMatrix);
            }
            a.swap(c, p);
            let inv = Scalar::one().checked_div(&a[c][c])?;
            for j in c..=n {
                a[c][j] = &a[c][j] * &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=n {
                        let sub = &a[c][j] * &f;
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
            }
        }
        Ok((0..n).map(|i| a[i][n].clone()).collect())
    }
}

fn tiny(digits: u32) -> Scalar {
    let d = digits.saturating_sub(8);
    Scalar::ratio(1, 1)
        .checked_div(&Scalar::from_rational(num_rational::BigRational::from(
            num_bigint::BigInt::from(10).pow(d),
        )))
        .unwrap()
}

fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(Var::Q);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[i][k].clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det_poly(&minor);
        if j % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat {
        Mat::from_rows(vec![vec![s(a), s(b)], vec![s(c), s(d)]]).unwrap()
    }

    #[test]
    fn charpoly_2x2() {
        // [[5,2],[-1,2]]: q^2 - 7q + 12
        let m = m2(5, 2, -1, 2);
        let p = m.charpoly().unwrap();
        assert_eq!(p, Poly::new(Var::Q, vec![s(12), s(-7), s(1)]));
    }

    #[test]
    fn charpoly_3x3_matches_trace_det() {
        let m = Mat::from_rows(vec![
            vec![s(1), s(2), s(0)],
            vec![s(0), s(3), s(1)],
            vec![s(4), s(0), s(1)],
        ])
        .unwrap();
        let p = m.charpoly().unwrap();
        // trace = 5, det = 11 (computed by hand), so p(0) = -11, coeff q^2 = -5.
        assert_eq!(p.coeff(3), s(1));
        assert_eq!(p.coeff(2), s(-5));
        assert_eq!(p.eval(&Scalar::zero()), s(-11));
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        // [[1,2],[2,4]] has nullspace spanned by (-2, 1).
        let m = m2(1, 2, 2, 4);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // Check M v = 0.
        let mv = m.mul_vec(v).unwrap();
        assert!(mv.iter().all(|x| x.is_zero()));
        assert!(!v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_exact_system() {
        let m = m2(2, 1, 1, 3);
        let x = m.solve(&[s(5), s(10)]).unwrap();
        assert_eq!(x, vec![s(1), s(3)]);
    }

    #[test]
    fn eigenvector_via_nullspace() {
        // [[5,2],[-1,2]] eigenvalue 4 -> (A - 4I) v = 0.
        let m = m2(1, 2, -1, -2);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        let mv = m.mul_vec(&ns[0]).unwrap();
        assert!(mv.iter().all(|x| x.is_zero()));
    }
}
