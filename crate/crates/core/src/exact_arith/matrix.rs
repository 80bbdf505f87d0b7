use std::fmt;

use super::{checked_add, checked_mul, Rational};
use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width so that an empty
    /// row list still has a shape.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::BadInput(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::BadInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = checked_add(
                        acc,
                        checked_mul(self[(i, k)], rhs[(k, j)], "matrix product")?,
                        "matrix product",
                    )?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = checked_add(
                self[(dst, j)],
                checked_mul(k, self[(src, j)], "row operation")?,
                "row operation",
            )?;
            self[(dst, j)] = v;
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = checked_add(
                self[(i, dst)],
                checked_mul(k, self[(i, src)], "column operation")?,
                "column operation",
            )?;
            self[(i, dst)] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].checked_neg().ok_or(Error::Overflow("row negation"))?;
        }
        Ok(())
    }

    /// A basis of the lattice spanned by the rows, in row echelon form.
    ///
    /// The result has as many rows as the rank of `self`; its rows span the
    /// same subgroup of `Z^cols`.
    pub fn row_lattice_basis(&self) -> Result<IntMatrix> {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            loop {
                // smallest nonzero entry in this column at or below pivot_row
                let best = (pivot_row..m.rows)
                    .filter(|&i| m[(i, col)] != 0)
                    .min_by_key(|&i| m[(i, col)].unsigned_abs());
                let Some(best) = best else { break };
                m.swap_rows(pivot_row, best);
                let p = m[(pivot_row, col)];
                let mut done = true;
                for i in pivot_row + 1..m.rows {
                    let q = m[(i, col)].div_euclid(p);
                    m.add_row_multiple(i, pivot_row, -q)?;
                    if m[(i, col)] != 0 {
                        done = false;
                    }
                }
                if done {
                    if m[(pivot_row, col)] < 0 {
                        m.negate_row(pivot_row)?;
                    }
                    pivot_row += 1;
                    break;
                }
            }
        }
        let rows: Vec<Vec<i64>> = (0..pivot_row).map(|i| m.row(i).to_vec()).collect();
        IntMatrix::from_rows(m.cols, &rows)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Smith normal form together with the unimodular transforms:
/// `left * input * right == diag(diagonal)`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Classic reduction: move the smallest nonzero entry to the pivot,
    /// clear its row and column, and restore divisibility by adding columns.
    pub fn compute(input: &IntMatrix) -> Result<SmithForm> {
        let (r, c) = (input.rows(), input.cols());
        let mut d = input.clone();
        let mut left = IntMatrix::identity(r);
        let mut right = IntMatrix::identity(c);
        let n = r.min(c);

        'pivots: for t in 0..n {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let v = d[(i, j)];
                        if v != 0 && best.is_none_or(|(bi, bj)| v.unsigned_abs() < d[(bi, bj)].unsigned_abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { break 'pivots };
                d.swap_rows(t, pi);
                left.swap_rows(t, pi);
                d.swap_cols(t, pj);
                right.swap_cols(t, pj);

                let p = d[(t, t)];
                let mut clean = true;
                for i in t + 1..r {
                    let q = d[(i, t)] / p;
                    d.add_row_multiple(i, t, -q)?;
                    left.add_row_multiple(i, t, -q)?;
                    clean &= d[(i, t)] == 0;
                }
                for j in t + 1..c {
                    let q = d[(t, j)] / p;
                    d.add_col_multiple(j, t, -q)?;
                    right.add_col_multiple(j, t, -q)?;
                    clean &= d[(t, j)] == 0;
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| d[(i, j)] % p != 0);
                if let Some((_, j)) = offender {
                    d.add_col_multiple(t, j, 1)?;
                    right.add_col_multiple(t, j, 1)?;
                    continue;
                }
                if p < 0 {
                    d.negate_row(t)?;
                    left.negate_row(t)?;
                }
                break;
            }
        }
        let diagonal = (0..n).map(|i| d[(i, i)]).collect();
        Ok(SmithForm { diagonal, left, right })
    }
}

/// Diagonal of the Smith normal form; length `min(rows, cols)`, nonnegative,
/// each entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Vec<i64>> {
    SmithForm::compute(m).map(|s| s.diagonal)
}

/// Solves `x * basis = target` over the rationals for a square nonsingular
/// `basis`.
pub fn solve_left(basis: &IntMatrix, target: &[i64]) -> Result<Vec<Rational>> {
    let n = basis.rows();
    if basis.cols() != n || target.len() != n {
        return Err(Error::BadInput("solve_left needs a square system".into()));
    }
    // Augmented system basis^T | target.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| Rational::from_integer(basis[(j, i)])).collect();
            row.push(Rational::from_integer(target[i]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::BadInput("singular basis".into()))?;
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v = v.checked_div(&p)?;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col];
            for j in col..=n {
                let delta = f.checked_mul(&a[col][j])?;
                a[i][j] = a[i][j].checked_sub(&delta)?;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n]).collect())
}
