use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::{int, Rational};
use crate::error::{domain, internal, Result};

/// Dense row-major matrix over the rationals.
///
/// Linear maps act on row vectors from the right (`v -> v * M`), matching
/// the right action of Hecke operators on Manin symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of an exact linear solve `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Rational>),
    /// Consistent but some coordinates are free; the particular solution sets
    /// every free coordinate to zero.
    Underdetermined {
        particular: Vec<Rational>,
        free_columns: Vec<usize>,
    },
    Inconsistent,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Like `from_rows` but with an explicit column count so that empty
    /// row lists keep their shape.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = &self[(i, j)];
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Reduced row echelon form and pivot columns. The pivot in each column
    /// is the first nonzero entry at or below the current row.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` (column vectors), in RREF-derived order.
    pub fn right_kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y A = 0}` (row vectors).
    pub fn left_kernel(&self) -> Vec<Vec<Rational>> {
        self.transpose().right_kernel()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Monic characteristic polynomial `det(x I - A)` via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(domain!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows,
                self.cols
            ));
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let piv = h[(m, m - 1)].clone();
            for j in m + 1..n {
                if h[(j, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(j, m - 1)] / &piv;
                for c in 0..n {
                    let d = &u * &h[(m, c)];
                    h[(j, c)] -= d;
                }
                for r in 0..n {
                    let d = &u * &h[(r, j)];
                    h[(r, m)] += d;
                }
            }
        }
        // p_{m+1} = (x - h_mm) p_m - sum_{i<m} (prod_{k=i+1..m} h_{k,k-1}) h_{i,m} p_i
        let mut ps: Vec<UniPoly> = vec![UniPoly::one()];
        for m in 0..n {
            let lin = UniPoly::new(vec![-h[(m, m)].clone(), Rational::one()]);
            let mut next = &lin * &ps[m];
            let mut t = Rational::one();
            for i in (0..m).rev() {
                t *= &h[(i + 1, i)];
                if t.is_zero() {
                    break;
                }
                let c = &t * &h[(i, m)];
                if !c.is_zero() {
                    next = &next - &ps[i].scale(&c);
                }
            }
            ps.push(next);
        }
        Ok(ps.pop().unwrap())
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly) -> QMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    pub fn stack(blocks: &[QMatrix]) -> QMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rows() {
            let s: Vec<String> = r.iter().map(super::rational::format_rational).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// Solve `A x = b` exactly with deterministic pivoting.
pub fn solve_exact(a: &QMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    if a.nrows() != b.len() {
        return Err(domain!(
            "right-hand side has {} entries for a matrix with {} rows",
            b.len(),
            a.nrows()
        ));
    }
    let n = a.ncols();
    let mut aug = QMatrix::zeros(a.nrows(), n + 1);
    for i in 0..a.nrows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(SolveOutcome::Inconsistent);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        Ok(SolveOutcome::Unique(x))
    } else {
        Ok(SolveOutcome::Underdetermined { particular: x, free_columns: free })
    }
}

/// Subspace of Q^n stored as an RREF basis, so coordinates of a member are
/// read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(rows: Vec<Vec<Rational>>, ambient: usize) -> Self {
        let m = QMatrix::from_rows_with_cols(rows, ambient);
        let (r, pivots) = m.rref();
        let basis = QMatrix::from_rows_with_cols(
            (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
            ambient,
        );
        Self { ambient, basis, pivots }
    }

    pub fn full(n: usize) -> Self {
        Self { ambient: n, basis: QMatrix::identity(n), pivots: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.basis.apply_row(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    /// Vector in the ambient space from subspace coordinates.
    pub fn lift(&self, c: &[Rational]) -> Vec<Rational> {
        self.basis.apply_row(c)
    }

    /// Matrix of `m` restricted to this (invariant) subspace.
    pub fn restrict(&self, m: &QMatrix) -> Result<QMatrix> {
        let rows = self
            .basis
            .rows()
            .map(|b| {
                self.coords(&m.apply_row(b))
                    .ok_or_else(|| internal!("subspace is not invariant under the operator"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows_with_cols(rows, self.dim()))
    }

    /// Subspace spanned by the given vectors in this subspace's coordinates.
    pub fn sub_from_coords(&self, coords: &[Vec<Rational>]) -> Subspace {
        Subspace::from_rows(coords.iter().map(|c| self.lift(c)).collect(), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn solve_small_systems() {
        let id = QMatrix::identity(2);
        assert_eq!(
            solve_exact(&id, &[int(1), int(2)]).unwrap(),
            SolveOutcome::Unique(vec![int(1), int(2)])
        );
        let two = QMatrix::from_i64(&[&[2]]);
        assert_eq!(
            solve_exact(&two, &[int(1)]).unwrap(),
            SolveOutcome::Unique(vec![frac(1, 2)])
        );
    }

    #[test]
    fn eisenstein_plus_cusp_form_system_at_eleven() {
        // rows n = 1, 2, 3: c * sigma(n) + lambda * a_n(f) = coefficient of G^2
        let a = QMatrix::from_i64(&[&[1, 1], &[3, -2], &[4, -1]]);
        let b = [int(1), int(1), int(2)];
        assert_eq!(
            solve_exact(&a, &b).unwrap(),
            SolveOutcome::Unique(vec![frac(3, 5), frac(2, 5)])
        );
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = QMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_exact(&a, &[int(1), int(3)]).unwrap(), SolveOutcome::Inconsistent);
        match solve_exact(&a, &[int(1), int(2)]).unwrap() {
            SolveOutcome::Underdetermined { free_columns, .. } => assert_eq!(free_columns, vec![1]),
            o => panic!("unexpected {o:?}"),
        }
        assert!(solve_exact(&a, &[int(1)]).is_err());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(
            QMatrix::identity(2).charpoly().unwrap(),
            UniPoly::from_i64(&[1, -2, 1])
        );
        assert_eq!(
            QMatrix::from_i64(&[&[0, 1], &[1, 0]]).charpoly().unwrap(),
            UniPoly::from_i64(&[-1, 0, 1])
        );
        assert!(QMatrix::zeros(2, 3).charpoly().is_err());
    }

    #[test]
    fn subspace_restriction() {
        let m = QMatrix::from_i64(&[&[2, 0, 0], &[0, 3, 1], &[0, 0, 3]]);
        let s = Subspace::from_rows(vec![vec![int(0), int(0), int(1)]], 3);
        // e3 * M = (0,0,3)
        assert_eq!(s.restrict(&m).unwrap(), QMatrix::from_i64(&[&[3]]));
        let bad = Subspace::from_rows(vec![vec![int(0), int(1), int(0)]], 3);
        assert!(bad.restrict(&m).is_err());
    }

    #[test]
    fn kernels() {
        let a = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.right_kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let col = QMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect());
            assert!(a.mul(&col).is_zero());
        }
        assert_eq!(a.left_kernel(), vec![vec![int(-2), int(1)]]);
    }
}
