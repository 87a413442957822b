use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A column vector with exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector(entries)
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![T::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Standard dot product Σᵢ uᵢ·vᵢ.
    pub fn dot(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "dot product",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut acc = T::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc = acc + a.clone() * b.clone();
        }
        Ok(acc)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "vector addition",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(Vector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.clone().neg())
    }
}

impl<T: Scalar> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> Neg for Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl<'a, T: Scalar> Add for &'a Vector<T> {
    type Output = Vector<T>;
    /// Panics on dimension mismatch; use `checked_add` at trust boundaries.
    fn add(self, other: &'a Vector<T>) -> Vector<T> {
        self.checked_add(other).expect("vector dimensions agree")
    }
}

impl<'a, T: Scalar> Sub for &'a Vector<T> {
    type Output = Vector<T>;
    fn sub(self, other: &'a Vector<T>) -> Vector<T> {
        self.checked_sub(other).expect("vector dimensions agree")
    }
}

impl<T: Scalar> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense matrix with exact entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, all of equal dimension.
    pub fn from_cols(cols: &[Vector<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.dim());
        for v in cols {
            if v.dim() != r {
                return Err(Error::DimensionMismatch {
                    context: "matrix columns",
                    expected: r,
                    got: v.dim(),
                });
            }
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for v in cols {
                data.push(v[i].clone());
            }
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn col(&self, j: usize) -> Vector<T> {
        Vector((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Outer product u·vᵀ (dim(u) × dim(v)).
    pub fn outer(u: &Vector<T>, v: &Vector<T>) -> Self {
        let mut out = Self::zeros(u.dim(), v.dim());
        for i in 0..u.dim() {
            for j in 0..v.dim() {
                *out.at_mut(i, j) = u[i].clone() * v[j].clone();
            }
        }
        out
    }

    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = cur + a.clone() * other.at(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                got: v.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = T::zero();
            for j in 0..self.cols {
                acc = acc + self.at(i, j).clone() * v[j].clone();
            }
            out.push(acc);
        }
        Ok(Vector(out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix subtraction",
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// Canonical textual form: entries in row-major order, semicolon-separated
    /// rows. Exact scalars print uniquely, so equal matrices produce equal keys.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            if i > 0 {
                s.push(';');
            }
            for j in 0..self.cols {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&self.at(i, j).to_string());
            }
        }
        s
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for r in 0..m.rows {
            if lead >= m.cols {
                break;
            }
            let mut i = r;
            while m.at(i, lead).is_zero() {
                i += 1;
                if i == m.rows {
                    i = r;
                    lead += 1;
                    if lead == m.cols {
                        return (m, pivots);
                    }
                }
            }
            for j in 0..m.cols {
                let tmp = m.at(r, j).clone();
                *m.at_mut(r, j) = m.at(i, j).clone();
                *m.at_mut(i, j) = tmp;
            }
            let pivot = m.at(r, lead).clone();
            for j in 0..m.cols {
                let val = m.at(r, j).clone() / pivot.clone();
                *m.at_mut(r, j) = val;
            }
            for i2 in 0..m.rows {
                if i2 != r && !m.at(i2, lead).is_zero() {
                    let factor = m.at(i2, lead).clone();
                    for j in 0..m.cols {
                        let val = m.at(i2, j).clone() - factor.clone() * m.at(r, j).clone();
                        *m.at_mut(i2, j) = val;
                    }
                }
            }
            pivots.push(lead);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve A·x = b exactly. Returns the unique solution, an error if the
    /// system is inconsistent, or (for underdetermined consistent systems)
    /// the solution with free variables set to zero.
    pub fn solve(&self, b: &Vector<T>) -> Result<Vector<T>> {
        if self.rows != b.dim() {
            return Err(Error::DimensionMismatch {
                context: "linear solve",
                expected: self.rows,
                got: b.dim(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::NotInvertible {
                context: "inconsistent linear system",
            });
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.at(row, self.cols).clone();
        }
        Ok(Vector(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible {
                context: "non-square matrix",
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = T::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::NotInvertible {
                context: "singular matrix",
            });
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Ok(out)
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A linear functional on the ambient space, stored as its coefficient
/// vector: f(v) = Σᵢ cᵢ·vᵢ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinFunc<T> {
    coeffs: Vector<T>,
}

impl<T: Scalar> LinFunc<T> {
    pub fn new(coeffs: Vector<T>) -> Self {
        LinFunc { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        LinFunc {
            coeffs: Vector::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coeffs(&self) -> &Vector<T> {
        &self.coeffs
    }

    pub fn eval(&self, v: &Vector<T>) -> Result<T> {
        self.coeffs.dot(v)
    }
}

impl<T: Field> LinFunc<T> {
    /// The unique functional taking value `values[i]` on `basis[i]`.
    ///
    /// The basis vectors must be linearly independent and span the ambient
    /// space (square, invertible matrix of columns).
    pub fn from_values_on_basis(basis: &[Vector<T>], values: &[T]) -> Result<Self> {
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch {
                context: "functional interpolation",
                expected: basis.len(),
                got: values.len(),
            });
        }
        let b = Matrix::from_cols(basis)?;
        if b.rows() != b.cols() {
            return Err(Error::BadBasis(format!(
                "{} vectors given for a {}-dimensional space",
                b.cols(),
                b.rows()
            )));
        }
        if b.rank() != b.rows() {
            return Err(Error::BadBasis(
                "basis vectors are linearly dependent".into(),
            ));
        }
        // f(basis_j) = values_j reads Bᵀ·c = values for the coefficient vector c.
        let bt = b.transpose();
        let c = bt.solve(&Vector::new(values.to_vec()))?;
        Ok(LinFunc { coeffs: c })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rv(entries: &[i64]) -> Vector<BigRational> {
        Vector::new(entries.iter().map(|&n| r(n)).collect())
    }

    #[test]
    fn vector_arithmetic_is_exact() {
        let u = rv(&[1, 2, 3]);
        let v = rv(&[4, -5, 6]);
        assert_eq!(&u + &v, rv(&[5, -3, 9]));
        assert_eq!(&u - &v, rv(&[-3, 7, -3]));
        assert_eq!(u.dot(&v).unwrap(), r(12));
        assert!(Vector::<BigRational>::zero(3).is_zero());
        assert!(!u.is_zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let u = rv(&[1, 2]);
        let v = rv(&[1, 2, 3]);
        assert!(matches!(
            u.dot(&v),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(u.checked_add(&v).is_err());
    }

    #[test]
    fn matrix_product_and_identity() {
        let a = Matrix::from_rows(vec![
            vec![r(1), r(2)],
            vec![r(3), r(4)],
        ])
        .unwrap();
        let i = Matrix::identity(2);
        assert_eq!(a.mul_mat(&i).unwrap(), a);
        assert_eq!(i.mul_mat(&a).unwrap(), a);
        let b = Matrix::from_rows(vec![
            vec![r(0), r(1)],
            vec![r(1), r(0)],
        ])
        .unwrap();
        let ab = a.mul_mat(&b).unwrap();
        assert_eq!(ab, Matrix::from_rows(vec![
            vec![r(2), r(1)],
            vec![r(4), r(3)],
        ]).unwrap());
    }

    #[test]
    fn inverse_round_trips() {
        let a = Matrix::from_rows(vec![
            vec![r(2), r(1), r(0)],
            vec![r(1), r(3), r(1)],
            vec![r(0), r(1), r(2)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul_mat(&inv).unwrap().is_identity());
        assert!(inv.mul_mat(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = Matrix::from_rows(vec![
            vec![r(1), r(2)],
            vec![r(2), r(4)],
        ])
        .unwrap();
        assert!(matches!(a.inverse(), Err(Error::NotInvertible { .. })));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn solve_finds_exact_solutions() {
        let a = Matrix::from_rows(vec![
            vec![r(1), r(1)],
            vec![r(1), r(-1)],
        ])
        .unwrap();
        let x = a.solve(&rv(&[3, 1])).unwrap();
        assert_eq!(x, rv(&[2, 1]));
        // Inconsistent system.
        let s = Matrix::from_rows(vec![
            vec![r(1), r(1)],
            vec![r(1), r(1)],
        ])
        .unwrap();
        assert!(s.solve(&rv(&[0, 1])).is_err());
    }

    #[test]
    fn solve_yields_fractions_when_needed() {
        let a = Matrix::from_rows(vec![
            vec![r(2), r(0)],
            vec![r(0), r(3)],
        ])
        .unwrap();
        let x = a.solve(&rv(&[1, 1])).unwrap();
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(x[1], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn functional_interpolation_on_a_basis() {
        // Basis {e1+e2, e1-e2}; functional with values 3 and 1 is
        // f(v) = 2v1 + v2.
        let basis = vec![rv(&[1, 1]), rv(&[1, -1])];
        let f = LinFunc::from_values_on_basis(&basis, &[r(3), r(1)]).unwrap();
        assert_eq!(f.coeffs(), &rv(&[2, 1]));
        assert_eq!(f.eval(&rv(&[1, 0])).unwrap(), r(2));
        // Dependent set is rejected.
        let dep = vec![rv(&[1, 1]), rv(&[2, 2])];
        assert!(LinFunc::from_values_on_basis(&dep, &[r(1), r(2)]).is_err());
    }

    #[test]
    fn outer_product_builds_reflection_shape() {
        let alpha = rv(&[1, -1]);
        let k = rv(&[1, -1]);
        let m = Matrix::outer(&alpha, &k);
        let refl = Matrix::identity(2).checked_sub(&m).unwrap();
        // v ↦ v − k(v)·α swaps coordinates for α = e1−e2, k = (1,−1).
        assert_eq!(refl.mul_vec(&rv(&[5, 7])).unwrap(), rv(&[7, 5]));
    }

    #[test]
    fn canonical_key_distinguishes_matrices() {
        let a = Matrix::from_rows(vec![vec![r(1), r(0)], vec![r(0), r(1)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![r(1), r(0)], vec![r(0), r(-1)]]).unwrap();
        assert_ne!(a.canonical_key(), b.canonical_key());
        assert_eq!(
            a.canonical_key(),
            Matrix::<BigRational>::identity(2).canonical_key()
        );
    }
}
