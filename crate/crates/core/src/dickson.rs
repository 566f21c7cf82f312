//! Dickson matrices of linearized polynomials, determinants and cofactors
//! over GF(2^n), and the cofactor route to compositional inverses.
//!
//! For `L(x) = sum a_i x^(2^i)` the Dickson matrix has entry
//! `a_{(j-i) mod n}^(2^i)` at `(i, j)`. `L` permutes GF(2^n) iff this matrix
//! is nonsingular, and the inverse's coefficients are the column-0
//! cofactors divided by the determinant.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec};
use crate::linpoly::LinPoly;

/// Dense square matrix over one field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    size: usize,
    data: Vec<Felt>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Matrix {
    pub fn new(field: &FieldSpec, size: usize, data: Vec<Felt>) -> Result<Self> {
        if data.len() != size * size {
            return Err(Error::Shape(format!("{} entries for a {size}x{size} matrix", data.len())));
        }
        for x in &data {
            field.check(x)?;
        }
        Ok(Self { field: field.clone(), size, data })
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Felt>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Self::new(field, size, rows.into_iter().flatten().collect())
    }

    pub fn identity(field: &FieldSpec, size: usize) -> Self {
        let mut data = vec![field.zero(); size * size];
        for i in 0..size {
            data[i * size + i] = field.one();
        }
        Self { field: field.clone(), size, data }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Felt]> {
        self.data.chunks(self.size.max(1)).take(self.size)
    }

    /// Row-major hex dump, one inner array per row.
    pub fn to_hex_rows(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(Felt::to_hex).collect()).collect()
    }

    /// Copy with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Result<Matrix> {
        if r >= self.size || c >= self.size {
            return Err(Error::IndexOutOfRange { index: r.max(c), len: self.size });
        }
        let size = self.size - 1;
        let mut data = Vec::with_capacity(size * size);
        for i in (0..self.size).filter(|&i| i != r) {
            for j in (0..self.size).filter(|&j| j != c) {
                data.push(self[(i, j)]);
            }
        }
        Ok(Matrix { field: self.field.clone(), size, data })
    }

    /// Determinant by Gaussian elimination with first-nonzero pivoting.
    /// Row swaps carry no sign in characteristic 2.
    pub fn det(&self) -> Felt {
        let f = &self.field;
        let n = self.size;
        let mut m = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return f.zero();
            };
            if p != col {
                for j in col..n {
                    m.swap(p * n + j, col * n + j);
                }
            }
            let pivot = m[col * n + col];
            det = f.mul_raw(&det, &pivot);
            let pivot_inv = f.inv_raw(&pivot).expect("pivot is nonzero");
            for r in col + 1..n {
                let lead = m[r * n + col];
                if lead.is_zero() {
                    continue;
                }
                let factor = f.mul_raw(&lead, &pivot_inv);
                for j in col..n {
                    let t = f.mul_raw(&factor, &m[col * n + j]);
                    m[r * n + j] = f.add_raw(&m[r * n + j], &t);
                }
            }
        }
        det
    }

    /// The `(i, 0)` cofactor: determinant with row `i` and column 0 deleted.
    pub fn cofactor_col0(&self, i: usize) -> Result<Felt> {
        Ok(self.minor(i, 0)?.det())
    }

    /// Solves `self * x = rhs`; `None` if singular.
    pub fn solve(&self, rhs: &[Felt]) -> Result<Option<Vec<Felt>>> {
        let f = &self.field;
        let n = self.size;
        if rhs.len() != n {
            return Err(Error::Shape(format!("rhs of length {} for size {n}", rhs.len())));
        }
        for x in rhs {
            f.check(x)?;
        }
        let mut m = self.data.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return Ok(None);
            };
            if p != col {
                for j in 0..n {
                    m.swap(p * n + j, col * n + j);
                }
                b.swap(p, col);
            }
            let pivot_inv = f.inv_raw(&m[col * n + col]).expect("pivot is nonzero");
            for j in 0..n {
                m[col * n + j] = f.mul_raw(&m[col * n + j], &pivot_inv);
            }
            b[col] = f.mul_raw(&b[col], &pivot_inv);
            for r in (0..n).filter(|&r| r != col) {
                let lead = m[r * n + col];
                if lead.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul_raw(&lead, &m[col * n + j]);
                    m[r * n + j] = f.add_raw(&m[r * n + j], &t);
                }
                b[r] = f.add_raw(&b[r], &f.mul_raw(&lead, &b[col]));
            }
        }
        Ok(Some(b))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Felt;
    fn index(&self, (i, j): (usize, usize)) -> &Felt {
        assert!(i < self.size && j < self.size);
        &self.data[i * self.size + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Felt {
        assert!(i < self.size && j < self.size);
        &mut self.data[i * self.size + j]
    }
}

/// The Dickson matrix associated with a linearized polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicksonMatrix(Matrix);

impl DicksonMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn det(&self) -> Felt {
        self.0.det()
    }

    pub fn cofactor_col0(&self, i: usize) -> Result<Felt> {
        self.0.cofactor_col0(i)
    }

    /// Recovers the source polynomial from row 0.
    pub fn source(&self) -> LinPoly {
        LinPoly::from_raw(self.0.field(), self.0.row(0).to_vec())
    }
}

impl std::ops::Deref for DicksonMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// `D_L` with entry `a_{(j-i) mod n}^(2^i)` at `(i, j)`.
pub fn dickson_of(l: &LinPoly) -> DicksonMatrix {
    let f = l.field();
    let n = l.n();
    let mut data = vec![f.zero(); n * n];
    let mut conj = l.coeffs().to_vec();
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = conj[(j + n - i) % n];
        }
        for c in conj.iter_mut() {
            *c = f.square_raw(c);
        }
    }
    DicksonMatrix(Matrix { field: f.clone(), size: n, data })
}

/// Whether `m` has the Dickson shape: each row is the previous one shifted
/// right by one place with Frobenius applied.
pub fn is_dickson(m: &Matrix) -> bool {
    let f = m.field();
    let n = m.size();
    (1..n).all(|i| (0..n).all(|j| m[(i, j)] == f.square_raw(&m[(i - 1, (j + n - 1) % n)])))
        && (n == 0 || (0..n).all(|j| m[(0, j)] == f.square_raw(&m[(n - 1, (j + n - 1) % n)])))
}

/// Cofactor expansion of `det D` down column 0:
/// `sum_i a_{(n-i) mod n}^(2^i) * cofactor(i, 0)`.
pub fn det_by_expansion(d: &DicksonMatrix) -> Result<Felt> {
    let f = d.field();
    let mut acc = f.zero();
    for i in 0..d.size() {
        acc = f.add_raw(&acc, &f.mul_raw(&d[(i, 0)], &d.cofactor_col0(i)?));
    }
    Ok(acc)
}

pub fn is_permutation(l: &LinPoly) -> bool {
    !dickson_of(l).det().is_zero()
}

/// Compositional inverse via `L^{-1} = (1/det) sum cofactor(i, 0) x^(2^i)`.
pub fn generic_inverse(l: &LinPoly) -> Result<LinPoly> {
    let d = dickson_of(l);
    let det = d.det();
    if det.is_zero() {
        return Err(Error::NotPermutation);
    }
    let f = l.field();
    let scale = f.inv_raw(&det)?;
    let coeffs = (0..l.n()).map(|i| d.cofactor_col0(i).map(|c| f.mul_raw(&scale, &c))).collect::<Result<Vec<_>>>()?;
    Ok(LinPoly::from_raw(f, coeffs))
}
