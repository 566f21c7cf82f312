//! Exhaustive ground truth for small fields: evaluate a polynomial on every
//! element, check bijectivity, invert the table, compare pointwise.

use crate::dickson::Matrix;
use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec};
use crate::linpoly::LinPoly;

/// Largest n for which exhaustive tables are built.
pub const MAX_TABLE_N: usize = 20;

/// `images[x] = f(x)`, elements indexed by their bit vector as an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermTable {
    n: usize,
    images: Vec<u32>,
}

impl PermTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &y in &self.images {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        true
    }

    /// Table of `self ∘ other`.
    pub fn after(&self, other: &PermTable) -> PermTable {
        let images = other.images.iter().map(|&y| self.images[y as usize]).collect();
        PermTable { n: self.n, images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_TABLE_N {
        Err(Error::TableTooLarge { n, max: MAX_TABLE_N })
    } else {
        Ok(())
    }
}

/// Evaluates `l` at every element of the field.
pub fn table_of(l: &LinPoly) -> Result<PermTable> {
    let f = l.field();
    check_size(f.n())?;
    let images = (0..1u64 << f.n())
        .map(|v| {
            let x = f.element(v).expect("in range");
            l.eval_raw(&x).low_u64() as u32
        })
        .collect();
    Ok(PermTable { n: f.n(), images })
}

pub fn invert_table(t: &PermTable) -> Result<PermTable> {
    let mut images = vec![u32::MAX; t.images.len()];
    for (x, &y) in t.images.iter().enumerate() {
        let slot = &mut images[y as usize];
        if *slot != u32::MAX {
            return Err(Error::NotBijective);
        }
        *slot = x as u32;
    }
    Ok(PermTable { n: t.n, images })
}

/// Whether `l(m(x)) = x` for every x.
pub fn verify_pointwise(l: &LinPoly, m: &LinPoly) -> Result<bool> {
    if l.field() != m.field() {
        return Err(Error::FieldMismatch);
    }
    let f = l.field();
    check_size(f.n())?;
    Ok((0..1u64 << f.n()).all(|v| {
        let x = f.element(v).expect("in range");
        l.eval_raw(&m.eval_raw(&x)) == x
    }))
}

/// Recovers the linearized polynomial agreeing with `t` on the basis
/// `1, t, ..., t^(n-1)` by solving the Moore system
/// `sum_i a_i (t^j)^(2^i) = T(t^j)`.
pub fn linpoly_from_table(field: &FieldSpec, t: &PermTable) -> Result<LinPoly> {
    let n = field.n();
    if t.n != n {
        return Err(Error::Shape(format!("table over GF(2^{}) used in GF(2^{n})", t.n)));
    }
    let mut data = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n);
    for j in 0..n {
        let beta = field.element(1 << j)?;
        let mut s = beta;
        for _ in 0..n {
            data.push(s);
            s = field.square_raw(&s);
        }
        rhs.push(field.element(t.images[1 << j] as u64)?);
    }
    let moore = Matrix::new(field, n, data)?;
    let coeffs: Vec<Felt> = moore.solve(&rhs)?.ok_or_else(|| Error::Shape("singular Moore matrix".into()))?;
    LinPoly::new(field, coeffs)
}

/// Inverse by tabulating `l`, inverting the permutation and interpolating.
pub fn bruteforce_inverse(l: &LinPoly) -> Result<LinPoly> {
    let t = table_of(l)?;
    let inv = invert_table(&t).map_err(|_| Error::NotPermutation)?;
    linpoly_from_table(l.field(), &inv)
}
