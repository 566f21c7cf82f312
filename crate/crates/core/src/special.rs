//! The class `P(x) = x + x^2 + tr(x/a)` over GF(2^n), n odd, `tr(1/a) = 1`.
//!
//! Holds the conjugate-sum and conjugate-product symbols `c<I>` and `c[I]`,
//! the closed-form inverse in two equivalent shapes, the `a = 1` case, the
//! bidiagonal-plus-ones-row determinant, and closed formulas for the
//! column-0 cofactors of the Dickson matrix of `P~(x) = P(ax)`.
//!
//! Index lists such as `1, 3, ..., i-1, i+2, ..., n-1` are built from
//! step-2 progressions; a progression whose first term exceeds its last is
//! empty.

use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec, WORDS};
use crate::linpoly::LinPoly;

/// A subset of Z/nZ stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n: usize,
    mask: [u64; WORDS],
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IndexSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64 * WORDS, "index set universe too large");
        Self { n, mask: [0; WORDS] }
    }

    pub fn full(n: usize) -> Self {
        Self::from_indices(n, 0..n)
    }

    /// Members are reduced mod n; repeats collapse.
    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in idx {
            s.insert(i % n);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n);
        self.mask[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && (self.mask[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| self.contains(i))
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n);
        let mut mask = [0; WORDS];
        for (k, m) in mask.iter_mut().enumerate() {
            *m = op(self.mask[k], other.mask[k]);
        }
        Self { n: self.n, mask }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a ^ b)
    }

    /// `{i + k mod n : i in self}`.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_indices(self.n, self.iter().map(|i| i + k))
    }
}

/// `{first, first + 2, ..., last}` in Z/nZ, empty when `first > last`.
pub fn ap_set(n: usize, first: i64, last: i64) -> IndexSet {
    let mut s = IndexSet::empty(n);
    let mut i = first;
    while i <= last {
        s.insert(i.rem_euclid(n as i64) as usize);
        i += 2;
    }
    s
}

/// `c<I> = sum_{i in I} c^(2^i)`.
pub fn conj_sum(field: &FieldSpec, c: &Felt, set: &IndexSet) -> Result<Felt> {
    field.check(c)?;
    check_universe(field, set)?;
    Ok(conj_sum_raw(field, c, set))
}

/// `c[I] = prod_{i in I} c^(2^i)`.
pub fn conj_prod(field: &FieldSpec, c: &Felt, set: &IndexSet) -> Result<Felt> {
    field.check(c)?;
    check_universe(field, set)?;
    let mut acc = field.one();
    let mut s = *c;
    for i in 0..field.n() {
        if set.contains(i) {
            acc = field.mul_raw(&acc, &s);
        }
        s = field.square_raw(&s);
    }
    Ok(acc)
}

fn check_universe(field: &FieldSpec, set: &IndexSet) -> Result<()> {
    if set.n() == field.n() {
        Ok(())
    } else {
        Err(Error::Shape(format!("index set over Z/{}Z used in GF(2^{})", set.n(), field.n())))
    }
}

fn conj_sum_raw(field: &FieldSpec, c: &Felt, set: &IndexSet) -> Felt {
    let mut acc = field.zero();
    let mut s = *c;
    for i in 0..field.n() {
        if set.contains(i) {
            acc = field.add_raw(&acc, &s);
        }
        s = field.square_raw(&s);
    }
    acc
}

fn check_odd_degree(field: &FieldSpec) -> Result<()> {
    let n = field.n();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    Ok(())
}

/// A validated member of the class, with its merged coefficient vector
/// `(1 + u, 1 + u^2, u^4, ..., u^(2^(n-1)))`, `u = 1/a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPP {
    a: Felt,
    inv_a: Felt,
    poly: LinPoly,
}

/// Validates `a` and builds `P(x) = x + x^2 + tr(x/a)`.
pub fn build_special(field: &FieldSpec, a: &Felt) -> Result<SpecialPP> {
    check_odd_degree(field)?;
    field.check(a)?;
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let inv_a = field.inv_raw(a)?;
    if !field.trace_raw(&inv_a).is_one() {
        return Err(Error::PpConditionViolated);
    }
    let mut poly = LinPoly::trace_of_multiple(field, &inv_a)?;
    let mut coeffs = poly.coeffs().to_vec();
    coeffs[0] = field.add_raw(&coeffs[0], &field.one());
    coeffs[1] = field.add_raw(&coeffs[1], &field.one());
    poly = LinPoly::from_raw(field, coeffs);
    Ok(SpecialPP { a: *a, inv_a, poly })
}

/// Recognizes a merged coefficient vector of the class and returns its `a`.
pub fn recognize_special(l: &LinPoly) -> Result<SpecialPP> {
    let f = l.field();
    check_odd_degree(f).map_err(|_| Error::NotSpecialClass)?;
    let u = f.add_raw(&l.coeffs()[0], &f.one());
    if u.is_zero() {
        return Err(Error::NotSpecialClass);
    }
    let a = f.inv_raw(&u)?;
    match build_special(f, &a) {
        Ok(p) if p.poly == *l => Ok(p),
        _ => Err(Error::NotSpecialClass),
    }
}

impl SpecialPP {
    pub fn field(&self) -> &FieldSpec {
        self.poly.field()
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn a(&self) -> Felt {
        self.a
    }

    pub fn inv_a(&self) -> Felt {
        self.inv_a
    }

    pub fn poly(&self) -> &LinPoly {
        &self.poly
    }

    /// `P~(x) = P(ax) = ax + a^2 x^2 + tr(x)`, coefficients
    /// `(a + 1, a^2 + 1, 1, ..., 1)`.
    pub fn tilde_poly(&self) -> LinPoly {
        let f = self.field();
        let mut coeffs = vec![f.one(); self.n()];
        coeffs[0] = f.add_raw(&self.a, &f.one());
        coeffs[1] = f.add_raw(&f.square_raw(&self.a), &f.one());
        LinPoly::from_raw(f, coeffs)
    }

    fn u_sum(&self, set: &IndexSet) -> Felt {
        conj_sum_raw(self.field(), &self.inv_a, set)
    }

    fn ap(&self, first: i64, last: i64) -> IndexSet {
        ap_set(self.n(), first, last)
    }

    /// Coefficients `b_i` of `B_a`, before the `tr(x)` term is folded in.
    pub fn b_coefficients(&self) -> Vec<Felt> {
        let n = self.n() as i64;
        (0..n)
            .map(|i| {
                let set = if i == 0 {
                    self.ap(2, n - 1)
                } else if i % 2 == 1 {
                    self.ap(1, i).union(&self.ap(i + 1, n - 1))
                } else {
                    self.ap(1, i - 1).union(&self.ap(i + 2, n - 1))
                };
                self.u_sum(&set)
            })
            .collect()
    }

    /// Coefficients `c_i` of `C_a`, before the `tr(x/a)` term is folded in.
    pub fn c_coefficients(&self) -> Vec<Felt> {
        let f = self.field();
        let n = self.n() as i64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.u_sum(&self.ap(1, n - 2))
                } else if i % 2 == 1 {
                    let s = self.u_sum(&self.ap(1, i - 2).union(&self.ap(i + 1, n - 1)));
                    f.add_raw(&f.one(), &s)
                } else {
                    self.u_sum(&self.ap(0, i - 2).union(&self.ap(i + 1, n - 2)))
                }
            })
            .collect()
    }

    /// `P^{-1} = B_a(x) + tr(x)`, merged: coefficient `i` is `b_i + 1`.
    pub fn closed_inverse_b(&self) -> LinPoly {
        let f = self.field();
        let coeffs = self.b_coefficients().iter().map(|b| f.add_raw(b, &f.one())).collect();
        LinPoly::from_raw(f, coeffs)
    }

    /// `P^{-1} = C_a(x) + tr(x/a)`, merged: coefficient `i` is `c_i + u^(2^i)`.
    pub fn closed_inverse_c(&self) -> LinPoly {
        let f = self.field();
        let mut conj = self.inv_a;
        let coeffs = self
            .c_coefficients()
            .iter()
            .map(|c| {
                let v = f.add_raw(c, &conj);
                conj = f.square_raw(&conj);
                v
            })
            .collect();
        LinPoly::from_raw(f, coeffs)
    }

    /// `B_a(1) = sum b_i`, which vanishes for every valid `a`.
    pub fn b_at_one(&self) -> Felt {
        let f = self.field();
        self.b_coefficients().iter().fold(f.zero(), |acc, b| f.add_raw(&acc, b))
    }

    // (1/a) (1 + (1/a)<I>)
    fn ptilde_from(&self, set: &IndexSet) -> Felt {
        let f = self.field();
        f.mul_raw(&self.inv_a, &f.add_raw(&f.one(), &self.u_sum(set)))
    }

    /// Cofactor `p~_0 = (1/a)(1 + (1/a)<2, 4, ..., n-1>)`.
    pub fn ptilde_first(&self) -> Felt {
        let n = self.n() as i64;
        self.ptilde_from(&self.ap(2, n - 1))
    }

    /// Cofactor `p~_1 = (1/a)(1 + (1/a)<1, 2, 4, ..., n-1>)`.
    pub fn ptilde_second(&self) -> Felt {
        let n = self.n() as i64;
        self.ptilde_from(&self.ap(1, 1).union(&self.ap(2, n - 1)))
    }

    /// Cofactor `p~_i` for `2 <= i <= n-3`.
    pub fn ptilde_middle(&self, i: usize) -> Result<Felt> {
        let n = self.n();
        if i < 2 || i + 3 > n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let (n, i) = (n as i64, i as i64);
        let set = if i % 2 == 0 {
            self.ap(1, i - 1).union(&self.ap(i + 2, n - 1))
        } else {
            self.ap(1, i).union(&self.ap(i + 1, n - 1))
        };
        Ok(self.ptilde_from(&set))
    }

    /// Cofactor `p~_{n-2} = (1/a)(1 + (1/a)<1, 3, ..., n-2, n-1>)`.
    pub fn ptilde_penultimate(&self) -> Felt {
        let n = self.n() as i64;
        self.ptilde_from(&self.ap(1, n - 2).union(&self.ap(n - 1, n - 1)))
    }

    /// Cofactor `p~_{n-1} = (1/a)(1 + (1/a)<1, 3, ..., n-2>)`.
    pub fn ptilde_last(&self) -> Felt {
        let n = self.n() as i64;
        self.ptilde_from(&self.ap(1, n - 2))
    }

    /// Column-0 cofactor `i` of the Dickson matrix of `P~`, from the closed
    /// formulas.
    pub fn ptilde_cofactor(&self, i: usize) -> Result<Felt> {
        let n = self.n();
        match i {
            0 => Ok(self.ptilde_first()),
            1 => Ok(self.ptilde_second()),
            _ if i == n - 1 => Ok(self.ptilde_last()),
            _ if i == n - 2 => Ok(self.ptilde_penultimate()),
            _ if i < n => self.ptilde_middle(i),
            _ => Err(Error::IndexOutOfRange { index: i, len: n }),
        }
    }
}

/// Inverse of `P_1(x) = x + x^2 + tr(x)`: `sum_{i=0}^{(n-1)/2} x^(2^(2i))`
/// when n = 1 mod 4, `sum_{i=0}^{(n-3)/2} x^(2^(2i+1))` when n = 3 mod 4.
pub fn p1_inverse(field: &FieldSpec) -> Result<LinPoly> {
    check_odd_degree(field)?;
    let n = field.n();
    let exps: Vec<usize> = if n % 4 == 1 {
        (0..=(n - 1) / 2).map(|i| 2 * i).collect()
    } else {
        (0..=(n - 3) / 2).map(|i| 2 * i + 1).collect()
    };
    let mut mask = vec![false; n];
    for e in exps {
        mask[e] = true;
    }
    LinPoly::from_bits(field, &mask)
}

/// The same inverse written as `((n+1)/2) sum x^(2^(2i)) + ((n-1)/2) sum x^(2^(2i+1))`,
/// with the integer weights reduced mod 2.
pub fn p1_inverse_weighted_form(field: &FieldSpec) -> Result<LinPoly> {
    check_odd_degree(field)?;
    let n = field.n();
    let even_weight = n.div_ceil(2) % 2 == 1;
    let odd_weight = (n - 1) / 2 % 2 == 1;
    let mask: Vec<bool> =
        (0..n).map(|k| if k % 2 == 0 { even_weight && k < n } else { odd_weight && k <= n - 2 }).collect();
    LinPoly::from_bits(field, &mask)
}

/// The m x m matrix with `diag[k]` on the diagonal and `superdiag[k]` just
/// right of it in rows `0..m-1`, and a last row `(1, ..., 1, diag[m-1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidiagOnesRowMatrix {
    diag: Vec<Felt>,
    superdiag: Vec<Felt>,
}

impl BidiagOnesRowMatrix {
    pub fn new(field: &FieldSpec, diag: Vec<Felt>, superdiag: Vec<Felt>) -> Result<Self> {
        let m = diag.len();
        if m < 2 || superdiag.len() != m - 1 {
            return Err(Error::Shape(format!(
                "need m >= 2 diagonal and m - 1 superdiagonal entries, got {} and {}",
                m,
                superdiag.len()
            )));
        }
        for x in diag.iter().chain(&superdiag) {
            field.check(x)?;
        }
        Ok(Self { diag, superdiag })
    }

    pub fn m(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self, field: &FieldSpec) -> crate::dickson::Matrix {
        let m = self.m();
        let mut rows = vec![vec![field.zero(); m]; m];
        for k in 0..m - 1 {
            rows[k][k] = self.diag[k];
            rows[k][k + 1] = self.superdiag[k];
        }
        rows[m - 1] = vec![field.one(); m];
        rows[m - 1][m - 1] = self.diag[m - 1];
        crate::dickson::Matrix::from_rows(field, rows).expect("square by construction")
    }

    /// Closed-form determinant from expanding along the last row; in
    /// characteristic 2 every sign is +:
    /// `prod b + sum_{i=1}^{m-2} (a_1..a_i)(b_{i+1}..b_{m-1}) + prod a`.
    pub fn structured_det(&self, field: &FieldSpec) -> Felt {
        let f = field;
        let m = self.m();
        let prod = |xs: &[Felt]| xs.iter().fold(f.one(), |acc, x| f.mul_raw(&acc, x));
        let mut det = f.add_raw(&prod(&self.superdiag), &prod(&self.diag));
        for i in 1..=m.saturating_sub(2) {
            let term = f.mul_raw(&prod(&self.diag[..i]), &prod(&self.superdiag[i..]));
            det = f.add_raw(&det, &term);
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickson::{dickson_of, generic_inverse};

    fn gf8() -> FieldSpec {
        FieldSpec::new(3).unwrap()
    }

    fn el(f: &FieldSpec, v: u64) -> Felt {
        f.element(v).unwrap()
    }

    fn poly(f: &FieldSpec, vals: &[u64]) -> LinPoly {
        LinPoly::new(f, vals.iter().map(|&v| el(f, v)).collect()).unwrap()
    }

    #[test]
    fn ap_set_examples() {
        assert_eq!(ap_set(7, 2, 6).iter().collect::<Vec<_>>(), vec![2, 4, 6]);
        assert!(ap_set(7, 4, 2).is_empty());
        assert_eq!(ap_set(7, 1, 1).iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(ap_set(7, 1, -1), IndexSet::empty(7));
    }

    #[test]
    fn symbol_examples() {
        let f = FieldSpec::new(5).unwrap();
        for v in 0..32 {
            let c = el(&f, v);
            assert_eq!(conj_sum(&f, &c, &IndexSet::full(5)).unwrap(), f.trace(&c).unwrap());
            assert!(conj_sum(&f, &c, &IndexSet::empty(5)).unwrap().is_zero());
            assert!(conj_prod(&f, &c, &IndexSet::empty(5)).unwrap().is_one());
            for i in 0..5 {
                let s = IndexSet::from_indices(5, [i]);
                assert_eq!(conj_prod(&f, &c, &s).unwrap(), conj_sum(&f, &c, &s).unwrap());
            }
            if v != 0 {
                assert!(conj_prod(&f, &c, &IndexSet::full(5)).unwrap().is_one());
            }
        }
        assert!(conj_sum(&f, &f.one(), &IndexSet::full(3)).is_err());
    }

    #[test]
    fn build_special_examples() {
        let f = gf8();
        assert_eq!(build_special(&f, &f.one()).unwrap().poly(), &poly(&f, &[0, 0, 1]));
        assert_eq!(f.inv(&el(&f, 6)).unwrap(), el(&f, 3));
        assert!(build_special(&f, &el(&f, 6)).is_ok());
        // tr(1/0x2) = tr(0x5) = 1, so 0x2 is admissible; 1/0x3 = 0x6 has trace 0.
        assert_eq!(f.trace(&f.inv(&el(&f, 2)).unwrap()).unwrap(), f.one());
        assert!(build_special(&f, &el(&f, 2)).is_ok());
        assert_eq!(build_special(&f, &el(&f, 3)), Err(Error::PpConditionViolated));
        let valid: Vec<u64> = (1..8).filter(|&v| build_special(&f, &el(&f, v)).is_ok()).collect();
        assert_eq!(valid, vec![1, 2, 4, 6]);
        assert_eq!(build_special(&f, &f.zero()), Err(Error::ZeroParameter));
        let g = FieldSpec::new(4).unwrap();
        assert_eq!(build_special(&g, &g.one()), Err(Error::EvenDegree(4)));
    }

    // Oracle: invert the permutation table of P over all of GF(8) and compare
    // pointwise with the candidate polynomial.
    fn brute_inverse_matches(p: &LinPoly, candidate: &LinPoly) -> bool {
        let f = p.field();
        let size = 1u64 << f.n();
        let mut inverse = vec![u64::MAX; size as usize];
        for v in 0..size {
            let y = p.eval(&el(f, v)).unwrap().low_u64();
            inverse[y as usize] = v;
        }
        (0..size).all(|y| candidate.eval(&el(f, y)).unwrap().low_u64() == inverse[y as usize])
    }

    #[test]
    fn closed_inverse_examples() {
        let f = gf8();
        let p1 = build_special(&f, &f.one()).unwrap();
        assert_eq!(p1.b_coefficients(), vec![el(&f, 1), el(&f, 0), el(&f, 1)]);
        assert_eq!(p1.closed_inverse_b(), poly(&f, &[0, 1, 0]));
        assert_eq!(p1.closed_inverse_c(), poly(&f, &[0, 1, 0]));

        let p = build_special(&f, &el(&f, 6)).unwrap();
        let inv = p.closed_inverse_b();
        assert!(brute_inverse_matches(p.poly(), &inv));
        // Frozen from the table oracle above.
        assert_eq!(inv, poly(&f, &[6, 3, 4]));
        assert_eq!(p.closed_inverse_c(), inv);
        assert!(p.b_at_one().is_zero());
    }

    #[test]
    fn ptilde_examples() {
        let f = gf8();
        let p = build_special(&f, &el(&f, 6)).unwrap();
        // (1/a)(1 + (1/a)<2>) = 0x3 * (1 + 0x3^4) = 0x3 * (1 + 0x6) = 0x3 * 0x7
        let u = el(&f, 3);
        let expect = f.mul(&u, &f.add(&f.one(), &f.frob(&u, 2).unwrap()).unwrap()).unwrap();
        assert_eq!(expect, f.one());
        assert_eq!(p.ptilde_cofactor(0).unwrap(), expect);
        assert_eq!(p.ptilde_second(), p.ptilde_penultimate());
        let d = dickson_of(&p.tilde_poly());
        for i in 0..3 {
            assert_eq!(p.ptilde_cofactor(i).unwrap(), d.cofactor_col0(i).unwrap());
        }
        assert!(matches!(p.ptilde_cofactor(3), Err(Error::IndexOutOfRange { .. })));
        assert!(p.ptilde_middle(1).is_err());
    }

    #[test]
    fn tilde_row_and_scaling() {
        let f = FieldSpec::new(7).unwrap();
        let a = (1..128).map(|v| el(&f, v)).find(|a| build_special(&f, a).is_ok()).unwrap();
        let p = build_special(&f, &a).unwrap();
        let t = p.tilde_poly();
        let row0 = dickson_of(&t).row(0).to_vec();
        assert_eq!(row0[0], f.add(&a, &f.one()).unwrap());
        assert_eq!(row0[1], f.add(&f.frob(&a, 1).unwrap(), &f.one()).unwrap());
        assert!(row0[2..].iter().all(Felt::is_one));
        // P~(x) = P(ax)
        for v in 0..128 {
            let x = el(&f, v);
            assert_eq!(t.eval(&x).unwrap(), p.poly().eval(&f.mul(&a, &x).unwrap()).unwrap());
        }
        let tilde_inv = generic_inverse(&t).unwrap();
        assert_eq!(tilde_inv.scale(&a).unwrap(), p.closed_inverse_b());
    }

    #[test]
    fn recognize_round_trip() {
        let f = FieldSpec::new(5).unwrap();
        for v in 1..32 {
            let a = el(&f, v);
            if let Ok(p) = build_special(&f, &a) {
                assert_eq!(recognize_special(p.poly()).unwrap().a(), a);
            }
        }
        assert_eq!(recognize_special(&LinPoly::identity(&f)), Err(Error::NotSpecialClass));
        assert_eq!(recognize_special(&poly(&f, &[3, 1, 1, 1, 1])), Err(Error::NotSpecialClass));
    }

    #[test]
    fn p1_examples() {
        let f3 = gf8();
        let f5 = FieldSpec::new(5).unwrap();
        let f7 = FieldSpec::new(7).unwrap();
        assert_eq!(p1_inverse(&f3).unwrap(), poly(&f3, &[0, 1, 0]));
        assert_eq!(p1_inverse(&f5).unwrap(), poly(&f5, &[1, 0, 1, 0, 1]));
        assert_eq!(p1_inverse(&f7).unwrap(), poly(&f7, &[0, 1, 0, 1, 0, 1, 0]));
        assert_eq!(p1_inverse_weighted_form(&f3).unwrap(), poly(&f3, &[0, 1, 0]));
        assert_eq!(p1_inverse_weighted_form(&f5).unwrap(), poly(&f5, &[1, 0, 1, 0, 1]));
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!(p1_inverse(&f4), Err(Error::EvenDegree(4)));
        assert_eq!(p1_inverse_weighted_form(&f4), Err(Error::EvenDegree(4)));
    }

    #[test]
    fn structured_det_small() {
        let f = FieldSpec::new(5).unwrap();
        let (a1, a2, b1) = (el(&f, 3), el(&f, 7), el(&f, 19));
        let m = BidiagOnesRowMatrix::new(&f, vec![a1, a2], vec![b1]).unwrap();
        let expect = f.add(&f.mul(&a1, &a2).unwrap(), &b1).unwrap();
        assert_eq!(m.structured_det(&f), expect);
        assert_eq!(m.to_dense(&f).det(), expect);
        let ones = BidiagOnesRowMatrix::new(&f, vec![f.one(); 3], vec![f.one(); 2]).unwrap();
        assert!(ones.structured_det(&f).is_one());
        assert!(BidiagOnesRowMatrix::new(&f, vec![f.one()], vec![]).is_err());
        assert!(BidiagOnesRowMatrix::new(&f, vec![f.one(); 3], vec![f.one()]).is_err());
    }
}
