//! Linearized polynomials `L(x) = sum a_i x^(2^i)` over GF(2^n), taken
//! modulo `x^(2^n) - x`, and their conventional associates in
//! GF(2)[x]/(x^n + 1).

use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec};

/// A linearized polynomial with exactly `n` coefficients; `coeffs[i]`
/// multiplies `x^(2^i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinPoly {
    field: FieldSpec,
    coeffs: Vec<Felt>,
}

impl std::fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl LinPoly {
    /// Builds a polynomial from at most `n` coefficients, padding with zeros.
    pub fn new(field: &FieldSpec, coeffs: Vec<Felt>) -> Result<Self> {
        let n = field.n();
        if coeffs.len() > n {
            return Err(Error::LengthMismatch { expected: n, got: coeffs.len() });
        }
        for c in &coeffs {
            field.check(c)?;
        }
        let mut coeffs = coeffs;
        coeffs.resize(n, field.zero());
        Ok(Self { field: field.clone(), coeffs })
    }

    /// Parses hex coefficients in index order.
    pub fn from_hex<S: AsRef<str>>(field: &FieldSpec, coeffs: &[S]) -> Result<Self> {
        let parsed = coeffs.iter().map(|s| field.parse_element(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(field, parsed)
    }

    /// Builds a polynomial with coefficients in {0, 1} from a bit pattern
    /// (bit `i` of `mask` is `a_i`).
    pub fn from_bits(field: &FieldSpec, mask: &[bool]) -> Result<Self> {
        let coeffs = mask.iter().map(|&b| if b { field.one() } else { field.zero() }).collect();
        Self::new(field, coeffs)
    }

    pub(crate) fn from_raw(field: &FieldSpec, coeffs: Vec<Felt>) -> Self {
        debug_assert_eq!(coeffs.len(), field.n());
        Self { field: field.clone(), coeffs }
    }

    pub fn identity(field: &FieldSpec) -> Self {
        let mut coeffs = vec![field.zero(); field.n()];
        coeffs[0] = field.one();
        Self::from_raw(field, coeffs)
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::from_raw(field, vec![field.zero(); field.n()])
    }

    /// The trace map `tr(c x) = sum (c x)^(2^i)`, merged into coefficients
    /// `c^(2^i)`.
    pub fn trace_of_multiple(field: &FieldSpec, c: &Felt) -> Result<Self> {
        field.check(c)?;
        let mut coeffs = Vec::with_capacity(field.n());
        let mut s = *c;
        for _ in 0..field.n() {
            coeffs.push(s);
            s = field.square_raw(&s);
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<Felt> {
        self.coeffs.get(i).copied().ok_or(Error::IndexOutOfRange { index: i, len: self.n() })
    }

    pub fn to_hex(&self) -> Vec<String> {
        self.coeffs.iter().map(Felt::to_hex).collect()
    }

    fn same_field(&self, other: &LinPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// `sum a_i x^(2^i)`.
    pub fn eval(&self, x: &Felt) -> Result<Felt> {
        self.field.check(x)?;
        Ok(self.eval_raw(x))
    }

    pub(crate) fn eval_raw(&self, x: &Felt) -> Felt {
        let f = &self.field;
        let mut acc = f.zero();
        let mut s = *x;
        for a in &self.coeffs {
            if !a.is_zero() {
                acc = f.add_raw(&acc, &f.mul_raw(a, &s));
            }
            s = f.square_raw(&s);
        }
        acc
    }

    /// `self ∘ other`, reduced mod `x^(2^n) - x`:
    /// `n_k = sum_{i+j = k mod n} a_i m_j^(2^i)`.
    pub fn compose(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.n();
        let mut out = vec![f.zero(); n];
        // twisted[j] = m_j^(2^i) for the current i
        let mut twisted = other.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                for (j, m) in twisted.iter().enumerate() {
                    let k = (i + j) % n;
                    out[k] = f.add_raw(&out[k], &f.mul_raw(a, m));
                }
            }
            for m in twisted.iter_mut() {
                *m = f.square_raw(m);
            }
        }
        Ok(LinPoly::from_raw(f, out))
    }

    pub fn add_poly(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_field(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add_raw(a, b)).collect();
        Ok(LinPoly::from_raw(f, coeffs))
    }

    /// `(c x) ∘ L`: every coefficient multiplied by `c`.
    pub fn scale(&self, c: &Felt) -> Result<LinPoly> {
        self.field.check(c)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|a| f.mul_raw(c, a)).collect();
        Ok(LinPoly::from_raw(f, coeffs))
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Felt::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Felt::is_zero)
    }

    /// Maps `sum a_i x^(2^i)` to `sum a_i x^i`; all `a_i` must be 0 or 1.
    pub fn conventional_associate(&self) -> Result<Bin2Poly> {
        let mut bits = Vec::with_capacity(self.n());
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_binary() {
                return Err(Error::NotBinary(i));
            }
            bits.push(a.is_one());
        }
        Ok(Bin2Poly { bits })
    }
}

/// An element of GF(2)[x]/(x^n + 1); `bits[i]` is the coefficient of `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bin2Poly {
    bits: Vec<bool>,
}

impl Bin2Poly {
    pub fn new(n: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() > n {
            return Err(Error::LengthMismatch { expected: n, got: bits.len() });
        }
        let mut bits = bits.to_vec();
        bits.resize(n, false);
        Ok(Self { bits })
    }

    /// Polynomial with ones at the given exponents (reduced mod n).
    pub fn from_exponents(n: usize, exps: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![false; n];
        for e in exps {
            bits[e % n] ^= true;
        }
        Self { bits }
    }

    pub fn one(n: usize) -> Self {
        Self::from_exponents(n, [0])
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_one(&self) -> bool {
        self.bits[0] && self.bits[1..].iter().all(|b| !b)
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    /// Back to the linearized polynomial `sum b_i x^(2^i)` over `field`.
    pub fn to_linearized(&self, field: &FieldSpec) -> Result<LinPoly> {
        LinPoly::from_bits(field, &self.bits)
    }
}

/// Product in GF(2)[x]/(x^n + 1), i.e. cyclic convolution mod 2.
pub fn associate_product(p: &Bin2Poly, q: &Bin2Poly) -> Result<Bin2Poly> {
    let n = p.n();
    if q.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: q.n() });
    }
    let mut bits = vec![false; n];
    for i in p.exponents() {
        for j in q.exponents() {
            bits[(i + j) % n] ^= true;
        }
    }
    Ok(Bin2Poly { bits })
}
