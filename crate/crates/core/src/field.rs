//! Exact arithmetic in GF(2^n) over a polynomial basis.
//!
//! An element is a bit vector: bit `i` is the coefficient of `t^i`. Every
//! [`Felt`] carries a fingerprint of the [`FieldSpec`] that produced it, and
//! the checked operations on [`FieldSpec`] refuse to mix elements of
//! different fields.

use std::fmt;

use crate::error::{Error, Result};

/// Number of machine words backing one element.
pub const WORDS: usize = 5;
/// Largest degree representable with [`WORDS`] words (the modulus needs `n + 1` bits).
pub const HARD_MAX_N: usize = 64 * WORDS - 1;
/// Degree cap applied unless [`MAX_N_ENV`] says otherwise.
pub const DEFAULT_MAX_N: usize = 257;
/// Environment variable overriding the degree cap.
pub const MAX_N_ENV: &str = "LINPERM_MAX_N";

type Words = [u64; WORDS];

/// Current degree cap: `LINPERM_MAX_N` if set and parseable, else 257,
/// never above [`HARD_MAX_N`].
pub fn max_degree() -> usize {
    std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(DEFAULT_MAX_N).min(HARD_MAX_N)
}

/// A field element of GF(2^n).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Felt {
    words: Words,
    tag: u64,
}

impl Felt {
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.words[0] == 1 && self.words[1..].iter().all(|&w| w == 0)
    }

    /// Whether the element lies in the prime field {0, 1}.
    pub fn is_binary(&self) -> bool {
        self.words[0] <= 1 && self.words[1..].iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The low 64 coefficient bits.
    pub fn low_u64(&self) -> u64 {
        self.words[0]
    }

    pub fn bit(&self, i: usize) -> bool {
        i < 64 * WORDS && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Lowercase hex with a `0x` prefix, constant coefficient in the lowest bit.
    pub fn to_hex(&self) -> String {
        words_to_hex(&self.words)
    }
}

impl fmt::Debug for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Degree and irreducible modulus defining GF(2^n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    n: usize,
    modulus: Words,
    tag: u64,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.n, self.modulus_hex())
    }
}

/// Builds GF(2^n). With no modulus, picks the irreducible polynomial of
/// degree `n` whose bit vector is the smallest integer.
pub fn make_field(n: usize, modulus: Option<&[u64]>) -> Result<FieldSpec> {
    match modulus {
        Some(m) => FieldSpec::with_modulus(n, m),
        None => FieldSpec::new(n),
    }
}

impl FieldSpec {
    /// GF(2^n) with the integer-least irreducible modulus.
    pub fn new(n: usize) -> Result<Self> {
        check_degree(n)?;
        let mut candidate = [0u64; WORDS];
        set_bit(&mut candidate, n);
        candidate[0] |= 1;
        loop {
            if is_irreducible(&candidate, n) {
                return Ok(Self::from_parts(n, candidate));
            }
            // Even candidates are divisible by t; step over them.
            add_two(&mut candidate);
            debug_assert!(degree(&candidate) == Some(n));
        }
    }

    /// GF(2^n) with an explicit modulus given as little-endian words.
    pub fn with_modulus(n: usize, modulus: &[u64]) -> Result<Self> {
        check_degree(n)?;
        let m = words_from_slice(modulus).ok_or(Error::NotIrreducible(n))?;
        if degree(&m) != Some(n) || !is_irreducible(&m, n) {
            return Err(Error::NotIrreducible(n));
        }
        Ok(Self::from_parts(n, m))
    }

    /// Same as [`FieldSpec::with_modulus`], modulus as a hex string.
    pub fn with_modulus_hex(n: usize, modulus: &str) -> Result<Self> {
        let words = parse_hex_words(modulus)?;
        Self::with_modulus(n, &words)
    }

    fn from_parts(n: usize, modulus: Words) -> Self {
        // FNV-1a over (n, modulus); equal specs share a tag.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for w in std::iter::once(n as u64).chain(modulus.iter().copied()) {
            for b in w.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        Self { n, modulus, tag: h }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus_words(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_hex(&self) -> String {
        words_to_hex(&self.modulus)
    }

    pub fn zero(&self) -> Felt {
        Felt { words: [0; WORDS], tag: self.tag }
    }

    pub fn one(&self) -> Felt {
        let mut words = [0; WORDS];
        words[0] = 1;
        Felt { words, tag: self.tag }
    }

    /// Element whose bit vector is `v`.
    pub fn element(&self, v: u64) -> Result<Felt> {
        self.element_from_words(&[v])
    }

    pub fn element_from_words(&self, words: &[u64]) -> Result<Felt> {
        let w = words_from_slice(words).ok_or(Error::ElementOutOfRange(self.n))?;
        if degree(&w).is_some_and(|d| d >= self.n) {
            return Err(Error::ElementOutOfRange(self.n));
        }
        Ok(Felt { words: w, tag: self.tag })
    }

    pub fn parse_element(&self, s: &str) -> Result<Felt> {
        self.element_from_words(&parse_hex_words(s)?)
    }

    /// Whether `x` was produced by a field equal to this one.
    pub fn contains(&self, x: &Felt) -> bool {
        x.tag == self.tag
    }

    pub fn check(&self, x: &Felt) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, x: &Felt, y: &Felt) -> Result<Felt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_raw(x, y))
    }

    pub fn mul(&self, x: &Felt, y: &Felt) -> Result<Felt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_raw(x, y))
    }

    pub fn inv(&self, x: &Felt) -> Result<Felt> {
        self.check(x)?;
        self.inv_raw(x)
    }

    /// `x^(2^k)`, with `k` reduced mod n.
    pub fn frob(&self, x: &Felt, k: usize) -> Result<Felt> {
        self.check(x)?;
        Ok(self.frob_raw(x, k))
    }

    /// Absolute trace `sum x^(2^i)`; always 0 or 1.
    pub fn trace(&self, x: &Felt) -> Result<Felt> {
        self.check(x)?;
        Ok(self.trace_raw(x))
    }

    /// Absolute norm `prod x^(2^i)`; always 0 or 1.
    pub fn norm(&self, x: &Felt) -> Result<Felt> {
        self.check(x)?;
        let mut acc = self.one();
        let mut s = *x;
        for _ in 0..self.n {
            acc = self.mul_raw(&acc, &s);
            s = self.square_raw(&s);
        }
        Ok(acc)
    }

    pub(crate) fn add_raw(&self, x: &Felt, y: &Felt) -> Felt {
        let mut words = x.words;
        for (w, v) in words.iter_mut().zip(y.words.iter()) {
            *w ^= v;
        }
        Felt { words, tag: self.tag }
    }

    pub(crate) fn mul_raw(&self, x: &Felt, y: &Felt) -> Felt {
        Felt { words: mul_mod(&x.words, &y.words, &self.modulus, self.n), tag: self.tag }
    }

    pub(crate) fn square_raw(&self, x: &Felt) -> Felt {
        self.mul_raw(x, x)
    }

    pub(crate) fn frob_raw(&self, x: &Felt, k: usize) -> Felt {
        let mut s = *x;
        for _ in 0..k % self.n {
            s = self.square_raw(&s);
        }
        s
    }

    pub(crate) fn trace_raw(&self, x: &Felt) -> Felt {
        let mut acc = self.zero();
        let mut s = *x;
        for _ in 0..self.n {
            acc = self.add_raw(&acc, &s);
            s = self.square_raw(&s);
        }
        acc
    }

    // x^(2^n - 2) = prod_{i=1}^{n-1} x^(2^i)
    pub(crate) fn inv_raw(&self, x: &Felt) -> Result<Felt> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut acc = self.one();
        let mut s = *x;
        for _ in 1..self.n {
            s = self.square_raw(&s);
            acc = self.mul_raw(&acc, &s);
        }
        Ok(acc)
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let max = max_degree();
    if n > max {
        return Err(Error::DegreeTooLarge { n, max });
    }
    Ok(())
}

/// Parses lowercase or uppercase hex, with or without a `0x` prefix, into
/// little-endian words.
pub fn parse_hex_words(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    if digits.is_empty() {
        return Err(Error::InvalidHex(s.to_string()));
    }
    let mut words = Vec::new();
    let bytes = digits.as_bytes();
    let mut end = bytes.len();
    while end > 0 {
        let start = end.saturating_sub(16);
        let chunk = std::str::from_utf8(&bytes[start..end]).map_err(|_| Error::InvalidHex(s.to_string()))?;
        let w = u64::from_str_radix(chunk, 16).map_err(|_| Error::InvalidHex(s.to_string()))?;
        words.push(w);
        end = start;
    }
    Ok(words)
}

fn words_to_hex(words: &[u64]) -> String {
    let top = match words.iter().rposition(|&w| w != 0) {
        Some(t) => t,
        None => return "0x0".to_string(),
    };
    let mut s = format!("0x{:x}", words[top]);
    for w in words[..top].iter().rev() {
        s.push_str(&format!("{:016x}", w));
    }
    s
}

fn words_from_slice(src: &[u64]) -> Option<Words> {
    let mut w = [0u64; WORDS];
    for (i, &v) in src.iter().enumerate() {
        if i < WORDS {
            w[i] = v;
        } else if v != 0 {
            return None;
        }
    }
    Some(w)
}

fn set_bit(w: &mut [u64], i: usize) {
    w[i / 64] |= 1 << (i % 64);
}

fn get_bit(w: &[u64], i: usize) -> bool {
    (w[i / 64] >> (i % 64)) & 1 == 1
}

fn degree(w: &[u64]) -> Option<usize> {
    let top = w.iter().rposition(|&x| x != 0)?;
    Some(64 * top + 63 - w[top].leading_zeros() as usize)
}

fn add_two(w: &mut Words) {
    let (v, mut carry) = w[0].overflowing_add(2);
    w[0] = v;
    let mut i = 1;
    while carry && i < WORDS {
        let (v, c) = w[i].overflowing_add(1);
        w[i] = v;
        carry = c;
        i += 1;
    }
}

fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut acc = 0u128;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

/// Carry-less product of `a` and `b` reduced modulo `m` (degree `n`). Works
/// for any `m` of degree `n`, irreducible or not.
fn mul_mod(a: &Words, b: &Words, m: &Words, n: usize) -> Words {
    let mut out = [0u64; WORDS];
    if n < 64 {
        let mut p = clmul64(a[0], b[0]);
        let mm = m[0] as u128;
        while p >> n != 0 {
            let top = 127 - p.leading_zeros() as usize;
            p ^= mm << (top - n);
        }
        out[0] = p as u64;
        return out;
    }
    let nw = n / 64 + 1;
    let mut prod = [0u64; 2 * WORDS];
    for i in 0..nw {
        if a[i] == 0 {
            continue;
        }
        for j in 0..nw {
            if b[j] == 0 {
                continue;
            }
            let p = clmul64(a[i], b[j]);
            prod[i + j] ^= p as u64;
            prod[i + j + 1] ^= (p >> 64) as u64;
        }
    }
    let mw = (n + 1).div_ceil(64);
    for pos in (n..=2 * n).rev() {
        if !get_bit(&prod, pos) {
            continue;
        }
        let shift = pos - n;
        let (ws, bs) = (shift / 64, shift % 64);
        for k in 0..mw {
            let mk = m[k];
            if mk == 0 {
                continue;
            }
            prod[k + ws] ^= mk << bs;
            if bs > 0 && k + ws + 1 < 2 * WORDS {
                prod[k + ws + 1] ^= mk >> (64 - bs);
            }
        }
    }
    out.copy_from_slice(&prod[..WORDS]);
    out
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree n is irreducible iff `t^(2^n) = t mod f` and
/// `gcd(t^(2^(n/p)) - t, f) = 1` for every prime `p | n`.
fn is_irreducible(f: &Words, n: usize) -> bool {
    if degree(f) != Some(n) {
        return false;
    }
    let mut t = [0u64; WORDS];
    set_bit(&mut t, 1);
    let mut powers = Vec::with_capacity(n + 1);
    let mut h = t;
    powers.push(h);
    for _ in 0..n {
        h = mul_mod(&h, &h, f, n);
        powers.push(h);
    }
    if powers[n] != t {
        return false;
    }
    prime_factors(n).into_iter().all(|p| {
        let mut g = powers[n / p];
        g[0] ^= 2;
        gcd_is_one(&g, f)
    })
}

fn gcd_is_one(a: &Words, b: &Words) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while degree(&b).is_some() {
        poly_rem(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    degree(&a) == Some(0)
}

fn poly_rem(a: &mut [u64], b: &[u64]) {
    let db = match degree(b) {
        Some(d) => d,
        None => return,
    };
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        let shift = da - db;
        let (ws, bs) = (shift / 64, shift % 64);
        for k in 0..b.len() {
            if b[k] == 0 {
                continue;
            }
            if k + ws < a.len() {
                a[k + ws] ^= b[k] << bs;
            }
            if bs > 0 && k + ws + 1 < a.len() {
                a[k + ws + 1] ^= b[k] >> (64 - bs);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldSpec {
        FieldSpec::with_modulus(3, &[0b1011]).unwrap()
    }

    fn el(f: &FieldSpec, v: u64) -> Felt {
        f.element(v).unwrap()
    }

    // Oracle: polynomial of degree n over GF(2) is irreducible iff no
    // polynomial of degree 1..=n/2 divides it (plain long division on u64).
    fn brute_irreducible(f: u64) -> bool {
        let deg = 63 - f.leading_zeros() as u64;
        (2u64..(1 << (deg / 2 + 1))).all(|d| {
            let dd = 63 - d.leading_zeros() as u64;
            if dd == 0 || dd > deg / 2 {
                return true;
            }
            let mut r = f;
            while r != 0 && 63 - r.leading_zeros() as u64 >= dd {
                r ^= d << (63 - r.leading_zeros() as u64 - dd);
            }
            r != 0
        })
    }

    fn brute_least_irreducible(n: usize) -> u64 {
        ((1u64 << n)..(1u64 << (n + 1))).find(|&f| brute_irreducible(f)).unwrap()
    }

    #[test]
    fn default_modulus_matches_enumeration() {
        assert_eq!(FieldSpec::new(3).unwrap().modulus_words()[0], 0b1011);
        for n in 2..=16 {
            let f = FieldSpec::new(n).unwrap();
            assert_eq!(f.modulus_words()[0], brute_least_irreducible(n), "n = {n}");
        }
    }

    #[test]
    fn irreducibility_agrees_with_trial_division() {
        for n in 2..=10usize {
            for m in (1u64 << n)..(1u64 << (n + 1)) {
                let ok = FieldSpec::with_modulus(n, &[m]).is_ok();
                assert_eq!(ok, brute_irreducible(m), "modulus {m:#x}");
            }
        }
    }

    #[test]
    fn explicit_moduli() {
        assert!(FieldSpec::with_modulus(3, &[0b1011]).is_ok());
        assert_eq!(FieldSpec::with_modulus(3, &[0b1111]), Err(Error::NotIrreducible(3)));
        assert_eq!(FieldSpec::with_modulus(3, &[0b10011]), Err(Error::NotIrreducible(3)));
        assert!(FieldSpec::with_modulus_hex(4, "0x13").is_ok());
        assert_eq!(FieldSpec::with_modulus_hex(2, "0x6"), Err(Error::NotIrreducible(2)));
        assert_eq!(FieldSpec::new(1), Err(Error::DegreeTooSmall(1)));
        assert!(matches!(FieldSpec::new(HARD_MAX_N + 1), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn default_is_deterministic() {
        assert_eq!(FieldSpec::new(13).unwrap(), FieldSpec::new(13).unwrap());
        let f = FieldSpec::new(127).unwrap();
        assert_eq!(f, FieldSpec::new(127).unwrap());
    }

    #[test]
    fn small_field_examples() {
        let f = gf8();
        assert_eq!(f.mul(&el(&f, 2), &el(&f, 4)).unwrap(), el(&f, 3));
        assert_eq!(f.add(&el(&f, 5), &el(&f, 5)).unwrap(), f.zero());
        assert_eq!(f.inv(&el(&f, 2)).unwrap(), el(&f, 5));
        assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.frob(&el(&f, 2), 1).unwrap(), el(&f, 4));
        assert_eq!(f.frob(&el(&f, 3), 2).unwrap(), el(&f, 7));
        assert_eq!(f.trace(&el(&f, 1)).unwrap(), f.one());
        assert_eq!(f.trace(&el(&f, 2)).unwrap(), f.zero());
        assert_eq!(f.norm(&f.zero()).unwrap(), f.zero());
    }

    #[test]
    fn inverse_matches_search() {
        for n in [2usize, 3, 5, 8] {
            let f = FieldSpec::new(n).unwrap();
            for v in 1..(1u64 << n) {
                let x = el(&f, v);
                let found = (1..(1u64 << n)).find(|&w| f.mul(&x, &el(&f, w)).unwrap().is_one()).unwrap();
                assert_eq!(f.inv(&x).unwrap(), el(&f, found));
            }
        }
    }

    #[test]
    fn norm_and_trace_exhaustive() {
        for n in 2..=12usize {
            let f = FieldSpec::new(n).unwrap();
            let mut ones = 0;
            for v in 1..(1u64 << n) {
                let x = el(&f, v);
                assert!(f.norm(&x).unwrap().is_one());
                let t = f.trace(&x).unwrap();
                assert!(t.is_binary());
                assert_eq!(f.trace(&f.frob(&x, 1).unwrap()).unwrap(), t);
                ones += t.low_u64();
            }
            assert_eq!(ones, 1 << (n - 1));
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f3 = gf8();
        let f5 = FieldSpec::new(5).unwrap();
        let x = f3.one();
        let y = f5.one();
        assert_eq!(f3.add(&x, &y), Err(Error::FieldMismatch));
        assert_eq!(f5.mul(&x, &y), Err(Error::FieldMismatch));
        assert_eq!(f5.frob(&x, 1), Err(Error::FieldMismatch));
        // Equal specs interoperate.
        let g3 = FieldSpec::new(3).unwrap();
        assert!(g3.mul(&x, &x).is_ok());
    }

    #[test]
    fn element_range_and_hex() {
        let f = gf8();
        assert_eq!(f.element(8), Err(Error::ElementOutOfRange(3)));
        assert_eq!(f.parse_element("0x6").unwrap(), el(&f, 6));
        assert_eq!(el(&f, 6).to_hex(), "0x6");
        assert_eq!(f.zero().to_hex(), "0x0");
        assert!(f.parse_element("0xz").is_err());
        let big = FieldSpec::new(200).unwrap();
        let x = big.element_from_words(&[0xdead_beef, 0, 1, 0xff]).unwrap();
        assert_eq!(big.parse_element(&x.to_hex()).unwrap(), x);
        assert_eq!(x.to_hex(), "0xff0000000000000001000000000000000000000000deadbeef");
    }

    #[test]
    fn multiword_arithmetic_is_consistent() {
        for n in [64usize, 65, 127, 128, 131, 257] {
            let f = FieldSpec::new(n).unwrap();
            let hi = if n > 128 { 0x0fed_cba9_8765_4321 } else { 0 };
            let x = f.element_from_words(&[0x1234_5678_9abc_def1, hi]).unwrap();
            let x = f.mul(&x, &x).unwrap();
            let y = f.inv(&x).unwrap();
            assert!(f.mul(&x, &y).unwrap().is_one(), "n = {n}");
            assert_eq!(f.frob(&x, n).unwrap(), x);
            assert!(f.norm(&x).unwrap().is_one());
            assert!(f.trace(&x).unwrap().is_binary());
        }
    }
}
