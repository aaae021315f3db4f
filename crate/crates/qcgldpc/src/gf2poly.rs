//! Binary polynomials in GF(2)[x] and the quotient ring GF(2)[x]/(x^N+1).
//!
//! Coefficients are packed into `u64` limbs, bit `k` holding the coefficient
//! of `x^k`. Limb vectors are kept trimmed so equality is structural.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryPoly {
    words: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        BinaryPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1u64 << (k % 64);
        BinaryPoly { words }
    }

    /// Builds a polynomial from exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// Polynomial whose coefficient vector is `bits` (index = exponent).
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_exponents(
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b & 1 == 1)
                .map(|(k, _)| k),
        )
    }

    fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        BinaryPoly { words }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    pub fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero coefficients in increasing order.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros() as usize;
                out.push(i * 64 + t);
                w &= w - 1;
            }
        }
        out
    }

    /// `Some(k)` when the polynomial is the single monomial x^k.
    pub fn as_monomial(&self) -> Option<usize> {
        if self.weight() == 1 {
            self.degree()
        } else {
            None
        }
    }

    /// XOR `other * x^shift` into `self`.
    fn xor_shifted(&mut self, other: &BinaryPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let need = ws + other.words.len() + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if bs == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[ws + i] ^= w;
            }
        } else {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[ws + i] ^= w << bs;
                self.words[ws + i + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn shl(&self, k: usize) -> BinaryPoly {
        let mut out = BinaryPoly::zero();
        out.xor_shifted(self, k);
        out
    }

    /// Carry-less product in GF(2)[x].
    pub fn mul(&self, other: &BinaryPoly) -> BinaryPoly {
        if self.is_zero() || other.is_zero() {
            return BinaryPoly::zero();
        }
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = BinaryPoly {
            words: vec![0; self.words.len() + other.words.len() + 1],
        };
        let n = out.words.len();
        for k in sparse.exponents() {
            let ws = k / 64;
            let bs = k % 64;
            if bs == 0 {
                for (i, &w) in dense.words.iter().enumerate() {
                    out.words[ws + i] ^= w;
                }
            } else {
                for (i, &w) in dense.words.iter().enumerate() {
                    out.words[ws + i] ^= w << bs;
                    if ws + i + 1 < n {
                        out.words[ws + i + 1] ^= w >> (64 - bs);
                    }
                }
            }
        }
        out.trim();
        out
    }

    /// Long division: returns `(q, r)` with `self = q*b + r`, `deg r < deg b`.
    pub fn divmod(&self, b: &BinaryPoly) -> Result<(BinaryPoly, BinaryPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = BinaryPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            q.flip(dr - db);
            r.xor_shifted(b, dr - db);
        }
        Ok((q, r))
    }

    pub fn rem(&self, b: &BinaryPoly) -> Result<BinaryPoly> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact division; errors if `b` does not divide `self`.
    pub fn div_exact(&self, b: &BinaryPoly) -> Result<BinaryPoly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(format!("{b} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &BinaryPoly) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &BinaryPoly) -> BinaryPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// Extended gcd: `(g, u, v)` with `u*self + v*other = g`.
    pub fn xgcd(&self, other: &BinaryPoly) -> (BinaryPoly, BinaryPoly, BinaryPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (BinaryPoly::one(), BinaryPoly::zero());
        let (mut t0, mut t1) = (BinaryPoly::zero(), BinaryPoly::one());
        if r0.is_zero() && r1.is_zero() {
            return (BinaryPoly::zero(), BinaryPoly::zero(), BinaryPoly::zero());
        }
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s = &s0 + &q.mul(&s1);
            let t = &t0 + &q.mul(&t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Lowercase hex of the coefficient vector, most significant digit first.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".to_string();
        }
        let mut s = String::from("0x");
        let top = self.words.len() - 1;
        s.push_str(&format!("{:x}", self.words[top]));
        for w in self.words[..top].iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<BinaryPoly> {
        let digits = s
            .trim()
            .strip_prefix("0x")
            .or_else(|| s.trim().strip_prefix("0X"))
            .ok_or_else(|| Error::Parse(format!("hex polynomial must start with 0x: {s:?}")))?;
        let mut p = BinaryPoly::zero();
        for (i, c) in digits.chars().rev().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if (d >> b) & 1 == 1 {
                    p.flip(4 * i + b);
                }
            }
        }
        Ok(p)
    }

    /// Parses "1+x^27+x^33", "x", "0" or hex "0x...". Negative exponents
    /// are only meaningful in a ring and need `modulus`.
    pub fn parse_in(s: &str, modulus: Option<RingModulus>) -> Result<BinaryPoly> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if t.starts_with("0x") || t.starts_with("0X") {
            let p = BinaryPoly::from_hex(&t)?;
            return Ok(match modulus {
                Some(m) => m.reduce(&p),
                None => p,
            });
        }
        let mut p = BinaryPoly::zero();
        for term in t.split('+') {
            let e: i64 = match term {
                "0" => continue,
                "1" => 0,
                "x" => 1,
                _ => {
                    let rest = term
                        .strip_prefix("x^")
                        .ok_or_else(|| Error::Parse(format!("bad term {term:?} in {s:?}")))?;
                    let rest = rest.trim_start_matches('{').trim_end_matches('}');
                    rest.parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                }
            };
            let e = match modulus {
                Some(m) => m.normalize_exponent(e),
                None if e < 0 => {
                    return Err(Error::Parse(format!(
                        "negative exponent in {s:?} needs a ring modulus"
                    )))
                }
                None => e as usize,
            };
            p.flip(e);
        }
        Ok(match modulus {
            Some(m) => m.reduce(&p),
            None => p,
        })
    }
}

impl FromStr for BinaryPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BinaryPoly::parse_in(s, None)
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({self})")
    }
}

impl Add for &BinaryPoly {
    type Output = BinaryPoly;
    fn add(self, rhs: &BinaryPoly) -> BinaryPoly {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        BinaryPoly::from_words(words)
    }
}

impl Add for BinaryPoly {
    type Output = BinaryPoly;
    fn add(self, rhs: BinaryPoly) -> BinaryPoly {
        &self + &rhs
    }
}

impl AddAssign<&BinaryPoly> for BinaryPoly {
    fn add_assign(&mut self, rhs: &BinaryPoly) {
        self.xor_shifted(rhs, 0);
    }
}

impl Mul for &BinaryPoly {
    type Output = BinaryPoly;
    fn mul(self, rhs: &BinaryPoly) -> BinaryPoly {
        BinaryPoly::mul(self, rhs)
    }
}

impl Serialize for BinaryPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let exps = Vec::<usize>::deserialize(d)?;
        Ok(BinaryPoly::from_exponents(exps))
    }
}

/// The ring GF(2)[x]/(x^N+1), i.e. N×N binary circulants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingModulus {
    n: usize,
}

impl RingModulus {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "circulant size N must be at least 1".into(),
            ));
        }
        Ok(RingModulus { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// x^N + 1.
    pub fn poly(&self) -> BinaryPoly {
        BinaryPoly::from_exponents([0, self.n])
    }

    pub fn normalize_exponent(&self, e: i64) -> usize {
        e.rem_euclid(self.n as i64) as usize
    }

    /// x^(e mod N), accepting negative exponents.
    pub fn monomial(&self, e: i64) -> BinaryPoly {
        BinaryPoly::monomial(self.normalize_exponent(e))
    }

    pub fn reduce(&self, a: &BinaryPoly) -> BinaryPoly {
        match a.degree() {
            Some(d) if d >= self.n => {
                BinaryPoly::from_exponents(a.exponents().into_iter().map(|k| k % self.n))
            }
            _ => a.clone(),
        }
    }

    pub fn add(&self, a: &BinaryPoly, b: &BinaryPoly) -> BinaryPoly {
        self.reduce(&(a + b))
    }

    pub fn mul(&self, a: &BinaryPoly, b: &BinaryPoly) -> BinaryPoly {
        self.reduce(&a.mul(b))
    }

    pub fn gcd_with_modulus(&self, a: &BinaryPoly) -> BinaryPoly {
        a.gcd(&self.poly())
    }

    pub fn is_unit(&self, a: &BinaryPoly) -> bool {
        self.gcd_with_modulus(a).is_one()
    }

    pub fn inverse(&self, a: &BinaryPoly) -> Result<BinaryPoly> {
        let a = self.reduce(a);
        let (g, u, _) = a.xgcd(&self.poly());
        if !g.is_one() {
            return Err(Error::NotInvertible {
                poly: a.to_string(),
                modulus: self.n,
            });
        }
        Ok(self.reduce(&u))
    }

    /// The circulant transpose: x^k -> x^((N-k) mod N).
    pub fn transpose(&self, a: &BinaryPoly) -> BinaryPoly {
        let n = self.n;
        BinaryPoly::from_exponents(
            self.reduce(a)
                .exponents()
                .into_iter()
                .map(|k| (n - k % n) % n),
        )
    }

    pub fn parse(&self, s: &str) -> Result<BinaryPoly> {
        BinaryPoly::parse_in(s, Some(*self))
    }
}

/// Sum or product in GF(2)[x].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
}

pub fn ring_op(a: &BinaryPoly, b: &BinaryPoly, op: RingOp) -> BinaryPoly {
    match op {
        RingOp::Add => a + b,
        RingOp::Mul => a.mul(b),
    }
}

pub fn inverse_mod(a: &BinaryPoly, m: RingModulus) -> Result<BinaryPoly> {
    m.inverse(a)
}

pub fn transpose_poly(a: &BinaryPoly, m: RingModulus) -> BinaryPoly {
    m.transpose(a)
}
