//! Finite fields `F_p` and `F_{p^e}` with `p^e <= 125`.
//!
//! Elements are encoded as integers `0..q`. For extension fields the integer
//! `sum c_k p^k` stands for `sum c_k a^k` where `a` is a root of the modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 125;

#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first; `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// floor(2^16 / p), for the reduction in `axpy`.
    barrett: u32,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, low degree first, trailing zeros trimmed.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is small, brute force is fine
    (1..p).find(|&b| a * b % p == 1).expect("zero has no inverse")
}

fn digits(mut n: u32, p: u32, e: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(e as usize);
    for _ in 0..e {
        v.push(n % p);
        n /= p;
    }
    v
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Checks irreducibility of a monic polynomial by trial division with every
/// monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = trim(modulus.to_vec());
    if m.len() < 2 {
        return false;
    }
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(&m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Self::extension(p, &[0, 1])
    }

    /// `F_p[a]/(modulus)`; `modulus` is monic, low degree first.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let modulus = trim(modulus.iter().map(|c| c % p).collect());
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = p.checked_pow(e).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("order {p}^{e} exceeds {MAX_ORDER}"))
        })?;
        if e > 1 && !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_digits(&s, p) as u8;
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[(a * q + b) as usize] = from_digits(&r, p) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u8;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        Ok(Field {
            inner: Arc::new(FieldInner {
                p,
                e,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
                barrett: (1u32 << 16) / p,
            }),
        })
    }

    /// `F_{p^e}` with the first irreducible monic modulus in base-p order.
    pub fn with_order(p: u32, e: u32) -> Result<Field> {
        if e == 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let count = p.checked_pow(e).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("order {p}^{e} exceeds {MAX_ORDER}"))
        })?;
        for low in 0..count {
            let mut m = digits(low, p, e);
            m.push(1);
            if is_irreducible(&m, p) {
                return Self::extension(p, &m);
            }
        }
        Err(Error::InvalidField("no irreducible polynomial found".into()))
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }
    pub fn degree(&self) -> u32 {
        self.inner.e
    }
    pub fn order(&self) -> u32 {
        self.inner.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    /// Embeds an integer through `Z -> F_p -> F_q`.
    #[inline]
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.inner.p as i64) as u8
    }
    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.inner.add[a as usize * self.inner.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.inner.mul[a as usize * self.inner.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.inner.neg[a as usize]
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inner.inv[a as usize])
    }
    pub fn pow(&self, a: u8, mut k: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [u8], src: &[u8], c: u8) {
        if c == 0 {
            return;
        }
        let inner = &*self.inner;
        if inner.e == 1 {
            let (p, m, c) = (inner.p, inner.barrett, c as u32);
            for (d, &s) in dst.iter_mut().zip(src) {
                let t = *d as u32 + c * s as u32;
                let mut r = t - ((t * m) >> 16) * p;
                if r >= p {
                    r -= p;
                }
                *d = r as u8;
            }
        } else {
            let q = inner.q as usize;
            let row = &inner.mul[c as usize * q..(c as usize + 1) * q];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = inner.add[*d as usize * q + row[s as usize] as usize];
            }
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [u8], c: u8) {
        let q = self.inner.q as usize;
        let row = &self.inner.mul[c as usize * q..(c as usize + 1) * q];
        for x in v.iter_mut() {
            *x = row[*x as usize];
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.inner.p, self.inner.e, self.inner.modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2), (5, 3), (3, 3)] {
            let f = Field::with_order(p, e).unwrap();
            let q = f.order() as u8;
            for a in 0..q {
                if a != 0 {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ai), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            // associativity / distributivity on a strided sample of triples
            for a in (0..q).step_by(3) {
                for b in (0..q).step_by(2) {
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_one() {
        let f = Field::with_order(2, 2).unwrap();
        for a in 1..4u8 {
            assert_eq!(f.pow(a, 3), 1);
        }
        let f = Field::with_order(5, 3).unwrap();
        assert!((1..125u8).all(|a| f.pow(a, 124) == 1));
    }

    #[test]
    fn rejects_reducible_and_composite() {
        assert!(Field::prime(4).is_err());
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(Field::extension(2, &[1, 0, 1]).is_err());
        assert!(Field::extension(2, &[1, 1, 1]).is_ok());
        assert!(Field::with_order(2, 7).is_err());
    }

    #[test]
    fn barrett_axpy_matches_modular_arithmetic() {
        for p in [2u32, 3, 5, 7, 11, 113] {
            let f = Field::prime(p).unwrap();
            for c in 0..p as u8 {
                let src: Vec<u8> = (0..p as u8).collect();
                for d0 in 0..p as u8 {
                    let mut dst = vec![d0; p as usize];
                    f.axpy(&mut dst, &src, c);
                    for (s, d) in src.iter().zip(&dst) {
                        assert_eq!(*d as u32, (d0 as u32 + c as u32 * *s as u32) % p);
                    }
                }
            }
        }
    }
}
