//! Multivariate polynomials over `F_p` with weighted degrees.
//!
//! Text format: terms `c*x1^a1*...*xr^ar` joined by `+`; a missing coefficient
//! means 1, a missing exponent means 1 and absent variables have exponent 0.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};

pub type Monomial = Vec<u16>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted graded reverse lexicographic order.
    Grevlex,
    /// The first `k` variables form a block that is eliminated first; each
    /// block is ordered by weighted grevlex.
    Block(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    p: u32,
    weights: Vec<u32>,
    order: MonomialOrder,
    names: Vec<String>,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    /// `F_p[x1..xn]` with every generator of degree `weight`, grevlex order.
    pub fn new(p: u32, nvars: usize, weight: u32) -> Result<RingRef> {
        Self::with_weights(p, vec![weight; nvars], MonomialOrder::Grevlex)
    }

    pub fn with_weights(p: u32, weights: Vec<u32>, order: MonomialOrder) -> Result<RingRef> {
        if !is_prime(p) || p > 251 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Parse("generator degrees must be positive".into()));
        }
        let names = (1..=weights.len()).map(|i| format!("x{i}")).collect();
        Ok(Arc::new(PolyRing { p, weights, order, names }))
    }

    pub fn with_names(p: u32, weights: Vec<u32>, order: MonomialOrder, names: Vec<String>) -> Result<RingRef> {
        let mut r = Self::with_weights(p, weights, order)?;
        assert_eq!(names.len(), r.nvars());
        Arc::make_mut(&mut r).names = names;
        Ok(r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn nvars(&self) -> usize {
        self.weights.len()
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weighted_degree(&self, m: &[u16]) -> u32 {
        m.iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    fn grevlex(&self, a: &[u16], b: &[u16], range: std::ops::Range<usize>) -> Ordering {
        let da: u32 = range.clone().map(|i| a[i] as u32 * self.weights[i]).sum();
        let db: u32 = range.clone().map(|i| b[i] as u32 * self.weights[i]).sum();
        da.cmp(&db).then_with(|| {
            for i in range.rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        })
    }

    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        let n = self.nvars();
        match self.order {
            MonomialOrder::Grevlex => self.grevlex(a, b, 0..n),
            MonomialOrder::Block(k) => self.grevlex(a, b, 0..k).then_with(|| self.grevlex(a, b, k..n)),
        }
    }

    /// All monomials of weighted degree `d`, in increasing order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(ring: &PolyRing, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i == ring.nvars() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let w = ring.weights[i];
            let mut e = 0;
            while e * w <= left {
                cur[i] = e as u16;
                rec(ring, i + 1, left - e * w, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        rec(self, 0, d, &mut vec![0; self.nvars()], &mut out);
        out.sort_by(|a, b| self.cmp(a, b));
        out
    }
}

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub fn mono_mul(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn mono_div(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    /// Nonzero coefficients, monomials strictly decreasing in the ring order.
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}
impl Eq for Polynomial {}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut b, mut acc, mut k) = ((a % p) as u64, 1u64, p - 2);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    acc as u32
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Polynomial {
        Self::term(ring, vec![0; ring.nvars()], c)
    }

    pub fn var(ring: &RingRef, i: usize) -> Polynomial {
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        Self::term(ring, m, 1)
    }

    pub fn term(ring: &RingRef, mono: Monomial, c: i64) -> Polynomial {
        assert_eq!(mono.len(), ring.nvars());
        let c = c.rem_euclid(ring.p as i64) as u32;
        let terms = if c == 0 { Vec::new() } else { vec![(mono, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Combines like terms and sorts.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Polynomial {
        let p = ring.p;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = (*e + c % p) % p;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts that `terms` is already strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms }
    }

    /// Drops the leading term.
    pub fn tail(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.get(1..).unwrap_or(&[]).to_vec() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[i] > 0)
    }

    fn merge(&self, other: &Polynomial, scale: u32) -> Polynomial {
        let p = self.ring.p;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), b[j].1 * scale % p));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = (a[i].1 + b[j].1 * scale) % p;
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c * scale % p)));
        out.retain(|t| t.1 != 0);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.ring == other.ring);
        self.merge(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.ring == other.ring);
        self.merge(other, self.ring.p - 1)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.p - 1)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.ring.p;
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c % p)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies by `c * mono`; order is preserved by monomial multiplication.
    pub fn mul_term(&self, mono: &[u16], c: u32) -> Polynomial {
        let p = self.ring.p;
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, x)| (mono_mul(m, mono), x * c % p)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.ring == other.ring);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let p = self.ring.p;
        Polynomial::from_terms(
            &self.ring,
            self.terms
                .iter()
                .flat_map(|(ma, ca)| other.terms.iter().map(move |(mb, cb)| (mono_mul(ma, mb), ca * cb % p))),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(inv_mod(c, self.ring.p)),
        }
    }

    /// Applies the substitution `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images.first().map(|q| q.ring.clone());
        let Some(target) = target else {
            return self.clone();
        };
        let mut acc = Polynomial::zero(&target);
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, *c as i64);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let pw = powers.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                    t = t.mul(pw);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the polynomial into `target` sending variable `i` to `var_map[i]`.
    pub fn relabel(&self, target: &RingRef, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.ring.nvars());
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut t = vec![0u16; target.nvars()];
                for (i, &e) in m.iter().enumerate() {
                    t[var_map[i]] += e;
                }
                (t, *c)
            }),
        )
    }

    /// Evaluates at a point with coordinates in an extension of `F_p`.
    pub fn eval(&self, field: &Field, point: &[u8]) -> u8 {
        assert_eq!(field.characteristic(), self.ring.p);
        let mut acc = 0u8;
        for (m, c) in &self.terms {
            let mut t = field.from_int(*c as i64);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = field.mul(t, field.pow(point[i], e as u64));
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    pub fn parse(ring: &RingRef, text: &str) -> Result<Polynomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        for raw in text.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut mono = vec![0u16; ring.nvars()];
            let mut coeff: u64 = 1;
            for factor in raw.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {raw:?}")));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    let c: u64 = factor.parse().map_err(|_| Error::Parse(factor.into()))?;
                    if c >= ring.p as u64 {
                        return Err(Error::Parse(format!("coefficient {c} not below {}", ring.p)));
                    }
                    coeff = coeff * c % ring.p as u64;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u16 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                let idx = ring
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                mono[idx] += exp;
            }
            terms.push((mono, coeff as u32));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.iter().all(|&e| e == 0) {
                factors.push(c.to_string());
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.ring.names[i])),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let r = PolyRing::new(3, 3, 2).unwrap();
        for s in ["x2", "x1*x2", "2*x1^2*x3 + x2", "1", "0", "2"] {
            let f = Polynomial::parse(&r, s).unwrap();
            let g = Polynomial::parse(&r, &f.to_string()).unwrap();
            assert_eq!(f, g, "{s}");
        }
        assert_eq!(Polynomial::parse(&r, "x1 + 2*x1").unwrap().to_string(), "0");
        assert!(Polynomial::parse(&r, "3*x1").is_err());
        assert!(Polynomial::parse(&r, "y").is_err());
        assert!(Polynomial::parse(&r, "x1 +").is_err());
    }

    #[test]
    fn grevlex_order_basics() {
        let r = PolyRing::new(2, 3, 1).unwrap();
        // x1 > x2 > x3, and x2^2 > x1*x3 in grevlex
        assert_eq!(r.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(r.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(r.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        let b = PolyRing::with_weights(2, vec![1, 1, 1], MonomialOrder::Block(1)).unwrap();
        assert_eq!(b.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }

    #[test]
    fn arithmetic() {
        let r = PolyRing::new(2, 2, 1).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = x.add(&y);
        // (x+y)^2 = x^2 + y^2 in characteristic 2
        assert_eq!(s.pow(2), x.pow(2).add(&y.pow(2)));
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.mul(&s).degree(), Some(2));
        assert!(s.is_homogeneous());
        assert!(!s.add(&Polynomial::constant(&r, 1)).is_homogeneous());
    }

    #[test]
    fn substitution_and_eval() {
        let r = PolyRing::new(3, 2, 2).unwrap();
        let f = Polynomial::parse(&r, "x1^2 + 2*x1*x2").unwrap();
        let img = [Polynomial::var(&r, 1), Polynomial::zero(&r)];
        assert_eq!(f.substitute(&img).to_string(), "x2^2");
        let fl = Field::with_order(3, 2).unwrap();
        // at (1, 1): 1 + 2 = 0
        assert_eq!(f.eval(&fl, &[1, 1]), 0);
        assert_eq!(f.eval(&fl, &[1, 0]), 1);
    }

    #[test]
    fn monomials_of_degree_counts() {
        let r = PolyRing::new(2, 3, 2).unwrap();
        assert_eq!(r.monomials_of_degree(4).len(), 6);
        assert_eq!(r.monomials_of_degree(3).len(), 0);
        let r = PolyRing::new(2, 3, 1).unwrap();
        assert_eq!(r.monomials_of_degree(5).len(), 21);
    }
}
