//! Ideals, ring maps and the elimination-based ideal calculus.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, normal_form};
use crate::poly::{MonomialOrder, PolyRing, Polynomial, RingRef};

pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), gb }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn check_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            check_ring(ring, g.ring())?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, gb: OnceLock::new() })
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), generators: vec![Polynomial::constant(ring, 1)], gb: OnceLock::new() }
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &RingRef) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal { ring: ring.clone(), generators: gens, gb: OnceLock::new() }
    }

    pub fn parse(ring: &RingRef, generators: &[&str]) -> Result<Ideal> {
        let gens = generators.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis, computed on first use and cached.
    pub fn groebner(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            let gb = groebner_basis(&self.generators);
            for g in &self.generators {
                assert!(normal_form(g, &gb).is_zero(), "Gröbner basis does not contain generator {g}");
            }
            gb
        })
    }

    /// The ideal generated by its reduced Gröbner basis.
    pub fn to_groebner(&self) -> Ideal {
        let gb = self.groebner().to_vec();
        let cache = OnceLock::new();
        let _ = cache.set(gb.clone());
        Ideal { ring: self.ring.clone(), generators: gb, gb: cache }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        check_ring(&self.ring, f.ring())?;
        Ok(normal_form(f, self.groebner()).is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        check_ring(&self.ring, &other.ring)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decides `f ∈ √I` by checking `1 ∈ I + (1 - t f)` with a new variable `t`.
    pub fn contains_radical(&self, f: &Polynomial) -> Result<bool> {
        check_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        let n = self.ring.nvars();
        let mut weights = self.ring.weights().to_vec();
        weights.push(1);
        let big = PolyRing::with_weights(self.ring.p(), weights, MonomialOrder::Grevlex)?;
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.relabel(&big, &map)).collect();
        let t = Polynomial::var(&big, n);
        gens.push(Polynomial::constant(&big, 1).sub(&t.mul(&f.relabel(&big, &map))));
        let gb = groebner_basis(&gens);
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// `√self ⊇ other` and `√other ⊇ self`.
    pub fn same_radical(&self, other: &Ideal) -> Result<bool> {
        check_ring(&self.ring, &other.ring)?;
        for g in &other.generators {
            if !self.contains_radical(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains_radical(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.mul(b)))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J`, as the `t`-free part of `t I + (1 - t) J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let mut weights = vec![1];
        weights.extend_from_slice(self.ring.weights());
        let big = PolyRing::with_weights(self.ring.p(), weights, MonomialOrder::Block(1))?;
        let map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = Polynomial::constant(&big, 1).sub(&t);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| t.mul(&g.relabel(&big, &map))).collect();
        gens.extend(other.generators.iter().map(|g| one_minus_t.mul(&g.relabel(&big, &map))));
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let kept: Vec<Polynomial> = groebner_basis(&gens)
            .into_iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| g.relabel(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `I ∩ k[other variables]`, returned in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if let Some(&v) = vars.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange(format!("variable index {v} with {n} variables")));
        }
        let mut order: Vec<usize> = vars.to_vec();
        order.sort_unstable();
        order.dedup();
        let k = order.len();
        order.extend((0..n).filter(|i| !vars.contains(i)));
        // order[new] = old
        let mut to_new = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            to_new[old] = new;
        }
        let weights = order.iter().map(|&old| self.ring.weights()[old]).collect();
        let big = PolyRing::with_weights(self.ring.p(), weights, MonomialOrder::Block(k))?;
        let gens: Vec<Polynomial> = self.generators.iter().map(|g| g.relabel(&big, &to_new)).collect();
        let kept: Vec<Polynomial> = groebner_basis(&gens)
            .into_iter()
            .filter(|g| (0..k).all(|i| !g.uses_var(i)))
            .map(|g| g.relabel(&self.ring, &order))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// Replaces the generators by a linearly independent spanning set of their span.
    pub fn compressed(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            generators: linear_basis(&self.ring, &self.generators),
            gb: OnceLock::new(),
        }
    }
}

/// Echelon basis of the F_p-span of `polys`.
pub fn linear_basis(ring: &RingRef, polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in polys {
        let mut g = f.clone();
        // basis is kept with distinct leading monomials, each monic
        loop {
            let Some((lm, lc)) = g.leading().map(|(m, c)| (m.clone(), c)) else { break };
            match basis.iter().find(|b| b.leading().unwrap().0 == &lm) {
                Some(b) => g = g.sub(&b.scale(lc)),
                None => break,
            }
        }
        if !g.is_zero() {
            let g = g.monic();
            basis.push(g);
            basis.sort_by(|a, b| ring.cmp(b.leading().unwrap().0, a.leading().unwrap().0));
        }
    }
    basis
}

/// A ring homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: RingRef,
    target: RingRef,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &RingRef, target: &RingRef, images: Vec<Polynomial>) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        if source.p() != target.p() {
            return Err(Error::RingMismatch);
        }
        for (i, f) in images.iter().enumerate() {
            check_ring(target, f.ring())?;
            let want = source.weights()[i];
            if !f.is_homogeneous() || f.degree().is_some_and(|d| d != want) {
                return Err(Error::InvalidEmbedding(format!("image {f} of x{} is not homogeneous of degree {want}", i + 1)));
            }
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &RingRef) -> RingMap {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }
    pub fn target(&self) -> &RingRef {
        &self.target
    }
    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.source, f.ring())?;
        if self.images.is_empty() {
            return Ok(Polynomial::from_terms(
                &self.target,
                f.terms().iter().map(|(_, c)| (vec![0; self.target.nvars()], *c)),
            ));
        }
        Ok(f.substitute(&self.images))
    }

    /// The extension `f(I) · target`.
    pub fn apply(&self, ideal: &Ideal) -> Result<Ideal> {
        let gens = ideal.generators.iter().map(|g| self.apply_poly(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.target, gens)
    }

    /// Kernel of `source -> target / i_target`, by eliminating the target
    /// variables from the graph ideal.
    pub fn kernel_mod(&self, i_target: &Ideal) -> Result<Ideal> {
        check_ring(&self.target, &i_target.ring)?;
        let (nt, ns) = (self.target.nvars(), self.source.nvars());
        let mut weights = self.target.weights().to_vec();
        weights.extend_from_slice(self.source.weights());
        let big = PolyRing::with_weights(self.source.p(), weights, MonomialOrder::Block(nt))?;
        let tmap: Vec<usize> = (0..nt).collect();
        let mut gens: Vec<Polynomial> = i_target.generators.iter().map(|g| g.relabel(&big, &tmap)).collect();
        for (j, img) in self.images.iter().enumerate() {
            gens.push(Polynomial::var(&big, nt + j).sub(&img.relabel(&big, &tmap)));
        }
        let mut back = vec![0; nt];
        back.extend(0..ns);
        let kept: Vec<Polynomial> = groebner_basis(&gens)
            .into_iter()
            .filter(|g| (0..nt).all(|i| !g.uses_var(i)))
            .map(|g| g.relabel(&self.source, &back))
            .collect();
        Ideal::new(&self.source, kept)
    }
}

/// A dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        for e in &entries {
            check_ring(ring, e.ring())?;
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, f: Polynomial) {
        self.entries[i * self.cols + j] = f;
    }
    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn push_column(&mut self, col: Vec<Polynomial>) {
        assert_eq!(col.len(), self.rows);
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, c) in col.into_iter().enumerate() {
            entries.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
            entries.push(c);
        }
        self.entries = entries;
        self.cols += 1;
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of `t × t` minors of a `rows × cols` matrix.
pub fn minor_count(rows: usize, cols: usize, t: usize) -> u128 {
    binomial(rows, t).saturating_mul(binomial(cols, t))
}

struct MinorMemo<'a> {
    m: &'a PolyMatrix,
    memo: HashMap<(u64, u64), Polynomial>,
}

impl MinorMemo<'_> {
    // determinant of the submatrix on row set `rows` and column set `cols`, expanded
    // along the lowest row
    fn det(&mut self, rows: u64, cols: u64) -> Polynomial {
        if rows == 0 {
            return Polynomial::constant(&self.m.ring, 1);
        }
        if let Some(v) = self.memo.get(&(rows, cols)) {
            return v.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Polynomial::zero(&self.m.ring);
        let mut sign_neg = false;
        let mut cs = cols;
        while cs != 0 {
            let c = cs.trailing_zeros() as usize;
            cs &= cs - 1;
            let a = self.m.get(r0, c);
            if !a.is_zero() {
                let sub = self.det(rest, cols & !(1u64 << c));
                if !sub.is_zero() {
                    let term = a.mul(&sub);
                    acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
                }
            }
            sign_neg = !sign_neg;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets(n: usize, t: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, left: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, cur | (1u64 << i), out);
        }
    }
    if t <= n {
        rec(0, n, t, 0, &mut out);
    }
    out
}

/// The ideal of all `t × t` minors (Laplace expansion with memoized sub-minors),
/// with generators compressed to a linear basis of their span.
pub fn symbolic_minors(m: &PolyMatrix, t: usize) -> Result<Ideal> {
    if t == 0 || t > m.rows.min(m.cols) {
        return Err(Error::OutOfRange(format!("minor size {t} for a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows > 64 || m.cols > 64 {
        return Err(Error::OutOfRange("symbolic minors support at most 64 rows and columns".into()));
    }
    let mut memo = MinorMemo { m, memo: HashMap::new() };
    let row_sets = subsets(m.rows, t);
    let col_sets = subsets(m.cols, t);
    let mut gens = Vec::new();
    for &rs in &row_sets {
        for &cs in &col_sets {
            let d = memo.det(rs, cs);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ok(Ideal::new(&m.ring, linear_basis(&m.ring, &gens))?)
}

/// Zeroth Fitting ideal of the cokernel of `presentation` (rows = generators).
pub fn fitting_ideal_0(presentation: &PolyMatrix, n_generators: usize) -> Result<Ideal> {
    if presentation.rows != n_generators {
        return Err(Error::DimensionMismatch(format!(
            "presentation has {} rows for {n_generators} generators",
            presentation.rows
        )));
    }
    if n_generators == 0 {
        return Ok(Ideal::unit(&presentation.ring));
    }
    if presentation.cols < n_generators {
        return Ok(Ideal::zero(&presentation.ring));
    }
    symbolic_minors(presentation, n_generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring(p: u32, n: usize) -> RingRef {
        PolyRing::new(p, n, 1).unwrap()
    }
    fn poly(r: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    /// Zero set over F_{p^2} of an ideal, by enumeration.
    fn zeros(i: &Ideal) -> Vec<Vec<u8>> {
        let f = Field::with_order(i.ring().p(), 2).unwrap();
        let n = i.ring().nvars();
        let q = f.order() as usize;
        let mut out = Vec::new();
        for code in 0..q.pow(n as u32) {
            let pt: Vec<u8> = (0..n).map(|k| ((code / q.pow(k as u32)) % q) as u8).collect();
            if i.generators().iter().all(|g| g.eval(&f, &pt) == 0) {
                out.push(pt);
            }
        }
        out
    }

    #[test]
    fn membership_examples() {
        let r = ring(2, 2);
        let i = Ideal::parse(&r, &["x1^2"]).unwrap();
        assert!(i.contains(&Polynomial::zero(&r)).unwrap());
        assert!(!i.contains(&poly(&r, "x1")).unwrap());
        let j = Ideal::parse(&r, &["x1"]).unwrap();
        assert!(j.contains(&poly(&r, "x1*x2")).unwrap());
        let other = ring(3, 2);
        assert_eq!(i.contains(&poly(&other, "x1")), Err(Error::RingMismatch));
    }

    #[test]
    fn radical_examples() {
        let r = ring(2, 2);
        let i = Ideal::parse(&r, &["x1^2"]).unwrap();
        assert!(i.contains_radical(&poly(&r, "x1")).unwrap());
        assert!(!i.contains_radical(&poly(&r, "x2")).unwrap());
        let j = Ideal::parse(&r, &["x1^3 + x1^2*x2 + x1*x2^2 + x2^3", "x1*x2"]).unwrap();
        let s = poly(&r, "x1 + x2");
        assert!(j.contains(&s.pow(3)).unwrap());
        assert!(j.contains_radical(&s).unwrap());
    }

    #[test]
    fn sum_and_intersection_examples() {
        let r = ring(2, 2);
        let a = Ideal::parse(&r, &["x1"]).unwrap();
        let b = Ideal::parse(&r, &["x2"]).unwrap();
        assert_eq!(a.sum(&b).unwrap().groebner(), Ideal::parse(&r, &["x1", "x2"]).unwrap().groebner());
        assert_eq!(a.intersection(&b).unwrap().groebner(), &[poly(&r, "x1*x2")]);
        assert!(a.intersection(&a).unwrap().same_radical(&a).unwrap());

        let a = Ideal::parse(&r, &["x1^2"]).unwrap();
        let b = Ideal::parse(&r, &["x1*x2"]).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!(c.groebner(), &[poly(&r, "x1^2*x2")]);
        let mut za = zeros(&a);
        za.extend(zeros(&b));
        za.sort();
        za.dedup();
        let mut zc = zeros(&c);
        zc.sort();
        assert_eq!(zc, za);
    }

    #[test]
    fn elimination_examples() {
        let r = ring(2, 2);
        assert!(Ideal::parse(&r, &["x1"]).unwrap().eliminate(&[0]).unwrap().is_zero());
        let e = Ideal::parse(&r, &["x1", "x2"]).unwrap().eliminate(&[0]).unwrap();
        assert_eq!(e.groebner(), &[poly(&r, "x2")]);
        assert!(Ideal::parse(&r, &["x1*x2"]).unwrap().eliminate(&[0]).unwrap().is_zero());
        // twisted cubic: eliminating t from (x - t, y - t^2, z - t^3) gives y - x^2 etc.
        let r4 = ring(3, 4);
        let i = Ideal::parse(&r4, &["x2 + 2*x1", "x3 + 2*x1^2", "x4 + 2*x1^3"]).unwrap();
        let e = i.eliminate(&[0]).unwrap();
        assert!(e.contains(&poly(&r4, "x3 + 2*x2^2")).unwrap());
        assert!(e.contains(&poly(&r4, "x4 + 2*x2*x3")).unwrap());
        assert!(!e.contains(&poly(&r4, "x3")).unwrap());
    }

    #[test]
    fn ring_map_examples() {
        let src = ring(2, 2);
        let tgt = ring(2, 1);
        let m = RingMap::new(&src, &tgt, vec![poly(&tgt, "x1"), Polynomial::zero(&tgt)]).unwrap();
        assert!(m.apply(&Ideal::zero(&src)).unwrap().is_zero());
        let img = m.apply(&Ideal::parse(&src, &["x2"]).unwrap()).unwrap();
        assert!(img.is_zero());
        let k = m.kernel_mod(&Ideal::zero(&tgt)).unwrap();
        assert_eq!(k.groebner(), &[poly(&src, "x2")]);
        assert!(m.kernel_mod(&Ideal::unit(&tgt)).unwrap().is_unit());
        let id = RingMap::identity(&src);
        let i = Ideal::parse(&src, &["x1*x2 + x2^2"]).unwrap();
        assert_eq!(id.apply(&i).unwrap().groebner(), i.groebner());
        assert!(RingMap::new(&src, &tgt, vec![poly(&tgt, "x1^2"), Polynomial::zero(&tgt)]).is_err());
    }

    #[test]
    fn minors_examples() {
        let r = ring(2, 2);
        let x1 = poly(&r, "x1");
        let x2 = poly(&r, "x2");
        let z = Polynomial::zero(&r);
        let d = PolyMatrix::from_rows(&r, vec![vec![x1.clone(), z.clone()], vec![z.clone(), x2.clone()]]).unwrap();
        assert_eq!(symbolic_minors(&d, 2).unwrap().groebner(), &[poly(&r, "x1*x2")]);
        let t1 = symbolic_minors(&d, 1).unwrap();
        assert_eq!(t1.groebner(), Ideal::parse(&r, &["x1", "x2"]).unwrap().groebner());
        let s = PolyMatrix::from_rows(&r, vec![vec![x1.clone(), x2.clone()], vec![x2.clone(), x1.clone()]]).unwrap();
        assert_eq!(symbolic_minors(&s, 2).unwrap().groebner(), &[poly(&r, "x1^2 + x2^2")]);
        assert!(symbolic_minors(&s, 3).is_err());
        assert!(symbolic_minors(&s, 0).is_err());
    }

    #[test]
    fn minors_match_direct_determinant_over_f3() {
        // 3x3 determinant with signs
        let r = ring(3, 3);
        let e = |s: &str| poly(&r, s);
        let m = PolyMatrix::from_rows(
            &r,
            vec![
                vec![e("x1"), e("x2"), e("0")],
                vec![e("0"), e("x3"), e("x1")],
                vec![e("x2"), e("0"), e("x3")],
            ],
        )
        .unwrap();
        // x1(x3^2) - x2(0 - x1 x2) + 0 = x1 x3^2 + x1 x2^2
        let det = symbolic_minors(&m, 3).unwrap();
        assert_eq!(det.generators(), &[e("x1*x3^2 + x1*x2^2")]);
    }

    #[test]
    fn fitting_examples() {
        let r = ring(2, 2);
        let one = Polynomial::constant(&r, 1);
        let z = Polynomial::zero(&r);
        let id = PolyMatrix::from_rows(&r, vec![vec![one.clone(), z.clone()], vec![z, one]]).unwrap();
        assert!(fitting_ideal_0(&id, 2).unwrap().is_unit());
        let col = PolyMatrix::from_rows(&r, vec![vec![poly(&r, "x2")]]).unwrap();
        assert_eq!(fitting_ideal_0(&col, 1).unwrap().groebner(), &[poly(&r, "x2")]);
        let empty = PolyMatrix::zeros(&r, 1, 0);
        assert!(fitting_ideal_0(&empty, 1).unwrap().is_zero());
    }

    #[test]
    fn linear_basis_drops_dependent() {
        let r = ring(3, 2);
        let gens = vec![poly(&r, "x1 + x2"), poly(&r, "2*x1 + 2*x2"), poly(&r, "x2"), poly(&r, "x1")];
        assert_eq!(linear_basis(&r, &gens).len(), 2);
    }
}
