//! Free resolutions over `kE`, the reduced cohomology ring, cocycles and
//! Koszul modules.
//!
//! The minimal resolution of `k` is the tensor product of the periodic
//! resolutions of the cyclic factors. It has a basis `e_a` indexed by
//! `a ∈ N^r` with `|a| = n` in degree `n` and
//!
//! ```text
//! ∂ e_a = Σ_i (-1)^{a_1+..+a_{i-1}} w_i(a_i) e_{a-ε_i},   w_i(t) = z_i (t odd), z_i^{p-1} (t even).
//! ```
//!
//! The class `x_i` (degree 1 at p = 2, degree 2 otherwise) is dual to `e_{g ε_i}` and
//! is lifted to the chain map `e_a ↦ e_{a - g ε_i}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{ElementaryAbelian, FdModule, Hopf};
use crate::poly::{PolyRing, RingRef};

/// Degree of the polynomial generators of the reduced cohomology ring.
pub fn gen_degree(p: u32) -> u32 {
    if p == 2 {
        1
    } else {
        2
    }
}

/// All `a ∈ N^r` with `|a| = n`, lexicographically decreasing.
pub fn multi_indices(r: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(r: usize, n: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == r {
            cur.push(n as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=n).rev() {
            cur.push(k as u32);
            rec(r, n - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, n, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// `k[x_1..x_r]` with every `x_i` of degree [`gen_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomRing {
    alg: ElementaryAbelian,
    ring: RingRef,
}

impl CohomRing {
    pub fn new(alg: ElementaryAbelian) -> CohomRing {
        let ring = PolyRing::new(alg.p(), alg.rank(), gen_degree(alg.p())).expect("valid prime");
        CohomRing { alg, ring }
    }
    pub fn algebra(&self) -> ElementaryAbelian {
        self.alg
    }
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn p(&self) -> u32 {
        self.alg.p()
    }
    pub fn rank(&self) -> usize {
        self.alg.rank()
    }
    pub fn gen_degree(&self) -> u32 {
        gen_degree(self.alg.p())
    }
    pub fn irrelevant(&self) -> crate::ideal::Ideal {
        crate::ideal::Ideal::irrelevant(&self.ring)
    }
}

/// A cohomology class of `k`: a functional on the degree-`d` term of the
/// resolution of `k` (one value per basis element `e_a`, in `multi_indices` order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    alg: ElementaryAbelian,
    degree: usize,
    values: Vec<u8>,
}

impl Cocycle {
    /// Every functional is a cocycle on the minimal resolution of `k`, since the
    /// differentials land in the radical.
    pub fn new(alg: ElementaryAbelian, degree: usize, values: Vec<u8>) -> Result<Cocycle> {
        let want = multi_indices(alg.rank(), degree).len();
        if values.len() != want {
            return Err(Error::InvalidCocycle(format!("{} values for a rank {want} term", values.len())));
        }
        if values.iter().any(|&v| v as u32 >= alg.p()) {
            return Err(Error::InvalidCocycle("values must lie in 0..p".into()));
        }
        Ok(Cocycle { alg, degree, values })
    }

    /// The polynomial generator `x_i` (0-based).
    pub fn generator(alg: ElementaryAbelian, i: usize) -> Cocycle {
        Self::linear(alg, &(0..alg.rank()).map(|j| (j == i) as u8).collect::<Vec<_>>())
    }

    /// `Σ c_i x_i`.
    pub fn linear(alg: ElementaryAbelian, coeffs: &[u8]) -> Cocycle {
        let g = gen_degree(alg.p()) as usize;
        let idx = multi_indices(alg.rank(), g);
        let mut values = vec![0u8; idx.len()];
        for (i, &c) in coeffs.iter().enumerate() {
            let mut a = vec![0u32; alg.rank()];
            a[i] = g as u32;
            values[idx.iter().position(|b| *b == a).unwrap()] = c;
        }
        Cocycle { alg, degree: g, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn values(&self) -> &[u8] {
        &self.values
    }
    pub fn algebra(&self) -> ElementaryAbelian {
        self.alg
    }
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// One term `sign · z_i^power · e_target` of `∂ e_a`.
#[derive(Clone, Debug)]
pub struct BoundaryTerm {
    pub var: usize,
    pub power: u32,
    pub negative: bool,
    pub target: Vec<u32>,
}

/// The explicit minimal resolution of `k`.
#[derive(Clone, Debug)]
pub struct ResolutionOfK {
    alg: ElementaryAbelian,
}

impl ResolutionOfK {
    pub fn new(alg: ElementaryAbelian) -> Self {
        ResolutionOfK { alg }
    }

    pub fn algebra(&self) -> ElementaryAbelian {
        self.alg
    }

    pub fn rank(&self, n: usize) -> usize {
        multi_indices(self.alg.rank(), n).len()
    }

    /// Position of `e_a` among the basis of its degree.
    pub fn position(&self, a: &[u32]) -> usize {
        let n: u32 = a.iter().sum();
        multi_indices(self.alg.rank(), n as usize).iter().position(|b| b == a).unwrap()
    }

    pub fn boundary_terms(&self, a: &[u32]) -> Vec<BoundaryTerm> {
        let p = self.alg.p();
        let mut out = Vec::new();
        let mut prefix = 0u32;
        for (i, &ai) in a.iter().enumerate() {
            if ai > 0 {
                let mut target = a.to_vec();
                target[i] -= 1;
                out.push(BoundaryTerm {
                    var: i,
                    power: if ai % 2 == 1 { 1 } else { p - 1 },
                    negative: prefix % 2 == 1 && p != 2,
                    target,
                });
            }
            prefix += ai;
        }
        out
    }

    /// The resolution as matrices over `k` up to degree `len`.
    pub fn to_resolution(&self, len: usize) -> MinimalResolution {
        let alg = self.alg;
        let f = alg.field();
        let order = alg.order();
        let mons = alg.monomials();
        let mut differentials = Vec::with_capacity(len);
        for n in 1..=len {
            let src = multi_indices(alg.rank(), n);
            let tgt = multi_indices(alg.rank(), n - 1);
            let tpos: HashMap<&Vec<u32>, usize> = tgt.iter().enumerate().map(|(i, a)| (a, i)).collect();
            let mut d = Matrix::zeros(&f, tgt.len() * order, src.len() * order);
            for (sj, a) in src.iter().enumerate() {
                for t in self.boundary_terms(a) {
                    let tj = tpos[&t.target];
                    let coeff = if t.negative { f.neg(1) } else { 1 };
                    for (mi, c) in mons.iter().enumerate() {
                        let e = c[t.var] + t.power;
                        if e < alg.p() {
                            let mut c2 = c.clone();
                            c2[t.var] = e;
                            let row = tj * order + alg.index(&c2);
                            let col = sj * order + mi;
                            d.set(row, col, f.add(d.get(row, col), coeff));
                        }
                    }
                }
            }
            differentials.push(d);
        }
        let aug = Matrix::from_fn(&f, 1, order, |_, j| (j == 0) as u8);
        MinimalResolution {
            alg,
            ranks: (0..=len).map(|n| self.rank(n)).collect(),
            differentials,
            augmentation: aug,
        }
    }
}

/// Free resolution `P_N → ... → P_0 → M` with `P_n = kE^{b_n}`; a vector of `P_n`
/// has the coordinate of `z^c` in copy `j` at `j * |E| + index(c)`.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    alg: ElementaryAbelian,
    ranks: Vec<usize>,
    /// `differentials[n - 1] = ∂_n : P_n → P_{n-1}`.
    differentials: Vec<Matrix>,
    augmentation: Matrix,
}

/// Block-diagonal action of `z_i` on `kE^b`.
fn free_actions(alg: ElementaryAbelian, b: usize) -> Vec<Matrix> {
    let ke = FdModule::free(alg);
    ke.actions().iter().map(|z| Matrix::identity(&alg.field(), b).kron(z).unwrap()).collect()
}

/// Minimal resolution of `m` of length `len`, by repeated projective covers.
pub fn minimal_resolution(m: &FdModule, len: usize) -> MinimalResolution {
    let alg = m.algebra();
    let mut ranks = vec![m.top_dim()];
    let augmentation = m.cover_map();
    let mut differentials = Vec::with_capacity(len);
    // current kernel as a submodule of P_{n-1}, with its inclusion matrix
    let mut incl = augmentation.kernel();
    let mut prev_free = {
        let b = ranks[0];
        FdModule::new(alg, free_actions(alg, b)).unwrap()
    };
    for _ in 0..len {
        let kernel = prev_free.submodule(&incl).expect("kernel is a submodule");
        let cover = kernel.cover_map();
        let d = incl.mul(&cover);
        ranks.push(kernel.top_dim());
        let next_incl = d.kernel();
        differentials.push(d);
        prev_free = FdModule::new(alg, free_actions(alg, *ranks.last().unwrap())).unwrap();
        incl = next_incl;
    }
    MinimalResolution { alg, ranks, differentials, augmentation }
}

impl MinimalResolution {
    pub fn algebra(&self) -> ElementaryAbelian {
        self.alg
    }
    pub fn len(&self) -> usize {
        self.differentials.len()
    }
    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }
    /// Betti numbers `b_0..b_N`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn differential(&self, n: usize) -> &Matrix {
        &self.differentials[n - 1]
    }
    pub fn augmentation(&self) -> &Matrix {
        &self.augmentation
    }

    /// `∂∂ = 0`, `ε∂_1 = 0`, exactness at `P_0..P_{N-1}`, image of `∂` in the radical,
    /// and every `∂_n` commutes with the action.
    pub fn verify(&self) -> Result<()> {
        let order = self.alg.order();
        let fail = |s: String| Err(Error::Verification(s));
        if let Some(d1) = self.differentials.first() {
            if !self.augmentation.mul(d1).is_zero() {
                return fail("ε∂ ≠ 0".into());
            }
        }
        for n in 1..=self.len() {
            let d = self.differential(n);
            if n >= 2 && !self.differential(n - 1).mul(d).is_zero() {
                return fail(format!("∂_{}∂_{n} ≠ 0", n - 1));
            }
            for (za, zb) in free_actions(self.alg, self.ranks[n]).iter().zip(free_actions(self.alg, self.ranks[n - 1])) {
                if d.mul(za) != zb.mul(d) {
                    return fail(format!("∂_{n} is not kE-linear"));
                }
            }
            // minimality: no generator maps to something with a unit coefficient
            for j in 0..d.cols() {
                for b in 0..self.ranks[n - 1] {
                    if d.get(b * order, j) != 0 {
                        return fail(format!("∂_{n} is not minimal"));
                    }
                }
            }
            let prev_rank = if n == 1 { self.augmentation.rank() } else { self.differential(n - 1).rank() };
            let kernel_dim = self.ranks[n - 1] * order - prev_rank;
            if d.rank() != kernel_dim {
                return fail(format!("not exact at P_{}", n - 1));
            }
        }
        Ok(())
    }
}

/// Lifts `zeta` (over the resolution `res` of `k`) to a chain map
/// `Φ_j : P_{d+j} → P_j`, `j = 0..=len`, solving `∂_j Φ_j = Φ_{j-1} ∂_{d+j}` one free
/// generator at a time and extending `kE`-linearly.
pub fn yoneda_lift(zeta: &Cocycle, res: &MinimalResolution, len: usize) -> Result<Vec<Matrix>> {
    let alg = res.alg;
    let f = alg.field();
    let order = alg.order();
    let d = zeta.degree;
    if d + len > res.len() {
        return Err(Error::OutOfRange(format!("resolution of length {} too short", res.len())));
    }
    if res.ranks[d] != zeta.values.len() || res.ranks[0] != 1 {
        return Err(Error::InvalidCocycle("cocycle does not match the resolution of k".into()));
    }
    // extend generator images kE-linearly to all of P_{d+j}
    let extend = |gen_images: &[Vec<u8>], b: usize| -> Matrix {
        let free = FdModule::new(alg, free_actions(alg, b)).unwrap();
        let mons = free.all_monomial_actions();
        let cols: Vec<Vec<u8>> = gen_images.iter().flat_map(|v| mons.iter().map(move |m| m.mul_vec(v))).collect();
        Matrix::from_columns(&f, b * order, &cols)
    };
    let mut maps: Vec<Matrix> = Vec::with_capacity(len + 1);
    // Φ_0 : P_d → P_0 = kE with ε Φ_0 = ζ
    let gens0: Vec<Vec<u8>> = zeta.values.iter().map(|&v| {
        let mut w = vec![0u8; order];
        w[0] = v;
        w
    }).collect();
    maps.push(extend(&gens0, 1));
    for j in 1..=len {
        let rhs_full = maps[j - 1].mul(res.differential(d + j));
        let dj = res.differential(j);
        let mut gens = Vec::with_capacity(res.ranks[d + j]);
        for b in 0..res.ranks[d + j] {
            let rhs = rhs_full.select_columns(&[b * order]);
            let x = dj
                .solve(&rhs)?
                .ok_or_else(|| Error::Verification(format!("lifting system inconsistent in degree {j}")))?;
            gens.push(x.column(0));
        }
        maps.push(extend(&gens, res.ranks[j]));
    }
    Ok(maps)
}

/// `L_ζ = ker(Ω^d k → k)`, the map induced by `ζ` on `P_d`.
pub fn koszul_kernel(zeta: &Cocycle) -> Result<FdModule> {
    if zeta.is_zero() {
        return Err(Error::InvalidCocycle("zero cocycle".into()));
    }
    let alg = zeta.alg;
    let d = zeta.degree;
    if d == 0 {
        return Err(Error::InvalidCocycle("degree-0 classes are units".into()));
    }
    let res = ResolutionOfK::new(alg).to_resolution(d);
    let order = alg.order();
    let f = alg.field();
    let dd = res.differential(d);
    let cols = dd.independent_columns();
    let omega_basis = dd.select_columns(&cols);
    let prev = FdModule::new(alg, free_actions(alg, res.ranks[d - 1])).unwrap();
    let omega = prev.submodule(&omega_basis)?;
    // ζ on P_d kills the radical; evaluate it on the chosen preimages
    let functional: Vec<u8> =
        cols.iter().map(|&c| if c % order == 0 { zeta.values[c / order] } else { 0 }).collect();
    let row = Matrix::from_fn(&f, 1, functional.len(), |_, j| functional[j]);
    let ker = row.kernel();
    omega.submodule(&ker)
}

/// `M ⊗ L_ζ` with the group diagonal.
pub fn koszul_module(m: &FdModule, zeta: &Cocycle) -> Result<FdModule> {
    if m.algebra() != zeta.alg {
        return Err(Error::AlgebraMismatch("module and cocycle over different algebras".into()));
    }
    m.tensor(&koszul_kernel(zeta)?, Hopf::Group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32, r: usize) -> ElementaryAbelian {
        ElementaryAbelian::new(p, r).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(2, 3), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        for r in 1..=3 {
            for n in 0..6 {
                assert_eq!(multi_indices(r, n).len(), binom(n + r - 1, r - 1));
            }
        }
    }

    #[test]
    fn explicit_resolution_is_a_minimal_resolution() {
        for (p, r, len) in [(2, 1, 4), (2, 2, 4), (3, 1, 4), (3, 2, 3), (5, 1, 3), (2, 3, 3)] {
            let res = ResolutionOfK::new(alg(p, r)).to_resolution(len);
            res.verify().unwrap();
        }
    }

    #[test]
    fn generic_resolution_betti_numbers() {
        let a = alg(2, 2);
        let res = minimal_resolution(&FdModule::trivial(a), 4);
        res.verify().unwrap();
        assert_eq!(res.ranks(), &[1, 2, 3, 4, 5]);
        let res = minimal_resolution(&FdModule::trivial(alg(3, 1)), 4);
        assert_eq!(res.ranks(), &[1, 1, 1, 1, 1]);
        let res = minimal_resolution(&FdModule::free(alg(3, 2)), 3);
        assert_eq!(res.ranks(), &[1, 0, 0, 0]);
        let m = FdModule::kill_generator(a, 0).unwrap();
        let res = minimal_resolution(&m, 4);
        res.verify().unwrap();
        // kE/(z1) = induced from <g1>, periodic of period 1
        assert_eq!(res.ranks(), &[1, 1, 1, 1, 1]);
        let res = minimal_resolution(&FdModule::trivial(alg(3, 2)), 4);
        res.verify().unwrap();
        assert_eq!(res.ranks(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn yoneda_lift_of_periodicity_class() {
        let a = alg(2, 1);
        let res = ResolutionOfK::new(a).to_resolution(5);
        let x = Cocycle::generator(a, 0);
        let lift = yoneda_lift(&x, &res, 4).unwrap();
        for m in &lift {
            assert_eq!(m, &Matrix::identity(&a.field(), 2));
        }
        let zero = Cocycle::new(a, 1, vec![0]).unwrap();
        assert!(yoneda_lift(&zero, &res, 3).unwrap().iter().all(|m| m.is_zero()));
    }

    #[test]
    fn yoneda_lifts_are_chain_maps_and_match_the_shift() {
        for (p, r) in [(2, 2), (3, 2), (2, 3)] {
            let a = alg(p, r);
            let k = ResolutionOfK::new(a);
            let g = gen_degree(p) as usize;
            let res = k.to_resolution(g + 3);
            let order = a.order();
            for i in 0..r {
                let lift = yoneda_lift(&Cocycle::generator(a, i), &res, 3).unwrap();
                for j in 1..=3 {
                    assert_eq!(res.differential(j).mul(&lift[j]), lift[j - 1].mul(res.differential(g + j)));
                }
                // modulo the radical, the lift is the shift e_a -> e_{a - g ε_i}
                for j in 0..=3 {
                    let src = multi_indices(r, g + j);
                    let tgt = multi_indices(r, j);
                    for (sa, a_) in src.iter().enumerate() {
                        for (tb, b) in tgt.iter().enumerate() {
                            let mut want = a_.clone();
                            let expect = if want[i] >= g as u32 {
                                want[i] -= g as u32;
                                (want == *b) as u8
                            } else {
                                0
                            };
                            assert_eq!(lift[j].get(tb * order, sa * order), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_validation() {
        let a = alg(2, 2);
        assert!(Cocycle::new(a, 1, vec![1, 0]).is_ok());
        assert!(Cocycle::new(a, 1, vec![1]).is_err());
        assert!(Cocycle::new(a, 1, vec![2, 0]).is_err());
        assert_eq!(Cocycle::generator(a, 1).values(), &[0, 1]);
        let b = alg(3, 2);
        assert_eq!(Cocycle::generator(b, 0).degree(), 2);
    }

    #[test]
    fn koszul_kernels() {
        let a = alg(2, 2);
        let l = koszul_kernel(&Cocycle::generator(a, 0)).unwrap();
        assert_eq!(l.dim(), 2);
        let m = koszul_module(&FdModule::free(a), &Cocycle::generator(a, 0)).unwrap();
        assert!(m.is_projective());
        assert!(koszul_kernel(&Cocycle::new(a, 1, vec![0, 0]).unwrap()).is_err());
        let b = alg(3, 1);
        // Ω^2 k = k for the cyclic group, so L_x = 0
        assert_eq!(koszul_kernel(&Cocycle::generator(b, 0)).unwrap().dim(), 0);
    }
}
