//! The BGG side: the injective resolution `J = Λ∨ ⊗ S` of `k` over `Λ`,
//! the functors between dg `Λ`-modules and dg `S`-modules built from the
//! trace element `δ = Σ ξ_i ⊗ x_i`, and supports of dg `Λ`-modules.
//!
//! `Λ∨` is a left module by `(a·f)(x) = (-1)^{|a||f|} f(a x)`, so
//! `ξ_i · ξ_S^∨ = (-1)^{|S| + #{j∈S: j<i}} ξ_{S∖i}^∨`.

use std::collections::HashMap;

use rand::Rng;

use crate::dg::{count_below, phi_lambda_to_a, verify_quasi_iso, DgAlgebra, DgKind, DgModule};
use crate::error::{Error, Result};
use crate::ext::GradedModule;
use crate::field::Field;
use crate::matrix::{Matrix, RowSpace};
use crate::module::{ElementaryAbelian, FdModule};
use crate::poly::{PolyRing, RingRef};
use crate::resolution::multi_indices;
use crate::support::{presentation_support_ideal, rank_variety_oracle, IdealMethod, Variety};

/// `S = k[x_1..x_r]` with every `x_i` in degree 2.
pub fn s_ring(p: u32, r: usize) -> Result<RingRef> {
    PolyRing::new(p, r, 2)
}

/// `ξ_i · ξ_S^∨` as `(negated, S ∖ i)`, or `None` when `i ∉ S`.
fn xi_on_dual(i: usize, s: u32) -> Option<(bool, u32)> {
    (s & (1 << i) != 0).then(|| ((s.count_ones() + count_below(s, i)) % 2 == 1, s & !(1 << i)))
}

/// `Λ∨` with zero differential; `ξ_S^∨` sits in degree `|S|`.
pub fn lambda_dual(p: u32, r: usize) -> Result<DgModule> {
    let f = Field::prime(p)?;
    let n = 1usize << r;
    let degrees = (0..n as u32).map(|s| s.count_ones() as i32).collect();
    let actions = (0..r)
        .map(|i| {
            let mut a = Matrix::zeros(&f, n, n);
            for s in 0..n as u32 {
                if let Some((neg, t)) = xi_on_dual(i, s) {
                    a.set(t as usize, s as usize, if neg { f.neg(1) } else { 1 });
                }
            }
            a
        })
        .collect();
    DgModule::new(DgKind::Lambda, p, r, degrees, Matrix::zeros(&f, n, n), actions)
}

/// `J` with `S` truncated to `|c| < m`: basis `ξ_S^∨ ⊗ x^c` in degree
/// `|S| + 2|c|`, `d(f ⊗ x^c) = Σ_i ξ_i f ⊗ x^{c+ε_i}`.
#[derive(Clone, Debug)]
pub struct TruncatedJ {
    pub module: DgModule,
    pub m: usize,
    /// `(S-set, exponent)` for each basis vector.
    pub basis: Vec<(u32, Vec<u32>)>,
}

impl TruncatedJ {
    /// Degrees where homology agrees with that of `J`: nothing of polynomial
    /// degree `m` can reach them.
    pub fn certified(&self) -> (i32, i32) {
        (0, 2 * self.m as i32 - 2)
    }
}

pub fn build_truncated_j(p: u32, r: usize, m: usize) -> Result<TruncatedJ> {
    if m == 0 {
        return Err(Error::WindowTooSmall("the truncation of S needs m ≥ 1".into()));
    }
    let f = Field::prime(p)?;
    let mut basis = Vec::new();
    for d in 0..m {
        for c in multi_indices(r, d) {
            for s in 0..1u32 << r {
                basis.push((s, c.clone()));
            }
        }
    }
    let pos: HashMap<(u32, Vec<u32>), usize> = basis.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
    let n = basis.len();
    let degrees = basis.iter().map(|(s, c)| s.count_ones() as i32 + 2 * c.iter().sum::<u32>() as i32).collect();
    let mut d = Matrix::zeros(&f, n, n);
    let mut actions = vec![Matrix::zeros(&f, n, n); r];
    for (k, (s, c)) in basis.iter().enumerate() {
        for i in 0..r {
            if let Some((neg, t)) = xi_on_dual(i, *s) {
                let v = if neg { f.neg(1) } else { 1 };
                actions[i].set(pos[&(t, c.clone())], k, v);
                let mut c2 = c.clone();
                c2[i] += 1;
                if let Some(&j) = pos.get(&(t, c2)) {
                    d.set(j, k, f.add(d.get(j, k), v));
                }
            }
        }
    }
    let module = DgModule::new(DgKind::Lambda, p, r, degrees, d, actions)?;
    Ok(TruncatedJ { module, m, basis })
}

/// `S ⊗ M` with `|c| ≤ K`, `d = 1 ⊗ d_M + Σ x_i ⊗ ξ_i`, as a dg `S`-module.
#[derive(Clone, Debug)]
pub struct HomJ {
    pub module: DgModule,
    pub k: usize,
    /// Degrees whose homology does not see the truncation.
    pub certified: Option<(i32, i32)>,
}

pub fn hom_j(m: &DgModule, k: usize) -> Result<HomJ> {
    if m.kind() != DgKind::Lambda {
        return Err(Error::AlgebraMismatch("hom_J takes a dg Λ-module".into()));
    }
    let (p, r) = (m.p(), m.rank());
    let f = m.field();
    let dm = m.dim();
    let monos: Vec<Vec<u32>> = (0..=k).flat_map(|d| multi_indices(r, d)).collect();
    let pos: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let n = monos.len() * dm;
    let degrees = monos
        .iter()
        .flat_map(|c| m.degrees().iter().map(move |&e| e + 2 * c.iter().sum::<u32>() as i32))
        .collect();
    let mut d = Matrix::zeros(&f, n, n);
    let mut actions = vec![Matrix::zeros(&f, n, n); r];
    let put = |target: &mut Matrix, row0: usize, col0: usize, block: &Matrix| {
        for x in 0..dm {
            for y in 0..dm {
                let v = block.get(x, y);
                if v != 0 {
                    target.set(row0 + x, col0 + y, f.add(target.get(row0 + x, col0 + y), v));
                }
            }
        }
    };
    for (ci, c) in monos.iter().enumerate() {
        put(&mut d, ci * dm, ci * dm, m.differential());
        for i in 0..r {
            let mut c2 = c.clone();
            c2[i] += 1;
            if let Some(&cj) = pos.get(&c2) {
                put(&mut d, cj * dm, ci * dm, m.action(i));
                put(&mut actions[i], cj * dm, ci * dm, &Matrix::identity(&f, dm));
            }
        }
    }
    let module = DgModule::new(DgKind::PolyS, p, r, degrees, d, actions)?;
    let certified = m.degree_range().map(|(a, _)| (a, a + 2 * k as i32));
    Ok(HomJ { module, k, certified })
}

/// `N ⊗ Λ∨` with `d(v ⊗ f) = d_N v ⊗ f + (-1)^{|v|} Σ x_i v ⊗ ξ_i f` and
/// `ξ_j (v ⊗ f) = (-1)^{|v|} v ⊗ ξ_j f`.
pub fn tensor_s_j(n: &DgModule) -> Result<DgModule> {
    if n.kind() != DgKind::PolyS {
        return Err(Error::AlgebraMismatch("tensor_S_J takes a dg S-module".into()));
    }
    let (p, r) = (n.p(), n.rank());
    let f = n.field();
    let dn = n.dim();
    let w = 1usize << r;
    let idx = |v: usize, s: u32| v * w + s as usize;
    let total = dn * w;
    let degrees = (0..dn).flat_map(|v| (0..w as u32).map(move |s| (v, s))).map(|(v, s)| n.degrees()[v] + s.count_ones() as i32).collect();
    let sign = |odd: bool, x: u8| if odd { f.neg(x) } else { x };
    let mut d = Matrix::zeros(&f, total, total);
    let mut actions = vec![Matrix::zeros(&f, total, total); r];
    for v in 0..dn {
        let odd_v = n.degrees()[v] % 2 != 0;
        for s in 0..w as u32 {
            let col = idx(v, s);
            for u in 0..dn {
                let x = n.differential().get(u, v);
                if x != 0 {
                    d.set(idx(u, s), col, f.add(d.get(idx(u, s), col), x));
                }
            }
            for i in 0..r {
                if let Some((neg, t)) = xi_on_dual(i, s) {
                    actions[i].set(idx(v, t), col, sign(neg ^ odd_v, 1));
                    for u in 0..dn {
                        let x = n.action(i).get(u, v);
                        if x != 0 {
                            let row = idx(u, t);
                            d.set(row, col, f.add(d.get(row, col), sign(neg ^ odd_v, x)));
                        }
                    }
                }
            }
        }
    }
    DgModule::new(DgKind::Lambda, p, r, degrees, d, actions)
}

/// The homology of a dg `S`-module in degrees `lo..=hi` as a graded module
/// over `S`.
pub fn homology_module(n: &DgModule, lo: i32, hi: i32) -> Result<GradedModule> {
    if n.kind() != DgKind::PolyS {
        return Err(Error::AlgebraMismatch("homology_module takes a dg S-module".into()));
    }
    let ring = s_ring(n.p(), n.rank())?;
    let f = n.field();
    let hs: Vec<_> = (lo..=hi).map(|deg| n.homology(deg)).collect();
    let dims: Vec<usize> = hs.iter().map(|h| h.dim()).collect();
    let mut actions = Vec::with_capacity(hs.len());
    for (k, h) in hs.iter().enumerate() {
        let mut acts = Vec::with_capacity(n.rank());
        for i in 0..n.rank() {
            let Some(t) = hs.get(k + 2) else {
                acts.push(None);
                continue;
            };
            let block = n.action(i).select_rows(&t.indices).select_columns(&h.indices);
            let cols: Vec<Vec<u8>> = h
                .representatives()
                .iter()
                .map(|z| t.coordinates(&block.mul_vec(z)).ok_or_else(|| Error::Verification("x_i does not preserve cycles".into())))
                .collect::<Result<_>>()?;
            acts.push(Some(Matrix::from_columns(&f, t.dim(), &cols)));
        }
        actions.push(acts);
    }
    GradedModule::new(&ring, lo, hi, dims, actions)
}

#[derive(Clone, Debug)]
pub struct LambdaSupport {
    pub variety: Variety,
    /// Polynomial truncation of `S ⊗ M` used.
    pub k: usize,
    pub window: (i32, i32),
    pub stable: bool,
    pub method: IdealMethod,
}

/// The support of `H(hom_J(M))` over `S`: Fitting ideal (or annihilator) of
/// a presentation read off the certified window.
pub fn lambda_support(m: &DgModule, k: usize) -> Result<LambdaSupport> {
    if k < 2 {
        return Err(Error::WindowTooSmall("lambda_support needs at least two polynomial degrees".into()));
    }
    let ring = s_ring(m.p(), m.rank())?;
    let h = hom_j(m, k)?;
    let Some((lo, hi)) = h.certified else {
        return Ok(LambdaSupport { variety: Variety::origin(&ring), k, window: (0, 0), stable: true, method: IdealMethod::Projective });
    };
    let pres = homology_module(&h.module, lo, hi)?.present();
    let (ideal, method) = presentation_support_ideal(&pres)?;
    Ok(LambdaSupport { variety: Variety::new(&ring, ideal)?, k, window: (lo, hi), stable: pres.is_stable(), method })
}

/// Support of the homology of a finite dg `S`-module. The window runs one
/// variable degree past the top so every relation is seen.
pub fn s_support(n: &DgModule) -> Result<Variety> {
    let ring = s_ring(n.p(), n.rank())?;
    let Some((lo, hi)) = n.degree_range() else {
        return Ok(Variety::origin(&ring));
    };
    let pres = homology_module(n, lo, hi + 2)?.present();
    Ok(Variety::new(&ring, presentation_support_ideal(&pres)?.0)?)
}

/// Re-reads a variety over `k[x_1..x_r]` with generators in degree 1 as one
/// over `S` with generators in degree 2.
pub fn double_degrees(v: &Variety) -> Result<Variety> {
    let ring = s_ring(v.ring().p(), v.ring().nvars())?;
    let gens = v.generator_strings();
    let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    Variety::parse(&ring, &refs)
}

/// At `p = 2` a dg `Λ`-module with zero differential is a `kE`-module via `ξ_i ↦ z_i`.
pub fn as_group_module(m: &DgModule) -> Result<FdModule> {
    if m.p() != 2 || m.kind() != DgKind::Lambda || !m.differential().is_zero() {
        return Err(Error::AlgebraMismatch("only Λ-modules at p = 2 with zero differential are kE-modules".into()));
    }
    FdModule::new(ElementaryAbelian::new(2, m.rank())?, m.actions().to_vec())
}

/// The rank variety of [`as_group_module`], regraded into `S`.
pub fn lambda_rank_variety(m: &DgModule) -> Result<Variety> {
    double_degrees(&rank_variety_oracle(&as_group_module(m)?)?)
}

/// `dim Ext^n_A(k, k)` for `n = 0..=top`, from `Ext_Λ(k, k) = H(Hom_Λ(k, J))`
/// and the quasi-isomorphism `φ: Λ → A`, which is checked first.
pub fn ext_a_hilbert(p: u32, r: usize, top: usize) -> Result<Vec<usize>> {
    let lambda = DgAlgebra::lambda(p, r)?;
    let a = DgAlgebra::koszul_a(p, r)?;
    let phi = phi_lambda_to_a(&lambda, &a)?;
    let qi = verify_quasi_iso(&lambda.regular_module(), &a.regular_module(), &phi, -(r as i32), 0)?;
    if !qi.pass {
        return Err(Error::Verification(format!("φ is not a quasi-isomorphism: {:?}", qi.degrees)));
    }
    let j = build_truncated_j(p, r, top / 2 + 2)?;
    let jm = &j.module;
    // Hom_Λ(k, J): vectors killed by every ξ_i
    let f = jm.field();
    let stacked = jm.actions().iter().skip(1).fold(jm.action(0).clone(), |acc, a| acc.vstack(a));
    let socle = stacked.kernel();
    let sub_degrees: Vec<i32> = (0..socle.cols())
        .map(|c| {
            let v = socle.column(c);
            let i = v.iter().position(|&x| x != 0).unwrap();
            jm.degrees()[i]
        })
        .collect();
    // Hom_Λ(k, -) applied to d: restrict d to the socle, in socle coordinates
    let image = jm.differential().mul(&socle);
    let coords = socle.solve(&image)?.ok_or_else(|| Error::Verification("d does not preserve Hom(k, J)".into()))?;
    let hom = DgModule::new(DgKind::Lambda, p, r, homogeneous_degrees(&socle, jm.degrees(), &sub_degrees)?, coords, vec![Matrix::zeros(&f, socle.cols(), socle.cols()); r])?;
    Ok((0..=top as i32).map(|n| hom.homology(n).dim()).collect())
}

fn homogeneous_degrees(basis: &Matrix, degrees: &[i32], guess: &[i32]) -> Result<Vec<i32>> {
    for c in 0..basis.cols() {
        if (0..basis.rows()).any(|i| basis.get(i, c) != 0 && degrees[i] != guess[c]) {
            return Err(Error::Verification("kernel basis is not homogeneous".into()));
        }
    }
    Ok(guess.to_vec())
}

/// Graded cyclic `Λ`-module `Λ / Λ·(ℓ_1, ..)` for homogeneous linear forms in the `ξ_i`,
/// shifted so its top sits in degree `shift`.
pub fn lambda_quotient(p: u32, r: usize, forms: &[Vec<u8>], shift: i32) -> Result<DgModule> {
    let reg = DgAlgebra::lambda(p, r)?.regular_module();
    let f = reg.field();
    let cols: Vec<Vec<u8>> = forms
        .iter()
        .map(|l| {
            let mut v = vec![0u8; 1 << r];
            for (i, &c) in l.iter().enumerate() {
                v[1 << i] = c;
            }
            v
        })
        .collect();
    let sub = reg.closure(&Matrix::from_columns(&f, 1 << r, &cols));
    Ok(reg.quotient(&sub)?.shift(-shift))
}

/// A small seeded dg `Λ`-module: sums of shifted cyclic quotients, and with
/// probability one half the cone of a random chain map between two of them.
pub fn random_lambda_module(rng: &mut impl Rng, p: u32, r: usize) -> Result<DgModule> {
    let cyclic = |rng: &mut dyn rand::RngCore| -> Result<DgModule> {
        let nforms = rng.gen_range(0..r);
        let forms: Vec<Vec<u8>> = (0..nforms).map(|_| (0..r).map(|_| rng.gen_range(0..p as u8)).collect()).collect();
        lambda_quotient(p, r, &forms, rng.gen_range(0..=2))
    };
    let a = cyclic(rng)?;
    let b = cyclic(rng)?;
    if rng.gen_bool(0.5) {
        return a.direct_sum(&b);
    }
    let maps = a.chain_maps(&b)?;
    let f = a.field();
    let mut map = Matrix::zeros(&f, b.dim(), a.dim());
    for g in &maps {
        map = map.add(&g.scaled(rng.gen_range(0..p as u8)));
    }
    DgModule::cone(&a, &b, &map)
}

/// A small seeded torsion dg `S`-module: `(S / (g_1, ..))` truncated to
/// polynomial degree `≤ t`, with zero differential.
pub fn random_torsion_s_module(rng: &mut impl Rng, p: u32, r: usize, t: usize) -> Result<DgModule> {
    let s = DgAlgebra::poly_s(p, r, 2 * t as i32)?;
    let reg = s.regular_module();
    let f = reg.field();
    let ngens = rng.gen_range(0..=2);
    let cols: Vec<Vec<u8>> = (0..ngens)
        .map(|_| {
            let deg = rng.gen_range(1..=2u32);
            let mut v = vec![0u8; reg.dim()];
            for (k, m) in s.basis().iter().enumerate() {
                if m.a.iter().sum::<u32>() == deg {
                    v[k] = rng.gen_range(0..p as u8);
                }
            }
            v
        })
        .collect();
    let sub = reg.closure(&Matrix::from_columns(&f, reg.dim(), &cols));
    reg.quotient(&sub)
}

/// `dim H^n` of a dg module for each degree in `lo..=hi`.
pub fn homology_dims_in(m: &DgModule, lo: i32, hi: i32) -> Vec<usize> {
    (lo..=hi).map(|n| m.homology(n).dim()).collect()
}

/// `H^n(J_m)` is `k` in degree 0 and vanishes in the other certified degrees.
pub fn truncated_j_is_resolution(j: &TruncatedJ) -> bool {
    let (lo, hi) = j.certified();
    (lo..=hi).all(|n| j.module.homology(n).dim() == (n == 0) as usize)
}

/// Span check used by tests: whether `v` lies in the column span of `m`.
pub fn in_span(m: &Matrix, v: &[u8]) -> bool {
    let mut space = RowSpace::new(m.field(), m.rows());
    for j in 0..m.cols() {
        space.insert(&m.column(j));
    }
    space.contains(v)
}

/// One named outcome of the BGG invariant suite.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub name: String,
    pub pass: bool,
    pub details: Vec<String>,
}

fn case(name: impl Into<String>, pass: bool, details: Vec<String>) -> SuiteCase {
    SuiteCase { name: name.into(), pass, details }
}

/// The BGG invariants at `(p, r)` inside the degree window `lo..=hi`, with
/// `S` truncated below polynomial degree `m`. The window must contain the
/// degrees `-r..=0` of `Λ`.
pub fn bgg_suite(p: u32, r: usize, window: (i32, i32), m: usize, seed: u64) -> Result<Vec<SuiteCase>> {
    let (lo, hi) = window;
    if lo > -(r as i32) || hi < 0 {
        return Err(Error::WindowTooSmall(format!("window {lo}..{hi} must contain {}..0", -(r as i32))));
    }
    if m < 2 {
        return Err(Error::WindowTooSmall("m must be at least 2".into()));
    }
    let mut out = Vec::new();

    let lambda = DgAlgebra::lambda(p, r)?;
    let a = DgAlgebra::koszul_a(p, r)?;
    let phi = phi_lambda_to_a(&lambda, &a)?;
    let qi = verify_quasi_iso(&lambda.regular_module(), &a.regular_module(), &phi, lo.max(-(r as i32)), hi.min(0))?;
    let expected_dims = qi.degrees.iter().all(|&(n, hs, _, _)| {
        let j = (-n) as usize;
        hs == (0..j).fold(1, |acc, i| acc * (r - i) / (i + 1))
    });
    out.push(case(
        "phi quasi-isomorphism",
        qi.pass && expected_dims,
        qi.degrees.iter().map(|(n, a, b, rk)| format!("H^{n}: {a} -> {b}, rank {rk}")).collect(),
    ));

    let j = build_truncated_j(p, r, m)?;
    let (clo, chi) = j.certified();
    let (clo, chi) = (clo.max(lo), chi.min(hi));
    let dims = homology_dims_in(&j.module, clo, chi);
    let resolves = dims.iter().enumerate().all(|(k, &d)| d == (clo + k as i32 == 0) as usize);
    out.push(case("J_m resolves k", resolves, vec![format!("H over {clo}..={chi}: {dims:?}")]));

    let top = chi.max(0) as usize;
    let ext = ext_a_hilbert(p, r, top)?;
    let ext_ok = ext.iter().enumerate().all(|(n, &d)| {
        d == if n % 2 == 0 { (0..r - 1).fold(1, |acc, i| acc * (n / 2 + r - 1 - i) / (i + 1)) } else { 0 }
    });
    out.push(case("Ext_A(k,k) dimensions", ext_ok, vec![format!("{ext:?}")]));

    let ring = s_ring(p, r)?;
    let k = DgModule::trivial(DgKind::Lambda, p, r);
    let sk = lambda_support(&k, m)?;
    out.push(case("support of k", sk.variety.equals(&Variety::everything(&ring))?, vec![sk.variety.to_string()]));
    let sl = lambda_support(&lambda.regular_module(), m)?;
    out.push(case("support of Λ", sl.variety.equals(&Variety::origin(&ring))?, vec![sl.variety.to_string()]));
    let mut first = vec![0u8; r];
    first[0] = 1;
    let q = lambda_quotient(p, r, &[first], 0)?;
    let sq = lambda_support(&q, m)?;
    let others: Vec<String> = (2..=r).map(|i| format!("x{i}")).collect();
    let others: Vec<&str> = others.iter().map(|s| s.as_str()).collect();
    out.push(case("support of Λ/(ξ1)", sq.variety.equals(&Variety::parse(&ring, &others)?)?, vec![sq.variety.to_string()]));

    for t in 0..4u64 {
        let mut rng = crate::random::stream(seed, "bgg/windows", t);
        let x = random_lambda_module(&mut rng, p, r)?;
        let v1 = lambda_support(&x, m)?;
        let v2 = lambda_support(&x, m + 2)?;
        out.push(case(format!("window agreement {t}"), v1.variety.equals(&v2.variety)?, vec![v1.variety.to_string(), v2.variety.to_string()]));
        let mut rng = crate::random::stream(seed, "bgg/roundtrip", t);
        let n = random_torsion_s_module(&mut rng, p, r, 2)?;
        let tn = tensor_s_j(&n)?;
        let h = hom_j(&tn, m)?;
        let (nlo, nhi) = n.degree_range().unwrap_or((0, 0));
        let same = homology_dims_in(&h.module, nlo, nhi) == homology_dims_in(&n, nlo, nhi);
        let sup = lambda_support(&tn, m)?.variety.equals(&s_support(&n)?)?;
        out.push(case(format!("round trip {t}"), same && sup, vec![]));
    }
    Ok(out)
}

#[cfg(test)]
mod suite_tests {
    use super::*;

    #[test]
    fn suite_passes_and_rejects_small_windows() {
        let cases = bgg_suite(2, 2, (-8, 8), 6, 42).unwrap();
        assert!(cases.iter().all(|c| c.pass), "{cases:?}");
        assert!(matches!(bgg_suite(2, 2, (-1, 8), 6, 42), Err(Error::WindowTooSmall(_))));
    }
}
