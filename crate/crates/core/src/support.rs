//! Support varieties of modules over elementary abelian groups, the rank
//! variety used as an independent check, and checkers for the support calculus.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ext::{ext_presentation, ExtPresentation, Presentation};
use crate::ideal::{fitting_ideal_0, minor_count, symbolic_minors, Ideal, PolyMatrix, RingMap};
use crate::field::{Field, MAX_ORDER};
use crate::matrix::{Matrix, RowSpace};
use crate::module::{FdModule, Hopf, SubgroupEmbedding};
use crate::pgroup::GroupModule;
use crate::poly::{mono_mul, Monomial, Polynomial, RingRef};
use crate::random::{random_matrix, stream};
use crate::resolution::{koszul_module, CohomRing, Cocycle};

/// Anything that names a polynomial ring a variety can live in.
pub trait AsPolyRing {
    fn poly_ring(&self) -> &RingRef;
}

impl AsPolyRing for CohomRing {
    fn poly_ring(&self) -> &RingRef {
        self.ring()
    }
}

impl AsPolyRing for RingRef {
    fn poly_ring(&self) -> &RingRef {
        self
    }
}

/// A closed conic subvariety of `Spec` of a graded polynomial ring (usually
/// `H*(E, k)_red`), stored as any ideal with the right radical.
#[derive(Clone, Debug)]
pub struct Variety {
    ring: RingRef,
    ideal: Ideal,
}

impl Variety {
    pub fn new(ring: &impl AsPolyRing, ideal: Ideal) -> Result<Variety> {
        if ideal.ring() != ring.poly_ring() {
            return Err(Error::RingMismatch);
        }
        Ok(Variety { ring: ring.poly_ring().clone(), ideal })
    }

    /// `V(0)`, the whole space.
    pub fn everything(ring: &impl AsPolyRing) -> Variety {
        Variety { ring: ring.poly_ring().clone(), ideal: Ideal::zero(ring.poly_ring()) }
    }

    /// `V(x_1, .., x_r)`, the irrelevant point.
    pub fn origin(ring: &impl AsPolyRing) -> Variety {
        Variety { ring: ring.poly_ring().clone(), ideal: Ideal::irrelevant(ring.poly_ring()) }
    }

    pub fn parse(ring: &impl AsPolyRing, generators: &[&str]) -> Result<Variety> {
        Variety::new(ring, Ideal::parse(ring.poly_ring(), generators)?)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    fn same_ring(&self, other: &Variety) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Variety) -> Result<Variety> {
        self.same_ring(other)?;
        Ok(Variety { ring: self.ring.clone(), ideal: self.ideal.sum(&other.ideal)? })
    }

    pub fn union(&self, other: &Variety) -> Result<Variety> {
        self.same_ring(other)?;
        Ok(Variety { ring: self.ring.clone(), ideal: self.ideal.intersection(&other.ideal)? })
    }

    pub fn equals(&self, other: &Variety) -> Result<bool> {
        self.same_ring(other)?;
        self.ideal.same_radical(&other.ideal)
    }

    /// `other ⊆ self`: every generator of our ideal vanishes on `other`.
    pub fn contains(&self, other: &Variety) -> Result<bool> {
        self.same_ring(other)?;
        for g in self.ideal.generators() {
            if !other.ideal.contains_radical(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Empty in `Proj`: every variable lies in the radical.
    pub fn is_proj_empty(&self) -> Result<bool> {
        for i in 0..self.ring.nvars() {
            if !self.ideal.contains_radical(&Polynomial::var(&self.ring, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generators of the reduced Gröbner basis, as text.
    pub fn generator_strings(&self) -> Vec<String> {
        self.ideal.groebner().iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({})", self.generator_strings().join(", "))
    }
}

/// How many cohomological degrees of `Ext*(k, M)` to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Start from [`auto_truncation`] and double (at most twice) while unstable.
    Auto,
    Fixed(usize),
}

/// How the support ideal was extracted from the presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealMethod {
    /// No generators: the stable module is zero.
    Projective,
    Fitting,
    Annihilator,
}

#[derive(Clone, Debug)]
pub struct Support {
    pub variety: Variety,
    pub truncation: usize,
    pub stable: bool,
    pub method: IdealMethod,
}

/// Largest Fitting computation attempted before switching to the annihilator.
pub const FITTING_MINOR_LIMIT: u128 = 2000;

/// Starting truncation for a module (after free summands are split off).
pub fn auto_truncation(m: &FdModule) -> usize {
    let g = crate::resolution::gen_degree(m.p()) as usize;
    g * (m.rank() + 2)
}

/// The support ideal of a presentation: the Fitting ideal when it is cheap,
/// otherwise the degreewise annihilator. Both have the same radical. A module
/// with no generators gives the irrelevant ideal.
pub fn presentation_support_ideal(pres: &Presentation) -> Result<(Ideal, IdealMethod)> {
    let ring = pres.ring();
    let n = pres.generator_degrees().len();
    if n == 0 {
        return Ok((Ideal::irrelevant(ring), IdealMethod::Projective));
    }
    let rel = pres.relations();
    let (ideal, method) = if minor_count(rel.rows(), rel.cols(), n) <= FITTING_MINOR_LIMIT {
        (fitting_ideal_0(rel, n)?, IdealMethod::Fitting)
    } else {
        (pres.annihilator(), IdealMethod::Annihilator)
    };
    if ideal.is_unit() {
        return Ok((Ideal::irrelevant(ring), method));
    }
    Ok((ideal, method))
}

/// The support ideal of an `Ext` presentation.
pub fn support_ideal(ext: &ExtPresentation) -> Result<(Ideal, IdealMethod)> {
    presentation_support_ideal(&ext.presentation)
}

pub fn support_of_module(m: &FdModule, truncation: Truncation) -> Result<Support> {
    let ring = CohomRing::new(m.algebra());
    let core = m.projective_free_core();
    if core.dim() == 0 {
        return Ok(Support {
            variety: Variety::origin(&ring),
            truncation: 0,
            stable: true,
            method: IdealMethod::Projective,
        });
    }
    let (mut d, doublings) = match truncation {
        Truncation::Auto => (auto_truncation(&core), 2),
        Truncation::Fixed(d) => (d, 0),
    };
    let mut ext = ext_presentation(&core, d)?;
    for _ in 0..doublings {
        if ext.stable {
            break;
        }
        d *= 2;
        ext = ext_presentation(&core, d)?;
    }
    let (ideal, method) = support_ideal(&ext)?;
    Ok(Support { variety: Variety::new(&ring, ideal)?, truncation: d, stable: ext.stable, method })
}

/// Support with automatic truncation.
pub fn support(m: &FdModule) -> Result<Variety> {
    Ok(support_of_module(m, Truncation::Auto)?.variety)
}

fn multinomial_mod_p(p: u32, c: &[u16]) -> u32 {
    // (p-1)! / prod c_i! with every c_i < p
    let fact = |n: u32| (1..=n).fold(1u64, |acc, k| acc * k as u64 % p as u64);
    let num = fact(c.iter().map(|&e| e as u32).sum());
    let den = c.iter().fold(1u64, |acc, &e| acc * fact(e as u32) % p as u64);
    (num * crate::poly::inv_mod(den as u32, p) as u64 % p as u64) as u32
}

/// Largest oracle minor computation done exactly; beyond it minors are sampled
/// through random Cauchy–Binet projections.
pub const ORACLE_MINOR_LIMIT: u128 = 20_000;

/// The rank variety: directions `α` along which `M` is not free over
/// `k[u_α]/(u_α^p)`, cut out by the `dim/p` minors of `(Σ x_i Z_i)^{p-1}`.
pub fn rank_variety_oracle(m: &FdModule) -> Result<Variety> {
    let alg = m.algebra();
    let ring = CohomRing::new(alg);
    let p = alg.p();
    let n = m.dim();
    if n == 0 {
        return Ok(Variety::origin(&ring));
    }
    if n % p as usize != 0 {
        return Ok(Variety::everything(&ring));
    }
    let t = n / p as usize;
    let f = m.field();
    let mons: Vec<Monomial> = ring.ring().monomials_of_degree((p - 1) * ring.gen_degree());
    let coeffs: Vec<Matrix> = mons
        .iter()
        .map(|c| {
            let a: Vec<u32> = c.iter().map(|&e| e as u32).collect();
            m.monomial_action(&a).scaled(multinomial_mod_p(p, c) as u8)
        })
        .collect();
    // restrict to independent rows and columns of the span; the minor ideal is unchanged
    let mut tall = Matrix::zeros(&f, 0, n);
    let mut wide = Matrix::zeros(&f, n, 0);
    for c in &coeffs {
        tall = tall.vstack(c);
        wide = wide.hstack(c);
    }
    let rows = wide.transpose().independent_columns();
    let cols = tall.independent_columns();
    if t > rows.len().min(cols.len()) {
        return Ok(Variety::everything(&ring));
    }
    let reduced: Vec<Matrix> = coeffs.iter().map(|c| c.select_rows(&rows).select_columns(&cols)).collect();
    let to_poly = |mats: &[Matrix]| -> PolyMatrix {
        let (nr, nc) = (mats[0].rows(), mats[0].cols());
        let mut pm = PolyMatrix::zeros(ring.ring(), nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                let terms = mons.iter().zip(mats).map(|(c, a)| (c.clone(), a.get(i, j) as u32));
                pm.set(i, j, Polynomial::from_terms(ring.ring(), terms));
            }
        }
        pm
    };
    let ideal = if minor_count(rows.len(), cols.len(), t) <= ORACLE_MINOR_LIMIT {
        symbolic_minors(&to_poly(&reduced), t)?
    } else {
        sampled_minors(ring.ring(), &mons, &reduced, t)?
    };
    Variety::new(&ring, ideal)
}

/// Homogeneous forms of fixed degrees in `r` variables as dense coefficient
/// vectors over a possibly non-prime field.
struct DenseForms {
    monos: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl DenseForms {
    fn new(ring: &RingRef, top: u32) -> DenseForms {
        let w = ring.weights()[0];
        let monos: Vec<Vec<Monomial>> = (0..=top).map(|d| ring.monomials_of_degree(d * w)).collect();
        let index = monos.iter().map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()).collect();
        DenseForms { monos, index }
    }

    fn mul(&self, f: &Field, a: &[u8], da: usize, b: &[u8], db: usize) -> Vec<u8> {
        let mut out = vec![0u8; self.monos[da + db].len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    let m = mono_mul(&self.monos[da][i], &self.monos[db][j]);
                    let k = self.index[da + db][&m];
                    out[k] = f.add(out[k], f.mul(x, y));
                }
            }
        }
        out
    }
}

/// Determinant of a `t × t` matrix of forms of degree `e`, by Laplace
/// expansion memoized on the remaining columns.
fn dense_det(f: &Field, forms: &DenseForms, entries: &[Vec<Vec<u8>>], e: usize) -> Vec<u8> {
    let t = entries.len();
    let mut memo: HashMap<u64, Vec<u8>> = HashMap::new();
    fn rec(
        f: &Field,
        forms: &DenseForms,
        entries: &[Vec<Vec<u8>>],
        e: usize,
        cols: u64,
        memo: &mut HashMap<u64, Vec<u8>>,
    ) -> Vec<u8> {
        let t = entries.len();
        let row = t - cols.count_ones() as usize;
        if row == t {
            return vec![1];
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let deg = (t - row) * e;
        let mut acc = vec![0u8; forms.monos[deg].len()];
        let mut neg = false;
        for c in 0..t {
            if cols & (1 << c) == 0 {
                continue;
            }
            let sub = rec(f, forms, entries, e, cols & !(1 << c), memo);
            let term = forms.mul(f, &entries[row][c], e, &sub, deg - e);
            f.axpy(&mut acc, &term, if neg { f.neg(1) } else { 1 });
            neg = !neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(f, forms, entries, e, (1u64 << t) - 1, &mut memo)
}

/// Span of `det(P U Q)` for random `P`, `Q` over a large extension of `F_p`.
/// By Cauchy–Binet every sample lies in the span of the `t`-minors of `U`, and a
/// sample misses a proper subspace with probability at least `1 - 2t/q`. The
/// span is defined over `F_p`, so its reduced echelon basis is too.
fn sampled_minors(ring: &RingRef, mons: &[Monomial], coeffs: &[Matrix], t: usize) -> Result<Ideal> {
    let p = ring.p();
    let e = (1..).take_while(|&e| p.pow(e) <= MAX_ORDER).last().unwrap();
    let fq = Field::with_order(p, e)?;
    let e_deg = (p - 1) as usize;
    let forms = DenseForms::new(ring, (t * e_deg) as u32);
    let lifted: Vec<Matrix> =
        coeffs.iter().map(|a| Matrix::from_fn(&fq, a.rows(), a.cols(), |i, j| a.get(i, j))).collect();
    let (nr, nc) = (coeffs[0].rows(), coeffs[0].cols());
    let target = forms.monos[t * e_deg].len();
    let mut rng = stream(0, "oracle-minors", (nr * 64 + nc) as u64);
    let mut span = RowSpace::new(&fq, target);
    let mut misses = 0;
    while misses < 24 && span.dim() < target {
        let pm = random_matrix(&mut rng, &fq, t, nr);
        let qm = random_matrix(&mut rng, &fq, nc, t);
        let projected: Vec<Matrix> = lifted.iter().map(|a| pm.mul(a).mul(&qm)).collect();
        let entries: Vec<Vec<Vec<u8>>> = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| {
                        let mut v = vec![0u8; forms.monos[e_deg].len()];
                        for (c, b) in mons.iter().zip(&projected) {
                            v[forms.index[e_deg][c]] = b.get(i, j);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        if span.insert(&dense_det(&fq, &forms, &entries, e_deg)) {
            misses = 0;
        } else {
            misses += 1;
        }
    }
    let mut gens = Vec::new();
    if span.dim() > 0 {
        let basis = Matrix::from_rows(&fq, &span.basis().iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect::<Vec<_>>())?;
        let ech = basis.rref();
        for row in ech.reduced.to_rows().iter().take(ech.pivots.len()) {
            if row.iter().any(|&x| x as u32 >= p) {
                return Err(Error::Verification("sampled minor span is not defined over the prime field".into()));
            }
            let terms = row.iter().enumerate().map(|(k, &x)| (forms.monos[t * e_deg][k].clone(), x as u32));
            gens.push(Polynomial::from_terms(ring, terms));
        }
    }
    Ideal::new(ring, gens)
}

/// A pass/fail record for one theorem check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: &'static str,
    pub varieties: Vec<(String, Variety)>,
    pub truncations: Vec<usize>,
    pub pass: bool,
}

impl CheckReport {
    pub fn variety(&self, name: &str) -> Option<&Variety> {
        self.varieties.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// `V(M ⊗ N) = V(M) ∩ V(N)`.
pub fn check_tensor(m: &FdModule, n: &FdModule, hopf: Hopf) -> Result<CheckReport> {
    let sm = support_of_module(m, Truncation::Auto)?;
    let sn = support_of_module(n, Truncation::Auto)?;
    let st = support_of_module(&m.tensor(n, hopf)?, Truncation::Auto)?;
    let expected = sm.variety.intersect(&sn.variety)?;
    let pass = st.variety.equals(&expected)?;
    Ok(CheckReport {
        check: "tensor",
        varieties: vec![
            ("M".into(), sm.variety),
            ("N".into(), sn.variety),
            ("M⊗N".into(), st.variety),
            ("expected".into(), expected),
        ],
        truncations: vec![sm.truncation, sn.truncation, st.truncation],
        pass,
    })
}

/// Restriction in cohomology along `E' → E`: `x_j ↦ Σ_i B_ji x'_i`.
pub fn restriction_map(e: &SubgroupEmbedding) -> Result<RingMap> {
    let p = e.p();
    let target = CohomRing::new(crate::module::ElementaryAbelian::new(p, e.target_rank())?);
    let source = CohomRing::new(crate::module::ElementaryAbelian::new(p, e.source_rank())?);
    let b = e.matrix();
    let images = (0..e.target_rank())
        .map(|j| {
            let terms = (0..e.source_rank()).map(|i| {
                let mut mono = vec![0u16; e.source_rank()];
                mono[i] = 1;
                (mono, b.get(j, i) as u32)
            });
            Polynomial::from_terms(source.ring(), terms)
        })
        .collect();
    RingMap::new(target.ring(), source.ring(), images)
}

/// `V_{E'}(M↓) = (res*)^{-1} V_E(M)`.
pub fn check_subgroup(m: &FdModule, e: &SubgroupEmbedding) -> Result<CheckReport> {
    let sm = support_of_module(m, Truncation::Auto)?;
    let restricted = m.restrict(e)?;
    let sr = support_of_module(&restricted, Truncation::Auto)?;
    let f = restriction_map(e)?;
    let sub_ring = CohomRing::new(restricted.algebra());
    let expected = Variety::new(&sub_ring, f.apply(sm.variety.ideal())?)?;
    let pass = sr.variety.equals(&expected)?;
    Ok(CheckReport {
        check: "subgroup",
        varieties: vec![("M".into(), sm.variety), ("M↓".into(), sr.variety), ("expected".into(), expected)],
        truncations: vec![sm.truncation, sr.truncation],
        pass,
    })
}

/// `V_E(N↑) = res*(V_{E'}(N))`.
pub fn check_induction(n: &FdModule, e: &SubgroupEmbedding) -> Result<CheckReport> {
    let sn = support_of_module(n, Truncation::Auto)?;
    let induced = n.induce(e)?;
    let si = support_of_module(&induced, Truncation::Auto)?;
    let f = restriction_map(e)?;
    let ring = CohomRing::new(induced.algebra());
    let expected = Variety::new(&ring, f.kernel_mod(sn.variety.ideal())?)?;
    let pass = si.variety.equals(&expected)?;
    Ok(CheckReport {
        check: "induction",
        varieties: vec![("N".into(), sn.variety), ("N↑".into(), si.variety), ("expected".into(), expected)],
        truncations: vec![sn.truncation, si.truncation],
        pass,
    })
}

/// Support computed from `Ext` agrees with the rank variety.
pub fn check_oracle(m: &FdModule) -> Result<CheckReport> {
    let s = support_of_module(m, Truncation::Auto)?;
    let oracle = rank_variety_oracle(m)?;
    let pass = s.variety.equals(&oracle)?;
    Ok(CheckReport {
        check: "oracle",
        varieties: vec![("support".into(), s.variety), ("rank".into(), oracle)],
        truncations: vec![s.truncation],
        pass,
    })
}

/// `M` is projective exactly when its support is empty in `Proj`.
pub fn check_projectivity(m: &FdModule) -> Result<CheckReport> {
    let s = support_of_module(m, Truncation::Auto)?;
    let pass = s.variety.is_proj_empty()? == m.is_projective();
    Ok(CheckReport { check: "projectivity", varieties: vec![("M".into(), s.variety)], truncations: vec![s.truncation], pass })
}

/// The reduced polynomial of a class of degree [`CohomRing::gen_degree`] (or
/// any degree at `p = 2`), dropping nilpotent parts.
pub fn cocycle_polynomial(zeta: &Cocycle) -> Result<Polynomial> {
    let alg = zeta.algebra();
    let ring = CohomRing::new(alg);
    let idx = crate::resolution::multi_indices(alg.rank(), zeta.degree());
    let terms: Vec<(Monomial, u32)> = if alg.p() == 2 {
        idx.iter().zip(zeta.values()).map(|(a, &v)| (a.iter().map(|&e| e as u16).collect(), v as u32)).collect()
    } else if zeta.degree() == 2 {
        idx.iter()
            .zip(zeta.values())
            .filter(|(a, _)| a.iter().any(|&e| e == 2))
            .map(|(a, &v)| (a.iter().map(|&e| (e / 2) as u16).collect(), v as u32))
            .collect()
    } else {
        return Err(Error::InvalidCocycle("only degree-2 classes are supported at odd p".into()));
    };
    Ok(Polynomial::from_terms(ring.ring(), terms))
}

/// `V(M ⊗ L_ζ) = V(M) ∩ V(ζ)`.
pub fn check_koszul(m: &FdModule, zeta: &Cocycle) -> Result<CheckReport> {
    let sm = support_of_module(m, Truncation::Auto)?;
    let mk = koszul_module(m, zeta)?;
    let sk = support_of_module(&mk, Truncation::Auto)?;
    let ring = sm.variety.ring().clone();
    let vz = Variety::new(&ring, Ideal::new(&ring, vec![cocycle_polynomial(zeta)?])?)?;
    let expected = sm.variety.intersect(&vz)?;
    let pass = sk.variety.equals(&expected)?;
    Ok(CheckReport {
        check: "koszul",
        varieties: vec![("M".into(), sm.variety), ("M⊗L".into(), sk.variety), ("expected".into(), expected)],
        truncations: vec![sm.truncation, sk.truncation],
        pass,
    })
}

/// Projectivity over `G` is detected on the given elementary abelian subgroups.
#[derive(Clone, Debug)]
pub struct ChouinardReport {
    pub projective: bool,
    pub restricted_projective: Vec<bool>,
    pub pass: bool,
}

pub fn check_chouinard(m: &GroupModule, subgroups: &[Vec<usize>]) -> Result<ChouinardReport> {
    if subgroups.is_empty() {
        return Err(Error::NotElementaryAbelian("no subgroups given".into()));
    }
    let projective = m.is_projective();
    let restricted_projective =
        subgroups.iter().map(|gens| Ok(m.restrict(gens)?.is_projective())).collect::<Result<Vec<_>>>()?;
    let pass = projective == restricted_projective.iter().all(|&b| b);
    Ok(ChouinardReport { projective, restricted_projective, pass })
}

/// `M` lies in the thick subcategory of modules supported in `v`.
pub fn thick_membership(m: &FdModule, v: &Variety) -> Result<bool> {
    v.contains(&support(m)?)
}
