//! Graded modules over polynomial rings known in a finite window of degrees,
//! their presentations and annihilators, and `Ext*(k, M)` as such a module.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{Ideal, PolyMatrix};
use crate::matrix::{Matrix, RowSpace};
use crate::module::FdModule;
use crate::poly::{Monomial, Polynomial, RingRef};
use crate::resolution::{gen_degree, multi_indices, CohomRing, ResolutionOfK};

/// A graded module over `ring` in degrees `lo..=hi`, given by a basis dimension
/// per degree and the action of each variable between degrees.
#[derive(Clone, Debug)]
pub struct GradedModule {
    ring: RingRef,
    field: Field,
    lo: i32,
    hi: i32,
    dims: Vec<usize>,
    /// `actions[n - lo][i]` maps degree `n` to degree `n + w_i`; absent past `hi`.
    actions: Vec<Vec<Option<Matrix>>>,
}

impl GradedModule {
    pub fn new(ring: &RingRef, lo: i32, hi: i32, dims: Vec<usize>, actions: Vec<Vec<Option<Matrix>>>) -> Result<Self> {
        let field = Field::prime(ring.p())?;
        let len = (hi - lo + 1).max(0) as usize;
        if dims.len() != len || actions.len() != len {
            return Err(Error::DimensionMismatch(format!("window {lo}..={hi} needs {len} degrees")));
        }
        for (k, acts) in actions.iter().enumerate() {
            if acts.len() != ring.nvars() {
                return Err(Error::DimensionMismatch("one action per variable required".into()));
            }
            for (i, a) in acts.iter().enumerate() {
                let t = k + ring.weights()[i] as usize;
                match (a, t < len) {
                    (Some(m), true) if m.rows() == dims[t] && m.cols() == dims[k] => {}
                    (None, false) => {}
                    _ => return Err(Error::DimensionMismatch(format!("action of x{} in degree {}", i + 1, lo + k as i32))),
                }
            }
        }
        Ok(GradedModule { ring: ring.clone(), field, lo, hi, dims, actions })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn window(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }
    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn action(&self, i: usize, n: i32) -> Option<&Matrix> {
        if n < self.lo || n > self.hi {
            return None;
        }
        self.actions[(n - self.lo) as usize][i].as_ref()
    }

    /// Whether the variable actions commute wherever both composites are defined.
    pub fn actions_commute(&self) -> bool {
        let r = self.ring.nvars();
        for n in self.lo..=self.hi {
            for i in 0..r {
                for j in i + 1..r {
                    let wi = self.ring.weights()[i] as i32;
                    let wj = self.ring.weights()[j] as i32;
                    let a = self.action(i, n).zip(self.action(j, n + wi)).map(|(x, y)| y.mul(x));
                    let b = self.action(j, n).zip(self.action(i, n + wj)).map(|(x, y)| y.mul(x));
                    if let (Some(a), Some(b)) = (a, b) {
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Images `x^c · v` of a degree-`n` element for every monomial `c` with
    /// `n + deg c ≤ hi`.
    fn orbit(&self, n: i32, v: &[u8]) -> HashMap<Monomial, Vec<u8>> {
        let r = self.ring.nvars();
        let mut out: HashMap<Monomial, Vec<u8>> = HashMap::new();
        out.insert(vec![0; r], v.to_vec());
        for d in 1..=(self.hi - n).max(0) as u32 {
            for c in self.ring.monomials_of_degree(d) {
                let i = c.iter().rposition(|&e| e > 0).unwrap();
                let mut prev = c.clone();
                prev[i] -= 1;
                let pd = n + self.ring.weighted_degree(&prev) as i32;
                let img = self.action(i, pd).unwrap().mul_vec(&out[&prev]);
                out.insert(c, img);
            }
        }
        out
    }

    /// Minimal homogeneous presentation of the module as far as the window sees it.
    pub fn present(&self) -> Presentation {
        let f = &self.field;
        let mut gens: Vec<(i32, HashMap<Monomial, Vec<u8>>)> = Vec::new();
        let mut relations: Vec<(i32, Vec<(usize, Monomial, u8)>)> = Vec::new();
        for n in self.lo..=self.hi {
            // basis of F_n: (generator, monomial)
            let mut fbasis: Vec<(usize, Monomial)> = Vec::new();
            for (j, (dj, _)) in gens.iter().enumerate() {
                if *dj <= n {
                    for c in self.ring.monomials_of_degree((n - dj) as u32) {
                        fbasis.push((j, c));
                    }
                }
            }
            let fpos: HashMap<(usize, Monomial), usize> =
                fbasis.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect();
            let hn = self.dim(n);
            let cols: Vec<Vec<u8>> = fbasis.iter().map(|(j, c)| gens[*j].1[c].clone()).collect();
            let image = Matrix::from_columns(f, hn, &cols);

            // relations: kernel modulo multiples of earlier relations
            let mut old = RowSpace::new(f, fbasis.len());
            for (dr, rel) in &relations {
                if *dr >= n {
                    continue;
                }
                for b in self.ring.monomials_of_degree((n - dr) as u32) {
                    let mut v = vec![0u8; fbasis.len()];
                    for (j, c, coeff) in rel {
                        let key = (*j, c.iter().zip(&b).map(|(x, y)| x + y).collect::<Monomial>());
                        v[fpos[&key]] = *coeff;
                    }
                    old.insert(&v);
                }
            }
            let ker = image.kernel();
            for k in 0..ker.cols() {
                let v = ker.column(k);
                if old.insert(&v) {
                    let rel = v
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(idx, &x)| (fbasis[idx].0, fbasis[idx].1.clone(), x))
                        .collect();
                    relations.push((n, rel));
                }
            }

            // generators: complement of the image
            let mut span = RowSpace::new(f, hn);
            for c in &cols {
                span.insert(c);
            }
            for k in 0..hn {
                let mut e = vec![0u8; hn];
                e[k] = 1;
                if span.insert(&e) {
                    gens.push((n, self.orbit(n, &e)));
                }
            }
        }

        let ring = &self.ring;
        let mut matrix = PolyMatrix::zeros(ring, gens.len(), 0);
        for (_, rel) in &relations {
            let mut col = vec![Polynomial::zero(ring); gens.len()];
            for (j, c, coeff) in rel {
                col[*j] = col[*j].add(&Polynomial::term(ring, c.clone(), *coeff as i64));
            }
            matrix.push_column(col);
        }
        Presentation {
            ring: ring.clone(),
            window: (self.lo, self.hi),
            generator_degrees: gens.iter().map(|g| g.0).collect(),
            relation_degrees: relations.iter().map(|r| r.0).collect(),
            relations: matrix,
            generator_orbits: gens.into_iter().map(|g| g.1).collect(),
        }
    }
}

/// A homogeneous presentation `⊕ R(-d_j) ← ⊕ R(-e_k)` found inside a window.
#[derive(Clone, Debug)]
pub struct Presentation {
    ring: RingRef,
    window: (i32, i32),
    generator_degrees: Vec<i32>,
    relation_degrees: Vec<i32>,
    /// Rows are generators, columns relations.
    relations: PolyMatrix,
    generator_orbits: Vec<HashMap<Monomial, Vec<u8>>>,
}

impl Presentation {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn generator_degrees(&self) -> &[i32] {
        &self.generator_degrees
    }
    pub fn relation_degrees(&self) -> &[i32] {
        &self.relation_degrees
    }
    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// No generator or relation appears in the top third of the window.
    pub fn is_stable(&self) -> bool {
        let (lo, hi) = self.window;
        let cut = hi - (hi - lo + 1) / 3;
        self.generator_degrees.iter().chain(&self.relation_degrees).all(|&d| d <= cut)
    }

    /// Dimension of the cokernel in degree `n`, from the presentation alone.
    pub fn hilbert(&self, n: i32) -> usize {
        let f = Field::prime(self.ring.p()).unwrap();
        let mut fbasis: Vec<(usize, Monomial)> = Vec::new();
        for (j, &dj) in self.generator_degrees.iter().enumerate() {
            if dj <= n {
                for c in self.ring.monomials_of_degree((n - dj) as u32) {
                    fbasis.push((j, c));
                }
            }
        }
        let pos: HashMap<(usize, Monomial), usize> = fbasis.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
        let mut span = RowSpace::new(&f, fbasis.len());
        for (k, &dr) in self.relation_degrees.iter().enumerate() {
            if dr > n {
                continue;
            }
            for b in self.ring.monomials_of_degree((n - dr) as u32) {
                let mut v = vec![0u8; fbasis.len()];
                for j in 0..self.generator_degrees.len() {
                    for (c, coeff) in self.relations.get(j, k).terms() {
                        let key = (j, c.iter().zip(&b).map(|(x, y)| x + y).collect::<Monomial>());
                        v[pos[&key]] = f.add(v[pos[&key]], *coeff as u8);
                    }
                }
                span.insert(&v);
            }
        }
        fbasis.len() - span.dim()
    }

    /// Elements of `R_d` killing every generator, for `d` up to the top of the
    /// window minus the largest generator degree, as an ideal.
    pub fn annihilator(&self) -> Ideal {
        let ring = &self.ring;
        let f = Field::prime(ring.p()).unwrap();
        if self.generator_degrees.is_empty() {
            return Ideal::unit(ring);
        }
        let top = *self.generator_degrees.iter().max().unwrap();
        let mut gens = Vec::new();
        for d in 0..=(self.window.1 - top).max(0) as u32 {
            let mons = ring.monomials_of_degree(d);
            if mons.is_empty() {
                continue;
            }
            let cols: Vec<Vec<u8>> = mons
                .iter()
                .map(|c| self.generator_orbits.iter().flat_map(|orb| orb[c].iter().copied()).collect())
                .collect();
            let rows = cols[0].len();
            let m = Matrix::from_columns(&f, rows, &cols);
            let ker = m.kernel();
            for k in 0..ker.cols() {
                let v = ker.column(k);
                let poly = Polynomial::from_terms(
                    ring,
                    v.iter().zip(&mons).filter(|(x, _)| **x != 0).map(|(x, c)| (c.clone(), *x as u32)),
                );
                gens.push(poly);
            }
        }
        Ideal::new(ring, gens).unwrap().compressed()
    }
}

/// `Ext^n(k, M)` for `n = 0..=top` as a graded module over the reduced
/// cohomology ring, computed from the explicit resolution of `k`.
pub fn ext_module(m: &FdModule, top: usize) -> Result<GradedModule> {
    let alg = m.algebra();
    let cr = CohomRing::new(alg);
    let f = m.field();
    let r = alg.rank();
    let dim = m.dim();
    let res = ResolutionOfK::new(alg);
    let g = gen_degree(alg.p()) as usize;
    let index: Vec<Vec<Vec<u32>>> = (0..=top + 1).map(|n| multi_indices(r, n)).collect();
    let pos: Vec<HashMap<&Vec<u32>, usize>> =
        index.iter().map(|v| v.iter().enumerate().map(|(i, a)| (a, i)).collect()).collect();
    let powers: Vec<Vec<Matrix>> =
        m.actions().iter().map(|z| (0..alg.p()).map(|e| z.pow(e)).collect()).collect();

    // δ^n : C^n → C^{n+1}, (δf)_a = Σ ± Z_i^w f_{a - ε_i}
    let coboundary = |n: usize| -> Matrix {
        let mut d = Matrix::zeros(&f, index[n + 1].len() * dim, index[n].len() * dim);
        for (ai, a) in index[n + 1].iter().enumerate() {
            for t in res.boundary_terms(a) {
                let bi = pos[n][&t.target];
                let block = &powers[t.var][t.power as usize];
                for x in 0..dim {
                    for y in 0..dim {
                        let v = block.get(x, y);
                        if v != 0 {
                            let v = if t.negative { f.neg(v) } else { v };
                            let (row, col) = (ai * dim + x, bi * dim + y);
                            d.set(row, col, f.add(d.get(row, col), v));
                        }
                    }
                }
            }
        }
        d
    };

    let mut spaces: Vec<(RowSpace, usize)> = Vec::with_capacity(top + 1);
    let mut prev_boundary: Option<Matrix> = None;
    for n in 0..=top {
        let dn = coboundary(n);
        let cocycles = dn.kernel();
        let mut space = RowSpace::new(&f, index[n].len() * dim);
        if let Some(b) = &prev_boundary {
            for j in b.independent_columns() {
                space.insert(&b.column(j));
            }
        }
        let nb = space.dim();
        for j in 0..cocycles.cols() {
            space.insert(&cocycles.column(j));
        }
        spaces.push((space, nb));
        prev_boundary = Some(dn);
    }

    let dims: Vec<usize> = spaces.iter().map(|(s, nb)| s.dim() - nb).collect();
    let mut actions = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut acts = Vec::with_capacity(r);
        for i in 0..r {
            if n + g > top {
                acts.push(None);
                continue;
            }
            let (src, nb) = &spaces[n];
            let (tgt, tb) = &spaces[n + g];
            let mut cols = Vec::with_capacity(dims[n]);
            for rep in &src.basis()[*nb..] {
                // (x_i f)_a = f_{a - g ε_i}
                let mut out = vec![0u8; index[n + g].len() * dim];
                for (ai, a) in index[n + g].iter().enumerate() {
                    if a[i] as usize >= g {
                        let mut b = a.clone();
                        b[i] -= g as u32;
                        let bi = pos[n][&b];
                        out[ai * dim..(ai + 1) * dim].copy_from_slice(&rep[bi * dim..(bi + 1) * dim]);
                    }
                }
                let coeffs = tgt.reduce(&mut out);
                if out.iter().any(|&x| x != 0) {
                    return Err(Error::Verification(format!("x{} of a cocycle is not a cocycle", i + 1)));
                }
                cols.push(coeffs[*tb..].to_vec());
            }
            acts.push(Some(Matrix::from_columns(&f, dims[n + g], &cols)));
        }
        actions.push(acts);
    }
    GradedModule::new(cr.ring(), 0, top as i32, dims, actions)
}

/// A presentation of `Ext^{≤D}(k, M)` over the reduced cohomology ring.
#[derive(Clone, Debug)]
pub struct ExtPresentation {
    pub ring: CohomRing,
    pub presentation: Presentation,
    pub truncation: usize,
    pub stable: bool,
    /// `dim Ext^n(k, M)` for `n = 0..=D`.
    pub hilbert: Vec<usize>,
}

impl ExtPresentation {
    pub fn generator_degrees(&self) -> &[i32] {
        self.presentation.generator_degrees()
    }
    pub fn relations(&self) -> &PolyMatrix {
        self.presentation.relations()
    }
}

/// Presentation of `Ext^{≤D}(k, M)` after splitting off free summands; a
/// projective `M` gives the zero module.
pub fn ext_presentation(m: &FdModule, truncation: usize) -> Result<ExtPresentation> {
    if truncation < 1 {
        return Err(Error::Config("truncation degree must be at least 1".into()));
    }
    let ring = CohomRing::new(m.algebra());
    let core = m.projective_free_core();
    let module = if core.dim() == 0 {
        GradedModule::new(ring.ring(), 0, truncation as i32, vec![0; truncation + 1], {
            let r = m.rank();
            let g = ring.gen_degree() as usize;
            let f = m.field();
            (0..=truncation)
                .map(|n| (0..r).map(|_| (n + g <= truncation).then(|| Matrix::zeros(&f, 0, 0))).collect())
                .collect()
        })?
    } else {
        ext_module(&core, truncation)?
    };
    let presentation = module.present();
    Ok(ExtPresentation {
        stable: presentation.is_stable(),
        hilbert: module.dims().to_vec(),
        ring,
        presentation,
        truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::ElementaryAbelian;

    fn alg(p: u32, r: usize) -> ElementaryAbelian {
        ElementaryAbelian::new(p, r).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn ext_of_trivial_module_counts() {
        for p in [2u32, 3, 5] {
            for r in 1..=3usize {
                let top = if r == 3 { 8 } else { 12 };
                let e = ext_module(&FdModule::trivial(alg(p, r)), top).unwrap();
                for n in 0..=top {
                    // H^n(E, k) has dimension C(n + r - 1, r - 1) for every p
                    assert_eq!(e.dim(n as i32), binom(n + r - 1, r - 1), "p={p} r={r} n={n}");
                }
                assert!(e.actions_commute());
            }
        }
    }

    #[test]
    fn ext_of_free_module_vanishes_above_zero() {
        let e = ext_module(&FdModule::free(alg(3, 2)), 6).unwrap();
        assert_eq!(e.dims(), &[1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn presentations() {
        let a = alg(2, 2);
        let k = ext_presentation(&FdModule::trivial(a), 6).unwrap();
        assert_eq!(k.generator_degrees(), &[0]);
        assert_eq!(k.relations().cols(), 0);
        assert!(k.stable);

        let free = ext_presentation(&FdModule::free(a), 6).unwrap();
        assert!(free.generator_degrees().is_empty());

        let m = ext_presentation(&FdModule::kill_generator(a, 0).unwrap(), 6).unwrap();
        assert_eq!(m.generator_degrees(), &[0]);
        assert_eq!(m.relations().cols(), 1);
        assert_eq!(m.relations().get(0, 0).to_string(), "x2");
    }

    #[test]
    fn presentation_reproduces_hilbert_function() {
        let a = alg(3, 2);
        let m = FdModule::truncated(a, &[2, 2]).unwrap();
        let e = ext_presentation(&m, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(e.presentation.hilbert(n as i32), e.hilbert[n], "degree {n}");
        }
        let b = alg(2, 3);
        let m = FdModule::truncated(b, &[2, 1, 2]).unwrap().dual();
        let e = ext_presentation(&m, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(e.presentation.hilbert(n as i32), e.hilbert[n]);
        }
    }

    #[test]
    fn dimensions_match_minimal_resolution_of_dual() {
        use crate::random::{random_module_up_to, stream};
        use crate::resolution::minimal_resolution;
        for (p, r) in [(2u32, 2usize), (3, 2), (2, 3)] {
            let a = alg(p, r);
            for i in 0..6 {
                let m = random_module_up_to(&mut stream(5, "ext", i), a, 7);
                let e = ext_module(&m, 4).unwrap();
                let res = minimal_resolution(&m.dual(), 4);
                assert_eq!(e.dims(), &res.ranks()[..5], "p={p} r={r} trial {i}");
                assert!(e.actions_commute());
            }
        }
    }

    #[test]
    fn annihilators() {
        let a = alg(2, 2);
        let m = ext_presentation(&FdModule::kill_generator(a, 1).unwrap(), 6).unwrap();
        let ann = m.presentation.annihilator();
        assert_eq!(ann.groebner().iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["x1"]);
        let k = ext_presentation(&FdModule::trivial(a), 6).unwrap();
        assert!(k.presentation.annihilator().is_zero());
    }
}
