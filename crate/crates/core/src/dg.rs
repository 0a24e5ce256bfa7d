//! Small dg algebras (exterior `Λ`, the Koszul algebra `A` of `kE`, polynomial
//! `S`), finite dg modules over them, homology, and chain maps.
//!
//! Degrees are cohomological: differentials raise degree by one, `ξ_i` and
//! `y_i` sit in degree -1 and `x_i` in degree 2.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, RowSpace};
use crate::module::{ElementaryAbelian, FdModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DgKind {
    /// Exterior algebra on `ξ_1..ξ_r`, zero differential.
    Lambda,
    /// `kE[y_1..y_r]` exterior over `kE`, `d(y_i) = z_i`.
    KoszulA,
    /// Polynomial algebra on `x_1..x_r`, zero differential.
    PolyS,
}

/// Basis monomial `z^a y_B` (for `Λ`: `a = 0`, `B` the `ξ`-set; for `S`: `x^a`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DgMono {
    pub a: Vec<u32>,
    pub b: u32,
}

/// Sign of `y_B · y_C` rewritten in increasing order, or `None` if they overlap.
pub fn exterior_sign(b: u32, c: u32) -> Option<bool> {
    if b & c != 0 {
        return None;
    }
    let mut inversions = 0;
    let mut rest = c;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (b >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

/// `#{j ∈ B : j < i}`.
pub fn count_below(b: u32, i: usize) -> u32 {
    (b & ((1u32 << i) - 1)).count_ones()
}

#[derive(Clone, Debug)]
pub struct DgAlgebra {
    kind: DgKind,
    p: u32,
    r: usize,
    field: Field,
    basis: Vec<DgMono>,
    index: HashMap<DgMono, usize>,
    /// Highest degree kept for `S`.
    top: i32,
}

impl DgAlgebra {
    pub fn lambda(p: u32, r: usize) -> Result<DgAlgebra> {
        let basis = (0..1u32 << r).map(|b| DgMono { a: vec![0; r], b }).collect();
        Self::build(DgKind::Lambda, p, r, basis, 0)
    }

    pub fn koszul_a(p: u32, r: usize) -> Result<DgAlgebra> {
        let alg = ElementaryAbelian::new(p, r)?;
        let mut basis = Vec::with_capacity(alg.order() << r);
        for a in alg.monomials() {
            for b in 0..1u32 << r {
                basis.push(DgMono { a: a.clone(), b });
            }
        }
        Self::build(DgKind::KoszulA, p, r, basis, 0)
    }

    /// `S` in degrees `0..=top`.
    pub fn poly_s(p: u32, r: usize, top: i32) -> Result<DgAlgebra> {
        let mut basis = Vec::new();
        for d in 0..=(top.max(0) / 2) as u32 {
            basis.extend(exponent_vectors(r, d).into_iter().map(|a| DgMono { a, b: 0 }));
        }
        Self::build(DgKind::PolyS, p, r, basis, top)
    }

    fn build(kind: DgKind, p: u32, r: usize, basis: Vec<DgMono>, top: i32) -> Result<DgAlgebra> {
        if r == 0 || r > 6 {
            return Err(Error::InvalidDg(format!("rank {r} outside 1..=6")));
        }
        let field = Field::prime(p)?;
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(DgAlgebra { kind, p, r, field, basis, index, top })
    }

    pub fn kind(&self) -> DgKind {
        self.kind
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn basis(&self) -> &[DgMono] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn index_of(&self, m: &DgMono) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn degree(&self, m: &DgMono) -> i32 {
        match self.kind {
            DgKind::Lambda | DgKind::KoszulA => -(m.b.count_ones() as i32),
            DgKind::PolyS => 2 * m.a.iter().sum::<u32>() as i32,
        }
    }

    /// Generators in the order modules store their actions: `ξ_i`; `z_i` then `y_i`; `x_i`.
    pub fn generators(&self) -> Vec<DgMono> {
        let unit = |i: usize| (0..self.r).map(|j| (i == j) as u32).collect::<Vec<_>>();
        match self.kind {
            DgKind::Lambda => (0..self.r).map(|i| DgMono { a: vec![0; self.r], b: 1 << i }).collect(),
            DgKind::KoszulA => (0..self.r)
                .map(|i| DgMono { a: unit(i), b: 0 })
                .chain((0..self.r).map(|i| DgMono { a: vec![0; self.r], b: 1 << i }))
                .collect(),
            DgKind::PolyS => (0..self.r).map(|i| DgMono { a: unit(i), b: 0 }).collect(),
        }
    }

    pub fn generator_degrees(&self) -> Vec<i32> {
        self.generators().iter().map(|g| self.degree(g)).collect()
    }

    /// Product of basis elements as `(negated, product)`; `None` when zero or
    /// past the window.
    pub fn mul(&self, u: &DgMono, v: &DgMono) -> Option<(bool, DgMono)> {
        let neg = exterior_sign(u.b, v.b)?;
        let a: Vec<u32> = u.a.iter().zip(&v.a).map(|(x, y)| x + y).collect();
        if self.kind == DgKind::KoszulA && a.iter().any(|&e| e >= self.p) {
            return None;
        }
        let m = DgMono { a, b: u.b | v.b };
        if self.kind == DgKind::PolyS && self.degree(&m) > self.top {
            return None;
        }
        Some((neg, m))
    }

    /// `d(z^a y_B) = Σ_{i∈B} (-1)^{#{j∈B: j<i}} z^{a+ε_i} y_{B∖i}` for `A`; zero otherwise.
    pub fn differential(&self, m: &DgMono) -> Vec<(bool, DgMono)> {
        if self.kind != DgKind::KoszulA {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..self.r {
            if m.b & (1 << i) != 0 && m.a[i] + 1 < self.p {
                let mut a = m.a.clone();
                a[i] += 1;
                out.push((count_below(m.b, i) % 2 == 1, DgMono { a, b: m.b & !(1 << i) }));
            }
        }
        out
    }

    fn to_vec(&self, terms: &[(bool, DgMono)]) -> Vec<u8> {
        let f = &self.field;
        let mut v = vec![0u8; self.dim()];
        for (neg, m) in terms {
            if let Some(k) = self.index_of(m) {
                v[k] = f.add(v[k], if *neg { f.neg(1) } else { 1 });
            }
        }
        v
    }

    fn mul_vec(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let f = &self.field;
        let mut out = vec![0u8; self.dim()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if x != 0 && y != 0 {
                    if let Some((neg, m)) = self.mul(&self.basis[i], &self.basis[j]) {
                        let k = self.index[&m];
                        let c = f.mul(x, y);
                        out[k] = f.add(out[k], if neg { f.neg(c) } else { c });
                    }
                }
            }
        }
        out
    }

    fn d_vec(&self, v: &[u8]) -> Vec<u8> {
        let f = &self.field;
        let mut out = vec![0u8; self.dim()];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                f.axpy(&mut out, &self.to_vec(&self.differential(&self.basis[i])), x);
            }
        }
        out
    }

    /// `d² = 0`, associativity and the Leibniz rule on all basis pairs (triples
    /// for associativity).
    pub fn verify(&self) -> Result<()> {
        let f = &self.field;
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v
        };
        for i in 0..n {
            if self.d_vec(&self.d_vec(&e(i))).iter().any(|&x| x != 0) {
                return Err(Error::InvalidDg(format!("d² ≠ 0 on {:?}", self.basis[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let uv = self.mul_vec(&e(i), &e(j));
                let lhs = self.d_vec(&uv);
                let mut rhs = self.mul_vec(&self.d_vec(&e(i)), &e(j));
                let mut second = self.mul_vec(&e(i), &self.d_vec(&e(j)));
                if self.degree(&self.basis[i]) % 2 != 0 {
                    f.scale(&mut second, f.neg(1));
                }
                f.axpy(&mut rhs, &second, 1);
                if self.kind != DgKind::PolyS && lhs != rhs {
                    return Err(Error::InvalidDg(format!("Leibniz fails on {:?}, {:?}", self.basis[i], self.basis[j])));
                }
            }
        }
        if n <= 64 {
            for i in 0..n {
                for j in 0..n {
                    let ij = self.mul_vec(&e(i), &e(j));
                    for k in 0..n {
                        if self.mul_vec(&ij, &e(k)) != self.mul_vec(&e(i), &self.mul_vec(&e(j), &e(k))) {
                            return Err(Error::InvalidDg("multiplication is not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The algebra as a dg module over itself by left multiplication.
    pub fn regular_module(&self) -> DgModule {
        let f = &self.field;
        let n = self.dim();
        let degrees = self.basis.iter().map(|m| self.degree(m)).collect();
        let d = Matrix::from_columns(f, n, &(0..n).map(|j| self.to_vec(&self.differential(&self.basis[j]))).collect::<Vec<_>>());
        let actions = self
            .generators()
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u8>> = self.basis.iter().map(|m| self.to_vec(&self.mul(g, m).into_iter().collect::<Vec<_>>())).collect();
                Matrix::from_columns(f, n, &cols)
            })
            .collect();
        DgModule::new_unchecked(self.kind, self.p, self.r, degrees, d, actions)
    }
}

/// Exponent vectors in `r` variables of total degree `d`, lexicographically decreasing.
pub fn exponent_vectors(r: usize, d: u32) -> Vec<Vec<u32>> {
    crate::resolution::multi_indices(r, d as usize)
}

/// A finite-dimensional dg module: one basis with a degree per vector, the
/// differential, and the action of each algebra generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    kind: DgKind,
    p: u32,
    r: usize,
    degrees: Vec<i32>,
    d: Matrix,
    actions: Vec<Matrix>,
}

fn generator_degrees(kind: DgKind, r: usize) -> Vec<i32> {
    match kind {
        DgKind::Lambda => vec![-1; r],
        DgKind::KoszulA => [vec![0; r], vec![-1; r]].concat(),
        DgKind::PolyS => vec![2; r],
    }
}

impl DgModule {
    /// Validates homogeneity, `d² = 0`, the defining relations of the algebra
    /// and the Leibniz rule.
    pub fn new(kind: DgKind, p: u32, r: usize, degrees: Vec<i32>, d: Matrix, actions: Vec<Matrix>) -> Result<DgModule> {
        let m = Self::new_unchecked(kind, p, r, degrees, d, actions);
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(kind: DgKind, p: u32, r: usize, degrees: Vec<i32>, d: Matrix, actions: Vec<Matrix>) -> DgModule {
        DgModule { kind, p, r, degrees, d, actions }
    }

    pub fn zero(kind: DgKind, p: u32, r: usize) -> DgModule {
        let f = Field::prime(p).unwrap();
        let n = generator_degrees(kind, r).len();
        DgModule { kind, p, r, degrees: vec![], d: Matrix::zeros(&f, 0, 0), actions: vec![Matrix::zeros(&f, 0, 0); n] }
    }

    /// `k` in degree 0 with every generator acting by zero.
    pub fn trivial(kind: DgKind, p: u32, r: usize) -> DgModule {
        let f = Field::prime(p).unwrap();
        let n = generator_degrees(kind, r).len();
        DgModule { kind, p, r, degrees: vec![0], d: Matrix::zeros(&f, 1, 1), actions: vec![Matrix::zeros(&f, 1, 1); n] }
    }

    pub fn kind(&self) -> DgKind {
        self.kind
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn field(&self) -> Field {
        Field::prime(self.p).unwrap()
    }
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }
    pub fn differential(&self) -> &Matrix {
        &self.d
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }
    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    /// Smallest and largest occupied degree.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    /// Basis indices in degree `n`.
    pub fn indices(&self, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    fn homogeneous(&self, m: &Matrix, shift: i32) -> bool {
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j) == 0 || self.degrees[i] == self.degrees[j] + shift))
    }

    pub fn verify(&self) -> Result<()> {
        let n = self.dim();
        let f = self.field();
        let gd = generator_degrees(self.kind, self.r);
        if self.actions.len() != gd.len() {
            return Err(Error::InvalidDg(format!("{} generator actions, expected {}", self.actions.len(), gd.len())));
        }
        if self.d.rows() != n || self.d.cols() != n || self.actions.iter().any(|a| a.rows() != n || a.cols() != n) {
            return Err(Error::DimensionMismatch("dg module maps must be square of the module dimension".into()));
        }
        if !self.homogeneous(&self.d, 1) {
            return Err(Error::InvalidDg("differential is not of degree 1".into()));
        }
        for (a, &dg) in self.actions.iter().zip(&gd) {
            if !self.homogeneous(a, dg) {
                return Err(Error::InvalidDg("generator action has the wrong degree".into()));
            }
        }
        let zero = Matrix::zeros(&f, n, n);
        if self.d.mul(&self.d) != zero {
            return Err(Error::InvalidDg("d² ≠ 0".into()));
        }
        let r = self.r;
        let acts = &self.actions;
        let (even, odd): (Vec<usize>, Vec<usize>) = match self.kind {
            DgKind::Lambda => (vec![], (0..r).collect()),
            DgKind::KoszulA => ((0..r).collect(), (r..2 * r).collect()),
            DgKind::PolyS => ((0..r).collect(), vec![]),
        };
        for &i in &even {
            for &j in even.iter().chain(&odd) {
                if acts[i].mul(&acts[j]) != acts[j].mul(&acts[i]) {
                    return Err(Error::InvalidDg("even generators must be central".into()));
                }
            }
            if self.kind == DgKind::KoszulA && acts[i].pow(self.p) != zero {
                return Err(Error::InvalidDg("z_i^p must act as zero".into()));
            }
        }
        for &i in &odd {
            for &j in &odd {
                if acts[i].mul(&acts[j]).add(&acts[j].mul(&acts[i])) != zero || acts[i].mul(&acts[i]) != zero {
                    return Err(Error::InvalidDg("odd generators must anticommute and square to zero".into()));
                }
            }
        }
        // d(g m) = d(g) m + (-1)^{|g|} g d(m)
        for (k, a) in acts.iter().enumerate() {
            let lhs = self.d.mul(a);
            let mut rhs = a.mul(&self.d);
            if gd[k] % 2 != 0 {
                rhs = rhs.neg();
            }
            if self.kind == DgKind::KoszulA && k >= r {
                rhs = rhs.add(&acts[k - r]);
            }
            if lhs != rhs {
                return Err(Error::InvalidDg(format!("Leibniz rule fails for generator {k}")));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &DgModule) -> Result<DgModule> {
        if (self.kind, self.p, self.r) != (other.kind, other.p, other.r) {
            return Err(Error::AlgebraMismatch("direct sum over different dg algebras".into()));
        }
        let degrees = [self.degrees.clone(), other.degrees.clone()].concat();
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::new_unchecked(self.kind, self.p, self.r, degrees, self.d.direct_sum(&other.d), actions))
    }

    /// `Σ^s M`: degrees lowered by `s`; `d` and odd actions change sign when `s` is odd.
    pub fn shift(&self, s: i32) -> DgModule {
        let degrees = self.degrees.iter().map(|&d| d - s).collect();
        let gd = generator_degrees(self.kind, self.r);
        let odd_shift = s % 2 != 0;
        let d = if odd_shift { self.d.neg() } else { self.d.clone() };
        let actions = self
            .actions
            .iter()
            .zip(&gd)
            .map(|(a, &g)| if odd_shift && g % 2 != 0 { a.neg() } else { a.clone() })
            .collect();
        Self::new_unchecked(self.kind, self.p, self.r, degrees, d, actions)
    }

    /// Degree-0 maps `f: M → N` commuting with `d` and all generators, as a
    /// basis of `N.dim × M.dim` matrices.
    pub fn chain_maps(&self, other: &DgModule) -> Result<Vec<Matrix>> {
        if (self.kind, self.p, self.r) != (other.kind, other.p, other.r) {
            return Err(Error::AlgebraMismatch("chain maps between modules over different algebras".into()));
        }
        let f = self.field();
        let (m, n) = (self.dim(), other.dim());
        // unknowns: entries f_{ij} with deg_N(i) = deg_M(j)
        let unknowns: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| other.degrees[i] == self.degrees[j]).collect();
        let pos: HashMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut rows: Vec<Vec<u8>> = Vec::new();
        let pairs = std::iter::once((&self.d, &other.d)).chain(self.actions.iter().zip(&other.actions));
        for (a_m, a_n) in pairs {
            // (F a_M - a_N F)_{ij} = Σ_k F_ik a_M[k,j] - Σ_k a_N[i,k] F_kj
            for i in 0..n {
                for j in 0..m {
                    let mut row = vec![0u8; unknowns.len()];
                    let mut any = false;
                    for k in 0..m {
                        let c = a_m.get(k, j);
                        if c != 0 {
                            if let Some(&u) = pos.get(&(i, k)) {
                                row[u] = f.add(row[u], c);
                                any = true;
                            }
                        }
                    }
                    for k in 0..n {
                        let c = a_n.get(i, k);
                        if c != 0 {
                            if let Some(&u) = pos.get(&(k, j)) {
                                row[u] = f.sub(row[u], c);
                                any = true;
                            }
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let system = if rows.is_empty() {
            Matrix::zeros(&f, 0, unknowns.len())
        } else {
            Matrix::from_rows(&f, &rows.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect::<Vec<_>>())?
        };
        let ker = if unknowns.is_empty() { Matrix::zeros(&f, 0, 0) } else { system.kernel() };
        Ok((0..ker.cols())
            .map(|c| {
                let v = ker.column(c);
                let mut fm = Matrix::zeros(&f, n, m);
                for (k, &(i, j)) in unknowns.iter().enumerate() {
                    fm.set(i, j, v[k]);
                }
                fm
            })
            .collect())
    }

    /// The dg submodule generated by the given vectors (columns), as a basis
    /// of homogeneous columns.
    pub fn closure(&self, vectors: &Matrix) -> Matrix {
        let f = self.field();
        let n = self.dim();
        let mut spaces: HashMap<i32, RowSpace> = HashMap::new();
        let mut basis: Vec<Vec<u8>> = Vec::new();
        let mut queue: Vec<Vec<u8>> = (0..vectors.cols()).map(|j| vectors.column(j)).collect();
        while let Some(v) = queue.pop() {
            let mut parts: HashMap<i32, Vec<u8>> = HashMap::new();
            for (i, &x) in v.iter().enumerate() {
                if x != 0 {
                    parts.entry(self.degrees[i]).or_insert_with(|| vec![0; n])[i] = x;
                }
            }
            for (deg, part) in parts {
                let space = spaces.entry(deg).or_insert_with(|| RowSpace::new(&f, n));
                if space.insert(&part) {
                    queue.push(self.d.mul_vec(&part));
                    for a in &self.actions {
                        queue.push(a.mul_vec(&part));
                    }
                    basis.push(part);
                }
            }
        }
        Matrix::from_columns(&f, n, &basis)
    }

    /// `M / N` for a dg submodule spanned by homogeneous columns `sub`; the
    /// quotient keeps the standard basis vectors completing `sub` in each degree.
    pub fn quotient(&self, sub: &Matrix) -> Result<DgModule> {
        let f = self.field();
        let Some((lo, hi)) = self.degree_range() else {
            return Ok(self.clone());
        };
        let mut kept: Vec<usize> = Vec::new();
        // per degree: (indices, number of sub vectors, inverse of [sub | kept])
        let mut charts: Vec<(Vec<usize>, usize, Matrix)> = Vec::new();
        for deg in lo..=hi {
            let idx = self.indices(deg);
            if idx.is_empty() {
                continue;
            }
            let cols: Vec<usize> = (0..sub.cols())
                .filter(|&j| idx.iter().any(|&i| sub.get(i, j) != 0))
                .collect();
            let local = sub.select_rows(&idx).select_columns(&cols);
            let indep = local.independent_columns();
            let local = local.select_columns(&indep);
            let mut space = RowSpace::new(&f, idx.len());
            for j in 0..local.cols() {
                space.insert(&local.column(j));
            }
            let mut chosen = Vec::new();
            for (k, &i) in idx.iter().enumerate() {
                let mut e = vec![0u8; idx.len()];
                e[k] = 1;
                if space.insert(&e) {
                    chosen.push(k);
                    kept.push(i);
                }
            }
            let e = Matrix::identity(&f, idx.len()).select_columns(&chosen);
            let inv = local.hstack(&e).inverse().ok_or_else(|| Error::InvalidDg("quotient basis is singular".into()))?;
            charts.push((idx, local.cols(), inv));
        }
        let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let project = |m: &Matrix| -> Matrix {
            let cols: Vec<Vec<u8>> = kept
                .iter()
                .map(|&j| {
                    let v = m.column(j);
                    let mut out = vec![0u8; kept.len()];
                    for (idx, nsub, inv) in &charts {
                        let local: Vec<u8> = idx.iter().map(|&i| v[i]).collect();
                        if local.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let coords = inv.mul_vec(&local);
                        let mut c = 0;
                        for &i in idx {
                            if let Some(&k) = pos.get(&i) {
                                out[k] = coords[nsub + c];
                                c += 1;
                            }
                        }
                    }
                    out
                })
                .collect();
            Matrix::from_columns(&f, kept.len(), &cols)
        };
        let degrees = kept.iter().map(|&i| self.degrees[i]).collect();
        let q = Self::new_unchecked(self.kind, self.p, self.r, degrees, project(&self.d), self.actions.iter().map(project).collect());
        q.verify()?;
        Ok(q)
    }

    /// `cone(f) = N ⊕ ΣM` with `d = [[d_N, f], [0, d_ΣM]]` for a chain map `f: M → N`.
    pub fn cone(m: &DgModule, n: &DgModule, f: &Matrix) -> Result<DgModule> {
        let sm = m.shift(1);
        let base = n.direct_sum(&sm)?;
        let mut d = base.d.clone();
        for i in 0..n.dim() {
            for j in 0..m.dim() {
                d.set(i, n.dim() + j, f.get(i, j));
            }
        }
        DgModule::new(base.kind, base.p, base.r, base.degrees, d, base.actions)
    }

    /// Homology in degree `n`: cycle representatives completing a basis of the
    /// boundaries.
    pub fn homology(&self, n: i32) -> Homology {
        let f = self.field();
        let here = self.indices(n);
        let below = self.indices(n - 1);
        let above = self.indices(n + 1);
        let out = self.d.select_rows(&above).select_columns(&here);
        let inc = self.d.select_rows(&here).select_columns(&below);
        let mut space = RowSpace::new(&f, here.len());
        for j in inc.independent_columns() {
            space.insert(&inc.column(j));
        }
        let boundaries = space.dim();
        let cycles = if here.is_empty() { Matrix::zeros(&f, 0, 0) } else { out.kernel() };
        for j in 0..cycles.cols() {
            space.insert(&cycles.column(j));
        }
        Homology { degree: n, indices: here, space, boundaries }
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        if let Some((lo, hi)) = self.degree_range() {
            for n in lo..=hi {
                let h = self.homology(n).dim();
                if h > 0 {
                    out.insert(n, h);
                }
            }
        }
        out
    }
}

/// `H^n` of a dg module, with coordinates for cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i32,
    /// Basis indices of the module in this degree.
    pub indices: Vec<usize>,
    space: RowSpace,
    boundaries: usize,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.space.dim() - self.boundaries
    }

    /// Cycle representatives, as vectors on `indices`.
    pub fn representatives(&self) -> &[Vec<u8>] {
        &self.space.basis()[self.boundaries..]
    }

    /// Coordinates of a cycle (given on `indices`); `None` if it is not in the span of cycles.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let mut w = v.to_vec();
        let c = self.space.reduce(&mut w);
        w.iter().all(|&x| x == 0).then(|| c[self.boundaries..].to_vec())
    }
}

/// Rank of the map induced on `H^n` by a chain map `f: M → N`.
pub fn induced_rank(src: &DgModule, tgt: &DgModule, f: &Matrix, n: i32) -> usize {
    let hs = src.homology(n);
    let ht = tgt.homology(n);
    let fld = src.field();
    let block = f.select_rows(&ht.indices).select_columns(&hs.indices);
    let cols: Vec<Vec<u8>> = hs
        .representatives()
        .iter()
        .map(|z| ht.coordinates(&block.mul_vec(z)).expect("chain maps send cycles to cycles"))
        .collect();
    Matrix::from_columns(&fld, ht.dim(), &cols).rank()
}

/// Outcome of comparing homology along a chain map degree by degree.
#[derive(Clone, Debug)]
pub struct QuasiIsoReport {
    /// `(degree, dim H(source), dim H(target), rank of induced map)`.
    pub degrees: Vec<(i32, usize, usize, usize)>,
    pub pass: bool,
}

/// Checks that `f` is a chain map and that it is bijective on homology in
/// every degree of `lo..=hi`.
pub fn verify_quasi_iso(src: &DgModule, tgt: &DgModule, f: &Matrix, lo: i32, hi: i32) -> Result<QuasiIsoReport> {
    if lo > hi {
        return Err(Error::WindowTooSmall(format!("no certified degrees in {lo}..={hi}")));
    }
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        return Err(Error::DimensionMismatch("chain map shape".into()));
    }
    if f.mul(src.differential()) != tgt.differential().mul(f) {
        return Err(Error::Verification("map does not commute with the differentials".into()));
    }
    let mut degrees = Vec::new();
    let mut pass = true;
    for n in lo..=hi {
        let (a, b) = (src.homology(n).dim(), tgt.homology(n).dim());
        let rk = induced_rank(src, tgt, f, n);
        pass &= a == b && rk == a;
        degrees.push((n, a, b, rk));
    }
    Ok(QuasiIsoReport { degrees, pass })
}

/// The dg algebra map `φ: Λ → A`, `ξ_i ↦ z_i^{p-1} y_i`, as a matrix on bases.
pub fn phi_lambda_to_a(lambda: &DgAlgebra, a: &DgAlgebra) -> Result<Matrix> {
    if lambda.kind != DgKind::Lambda || a.kind != DgKind::KoszulA || lambda.r != a.r || lambda.p != a.p {
        return Err(Error::AlgebraMismatch("φ needs Λ and A of the same rank and characteristic".into()));
    }
    let f = &a.field;
    let cols: Vec<Vec<u8>> = lambda
        .basis
        .iter()
        .map(|m| {
            let exps = (0..a.r).map(|i| if m.b & (1 << i) != 0 { a.p - 1 } else { 0 }).collect();
            a.to_vec(&[(false, DgMono { a: exps, b: m.b })])
        })
        .collect();
    let phi = Matrix::from_columns(f, a.dim(), &cols);
    // multiplicative on basis pairs
    for (i, u) in lambda.basis.iter().enumerate() {
        for (j, v) in lambda.basis.iter().enumerate() {
            let lhs = phi.mul_vec(&lambda.to_vec(&lambda.mul(u, v).into_iter().collect::<Vec<_>>()));
            let rhs = a.mul_vec(&phi.column(i), &phi.column(j));
            if lhs != rhs {
                return Err(Error::Verification(format!("φ is not multiplicative on {u:?}, {v:?}")));
            }
        }
    }
    Ok(phi)
}

/// `Hom_{kE}(A, M)` as a dg `A`-module. The component of `φ` on `y_S` sits in
/// degree `|S|`, with `(a·φ)(b) = φ(b a)` and
/// `(dφ)(b) = (-1)^{|φ|} φ(d b)`.
pub fn coinduce_to_a(m: &FdModule) -> Result<DgModule> {
    let (p, r) = (m.p(), m.rank());
    let f = m.field();
    let n = m.dim();
    let masks: Vec<u32> = (0..1u32 << r).collect();
    let dim = masks.len() * n;
    let degrees: Vec<i32> = masks.iter().flat_map(|s| std::iter::repeat_n(s.count_ones() as i32, n)).collect();
    let block = |s: u32| s as usize * n;
    let sign = |neg: bool| if neg { f.neg(1) } else { 1 };

    // z_i acts on values: (z_i·φ)(y_S) = φ(y_S z_i) = z_i φ(y_S)
    let mut actions: Vec<Matrix> = Vec::with_capacity(2 * r);
    for i in 0..r {
        let mut a = Matrix::zeros(&f, dim, dim);
        for &s in &masks {
            for x in 0..n {
                for y in 0..n {
                    a.set(block(s) + x, block(s) + y, m.action(i).get(x, y));
                }
            }
        }
        actions.push(a);
    }
    // (y_i·φ)(y_T) = φ(y_T y_i): component T of y_i·φ reads component T ∪ {i} of φ
    for i in 0..r {
        let mut a = Matrix::zeros(&f, dim, dim);
        for &t in &masks {
            if t & (1 << i) != 0 {
                continue;
            }
            let s = t | (1 << i);
            let neg = exterior_sign(t, 1 << i).unwrap();
            for x in 0..n {
                a.set(block(t) + x, block(s) + x, sign(neg));
            }
        }
        actions.push(a);
    }
    // (dφ)(y_T) = (-1)^{|φ|} Σ_{i∈T} ± z_i φ(y_{T∖i}), with |φ| = |T| - 1
    let mut d = Matrix::zeros(&f, dim, dim);
    for &t in &masks {
        for i in 0..r {
            if t & (1 << i) == 0 {
                continue;
            }
            let s = t & !(1 << i);
            let neg = (count_below(t, i) % 2 == 1) ^ (s.count_ones() % 2 == 1);
            for x in 0..n {
                for y in 0..n {
                    let c = m.action(i).get(x, y);
                    if c != 0 {
                        d.set(block(t) + x, block(s) + y, if neg { f.neg(c) } else { c });
                    }
                }
            }
        }
    }
    DgModule::new(DgKind::KoszulA, p, r, degrees, d, actions)
}

/// Restriction of a dg `A`-module to `kE` in degree 0 composed with `kE`-maps
/// into `M`: the space of `kE`-linear `f: X^0 → M` with `f ∘ d = 0`.
pub fn restricted_hom_dim(x: &DgModule, m: &FdModule) -> Result<usize> {
    if x.kind != DgKind::KoszulA || x.r != m.rank() || x.p != m.p() {
        return Err(Error::AlgebraMismatch("restriction needs a dg A-module over the same kE".into()));
    }
    let f = m.field();
    let zero = x.indices(0);
    let minus = x.indices(-1);
    let x0 = FdModule::new(
        m.algebra(),
        (0..m.rank()).map(|i| x.action(i).select_rows(&zero).select_columns(&zero)).collect(),
    )?;
    let hom = x0.hom_basis(m)?;
    let dm = x.d.select_rows(&zero).select_columns(&minus);
    // maps φ = Σ c_k hom_k with φ ∘ dm = 0
    let cols: Vec<Vec<u8>> = hom.iter().map(|h| h.mul(&dm).to_rows().concat().iter().map(|&v| v as u8).collect()).collect();
    if cols.is_empty() {
        return Ok(0);
    }
    let sys = Matrix::from_columns(&f, cols[0].len(), &cols);
    Ok(hom.len() - sys.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebras_verify() {
        for p in [2, 3, 5] {
            for r in 1..=3 {
                DgAlgebra::lambda(p, r).unwrap().verify().unwrap();
                let a = DgAlgebra::koszul_a(p, r).unwrap();
                assert_eq!(a.dim(), (p as usize).pow(r as u32) << r);
                if a.dim() <= 128 {
                    a.verify().unwrap();
                }
                a.regular_module().verify().unwrap();
            }
        }
        DgAlgebra::poly_s(3, 2, 8).unwrap().verify().unwrap();
    }

    #[test]
    fn koszul_a_rank_one_homology() {
        let a = DgAlgebra::koszul_a(2, 1).unwrap();
        let m = a.regular_module();
        let dims: Vec<(i32, usize)> = m.homology_dims().into_iter().collect();
        assert_eq!(dims, vec![(-1, 1), (0, 1)]);
    }

    #[test]
    fn phi_is_a_quasi_isomorphism() {
        for p in [2, 3, 5] {
            for r in 1..=3usize {
                let l = DgAlgebra::lambda(p, r).unwrap();
                let a = DgAlgebra::koszul_a(p, r).unwrap();
                let phi = phi_lambda_to_a(&l, &a).unwrap();
                let rep = verify_quasi_iso(&l.regular_module(), &a.regular_module(), &phi, -(r as i32), 0).unwrap();
                assert!(rep.pass, "p={p} r={r}: {:?}", rep.degrees);
                for (n, hs, _, _) in rep.degrees {
                    let j = (-n) as usize;
                    let binom = (0..j).fold(1, |acc, i| acc * (r - i) / (i + 1));
                    assert_eq!(hs, binom);
                }
            }
        }
    }

    #[test]
    fn phi_images() {
        let l = DgAlgebra::lambda(3, 2).unwrap();
        let a = DgAlgebra::koszul_a(3, 2).unwrap();
        let phi = phi_lambda_to_a(&l, &a).unwrap();
        let top = a.index_of(&DgMono { a: vec![2, 2], b: 3 }).unwrap();
        assert_eq!(phi.get(top, 3), 1);
        let one = a.index_of(&DgMono { a: vec![0, 0], b: 0 }).unwrap();
        assert_eq!(phi.get(one, 0), 1);
    }

    #[test]
    fn coinduction_dimensions_and_adjunction() {
        for (p, r) in [(2u32, 2usize), (3, 2), (2, 3)] {
            let alg = ElementaryAbelian::new(p, r).unwrap();
            let a = DgAlgebra::koszul_a(p, r).unwrap();
            for m in [FdModule::trivial(alg), FdModule::kill_generator(alg, 0).unwrap(), FdModule::truncated(alg, &vec![2; r]).unwrap()] {
                let c = coinduce_to_a(&m).unwrap();
                assert_eq!(c.dim(), m.dim() << r);
                for x in [DgModule::trivial(DgKind::KoszulA, p, r), a.regular_module()] {
                    let lhs = x.chain_maps(&c).unwrap().len();
                    let rhs = restricted_hom_dim(&x, &m).unwrap();
                    assert_eq!(lhs, rhs, "p={p} r={r} dim m={}", m.dim());
                }
            }
            let zero = coinduce_to_a(&FdModule::zero(alg)).unwrap();
            assert_eq!(zero.dim(), 0);
        }
    }

    #[test]
    fn chain_maps_of_identity_and_shift() {
        let l = DgAlgebra::lambda(3, 2).unwrap().regular_module();
        let maps = l.chain_maps(&l).unwrap();
        // End_Λ(Λ) = Λ^op in degree 0 only: the scalars
        assert_eq!(maps.len(), 1);
        let shifted = l.shift(1);
        shifted.verify().unwrap();
    }
}
