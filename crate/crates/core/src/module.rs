//! Finite-dimensional modules over `kE = F_p[z_1..z_r]/(z_i^p)`.
//!
//! A module is the list of matrices by which `z_1..z_r` act on column vectors.
//! Group elements are `g_i = 1 + z_i`.

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::matrix::{Matrix, RowSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hopf {
    /// `Δ(z) = z⊗1 + 1⊗z + z⊗z`, the diagonal action of group elements.
    Group,
    /// `Δ(z) = z⊗1 + 1⊗z`.
    Lie,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryAbelian {
    p: u32,
    r: usize,
}

impl ElementaryAbelian {
    pub fn new(p: u32, r: usize) -> Result<Self> {
        if !is_prime(p) || p > 11 {
            return Err(Error::InvalidField(format!("characteristic {p} must be a prime at most 11")));
        }
        if r == 0 || r > 6 {
            return Err(Error::OutOfRange(format!("rank {r} must be in 1..=6")));
        }
        Ok(ElementaryAbelian { p, r })
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    /// `|E| = p^r = dim kE`.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.r as u32)
    }
    pub fn field(&self) -> Field {
        Field::prime(self.p).expect("validated prime")
    }

    /// Exponent vectors of the monomial basis of `kE` in lexicographic order;
    /// `z_1` is the most significant digit.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        (0..self.order()).map(|k| self.exponents(k)).collect()
    }
    pub fn exponents(&self, mut index: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut e = vec![0; self.r];
        for i in (0..self.r).rev() {
            e[i] = (index % p) as u32;
            index /= p;
        }
        e
    }
    pub fn index(&self, exps: &[u32]) -> usize {
        exps.iter().fold(0, |acc, &e| acc * self.p as usize + e as usize)
    }
}

/// An embedding `E' -> E` sending generator `g'_i` to `prod_j g_j^{B_ji}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupEmbedding {
    matrix: Matrix,
}

impl SubgroupEmbedding {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.field().is_prime_field() {
            return Err(Error::InvalidEmbedding("embedding matrix must be over F_p".into()));
        }
        if matrix.cols() == 0 || matrix.rank() != matrix.cols() {
            return Err(Error::InvalidEmbedding(format!(
                "{}x{} matrix is not of full column rank",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(SubgroupEmbedding { matrix })
    }

    /// The subgroup generated by the listed coordinate generators (0-based).
    pub fn coordinate(p: u32, r: usize, gens: &[usize]) -> Result<Self> {
        let f = Field::prime(p)?;
        Self::new(Matrix::from_fn(&f, r, gens.len(), |i, j| (gens[j] == i) as u8))
    }

    pub fn identity(p: u32, r: usize) -> Result<Self> {
        Self::new(Matrix::identity(&Field::prime(p)?, r))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
    pub fn p(&self) -> u32 {
        self.matrix.field().characteristic()
    }
    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }
    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `B` extended by the lexicographically first standard basis vectors to an
    /// invertible matrix; the added columns come last.
    pub fn completed(&self) -> Matrix {
        let f = self.matrix.field().clone();
        let r = self.target_rank();
        let mut cols: Vec<Vec<u8>> = (0..self.source_rank()).map(|j| self.matrix.column(j)).collect();
        let mut span = RowSpace::new(&f, r);
        for c in &cols {
            span.insert(c);
        }
        for i in 0..r {
            let mut e = vec![0u8; r];
            e[i] = 1;
            if span.insert(&e) {
                cols.push(e);
            }
        }
        Matrix::from_columns(&f, r, &cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    alg: ElementaryAbelian,
    dim: usize,
    z: Vec<Matrix>,
}

/// `U` (independent columns) extended by standard basis vectors to an invertible matrix.
pub fn extend_to_basis(u: &Matrix) -> Matrix {
    let f = u.field().clone();
    let n = u.rows();
    let mut span = RowSpace::new(&f, n);
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(n);
    for j in 0..u.cols() {
        let c = u.column(j);
        assert!(span.insert(&c), "columns are dependent");
        cols.push(c);
    }
    for i in 0..n {
        let mut e = vec![0u8; n];
        e[i] = 1;
        if span.insert(&e) {
            cols.push(e);
        }
    }
    Matrix::from_columns(&f, n, &cols)
}

/// Column basis of the span of the given columns.
pub fn column_basis(m: &Matrix) -> Matrix {
    m.select_columns(&m.independent_columns())
}

impl FdModule {
    /// Checks that the actions are square, commute and satisfy `Z^p = 0`.
    pub fn new(alg: ElementaryAbelian, z: Vec<Matrix>) -> Result<FdModule> {
        if z.len() != alg.r {
            return Err(Error::InvalidModule(format!("{} actions for rank {}", z.len(), alg.r)));
        }
        let dim = z.first().map_or(0, |m| m.rows());
        for (i, m) in z.iter().enumerate() {
            if m.field().characteristic() != alg.p || !m.field().is_prime_field() {
                return Err(Error::InvalidModule(format!("action {} is not over F_{}", i + 1, alg.p)));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("action {} is not {dim}x{dim}", i + 1)));
            }
            if !m.pow(alg.p).is_zero() {
                return Err(Error::InvalidModule(format!("z{}^{} acts nonzero", i + 1, alg.p)));
            }
        }
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                if z[i].mul(&z[j]) != z[j].mul(&z[i]) {
                    return Err(Error::InvalidModule(format!("z{} and z{} do not commute", i + 1, j + 1)));
                }
            }
        }
        Ok(FdModule { alg, dim, z })
    }

    pub(crate) fn new_unchecked(alg: ElementaryAbelian, z: Vec<Matrix>) -> FdModule {
        let dim = z.first().map_or(0, |m| m.rows());
        debug_assert!(FdModule::new(alg, z.clone()).is_ok());
        FdModule { alg, dim, z }
    }

    pub fn zero(alg: ElementaryAbelian) -> FdModule {
        let f = alg.field();
        FdModule { alg, dim: 0, z: vec![Matrix::zeros(&f, 0, 0); alg.r] }
    }

    /// The trivial module `k`.
    pub fn trivial(alg: ElementaryAbelian) -> FdModule {
        let f = alg.field();
        FdModule { alg, dim: 1, z: vec![Matrix::zeros(&f, 1, 1); alg.r] }
    }

    /// `kE / (z_1^{b_1}, ..., z_r^{b_r})` on the monomials `z^a`, `a_i < b_i`,
    /// ordered lexicographically.
    pub fn truncated(alg: ElementaryAbelian, bounds: &[u32]) -> Result<FdModule> {
        if bounds.len() != alg.r || bounds.iter().any(|&b| b == 0 || b > alg.p) {
            return Err(Error::InvalidModule(format!("bounds {bounds:?} must lie in 1..={}", alg.p)));
        }
        let mut basis: Vec<Vec<u32>> = vec![vec![]];
        for &b in bounds {
            basis = basis.into_iter().flat_map(|v| (0..b).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        let pos = |v: &[u32]| basis.iter().position(|w| w == v);
        let f = alg.field();
        let n = basis.len();
        let z = (0..alg.r)
            .map(|i| {
                let mut m = Matrix::zeros(&f, n, n);
                for (col, a) in basis.iter().enumerate() {
                    let mut b = a.clone();
                    b[i] += 1;
                    if let Some(row) = pos(&b) {
                        m.set(row, col, 1);
                    }
                }
                m
            })
            .collect();
        Ok(FdModule { alg, dim: n, z })
    }

    /// The regular module `kE`.
    pub fn free(alg: ElementaryAbelian) -> FdModule {
        Self::truncated(alg, &vec![alg.p; alg.r]).expect("valid bounds")
    }

    /// `kE / (z_i)`.
    pub fn kill_generator(alg: ElementaryAbelian, i: usize) -> Result<FdModule> {
        let mut b = vec![alg.p; alg.r];
        *b.get_mut(i).ok_or_else(|| Error::OutOfRange(format!("generator {i}")))? = 1;
        Self::truncated(alg, &b)
    }

    pub fn algebra(&self) -> ElementaryAbelian {
        self.alg
    }
    pub fn p(&self) -> u32 {
        self.alg.p
    }
    pub fn rank(&self) -> usize {
        self.alg.r
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn action(&self, i: usize) -> &Matrix {
        &self.z[i]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.z
    }

    fn same_algebra(&self, other: &FdModule) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(format!("{:?} vs {:?}", self.alg, other.alg)));
        }
        Ok(())
    }

    /// Action of the monomial `z^a`.
    pub fn monomial_action(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::identity(&self.field(), self.dim);
        for (i, &e) in a.iter().enumerate() {
            if e > 0 {
                m = m.mul(&self.z[i].pow(e));
            }
        }
        m
    }

    /// Actions of all monomials of `kE`, in the basis order of [`ElementaryAbelian::monomials`].
    pub fn all_monomial_actions(&self) -> Vec<Matrix> {
        let f = self.field();
        let mut out: Vec<Matrix> = Vec::with_capacity(self.alg.order());
        for (k, a) in self.alg.monomials().iter().enumerate() {
            if k == 0 {
                out.push(Matrix::identity(&f, self.dim));
                continue;
            }
            // strip the last nonzero exponent to reuse an earlier product
            let i = a.iter().rposition(|&e| e > 0).unwrap();
            let mut b = a.clone();
            b[i] -= 1;
            let prev = &out[self.alg.index(&b)];
            out.push(self.z[i].mul(prev));
        }
        out
    }

    pub fn direct_sum(&self, other: &FdModule) -> Result<FdModule> {
        self.same_algebra(other)?;
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(FdModule { alg: self.alg, dim: self.dim + other.dim, z })
    }

    /// Diagonal tensor product; basis index `(i, j) -> i * other.dim + j`.
    pub fn tensor(&self, other: &FdModule, hopf: Hopf) -> Result<FdModule> {
        self.same_algebra(other)?;
        let f = self.field();
        let ia = Matrix::identity(&f, self.dim);
        let ib = Matrix::identity(&f, other.dim);
        let z = self
            .z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| {
                let mut m = a.kron(&ib)?.add(&ia.kron(b)?);
                if hopf == Hopf::Group {
                    m = m.add(&a.kron(b)?);
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FdModule { alg: self.alg, dim: self.dim * other.dim, z })
    }

    /// `Hom_k(M, k)` with `g` acting by the transpose of `g^{-1}`; so `z_i` acts by
    /// the transpose of `(1 + Z_i)^{-1} - 1 = sum_{j=1}^{p-1} (-Z_i)^j`.
    pub fn dual(&self) -> FdModule {
        let f = self.field();
        let z = self
            .z
            .iter()
            .map(|m| {
                let neg = m.neg();
                let mut acc = Matrix::zeros(&f, self.dim, self.dim);
                let mut pw = Matrix::identity(&f, self.dim);
                for _ in 1..self.alg.p {
                    pw = pw.mul(&neg);
                    acc = acc.add(&pw);
                }
                acc.transpose()
            })
            .collect();
        FdModule { alg: self.alg, dim: self.dim, z }
    }

    /// Restriction along `e`: `z'_i` acts by `prod_j (1 + Z_j)^{B_ji} - 1`.
    pub fn restrict(&self, e: &SubgroupEmbedding) -> Result<FdModule> {
        if e.target_rank() != self.alg.r || e.p() != self.alg.p {
            return Err(Error::InvalidEmbedding(format!(
                "embedding into rank {} over F_{} applied to a rank {} module over F_{}",
                e.target_rank(),
                e.p(),
                self.alg.r,
                self.alg.p
            )));
        }
        let f = self.field();
        let id = Matrix::identity(&f, self.dim);
        let gens: Vec<Matrix> = self.z.iter().map(|z| z.add(&id)).collect();
        let src = ElementaryAbelian::new(self.alg.p, e.source_rank())?;
        let z = (0..e.source_rank())
            .map(|i| {
                let mut g = id.clone();
                for (j, gj) in gens.iter().enumerate() {
                    let b = e.matrix().get(j, i);
                    if b != 0 {
                        g = g.mul(&gj.pow(b as u32));
                    }
                }
                g.sub(&id)
            })
            .collect();
        Ok(FdModule { alg: src, dim: self.dim, z })
    }

    /// Induction along `e`. With `C` the completed embedding matrix, the coset
    /// representatives are `t^c = prod_k t_k^{c_k}` for the added generators `t_k`
    /// (exponent vectors `c` in lexicographic order) and the basis is
    /// `t^c ⊗ n`, indexed `index(c) * dim N + n`.
    pub fn induce(&self, e: &SubgroupEmbedding) -> Result<FdModule> {
        if e.source_rank() != self.alg.r || e.p() != self.alg.p {
            return Err(Error::InvalidEmbedding(format!(
                "embedding of rank {} over F_{} applied to a rank {} module over F_{}",
                e.source_rank(),
                e.p(),
                self.alg.r,
                self.alg.p
            )));
        }
        let p = self.alg.p;
        let f = self.field();
        let (rs, rt) = (e.source_rank(), e.target_rank());
        let target = ElementaryAbelian::new(p, rt)?;
        let c = e.completed();
        let cinv = c.inverse().expect("completed embedding is invertible");
        let cosets = if rt > rs { Some(ElementaryAbelian::new(p, rt - rs)?) } else { None };
        let ncos = cosets.map_or(1, |a| a.order());
        let n = self.dim;
        let total = ncos * n;
        let id_n = Matrix::identity(&f, n);
        // the action of each column generator of C on the induced module
        let mut col_gens: Vec<Matrix> = Vec::with_capacity(rt);
        for k in 0..rs {
            let g = self.z[k].add(&id_n);
            col_gens.push(Matrix::identity(&f, ncos).kron(&g)?);
        }
        if let Some(cos) = cosets {
            for k in 0..rt - rs {
                let mut shift = Matrix::zeros(&f, ncos, ncos);
                for (idx, mut cvec) in cos.monomials().into_iter().enumerate() {
                    cvec[k] = (cvec[k] + 1) % p;
                    shift.set(cos.index(&cvec), idx, 1);
                }
                col_gens.push(shift.kron(&id_n)?);
            }
        }
        let id = Matrix::identity(&f, total);
        let z = (0..rt)
            .map(|j| {
                // e_j = sum_k Cinv[k][j] * C_k, so g_j = prod_k (column generator k)^{Cinv[k][j]}
                let mut g = id.clone();
                for (k, ck) in col_gens.iter().enumerate() {
                    let ex = cinv.get(k, j);
                    if ex != 0 {
                        g = g.mul(&ck.pow(ex as u32));
                    }
                }
                g.sub(&id)
            })
            .collect();
        Ok(FdModule { alg: target, dim: total, z })
    }

    /// Column basis of `rad M = sum_i Z_i M`.
    pub fn radical(&self) -> Matrix {
        let f = self.field();
        let mut all = Matrix::zeros(&f, self.dim, 0);
        for z in &self.z {
            all = all.hstack(z);
        }
        column_basis(&all)
    }

    /// `dim M / rad M`, the number of generators.
    pub fn top_dim(&self) -> usize {
        self.dim - self.radical().cols()
    }

    /// Vectors lifting a basis of `M / rad M`: standard basis vectors
    /// complementing the radical.
    pub fn top_lift(&self) -> Vec<Vec<u8>> {
        let rad = self.radical();
        let p = extend_to_basis(&rad);
        (rad.cols()..self.dim).map(|j| p.column(j)).collect()
    }

    /// The projective cover `kE^b -> M` sending the `j`-th free generator to the
    /// `j`-th top lift; the column for `z^a` in copy `j` is `j * |E| + index(a)`.
    pub fn cover_map(&self) -> Matrix {
        let lifts = self.top_lift();
        let mons = self.all_monomial_actions();
        let mut cols = Vec::with_capacity(lifts.len() * mons.len());
        for v in &lifts {
            for m in &mons {
                cols.push(m.mul_vec(v));
            }
        }
        Matrix::from_columns(&self.field(), self.dim, &cols)
    }

    /// Free of rank `top_dim`, i.e. the cover is bijective.
    pub fn is_projective(&self) -> bool {
        self.dim == self.alg.order() * self.top_dim()
    }

    /// Action of the norm element `prod_i z_i^{p-1}`.
    pub fn norm_action(&self) -> Matrix {
        let a = vec![self.alg.p - 1; self.alg.r];
        self.monomial_action(&a)
    }

    /// Number of `kE` summands in a decomposition of `M`.
    pub fn free_rank(&self) -> usize {
        self.norm_action().rank()
    }

    /// Smallest submodule containing the given columns; returns a column basis.
    pub fn generated_submodule(&self, vectors: &Matrix) -> Matrix {
        let f = self.field();
        let mut span = RowSpace::new(&f, self.dim);
        let mut queue: Vec<Vec<u8>> = Vec::new();
        for j in 0..vectors.cols() {
            let v = vectors.column(j);
            if span.insert(&v) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for z in &self.z {
                let w = z.mul_vec(&v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        let cols: Vec<Vec<u8>> = span.basis().to_vec();
        Matrix::from_columns(&f, self.dim, &cols)
    }

    pub fn is_submodule(&self, basis: &Matrix) -> bool {
        let f = self.field();
        let mut span = RowSpace::new(&f, self.dim);
        for j in 0..basis.cols() {
            span.insert(&basis.column(j));
        }
        self.z.iter().all(|z| (0..basis.cols()).all(|j| span.contains(&z.mul_vec(&basis.column(j)))))
    }

    /// Actions after the change of basis `P` (columns = new basis).
    fn conjugated(&self, p: &Matrix) -> Vec<Matrix> {
        let pinv = p.inverse().expect("basis change must be invertible");
        self.z.iter().map(|z| pinv.mul(z).mul(p)).collect()
    }

    /// The submodule spanned by the independent columns of `basis`.
    pub fn submodule(&self, basis: &Matrix) -> Result<FdModule> {
        if !self.is_submodule(basis) {
            return Err(Error::InvalidModule("span is not a submodule".into()));
        }
        let k = basis.cols();
        let p = extend_to_basis(basis);
        let idx: Vec<usize> = (0..k).collect();
        let z = self.conjugated(&p).into_iter().map(|m| m.select_rows(&idx).select_columns(&idx)).collect();
        Ok(FdModule { alg: self.alg, dim: k, z })
    }

    /// `M / U` for the submodule `U` spanned by the independent columns of `basis`,
    /// on the standard basis vectors that complement `U`.
    pub fn quotient(&self, basis: &Matrix) -> Result<FdModule> {
        if !self.is_submodule(basis) {
            return Err(Error::InvalidModule("span is not a submodule".into()));
        }
        let k = basis.cols();
        let p = extend_to_basis(basis);
        let idx: Vec<usize> = (k..self.dim).collect();
        let z = self.conjugated(&p).into_iter().map(|m| m.select_rows(&idx).select_columns(&idx)).collect();
        Ok(FdModule { alg: self.alg, dim: self.dim - k, z })
    }

    /// `M` with its free summands removed.
    pub fn projective_free_core(&self) -> FdModule {
        let norm = self.norm_action();
        let cols = norm.independent_columns();
        if cols.is_empty() {
            return self.clone();
        }
        // each standard vector e_j with N e_j != 0 generates a free summand,
        // and together they generate a free summand of rank |cols|
        let gens = Matrix::identity(&self.field(), self.dim).select_columns(&cols);
        let sub = self.generated_submodule(&gens);
        self.quotient(&sub).expect("generated span is a submodule")
    }

    /// `Ω M`, the kernel of the projective cover.
    pub fn syzygy(&self) -> FdModule {
        let cover = self.cover_map();
        let b = self.top_dim();
        let mut free = FdModule::zero(self.alg);
        let ke = FdModule::free(self.alg);
        for _ in 0..b {
            free = free.direct_sum(&ke).expect("same algebra");
        }
        let ker = cover.kernel();
        free.submodule(&ker).expect("kernel of a module map is a submodule")
    }

    /// Whether the `other.dim × self.dim` matrix `f` commutes with every action.
    pub fn is_module_map(&self, other: &FdModule, f: &Matrix) -> bool {
        f.rows() == other.dim
            && f.cols() == self.dim
            && self.z.iter().zip(&other.z).all(|(a, b)| f.mul(a) == b.mul(f))
    }

    /// Basis of `Hom_kE(M, N)`; each map is an `N.dim × M.dim` matrix.
    pub fn hom_basis(&self, other: &FdModule) -> Result<Vec<Matrix>> {
        self.same_algebra(other)?;
        let (m, n) = (self.dim, other.dim);
        let f = self.field();
        // unknown X (n×m) flattened row-major: X[a][b] at a*m + b
        let mut eqs = Matrix::zeros(&f, self.alg.r * n * m, n * m);
        for (i, (za, zb)) in self.z.iter().zip(&other.z).enumerate() {
            for a in 0..n {
                for b in 0..m {
                    let row = (i * n + a) * m + b;
                    // (X Za - Zb X)[a][b] = sum_c X[a][c] Za[c][b] - sum_c Zb[a][c] X[c][b]
                    for c in 0..m {
                        let v = za.get(c, b);
                        if v != 0 {
                            let col = a * m + c;
                            eqs.set(row, col, f.add(eqs.get(row, col), v));
                        }
                    }
                    for c in 0..n {
                        let v = zb.get(a, c);
                        if v != 0 {
                            let col = c * m + b;
                            eqs.set(row, col, f.sub(eqs.get(row, col), v));
                        }
                    }
                }
            }
        }
        let ker = eqs.kernel();
        Ok((0..ker.cols())
            .map(|k| {
                let v = ker.column(k);
                Matrix::from_fn(&f, n, m, |a, b| v[a * m + b])
            })
            .collect())
    }
}
