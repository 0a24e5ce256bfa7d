//! Seeded generators for modules, embeddings and small matrices.
//!
//! Every consumer draws from its own ChaCha stream selected by a name and an
//! index, so adding a new consumer never shifts the numbers another one sees.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Field;
use crate::matrix::{Matrix, RowSpace};
use crate::module::{ElementaryAbelian, FdModule, SubgroupEmbedding};

fn fnv1a(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The stream `(name, index)` of the generator seeded by `seed`.
pub fn stream(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(name) ^ index.rotate_left(32));
    rng
}

pub fn random_matrix(rng: &mut impl Rng, field: &Field, rows: usize, cols: usize) -> Matrix {
    let q = field.order() as u8;
    Matrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..q))
}

pub fn random_invertible(rng: &mut impl Rng, field: &Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

fn random_vector(rng: &mut impl Rng, p: u32, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..p as u8)).collect()
}

/// Column basis of the common kernel of the actions.
fn socle(m: &FdModule) -> Matrix {
    let f = m.field();
    let mut stacked = Matrix::zeros(&f, 0, m.dim());
    for z in m.actions() {
        stacked = stacked.vstack(z);
    }
    stacked.kernel()
}

/// Basis `rad^L M ⊂ ... ⊂ rad M ⊂ M`, deepest layer first, so every action is
/// strictly upper triangular.
fn radical_filtration_basis(m: &FdModule) -> Matrix {
    let f = m.field();
    let n = m.dim();
    let mut layers = vec![Matrix::identity(&f, n)];
    loop {
        let last = layers.last().unwrap();
        let mut next = Matrix::zeros(&f, n, 0);
        for z in m.actions() {
            next = next.hstack(&z.mul(last));
        }
        let next = next.select_columns(&next.independent_columns());
        if next.cols() == 0 {
            break;
        }
        layers.push(next);
    }
    let mut span = RowSpace::new(&f, n);
    let mut cols = Vec::with_capacity(n);
    for layer in layers.iter().rev() {
        for j in 0..layer.cols() {
            let c = layer.column(j);
            if span.insert(&c) {
                cols.push(c);
            }
        }
    }
    Matrix::from_columns(&f, n, &cols)
}

/// A random module of dimension exactly `dim`: a quotient of a free module by
/// random cyclic submodules (and socle vectors to hit `dim` exactly), sometimes
/// dualized or replaced by a free module, then written in a random basis.
pub fn random_module(rng: &mut impl Rng, alg: ElementaryAbelian, dim: usize) -> FdModule {
    if dim == 0 {
        return FdModule::zero(alg);
    }
    let order = alg.order();
    let f = alg.field();
    let free_of_rank = |a: usize| {
        let ke = FdModule::free(alg);
        (1..a).fold(ke.clone(), |acc, _| acc.direct_sum(&ke).unwrap())
    };
    let m = if dim % order == 0 && rng.gen_ratio(1, 4) {
        free_of_rank(dim / order)
    } else {
        let base = dim.div_ceil(order).max(1);
        let a = base + rng.gen_range(0..=1usize).min(dim - base);
        let mut q = free_of_rank(a);
        while q.dim() > dim {
            let v = random_vector(rng, alg.p(), q.dim());
            let vm = Matrix::from_columns(&f, q.dim(), &[v]);
            let sub = q.generated_submodule(&vm);
            if sub.cols() > 0 && q.dim() - sub.cols() >= dim {
                q = q.quotient(&sub).unwrap();
                continue;
            }
            let soc = socle(&q);
            let coeffs = random_vector(rng, alg.p(), soc.cols());
            let w = soc.mul_vec(&coeffs);
            if w.iter().any(|&x| x != 0) {
                q = q.quotient(&Matrix::from_columns(&f, q.dim(), &[w])).unwrap();
            }
        }
        if rng.gen_bool(0.5) {
            q.dual()
        } else {
            q
        }
    };
    let adapted = radical_filtration_basis(&m);
    let g = random_invertible(rng, &f, dim);
    let basis = adapted.mul(&g.inverse().unwrap());
    let binv = basis.inverse().unwrap();
    let z = m.actions().iter().map(|a| binv.mul(a).mul(&basis)).collect();
    FdModule::new_unchecked(alg, z)
}

/// Random module with dimension uniform in `1..=dim_max`.
pub fn random_module_up_to(rng: &mut impl Rng, alg: ElementaryAbelian, dim_max: usize) -> FdModule {
    let d = rng.gen_range(1..=dim_max.max(1));
    random_module(rng, alg, d)
}

/// A random subgroup embedding of corank `corank` into rank `r`.
pub fn random_embedding(rng: &mut impl Rng, p: u32, r: usize, corank: usize) -> Result<SubgroupEmbedding> {
    let f = Field::prime(p)?;
    let k = r - corank;
    loop {
        let b = random_matrix(rng, &f, r, k);
        if b.rank() == k {
            return SubgroupEmbedding::new(b);
        }
    }
}
