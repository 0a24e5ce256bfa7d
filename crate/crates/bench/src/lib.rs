//! Seeded inputs shared by the benchmarks in `benches/`.

use strat_core::module::{ElementaryAbelian, FdModule};
use strat_core::random::{random_matrix, random_module, stream};
use strat_core::{Field, Matrix};

pub fn square_matrix(p: u32, n: usize) -> Matrix {
    let field = Field::prime(p).expect("prime");
    random_matrix(&mut stream(7, "bench/matrix", n as u64), &field, n, n)
}

pub fn module(p: u32, r: usize, dim: usize) -> FdModule {
    let alg = ElementaryAbelian::new(p, r).expect("valid group");
    random_module(&mut stream(7, "bench/module", dim as u64), alg, dim)
}
