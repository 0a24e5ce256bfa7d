//! Small finite p-groups given by multiplication tables, and their modules.
//!
//! Only what projectivity detection on elementary abelian subgroups needs:
//! projectivity, restriction to an elementary abelian subgroup, tensor products.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::matrix::Matrix;
use crate::module::{column_basis, ElementaryAbelian, FdModule};

/// Elements are `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
}

impl FiniteGroup {
    /// Validates identity, closure, inverses and associativity.
    pub fn from_table(name: &str, order: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 || order > 64 || table.len() != order * order {
            return Err(Error::InvalidModule(format!("group table of order {order} must have {} entries", order * order)));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidModule("table entry out of range".into()));
        }
        let g = FiniteGroup { name: name.into(), order, table };
        for a in 0..order {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return Err(Error::InvalidModule("element 0 is not the identity".into()));
            }
            if !(0..order).any(|b| g.mul(a, b) == 0) {
                return Err(Error::InvalidModule(format!("element {a} has no inverse")));
            }
            for b in 0..order {
                for c in 0..order {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::InvalidModule("table is not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `Z/n` with `k` standing for the `k`-th power of a generator.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(&format!("Z/{n}"), n, table)
    }

    /// `Q_8 = {±1, ±i, ±j, ±k}` encoded as `sign * 4 + unit` with units `1, i, j, k`
    /// at `0..4` and the negatives at `4..8`.
    pub fn quaternion() -> FiniteGroup {
        // unit products: (unit, sign flip)
        let prod = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, flip) = prod(a % 4, b % 4);
                let neg = (a >= 4) ^ (b >= 4) ^ flip;
                table[a * 8 + b] = u + if neg { 4 } else { 0 };
            }
        }
        Self::from_table("Q_8", 8, table).expect("quaternion table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }
    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let x = self.mul(elems[i], g);
                if !elems.contains(&x) {
                    elems.push(x);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Checks that `gens` is a basis of an elementary abelian p-subgroup: they
    /// commute, have order p, and generate a group of order `p^len`.
    pub fn check_elementary_abelian(&self, p: u32, gens: &[usize]) -> Result<()> {
        for &a in gens {
            if a >= self.order {
                return Err(Error::NotElementaryAbelian(format!("element {a} out of range")));
            }
            if a == 0 || self.pow(a, p) != 0 {
                return Err(Error::NotElementaryAbelian(format!("element {a} does not have order {p}")));
            }
            for &b in gens {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::NotElementaryAbelian(format!("elements {a} and {b} do not commute")));
                }
            }
        }
        let size = self.generated(gens).len();
        if size != (p as usize).pow(gens.len() as u32) {
            return Err(Error::NotElementaryAbelian(format!("generators {gens:?} are not independent")));
        }
        Ok(())
    }
}

/// A representation `G -> GL_n(F_p)` given by one matrix per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModule {
    group: Arc<FiniteGroup>,
    p: u32,
    dim: usize,
    actions: Vec<Matrix>,
}

impl GroupModule {
    /// Checks `rho(0) = 1` and `rho(ab) = rho(a) rho(b)`; `|G|` must be a power of `p`.
    pub fn new(group: Arc<FiniteGroup>, p: u32, actions: Vec<Matrix>) -> Result<GroupModule> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut o = group.order;
        while o % p as usize == 0 {
            o /= p as usize;
        }
        if o != 1 {
            return Err(Error::InvalidModule(format!("{} is not a {p}-group", group.name)));
        }
        if actions.len() != group.order {
            return Err(Error::InvalidModule("one matrix per group element required".into()));
        }
        let dim = actions[0].rows();
        let f = Field::prime(p)?;
        if actions[0] != Matrix::identity(&f, dim) {
            return Err(Error::InvalidModule("identity must act trivially".into()));
        }
        for a in 0..group.order {
            for b in 0..group.order {
                if actions[group.mul(a, b)] != actions[a].mul(&actions[b]) {
                    return Err(Error::InvalidModule(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(GroupModule { group, p, dim, actions })
    }

    pub fn trivial(group: Arc<FiniteGroup>, p: u32) -> Result<GroupModule> {
        let f = Field::prime(p)?;
        let actions = vec![Matrix::identity(&f, 1); group.order];
        Self::new(group, p, actions)
    }

    /// Left regular representation on the basis of group elements.
    pub fn regular(group: Arc<FiniteGroup>, p: u32) -> Result<GroupModule> {
        let f = Field::prime(p)?;
        let n = group.order;
        let actions = (0..n).map(|g| Matrix::from_fn(&f, n, n, |i, j| (group.mul(g, j) == i) as u8)).collect();
        Self::new(group, p, actions)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, g: usize) -> &Matrix {
        &self.actions[g]
    }

    /// `rad M = I_G M` where the augmentation ideal is spanned by `g - 1`.
    pub fn radical(&self) -> Matrix {
        let f = Field::prime(self.p).unwrap();
        let id = Matrix::identity(&f, self.dim);
        let mut all = Matrix::zeros(&f, self.dim, 0);
        for a in &self.actions[1..] {
            all = all.hstack(&a.sub(&id));
        }
        column_basis(&all)
    }

    /// `kG` is local, so projective means free: `dim M = |G| · dim(M / rad M)`.
    pub fn is_projective(&self) -> bool {
        let top = self.dim - self.radical().cols();
        self.dim == self.group.order * top
    }

    /// Diagonal action `g ↦ ρ(g) ⊗ σ(g)`.
    pub fn tensor(&self, other: &GroupModule) -> Result<GroupModule> {
        if self.group != other.group || self.p != other.p {
            return Err(Error::AlgebraMismatch("tensor of modules over different groups".into()));
        }
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| a.kron(b)).collect::<Result<Vec<_>>>()?;
        Ok(GroupModule { group: self.group.clone(), p: self.p, dim: self.dim * other.dim, actions })
    }

    /// Restriction to the elementary abelian subgroup with basis `gens`; the
    /// `i`-th basis element becomes `1 + z_i`.
    pub fn restrict(&self, gens: &[usize]) -> Result<FdModule> {
        self.group.check_elementary_abelian(self.p, gens)?;
        let alg = ElementaryAbelian::new(self.p, gens.len())?;
        let f = alg.field();
        let id = Matrix::identity(&f, self.dim);
        let z = gens.iter().map(|&g| self.actions[g].sub(&id)).collect();
        FdModule::new(alg, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_groups() {
        let q = FiniteGroup::quaternion();
        assert_eq!(q.order(), 8);
        // i^2 = j^2 = k^2 = ijk = -1
        assert_eq!(q.mul(1, 1), 4);
        assert_eq!(q.mul(q.mul(1, 2), 3), 4);
        assert_eq!(q.generated(&[1, 2]).len(), 8);
        assert!(FiniteGroup::cyclic(4).is_ok());
        assert!(FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn elementary_abelian_checks() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert!(z4.check_elementary_abelian(2, &[2]).is_ok());
        assert!(z4.check_elementary_abelian(2, &[1]).is_err());
        let q = FiniteGroup::quaternion();
        assert!(q.check_elementary_abelian(2, &[4]).is_ok());
        assert!(q.check_elementary_abelian(2, &[1]).is_err());
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert!(c2.check_elementary_abelian(2, &[1, 1]).is_err());
    }

    #[test]
    fn projectivity_over_groups_and_subgroups() {
        for g in [FiniteGroup::cyclic(4).unwrap(), FiniteGroup::quaternion()] {
            let g = Arc::new(g);
            let sub = if g.order() == 4 { vec![2] } else { vec![4] };
            let reg = GroupModule::regular(g.clone(), 2).unwrap();
            assert!(reg.is_projective());
            assert!(reg.restrict(&sub).unwrap().is_projective());
            let k = GroupModule::trivial(g.clone(), 2).unwrap();
            assert!(!k.is_projective());
            assert!(!k.restrict(&sub).unwrap().is_projective());
            let t = reg.tensor(&k).unwrap();
            assert!(t.is_projective());
        }
    }
}
