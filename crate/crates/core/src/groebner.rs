//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use crate::poly::{divides, lcm, mono_div, Monomial, Polynomial};

/// Fully reduces `f` modulo `basis` (every term, not just the leading one).
/// Basis elements need not be monic.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let p = ring.p();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    let mut g = f.clone();
    'outer: while let Some((lm, lc)) = g.leading().map(|(m, c)| (m.clone(), c)) {
        for b in basis {
            let Some((bm, bc)) = b.leading() else { continue };
            if divides(bm, &lm) {
                let factor = lc * crate::poly::inv_mod(bc, p) % p;
                let q = mono_div(&lm, bm);
                g = g.sub(&b.mul_term(&q, factor));
                continue 'outer;
            }
        }
        // leading term is irreducible; move it to the remainder
        rem.push((lm, lc));
        g = g.tail();
    }
    Polynomial::from_sorted(&ring, rem)
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = lcm(fm, gm);
    let p = f.ring().p();
    let a = f.mul_term(&mono_div(&l, fm), crate::poly::inv_mod(fc, p));
    let b = g.mul_term(&mono_div(&l, gm), crate::poly::inv_mod(gc, p));
    a.sub(&b)
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

struct Builder {
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<(usize, usize, Monomial)>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading().unwrap().0
    }

    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let hm = self.lm(hi).clone();

        // candidate new pairs (g, h)
        let cands: Vec<(usize, Monomial)> =
            (0..hi).filter(|&g| self.active[g]).map(|g| (g, lcm(self.lm(g), &hm))).collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let cop = coprime(self.lm(*g), &hm);
            // chain criterion among the new pairs: drop if another lcm strictly divides,
            // or an equal lcm appears earlier
            let dominated = cands.iter().enumerate().any(|(j, (_, l2))| {
                j != k && divides(l2, l) && (l2 != l || j < k)
            });
            if cop || !dominated {
                kept.push((*g, l.clone(), cop));
            }
        }
        // old pairs whose lcm is divisible by lm(h) with both partial lcms different
        let polys = &self.polys;
        self.pairs.retain(|(a, b, l)| {
            if !divides(&hm, l) {
                return true;
            }
            let la = lcm(polys[*a].leading().unwrap().0, &hm);
            let lb = lcm(polys[*b].leading().unwrap().0, &hm);
            la == *l || lb == *l
        });
        for (g, l, cop) in kept {
            if !cop {
                self.pairs.push((g, hi, l));
            }
        }
        for g in 0..hi {
            if self.active[g] && divides(&hm, self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn basis(&self) -> Vec<Polynomial> {
        (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| self.polys[i].clone()).collect()
    }
}

/// Reduced Gröbner basis: monic, no leading monomial divides another term,
/// sorted by increasing leading monomial.
pub fn groebner_basis(generators: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut b = Builder { polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|x, y| ring.cmp(x.leading().unwrap().0, y.leading().unwrap().0));
    for g in input {
        let h = normal_form(&g, &b.basis());
        if !h.is_zero() {
            if h.is_constant() {
                return vec![Polynomial::constant(&ring, 1)];
            }
            b.update(h.monic());
        }
    }
    while !b.pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let idx = (0..b.pairs.len())
            .min_by(|&x, &y| ring.cmp(&b.pairs[x].2, &b.pairs[y].2))
            .unwrap();
        let (i, j, _) = b.pairs.swap_remove(idx);
        let s = spoly(&b.polys[i], &b.polys[j]);
        let h = normal_form(&s, &b.basis());
        if !h.is_zero() {
            if h.is_constant() {
                return vec![Polynomial::constant(&ring, 1)];
            }
            b.update(h.monic());
        }
    }
    reduce_basis(b.basis())
}

/// Interreduces a Gröbner basis into the reduced one.
pub fn reduce_basis(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    g.retain(|p| !p.is_zero());
    if g.is_empty() {
        return g;
    }
    let ring = g[0].ring().clone();
    g.sort_by(|x, y| ring.cmp(x.leading().unwrap().0, y.leading().unwrap().0));
    // drop elements whose leading monomial is divisible by an earlier one
    let mut minimal: Vec<Polynomial> = Vec::new();
    for f in g {
        if !minimal.iter().any(|m| divides(m.leading().unwrap().0, f.leading().unwrap().0)) {
            minimal.retain(|m| !divides(f.leading().unwrap().0, m.leading().unwrap().0));
            minimal.push(f);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
        let (lm, lc) = minimal[i].leading().map(|(m, c)| (m.clone(), c)).unwrap();
        let tail = minimal[i].tail();
        let reduced_tail = normal_form(&tail, &others);
        let f = Polynomial::from_sorted(&ring, vec![(lm, lc)]).add(&reduced_tail);
        out.push(f.monic());
    }
    out.sort_by(|x, y| ring.cmp(x.leading().unwrap().0, y.leading().unwrap().0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn parse_all(ring: &crate::poly::RingRef, xs: &[&str]) -> Vec<Polynomial> {
        xs.iter().map(|s| Polynomial::parse(ring, s).unwrap()).collect()
    }

    #[test]
    fn containment_collapses() {
        let r = PolyRing::new(2, 1, 1).unwrap();
        let gb = groebner_basis(&parse_all(&r, &["x1^2", "x1"]));
        assert_eq!(gb, parse_all(&r, &["x1"]));
    }

    #[test]
    fn linear_reduction() {
        let r = PolyRing::new(3, 2, 1).unwrap();
        let gb = groebner_basis(&parse_all(&r, &["x1 + x2", "x2"]));
        assert_eq!(gb, parse_all(&r, &["x2", "x1"]));
    }

    #[test]
    fn unit_ideal_detected() {
        let r = PolyRing::new(2, 2, 1).unwrap();
        let gb = groebner_basis(&parse_all(&r, &["x1*x2 + 1", "x1"]));
        assert_eq!(gb, parse_all(&r, &["1"]));
    }

    #[test]
    fn idempotent() {
        let r = PolyRing::new(3, 3, 1).unwrap();
        let g = parse_all(&r, &["x1^2 + 2*x2*x3", "x2^2 + x1*x3", "x3^3 + x1*x2*x3"]);
        let gb = groebner_basis(&g);
        assert_eq!(groebner_basis(&gb), gb);
        for f in &g {
            assert!(normal_form(f, &gb).is_zero());
        }
    }
}
