use proptest::prelude::*;
use rand::Rng;

use strat_core::bgg::random_lambda_module;
use strat_core::json::{parse_module, module_to_json, ModuleJson};
use strat_core::module::{ElementaryAbelian, FdModule};
use strat_core::poly::{divides, lcm, mono_div, PolyRing, Polynomial, RingRef};
use strat_core::random::{random_matrix, random_module_up_to, stream};
use strat_core::resolution::CohomRing;
use strat_core::support::{support, Variety};
use strat_core::Field;

fn small_module(seed: u64, p: u32, r: usize, max_dim: usize) -> FdModule {
    let mut rng = stream(seed, "properties", 0);
    random_module_up_to(&mut rng, ElementaryAbelian::new(p, r).unwrap(), max_dim)
}

/// Textbook division by a list, leading terms first.
fn naive_remainder(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = Field::prime(ring.p()).unwrap();
    let p = ring.p();
    let mut rem = Polynomial::zero(&ring);
    let mut f = f.clone();
    'outer: while let Some((lm, lc)) = f.leading().map(|(m, c)| (m.clone(), c)) {
        for h in g {
            let (hm, hc) = h.leading().unwrap();
            if divides(hm, &lm) {
                let c = lc * field.inv(hc as u8).unwrap() as u32 % p;
                f = f.sub(&h.mul_term(&mono_div(&lm, hm), c));
                continue 'outer;
            }
        }
        rem = rem.add(&Polynomial::term(&ring, lm.clone(), lc as i64));
        f = f.tail();
    }
    rem
}

/// Buchberger without criteria; the result is a Gröbner basis, not reduced.
fn naive_buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = gens.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (a, ac) = g[i].leading().unwrap();
        let (b, bc) = g[j].leading().unwrap();
        let l = lcm(a, b);
        let p = g[i].ring().p();
        let s = g[i].mul_term(&mono_div(&l, a), bc).sub(&g[j].mul_term(&mono_div(&l, b), ac % p));
        let h = naive_remainder(&s, &g);
        if !h.is_zero() {
            g.push(h);
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    g
}

fn random_polys(seed: u64, ring: &RingRef, count: usize) -> Vec<Polynomial> {
    let mut rng = stream(seed, "properties/poly", 0);
    (0..count)
        .map(|_| {
            let mut f = Polynomial::zero(ring);
            for _ in 0..rng.gen_range(1..=3) {
                let mono: Vec<u16> = (0..ring.nvars()).map(|_| rng.gen_range(0..=2)).collect();
                f = f.add(&Polynomial::term(ring, mono, rng.gen_range(1..ring.p()) as i64));
            }
            f
        })
        .collect()
}

fn minimal_leads(g: &[Polynomial]) -> Vec<Vec<u16>> {
    let leads: Vec<Vec<u16>> = g.iter().filter_map(|f| f.leading().map(|(m, _)| m.clone())).collect();
    let mut out: Vec<Vec<u16>> = leads
        .iter()
        .filter(|m| !leads.iter().any(|n| n != *m && divides(n, m)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity(p in prop::sample::select(vec![2u32, 3, 5, 7]), rows in 1usize..9, cols in 1usize..9, seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let mut rng = stream(seed, "properties/matrix", 0);
        let a = random_matrix(&mut rng, &f, rows, cols);
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.cols(), cols);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn reduced_basis_matches_naive_buchberger(p in prop::sample::select(vec![2u32, 3, 5]), n in 2usize..4, count in 1usize..4, seed in any::<u64>()) {
        let ring = PolyRing::new(p, n, 1).unwrap();
        let gens = random_polys(seed, &ring, count);
        let ideal = strat_core::ideal::Ideal::new(&ring, gens.clone()).unwrap();
        let reduced = ideal.groebner().to_vec();
        let naive = naive_buchberger(&gens);
        prop_assert_eq!(minimal_leads(&naive), minimal_leads(&reduced));
        for f in &naive {
            prop_assert!(naive_remainder(f, &reduced).is_zero());
        }
        for f in &reduced {
            prop_assert!(naive_remainder(f, &naive).is_zero());
        }
    }

    #[test]
    fn module_json_round_trip(p in prop::sample::select(vec![2u32, 3, 5]), r in 1usize..4, seed in any::<u64>()) {
        let m = small_module(seed, p, r, 8);
        let text = module_to_json(&m);
        let back = parse_module(&text).unwrap();
        prop_assert_eq!(back.actions(), m.actions());
        prop_assert_eq!(module_to_json(&back), text);
        prop_assert_eq!(ModuleJson::from_module(&back).digest(), ModuleJson::from_module(&m).digest());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn support_of_sum_is_union_and_dual_is_same(p in prop::sample::select(vec![2u32, 3]), r in 1usize..4, seed in any::<u64>()) {
        let m = small_module(seed, p, r, 6);
        let n = small_module(seed ^ 0x5eed, p, r, 6);
        let vm = support(&m).unwrap();
        let vn = support(&n).unwrap();
        let vs = support(&m.direct_sum(&n).unwrap()).unwrap();
        prop_assert!(vs.equals(&vm.union(&vn).unwrap()).unwrap());
        prop_assert!(support(&m.dual()).unwrap().equals(&vm).unwrap());
    }

    #[test]
    fn variety_lattice_laws(p in prop::sample::select(vec![2u32, 3]), r in 2usize..4, seed in any::<u64>()) {
        let ring = CohomRing::new(ElementaryAbelian::new(p, r).unwrap());
        let vars: Vec<Variety> = (0..3u64)
            .map(|i| support(&small_module(seed.wrapping_add(i), p, r, 5)).unwrap())
            .collect();
        let (a, b, c) = (&vars[0], &vars[1], &vars[2]);
        let all = Variety::everything(&ring);
        let none = Variety::origin(&ring);
        prop_assert!(a.union(b).unwrap().equals(&b.union(a).unwrap()).unwrap());
        prop_assert!(a.intersect(b).unwrap().equals(&b.intersect(a).unwrap()).unwrap());
        prop_assert!(a.union(&a.intersect(b).unwrap()).unwrap().equals(a).unwrap());
        prop_assert!(a.intersect(&a.union(b).unwrap()).unwrap().equals(a).unwrap());
        let lhs = a.intersect(&b.union(c).unwrap()).unwrap();
        let rhs = a.intersect(b).unwrap().union(&a.intersect(c).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
        prop_assert!(all.contains(a).unwrap() && a.contains(&none).unwrap());
        prop_assert!(a.union(b).unwrap().contains(a).unwrap());
        prop_assert!(a.contains(&a.intersect(b).unwrap()).unwrap());
    }

    #[test]
    fn random_dg_modules_verify(p in prop::sample::select(vec![2u32, 3, 5]), r in 1usize..4, seed in any::<u64>()) {
        let mut rng = stream(seed, "properties/dg", 0);
        let m = random_lambda_module(&mut rng, p, r).unwrap();
        prop_assert!(m.verify().is_ok());
        let d = m.differential();
        prop_assert!(d.mul(d).is_zero());
    }
}
