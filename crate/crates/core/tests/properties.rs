use proptest::prelude::*;

use epicyclic::barcat::{cyclic_bar, Monoid};
use epicyclic::ring::{Integers, IntegersMod};
use epicyclic::schema::{parse_document, to_json, Document, SimplicialDoc, WittDoc};
use epicyclic::simplicial::{builtin, Monotone, SimplicialSet};
use epicyclic::witt::{TruncationSet, WittVector};
use num_bigint::BigInt;

fn monotone(domain: usize, codomain: usize) -> impl Strategy<Value = Monotone> {
    prop::collection::vec(0..=codomain, domain + 1).prop_map(move |mut v| {
        v.sort_unstable();
        Monotone::new(v, codomain).unwrap()
    })
}

fn spaces() -> Vec<SimplicialSet> {
    vec![
        builtin("circle", 5).unwrap(),
        builtin("sphere2", 5).unwrap(),
        cyclic_bar(&Monoid::symmetric3().as_category(), 4).set,
    ]
}

proptest! {
    #[test]
    fn monotone_action_is_contravariant(
        (f, g) in (0usize..=4, 0usize..=4, 0usize..=4).prop_flat_map(|(m, n, p)| (monotone(m, n), monotone(n, p))),
    ) {
        let p = g.codomain();
        for x in spaces() {
            for sigma in 0..x.count(p).min(40) {
                let direct = x.apply_monotone(&g.after(&f), sigma).unwrap();
                let stepwise = x.apply_monotone(&f, x.apply_monotone(&g, sigma).unwrap()).unwrap();
                prop_assert_eq!(direct, stepwise);
            }
        }
    }

    #[test]
    fn eilenberg_zilber_decomposition_is_unique(k in 0usize..=4) {
        for x in spaces() {
            let nondeg = x.nondegenerate(k).unwrap_or_default();
            for sigma in 0..x.count(k) {
                let (word, base_degree, base) = x.eilenberg_zilber(k, sigma);
                let base_nondeg = x.nondegenerate(base_degree).unwrap();
                prop_assert!(base_nondeg.contains(&base));
                let mut y = base;
                let mut d = base_degree;
                prop_assert!(word.windows(2).all(|w| w[0] > w[1]));
                for &j in word.iter().rev() {
                    y = x.degeneracy(d, j, y);
                    d += 1;
                }
                prop_assert_eq!(d, k);
                prop_assert_eq!(y, sigma);
                prop_assert_eq!(word.is_empty(), nondeg.contains(&sigma));
            }
        }
    }

    #[test]
    fn witt_arithmetic_reduces_mod_m(
        a in prop::collection::vec(-20i64..=20, 6),
        b in prop::collection::vec(-20i64..=20, 6),
        m in 2u64..=12,
    ) {
        let set = TruncationSet::divisors_of(12);
        let lift = |c: &[i64]| WittVector::from_coords(Integers, set.clone(), c.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let ring = IntegersMod::new(m).unwrap();
        let reduce = |v: &WittVector<Integers>| v.map_ring(ring, |x| {
            let r: BigInt = ((x % m) + m) % m;
            u64::try_from(r).unwrap()
        });
        let (x, y) = (lift(&a), lift(&b));
        prop_assert_eq!(reduce(&x.mul(&y).unwrap()), reduce(&x).mul(&reduce(&y)).unwrap());
        prop_assert_eq!(reduce(&x.add(&y).unwrap()), reduce(&x).add(&reduce(&y)).unwrap());
        for r in [2u64, 3] {
            prop_assert_eq!(reduce(&x.frobenius(r)), reduce(&x).frobenius(r));
        }
    }

    #[test]
    fn witt_documents_round_trip(c in prop::collection::vec(-1000i64..=1000, 4)) {
        let v = WittVector::from_coords(Integers, TruncationSet::divisors_of(6), c.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let doc = Document::Witt(WittDoc::from_vector(&v));
        let back = parse_document(&to_json(&doc)).unwrap();
        let Document::Witt(w) = back else { panic!("kind changed") };
        prop_assert_eq!(w.to_vector(Integers).unwrap(), v);
    }
}

#[test]
fn simplicial_documents_round_trip() {
    for x in spaces() {
        let doc = Document::Simplicial(SimplicialDoc::from_set(&x));
        let Document::Simplicial(back) = parse_document(&to_json(&doc)).unwrap() else { panic!("kind changed") };
        assert_eq!(back.to_set().unwrap(), x);
    }
}
