use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use twistkit_core::homology::{evaluate, transvection, Assignment, Mod2Class};
use twistkit_core::presentation::Presentation;
use twistkit_core::word::{parse_word, Letter};
use twistkit_core::{Alphabet, SurfaceModel, Word};

fn alphabet() -> Arc<Alphabet> {
    Alphabet::new(["a1", "a2", "e", "y2"]).unwrap()
}

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..4, any::<bool>()), 0..24)
        .prop_map(|ls| Word::from_letters(&alphabet(), ls.into_iter().map(|(g, i)| Letter::new(g, i))))
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases(10_000))]

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!(w.multiply(&w.inverse()).unwrap().is_empty());
        prop_assert!(w.inverse().multiply(&w).unwrap().is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn transvection_invariants(g in 1usize..9, n in 0usize..3, bits in any::<u64>()) {
        let m = SurfaceModel::new(g, n).unwrap();
        let c = Mod2Class(bits & ((1u64 << m.rank()) - 1));
        match transvection(&m, c) {
            Ok(t) => {
                prop_assert!(m.is_two_sided(c));
                prop_assert!(t.compose(&t).is_identity());
                prop_assert!(t.preserves_pairing(&m));
            }
            Err(_) => prop_assert!(!m.is_two_sided(c)),
        }
    }
}

proptest! {
    #![proptest_config(cases(2_000))]

    #[test]
    fn multiply_is_associative(u in word(), v in word(), w in word()) {
        let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
        let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reparsing_is_stable(w in word()) {
        let again = parse_word(&w.to_string(), &alphabet()).unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(parse_word(&again.to_string(), &alphabet()).unwrap(), w);
    }

    #[test]
    fn cyclic_reduce_reassembles(w in word()) {
        let (core, conj) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(Word::conjugate(&conj, &core).unwrap(), w);
    }

    #[test]
    fn exponent_sum_is_additive(u in word(), v in word()) {
        let uv = u.multiply(&v).unwrap();
        for g in ["a1", "y2"] {
            prop_assert_eq!(uv.exponent_sum(g), u.exponent_sum(g) + v.exponent_sum(g));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(), v in word(), a in word(), b in word()) {
        let target = alphabet();
        let map = BTreeMap::from([("a1".to_string(), a), ("e".to_string(), b)]);
        let whole = u.multiply(&v).unwrap().substitute(&target, &map).unwrap();
        let parts = u.substitute(&target, &map).unwrap().multiply(&v.substitute(&target, &map).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(), v in word(), cs in proptest::collection::vec(0u64..16, 4)) {
        let m = SurfaceModel::new(4, 0).unwrap();
        let mut a = Assignment::new();
        for (name, bits) in alphabet().names().iter().zip(cs) {
            let c = Mod2Class(bits);
            let c = if m.is_two_sided(c) { c } else { Mod2Class(0) };
            a.insert(name.clone(), transvection(&m, c).unwrap());
        }
        let ev = |w: &Word| evaluate(w, m.rank(), &a).unwrap();
        prop_assert_eq!(ev(&u.multiply(&v).unwrap()), ev(&u).compose(&ev(&v)));
        prop_assert!(ev(&u).compose(&ev(&u.inverse())).is_identity());
    }

    #[test]
    fn tietze_and_simplify_keep_abelianization(rels in proptest::collection::vec(word(), 1..5), def in word()) {
        let mut p = Presentation::new(alphabet());
        for (i, r) in rels.into_iter().enumerate() {
            p.push(format!("r{i}"), r, None);
        }
        let inv = p.abelianization();
        prop_assert_eq!(p.tietze_add_generator("z", &def).unwrap().abelianization(), inv.clone());
        let s = p.simplify();
        prop_assert_eq!(s.abelianization(), inv);
        prop_assert_eq!(s.simplify().to_text(), s.to_text());
    }
}
