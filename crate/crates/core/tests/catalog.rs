use std::time::Instant;

use twistkit_core::catalog::{
    curve_class, frozen_classes, homology_assignment, instantiate, relator_count, y_parity, CatalogError, EntryId,
    InstantiateOptions, Manifest,
};
use twistkit_core::homology::{evaluate, verify_relators};
use twistkit_core::word::parse_word;
use twistkit_core::SurfaceModel;

/// (g, generators, relators) locked after a hand recount of the guards.
const BOUNDED: [(usize, usize, usize); 6] = [(3, 5, 7), (4, 8, 19), (5, 9, 30), (6, 16, 44), (7, 11, 43), (8, 19, 60)];
/// Closed surfaces, rho / rhobar kept as generators.
const CLOSED: [(usize, usize, usize); 5] = [(4, 9, 26), (5, 10, 40), (6, 17, 53), (7, 12, 55), (8, 20, 71)];
/// Closed surfaces with rho / rhobar substituted away.
const CLOSED_SUBST: [(usize, usize, usize); 5] = [(4, 8, 26), (5, 9, 39), (6, 16, 53), (7, 11, 54), (8, 19, 71)];

fn counts(g: usize, n: usize, opts: &InstantiateOptions) -> (usize, usize) {
    let e = EntryId::twist_entry_for(g, n).unwrap();
    let p = instantiate(e, g, n, opts).unwrap();
    (p.generator_count(), p.relator_count())
}

#[test]
fn genus_three_bounded() {
    let p = instantiate(EntryId::TNg1Odd, 3, 1, &InstantiateOptions::default()).unwrap();
    assert_eq!(p.alphabet().names(), ["a1", "a2", "e", "f", "y2"]);
    assert_eq!(p.labels(), ["A2(i=1)", "Ā2₁", "Ā2₃", "B̄2₁", "B̄2₂", "B̄4₁", "B̄4₂"]);
}

#[test]
fn locked_counts() {
    let plain = InstantiateOptions::default();
    let subst = InstantiateOptions::substituted();
    for (g, gens, rels) in BOUNDED {
        assert_eq!(counts(g, 1, &plain), (gens, rels), "g={g} n=1");
        assert_eq!(counts(g, 1, &subst), (gens, rels), "g={g} n=1 subst");
    }
    for (g, gens, rels) in CLOSED {
        assert_eq!(counts(g, 0, &plain), (gens, rels), "g={g} n=0");
    }
    for (g, gens, rels) in CLOSED_SUBST {
        assert_eq!(counts(g, 0, &subst), (gens, rels), "g={g} n=0 subst");
    }
}

#[test]
fn small_counts() {
    let o = InstantiateOptions::default();
    assert_eq!(relator_count(EntryId::MN20, 2, 0, &o).unwrap(), 3);
    assert_eq!(relator_count(EntryId::TSmall, 3, 0, &o).unwrap(), 2);
    let t20 = instantiate(EntryId::TSmall, 2, 0, &o).unwrap();
    assert_eq!(t20.alphabet().names(), ["a1"]);
    let words: Vec<String> = t20.relators().iter().map(|r| r.word.to_string()).collect();
    assert_eq!(words, ["a1 a1"]);
    assert!(matches!(
        instantiate(EntryId::TNg1Odd, 2, 1, &o),
        Err(CatalogError::InadmissibleParameters { .. })
    ));
}

fn all_instances() -> Vec<(EntryId, usize, usize)> {
    let mut out = Vec::new();
    for e in EntryId::ALL {
        for g in 1..=8 {
            for n in 0..=1 {
                if e.admissible(g, n) {
                    out.push((e, g, n));
                }
            }
        }
    }
    out
}

#[test]
fn instantiations_validate() {
    for opts in [InstantiateOptions::default(), InstantiateOptions::substituted()] {
        for (e, g, n) in all_instances() {
            let p = instantiate(e, g, n, &opts).unwrap();
            assert!(p.validate().is_empty(), "{e} g={g} n={n}: {:?}", p.validate());
        }
    }
}

#[test]
fn every_relator_vanishes_mod_two() {
    let start = Instant::now();
    let table = frozen_classes();
    let mut checked = 0;
    for g in 3..=8 {
        let e = EntryId::twist_entry_for(g, 1).unwrap();
        let p = instantiate(e, g, 1, &InstantiateOptions::default()).unwrap();
        let m = SurfaceModel::new(g, 1).unwrap();
        let r = verify_relators(&p, &m, &homology_assignment(&p, g, 1, table).unwrap()).unwrap();
        assert!(r.all_pass(), "g={g} n=1: {:?}", r.failures());
        checked += r.rows.len();
    }
    for g in 4..=8 {
        let e = EntryId::twist_entry_for(g, 0).unwrap();
        let p = instantiate(e, g, 0, &InstantiateOptions::substituted()).unwrap();
        let m = SurfaceModel::new(g, 0).unwrap();
        let r = verify_relators(&p, &m, &homology_assignment(&p, g, 0, table).unwrap()).unwrap();
        assert!(r.all_pass(), "g={g} n=0: {:?}", r.failures());
        checked += r.rows.len();
    }
    assert_eq!(checked, 7 + 19 + 30 + 44 + 43 + 60 + 26 + 39 + 53 + 54 + 71);
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn small_twist_groups_vanish_mod_two() {
    for (g, n) in [(2, 0), (2, 1), (3, 0)] {
        let p = instantiate(EntryId::TSmall, g, n, &InstantiateOptions::default()).unwrap();
        let m = SurfaceModel::new(g, n).unwrap();
        let r = verify_relators(&p, &m, &homology_assignment(&p, g, n, frozen_classes()).unwrap()).unwrap();
        assert!(r.all_pass(), "({g},{n})");
    }
}

#[test]
fn five_fold_product_is_caught() {
    let p = instantiate(EntryId::TSmall, 3, 0, &InstantiateOptions::default()).unwrap();
    let mut bad = p.clone();
    bad.push_text("five", "(a1 a2)^5").unwrap();
    let m = SurfaceModel::new(3, 0).unwrap();
    let r = verify_relators(&bad, &m, &homology_assignment(&bad, 3, 0, frozen_classes()).unwrap()).unwrap();
    assert_eq!(r.failures(), ["five"]);
}

#[test]
fn superfluous_families_do_not_change_abelianization() {
    let keep = InstantiateOptions::substituted();
    let drop = InstantiateOptions {
        drop_superfluous: true,
        ..InstantiateOptions::substituted()
    };
    for g in 4..=8 {
        let e = EntryId::twist_entry_for(g, 0).unwrap();
        let a = instantiate(e, g, 0, &keep).unwrap();
        let b = instantiate(e, g, 0, &drop).unwrap();
        assert!(b.relator_count() < a.relator_count(), "g={g}");
        assert_eq!(a.abelianization(), b.abelianization(), "g={g}");
    }
}

#[test]
fn mapping_class_relators_have_even_y_exponent() {
    for e in [EntryId::MN20, EntryId::MN21, EntryId::MN30] {
        let (g, n) = all_instances().into_iter().find(|x| x.0 == e).map(|x| (x.1, x.2)).unwrap();
        let p = instantiate(e, g, n, &InstantiateOptions::default()).unwrap();
        for r in p.relators() {
            assert_eq!(y_parity(&r.word), 0, "{e} {}", r.label);
        }
    }
}

#[test]
fn curve_class_examples() {
    let m30 = SurfaceModel::new(3, 0).unwrap();
    assert_eq!(curve_class("alpha1", 3, 0).unwrap(), m30.parse_class("μ1+μ2").unwrap());
    assert!(curve_class("delta", 2, 1).unwrap().is_zero());
    let m51 = SurfaceModel::new(5, 1).unwrap();
    assert_eq!(curve_class("beta", 5, 1).unwrap(), m51.parse_class("μ1+μ2+μ3+μ4").unwrap());
    assert!(matches!(curve_class("nope", 3, 0), Err(CatalogError::UnknownCurve { .. })));
}

#[test]
fn frozen_classes_are_two_sided() {
    let t = frozen_classes();
    for (g, n) in t.surfaces().collect::<Vec<_>>() {
        let m = SurfaceModel::new(g, n).unwrap();
        for (name, c) in t.surface(g, n) {
            assert!(m.is_two_sided(*c), "{name} g={g} n={n}");
        }
    }
}

#[test]
fn rho_equals_its_defining_word_mod_two() {
    let p = instantiate(EntryId::TNg0Odd, 5, 0, &InstantiateOptions::default()).unwrap();
    let m = SurfaceModel::new(5, 0).unwrap();
    let a = homology_assignment(&p, 5, 0, frozen_classes()).unwrap();
    let w = parse_word("(a1 a2 a3 a4)^5 rho'", p.alphabet()).unwrap();
    assert!(evaluate(&w, m.rank(), &a).unwrap().is_identity());
}

#[test]
fn opt_in_family_needs_a_reading() {
    let opts = InstantiateOptions {
        include_flagged: true,
        ..InstantiateOptions::default()
    };
    assert!(instantiate(EntryId::TNg1Even, 8, 1, &opts).is_err());
    let f = Manifest::builtin().family("Ā7c").unwrap();
    assert!(f.is_opt_in());
    let default = instantiate(EntryId::TNg1Even, 8, 1, &InstantiateOptions::default()).unwrap();
    assert!(default.labels().iter().all(|l| !l.starts_with("Ā7c")));
}
