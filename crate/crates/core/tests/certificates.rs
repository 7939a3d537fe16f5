use twistkit_core::cert::{check_certificate, homology_trace, shipped_certificates, Certificate};
use twistkit_core::catalog::{instantiate, EntryId, InstantiateOptions};
use twistkit_core::presentation::RemovalJustification;
use twistkit_core::word::Letter;

fn shipped(name: &str) -> Certificate {
    let (_, text) = shipped_certificates().into_iter().find(|(n, _)| *n == name).unwrap();
    Certificate::parse(text).unwrap()
}

#[test]
fn shipped_certificates_check() {
    for (name, text) in shipped_certificates() {
        let c = Certificate::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let r = check_certificate(&c);
        assert!(r.is_valid(), "{name}: {r}");
        assert_eq!(r, check_certificate(&Certificate::parse(text).unwrap()));
        let mats = homology_trace(&c).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(mats.windows(2).all(|w| w[0] == w[1]), "{name}: homology drifts");
    }
}

#[test]
fn certificate_ends() {
    let c = shipped("b2_2.cert");
    assert!(c.target_word().is_empty());
    let words = c.trace().unwrap();
    let before_chains = c.render_letters(&words[12]);
    assert_eq!(before_chains, "a2 e a1 a2 e a1 a2 f a1 a2 f a1 a2 f a1 a2 f a1 a2 e a1 a2 e a1");
    let t = shipped("lemma_push_telescope.cert");
    assert_eq!(t.render_letters(&t.start), "pg1 phi phi pg1");
    assert_eq!(t.render_letters(&t.target), "pg2 phi phi");
}

#[test]
fn every_single_letter_mutation_is_caught() {
    let c = shipped("b2_2.cert");
    let n = c.alphabet().len();
    let mut tried = 0;
    for i in 0..c.steps.len() {
        for side in 0..2 {
            let len = if side == 0 { c.steps[i].lhs.len() } else { c.steps[i].rhs.len() };
            for j in 0..len {
                for g in 0..n {
                    for inverse in [false, true] {
                        let l = Letter::new(g, inverse);
                        let mut bad = c.clone();
                        let slot = if side == 0 { &mut bad.steps[i].lhs[j] } else { &mut bad.steps[i].rhs[j] };
                        if *slot == l {
                            continue;
                        }
                        *slot = l;
                        tried += 1;
                        assert_eq!(check_certificate(&bad).failing_step(), Some(i + 1), "step {} side {side} letter {j}", i + 1);
                    }
                }
            }
        }
    }
    let slots: usize = c.steps.iter().map(|s| s.lhs.len() + s.rhs.len()).sum();
    assert_eq!(tried, slots * (2 * n - 1));
}

#[test]
fn tampered_exponent_is_caught() {
    let (_, text) = shipped_certificates().into_iter().find(|(n, _)| *n == "b2_1.cert").unwrap();
    let bad = text.replace("tc -> (f a1 a2)^4", "tc -> (f a1 a2)^3");
    let c = Certificate::parse(&bad).unwrap();
    let line = text.lines().position(|l| l.contains("(f a1 a2)^4")).unwrap() + 1;
    let step = c.steps.iter().position(|s| s.line == line).unwrap() + 1;
    assert_eq!(check_certificate(&c).failing_step(), Some(step));
}

#[test]
fn certified_relators_can_be_removed() {
    let p = instantiate(EntryId::TNg1Odd, 3, 1, &InstantiateOptions::default()).unwrap();
    let b22 = shipped("b2_2.cert");
    let b21 = shipped("b2_1.cert");
    let q = p.remove_relator("B̄2₂", RemovalJustification::Certified(&b22)).unwrap();
    let q = q.remove_relator("B̄2₁", RemovalJustification::Certified(&b21)).unwrap();
    assert_eq!(q.relator_count(), 5);
    assert!(p.remove_relator("B̄2₁", RemovalJustification::Certified(&b22)).is_err());
    assert!(p.remove_relator("Ā2₁", RemovalJustification::Certified(&b22)).is_err());
}
