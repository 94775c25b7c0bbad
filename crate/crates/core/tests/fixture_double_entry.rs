//! The hand-typed formula fixtures and the mechanically generated canonical
//! files are independent transcriptions; they must agree term for term.

use std::collections::HashMap;

use hecke_core::fixtures::{
    eval_formula, genus_canon_text, genus_fixture_text, parse_canon_sections, Fixture, Provenance,
};
use hecke_core::inversion::HeckePoly;

fn check_genus(n: usize) {
    let fx: Fixture<HeckePoly> = Fixture::parse(genus_fixture_text(n).unwrap()).unwrap();
    assert_eq!(fx.genus, n);
    let canon = parse_canon_sections(n, genus_canon_text(n).unwrap()).unwrap();
    let canon_keys: Vec<&str> = canon.iter().map(|(k, _)| k.as_str()).collect();
    for (key, value) in &canon {
        let printed = fx
            .get(&format!("{key}@printed"))
            .or_else(|| fx.get(key))
            .unwrap_or_else(|| panic!("genus {n}: {key} missing from formula fixture"));
        assert_eq!(
            printed.value.to_canonical(),
            value.to_canonical(),
            "genus {n}: {key} transcriptions differ"
        );
    }
    for e in &fx.entries {
        let base = e.key.split('@').next().unwrap();
        match e.provenance {
            Provenance::Derived => assert!(!canon_keys.contains(&base), "{} is displayed", e.key),
            _ => assert!(
                canon_keys.contains(&base),
                "genus {n}: {} not in canon file",
                e.key
            ),
        }
    }
}

#[test]
fn genus_one_transcriptions_agree() {
    check_genus(1);
}

#[test]
fn genus_two_transcriptions_agree() {
    check_genus(2);
}

#[test]
fn genus_three_transcriptions_agree() {
    check_genus(3);
}

#[test]
fn genus_four_transcriptions_agree() {
    check_genus(4);
}

#[test]
fn genus_three_correction_is_exactly_the_t2_square() {
    let fx: Fixture<HeckePoly> = Fixture::parse(genus_fixture_text(3).unwrap()).unwrap();
    let diff = &fx.get("f4").unwrap().value - &fx.get("f4@printed").unwrap().value;
    let expect: HeckePoly = eval_formula(3, "p^6 (T2^2 - T2)", &HashMap::new()).unwrap();
    assert_eq!(diff, expect);
}

#[test]
fn coefficient_counts() {
    let counts = [(1, 1, 3), (2, 3, 5), (3, 7, 9), (4, 15, 17)];
    for (n, ne, nf) in counts {
        let fx: Fixture<HeckePoly> = Fixture::parse(genus_fixture_text(n).unwrap()).unwrap();
        assert_eq!(fx.sequence("e").len(), ne, "genus {n}");
        assert_eq!(fx.sequence("f").len(), nf, "genus {n}");
    }
}
