use std::collections::BTreeMap;

use pdm_core::catalog::{
    catalog_json, ids, list_table, verify_a2_equivalences, verify_algebra, verify_entry, verify_finite_transform,
    CatalogEntry,
};
use pdm_core::expr::{parse, Declarations, Expr, ProbeConfig, Verdict};
use pdm_core::ops::optext::parse_operator;
use pdm_core::ops::{check_symmetry, Hamiltonian};
use pdm_core::Error;

fn cfg() -> ProbeConfig {
    ProbeConfig::default()
}

#[test]
fn registry_is_complete() {
    let expected = [
        "so3", "so4", "so5", "t11", "t14", "t12", "t13", "new", "t11-special", "t14-special", "A2-Q0", "A2-Q4",
        "A2-Q5",
    ];
    assert_eq!(ids(), expected);
    assert!(list_table().lines().count() > 11);
    let doc = catalog_json();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["entries"].as_array().unwrap().len(), expected.len());
}

#[test]
fn every_generator_is_a_symmetry() {
    for id in ids() {
        let r = verify_entry(id, &cfg()).unwrap();
        for g in &r.generators {
            assert!(g.passed, "{id} {}: {:?}", g.name, g.symbolic.diagnostic);
        }
        assert_eq!(r.is_flat, Some(r.expected_flat), "{id}");
        assert!(r.passed);
    }
}

#[test]
fn printed_forms_that_differ_fail() {
    for (id, name) in [("new", "Q"), ("t11-special", "Q"), ("A2-Q0", "Q3")] {
        let r = verify_entry(id, &cfg()).unwrap();
        let g = r.generators.iter().find(|g| g.name == name).unwrap();
        assert_eq!(g.printed_is_symmetry, Some(false), "{id} {name}");
    }
}

#[test]
fn algebra_relations_hold() {
    for id in ids() {
        let a = verify_algebra(id, &cfg()).unwrap();
        for rel in &a.relations {
            assert!(rel.holds, "{id}: {}", rel.relation);
            assert_eq!(rel.tier, Verdict::ProvenZero, "{id}: {}", rel.relation);
            if rel.printed.is_some() {
                assert_eq!(rel.printed_holds, Some(false), "{id}: {}", rel.relation);
            }
        }
    }
}

#[test]
fn free_particle_rotation() {
    let entry = CatalogEntry::get("so3").unwrap();
    let h = Hamiltonian::divergence(Expr::one(), Expr::zero());
    assert!(check_symmetry(&entry.generators[0].1, &h, &cfg()).is_symmetry);
}

#[test]
fn perturbed_potential_breaks_translation() {
    let entry = CatalogEntry::get("t13").unwrap();
    let h = Hamiltonian::divergence(parse("x1^3").unwrap(), parse("mu*x1 + nu*x2 + x1*x2").unwrap());
    let (_, q10) = &entry.generators[0];
    assert!(!check_symmetry(q10, &h, &cfg()).is_symmetry);
    assert!(check_symmetry(q10, &entry.hamiltonian, &cfg()).is_symmetry);
}

#[test]
fn finite_rotation_with_phase() {
    let r = verify_finite_transform(&cfg()).unwrap();
    assert!(r.passed);
    assert_eq!(r.cases[1].test.verdict, Verdict::ProvenZero);
    assert_eq!(r.cases[3].test.verdict, Verdict::ProvenNonzero);
}

#[test]
fn appendix_equivalences() {
    let r = verify_a2_equivalences(&cfg()).unwrap();
    assert!(r.passed, "{:?}", r.cases);
    assert_eq!(r.cases[1].mass, "sin(x1)^2");
}

#[test]
fn unknown_id() {
    assert!(matches!(verify_entry("so9", &cfg()), Err(Error::UnknownId(_))));
    assert!(matches!(verify_algebra("", &cfg()), Err(Error::UnknownId(_))));
}

#[test]
fn p0_commutes_with_itself() {
    let op = parse_operator("P0", &Declarations::default(), &BTreeMap::new()).unwrap();
    assert!(op.commutator(&op).vanishes(&cfg()));
}
