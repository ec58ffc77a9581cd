use filliform_core::lattice::{is_isometric, standard, Form};
use filliform_core::ledger::{builtin, enumerate_even_candidates, reduced_even_grams, DEFAULT_MAX_RANK};
use num_bigint::BigInt;

#[test]
fn torus_fillings_are_empty_or_e8() {
    for name in ["T3", "Sigma2xS1"] {
        let c = enumerate_even_candidates(&builtin(name, &[]).unwrap(), DEFAULT_MAX_RANK).unwrap();
        assert!(!c.truncated);
        assert_eq!(c.forms.len(), 2, "{name}");
        assert_eq!(c.forms[0], Form::empty());
        assert!(is_isometric(&c.forms[1], &standard::e8_form()).unwrap().is_some());
    }
}

#[test]
fn unimodular_rank8_search_size() {
    let (grams, nodes) = reduced_even_grams(8, &BigInt::from(1));
    eprintln!("{} grams, {nodes} nodes", grams.len());
    assert!(!grams.is_empty());
}
