//! Registry-wide invariants: schemas, samplers, prompts.

mod common;

use cbench_core::families::{
    backend_class, lookup, normalize_params, param_string, registry, render_prompt, sample_variable_data,
    validate_data, BackendClass, DataKind, Hint, Params, VarData,
};
use common::params;

fn defaults(name: &str) -> Params {
    normalize_params(lookup(name).unwrap(), &Params::new()).unwrap()
}

fn data_for(name: &str, p: &Params, seed: u64) -> VarData {
    let f = lookup(name).unwrap();
    match f.data_kind() {
        DataKind::None => VarData::default(),
        _ => sample_variable_data(f, p, seed).unwrap(),
    }
}

#[test]
fn registry_shape() {
    let names: Vec<&str> = registry().iter().map(|f| f.name()).collect();
    assert_eq!(names.len(), 43);
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let sms = registry().iter().filter(|f| backend_class(**f) == BackendClass::Sms).count();
    assert_eq!(sms, 14);
    assert!(lookup("no_such_family").is_err());
}

#[test]
fn parameter_validation() {
    let f = lookup("queens").unwrap();
    assert!(normalize_params(f, &params(&[("n", 1)])).is_err());
    assert!(normalize_params(f, &params(&[("m", 4)])).is_err());
    assert_eq!(param_string(f, &defaults("queens")), "n8");
    let b = lookup("bibd").unwrap();
    assert!(normalize_params(b, &params(&[("v", 8), ("k", 3), ("lambda", 1)])).is_err());
    assert_eq!(param_string(b, &defaults("bibd")), "v7_k3_lambda1");
    let h = lookup("hadamard").unwrap();
    assert!(normalize_params(h, &params(&[("n", 8)])).is_err());
    let np = lookup("number_partitioning").unwrap();
    assert!(normalize_params(np, &params(&[("n", 4), ("k", 3)])).is_err());
}

#[test]
fn prompts_are_fully_rendered() {
    for f in registry() {
        let p = defaults(f.name());
        let data = data_for(f.name(), &p, 11);
        validate_data(*f, &p, &data).unwrap();
        let text = render_prompt(*f, &p, &data, &[]);
        assert!(!text.contains("{{") && !text.contains("}}"), "{}: {text}", f.name());
        assert!(text.contains("UNSATISFIABLE"), "{}", f.name());
        assert!(!text.ends_with('\n'));
        if let Some(len) = f.witness_len(&p) {
            assert_eq!(f.witness_names(&p).len(), len, "{}", f.name());
        }
    }
}

#[test]
fn prompt_details() {
    let f = lookup("golomb").unwrap();
    let text = render_prompt(f, &defaults("golomb"), &VarData::default(), &[]);
    assert!(!text.contains("at most"));
    let p = normalize_params(f, &params(&[("n", 5), ("length", 11)])).unwrap();
    assert!(render_prompt(f, &p, &VarData::default(), &[]).contains(" The largest mark must be at most 11."));

    let h = lookup("hadamard").unwrap();
    let text = render_prompt(h, &params(&[("n", 11)]), &VarData::default(), &[]);
    assert!(text.contains("sum_{i=0}^{10} x[i] * x[(i+k) mod 11]  +  sum_{i=0}^{10} y[i] * y[(i+k) mod 11]"));
    assert!(text.contains("every k in 1..5"));

    let s = lookup("sudoku").unwrap();
    let p = defaults("sudoku");
    let empty = render_prompt(s, &p, &data_for("sudoku", &p, 1), &[]);
    assert!(!empty.contains("Pre-filled"));
    let p = normalize_params(s, &params(&[("n", 2), ("clue_pct", 50)])).unwrap();
    assert!(render_prompt(s, &p, &data_for("sudoku", &p, 1), &[]).contains("\n\nPre-filled clues (flat row-major; cell (i,j) at index i*4+j; 0 = empty):\n["));

    let v = lookup("van_der_waerden").unwrap();
    let p = defaults("van_der_waerden");
    assert!(render_prompt(v, &p, &VarData::default(), &[]).contains("0 or 1"));

    let a = lookup("all_interval").unwrap();
    let p = normalize_params(a, &params(&[("n", 2)])).unwrap();
    let hints = [Hint { var: "x[0]".into(), value: 0 }, Hint { var: "d[0]".into(), value: 1 }];
    let text = render_prompt(a, &p, &VarData::default(), &hints);
    assert!(text.ends_with(
        "\n\nPartial assignment (fixed values that must be respected):\n- x[0]=0\n- d[0]=1\nReturn a complete solution consistent with these fixed assignments."
    ));
}

#[test]
fn samplers_are_deterministic() {
    for f in registry() {
        if f.data_kind() == DataKind::None {
            continue;
        }
        let mut pairs: Vec<(&str, i64)> = vec![];
        if f.name() == "sudoku" || f.name() == "magic_square" {
            pairs.push(("clue_pct", 40));
        }
        let p = normalize_params(*f, &params(&pairs)).unwrap();
        let a = data_for(f.name(), &p, 5);
        let b = data_for(f.name(), &p, 5);
        assert_eq!(a, b, "{}", f.name());
        let distinct = (6..12).any(|s| data_for(f.name(), &p, s) != a);
        assert!(distinct, "{} ignores its seed", f.name());
        validate_data(*f, &p, &a).unwrap();
    }
}

#[test]
fn random_graph_edge_counts() {
    let f = lookup("graph_k_coloring").unwrap();
    for (n, d, m) in [(10, 50, 23), (20, 30, 57), (8, 0, 0), (8, 100, 28)] {
        let p = normalize_params(f, &params(&[("n", n), ("density_pct", d)])).unwrap();
        let data = sample_variable_data(f, &p, 3).unwrap();
        assert_eq!(data.edges.unwrap().len(), m);
    }
}
