//! Random small models: CNF solutions, decoded, equal the brute-force solution set.

use std::collections::BTreeSet;

use proptest::prelude::*;

use cbench_core::encode::{compile_to_cnf, decode_model};
use cbench_core::model::{BoolLit, Cmp, Constraint, ConstraintModel, Domain, Operand};
use cbench_core::solver::SolverHandle;

#[derive(Clone, Debug)]
struct Spec {
    domains: Vec<(i64, i64)>,
    constraints: Vec<Constraint>,
}

fn cmp_of(k: u8) -> Cmp {
    match k % 3 {
        0 => Cmp::Le,
        1 => Cmp::Eq,
        _ => Cmp::Ge,
    }
}

/// Independent semantics for the generated constraints.
fn holds(c: &Constraint, a: &[i64]) -> bool {
    let rel = |cmp: &Cmp, l: i64, r: i64| match cmp {
        Cmp::Le => l <= r,
        Cmp::Eq => l == r,
        Cmp::Ge => l >= r,
    };
    match c {
        Constraint::AllDifferent(v) => {
            let s: BTreeSet<i64> = v.iter().map(|&x| a[x]).collect();
            s.len() == v.len()
        }
        Constraint::LinearSum { terms, cmp, bound } => rel(cmp, terms.iter().map(|&(k, x)| k * a[x]).sum(), *bound),
        Constraint::CardinalityOfValue { vars, value, cmp, bound } => {
            rel(cmp, vars.iter().filter(|&&x| a[x] == *value).count() as i64, *bound)
        }
        Constraint::Element { index, array, result } => {
            let i = a[*index];
            (0..array.len() as i64).contains(&i)
                && a[*result]
                    == match array[i as usize] {
                        Operand::Var(x) => a[x],
                        Operand::Const(k) => k,
                    }
        }
        Constraint::NotEqual { a: x, b: y, offset } => a[*x] != a[*y] + offset,
        Constraint::Clause(lits) => lits.iter().any(|l| (a[l.var] == l.value) == l.positive),
        Constraint::ProductPairSum { pairs, cmp, bound } => rel(cmp, pairs.iter().map(|&(x, y)| a[x] * a[y]).sum(), *bound),
        Constraint::TableAllowed { vars, tuples } => {
            tuples.iter().any(|t| t.iter().zip(vars).all(|(&v, &x)| a[x] == v))
        }
    }
}

fn constraint(n: usize, bools: usize) -> impl Strategy<Value = Constraint> {
    let var = 0..n;
    let vars = prop::collection::vec(0..n, 1..=n);
    prop_oneof![
        prop::collection::btree_set(0..n, 1..=n).prop_map(|s| Constraint::AllDifferent(s.into_iter().collect())),
        (prop::collection::vec((-3i64..=3, 0..n), 1..=4), any::<u8>(), -6i64..=6)
            .prop_map(|(terms, c, bound)| Constraint::LinearSum { terms, cmp: cmp_of(c), bound }),
        (vars.clone(), -2i64..=3, any::<u8>(), 0i64..=4).prop_map(|(vars, value, c, bound)| {
            Constraint::CardinalityOfValue { vars, value, cmp: cmp_of(c), bound }
        }),
        (
            var.clone(),
            prop::collection::vec(prop_oneof![(0..n).prop_map(Operand::Var), (-2i64..=3).prop_map(Operand::Const)], 1..=4),
            var.clone()
        )
            .prop_map(|(index, array, result)| Constraint::Element { index, array, result }),
        (var.clone(), var.clone(), -2i64..=2).prop_map(|(a, b, offset)| Constraint::NotEqual { a, b, offset }),
        prop::collection::vec((0..n, -2i64..=3, any::<bool>()), 0..=3).prop_map(|lits| {
            Constraint::Clause(lits.into_iter().map(|(var, value, positive)| BoolLit { var, value, positive }).collect())
        }),
        (prop::collection::vec((0..bools, 0..bools), 1..=3), any::<u8>(), 0i64..=3)
            .prop_map(|(pairs, c, bound)| Constraint::ProductPairSum { pairs, cmp: cmp_of(c), bound }),
        (1usize..=3)
            .prop_flat_map(move |arity| (
                prop::collection::vec(0..n, arity),
                prop::collection::vec(prop::collection::vec(-2i64..=3, arity), 0..=8)
            ))
            .prop_map(|(vars, tuples)| Constraint::TableAllowed { vars, tuples }),
    ]
}

fn spec() -> impl Strategy<Value = Spec> {
    (2usize..=6)
        .prop_flat_map(|n| {
            let bools = 2usize;
            let domains = prop::collection::vec((-2i64..=1, 0i64..=3), n - bools)
                .prop_map(move |d| {
                    let mut all = vec![(0, 1); bools];
                    all.extend(d.into_iter().map(|(lo, w)| (lo, lo + w)));
                    all
                });
            (domains, prop::collection::vec(constraint(n, bools), 0..=4))
        })
        .prop_map(|(domains, constraints)| Spec { domains, constraints })
}

fn brute(spec: &Spec) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut a: Vec<i64> = spec.domains.iter().map(|d| d.0).collect();
    loop {
        if spec.constraints.iter().all(|c| holds(c, &a)) {
            out.insert(a.clone());
        }
        let mut i = 0;
        loop {
            if i == a.len() {
                return out;
            }
            if a[i] < spec.domains[i].1 {
                a[i] += 1;
                break;
            }
            a[i] = spec.domains[i].0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn cnf_solutions_equal_brute_force(spec in spec()) {
        let mut m = ConstraintModel::new();
        for (i, &(lo, hi)) in spec.domains.iter().enumerate() {
            m.add_var(format!("v{i}"), Domain::range(lo, hi));
        }
        for c in &spec.constraints {
            m.post(c.clone());
        }
        let expected = brute(&spec);
        let (cnf, vm) = compile_to_cnf(&m).unwrap();
        let project: Vec<u32> = (0..m.num_vars()).flat_map(|v| vm.indicator_atoms(v).to_vec()).collect();
        let e = SolverHandle::embedded().enumerate_models(&cnf, Some(&project), 5000, None).unwrap();
        prop_assert!(e.complete);
        let got: Vec<Vec<i64>> = e.models.iter().map(|mdl| decode_model(&vm, mdl).unwrap()).collect();
        let set: BTreeSet<Vec<i64>> = got.iter().cloned().collect();
        prop_assert_eq!(set.len(), got.len());
        prop_assert_eq!(set, expected);
    }
}
