use sspforge::model::{Budget, Element, Solution};
use sspforge::problems::{
    brute_force_solutions, enumerate_solutions, generate_instance, minimum_cardinality, named_graph, verify_solution,
    Instance, Lit, Payload, ProblemId, SizeParams,
};
use sspforge::Error;

fn sol(inst: &Instance, elems: &[Element]) -> Solution {
    inst.universe().unwrap().solution_of(elems).unwrap()
}

fn all(inst: &Instance) -> Vec<Vec<Element>> {
    let u = inst.universe().unwrap();
    let set = enumerate_solutions(inst.kind, inst, &mut Budget::default()).unwrap();
    set.iter().map(|s| u.members(s)).collect()
}

#[test]
fn vc_single_edge() {
    let inst = Instance::graph_named(ProblemId::VC, &["u", "v"], &[("u", "v")], 2).unwrap();
    assert!(verify_solution(ProblemId::VC, &inst, &sol(&inst, &[Element::Vertex(0)])).unwrap());
    assert_eq!(all(&inst).len(), 3);
}

#[test]
fn osat_exactly_one() {
    let inst = Instance::cnf_signed(ProblemId::OSAT, 3, &[&[1, 2, 3]]).unwrap();
    let s = sol(
        &inst,
        &[Lit::pos(0).element(), Lit::neg(1).element(), Lit::neg(2).element()],
    );
    assert!(verify_solution(ProblemId::OSAT, &inst, &s).unwrap());
    assert_eq!(all(&inst).len(), 3);
}

#[test]
fn uhc_triangle() {
    let g = named_graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    let inst = Instance::new(ProblemId::UHC, Payload::UCycle { graph: g }).unwrap();
    let full = Solution::full(3);
    assert!(verify_solution(ProblemId::UHC, &inst, &full).unwrap());
    assert_eq!(all(&inst).len(), 1);
}

#[test]
fn subset_sum_examples() {
    let inst = Instance::numbers(ProblemId::SS, &[1, 2, 3, 4], Some(5)).unwrap();
    assert!(!verify_solution(ProblemId::SS, &inst, &sol(&inst, &[Element::Num(0)])).unwrap());
    // oracle: exhaustive over the 16 subsets gives {1,4} and {2,3}
    let got = all(&inst);
    assert_eq!(
        got,
        vec![
            vec![Element::Num(0), Element::Num(3)],
            vec![Element::Num(1), Element::Num(2)]
        ]
    );
}

#[test]
fn ds_gadget_has_nine() {
    let inst = Instance::graph_named(
        ProblemId::DS,
        &["u", "v", "uv1", "uv2", "uv3"],
        &[
            ("u", "v"),
            ("u", "uv1"),
            ("v", "uv1"),
            ("u", "uv2"),
            ("v", "uv2"),
            ("u", "uv3"),
            ("v", "uv3"),
        ],
        2,
    )
    .unwrap();
    assert_eq!(all(&inst).len(), 9);
}

#[test]
fn empty_clause_unsat() {
    let inst = Instance::cnf(ProblemId::SAT, vec!["x1".into()], vec![vec![]]).unwrap();
    assert!(all(&inst).is_empty());
}

#[test]
fn universe_mismatch_is_reported() {
    let inst = Instance::numbers(ProblemId::SS, &[1, 2], Some(3)).unwrap();
    let err = verify_solution(ProblemId::SS, &inst, &Solution::empty(5)).unwrap_err();
    assert!(matches!(err, Error::UniverseMismatch(_)));
}

#[test]
fn minimum_cardinality_examples() {
    let tri = named_graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    let b = &mut Budget::default();
    let mvc = Instance::new(
        ProblemId::MVC,
        Payload::Graph {
            graph: tri.clone(),
            k: 0,
        },
    )
    .unwrap();
    assert_eq!(minimum_cardinality(ProblemId::MVC, &mvc, b).unwrap(), 2);
    let mis = Instance::new(ProblemId::MIS, Payload::Graph { graph: tri, k: 0 }).unwrap();
    assert_eq!(minimum_cardinality(ProblemId::MIS, &mis, b).unwrap(), 1);
    let empty = Instance::graph_named(ProblemId::MVC, &["a", "b", "c"], &[], 0).unwrap();
    assert_eq!(minimum_cardinality(ProblemId::MVC, &empty, b).unwrap(), 0);
}

#[test]
fn generator_is_deterministic() {
    let p = SizeParams {
        vars: 3,
        clauses: 2,
        clause_len: 4,
        ..SizeParams::default()
    };
    let a = generate_instance(ProblemId::SAT, &p, 7).unwrap();
    let b = generate_instance(ProblemId::SAT, &p, 7).unwrap();
    assert_eq!(a, b);

    let p = SizeParams {
        vertices: 5,
        density: 0.5,
        ..SizeParams::default()
    };
    let m = generate_instance(ProblemId::MVC, &p, 1).unwrap();
    let opt = minimum_cardinality(ProblemId::MVC, &m.with_k(0), &mut Budget::default()).unwrap();
    assert_eq!(m.k(), Some(opt));

    let p = SizeParams {
        vars: 4,
        clauses: 2,
        ..SizeParams::default()
    };
    let e = generate_instance(ProblemId::ESAT, &p, 3).unwrap();
    for c in &e.cnf_payload().unwrap().clauses {
        let mut vars: Vec<u32> = c.iter().map(|l| l.var).collect();
        vars.dedup();
        assert_eq!(vars.len(), 3);
    }
}

/// Pruned enumerators agree with the generic 2^|U| filter on every kind.
#[test]
fn engines_match_brute_force() {
    let params = [
        SizeParams {
            vars: 4,
            clauses: 3,
            vertices: 4,
            items: 5,
            max_number: 8,
            max_universe: 16,
            ..SizeParams::default()
        },
        SizeParams {
            vars: 3,
            clauses: 2,
            vertices: 5,
            density: 0.7,
            items: 6,
            max_number: 5,
            max_universe: 16,
            ..SizeParams::default()
        },
    ];
    for &id in ProblemId::ALL {
        let mut tested = 0;
        for p in &params {
            for seed in 0..12u64 {
                let inst = match generate_instance(id, p, seed) {
                    Ok(i) => i,
                    Err(Error::GenerationFailed(_)) => continue,
                    Err(e) => panic!("{id}: {e}"),
                };
                let fast = enumerate_solutions(id, &inst, &mut Budget::default()).unwrap();
                let slow = brute_force_solutions(id, &inst, &mut Budget::default()).unwrap();
                assert_eq!(fast.solutions, slow.solutions, "{id} seed {seed}: {inst:?}");
                tested += 1;
            }
        }
        assert!(tested >= 6, "{id}: only {tested} instances fit the universe bound");
    }
}
