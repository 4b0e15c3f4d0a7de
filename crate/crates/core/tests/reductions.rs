mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use sspforge::model::{Budget, Element};
use sspforge::problems::{brute_force_solutions, Instance, Lit, Payload, ProblemId};
use sspforge::reductions::{list_reductions, registry, Filter, Reduction};
use sspforge::Error;

use common::*;

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn sets(items: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    items.iter().map(|c| name_set(c)).collect()
}

#[test]
fn ss_to_ks_example() {
    let src = Instance::numbers(ProblemId::SS, &[1, 2, 3, 4], Some(5)).unwrap();
    let tgt = red("ss_to_ks").apply(&src).unwrap();
    match tgt.payload {
        Payload::Knapsack {
            prices,
            weights,
            min_profit,
            max_weight,
        } => {
            assert_eq!(prices, big(&[1, 2, 3, 4]));
            assert_eq!(weights, big(&[1, 2, 3, 4]));
            assert_eq!(min_profit, BigUint::from(5u32));
            assert_eq!(max_weight, BigUint::from(5u32));
        }
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn ss_to_p_example() {
    let src = Instance::numbers(ProblemId::SS, &[1, 2, 3, 4], Some(5)).unwrap();
    let tgt = red("ss_to_p").apply(&src).unwrap();
    assert_eq!(
        tgt.payload,
        Payload::Partition {
            numbers: big(&[1, 2, 3, 4, 6, 6])
        }
    );
    // both source solutions gain a_f, the last number
    let lifted: BTreeSet<_> = solutions(&tgt).iter().map(|s| s.indices()).collect();
    assert_eq!(lifted, BTreeSet::from([vec![0, 3, 5], vec![1, 2, 5]]));
}

#[test]
fn ss_to_p_target_out_of_reach() {
    let src = Instance::numbers(ProblemId::SS, &[1, 2], Some(10)).unwrap();
    let tgt = red("ss_to_p").apply(&src).unwrap();
    assert!(solutions(&tgt).is_empty());
}

#[test]
fn p_to_tms_example() {
    let src = Instance::numbers(ProblemId::P, &[1, 2, 3, 4], None).unwrap();
    let tgt = red("p_to_tms").apply(&src).unwrap();
    assert_eq!(
        tgt.payload,
        Payload::Scheduling {
            jobs: big(&[1, 2, 3, 4]),
            deadline: BigUint::from(5u32)
        }
    );
}

#[test]
fn sat_to_tsat_figure() {
    let src = Instance::cnf_signed(ProblemId::SAT, 5, &[&[1, -2, -3, 4, -5]]).unwrap();
    let tgt = red("sat_to_tsat").apply(&src).unwrap();
    let expected = sets(&[
        &["x1", "~x2", "h1^1"],
        &["~h1^1", "~x3", "h1^2"],
        &["~h1^2", "x4", "~x5"],
        &["x3", "h1^1"],
        &["~x4", "h1^1"],
        &["x5", "h1^1"],
        &["~x4", "h1^2"],
        &["x5", "h1^2"],
    ]);
    assert_eq!(clause_names(&tgt), expected);
}

#[test]
fn naive_split_example() {
    let src = Instance::cnf_signed(ProblemId::SAT, 4, &[&[1, 2, 3, 4]]).unwrap();
    let tgt = red("sat_to_tsat_naive").apply(&src).unwrap();
    assert_eq!(
        clause_names(&tgt),
        sets(&[&["x1", "x2", "h1^1"], &["~h1^1", "x3", "x4"]])
    );
    // the paper's S = {l1, ~l2, l3, ~l4} satisfies both halves, so h1 is free
    let s = [Lit::pos(0), Lit::neg(1), Lit::pos(2), Lit::neg(3)];
    let ext: Vec<_> = solutions(&tgt)
        .into_iter()
        .filter(|t| s.iter().all(|l| t.contains(l.index())))
        .collect();
    assert_eq!(ext.len(), 2);
}

#[test]
fn tsat_to_esat_figure() {
    let src = Instance::cnf_signed(ProblemId::TSAT, 3, &[&[1], &[2, 3]]).unwrap();
    let tgt = red("tsat_to_esat").apply(&src).unwrap();
    let expected = sets(&[
        &["x1", "~h1", "~h2"],
        &["x2", "x3", "~h1"],
        &["h1", "h2", "h3"],
        &["h1", "~h2", "h3"],
        &["h1", "h2", "~h3"],
        &["h1", "~h2", "~h3"],
        &["~h1", "h2", "h3"],
        &["~h1", "h2", "~h3"],
        &["~h1", "~h2", "h3"],
    ]);
    assert_eq!(clause_names(&tgt), expected);
}

#[test]
fn esat_to_osat_figure() {
    let src = Instance::cnf_signed(ProblemId::ESAT, 4, &[&[1, 2, -3], &[-1, 2, 4]]).unwrap();
    let tgt = red("esat_to_osat").apply(&src).unwrap();
    let mut expected = BTreeSet::new();
    for (j, lits) in [["~x1", "~x2", "x3"], ["x1", "~x2", "~x4"]].iter().enumerate() {
        let h = |b: &str| format!("{b}^{}", j + 1);
        let rows = [
            vec![lits[0].to_string(), h("z1"), h("h1")],
            vec![lits[1].to_string(), h("z2"), h("h2")],
            vec![lits[2].to_string(), h("z3"), h("h3")],
            vec![h("z1"), h("z2"), h("z3")],
            vec![h("z1"), h("h2"), h("g1")],
            vec![h("z2"), h("h3"), h("g2")],
            vec![h("z1"), h("h3"), h("g3")],
        ];
        expected.extend(rows.into_iter().map(|r| r.into_iter().collect::<BTreeSet<_>>()));
    }
    assert_eq!(clause_names(&tgt), expected);
}

#[test]
fn esat_to_ss_figure() {
    let src = Instance::cnf_signed(ProblemId::ESAT, 3, &[&[-1, -2, 3], &[1, -2, -3]]).unwrap();
    let tgt = red("esat_to_ss").apply(&src).unwrap();
    let bin = |s: &str| u64::from_str_radix(&s.replace(' ', ""), 2).unwrap();
    let expected: Vec<u64> = [
        "1 0 0 000 001",
        "1 0 0 001 000",
        "0 1 0 000 000",
        "0 1 0 001 001",
        "0 0 1 001 000",
        "0 0 1 000 001",
        "0 0 0 001 000",
        "0 0 0 010 000",
        "0 0 0 000 001",
        "0 0 0 000 010",
    ]
    .iter()
    .map(|s| bin(s))
    .collect();
    assert_eq!(
        tgt.payload,
        Payload::SubsetSum {
            numbers: big(&expected),
            target: BigUint::from(bin("1 1 1 100 100")),
        }
    );
    assert_eq!(solutions(&src).len(), solutions(&tgt).len());
}

#[test]
fn esat_to_mis_figure() {
    let src = Instance::cnf_signed(ProblemId::ESAT, 3, &[&[1, -2, 3], &[-1, 2, 3]]).unwrap();
    let tgt = red("esat_to_mis").apply(&src).unwrap();
    let Payload::Graph { graph, k } = &tgt.payload else {
        panic!("not a graph")
    };
    assert_eq!(*k, 5);
    let edges: BTreeSet<BTreeSet<String>> = graph
        .edges
        .iter()
        .map(|&(a, b)| name_set(&[&graph.vertices[a as usize], &graph.vertices[b as usize]]))
        .collect();
    let expected = sets(&[
        &["x1", "~x1"],
        &["x2", "~x2"],
        &["x3", "~x3"],
        &["c1^1", "c1^2"],
        &["c1^1", "c1^3"],
        &["c1^2", "c1^3"],
        &["c2^1", "c2^2"],
        &["c2^1", "c2^3"],
        &["c2^2", "c2^3"],
        &["c1^1", "~x1"],
        &["c1^2", "x2"],
        &["c1^3", "~x3"],
        &["c2^1", "x1"],
        &["c2^2", "~x2"],
        &["c2^3", "~x3"],
    ]);
    assert_eq!(edges, expected);
}

#[test]
fn dhc_to_uhc_splits_vertices() {
    let src = sspforge::formats::parse_instance(
        r#"{"problem":"dhc","vertices":["a","b","c"],"arcs":[["a","b"],["b","c"],["c","a"]]}"#,
    )
    .unwrap();
    let tgt = red("dhc_to_uhc").apply(&src).unwrap();
    let Payload::UCycle { graph } = &tgt.payload else {
        panic!("not a cycle instance")
    };
    assert_eq!(graph.n(), 9);
    assert_eq!(graph.edges.len(), 9);
    assert_eq!(solutions(&tgt).len(), 1);
}

#[test]
fn mis_and_clique_parameters() {
    let src = Instance::graph_named(ProblemId::MIS, &["a", "b", "c"], &[("a", "b")], 2).unwrap();
    assert_eq!(red("mis_to_mvc").apply(&src).unwrap().k(), Some(1));
    let cq = red("mis_to_cq").apply(&src).unwrap();
    let Payload::Graph { graph, k } = &cq.payload else {
        panic!("not a graph")
    };
    assert_eq!(*k, 2);
    assert_eq!(graph.edges, vec![(0, 2), (1, 2)]);
}

#[test]
fn vc_to_ds_demo_counts() {
    let src = Instance::graph_named(ProblemId::VC, &["u", "v"], &[("u", "v")], 2).unwrap();
    let tgt = red("vc_to_ds_demo").apply(&src).unwrap();
    assert_eq!(solutions(&src).len(), 3);
    assert_eq!(solutions(&tgt).len(), 9);
    // independent brute-force oracle agrees
    let bf = brute_force_solutions(tgt.kind, &tgt, &mut Budget::default()).unwrap();
    assert_eq!(bf.len(), 9);
}

#[test]
fn esat_to_cq_rejects_empty_formula() {
    let src = Instance::cnf_signed(ProblemId::ESAT, 3, &[]).unwrap();
    assert!(matches!(red("esat_to_cq").apply(&src), Err(Error::UnsupportedShape(_))));
}

#[test]
fn osat_gadgets_need_three_literals() {
    let src = Instance::cnf_signed(ProblemId::OSAT, 2, &[&[1, 2]]).unwrap();
    for id in ["osat_to_mis", "osat_to_mvc", "osat_to_stt"] {
        assert!(matches!(red(id).apply(&src), Err(Error::UnsupportedShape(_))), "{id}");
    }
}

#[test]
fn odm_to_dm_sizes() {
    let src = Instance::cnf_signed(ProblemId::OSAT, 3, &[&[1, 2, 3]]).unwrap();
    let odm = red("osat_to_odm").apply(&src).unwrap();
    let Payload::Odm { m, singletons, .. } = &odm.payload else {
        panic!("not odm")
    };
    // one occurrence per variable: 4 elements per variable plus c_y, c_z
    assert_eq!(m.x.len() + m.y.len() + m.z.len(), 4 * 3 + 2);
    let dm = red("odm_to_dm").apply(&odm).unwrap();
    let Payload::Dm { m: m2 } = &dm.payload else {
        panic!("not dm")
    };
    assert_eq!(m2.triples.len(), 3 * m.triples.len() + singletons.len());
    assert_eq!(solutions(&src).len(), solutions(&dm).len());
}

#[test]
fn composition_claims_and_kinds() {
    let c = red("tsat_to_esat").compose(&red("esat_to_osat")).unwrap();
    assert_eq!((c.source(), c.target()), (ProblemId::TSAT, ProblemId::OSAT));
    assert!(c.claims().ssp && c.claims().spr);
    let c = red("mis_to_mvc").compose(&red("mvc_to_sc")).unwrap();
    assert!(!c.claims().ssp && c.claims().spr);
    assert!(matches!(
        red("ss_to_p").compose(&red("mvc_to_sc")),
        Err(Error::KindMismatch { .. })
    ));
    assert_eq!(Reduction::by_id("ss_to_p+p_to_tms").unwrap().id(), "ss_to_p+p_to_tms");
    assert!(matches!(Reduction::by_id("nope"), Err(Error::UnknownReduction(_))));
}

#[test]
fn composed_route_matches_direct_route() {
    let src = sspforge::formats::parse_instance(
        r#"{"problem":"uhp","vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["a","c"]],"s":"a","t":"d"}"#,
    )
    .unwrap();
    let chain = red("uhp_to_uhc+uhc_to_tsp");
    let a = solutions(&chain.apply(&src).unwrap()).len();
    let b = solutions(&red("uhp_to_tsp").apply(&src).unwrap()).len();
    assert_eq!(a, b);
    assert_eq!(a, solutions(&src).len());
}

#[test]
fn lift_then_unlift_is_identity() {
    let src = Instance::cnf_signed(ProblemId::SAT, 4, &[&[1, -2, 3, 4], &[-1, 2]]).unwrap();
    let chain = red("sat_to_tsat+tsat_to_esat+esat_to_osat");
    let applied = chain.instantiate(&src).unwrap();
    for s in solutions(&src) {
        let t = applied.lift(&s).unwrap();
        assert_eq!(applied.unlift(&t).unwrap(), s);
    }
}

#[test]
fn lift_rejects_non_solutions() {
    let src = Instance::cnf_signed(ProblemId::ESAT, 3, &[&[1, 2, 3]]).unwrap();
    let applied = red("esat_to_osat").instantiate(&src).unwrap();
    let bad = solution_of(
        &src,
        &[Lit::neg(0).element(), Lit::neg(1).element(), Lit::neg(2).element()],
    );
    assert!(matches!(applied.lift(&bad), Err(Error::NotASolution(_))));
}

#[test]
fn embed_element_maps_literals() {
    let src = Instance::cnf_signed(ProblemId::ESAT, 3, &[&[1, 2, 3]]).unwrap();
    let applied = red("esat_to_dhp").instantiate(&src).unwrap();
    let e = applied.embed_element(&Element::lit(0, false)).unwrap();
    assert_eq!(applied.target().element_name(&e), "(x1^1,x1^2)");
    let e = applied.embed_element(&Element::lit(0, true)).unwrap();
    assert_eq!(applied.target().element_name(&e), "(x1^2,x1^1)");
}

#[test]
fn registry_shape() {
    assert_eq!(registry().len(), 40);
    let from_mvc = list_reductions(&Filter {
        source: Some(ProblemId::MVC),
        ..Filter::default()
    });
    assert_eq!(from_mvc.len(), 9);
    for d in registry() {
        assert!(d.claims.ssp || d.claims.spr, "{} claims nothing", d.id);
    }
}
