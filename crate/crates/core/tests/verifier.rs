mod common;

use std::collections::BTreeSet;

use sspforge::model::Budget;
use sspforge::problems::{brute_force_solutions, named_graph, Instance, Payload, ProblemId, SizeParams};
use sspforge::reductions::{Claims, Reduction};
use sspforge::verifier::{
    certificate_sound, check_parsimonious, check_ssp, classify_partition, search_counterexample, Enumerated, Property,
    Trial,
};
use sspforge::Error;

use common::*;

fn cert_names(
    inst: &Instance,
    red_id: &str,
    pick: impl Fn(&sspforge::verifier::PartitionCertificate) -> sspforge::Solution,
) -> BTreeSet<String> {
    let r = report(red_id, inst);
    let cert = r.partition.expect("certificate");
    let tgt = red(red_id).apply(inst).unwrap();
    names(&tgt, &pick(&cert)).into_iter().collect()
}

#[test]
fn naive_split_witnesses_name_the_helper() {
    let src = Instance::cnf_signed(ProblemId::SAT, 4, &[&[1, 2, 3, 4]]).unwrap();
    let r = report("sat_to_tsat_naive", &src);
    assert!(!r.spr_holds);
    assert!(r.ssp_holds);
    let spr: Vec<_> = r.witnesses.iter().filter(|w| w.property == "spr").collect();
    assert!(spr.len() >= 2);
    let with_h = spr.iter().filter(|w| w.elements.iter().any(|e| e == "h1^1")).count();
    let with_not_h = spr.iter().filter(|w| w.elements.iter().any(|e| e == "~h1^1")).count();
    assert!(with_h >= 1 && with_not_h >= 1);

    let fixed = report("sat_to_tsat", &src);
    assert!(fixed.spr_holds && fixed.ssp_holds);
    assert_eq!(fixed.source_count, fixed.target_count);
    assert_eq!(fixed.source_count, 15);
}

#[test]
fn ss_to_p_certificate() {
    let src = Instance::numbers(ProblemId::SS, &[1, 2, 3, 4], Some(5)).unwrap();
    let r = report("ss_to_p", &src);
    let cert = r.partition.unwrap();
    assert!(cert.valid);
    assert_eq!(cert.s_all.indices(), vec![5]);
    assert_eq!(cert.s_nev.indices(), vec![4]);
    assert!(cert.s_link.is_empty());
}

#[test]
fn tsat_to_esat_certificate() {
    let src = Instance::cnf_signed(ProblemId::TSAT, 3, &[&[1], &[2, 3]]).unwrap();
    let all = cert_names(&src, "tsat_to_esat", |c| c.s_all.clone());
    let nev = cert_names(&src, "tsat_to_esat", |c| c.s_nev.clone());
    assert_eq!(all, name_set(&["h1", "h2", "h3"]));
    assert_eq!(nev, name_set(&["~h1", "~h2", "~h3"]));
    assert!(report("tsat_to_esat", &src).partition.unwrap().valid);
}

#[test]
fn uhc_to_tsp_never_uses_non_edges() {
    let graph = named_graph(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
    )
    .unwrap();
    let src = Instance::new(ProblemId::UHC, Payload::UCycle { graph }).unwrap();
    let r = report("uhc_to_tsp", &src);
    assert!(r.ssp_holds && r.spr_holds);
    let cert = r.partition.unwrap();
    assert!(cert.valid && cert.s_all.is_empty() && cert.s_link.is_empty());
    let nev = cert_names(&src, "uhc_to_tsp", |c| c.s_nev.clone());
    assert_eq!(nev, name_set(&["{b,d}"]));
}

#[test]
fn unsatisfiable_source_is_vacuous() {
    let every_sign: Vec<Vec<i64>> = (0..8)
        .map(|m| (1..=3).map(|v| if m >> (v - 1) & 1 == 1 { -v } else { v }).collect())
        .collect();
    let clauses: Vec<&[i64]> = every_sign.iter().map(Vec::as_slice).collect();
    let src = Instance::cnf_signed(ProblemId::ESAT, 3, &clauses).unwrap();
    let r = report("esat_to_osat", &src);
    assert!(r.vacuous());
    assert!(r.ssp_holds && r.spr_holds);
    let cert = r.partition.unwrap();
    assert!(cert.vacuous && cert.valid);
}

#[test]
fn mis_to_mvc_is_not_ssp_but_counts_match() {
    let src = Instance::graph_named(ProblemId::MIS, &["a", "b", "c"], &[("a", "b"), ("b", "c")], 2).unwrap();
    let r = report("mis_to_mvc", &src);
    assert!(!r.ssp_holds);
    assert!(r.spr_holds);
    assert!(!r.mismatch());
    let (ok, n, m) = check_parsimonious(&red("mis_to_mvc"), &src, &mut Budget::default()).unwrap();
    assert!(ok);
    assert_eq!((n, m), (1, 1));
}

#[test]
fn claims_without_embedding() {
    let src = Instance::graph_named(ProblemId::CQ, &["a", "b"], &[("a", "b")], 2).unwrap();
    let r = red("cq_to_mvc");
    assert!(!r.has_embedding());
    assert!(matches!(
        check_ssp(&r, &src, &mut Budget::default()),
        Err(Error::NoEmbedding(_))
    ));
    assert!(matches!(
        classify_partition(&r, &src, &mut Budget::default()),
        Err(Error::NoEmbedding(_))
    ));
    assert_eq!(r.claims(), Claims { ssp: false, spr: true });
}

#[test]
fn frozen_paper_failures() {
    let one = Instance::cnf_signed(ProblemId::ESAT, 3, &[&[1, 2, 3]]).unwrap();
    let r = report("esat_to_dhp", &one);
    assert_eq!((r.source_count, r.target_count), (7, 16));
    assert!(!r.ssp_holds && r.mismatch());

    let one = Instance::cnf_signed(ProblemId::OSAT, 3, &[&[1, 2, 3]]).unwrap();
    for id in ["osat_to_mis", "osat_to_mvc", "osat_to_stt"] {
        let r = report(id, &one);
        assert_eq!((r.source_count, r.target_count), (3, 12), "{id}");
        assert!(r.mismatch(), "{id}");
    }
}

#[test]
fn budget_is_enforced() {
    let src = Instance::cnf_signed(ProblemId::SAT, 8, &[&[1, 2, 3, 4, 5, 6, 7, 8]]).unwrap();
    let err = Enumerated::new(&red("sat_to_tsat"), &src, &mut Budget::new(10))
        .err()
        .unwrap();
    assert!(matches!(err, Error::BudgetExceeded { .. }));
}

#[test]
fn counterexample_search_finds_naive_split() {
    let params = SizeParams::parse("vars=4,clauses=2,clause_len=4").unwrap();
    let out = search_counterexample(&red("sat_to_tsat_naive"), Property::Spr, &params, 20, 0, 1_000_000).unwrap();
    let (_, inst, rep) = out.found.expect("a counterexample");
    assert!(!rep.spr_holds);
    assert_eq!(inst.kind, ProblemId::SAT);

    let out = search_counterexample(&red("sat_to_tsat"), Property::Spr, &params, 20, 0, 1_000_000).unwrap();
    assert!(out.found.is_none());
    assert_eq!(out.checked() + out.budget_exceeded(), 20);
}

#[test]
fn counterexample_search_is_deterministic() {
    let params = SizeParams::default();
    let r = red("mis_to_cq");
    let a = search_counterexample(&r, Property::Partition, &params, 8, 3, 1_000_000).unwrap();
    let b = search_counterexample(&r, Property::Partition, &params, 8, 3, 1_000_000).unwrap();
    let reports = |o: &sspforge::verifier::SearchOutcome| -> Vec<_> {
        o.trials
            .iter()
            .map(|t| match t {
                Trial::Checked(x) => Some((x.1.fingerprint.clone(), x.1.source_count, x.1.target_count)),
                _ => None,
            })
            .collect()
    };
    assert_eq!(reports(&a), reports(&b));
}

#[test]
fn certificates_reconstruct_target_solutions() {
    let src = Instance::cnf_signed(ProblemId::SAT, 4, &[&[1, -2, 3, 4], &[2, -4]]).unwrap();
    let r: Reduction = red("sat_to_tsat+tsat_to_esat+esat_to_ss");
    let e = Enumerated::new(&r, &src, &mut Budget::default()).unwrap();
    let cert = e.partition().unwrap();
    assert!(cert.valid);
    assert!(certificate_sound(&e, &cert).unwrap());
}

#[test]
fn counts_agree_with_brute_force_oracle() {
    // target counts recomputed with the exhaustive subset oracle
    let cases: Vec<(&str, Instance)> = vec![
        (
            "sat_to_tsat",
            Instance::cnf_signed(ProblemId::SAT, 4, &[&[1, -2, 3, 4]]).unwrap(),
        ),
        (
            "tsat_to_esat",
            Instance::cnf_signed(ProblemId::TSAT, 3, &[&[1], &[2, 3]]).unwrap(),
        ),
        (
            "esat_to_ss",
            Instance::cnf_signed(ProblemId::ESAT, 3, &[&[-1, -2, 3], &[1, -2, -3]]).unwrap(),
        ),
        (
            "ss_to_p",
            Instance::numbers(ProblemId::SS, &[1, 2, 3, 4], Some(5)).unwrap(),
        ),
        (
            "vc_to_ds_demo",
            Instance::graph_named(ProblemId::VC, &["u", "v"], &[("u", "v")], 2).unwrap(),
        ),
    ];
    for (id, src) in cases {
        let r = report(id, &src);
        let tgt = red(id).apply(&src).unwrap();
        let oracle = brute_force_solutions(tgt.kind, &tgt, &mut Budget::default()).unwrap();
        assert_eq!(r.target_count, oracle.len(), "{id}");
        let src_oracle = brute_force_solutions(src.kind, &src, &mut Budget::default()).unwrap();
        assert_eq!(r.source_count, src_oracle.len(), "{id}");
    }
}

#[test]
fn odm_to_dm_needs_the_binding_premise() {
    // two perfect matchings share the empty singleton choice, so each of the
    // three copies can pick either one
    let src = sspforge::formats::parse_instance(
        r#"{"problem":"odm","x":["x1","x2"],"y":["y1","y2"],"z":["z1","z2"],"singletons":[],
            "triples":[["x1","y1","z1"],["x2","y2","z2"],["x1","y2","z2"],["x2","y1","z1"]]}"#,
    )
    .unwrap();
    let r = report("odm_to_dm", &src);
    assert_eq!((r.source_count, r.target_count), (2, 8));
    assert!(!r.spr_holds);

    // instances built from 1-in-3 formulas carry a real binding
    let osat = Instance::cnf_signed(ProblemId::OSAT, 4, &[&[1, 2, 3], &[-1, 2, 4]]).unwrap();
    let r = report("osat_to_odm+odm_to_dm", &osat);
    assert!(r.ssp_holds && r.spr_holds);
}
