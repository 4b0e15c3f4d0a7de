use sspforge::compendium::{format_chain, materialize, ReductionGraph, Require};
use sspforge::problems::ProblemId::{self, *};
use sspforge::reductions::registry;

fn chains(src: ProblemId, tgt: ProblemId, req: Require) -> Vec<String> {
    ReductionGraph::full()
        .transitive_paths(src, tgt, req, false)
        .iter()
        .map(|c| format_chain(c))
        .collect()
}

#[test]
fn esat_to_mis_routes() {
    assert_eq!(chains(ESAT, MIS, Require::BOTH), ["esat_to_osat, osat_to_mis"]);
    assert_eq!(
        chains(ESAT, MIS, Require::NONE),
        ["esat_to_mis", "esat_to_cq, cq_to_mis", "esat_to_osat, osat_to_mis"]
    );
}

#[test]
fn no_self_paths() {
    assert!(chains(SAT, SAT, Require::NONE).is_empty());
}

#[test]
fn paths_respect_requirements() {
    let g = ReductionGraph::full();
    for &s in ProblemId::ALL {
        for &t in ProblemId::ALL {
            for req in [Require::NONE, Require::BOTH, Require { ssp: true, spr: false }] {
                for chain in g.transitive_paths(s, t, req, false) {
                    assert!(!chain.is_empty() && chain.len() <= sspforge::compendium::MAX_CHAIN);
                    assert_eq!(chain[0].source, s);
                    assert_eq!(chain.last().unwrap().target, t);
                    for w in chain.windows(2) {
                        assert_eq!(w[0].target, w[1].source);
                    }
                    assert!(chain.iter().all(|d| req.accepts(d.claims) && !d.demo));
                }
            }
        }
    }
}

#[test]
fn demos_are_opt_in() {
    let g = ReductionGraph::full();
    assert!(g.transitive_paths(VC, DS, Require::NONE, false).is_empty());
    let with = g.transitive_paths(VC, DS, Require::NONE, true);
    assert_eq!(format_chain(&with[0]), "vc_to_ds_demo");
}

#[test]
fn chains_materialize_with_conjoined_claims() {
    let g = ReductionGraph::full();
    let p = &g.transitive_paths(SAT, TMS, Require::BOTH, false)[0];
    let r = materialize(p).unwrap();
    assert_eq!((r.source(), r.target()), (SAT, TMS));
    assert!(r.claims().ssp && r.claims().spr);
    assert!(materialize(&[]).is_err());
}

#[test]
fn derived_edges_close_gaps() {
    let g = ReductionGraph::full();
    let derived = g.derived_edges(Require::BOTH);
    let sat_dm = derived
        .iter()
        .find(|d| d.source == SAT && d.target == DM)
        .expect("sat reaches dm");
    assert!(sat_dm.chain.len() >= 2);
    assert_eq!(sat_dm.reduction().unwrap().target(), DM);
    for d in &derived {
        assert!(!registry().iter().any(|r| r.source == d.source
            && r.target == d.target
            && !r.demo
            && r.claims.ssp
            && r.claims.spr));
    }
}

#[test]
fn dot_export() {
    let dot = ReductionGraph::full().to_dot();
    assert!(dot.starts_with("digraph compendium {"));
    assert!(dot.contains("\"esat\" -> \"cq\" [label=\"esat_to_cq\", style=dashed];"));
    assert!(dot.contains("\"sat\" -> \"tsat\" [label=\"sat_to_tsat_naive\", style=dotted];"));
    assert!(dot.contains("label=\"vc_to_ds_demo\", style=dotted, color=red"));
    assert_eq!(dot, ReductionGraph::full().to_dot());
}

#[test]
fn filtered_graph_keeps_nodes() {
    let g = ReductionGraph::full().filtered(Require::BOTH);
    assert_eq!(g.nodes.len(), 31);
    assert!(g.edges.iter().all(|d| d.claims.ssp && d.claims.spr));
}

#[test]
fn json_rejects_tampered_claims() {
    let mut v = ReductionGraph::full().to_json();
    let spr = v["edges"][0]["claims"]["spr"].as_bool().unwrap();
    v["edges"][0]["claims"]["spr"] = serde_json::json!(!spr);
    assert!(ReductionGraph::from_json(&v).is_err());
}

#[test]
fn require_parses() {
    assert_eq!("ssp,spr".parse::<Require>().unwrap(), Require::BOTH);
    assert_eq!("".parse::<Require>().unwrap(), Require::NONE);
    assert!("ssp,foo".parse::<Require>().is_err());
}
