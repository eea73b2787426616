//! Acceptance suite: one PASS/FAIL line per criterion, each with a time
//! budget. Criteria known to fail against the published claims are listed in
//! `KNOWN_FAILURES`; the run exits nonzero on any other outcome, including a
//! known failure that starts passing.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mfq::even_conn::{colon_oracle_verify, even_conn_edges, even_connected, MatchingOrder};
use mfq::graph::{complete_bipartite, connected_classes, cycle, enumerate_matchings, trees, MatchingTable};
use mfq::homology::{depth, is_cohen_macaulay, is_sequentially_cm, Field};
use mfq::matching_free::{independence_complex, mf_complex, mf_facets_by_subset_filter, verify_sr_equality};
use mfq::shelling::{
    constructive_whisker_shelling, decide_shellability, is_shellable_bruteforce, is_shelling_order,
    literal_filtration, Shellability,
};
use mfq::theorems::{
    cm_characterizations_check, dual_route_check, expected_cm_class, expected_depth, expected_dim,
    expected_pure, expected_shellable_upper, facet_complement_check, pentagon_example,
    whisker_cycle_report, CmClass,
};
use mfq::{ExtNat, Graph, Matching, VertexSet, WhiskerGraph};
use rayon::prelude::*;

const FIELDS: [Field; 2] = [Field::Gf2, Field::Rationals];

/// Criteria that fail because the statement they test does not hold as
/// written, with the reason printed next to the FAIL line.
const KNOWN_FAILURES: [(usize, &str); 2] = [
    (11, "the stated link is not the one of the stated face"),
    (12, "literal filtration under a fixed order breaks shedding and the swap-set link"),
];

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn connected(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(|n| connected_classes(n).unwrap()).collect()
}

fn whisker(h: &Graph) -> WhiskerGraph {
    WhiskerGraph::new(h.clone()).unwrap()
}

fn cycles() -> Vec<Graph> {
    (3..=7).map(|n| cycle(n).unwrap()).collect()
}

fn small_trees() -> Vec<Graph> {
    (1..=6).flat_map(|n| trees(n).unwrap()).collect()
}

/// Graphs on up to `max_n` vertices, one per isomorphism class, connected
/// or not.
fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let key = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> =
                        edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                    e.sort();
                    e
                })
                .min()
                .unwrap();
            if seen.insert(key) {
                out.push(Graph::from_edges(n, &edges).unwrap());
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn c1_dimension() -> Outcome {
    let mut checked = 0;
    for h in connected(2, 6) {
        let w = whisker(&h);
        for q in 1..=w.n() {
            let dim = mf_complex(w.graph(), q).map_err(err)?.dim().unwrap();
            let predicted = expected_dim(&h, q).map_err(err)?;
            ensure(dim == (h.n() + q) as isize - 2 && predicted as isize == dim, || {
                format!("{:?} q={q}: dim {dim}, predicted {predicted}", h.edges())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes, connected H up to isomorphism, 2 <= n <= 6"))
}

fn c2_purity() -> Outcome {
    let mut checked = 0;
    let mut impure = 0;
    for h in connected(2, 6) {
        let w = whisker(&h);
        for q in 1..=w.n() {
            let pure = mf_complex(w.graph(), q).map_err(err)?.is_pure();
            ensure(pure == expected_pure(&h, q).map_err(err)?, || {
                format!("{:?} q={q}: is_pure {pure}", h.edges())
            })?;
            checked += 1;
            impure += usize::from(!pure);
        }
    }
    Ok(format!("{checked} complexes, {impure} not pure"))
}

fn certify(h: &Graph, q: usize, order: MatchingOrder) -> Result<usize, String> {
    let w = whisker(h);
    let cert = constructive_whisker_shelling(&w, q, order)
        .map_err(err)?
        .map_err(|f| format!("{:?} q={q} {order:?}: {f}", h.edges()))?;
    let omega = mf_complex(w.graph(), q).map_err(err)?;
    ensure(is_shelling_order(&omega, &cert.facet_order).map_err(err)?, || {
        format!("{:?} q={q}: facet order does not shell", h.edges())
    })?;
    ensure(cert.replay(&w).map_err(err)?, || format!("{:?} q={q}: replay failed", h.edges()))?;
    Ok(cert.facet_order.len())
}

fn c3_shelling() -> Outcome {
    let mut jobs: Vec<(Graph, usize)> = Vec::new();
    for h in cycles() {
        jobs.extend((1..=h.n().div_ceil(2)).map(|q| (h.clone(), q)));
    }
    for h in small_trees() {
        jobs.extend((1..=h.n()).map(|q| (h.clone(), q)));
    }
    let facets: Vec<usize> = jobs
        .par_iter()
        .map(|(h, q)| certify(h, *q, MatchingOrder::Lexicographic))
        .collect::<Result<_, _>>()?;
    Ok(format!(
        "{} certificates rechecked, {} facets ordered",
        jobs.len(),
        facets.iter().sum::<usize>()
    ))
}

fn c4_sharpness() -> Outcome {
    let w = whisker(&cycle(6).unwrap());
    let g = w.graph();
    let cx = mf_complex(g, 4).map_err(err)?;
    let base = w.base_vertices();
    let link = cx.link(base).map_err(err)?;
    // K_{3,3} on the whisker vertices, parts by parity of the base index.
    let k33 = complete_bipartite(3, 3).map_err(err)?;
    let to_whisker = [w.y(0), w.y(2), w.y(4), w.y(1), w.y(3), w.y(5)];
    let edges: Vec<(usize, usize)> = k33.edges().iter().map(|&(a, b)| (to_whisker[a], to_whisker[b])).collect();
    let on_whiskers = Graph::from_edges(g.n(), &edges).map_err(err)?;
    let predicted = independence_complex(&on_whiskers, w.whisker_vertices());
    ensure(link == predicted, || format!("link facets {:?}", link.facets()))?;

    let mf1 = mf_complex(&k33, 1).map_err(err)?;
    ensure(
        matches!(is_shellable_bruteforce(&mf1, 64).map_err(err)?, Shellability::NotShellable { .. }),
        || "MF^1(K33) not refuted as shellable".into(),
    )?;
    for field in FIELDS {
        ensure(!is_sequentially_cm(&mf1, field).map_err(err)?, || format!("MF^1(K33) seqCM over {field}"))?;
    }
    let verdict = decide_shellability(&cx, 12).map_err(err)?;
    ensure(verdict.is_shellable() == Some(false), || format!("MF^4(W(C6)): {verdict:?}"))?;
    Ok(format!("link = MF^1(K33); MF^4(W(C6)) {}", match verdict {
        Shellability::NotShellable { witness: Some(f) } => format!("not shellable, link witness {f}"),
        _ => "not shellable".into(),
    }))
}

fn c5_cm_classes() -> Outcome {
    let jobs: Vec<(Graph, usize)> = cycles()
        .into_iter()
        .flat_map(|h| (1..=h.n()).map(move |q| (h.clone(), q)))
        .collect();
    let results: Vec<Result<(CmClass, bool), String>> = jobs
        .par_iter()
        .map(|(h, q)| {
            let q = *q;
            let cx = mf_complex(whisker(h).graph(), q).map_err(err)?;
            let class = expected_cm_class(h, q).map_err(err)?;
            let pure = cx.is_pure();
            let name = format!("W(C{}) q={q}", h.n());
            let asserted = match class {
                CmClass::CM => {
                    for field in FIELDS {
                        ensure(is_cohen_macaulay(&cx, field).map_err(err)?, || format!("{name}: not CM over {field}"))?;
                    }
                    true
                }
                CmClass::SeqCmNotPure => {
                    ensure(!pure, || format!("{name}: pure"))?;
                    for field in FIELDS {
                        ensure(is_sequentially_cm(&cx, field).map_err(err)?, || format!("{name}: not seqCM over {field}"))?;
                    }
                    true
                }
                CmClass::NotPure => {
                    ensure(!pure, || format!("{name}: pure"))?;
                    true
                }
                CmClass::PureUnknownCm => {
                    ensure(pure, || format!("{name}: not pure"))?;
                    false
                }
                CmClass::FullSimplex => false,
            };
            Ok((class, asserted))
        })
        .collect();
    let mut asserted = 0;
    for r in results {
        asserted += usize::from(r?.1);
    }
    Ok(format!("{} (n, q) pairs, {asserted} with a CM / seqCM / not-pure claim", jobs.len()))
}

fn c6_depth() -> Outcome {
    let mut jobs: Vec<(Graph, usize)> = Vec::new();
    for h in cycles().into_iter().chain(small_trees()) {
        jobs.extend((1..=h.n()).map(|q| (h.clone(), q)));
    }
    let compared: Vec<bool> = jobs
        .par_iter()
        .map(|(h, q)| -> Result<bool, String> {
            let Some(expected) = expected_depth(h, *q).map_err(err)? else {
                return Ok(false);
            };
            let cx = mf_complex(whisker(h).graph(), *q).map_err(err)?;
            for field in FIELDS {
                let d = depth(&cx, field).map_err(err)?;
                ensure(d == expected, || format!("{:?} q={q}: depth {d} over {field}, expected {expected}", h.edges()))?;
            }
            Ok(true)
        })
        .collect::<Result<_, _>>()?;
    for (n, want) in [(3, 3), (4, 5), (5, 6), (6, 7)] {
        let cx = mf_complex(whisker(&cycle(n).unwrap()).graph(), 2).map_err(err)?;
        for field in FIELDS {
            let d = depth(&cx, field).map_err(err)?;
            ensure(d == want, || format!("depth of MF^2(W(C{n})) is {d}, expected {want}"))?;
        }
    }
    Ok(format!(
        "{} of {} (H, q) pairs have a formula, all equal over both fields; q=2 cycle values 3,5,6,7",
        compared.iter().filter(|&&c| c).count(),
        jobs.len()
    ))
}

fn c7_cycle_reports() -> Outcome {
    let jobs: Vec<(usize, usize)> = (3..=7).flat_map(|n| (1..=n).map(move |q| (n, q))).collect();
    let reports: Vec<_> = jobs
        .par_iter()
        .map(|&(n, q)| whisker_cycle_report(n, q, Some(Field::Gf2)).map_err(err))
        .collect::<Result<_, _>>()?;
    let mut open = Vec::new();
    for r in &reports {
        if r.proved {
            let rat = depth(&mf_complex(whisker(&cycle(r.n).unwrap()).graph(), r.q).map_err(err)?, Field::Rationals)
                .map_err(err)?;
            ensure(r.matches() == Some(true) && rat == r.conjectured, || {
                format!("n={} q={}: computed {:?}, conjectured {}", r.n, r.q, r.computed, r.conjectured)
            })?;
        } else {
            open.push(format!("C{} q={}: {} vs {}", r.n, r.q, r.computed.unwrap(), r.conjectured));
        }
    }
    Ok(format!(
        "{} proved values match; open range (computed vs conjectured): {}",
        reports.len() - open.len(),
        open.join(", ")
    ))
}

fn c8_colon() -> Outcome {
    let graphs = all_graphs(5);
    let counts: Vec<usize> = graphs
        .par_iter()
        .map(|h| -> Result<usize, String> {
            let w = whisker(h);
            let mut count = 0;
            for k in 1..=3 {
                for m in enumerate_matchings(w.graph(), k) {
                    ensure(colon_oracle_verify(w.graph(), &m).map_err(err)?, || {
                        format!("{:?} M={:?}", h.edges(), m.edges())
                    })?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect::<Result<_, _>>()?;
    Ok(format!(
        "{} matchings over {} graphs (all graphs up to isomorphism, n <= 5)",
        counts.iter().sum::<usize>(),
        graphs.len()
    ))
}

fn edges_of(g: &Graph, m: &Matching) -> BTreeSet<(usize, usize)> {
    even_conn_edges(g, m).into_iter().collect()
}

fn adjacent_or_connected(g: &Graph, m: &Matching, x: usize, y: usize) -> bool {
    g.has_edge(x, y) || even_connected(g, m, x, y).unwrap().is_some()
}

fn c9_lemmas() -> Outcome {
    let mut equalities = 0;
    for h in all_graphs(5) {
        let w = whisker(&h);
        let g = w.graph();
        for k in 1..=3 {
            for m in enumerate_matchings(g, k) {
                let full = edges_of(g, &m);
                for &e in m.edges().iter().filter(|&&e| w.is_whisker_edge(e)) {
                    let pair = VertexSet::from_slice(&[e.0, e.1]);
                    let smaller = edges_of(&g.restrict(g.vertices().difference(pair)), &m.without_edge(e));
                    let smaller: BTreeSet<_> =
                        smaller.into_iter().filter(|&(a, b)| !pair.contains(a) && !pair.contains(b)).collect();
                    ensure(full == smaller, || format!("leaf removal: {:?} M={:?}", h.edges(), m.edges()))?;
                    equalities += 1;
                }
                for x in g.vertices().difference(m.support()).iter() {
                    let lhs: BTreeSet<_> = full.iter().copied().filter(|&(a, b)| a != x && b != x).collect();
                    let rhs: BTreeSet<_> = edges_of(&g.restrict(g.vertices().without(x)), &m)
                        .into_iter()
                        .filter(|&(a, b)| a != x && b != x)
                        .collect();
                    ensure(lhs == rhs, || format!("vertex deletion: {:?} M={:?} x={x}", h.edges(), m.edges()))?;
                    equalities += 1;
                }
            }
        }
    }

    // Faces made of exactly q − 1 disjoint edges: f = Supp(M).
    let (mut pairs, mut sets, mut broad_faces, mut broad_breaks) = (0, 0, 0, 0);
    for h in connected(1, 4) {
        let w = whisker(&h);
        let g = w.graph();
        let table = MatchingTable::new(g);
        for q in 2..=w.n() {
            for m in enumerate_matchings(g, q - 1) {
                let f = m.support();
                let outside = g.vertices().difference(f);
                for s in outside.subsets() {
                    let vs = s.to_vec();
                    let witnessed = vs
                        .iter()
                        .enumerate()
                        .any(|(i, &x)| vs[i + 1..].iter().any(|&y| adjacent_or_connected(g, &m, x, y)));
                    ensure((table.nu(f.union(s)) >= q) == witnessed, || {
                        format!("{:?} q={q} M={:?} S={s}", h.edges(), m.edges())
                    })?;
                    if s.len() == 2 {
                        pairs += 1;
                    } else {
                        sets += 1;
                    }
                }
            }
            // Faces with q − 1 disjoint edges and further vertices, for the record.
            for f in g.vertices().subsets().filter(|&f| table.nu(f) == q - 1) {
                for m in enumerate_matchings(&g.restrict(f), q - 1) {
                    if m.support() == f {
                        continue;
                    }
                    broad_faces += 1;
                    let out = g.vertices().difference(f).to_vec();
                    let breaks = out.iter().enumerate().any(|(i, &x)| {
                        out[i + 1..].iter().any(|&y| {
                            (table.nu(f.with(x).with(y)) >= q) != adjacent_or_connected(g, &m, x, y)
                        })
                    });
                    broad_breaks += usize::from(breaks);
                }
            }
        }
    }
    Ok(format!(
        "{equalities} graph equalities; {pairs} pair and {sets} set extensions of matching supports agree; \
         faces with extra vertices: {broad_breaks} of {broad_faces} (face, matching) pairs break the pair criterion"
    ))
}

fn c10_characterizations() -> Outcome {
    let corpus = connected(2, 5);
    let checked: Vec<(usize, usize)> = corpus
        .par_iter()
        .map(|h| -> Result<(usize, usize), String> {
            for field in FIELDS {
                let (a, b) = cm_characterizations_check(h, field).map_err(err)?;
                ensure(a && b, || format!("{:?} over {field}: ({a}, {b})", h.edges()))?;
            }
            if h.girth() == ExtNat::Finite(3) {
                return Ok((1, 0));
            }
            ensure(facet_complement_check(h).map_err(err)?, || format!("facet complements: {:?}", h.edges()))?;
            for field in FIELDS {
                let d = dual_route_check(h, field).map_err(err)?;
                ensure(d.holds(), || format!("dual route {:?} over {field}: {d:?}", h.edges()))?;
            }
            Ok((1, 1))
        })
        .collect::<Result<_, _>>()?;
    Ok(format!(
        "{} graphs characterized; {} triangle-free with facet complements and the dual route",
        checked.iter().map(|c| c.0).sum::<usize>(),
        checked.iter().map(|c| c.1).sum::<usize>()
    ))
}

fn c11_pentagon() -> Outcome {
    let mut notes = Vec::new();
    for field in FIELDS {
        let r = pentagon_example(1, field).map_err(err)?;
        ensure(!r.sequentially_cm, || format!("MF^2 is sequentially CM over {field}"))?;
        ensure(r.witness.is_some(), || format!("no face with a non-seqCM link over {field}"))?;
        ensure(r.stated_link_matches, || {
            format!(
                "over {field}: link of {} has facets {:?} (sequentially CM: {}); a non-seqCM link is at {} with facets {:?}",
                r.stated_face,
                r.stated_link_facets,
                r.stated_link_sequentially_cm,
                r.witness.unwrap(),
                r.witness_link_facets
            )
        })?;
        notes.push(format!("{field}: not seqCM"));
    }
    Ok(notes.join("; "))
}

fn c12_properties() -> Outcome {
    let mut corpus: Vec<Graph> = connected(1, 5);
    corpus.extend((6..=7).map(|n| cycle(n).unwrap()));
    let seeds = [MatchingOrder::Seeded(1), MatchingOrder::Seeded(7), MatchingOrder::Seeded(2024)];

    let jobs: Vec<(Graph, usize, MatchingOrder)> = corpus
        .iter()
        .flat_map(|h| {
            let top = expected_shellable_upper(h).min(h.n());
            (1..=top).flat_map(move |q| seeds.into_iter().map(move |o| (h.clone(), q, o)))
        })
        .collect();
    jobs.par_iter()
        .map(|(h, q, o)| certify(h, *q, *o).map(|_| ()))
        .collect::<Result<Vec<()>, _>>()?;

    for h in connected(1, 4) {
        let g = whisker(&h);
        for q in 1..=h.n() + 1 {
            ensure(verify_sr_equality(g.graph(), q).map_err(err)?, || format!("SR {:?} q={q}", h.edges()))?;
            let mut a = mf_complex(g.graph(), q).map_err(err)?.facets().to_vec();
            let mut b = mf_facets_by_subset_filter(g.graph(), q).map_err(err)?;
            a.sort();
            b.sort();
            ensure(a == b, || format!("facets {:?} q={q}", h.edges()))?;
        }
    }

    // The filtration taken in exactly the requested order.
    let literal: Vec<(Graph, usize, MatchingOrder)> = jobs.iter().filter(|j| j.1 >= 2).cloned().collect();
    let tallies: Vec<(usize, usize, usize, usize, Option<String>)> = literal
        .par_iter()
        .map(|(h, q, o)| {
            let steps = literal_filtration(&whisker(h), *q, *o).map_err(err)?;
            let not_shedding = steps.iter().filter(|s| !s.shedding).count();
            let swap = steps.iter().filter(|s| !s.swap_formula_holds).count();
            let primed = steps.iter().filter(|s| !s.support_swap_formula_holds).count();
            let first = (not_shedding + swap > 0).then(|| format!("{:?} q={q} {o:?}", h.edges()));
            Ok((steps.len(), not_shedding, swap, primed, first))
        })
        .collect::<Result<_, String>>()?;
    let steps: usize = tallies.iter().map(|t| t.0).sum();
    let not_shedding: usize = tallies.iter().map(|t| t.1).sum();
    let swap: usize = tallies.iter().map(|t| t.2).sum();
    let primed: usize = tallies.iter().map(|t| t.3).sum();
    let summary = format!(
        "{} seeded certificates recheck; SR and facet oracles agree; literal filtration over {} runs, {steps} steps: \
         {not_shedding} not shedding, {swap} swap-set link mismatches, {primed} with the support-swap link",
        jobs.len(),
        literal.len()
    );
    let first = tallies.iter().find_map(|t| t.4.clone());
    ensure(not_shedding == 0 && swap == 0, || match first {
        Some(f) => format!("{summary}; first at {f}"),
        None => summary.clone(),
    })?;
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "dimension", 120, c1_dimension),
        (2, "purity", 120, c2_purity),
        (3, "constructive shelling", 300, c3_shelling),
        (4, "sharpness at W(C6), q=4", 60, c4_sharpness),
        (5, "CM classification of whiskered cycles", 600, c5_cm_classes),
        (6, "depth formulas", 600, c6_depth),
        (7, "whiskered cycle depth reports", 600, c7_cycle_reports),
        (8, "colon ideals", 180, c8_colon),
        (9, "even-connection lemmas", 180, c9_lemmas),
        (10, "CM characterizations and facet complements", 600, c10_characterizations),
        (11, "whiskered pentagon is not sequentially CM", 60, c11_pentagon),
        (12, "property suites", 600, c12_properties),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let pass = outcome.is_ok() && !over;
        let detail = match &outcome {
            Ok(d) if over => format!("{d}; over budget"),
            Ok(d) | Err(d) => d.clone(),
        };
        println!(
            "{} criterion {id:>2} {name} [{:.1}s / {budget}s]: {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id);
        match (pass, known) {
            (true, None) => passed += 1,
            (false, Some((_, why))) => println!("     known failure: {why}"),
            (true, Some(_)) => {
                println!("     listed as a known failure but passed");
                unexpected += 1;
            }
            (false, None) => unexpected += 1,
        }
    }
    println!(
        "acceptance: {passed} passed, {} known failures, {unexpected} unexpected",
        KNOWN_FAILURES.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
