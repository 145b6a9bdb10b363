use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::Rng;

use mgk_core::composition::sigma;
use mgk_core::link::{catalog_link, catalog_solid_torus};
use mgk_core::random::{self, case_rng};
use mgk_core::{
    Alphabet, ClosedGropeTree, CompositionSpec, GropeTree, LinkModel, MuIndex, RingElement, SolidTorusLink, Word,
    compose, conjugation_action, essentiality_certificate, lcs_degree, magnus, normal_form, r_inverse, r_map,
    verify_sigma, wedge_ring_element,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn fmt_word(w: &Word, s: usize) -> String {
    w.display(&Alphabet::numbered("m", s)).to_string()
}

fn ring_and_group_axioms() -> Check {
    for i in 0..500 {
        let mut rng = case_rng(101, i);
        let s = rng.gen_range(1..=5);
        let a = random::ring_element(&mut rng, s, 4, s);
        let b = random::ring_element(&mut rng, s, 4, s);
        let c = random::ring_element(&mut rng, s, 4, s);
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity: {a} | {b} | {c}"))?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("left distributivity: {a} | {b} | {c}"))?;
        ensure(&(&a + &b) * &c == &(&a * &c) + &(&b * &c), || format!("right distributivity: {a} | {b} | {c}"))?;
        ensure(&a + &b == &b + &a, || format!("commutative addition: {a} | {b}"))?;
        ensure(&RingElement::one(s) * &a == a && &a * &RingElement::one(s) == a, || format!("unit: {a}"))?;
        ensure((&a + &(-&a)).is_zero(), || format!("additive inverse: {a}"))?;

        let u = random::word(&mut rng, s, 12);
        let v = random::word(&mut rng, s, 12);
        let (mu, mv) = (magnus(&u, s).unwrap(), magnus(&v, s).unwrap());
        ensure(magnus(&u.concat(&v), s).unwrap() == &mu * &mv, || {
            format!("multiplicativity: {} | {}", fmt_word(&u, s), fmt_word(&v, s))
        })?;
        ensure((&mu * &magnus(&u.inverse(), s).unwrap()).is_one(), || format!("inverse: {}", fmt_word(&u, s)))?;
    }
    Ok("500 cases".into())
}

fn milnor_relations() -> Check {
    for i in 0..300 {
        let mut rng = case_rng(202, i);
        let s = rng.gen_range(1..=5);
        let m = Word::gen(rng.gen_range(0..s));
        let u = random::word(&mut rng, s, 10);
        let v = random::word(&mut rng, s, 10);
        let w = m.conjugate_by(&u).commutator(&m.conjugate_by(&v));
        ensure(normal_form(&w, s).unwrap().is_identity(), || format!("relation not trivial: {}", fmt_word(&w, s)))?;
    }
    Ok("300 cases".into())
}

fn nilpotency() -> Check {
    for i in 0..100 {
        let mut rng = case_rng(303, i);
        let s = rng.gen_range(1..=5);
        let w = random::commutator(&mut rng, s, s + 1, 3);
        ensure(normal_form(&w, s).unwrap().is_identity(), || format!("s={s}: {}", fmt_word(&w, s)))?;
    }
    Ok("100 cases".into())
}

fn split_sequence() -> Check {
    for i in 0..200 {
        let mut rng = case_rng(404, i);
        let s = rng.gen_range(1..=4);
        let p = random::ring_element(&mut rng, s, 3, s);
        let q = random::ring_element(&mut rng, s, 3, s);
        let g = random::word(&mut rng, s, 6);
        ensure(r_inverse(&r_map(&p), s + 1).unwrap() == p, || format!("round trip: {p}"))?;
        let sum = normal_form(&r_map(&(&p + &q)), s + 1).unwrap();
        let prod = normal_form(&r_map(&p).concat(&r_map(&q)), s + 1).unwrap();
        ensure(sum == prod, || format!("additivity: {p} | {q}"))?;
        let conj = r_inverse(&r_map(&p).conjugate_by(&g), s + 1).unwrap();
        ensure(conj == conjugation_action(&g, &p).unwrap(), || format!("action: {} on {p}", fmt_word(&g, s)))?;
    }
    Ok("200 cases".into())
}

fn grope_degree() -> Check {
    let mut by_class = [0usize; 7];
    for i in 0..200 {
        let mut rng = case_rng(505, i);
        let k = rng.gen_range(1..=6);
        let tree = loop {
            let t = random::grope_of_class(&mut rng, k, 0.25);
            if t.leaf_count() <= 9 {
                break t;
            }
        };
        let n = tree.leaf_count();
        let (_, w) = tree.boundary_word(Alphabet::numbered("x", n).names()).unwrap();
        let d = lcs_degree(&w, n).unwrap();
        ensure(d == Some(k), || format!("{tree}: class {k}, degree {d:?}"))?;
        by_class[k] += 1;
    }
    Ok(format!("200 trees, per class {:?}", &by_class[1..]))
}

/// Unrooted graph of a closed genus-1 tree: vertex 0 is the root end.
fn graph(t: &ClosedGropeTree) -> Vec<Vec<usize>> {
    fn add(t: &GropeTree, parent: usize, adj: &mut Vec<Vec<usize>>) {
        let me = adj.len();
        adj.push(vec![parent]);
        adj[parent].push(me);
        if let GropeTree::Surface(s) = t {
            let (a, b) = &s.pairs()[0];
            add(a, me, adj);
            add(b, me, adj);
        }
    }
    let mut adj = vec![vec![]];
    add(t.body(), 0, &mut adj);
    adj
}

fn hang(adj: &[Vec<usize>], v: usize, from: usize) -> GropeTree {
    let kids: Vec<usize> = adj[v].iter().copied().filter(|&u| u != from).collect();
    match kids.as_slice() {
        [] => GropeTree::Leaf,
        [a, b] => GropeTree::pair(hang(adj, *a, v), hang(adj, *b, v)),
        _ => unreachable!("genus-1 vertices are trivalent"),
    }
}

/// The same graph hung from each leaf other than the root end.
fn rerootings(t: &ClosedGropeTree) -> Vec<GropeTree> {
    let adj = graph(t);
    (1..adj.len())
        .filter(|&v| adj[v].len() == 1)
        .map(|leaf| hang(&adj, adj[leaf][0], leaf))
        .collect()
}

fn grope_duality() -> Check {
    let mut genus_one = 0;
    for i in 0..300 {
        let mut rng = case_rng(606, i);
        let k = rng.gen_range(2..=8);
        let extra = if i % 3 == 0 { 0.0 } else { 0.3 };
        let tree = random::closed_grope_of_class(&mut rng, k, extra);
        let tips = tree.free_tips();
        let duals = tree.duals();
        ensure(duals.len() == tips.len(), || format!("{tree}: {} duals, {} tips", duals.len(), tips.len()))?;
        for (tip, dual) in &duals {
            ensure(dual.class() >= k, || format!("{tree} tip {tip}: dual {dual} of class {}", dual.class()))?;
        }
        if tree.body().all_genus_one() {
            genus_one += 1;
            let rerooted = rerootings(&tree);
            ensure(rerooted.len() == duals.len(), || format!("{tree}: leaf count mismatch"))?;
            for ((tip, dual), r) in duals.iter().zip(&rerooted) {
                ensure(dual.body().is_isomorphic(r), || format!("{tree} tip {tip}: dual {dual} vs re-rooted {r}"))?;
            }
        }
    }
    Ok(format!("300 trees, {genus_one} all genus 1"))
}

fn sigma_right_multiplication() -> Check {
    let mut lines = Vec::new();
    for name in ["core", "bing_double"] {
        let q = catalog_solid_torus(name).unwrap();
        let spec = CompositionSpec::new(LinkModel::unlink(4).unwrap(), q.clone()).unwrap();
        let wedge = wedge_ring_element(&q, 0).unwrap();
        let rep = verify_sigma(&spec, 100, 707).unwrap();
        ensure(rep.cases.len() == 100 + 3, || format!("{name}: {} cases", rep.cases.len()))?;
        if let Some(bad) = rep.cases.iter().find(|c| !c.pass) {
            return Err(format!("{name}: rho={} lhs={} rhs={}", bad.rho, bad.lhs, bad.rhs));
        }
        // recompute the right-hand side here from the wedge element alone
        let s = spec.k() - 1;
        let nv = s + q.len() - 1;
        let shifted: Vec<usize> = (0..q.len() - 1).map(|j| s + j).collect();
        let w = wedge.remap(&shifted, nv);
        for t in 0..100 {
            let mut rng = case_rng(708, t);
            let rho = random::ring_element(&mut rng, s, 3, s);
            let lhs = sigma(&spec, &rho).unwrap();
            let ids: Vec<usize> = (0..s).collect();
            let rhs = &rho.remap(&ids, nv) * &w;
            ensure(lhs == rhs, || format!("{name}: rho={rho} lhs={lhs} rhs={rhs}"))?;
        }
        lines.push(format!("{name} wedge_R={}", rep.wedge_r));
    }
    Ok(lines.join(", "))
}

fn certificate() -> Check {
    let spec =
        CompositionSpec::new(catalog_link("borromean").unwrap(), catalog_solid_torus("bing_double").unwrap()).unwrap();
    let cert = essentiality_certificate(&spec).map_err(|e| e.to_string())?;
    let one = 1u32.into();
    ensure(cert.a.magnitude() == &one, || format!("|a| = {}", cert.a))?;
    ensure(cert.b.magnitude() == &one, || format!("|b| = {}", cert.b))?;
    ensure(cert.c == &cert.a * &cert.b && cert.c.magnitude() == &one, || format!("c = {}", cert.c))?;

    let ball = SolidTorusLink::from_words(&[("z1", "z2"), ("z2", "z1")], "").unwrap();
    let in_ball = CompositionSpec::new(LinkModel::unlink(1).unwrap(), ball).unwrap();
    let composed = compose(&in_ball).unwrap();
    ensure(!composed.is_homotopically_trivial(), || "composed model is trivial".into())?;
    ensure(in_ball.lhat().is_homotopically_trivial(), || "ambient knot is not trivial".into())?;
    ensure(essentiality_certificate(&in_ball).is_err(), || "certificate was not refused".into())?;
    Ok(format!("a={} b={} c={}; hopf-in-ball refused", cert.a, cert.b, cert.c))
}

fn mu(l: &LinkModel, idx: &str) -> String {
    l.mu_bar(&idx.parse::<MuIndex>().unwrap()).unwrap().magnitude().to_string()
}

fn distinct_indices(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.iter().map(|i| i + 1).collect());
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                extend(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut out);
    out
}

fn link_invariants() -> Check {
    let hopf = catalog_link("hopf").unwrap();
    let borromean = catalog_link("borromean").unwrap();
    ensure(mu(&hopf, "2,1") == "1", || "mu(hopf; 2,1)".into())?;
    ensure(mu(&borromean, "2,3,1") == "1", || "mu(borromean; 2,3,1)".into())?;
    let mut count = 0;
    for n in 1..=4 {
        let u = LinkModel::unlink(n).unwrap();
        for idx in distinct_indices(n) {
            let v = u.mu_bar(&MuIndex::from_one_based(&idx).unwrap()).unwrap();
            ensure(v == 0.into(), || format!("unlink({n}) index {idx:?} gives {v}"))?;
            count += 1;
        }
    }
    let wh = catalog_link("whitehead_pattern").unwrap();
    ensure(wh.is_homotopically_trivial(), || "whitehead pattern reported essential".into())?;
    Ok(format!("hopf and borromean |mu| = 1, {count} unlink indices vanish, whitehead trivial"))
}

fn determinism() -> Check {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_mgk"))
            .args(["verify", "all", "--seed", "7", "--json"])
            .env_remove("MGK_MAX_GENERATORS")
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ring and group axioms", ring_and_group_axioms),
        ("milnor relations", milnor_relations),
        ("nilpotency", nilpotency),
        ("split exact sequence", split_sequence),
        ("grope boundary degree", grope_degree),
        ("grope duality", grope_duality),
        ("sigma is right multiplication", sigma_right_multiplication),
        ("essentiality certificate", certificate),
        ("link invariants", link_invariants),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
