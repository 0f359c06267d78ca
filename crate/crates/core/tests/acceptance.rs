//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use nilspec::exactlin::{tensor_det_identity, ExtNat, IntMatrix};
use nilspec::graph::Graph;
use nilspec::morphism::{companion_automorphism, endo_from_matrix, induce_phi2, q_poly, r_poly};
use nilspec::nilgroup::{GroupElement, Presentation};
use nilspec::oracle::{count_twisted_classes, FiniteQuotient};
use nilspec::spectra::catalog::{
    four_vertex_catalog, small_catalog, CatalogEntry, FOUR_VERTEX_BUDGET,
};
use nilspec::spectra::form::min_member;
use nilspec::spectra::search::{
    fast_reidemeister, respects_filtration, verify_witness, DEFAULT_BUDGET,
};
use nilspec::spectra::{
    automorphism_matrices, classification_for, detect_r_infinity, fold_automorphisms,
    spectrum_by_decomposition, AutMatrix, Classification, SearchError, SearchOptions,
};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Enumerated {
    witnesses: BTreeMap<BigUint, AutMatrix>,
    automorphisms: u64,
    filtration_violations: u64,
}

fn merge(mut a: Enumerated, b: Enumerated) -> Enumerated {
    for (v, m) in b.witnesses {
        keep_smallest(&mut a.witnesses, v, m);
    }
    a.automorphisms += b.automorphisms;
    a.filtration_violations += b.filtration_violations;
    a
}

fn keep_smallest(map: &mut BTreeMap<BigUint, AutMatrix>, v: BigUint, m: AutMatrix) {
    match map.get(&v) {
        Some(old) if *old <= m => {}
        _ => {
            map.insert(v, m);
        }
    }
}

/// Search that also checks the degree filtration on every automorphism.
fn enumerate(g: &Graph, bound: i64, budget: u64) -> Result<Enumerated, SearchError> {
    let opts = SearchOptions::new(bound).with_budget(Some(budget));
    fold_automorphisms(
        g,
        &opts,
        Enumerated::default,
        |acc, m| {
            acc.automorphisms += 1;
            if !respects_filtration(g, m) {
                acc.filtration_violations += 1;
            }
            if let ExtNat::Finite(v) = fast_reidemeister(g, m) {
                keep_smallest(&mut acc.witnesses, v, m.clone());
            }
        },
        merge,
    )
    .map(|(acc, _)| acc)
}

struct Checked {
    entry: CatalogEntry,
    bound: i64,
    found: Enumerated,
    outside: Vec<BigUint>,
    unsound: usize,
}

fn check_entry(entry: CatalogEntry, found: Enumerated, bound: i64) -> Checked {
    let g = entry.graph();
    let outside = found
        .witnesses
        .keys()
        .filter(|v| {
            !entry
                .form
                .contains(&ExtNat::Finite((*v).clone()))
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    let unsound = found
        .witnesses
        .iter()
        .filter(|(v, m)| verify_witness(&g, m) != Some(ExtNat::Finite((*v).clone())))
        .count();
    Checked {
        entry,
        bound,
        found,
        outside,
        unsound,
    }
}

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line {
        pass,
        detail: detail.into(),
    }
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn record(&mut self, id: u32, title: &str, limit_s: f64, start: Instant, l: Line) {
        let secs = start.elapsed().as_secs_f64();
        let pass = l.pass && secs < limit_s;
        if !pass {
            self.failures += 1;
        }
        println!(
            "{} criterion {id}: {title}: {} ({secs:.2} s, limit {limit_s} s)",
            if pass { "PASS" } else { "FAIL" },
            l.detail
        );
    }
}

fn summarize(checks: &[Checked]) -> (usize, usize, usize) {
    let values = checks.iter().map(|c| c.found.witnesses.len()).sum();
    let outside = checks.iter().map(|c| c.outside.len()).sum();
    let unsound = checks.iter().map(|c| c.unsound).sum();
    (values, outside, unsound)
}

fn containment_detail(checks: &[Checked]) -> (bool, String) {
    let (values, outside, unsound) = summarize(checks);
    let mut detail = format!(
        "{} classes, {values} distinct values, {outside} outside the form, {unsound} unsound witnesses",
        checks.len()
    );
    for c in checks.iter().filter(|c| !c.outside.is_empty()) {
        let vs: Vec<String> = c.outside.iter().map(|v| v.to_string()).collect();
        detail += &format!("; {} B={} outside: {}", c.entry.name, c.bound, vs.join(","));
    }
    (outside == 0 && unsound == 0, detail)
}

fn criterion_1(gate: &mut Gate) -> Vec<Checked> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut err = None;
    for e in small_catalog() {
        match enumerate(&e.graph(), 3, DEFAULT_BUDGET) {
            Ok(found) => checks.push(check_entry(e, found, 3)),
            Err(x) => err = Some(format!("{}: {x}", e.name)),
        }
    }
    let (ok, mut detail) = containment_detail(&checks);
    if let Some(x) = &err {
        detail += &format!("; search error {x}");
    }
    gate.record(
        1,
        "spectra of graphs on at most 3 vertices at B=3",
        30.0,
        start,
        line(ok && err.is_none() && checks.len() == 7, detail),
    );
    checks
}

fn criterion_2(gate: &mut Gate) -> Vec<Checked> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut err = None;
    for e in four_vertex_catalog() {
        let g = e.graph();
        let found = match enumerate(&g, 2, FOUR_VERTEX_BUDGET) {
            Ok(f) => Ok((2, f)),
            Err(SearchError::BudgetExceeded { .. }) => {
                enumerate(&g, 1, DEFAULT_BUDGET).map(|f| (1, f))
            }
            Err(x) => Err(x),
        };
        match found {
            Ok((b, f)) => checks.push(check_entry(e, f, b)),
            Err(x) => err = Some(format!("{}: {x}", e.name)),
        }
    }
    let (ok, mut detail) = containment_detail(&checks);
    let infinite_rows: Vec<&Checked> = checks.iter().filter(|c| c.entry.is_r_infinity()).collect();
    let empty = infinite_rows.iter().all(|c| c.found.witnesses.is_empty());
    let bounds: Vec<String> = checks
        .iter()
        .map(|c| format!("{}:B{}", c.entry.name, c.bound))
        .collect();
    detail += &format!(
        "; {} R-infinity rows with {} finite values; bounds {}",
        infinite_rows.len(),
        infinite_rows
            .iter()
            .map(|c| c.found.witnesses.len())
            .sum::<usize>(),
        bounds.join(" ")
    );
    if let Some(x) = &err {
        detail += &format!("; search error {x}");
    }
    gate.record(
        2,
        "spectra of graphs on 4 vertices at B=2 under 1e8 nodes, else B=1",
        600.0,
        start,
        line(
            ok && empty && err.is_none() && checks.len() == 11 && infinite_rows.len() == 2,
            detail,
        ),
    );
    checks
}

fn criterion_3(gate: &mut Gate, checks: &[Checked]) {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, value) in [("2K1", 2u64), ("P3", 4), ("C4", 2), ("K2+K1", 2)] {
        let Some(c) = checks.iter().find(|c| c.entry.name == name) else {
            ok = false;
            parts.push(format!("{name}: not searched"));
            continue;
        };
        let minimal = min_member(&c.entry.form, 1000) == Some(value);
        let exact = c
            .found
            .witnesses
            .get(&BigUint::from(value))
            .map(|m| verify_witness(&c.entry.graph(), m) == Some(ExtNat::from(value)));
        let good = minimal && exact == Some(true);
        ok &= good;
        let shown = c
            .found
            .witnesses
            .get(&BigUint::from(value))
            .map_or("none".to_string(), |m| serde_json::to_string(m).unwrap());
        parts.push(format!(
            "{name} R={value} via {shown}{}",
            if good { "" } else { " (failed)" }
        ));
    }
    gate.record(
        3,
        "witnesses for the smallest members",
        5.0,
        start,
        line(ok, parts.join("; ")),
    );
}

fn criterion_4(gate: &mut Gate) {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 4..=5 {
        let p = Presentation::new(Graph::complete_plus_isolated(n));
        for k in 1..=5i64 {
            for (poly, want) in [
                (q_poly(n, k), 2 * (2 * k as u64 - 1)),
                (r_poly(n, k), 8 * k as u64),
            ] {
                count += 1;
                let got = poly
                    .and_then(|c| companion_automorphism(&p, &c))
                    .and_then(|e| e.reidemeister_number())
                    .map(|r| r.r);
                if got != Ok(ExtNat::from(want)) {
                    bad.push(format!("n={n} k={k} want {want} got {got:?}"));
                }
            }
        }
    }
    gate.record(
        4,
        "companion construction on K_{n-1} + point",
        1.0,
        start,
        line(
            bad.is_empty(),
            format!("{count} automorphisms, mismatches: [{}]", bad.join("; ")),
        ),
    );
}

fn random_gl2(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    loop {
        let m: [[i64; 2]; 2] = [
            [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
            [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
        ];
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() == 1 {
            return m;
        }
    }
}

fn criterion_5(gate: &mut Gate) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    let mut bad = 0;
    for _ in 0..1000 {
        let (a, b) = (random_gl2(&mut rng), random_gl2(&mut rng));
        let (ma, mb) = (IntMatrix::from_i64(&a), IntMatrix::from_i64(&b));
        let kron = ma.kronecker(&mb);
        let (ta, tb) = (ma.trace().unwrap(), mb.trace().unwrap());
        let da = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let db = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        for eps in [1i64, -1] {
            let direct = kron
                .scale(&BigInt::from(eps))
                .identity_minus()
                .unwrap()
                .det()
                .unwrap();
            let closed = tensor_det_identity(&ta, &tb, da, db, eps).unwrap();
            checked += 1;
            if direct != closed {
                bad += 1;
            }
        }
    }
    gate.record(
        5,
        "4x4 tensor determinant identity",
        1.0,
        start,
        line(bad == 0, format!("{checked} cases, {bad} mismatches")),
    );
}

fn criterion_6(gate: &mut Gate, small: &[Checked]) {
    let start = Instant::now();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for c in small {
        let p = Presentation::new(c.entry.graph());
        let mut taken = 0;
        for (v, m) in &c.found.witnesses {
            if taken == 6 {
                break;
            }
            let e = endo_from_matrix(&p, &m.to_int_matrix()).unwrap();
            let r = e.reidemeister_number().unwrap();
            let (ExtNat::Finite(r1), ExtNat::Finite(r2)) = (&r.r1, &r.r2) else {
                continue;
            };
            let base = (r1 * r2).to_u64().unwrap();
            let moduli = [2 * base, 4 * base];
            let Ok(quotients) = moduli
                .iter()
                .map(|&m| FiniteQuotient::new(p.clone(), m))
                .collect::<Result<Vec<_>, _>>()
            else {
                continue;
            };
            taken += 1;
            pairs += 1;
            for q in quotients {
                let count = count_twisted_classes(&q, &e).unwrap();
                if ExtNat::from(count) != r.r || BigUint::from(count) != *v {
                    bad.push(format!("{} R={v} m={}: {count}", c.entry.name, q.modulus()));
                }
            }
        }
    }
    gate.record(
        6,
        "twisted class counts in finite quotients",
        60.0,
        start,
        line(
            pairs >= 20 && bad.is_empty(),
            format!(
                "{pairs} pairs at m = 2R and 4R, mismatches: [{}]",
                bad.join("; ")
            ),
        ),
    );
}

fn criterion_7(gate: &mut Gate) {
    let start = Instant::now();
    let graphs = [
        ("P3+K1", Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()),
        ("C5", Graph::cycle(5)),
        ("C6", Graph::cycle(6)),
        ("P4", Graph::path(4)),
        ("P5", Graph::path(5)),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in graphs {
        let rule = detect_r_infinity(&g);
        let found = enumerate(&g, 1, DEFAULT_BUDGET);
        let good = rule.is_some() && found.as_ref().is_ok_and(|f| f.witnesses.is_empty());
        ok &= good;
        parts.push(match (&rule, &found) {
            (Some(r), Ok(f)) => format!(
                "{name}: {r}, {} automorphisms, {} finite",
                f.automorphisms,
                f.witnesses.len()
            ),
            (None, _) => format!("{name}: no rule"),
            (_, Err(x)) => format!("{name}: {x}"),
        });
    }
    gate.record(
        7,
        "R-infinity rules against search at B=1",
        120.0,
        start,
        line(ok, parts.join("; ")),
    );
}

fn criterion_8(gate: &mut Gate) {
    let start = Instant::now();
    let render = |g: &Graph| match spectrum_by_decomposition(g) {
        Classification::ClosedForm { rendered, .. } => rendered,
        other => format!("{other:?}"),
    };
    let c4 = render(&Graph::cycle(4));
    let star = render(&Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
    let mut ok = c4 == "2N0 ∪ {inf}" && star == "2(2N0-1) ∪ 8N0 ∪ {inf}";
    let mut disagreements = Vec::new();
    for e in four_vertex_catalog() {
        let Some(form) = classification_for(&e.graph()).form() else {
            disagreements.push(format!("{}: unclassified", e.name));
            continue;
        };
        for v in 1..=100 {
            if form.contains_u64(v) != e.form.contains_u64(v) {
                disagreements.push(format!("{} v={v}", e.name));
            }
        }
    }
    ok &= disagreements.is_empty();
    gate.record(
        8,
        "decomposition renderings and membership",
        5.0,
        start,
        line(
            ok,
            format!(
                "C4 -> {c4}; star -> {star}; 11 classes x 100 values, disagreements: [{}]",
                disagreements.join("; ")
            ),
        ),
    );
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(1..=5);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_element(rng: &mut ChaCha8Rng, p: &Presentation) -> GroupElement {
    let z: Vec<i64> = (0..p.n()).map(|_| rng.gen_range(-20..=20)).collect();
    let t: Vec<i64> = (0..p.big_n()).map(|_| rng.gen_range(-50..=50)).collect();
    GroupElement::from_i64(&z, &t)
}

fn criterion_9(gate: &mut Gate, enumerated: &[&Checked]) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fails = BTreeMap::<&str, usize>::new();
    for _ in 0..500 {
        let p = Presentation::new(random_graph(&mut rng));
        let [a, b, c] = [0, 1, 2].map(|_| random_element(&mut rng, &p));
        let mul = |x: &GroupElement, y: &GroupElement| p.multiply(x, y).unwrap();
        let com = |x: &GroupElement, y: &GroupElement| p.commutator(x, y).unwrap();
        if mul(&mul(&a, &b), &c) != mul(&a, &mul(&b, &c)) {
            *fails.entry("associativity").or_default() += 1;
        }
        let inv = p.inverse(&a).unwrap();
        if !mul(&a, &inv).is_identity() || !mul(&inv, &a).is_identity() {
            *fails.entry("inverse").or_default() += 1;
        }
        if com(&mul(&a, &b), &c) != mul(&com(&a, &c), &com(&b, &c))
            || com(&a, &mul(&b, &c)) != mul(&com(&a, &b), &com(&a, &c))
        {
            *fails.entry("bilinearity").or_default() += 1;
        }
        if (0..p.big_n()).any(|l| !com(&p.y(l), &a).is_identity()) {
            *fails.entry("centrality").or_default() += 1;
        }
    }
    let pools: Vec<(Presentation, Vec<IntMatrix>)> = [
        Graph::path(3),
        Graph::complete_plus_isolated(3),
        Graph::empty(3),
        Graph::cycle(4),
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap(),
    ]
    .into_iter()
    .map(|g| {
        let mats = automorphism_matrices(&g, &SearchOptions::new(1))
            .unwrap()
            .iter()
            .map(AutMatrix::to_int_matrix)
            .collect();
        (Presentation::new(g), mats)
    })
    .collect();
    for _ in 0..200 {
        let (p, mats) = &pools[rng.gen_range(0..pools.len())];
        let a = &mats[rng.gen_range(0..mats.len())];
        let b = &mats[rng.gen_range(0..mats.len())];
        let lhs = induce_phi2(p, &a.checked_mul(b).unwrap()).unwrap();
        let rhs = induce_phi2(p, a)
            .unwrap()
            .checked_mul(&induce_phi2(p, b).unwrap())
            .unwrap();
        if lhs != rhs {
            *fails.entry("phi2 functoriality").or_default() += 1;
        }
    }
    let automorphisms: u64 = enumerated.iter().map(|c| c.found.automorphisms).sum();
    let filtration: u64 = enumerated
        .iter()
        .map(|c| c.found.filtration_violations)
        .sum();
    let failed: Vec<String> = fails.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    gate.record(
        9,
        "group law, phi2 functoriality and filtration blocks",
        30.0,
        start,
        line(
            fails.is_empty() && filtration == 0 && automorphisms > 0,
            format!(
                "500 cases per group law, 200 composable pairs, {automorphisms} automorphisms from criteria 1-2 with {filtration} filtration violations; failures: [{}]",
                failed.join(", ")
            ),
        ),
    );
}

fn main() -> ExitCode {
    let mut gate = Gate { failures: 0 };
    let small = criterion_1(&mut gate);
    let four = criterion_2(&mut gate);
    let both: Vec<Checked> = small.into_iter().chain(four).collect();
    criterion_3(&mut gate, &both);
    criterion_4(&mut gate);
    criterion_5(&mut gate);
    criterion_6(&mut gate, &both[..7]);
    criterion_7(&mut gate);
    criterion_8(&mut gate);
    criterion_9(&mut gate, &both.iter().collect::<Vec<_>>());
    println!("acceptance: {} of 9 criteria passed", 9 - gate.failures);
    if gate.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
