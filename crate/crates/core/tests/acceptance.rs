//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flatrank::combin::masks_of_weight;
use flatrank::extalg::{ExtVector, Vector};
use flatrank::field::FieldDescriptor;
use flatrank::formats::{to_json, ConfigurationDocument, HypergraphDocument, SetFamilyDocument};
use flatrank::fw::{
    badbox_k, config_violation, fw_flattening_bound, fw_size_bound, fw_tensor, is_config_satisfying,
    sample_badbox_family, verify_badbox_free, BadboxSample, Configuration, Distinctness,
};
use flatrank::rainbow::{find_rainbow_matching, rainbow_bound, rainbow_entries, rainbow_field, rainbow_tensor};
use flatrank::rng::Rng;
use flatrank::search::{
    enumerate_cross_oddtowns, exhaustive_min_mfrank, mfrank_lower_bound, random_configuration, random_hypergraph,
    random_satisfying_family, random_semidiagonal_sweep, sum_frank_lower_bound, Reduction,
};
use flatrank::setfam::{cross_oddtown_bound, oddtown_rank1_certificate, oddtown_tensor, reconstruct, TupleFamily};
use flatrank::tensor::Tensor;
use serde_json::{json, Value};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    failures: Vec<String>,
    summary: String,
    report: Value,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), summary: String::new(), report: Value::Null }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn run(id: u32, name: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> (bool, Value) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let pass = outcome.failures.is_empty() && in_time;
    println!(
        "{} {id}. {name}: {} [{:.2}s / {}s]",
        if pass { "PASS" } else { "FAIL" },
        outcome.summary,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for f in &outcome.failures {
        println!("    {f}");
    }
    if !in_time {
        println!("    over the time budget");
    }
    (pass, outcome.report)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

fn partition_tightness() -> Outcome {
    let mut out = Outcome::new();
    let mut cases = 0;
    for field in [FieldDescriptor::gf2(), FieldDescriptor::prime(3).unwrap()] {
        for a in 1..=8 {
            for d in 2..=4 {
                let t = Tensor::partition_construction(a, d, field).unwrap();
                let expected = a.div_ceil(d - 1);
                let ranks = t.flattening_ranks();
                out.check(t.is_semi_diagonal().unwrap(), || format!("a={a} d={d} {field}: not semi-diagonal"));
                out.check(ranks.iter().all(|&r| r == expected), || {
                    format!("a={a} d={d} {field}: ranks {ranks:?}, expected {expected}")
                });
                cases += 1;
            }
        }
    }
    out.summary = format!("{cases} constructions, every flattening rank equals ceil(a/(d-1))");
    out
}

fn exhaustive_3_3() -> Outcome {
    let mut out = Outcome::new();
    let report = exhaustive_min_mfrank(3, 3).unwrap();
    out.check(report.examined == 1 << 18, || format!("examined {}", report.examined));
    out.check(report.min_mfrank == Some(2), || format!("min mfrank {:?}", report.min_mfrank));
    out.check(report.min_sum_frank.is_some_and(|s| s >= 5), || format!("min sum {:?}", report.min_sum_frank));
    out.check(report.violations == 0, || format!("{} violations", report.violations));
    for w in &report.witnesses {
        let t = w.tensor.to_tensor().unwrap();
        out.check(t.is_semi_diagonal().unwrap() && t.flattening_ranks() == w.flattening_ranks, || {
            format!("witness {} does not reproduce its ranks", w.index)
        });
    }
    out.summary =
        format!("{} tensors, min mfrank {:?}, min sum {:?}", report.examined, report.min_mfrank, report.min_sum_frank);
    out
}

fn random_semidiagonal_runs(seed: u64) -> Outcome {
    let mut out = Outcome::new();
    let mut reports = Vec::new();
    let mut parts = Vec::new();
    for (i, (a, d)) in [(4, 3), (5, 3), (4, 4)].into_iter().enumerate() {
        let report = random_semidiagonal_sweep(a, d, FieldDescriptor::gf2(), 100_000, seed + i as u64).unwrap();
        let bound = mfrank_lower_bound(a, d);
        out.check(report.examined == 100_000, || format!("({a},{d}) examined {}", report.examined));
        out.check(report.violations == 0, || format!("({a},{d}): {} violations", report.violations));
        out.check(report.min_mfrank.is_some_and(|m| m >= bound), || {
            format!("({a},{d}) min mfrank {:?} < {bound}", report.min_mfrank)
        });
        out.check(report.min_sum_frank.is_some_and(|m| m >= sum_frank_lower_bound(a, d)), || {
            format!("({a},{d}) min sum {:?}", report.min_sum_frank)
        });
        parts.push(format!("({a},{d}) min {:?}", report.min_mfrank));
        reports.push(serde_json::to_value(&report).unwrap());
    }
    out.summary = format!("3 x 10^5 samples, {}", parts.join(", "));
    out.report = Value::Array(reports);
    out
}

fn check_oddtown(out: &mut Outcome, family: &TupleFamily) {
    let (n, d, m) = (family.n(), family.d(), family.len());
    out.check(family.is_cross_oddtown(), || format!("n={n} d={d}: enumerated family fails the hypothesis"));
    out.check(m <= cross_oddtown_bound(n, d), || format!("n={n} d={d}: size {m} over the bound"));
    if m == 0 {
        return;
    }
    let tensor = oddtown_tensor(family).unwrap();
    let terms = oddtown_rank1_certificate(family);
    let rebuilt = reconstruct(&terms, m, d, FieldDescriptor::gf2()).unwrap();
    let mfrank = tensor.max_flattening_rank();
    out.check(rebuilt == tensor, || format!("n={n} d={d}: certificate does not reconstruct {:?}", family.members()));
    out.check(terms.len() <= n && mfrank <= n, || format!("n={n} d={d}: {} terms, mfrank {mfrank}", terms.len()));
    out.check(tensor.is_semi_diagonal().unwrap(), || format!("n={n} d={d}: tensor not semi-diagonal"));
    out.check(mfrank >= m.div_ceil(d - 1), || format!("n={n} d={d}: mfrank {mfrank} below ceil({m}/(d-1))"));
}

fn oddtown_chain() -> Outcome {
    let mut out = Outcome::new();
    let mut classes = 0u64;
    let mut families = 0u64;
    for d in 2..=3 {
        for n in 1..=4 {
            // one representative per isomorphism class where the full walk is too slow
            let reduction = if n * d >= 12 { Reduction::Isomorphism } else { Reduction::None };
            let census =
                enumerate_cross_oddtowns(n, d, 6, reduction, |family, _| check_oddtown(&mut out, family)).unwrap();
            classes += census.visited.iter().sum::<u64>();
            families += census.families.iter().sum::<u64>();
            out.check(census.largest <= cross_oddtown_bound(n, d), || {
                format!("n={n} d={d}: largest {}", census.largest)
            });
        }
        for n in 1..=4 {
            let family = TupleFamily::repeated_singletons(n, d, d - 1).unwrap();
            out.check(family.len() == (d - 1) * n, || {
                format!("repeated singletons n={n} d={d} have size {}", family.len())
            });
            check_oddtown(&mut out, &family);
        }
    }
    out.summary =
        format!("{families} families ({classes} visited up to isomorphism), repeated singletons attain 2n at d=3");
    out
}

fn fw_chain(seed: u64) -> Outcome {
    let mut out = Outcome::new();
    let mut reports = Vec::new();
    let mut largest = 0;
    let mut empty = 0;
    for i in 0..200 {
        let mut rng = Rng::derived(seed, i);
        let n = 1 + rng.below_usize(6);
        let k = 2 + rng.below_usize(2);
        let p = 2 + rng.below(2);
        // L covering every residue leaves only the empty family
        let cfg = random_configuration(k, p, 2.min(p as usize - 1), &mut rng).unwrap();
        let family = random_satisfying_family(n, &cfg, &mut rng).unwrap();
        out.check(is_config_satisfying(&family, &cfg), || format!("instance {i}: family not satisfying"));
        if family.is_empty() {
            empty += 1;
            reports.push(Value::Null);
            continue;
        }
        let tensor = fw_tensor(&family, &cfg).unwrap();
        out.check(tensor.is_semi_diagonal().unwrap(), || format!("instance {i}: tensor not semi-diagonal"));
        let ranks = tensor.flattening_ranks();
        for (j, &r) in ranks.iter().enumerate() {
            let cap = fw_flattening_bound(&cfg, n, j).unwrap();
            out.check(r as u64 <= cap, || format!("instance {i}: frank_{j} = {r} > {cap}"));
        }
        let delta_l = cfg.max_degree() * cfg.residues().len();
        let size_cap = (k as u64 - 1) * (0..=delta_l as u64).map(|s| binomial(n as u64, s)).sum::<u64>();
        out.check(fw_size_bound(&cfg, n) == size_cap, || {
            format!("instance {i}: size bound {}", fw_size_bound(&cfg, n))
        });
        out.check(family.len() as u64 <= size_cap, || format!("instance {i}: |F| = {} > {size_cap}", family.len()));
        largest = largest.max(family.len());
        reports.push(json!({
            "configuration": ConfigurationDocument::from_configuration(&cfg),
            "family": SetFamilyDocument::from_family(&family),
            "flattening_ranks": ranks,
            "size_bound": size_cap,
        }));
    }
    out.summary = format!("200 instances, largest family {largest}, {empty} empty");
    out.report = Value::Array(reports);
    out
}

fn badbox(t: usize, s: usize, seed: u64) -> Outcome {
    let mut out = Outcome::new();
    let target = 2f64.powf(((t - 1) * s) as f64 / 4.0).ceil() as usize;
    let k = badbox_k(t).unwrap();
    out.check(k == (1usize << (t + 1)) / (t - 1), || format!("k = {k}"));
    match sample_badbox_family(t, s, seed) {
        Ok(BadboxSample { family, attempts, .. }) => {
            out.check(family.len() == target, || format!("size {} != {target}", family.len()));
            out.check(attempts <= 1000, || format!("{attempts} attempts"));
            out.check(verify_badbox_free(&family, k), || "sample contains a bad box".into());
            let sets = family.to_set_family().unwrap();
            let cfg = Configuration::complete_graph(k, 2, vec![0]).unwrap();
            out.check(is_config_satisfying(&sets, &cfg), || "not (C,L)-satisfying".into());
            out.check(config_violation(&sets, &cfg, Distinctness::Positions).is_none(), || {
                "violation among repeated members".into()
            });
            out.summary = format!("size {target}, k = {k}, found after {attempts} attempts");
            out.report = json!({ "t": t, "s": s, "attempts": attempts, "members": sets.members() });
        }
        Err(e) => out.check(false, || format!("sampler failed: {e}")),
    }
    out
}

fn disjoint(masks: &[u64]) -> bool {
    let mut used = 0;
    masks.iter().all(|&m| {
        let ok = used & m == 0;
        used |= m;
        ok
    })
}

fn rainbow_chain(seed: u64) -> Outcome {
    let mut out = Outcome::new();
    let mut reports = Vec::new();
    let mut chains = 0;
    for i in 0..500 {
        let mut rng = Rng::derived(seed, i);
        let r = 1 + rng.below_usize(3);
        let t = 1 + rng.below_usize(3);
        let vertices = r * t + rng.below_usize(15 - r * t + 1);
        let z = 1 + rng.below_usize(12);
        let h = random_hypergraph(vertices, r, t, z, &mut rng).unwrap();
        let field = rainbow_field(vertices).unwrap();
        let entries = rainbow_entries(&h, field).unwrap();
        let mut index = vec![0; t];
        for (linear, &v) in entries.iter().enumerate() {
            let mut rest = linear;
            for slot in (0..t).rev() {
                index[slot] = rest % z;
                rest /= z;
            }
            let edges: Vec<u64> = index.iter().enumerate().map(|(slot, &c)| h.edge(c, slot)).collect();
            out.check((v != 0) == disjoint(&edges), || format!("instance {i}: entry {index:?} = {v}"));
        }
        let matching = find_rainbow_matching(&h, t);
        if let Some(m) = &matching {
            let edges: Vec<u64> = m.iter().map(|&(c, e)| h.edge(c, e)).collect();
            let mut colors: Vec<usize> = m.iter().map(|&(c, _)| c).collect();
            colors.sort_unstable();
            colors.dedup();
            out.check(disjoint(&edges) && colors.len() == t, || format!("instance {i}: bad matching {m:?}"));
        } else {
            chains += 1;
            let tensor = rainbow_tensor(&h, field).unwrap();
            let mfrank = tensor.max_flattening_rank() as u64;
            let t1 = t as u64 - 1;
            let cap = (t as u64 - 1) * binomial((r * t) as u64, r as u64);
            out.check(rainbow_bound(r, t) == cap, || format!("instance {i}: bound {}", rainbow_bound(r, t)));
            out.check(tensor.is_semi_diagonal().unwrap(), || format!("instance {i}: not semi-diagonal"));
            out.check(z as u64 <= t1 * mfrank && t1 * mfrank <= cap, || {
                format!("instance {i}: z={z}, (t-1) mfrank = {}, cap {cap}", t1 * mfrank)
            });
        }
        reports.push(json!({
            "hypergraph": HypergraphDocument::from_hypergraph(&h),
            "matching": matching,
            "nonzero": entries.iter().filter(|&&v| v != 0).count(),
        }));
    }
    out.summary = format!("500 instances, {chains} without a rainbow matching");
    out.report = Value::Array(reports);
    out
}

fn random_element(n: usize, grade: usize, field: FieldDescriptor, rng: &mut Rng) -> ExtVector {
    let coords: Vec<(u64, u64)> =
        masks_of_weight(n as u32, grade as u32).map(|m| (m, rng.below(field.order()))).collect();
    ExtVector::from_coords(n, grade, field, coords).unwrap()
}

fn random_vector(n: usize, field: FieldDescriptor, rng: &mut Rng) -> Vector {
    Vector::new(field, (0..n).map(|_| rng.below(field.order())).collect()).unwrap()
}

/// Permanent, which equals the determinant in characteristic 2.
fn leibniz(field: FieldDescriptor, rows: &[Vec<u64>]) -> u64 {
    fn go(field: FieldDescriptor, rows: &[Vec<u64>], row: usize, used: &mut Vec<bool>) -> u64 {
        if row == rows.len() {
            return 1;
        }
        let mut acc = 0;
        for col in 0..rows.len() {
            if !used[col] {
                used[col] = true;
                acc = field.add(acc, field.mul(rows[row][col], go(field, rows, row + 1, used)));
                used[col] = false;
            }
        }
        acc
    }
    go(field, rows, 0, &mut vec![false; rows.len()])
}

fn extalg_axioms(seed: u64) -> Outcome {
    let mut out = Outcome::new();
    let mut digest = Vec::new();
    for i in 0..10_000u64 {
        let mut rng = Rng::derived(seed, i);
        let field = FieldDescriptor::binary(if i % 2 == 0 { 3 } else { 8 }).unwrap();
        let n = 2 + rng.below_usize(5);
        let g = [rng.below_usize(n + 1), rng.below_usize(n + 1), rng.below_usize(n + 1)];
        let [u, v, w] = g.map(|grade| random_element(n, grade, field, &mut rng));
        let u2 = random_element(n, g[0], field, &mut rng);
        let lambda = rng.below(field.order());

        let uv = u.wedge(&v).unwrap();
        out.check(uv.wedge(&w).unwrap() == u.wedge(&v.wedge(&w).unwrap()).unwrap(), || {
            format!("triple {i}: associativity")
        });
        out.check(uv == v.wedge(&u).unwrap(), || format!("triple {i}: commutativity"));
        out.check(
            u.add(&u2).unwrap().wedge(&v).unwrap() == uv.add(&u2.wedge(&v).unwrap()).unwrap()
                && u.scale(lambda).wedge(&v).unwrap() == uv.scale(lambda)
                && u.wedge(&v.scale(lambda)).unwrap() == uv.scale(lambda),
            || format!("triple {i}: bilinearity"),
        );
        out.check(uv.dimension() == binomial(n as u64, (g[0] + g[1]) as u64), || format!("triple {i}: dimension"));

        let x = random_vector(n, field, &mut rng);
        let xe = ExtVector::from_vector(&x).unwrap();
        out.check(xe.wedge(&xe).unwrap().is_zero(), || format!("triple {i}: v ^ v != 0"));

        let k = 1 + rng.below_usize(n.min(4));
        let mut vectors: Vec<Vector> = (0..k).map(|_| random_vector(n, field, &mut rng)).collect();
        let wedge = ExtVector::wedge_of_vectors(&vectors).unwrap();
        for subset in masks_of_weight(n as u32, k as u32) {
            let cols: Vec<usize> = (0..n).filter(|&c| subset >> c & 1 == 1).collect();
            let minor: Vec<Vec<u64>> = vectors.iter().map(|v| cols.iter().map(|&c| v.coords()[c]).collect()).collect();
            out.check(wedge.coord(subset) == leibniz(field, &minor), || format!("triple {i}: minor at {subset:#b}"));
        }
        if k >= 2 {
            let (a, b) = (rng.below(field.order()), rng.below(field.order()));
            let combo: Vec<u64> = (0..n)
                .map(|c| field.add(field.mul(a, vectors[0].coords()[c]), field.mul(b, vectors[k - 2].coords()[c])))
                .collect();
            vectors[k - 1] = Vector::new(field, combo).unwrap();
            out.check(ExtVector::wedge_of_vectors(&vectors).unwrap().is_zero(), || {
                format!("triple {i}: dependent wedge")
            });
        }
        digest.push(uv.coords().fold(0u64, |acc, (m, c)| acc.rotate_left(7) ^ m ^ c << 32));
    }
    out.summary = "10^4 triples over GF(8) and GF(256)".into();
    out.report = json!(digest);
    out
}

fn main() -> ExitCode {
    let mut all = true;
    let mut randomized = Vec::new();
    let secs = Duration::from_secs;

    all &= run(1, "partition construction is tight", secs(5), partition_tightness).0;
    all &= run(2, "exhaustive |A|=3, d=3 over GF(2)", secs(60), exhaustive_3_3).0;
    let (ok, report) = run(3, "random semi-diagonal tensors", secs(120), || random_semidiagonal_runs(SEED));
    all &= ok;
    randomized.push(report);
    all &= run(4, "cross-Oddtown chain", secs(60), oddtown_chain).0;
    let (ok, report) = run(5, "Frankl-Wilson chain", secs(120), || fw_chain(SEED));
    all &= ok;
    randomized.push(report);
    let mut badbox_reports = Vec::new();
    for (t, s) in [(3, 1), (3, 2), (5, 2)] {
        let (ok, report) = run(6, &format!("bad-box sampler at t={t}, s={s}"), secs(60), || badbox(t, s, SEED));
        all &= ok;
        badbox_reports.push(report);
    }
    randomized.push(Value::Array(badbox_reports));
    let (ok, report) = run(7, "rainbow chain", secs(180), || rainbow_chain(SEED));
    all &= ok;
    randomized.push(report);
    let (ok, report) = run(8, "exterior algebra axioms", secs(60), || extalg_axioms(SEED));
    all &= ok;
    randomized.push(report);

    all &= run(9, "determinism under a fixed seed", secs(600), || {
        let mut out = Outcome::new();
        let again = [
            random_semidiagonal_runs(SEED).report,
            fw_chain(SEED).report,
            Value::Array([(3, 1), (3, 2), (5, 2)].map(|(t, s)| badbox(t, s, SEED).report).to_vec()),
            rainbow_chain(SEED).report,
            extalg_axioms(SEED).report,
        ];
        for (name, (first, second)) in
            ["random", "fw", "badbox", "rainbow", "extalg"].iter().zip(randomized.iter().zip(&again))
        {
            out.check(to_json(first) == to_json(second), || format!("{name} reports differ"));
        }
        out.summary = "5 randomized reports byte-identical on rerun".into();
        out
    })
    .0;

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
