//! Acceptance run: one pass/fail line per criterion, exit status 1 if any
//! criterion fails. Run with `cargo test --release --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use torelli::random::DEFAULT_SEED;
use torelli::suite::{self, Check};
use torelli::witness;

struct Criterion {
    number: usize,
    name: &'static str,
    checks: Vec<Check>,
}

fn criteria() -> Vec<Criterion> {
    let seed = DEFAULT_SEED;
    let mut out = Vec::new();
    let mut add = |number, name, checks: Vec<Check>| out.push(Criterion { number, name, checks });

    add(1, "perp cube meets i(H) in span{i(x)}, pairs give 0", [2, 3].iter().flat_map(|&g| suite::lemma31(g, seed, 50)).collect());
    add(2, "quotient maps injective for g' < g <= 4", suite::lemma32(4));
    add(3, "(wedge^3 H)/H free of rank 14 at g=3", suite::quotient_rank(3));
    add(4, "generator certificates and relation suite", [2, 3].iter().flat_map(|&g| suite::generator_certificates(g)).collect());
    add(5, "tau vanishes on separating twists, additive", [2, 3].iter().flat_map(|&g| suite::tau_basics(g, seed, 20, 100)).collect());
    let mut bp: Vec<Check> = [2, 3].iter().flat_map(|&g| suite::bp_divisibility(g, 3)).collect();
    bp.extend(suite::bp_divisibility(2, 4));
    bp.extend(suite::calibration());
    add(6, "bp divisibility and calibrated formula", bp);
    add(7, "sip wedge identity", suite::sip_remark(3, seed, 50));
    add(8, "tau equivariance", [2, 3].iter().flat_map(|&g| suite::equivariance(g, seed, 30)).collect());
    let mut pres = match witness::curated(3) {
        Ok(w) => suite::presentation(3, Some(&w), None),
        Err(e) => suite::presentation(3, None, None)
            .into_iter()
            .chain([Check {
                id: "presentation.witnesses.g3".into(),
                passed: false,
                detail: e.to_string(),
                elapsed: Default::default(),
                internal: true,
            }])
            .collect(),
    };
    pres.extend(suite::synthesis_minimality(2, 3));
    pres.extend(suite::conj_fixed(3));
    add(9, "presentation relations at g=3", pres);
    add(10, "double lantern torsion", suite::lantern(3));
    add(11, "closed tau ignores the boundary twist", suite::closed_well_defined(2, seed, 10));
    out
}

fn main() -> ExitCode {
    let start = Instant::now();
    let all = criteria();
    let mut failed = 0;
    for c in &all {
        let ok = !c.checks.is_empty() && c.checks.iter().all(|k| k.passed);
        let ms: u128 = c.checks.iter().map(|k| k.elapsed.as_millis()).sum();
        println!("criterion {:>2} {}: {} ({} checks, {ms} ms)", c.number, c.name, if ok { "pass" } else { "FAIL" }, c.checks.len());
        for k in c.checks.iter().filter(|k| !k.passed) {
            println!("    {k}");
        }
        failed += usize::from(!ok);
    }
    println!("acceptance: {}/{} criteria pass in {:.1} s", all.len() - failed, all.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
