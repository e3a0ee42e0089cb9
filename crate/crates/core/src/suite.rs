//! Named verification checks shared by the command line tool and the
//! acceptance target. Each function returns one or more [`Check`]s; errors
//! raised by the engine become failing checks flagged as internal.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::exterior::{
    binomial, embedding_matrix, induced_wedge_map, lemma31_part1, lemma31_part2, lemma32_injectivity, quotient_w3,
    standard_embedding, SymplecticSpace, WedgeElement,
};
use crate::johnson::{
    calibration_witness, lantern_report, lantern_torsion_check, sip_remark_holds, Johnson, LanternConfig,
};
use crate::lattice::{invariant_factors, LatticeVector};
use crate::mcg::{boundary_twist_word, separating_twist_word, Curve, GeneratorTable};
use crate::presentation::{
    relations_comm, relations_conj, relations_h, relations_sanity, sign_resolve, w_synthesis, Relation, Verifier,
};
use crate::random::{
    random_primitive, random_separating_conjugate, random_sip_config, random_torelli_word, random_valid_pair,
    random_word, rng,
};
use crate::witness::{certify, Witnesses};

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    /// The check could not run because the engine reported an internal
    /// inconsistency.
    pub internal: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} ({} ms) {}",
            self.id,
            if self.passed { "pass" } else { "FAIL" },
            self.elapsed.as_millis(),
            self.detail
        )
    }
}

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn run(id: impl Into<String>, body: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    match out {
        Ok((passed, detail)) => Check { id: id.into(), passed, detail, elapsed, internal: false },
        Err(e) => Check { id: id.into(), passed: false, detail: format!("error: {e}"), elapsed, internal: true },
    }
}

/// `∧³(x^⊥) ∩ i(H) = span{i(x)}` on every basis vector and `samples` random
/// primitive vectors, and `∧³(⟨x, y⟩^⊥) ∩ i(H) = 0` on `samples` random
/// admissible pairs.
pub fn lemma31(genus: usize, seed: u64, samples: usize) -> Vec<Check> {
    let space = SymplecticSpace::new(genus);
    let part1 = run(format!("lemma31.part1.g{genus}"), || {
        let mut r = rng(seed);
        let mut xs: Vec<LatticeVector> = (0..space.dim()).map(|p| LatticeVector::unit(space.dim(), p)).collect();
        xs.extend((0..samples).map(|_| random_primitive(&mut r, space, 3)));
        for x in &xs {
            lemma31_part1(space, &WedgeElement::vector(space, x.clone())?)?;
        }
        Ok((true, format!("{} vectors, intersection = span{{i(x)}}", xs.len())))
    });
    let part2 = run(format!("lemma31.part2.g{genus}"), || {
        let mut r = rng(seed ^ 0x9e37);
        for _ in 0..samples {
            let (x, y) = random_valid_pair(&mut r, space, 2);
            let inter = lemma31_part2(space, &WedgeElement::vector(space, x)?, &WedgeElement::vector(space, y)?)?;
            if inter.cols() != 0 {
                return Ok((false, "nonzero intersection".into()));
            }
        }
        Ok((true, format!("{samples} pairs, intersection rank 0")))
    });
    vec![part1, part2]
}

/// Injectivity of `(∧³H_{g'})/H_{g'} → (∧³H_g)/H_g` for all `1 ≤ g' < g ≤ max_genus`.
pub fn lemma32(max_genus: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for big in 2..=max_genus {
        for small in 1..big {
            out.push(run(format!("lemma32.g{small}.g{big}"), || {
                let ok = lemma32_injectivity(small, big)?;
                Ok((ok, if ok { "injective".into() } else { "nonzero kernel".into() }))
            }));
        }
    }
    out
}

/// Free rank of `(∧³H)/H` and the Smith form of the embedding matrix.
pub fn quotient_rank(genus: usize) -> Vec<Check> {
    let space = SymplecticSpace::new(genus);
    let expected = binomial(2 * genus, 3) - 2 * genus;
    vec![
        run(format!("quotient.rank.g{genus}"), || {
            let q = quotient_w3(space)?;
            let ok = q.free_rank() == expected && q.torsion().is_empty();
            Ok((ok, format!("free rank {} (expected {expected}), torsion {:?}", q.free_rank(), q.torsion())))
        }),
        run(format!("quotient.embedding_snf.g{genus}"), || {
            let f = invariant_factors(&embedding_matrix(space));
            let ok = f.len() == 2 * genus && f.iter().all(One::is_one);
            Ok((ok, format!("{} invariant factors, all 1: {ok}", f.len())))
        }),
    ]
}

/// Per-generator certificates and the standard relation suite.
pub fn generator_certificates(genus: usize) -> Vec<Check> {
    vec![run(format!("generators.g{genus}"), || {
        let table = GeneratorTable::new(genus)?;
        let checks = table.verify_standard_relations();
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Ok((failed.is_empty(), format!("{} certificates, failed: {failed:?}", checks.len())))
    })]
}

/// `τ` vanishes on `(T_{α₁}T_{β₁})⁶` and random conjugates of separating
/// twists, and is additive on random Torelli pairs.
pub fn tau_basics(genus: usize, seed: u64, conjugates: usize, pairs: usize) -> Vec<Check> {
    let j = match Johnson::new(genus) {
        Ok(j) => j,
        Err(e) => return vec![run(format!("tau.g{genus}"), || Err(e.into()))],
    };
    vec![
        run(format!("tau.separating.g{genus}"), || {
            let mut r = rng(seed);
            let mut words = vec![separating_twist_word(genus, 1)?];
            words.extend((0..conjugates).map(|_| random_separating_conjugate(&mut r, genus, 6)));
            for w in &words {
                if !j.tau_open(w)?.is_zero() {
                    return Ok((false, format!("τ({w}) ≠ 0")));
                }
            }
            Ok((true, format!("{} words, all τ = 0", words.len())))
        }),
        run(format!("tau.homomorphism.g{genus}"), || {
            let mut r = rng(seed ^ 0x51);
            for _ in 0..pairs {
                let u = random_torelli_word(&mut r, genus, 2, 3);
                let v = random_torelli_word(&mut r, genus, 2, 3);
                let lhs = j.tau_open(&u.mul(&v))?;
                if lhs != j.tau_open(&u)?.add(&j.tau_open(&v)?)? {
                    return Ok((false, format!("additivity fails for {u} and {v}")));
                }
            }
            Ok((true, format!("{pairs} pairs")))
        }),
    ]
}

/// Every BP candidate from the search has `τ ∧ [x] = 0`.
pub fn bp_divisibility(genus: usize, max_len: usize) -> Vec<Check> {
    vec![run(format!("bp.divisibility.g{genus}.len{max_len}"), || {
        let j = Johnson::new(genus)?;
        let cands = j.table().bp_search(max_len)?;
        let space = j.space();
        for c in &cands {
            let t = j.tau_open(&c.word)?;
            if !t.wedge(&WedgeElement::vector(space, c.x_class.clone())?)?.is_zero() {
                return Ok((false, format!("τ ∧ [x] ≠ 0 for {}", c.word)));
            }
        }
        Ok((true, format!("{} candidates", cands.len())))
    })]
}

/// The calibration witness matches `[x] ∧ ω'` exactly.
pub fn calibration() -> Vec<Check> {
    vec![run("bp.calibration", || {
        let (word, expected) = calibration_witness();
        let got = Johnson::new(2)?.tau_open(&word)?;
        Ok((got == expected, format!("τ({word}) = {got}, formula {expected}")))
    })]
}

pub fn sip_remark(genus: usize, seed: u64, samples: usize) -> Vec<Check> {
    vec![run(format!("sip.remark.g{genus}"), || {
        let space = SymplecticSpace::new(genus);
        let mut r = rng(seed);
        for _ in 0..samples {
            let cfg = random_sip_config(&mut r, space, 3);
            if !sip_remark_holds(space, &cfg)? {
                return Ok((false, format!("fails for {cfg:?}")));
            }
        }
        Ok((true, format!("{samples} configurations")))
    })]
}

pub fn equivariance(genus: usize, seed: u64, samples: usize) -> Vec<Check> {
    vec![run(format!("tau.equivariance.g{genus}"), || {
        let j = Johnson::new(genus)?;
        let mut r = rng(seed);
        for _ in 0..samples {
            let f = random_word(&mut r, genus, true, 6);
            let t = random_torelli_word(&mut r, genus, 2, 2);
            if !j.equivariance_check(&f, &t)? {
                return Ok((false, format!("fails for f = {f}, t = {t}")));
            }
        }
        Ok((true, format!("{samples} pairs")))
    })]
}

/// `τ_closed(w · T_∂) = τ_closed(w)` on closed-surface words.
pub fn closed_well_defined(genus: usize, seed: u64, samples: usize) -> Vec<Check> {
    vec![run(format!("tau.closed_boundary.g{genus}"), || {
        let j = Johnson::new(genus)?;
        let d = boundary_twist_word(genus).with_boundary(false);
        let mut r = rng(seed);
        for _ in 0..samples {
            let w = random_torelli_word(&mut r, genus, 2, 3).with_boundary(false);
            if j.tau_closed(&w.mul(&d))? != j.tau_closed(&w)? {
                return Ok((false, format!("differs for {w}")));
            }
        }
        Ok((true, format!("{samples} words")))
    })]
}

/// Both lantern configurations, plus the control with one flipped sign.
pub fn lantern(genus: usize) -> Vec<Check> {
    vec![
        run(format!("lantern.g{genus}"), || {
            let rep = lantern_torsion_check(genus)?;
            Ok((
                rep.passed(),
                format!("pair sums zero: {}, total {}, balanced {}", rep.pair_sums_vanish(), rep.total, rep.balanced),
            ))
        }),
        run(format!("lantern.negative_control.g{genus}"), || {
            let std = LanternConfig::standard(genus)?;
            let bad = LanternConfig { y: std.y.clone(), ..std.mirrored() };
            let rep = lantern_report(&std, &bad)?;
            Ok((!rep.passed(), format!("flipped configuration rejected: {}", !rep.passed())))
        }),
    ]
}

/// ℓ1 distance from `t` to the nearest point of `t + i(H)` by enumerating
/// `λ` with `‖λ‖₁ ≤ lambda_l1`.
fn brute_min_l1(space: SymplecticSpace, t: &[i64], lambda_l1: i64) -> i64 {
    let e = embedding_matrix(space);
    let cols: Vec<Vec<i64>> =
        e.columns().iter().map(|c| c.coords().iter().map(|x| x.to_i64().expect("small")).collect()).collect();
    let mut best = t.iter().map(|x| x.abs()).sum::<i64>();
    let mut lam = vec![0i64; cols.len()];
    fn rec(k: usize, budget: i64, lam: &mut Vec<i64>, cols: &[Vec<i64>], t: &[i64], best: &mut i64) {
        if k == cols.len() {
            let mut v = t.to_vec();
            for (c, l) in cols.iter().zip(lam.iter()) {
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi += l * ci;
                }
            }
            *best = (*best).min(v.iter().map(|x| x.abs()).sum());
            return;
        }
        for l in -budget..=budget {
            lam[k] = l;
            rec(k + 1, budget - l.abs(), lam, cols, t, best);
        }
        lam[k] = 0;
    }
    rec(0, lambda_l1, &mut lam, &cols, t, &mut best);
    best
}

/// All integer vectors of dimension `n` with ℓ1 norm at most `r`.
fn l1_ball(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(k: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in -budget..=budget {
            cur[k] = v;
            rec(k + 1, budget - v.abs(), cur, out);
        }
        cur[k] = 0;
    }
    rec(0, r, &mut cur, &mut out);
    out
}

/// `w_synthesis` in the closed case returns a word of minimal length, the
/// minimum being found by enumeration over every target with `ℓ1 ≤ max_l1`.
pub fn synthesis_minimality(genus: usize, max_l1: i64) -> Vec<Check> {
    vec![run(format!("presentation.w_minimal.g{genus}.l1_{max_l1}"), || {
        let space = SymplecticSpace::new(genus);
        let targets = l1_ball(binomial(2 * genus, 3), max_l1);
        for t in &targets {
            let w = WedgeElement::from_coords(space, 3, LatticeVector::from_i64s(t))?;
            let word = w_synthesis(&w, false, None)?;
            let phi = crate::presentation::phi(space, &word)?;
            let diff = w.sub(&phi)?;
            let in_coset = crate::exterior::QuotientW3::project(std::sync::Arc::new(quotient_w3(space)?), &diff)?.is_zero();
            // Each column of the embedding has ℓ1 norm 2(g-1) with disjoint
            // supports, so ‖λ‖₁ ≤ ℓ1(t) suffices for any improvement.
            let best = brute_min_l1(space, t, max_l1);
            if !in_coset || word.len() as i64 != best {
                return Ok((false, format!("target {t:?}: word length {}, brute force {best}", word.len())));
            }
        }
        Ok((true, format!("{} targets", targets.len())))
    })]
}

fn family_check(id: String, verifier: &Verifier, rels: &[Relation], need_tau: bool) -> Check {
    run(id, || {
        let mut tau_checked = 0;
        for r in rels {
            let rep = verifier.verify(r)?;
            if !rep.passed() || (need_tau && rep.tau.is_none()) {
                return Ok((false, format!("relation {r} fails: {rep:?}")));
            }
            tau_checked += usize::from(rep.tau.is_some());
        }
        Ok((true, format!("{} relations, {tau_checked} checked at τ level", rels.len())))
    })
}

/// Relation families under every representation, witness certificates and
/// a corrupted relation as negative control.
pub fn presentation(genus: usize, witnesses: Option<&Witnesses>, radius: Option<&BigInt>) -> Vec<Check> {
    let mut out = Vec::new();
    let verifier = match Verifier::new(genus, witnesses.map_or(&[][..], |w| &w[..])) {
        Ok(v) => v,
        Err(e) => return vec![run(format!("presentation.g{genus}"), || Err(e.into()))],
    };
    let need_tau = witnesses.is_some();
    if let Some(w) = witnesses {
        out.push(run(format!("presentation.witnesses.g{genus}"), || {
            let checks = certify(verifier.johnson(), w)?;
            let ok = checks.len() == binomial(2 * genus, 3) && checks.iter().all(|c| c.passed());
            Ok((ok, format!("{} witnesses with τ = φ(J)", checks.len())))
        }));
    }
    let comm = relations_comm(genus);
    let expected = binomial(binomial(2 * genus, 3), 2);
    out.push(family_check(format!("presentation.comm.g{genus}"), &verifier, &comm, need_tau));
    out.push(run(format!("presentation.comm_count.g{genus}"), || {
        Ok((comm.len() == expected, format!("{} relations, expected {expected}", comm.len())))
    }));
    out.push(run(format!("presentation.h_signs.g{genus}"), || {
        let space = SymplecticSpace::new(genus);
        for x in 0..space.dim() {
            sign_resolve(space, x)?;
        }
        Ok((true, format!("{} unique sign vectors", space.dim())))
    }));
    out.push(run(format!("presentation.h_image.g{genus}"), || {
        let space = SymplecticSpace::new(genus);
        let rels = relations_h(genus)?;
        for (x, r) in rels.iter().enumerate() {
            let img = crate::presentation::phi(space, &r.word)?;
            if img != standard_embedding(&WedgeElement::basis(space, &[x]))? {
                return Ok((false, format!("φ of relation {x} is {img}")));
            }
        }
        Ok((true, "φ(R_H) = i(B)".into()))
    }));
    match relations_h(genus) {
        Ok(h) => out.push(family_check(format!("presentation.h.g{genus}"), &verifier, &h, need_tau)),
        Err(e) => out.push(run(format!("presentation.h.g{genus}"), || Err(e.into()))),
    }
    match relations_conj(genus, radius) {
        Ok(c) => {
            out.push(family_check(format!("presentation.conj.g{genus}"), &verifier, &c, need_tau));
            out.push(run(format!("presentation.negative_control.g{genus}"), || {
                let mut bad = c[c.len() / 2].clone();
                bad.word[1] = bad.word[1].inverse();
                let rep = verifier.verify(&bad)?;
                Ok((!rep.passed(), format!("corrupted relation rejected: {}", !rep.passed())))
            }));
        }
        Err(e) => out.push(run(format!("presentation.conj.g{genus}"), || Err(e.into()))),
    }
    match relations_sanity(genus) {
        Ok(s) => out.push(family_check(format!("presentation.sanity.g{genus}"), &verifier, &s, false)),
        Err(e) => out.push(run(format!("presentation.sanity.g{genus}"), || Err(e.into()))),
    }
    out
}

/// Symplectic shadow of the intersection bound for generators: for every
/// `s ∈ S_Mod` and basis curve `b`, `|i([b], s_*[b])| ≤ 1`.
pub fn intersection_shadow(genus: usize) -> Vec<Check> {
    vec![run(format!("generators.intersection_shadow.g{genus}"), || {
        let table = GeneratorTable::new(genus)?;
        let space = table.space();
        for c in Curve::all(genus) {
            let m = &table.get(c)?.matrix;
            for p in 0..space.dim() {
                let b = LatticeVector::unit(space.dim(), p);
                let sb = m.mul_vec(&b)?;
                if space.pairing(&b, &sb).abs() > BigInt::one() {
                    return Ok((false, format!("T{c} moves {} too far", space.label(p))));
                }
            }
        }
        Ok((true, format!("{} generators", Curve::all(genus).len())))
    })]
}

/// When `s_*` fixes `φ(J)`, the synthesized `W` is `J` itself.
pub fn conj_fixed(genus: usize) -> Vec<Check> {
    vec![run(format!("presentation.conj_fixed.g{genus}"), || {
        let space = SymplecticSpace::new(genus);
        let table = GeneratorTable::new(genus)?;
        let mut checked = 0;
        for c in Curve::all(genus) {
            let m3 = induced_wedge_map(&table.get(c)?.matrix, 3)?;
            for j in crate::presentation::JSymbol::all(genus) {
                let img = m3.mul_vec(j.phi().coords())?;
                if &img == j.phi().coords() {
                    let t = WedgeElement::from_coords(space, 3, img)?;
                    if w_synthesis(&t, false, None)?.len() != 1 {
                        return Ok((false, format!("T{c} fixes {j} but W has length ≠ 1")));
                    }
                    checked += 1;
                }
            }
        }
        Ok((checked > 0, format!("{checked} fixed pairs give W = J")))
    })]
}
