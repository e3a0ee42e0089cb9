//! Torelli words realizing the symbols `J_{x,y,z}`.
//!
//! A witness for `J` is a word on `Σ_{g,1}` whose `τ` is exactly the basis
//! vector `φ(J)`. Witnesses are products of at most three conjugates
//! `f t^{±1} f⁻¹` of the chain BP words `t`, or conjugates of such products
//! by handle rotations. The search predicts `τ` values by equivariance and
//! the result is then certified by direct evaluation.
//! The curated files for genus 2 and 3 are embedded at compile time.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exterior::{induced_wedge_map, WedgeElement};
use crate::format::{parse_witnesses, ParseError};
use crate::johnson::{Johnson, JohnsonError};
use crate::mcg::{chain_bp_word, mirrored_chain_bp_word, Curve, MappingClassWord};
use crate::presentation::JSymbol;

const WITNESSES_G2: &str = include_str!("../data/witnesses_g2.txt");
const WITNESSES_G3: &str = include_str!("../data/witnesses_g3.txt");

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("no curated witnesses for genus {0}")]
    NoData(usize),
    #[error("witness file: {0}")]
    Parse(#[from] ParseError),
    #[error("witness file is for genus {found}, expected {expected}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("no witness found for {0} within the search limits")]
    NotFound(String),
    #[error(transparent)]
    Johnson(#[from] JohnsonError),
}

pub type Witnesses = Vec<(JSymbol, MappingClassWord)>;

/// The embedded witness table.
pub fn curated(genus: usize) -> Result<Witnesses, WitnessError> {
    let text = match genus {
        2 => WITNESSES_G2,
        3 => WITNESSES_G3,
        g => return Err(WitnessError::NoData(g)),
    };
    load(text, genus)
}

pub fn load(text: &str, genus: usize) -> Result<Witnesses, WitnessError> {
    let (found, w) = parse_witnesses(text)?;
    if found != genus {
        return Err(WitnessError::GenusMismatch { expected: genus, found });
    }
    Ok(w)
}

/// Result of evaluating one witness.
#[derive(Clone, Debug)]
pub struct WitnessCheck {
    pub symbol: JSymbol,
    pub torelli: bool,
    pub tau: Option<WedgeElement>,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.torelli && self.tau.as_ref() == Some(&self.symbol.phi())
    }
}

/// Evaluates each witness: it must be Torelli with `τ = φ(J)` exactly.
pub fn certify(johnson: &Johnson, witnesses: &[(JSymbol, MappingClassWord)]) -> Result<Vec<WitnessCheck>, WitnessError> {
    witnesses
        .iter()
        .map(|(j, w)| {
            let torelli = johnson.table().is_torelli(w).map_err(JohnsonError::from)?;
            let tau = if torelli { Some(johnson.tau_open(w)?) } else { None };
            Ok(WitnessCheck { symbol: *j, torelli, tau })
        })
        .collect()
}

/// Freely reduced words of length at most `max_len` over the generators and
/// their inverses.
fn conjugators(genus: usize, max_len: usize) -> Vec<Vec<(Curve, bool)>> {
    let letters: Vec<(Curve, bool)> = Curve::all(genus).into_iter().flat_map(|c| [(c, false), (c, true)]).collect();
    let mut layer: Vec<Vec<(Curve, bool)>> = vec![Vec::new()];
    let mut out = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&(l.0, !l.1)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct PoolEntry {
    word: MappingClassWord,
    tau: Vec<i64>,
}

fn as_i64(w: &WedgeElement) -> Vec<i64> {
    w.coords().coords().iter().map(|c| c.to_i64().expect("small coordinates")).collect()
}

/// Searches for witnesses of every symbol using conjugators of length at
/// most `conj_len`, then certifies them.
pub fn synthesize(johnson: &Johnson, conj_len: usize) -> Result<Witnesses, WitnessError> {
    let genus = johnson.genus();
    let table = johnson.table();
    let mut bases = Vec::new();
    for j in 1..genus {
        for t in [chain_bp_word(genus, j), mirrored_chain_bp_word(genus, j)] {
            let tau = johnson.tau_open(&t)?;
            bases.push((t.inverse(), tau.neg()));
            bases.push((t, tau));
        }
    }
    let mut pool: Vec<PoolEntry> = Vec::new();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    for f in conjugators(genus, conj_len) {
        let fw = MappingClassWord::from_twists(genus, true, &f).map_err(JohnsonError::from)?;
        let m3 = induced_wedge_map(&table.symplectic_action(&fw).map_err(JohnsonError::from)?, 3)
            .map_err(JohnsonError::from)?;
        for (t, tau) in &bases {
            let v: Vec<i64> = m3
                .mul_vec(tau.coords())
                .expect("dimensions agree")
                .coords()
                .iter()
                .map(|c| c.to_i64().expect("small coordinates"))
                .collect();
            if v.iter().all(|&c| c == 0) || seen.contains_key(&v) {
                continue;
            }
            seen.insert(v.clone(), pool.len());
            pool.push(PoolEntry { word: fw.mul(t).mul(&fw.inverse()), tau: v });
        }
    }
    log::info!("witness pool at genus {genus}: {} distinct τ values", pool.len());
    let sub = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let mut found: HashMap<JSymbol, MappingClassWord> = HashMap::new();
    for j in JSymbol::all(genus) {
        let target = as_i64(&j.phi());
        let mut pick: Option<Vec<usize>> = seen.get(&target).map(|&i| vec![i]);
        if pick.is_none() {
            pick = pool.iter().enumerate().find_map(|(i, p)| seen.get(&sub(&target, &p.tau)).map(|&k| vec![i, k]));
        }
        if pick.is_none() {
            'outer: for (i, p) in pool.iter().enumerate() {
                let r = sub(&target, &p.tau);
                for (k, q) in pool.iter().enumerate().skip(i) {
                    if let Some(&l) = seen.get(&sub(&r, &q.tau)) {
                        pick = Some(vec![i, k, l]);
                        break 'outer;
                    }
                }
            }
        }
        if let Some(pick) = pick {
            let word = pick.iter().fold(MappingClassWord::identity(genus, true), |acc, &i| acc.mul(&pool[i].word));
            found.insert(j, word);
        }
    }
    // Handle rotations T_{αᵢ}T_{βᵢ}T_{αᵢ} send aᵢ ↦ bᵢ, bᵢ ↦ −aᵢ; conjugating a
    // known witness by a product of them reaches the remaining symbols.
    let rotations: Vec<MappingClassWord> = (1..1u32 << genus)
        .map(|mask| {
            let twists: Vec<(Curve, bool)> = (1..=genus)
                .filter(|i| mask >> (i - 1) & 1 == 1)
                .flat_map(|i| [(Curve::Alpha(i), false), (Curve::Beta(i), false), (Curve::Alpha(i), false)])
                .collect();
            MappingClassWord::from_twists(genus, true, &twists).expect("valid curves")
        })
        .collect();
    let rotation_maps = rotations
        .iter()
        .map(|r| {
            let m = table.symplectic_action(r).map_err(JohnsonError::from)?;
            induced_wedge_map(&m, 3).map_err(JohnsonError::from)
        })
        .collect::<Result<Vec<_>, JohnsonError>>()?;
    loop {
        let missing: Vec<JSymbol> = JSymbol::all(genus).into_iter().filter(|j| !found.contains_key(j)).collect();
        if missing.is_empty() {
            break;
        }
        let mut progress = false;
        for j in missing {
            let target = j.phi();
            let known: Vec<(JSymbol, MappingClassWord)> = found.iter().map(|(k, w)| (*k, w.clone())).collect();
            'search: for (k, w) in known {
                for (r, m3) in rotations.iter().zip(&rotation_maps) {
                    let image = m3.mul_vec(k.phi().coords()).expect("dimensions agree");
                    let sign = if &image == target.coords() {
                        false
                    } else if image == target.neg().coords().clone() {
                        true
                    } else {
                        continue;
                    };
                    let inner = if sign { w.inverse() } else { w.clone() };
                    found.insert(j, r.mul(&inner).mul(&r.inverse()));
                    progress = true;
                    break 'search;
                }
            }
        }
        if !progress {
            let first = JSymbol::all(genus).into_iter().find(|j| !found.contains_key(j)).expect("some symbol missing");
            return Err(WitnessError::NotFound(first.to_string()));
        }
    }
    let out: Witnesses = JSymbol::all(genus).into_iter().map(|j| (j, found.remove(&j).expect("all found"))).collect();
    for c in certify(johnson, &out)? {
        if !c.passed() {
            return Err(WitnessError::NotFound(c.symbol.to_string()));
        }
    }
    Ok(out)
}
