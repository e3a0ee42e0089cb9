//! Formal generators `S_Mod ∪ S_∧` for `Mod(Σ_g)/K(Σ_g)`, the map
//! `φ: ⟨S_∧⟩ → ∧³H`, the relation families and their verification.
//!
//! The basis `B` is ordered `α₁ < β₁ < α₂ < … < β_g`, which coincides with
//! the coordinate order of `H`, so `φ(J_{x,y,z})` is the lexicographic basis
//! vector of the sorted triple.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exterior::{
    binomial, embedding_matrix, induced_wedge_map, subsets, ExteriorError, QuotientW3, SymplecticSpace, WedgeElement,
};
use crate::johnson::{Johnson, JohnsonError};
use crate::lattice::{min_l1_coset_rep, LatticeError, LatticeMatrix, LatticeVector, QuotientStructure};
use crate::mcg::{three_chain_relation, Curve, GeneratorTable, Letter, MappingClassWord, McgError};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("genus {0} is too small (need at least 2)")]
    BadGenus(usize),
    #[error("J-symbol needs three distinct basis indices below {bound}, got {triple:?}")]
    BadSymbol { triple: [usize; 3], bound: usize },
    #[error("{0} is not a J-symbol")]
    NotWedgeLetter(String),
    #[error("no sign vector realizes the R_H target for x = {0}")]
    NoSigns(String),
    #[error("{count} sign vectors realize the R_H target for x = {x}")]
    AmbiguousSigns { x: String, count: usize },
    #[error("symbol {0} has no witness word")]
    MissingWitness(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error(transparent)]
    Johnson(#[from] JohnsonError),
}

/// `J_{x,y,z}` for a 3-subset of the basis, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JSymbol {
    genus: usize,
    triple: [usize; 3],
}

impl JSymbol {
    pub fn new(genus: usize, triple: [usize; 3]) -> Result<Self, PresentationError> {
        let mut t = triple;
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] || t[2] >= 2 * genus {
            return Err(PresentationError::BadSymbol { triple, bound: 2 * genus });
        }
        Ok(JSymbol { genus, triple: t })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn triple(&self) -> [usize; 3] {
        self.triple
    }

    pub fn phi(&self) -> WedgeElement {
        WedgeElement::basis(SymplecticSpace::new(self.genus), &self.triple)
    }

    /// Position of `φ(J)` in the lexicographic basis of `∧³H`.
    pub fn index(&self) -> usize {
        crate::exterior::subset_rank(2 * self.genus, &self.triple)
    }

    pub fn all(genus: usize) -> Vec<JSymbol> {
        subsets(2 * genus, 3).into_iter().map(|s| JSymbol { genus, triple: [s[0], s[1], s[2]] }).collect()
    }
}

impl fmt::Display for JSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = SymplecticSpace::new(self.genus);
        let [p, q, r] = self.triple;
        write!(f, "J({},{},{})", sp.label(p), sp.label(q), sp.label(r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Mod(Curve),
    J(JSymbol),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PresLetter {
    pub symbol: Symbol,
    pub inverse: bool,
}

impl PresLetter {
    pub fn j(sym: JSymbol, inverse: bool) -> Self {
        PresLetter { symbol: Symbol::J(sym), inverse }
    }

    pub fn twist(c: Curve, inverse: bool) -> Self {
        PresLetter { symbol: Symbol::Mod(c), inverse }
    }

    pub fn inverse(self) -> Self {
        PresLetter { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for PresLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.symbol {
            Symbol::Mod(c) => write!(f, "T{c}")?,
            Symbol::J(j) => write!(f, "{j}")?,
        }
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

pub fn invert_word(w: &[PresLetter]) -> Vec<PresLetter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationFamily {
    Comm,
    H,
    Conj,
    Sanity,
}

impl RelationFamily {
    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Comm => "comm",
            RelationFamily::H => "h",
            RelationFamily::Conj => "conj",
            RelationFamily::Sanity => "sanity",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [RelationFamily::Comm, RelationFamily::H, RelationFamily::Conj, RelationFamily::Sanity]
            .into_iter()
            .find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: RelationFamily,
    pub word: Vec<PresLetter>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.family.name(), crate::format::format_pres_word(&self.word))
    }
}

/// `S_Mod` (in `Curve::all` order) and `S_∧` (in lexicographic order).
pub fn build_generators(genus: usize) -> Result<(Vec<Curve>, Vec<JSymbol>), PresentationError> {
    if genus < 2 {
        return Err(PresentationError::BadGenus(genus));
    }
    if genus == 2 {
        log::warn!("genus 2: (∧³H)/H is finite, the presentation is degenerate");
    }
    Ok((Curve::all(genus), JSymbol::all(genus)))
}

pub fn phi(space: SymplecticSpace, word: &[PresLetter]) -> Result<WedgeElement, PresentationError> {
    let mut coords = vec![BigInt::zero(); binomial(space.dim(), 3)];
    for l in word {
        let Symbol::J(j) = l.symbol else {
            return Err(PresentationError::NotWedgeLetter(l.to_string()));
        };
        if l.inverse {
            coords[j.index()] -= 1;
        } else {
            coords[j.index()] += 1;
        }
    }
    Ok(WedgeElement::from_coords(space, 3, LatticeVector::new(coords))?)
}

/// The commutators `[J₁, J₂]` of distinct symbols, `J₁ < J₂`.
pub fn relations_comm(genus: usize) -> Vec<Relation> {
    let js = JSymbol::all(genus);
    let mut out = Vec::new();
    for (n, &a) in js.iter().enumerate() {
        for &b in &js[n + 1..] {
            out.push(Relation {
                family: RelationFamily::Comm,
                word: vec![PresLetter::j(a, false), PresLetter::j(b, false), PresLetter::j(a, true), PresLetter::j(b, true)],
            });
        }
    }
    out
}

/// Symbols `J_{x,αⱼ,βⱼ}` for `j` different from the handle of `x`.
fn rh_factors(genus: usize, x: usize) -> Vec<JSymbol> {
    (0..genus)
        .filter(|&j| j != x / 2)
        .map(|j| JSymbol::new(genus, [x, 2 * j, 2 * j + 1]).expect("distinct indices"))
        .collect()
}

/// The unique signs `s_j` with `φ(∏ J_{x,αⱼ,βⱼ}^{s_j}) = x ∧ Σ_{j≠i} αⱼ∧βⱼ`,
/// found by exhaustive search over all sign vectors.
pub fn sign_resolve(space: SymplecticSpace, x: usize) -> Result<Vec<i64>, PresentationError> {
    let g = space.genus();
    let factors = rh_factors(g, x);
    let handles: Vec<usize> = (1..=g).filter(|&j| j != x / 2 + 1).collect();
    let omega = crate::exterior::partial_canonical_element(space, &handles);
    let target = WedgeElement::basis(space, &[x]).wedge(&omega)?;
    let mut found = Vec::new();
    for mask in 0u64..(1 << factors.len()) {
        let signs: Vec<i64> = (0..factors.len()).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
        let word: Vec<PresLetter> = factors.iter().zip(&signs).map(|(&j, &s)| PresLetter::j(j, s < 0)).collect();
        if phi(space, &word)? == target {
            found.push(signs);
        }
    }
    match found.len() {
        0 => Err(PresentationError::NoSigns(space.label(x))),
        1 => Ok(found.pop().expect("one entry")),
        count => Err(PresentationError::AmbiguousSigns { x: space.label(x), count }),
    }
}

/// One `R_H` relation per basis element `x`, in basis order.
pub fn relations_h(genus: usize) -> Result<Vec<Relation>, PresentationError> {
    let space = SymplecticSpace::new(genus);
    (0..space.dim())
        .map(|x| {
            let signs = sign_resolve(space, x)?;
            let word = rh_factors(genus, x).into_iter().zip(signs).map(|(j, s)| PresLetter::j(j, s < 0)).collect();
            Ok(Relation { family: RelationFamily::H, word })
        })
        .collect()
}

/// Word over `S_∧^{±1}` for a coefficient vector, letters in basis order.
pub fn word_from_coords(genus: usize, coords: &LatticeVector) -> Vec<PresLetter> {
    let js = JSymbol::all(genus);
    let mut out = Vec::new();
    for (j, c) in js.iter().zip(coords.coords()) {
        let n = c.abs().to_usize().expect("small coefficient");
        out.extend(std::iter::repeat_n(PresLetter::j(*j, c.is_negative()), n));
    }
    out
}

/// A shortest word `W` over `S_∧^{±1}` with `φ(W) = target`, exactly
/// (`boundary`) or modulo `i(H)`. The target's own coefficients are kept
/// when they are already minimal; otherwise the lexicographically smallest
/// minimal coefficient vector is used.
///
/// `radius` bounds the `i(H)` coefficients searched in the closed case. The
/// default, twice the ℓ1 norm of the target, always suffices: the columns of
/// the embedding matrix have disjoint supports.
pub fn w_synthesis(
    target: &WedgeElement,
    boundary: bool,
    radius: Option<&BigInt>,
) -> Result<Vec<PresLetter>, PresentationError> {
    let space = target.space();
    let v = if boundary {
        target.coords().clone()
    } else {
        let norm = target.coords().l1();
        let default = &norm * 2;
        let rep = min_l1_coset_rep(target.coords(), &embedding_matrix(space), radius.unwrap_or(&default))?;
        if rep.l1() == norm {
            target.coords().clone()
        } else {
            rep
        }
    };
    Ok(word_from_coords(space.genus(), &v))
}

/// `s J s⁻¹ W⁻¹` for every `s ∈ S_Mod` and every `J`, closed case.
pub fn relations_conj(genus: usize, radius: Option<&BigInt>) -> Result<Vec<Relation>, PresentationError> {
    let (mods, js) = build_generators(genus)?;
    let table = GeneratorTable::new(genus)?;
    let mut out = Vec::with_capacity(mods.len() * js.len());
    for &s in &mods {
        let m3 = induced_wedge_map(&table.get(s)?.matrix, 3)?;
        for &j in &js {
            let target = WedgeElement::from_coords(table.space(), 3, m3.mul_vec(j.phi().coords())?)?;
            let w = w_synthesis(&target, false, radius)?;
            let mut word = vec![PresLetter::twist(s, false), PresLetter::j(j, false), PresLetter::twist(s, true)];
            word.extend(invert_word(&w));
            out.push(Relation { family: RelationFamily::Conj, word });
        }
    }
    Ok(out)
}

fn mod_word(twists: &[(Curve, bool)]) -> Vec<PresLetter> {
    twists.iter().map(|&(c, inv)| PresLetter::twist(c, inv)).collect()
}

fn expand_letters(letters: &[Letter]) -> Vec<PresLetter> {
    let mut out = Vec::new();
    for l in letters {
        match l {
            Letter::Twist { curve, inverse } => out.push(PresLetter::twist(*curve, *inverse)),
            Letter::Conjugated { conjugator, curve, inverse } => {
                let c = expand_letters(conjugator);
                out.extend(c.iter().copied());
                out.push(PresLetter::twist(*curve, *inverse));
                out.extend(invert_word(&c));
            }
        }
    }
    out
}

/// Stand-ins for `R_Mod`: commutators of disjoint generators, braid
/// relations of intersecting ones, and the 3-chain relation per handle pair.
pub fn relations_sanity(genus: usize) -> Result<Vec<Relation>, PresentationError> {
    let table = GeneratorTable::new(genus)?;
    let space = table.space();
    let curves = Curve::all(genus);
    let mut out = Vec::new();
    for (n, &c) in curves.iter().enumerate() {
        for &d in &curves[n + 1..] {
            let p = space.pairing(&table.get(c)?.homology_class, &table.get(d)?.homology_class);
            let word = if p.is_zero() {
                mod_word(&[(c, false), (d, false), (c, true), (d, true)])
            } else if p.abs().is_one() {
                mod_word(&[(c, false), (d, false), (c, false), (d, true), (c, true), (d, true)])
            } else {
                continue;
            };
            out.push(Relation { family: RelationFamily::Sanity, word });
        }
    }
    for j in 1..genus {
        let (lhs, rhs) = three_chain_relation(genus, j);
        let mut word = expand_letters(lhs.letters());
        word.extend(invert_word(&expand_letters(rhs.letters())));
        out.push(Relation { family: RelationFamily::Sanity, word });
    }
    Ok(out)
}

/// Outcome of [`Verifier::verify`]; `None` marks a check that does not apply.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    /// Image under the symplectic representation is the identity.
    pub symplectic: Option<bool>,
    /// `φ` of a word over `S_∧` is zero (`R_Comm`) or lies in `i(H)` (`R_H`).
    pub phi: Option<bool>,
    /// Image in `Sp ⋉ (∧³H)/H` is trivial; for `R_Conj` this is
    /// `s_*φ(J) − φ(W) ∈ i(H)`.
    pub wedge: Option<bool>,
    /// Exact identity of `π₁(Σ_{g,1})` automorphisms (words over `S_Mod`).
    pub automorphism: Option<bool>,
    /// `τ_closed` of the witness realization is zero.
    pub tau: Option<bool>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        [self.symplectic, self.phi, self.wedge, self.automorphism, self.tau].iter().all(|c| c.unwrap_or(true))
    }
}

/// Evaluates relation words under every available representation.
pub struct Verifier {
    genus: usize,
    johnson: Johnson,
    quotient: Arc<QuotientStructure>,
    s3: HashMap<Curve, (LatticeMatrix, LatticeMatrix)>,
    witnesses: HashMap<JSymbol, MappingClassWord>,
}

impl Verifier {
    /// `witnesses` realize `J` letters for the `τ` check; symbols without a
    /// witness make that check inapplicable.
    pub fn new(genus: usize, witnesses: &[(JSymbol, MappingClassWord)]) -> Result<Self, PresentationError> {
        let johnson = Johnson::new(genus)?;
        let quotient = johnson.quotient().clone();
        let mut s3 = HashMap::new();
        for c in Curve::all(genus) {
            let g = johnson.table().get(c)?;
            s3.insert(c, (induced_wedge_map(&g.matrix, 3)?, induced_wedge_map(&g.inverse_matrix, 3)?));
        }
        let witnesses = witnesses.iter().map(|(j, w)| (*j, w.with_boundary(false))).collect();
        Ok(Verifier { genus, johnson, quotient, s3, witnesses })
    }

    pub fn johnson(&self) -> &Johnson {
        &self.johnson
    }

    fn in_image(&self, w: &WedgeElement) -> Result<bool, PresentationError> {
        Ok(QuotientW3::project(self.quotient.clone(), w)?.is_zero())
    }

    /// Image in `Sp(2g) ⋉ ∧³H` with `(M, v)(N, u) = (MN, v + M u)`.
    fn semidirect(&self, word: &[PresLetter]) -> Result<(LatticeMatrix, WedgeElement), PresentationError> {
        let space = self.johnson.space();
        let table = self.johnson.table();
        let mut m = LatticeMatrix::identity(space.dim());
        let mut m3 = LatticeMatrix::identity(binomial(space.dim(), 3));
        let mut v = LatticeVector::zeros(m3.rows());
        for l in word {
            match l.symbol {
                Symbol::Mod(c) => {
                    let g = table.get(c)?;
                    let (fwd, back) = &self.s3[&c];
                    m = m.mul(if l.inverse { &g.inverse_matrix } else { &g.matrix })?;
                    m3 = m3.mul(if l.inverse { back } else { fwd })?;
                }
                Symbol::J(j) => {
                    let k = if l.inverse { -BigInt::one() } else { BigInt::one() };
                    v.add_scaled(&m3.column(j.index()), &k);
                }
            }
        }
        Ok((m, WedgeElement::from_coords(space, 3, v)?))
    }

    fn realize(&self, word: &[PresLetter]) -> Result<Option<MappingClassWord>, PresentationError> {
        let mut out = MappingClassWord::identity(self.genus, false);
        for l in word {
            let piece = match l.symbol {
                Symbol::Mod(c) => MappingClassWord::from_twists(self.genus, false, &[(c, l.inverse)])?,
                Symbol::J(j) => match self.witnesses.get(&j) {
                    Some(w) if l.inverse => w.inverse(),
                    Some(w) => w.clone(),
                    None => return Ok(None),
                },
            };
            out = out.mul(&piece);
        }
        Ok(Some(out))
    }

    pub fn verify(&self, rel: &Relation) -> Result<RelationReport, PresentationError> {
        let (m, v) = self.semidirect(&rel.word)?;
        let only_j = rel.word.iter().all(|l| matches!(l.symbol, Symbol::J(_)));
        let only_mod = rel.word.iter().all(|l| matches!(l.symbol, Symbol::Mod(_)));
        let mut report = RelationReport { symplectic: Some(m.is_identity()), ..Default::default() };
        if only_j {
            let exact = rel.family != RelationFamily::H;
            report.phi = Some(if exact { v.is_zero() } else { self.in_image(&v)? });
        } else {
            report.wedge = Some(self.in_image(&v)?);
        }
        if only_mod {
            let twists: Vec<(Curve, bool)> = rel
                .word
                .iter()
                .map(|l| match l.symbol {
                    Symbol::Mod(c) => (c, l.inverse),
                    Symbol::J(_) => unreachable!("checked above"),
                })
                .collect();
            let w = MappingClassWord::from_twists(self.genus, true, &twists)?;
            report.automorphism = Some(self.johnson.table().automorphism_of(&w)? == crate::mcg::identity_automorphism(2 * self.genus));
        }
        if let Some(w) = self.realize(&rel.word)? {
            report.tau = Some(match self.johnson.tau_closed(&w) {
                Ok(t) => t.is_zero(),
                Err(JohnsonError::NotTorelli(_)) => false,
                Err(e) => return Err(e.into()),
            });
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex_min_brute(target: &LatticeVector, sub: &LatticeMatrix, coeff: i64) -> BigInt {
        let k = sub.cols();
        let mut best = target.l1();
        let mut lam = vec![-coeff; k];
        loop {
            let mut v = target.clone();
            for (c, &l) in lam.iter().enumerate() {
                v.add_scaled(&sub.column(c), &BigInt::from(l));
            }
            best = best.min(v.l1());
            let mut i = 0;
            while i < k && lam[i] == coeff {
                lam[i] = -coeff;
                i += 1;
            }
            if i == k {
                return best;
            }
            lam[i] += 1;
        }
    }

    #[test]
    fn generator_counts() {
        let (m, j) = build_generators(3).unwrap();
        assert_eq!((m.len(), j.len()), (8, 20));
        let (m, j) = build_generators(4).unwrap();
        assert_eq!((m.len(), j.len()), (11, 56));
        assert!(build_generators(1).is_err());
        assert_eq!(JSymbol::new(3, [4, 2, 0]).unwrap(), JSymbol::new(3, [0, 2, 4]).unwrap());
        assert!(JSymbol::new(3, [0, 0, 1]).is_err());
    }

    #[test]
    fn phi_examples() {
        let sp = SymplecticSpace::new(3);
        let j = JSymbol::new(3, [0, 2, 4]).unwrap();
        assert_eq!(phi(sp, &[PresLetter::j(j, false)]).unwrap(), WedgeElement::basis(sp, &[0, 2, 4]));
        assert!(phi(sp, &[PresLetter::j(j, false), PresLetter::j(j, true)]).unwrap().is_zero());
        let k = JSymbol::new(3, [0, 2, 3]).unwrap();
        let two = phi(sp, &[PresLetter::j(k, false), PresLetter::j(k, false)]).unwrap();
        assert_eq!(two, WedgeElement::basis(sp, &[0, 2, 3]).scale(&BigInt::from(2)));
        assert!(phi(sp, &[PresLetter::twist(Curve::Alpha(1), false)]).is_err());
    }

    #[test]
    fn comm_count() {
        assert_eq!(relations_comm(3).len(), 190);
    }

    #[test]
    fn signs_genus_two_and_three() {
        let sp = SymplecticSpace::new(2);
        assert_eq!(sign_resolve(sp, 0).unwrap().len(), 1);
        let sp = SymplecticSpace::new(3);
        for x in 0..6 {
            assert_eq!(sign_resolve(sp, x).unwrap().len(), 2);
        }
    }

    #[test]
    fn conj_examples() {
        let sp = SymplecticSpace::new(3);
        // T_{β₁} moves a₁ to a₁ ± b₁, so the image of a₁∧a₂∧a₃ needs two letters.
        let table = GeneratorTable::new(3).unwrap();
        let m3 = induced_wedge_map(&table.get(Curve::Beta(1)).unwrap().matrix, 3).unwrap();
        let j = JSymbol::new(3, [0, 2, 4]).unwrap();
        let target = WedgeElement::from_coords(sp, 3, m3.mul_vec(j.phi().coords()).unwrap()).unwrap();
        let w = w_synthesis(&target, false, None).unwrap();
        assert_eq!(w.len(), 2);
        let brute = lex_min_brute(target.coords(), &embedding_matrix(sp), 2);
        assert_eq!(BigInt::from(w.len()), brute);
        // T_{α₂} fixes a₁, b₁ and a₃.
        let fixed = JSymbol::new(3, [0, 1, 4]).unwrap();
        let m3 = induced_wedge_map(&table.get(Curve::Alpha(2)).unwrap().matrix, 3).unwrap();
        let t = WedgeElement::from_coords(sp, 3, m3.mul_vec(fixed.phi().coords()).unwrap()).unwrap();
        assert_eq!(w_synthesis(&t, false, None).unwrap(), vec![PresLetter::j(fixed, false)]);
        let ih = crate::exterior::standard_embedding(&WedgeElement::basis(sp, &[0])).unwrap();
        assert!(w_synthesis(&ih, false, None).unwrap().is_empty());
        assert_eq!(relations_conj(3, None).unwrap().len(), 160);
    }

    #[test]
    fn algebraic_checks_pass_and_corruption_fails() {
        let v = Verifier::new(3, &[]).unwrap();
        for r in relations_h(3).unwrap().iter().chain(relations_conj(3, None).unwrap().iter()) {
            let rep = v.verify(r).unwrap();
            assert!(rep.passed(), "{r}");
            assert_eq!(rep.tau, None);
        }
        let mut bad = relations_h(3).unwrap()[0].clone();
        bad.word[0] = bad.word[0].inverse();
        assert!(!v.verify(&bad).unwrap().passed());
        let mut bad = relations_conj(3, None).unwrap()[7].clone();
        bad.word[1] = bad.word[1].inverse();
        assert!(!v.verify(&bad).unwrap().passed());
    }

    #[test]
    fn sanity_relations_hold() {
        let v = Verifier::new(3, &[]).unwrap();
        let rels = relations_sanity(3).unwrap();
        assert!(rels.len() > 20);
        for r in &rels {
            let rep = v.verify(r).unwrap();
            assert_eq!(rep.automorphism, Some(true), "{r}");
            assert!(rep.passed());
        }
    }
}
