//! Mapping classes of `Σ_{g,1}` and `Σ_g` as words in Dehn twists.
//!
//! The generators are twists about the curves `α₁…α_g`, `β₁…β_g` and
//! `δ₁…δ_{g-1}` with homology classes `[αᵢ] = aᵢ`, `[βᵢ] = bᵢ` and
//! `[δⱼ] = aⱼ - aⱼ₊₁`. The curves `α₁, β₁, δ₁, β₂, δ₂, …, β_g` form a chain.
//!
//! `π₁(Σ_{g,1})` is free on `x_{2i-1} = aᵢ`, `x_{2i} = bᵢ` with boundary word
//! `ζ = [x₁, x₂] ⋯ [x_{2g-1}, x_{2g}]`. Every twist acts on homology by the
//! transvection `v ↦ v + i(v, c)·c` and on `π₁` by an automorphism fixing `ζ`.
//!
//! A word `L₁ L₂ ⋯ L_n` denotes the composite `L₁ ∘ L₂ ∘ ⋯ ∘ L_n`, so its
//! symplectic matrix is `M₁ M₂ ⋯ M_n`. A conjugated letter `(w : T_c)` is the
//! twist `w T_c w⁻¹` about the curve `w(c)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::exterior::SymplecticSpace;
use crate::lattice::{LatticeMatrix, LatticeVector};
use crate::nilpotent::{FreeWord, NilEndo, NilError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("genus {0} is not supported here (need g >= 2)")]
    BadGenus(usize),
    #[error("curve {0} does not exist in genus {1}")]
    UnknownCurve(Curve, usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("closed-surface words act on the fundamental group only up to conjugacy")]
    ClosedSurface,
    #[error("words live in genus {0} and genus {1}")]
    GenusMismatch(usize, usize),
    #[error(transparent)]
    Nil(#[from] NilError),
}

/// One of the generating curves; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    Alpha(usize),
    Beta(usize),
    Delta(usize),
}

impl Curve {
    pub fn exists_in(self, genus: usize) -> bool {
        match self {
            Curve::Alpha(i) | Curve::Beta(i) => i >= 1 && i <= genus,
            Curve::Delta(j) => j >= 1 && j < genus,
        }
    }

    pub fn homology_class(self, space: SymplecticSpace) -> LatticeVector {
        match self {
            Curve::Alpha(i) => space.a(i),
            Curve::Beta(i) => space.b(i),
            Curve::Delta(j) => &space.a(j) - &space.a(j + 1),
        }
    }

    /// `a1`, `b2`, `d1`.
    pub fn label(self) -> String {
        match self {
            Curve::Alpha(i) => format!("a{i}"),
            Curve::Beta(i) => format!("b{i}"),
            Curve::Delta(j) => format!("d{j}"),
        }
    }

    pub fn parse(s: &str) -> Option<Curve> {
        let mut chars = s.chars();
        let kind = chars.next()?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let i: usize = rest.parse().ok()?;
        match kind {
            'a' => Some(Curve::Alpha(i)),
            'b' => Some(Curve::Beta(i)),
            'd' => Some(Curve::Delta(i)),
            _ => None,
        }
    }

    /// Generators in the order `α₁…α_g, β₁…β_g, δ₁…δ_{g-1}`.
    pub fn all(genus: usize) -> Vec<Curve> {
        (1..=genus)
            .map(Curve::Alpha)
            .chain((1..=genus).map(Curve::Beta))
            .chain((1..genus).map(Curve::Delta))
            .collect()
    }

    /// `α₁, β₁, δ₁, β₂, …` truncated to `len` curves.
    pub fn chain(len: usize) -> Vec<Curve> {
        let mut out = Vec::with_capacity(len);
        if len > 0 {
            out.push(Curve::Alpha(1));
        }
        for n in 1..len {
            out.push(if n % 2 == 1 { Curve::Beta(n / 2 + 1) } else { Curve::Delta(n / 2) });
        }
        out
    }

    /// Shift handle indices by `by`.
    pub fn shifted(self, by: usize) -> Curve {
        match self {
            Curve::Alpha(i) => Curve::Alpha(i + by),
            Curve::Beta(i) => Curve::Beta(i + by),
            Curve::Delta(j) => Curve::Delta(j + by),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A Dehn twist generator with certified actions on homology and on `π₁`.
#[derive(Clone, Debug)]
pub struct TwistGenerator {
    pub curve: Curve,
    pub homology_class: LatticeVector,
    pub automorphism: Vec<FreeWord>,
    pub inverse_automorphism: Vec<FreeWord>,
    pub matrix: LatticeMatrix,
    pub inverse_matrix: LatticeMatrix,
}

/// A letter of a mapping class word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Twist { curve: Curve, inverse: bool },
    /// `w T_c^{±1} w⁻¹`.
    Conjugated { conjugator: Vec<Letter>, curve: Curve, inverse: bool },
}

impl Letter {
    pub fn twist(curve: Curve) -> Self {
        Letter::Twist { curve, inverse: false }
    }

    pub fn twist_inv(curve: Curve) -> Self {
        Letter::Twist { curve, inverse: true }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Letter::Twist { curve, inverse } => Letter::Twist { curve: *curve, inverse: !inverse },
            Letter::Conjugated { conjugator, curve, inverse } => Letter::Conjugated {
                conjugator: conjugator.clone(),
                curve: *curve,
                inverse: !inverse,
            },
        }
    }

    pub fn curve(&self) -> Curve {
        match self {
            Letter::Twist { curve, .. } | Letter::Conjugated { curve, .. } => *curve,
        }
    }

    pub fn is_inverse(&self) -> bool {
        match self {
            Letter::Twist { inverse, .. } | Letter::Conjugated { inverse, .. } => *inverse,
        }
    }

    /// Appends the generator letters this letter stands for.
    fn expand_into(&self, out: &mut Vec<(Curve, bool)>) {
        match self {
            Letter::Twist { curve, inverse } => out.push((*curve, *inverse)),
            Letter::Conjugated { conjugator, curve, inverse } => {
                let start = out.len();
                for l in conjugator {
                    l.expand_into(out);
                }
                let conj: Vec<(Curve, bool)> = out[start..].to_vec();
                out.push((*curve, *inverse));
                out.extend(conj.iter().rev().map(|&(c, inv)| (c, !inv)));
            }
        }
    }

    fn check(&self, genus: usize) -> Result<(), McgError> {
        if !self.curve().exists_in(genus) {
            return Err(McgError::UnknownCurve(self.curve(), genus));
        }
        if let Letter::Conjugated { conjugator, .. } = self {
            conjugator.iter().try_for_each(|l| l.check(genus))?;
        }
        Ok(())
    }
}

fn fmt_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (n, l) in letters.iter().enumerate() {
        if n > 0 {
            write!(f, " ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |inv: bool| if inv { "^-1" } else { "" };
        match self {
            Letter::Twist { curve, inverse } => write!(f, "T{curve}{}", power(*inverse)),
            Letter::Conjugated { conjugator, curve, inverse } => {
                write!(f, "( ")?;
                fmt_letters(f, conjugator)?;
                write!(f, " : T{curve}{} )", power(*inverse))
            }
        }
    }
}

/// A mapping class of `Σ_{g,1}` (`boundary = true`) or `Σ_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClassWord {
    genus: usize,
    boundary: bool,
    letters: Vec<Letter>,
}

impl MappingClassWord {
    pub fn new(genus: usize, boundary: bool, letters: Vec<Letter>) -> Result<Self, McgError> {
        letters.iter().try_for_each(|l| l.check(genus))?;
        Ok(MappingClassWord { genus, boundary, letters })
    }

    pub fn identity(genus: usize, boundary: bool) -> Self {
        MappingClassWord { genus, boundary, letters: Vec::new() }
    }

    /// A word of plain twists; `true` marks an inverse.
    pub fn from_twists(genus: usize, boundary: bool, twists: &[(Curve, bool)]) -> Result<Self, McgError> {
        let letters = twists.iter().map(|&(curve, inverse)| Letter::Twist { curve, inverse }).collect();
        Self::new(genus, boundary, letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary(&self) -> bool {
        self.boundary
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn with_boundary(&self, boundary: bool) -> Self {
        MappingClassWord { boundary, ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        MappingClassWord { letters, ..self.clone() }
    }

    pub fn inverse(&self) -> Self {
        MappingClassWord { letters: self.letters.iter().rev().map(Letter::inverse).collect(), ..self.clone() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        MappingClassWord { letters, ..self.clone() }
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// The flat sequence of generator twists (conjugated letters expanded).
    pub fn expand(&self) -> Vec<(Curve, bool)> {
        let mut out = Vec::new();
        for l in &self.letters {
            l.expand_into(&mut out);
        }
        out
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        fmt_letters(f, &self.letters)
    }
}

/// `(w : T_c^{±1})` as a single letter.
pub fn conjugate_twist(w: &MappingClassWord, curve: Curve, inverse: bool) -> Letter {
    if w.is_empty() {
        Letter::Twist { curve, inverse }
    } else {
        Letter::Conjugated { conjugator: w.letters.clone(), curve, inverse }
    }
}

/// `outer ∘ inner`.
pub fn compose_automorphisms(outer: &[FreeWord], inner: &[FreeWord]) -> Vec<FreeWord> {
    inner.iter().map(|w| w.substitute(outer).expect("matching ranks")).collect()
}

/// Whether `f ∘ g = g ∘ f`, checked generator by generator.
pub fn automorphisms_commute(f: &[FreeWord], g: &[FreeWord]) -> bool {
    f.iter().zip(g).all(|(fx, gx)| gx.substitute(f).ok() == fx.substitute(g).ok())
}

pub fn identity_automorphism(rank: usize) -> Vec<FreeWord> {
    (1..=rank).map(|k| FreeWord::generator(rank, k)).collect()
}

fn word(rank: usize, letters: &[i32]) -> FreeWord {
    FreeWord::new(rank, letters.to_vec()).expect("generator indices within rank")
}

/// Images of the generators under a twist and under its inverse.
fn twist_automorphisms(genus: usize, curve: Curve) -> (Vec<FreeWord>, Vec<FreeWord>) {
    let rank = 2 * genus;
    let mut fwd = identity_automorphism(rank);
    let mut back = identity_automorphism(rank);
    match curve {
        Curve::Alpha(i) => {
            let (a, b) = (2 * i as i32 - 1, 2 * i as i32);
            fwd[b as usize - 1] = word(rank, &[b, -a]);
            back[b as usize - 1] = word(rank, &[b, a]);
        }
        Curve::Beta(i) => {
            let (a, b) = (2 * i as i32 - 1, 2 * i as i32);
            fwd[a as usize - 1] = word(rank, &[a, b]);
            back[a as usize - 1] = word(rank, &[a, -b]);
        }
        Curve::Delta(j) => {
            // δⱼ is freely homotopic to aⱼ bⱼ⁻¹ aⱼ₊₁⁻¹ bⱼ
            let (a, b, aa, bb) = (2 * j as i32 - 1, 2 * j as i32, 2 * j as i32 + 1, 2 * j as i32 + 2);
            let idx = |x: i32| x as usize - 1;
            fwd[idx(b)] = word(rank, &[b, -a, -b, aa, b]);
            fwd[idx(aa)] = word(rank, &[b, -a, -b, aa, b, a, -b]);
            fwd[idx(bb)] = word(rank, &[bb, -aa, b, a, -b]);
            back[idx(b)] = word(rank, &[-aa, b, a]);
            back[idx(aa)] = word(rank, &[-aa, b, a, -b, aa, b, -a, -b, aa]);
            back[idx(bb)] = word(rank, &[bb, b, -a, -b, aa]);
        }
    }
    (fwd, back)
}

/// The `3g - 1` twist generators of a fixed genus.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    genus: usize,
    space: SymplecticSpace,
    generators: Vec<TwistGenerator>,
    index: HashMap<Curve, usize>,
    zeta: FreeWord,
}

impl GeneratorTable {
    pub fn new(genus: usize) -> Result<Self, McgError> {
        if genus < 2 {
            return Err(McgError::BadGenus(genus));
        }
        let space = SymplecticSpace::new(genus);
        let generators: Vec<TwistGenerator> = Curve::all(genus)
            .into_iter()
            .map(|curve| {
                let c = curve.homology_class(space);
                let (automorphism, inverse_automorphism) = twist_automorphisms(genus, curve);
                TwistGenerator {
                    curve,
                    matrix: space.transvection(&c, 1),
                    inverse_matrix: space.transvection(&c, -1),
                    homology_class: c,
                    automorphism,
                    inverse_automorphism,
                }
            })
            .collect();
        let index = generators.iter().enumerate().map(|(n, g)| (g.curve, n)).collect();
        Ok(GeneratorTable { genus, space, generators, index, zeta: FreeWord::surface_relator(genus) })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn generators(&self) -> &[TwistGenerator] {
        &self.generators
    }

    pub fn zeta(&self) -> &FreeWord {
        &self.zeta
    }

    pub fn get(&self, curve: Curve) -> Result<&TwistGenerator, McgError> {
        self.index.get(&curve).map(|&n| &self.generators[n]).ok_or(McgError::UnknownCurve(curve, self.genus))
    }

    fn check_word(&self, w: &MappingClassWord) -> Result<(), McgError> {
        if w.genus != self.genus {
            return Err(McgError::GenusMismatch(self.genus, w.genus));
        }
        Ok(())
    }

    pub fn symplectic_action(&self, w: &MappingClassWord) -> Result<LatticeMatrix, McgError> {
        self.check_word(w)?;
        let mut m = LatticeMatrix::identity(self.rank());
        for (curve, inv) in w.expand() {
            let g = self.get(curve)?;
            m = m.mul(if inv { &g.inverse_matrix } else { &g.matrix }).expect("square matrices");
        }
        Ok(m)
    }

    pub fn is_torelli(&self, w: &MappingClassWord) -> Result<bool, McgError> {
        Ok(self.symplectic_action(w)?.is_identity())
    }

    /// Homology class of the twist curve of a letter.
    pub fn letter_class(&self, l: &Letter) -> Result<LatticeVector, McgError> {
        let c = self.get(l.curve())?.homology_class.clone();
        match l {
            Letter::Twist { .. } => Ok(c),
            Letter::Conjugated { conjugator, .. } => {
                let w = MappingClassWord::new(self.genus, true, conjugator.clone())?;
                Ok(self.symplectic_action(&w)?.mul_vec(&c).expect("dimensions agree"))
            }
        }
    }

    fn generator_images(&self, curve: Curve, inverse: bool) -> Result<&[FreeWord], McgError> {
        let g = self.get(curve)?;
        Ok(if inverse { &g.inverse_automorphism } else { &g.automorphism })
    }

    /// Automorphism of `π₁(Σ_{g,1})` given by the images of `x₁, …, x_{2g}`.
    pub fn automorphism_of(&self, w: &MappingClassWord) -> Result<Vec<FreeWord>, McgError> {
        self.check_word(w)?;
        if !w.boundary {
            return Err(McgError::ClosedSurface);
        }
        self.automorphism_unchecked(w)
    }

    fn automorphism_unchecked(&self, w: &MappingClassWord) -> Result<Vec<FreeWord>, McgError> {
        let mut cur = identity_automorphism(self.rank());
        for (curve, inv) in w.expand() {
            cur = compose_automorphisms(&cur, self.generator_images(curve, inv)?);
        }
        Ok(cur)
    }

    /// Action on `F/γ₃F`; valid for both surface types since the Torelli
    /// computations downstream only use it through `Σ_{g,1}` lifts.
    pub fn nil_action(&self, w: &MappingClassWord) -> Result<NilEndo, McgError> {
        self.check_word(w)?;
        let mut cur = NilEndo::identity(self.rank());
        for (curve, inv) in w.expand() {
            cur = cur.compose_words(self.generator_images(curve, inv)?)?;
        }
        Ok(cur)
    }

    /// Whether two words induce the same automorphism of `π₁(Σ_{g,1})`.
    pub fn same_automorphism(&self, u: &MappingClassWord, v: &MappingClassWord) -> Result<bool, McgError> {
        Ok(self.automorphism_unchecked(u)? == self.automorphism_unchecked(v)?)
    }

    fn twist(&self, c: Curve) -> MappingClassWord {
        MappingClassWord { genus: self.genus, boundary: true, letters: vec![Letter::twist(c)] }
    }

    /// Exact identities among generators: per-generator certificates,
    /// commutation of disjoint pairs, braid relations of chain neighbours,
    /// the 3-chain relation on each pair of adjacent handles and the
    /// boundary chain relation.
    pub fn verify_standard_relations(&self) -> Vec<RelationCheck> {
        let mut out = Vec::new();
        let rank = self.rank();
        let id = identity_automorphism(rank);
        for g in &self.generators {
            let name = format!("generator.{}", g.curve);
            let zeta_ok = self.zeta.substitute(&g.automorphism).map(|z| z == self.zeta).unwrap_or(false);
            out.push(RelationCheck::new(format!("{name}.fixes_zeta"), zeta_ok));
            let abel_ok = g.automorphism.iter().enumerate().all(|(k, img)| img.abelianize() == g.matrix.column(k));
            out.push(RelationCheck::new(format!("{name}.transvection"), abel_ok));
            let inv_ok = compose_automorphisms(&g.automorphism, &g.inverse_automorphism) == id
                && compose_automorphisms(&g.inverse_automorphism, &g.automorphism) == id;
            out.push(RelationCheck::new(format!("{name}.inverse"), inv_ok));
        }
        let curves = Curve::all(self.genus);
        for (n, &c1) in curves.iter().enumerate() {
            for &c2 in &curves[n + 1..] {
                let p = self.space.pairing(&c1.homology_class(self.space), &c2.homology_class(self.space));
                let (t1, t2) = (self.twist(c1), self.twist(c2));
                let (name, lhs, rhs) = if p == 0.into() {
                    (format!("commute.{c1}.{c2}"), t1.mul(&t2), t2.mul(&t1))
                } else {
                    (format!("braid.{c1}.{c2}"), t1.mul(&t2).mul(&t1), t2.mul(&t1).mul(&t2))
                };
                let ok = self.same_automorphism(&lhs, &rhs).unwrap_or(false);
                out.push(RelationCheck::new(name, ok));
            }
        }
        for j in 1..self.genus {
            let (lhs, rhs) = three_chain_relation(self.genus, j);
            let ok = self.same_automorphism(&lhs, &rhs).unwrap_or(false);
            out.push(RelationCheck::new(format!("three_chain.{j}"), ok));
        }
        let boundary = boundary_twist_word(self.genus);
        let conj_zeta: Vec<FreeWord> =
            id.iter().map(|x| self.zeta.mul(x).mul(&self.zeta.inverse())).collect();
        let ok = self.automorphism_unchecked(&boundary).map(|a| a == conj_zeta).unwrap_or(false);
        out.push(RelationCheck::new("boundary_chain", ok));
        out
    }

    /// Conjugated twists `(w : T_c)` for reduced `w` with `|w| ≤ max_len`,
    /// one per distinct automorphism, in enumeration order.
    pub fn conjugated_twists(&self, max_len: usize) -> Result<Vec<ConjugatedTwist>, McgError> {
        let curves = Curve::all(self.genus);
        let alphabet: Vec<Letter> = curves
            .iter()
            .flat_map(|&c| [Letter::twist(c), Letter::twist_inv(c)])
            .collect();
        let mut conjugators: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in &alphabet {
                    if w.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l.clone());
                    next.push(v);
                }
            }
            conjugators.extend(next.iter().cloned());
            frontier = next;
        }
        let mut seen: HashMap<Vec<FreeWord>, ()> = HashMap::new();
        let mut out = Vec::new();
        for conj in conjugators {
            let w = MappingClassWord { genus: self.genus, boundary: true, letters: conj.clone() };
            let wa = self.automorphism_unchecked(&w)?;
            let wa_inv = self.automorphism_unchecked(&w.inverse())?;
            for &c in &curves {
                let t = compose_automorphisms(&compose_automorphisms(&wa, self.generator_images(c, false)?), &wa_inv);
                if seen.insert(t.clone(), ()).is_some() {
                    continue;
                }
                let class = self.symplectic_action(&w)?.mul_vec(&c.homology_class(self.space)).expect("dims");
                out.push(ConjugatedTwist { letter: conjugate_twist(&w, c, false), class, automorphism: t });
            }
        }
        Ok(out)
    }

    /// Bounding-pair candidates `T_x T_y⁻¹` built from conjugated twists with
    /// `|w| ≤ max_len`: the two twists are distinct, commute exactly as
    /// automorphisms (so the curves are disjoint and not isotopic) and have
    /// equal homology class up to sign.
    pub fn bp_search(&self, max_len: usize) -> Result<Vec<BpCandidate>, McgError> {
        let twists = self.conjugated_twists(max_len)?;
        let mut groups: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
        for (n, t) in twists.iter().enumerate() {
            groups.entry(normalize_sign(&t.class)).or_default().push(n);
        }
        let mut out = Vec::new();
        for members in groups.values() {
            for (p, &i) in members.iter().enumerate() {
                for &j in &members[p + 1..] {
                    let (x, y) = (&twists[i], &twists[j]);
                    if !automorphisms_commute(&x.automorphism, &y.automorphism) {
                        continue;
                    }
                    let word = MappingClassWord {
                        genus: self.genus,
                        boundary: true,
                        letters: vec![x.letter.clone(), y.letter.inverse()],
                    };
                    out.push(BpCandidate { word, x_class: x.class.clone() });
                }
            }
        }
        Ok(out)
    }
}

/// Sign-normalized key: the first nonzero coordinate is made positive.
fn normalize_sign(v: &LatticeVector) -> Vec<String> {
    let flip = v.coords().iter().find(|c| **c != 0.into()).is_some_and(|c| *c < 0.into());
    let v = if flip { -v } else { v.clone() };
    v.coords().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug)]
pub struct ConjugatedTwist {
    pub letter: Letter,
    pub class: LatticeVector,
    pub automorphism: Vec<FreeWord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpCandidate {
    pub word: MappingClassWord,
    pub x_class: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

impl RelationCheck {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        RelationCheck { name: name.into(), passed }
    }
}

fn twists(genus: usize, boundary: bool, curves: &[Curve]) -> MappingClassWord {
    MappingClassWord::from_twists(genus, boundary, &curves.iter().map(|&c| (c, false)).collect::<Vec<_>>())
        .expect("curves exist")
}

/// `(T_{c₁} ⋯ T_{c_{2k}})^{4k+2}` for the chain `α₁, β₁, δ₁, …, β_k`: the
/// twist about the separating curve cutting off the first `k` handles.
pub fn separating_twist_word(genus: usize, k: usize) -> Result<MappingClassWord, McgError> {
    if genus < 2 {
        return Err(McgError::BadGenus(genus));
    }
    if k < 1 || k >= genus {
        return Err(McgError::OutOfRange(format!("separating genus k = {k} needs 1 <= k < {genus}")));
    }
    Ok(twists(genus, true, &Curve::chain(2 * k)).pow(4 * k as i64 + 2))
}

/// The boundary twist `T_∂` as a chain-relation word.
pub fn boundary_twist_word(genus: usize) -> MappingClassWord {
    twists(genus, true, &Curve::chain(2 * genus)).pow(4 * genus as i64 + 2)
}

/// The 3-chain relation on handles `j, j+1`:
/// `(T_{αⱼ} T_{βⱼ} T_{δⱼ})⁴ = T_{αⱼ₊₁} · (w : T_{δⱼ})`, the product of the
/// twists about the two boundary curves of the chain neighbourhood.
pub fn three_chain_relation(genus: usize, j: usize) -> (MappingClassWord, MappingClassWord) {
    let s = j - 1;
    let c = |curve: Curve| curve.shifted(s);
    let lhs = twists(genus, true, &[c(Curve::Alpha(1)), c(Curve::Beta(1)), c(Curve::Delta(1))]).pow(4);
    let conj = vec![
        Letter::twist(c(Curve::Beta(2))),
        Letter::twist_inv(c(Curve::Alpha(2))),
        Letter::twist(c(Curve::Delta(1))),
        Letter::twist(c(Curve::Beta(1))),
        Letter::twist(c(Curve::Alpha(1))),
        Letter::twist(c(Curve::Alpha(1))),
        Letter::twist(c(Curve::Beta(1))),
        Letter::twist_inv(c(Curve::Beta(2))),
    ];
    let rhs = MappingClassWord {
        genus,
        boundary: true,
        letters: vec![
            Letter::twist(c(Curve::Alpha(2))),
            Letter::Conjugated { conjugator: conj, curve: c(Curve::Delta(1)), inverse: false },
        ],
    };
    (lhs, rhs)
}

/// `T_{αⱼ₊₁}² (T_{αⱼ} T_{βⱼ} T_{δⱼ})⁻⁴`, a bounding pair map whose curves
/// split off a genus-1 subsurface containing handle `j`.
pub fn chain_bp_word(genus: usize, j: usize) -> MappingClassWord {
    let (lhs, _) = three_chain_relation(genus, j);
    twists(genus, true, &[Curve::Alpha(j + 1), Curve::Alpha(j + 1)]).mul(&lhs.inverse())
}

/// `T_{αⱼ}² (T_{δⱼ} T_{βⱼ₊₁} T_{αⱼ₊₁})⁻⁴`, the mirror image of
/// [`chain_bp_word`] with the roles of the two handles exchanged.
pub fn mirrored_chain_bp_word(genus: usize, j: usize) -> MappingClassWord {
    let chain = twists(genus, true, &[Curve::Delta(j), Curve::Beta(j + 1), Curve::Alpha(j + 1)]).pow(4);
    twists(genus, true, &[Curve::Alpha(j), Curve::Alpha(j)]).mul(&chain.inverse())
}
