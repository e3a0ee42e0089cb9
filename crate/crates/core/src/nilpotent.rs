//! Free groups and their class-2 nilpotent quotients `F/γ₃F`.
//!
//! Elements of `F/γ₃F` are kept in the collected normal form
//! `x₁^{u₁} ⋯ x_n^{u_n} · ∏_{i<j} [xᵢ, xⱼ]^{α_{ij}}` with `[x, y] = x y x⁻¹ y⁻¹`.
//! Moving `xᵢ^{b}` left past `xⱼ^{a}` (`i < j`) costs `[xᵢ, xⱼ]^{-ab}`, which
//! gives the group law
//!
//! ```text
//! (u, α)(v, β) = (u + v, α + β + c(u, v)),   c(u, v)_{ij} = -vᵢ uⱼ  (i < j).
//! ```
//!
//! The commutator coordinates `α_{ij}` are indexed like the degree-2 wedge
//! basis, and under that identification `[(u, 0), (v, 0)] = (0, u ∧ v)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exterior::{binomial, subset_rank};
use crate::lattice::LatticeVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("generator index {index} outside [1, {rank}]")]
    BadGenerator { index: i32, rank: usize },
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("coordinate vector has dimension {found}, expected {expected}")]
    BadCoordinates { expected: usize, found: usize },
}

/// A word in the free group on `x₁, …, x_rank`; letter `k` is `x_k` and
/// `-k` is `x_k⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(rank: usize, letters: Vec<i32>) -> Result<Self, NilError> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > rank) {
            return Err(NilError::BadGenerator { index: bad, rank });
        }
        Ok(FreeWord { rank, letters })
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// `x_k`, 1-based.
    pub fn generator(rank: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= rank, "generator x{k} outside rank {rank}");
        FreeWord { rank, letters: vec![k as i32] }
    }

    /// `ζ = [x₁, x₂][x₃, x₄] ⋯ [x_{2g-1}, x_{2g}]`.
    pub fn surface_relator(genus: usize) -> Self {
        let rank = 2 * genus;
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 0..genus as i32 {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            letters.extend_from_slice(&[a, b, -a, -b]);
        }
        FreeWord { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.letters.clone();
        for &l in &other.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { rank: self.rank, letters: out }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != -w[1])
    }

    /// Exponent sums, i.e. the image in `Z^rank`.
    pub fn abelianize(&self) -> LatticeVector {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        LatticeVector::from_i64s(&v)
    }

    /// Substitute `images[k-1]` for each `x_k`.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord, NilError> {
        if images.len() != self.rank {
            return Err(NilError::ImageCount { expected: self.rank, found: images.len() });
        }
        let target_rank = images.first().map_or(self.rank, FreeWord::rank);
        let inverses: Vec<FreeWord> = images.iter().map(FreeWord::inverse).collect();
        let mut out = FreeWord::identity(target_rank);
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            out = out.mul(if l > 0 { &images[k] } else { &inverses[k] });
        }
        Ok(out)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (n, &l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &FreeWord) -> FreeWord {
    FreeWord::identity(w.rank).mul(w)
}

/// An element `(u, α)` of `F/γ₃F` in collected normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilElement {
    rank: usize,
    abelian: LatticeVector,
    comm: LatticeVector,
}

impl NilElement {
    pub fn identity(rank: usize) -> Self {
        NilElement {
            rank,
            abelian: LatticeVector::zeros(rank),
            comm: LatticeVector::zeros(binomial(rank, 2)),
        }
    }

    pub fn from_parts(rank: usize, abelian: LatticeVector, comm: LatticeVector) -> Result<Self, NilError> {
        if abelian.dim() != rank {
            return Err(NilError::BadCoordinates { expected: rank, found: abelian.dim() });
        }
        if comm.dim() != binomial(rank, 2) {
            return Err(NilError::BadCoordinates { expected: binomial(rank, 2), found: comm.dim() });
        }
        Ok(NilElement { rank, abelian, comm })
    }

    /// Image of `x_k`, 1-based.
    pub fn generator(rank: usize, k: usize) -> Self {
        let mut e = Self::identity(rank);
        e.abelian.coords_mut()[k - 1] = BigInt::one();
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn abelian(&self) -> &LatticeVector {
        &self.abelian
    }

    /// Coordinates in the `[xᵢ, xⱼ]`, `i < j`, basis (lexicographic).
    pub fn comm(&self) -> &LatticeVector {
        &self.comm
    }

    pub fn is_identity(&self) -> bool {
        self.abelian.is_zero() && self.comm.is_zero()
    }

    /// Whether the element lies in `γ₂F/γ₃F`.
    pub fn is_central(&self) -> bool {
        self.abelian.is_zero()
    }

    fn check_rank(&self, other: &Self) -> Result<(), NilError> {
        if self.rank != other.rank {
            return Err(NilError::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    /// Adds `c(u, v)` to `acc`.
    fn add_cocycle(acc: &mut LatticeVector, rank: usize, u: &LatticeVector, v: &LatticeVector) {
        let (u, v) = (u.coords(), v.coords());
        let coords = acc.coords_mut();
        for i in 0..rank {
            if v[i].is_zero() {
                continue;
            }
            for j in i + 1..rank {
                if !u[j].is_zero() {
                    coords[subset_rank(rank, &[i, j])] -= &v[i] * &u[j];
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NilError> {
        self.check_rank(other)?;
        let mut comm = &self.comm + &other.comm;
        Self::add_cocycle(&mut comm, self.rank, &self.abelian, &other.abelian);
        Ok(NilElement { rank: self.rank, abelian: &self.abelian + &other.abelian, comm })
    }

    pub fn inv(&self) -> Self {
        let mut comm = -&self.comm;
        Self::add_cocycle(&mut comm, self.rank, &self.abelian, &self.abelian);
        NilElement { rank: self.rank, abelian: -&self.abelian, comm }
    }

    /// `(u, α)ⁿ = (nu, nα + n(n-1)/2 · c(u, u))`.
    pub fn pow(&self, n: &BigInt) -> Self {
        let mut cuu = LatticeVector::zeros(self.comm.dim());
        Self::add_cocycle(&mut cuu, self.rank, &self.abelian, &self.abelian);
        let half = n * (n - BigInt::one()) / BigInt::from(2);
        let mut comm = self.comm.scale(n);
        comm.add_scaled(&cuu, &half);
        NilElement { rank: self.rank, abelian: self.abelian.scale(n), comm }
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`, which only depends on the abelian parts.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, NilError> {
        a.check_rank(b)?;
        let mut comm = LatticeVector::zeros(a.comm.dim());
        let (u, v) = (a.abelian.coords(), b.abelian.coords());
        let coords = comm.coords_mut();
        for i in 0..a.rank {
            for j in i + 1..a.rank {
                let c = &u[i] * &v[j] - &u[j] * &v[i];
                if !c.is_zero() {
                    coords[subset_rank(a.rank, &[i, j])] = c;
                }
            }
        }
        Ok(NilElement { rank: a.rank, abelian: LatticeVector::zeros(a.rank), comm })
    }
}

impl fmt::Display for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.abelian, self.comm)
    }
}

/// Image of a word in `F/γ₃F`.
pub fn nil_project(w: &FreeWord) -> NilElement {
    let mut acc = NilElement::identity(w.rank);
    for &l in &w.letters {
        let k = l.unsigned_abs() as usize - 1;
        let mut g = NilElement::identity(w.rank);
        g.abelian.coords_mut()[k] = BigInt::from(l.signum());
        acc = acc.mul(&g).expect("same rank");
    }
    acc
}

/// An endomorphism of `F/γ₃F` given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilEndo {
    rank: usize,
    images: Vec<NilElement>,
}

impl NilEndo {
    pub fn identity(rank: usize) -> Self {
        NilEndo { rank, images: (1..=rank).map(|k| NilElement::generator(rank, k)).collect() }
    }

    pub fn from_words(images: &[FreeWord]) -> Result<Self, NilError> {
        let rank = images.len();
        if let Some(w) = images.iter().find(|w| w.rank != rank) {
            return Err(NilError::RankMismatch { expected: rank, found: w.rank });
        }
        Ok(NilEndo { rank, images: images.iter().map(nil_project).collect() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[NilElement] {
        &self.images
    }

    pub fn apply_word(&self, w: &FreeWord) -> Result<NilElement, NilError> {
        if w.rank != self.rank {
            return Err(NilError::RankMismatch { expected: self.rank, found: w.rank });
        }
        let inverses: Vec<NilElement> = self.images.iter().map(NilElement::inv).collect();
        let mut acc = NilElement::identity(self.rank);
        for &l in &w.letters {
            let k = l.unsigned_abs() as usize - 1;
            acc = acc.mul(if l > 0 { &self.images[k] } else { &inverses[k] })?;
        }
        Ok(acc)
    }

    /// Evaluates the normal form `∏ φ(xₖ)^{uₖ} · ∏ [φ(xᵢ), φ(xⱼ)]^{α_{ij}}`.
    pub fn apply(&self, e: &NilElement) -> Result<NilElement, NilError> {
        if e.rank != self.rank {
            return Err(NilError::RankMismatch { expected: self.rank, found: e.rank });
        }
        let mut acc = NilElement::identity(self.rank);
        for (k, u) in e.abelian.coords().iter().enumerate() {
            if !u.is_zero() {
                acc = acc.mul(&self.images[k].pow(u))?;
            }
        }
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let a = &e.comm.coords()[subset_rank(self.rank, &[i, j])];
                if !a.is_zero() {
                    let c = NilElement::commutator(&self.images[i], &self.images[j])?;
                    acc = acc.mul(&c.pow(a))?;
                }
            }
        }
        Ok(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, NilError> {
        if other.rank != self.rank {
            return Err(NilError::RankMismatch { expected: self.rank, found: other.rank });
        }
        let images = other.images.iter().map(|x| self.apply(x)).collect::<Result<_, _>>()?;
        Ok(NilEndo { rank: self.rank, images })
    }

    /// `self ∘ (xₖ ↦ words[k])`, evaluated word by word.
    pub fn compose_words(&self, words: &[FreeWord]) -> Result<Self, NilError> {
        if words.len() != self.rank {
            return Err(NilError::ImageCount { expected: self.rank, found: words.len() });
        }
        let images = words.iter().map(|w| self.apply_word(w)).collect::<Result<_, _>>()?;
        Ok(NilEndo { rank: self.rank, images })
    }
}

/// Evaluates the endomorphism `x_k ↦ images[k-1]` on an element of `F/γ₃F`.
pub fn apply_endo_nil(images: &[FreeWord], e: &NilElement) -> Result<NilElement, NilError> {
    if images.len() != e.rank {
        return Err(NilError::ImageCount { expected: e.rank, found: images.len() });
    }
    NilEndo::from_words(images)?.apply(e)
}

/// Evaluates the endomorphism `x_k ↦ images[k-1]` on a word.
pub fn apply_endo_nil_word(images: &[FreeWord], w: &FreeWord) -> Result<NilElement, NilError> {
    if images.len() != w.rank {
        return Err(NilError::ImageCount { expected: w.rank, found: images.len() });
    }
    NilEndo::from_words(images)?.apply_word(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, letters: &[i32]) -> FreeWord {
        FreeWord::new(rank, letters.to_vec()).unwrap()
    }

    type H3 = [[i64; 3]; 3];

    fn h3_mul(a: &H3, b: &H3) -> H3 {
        let mut c = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }

    /// Collection oracle: `α_{ij}` read off the Heisenberg representation
    /// sending `xᵢ`, `xⱼ` to the elementary unipotents and the rest to 1.
    fn heisenberg_comm(word: &FreeWord, i: usize, j: usize) -> i64 {
        let mut m: H3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for &l in word.letters() {
            let k = l.unsigned_abs() as usize - 1;
            let s = i64::from(l.signum());
            let g: H3 = if k == i {
                [[1, s, 0], [0, 1, 0], [0, 0, 1]]
            } else if k == j {
                [[1, 0, 0], [0, 1, s], [0, 0, 1]]
            } else {
                continue;
            };
            m = h3_mul(&m, &g);
        }
        m[0][2] - m[0][1] * m[1][2]
    }

    fn assert_matches_oracle(word: &FreeWord) {
        let e = nil_project(word);
        assert_eq!(e.abelian(), &word.abelianize());
        let rank = word.rank();
        for i in 0..rank {
            for j in i + 1..rank {
                let got = &e.comm().coords()[subset_rank(rank, &[i, j])];
                assert_eq!(got, &BigInt::from(heisenberg_comm(word, i, j)), "word {word}, pair ({i},{j})");
            }
        }
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce(&w(2, &[1, -1])).is_empty());
        assert_eq!(free_reduce(&w(2, &[1, 2, -2, 1])), w(2, &[1, 1]));
        assert_eq!(free_reduce(&w(2, &[1, 2, 1])), w(2, &[1, 2, 1]));
        assert!(free_reduce(&w(2, &[1, 2, -2, -1])).is_empty());
        assert!(FreeWord::new(2, vec![3]).is_err());
        assert!(FreeWord::new(2, vec![0]).is_err());
    }

    #[test]
    fn projection_examples() {
        let x1x2 = nil_project(&w(2, &[1, 2]));
        let x2x1 = nil_project(&w(2, &[2, 1]));
        assert_eq!(x1x2.abelian(), &LatticeVector::from_i64s(&[1, 1]));
        assert!(x1x2.comm().is_zero());
        assert_eq!(x2x1.comm(), &LatticeVector::from_i64s(&[-1]));
        let c = nil_project(&FreeWord::commutator(&FreeWord::generator(2, 1), &FreeWord::generator(2, 2)));
        assert!(c.abelian().is_zero());
        assert_eq!(c.comm(), &LatticeVector::from_i64s(&[1]));
        assert!(nil_project(&FreeWord::identity(4)).is_identity());
    }

    #[test]
    fn collection_matches_oracle_on_short_words() {
        let alphabet = [1, -1, 2, -2, 3, -3, 4, -4];
        let mut words = vec![Vec::new()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for p in &words {
                for &l in &alphabet {
                    let mut q: Vec<i32> = p.clone();
                    q.push(l);
                    next.push(q);
                }
            }
            for p in &words {
                assert_matches_oracle(&w(4, p));
            }
            words = next;
        }
        for p in &words {
            assert_matches_oracle(&w(4, p));
        }
    }

    #[test]
    fn group_operations() {
        let x1 = NilElement::generator(4, 1);
        let x2 = NilElement::generator(4, 2);
        let id = NilElement::identity(4);
        assert_eq!(id.mul(&x1).unwrap(), x1);
        let c = NilElement::commutator(&x1, &x2).unwrap();
        assert_eq!(c.comm().coords()[0], BigInt::one());
        assert!(NilElement::commutator(&x1, &x1).unwrap().is_identity());
        assert!(x1.mul(&NilElement::generator(2, 1)).is_err());
        let a = nil_project(&w(4, &[1, 3, -2, 4, 4, -1]));
        assert!(a.mul(&a.inv()).unwrap().is_identity());
        assert!(a.inv().mul(&a).unwrap().is_identity());
        let cube = a.mul(&a).unwrap().mul(&a).unwrap();
        assert_eq!(a.pow(&BigInt::from(3)), cube);
        assert_eq!(a.pow(&BigInt::from(-2)), a.inv().mul(&a.inv()).unwrap());
    }

    #[test]
    fn inner_automorphism_example() {
        // conjugation by x1 sends x2 to x1 x2 x1^-1 = x2 [x2^-1, x1] ≡ x2 [x1, x2]
        let rank = 2;
        let x1 = FreeWord::generator(rank, 1);
        let images: Vec<FreeWord> =
            (1..=rank).map(|k| x1.mul(&FreeWord::generator(rank, k)).mul(&x1.inverse())).collect();
        let img = apply_endo_nil(&images, &NilElement::generator(rank, 2)).unwrap();
        assert_eq!(img.abelian(), &LatticeVector::from_i64s(&[0, 1]));
        assert_eq!(img.comm(), &LatticeVector::from_i64s(&[1]));
        let id: Vec<FreeWord> = (1..=rank).map(|k| FreeWord::generator(rank, k)).collect();
        let e = nil_project(&w(2, &[1, 2, 2, -1, 1]));
        assert_eq!(apply_endo_nil(&id, &e).unwrap(), e);
        assert!(apply_endo_nil(&id[..1], &e).is_err());
    }

    #[test]
    fn surface_relator_is_central() {
        let z = nil_project(&FreeWord::surface_relator(3));
        assert!(z.is_central());
        let omega: Vec<i64> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .map(|(i, j)| i64::from(j == i + 1 && i % 2 == 0))
            .collect();
        assert_eq!(z.comm(), &LatticeVector::from_i64s(&omega));
    }
}
