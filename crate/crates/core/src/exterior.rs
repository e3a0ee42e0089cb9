//! The symplectic lattice `H = H₁(Σ_g; Z)` and its exterior powers.
//!
//! Coordinates of `H` follow the order `a₁, b₁, a₂, b₂, …, a_g, b_g`, so the
//! basis vector with index `2(i-1)` is `aᵢ` and `2(i-1)+1` is `bᵢ`. The
//! intersection pairing satisfies `i(aᵢ, bᵢ) = 1 = -i(bᵢ, aᵢ)` and vanishes on
//! every other pair of basis vectors.
//!
//! `∧ᵏH` uses the basis `e_{s₁} ∧ … ∧ e_{s_k}` for `s₁ < … < s_k`, ordered
//! lexicographically.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    self, LatticeError, LatticeMatrix, LatticeVector, QuotientCoords, QuotientStructure,
};

pub const MAX_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("wedge degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeOverflow(usize),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("elements live in genus {0} and genus {1}")]
    GenusMismatch(usize, usize),
    #[error("vector {0} is not primitive")]
    NotPrimitive(LatticeVector),
    #[error("vectors do not span a rank 2 direct summand")]
    NotSummand,
    #[error("algebraic intersection {0} outside [0, 1]")]
    BadPairing(BigInt),
    #[error("invalid genus arguments: {0}")]
    BadGenus(String),
    #[error("linear algebra fact failed: {0}")]
    LemmaViolation(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost slot that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a strictly increasing subset among the
/// `k`-subsets of `0..n`.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut start = 0;
    for (i, &s) in subset.iter().enumerate() {
        for j in start..s {
            rank += binomial(n - 1 - j, k - 1 - i);
        }
        start = s + 1;
    }
    rank
}

/// Sorts `indices` and returns the sign of the sorting permutation, or
/// `None` if an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// `H₁(Σ_g)` with its standard symplectic basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        SymplecticSpace { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn a(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.dim(), 2 * (i - 1))
    }

    pub fn b(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.dim(), 2 * (i - 1) + 1)
    }

    /// `a3`, `b1`, … for a coordinate index.
    pub fn label(&self, p: usize) -> String {
        let kind = if p.is_multiple_of(2) { 'a' } else { 'b' };
        format!("{kind}{}", p / 2 + 1)
    }

    pub fn parse_label(&self, s: &str) -> Option<usize> {
        let (kind, rest) = s.split_at(1.min(s.len()));
        let i: usize = rest.parse().ok()?;
        if i == 0 || i > self.genus {
            return None;
        }
        match kind {
            "a" => Some(2 * (i - 1)),
            "b" => Some(2 * (i - 1) + 1),
            _ => None,
        }
    }

    /// Algebraic intersection `i(e_p, e_q)` of two basis vectors.
    pub fn basis_pairing(p: usize, q: usize) -> i64 {
        if p / 2 != q / 2 || p == q {
            0
        } else if p.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> BigInt {
        assert_eq!(u.dim(), self.dim());
        assert_eq!(v.dim(), self.dim());
        let (u, v) = (u.coords(), v.coords());
        (0..self.genus).map(|i| &u[2 * i] * &v[2 * i + 1] - &u[2 * i + 1] * &v[2 * i]).sum()
    }

    pub fn intersection_form(&self) -> LatticeMatrix {
        let n = self.dim();
        let mut m = LatticeMatrix::zeros(n, n);
        for p in 0..n {
            for q in 0..n {
                m.set(p, q, BigInt::from(Self::basis_pairing(p, q)));
            }
        }
        m
    }

    /// The vector `d(e_p*)` with `i(d(e_p*), v) = v_p` for all `v`.
    pub fn dual_basis_vector(&self, p: usize) -> LatticeVector {
        if p.is_multiple_of(2) {
            // i(-b, a) = 1
            -&LatticeVector::unit(self.dim(), p + 1)
        } else {
            LatticeVector::unit(self.dim(), p - 1)
        }
    }

    /// Whether `m` preserves the intersection form: `mᵀ Ω m = Ω`.
    pub fn preserves_form(&self, m: &LatticeMatrix) -> bool {
        let omega = self.intersection_form();
        match m.transpose().mul(&omega).and_then(|x| x.mul(m)) {
            Ok(p) => p == omega,
            Err(_) => false,
        }
    }

    /// The symplectic transvection `v ↦ v + k·i(v, c)·c`.
    pub fn transvection(&self, c: &LatticeVector, k: i64) -> LatticeMatrix {
        let n = self.dim();
        let k = BigInt::from(k);
        let mut m = LatticeMatrix::identity(n);
        for q in 0..n {
            let pq = self.pairing(&LatticeVector::unit(n, q), c);
            if pq.is_zero() {
                continue;
            }
            for p in 0..n {
                let v = m.get(p, q) + &k * &pq * &c.coords()[p];
                m.set(p, q, v);
            }
        }
        m
    }
}

/// An element of `∧ᵏH` in lexicographic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    genus: usize,
    degree: usize,
    coords: LatticeVector,
}

impl WedgeElement {
    pub fn zero(space: SymplecticSpace, degree: usize) -> Self {
        WedgeElement {
            genus: space.genus,
            degree,
            coords: LatticeVector::zeros(binomial(space.dim(), degree)),
        }
    }

    pub fn from_coords(space: SymplecticSpace, degree: usize, coords: LatticeVector) -> Result<Self, ExteriorError> {
        let expected = binomial(space.dim(), degree);
        if coords.dim() != expected {
            return Err(LatticeError::DimensionMismatch { expected, found: coords.dim() }.into());
        }
        if degree > MAX_DEGREE {
            return Err(ExteriorError::DegreeOverflow(degree));
        }
        Ok(WedgeElement { genus: space.genus, degree, coords })
    }

    pub fn vector(space: SymplecticSpace, v: LatticeVector) -> Result<Self, ExteriorError> {
        Self::from_coords(space, 1, v)
    }

    /// `±e_{s₁} ∧ … ∧ e_{s_k}` for an arbitrary ordering of distinct indices;
    /// zero when an index repeats.
    pub fn basis(space: SymplecticSpace, indices: &[usize]) -> Self {
        let mut w = Self::zero(space, indices.len());
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            let r = subset_rank(space.dim(), &sorted);
            w.coords.coords_mut()[r] = BigInt::from(sign);
        }
        w
    }

    pub fn space(&self) -> SymplecticSpace {
        SymplecticSpace { genus: self.genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &LatticeVector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Nonzero terms as (sorted index set, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        subsets(self.space().dim(), self.degree)
            .into_iter()
            .zip(self.coords.coords())
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s, c.clone()))
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.genus != other.genus {
            return Err(ExteriorError::GenusMismatch(self.genus, other.genus));
        }
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same(other)?;
        Ok(WedgeElement { coords: &self.coords + &other.coords, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same(other)?;
        Ok(WedgeElement { coords: &self.coords - &other.coords, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        WedgeElement { coords: -&self.coords, ..self.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        WedgeElement { coords: self.coords.scale(k), ..self.clone() }
    }

    /// The graded-antisymmetric product.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        if self.genus != other.genus {
            return Err(ExteriorError::GenusMismatch(self.genus, other.genus));
        }
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(ExteriorError::DegreeOverflow(degree));
        }
        let space = self.space();
        let mut out = Self::zero(space, degree);
        let rhs = other.terms();
        for (s, c) in self.terms() {
            for (t, d) in &rhs {
                let joined: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
                if let Some((sorted, sign)) = sort_with_sign(&joined) {
                    let r = subset_rank(space.dim(), &sorted);
                    out.coords.coords_mut()[r] += &c * d * sign;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space();
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, c)) in terms.iter().enumerate() {
            let name: Vec<String> = s.iter().map(|&p| space.label(p)).collect();
            let name = name.join("^");
            let mag = c.abs();
            let sep = match (n, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            if mag.is_one() {
                write!(f, "{sep}{name}")?;
            } else {
                write!(f, "{sep}{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

/// `ω = a₁∧b₁ + … + a_g∧b_g`.
pub fn canonical_element(space: SymplecticSpace) -> WedgeElement {
    let mut w = WedgeElement::zero(space, 2);
    for i in 0..space.genus() {
        let r = subset_rank(space.dim(), &[2 * i, 2 * i + 1]);
        w.coords.coords_mut()[r] = BigInt::one();
    }
    w
}

/// Canonical element of the sub-symplectic lattice spanned by the listed
/// handles (1-based).
pub fn partial_canonical_element(space: SymplecticSpace, handles: &[usize]) -> WedgeElement {
    let mut w = WedgeElement::zero(space, 2);
    for &i in handles {
        let r = subset_rank(space.dim(), &[2 * (i - 1), 2 * (i - 1) + 1]);
        w.coords.coords_mut()[r] += BigInt::one();
    }
    w
}

/// `h ↦ h ∧ ω`.
pub fn standard_embedding(h: &WedgeElement) -> Result<WedgeElement, ExteriorError> {
    if h.degree() != 1 {
        return Err(ExteriorError::DegreeMismatch { expected: 1, found: h.degree() });
    }
    h.wedge(&canonical_element(h.space()))
}

/// Matrix of the standard embedding `H → ∧³H` (columns `i(e_p)`).
pub fn embedding_matrix(space: SymplecticSpace) -> LatticeMatrix {
    let cols: Vec<LatticeVector> = (0..space.dim())
        .map(|p| {
            let e = WedgeElement::basis(space, &[p]);
            standard_embedding(&e).expect("degree 3").coords
        })
        .collect();
    LatticeMatrix::from_columns(binomial(space.dim(), 3), &cols).expect("consistent dims")
}

/// Matrix of `∧ᵏm` in the lexicographic basis.
pub fn induced_wedge_map(m: &LatticeMatrix, k: usize) -> Result<LatticeMatrix, ExteriorError> {
    if m.rows() != m.cols() || !m.rows().is_multiple_of(2) || m.rows() == 0 {
        return Err(LatticeError::DimensionMismatch { expected: m.rows(), found: m.cols() }.into());
    }
    if k > MAX_DEGREE {
        return Err(ExteriorError::DegreeOverflow(k));
    }
    let space = SymplecticSpace::new(m.rows() / 2);
    let images: Vec<WedgeElement> =
        m.columns().into_iter().map(|c| WedgeElement::vector(space, c)).collect::<Result<_, _>>()?;
    let mut cols = Vec::new();
    for s in subsets(space.dim(), k) {
        let mut acc = WedgeElement::from_coords(space, 0, LatticeVector::from_i64s(&[1]))?;
        for &p in &s {
            acc = acc.wedge(&images[p])?;
        }
        cols.push(acc.coords);
    }
    Ok(LatticeMatrix::from_columns(binomial(space.dim(), k), &cols)?)
}

/// Apply a linear map of `H` to a wedge element.
pub fn apply_symplectic(m: &LatticeMatrix, w: &WedgeElement) -> Result<WedgeElement, ExteriorError> {
    let induced = induced_wedge_map(m, w.degree())?;
    let coords = induced.mul_vec(&w.coords)?;
    WedgeElement::from_coords(w.space(), w.degree(), coords)
}

/// Basis of `{x : i(x, v) = 0 for all v}` as columns; always saturated.
pub fn ortho_complement(space: SymplecticSpace, vectors: &[WedgeElement]) -> Result<LatticeMatrix, ExteriorError> {
    let n = space.dim();
    let mut rows = Vec::new();
    for v in vectors {
        if v.degree() != 1 {
            return Err(ExteriorError::DegreeMismatch { expected: 1, found: v.degree() });
        }
        if v.genus() != space.genus() {
            return Err(ExteriorError::GenusMismatch(space.genus(), v.genus()));
        }
        // x ↦ i(x, v) as a row vector
        let row: Vec<BigInt> = (0..n).map(|q| space.pairing(&LatticeVector::unit(n, q), &v.coords)).collect();
        rows.push(LatticeVector::new(row));
    }
    if rows.is_empty() {
        return Ok(LatticeMatrix::identity(n));
    }
    let constraint = LatticeMatrix::from_columns(n, &rows)?.transpose();
    Ok(lattice::kernel(&constraint))
}

/// Columns spanning `∧ᵏ(span of the columns of basis)` inside `∧ᵏH`.
pub fn wedge_power_of_span(space: SymplecticSpace, basis: &LatticeMatrix, k: usize) -> Result<LatticeMatrix, ExteriorError> {
    let vecs: Vec<WedgeElement> =
        basis.columns().into_iter().map(|c| WedgeElement::vector(space, c)).collect::<Result<_, _>>()?;
    let mut cols = Vec::new();
    for s in subsets(vecs.len(), k) {
        let mut acc = vecs[s[0]].clone();
        for &p in &s[1..] {
            acc = acc.wedge(&vecs[p])?;
        }
        cols.push(acc.coords);
    }
    Ok(LatticeMatrix::from_columns(binomial(space.dim(), k), &cols)?)
}

fn require_primitive(x: &WedgeElement) -> Result<(), ExteriorError> {
    if x.degree() != 1 {
        return Err(ExteriorError::DegreeMismatch { expected: 1, found: x.degree() });
    }
    if !x.coords().is_primitive() {
        return Err(ExteriorError::NotPrimitive(x.coords().clone()));
    }
    Ok(())
}

/// `∧³(x^⊥) ∩ i(H)` for a primitive `x`; checks that the result is
/// exactly `span{i(x)}`.
pub fn lemma31_part1(space: SymplecticSpace, x: &WedgeElement) -> Result<LatticeMatrix, ExteriorError> {
    require_primitive(x)?;
    let perp = ortho_complement(space, std::slice::from_ref(x))?;
    let wedge3 = wedge_power_of_span(space, &perp, 3)?;
    let inter = lattice::lattice_intersection(&wedge3, &embedding_matrix(space))?;
    let ix = standard_embedding(x)?;
    let ok = inter.cols() == 1 && {
        let c = inter.column(0);
        c == ix.coords || c == -&ix.coords
    };
    if !ok {
        return Err(ExteriorError::LemmaViolation(format!(
            "intersection for x = {} has rank {} and is not span{{i(x)}}",
            x.coords(),
            inter.cols()
        )));
    }
    Ok(inter)
}

/// `∧³(⟨x, y⟩^⊥) ∩ i(H)`; checks that it vanishes.
pub fn lemma31_part2(space: SymplecticSpace, x: &WedgeElement, y: &WedgeElement) -> Result<LatticeMatrix, ExteriorError> {
    require_primitive(x)?;
    require_primitive(y)?;
    let pair = space.pairing(x.coords(), y.coords());
    if pair.is_negative() || pair > BigInt::one() {
        return Err(ExteriorError::BadPairing(pair));
    }
    let span = LatticeMatrix::from_columns(space.dim(), &[x.coords().clone(), y.coords().clone()])?;
    let factors = lattice::invariant_factors(&span);
    if factors.len() != 2 || !factors.iter().all(One::is_one) {
        return Err(ExteriorError::NotSummand);
    }
    let perp = ortho_complement(space, &[x.clone(), y.clone()])?;
    let wedge3 = wedge_power_of_span(space, &perp, 3)?;
    let inter = lattice::lattice_intersection(&wedge3, &embedding_matrix(space))?;
    if inter.cols() != 0 {
        return Err(ExteriorError::LemmaViolation(format!(
            "intersection for x = {}, y = {} has rank {}",
            x.coords(),
            y.coords(),
            inter.cols()
        )));
    }
    Ok(inter)
}

/// Whether `∧³H' → (∧³H)/H` is injective for `H'` spanned by the first
/// `small` handles of genus `big`.
pub fn lemma32_injectivity(small: usize, big: usize) -> Result<bool, ExteriorError> {
    if small < 1 || small >= big {
        return Err(ExteriorError::BadGenus(format!("need 1 <= g' < g, got g' = {small}, g = {big}")));
    }
    let space = SymplecticSpace::new(big);
    let n3 = binomial(space.dim(), 3);
    let incl: Vec<LatticeVector> = subsets(2 * small, 3)
        .into_iter()
        .map(|s| WedgeElement::basis(space, &s).coords)
        .collect();
    let incl = LatticeMatrix::from_columns(n3, &incl)?;
    let emb = embedding_matrix(space);
    let joint = incl.hstack(&emb)?;
    // kernel of ∧³H' → (∧³H)/H is zero iff the two spans meet trivially and
    // the inclusion is injective
    let r_incl = lattice::invariant_factors(&incl).len();
    let r_emb = lattice::invariant_factors(&emb).len();
    let r_joint = lattice::invariant_factors(&joint).len();
    Ok(r_incl == incl.cols() && r_joint == r_incl + r_emb)
}

/// `(∧³H)/H` for the standard embedding.
pub fn quotient_w3(space: SymplecticSpace) -> Result<QuotientStructure, ExteriorError> {
    Ok(lattice::quotient_structure(&embedding_matrix(space), binomial(space.dim(), 3))?)
}

/// A coset in `(∧³H)/H`.
#[derive(Clone, Debug)]
pub struct QuotientW3 {
    space: SymplecticSpace,
    structure: Arc<QuotientStructure>,
    coset: QuotientCoords,
}

impl QuotientW3 {
    pub fn project(structure: Arc<QuotientStructure>, w: &WedgeElement) -> Result<Self, ExteriorError> {
        if w.degree() != 3 {
            return Err(ExteriorError::DegreeMismatch { expected: 3, found: w.degree() });
        }
        let coset = structure.project(w.coords())?;
        Ok(QuotientW3 { space: w.space(), structure, coset })
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn structure(&self) -> &QuotientStructure {
        &self.structure
    }

    pub fn coset_coords(&self) -> &QuotientCoords {
        &self.coset
    }

    pub fn is_zero(&self) -> bool {
        self.coset.is_zero()
    }
}

impl PartialEq for QuotientW3 {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.coset == other.coset
    }
}

impl Eq for QuotientW3 {}
