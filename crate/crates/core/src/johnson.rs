//! The Johnson homomorphism on `I(Σ_{g,1})` and `I(Σ_g)`.
//!
//! For a Torelli word `f` the defects `mₖ = f(xₖ)xₖ⁻¹` lie in
//! `γ₂F/γ₃F ≅ ∧²H`. Symplectic duality turns `xₖ ↦ mₖ` into
//! `t = Σₖ d(eₖ*) ⊗ mₖ ∈ H ⊗ ∧²H` with `i(d(φ), v) = φ(v)`, and `t` lies in the
//! image of `x∧y∧z ↦ x⊗(y∧z) + y⊗(z∧x) + z⊗(x∧y)`. The preimage, times
//! [`CALIBRATION_SIGN`], is `τ(f)`.
//!
//! The sign is fixed by the genus-1 bounding pair map
//! `T_{α₂}² (T_{α₁} T_{β₁} T_{δ₁})⁻⁴ = T_{α₂} T_e⁻¹` in genus 2, whose
//! curves cut off the first handle, so that its value is exactly
//! `[α₂] ∧ a₁ ∧ b₁ = a₁ ∧ b₁ ∧ a₂`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exterior::{
    self, binomial, partial_canonical_element, subset_rank, subsets, ExteriorError, QuotientW3,
    SymplecticSpace, WedgeElement,
};
use crate::lattice::{LatticeError, LatticeMatrix, LatticeVector, QuotientStructure};
use crate::mcg::{GeneratorTable, McgError, MappingClassWord};
use crate::nilpotent::{NilElement, NilError};

/// Global orientation constant relating the defect computation to the
/// bounding pair formula.
pub const CALIBRATION_SIGN: i64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JohnsonError {
    #[error("word {0} is not in the Torelli group")]
    NotTorelli(String),
    #[error("open-surface Johnson homomorphism needs a word on the surface with boundary")]
    ClosedSurface,
    #[error("internal consistency: defect of x{0} has nonzero abelian part")]
    AbelianDefect(usize),
    #[error("internal consistency: defect tensor is outside the image of the wedge embedding")]
    OutsideEmbedding,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Nil(#[from] NilError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl JohnsonError {
    /// Errors that indicate a broken generator table rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, JohnsonError::AbelianDefect(_) | JohnsonError::OutsideEmbedding)
    }
}

/// `τ` of a word: an element of `∧³H` with boundary, of `(∧³H)/H` without.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauValue {
    Open(WedgeElement),
    Closed(QuotientW3),
}

impl TauValue {
    pub fn is_zero(&self) -> bool {
        match self {
            TauValue::Open(w) => w.is_zero(),
            TauValue::Closed(q) => q.is_zero(),
        }
    }
}

impl fmt::Display for TauValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauValue::Open(w) => write!(f, "{w}"),
            TauValue::Closed(q) => write!(f, "{}", q.coset_coords()),
        }
    }
}

/// Homology data of a bounding pair map `T_x T_y⁻¹`: the class of `x` and the
/// canonical element of the subsurface the pair cuts off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpConfig {
    pub x_class: LatticeVector,
    pub omega_sub: WedgeElement,
}

/// Boundary classes of the four-holed sphere around a simply intersecting
/// pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SipConfig {
    pub b1: LatticeVector,
    pub b2: LatticeVector,
    pub b3: LatticeVector,
    pub b4: LatticeVector,
}

/// Contraction `ι_x ω` of a 2-form by `x` through the intersection pairing.
pub fn contract(space: SymplecticSpace, x: &LatticeVector, omega: &WedgeElement) -> LatticeVector {
    let n = space.dim();
    let mut out = LatticeVector::zeros(n);
    for (s, c) in omega.terms() {
        let (p, q) = (s[0], s[1]);
        let xp = space.pairing(x, &LatticeVector::unit(n, p));
        let xq = space.pairing(x, &LatticeVector::unit(n, q));
        out.coords_mut()[q] += &c * xp;
        out.coords_mut()[p] -= &c * xq;
    }
    out
}

/// `[x] ∧ ω_{Σ'}`.
pub fn tau_bp_formula(space: SymplecticSpace, cfg: &BpConfig) -> Result<WedgeElement, JohnsonError> {
    if cfg.omega_sub.degree() != 2 {
        return Err(JohnsonError::InvalidConfig(format!("ω' has degree {}", cfg.omega_sub.degree())));
    }
    if !contract(space, &cfg.x_class, &cfg.omega_sub).is_zero() {
        return Err(JohnsonError::InvalidConfig(format!(
            "ω' = {} is not in ∧²(x^⊥) for x = {}",
            cfg.omega_sub, cfg.x_class
        )));
    }
    let x = WedgeElement::vector(space, cfg.x_class.clone())?;
    Ok(x.wedge(&cfg.omega_sub)?)
}

/// Signs `(s₁, s₂, s₃)` with `b₄ = s₁b₁ + s₂b₂ + s₃b₃`, if any.
pub fn sip_signs(cfg: &SipConfig) -> Option<[i64; 3]> {
    for mask in 0..8 {
        let sign = |bit: u32| if (mask >> bit) & 1 == 1 { -1i64 } else { 1 };
        let s = [sign(0), sign(1), sign(2)];
        let sum = &(&cfg.b1.scale(&s[0].into()) + &cfg.b2.scale(&s[1].into())) + &cfg.b3.scale(&s[2].into());
        if sum == cfg.b4 {
            return Some(s);
        }
    }
    None
}

/// `[b₁] ∧ [b₂] ∧ [b₃]`.
pub fn tau_sip_formula(space: SymplecticSpace, cfg: &SipConfig) -> Result<WedgeElement, JohnsonError> {
    if sip_signs(cfg).is_none() {
        return Err(JohnsonError::InvalidConfig("b4 is not ±b1 ± b2 ± b3".into()));
    }
    let w = |v: &LatticeVector| WedgeElement::vector(space, v.clone());
    Ok(w(&cfg.b1)?.wedge(&w(&cfg.b2)?)?.wedge(&w(&cfg.b3)?)?)
}

/// Whether `b₁∧b₂∧b₃ = ±b₁∧b₂∧b₄`.
pub fn sip_remark_holds(space: SymplecticSpace, cfg: &SipConfig) -> Result<bool, JohnsonError> {
    let lhs = tau_sip_formula(space, cfg)?;
    let w = |v: &LatticeVector| WedgeElement::vector(space, v.clone());
    let rhs = w(&cfg.b1)?.wedge(&w(&cfg.b2)?)?.wedge(&w(&cfg.b4)?)?;
    Ok(lhs == rhs || lhs == rhs.neg())
}

/// Matrix of `∧³H → H ⊗ ∧²H`; rows are indexed by `(p, {q, r})` with
/// `p * C(2g, 2) + rank({q, r})`.
pub fn cyclic_embedding_matrix(space: SymplecticSpace) -> LatticeMatrix {
    let n = space.dim();
    let n2 = binomial(n, 2);
    let cols: Vec<LatticeVector> = subsets(n, 3)
        .into_iter()
        .map(|s| {
            let (p, q, r) = (s[0], s[1], s[2]);
            let mut v = LatticeVector::zeros(n * n2);
            // e_p⊗e_qr + e_q⊗e_rp + e_r⊗e_pq with e_rp = -e_pr
            v.coords_mut()[p * n2 + subset_rank(n, &[q, r])] += 1;
            v.coords_mut()[q * n2 + subset_rank(n, &[p, r])] -= 1;
            v.coords_mut()[r * n2 + subset_rank(n, &[p, q])] += 1;
            v
        })
        .collect();
    LatticeMatrix::from_columns(n * n2, &cols).expect("consistent dimensions")
}

/// Johnson homomorphism engine for one genus.
#[derive(Clone, Debug)]
pub struct Johnson {
    table: GeneratorTable,
    quotient: Arc<QuotientStructure>,
    embedding: LatticeMatrix,
}

impl Johnson {
    pub fn new(genus: usize) -> Result<Self, JohnsonError> {
        let table = GeneratorTable::new(genus)?;
        let space = table.space();
        Ok(Johnson {
            quotient: Arc::new(exterior::quotient_w3(space)?),
            embedding: cyclic_embedding_matrix(space),
            table,
        })
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn space(&self) -> SymplecticSpace {
        self.table.space()
    }

    pub fn genus(&self) -> usize {
        self.table.genus()
    }

    pub fn quotient(&self) -> &Arc<QuotientStructure> {
        &self.quotient
    }

    /// The tensor `t ∈ H ⊗ ∧²H` of a Torelli word.
    pub fn defect_tensor(&self, w: &MappingClassWord) -> Result<LatticeVector, JohnsonError> {
        if !self.table.is_torelli(w)? {
            return Err(JohnsonError::NotTorelli(w.to_string()));
        }
        let space = self.space();
        let n = space.dim();
        let n2 = binomial(n, 2);
        let action = self.table.nil_action(w)?;
        let mut t = LatticeVector::zeros(n * n2);
        for (k, image) in action.images().iter().enumerate() {
            let defect = image.mul(&NilElement::generator(n, k + 1).inv())?;
            if !defect.is_central() {
                return Err(JohnsonError::AbelianDefect(k + 1));
            }
            let d = space.dual_basis_vector(k);
            for (p, dp) in d.coords().iter().enumerate() {
                if dp.is_zero() {
                    continue;
                }
                for (idx, m) in defect.comm().coords().iter().enumerate() {
                    if !m.is_zero() {
                        t.coords_mut()[p * n2 + idx] += dp * m;
                    }
                }
            }
        }
        Ok(t)
    }

    /// `τ` on `I(Σ_{g,1})`.
    pub fn tau_open(&self, w: &MappingClassWord) -> Result<WedgeElement, JohnsonError> {
        if !w.boundary() {
            return Err(JohnsonError::ClosedSurface);
        }
        self.tau_lift(w)
    }

    fn tau_lift(&self, w: &MappingClassWord) -> Result<WedgeElement, JohnsonError> {
        let t = self.defect_tensor(w)?;
        let space = self.space();
        let n = space.dim();
        let n2 = binomial(n, 2);
        // the (p, {q, r}) entry with p < q < r is the e_pqr coefficient
        let y: Vec<BigInt> = subsets(n, 3)
            .iter()
            .map(|s| t.coords()[s[0] * n2 + subset_rank(n, &[s[1], s[2]])].clone())
            .collect();
        let y = LatticeVector::new(y);
        if self.embedding.mul_vec(&y)? != t {
            return Err(JohnsonError::OutsideEmbedding);
        }
        Ok(WedgeElement::from_coords(space, 3, y.scale(&BigInt::from(CALIBRATION_SIGN)))?)
    }

    /// `τ` on `I(Σ_g)`: the image of the `Σ_{g,1}` value in `(∧³H)/H`.
    pub fn tau_closed(&self, w: &MappingClassWord) -> Result<QuotientW3, JohnsonError> {
        let open = self.tau_lift(w)?;
        Ok(QuotientW3::project(Arc::clone(&self.quotient), &open)?)
    }

    pub fn tau(&self, w: &MappingClassWord) -> Result<TauValue, JohnsonError> {
        if w.boundary() {
            Ok(TauValue::Open(self.tau_open(w)?))
        } else {
            Ok(TauValue::Closed(self.tau_closed(w)?))
        }
    }

    /// `τ(f t f⁻¹) = (∧³ f_*) τ(t)`.
    pub fn equivariance_check(&self, f: &MappingClassWord, t: &MappingClassWord) -> Result<bool, JohnsonError> {
        let lhs = self.tau_open(&f.conjugate(t))?;
        let m = self.table.symplectic_action(f)?;
        let rhs = exterior::apply_symplectic(&m, &self.tau_open(t)?)?;
        Ok(lhs == rhs)
    }

    /// Whether the word lies in the kernel of `τ`.
    pub fn kernel_membership(&self, w: &MappingClassWord) -> Result<bool, JohnsonError> {
        if !self.table.is_torelli(w)? {
            return Ok(false);
        }
        Ok(self.tau(w)?.is_zero())
    }
}

/// Homology data for one lantern: the boundary `β` of the genus-2
/// subsurface on handles 1 and 2, the classes of the three bounding pairs and
/// the canonical element of the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanternConfig {
    pub beta: LatticeVector,
    pub x: LatticeVector,
    pub y: LatticeVector,
    pub z: LatticeVector,
    pub omega_sub: WedgeElement,
}

impl LanternConfig {
    /// `x = a₁`, `y = a₂`, `z = -(a₁ + a₂)` and `ω' = Σ_{i≥3} aᵢ∧bᵢ`.
    pub fn standard(genus: usize) -> Result<Self, JohnsonError> {
        if genus < 3 {
            return Err(JohnsonError::InvalidConfig(format!("lantern check needs g >= 3, got {genus}")));
        }
        let space = SymplecticSpace::new(genus);
        let (a1, a2) = (space.a(1), space.a(2));
        let handles: Vec<usize> = (3..=genus).collect();
        Ok(LanternConfig {
            beta: LatticeVector::zeros(space.dim()),
            z: -&(&a1 + &a2),
            x: a1,
            y: a2,
            omega_sub: partial_canonical_element(space, &handles),
        })
    }

    /// The configuration obtained by reflecting the lantern: every class is
    /// negated, the complement is unchanged.
    pub fn mirrored(&self) -> Self {
        LanternConfig {
            beta: self.beta.clone(),
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
            omega_sub: self.omega_sub.clone(),
        }
    }

    fn classes(&self) -> [&LatticeVector; 3] {
        [&self.x, &self.y, &self.z]
    }
}

#[derive(Clone, Debug)]
pub struct LanternReport {
    /// `τ` of the six bounding pair maps, standard then mirrored.
    pub values: Vec<(String, WedgeElement)>,
    pub pair_sums: Vec<WedgeElement>,
    pub total: WedgeElement,
    /// `x + y + z = β` in both configurations.
    pub balanced: bool,
}

impl LanternReport {
    pub fn pair_sums_vanish(&self) -> bool {
        self.pair_sums.iter().all(WedgeElement::is_zero)
    }

    pub fn passed(&self) -> bool {
        self.balanced && self.pair_sums_vanish() && self.total.is_zero()
    }
}

/// The double lantern computation of `2τ(T_β)` from bounding pair values.
pub fn lantern_report(standard: &LanternConfig, mirrored: &LanternConfig) -> Result<LanternReport, JohnsonError> {
    let space = SymplecticSpace::new(standard.x.dim() / 2);
    for cfg in [standard, mirrored] {
        if !cfg.beta.is_zero() {
            return Err(JohnsonError::InvalidConfig(format!("β is separating but has class {}", cfg.beta)));
        }
        for c in cfg.classes() {
            if !c.is_primitive() {
                return Err(JohnsonError::InvalidConfig(format!("class {c} is not primitive")));
            }
            if !contract(space, c, &cfg.omega_sub).is_zero() {
                return Err(JohnsonError::InvalidConfig(format!("ω' is not orthogonal to {c}")));
            }
        }
    }
    let balanced = [standard, mirrored].iter().all(|cfg| {
        let sum = &(&cfg.x + &cfg.y) + &cfg.z;
        sum == cfg.beta
    });
    let names = ["x", "y", "z"];
    let mut values = Vec::new();
    let mut pair_sums = Vec::new();
    let mut total = WedgeElement::zero(space, 3);
    for (n, (c, c_m)) in standard.classes().into_iter().zip(mirrored.classes()).enumerate() {
        let v = tau_bp_formula(space, &BpConfig { x_class: c.clone(), omega_sub: standard.omega_sub.clone() })?;
        let v_m = tau_bp_formula(space, &BpConfig { x_class: c_m.clone(), omega_sub: mirrored.omega_sub.clone() })?;
        pair_sums.push(v.add(&v_m)?);
        total = total.add(&v)?.add(&v_m)?;
        values.push((names[n].to_string(), v));
        values.push((format!("{}'", names[n]), v_m));
    }
    Ok(LanternReport { values, pair_sums, total, balanced })
}

/// Runs the double lantern computation in genus `g ≥ 3`.
pub fn lantern_torsion_check(genus: usize) -> Result<LanternReport, JohnsonError> {
    let standard = LanternConfig::standard(genus)?;
    lantern_report(&standard, &standard.mirrored())
}

/// The sign convention witness: `(word, expected τ)`.
pub fn calibration_witness() -> (MappingClassWord, WedgeElement) {
    let space = SymplecticSpace::new(2);
    let word = crate::mcg::chain_bp_word(2, 1);
    let expected = WedgeElement::basis(space, &[0, 1, 2]);
    (word, expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::{separating_twist_word, Curve};

    fn tw(g: usize, seq: &[(Curve, bool)]) -> MappingClassWord {
        MappingClassWord::from_twists(g, true, seq).unwrap()
    }

    #[test]
    fn calibration_witness_matches_bp_formula() {
        let j = Johnson::new(2).unwrap();
        let (word, expected) = calibration_witness();
        assert_eq!(j.tau_open(&word).unwrap(), expected);
        let space = j.space();
        let cfg = BpConfig { x_class: space.a(2), omega_sub: partial_canonical_element(space, &[1]) };
        assert_eq!(tau_bp_formula(space, &cfg).unwrap(), expected);
    }

    #[test]
    fn identity_and_separating_twists_vanish() {
        for g in [2, 3] {
            let j = Johnson::new(g).unwrap();
            assert!(j.tau_open(&MappingClassWord::identity(g, true)).unwrap().is_zero());
            for k in 1..g {
                assert!(j.tau_open(&separating_twist_word(g, k).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn boundary_twist_vanishes_upstairs() {
        let j = Johnson::new(2).unwrap();
        let w = crate::mcg::boundary_twist_word(2);
        assert!(j.tau_open(&w).unwrap().is_zero());
        assert!(j.tau_closed(&w.with_boundary(false)).unwrap().is_zero());
    }

    #[test]
    fn non_torelli_is_rejected() {
        let j = Johnson::new(2).unwrap();
        let w = tw(2, &[(Curve::Alpha(1), false)]);
        assert!(matches!(j.tau_open(&w), Err(JohnsonError::NotTorelli(_))));
        assert!(!j.kernel_membership(&w).unwrap());
        assert!(matches!(j.tau_open(&w.with_boundary(false)), Err(JohnsonError::ClosedSurface)));
    }

    #[test]
    fn bp_formula_examples() {
        let s = SymplecticSpace::new(3);
        let cfg = BpConfig { x_class: s.a(1), omega_sub: partial_canonical_element(s, &[3]) };
        assert_eq!(tau_bp_formula(s, &cfg).unwrap(), WedgeElement::basis(s, &[0, 4, 5]));
        let zero = BpConfig { x_class: s.a(1), omega_sub: WedgeElement::zero(s, 2) };
        assert!(tau_bp_formula(s, &zero).unwrap().is_zero());
        let bad = BpConfig { x_class: s.a(1), omega_sub: partial_canonical_element(s, &[1]) };
        assert!(tau_bp_formula(s, &bad).is_err());
        let v = tau_bp_formula(s, &cfg).unwrap();
        assert!(v.wedge(&WedgeElement::vector(s, s.a(1)).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn sip_formula_examples() {
        let s = SymplecticSpace::new(3);
        let cfg = SipConfig { b1: s.a(1), b2: s.a(2), b3: s.a(3), b4: &(&s.a(1) - &s.a(2)) + &s.a(3) };
        assert_eq!(tau_sip_formula(s, &cfg).unwrap(), WedgeElement::basis(s, &[0, 2, 4]));
        assert!(sip_remark_holds(s, &cfg).unwrap());
        let degenerate = SipConfig { b1: LatticeVector::zeros(6), ..cfg.clone() };
        let degenerate = SipConfig { b4: &(&degenerate.b1 + &degenerate.b2) + &degenerate.b3, ..degenerate };
        assert!(tau_sip_formula(s, &degenerate).unwrap().is_zero());
        let bad = SipConfig { b4: s.b(1), ..cfg };
        assert!(tau_sip_formula(s, &bad).is_err());
    }

    #[test]
    fn lantern_examples() {
        let report = lantern_torsion_check(3).unwrap();
        assert!(report.passed());
        assert_eq!(report.values.len(), 6);
        assert!(report.values.iter().all(|(_, v)| !v.is_zero()));
        let std = LanternConfig::standard(3).unwrap();
        let mut wrong = std.mirrored();
        wrong.y = -&wrong.y;
        let bad = lantern_report(&std, &wrong).unwrap();
        assert!(!bad.passed());
        assert!(!bad.pair_sums_vanish());
        assert!(lantern_torsion_check(2).is_err());
    }

    #[test]
    fn embedding_is_injective() {
        let e = cyclic_embedding_matrix(SymplecticSpace::new(2));
        assert_eq!(crate::lattice::rank(&e), 4);
    }
}
