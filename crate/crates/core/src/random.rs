//! Seeded generators for property suites. Every function takes the RNG
//! explicitly; [`rng`] builds the standard ChaCha stream from a seed.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::SymplecticSpace;
use crate::johnson::SipConfig;
use crate::lattice::{invariant_factors, LatticeMatrix, LatticeVector};
use crate::mcg::{chain_bp_word, mirrored_chain_bp_word, separating_twist_word, Curve, MappingClassWord};

pub const DEFAULT_SEED: u64 = 20_240_517;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform word of `len` signed generator twists.
pub fn random_word<R: Rng>(rng: &mut R, genus: usize, boundary: bool, len: usize) -> MappingClassWord {
    let curves = Curve::all(genus);
    let twists: Vec<(Curve, bool)> =
        (0..len).map(|_| (*curves.choose(rng).expect("nonempty"), rng.gen_bool(0.5))).collect();
    MappingClassWord::from_twists(genus, boundary, &twists).expect("curves of this genus")
}

/// Vector with entries in `[-bound, bound]`, not necessarily primitive.
pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> LatticeVector {
    LatticeVector::new((0..dim).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
}

/// Primitive vector of `H` with entries in `[-bound, bound]`.
pub fn random_primitive<R: Rng>(rng: &mut R, space: SymplecticSpace, bound: i64) -> LatticeVector {
    loop {
        let v = random_vector(rng, space.dim(), bound);
        if v.is_primitive() {
            return v;
        }
    }
}

/// `(x, y)` spanning a rank-2 direct summand with `i(x, y) ∈ {0, 1}`.
pub fn random_valid_pair<R: Rng>(rng: &mut R, space: SymplecticSpace, bound: i64) -> (LatticeVector, LatticeVector) {
    loop {
        let x = random_primitive(rng, space, bound);
        let y = random_primitive(rng, space, bound);
        let p = space.pairing(&x, &y);
        if p != BigInt::from(0) && !p.is_one() {
            continue;
        }
        let m = LatticeMatrix::from_columns(space.dim(), &[x.clone(), y.clone()]).expect("same dimension");
        let f = invariant_factors(&m);
        if f.len() == 2 && f.iter().all(One::is_one) {
            return (x, y);
        }
    }
}

/// Random `b₁, b₂, b₃` and `b₄ = ±b₁ ± b₂ ± b₃`.
pub fn random_sip_config<R: Rng>(rng: &mut R, space: SymplecticSpace, bound: i64) -> SipConfig {
    let b: Vec<LatticeVector> = (0..3).map(|_| random_vector(rng, space.dim(), bound)).collect();
    let mut b4 = LatticeVector::zeros(space.dim());
    for v in &b {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        b4.add_scaled(v, &BigInt::from(s));
    }
    SipConfig { b1: b[0].clone(), b2: b[1].clone(), b3: b[2].clone(), b4 }
}

/// Torelli words with known structure: separating twists and the chain BP
/// maps together with their inverses.
pub fn torelli_atoms(genus: usize) -> Vec<MappingClassWord> {
    let mut out = Vec::new();
    for k in 1..genus {
        out.push(separating_twist_word(genus, k).expect("1 ≤ k < g"));
    }
    for j in 1..genus {
        out.push(chain_bp_word(genus, j));
        out.push(mirrored_chain_bp_word(genus, j));
    }
    let inverses: Vec<MappingClassWord> = out.iter().map(MappingClassWord::inverse).collect();
    out.extend(inverses);
    out
}

/// `f s f⁻¹` for a random separating twist word `s` and a random `f` of
/// length `conj_len`.
pub fn random_separating_conjugate<R: Rng>(rng: &mut R, genus: usize, conj_len: usize) -> MappingClassWord {
    let k = rng.gen_range(1..genus);
    let s = separating_twist_word(genus, k).expect("1 ≤ k < g");
    let s = if rng.gen_bool(0.5) { s } else { s.inverse() };
    let f = random_word(rng, genus, true, conj_len);
    f.mul(&s).mul(&f.inverse())
}

/// Product of `factors` conjugates `f a f⁻¹` of random Torelli atoms, with
/// conjugators of length at most `conj_len`.
pub fn random_torelli_word<R: Rng>(rng: &mut R, genus: usize, factors: usize, conj_len: usize) -> MappingClassWord {
    let atoms = torelli_atoms(genus);
    let mut w = MappingClassWord::identity(genus, true);
    for _ in 0..factors {
        let a = atoms.choose(rng).expect("nonempty");
        let len = rng.gen_range(0..=conj_len);
        let f = random_word(rng, genus, true, len);
        w = w.mul(&f.mul(a).mul(&f.inverse()));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::GeneratorTable;

    #[test]
    fn deterministic_streams() {
        let a = random_word(&mut rng(7), 3, true, 12);
        let b = random_word(&mut rng(7), 3, true, 12);
        assert_eq!(a, b);
        assert_ne!(a, random_word(&mut rng(8), 3, true, 12));
    }

    #[test]
    fn generated_objects_meet_their_contracts() {
        let mut r = rng(DEFAULT_SEED);
        let space = SymplecticSpace::new(3);
        let table = GeneratorTable::new(3).unwrap();
        for _ in 0..5 {
            assert!(random_primitive(&mut r, space, 3).is_primitive());
            let (x, y) = random_valid_pair(&mut r, space, 2);
            let p = space.pairing(&x, &y);
            assert!(p == BigInt::from(0) || p.is_one());
            assert!(crate::johnson::sip_signs(&random_sip_config(&mut r, space, 2)).is_some());
            assert!(table.is_torelli(&random_torelli_word(&mut r, 3, 2, 3)).unwrap());
            assert!(table.is_torelli(&random_separating_conjugate(&mut r, 3, 4)).unwrap());
        }
    }
}
