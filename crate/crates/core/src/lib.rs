//! Exact computations in the mapping class group of a surface of genus `g`
//! with at most one boundary component.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: integer linear algebra (Hermite and Smith normal forms,
//!   integer solving, sublattice intersections, quotients, ℓ1-minimal coset
//!   representatives).
//! * [`exterior`]: the symplectic lattice `H = Z^{2g}`, its exterior powers,
//!   the canonical element `ω` and the embedding `h ↦ h ∧ ω`.
//! * [`nilpotent`]: free groups and their class-2 nilpotent quotients.
//! * [`mcg`]: Dehn twist generators as certified automorphisms of the free
//!   group, mapping class words and the symplectic representation.
//! * [`johnson`]: the Johnson homomorphism on `Σ_{g,1}` and `Σ_g`, the closed
//!   formulas for bounding pair and simply intersecting pair maps, and the
//!   double lantern computation.
//! * [`presentation`]: generators `S_Mod ∪ S_∧`, the relation families and
//!   their verification under every available representation.
//! * [`witness`] and [`format`]: curated witness data and the text formats
//!   shared with the command line tool.
//! * [`random`]: seeded generators for the property suites.
//!
//! Conventions: `H` has basis `a₁, b₁, …, a_g, b_g` in that coordinate order
//! with `i(aᵢ, bᵢ) = 1`; free generators are `x_{2i-1} = aᵢ`, `x_{2i} = bᵢ`
//! and the boundary word is `ζ = [x₁, x₂]⋯[x_{2g-1}, x_{2g}]`. A twist acts on
//! homology by `v ↦ v + i(v, c)·c`. Words are read as compositions, so
//! `L₁⋯Lₙ` is `L₁ ∘ ⋯ ∘ Lₙ`.

pub mod exterior;
pub mod format;
pub mod johnson;
pub mod lattice;
pub mod mcg;
pub mod nilpotent;
pub mod presentation;
pub mod random;
pub mod suite;
pub mod witness;

pub use exterior::{QuotientW3, SymplecticSpace, WedgeElement};
pub use johnson::{BpConfig, Johnson, SipConfig, TauValue};
pub use lattice::{LatticeMatrix, LatticeVector, QuotientStructure};
pub use mcg::{Curve, GeneratorTable, Letter, MappingClassWord};
pub use nilpotent::{FreeWord, NilElement};
pub use presentation::{JSymbol, PresLetter, Relation, RelationFamily, Verifier};
