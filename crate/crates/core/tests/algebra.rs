//! Property tests for the integer lattice, exterior algebra and free
//! nilpotent layers. Oracles are written directly against the definitions:
//! cofactor determinants, Cramer's rule, minors, Heisenberg matrices and
//! free substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use torelli::exterior::{
    canonical_element, embedding_matrix, induced_wedge_map, lemma31_part1, ortho_complement, standard_embedding,
    subset_rank, subsets,
};
use torelli::lattice::{hnf, invariant_factors, lattice_intersection, min_l1_coset_rep, snf, solve_integer};
use torelli::mcg::{Curve, GeneratorTable};
use torelli::nilpotent::{nil_project, NilEndo};
use torelli::{FreeWord, LatticeMatrix, LatticeVector, MappingClassWord, SymplecticSpace, WedgeElement};

fn to_i64(m: &LatticeMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_i64().unwrap()).collect()).collect()
}

/// Cofactor expansion along the first row.
fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det(&minor)
        })
        .sum()
}

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
}

fn vector(dim: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, dim)
}

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(v)
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    let r = rank as i32;
    prop::collection::vec((1..=r, any::<bool>()), 0..=max_len)
        .prop_map(move |ls| FreeWord::new(rank, ls.into_iter().map(|(k, neg)| if neg { -k } else { k }).collect()).unwrap())
}

fn twist_word(genus: usize, max_len: usize) -> impl Strategy<Value = MappingClassWord> {
    let curves = Curve::all(genus);
    let n = curves.len();
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |ts| {
        let twists: Vec<(Curve, bool)> = ts.into_iter().map(|(i, inv)| (curves[i], inv)).collect();
        MappingClassWord::from_twists(genus, true, &twists).unwrap()
    })
}

proptest! {
    #[test]
    fn hnf_is_a_unimodular_column_echelon_form(rows in matrix(3, 4, 4)) {
        let m = LatticeMatrix::from_rows(&rows);
        let (h, u) = hnf(&m);
        prop_assert_eq!(&m.mul(&u).unwrap(), &h);
        prop_assert_eq!(det(&to_i64(&u)).abs(), 1);
        let h = to_i64(&h);
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for c in 0..4 {
            let Some(p) = (0..3).find(|&r| h[r][c] != 0) else {
                seen_zero = true;
                continue;
            };
            prop_assert!(!seen_zero, "zero column before a pivot column");
            prop_assert!(last_pivot.is_none_or(|q| p > q));
            prop_assert!(h[p][c] > 0);
            for left in 0..c {
                prop_assert!((0..h[p][c]).contains(&h[p][left]));
            }
            last_pivot = Some(p);
        }
    }

    #[test]
    fn snf_is_a_divisibility_chain(rows in matrix(3, 3, 5)) {
        let m = LatticeMatrix::from_rows(&rows);
        let (d, u, v) = snf(&m);
        prop_assert_eq!(&u.mul(&m).unwrap().mul(&v).unwrap(), &d);
        prop_assert_eq!(det(&to_i64(&u)).abs(), 1);
        prop_assert_eq!(det(&to_i64(&v)).abs(), 1);
        let d = to_i64(&d);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert!(i == j || x == 0);
            }
            prop_assert!(row[i] >= 0);
        }
        for i in 0..2 {
            prop_assert!(d[i][i] == 0 && d[i + 1][i + 1] == 0 || d[i][i] != 0 && d[i + 1][i + 1] % d[i][i] == 0);
        }
        // first determinantal divisor and the product of all invariant factors
        let g = rows.iter().flatten().fold(0i64, |acc, &x| acc.gcd(&x));
        prop_assert_eq!(d[0][0], g);
        prop_assert_eq!(d[0][0] * d[1][1] * d[2][2], det(&rows).abs());
    }

    #[test]
    fn solve_agrees_with_cramer(rows in matrix(3, 3, 4), b in vector(3, 6)) {
        let dt = det(&rows);
        prop_assume!(dt != 0);
        let cramer: Vec<Option<i64>> = (0..3)
            .map(|i| {
                let mut a = rows.clone();
                for r in 0..3 {
                    a[r][i] = b[r];
                }
                let n = det(&a);
                (n % dt == 0).then_some(n / dt)
            })
            .collect();
        let got = solve_integer(&LatticeMatrix::from_rows(&rows), &lv(&b)).unwrap();
        if cramer.iter().all(Option::is_some) {
            let x: Vec<i64> = cramer.into_iter().map(Option::unwrap).collect();
            prop_assert_eq!(got, Some(lv(&x)));
        } else {
            prop_assert_eq!(got, None);
        }
    }

    #[test]
    fn solve_finds_preimages(rows in matrix(4, 3, 3), x in vector(3, 5)) {
        let a = LatticeMatrix::from_rows(&rows);
        let b = a.mul_vec(&lv(&x)).unwrap();
        let y = solve_integer(&a, &b).unwrap().expect("b lies in the span");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn intersection_contains_common_vectors(
        a_rows in matrix(4, 2, 3),
        b_col in vector(4, 3),
        p in vector(2, 3),
        k in 1i64..4,
    ) {
        let a = LatticeMatrix::from_rows(&a_rows);
        let common = a.mul_vec(&lv(&p)).unwrap();
        let b = LatticeMatrix::from_columns(4, &[common.scale(&BigInt::from(k)), lv(&b_col)]).unwrap();
        let inter = lattice_intersection(&a, &b).unwrap();
        for c in inter.columns() {
            prop_assert!(solve_integer(&a, &c).unwrap().is_some());
            prop_assert!(solve_integer(&b, &c).unwrap().is_some());
        }
        let kc = common.scale(&BigInt::from(k));
        prop_assert!(solve_integer(&inter, &kc).unwrap().is_some());
    }

    /// Sublattices with an identity block satisfy `‖Eλ‖₁ ≥ ‖λ‖₁`, so every
    /// improving coefficient vector lies in the box `|λᵢ| ≤ 2‖t‖₁`.
    #[test]
    fn min_l1_matches_exhaustive_search(
        k in 1usize..=2,
        tail in matrix(3, 2, 2),
        target in vector(5, 2),
    ) {
        let n = k + 3;
        let target = &target[..n];
        let cols: Vec<Vec<i64>> = (0..k)
            .map(|j| (0..n).map(|i| if i < k { i64::from(i == j) } else { tail[i - k][j] }).collect())
            .collect();
        let sub = LatticeMatrix::from_columns(n, &cols.iter().map(|c| lv(c)).collect::<Vec<_>>()).unwrap();
        let norm: i64 = target.iter().map(|x| x.abs()).sum();
        let b = 2 * norm;
        let mut best: Option<Vec<i64>> = None;
        let mut lambda = vec![-b; k];
        loop {
            let cand: Vec<i64> = (0..n).map(|i| target[i] + (0..k).map(|j| lambda[j] * cols[j][i]).sum::<i64>()).collect();
            let l1 = |v: &Vec<i64>| v.iter().map(|x| x.abs()).sum::<i64>();
            if best.as_ref().is_none_or(|cur| (l1(&cand), &cand) < (l1(cur), cur)) {
                best = Some(cand);
            }
            let mut j = 0;
            while j < k && lambda[j] == b {
                lambda[j] = -b;
                j += 1;
            }
            if j == k {
                break;
            }
            lambda[j] += 1;
        }
        let got = min_l1_coset_rep(&lv(target), &sub, &BigInt::from(10_000)).unwrap();
        prop_assert_eq!(got, lv(&best.unwrap()));
    }

    #[test]
    fn triple_wedge_is_the_minor_vector(u in vector(6, 3), v in vector(6, 3), w in vector(6, 3)) {
        let space = SymplecticSpace::new(3);
        let e = |x: &Vec<i64>| WedgeElement::vector(space, lv(x)).unwrap();
        let got = e(&u).wedge(&e(&v)).unwrap().wedge(&e(&w)).unwrap();
        for s in subsets(6, 3) {
            let minor: Vec<Vec<i64>> = s.iter().map(|&r| vec![u[r], v[r], w[r]]).collect();
            prop_assert_eq!(&got.coords().coords()[subset_rank(6, &s)], &BigInt::from(det(&minor)));
        }
    }

    #[test]
    fn wedge_is_bilinear_associative_and_graded(
        u in vector(6, 3),
        v in vector(6, 3),
        x in vector(15, 2),
        y in vector(15, 2),
    ) {
        let space = SymplecticSpace::new(3);
        let u = WedgeElement::vector(space, lv(&u)).unwrap();
        let v = WedgeElement::vector(space, lv(&v)).unwrap();
        let x = WedgeElement::from_coords(space, 2, lv(&x)).unwrap();
        let y = WedgeElement::from_coords(space, 2, lv(&y)).unwrap();
        prop_assert_eq!(u.wedge(&v).unwrap(), v.wedge(&u).unwrap().neg());
        prop_assert_eq!(u.wedge(&x).unwrap(), x.wedge(&u).unwrap());
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap());
        prop_assert_eq!(u.wedge(&v).unwrap().wedge(&x).unwrap(), u.wedge(&v.wedge(&x).unwrap()).unwrap());
        prop_assert_eq!(
            u.wedge(&x.add(&y).unwrap()).unwrap(),
            u.wedge(&x).unwrap().add(&u.wedge(&y).unwrap()).unwrap()
        );
        prop_assert!(u.wedge(&u).unwrap().is_zero());
    }

    #[test]
    fn induced_maps_are_functorial(a in matrix(6, 6, 2), b in matrix(6, 6, 2), k in 1usize..=4) {
        let a = LatticeMatrix::from_rows(&a);
        let b = LatticeMatrix::from_rows(&b);
        let ab = induced_wedge_map(&a.mul(&b).unwrap(), k).unwrap();
        let prod = induced_wedge_map(&a, k).unwrap().mul(&induced_wedge_map(&b, k).unwrap()).unwrap();
        prop_assert_eq!(ab, prod);
    }

    #[test]
    fn symplectic_words_preserve_omega_and_the_embedding(w in twist_word(3, 10), h in vector(6, 3)) {
        let table = GeneratorTable::new(3).unwrap();
        let space = table.space();
        let m = table.symplectic_action(&w).unwrap();
        let omega = canonical_element(space);
        let m2 = induced_wedge_map(&m, 2).unwrap();
        prop_assert_eq!(&m2.mul_vec(omega.coords()).unwrap(), omega.coords());
        let h = WedgeElement::vector(space, lv(&h)).unwrap();
        let ih = standard_embedding(&h).unwrap();
        let mh = WedgeElement::vector(space, m.mul_vec(h.coords()).unwrap()).unwrap();
        let m3 = induced_wedge_map(&m, 3).unwrap();
        prop_assert_eq!(m3.mul_vec(ih.coords()).unwrap(), standard_embedding(&mh).unwrap().coords().clone());
    }

    #[test]
    fn ortho_complements_are_saturated(v in vector(6, 4)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let space = SymplecticSpace::new(3);
        let vw = WedgeElement::vector(space, lv(&v)).unwrap();
        let k = ortho_complement(space, std::slice::from_ref(&vw)).unwrap();
        prop_assert_eq!(k.cols(), 5);
        for c in k.columns() {
            prop_assert!(space.pairing(&c, vw.coords()).is_zero());
        }
        prop_assert!(invariant_factors(&k).iter().all(|d| d == &BigInt::from(1)));
    }

    #[test]
    fn perp_cube_meets_the_embedding_in_one_line(v in vector(6, 5)) {
        let x = lv(&v);
        prop_assume!(x.is_primitive());
        let space = SymplecticSpace::new(3);
        prop_assert!(lemma31_part1(space, &WedgeElement::vector(space, x).unwrap()).is_ok());
    }

    #[test]
    fn embedding_columns_have_disjoint_supports(g in 2usize..=4) {
        let e = embedding_matrix(SymplecticSpace::new(g));
        for r in 0..e.rows() {
            prop_assert!((0..e.cols()).filter(|&c| !e.get(r, c).is_zero()).count() <= 1);
        }
        for c in e.columns() {
            prop_assert!(c.coords().iter().all(|x| x.abs() <= BigInt::from(1)));
        }
    }

    #[test]
    fn nil_projection_is_a_homomorphism(u in word(4, 12), v in word(4, 12), w in word(4, 8)) {
        let (pu, pv, pw) = (nil_project(&u), nil_project(&v), nil_project(&w));
        prop_assert_eq!(nil_project(&u.mul(&v)), pu.mul(&pv).unwrap());
        prop_assert_eq!(pu.mul(&pv).unwrap().mul(&pw).unwrap(), pu.mul(&pv.mul(&pw).unwrap()).unwrap());
        prop_assert!(pu.mul(&pu.inv()).unwrap().is_identity());
        prop_assert_eq!(nil_project(&u.inverse()), pu.inv());
    }

    #[test]
    fn triple_commutators_vanish(u in word(4, 6), x in word(4, 4), y in word(4, 4), z in word(4, 4), cut in 0usize..7) {
        let c = FreeWord::commutator(&FreeWord::commutator(&x, &y), &z);
        let cut = cut.min(u.len());
        let mut letters = u.letters()[..cut].to_vec();
        letters.extend_from_slice(c.letters());
        letters.extend_from_slice(&u.letters()[cut..]);
        let spliced = FreeWord::new(4, letters).unwrap();
        prop_assert_eq!(nil_project(&spliced), nil_project(&u));
        let central = nil_project(&FreeWord::commutator(&x, &y));
        prop_assert!(central.is_central());
    }

    /// Sending `xᵢ ↦ I + E₀₁`, `xⱼ ↦ I + E₁₂` and every other generator to the
    /// identity gives the `(0, 2)` entry `uᵢuⱼ + αᵢⱼ`.
    #[test]
    fn commutator_coordinates_match_heisenberg(w in word(4, 16), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i < j);
        let (mut e01, mut e02, mut e12) = (0i64, 0i64, 0i64);
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize - 1;
            let s = i64::from(l.signum());
            // right multiplication by I + s·E₀₁ or I + s·E₁₂
            if k == i {
                e01 += s;
            } else if k == j {
                e02 += s * e01;
                e12 += s;
            }
        }
        let n = nil_project(&w);
        let ab = n.abelian().coords();
        let alpha = e02 - ab[i].to_i64().unwrap() * ab[j].to_i64().unwrap();
        prop_assert_eq!(e12, ab[j].to_i64().unwrap());
        prop_assert_eq!(&n.comm().coords()[subset_rank(4, &[i, j])], &BigInt::from(alpha));
    }

    #[test]
    fn endomorphisms_agree_with_substitution(
        f in prop::collection::vec(word(3, 5), 3),
        g in prop::collection::vec(word(3, 5), 3),
        w in word(3, 8),
    ) {
        let ef = NilEndo::from_words(&f).unwrap();
        let eg = NilEndo::from_words(&g).unwrap();
        let direct = nil_project(&w.substitute(&f).unwrap());
        prop_assert_eq!(&ef.apply_word(&w).unwrap(), &direct);
        prop_assert_eq!(&ef.apply(&nil_project(&w)).unwrap(), &direct);
        let twice = nil_project(&w.substitute(&g).unwrap().substitute(&f).unwrap());
        prop_assert_eq!(ef.compose(&eg).unwrap().apply_word(&w).unwrap(), twice.clone());
        prop_assert_eq!(ef.compose_words(&g).unwrap().apply_word(&w).unwrap(), twice);
        prop_assert_eq!(NilEndo::identity(3).apply_word(&w).unwrap(), nil_project(&w));
    }
}

