use proptest::prelude::*;

use satake::deodhar::richardson_poly;
use satake::hecke::{Hecke, HeckeElement};
use satake::mvcells::{expected_dim, MvTable, OrbitSign};
use satake::oracle::lattice::{det, diag_t, mat_mul, LPoly, Lattice, Mat2};
use satake::oracle::{self, Gf};
use satake::rootdata::{RootDatum, PRESETS};
use satake::vinberg::{ic_class, psi, psi_inverse, weight_extends};
use satake::ZPoly;

fn preset(i: usize) -> RootDatum {
    RootDatum::preset(PRESETS[i % PRESETS.len()]).unwrap()
}

/// (preset index, dominant coweight with ⟨2ρ,μ⟩ ≤ bound)
fn dominant(bound: i64) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..PRESETS.len(), any::<prop::sample::Index>()).prop_map(move |(i, k)| {
        let all = preset(i).dominant_up_to(bound, 1);
        (i, all[k.index(all.len())].clone())
    })
}

fn lpoly(q: u32) -> impl Strategy<Value = LPoly> {
    (-2i64..=2, prop::collection::vec(0..q as u8, 0..4)).prop_map(|(low, c)| LPoly::from_coeffs(low, c))
}

fn matrix(q: u32) -> impl Strategy<Value = Mat2> {
    (lpoly(q), lpoly(q), lpoly(q), lpoly(q)).prop_map(|(a, b, c, d)| [[a, b], [c, d]])
}

/// A random element of GL2(F_q[t]): a product of elementary matrices and a unit diagonal.
fn integral_unit(q: u32) -> impl Strategy<Value = Mat2> {
    (prop::collection::vec(0..q as u8, 0..3), prop::collection::vec(0..q as u8, 0..3), 1..q as u8, 1..q as u8).prop_map(
        move |(u, l, a, b)| {
            let f = Gf::new(q).unwrap();
            let upper = [[LPoly::t_pow(0), LPoly::from_coeffs(0, u)], [LPoly::zero(), LPoly::t_pow(0)]];
            let lower = [[LPoly::t_pow(0), LPoly::zero()], [LPoly::from_coeffs(0, l), LPoly::t_pow(0)]];
            let diag = [[LPoly::monomial(a, 0), LPoly::zero()], [LPoly::zero(), LPoly::monomial(b, 0)]];
            mat_mul(&f, &mat_mul(&f, &upper, &lower), &diag)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_inverse_and_length((i, _) in dominant(0), k in any::<prop::sample::Index>()) {
        let d = preset(i);
        let w = d.weyl();
        let x = k.index(w.order());
        prop_assert_eq!(w.mul(x, w.inverse(x)), w.identity());
        prop_assert_eq!(w.length(x), w.length(w.inverse(x)));
        prop_assert!(w.bruhat_leq(w.identity(), x) && w.bruhat_leq(x, w.longest()));
    }

    #[test]
    fn characters_are_invariant_with_weyl_dimension((i, mu) in dominant(8)) {
        let d = preset(i);
        let chi = d.weyl_character(&mu).unwrap();
        prop_assert!(chi.is_weyl_invariant(&d));
        prop_assert_eq!(chi.dimension(), d.weyl_dimension(&mu));
        for nu in chi.weights() {
            prop_assert_eq!(chi.mult(nu), d.kostant_multiplicity(&mu, nu));
            prop_assert!(d.dominance_leq(&d.dominant_rep(nu), &mu));
        }
    }

    #[test]
    fn cells_have_the_expected_dimension((i, mu) in dominant(6)) {
        let d = preset(i);
        let t = MvTable::new(&d, &mu).unwrap();
        for sign in [OrbitSign::Plus, OrbitSign::Minus] {
            for nu in d.weyl_character(&mu).unwrap().weights() {
                let cl = t.cells(&d, nu, sign).unwrap();
                prop_assert_eq!(cl.max_dim().map(|x| x as i64), Some(expected_dim(&d, &mu, nu, sign)));
            }
        }
    }

    #[test]
    fn point_counts_do_not_depend_on_the_minimal_gallery((i, mu) in dominant(6), choice in 1usize..4) {
        let d = preset(i);
        let (a, b) = (MvTable::new(&d, &mu).unwrap(), MvTable::with_family(&d, &mu, choice).unwrap());
        for nu in d.weyl_character(&mu).unwrap().weights() {
            for sign in [OrbitSign::Plus, OrbitSign::Minus] {
                prop_assert_eq!(a.cells(&d, nu, sign).unwrap().poly(), b.cells(&d, nu, sign).unwrap().poly());
            }
        }
    }

    #[test]
    fn richardson_pieces_partition_schubert_cells((i, _) in dominant(0), k in any::<prop::sample::Index>()) {
        let d = preset(i);
        let w = d.weyl();
        let y = k.index(w.order());
        let mut total = ZPoly::zero();
        for x in w.elements() {
            total += &richardson_poly(w, w.word(y), x).unwrap();
        }
        prop_assert_eq!(total, ZPoly::monomial(1, w.length(y)));
    }

    #[test]
    fn hecke_products_are_unitriangular((i, mu) in dominant(4), (j, lambda) in dominant(4)) {
        let d = preset(i);
        let lambda = if i == j { lambda } else { vec![0; d.rank()] };
        let h = Hecke::new(&d);
        let prod = h.multiply(&HeckeElement::basis(&mu), &HeckeElement::basis(&lambda)).unwrap();
        let sum: Vec<i64> = mu.iter().zip(&lambda).map(|(a, b)| a + b).collect();
        prop_assert_eq!(prod.coeff(&sum), ZPoly::one());
        for nu in prod.terms().keys() {
            prop_assert!(d.dominance_leq(nu, &sum));
        }
    }

    #[test]
    fn psi_round_trips_and_is_multiplicative((i, mu) in dominant(4), (j, lambda) in dominant(4), k in 0usize..3) {
        let d = preset(i);
        let lambda = if i == j { lambda } else { vec![0; d.rank()] };
        let h = Hecke::new(&d);
        let a = HeckeElement::monomial(&mu, ZPoly::new(vec![1, -1]));
        let b = HeckeElement::monomial(&lambda, ZPoly::monomial(2, k));
        prop_assert_eq!(&psi_inverse(&h, &psi(&h, &a).unwrap()).unwrap(), &a);
        let ab = h.multiply(&a, &b).unwrap();
        let lhs = psi(&h, &ab).unwrap().character(&d).unwrap();
        let rhs = psi(&h, &a).unwrap().character(&d).unwrap().product(&psi(&h, &b).unwrap().character(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ic_classes_satisfy_parity((i, mu) in dominant(8), n in 0i64..4) {
        let d = preset(i);
        let c = ic_class(&d, &mu, n).unwrap();
        prop_assert!(c.is_weyl_invariant(&d));
        for (nu, g) in c.entries().keys() {
            prop_assert_eq!((d.two_rho_pair(nu) - g).rem_euclid(2), 0);
            prop_assert!(weight_extends(&d, nu, *g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lattice_normal_form_is_idempotent(m in matrix(5), k in integral_unit(5)) {
        let f = Gf::new(5).unwrap();
        prop_assume!(!det(&f, &m).is_zero());
        let l = Lattice::from_matrix(&f, &m).unwrap();
        prop_assert_eq!(&l.renormalize(&f).unwrap(), &l);
        prop_assert_eq!(&Lattice::from_matrix(&f, &mat_mul(&f, &m, &k)).unwrap(), &l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Five random base points per case: k·t^ν with k ∈ GL2(F_q[t]).
    #[test]
    fn convolution_does_not_depend_on_the_base_point(
        case in 0usize..6,
        ks in prop::collection::vec(integral_unit(3), 5),
    ) {
        let d = RootDatum::preset("GL2").unwrap();
        let f = Gf::new(3).unwrap();
        let cases: [([i64; 2], [i64; 2], [i64; 2]); 6] = [
            ([1, 0], [1, 0], [1, 1]),
            ([1, 0], [1, 0], [2, 0]),
            ([2, 0], [1, 0], [2, 1]),
            ([2, 0], [2, 0], [2, 2]),
            ([2, 0], [2, 0], [3, 1]),
            ([2, -1], [1, 0], [2, 0]),
        ];
        let (mu, lambda, nu) = cases[case];
        let expect = oracle::convolution_count(&d, 3, &mu, &lambda, &nu).unwrap();
        for k in &ks {
            let g = mat_mul(&f, k, &diag_t(nu[0], nu[1]));
            prop_assert_eq!(oracle::convolution_count_at(&d, 3, &mu, &lambda, &g).unwrap(), expect);
        }
    }
}

#[test]
fn gl2_schubert_count_formula() {
    // the enumeration is the truth; q^{⟨2ρ,μ⟩−1}(q+1) is the hypothesis it confirms
    let d = RootDatum::preset("GL2").unwrap();
    for q in [2u32, 3, 4, 5] {
        for top in 1..=4 {
            let n = oracle::schubert_count(&d, q, &[top, 0]).unwrap();
            assert_eq!(n, (q as u64).pow(top as u32 - 1) * (q as u64 + 1));
        }
    }
}

#[test]
fn interpolation_is_stable_for_structure_constants() {
    let d = RootDatum::preset("PGL2").unwrap();
    let h = Hecke::new(&d);
    for (mu, lambda) in [([2], [2]), ([3], [1]), ([2], [1])] {
        let prod = h.multiply(&HeckeElement::basis(&mu), &HeckeElement::basis(&lambda)).unwrap();
        for nu in prod.terms().keys() {
            let four = oracle::interpolate(&[2, 3, 4, 5], |q| Ok(oracle::convolution_count(&d, q, &mu, &lambda, nu)? as i128));
            let five = oracle::interpolate(&[2, 3, 4, 5, 7], |q| Ok(oracle::convolution_count(&d, q, &mu, &lambda, nu)? as i128));
            assert_eq!(four.unwrap(), five.unwrap());
        }
    }
}
