use num_bigint::BigInt;
use proptest::prelude::*;

use decat::blm::{BlmElement, CanonicalWord};
use decat::currentalg::{self, GarlandElement};
use decat::hochschild::{self as hc, invariant_factors, smith, FinLinCat, Pivot, SparseMatrix};
use decat::oracle;
use decat::symfunc::{straighten, Partition, QuasiIndex, Straightened, SymElement};
use decat::tracecat::{self, basis_words, TraceElement};
use decat::vpres::{self, Strategy as Rewrite, VElement};

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v)
    })
}

fn sym(max_terms: usize) -> impl Strategy<Value = SymElement> {
    prop::collection::vec((partition(3, 3), -3i64..=3), 0..=max_terms)
        .prop_map(|terms| SymElement::from_terms(terms.into_iter()))
}

fn canonical(n: i64, a: usize, b: usize) -> CanonicalWord {
    if n >= b as i64 - a as i64 {
        CanonicalWord::fe(b, a, n).unwrap()
    } else {
        CanonicalWord::ef(a, b, n).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lr_matches_monomial_oracle(mu in partition(3, 3), nu in partition(3, 3)) {
        let fast = &SymElement::schur(mu.clone()) * &SymElement::schur(nu.clone());
        prop_assert_eq!(fast, oracle::schur_product_via_monomials(&mu, &nu));
    }

    #[test]
    fn sym_ring_laws(x in sym(3), y in sym(3), z in sym(2)) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn antipode_is_an_involutive_ring_map(x in sym(3), y in sym(3)) {
        prop_assert_eq!(x.antipode().antipode(), x.clone());
        prop_assert_eq!((&x * &y).antipode(), &x.antipode() * &y.antipode());
        prop_assert_eq!(x.omega().omega(), x);
    }

    #[test]
    fn straightening_matches_alternants(m in prop::collection::vec(-2i64..=4, 1..=3)) {
        let a = m.len() as i64;
        prop_assume!(m.iter().enumerate().all(|(j, &x)| x >= j as i64 + 1 - a));
        let q = QuasiIndex::new(m.clone()).unwrap();
        let rhs = match straighten(&q) {
            Straightened::Zero => oracle::Poly::zero(m.len()),
            Straightened::Signed(s, l) => oracle::schur_polynomial(&l, m.len()).scale(s as i128),
        };
        prop_assert_eq!(oracle::generalized_schur(&m), rhs);
    }

    #[test]
    fn blm_associative(n in -5i64..=5, t in prop::collection::vec(0usize..=2, 6)) {
        let z = canonical(n, t[0], t[1]);
        let y = canonical(z.target(), t[2], t[3]);
        let x = canonical(y.target(), t[4], t[5]);
        let (x, y, z) = (BlmElement::basis(x), BlmElement::basis(y), BlmElement::basis(z));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn canonical_structure_constants_are_positive(n in -5i64..=5, t in prop::collection::vec(0usize..=2, 4)) {
        let y = canonical(n, t[0], t[1]);
        let x = canonical(y.target(), t[2], t[3]);
        let prod = BlmElement::basis(x).mul(&BlmElement::basis(y)).unwrap();
        prop_assert!(!prod.is_zero());
        for c in prod.specialize_q1().values() {
            prop_assert!(*c > BigInt::from(0));
        }
    }

    #[test]
    fn garland_words_associate(
        n in -3i64..=3,
        gens in prop::collection::vec((0usize..3, 0usize..=2, 1usize..=2), 3),
    ) {
        let make = |&(kind, i, a): &(usize, usize, usize), w: i64| match kind {
            0 => GarlandElement::e(i, a, w),
            1 => GarlandElement::f(i, a, w),
            _ => GarlandElement::phi(&decat::symfunc::plethystic_elementary(i.max(1), a).unwrap(), w),
        };
        let shift = |&(kind, _, a): &(usize, usize, usize)| match kind {
            0 => 2 * a as i64,
            1 => -2 * (a as i64),
            _ => 0,
        };
        let z = make(&gens[2], n);
        let y = make(&gens[1], z.target());
        let x = make(&gens[0], n + shift(&gens[2]) + shift(&gens[1]));
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        prop_assert_eq!(&left, &x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(left.apply_phi_automorphism().unwrap().apply_phi_automorphism().unwrap(), left);
    }

    #[test]
    fn trace_transport_round_trips(n in -3i64..=3, shift in -1i64..=1, d in 0usize..=2, pick in 0usize..64) {
        let words = basis_words(n, n + 2 * shift, d, 2).unwrap();
        prop_assume!(!words.is_empty());
        let x = TraceElement::basis(words[pick % words.len()].clone());
        let y = tracecat::to_current(&x).unwrap();
        prop_assert_eq!(tracecat::from_current(&y).unwrap(), x);
    }

    #[test]
    fn trace_compose_associates(n in -2i64..=2, picks in prop::collection::vec(0usize..64, 3)) {
        let pick = |source: i64, k: usize| {
            let words = basis_words(source, source + 2 * ((k % 3) as i64 - 1), 1, 1).unwrap();
            TraceElement::basis(words[k % words.len()].clone())
        };
        let z = pick(n, picks[0]);
        let y = pick(z.target(), picks[1]);
        let x = pick(y.target(), picks[2]);
        let left = tracecat::compose(&tracecat::compose(&x, &y).unwrap(), &z).unwrap();
        prop_assert_eq!(left, tracecat::compose(&x, &tracecat::compose(&y, &z).unwrap()).unwrap());
    }

    #[test]
    fn rewriting_strategies_agree(seed in any::<u64>(), len in 1usize..=6, b in 0usize..=2, a in 0usize..=2, n in -2i64..=2) {
        let mut rng = vpres::seeded_rng(seed);
        let w = vpres::random_word(&mut rng, (b, a), len, 2, 2);
        let x = VElement::word(n, (b, a), w).unwrap();
        let (l, _) = vpres::normal_form_with(&x, Rewrite::Leftmost, 1_000_000).unwrap();
        let (r, _) = vpres::normal_form_with(&x, Rewrite::Rightmost, 1_000_000).unwrap();
        prop_assert_eq!(&l, &r);
        prop_assert_eq!(vpres::normal_form(&l).unwrap(), l);
    }

    #[test]
    fn smith_form_is_a_factorization(rows in 1usize..=4, cols in 1usize..=4, entries in prop::collection::vec(-6i64..=6, 16)) {
        let a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(entries[i * 4 + j])).collect()).collect();
        for strategy in [Pivot::MinAbs, Pivot::FirstNonzero] {
            let s = smith(&a, cols, strategy);
            let ua: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| (0..rows).map(|k| &s.u[i][k] * &a[k][j]).sum()).collect()).collect();
            let uav: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| (0..cols).map(|k| &ua[i][k] * &s.v[k][j]).sum()).collect()).collect();
            for i in 0..rows {
                for j in 0..cols {
                    let want = if i == j && i < s.rank() { s.diagonal[i].clone() } else { BigInt::from(0) };
                    prop_assert_eq!(&uav[i][j], &want);
                }
            }
            for w in s.diagonal.windows(2) {
                prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
            }
            let mut sparse = SparseMatrix::zero(rows, cols);
            for (i, r) in a.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    sparse.add_entry(i, j, x.clone());
                }
            }
            let mut sd = invariant_factors(&sparse, strategy);
            sd.sort();
            let mut dd = s.diagonal.clone();
            dd.sort();
            prop_assert_eq!(sd, dd);
        }
    }

    #[test]
    fn random_posets_have_trivial_higher_homology(k in 1usize..=4, mask in 0u32..64) {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let rel: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &r)| r).collect();
        let c = FinLinCat::poset(k, &rel).unwrap();
        let cx = hc::build_complex(&c, 4, hc::max_entries()).unwrap();
        prop_assert!(cx.is_complex());
        let h = hc::homology(&cx, Pivot::FirstNonzero);
        prop_assert_eq!(&h[0], &hc::HomologyGroup::free(k));
        prop_assert!(h[1..].iter().all(hc::HomologyGroup::is_zero));
        prop_assert_eq!(hc::verify_decomposition(&c, 4).unwrap(), Some(true));
    }
}

#[test]
fn current_parse_round_trip() {
    for (word, n) in [("E0^(2) F1 H2", 0i64), ("F0^(3) E0^(3)", 3), ("H1 H1 E2", -1)] {
        let x = currentalg::normal_form(&currentalg::parse_word(word).unwrap(), n).unwrap();
        assert_eq!(GarlandElement::from_json(&x.to_json()).unwrap(), x);
    }
}
