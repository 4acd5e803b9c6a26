//! Small worked values, frozen. Each was computed independently (oracle
//! polynomials, hand expansion, or enumeration) before being pinned here.

use num_bigint::BigInt;

use decat::blm::{gauss_binom, BlmElement, CanonicalWord, LaurentPoly};
use decat::bubbles::{b_minus, b_plus, commutator_identity, fake_bubble_series};
use decat::currentalg::{self, GarlandElement, GarlandWord};
use decat::hochschild::{self as hc, FinLinCat, HomologyGroup, Triangularity};
use decat::oracle;
use decat::symfunc::{
    box_duals, complete, elementary, plethystic_elementary, power_sum, straighten_entries, to_schur, wedge,
    parse_word as sym_word, Partition, Straightened, SymElement,
};
use decat::tracecat::{self, compose_plus, graded_dim, rect_decompose, PlusElement, TraceElement};
use decat::vpres::{self, VElement};

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec())
}

fn s(v: &[usize]) -> SymElement {
    SymElement::schur(p(v))
}

fn sum(terms: &[(&[usize], i64)]) -> SymElement {
    SymElement::from_terms(terms.iter().map(|(v, c)| (p(v), *c)))
}

#[test]
fn box_complements() {
    assert_eq!(box_duals(&p(&[2, 1]), 2, 2).unwrap(), (p(&[2, 1]), p(&[1]), p(&[1])));
    assert_eq!(box_duals(&p(&[]), 2, 3).unwrap(), (p(&[]), p(&[3, 3]), p(&[2, 2, 2])));
    let (_, c, h) = box_duals(&p(&[3, 3]), 2, 3).unwrap();
    assert!(c.is_empty() && h.is_empty());
}

#[test]
fn straightening_values() {
    assert_eq!(straighten_entries(&[0, 2]).unwrap(), Straightened::Signed(-1, p(&[1, 1])));
    assert_eq!(straighten_entries(&[2, 1]).unwrap(), Straightened::Signed(1, p(&[2, 1])));
    assert_eq!(straighten_entries(&[0, 1]).unwrap(), Straightened::Zero);
    // against the ratio of alternants in two variables
    assert_eq!(oracle::generalized_schur(&[0, 2]), oracle::schur_polynomial(&p(&[1, 1]), 2).scale(-1));
}

#[test]
fn products_and_generators() {
    assert_eq!(&s(&[1]) * &s(&[1]), sum(&[(&[2], 1), (&[1, 1], 1)]));
    assert_eq!(&s(&[1]) * &s(&[1, 1]), sum(&[(&[2, 1], 1), (&[1, 1, 1], 1)]));
    assert_eq!(&s(&[2, 1]) * &SymElement::one(), s(&[2, 1]));
    assert_eq!(power_sum(1), s(&[1]));
    assert_eq!(elementary(2), s(&[1, 1]));
    assert_eq!(complete(2), s(&[2]));
    assert_eq!(plethystic_elementary(2, 1).unwrap(), sum(&[(&[2], 1), (&[1, 1], -1)]));
    assert_eq!(to_schur(&sym_word("e2,1").unwrap()).unwrap(), power_sum(2));
}

#[test]
fn antipode_and_wedge() {
    assert_eq!(s(&[2, 1]).antipode(), s(&[2, 1]).scale(&BigInt::from(-1)));
    for m in 1..=12 {
        assert_eq!(power_sum(m).antipode(), power_sum(m).scale(&BigInt::from(-1)));
    }
    assert!(wedge(1, 1, &s(&[1]), &s(&[1])).unwrap().is_zero());
    assert_eq!(wedge(2, 1, &s(&[2, 2]), &s(&[1])).unwrap().unbounded(), s(&[1, 1, 1]));
    assert!(wedge(1, 1, &SymElement::one(), &SymElement::one()).unwrap().is_zero());
    assert!(s(&[1, 1]).truncate(1).is_zero());
    assert_eq!((&s(&[1]) * &s(&[1])).truncate(1), s(&[2]).truncate(1));
}

#[test]
fn gaussian_binomials_and_canonical_basis() {
    let mut two = LaurentPoly::zero();
    two.add_term(1, BigInt::from(1));
    two.add_term(-1, BigInt::from(1));
    assert_eq!(gauss_binom(2, 1), two);
    assert_eq!(gauss_binom(7, 0), LaurentPoly::one());
    assert_eq!(gauss_binom(-1, 1), LaurentPoly::constant(-1));
    for n in -3..=3 {
        let ee = BlmElement::e(1, n + 2).mul(&BlmElement::e(1, n)).unwrap();
        assert_eq!(ee, BlmElement::e(2, n).scale(&two));
        let at_one = ee.specialize_q1();
        assert_eq!(at_one.values().cloned().collect::<Vec<_>>(), vec![BigInt::from(2)]);
    }
    let ef = BlmElement::e(1, -1).mul(&BlmElement::f(1, 1)).unwrap();
    let mut want = BlmElement::idempotent(1);
    want.add_term(CanonicalWord::fe(1, 1, 1).unwrap(), &LaurentPoly::one());
    assert_eq!(ef, want);
}

#[test]
fn bubble_values() {
    assert_eq!(b_minus(&complete(1), 3).value, s(&[1]).scale(&BigInt::from(-1)));
    assert_eq!(b_plus(&SymElement::one(), 3).value, SymElement::one());
    for m in 1..=12 {
        assert_eq!(b_minus(&power_sum(m), 0).value, b_plus(&power_sum(m), 0).value.scale(&BigInt::from(-1)));
    }
    let series = fake_bubble_series(-1, 2);
    assert_eq!(series[0].value, SymElement::one());
    assert_eq!(series[1].value, s(&[1]).scale(&BigInt::from(-1)));
    assert_eq!(commutator_identity(1).unwrap(), s(&[1]));
    assert_eq!(commutator_identity(2).unwrap(), sum(&[(&[2], 1), (&[1, 1], -1)]));
}

fn nf(word: &str, n: i64) -> GarlandElement {
    currentalg::normal_form(&currentalg::parse_word(word).unwrap(), n).unwrap()
}

#[test]
fn current_algebra_values() {
    assert_eq!(nf("E0 F0", 1).to_string(), "F0 E0 + 1");
    for n in -2..=2 {
        // [E_i, F_j] = H_{i+j}, and H_0 acts on 1_n by n
        let ef = nf("E1 F2", n).sub(&nf("F2 E1", n)).unwrap();
        assert_eq!(ef, GarlandElement::phi(&power_sum(3), n));
        let e0f0 = nf("E0 F0", n).sub(&nf("F0 E0", n)).unwrap();
        assert_eq!(e0f0, GarlandElement::idempotent(n).scale(&BigInt::from(n)));
        // [H_i, E_j] = 2 E_{i+j}
        let he = nf("H1 E0", n).sub(&nf("E0 H1", n)).unwrap();
        assert_eq!(he, GarlandElement::e(1, 1, n).scale(&BigInt::from(2)));
        assert_eq!(nf("E0 E1", n), nf("E1 E0", n));
        assert_eq!(nf("E0 E0", n), GarlandElement::e(0, 2, n).scale(&BigInt::from(2)));
        let phi = GarlandElement::e(2, 3, n).apply_phi_automorphism().unwrap();
        assert_eq!(phi, GarlandElement::f(2, 3, -n));
    }
    assert_eq!(GarlandElement::phi(&SymElement::one(), 4), GarlandElement::idempotent(4));
    let words = currentalg::enumerate_basis(0, 2, 0, 0).unwrap();
    assert_eq!(words, vec![GarlandWord::new(0, vec![], p(&[]), vec![(0, 1)]).unwrap()]);
    // allowing F up to thickness 2 adds F0 E0^(2) and F0^(2) E0^(3)
    assert_eq!(currentalg::enumerate_basis(0, 2, 0, 2).unwrap().len(), 3);
    assert_eq!(currentalg::enumerate_basis(3, 3, 0, 0).unwrap().len(), 1);
    assert_eq!(currentalg::enumerate_basis(3, 3, 0, 2).unwrap().len(), 3);
}

#[test]
fn trace_values() {
    let rect = |l, h, n| PlusElement::rectangle(n, h, l);
    let e2 = compose_plus(&rect(0, 1, 2), &rect(0, 1, 0)).unwrap();
    assert_eq!(
        TraceElement::from_plus(&e2),
        TraceElement::e(2, p(&[]), 0).unwrap().scale(&BigInt::from(2))
    );
    let x = compose_plus(&rect(1, 1, 2), &rect(0, 1, 0)).unwrap();
    let y = compose_plus(&rect(0, 1, 2), &rect(1, 1, 0)).unwrap();
    let want = TraceElement::e(2, p(&[1]), 0).unwrap();
    assert_eq!(TraceElement::from_plus(&x), want);
    assert_eq!(TraceElement::from_plus(&y), want);
    let d = rect_decompose(2, &p(&[1])).unwrap();
    assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(p(&[1]), BigInt::from(1))]);
    for n in -2..=2 {
        for i in 0..=3 {
            for j in 0..=3 {
                let lhs = tracecat::compose(&TraceElement::e(1, p(&[i]), n - 2).unwrap(), &TraceElement::f(1, p(&[j]), n).unwrap())
                    .unwrap()
                    .sub(&tracecat::compose(&TraceElement::f(1, p(&[j]), n + 2).unwrap(), &TraceElement::e(1, p(&[i]), n).unwrap()).unwrap())
                    .unwrap();
                let want = if i + j == 0 {
                    TraceElement::idempotent(n).scale(&BigInt::from(n))
                } else {
                    TraceElement::b_minus(&power_sum(i + j), n)
                };
                assert_eq!(lhs, want);
            }
        }
    }
    assert_eq!(graded_dim(0, 2, -1, 3).unwrap(), 0);
    // from 1_0 to 1_2 in degree zero: F^(b) E^(b+1) for b = 0..=3
    assert_eq!(graded_dim(0, 2, 0, 3).unwrap(), 4);
    let table: Vec<usize> = (0..=4).map(|d| graded_dim(0, 0, d, 3).unwrap()).collect();
    assert_eq!(table, vec![4, 10, 27, 59, 123]);
}

#[test]
fn presentation_values() {
    assert!(vpres::c_tilde(-1, 0, (1, 1)).is_zero());
    assert_eq!(vpres::c_tilde(0, 0, (1, 1)), VElement::word(0, (1, 1), vec![]).unwrap());
    let w = |s: &str| vpres::parse_word(s).unwrap();
    let mut k1 = VElement::zero(0, (1, 1), (1, 1));
    k1.add_term(w("b(1)"), BigInt::from(1));
    k1.add_term(w("d(1)"), BigInt::from(-1));
    k1.add_term(w("dp(1)"), BigInt::from(1));
    assert_eq!(vpres::c_tilde(1, 0, (1, 1)), k1);
    for i in 0..3 {
        let tt = VElement::word(0, (1, 1), w(&format!("t{i} t{i}"))).unwrap();
        assert!(vpres::normal_form(&tt).unwrap().is_zero());
    }
    // the identity is the only degree-zero element of the plus part at delta = 0
    assert_eq!(vpres::enumerate_bplus(1, 1, 1, 0, 0).get(&0), Some(&1));
}

fn two_objects(f: &str) -> FinLinCat {
    FinLinCat::from_json_str(f).unwrap()
}

#[test]
fn hochschild_values() {
    let a2 = FinLinCat::poset(2, &[(0, 1)]).unwrap();
    assert_eq!(hc::hh(&a2, 3).unwrap()[0], HomologyGroup::free(2));
    assert!(matches!(hc::check_upper_triangular(&a2), Triangularity::Order(o) if o == vec![0, 1]));
    let point = FinLinCat::chain(1).unwrap();
    let h = hc::hh(&point, 5).unwrap();
    assert_eq!(h[0], HomologyGroup::free(1));
    assert!(h[1..].iter().all(HomologyGroup::is_zero));
    let cyc = two_objects(
        r#"{"objects": ["x", "y"],
            "homs": {"x->x": {"rank": 1, "basis": ["1x"]}, "y->y": {"rank": 1, "basis": ["1y"]},
                     "x->y": {"rank": 1, "basis": ["f"]}, "y->x": {"rank": 1, "basis": ["g"]}},
            "compose": [
              {"g": "1x", "f": "1x", "result": [{"basis": "1x", "coeff": 1}]},
              {"g": "1y", "f": "1y", "result": [{"basis": "1y", "coeff": 1}]},
              {"g": "1y", "f": "f", "result": [{"basis": "f", "coeff": 1}]},
              {"g": "f", "f": "1x", "result": [{"basis": "f", "coeff": 1}]},
              {"g": "1x", "f": "g", "result": [{"basis": "g", "coeff": 1}]},
              {"g": "g", "f": "1y", "result": [{"basis": "g", "coeff": 1}]},
              {"g": "g", "f": "f", "result": [{"basis": "1x", "coeff": 1}]},
              {"g": "f", "f": "g", "result": [{"basis": "1y", "coeff": 1}]}],
            "identities": {"x": [{"basis": "1x", "coeff": 1}], "y": [{"basis": "1y", "coeff": 1}]}}"#,
    );
    assert!(matches!(hc::check_upper_triangular(&cyc), Triangularity::Cycle(c) if c.len() == 2));
    // x and y are isomorphic, so the trace is Z
    assert_eq!(hc::trace0(&cyc).unwrap().group, HomologyGroup::free(1));
}
