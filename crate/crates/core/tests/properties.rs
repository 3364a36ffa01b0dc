use dkq_core::chars::CharTable;
use dkq_core::graphs::{gen_element, group_inv, group_mul, iso_pi_code, GroupElt, Side};
use dkq_core::spectra::{self, Spectrum};
use dkq_core::{Fel, FieldSpec};
use proptest::prelude::*;

const ORDERS: [u64; 9] = [3, 5, 7, 9, 11, 25, 27, 49, 81];

fn field_and_elems(n: usize) -> impl Strategy<Value = (FieldSpec, Vec<Fel>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| {
        let f = FieldSpec::of_order(q).unwrap();
        prop::collection::vec((0..f.q()).prop_map(Fel::from_code), n).prop_map(move |v| (f.clone(), v))
    })
}

proptest! {
    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fel::ONE);
            prop_assert_eq!(f.pow(a, (f.q() - 1) as u64), Fel::ONE);
        }
        prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.p());
    }

    #[test]
    fn characters_multiplicative((f, v) in field_and_elems(2), k in 1u32..80) {
        let ch = CharTable::new(&f);
        let k = k % (f.q() - 1);
        let (a, b) = (v[0], v[1]);
        let lhs = ch.chi(k, f.mul(a, b));
        let rhs = ch.chi(k, a) * ch.chi(k, b);
        if !a.is_zero() && !b.is_zero() {
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
        prop_assert!((ch.psi(f.add(a, b)) - ch.psi(a) * ch.psi(b)).norm() < 1e-9);
    }

    #[test]
    fn group_axioms((f, v) in field_and_elems(15)) {
        let x = GroupElt([v[0], v[1], v[2], v[3], v[4]]);
        let y = GroupElt([v[5], v[6], v[7], v[8], v[9]]);
        let z = GroupElt([v[10], v[11], v[12], v[13], v[14]]);
        prop_assert_eq!(
            group_mul(&f, &group_mul(&f, &x, &y), &z),
            group_mul(&f, &x, &group_mul(&f, &y, &z))
        );
        prop_assert_eq!(group_mul(&f, &x, &GroupElt::IDENTITY), x);
        prop_assert_eq!(group_mul(&f, &group_inv(&f, &x), &x), GroupElt::IDENTITY);
    }

    #[test]
    fn generators_closed_under_inverse((f, v) in field_and_elems(2)) {
        let x = if v[0].is_zero() { Fel::ONE } else { v[0] };
        let s = gen_element(&f, x, v[1]);
        let inv = group_inv(&f, &s);
        prop_assert_eq!(inv, gen_element(&f, f.neg(x), v[1]));
    }

    #[test]
    fn pi_is_injective_on_samples(q in prop::sample::select(vec![3u64, 5, 7]), a in 0u32..16807, b in 0u32..16807) {
        let f = FieldSpec::of_order(q).unwrap();
        let n = f.q().pow(5);
        let (a, b) = (a % n, b % n);
        for side in [Side::Point, Side::Line] {
            prop_assert_eq!(iso_pi_code(&f, side, a) == iso_pi_code(&f, side, b), a == b);
        }
    }

    #[test]
    fn bucketing_preserves_mass(values in prop::collection::vec((-50.0f64..50.0, 1u64..5), 1..60), tol in 1e-9f64..1e-3) {
        let s = Spectrum::from_weighted(values.iter().copied(), tol);
        let total: u64 = values.iter().map(|v| v.1).sum();
        prop_assert_eq!(s.total_multiplicity(), total);
        for w in s.entries().windows(2) {
            prop_assert!(w[0].0 > w[1].0);
        }
        let mass: f64 = values.iter().map(|&(v, m)| v * m as f64).sum();
        prop_assert!((s.moment(1) - mass).abs() < 1e-6 * (1.0 + mass.abs()));
    }

    #[test]
    fn lift_doubles_and_symmetrizes(values in prop::collection::vec((-5.0f64..30.0, 1u64..4), 1..30)) {
        let q = 5;
        let s = Spectrum::from_weighted(values, 1e-9);
        let l = spectra::lift_to_bipartite(&s, q).unwrap();
        prop_assert_eq!(l.total_multiplicity(), 2 * s.total_multiplicity());
        let n = l.entries().len();
        for i in 0..n {
            let (a, ma) = l.entries()[i];
            let (b, mb) = l.entries()[n - 1 - i];
            prop_assert!((a + b).abs() < 1e-9);
            prop_assert_eq!(ma, mb);
        }
    }
}
