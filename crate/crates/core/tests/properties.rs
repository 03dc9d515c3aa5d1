use proptest::prelude::*;
use suborbital_core::group::{block_equivalent, compose, mobius_apply, mobius_vector};
use suborbital_core::rational::{dedekind_psi, gcd, make_rational, mod_inverse};
use suborbital_core::suborbital::{edge_check, paired_partner};
use suborbital_core::{GraphSpec, ProjectiveRational, UnimodularMatrix};

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Unimodular matrices with entries at most `bound`: a coprime column
/// `(a, c)` completed by the extended gcd and shifted by `k·(a, c)`.
fn matrix(bound: i64) -> impl Strategy<Value = UnimodularMatrix> {
    (-bound..=bound, -bound..=bound, -bound..=bound).prop_filter_map("entries out of range", move |(a, c, k)| {
        if gcd(a, c) != 1 {
            return None;
        }
        // a*d - b*c = 1 with d = x, b = -y
        let (_, x, y) = ext_gcd(a, c);
        let (b, d) = (-y + k * a, x + k * c);
        (b.abs() <= bound && d.abs() <= bound).then(|| UnimodularMatrix::new(a, b, c, d).unwrap())
    })
}

fn point(bound: i64) -> impl Strategy<Value = ProjectiveRational> {
    (-bound..=bound, 0..=bound)
        .prop_filter("0/0", |&(n, d)| n != 0 || d != 0)
        .prop_map(|(n, d)| make_rational(n, d).unwrap())
}

proptest! {
    #[test]
    fn psi_is_multiplicative(a in 1i64..200, b in 1i64..200) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(dedekind_psi(a * b).unwrap(), dedekind_psi(a).unwrap() * dedekind_psi(b).unwrap());
    }

    #[test]
    fn mod_inverse_inverts(u in -500i64..500, m in 2i64..500) {
        prop_assume!(gcd(u, m) == 1);
        let v = mod_inverse(u, m).unwrap();
        prop_assert!((0..m).contains(&v));
        prop_assert_eq!((u * v).rem_euclid(m), 1);
    }

    #[test]
    fn make_rational_is_idempotent(n in -1000i64..1000, d in -1000i64..1000) {
        prop_assume!(n != 0 || d != 0);
        let r = make_rational(n, d).unwrap();
        prop_assert_eq!(make_rational(r.num(), r.den()).unwrap(), r);
        prop_assert_eq!(gcd(r.num(), r.den()), 1);
        prop_assert!(r.den() >= 0);
    }

    #[test]
    fn action_respects_composition(g in matrix(30), h in matrix(30), v in point(50)) {
        let gh = compose(&g, &h).unwrap();
        let lhs = mobius_apply(&gh, &v).unwrap();
        let rhs = mobius_apply(&g, &mobius_apply(&h, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_preserves_reduced_form(g in matrix(50), v in point(50)) {
        let (x, y) = mobius_vector(&g, &v);
        let (mut a, mut b) = (x.unsigned_abs(), y.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        prop_assert_eq!(a, 1);
    }

    #[test]
    fn action_preserves_block_relation(g in matrix(20), v in point(30), w in point(30), n in 1i64..12) {
        let before = block_equivalent(&v, &w, n).unwrap();
        let gv = mobius_apply(&g, &v).unwrap();
        let gw = mobius_apply(&g, &w).unwrap();
        prop_assert_eq!(block_equivalent(&gv, &gw, n).unwrap(), before);
    }

    #[test]
    fn partner_edges_are_reversals(m in 2i64..12, u in 1i64..12, v in point(20), w in point(20)) {
        prop_assume!(u < m && gcd(u, m) == 1);
        let spec = GraphSpec::f_zero(m, u).unwrap();
        let partner = paired_partner(&spec).unwrap();
        prop_assert_eq!(edge_check(&spec, &v, &w).is_some(), edge_check(&partner, &w, &v).is_some());
        prop_assert_eq!(paired_partner(&partner).unwrap(), spec);
    }
}
