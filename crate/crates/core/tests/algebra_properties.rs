use num_bigint::BigInt;
use proptest::prelude::*;

use ncsym::lattice::{enumerate_n, join, meet, mobius};
use ncsym::ncsym::{omega, permute, rho};
use ncsym::text::{parse_ncsym, parse_sym};
use ncsym::{Basis, NCSymExpr, Permutation, Rational, SetPartition, SymExpr};

fn arb_partition(max_n: u32) -> impl Strategy<Value = SetPartition> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0usize..n.max(1) as usize, n as usize).prop_map(move |labels| {
            let ground: Vec<u32> = (1..=n).collect();
            SetPartition::from_labels(&ground, &labels)
        })
    })
}

fn arb_basis() -> impl Strategy<Value = Basis> {
    prop_oneof![
        Just(Basis::M),
        Just(Basis::P),
        Just(Basis::E),
        Just(Basis::X)
    ]
}

/// A random combination of up to four basis elements of degree ≤ `max_n`.
fn arb_expr(max_n: u32) -> impl Strategy<Value = NCSymExpr> {
    (
        arb_basis(),
        proptest::collection::vec((arb_partition(max_n), -5i64..=5, 1i64..=3), 0..4),
    )
        .prop_map(|(b, terms)| {
            NCSymExpr::from_terms(
                b,
                terms
                    .into_iter()
                    .map(|(p, n, d)| (p, Rational::new(BigInt::from(n), BigInt::from(d)))),
            )
        })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_display_parses_back(p in arb_partition(9)) {
        prop_assert_eq!(p.to_string().parse::<SetPartition>().unwrap(), p);
    }

    #[test]
    fn meet_and_join_are_dual(a in arb_partition(5), b in arb_partition(5)) {
        prop_assume!(a.size() == b.size());
        let m = meet(&a, &b).unwrap();
        let j = join(&a, &b).unwrap();
        prop_assert_eq!(meet(&a, &j).unwrap(), a.clone());
        prop_assert_eq!(join(&a, &m).unwrap(), a);
    }

    #[test]
    fn mobius_is_multiplicative_along_blocks(a in arb_partition(6)) {
        // μ(0̂, A) = Π over blocks of (-1)^(k-1) (k-1)!
        let bottom = SetPartition::bottom(a.size() as u32);
        let want: BigInt = a.blocks().iter().map(|b| {
            let k = b.len() as i64;
            let f: BigInt = (1..k).map(BigInt::from).product();
            if k % 2 == 1 { f } else { -f }
        }).product();
        prop_assert_eq!(mobius(&bottom, &a).unwrap(), want);
    }

    #[test]
    fn conversion_round_trips(v in arb_expr(4), to in arb_basis()) {
        prop_assert_eq!(v.convert(to).convert(v.basis()), v);
    }

    #[test]
    fn expressions_print_and_parse(v in arb_expr(5)) {
        let back = parse_ncsym(&v.to_string()).unwrap();
        prop_assert!(back.same_element(&v), "{} parsed as {}", v, back);
    }

    #[test]
    fn product_is_associative(a in arb_expr(2), b in arb_expr(2), c in arb_expr(2)) {
        let left = a.product(&b).product(&c);
        let right = a.product(&b.product(&c));
        prop_assert!(left.same_element(&right));
    }

    #[test]
    fn product_distributes_over_conversion(a in arb_expr(3), b in arb_expr(3), to in arb_basis()) {
        let direct = a.product(&b).convert(to);
        let converted = a.convert(to).product(&b.convert(to));
        prop_assert_eq!(direct, converted);
    }

    #[test]
    fn coproduct_commutes_with_conversion(v in arb_expr(4), to in arb_basis()) {
        prop_assert_eq!(v.coproduct().convert(to), v.convert(to).coproduct());
    }

    #[test]
    fn omega_is_an_involution(v in arb_expr(5)) {
        prop_assert_eq!(omega(&omega(&v)), v);
    }

    #[test]
    fn rho_forgets_the_permutation_action(
        (pi, eta) in (0usize..=5).prop_flat_map(|n| (
            arb_partition(n as u32).prop_filter("size n", move |p| p.size() == n),
            arb_permutation(n),
        )),
        b in arb_basis(),
    ) {
        let v = NCSymExpr::basis_element(b, pi);
        prop_assert!(rho(&permute(&eta, &v).unwrap()).same_element(&rho(&v)));
    }

    #[test]
    fn sym_expressions_print_and_parse(
        b in arb_basis(),
        parts in proptest::collection::vec(1u32..4, 0..4),
        c in -4i64..=4,
    ) {
        let lambda = ncsym::IntegerPartition::from_parts(parts).unwrap();
        let v = SymExpr::basis_element(b, lambda).scale(&Rational::from_integer(BigInt::from(c)));
        prop_assert!(parse_sym(&v.to_string()).unwrap().same_element(&v));
    }
}

#[test]
fn x_basis_spans_each_degree() {
    for n in 0..=5 {
        for pi in enumerate_n(n) {
            let p = NCSymExpr::basis_element(Basis::P, pi.clone());
            let x = p.convert(Basis::X);
            // p_π = Σ_{σ ≤ π} x_σ, all with coefficient one
            assert!(
                x.terms()
                    .iter()
                    .all(|(_, c)| **c == Rational::from_integer(1.into())),
                "{pi}"
            );
        }
    }
}
