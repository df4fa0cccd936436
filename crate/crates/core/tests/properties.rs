use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use kmk_core::affine_strings::q_to_formal;
use kmk_core::hall_littlewood::{c_expansion, hl_function};
use kmk_core::kostka::kostka_table;
use kmk_core::*;

fn config() -> Config {
    Config {
        cases: 64,
        rng_seed: RngSeed::Fixed(0x6b6d_6b00),
        failure_persistence: None,
        ..Config::default()
    }
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..5).prop_map(Poly::from_coeffs)
}

fn qseries(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(poly(), order + 1).prop_map(move |c| QSeries::from_coeffs(order, c))
}

fn unit_qseries(order: usize) -> impl Strategy<Value = QSeries> {
    (qseries(order), prop::bool::ANY).prop_map(|(mut s, neg)| {
        s.set_coeff(0, Poly::constant(if neg { -1 } else { 1 }));
        s
    })
}

/// A rank-2 series anchored at 0 with a few random terms of height at most 4.
fn formal(depth: usize) -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec(((0i64..=2, 0i64..=2), poly()), 0..6).prop_map(move |terms| {
        let mut f = FormalSeries::zero(Weight::zero(2), depth);
        for ((a, b), c) in terms {
            f.add_term(&RootVector(vec![a, b]), &c);
        }
        f
    })
}

fn unit_formal(depth: usize) -> impl Strategy<Value = FormalSeries> {
    (formal(depth), prop::bool::ANY).prop_map(move |(f, neg)| {
        let lead = f.coeff(&RootVector::zero(2));
        let mut g = f.clone();
        g.add_term(&RootVector::zero(2), &-&lead);
        g.add_term(&RootVector::zero(2), &Poly::constant(if neg { -1 } else { 1 }));
        g
    })
}

const ALGEBRAS: [&str; 9] = ["A1", "A2", "A3", "B2", "G2", "A1~", "A2~", "C2~", "G2~"];

fn datum() -> impl Strategy<Value = CartanDatum> {
    prop::sample::select(ALGEBRAS.to_vec()).prop_map(|n| CartanDatum::named(n).unwrap())
}

fn datum_and_weight() -> impl Strategy<Value = (CartanDatum, Weight)> {
    datum().prop_flat_map(|d| {
        let r = d.rank();
        (Just(d), prop::collection::vec(-3i64..=3, r), -2i64..=2)
            .prop_map(|(d, l, k)| {
                let k = if d.is_affine() { k } else { 0 };
                (d, Weight::new(l, k))
            })
    })
}

/// Ordinary partition function by brute force over colored root multisets.
fn brute_partitions(gamma: &RootVector, roots: &[(RootVector, usize)]) -> i64 {
    let colored: Vec<&RootVector> =
        roots.iter().flat_map(|(r, m)| std::iter::repeat_n(r, *m)).collect();
    fn go(rest: &RootVector, colored: &[&RootVector], i: usize) -> i64 {
        if rest.is_zero() {
            return 1;
        }
        if i == colored.len() || !rest.is_nonnegative() {
            return 0;
        }
        let mut total = 0;
        let mut r = rest.clone();
        while r.is_nonnegative() {
            total += go(&r, colored, i + 1);
            r = &r - colored[i];
        }
        total
    }
    go(gamma, &colored, 0)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(), a);
    }

    #[test]
    fn qseries_ring_axioms(a in qseries(4), b in qseries(4), c in qseries(4)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn qseries_truncation_coherence(a in unit_qseries(6), b in qseries(6), k in 0usize..=6) {
        prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)));
        prop_assert_eq!(a.inverse().unwrap().truncate(k), a.truncate(k).inverse().unwrap());
        prop_assert_eq!(a.mul(&a.inverse().unwrap()), QSeries::one(6));
        prop_assert_eq!(pochhammer(2, 6).truncate(k), pochhammer(2, k));
    }

    #[test]
    fn formal_ring_axioms(a in formal(4), b in formal(4), c in formal(4)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()), a.mul(&b).add(&a.mul(&c)).unwrap());
    }

    #[test]
    fn formal_inverse_and_truncation(a in unit_formal(5), b in formal(5), d in 0usize..=5) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), FormalSeries::one(2, 5));
        prop_assert_eq!(
            a.mul(&b).truncate_depth(d),
            a.truncate_depth(d).mul(&b.truncate_depth(d))
        );
        prop_assert_eq!(inv.truncate_depth(d), a.truncate_depth(d).inverse().unwrap());
    }

    #[test]
    fn constant_term_is_linear_over_q(f in formal(6), g in qseries(3), d in 2usize..=6) {
        // rank-2 series against A1~, where delta = (1, 1)
        let datum = CartanDatum::named("A1~").unwrap();
        let gq = q_to_formal(&datum, &g, 6).unwrap();
        let lhs = f.mul(&gq).constant_term(&datum).unwrap();
        let rhs = f.constant_term(&datum).unwrap().mul(&g);
        prop_assert_eq!(lhs.truncate(3), rhs.truncate(3));
        prop_assert_eq!(
            f.truncate_depth(d).constant_term(&datum).unwrap(),
            f.constant_term(&datum).unwrap().truncate(d / 2)
        );
    }

    #[test]
    fn reflections_are_involutive_isometries((d, x) in datum_and_weight(), i in 0usize..5, seed in 0usize..100) {
        let i = i % d.rank();
        let rx = d.reflect(i, &x).unwrap();
        prop_assert_eq!(d.reflect(i, &rx).unwrap(), x.clone());
        let y = d.fundamental_weight(seed % d.rank());
        let ry = d.reflect(i, &y).unwrap();
        prop_assert_eq!(d.bilinear(&rx, &ry), d.bilinear(&x, &y));
    }

    #[test]
    fn to_dominant_is_idempotent((d, x) in datum_and_weight()) {
        if let Ok(dom) = d.to_dominant(&x) {
            prop_assert!(dom.weight.is_dominant());
            let again = d.to_dominant(&dom.weight).unwrap();
            prop_assert_eq!(again.weight, dom.weight);
            prop_assert_eq!(again.steps, 0);
        }
    }

    #[test]
    fn orbit_intervals_stay_between((d, x) in datum_and_weight(), depth in 0i64..=4) {
        let top = &d.weyl_vector() + &Weight::new(x.labels.iter().map(|m| m.abs()).collect(), 0);
        let floor = &top - &d.root_to_weight(&RootVector(vec![depth; d.rank()]));
        let pts = d.orbit_interval_offsets(&top, &floor).unwrap();
        let mut seen = std::collections::HashSet::new();
        for (p, off) in &pts {
            prop_assert!(seen.insert(p.weight.clone()));
            prop_assert!(off.is_nonnegative());
            let up = d.weight_to_root(&(&top - &p.weight)).unwrap();
            prop_assert!(up.is_nonnegative());
        }
    }

    #[test]
    fn kostant_specializes_to_partition_count(
        name in prop::sample::select(vec!["A2", "A1~"]),
        a in 0i64..=2, b in 0i64..=2, c in 0i64..=2,
    ) {
        let d = CartanDatum::named(name).unwrap();
        let gamma = if d.rank() == 2 { RootVector(vec![a, b + c]) } else { RootVector(vec![a, b, c]) };
        let h = gamma.height() as usize;
        let slice = d.roots_up_to(h);
        let k = t_partition(&gamma, &slice).unwrap();
        prop_assert_eq!(k.evaluate(1), brute_partitions(&gamma, &slice.with_multiplicities()));
        prop_assert!(k.degree().unwrap() <= h);
        prop_assert_eq!(k.coeff(h), 1);
    }

    #[test]
    fn kostka_tables_are_unitriangular(a in 0i64..=2, b in 0i64..=2, depth in 0usize..=4) {
        let d = CartanDatum::named("A2").unwrap();
        let lambda = Weight::from_labels(vec![a, b]);
        let table = kostka_table(&d, &lambda, depth).unwrap();
        prop_assert_eq!(table.get(&lambda), Some(&Poly::one()));
        for e in &table.entries {
            prop_assert!(e.offset.is_nonnegative());
            prop_assert!(e.value.degree().unwrap_or(0) <= e.offset.height() as usize);
        }
    }

    #[test]
    fn c_inverts_k(
        name in prop::sample::select(vec!["A2", "B2", "A1~"]),
        a in 0i64..=2, b in 0i64..=2, depth in 0usize..=3,
    ) {
        let d = CartanDatum::named(name).unwrap();
        let mut labels = vec![a, b];
        labels.resize(d.rank(), 0);
        let lambda = Weight::from_labels(labels);
        let c = c_expansion(&d, &lambda, depth).unwrap();
        let k = kostka_table(&d, &lambda, depth).unwrap();
        for target in &k.entries {
            let mut sum = Poly::zero();
            for e in &c.entries {
                let inner = kostka_table(&d, &e.mu, depth).unwrap();
                if let Some(v) = inner.get(&target.mu) {
                    sum += &(&e.c * v);
                }
            }
            let expected = if target.mu == lambda { Poly::one() } else { Poly::zero() };
            prop_assert_eq!(sum, expected);
        }
    }

    #[test]
    fn hl_functions_shift_with_delta(a in 0i64..=2, b in 1i64..=2, k in -2i64..=2) {
        let d = CartanDatum::named("A1~").unwrap();
        let lambda = Weight::from_labels(vec![a, b]);
        let p = hl_function(&d, &lambda, 3).unwrap();
        let q = hl_function(&d, &lambda.shift_delta(k), 3).unwrap();
        prop_assert_eq!(q.anchor(), &lambda.shift_delta(k));
        prop_assert_eq!(p.terms().collect::<Vec<_>>(), q.terms().collect::<Vec<_>>());
    }

    #[test]
    fn root_slices_grow_monotonically(d in datum(), h1 in 0usize..=5, extra in 0usize..=3) {
        let small = d.roots_up_to(h1).with_multiplicities();
        let big = d.roots_up_to(h1 + extra);
        for (r, m) in small {
            prop_assert_eq!(big.multiplicity(&r), m);
        }
    }
}

#[test]
fn symmetrizers_and_null_root() {
    for name in ALGEBRAS {
        let d = CartanDatum::named(name).unwrap();
        let (a, s) = (d.matrix(), d.symmetrizer());
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                assert_eq!(s[i] * a[i][j], s[j] * a[j][i], "{name}");
            }
        }
        if let Some(delta) = d.delta() {
            for i in 0..d.rank() {
                let x = RootVector::simple(d.rank(), i);
                assert_eq!(d.bilinear_roots(&delta, &x), 0.into(), "{name}");
            }
        } else {
            let n = d.finite_positive_roots().len() as i64;
            assert_eq!(d.coroot_height_counts().values().sum::<usize>() as i64, n);
            assert_eq!(d.exponents().iter().sum::<i64>(), n, "{name}");
        }
    }
}
