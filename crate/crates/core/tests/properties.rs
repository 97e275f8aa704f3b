use proptest::prelude::*;

use num_traits::Zero;
use qfib::composition::{self, FirstPart};
use qfib::quadric::matrix::{rat, ratio, Rational, RationalMatrix};
use qfib::quadric::symbolic::{symbolic_det, MultiPoly};
use qfib::quadric::{self};
use qfib::{poset, topology, OddComposition};

/// A uniformly chosen member of `F_n` for some `n` in `range`.
fn member(range: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = OddComposition> {
    range.prop_flat_map(|n| {
        let all = composition::enumerate(n).unwrap();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// Two or three members of the same `F_n`.
fn pair(range: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (OddComposition, OddComposition)> {
    range.prop_flat_map(|n| {
        let all = composition::enumerate(n).unwrap();
        let k = all.len();
        (0..k, 0..k).prop_map(move |(i, j)| (all[i].clone(), all[j].clone()))
    })
}

fn triple(
    range: std::ops::RangeInclusive<u32>,
) -> impl Strategy<Value = (OddComposition, OddComposition, OddComposition)> {
    range.prop_flat_map(|n| {
        let all = composition::enumerate(n).unwrap();
        let k = all.len();
        (0..k, 0..k, 0..k).prop_map(move |(i, j, l)| (all[i].clone(), all[j].clone(), all[l].clone()))
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn phi_and_psi_invert(g in member(1..=15)) {
        match composition::classify(&g) {
            FirstPart::One => {
                let down = composition::phi(&g).unwrap();
                prop_assert_eq!(down.n(), g.n() - 1);
                prop_assert_eq!(composition::phi_inverse(&down), g);
            }
            FirstPart::GreaterThanOne => {
                let down = composition::psi(&g).unwrap();
                prop_assert_eq!(down.n(), g.n() - 2);
                prop_assert_eq!(composition::psi_inverse(&down).unwrap(), g);
            }
        }
    }

    #[test]
    fn inverse_maps_land_in_the_right_half(g in member(1..=15)) {
        let up = composition::phi_inverse(&g);
        prop_assert_eq!(composition::classify(&up), FirstPart::One);
        prop_assert_eq!(composition::phi(&up).unwrap(), g.clone());
        let up = composition::psi_inverse(&g).unwrap();
        prop_assert_eq!(composition::classify(&up), FirstPart::GreaterThanOne);
        prop_assert_eq!(composition::psi(&up).unwrap(), g);
    }

    #[test]
    fn literal_and_json_round_trip(g in member(1..=20)) {
        prop_assert_eq!(g.to_string().parse::<OddComposition>().unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<OddComposition>(&json).unwrap(), g);
    }

    #[test]
    fn order_matches_reachability((a, b) in pair(1..=10)) {
        prop_assert_eq!(poset::leq(&a, &b).unwrap(), poset::leq_oracle(&a, &b).unwrap());
    }

    #[test]
    fn expansion_vector_reconstructs((a, b) in pair(1..=12)) {
        match poset::expansion_vector(&a, &b) {
            Some(m) => {
                prop_assert!(poset::leq(&a, &b).unwrap());
                prop_assert_eq!(m.apply(&b), a.clone());
                let drop: u32 = m.coords().iter().sum();
                prop_assert_eq!(poset::rank(&b) - poset::rank(&a), drop);
            }
            None => prop_assert!(!poset::leq(&a, &b).unwrap()),
        }
    }

    #[test]
    fn order_is_antisymmetric((a, b) in pair(1..=12)) {
        if poset::leq(&a, &b).unwrap() && poset::leq(&b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn covers_raise_rank_by_one(g in member(1..=16)) {
        // covers_of lists the elements directly below, covered_by those directly above
        for down in poset::covers_of(&g) {
            prop_assert_eq!(poset::rank(&down) + 1, poset::rank(&g));
            prop_assert!(poset::covered_by(&down).contains(&g));
        }
        for up in poset::covered_by(&g) {
            prop_assert_eq!(poset::rank(&up), poset::rank(&g) + 1);
            prop_assert!(poset::covers_of(&up).contains(&g));
        }
    }

    #[test]
    fn meet_laws((a, b, c) in triple(1..=12)) {
        let ab = poset::meet(&a, &b).unwrap();
        prop_assert_eq!(poset::meet(&a, &a).unwrap(), a.clone());
        prop_assert_eq!(poset::meet(&b, &a).unwrap(), ab.clone());
        prop_assert_eq!(
            poset::meet(&ab, &c).unwrap(),
            poset::meet(&a, &poset::meet(&b, &c).unwrap()).unwrap()
        );
        prop_assert!(poset::leq(&ab, &a).unwrap() && poset::leq(&ab, &b).unwrap());
        if poset::leq(&c, &a).unwrap() && poset::leq(&c, &b).unwrap() {
            prop_assert!(poset::leq(&c, &ab).unwrap());
        }
        // meet with something above is the element itself
        if poset::leq(&a, &b).unwrap() {
            prop_assert_eq!(ab, a);
        }
    }

    #[test]
    fn down_set_size_is_a_product(g in member(1..=12)) {
        let set = poset::down_set(&g);
        prop_assert_eq!(set.len() as u64, poset::down_set_size(&g));
        let product: u64 = g.parts().iter().map(|&p| u64::from(p + 1) / 2).product();
        prop_assert_eq!(product, poset::down_set_size(&g));
        prop_assert!(set.contains(&OddComposition::all_ones(g.n())));
    }

    #[test]
    fn maximality_by_pattern(g in member(1..=20)) {
        prop_assert_eq!(poset::is_maximal_by_pattern(&g), poset::covered_by(&g).is_empty());
    }

    #[test]
    fn fibonacci_count_recurrence(n in 3u32..=25) {
        let c = |m| composition::count(m).unwrap();
        prop_assert_eq!(c(n), c(n - 1) + c(n - 2));
    }

    #[test]
    fn component_recurrence(n in 4u32..=25) {
        let a = |m| topology::component_count_recurrence(m).unwrap();
        prop_assert_eq!(a(n), a(n - 1) + a(n - 3));
    }

    #[test]
    fn poincare_recurrence_and_unimodality(n in 3u32..=25) {
        let p = topology::poincare_closed_form(n).unwrap();
        let expected = topology::poincare_closed_form(n - 1).unwrap()
            .add(&topology::poincare_closed_form(n - 2).unwrap().shift());
        prop_assert_eq!(&p, &expected);
        prop_assert!(topology::is_unimodal(&p));
    }

    #[test]
    fn fixed_space_elements_are_fixed(n in 1usize..=9, coeffs in prop::collection::vec(small_rational(), 9)) {
        let nil = quadric::jordan_nilpotent(n).unwrap();
        let u = quadric::unipotent_exp(&nil).unwrap();
        let basis = quadric::fixed_symmetric_space(n).unwrap();
        let mut a = RationalMatrix::zeros(n, n);
        for (b, c) in basis.iter().zip(&coeffs) {
            a = &a + &b.scale(c);
        }
        prop_assert!(quadric::is_u_fixed(&a, &nil).unwrap());
        prop_assert!(quadric::is_fixed_by_action(&a, &u).unwrap());
        prop_assert_eq!(quadric::act(&u, &a).unwrap(), a);
    }

    #[test]
    fn fixed_criteria_agree_on_arbitrary_symmetric(n in 1usize..=6, entries in prop::collection::vec(-3i64..=3, 21)) {
        let mut a = RationalMatrix::zeros(n, n);
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = rat(it.next().unwrap());
                a.set(i, j, x.clone());
                a.set(j, i, x);
            }
        }
        let nil = quadric::jordan_nilpotent(n).unwrap();
        let u = quadric::unipotent_exp(&nil).unwrap();
        prop_assert_eq!(quadric::is_u_fixed(&a, &nil).unwrap(), quadric::is_fixed_by_action(&a, &u).unwrap());
    }

    #[test]
    fn torus_limit_picks_the_top_parameter(k in 0usize..=4, params in prop::collection::vec(small_rational(), 5), top in 1i64..=50) {
        let n = 2 * k + 1;
        let mut params = params[..k].to_vec();
        params.push(rat(top));
        let limit = quadric::torus_limit(n, &params).unwrap();
        prop_assert_eq!(limit, quadric::t_fixed_point(n).unwrap().scale(&rat(top)));
    }

    #[test]
    fn det_is_multiplicative(a in prop::collection::vec(-5i64..=5, 9), b in prop::collection::vec(-5i64..=5, 9)) {
        let m = |v: &[i64]| RationalMatrix::from_fn(3, 3, |i, j| rat(v[3 * i + j]));
        let (a, b) = (m(&a), m(&b));
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        prop_assert_eq!(a.rank() + a.nullspace().len(), 3);
    }

    #[test]
    fn symbolic_det_agrees_with_numeric(n in 1usize..=4, values in prop::collection::vec(small_rational(), 3)) {
        // generic element of the fixed space, evaluated before and after expansion
        let basis = quadric::fixed_symmetric_space(n).unwrap();
        let vars = basis.len();
        let entries: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = MultiPoly::zero(vars);
                        for (v, b) in basis.iter().enumerate() {
                            let c = b.get(i, j);
                            if !c.is_zero() {
                                let mut unit = vec![Rational::zero(); vars];
                                unit[v] = c.clone();
                                p = p.add(&MultiPoly::from_linear(&qfib::quadric::symbolic::LinearForm::new(unit)));
                            }
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let det = symbolic_det(&entries, vars).unwrap();
        let point: Vec<Rational> = values.into_iter().cycle().take(vars).collect();
        let mut a = RationalMatrix::zeros(n, n);
        for (b, x) in basis.iter().zip(&point) {
            a = &a + &b.scale(x);
        }
        prop_assert_eq!(det.eval(&point), a.det().unwrap());
    }
}
