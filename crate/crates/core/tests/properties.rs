use proptest::prelude::*;

use toroidal_core::characters::{plethystic_exp, plethystic_log, GradedSeries};
use toroidal_core::exactalg::{q_binomial, q_factorial, rat};
use toroidal_core::quiver::{builtin, DimensionVector};
use toroidal_core::shuffle::{certify_symmetric, delta, sym_full, Algebra, KernelKind, ShuffleElement};
use toroidal_core::verify::{kernel_derivation, SubOutcome};
use toroidal_core::{LaurentPoly, Monomial, RationalFunction, Variable};

fn var_strategy() -> impl Strategy<Value = Variable> {
    prop_oneof![
        Just(Variable::Q),
        Just(Variable::T),
        (0usize..3, 1u32..4).prop_map(|(v, i)| Variable::slot(v, i)),
    ]
}

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec((var_strategy(), -3i32..4), 0..3), -5i64..6), 0..5).prop_map(
        |terms| {
            LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (Monomial::from_pairs(m), rat(c))))
        },
    )
}

fn series_strategy(nz: usize, qmax: u32, zmax: i64) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec((0..=qmax, prop::collection::vec(0..=zmax, nz), -2i128..3), 0..5).prop_map(
        move |terms| {
            let mut s = GradedSeries::zero(nz, qmax, zmax);
            for (q, z, c) in terms {
                if z.iter().sum::<i64>() > 0 && z.iter().sum::<i64>() <= zmax {
                    s.add_term(q, z, c).unwrap();
                }
            }
            s
        },
    )
}

fn gen_strategy(rank: usize) -> impl Strategy<Value = (usize, i32)> {
    (0..rank, -2i32..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn display_parse_roundtrip(p in poly_strategy()) {
        let back: LaurentPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn fraction_cancellation(f in poly_strategy(), g in poly_strategy()) {
        prop_assume!(!g.is_zero());
        let (f, g): (RationalFunction, RationalFunction) = (f.into(), g.into());
        prop_assert!(f.mul(&g).div(&g).unwrap().equals(&f));
        prop_assert!(f.add(&g).sub(&g).equals(&f));
    }

    #[test]
    fn bullet_product_associative(a in gen_strategy(2), b in gen_strategy(2), c in gen_strategy(2)) {
        let alg = Algebra::new(builtin("a2").unwrap(), KernelKind::Bullet).unwrap();
        let [ea, eb, ec] = [a, b, c].map(|(i, n)| alg.generator(i, n, 1).unwrap());
        let left = alg.mul(&alg.mul(&ea, &eb).unwrap(), &ec).unwrap();
        let right = alg.mul(&ea, &alg.mul(&eb, &ec).unwrap()).unwrap();
        prop_assert!(left.value.equals(&right.value));
        certify_symmetric(&left.value, &left.degree).unwrap();
    }

    #[test]
    fn super_product_associative(a in gen_strategy(3), b in gen_strategy(3), c in gen_strategy(3)) {
        let alg = Algebra::new(builtin("super:2|1:++-").unwrap(), KernelKind::Super).unwrap();
        let [ea, eb, ec] = [a, b, c].map(|(i, n)| alg.generator(i, n, 1).unwrap());
        let left = alg.mul(&alg.mul(&ea, &eb).unwrap(), &ec).unwrap();
        let right = alg.mul(&ea, &alg.mul(&eb, &ec).unwrap()).unwrap();
        prop_assert!(left.value.equals(&right.value));
    }

    #[test]
    fn diamond_unit_and_associativity(a in -2i32..3, b in -2i32..3, c in -2i32..3) {
        let alg = Algebra::new(builtin("triple:a1").unwrap(), KernelKind::Diamond).unwrap();
        let [ea, eb, ec] = [a, b, c].map(|n| alg.generator(0, n, 1).unwrap());
        prop_assert_eq!(alg.mul(&alg.unit(), &ea).unwrap(), ea.clone());
        prop_assert_eq!(alg.mul(&ea, &alg.unit()).unwrap(), ea.clone());
        let left = alg.mul(&alg.mul(&ea, &eb).unwrap(), &ec).unwrap();
        let right = alg.mul(&ea, &alg.mul(&eb, &ec).unwrap()).unwrap();
        prop_assert!(left.value.equals(&right.value));
    }

    #[test]
    fn divided_powers(r in 1u32..4, n in -3i32..4) {
        // e_{i,n}^r = q^{-r(r-1)/2} [r]! (x_1..x_r)^n
        let alg = Algebra::new(builtin("a1").unwrap(), KernelKind::Bullet).unwrap();
        let e = alg.generator(0, n, 1).unwrap();
        let power = alg.mul_all(&vec![e; r as usize]).unwrap();
        let scale = q_factorial(r).mul(&LaurentPoly::q_pow(-((r * (r - 1)) as i32) / 2));
        let want = alg.generator(0, n, r).unwrap().scale(&scale.into());
        prop_assert!(power.value.equals(&want.value));
    }

    #[test]
    fn sym_of_delta_is_scalar(r in 1u32..5) {
        let s = sym_full(&delta(0, r).unwrap(), 0, r);
        let want = q_factorial(r).mul(&LaurentPoly::q_pow(-((r * (r - 1)) as i32) / 2));
        prop_assert_eq!(s.as_laurent(), Some(&want));
    }

    #[test]
    fn pascal_and_symmetry(l in 1i64..9, h in 0i64..9) {
        prop_assume!(h <= l);
        let rhs = LaurentPoly::q_pow(-h as i32).mul(&q_binomial(l - 1, h))
            .add(&LaurentPoly::q_pow((l - h) as i32).mul(&q_binomial(l - 1, h - 1)));
        prop_assert_eq!(q_binomial(l, h), rhs);
        prop_assert_eq!(q_binomial(l, h), q_binomial(l, l - h));
        let bar = q_binomial(l, h).substitute_monomial(&[(Variable::Q, (rat(1), Monomial::var(Variable::Q, -1)))].into_iter().collect());
        prop_assert_eq!(bar, q_binomial(l, h));
    }

    #[test]
    fn exp_is_multiplicative(a in series_strategy(2, 3, 3), b in series_strategy(2, 3, 3)) {
        let lhs = plethystic_exp(&a.add(&b).unwrap()).unwrap();
        let rhs = plethystic_exp(&a).unwrap().mul(&plethystic_exp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_inverts_exp(a in series_strategy(2, 3, 3)) {
        prop_assert_eq!(plethystic_log(&plethystic_exp(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn t_specialization(name in prop_oneof![Just("a2"), Just("a3")], seed in prop::collection::vec(0u32..3, 6)) {
        let qw = builtin(name).unwrap();
        let n = qw.rank();
        let alpha = DimensionVector(seed[..n].iter().map(|k| k % 2).collect());
        let gamma = DimensionVector(seed[3..3 + n].to_vec());
        let subs = kernel_derivation(&qw, &alpha, &gamma, None).unwrap();
        prop_assert_eq!(&subs[2], &SubOutcome::Proved);
    }

    #[test]
    fn products_are_symmetric(gens in prop::collection::vec(gen_strategy(2), 1..4)) {
        let alg = Algebra::new(builtin("kronecker").unwrap(), KernelKind::Bullet).unwrap();
        let elems: Vec<ShuffleElement> = gens.iter().map(|&(i, n)| alg.generator(i, n, 1).unwrap()).collect();
        let p = alg.mul_all(&elems).unwrap();
        certify_symmetric(&p.value, &p.degree).unwrap();
        // only cross-vertex denominators survive symmetrization
        prop_assert!(alg.certify_element(&p).is_ok());
        if gens.iter().all(|g| g.0 == gens[0].0) {
            prop_assert!(p.value.as_laurent().is_some());
        }
    }
}
