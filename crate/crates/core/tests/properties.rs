//! Property tests for rings, forms and Euclidean steps.

use adcforms::euclid::{
    classify_euclidean_diagonal_z, euclidean_step_form, euclideanity_diagonal_z, euclideanity_search,
    is_euclidean, EuclideanClass, StepRing,
};
use adcforms::forms::{determinant, maximality_special_z, AnyForm, Maximality, QuadraticForm};
use adcforms::limits::Limits;
use adcforms::rings::{poly, Integers, LocalizedIntegers, Poly, PolyRing, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn f3() -> PolyRing {
    PolyRing::new(3).unwrap()
}

fn loc23() -> LocalizedIntegers {
    LocalizedIntegers::new([2, 3]).unwrap()
}

fn poly_strategy(q: u32, max_deg: u32) -> impl Strategy<Value = Poly> {
    (0..(q as u128).pow(max_deg + 1)).prop_map(move |c| Poly::from_code(c, q))
}

fn loc_strategy() -> impl Strategy<Value = BigRational> {
    (-5000i64..5000, 0u32..4, 0u32..3).prop_map(|(n, a, b)| rat(n, 2i64.pow(a) * 3i64.pow(b)))
}

/// Units by definition, independent of the ring's own `is_unit`.
fn unit_oracle_z(a: &BigInt) -> bool {
    a.abs().is_one()
}

fn unit_oracle_poly(a: &Poly) -> bool {
    a.degree() == Some(0)
}

fn unit_oracle_loc(a: &BigRational) -> bool {
    let s_only = |n: &BigInt| {
        let mut m = n.abs();
        if m.is_zero() {
            return false;
        }
        for p in [2, 3] {
            while (&m % BigInt::from(p)).is_zero() {
                m /= p;
            }
        }
        m.is_one()
    };
    s_only(a.numer()) && s_only(a.denom())
}

fn check_axioms<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem, unit: impl Fn(&R::Elem) -> bool) {
    assert_eq!(r.norm(a).is_zero(), r.is_zero(a));
    let ab = r.mul(a, b);
    assert_eq!(r.norm(&ab), &r.norm(a) * &r.norm(b));
    assert_eq!(r.norm(a).is_one(), unit(a));
    assert_eq!(r.is_unit(a), unit(a));
}

fn check_fraction_homomorphism<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem, d: &R::Elem) {
    if r.is_zero(b) || r.is_zero(d) {
        return;
    }
    let x = r.ratio(a, b).unwrap();
    let y = r.ratio(c, d).unwrap();
    let xy = r.frac_mul(&x, &y);
    assert_eq!(r.norm_fraction(&xy), &r.norm_fraction(&x) * &r.norm_fraction(&y));
}

fn check_scalar_step<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem) {
    if r.is_zero(b) {
        return;
    }
    let x = r.ratio(a, b).unwrap();
    let y = r.euclidean_step_scalar(&x);
    assert!(r.norm_fraction(&r.frac_sub(&x, &r.embed(&y))).less_than_one());
}

proptest! {
    #[test]
    fn integer_norm_axioms(a in -100000i64..100000, b in -100000i64..100000, c in -999i64..999, d in 1i64..999) {
        let (a, b) = (int(a), int(b));
        check_axioms(&Integers, &a, &b, unit_oracle_z);
        check_fraction_homomorphism(&Integers, &a, &b, &int(c), &int(d));
        check_scalar_step(&Integers, &a, &b);
    }

    #[test]
    fn polynomial_norm_axioms(a in poly_strategy(3, 5), b in poly_strategy(3, 5), c in poly_strategy(3, 3), d in poly_strategy(3, 3)) {
        let r = f3();
        check_axioms(&r, &a, &b, unit_oracle_poly);
        check_fraction_homomorphism(&r, &a, &b, &c, &d);
        check_scalar_step(&r, &a, &b);
    }

    #[test]
    fn polynomial_norm_axioms_over_f25(a in poly_strategy(25, 2), b in poly_strategy(25, 2)) {
        let r = PolyRing::new(25).unwrap();
        check_axioms(&r, &a, &b, unit_oracle_poly);
        check_scalar_step(&r, &a, &b);
    }

    #[test]
    fn localized_norm_axioms(a in loc_strategy(), b in loc_strategy(), c in loc_strategy(), d in loc_strategy()) {
        let r = loc23();
        check_axioms(&r, &a, &b, unit_oracle_loc);
        check_fraction_homomorphism(&r, &a, &b, &c, &d);
        check_scalar_step(&r, &a, &b);
    }

    #[test]
    fn localized_norm_is_dominated(x in -1000000i64..1000000, which in 0usize..4) {
        prop_assume!(x != 0);
        let sets: [&[u64]; 4] = [&[2], &[3], &[2, 5], &[7, 11, 13]];
        let r = LocalizedIntegers::new(sets[which].iter().copied()).unwrap();
        let xs = BigRational::from_integer(int(x));
        prop_assert!(r.norm(&xs).value() <= Integers.norm(&int(x)).value());
    }

    #[test]
    fn quotient_size_is_the_norm(m in poly_strategy(3, 3)) {
        // |F_3[t] / (m)| counted as distinct remainders of all polynomials of degree <= deg m + 1
        prop_assume!(!m.is_zero());
        let r = f3();
        let field = r.field();
        let deg = m.degree().unwrap();
        let mut rems: Vec<Poly> = poly::all_up_to_degree(3, deg + 1).map(|f| poly::rem(field, &f, &m)).collect();
        rems.sort_by_key(|p| p.code(3));
        rems.dedup();
        prop_assert_eq!(BigRational::from_integer(int(rems.len() as i64)), r.norm(&m).value().clone());
    }
}

#[test]
fn integer_quotient_sizes() {
    for n in 1i64..60 {
        let mut rems: Vec<i64> = (-3 * n..3 * n).map(|k| k.rem_euclid(n)).collect();
        rems.sort();
        rems.dedup();
        assert_eq!(BigRational::from_integer(int(rems.len() as i64)), Integers.norm(&int(n)).value().clone());
    }
}

fn form_z(coeffs: &[i64], n: usize) -> Option<QuadraticForm<Integers>> {
    let mut entries = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            entries.push((i, j, int(coeffs[k])));
            k += 1;
        }
    }
    QuadraticForm::new(Integers, n, entries).ok()
}

fn form_poly(r: &PolyRing, coeffs: &[Poly], n: usize) -> Option<QuadraticForm<PolyRing>> {
    let mut entries = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            entries.push((i, j, coeffs[k].clone()));
            k += 1;
        }
    }
    QuadraticForm::new(r.clone(), n, entries).ok()
}

fn check_form_identities<R: Ring>(q: &QuadraticForm<R>, x: &[R::Frac], y: &[R::Frac], s: &R::Frac, xe: &[R::Elem], ye: &[R::Elem]) {
    let r = q.ring();
    let sum: Vec<R::Frac> = x.iter().zip(y).map(|(a, b)| r.frac_add(a, b)).collect();
    let two = r.frac_from_i64(2);
    let rhs = r.frac_add(
        &r.frac_add(&q.evaluate(x).unwrap(), &q.evaluate(y).unwrap()),
        &r.frac_mul(&two, &q.bilinear(x, y).unwrap()),
    );
    assert_eq!(q.evaluate(&sum).unwrap(), rhs);

    let sx: Vec<R::Frac> = x.iter().map(|a| r.frac_mul(s, a)).collect();
    assert_eq!(q.evaluate(&sx).unwrap(), r.frac_mul(&r.frac_mul(s, s), &q.evaluate(x).unwrap()));

    let xf: Vec<R::Frac> = xe.iter().map(|a| r.embed(a)).collect();
    let yf: Vec<R::Frac> = ye.iter().map(|a| r.embed(a)).collect();
    let b2 = r.frac_mul(&two, &q.bilinear(&xf, &yf).unwrap());
    assert!(r.to_integral(&b2).is_some());
    assert_eq!(q.evaluate(&xf).unwrap(), r.embed(&q.evaluate_elems(xe).unwrap()));
}

/// Product of elementary matrices `I + c E_ij` and a unit scaling.
fn unimodular<R: Ring>(r: &R, n: usize, ops: &[(usize, usize, R::Elem)], unit: &R::Elem) -> Vec<Vec<R::Elem>> {
    let mut u: Vec<Vec<R::Elem>> = (0..n).map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect();
    for (i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        // row_i += c * row_j
        let row_j = u[j].clone();
        for (k, v) in row_j.iter().enumerate() {
            u[i][k] = r.add(&u[i][k], &r.mul(c, v));
        }
    }
    for v in u[0].iter_mut() {
        *v = r.mul(v, unit);
    }
    u
}

fn check_discriminant_change<R: Ring>(q: &QuadraticForm<R>, u: &[Vec<R::Elem>]) {
    let r = q.ring();
    let uf: Vec<Vec<R::Frac>> = u.iter().map(|row| row.iter().map(|a| r.embed(a)).collect()).collect();
    let det = determinant(r, uf);
    let moved = q.change_of_variables(u).unwrap();
    assert_eq!(moved.discriminant(), r.frac_mul(&r.frac_mul(&det, &det), &q.discriminant()));
}

proptest! {
    #[test]
    fn integer_form_identities(
        n in 1usize..4,
        coeffs in prop::collection::vec(-6i64..7, 6),
        xs in prop::collection::vec((-20i64..20, 1i64..9), 6),
        s in (-9i64..9, 1i64..9),
        ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..4), 0..5),
        sign in prop::bool::ANY,
    ) {
        let Some(q) = form_z(&coeffs, n) else { return Ok(()) };
        let x: Vec<BigRational> = xs[..n].iter().map(|&(a, b)| rat(a, b)).collect();
        let y: Vec<BigRational> = xs[3..3 + n].iter().map(|&(a, b)| rat(b, a.abs() + 1)).collect();
        let xe: Vec<BigInt> = xs[..n].iter().map(|&(a, _)| int(a)).collect();
        let ye: Vec<BigInt> = xs[3..3 + n].iter().map(|&(_, b)| int(b)).collect();
        check_form_identities(&q, &x, &y, &rat(s.0, s.1), &xe, &ye);
        let ops: Vec<(usize, usize, BigInt)> = ops.into_iter().map(|(i, j, c)| (i, j, int(c))).collect();
        let u = unimodular(&Integers, n, &ops, &int(if sign { 1 } else { -1 }));
        check_discriminant_change(&q, &u);
    }

    #[test]
    fn polynomial_form_identities(
        n in 1usize..4,
        coeffs in prop::collection::vec(poly_strategy(3, 2), 6),
        xs in prop::collection::vec((poly_strategy(3, 2), poly_strategy(3, 1)), 6),
        s in (poly_strategy(3, 2), poly_strategy(3, 1)),
        ops in prop::collection::vec((0usize..3, 0usize..3, poly_strategy(3, 1)), 0..5),
        unit in 1u32..3,
    ) {
        let r = f3();
        let Some(q) = form_poly(&r, &coeffs, n) else { return Ok(()) };
        let frac = |(a, b): &(Poly, Poly)| {
            let b = if b.is_zero() { Poly::constant(1) } else { b.clone() };
            r.ratio(a, &b).unwrap()
        };
        prop_assume!(!s.1.is_zero());
        let x: Vec<_> = xs[..n].iter().map(frac).collect();
        let y: Vec<_> = xs[3..3 + n].iter().map(frac).collect();
        let xe: Vec<Poly> = xs[..n].iter().map(|p| p.0.clone()).collect();
        let ye: Vec<Poly> = xs[3..3 + n].iter().map(|p| p.0.clone()).collect();
        check_form_identities(&q, &x, &y, &frac(&s), &xe, &ye);
        let u = unimodular(&r, n, &ops, &Poly::constant(unit));
        check_discriminant_change(&q, &u);
    }

    #[test]
    fn localized_form_identities(
        n in 1usize..4,
        coeffs in prop::collection::vec(loc_strategy(), 6),
        xs in prop::collection::vec(loc_strategy(), 6),
        s in loc_strategy(),
    ) {
        let r = loc23();
        let mut entries = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                entries.push((i, j, coeffs[k].clone()));
                k += 1;
            }
        }
        let Ok(q) = QuadraticForm::new(r.clone(), n, entries) else { return Ok(()) };
        // points of Q^n that are not in Z[1/6]^n
        let x: Vec<BigRational> = xs[..n].iter().map(|a| a / BigRational::from_integer(int(5))).collect();
        let y: Vec<BigRational> = xs[3..3 + n].iter().map(|a| a / BigRational::from_integer(int(7))).collect();
        check_form_identities(&q, &x, &y, &(s / BigRational::from_integer(int(11))), &xs[..n], &xs[3..3 + n]);
    }
}

fn check_step<R: StepRing>(q: &QuadraticForm<R>, x: &[R::Frac]) {
    let r = q.ring();
    let y = euclidean_step_form(q, x, &Limits::default()).expect("Euclidean family");
    let diff: Vec<R::Frac> = x.iter().zip(&y).map(|(a, b)| r.frac_sub(a, &r.embed(b))).collect();
    let v = q.evaluate(&diff).unwrap();
    assert!(r.norm_fraction(&v).less_than_one());
    if x.iter().any(|a| r.to_integral(a).is_none()) {
        assert!(!r.frac_is_zero(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rounding_family_steps(which in 0usize..6, xs in prop::collection::vec((-50i64..50, 1i64..30), 3)) {
        let diag = &classify_euclidean_diagonal_z()[which];
        let diag: Vec<i64> = diag.iter().map(|&a| a as i64).collect();
        let q = QuadraticForm::diagonal_z(&diag).unwrap();
        let x: Vec<BigRational> = xs[..diag.len()].iter().map(|&(a, b)| rat(a, b)).collect();
        check_step(&q, &x);
    }

    #[test]
    fn closest_vector_family_steps(which in 0usize..3, xs in prop::collection::vec((-50i64..50, 1i64..30), 3)) {
        // x^2 + xy + y^2, x^2 + xy + 2y^2 and x^2 + y^2 + z^2 + xy are Euclidean
        let q = match which {
            0 => form_z(&[1, 1, 1], 2).unwrap(),
            1 => form_z(&[1, 1, 2], 2).unwrap(),
            _ => form_z(&[1, 1, 0, 1, 0, 1], 3).unwrap(),
        };
        let x: Vec<BigRational> = xs[..q.dim()].iter().map(|&(a, b)| rat(a, b)).collect();
        check_step(&q, &x);
    }

    #[test]
    fn polynomial_family_steps(which in 0usize..3, xs in prop::collection::vec((poly_strategy(5, 3), poly_strategy(5, 2)), 2)) {
        let (r, diag) = match which {
            0 => (f3(), vec![Poly::constant(1), Poly::constant(1)]),
            1 => (f3(), vec![Poly::constant(1), Poly::monomial(1, 1)]),
            _ => (PolyRing::new(5).unwrap(), vec![Poly::constant(2), Poly::monomial(1, 1)]),
        };
        let q = QuadraticForm::diagonal(r.clone(), diag).unwrap();
        let reduce = |p: &Poly| Poly::from_coeffs(p.coeffs().iter().map(|&c| c % r.q()).collect());
        let x: Vec<_> = xs
            .iter()
            .map(|(a, b)| {
                let b = reduce(b);
                let b = if b.is_zero() { Poly::constant(1) } else { b };
                r.ratio(&reduce(a), &b).unwrap()
            })
            .collect();
        check_step(&q, &x);
    }

    #[test]
    fn localized_family_steps(xs in prop::collection::vec((-500i64..500, 1i64..40), 3), p in prop::sample::select(vec![2u64, 3, 5])) {
        let r = LocalizedIntegers::new([p]).unwrap();
        let one = BigRational::one();
        let q = QuadraticForm::diagonal(r, vec![one.clone(), one.clone(), one]).unwrap();
        let x: Vec<BigRational> = xs.iter().map(|&(a, b)| rat(a, b)).collect();
        check_step(&q, &x);
    }

    #[test]
    fn unary_square_form_matches_scalar_step(a in -500i64..500, b in 1i64..50, pa in poly_strategy(3, 4), pb in poly_strategy(3, 2)) {
        let lim = Limits::default();
        let x = rat(a, b);
        let q = QuadraticForm::diagonal_z(&[1]).unwrap();
        let scalar_ok = Integers.norm_fraction(&(&x - BigRational::from_integer(Integers.euclidean_step_scalar(&x)))).less_than_one();
        prop_assert_eq!(scalar_ok, euclidean_step_form(&q, std::slice::from_ref(&x), &lim).is_ok());

        let r = f3();
        prop_assume!(!pb.is_zero());
        let xf = r.ratio(&pa, &pb).unwrap();
        let qf = QuadraticForm::diagonal(r.clone(), vec![r.one()]).unwrap();
        let scalar_ok = r.norm_fraction(&r.frac_sub(&xf, &r.embed(&r.euclidean_step_scalar(&xf)))).less_than_one();
        prop_assert_eq!(scalar_ok, euclidean_step_form(&qf, &[xf], &lim).is_ok());

        let l = LocalizedIntegers::new([2]).unwrap();
        let ql = QuadraticForm::diagonal(l.clone(), vec![BigRational::one()]).unwrap();
        let scalar_ok = l.norm_fraction(&(&x - l.euclidean_step_scalar(&x))).less_than_one();
        prop_assert_eq!(scalar_ok, euclidean_step_form(&ql, &[x], &lim).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euclideanity_bounds_are_monotone(n in 1usize..3, coeffs in prop::collection::vec(-3i64..4, 3), diag in prop::collection::vec(1i64..5, 3)) {
        let lim = Limits::default();
        if let Some(q) = form_z(&coeffs, n).filter(adcforms::forms::is_positive_definite) {
            let mut last = BigRational::zero();
            for d in 1..=4 {
                let v = euclideanity_search(&q, d, &lim).unwrap().value;
                prop_assert!(v >= last);
                last = v;
            }
        }
        let q = QuadraticForm::diagonal_z(&diag[..n + 1]).unwrap();
        let exact = euclideanity_diagonal_z(&diag[..n + 1].iter().map(|&a| int(a)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(euclideanity_search(&q, 2, &lim).unwrap().value, exact);
    }

    #[test]
    fn localized_values_stay_below_integer_euclideanity(
        diag in prop::collection::vec(1i64..6, 1..4),
        xs in prop::collection::vec(-30i64..30, 3),
        den in 2i64..13,
        p in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let lim = Limits::default();
        let exact = euclideanity_diagonal_z(&diag.iter().map(|&a| int(a)).collect::<Vec<_>>()).unwrap();
        let r = LocalizedIntegers::new([p]).unwrap();
        let q = QuadraticForm::diagonal(r.clone(), diag.iter().map(|&a| BigRational::from_integer(int(a))).collect()).unwrap();
        let x: Vec<BigRational> = xs[..diag.len()].iter().map(|&a| rat(a, den)).collect();
        let y = LocalizedIntegers::raw_step(&q, &x, &lim).unwrap();
        let diff: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        let v = q.evaluate(&diff).unwrap();
        prop_assert!(r.norm_fraction(&v).value() <= &exact);
    }

    #[test]
    fn euclidean_forms_are_not_non_maximal(n in 1usize..4, coeffs in prop::collection::vec(-2i64..4, 6)) {
        let lim = Limits::default();
        let Some(q) = form_z(&coeffs, n) else { return Ok(()) };
        let v = is_euclidean(&AnyForm::Z(q.clone()), &lim).unwrap();
        if v.class == EuclideanClass::Euclidean {
            prop_assert_ne!(maximality_special_z(&q, &lim), Maximality::NotMaximal);
        }
    }
}

#[test]
fn classified_euclidean_diagonals_are_maximal() {
    let lim = Limits::default();
    for d in classify_euclidean_diagonal_z() {
        let d: Vec<i64> = d.iter().map(|&a| a as i64).collect();
        let q = QuadraticForm::diagonal_z(&d).unwrap();
        assert_ne!(maximality_special_z(&q, &lim), Maximality::NotMaximal, "{d:?}");
    }
}
