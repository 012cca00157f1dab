use osp_yangian::{
    check_rsrs, check_s_eq_cb, compare_s_and_cb, reflection_generator, tau, tau_entrywise, twisted_generator,
    Generator, GradedMatrix, MonodromyRep, RMatrix, Rational, SuperSpace,
};

fn space(m: usize, n: usize, t: i64) -> SuperSpace {
    SuperSpace::new(m, n, t).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn single(s: SuperSpace, a: Rational) -> MonodromyRep {
    MonodromyRep::new(RMatrix::new(s), vec![a]).unwrap()
}

#[test]
fn twisted_generator_at_origin_site_is_r_squared() {
    for s in [space(3, 0, 1), space(0, 2, -1), space(1, 2, 1)] {
        let rep = single(s, Rational::zero());
        for u in [q(5, 2), q(-8, 3)] {
            let r = rep.rmatrix().eval(&u).unwrap();
            assert_eq!(twisted_generator(&rep, &u).unwrap(), &r * &r, "{s}");
        }
    }
}

#[test]
fn single_site_reflection_generator_closed_form() {
    for s in [space(3, 0, 1), space(0, 2, -1), space(2, 2, 1)] {
        let a = q(2, 9);
        let rep = single(s, a.clone());
        for u in [q(7, 5), q(-13, 4)] {
            let r = rep.rmatrix();
            let plus = &u + &a;
            let scalar = &Rational::one() - &(&plus * &plus).recip().unwrap();
            let want = (&r.eval(&plus).unwrap() * &r.eval(&(&u - &a)).unwrap()).scale(&scalar.recip().unwrap());
            assert_eq!(reflection_generator(&rep, &u).unwrap(), want, "{s}");
        }
    }
}

#[test]
fn reflection_generator_is_identity_at_zero() {
    let s = space(1, 2, 1);
    let rep = MonodromyRep::new(RMatrix::new(s), vec![q(1, 3), q(-2, 5)]).unwrap();
    assert_eq!(reflection_generator(&rep, &Rational::zero()).unwrap(), GradedMatrix::identity(s, 3));
}

#[test]
fn twisted_generator_is_not_trivial() {
    let s = space(3, 0, 1);
    let rep = MonodromyRep::with_default_sites(RMatrix::new(s), 2).unwrap();
    let id = GradedMatrix::identity(s, 3);
    for u in [q(3, 1), q(-5, 7)] {
        let sv = twisted_generator(&rep, &u).unwrap();
        assert_ne!(sv, id);
        assert!(sv.as_scalar().is_none());
    }
}

#[test]
fn entrywise_tau_agrees_with_the_matrix_transpose() {
    for s in [space(3, 0, 1), space(0, 2, -1), space(1, 2, 1), space(2, 2, 1)] {
        let rep = MonodromyRep::with_default_sites(RMatrix::new(s), 2).unwrap();
        for u in [q(4, 3), q(-11, 6)] {
            assert_eq!(tau_entrywise(&rep, &u).unwrap(), tau(&rep, &u).unwrap(), "{s}");
        }
    }
}

#[test]
fn twisted_and_reflection_generators_are_proportional() {
    for s in [space(3, 0, 1), space(0, 2, -1), space(1, 2, 1)] {
        let rep = MonodromyRep::with_default_sites(RMatrix::new(s), 2).unwrap();
        for u in [q(7, 9), q(-5, 8), q(19, 11)] {
            let res = compare_s_and_cb(&rep, &u);
            assert!(res.pass, "{s} at {u}: {:?}", res.witness);
        }
    }
}

#[test]
fn small_representation_passes_the_boundary_suites() {
    let rep = MonodromyRep::with_default_sites(RMatrix::new(space(0, 2, -1)), 2).unwrap();
    for report in [check_rsrs(&rep, Generator::Twisted), check_rsrs(&rep, Generator::Reflection), check_s_eq_cb(&rep)] {
        assert!(report.passed(), "{}: {:?}", report.suite, report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn wrong_kappa_breaks_the_reflection_equation() {
    let s = space(0, 2, -1);
    let r = RMatrix::with_kappa(s, &s.kappa() + &Rational::one());
    let rep = MonodromyRep::with_default_sites(r, 1).unwrap();
    assert!(!check_rsrs(&rep, Generator::Twisted).passed());
}

#[test]
fn tau_sign_for_the_odd_even_pair_of_osp12() {
    let s = space(1, 2, 1);
    assert_eq!((s.parity(3).unwrap(), s.parity(1).unwrap()), (1, 0));
    assert_eq!((s.theta(3).unwrap(), s.theta(1).unwrap()), (-1, 1));
    let rep = MonodromyRep::with_default_sites(RMatrix::new(s), 2).unwrap();
    let u = q(7, 3);
    let lhs = rep.entry(&tau(&rep, &u).unwrap(), 3, 1).unwrap();
    let t = rep.monodromy(&(-&u - rep.kappa())).unwrap();
    let rhs = rep.entry(&t, s.conjugate_index(1).unwrap(), s.conjugate_index(3).unwrap()).unwrap();
    assert!(!rhs.is_zero());
    assert_eq!(lhs, rhs);
}
