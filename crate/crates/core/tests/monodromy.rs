use osp_yangian::{
    central_element, check_center, check_centrality, check_modes, check_order1, check_relcomm, check_rtt, order1_algebra,
    tau, Error, GradedMatrix, MonodromyRep, RMatrix, Rational, SuperSpace,
};

fn space(m: usize, n: usize, t: i64) -> SuperSpace {
    SuperSpace::new(m, n, t).unwrap()
}

fn rep(s: SuperSpace, l: usize) -> MonodromyRep {
    MonodromyRep::with_default_sites(RMatrix::new(s), l).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Modes from T(1/x) = N(x)/d(x): each site contributes the quadratic
/// numerator (1−ax)(1−bx)I + x(1−bx)P − x(1−ax)K over (1−ax)(1−bx), b = a−κ,
/// and the series follows from d·T = N term by term.
fn modes_by_recurrence(rep: &MonodromyRep, n_max: usize) -> Vec<GradedMatrix> {
    let s = rep.space();
    let total = rep.sites() + 1;
    let id = GradedMatrix::identity(s, total);
    let mut num: Vec<GradedMatrix> = vec![id.clone()];
    let mut den: Vec<Rational> = vec![Rational::one()];
    for k in (0..rep.sites()).rev() {
        let a = rep.inhomogeneities()[k].clone();
        let b = &a - rep.kappa();
        let p = rep.rmatrix().p().embed(&[1, k + 2], total).unwrap();
        let kk = rep.rmatrix().k().embed(&[1, k + 2], total).unwrap();
        let site = [
            id.clone(),
            &(&id.scale(&-(&a + &b)) + &p) - &kk,
            &(&id.scale(&(&a * &b)) - &p.scale(&b)) + &kk.scale(&a),
        ];
        let mut next = vec![GradedMatrix::zero(s, total); num.len() + 2];
        for (i, x) in num.iter().enumerate() {
            for (j, y) in site.iter().enumerate() {
                next[i + j] = &next[i + j] + &(x * y);
            }
        }
        num = next;
        let dk = [Rational::one(), -(&a + &b), &a * &b];
        let mut nd = vec![Rational::zero(); den.len() + 2];
        for (i, x) in den.iter().enumerate() {
            for (j, y) in dk.iter().enumerate() {
                nd[i + j] = &nd[i + j] + &(x * y);
            }
        }
        den = nd;
    }
    let mut modes: Vec<GradedMatrix> = Vec::new();
    for n in 0..=n_max {
        let mut t = num.get(n).cloned().unwrap_or_else(|| GradedMatrix::zero(s, total));
        for m in 1..=n.min(den.len() - 1) {
            t = &t - &modes[n - m].scale(&den[m]);
        }
        modes.push(t);
    }
    modes
}

#[test]
fn modes_match_the_rational_recurrence() {
    for (s, l) in [(space(3, 0, 1), 3), (space(1, 2, 1), 2), (space(0, 2, -1), 2)] {
        let r = rep(s, l);
        let series = r.mode_expand(6);
        assert_eq!(series.modes(), &modes_by_recurrence(&r, 6)[..], "{s} L={l}");
    }
}

#[test]
fn mode_conventions() {
    let r = rep(space(1, 2, 1), 2);
    let series = r.mode_expand(3);
    assert!(series.mode(-1).unwrap().is_zero());
    assert!(series.mode(-5).unwrap().is_zero());
    assert_eq!(series.mode(0).unwrap(), GradedMatrix::identity(r.space(), 3));
    assert!(matches!(series.mode(4), Err(Error::Truncation { needed: 4, n_max: 3 })));
}

#[test]
fn partial_sums_approach_the_monodromy() {
    let r = rep(space(0, 2, -1), 2);
    let u = Rational::from_integer(1000);
    let exact = r.monodromy(&u).unwrap();
    let coarse = r.mode_expand(2).partial_sum(&u).unwrap();
    let fine = r.mode_expand(6).partial_sum(&u).unwrap();
    let err = |m: &GradedMatrix| {
        let d = &exact - m;
        d.entries().map(|(_, _, v)| if v.is_negative() { -v } else { v.clone() }).max().unwrap()
    };
    assert!(err(&fine) < err(&coarse));
    assert!(err(&fine) < q(1, 1_000_000_000_000_000));
}

#[test]
fn single_site_central_scalar_is_one_minus_inverse_square() {
    for s in SuperSpace::regression_family().into_iter().take(6) {
        let a = q(2, 7);
        let r = MonodromyRep::new(RMatrix::new(s), vec![a.clone()]).unwrap();
        for u in [q(5, 3), q(-9, 2), q(11, 13)] {
            let (c, report) = central_element(&r, &u).unwrap();
            assert!(report.passed(), "{s}");
            let x = &u - &a;
            let want = &Rational::one() - &(&x * &x).recip().unwrap();
            assert_eq!(c.as_scalar(), Some(want), "{s} at u = {u}");
        }
    }
}

#[test]
fn central_scalar_multiplies_over_sites() {
    let r = rep(space(1, 2, 1), 2);
    let u = q(7, 4);
    let (c, _) = central_element(&r, &u).unwrap();
    let product = (0..2)
        .map(|k| central_element(&r.site(k), &u).unwrap().0.as_scalar().unwrap())
        .fold(Rational::one(), |acc, x| &acc * &x);
    assert_eq!(c.as_scalar(), Some(product));
}

#[test]
fn single_site_tau_is_the_shifted_r_matrix() {
    for s in [space(3, 0, 1), space(0, 2, -1), space(1, 2, 1), space(2, 2, 1)] {
        let a = q(-3, 5);
        let r = MonodromyRep::new(RMatrix::new(s), vec![a.clone()]).unwrap();
        for u in [q(4, 3), q(-7, 2)] {
            let want = r.rmatrix().eval(&(&u + &a)).unwrap();
            assert_eq!(tau(&r, &u).unwrap(), want, "{s}");
        }
    }
}

#[test]
fn wrong_kappa_breaks_rtt() {
    let s = space(3, 0, 1);
    let r = RMatrix::with_kappa(s, &s.kappa() + &Rational::one());
    let rep = MonodromyRep::with_default_sites(r, 2).unwrap();
    let report = check_rtt(&rep);
    assert!(!report.passed());
    assert!(report.kappa_overridden);
}

#[test]
fn site_guards() {
    let r = RMatrix::new(space(3, 0, 1));
    let bad = [vec![], vec![q(1, 2), q(1, 2)], vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(-1, 2)]];
    for sites in bad {
        let err = MonodromyRep::new(r.clone(), sites.clone()).unwrap_err();
        assert!(matches!(err, Error::InvalidRepresentation(_)), "{sites:?}");
    }
}

#[test]
fn small_representation_passes_every_algebra_suite() {
    let r = rep(space(0, 2, -1), 2);
    for report in [
        check_rtt(&r),
        check_relcomm(&r),
        check_modes(&r, 2, 2, 6).unwrap(),
        check_center(&r),
        check_centrality(&r),
        check_order1(&r),
    ] {
        assert!(report.passed(), "{}: {:?}", report.suite, report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn modes_check_needs_enough_truncation() {
    let r = rep(space(0, 2, -1), 1);
    assert!(matches!(check_modes(&r, 2, 2, 3), Err(Error::Truncation { .. })));
}

#[test]
fn order1_dimensions_beyond_the_small_cases() {
    for (s, want) in [(space(2, 2, 1), 8), (space(4, 0, 1), 6), (space(0, 4, -1), 10), (space(3, 2, 1), 12)] {
        let (basis, report) = order1_algebra(s);
        assert_eq!(basis.len(), want, "{s}");
        assert!(report.passed(), "{s}");
    }
}
