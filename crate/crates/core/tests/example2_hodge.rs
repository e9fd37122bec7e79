//! Example-2 Hodge-side checks that go beyond the acceptance gate: the
//! symbolic d_beta route and the algebraic-level failure of the forced
//! d_beta = 2 table at b = +-(2/3)^{3/2}.

use gmcalc_core::hodge::{compute_d_beta_symbolic, homogenized_system_qt, DBetaMode};
use gmcalc_core::milnor::{check_strong_tameness, TameInput};
use gmcalc_core::{MPoly, Monomial, RatFunc, Rational, UniPoly, Weights};

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn example2_data() -> gmcalc_core::MilnorData {
    let mut f = MPoly::zero(5);
    for i in 0..5 {
        let mut e = vec![0u16; 5];
        e[i] = 3;
        f.add_term(Monomial::new(e), q(1));
    }
    f.add_term(Monomial::var(5, 0), q(-1));
    f.add_term(Monomial::var(5, 1), q(-1));
    check_strong_tameness(TameInput::new(f, Weights::unit(5, 3).unwrap()).unwrap()).unwrap()
}

#[test]
fn symbolic_d_beta_records_the_exceptional_values() {
    let data = example2_data();
    let dmap = compute_d_beta_symbolic(&data).unwrap();
    assert_eq!(dmap.mode, DBetaMode::Symbolic);
    assert_eq!(dmap.sum(), 64);
    // the symbolic greedy picks the uniform d_beta = d - 1 = 2 family, which
    // is independent over Q(t)
    assert!(dmap.d_beta.iter().all(|&d| d == 2));
    // ... and its pivot record must name the values where that family dies:
    // 27t^2 - 8 has roots +-(2/3)^{3/2}
    let exc = dmap.exceptional_poly.unwrap();
    let bad = UniPoly::from_ints(&[-8, 0, 27]);
    assert_eq!(
        exc.gcd(&bad),
        bad.monic(),
        "exceptional polynomial {exc} must vanish at +-(2/3)^(3/2)"
    );
}

/// A known standard basis of Jacob(F_t):
/// 2x1x0 + 2x2x0 + 3t x0^2, x5^2, x4^2, x3^2, 3x2^2 - x0^2, 3x1^2 - x0^2,
/// 4x2x0^2 + 3t x0^3, x0^4  (x0 stored last, index 5).
fn known_standard_basis() -> Vec<MPoly<RatFunc>> {
    let var = |i: usize, e: u16| -> Monomial { Monomial::unit(6).with_exp(i, e) };
    let c = |n: i64| RatFunc::from_rational(q(n));
    let t = |n: i64| -> RatFunc { RatFunc::from_poly(UniPoly::monomial(q(n), 1)) };
    let mut out = Vec::new();
    // 2 x1 x0 + 2 x2 x0 + 3t x0^2
    out.push(MPoly::from_terms(
        6,
        [
            (var(0, 1).mul(&var(5, 1)), c(2)),
            (var(1, 1).mul(&var(5, 1)), c(2)),
            (var(5, 2), t(3)),
        ],
    ));
    for i in [4usize, 3, 2] {
        out.push(MPoly::monomial_term(var(i, 2), c(1)));
    }
    // 3x2^2 - x0^2 and 3x1^2 - x0^2
    for i in [1usize, 0] {
        out.push(MPoly::from_terms(
            6,
            [(var(i, 2), c(3)), (var(5, 2), c(-1))],
        ));
    }
    // 4 x2 x0^2 + 3t x0^3
    out.push(MPoly::from_terms(
        6,
        [(var(1, 1).mul(&var(5, 2)), c(4)), (var(5, 3), t(3))],
    ));
    out.push(MPoly::monomial_term(var(5, 4), c(1)));
    out
}

#[test]
fn groebner_basis_generates_the_known_ideal() {
    // equality as mutual ideal membership, not literal list equality
    let data = example2_data();
    let sys = homogenized_system_qt(&data).unwrap();
    let known = known_standard_basis();
    for p in &known {
        assert!(
            sys.gb.contains(p),
            "known generator escapes our ideal: {p:?}"
        );
    }
    let hw = data.weights().homogenized();
    let known_gb = gmcalc_core::groebner_basis(&known, hw.order()).unwrap();
    for g in sys.gb.generators() {
        assert!(
            known_gb.contains(g),
            "our generator escapes the known ideal: {g:?}"
        );
    }
}

#[test]
fn weight5_k2_family_and_eta_window() {
    // the single weight-5, k=2 entry family has 5 elements, and (0, k=2)
    // appears among the weight-4 entries
    use gmcalc_core::brieskorn::ConnectionData;
    use gmcalc_core::hodge::{compute_d_beta, hodge_basis};
    let data = example2_data();
    let conn = ConnectionData::new(&data).unwrap();
    let dmap = compute_d_beta(&data, &q(1)).unwrap();
    let report = hodge_basis(&data, &conn, &dmap).unwrap();
    assert_eq!(report.weight_np1[&2].len(), 5);
    let zero = data.basis_index(&Monomial::unit(5)).unwrap();
    assert!(report.weight_n[&2]
        .iter()
        .any(|e| e.beta == zero && e.k == 2));
}

#[test]
fn picard_fuchs_singular_support_diagnostic() {
    // roots of the leading coefficient lie among the roots of S * det M
    use gmcalc_core::brieskorn::{nabla_power_eta, ConnectionData};
    use gmcalc_core::pf::picard_fuchs;
    let data = example2_data();
    let conn = ConnectionData::new(&data).unwrap();
    let e = nabla_power_eta(0, 2, &data, &conn);
    let eq = picard_fuchs(&e, &data, &conn).unwrap();
    let bound = &data.s_poly * &conn.det_m;
    assert!(eq.singular_support_within(&bound).unwrap());
    assert!(eq.singular_support_within(&data.s_poly).unwrap());
}

#[test]
fn forced_uniform_table_fails_at_the_algebraic_level() {
    // x0*x1*x2 is a member of the forced d_beta = 2 witness family
    // (beta = (1,1,0,0,0), beta_0 = 1); its normal form in V' is
    // (9/8 t^2 - 1/3) x0^3, so specializing t to a root of 27t^2 - 8 sends a
    // family member to zero: the family cannot stay independent there.
    let data = example2_data();
    let sys = homogenized_system_qt(&data).unwrap();
    let member = Monomial::new(vec![1, 1, 0, 0, 0, 1]);
    let nf = sys.gb.reduce(&MPoly::monomial_term(member, RatFunc::one()));
    let (mono, coeff) = nf.terms().next().unwrap();
    assert_eq!(nf.n_terms(), 1);
    assert_eq!(mono, &Monomial::new(vec![0, 0, 0, 0, 0, 3]));
    let poly = coeff.as_polynomial().unwrap();
    assert_eq!(poly.integer_normal_form(), UniPoly::from_ints(&[-8, 0, 27]));
}
