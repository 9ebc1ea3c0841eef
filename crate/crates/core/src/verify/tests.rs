use proptest::prelude::*;

use super::*;
use crate::ci::build_generic_ci;
use crate::poly::VariableNames;

fn names(vars: &[&str]) -> VariableNames {
    VariableNames::new(vars.iter().copied()).unwrap()
}

fn arr(names: &VariableNames, comps: &[&[&str]]) -> Arrangement {
    let comps = comps.iter().map(|c| LinearSubspace::parse(c, names).unwrap()).collect();
    Arrangement::new(names.len(), comps).unwrap()
}

fn charpoly(coeffs: &[i64]) -> CharPoly {
    CharPoly::new(coeffs.to_vec())
}

fn example() -> (Arrangement, CIData) {
    let n = names(&["x", "y", "z", "t"]);
    let a = arr(&n, &[&["x", "z"], &["y", "t"]]);
    let c = CIData::parse(&["x*y", "z*t"], &n, None).unwrap();
    (a, c)
}

fn four_lines() -> (Arrangement, CIData) {
    let n = names(&["x", "y", "z"]);
    let c = CIData::parse(&["x*y", "(x+y-z)*(x+y+z)"], &n, None).unwrap();
    let a = Arrangement::new(3, c.components().to_vec()).unwrap();
    (a, c)
}

fn eight_lines() -> (Arrangement, CIData) {
    let n = names(&["x", "y", "z", "t"]);
    let c = CIData::parse(&["x*y", "z*t", "(x+y+z+t)*(x-y+2*z-3*t)"], &n, None).unwrap();
    let a = Arrangement::new(4, c.components().to_vec()).unwrap();
    (a, c)
}

fn axes() -> (Arrangement, CIData) {
    let n = names(&["x", "y", "z"]);
    let a = arr(&n, &[&["y", "z"], &["x", "z"], &["x", "y"]]);
    let c = build_generic_ci(&a, 1, 3).unwrap();
    (a, c)
}

fn node_of_dim(an: &LatticeAnalysis, dim: usize) -> Vec<&NodeAnalysis> {
    an.nodes.iter().filter(|n| n.dim() == dim).collect()
}

#[test]
fn example_formula_fails_with_condition_two() {
    let (a, c) = example();
    let report = verify_solomon_terao(&a, &c).unwrap();
    assert_eq!(report.ambient_dim, 4);
    assert_eq!(report.codim, 2);
    assert_eq!(report.ci_degrees, vec![2, 2]);
    assert_eq!(report.nodes.len(), 4);
    assert!(!report.hypothesis_holds);
    assert!(report.theorem_consistent);
    assert_eq!(report.exit_code(), 1);

    let origin = report.nodes.iter().find(|n| n.dim == 0).unwrap();
    assert_eq!(origin.components, vec![1, 2]);
    assert_eq!(origin.chi, charpoly(&[1, 0, -2, 0, 1]));
    assert_eq!(origin.psi_residue_at_1, charpoly(&[0, 0, 2]));
    assert_eq!(origin.condition_value, "2");
    assert!(!origin.formula_holds);

    for plane in report.nodes.iter().filter(|n| n.dim == 2) {
        assert_eq!(plane.chi, charpoly(&[0, 0, -1, 0, 1]));
        assert_eq!(plane.psi_residue_at_1, charpoly(&[0, 0, 1]));
        assert_eq!(plane.condition_value, "1");
        assert!(plane.formula_holds);
    }
    let v = &report.nodes[0];
    assert_eq!(v.dim, 4);
    assert!(v.components.is_empty());
    assert_eq!(v.chi, CharPoly::t_pow(4));
    assert!(v.psi_residue_at_1.coeffs().is_empty());
    assert!(v.formula_holds);
}

#[test]
fn example_diagnostics() {
    let (a, c) = example();
    let an = analyze_lattice(&a, &c).unwrap();
    let diag = an.diagnostics();
    assert!(diag.a.holds);
    assert!(!diag.b.holds);
    assert_eq!(diag.b.failing.len(), 1);
    assert!(diag.c.holds);
    assert!(diag.d.holds);
    let origin = an.nodes.iter().position(|n| n.dim() == 0).unwrap();
    assert_eq!(diag.g[origin], charpoly(&[0, 0, -2, 0, 1]));
    assert_eq!(diag.g[origin].eval(1), -1);
    assert_eq!(diag.g[0], CharPoly::t_pow(4));
}

#[test]
fn axes_satisfy_formula() {
    let (a, c) = axes();
    let an = analyze_lattice(&a, &c).unwrap();
    let report = an.report().unwrap();
    assert!(report.hypothesis_holds);
    assert!(report.formula_verified());
    assert_eq!(report.exit_code(), 0);
    let origin = node_of_dim(&an, 0)[0];
    assert_eq!(origin.chi, charpoly(&[2, -3, 0, 1]));
    assert_eq!(origin.predicted_chi(3), charpoly(&[2, -3, 0, 1]));
    for n in &an.nodes[1..] {
        assert_eq!(n.psi.residue.at_t(1), LaurentPoly::one());
    }
    let diag = an.diagnostics();
    assert!(diag.a.holds && diag.b.holds && diag.c.holds && diag.d.holds);
}

#[test]
fn single_smooth_plane() {
    let n = names(&["x", "y", "z", "t"]);
    let a = arr(&n, &[&["x", "z"]]);
    let c = CIData::parse(&["x", "z"], &n, None).unwrap();
    let report = verify_solomon_terao(&a, &c).unwrap();
    assert_eq!(report.nodes.len(), 2);
    let plane = &report.nodes[1];
    assert_eq!(plane.chi, charpoly(&[0, 0, -1, 0, 1]));
    assert_eq!(plane.psi_residue_at_1, charpoly(&[0, 0, 1]));
    assert!(report.hypothesis_holds && report.formula_verified());
}

#[test]
fn complete_intersection_of_two_quadrics_satisfies_formula() {
    let n = names(&["x", "y", "z", "t"]);
    let c = CIData::parse(&["x*y", "z*t"], &n, None).unwrap();
    let a = Arrangement::new(4, c.components().to_vec()).unwrap();
    let report = verify_solomon_terao(&a, &c).unwrap();
    assert!(report.hypothesis_holds);
    assert!(report.formula_verified());
    let origin = report.nodes.iter().find(|n| n.dim == 0).unwrap();
    // four planes, four lines each lying in two of them, and the origin
    assert_eq!(origin.chi, charpoly(&[-1, 4, -4, 0, 1]));
}

#[test]
fn empty_arrangement_rejected() {
    let n = names(&["x", "y"]);
    let a = Arrangement::empty(2);
    let c = CIData::parse(&["x"], &n, None).unwrap();
    assert!(verify_solomon_terao(&a, &c).is_err());
}

fn check_curve(a: &Arrangement, c: &CIData, at_one: &[i64], chi: &[i64]) {
    let forms = ci_curve_closed_forms(c).unwrap();
    let psi = compute_psi(a, c).unwrap();
    assert_eq!(psi.log_forms, forms.log_forms);
    assert_eq!(psi.residue, forms.residue);
    assert_eq!(forms.log_forms_at_one, charpoly(at_one));
    assert_eq!(psi.log_forms.at_x_one(), charpoly(at_one));
    assert_eq!(forms.chi, charpoly(chi));
    assert_eq!(a.characteristic_polynomial(), charpoly(chi));
    assert_eq!(&CharPoly::t_pow(c.nvars()) - &psi.residue.at_x_one(), charpoly(chi));
    assert_eq!(forms.residue.at_t(1), LaurentPoly::one());
}

#[test]
fn four_lines_closed_forms() {
    let (a, c) = four_lines();
    assert_eq!(c.components().len(), 4);
    check_curve(&a, &c, &[-3, 4, 0, 1], &[3, -4, 0, 1]);
}

#[test]
fn eight_lines_closed_forms() {
    let (a, c) = eight_lines();
    assert_eq!(c.components().len(), 8);
    check_curve(&a, &c, &[7, -8, 0, 0, 1], &[7, -8, 0, 0, 1]);
}

#[test]
fn closed_forms_need_a_curve() {
    let (_, c) = example();
    assert!(ci_curve_closed_forms(&c).is_err());
}

#[test]
fn closed_form_residue_literal() {
    let (_, c) = four_lines();
    // 1 + x^{3-4-1} (t - 1)(1 + x)^2
    let expected = PsiPolynomial::from_terms(&[
        (1, 0, 0),
        (-1, -2, 0),
        (-2, -1, 0),
        (-1, 0, 0),
        (1, -2, 1),
        (2, -1, 1),
        (1, 0, 1),
    ]);
    assert_eq!(ci_curve_closed_forms(&c).unwrap().residue, expected);
}

#[test]
fn line_oracle_matches_engine_on_axes() {
    let (a, c) = axes();
    let (r0, r1) = line_residue_oracle(&a, &c).unwrap();
    let psi = compute_psi(&a, &c).unwrap();
    assert_eq!(psi.residue_series, vec![r0.clone(), r1.clone()]);
    let from_oracle = crate::logforms::psi_of_series(&[r0, r1], 1).unwrap();
    assert_eq!(from_oracle.at_t(1), LaurentPoly::one());
}

#[test]
fn line_oracle_matches_engine_on_two_of_four_lines() {
    let (full, c) = four_lines();
    let a = Arrangement::new(3, full.components()[..2].to_vec()).unwrap();
    let (r0, r1) = line_residue_oracle(&a, &c).unwrap();
    let psi = compute_psi(&a, &c).unwrap();
    assert_eq!(psi.residue_series, vec![r0, r1]);
    assert_eq!(psi.residue.at_t(1), LaurentPoly::one());
}

#[test]
fn line_oracle_preconditions() {
    let (a, c) = example();
    assert!(line_residue_oracle(&a, &c).is_err());
    let (a, c) = four_lines();
    assert!(line_residue_oracle(&a, &c).is_err());
    let single = Arrangement::new(3, a.components()[..1].to_vec()).unwrap();
    assert!(line_residue_oracle(&single, &c).is_err());
}

#[test]
fn report_json_round_trip() {
    let (a, c) = example();
    let report = verify_solomon_terao(&a, &c).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"chi\":[1,0,-2,0,1]"));
    assert!(!json.contains("seed"));
    let back: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn hypothesis_without_formula_is_a_contradiction() {
    let (a, c) = axes();
    let mut an = analyze_lattice(&a, &c).unwrap();
    let last = an.nodes.len() - 1;
    an.nodes[last].chi = &an.nodes[last].chi + &CharPoly::constant(1);
    match an.report() {
        Err(Error::TheoremContradiction(_)) => {}
        other => panic!("expected a contradiction, got {other:?}"),
    }
}

fn arb_line_arrangement() -> impl Strategy<Value = Arrangement> {
    let line = prop::collection::vec(-2i64..=2, 3).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0));
    prop::collection::vec(line, 2..=3).prop_filter_map("distinct lines", |dirs| {
        let comps: Vec<LinearSubspace> = dirs
            .iter()
            .map(|d| {
                let rows: Vec<Vec<Rational>> = vec![d.iter().map(|&x| Rational::from(x)).collect()];
                let normal = crate::arrangement::linalg::nullspace(&rows, 3);
                LinearSubspace::from_forms(3, &normal).unwrap()
            })
            .collect();
        Arrangement::new(3, comps).ok().filter(|a| a.len() == dirs.len())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn line_arrangements_satisfy_all_conditions(a in arb_line_arrangement(), seed in 0u64..100) {
        let c = build_generic_ci(&a, seed, 3).unwrap();
        let an = analyze_lattice(&a, &c).unwrap();
        let report = an.report().unwrap();
        prop_assert!(report.hypothesis_holds);
        prop_assert!(report.formula_verified());
        for n in &an.nodes[1..] {
            prop_assert_eq!(n.psi.residue.at_t(1), LaurentPoly::one());
        }
        let diag = an.diagnostics();
        prop_assert!(diag.a.holds && diag.b.holds && diag.c.holds && diag.d.holds);
        let (r0, r1) = line_residue_oracle(&a, &c).unwrap();
        prop_assert_eq!(&node_of_dim(&an, 0)[0].psi.residue_series, &vec![r0, r1]);
    }
}
