use logcontact::chow::NormalConvention;
use logcontact::constructions::schema::{emit_atlas, load_atlas, parse_atlas_spec, AtlasSpec};
use logcontact::constructions::{
    arrangement_splitting, centrality_defect, heisenberg, heisenberg_with_form, jet_b_contact_form,
    nonstandard_atlas, nonstandard_form, nonstandard_transition, paper_suite, quotient_by_isotropic, standard_atlas,
    standard_form, standard_transition, ConstructionError, ConventionChoice, Correction, Provenance, Status,
    SuiteOptions,
};
use logcontact::logcalc::{contact_check, symplectic_check, Chart, LogVectorField, Weight};
use logcontact::params::ConstructionParams;
use logcontact::ratfunc::{parse_in, RationalFunction};
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Parity of the sequence `a₁ b₁ a₂ b₂ …` of chart positions.
fn parity_oracle(chart: &Chart, pairs: &[(&str, &str)]) -> i64 {
    let seq: Vec<usize> = pairs
        .iter()
        .flat_map(|(a, b)| [chart.index(a).unwrap(), chart.index(b).unwrap()])
        .collect();
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn int(c: &RationalFunction) -> i64 {
    i64::try_from(c.as_integer().expect("constant top coefficient")).unwrap()
}

#[test]
fn standard_form_examples() {
    let (chart, eta) = standard_form(&ConstructionParams::standard(0, 1)).unwrap();
    assert_eq!(chart.vars().names(), ["y1", "x1"]);
    assert_eq!(chart.boundary_names(), ["y1"]);
    assert_eq!(eta.to_string(), "(x1) dlog y1");
    assert_eq!(eta.scale_weight().unwrap(), Weight::Homogeneous(1));

    let (chart, eta) = standard_form(&ConstructionParams::standard(1, 1)).unwrap();
    assert_eq!(eta.to_string(), "(x1) dlog y1 + (x2) dy2");
    let rep = symplectic_check(&eta.d(), 2).unwrap();
    assert!(rep.closed);
    let sign = parity_oracle(&chart, &[("x1", "y1"), ("x2", "y2")]);
    assert_eq!(int(&rep.top_coefficient), 2 * sign);
    assert_eq!(int(&rep.top_coefficient), -2);
}

#[test]
fn standard_top_coefficients_follow_the_parity_oracle() {
    for n in 1..=4 {
        for m in 0..=n {
            let (chart, eta) = standard_form(&ConstructionParams::standard(n - 1, m)).unwrap();
            let names: Vec<(String, String)> = (1..=n).map(|i| (format!("x{i}"), format!("y{i}"))).collect();
            let pairs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let rep = symplectic_check(&eta.d(), n).unwrap();
            assert!(rep.is_symplectic());
            assert_eq!(int(&rep.top_coefficient), factorial(n) * parity_oracle(&chart, &pairs), "n = {n}, m = {m}");
        }
    }
}

#[test]
fn nonstandard_form_example() {
    let (chart, eta) = nonstandard_form(&ConstructionParams::nonstandard(1, 1, 0)).unwrap();
    assert_eq!(chart.vars().names(), ["y1", "z1", "t1", "x1"]);
    assert_eq!(chart.boundary_names(), ["z1"]);
    assert_eq!(eta.to_string(), "(x1) dy1 + (t1) dlog z1 + (-1) dt1");
    let rep = contact_check(&eta, 1).unwrap();
    assert!(rep.is_contact());
    assert_eq!(int(&rep.top_coefficient), 2);
}

#[test]
fn nonstandard_top_coefficients_follow_the_parity_oracle() {
    for r in 1..=3 {
        for s in 1..=r {
            for m in 0..=r - s + 1 {
                let (chart, eta) = nonstandard_form(&ConstructionParams::nonstandard(r, s, m)).unwrap();
                let mut names: Vec<(String, String)> = (1..=s).map(|l| (format!("t{l}"), format!("z{l}"))).collect();
                names.extend((1..=r - s + 1).map(|i| (format!("x{i}"), format!("y{i}"))));
                let pairs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let rep = contact_check(&eta, r).unwrap();
                assert_eq!(
                    int(&rep.top_coefficient),
                    factorial(r + 1) * parity_oracle(&chart, &pairs),
                    "r = {r}, s = {s}, m = {m}"
                );
            }
        }
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(
        nonstandard_form(&ConstructionParams::nonstandard(1, 2, 0)),
        Err(ConstructionError::Params(_))
    ));
    assert!(matches!(
        standard_form(&ConstructionParams::standard(1, 3)),
        Err(ConstructionError::Params(_))
    ));
}

#[test]
fn jet_form_is_b_contact() {
    let (chart, eta) = jet_b_contact_form(1).unwrap();
    assert_eq!(chart.vars().names(), ["q1", "p1", "t", "z"]);
    assert_eq!(eta.to_string(), "(p1) dq1 + (-1) dt + (t) dlog z");
    let rep = symplectic_check(&eta.d(), 2).unwrap();
    assert_eq!(int(&rep.top_coefficient), 2 * parity_oracle(&chart, &[("p1", "q1"), ("t", "z")]));
    assert_eq!(int(&rep.top_coefficient), -2);
}

#[test]
fn standard_transitions_glue() {
    let cases: [(ConstructionParams, &[&str]); 4] = [
        (ConstructionParams::standard(0, 0), &["y1/(1 + y1)"]),
        (ConstructionParams::standard(1, 1), &["y1*(1 + y2)", "y2"]),
        (ConstructionParams::standard(1, 0), &["y1 + y2^2", "y2 + y1"]),
        (ConstructionParams::standard(2, 2), &["y1*y2*(2 + y3)", "y2/(1 + y3)", "y3 + y1"]),
    ];
    for (params, change) in cases {
        let atlas = standard_atlas(&params, change).unwrap();
        assert!(atlas.check_gluing().holds(), "{change:?}");
    }
}

#[test]
fn standard_transition_one_dimensional_images() {
    let sub = standard_transition(&ConstructionParams::standard(0, 1), &["y1*(1 + y1)"]).unwrap();
    let values: Vec<String> = sub.values().iter().map(ToString::to_string).collect();
    // dlog y' = (1 + 2y)/(1 + y) dlog y, so x' = (1 + y) x / (1 + 2y).
    assert_eq!(values[0], "y1^2 + y1");
    let v = sub.source().vars();
    let expected = parse_in("(1 + y1)*x1/(1 + 2*y1)", v).unwrap();
    assert_eq!(sub.values()[1], expected);
}

#[test]
fn nonstandard_transitions_glue_only_with_the_correction() {
    let cases: [(ConstructionParams, &[&str], &[&str]); 5] = [
        (ConstructionParams::nonstandard(1, 1, 0), &["1 + y1"], &["y1"]),
        (ConstructionParams::nonstandard(1, 1, 1), &["1 + y1"], &["y1*(1 + y1)"]),
        (ConstructionParams::nonstandard(2, 1, 1), &["1 + y2"], &["y1", "y2"]),
        (ConstructionParams::nonstandard(2, 1, 0), &["2 + y1*y2"], &["y1 + y2", "y2 - y1^2"]),
        (
            ConstructionParams::nonstandard(3, 2, 1),
            &["1 + y2", "3 - y1*y2"],
            &["y1*(1 + y2)", "y2 + y1"],
        ),
    ];
    for (params, g, change) in cases {
        let good = nonstandard_atlas(&params, g, change, Correction::Included).unwrap();
        assert!(good.check_gluing().holds(), "{g:?}");
        let bad = nonstandard_atlas(&params, g, change, Correction::Dropped).unwrap();
        let report = bad.check_gluing();
        assert!(!report.holds(), "{g:?}");
        assert_eq!(report.first_failure().unwrap().transition, "U -> U'");
    }
}

#[test]
fn nonstandard_transition_example_images() {
    let params = ConstructionParams::nonstandard(1, 1, 0);
    let sub = nonstandard_transition(&params, &["1 + y1"], &["y1"], Correction::Included).unwrap();
    let v = sub.source().vars();
    let expect: Vec<RationalFunction> = ["y1", "(1 + y1)*z1", "t1", "x1 - t1/(1 + y1)"]
        .iter()
        .map(|e| parse_in(e, v).unwrap())
        .collect();
    assert_eq!(sub.values(), expect.as_slice());
}

#[test]
fn non_unit_transition_functions_are_rejected() {
    let params = ConstructionParams::nonstandard(1, 1, 1);
    for g in ["y1", "y1*(1 + y1)", "0"] {
        let err = nonstandard_transition(&params, &[g], &["y1"], Correction::Included).unwrap_err();
        assert!(matches!(err, ConstructionError::NonUnit(_)), "{g}: {err}");
    }
    let params = ConstructionParams::nonstandard(1, 1, 0);
    assert!(matches!(
        nonstandard_transition(&params, &["y1"], &["y1"], Correction::Included),
        Err(ConstructionError::NonUnit(_))
    ));
}

#[test]
fn base_changes_must_live_on_the_base() {
    let params = ConstructionParams::standard(1, 0);
    let err = standard_transition(&params, &["y1 + x1", "y2"]).unwrap_err();
    assert!(matches!(err, ConstructionError::CoordinateChange(_)));
    let err = standard_transition(&params, &["y1"]).unwrap_err();
    assert!(matches!(err, ConstructionError::CoordinateChange(_)));
    let err = standard_transition(&params, &["y1 + y2", "y1 + y2"]).unwrap_err();
    assert!(matches!(err, ConstructionError::CoordinateChange(_)));
}

#[test]
fn atlas_json_round_trip() {
    let params = ConstructionParams::nonstandard(2, 1, 1);
    let atlas = nonstandard_atlas(&params, &["1 + y2"], &["y1*(1 + y2)", "y2 + y1"], Correction::Included).unwrap();
    let text = emit_atlas(&atlas);
    let loaded = load_atlas(&text).unwrap();
    assert_eq!(emit_atlas(&loaded), text);
    assert_eq!(loaded.charts(), atlas.charts());
    assert_eq!(loaded.forms(), atlas.forms());
    assert_eq!(loaded.transitions()[0].substitution, atlas.transitions()[0].substitution);
    assert!(loaded.check_gluing().holds());
    assert_eq!(parse_atlas_spec(&text).unwrap(), AtlasSpec::from_atlas(&atlas));
}

const HAND_ATLAS: &str = r#"{
  "charts": {
    "A": {"vars": ["w", "u"], "boundary": ["w"], "weights": {"w": 0, "u": 1}},
    "B": {"vars": ["wp", "up"], "boundary": ["wp"], "weights": {"wp": 0, "up": 1}}
  },
  "value_weight": 1,
  "forms": {
    "A": [{"coeff": "u", "covectors": ["dlog w"]}],
    "B": [{"coeff": "up", "covectors": ["dlog wp"]}]
  },
  "transitions": [
    {"from": "A", "to": "B", "images": {
      "wp": {"unit": "1 + w", "monomial": {"w": 1}},
      "up": "u*(1 + w)/(1 + 2*w)"
    }}
  ]
}"#;

#[test]
fn hand_written_atlas_glues() {
    let atlas = load_atlas(HAND_ATLAS).unwrap();
    assert!(atlas.check_gluing().holds());
    let broken = HAND_ATLAS.replace("u*(1 + w)/(1 + 2*w)", "u");
    let report = load_atlas(&broken).unwrap().check_gluing();
    assert!(!report.holds());
    assert_eq!(report.first_failure().unwrap().transition, "A -> B");
}

fn schema_pointer(text: &str) -> (String, String) {
    match load_atlas(text) {
        Err(ConstructionError::Schema { pointer, message }) => (pointer, message),
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn plain_differential_of_a_boundary_coordinate_is_rejected() {
    let text = HAND_ATLAS.replace(r#"["dlog w"]"#, r#"["dw"]"#);
    let (pointer, message) = schema_pointer(&text);
    assert_eq!(pointer, "/forms/A/0/covectors/0");
    assert!(message.contains("dlog w"), "{message}");
}

#[test]
fn non_unit_in_a_boundary_image_is_rejected() {
    let text = HAND_ATLAS.replace(r#""unit": "1 + w""#, r#""unit": "w""#);
    let (pointer, message) = schema_pointer(&text);
    assert_eq!(pointer, "/transitions/0/images");
    assert!(message.contains("unit"), "{message}");
}

#[test]
fn schema_errors_carry_pointers() {
    let (pointer, _) = schema_pointer(&HAND_ATLAS.replace(r#""coeff": "u""#, r#""coeff": "u +""#));
    assert_eq!(pointer, "/forms/A/0/coeff");
    let (pointer, _) = schema_pointer(&HAND_ATLAS.replace(r#""to": "B""#, r#""to": "C""#));
    assert_eq!(pointer, "/transitions/0/to");
    let (pointer, _) = schema_pointer(&HAND_ATLAS.replace(r#""monomial": {"w": 1}"#, r#""monomial": {"u": 1}"#));
    assert!(pointer.starts_with("/transitions/0"), "{pointer}");
    let (pointer, _) = schema_pointer(&HAND_ATLAS.replace(r#""value_weight": 1"#, r#""value_weight": "one""#));
    assert_eq!(pointer, "/value_weight");
    let (pointer, message) = schema_pointer(&HAND_ATLAS.replace(r#""boundary": ["w"],"#, r#""boundry": ["w"],"#));
    assert!(pointer.starts_with("/charts/A"), "{pointer}");
    assert!(message.contains("boundry"), "{message}");
}

#[test]
fn heisenberg_algebras() {
    for r in 1..=3 {
        let h = heisenberg(r).unwrap();
        assert_eq!(h.dim(), 2 * r + 1);
        assert_eq!(h.central(), Some(2 * r));
        assert!(h.satisfies_jacobi());
        assert!(!h.is_abelian());
        assert_eq!(h.pairing_determinant(), q(1));
    }
    let sigma = vec![vec![q(0), q(3)], vec![q(-3), q(0)]];
    assert_eq!(heisenberg_with_form(sigma).unwrap().pairing_determinant(), q(9));
    assert!(heisenberg_with_form(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).is_err());
    assert!(heisenberg_with_form(vec![vec![q(0), q(0)], vec![q(0), q(0)]]).is_err());
}

#[test]
fn quotients_by_isotropic_subspaces_are_abelian() {
    let h = heisenberg(2).unwrap();
    let v = |ones: &[usize]| -> Vec<BigRational> { (0..4).map(|i| q(i64::from(ones.contains(&i)))).collect() };
    let quot = quotient_by_isotropic(&h, &[v(&[0]), v(&[1])]).unwrap();
    assert!(quot.is_abelian());
    assert_eq!(quot.dim(), 2);
    let quot = quotient_by_isotropic(&h, &[v(&[0, 3])]).unwrap();
    assert!(quot.is_abelian());
    assert_eq!(quot.dim(), 3);
    assert!(quotient_by_isotropic(&h, &[v(&[0]), v(&[2])]).is_err());
    assert!(quotient_by_isotropic(&h, &[v(&[0]).into_iter().take(3).collect()]).is_err());
}

#[test]
fn frame_fields_are_central_on_the_stratum() {
    let chart = Chart::new(&["z", "w", "a"], &["z", "w"]).unwrap();
    let v = chart.vars();
    let coeffs = ["a*z + w^2", "1 + a", "z*w - a^2"]
        .iter()
        .map(|e| parse_in(e, v).unwrap())
        .collect();
    let y = LogVectorField::new(&chart, coeffs).unwrap();
    for i in 0..2 {
        assert!(centrality_defect(&chart, i, &y).unwrap().is_zero());
    }
    assert!(centrality_defect(&chart, 2, &y).is_err());
    let bracket = LogVectorField::frame(&chart, 0).lie_bracket(&y).unwrap();
    assert!(!bracket.is_zero());
}

#[test]
fn arrangement_splittings() {
    assert_eq!(arrangement_splitting(3, 1).unwrap().entries(), [1, 1, 1]);
    assert_eq!(arrangement_splitting(3, 3).unwrap().entries(), [1, 0, 0]);
    assert!(arrangement_splitting(3, 0).is_err());
    assert!(arrangement_splitting(3, 4).is_err());
}

fn small() -> SuiteOptions {
    SuiteOptions {
        rmax: 2,
        samples: 20,
        ..SuiteOptions::default()
    }
}

#[test]
fn suite_passes_and_records_the_published_q3_value() {
    let report = paper_suite(&small());
    assert!(report.passed(), "{report}");
    let q3 = report.entry("c06.appendix.q3.published").unwrap();
    assert_eq!(q3.status, Status::Recorded);
    assert_eq!(q3.expected, "-32");
    assert_eq!(q3.provenance, Provenance::Published);
    for k in 1..=12 {
        assert!(report.criterion(k).next().is_some(), "criterion {k} has entries");
    }
    let names: Vec<&str> = report.entries.iter().map(|e| e.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn suite_orientation_flip_pins_the_opposite_sign() {
    let report = paper_suite(&SuiteOptions {
        flip_orientation: true,
        ..small()
    });
    assert!(report.passed());
    assert_eq!(report.entry("c01.orientation").unwrap().actual, "-1");
    assert_eq!(report.entry("c01.standard[n=2,m=0]").unwrap().actual, "2; closed; weight 1");
}

#[test]
fn suite_convention_handling() {
    let both = paper_suite(&SuiteOptions {
        convention: ConventionChoice::Both,
        ..small()
    });
    assert!(both.passed());
    assert_eq!(both.entry("c05.appendix.p3[OD]").unwrap().status, Status::Recorded);
    assert_eq!(both.entry("c05.appendix.p3[OD]").unwrap().actual, "-5");

    let forced = paper_suite(&SuiteOptions {
        convention: ConventionChoice::Single(NormalConvention::StructureSheaf),
        ..small()
    });
    assert!(!forced.passed());
    let entry = forced.entry("c05.appendix.p3[OD]").unwrap();
    assert_eq!(entry.status, Status::Fail);
    assert_eq!(entry.actual, "-5");
}

#[test]
fn suite_report_is_deterministic_and_serializes() {
    let a = paper_suite(&small());
    let b = paper_suite(&small());
    assert_eq!(a, b);
    let json = a.to_json();
    assert_eq!(json["summary"]["fail"], 0);
    assert_eq!(json["entries"].as_array().unwrap().len(), a.entries.len());
    assert!(json["entries"][0]["provenance"].is_string());
    assert!(a.to_string().lines().last().unwrap().contains("0 failed"));
}
