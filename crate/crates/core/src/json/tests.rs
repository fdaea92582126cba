use super::*;
use crate::complex::{build_example_62, build_koszul};
use crate::random::{random_matrix, EntrySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ZMINUS1: &str = r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":2},"rows":1,"cols":1,
  "entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[1]},{"coeff":1,"g":[0]}]}]}"#;

fn schema_path(err: Error) -> String {
    match err {
        Error::Schema { path, .. } => path,
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn parses_the_basic_module() {
    let m = parse_matrix(ZMINUS1).unwrap();
    let f2 = FieldDescriptor::prime(2).unwrap();
    let g = GroupDescriptor::Zd(1);
    let expected = GroupRingElement::from_ints(f2, g, &[(1, &[1]), (-1, &[0])]).unwrap();
    assert_eq!(m.get(0, 0), expected);
    assert_eq!((m.rows(), m.cols()), (1, 1));
}

#[test]
fn scalars_follow_the_field() {
    let q = FieldDescriptor::rationals();
    assert_eq!(scalar_to_json(&Scalar::fraction(-3, 6).unwrap()), Value::from("-1/2"));
    assert_eq!(scalar_to_json(&Scalar::from_i64(q, 0)), Value::from("0/1"));
    assert_eq!(scalar_to_json(&Scalar::from_i64(FieldDescriptor::prime(7).unwrap(), -1)), Value::from(6));
    assert_eq!(scalar_from_json(&Value::from("2/4"), q, "c").unwrap(), Scalar::fraction(1, 2).unwrap());
    assert!(scalar_from_json(&Value::from("1/0"), q, "c").is_err());
    assert!(scalar_from_json(&Value::from("1/2"), FieldDescriptor::prime(3).unwrap(), "c").is_err());
}

#[test]
fn random_matrices_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fields = [FieldDescriptor::prime(2).unwrap(), FieldDescriptor::prime(7).unwrap(), FieldDescriptor::rationals()];
    let groups = [GroupDescriptor::Zd(1), GroupDescriptor::Zd(3), GroupDescriptor::DihedralInfinite, GroupDescriptor::Heisenberg];
    for field in fields {
        for group in groups {
            let m = random_matrix(&mut rng, field, group, 3, 2, &EntrySpec::default());
            let text = matrix_to_string(&m);
            let back = parse_matrix(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(matrix_to_string(&back), text);
        }
    }
}

#[test]
fn complexes_round_trip() {
    for c in [build_koszul(3, FieldDescriptor::rationals()).unwrap(), build_example_62(3, 2, FieldDescriptor::prime(2).unwrap()).unwrap()] {
        let text = complex_to_string(&c);
        assert_eq!(parse_complex(&text).unwrap(), c);
    }
}

#[test]
fn errors_name_the_json_path() {
    let cases = [
        (r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":4},"rows":1,"cols":1,"entries":[]}"#, "field.p"),
        (r#"{"group":{"type":"Zd","d":0},"field":{"type":"Q"},"rows":1,"cols":1,"entries":[]}"#, "group.d"),
        (r#"{"group":{"type":"Zx"},"field":{"type":"Q"},"rows":1,"cols":1,"entries":[]}"#, "group.type"),
        (r#"{"group":{"type":"Zd","d":1},"field":{"type":"Q"},"rows":1,"entries":[]}"#, "$"),
        (r#"{"group":{"type":"Zd","d":1},"field":{"type":"Q"},"rows":"1","cols":1,"entries":[]}"#, "rows"),
        (
            r#"{"group":{"type":"Zd","d":1},"field":{"type":"Q"},"rows":1,"cols":1,"entries":[{"row":0,"col":3,"terms":[]}]}"#,
            "entries[0].col",
        ),
        (
            r#"{"group":{"type":"Dinf"},"field":{"type":"Q"},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[{"coeff":"1/2","g":[1,2]}]}]}"#,
            "entries[0].terms[0].g",
        ),
        (
            r#"{"group":{"type":"Zd","d":2},"field":{"type":"Fp","p":3},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[0,0]},{"coeff":"x","g":[1,0]}]}]}"#,
            "entries[0].terms[1].coeff",
        ),
        (
            r#"{"group":{"type":"Zd","d":1},"field":{"type":"Q"},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[]},{"row":0,"col":0,"terms":[]}]}"#,
            "entries[1]",
        ),
        (
            r#"{"group":{"type":"Zd","d":1},"field":{"type":"Q"},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[0],"extra":1}]}]}"#,
            "entries[0].terms[0].extra",
        ),
    ];
    for (text, path) in cases {
        assert_eq!(schema_path(parse_matrix(text).unwrap_err()), path, "{text}");
    }
}

#[test]
fn complex_errors_name_the_json_path() {
    let m = r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":2},"rows":1,"cols":1,"entries":[]}"#;
    let bad_shape = format!(r#"{{"group":{{"type":"Zd","d":1}},"field":{{"type":"Fp","p":2}},"ranks":[2,1],"differentials":[{m}]}}"#);
    assert_eq!(schema_path(parse_complex(&bad_shape).unwrap_err()), "differentials[0]");
    let bad_field = format!(r#"{{"group":{{"type":"Zd","d":1}},"field":{{"type":"Q"}},"ranks":[1,1],"differentials":[{m}]}}"#);
    assert_eq!(schema_path(parse_complex(&bad_field).unwrap_err()), "differentials[0].field");
    let missing = r#"{"group":{"type":"Zd","d":1},"field":{"type":"Q"},"ranks":[1,1],"differentials":[]}"#;
    assert_eq!(schema_path(parse_complex(missing).unwrap_err()), "differentials");
    let inner = r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":2},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[0,1]}]}]}"#;
    let nested = format!(r#"{{"group":{{"type":"Zd","d":1}},"field":{{"type":"Fp","p":2}},"ranks":[1,1],"differentials":[{inner}]}}"#);
    assert_eq!(schema_path(parse_complex(&nested).unwrap_err()), "differentials[0].entries[0].terms[0].g");
    let one = r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":2},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[0]}]}]}"#;
    let not_complex = format!(r#"{{"group":{{"type":"Zd","d":1}},"field":{{"type":"Fp","p":2}},"ranks":[1,1,1],"differentials":[{one},{one}]}}"#);
    assert_eq!(parse_complex(&not_complex).unwrap_err(), Error::NotAComplex { degree: 2 });
}
