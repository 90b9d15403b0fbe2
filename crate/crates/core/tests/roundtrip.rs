//! Every serialized report parses back to an equal value.

use std::fmt::Debug;

use serde::de::DeserializeOwned;
use serde::Serialize;

use polya_fields::compositum::{candidate_search, compositum_disc, gcd_chain_replay, DEFAULT_CONGRUENCES};
use polya_fields::families::{lemma51_verify, verify_theorem, Reading, Theorem, TheoremCase};
use polya_fields::polya::{polya_order_biquad, polya_order_quad, BiquadField};
use polya_fields::quadratic::fundamental_unit;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + Debug>(value: &T) {
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value, "{text}");
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn quadratic_and_polya_reports() {
    for d in [2, 5, 34, 65, 94, 211] {
        round_trip(&fundamental_unit(d).unwrap());
        round_trip(&polya_order_quad(d).unwrap());
    }
    for (m, n) in [(2, 3), (2, 15), (5, 13), (33, 2317)] {
        round_trip(&polya_order_biquad(&BiquadField::new(m, n).unwrap()).unwrap());
    }
}

#[test]
fn family_reports() {
    let case = TheoremCase::find(Theorem::T5, "C7.1").unwrap().with_reading(Reading::Hoisted);
    round_trip(&case);
    round_trip(&verify_theorem(&case, 60).unwrap());
    round_trip(&verify_theorem(&TheoremCase::find(Theorem::T1, "main").unwrap(), 40).unwrap());
    round_trip(&lemma51_verify(60).unwrap());
}

#[test]
fn compositum_reports() {
    round_trip(&gcd_chain_replay());
    let report = candidate_search(20_000_000, &DEFAULT_CONGRUENCES).unwrap();
    round_trip(&report);
    round_trip(&compositum_disc(report.hits[0].p).unwrap());
}
