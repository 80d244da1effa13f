mod common;

use common::*;
use gridpoly::format::{emit_ascii, emit_json, parse};
use gridpoly::ideal::{koenig_type, KoenigReason};
use gridpoly::GridSpec;
use proptest::prelude::*;

#[test]
fn koenig_exactly_for_one_hole() {
    for spec in GridSpec::family(2, 2) {
        let p = grid(&spec.widths, &spec.heights);
        let d = koenig_type(&p).unwrap();
        if spec.r() * spec.s() == 1 {
            assert!(d.is_koenig && d.witness_is_valid(&p), "{spec}");
        } else {
            assert_eq!(d.reason, KoenigReason::TooFewVertices, "{spec}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_formats_round_trip(p in polyomino(15)) {
        let ascii = emit_ascii(&p).unwrap();
        prop_assert_eq!(&parse(&ascii).unwrap(), &p);
        prop_assert_eq!(emit_ascii(&parse(&ascii).unwrap()).unwrap(), ascii);
        let json = emit_json(&p);
        prop_assert_eq!(&parse(&json).unwrap(), &p);
        prop_assert_eq!(emit_json(&parse(&json).unwrap()), json);
    }
}
