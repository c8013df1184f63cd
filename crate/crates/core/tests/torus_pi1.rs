mod common;

use cohom1::diagram::{fundamental_group, validate};
use common::torus_oracle::{quotient, slopes, t2_diagram};

#[test]
fn standard_slopes() {
    let d = t2_diagram([1, 0], [0, 1]);
    assert!(fundamental_group(&d).unwrap().is_trivial());
    assert_eq!(fundamental_group(&t2_diagram([1, 0], [1, 5])).unwrap().to_string(), "Z_5");
    assert_eq!(fundamental_group(&t2_diagram([1, 2], [1, 2])).unwrap().to_string(), "Z");
}

#[test]
fn random_slopes_match_order_count() {
    for (a, b) in slopes(0x5eed, 200, 9) {
        let d = t2_diagram(a, b);
        assert!(validate(&d).accepted, "{d}");
        let got = fundamental_group(&d).unwrap();
        assert_eq!(got.normalized(), quotient(a, b).normalized(), "{d}");
    }
}
