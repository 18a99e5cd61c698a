use helly_core::clustering::{BaseBox, ClusterInstance};
use helly_core::{AxisBox, ColorSystem, Family, Point, Rational};
use helly_piercer::document::Document;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=60).prop_map(|(p, q)| Rational::new(p, q))
}

fn boxes(d: usize) -> impl Strategy<Value = Vec<AxisBox>> {
    prop::collection::vec(
        prop::collection::vec((rational(), rational()), d).prop_map(|sides| {
            AxisBox::from_bounds(sides.into_iter().map(|(a, b)| if a <= b { (a, b) } else { (b, a) })).unwrap()
        }),
        0..6,
    )
}

fn assert_round_trip(doc: &Document) {
    let text = doc.to_canonical_string();
    let back = Document::parse(&text).unwrap();
    assert_eq!(&back, doc);
    assert_eq!(back.to_canonical_string(), text);
}

proptest! {
    #[test]
    fn families_round_trip((d, bs) in (1usize..4).prop_flat_map(|d| (Just(d), boxes(d)))) {
        assert_round_trip(&Document::family(Family::new(bs).unwrap(), d));
    }

    #[test]
    fn color_systems_round_trip(classes in (1usize..4).prop_flat_map(|d| prop::collection::vec(boxes(d), 1..4))) {
        let c = ColorSystem::new(classes.into_iter().map(|b| Family::new(b).unwrap()).collect());
        // Classes of different dimension or empty classes are refused by the core type.
        if let Ok(c) = c {
            assert_round_trip(&Document::color_system(c).with_meta("name", "random".into()));
        }
    }

    #[test]
    fn cluster_instances_round_trip(
        pts in prop::collection::vec(prop::collection::vec(rational(), 2), 0..10),
        ext in prop::collection::vec(1i64..20, 2),
        n in 1usize..4,
    ) {
        let base = BaseBox::new(ext.into_iter().map(Rational::from).collect()).unwrap();
        let inst = ClusterInstance::new(
            pts.into_iter().map(Point).collect(),
            base,
            n,
            Rational::new(1, 10),
            Rational::new(1, 20),
            Some(Rational::new(3, 7)),
        )
        .unwrap();
        assert_round_trip(&Document::cluster_instance(inst));
    }
}

#[test]
fn decimal_input_is_canonicalized() {
    let doc = Document::parse(r#"{"kind": "family", "dim": 1, "boxes": [[["-1.25", "0.5"]]], "meta": {"name": "x"}}"#)
        .unwrap();
    let text = doc.to_canonical_string();
    assert!(text.contains("\"-5/4\"") && text.contains("\"1/2\""));
    assert_round_trip(&doc);
}
