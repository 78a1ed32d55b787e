use proptest::prelude::*;

use super::*;
use crate::galg::{Builtin, GradedAlgebra};

fn b(s: &str, n: usize) -> GradedAlgebra {
    GradedAlgebra::builtin(s.parse::<Builtin>().unwrap(), n).unwrap()
}

fn uniform(k: FlagComplex, a: &str) -> GraphProductAlgebra {
    GraphProductAlgebra::uniform(k, b(a, 10))
}

fn ints(s: &TruncatedSeries) -> Vec<i64> {
    s.integer_coeffs().unwrap()
}

const Q: FieldKind = FieldKind::Rational;

#[test]
fn aprime_closed_examples() {
    let t = tor_aprime_closed(&uniform(FlagComplex::simplex(3).unwrap(), "exterior(1)"), 4, 8, Q).unwrap();
    assert_eq!(t.nonzero(), vec![(0, 0, 1)]);

    let t = tor_aprime_closed(&uniform(FlagComplex::cycle(4).unwrap(), "exterior(1)"), 4, 8, Q).unwrap();
    assert_eq!(t.nonzero(), vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
    assert_eq!(t.provenance(), Provenance::ClosedForm);

    let t = tor_aprime_closed(&uniform(FlagComplex::discrete(2).unwrap(), "free(1)"), 3, 8, Q).unwrap();
    for n in 0..=8 {
        assert_eq!(t.get(1, n).unwrap(), n.saturating_sub(1));
        assert_eq!(t.get(2, n).unwrap(), 0);
    }
    assert!(t.get(4, 0).is_err());
}

#[test]
fn ak_closed_examples() {
    let t = tor_ak_closed(&uniform(FlagComplex::simplex(3).unwrap(), "exterior(1)"), 3, 4, Q).unwrap();
    assert_eq!(t.nonzero(), vec![(0, 0, 1), (1, 1, 3), (2, 2, 6), (3, 3, 10)]);

    let t = tor_ak_closed(&uniform(FlagComplex::discrete(2).unwrap(), "exterior(1)"), 4, 6, Q).unwrap();
    assert_eq!(t.nonzero(), vec![(0, 0, 1), (1, 1, 2), (2, 2, 2), (3, 3, 2), (4, 4, 2)]);

    let t = tor_ak_closed(&uniform(FlagComplex::cycle(4).unwrap(), "free(1)"), 3, 6, Q).unwrap();
    assert_eq!(t.nonzero(), vec![(0, 0, 1), (1, 1, 4), (2, 2, 4)]);
}

#[test]
fn component_tables_must_cover_the_range() {
    let k = FlagComplex::discrete(2).unwrap();
    let small = TorTable::zeros(2, 3, Provenance::BarOracle);
    assert!(matches!(
        tor_ak_from_components(&k, &[small.clone(), small.clone()], 3, 3),
        Err(Error::OutsideTrustedRange { .. })
    ));
    assert!(tor_ak_from_components(&k, &[small], 2, 3).is_err());
}

#[test]
fn ep_series_examples() {
    let ep = ep_series_aprime(&uniform(FlagComplex::cycle(4).unwrap(), "exterior(1)"), 8, Q).unwrap();
    assert_eq!(ints(&ep.inverse), vec![1, 0, -2, 0, 1, 0, 0, 0, 0]);
    assert_eq!(ints(&ep.series), vec![1, 0, 2, 0, 3, 0, 4, 0, 5]);
    assert!(ep.inverse.mul(&ep.series).is_one());

    let ep = ep_series_aprime(&uniform(FlagComplex::simplex(3).unwrap(), "free(1)"), 6, Q).unwrap();
    assert!(ep.inverse.is_one());

    let p = ep_series_ak(&uniform(FlagComplex::simplex(3).unwrap(), "exterior(1)"), 5, Q).unwrap();
    assert_eq!(ints(&p), vec![1, 3, 3, 1, 0, 0]);
}

#[test]
fn square_of_free_algebras() {
    let gp = uniform(FlagComplex::cycle(4).unwrap(), "free(1)");
    let expect = vec![1, 4, 12, 32, 80, 192, 448, 1024, 2304];
    let reg = SeriesRegistry::default();
    for r in reg.iter() {
        assert_eq!(ints(&r.series(&gp, 8, Q).unwrap()), expect, "route {}", r.name());
    }
    let closed = RationalFunction::from_ints(&[1], &[1, -4, 4]).unwrap().expand(8);
    assert_eq!(ints(&closed), expect);
}

#[test]
fn mixed_square_denominator() {
    let algs = [1, 2, 1, 2].map(|d| b(&format!("free({d})"), 10)).to_vec();
    let gp = GraphProductAlgebra::new(FlagComplex::cycle(4).unwrap(), algs).unwrap();
    let expect = RationalFunction::from_ints(&[1], &[1, -2, -2, 4]).unwrap();
    let h = hilbert_rational(&gp, Q).unwrap();
    assert_eq!(h.expand(12), expect.expand(12));
    for r in SeriesRegistry::default().iter() {
        assert_eq!(r.series(&gp, 8, Q).unwrap(), expect.expand(8), "route {}", r.name());
    }
}

#[test]
fn pat_identity_for_builtins() {
    for a in ["exterior(1)", "trunc_poly(1,3)", "free(2)", "exterior(3)", "trunc_poly(2,2)"] {
        let alg = b(a, 8);
        let tor = tor_dims_bar(&alg, 8, 8, Q).unwrap();
        assert!(pat_identity_holds(&alg.hilbert_series(8).unwrap(), &tor).unwrap(), "{a}");
    }
}

#[test]
fn generator_examples() {
    let g = min_generators_aprime(&uniform(FlagComplex::cycle(4).unwrap(), "exterior(1)"), 6).unwrap();
    let got: Vec<(&[u32], u32, &str, usize)> = g
        .entries
        .iter()
        .map(|e| (e.subset.as_slice(), e.t, e.expression.as_str(), e.degree))
        .collect();
    assert_eq!(got, vec![(&[1, 3][..], 1, "[x_3,x_1]", 2), (&[2, 4][..], 2, "[x_4,x_2]", 2)]);

    assert!(min_generators_aprime(&uniform(FlagComplex::simplex(4).unwrap(), "free(1)"), 6)
        .unwrap()
        .entries
        .is_empty());

    let g = min_generators_aprime(&uniform(FlagComplex::path(3).unwrap(), "free(1)"), 7).unwrap();
    assert_eq!(g.counts(7), vec![0, 0, 1, 2, 3, 4, 5, 6]);
    assert!(g.entries.iter().all(|e| e.subset == [1, 3] && e.t == 1));
    assert!(g.entries.iter().any(|e| e.expression == "[x^2_3,x^3_1]"));
}

#[test]
fn freeness_examples() {
    for (k, free) in [
        (FlagComplex::path(3).unwrap(), true),
        (FlagComplex::cycle(4).unwrap(), false),
        (FlagComplex::simplex(4).unwrap(), true),
        (FlagComplex::cycle(5).unwrap(), false),
    ] {
        assert_eq!(is_free_aprime(&k, Q).unwrap(), free);
        assert_eq!(is_free_h_groups(&k), free);
    }
}

#[test]
fn registries() {
    let tor = TorRegistry::default();
    assert_eq!(tor.names(), vec!["closed-aprime", "closed-ak", "oracle-aprime", "oracle-ak"]);
    assert!(tor.get("nope").is_err());
    let gp = uniform(FlagComplex::path(3).unwrap(), "trunc_poly(1,3)");
    for v in [crate::barcomplex::Variant::APrime, crate::barcomplex::Variant::AK] {
        let tables: Vec<TorTable> = tor
            .for_variant(v)
            .iter()
            .map(|r| r.compute(&gp, 3, 6, FieldKind::Prime(2)).unwrap())
            .collect();
        assert_eq!(tables.len(), 2);
        assert!(tables[0].same_dims(&tables[1]), "{v}\n{}\n{}", tables[0], tables[1]);
    }

    let mut series = SeriesRegistry::empty();
    assert!(series.get("census").is_err());
    let census = SeriesRegistry::default();
    assert_eq!(census.names(), vec!["ep-formula", "census", "rational"]);
    let mut reg = TorRegistry::empty();
    reg.register(Box::new(routes_probe::Dummy)).unwrap();
    assert!(reg.register(Box::new(routes_probe::Dummy)).is_err());
    assert!(series.register(Box::new(routes_probe::Dummy)).is_ok());
}

mod routes_probe {
    use super::*;
    use crate::barcomplex::Variant;

    pub struct Dummy;

    impl TorRoute for Dummy {
        fn name(&self) -> &'static str {
            "dummy"
        }
        fn variant(&self) -> Variant {
            Variant::APrime
        }
        fn compute(&self, _: &GraphProductAlgebra, s: usize, n: usize, _: FieldKind) -> Result<TorTable> {
            Ok(TorTable::zeros(s, n, Provenance::ClosedForm))
        }
    }

    impl SeriesRoute for Dummy {
        fn name(&self) -> &'static str {
            "dummy"
        }
        fn series(&self, _: &GraphProductAlgebra, n: usize, _: FieldKind) -> Result<TruncatedSeries> {
            Ok(TruncatedSeries::one(n))
        }
    }
}

fn arb_complex(max_m: usize) -> impl Strategy<Value = FlagComplex> {
    (1..=max_m).prop_flat_map(|m| {
        let pairs: Vec<(u32, u32)> = (1..=m as u32)
            .flat_map(|i| (i + 1..=m as u32).map(move |j| (i, j)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(u32, u32)> = pairs.iter().zip(keep).filter(|p| p.1).map(|p| *p.0).collect();
            FlagComplex::new(m, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn freeness_criteria_agree(k in arb_complex(7)) {
        prop_assert_eq!(is_free_aprime(&k, FieldKind::Prime(2)).unwrap(), is_free_h_groups(&k));
    }

    #[test]
    fn generator_counts_match_tor_one(k in arb_complex(5)) {
        let gp = uniform(k, "trunc_poly(1,3)");
        let tor = tor_aprime_closed(&gp, 1, 6, Q).unwrap();
        let g = min_generators_aprime(&gp, 6).unwrap();
        prop_assert_eq!(g.counts(6), tor.rows()[1].clone());
    }

    #[test]
    fn ep_inverse_matches_alternating_tor(k in arb_complex(5)) {
        let gp = uniform(k, "exterior(1)");
        let ep = ep_series_aprime(&gp, 8, Q).unwrap();
        let tor = tor_aprime_closed(&gp, 8, 8, Q).unwrap();
        prop_assert_eq!(ep.inverse, tor.alternating_series());
    }
}
