use proptest::prelude::*;
use resreg::{
    a_invariant, bfa, block_sequence, is_filter_regular, koszul_tor_oracle, res_reg, res_reg_via_colon, resolve,
    ExtendedInt, FieldSpec, Monomial, Polynomial, PresentedModule, RingSpec, Route,
};

fn ring(sizes: &[usize]) -> RingSpec {
    let mut v = 0;
    let blocks: Vec<Vec<String>> = sizes
        .iter()
        .map(|&s| {
            (0..s)
                .map(|_| {
                    v += 1;
                    format!("x{v}")
                })
                .collect()
        })
        .collect();
    RingSpec::new(blocks, FieldSpec::Rationals).unwrap()
}

fn to_polys(r: &RingSpec, exps: &[Vec<u32>]) -> Vec<Polynomial> {
    let n = r.num_vars();
    exps.iter().map(|e| Polynomial::monomial(Monomial::from_exps(&e[..n]), r.field())).collect()
}

/// Block sizes, numerator and relation exponents, and whether to take a subquotient.
type Instance = (Vec<usize>, Vec<Vec<u32>>, Vec<Vec<u32>>, bool);

fn arb_instance() -> impl Strategy<Value = Instance> {
    let sizes = prop_oneof![
        Just(vec![1]),
        Just(vec![2]),
        Just(vec![1, 1]),
        Just(vec![2, 1]),
        Just(vec![1, 2]),
        Just(vec![2, 2]),
        Just(vec![1, 1, 1]),
        Just(vec![2, 1, 1]),
    ];
    let exps = || proptest::collection::vec(proptest::collection::vec(0u32..4, 4), 1..5);
    (sizes, exps(), exps(), any::<bool>())
}

fn module(sizes: &[usize], a: &[Vec<u32>], j: &[Vec<u32>], sub: bool) -> PresentedModule {
    let r = ring(sizes);
    if sub {
        resreg::present_subquotient(&r, &to_polys(&r, a), &to_polys(&r, j)).unwrap()
    } else {
        PresentedModule::quotient(&r, &to_polys(&r, j)).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_routes_agree((sizes, a, j, sub) in arb_instance()) {
        let m = module(&sizes, &a, &j, sub);
        let res = resolve(&m).unwrap();
        prop_assert!(res.composites_vanish() && res.has_no_unit_entries() && res.within_length_cap());
        let via_res = res_reg(&res).unwrap();
        let tor = koszul_tor_oracle(&m, None).unwrap();
        prop_assert_eq!(&tor, &res.betti());
        let k = m.ring.num_blocks();
        let via_colon: Vec<ExtendedInt> = (0..k).map(|l| res_reg_via_colon(&m, l, 7).unwrap().value).collect();
        prop_assert_eq!(&via_colon, &via_res.resreg);
        let via_koszul = tor.regularity(k, m.ring.field(), Route::Koszul);
        prop_assert_eq!(via_koszul.resreg, via_res.resreg.clone());
        // filter-regular block variables: max(bfa, d) is the regularity
        for l in 0..k {
            let xs = block_sequence(&m.ring, l);
            if let Ok(rep) = is_filter_regular(&xs, &m, l) {
                if rep.is_filter_regular() {
                    prop_assert_eq!(rep.bfa.max(via_res.d[l]), via_res.resreg[l]);
                    prop_assert_eq!(bfa(&xs, &m, l).unwrap(), rep.bfa);
                }
            }
            let _ = a_invariant(&m, l).unwrap();
        }
    }
}
