use resreg::{
    parse_polynomial, res_reg, resolve, ExtendedInt, FieldSpec, MultiDegree, Polynomial, PresentedModule, RingSpec,
};

fn polys(r: &RingSpec, src: &[&str]) -> Vec<Polynomial> {
    src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
}

fn degs(v: &[[i64; 2]]) -> Vec<MultiDegree> {
    let mut out: Vec<MultiDegree> = v.iter().map(|d| MultiDegree(d.to_vec())).collect();
    out.sort();
    out
}

fn fin(v: &[i64]) -> Vec<ExtendedInt> {
    v.iter().map(|&x| ExtendedInt::Finite(x)).collect()
}

#[test]
fn bigraded_ideal_resolution() {
    for field in [FieldSpec::Rationals, FieldSpec::PrimeField(32003)] {
        let r = RingSpec::from_names(&[&["x0", "x1"], &["y0", "y1"]], field).unwrap();
        let m = PresentedModule::ideal_as_module(&r, &polys(&r, &["x0^2", "x0*y1", "x1*y0", "y0^2"])).unwrap();
        let res = resolve(&m).unwrap();
        let b = res.betti();
        assert_eq!(b.entries.len(), 4);
        assert_eq!(b.entries[&0], degs(&[[2, 0], [1, 1], [1, 1], [0, 2]]));
        assert_eq!(b.entries[&1], degs(&[[1, 2], [2, 1], [3, 1], [2, 2], [2, 2], [1, 3]]));
        assert_eq!(b.entries[&2], degs(&[[3, 2], [3, 2], [2, 3], [2, 3]]));
        assert_eq!(b.entries[&3], degs(&[[3, 3]]));
        assert_eq!(res_reg(&res).unwrap().resreg, fin(&[2, 2]));
        assert!(res.composites_vanish() && res.has_no_unit_entries() && res.within_length_cap());
        for d in [[2, 2], [3, 2], [3, 3], [4, 3]] {
            assert!(res.exact_in_degree(&MultiDegree(d.to_vec())));
        }
    }
}

#[test]
fn trigraded_quotient_resolution() {
    let r = RingSpec::from_names(&[&["x"], &["y"], &["z"]], FieldSpec::Rationals).unwrap();
    let m = PresentedModule::quotient(&r, &polys(&r, &["x^2*y", "x*y^2", "x*y*z", "y^3", "y^2*z", "y*z^2"])).unwrap();
    let res = resolve(&m).unwrap();
    assert_eq!(res_reg(&res).unwrap().resreg, fin(&[1, 2, 1]));
}

#[test]
fn koszul_route_matches_resolutions() {
    let r = RingSpec::from_names(&[&["x0", "x1"], &["y0", "y1"]], FieldSpec::Rationals).unwrap();
    let m = PresentedModule::ideal_as_module(&r, &polys(&r, &["x0^2", "x0*y1", "x1*y0", "y0^2"])).unwrap();
    assert_eq!(resreg::koszul_tor_oracle(&m, None).unwrap(), resolve(&m).unwrap().betti());
    let r = RingSpec::from_names(&[&["x"], &["y"], &["z"]], FieldSpec::Rationals).unwrap();
    let m = PresentedModule::quotient(&r, &polys(&r, &["x^2*y", "x*y^2", "x*y*z", "y^3", "y^2*z", "y*z^2"])).unwrap();
    let t = resreg::koszul_tor_oracle(&m, None).unwrap();
    assert_eq!(t, resolve(&m).unwrap().betti());
    assert_eq!(t.regularity(3, FieldSpec::Rationals, resreg::Route::Koszul).resreg, fin(&[1, 2, 1]));
}

#[test]
fn powers_on_a_quotient_stabilize() {
    let r = RingSpec::from_names(&[&["a"], &["b"], &["c"]], FieldSpec::Rationals).unwrap();
    let i = polys(&r, &["a", "b", "c"]);
    let j = polys(&r, &["a^3", "a^2*b", "a^2*c", "a*b*c"]);
    let params = resreg::AsymptoticParams { n_max: 5, ..Default::default() };
    let rep = resreg::asymptotic_report(&r, &i, &j, &params).unwrap();
    let seq: Vec<Vec<ExtendedInt>> = rep.sequence.iter().map(|e| e.resreg.clone()).collect();
    // n = 1: a^2 * a lies in J, a minimal first syzygy of degree (3,0,0)
    assert_eq!(seq, vec![fin(&[2, 1, 1]), fin(&[2, 2, 2]), fin(&[1, 3, 3]), fin(&[1, 4, 4]), fin(&[1, 5, 5])]);
    assert_eq!(rep.slope, Some(vec![0, 1, 1]));
    assert_eq!(rep.intercept, Some(vec![1, 0, 0]));
    assert_eq!(rep.n_star, Some(3));
    assert_eq!(rep.beg, fin(&[0, 0, 0]));
    assert_eq!(rep.rho_upper, fin(&[0, 1, 1]));
    assert!(rep.bounds.unwrap().all_passed());
}
