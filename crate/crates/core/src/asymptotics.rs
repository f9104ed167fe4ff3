//! The function `n -> res-reg(I^n M)` for `M = S/J`: its values, its
//! eventual linear form, reductions of `I` bounding the slope, and the
//! inequalities the linear form must satisfy.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ComputeError, Result};
use crate::extint::ExtendedInt;
use crate::groebner::{ideal_basis, GroebnerBasis};
use crate::module::ModuleElement;
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::Polynomial;
use crate::presentation::{power_generators, PresentedModule};
use crate::resolution::{res_reg, resolve, RegularityReport, Route};
use crate::ring::RingSpec;

pub const DEFAULT_N_MAX: usize = 6;
pub const DEFAULT_WINDOW: usize = 2;
pub const DEFAULT_N0_MAX: u32 = 8;
pub const DEFAULT_MAX_SUBSET: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoticParams {
    pub n_max: usize,
    pub window: usize,
    pub n0_max: u32,
    /// Largest number of generators removed from `I` when searching for
    /// reductions.
    pub max_subset: usize,
}

impl Default for AsymptoticParams {
    fn default() -> Self {
        AsymptoticParams {
            n_max: DEFAULT_N_MAX,
            window: DEFAULT_WINDOW,
            n0_max: DEFAULT_N0_MAX,
            max_subset: DEFAULT_MAX_SUBSET,
        }
    }
}

/// `J` generated by a subset of the generators of `I`, with
/// `I^{n0} M = J I^{n0-1} M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    pub gens: Vec<String>,
    /// Positions of the generators in the list of generators of `I`.
    pub indices: Vec<usize>,
    pub n0: u32,
    #[serde(rename = "dJ")]
    pub d_j: Vec<ExtendedInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LinearFit {
    Stabilized { slope: Vec<i64>, intercept: Vec<i64>, n_star: usize },
    NotStabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerEntry {
    pub n: usize,
    pub resreg: Vec<ExtendedInt>,
    pub d: Vec<ExtendedInt>,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl Check {
    fn from_witnesses(witnesses: Vec<String>) -> Self {
        Check { passed: witnesses.is_empty(), witnesses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundChecks {
    pub slope_at_most_d: Check,
    pub degree_lower_bound: Check,
    pub intercept_at_least_beg: Check,
    pub slope_at_most_rho_upper: Check,
}

impl BoundChecks {
    pub fn all_passed(&self) -> bool {
        [&self.slope_at_most_d, &self.degree_lower_bound, &self.intercept_at_least_beg, &self.slope_at_most_rho_upper]
            .iter()
            .all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticReport {
    pub sequence: Vec<PowerEntry>,
    pub stabilized: bool,
    pub slope: Option<Vec<i64>>,
    pub intercept: Option<Vec<i64>>,
    pub n_star: Option<usize>,
    pub certificates: Vec<ReductionCertificate>,
    pub rho_upper: Vec<ExtendedInt>,
    /// `d^[l](I)`.
    pub d_ideal: Vec<ExtendedInt>,
    /// `beg^[l](M)`.
    pub beg: Vec<ExtendedInt>,
    pub bounds: Option<BoundChecks>,
}

impl AsymptoticReport {
    pub fn fit(&self) -> LinearFit {
        match (&self.slope, &self.intercept, self.n_star) {
            (Some(a), Some(b), Some(n)) => LinearFit::Stabilized { slope: a.clone(), intercept: b.clone(), n_star: n },
            _ => LinearFit::NotStabilized,
        }
    }
}

/// `I^n (S/J)`.
pub fn power_module(ring: &RingSpec, ideal: &[Polynomial], n: u32, j: &[Polynomial]) -> Result<PresentedModule> {
    PresentedModule::power_times_quotient(ring, ideal, n, j)
}

/// `res-reg(I^n M)` for `n = 1..=n_max` by the resolution route; powers are
/// resolved concurrently.
pub fn resreg_sequence(
    ring: &RingSpec,
    ideal: &[Polynomial],
    j: &[Polynomial],
    n_max: usize,
) -> Result<Vec<RegularityReport>> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let m = power_module(ring, ideal, n as u32, j)?;
            res_reg(&resolve(&m)?)
        })
        .collect()
}

/// Finds the longest tail of `seq` (entry `k` is the value at `n = k + 1`)
/// with constant consecutive differences, spanning at least `window`
/// differences.
pub fn detect_linear(seq: &[Vec<ExtendedInt>], window: usize) -> Result<LinearFit> {
    if window == 0 || seq.len() < window + 1 {
        return Err(ComputeError::SequenceTooShort { len: seq.len(), window });
    }
    let finite: Vec<Option<Vec<i64>>> =
        seq.iter().map(|v| v.iter().map(|x| x.finite()).collect::<Option<Vec<i64>>>()).collect();
    let diff = |k: usize| -> Option<Vec<i64>> {
        let (a, b) = (finite[k].as_ref()?, finite[k + 1].as_ref()?);
        Some(b.iter().zip(a).map(|(x, y)| x - y).collect())
    };
    let last = seq.len() - 1;
    let slope = match diff(last - 1) {
        Some(d) => d,
        None => return Ok(LinearFit::NotStabilized),
    };
    let mut start = last;
    while start > 0 && diff(start - 1).as_ref() == Some(&slope) {
        start -= 1;
    }
    if last - start < window {
        return Ok(LinearFit::NotStabilized);
    }
    let n_star = start + 1;
    let at = finite[start].as_ref().unwrap();
    let intercept = at.iter().zip(&slope).map(|(v, a)| v - n_star as i64 * a).collect();
    Ok(LinearFit::Stabilized { slope, intercept, n_star })
}

/// Generators of `I` to search over: the given ones, with redundant
/// monomials dropped when `I` is monomial.
fn reduction_candidates(ring: &RingSpec, ideal: &[Polynomial]) -> Vec<Polynomial> {
    let gens: Vec<Polynomial> = ideal.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut out: Vec<Polynomial> = Vec::new();
    match MonomialIdeal::from_polynomials(ring.num_vars(), &gens) {
        Some(mi) => {
            for g in gens {
                let m = g.as_monomial().unwrap();
                if mi.gens().contains(m) && !out.iter().any(|o| o.as_monomial() == Some(m)) {
                    out.push(g);
                }
            }
        }
        None => out = gens,
    }
    out
}

fn products(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect()
}

fn contains_all(gb: &GroebnerBasis, polys: &[Polynomial]) -> bool {
    polys.iter().all(|p| gb.contains(&ModuleElement::from_polynomial(p.clone())))
}

/// `I^n M = J I^{n-1} M` inside `S/J_M`, tested as two inclusions of ideals
/// containing the relations.
fn reduces_at(ring: &RingSpec, ideal: &[Polynomial], sub: &[Polynomial], rels: &[Polynomial], n: u32) -> bool {
    let power = power_generators(ring, ideal, n);
    let lower = if n == 1 {
        vec![Polynomial::constant(ring.field().one(), ring.num_vars())]
    } else {
        power_generators(ring, ideal, n - 1)
    };
    let mut lhs = power;
    let mut rhs = products(sub, &lower);
    lhs.extend(rels.iter().cloned());
    rhs.extend(rels.iter().cloned());
    let gl = ideal_basis(&lhs, ring);
    let gr = ideal_basis(&rhs, ring);
    contains_all(&gr, &lhs) && contains_all(&gl, &rhs)
}

fn subsets_removing(n: usize, max_removed: usize) -> Vec<Vec<usize>> {
    fn combos(start: usize, n: usize, r: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..=n - r {
            acc.push(i);
            combos(i + 1, n, r - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for r in 0..=max_removed.min(n.saturating_sub(1)) {
        let mut removed = Vec::new();
        combos(0, n, r, &mut Vec::new(), &mut removed);
        out.extend(removed.into_iter().map(|rm| (0..n).filter(|i| !rm.contains(i)).collect::<Vec<_>>()));
    }
    out
}

/// Reductions of `I` on `M = S/J` generated by subsets of the generators of
/// `I` with at most `max_subset` generators removed. Each certificate is
/// re-verified at `n0 + 1`.
pub fn find_reductions(
    ring: &RingSpec,
    ideal: &[Polynomial],
    j: &[Polynomial],
    max_subset: usize,
    n0_max: u32,
) -> Result<Vec<ReductionCertificate>> {
    let gens = reduction_candidates(ring, ideal);
    let found: Vec<Option<ReductionCertificate>> = subsets_removing(gens.len(), max_subset)
        .into_par_iter()
        .map(|idx| -> Result<Option<ReductionCertificate>> {
            let sub: Vec<Polynomial> = idx.iter().map(|&i| gens[i].clone()).collect();
            let n0 = match (1..=n0_max).find(|&n| reduces_at(ring, &gens, &sub, j, n)) {
                Some(n0) => n0,
                None => return Ok(None),
            };
            if !reduces_at(ring, &gens, &sub, j, n0 + 1) {
                return Err(ComputeError::Internal(format!("reduction {idx:?} fails at n0 + 1 = {}", n0 + 1)));
            }
            let d_j = PresentedModule::ideal_as_module(ring, &sub)?.generator_stats().d;
            Ok(Some(ReductionCertificate {
                gens: sub.iter().map(|p| p.display(ring)).collect(),
                indices: idx,
                n0,
                d_j,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Componentwise minimum of `d_J` over the certificates.
pub fn rho_upper(certs: &[ReductionCertificate], k: usize) -> Vec<ExtendedInt> {
    (0..k).map(|l| certs.iter().map(|c| c.d_j[l]).min().unwrap_or(ExtendedInt::PosInf)).collect()
}

/// The four inequalities a stabilized sequence must satisfy; `None` when
/// the sequence did not stabilize.
pub fn verify_bounds(report: &AsymptoticReport) -> Option<BoundChecks> {
    let (slope, intercept, n_star) = match report.fit() {
        LinearFit::Stabilized { slope, intercept, n_star } => (slope, intercept, n_star),
        LinearFit::NotStabilized => return None,
    };
    let k = slope.len();
    let fin = ExtendedInt::Finite;
    let mut w1 = Vec::new();
    let mut w2 = Vec::new();
    let mut w3 = Vec::new();
    let mut w4 = Vec::new();
    for l in 0..k {
        if fin(slope[l]) > report.d_ideal[l] {
            w1.push(format!("coordinate {}: slope {} > d(I) {}", l + 1, slope[l], report.d_ideal[l]));
        }
        if fin(intercept[l]) < report.beg[l] {
            w3.push(format!("coordinate {}: intercept {} < beg {}", l + 1, intercept[l], report.beg[l]));
        }
        if fin(slope[l]) > report.rho_upper[l] {
            w4.push(format!("coordinate {}: slope {} > rho_upper {}", l + 1, slope[l], report.rho_upper[l]));
        }
        for e in report.sequence.iter().filter(|e| e.n >= n_star) {
            let lower = report.beg[l].plus(e.n as i64 * slope[l]);
            if e.d[l] < lower {
                w2.push(format!("n = {}, coordinate {}: d = {} < {}", e.n, l + 1, e.d[l], lower));
            }
        }
    }
    Some(BoundChecks {
        slope_at_most_d: Check::from_witnesses(w1),
        degree_lower_bound: Check::from_witnesses(w2),
        intercept_at_least_beg: Check::from_witnesses(w3),
        slope_at_most_rho_upper: Check::from_witnesses(w4),
    })
}

/// Sequence, fit, reductions and bounds for `I` acting on `M = S/J`.
pub fn asymptotic_report(
    ring: &RingSpec,
    ideal: &[Polynomial],
    j: &[Polynomial],
    params: &AsymptoticParams,
) -> Result<AsymptoticReport> {
    let reports = resreg_sequence(ring, ideal, j, params.n_max)?;
    let values: Vec<Vec<ExtendedInt>> = reports.iter().map(|r| r.resreg.clone()).collect();
    let fit = detect_linear(&values, params.window)?;
    let certificates = find_reductions(ring, ideal, j, params.max_subset, params.n0_max)?;
    let k = ring.num_blocks();
    let gens = reduction_candidates(ring, ideal);
    let mut report = AsymptoticReport {
        sequence: reports
            .iter()
            .enumerate()
            .map(|(i, r)| PowerEntry { n: i + 1, resreg: r.resreg.clone(), d: r.d.clone(), route: r.route })
            .collect(),
        stabilized: false,
        slope: None,
        intercept: None,
        n_star: None,
        rho_upper: rho_upper(&certificates, k),
        certificates,
        d_ideal: PresentedModule::ideal_as_module(ring, &gens)?.generator_stats().d,
        beg: PresentedModule::quotient(ring, j)?.generator_stats().beg,
        bounds: None,
    };
    if let LinearFit::Stabilized { slope, intercept, n_star } = fit {
        report.stabilized = true;
        report.slope = Some(slope);
        report.intercept = Some(intercept);
        report.n_star = Some(n_star);
        report.bounds = verify_bounds(&report);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::koszul::koszul_tor_oracle;
    use crate::parse::parse_polynomial;
    use ExtendedInt::*;

    fn polys(r: &RingSpec, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    fn fins(v: &[i64]) -> Vec<ExtendedInt> {
        v.iter().map(|&x| Finite(x)).collect()
    }

    #[test]
    fn linear_fits() {
        let seq: Vec<Vec<ExtendedInt>> =
            [[1, 1, 1], [2, 2, 2], [1, 3, 3], [1, 4, 4], [1, 5, 5]].iter().map(|v| fins(v)).collect();
        assert_eq!(
            detect_linear(&seq, 2).unwrap(),
            LinearFit::Stabilized { slope: vec![0, 1, 1], intercept: vec![1, 0, 0], n_star: 3 }
        );
        let constant = vec![fins(&[4]); 4];
        assert_eq!(
            detect_linear(&constant, 2).unwrap(),
            LinearFit::Stabilized { slope: vec![0], intercept: vec![4], n_star: 1 }
        );
        let lin: Vec<Vec<ExtendedInt>> = (1..=5).map(|n| fins(&[n, n])).collect();
        assert_eq!(
            detect_linear(&lin, 3).unwrap(),
            LinearFit::Stabilized { slope: vec![1, 1], intercept: vec![0, 0], n_star: 1 }
        );
        let wobble: Vec<Vec<ExtendedInt>> = [1, 3, 4, 6].iter().map(|&x| fins(&[x])).collect();
        assert_eq!(detect_linear(&wobble, 2).unwrap(), LinearFit::NotStabilized);
        assert_eq!(detect_linear(&wobble[..2], 2), Err(ComputeError::SequenceTooShort { len: 2, window: 2 }));
    }

    #[test]
    fn subsets_in_canonical_order() {
        assert_eq!(
            subsets_removing(3, 2),
            vec![vec![0, 1, 2], vec![1, 2], vec![0, 2], vec![0, 1], vec![2], vec![1], vec![0]]
        );
        assert_eq!(subsets_removing(1, 2), vec![vec![0]]);
    }

    #[test]
    fn principal_powers() {
        let r = RingSpec::from_names(&[&["x"]], FieldSpec::Rationals).unwrap();
        let m = power_module(&r, &polys(&r, &["x"]), 3, &[]).unwrap();
        let rep = res_reg(&resolve(&m).unwrap()).unwrap();
        assert_eq!(rep.resreg, fins(&[3]));
        assert_eq!(resolve(&m).unwrap().length(), 0);
        let rep = asymptotic_report(&r, &polys(&r, &["x"]), &[], &AsymptoticParams::default()).unwrap();
        assert_eq!(rep.slope, Some(vec![1]));
        assert_eq!(rep.intercept, Some(vec![0]));
        assert_eq!(rep.beg, fins(&[0]));
        assert!(rep.bounds.unwrap().all_passed());
    }

    #[test]
    fn powers_match_the_koszul_route() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let i = polys(&r, &["x^2", "x*y"]);
        let seq = resreg_sequence(&r, &i, &[], 4).unwrap();
        for (k, rep) in seq.iter().enumerate() {
            let m = power_module(&r, &i, k as u32 + 1, &[]).unwrap();
            let t = koszul_tor_oracle(&m, None).unwrap();
            assert_eq!(t.regularity(1, r.field(), Route::Koszul).resreg, rep.resreg);
            assert_eq!(rep.resreg, fins(&[2 * (k as i64 + 1)]));
        }
    }

    #[test]
    fn complete_intersection_has_only_the_trivial_reduction() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let certs = find_reductions(&r, &polys(&r, &["x^2", "y^2"]), &[], 2, 8).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].indices, vec![0, 1]);
        assert_eq!(certs[0].n0, 1);
    }

    #[test]
    fn reduction_on_a_quotient() {
        let r = RingSpec::from_names(&[&["a"], &["b"], &["c"]], FieldSpec::Rationals).unwrap();
        let j = polys(&r, &["a^3", "a^2*b", "a^2*c", "a*b*c"]);
        let certs = find_reductions(&r, &polys(&r, &["a", "b", "c"]), &j, 2, 8).unwrap();
        let bc = certs.iter().find(|c| c.gens == ["b", "c"]).expect("(b,c) is a reduction");
        assert_eq!(bc.d_j, fins(&[0, 1, 1]));
        assert_eq!(rho_upper(&certs, 3), fins(&[0, 1, 1]));
    }
}
