//! `Tor_i(M, k)` of monomial modules from Koszul homology, one fine degree
//! at a time.
//!
//! For `M = A/B` with monomial ideals `B ⊆ A`, the piece of `K ⊗ M` in fine
//! degree `α ∈ N^n` has basis `e_F ⊗ x^(α-F)` over the subsets `F` of the
//! variables with `x^(α-F) ∈ A \ B`, and the differential has entries `±1`.
//! Nonzero homology only occurs at lcms of generators of `A` or of `B`.

use std::collections::BTreeSet;

use log::warn;
use rayon::prelude::*;

use crate::error::{ComputeError, Result};
use crate::field::FieldSpec;
use crate::linalg::{rank, SparseRow};
use crate::monomial_ideal::MonomialIdeal;
use crate::presentation::PresentedModule;
use crate::resolution::BettiTable;
use crate::ring::{Monomial, MultiDegree};

/// Largest candidate set before falling back to the whole box.
pub const CANDIDATE_CAP: usize = 4096;

/// Betti table of `m` from Koszul homology. `bound` caps the coarse degrees
/// examined; by default it lies just beyond every lcm of the monomial data.
pub fn koszul_tor_oracle(m: &PresentedModule, bound: Option<&MultiDegree>) -> Result<BettiTable> {
    let data = m.monomial.as_ref().ok_or(ComputeError::NonMonomial)?;
    let (a, b) = (&data.numerator, &data.denominator);
    let ring = &m.ring;
    if a.is_zero() || b.contains_ideal(a) {
        return Ok(BettiTable::default());
    }
    let top = a.lcm_all().lcm(&b.lcm_all());
    let bound = match bound {
        Some(d) => d.clone(),
        None => {
            let d = top.multidegree(ring);
            MultiDegree(d.0.iter().map(|x| x + 1).collect())
        }
    };
    let mut cands = lcm_closure(a.gens(), CANDIDATE_CAP)
        .and_then(|mut s| {
            lcm_closure(b.gens(), CANDIDATE_CAP).map(|t| {
                s.extend(t);
                s
            })
        })
        .filter(|s| s.len() <= CANDIDATE_CAP)
        .map(|s| s.into_iter().collect::<Vec<_>>());
    if cands.is_none() {
        warn!("more than {CANDIDATE_CAP} candidate degrees; scanning the full box");
        cands = Some(full_box(&top));
    }
    let cands: Vec<Vec<u32>> =
        cands.unwrap().into_iter().filter(|e| Monomial::from_exps(e).multidegree(ring).le(&bound)).collect();
    let field = ring.field();
    let dims: Vec<Vec<usize>> = cands.par_iter().map(|alpha| tor_dims(alpha, a, b, field)).collect();
    let mut table = BettiTable::default();
    for (alpha, dims) in cands.iter().zip(dims) {
        let coarse = Monomial::from_exps(alpha).multidegree(ring);
        for (i, &dim) in dims.iter().enumerate() {
            if dim == 0 {
                continue;
            }
            if on_boundary(&coarse, &bound) {
                return Err(ComputeError::BoxTooSmall(coarse.0));
            }
            for _ in 0..dim {
                table.insert(i, coarse.clone());
            }
        }
    }
    Ok(table)
}

fn on_boundary(d: &MultiDegree, bound: &MultiDegree) -> bool {
    d.0.iter().zip(&bound.0).any(|(x, y)| x == y)
}

/// All lcms of nonempty subsets of `gens`, or `None` past `cap`.
fn lcm_closure(gens: &[Monomial], cap: usize) -> Option<BTreeSet<Vec<u32>>> {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    for g in gens {
        let mut fresh: Vec<Vec<u32>> = vec![g.exps.to_vec()];
        for s in &set {
            fresh.push(s.iter().zip(g.exps.iter()).map(|(x, y)| *x.max(y)).collect());
        }
        set.extend(fresh);
        if set.len() > cap {
            return None;
        }
    }
    Some(set)
}

fn full_box(top: &Monomial) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &e in top.exps.iter() {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=e).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// `dim Tor_i(A/B, k)_α` for `i = 0..=n`.
fn tor_dims(alpha: &[u32], a: &MonomialIdeal, b: &MonomialIdeal, field: FieldSpec) -> Vec<usize> {
    let n = alpha.len();
    let support: Vec<usize> = (0..n).filter(|&v| alpha[v] > 0).collect();
    let live = |f: &[usize]| {
        let mut m = Monomial::from_exps(alpha);
        for &v in f {
            m.exps[v] -= 1;
        }
        a.contains(&m) && !b.contains(&m)
    };
    // basis[i]: subsets of size i, as sorted variable lists
    let mut basis: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    for mask in 0u64..(1u64 << support.len()) {
        let f: Vec<usize> = support.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &v)| v).collect();
        if live(&f) {
            basis[f.len()].push(f);
        }
    }
    for level in basis.iter_mut() {
        level.sort();
    }
    // ranks[i] = rank of d_i: K_i -> K_{i-1}
    let mut ranks = vec![0usize; n + 2];
    for i in 1..=n {
        if basis[i].is_empty() || basis[i - 1].is_empty() {
            continue;
        }
        let rows: Vec<SparseRow> = basis[i]
            .iter()
            .map(|f| {
                let mut row: SparseRow = Vec::new();
                for (pos, _) in f.iter().enumerate() {
                    let mut g = f.clone();
                    g.remove(pos);
                    if let Ok(idx) = basis[i - 1].binary_search(&g) {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        row.push((idx, field.from_i64(sign)));
                    }
                }
                row.sort_by_key(|t| t.0);
                row
            })
            .collect();
        ranks[i] = rank(rows, basis[i - 1].len());
    }
    (0..=n).map(|i| basis[i].len() - ranks[i] - ranks[i + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::Polynomial;
    use crate::ring::RingSpec;

    fn polys(r: &RingSpec, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn one_variable() {
        let r = RingSpec::from_names(&[&["x"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::quotient(&r, &polys(&r, &["x"])).unwrap();
        let t = koszul_tor_oracle(&m, None).unwrap();
        assert_eq!(t.entries[&0], vec![MultiDegree(vec![0])]);
        assert_eq!(t.entries[&1], vec![MultiDegree(vec![1])]);
        assert_eq!(t.entries.len(), 2);
    }

    #[test]
    fn rejects_non_monomial_data() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::quotient(&r, &polys(&r, &["x^2 + y^2"])).unwrap();
        assert_eq!(koszul_tor_oracle(&m, None), Err(ComputeError::NonMonomial));
    }

    #[test]
    fn small_box_is_detected() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::quotient(&r, &polys(&r, &["x^2", "y^2"])).unwrap();
        assert_eq!(koszul_tor_oracle(&m, Some(&MultiDegree(vec![2]))), Err(ComputeError::BoxTooSmall(vec![2])));
        let t = koszul_tor_oracle(&m, Some(&MultiDegree(vec![5]))).unwrap();
        assert_eq!(t.entries[&2], vec![MultiDegree(vec![4])]);
    }

    #[test]
    fn characteristic_matters_for_triangulated_projective_plane() {
        // Stanley-Reisner ideal of the six-vertex real projective plane
        let names = ["a", "b", "c", "d", "e", "f"];
        let facets = ["abe", "abf", "acd", "acf", "ade", "bcd", "bce", "bdf", "cef", "def"];
        let in_facet = |s: &[usize]| facets.iter().any(|f| s.iter().all(|&v| f.contains(names[v])));
        let mut gens = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    if !in_facet(&[i, j, k]) && in_facet(&[i, j]) && in_facet(&[i, k]) && in_facet(&[j, k]) {
                        gens.push(format!("{}*{}*{}", names[i], names[j], names[k]));
                    }
                }
            }
        }
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let tot = |field| {
            let r = RingSpec::from_names(&[&names], field).unwrap();
            let m = PresentedModule::quotient(&r, &polys(&r, &refs)).unwrap();
            let t = koszul_tor_oracle(&m, None).unwrap();
            t.entries.values().map(|v| v.len()).sum::<usize>()
        };
        assert_ne!(tot(FieldSpec::Rationals), tot(FieldSpec::PrimeField(2)));
    }
}
