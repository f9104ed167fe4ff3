//! Finitely presented multigraded modules.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::extint::ExtendedInt;
use crate::groebner::{kernel_mod, Submodule};
use crate::module::{FreeModuleSpec, ModuleElement};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::Polynomial;
use crate::ring::{MultiDegree, RingSpec};
use crate::substitution::Substitution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    QuotientOfRing,
    IdealAsModule,
    PowerTimesQuotient,
    GenericImage,
    Subquotient,
}

/// A monomial description of the module as `A/B`, where `B ⊆ A` are
/// monomial ideals; the module is the image of `A` in `S/J` with
/// `B = A ∩ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialData {
    pub numerator: MonomialIdeal,
    pub denominator: MonomialIdeal,
}

/// The cokernel of the map given by `relations` into `free`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub ring: RingSpec,
    pub free: FreeModuleSpec,
    pub relations: Vec<ModuleElement>,
    pub provenance: Provenance,
    pub monomial: Option<MonomialData>,
}

/// Minimal generator degrees and the `d`/`beg` vectors derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorStats {
    pub degrees: Vec<MultiDegree>,
    pub d: Vec<ExtendedInt>,
    pub beg: Vec<ExtendedInt>,
}

fn degree_of(p: &Polynomial, ring: &RingSpec, what: &str) -> Result<MultiDegree> {
    p.degree(ring).ok_or_else(|| AlgebraError::NotHomogeneous(format!("{what} `{}`", p.display(ring))).into())
}

fn nonzero(ps: &[Polynomial]) -> Vec<Polynomial> {
    ps.iter().filter(|p| !p.is_zero()).cloned().collect()
}

/// Presentation of `(A + J)/J` where `A` is generated by `numerator`: one
/// generator per numerator element, relations the kernel of
/// `S^r -> S/J`.
pub fn present_subquotient(ring: &RingSpec, numerator: &[Polynomial], j: &[Polynomial]) -> Result<PresentedModule> {
    let num = nonzero(numerator);
    let den = nonzero(j);
    let degrees = num.iter().map(|p| degree_of(p, ring, "generator")).collect::<Result<Vec<_>>>()?;
    for p in &den {
        degree_of(p, ring, "relation")?;
    }
    let source = FreeModuleSpec::new(degrees);
    let target = FreeModuleSpec::ring(ring.num_blocks());
    let images: Vec<ModuleElement> = num.iter().map(|p| ModuleElement::from_polynomial(p.clone())).collect();
    let denom: Vec<ModuleElement> = den.iter().map(|p| ModuleElement::from_polynomial(p.clone())).collect();
    let relations = kernel_mod(&target, &images, &source, &denom, ring.field(), ring.num_vars());
    let n = ring.num_vars();
    let monomial = match (MonomialIdeal::from_polynomials(n, &num), MonomialIdeal::from_polynomials(n, &den)) {
        (Some(a), Some(jm)) => {
            let b = a.intersection(&jm);
            Some(MonomialData { numerator: a, denominator: b })
        }
        _ => None,
    };
    Ok(PresentedModule { ring: ring.clone(), free: source, relations, provenance: Provenance::Subquotient, monomial })
}

/// Generators of `I^n`: minimal monomial generators when `I` is monomial,
/// otherwise all products of `n` generators.
pub fn power_generators(ring: &RingSpec, gens: &[Polynomial], n: u32) -> Vec<Polynomial> {
    let gens = nonzero(gens);
    if let Some(mi) = MonomialIdeal::from_polynomials(ring.num_vars(), &gens) {
        return mi.power(n).to_polynomials(ring.field());
    }
    let mut out = vec![Polynomial::constant(ring.field().one(), ring.num_vars())];
    let mut starts = vec![0usize];
    for _ in 0..n {
        let mut next = Vec::new();
        let mut next_starts = Vec::new();
        for (p, &s) in out.iter().zip(&starts) {
            for (i, g) in gens.iter().enumerate().skip(s) {
                next.push(p.mul(g));
                next_starts.push(i);
            }
        }
        out = next;
        starts = next_starts;
    }
    out
}

impl PresentedModule {
    pub fn new(
        ring: &RingSpec,
        free: FreeModuleSpec,
        relations: Vec<ModuleElement>,
        provenance: Provenance,
    ) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if r.rank() != free.rank() {
                return Err(AlgebraError::InvalidRing(format!("relation {i} has the wrong rank")).into());
            }
            r.degree(ring, &free)?;
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedModule { ring: ring.clone(), free, relations, provenance, monomial: None })
    }

    /// `S/J`.
    pub fn quotient(ring: &RingSpec, j: &[Polynomial]) -> Result<Self> {
        let den = nonzero(j);
        for p in &den {
            degree_of(p, ring, "relation")?;
        }
        let n = ring.num_vars();
        let monomial = MonomialIdeal::from_polynomials(n, &den)
            .map(|jm| MonomialData { numerator: MonomialIdeal::unit(n), denominator: jm });
        Ok(PresentedModule {
            ring: ring.clone(),
            free: FreeModuleSpec::ring(ring.num_blocks()),
            relations: den.into_iter().map(ModuleElement::from_polynomial).collect(),
            provenance: Provenance::QuotientOfRing,
            monomial,
        })
    }

    /// A free module with the given generator degrees.
    pub fn free_module(ring: &RingSpec, shifts: Vec<MultiDegree>) -> Self {
        let n = ring.num_vars();
        let monomial = (shifts.len() == 1 && shifts[0] == ring.zero_degree())
            .then(|| MonomialData { numerator: MonomialIdeal::unit(n), denominator: MonomialIdeal::zero(n) });
        PresentedModule {
            ring: ring.clone(),
            free: FreeModuleSpec::new(shifts),
            relations: Vec::new(),
            provenance: Provenance::QuotientOfRing,
            monomial,
        }
    }

    pub fn ideal_as_module(ring: &RingSpec, gens: &[Polynomial]) -> Result<Self> {
        let mut m = present_subquotient(ring, gens, &[])?;
        m.provenance = Provenance::IdealAsModule;
        Ok(m)
    }

    /// `I^n (S/J)`.
    pub fn power_times_quotient(ring: &RingSpec, i: &[Polynomial], n: u32, j: &[Polynomial]) -> Result<Self> {
        let mut m = present_subquotient(ring, &power_generators(ring, i, n), j)?;
        m.provenance = Provenance::PowerTimesQuotient;
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.free.rank()
    }

    pub fn relation_submodule(&self) -> Submodule {
        Submodule::new(self.relations.clone(), &self.free, self.ring.num_vars())
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0 || self.relation_submodule().groebner().is_everything()
    }

    /// The module with `sigma` applied to every relation.
    pub fn substituted(&self, sigma: &Substitution) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            free: self.free.clone(),
            relations: self.relations.iter().map(|r| sigma.apply_element(r)).collect(),
            provenance: Provenance::GenericImage,
            monomial: None,
        }
    }

    /// Degrees of a minimal generating set, found by eliminating generators
    /// that appear with a unit coefficient in some relation.
    pub fn generator_stats(&self) -> GeneratorStats {
        let mut shifts = self.free.shifts.clone();
        let mut rels: Vec<ModuleElement> = self.relations.clone();
        while let Some((ri, r)) = find_unit(&rels) {
            let rel = rels.remove(ri);
            let u_inv = rel.components[r].terms()[0].1.inv();
            for other in rels.iter_mut() {
                let f = &other.components[r];
                if !f.is_zero() {
                    let factor = f.scale(&u_inv);
                    *other = other.sub(&rel.mul_poly(&factor));
                }
            }
            for other in rels.iter_mut() {
                other.components.remove(r);
            }
            rels.retain(|x| !x.is_zero());
            shifts.remove(r);
        }
        let free = FreeModuleSpec::new(shifts.clone());
        let sub = Submodule::new(rels, &free, self.ring.num_vars());
        let field = self.ring.field();
        let n = self.ring.num_vars();
        let degrees: Vec<MultiDegree> = shifts
            .iter()
            .enumerate()
            .filter(|(j, _)| !sub.contains(&ModuleElement::basis(free.rank(), *j, field, n)))
            .map(|(_, s)| s.clone())
            .collect();
        let k = self.ring.num_blocks();
        let d = (0..k)
            .map(|l| degrees.iter().map(|s| ExtendedInt::Finite(s.coord(l))).max().unwrap_or(ExtendedInt::NegInf))
            .collect();
        let beg = (0..k)
            .map(|l| degrees.iter().map(|s| ExtendedInt::Finite(s.coord(l))).min().unwrap_or(ExtendedInt::PosInf))
            .collect();
        let mut degrees = degrees;
        degrees.sort();
        GeneratorStats { degrees, d, beg }
    }
}

fn find_unit(rels: &[ModuleElement]) -> Option<(usize, usize)> {
    for (i, rel) in rels.iter().enumerate() {
        for (r, p) in rel.components.iter().enumerate() {
            if p.is_constant() {
                return Some((i, r));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;

    fn polys(r: &RingSpec, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn cyclic_quotient() {
        let r = RingSpec::from_names(&[&["x"]], FieldSpec::Rationals).unwrap();
        let m = present_subquotient(&r, &polys(&r, &["1"]), &polys(&r, &["x^2"])).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.relations.len(), 1);
        assert_eq!(m.relations[0].components[0].display(&r), "x^2");
    }

    #[test]
    fn generator_in_denominator_gives_zero_module() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let m = present_subquotient(&r, &polys(&r, &["x"]), &polys(&r, &["x"])).unwrap();
        assert!(m.is_zero());
        let st = m.generator_stats();
        assert_eq!(st.d, vec![ExtendedInt::NegInf]);
        assert_eq!(st.beg, vec![ExtendedInt::PosInf]);
    }

    #[test]
    fn quotient_stats_are_zero() {
        let r = RingSpec::from_names(&[&["x"], &["y"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::quotient(&r, &polys(&r, &["x*y", "y^3"])).unwrap();
        let st = m.generator_stats();
        assert_eq!(st.d, vec![ExtendedInt::Finite(0); 2]);
        assert_eq!(st.beg, vec![ExtendedInt::Finite(0); 2]);
    }

    #[test]
    fn ideal_stats_and_redundant_generators() {
        let r = RingSpec::from_names(&[&["x0", "x1"], &["y0", "y1"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::ideal_as_module(&r, &polys(&r, &["x0^2", "x0*y1", "x1*y0", "y0^2"])).unwrap();
        let st = m.generator_stats();
        assert_eq!(st.d, vec![ExtendedInt::Finite(2); 2]);
        assert_eq!(st.beg, vec![ExtendedInt::Finite(0); 2]);
        // a redundant generator is eliminated
        let m = PresentedModule::ideal_as_module(&r, &polys(&r, &["x0", "x0*y1"])).unwrap();
        let st = m.generator_stats();
        assert_eq!(st.degrees, vec![MultiDegree(vec![1, 0])]);
    }

    #[test]
    fn non_homogeneous_input_is_rejected() {
        let r = RingSpec::from_names(&[&["x"], &["y"]], FieldSpec::Rationals).unwrap();
        assert!(PresentedModule::quotient(&r, &polys(&r, &["x + y"])).is_err());
    }

    #[test]
    fn general_powers_match_monomial_powers() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        assert_eq!(power_generators(&r, &polys(&r, &["x^2", "x*y"]), 3).len(), 4);
        assert_eq!(power_generators(&r, &polys(&r, &["x^2 + y^2", "x*y"]), 3).len(), 4);
    }
}
