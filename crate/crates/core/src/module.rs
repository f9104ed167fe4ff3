//! Shifted free modules, their elements, and module term orders.

use std::cmp::Ordering;

use crate::error::AlgebraError;
use crate::field::{Coeff, FieldSpec};
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::{cmp_degrevlex_products, Monomial, MultiDegree, RingSpec};

/// `S(-shifts[0]) + ... + S(-shifts[r-1])`; basis vector `j` has degree
/// `shifts[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleSpec {
    pub shifts: Vec<MultiDegree>,
}

impl FreeModuleSpec {
    pub fn new(shifts: Vec<MultiDegree>) -> Self {
        FreeModuleSpec { shifts }
    }

    /// The ring itself, generated in degree zero.
    pub fn ring(k: usize) -> Self {
        FreeModuleSpec { shifts: vec![MultiDegree::zero(k)] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn direct_sum(&self, other: &FreeModuleSpec) -> Self {
        FreeModuleSpec { shifts: self.shifts.iter().chain(&other.shifts).cloned().collect() }
    }

    /// Every shift moved by `-d`, i.e. the module `F(d)`.
    pub fn twisted(&self, d: &MultiDegree) -> Self {
        FreeModuleSpec { shifts: self.shifts.iter().map(|s| s - d).collect() }
    }
}

/// A vector of polynomials, one per basis element of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub components: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement { components: vec![Polynomial::zero(); rank] }
    }

    pub fn basis(rank: usize, j: usize, field: FieldSpec, nvars: usize) -> Self {
        let mut e = Self::zero(rank);
        e.components[j] = Polynomial::constant(field.one(), nvars);
        e
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        ModuleElement { components: vec![p] }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &ModuleElement) -> Self {
        ModuleElement { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModuleElement) -> Self {
        ModuleElement { components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        ModuleElement { components: self.components.iter().map(|p| p.mul(f)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        ModuleElement { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// Degree in `free`; `Ok(None)` for the zero element.
    pub fn degree(&self, ring: &RingSpec, free: &FreeModuleSpec) -> Result<Option<MultiDegree>, AlgebraError> {
        let mut deg: Option<MultiDegree> = None;
        for (j, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = match p.multidegree_of(ring)? {
                Homogeneity::Homogeneous(d) => &d + &free.shifts[j],
                Homogeneity::NotHomogeneous => return Err(AlgebraError::NotHomogeneous(format!("component {j}"))),
            };
            match &deg {
                None => deg = Some(d),
                Some(prev) if *prev != d => {
                    return Err(AlgebraError::NotHomogeneous(format!("components have degrees {prev} and {d}")))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Places the components starting at `offset` in a module of rank `rank`.
    pub fn embed(&self, rank: usize, offset: usize) -> Self {
        let mut out = Self::zero(rank);
        for (j, p) in self.components.iter().enumerate() {
            out.components[offset + j] = p.clone();
        }
        out
    }

    pub fn display(&self, ring: &RingSpec) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| p.display(ring)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Comparison data for one basis element of a free module.
///
/// A term `m*e_a` is compared through `(comp0, m*mono0, tie)`: the position
/// and monomial of its image at the bottom of a Schreyer frame, then the
/// chain of basis indices that leads there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FrameKey {
    comp0: usize,
    mono0: Monomial,
    tie: Vec<usize>,
}

/// A monomial order on a free module: position-over-term with earlier
/// positions larger, or the Schreyer order induced through a map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    keys: Vec<FrameKey>,
}

impl TermOrder {
    pub fn position_over_term(rank: usize, nvars: usize) -> Self {
        TermOrder {
            keys: (0..rank).map(|j| FrameKey { comp0: j, mono0: Monomial::one(nvars), tie: vec![j] }).collect(),
        }
    }

    /// Order on a free module whose basis element `a` maps to an element
    /// with leading term `leads[a] = (c, mu)`, i.e. `mu*e_c`.
    pub fn schreyer(&self, leads: &[(usize, Monomial)]) -> Self {
        TermOrder {
            keys: leads
                .iter()
                .enumerate()
                .map(|(a, (c, mu))| {
                    let base = &self.keys[*c];
                    let mut tie = base.tie.clone();
                    tie.push(a);
                    FrameKey { comp0: base.comp0, mono0: base.mono0.mul(mu), tie }
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.keys.len()
    }

    /// `Greater` means `m*e_a > n*e_b`.
    pub fn cmp(&self, a: usize, m: &Monomial, b: usize, n: &Monomial) -> Ordering {
        let ka = &self.keys[a];
        let kb = &self.keys[b];
        kb.comp0
            .cmp(&ka.comp0)
            .then_with(|| cmp_degrevlex_products(&m.exps, &ka.mono0.exps, &n.exps, &kb.mono0.exps))
            .then_with(|| kb.tie.cmp(&ka.tie))
    }
}

pub(crate) type Term = (usize, Monomial, Coeff);

/// Internal sparse form of a module element: terms sorted by decreasing
/// order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<Term>, order: &TermOrder) -> Self {
        terms.sort_by(|x, y| order.cmp(y.0, &y.1, x.0, &x.1));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 = &last.2 + &t.2,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.2.is_zero());
        Vector { terms: out }
    }

    pub fn from_element(e: &ModuleElement, order: &TermOrder) -> Self {
        let terms = e
            .components
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.terms().iter().map(move |(m, c)| (j, m.clone(), c.clone())))
            .collect();
        Self::from_terms(terms, order)
    }

    pub fn to_element(&self, rank: usize) -> ModuleElement {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for (j, m, c) in &self.terms {
            parts[*j].push((m.clone(), c.clone()));
        }
        ModuleElement { components: parts.into_iter().map(Polynomial::from_terms).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, _, c)) if c.is_one() => self.clone(),
            Some((_, _, c)) => {
                let inv = c.inv();
                Vector { terms: self.terms.iter().map(|(j, m, d)| (*j, m.clone(), d * &inv)).collect() }
            }
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(j, n, d)| (*j, n.mul(m), d * c)).collect() }
    }

    /// `self + c*m*other`.
    pub fn add_scaled(&self, c: &Coeff, m: &Monomial, other: &Vector, order: &TermOrder) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut b = other.terms.iter().map(|(j, n, d)| (*j, n.mul(m), d * c)).peekable();
        loop {
            let a = self.terms.get(i);
            match (a, b.peek()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(x.0, &x.1, y.0, &y.1) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (_, _, d) = b.next().unwrap();
                        let s = &x.2 + &d;
                        if !s.is_zero() {
                            out.push((x.0, x.1.clone(), s));
                        }
                        i += 1;
                    }
                },
            }
        }
        Vector { terms: out }
    }
}
