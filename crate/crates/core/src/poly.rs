//! Sparse polynomials with exact coefficients.

use std::cmp::Ordering;

use crate::error::AlgebraError;
use crate::field::{Coeff, FieldSpec};
use crate::ring::{Monomial, MultiDegree, RingSpec};

/// Terms are kept sorted by decreasing degrevlex order with no zero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
}

/// Result of [`Polynomial::multidegree_of`] on a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(MultiDegree),
    NotHomogeneous,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Coeff, nvars: usize) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial, field: FieldSpec) -> Self {
        Self::term(m, field.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// A single term with any nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.is_monomial() {
            Some(&self.terms[0].0)
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial, if present.
    pub fn constant_term(&self) -> Option<&Coeff> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn multidegree_of(&self, ring: &RingSpec) -> Result<Homogeneity, AlgebraError> {
        let mut it = self.terms.iter();
        let first = it.next().ok_or(AlgebraError::ZeroPolynomial)?;
        let d = first.0.multidegree(ring);
        for (m, _) in it {
            if m.multidegree(ring) != d {
                return Ok(Homogeneity::NotHomogeneous);
            }
        }
        Ok(Homogeneity::Homogeneous(d))
    }

    /// Multidegree of a nonzero multihomogeneous polynomial.
    pub fn degree(&self, ring: &RingSpec) -> Option<MultiDegree> {
        match self.multidegree_of(ring) {
            Ok(Homogeneity::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    /// `self + c*m*other`.
    pub fn add_scaled(&self, c: &Coeff, m: &Monomial, other: &Polynomial) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(n, d)| (n.mul(m), d * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m1, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        let s = c1 + &c2;
                        if !s.is_zero() {
                            out.push((m1.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        match other.terms.first() {
            None => self.clone(),
            Some((m, c)) => {
                let one = Monomial::one(m.nvars());
                self.add_scaled(&c.field().one(), &one, other)
            }
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        match other.terms.first() {
            None => self.clone(),
            Some((m, c)) => {
                let one = Monomial::one(m.nvars());
                self.add_scaled(&(-&c.field().one()), &one, other)
            }
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, big);
        }
        acc
    }

    pub fn pow(&self, e: u32, field: FieldSpec, nvars: usize) -> Self {
        let mut acc = Polynomial::constant(field.one(), nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Canonical textual form, re-parseable by [`crate::parse::parse_polynomial`].
    pub fn display(&self, ring: &RingSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_for_display();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = abs.to_string();
            if m.is_one() {
                s.push_str(&coeff);
            } else if abs.is_one() {
                s.push_str(&m.display(ring));
            } else {
                s.push_str(&coeff);
                s.push('*');
                s.push_str(&m.display(ring));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn x(e: [u32; 2]) -> Monomial {
        Monomial::from_exps(&e)
    }

    #[test]
    fn binomial_square() {
        let f = q();
        let p = Polynomial::from_terms(vec![(x([1, 0]), f.one()), (x([0, 1]), f.one())]);
        let sq = p.pow(2, f, 2);
        assert_eq!(sq.terms(), &[(x([2, 0]), f.one()), (x([1, 1]), f.from_i64(2)), (x([0, 2]), f.one())]);
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = q();
        let p = Polynomial::from_terms(vec![(x([1, 0]), f.one()), (x([0, 1]), f.from_i64(3))]);
        assert!(p.sub(&p).is_zero());
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn zero_has_no_multidegree() {
        let r = RingSpec::from_names(&[&["a"], &["b"]], q()).unwrap();
        assert_eq!(Polynomial::zero().multidegree_of(&r), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn constant_term_detection() {
        let f = q();
        let p = Polynomial::from_terms(vec![(x([1, 0]), f.one()), (x([0, 0]), f.from_i64(5))]);
        assert_eq!(p.constant_term(), Some(&f.from_i64(5)));
        assert!(!p.is_constant());
        assert!(Polynomial::constant(f.from_i64(2), 2).is_constant());
    }
}
