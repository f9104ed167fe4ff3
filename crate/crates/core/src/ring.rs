//! Standard `N^k`-graded polynomial rings, multidegrees and monomials.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::field::FieldSpec;

/// Ring variables split into `k` blocks; every variable of block `l` has
/// multidegree `e_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    blocks: Vec<Vec<String>>,
    field: FieldSpec,
    var_block: Vec<usize>,
    block_start: Vec<usize>,
}

impl RingSpec {
    pub fn new(blocks: Vec<Vec<String>>, field: FieldSpec) -> Result<Self, AlgebraError> {
        if blocks.is_empty() {
            return Err(AlgebraError::InvalidRing("at least one block required".into()));
        }
        let mut seen = HashSet::new();
        let mut var_block = Vec::new();
        let mut block_start = Vec::new();
        for (l, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(AlgebraError::InvalidRing(format!("block {} is empty", l + 1)));
            }
            block_start.push(var_block.len());
            for name in block {
                if !is_identifier(name) {
                    return Err(AlgebraError::InvalidRing(format!("bad variable name `{name}`")));
                }
                if !seen.insert(name.clone()) {
                    return Err(AlgebraError::InvalidRing(format!("duplicate variable `{name}`")));
                }
                var_block.push(l);
            }
        }
        Ok(RingSpec { blocks, field, var_block, block_start })
    }

    /// Convenience constructor from string slices.
    pub fn from_names(blocks: &[&[&str]], field: FieldSpec) -> Result<Self, AlgebraError> {
        Self::new(blocks.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect(), field)
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        RingSpec { field, ..self.clone() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    /// Number of blocks `k`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_vars(&self) -> usize {
        self.var_block.len()
    }

    pub fn block_size(&self, l: usize) -> usize {
        self.blocks[l].len()
    }

    pub fn block_of(&self, var: usize) -> usize {
        self.var_block[var]
    }

    /// Global indices of the variables of block `l`, in order.
    pub fn block_vars(&self, l: usize) -> std::ops::Range<usize> {
        let s = self.block_start[l];
        s..s + self.blocks[l].len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().flatten().position(|v| v == name)
    }

    pub fn var_name(&self, var: usize) -> &str {
        let l = self.var_block[var];
        &self.blocks[l][var - self.block_start[l]]
    }

    pub fn zero_degree(&self) -> MultiDegree {
        MultiDegree::zero(self.num_blocks())
    }

    pub fn var(&self, var: usize) -> Monomial {
        let mut m = Monomial::one(self.num_vars());
        m.exps[var] = 1;
        m
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A point of `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(k: usize) -> Self {
        MultiDegree(vec![0; k])
    }

    pub fn unit(k: usize, l: usize) -> Self {
        let mut v = vec![0; k];
        v[l] = 1;
        MultiDegree(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coord(&self, l: usize) -> i64 {
        self.0[l]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, n: i64) -> Self {
        MultiDegree(self.0.iter().map(|x| x * n).collect())
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Self) -> Self {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Self) -> Self {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub type Exponents = SmallVec<[u32; 8]>;

/// An exponent vector over all ring variables (blocks concatenated).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn multidegree(&self, ring: &RingSpec) -> MultiDegree {
        let mut d = vec![0i64; ring.num_blocks()];
        for (v, &e) in self.exps.iter().enumerate() {
            d[ring.block_of(v)] += e as i64;
        }
        MultiDegree(d)
    }

    pub fn block_degree(&self, ring: &RingSpec, l: usize) -> u32 {
        self.exps[ring.block_vars(l)].iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn display(&self, ring: &RingSpec) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (v, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.var_name(v).to_string()),
                _ => parts.push(format!("{}^{}", ring.var_name(v), e)),
            }
        }
        parts.join("*")
    }
}

/// Graded reverse lexicographic comparison over the concatenated exponent
/// vector (variables ordered block by block). `Greater` means `a > b`.
pub fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Compares the products `a*u` and `b*v` without allocating.
pub fn cmp_degrevlex_products(a: &[u32], u: &[u32], b: &[u32], v: &[u32]) -> Ordering {
    let da: u32 = a.iter().chain(u).sum();
    let db: u32 = b.iter().chain(v).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            let x = a[i] + u[i];
            let y = b[i] + v[i];
            if x != y {
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_degrevlex(&self.exps, &other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `deg` in the given variables.
pub fn monomials_of_degree(nvars: usize, vars: &[usize], deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Monomial::one(nvars);
    fn rec(vars: &[usize], left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&v, rest)) => {
                if rest.is_empty() {
                    cur.exps[v] = left;
                    out.push(cur.clone());
                    cur.exps[v] = 0;
                    return;
                }
                for e in (0..=left).rev() {
                    cur.exps[v] = e;
                    rec(rest, left - e, cur, out);
                }
                cur.exps[v] = 0;
            }
        }
    }
    if vars.is_empty() {
        if deg == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(vars, deg, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingSpec {
        RingSpec::from_names(&[&["x0", "x1"], &["y0", "y1"]], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn ring_validation() {
        assert!(RingSpec::from_names(&[], FieldSpec::Rationals).is_err());
        assert!(RingSpec::from_names(&[&["x"], &[]], FieldSpec::Rationals).is_err());
        assert!(RingSpec::from_names(&[&["x"], &["x"]], FieldSpec::Rationals).is_err());
        let r = ring();
        assert_eq!(r.num_vars(), 4);
        assert_eq!(r.block_vars(1), 2..4);
        assert_eq!(r.var_index("y0"), Some(2));
        assert_eq!(r.var_name(3), "y1");
    }

    #[test]
    fn multidegree_is_blockwise_sum() {
        let r = ring();
        let m = Monomial::from_exps(&[2, 1, 0, 3]);
        assert_eq!(m.multidegree(&r), MultiDegree(vec![3, 3]));
    }

    #[test]
    fn degrevlex_basics() {
        // x0 > x1 > y0 > y1 in degree one
        let x0 = [1, 0, 0, 0];
        let y1 = [0, 0, 0, 1];
        assert_eq!(cmp_degrevlex(&x0, &y1), Ordering::Greater);
        // x0*y1 < x1^2 in degrevlex (y1 is the last variable)
        assert_eq!(cmp_degrevlex(&[1, 0, 0, 1], &[0, 2, 0, 0]), Ordering::Less);
        assert_eq!(cmp_degrevlex_products(&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 1, 0, 0]), Ordering::Less);
    }

    #[test]
    fn enumerates_monomials() {
        let ms = monomials_of_degree(3, &[0, 2], 2);
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|m| m.exps[1] == 0 && m.total_degree() == 2));
        assert_eq!(monomials_of_degree(3, &[], 0).len(), 1);
        assert_eq!(monomials_of_degree(3, &[], 1).len(), 0);
    }
}
