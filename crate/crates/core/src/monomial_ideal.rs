//! Monomial ideals: minimal generators, products, colons, irreducible
//! decomposition and associated primes.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::ComputeError;
use crate::field::FieldSpec;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingSpec};

/// An ideal generated by monomials; generators are kept minimal and sorted
/// by increasing degrevlex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// A prime generated by a nonempty set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        assert!(!vars.is_empty(), "monomial prime needs at least one variable");
        MonomialPrime { vars }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn display(&self, ring: &RingSpec) -> String {
        let names: Vec<_> = self.vars.iter().map(|&v| ring.var_name(v)).collect();
        format!("({})", names.join(","))
    }
}

/// `Ass(S/I)`. The zero ideal has the single associated prime `(0)`, which is
/// flagged separately because it is not generated by variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPrimes {
    pub zero_prime: bool,
    pub primes: Vec<MonomialPrime>,
}

pub fn minimalize(gens: impl IntoIterator<Item = Monomial>, nvars: usize) -> MonomialIdeal {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort();
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    // increasing degree: a divisor always comes before its multiples
    for m in all {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    MonomialIdeal { nvars, gens: kept }
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        minimalize(gens, nvars)
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// Reads monomial generators off polynomials; `None` if one of them is
    /// not a single term.
    pub fn from_polynomials(nvars: usize, polys: &[Polynomial]) -> Option<Self> {
        let mut gens = Vec::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            gens.push(p.as_monomial()?.clone());
        }
        Some(Self::new(nvars, gens))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Self {
        minimalize(self.gens.iter().chain(&other.gens).cloned(), self.nvars)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Self {
        minimalize(self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))), self.nvars)
    }

    pub fn power(&self, n: u32) -> Self {
        assert!(n >= 1, "power requires n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Self {
        minimalize(self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))), self.nvars)
    }

    /// `(I : m) = { u : u*m in I }`.
    pub fn colon(&self, m: &Monomial) -> Self {
        minimalize(self.gens.iter().map(|g| g.gcd(m).quotient_of(g)), self.nvars)
    }

    /// `(I : J)`, the intersection of `(I : g)` over the generators of `J`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Self {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for g in &other.gens {
            acc = acc.intersection(&self.colon(g));
        }
        acc
    }

    /// Componentwise maximum of the generators.
    pub fn lcm_all(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    pub fn to_polynomials(&self, field: FieldSpec) -> Vec<Polynomial> {
        self.gens.iter().map(|g| Polynomial::monomial(g.clone(), field)).collect()
    }

    /// If every generator is a single variable, the prime they generate.
    pub fn as_prime(&self) -> Option<MonomialPrime> {
        if self.gens.is_empty() || self.gens.iter().any(|g| g.total_degree() != 1) {
            return None;
        }
        Some(MonomialPrime::new(self.gens.iter().map(|g| g.support()[0]).collect()))
    }

    /// Irredundant decomposition into ideals generated by pure powers,
    /// each returned as `(variable, exponent)` pairs.
    pub fn irreducible_components(&self) -> Vec<Vec<(usize, u32)>> {
        let mut found = BTreeSet::new();
        split_irreducible(self.clone(), &mut found);
        let comps: Vec<Vec<(usize, u32)>> = found.into_iter().collect();
        // drop components containing another one
        comps
            .iter()
            .enumerate()
            .filter(|(i, c)| !comps.iter().enumerate().any(|(j, d)| j != *i && component_contains(c, d)))
            .map(|(_, c)| c.clone())
            .collect()
    }

    pub fn associated_primes(&self) -> Result<AssociatedPrimes, ComputeError> {
        if self.is_unit() {
            return Err(ComputeError::UnitIdeal);
        }
        if self.is_zero() {
            return Ok(AssociatedPrimes { zero_prime: true, primes: Vec::new() });
        }
        let radicals: BTreeSet<Vec<usize>> =
            self.irreducible_components().into_iter().map(|c| c.into_iter().map(|(v, _)| v).collect()).collect();
        let mut primes = Vec::new();
        for vars in radicals {
            let p = MonomialPrime::new(vars);
            if self.find_witness(&p).is_none() {
                return Err(ComputeError::Internal(format!(
                    "no annihilator witness for component prime {:?}",
                    p.vars()
                )));
            }
            primes.push(p);
        }
        Ok(AssociatedPrimes { zero_prime: false, primes })
    }

    /// Searches the lcm box for a monomial `m` with `(I : m) = P`.
    ///
    /// Variables outside `P` are fixed at their lcm exponent: raising them
    /// never changes a colon that already equals `P`.
    pub fn find_witness(&self, p: &MonomialPrime) -> Option<Monomial> {
        let lcm = self.lcm_all();
        let mut m = lcm.clone();
        let vars = p.vars().to_vec();
        for &v in &vars {
            m.exps[v] = 0;
        }
        loop {
            if !self.contains(&m) && self.colon(&m).as_prime().as_ref() == Some(p) {
                return Some(m);
            }
            // odometer over the exponents of the variables of P
            let mut i = 0;
            loop {
                if i == vars.len() {
                    return None;
                }
                let v = vars[i];
                if m.exps[v] < lcm.exps[v] {
                    m.exps[v] += 1;
                    break;
                }
                m.exps[v] = 0;
                i += 1;
            }
        }
    }

    pub fn display(&self, ring: &RingSpec) -> Vec<String> {
        self.gens.iter().map(|g| g.display(ring)).collect()
    }
}

/// `d` is contained in `c` (both irreducible): every generator `x^b` of `d`
/// is divisible by the generator `x^a` of `c` in the same variable.
fn component_contains(c: &[(usize, u32)], d: &[(usize, u32)]) -> bool {
    d.iter().all(|(v, b)| c.iter().any(|(w, a)| w == v && a <= b))
}

fn split_irreducible(ideal: MonomialIdeal, out: &mut BTreeSet<Vec<(usize, u32)>>) {
    if ideal.is_unit() {
        return;
    }
    let mixed = ideal.gens.iter().position(|g| g.support().len() >= 2);
    match mixed {
        None => {
            let mut comp: Vec<(usize, u32)> = ideal
                .gens
                .iter()
                .map(|g| {
                    let v = g.support()[0];
                    (v, g.exps[v])
                })
                .collect();
            comp.sort_unstable();
            out.insert(comp);
        }
        Some(i) => {
            let g = &ideal.gens[i];
            let v = g.support()[0];
            let mut pure = Monomial::one(ideal.nvars);
            pure.exps[v] = g.exps[v];
            let rest = pure.quotient_of(g);
            let others: Vec<Monomial> =
                ideal.gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m.clone()).collect();
            let left = minimalize(others.iter().cloned().chain([pure]), ideal.nvars);
            let right = minimalize(others.into_iter().chain([rest]), ideal.nvars);
            split_irreducible(left, out);
            split_irreducible(right, out);
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| format!("{:?}", g.exps.as_slice())).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| m(g)))
    }

    fn running_example() -> MonomialIdeal {
        ideal(&[&[2, 1, 0], &[1, 2, 0], &[1, 1, 1], &[0, 3, 0], &[0, 2, 1], &[0, 1, 2]])
    }

    #[test]
    fn minimalize_drops_multiples() {
        let i = ideal(&[&[2, 0], &[3, 0], &[1, 1]]);
        assert_eq!(i.gens(), &[m(&[1, 1]), m(&[2, 0])]);
        assert_eq!(running_example().gens().len(), 6);
        let sq = ideal(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).power(2);
        assert_eq!(sq.gens().len(), 6);
    }

    #[test]
    fn power_of_two_generators() {
        // frozen from brute-force expansion of all triple products
        let p = ideal(&[&[2, 0], &[1, 1]]).power(3);
        let mut got: Vec<_> = p.gens().iter().map(|g| g.exps.to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![3, 3], vec![4, 2], vec![5, 1], vec![6, 0]]);
    }

    #[test]
    fn colon_examples() {
        let c = running_example().colon(&m(&[1, 0, 0]));
        let mut got: Vec<_> = c.gens().iter().map(|g| g.exps.to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 1, 1], vec![0, 2, 0], vec![1, 1, 0]]);
        assert_eq!(running_example().colon(&m(&[0, 0, 0])), running_example());
        assert!(ideal(&[&[2]]).colon(&m(&[3])).is_unit());
    }

    #[test]
    fn associated_primes_examples() {
        let ass = running_example().associated_primes().unwrap();
        assert!(!ass.zero_prime);
        assert_eq!(ass.primes, vec![MonomialPrime::new(vec![0, 1, 2]), MonomialPrime::new(vec![1])]);
        let ass = ideal(&[&[2]]).associated_primes().unwrap();
        assert_eq!(ass.primes, vec![MonomialPrime::new(vec![0])]);
        let ass = ideal(&[&[1, 1]]).associated_primes().unwrap();
        assert_eq!(ass.primes, vec![MonomialPrime::new(vec![0]), MonomialPrime::new(vec![1])]);
    }

    #[test]
    fn degenerate_ideals() {
        assert_eq!(MonomialIdeal::unit(2).associated_primes(), Err(ComputeError::UnitIdeal));
        let z = MonomialIdeal::zero(2).associated_primes().unwrap();
        assert!(z.zero_prime && z.primes.is_empty());
        assert!(MonomialIdeal::unit(2).colon(&m(&[1, 1])).is_unit());
    }

    #[test]
    fn irreducible_decomposition_intersects_back() {
        let i = running_example();
        let comps = i.irreducible_components();
        let mut acc = MonomialIdeal::unit(3);
        for c in &comps {
            let q = MonomialIdeal::new(
                3,
                c.iter().map(|&(v, e)| {
                    let mut x = Monomial::one(3);
                    x.exps[v] = e;
                    x
                }),
            );
            acc = acc.intersection(&q);
        }
        assert_eq!(acc, i);
    }

    /// Subset enumeration: `P_A` is associated iff `(I : m) = P_A` for some
    /// monomial `m` in the lcm box.
    fn brute_force_ass(i: &MonomialIdeal) -> Vec<MonomialPrime> {
        let n = i.nvars();
        let lcm = i.lcm_all();
        let mut box_monos = vec![Monomial::one(n)];
        for v in 0..n {
            let mut next = Vec::new();
            for b in &box_monos {
                for e in 0..=lcm.exps[v] {
                    let mut c = b.clone();
                    c.exps[v] = e;
                    next.push(c);
                }
            }
            box_monos = next;
        }
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let p = MonomialPrime::new((0..n).filter(|v| mask >> v & 1 == 1).collect());
            if box_monos.iter().any(|m| !i.contains(m) && i.colon(m).as_prime().as_ref() == Some(&p)) {
                out.push(p);
            }
        }
        out.sort();
        out
    }

    fn arb_ideal(max_vars: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
        (1..=max_vars).prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::vec(0..=max_exp, n), 1..=max_gens)
                .prop_map(move |gs| MonomialIdeal::new(n, gs.iter().map(|g| Monomial::from_exps(g))))
        })
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn ass_matches_subset_oracle(i in arb_ideal(5, 6, 4)) {
            prop_assume!(!i.is_unit());
            let ass = i.associated_primes().unwrap();
            prop_assert_eq!(ass.primes, brute_force_ass(&i));
        }

        #[test]
        fn colon_membership(i in arb_ideal(4, 5, 3), f in proptest::collection::vec(0u32..3, 4), u in proptest::collection::vec(0u32..4, 4)) {
            let n = i.nvars();
            let f = Monomial::from_exps(&f[..n]);
            let u = Monomial::from_exps(&u[..n]);
            prop_assert_eq!(i.colon(&f).contains(&u), i.contains(&u.mul(&f)));
        }

        #[test]
        fn power_is_additive(i in arb_ideal(3, 4, 3), a in 1u32..3, b in 1u32..3) {
            prop_assert_eq!(i.power(a + b), i.power(a).product(&i.power(b)));
        }

        #[test]
        fn witnesses_exist_for_every_prime(i in arb_ideal(4, 5, 3)) {
            prop_assume!(!i.is_unit());
            for p in i.associated_primes().unwrap().primes {
                let w = i.find_witness(&p).unwrap();
                prop_assert_eq!(i.colon(&w).as_prime(), Some(p));
            }
        }
    }
}
