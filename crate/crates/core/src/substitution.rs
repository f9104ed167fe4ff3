//! Invertible linear changes of coordinates inside one variable block.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ComputeError, Result};
use crate::field::{Coeff, FieldSpec, MIN_GENERIC_PRIME};
use crate::module::ModuleElement;
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// Largest absolute value of a random rational entry.
pub const RATIONAL_ENTRY_BOUND: i64 = 20;

/// `x_{l,j} -> sum_i matrix[i][j] x_{l,i}` on block `l`, identity elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub block: usize,
    pub seed: u64,
    pub matrix: Vec<Vec<Coeff>>,
    pub inverse: Vec<Vec<Coeff>>,
    images: Vec<Polynomial>,
    inverse_images: Vec<Polynomial>,
}

pub fn generic_coordinate_change(ring: &RingSpec, l: usize, seed: u64) -> Result<Substitution> {
    generic_coordinate_change_with(ring, l, seed, false)
}

/// As [`generic_coordinate_change`]; `allow_small_field` skips the check on
/// the size of a prime field.
pub fn generic_coordinate_change_with(
    ring: &RingSpec,
    l: usize,
    seed: u64,
    allow_small_field: bool,
) -> Result<Substitution> {
    if l >= ring.num_blocks() {
        return Err(ComputeError::BadBlock(l));
    }
    let field = ring.field();
    if let FieldSpec::PrimeField(p) = field {
        if p < MIN_GENERIC_PRIME && !allow_small_field {
            return Err(ComputeError::FieldTooSmall(p));
        }
    }
    let n = ring.block_size(l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let matrix: Vec<Vec<Coeff>> = (0..n).map(|_| (0..n).map(|_| random_entry(&mut rng, field)).collect()).collect();
        if let Some(inverse) = invert(&matrix, field) {
            return Ok(Substitution::from_matrices(ring, l, seed, matrix, inverse));
        }
    }
}

fn random_entry(rng: &mut ChaCha8Rng, field: FieldSpec) -> Coeff {
    match field {
        FieldSpec::Rationals => {
            let mut v = 0;
            while v == 0 {
                v = rng.gen_range(-RATIONAL_ENTRY_BOUND..=RATIONAL_ENTRY_BOUND);
            }
            field.from_i64(v)
        }
        FieldSpec::PrimeField(p) => field.from_i64(rng.gen_range(1..p as i64)),
    }
}

fn invert(m: &[Vec<Coeff>], field: FieldSpec) -> Option<Vec<Vec<Coeff>>> {
    let n = m.len();
    let mut a: Vec<Vec<Coeff>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv();
        a[col] = a[col].iter().map(|c| c * &inv).collect();
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn linear_images(ring: &RingSpec, l: usize, m: &[Vec<Coeff>]) -> Vec<Polynomial> {
    let field = ring.field();
    let vars: Vec<usize> = ring.block_vars(l).collect();
    (0..ring.num_vars())
        .map(|v| match vars.iter().position(|&w| w == v) {
            Some(j) => {
                Polynomial::from_terms(vars.iter().enumerate().map(|(i, &w)| (ring.var(w), m[i][j].clone())).collect())
            }
            None => Polynomial::monomial(ring.var(v), field),
        })
        .collect()
}

fn substitute(p: &Polynomial, images: &[Polynomial], field: FieldSpec, nvars: usize) -> Polynomial {
    let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::constant(field.one(), nvars)]; nvars];
    let mut acc = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(c.clone(), nvars);
        for (v, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[v].len() <= e as usize {
                let next = powers[v].last().unwrap().mul(&images[v]);
                powers[v].push(next);
            }
            t = t.mul(&powers[v][e as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

impl Substitution {
    fn from_matrices(
        ring: &RingSpec,
        block: usize,
        seed: u64,
        matrix: Vec<Vec<Coeff>>,
        inverse: Vec<Vec<Coeff>>,
    ) -> Self {
        let images = linear_images(ring, block, &matrix);
        let inverse_images = linear_images(ring, block, &inverse);
        Substitution { block, seed, matrix, inverse, images, inverse_images }
    }

    /// Image of each ring variable.
    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let (field, nvars) = match p.leading() {
            Some((m, c)) => (c.field(), m.nvars()),
            None => return Polynomial::zero(),
        };
        substitute(p, &self.images, field, nvars)
    }

    pub fn apply_inverse(&self, p: &Polynomial) -> Polynomial {
        let (field, nvars) = match p.leading() {
            Some((m, c)) => (c.field(), m.nvars()),
            None => return Polynomial::zero(),
        };
        substitute(p, &self.inverse_images, field, nvars)
    }

    pub fn apply_element(&self, e: &ModuleElement) -> ModuleElement {
        ModuleElement { components: e.components.iter().map(|p| self.apply(p)).collect() }
    }
}
