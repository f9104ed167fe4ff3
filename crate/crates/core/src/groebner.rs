//! Buchberger's algorithm for submodules of shifted free modules, normal
//! forms, Schreyer syzygies, kernels and colon submodules.

use std::collections::BTreeSet;

use crate::error::{AlgebraError, ComputeError, Result};
use crate::field::FieldSpec;
use crate::module::{FreeModuleSpec, ModuleElement, Term, TermOrder, Vector};
use crate::poly::Polynomial;
use crate::ring::{Monomial, MultiDegree, RingSpec};

/// A reduced Gröbner basis: monic elements sorted by increasing leading
/// term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    free: FreeModuleSpec,
    order: TermOrder,
    nvars: usize,
    elems: Vec<Vector>,
}

pub fn buchberger(gens: &[ModuleElement], free: &FreeModuleSpec, order: &TermOrder, nvars: usize) -> GroebnerBasis {
    let vecs = gens.iter().map(|g| Vector::from_element(g, order)).collect();
    GroebnerBasis::from_vectors(vecs, free, order, nvars)
}

pub fn normal_form(v: &ModuleElement, gb: &GroebnerBasis) -> ModuleElement {
    gb.normal_form(v)
}

/// Schreyer syzygies of the basis elements, in the order they are stored.
pub fn syzygies(gb: &GroebnerBasis, ring: &RingSpec) -> (Vec<ModuleElement>, FreeModuleSpec) {
    let shifts = gb.elems.iter().map(|v| lead_degree(v, &gb.free, ring)).collect();
    let (syz, _) = schreyer_syzygies(&gb.elems, &gb.order, gb.nvars);
    let free = FreeModuleSpec::new(shifts);
    let rank = free.rank();
    (syz.iter().map(|s| s.to_element(rank)).collect(), free)
}

pub(crate) fn lead_degree(v: &Vector, free: &FreeModuleSpec, ring: &RingSpec) -> MultiDegree {
    let (c, m, _) = v.lead().expect("nonzero basis element");
    &m.multidegree(ring) + &free.shifts[*c]
}

impl GroebnerBasis {
    pub(crate) fn from_vectors(gens: Vec<Vector>, free: &FreeModuleSpec, order: &TermOrder, nvars: usize) -> Self {
        let weights: Vec<i64> = free.shifts.iter().map(|s| s.total()).collect();
        let elems = run_buchberger(gens, order, &weights, free.rank());
        GroebnerBasis { free: free.clone(), order: order.clone(), nvars, elems }
    }

    pub fn free(&self) -> &FreeModuleSpec {
        &self.free
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.elems.iter().map(|v| v.to_element(self.free.rank())).collect()
    }

    pub(crate) fn vectors(&self) -> &[Vector] {
        &self.elems
    }

    /// Leading terms as `(position, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|v| {
                let (c, m, _) = v.lead().unwrap();
                (*c, m.clone())
            })
            .collect()
    }

    pub fn normal_form(&self, v: &ModuleElement) -> ModuleElement {
        let vec = Vector::from_element(v, &self.order);
        reduce(vec, &self.elems, &self.order, None).to_element(self.free.rank())
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        let vec = Vector::from_element(v, &self.order);
        reduce(vec, &self.elems, &self.order, None).is_zero()
    }

    /// The submodule contains the whole free module.
    pub fn is_everything(&self) -> bool {
        let mut hit = vec![false; self.free.rank()];
        for v in &self.elems {
            let (c, m, _) = v.lead().unwrap();
            if m.is_one() {
                hit[*c] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

struct Pair {
    i: usize,
    j: usize,
}

fn run_buchberger(gens: Vec<Vector>, order: &TermOrder, weights: &[i64], rank: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    // pending pairs keyed by (degree of the lcm, i, j)
    let mut queue: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for g in gens {
        let r = reduce(g, &basis, order, None);
        if !r.is_zero() {
            insert(r.monic(), &mut basis, &mut queue, &mut pending, weights, rank);
        }
    }
    while let Some((_, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        if chain_skippable(Pair { i, j }, &basis, &pending) {
            continue;
        }
        let s = s_vector(&basis[i], &basis[j], order);
        let r = reduce(s, &basis, order, None);
        if !r.is_zero() {
            insert(r.monic(), &mut basis, &mut queue, &mut pending, weights, rank);
        }
    }
    reduce_basis(basis, order)
}

fn insert(
    v: Vector,
    basis: &mut Vec<Vector>,
    queue: &mut BTreeSet<(i64, usize, usize)>,
    pending: &mut BTreeSet<(usize, usize)>,
    weights: &[i64],
    rank: usize,
) {
    let t = basis.len();
    let (c, m, _) = v.lead().unwrap().clone();
    for (i, g) in basis.iter().enumerate() {
        let (ci, mi, _) = g.lead().unwrap();
        if *ci != c {
            continue;
        }
        // the coprime criterion only holds for ideals
        if rank == 1 && mi.is_coprime(&m) {
            continue;
        }
        let deg = mi.lcm(&m).total_degree() as i64 + weights[c];
        queue.insert((deg, i, t));
        pending.insert((i, t));
    }
    basis.push(v);
}

fn chain_skippable(p: Pair, basis: &[Vector], pending: &BTreeSet<(usize, usize)>) -> bool {
    let (ci, mi, _) = basis[p.i].lead().unwrap();
    let (_, mj, _) = basis[p.j].lead().unwrap();
    let l = mi.lcm(mj);
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    basis.iter().enumerate().any(|(k, g)| {
        if k == p.i || k == p.j {
            return false;
        }
        let (ck, mk, _) = g.lead().unwrap();
        ck == ci && mk.divides(&l) && !pending.contains(&key(p.i, k)) && !pending.contains(&key(p.j, k))
    })
}

fn s_vector(a: &Vector, b: &Vector, order: &TermOrder) -> Vector {
    let (_, ma, _) = a.lead().unwrap();
    let (_, mb, _) = b.lead().unwrap();
    let l = ma.lcm(mb);
    let field = a.lead().unwrap().2.field();
    let left = a.mul_term(&ma.quotient_of(&l), &field.one());
    left.add_scaled(&(-&field.one()), &mb.quotient_of(&l), b, order)
}

fn find_reducer(c: usize, m: &Monomial, basis: &[Vector]) -> Option<usize> {
    basis.iter().position(|g| {
        let (cg, mg, _) = g.lead().unwrap();
        *cg == c && mg.divides(m)
    })
}

/// Full reduction by a list of monic elements. With `quotients`, records
/// each step `(index, monomial, coefficient)` so that
/// `v = sum coeff*mono*basis[index] + remainder`.
pub(crate) fn reduce(v: Vector, basis: &[Vector], order: &TermOrder, mut quotients: Option<&mut Vec<Term>>) -> Vector {
    let mut p = v;
    let mut rem: Vec<Term> = Vec::new();
    while let Some((c, m, k)) = p.terms.first().cloned() {
        match find_reducer(c, &m, basis) {
            Some(gi) => {
                let g = &basis[gi];
                let q = g.lead().unwrap().1.quotient_of(&m);
                p = p.add_scaled(&(-&k), &q, g, order);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs.push((gi, q, k));
                }
            }
            // irreducible terms leave in decreasing order
            None => rem.push(p.terms.remove(0)),
        }
    }
    Vector { terms: rem }
}

/// Minimal, fully interreduced, monic, sorted by increasing leading term.
fn reduce_basis(basis: Vec<Vector>, order: &TermOrder) -> Vec<Vector> {
    let mut minimal: Vec<Vector> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (c, m, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let (ch, mh, _) = h.lead().unwrap();
            ch == c && mh.divides(m) && (mh != m || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Vector> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let g = &minimal[i];
        let head = Vector { terms: vec![g.terms[0].clone()] };
        let tail = Vector { terms: g.terms[1..].to_vec() };
        let others: Vec<Vector> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let r = reduce(tail, &others, order, None);
        let mut terms = head.terms;
        terms.extend(r.terms);
        out.push(Vector { terms });
    }
    out.sort_by(|a, b| {
        let (ca, ma, _) = a.lead().unwrap();
        let (cb, mb, _) = b.lead().unwrap();
        order.cmp(*ca, ma, *cb, mb)
    });
    out
}

/// Schreyer syzygies of `gb` (a Gröbner basis with monic leading terms),
/// as vectors over the free module whose basis element `a` maps to
/// `gb[a]`, together with the induced order on that module.
pub(crate) fn schreyer_syzygies(gb: &[Vector], order: &TermOrder, _nvars: usize) -> (Vec<Vector>, TermOrder) {
    let leads: Vec<(usize, Monomial)> = gb
        .iter()
        .map(|v| {
            let (c, m, _) = v.lead().unwrap();
            (*c, m.clone())
        })
        .collect();
    let new_order = order.schreyer(&leads);
    let mut out = Vec::new();
    for i in 0..gb.len() {
        let (ci, mi) = &leads[i];
        // candidate leads (lcm/m_i) e_i, keeping only the minimal ones
        let mut cands: Vec<(Monomial, usize)> = Vec::new();
        for (j, (cj, mj)) in leads.iter().enumerate().skip(i + 1) {
            if cj == ci {
                cands.push((mi.quotient_of(&mi.lcm(mj)), j));
            }
        }
        let kept: Vec<(Monomial, usize)> = cands
            .iter()
            .enumerate()
            .filter(|(a, (u, _))| !cands.iter().enumerate().any(|(b, (w, _))| w.divides(u) && (w != u || b < *a)))
            .map(|(_, x)| x.clone())
            .collect();
        for (u, j) in kept {
            let field = gb[i].lead().unwrap().2.field();
            let one = field.one();
            let mj = &leads[j].1;
            let l = mi.lcm(mj);
            let s = s_vector(&gb[i], &gb[j], order);
            let mut qs = Vec::new();
            let r = reduce(s, gb, order, Some(&mut qs));
            assert!(r.is_zero(), "S-vector of a Gröbner basis has nonzero remainder");
            let mut terms: Vec<Term> = vec![(i, u, one.clone()), (j, mj.quotient_of(&l), -&one)];
            terms.extend(qs.into_iter().map(|(k, q, c)| (k, q, -&c)));
            let syz = Vector::from_terms(terms, &new_order);
            debug_assert_eq!(syz.lead().map(|t| t.0), Some(i));
            out.push(syz);
        }
    }
    (out, new_order)
}

/// A submodule of a free module, stored with its generators and a reduced
/// Gröbner basis in position-over-term order.
#[derive(Clone, Debug)]
pub struct Submodule {
    gens: Vec<ModuleElement>,
    gb: GroebnerBasis,
}

impl Submodule {
    pub fn new(gens: Vec<ModuleElement>, free: &FreeModuleSpec, nvars: usize) -> Self {
        let order = TermOrder::position_over_term(free.rank(), nvars);
        let gens: Vec<ModuleElement> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = buchberger(&gens, free, &order, nvars);
        Submodule { gens, gb }
    }

    pub fn gens(&self) -> &[ModuleElement] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn free(&self) -> &FreeModuleSpec {
        self.gb.free()
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.gb.contains(v)
    }

    pub fn contains_all(&self, vs: &[ModuleElement]) -> bool {
        vs.iter().all(|v| self.contains(v))
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        self.contains_all(&other.gens)
    }

    /// Same submodule: the reduced bases coincide.
    pub fn same_as(&self, other: &Submodule) -> bool {
        self.gb.vectors() == other.gb.vectors()
    }

    pub fn sum(&self, other: &Submodule, nvars: usize) -> Submodule {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Submodule::new(gens, self.free(), nvars)
    }
}

/// Generators of the kernel of `source -> target/U`, where basis element
/// `j` of `source` maps to `images[j]` and `U` is generated by `denom`.
///
/// Computed as the part of a position-over-term basis of
/// `{(images[j], e_j)} + {(u, 0)}` in `target + source` that lies in the
/// second summand.
pub fn kernel_mod(
    target: &FreeModuleSpec,
    images: &[ModuleElement],
    source: &FreeModuleSpec,
    denom: &[ModuleElement],
    field: FieldSpec,
    nvars: usize,
) -> Vec<ModuleElement> {
    let t = target.rank();
    let r = source.rank();
    let ambient = target.direct_sum(source);
    let mut gens = Vec::with_capacity(r + denom.len());
    for (j, a) in images.iter().enumerate() {
        let mut g = a.embed(t + r, 0);
        g.components[t + j] = Polynomial::constant(field.one(), nvars);
        gens.push(g);
    }
    for u in denom {
        gens.push(u.embed(t + r, 0));
    }
    let order = TermOrder::position_over_term(t + r, nvars);
    let gb = buchberger(&gens, &ambient, &order, nvars);
    gb.vectors()
        .iter()
        .filter(|v| v.lead().unwrap().0 >= t)
        .map(|v| {
            let full = v.to_element(t + r);
            ModuleElement { components: full.components[t..].to_vec() }
        })
        .collect()
}

/// `(U :_F f)` for a homogeneous polynomial `f`.
pub fn colon_element(
    free: &FreeModuleSpec,
    u: &[ModuleElement],
    f: &Polynomial,
    ring: &RingSpec,
) -> Result<Vec<ModuleElement>> {
    let df =
        f.degree(ring).ok_or_else(|| ComputeError::Algebra(AlgebraError::NotHomogeneous("colon element".into())))?;
    let field = ring.field();
    let n = ring.num_vars();
    let rank = free.rank();
    let images: Vec<ModuleElement> = (0..rank).map(|j| ModuleElement::basis(rank, j, field, n).mul_poly(f)).collect();
    let target = free.twisted(&df);
    Ok(kernel_mod(&target, &images, free, u, field, n))
}

/// `(U :_F (x_l))`, the elements sent into `U` by every variable of block `l`.
pub fn colon_block(free: &FreeModuleSpec, u: &[ModuleElement], ring: &RingSpec, l: usize) -> Vec<ModuleElement> {
    let field = ring.field();
    let n = ring.num_vars();
    let rank = free.rank();
    let vars: Vec<usize> = ring.block_vars(l).collect();
    let copies = vars.len();
    let el = MultiDegree::unit(ring.num_blocks(), l);
    let slot = free.twisted(&el);
    let mut target = FreeModuleSpec::new(Vec::new());
    for _ in 0..copies {
        target = target.direct_sum(&slot);
    }
    let total = rank * copies;
    let images: Vec<ModuleElement> = (0..rank)
        .map(|j| {
            let mut e = ModuleElement::zero(total);
            for (s, &v) in vars.iter().enumerate() {
                e.components[s * rank + j] = Polynomial::monomial(ring.var(v), field);
            }
            e
        })
        .collect();
    let denom: Vec<ModuleElement> = (0..copies).flat_map(|s| u.iter().map(move |g| g.embed(total, s * rank))).collect();
    kernel_mod(&target, &images, free, &denom, field, n)
}

/// Helper for ideals: reduced Gröbner basis of polynomials in the ring.
pub fn ideal_basis(polys: &[Polynomial], ring: &RingSpec) -> GroebnerBasis {
    let free = FreeModuleSpec::ring(ring.num_blocks());
    let order = TermOrder::position_over_term(1, ring.num_vars());
    let gens: Vec<ModuleElement> = polys.iter().map(|p| ModuleElement::from_polynomial(p.clone())).collect();
    buchberger(&gens, &free, &order, ring.num_vars())
}
