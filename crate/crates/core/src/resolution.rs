//! Minimal free resolutions, Betti tables and the resolution regularity.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{ComputeError, Result};
use crate::extint::ExtendedInt;
use crate::field::{Coeff, FieldSpec};
use crate::groebner::{buchberger, lead_degree, schreyer_syzygies};
use crate::linalg::{rank, SparseRow};
use crate::module::{FreeModuleSpec, ModuleElement, TermOrder, Vector};
use crate::poly::Polynomial;
use crate::presentation::PresentedModule;
use crate::ring::{monomials_of_degree, Monomial, MultiDegree, RingSpec};

/// A map of free modules. Column `j` is the image of source basis element
/// `j`; entry `(i, j)` has degree `source[j] - target[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: FreeModuleSpec,
    pub target: FreeModuleSpec,
    pub columns: Vec<ModuleElement>,
}

impl GradedMap {
    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.columns[col].components[row]
    }

    fn remove_column(&mut self, c: usize) {
        self.columns.remove(c);
        self.source.shifts.remove(c);
    }

    fn remove_row(&mut self, r: usize) {
        for col in &mut self.columns {
            col.components.remove(r);
        }
        self.target.shifts.remove(r);
    }
}

/// `F_p -> ... -> F_1 -> F_0`; `maps[i]` is `d_{i+1}: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: RingSpec,
    pub modules: Vec<FreeModuleSpec>,
    pub maps: Vec<GradedMap>,
    pub minimal: bool,
}

/// Degrees of the free modules of a minimal resolution (equivalently of
/// `Tor_i(M, k)`), each list sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<usize, Vec<MultiDegree>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Resolution,
    Koszul,
    Colon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub resreg: Vec<ExtendedInt>,
    /// `per_step[i][l]` is the largest `l`-th shift coordinate at step `i`
    /// minus `i`.
    pub per_step: Vec<Vec<i64>>,
    pub d: Vec<ExtendedInt>,
    pub beg: Vec<ExtendedInt>,
    pub field: FieldSpec,
    pub route: Route,
}

impl BettiTable {
    pub fn from_modules(modules: &[FreeModuleSpec]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, f) in modules.iter().enumerate() {
            if f.rank() > 0 {
                let mut s = f.shifts.clone();
                s.sort();
                entries.insert(i, s);
            }
        }
        BettiTable { entries }
    }

    pub fn insert(&mut self, i: usize, d: MultiDegree) {
        let v = self.entries.entry(i).or_default();
        let at = v.partition_point(|x| *x <= d);
        v.insert(at, d);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn length(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn regularity(&self, k: usize, field: FieldSpec, route: Route) -> RegularityReport {
        let mut per_step = Vec::new();
        let mut resreg = vec![ExtendedInt::NegInf; k];
        for (&i, shifts) in &self.entries {
            let row: Vec<i64> = (0..k).map(|l| shifts.iter().map(|s| s.coord(l)).max().unwrap() - i as i64).collect();
            for l in 0..k {
                resreg[l] = resreg[l].max(ExtendedInt::Finite(row[l]));
            }
            while per_step.len() < i {
                per_step.push(Vec::new());
            }
            per_step.push(row);
        }
        let gens = self.entries.get(&0);
        let coord = |l: usize| gens.into_iter().flatten().map(move |s| ExtendedInt::Finite(s.coord(l)));
        let d = (0..k).map(|l| coord(l).max().unwrap_or(ExtendedInt::NegInf)).collect();
        let beg = (0..k).map(|l| coord(l).min().unwrap_or(ExtendedInt::PosInf)).collect();
        RegularityReport { resreg, per_step, d, beg, field, route }
    }

    /// Fixed-width rendering, one column per homological degree, entries
    /// written as `S(-a,-b)^m`.
    pub fn render_text(&self) -> String {
        let cols: Vec<(usize, Vec<String>)> = self
            .entries
            .iter()
            .map(|(&i, shifts)| {
                let mut cells: Vec<String> = Vec::new();
                let mut j = 0;
                while j < shifts.len() {
                    let mut m = 1;
                    while j + m < shifts.len() && shifts[j + m] == shifts[j] {
                        m += 1;
                    }
                    let neg: Vec<String> = shifts[j].0.iter().map(|c| (-c).to_string()).collect();
                    let mut cell = format!("S({})", neg.join(","));
                    if m > 1 {
                        write!(cell, "^{m}").unwrap();
                    }
                    cells.push(cell);
                    j += m;
                }
                (i, cells)
            })
            .collect();
        if cols.is_empty() {
            return "0\n".to_string();
        }
        let widths: Vec<usize> = cols
            .iter()
            .map(|(i, cells)| cells.iter().map(|c| c.len()).max().unwrap().max(i.to_string().len()))
            .collect();
        let height = cols.iter().map(|(_, c)| c.len()).max().unwrap();
        let mut out = String::new();
        let header: Vec<String> = cols.iter().zip(&widths).map(|((i, _), w)| format!("{:<w$}", i, w = *w)).collect();
        out.push_str(header.join("  ").trim_end());
        out.push('\n');
        for r in 0..height {
            let line: Vec<String> = cols
                .iter()
                .zip(&widths)
                .map(|((_, cells), w)| format!("{:<w$}", cells.get(r).map_or("", |s| s.as_str()), w = *w))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            i: usize,
            shifts: &'a [MultiDegree],
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (i, shifts) in &self.entries {
            seq.serialize_element(&Entry { i: *i, shifts })?;
        }
        seq.end()
    }
}

/// A minimal free resolution of `m`.
pub fn resolve(m: &PresentedModule) -> Result<Resolution> {
    let mut res = schreyer_resolution(m)?;
    minimize(&mut res);
    res.check_length()?;
    Ok(res)
}

/// The (usually non-minimal) resolution built from iterated Schreyer
/// syzygies.
pub fn schreyer_resolution(m: &PresentedModule) -> Result<Resolution> {
    let ring = &m.ring;
    let nvars = ring.num_vars();
    let f0 = m.free.clone();
    let mut order = TermOrder::position_over_term(f0.rank(), nvars);
    let gb = buchberger(&m.relations, &f0, &order, nvars);
    let mut current: Vec<Vector> = gb.vectors().to_vec();
    let mut modules = vec![f0];
    let mut maps = Vec::new();
    let cap = nvars + 2;
    let mut t = 0;
    while !current.is_empty() {
        if t >= cap {
            return Err(ComputeError::Internal(format!("resolution longer than {cap} steps")));
        }
        // Sorting by the exponent of one variable removes it from every
        // later leading term, so the iteration stops after nvars steps.
        if t < nvars {
            let v = nvars - 1 - t;
            current.sort_by(|a, b| b.lead().unwrap().1.exps[v].cmp(&a.lead().unwrap().1.exps[v]));
        }
        let target = modules.last().unwrap().clone();
        let source = FreeModuleSpec::new(current.iter().map(|g| lead_degree(g, &target, ring)).collect());
        let columns = current.iter().map(|g| g.to_element(target.rank())).collect();
        let (syz, next_order) = schreyer_syzygies(&current, &order, nvars);
        maps.push(GradedMap { source: source.clone(), target, columns });
        modules.push(source);
        order = next_order;
        current = syz;
        t += 1;
    }
    Ok(Resolution { ring: ring.clone(), modules, maps, minimal: false })
}

fn find_unit_entry(map: &GradedMap) -> Option<(usize, usize)> {
    for r in 0..map.target.rank() {
        for c in 0..map.source.rank() {
            if map.entry(r, c).is_constant() {
                return Some((r, c));
            }
        }
    }
    None
}

/// Splits off trivial summands `0 -> S e -> S f -> 0` until no map has a
/// unit entry.
fn minimize(res: &mut Resolution) {
    let p = res.maps.len();
    for i in 0..p {
        while let Some((r, c)) = find_unit_entry(&res.maps[i]) {
            let map = &mut res.maps[i];
            let pivot = map.columns[c].clone();
            let u_inv = pivot.components[r].terms()[0].1.inv();
            for (cc, col) in map.columns.iter_mut().enumerate() {
                if cc == c || col.components[r].is_zero() {
                    continue;
                }
                let factor = col.components[r].scale(&u_inv);
                *col = col.sub(&pivot.mul_poly(&factor));
            }
            map.remove_column(c);
            map.remove_row(r);
            if i + 1 < p {
                res.maps[i + 1].remove_row(c);
            }
            if i > 0 {
                res.maps[i - 1].remove_column(r);
            }
            res.modules[i + 1].shifts.remove(c);
            res.modules[i].shifts.remove(r);
        }
    }
    while res.modules.len() > 1 && res.modules.last().unwrap().rank() == 0 {
        res.modules.pop();
        res.maps.pop();
    }
    res.minimal = true;
}

/// Monomials of the given multidegree.
pub fn monomials_of_multidegree(ring: &RingSpec, d: &MultiDegree) -> Vec<Monomial> {
    let n = ring.num_vars();
    let mut out = vec![Monomial::one(n)];
    for l in 0..ring.num_blocks() {
        if d.coord(l) < 0 {
            return Vec::new();
        }
        let vars: Vec<usize> = ring.block_vars(l).collect();
        let part = monomials_of_degree(n, &vars, d.coord(l) as u32);
        out = out.iter().flat_map(|a| part.iter().map(move |b| a.mul(b))).collect();
    }
    out
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    fn check_length(&self) -> Result<()> {
        if self.minimal && self.length() > self.ring.num_vars() {
            return Err(ComputeError::Internal(format!(
                "minimal resolution of length {} over {} variables",
                self.length(),
                self.ring.num_vars()
            )));
        }
        Ok(())
    }

    /// Consecutive maps compose to zero.
    pub fn composites_vanish(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            upper.columns.iter().all(|col| {
                let mut acc = ModuleElement::zero(lower.target.rank());
                for (j, f) in col.components.iter().enumerate() {
                    if !f.is_zero() {
                        acc = acc.add(&lower.columns[j].mul_poly(f));
                    }
                }
                acc.is_zero()
            })
        })
    }

    /// No entry has a nonzero constant term.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps.iter().all(|m| m.columns.iter().all(|c| c.components.iter().all(|p| p.constant_term().is_none())))
    }

    pub fn within_length_cap(&self) -> bool {
        self.length() <= self.ring.num_vars()
    }

    /// Checks `rank(d_i) + rank(d_{i+1}) = dim (F_i)_deg` for every `i >= 1`,
    /// i.e. exactness of the complex in degree `deg` away from `F_0`.
    pub fn exact_in_degree(&self, deg: &MultiDegree) -> bool {
        let bases: Vec<Vec<(usize, Monomial)>> = self
            .modules
            .iter()
            .map(|f| {
                f.shifts
                    .iter()
                    .enumerate()
                    .flat_map(|(j, s)| {
                        monomials_of_multidegree(&self.ring, &(deg - s)).into_iter().map(move |m| (j, m))
                    })
                    .collect()
            })
            .collect();
        let ranks: Vec<usize> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, map)| {
                let target = &bases[i];
                let rows: Vec<SparseRow> =
                    bases[i + 1].iter().map(|(j, m)| image_row(&map.columns[*j], m, target)).collect();
                rank(rows, target.len())
            })
            .collect();
        (1..self.modules.len()).all(|i| {
            let below = ranks[i - 1];
            let above = ranks.get(i).copied().unwrap_or(0);
            below + above == bases[i].len()
        })
    }
}

fn image_row(col: &ModuleElement, m: &Monomial, target: &[(usize, Monomial)]) -> SparseRow {
    let mut row: Vec<(usize, Coeff)> = Vec::new();
    for (r, p) in col.components.iter().enumerate() {
        for (t, c) in p.terms() {
            let mono = t.mul(m);
            let idx = target.iter().position(|(rr, mm)| *rr == r && *mm == mono).expect("term in graded piece");
            row.push((idx, c.clone()));
        }
    }
    row.sort_by_key(|x| x.0);
    row
}

/// The resolution regularity read off a minimal resolution.
pub fn res_reg(r: &Resolution) -> Result<RegularityReport> {
    if !r.minimal {
        return Err(ComputeError::NonMinimal);
    }
    Ok(r.betti().regularity(r.ring.num_blocks(), r.ring.field(), Route::Resolution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn polys(r: &RingSpec, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    fn md(v: &[i64]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn free_module_has_trivial_resolution() {
        let r = RingSpec::from_names(&[&["x"], &["y"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::free_module(&r, vec![md(&[0, 0])]);
        let res = resolve(&m).unwrap();
        assert_eq!(res.length(), 0);
        let rep = res_reg(&res).unwrap();
        assert_eq!(rep.resreg, vec![ExtendedInt::Finite(0); 2]);
    }

    #[test]
    fn koszul_complex_on_two_variables() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::quotient(&r, &polys(&r, &["x", "y"])).unwrap();
        let res = resolve(&m).unwrap();
        let b = res.betti();
        assert_eq!(b.entries[&0], vec![md(&[0])]);
        assert_eq!(b.entries[&1], vec![md(&[1]), md(&[1])]);
        assert_eq!(b.entries[&2], vec![md(&[2])]);
        assert!(res.composites_vanish() && res.has_no_unit_entries());
    }

    #[test]
    fn non_minimal_input_is_refused() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let m = PresentedModule::quotient(&r, &polys(&r, &["x", "y"])).unwrap();
        let raw = schreyer_resolution(&m).unwrap();
        assert_eq!(res_reg(&raw), Err(ComputeError::NonMinimal));
    }

    #[test]
    fn minimization_splits_off_units() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        // the generator x is redundant next to 1
        let m = PresentedModule::ideal_as_module(&r, &polys(&r, &["x", "1"])).unwrap();
        let res = resolve(&m).unwrap();
        assert_eq!(res.betti().entries.len(), 1);
        assert_eq!(res.betti().entries[&0], vec![md(&[0])]);
    }

    #[test]
    fn text_rendering() {
        let mut b = BettiTable::default();
        b.insert(0, md(&[0, 0]));
        b.insert(1, md(&[1, 2]));
        b.insert(1, md(&[1, 2]));
        assert_eq!(b.render_text(), "0       1\nS(0,0)  S(-1,-2)^2\n");
    }
}
