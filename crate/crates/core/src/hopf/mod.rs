//! Finite-dimensional Hopf algebras over Q(ζ_l), stored as sparse structure
//! tensors on a fixed basis.

mod axioms;
mod double;
mod drinfeld;
mod element;
mod integrals;
mod json;
pub mod linalg;
mod ribbon;
pub(crate) mod tensor;
#[cfg(test)]
mod tests;

use std::sync::atomic::{AtomicU64, Ordering};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalars::{check_order, CyclotomicScalar};

pub use axioms::{verify_axioms, verify_axioms_with, AxiomOptions, AxiomReport, CheckResult};
pub use double::{
    cyclic_group_algebra, drinfeld_double, grouplike_elements, grouplike_functionals,
    ribbon_criterion, RibbonCriterion,
};
pub use drinfeld::{drinfeld_map, factorizability_rank};
pub use element::{AlgebraElement, Functional};
pub use integrals::{normalize_integral_data, solve_integral_data, IntegralData, Normalization};
pub use json::{load_structure, structure_from_json, structure_to_json, StructureFile};
pub use ribbon::{ribbon_derived_data, DecoratedForms, RibbonHopfData};
pub use tensor::{Key, TensorElement};

pub type Scalar = CyclotomicScalar;

/// A sparse linear combination of basis indices, sorted, without zeros.
pub(crate) type Terms = Vec<(u32, Scalar)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisId(pub u32);

/// Identity of one constructed algebra; elements remember which algebra
/// they live in so mixing them is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraId(u64);

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

impl AlgebraId {
    fn fresh() -> Self {
        AlgebraId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// Merges scalar contributions per index.
#[derive(Default)]
pub(crate) struct Accumulator {
    map: FxHashMap<u32, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, k: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.entry(k) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += &c;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn finish(self) -> Terms {
        let mut v: Terms = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|t| t.0);
        v
    }
}

#[derive(Clone)]
pub struct HopfStructure {
    id: AlgebraId,
    order: u32,
    dim: usize,
    labels: Vec<String>,
    /// mult[i * dim + j] = b_i b_j
    mult: Vec<Terms>,
    unit: Terms,
    counit: Vec<Scalar>,
    /// coproduct[i] = Δ(b_i) as (j, k, c)
    coproduct: Vec<Vec<(u32, u32, Scalar)>>,
    /// antipode[i] = S(b_i)
    antipode: Vec<Terms>,
    antipode_inv: Vec<Terms>,
    /// Optional algebra generators; lets axiom checks reduce to generators.
    generators: Vec<Terms>,
}

/// Raw structure constants, as read from a file or produced by a builder.
pub struct StructureData {
    pub order: u32,
    pub labels: Vec<String>,
    pub mult: Vec<Vec<(u32, Scalar)>>,
    pub unit: Vec<(u32, Scalar)>,
    pub counit: Vec<Scalar>,
    pub coproduct: Vec<Vec<(u32, u32, Scalar)>>,
    pub antipode: Vec<Vec<(u32, Scalar)>>,
}

fn normalize_terms(t: Vec<(u32, Scalar)>) -> Terms {
    let mut acc = Accumulator::new();
    for (k, c) in t {
        acc.add(k, c);
    }
    acc.finish()
}

impl HopfStructure {
    /// Validates ranges and scalar orders and inverts the antipode. The Hopf
    /// axioms themselves are only checked by `verify_axioms`.
    pub fn new(data: StructureData) -> Result<Self> {
        Self::build(data, None)
    }

    /// Like `new`, with a known inverse antipode; it is checked against S.
    pub fn with_antipode_inverse(
        data: StructureData,
        inv: Vec<Vec<(u32, Scalar)>>,
    ) -> Result<Self> {
        Self::build(data, Some(inv))
    }

    fn build(data: StructureData, inv: Option<Vec<Vec<(u32, Scalar)>>>) -> Result<Self> {
        check_order(data.order)?;
        let dim = data.labels.len();
        if dim == 0 {
            return Err(Error::Structural("dimension must be positive".into()));
        }
        let order = data.order;
        let check_idx = |i: u32| -> Result<()> {
            if (i as usize) < dim {
                Ok(())
            } else {
                Err(Error::InvalidBasis {
                    index: i as usize,
                    dim,
                })
            }
        };
        let check_sc = |c: &Scalar| -> Result<()> {
            if c.order() == order {
                Ok(())
            } else {
                Err(crate::scalars::ScalarError::OrderMismatch(order, c.order()).into())
            }
        };
        let lin = |v: Vec<(u32, Scalar)>| -> Result<Terms> {
            for (i, c) in &v {
                check_idx(*i)?;
                check_sc(c)?;
            }
            Ok(normalize_terms(v))
        };
        if data.mult.len() != dim * dim {
            return Err(Error::Structural(format!(
                "mult table has {} entries, expected {}",
                data.mult.len(),
                dim * dim
            )));
        }
        if data.counit.len() != dim || data.coproduct.len() != dim || data.antipode.len() != dim {
            return Err(Error::Structural(
                "counit, coproduct and antipode need one entry per basis element".into(),
            ));
        }
        let mult = data.mult.into_iter().map(lin).collect::<Result<Vec<_>>>()?;
        let unit = lin(data.unit)?;
        for c in &data.counit {
            check_sc(c)?;
        }
        let mut coproduct = Vec::with_capacity(dim);
        for v in data.coproduct {
            let mut m: FxHashMap<(u32, u32), Scalar> = FxHashMap::default();
            for (i, j, c) in v {
                check_idx(i)?;
                check_idx(j)?;
                check_sc(&c)?;
                let e = m.entry((i, j)).or_insert_with(|| Scalar::zero(order));
                *e += &c;
            }
            let mut t: Vec<(u32, u32, Scalar)> = m
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, j), c)| (i, j, c))
                .collect();
            t.sort_unstable_by_key(|x| (x.0, x.1));
            coproduct.push(t);
        }
        let antipode = data
            .antipode
            .into_iter()
            .map(lin)
            .collect::<Result<Vec<_>>>()?;
        let mut h = HopfStructure {
            id: AlgebraId::fresh(),
            order,
            dim,
            labels: data.labels,
            mult,
            unit,
            counit: data.counit,
            coproduct,
            antipode,
            antipode_inv: Vec::new(),
            generators: Vec::new(),
        };
        h.antipode_inv = match inv {
            Some(inv) => {
                if inv.len() != dim {
                    return Err(Error::Structural(
                        "inverse antipode has wrong length".into(),
                    ));
                }
                let inv = inv.into_iter().map(lin).collect::<Result<Vec<_>>>()?;
                h.antipode_inv = inv.clone();
                for i in 0..dim {
                    let b = h.basis(i);
                    if h.apply_linear(&h.antipode, &h.apply_linear(&inv, &b)) != b {
                        return Err(Error::Structural(
                            "supplied inverse antipode does not invert S".into(),
                        ));
                    }
                }
                inv
            }
            None => {
                let cols: Vec<Terms> = h.antipode.clone();
                linalg::invert_columns(order, dim, &cols)
                    .ok_or_else(|| Error::Structural("antipode is not invertible".into()))?
            }
        };
        Ok(h)
    }

    pub fn set_generators(&mut self, gens: &[AlgebraElement]) -> Result<()> {
        for g in gens {
            self.check(g)?;
        }
        self.generators = gens.iter().map(|g| g.terms.clone()).collect();
        Ok(())
    }

    pub fn generators(&self) -> Vec<AlgebraElement> {
        self.generators
            .iter()
            .map(|t| self.from_terms(t.clone()))
            .collect()
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|s| s == label)
    }

    pub(crate) fn zero_scalar(&self) -> Scalar {
        Scalar::zero(self.order)
    }

    pub(crate) fn one_scalar(&self) -> Scalar {
        Scalar::one(self.order)
    }

    pub(crate) fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.alg == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub(crate) fn from_terms(&self, terms: Terms) -> AlgebraElement {
        AlgebraElement {
            alg: self.id,
            order: self.order,
            terms,
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.from_terms(Vec::new())
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_terms(self.unit.clone())
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        assert!(i < self.dim, "basis index out of range");
        self.from_terms(vec![(i as u32, self.one_scalar())])
    }

    pub fn basis_checked(&self, i: usize) -> Result<AlgebraElement> {
        if i < self.dim {
            Ok(self.basis(i))
        } else {
            Err(Error::InvalidBasis {
                index: i,
                dim: self.dim,
            })
        }
    }

    pub fn element(&self, terms: &[(usize, Scalar)]) -> Result<AlgebraElement> {
        let mut acc = Accumulator::new();
        for (i, c) in terms {
            if *i >= self.dim {
                return Err(Error::InvalidBasis {
                    index: *i,
                    dim: self.dim,
                });
            }
            if c.order() != self.order {
                return Err(
                    crate::scalars::ScalarError::OrderMismatch(self.order, c.order()).into(),
                );
            }
            acc.add(*i as u32, c.clone());
        }
        Ok(self.from_terms(acc.finish()))
    }

    pub fn scalar_element(&self, c: &Scalar) -> AlgebraElement {
        self.one().scale(c)
    }

    #[inline]
    pub(crate) fn mul_basis(&self, i: u32, j: u32) -> &[(u32, Scalar)] {
        &self.mult[i as usize * self.dim + j as usize]
    }

    pub(crate) fn coproduct_basis(&self, i: u32) -> &[(u32, u32, Scalar)] {
        &self.coproduct[i as usize]
    }

    pub(crate) fn antipode_basis(&self, i: u32) -> &[(u32, Scalar)] {
        &self.antipode[i as usize]
    }

    pub(crate) fn antipode_inv_basis(&self, i: u32) -> &[(u32, Scalar)] {
        &self.antipode_inv[i as usize]
    }

    pub(crate) fn counit_basis(&self, i: u32) -> &Scalar {
        &self.counit[i as usize]
    }

    pub(crate) fn unit_terms(&self) -> &[(u32, Scalar)] {
        &self.unit
    }

    pub(crate) fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.from_terms(self.mul_terms(&x.terms, &y.terms))
    }

    pub(crate) fn mul_terms(&self, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> Terms {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.mul_basis(*i, *j) {
                    acc.add(*k, &ab * c);
                }
            }
        }
        acc.finish()
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn product(&self, xs: &[&AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = self.one();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn power(&self, x: &AlgebraElement, n: u32) -> Result<AlgebraElement> {
        self.check(x)?;
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        Ok(acc)
    }

    pub(crate) fn apply_linear(&self, cols: &[Terms], x: &AlgebraElement) -> AlgebraElement {
        let mut acc = Accumulator::new();
        for (i, a) in &x.terms {
            for (k, c) in &cols[*i as usize] {
                acc.add(*k, a * c);
            }
        }
        self.from_terms(acc.finish())
    }

    pub(crate) fn s(&self, x: &AlgebraElement) -> AlgebraElement {
        self.apply_linear(&self.antipode, x)
    }

    pub(crate) fn s_inv(&self, x: &AlgebraElement) -> AlgebraElement {
        self.apply_linear(&self.antipode_inv, x)
    }

    pub(crate) fn s_pow(&self, x: &AlgebraElement, k: i64) -> AlgebraElement {
        let mut y = x.clone();
        for _ in 0..k.unsigned_abs() {
            y = if k > 0 { self.s(&y) } else { self.s_inv(&y) };
        }
        y
    }

    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(self.s(x))
    }

    pub fn antipode_power(&self, x: &AlgebraElement, k: i64) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(self.s_pow(x, k))
    }

    /// Columns of S^k, i.e. S^k(b_i) for every basis element.
    pub(crate) fn antipode_power_table(&self, k: i64) -> Vec<Terms> {
        (0..self.dim)
            .map(|i| self.s_pow(&self.basis(i), k).terms)
            .collect()
    }

    pub fn counit(&self, x: &AlgebraElement) -> Result<Scalar> {
        self.check(x)?;
        Ok(self.eps(x))
    }

    pub(crate) fn eps(&self, x: &AlgebraElement) -> Scalar {
        let mut s = self.zero_scalar();
        for (i, c) in &x.terms {
            let e = &self.counit[*i as usize];
            if !e.is_zero() {
                s += &(c * e);
            }
        }
        s
    }

    pub fn counit_functional(&self) -> Functional {
        Functional {
            alg: self.id,
            values: self.counit.clone(),
        }
    }

    pub fn functional(&self, values: Vec<Scalar>) -> Result<Functional> {
        if values.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "functional needs {} values, got {}",
                self.dim,
                values.len()
            )));
        }
        for v in &values {
            if v.order() != self.order {
                return Err(
                    crate::scalars::ScalarError::OrderMismatch(self.order, v.order()).into(),
                );
            }
        }
        Ok(Functional {
            alg: self.id,
            values,
        })
    }

    pub fn zero_functional(&self) -> Functional {
        Functional {
            alg: self.id,
            values: vec![self.zero_scalar(); self.dim],
        }
    }

    pub fn evaluate(&self, f: &Functional, x: &AlgebraElement) -> Result<Scalar> {
        if f.alg != self.id {
            return Err(Error::AlgebraMismatch);
        }
        self.check(x)?;
        Ok(f.eval(x))
    }

    /// Matrix of the antipode, column i holding S(b_i).
    pub fn antipode_matrix(&self) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![self.zero_scalar(); self.dim]; self.dim];
        for (i, col) in self.antipode.iter().enumerate() {
            for (k, c) in col {
                m[*k as usize][i] = c.clone();
            }
        }
        m
    }

    /// Linear-map trace of S^k.
    pub fn antipode_trace(&self, k: i64) -> Scalar {
        let mut t = self.zero_scalar();
        for i in 0..self.dim {
            let y = self.s_pow(&self.basis(i), k);
            t += &y.coefficient(i);
        }
        t
    }

    /// Replaces the antipode (used to build deliberately broken inputs).
    pub fn with_antipode_replaced(&self, antipode: Vec<Vec<(u32, Scalar)>>) -> Result<Self> {
        let data = StructureData {
            order: self.order,
            labels: self.labels.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            counit: self.counit.clone(),
            coproduct: self.coproduct.clone(),
            antipode,
        };
        let mut h = Self::new(data)?;
        h.generators = self.generators.clone();
        Ok(h)
    }

    /// Inverse of an element via its minimal polynomial (Krylov sequence
    /// 1, x, x², … until linear dependence); None if x is not invertible.
    pub fn inverse_element(&self, x: &AlgebraElement) -> Result<Option<AlgebraElement>> {
        self.check(x)?;
        let mut ech = linalg::Echelon::new(self.order);
        let mut powers = vec![self.one()];
        loop {
            let p = powers.last().unwrap().clone();
            let tag = powers.len() - 1;
            match ech.insert_tracked(p.terms.clone(), tag) {
                None => {}
                Some(dep) => {
                    // Σ dep_i x^i = 0 for i ≤ tag, with dep_tag = 1
                    let c0 = dep.iter().find(|(i, _)| *i == 0).map(|(_, c)| c.clone());
                    let Some(c0) = c0 else { return Ok(None) };
                    let c0inv = c0.inverse()?;
                    let mut inv = self.zero();
                    for (i, c) in &dep {
                        if *i >= 1 {
                            inv = inv.add(&powers[*i - 1].scale(c));
                        }
                    }
                    return Ok(Some(inv.scale(&(-c0inv))));
                }
            }
            if powers.len() > self.dim + 1 {
                return Err(Error::Structural(
                    "minimal polynomial search did not terminate".into(),
                ));
            }
            powers.push(self.mul(&p, x));
        }
    }
}
