use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::{AlgebraElement, AlgebraId, Functional, HopfStructure, Scalar, Terms};
use crate::error::{Error, Result};

/// One basis index per tensor leg.
pub type Key = SmallVec<[u32; 4]>;

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub(crate) alg: AlgebraId,
    pub(crate) order: u32,
    pub(crate) arity: usize,
    pub(crate) terms: FxHashMap<Key, Scalar>,
}

impl std::fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Tensor(arity {}, {} terms)",
            self.arity,
            self.terms.len()
        )
    }
}

pub(crate) fn add_into(map: &mut FxHashMap<Key, Scalar>, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v += &c;
            if v.is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl TensorElement {
    pub(crate) fn empty(alg: AlgebraId, order: u32, arity: usize) -> Self {
        TensorElement {
            alg,
            order,
            arity,
            terms: FxHashMap::default(),
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &[u32]) -> Scalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.order))
    }

    /// Terms in lexicographic key order.
    pub fn sorted_terms(&self) -> Vec<(Key, Scalar)> {
        let mut v: Vec<(Key, Scalar)> = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub(crate) fn insert_add(&mut self, k: Key, c: Scalar) {
        add_into(&mut self.terms, k, c);
    }

    fn combine(&self, other: &Self, sign: bool) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::InvalidInput(format!(
                "arity mismatch {} vs {}",
                self.arity, other.arity
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), if sign { -c } else { c.clone() });
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::empty(self.alg, self.order, self.arity);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Legs permuted so that new leg i is old leg perm[i].
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.arity];
        if perm.len() != self.arity
            || perm
                .iter()
                .any(|&p| p >= self.arity || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidInput(
                "not a permutation of the tensor legs".into(),
            ));
        }
        let mut out = Self::empty(self.alg, self.order, self.arity);
        for (k, c) in &self.terms {
            let nk: Key = perm.iter().map(|&p| k[p]).collect();
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    /// τ for arity 2.
    pub fn flip(&self) -> Self {
        assert_eq!(self.arity, 2);
        self.permute(&[1, 0]).unwrap()
    }
}

impl HopfStructure {
    pub(crate) fn check_tensor(&self, t: &TensorElement) -> Result<()> {
        if t.alg == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub(crate) fn empty_tensor(&self, arity: usize) -> TensorElement {
        TensorElement::empty(self.id, self.order, arity)
    }

    pub fn tensor_from_terms(
        &self,
        arity: usize,
        terms: &[(Vec<usize>, Scalar)],
    ) -> Result<TensorElement> {
        let mut t = self.empty_tensor(arity);
        for (k, c) in terms {
            if k.len() != arity {
                return Err(Error::InvalidInput("tensor key of wrong length".into()));
            }
            for &i in k {
                if i >= self.dim {
                    return Err(Error::InvalidBasis {
                        index: i,
                        dim: self.dim,
                    });
                }
            }
            t.insert_add(k.iter().map(|&i| i as u32).collect(), c.clone());
        }
        Ok(t)
    }

    /// x_1 ⊗ … ⊗ x_n.
    pub fn tensor_product(&self, xs: &[&AlgebraElement]) -> Result<TensorElement> {
        for x in xs {
            self.check(x)?;
        }
        let mut t = self.empty_tensor(xs.len());
        t.insert_add(Key::new(), self.one_scalar());
        for x in xs {
            let mut next = self.empty_tensor(t.arity);
            for (k, c) in &t.terms {
                for (i, a) in &x.terms {
                    let mut nk = k.clone();
                    nk.push(*i);
                    next.insert_add(nk, c * a);
                }
            }
            t = next;
        }
        t.arity = xs.len();
        Ok(t)
    }

    pub fn tensor_to_element(&self, t: &TensorElement) -> Result<AlgebraElement> {
        self.check_tensor(t)?;
        if t.arity != 1 {
            return Err(Error::InvalidInput("tensor of arity 1 expected".into()));
        }
        let mut acc = super::Accumulator::new();
        for (k, c) in &t.terms {
            acc.add(k[0], c.clone());
        }
        Ok(self.from_terms(acc.finish()))
    }

    /// Leg-wise product in H^{⊗n}.
    pub fn tensor_multiply(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        self.check_tensor(a)?;
        self.check_tensor(b)?;
        if a.arity != b.arity {
            return Err(Error::InvalidInput("tensor arity mismatch".into()));
        }
        Ok(self.tmul(a, b))
    }

    pub(crate) fn tmul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let n = a.arity;
        let mut out = self.empty_tensor(n);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let c = ca * cb;
                // cartesian product of leg products
                let mut partial: Vec<(Key, Scalar)> = vec![(Key::new(), c)];
                for leg in 0..n {
                    let prod = self.mul_basis(ka[leg], kb[leg]);
                    if prod.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (pk, pc) in &partial {
                        for (i, x) in prod {
                            let mut nk = pk.clone();
                            nk.push(*i);
                            next.push((nk, pc * x));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.insert_add(k, c);
                }
            }
        }
        out
    }

    pub fn coproduct(&self, x: &AlgebraElement) -> Result<TensorElement> {
        self.check(x)?;
        Ok(self.delta(x))
    }

    pub(crate) fn delta(&self, x: &AlgebraElement) -> TensorElement {
        let mut t = self.empty_tensor(2);
        for (i, a) in &x.terms {
            for (j, k, c) in self.coproduct_basis(*i) {
                let mut key = Key::new();
                key.push(*j);
                key.push(*k);
                t.insert_add(key, a * c);
            }
        }
        t
    }

    /// Δ^{(n−1)}(x), expanding the last leg repeatedly.
    pub fn iterated_coproduct(&self, x: &AlgebraElement, n: usize) -> Result<TensorElement> {
        self.check(x)?;
        if n == 0 {
            return Err(Error::InvalidInput(
                "iterated coproduct needs n >= 1".into(),
            ));
        }
        let mut t = self.empty_tensor(1);
        for (i, c) in &x.terms {
            let mut k = Key::new();
            k.push(*i);
            t.insert_add(k, c.clone());
        }
        for _ in 1..n {
            t = self.coproduct_at_unchecked(&t, t.arity - 1);
        }
        Ok(t)
    }

    /// Same as `iterated_coproduct`, failing once the term count passes `budget`.
    pub fn iterated_coproduct_budget(
        &self,
        x: &AlgebraElement,
        n: usize,
        budget: usize,
    ) -> Result<TensorElement> {
        self.check(x)?;
        if n == 0 {
            return Err(Error::InvalidInput(
                "iterated coproduct needs n >= 1".into(),
            ));
        }
        let mut t = self.iterated_coproduct(x, 1)?;
        for _ in 1..n {
            t = self.coproduct_at_unchecked(&t, t.arity - 1);
            if t.len() > budget {
                return Err(Error::Budget {
                    limit: budget,
                    needed: t.len(),
                });
            }
        }
        Ok(t)
    }

    pub fn coproduct_at(&self, t: &TensorElement, leg: usize) -> Result<TensorElement> {
        self.check_tensor(t)?;
        if leg >= t.arity {
            return Err(Error::InvalidInput("leg out of range".into()));
        }
        Ok(self.coproduct_at_unchecked(t, leg))
    }

    pub(crate) fn coproduct_at_unchecked(&self, t: &TensorElement, leg: usize) -> TensorElement {
        let mut out = self.empty_tensor(t.arity + 1);
        for (k, c) in &t.terms {
            for (a, b, d) in self.coproduct_basis(k[leg]) {
                let mut nk = Key::with_capacity(k.len() + 1);
                nk.extend_from_slice(&k[..leg]);
                nk.push(*a);
                nk.push(*b);
                nk.extend_from_slice(&k[leg + 1..]);
                out.insert_add(nk, c * d);
            }
        }
        out
    }

    /// Applies a linear map (given by basis columns) to one leg.
    pub(crate) fn map_at(&self, t: &TensorElement, leg: usize, cols: &[Terms]) -> TensorElement {
        let mut out = self.empty_tensor(t.arity);
        for (k, c) in &t.terms {
            for (i, a) in &cols[k[leg] as usize] {
                let mut nk = k.clone();
                nk[leg] = *i;
                out.insert_add(nk, c * a);
            }
        }
        out
    }

    pub fn antipode_power_at(
        &self,
        t: &TensorElement,
        leg: usize,
        k: i64,
    ) -> Result<TensorElement> {
        self.check_tensor(t)?;
        if leg >= t.arity {
            return Err(Error::InvalidInput("leg out of range".into()));
        }
        Ok(self.map_at(t, leg, &self.antipode_power_table(k)))
    }

    /// Pairs a functional with one leg, lowering the arity by one.
    pub fn contract_at(
        &self,
        t: &TensorElement,
        leg: usize,
        f: &Functional,
    ) -> Result<TensorElement> {
        self.check_tensor(t)?;
        if f.alg != self.id {
            return Err(Error::AlgebraMismatch);
        }
        if leg >= t.arity || t.arity < 2 {
            return Err(Error::InvalidInput("cannot contract this leg".into()));
        }
        let mut out = self.empty_tensor(t.arity - 1);
        for (k, c) in &t.terms {
            let v = &f.values[k[leg] as usize];
            if v.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk.remove(leg);
            out.insert_add(nk, c * v);
        }
        Ok(out)
    }

    /// Places the legs of `t` at `positions` inside an n-fold tensor, with
    /// the unit in the remaining slots (R_{13} = embed(R, [0, 2], 3)).
    pub fn embed(&self, t: &TensorElement, positions: &[usize], n: usize) -> Result<TensorElement> {
        self.check_tensor(t)?;
        if positions.len() != t.arity || positions.iter().any(|&p| p >= n) {
            return Err(Error::InvalidInput("bad embedding positions".into()));
        }
        let mut out = self.empty_tensor(n);
        let unit = self.unit_terms();
        for (k, c) in &t.terms {
            let mut partial: Vec<(Key, Scalar)> = vec![(Key::new(), c.clone())];
            for slot in 0..n {
                let choices: Vec<(u32, Scalar)> = match positions.iter().position(|&p| p == slot) {
                    Some(leg) => vec![(k[leg], self.one_scalar())],
                    None => unit.to_vec(),
                };
                let mut next = Vec::new();
                for (pk, pc) in &partial {
                    for (i, a) in &choices {
                        let mut nk = pk.clone();
                        nk.push(*i);
                        next.push((nk, pc * a));
                    }
                }
                partial = next;
            }
            for (k, c) in partial {
                out.insert_add(k, c);
            }
        }
        Ok(out)
    }

    /// Multiplies all legs together in leg order.
    pub fn multiply_legs(&self, t: &TensorElement) -> Result<AlgebraElement> {
        self.check_tensor(t)?;
        let mut acc = self.zero();
        for (k, c) in &t.terms {
            let mut p = self.one();
            for &i in k.iter() {
                p = self.from_terms(self.mul_terms(&p.terms, &[(i, self.one_scalar())]));
            }
            acc = acc.add(&p.scale(c));
        }
        Ok(acc)
    }
}
