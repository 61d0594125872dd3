use std::fmt;

use super::{AlgebraId, Scalar, Terms};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub(crate) alg: AlgebraId,
    pub(crate) order: u32,
    pub(crate) terms: Terms,
}

impl AlgebraElement {
    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(u32, Scalar)] {
        &self.terms
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

    pub fn coefficient(&self, i: usize) -> Scalar {
        match self.terms.binary_search_by_key(&(i as u32), |t| t.0) {
            Ok(p) => self.terms[p].1.clone(),
            Err(_) => Scalar::zero(self.order),
        }
    }

    fn merge(&self, other: &Self, sign: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if sign { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if sign {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        AlgebraElement {
            alg: self.alg,
            order: self.order,
            terms: out,
        }
    }

    /// Panics when the algebras differ; see `checked_add`.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.alg, other.alg, "elements of different algebras");
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.alg, other.alg, "elements of different algebras");
        self.merge(other, true)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.merge(other, true))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgebraElement {
                alg: self.alg,
                order: self.order,
                terms: Vec::new(),
            };
        }
        AlgebraElement {
            alg: self.alg,
            order: self.order,
            terms: self.terms.iter().map(|(i, a)| (*i, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            alg: self.alg,
            order: self.order,
            terms: self.terms.iter().map(|(i, a)| (*i, -a)).collect(),
        }
    }

    /// Coefficient-wise complex conjugation.
    pub fn conjugate_coefficients(&self) -> Self {
        AlgebraElement {
            alg: self.alg,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(i, a)| (*i, a.conjugate()))
                .collect(),
        }
    }

    /// Formats with basis labels, e.g. `2*E + (-1 - z)*K^2`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let lab = &labels[*i as usize];
                if c.is_one() {
                    lab.clone()
                } else {
                    format!("({c})*{lab}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("({c})b{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Dense row vector h ↦ f(h).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functional {
    pub(crate) alg: AlgebraId,
    pub(crate) values: Vec<Scalar>,
}

impl Functional {
    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Scalar {
        &self.values[i]
    }

    pub(crate) fn eval(&self, x: &AlgebraElement) -> Scalar {
        let mut s = Scalar::zero(x.order);
        for (i, c) in &x.terms {
            let v = &self.values[*i as usize];
            if !v.is_zero() {
                s += &(c * v);
            }
        }
        s
    }

    pub(crate) fn eval_terms(&self, t: &[(u32, Scalar)]) -> Option<Scalar> {
        let mut s: Option<Scalar> = None;
        for (i, c) in t {
            let v = &self.values[*i as usize];
            if !v.is_zero() {
                let p = c * v;
                s = Some(match s {
                    Some(acc) => &acc + &p,
                    None => p,
                });
            }
        }
        s
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Functional {
            alg: self.alg,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.alg, other.alg, "functionals of different algebras");
        Functional {
            alg: self.alg,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.alg, other.alg, "functionals of different algebras");
        Functional {
            alg: self.alg,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}
