use super::{AlgebraElement, Functional, HopfStructure, Scalar, TensorElement};
use crate::error::{Error, Result};

/// f_Q(p) = Σ p(Q¹) Q².
pub fn drinfeld_map(
    h: &HopfStructure,
    q: &TensorElement,
    p: &Functional,
) -> Result<AlgebraElement> {
    h.check_tensor(q)?;
    if p.alg != h.id {
        return Err(Error::AlgebraMismatch);
    }
    if q.arity != 2 {
        return Err(Error::InvalidInput("Drinfeld map needs a 2-tensor".into()));
    }
    Ok(h.drinfeld(q, p))
}

/// Rank of p ↦ f_{R^τR}(p); equals dim exactly when H is factorizable.
pub fn factorizability_rank(h: &HopfStructure, r: &TensorElement) -> Result<usize> {
    h.check_tensor(r)?;
    let m = h.monodromy(r);
    // row i of the matrix: coefficients of f(e^i)
    let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); h.dim];
    for (k, c) in &m.terms {
        rows[k[0] as usize].push((k[1], c.clone()));
    }
    Ok(super::linalg::rank(h.order, rows))
}

impl HopfStructure {
    pub(crate) fn drinfeld(&self, q: &TensorElement, p: &Functional) -> AlgebraElement {
        let mut acc = super::Accumulator::new();
        for (k, c) in &q.terms {
            let v = &p.values[k[0] as usize];
            if !v.is_zero() {
                acc.add(k[1], c * v);
            }
        }
        self.from_terms(acc.finish())
    }

    /// R^τ R.
    pub fn monodromy(&self, r: &TensorElement) -> TensorElement {
        self.tmul(&r.flip(), r)
    }

    /// Convolution product (p·p′)(x) = p(x₁)p′(x₂).
    pub fn convolve(&self, p: &Functional, q: &Functional) -> Result<Functional> {
        if p.alg != self.id || q.alg != self.id {
            return Err(Error::AlgebraMismatch);
        }
        let values = (0..self.dim as u32)
            .map(|i| {
                let mut s = self.zero_scalar();
                for (a, b, c) in self.coproduct_basis(i) {
                    let pa = &p.values[*a as usize];
                    let qb = &q.values[*b as usize];
                    if !pa.is_zero() && !qb.is_zero() {
                        s += &(&(c * pa) * qb);
                    }
                }
                s
            })
            .collect();
        Ok(Functional {
            alg: self.id,
            values,
        })
    }

    /// x ↦ p(S^k(x)).
    pub fn functional_antipode_power(&self, p: &Functional, k: i64) -> Functional {
        let table = self.antipode_power_table(k);
        Functional {
            alg: self.id,
            values: table
                .iter()
                .map(|t| p.eval_terms(t).unwrap_or_else(|| self.zero_scalar()))
                .collect(),
        }
    }

    /// x ↦ p(a x b).
    pub fn functional_sandwich(
        &self,
        p: &Functional,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Functional {
        let values = (0..self.dim)
            .map(|i| {
                let y = self.mul(&self.mul(a, &self.basis(i)), b);
                p.eval(&y)
            })
            .collect();
        Functional {
            alg: self.id,
            values,
        }
    }

    /// The convolution unit of H* is ε; this is p^{-1} = p∘S for an algebra map p.
    pub fn character_inverse(&self, p: &Functional) -> Functional {
        self.functional_antipode_power(p, 1)
    }

    /// Convolution power; negative powers use p∘S, valid for characters.
    pub fn character_power(&self, p: &Functional, n: i64) -> Result<Functional> {
        let base = if n < 0 {
            self.character_inverse(p)
        } else {
            p.clone()
        };
        let mut acc = self.counit_functional();
        for _ in 0..n.unsigned_abs() {
            acc = self.convolve(&acc, &base)?;
        }
        Ok(acc)
    }
}

impl HopfStructure {
    /// f_{R^τR}(p) = Σ_{a,b} p(t_a s_b) s_a t_b, without forming R^τR.
    pub fn monodromy_map(&self, r: &TensorElement, p: &Functional) -> Result<AlgebraElement> {
        self.check_tensor(r)?;
        if p.alg != self.id {
            return Err(Error::AlgebraMismatch);
        }
        let terms = r.sorted_terms();
        let mut acc = super::Accumulator::new();
        for (ka, ca) in &terms {
            for (kb, cb) in &terms {
                let Some(v) = p.eval_terms(self.mul_basis(ka[1], kb[0])) else {
                    continue;
                };
                if v.is_zero() {
                    continue;
                }
                let w = &(ca * cb) * &v;
                for (k, c) in self.mul_basis(ka[0], kb[1]) {
                    acc.add(*k, &w * c);
                }
            }
        }
        Ok(self.from_terms(acc.finish()))
    }
}
