use super::{linalg, AlgebraElement, Functional, HopfStructure, Scalar, TensorElement};
use crate::error::{Error, Result};

/// How the joint scaling f_{R^τR}(λ) = Λ, λ(Λ) = 1 was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// λ = λ₀/s with s² = c = λ₀(f(λ₀)); both conditions hold.
    SquareRoot { c: Scalar, s: Scalar },
    /// No square root of c was found in the field: λ = λ₀ and Λ = f(λ₀)/c,
    /// so λ(Λ) = 1 but f(λ) = cΛ.
    Fallback { c: Scalar },
}

#[derive(Clone, Debug)]
pub struct IntegralData {
    pub lambda: Functional,
    pub cointegral: AlgebraElement,
    pub g: AlgebraElement,
    pub alpha: Functional,
    pub omega: Scalar,
    pub normalization: Normalization,
}

impl HopfStructure {
    /// Is λ a right integral: (λ⊗id)Δ(h) = λ(h)1 for all basis h?
    pub fn is_right_integral(&self, lambda: &Functional) -> bool {
        let one = self.one();
        (0..self.dim).all(|i| {
            let mut acc = super::Accumulator::new();
            for (a, b, c) in self.coproduct_basis(i as u32) {
                let v = &lambda.values[*a as usize];
                if !v.is_zero() {
                    acc.add(*b, c * v);
                }
            }
            self.from_terms(acc.finish()) == one.scale(&lambda.values[i])
        })
    }

    /// hΛ = ε(h)Λ for all basis h.
    pub fn is_left_cointegral(&self, x: &AlgebraElement) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis(i);
            self.mul(&b, x) == x.scale(&self.counit[i])
        })
    }

    /// Λh = ε(h)Λ for all basis h.
    pub fn is_right_cointegral(&self, x: &AlgebraElement) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis(i);
            self.mul(x, &b) == x.scale(&self.counit[i])
        })
    }

    /// Nullspace of the right-integral equations.
    pub fn right_integral_space(&self) -> Vec<Functional> {
        let mut ech = linalg::Echelon::new(self.order);
        for h in 0..self.dim {
            let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); self.dim];
            for (a, b, c) in self.coproduct_basis(h as u32) {
                rows[*b as usize].push((*a, c.clone()));
            }
            for (k, u) in self.unit_terms() {
                rows[*k as usize].push((h as u32, -u));
            }
            for row in rows {
                if !row.is_empty() {
                    ech.insert(merge_row(row));
                }
            }
        }
        ech.nullspace(self.dim)
            .into_iter()
            .map(|values| Functional {
                alg: self.id,
                values,
            })
            .collect()
    }

    /// Nullspace of the left-cointegral equations hΛ = ε(h)Λ.
    pub fn left_cointegral_space(&self) -> Vec<AlgebraElement> {
        let mut ech = linalg::Echelon::new(self.order);
        for h in 0..self.dim as u32 {
            let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); self.dim];
            for i in 0..self.dim as u32 {
                for (k, c) in self.mul_basis(h, i) {
                    rows[*k as usize].push((i, c.clone()));
                }
            }
            let e = self.counit_basis(h);
            if !e.is_zero() {
                for (k, row) in rows.iter_mut().enumerate() {
                    row.push((k as u32, -e));
                }
            }
            for row in rows {
                if !row.is_empty() {
                    ech.insert(merge_row(row));
                }
            }
        }
        ech.nullspace(self.dim)
            .into_iter()
            .map(|v| {
                let terms = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i as u32, c))
                    .collect();
                self.from_terms(terms)
            })
            .collect()
    }

    /// g from (id⊗λ)Δ(h) = λ(h)g.
    pub fn comodulus(&self, lambda: &Functional) -> Result<AlgebraElement> {
        let h = (0..self.dim)
            .find(|&i| !lambda.values[i].is_zero())
            .ok_or_else(|| Error::Structural("zero integral".into()))?;
        let side = |i: usize| {
            let mut acc = super::Accumulator::new();
            for (a, b, c) in self.coproduct_basis(i as u32) {
                let v = &lambda.values[*b as usize];
                if !v.is_zero() {
                    acc.add(*a, c * v);
                }
            }
            self.from_terms(acc.finish())
        };
        let g = side(h).scale(&lambda.values[h].inverse()?);
        for i in 0..self.dim {
            if side(i) != g.scale(&lambda.values[i]) {
                return Err(Error::Structural("comodulus equation fails".into()));
            }
        }
        Ok(g)
    }

    /// α from Λh = α(h)Λ.
    pub fn modulus(&self, cointegral: &AlgebraElement) -> Result<Functional> {
        let (p, lp) = cointegral
            .terms
            .first()
            .cloned()
            .ok_or_else(|| Error::Structural("zero cointegral".into()))?;
        let inv = lp.inverse()?;
        let mut values = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let y = self.mul(cointegral, &self.basis(i));
            let a = &y.coefficient(p as usize) * &inv;
            if y != cointegral.scale(&a) {
                return Err(Error::Structural("modulus equation fails".into()));
            }
            values.push(a);
        }
        Ok(Functional {
            alg: self.id,
            values,
        })
    }
}

fn merge_row(row: Vec<(u32, Scalar)>) -> Vec<(u32, Scalar)> {
    let mut acc = super::Accumulator::new();
    for (k, c) in row {
        acc.add(k, c);
    }
    acc.finish()
}

/// Finds λ and Λ from their defining linear systems, then normalizes.
pub fn solve_integral_data(h: &HopfStructure, r: &TensorElement) -> Result<IntegralData> {
    let space = h.right_integral_space();
    if space.len() != 1 {
        return Err(Error::Structural(format!(
            "right integral space has dimension {}",
            space.len()
        )));
    }
    let co = h.left_cointegral_space();
    if co.len() != 1 {
        return Err(Error::Structural(format!(
            "left cointegral space has dimension {}",
            co.len()
        )));
    }
    let data = normalize_integral_data(h, r, &space[0], None)?;
    // the normalized Λ must span the solved cointegral line
    let (p, c) = co[0].terms[0].clone();
    let ratio = &data.cointegral.coefficient(p as usize) / &c;
    if co[0].scale(&ratio) != data.cointegral {
        return Err(Error::Structural(
            "f(λ) is not proportional to the cointegral".into(),
        ));
    }
    Ok(data)
}

/// Rescales a right integral λ₀ so that f_{R^τR}(λ) = Λ and λ(Λ) = 1.
///
/// The square root of c = λ₀(f(λ₀)) is looked for directly and, when θ is
/// supplied, as λ₀(θ)·√(c/λ₀(θ)²) (c = λ₀(θ)λ₀(θ⁻¹) for factorizable ribbon H).
pub fn normalize_integral_data(
    h: &HopfStructure,
    r: &TensorElement,
    lambda0: &Functional,
    theta: Option<&AlgebraElement>,
) -> Result<IntegralData> {
    if lambda0.alg != h.id {
        return Err(Error::AlgebraMismatch);
    }
    if lambda0.is_zero() || !h.is_right_integral(lambda0) {
        return Err(Error::Structural(
            "input is not a nonzero right integral".into(),
        ));
    }
    let f0 = h.monodromy_map(r, lambda0)?;
    let c = lambda0.eval(&f0);
    if c.is_zero() {
        return Err(Error::NotFactorizable("λ(f_{R^τR}(λ)) = 0".into()));
    }
    let mut root = c.sqrt_exact();
    if root.is_none() {
        if let Some(t) = theta {
            let lt = lambda0.eval(t);
            if !lt.is_zero() {
                let rest = &c / &(&lt * &lt);
                root = rest.sqrt_exact().map(|s| &s * &lt);
            }
        }
    }
    let (lambda, cointegral, normalization) = match root {
        Some(s) => {
            let inv = s.inverse()?;
            (
                lambda0.scale(&inv),
                f0.scale(&inv),
                Normalization::SquareRoot { c, s },
            )
        }
        None => {
            let inv = c.inverse()?;
            (
                lambda0.clone(),
                f0.scale(&inv),
                Normalization::Fallback { c },
            )
        }
    };
    if !h.is_left_cointegral(&cointegral) {
        return Err(Error::Structural(
            "f_{R^τR}(λ) is not a left cointegral".into(),
        ));
    }
    let g = h.comodulus(&lambda)?;
    let alpha = h.modulus(&cointegral)?;
    let omega = alpha.eval(&g);
    Ok(IntegralData {
        lambda,
        cointegral,
        g,
        alpha,
        omega,
        normalization,
    })
}
