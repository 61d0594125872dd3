use super::axioms::{verify_axioms_with, AxiomOptions, AxiomReport};
use super::{
    AlgebraElement, Functional, HopfStructure, IntegralData, Normalization, Scalar, TensorElement,
    Terms,
};
use crate::error::{Error, Result};

/// u = Σ S(t_k) s_k and G = uθ⁻¹, validated: S² = Ad(u) = Ad(G) on every
/// basis element, Δ(G) = G⊗G and G² = g.
pub fn ribbon_derived_data(
    h: &HopfStructure,
    r: &TensorElement,
    theta: &AlgebraElement,
    g: &AlgebraElement,
) -> Result<(AlgebraElement, AlgebraElement)> {
    h.check_tensor(r)?;
    h.check(theta)?;
    h.check(g)?;
    let mut u = h.zero();
    for (k, c) in &r.terms {
        let s = h.basis(k[0] as usize);
        let t = h.basis(k[1] as usize);
        u = u.add(&h.mul(&h.s(&t), &s).scale(c));
    }
    let theta_inv = h
        .inverse_element(theta)?
        .ok_or_else(|| Error::RibbonInconsistent("theta is not invertible".into()))?;
    let big_g = h.mul(&u, &theta_inv);
    for i in 0..h.dim {
        let x = h.basis(i);
        let s2 = h.s_pow(&x, 2);
        if h.mul(&s2, &u) != h.mul(&u, &x) {
            return Err(Error::RibbonInconsistent(format!(
                "S²(x) ≠ u x u⁻¹ at {}",
                h.labels[i]
            )));
        }
        if h.mul(&s2, &big_g) != h.mul(&big_g, &x) {
            return Err(Error::RibbonInconsistent(format!(
                "S²(x) ≠ G x G⁻¹ at {}",
                h.labels[i]
            )));
        }
    }
    if h.delta(&big_g) != h.tensor_product(&[&big_g, &big_g])? {
        return Err(Error::RibbonInconsistent("G is not grouplike".into()));
    }
    if &h.mul(&big_g, &big_g) != g {
        return Err(Error::RibbonInconsistent("G² ≠ g".into()));
    }
    Ok((u, big_g))
}

/// Everything the invariants consume, for one concrete algebra.
#[derive(Clone)]
pub struct RibbonHopfData {
    pub structure: HopfStructure,
    pub r: TensorElement,
    pub theta: AlgebraElement,
    pub theta_inv: AlgebraElement,
    pub lambda: Functional,
    pub cointegral: AlgebraElement,
    pub g: AlgebraElement,
    pub alpha: Functional,
    pub u: AlgebraElement,
    pub big_g: AlgebraElement,
    pub omega: Scalar,
    pub normalization: Normalization,
    /// G^k for k = -dim..=dim is never needed; G has small order, so we
    /// keep G^0..G^{n-1} with n the order of G.
    g_powers: Vec<AlgebraElement>,
}

/// λ_{n−1/2}, Λ_{n−1/2} and the tilt map T.
pub struct DecoratedForms {
    pub lambda: Functional,
    pub cointegral: AlgebraElement,
    /// Columns T(b_i).
    pub tilt: Vec<Terms>,
}

impl RibbonHopfData {
    pub fn new(
        structure: HopfStructure,
        r: TensorElement,
        theta: AlgebraElement,
        integrals: IntegralData,
    ) -> Result<Self> {
        let h = &structure;
        h.check_tensor(&r)?;
        h.check(&theta)?;
        let (u, big_g) = ribbon_derived_data(h, &r, &theta, &integrals.g)?;
        let theta_inv = h
            .inverse_element(&theta)?
            .ok_or_else(|| Error::RibbonInconsistent("theta is not invertible".into()))?;
        let mut g_powers = vec![h.one()];
        loop {
            let next = h.mul(g_powers.last().unwrap(), &big_g);
            if next == h.one() {
                break;
            }
            g_powers.push(next);
            if g_powers.len() > h.dim {
                return Err(Error::RibbonInconsistent("G has no finite order".into()));
            }
        }
        Ok(RibbonHopfData {
            structure,
            r,
            theta,
            theta_inv,
            lambda: integrals.lambda,
            cointegral: integrals.cointegral,
            g: integrals.g,
            alpha: integrals.alpha,
            u,
            big_g,
            omega: integrals.omega,
            normalization: integrals.normalization,
            g_powers,
        })
    }

    pub fn order(&self) -> u32 {
        self.structure.order()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn integral_data(&self) -> IntegralData {
        IntegralData {
            lambda: self.lambda.clone(),
            cointegral: self.cointegral.clone(),
            g: self.g.clone(),
            alpha: self.alpha.clone(),
            omega: self.omega.clone(),
            normalization: self.normalization.clone(),
        }
    }

    /// G^k for any integer k.
    pub fn g_power(&self, k: i64) -> &AlgebraElement {
        let n = self.g_powers.len() as i64;
        &self.g_powers[k.rem_euclid(n) as usize]
    }

    /// g^k for any integer k (g = G²).
    pub fn comodulus_power(&self, k: i64) -> &AlgebraElement {
        self.g_power(2 * k)
    }

    /// tr(x G^d) = λ(x G^{d+1}).
    pub fn trace_functional(&self, x: &AlgebraElement, d: i64) -> Result<Scalar> {
        let h = &self.structure;
        h.check(x)?;
        Ok(self.lambda.eval(&h.mul(x, self.g_power(d + 1))))
    }

    pub fn trace(&self, x: &AlgebraElement) -> Result<Scalar> {
        self.trace_functional(x, 0)
    }

    pub fn lambda_theta(&self) -> Scalar {
        self.lambda.eval(&self.theta)
    }

    pub fn lambda_theta_inv(&self) -> Scalar {
        self.lambda.eval(&self.theta_inv)
    }

    pub fn is_unimodular(&self) -> bool {
        self.alpha == self.structure.counit_functional()
    }

    pub fn decorated_forms(&self, n: i64) -> Result<DecoratedForms> {
        let h = &self.structure;
        let gn = self.comodulus_power(n);
        let lambda = Functional {
            alg: h.id(),
            values: (0..h.dim())
                .map(|i| self.lambda.eval(&h.mul(&h.basis(i), gn)))
                .collect(),
        };
        let alpha_n = h.character_power(&self.alpha, n)?;
        let d = h.delta(&self.cointegral);
        let cointegral = h.tensor_to_element(&h.contract_at(&d, 1, &alpha_n)?)?;
        let alpha_inv = h.character_inverse(&self.alpha);
        let tilt = (0..h.dim())
            .map(|i| {
                let x = h.s_pow(&h.basis(i), -2);
                let t = h.iterated_coproduct(&x, 3)?;
                let t = h.contract_at(&t, 2, &alpha_inv)?;
                let t = h.contract_at(&t, 0, &self.alpha)?;
                Ok(h.tensor_to_element(&t)?.terms)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DecoratedForms {
            lambda,
            cointegral,
            tilt,
        })
    }

    /// Full axiom suite including the integral and ribbon identities.
    pub fn verify(&self, exhaustive: bool, rank_limit: usize) -> AxiomReport {
        let opts = AxiomOptions {
            exhaustive,
            integrals: Some(self.integral_data()),
            solve_limit: None,
            rank_limit: Some(rank_limit),
        };
        let mut rep = verify_axioms_with(&self.structure, Some(&self.r), Some(&self.theta), &opts);
        let h = &self.structure;
        rep.push("G² = g", h.mul(&self.big_g, &self.big_g) == self.g, "");
        rep.push(
            "theta * theta^-1 = 1",
            h.mul(&self.theta, &self.theta_inv) == h.one(),
            "inverse from the minimal polynomial of theta",
        );
        rep
    }
}

impl DecoratedForms {
    pub fn apply_tilt(&self, h: &HopfStructure, x: &AlgebraElement) -> Result<AlgebraElement> {
        h.check(x)?;
        Ok(h.apply_linear(&self.tilt, x))
    }
}
