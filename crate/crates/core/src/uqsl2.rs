//! Small quantum group u_q sl(2) at an odd root of unity q = ζ_l, on the
//! PBW basis F^m E^n K^j (index m·l² + n·l + j).
//!
//!   E^l = F^l = 0, K^l = 1, KE = q²EK, KF = q⁻²FK, [E,F] = (K − K⁻¹)/(q − q⁻¹)
//!   Δ(E) = 1⊗E + E⊗K, Δ(F) = K⁻¹⊗F + F⊗1, Δ(K) = K⊗K
//!   S(E) = −EK⁻¹, S(F) = −KF, S(K) = K⁻¹

use crate::error::{Error, Result};
use crate::hopf::{
    normalize_integral_data, AlgebraElement, Functional, HopfStructure, RibbonHopfData, Scalar,
    StructureData, TensorElement,
};
use crate::scalars::CyclotomicScalar;

type Terms = Vec<(u32, Scalar)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PbwIndex {
    pub m: u32,
    pub n: u32,
    pub j: u32,
}

impl PbwIndex {
    pub fn index(&self, l: u32) -> usize {
        (self.m * l * l + self.n * l + self.j) as usize
    }

    pub fn from_index(i: usize, l: u32) -> Self {
        let i = i as u32;
        PbwIndex {
            m: i / (l * l),
            n: (i / l) % l,
            j: i % l,
        }
    }
}

fn q(l: u32, k: i64) -> Scalar {
    CyclotomicScalar::zeta_pow(l, k)
}

/// [m] = (q^m − q^{−m})/(q − q^{−1}).
fn q_number(l: u32, m: i64) -> Scalar {
    &(&q(l, m) - &q(l, -m)) / &(&q(l, 1) - &q(l, -1))
}

/// [m]! for 0 ≤ m < l.
pub fn q_factorial(l: u32, m: u32) -> Result<Scalar> {
    if l.is_multiple_of(2) || l < 3 {
        return Err(Error::InvalidInput(format!(
            "u_q sl(2) needs odd l ≥ 3, got {l}"
        )));
    }
    crate::scalars::check_order(l)?;
    if m >= l {
        return Err(Error::InvalidInput(format!(
            "[m]! needs 0 ≤ m < l, got m = {m}"
        )));
    }
    let mut acc = Scalar::one(l);
    for k in 1..=m as i64 {
        acc = &acc * &q_number(l, k);
    }
    Ok(acc)
}

/// Accumulates into a dense buffer; cheaper than hashing at these sizes.
struct Dense {
    v: Vec<Option<Scalar>>,
    touched: Vec<u32>,
}

impl Dense {
    fn new(n: usize) -> Self {
        Dense {
            v: vec![None; n],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, k: u32, c: &Scalar) {
        match &mut self.v[k as usize] {
            Some(x) => *x += c,
            slot @ None => {
                *slot = Some(c.clone());
                self.touched.push(k);
            }
        }
    }

    fn take(&mut self) -> Terms {
        self.touched.sort_unstable();
        let out = self
            .touched
            .iter()
            .filter_map(|&k| {
                self.v[k as usize]
                    .take()
                    .filter(|c| !c.is_zero())
                    .map(|c| (k, c))
            })
            .collect();
        self.touched.clear();
        out
    }
}

/// Right multiplication tables by the generators, built by normal ordering.
struct Rewriter {
    l: u32,
    dim: usize,
    by_e: Vec<Terms>,
    by_f: Vec<Terms>,
}

impl Rewriter {
    fn new(l: u32) -> Self {
        let dim = (l * l * l) as usize;
        let idx = |m: u32, n: u32, j: u32| PbwIndex { m, n, j: j % l }.index(l) as u32;
        // F^m E^n K^j · E = q^{2j} F^m E^{n+1} K^j
        let by_e: Vec<Terms> = (0..dim)
            .map(|i| {
                let p = PbwIndex::from_index(i, l);
                if p.n + 1 == l {
                    Vec::new()
                } else {
                    vec![(idx(p.m, p.n + 1, p.j), q(l, 2 * p.j as i64))]
                }
            })
            .collect();
        let mut rw = Rewriter {
            l,
            dim,
            by_e,
            by_f: vec![Vec::new(); dim],
        };
        // F^m E^n K^j · F = q^{−2j} (F^m E^n · F) K^j, and
        // F^m E^n · F = (F^m E^{n−1} · F) · E + F^m E^{n−1} (K − K⁻¹)/(q − q⁻¹)
        let c = (&q(l, 1) - &q(l, -1)).inverse().expect("q ≠ q⁻¹ for odd l");
        let mut acc = Dense::new(dim);
        for n in 0..l {
            for m in 0..l {
                let base: Terms = if n == 0 {
                    if m + 1 == l {
                        Vec::new()
                    } else {
                        vec![(idx(m + 1, 0, 0), Scalar::one(l))]
                    }
                } else {
                    let prev = rw.by_f[idx(m, n - 1, 0) as usize].clone();
                    for (k, a) in &prev {
                        for (k2, b) in &rw.by_e[*k as usize] {
                            acc.add(*k2, &(a * b));
                        }
                    }
                    acc.add(idx(m, n - 1, 1), &c);
                    acc.add(idx(m, n - 1, l - 1), &-&c);
                    acc.take()
                };
                for j in 0..l {
                    let s = q(l, -2 * j as i64);
                    let t: Terms = base
                        .iter()
                        .map(|(k, a)| (rw.times_k(*k, j), a * &s))
                        .collect();
                    rw.by_f[idx(m, n, j) as usize] = t;
                }
            }
        }
        rw
    }

    /// b_k · K^j (no scalar: K is last in the PBW order).
    fn times_k(&self, k: u32, j: u32) -> u32 {
        let l = self.l;
        let p = PbwIndex::from_index(k as usize, l);
        PbwIndex {
            j: (p.j + j) % l,
            ..p
        }
        .index(l) as u32
    }

    fn right(&self, table: &[Terms], x: &Terms, acc: &mut Dense) -> Terms {
        for (k, a) in x {
            for (k2, b) in &table[*k as usize] {
                acc.add(*k2, &(a * b));
            }
        }
        acc.take()
    }

    /// Full multiplication table: b_i · F^m E^n K^j by successive right
    /// multiplication with shared prefixes.
    fn table(&self) -> Vec<Terms> {
        let (l, dim) = (self.l, self.dim);
        let mut mult = vec![Vec::new(); dim * dim];
        let mut acc = Dense::new(dim);
        for i in 0..dim {
            let mut xf: Terms = vec![(i as u32, Scalar::one(l))];
            for m in 0..l {
                if m > 0 {
                    xf = self.right(&self.by_f, &xf, &mut acc);
                }
                let mut xe = xf.clone();
                for n in 0..l {
                    if n > 0 {
                        xe = self.right(&self.by_e, &xe, &mut acc);
                    }
                    for j in 0..l {
                        let col = PbwIndex { m, n, j }.index(l);
                        mult[i * dim + col] = xe
                            .iter()
                            .map(|(k, a)| (self.times_k(*k, j), a.clone()))
                            .collect();
                    }
                }
            }
        }
        mult
    }
}

fn mul_terms(mult: &[Terms], dim: usize, x: &Terms, y: &Terms, acc: &mut Dense) -> Terms {
    for (a, ca) in x {
        for (b, cb) in y {
            let c = ca * cb;
            for (k, ck) in &mult[*a as usize * dim + *b as usize] {
                acc.add(*k, &(&c * ck));
            }
        }
    }
    acc.take()
}

type Pairs = Vec<(u32, u32, Scalar)>;

fn tensor_mul(mult: &[Terms], dim: usize, x: &Pairs, y: &Pairs) -> Pairs {
    let mut acc: rustc_hash::FxHashMap<(u32, u32), Scalar> = Default::default();
    for (a1, a2, ca) in x {
        for (b1, b2, cb) in y {
            let c = ca * cb;
            let p1 = &mult[*a1 as usize * dim + *b1 as usize];
            let p2 = &mult[*a2 as usize * dim + *b2 as usize];
            for (k1, c1) in p1 {
                let c1 = &c * c1;
                for (k2, c2) in p2 {
                    let v = &c1 * c2;
                    acc.entry((*k1, *k2)).and_modify(|s| *s += &v).or_insert(v);
                }
            }
        }
    }
    let mut out: Pairs = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((a, b), c)| (a, b, c))
        .collect();
    out.sort_unstable_by_key(|t| (t.0, t.1));
    out
}

/// Structure tensors of u_q sl(2) with generators E, F, K.
pub fn uqsl2_structure(l: u32) -> Result<HopfStructure> {
    q_factorial(l, 0)?;
    let dim = (l * l * l) as usize;
    let idx = |m: u32, n: u32, j: u32| PbwIndex { m, n, j: j % l }.index(l) as u32;
    let rw = Rewriter::new(l);
    let mult = rw.table();
    let one = Scalar::one(l);
    let (e, f, k, kinv) = (idx(0, 1, 0), idx(1, 0, 0), idx(0, 0, 1), idx(0, 0, l - 1));

    // Δ(F^m E^n K^j) = Δ(F)^m Δ(E)^n Δ(K)^j
    let delta_e: Pairs = vec![(0, e, one.clone()), (e, k, one.clone())];
    let delta_f: Pairs = vec![(kinv, f, one.clone()), (f, 0, one.clone())];
    let mut coproduct: Vec<Pairs> = vec![Vec::new(); dim];
    let mut fm: Pairs = vec![(0, 0, one.clone())];
    for m in 0..l {
        if m > 0 {
            fm = tensor_mul(&mult, dim, &fm, &delta_f);
        }
        let mut fe = fm.clone();
        for n in 0..l {
            if n > 0 {
                fe = tensor_mul(&mult, dim, &fe, &delta_e);
            }
            for j in 0..l {
                coproduct[idx(m, n, j) as usize] = fe
                    .iter()
                    .map(|(a, b, c)| (rw.times_k(*a, j), rw.times_k(*b, j), c.clone()))
                    .collect();
            }
        }
    }

    // S(F^m E^n K^j) = K^{−j} S(E)^n S(F)^m, and likewise for S⁻¹ with
    // S⁻¹(E) = −K⁻¹E, S⁻¹(F) = −FK, S⁻¹(K) = K⁻¹
    let mut acc = Dense::new(dim);
    let anti = |s_e: Terms, s_f: Terms, acc: &mut Dense| -> Vec<Terms> {
        let mut pe = vec![vec![(0u32, one.clone())]];
        let mut pf = vec![vec![(0u32, one.clone())]];
        for _ in 1..l {
            pe.push(mul_terms(&mult, dim, pe.last().unwrap(), &s_e, acc));
            pf.push(mul_terms(&mult, dim, pf.last().unwrap(), &s_f, acc));
        }
        let mut out = vec![Vec::new(); dim];
        for m in 0..l {
            for n in 0..l {
                let ef = mul_terms(&mult, dim, &pe[n as usize], &pf[m as usize], acc);
                for j in 0..l {
                    let kj = vec![(idx(0, 0, l - j), one.clone())];
                    out[idx(m, n, j) as usize] = mul_terms(&mult, dim, &kj, &ef, acc);
                }
            }
        }
        out
    };
    let neg = -&one;
    let antipode = anti(
        mul_terms(
            &mult,
            dim,
            &vec![(e, neg.clone())],
            &vec![(kinv, one.clone())],
            &mut acc,
        ),
        mul_terms(
            &mult,
            dim,
            &vec![(k, neg.clone())],
            &vec![(f, one.clone())],
            &mut acc,
        ),
        &mut acc,
    );
    let antipode_inv = anti(
        mul_terms(
            &mult,
            dim,
            &vec![(kinv, neg.clone())],
            &vec![(e, one.clone())],
            &mut acc,
        ),
        mul_terms(
            &mult,
            dim,
            &vec![(f, neg.clone())],
            &vec![(k, one.clone())],
            &mut acc,
        ),
        &mut acc,
    );

    let labels = (0..dim)
        .map(|i| monomial_label(PbwIndex::from_index(i, l)))
        .collect();
    let counit = (0..dim)
        .map(|i| {
            if i < l as usize {
                one.clone()
            } else {
                Scalar::zero(l)
            }
        })
        .collect();
    let mut h = HopfStructure::with_antipode_inverse(
        StructureData {
            order: l,
            labels,
            mult,
            unit: vec![(0, one.clone())],
            counit,
            coproduct,
            antipode,
        },
        antipode_inv,
    )?;
    let gens = [
        h.basis(e as usize),
        h.basis(f as usize),
        h.basis(k as usize),
    ];
    h.set_generators(&gens)?;
    Ok(h)
}

fn monomial_label(p: PbwIndex) -> String {
    let part = |s: &str, e: u32| match e {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{e}"),
    };
    let s = [part("F", p.m), part("E", p.n), part("K", p.j)].concat();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// R = (1/l) Σ_{m,i,j} (q − q⁻¹)^m/[m]! q^{m(m−1)/2 + 2m(i−j) − 2ij} E^mK^i ⊗ F^mK^j
pub fn r_matrix(h: &HopfStructure) -> Result<TensorElement> {
    let l = h.order();
    let mut terms = Vec::new();
    let inv_l = Scalar::from_rational(
        l,
        &crate::scalars::Rational::new(1.into(), (l as i64).into()),
    );
    let d = &q(l, 1) - &q(l, -1);
    for m in 0..l {
        let pre = &(&d.pow(m as i64)? / &q_factorial(l, m)?) * &inv_l;
        for i in 0..l {
            for j in 0..l {
                let (mi, ii, ji) = (m as i64, i as i64, j as i64);
                let e = (mi * (mi - 1) / 2 + 2 * mi * (ii - ji) - 2 * ii * ji).rem_euclid(l as i64);
                let a = PbwIndex { m: 0, n: m, j: i }.index(l);
                let b = PbwIndex { m, n: 0, j }.index(l);
                terms.push((vec![a, b], &pre * &q(l, e)));
            }
        }
    }
    h.tensor_from_terms(2, &terms)
}

/// θ = (1/l)(Σ_s q^{s²}) Σ_{m,j} (q⁻¹ − q)^m/[m]! q^{−m/2 + mj + (j+1)²/2} F^mE^mK^j,
/// with q^{1/2} = q^{(l+1)/2}, evaluated as written.
///
/// Its counit is the Legendre symbol (−2/l): the sum over j is a Gauss sum
/// twisted by (l+1)/2, so for l ≡ 5, 7 mod 8 the expression is −θ.
pub fn ribbon_element_literal(h: &HopfStructure) -> Result<AlgebraElement> {
    let l = h.order();
    let gauss = (0..l as i64).fold(Scalar::zero(l), |acc, s| &acc + &q(l, s * s));
    let inv_l = Scalar::from_rational(
        l,
        &crate::scalars::Rational::new(1.into(), (l as i64).into()),
    );
    let pre = &gauss * &inv_l;
    let d = &q(l, -1) - &q(l, 1);
    let mut terms = Vec::new();
    for m in 0..l {
        let c = &(&d.pow(m as i64)? / &q_factorial(l, m)?) * &pre;
        for j in 0..l {
            let (mi, ji) = (m as i64, j as i64);
            // exponent in half-units: −m + 2mj + (j+1)²
            let half = -mi + 2 * mi * ji + (ji + 1) * (ji + 1);
            terms.push((
                PbwIndex { m, n: m, j }.index(l),
                &c * &Scalar::half_power(l, half),
            ));
        }
    }
    h.element(&terms)
}

/// The ribbon element: the closed formula rescaled so that ε(θ) = 1.
pub fn ribbon_element(h: &HopfStructure) -> Result<AlgebraElement> {
    let t = ribbon_element_literal(h)?;
    let e = h.counit(&t)?;
    if e.is_zero() {
        return Err(Error::RibbonInconsistent("ε(θ) = 0".into()));
    }
    Ok(t.scale(&e.inverse()?))
}

/// λ(F^mE^nK^j) = δ_{m,l−1}δ_{n,l−1}δ_{j,1}.
pub fn pbw_integral(h: &HopfStructure) -> Functional {
    let l = h.order();
    let mut values = vec![Scalar::zero(l); h.dim()];
    values[PbwIndex {
        m: l - 1,
        n: l - 1,
        j: 1,
    }
    .index(l)] = Scalar::one(l);
    h.functional(values).expect("length matches")
}

/// Λ = F^{l−1}E^{l−1} Σ_j K^j.
pub fn pbw_cointegral(h: &HopfStructure) -> AlgebraElement {
    let l = h.order();
    let terms: Vec<(usize, Scalar)> = (0..l)
        .map(|j| {
            (
                PbwIndex {
                    m: l - 1,
                    n: l - 1,
                    j,
                }
                .index(l),
                Scalar::one(l),
            )
        })
        .collect();
    h.element(&terms).expect("valid basis")
}

pub fn generator(h: &HopfStructure, name: &str) -> Result<AlgebraElement> {
    let l = h.order();
    let p = match name {
        "E" => PbwIndex { m: 0, n: 1, j: 0 },
        "F" => PbwIndex { m: 1, n: 0, j: 0 },
        "K" => PbwIndex { m: 0, n: 0, j: 1 },
        _ => return Err(Error::InvalidInput(format!("unknown generator {name:?}"))),
    };
    h.basis_checked(p.index(l))
}

/// The fully populated ribbon data. λ₀ is the integral from the closed
/// formula; it is rescaled jointly with Λ = f_{R^τR}(λ) so that λ(Λ) = 1,
/// and both must stay proportional to the closed formulas.
pub fn build_uqsl2(l: u32) -> Result<RibbonHopfData> {
    let h = uqsl2_structure(l)?;
    let r = r_matrix(&h)?;
    let theta = ribbon_element(&h)?;
    let lambda0 = pbw_integral(&h);
    let data = normalize_integral_data(&h, &r, &lambda0, Some(&theta))?;
    let co = pbw_cointegral(&h);
    let p = PbwIndex {
        m: l - 1,
        n: l - 1,
        j: 0,
    }
    .index(l);
    let ratio = data.cointegral.coefficient(p);
    if ratio.is_zero() || co.scale(&ratio) != data.cointegral {
        return Err(Error::Structural(
            "f_{R^τR}(λ) is not proportional to the closed-form cointegral".into(),
        ));
    }
    let k2 = h.basis(
        PbwIndex {
            m: 0,
            n: 0,
            j: 2 % l,
        }
        .index(l),
    );
    if data.g != k2 {
        return Err(Error::Structural("comodulus differs from K²".into()));
    }
    RibbonHopfData::new(h, r, theta, data)
}

#[cfg(test)]
mod tests;
