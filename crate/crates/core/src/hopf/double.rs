//! Drinfeld double D(H) = H^{*cop} ⋈ H on the basis e^i ⊗ b_a, with
//!
//!   (f⊗a)(f′⊗b) = Σ f·f′(S⁻¹(a₃) · a₁) ⊗ a₂b,
//!   Δ(f⊗a) = Σ (f₂⊗a₁) ⊗ (f₁⊗a₂),   ε(f⊗a) = f(1)ε(a),
//!   S(f⊗a) = (ε⊗S(a))(f∘S⁻¹⊗1),     R = Σ_i (ε⊗b_i) ⊗ (e^i⊗1),
//!
//! where f′(x·y) denotes the functional h ↦ f′(x h y) and H* carries the
//! convolution product.

use super::axioms::verify_axioms;
use super::{
    Accumulator, AlgebraElement, Functional, HopfStructure, Scalar, StructureData, TensorElement,
    Terms,
};
use crate::error::{Error, Result};
use crate::scalars::CyclotomicScalar;

/// Dual-basis structure of H*: products, unit, coproduct.
struct Dual<'a> {
    h: &'a HopfStructure,
}

impl Dual<'_> {
    /// e^i · e^j = Σ_k Δ(b_k)_{ij} e^k
    fn mul(&self, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> Terms {
        let h = self.h;
        let mut acc = Accumulator::new();
        for k in 0..h.dim as u32 {
            let mut s: Option<Scalar> = None;
            for (i, j, c) in h.coproduct_basis(k) {
                let xi = x.iter().find(|t| t.0 == *i);
                let yj = y.iter().find(|t| t.0 == *j);
                if let (Some((_, a)), Some((_, b))) = (xi, yj) {
                    let v = &(a * b) * c;
                    s = Some(match s {
                        Some(p) => &p + &v,
                        None => v,
                    });
                }
            }
            if let Some(s) = s {
                acc.add(k, s);
            }
        }
        acc.finish()
    }

    /// ε as an element of H*.
    fn unit(&self) -> Terms {
        let h = self.h;
        (0..h.dim as u32)
            .filter(|&i| !h.counit_basis(i).is_zero())
            .map(|i| (i, h.counit_basis(i).clone()))
            .collect()
    }

    /// Functional h ↦ f(x h y) for f = e^j, as dual-basis terms.
    fn sandwich(&self, j: u32, x: u32, y: u32) -> Terms {
        let h = self.h;
        let mut acc = Accumulator::new();
        for hb in 0..h.dim as u32 {
            for (k, c) in h.mul_basis(x, hb) {
                for (m, d) in h.mul_basis(*k, y) {
                    if *m == j {
                        acc.add(hb, c * d);
                    }
                }
            }
        }
        acc.finish()
    }
}

fn pair(dim: usize, i: u32, a: u32) -> u32 {
    (i as usize * dim + a as usize) as u32
}

/// Builds D(H) and its canonical R-matrix. The input must pass the Hopf axioms.
pub fn drinfeld_double(h: &HopfStructure) -> Result<(HopfStructure, TensorElement)> {
    let rep = verify_axioms(h, None, None);
    if !rep.passed() {
        return Err(Error::Axioms(format!(
            "input algebra fails: {}",
            rep.failures()[0].name
        )));
    }
    let n = h.dim;
    let l = h.order;
    let dual = Dual { h };
    let one = CyclotomicScalar::one(l);
    let dn = n * n;
    let labels: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |a| (i, a)))
        .map(|(i, a)| format!("e{}#{}", i, h.labels[a]))
        .collect();

    // Δ²(b_a) legs
    let delta2: Vec<Vec<(u32, u32, u32, Scalar)>> = (0..n)
        .map(|a| {
            let t = h.iterated_coproduct(&h.basis(a), 3).expect("same algebra");
            let mut v: Vec<_> = t
                .terms
                .into_iter()
                .map(|(k, c)| (k[0], k[1], k[2], c))
                .collect();
            v.sort_by_key(|x| (x.0, x.1, x.2));
            v
        })
        .collect();

    // products (e^i⊗b_a)(e^j⊗b_c)
    let mut mult: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); dn * dn];
    let mut sandwich_cache = rustc_hash::FxHashMap::default();
    for i in 0..n as u32 {
        for a in 0..n as u32 {
            for j in 0..n as u32 {
                for c in 0..n as u32 {
                    let mut acc = Accumulator::new();
                    for (a1, a2, a3, coef) in &delta2[a as usize] {
                        for (s3, sc) in h.antipode_inv_basis(*a3) {
                            let f2 = sandwich_cache
                                .entry((j, *s3, *a1))
                                .or_insert_with(|| dual.sandwich(j, *s3, *a1))
                                .clone();
                            if f2.is_empty() {
                                continue;
                            }
                            let f = dual.mul(&[(i, one.clone())], &f2);
                            let w = coef * sc;
                            for (k, kc) in h.mul_basis(*a2, c) {
                                for (fi, fc) in &f {
                                    acc.add(pair(n, *fi, *k), &(&w * kc) * fc);
                                }
                            }
                        }
                    }
                    mult[pair(n, i, a) as usize * dn + pair(n, j, c) as usize] = acc.finish();
                }
            }
        }
    }

    let unit: Vec<(u32, Scalar)> = {
        let mut acc = Accumulator::new();
        for (i, c) in dual.unit() {
            for (a, d) in h.unit_terms() {
                acc.add(pair(n, i, *a), &c * d);
            }
        }
        acc.finish()
    };

    let unit_h = h.one();
    let counit: Vec<Scalar> = (0..n)
        .flat_map(|i| (0..n).map(move |a| (i, a)))
        .map(|(i, a)| &unit_h.coefficient(i) * h.counit_basis(a as u32))
        .collect();

    // Δ(e^i⊗b_a) = Σ m(x,y)_i Δ(b_a) (e^y⊗a₁) ⊗ (e^x⊗a₂)
    let mut coproduct: Vec<Vec<(u32, u32, Scalar)>> = vec![Vec::new(); dn];
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            for (i, m) in h.mul_basis(x, y) {
                for a in 0..n as u32 {
                    for (a1, a2, d) in h.coproduct_basis(a) {
                        coproduct[pair(n, *i, a) as usize].push((
                            pair(n, y, *a1),
                            pair(n, x, *a2),
                            m * d,
                        ));
                    }
                }
            }
        }
    }

    let data_mult = mult.clone();
    let mul_terms = |x: &[(u32, Scalar)], y: &[(u32, Scalar)]| -> Terms {
        let mut acc = Accumulator::new();
        for (p, a) in x {
            for (q, b) in y {
                let ab = a * b;
                for (k, c) in &data_mult[*p as usize * dn + *q as usize] {
                    acc.add(*k, &ab * c);
                }
            }
        }
        acc.finish()
    };

    // S(e^i⊗b_a) = (ε⊗S(b_a)) (e^i∘S⁻¹ ⊗ 1)
    let eps_terms = dual.unit();
    let mut antipode = Vec::with_capacity(dn);
    for i in 0..n as u32 {
        for a in 0..n as u32 {
            let mut left = Accumulator::new();
            for (e, ec) in &eps_terms {
                for (sa, sc) in h.antipode_basis(a) {
                    left.add(pair(n, *e, *sa), ec * sc);
                }
            }
            // e^i∘S⁻¹ = Σ_k S⁻¹(b_k)_i e^k
            let mut right = Accumulator::new();
            for k in 0..n as u32 {
                for (m, c) in h.antipode_inv_basis(k) {
                    if *m == i {
                        for (u, uc) in h.unit_terms() {
                            right.add(pair(n, k, *u), c * uc);
                        }
                    }
                }
            }
            antipode.push(mul_terms(&left.finish(), &right.finish()));
        }
    }

    let d = HopfStructure::new(StructureData {
        order: l,
        labels,
        mult,
        unit,
        counit,
        coproduct,
        antipode,
    })?;

    // R = Σ_i (ε⊗b_i) ⊗ (e^i⊗1)
    let mut r = d.empty_tensor(2);
    for i in 0..n as u32 {
        for (e, ec) in &eps_terms {
            for (u, uc) in h.unit_terms() {
                let mut k = super::Key::new();
                k.push(pair(n, *e, i));
                k.push(pair(n, i, *u));
                r.insert_add(k, ec * uc);
            }
        }
    }
    Ok((d, r))
}

/// Roots of unity of Q(ζ_l) together with 0: the values a character can
/// take on grouplikes and nilpotents.
fn candidate_values(l: u32) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(l)];
    for k in 0..l as i64 {
        let z = Scalar::zeta_pow(l, k);
        v.push(z.clone());
        v.push(-z);
    }
    v
}

/// Characters (algebra maps to the field) of the algebra with structure
/// constants `mul`, found by backtracking over values in {0, ±ζ^k} on each
/// basis element. Complete when every character takes such values on the
/// basis (true for group algebras and their duals); otherwise a subset.
fn characters(
    order: u32,
    dim: usize,
    mul: &dyn Fn(u32, u32) -> Terms,
    unit: &Terms,
) -> Vec<Vec<Scalar>> {
    let cands = candidate_values(order);
    let products: Vec<Vec<Terms>> = (0..dim as u32)
        .map(|i| (0..dim as u32).map(|j| mul(i, j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut vals: Vec<Option<Scalar>> = vec![None; dim];
    fn eval(t: &Terms, vals: &[Option<Scalar>], order: u32) -> Option<Scalar> {
        let mut s = Scalar::zero(order);
        for (k, c) in t {
            s += &(c * vals[*k as usize].as_ref()?);
        }
        Some(s)
    }
    fn consistent(
        i: usize,
        vals: &[Option<Scalar>],
        products: &[Vec<Terms>],
        unit: &Terms,
        order: u32,
    ) -> bool {
        if let Some(u) = eval(unit, vals, order) {
            if !u.is_one() {
                return false;
            }
        }
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                let (Some(va), Some(vb)) = (&vals[a], &vals[b]) else {
                    continue;
                };
                if let Some(p) = eval(&products[a][b], vals, order) {
                    if p != va * vb {
                        return false;
                    }
                }
            }
        }
        // products whose support just became fully assigned
        for a in 0..=i {
            for b in 0..=i {
                if products[a][b].iter().any(|(k, _)| *k as usize == i) {
                    if let (Some(p), Some(va), Some(vb)) =
                        (eval(&products[a][b], vals, order), &vals[a], &vals[b])
                    {
                        if p != va * vb {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn go(
        i: usize,
        dim: usize,
        cands: &[Scalar],
        vals: &mut Vec<Option<Scalar>>,
        products: &[Vec<Terms>],
        unit: &Terms,
        order: u32,
        out: &mut Vec<Vec<Scalar>>,
    ) {
        if i == dim {
            // final full check
            for a in 0..dim {
                for b in 0..dim {
                    let p = eval(&products[a][b], vals, order).unwrap();
                    if p != (vals[a].as_ref().unwrap() * vals[b].as_ref().unwrap()) {
                        return;
                    }
                }
            }
            out.push(vals.iter().map(|v| v.clone().unwrap()).collect());
            return;
        }
        for c in cands {
            vals[i] = Some(c.clone());
            if consistent(i, vals, products, unit, order) {
                go(i + 1, dim, cands, vals, products, unit, order, out);
            }
        }
        vals[i] = None;
    }
    go(0, dim, &cands, &mut vals, &products, unit, order, &mut out);
    out
}

/// Grouplike elements of H (Δx = x⊗x, ε(x) = 1), as characters of H*.
pub fn grouplike_elements(h: &HopfStructure) -> Vec<AlgebraElement> {
    let dual = Dual { h };
    let unit = dual.unit();
    let mul = |i: u32, j: u32| dual.mul(&[(i, h.one_scalar())], &[(j, h.one_scalar())]);
    let chars = characters(h.order, h.dim, &mul, &unit);
    chars
        .into_iter()
        .map(|v| {
            let terms = v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32, c))
                .collect();
            h.from_terms(terms)
        })
        .filter(|x| h.delta(x) == h.tensor_product(&[x, x]).unwrap() && h.eps(x).is_one())
        .collect()
}

/// Grouplike functionals of H, i.e. its characters.
pub fn grouplike_functionals(h: &HopfStructure) -> Vec<Functional> {
    let mul = |i: u32, j: u32| h.mul_basis(i, j).to_vec();
    let chars = characters(h.order, h.dim, &mul, &h.unit_terms().to_vec());
    chars
        .into_iter()
        .map(|values| Functional { alg: h.id, values })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RibbonCriterion {
    pub grouplikes: usize,
    pub characters: usize,
    /// (l, β) satisfying l² = g, β² = α and the S² identity, if any.
    pub witness: Option<(AlgebraElement, Functional)>,
}

impl RibbonCriterion {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

/// Kauffman–Radford criterion for D(H) to admit a ribbon element: some
/// grouplike l and character β of H with l² = g, β² = α and
/// S²(h) = l((β⁻¹⊗id⊗β)Δ²(h))l⁻¹ for all h, where g and α are the
/// comodulus and modulus of H.
pub fn ribbon_criterion(h: &HopfStructure) -> Result<RibbonCriterion> {
    let lam = h.right_integral_space();
    if lam.len() != 1 {
        return Err(Error::Structural(format!(
            "right integral space has dimension {}",
            lam.len()
        )));
    }
    let co = h.left_cointegral_space();
    if co.len() != 1 {
        return Err(Error::Structural(format!(
            "left cointegral space has dimension {}",
            co.len()
        )));
    }
    let g = h.comodulus(&lam[0])?;
    let alpha = h.modulus(&co[0])?;
    let gls = grouplike_elements(h);
    let chars = grouplike_functionals(h);
    let mut witness = None;
    'search: for l in &gls {
        if h.mul(l, l) != g {
            continue;
        }
        let l_inv = h.s(l);
        for beta in &chars {
            if h.convolve(beta, beta)? != alpha {
                continue;
            }
            let beta_inv = h.character_inverse(beta);
            let ok = (0..h.dim).all(|i| {
                let x = h.basis(i);
                let t = h.iterated_coproduct(&x, 3).unwrap();
                let t = h.contract_at(&t, 2, beta).unwrap();
                let t = h.contract_at(&t, 0, &beta_inv).unwrap();
                let mid = h.tensor_to_element(&t).unwrap();
                h.s_pow(&x, 2) == h.mul(&h.mul(l, &mid), &l_inv)
            });
            if ok {
                witness = Some((l.clone(), beta.clone()));
                break 'search;
            }
        }
    }
    Ok(RibbonCriterion {
        grouplikes: gls.len(),
        characters: chars.len(),
        witness,
    })
}

/// Group algebra C[Z/n] over Q(ζ_l), basis g^0..g^{n-1}.
pub fn cyclic_group_algebra(n: usize, l: u32) -> Result<HopfStructure> {
    crate::scalars::check_order(l)?;
    if n == 0 {
        return Err(Error::InvalidInput("group order must be positive".into()));
    }
    let one = Scalar::one(l);
    let mult = (0..n * n)
        .map(|ij| vec![((((ij / n) + (ij % n)) % n) as u32, one.clone())])
        .collect();
    HopfStructure::new(StructureData {
        order: l,
        labels: (0..n).map(|k| format!("g^{k}")).collect(),
        mult,
        unit: vec![(0, one.clone())],
        counit: vec![one.clone(); n],
        coproduct: (0..n as u32).map(|k| vec![(k, k, one.clone())]).collect(),
        antipode: (0..n)
            .map(|k| vec![(((n - k) % n) as u32, one.clone())])
            .collect(),
    })
}
