use super::*;
use proptest::prelude::*;

fn int(l: u32, n: i64) -> Scalar {
    Scalar::from_integer(l, n)
}

/// Taft algebra: g^n = 1, x^n = 0, xg = q·gx for q a primitive n-th root of
/// unity; basis g^a x^b at index a + n·b. Δ and S are generated from
/// Δg = g⊗g, Δx = x⊗1 + g⊗x, S(g) = g⁻¹, S(x) = −g⁻¹x.
pub(crate) fn taft(n: usize, q: &Scalar) -> HopfStructure {
    let l = q.order();
    let idx = |a: usize, b: usize| (a % n + n * b) as u32;
    let mut mult = vec![Vec::new(); n * n * n * n];
    for i in 0..n * n {
        for j in 0..n * n {
            let (a, b, c, d) = (i % n, i / n, j % n, j / n);
            if b + d < n {
                mult[i * n * n + j] = vec![(idx(a + c, b + d), q.pow((b * c) as i64).unwrap())];
            }
        }
    }
    let dim = n * n;
    let mul = |x: &[(u32, Scalar)], y: &[(u32, Scalar)]| {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &mult[*i as usize * dim + *j as usize] {
                    acc.add(*k, &(a * b) * c);
                }
            }
        }
        acc.finish()
    };
    let tmul = |x: &[(u32, u32, Scalar)], y: &[(u32, u32, Scalar)]| {
        let mut out: Vec<(u32, u32, Scalar)> = Vec::new();
        for (i1, i2, a) in x {
            for (j1, j2, b) in y {
                for (k1, c1) in &mult[*i1 as usize * dim + *j1 as usize] {
                    for (k2, c2) in &mult[*i2 as usize * dim + *j2 as usize] {
                        let v = &(&(a * b) * c1) * c2;
                        match out.iter_mut().find(|t| t.0 == *k1 && t.1 == *k2) {
                            Some(t) => t.2 += &v,
                            None => out.push((*k1, *k2, v)),
                        }
                    }
                }
            }
        }
        out.retain(|t| !t.2.is_zero());
        out
    };
    let one = int(l, 1);
    let dg = vec![(idx(1, 0), idx(1, 0), one.clone())];
    let dx = vec![
        (idx(0, 1), idx(0, 0), one.clone()),
        (idx(1, 0), idx(0, 1), one.clone()),
    ];
    let sg = vec![(idx(n - 1, 0), one.clone())];
    let sx = vec![(idx(n - 1, 1), -&one)];
    let mut coproduct = Vec::new();
    let mut antipode = Vec::new();
    for i in 0..dim {
        let (a, b) = (i % n, i / n);
        let mut d = vec![(0u32, 0u32, one.clone())];
        let mut s = vec![(0u32, one.clone())];
        for _ in 0..a {
            d = tmul(&d, &dg);
            s = mul(&sg, &s);
        }
        for _ in 0..b {
            d = tmul(&d, &dx);
            s = mul(&sx, &s);
        }
        coproduct.push(d);
        antipode.push(s);
    }
    let labels = (0..dim)
        .map(|i| format!("g^{}x^{}", i % n, i / n))
        .collect();
    let counit = (0..dim)
        .map(|i| if i < n { one.clone() } else { int(l, 0) })
        .collect();
    HopfStructure::new(StructureData {
        order: l,
        labels,
        mult,
        unit: vec![(0, one)],
        counit,
        coproduct,
        antipode,
    })
    .unwrap()
}

/// Sweedler's four-dimensional algebra (Taft algebra with q = −1).
pub(crate) fn sweedler(l: u32) -> HopfStructure {
    taft(2, &int(l, -1))
}

fn element_strategy(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, dim)
}

fn elem(h: &HopfStructure, c: &[i64]) -> AlgebraElement {
    let t: Vec<(usize, Scalar)> = c
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, int(h.order(), v)))
        .collect();
    h.element(&t).unwrap()
}

fn func(h: &HopfStructure, c: &[i64]) -> Functional {
    h.functional(c.iter().map(|&v| int(h.order(), v)).collect())
        .unwrap()
}

#[test]
fn group_algebra_passes_axioms() {
    let h = cyclic_group_algebra(4, 3).unwrap();
    let rep = verify_axioms(&h, None, None);
    assert!(rep.passed(), "{rep}");
    assert_eq!(h.antipode_power(&h.basis(1), 1).unwrap(), h.basis(3));
}

#[test]
fn sweedler_passes_axioms_and_is_not_unimodular() {
    let h = sweedler(3);
    let rep = verify_axioms(&h, None, None);
    assert!(rep.passed(), "{rep}");
    let lam = h.right_integral_space();
    assert_eq!(lam.len(), 1);
    let co = h.left_cointegral_space();
    assert_eq!(co.len(), 1);
    let g = h.comodulus(&lam[0]).unwrap();
    let alpha = h.modulus(&co[0]).unwrap();
    assert_ne!(alpha, h.counit_functional());
    // g is grouplike and S² = Ad(g)
    assert_eq!(h.delta(&g), h.tensor_product(&[&g, &g]).unwrap());
    let x = h.basis(2);
    assert_eq!(h.mul(&h.s_pow(&x, 2), &g), h.mul(&g, &x));
}

#[test]
fn broken_antipode_is_reported() {
    let h = sweedler(3);
    let ident: Vec<Vec<(u32, Scalar)>> = (0..4).map(|i| vec![(i as u32, int(3, 1))]).collect();
    let bad = h.with_antipode_replaced(ident).unwrap();
    let rep = verify_axioms(&bad, None, None);
    assert!(!rep.passed());
    assert!(!rep.get("antipode").unwrap().passed);
    assert!(rep.get("associativity").unwrap().passed);
}

#[test]
fn iterated_coproduct_edges() {
    let h = sweedler(5);
    let x = h.basis(2);
    let t1 = h.iterated_coproduct(&x, 1).unwrap();
    assert_eq!(h.tensor_to_element(&t1).unwrap(), x);
    let t3 = h.iterated_coproduct(&x, 3).unwrap();
    let d = h.delta(&x);
    assert_eq!(h.coproduct_at(&d, 0).unwrap(), t3);
    assert_eq!(h.coproduct_at(&d, 1).unwrap(), t3);
}

#[test]
fn trivial_r_has_rank_one() {
    let h = sweedler(3);
    let r = h.tensor_product(&[&h.one(), &h.one()]).unwrap();
    assert_eq!(factorizability_rank(&h, &r).unwrap(), 1);
    // f_R(ε) = 1 for any R of the form 1⊗1
    assert_eq!(
        drinfeld_map(&h, &r, &h.counit_functional()).unwrap(),
        h.one()
    );
}

#[test]
fn mismatched_algebras_are_rejected() {
    let a = sweedler(3);
    let b = sweedler(3);
    assert!(matches!(
        a.multiply(&a.one(), &b.one()),
        Err(crate::error::Error::AlgebraMismatch)
    ));
    assert!(a.basis_checked(4).is_err());
}

#[test]
fn double_of_z2_is_factorizable_quasitriangular() {
    let h = cyclic_group_algebra(2, 3).unwrap();
    let (d, r) = drinfeld_double(&h).unwrap();
    assert_eq!(d.dim(), 4);
    let rep = verify_axioms(&d, Some(&r), None);
    assert!(rep.passed(), "{rep}");
    assert_eq!(factorizability_rank(&d, &r).unwrap(), 4);
    assert_eq!(
        drinfeld_map(&d, &r, &d.counit_functional()).unwrap(),
        d.one()
    );
}

#[test]
fn double_of_z3_passes_axioms() {
    let h = cyclic_group_algebra(3, 3).unwrap();
    let (d, r) = drinfeld_double(&h).unwrap();
    assert_eq!(d.dim(), 9);
    let rep = verify_axioms(&d, Some(&r), None);
    assert!(rep.passed(), "{rep}");
    assert!(rep.get("factorizable").unwrap().passed);
}

#[test]
fn double_of_four_dimensional_algebras_is_factorizable() {
    for h in [cyclic_group_algebra(4, 3).unwrap(), sweedler(3)] {
        let (d, r) = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 16);
        assert_eq!(factorizability_rank(&d, &r).unwrap(), 16);
    }
}

#[test]
fn double_of_sweedler_passes_axioms() {
    let h = sweedler(3);
    let (d, r) = drinfeld_double(&h).unwrap();
    let rep = verify_axioms(&d, Some(&r), None);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn grouplikes_and_characters() {
    let h = cyclic_group_algebra(3, 3).unwrap();
    assert_eq!(grouplike_elements(&h).len(), 3);
    assert_eq!(grouplike_functionals(&h).len(), 3);
    let s = sweedler(3);
    assert_eq!(grouplike_elements(&s).len(), 2);
    assert_eq!(grouplike_functionals(&s).len(), 2);
    let crit = ribbon_criterion(&h).unwrap();
    assert!(crit.holds());
    // D(H) for the Taft algebra of even order has no ribbon element: G(H)
    // has no square root of the comodulus
    let crit = ribbon_criterion(&s).unwrap();
    assert!(!crit.holds());
    let t = taft(3, &Scalar::zeta_pow(3, 1));
    assert!(verify_axioms(&t, None, None).passed());
    let crit = ribbon_criterion(&t).unwrap();
    assert_eq!((crit.grouplikes, crit.characters), (3, 3));
    assert!(crit.holds());
}

#[test]
fn json_round_trip() {
    let h = sweedler(3);
    let v = structure_to_json(&h, None, None);
    let f = structure_from_json(&v.to_string()).unwrap();
    assert_eq!(structure_to_json(&f.structure, None, None), v);
    let (_, rep) = load_structure(&v.to_string()).unwrap();
    assert!(rep.passed());
    let bad = v.to_string().replace("[0,0,0,", "[0,0,7,");
    assert!(structure_from_json(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_multiplicative(a in element_strategy(4), b in element_strategy(4)) {
        let h = sweedler(7);
        let (x, y) = (elem(&h, &a), elem(&h, &b));
        let lhs = h.delta(&h.mul(&x, &y));
        let rhs = h.tmul(&h.delta(&x), &h.delta(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_antimultiplicative(a in element_strategy(4), b in element_strategy(4)) {
        let h = sweedler(3);
        let (x, y) = (elem(&h, &a), elem(&h, &b));
        prop_assert_eq!(h.s(&h.mul(&x, &y)), h.mul(&h.s(&y), &h.s(&x)));
        prop_assert_eq!(h.s_inv(&h.s(&x)), x.clone());
        prop_assert_eq!(h.antipode_power(&x, 0).unwrap(), x);
    }

    #[test]
    fn drinfeld_map_homomorphism(a in element_strategy(4), b in element_strategy(4)) {
        let base = cyclic_group_algebra(2, 3).unwrap();
        let (d, r) = drinfeld_double(&base).unwrap();
        let (p, q) = (func(&d, &a), func(&d, &b));
        let pq = d.convolve(&p, &q).unwrap();
        let lhs = drinfeld_map(&d, &r, &pq).unwrap();
        let rhs = d.mul(&drinfeld_map(&d, &r, &p).unwrap(), &drinfeld_map(&d, &r, &q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn drinfeld_map_coalgebra_antihomomorphism(a in element_strategy(4)) {
        let base = cyclic_group_algebra(2, 3).unwrap();
        let (d, r) = drinfeld_double(&base).unwrap();
        let p = func(&d, &a);
        let lhs = d.delta(&drinfeld_map(&d, &r, &p).unwrap());
        // Δ(f_R(p)) = Σ f_R(p₂) ⊗ f_R(p₁), with p₁⊗p₂ expanded over the dual basis:
        // p(xy) = Σ p₁(x)p₂(y) so the coefficient pairs come from m.
        let n = d.dim();
        let mut rhs = d.empty_tensor(2);
        let images: Vec<AlgebraElement> = (0..n)
            .map(|i| {
                let mut v = vec![int(3, 0); n];
                v[i] = int(3, 1);
                drinfeld_map(&d, &r, &d.functional(v).unwrap()).unwrap()
            })
            .collect();
        for i in 0..n as u32 {
            for j in 0..n as u32 {
                let c = p.eval(&d.from_terms(d.mul_basis(i, j).to_vec()));
                if c.is_zero() { continue; }
                let t = d.tensor_product(&[&images[j as usize], &images[i as usize]]).unwrap().scale(&c);
                rhs = rhs.add(&t).unwrap();
            }
        }
        prop_assert_eq!(lhs, rhs);
    }
}
