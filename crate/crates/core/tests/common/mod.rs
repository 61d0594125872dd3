// Shared oracles for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lensinv_core::hopf::{Functional, HopfStructure, RibbonHopfData, Scalar, TensorElement};
use lensinv_core::kuperberg::lens_indices;
use lensinv_core::scalars::field_degree;
use rand::rngs::StdRng;
use rand::Rng;

/// Right-hand side of the iterated-coproduct factorization of f_{R^τR}(p),
/// with R = Σ s_a ⊗ t_a:
///
///   Σ p(t_{a1}⋯t_{a(n−1)} t_c s_d s_{b(n−1)}⋯s_{b1}) s_{a1}t_{b1} ⊗ ⋯ ⊗ s_c t_d,
///
/// built one leg at a time by sandwiching p between the new t and s labels.
pub fn random_functional(hs: &HopfStructure, rng: &mut StdRng) -> Functional {
    let l = hs.order();
    let deg = field_degree(l).unwrap();
    let values = (0..hs.dim())
        .map(|_| {
            let c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-4..=4)).collect();
            Scalar::from_int_coefficients(l, &c).unwrap()
        })
        .collect();
    hs.functional(values).unwrap()
}

pub fn expanded_rhs(h: &RibbonHopfData, p: &Functional, n: usize) -> TensorElement {
    let hs = &h.structure;
    let r = h.r.sorted_terms();
    let mut state: BTreeMap<Vec<usize>, Functional> = BTreeMap::new();
    state.insert(vec![], p.clone());
    for _ in 1..n {
        let mut next: BTreeMap<Vec<usize>, Functional> = BTreeMap::new();
        for (key, phi) in &state {
            for (ka, ca) in &r {
                for (kb, cb) in &r {
                    let (sa, ta) = (hs.basis(ka[0] as usize), hs.basis(ka[1] as usize));
                    let (sb, tb) = (hs.basis(kb[0] as usize), hs.basis(kb[1] as usize));
                    let inner = hs.functional_sandwich(phi, &ta, &sb).scale(&(ca * cb));
                    if inner.is_zero() {
                        continue;
                    }
                    for (m, cm) in hs.multiply(&sa, &tb).unwrap().terms() {
                        let mut nk = key.clone();
                        nk.push(*m as usize);
                        let add = inner.scale(cm);
                        let slot = next.entry(nk).or_insert_with(|| hs.zero_functional());
                        *slot = slot.add(&add);
                    }
                }
            }
        }
        state = next;
    }
    let mut terms = Vec::new();
    for (key, phi) in &state {
        let mid = hs.monodromy_map(&h.r, phi).unwrap();
        for (m, cm) in mid.terms() {
            let mut nk = key.clone();
            nk.push(*m as usize);
            terms.push((nk, cm.clone()));
        }
    }
    hs.tensor_from_terms(n, &terms).unwrap()
}

/// N- and k-sequence invariants of L(p,q), checked from the raw sequences.
pub fn check_invariants(p: u64, q: u64) {
    let idx = lens_indices(p as i64, q as i64).unwrap();
    let n = &idx.n;
    let mut sorted = n.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (1..=p).collect::<Vec<_>>(), "L({p},{q}) N");
    for i in 0..p as usize {
        assert_eq!(n[i] + n[p as usize - 1 - i], p + 1, "L({p},{q}) N_i + N_j");
        assert_eq!(
            (n[i] + p - 1) % p,
            (n[0] - 1 + i as u64 * q) % p,
            "L({p},{q}) step"
        );
    }
    let k = &idx.k;
    assert_eq!((k[0], k[q as usize + 1]), (1, p + 1));
    if q % 2 == 1 {
        for i in 2..=q {
            assert_eq!(
                k[i as usize] + k[(q + 2 - i) as usize],
                p + 2,
                "L({p},{q}) k_{i}"
            );
        }
    } else {
        for j in 1..=q {
            assert_eq!(
                k[j as usize] + k[(q + 1 - j) as usize],
                p + 2,
                "L({p},{q}) k_{j}"
            );
        }
    }
}
