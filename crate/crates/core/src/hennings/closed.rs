//! Z_Henn(L(p,q) # conj L(p,q)) once the lower circle has been traded for
//! cointegral legs on the upper circle:
//!
//!   λ( S^{x_p}(Λ_{(N_p)}) ⋯ S^{x_1}(Λ_{(N_1)}) G^{p−q+1} ),
//!   x_n = −2n + 2m(n) (q odd),  x_n = −2n + 2 + 2m(n) (q even),
//!
//! with m(n) the block of n. The product is consumed from the right: the
//! state is the functional y ↦ λ(y · S^{x_j}(⋯) ⋯ S^{x_1}(⋯) G^{p−q+1}).

use crate::error::{Error, Result};
use crate::hopf::{RibbonHopfData, Scalar};
use crate::kuperberg::{lens_indices, normalize_lens, LensIndexData};

fn exponent(idx: &LensIndexData, n: u64) -> i64 {
    let m = idx.block(n) as i64;
    let n = n as i64;
    if idx.q % 2 == 1 {
        -2 * n + 2 * m
    } else {
        -2 * n + 2 + 2 * m
    }
}

pub fn z_henn_lens_closed(p: i64, q: i64, h: &RibbonHopfData, budget: usize) -> Result<Scalar> {
    let (pp, qq) = normalize_lens(p, q)?;
    let l = h.order();
    if pp == 1 {
        return Ok(Scalar::one(l));
    }
    if !h.is_unimodular() {
        return Err(Error::NotFactorizable(
            "modulus differs from the counit".into(),
        ));
    }
    let idx = lens_indices(p, q)?;
    let hs = &h.structure;
    let dim = hs.dim();
    let np = pp as usize;
    let t = hs.iterated_coproduct_budget(&h.cointegral, np, budget)?;

    // factor j (1-based from the right) is S^{x_j} applied to leg N_j
    let tables: Vec<_> = (1..=pp)
        .map(|n| hs.antipode_power_table(exponent(&idx, n)))
        .collect();
    let legs: Vec<usize> = (1..=pp).map(|n| idx.big_n(n) as usize - 1).collect();

    let ge = h.g_power(pp as i64 - qq as i64 + 1);
    let psi0: Vec<Scalar> = (0..dim)
        .map(|i| h.lambda.eval(&hs.mul(&hs.basis(i), ge)))
        .collect();

    let mut terms: Vec<(Vec<u32>, Scalar)> = t
        .sorted_terms()
        .into_iter()
        .map(|(k, c)| (legs.iter().map(|&leg| k[leg]).collect(), c))
        .collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));

    // psi_{j}(y) = psi_{j−1}(y · A_j)
    let pull = |psi: &[Scalar], a: &[(u32, Scalar)]| -> Vec<Scalar> {
        (0..dim as u32)
            .map(|i| {
                let mut s = Scalar::zero(l);
                for (y, cy) in a {
                    for (m, cm) in hs.mul_basis(i, *y) {
                        let v = &psi[*m as usize];
                        if !v.is_zero() {
                            s += &(&(cy * cm) * v);
                        }
                    }
                }
                s
            })
            .collect()
    };

    let last = np - 1;
    let mut stack: Vec<Vec<Scalar>> = vec![psi0];
    let mut prev: Option<&[u32]> = None;
    let mut total = Scalar::zero(l);
    for (key, c) in &terms {
        let common = match prev {
            Some(pk) => pk
                .iter()
                .zip(key.iter())
                .take(last)
                .take_while(|(a, b)| a == b)
                .count(),
            None => 0,
        };
        stack.truncate(common + 1);
        for d in common..last {
            let next = pull(&stack[d], &tables[d][key[d] as usize]);
            stack.push(next);
        }
        // the leftmost factor is evaluated directly: psi_{p−1}(A_p)
        let psi = &stack[last];
        let mut s = Scalar::zero(l);
        for (m, cm) in &tables[last][key[last] as usize] {
            let v = &psi[*m as usize];
            if !v.is_zero() {
                s += &(cm * v);
            }
        }
        if !s.is_zero() {
            total += &(&s * c);
        }
        prev = Some(key);
    }
    Ok(total)
}
