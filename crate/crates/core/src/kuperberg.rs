//! Lens-space index combinatorics and the Kuperberg invariant of a genus-one
//! Heegaard diagram of L(p,q) for a factorizable ribbon Hopf algebra:
//!
//!   Z_Kup = λ( S^{e_1}(Λ_{(N_1)}) ⋯ S^{e_p}(Λ_{(N_p)}) g^m ).

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{RibbonHopfData, Scalar};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensIndexData {
    pub p: u64,
    pub q: u64,
    /// p − [p/q]·q
    pub r: u64,
    pub n1: u64,
    /// N_1..N_p (stored 0-based: n[j-1] = N_j)
    pub n: Vec<u64>,
    /// k_0..k_{q+1}
    pub k: Vec<u64>,
}

impl LensIndexData {
    /// N_j for 1 ≤ j ≤ p.
    pub fn big_n(&self, j: u64) -> u64 {
        self.n[(j - 1) as usize]
    }

    /// The block index m with k_m ≤ n < k_{m+1}.
    pub fn block(&self, n: u64) -> u64 {
        (0..=self.q)
            .find(|&m| self.k[m as usize] <= n && n < self.k[m as usize + 1])
            .expect("1 ≤ n ≤ p")
    }

    /// Checks the invariants of the index sequences.
    pub fn check(&self) -> std::result::Result<(), String> {
        let (p, q) = (self.p, self.q);
        let mut seen = vec![false; p as usize + 1];
        for j in 1..=p {
            let v = self.big_n(j);
            if v < 1 || v > p || seen[v as usize] {
                return Err(format!("N is not a permutation of 1..{p}"));
            }
            seen[v as usize] = true;
            if !(v + p - ((self.n1 + (j - 1) * q) % p)).is_multiple_of(p) {
                return Err(format!("N_{j} ≢ N_1 + (j−1)q"));
            }
            if self.big_n(j) + self.big_n(p + 1 - j) != p + 1 {
                return Err(format!("N_{j} + N_{} ≠ p+1", p + 1 - j));
            }
        }
        if self.k.len() != q as usize + 2 || self.k[0] != 1 || self.k[q as usize + 1] != p + 1 {
            return Err("k must run from k_0 = 1 to k_{q+1} = p+1".into());
        }
        // k_1 = 1 when q is odd, so the first block is empty there
        let start = if q % 2 == 1 { 1 } else { 0 };
        if self.k[start..].windows(2).any(|w| w[0] >= w[1]) {
            return Err("k is not strictly increasing".into());
        }
        let kk = |i: u64| self.k[i as usize];
        if q % 2 == 1 {
            for i in 2..=q {
                if kk(i) + kk(q + 2 - i) != p + 2 {
                    return Err(format!("k_{i} + k_{} ≠ p+2", q + 2 - i));
                }
            }
        } else {
            for j in 1..=q {
                if kk(j) + kk(q + 1 - j) != p + 2 {
                    return Err(format!("k_{j} + k_{} ≠ p+2", q + 1 - j));
                }
            }
        }
        Ok(())
    }
}

/// Reduces q into (0, p) and validates coprimality.
pub fn normalize_lens(p: i64, q: i64) -> Result<(u64, u64)> {
    if p < 1 {
        return Err(Error::InvalidInput(format!("p must be positive, got {p}")));
    }
    let qr = q.rem_euclid(p);
    if p == 1 {
        return Ok((1, 0));
    }
    if qr == 0 {
        return Err(Error::InvalidInput(format!("q ≡ 0 mod p for L({p},{q})")));
    }
    if p.gcd(&qr) != 1 {
        return Err(Error::InvalidInput(format!("gcd({p},{q}) ≠ 1")));
    }
    Ok((p as u64, qr as u64))
}

pub fn lens_indices(p: i64, q: i64) -> Result<LensIndexData> {
    let (p, q) = normalize_lens(p, q)?;
    if p == 1 {
        return Err(Error::InvalidInput(
            "L(1,0) = S³ has no genus-one index data".into(),
        ));
    }
    let n1 = if q % 2 == 1 {
        q.div_ceil(2)
    } else {
        (p + q).div_ceil(2)
    };
    let n = (1..=p).map(|j| (n1 - 1 + (j - 1) * q) % p + 1).collect();
    let mut k = vec![1];
    for i in 1..=q {
        // q odd: k_i = 1 + [p(i−1)/q + (q−1)/2q]; q even: k_i = 1 + [p(i−½)/q + (q−1)/2q]
        let num = if q % 2 == 1 {
            2 * p * (i - 1) + q - 1
        } else {
            p * (2 * i - 1) + q - 1
        };
        k.push(1 + num / (2 * q));
    }
    k.push(p + 1);
    let data = LensIndexData {
        p,
        q,
        r: p - (p / q) * q,
        n1,
        n,
        k,
    };
    data.check()
        .map_err(|e| Error::Structural(format!("L({p},{q}): {e}")))?;
    Ok(data)
}

/// Antipode exponents and leg labels in multiplication order, plus the
/// power of g appended on the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuperbergExponentData {
    /// Λ-leg carried at each position (1-based Sweedler index).
    pub legs: Vec<u64>,
    pub exponents: Vec<i64>,
    pub g_power: i64,
}

impl KuperbergExponentData {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let d: Self = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.legs.len();
        if p == 0 || self.exponents.len() != p {
            return Err(Error::InvalidInput(
                "legs and exponents must be non-empty and of equal length".into(),
            ));
        }
        let mut seen = vec![false; p + 1];
        for &leg in &self.legs {
            if leg < 1 || leg as usize > p || seen[leg as usize] {
                return Err(Error::InvalidInput(format!(
                    "legs must be a permutation of 1..{p}"
                )));
            }
            seen[leg as usize] = true;
        }
        Ok(())
    }
}

/// Exponents from the crossing rules of the lens diagram:
/// q odd: S^{−2m+1} on Λ_{(N_n)} for k_m ≤ n < k_{m+1}, g^{(1−q)/2};
/// q even: S^{2n−2m−3} on the same ranges, g^{(p−q+1)/2}.
pub fn lens_exponent_data(idx: &LensIndexData) -> KuperbergExponentData {
    let (p, q) = (idx.p as i64, idx.q as i64);
    let exponents = (1..=idx.p)
        .map(|n| {
            let m = idx.block(n) as i64;
            if q % 2 == 1 {
                -2 * m + 1
            } else {
                2 * n as i64 - 2 * m - 3
            }
        })
        .collect();
    let g_power = if q % 2 == 1 {
        debug_assert_eq!((1 - q) % 2, 0);
        (1 - q) / 2
    } else {
        debug_assert_eq!((p - q + 1) % 2, 0);
        (p - q + 1) / 2
    };
    KuperbergExponentData {
        legs: idx.n.clone(),
        exponents,
        g_power,
    }
}

/// λ(S^{e_1}(Λ_{(legs_1)}) ⋯ S^{e_p}(Λ_{(legs_p)}) g^m), expanding
/// Δ^{(p−1)}(Λ) and multiplying left to right over a prefix trie of the
/// terms sorted in multiplication order. The last factor is folded into a
/// precomputed bilinear table.
pub fn kuperberg_eval(
    data: &KuperbergExponentData,
    h: &RibbonHopfData,
    budget: usize,
) -> Result<Scalar> {
    data.validate()?;
    if !h.is_unimodular() {
        return Err(Error::NotFactorizable(
            "modulus differs from the counit".into(),
        ));
    }
    let hs = &h.structure;
    let l = hs.order();
    let dim = hs.dim();
    let p = data.legs.len();
    let t = hs.iterated_coproduct_budget(&h.cointegral, p, budget)?;

    // μ(x) = λ(x g^m)
    let gm = h.comodulus_power(data.g_power);
    let mu: Vec<Scalar> = (0..dim)
        .map(|i| h.lambda.eval(&hs.mul(&hs.basis(i), gm)))
        .collect();

    let cols: Vec<Vec<Vec<(u32, Scalar)>>> = data
        .exponents
        .iter()
        .map(|&e| hs.antipode_power_table(e))
        .collect();
    // bilinear table for the last factor: B[i][b] = μ(b_i S^e(b_b))
    let last = p - 1;
    let mut table = vec![Scalar::zero(l); dim * dim];
    for i in 0..dim as u32 {
        for b in 0..dim {
            let mut s = Scalar::zero(l);
            for (y, cy) in &cols[last][b] {
                for (k, ck) in hs.mul_basis(i, *y) {
                    let m = &mu[*k as usize];
                    if !m.is_zero() {
                        s += &(&(cy * ck) * m);
                    }
                }
            }
            table[i as usize * dim + b] = s;
        }
    }

    // order keys by multiplication order
    let pos: Vec<usize> = data.legs.iter().map(|&leg| leg as usize - 1).collect();
    let mut terms: Vec<(Vec<u32>, Scalar)> = t
        .sorted_terms()
        .into_iter()
        .map(|(k, c)| (pos.iter().map(|&i| k[i]).collect(), c))
        .collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));

    let one = hs.one();
    let mut stack: Vec<Vec<(u32, Scalar)>> = vec![one.terms().to_vec()];
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
            let next = hs.mul_terms(&stack[d], &cols[d][key[d] as usize]);
            stack.push(next);
        }
        let pref = &stack[last];
        let b = key[last] as usize;
        let mut s = Scalar::zero(l);
        for (i, ci) in pref {
            let v = &table[*i as usize * dim + b];
            if !v.is_zero() {
                s += &(ci * v);
            }
        }
        if !s.is_zero() {
            total += &(&s * c);
        }
        prev = Some(key);
    }
    Ok(total)
}

/// Z_Kup(L(p,q)) with the fixed framing of the lens diagram; L(1,0) = S³ gives 1.
pub fn z_kup_lens(p: i64, q: i64, h: &RibbonHopfData, budget: usize) -> Result<Scalar> {
    let (pp, _) = normalize_lens(p, q)?;
    if pp == 1 {
        return Ok(Scalar::one(h.order()));
    }
    let idx = lens_indices(p, q)?;
    kuperberg_eval(&lens_exponent_data(&idx), h, budget)
}

#[cfg(test)]
mod tests;
