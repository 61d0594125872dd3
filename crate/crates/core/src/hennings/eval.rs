//! Slice-by-slice contraction of the Kauffman–Radford trace.
//!
//! Below the current level every component is cut into open pieces, each
//! running from an end where it is entered going down (its "in" end) to an
//! end where it leaves going up (its "out" end). A piece stores the product
//! of its labels slid forward to the out end, together with twice its
//! turning. The state is a sparse tensor with one leg per live piece.

use rustc_hash::FxHashMap;

use super::{walk_link, LinkingData, MorseLink, Slice, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::hopf::tensor::add_into;
use crate::hopf::{Accumulator, Key, RibbonHopfData, Scalar};

type Terms = Vec<(u32, Scalar)>;

/// TR(L, H) with the default term budget.
pub fn kr_evaluate(link: &MorseLink, h: &RibbonHopfData) -> Result<Scalar> {
    kr_evaluate_budget(link, h, DEFAULT_BUDGET)
}

struct Contraction<'a> {
    h: &'a RibbonHopfData,
    budget: usize,
    state: FxHashMap<Key, Scalar>,
    /// twice the turning of each live piece
    t2: Vec<i64>,
    /// (piece, is out end) for every strand at the current level
    ends: Vec<(usize, bool)>,
    s_tables: FxHashMap<i64, Vec<Terms>>,
}

impl<'a> Contraction<'a> {
    fn s_pow(&mut self, e: i64) -> &Vec<Terms> {
        let hs = &self.h.structure;
        self.s_tables
            .entry(e)
            .or_insert_with(|| hs.antipode_power_table(e))
    }

    fn check_budget(&self, n: usize) -> Result<()> {
        if n > self.budget {
            Err(Error::Budget {
                limit: self.budget,
                needed: n,
            })
        } else {
            Ok(())
        }
    }

    fn cup(&mut self, i: usize, up_left: bool) -> Result<()> {
        let slot = self.t2.len();
        // clockwise when entered on the right and left on the left
        self.t2.push(if up_left { 1 } else { -1 });
        let unit: Terms = self.h.structure.unit_terms().to_vec();
        let mut next = FxHashMap::default();
        for (k, v) in self.state.drain() {
            for (u, c) in &unit {
                let mut nk = k.clone();
                nk.push(*u);
                add_into(&mut next, nk, &v * c);
            }
        }
        self.check_budget(next.len())?;
        self.state = next;
        self.ends.insert(i, (slot, up_left));
        self.ends.insert(i + 1, (slot, !up_left));
        Ok(())
    }

    /// Labels arriving at one strand: out ends multiply on the right, in
    /// ends on the left after sliding forward over the whole piece.
    fn prepared_labels(&mut self, labels: &[Terms], end: (usize, bool)) -> Vec<Terms> {
        let (slot, out) = end;
        if out {
            return labels.to_vec();
        }
        let e = -self.t2[slot];
        let table = self.s_pow(e).clone();
        labels
            .iter()
            .map(|x| {
                let mut acc = Accumulator::new();
                for (j, c) in x {
                    for (m, cm) in &table[*j as usize] {
                        acc.add(*m, c * cm);
                    }
                }
                acc.finish()
            })
            .collect()
    }

    fn apply_label(&self, a: u32, x: &Terms, out: bool) -> Terms {
        let hs = &self.h.structure;
        let basis = [(a, Scalar::one(self.h.order()))];
        if out {
            hs.mul_terms(&basis, x)
        } else {
            hs.mul_terms(x, &basis)
        }
    }

    fn cross(&mut self, i: usize, positive: bool) -> Result<()> {
        let hs = &self.h.structure;
        let l = self.h.order();
        // the strand at i runs to i+1 ("/"); it is over iff positive
        let (over_end, under_end) = if positive {
            (self.ends[i], self.ends[i + 1])
        } else {
            (self.ends[i + 1], self.ends[i])
        };
        let mut s_labels = Vec::new();
        let mut t_labels = Vec::new();
        let mut coeffs = Vec::new();
        for (k, c) in self.h.r.sorted_terms() {
            let s: Terms = if positive {
                hs.antipode_basis(k[0]).to_vec()
            } else {
                vec![(k[0], Scalar::one(l))]
            };
            s_labels.push(s);
            t_labels.push(vec![(k[1], Scalar::one(l))]);
            coeffs.push(c);
        }
        let s_labels = self.prepared_labels(&s_labels, over_end);
        let t_labels = self.prepared_labels(&t_labels, under_end);

        let mut next: FxHashMap<Key, Scalar> = FxHashMap::default();
        let state = std::mem::take(&mut self.state);
        for (k, v) in &state {
            for r in 0..coeffs.len() {
                let cv = v * &coeffs[r];
                if over_end.0 == under_end.0 {
                    let slot = over_end.0;
                    // one label multiplies on the left and one on the right
                    let (left, right) = if over_end.1 {
                        (&t_labels[r], &s_labels[r])
                    } else {
                        (&s_labels[r], &t_labels[r])
                    };
                    let mid = self.apply_label(k[slot], right, true);
                    let full = hs.mul_terms(left, &mid);
                    for (m, cm) in full {
                        let mut nk = k.clone();
                        nk[slot] = m;
                        add_into(&mut next, nk, &cv * &cm);
                    }
                } else {
                    let a = self.apply_label(k[over_end.0], &s_labels[r], over_end.1);
                    if a.is_empty() {
                        continue;
                    }
                    let b = self.apply_label(k[under_end.0], &t_labels[r], under_end.1);
                    for (ma, ca) in &a {
                        let cva = &cv * ca;
                        for (mb, cb) in &b {
                            let mut nk = k.clone();
                            nk[over_end.0] = *ma;
                            nk[under_end.0] = *mb;
                            add_into(&mut next, nk, &cva * cb);
                        }
                    }
                }
            }
            self.check_budget(next.len())?;
        }
        self.state = next;
        self.ends.swap(i, i + 1);
        Ok(())
    }

    fn remove_slot(&mut self, slot: usize) {
        self.t2.remove(slot);
        for e in self.ends.iter_mut() {
            if e.0 > slot {
                e.0 -= 1;
            }
        }
    }

    fn cap(&mut self, i: usize) -> Result<()> {
        let (e0, e1) = (self.ends[i], self.ends[i + 1]);
        if e0.1 == e1.1 {
            return Err(Error::Structural(
                "cap joins two strands of the same direction".into(),
            ));
        }
        // up on the left then down on the right is a clockwise half turn
        let (a, b, k2) = if e0.1 {
            (e0.0, e1.0, 1)
        } else {
            (e1.0, e0.0, -1)
        };
        self.ends.drain(i..i + 2);
        let hs = &self.h.structure;
        let mut next: FxHashMap<Key, Scalar> = FxHashMap::default();
        if a == b {
            let d2 = self.t2[a] + k2;
            debug_assert_eq!(d2 % 2, 0);
            let gd = self.h.g_power(d2 / 2 + 1);
            let phi: Vec<Scalar> = (0..self.h.dim())
                .map(|j| self.h.lambda.eval(&hs.mul(&hs.basis(j), gd)))
                .collect();
            for (k, v) in self.state.drain() {
                let f = &phi[k[a] as usize];
                if f.is_zero() {
                    continue;
                }
                let mut nk = k;
                nk.remove(a);
                add_into(&mut next, nk, &v * f);
            }
            self.state = next;
            self.remove_slot(a);
        } else {
            let e = -(k2 + self.t2[b]);
            debug_assert_eq!(e % 2, 0);
            let table = self.s_pow(e).clone();
            let hs = &self.h.structure;
            let state = std::mem::take(&mut self.state);
            for (k, v) in state {
                let w = hs.mul_terms(
                    &table[k[a] as usize],
                    &[(k[b], Scalar::one(self.h.order()))],
                );
                for (m, c) in w {
                    let mut nk = k.clone();
                    nk[b] = m;
                    nk.remove(a);
                    add_into(&mut next, nk, &v * &c);
                }
            }
            self.check_budget(next.len())?;
            self.state = next;
            self.t2[b] += self.t2[a] + k2;
            // the in end of a now belongs to the merged piece b
            for end in self.ends.iter_mut() {
                if end.0 == a {
                    end.0 = b;
                }
            }
            self.remove_slot(a);
        }
        Ok(())
    }
}

/// TR(L, H), failing with a budget error as soon as the contraction state
/// exceeds `budget` nonzero terms.
pub fn kr_evaluate_budget(link: &MorseLink, h: &RibbonHopfData, budget: usize) -> Result<Scalar> {
    let walked = walk_link(link)?;
    let l = h.order();
    let mut st = FxHashMap::default();
    st.insert(Key::new(), Scalar::one(l));
    let mut c = Contraction {
        h,
        budget,
        state: st,
        t2: Vec::new(),
        ends: Vec::new(),
        s_tables: FxHashMap::default(),
    };
    for (t, s) in link.slices().iter().enumerate() {
        match *s {
            Slice::Cup(i) => c.cup(i, walked.dirs[t + 1][i].1)?,
            Slice::Cap(i) => c.cap(i)?,
            Slice::Cross { pos, positive } => c.cross(pos, positive)?,
        }
    }
    Ok(c.state
        .remove(&Key::new())
        .unwrap_or_else(|| Scalar::zero(l)))
}

/// The surgery invariant with its ingredients.
#[derive(Clone, Debug)]
pub struct HennEvaluation {
    pub tr: Scalar,
    pub linking: LinkingData,
    pub value: Scalar,
}

/// Z = λ(θ)^{−(c+σ)/2} λ(θ⁻¹)^{−(c−σ)/2} TR(L). Written this way the
/// prefactor does not depend on how λ is scaled; when c+σ is odd the square
/// root is taken exactly or the evaluation fails.
pub fn z_henn_with_data(
    link: &MorseLink,
    h: &RibbonHopfData,
    budget: usize,
) -> Result<HennEvaluation> {
    let walked = walk_link(link)?;
    let tr = kr_evaluate_budget(link, h, budget)?;
    let lk = walked.linking;
    let (c, sigma) = (lk.c as i64, lk.sigma);
    let a = h.lambda_theta();
    let b = h.lambda_theta_inv();
    if a.is_zero() || b.is_zero() {
        return Err(Error::NotFactorizable("λ(θ) or λ(θ⁻¹) vanishes".into()));
    }
    let (n1, n2) = (c + sigma, c - sigma);
    let value = if n1 % 2 == 0 {
        &(&a.pow(-n1 / 2)? * &b.pow(-n2 / 2)?) * &tr
    } else if tr.is_zero() {
        tr.clone()
    } else {
        let sq = (&a.pow(-n1)? * &b.pow(-n2)?).sqrt_exact().ok_or_else(|| {
            Error::NotFactorizable("normalization needs a square root outside the field".into())
        })?;
        &sq * &tr
    };
    Ok(HennEvaluation {
        tr,
        linking: lk,
        value,
    })
}

pub fn z_henn(link: &MorseLink, h: &RibbonHopfData) -> Result<Scalar> {
    Ok(z_henn_with_data(link, h, DEFAULT_BUDGET)?.value)
}
