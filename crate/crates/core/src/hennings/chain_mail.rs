//! Chain-mail links of the genus-one Heegaard diagram of L(p,q).
//!
//! The lower handlebody is a standard solid torus. The upper circle, pushed
//! into it, is the (p,q) torus knot on a concentric torus, drawn as the
//! closure of (σ_1⋯σ_{p−1})^q; the lower circle is a meridian around the
//! p braid strands. Both carry the framing of the torus surface: 0 for the
//! meridian (no self-crossings) and pq for the torus knot, reached from the
//! braid writhe q(p−1) with q positive kinks.

use super::{MorseLink, Slice};
use crate::error::{Error, Result};
use crate::kuperberg::normalize_lens;

fn kink(out: &mut Vec<Slice>, i: usize, positive: bool) {
    // a curl on the right of strand i
    out.push(Slice::Cup(i + 1));
    out.push(Slice::Cross { pos: i, positive });
    out.push(Slice::Cap(i + 1));
}

pub fn chain_mail(p: i64, q: i64) -> Result<MorseLink> {
    let (pp, qq) = normalize_lens(p, q)?;
    if pp < 2 {
        return Err(Error::InvalidInput("chain-mail needs p ≥ 2".into()));
    }
    let (p, q) = (pp as usize, qq as usize);
    let mut s = Vec::new();
    // nested cups: braid strands 0..p go up, returns p..2p come down
    for k in 0..p {
        s.push(Slice::Cup(k));
    }
    for _ in 0..q {
        for i in 0..p - 1 {
            s.push(Slice::Cross {
                pos: i,
                positive: true,
            });
        }
    }
    for _ in 0..q {
        kink(&mut s, 0, true);
    }
    // meridian: a cup on the left, one arc over the bundle, the other under
    s.push(Slice::Cup(0));
    for i in 1..=p {
        s.push(Slice::Cross {
            pos: i,
            positive: true,
        });
    }
    for i in 0..p {
        s.push(Slice::Cross {
            pos: i,
            positive: false,
        });
    }
    s.push(Slice::Cap(p));
    for k in (0..p).rev() {
        s.push(Slice::Cap(k));
    }
    MorseLink::new(s)
}

/// An unknot with blackboard framing n: a round circle with |n| curls.
pub fn framed_unknot(n: i64) -> MorseLink {
    let mut s = vec![Slice::Cup(0)];
    for _ in 0..n.unsigned_abs() {
        kink(&mut s, 1, n > 0);
    }
    s.push(Slice::Cap(0));
    MorseLink::new(s).expect("well-formed")
}
