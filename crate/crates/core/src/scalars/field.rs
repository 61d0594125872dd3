use std::sync::OnceLock;

/// Per-order constants for Q(ζ_l): the cyclotomic polynomial and the
/// unit group used by Galois conjugation.
#[derive(Debug)]
pub(crate) struct FieldData {
    pub order: u32,
    pub degree: usize,
    /// Φ_l, monic, little-endian, `degree + 1` coefficients.
    pub phi: Vec<i64>,
    pub prime: bool,
    /// Residues k in [1, l) coprime to l.
    pub units: Vec<u32>,
}

const CACHED: usize = 256;

static FIELDS: [OnceLock<FieldData>; CACHED] = [const { OnceLock::new() }; CACHED];

pub(crate) fn valid_order(l: u32) -> bool {
    l >= 3 && l % 2 == 1 && (l as usize) < CACHED
}

/// Caller must have checked `valid_order`.
pub(crate) fn field(l: u32) -> &'static FieldData {
    FIELDS[l as usize].get_or_init(|| FieldData::new(l))
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

fn cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

impl FieldData {
    fn new(l: u32) -> Self {
        let phi = cyclotomic(l);
        let degree = phi.len() - 1;
        let units: Vec<u32> = (1..l).filter(|&k| gcd(k, l) == 1).collect();
        FieldData {
            order: l,
            degree,
            prime: degree + 1 == l as usize,
            phi,
            units,
        }
    }
}
