use super::*;
use crate::uqsl2::build_uqsl2;

#[test]
fn worked_example_5_2() {
    let idx = lens_indices(5, 2).unwrap();
    assert_eq!(idx.n, vec![4, 1, 3, 5, 2]);
    assert_eq!(idx.n1, 4);
    assert_eq!((idx.k[1], idx.k[2]), (2, 5));
    assert_eq!(idx.r, 1);
    let d = lens_exponent_data(&idx);
    assert_eq!(d.legs, vec![4, 1, 3, 5, 2]);
    assert_eq!(d.exponents, vec![-1, -1, 1, 3, 3]);
    assert_eq!(d.g_power, 2);
}

#[test]
fn worked_example_2_1() {
    let idx = lens_indices(2, 1).unwrap();
    assert_eq!(idx.n, vec![1, 2]);
    let d = lens_exponent_data(&idx);
    assert_eq!(d.exponents, vec![-1, -1]);
    assert_eq!(d.g_power, 0);
}

#[test]
fn q_one_is_a_single_block() {
    for p in 2..12 {
        let idx = lens_indices(p, 1).unwrap();
        assert_eq!(idx.k[1], 1);
        let d = lens_exponent_data(&idx);
        assert!(d.exponents.iter().all(|&e| e == -1));
        assert_eq!(d.g_power, 0);
    }
}

/// k_i as the least n whose N-value sequence wraps for the i-th time, by
/// scanning the congruence N_j ≡ N_1 + (j−1)q directly.
fn brute_k(p: u64, q: u64) -> Vec<u64> {
    let n1 = if q % 2 == 1 {
        q.div_ceil(2)
    } else {
        (p + q).div_ceil(2)
    };
    let mut k = vec![1];
    // N_{j+1} < N_j exactly when the running sum passes a multiple of p;
    // for odd q the first block is empty and k_1 = 1
    if q % 2 == 1 {
        k.push(1);
    }
    let mut prev = n1;
    for j in 2..=p {
        let cur = (n1 - 1 + (j - 1) * q) % p + 1;
        if cur < prev {
            k.push(j);
        }
        prev = cur;
    }
    k.push(p + 1);
    k
}

#[test]
fn k_sequence_matches_wraparound_scan() {
    for p in 2..40i64 {
        for q in 1..p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let idx = lens_indices(p, q).unwrap();
            assert_eq!(idx.k, brute_k(p as u64, q as u64), "L({p},{q})");
        }
    }
    let idx = lens_indices(7, 3).unwrap();
    assert_eq!(idx.k[2] + idx.k[3], 9);
}

#[test]
fn input_normalization() {
    assert_eq!(lens_indices(5, 7).unwrap(), lens_indices(5, 2).unwrap());
    assert_eq!(lens_indices(5, -3).unwrap(), lens_indices(5, 2).unwrap());
    assert!(lens_indices(4, 2).is_err());
    assert!(lens_indices(5, 0).is_err());
    assert!(lens_indices(1, 0).is_err());
    assert_eq!(normalize_lens(1, 0).unwrap(), (1, 0));
}

#[test]
fn exponent_data_json() {
    let d = lens_exponent_data(&lens_indices(5, 2).unwrap());
    let v = d.to_json();
    assert_eq!(
        v,
        serde_json::json!({"legs": [4, 1, 3, 5, 2], "exponents": [-1, -1, 1, 3, 3], "g_power": 2})
    );
    assert_eq!(KuperbergExponentData::from_json(&v).unwrap(), d);
    let bad = serde_json::json!({"legs": [1, 1], "exponents": [0, 0], "g_power": 0});
    assert!(KuperbergExponentData::from_json(&bad).is_err());
}

#[test]
fn single_leg_is_normalization() {
    let h = build_uqsl2(3).unwrap();
    let d = KuperbergExponentData {
        legs: vec![1],
        exponents: vec![0],
        g_power: 0,
    };
    assert!(kuperberg_eval(&d, &h, DEFAULT_BUDGET).unwrap().is_one());
}

#[test]
fn l21_is_trace_of_inverse_antipode() {
    let h = build_uqsl2(3).unwrap();
    let z = z_kup_lens(2, 1, &h, DEFAULT_BUDGET).unwrap();
    assert_eq!(z, h.structure.antipode_trace(-1));
    assert!(z_kup_lens(1, 0, &h, DEFAULT_BUDGET).unwrap().is_one());
}

#[test]
fn budget_is_enforced() {
    let h = build_uqsl2(3).unwrap();
    assert!(matches!(
        z_kup_lens(7, 1, &h, 100),
        Err(Error::Budget { .. })
    ));
}
