// Fixed-point evaluation of cyclotomic elements for human-readable output.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Rational;

fn pow10(n: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), n)
}

// arctan(1/x) at scale s
fn arctan_inv(x: i64, s: &BigInt) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut term = s / x;
    let mut sum = term.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term /= &x2;
        let t = &term / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi(s: &BigInt) -> BigInt {
    arctan_inv(5, s) * 16 - arctan_inv(239, s) * 4
}

// (cos θ, sin θ) at scale s, |θ| ≤ π
fn cos_sin(theta: &BigInt, s: &BigInt) -> (BigInt, BigInt) {
    let t2 = theta * theta / s;
    let mut cos = s.clone();
    let mut sin = theta.clone();
    let mut ct = s.clone();
    let mut st = theta.clone();
    let mut n = 1i64;
    loop {
        ct = -(&ct * &t2 / s) / ((2 * n - 1) * (2 * n));
        st = -(&st * &t2 / s) / ((2 * n) * (2 * n + 1));
        if ct.is_zero() && st.is_zero() {
            break;
        }
        cos += &ct;
        sin += &st;
        n += 1;
    }
    (cos, sin)
}

fn format_fixed(v: &BigInt, prec: usize, digits: usize) -> String {
    let neg = v.is_negative();
    let a = v.abs();
    // below ~10^-(prec-8) we cannot distinguish from an exact zero
    if a < pow10(8) {
        return "0".to_string();
    }
    let len: usize = a.to_string().len();
    let (mant, exp) = if len > digits {
        let drop = len - digits;
        let unit = pow10(drop);
        let half: BigInt = &unit / 2;
        let q: BigInt = (&a + half) / &unit;
        (q.to_string(), drop as i64 - prec as i64)
    } else {
        (a.to_string(), -(prec as i64))
    };
    let int_len = mant.len() as i64 + exp;
    let body = if exp >= 0 {
        format!("{}{}", mant, "0".repeat(exp as usize))
    } else if int_len > 0 {
        let (i, f) = mant.split_at(int_len as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{}", "0".repeat((-int_len) as usize), mant)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub(super) fn format_scalar(l: u32, coeffs: &[Rational], digits: usize) -> String {
    let prec = digits + 30;
    let s = pow10(prec);
    let tau = pi(&s) * 2;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut theta = &tau * i / l;
        if theta > &tau / 2 {
            theta -= &tau;
        }
        let (co, si) = if i == 0 {
            (s.clone(), BigInt::zero())
        } else {
            cos_sin(&theta, &s)
        };
        re += co * c.numer() / c.denom();
        im += si * c.numer() / c.denom();
    }
    let r = format_fixed(&re, prec, digits);
    let i = format_fixed(&im, prec, digits);
    if i == "0" {
        r
    } else if let Some(stripped) = i.strip_prefix('-') {
        format!("{r} - {stripped}i")
    } else {
        format!("{r} + {i}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let s = pow10(40);
        let p = pi(&s);
        assert!(p
            .to_string()
            .starts_with("31415926535897932384626433832795028841"));
    }

    #[test]
    fn formatting() {
        let one = Rational::from_integer(1.into());
        assert_eq!(
            format_scalar(3, &[one.clone(), Rational::zero()], 20),
            "1.0000000000000000000"
        );
        let z = format_scalar(3, &[Rational::zero(), one], 20);
        assert_eq!(z, "-0.50000000000000000000 + 0.86602540378443864676i");
        let x = format_scalar(
            5,
            &[
                Rational::new(1.into(), 3.into()),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
            5,
        );
        assert_eq!(x, "0.33333");
    }
}
