//! Exact arithmetic in the cyclotomic field Q(ζ_l), l odd.
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(l)−1} of Q[x]/Φ_l.
//! Values whose common denominator and numerators fit in an `i64` use an
//! inline fast path with `i128` intermediates; anything larger falls back to
//! `BigInt`. The representation is canonical either way (big values are
//! demoted as soon as they fit), so derived equality is field equality.

mod decimal;
mod field;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use field::{field, valid_order, FieldData};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("invalid cyclotomic order {0}: need an odd l with 3 <= l < 256")]
    InvalidOrder(u32),
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

type SmallNum = SmallVec<[i64; 6]>;
type Wide = SmallVec<[i128; 12]>;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// den > 0, gcd(den, num) = 1, every entry in (i64::MIN, i64::MAX].
    Small { den: i64, num: SmallNum },
    /// Same normalization, but does not fit `Small`.
    Big { den: BigInt, num: Vec<BigInt> },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    order: u32,
    repr: Repr,
}

pub fn check_order(l: u32) -> Result<(), ScalarError> {
    if valid_order(l) {
        Ok(())
    } else {
        Err(ScalarError::InvalidOrder(l))
    }
}

/// Degree φ(l) of Q(ζ_l).
pub fn field_degree(l: u32) -> Result<usize, ScalarError> {
    check_order(l)?;
    Ok(field(l).degree)
}

pub fn root_of_unity(l: u32, k: i64) -> Result<CyclotomicScalar, ScalarError> {
    check_order(l)?;
    Ok(CyclotomicScalar::zeta_pow(l, k))
}

pub fn field_arithmetic(
    a: &CyclotomicScalar,
    b: &CyclotomicScalar,
    kind: ArithKind,
) -> Result<CyclotomicScalar, ScalarError> {
    match kind {
        ArithKind::Add => a.checked_add(b),
        ArithKind::Sub => a.checked_sub(b),
        ArithKind::Mul => a.checked_mul(b),
        ArithKind::Div => a.checked_div(b),
    }
}

pub fn conjugate(a: &CyclotomicScalar) -> CyclotomicScalar {
    a.conjugate()
}

pub fn norm_squared(a: &CyclotomicScalar) -> CyclotomicScalar {
    a.norm_squared()
}

// ---------------------------------------------------------------------------
// reduction modulo Φ_l

fn reduce_wide(f: &FieldData, v: &mut Wide) -> Option<()> {
    let d = f.degree;
    if v.len() <= d {
        v.resize(d, 0);
        return Some(());
    }
    if f.prime {
        let l = f.order as usize;
        for k in (l..v.len()).rev() {
            let c = v[k];
            v[k - l] = v[k - l].checked_add(c)?;
        }
        v.truncate(l);
        if v.len() == l {
            let top = v[l - 1];
            v.truncate(d);
            if top != 0 {
                for x in v.iter_mut() {
                    *x = x.checked_sub(top)?;
                }
            }
        } else {
            v.resize(d, 0);
        }
    } else {
        for k in (d..v.len()).rev() {
            let c = v[k];
            if c != 0 {
                for i in 0..d {
                    let t = c.checked_mul(f.phi[i] as i128)?;
                    v[k - d + i] = v[k - d + i].checked_sub(t)?;
                }
            }
        }
        v.truncate(d);
    }
    Some(())
}

fn reduce_big(f: &FieldData, v: &mut Vec<BigInt>) {
    let d = f.degree;
    if v.len() <= d {
        v.resize(d, BigInt::zero());
        return;
    }
    for k in (d..v.len()).rev() {
        let c = std::mem::take(&mut v[k]);
        if !c.is_zero() {
            for i in 0..d {
                let p = f.phi[i];
                if p != 0 {
                    v[k - d + i] -= &c * p;
                }
            }
        }
    }
    v.truncate(d);
}

// ---------------------------------------------------------------------------
// normalization

fn fits(x: i128) -> bool {
    x > i64::MIN as i128 && x <= i64::MAX as i128
}

fn normalize_wide(mut den: i128, num: &mut Wide) -> Option<Repr> {
    if den == 0 {
        return None;
    }
    if num.iter().all(|&x| x == 0) {
        return Some(Repr::Small {
            den: 1,
            num: num.iter().map(|_| 0).collect(),
        });
    }
    if den < 0 {
        den = den.checked_neg()?;
        for x in num.iter_mut() {
            *x = x.checked_neg()?;
        }
    }
    if den != 1 {
        let mut g = den;
        for &x in num.iter() {
            if x != 0 {
                g = g.gcd(&x);
                if g == 1 {
                    break;
                }
            }
        }
        if g != 1 {
            den /= g;
            for x in num.iter_mut() {
                *x /= g;
            }
        }
    }
    if !fits(den) || !num.iter().all(|&x| fits(x)) {
        return None;
    }
    Some(Repr::Small {
        den: den as i64,
        num: num.iter().map(|&x| x as i64).collect(),
    })
}

fn normalize_big(mut den: BigInt, mut num: Vec<BigInt>) -> Repr {
    assert!(!den.is_zero(), "zero denominator");
    if num.iter().all(Zero::is_zero) {
        return Repr::Small {
            den: 1,
            num: num.iter().map(|_| 0).collect(),
        };
    }
    if den.is_negative() {
        den = -den;
        for x in num.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    if !den.is_one() {
        let mut g = den.clone();
        for x in num.iter() {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() {
            den /= &g;
            for x in num.iter_mut() {
                *x /= &g;
            }
        }
    }
    let small_den = den.to_i64().filter(|&d| d != i64::MIN);
    if let Some(d) = small_den {
        let small: Option<SmallNum> = num
            .iter()
            .map(|x| x.to_i64().filter(|&v| v != i64::MIN))
            .collect();
        if let Some(num) = small {
            return Repr::Small { den: d, num };
        }
    }
    Repr::Big { den, num }
}

impl Repr {
    fn to_big(&self) -> (BigInt, Vec<BigInt>) {
        match self {
            Repr::Small { den, num } => {
                (BigInt::from(*den), num.iter().map(|&x| x.into()).collect())
            }
            Repr::Big { den, num } => (den.clone(), num.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { .. } => false,
        }
    }
}

// ---------------------------------------------------------------------------

impl CyclotomicScalar {
    fn data(&self) -> &'static FieldData {
        field(self.order)
    }

    pub fn zero(l: u32) -> Self {
        check_order(l).expect("invalid cyclotomic order");
        let d = field(l).degree;
        CyclotomicScalar {
            order: l,
            repr: Repr::Small {
                den: 1,
                num: SmallVec::from_elem(0, d),
            },
        }
    }

    pub fn one(l: u32) -> Self {
        Self::from_integer(l, 1)
    }

    pub fn from_integer(l: u32, n: i64) -> Self {
        let mut z = Self::zero(l);
        if n == i64::MIN {
            return Self::from_rational(l, &Rational::from_integer(n.into()));
        }
        if let Repr::Small { num, .. } = &mut z.repr {
            num[0] = n;
        }
        z
    }

    pub fn from_rational(l: u32, r: &Rational) -> Self {
        let d = field(l).degree;
        let mut num = vec![BigInt::zero(); d];
        num[0] = r.numer().clone();
        CyclotomicScalar {
            order: l,
            repr: normalize_big(r.denom().clone(), num),
        }
    }

    /// Builds a scalar from coefficients in the power basis; longer inputs
    /// (e.g. the redundant span 1..ζ^{l−1}) are reduced modulo Φ_l.
    pub fn from_coefficients(l: u32, coeffs: &[Rational]) -> Result<Self, ScalarError> {
        check_order(l)?;
        let f = field(l);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        reduce_big(f, &mut num);
        Ok(CyclotomicScalar {
            order: l,
            repr: normalize_big(den, num),
        })
    }

    /// Integer-coefficient shortcut for `from_coefficients`.
    pub fn from_int_coefficients(l: u32, coeffs: &[i64]) -> Result<Self, ScalarError> {
        check_order(l)?;
        let f = field(l);
        let mut w: Wide = coeffs.iter().map(|&c| c as i128).collect();
        let repr = reduce_wide(f, &mut w).and_then(|_| normalize_wide(1, &mut w));
        match repr {
            Some(repr) => Ok(CyclotomicScalar { order: l, repr }),
            None => {
                let r: Vec<Rational> = coeffs
                    .iter()
                    .map(|&c| Rational::from_integer(c.into()))
                    .collect();
                Self::from_coefficients(l, &r)
            }
        }
    }

    /// ζ^k; assumes a valid order.
    pub(crate) fn zeta_pow(l: u32, k: i64) -> Self {
        let f = field(l);
        let e = k.rem_euclid(l as i64) as usize;
        let mut w: Wide = SmallVec::from_elem(0, e + 1);
        w[e] = 1;
        reduce_wide(f, &mut w).expect("unit reduction cannot overflow");
        CyclotomicScalar {
            order: l,
            repr: normalize_wide(1, &mut w).expect("small"),
        }
    }

    /// q^{n/2} under the branch q^{1/2} := q^{(l+1)/2}.
    pub fn half_power(l: u32, n: i64) -> Self {
        let h = (l as i64 + 1) / 2;
        Self::zeta_pow(l, n.rem_euclid(l as i64) * h)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { den, num } => {
                *den == 1 && num[0] == 1 && num[1..].iter().all(|&x| x == 0)
            }
            Repr::Big { .. } => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.coefficient(0))
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        match &self.repr {
            Repr::Small { den, num } => Rational::new(num[i].into(), (*den).into()),
            Repr::Big { den, num } => Rational::new(num[i].clone(), den.clone()),
        }
    }

    /// Canonical coefficients (length φ(l)).
    pub fn coefficients(&self) -> Vec<Rational> {
        (0..self.data().degree)
            .map(|i| self.coefficient(i))
            .collect()
    }

    fn same_order(&self, other: &Self) -> Result<(), ScalarError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(ScalarError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_order(other)?;
        Ok(self.add_sub(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_order(other)?;
        Ok(self.add_sub(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_order(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_order(other)?;
        let inv = other.inverse()?;
        Ok(self.mul_impl(&inv))
    }

    fn add_sub(&self, other: &Self, sub: bool) -> Self {
        if let (Repr::Small { den: da, num: a }, Repr::Small { den: db, num: b }) =
            (&self.repr, &other.repr)
        {
            if let Some(repr) = add_small(*da, a, *db, b, sub) {
                return CyclotomicScalar {
                    order: self.order,
                    repr,
                };
            }
        }
        let (da, a) = self.repr.to_big();
        let (db, b) = other.repr.to_big();
        let den = da.lcm(&db);
        let fa = &den / &da;
        let fb = &den / &db;
        let num = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| {
                if sub {
                    x * &fa - y * &fb
                } else {
                    x * &fa + y * &fb
                }
            })
            .collect();
        CyclotomicScalar {
            order: self.order,
            repr: normalize_big(den, num),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let f = self.data();
        if let (Repr::Small { den: da, num: a }, Repr::Small { den: db, num: b }) =
            (&self.repr, &other.repr)
        {
            if let Some(repr) = mul_small(f, *da, a, *db, b) {
                return CyclotomicScalar {
                    order: self.order,
                    repr,
                };
            }
        }
        let (da, a) = self.repr.to_big();
        let (db, b) = other.repr.to_big();
        let mut prod = vec![BigInt::zero(); 2 * a.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_big(f, &mut prod);
        CyclotomicScalar {
            order: self.order,
            repr: normalize_big(da * db, prod),
        }
    }

    pub fn mul_integer(&self, n: i64) -> Self {
        self.mul_impl(&Self::from_integer(self.order, n))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self.mul_impl(&Self::from_rational(self.order, r))
    }

    /// Image under the automorphism σ_k: ζ ↦ ζ^k, k a unit mod l.
    pub fn galois(&self, k: i64) -> Result<Self, ScalarError> {
        let f = self.data();
        let l = self.order as i64;
        let k = k.rem_euclid(l);
        if (k as u32).gcd(&self.order) != 1 {
            return Err(ScalarError::Parse(format!("{k} is not a unit modulo {l}")));
        }
        Ok(self.galois_unchecked(f, k as usize))
    }

    fn galois_unchecked(&self, f: &FieldData, k: usize) -> Self {
        let l = f.order as usize;
        match &self.repr {
            Repr::Small { den, num } => {
                let mut w: Wide = SmallVec::from_elem(0, l);
                for (i, &c) in num.iter().enumerate() {
                    w[(i * k) % l] += c as i128;
                }
                if let Some(repr) =
                    reduce_wide(f, &mut w).and_then(|_| normalize_wide(*den as i128, &mut w))
                {
                    return CyclotomicScalar {
                        order: self.order,
                        repr,
                    };
                }
                self.galois_big(f, k)
            }
            Repr::Big { .. } => self.galois_big(f, k),
        }
    }

    fn galois_big(&self, f: &FieldData, k: usize) -> Self {
        let l = f.order as usize;
        let (den, num) = self.repr.to_big();
        let mut v = vec![BigInt::zero(); l];
        for (i, c) in num.into_iter().enumerate() {
            v[(i * k) % l] += c;
        }
        reduce_big(f, &mut v);
        CyclotomicScalar {
            order: self.order,
            repr: normalize_big(den, v),
        }
    }

    pub fn conjugate(&self) -> Self {
        let f = self.data();
        self.galois_unchecked(f, f.order as usize - 1)
    }

    pub fn norm_squared(&self) -> Self {
        self.mul_impl(&self.conjugate())
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(self.order, &r.recip()));
        }
        let f = self.data();
        // product of the nontrivial conjugates; self · rest is the rational norm
        let mut rest = Self::one(self.order);
        for &k in f.units.iter().skip(1) {
            rest = rest.mul_impl(&self.galois_unchecked(f, k as usize));
        }
        let norm = self
            .mul_impl(&rest)
            .to_rational()
            .expect("field norm is rational");
        Ok(rest.mul_rational(&norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_impl(&b);
            }
        }
        Ok(acc)
    }

    /// If self = ζ^k · r with r rational, returns (k, r) with k minimal.
    pub fn as_root_times_rational(&self) -> Option<(u32, Rational)> {
        if self.is_zero() {
            return None;
        }
        for k in 0..self.order {
            let t = self.mul_impl(&Self::zeta_pow(self.order, -(k as i64)));
            if let Some(r) = t.to_rational() {
                return Some((k, r));
            }
        }
        None
    }

    /// The quadratic Gauss sum Σ_{s} ζ^{s²}; its square is ±l.
    pub fn gauss_sum(l: u32) -> Result<Self, ScalarError> {
        check_order(l)?;
        let mut acc = Self::zero(l);
        for s in 0..l as i64 {
            acc += &Self::zeta_pow(l, s * s);
        }
        Ok(acc)
    }

    /// A square root inside Q(ζ_l), when one of the forms ζ^k·s² or
    /// ζ^k·s²·G² (G the Gauss sum) applies. Returns None otherwise, which
    /// does not prove that no root exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let l = self.order;
        if self.is_zero() {
            return Some(self.clone());
        }
        let (k, r) = self.as_root_times_rational()?;
        let half = Self::zeta_pow(l, k as i64 * ((l as i64 + 1) / 2));
        if let Some(s) = rational_sqrt(&r) {
            return Some(half.mul_rational(&s));
        }
        let g = Self::gauss_sum(l).ok()?;
        let g2 = g.mul_impl(&g).to_rational()?;
        if let Some(s) = rational_sqrt(&(&r / &g2)) {
            return Some(half.mul_impl(&g).mul_rational(&s));
        }
        None
    }

    /// Floating-point value; display and diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let l = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coefficients().iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * i as f64 / l;
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }

    /// Decimal approximation with `digits` significant digits, computed in
    /// fixed point from exact coefficients.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        decimal::format_scalar(self.order, &self.coefficients(), digits)
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn add_small(da: i64, a: &[i64], db: i64, b: &[i64], sub: bool) -> Option<Repr> {
    let (da, db) = (da as i128, db as i128);
    let (den, fa, fb) = if da == db {
        (da, 1, 1)
    } else {
        let g = da.gcd(&db);
        let den = (da / g).checked_mul(db)?;
        (den, db / g, da / g)
    };
    let mut w: Wide = a
        .iter()
        .zip(b.iter())
        .map(|(&x, &y)| {
            let x = x as i128 * fa;
            let y = y as i128 * fb;
            if sub {
                x - y
            } else {
                x + y
            }
        })
        .collect();
    normalize_wide(den, &mut w)
}

fn mul_small(f: &FieldData, da: i64, a: &[i64], db: i64, b: &[i64]) -> Option<Repr> {
    let d = a.len();
    let mut w: Wide = SmallVec::from_elem(0, 2 * d - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                w[i + j] = w[i + j].checked_add(x * y as i128)?;
            }
        }
    }
    reduce_wide(f, &mut w)?;
    normalize_wide(da as i128 * db as i128, &mut w)
}

// ---------------------------------------------------------------------------
// operators; these panic on mixed orders, use checked_* to get an error

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&CyclotomicScalar> for &CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
                self.$imp(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<CyclotomicScalar> for &CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl AddAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn add_assign(&mut self, rhs: &CyclotomicScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn sub_assign(&mut self, rhs: &CyclotomicScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn mul_assign(&mut self, rhs: &CyclotomicScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        let repr = match &self.repr {
            Repr::Small { den, num } => Repr::Small {
                den: *den,
                num: num.iter().map(|&x| -x).collect(),
            },
            Repr::Big { den, num } => Repr::Big {
                den: den.clone(),
                num: num.iter().map(|x| -x).collect(),
            },
        };
        CyclotomicScalar {
            order: self.order,
            repr,
        }
    }
}

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// text and JSON forms

impl fmt::Display for CyclotomicScalar {
    /// Power-basis form, e.g. `-1 - z` for ζ_3², where `z` is ζ_l.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; l={}]", self, self.order)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    l: u32,
    coeffs: Vec<String>,
}

impl CyclotomicScalar {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "l": self.order,
            "coeffs": self.coefficients().iter().map(rational_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, ScalarError> {
        let j: ScalarJson =
            serde_json::from_value(v.clone()).map_err(|e| ScalarError::Parse(e.to_string()))?;
        Self::from_json_parts(j)
    }

    fn from_json_parts(j: ScalarJson) -> Result<Self, ScalarError> {
        let d = field_degree(j.l)?;
        if j.coeffs.len() != d {
            return Err(ScalarError::Parse(format!(
                "expected {d} coefficients for l = {}, got {}",
                j.l,
                j.coeffs.len()
            )));
        }
        let cs = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coefficients(j.l, &cs)
    }
}

impl Serialize for CyclotomicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson {
            l: self.order,
            coeffs: self.coefficients().iter().map(rational_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        Self::from_json_parts(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests;
