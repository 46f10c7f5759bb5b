//! Exact scalars over ℚ, cyclotomic fields ℚ(ζₙ) and prime fields 𝔽ₚ.
//!
//! Every value carries enough of its field to detect mixed-context
//! arithmetic. Cyclotomic elements live in the power basis
//! `1, ζ, …, ζ^{φ(n)−1}` and are always reduced modulo the n-th cyclotomic
//! polynomial, so two elements are equal exactly when their coefficient
//! vectors are.
//!
//! ```
//! use rbhopf::scalars::FieldCtx;
//!
//! let k = FieldCtx::cyclotomic(3).unwrap();
//! let z = k.zeta(3).unwrap();
//! // ζ₃² = −1 − ζ₃
//! assert_eq!(&z * &z, &(-k.one()) - &z);
//! ```

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedContext(String, String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field parameter {value} exceeds the configured bound {bound}")]
    TooLarge { value: u32, bound: u32 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("no element of multiplicative order {order} in {field}")]
    NoRootOfUnity { order: u32, field: String },
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ScalarError>;

/// Upper bounds on the supported field parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cyclotomic_order: u32,
    pub max_prime: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cyclotomic_order: 64,
            max_prime: 97,
        }
    }
}

/// The n-th cyclotomic field, stored with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u32,
    /// Coefficients of Φₙ, lowest degree first; monic of degree φ(n).
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.n
    }

    /// φ(n), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (i, c) in self.modulus[..deg].iter().enumerate() {
                poly[shift + i] -= &top * BigRational::from_integer(c.clone());
            }
        }
        poly.resize(deg, BigRational::zero());
        poly
    }
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Arc<CyclotomicField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Integer coefficients of Φₙ, computed as (xⁿ − 1) / ∏_{d|n, d<n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic order must be positive");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cyclotomic_field(n: u32) -> Arc<CyclotomicField> {
    let mut cache = CYCLOTOMIC_CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| {
            Arc::new(CyclotomicField {
                n,
                modulus: cyclotomic_polynomial(n),
            })
        })
        .clone()
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field every scalar of a computation lives in.
#[derive(Debug, Clone)]
pub enum FieldCtx {
    Rationals,
    Cyclotomic(Arc<CyclotomicField>),
    Prime(u32),
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldCtx::Rationals, FieldCtx::Rationals) => true,
            (FieldCtx::Cyclotomic(a), FieldCtx::Cyclotomic(b)) => a.n == b.n,
            (FieldCtx::Prime(a), FieldCtx::Prime(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FieldCtx {}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "Q"),
            FieldCtx::Cyclotomic(c) => write!(f, "Q(z{})", c.n),
            FieldCtx::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx::Rationals
    }

    pub fn cyclotomic(n: u32) -> Result<Self> {
        Self::cyclotomic_with(n, &Limits::default())
    }

    pub fn cyclotomic_with(n: u32, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        if n > limits.max_cyclotomic_order {
            return Err(ScalarError::TooLarge {
                value: n,
                bound: limits.max_cyclotomic_order,
            });
        }
        Ok(FieldCtx::Cyclotomic(cyclotomic_field(n)))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::prime_with(p, &Limits::default())
    }

    pub fn prime_with(p: u32, limits: &Limits) -> Result<Self> {
        if p > limits.max_prime {
            return Err(ScalarError::TooLarge {
                value: p,
                bound: limits.max_prime,
            });
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldCtx::Prime(p))
    }

    /// 0 for ℚ and ℚ(ζₙ), p for 𝔽ₚ.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldCtx::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    /// Embeds a rational number. Fails in 𝔽ₚ when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            FieldCtx::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldCtx::Cyclotomic(field) => {
                let mut coeffs = vec![BigRational::zero(); field.degree()];
                coeffs[0] = r.clone();
                Ok(Scalar::Cyclotomic(Cyclotomic {
                    field: field.clone(),
                    coeffs,
                }))
            }
            FieldCtx::Prime(p) => {
                let num = mod_bigint(r.numer(), *p);
                let den = mod_bigint(r.denom(), *p);
                if den == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::Prime(Residue {
                    p: *p,
                    value: mul_mod(num, inv_mod(den, *p), *p),
                }))
            }
        }
    }

    /// The designated primitive n-th root of unity.
    ///
    /// In ℚ(ζ_N) this is ζ_N^{N/n} and requires n | N, except that −1 is
    /// always available. In 𝔽ₚ it is the smallest positive residue of order
    /// exactly n. In ℚ only ±1 exist.
    pub fn zeta(&self, n: u32) -> Result<Scalar> {
        let missing = || ScalarError::NoRootOfUnity {
            order: n,
            field: self.to_string(),
        };
        if n == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        match self {
            FieldCtx::Rationals => match n {
                1 => Ok(self.one()),
                2 => Ok(self.from_int(-1)),
                _ => Err(missing()),
            },
            FieldCtx::Cyclotomic(field) => {
                let big_n = field.n;
                if big_n % n == 0 {
                    Ok(self.generator_power((big_n / n) as i64))
                } else if n == 2 {
                    Ok(self.from_int(-1))
                } else if big_n % 2 == 1 && (2 * big_n) % n == 0 {
                    // ℚ(ζ_N) = ℚ(ζ_{2N}) for odd N, with ζ_{2N} = −ζ_N^{(N+1)/2}.
                    let root = -self.generator_power(((big_n + 1) / 2) as i64);
                    root.pow((2 * big_n / n) as i64)
                } else {
                    Err(missing())
                }
            }
            FieldCtx::Prime(p) => {
                if (p - 1) % n != 0 {
                    return Err(missing());
                }
                (1..*p)
                    .map(|v| Scalar::Prime(Residue { p: *p, value: v }))
                    .find(|s| s.multiplicative_order() == Some(n))
                    .ok_or_else(missing)
            }
        }
    }

    /// ζ_N^k for the defining generator of ℚ(ζ_N).
    fn generator_power(&self, k: i64) -> Scalar {
        match self {
            FieldCtx::Cyclotomic(field) => {
                let n = field.n as i64;
                let k = k.rem_euclid(n) as usize;
                let mut poly = vec![BigRational::zero(); k.max(field.degree()) + 1];
                poly[k] = BigRational::one();
                Scalar::Cyclotomic(Cyclotomic {
                    field: field.clone(),
                    coeffs: field.reduce(poly),
                })
            }
            _ => unreachable!("generator_power on a non-cyclotomic field"),
        }
    }

    /// Parses a scalar literal in this field.
    ///
    /// Accepts sums of terms `c`, `z`, `z^k`, `c*z^k` where `c` is an integer
    /// or fraction `p/q` and `z` is the field's designated root: ζₙ in
    /// ℚ(ζₙ), the least primitive root in 𝔽ₚ, −1 in ℚ.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let err = || ScalarError::Parse(text.to_string());
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            let prev = cleaned[..i].chars().last();
            let splits = (ch == '+' || ch == '-')
                && i > 0
                && !matches!(prev, Some('^') | Some('*') | Some('+') | Some('-') | Some('/'));
            if splits {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);
        let mut total = self.zero();
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(&term);
            total = &total + &self.parse_term(term).ok_or_else(err)?;
        }
        Ok(total)
    }

    fn parse_term(&self, term: &str) -> Option<Scalar> {
        let (coeff, power) = match term.find('z') {
            None => (term, None),
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                let tail = &term[pos + 1..];
                let exp: i64 = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')?.parse().ok()?
                };
                (head, Some(exp))
            }
        };
        let c = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            s => parse_rational(s)?,
        };
        let c = self.from_rational(&c).ok()?;
        match power {
            None => Some(c),
            Some(exp) => {
                let z = self.designated_root();
                Some(&c * &z.pow(exp).ok()?)
            }
        }
    }

    fn designated_root(&self) -> Scalar {
        match self {
            FieldCtx::Rationals => self.from_int(-1),
            FieldCtx::Cyclotomic(_) => self.generator_power(1),
            FieldCtx::Prime(p) => self.zeta(p - 1).expect("prime fields are cyclic"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = ScalarError;

    /// `Q`, `Q(zN)`, `cyclotomic:N`, `FP`, `GF(P)`, `prime:P`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldCtx::Rationals);
        }
        let num = |x: &str| x.trim().parse::<u32>().map_err(|_| err());
        if let Some(rest) = t.strip_prefix("Q(z").or_else(|| t.strip_prefix("Q(zeta")) {
            return FieldCtx::cyclotomic(num(rest.trim_end_matches(')'))?);
        }
        if let Some(rest) = t.strip_prefix("cyclotomic:") {
            return FieldCtx::cyclotomic(num(rest)?);
        }
        if let Some(rest) = t.strip_prefix("GF(") {
            return FieldCtx::prime(num(rest.trim_end_matches(')'))?);
        }
        if let Some(rest) = t.strip_prefix("prime:") {
            return FieldCtx::prime(num(rest)?);
        }
        if let Some(rest) = t.strip_prefix('F') {
            return FieldCtx::prime(num(rest)?);
        }
        Err(err())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn mod_bigint(v: &BigInt, p: u32) -> u32 {
    v.mod_floor(&BigInt::from(p)).to_u32().unwrap()
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, (p - 2) as u64, p)
}

/// Element of ℚ(ζₙ) in the power basis, reduced modulo Φₙ.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

/// Residue class in 𝔽ₚ, stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    p: u32,
    value: u32,
}

impl Residue {
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.value
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
    Prime(Residue),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.same_field(b)?;
    Ok(match op {
        ArithOp::Add => a.add_unchecked(b),
        ArithOp::Sub => a.add_unchecked(&b.neg_ref()),
        ArithOp::Mul => a.mul_unchecked(b),
        ArithOp::Div => a.mul_unchecked(&b.inv()?),
    })
}

/// ζ^k for the designated primitive n-th root of `ctx`.
pub fn zeta_power(ctx: &FieldCtx, n: u32, k: i64) -> Result<Scalar> {
    ctx.zeta(n)?.pow(k)
}

/// True iff `z` has multiplicative order exactly `m`.
pub fn is_primitive_root(z: &Scalar, m: u32) -> bool {
    z.multiplicative_order() == Some(m)
}

impl Scalar {
    pub fn field(&self) -> FieldCtx {
        match self {
            Scalar::Rational(_) => FieldCtx::Rationals,
            Scalar::Cyclotomic(c) => FieldCtx::Cyclotomic(c.field.clone()),
            Scalar::Prime(r) => FieldCtx::Prime(r.p),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let same = match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => a.field.n == b.field.n,
            (Scalar::Prime(a), Scalar::Prime(b)) => a.p == b.p,
            _ => false,
        };
        if same {
            Ok(())
        } else {
            Err(ScalarError::MixedContext(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.iter().all(Zero::is_zero),
            Scalar::Prime(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(c) => {
                c.coeffs[0].is_one() && c.coeffs[1..].iter().all(Zero::is_zero)
            }
            Scalar::Prime(r) => r.value == 1,
        }
    }

    /// The value as a rational number, if it is one (always false in 𝔽ₚ).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) if c.coeffs[1..].iter().all(Zero::is_zero) => {
                Some(c.coeffs[0].clone())
            }
            _ => None,
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
            Scalar::Prime(r) => Scalar::Prime(Residue {
                p: r.p,
                value: (r.p - r.value) % r.p,
            }),
        }
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(Cyclotomic {
                field: a.field.clone(),
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
            }),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(Residue {
                p: a.p,
                value: ((a.value as u64 + b.value as u64) % a.p as u64) as u32,
            }),
            _ => unreachable!(),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                let deg = a.field.degree();
                let mut prod = vec![BigRational::zero(); 2 * deg - 1];
                for (i, x) in a.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.coeffs.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                Scalar::Cyclotomic(Cyclotomic {
                    field: a.field.clone(),
                    coeffs: a.field.reduce(prod),
                })
            }
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(Residue {
                p: a.p,
                value: mul_mod(a.value, b.value, a.p),
            }),
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime(r) => Scalar::Prime(Residue {
                p: r.p,
                value: inv_mod(r.value, r.p),
            }),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coeffs: cyclotomic_inverse(c),
            }),
        })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Least d > 0 with self^d = 1, if it exists.
    pub fn multiplicative_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        // Roots of unity in ℚ(ζ_N) have order dividing lcm(2, N).
        let bound = match self {
            Scalar::Rational(_) => 2,
            Scalar::Cyclotomic(c) => {
                if c.field.n % 2 == 0 {
                    c.field.n
                } else {
                    2 * c.field.n
                }
            }
            Scalar::Prime(r) => r.p - 1,
        };
        let mut acc = self.clone();
        for d in 1..=bound {
            if acc.is_one() {
                return Some(d);
            }
            acc = acc.mul_unchecked(self);
        }
        None
    }

    /// Re-reduces a value; a no-op on canonical values.
    pub fn canonical(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(BigRational::new(r.numer().clone(), r.denom().clone())),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coeffs: c.field.reduce(c.coeffs.clone()),
            }),
            Scalar::Prime(r) => Scalar::Prime(Residue {
                p: r.p,
                value: r.value % r.p,
            }),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        arith(ArithOp::Div, self, other)
    }
}

/// Solves c · y = 1 in ℚ[x]/Φₙ via the multiplication matrix of c.
fn cyclotomic_inverse(c: &Cyclotomic) -> Vec<BigRational> {
    let deg = c.field.degree();
    // Column j of the matrix is c·x^j reduced.
    let mut rows = vec![vec![BigRational::zero(); deg + 1]; deg];
    for j in 0..deg {
        let mut poly = vec![BigRational::zero(); deg + j];
        for (i, x) in c.coeffs.iter().enumerate() {
            poly[i + j] = x.clone();
        }
        let col = c.field.reduce(poly);
        for (i, v) in col.into_iter().enumerate() {
            rows[i][j] = v;
        }
    }
    rows[0][deg] = BigRational::one();
    for col in 0..deg {
        let pivot = (col..deg)
            .find(|&r| !rows[r][col].is_zero())
            .expect("nonzero elements of a field are invertible");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..deg {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in col..=deg {
                    let delta = &factor * &rows[col][k];
                    rows[r][k] -= delta;
                }
            }
        }
    }
    rows.into_iter().map(|r| r[deg].clone()).collect()
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                if let Err(e) = self.same_field(rhs) {
                    panic!("{e}");
                }
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_unchecked(b));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_unchecked(&b.neg_ref()));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_unchecked(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Prime(r) => write!(f, "{}", r.value),
            Scalar::Cyclotomic(c) => {
                let mut out = String::new();
                for (i, x) in c.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let neg = x.is_negative();
                    let mag = x.abs();
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    match i {
                        0 => out.push_str(&fmt_rational(&mag)),
                        _ => {
                            if !mag.is_one() {
                                out.push_str(&fmt_rational(&mag));
                                out.push('*');
                            }
                            out.push('z');
                            if i > 1 {
                                out.push_str(&format!("^{i}"));
                            }
                        }
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                write!(f, "{out}")
            }
        }
    }
}

/// Serialized rationals always carry an explicit denominator: `"p/q"`.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rational(String),
    Cyclotomic { n: u32, coeffs: Vec<String> },
    Prime { p: u32, value: u32 },
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Rational(r) => ScalarRepr::Rational(rational_to_string(r)),
            Scalar::Cyclotomic(c) => ScalarRepr::Cyclotomic {
                n: c.field.n,
                coeffs: c.coeffs.iter().map(rational_to_string).collect(),
            },
            Scalar::Prime(r) => ScalarRepr::Prime {
                p: r.p,
                value: r.value,
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Rational(s) => parse_rational(&s)
                .map(Scalar::Rational)
                .ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))),
            ScalarRepr::Cyclotomic { n, coeffs } => {
                let ctx = FieldCtx::cyclotomic(n).map_err(D::Error::custom)?;
                let FieldCtx::Cyclotomic(field) = ctx else {
                    unreachable!()
                };
                if coeffs.len() != field.degree() {
                    return Err(D::Error::custom(format!(
                        "expected {} coefficients for Q(z{n})",
                        field.degree()
                    )));
                }
                let coeffs = coeffs
                    .iter()
                    .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Scalar::Cyclotomic(Cyclotomic { field, coeffs }))
            }
            ScalarRepr::Prime { p, value } => {
                FieldCtx::prime(p).map_err(D::Error::custom)?;
                if value >= p {
                    return Err(D::Error::custom(format!("residue {value} not in [0, {p})")));
                }
                Ok(Scalar::Prime(Residue { p, value }))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FieldRepr {
    Rationals,
    Cyclotomic { n: u32 },
    Prime { p: u32 },
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldCtx::Rationals => FieldRepr::Rationals,
            FieldCtx::Cyclotomic(c) => FieldRepr::Cyclotomic { n: c.n },
            FieldCtx::Prime(p) => FieldRepr::Prime { p: *p },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldCtx {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match FieldRepr::deserialize(deserializer)? {
            FieldRepr::Rationals => Ok(FieldCtx::Rationals),
            FieldRepr::Cyclotomic { n } => FieldCtx::cyclotomic(n).map_err(D::Error::custom),
            FieldRepr::Prime { p } => FieldCtx::prime(p).map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=64u32 {
            let phi = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(cyclotomic_polynomial(n).len() - 1, phi, "degree of Φ_{n}");
        }
    }

    #[test]
    fn i_squared() {
        let k = FieldCtx::cyclotomic(4).unwrap();
        let i = k.zeta(4).unwrap();
        assert_eq!(&i * &i, k.from_int(-1));
    }

    #[test]
    fn zeta3_squared_reduces_mod_phi3() {
        let k = FieldCtx::cyclotomic(3).unwrap();
        let z = k.zeta(3).unwrap();
        let expected = k.parse_scalar("-1 - z").unwrap();
        assert_eq!(&z * &z, expected);
    }

    #[test]
    fn division_in_f5() {
        let k = FieldCtx::prime(5).unwrap();
        let r = arith(ArithOp::Div, &k.one(), &k.from_int(3)).unwrap();
        assert_eq!(r, k.from_int(2));
    }

    #[test]
    fn arith_errors() {
        let k = FieldCtx::prime(5).unwrap();
        assert_eq!(
            arith(ArithOp::Div, &k.one(), &k.from_int(5)),
            Err(ScalarError::DivisionByZero)
        );
        assert!(matches!(
            arith(ArithOp::Add, &k.one(), &q(1, 1)),
            Err(ScalarError::MixedContext(..))
        ));
    }

    #[test]
    fn zeta_powers() {
        let k2 = FieldCtx::cyclotomic(2).unwrap();
        assert_eq!(zeta_power(&k2, 2, 1).unwrap(), k2.from_int(-1));
        let k6 = FieldCtx::cyclotomic(6).unwrap();
        assert_eq!(zeta_power(&k6, 6, 3).unwrap(), k6.from_int(-1));
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(zeta_power(&f3, 2, 1).unwrap(), f3.from_int(2));
        assert!(matches!(
            zeta_power(&FieldCtx::prime(5).unwrap(), 3, 1),
            Err(ScalarError::NoRootOfUnity { .. })
        ));
        for n in 1..=64 {
            let k = FieldCtx::cyclotomic(n).unwrap();
            assert!(zeta_power(&k, n, n as i64).unwrap().is_one());
            assert!(is_primitive_root(&k.zeta(n).unwrap(), n));
        }
    }

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(&q(-1, 1), 2));
        assert!(!is_primitive_root(&q(1, 1), 2));
        assert!(!is_primitive_root(&q(2, 1), 2));
        let f5 = FieldCtx::prime(5).unwrap();
        assert!(is_primitive_root(&f5.from_int(2), 4));
        assert!(!is_primitive_root(&f5.from_int(4), 4));
        // −ζ₃ is a primitive 6th root inside ℚ(ζ₃)
        let k3 = FieldCtx::cyclotomic(3).unwrap();
        assert!(is_primitive_root(&k3.zeta(6).unwrap(), 6));
    }

    #[test]
    fn field_bounds() {
        assert!(matches!(
            FieldCtx::cyclotomic(65),
            Err(ScalarError::TooLarge { .. })
        ));
        assert!(matches!(FieldCtx::prime(101), Err(ScalarError::TooLarge { .. })));
        assert_eq!(FieldCtx::prime(9), Err(ScalarError::NotPrime(9)));
        let wide = Limits {
            max_cyclotomic_order: 128,
            max_prime: 1000,
        };
        assert!(FieldCtx::cyclotomic_with(100, &wide).is_ok());
        assert!(FieldCtx::prime_with(101, &wide).is_ok());
    }

    #[test]
    fn serde_shapes() {
        let k = FieldCtx::cyclotomic(4).unwrap();
        let z = k.parse_scalar("1/2 - 3*z").unwrap();
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"{"n":4,"coeffs":["1/2","-3/1"]}"#);
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), z);
        assert_eq!(serde_json::to_string(&q(-2, 4)).unwrap(), r#""-1/2""#);
        let f = FieldCtx::prime(7).unwrap().from_int(10);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":7,"value":3}"#);
        assert_eq!(
            serde_json::to_string(&FieldCtx::prime(7).unwrap()).unwrap(),
            r#"{"kind":"prime","p":7}"#
        );
        assert!(serde_json::from_str::<Scalar>(r#"{"p":7,"value":9}"#).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("Q(z8)".parse::<FieldCtx>().unwrap(), FieldCtx::cyclotomic(8).unwrap());
        assert_eq!("F5".parse::<FieldCtx>().unwrap(), FieldCtx::prime(5).unwrap());
        assert_eq!("Q".parse::<FieldCtx>().unwrap(), FieldCtx::Rationals);
        let k = FieldCtx::Rationals;
        assert_eq!(k.parse_scalar("1/3").unwrap(), q(1, 3));
        assert_eq!(k.parse_scalar("-2").unwrap(), q(-2, 1));
        let k8 = FieldCtx::cyclotomic(8).unwrap();
        assert_eq!(k8.parse_scalar("z^4").unwrap(), k8.from_int(-1));
        assert_eq!(k8.parse_scalar("z^-1").unwrap(), k8.parse_scalar("-z^3").unwrap());
        assert_eq!(k8.parse_scalar("2*z").unwrap().to_string(), "2*z");
    }

    fn cyclo_strategy(n: u32) -> impl Strategy<Value = Scalar> {
        let k = FieldCtx::cyclotomic(n).unwrap();
        let deg = match &k {
            FieldCtx::Cyclotomic(f) => f.degree(),
            _ => unreachable!(),
        };
        proptest::collection::vec((-5i64..=5, 1i64..=4), deg).prop_map(move |cs| {
            let mut acc = k.zero();
            for (i, (a, b)) in cs.into_iter().enumerate() {
                let c = k.from_rational(&BigRational::new(a.into(), b.into())).unwrap();
                acc = &acc + &(&c * &k.zeta(n).unwrap().pow(i as i64).unwrap());
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn field_axioms_cyclotomic(a in cyclo_strategy(12), b in cyclo_strategy(12), c in cyclo_strategy(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.canonical(), a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn field_axioms_prime(x in 0u32..97, y in 0u32..97, z in 0u32..97) {
            let k = FieldCtx::prime(97).unwrap();
            let (a, b, c) = (k.from_int(x as i64), k.from_int(y as i64), k.from_int(z as i64));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn rational_canonical(n in -50i64..50, d in 1i64..50) {
            let r = q(n, d);
            if let Scalar::Rational(v) = &r {
                prop_assert!(v.denom().is_positive());
                prop_assert!(v.numer().gcd(v.denom()).is_one() || v.numer().is_zero());
            }
            prop_assert_eq!(r.canonical(), r);
        }
    }
}
