//! Arithmetic in the prime field `F_r` and in `F_r[x]`, integer cyclotomic
//! polynomials, and equal-degree factorization of `Phi_m` over `F_r`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{self, divisors, moebius, multiplicative_order};

/// Largest admissible field characteristic; keeps products inside `u64`.
pub const MAX_MODULUS: u32 = 1 << 31;

fn check_modulus(r: u32) -> Result<()> {
    if r >= MAX_MODULUS || !numtheory::is_prime(r as u64) {
        return Err(Error::invalid(format!("{r} is not a prime below 2^31")));
    }
    Ok(())
}

/// A residue class in `F_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(FieldElement {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(FieldElement {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }

    fn same_field(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "field elements from different fields");
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement {
            value: sub_mod(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, r: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= r as u64 { s - r as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, r: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + r as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, r: u32) -> u32 {
    (a as u64 * b as u64 % r as u64) as u32
}

pub(crate) fn inv_mod(a: u32, r: u32) -> u32 {
    // r is prime, so a^(r-2) is the inverse
    numtheory::pow_mod(a as u64, r as u64 - 2, r as u64) as u32
}

/// A polynomial over `F_r`, stored densely by ascending degree.
///
/// The zero polynomial has no coefficients; every other value has a nonzero
/// leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPolynomial")]
pub struct FieldPolynomial {
    modulus: u32,
    coefficients: Vec<u32>,
}

#[derive(Deserialize)]
struct RawPolynomial {
    modulus: u32,
    coefficients: Vec<i64>,
}

impl TryFrom<RawPolynomial> for FieldPolynomial {
    type Error = Error;
    fn try_from(raw: RawPolynomial) -> Result<Self> {
        FieldPolynomial::from_signed(&raw.coefficients, raw.modulus)
    }
}

impl FieldPolynomial {
    /// Builds a polynomial from residues, reducing them mod `r`.
    pub fn new(coefficients: Vec<u32>, r: u32) -> Result<Self> {
        check_modulus(r)?;
        let coefficients = coefficients.into_iter().map(|c| c % r).collect();
        Ok(Self::from_reduced(coefficients, r))
    }

    pub fn from_signed(coefficients: &[i64], r: u32) -> Result<Self> {
        check_modulus(r)?;
        let coefficients = coefficients
            .iter()
            .map(|&c| c.rem_euclid(r as i64) as u32)
            .collect();
        Ok(Self::from_reduced(coefficients, r))
    }

    pub(crate) fn from_reduced(mut coefficients: Vec<u32>, r: u32) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        FieldPolynomial {
            modulus: r,
            coefficients,
        }
    }

    pub fn zero(r: u32) -> Self {
        Self::from_reduced(Vec::new(), r)
    }

    pub fn one(r: u32) -> Self {
        Self::from_reduced(vec![1], r)
    }

    pub fn x(r: u32) -> Self {
        Self::from_reduced(vec![0, 1], r)
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(m: usize, r: u32) -> Self {
        let mut c = vec![0; m + 1];
        c[0] = r - 1;
        c[m] = 1;
        Self::from_reduced(c, r)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Coefficients by ascending degree; empty for the zero polynomial.
    pub fn coefficients(&self) -> &[u32] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> FieldElement {
        FieldElement {
            value: self.coefficients.get(i).copied().unwrap_or(0),
            modulus: self.modulus,
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coefficients == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<u32> {
        self.coefficients.last().copied()
    }

    pub fn evaluate(&self, at: u32) -> u32 {
        let r = self.modulus;
        self.coefficients
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, at % r, r), c, r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lead) => self.scale(inv_mod(lead, self.modulus)),
        }
    }

    pub fn scale(&self, factor: u32) -> Self {
        let r = self.modulus;
        Self::from_reduced(
            self.coefficients.iter().map(|&c| mul_mod(c, factor % r, r)).collect(),
            r,
        )
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::invalid(format!(
                "polynomials over F_{} and F_{}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    /// Euclidean division: `self = quotient * divisor + remainder`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same_field(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let r = self.modulus;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(r), Self::zero(r)));
        };
        if nd < dd {
            return Ok((Self::zero(r), self.clone()));
        }
        let lead_inv = inv_mod(divisor.coefficients[dd], r);
        let mut rem = self.coefficients.clone();
        let mut quot = vec![0u32; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = mul_mod(rem[i + dd], lead_inv, r);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coefficients.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, d, r), r);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(quot, r), Self::from_reduced(rem, r)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; fails unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, rem) = self.divmod(divisor)?;
        if !rem.is_zero() {
            return Err(Error::invalid("division is not exact"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let rem = a.rem(&b)?;
            a = b;
            b = rem;
        }
        Ok(a.monic())
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.modulus).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.modulus, other.modulus, "polynomials from different fields");
        let r = self.modulus;
        let n = self.coefficients.len().max(other.coefficients.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coefficients.get(i).copied().unwrap_or(0);
                let b = other.coefficients.get(i).copied().unwrap_or(0);
                if negate {
                    sub_mod(a, b, r)
                } else {
                    add_mod(a, b, r)
                }
            })
            .collect();
        Self::from_reduced(out, r)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "polynomials from different fields");
        let r = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(r);
        }
        let (a, b) = (&self.coefficients, &other.coefficients);
        let rr = r as u64;
        let term_bound = (rr - 1) * (rr - 1);
        let terms = a.len().min(b.len()) as u64;
        let lazy = term_bound == 0 || terms < u64::MAX / term_bound.max(1);
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..].iter_mut().zip(b.iter()) {
                if lazy {
                    *slot += x * y as u64;
                } else {
                    *slot = (*slot + x * y as u64 % rr) % rr;
                }
            }
        }
        Self::from_reduced(acc.into_iter().map(|v| (v % rr) as u32).collect(), r)
    }
}

impl Add for &FieldPolynomial {
    type Output = FieldPolynomial;
    fn add(self, rhs: Self) -> FieldPolynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub for &FieldPolynomial {
    type Output = FieldPolynomial;
    fn sub(self, rhs: Self) -> FieldPolynomial {
        self.add_impl(rhs, true)
    }
}

impl Mul for &FieldPolynomial {
    type Output = FieldPolynomial;
    fn mul(self, rhs: Self) -> FieldPolynomial {
        self.mul_impl(rhs)
    }
}

impl Neg for &FieldPolynomial {
    type Output = FieldPolynomial;
    fn neg(self) -> FieldPolynomial {
        &FieldPolynomial::zero(self.modulus) - self
    }
}

impl PartialOrd for FieldPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on `(modulus, ascending coefficient sequence)`.
impl Ord for FieldPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, &self.coefficients).cmp(&(other.modulus, &other.coefficients))
    }
}

impl fmt::Debug for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self, self.modulus)
    }
}

impl fmt::Display for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Euclidean division of `a` by `b`.
pub fn poly_divmod(a: &FieldPolynomial, b: &FieldPolynomial) -> Result<(FieldPolynomial, FieldPolynomial)> {
    a.divmod(b)
}

/// Integer coefficients of `Phi_m`, ascending degree.
///
/// Multiplies the `x^d - 1` with `mu(m/d) = 1`, then divides exactly by those
/// with `mu(m/d) = -1`.
pub fn integer_cyclotomic(m: u64) -> Result<Vec<i128>> {
    if m == 0 {
        return Err(Error::invalid("cyclotomic index must be positive"));
    }
    let mut numerator = vec![1i128];
    let mut denominators = Vec::new();
    for d in divisors(m) {
        match moebius(m / d)? {
            1 => numerator = mul_x_pow_minus_one(&numerator, d as usize)?,
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    for d in denominators {
        numerator = div_x_pow_minus_one(&numerator, d)?;
    }
    Ok(numerator)
}

fn mul_x_pow_minus_one(a: &[i128], d: usize) -> Result<Vec<i128>> {
    let mut out = vec![0i128; a.len() + d];
    for (i, &c) in a.iter().enumerate() {
        out[i + d] = out[i + d].checked_add(c).ok_or(Error::Overflow("cyclotomic product"))?;
        out[i] = out[i].checked_sub(c).ok_or(Error::Overflow("cyclotomic product"))?;
    }
    Ok(out)
}

fn div_x_pow_minus_one(a: &[i128], d: usize) -> Result<Vec<i128>> {
    // a = q * (x^d - 1)  =>  q_i = a_{i+d} + q_{i+d}, walking down from the top
    let n = a.len() - 1;
    if n < d {
        return Err(Error::invalid("cyclotomic quotient is not exact"));
    }
    let mut q = vec![0i128; n - d + 1];
    for i in (0..=n - d).rev() {
        let above = q.get(i + d).copied().unwrap_or(0);
        q[i] = a[i + d].checked_add(above).ok_or(Error::Overflow("cyclotomic quotient"))?;
    }
    if mul_x_pow_minus_one(&q, d)? != a {
        return Err(Error::invalid("cyclotomic quotient is not exact"));
    }
    Ok(q)
}

/// `Phi_m` reduced mod `r`.
pub fn cyclotomic_polynomial(m: u64, r: u32) -> Result<FieldPolynomial> {
    check_modulus(r)?;
    if m.gcd(&(r as u64)) != 1 {
        return Err(Error::invalid(format!(
            "gcd({m}, {r}) != 1, so x^{m} - 1 has repeated factors over F_{r}"
        )));
    }
    let ints = integer_cyclotomic(m)?;
    let reduced = ints.iter().map(|&c| c.rem_euclid(r as i128) as u32).collect();
    Ok(FieldPolynomial::from_reduced(reduced, r))
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(r^n) = x (mod f)`
/// and `gcd(x^(r^(n/s)) - x, f) = 1` for every prime `s | n`.
pub fn is_irreducible(f: &FieldPolynomial) -> Result<bool> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::invalid("irreducibility of a constant polynomial")),
    };
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let r = f.modulus();
    let x = FieldPolynomial::x(r);
    // frob[i] = x^(r^i) mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.rem(&f)?);
    for i in 0..n {
        let next = frob[i].pow_mod(r as u128, &f)?;
        frob.push(next);
    }
    if frob[n] != x.rem(&f)? {
        return Ok(false);
    }
    for (s, _) in numtheory::factorize(n as u64) {
        let h = &frob[n / s as usize] - &x;
        if !h.gcd(&f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Knobs for [`factor_cyclotomic_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    /// Seed for the randomized splitter.
    pub seed: u64,
    /// Use exhaustive trial division when `r^k` is at most this.
    pub exhaustive_threshold: u128,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            seed: 0,
            exhaustive_threshold: 4096,
        }
    }
}

/// Monic irreducible factors of `Phi_m` over `F_r`, sorted.
pub fn factor_cyclotomic(m: u64, r: u32) -> Result<Vec<FieldPolynomial>> {
    factor_cyclotomic_with(m, r, &FactorOptions::default())
}

pub fn factor_cyclotomic_with(m: u64, r: u32, opts: &FactorOptions) -> Result<Vec<FieldPolynomial>> {
    let phi = cyclotomic_polynomial(m, r)?;
    let k = if m == 1 { 1 } else { multiplicative_order(r as u64, m)? as usize };
    let n = phi.degree().expect("cyclotomic polynomials are nonzero");
    debug_assert_eq!(n % k, 0);

    let candidates = (r as u128).checked_pow(k as u32);
    let mut factors = match candidates {
        Some(c) if c <= opts.exhaustive_threshold => split_by_trial_division(&phi, k),
        _ => split_equal_degree(&phi, k, opts.seed)?,
    };
    factors.sort();
    debug_assert_eq!(factors.len(), n / k);
    Ok(factors)
}

/// Iterates every monic polynomial of the given degree in radix-`r` counter
/// order of its lower coefficients.
pub fn monic_polynomials(degree: usize, r: u32) -> impl Iterator<Item = FieldPolynomial> {
    let total = (r as u128).pow(degree as u32);
    (0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push((idx % r as u128) as u32);
            idx /= r as u128;
        }
        c.push(1);
        FieldPolynomial::from_reduced(c, r)
    })
}

fn split_by_trial_division(f: &FieldPolynomial, k: usize) -> Vec<FieldPolynomial> {
    let r = f.modulus();
    let mut rest = f.monic();
    let mut out = Vec::new();
    for cand in monic_polynomials(k, r) {
        if rest.degree() == Some(0) {
            break;
        }
        let (q, rem) = rest.divmod(&cand).expect("nonzero divisor");
        if rem.is_zero() {
            out.push(cand);
            rest = q;
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a squarefree product of degree-`k`
/// irreducibles.
fn split_equal_degree(f: &FieldPolynomial, k: usize, seed: u64) -> Result<Vec<FieldPolynomial>> {
    let r = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending = vec![f.monic()];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        let n = g.degree().expect("nonzero");
        if n == k {
            done.push(g);
            continue;
        }
        loop {
            let a = FieldPolynomial::from_reduced((0..n).map(|_| rng.gen_range(0..r)).collect(), r);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if r == 2 {
                trace_map(&a, k, &g)?
            } else {
                &half_power(&a, k, &g)? - &FieldPolynomial::one(r)
            };
            let d = b.gcd(&g)?;
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < n {
                let other = g.exact_div(&d)?;
                pending.push(d);
                pending.push(other);
                break;
            }
        }
    }
    Ok(done)
}

/// `a + a^2 + a^4 + ... + a^(2^(k-1)) mod g` over `F_2`.
/// `a^((r^k - 1)/2) mod g`, computed as `(a * a^r * ... * a^(r^(k-1)))^((r-1)/2)`
/// so that `r^k` never has to fit in an integer.
fn half_power(a: &FieldPolynomial, k: usize, g: &FieldPolynomial) -> Result<FieldPolynomial> {
    let r = a.modulus();
    let mut conj = a.rem(g)?;
    let mut norm = conj.clone();
    for _ in 1..k {
        conj = conj.pow_mod(r as u128, g)?;
        norm = norm.mul_mod(&conj, g)?;
    }
    norm.pow_mod(((r - 1) / 2) as u128, g)
}

fn trace_map(a: &FieldPolynomial, k: usize, g: &FieldPolynomial) -> Result<FieldPolynomial> {
    let mut term = a.rem(g)?;
    let mut acc = term.clone();
    for _ in 1..k {
        term = term.mul_mod(&term, g)?;
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64], r: u32) -> FieldPolynomial {
        FieldPolynomial::from_signed(c, r).unwrap()
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most half.
    fn irreducible_by_search(f: &FieldPolynomial) -> bool {
        let n = f.degree().unwrap();
        (1..=n / 2).all(|d| monic_polynomials(d, f.modulus()).all(|g| !g.divides(f).unwrap()))
    }

    #[test]
    fn field_element_axioms() {
        let r = 7;
        for a in 0..7 {
            let x = FieldElement::new(a, r).unwrap();
            assert_eq!(x + (-x), FieldElement::new(0, r).unwrap());
            if a != 0 {
                assert_eq!((x * x.inverse().unwrap()).value(), 1);
            } else {
                assert!(x.inverse().is_none());
            }
        }
        assert_eq!(FieldElement::new(-1, 5).unwrap().value(), 4);
        assert!(FieldElement::new(1, 6).is_err());
    }

    #[test]
    fn zero_polynomial_is_canonical() {
        let z = p(&[0, 0, 3], 3);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z, FieldPolynomial::zero(3));
    }

    #[test]
    fn divmod_examples() {
        let (q, rem) = poly_divmod(&p(&[-1, 0, 1], 3), &p(&[-1, 1], 3)).unwrap();
        assert_eq!(q, p(&[1, 1], 3));
        assert!(rem.is_zero());

        let (q, rem) = poly_divmod(&p(&[0, 1], 3), &p(&[0, 0, 1], 3)).unwrap();
        assert!(q.is_zero());
        assert_eq!(rem, p(&[0, 1], 3));

        assert_eq!(
            poly_divmod(&p(&[1], 3), &FieldPolynomial::zero(3)),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            poly_divmod(&p(&[1], 3), &p(&[1], 5)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn cubic_factor_divides_x13_minus_1() {
        let x13 = FieldPolynomial::x_pow_minus_one(13, 3);
        for h in factor_cyclotomic(13, 3).unwrap() {
            assert!(poly_divmod(&x13, &h).unwrap().1.is_zero());
        }
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1, 5).unwrap(), p(&[-1, 1], 5));
        assert_eq!(cyclotomic_polynomial(13, 3).unwrap(), p(&[1; 13], 3));
        assert_eq!(cyclotomic_polynomial(6, 5).unwrap(), p(&[1, 4, 1], 5));
        assert!(cyclotomic_polynomial(6, 3).is_err());
        // Phi_105 is the first with a coefficient of absolute value 2
        assert_eq!(integer_cyclotomic(105).unwrap().iter().map(|c| c.abs()).max(), Some(2));
    }

    #[test]
    fn integer_cyclotomic_degree_is_phi() {
        for m in 1..=120u64 {
            let c = integer_cyclotomic(m).unwrap();
            assert_eq!(c.len() as u64 - 1, numtheory::euler_phi(m).unwrap());
            assert_eq!(*c.last().unwrap(), 1);
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p(&[2, 1], 3)).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1], 3)).unwrap());
        assert!(is_irreducible(&p(&[1, 0, 1], 3)).unwrap());
        assert!(is_irreducible(&p(&[2], 3)).is_err());
    }

    #[test]
    fn rabin_matches_exhaustive_search() {
        for r in [2u32, 3, 5] {
            for d in 1..=4 {
                for f in monic_polynomials(d, r) {
                    assert_eq!(is_irreducible(&f).unwrap(), irreducible_by_search(&f), "{f:?}");
                }
            }
        }
        // 8 monic irreducible cubics over F_3 and 18 quartics
        assert_eq!(monic_polynomials(3, 3).filter(|f| is_irreducible(f).unwrap()).count(), 8);
        assert_eq!(monic_polynomials(4, 3).filter(|f| is_irreducible(f).unwrap()).count(), 18);
    }

    #[test]
    fn phi13_over_f3_by_trial_division() {
        // independent route: divide Phi_13 by every irreducible monic cubic
        let phi = cyclotomic_polynomial(13, 3).unwrap();
        let mut expected: Vec<_> = monic_polynomials(3, 3)
            .filter(|f| irreducible_by_search(f) && f.divides(&phi).unwrap())
            .collect();
        expected.sort();
        let got = factor_cyclotomic(13, 3).unwrap();
        assert_eq!(got.len(), 4);
        assert_eq!(got, expected);
        assert_eq!(
            got.iter().map(|f| f.coefficients().to_vec()).collect::<Vec<_>>(),
            vec![vec![2, 0, 1, 1], vec![2, 1, 1, 1], vec![2, 2, 0, 1], vec![2, 2, 2, 1]]
        );
    }

    #[test]
    fn small_factorizations() {
        let f = factor_cyclotomic(31, 5).unwrap();
        assert_eq!(f.len(), 10);
        assert!(f.iter().all(|h| h.degree() == Some(3)));
        assert_eq!(factor_cyclotomic(2, 3).unwrap(), vec![p(&[1, 1], 3)]);
        assert!(factor_cyclotomic(6, 3).is_err());
    }

    #[test]
    fn randomized_and_exhaustive_paths_agree() {
        let exhaustive = FactorOptions {
            seed: 0,
            exhaustive_threshold: u128::MAX,
        };
        for (m, r) in [(13u64, 3u32), (31, 2), (31, 5), (11, 3), (21, 2), (35, 3)] {
            let a = factor_cyclotomic_with(m, r, &exhaustive).unwrap();
            for seed in [0, 1, 99] {
                let randomized = FactorOptions {
                    seed,
                    exhaustive_threshold: 0,
                };
                assert_eq!(factor_cyclotomic_with(m, r, &randomized).unwrap(), a, "({m}, {r})");
            }
        }
    }

    #[test]
    fn factors_are_irreducible_of_order_degree() {
        for (m, r) in [(13u64, 3u32), (31, 2), (31, 5), (11, 3), (40, 3), (63, 2), (757, 3)] {
            let k = multiplicative_order(r as u64, m).unwrap() as usize;
            let factors = factor_cyclotomic(m, r).unwrap();
            let phi = cyclotomic_polynomial(m, r).unwrap();
            let mut prod = FieldPolynomial::one(r);
            for f in &factors {
                assert!(f.is_monic());
                assert_eq!(f.degree(), Some(k));
                assert!(is_irreducible(f).unwrap());
                prod = &prod * f;
            }
            assert_eq!(prod, phi);
            assert!(factors.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn polynomial_json_shape() {
        let f = p(&[2, 0, 1], 3);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"modulus":3,"coefficients":[2,0,1]}"#);
        let back: FieldPolynomial = serde_json::from_str(r#"{"modulus":3,"coefficients":[-1,0,4,0]}"#).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldPolynomial>(r#"{"modulus":4,"coefficients":[1]}"#).is_err());
    }

    #[test]
    fn cyclotomic_product_identity() {
        for r in [3u32, 5, 7, 11, 13] {
            for m in 1..=60u64 {
                if m % r as u64 == 0 {
                    continue;
                }
                let prod = divisors(m).into_iter().fold(FieldPolynomial::one(r), |acc, d| {
                    &acc * &cyclotomic_polynomial(d, r).unwrap()
                });
                assert_eq!(prod, FieldPolynomial::x_pow_minus_one(m as usize, r), "m = {m}, r = {r}");
            }
        }
    }

    fn arb_poly(r: u32, max_len: usize) -> impl Strategy<Value = FieldPolynomial> {
        proptest::collection::vec(0..r, 0..max_len)
            .prop_map(move |c| FieldPolynomial::new(c, r).unwrap())
    }

    proptest! {
        #[test]
        fn divmod_reassembles(a in arb_poly(7, 20), b in arb_poly(7, 10)) {
            prop_assume!(!b.is_zero());
            let (q, rem) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &rem, a);
            prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(5, 12), b in arb_poly(5, 12)) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.divides(&a).unwrap());
            prop_assert!(g.divides(&b).unwrap());
        }
    }
}
