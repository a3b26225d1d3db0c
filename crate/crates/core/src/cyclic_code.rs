//! Cyclic codes as ideals of `F_r[x]/(x^m - 1)`: construction from a
//! parity-check polynomial, codeword enumeration, zero counts and weights, the
//! McEliece zero-count interval, and the equidistance checks.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_poly::{
    self, add_mod, cyclotomic_polynomial, is_irreducible, mul_mod, sub_mod, FactorOptions, FieldPolynomial,
};
use crate::numtheory::{self, checked_pow, multiplicative_order, repunit};

/// Default cap on `r^k` for full enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 26;

/// A word `(c_0, ..., c_{m-1})` over `F_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    entries: Vec<u32>,
    modulus: u32,
}

impl Codeword {
    pub fn new(entries: Vec<u32>, modulus: u32) -> Self {
        debug_assert!(entries.iter().all(|&e| e < modulus));
        Codeword { entries, modulus }
    }

    pub fn zero(m: usize, modulus: u32) -> Self {
        Codeword::new(vec![0; m], modulus)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `Z(c)`, the number of zero entries.
    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e == 0).count()
    }

    /// `w(c) = m - Z(c)`.
    pub fn hamming_weight(&self) -> usize {
        self.len() - self.zero_count()
    }

    pub fn hamming_distance(&self, other: &Self) -> usize {
        self.sub(other).hamming_weight()
    }

    /// `sigma^t(c)`, where `sigma(c_0, ..., c_{m-1}) = (c_{m-1}, c_0, ..., c_{m-2})`.
    pub fn shifted(&self, t: i64) -> Self {
        let m = self.len();
        if m == 0 {
            return self.clone();
        }
        let t = t.rem_euclid(m as i64) as usize;
        let mut entries = Vec::with_capacity(m);
        entries.extend_from_slice(&self.entries[m - t..]);
        entries.extend_from_slice(&self.entries[..m - t]);
        Codeword::new(entries, self.modulus)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, add_mod)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, sub_mod)
    }

    pub fn neg(&self) -> Self {
        let r = self.modulus;
        Codeword::new(self.entries.iter().map(|&e| sub_mod(0, e, r)).collect(), r)
    }

    fn zip(&self, other: &Self, op: fn(u32, u32, u32) -> u32) -> Self {
        assert_eq!(self.len(), other.len(), "codewords of different lengths");
        assert_eq!(self.modulus, other.modulus, "codewords over different fields");
        let r = self.modulus;
        Codeword::new(
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| op(a, b, r)).collect(),
            r,
        )
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword{:?}", self.entries)
    }
}

pub fn zero_count(c: &Codeword) -> usize {
    c.zero_count()
}

pub fn hamming_weight(c: &Codeword) -> usize {
    c.hamming_weight()
}

/// On-disk description of a code: length, alphabet and parity-check
/// polynomial (ascending coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub m: usize,
    pub r: u32,
    pub h: Vec<i64>,
}

/// A nonzero cyclic `[m, k]_r` code with generator `g` and parity check `h`,
/// `g * h = x^m - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    m: usize,
    r: u32,
    k: usize,
    g: FieldPolynomial,
    h: FieldPolynomial,
}

/// Builds `<g>` with `g = (x^m - 1)/h`.
pub fn build_code_from_parity_check(m: usize, r: u32, h: &FieldPolynomial) -> Result<CyclicCode> {
    if m == 0 {
        return Err(Error::invalid("code length must be positive"));
    }
    if h.modulus() != r {
        return Err(Error::invalid(format!("h is over F_{}, not F_{r}", h.modulus())));
    }
    if (m as u64).gcd(&(r as u64)) != 1 {
        return Err(Error::invalid(format!("gcd({m}, {r}) != 1")));
    }
    if !h.is_monic() {
        return Err(Error::invalid("parity-check polynomial must be monic"));
    }
    if h.is_one() {
        return Err(Error::DegenerateCode("h = 1 gives the zero code".into()));
    }
    let (g, rem) = FieldPolynomial::x_pow_minus_one(m, r).divmod(h)?;
    if !rem.is_zero() {
        return Err(Error::invalid(format!("{h} does not divide x^{m} - 1 over F_{r}")));
    }
    let k = h.degree().expect("monic");
    Ok(CyclicCode { m, r, k, g, h: h.clone() })
}

impl CyclicCode {
    pub fn from_spec(spec: &CodeSpec) -> Result<Self> {
        let h = FieldPolynomial::from_signed(&spec.h, spec.r)?;
        build_code_from_parity_check(spec.m, spec.r, &h)
    }

    /// The code whose parity check is the `index`-th factor (in sorted order)
    /// of `Phi_m` over `F_r`.
    pub fn from_cyclotomic_factor(m: usize, r: u32, index: usize, opts: &FactorOptions) -> Result<Self> {
        let factors = field_poly::factor_cyclotomic_with(m as u64, r, opts)?;
        let count = factors.len();
        let h = factors.into_iter().nth(index).ok_or_else(|| {
            Error::invalid(format!("factor index {index} out of range (Phi_{m} has {count} factors over F_{r})"))
        })?;
        build_code_from_parity_check(m, r, &h)
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec {
            m: self.m,
            r: self.r,
            h: self.h.coefficients().iter().map(|&c| c as i64).collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.m
    }

    pub fn alphabet(&self) -> u32 {
        self.r
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &FieldPolynomial {
        &self.g
    }

    pub fn parity_check(&self) -> &FieldPolynomial {
        &self.h
    }

    /// Number of codewords, `r^k`.
    pub fn size(&self) -> Result<u128> {
        checked_pow(self.r as u64, self.k as u32)
    }

    /// The `k` shifts of `g`'s coefficient vector, row `i` starting at column `i`.
    pub fn generator_matrix(&self) -> Vec<Vec<u32>> {
        let g = self.g.coefficients();
        (0..self.k)
            .map(|i| {
                let mut row = vec![0u32; self.m];
                row[i..i + g.len()].copy_from_slice(g);
                row
            })
            .collect()
    }

    pub fn generator_rows(&self) -> Vec<Codeword> {
        self.generator_matrix()
            .into_iter()
            .map(|row| Codeword::new(row, self.r))
            .collect()
    }

    /// Membership: `c(x) h(x) = 0` in `F_r[x]/(x^m - 1)`.
    pub fn contains(&self, c: &Codeword) -> bool {
        if c.len() != self.m || c.modulus() != self.r {
            return false;
        }
        let r = self.r;
        let mut acc = vec![0u32; self.m];
        for (i, &ci) in c.entries().iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &hj) in self.h.coefficients().iter().enumerate() {
                let slot = &mut acc[(i + j) % self.m];
                *slot = add_mod(*slot, mul_mod(ci, hj, r), r);
            }
        }
        acc.iter().all(|&v| v == 0)
    }

    /// Streams all `r^k` codewords in radix-`r` counter order over the
    /// generator rows, starting with the zero word.
    pub fn enumerate_codewords(&self, budget: u128) -> Result<CodewordIter> {
        let total = self.size()?;
        if total > budget {
            return Err(Error::Capacity {
                what: "codeword enumeration",
                needed: total,
                budget,
            });
        }
        Ok(CodewordIter {
            rows: self.generator_matrix(),
            current: vec![0; self.m],
            digits: vec![0; self.k],
            remaining: total,
            r: self.r,
        })
    }

    /// Which zero-count guarantees apply: `h` must be an
    /// irreducible factor of `Phi_m`, so that `k = ord_m(r)`.
    pub fn is_minimal(&self) -> Result<bool> {
        if self.m < 2 {
            return Ok(false);
        }
        let phi = cyclotomic_polynomial(self.m as u64, self.r)?;
        Ok(self.h.divides(&phi)? && is_irreducible(&self.h)?)
    }
}

pub struct CodewordIter {
    rows: Vec<Vec<u32>>,
    current: Vec<u32>,
    digits: Vec<u32>,
    remaining: u128,
    r: u32,
}

impl Iterator for CodewordIter {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = Codeword::new(self.current.clone(), self.r);
        if self.remaining > 0 {
            // each digit touched by the carry adds its row once; wrapping r-1 -> 0
            // also adds one row since r * row = 0
            for (i, digit) in self.digits.iter_mut().enumerate() {
                for (c, &g) in self.current.iter_mut().zip(&self.rows[i]) {
                    *c = add_mod(*c, g, self.r);
                }
                *digit += 1;
                if *digit < self.r {
                    break;
                }
                *digit = 0;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

/// An exact rational, serialized as numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: i128,
    pub denominator: i128,
}

impl From<Ratio<i128>> for Fraction {
    fn from(v: Ratio<i128>) -> Self {
        Fraction {
            numerator: *v.numer(),
            denominator: *v.denom(),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// Closed interval of admissible zero counts for nonzero codewords.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroCountInterval {
    pub lower: Ratio<i128>,
    pub upper: Ratio<i128>,
    /// False when the half-width involves an odd power of `sqrt(r)` and was
    /// rounded outward.
    pub exact: bool,
}

impl ZeroCountInterval {
    pub fn contains(&self, z: usize) -> bool {
        let z = Ratio::from_integer(z as i128);
        self.lower <= z && z <= self.upper
    }

    pub fn width(&self) -> Ratio<i128> {
        self.upper - self.lower
    }
}

/// Scale of the rational bracket around `sqrt(r)`.
const SQRT_SCALE: i128 = 1 << 24;

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Rational bracket `[lo, hi]` containing `r^(k/2)`.
fn half_power_bracket(r: u64, k: u32) -> Result<(Ratio<i128>, Ratio<i128>)> {
    let base = checked_pow(r, k / 2)? as i128;
    if k.is_multiple_of(2) {
        let v = Ratio::from_integer(base);
        return Ok((v, v));
    }
    let scaled = (r as u128)
        .checked_mul((SQRT_SCALE * SQRT_SCALE) as u128)
        .ok_or(Error::Overflow("sqrt bracket"))?;
    let s = isqrt(scaled) as i128;
    let lo = Ratio::new(base * s, SQRT_SCALE);
    let hi = Ratio::new(base * (s + 1), SQRT_SCALE);
    Ok((lo, hi))
}

/// The McEliece interval for zero counts of nonzero codewords of an
/// irreducible cyclic `[m, k]_r` code: centre `(r^(k-1) - 1) m / (r^k - 1)`,
/// half-width `(1 - 1/r)(gcd(m, r-1)/(r-1) - m/(r^k - 1)) r^(k/2)`.
pub fn mceliece_interval(m: u64, r: u64, k: u32) -> Result<ZeroCountInterval> {
    if m < 2 || r < 2 {
        return Err(Error::precondition("need m >= 2 and r >= 2"));
    }
    if multiplicative_order(r, m).map_err(|e| Error::precondition(e.to_string()))? != k as u64 {
        return Err(Error::precondition(format!("k = {k} is not ord_{m}({r})")));
    }
    let rk = checked_pow(r, k)? as i128;
    let rk1 = checked_pow(r, k - 1)? as i128;
    let (mi, ri) = (m as i128, r as i128);
    let g = m.gcd(&(r - 1)) as i128;

    let centre = Ratio::new((rk1 - 1) * mi, rk - 1);
    let coeff = (Ratio::from_integer(1) - Ratio::new(1, ri)) * (Ratio::new(g, ri - 1) - Ratio::new(mi, rk - 1));
    let (lo, hi) = half_power_bracket(r, k)?;
    let half = if coeff.is_negative() { coeff * lo } else { coeff * hi };
    Ok(ZeroCountInterval {
        lower: centre - half,
        upper: centre + half,
        exact: k.is_multiple_of(2) || coeff.is_zero(),
    })
}

/// `(r^k - 1)/(r - 1) = m / gcd(m, r - 1)`, in exact integer arithmetic.
pub fn equidistant_condition(m: u64, r: u64, k: u32) -> Result<bool> {
    if r < 2 || m == 0 {
        return Err(Error::invalid("need r >= 2 and m >= 1"));
    }
    let g = m.gcd(&(r - 1));
    Ok(repunit(r, k)? == (m / g) as u128)
}

/// The common nonzero weight `m - (1 + r + ... + r^(k-2)) gcd(m, r - 1)` of an
/// equidistant code.
pub fn equidistant_weight(m: u64, r: u64, k: u32) -> Result<u64> {
    if !equidistant_condition(m, r, k)? {
        return Err(Error::precondition(format!(
            "(m, r, k) = ({m}, {r}, {k}) is not an equidistant triple"
        )));
    }
    let g = m.gcd(&(r - 1)) as u128;
    let zeros = repunit(r, k.saturating_sub(1))? * g;
    let w = m as u128 - zeros;
    debug_assert_eq!(
        Ratio::new(m as u128 * (checked_pow(r, k)? - checked_pow(r, k - 1)?), checked_pow(r, k)? - 1),
        Ratio::from_integer(w)
    );
    Ok(w as u64)
}

/// Sufficient conditions for every nonzero codeword to have a zero entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroGuarantee {
    /// The (outward-rounded) interval lower bound is positive.
    pub interval_lower_positive: bool,
    /// `m >= gcd(m, r-1) (r^(k/2) + 1)`.
    pub simplified_condition: bool,
}

fn zero_guarantee(m: u64, r: u64, k: u32, interval: &ZeroCountInterval) -> Result<ZeroGuarantee> {
    let g = m.gcd(&(r - 1));
    // m/g - 1 >= r^(k/2)  <=>  (m/g - 1)^2 >= r^k
    let lhs = (m / g) as u128 - 1;
    let simplified = lhs
        .checked_mul(lhs)
        .is_none_or(|sq| sq >= checked_pow(r, k).unwrap_or(u128::MAX));
    Ok(ZeroGuarantee {
        interval_lower_positive: interval.lower.is_positive(),
        simplified_condition: simplified,
    })
}

/// Results of a full pass over the nonzero codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub m: usize,
    pub r: u32,
    pub k: usize,
    pub h: Vec<u32>,
    pub nonzero_codewords: u128,
    pub min_zero_count: usize,
    pub max_zero_count: usize,
    /// Whether `h` is an irreducible factor of `Phi_m` (the interval applies).
    pub minimal_code: bool,
    pub interval_lower: Option<Fraction>,
    pub interval_upper: Option<Fraction>,
    pub interval_exact: Option<bool>,
    /// (a) every nonzero `Z(c)` lies in the interval.
    pub all_within_interval: Option<bool>,
    /// (b) all nonzero codewords share one weight.
    pub equidistant: bool,
    pub common_weight: Option<usize>,
    pub equidistant_condition: bool,
    pub predicted_weight: Option<u64>,
    /// (c) no codeword has full weight `m`.
    pub no_full_weight: bool,
    /// (d) for `m = (r^k - 1)/(r - 1)` prime: every nonzero `Z(c) = m - r^(k-1)`.
    pub projective_zero_count: Option<bool>,
    pub zero_guarantee: Option<ZeroGuarantee>,
}

impl CodeReport {
    /// False if an identity that must hold for every code was violated.
    pub fn consistent(&self) -> bool {
        self.all_within_interval != Some(false)
            && self.projective_zero_count != Some(false)
            && (!self.equidistant_condition || self.common_weight.map(|w| w as u64) == self.predicted_weight)
    }
}

pub fn verify_code_properties(code: &CyclicCode, budget: u128) -> Result<CodeReport> {
    let (m, r, k) = (code.length() as u64, code.alphabet() as u64, code.dimension() as u32);
    let minimal = code.is_minimal()?;
    let interval = if minimal { Some(mceliece_interval(m, r, k)?) } else { None };

    let mut nonzero = 0u128;
    let mut min_z = usize::MAX;
    let mut max_z = 0usize;
    let mut within = true;
    for c in code.enumerate_codewords(budget)?.skip(1) {
        let z = c.zero_count();
        nonzero += 1;
        min_z = min_z.min(z);
        max_z = max_z.max(z);
        if let Some(iv) = &interval {
            within &= iv.contains(z);
        }
    }
    if nonzero == 0 {
        min_z = 0;
    }

    let equidistant = min_z == max_z && nonzero > 0;
    let condition = equidistant_condition(m, r, k)?;
    let projective = if numtheory::is_prime(m) && repunit(r, k)? == m as u128 && minimal {
        Some(min_z == max_z && min_z as u128 == m as u128 - checked_pow(r, k - 1)?)
    } else {
        None
    };
    Ok(CodeReport {
        m: code.length(),
        r: code.alphabet(),
        k: code.dimension(),
        h: code.parity_check().coefficients().to_vec(),
        nonzero_codewords: nonzero,
        min_zero_count: min_z,
        max_zero_count: max_z,
        minimal_code: minimal,
        interval_lower: interval.map(|iv| iv.lower.into()),
        interval_upper: interval.map(|iv| iv.upper.into()),
        interval_exact: interval.map(|iv| iv.exact),
        all_within_interval: interval.map(|_| within),
        equidistant,
        common_weight: equidistant.then(|| code.length() - min_z),
        equidistant_condition: condition,
        predicted_weight: if condition { Some(equidistant_weight(m, r, k)?) } else { None },
        no_full_weight: min_z > 0,
        projective_zero_count: projective,
        zero_guarantee: interval.map(|iv| zero_guarantee(m, r, k, &iv)).transpose()?,
    })
}
