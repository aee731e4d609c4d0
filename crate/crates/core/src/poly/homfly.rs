use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Two-variable Laurent polynomial in `v` and `z` with integer coefficients.
///
/// Houses the HOMFLYPT invariant normalized by `H(unknot) = 1`. Exponents of
/// both variables may be negative (the split unlink contributes `z^{-1}`).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HomflyPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl HomflyPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(v_exp: i64, z_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((v_exp, z_exp), c);
        }
        Self { terms }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.iter() {
            out.add_term(e, 0, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v_exp: i64, z_exp: i64) -> BigInt {
        self.terms
            .get(&(v_exp, z_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, v_exp: i64, z_exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((v_exp, z_exp))
            .or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(v_exp, z_exp));
        }
    }

    /// Multiply by the monomial `v^a z^b`.
    pub fn shifted(&self, v_shift: i64, z_shift: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + v_shift, b + z_shift), c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x * &c)).collect(),
        }
    }

    /// Substitute `v -> v^{-1}` (mirror); `z` is untouched.
    pub fn mirror_v(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((-a, *b), c.clone()))
                .collect(),
        }
    }

    /// `(v^{-1} - v) z^{-1}`, the split-unlink factor of the full invariant.
    pub fn unlink_factor() -> Self {
        let mut p = Self::zero();
        p.add_term(-1, -1, BigInt::one());
        p.add_term(1, -1, -BigInt::one());
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &HomflyPoly {
    type Output = HomflyPoly;
    fn add(self, rhs: &HomflyPoly) -> HomflyPoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }
}

impl Sub for &HomflyPoly {
    type Output = HomflyPoly;
    fn sub(self, rhs: &HomflyPoly) -> HomflyPoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(*a, *b, -c.clone());
        }
        out
    }
}

impl Neg for &HomflyPoly {
    type Output = HomflyPoly;
    fn neg(self) -> HomflyPoly {
        HomflyPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Mul for &HomflyPoly {
    type Output = HomflyPoly;
    fn mul(self, rhs: &HomflyPoly) -> HomflyPoly {
        let mut out = HomflyPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

/// Decreasing v-exponent, then decreasing z-exponent; `z` rendered after `v`.
impl fmt::Display for HomflyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(i64, i64)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| b.cmp(a));
        let mut first = true;
        for (a, b) in keys {
            let c = &self.terms[&(a, b)];
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_var = false;
            if a != 0 || b != 0 {
                if !mag.is_one() {
                    write!(f, "{}", mag)?;
                }
            } else {
                write!(f, "{}", mag)?;
            }
            if a != 0 {
                if a == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{}", a)?;
                }
                wrote_var = true;
            }
            if b != 0 {
                if wrote_var {
                    write!(f, " ")?;
                }
                if b == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", b)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomflyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Accepts exactly the `Display` grammar, e.g. `v^2 z^-1 - 3v z + 2z^2`.
impl FromStr for HomflyPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let end = hz_monomial_end(rest);
            let (tok, tail) = rest.split_at(end);
            let (v_exp, z_exp, coeff) = parse_vz_monomial(tok.trim())?;
            p.add_term(v_exp, z_exp, coeff * sign);
            let tail = tail.trim_start();
            if tail.is_empty() {
                break;
            }
            if let Some(r) = tail.strip_prefix('-') {
                sign = -1;
                rest = r.trim_start();
            } else if let Some(r) = tail.strip_prefix('+') {
                sign = 1;
                rest = r.trim_start();
            } else {
                return Err(Error::Parse(format!("expected '+' or '-' before '{tail}'")));
            }
        }
        Ok(p)
    }
}

/// Index of the first top-level `+`/`-` that separates monomials (a `-`
/// directly after `^` belongs to an exponent).
fn hz_monomial_end(s: &str) -> usize {
    let bytes = s.as_bytes();
    let mut i = 1;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch == b'+' || ch == b'-' {
            let before = s[..i].trim_end();
            if !before.ends_with('^') {
                return i;
            }
        }
        i += 1;
    }
    s.len()
}

fn parse_vz_monomial(tok: &str) -> Result<(i64, i64, BigInt)> {
    if tok.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    let mut rest = tok;
    let digits_end = rest
        .char_indices()
        .find(|&(i, ch)| !(ch.is_ascii_digit() || (i == 0 && ch == '-')))
        .map(|(i, _)| i)
        .unwrap_or(rest.len());
    let coeff_str = &rest[..digits_end];
    rest = rest[digits_end..].trim_start();
    let coeff: BigInt = if coeff_str.is_empty() {
        BigInt::one()
    } else {
        coeff_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient '{coeff_str}'")))?
    };
    let mut v_exp = 0i64;
    let mut z_exp = 0i64;
    for (var, slot) in [('v', &mut v_exp), ('z', &mut z_exp)] {
        if let Some(r) = rest.strip_prefix(var) {
            let r = r.trim_start();
            if let Some(e) = r.strip_prefix('^') {
                let exp_end = e
                    .char_indices()
                    .find(|&(i, ch)| !(ch.is_ascii_digit() || (i == 0 && ch == '-')))
                    .map(|(i, _)| i)
                    .unwrap_or(e.len());
                *slot = e[..exp_end]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?;
                rest = e[exp_end..].trim_start();
            } else {
                *slot = 1;
                rest = r;
            }
        }
    }
    if !rest.is_empty() {
        return Err(Error::Parse(format!("trailing input '{rest}' in '{tok}'")));
    }
    if coeff_str.is_empty() && v_exp == 0 && z_exp == 0 {
        return Err(Error::Parse(format!("bad monomial '{tok}'")));
    }
    Ok((v_exp, z_exp, coeff))
}

/// Extract `F_L(v)`, the degree-0 part of the normalized invariant.
///
/// Multiplies by `(v^{-1}z)^{num_components - 1}` and reads off the `z^0`
/// coefficient. After normalization only even nonnegative z-powers may
/// remain; anything else signals a computation bug upstream.
pub fn z_degree_zero(h: &HomflyPoly, num_components: usize) -> Result<LaurentPoly> {
    if num_components == 0 {
        return Err(Error::OutOfRange("zero components".into()));
    }
    let k = (num_components - 1) as i64;
    let normalized = h.shifted(-k, k);
    let mut out = LaurentPoly::zero();
    for ((a, b), c) in normalized.iter() {
        if b < 0 || b % 2 != 0 {
            return Err(Error::MalformedFamily(format!(
                "normalized invariant has z^{} term; component count {} is wrong \
                 or the computation is buggy",
                b, num_components
            )));
        }
        if b == 0 {
            out = &out + &LaurentPoly::monomial(a, c.clone());
        }
    }
    Ok(out)
}
