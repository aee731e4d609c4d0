use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One-variable Laurent polynomial in `v` with unbounded integer coefficients.
///
/// Terms are stored sparsely, keyed by exponent; no zero coefficient is ever
/// stored, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, impl Into<BigInt>)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by the monomial `v^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * &c)).collect(),
        }
    }

    /// Substitute `v -> v^{-1}`, the mirror transform of the F polynomial.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `sum_{k=0}^{count-1} v^{step*k}`; `count = 0` gives 0.
    pub fn geometric_sum(step: i64, count: u64) -> Self {
        let mut p = Self::zero();
        for k in 0..count {
            p.add_term(step * k as i64, BigInt::one());
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at an integer point (used by sanity checks; `F_K(1) = 1` for knots).
    pub fn eval_int(&self, x: i64) -> Option<BigInt> {
        if x == 0 && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if *e >= 0 {
                acc += c * BigInt::from(x).pow(*e as u32);
            } else {
                let p = BigInt::from(x).pow((-e) as u32);
                // only exact for x = +-1
                if p.magnitude().is_one() {
                    acc += c * p;
                } else {
                    return None;
                }
            }
        }
        Some(acc)
    }

    /// Exact division; errors if `self` is not a multiple of `divisor`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::NonExactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // shift both to ordinary polynomials and long-divide from the top
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let d_top = divisor.max_exp().unwrap();
        let d_lead = divisor.coeff(d_top);
        // any exact quotient has exponents within this range
        let min_quot_exp = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        while !rem.is_zero() {
            let r_top = rem.max_exp().unwrap();
            let r_lead = rem.coeff(r_top);
            let (q, r) = num_integer_div_rem(&r_lead, &d_lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision(format!(
                    "leading coefficient {} not divisible by {}",
                    r_lead, d_lead
                )));
            }
            let exp = r_top - d_top;
            if exp < min_quot_exp {
                return Err(Error::NonExactDivision(
                    "remainder exponents fell below the divisible range".into(),
                ));
            }
            let m = Self::monomial(exp, q);
            rem = &rem - &(&m * divisor);
            quot = &quot + &m;
            if let Some(new_top) = rem.max_exp() {
                if new_top >= r_top {
                    return Err(Error::NonExactDivision(
                        "remainder degree did not decrease".into(),
                    ));
                }
            }
        }
        Ok(quot)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Renders in decreasing exponent order with explicit `+`/`-`, e.g.
/// `2v^4 - 6v^2 + 7 - 2v^-2`. `FromStr` accepts exactly this shape.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}v", mag)?,
                (_, true) => write!(f, "v^{}", e)?,
                (_, false) => write!(f, "{}v^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for LaurentPoly {
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
        // split into signed monomial tokens
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let end = rest
                .char_indices()
                .skip(1)
                .find(|(_, ch)| *ch == '+' || *ch == '-')
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            // avoid splitting on the '-' of an exponent like v^-2
            let (tok, tail) = split_monomial(rest, end);
            let (exp, coeff) = parse_monomial(tok.trim())?;
            p.add_term(exp, coeff * sign);
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

fn split_monomial(s: &str, mut end: usize) -> (&str, &str) {
    // push the split point past a '-' that belongs to an exponent
    loop {
        if end >= s.len() {
            return (s, "");
        }
        let before = s[..end].trim_end();
        if before.ends_with('^') {
            let next = s[end + 1..]
                .char_indices()
                .find(|(_, ch)| *ch == '+' || *ch == '-')
                .map(|(i, _)| end + 1 + i)
                .unwrap_or(s.len());
            end = next;
        } else {
            return (&s[..end], &s[end..]);
        }
    }
}

fn parse_monomial(tok: &str) -> Result<(i64, BigInt)> {
    if tok.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    match tok.find('v') {
        None => {
            let c: BigInt = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer '{tok}'")))?;
            Ok((0, c))
        }
        Some(i) => {
            let (c_str, v_str) = tok.split_at(i);
            let c_str = c_str.trim();
            let coeff: BigInt = if c_str.is_empty() {
                BigInt::one()
            } else {
                c_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{c_str}'")))?
            };
            let exp_str = &v_str[1..];
            let exp = if exp_str.is_empty() {
                1
            } else {
                exp_str
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad exponent '{exp_str}'")))?
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent '{exp_str}'")))?
            };
            Ok((exp, coeff))
        }
    }
}

/// `v^{-2} - 1`, the split-unlink factor that shows up everywhere.
pub fn unlink_factor() -> LaurentPoly {
    LaurentPoly::from_terms([(-2i64, 1i64), (0, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&p("1") + &p("-1"), LaurentPoly::zero());
        assert_eq!(&p("v^2 - 1") + &p("1"), p("v^2"));
    }

    #[test]
    fn add_doubles_table1_k0() {
        let k0 = p("2v^4 - 6v^2 + 7 - 2v^-2");
        assert_eq!(&k0 + &k0, p("4v^4 - 12v^2 + 14 - 4v^-2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&unlink_factor() * &p("v^2"), p("1 - v^2"));
        let q = p("3v^5 - v^-1 + 2");
        assert_eq!(&LaurentPoly::one() * &q, q);
        assert_eq!(&unlink_factor() * &unlink_factor(), p("v^-4 - 2v^-2 + 1"));
    }

    #[test]
    fn mirror_involution_and_examples() {
        assert_eq!(LaurentPoly::one().mirror(), LaurentPoly::one());
        let sym = p("v^2 - 1 + v^-2");
        assert_eq!(sym.mirror(), sym);
        let k2 = p("2v^2 - 11 + 27v^-2 - 55v^-4 + 122v^-6 - 168v^-8 + 113v^-10 - 29v^-12");
        let m = k2.mirror();
        assert_eq!(m.min_exp(), Some(-2));
        assert_eq!(m.max_exp(), Some(12));
        assert_eq!(m.mirror(), k2);
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(LaurentPoly::geometric_sum(-2, 0), LaurentPoly::zero());
        assert_eq!(LaurentPoly::geometric_sum(-2, 1), LaurentPoly::one());
        assert_eq!(LaurentPoly::geometric_sum(-2, 3), p("1 + v^-2 + v^-4"));
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "0",
            "1",
            "-1",
            "v",
            "-v^-3",
            "2v^4 - 6v^2 + 7 - 2v^-2",
            "-1 + v^-2",
            "5 - 20v^-2 + 38v^-4 - 23v^-6 - 81v^-8 + 272v^-10 - 362v^-12 + 227v^-14 - 55v^-16",
        ] {
            let q = p(s);
            assert_eq!(q.to_string(), s, "canonical rendering");
            assert_eq!(p(&q.to_string()), q);
        }
        // non-canonical spellings re-parse to equal values
        assert_eq!(p("v^-2 - 1").to_string(), "-1 + v^-2");
        assert_eq!(p(&p("v^-2 - 1").to_string()), p("v^-2 - 1"));
    }

    #[test]
    fn exact_division() {
        let u = unlink_factor();
        let prod = &u * &p("v^2 - 1 + v^-2");
        assert_eq!(prod.exact_div(&u).unwrap(), p("v^2 - 1 + v^-2"));
        assert!(p("v^2 + 1").exact_div(&u).is_err());
    }

    #[test]
    fn eval_at_one() {
        let k3 =
            p("5 - 20v^-2 + 38v^-4 - 23v^-6 - 81v^-8 + 272v^-10 - 362v^-12 + 227v^-14 - 55v^-16");
        assert_eq!(k3.eval_int(1).unwrap(), BigInt::one());
    }
}
