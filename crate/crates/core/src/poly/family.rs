use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{unlink_factor, LaurentPoly};

/// Coefficient of one family term: `c0 + c1*n + c2*n(n-1)/2`.
///
/// The third basis element is the binomial `n choose 2`, which keeps every
/// integer-valued quadratic polynomial in `n` expressible with integer
/// coordinates (e.g. `n^2 = 2*binom(n,2) + n`). Quadratic coefficients arise
/// when a twist recursion whose inhomogeneity is linear in `n` is unrolled
/// exactly: the running index sums to a triangular number.
type Coeff = (BigInt, BigInt, BigInt);

/// A polynomial family in an integer parameter `n`.
///
/// The numerator is a sum of terms `(c0 + c1*n + c2*n(n-1)/2) * v^(a + b*n)`
/// with integer `c0, c1, c2, a, b`, held over the fixed denominator
/// `(v^{-2} - 1)^denom_power`. This is exactly the shape of the twist-family
/// closed forms: coefficients polynomial in `n` of degree at most two,
/// exponents affine in `n`, with the split-unlink factor appearing to the
/// first or second power.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FamilyPoly {
    /// (a, b) -> (c0, c1, c2), no stored all-zero coefficient triple.
    terms: BTreeMap<(i64, i64), Coeff>,
    denom_power: u8,
}

impl FamilyPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 0, 1, 0)
    }

    /// The single term `(c0 + c1*n) * v^(a + b*n)`.
    pub fn term(a: i64, b: i64, c0: impl Into<BigInt>, c1: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c0.into(), c1.into(), BigInt::zero());
        p
    }

    /// The single term `c2 * n(n-1)/2 * v^(a + b*n)`.
    pub fn term_quad(a: i64, b: i64, c2: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, BigInt::zero(), BigInt::zero(), c2.into());
        p
    }

    /// A constant-in-`n` family from a plain Laurent polynomial.
    pub fn constant(p: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.iter() {
            out.add_term(e, 0, c.clone(), BigInt::zero(), BigInt::zero());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn denom_power(&self) -> u8 {
        self.denom_power
    }

    /// Numerator terms as `((a, b), (c0, c1, c2))` for
    /// `(c0 + c1*n + c2*binom(n,2)) * v^(a + b*n)`.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), (&BigInt, &BigInt, &BigInt))> {
        self.terms
            .iter()
            .map(|(k, (c0, c1, c2))| (*k, (c0, c1, c2)))
    }

    fn add_term(&mut self, a: i64, b: i64, c0: BigInt, c1: BigInt, c2: BigInt) {
        if c0.is_zero() && c1.is_zero() && c2.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((a, b))
            .or_insert_with(|| (BigInt::zero(), BigInt::zero(), BigInt::zero()));
        entry.0 += c0;
        entry.1 += c1;
        entry.2 += c2;
        if entry.0.is_zero() && entry.1.is_zero() && entry.2.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    /// Reinterpret this denominator-free family's terms as a numerator held
    /// over `(v^{-2}-1)^d` (i.e. divide the value by the denominator).
    pub fn over_denom(self, d: u8) -> Result<Self> {
        if self.denom_power != 0 {
            return Err(Error::MalformedFamily(
                "over_denom requires a denominator-free family".into(),
            ));
        }
        if d > 2 {
            return Err(Error::MalformedFamily(format!(
                "denominator power {} exceeds 2",
                d
            )));
        }
        Ok(Self {
            terms: self.terms,
            denom_power: d,
        })
    }

    /// Raise the denominator power, multiplying the numerator to compensate.
    fn with_denom_power(&self, d: u8) -> Result<Self> {
        if d < self.denom_power {
            return Err(Error::MalformedFamily(
                "cannot lower a family's denominator power".into(),
            ));
        }
        let mut out = self.clone();
        let u = FamilyPoly::constant(&unlink_factor());
        for _ in self.denom_power..d {
            out = out.mul(&u)?;
        }
        out.denom_power = d;
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let d = self.denom_power.max(rhs.denom_power);
        let mut out = self.with_denom_power(d)?;
        let r = rhs.with_denom_power(d)?;
        for ((a, b), (c0, c1, c2)) in &r.terms {
            out.add_term(*a, *b, c0.clone(), c1.clone(), c2.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, (c0, c1, c2))| (*k, (-c0.clone(), -c1.clone(), -c2.clone())))
                .collect(),
            denom_power: self.denom_power,
        }
    }

    /// Product of families. Errors if any coefficient would exceed quadratic
    /// degree in `n`, or the denominator power would exceed 2 — the
    /// representation does not extend past the shapes the twist calculus
    /// produces.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let d = self.denom_power + rhs.denom_power;
        if d > 2 {
            return Err(Error::MalformedFamily(format!(
                "denominator power {} exceeds 2",
                d
            )));
        }
        let mut out = Self::zero();
        for ((a1, b1), (p0, p1, p2)) in &self.terms {
            for ((a2, b2), (q0, q1, q2)) in &rhs.terms {
                // with B = n(n-1)/2: n*n = 2B + n; n*B and B*B overflow the basis
                if (!p1.is_zero() && !q2.is_zero())
                    || (!p2.is_zero() && !q1.is_zero())
                    || (!p2.is_zero() && !q2.is_zero())
                {
                    return Err(Error::MalformedFamily(
                        "product coefficient would exceed quadratic degree in n".into(),
                    ));
                }
                let r0 = p0 * q0;
                let r1 = p0 * q1 + p1 * q0 + p1 * q1;
                let r2 = p0 * q2 + p2 * q0 + 2 * (p1 * q1);
                out.add_term(a1 + a2, b1 + b2, r0, r1, r2);
            }
        }
        out.denom_power = d;
        Ok(out)
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for ((a, b), (c0, c1, c2)) in &self.terms {
            for (e, c) in p.iter() {
                out.add_term(a + e, *b, c0 * c, c1 * c, c2 * c);
            }
        }
        out.denom_power = self.denom_power;
        out
    }

    /// Multiply by the monomial family `v^(a + b*n)`.
    pub fn shifted(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
            denom_power: self.denom_power,
        }
    }

    /// Numerator evaluated at `n` (before dividing by `(v^{-2}-1)^d`).
    pub fn eval_numerator(&self, n: i64) -> LaurentPoly {
        let binom = BigInt::from(n) * BigInt::from(n - 1) / 2;
        let mut out = LaurentPoly::zero();
        for ((a, b), (c0, c1, c2)) in &self.terms {
            let coeff = c0 + c1 * n + c2 * &binom;
            out = &out + &LaurentPoly::monomial(a + b * n, coeff);
        }
        out
    }

    /// Fully reduced value at `n`. Errors if the numerator is not exactly
    /// divisible by the denominator, which signals a malformed family.
    pub fn eval(&self, n: i64) -> Result<LaurentPoly> {
        let mut num = self.eval_numerator(n);
        let u = unlink_factor();
        for _ in 0..self.denom_power {
            num = num
                .exact_div(&u)
                .map_err(|_| Error::MalformedFamily(format!("value at n={} not divisible", n)))?;
        }
        Ok(num)
    }

    /// Exact equality as rational families: compare cross-multiplied
    /// numerators in normal form.
    pub fn family_equal(&self, rhs: &Self) -> bool {
        let d = self.denom_power.max(rhs.denom_power);
        match (self.with_denom_power(d), rhs.with_denom_power(d)) {
            (Ok(a), Ok(b)) => a.terms == b.terms,
            _ => false,
        }
    }

    /// Substitute `n -> -n` (used by mirror bookkeeping on the negative branch).
    /// Under the substitution `binom(-n,2) = binom(n,2) + n`.
    pub fn negate_n(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), (c0, c1, c2))| ((*a, -b), (c0.clone(), c2 - c1, c2.clone())))
                .collect(),
            denom_power: self.denom_power,
        }
    }

    /// Substitute `v -> v^{-1}` on the whole family. The denominator maps to
    /// (v^2 - 1)^d = v^{2d} (1 - v^{-2})^d = (-1)^d v^{2d} (v^{-2}-1)^d, so the
    /// numerator picks up the compensating sign and shift.
    pub fn mirror_v(&self) -> Self {
        let d = self.denom_power as i64;
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let mut out = Self::zero();
        for ((a, b), (c0, c1, c2)) in &self.terms {
            out.add_term(-a - 2 * d, -b, c0 * sign, c1 * sign, c2 * sign);
        }
        out.denom_power = self.denom_power;
        out
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, (c0, c1, c2): &Coeff) -> fmt::Result {
    // renders like "(3)", "(-2n)", "(4 - 3n)", "(1 + 2n - 5B)" with
    // B = n(n-1)/2
    write!(f, "(")?;
    let mut first = true;
    for (c, suffix) in [(c0, ""), (c1, "n"), (c2, "B")] {
        if c.is_zero() {
            continue;
        }
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
        let mag = c.abs();
        if suffix.is_empty() || !mag.is_one() {
            write!(f, "{}", mag)?;
        }
        write!(f, "{}", suffix)?;
    }
    if first {
        write!(f, "0")?;
    }
    write!(f, ")")
}

impl fmt::Display for FamilyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(i64, i64)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| b.cmp(a));
        if self.denom_power > 0 {
            write!(f, "[")?;
        }
        let mut first = true;
        for key in keys {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_coeff(f, &self.terms[&key])?;
            let (a, b) = key;
            match (a, b) {
                (0, 0) => {}
                (_, 0) => write!(f, "v^({})", a)?,
                (0, _) if b.is_negative() => write!(f, "v^(-{}n)", b.abs())?,
                (0, _) => write!(f, "v^({}n)", b)?,
                _ if b.is_negative() => write!(f, "v^({} - {}n)", a, b.abs())?,
                _ => write!(f, "v^({} + {}n)", a, b)?,
            }
        }
        if self.denom_power > 0 {
            write!(f, "] / (v^-2 - 1)")?;
            if self.denom_power > 1 {
                write!(f, "^{}", self.denom_power)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FamilyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses an affine integer expression in `n` such as `4 - 3n`, `-2n`, `6`,
/// or with the quadratic basis marker `B`: `1 + 2n - 5B`.
fn parse_affine(s: &str) -> Result<(BigInt, BigInt, BigInt)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient".into()));
    }
    let mut c = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    let mut rest = s;
    let mut sign = BigInt::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
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
        let tok = rest[..end].trim();
        let (slot, digits) = if let Some(d) = tok.strip_suffix('n') {
            (1, d.trim())
        } else if let Some(d) = tok.strip_suffix('B') {
            (2, d.trim())
        } else {
            (0, tok)
        };
        let mag: BigInt = if digits.is_empty() {
            BigInt::one()
        } else {
            digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{tok}'")))?
        };
        let val = &sign * mag;
        match slot {
            0 => c.0 += val,
            1 => c.1 += val,
            _ => c.2 += val,
        }
        let tail = rest[end..].trim_start();
        if tail.is_empty() {
            break;
        }
        if let Some(r) = tail.strip_prefix('-') {
            sign = BigInt::from(-1);
            rest = r.trim_start();
        } else if let Some(r) = tail.strip_prefix('+') {
            sign = BigInt::one();
            rest = r.trim_start();
        } else {
            return Err(Error::Parse(format!("expected '+' or '-' in '{s}'")));
        }
    }
    Ok(c)
}

/// Parses an exponent expression affine in `n`, e.g. `-4n - 2`, `6`, `2n`,
/// `6 - 2n`. Returns (a, b) for `a + b*n`.
fn parse_exponent(s: &str) -> Result<(i64, i64)> {
    let (a, b, q) = parse_affine(s)?;
    if !q.is_zero() {
        return Err(Error::Parse(format!("quadratic exponent in '{s}'")));
    }
    let to_i64 = |x: BigInt| -> Result<i64> {
        x.try_into()
            .map_err(|_| Error::Parse(format!("exponent out of range in '{s}'")))
    };
    Ok((to_i64(a)?, to_i64(b)?))
}

/// `FromStr` accepts exactly the `Display` grammar: terms
/// `(coeff)` or `(coeff)v^(exp)` joined by ` + `, optionally wrapped as
/// `[ ... ] / (v^-2 - 1)` or `[ ... ] / (v^-2 - 1)^2`.
impl FromStr for FamilyPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let (body, denom_power) = if let Some(rest) = s.strip_prefix('[') {
            let (body, tail) = rest
                .rsplit_once(']')
                .ok_or_else(|| Error::Parse("unterminated '['".into()))?;
            let tail = tail.trim();
            let d = match tail {
                "/ (v^-2 - 1)" => 1,
                "/ (v^-2 - 1)^2" => 2,
                _ => return Err(Error::Parse(format!("bad denominator '{tail}'"))),
            };
            (body, d)
        } else {
            (s, 0)
        };
        // split on " + " only at paren depth 0 (coefficients contain signs)
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        let bytes = body.as_bytes();
        let mut i = 0usize;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b' ' if depth == 0 && body[i..].starts_with(" + ") => {
                    parts.push(&body[start..i]);
                    start = i + 3;
                    i += 2;
                }
                _ => {}
            }
            i += 1;
        }
        parts.push(&body[start..]);
        let mut out = Self::zero();
        for part in parts {
            let part = part.trim();
            let inner = part
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in '{part}'")))?;
            let (coeff_str, rest) = inner
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("expected ')' in '{part}'")))?;
            let (c0, c1, c2) = parse_affine(coeff_str)?;
            let rest = rest.trim();
            let (a, b) = if rest.is_empty() {
                (0, 0)
            } else {
                let exp = rest
                    .strip_prefix("v^(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("expected 'v^(..)' in '{part}'")))?;
                parse_exponent(exp)?
            };
            out.add_term(a, b, c0, c1, c2);
        }
        out.denom_power = denom_power;
        Ok(out)
    }
}

/// `sum_{k=0}^{n-1} v^{step*k}` as a family over `(v^{-2}-1)`: the numerator
/// `v^{step*n} - 1` divided by `v^{step} - 1`. Only `step = -2` keeps the
/// fixed denominator; other steps must be handled by the caller.
pub fn geometric_family() -> FamilyPoly {
    let mut p = FamilyPoly::term(0, -2, 1, 0);
    p = p.add(&FamilyPoly::term(0, 0, -1, 0)).unwrap();
    FamilyPoly {
        terms: p.terms,
        denom_power: 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn eval_simple_term() {
        // (2 + n) v^{4 - 2n} at n = 3 -> 5 v^{-2}
        let f = FamilyPoly::term(4, -2, 2, 1);
        assert_eq!(f.eval(3).unwrap(), l("5v^-2"));
    }

    #[test]
    fn eval_quadratic_term() {
        // 3 * n(n-1)/2 * v^{-2n} at n = 4 -> 18 v^-8
        let f = FamilyPoly::term_quad(0, -2, 3);
        assert_eq!(f.eval(4).unwrap(), l("18v^-8"));
        assert_eq!(f.eval(0).unwrap(), LaurentPoly::zero());
        assert_eq!(f.eval(1).unwrap(), LaurentPoly::zero());
        // binom(-n, 2) = binom(n, 2) + n
        assert_eq!(f.eval(-2).unwrap(), f.negate_n().eval(2).unwrap());
    }

    #[test]
    fn geometric_family_matches_sum() {
        let g = geometric_family();
        for n in 0..8 {
            assert_eq!(g.eval(n).unwrap(), LaurentPoly::geometric_sum(-2, n as u64));
        }
    }

    #[test]
    fn table_j9_constant_family() {
        let j9 = FamilyPoly::constant(&unlink_factor());
        assert_eq!(j9.eval(7).unwrap(), l("v^-2 - 1"));
    }

    #[test]
    fn table_j2_family() {
        let inner = FamilyPoly::constant(&l("v^2 - 1"))
            .add(&FamilyPoly::term(4, -2, 1, 0))
            .unwrap()
            .add(&FamilyPoly::term(2, -2, -1, 0))
            .unwrap()
            .add(&FamilyPoly::term(0, -2, 1, 0))
            .unwrap();
        let f = FamilyPoly::constant(&unlink_factor()).mul(&inner).unwrap();
        assert_eq!(f.denom_power(), 0);
        let at3 = f.eval(3).unwrap();
        assert_eq!(at3, &l("v^-2 - 1") * &l("v^2 - 1 + v^-2 - v^-4 + v^-6"));
    }

    #[test]
    fn add_commutes_with_eval() {
        let f = FamilyPoly::term(1, -2, 3, -1);
        let g = geometric_family();
        let sum = f.add(&g).unwrap();
        for n in 0..10 {
            assert_eq!(
                sum.eval(n).unwrap(),
                &f.eval(n).unwrap() + &g.eval(n).unwrap()
            );
        }
    }

    #[test]
    fn affine_products_close_in_quadratic_basis() {
        // (n)(n) = n^2 = 2*binom(n,2) + n
        let f = FamilyPoly::term(0, 0, 0, 1);
        let sq = f.mul(&f).unwrap();
        for n in -5..6 {
            assert_eq!(sq.eval(n).unwrap(), l(&format!("{}", n * n)));
        }
        // cubic degree is rejected
        assert!(sq.mul(&f).is_err());
    }

    #[test]
    fn family_equality() {
        let f = geometric_family();
        assert!(f.family_equal(&f));
        let g = f.with_denom_power(2).unwrap();
        assert!(f.family_equal(&g));
        assert!(!f.family_equal(&FamilyPoly::one()));
    }

    #[test]
    fn mirror_v_pointwise() {
        let f = geometric_family();
        let m = f.mirror_v();
        for n in 0..6 {
            assert_eq!(m.eval(n).unwrap(), f.eval(n).unwrap().mirror());
        }
    }

    #[test]
    fn negate_n_pointwise() {
        let f = FamilyPoly::term(4, -2, 2, 1)
            .add(&FamilyPoly::term_quad(1, 2, -3))
            .unwrap();
        let g = f.negate_n();
        for n in -5..5 {
            assert_eq!(g.eval(n).unwrap(), f.eval(-n).unwrap());
        }
    }

    #[test]
    fn display_round_trip() {
        let samples = [
            FamilyPoly::zero(),
            FamilyPoly::one(),
            FamilyPoly::term(4, -2, 2, 1)
                .add(&FamilyPoly::term_quad(1, 2, -3))
                .unwrap()
                .add(&FamilyPoly::term(0, 0, -7, 0))
                .unwrap(),
            geometric_family(),
            geometric_family()
                .mul(&geometric_family())
                .unwrap()
                .add(&FamilyPoly::term(0, -4, 0, 5))
                .unwrap(),
        ];
        for f in &samples {
            let text = f.to_string();
            let back: FamilyPoly = text.parse().unwrap();
            assert_eq!(&back, f, "round trip failed for '{}'", text);
        }
    }
}
