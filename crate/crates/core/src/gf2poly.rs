//! Polynomials over GF(2) and the extension fields GF(2^n) built from them.
//!
//! A [`Gf2Poly`] packs its coefficients little-endian into a `u64`: bit `i`
//! is the coefficient of `x^i`, so addition is a single XOR. Degrees up to 63
//! are representable, which is far beyond anything enumerated here.
//!
//! ```
//! use gf2bell::gf2poly::{ExtField, Gf2Poly};
//!
//! let field = ExtField::gf8();
//! let x: Gf2Poly = "x".parse().unwrap();
//! let x2: Gf2Poly = "x^2".parse().unwrap();
//! assert_eq!(field.mul(x, x2).unwrap().to_string(), "x+1");
//! ```

use std::fmt;
use std::ops::{Add, BitXor, Mul};
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};

/// A polynomial over GF(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2Poly(u64);

impl Gf2Poly {
    pub const ZERO: Gf2Poly = Gf2Poly(0);
    pub const ONE: Gf2Poly = Gf2Poly(1);
    pub const X: Gf2Poly = Gf2Poly(0b10);

    pub const fn from_bits(bits: u64) -> Self {
        Gf2Poly(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `x^k`. Panics if `k > 63`.
    pub fn monomial(k: u32) -> Self {
        assert!(k < 64, "degree {k} is not representable");
        Gf2Poly(1 << k)
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Degree, or `None` for the zero polynomial.
    pub const fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    pub const fn coeff(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    /// Carry-less product, or `None` when the result would not fit in 64 bits.
    pub fn checked_mul(self, other: Gf2Poly) -> Option<Gf2Poly> {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Some(Gf2Poly::ZERO);
        };
        if da + db > 63 {
            return None;
        }
        let mut acc = 0u64;
        let mut a = self.0;
        let mut b = other.0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        Some(Gf2Poly(acc))
    }

    /// Euclidean division: returns `(quotient, remainder)` with `deg(r) < deg(divisor)`.
    pub fn div_rem(self, divisor: Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let mut q = 0u64;
        let mut r = self.0;
        while let Some(dr) = Gf2Poly(r).degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            q |= 1 << shift;
            r ^= divisor.0 << shift;
        }
        Ok((Gf2Poly(q), Gf2Poly(r)))
    }

    /// Remainder after division by `modulus`.
    pub fn reduce(self, modulus: Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.div_rem(modulus)?.1)
    }

    /// Evaluates at a point of GF(2). At `x = 1` this is the parity of the
    /// coefficients, at `x = 0` the constant term.
    pub fn eval_gf2(self, x: bool) -> bool {
        if x {
            self.0.count_ones() % 2 == 1
        } else {
            self.0 & 1 == 1
        }
    }

    /// Evaluates with the coefficients read as real numbers.
    pub fn eval_real(self, x: f64) -> f64 {
        let Some(d) = self.degree() else { return 0.0 };
        (0..=d)
            .rev()
            .fold(0.0, |acc, i| acc * x + if self.coeff(i) { 1.0 } else { 0.0 })
    }

    /// Fixed-width bit label, most significant coefficient first (`110` is `x^2+x`).
    pub fn to_label(self, width: u32) -> String {
        (0..width)
            .rev()
            .map(|i| if self.coeff(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_label(label: &str) -> Result<Self> {
        if label.is_empty() || label.len() > 64 {
            return Err(Error::parse(format!("bad bit label {label:?}")));
        }
        let mut bits = 0u64;
        for c in label.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::parse(format!("bad bit label {label:?}"))),
                };
        }
        Ok(Gf2Poly(bits))
    }

    /// All polynomials of exact degree `d`.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Gf2Poly> {
        assert!(d < 63);
        let lead = 1u64 << d;
        (0..lead).map(move |low| Gf2Poly(lead | low))
    }
}

// addition of coefficients mod 2 is exactly XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: Gf2Poly) -> Gf2Poly {
        Gf2Poly(self.0 ^ rhs.0)
    }
}

impl BitXor for Gf2Poly {
    type Output = Gf2Poly;
    fn bitxor(self, rhs: Gf2Poly) -> Gf2Poly {
        Gf2Poly(self.0 ^ rhs.0)
    }
}

/// Plain (unreduced) product. Panics if the degree would exceed 63; use
/// [`Gf2Poly::checked_mul`] when operands are untrusted.
impl Mul for Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        self.checked_mul(rhs).expect("product degree exceeds 63")
    }
}

/// Coefficient-wise XOR.
pub fn poly_add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly {
    p + q
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev().filter(|&i| self.coeff(i)) {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl Serialize for Gf2Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `x^2+x+1`, `x`, `1`, `0`. Whitespace is ignored; repeated terms
/// cancel in pairs since the coefficients live in GF(2).
impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse("empty polynomial"));
        }
        let mut bits = 0u64;
        for term in compact.split('+') {
            let exp = match term {
                "" => return Err(Error::parse(format!("empty term in {s:?}"))),
                "0" => continue,
                "1" => 0,
                "x" => 1,
                t => {
                    let e = t
                        .strip_prefix("x^")
                        .ok_or_else(|| Error::parse(format!("bad term {t:?}")))?;
                    let e: u32 = e.parse().map_err(|_| Error::parse(format!("bad exponent in {t:?}")))?;
                    if e > 63 {
                        return Err(Error::parse(format!("exponent {e} too large")));
                    }
                    e
                }
            };
            bits ^= 1 << exp;
        }
        Ok(Gf2Poly(bits))
    }
}

/// True iff `p` has no factorization into two non-constant polynomials.
///
/// Decided by trial division against every polynomial of degree
/// `1..=deg(p)/2`.
pub fn is_irreducible(p: Gf2Poly) -> Result<bool> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::domain(format!("irreducibility of constant {p}"))),
    };
    for k in 1..=d / 2 {
        for q in Gf2Poly::of_degree(k) {
            if p.reduce(q)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Irreducible factors of `p` in ascending order, with multiplicity. The
/// constant `1` has no factors.
pub fn factor(p: Gf2Poly) -> Result<Vec<Gf2Poly>> {
    if p.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut factors = Vec::new();
    let mut rest = p;
    let mut k = 1;
    // The smallest divisor of each degree is always irreducible, so peeling
    // divisors in increasing degree yields only irreducible factors.
    while rest.degree().unwrap_or(0) >= 2 * k {
        let mut progressed = false;
        for q in Gf2Poly::of_degree(k) {
            loop {
                let (quot, r) = rest.div_rem(q)?;
                if !r.is_zero() {
                    break;
                }
                factors.push(q);
                rest = quot;
                progressed = true;
            }
        }
        if !progressed {
            k += 1;
        }
    }
    if rest.degree().unwrap_or(0) >= 1 {
        factors.push(rest);
    }
    factors.sort();
    Ok(factors)
}

/// Renders a factor list as `x * (x+1)^2`; single terms are left bare.
pub fn format_factors(factors: &[Gf2Poly]) -> String {
    match factors {
        [] => return "1".to_owned(),
        [single] => return single.to_string(),
        _ => {}
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let f = factors[i];
        let mult = factors[i..].iter().take_while(|&&g| g == f).count();
        let base = if f.bits().count_ones() > 1 {
            format!("({f})")
        } else {
            f.to_string()
        };
        parts.push(if mult > 1 { format!("{base}^{mult}") } else { base });
        i += mult;
    }
    parts.join(" * ")
}

/// JSON shape of a factorization result.
#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub input: Gf2Poly,
    pub factors: Vec<Gf2Poly>,
    pub irreducible: bool,
    pub product: Gf2Poly,
}

impl FactorReport {
    pub fn new(p: Gf2Poly) -> Result<Self> {
        let factors = factor(p)?;
        let product = factors.iter().fold(Gf2Poly::ONE, |acc, &f| acc * f);
        Ok(FactorReport {
            input: p,
            irreducible: factors.len() == 1,
            factors,
            product,
        })
    }
}

/// Roots of a degree-2 polynomial whose 0/1 coefficients are read as reals.
pub fn complex_roots_quadratic(p: Gf2Poly) -> Result<(Complex64, Complex64)> {
    if p.degree() != Some(2) {
        return Err(Error::domain(format!("{p} is not quadratic")));
    }
    let c = |i| if p.coeff(i) { 1.0 } else { 0.0 };
    let (a, b, c0) = (c(2), c(1), c(0));
    let disc = Complex64::new(b * b - 4.0 * a * c0, 0.0).sqrt();
    let two_a = 2.0 * a;
    Ok(((-b + disc) / two_a, (-b - disc) / two_a))
}

/// GF(2^n) as polynomials modulo an irreducible modulus of degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtField {
    modulus: Gf2Poly,
    degree: u32,
}

impl ExtField {
    pub fn new(modulus: Gf2Poly) -> Result<Self> {
        let degree = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::domain("modulus must have degree >= 1"))?;
        if degree > 31 {
            return Err(Error::domain("extension degree above 31 is not supported"));
        }
        if !is_irreducible(modulus)? {
            return Err(Error::domain(format!("modulus {modulus} is reducible")));
        }
        Ok(ExtField { modulus, degree })
    }

    /// GF(8) modulo `x^3+x+1`.
    pub fn gf8() -> Self {
        ExtField {
            modulus: Gf2Poly(0b1011),
            degree: 3,
        }
    }

    pub fn modulus(&self) -> Gf2Poly {
        self.modulus
    }

    pub fn extension_degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        1 << self.degree
    }

    pub fn contains(&self, p: Gf2Poly) -> bool {
        p.bits() < self.order()
    }

    /// Elements in label order `0, 1, x, x+1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = Gf2Poly> {
        (0..self.order()).map(Gf2Poly)
    }

    fn check(&self, p: Gf2Poly) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{p} has degree >= {} and is not reduced",
                self.degree
            )))
        }
    }

    pub fn add(&self, p: Gf2Poly, q: Gf2Poly) -> Result<Gf2Poly> {
        self.check(p)?;
        self.check(q)?;
        Ok(p + q)
    }

    /// Product reduced modulo the field polynomial.
    pub fn mul(&self, p: Gf2Poly, q: Gf2Poly) -> Result<Gf2Poly> {
        self.check(p)?;
        self.check(q)?;
        (p * q).reduce(self.modulus)
    }

    /// `p * p` in the field.
    pub fn frobenius_square(&self, p: Gf2Poly) -> Result<Gf2Poly> {
        self.mul(p, p)
    }

    pub fn pow(&self, p: Gf2Poly, mut e: u64) -> Result<Gf2Poly> {
        self.check(p)?;
        let mut base = p;
        let mut acc = Gf2Poly::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, p: Gf2Poly) -> Result<u64> {
        self.check(p)?;
        if p.is_zero() {
            return Err(Error::domain("zero has no multiplicative order"));
        }
        let mut acc = p;
        let mut k = 1;
        while acc != Gf2Poly::ONE {
            acc = self.mul(acc, p)?;
            k += 1;
        }
        Ok(k)
    }
}

/// Field product; see [`ExtField::mul`].
pub fn field_mul(p: Gf2Poly, q: Gf2Poly, field: &ExtField) -> Result<Gf2Poly> {
    field.mul(p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Multiply,
    Add,
}

impl OpKind {
    pub fn symbol(self) -> &'static str {
        match self {
            OpKind::Multiply => "AND",
            OpKind::Add => "XOR",
        }
    }
}

/// A full Cayley table of one field operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    field: ExtField,
    kind: OpKind,
    entries: Vec<Gf2Poly>,
}

impl OpTable {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.field.order() as usize
    }

    pub fn get(&self, row: Gf2Poly, col: Gf2Poly) -> Gf2Poly {
        let n = self.size();
        self.entries[row.bits() as usize * n + col.bits() as usize]
    }

    pub fn row(&self, row: Gf2Poly) -> &[Gf2Poly] {
        let n = self.size();
        let r = row.bits() as usize;
        &self.entries[r * n..(r + 1) * n]
    }

    /// Cells `(row, col)` with `get(row, col) != get(col, row)`, upper triangle only.
    pub fn asymmetric_cells(&self) -> Vec<(Gf2Poly, Gf2Poly)> {
        let mut cells = Vec::new();
        for r in self.field.elements() {
            for c in self.field.elements().filter(|c| *c > r) {
                if self.get(r, c) != self.get(c, r) {
                    cells.push((r, c));
                }
            }
        }
        cells
    }

    /// CSV with 3-bit style labels in the header row and column.
    pub fn to_csv(&self) -> String {
        let w = self.field.extension_degree();
        let mut out = String::from(self.kind.symbol());
        for c in self.field.elements() {
            out.push(',');
            out.push_str(&c.to_label(w));
        }
        out.push('\n');
        for r in self.field.elements() {
            out.push_str(&r.to_label(w));
            for v in self.row(r) {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Column-aligned plain text rendering.
    pub fn to_text(&self) -> String {
        let w = self.field.extension_degree();
        let cells: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        let width = cells
            .iter()
            .map(String::len)
            .chain([w as usize, 3])
            .max()
            .unwrap_or(1);
        let mut out = format!("{:<width$}", self.kind.symbol());
        for c in self.field.elements() {
            out.push_str(&format!(" {:>width$}", c.to_label(w)));
        }
        out.push('\n');
        let n = self.size();
        for (i, r) in self.field.elements().enumerate() {
            out.push_str(&format!("{:<width$}", r.to_label(w)));
            for cell in &cells[i * n..(i + 1) * n] {
                out.push_str(&format!(" {cell:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Builds the Cayley table of `kind` over `field`, refusing tables larger
/// than `caps.table_entries` cells.
pub fn build_table(field: &ExtField, kind: OpKind, caps: &Caps) -> Result<OpTable> {
    let order = field.order();
    let cells = order.saturating_mul(order);
    if cells > caps.table_entries {
        return Err(Error::Resource {
            what: "Cayley table cells",
            requested: cells,
            cap: caps.table_entries,
        });
    }
    let cell = |idx: u64| -> Gf2Poly {
        let (r, c) = (Gf2Poly(idx / order), Gf2Poly(idx % order));
        match kind {
            OpKind::Add => r + c,
            // both operands are reduced by construction
            OpKind::Multiply => (r * c).reduce(field.modulus).expect("nonzero modulus"),
        }
    };
    #[cfg(feature = "parallel")]
    let entries = {
        use rayon::prelude::*;
        (0..cells).into_par_iter().map(cell).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let entries = (0..cells).map(cell).collect();
    Ok(OpTable {
        field: *field,
        kind,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(poly_add(p("x^2+1"), p("x^2")), p("1"));
        assert_eq!(poly_add(p("x+1"), p("x^2+x")), p("x^2+1"));
        let q = p("x^5+x^3+1");
        assert_eq!(poly_add(q, q), Gf2Poly::ZERO);
        assert_eq!(poly_add(q, Gf2Poly::ZERO), q);
    }

    #[test]
    fn gf8_multiplication_examples() {
        let f = ExtField::gf8();
        assert_eq!(f.mul(p("x"), p("x^2")).unwrap(), p("x+1"));
        assert_eq!(f.mul(p("x^2+x"), p("x^2+x")).unwrap(), p("x"));
        for q in f.elements() {
            assert_eq!(field_mul(Gf2Poly::ONE, q, &f).unwrap(), q);
        }
    }

    #[test]
    fn unreduced_operand_is_a_domain_error() {
        let f = ExtField::gf8();
        assert!(matches!(f.mul(p("x^3"), p("1")), Err(Error::Domain(_))));
        assert!(matches!(f.frobenius_square(p("x^4")), Err(Error::Domain(_))));
    }

    #[test]
    fn evaluation_over_gf2() {
        for b in [false, true] {
            assert!(p("x^2+x+1").eval_gf2(b));
            assert!(!p("x^2+x").eval_gf2(b));
        }
        assert!(!p("x^2+x").eval_gf2(false));
        // x = x^2 holds pointwise on GF(2)
        for b in [false, true] {
            assert_eq!(p("x").eval_gf2(b), p("x^2").eval_gf2(b));
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(p("x^3+x+1")).unwrap());
        assert!(!is_irreducible(p("x^2+x")).unwrap());
        assert!(is_irreducible(p("x^2+x+1")).unwrap());
        assert!(matches!(is_irreducible(p("1")), Err(Error::Domain(_))));
        assert!(matches!(is_irreducible(Gf2Poly::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(p("x^2+x")).unwrap(), vec![p("x"), p("x+1")]);
        assert_eq!(factor(p("x^2+x+1")).unwrap(), vec![p("x^2+x+1")]);
        assert_eq!(factor(p("x^2+1")).unwrap(), vec![p("x+1"), p("x+1")]);
        assert_eq!(factor(Gf2Poly::ONE).unwrap(), vec![]);
        assert!(matches!(factor(Gf2Poly::ZERO), Err(Error::Domain(_))));
        // (x^2+x+1)^2 (x^3+x+1) x
        let big = p("x^2+x+1") * p("x^2+x+1") * p("x^3+x+1") * p("x");
        assert_eq!(
            factor(big).unwrap(),
            vec![p("x"), p("x^2+x+1"), p("x^2+x+1"), p("x^3+x+1")]
        );
    }

    #[test]
    fn factor_formatting() {
        assert_eq!(format_factors(&factor(p("x^2+x")).unwrap()), "x * (x+1)");
        assert_eq!(format_factors(&factor(p("x^2+1")).unwrap()), "(x+1)^2");
        assert_eq!(format_factors(&factor(p("x^2+x+1")).unwrap()), "x^2+x+1");
        assert_eq!(format_factors(&[]), "1");
    }

    #[test]
    fn frobenius_examples() {
        let f = ExtField::gf8();
        assert_eq!(f.frobenius_square(Gf2Poly::ZERO).unwrap(), Gf2Poly::ZERO);
        assert_eq!(f.frobenius_square(p("x")).unwrap(), p("x^2"));
        // (x^2+1)^2 = x^4+1 = (x^2+x)+1 modulo x^3+x+1
        assert_eq!(f.frobenius_square(p("x^2+1")).unwrap(), p("x^2+x+1"));
    }

    #[test]
    fn quadratic_roots() {
        let (r1, r2) = complex_roots_quadratic(p("x^2+x+1")).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!((r1 - Complex64::new(-0.5, h)).norm() < 1e-12);
        assert!((r2 - Complex64::new(-0.5, -h)).norm() < 1e-12);
        for r in [r1, r2] {
            assert!((r.norm() - 1.0).abs() < 1e-12);
            assert!((r * r * r - 1.0).norm() < 1e-12);
        }
        assert!(matches!(complex_roots_quadratic(p("x^3+1")), Err(Error::Domain(_))));
        assert!(matches!(complex_roots_quadratic(p("x+1")), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "1", "x", "x+1", "x^2+x+1", "x^17+x^3"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p(" x ^ 2 + 1 "), p("x^2+1"));
        assert_eq!(p("x+x+1"), Gf2Poly::ONE);
        for bad in ["", "+", "x^", "y", "x^2++1", "2", "x^64"] {
            assert!(bad.parse::<Gf2Poly>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn labels_are_msb_first() {
        assert_eq!(p("x^2+x").to_label(3), "110");
        assert_eq!(Gf2Poly::from_label("101").unwrap(), p("x^2+1"));
        assert!(Gf2Poly::from_label("12").is_err());
    }

    #[test]
    fn table_cap_is_enforced() {
        let f = ExtField::new(p("x^9+x^4+1")).unwrap();
        let err = build_table(&f, OpKind::Add, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Resource { requested: 262144, .. }));
    }

    #[test]
    fn gf8_table_cells() {
        let f = ExtField::gf8();
        let mul = build_table(&f, OpKind::Multiply, &Caps::default()).unwrap();
        assert_eq!(mul.get(p("x^2"), p("x^2")), p("x^2+x"));
        assert_eq!(mul.get(p("x^2+x+1"), p("x^2+1")), p("x^2+x"));
        assert!(mul.asymmetric_cells().is_empty());
        let add = build_table(&f, OpKind::Add, &Caps::default()).unwrap();
        for e in f.elements() {
            assert_eq!(add.get(e, e), Gf2Poly::ZERO);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(ExtField::new(p("x^3+1")).is_err());
        assert!(ExtField::new(p("1")).is_err());
        assert_eq!(ExtField::new(p("x^3+x^2+1")).unwrap().order(), 8);
    }
}
