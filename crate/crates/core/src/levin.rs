//! Levin's universal permutation `g(a, x) = (a, f(x) + ax)` on bit strings.
//! By default the interaction term is the control `a` XOR-ed onto `f(x)`,
//! which makes `g` the CNOT for one bit (see [`ProductMode`]).
//!
//! Inputs are fixed-width [`BitString`]s. The full truth table of `g` is
//! enumerated for small widths, turned into a 0/1 permutation matrix and
//! checked for bijectivity, orthogonality and the involution property.
//!
//! Basis order is lexicographic: input `(a, x)` has index `(a << n) | x`, so
//! for `n = 1` the order is `|00>, |01>, |10>, |11>`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::gf2poly::{ExtField, Gf2Poly};

/// A register of `len` bits, `1 <= len <= 32`. Printed most significant bit first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: u64,
    len: u32,
}

impl BitString {
    pub const MAX_LEN: u32 = 32;

    pub fn new(bits: u64, len: u32) -> Result<Self> {
        if len == 0 || len > Self::MAX_LEN {
            return Err(Error::domain(format!("bit string length {len} outside 1..=32")));
        }
        if bits >> len != 0 {
            return Err(Error::domain(format!("value {bits} does not fit in {len} bits")));
        }
        Ok(BitString { bits, len })
    }

    pub fn zeros(len: u32) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> u32 {
        self.len
    }

    pub fn is_empty(self) -> bool {
        false
    }

    fn mask(len: u32) -> u64 {
        (1u64 << len) - 1
    }

    fn same_len(self, other: BitString) -> Result<()> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "length mismatch: {} vs {}",
                self.len, other.len
            )))
        }
    }

    pub fn and(self, other: BitString) -> Result<BitString> {
        self.same_len(other)?;
        Ok(BitString { bits: self.bits & other.bits, len: self.len })
    }

    pub fn xor(self, other: BitString) -> Result<BitString> {
        self.same_len(other)?;
        Ok(BitString { bits: self.bits ^ other.bits, len: self.len })
    }

    pub fn parity(self) -> bool {
        self.bits.count_ones() % 2 == 1
    }
}

impl std::ops::Not for BitString {
    type Output = BitString;

    fn not(self) -> BitString {
        BitString { bits: !self.bits & Self::mask(self.len), len: self.len }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.len as usize)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > Self::MAX_LEN as usize || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::parse(format!("bad bit string {s:?}")));
        }
        let bits = u64::from_str_radix(s, 2).map_err(|e| Error::parse(e.to_string()))?;
        Self::new(bits, s.len() as u32)
    }
}

/// The length-preserving map `f` inside `g`.
#[derive(Clone)]
pub enum LengthPreservingF {
    Identity,
    BitwiseNot,
    /// A user map tabulated over one fixed width and validated on construction.
    Custom {
        name: String,
        width: u32,
        table: Arc<[u64]>,
    },
}

impl LengthPreservingF {
    /// Tabulates `map` on every input of `width` bits, rejecting any output
    /// that does not fit back into `width` bits.
    pub fn custom(
        name: impl Into<String>,
        width: u32,
        map: impl Fn(u64) -> u64,
    ) -> Result<Self> {
        if width == 0 || width > 20 {
            return Err(Error::domain(format!("custom map width {width} outside 1..=20")));
        }
        let table: Vec<u64> = (0..1u64 << width).map(&map).collect();
        if let Some((input, out)) = table.iter().enumerate().find(|(_, &o)| o >> width != 0) {
            return Err(Error::domain(format!(
                "custom map is not length-preserving: {input} -> {out}"
            )));
        }
        Ok(LengthPreservingF::Custom { name: name.into(), width, table: table.into() })
    }

    pub fn name(&self) -> &str {
        match self {
            LengthPreservingF::Identity => "identity",
            LengthPreservingF::BitwiseNot => "not",
            LengthPreservingF::Custom { name, .. } => name,
        }
    }

    pub fn apply(&self, x: BitString) -> Result<BitString> {
        match self {
            LengthPreservingF::Identity => Ok(x),
            LengthPreservingF::BitwiseNot => Ok(!x),
            LengthPreservingF::Custom { width, table, .. } => {
                if x.len() != *width {
                    return Err(Error::domain(format!(
                        "custom map defined for width {width}, got {}",
                        x.len()
                    )));
                }
                BitString::new(table[x.bits() as usize], *width)
            }
        }
    }
}

impl fmt::Debug for LengthPreservingF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LengthPreservingF {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "id" | "I" => Ok(LengthPreservingF::Identity),
            "not" | "NOT" => Ok(LengthPreservingF::BitwiseNot),
            _ => Err(Error::parse(format!("unknown map {s:?} (expected identity or not)"))),
        }
    }
}

/// How the interaction term of `g` combines `a` and `x`.
///
/// The worked one-bit derivations (`g(1,0) = (1,1)`, `g(1,1) = (1,0)`) and the
/// CNOT matrix they produce only come out if the control `a` is XOR-ed onto
/// `f(x)`, so that is the default. Reading the term literally as `a AND x`
/// (bitwise or as a field product) gives a map that is not a bijection; both
/// readings are kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductMode {
    /// `x' = f(x) XOR a`: a controlled-XOR, the CNOT for one bit.
    #[default]
    Controlled,
    /// `x' = f(x) XOR (a AND x)`, bitwise.
    BitwiseAnd,
    /// `x' = f(x) + a*x` in GF(2^n); the width must equal the extension degree.
    Field(ExtField),
}

/// `g(a, x) = (a, f(x) XOR a)`, see [`ProductMode::Controlled`].
pub fn apply_g(a: BitString, x: BitString, f: &LengthPreservingF) -> Result<(BitString, BitString)> {
    apply_g_with(a, x, f, ProductMode::Controlled)
}

pub fn apply_g_with(
    a: BitString,
    x: BitString,
    f: &LengthPreservingF,
    mode: ProductMode,
) -> Result<(BitString, BitString)> {
    a.same_len(x)?;
    let term = match mode {
        ProductMode::Controlled => a,
        ProductMode::BitwiseAnd => a.and(x)?,
        ProductMode::Field(field) => {
            if field.extension_degree() != x.len() {
                return Err(Error::domain(format!(
                    "width {} does not match GF(2^{})",
                    x.len(),
                    field.extension_degree()
                )));
            }
            let p = field.mul(Gf2Poly::from_bits(a.bits()), Gf2Poly::from_bits(x.bits()))?;
            BitString::new(p.bits(), x.len())?
        }
    };
    let fx = f.apply(x)?;
    Ok((a, fx.xor(term)?))
}

/// Full truth table of a map on pairs of `width`-bit strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    width: u32,
    /// `outputs[(a << width) | x] = (a' << width) | x'`
    outputs: Vec<u64>,
}

impl TruthTable {
    /// Tabulates an arbitrary map on `(a, x)` pairs.
    pub fn from_fn(width: u32, map: impl Fn(u64, u64) -> (u64, u64) + Sync) -> Result<Self> {
        if width == 0 || 2 * width > 40 {
            return Err(Error::domain(format!("width {width} outside 1..=20")));
        }
        let mask = (1u64 << width) - 1;
        let row = |idx: u64| {
            let (a2, x2) = map(idx >> width, idx & mask);
            ((a2 & mask) << width) | (x2 & mask)
        };
        let rows = 1u64 << (2 * width);
        #[cfg(feature = "parallel")]
        let outputs = {
            use rayon::prelude::*;
            (0..rows).into_par_iter().map(row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let outputs = (0..rows).map(row).collect();
        Ok(TruthTable { width, outputs })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    /// Output index for an input index.
    pub fn output_index(&self, input: usize) -> usize {
        self.outputs[input] as usize
    }

    /// Rows as `(a, x, a', x')`.
    pub fn rows(&self) -> impl Iterator<Item = (BitString, BitString, BitString, BitString)> + '_ {
        let w = self.width;
        let mask = (1u64 << w) - 1;
        let bs = move |v: u64| BitString { bits: v, len: w };
        self.outputs.iter().enumerate().map(move |(i, &o)| {
            let i = i as u64;
            (bs(i >> w), bs(i & mask), bs(o >> w), bs(o & mask))
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.outputs.len()];
        for &o in &self.outputs {
            if std::mem::replace(&mut seen[o as usize], true) {
                return false;
            }
        }
        true
    }

    /// True iff every row keeps its first coordinate.
    pub fn preserves_first(&self) -> bool {
        self.outputs
            .iter()
            .enumerate()
            .all(|(i, &o)| (i as u64) >> self.width == o >> self.width)
    }

    /// CSV with columns `a,x,a',x'` as binary strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,x,a',x'\n");
        for (a, x, a2, x2) in self.rows() {
            out.push_str(&format!("{a},{x},{a2},{x2}\n"));
        }
        out
    }
}

/// Truth table of `g` for register width `n`, bounded by `caps.truth_table_width`.
pub fn truth_table(f: &LengthPreservingF, n: u32, caps: &Caps) -> Result<TruthTable> {
    truth_table_with(f, n, ProductMode::Controlled, caps)
}

pub fn truth_table_with(
    f: &LengthPreservingF,
    n: u32,
    mode: ProductMode,
    caps: &Caps,
) -> Result<TruthTable> {
    if n > caps.truth_table_width {
        return Err(Error::Resource {
            what: "truth table width",
            requested: n as u64,
            cap: caps.truth_table_width as u64,
        });
    }
    if n == 0 {
        return Err(Error::domain("register width must be at least 1"));
    }
    if let LengthPreservingF::Custom { width, .. } = f {
        if *width != n {
            return Err(Error::domain(format!("custom map has width {width}, table width is {n}")));
        }
    }
    // Validate once up front so the tabulation closure cannot fail.
    let zero = BitString::zeros(n)?;
    apply_g_with(zero, zero, f, mode)?;
    TruthTable::from_fn(n, |a, x| {
        let a = BitString { bits: a, len: n };
        let x = BitString { bits: x, len: n };
        let (a2, x2) = apply_g_with(a, x, f, mode).expect("validated map");
        (a2.bits, x2.bits)
    })
}

/// Square 0/1 matrix with exact integer products.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    dim: usize,
    data: Vec<u8>,
}

impl BinaryMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = BinaryMatrix { dim, data: vec![0; dim * dim] };
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::domain("matrix must be square and non-empty"));
        }
        if rows.iter().flatten().any(|&v| v > 1) {
            return Err(Error::domain("entries must be 0 or 1"));
        }
        Ok(BinaryMatrix { dim, data: rows.concat() })
    }

    /// Matrix with `M[perm[j], j] = 1`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut m = BinaryMatrix { dim, data: vec![0; dim * dim] };
        for (col, &row) in perm.iter().enumerate() {
            if row >= dim {
                return Err(Error::domain(format!("index {row} out of range")));
            }
            m.data[row * dim + col] = 1;
        }
        if !m.is_permutation() {
            return Err(Error::domain("not a permutation"));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.dim).map(<[u8]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut t = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                t[c * n + r] = self.data[r * n + c];
            }
        }
        BinaryMatrix { dim: n, data: t }
    }

    /// Integer product; entries of the result are counts, not reduced mod 2.
    pub fn product_counts(&self, other: &BinaryMatrix) -> Result<Vec<u32>> {
        if self.dim != other.dim {
            return Err(Error::domain("dimension mismatch"));
        }
        let n = self.dim;
        let mut out = vec![0u32; n * n];
        for r in 0..n {
            for k in 0..n {
                if self.data[r * n + k] == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += other.data[k * n + c] as u32;
                }
            }
        }
        Ok(out)
    }

    /// Product that must again be a 0/1 matrix.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        let counts = self.product_counts(other)?;
        if counts.iter().any(|&v| v > 1) {
            return Err(Error::domain("product is not a 0/1 matrix"));
        }
        Ok(BinaryMatrix { dim: self.dim, data: counts.into_iter().map(|v| v as u8).collect() })
    }

    fn counts_are_identity(&self, counts: &[u32]) -> bool {
        let n = self.dim;
        counts
            .iter()
            .enumerate()
            .all(|(i, &v)| v == u32::from(i / n == i % n))
    }

    /// Exactly one 1 in each row and each column.
    pub fn is_permutation(&self) -> bool {
        let n = self.dim;
        (0..n).all(|r| (0..n).map(|c| self.get(r, c) as u32).sum::<u32>() == 1)
            && (0..n).all(|c| (0..n).map(|r| self.get(r, c) as u32).sum::<u32>() == 1)
    }

    /// `M * M^T = I` over the integers.
    pub fn is_orthogonal(&self) -> bool {
        self.product_counts(&self.transpose())
            .map(|c| self.counts_are_identity(&c))
            .unwrap_or(false)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut data = vec![0; dim * dim];
        for r1 in 0..n {
            for c1 in 0..n {
                if self.get(r1, c1) == 0 {
                    continue;
                }
                for r2 in 0..m {
                    for c2 in 0..m {
                        data[(r1 * m + r2) * dim + c1 * m + c2] = other.get(r2, c2);
                    }
                }
            }
        }
        BinaryMatrix { dim, data }
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let dim = self.dim + other.dim;
        let mut data = vec![0; dim * dim];
        for r in 0..self.dim {
            for c in 0..self.dim {
                data[r * dim + c] = self.get(r, c);
            }
        }
        for r in 0..other.dim {
            for c in 0..other.dim {
                data[(self.dim + r) * dim + self.dim + c] = other.get(r, c);
            }
        }
        BinaryMatrix { dim, data }
    }

    /// Same matrix with rows and columns listed in `order` (a presentation
    /// permutation; the stored matrix is unchanged).
    pub fn reordered(&self, order: &[usize]) -> Result<BinaryMatrix> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.dim).collect::<Vec<_>>() {
            return Err(Error::domain("order must be a permutation of the basis"));
        }
        let n = self.dim;
        let mut data = vec![0; n * n];
        for (i, &r) in order.iter().enumerate() {
            for (j, &c) in order.iter().enumerate() {
                data[i * n + j] = self.get(r, c);
            }
        }
        Ok(BinaryMatrix { dim: n, data })
    }

    pub fn to_json(&self) -> String {
        serde_json_rows(&self.rows())
    }
}

fn serde_json_rows(rows: &[Vec<u8>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(u8::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", body.join(","))
}

impl Serialize for BinaryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.dim, self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Column order `|00>, |01>, |11>, |10>` used when the CNOT matrix is
/// displayed in Gray-code order rather than lexicographically.
pub const GRAY_ORDER_2Q: [usize; 4] = [0b00, 0b01, 0b11, 0b10];

/// `M[out, in] = 1` for every row of a bijective table.
pub fn permutation_matrix(t: &TruthTable) -> Result<BinaryMatrix> {
    if !t.is_bijective() {
        return Err(Error::domain("truth table is not a bijection"));
    }
    let perm: Vec<usize> = (0..t.len()).map(|i| t.output_index(i)).collect();
    BinaryMatrix::from_permutation(&perm)
}

/// `M * M = I`.
pub fn is_involution(m: &BinaryMatrix) -> bool {
    m.product_counts(m)
        .map(|c| m.counts_are_identity(&c))
        .unwrap_or(false)
}

fn one_bit_block(f: &LengthPreservingF) -> Result<BinaryMatrix> {
    let mut perm = [0usize; 2];
    for (x, slot) in perm.iter_mut().enumerate() {
        *slot = f.apply(BitString::new(x as u64, 1)?)?.bits() as usize;
    }
    BinaryMatrix::from_permutation(&perm)
        .map_err(|_| Error::domain(format!("{} is not a bijection on one bit", f.name())))
}

/// `diag(block(f_even), block(f_odd))` for one-bit maps: the upper block acts
/// on the target when the control is 0, the lower block when it is 1.
pub fn block_form(f_even: &LengthPreservingF, f_odd: &LengthPreservingF) -> Result<BinaryMatrix> {
    Ok(one_bit_block(f_even)?.direct_sum(&one_bit_block(f_odd)?))
}

/// Preimage statistics over the outputs a map actually attains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SiblingStats {
    pub inputs: u64,
    pub attained_outputs: u64,
    pub max_preimage_count: u64,
}

impl SiblingStats {
    /// Mean preimage count as a reduced fraction `(numerator, denominator)`.
    pub fn mean_ratio(&self) -> (u64, u64) {
        let g = self.inputs.gcd(&self.attained_outputs).max(1);
        (self.inputs / g, self.attained_outputs / g)
    }

    pub fn mean_preimage_count(&self) -> f64 {
        self.inputs as f64 / self.attained_outputs as f64
    }
}

pub fn sibling_stats(t: &TruthTable) -> SiblingStats {
    let mut counts = vec![0u64; t.len()];
    for i in 0..t.len() {
        counts[t.output_index(i)] += 1;
    }
    SiblingStats {
        inputs: t.len() as u64,
        attained_outputs: counts.iter().filter(|&&c| c > 0).count() as u64,
        max_preimage_count: counts.into_iter().max().unwrap_or(0),
    }
}

/// Inner product of `a` and `x` modulo 2: parity of `a AND x`.
pub fn hardcore_bit(a: BitString, x: BitString) -> Result<bool> {
    Ok(a.and(x)?.parity())
}
