//! Reference copies of the published GF(8) tables, the complement-pair
//! table, the CNOT matrix and the expanded 3CNF clause list, kept exactly as
//! typeset (typos included) so computed values can be diffed against them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::{ExtField, Gf2Poly, OpKind, OpTable};
use crate::levin::BinaryMatrix;
use crate::poset::{AliceBobRow, SubsetMask};
use crate::satcheck::{Clause, Literal};

const PRINTED_AND: &str = include_str!("../data/gf8_and.csv");
const PRINTED_XOR: &str = include_str!("../data/gf8_xor.csv");
const PRINTED_PAIRS: &str = include_str!("../data/complement_pairs.csv");
const CNOT_MATRIX: &str = include_str!("../data/cnot_matrix.txt");
const CONTRADICTION_3CNF: &str = include_str!("../data/contradiction_3cnf.txt");

/// An 8x8 table over GF(8) as printed, indexed by element bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedTable {
    pub kind: OpKind,
    cells: [[Gf2Poly; 8]; 8],
}

impl PrintedTable {
    pub fn get(&self, row: Gf2Poly, col: Gf2Poly) -> Gf2Poly {
        self.cells[row.bits() as usize][col.bits() as usize]
    }
}

fn parse_table(kind: OpKind, text: &str) -> Result<PrintedTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or_else(|| Error::parse("empty table"))?.split(',').collect();
    if header.len() != 9 || header[0] != kind.symbol() {
        return Err(Error::parse("bad table header"));
    }
    let cols = header[1..]
        .iter()
        .map(|l| Gf2Poly::from_label(l))
        .collect::<Result<Vec<_>>>()?;
    let mut cells = [[Gf2Poly::ZERO; 8]; 8];
    let mut seen = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::parse(format!("bad table row {line:?}")));
        }
        let row = Gf2Poly::from_label(fields[0])?;
        for (col, text) in cols.iter().zip(&fields[1..]) {
            cells[row.bits() as usize][col.bits() as usize] = text.parse()?;
        }
        seen += 1;
    }
    if seen != 8 {
        return Err(Error::parse(format!("expected 8 rows, found {seen}")));
    }
    Ok(PrintedTable { kind, cells })
}

/// The printed GF(8) table (modulus `x^3+x+1`) for `kind`.
pub fn printed_gf8_table(kind: OpKind) -> PrintedTable {
    let text = match kind {
        OpKind::Multiply => PRINTED_AND,
        OpKind::Add => PRINTED_XOR,
    };
    parse_table(kind, text).expect("embedded table is well-formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub row: Gf2Poly,
    pub col: Gf2Poly,
    pub printed: Gf2Poly,
    pub computed: Gf2Poly,
}

/// Cells where the printed table disagrees with the computed one.
pub fn diff_table(computed: &OpTable, printed: &PrintedTable) -> Result<Vec<CellDiff>> {
    if computed.field() != &ExtField::gf8() || computed.kind() != printed.kind {
        return Err(Error::domain("printed tables exist only for GF(8) mod x^3+x+1"));
    }
    let mut diffs = Vec::new();
    for row in computed.field().elements() {
        for col in computed.field().elements() {
            let (c, p) = (computed.get(row, col), printed.get(row, col));
            if c != p {
                diffs.push(CellDiff { row, col, printed: p, computed: c });
            }
        }
    }
    Ok(diffs)
}

/// A printed cell known to be wrong, with the reason it is believed to be a typo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnownTypo {
    pub kind: OpKind,
    pub row: Gf2Poly,
    pub col: Gf2Poly,
    pub justification: &'static str,
}

/// Both entries break commutativity of the printed multiplication table:
/// the mirrored cell `(col, row)` is printed correctly.
pub fn known_typos() -> Vec<KnownTypo> {
    vec![
        KnownTypo {
            kind: OpKind::Multiply,
            row: Gf2Poly::from_bits(0b100),
            col: Gf2Poly::from_bits(0b010),
            justification: "printed x^2 * x = x^2+1 but x * x^2 = x+1; x^2+1 also repeats in row 100",
        },
        KnownTypo {
            kind: OpKind::Multiply,
            row: Gf2Poly::from_bits(0b111),
            col: Gf2Poly::from_bits(0b101),
            justification: "printed (x^2+x+1)(x^2+1) = x^2+1 but (x^2+1)(x^2+x+1) = x^2+x",
        },
    ]
}

/// A commutativity witness for a typo: the printed cell differs from its
/// printed mirror, and the mirror equals the computed value.
pub fn commutativity_witness(printed: &PrintedTable, computed: &OpTable, typo: &KnownTypo) -> bool {
    let cell = printed.get(typo.row, typo.col);
    let mirror = printed.get(typo.col, typo.row);
    cell != mirror && mirror == computed.get(typo.row, typo.col)
}

/// The printed complement-pair table.
pub fn printed_alice_bob() -> Vec<AliceBobRow> {
    let mut rows = Vec::new();
    for line in PRINTED_PAIRS.lines().skip(1).filter(|l| !l.is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        let mask = |s: &str| SubsetMask::new(u8::from_str_radix(s, 2).expect("binary")).expect("3 bits");
        rows.push(AliceBobRow {
            alice: mask(f[0]),
            alice_poly: f[1].parse().expect("polynomial"),
            bob: mask(f[2]),
            bob_poly: f[3].parse().expect("polynomial"),
        });
    }
    rows
}

/// The printed 4x4 CNOT matrix.
pub fn printed_cnot_matrix() -> BinaryMatrix {
    let rows: Vec<Vec<u8>> = CNOT_MATRIX
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|v| v.parse().expect("0/1 entry")).collect())
        .collect();
    BinaryMatrix::from_rows(&rows).expect("embedded matrix is 4x4 0/1")
}

/// The printed eight-clause expansion, variables `l'`, `l''`, `l'''` as 0, 1, 2.
pub fn printed_contradiction_clauses() -> Vec<Clause> {
    CONTRADICTION_3CNF
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            line.split('|')
                .map(|tok| {
                    let tok = tok.trim();
                    let (positive, name) = match tok.strip_prefix('~') {
                        Some(rest) => (false, rest),
                        None => (true, tok),
                    };
                    let primes = name.strip_prefix('l').expect("literal name").len() as u32;
                    Literal { var: primes - 1, positive }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::gf2poly::build_table;

    #[test]
    fn embedded_data_parses() {
        assert_eq!(printed_gf8_table(OpKind::Add).get(Gf2Poly::from_bits(5), Gf2Poly::from_bits(3)).to_string(), "x^2+x");
        assert_eq!(printed_alice_bob().len(), 8);
        assert_eq!(printed_cnot_matrix().dim(), 4);
        let clauses = printed_contradiction_clauses();
        assert_eq!(clauses.len(), 8);
        assert_eq!(clauses[7], vec![Literal::neg(0), Literal::neg(1), Literal::neg(2)]);
    }

    #[test]
    fn xor_table_has_no_typos() {
        let computed = build_table(&ExtField::gf8(), OpKind::Add, &Caps::default()).unwrap();
        assert!(diff_table(&computed, &printed_gf8_table(OpKind::Add)).unwrap().is_empty());
    }

    #[test]
    fn and_table_diff_is_the_allowlist() {
        let computed = build_table(&ExtField::gf8(), OpKind::Multiply, &Caps::default()).unwrap();
        let printed = printed_gf8_table(OpKind::Multiply);
        let diffs = diff_table(&computed, &printed).unwrap();
        let cells: Vec<_> = diffs.iter().map(|d| (d.row, d.col)).collect();
        let allow: Vec<_> = known_typos().iter().map(|t| (t.row, t.col)).collect();
        assert_eq!(cells, allow);
        for t in known_typos() {
            assert!(commutativity_witness(&printed, &computed, &t));
        }
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(parse_table(OpKind::Add, "").is_err());
        assert!(parse_table(OpKind::Add, "AND,000,001,010,011,100,101,110,111\n").is_err());
        assert!(parse_table(OpKind::Add, "XOR,000,001,010,011,100,101,110,111\n000,0\n").is_err());
    }
}
