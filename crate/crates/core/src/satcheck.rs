//! CNF formulas, the all-sign-patterns expansion of `l AND NOT l`, and an
//! exhaustive satisfiability oracle with DIMACS input and output.
//!
//! Assignments are integers: variable `i` takes bit `i`. The oracle scans
//! from 0 upward and reports the lowest satisfying assignment, whether the
//! scan is split across threads or not.

use std::fmt;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, positive: false }
    }

    pub fn eval(self, assignment: u64) -> bool {
        ((assignment >> self.var) & 1 == 1) == self.positive
    }

    /// DIMACS integer: 1-based variable, sign for polarity.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive { v } else { -v }
    }
}

pub type Clause = Vec<Literal>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    variable_count: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Rejects out-of-range literals and empty clauses.
    pub fn new(variable_count: u32, clauses: Vec<Clause>) -> Result<Self> {
        if clauses.iter().any(Vec::is_empty) {
            return Err(Error::domain("empty clause; use with_empty_clause to build one deliberately"));
        }
        Self::new_allowing_empty(variable_count, clauses)
    }

    fn new_allowing_empty(variable_count: u32, clauses: Vec<Clause>) -> Result<Self> {
        if let Some(l) = clauses.iter().flatten().find(|l| l.var >= variable_count) {
            return Err(Error::domain(format!(
                "literal on variable {} but only {variable_count} variables",
                l.var
            )));
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    /// Appends the (unsatisfiable) empty clause.
    pub fn with_empty_clause(mut self) -> Self {
        self.clauses.push(Vec::new());
        self
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn without_clause(&self, index: usize) -> CnfFormula {
        let mut clauses = self.clauses.clone();
        clauses.remove(index);
        CnfFormula { variable_count: self.variable_count, clauses }
    }

    pub fn eval(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF: `c` comment lines, one `p cnf V C` header, then
    /// zero-terminated clauses that may span lines.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::parse(format!("line {}: bad header {line:?}", lineno + 1)));
                }
                let v = parts[2].parse().map_err(|_| Error::parse("bad variable count"))?;
                let c = parts[3].parse().map_err(|_| Error::parse("bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            let (vars, _) = header.ok_or_else(|| Error::parse("clause before header"))?;
            for tok in line.split_whitespace() {
                let n: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(format!("line {}: bad literal {tok:?}", lineno + 1)))?;
                if n == 0 {
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let var = n.unsigned_abs() - 1;
                if var >= vars as u64 {
                    return Err(Error::parse(format!("line {}: literal {n} exceeds {vars} variables", lineno + 1)));
                }
                current.push(Literal { var: var as u32, positive: n > 0 });
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse("missing p cnf header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::parse(format!(
                "header declares {count} clauses, found {}",
                clauses.len()
            )));
        }
        Self::new_allowing_empty(vars, clauses)
    }
}

impl fmt::Display for CnfFormula {
    /// Human form with primed names `l'`, `l''`, ... and `~` for negation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |v: u32| format!("l{}", "'".repeat(v as usize + 1));
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .iter()
                    .map(|l| format!("{}{}", if l.positive { "" } else { "~" }, name(l.var)))
                    .collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        if parts.is_empty() {
            f.write_str("TRUE")
        } else {
            f.write_str(&parts.join(" & "))
        }
    }
}

pub const MAX_EXPANSION: u32 = 20;

/// All `2^n` clauses containing each of `n` variables once, one per sign
/// pattern. Clause `k` negates variable `i` iff bit `n-1-i` of `k` is set,
/// so the all-positive clause comes first and the all-negative one last.
pub fn expand_contradiction(n: u32) -> Result<CnfFormula> {
    if !(1..=MAX_EXPANSION).contains(&n) {
        return Err(Error::domain(format!("n = {n} outside 1..={MAX_EXPANSION}")));
    }
    let clauses = (0..1u64 << n)
        .map(|k| {
            (0..n)
                .map(|i| Literal { var: i, positive: (k >> (n - 1 - i)) & 1 == 0 })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatOutcome {
    pub satisfiable: bool,
    /// Lowest satisfying assignment, one bool per variable.
    pub witness: Option<Vec<bool>>,
}

impl SatOutcome {
    fn from_witness(f: &CnfFormula, w: Option<u64>) -> Self {
        SatOutcome {
            satisfiable: w.is_some(),
            witness: w.map(|a| (0..f.variable_count).map(|i| (a >> i) & 1 == 1).collect()),
        }
    }
}

fn check_cap(f: &CnfFormula, caps: &Caps) -> Result<u64> {
    if f.variable_count > caps.sat_variables {
        return Err(Error::Resource {
            what: "SAT variables",
            requested: f.variable_count as u64,
            cap: caps.sat_variables as u64,
        });
    }
    Ok(1u64 << f.variable_count)
}

/// Exhaustive search with the default backend.
pub fn brute_force_sat(f: &CnfFormula, caps: &Caps) -> Result<SatOutcome> {
    #[cfg(feature = "parallel")]
    return brute_force_sat_parallel(f, caps);
    #[cfg(not(feature = "parallel"))]
    return brute_force_sat_sequential(f, caps);
}

pub fn brute_force_sat_sequential(f: &CnfFormula, caps: &Caps) -> Result<SatOutcome> {
    let space = check_cap(f, caps)?;
    Ok(SatOutcome::from_witness(f, (0..space).find(|&a| f.eval(a))))
}

#[cfg(feature = "parallel")]
pub fn brute_force_sat_parallel(f: &CnfFormula, caps: &Caps) -> Result<SatOutcome> {
    use rayon::prelude::*;
    let space = check_cap(f, caps)?;
    // find_first keeps the lowest-witness rule independent of scheduling
    Ok(SatOutcome::from_witness(f, (0..space).into_par_iter().find_first(|&a| f.eval(a))))
}

/// Number of satisfying assignments.
pub fn count_models(f: &CnfFormula, caps: &Caps) -> Result<u64> {
    let space = check_cap(f, caps)?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..space).into_par_iter().filter(|&a| f.eval(a)).count() as u64)
    }
    #[cfg(not(feature = "parallel"))]
    Ok((0..space).filter(|&a| f.eval(a)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn expansion_sizes() {
        let f1 = expand_contradiction(1).unwrap();
        assert_eq!(f1.clauses(), &[vec![Literal::pos(0)], vec![Literal::neg(0)]]);
        assert_eq!(expand_contradiction(2).unwrap().clauses().len(), 4);
        assert_eq!(expand_contradiction(3).unwrap().clauses().len(), 8);
        assert!(expand_contradiction(0).is_err());
        assert!(expand_contradiction(21).is_err());
    }

    #[test]
    fn three_variable_expansion_reads_in_order() {
        let f = expand_contradiction(3).unwrap();
        assert_eq!(
            f.to_string(),
            "(l' | l'' | l''') & (l' | l'' | ~l''') & (l' | ~l'' | l''') & (l' | ~l'' | ~l''') & \
             (~l' | l'' | l''') & (~l' | l'' | ~l''') & (~l' | ~l'' | l''') & (~l' | ~l'' | ~l''')"
        );
    }

    #[test]
    fn sat_examples() {
        let f = expand_contradiction(3).unwrap();
        assert_eq!(brute_force_sat(&f, &caps()).unwrap(), SatOutcome { satisfiable: false, witness: None });

        let empty = CnfFormula::new(0, vec![]).unwrap();
        assert_eq!(
            brute_force_sat(&empty, &caps()).unwrap(),
            SatOutcome { satisfiable: true, witness: Some(vec![]) }
        );

        let relaxed = f.without_clause(7);
        let out = brute_force_sat(&relaxed, &caps()).unwrap();
        assert_eq!(out.witness, Some(vec![true, true, true]));
    }

    #[test]
    fn empty_clause_is_unsatisfiable() {
        assert!(CnfFormula::new(1, vec![vec![]]).is_err());
        let f = CnfFormula::new(1, vec![vec![Literal::pos(0)]]).unwrap().with_empty_clause();
        assert!(!brute_force_sat(&f, &caps()).unwrap().satisfiable);
    }

    #[test]
    fn lowest_witness_is_returned() {
        // (l0 | l1) has models 1, 2, 3; lowest is l0 = true, l1 = false
        let f = CnfFormula::new(2, vec![vec![Literal::pos(0), Literal::pos(1)]]).unwrap();
        assert_eq!(brute_force_sat_sequential(&f, &caps()).unwrap().witness, Some(vec![true, false]));
        assert_eq!(brute_force_sat(&f, &caps()).unwrap().witness, Some(vec![true, false]));
        assert_eq!(count_models(&f, &caps()).unwrap(), 3);
    }

    #[test]
    fn variable_cap() {
        let f = CnfFormula::new(25, vec![vec![Literal::pos(24)]]).unwrap();
        assert!(matches!(brute_force_sat(&f, &caps()), Err(Error::Resource { requested: 25, .. })));
    }

    #[test]
    fn literal_range_checked() {
        assert!(CnfFormula::new(2, vec![vec![Literal::pos(2)]]).is_err());
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let f = expand_contradiction(3).unwrap();
        let text = f.to_dimacs();
        assert!(text.starts_with("p cnf 3 8\n1 2 3 0\n1 2 -3 0\n"));
        assert_eq!(CnfFormula::parse_dimacs(&text).unwrap(), f);

        let spread = "c comment\np cnf 2 2\n1\n -2 0 2\n0\n";
        let g = CnfFormula::parse_dimacs(spread).unwrap();
        assert_eq!(g.clauses(), &[vec![Literal::pos(0), Literal::neg(1)], vec![Literal::pos(1)]]);

        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\nx 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p dnf 1 1\n1 0\n").is_err());
    }
}
