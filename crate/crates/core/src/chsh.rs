//! CHSH correlations for classical strategies, quantum states and the PR box.
//!
//! For inputs `(a, x)` and outputs `(a', x')` the correlator is
//! `E_ax = sum pm(a') pm(x') Pr(a', x' | a, x)` with `pm(0) = +1`,
//! `pm(1) = -1`, and `S = E_00 + E_01 + E_10 - E_11`. Local strategies reach
//! `|S| = 2`, quantum states `2 sqrt 2`, the PR box 4.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::{Mul, Neg};

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::alice_bob_pairs;
use crate::qsim::StateVector;

pub const CLASSICAL_BOUND: f64 = 2.0;
pub const PR_BOUND: f64 = 4.0;

pub fn tsirelson_bound() -> f64 {
    2.0 * std::f64::consts::SQRT_2
}

/// An outcome in the multiplicative `{+1, -1}` encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PmValue {
    Plus,
    Minus,
}

impl PmValue {
    pub fn value(self) -> i8 {
        match self {
            PmValue::Plus => 1,
            PmValue::Minus => -1,
        }
    }
}

impl Mul for PmValue {
    type Output = PmValue;
    fn mul(self, rhs: PmValue) -> PmValue {
        if self == rhs { PmValue::Plus } else { PmValue::Minus }
    }
}

/// NOT in the `{+1, -1}` picture.
impl Neg for PmValue {
    type Output = PmValue;
    fn neg(self) -> PmValue {
        self * PmValue::Minus
    }
}

/// `0 -> +1`, `1 -> -1`; maps XOR to multiplication.
pub fn pm_encode(b: bool) -> PmValue {
    if b { PmValue::Minus } else { PmValue::Plus }
}

pub fn pm_decode(v: PmValue) -> bool {
    v == PmValue::Minus
}

fn pm(b: bool) -> f64 {
    pm_encode(b).value() as f64
}

/// Output distribution for one input pair, indexed by `2a' + x'`.
pub type BoxRow = [f64; 4];

/// `Pr(a', x' | a, x)` for the inputs that have been filled in.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ConditionalDistribution {
    rows: BTreeMap<(bool, bool), BoxRow>,
}

impl ConditionalDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a row after checking it is a probability distribution.
    pub fn set_row(&mut self, a: bool, x: bool, row: BoxRow) -> Result<()> {
        if row.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::domain("probabilities must be non-negative"));
        }
        let total: f64 = row.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("row ({a}, {x}) sums to {total}")));
        }
        self.rows.insert((a, x), row);
        Ok(())
    }

    pub fn row(&self, a: bool, x: bool) -> Option<&BoxRow> {
        self.rows.get(&(a, x))
    }

    fn from_fn(f: impl Fn(bool, bool) -> BoxRow) -> Self {
        let mut d = Self::new();
        for (a, x) in INPUTS {
            d.set_row(a, x, f(a, x)).expect("constructor rows are distributions");
        }
        d
    }

    /// The PR box.
    pub fn pr_box() -> Self {
        Self::from_fn(pr_box)
    }

    /// Every output pair equally likely.
    pub fn uniform() -> Self {
        Self::from_fn(|_, _| [0.25; 4])
    }

    /// Outputs fixed by the local strategy.
    pub fn local(strategy: LocalStrategy) -> Self {
        Self::from_fn(|a, x| {
            let mut row = [0.0; 4];
            row[out_index(strategy.alice.apply(a), strategy.bob.apply(x))] = 1.0;
            row
        })
    }

    /// `E_ax`.
    pub fn correlator(&self, a: bool, x: bool) -> Result<f64> {
        let row = self
            .row(a, x)
            .ok_or_else(|| Error::domain(format!("box has no row for input ({}, {})", a as u8, x as u8)))?;
        Ok(OUTPUTS
            .iter()
            .map(|&(a2, x2)| pm(a2) * pm(x2) * row[out_index(a2, x2)])
            .sum())
    }

    /// Marginal of `a'` given the inputs.
    pub fn alice_marginal(&self, a: bool, x: bool) -> Option<[f64; 2]> {
        self.row(a, x).map(|r| [r[0] + r[1], r[2] + r[3]])
    }

    /// Marginal of `x'` given the inputs.
    pub fn bob_marginal(&self, a: bool, x: bool) -> Option<[f64; 2]> {
        self.row(a, x).map(|r| [r[0] + r[2], r[1] + r[3]])
    }

    /// Each party's marginal is independent of the other party's input.
    pub fn is_non_signalling(&self, tol: f64) -> bool {
        let close = |p: Option<[f64; 2]>, q: Option<[f64; 2]>| match (p, q) {
            (Some(p), Some(q)) => (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol,
            _ => false,
        };
        [false, true].iter().all(|&a| close(self.alice_marginal(a, false), self.alice_marginal(a, true)))
            && [false, true].iter().all(|&x| close(self.bob_marginal(false, x), self.bob_marginal(true, x)))
    }
}

const INPUTS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];
const OUTPUTS: [(bool, bool); 4] = INPUTS;

fn out_index(a2: bool, x2: bool) -> usize {
    (usize::from(a2) << 1) | usize::from(x2)
}

/// PR box row: `1/2` on each `(a', x')` with `a' XOR x' = a AND x`.
pub fn pr_box(a: bool, x: bool) -> BoxRow {
    let mut row = [0.0; 4];
    for (a2, x2) in OUTPUTS {
        if (a2 ^ x2) == (a & x) {
            row[out_index(a2, x2)] = 0.5;
        }
    }
    row
}

/// `S = E_00 + E_01 + E_10 - E_11`; every input row must be present.
pub fn chsh_of_box(d: &ConditionalDistribution) -> Result<f64> {
    Ok(d.correlator(false, false)? + d.correlator(false, true)? + d.correlator(true, false)?
        - d.correlator(true, true)?)
}

/// One of the four maps `{0,1} -> {0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BitMap {
    Zero,
    One,
    Identity,
    Flip,
}

impl BitMap {
    pub const ALL: [BitMap; 4] = [BitMap::Zero, BitMap::One, BitMap::Identity, BitMap::Flip];

    pub fn apply(self, b: bool) -> bool {
        match self {
            BitMap::Zero => false,
            BitMap::One => true,
            BitMap::Identity => b,
            BitMap::Flip => !b,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, BitMap::Zero | BitMap::One)
    }
}

/// Deterministic local strategy: `a' = alice(a)`, `x' = bob(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LocalStrategy {
    pub alice: BitMap,
    pub bob: BitMap,
}

impl LocalStrategy {
    pub fn all() -> impl Iterator<Item = LocalStrategy> {
        BitMap::ALL
            .into_iter()
            .flat_map(|alice| BitMap::ALL.into_iter().map(move |bob| LocalStrategy { alice, bob }))
    }

    pub fn chsh(self) -> f64 {
        chsh_of_box(&ConditionalDistribution::local(self)).expect("local boxes are complete")
    }
}

/// Maximum `|S|` over the given strategies.
pub fn lhv_max_over(strategies: impl IntoIterator<Item = LocalStrategy>) -> f64 {
    strategies.into_iter().map(|s| s.chsh().abs()).fold(0.0, f64::max)
}

/// Maximum `|S|` over all 16 deterministic local strategies.
pub fn lhv_max() -> f64 {
    lhv_max_over(LocalStrategy::all())
}

/// Measurement angles in radians for the observables `cos t Z + sin t X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementSettings {
    pub alice: (f64, f64),
    pub bob: (f64, f64),
}

impl MeasurementSettings {
    pub fn new(alpha: f64, alpha2: f64, beta: f64, beta2: f64) -> Result<Self> {
        if ![alpha, alpha2, beta, beta2].iter().all(|t| t.is_finite()) {
            return Err(Error::domain("measurement angles must be finite"));
        }
        Ok(MeasurementSettings { alice: (alpha, alpha2), bob: (beta, beta2) })
    }

    pub fn from_degrees(alpha: f64, alpha2: f64, beta: f64, beta2: f64) -> Result<Self> {
        Self::new(alpha.to_radians(), alpha2.to_radians(), beta.to_radians(), beta2.to_radians())
    }

    /// `(0, pi/2, pi/4, -pi/4)`: reaches `2 sqrt 2` on `Phi+`.
    pub fn standard() -> Self {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
        MeasurementSettings { alice: (0.0, FRAC_PI_2), bob: (FRAC_PI_4, -FRAC_PI_4) }
    }

    pub fn degrees(&self) -> [f64; 4] {
        [self.alice.0, self.alice.1, self.bob.0, self.bob.1].map(f64::to_degrees)
    }

    /// Settings pairs in CHSH order `(00, 01, 10, 11)`.
    pub fn pairs(&self) -> [(f64, f64); 4] {
        [
            (self.alice.0, self.bob.0),
            (self.alice.0, self.bob.1),
            (self.alice.1, self.bob.0),
            (self.alice.1, self.bob.1),
        ]
    }
}

/// `cos t Z + sin t X`, eigenvalues `+1` and `-1`.
pub fn observable(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, s, -c)
}

/// `<psi| A(ta) (x) A(tb) |psi>` on a two-qubit state.
pub fn quantum_correlator(state: &StateVector, theta_a: f64, theta_b: f64) -> Result<f64> {
    if state.qubit_count() != 2 {
        return Err(Error::domain(format!(
            "correlators need a 2-qubit state, got {} qubits",
            state.qubit_count()
        )));
    }
    let (oa, ob) = (observable(theta_a), observable(theta_b));
    let amps = state.amplitudes();
    let mut e = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        for c in 0..4 {
            let w = oa[(r >> 1, c >> 1)] * ob[(r & 1, c & 1)];
            if w != 0.0 {
                e += amps[r].conj() * amps[c] * w;
            }
        }
    }
    Ok(e.re)
}

/// `S = E(a, b) + E(a, b') + E(a', b) - E(a', b')`.
pub fn quantum_chsh(state: &StateVector, m: &MeasurementSettings) -> Result<f64> {
    let e = quantum_correlators(state, m)?;
    Ok(e[0] + e[1] + e[2] - e[3])
}

pub fn quantum_correlators(state: &StateVector, m: &MeasurementSettings) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, (ta, tb)) in out.iter_mut().zip(m.pairs()) {
        *slot = quantum_correlator(state, ta, tb)?;
    }
    Ok(out)
}

/// Maximum `|S|` for a state over an `n^4` grid of angles in `[0, 2 pi)`.
/// The reduction is a max, so the result does not depend on how the grid
/// is split across threads.
pub fn max_abs_chsh_on_grid(state: &StateVector, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("grid needs at least one point per axis"));
    }
    quantum_correlator(state, 0.0, 0.0)?;
    let step = std::f64::consts::TAU / n as f64;
    let eval = |idx: usize| -> f64 {
        let t = |k: usize| ((idx / n.pow(k as u32)) % n) as f64 * step;
        let m = MeasurementSettings { alice: (t(0), t(1)), bob: (t(2), t(3)) };
        quantum_chsh(state, &m).expect("register size checked").abs()
    };
    let total = n.pow(4);
    #[cfg(feature = "parallel")]
    let max = {
        use rayon::prelude::*;
        (0..total).into_par_iter().map(eval).reduce(|| 0.0, f64::max)
    };
    #[cfg(not(feature = "parallel"))]
    let max = (0..total).map(eval).fold(0.0, f64::max);
    Ok(max)
}

/// The two numbers compared at the 22.5 degree Bell-test angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellTestAngles {
    /// `(1/2) (1/sqrt 2)^2`
    pub lhs: f64,
    /// `(1/2) sin^2(22.5°) + (1/2) sin^2(22.5°)`
    pub rhs: f64,
}

pub fn bell_test_angle_numbers() -> BellTestAngles {
    let s = 22.5f64.to_radians().sin();
    BellTestAngles {
        lhs: 0.5 * FRAC_1_SQRT_2 * FRAC_1_SQRT_2,
        rhs: 0.5 * s * s + 0.5 * s * s,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SakuraiCheck {
    pub lhs: u32,
    pub rhs: u32,
    pub holds: bool,
}

/// With `Pr^i = |p_i(x)|` for the Alice polynomials of the complement-pair
/// table, compares `Pr^3 + Pr^4` against `Pr^3 + Pr^4 + Pr^2 + Pr^7`.
pub fn sakurai_check(x: bool) -> SakuraiCheck {
    let rows = alice_bob_pairs();
    let pr = |i: usize| u32::from(rows[i - 1].alice_poly.eval_gf2(x));
    let lhs = pr(3) + pr(4);
    let rhs = lhs + pr(2) + pr(7);
    SakuraiCheck { lhs, rhs, holds: lhs <= rhs }
}

/// JSON/table shape for the `chsh` report.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub source: String,
    pub settings_degrees: Option<[f64; 4]>,
    pub settings_radians: Option<[f64; 4]>,
    pub correlators: [f64; 4],
    pub s: f64,
    pub classical_bound: f64,
    pub tsirelson_bound: f64,
    pub pr_bound: f64,
    pub exceeds_classical: bool,
    pub exceeds_tsirelson: bool,
}

impl CorrelationReport {
    fn build(source: String, settings: Option<&MeasurementSettings>, correlators: [f64; 4]) -> Self {
        const SLACK: f64 = 1e-9;
        let s = correlators[0] + correlators[1] + correlators[2] - correlators[3];
        CorrelationReport {
            source,
            settings_degrees: settings.map(MeasurementSettings::degrees),
            settings_radians: settings.map(|m| [m.alice.0, m.alice.1, m.bob.0, m.bob.1]),
            correlators,
            s,
            classical_bound: CLASSICAL_BOUND,
            tsirelson_bound: tsirelson_bound(),
            pr_bound: PR_BOUND,
            exceeds_classical: s.abs() > CLASSICAL_BOUND + SLACK,
            exceeds_tsirelson: s.abs() > tsirelson_bound() + SLACK,
        }
    }

    pub fn for_state(name: &str, state: &StateVector, m: &MeasurementSettings) -> Result<Self> {
        Ok(Self::build(format!("state {name}"), Some(m), quantum_correlators(state, m)?))
    }

    pub fn for_box(name: &str, d: &ConditionalDistribution) -> Result<Self> {
        let mut e = [0.0; 4];
        for (slot, (a, x)) in e.iter_mut().zip(INPUTS) {
            *slot = d.correlator(a, x)?;
        }
        Ok(Self::build(format!("box {name}"), None, e))
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("source            {}\n", self.source);
        if let (Some(d), Some(r)) = (self.settings_degrees, self.settings_radians) {
            out.push_str(&format!(
                "settings (deg)    a={:.4} a'={:.4} b={:.4} b'={:.4}\n",
                d[0], d[1], d[2], d[3]
            ));
            out.push_str(&format!(
                "settings (rad)    a={:.6} a'={:.6} b={:.6} b'={:.6}\n",
                r[0], r[1], r[2], r[3]
            ));
        }
        for (label, e) in ["E00", "E01", "E10", "E11"].iter().zip(self.correlators) {
            out.push_str(&format!("{label}               {e:+.6}\n"));
        }
        out.push_str(&format!("S                 {:.6}\n", self.s));
        out.push_str(&format!(
            "|S| > 2           {}\n|S| > 2*sqrt(2)   {}\n",
            self.exceeds_classical, self.exceeds_tsirelson
        ));
        out
    }
}
