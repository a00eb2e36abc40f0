//! Exact statevector simulation for registers of one to three qubits.
//!
//! Qubit 0 is the most significant index bit, so the two-qubit basis state
//! `|a, x>` sits at index `2a + x`. Gates return new states; nothing is
//! mutated in place.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 3;
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    qubits: usize,
}

impl StateVector {
    /// Computational basis state `|index>` on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        check_register(qubits)?;
        if index >= 1 << qubits {
            return Err(Error::domain(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps, qubits })
    }

    /// Builds a state from amplitudes, requiring unit norm within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::domain(format!("{len} amplitudes is not 2^k with k >= 1")));
        }
        let qubits = len.trailing_zeros() as usize;
        check_register(qubits)?;
        let norm: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::domain(format!("state has squared norm {norm}")));
        }
        Ok(StateVector { amps, qubits })
    }

    /// Tensor product `self (x) other`; `self` supplies the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_register(self.qubits + other.qubits)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { amps, qubits: self.qubits + other.qubits })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.qubits != other.qubits {
            return Err(Error::domain("register sizes differ"));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest amplitude difference against another state.
    pub fn max_amplitude_error(&self, other: &StateVector) -> Result<f64> {
        if self.qubits != other.qubits {
            return Err(Error::domain("register sizes differ"));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.qubits {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "qubit {q} out of range for a {}-qubit register",
                self.qubits
            )))
        }
    }

    fn bit_of(&self, q: usize) -> usize {
        1 << (self.qubits - 1 - q)
    }

    /// `|x> -> ((-1)^x |x> + |1-x>) / sqrt(2)` on qubit `q`.
    pub fn hadamard(&self, q: usize) -> Result<StateVector> {
        self.check_qubit(q)?;
        let bit = self.bit_of(q);
        let mut amps = self.amps.clone();
        for i in (0..amps.len()).filter(|i| i & bit == 0) {
            let (a0, a1) = (self.amps[i], self.amps[i | bit]);
            amps[i] = (a0 + a1) * FRAC_1_SQRT_2;
            amps[i | bit] = (a0 - a1) * FRAC_1_SQRT_2;
        }
        Ok(StateVector { amps, qubits: self.qubits })
    }

    /// Pauli X (NOT) on qubit `q`.
    pub fn not(&self, q: usize) -> Result<StateVector> {
        self.check_qubit(q)?;
        let bit = self.bit_of(q);
        let amps = (0..self.amps.len()).map(|i| self.amps[i ^ bit]).collect();
        Ok(StateVector { amps, qubits: self.qubits })
    }

    /// `|c, t> -> |c, t XOR c>`.
    pub fn cnot(&self, control: usize, target: usize) -> Result<StateVector> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::domain("control and target must differ"));
        }
        let (cb, tb) = (self.bit_of(control), self.bit_of(target));
        let amps = (0..self.amps.len())
            .map(|i| if i & cb != 0 { self.amps[i ^ tb] } else { self.amps[i] })
            .collect();
        Ok(StateVector { amps, qubits: self.qubits })
    }

    /// Basis labels `00`, `01`, ... in index order.
    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.amps.len())
            .map(|i| format!("{i:0w$b}", w = self.qubits))
            .collect()
    }

    /// Dirac notation, factoring out a common `1/sqrt(k)` magnitude when all
    /// nonzero amplitudes share it.
    pub fn to_dirac(&self) -> String {
        const EPS: f64 = 1e-9;
        let labels = self.basis_labels();
        let terms: Vec<(usize, Complex64)> = self
            .amps
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, a)| a.norm() > EPS)
            .collect();
        if terms.is_empty() {
            return "0".to_owned();
        }
        let mag = terms[0].1.norm();
        let k = (1.0 / (mag * mag)).round();
        let common = terms.iter().all(|(_, a)| (a.norm() - mag).abs() < EPS)
            && (mag * mag * k - 1.0).abs() < EPS
            && terms.iter().all(|(_, a)| a.im.abs() < EPS || a.re.abs() < EPS);
        let mut out = String::new();
        if common {
            if k > 1.0 {
                let _ = write!(out, "1/√{} (", k as u64);
            }
            for (n, (i, a)) in terms.iter().enumerate() {
                let (neg, imag) = if a.im.abs() > EPS { (a.im < 0.0, true) } else { (a.re < 0.0, false) };
                let sign = match (n, neg) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let unit = if imag { "i" } else { "" };
                let _ = write!(out, "{sign}{unit}|{}⟩", labels[*i]);
            }
            if k > 1.0 {
                out.push(')');
            }
        } else {
            for (n, (i, a)) in terms.iter().enumerate() {
                if n > 0 {
                    out.push_str(" + ");
                }
                let _ = write!(out, "({:.6}{:+.6}i)|{}⟩", a.re, a.im, labels[*i]);
            }
        }
        out
    }

    /// Seeded Born-rule samples of the full register. Demonstration only;
    /// every check in this crate uses [`measure_distribution`].
    pub fn sample(&self, shots: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let probs: Vec<f64> = self.amps.iter().map(Complex64::norm_sqr).collect();
        (0..shots)
            .map(|_| {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for (i, p) in probs.iter().enumerate() {
                    acc += p;
                    if u < acc {
                        return i;
                    }
                }
                probs.len() - 1
            })
            .collect()
    }
}

fn check_register(qubits: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&qubits) {
        Ok(())
    } else {
        Err(Error::domain(format!("register of {qubits} qubits is outside 1..={MAX_QUBITS}")))
    }
}

/// Which target the second wire starts in, relative to the first wire's bit `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetMode {
    /// target `= x` (since `x^2 = x` on a bit)
    XSquared,
    /// target `= x XOR 1`
    XSquaredPlusOne,
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        BellState::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse(format!("unknown Bell state {s:?}")))
    }

    /// The textbook amplitudes, written down directly rather than simulated.
    pub fn ideal(self) -> StateVector {
        let h = FRAC_1_SQRT_2;
        let v = match self {
            BellState::PhiPlus => [h, 0.0, 0.0, h],
            BellState::PhiMinus => [h, 0.0, 0.0, -h],
            BellState::PsiPlus => [0.0, h, h, 0.0],
            BellState::PsiMinus => [0.0, h, -h, 0.0],
        };
        StateVector {
            amps: v.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
            qubits: 2,
        }
    }

    /// The circuit input `(x, mode)` that produces this state.
    pub fn circuit_input(self) -> (bool, TargetMode) {
        match self {
            BellState::PhiPlus => (false, TargetMode::XSquared),
            BellState::PsiMinus => (true, TargetMode::XSquared),
            BellState::PsiPlus => (false, TargetMode::XSquaredPlusOne),
            BellState::PhiMinus => (true, TargetMode::XSquaredPlusOne),
        }
    }
}

/// Prepares `|x>|t>`, applies H to the first wire, then CNOT(first -> second).
pub fn bell_state(x: bool, mode: TargetMode) -> StateVector {
    let target = match mode {
        TargetMode::XSquared => x,
        TargetMode::XSquaredPlusOne => !x,
    };
    let index = (usize::from(x) << 1) | usize::from(target);
    StateVector::basis(2, index)
        .and_then(|s| s.hadamard(0))
        .and_then(|s| s.cnot(0, 1))
        .expect("two-qubit circuit is always in range")
}

fn check_subset(s: &StateVector, qubits: &[usize]) -> Result<()> {
    if qubits.is_empty() {
        return Err(Error::domain("qubit set is empty"));
    }
    for (i, &q) in qubits.iter().enumerate() {
        s.check_qubit(q)?;
        if qubits[..i].contains(&q) {
            return Err(Error::domain(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

/// Exact Born-rule marginal over the selected qubits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Marginal {
    pub qubits: Vec<usize>,
    /// `probabilities[k]`: outcome `k`, whose bits follow the order of `qubits`.
    pub probabilities: Vec<f64>,
}

impl Marginal {
    pub fn label(&self, outcome: usize) -> String {
        format!("{outcome:0w$b}", w = self.qubits.len())
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        let k = usize::from_str_radix(label, 2).ok()?;
        (label.len() == self.qubits.len()).then(|| self.probabilities.get(k).copied())?
    }

    /// Outcomes with nonzero probability, as `(label, probability)`.
    pub fn support(&self) -> Vec<(String, f64)> {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(k, &p)| (self.label(k), p))
            .collect()
    }
}

pub fn measure_distribution(s: &StateVector, qubits: &[usize]) -> Result<Marginal> {
    check_subset(s, qubits)?;
    let mut probabilities = vec![0.0; 1 << qubits.len()];
    for (i, a) in s.amps.iter().enumerate() {
        let outcome = qubits
            .iter()
            .fold(0, |acc, &q| (acc << 1) | usize::from(i & s.bit_of(q) != 0));
        probabilities[outcome] += a.norm_sqr();
    }
    // Renormalize so rounding in the amplitudes (1/sqrt 2 is not a double)
    // does not leak into the distribution: |1/sqrt2|^2 alone is 0.5000000000000001.
    let total: f64 = probabilities.iter().sum();
    for p in &mut probabilities {
        *p /= total;
    }
    Ok(Marginal { qubits: qubits.to_vec(), probabilities })
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_pure(s: &StateVector) -> Self {
        let n = s.amps.len();
        DensityMatrix {
            m: DMatrix::from_fn(n, n, |r, c| s.amps[r] * s.amps[c].conj()),
        }
    }

    /// Validates and wraps a matrix.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() || !m.nrows().is_power_of_two() {
            return Err(Error::domain("density matrix must be 2^k x 2^k"));
        }
        let d = DensityMatrix { m };
        if !d.is_hermitian(1e-12) {
            return Err(Error::domain("matrix is not Hermitian"));
        }
        if (d.trace() - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("trace {} is not 1", d.trace())));
        }
        if d.eigenvalues().iter().any(|&l| l < -1e-10) {
            return Err(Error::domain("matrix is not positive semidefinite"));
        }
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.m[(r, c)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| (self.m[(r, c)] - self.m[(c, r)].conj()).norm() <= tol))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.m.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Largest entrywise distance to another matrix of the same size.
    pub fn max_entry_error(&self, other: &DMatrix<Complex64>) -> f64 {
        if self.m.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.m.iter().zip(other.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Partial trace keeping `keep` (a nonempty proper subset), in the given order.
pub fn reduced_density(s: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    check_subset(s, keep)?;
    if keep.len() == s.qubits {
        return Err(Error::domain("keep must be a proper subset of the register"));
    }
    let traced: Vec<usize> = (0..s.qubits).filter(|q| !keep.contains(q)).collect();
    let dk = 1 << keep.len();
    let compose = |kept: usize, env: usize| -> usize {
        let mut idx = 0;
        for (j, &q) in keep.iter().enumerate() {
            if kept >> (keep.len() - 1 - j) & 1 == 1 {
                idx |= s.bit_of(q);
            }
        }
        for (j, &q) in traced.iter().enumerate() {
            if env >> (traced.len() - 1 - j) & 1 == 1 {
                idx |= s.bit_of(q);
            }
        }
        idx
    };
    let m = DMatrix::from_fn(dk, dk, |r, c| {
        (0..1 << traced.len())
            .map(|e| s.amps[compose(r, e)] * s.amps[compose(c, e)].conj())
            .sum()
    });
    Ok(DensityMatrix { m })
}

/// Von Neumann entropy in bits, `-sum(l log2 l)` with `0 log 0 = 0`.
pub fn entanglement_entropy(d: &DensityMatrix) -> f64 {
    d.eigenvalues()
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Min-entropy `-log2(lambda_max)` in bits.
pub fn min_entropy(d: &DensityMatrix) -> f64 {
    let max = d.eigenvalues().last().copied().unwrap_or(1.0);
    (-max.log2()).max(0.0)
}

/// Matrix of a gate obtained by applying it to each basis state;
/// column `j` is the image of `|j>`.
pub fn gate_matrix(
    qubits: usize,
    gate: impl Fn(&StateVector) -> Result<StateVector>,
) -> Result<Vec<Vec<Complex64>>> {
    check_register(qubits)?;
    let n = 1 << qubits;
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let out = gate(&StateVector::basis(qubits, j)?)?;
        for (i, row) in rows.iter_mut().enumerate() {
            row[j] = out.amps[i];
        }
    }
    Ok(rows)
}

/// JSON shape of a circuit result.
#[derive(Debug, Clone, Serialize)]
pub struct CircuitReport {
    pub basis_labels: Vec<String>,
    pub amplitudes: Vec<(f64, f64)>,
    pub probabilities: Vec<f64>,
}

impl From<&StateVector> for CircuitReport {
    fn from(s: &StateVector) -> Self {
        CircuitReport {
            basis_labels: s.basis_labels(),
            amplitudes: s.amps.iter().map(|a| (a.re, a.im)).collect(),
            probabilities: s.amps.iter().map(Complex64::norm_sqr).collect(),
        }
    }
}
