use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Memory cap on simulated qubits.
pub const MAX_QUBITS: usize = 24;

/// Allowed deviation of `Σ|α|²` from 1 after any gate.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n: usize,
    amplitudes: Vec<Complex<T>>,
}

/// `⊗ (|0⟩ + |1⟩)/√2`: every amplitude equals `2^{−n/2}`.
pub fn init_plus_state<T: Scalar>(n: usize) -> Result<StateVector<T>> {
    check_qubits(n)?;
    let amp = T::of(2f64.powf(-(n as f64) / 2.0));
    Ok(StateVector {
        n,
        amplitudes: vec![Complex::new(amp, T::zero()); 1 << n],
    })
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Capability(format!(
            "simulating {n} qubits is outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl<T: Scalar> StateVector<T> {
    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >> n != 0 {
            return Err(Error::InvalidConfig(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Self { n, amplitudes })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::InvalidConfig(format!(
                "{len} amplitudes is not a qubit register"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `α_x ← e^{−iγ f(x)} α_x`.
    pub fn apply_phase(&mut self, table: &[T], gamma: T) -> Result<()> {
        Error::check_len("phase table length", self.amplitudes.len(), table.len())?;
        for (amp, &value) in self.amplitudes.iter_mut().zip(table) {
            let (sin, cos) = (gamma * value).sin_cos();
            *amp = *amp * Complex::new(cos, -sin);
        }
        Ok(())
    }

    /// `e^{−iβ Σ_j X_j}`, applied as the single-qubit rotation
    /// `[[cos β, −i sin β], [−i sin β, cos β]]` on every qubit.
    pub fn apply_mixer(&mut self, beta: T) {
        let (sin, cos) = beta.sin_cos();
        for qubit in 0..self.n {
            let half = 1usize << qubit;
            for block in self.amplitudes.chunks_exact_mut(2 * half) {
                let (zeros, ones) = block.split_at_mut(half);
                for (a, b) in zeros.iter_mut().zip(ones.iter_mut()) {
                    let (x, y) = (*a, *b);
                    // −i·s·z = (s·z.im, −s·z.re)
                    *a = Complex::new(cos * x.re + sin * y.im, cos * x.im - sin * y.re);
                    *b = Complex::new(cos * y.re + sin * x.im, cos * y.im - sin * x.re);
                }
            }
        }
    }

    pub(crate) fn debug_check_norm(&self) {
        debug_assert!(
            (self.norm_sqr().as_f64() - 1.0).abs()
                <= NORM_TOLERANCE.max(64.0 * T::epsilon().as_f64()),
            "state norm drifted to {}",
            self.norm_sqr()
        );
    }
}
