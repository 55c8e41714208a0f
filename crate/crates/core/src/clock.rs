//! Finite-dimensional quantum clocks: unitary evolution, first-orthogonality
//! ("tick") times and the Margolus-Levitin / Mandelstam-Tamm lower bounds.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 64;
pub const DEFAULT_GRID: usize = 10_000;
pub const DEFAULT_THRESHOLD: f64 = 1e-9;

const HERMITIAN_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumClock {
    hamiltonian: DMatrix<Complex64>,
    initial_state: DVector<Complex64>,
    hbar: f64,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
    /// `|⟨e_k|ψ₀⟩|²` per eigenvector.
    weights: Vec<f64>,
    ground: f64,
    energy_mean: f64,
    energy_std: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityScan {
    pub t_max: f64,
    pub grid: usize,
    pub threshold: f64,
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

impl QuantumClock {
    /// `hamiltonian` in J, `initial_state` normalized, `hbar` in J·s.
    pub fn new(
        hamiltonian: DMatrix<Complex64>,
        initial_state: DVector<Complex64>,
        hbar: f64,
    ) -> Result<Self> {
        let d = hamiltonian.nrows();
        if d == 0 || hamiltonian.ncols() != d || initial_state.len() != d {
            return Err(Error::InvalidInput(format!(
                "hamiltonian is {}×{}, state has {} components",
                d,
                hamiltonian.ncols(),
                initial_state.len()
            )));
        }
        if d > MAX_DIMENSION {
            return Err(Error::InvalidInput(format!(
                "clock dimension {d} exceeds {MAX_DIMENSION}"
            )));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidConstants(format!("hbar must be positive, got {hbar}")));
        }
        if hamiltonian.iter().chain(initial_state.iter()).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("non-finite clock entries".into()));
        }
        let scale = max_abs(&hamiltonian);
        let asym = max_abs(&(&hamiltonian - hamiltonian.adjoint()));
        if asym > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NotHermitian(asym / scale));
        }
        let norm = initial_state.norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidInput(format!("initial state has norm {norm}, expected 1")));
        }

        // Decompose the dimensionless H/scale and restore units afterwards.
        let unit = if scale > 0.0 { scale } else { 1.0 };
        let h = (&hamiltonian + hamiltonian.adjoint()).unscale(2.0 * unit);
        let eig = SymmetricEigen::try_new(h, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numeric("hamiltonian eigendecomposition did not converge".into()))?;
        let eigenvalues: Vec<f64> = eig.eigenvalues.iter().map(|e| e * unit).collect();
        let eigenvectors = eig.eigenvectors;
        let amplitudes = eigenvectors.adjoint() * &initial_state;
        let weights: Vec<f64> = amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let ground = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);

        // Moments relative to the ground level to avoid cancellation.
        let total: f64 = weights.iter().sum();
        let mean = weights.iter().zip(&eigenvalues).map(|(w, e)| w * (e - ground)).sum::<f64>() / total;
        let var = weights
            .iter()
            .zip(&eigenvalues)
            .map(|(w, e)| w * (e - ground - mean).powi(2))
            .sum::<f64>()
            / total;
        Ok(Self {
            hamiltonian,
            initial_state,
            hbar,
            eigenvalues,
            eigenvectors,
            weights,
            ground,
            energy_mean: mean.max(0.0),
            energy_std: var.max(0.0).sqrt(),
        })
    }

    /// Builds a clock from `[re, im]` rows of `H` (J) and components of `ψ₀`.
    pub fn from_rows(hamiltonian: &[Vec<[f64; 2]>], state: &[[f64; 2]], hbar: f64) -> Result<Self> {
        let d = state.len();
        if hamiltonian.len() != d || hamiltonian.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidInput(format!(
                "hamiltonian must be {d}×{d} to match the state"
            )));
        }
        let z = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
        let h = DMatrix::from_fn(d, d, |i, j| z(&hamiltonian[i][j]));
        let psi = DVector::from_fn(d, |i, _| z(&state[i]));
        Self::new(h, psi, hbar)
    }

    /// `H = ħω σ_z / 2`, `ψ₀ = (|0⟩ + |1⟩)/√2`.
    pub fn qubit(omega: f64, hbar: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidInput(format!("omega must be positive, got {omega}")));
        }
        let e = 0.5 * hbar * omega;
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![Complex64::from(e), Complex64::from(-e)]));
        let s = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
        Self::new(h, DVector::from_vec(vec![s, s]), hbar)
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn hamiltonian(&self) -> &DMatrix<Complex64> {
        &self.hamiltonian
    }

    pub fn initial_state(&self) -> &DVector<Complex64> {
        &self.initial_state
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Sorted spectrum, J.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut s = self.eigenvalues.clone();
        s.sort_by(f64::total_cmp);
        s
    }

    /// `⟨ψ₀|H|ψ₀⟩ − λ_min`, J.
    pub fn energy_mean(&self) -> f64 {
        self.energy_mean
    }

    /// `√(⟨H²⟩ − ⟨H⟩²)`, J.
    pub fn energy_std(&self) -> f64 {
        self.energy_std
    }

    /// `⟨ψ₀|exp(−iHt/ħ)|ψ₀⟩`.
    pub fn survival_amplitude(&self, t: f64) -> Complex64 {
        // Evaluate relative to the ground level, then restore the global phase.
        let shifted: Complex64 = self
            .weights
            .iter()
            .zip(&self.eigenvalues)
            .map(|(w, e)| w * Complex64::from_polar(1.0, -(e - self.ground) * t / self.hbar))
            .sum();
        shifted * Complex64::from_polar(1.0, -self.ground * t / self.hbar)
    }

    fn survival_modulus(&self, t: f64) -> f64 {
        self.weights
            .iter()
            .zip(&self.eigenvalues)
            .map(|(w, e)| w * Complex64::from_polar(1.0, -(e - self.ground) * t / self.hbar))
            .sum::<Complex64>()
            .norm()
    }

    /// `ψ(t) = exp(−iHt/ħ) ψ₀`.
    pub fn state_at(&self, t: f64) -> DVector<Complex64> {
        let phases = DVector::from_iterator(
            self.dimension(),
            self.eigenvalues
                .iter()
                .map(|e| Complex64::from_polar(1.0, -e * t / self.hbar)),
        );
        let coeffs = (self.eigenvectors.adjoint() * &self.initial_state).component_mul(&phases);
        &self.eigenvectors * coeffs
    }

    /// `πħ/2E`; infinite for a stationary state.
    pub fn ml_lower_bound(&self) -> f64 {
        bound_for(self.hbar, self.energy_mean, self.energy_scale())
    }

    /// `πħ/2ΔE`; infinite for a stationary state.
    pub fn heisenberg_lower_bound(&self) -> f64 {
        bound_for(self.hbar, self.energy_std, self.energy_scale())
    }

    fn energy_scale(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a, e| a.max(e.abs()))
    }

    /// Scan window of 50 Heisenberg times at the default grid and threshold.
    pub fn default_scan(&self) -> OrthogonalityScan {
        let h = self.heisenberg_lower_bound();
        OrthogonalityScan {
            t_max: if h.is_finite() { 50.0 * h } else { 1.0 },
            grid: DEFAULT_GRID,
            threshold: DEFAULT_THRESHOLD,
        }
    }

    /// Local minima of `|A|` on `[0, t_max]` that dip below the threshold,
    /// each refined by golden-section search.
    fn orthogonal_times(&self, scan: &OrthogonalityScan, first_only: bool) -> Result<Vec<f64>> {
        if !(scan.t_max.is_finite() && scan.t_max > 0.0) {
            return Err(Error::InvalidInput(format!("t_max must be positive, got {}", scan.t_max)));
        }
        if scan.grid < 3 {
            return Err(Error::InvalidInput("scan grid needs at least 3 points".into()));
        }
        let dt = scan.t_max / (scan.grid - 1) as f64;
        let values: Vec<f64> = (0..scan.grid).map(|i| self.survival_modulus(i as f64 * dt)).collect();
        let mut found = Vec::new();
        for i in 1..scan.grid {
            let left = values[i - 1];
            let right = values.get(i + 1).copied().unwrap_or(f64::INFINITY);
            if values[i] > left || values[i] > right {
                continue;
            }
            // Plateaus: only the first point of a run of equal values.
            if values[i] == left && i > 1 {
                continue;
            }
            let hi = ((i + 1) as f64 * dt).min(scan.t_max);
            let (t, m) = golden_section(|t| self.survival_modulus(t), (i - 1) as f64 * dt, hi);
            if m < scan.threshold {
                if found.last().is_some_and(|prev: &f64| (t - prev).abs() <= dt) {
                    continue;
                }
                found.push(t);
                if first_only {
                    break;
                }
            }
        }
        Ok(found)
    }

    /// Smallest time in `[0, t_max]` at which the evolved state is
    /// orthogonal to `ψ₀`, or `None`.
    pub fn first_orthogonal_time(&self, scan: &OrthogonalityScan) -> Result<Option<f64>> {
        Ok(self.orthogonal_times(scan, true)?.first().copied())
    }

    /// Number of disjoint windows in `[0, scan.t_max]` where `|A|` drops
    /// below the threshold.
    pub fn tick_count(&self, scan: &OrthogonalityScan) -> Result<usize> {
        Ok(self.orthogonal_times(scan, false)?.len())
    }

    /// `H' = U H U†`, `ψ₀' = U ψ₀`.
    pub fn frame_transform(&self, u: &DMatrix<Complex64>) -> Result<Self> {
        let d = self.dimension();
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::InvalidInput(format!(
                "transform is {}×{}, clock dimension {d}",
                u.nrows(),
                u.ncols()
            )));
        }
        let defect = max_abs(&(u.adjoint() * u - DMatrix::<Complex64>::identity(d, d)));
        if defect > UNIT_TOL {
            return Err(Error::NonUnitary(defect));
        }
        let h = u * &self.hamiltonian * u.adjoint();
        // Restore exact Hermiticity lost to round-off.
        let h = (&h + h.adjoint()).unscale(2.0);
        let mut psi = u * &self.initial_state;
        psi.unscale_mut(psi.norm());
        Self::new(h, psi, self.hbar)
    }
}

fn bound_for(hbar: f64, energy: f64, scale: f64) -> f64 {
    if energy <= 1e-14 * scale {
        f64::INFINITY
    } else {
        PI * hbar / (2.0 * energy)
    }
}

/// Minimizer and minimum of `f` on `[a, b]`.
fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * b.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random `d×d` unitary (QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal divided out).
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let phase = r[(j, j)] / r[(j, j)].norm();
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random clock of dimension `d` (2..=64) guaranteed to reach an orthogonal
/// state: the occupied levels sit symmetrically about a center `E_c`, so
/// `e^{iE_c t/ħ}A(t)` is real and changes sign. Unoccupied levels are placed
/// below the occupied band. The whole clock is then conjugated by a random
/// unitary. Energies are drawn on the scale `ħω`.
pub fn random_ticking_clock<R: Rng>(d: usize, omega: f64, hbar: f64, rng: &mut R) -> Result<QuantumClock> {
    if !(2..=MAX_DIMENSION).contains(&d) {
        return Err(Error::InvalidInput(format!("random clocks need 2 ≤ d ≤ {MAX_DIMENSION}")));
    }
    let unit = hbar * omega;
    let occupied_pairs = rng.gen_range(1..=d / 2);
    let center = unit * rng.gen_range(1.0..4.0);
    let mut levels = Vec::with_capacity(d);
    let mut amps = Vec::with_capacity(d);
    let mut weights: Vec<f64> = (0..occupied_pairs).map(|_| rng.gen_range(0.1..1.0)).collect();
    // The leading pair dominates so that the real amplitude crosses zero.
    weights[0] += weights.iter().skip(1).sum::<f64>();
    let total: f64 = 2.0 * weights.iter().sum::<f64>();
    for w in &weights {
        let half_gap = unit * rng.gen_range(0.2..1.0);
        let amp = (w / total).sqrt();
        for sign in [-1.0, 1.0] {
            levels.push(center + sign * half_gap);
            amps.push(Complex64::from_polar(amp, rng.gen_range(0.0..2.0 * PI)));
        }
    }
    while levels.len() < d {
        levels.push(center - unit * rng.gen_range(1.0..3.0));
        amps.push(Complex64::from(0.0));
    }
    let h = DMatrix::from_diagonal(&DVector::from_iterator(d, levels.iter().map(|e| Complex64::from(*e))));
    let psi = DVector::from_vec(amps).normalize();
    let u = random_unitary(d, rng);
    let h = &u * h * u.adjoint();
    let h = (&h + h.adjoint()).unscale(2.0);
    QuantumClock::new(h, (&u * psi).normalize(), hbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::CODATA_HBAR;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn qubit_saturates_both_bounds() {
        for omega in [1.0, 2.0e3, 7.7e9] {
            let q = QuantumClock::qubit(omega, CODATA_HBAR).unwrap();
            assert!(rel(q.energy_mean(), 0.5 * CODATA_HBAR * omega) < 1e-12);
            assert!(rel(q.energy_std(), 0.5 * CODATA_HBAR * omega) < 1e-12);
            assert!(rel(q.ml_lower_bound(), PI / omega) < 1e-12);
            assert!(rel(q.heisenberg_lower_bound(), PI / omega) < 1e-12);
            let t = q.first_orthogonal_time(&q.default_scan()).unwrap().unwrap();
            assert!(rel(t, PI / omega) < 1e-9, "{t} vs {}", PI / omega);
            assert!(q.survival_amplitude(PI / omega).norm() < 1e-12);
        }
    }

    #[test]
    fn amplitude_at_zero_is_one() {
        let q = QuantumClock::qubit(3.0, 1.0).unwrap();
        assert!((q.survival_amplitude(0.0) - Complex64::from(1.0)).norm() < 1e-15);
    }

    #[test]
    fn two_level_gap() {
        // Equal superposition of levels 0 and 3ħ with an idle level between.
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 1.0, 3.0].into_iter().map(Complex64::from).collect()));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = DVector::from_vec(vec![Complex64::from(s), Complex64::from(0.0), Complex64::from(s)]);
        let c = QuantumClock::new(h, psi, 1.0).unwrap();
        let t = c.first_orthogonal_time(&c.default_scan()).unwrap().unwrap();
        assert!(rel(t, PI / 3.0) < 1e-9);
    }

    #[test]
    fn short_time_decay_matches_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d = 4;
        let a = DMatrix::from_fn(d, d, |_, _| gaussian_complex(&mut rng));
        let h = (&a + a.adjoint()).unscale(2.0);
        let psi = DVector::from_fn(d, |_, _| gaussian_complex(&mut rng)).normalize();
        let c = QuantumClock::new(h.clone(), psi.clone(), 1.0).unwrap();
        // |A(t)|² ≈ 1 − (ΔE t/ħ)² with ΔE from direct matrix moments.
        let m1 = psi.dotc(&(&h * &psi)).re;
        let m2 = (&h * &psi).norm_squared();
        let var = m2 - m1 * m1;
        assert!(rel(c.energy_std().powi(2), var) < 1e-10);
        let t = 1e-4;
        let a2 = c.survival_amplitude(t).norm_sqr();
        assert!(((1.0 - a2) - var * t * t).abs() < 1e-3 * var * t * t);
    }

    #[test]
    fn ground_state_never_ticks() {
        let q = QuantumClock::qubit(1.0, 1.0).unwrap();
        let ground = QuantumClock::new(
            q.hamiltonian().clone(),
            DVector::from_vec(vec![Complex64::from(0.0), Complex64::from(1.0)]),
            1.0,
        )
        .unwrap();
        assert_eq!(ground.ml_lower_bound(), f64::INFINITY);
        assert_eq!(ground.heisenberg_lower_bound(), f64::INFINITY);
        assert_eq!(ground.first_orthogonal_time(&ground.default_scan()).unwrap(), None);
    }

    #[test]
    fn weighted_toward_ground_three_level() {
        // Weights 0.9/0.05/0.05 on 0, 1, 10: E = 0.55, ΔE² = 4.6475 ⇒ ML > Heisenberg.
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 1.0, 10.0].into_iter().map(Complex64::from).collect()));
        let psi = DVector::from_vec(vec![0.9f64.sqrt(), 0.05f64.sqrt(), 0.05f64.sqrt()].into_iter().map(Complex64::from).collect());
        let c = QuantumClock::new(h, psi, 1.0).unwrap();
        assert!(rel(c.energy_mean(), 0.55) < 1e-12);
        assert!(rel(c.energy_std(), (5.05f64 - 0.55 * 0.55).sqrt()) < 1e-12);
        assert!(c.ml_lower_bound() > c.heisenberg_lower_bound());
    }

    #[test]
    fn validation() {
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0].map(Complex64::from));
        let psi = DVector::from_vec(vec![Complex64::from(1.0), Complex64::from(0.0)]);
        assert!(matches!(QuantumClock::new(h, psi.clone(), 1.0), Err(Error::NotHermitian(_))));
        let h = DMatrix::<Complex64>::identity(2, 2);
        assert!(QuantumClock::new(h.clone(), psi.scale(2.0), 1.0).is_err());
        let big = DMatrix::<Complex64>::identity(65, 65);
        let v = DVector::from_fn(65, |i, _| Complex64::from(if i == 0 { 1.0 } else { 0.0 }));
        assert!(QuantumClock::new(big, v, 1.0).is_err());
        let q = QuantumClock::new(h, psi, 1.0).unwrap();
        let not_u = DMatrix::<Complex64>::identity(2, 2).scale(1.0 + 1e-9);
        assert!(matches!(q.frame_transform(&not_u), Err(Error::NonUnitary(_))));
    }

    #[test]
    fn identity_transform_is_trivial() {
        let q = QuantumClock::qubit(2.0, 1.0).unwrap();
        let same = q.frame_transform(&DMatrix::identity(2, 2)).unwrap();
        assert_eq!(same.hamiltonian(), q.hamiltonian());
        assert_eq!(same.initial_state(), q.initial_state());
    }

    #[test]
    fn diagonalizing_transform_keeps_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let c = random_ticking_clock(4, 1.0, 1.0, &mut rng).unwrap();
        let u = c.eigenvectors.adjoint();
        let d = c.frame_transform(&u).unwrap();
        for (a, b) in c.spectrum().iter().zip(d.spectrum()) {
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        }
        let (ta, tb) = (
            c.first_orthogonal_time(&c.default_scan()).unwrap().unwrap(),
            d.first_orthogonal_time(&c.default_scan()).unwrap().unwrap(),
        );
        assert!(rel(ta, tb) < 1e-9);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..9 {
            let u = random_unitary(d, &mut rng);
            let defect = max_abs(&(u.adjoint() * &u - DMatrix::<Complex64>::identity(d, d)));
            assert!(defect < 1e-13, "{d}: {defect}");
        }
    }

    #[test]
    fn ticks_over_segment() {
        let q = QuantumClock::qubit(1.0, 1.0).unwrap();
        let scan = OrthogonalityScan {
            t_max: 10.0 * PI,
            grid: DEFAULT_GRID,
            threshold: DEFAULT_THRESHOLD,
        };
        // Zeros of cos(t/2) at π, 3π, 5π, 7π, 9π.
        assert_eq!(q.tick_count(&scan).unwrap(), 5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bounds_hold_for_random_clocks(seed in any::<u64>(), d in 2usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_ticking_clock(d, 1.0, 1.0, &mut rng).unwrap();
            let t = c.first_orthogonal_time(&c.default_scan()).unwrap();
            prop_assert!(t.is_some());
            let t = t.unwrap();
            prop_assert!(t >= c.ml_lower_bound() * (1.0 - 1e-9));
            prop_assert!(t >= c.heisenberg_lower_bound() * (1.0 - 1e-9));
        }

        #[test]
        fn evolution_is_unitary(seed in any::<u64>(), t in 0.0f64..100.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_ticking_clock(5, 1.0, 1.0, &mut rng).unwrap();
            prop_assert!((c.state_at(t).norm() - 1.0).abs() < 1e-12);
            let direct = c.initial_state().dotc(&c.state_at(t));
            prop_assert!((direct - c.survival_amplitude(t)).norm() < 1e-12);
        }
    }
}
