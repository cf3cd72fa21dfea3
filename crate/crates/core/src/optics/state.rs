use num_complex::Complex;

use super::config::{filter_envelope, pump_envelope, InterferometerConfig};
use crate::error::Result;
use crate::linalg::symmetric_eigenvalues;
use crate::num::Scalar;

/// Which arm each photon took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arm {
    Short,
    Long,
}

/// Two-photon path basis, ordered `|s s>, |s l>, |l s>, |l l>` with the
/// A-side photon first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathPair {
    ShortShort,
    ShortLong,
    LongShort,
    LongLong,
}

impl PathPair {
    pub const ALL: [PathPair; 4] = [
        PathPair::ShortShort,
        PathPair::ShortLong,
        PathPair::LongShort,
        PathPair::LongLong,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn arms(self) -> [Arm; 2] {
        match self {
            PathPair::ShortShort => [Arm::Short, Arm::Short],
            PathPair::ShortLong => [Arm::Short, Arm::Long],
            PathPair::LongShort => [Arm::Long, Arm::Short],
            PathPair::LongLong => [Arm::Long, Arm::Long],
        }
    }

    /// Arrival delay of photon B relative to photon A, in units of the
    /// imbalance: `-1`, `0` or `+1`.
    pub fn relative_delay(self) -> i8 {
        match self {
            PathPair::ShortShort | PathPair::LongLong => 0,
            PathPair::ShortLong => 1,
            PathPair::LongShort => -1,
        }
    }
}

pub type Matrix4<F> = [[Complex<F>; 4]; 4];

/// Density operator of the photon pair over the path basis, after the first
/// beam splitter passage.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonPathState<F> {
    pub rho: Matrix4<F>,
}

/// Prepares the path state produced by the first beam splitter passage.
///
/// Populations follow the beam splitter split (`T` on the short arm, `R` on
/// the long arm, independently per photon). Coherences come from two
/// independent dephasing mechanisms:
///
/// * the pump phase diffuses with the shift of the mean emission time
///   between alternatives, giving `exp(-|dm| / (c tau_pump))`;
/// * the pair's anticorrelated spectrum, band-limited by the filter, makes
///   alternatives with different A-B arrival offsets distinguishable,
///   giving `exp(-(dd / (c tau_c))^2 / 2)`.
///
/// The short-short/long-long coherence is therefore `sqrt(TTRR) * mu_pump`.
/// With `dx >> c tau_c` and a coherent pump this is the incoherent mixture
/// of the entangled state with the two mixed-path terms; with `dx -> 0` it
/// is the pure product state.
pub fn prepare_state<F: Scalar>(config: &InterferometerConfig<F>) -> Result<TwoPhotonPathState<F>> {
    config.validate()?;
    let dx = config.imbalance();
    let t = config.bs_transmissivity();
    let r = config.bs_reflectivity;
    let half = F::lit(0.5);

    let weight = |arm: Arm| match arm {
        Arm::Short => t,
        Arm::Long => r,
    };
    let delay = |arm: Arm| match arm {
        Arm::Short => F::zero(),
        Arm::Long => dx,
    };

    let mut rho = [[Complex::new(F::zero(), F::zero()); 4]; 4];
    for j in PathPair::ALL {
        let [ja, jb] = j.arms();
        let wj = weight(ja) * weight(jb);
        let (mj, dj) = ((delay(ja) + delay(jb)) * half, delay(ja) - delay(jb));
        for k in PathPair::ALL {
            let [ka, kb] = k.arms();
            let wk = weight(ka) * weight(kb);
            let (mk, dk) = ((delay(ka) + delay(kb)) * half, delay(ka) - delay(kb));
            let coherence = if j == k {
                F::one()
            } else {
                pump_envelope(mj - mk, config.pump_coherence_time)
                    * filter_envelope(dj - dk, config.single_photon_coherence_time)
            };
            rho[j.index()][k.index()] = Complex::new((wj * wk).sqrt() * coherence, F::zero());
        }
    }
    Ok(TwoPhotonPathState { rho })
}

impl<F: Scalar> TwoPhotonPathState<F> {
    pub fn element(&self, row: PathPair, col: PathPair) -> Complex<F> {
        self.rho[row.index()][col.index()]
    }

    pub fn trace(&self) -> Complex<F> {
        (0..4).fold(Complex::new(F::zero(), F::zero()), |acc, i| acc + self.rho[i][i])
    }

    /// Largest deviation from Hermiticity, `max |rho_jk - conj(rho_kj)|`.
    pub fn hermiticity_error(&self) -> F {
        let mut worst = F::zero();
        for j in 0..4 {
            for k in 0..4 {
                worst = worst.max((self.rho[j][k] - self.rho[k][j].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<F> {
        // Real 8x8 embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice.
        let mut m = vec![vec![F::zero(); 8]; 8];
        for j in 0..4 {
            for k in 0..4 {
                let h = (self.rho[j][k] + self.rho[k][j].conj()) * F::lit(0.5);
                m[j][k] = h.re;
                m[j + 4][k + 4] = h.re;
                m[j][k + 4] = -h.im;
                m[j + 4][k] = h.im;
            }
        }
        symmetric_eigenvalues(m).into_iter().step_by(2).collect()
    }

    /// `<v| rho |v>`: expectation of the rank-one projector onto `v`
    /// (unnormalized), i.e. the detection probability for a measurement
    /// vector over the path basis.
    pub fn expectation(&self, v: &[Complex<F>; 4]) -> F {
        let mut acc = Complex::new(F::zero(), F::zero());
        for j in 0..4 {
            for k in 0..4 {
                acc = acc + v[j].conj() * self.rho[j][k] * v[k];
            }
        }
        acc.re
    }

    /// Applies an elementwise (Schur) factor to the coherences.
    pub(crate) fn scale_coherences(&mut self, factor: impl Fn(PathPair, PathPair) -> F) {
        for j in PathPair::ALL {
            for k in PathPair::ALL {
                if j != k {
                    self.rho[j.index()][k.index()] =
                        self.rho[j.index()][k.index()] * factor(j, k);
                }
            }
        }
    }
}
