//! Brute-force amplitude enumeration of the two-photon interferometer.
//!
//! Written independently of the density-matrix route in the library: every
//! photon is followed through both beam splitter passages with explicit
//! complex amplitudes (transmission `sqrt(T)`, reflection `i sqrt(R)`),
//! final detector modes are assigned by hand, and indistinguishable
//! alternatives are summed with their mutual coherence.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use timebin_core::optics::{Geometry, InterferometerConfig};

const C_LIGHT: f64 = 2.997_924_58e8;

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleDist {
    pub central: f64,
    pub early: f64,
    pub late: f64,
    pub same: f64,
    pub lost: f64,
}

impl OracleDist {
    pub fn total(&self) -> f64 {
        self.central + self.early + self.late + self.same + self.lost
    }
}

/// Final mode: (detected?, side index 0 = A, 1 = B).
type Dest = (bool, usize);

struct Contribution {
    arms: [bool; 2], // true = long
    dest: [Dest; 2],
    amp: C,
}

fn contributions(cfg: &InterferometerConfig<f64>, total_phase: f64) -> Vec<Contribution> {
    let t = C::new(cfg.bs_transmissivity().sqrt(), 0.0);
    let r = C::new(0.0, cfg.bs_reflectivity.sqrt());
    let phases = [cfg.phase_a + total_phase, cfg.phase_b];
    let swap = cfg.geometry == Geometry::MichelsonSwap;

    let mut out = Vec::new();
    for long_a in [false, true] {
        for long_b in [false, true] {
            for det_a in [true, false] {
                for det_b in [true, false] {
                    let arms = [long_a, long_b];
                    let dets = [det_a, det_b];
                    let mut amp = C::new(1.0, 0.0);
                    let mut dest = [(false, 0); 2];
                    for photon in 0..2 {
                        let long = arms[photon];
                        let first = if long { r } else { t };
                        // short arm exits towards the detectors by reflection,
                        // long arm by transmission
                        let second = match (long, dets[photon]) {
                            (false, true) => r,
                            (false, false) => t,
                            (true, true) => t,
                            (true, false) => r,
                        };
                        let phase = if long {
                            C::from_polar(1.0, phases[photon])
                        } else {
                            C::new(1.0, 0.0)
                        };
                        amp *= first * second * phase;
                        let side = if swap && long { 1 - photon } else { photon };
                        dest[photon] = (dets[photon], side);
                    }
                    out.push(Contribution { arms, dest, amp });
                }
            }
        }
    }
    out
}

fn sorted(d: [Dest; 2]) -> [Dest; 2] {
    let key = |x: Dest| (!x.0 as usize) * 2 + x.1;
    if key(d[0]) <= key(d[1]) {
        d
    } else {
        [d[1], d[0]]
    }
}

fn coherence(cfg: &InterferometerConfig<f64>, a: [bool; 2], b: [bool; 2]) -> f64 {
    if a == b {
        return 1.0;
    }
    let dx = cfg.imbalance();
    let delay = |long: bool| if long { dx } else { 0.0 };
    let mean = |p: [bool; 2]| 0.5 * (delay(p[0]) + delay(p[1]));
    let diff = |p: [bool; 2]| delay(p[0]) - delay(p[1]);
    let n_diff = (a[0] != b[0]) as i32 + (a[1] != b[1]) as i32;
    let overlap = cfg.mode_match_visibility.sqrt().powi(n_diff);
    let dm = (mean(a) - mean(b)).abs();
    let pump = if dm == 0.0 {
        1.0
    } else {
        (-dm / (C_LIGHT * cfg.pump_coherence_time)).exp()
    };
    let dd = diff(a) - diff(b);
    let filter = if dd == 0.0 {
        1.0
    } else {
        (-0.5 * (dd / (C_LIGHT * cfg.single_photon_coherence_time)).powi(2)).exp()
    };
    overlap * pump * filter
}

/// Outcome probabilities before detector efficiency, keyed by delay class
/// (0 prompt, +1 B late, -1 B early) and final modes.
pub fn optical(cfg: &InterferometerConfig<f64>, total_phase: f64) -> Vec<(i8, [Dest; 2], f64)> {
    let contribs = contributions(cfg, total_phase);
    let resolved = cfg.geometry != Geometry::MichelsonBalanced;
    let class = |arms: [bool; 2]| -> i8 {
        if !resolved {
            return 0;
        }
        match arms {
            [false, true] => 1,
            [true, false] => -1,
            _ => 0,
        }
    };

    let mut groups: Vec<(i8, [Dest; 2], Vec<&Contribution>)> = Vec::new();
    for c in &contribs {
        let k = class(c.arms);
        let key = if k == 0 { sorted(c.dest) } else { c.dest };
        match groups.iter_mut().find(|g| g.0 == k && g.1 == key) {
            Some(g) => g.2.push(c),
            None => groups.push((k, key, vec![c])),
        }
    }

    groups
        .into_iter()
        .map(|(k, key, members)| {
            let mut p = C::new(0.0, 0.0);
            for a in &members {
                for b in &members {
                    p += a.amp * b.amp.conj() * coherence(cfg, a.arms, b.arms);
                }
            }
            (k, key, p.re)
        })
        .collect()
}

pub fn distribution(cfg: &InterferometerConfig<f64>, total_phase: f64) -> OracleDist {
    let eff = [cfg.detection_efficiency_a, cfg.detection_efficiency_b];
    let mut d = OracleDist::default();
    for (class, dest, p) in optical(cfg, total_phase) {
        let mut detected = 0.0;
        if dest[0].0 && dest[1].0 {
            detected = p * eff[dest[0].1] * eff[dest[1].1];
            if dest[0].1 == dest[1].1 {
                d.same += detected;
            } else {
                match class {
                    0 => d.central += detected,
                    1 => d.late += detected,
                    _ => d.early += detected,
                }
            }
        }
        d.lost += p - detected;
    }
    d
}
