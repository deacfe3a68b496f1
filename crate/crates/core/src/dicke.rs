//! Collective emission of permutation-symmetric (Dicke) states.
//!
//! The photon emission probability of an ensemble state |ψ⟩ into the
//! phase-matched mode scales as ‖J₋|ψ⟩‖², with `J₋ = Σ_k |g⟩_k⟨e|_k`. After a
//! π-pulse, a single stored excitation leaves N−1 excited atoms while an
//! empty memory leaves all N excited; the ratio of their emission strengths
//! bounds the echo signal-to-noise ratio.

use crate::error::{Error, Result};

/// Largest ensemble size for the 2^N brute-force construction.
pub const MAX_BRUTE_FORCE_ATOMS: usize = 14;

/// Normalized symmetric superposition of all configurations of `n_atoms`
/// atoms with `n_excited` excitations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricState {
    n_atoms: usize,
    n_excited: usize,
}

impl SymmetricState {
    pub fn new(n_atoms: usize, n_excited: usize) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::invalid("n_atoms", "must be >= 1"));
        }
        if n_excited > n_atoms {
            return Err(Error::invalid(
                "n_excited",
                format!("must be <= n_atoms ({n_atoms}), got {n_excited}"),
            ));
        }
        Ok(Self { n_atoms, n_excited })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn n_excited(&self) -> usize {
        self.n_excited
    }
}

/// ‖J₋|N, k⟩‖² = k·(N − k + 1).
pub fn emission_strength(state: SymmetricState) -> u64 {
    let (n, k) = (state.n_atoms as u64, state.n_excited as u64);
    k * (n - k + 1)
}

fn check_brute_force(n_atoms: usize, n_excited: usize) -> Result<()> {
    if n_atoms > MAX_BRUTE_FORCE_ATOMS {
        return Err(Error::ResourceGuard(format!(
            "brute force limited to N <= {MAX_BRUTE_FORCE_ATOMS} (2^N amplitudes), got N = {n_atoms}"
        )));
    }
    SymmetricState::new(n_atoms, n_excited).map(|_| ())
}

/// Applies J₋ term by term to an amplitude vector over the 2^N product basis
/// (bit `j` set means atom `labels[j]` is excited).
fn apply_lowering(amplitudes: &[f64], n_atoms: usize) -> Vec<f64> {
    let mut out = vec![0.0; amplitudes.len()];
    for (basis, &a) in amplitudes.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for atom in 0..n_atoms {
            let bit = 1usize << atom;
            if basis & bit != 0 {
                out[basis & !bit] += a;
            }
        }
    }
    out
}

fn symmetric_amplitudes(n_atoms: usize, n_excited: usize, labels: &[usize]) -> Vec<f64> {
    let dim = 1usize << n_atoms;
    let mut amps = vec![0.0; dim];
    let mut count = 0usize;
    for config in 0..dim {
        if config.count_ones() as usize == n_excited {
            // relabel: atom j of `config` becomes atom labels[j]
            let mut basis = 0usize;
            for (j, &l) in labels.iter().enumerate() {
                if config & (1 << j) != 0 {
                    basis |= 1 << l;
                }
            }
            amps[basis] = 1.0;
            count += 1;
        }
    }
    let norm = 1.0 / (count as f64).sqrt();
    amps.iter_mut().for_each(|a| *a *= norm);
    amps
}

/// ‖J₋|ψ⟩‖² computed on the explicit 2^N state vector.
pub fn brute_force_emission_strength(n_atoms: usize, n_excited: usize) -> Result<f64> {
    let labels: Vec<usize> = (0..n_atoms).collect();
    brute_force_emission_strength_permuted(n_atoms, n_excited, &labels)
}

/// Same as [`brute_force_emission_strength`], with atom `j` of the
/// construction stored at position `labels[j]`.
pub fn brute_force_emission_strength_permuted(n_atoms: usize, n_excited: usize, labels: &[usize]) -> Result<f64> {
    check_brute_force(n_atoms, n_excited)?;
    let mut seen = vec![false; n_atoms];
    if labels.len() != n_atoms
        || labels
            .iter()
            .any(|&l| l >= n_atoms || std::mem::replace(&mut seen[l], true))
    {
        return Err(Error::invalid("labels", "must be a permutation of 0..n_atoms"));
    }
    let psi = symmetric_amplitudes(n_atoms, n_excited, labels);
    let lowered = apply_lowering(&psi, n_atoms);
    Ok(lowered.iter().map(|a| a * a).sum())
}

/// Exact rational form of the brute-force result: unnormalized integer
/// amplitudes give `(Σ amplitude², C(N, k))`, whose ratio is ‖J₋|ψ⟩‖².
pub fn brute_force_emission_strength_exact(n_atoms: usize, n_excited: usize) -> Result<(u64, u64)> {
    check_brute_force(n_atoms, n_excited)?;
    let dim = 1usize << n_atoms;
    let mut lowered = vec![0u64; dim];
    let mut norm = 0u64;
    for config in 0..dim {
        if config.count_ones() as usize != n_excited {
            continue;
        }
        norm += 1;
        for atom in 0..n_atoms {
            let bit = 1usize << atom;
            if config & bit != 0 {
                lowered[config & !bit] += 1;
            }
        }
    }
    Ok((lowered.iter().map(|a| a * a).sum(), norm))
}

/// Emission ratio of the stored-photon state to the empty-memory state
/// after the π-pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EchoSnr {
    pub n_atoms: usize,
    /// ‖J₋|ψ^{N−1}⟩‖² = 2(N−1).
    pub signal_strength: u64,
    /// ‖J₋|ψ^N⟩‖² = N.
    pub noise_strength: u64,
    /// `2(N−1)/N`, tending to 2.
    pub ratio: f64,
    /// `ratio − 1`, tending to 1.
    pub snr: f64,
}

pub fn echo_snr(n_atoms: usize) -> Result<EchoSnr> {
    if n_atoms < 2 {
        return Err(Error::Domain(format!("echo_snr needs N >= 2, got {n_atoms}")));
    }
    let signal_strength = emission_strength(SymmetricState::new(n_atoms, n_atoms - 1)?);
    let noise_strength = emission_strength(SymmetricState::new(n_atoms, n_atoms)?);
    let ratio = signal_strength as f64 / noise_strength as f64;
    Ok(EchoSnr {
        n_atoms,
        signal_strength,
        noise_strength,
        ratio,
        snr: ratio - 1.0,
    })
}
