use alloc::vec;
use core::str::FromStr;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::statevector::PureState;
use crate::{Error, Result};

/// Named symmetric states with known GME.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateFamily {
    /// `(|0…0⟩ + |1…1⟩)/√2`.
    Ghz,
    /// Equal superposition of all weight-1 basis states.
    W,
    /// Equal superposition of all weight-(n−1) basis states.
    WTilde,
    /// `√s|GHZ⟩ + √(1−s)|W⟩`.
    GhzW,
    /// `√s|W⟩ + √(1−s)|W̃⟩`.
    WWTilde,
}

impl FromStr for StateFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz" => Ok(Self::Ghz),
            "w" => Ok(Self::W),
            "wtilde" | "w~" => Ok(Self::WTilde),
            "ghzw" => Ok(Self::GhzW),
            "wwtilde" | "ww~" => Ok(Self::WWTilde),
            _ => Err(Error::InvalidArgument("unknown state family")),
        }
    }
}

impl StateFamily {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ghz => "GHZ",
            Self::W => "W",
            Self::WTilde => "Wtilde",
            Self::GhzW => "GHZW",
            Self::WWTilde => "WWtilde",
        }
    }

    pub fn is_superposition(self) -> bool {
        matches!(self, Self::GhzW | Self::WWTilde)
    }
}

fn weight_state(n: usize, weights: &[usize]) -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (x, a) in amps.iter_mut().enumerate() {
        if weights.contains(&(x.count_ones() as usize)) {
            *a = Complex64::new(1.0, 0.0);
        }
    }
    PureState::from_unnormalized(amps).expect("nonempty weight class")
}

fn superpose(a: &PureState, b: &PureState, s: f64) -> Result<PureState> {
    let (wa, wb) = (s.sqrt(), (1.0 - s).sqrt());
    let amps = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x * wa + y * wb).collect();
    PureState::from_unnormalized(amps)
}

/// Builds a named state. `s ∈ [0, 1]` is required for the superposition
/// families and ignored otherwise.
///
/// For `n = 2` the W and W̃ states coincide; `WWtilde` is then renormalized
/// to `|W⟩`.
pub fn make_named_state(family: StateFamily, n: usize, s: Option<f64>) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidQubitCount { n, reason: "named states need at least 2 qubits" });
    }
    if n > crate::statevector::MAX_QUBITS {
        return Err(Error::InvalidQubitCount { n, reason: "too many qubits for a dense statevector" });
    }
    let ghz = || {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        amps[(1 << n) - 1] = Complex64::new(1.0, 0.0);
        PureState::from_unnormalized(amps).expect("nonzero")
    };
    let w = || weight_state(n, &[1]);
    let w_tilde = || weight_state(n, &[n - 1]);

    let weight = || -> Result<f64> {
        match s {
            Some(s) if (0.0..=1.0).contains(&s) => Ok(s),
            Some(_) => Err(Error::InvalidArgument("superposition weight s must lie in [0, 1]")),
            None => Err(Error::InvalidArgument("superposition family requires s")),
        }
    };

    match family {
        StateFamily::Ghz => Ok(ghz()),
        StateFamily::W => Ok(w()),
        StateFamily::WTilde => Ok(w_tilde()),
        StateFamily::GhzW => superpose(&ghz(), &w(), weight()?),
        StateFamily::WWTilde => {
            let (a, b) = (w(), w_tilde());
            debug_assert!(n == 2 || a.inner(&b).map(|o| o.norm() < 1e-12).unwrap_or(false));
            superpose(&a, &b, weight()?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ghz2() {
        let g = make_named_state(StateFamily::Ghz, 2, None).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        for (a, e) in g.amplitudes().iter().zip([h, 0.0, 0.0, h]) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn ghzw_endpoint_is_ghz() {
        for n in 2..8 {
            let a = make_named_state(StateFamily::GhzW, n, Some(1.0)).unwrap();
            let b = make_named_state(StateFamily::Ghz, n, None).unwrap();
            assert_abs_diff_eq!(a.inner(&b).unwrap().norm(), 1.0, epsilon = 1e-14);
            let a = make_named_state(StateFamily::GhzW, n, Some(0.0)).unwrap();
            let w = make_named_state(StateFamily::W, n, None).unwrap();
            assert_abs_diff_eq!(a.inner(&w).unwrap().norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn w3_amplitudes() {
        let w = make_named_state(StateFamily::W, 3, None).unwrap();
        for (x, a) in w.amplitudes().iter().enumerate() {
            let e = if x.count_ones() == 1 { 1.0 / 3f64.sqrt() } else { 0.0 };
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
        }
        let wt = make_named_state(StateFamily::WTilde, 3, None).unwrap();
        assert_abs_diff_eq!(wt.amplitudes()[0b110].re, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(w.inner(&wt).unwrap().norm(), 0.0);
    }

    #[test]
    fn superpositions_normalized() {
        for fam in [StateFamily::GhzW, StateFamily::WWTilde] {
            for n in 2..7 {
                let st = make_named_state(fam, n, Some(0.3)).unwrap();
                assert_abs_diff_eq!(st.norm_sqr(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn argument_errors() {
        assert!(make_named_state(StateFamily::GhzW, 3, None).is_err());
        assert!(make_named_state(StateFamily::GhzW, 3, Some(1.2)).is_err());
        assert!(make_named_state(StateFamily::Ghz, 1, None).is_err());
        assert!("XYZ".parse::<StateFamily>().is_err());
        assert_eq!("wwtilde".parse::<StateFamily>().unwrap(), StateFamily::WWTilde);
    }
}
