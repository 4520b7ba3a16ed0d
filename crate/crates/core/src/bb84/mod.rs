//! BB84 key distribution over simulated single-qubit channels, with an
//! intercept-resend eavesdropper of tunable density.

mod algorithm;
mod protocol;

use rand::Rng;

pub use algorithm::{format_trace, Bb84Algorithm};
pub use protocol::{
    detection_trial, exchange, run_protocol, Bb84Config, Bb84Trace, Exchange, TrialOutcome,
};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::sim::{self, Circuit, Statevector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Z,
    X,
}

impl Axis {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen::<bool>() {
            Axis::X
        } else {
            Axis::Z
        }
    }

    pub fn other(self) -> Self {
        match self {
            Axis::Z => Axis::X,
            Axis::X => Axis::Z,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Z => "Z",
            Axis::X => "X",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Sender,
    Receiver,
    Eavesdropper,
}

/// A protocol party with its own random stream.
#[derive(Debug, Clone)]
pub struct Participant {
    pub role: Role,
    pub bits: Vec<bool>,
    pub axes: Vec<Axis>,
    rng: sim::rng::SimRng,
}

impl Participant {
    pub fn new(role: Role, seed: u64) -> Self {
        Participant {
            role,
            bits: Vec::new(),
            axes: Vec::new(),
            rng: sim::rng::seeded(seed),
        }
    }

    /// Draws `m` uniform bits and `m` uniform axes.
    pub fn choose_values_and_axes(&mut self, m: usize) {
        self.bits = (0..m).map(|_| self.rng.gen()).collect();
        self.choose_axes(m);
    }

    pub fn choose_axes(&mut self, m: usize) {
        self.axes = (0..m).map(|_| Axis::random(&mut self.rng)).collect();
    }

    pub fn rng(&mut self) -> &mut sim::rng::SimRng {
        &mut self.rng
    }

    /// Bits at the given positions.
    pub fn key_at(&self, positions: &[usize]) -> BitString {
        positions.iter().map(|&i| self.bits[i]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPolicy {
    density: f64,
}

impl ChannelPolicy {
    pub fn new(interception_density: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&interception_density) {
            return Err(Error::validation(
                "density",
                format!("probability must be in [0,1], got {interception_density}"),
            ));
        }
        Ok(ChannelPolicy {
            density: interception_density,
        })
    }

    pub fn density(&self) -> f64 {
        self.density
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EveAction {
    Untouched,
    Measured { axis: Axis, bit: bool },
}

/// Position of a qubit among the four measurement cases, keyed by whether
/// sender and receiver axes agree and whether the eavesdropper used the
/// sender's axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackCase {
    /// Discarded; eavesdropper read the sender's bit with certainty.
    DiscardedEveSenderAxis,
    /// Discarded; eavesdropper used the receiver's axis and got a coin flip.
    DiscardedEveReceiverAxis,
    /// Kept; eavesdropper matched both parties and went unnoticed.
    KeptEveMatched,
    /// Kept; eavesdropper used the other axis, receiver bit is a coin flip.
    KeptEveOpposite,
}

pub fn attack_case(sender_axis: Axis, receiver_axis: Axis, eve: EveAction) -> Option<AttackCase> {
    let EveAction::Measured { axis: eve_axis, .. } = eve else {
        return None;
    };
    Some(match (sender_axis == receiver_axis, eve_axis == sender_axis) {
        (false, true) => AttackCase::DiscardedEveSenderAxis,
        (false, false) => AttackCase::DiscardedEveReceiverAxis,
        (true, true) => AttackCase::KeptEveMatched,
        (true, false) => AttackCase::KeptEveOpposite,
    })
}

/// Value-axis preparation: (0,Z) nothing, (0,X) H, (1,Z) X, (1,X) X then H.
pub fn encode_qubit(value: bool, axis: Axis) -> Circuit {
    let mut c = Circuit::new(1);
    if value {
        c.x(0).expect("qubit 0 exists");
    }
    if axis == Axis::X {
        c.h(0).expect("qubit 0 exists");
    }
    c
}

pub fn prepared_state(value: bool, axis: Axis) -> Statevector<f64> {
    sim::simulate(&encode_qubit(value, axis), 1).expect("single-qubit circuit")
}

/// Measures a single qubit in `axis` and returns the bit together with the
/// collapsed state (the observed bit re-encoded in that axis).
pub fn measure_in_axis<R: Rng + ?Sized>(
    state: &Statevector<f64>,
    axis: Axis,
    rng: &mut R,
) -> Result<(bool, Statevector<f64>)> {
    if state.num_qubits() != 1 {
        return Err(Error::validation("state", "expected a single qubit"));
    }
    let rotated = match axis {
        Axis::Z => state.clone(),
        Axis::X => sim::apply_gate(state, sim::Gate::H(0))?,
    };
    let bit = rotated.sample_index(rng) == 1;
    Ok((bit, prepared_state(bit, axis)))
}

/// Intercept-resend on one qubit: with probability `policy.density()` the
/// eavesdropper measures in a uniformly random axis and forwards the
/// collapsed state.
pub fn intercept<R: Rng + ?Sized>(
    state: &Statevector<f64>,
    policy: ChannelPolicy,
    rng: &mut R,
) -> Result<(Statevector<f64>, EveAction)> {
    if !rng.gen_bool(policy.density()) {
        return Ok((state.clone(), EveAction::Untouched));
    }
    let axis = Axis::random(rng);
    let (bit, collapsed) = measure_in_axis(state, axis, rng)?;
    Ok((collapsed, EveAction::Measured { axis, bit }))
}

/// Positions where both parties used the same axis.
pub fn sift(sender_axes: &[Axis], receiver_axes: &[Axis]) -> Result<Vec<usize>> {
    if sender_axes.len() != receiver_axes.len() {
        return Err(Error::LengthMismatch {
            left: sender_axes.len(),
            right: receiver_axes.len(),
        });
    }
    Ok(sender_axes
        .iter()
        .zip(receiver_axes)
        .enumerate()
        .filter(|(_, (a, b))| a == b)
        .map(|(i, _)| i)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Secure,
    Aborted,
    KeyTooShort,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Secure => "secure",
            Verdict::Aborted => "aborted",
            Verdict::KeyTooShort => "key_too_short",
        })
    }
}

/// How much of the sifted key is disclosed for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Comparison {
    /// The first half (rounded up) is published; the rest is the key.
    #[default]
    HalfKey,
    /// Every sifted bit is compared. Nothing is left to use as a key; this
    /// mode exists to measure detection power.
    FullKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub verdict: Verdict,
    /// Indices into the sifted sequence that were disclosed.
    pub published: Vec<usize>,
    /// Receiver's undisclosed bits.
    pub remaining_key: BitString,
}

/// Half-key check: disclose the first ⌈L/2⌉ sifted bits.
pub fn verify(sender_sifted: &BitString, receiver_sifted: &BitString) -> Result<Verification> {
    check_lengths(sender_sifted, receiver_sifted)?;
    let len = sender_sifted.len();
    if len < 2 {
        return Err(Error::KeyTooShort(len));
    }
    Ok(compare_prefix(sender_sifted, receiver_sifted, len.div_ceil(2)))
}

/// Full check: disclose every sifted bit. Accepts any length.
pub fn verify_full(sender_sifted: &BitString, receiver_sifted: &BitString) -> Result<Verification> {
    check_lengths(sender_sifted, receiver_sifted)?;
    Ok(compare_prefix(sender_sifted, receiver_sifted, sender_sifted.len()))
}

fn check_lengths(a: &BitString, b: &BitString) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

fn compare_prefix(sender: &BitString, receiver: &BitString, k: usize) -> Verification {
    let mismatch = sender.bits()[..k] != receiver.bits()[..k];
    Verification {
        verdict: if mismatch { Verdict::Aborted } else { Verdict::Secure },
        published: (0..k).collect(),
        remaining_key: receiver.bits()[k..].iter().copied().collect(),
    }
}

/// Probability that comparing all sifted bits of `n` transmitted qubits
/// reveals an eavesdropper measuring each qubit with probability `density`.
/// A single intercepted qubit is caught with probability 1/8: kept (1/2),
/// wrong eavesdropper axis (1/2), flipped (1/2).
pub fn abort_probability(n: u64, density: f64) -> f64 {
    let per_qubit = density / 8.0;
    1.0 - (1.0 - per_qubit).powf(n as f64)
}

/// One-time pad: XOR with the first `message.len()` key bits.
pub fn otp_encrypt(message: &BitString, key: &BitString) -> Result<BitString> {
    message.xor_prefix(key)
}

pub fn otp_decrypt(ciphertext: &BitString, key: &BitString) -> Result<BitString> {
    ciphertext.xor_prefix(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{rng, Gate};

    fn amps(s: &Statevector<f64>) -> Vec<(f64, f64)> {
        s.amplitudes().iter().map(|a| (a.re, a.im)).collect()
    }

    fn assert_state(s: &Statevector<f64>, want: [f64; 2]) {
        for ((re, im), w) in amps(s).into_iter().zip(want) {
            assert!((re - w).abs() < 1e-12 && im.abs() < 1e-12, "{:?} vs {want:?}", amps(s));
        }
    }

    #[test]
    fn encodings() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(encode_qubit(false, Axis::Z).gates().is_empty());
        assert_eq!(encode_qubit(false, Axis::X).gates(), &[Gate::H(0)]);
        assert_eq!(encode_qubit(true, Axis::Z).gates(), &[Gate::X(0)]);
        assert_eq!(encode_qubit(true, Axis::X).gates(), &[Gate::X(0), Gate::H(0)]);
        assert_state(&prepared_state(false, Axis::Z), [1.0, 0.0]);
        assert_state(&prepared_state(false, Axis::X), [r, r]);
        assert_state(&prepared_state(true, Axis::Z), [0.0, 1.0]);
        assert_state(&prepared_state(true, Axis::X), [r, -r]);
    }

    #[test]
    fn measuring_in_preparation_axis_is_exact() {
        let mut g = rng::seeded(1);
        for value in [false, true] {
            for axis in [Axis::Z, Axis::X] {
                for _ in 0..200 {
                    let (bit, post) = measure_in_axis(&prepared_state(value, axis), axis, &mut g).unwrap();
                    assert_eq!(bit, value);
                    assert_eq!(post, prepared_state(value, axis));
                }
            }
        }
    }

    #[test]
    fn measuring_in_other_axis_is_a_coin_flip() {
        // 3 sd of a fair-coin frequency over 1e4 trials is 0.015
        let mut g = rng::seeded(2);
        let zero = prepared_state(false, Axis::Z);
        let ones = (0..10_000)
            .filter(|_| measure_in_axis(&zero, Axis::X, &mut g).unwrap().0)
            .count();
        let f = ones as f64 / 1e4;
        assert!((f - 0.5).abs() <= 0.015, "{f}");
    }

    #[test]
    fn interception_density_extremes() {
        let mut g = rng::seeded(3);
        let s = prepared_state(true, Axis::X);
        let none = ChannelPolicy::new(0.0).unwrap();
        for _ in 0..1000 {
            let (out, action) = intercept(&s, none, &mut g).unwrap();
            assert_eq!(action, EveAction::Untouched);
            assert_eq!(out, s);
        }
        let all = ChannelPolicy::new(1.0).unwrap();
        let mut x_axis = 0;
        for _ in 0..10_000 {
            match intercept(&s, all, &mut g).unwrap().1 {
                EveAction::Measured { axis: Axis::X, .. } => x_axis += 1,
                EveAction::Measured { .. } => {}
                EveAction::Untouched => panic!("density 1 left a qubit alone"),
            }
        }
        // 4 sd is 0.02
        assert!((x_axis as f64 / 1e4 - 0.5).abs() <= 0.02);
        assert!(ChannelPolicy::new(1.5).is_err());
        assert!(ChannelPolicy::new(-0.1).is_err());
    }

    #[test]
    fn eve_in_x_scrambles_z_receiver() {
        // sender (0,Z), eve always X, receiver Z: 3 sd over 1e4 is 0.015
        let mut g = rng::seeded(4);
        let sent = prepared_state(false, Axis::Z);
        let mut ones = 0;
        for _ in 0..10_000 {
            let (_, forwarded) = measure_in_axis(&sent, Axis::X, &mut g).unwrap();
            if measure_in_axis(&forwarded, Axis::Z, &mut g).unwrap().0 {
                ones += 1;
            }
        }
        assert!((ones as f64 / 1e4 - 0.5).abs() <= 0.015);
    }

    #[test]
    fn sifting() {
        use Axis::*;
        assert_eq!(sift(&[Z, X, Z], &[Z, Z, Z]).unwrap(), vec![0, 2]);
        assert_eq!(sift(&[X, Z], &[X, Z]).unwrap(), vec![0, 1]);
        assert!(sift(&[X], &[X, Z]).is_err());
    }

    #[test]
    fn half_key_verification() {
        let a: BitString = "1011".parse().unwrap();
        let v = verify(&a, &a).unwrap();
        assert_eq!(v.verdict, Verdict::Secure);
        assert_eq!(v.published, vec![0, 1]);
        assert_eq!(v.remaining_key.to_string(), "11");

        let b: BitString = "0011".parse().unwrap();
        assert_eq!(verify(&a, &b).unwrap().verdict, Verdict::Aborted);

        // odd length publishes the larger half
        let c: BitString = "101".parse().unwrap();
        let v = verify(&c, &c).unwrap();
        assert_eq!(v.published, vec![0, 1]);
        assert_eq!(v.remaining_key.to_string(), "1");

        // a difference in the unpublished half goes unnoticed
        let d: BitString = "1010".parse().unwrap();
        assert_eq!(verify(&a, &d).unwrap().verdict, Verdict::Secure);

        let one: BitString = "1".parse().unwrap();
        assert!(matches!(verify(&one, &one), Err(Error::KeyTooShort(1))));
    }

    #[test]
    fn full_verification_sees_everything() {
        let a: BitString = "1011".parse().unwrap();
        let d: BitString = "1010".parse().unwrap();
        assert_eq!(verify_full(&a, &d).unwrap().verdict, Verdict::Aborted);
        let empty = BitString::default();
        assert_eq!(verify_full(&empty, &empty).unwrap().verdict, Verdict::Secure);
    }

    #[test]
    fn abort_probability_values() {
        assert!((abort_probability(1, 1.0) - 0.125).abs() < 1e-15);
        assert_eq!(abort_probability(0, 1.0), 0.0);
        assert!((abort_probability(16, 1.0) - (1.0 - (7.0f64 / 8.0).powi(16))).abs() < 1e-15);
        assert!((abort_probability(16, 1.0) - 0.8819).abs() < 1e-4);
        assert_eq!(abort_probability(50, 0.0), 0.0);
    }

    #[test]
    fn attack_cases() {
        use Axis::*;
        let m = |axis| EveAction::Measured { axis, bit: false };
        assert_eq!(attack_case(Z, X, m(Z)), Some(AttackCase::DiscardedEveSenderAxis));
        assert_eq!(attack_case(Z, X, m(X)), Some(AttackCase::DiscardedEveReceiverAxis));
        assert_eq!(attack_case(X, X, m(X)), Some(AttackCase::KeptEveMatched));
        assert_eq!(attack_case(X, X, m(Z)), Some(AttackCase::KeptEveOpposite));
        assert_eq!(attack_case(X, X, EveAction::Untouched), None);
    }
}
