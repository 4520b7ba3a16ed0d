use rand::{Rng, RngCore};

use super::{
    encode_qubit, otp_decrypt, otp_encrypt, sift, verify, verify_full, Axis, ChannelPolicy,
    Comparison, EveAction, Participant, Role, Verdict,
};
use crate::backend::Backend;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::sim::rng::{derive_seed, seeded};
use crate::sim::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bb84Config {
    /// Qubits transmitted per message bit.
    pub oversample_factor: usize,
    /// Extra attempts when the key comes out shorter than the message.
    pub max_retries: u32,
}

impl Default for Bb84Config {
    fn default() -> Self {
        Bb84Config {
            oversample_factor: 6,
            max_retries: 10,
        }
    }
}

/// Raw quantum phase: what each party chose and observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub sender_bits: Vec<bool>,
    pub sender_axes: Vec<Axis>,
    pub eve_actions: Vec<EveAction>,
    pub receiver_axes: Vec<Axis>,
    pub receiver_bits: Vec<bool>,
}

impl Exchange {
    pub fn len(&self) -> usize {
        self.sender_bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sender_bits.is_empty()
    }

    pub fn sifted_positions(&self) -> Vec<usize> {
        sift(&self.sender_axes, &self.receiver_axes).expect("equal lengths by construction")
    }

    fn sifted_bits(&self, positions: &[usize]) -> (BitString, BitString) {
        (
            positions.iter().map(|&i| self.sender_bits[i]).collect(),
            positions.iter().map(|&i| self.receiver_bits[i]).collect(),
        )
    }
}

/// Measures the single qubit prepared by `prep` in `axis` on the backend.
fn measure_on(backend: &dyn Backend, prep: &Circuit, axis: Axis, seed: u64) -> Result<bool> {
    let mut circuit = prep.clone();
    if axis == Axis::X {
        circuit.h(0)?;
    }
    let counts = backend.run(&circuit, 1, seed)?;
    Ok(counts.get("1") == 1)
}

/// Sends `m` qubits from sender to receiver through a channel the
/// eavesdropper taps with the given policy. Each party draws from its own
/// stream derived from `seed`; every measurement is a one-shot run of a
/// one-qubit circuit on `backend`.
pub fn exchange(m: usize, policy: ChannelPolicy, backend: &dyn Backend, seed: u64) -> Result<Exchange> {
    let mut sender = Participant::new(Role::Sender, derive_seed(seed, &[0]));
    let mut eve = Participant::new(Role::Eavesdropper, derive_seed(seed, &[1]));
    let mut receiver = Participant::new(Role::Receiver, derive_seed(seed, &[2]));
    let mut channel = seeded(derive_seed(seed, &[3]));

    sender.choose_values_and_axes(m);
    receiver.choose_axes(m);

    let mut eve_actions = Vec::with_capacity(m);
    let mut receiver_bits = Vec::with_capacity(m);
    for i in 0..m {
        let mut wire = encode_qubit(sender.bits[i], sender.axes[i]);
        let action = if eve.rng().gen_bool(policy.density()) {
            let axis = Axis::random(eve.rng());
            let bit = measure_on(backend, &wire, axis, channel.next_u64())?;
            wire = encode_qubit(bit, axis);
            eve.bits.push(bit);
            eve.axes.push(axis);
            EveAction::Measured { axis, bit }
        } else {
            EveAction::Untouched
        };
        eve_actions.push(action);
        receiver_bits.push(measure_on(backend, &wire, receiver.axes[i], channel.next_u64())?);
    }
    receiver.bits = receiver_bits;

    Ok(Exchange {
        sender_bits: sender.bits,
        sender_axes: sender.axes,
        eve_actions,
        receiver_axes: receiver.axes,
        receiver_bits: receiver.bits,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub aborted: bool,
    pub sifted: usize,
    pub published: usize,
    pub exchange: Exchange,
}

/// One exchange followed by verification, with no message transport.
/// With [`Comparison::FullKey`] any sifted length is accepted; with
/// [`Comparison::HalfKey`] fewer than two sifted bits count as not aborted.
pub fn detection_trial(
    m: usize,
    density: f64,
    backend: &dyn Backend,
    seed: u64,
    comparison: Comparison,
) -> Result<TrialOutcome> {
    let exchange = exchange(m, ChannelPolicy::new(density)?, backend, seed)?;
    let positions = exchange.sifted_positions();
    let (s, r) = exchange.sifted_bits(&positions);
    let verification = match comparison {
        Comparison::FullKey => Some(verify_full(&s, &r)?),
        Comparison::HalfKey => match verify(&s, &r) {
            Ok(v) => Some(v),
            Err(Error::KeyTooShort(_)) => None,
            Err(e) => return Err(e),
        },
    };
    Ok(TrialOutcome {
        aborted: verification
            .as_ref()
            .is_some_and(|v| v.verdict == Verdict::Aborted),
        sifted: positions.len(),
        published: verification.map_or(0, |v| v.published.len()),
        exchange,
    })
}

/// Full transcript of one protocol run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bb84Trace {
    pub seed: u64,
    pub message: BitString,
    /// Exchanges performed, including shortfall retries.
    pub attempts: u32,
    pub transmitted_count: usize,
    pub sender_bits: Vec<bool>,
    pub sender_axes: Vec<Axis>,
    pub eve_actions: Vec<EveAction>,
    pub receiver_axes: Vec<Axis>,
    pub receiver_bits: Vec<bool>,
    pub sifted_positions: Vec<usize>,
    pub published_positions: Vec<usize>,
    pub verdict: Verdict,
    /// Receiver's unpublished sifted bits, present iff secure.
    pub shared_key: Option<BitString>,
    /// Whether the sender's unpublished bits equal the receiver's. Only
    /// false when tampering slipped past verification.
    pub keys_agree: Option<bool>,
    pub ciphertext: Option<BitString>,
    pub decrypted: Option<BitString>,
}

impl Bb84Trace {
    fn from_exchange(seed: u64, message: &BitString, attempts: u32, ex: Exchange, verdict: Verdict) -> Self {
        let sifted_positions = ex.sifted_positions();
        Bb84Trace {
            seed,
            message: message.clone(),
            attempts,
            transmitted_count: ex.len(),
            sender_bits: ex.sender_bits,
            sender_axes: ex.sender_axes,
            eve_actions: ex.eve_actions,
            receiver_axes: ex.receiver_axes,
            receiver_bits: ex.receiver_bits,
            sifted_positions,
            published_positions: Vec::new(),
            verdict,
            shared_key: None,
            keys_agree: None,
            ciphertext: None,
            decrypted: None,
        }
    }

    /// Decryption reproduced the message.
    pub fn round_trip_ok(&self) -> bool {
        self.decrypted.as_ref() == Some(&self.message)
    }

    pub fn intercepted(&self) -> usize {
        self.eve_actions
            .iter()
            .filter(|a| matches!(a, EveAction::Measured { .. }))
            .count()
    }
}

/// Distributes a key with half-key verification and, when secure, sends
/// `message` under a one-time pad built from it.
///
/// `oversample_factor * message.len()` qubits are sent per attempt. If the
/// unpublished key is shorter than the message the exchange is repeated
/// with fresh randomness, at most `max_retries` times, after which the
/// verdict is [`Verdict::KeyTooShort`]. An abort ends the run immediately.
pub fn run_protocol(
    message: &BitString,
    density: f64,
    backend: &dyn Backend,
    seed: u64,
    config: Bb84Config,
) -> Result<Bb84Trace> {
    if message.is_empty() {
        return Err(Error::validation("message", "must contain at least one bit"));
    }
    if config.oversample_factor == 0 {
        return Err(Error::validation("oversample_factor", "must be at least 1"));
    }
    let policy = ChannelPolicy::new(density)?;
    let m = config.oversample_factor * message.len();
    let mut attempt_seeds = seeded(seed);

    let mut shortfall = None;
    for attempt in 1..=config.max_retries + 1 {
        let ex = exchange(m, policy, backend, attempt_seeds.next_u64())?;
        let positions = ex.sifted_positions();
        let (sender_sifted, receiver_sifted) = ex.sifted_bits(&positions);

        let verification = match verify(&sender_sifted, &receiver_sifted) {
            Ok(v) => v,
            Err(Error::KeyTooShort(_)) => {
                shortfall = Some(Bb84Trace::from_exchange(seed, message, attempt, ex, Verdict::KeyTooShort));
                continue;
            }
            Err(e) => return Err(e),
        };

        let mut trace = Bb84Trace::from_exchange(seed, message, attempt, ex, verification.verdict);
        trace.published_positions = verification.published.iter().map(|&k| positions[k]).collect();

        if verification.verdict == Verdict::Aborted {
            return Ok(trace);
        }
        if verification.remaining_key.len() < message.len() {
            trace.verdict = Verdict::KeyTooShort;
            shortfall = Some(trace);
            continue;
        }

        let published = verification.published.len();
        let sender_key: BitString = sender_sifted.bits()[published..].iter().copied().collect();
        let receiver_key = verification.remaining_key;
        let ciphertext = otp_encrypt(message, &sender_key)?;
        trace.decrypted = Some(otp_decrypt(&ciphertext, &receiver_key)?);
        trace.ciphertext = Some(ciphertext);
        trace.keys_agree = Some(sender_key == receiver_key);
        trace.shared_key = Some(receiver_key);
        return Ok(trace);
    }

    let mut trace = shortfall.expect("at least one attempt ran");
    trace.published_positions.clear();
    trace.verdict = Verdict::KeyTooShort;
    Ok(trace)
}
