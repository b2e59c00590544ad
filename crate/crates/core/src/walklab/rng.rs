//! Deterministic, order-independent randomness: every trial runs on its
//! own counter-based stream keyed by (master seed, length, trial index),
//! so results do not depend on scheduling or thread count.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// 32-byte ChaCha key from the (master, n, trial) triple.
pub fn derive_seed(master: u64, n: u64, trial: u64) -> [u8; 32] {
    let mut state = master ^ 0xA076_1D64_78BD_642F;
    let mut mix = |v: u64| {
        state ^= v.wrapping_mul(0xE703_7ED1_A0B4_28DB);
        splitmix64(&mut state)
    };
    let words = [mix(n), mix(trial), mix(n ^ (trial << 32)), mix(master)];
    let mut out = [0u8; 32];
    for (i, w) in words.iter().enumerate() {
        out[8 * i..8 * i + 8].copy_from_slice(&w.to_le_bytes());
    }
    out
}

pub fn stream(master: u64, n: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive_seed(master, n, trial))
}

/// Unbiased uniform index by rejection sampling on the raw stream; kept
/// in-house so outputs stay byte-stable across dependency upgrades.
pub fn uniform_index(rng: &mut ChaCha8Rng, len: usize) -> usize {
    assert!(len > 0);
    let bound = len as u64;
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % bound) as usize;
        }
    }
}
