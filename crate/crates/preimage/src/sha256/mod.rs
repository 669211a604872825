//! SHA-256: round constants, software reference oracle, reversible circuit
//! builder, and the end-to-end verification harness.

pub mod builder;
pub mod reference;

pub use builder::{
    build_adder, build_ch, build_maj, build_round, build_sha256, build_sigma, build_stretch,
    Sha256Layout, SigmaKind,
};

/// Round constants: fractional parts of the cube roots of the first 64 primes.
pub const K: [u32; 64] = [
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2,
];

/// Initial hash value: fractional parts of the square roots of the first
/// 8 primes.
pub const IV: [u32; 8] = [
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab,
    0x5be0cd19,
];

/// Outcome of checking one message through the reversible circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sha256Verify {
    pub pass: bool,
    pub digest: [u8; 32],
    pub expected: [u8; 32],
    /// Index of the first differing 32-bit digest word, when `pass` is false.
    pub first_diff_word: Option<usize>,
    /// All ancilla wires returned to zero at circuit end.
    pub ancillas_clean: bool,
}

/// Run the reversible SHA-256 circuit on each message (at most 55 bytes, so
/// padding fits one 512-bit block) and compare digests against the software
/// reference.
///
/// The harness prepares the initial bit state (padded message words, initial
/// hash value, first round constant) and performs the final chaining
/// addition on the extracted register values, mirroring how the circuit is
/// costed: state preparation and the closing modular additions are not
/// circuit gates.
pub fn verify_sha256<M: AsRef<[u8]>>(messages: &[M]) -> Vec<Sha256Verify> {
    let (circuit, layout) = build_sha256();
    messages
        .iter()
        .map(|m| verify_one(&circuit, &layout, m.as_ref()))
        .collect()
}

fn verify_one(
    circuit: &crate::circuit::Circuit,
    layout: &Sha256Layout,
    msg: &[u8],
) -> Sha256Verify {
    use crate::sim::{run_in_place, BitState};

    let block = reference::pad_single_block(msg);
    let mut state = BitState::zeros(layout.width() as usize);
    for (i, word) in reference::block_words(&block).iter().enumerate() {
        state.set_u32(layout.w_word(i), *word);
    }
    for (i, iv) in IV.iter().enumerate() {
        state.set_u32(layout.state_word(i), *iv);
    }
    state.set_u32(layout.k(), K[0]);

    run_in_place(circuit, &mut state).expect("built circuit is classical and well-formed");

    let mut digest = [0u8; 32];
    for i in 0..8 {
        // Final physical register i holds working variable i after 64 rounds
        // (the renaming cycle has period 8). Davies-Meyer chaining addition.
        let word = IV[i].wrapping_add(state.get_u32(layout.state_word(i)));
        digest[4 * i..4 * i + 4].copy_from_slice(&word.to_be_bytes());
    }
    let expected = reference::digest_single_block(msg);

    let ancillas_clean = state.range_is_zero(layout.s(), 32)
        && state.range_is_zero(layout.x1(), 32)
        && state.range_is_zero(layout.t2(), 32)
        && state.range_is_zero(layout.carry(), 1);

    let first_diff_word = (0..8).find(|&i| digest[4 * i..4 * i + 4] != expected[4 * i..4 * i + 4]);
    Sha256Verify {
        pass: first_diff_word.is_none() && ancillas_clean,
        digest,
        expected,
        first_diff_word,
        ancillas_clean,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_integer::Roots;

    fn first_primes(n: usize) -> Vec<u64> {
        let mut primes = Vec::new();
        let mut cand = 2u64;
        while primes.len() < n {
            if primes.iter().all(|&p| cand % p != 0) {
                primes.push(cand);
            }
            cand += 1;
        }
        primes
    }

    #[test]
    fn k_table_matches_cube_root_fractions_of_primes() {
        for (i, &p) in first_primes(64).iter().enumerate() {
            // floor(cbrt(p) * 2^32) mod 2^32, via exact integer cube root.
            let scaled = BigUint::from(p) << 96u32;
            let root = scaled.cbrt();
            let frac: BigUint = root & BigUint::from(u32::MAX);
            assert_eq!(
                frac,
                BigUint::from(K[i]),
                "round constant {i} (prime {p})"
            );
        }
    }

    #[test]
    fn iv_table_matches_square_root_fractions_of_primes() {
        for (i, &p) in first_primes(8).iter().enumerate() {
            let scaled = BigUint::from(p) << 64u32;
            let root = scaled.sqrt();
            let frac: BigUint = root & BigUint::from(u32::MAX);
            assert_eq!(frac, BigUint::from(IV[i]), "initial value {i} (prime {p})");
        }
    }
}
