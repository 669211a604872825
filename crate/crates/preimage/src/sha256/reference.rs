//! Software reference SHA-256, restricted to single-block messages, with
//! per-round instrumentation.
//!
//! This is the verification oracle for the reversible circuit: an
//! independent, straight-line implementation of the compression function.
//! Its own correctness is anchored in tests against fixed known digests and
//! a third-party implementation.

use super::{IV, K};

/// Pad a message of at most 55 bytes into one 512-bit block.
pub fn pad_single_block(msg: &[u8]) -> [u8; 64] {
    assert!(msg.len() <= 55, "message must fit a single padded block");
    let mut block = [0u8; 64];
    block[..msg.len()].copy_from_slice(msg);
    block[msg.len()] = 0x80;
    let bit_len = (msg.len() as u64) * 8;
    block[56..].copy_from_slice(&bit_len.to_be_bytes());
    block
}

/// The 16 big-endian message words of a block.
pub fn block_words(block: &[u8; 64]) -> [u32; 16] {
    let mut w = [0u32; 16];
    for (i, chunk) in block.chunks_exact(4).enumerate() {
        w[i] = u32::from_be_bytes(chunk.try_into().unwrap());
    }
    w
}

fn small_sigma0(x: u32) -> u32 {
    x.rotate_right(7) ^ x.rotate_right(18) ^ (x >> 3)
}

fn small_sigma1(x: u32) -> u32 {
    x.rotate_right(17) ^ x.rotate_right(19) ^ (x >> 10)
}

fn big_sigma0(x: u32) -> u32 {
    x.rotate_right(2) ^ x.rotate_right(13) ^ x.rotate_right(22)
}

fn big_sigma1(x: u32) -> u32 {
    x.rotate_right(6) ^ x.rotate_right(11) ^ x.rotate_right(25)
}

fn ch(e: u32, f: u32, g: u32) -> u32 {
    (e & f) ^ (!e & g)
}

fn maj(a: u32, b: u32, c: u32) -> u32 {
    (a & b) ^ (a & c) ^ (b & c)
}

/// Expand a block into the 64-word message schedule.
pub fn schedule(block: &[u8; 64]) -> [u32; 64] {
    let mut w = [0u32; 64];
    w[..16].copy_from_slice(&block_words(block));
    for i in 16..64 {
        w[i] = small_sigma1(w[i - 2])
            .wrapping_add(w[i - 7])
            .wrapping_add(small_sigma0(w[i - 15]))
            .wrapping_add(w[i - 16]);
    }
    w
}

/// Working variables (a..h) before each round: entry `i` is the state as
/// round `i` begins, entry 64 the state after the last round.
pub fn compression_states(block: &[u8; 64]) -> [[u32; 8]; 65] {
    let w = schedule(block);
    let mut states = [[0u32; 8]; 65];
    let mut v = IV;
    states[0] = v;
    for i in 0..64 {
        let t1 = v[7]
            .wrapping_add(big_sigma1(v[4]))
            .wrapping_add(ch(v[4], v[5], v[6]))
            .wrapping_add(K[i])
            .wrapping_add(w[i]);
        let t2 = big_sigma0(v[0]).wrapping_add(maj(v[0], v[1], v[2]));
        v = [
            t1.wrapping_add(t2),
            v[0],
            v[1],
            v[2],
            v[3].wrapping_add(t1),
            v[4],
            v[5],
            v[6],
        ];
        states[i + 1] = v;
    }
    states
}

/// Digest of a message that fits a single padded block.
pub fn digest_single_block(msg: &[u8]) -> [u8; 32] {
    let block = pad_single_block(msg);
    let end = compression_states(&block)[64];
    let mut out = [0u8; 32];
    for i in 0..8 {
        let word = IV[i].wrapping_add(end[i]);
        out[4 * i..4 * i + 4].copy_from_slice(&word.to_be_bytes());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use sha2::{Digest, Sha256};

    #[test]
    fn digest_abc_matches_fixed_vector() {
        assert_eq!(
            hex::encode(digest_single_block(b"abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn digest_empty_matches_fixed_vector() {
        assert_eq!(
            hex::encode(digest_single_block(b"")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn digest_matches_third_party_implementation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for len in [0usize, 1, 31, 32, 55] {
            for _ in 0..20 {
                let msg: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
                let ours = digest_single_block(&msg);
                let theirs = Sha256::digest(&msg);
                assert_eq!(ours.as_slice(), theirs.as_slice(), "len {len}");
            }
        }
    }

    #[test]
    fn schedule_recurrence_spot_check() {
        let block = pad_single_block(b"abc");
        let w = schedule(&block);
        for i in 16..64 {
            let expect = small_sigma1(w[i - 2])
                .wrapping_add(w[i - 7])
                .wrapping_add(small_sigma0(w[i - 15]))
                .wrapping_add(w[i - 16]);
            assert_eq!(w[i], expect);
        }
        // First scheduled word of the "abc" block: w16 = σ1(w14)+w9+σ0(w1)+w0.
        assert_eq!(w[0], 0x61626380);
        assert_eq!(w[16], small_sigma0(w[1]).wrapping_add(w[0]));
    }

    #[test]
    fn compression_states_end_in_reference_digest() {
        let msg = b"compression trace";
        let block = pad_single_block(msg);
        let states = compression_states(&block);
        assert_eq!(states[0], IV);
        let mut out = [0u8; 32];
        for i in 0..8 {
            out[4 * i..4 * i + 4]
                .copy_from_slice(&IV[i].wrapping_add(states[64][i]).to_be_bytes());
        }
        assert_eq!(out.as_slice(), Sha256::digest(msg).as_slice());
    }

    #[test]
    fn padding_layout() {
        let block = pad_single_block(&[0xaa; 32]);
        assert_eq!(block[31], 0xaa);
        assert_eq!(block[32], 0x80);
        assert!(block[33..56].iter().all(|&b| b == 0));
        assert_eq!(&block[56..], &256u64.to_be_bytes());
    }
}
