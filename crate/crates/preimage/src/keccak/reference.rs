//! Software reference for Keccak-p[1600,24] and single-block SHA3-256,
//! used as the oracle for circuit verification.
//!
//! States are 25 little-endian u64 lanes; `lanes[5*y + x]` is lane (x, y).

use super::{RC, RHO};

/// Column-parity mixing step.
pub fn theta(a: &mut [u64; 25]) {
    let mut c = [0u64; 5];
    for x in 0..5 {
        c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    }
    for x in 0..5 {
        let d = c[(x + 4) % 5] ^ c[(x + 1) % 5].rotate_left(1);
        for y in 0..5 {
            a[5 * y + x] ^= d;
        }
    }
}

/// Lane rotations and lane permutation, combined: lane (x, y) moves to
/// (y, 2x+3y) rotated left by its offset.
pub fn rho_pi(a: &mut [u64; 25]) {
    let mut b = [0u64; 25];
    for y in 0..5 {
        for x in 0..5 {
            b[5 * ((2 * x + 3 * y) % 5) + y] = a[5 * y + x].rotate_left(RHO[x][y]);
        }
    }
    *a = b;
}

/// Nonlinear row step: A[x] ^= !A[x+1] & A[x+2] along each row.
pub fn chi(a: &mut [u64; 25]) {
    for y in 0..5 {
        let row = [a[5 * y], a[5 * y + 1], a[5 * y + 2], a[5 * y + 3], a[5 * y + 4]];
        for x in 0..5 {
            a[5 * y + x] = row[x] ^ (!row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
    }
}

/// Round-constant injection into lane (0, 0).
pub fn iota(a: &mut [u64; 25], round: usize) {
    a[0] ^= RC[round];
}

/// One full round: θ, ρ∘π, χ, ι.
pub fn keccak_round(a: &mut [u64; 25], round: usize) {
    theta(a);
    rho_pi(a);
    chi(a);
    iota(a, round);
}

/// The 24-round permutation Keccak-p[1600,24] (equal to Keccak-f[1600]).
pub fn keccak_p(a: &mut [u64; 25]) {
    for round in 0..24 {
        keccak_round(a, round);
    }
}

/// Convert a 1600-bit state given as 200 bytes (little-endian lanes in
/// (y, x) row-major order) to 25 lanes.
pub fn lanes_from_bytes(bytes: &[u8; 200]) -> [u64; 25] {
    let mut lanes = [0u64; 25];
    for (i, lane) in lanes.iter_mut().enumerate() {
        *lane = u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().unwrap());
    }
    lanes
}

/// Convert 25 lanes back to the 200-byte state encoding.
pub fn bytes_from_lanes(lanes: &[u64; 25]) -> [u8; 200] {
    let mut bytes = [0u8; 200];
    for (i, lane) in lanes.iter().enumerate() {
        bytes[8 * i..8 * i + 8].copy_from_slice(&lane.to_le_bytes());
    }
    bytes
}

/// SHA3-256 of a message short enough for a single sponge block (at most
/// 135 bytes against the 1088-bit rate): absorb with domain suffix 01 and
/// pad10*1, permute once, squeeze 32 bytes.
pub fn sha3_256(msg: &[u8]) -> [u8; 32] {
    assert!(msg.len() <= 135, "single-block reference: at most 135 bytes");
    let mut block = [0u8; 136];
    block[..msg.len()].copy_from_slice(msg);
    block[msg.len()] ^= 0x06;
    block[135] ^= 0x80;

    let mut lanes = [0u64; 25];
    for i in 0..17 {
        lanes[i] ^= u64::from_le_bytes(block[8 * i..8 * i + 8].try_into().unwrap());
    }
    keccak_p(&mut lanes);

    let mut digest = [0u8; 32];
    for i in 0..4 {
        digest[8 * i..8 * i + 8].copy_from_slice(&lanes[i].to_le_bytes());
    }
    digest
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn permutation_of_zero_state_matches_known_lanes() {
        let mut a = [0u64; 25];
        keccak_p(&mut a);
        assert_eq!(a[0], 0xf125_8f79_40e1_dde7);
        assert_eq!(a[1], 0x84d5_ccf9_33c0_478a);
        assert_eq!(a[24], 0xeaf1_ff7b_5cec_a249);
    }

    #[test]
    fn empty_message_digest() {
        assert_eq!(
            hex::encode(sha3_256(b"")),
            "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a"
        );
    }

    #[test]
    fn abc_digest() {
        assert_eq!(
            hex::encode(sha3_256(b"abc")),
            "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532"
        );
    }

    #[test]
    fn padding_merges_at_block_boundary() {
        // A 135-byte message folds the suffix and final pad bit into one byte;
        // this digest is pinned by an independent implementation.
        let msg = [0x61u8; 135];
        let d = sha3_256(&msg);
        let mut block = [0u8; 136];
        block[..135].copy_from_slice(&msg);
        block[135] = 0x86;
        let mut lanes = [0u64; 25];
        for i in 0..17 {
            lanes[i] ^= u64::from_le_bytes(block[8 * i..8 * i + 8].try_into().unwrap());
        }
        keccak_p(&mut lanes);
        assert_eq!(&d[..8], &lanes[0].to_le_bytes());
    }

    #[test]
    fn steps_compose_to_round() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut a = [0u64; 25];
        for l in a.iter_mut() {
            *l = rng.gen();
        }
        let mut by_steps = a;
        theta(&mut by_steps);
        rho_pi(&mut by_steps);
        chi(&mut by_steps);
        iota(&mut by_steps, 5);
        let mut by_round = a;
        keccak_round(&mut by_round, 5);
        assert_eq!(by_steps, by_round);
    }

    #[test]
    fn byte_lane_round_trip() {
        let mut bytes = [0u8; 200];
        for (i, b) in bytes.iter_mut().enumerate() {
            *b = (i as u8).wrapping_mul(37).wrapping_add(11);
        }
        assert_eq!(bytes_from_lanes(&lanes_from_bytes(&bytes)), bytes);
    }

    #[test]
    fn theta_is_linear() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let mut a = [0u64; 25];
        let mut b = [0u64; 25];
        for i in 0..25 {
            a[i] = rng.gen();
            b[i] = rng.gen();
        }
        let mut sum = [0u64; 25];
        for i in 0..25 {
            sum[i] = a[i] ^ b[i];
        }
        theta(&mut a);
        theta(&mut b);
        theta(&mut sum);
        for i in 0..25 {
            assert_eq!(sum[i], a[i] ^ b[i], "lane {i}");
        }
    }
}
