//! Named random sub-streams derived from a single seed.
//!
//! A stream is identified by (seed, tag, index). The derivation mixes the
//! three through splitmix64 so streams for different workers, families or
//! instances never depend on each other's consumption.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    let mut s = seed;
    let a = splitmix64(&mut s);
    let mut t = a ^ fnv1a(tag);
    let b = splitmix64(&mut t);
    let mut u = b ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    splitmix64(&mut u)
}

pub fn stream(seed: u64, tag: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tag, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for state 0 from the reference implementation
        let mut s = 0u64;
        assert_eq!(splitmix64(&mut s), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(&mut s), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = stream(7, "slot", 3).sample_iter(rand::distributions::Standard).take(4).collect();
        let b: Vec<u32> = stream(7, "slot", 3).sample_iter(rand::distributions::Standard).take(4).collect();
        let c: Vec<u32> = stream(7, "slot", 4).sample_iter(rand::distributions::Standard).take(4).collect();
        let d: Vec<u32> = stream(7, "hint", 3).sample_iter(rand::distributions::Standard).take(4).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }
}
