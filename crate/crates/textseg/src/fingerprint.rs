//! Stable content fingerprints for reports and corpus manifests.
//!
//! Runs are only comparable when they used the same stoplist, mask, seed and
//! coefficients, so every report carries a fingerprint of its configuration.
//! FNV-1a (64-bit) is used because it is trivially portable: other
//! implementations of the same toolchain can recompute it in a few lines.

/// 64-bit FNV-1a hash of a byte slice.
pub fn fnv1a_64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// FNV-1a hash formatted as 16 lowercase hex digits.
pub fn fingerprint(bytes: &[u8]) -> String {
    format!("{:016x}", fnv1a_64(bytes))
}
