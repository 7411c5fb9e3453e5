//! Arithmetic modulo the Mersenne prime 2^61 - 1.

pub const MODULUS: u64 = (1 << 61) - 1;

#[inline]
pub fn reduce(x: u128) -> u64 {
    // 2^61 ≡ 1, so fold the high bits back in twice.
    let lo = (x as u64) & MODULUS;
    let hi = (x >> 61) as u64;
    let s = lo + (hi & MODULUS) + (hi >> 61);
    let s = (s & MODULUS) + (s >> 61);
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero.
pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0 && a < MODULUS);
    pow(a, MODULUS - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(mul(MODULUS - 1, MODULUS - 1), 1);
        assert_eq!(add(MODULUS - 1, 1), 0);
        assert_eq!(sub(0, 1), MODULUS - 1);
        assert_eq!(mul(inv(3), 3), 1);
    }

    proptest! {
        #[test]
        fn mul_matches_u128(a in 0..MODULUS, b in 0..MODULUS) {
            prop_assert_eq!(mul(a, b) as u128, (a as u128 * b as u128) % MODULUS as u128);
        }

        #[test]
        fn inverse_roundtrip(a in 1..MODULUS) {
            prop_assert_eq!(mul(a, inv(a)), 1);
        }
    }
}
