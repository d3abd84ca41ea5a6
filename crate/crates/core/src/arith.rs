//! Small integer helpers.

use num_integer::Integer;

/// Exponent of `p` in `k` (`k ≠ 0`).
pub fn ord_p(k: i64, p: u32) -> u32 {
    assert!(k != 0, "ord_p(0) is undefined");
    let p = p as i64;
    let mut k = k;
    let mut e = 0;
    while k % p == 0 {
        k /= p;
        e += 1;
    }
    e
}

/// `(e, k0)` with `k = p^e k0` and `p ∤ k0`.
pub fn split_p(k: i64, p: u32) -> (u32, i64) {
    let e = ord_p(k, p);
    (e, k / (p as i64).pow(e))
}

pub fn pow_p(p: u32, e: usize) -> i64 {
    (p as i64).pow(e as u32)
}

/// Inverse of `j` modulo `m` (requires `gcd(j, m) = 1`).
pub fn inv_mod(j: i64, m: i64) -> i64 {
    let g = j.rem_euclid(m).extended_gcd(&m);
    assert!(g.gcd == 1, "{j} is not invertible mod {m}");
    g.x.rem_euclid(m)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
