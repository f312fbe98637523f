//! Small integer helpers.

use num_integer::Integer;

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> usize {
    factorize(n).len()
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Units of Z/mZ in ascending order.
pub fn units(m: u64) -> Vec<u64> {
    (1..m).filter(|&d| d.gcd(&m) == 1).collect()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// True when every divisor of `m` is congruent to 1 mod 3.
pub fn is_type_iii_modulus(m: u64) -> bool {
    m >= 2 && factorize(m).iter().all(|&(p, _)| p % 3 == 1)
}

/// `k = (m - 1) / 6` for a modulus `m ≡ 1 (mod 6)`.
pub fn k_of(m: u64) -> Option<u64> {
    (m >= 7 && m % 6 == 1).then(|| (m - 1) / 6)
}

/// Image in Z/mZ of the integers in `[a, b]`, ascending and deduplicated.
pub fn interval_mod(a: i64, b: i64, m: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (a..=b).map(|x| x.rem_euclid(m as i64) as u64).collect();
    v.sort_unstable();
    v.dedup();
    v
}
