//! Elementary integer arithmetic: primality, factoring, square roots mod p,
//! and the Kronecker symbol.
//!
//! Everything is deterministic. Factoring uses trial division below 10^6
//! and Brent's cycle-finding variant of Pollard rho above it, which is ample
//! for the 64-bit norms this crate meets.

/// Trial-division ceiling used before switching to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// One Brent-rho split attempt; n must be odd, composite, > 1.
fn brent_rho(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y: u64 = 2;
    let mut r: u64 = 1;
    let mut q: u64 = 1;
    let mut g: u64 = 1;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k: u64 = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = 128.min(r - k);
            for _ in 0..lim {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y).max(1), n);
            }
            g = gcd_u64(q, n);
            k += lim;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys).max(1), n);
            if g > 1 {
                break;
            }
        }
    }
    if g > 1 && g < n {
        Some(g)
    } else {
        None
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    for c in 1..64 {
        if let Some(d) = brent_rho(n, c) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
    unreachable!("rho failed to split composite {}", n);
}

/// Prime factorization of n as sorted (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_BOUND && p.saturating_mul(p) <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > 1 {
        if n <= TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND {
            // Remainder has no factor below the trial bound, so it is prime.
            primes.push(n);
        } else {
            factor_into(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((lp, e)) if *lp == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

pub fn is_squarefree_u64(n: u64) -> bool {
    n != 0 && factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
/// Returns the smaller of the two roots, or None if `a` is a non-residue.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    assert!(p % 2 == 1 && is_prime_u64(p), "odd prime required");
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        // Tonelli-Shanks.
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(root.min(p - root))
}

/// Kronecker symbol (a/n), the fully extended Jacobi symbol.
pub fn kronecker(mut a: i64, mut n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut result: i32 = 1;
    // Strip 2s from n: (a/2) depends on a mod 8.
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        result *= match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
        if result == 0 {
            return 0;
        }
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Jacobi loop for odd n > 0.
    a = a.rem_euclid(n);
    while a != 0 {
        let mut v = 0;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            match n.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        // Quadratic reciprocity for odd positive a, n.
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        let t = n.rem_euclid(a);
        n = a;
        a = t;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Integer square root for u64.
pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> =
            (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn primality_against_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "disagree at {}", n);
        }
    }

    #[test]
    fn factor_known() {
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(2), vec![(2, 1)]);
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(9949), vec![(9949, 1)]);
        // Semiprime beyond the trial bound exercises rho.
        let p: u64 = 1_000_003;
        let q: u64 = 1_000_033;
        assert_eq!(factor_u64(p * q), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn factor_reconstructs() {
        for n in 1..2000u64 {
            let prod: u64 = factor_u64(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn sqrt_mod_small_primes() {
        for &p in &[3u64, 5, 7, 11, 13, 17, 101, 997, 65537] {
            for a in 0..p.min(200) {
                let brute = (0..p).find(|&x| mul_mod(x, x, p) == a % p);
                let fast = sqrt_mod_prime(a, p);
                match (brute, fast) {
                    (None, None) => {}
                    (Some(_), Some(r)) => {
                        assert_eq!(mul_mod(r, r, p), a % p, "bad root mod {}", p)
                    }
                    _ => panic!("solvability disagrees for {} mod {}", a, p),
                }
            }
        }
    }

    #[test]
    fn kronecker_matches_legendre() {
        // Against Euler's criterion at odd primes.
        for &p in &[3i64, 5, 7, 11, 13, 17, 19, 23, 101] {
            for a in -30..30i64 {
                let euler = pow_mod(a.rem_euclid(p) as u64, (p as u64 - 1) / 2, p as u64);
                let expect = if a.rem_euclid(p) == 0 {
                    0
                } else if euler == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expect, "({}/{})", a, p);
            }
        }
    }

    #[test]
    fn kronecker_at_two() {
        // (a/2) = 0, 1, -1 according to a mod 8.
        for a in -50..50i64 {
            let expect = if a % 2 == 0 {
                0
            } else {
                match a.rem_euclid(8) {
                    1 | 7 => 1,
                    _ => -1,
                }
            };
            assert_eq!(kronecker(a, 2), expect, "({}/2)", a);
        }
    }

    #[test]
    fn kronecker_multiplicative() {
        for a in -20..20i64 {
            for n in 1..30i64 {
                for m in 1..20i64 {
                    assert_eq!(
                        kronecker(a, n * m),
                        kronecker(a, n) * kronecker(a, m),
                        "a={} n={} m={}",
                        a,
                        n,
                        m
                    );
                }
            }
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..10_000u64 {
            let r = isqrt_u64(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
