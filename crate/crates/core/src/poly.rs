//! Dense polynomials over a prime field GF(p), little-endian coefficient vectors.
//!
//! Only what field construction needs: products, remainders, gcd and modular powers.

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result as u32
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let m = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % m;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo `m`. `m` must be nonzero with a nonzero leading coefficient.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let pm = p as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % pm;
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + pm * pm - c * mi as u64 % pm) % pm;
            }
        }
        r.pop();
    }
    trim(r.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^e mod m`.
pub(crate) fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Rabin's test: a monic `m` of degree `f` is irreducible over GF(p) iff
/// `gcd(X^{p^i} - X, m) = 1` for every `1 <= i <= f/2`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let f = m.len() - 1;
    if f <= 1 {
        return f == 1;
    }
    if m[0] == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut x_pow = x.clone();
    for _ in 1..=f / 2 {
        x_pow = pow_mod(&x_pow, p as u64, m, p);
        let g = gcd(&sub(&x_pow, &x, p), m, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_of_small_quadratics() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (X+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3)); // X^2+1 over GF(3)
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
    }

    #[test]
    fn quartic_with_no_roots_can_be_reducible() {
        // (X^2+X+1)^2 = X^4+X^2+1 over GF(2): no root, still reducible.
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn remainder_matches_hand_reduction() {
        // X^3 mod X^2+X+1 over GF(2) = 1
        assert_eq!(rem(&[0, 0, 0, 1], &[1, 1, 1], 2), vec![1]);
        assert_eq!(pow_mod(&[0, 1], 4, &[1, 1, 1], 2), vec![0, 1]);
    }
}
