//! Dense polynomials over the prime field Z/pZ, used only to build and test
//! field moduli. Coefficients are ascending and trimmed.

pub(crate) type Zp = Vec<u64>;

pub(crate) fn trim(a: &mut Zp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Zp {
    let len = a.len().max(b.len());
    let mut out: Zp = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn inv(a: u64, p: u64) -> u64 {
    crate::arith::inv_mod(a, p).expect("nonzero residue mod prime")
}

/// Remainder of `a` modulo `f` (f nonzero).
pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Zp {
    let mut r: Zp = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - df;
        for (i, &fc) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * fc % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

fn pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Zp {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Zp {
    let mut x: Zp = a.to_vec();
    let mut y: Zp = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test: `f` of degree m is irreducible iff `X^{p^m} = X mod f` and
/// `gcd(X^{p^{m/l}} - X, f) = 1` for every prime `l | m`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: Zp = vec![0, 1];
    // frob[k] = X^{p^k} mod f
    let mut frob = vec![rem(&x, f, p)];
    for k in 1..=m {
        let next = pow_mod(&frob[k - 1], p, f, p);
        frob.push(next);
    }
    if sub(&frob[m], &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for (l, _) in crate::arith::factorize(m as u64) {
        let k = m / l as usize;
        let g = gcd(&sub(&frob[k], &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[1, 1, 1], 5));
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2 over GF(2)
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[0, 1], 7));
    }
}
