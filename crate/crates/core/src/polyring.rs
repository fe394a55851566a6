//! Dense univariate polynomials over a [`Field`] and the quotient rings
//! `R_{n,λ} = F_q[X]/<X^n - λ>`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Embedding, Field, FieldElement};

/// Polynomial with ascending raw coefficients; the zero polynomial has none.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}]({})", self.field, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        for c in coeffs.iter_mut() {
            *c %= field.size();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![1])
    }

    pub fn constant(field: &Field, c: u64) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(field: &Field, c: u64, k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// `X^n - λ`.
    pub fn x_pow_minus(field: &Field, n: usize, lambda: u64) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = field.add(coeffs[0], field.neg(lambda));
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn arith(&self, other: &Poly, op: PolyOp) -> Result<Poly> {
        self.check(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other),
            PolyOp::Sub => self.sub_unchecked(other),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, PolyOp::Add)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, PolyOp::Sub)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, PolyOp::Mul)
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub(crate) fn sub_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.neg(a)).collect();
        Poly::new(&self.field, coeffs)
    }

    /// `X^k · self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, coeffs)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Euclidean division `self = q·b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check(b)?;
        let f = &self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(b.lead()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![0u64; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c == 0 {
                continue;
            }
            q[top - db] = c;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                let k = top - db + i;
                r[k] = f.sub(r[k], f.mul(c, bc));
            }
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// True when `b` divides `self` exactly.
    pub fn divisible_by(&self, b: &Poly) -> Result<bool> {
        Ok(self.rem(b)?.is_zero())
    }

    /// Evaluates at `x`, which may lie in an extension of the coefficient
    /// field; coefficients are embedded first.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let emb = Embedding::new(&self.field, x.field()).map_err(|_| Error::FieldMismatch)?;
        Ok(x.field().element(self.eval_embedded(&emb, x.value())))
    }

    pub(crate) fn eval_embedded(&self, emb: &Embedding, x: u64) -> u64 {
        let big = emb.sup();
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| big.add(big.mul(acc, x), emb.embed_raw(c)))
    }

    /// Coefficients as element strings (`0` / `g^k`), ascending.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|&c| self.field.format_log(c))
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coeff = self.field.format_log(c);
            terms.push(match (i, c) {
                (0, _) => coeff,
                (_, 1) if i == 1 => "X".to_string(),
                (_, 1) => format!("X^{i}"),
                (1, _) => format!("{coeff}*X"),
                _ => format!("{coeff}*X^{i}"),
            });
        }
        f.write_str(&terms.join(" + "))
    }
}

/// Monic gcd by Euclid's algorithm.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Extended Euclid: returns `(g, u, v)` with `g = u·a + v·b` and `g` monic.
pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    a.check(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (Poly::one(field), Poly::zero(field));
    let (mut v0, mut v1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let u2 = u0.sub_unchecked(&q.mul_unchecked(&u1));
        let v2 = v0.sub_unchecked(&q.mul_unchecked(&v1));
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, u2);
        (v0, v1) = (v1, v2);
    }
    let inv = field.inv(r0.lead()).expect("nonzero gcd");
    Ok((r0.scale(inv), u0.scale(inv), v0.scale(inv)))
}

/// The ring `F[X]/<X^n - λ>`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientRing {
    field: Field,
    n: usize,
    lambda: u64,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R_{{{},{}}} over {:?}",
            self.n,
            self.field.format_log(self.lambda),
            self.field
        )
    }
}

impl QuotientRing {
    pub fn new(field: &Field, n: usize, lambda: u64) -> QuotientRing {
        assert!(n >= 1, "ring length must be positive");
        QuotientRing {
            field: field.clone(),
            n,
            lambda: lambda % field.size(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn modulus(&self) -> Poly {
        Poly::x_pow_minus(&self.field, self.n, self.lambda)
    }

    /// Reduces an arbitrary polynomial into the ring.
    pub fn elem(&self, poly: &Poly) -> Result<QuotientElem> {
        if poly.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut rep = vec![0u64; self.n];
        // X^{kn + j} = λ^k X^j
        let mut lambda_pow = 1u64;
        for (block, chunk) in poly.coeffs().chunks(self.n).enumerate() {
            if block > 0 {
                lambda_pow = f.mul(lambda_pow, self.lambda);
            }
            for (j, &c) in chunk.iter().enumerate() {
                rep[j] = f.add(rep[j], f.mul(c, lambda_pow));
            }
        }
        Ok(QuotientElem {
            ring: self.clone(),
            rep: Poly::new(f, rep),
        })
    }

    /// Element from a length-n word `(a_0, ..., a_{n-1})`.
    pub fn from_word(&self, word: &[u64]) -> Result<QuotientElem> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch(word.len(), self.n));
        }
        self.elem(&Poly::new(&self.field, word.to_vec()))
    }

    pub fn zero(&self) -> QuotientElem {
        QuotientElem {
            ring: self.clone(),
            rep: Poly::zero(&self.field),
        }
    }
}

/// An element of a [`QuotientRing`], held as its representative of degree < n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientElem {
    ring: QuotientRing,
    rep: Poly,
}

impl QuotientElem {
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Length-n coefficient word.
    pub fn to_word(&self) -> Vec<u64> {
        (0..self.ring.n).map(|i| self.rep.coeff(i)).collect()
    }

    /// Hamming weight of the word.
    pub fn weight(&self) -> usize {
        self.rep.coeffs().iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &QuotientElem) -> Result<QuotientElem> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(QuotientElem {
            ring: self.ring.clone(),
            rep: self.rep.add_unchecked(&other.rep),
        })
    }
}

/// Product in `R_{n,λ}`: coefficient k is
/// `Σ_{i+j=k} a_i b_j + λ Σ_{i+j=n+k} a_i b_j`.
pub fn quotient_mul(a: &QuotientElem, b: &QuotientElem) -> Result<QuotientElem> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let ring = &a.ring;
    let f = &ring.field;
    let n = ring.n;
    let (x, y) = (a.to_word(), b.to_word());
    let mut low = vec![0u64; n];
    let mut high = vec![0u64; n];
    for (i, &ai) in x.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in y.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let t = f.mul(ai, bj);
            if i + j < n {
                low[i + j] = f.add(low[i + j], t);
            } else {
                high[i + j - n] = f.add(high[i + j - n], t);
            }
        }
    }
    let rep = (0..n)
        .map(|k| f.add(low[k], f.mul(ring.lambda, high[k])))
        .collect();
    Ok(QuotientElem {
        ring: ring.clone(),
        rep: Poly::new(f, rep),
    })
}
