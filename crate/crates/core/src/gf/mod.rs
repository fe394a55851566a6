//! Exact arithmetic in GF(p^m).
//!
//! Every field is realized canonically as GF(p)[X]/(f) where `f` is the
//! lexicographically smallest monic irreducible of degree m, with
//! coefficients compared low degree first. The canonical generator is the
//! smallest primitive element under the same ordering. Construction is
//! deterministic and cached, so two calls with the same `(p, m)` return the
//! same [`Field`].
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` is the coefficient of `X^i`. The raw `u64` methods on
//! [`Field`] work on these encodings; [`FieldElement`] pairs an encoding with
//! its field and checks ownership on every operation.

mod embed;
pub(crate) mod prime_poly;

pub use embed::{embed, section, Embedding};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use std::sync::LazyLock;

use crate::arith;
use crate::error::{Error, Result};

/// Fields up to this size carry exp/log tables.
const TABLE_LIMIT: u64 = 1 << 16;
const SIZE_LIMIT: u64 = 1 << 62;

static FIELD_CACHE: LazyLock<Mutex<HashMap<(u64, u32), Field>>> = LazyLock::new(Default::default);

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct FieldData {
    p: u64,
    m: u32,
    size: u64,
    modulus: Vec<u64>,
    generator: u64,
    /// Distinct prime factors of `size - 1`.
    group_primes: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field GF(p^m) in its canonical realization.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

/// Builds (or fetches from the cache) the canonical GF(p^m).
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if p >= 1 << 31 {
        return Err(Error::FieldTooLarge { p, m });
    }
    let size = (p as u128)
        .checked_pow(m)
        .filter(|&s| s <= SIZE_LIMIT as u128);
    let size = size.ok_or(Error::FieldTooLarge { p, m })? as u64;

    if let Some(f) = FIELD_CACHE.lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let field = Field::construct(p, m, size);
    let mut cache = FIELD_CACHE.lock().unwrap();
    Ok(cache.entry((p, m)).or_insert(field).clone())
}

/// Coefficient vector for the `k`-th vector in low-degree-first lexicographic
/// order: `c_0` is the most significant digit of `k`.
fn lex_vector(k: u64, p: u64, len: usize) -> Vec<u64> {
    let mut digits = vec![0u64; len];
    let mut k = k;
    for i in (0..len).rev() {
        digits[i] = k % p;
        k /= p;
    }
    digits
}

impl Field {
    fn construct(p: u64, m: u32, size: u64) -> Field {
        let len = m as usize;
        // for m > 1 every candidate with c_0 = 0 is divisible by X
        let first = if m > 1 { size / p } else { 0 };
        let modulus = (first..size)
            .map(|k| {
                let mut f = lex_vector(k, p, len);
                f.push(1);
                f
            })
            .find(|f| prime_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");
        let group_primes = arith::factorize(size - 1)
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        let mut data = FieldData {
            p,
            m,
            size,
            modulus,
            generator: 0,
            group_primes,
            tables: None,
        };
        let provisional = Field(Arc::new(FieldData {
            modulus: data.modulus.clone(),
            group_primes: data.group_primes.clone(),
            tables: None,
            ..data
        }));
        let generator = (1..size)
            .map(|k| provisional.encode(&lex_vector(k, p, len)))
            .find(|&x| x != 0 && provisional.is_primitive(x))
            .expect("the multiplicative group is cyclic");
        data.generator = generator;
        if size <= TABLE_LIMIT {
            let mut exp = Vec::with_capacity((size - 1) as usize);
            let mut log = vec![0u32; size as usize];
            let mut x = 1u64;
            for i in 0..size - 1 {
                exp.push(x);
                log[x as usize] = i as u32;
                x = provisional.mul(x, generator);
            }
            data.tables = Some(Tables { exp, log });
        }
        Field(Arc::new(data))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Number of elements, p^m.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Monic modulus, ascending coefficients (length m + 1).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.element(self.0.generator)
    }

    pub(crate) fn generator_raw(&self) -> u64 {
        self.0.generator
    }

    /// Wraps a raw encoding. The value is reduced into range.
    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: value % self.0.size,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element with the given ascending coefficient vector (length ≤ m).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::Parse(format!(
                "expected at most {} coefficients for {self}",
                self.0.m
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "coefficient {c} is not a residue mod {}",
                self.0.p
            )));
        }
        Ok(self.element(self.encode(coeffs)))
    }

    /// `g^k` for the canonical generator `g`.
    pub fn gen_pow(&self, k: i64) -> u64 {
        self.pow_signed(self.0.generator, k)
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(move |v| self.element(v))
    }

    // ---- raw arithmetic on encodings ----

    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.0.p + c % self.0.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.m == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = (a, b);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.m {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.m == 1 {
            return (p - a % p) % p;
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a, 0u64, 1u64);
        for _ in 0..self.0.m {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.0.p;
        if self.0.m == 1 {
            return arith::mul_mod(a, b, p);
        }
        if let Some(t) = &self.0.tables {
            let q1 = (self.0.size - 1) as usize;
            let s = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[if s >= q1 { s - q1 } else { s }];
        }
        let x = self.digits(a);
        let y = self.digits(b);
        let m = self.0.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        let f = &self.0.modulus;
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                prod[top - m + i] = (prod[top - m + i] + c * (p - f[i])) % p;
            }
            prod[top] = 0;
        }
        self.encode(&prod[..m])
    }

    pub fn pow(&self, a: u64, exp: u64) -> u64 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let q1 = self.0.size - 1;
            let e = arith::mul_mod(t.log[a as usize] as u64, exp % q1, q1);
            return t.exp[e as usize];
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = exp % (self.0.size - 1);
        if e == 0 {
            return 1;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^k` for a signed exponent; `a` must be nonzero when `k < 0`.
    pub fn pow_signed(&self, a: u64, k: i64) -> u64 {
        if k >= 0 {
            return self.pow(a, k as u64);
        }
        let inv = self.inv(a).expect("negative power of zero");
        self.pow(inv, k.unsigned_abs())
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let q1 = (self.0.size - 1) as usize;
            let l = t.log[a as usize] as usize;
            return Some(t.exp[(q1 - l) % q1]);
        }
        Some(self.pow(a, self.0.size - 2))
    }

    /// `a^{p^t}` with `t` taken modulo m.
    pub fn frobenius(&self, a: u64, t: i64) -> u64 {
        let t = arith::modulo(t, self.0.m as u64);
        let mut x = a;
        for _ in 0..t {
            x = self.pow(x, self.0.p);
        }
        x
    }

    fn is_primitive(&self, a: u64) -> bool {
        let q1 = self.0.size - 1;
        self.0
            .group_primes
            .iter()
            .all(|&l| self.pow(a, q1 / l) != 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut ord = self.0.size - 1;
        for &l in &self.0.group_primes {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Discrete logarithm to the canonical generator, in `[0, p^m - 1)`.
    pub fn log(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroOrder);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.log[a as usize] as u64);
        }
        // baby-step giant-step
        let q1 = self.0.size - 1;
        let steps = (q1 as f64).sqrt().ceil() as u64 + 1;
        let g = self.0.generator;
        let mut baby = HashMap::with_capacity(steps as usize);
        let mut x = 1u64;
        for j in 0..steps {
            baby.entry(x).or_insert(j);
            x = self.mul(x, g);
        }
        let giant = self.inv(self.pow(g, steps)).expect("generator is a unit");
        let mut y = a;
        for i in 0..=steps {
            if let Some(&j) = baby.get(&y) {
                return Ok((i * steps + j) % q1);
            }
            y = self.mul(y, giant);
        }
        unreachable!("every unit is a power of the generator")
    }

    /// Bracket form `[c0,c1,...,c_{m-1}]`.
    pub fn format_coeffs(&self, a: u64) -> String {
        let d: Vec<String> = self.digits(a).iter().map(u64::to_string).collect();
        format!("[{}]", d.join(","))
    }

    /// `0` or `g^k`.
    pub fn format_log(&self, a: u64) -> String {
        match self.log(a) {
            Ok(k) => format!("g^{k}"),
            Err(_) => "0".to_string(),
        }
    }

    /// Accepts `0`, `1`, `-1`, `g`, `g^K` (K may be negative) or `[c0,...]`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        match t {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            "-1" => return Ok(self.element(self.neg(1))),
            "g" => return Ok(self.generator()),
            _ => {}
        }
        if let Some(k) = t.strip_prefix("g^") {
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{t}'")))?;
            return Ok(self.element(self.gen_pow(k)));
        }
        if let Some(body) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let coeffs = body
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{s}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs);
        }
        Err(Error::Parse(format!(
            "'{t}': expected 0, 1, -1, g^K or [c0,...,c{}]",
            self.0.m - 1
        )))
    }

    /// True when `sub` is (canonically isomorphic to) a subfield of `self`.
    pub fn is_ext_of(&self, sub: &Field) -> bool {
        sub.0.p == self.0.p && self.0.m.is_multiple_of(sub.0.m)
    }
}

/// An element tagged with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}∈{:?}",
            self.field.format_coeffs(self.value),
            self.field
        )
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_log(self.value))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic on two elements of one field.
pub fn arith(x: &FieldElement, y: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let f = &x.field;
    let v = match op {
        ArithOp::Add => f.add(x.value, y.value),
        ArithOp::Sub => f.sub(x.value, y.value),
        ArithOp::Mul => f.mul(x.value, y.value),
        ArithOp::Div => f.mul(x.value, f.inv(y.value).ok_or(Error::DivisionByZero)?),
    };
    Ok(f.element(v))
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, y: &FieldElement) -> Result<FieldElement> {
        arith(self, y, ArithOp::Add)
    }

    pub fn sub(&self, y: &FieldElement) -> Result<FieldElement> {
        arith(self, y, ArithOp::Sub)
    }

    pub fn mul(&self, y: &FieldElement) -> Result<FieldElement> {
        arith(self, y, ArithOp::Mul)
    }

    pub fn div(&self, y: &FieldElement) -> Result<FieldElement> {
        arith(self, y, ArithOp::Div)
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(self.field.element(v))
    }

    pub fn pow(&self, k: i64) -> Result<FieldElement> {
        if k < 0 && self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.element(self.field.pow_signed(self.value, k)))
    }

    /// `x^{p^t}`, `t` taken mod m.
    pub fn frobenius(&self, t: i64) -> FieldElement {
        self.field.element(self.field.frobenius(self.value, t))
    }

    pub fn mult_order(&self) -> Result<u64> {
        self.field.order(self.value)
    }

    pub fn log(&self) -> Result<u64> {
        self.field.log(self.value)
    }
}
