//! Galois inner products, the isometries `M_s`, Galois duals and the
//! self-duality predicates.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::codes::ConstaCode;
use crate::cosets::{CodeParams, CosetFunction};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::polyring::{Poly, QuotientElem, QuotientRing};

/// `⟨a, b⟩_h = Σ a_i b_i^{p^h}` on raw words.
pub fn galois_inner(field: &Field, a: &[u64], b: &[u64], h: u32) -> Result<FieldElement> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let sum = a.iter().zip(b).fold(0u64, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, field.frobenius(y, h as i64)))
    });
    Ok(field.element(sum))
}

/// The isometry `M_s` in normal form: `ν_p(s) mod e` and `s' mod nr`.
#[derive(Clone)]
pub struct IsometrySpec {
    params: Arc<CodeParams>,
    s: i128,
    nu: u32,
    s_prime: u64,
    s_prime_inv: u64,
}

impl fmt::Debug for IsometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M_{} (ν={}, s'={} mod {})",
            self.s,
            self.nu,
            self.s_prime,
            self.nr()
        )
    }
}

impl PartialEq for IsometrySpec {
    fn eq(&self, other: &IsometrySpec) -> bool {
        self.params.space() == other.params.space()
            && self.nu == other.nu
            && self.s_prime == other.s_prime
    }
}

impl IsometrySpec {
    pub fn new(params: &Arc<CodeParams>, s: i64) -> Result<IsometrySpec> {
        IsometrySpec::from_i128(params, s as i128)
    }

    fn from_i128(params: &Arc<CodeParams>, s: i128) -> Result<IsometrySpec> {
        let space = params.space();
        let m = space.modulus;
        let reduced = s.rem_euclid(m as i128) as u64;
        if arith::gcd(reduced, m) != 1 {
            return Err(Error::NotCoprime {
                s: s.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
                modulus: m,
            });
        }
        if s == 0 {
            return Err(Error::ZeroValuation);
        }
        let p = params.p() as i128;
        let mut nu = 0u32;
        let mut s_prime = s;
        while s_prime % p == 0 {
            s_prime /= p;
            nu += 1;
        }
        let nr = params.n() as u64 * params.r();
        let s_prime = s_prime.rem_euclid(nr as i128) as u64;
        let s_prime_inv = arith::inv_mod(s_prime, nr).expect("s' is a unit mod nr");
        Ok(IsometrySpec {
            params: params.clone(),
            s,
            nu: nu % params.e(),
            s_prime,
            s_prime_inv,
        })
    }

    fn nr(&self) -> u64 {
        self.params.n() as u64 * self.params.r()
    }

    pub fn s(&self) -> i128 {
        self.s
    }

    /// `ν_p(s) mod e`
    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// `s' mod nr`
    pub fn s_prime(&self) -> u64 {
        self.s_prime
    }

    pub fn s_prime_inv(&self) -> u64 {
        self.s_prime_inv
    }

    /// `p^{ν} s' mod n'r`: the multiplier of the induced coset action.
    pub fn multiplier(&self) -> u64 {
        let m = self.params.modulus();
        let pv = arith::pow_mod(self.params.p(), self.nu as u64, m);
        arith::mul_mod(pv, self.s_prime % m, m)
    }

    /// `M_s: R_{n,μ} → R_{n,μ^s}` for any ring constant μ with `μ^r = 1`.
    pub fn apply(&self, a: &QuotientElem) -> Result<QuotientElem> {
        let ring = a.ring();
        let f = self.params.base_field();
        let n = self.params.n();
        if ring.field() != f || ring.n() != n {
            return Err(Error::RingMismatch);
        }
        let mu = ring.lambda();
        if f.pow(mu, self.params.r()) != 1 {
            return Err(Error::RingMismatch);
        }
        let target = self.target_ring(ring);
        let nr = self.nr();
        let mut out = vec![0u64; n];
        for (i, &c) in a.to_word().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = arith::mul_mod(i as u64, self.s_prime_inv, nr);
            let wraps = k / n as u64;
            let coeff = f.mul(
                f.frobenius(c, self.nu as i64),
                f.pow(target.lambda(), wraps),
            );
            let j = (k % n as u64) as usize;
            out[j] = f.add(out[j], coeff);
        }
        target.elem(&Poly::new(f, out))
    }

    /// `R_{n,μ^s}`.
    pub fn target_ring(&self, ring: &QuotientRing) -> QuotientRing {
        let f = ring.field();
        let r = self.params.r();
        let exp = self.s.rem_euclid(r as i128) as u64;
        QuotientRing::new(f, ring.n(), f.pow(ring.lambda(), exp))
    }

    /// `M_{s1} M_{s2} = M_{s1 s2}`.
    pub fn compose(&self, other: &IsometrySpec) -> Result<IsometrySpec> {
        if self.params.space() != other.params.space() {
            return Err(Error::DomainMismatch);
        }
        let s = self.s.checked_mul(other.s).ok_or(Error::ZeroValuation)?;
        let nr = self.nr();
        let e = self.params.e();
        Ok(IsometrySpec {
            params: self.params.clone(),
            s,
            nu: (self.nu + other.nu) % e,
            s_prime: arith::mul_mod(self.s_prime, other.s_prime, nr),
            s_prime_inv: arith::mul_mod(self.s_prime_inv, other.s_prime_inv, nr),
        })
    }

    /// `M_s(C_φ) = C_{sφ}`.
    pub fn on_code(&self, code: &ConstaCode) -> Result<ConstaCode> {
        if code.params().space() != self.params.space() {
            return Err(Error::DomainMismatch);
        }
        let phi = code.phi().act(self.multiplier() as i64)?;
        ConstaCode::build(code.params(), &phi)
    }
}

pub fn isometry_equal(a: &IsometrySpec, b: &IsometrySpec) -> bool {
    a == b
}

/// `C_φ^{⊥h} = C_{-p^{e-h} φ̄}`, a code of `R_{n,λ^{-p^{e-h}}}`.
pub fn galois_dual(code: &ConstaCode, h: u32) -> Result<ConstaCode> {
    let params = code.params();
    let h = h % params.e();
    let s = dual_multiplier(params, h);
    let phi = code.phi().complement().act(s)?;
    ConstaCode::build(params, &phi)
}

/// `-p^{e-h} mod n'r`.
pub(crate) fn dual_multiplier(params: &CodeParams, h: u32) -> i64 {
    let m = params.modulus();
    let ph = arith::pow_mod(params.p(), ((params.e() - h) % params.e()) as u64, m);
    -(ph as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedClause {
    Order,
    CosetFunction,
}

/// Outcome of the `p^h`-self-duality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualCertificate {
    pub selfdual: bool,
    pub h: u32,
    pub failed_clause: Option<FailedClause>,
    pub iso_witness: Option<u64>,
}

/// Self-duality decided on φ alone: `r | c(p^h+1)` for φ on the class `c`,
/// then `-p^h φ = φ̄`.
pub fn phi_selfdual(phi: &CosetFunction, h: u32) -> std::result::Result<(), FailedClause> {
    let sp = phi.space();
    let h = h % sp.e;
    let ph = sp.p.pow(h);
    if !(phi.class() as u128 * (ph as u128 + 1)).is_multiple_of(sp.r as u128) {
        return Err(FailedClause::Order);
    }
    let moved = phi
        .act(-(ph as i64 % sp.modulus as i64))
        .expect("p^h is a unit mod n'r");
    if moved == phi.complement() {
        Ok(())
    } else {
        Err(FailedClause::CosetFunction)
    }
}

/// Smallest `s ∈ 1 + rZ_{n'r}` coprime to n'r with `sφ = φ̄`, re-verified by
/// `φ(Q) + φ(sQ) = p^ν` on every coset.
pub fn phi_iso_witness(phi: &CosetFunction) -> Option<u64> {
    let sp = phi.space();
    let bar = phi.complement();
    for s in sp.multipliers() {
        let moved = phi.act(s as i64).expect("multipliers are units");
        if moved != bar {
            continue;
        }
        for c in phi.cosets() {
            let image = arith::mul_mod(c.rep, s, sp.modulus);
            let total = phi.values()[&c.rep] + phi.get(image).expect("sQ is a coset");
            assert_eq!(total, sp.top, "sφ = φ̄ without the pairing condition");
        }
        return Some(s);
    }
    None
}

pub fn is_galois_selfdual(code: &ConstaCode, h: u32) -> bool {
    phi_selfdual(code.phi(), h).is_ok()
}

pub fn selfdual_certificate(code: &ConstaCode, h: u32) -> SelfDualCertificate {
    let h = h % code.params().e();
    let verdict = phi_selfdual(code.phi(), h);
    SelfDualCertificate {
        selfdual: verdict.is_ok(),
        h,
        failed_clause: verdict.err(),
        iso_witness: phi_iso_witness(code.phi()),
    }
}

/// Witness `s` with `M_{-p^{e-h} s}(C) = C^{⊥h}`. The condition `sφ = φ̄`
/// does not involve h.
pub fn is_iso_galois_selfdual(code: &ConstaCode, _h: u32) -> Option<u64> {
    phi_iso_witness(code.phi())
}
