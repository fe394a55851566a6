//! Constacyclic codes `C_φ` built from q-coset functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosets::{cosets_of_class, CodeParams, CosetFunction, QCoset};
use crate::error::{Error, Result};
use crate::polyring::{quotient_mul, Poly, QuotientElem, QuotientRing};

/// Default limit on the number of enumerated codewords.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

/// `f_Q(X) = ∏_{i ∈ Q} (X - θ^i)`, computed in GF(q^d) and brought back to GF(q).
pub fn f_q(params: &CodeParams, coset: &QCoset) -> Result<Poly> {
    let big = params.big_field();
    let mut prod = Poly::one(big);
    for &i in &coset.members {
        let root = params.theta_pow(i);
        prod = prod.mul_unchecked(&Poly::new(big, vec![big.neg(root), 1]));
    }
    let emb = params.embedding();
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|&c| emb.section_raw(c).ok_or(Error::NotGaloisStable))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(params.base_field(), coeffs))
}

/// `f_φ = ∏_Q f_Q^{φ(Q)}`.
pub fn f_phi(params: &CodeParams, phi: &CosetFunction) -> Result<Poly> {
    if phi.space() != params.space() {
        return Err(Error::DomainMismatch);
    }
    let mut prod = Poly::one(params.base_field());
    for coset in phi.cosets() {
        let k = phi.values()[&coset.rep];
        if k > 0 {
            prod = prod.mul_unchecked(&f_q(params, &coset)?.pow(k));
        }
    }
    Ok(prod)
}

/// The λ^c-constacyclic code with check polynomial `f_φ`, where `c` is the
/// class of φ's domain (`c = 1` for the codes of `R_{n,λ}` itself).
#[derive(Clone, Debug)]
pub struct ConstaCode {
    params: Arc<CodeParams>,
    phi: CosetFunction,
    generator: Poly,
    check: Poly,
    ring: QuotientRing,
}

impl PartialEq for ConstaCode {
    fn eq(&self, other: &ConstaCode) -> bool {
        self.ring == other.ring && self.generator == other.generator
    }
}

impl Eq for ConstaCode {}

impl ConstaCode {
    pub fn build(params: &Arc<CodeParams>, phi: &CosetFunction) -> Result<ConstaCode> {
        let check = f_phi(params, phi)?;
        let generator = f_phi(params, &phi.complement())?;
        let ring = QuotientRing::new(
            params.base_field(),
            params.n(),
            params.lambda_pow(phi.class() as i64),
        );
        Ok(ConstaCode {
            params: params.clone(),
            phi: phi.clone(),
            generator,
            check,
            ring,
        })
    }

    pub fn params(&self) -> &Arc<CodeParams> {
        &self.params
    }

    pub fn phi(&self) -> &CosetFunction {
        &self.phi
    }

    /// `f_φ̄`
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// `f_φ`
    pub fn check(&self) -> &Poly {
        &self.check
    }

    /// The ambient ring `R_{n,λ^c}`.
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn dim(&self) -> usize {
        self.check.degree().unwrap_or(0)
    }

    /// Divisibility test `f_φ̄ | c`.
    pub fn contains_by_division(&self, c: &QuotientElem) -> Result<bool> {
        self.same_ring(c)?;
        c.rep().divisible_by(&self.generator)
    }

    /// Annihilation test `c·f_φ ≡ 0`.
    pub fn contains_by_annihilation(&self, c: &QuotientElem) -> Result<bool> {
        self.same_ring(c)?;
        let check = self.ring.elem(&self.check)?;
        Ok(quotient_mul(c, &check)?.is_zero())
    }

    /// Membership, answered by both tests; they must agree.
    pub fn contains(&self, c: &QuotientElem) -> Result<bool> {
        let by_division = self.contains_by_division(c)?;
        let by_annihilation = self.contains_by_annihilation(c)?;
        assert_eq!(by_division, by_annihilation, "membership tests disagree");
        Ok(by_division)
    }

    fn same_ring(&self, c: &QuotientElem) -> Result<()> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// `Ann(C_φ) = C_φ̄`.
    pub fn annihilator(&self) -> Result<ConstaCode> {
        ConstaCode::build(&self.params, &self.phi.complement())
    }

    /// Rows `X^i·f_φ̄` for `0 ≤ i < dim`, as length-n words.
    pub fn generator_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        (0..self.dim())
            .map(|i| {
                let mut row = vec![0u64; n];
                for (j, &c) in self.generator.coeffs().iter().enumerate() {
                    row[i + j] = c;
                }
                row
            })
            .collect()
    }

    /// Number of codewords, `q^dim`, saturating.
    pub fn size(&self) -> u128 {
        (self.params.q() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    /// All codewords as raw-coefficient words, in counting order of the
    /// coordinates on the generator rows.
    pub fn enumerate_codewords(&self, cap: u128) -> Result<Vec<Vec<u64>>> {
        let size = self.size();
        if size > cap {
            return Err(Error::EnumerationTooLarge { size, cap });
        }
        let f = self.params.base_field();
        let q = f.size();
        let rows = self.generator_matrix();
        let n = self.n();
        let mut digits = vec![0u64; rows.len()];
        let mut word = vec![0u64; n];
        let mut out = Vec::with_capacity(size as usize);
        out.push(word.clone());
        // odometer over coordinates, updating the word by the digit change
        'outer: loop {
            for (j, row) in rows.iter().enumerate() {
                let old = digits[j];
                let new = (old + 1) % q;
                digits[j] = new;
                let delta = f.sub(new, old);
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(delta, g));
                }
                if new != 0 {
                    out.push(word.clone());
                    continue 'outer;
                }
            }
            break;
        }
        Ok(out)
    }

    /// Minimum Hamming weight of a nonzero codeword; `None` for the zero code.
    pub fn min_weight(&self, cap: u128) -> Result<Option<usize>> {
        if self.dim() == 0 {
            return Ok(None);
        }
        let words = self.enumerate_codewords(cap)?;
        Ok(words
            .iter()
            .map(|w| w.iter().filter(|&&c| c != 0).count())
            .filter(|&w| w > 0)
            .min())
    }

    pub fn descriptor(&self, min_weight: Option<usize>) -> CodeDescriptor {
        let f = self.params.base_field();
        CodeDescriptor {
            p: self.params.p(),
            e: self.params.e(),
            n: self.n(),
            lambda: f.format_log(self.ring.lambda()),
            class: self.phi.class(),
            phi: self.phi.values().clone(),
            generator: self
                .generator
                .coeffs()
                .iter()
                .map(|&c| f.format_log(c))
                .collect(),
            check: self
                .check
                .coeffs()
                .iter()
                .map(|&c| f.format_log(c))
                .collect(),
            dim: self.dim(),
            min_weight,
        }
    }
}

pub fn build_code(params: &Arc<CodeParams>, phi: &CosetFunction) -> Result<ConstaCode> {
    ConstaCode::build(params, phi)
}

/// Recovers φ from a monic divisor `g` of `X^n - λ` and builds its code.
pub fn code_from_generator(params: &Arc<CodeParams>, g: &Poly) -> Result<ConstaCode> {
    code_from_generator_in(params, 1, g)
}

/// As [`code_from_generator`], for a divisor of `X^n - λ^s` on the class of `s`.
pub fn code_from_generator_in(params: &Arc<CodeParams>, s: i64, g: &Poly) -> Result<ConstaCode> {
    let space = params.space();
    let class = space.class_of(s);
    let modulus = Poly::x_pow_minus(
        params.base_field(),
        params.n(),
        params.lambda_pow(class as i64),
    );
    if g.field() != params.base_field() {
        return Err(Error::FieldMismatch);
    }
    if g.is_zero() || !g.is_monic() || !modulus.divisible_by(g)? {
        return Err(Error::NotAGenerator);
    }
    let cosets = crate::cosets::q_cosets(space, s)?;
    let mut rest = g.clone();
    let mut values = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let fq = f_q(params, coset)?;
        let mut mult = 0u32;
        loop {
            let (quot, rem) = rest.divmod(&fq)?;
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            mult += 1;
        }
        values.push(space.top - mult);
    }
    debug_assert_eq!(rest.degree(), Some(0));
    let phi = CosetFunction::from_values(space, class, &cosets, &values);
    ConstaCode::build(params, &phi)
}

/// Serializable summary of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub p: u64,
    pub e: u32,
    pub n: usize,
    pub lambda: String,
    pub class: u64,
    /// coset representative → multiplicity
    pub phi: BTreeMap<u64, u32>,
    pub generator: Vec<String>,
    pub check: Vec<String>,
    pub dim: usize,
    pub min_weight: Option<usize>,
}

/// All coset functions on the class of `s`, in counting order with the first
/// coset varying fastest.
pub fn all_coset_functions(params: &CodeParams, s: i64) -> Result<Vec<CosetFunction>> {
    let space = params.space();
    let cosets = crate::cosets::q_cosets(space, s)?;
    let base = space.top as u128 + 1;
    let total = base
        .checked_pow(cosets.len() as u32)
        .filter(|&t| t <= DEFAULT_ENUM_CAP)
        .ok_or(Error::EnumerationTooLarge {
            size: base.saturating_pow(cosets.len() as u32),
            cap: DEFAULT_ENUM_CAP,
        })?;
    let class = space.class_of(s);
    let mut out = Vec::with_capacity(total as usize);
    let mut vals = vec![0u32; cosets.len()];
    for _ in 0..total {
        out.push(CosetFunction::from_values(space, class, &cosets, &vals));
        for v in vals.iter_mut() {
            *v += 1;
            if *v <= space.top {
                break;
            }
            *v = 0;
        }
    }
    Ok(out)
}

/// Number of q-cosets on `1 + rZ_{n'r}`.
pub fn coset_count(params: &CodeParams) -> usize {
    cosets_of_class(params.space(), 1 % params.r()).len()
}
