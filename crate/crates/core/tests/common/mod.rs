//! Random small instances shared by the property suites.

#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use constacyclic::arith;
use constacyclic::cosets::{derive_params, q_cosets, CodeParams, CosetFunction};
use constacyclic::gf::make_field;
use proptest::prelude::*;

const FIELDS: [(u64, u32); 7] = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1), (2, 3)];
const MAX_N: u64 = 8;
const MAX_COSETS: usize = 8;

/// Every `(p, e, n, λ = g^{(q-1)/r})` with n ≤ 8 and at most 8 cosets.
pub fn instances() -> &'static [Arc<CodeParams>] {
    static CELL: OnceLock<Vec<Arc<CodeParams>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for (p, e) in FIELDS {
            let f = make_field(p, e).unwrap();
            let q = f.size();
            for n in 1..=MAX_N {
                for r in (1..q).filter(|r| (q - 1).is_multiple_of(*r)) {
                    let lambda = f.element(f.gen_pow(((q - 1) / r) as i64));
                    let pr = derive_params(p, e, n, &lambda).unwrap();
                    if q_cosets(pr.space(), 1).unwrap().len() <= MAX_COSETS {
                        out.push(pr);
                    }
                }
            }
        }
        out
    })
}

/// Units of `Z_{n'r}`.
pub fn units(pr: &CodeParams) -> Vec<u64> {
    let m = pr.modulus();
    (1..=m).filter(|&s| arith::gcd(s, m) == 1).collect()
}

/// A coset function on the class of 1 from arbitrary raw values.
pub fn phi_from(pr: &CodeParams, raw: &[u32]) -> CosetFunction {
    let cosets = q_cosets(pr.space(), 1).unwrap();
    let top = pr.top();
    CosetFunction::new(
        pr.space(),
        1,
        cosets
            .iter()
            .zip(raw.iter().cycle())
            .map(|(c, &v)| (c.rep, v % (top + 1))),
    )
    .unwrap()
}

/// `(instance, φ)` with φ drawn uniformly per coset.
pub fn instance_and_phi() -> impl Strategy<Value = (Arc<CodeParams>, CosetFunction)> {
    let n = instances().len();
    (0..n, prop::collection::vec(0u32..64, MAX_COSETS)).prop_map(|(i, raw)| {
        let pr = instances()[i].clone();
        let phi = phi_from(&pr, &raw);
        (pr, phi)
    })
}

/// `(instance, φ, two unit picks, word picks)`.
pub fn instance_phi_units(
) -> impl Strategy<Value = (Arc<CodeParams>, CosetFunction, usize, usize, Vec<u64>)> {
    (
        instance_and_phi(),
        any::<usize>(),
        any::<usize>(),
        prop::collection::vec(any::<u64>(), MAX_N as usize),
    )
        .prop_map(|((pr, phi), a, b, w)| (pr, phi, a, b, w))
}
