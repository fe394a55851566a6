use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// A fixed field homomorphism GF(p^m) → GF(p^M) for m | M.
///
/// The image of the subfield's `X` is the root β of the subfield modulus that
/// is the smallest power of `γ = G^{(p^M-1)/(p^m-1)}`, where `G` is the
/// canonical generator of the larger field. When both fields coincide the
/// embedding is the identity.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Field,
    sup: Field,
    /// Encodings of β^0, ..., β^{m-1} in the larger field.
    basis: Vec<u64>,
    /// Rows of the larger field's coordinates used to invert the basis.
    pivots: Vec<usize>,
    /// Inverse of the m×m pivot block, row-major over GF(p).
    pivot_inverse: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(sub: &Field, sup: &Field) -> Result<Embedding> {
        if !sup.is_ext_of(sub) {
            return Err(Error::IncompatibleDegrees {
                p: sub.characteristic(),
                sub: sub.degree(),
                sup: sup.degree(),
            });
        }
        let m = sub.degree() as usize;
        let beta = if sub == sup {
            sup.encode(&[0, 1])
        } else if m == 1 {
            0
        } else {
            let exponent = (sup.size() - 1) / (sub.size() - 1);
            let gamma = sup.pow(sup.generator_raw(), exponent);
            let modulus = sub.modulus();
            let mut x = gamma;
            loop {
                let value = modulus
                    .iter()
                    .rev()
                    .fold(0u64, |acc, &c| sup.add(sup.mul(acc, x), c));
                if value == 0 {
                    break x;
                }
                x = sup.mul(x, gamma);
            }
        };
        let mut basis = Vec::with_capacity(m);
        let mut power = 1u64;
        for _ in 0..m {
            basis.push(power);
            power = sup.mul(power, beta);
        }
        let (pivots, pivot_inverse) = invert_basis(sup, &basis);
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            basis,
            pivots,
            pivot_inverse,
        })
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    /// Raw image of a subfield encoding.
    pub fn embed_raw(&self, x: u64) -> u64 {
        self.sub
            .digits(x)
            .iter()
            .zip(&self.basis)
            .fold(0u64, |acc, (&c, &b)| self.sup.add(acc, self.sup.mul(c, b)))
    }

    /// Raw preimage, or `None` when `y` lies outside the image.
    pub fn section_raw(&self, y: u64) -> Option<u64> {
        let p = self.sup.characteristic();
        let coords = self.sup.digits(y);
        let rhs: Vec<u64> = self.pivots.iter().map(|&row| coords[row]).collect();
        let c: Vec<u64> = self
            .pivot_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % p)
            })
            .collect();
        let x = self.sub.encode(&c);
        (self.embed_raw(x) == y).then_some(x)
    }

    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.sub {
            return Err(Error::FieldMismatch);
        }
        Ok(self.sup.element(self.embed_raw(x.value())))
    }

    pub fn section(&self, y: &FieldElement) -> Result<FieldElement> {
        if y.field() != &self.sup {
            return Err(Error::FieldMismatch);
        }
        self.section_raw(y.value())
            .map(|x| self.sub.element(x))
            .ok_or(Error::NotInSubfield)
    }
}

/// `embed(x, sub, sup)` with a freshly built embedding.
pub fn embed(x: &FieldElement, sub: &Field, sup: &Field) -> Result<FieldElement> {
    Embedding::new(sub, sup)?.embed(x)
}

/// `section(y, sup, sub)`: the inverse of [`embed`] on its image.
pub fn section(y: &FieldElement, sup: &Field, sub: &Field) -> Result<FieldElement> {
    Embedding::new(sub, sup)?.section(y)
}

/// Picks m coordinate rows where the basis vectors are independent and inverts
/// that block by Gauss–Jordan elimination over GF(p).
fn invert_basis(sup: &Field, basis: &[u64]) -> (Vec<usize>, Vec<Vec<u64>>) {
    let p = sup.characteristic();
    let m = basis.len();
    let big = sup.degree() as usize;
    // columns are basis vectors; rows are coordinates
    let cols: Vec<Vec<u64>> = basis.iter().map(|&b| sup.digits(b)).collect();
    let mut pivots = Vec::with_capacity(m);
    // greedy row selection: keep a row if it raises the rank of the chosen rows
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    for row in 0..big {
        let candidate: Vec<u64> = (0..m).map(|j| cols[j][row]).collect();
        let mut trial = chosen.clone();
        trial.push(candidate);
        if rank(&trial, p) == trial.len() {
            chosen = trial;
            pivots.push(row);
            if pivots.len() == m {
                break;
            }
        }
    }
    debug_assert_eq!(pivots.len(), m);
    // augment [A | I] and reduce
    let mut aug: Vec<Vec<u64>> = chosen
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    for col in 0..m {
        let piv = (col..m)
            .find(|&r| aug[r][col] != 0)
            .expect("pivot block is invertible");
        aug.swap(col, piv);
        let inv = crate::arith::inv_mod(aug[col][col], p).unwrap();
        for x in aug[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in 0..2 * m {
                    aug[r][c] = (aug[r][c] + p * p - f * aug[col][c] % p) % p;
                }
            }
        }
    }
    let inverse = aug.into_iter().map(|r| r[m..].to_vec()).collect();
    (pivots, inverse)
}

fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a = rows.to_vec();
    let width = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = crate::arith::inv_mod(a[rank][col], p).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col] * inv % p;
                for c in 0..width {
                    a[r][c] = (a[r][c] + p * p - f * a[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
