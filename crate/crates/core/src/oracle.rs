//! Brute-force ground truth: duals by linear algebra, codeword set equality,
//! cosets by naive orbit closure and existence by exhaustive search.
//!
//! Nothing here calls into the coset or duality modules; only field
//! arithmetic and the code's generator polynomial are shared.

use std::collections::HashSet;

use crate::arith;
use crate::codes::ConstaCode;
use crate::cosets::BaseParams;
use crate::error::{Error, Result};
use crate::gf::Field;

/// Dense matrix of raw field encodings, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u64>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch(row.len(), cols));
            }
            m.entries[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reduced row echelon form with zero rows dropped, and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = f.inv(a[rank][col]).expect("nonzero pivot");
            for x in a[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..a.len() {
                if r != rank && a[r][col] != 0 {
                    let factor = a[r][col];
                    for c in 0..self.cols {
                        let t = f.mul(factor, a[rank][c]);
                        a[r][c] = f.sub(a[r][c], t);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        a.truncate(rank);
        let m = Matrix::from_rows(f, self.cols, &a).expect("rectangular");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, in RREF.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            basis.push(v);
        }
        Matrix::from_rows(f, self.cols, &basis)
            .expect("rectangular")
            .rref()
            .0
    }

    /// Every vector of the row space.
    pub fn span(&self, cap: u128) -> Result<HashSet<Vec<u64>>> {
        let f = &self.field;
        let q = f.size() as u128;
        let size = q.checked_pow(self.rows as u32).unwrap_or(u128::MAX);
        if size > cap {
            return Err(Error::EnumerationTooLarge { size, cap });
        }
        let mut out = HashSet::with_capacity(size as usize);
        for mut idx in 0..size {
            let mut v = vec![0u64; self.cols];
            for i in 0..self.rows {
                let c = (idx % q) as u64;
                idx /= q;
                if c == 0 {
                    continue;
                }
                for (x, &g) in v.iter_mut().zip(self.row(i)) {
                    *x = f.add(*x, f.mul(c, g));
                }
            }
            out.insert(v);
        }
        Ok(out)
    }
}

/// RREF basis of the row space of `rows`, for comparing subspaces.
pub fn row_space(field: &Field, cols: usize, rows: &[Vec<u64>]) -> Result<Matrix> {
    Ok(Matrix::from_rows(field, cols, rows)?.rref().0)
}

/// Generator matrix of C: rows `X^i·g`, `0 ≤ i < n - deg g`.
fn generator_rows(code: &ConstaCode) -> Vec<Vec<u64>> {
    let n = code.n();
    let g = code.generator().coeffs();
    let k = n + 1 - g.len();
    (0..k)
        .map(|i| {
            let mut row = vec![0u64; n];
            row[i..i + g.len()].copy_from_slice(g);
            row
        })
        .collect()
}

/// RREF basis of `C^{⊥h}`: solve `G b = 0`, then untwist `a = b^{p^{e-h}}`.
pub fn brute_dual_basis(code: &ConstaCode, h: u32) -> Result<Matrix> {
    let f = code.params().base_field();
    let e = f.degree();
    let h = h % e;
    let g = Matrix::from_rows(f, code.n(), &generator_rows(code))?;
    let null = g.nullspace();
    let untwisted: Vec<Vec<u64>> = null
        .to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|b| f.frobenius(b, (e - h) as i64))
                .collect()
        })
        .collect();
    row_space(f, code.n(), &untwisted)
}

/// All vectors of `C^{⊥h}`.
pub fn brute_dual(code: &ConstaCode, h: u32, cap: u128) -> Result<HashSet<Vec<u64>>> {
    brute_dual_basis(code, h)?.span(cap)
}

/// Codeword set equality.
pub fn brute_equal_codes(a: &HashSet<Vec<u64>>, b: &ConstaCode, cap: u128) -> Result<bool> {
    if a.len() as u128 != b.size() {
        return Ok(false);
    }
    let words = b.enumerate_codewords(cap)?;
    Ok(words.iter().all(|w| a.contains(w)))
}

/// Modulus n'r recomputed from scratch.
fn naive_modulus(params: &BaseParams) -> u64 {
    let p = params.p();
    let mut n_prime = params.n() as u64;
    while n_prime.is_multiple_of(p) {
        n_prime /= p;
    }
    n_prime * params.lambda().mult_order().expect("λ is a unit")
}

/// q-orbits on `s + rZ_{n'r}` by repeated multiplication, each sorted, the
/// list sorted by least element.
pub fn naive_cosets(params: &BaseParams, s: i64) -> Result<Vec<Vec<u64>>> {
    let m = naive_modulus(params);
    let r = params.lambda().mult_order()?;
    let s_red = s.rem_euclid(m as i64) as u64;
    if arith::gcd(s_red, m) != 1 {
        return Err(Error::NotCoprime { s, modulus: m });
    }
    let q = params.base_field().size();
    let class = s_red % r;
    let mut remaining: Vec<u64> = (0..m).filter(|k| k % r == class).collect();
    let mut out = Vec::new();
    while let Some(&start) = remaining.first() {
        let mut orbit = vec![start];
        let mut x = (start as u128 * q as u128 % m as u128) as u64;
        while !orbit.contains(&x) {
            orbit.push(x);
            x = (x as u128 * q as u128 % m as u128) as u64;
        }
        orbit.sort_unstable();
        remaining.retain(|k| !orbit.contains(k));
        out.push(orbit);
    }
    Ok(out)
}

/// Exhaustive-search setup on the class of 1.
struct Search {
    modulus: u64,
    cosets: Vec<Vec<u64>>,
    index: Vec<usize>,
    top: u32,
}

impl Search {
    fn new(params: &BaseParams) -> Search {
        let modulus = naive_modulus(params);
        let cosets = naive_cosets(params, 1).expect("1 is a unit");
        let mut index = vec![usize::MAX; modulus as usize];
        for (i, c) in cosets.iter().enumerate() {
            for &k in c {
                index[k as usize] = i;
            }
        }
        let p = params.p();
        let mut top = 1u32;
        let mut n = params.n() as u64;
        while n.is_multiple_of(p) {
            n /= p;
            top *= p as u32;
        }
        Search {
            modulus,
            cosets,
            index,
            top,
        }
    }

    /// `π(i)` = index of the coset `t·Q_i`; None when t leaves the class.
    fn permutation(&self, t: u64) -> Option<Vec<usize>> {
        self.cosets
            .iter()
            .map(|c| {
                let k = (c[0] as u128 * t as u128 % self.modulus as u128) as usize;
                let i = self.index[k];
                (i != usize::MAX).then_some(i)
            })
            .collect()
    }

    fn count(&self) -> Result<u128> {
        let size = (self.top as u128 + 1)
            .checked_pow(self.cosets.len() as u32)
            .unwrap_or(u128::MAX);
        if size > crate::codes::DEFAULT_ENUM_CAP * 16 {
            return Err(Error::EnumerationTooLarge {
                size,
                cap: crate::codes::DEFAULT_ENUM_CAP * 16,
            });
        }
        Ok(size)
    }

    /// First φ (in counting order) with `φ(π(i)) + φ(i) = top` for every i.
    fn first_pairing(&self, perm: &[usize]) -> Result<Option<Vec<u32>>> {
        let total = self.count()?;
        let k = self.cosets.len();
        let mut vals = vec![0u32; k];
        for _ in 0..total {
            if (0..k).all(|i| vals[i] + vals[perm[i]] == self.top) {
                return Ok(Some(vals));
            }
            for v in vals.iter_mut() {
                *v += 1;
                if *v <= self.top {
                    break;
                }
                *v = 0;
            }
        }
        Ok(None)
    }
}

/// Exhaustive truth for `p^h`-self-dual codes: some φ on the cosets of
/// `1 + rZ_{n'r}` with `λ^{-p^{e-h}} = λ` and `φ = (-p^{e-h})·φ̄`. Returns the
/// values of the first such φ, in naive coset order.
pub fn exhaustive_galois_selfdual(params: &BaseParams, h: u32) -> Result<Option<Vec<u32>>> {
    let f = params.base_field();
    let e = f.degree();
    let h = h % e;
    let lambda = params.lambda_raw();
    let twisted = f.inv(f.frobenius(lambda, (e - h) as i64)).expect("unit");
    if twisted != lambda {
        return Ok(None);
    }
    let search = Search::new(params);
    let m = search.modulus;
    let t = m - arith::pow_mod(f.characteristic(), (e - h) as u64 % e as u64, m) % m;
    let t = t % m;
    // φ(Q) = φ̄(t^{-1} Q), i.e. φ(Q) + φ(t^{-1}Q) = top
    let t_inv = arith::inv_mod(t, m).expect("unit");
    let Some(perm) = search.permutation(t_inv) else {
        return Ok(None);
    };
    search.first_pairing(&perm)
}

/// Exhaustive truth for isometric self-duality: smallest `s ≡ 1 (mod r)` in
/// `Z_{n'r}^*` for which some φ has `sφ = φ̄`, with that φ.
pub fn exhaustive_iso_selfdual(params: &BaseParams) -> Result<Option<(u64, Vec<u32>)>> {
    let search = Search::new(params);
    let m = search.modulus;
    let r = params.lambda().mult_order()?;
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    for s in (1..=m).filter(|&s| s % r == 1 % r && arith::gcd(s, m) == 1) {
        let perm = search.permutation(s).expect("s fixes the class");
        if !tried.insert(perm.clone()) {
            continue;
        }
        // (sφ)(Q) = φ(s^{-1}Q) = top - φ(Q) ⟺ φ(Q) + φ(sQ) = top
        if let Some(vals) = search.first_pairing(&perm)? {
            return Ok(Some((s, vals)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{all_coset_functions, build_code, DEFAULT_ENUM_CAP};
    use crate::cosets::{derive_params, q_cosets, CodeParams, CosetFunction};
    use crate::gf::make_field;
    use std::sync::Arc;

    fn params(p: u64, e: u32, n: u64, lambda: &str) -> Arc<CodeParams> {
        let f = make_field(p, e).unwrap();
        derive_params(p, e, n, &f.parse_element(lambda).unwrap()).unwrap()
    }

    #[test]
    fn nullspace_dimension() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::from_rows(&f, 3, &[vec![1, 2, 0], vec![2, 1, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.rows(), 2);
        for v in ns.to_rows() {
            assert_eq!((v[0] + 2 * v[1]) % 3, 0);
        }
    }

    #[test]
    fn gf4_length2_dual() {
        let pr = params(2, 2, 2, "g^2");
        let c = build_code(&pr, &CosetFunction::constant(pr.space(), 1, 1).unwrap()).unwrap();
        let d = brute_dual(&c, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(d.len(), 4);
        assert!(brute_equal_codes(&d, &c, DEFAULT_ENUM_CAP).unwrap());
        let full = c
            .annihilator()
            .unwrap()
            .annihilator()
            .unwrap()
            .annihilator()
            .unwrap();
        assert_eq!(full.dim(), 1);
    }

    #[test]
    fn gf9_negacyclic_length4_dual() {
        let pr = params(3, 2, 4, "-1");
        let c = build_code(
            &pr,
            &CosetFunction::new(pr.space(), 1, [(1, 0), (3, 0), (5, 1), (7, 1)]).unwrap(),
        )
        .unwrap();
        for h in [0, 1] {
            let d = brute_dual(&c, h, DEFAULT_ENUM_CAP).unwrap();
            assert!(brute_equal_codes(&d, &c, DEFAULT_ENUM_CAP).unwrap());
        }
        let zero = build_code(&pr, &CosetFunction::constant(pr.space(), 1, 0).unwrap()).unwrap();
        let full = zero.annihilator().unwrap();
        let zero_words: HashSet<Vec<u64>> =
            zero.enumerate_codewords(1).unwrap().into_iter().collect();
        assert!(!brute_equal_codes(&zero_words, &full, DEFAULT_ENUM_CAP).unwrap());
        assert_eq!(brute_dual(&full, 0, DEFAULT_ENUM_CAP).unwrap().len(), 1);
    }

    #[test]
    fn dual_cardinality_and_involution() {
        for (p, e, n, l) in [
            (2u64, 2u32, 3u64, "g"),
            (3, 2, 2, "-1"),
            (2, 1, 6, "1"),
            (3, 1, 4, "-1"),
        ] {
            let pr = params(p, e, n, l);
            for phi in all_coset_functions(&pr, 1).unwrap() {
                let c = build_code(&pr, &phi).unwrap();
                for h in 0..e {
                    let basis = brute_dual_basis(&c, h).unwrap();
                    assert_eq!(basis.rows(), n as usize - c.dim());
                    // (C^{⊥h})^{⊥(e-h)} = C
                    let twice_rows = {
                        let fld = pr.base_field();
                        let null = basis.nullspace();
                        let rows: Vec<Vec<u64>> = null
                            .to_rows()
                            .into_iter()
                            .map(|r| r.into_iter().map(|b| fld.frobenius(b, h as i64)).collect())
                            .collect();
                        row_space(fld, n as usize, &rows).unwrap()
                    };
                    let c_rows =
                        row_space(pr.base_field(), n as usize, &c.generator_matrix()).unwrap();
                    assert_eq!(twice_rows, c_rows);
                }
            }
        }
    }

    #[test]
    fn naive_cosets_match_gf25_negacyclic_length26() {
        let pr = params(5, 2, 26, "-1");
        let naive = naive_cosets(&pr, 1).unwrap();
        let fast: Vec<Vec<u64>> = q_cosets(pr.space(), 1)
            .unwrap()
            .into_iter()
            .map(|c| c.members)
            .collect();
        assert_eq!(naive, fast);
        assert_eq!(naive.len(), 14);
        let pr = params(3, 4, 12, "g^60");
        assert!(naive_cosets(&pr, 1).unwrap().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn coset_sizes_divide_order_of_q() {
        for (p, e, n, l) in [
            (2u64, 1u32, 21u64, "1"),
            (3, 1, 20, "-1"),
            (5, 1, 12, "g"),
            (2, 2, 15, "g"),
        ] {
            let pr = params(p, e, n, l);
            for c in naive_cosets(&pr, 1).unwrap() {
                assert_eq!(pr.d() as usize % c.len(), 0);
            }
        }
    }

    #[test]
    fn exhaustive_matches_codeword_sets() {
        // on tiny rings, compare the exhaustive predicate with set equality
        for (p, e, n, l) in [
            (2u64, 2u32, 2u64, "g^2"),
            (3, 2, 2, "-1"),
            (2, 1, 4, "1"),
            (3, 1, 4, "-1"),
            (2, 2, 4, "1"),
        ] {
            let pr = params(p, e, n, l);
            for h in 0..e {
                let mut any = false;
                for phi in all_coset_functions(&pr, 1).unwrap() {
                    let c = build_code(&pr, &phi).unwrap();
                    if c.dim() * 2 != n as usize {
                        continue;
                    }
                    let d = brute_dual(&c, h, DEFAULT_ENUM_CAP).unwrap();
                    any |= brute_equal_codes(&d, &c, DEFAULT_ENUM_CAP).unwrap();
                }
                assert_eq!(
                    exhaustive_galois_selfdual(&pr, h).unwrap().is_some(),
                    any,
                    "{pr:?} h={h}"
                );
            }
        }
    }
}
