//! Code parameters, q-cyclotomic cosets on `s + rZ_{n'r}`, and the q-coset
//! function calculus (complement, `sφ`, meet, order).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{make_field, Embedding, Field, FieldElement};

/// Integer data needed to work with cosets and coset functions: the modulus
/// `n'r`, the order `r` of λ, `q mod n'r`, and the multiplicity bound `p^ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CosetSpace {
    pub p: u64,
    pub e: u32,
    pub n: u64,
    /// n' r
    pub modulus: u64,
    pub r: u64,
    /// q reduced mod n'r
    pub q: u64,
    /// p^ν, the largest multiplicity
    pub top: u32,
}

impl CosetSpace {
    /// Builds the integer side of the parameters without touching any field.
    pub fn new(p: u64, e: u32, n: u64, r: u64) -> CosetSpace {
        let nu = arith::valuation(p, n as i128);
        let n_prime = n / p.pow(nu);
        let modulus = n_prime * r;
        let q = p.pow(e);
        CosetSpace {
            p,
            e,
            n,
            modulus,
            r,
            q: q % modulus,
            top: p.pow(nu) as u32,
        }
    }

    pub fn q_full(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn nu(&self) -> u32 {
        arith::valuation(self.p, self.n as i128)
    }

    pub fn n_prime(&self) -> u64 {
        self.modulus / self.r
    }

    /// Residue of `s` modulo n'r.
    pub fn reduce(&self, s: i64) -> u64 {
        arith::modulo(s, self.modulus)
    }

    /// Residue class of `s` modulo r, the label of `s + rZ_{n'r}`.
    pub fn class_of(&self, s: i64) -> u64 {
        arith::modulo(s, self.r)
    }

    pub fn is_unit(&self, s: i64) -> bool {
        arith::gcd(self.reduce(s), self.modulus) == 1
    }

    fn require_unit(&self, s: i64) -> Result<u64> {
        if !self.is_unit(s) {
            return Err(Error::NotCoprime {
                s,
                modulus: self.modulus,
            });
        }
        Ok(self.reduce(s))
    }

    /// Minimal element of the q-orbit of `k`.
    pub fn rep_of(&self, k: u64) -> u64 {
        let k = k % self.modulus;
        let mut best = k;
        let mut x = arith::mul_mod(k, self.q, self.modulus);
        while x != k {
            best = best.min(x);
            x = arith::mul_mod(x, self.q, self.modulus);
        }
        best
    }

    /// Units of `Z_{n'r}` congruent to 1 mod r, ascending, as integers in `[1, n'r]`.
    pub fn multipliers(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.modulus)
            .filter(move |&s| s % self.r == 1 % self.r && arith::gcd(s, self.modulus) == 1)
    }

    /// Text form of the ambient set, e.g. `1+2Z_52`.
    pub fn class_label(&self, class: u64) -> String {
        format!("{}+{}Z_{}", class, self.r, self.modulus)
    }
}

/// A q-orbit on `s + rZ_{n'r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QCoset {
    /// `s mod r`
    pub class: u64,
    /// Sorted residues mod n'r.
    pub members: Vec<u64>,
    pub rep: u64,
}

impl QCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.members.binary_search(&k).is_ok()
    }
}

/// The q-cosets partitioning `s + rZ_{n'r}`, sorted by representative.
pub fn q_cosets(space: &CosetSpace, s: i64) -> Result<Vec<QCoset>> {
    space.require_unit(s)?;
    Ok(cosets_of_class(space, space.class_of(s)))
}

pub(crate) fn cosets_of_class(space: &CosetSpace, class: u64) -> Vec<QCoset> {
    let m = space.modulus;
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for k in (class..m).step_by(space.r as usize) {
        if seen[k as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut x = k;
        loop {
            seen[x as usize] = true;
            members.push(x);
            x = arith::mul_mod(x, space.q, m);
            if x == k {
                break;
            }
        }
        members.sort_unstable();
        out.push(QCoset {
            class,
            rep: members[0],
            members,
        });
    }
    out
}

/// Orbits of `Q ↦ sQ` on the given cosets of `1 + rZ_{n'r}`, each listed in
/// action order from its minimal representative.
pub fn s_orbits(space: &CosetSpace, s: i64, cosets: &[QCoset]) -> Result<Vec<Vec<QCoset>>> {
    let s_red = space.require_unit(s)?;
    if space.class_of(s) != 1 % space.r {
        return Err(Error::NotPreservingClass { s, r: space.r });
    }
    let index: BTreeMap<u64, usize> = cosets.iter().enumerate().map(|(i, c)| (c.rep, i)).collect();
    let mut order: Vec<usize> = (0..cosets.len()).collect();
    order.sort_by_key(|&i| cosets[i].rep);
    let mut seen = vec![false; cosets.len()];
    let mut orbits = Vec::new();
    for start in order {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(cosets[i].clone());
            let image = space.rep_of(arith::mul_mod(cosets[i].rep, s_red, space.modulus));
            i = *index.get(&image).ok_or_else(|| {
                Error::InvalidCosetFunction("coset list is not μ_s-stable".into())
            })?;
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// A map from the q-cosets of `class + rZ_{n'r}` to `[0, p^ν]`, keyed by
/// minimal representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetFunction {
    space: CosetSpace,
    class: u64,
    values: BTreeMap<u64, u32>,
}

impl fmt::Debug for CosetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ[{}]{{", self.space.class_label(self.class))?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}:{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for CosetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Serialized as `{"rep": value, ...}`.
impl serde::Serialize for CosetFunction {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl CosetFunction {
    /// Builds from `(rep, value)` pairs on the class of `s`; every coset must
    /// be assigned exactly once.
    pub fn new(
        space: &CosetSpace,
        s: i64,
        pairs: impl IntoIterator<Item = (u64, u32)>,
    ) -> Result<CosetFunction> {
        space.require_unit(s)?;
        let class = space.class_of(s);
        let reps: Vec<u64> = cosets_of_class(space, class)
            .iter()
            .map(|c| c.rep)
            .collect();
        let mut values = BTreeMap::new();
        for (k, v) in pairs {
            let k = k % space.modulus;
            if k % space.r != class {
                return Err(Error::InvalidCosetFunction(format!(
                    "{k} is not in {}",
                    space.class_label(class)
                )));
            }
            let rep = space.rep_of(k);
            if v > space.top {
                return Err(Error::InvalidCosetFunction(format!(
                    "value {v} exceeds p^ν = {}",
                    space.top
                )));
            }
            if values.insert(rep, v).is_some_and(|old| old != v) {
                return Err(Error::InvalidCosetFunction(format!(
                    "coset {rep} assigned twice"
                )));
            }
        }
        if values.len() != reps.len() {
            let missing: Vec<String> = reps
                .iter()
                .filter(|r| !values.contains_key(r))
                .map(u64::to_string)
                .collect();
            return Err(Error::InvalidCosetFunction(format!(
                "no value for coset(s) {}",
                missing.join(",")
            )));
        }
        Ok(CosetFunction {
            space: *space,
            class,
            values,
        })
    }

    /// `φ(Q) = f(Q)` on every coset of the class of `s`.
    pub fn from_fn(
        space: &CosetSpace,
        s: i64,
        f: impl Fn(&QCoset) -> u32,
    ) -> Result<CosetFunction> {
        let cosets = q_cosets(space, s)?;
        CosetFunction::new(space, s, cosets.iter().map(|c| (c.rep, f(c))))
    }

    pub fn constant(space: &CosetSpace, s: i64, value: u32) -> Result<CosetFunction> {
        CosetFunction::from_fn(space, s, |_| value)
    }

    /// Values listed in coset order, as used by exhaustive searches.
    pub(crate) fn from_values(
        space: &CosetSpace,
        class: u64,
        cosets: &[QCoset],
        vals: &[u32],
    ) -> CosetFunction {
        CosetFunction {
            space: *space,
            class,
            values: cosets.iter().zip(vals).map(|(c, &v)| (c.rep, v)).collect(),
        }
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    /// `s mod r` for the ambient set `s + rZ_{n'r}`.
    pub fn class(&self) -> u64 {
        self.class
    }

    pub fn values(&self) -> &BTreeMap<u64, u32> {
        &self.values
    }

    /// `φ(k)` for any member `k` of the ambient set.
    pub fn get(&self, k: u64) -> Option<u32> {
        self.values.get(&self.space.rep_of(k)).copied()
    }

    /// The cosets of this function's ambient set.
    pub fn cosets(&self) -> Vec<QCoset> {
        cosets_of_class(&self.space, self.class)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    /// `φ̄ = p^ν - φ`.
    pub fn complement(&self) -> CosetFunction {
        CosetFunction {
            space: self.space,
            class: self.class,
            values: self
                .values
                .iter()
                .map(|(&k, &v)| (k, self.space.top - v))
                .collect(),
        }
    }

    /// `(sφ)(k) = φ(s^{-1} k)` on `s·class + rZ_{n'r}`.
    pub fn act(&self, s: i64) -> Result<CosetFunction> {
        let sp = &self.space;
        let s_red = sp.require_unit(s)?;
        let s_inv = arith::inv_mod(s_red, sp.modulus).expect("unit");
        let class = arith::mul_mod(s_red % sp.r.max(1), self.class, sp.r);
        let values = cosets_of_class(sp, class)
            .into_iter()
            .map(|c| {
                let source = arith::mul_mod(s_inv, c.rep, sp.modulus);
                let v = self.get(source).expect("μ_s maps cosets onto cosets");
                (c.rep, v)
            })
            .collect();
        Ok(CosetFunction {
            space: *sp,
            class,
            values,
        })
    }

    fn same_domain(&self, other: &CosetFunction) -> Result<()> {
        if self.space != other.space || self.class != other.class {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// Pointwise minimum `φ ∩ φ'`.
    pub fn meet(&self, other: &CosetFunction) -> Result<CosetFunction> {
        self.same_domain(other)?;
        let values = self
            .values
            .iter()
            .map(|(&k, &v)| (k, v.min(other.values[&k])))
            .collect();
        Ok(CosetFunction {
            space: self.space,
            class: self.class,
            values,
        })
    }

    /// `φ ≤ φ'`, i.e. `φ ∩ φ' = φ`.
    pub fn leq(&self, other: &CosetFunction) -> Result<bool> {
        Ok(&self.meet(other)? == self)
    }

    /// Σ_Q φ(Q)·|Q|, the degree of `f_φ`.
    pub fn degree(&self) -> u64 {
        self.cosets()
            .iter()
            .map(|c| self.values[&c.rep] as u64 * c.len() as u64)
            .sum()
    }
}

/// `p, e, n, λ` with the integer data derived from them. Needs only GF(q),
/// so it exists even when the splitting field GF(q^d) is out of reach.
#[derive(Clone)]
pub struct BaseParams {
    space: CosetSpace,
    nu: u32,
    n_prime: u64,
    d: u32,
    base_field: Field,
    lambda: u64,
    lambda_prime: u64,
}

impl fmt::Debug for BaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p={}, e={}, n={}, λ={}, r={}, n'={}, ν={}, d={})",
            self.space.p,
            self.space.e,
            self.space.n,
            self.base_field.format_log(self.lambda),
            self.space.r,
            self.n_prime,
            self.nu,
            self.d
        )
    }
}

impl BaseParams {
    pub fn p(&self) -> u64 {
        self.space.p
    }

    pub fn e(&self) -> u32 {
        self.space.e
    }

    pub fn q(&self) -> u64 {
        self.base_field.size()
    }

    pub fn n(&self) -> usize {
        self.space.n as usize
    }

    pub fn r(&self) -> u64 {
        self.space.r
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn n_prime(&self) -> u64 {
        self.n_prime
    }

    /// n'r
    pub fn modulus(&self) -> u64 {
        self.space.modulus
    }

    /// p^ν
    pub fn top(&self) -> u32 {
        self.space.top
    }

    /// Order of q in `Z_{n'r}^*`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn base_field(&self) -> &Field {
        &self.base_field
    }

    pub fn lambda(&self) -> FieldElement {
        self.base_field.element(self.lambda)
    }

    pub fn lambda_raw(&self) -> u64 {
        self.lambda
    }

    /// The unique `λ'` in GF(q) with `λ'^{p^ν} = λ`.
    pub fn lambda_prime(&self) -> FieldElement {
        self.base_field.element(self.lambda_prime)
    }

    /// `λ^k` (raw), the constant of the ring `R_{n,λ^k}`.
    pub fn lambda_pow(&self, k: i64) -> u64 {
        self.base_field.pow_signed(self.lambda, k)
    }
}

/// [`BaseParams`] plus the splitting field GF(q^d) and the root θ.
#[derive(Clone)]
pub struct CodeParams {
    base: BaseParams,
    big_field: Field,
    embedding: Embedding,
    theta: u64,
    theta_log: u64,
}

impl std::ops::Deref for CodeParams {
    type Target = BaseParams;

    fn deref(&self) -> &BaseParams {
        &self.base
    }
}

impl fmt::Debug for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CodeParams{:?}", self.base)
    }
}

impl CodeParams {
    pub fn base(&self) -> &BaseParams {
        &self.base
    }

    pub fn big_field(&self) -> &Field {
        &self.big_field
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// The chosen primitive n'r-th root of unity in GF(q^d).
    pub fn theta(&self) -> FieldElement {
        self.big_field.element(self.theta)
    }

    /// Discrete log of θ to the canonical generator of GF(q^d).
    pub fn theta_log(&self) -> u64 {
        self.theta_log
    }

    /// `θ^k` (raw, in GF(q^d)).
    pub fn theta_pow(&self, k: u64) -> u64 {
        self.big_field.pow(self.theta, k % self.base.space.modulus)
    }
}

/// Derives `r, ν, n', d, λ'` from `(p, e, n, λ)` without building GF(q^d).
pub fn derive_base_params(p: u64, e: u32, n: u64, lambda: &FieldElement) -> Result<BaseParams> {
    let base_field = make_field(p, e)?;
    if lambda.field() != &base_field {
        return Err(Error::FieldMismatch);
    }
    if n == 0 {
        return Err(Error::Parse("length n must be positive".into()));
    }
    if lambda.is_zero() {
        return Err(Error::LambdaNotUnit);
    }
    let r = lambda.mult_order()?;
    let space = CosetSpace::new(p, e, n, r);
    let nu = space.nu();
    Ok(BaseParams {
        space,
        nu,
        n_prime: space.n_prime(),
        d: arith::mult_order_mod(space.q, space.modulus) as u32,
        lambda_prime: base_field.frobenius(lambda.value(), -(nu as i64)),
        base_field,
        lambda: lambda.value(),
    })
}

/// Derives every parameter, including θ: the element of order n'r in GF(q^d)
/// with `θ^n = λ` whose discrete log to the canonical generator is smallest.
pub fn derive_params(p: u64, e: u32, n: u64, lambda: &FieldElement) -> Result<Arc<CodeParams>> {
    let base = derive_base_params(p, e, n, lambda)?;
    let space = base.space;
    let big_field = make_field(p, e * base.d)?;
    let embedding = Embedding::new(&base.base_field, &big_field)?;
    let lambda_big = embedding.embed_raw(lambda.value());

    let step = (big_field.size() - 1) / space.modulus;
    let root = big_field.gen_pow(step as i64);
    let mut theta_found = None;
    let mut x = 1u64;
    for j in 1..=space.modulus {
        x = big_field.mul(x, root);
        if arith::gcd(j % space.modulus, space.modulus) != 1 {
            continue;
        }
        if big_field.pow(x, n) == lambda_big {
            theta_found = Some((x, j * step));
            break;
        }
    }
    let (theta, theta_log) = theta_found.ok_or(Error::NotGaloisStable)?;
    Ok(Arc::new(CodeParams {
        base,
        big_field,
        embedding,
        theta,
        theta_log,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, e: u32, n: u64, lambda: &str) -> Arc<CodeParams> {
        let f = make_field(p, e).unwrap();
        derive_params(p, e, n, &f.parse_element(lambda).unwrap()).unwrap()
    }

    #[test]
    fn derived_values_of_reference_instances() {
        let ex1 = params(2, 2, 2, "g^2");
        assert_eq!(
            (ex1.r(), ex1.nu(), ex1.n_prime(), ex1.modulus(), ex1.d()),
            (3, 1, 1, 3, 1)
        );
        let ex2 = params(3, 4, 12, "g^60");
        assert_eq!(
            (ex2.r(), ex2.nu(), ex2.n_prime(), ex2.modulus()),
            (4, 1, 4, 16)
        );
        let ex4 = params(5, 2, 26, "-1");
        assert_eq!(
            (ex4.r(), ex4.nu(), ex4.n_prime(), ex4.modulus(), ex4.d()),
            (2, 0, 26, 52, 2)
        );
    }

    #[test]
    fn theta_invariants() {
        for (p, e, n, l) in [
            (2, 2, 2, "g^2"),
            (3, 4, 12, "g^60"),
            (5, 2, 26, "-1"),
            (3, 2, 4, "-1"),
            (2, 1, 7, "1"),
            (3, 1, 10, "-1"),
        ] {
            let pr = params(p, e, n, l);
            let emb = pr.embedding();
            let t = pr.theta();
            assert_eq!(t.mult_order().unwrap(), pr.modulus());
            assert_eq!(
                t.pow(n as i64).unwrap().value(),
                emb.embed_raw(pr.lambda_raw())
            );
            assert_eq!(
                t.pow(pr.n_prime() as i64).unwrap().value(),
                emb.embed_raw(pr.lambda_prime().value())
            );
            let lp = pr.lambda_prime();
            assert_eq!(lp.pow(pr.top() as i64).unwrap(), pr.lambda());
            assert_eq!(pr.theta().log().unwrap(), pr.theta_log());
        }
    }

    #[test]
    fn lambda_zero_rejected() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(
            derive_params(3, 1, 4, &f.zero()).unwrap_err(),
            Error::LambdaNotUnit
        );
    }

    #[test]
    fn gf25_negacyclic_length26_coset_table() {
        let pr = params(5, 2, 26, "-1");
        let cosets = q_cosets(pr.space(), 1).unwrap();
        let table: Vec<Vec<u64>> = cosets.iter().map(|c| c.members.clone()).collect();
        let expected: Vec<Vec<u64>> = vec![
            vec![1, 25],
            vec![3, 23],
            vec![5, 21],
            vec![7, 19],
            vec![9, 17],
            vec![11, 15],
            vec![13],
            vec![27, 51],
            vec![29, 49],
            vec![31, 47],
            vec![33, 45],
            vec![35, 43],
            vec![37, 41],
            vec![39],
        ];
        assert_eq!(table, expected);
        assert_eq!(cosets.iter().map(QCoset::len).sum::<usize>(), 26);
    }

    #[test]
    fn gf25_negacyclic_length26_orbits() {
        let pr = params(5, 2, 26, "-1");
        let sp = pr.space();
        let cosets = q_cosets(sp, 1).unwrap();
        let reps = |s: i64| -> Vec<Vec<u64>> {
            s_orbits(sp, s, &cosets)
                .unwrap()
                .iter()
                .map(|o| o.iter().map(|c| c.rep).collect())
                .collect()
        };
        assert_eq!(
            reps(-1),
            vec![
                vec![1, 27],
                vec![3, 29],
                vec![5, 31],
                vec![7, 33],
                vec![9, 35],
                vec![11, 37],
                vec![13, 39]
            ]
        );
        let mut minus5 = reps(-5);
        for o in minus5.iter_mut() {
            o.sort_unstable();
        }
        let mut expected = vec![
            vec![1, 31],
            vec![3, 37],
            vec![5, 27],
            vec![7, 9],
            vec![11, 29],
            vec![33, 35],
            vec![13, 39],
        ];
        minus5.sort();
        expected.sort();
        assert_eq!(minus5, expected);
        assert!(reps(1).iter().all(|o| o.len() == 1));
        assert_eq!(
            s_orbits(sp, 2, &cosets).unwrap_err(),
            Error::NotCoprime { s: 2, modulus: 52 }
        );
        let ex2 = params(3, 4, 12, "g^60");
        let c2 = q_cosets(ex2.space(), 1).unwrap();
        let err = s_orbits(ex2.space(), 3, &c2).unwrap_err();
        assert_eq!(err, Error::NotPreservingClass { s: 3, r: 4 });
    }

    #[test]
    fn gf81_length12_singletons_and_calculus() {
        let pr = params(3, 4, 12, "g^60");
        let sp = pr.space();
        let cosets = q_cosets(sp, 1).unwrap();
        assert_eq!(
            cosets.iter().map(|c| c.rep).collect::<Vec<_>>(),
            vec![1, 5, 9, 13]
        );
        assert!(cosets.iter().all(|c| c.len() == 1));
        let phi = CosetFunction::new(sp, 1, [(1, 1), (5, 2), (9, 1), (13, 2)]).unwrap();
        let bar = phi.complement();
        assert_eq!(
            bar.values().values().copied().collect::<Vec<_>>(),
            vec![2, 1, 2, 1]
        );
        assert_eq!(phi.act(-3).unwrap(), bar);
        assert_eq!(bar.complement(), phi);
        let meet = phi.meet(&bar).unwrap();
        assert_eq!(
            meet.values().values().copied().collect::<Vec<_>>(),
            vec![1, 1, 1, 1]
        );
        assert!(CosetFunction::constant(sp, 1, 0)
            .unwrap()
            .leq(&phi)
            .unwrap());
        assert_eq!(phi.meet(&phi).unwrap(), phi);
        assert_eq!(phi.act(1).unwrap(), phi);
        assert_eq!(phi.act(81).unwrap(), phi);
    }

    #[test]
    fn coset_function_validation() {
        let pr = params(3, 4, 12, "g^60");
        let sp = pr.space();
        assert!(CosetFunction::new(sp, 1, [(1, 1), (5, 2), (9, 1)]).is_err());
        assert!(CosetFunction::new(sp, 1, [(1, 1), (5, 2), (9, 1), (13, 4)]).is_err());
        assert!(CosetFunction::new(sp, 1, [(1, 1), (5, 2), (9, 1), (3, 1)]).is_err());
        assert!(CosetFunction::new(sp, 2, []).is_err());
        let other = params(3, 2, 4, "-1");
        let a = CosetFunction::constant(sp, 1, 1).unwrap();
        let b = CosetFunction::constant(other.space(), 1, 1).unwrap();
        assert_eq!(a.meet(&b).unwrap_err(), Error::DomainMismatch);
    }

    #[test]
    fn binary_complement_and_trivial_cosets() {
        let pr = params(3, 2, 4, "-1");
        let sp = pr.space();
        let phi = CosetFunction::new(sp, 1, [(1, 0), (3, 0), (5, 1), (7, 1)]).unwrap();
        assert_eq!(
            phi.complement()
                .values()
                .values()
                .copied()
                .collect::<Vec<_>>(),
            vec![1, 1, 0, 0]
        );
        // q = 9 ≡ 1 mod 8: every coset is a singleton
        assert!(q_cosets(sp, 1).unwrap().iter().all(|c| c.len() == 1));
        assert_eq!(phi.act(-1).unwrap(), phi.complement());
        assert_eq!(phi.act(-3).unwrap(), phi.complement());
    }

    #[test]
    fn translated_classes() {
        let pr = params(5, 2, 26, "-1");
        let sp = pr.space();
        let phi = CosetFunction::constant(sp, 1, 1).unwrap();
        // r = 2, so every unit class is 1 mod 2
        assert_eq!(phi.act(-1).unwrap().class(), 1);
        let pr = params(3, 4, 12, "g^60");
        let phi = CosetFunction::new(pr.space(), 1, [(1, 1), (5, 2), (9, 1), (13, 2)]).unwrap();
        let moved = phi.act(3).unwrap();
        assert_eq!(moved.class(), 3);
        assert_eq!(
            moved.cosets().iter().map(|c| c.rep).collect::<Vec<_>>(),
            vec![3, 7, 11, 15]
        );
        assert_eq!(moved.act(11).unwrap(), phi);
    }
}
