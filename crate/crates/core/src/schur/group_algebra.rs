use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::partition::Partition;
use crate::algebra::{fmt_q, Q};

/// A permutation of `{0, .., d-1}` stored by images: `self.0[i] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d).collect())
    }

    /// Panics unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    /// Builds from 1-indexed cycles, e.g. `&[&[1, 3, 2]]`.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Self {
        let mut img: Vec<usize> = (0..d).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                img[a - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// All permutations of `points`, as permutations of `0..d` fixing the rest.
    fn all_on(d: usize, points: &[usize]) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut arr = points.to_vec();
        permute(&mut arr, 0, &mut |arrangement| {
            let mut img: Vec<usize> = (0..d).collect();
            for (src, &dst) in points.iter().zip(arrangement) {
                img[*src] = dst;
            }
            out.push(Perm(img));
        });
        out
    }
}

fn permute(arr: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == arr.len() {
        visit(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, visit);
        arr.swap(k, i);
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, 1-indexed, fixed points omitted; `e` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i];
            }
            out.push_str(&format!("({})", cyc.join(" ")));
        }
        if out.is_empty() {
            out.push('e');
        }
        f.write_str(&out)
    }
}

/// A finitely supported element of Q[S_d]. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    d: usize,
    terms: BTreeMap<Perm, Q>,
}

impl GroupAlgebraElement {
    pub fn zero(d: usize) -> Self {
        Self { d, terms: BTreeMap::new() }
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Perm, Q)>) -> Self {
        let mut out = Self::zero(d);
        for (p, c) in terms {
            assert_eq!(p.degree(), d);
            out.add_term(p, c);
        }
        out
    }

    pub fn identity(d: usize) -> Self {
        Self::from_terms(d, [(Perm::identity(d), Q::one())])
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Q> {
        &self.terms
    }

    pub fn coeff(&self, p: &Perm) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, p: Perm, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.d, self.terms.iter().map(|(p, v)| (p.clone(), v * c)))
    }

    /// Product with `(σ·τ)(i) = σ(τ(i))`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Perm, Q> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &o.terms {
                *acc.entry(s.compose(t)).or_insert_with(Q::zero) += a * b;
            }
        }
        Self::from_terms(self.d, acc)
    }

    /// `Some(λ)` when `self = λ·other`.
    pub fn ratio_to(&self, other: &Self) -> Option<Q> {
        let (p, c) = other.terms.iter().next()?;
        let lambda = self.coeff(p) / c;
        (self == &other.scale(&lambda)).then_some(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| if c.is_one() { p.to_string() } else { format!("{}*{}", fmt_q(c), p) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The Young symmetrizer of a partition and its scalar `n_μ` with
/// `c_μ^2 = n_μ c_μ`.
#[derive(Clone, Debug)]
pub struct YoungSymmetrizer {
    pub mu: Partition,
    pub c: GroupAlgebraElement,
    pub n_mu: u64,
}

/// Rows and columns of the canonical tableau (filled `0..d` row by row).
fn tableau(mu: &Partition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rows = Vec::new();
    let mut next = 0;
    for &p in mu.parts() {
        rows.push((next..next + p).collect::<Vec<_>>());
        next += p;
    }
    let cols = (0..mu.parts()[0])
        .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    (rows, cols)
}

fn product_group(d: usize, blocks: &[Vec<usize>]) -> Vec<Perm> {
    let mut group = vec![Perm::identity(d)];
    for b in blocks.iter().filter(|b| b.len() > 1) {
        let factor = Perm::all_on(d, b);
        group = group
            .iter()
            .flat_map(|g| factor.iter().map(move |h| g.compose(h)))
            .collect();
    }
    group
}

/// `c_μ = a_μ · b_μ` for the row-major tableau, with `a_μ` the sum over
/// row-preserving and `b_μ` the signed sum over column-preserving
/// permutations. `n_μ` is found by squaring and cross-checked against the
/// hook-length product.
pub fn young_symmetrizer(mu: &Partition) -> YoungSymmetrizer {
    let d = mu.size();
    let (rows, cols) = tableau(mu);
    let a = GroupAlgebraElement::from_terms(d, product_group(d, &rows).into_iter().map(|p| (p, Q::one())));
    let b = GroupAlgebraElement::from_terms(
        d,
        product_group(d, &cols).into_iter().map(|p| {
            let s = p.sign();
            (p, Q::from_integer(s.into()))
        }),
    );
    let c = a.mul(&b);
    let n = c
        .mul(&c)
        .ratio_to(&c)
        .expect("Young symmetrizer squared is not a multiple of itself");
    assert!(n.is_integer() && n > Q::zero(), "n_mu = {n} is not a positive integer");
    let n_mu: u64 = n.to_integer().try_into().expect("n_mu overflows u64");
    assert_eq!(
        num_bigint::BigInt::from(n_mu),
        mu.hook_product(),
        "n_mu disagrees with d!/dim(Specht)"
    );
    YoungSymmetrizer { mu: mu.clone(), c, n_mu }
}
