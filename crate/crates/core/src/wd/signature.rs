use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Field, Mat, Poly, Q, Scalar};
use crate::error::{Error, Result};

use super::filtration::jordan_basis;
use super::rep::WDRep;

/// Data attached to one chain length `t`: Frobenius charpoly on the chain
/// bottoms, and the trace of each inertia generator there.
#[derive(Clone, Debug)]
pub struct SignatureEntry {
    pub charpoly: Poly<Scalar>,
    pub inertia_traces: BTreeMap<String, Scalar>,
}

impl SignatureEntry {
    pub fn new(charpoly: Poly<Scalar>) -> Self {
        Self {
            charpoly,
            inertia_traces: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.charpoly.degree().unwrap_or(0)
    }

    /// Trace of `label`, where a missing label acts as the identity.
    pub fn trace(&self, label: &str) -> Scalar {
        self.inertia_traces
            .get(label)
            .cloned()
            .unwrap_or_else(|| Scalar::from_i64(self.degree() as i64))
    }

    fn merge(&self, o: &Self) -> Self {
        let mut traces = BTreeMap::new();
        for l in self.inertia_traces.keys().chain(o.inertia_traces.keys()) {
            traces.insert(l.clone(), &self.trace(l) + &o.trace(l));
        }
        Self {
            charpoly: &self.charpoly * &o.charpoly,
            inertia_traces: traces,
        }
    }
}

/// A label recorded on one side only must have trace equal to the degree
/// on the other: an element of finite order with that trace is the identity.
impl PartialEq for SignatureEntry {
    fn eq(&self, o: &Self) -> bool {
        self.charpoly == o.charpoly
            && self
                .inertia_traces
                .keys()
                .chain(o.inertia_traces.keys())
                .all(|l| self.trace(l) == o.trace(l))
    }
}

impl Eq for SignatureEntry {}

/// Decomposition data `⊕ Sp_t(r_t)` of a Frobenius-semisimple
/// representation, keyed by `t`. Several summands with the same `t` are
/// stored as one entry whose charpoly is the product, so a multiset union
/// is a merge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    entries: BTreeMap<usize, SignatureEntry>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Poly<Scalar>)>) -> Self {
        let mut s = Self::new();
        for (t, p) in pairs {
            s.insert(t, SignatureEntry::new(p));
        }
        s
    }

    pub fn insert(&mut self, t: usize, entry: SignatureEntry) {
        assert!(t >= 1, "chain length must be positive");
        let merged = match self.entries.get(&t) {
            Some(e) => e.merge(&entry),
            None => entry,
        };
        self.entries.insert(t, merged);
    }

    pub fn entries(&self) -> &BTreeMap<usize, SignatureEntry> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ t · deg(charpoly)`.
    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(|(t, e)| t * e.degree()).sum()
    }

    pub fn union(&self, o: &Signature) -> Signature {
        let mut out = self.clone();
        for (&t, e) in &o.entries {
            out.insert(t, e.clone());
        }
        out
    }

    /// Evaluates every coefficient at `t = a`.
    pub fn specialize(&self, a: &Q) -> Result<Signature> {
        let ev = |s: &Scalar| s.eval_at(a).ok_or_else(|| Error::DenominatorVanishes(crate::algebra::fmt_q(a)));
        let mut out = Signature::new();
        for (&t, e) in &self.entries {
            let charpoly = e.charpoly.try_map(ev)?;
            let inertia_traces = e
                .inertia_traces
                .iter()
                .map(|(l, s)| Ok((l.clone(), ev(s)?)))
                .collect::<Result<_>>()?;
            out.insert(t, SignatureEntry { charpoly, inertia_traces });
        }
        Ok(out)
    }
}

/// Renders a polynomial in `x`, highest degree first, e.g. `x^2 - 6/5*x + 1/5`.
/// Coefficients outside Q are parenthesized.
pub fn fmt_charpoly(p: &Poly<Scalar>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = match c {
            Scalar::Rat(r) if r < &Q::zero() => (true, Scalar::Rat(-r.clone())),
            _ => (false, c.clone()),
        };
        let coef = match &body {
            Scalar::Rat(_) => body.to_string(),
            other => format!("({other})"),
        };
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        let term = match (k, body.is_one()) {
            (0, _) => coef,
            (_, true) => mono,
            _ => format!("{coef}*{mono}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Signature {
    /// One line per entry: `Sp_t of <charpoly>` followed by inertia traces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, e) in &self.entries {
            write!(f, "Sp_{t} of {}", fmt_charpoly(&e.charpoly))?;
            for (l, tr) in &e.inertia_traces {
                write!(f, "; tr {l} = {tr}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The signature `{(k+1, charpoly of Frobenius on P_k)}` with
/// `P_k = (ker N ∩ im N^k) / (ker N ∩ im N^{k+1})`.
///
/// In a Jordan basis of `N`, `P_k` is spanned by the bottoms of the chains
/// of length exactly `k+1`. Charpolys of induced maps on subquotients do not
/// change under Frobenius-semisimplification, so `phi` is used as given.
pub fn frss_signature(rho: &WDRep) -> Result<Signature> {
    let jb = jordan_basis(rho.nilp())?;
    let b = &jb.basis;
    let binv = b.inverse()?;
    let conj = |m: &Mat| binv.mul(m).mul(b);
    let phi = conj(rho.phi());
    let gens: Vec<(String, Mat)> = rho
        .inertia()
        .iter()
        .map(|g| (g.label.clone(), conj(&g.matrix)))
        .collect();
    let mut sig = Signature::new();
    for len in 1..=jb.max_chain() {
        let tails = jb.tails_of_length(len);
        if tails.is_empty() {
            continue;
        }
        let charpoly = phi.select(&tails, &tails).charpoly()?;
        let inertia_traces = gens
            .iter()
            .map(|(l, g)| (l.clone(), g.select(&tails, &tails).trace()))
            .collect();
        sig.insert(len, SignatureEntry { charpoly, inertia_traces });
    }
    Ok(sig)
}
