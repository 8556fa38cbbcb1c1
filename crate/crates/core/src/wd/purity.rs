use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{fmt_q, q_int, q_pow, root_moduli_certified, FieldDescriptor, ModulusInterval, Poly, Q, Scalar};
use crate::error::{Error, Result};

use super::filtration::jordan_basis;
use super::rep::WDRep;

/// Number of times the interval width is halved before giving up.
const ESCALATIONS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    Given(i64),
    Infer,
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "infer" {
            return Ok(WeightSpec::Infer);
        }
        s.parse()
            .map(WeightSpec::Given)
            .map_err(|_| Error::parse("--weight", format!("expected an integer or \"infer\", got {s:?}")))
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Given(w) => write!(f, "{w}"),
            WeightSpec::Infer => f.write_str("infer"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PurityVerdict {
    Pure,
    Impure,
    Uncertifiable,
}

impl PurityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            PurityVerdict::Pure => "pure",
            PurityVerdict::Impure => "impure",
            PurityVerdict::Uncertifiable => "uncertifiable",
        }
    }
}

impl FromStr for PurityVerdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(PurityVerdict::Pure),
            "impure" => Ok(PurityVerdict::Impure),
            "uncertifiable" => Ok(PurityVerdict::Uncertifiable),
            _ => Err(Error::parse("verdict", format!("unknown purity verdict {s:?}"))),
        }
    }
}

/// Frobenius on one monodromy-graded piece `gr_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPurity {
    pub k: i64,
    pub dim: usize,
    /// Charpoly over the coefficient field.
    pub charpoly: Poly<Scalar>,
    /// The weight `w + k` the roots must have, when `w` is known.
    pub target_weight: Option<i64>,
    /// Certified moduli of the roots of the charpoly over Q (the norm, for
    /// number fields); empty when no target was available.
    pub moduli: Vec<ModulusInterval>,
    pub pure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    pub weight: Option<i64>,
    pub per_graded: Vec<GradedPurity>,
    pub verdict: PurityVerdict,
}

impl PurityReport {
    pub fn uncertifiable() -> Self {
        Self {
            weight: None,
            per_graded: Vec::new(),
            verdict: PurityVerdict::Uncertifiable,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.verdict == PurityVerdict::Pure
    }
}

/// `Some(m)` with `x = q^m`.
pub fn log_q_exact(x: &Q, q: u64) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let q = BigInt::from(q);
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let mut m = 0i64;
    while !num.is_one() {
        if !(num.clone() % &q).is_zero() {
            return None;
        }
        num /= &q;
        m += 1;
    }
    while !den.is_one() {
        if !(den.clone() % &q).is_zero() {
            return None;
        }
        den /= &q;
        m -= 1;
    }
    Some(m)
}

enum RootClass {
    Good,
    Bad,
    Ambiguous,
}

fn classify(iv: &ModulusInterval, q: &Q, j: i64) -> RootClass {
    if !iv.contains_sqrt(&q_pow(q, j)) {
        return RootClass::Bad;
    }
    if iv.contains_sqrt(&q_pow(q, j - 1)) || iv.contains_sqrt(&q_pow(q, j + 1)) {
        return RootClass::Ambiguous;
    }
    RootClass::Good
}

/// Certifies that every root of `p` has modulus `q^{j/2}`, shrinking the
/// intervals up to [`ESCALATIONS`] times when a neighbouring candidate
/// `q^{(j±1)/2}` cannot be excluded.
fn check_weight(p: &Poly<Q>, q: u64, j: i64, eps: &Q) -> Result<(Vec<ModulusInterval>, bool)> {
    let qq = q_int(q as i64);
    let mut eps = eps.clone();
    for attempt in 0..=ESCALATIONS {
        let moduli = root_moduli_certified(p, &eps)?;
        let mut ambiguous = false;
        let mut bad = false;
        for iv in &moduli {
            match classify(iv, &qq, j) {
                RootClass::Good => {}
                RootClass::Bad => bad = true,
                RootClass::Ambiguous => ambiguous = true,
            }
        }
        if bad {
            return Ok((moduli, false));
        }
        if !ambiguous {
            return Ok((moduli, true));
        }
        if attempt < ESCALATIONS {
            eps /= q_int(2);
        }
    }
    Err(Error::CertificationFailed { eps: fmt_q(&eps) })
}

fn to_rational(p: &Poly<Scalar>) -> Poly<Q> {
    p.map(|s| s.as_rational().cloned().expect("charpoly of a rational matrix"))
}

/// Checks that Frobenius on each graded piece `gr_k` of the monodromy
/// filtration has all eigenvalues of absolute value `q^{(w+k)/2}`.
///
/// With [`WeightSpec::Infer`] the weight is read off `|det|` on each piece;
/// pieces whose determinant is not a power of `q`, or that disagree, make
/// the representation impure, and a non-integral value is an error.
pub fn purity_check(rho: &WDRep, weight: WeightSpec, eps: &Q) -> Result<PurityReport> {
    if *rho.field() == FieldDescriptor::Qt {
        return Err(Error::PurityOverFunctionField(rho.field().name()));
    }
    let q = rho.q();
    let jb = jordan_basis(rho.nilp())?;
    let phi = jb.basis.inverse()?.mul(rho.phi()).mul(&jb.basis);
    let s = jb.max_chain() as i64;
    let mut pieces = Vec::new();
    for k in (1 - s)..s {
        let idx = jb.weight_indices(k);
        if idx.is_empty() {
            continue;
        }
        let block = phi.select(&idx, &idx);
        let charpoly = block.charpoly()?;
        let norm = to_rational(&block.restrict_scalars().charpoly()?);
        pieces.push((k, idx.len(), charpoly, norm));
    }

    let w = match weight {
        WeightSpec::Given(w) => Some(w),
        WeightSpec::Infer => infer_weight(&pieces, q)?,
    };
    let mut per_graded = Vec::new();
    let mut pure = true;
    for (k, dim, charpoly, norm) in pieces {
        let (target_weight, moduli, ok) = match w {
            Some(w) => {
                let (moduli, ok) = check_weight(&norm, q, w + k, eps)?;
                (Some(w + k), moduli, ok)
            }
            None => (None, Vec::new(), false),
        };
        pure &= ok;
        per_graded.push(GradedPurity {
            k,
            dim,
            charpoly,
            target_weight,
            moduli,
            pure: ok,
        });
    }
    let verdict = if pure { PurityVerdict::Pure } else { PurityVerdict::Impure };
    let weight = match weight {
        WeightSpec::Given(w) => Some(w),
        WeightSpec::Infer if pure => w,
        WeightSpec::Infer => None,
    };
    Ok(PurityReport {
        weight,
        per_graded,
        verdict,
    })
}

/// `Ok(None)` when no consistent candidate exists.
fn infer_weight(pieces: &[(i64, usize, Poly<Scalar>, Poly<Q>)], q: u64) -> Result<Option<i64>> {
    let mut found: Option<i64> = None;
    let mut consistent = true;
    for (k, _, _, norm) in pieces {
        let deg = norm.degree().unwrap_or(0) as i64;
        let c0 = norm.coeff(0);
        let Some(m) = log_q_exact(&(&c0 * &c0), q) else {
            return Ok(None);
        };
        if m % deg != 0 {
            return Err(Error::NonIntegralWeight(format!("{}/{} - {}", m, deg, k)));
        }
        let w = m / deg - k;
        match found {
            None => found = Some(w),
            Some(f) if f != w => consistent = false,
            _ => {}
        }
    }
    Ok(if consistent { found } else { None })
}
