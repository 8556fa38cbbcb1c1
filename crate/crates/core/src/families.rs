//! Weil-Deligne representations over Q(t), their specializations at
//! rational points, purity scans and rigidity verdicts.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{fmt_q, FieldDescriptor, Q};
use crate::error::{Error, Result};
use crate::schur::Partition;
use crate::wd::{
    enumerate_closure, frss_signature, purity_check, wd_schur, wd_validate, InertiaGen, PurityReport, Signature,
    WDRep, WeightSpec, INERTIA_CLOSURE_CAP,
};

/// A valid Weil-Deligne representation with coefficients in Q(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyWDRep(WDRep);

impl FamilyWDRep {
    pub fn new(rho: WDRep) -> Result<Self> {
        if *rho.field() != FieldDescriptor::Qt {
            return Err(Error::InvalidField(format!("a family must live over Q(t), not {}", rho.field())));
        }
        wd_validate(&rho).map_err(Error::Validation)?;
        Ok(Self(rho))
    }

    pub fn rep(&self) -> &WDRep {
        &self.0
    }

    pub fn into_rep(self) -> WDRep {
        self.0
    }
}

/// Evaluates every entry at `t = a`, giving a representation over Q.
pub fn specialize(rho: &WDRep, a: &Q) -> Result<WDRep> {
    let ev = |m: &crate::algebra::Mat| {
        m.try_map(FieldDescriptor::Q, |s| {
            s.eval_at(a).ok_or_else(|| Error::DenominatorVanishes(fmt_q(a)))
        })
    };
    let phi = ev(rho.phi())?;
    if phi.det()?.is_zero() {
        return Err(Error::SingularFrobenius(fmt_q(a)));
    }
    let nilp = ev(rho.nilp())?;
    let inertia = rho
        .inertia()
        .iter()
        .map(|g| {
            Ok(InertiaGen {
                label: g.label.clone(),
                matrix: ev(&g.matrix)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WDRep::new(rho.q(), FieldDescriptor::Q, phi, nilp, inertia))
}

/// The integers `-25..=25`.
pub fn default_points() -> Vec<Q> {
    (-25..=25).map(|a| Q::from_integer(a.into())).collect()
}

/// Scan results at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    pub a: Q,
    /// False when the specialization does not exist.
    pub defined: bool,
    /// Purity of the specialized representation itself: the hypothesis
    /// under which its Schur image must match the generic signature.
    pub purity: Option<PurityReport>,
    /// Purity of the specialized Schur image.
    pub image_purity: Option<PurityReport>,
    pub signature: Option<Signature>,
    pub error: Option<String>,
}

impl PointReport {
    pub fn is_pure(&self) -> bool {
        self.purity.as_ref().is_some_and(PurityReport::is_pure)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    Pass,
    Fail,
    Vacuous,
}

impl RigidityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            RigidityVerdict::Pass => "pass",
            RigidityVerdict::Fail => "fail",
            RigidityVerdict::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for RigidityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RigidityVerdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(RigidityVerdict::Pass),
            "fail" => Ok(RigidityVerdict::Fail),
            "vacuous" => Ok(RigidityVerdict::Vacuous),
            _ => Err(Error::parse("verdict", format!("unknown rigidity verdict {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub mu: Partition,
    pub weight: WeightSpec,
    pub generic_signature: Signature,
    pub points: Vec<PointReport>,
    pub verdict: Option<RigidityVerdict>,
    pub failures: Vec<Q>,
}

fn purity_or_uncertifiable(rho: &WDRep, weight: WeightSpec, eps: &Q) -> Result<PurityReport> {
    match purity_check(rho, weight, eps) {
        Err(Error::CertificationFailed { .. }) => Ok(PurityReport::uncertifiable()),
        Err(Error::NonIntegralWeight(_)) => Ok(PurityReport {
            weight: None,
            per_graded: Vec::new(),
            verdict: crate::wd::PurityVerdict::Impure,
        }),
        other => other,
    }
}

fn scan_point(base: &WDRep, mu: &Partition, a: &Q, weight: WeightSpec, eps: &Q) -> PointReport {
    let mut out = PointReport {
        a: a.clone(),
        defined: false,
        purity: None,
        image_purity: None,
        signature: None,
        error: None,
    };
    let run = |out: &mut PointReport| -> Result<()> {
        let rho = specialize(base, a)?;
        out.defined = true;
        let purity = purity_or_uncertifiable(&rho, weight, eps)?;
        let image = wd_schur(&rho, mu)?;
        let image_weight = match purity.weight {
            Some(w) if purity.is_pure() => WeightSpec::Given(w * mu.size() as i64),
            _ => WeightSpec::Infer,
        };
        out.purity = Some(purity);
        out.image_purity = Some(purity_or_uncertifiable(&image, image_weight, eps)?);
        out.signature = Some(frss_signature(&image)?);
        Ok(())
    };
    if let Err(e) = run(&mut out) {
        out.error = Some(e.to_string());
    }
    out
}

/// Computes the generic signature of `S_μ(fam)` over Q(t), then at each
/// point specializes, applies `S_μ`, checks purity and records the
/// signature. Points are deduplicated and sorted; per-point failures are
/// recorded, never propagated. The verdict is left unset.
pub fn purity_scan(
    fam: &FamilyWDRep,
    mu: &Partition,
    points: &[Q],
    weight: WeightSpec,
    eps: &Q,
) -> Result<RigidityReport> {
    let generic = wd_schur(fam.rep(), mu)?;
    let generic_signature = frss_signature(&generic)?;
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let reports = pts
        .par_iter()
        .map(|a| scan_point(fam.rep(), mu, a, weight, eps))
        .collect();
    Ok(RigidityReport {
        mu: mu.clone(),
        weight,
        generic_signature,
        points: reports,
        verdict: None,
        failures: Vec::new(),
    })
}

/// Pass iff every pure point's signature equals the generic signature
/// specialized at that point. Impure, uncertifiable and undefined points
/// are exempt; with no pure point the verdict is vacuous.
pub fn rigidity_check(report: &RigidityReport) -> RigidityReport {
    let mut failures = Vec::new();
    let mut pure_points = 0;
    for p in report.points.iter().filter(|p| p.is_pure()) {
        pure_points += 1;
        let expected = report.generic_signature.specialize(&p.a).ok();
        if expected.is_none() || expected != p.signature {
            failures.push(p.a.clone());
        }
    }
    let verdict = if !failures.is_empty() {
        RigidityVerdict::Fail
    } else if pure_points == 0 {
        RigidityVerdict::Vacuous
    } else {
        RigidityVerdict::Pass
    };
    RigidityReport {
        verdict: Some(verdict),
        failures,
        ..report.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceLink {
    Equal,
    /// The first word, e.g. `phi^2·g`, on which the traces differ.
    Differs(String),
}

fn word_name(k: usize, word: &[usize], labels: &[String]) -> String {
    let mut s = format!("phi^{k}");
    for &i in word {
        s.push('·');
        s.push_str(&labels[i]);
    }
    s
}

/// Compares `tr(phi^k g)` for `1 ≤ k ≤ max_word_len` and `g` running over
/// the inertia group, the two inertia actions being matched by label.
pub fn trace_link_check(f1: &FamilyWDRep, f2: &FamilyWDRep, max_word_len: usize) -> Result<TraceLink> {
    let (a, b) = (f1.rep(), f2.rep());
    if a.q() != b.q() {
        return Err(Error::MismatchedQ(a.q(), b.q()));
    }
    let mut la: Vec<&str> = a.labels();
    let mut lb: Vec<&str> = b.labels();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return Err(Error::InertiaLabelMismatch(format!("[{}] vs [{}]", la.join(", "), lb.join(", "))));
    }
    let labels: Vec<String> = a.labels().into_iter().map(String::from).collect();
    let gens: Vec<_> = labels
        .iter()
        .map(|l| (a.inertia_matrix(l).unwrap().clone(), b.inertia_matrix(l).unwrap().clone()))
        .collect();
    let identity = (
        crate::algebra::Mat::identity(a.dim(), a.field().clone()),
        crate::algebra::Mat::identity(b.dim(), b.field().clone()),
    );
    let group = enumerate_closure(identity, &gens, |x, y| (x.0.mul(&y.0), x.1.mul(&y.1)), INERTIA_CLOSURE_CAP)
        .ok_or_else(|| Error::DimensionMismatch(format!("joint inertia group exceeds {INERTIA_CLOSURE_CAP} elements")))?;
    let (mut pa, mut pb) = (identity_of(a), identity_of(b));
    for k in 1..=max_word_len {
        pa = pa.mul(a.phi());
        pb = pb.mul(b.phi());
        for (word, (ga, gb)) in &group {
            if pa.mul(ga).trace() != pb.mul(gb).trace() {
                return Ok(TraceLink::Differs(word_name(k, word, &labels)));
            }
        }
    }
    Ok(TraceLink::Equal)
}

fn identity_of(rho: &WDRep) -> crate::algebra::Mat {
    crate::algebra::Mat::identity(rho.dim(), rho.field().clone())
}

/// Both scans of a trace-linked pair and where their pure-point signatures
/// disagree (points pure in both families).
#[derive(Clone, Debug)]
pub struct TraceLinkedRigidity {
    pub link: TraceLink,
    pub first: RigidityReport,
    pub second: RigidityReport,
    pub common_pure_points: usize,
    pub disagreements: Vec<Q>,
}

impl TraceLinkedRigidity {
    pub fn agrees(&self) -> bool {
        self.link == TraceLink::Equal
            && self.disagreements.is_empty()
            && self.first.verdict == Some(RigidityVerdict::Pass)
            && self.second.verdict == Some(RigidityVerdict::Pass)
    }
}

pub fn trace_linked_rigidity(
    f1: &FamilyWDRep,
    f2: &FamilyWDRep,
    mu: &Partition,
    points: &[Q],
    weight: WeightSpec,
    eps: &Q,
    max_word_len: usize,
) -> Result<TraceLinkedRigidity> {
    let link = trace_link_check(f1, f2, max_word_len)?;
    let first = rigidity_check(&purity_scan(f1, mu, points, weight, eps)?);
    let second = rigidity_check(&purity_scan(f2, mu, points, weight, eps)?);
    let mut disagreements = Vec::new();
    let mut common = 0;
    for (p, r) in first.points.iter().zip(&second.points) {
        if p.is_pure() && r.is_pure() {
            common += 1;
            if p.signature != r.signature {
                disagreements.push(p.a.clone());
            }
        }
    }
    Ok(TraceLinkedRigidity {
        link,
        first,
        second,
        common_pure_points: common,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{default_eps, q_int, Mat, Poly, RatFunc, Scalar};
    use crate::wd::PurityVerdict;

    fn t() -> Scalar {
        Scalar::from_rf(RatFunc::t())
    }

    fn flagship_with(nilp_entry: Scalar, phi2: Scalar) -> FamilyWDRep {
        let f = FieldDescriptor::Qt;
        let phi = Mat::diag(&[Scalar::int(1), phi2], f.clone());
        let mut nilp = Mat::zeros(2, 2, f.clone());
        nilp.set(1, 0, nilp_entry);
        FamilyWDRep::new(WDRep::new(5, f, phi, nilp, vec![])).unwrap()
    }

    fn flagship() -> FamilyWDRep {
        flagship_with(t(), Scalar::frac(1, 5))
    }

    fn lin(n: i64, d: i64) -> Poly<Scalar> {
        Poly::linear(Scalar::frac(n, d))
    }

    fn ints(lo: i64, hi: i64) -> Vec<Q> {
        (lo..=hi).map(q_int).collect()
    }

    #[test]
    fn specialization_examples() {
        let f = FieldDescriptor::Qt;
        let rho = WDRep::unramified(5, Mat::diag(&[t(), Scalar::int(1)], f.clone()));
        let s = specialize(&rho, &q_int(2)).unwrap();
        assert_eq!(s.phi(), &Mat::diag(&[Scalar::int(2), Scalar::int(1)], FieldDescriptor::Q));
        let inv = Scalar::from_rf(RatFunc::t().sub(&RatFunc::from_q(q_int(1))).inv());
        let rho = WDRep::unramified(5, Mat::diag(&[inv], f));
        assert_eq!(specialize(&rho, &q_int(1)), Err(Error::DenominatorVanishes("1".into())));
        assert_eq!(specialize(&rho.with_phi(Mat::diag(&[t()], FieldDescriptor::Qt)), &q_int(0)), Err(Error::SingularFrobenius("0".into())));
        let s = specialize(flagship().rep(), &q_int(3)).unwrap();
        assert_eq!(s.nilp().get(1, 0), &Scalar::int(3));
        assert_eq!(wd_validate(&s), Ok(()));
    }

    #[test]
    fn flagship_scan() {
        let r = purity_scan(&flagship(), &Partition::row(1), &ints(-5, 5), WeightSpec::Infer, &default_eps()).unwrap();
        assert_eq!(r.generic_signature, Signature::from_pairs([(2, lin(1, 5))]));
        let zero = &r.points[5];
        assert_eq!(zero.purity.as_ref().unwrap().verdict, PurityVerdict::Impure);
        assert_eq!(zero.signature, Some(Signature::from_pairs([(1, lin(1, 1)), (1, lin(1, 5))])));
        let one = &r.points[6];
        assert_eq!(one.purity.as_ref().unwrap().weight, Some(-1));
        assert_eq!(one.signature, Some(Signature::from_pairs([(2, lin(1, 5))])));
        let checked = rigidity_check(&r);
        assert_eq!(checked.verdict, Some(RigidityVerdict::Pass));
    }

    #[test]
    fn symmetric_square_scan() {
        let r = purity_scan(&flagship(), &Partition::row(2), &ints(-5, 5), WeightSpec::Infer, &default_eps()).unwrap();
        let r = rigidity_check(&r);
        assert_eq!(r.verdict, Some(RigidityVerdict::Pass));
        assert_eq!(r.generic_signature, Signature::from_pairs([(3, lin(1, 25))]));
        assert_eq!(r.points[5].signature.as_ref().unwrap().entries()[&1].degree(), 3);
    }

    #[test]
    fn doctored_report_fails() {
        let mut r = purity_scan(&flagship(), &Partition::row(1), &ints(-5, 5), WeightSpec::Infer, &default_eps()).unwrap();
        r.points[6].signature = Some(Signature::from_pairs([(1, lin(1, 1)), (1, lin(1, 5))]));
        let r = rigidity_check(&r);
        assert_eq!(r.verdict, Some(RigidityVerdict::Fail));
        assert_eq!(r.failures, vec![q_int(1)]);
    }

    #[test]
    fn vacuous_without_pure_points() {
        let r = purity_scan(&flagship(), &Partition::row(1), &[q_int(0)], WeightSpec::Infer, &default_eps()).unwrap();
        assert_eq!(rigidity_check(&r).verdict, Some(RigidityVerdict::Vacuous));
    }

    #[test]
    fn trace_links() {
        let constant = flagship_with(Scalar::int(1), Scalar::frac(1, 5));
        assert_eq!(trace_link_check(&flagship(), &constant, 4).unwrap(), TraceLink::Equal);
        assert_eq!(trace_link_check(&flagship(), &flagship(), 4).unwrap(), TraceLink::Equal);
        let other = flagship_with(Scalar::int(0), Scalar::frac(1, 25));
        assert_eq!(
            trace_link_check(&flagship(), &other, 4).unwrap(),
            TraceLink::Differs("phi^1".into())
        );
        let pair = trace_linked_rigidity(
            &flagship(),
            &constant,
            &Partition::row(1),
            &ints(-5, 5),
            WeightSpec::Infer,
            &default_eps(),
            4,
        )
        .unwrap();
        assert!(pair.agrees());
        assert_eq!(pair.common_pure_points, 10);
    }
}
