//! Certified enclosures for the absolute values of complex polynomial roots.
//!
//! Roots of each squarefree factor are approximated in floating point
//! (Aberth-Ehrlich), polished by Newton's method in exact dyadic complex
//! arithmetic, and then certified with Smith's inclusion theorem: for a
//! monic `f` of degree `m` and distinct approximations `z_i`, the disks
//! `|z - z_i| <= m |f(z_i)| / prod_{j != i} |z_i - z_j|` cover the roots,
//! and a connected component made of `k` disks holds exactly `k` roots.
//! Pairwise disjoint disks therefore isolate one root each. All radii and
//! moduli are bounded with exact rational arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{fmt_q, Q};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `lo <= |root| <= hi` for the root it certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusInterval {
    #[serde(with = "crate::io::q_string")]
    pub lo: Q,
    #[serde(with = "crate::io::q_string")]
    pub hi: Q,
}

impl ModulusInterval {
    pub fn exact(v: Q) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    /// Whether `sqrt(c)` lies in the interval (`c >= 0`).
    pub fn contains_sqrt(&self, c: &Q) -> bool {
        &(&self.lo * &self.lo) <= c && c <= &(&self.hi * &self.hi)
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl std::fmt::Display for ModulusInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:.6e}, {:.6e}]", self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }
}

/// Default interval width, `10^-30`.
pub fn default_eps() -> Q {
    Q::new(BigInt::one(), BigInt::from(10).pow(30))
}

const PRECISIONS: [u32; 5] = [128, 256, 512, 1024, 2048];

/// One modulus interval per complex root of `p`, counted with
/// multiplicity, each of width at most `eps`. Intervals are sorted.
pub fn root_moduli_certified(p: &Poly<Q>, eps: &Q) -> Result<Vec<ModulusInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fail = || Error::CertificationFailed { eps: fmt_q(eps) };
    if !eps.is_positive() {
        return Err(fail());
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut out = vec![ModulusInterval::exact(Q::zero()); zeros];
    let rest = Poly::new(p.coeffs()[zeros..].to_vec());
    for (f, mult) in rest.squarefree_decomposition() {
        let ivs = isolate_squarefree(&f, eps).ok_or_else(fail)?;
        for iv in ivs {
            out.extend(std::iter::repeat_n(iv, mult));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    Ok(out)
}

fn isolate_squarefree(f: &Poly<Q>, eps: &Q) -> Option<Vec<ModulusInterval>> {
    let m = f.degree()?;
    if m == 1 {
        let r = -f.coeff(0) / f.coeff(1);
        return Some(vec![ModulusInterval::exact(r.abs())]);
    }
    let f = f.monic();
    let approx = aberth(&f)?;
    for prec in PRECISIONS {
        let mut zs: Vec<CQ> = approx.iter().map(|z| CQ::from_f64(*z, prec)).collect();
        if zs.iter_mut().any(|z| !newton_polish(&f, z, prec)) {
            continue;
        }
        if let Some(ivs) = certify(&f, &zs, prec, eps) {
            return Some(ivs);
        }
    }
    None
}

fn certify(f: &Poly<Q>, zs: &[CQ], prec: u32, eps: &Q) -> Option<Vec<ModulusInterval>> {
    let m = zs.len();
    let m_sq = Q::from_integer(BigInt::from(m * m));
    let mut radius = Vec::with_capacity(m);
    for (i, zi) in zs.iter().enumerate() {
        let fz = zi.eval(f).norm_sqr();
        let mut denom = Q::one();
        for (j, zj) in zs.iter().enumerate() {
            if i != j {
                denom *= zi.sub(zj).norm_sqr();
            }
        }
        if denom.is_zero() {
            return None;
        }
        radius.push(sqrt_bounds(&(&m_sq * &fz / denom), prec + 16).1);
    }
    for i in 0..m {
        for j in i + 1..m {
            let s = &radius[i] + &radius[j];
            if s.clone() * s >= zs[i].sub(&zs[j]).norm_sqr() {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(m);
    for (z, r) in zs.iter().zip(&radius) {
        let (slo, shi) = sqrt_bounds(&z.norm_sqr(), prec + 16);
        let lo = (slo - r).max(Q::zero());
        let hi = shi + r;
        let iv = ModulusInterval { lo, hi };
        if &iv.width() > eps {
            return None;
        }
        out.push(iv);
    }
    Some(out)
}

/// Rational lower and upper bounds of `sqrt(x)` differing by `2^-bits`.
fn sqrt_bounds(x: &Q, bits: u32) -> (Q, Q) {
    if x.is_zero() {
        return (Q::zero(), Q::zero());
    }
    let scale = BigInt::one() << (2 * bits);
    let scaled = (x.numer() * &scale) / x.denom();
    let s = scaled.sqrt();
    let den = BigInt::one() << bits;
    (Q::new(s.clone(), den.clone()), Q::new(s + 1, den))
}

fn round_dyadic(x: &Q, prec: u32) -> Q {
    let den = BigInt::one() << prec;
    let scaled = x * Q::from_integer(den.clone()) + Q::new(BigInt::one(), BigInt::from(2));
    Q::new(scaled.floor().to_integer(), den)
}

/// Newton's method at fixed dyadic precision; false if it stalls.
fn newton_polish(f: &Poly<Q>, z: &mut CQ, prec: u32) -> bool {
    let fp = f.derivative();
    let tol = Q::new(BigInt::one(), BigInt::one() << (2 * prec - 8));
    for _ in 0..200 {
        let d = z.eval(&fp);
        if d.norm_sqr().is_zero() {
            return false;
        }
        let step = z.eval(f).div(&d);
        *z = z.sub(&step).round(prec);
        if step.norm_sqr() <= tol {
            return true;
        }
    }
    false
}

/// Floating-point Aberth-Ehrlich iteration for a monic squarefree `f`.
fn aberth(f: &Poly<Q>) -> Option<Vec<Complex64>> {
    let m = f.degree()?;
    let c: Vec<f64> = f.coeffs().iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    // Fujiwara bound on the root moduli
    let bound = (1..=m)
        .map(|i| {
            let a = c[m - i].abs();
            if i == m {
                (a / 2.0).powf(1.0 / i as f64)
            } else {
                a.powf(1.0 / i as f64)
            }
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound / 2.0 } else { 1.0 };
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / m as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for k in 0..m {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..m)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[k] -= w;
            max_step = max_step.max(w.norm() / z[k].norm().max(1e-300));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(z)
}

/// Exact complex rational.
#[derive(Clone, Debug)]
struct CQ {
    re: Q,
    im: Q,
}

impl CQ {
    fn from_f64(z: Complex64, prec: u32) -> Self {
        let conv = |x: f64| round_dyadic(&Q::from_float(x).unwrap_or_else(Q::zero), prec);
        Self {
            re: conv(z.re),
            im: conv(z.im),
        }
    }

    fn round(&self, prec: u32) -> Self {
        Self {
            re: round_dyadic(&self.re, prec),
            im: round_dyadic(&self.im, prec),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        Self {
            re: (&self.re * &o.re + &self.im * &o.im) / &n,
            im: (&self.im * &o.re - &self.re * &o.im) / &n,
        }
    }

    fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    fn eval(&self, f: &Poly<Q>) -> Self {
        let mut acc = CQ {
            re: Q::zero(),
            im: Q::zero(),
        };
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.re += c;
        }
        acc
    }
}
