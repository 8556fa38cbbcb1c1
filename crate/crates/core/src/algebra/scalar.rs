use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{fmt_q, q_int, Field, Q};
use super::numfield::{NfElem, NumberField};
use super::ratfunc::RatFunc;

/// The coefficient field a matrix or representation lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Q,
    /// The rational function field Q(t).
    Qt,
    NumberField(Arc<NumberField>),
}

impl FieldDescriptor {
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rat(_)) => true,
            (FieldDescriptor::Qt, Scalar::Rf(_)) => true,
            (FieldDescriptor::NumberField(k), Scalar::Nf(e)) => k == e.field(),
            _ => false,
        }
    }

    pub fn name(&self) -> String {
        match self {
            FieldDescriptor::Q => "Q".into(),
            FieldDescriptor::Qt => "Q(t)".into(),
            FieldDescriptor::NumberField(k) => format!("Q[a]/({})", k.minpoly().fmt_var("a")),
        }
    }

    /// `t` for Q(t), the class of `a` for a number field.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            FieldDescriptor::Q => None,
            FieldDescriptor::Qt => Some(Scalar::from_rf(RatFunc::t())),
            FieldDescriptor::NumberField(k) => Some(Scalar::from_nf(NfElem::generator(k.clone()))),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A tagged exact scalar. Values that happen to be rational are always
/// stored as `Rat`, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Q),
    Nf(NfElem),
    Rf(RatFunc),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Rat(q_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rat(super::field::q_frac(n, d))
    }

    pub fn from_nf(e: NfElem) -> Self {
        match e.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Nf(e),
        }
    }

    pub fn from_rf(r: RatFunc) -> Self {
        match r.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Rf(r),
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rat(q) => Some(q),
            _ => None,
        }
    }

    /// Substitutes `t = a`. Rationals pass through; `None` when a
    /// denominator vanishes. Number-field elements have no `t` and are
    /// returned unchanged.
    pub fn eval_at(&self, a: &Q) -> Option<Scalar> {
        match self {
            Scalar::Rf(r) => r.eval(a).map(Scalar::Rat),
            other => Some(other.clone()),
        }
    }

    fn combine(
        &self,
        o: &Scalar,
        fq: fn(&Q, &Q) -> Q,
        fnf: fn(&NfElem, &NfElem) -> NfElem,
        frf: fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Scalar {
        use Scalar::*;
        match (self, o) {
            (Rat(x), Rat(y)) => Rat(fq(x, y)),
            (Nf(x), Nf(y)) => Scalar::from_nf(fnf(x, y)),
            (Nf(x), Rat(y)) => Scalar::from_nf(fnf(x, &NfElem::from_q(x.field().clone(), y.clone()))),
            (Rat(x), Nf(y)) => Scalar::from_nf(fnf(&NfElem::from_q(y.field().clone(), x.clone()), y)),
            (Rf(x), Rf(y)) => Scalar::from_rf(frf(x, y)),
            (Rf(x), Rat(y)) => Scalar::from_rf(frf(x, &RatFunc::from_q(y.clone()))),
            (Rat(x), Rf(y)) => Scalar::from_rf(frf(&RatFunc::from_q(x.clone()), y)),
            _ => panic!("arithmetic between a number field and Q(t)"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => f.write_str(&fmt_q(q)),
            Scalar::Nf(e) => e.fmt(f),
            Scalar::Rf(r) => r.fmt(f),
        }
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Self {
        Scalar::Rat(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.combine(o, |a, b| a + b, NfElem::add, RatFunc::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.combine(o, |a, b| a - b, NfElem::sub, RatFunc::sub)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        self.combine(o, |a, b| a * b, NfElem::mul, RatFunc::mul)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        assert!(!o.is_zero(), "division by zero");
        self.combine(o, |a, b| a / b, NfElem::div, RatFunc::div)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Nf(e) => Scalar::Nf(e.neg()),
            Scalar::Rf(r) => Scalar::Rf(r.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Q::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(Q::one())
    }
}

impl Field for Scalar {
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    #[test]
    fn constants_collapse_to_rationals() {
        let t = FieldDescriptor::Qt.generator().unwrap();
        let diff = &t - &t;
        assert!(diff.is_zero());
        assert_eq!(&t / &t, Scalar::one());
        let k = Arc::new(NumberField::new(Poly::new(vec![q_int(-2), q_int(0), q_int(1)])).unwrap());
        let a = FieldDescriptor::NumberField(k).generator().unwrap();
        assert_eq!(&a * &a, Scalar::int(2));
    }

    #[test]
    fn membership() {
        let t = FieldDescriptor::Qt.generator().unwrap();
        assert!(FieldDescriptor::Qt.contains(&t));
        assert!(!FieldDescriptor::Q.contains(&t));
        assert!(FieldDescriptor::Q.contains(&Scalar::frac(1, 5)));
    }
}
