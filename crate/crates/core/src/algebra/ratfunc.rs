use std::fmt;

use num_traits::{One, Zero};

use super::field::Q;
use super::poly::Poly;

/// An element of Q(t): `num / den` with `den` monic and coprime to `num`.
/// Zero is stored as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<Q>,
    den: Poly<Q>,
}

impl RatFunc {
    /// Reduces `num / den`. Panics if `den` is zero.
    pub fn new(num: Poly<Q>, den: Poly<Q>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let l = den.lead().unwrap().clone();
        let li = num_traits::Inv::inv(l);
        Self {
            num: num.scale(&li),
            den: den.scale(&li),
        }
    }

    pub fn from_poly(num: Poly<Q>) -> Self {
        Self {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Q> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, when this is an element of Q.
    pub fn as_constant(&self) -> Option<Q> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// Evaluates at `t = a`; `None` when the denominator vanishes there.
    pub fn eval(&self, a: &Q) -> Option<Q> {
        let d = self.den.eval(a);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(a) / d)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(t)");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// Coefficient of `t^k` when this is a polynomial.
    pub fn poly_coeff(&self, k: usize) -> Option<Q> {
        self.den.is_one_poly().then(|| self.num.coeff(k))
    }

    /// Renders with an arbitrary indeterminate name.
    pub fn fmt_var(&self, var: &str) -> String {
        let num = self.num.fmt_var(var);
        if self.den.is_one_poly() {
            return num;
        }
        let num = if self.num.term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = self.den.fmt_var(var);
        if self.den.term_count() > 1 {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    }
}

impl Poly<Q> {
    pub(crate) fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}
