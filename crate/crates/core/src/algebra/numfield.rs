use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::Q;
use super::poly::Poly;
use crate::error::Error;

/// Q(a) = Q[x]/(minpoly). The minimal polynomial is monic with integer
/// coefficients, degree at least two and squarefree. Division assumes it is
/// irreducible; inverting a zero divisor panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: Poly<Q>,
}

impl NumberField {
    pub fn new(minpoly: Poly<Q>) -> Result<Self, Error> {
        let bad = |why: &str| Err(Error::InvalidField(format!("minpoly {}: {why}", minpoly.fmt_var("x"))));
        match minpoly.degree() {
            Some(d) if d >= 2 => {}
            _ => return bad("degree must be at least 2"),
        }
        if !minpoly.is_monic() {
            return bad("not monic");
        }
        if minpoly.coeffs().iter().any(|c| !c.is_integer()) {
            return bad("coefficients must be integers");
        }
        if minpoly.gcd(&minpoly.derivative()).degree() != Some(0) {
            return bad("not squarefree");
        }
        Ok(Self { minpoly })
    }

    pub fn minpoly(&self) -> &Poly<Q> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }
}

/// An element of a number field, stored as its reduced residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NfElem {
    field: Arc<NumberField>,
    value: Poly<Q>,
}

impl NfElem {
    pub fn new(field: Arc<NumberField>, value: Poly<Q>) -> Self {
        let value = value.rem(field.minpoly());
        Self { field, value }
    }

    pub fn from_q(field: Arc<NumberField>, c: Q) -> Self {
        Self::new(field, Poly::constant(c))
    }

    /// The class of `x`.
    pub fn generator(field: Arc<NumberField>) -> Self {
        Self::new(field, Poly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn value(&self) -> &Poly<Q> {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn as_constant(&self) -> Option<Q> {
        self.value.is_constant().then(|| self.value.coeff(0))
    }

    fn check_same(&self, o: &Self) {
        assert!(
            self.field == o.field,
            "mixed number fields: {} vs {}",
            self.field.minpoly.fmt_var("x"),
            o.field.minpoly.fmt_var("x")
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        Self::new(self.field.clone(), &self.value + &o.value)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same(o);
        Self::new(self.field.clone(), &self.value - &o.value)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_same(o);
        Self::new(self.field.clone(), &self.value * &o.value)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.field.clone(), -&self.value)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in number field");
        let (g, s, _) = self.value.ext_gcd(self.field.minpoly());
        assert!(
            g.degree() == Some(0) && g.coeff(0).is_one(),
            "element is a zero divisor: minpoly is reducible"
        );
        Self::new(self.field.clone(), s)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// Matrix of multiplication by this element on the power basis
    /// `1, a, ..., a^(e-1)`, column `j` holding the coordinates of `self·a^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Q>> {
        let e = self.field.degree();
        let mut m = vec![vec![Q::zero(); e]; e];
        for j in 0..e {
            let prod = Self::new(self.field.clone(), &self.value * &Poly::monomial(Q::one(), j));
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = prod.value.coeff(i);
            }
        }
        m
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.fmt_var("a"))
    }
}
