use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;

/// A partition of `d`: a nonempty weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        let bad = |why: &str| Err(Error::InvalidPartition(format!("{parts:?}: {why}")));
        if parts.is_empty() {
            return bad("empty");
        }
        if parts.contains(&0) {
            return bad("parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return bad("parts must be weakly decreasing");
        }
        Ok(Self { parts })
    }

    /// The one-row partition `(d)`.
    pub fn row(d: usize) -> Self {
        Self { parts: vec![d] }
    }

    /// The one-column partition `(1, ..., 1)`.
    pub fn column(d: usize) -> Self {
        Self { parts: vec![1; d] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        Partition {
            parts: (0..cols)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Cells `(row, col)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        (self.parts[i] - j - 1) + (conj.parts[j] - i - 1) + 1
    }

    pub fn hook_product(&self) -> BigInt {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| BigInt::from((self.parts[i] - j - 1) + (conj.parts[j] - i - 1) + 1))
            .product()
    }

    /// Dimension of the Specht module, `d! / prod hooks`.
    pub fn specht_dim(&self) -> BigInt {
        factorial(self.size()) / self.hook_product()
    }

    /// All partitions of `d`, in decreasing lexicographic order.
    pub fn all(d: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if d > 0 {
            rec(d, d, &mut Vec::new(), &mut out);
        }
        out
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `d(mu, n)`, the dimension of the Schur functor applied to an
/// `n`-dimensional space: `prod_{cells (i,j)} (n + j - i) / hook(i,j)`.
/// Zero when `mu` has more than `n` rows.
pub fn hook_content_dim(mu: &Partition, n: usize) -> usize {
    let mut num = BigInt::from(1);
    for (i, j) in mu.cells() {
        let c = n as i64 + j as i64 - i as i64;
        if c <= 0 {
            return 0;
        }
        num *= c;
    }
    let hp = mu.hook_product();
    debug_assert!((&num % &hp).is_zero());
    (num / hp).to_usize().expect("Schur dimension overflows usize")
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses a comma-separated part list such as `2,1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
