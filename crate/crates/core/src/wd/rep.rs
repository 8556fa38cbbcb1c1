use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_traits::Zero;

use crate::algebra::{FieldDescriptor, Mat, Scalar};
use crate::error::{Error, Result};

/// Largest order allowed for a single inertia matrix.
pub const INERTIA_ORDER_BOUND: usize = 64;
/// Largest inertia group that will be enumerated.
pub const INERTIA_CLOSURE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaGen {
    pub label: String,
    pub matrix: Mat,
}

/// A Weil-Deligne representation: Frobenius `phi`, monodromy `nilp` and a
/// finite inertia group given by labeled generators, over a residue field of
/// size `q`. Construction does not validate; see [`wd_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WDRep {
    q: u64,
    field: FieldDescriptor,
    phi: Mat,
    nilp: Mat,
    inertia: Vec<InertiaGen>,
}

impl WDRep {
    pub fn new(q: u64, field: FieldDescriptor, phi: Mat, nilp: Mat, inertia: Vec<InertiaGen>) -> Self {
        let inertia = inertia
            .into_iter()
            .map(|g| InertiaGen {
                label: g.label,
                matrix: g.matrix.with_field(field.clone()),
            })
            .collect();
        Self {
            q,
            phi: phi.with_field(field.clone()),
            nilp: nilp.with_field(field.clone()),
            field,
            inertia,
        }
    }

    /// Like [`WDRep::new`] but rejects data violating any invariant.
    pub fn validated(q: u64, field: FieldDescriptor, phi: Mat, nilp: Mat, inertia: Vec<InertiaGen>) -> Result<Self> {
        let rho = Self::new(q, field, phi, nilp, inertia);
        wd_validate(&rho).map_err(Error::Validation)?;
        Ok(rho)
    }

    /// Zero monodromy, no inertia.
    pub fn unramified(q: u64, phi: Mat) -> Self {
        let n = phi.rows();
        let field = phi.field().clone();
        Self::new(q, field.clone(), phi, Mat::zeros(n, n, field), Vec::new())
    }

    /// The one-dimensional representation with Frobenius eigenvalue `c`.
    pub fn character(q: u64, c: Scalar, field: FieldDescriptor) -> Self {
        Self::unramified(q, Mat::diag(&[c], field))
    }

    pub fn zero_dim(q: u64, field: FieldDescriptor) -> Self {
        Self::unramified(q, Mat::zeros(0, 0, field))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    pub fn nilp(&self) -> &Mat {
        &self.nilp
    }

    pub fn inertia(&self) -> &[InertiaGen] {
        &self.inertia
    }

    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.inertia.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn inertia_matrix(&self, label: &str) -> Option<&Mat> {
        self.inertia.iter().find(|g| g.label == label).map(|g| &g.matrix)
    }

    pub fn with_phi(&self, phi: Mat) -> Self {
        Self {
            phi: phi.with_field(self.field.clone()),
            ..self.clone()
        }
    }

    pub fn with_nilp(&self, nilp: Mat) -> Self {
        Self {
            nilp: nilp.with_field(self.field.clone()),
            ..self.clone()
        }
    }

    /// Conjugates every matrix by `p`: `X ↦ p⁻¹ X p`.
    pub fn change_basis(&self, p: &Mat) -> Result<Self> {
        let pinv = p.inverse()?;
        let conj = |m: &Mat| pinv.mul(m).mul(p);
        Ok(Self {
            phi: conj(&self.phi),
            nilp: conj(&self.nilp),
            inertia: self
                .inertia
                .iter()
                .map(|g| InertiaGen {
                    label: g.label.clone(),
                    matrix: conj(&g.matrix),
                })
                .collect(),
            ..self.clone()
        })
    }
}

/// The first invariant a [`WDRep`] fails. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ResidueField(u64),
    Shape {
        matrix: String,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    ForeignEntry {
        matrix: String,
        row: usize,
        col: usize,
        field: String,
    },
    DuplicateLabel(String),
    SingularFrobenius,
    NotNilpotent,
    Relation {
        row: usize,
        col: usize,
    },
    InertiaMonodromy {
        label: String,
        row: usize,
        col: usize,
    },
    InertiaOrder {
        label: String,
        bound: usize,
    },
    InertiaClosure {
        cap: usize,
    },
    FrobeniusNormalizer {
        label: String,
    },
}

impl Violation {
    /// Name of the offending matrix, when there is one.
    pub fn matrix(&self) -> Option<String> {
        match self {
            Violation::Shape { matrix, .. } | Violation::ForeignEntry { matrix, .. } => Some(matrix.clone()),
            Violation::SingularFrobenius | Violation::Relation { .. } => Some("phi".into()),
            Violation::NotNilpotent => Some("nilp".into()),
            Violation::InertiaMonodromy { label, .. }
            | Violation::InertiaOrder { label, .. }
            | Violation::FrobeniusNormalizer { label } => Some(format!("inertia[{label}]")),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ResidueField(q) => write!(f, "q = {q} must be at least 2"),
            Violation::Shape {
                matrix,
                rows,
                cols,
                expected,
            } => write!(f, "{matrix} has shape {rows}x{cols}, expected {expected}x{expected}"),
            Violation::ForeignEntry { matrix, row, col, field } => {
                write!(f, "{matrix}[{row}][{col}] does not lie in {field}")
            }
            Violation::DuplicateLabel(l) => write!(f, "inertia label {l:?} is used twice"),
            Violation::SingularFrobenius => f.write_str("phi is not invertible"),
            Violation::NotNilpotent => f.write_str("nilp is not nilpotent"),
            Violation::Relation { row, col } => {
                write!(f, "phi*nilp*phi^-1 != nilp/q: q*phi*nilp and nilp*phi differ at [{row}][{col}]")
            }
            Violation::InertiaMonodromy { label, row, col } => {
                write!(f, "inertia[{label}] does not commute with nilp at [{row}][{col}]")
            }
            Violation::InertiaOrder { label, bound } => {
                write!(f, "inertia[{label}] has no power equal to I up to exponent {bound}")
            }
            Violation::InertiaClosure { cap } => write!(f, "inertia group has more than {cap} elements"),
            Violation::FrobeniusNormalizer { label } => {
                write!(f, "phi*g*phi^-1 is outside the inertia group for g = inertia[{label}]")
            }
        }
    }
}

/// Breadth-first enumeration of the monoid generated by `gens`, starting at
/// `identity`. Each element carries a shortest word (generator indices).
/// `None` when more than `cap` elements appear.
pub(crate) fn enumerate_closure<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Option<Vec<(Vec<usize>, T)>> {
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut out = vec![(Vec::new(), identity)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let y = mul(&out[idx].1, g);
            if seen.insert(y.clone()) {
                if out.len() == cap {
                    return None;
                }
                let mut w = out[idx].0.clone();
                w.push(i);
                out.push((w, y));
                queue.push_back(out.len() - 1);
            }
        }
    }
    Some(out)
}

/// All elements of the inertia group with a generating word each, or `None`
/// beyond [`INERTIA_CLOSURE_CAP`].
pub fn inertia_closure(rho: &WDRep) -> Option<Vec<(Vec<usize>, Mat)>> {
    let gens: Vec<Mat> = rho.inertia.iter().map(|g| g.matrix.clone()).collect();
    enumerate_closure(
        Mat::identity(rho.dim(), rho.field.clone()),
        &gens,
        Mat::mul,
        INERTIA_CLOSURE_CAP,
    )
}

fn first_difference(a: &Mat, b: &Mat) -> Option<(usize, usize)> {
    a.entries()
        .iter()
        .zip(b.entries())
        .position(|(x, y)| x != y)
        .map(|k| (k / a.cols(), k % a.cols()))
}

/// Checks every invariant of a Weil-Deligne representation, in order:
/// shapes, `q`, field membership, invertibility of `phi`, nilpotency, the
/// relation `phi N phi⁻¹ = N/q`, inertia commuting with `N`, inertia
/// orders, the inertia closure size and normality under `phi`.
pub fn wd_validate(rho: &WDRep) -> Result<(), Violation> {
    let n = rho.dim();
    let mut named: Vec<(String, &Mat)> = vec![("phi".into(), &rho.phi), ("nilp".into(), &rho.nilp)];
    named.extend(rho.inertia.iter().map(|g| (format!("inertia[{}]", g.label), &g.matrix)));
    for (name, m) in &named {
        if m.rows() != n || m.cols() != n {
            return Err(Violation::Shape {
                matrix: name.clone(),
                rows: m.rows(),
                cols: m.cols(),
                expected: n,
            });
        }
    }
    if rho.q < 2 {
        return Err(Violation::ResidueField(rho.q));
    }
    for (name, m) in &named {
        let m = (*m).clone().with_field(rho.field.clone());
        if let Some((row, col)) = m.foreign_entry() {
            return Err(Violation::ForeignEntry {
                matrix: name.clone(),
                row,
                col,
                field: rho.field.name(),
            });
        }
    }
    let mut labels = HashSet::new();
    for g in &rho.inertia {
        if !labels.insert(g.label.as_str()) {
            return Err(Violation::DuplicateLabel(g.label.clone()));
        }
    }
    if rho.phi.det().map_or(true, |d| d.is_zero()) {
        return Err(Violation::SingularFrobenius);
    }
    if !rho.nilp.pow(n).is_zero() {
        return Err(Violation::NotNilpotent);
    }
    let q = Scalar::int(rho.q as i64);
    let lhs = rho.phi.mul(&rho.nilp).scale(&q);
    let rhs = rho.nilp.mul(&rho.phi);
    if let Some((row, col)) = first_difference(&lhs, &rhs) {
        return Err(Violation::Relation { row, col });
    }
    for g in &rho.inertia {
        if let Some((row, col)) = first_difference(&g.matrix.mul(&rho.nilp), &rho.nilp.mul(&g.matrix)) {
            return Err(Violation::InertiaMonodromy {
                label: g.label.clone(),
                row,
                col,
            });
        }
    }
    for g in &rho.inertia {
        let mut p = g.matrix.clone();
        let mut finite = p.is_identity();
        for _ in 1..INERTIA_ORDER_BOUND {
            if finite {
                break;
            }
            p = p.mul(&g.matrix);
            finite = p.is_identity();
        }
        if !finite {
            return Err(Violation::InertiaOrder {
                label: g.label.clone(),
                bound: INERTIA_ORDER_BOUND,
            });
        }
    }
    let Some(closure) = inertia_closure(rho) else {
        return Err(Violation::InertiaClosure {
            cap: INERTIA_CLOSURE_CAP,
        });
    };
    let group: HashSet<&Mat> = closure.iter().map(|(_, m)| m).collect();
    if !rho.inertia.is_empty() {
        let phi_inv = rho.phi.inverse().map_err(|_| Violation::SingularFrobenius)?;
        for g in &rho.inertia {
            let c = rho.phi.mul(&g.matrix).mul(&phi_inv);
            if !group.contains(&c) {
                return Err(Violation::FrobeniusNormalizer { label: g.label.clone() });
            }
        }
    }
    Ok(())
}
