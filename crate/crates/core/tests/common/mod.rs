#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use weylmod::algebra::{q_int, q_pow, FieldDescriptor, Mat, Poly, Q, RatFunc, Scalar};
use weylmod::io::parse_rep;
use weylmod::schur::Partition;
use weylmod::wd::{sp_construct, wd_direct_sum, WDRep};

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

pub fn load(name: &str) -> WDRep {
    parse_rep(&std::fs::read_to_string(corpus(name)).unwrap()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn qf() -> FieldDescriptor {
    FieldDescriptor::Q
}

pub fn small_q(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_q(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = small_q(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
    let data: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(0.3) { Scalar::zero() } else { small_q(rng) })
                .collect()
        })
        .collect();
    if rows == 0 {
        return Mat::zeros(0, cols, qf());
    }
    Mat::from_rows(data, qf())
}

pub fn rand_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    loop {
        let m = rand_mat(rng, n, n);
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

/// A random partition of `n` (not uniform).
pub fn rand_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Block-diagonal sum of Jordan blocks `J_s(0)` for the given sizes.
pub fn jordan_nilpotent(sizes: &[usize]) -> Mat {
    let n: usize = sizes.iter().sum();
    let mut m = Mat::zeros(n, n, qf());
    let mut start = 0;
    for &s in sizes {
        for i in 1..s {
            m.set(start + i, start + i - 1, Scalar::one());
        }
        start += s;
    }
    m
}

/// A random integer matrix of determinant ±1: a product of elementary
/// row operations and sign flips.
pub fn rand_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut m = Mat::identity(n, qf());
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = Mat::identity(n, qf());
        if i == j {
            e.set(i, i, Scalar::int(-1));
        } else {
            e.set(i, j, Scalar::int(rng.gen_range(-2..=2)));
        }
        m = e.mul(&m);
    }
    m
}

/// A random nilpotent matrix with random Jordan type, in a random basis.
pub fn rand_nilpotent(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let j = jordan_nilpotent(&rand_partition(rng, n));
    let p = rand_unimodular(rng, n);
    p.inverse().unwrap().mul(&j).mul(&p)
}

pub fn character(q: u64, c: Scalar) -> WDRep {
    WDRep::character(q, c, qf())
}

pub fn direct_sum_all(q: u64, reps: &[WDRep]) -> WDRep {
    reps.iter()
        .fold(WDRep::zero_dim(q, qf()), |acc, r| wd_direct_sum(&acc, r).unwrap())
}

/// A random valid representation over Q: a sum of `Sp_t` of random
/// characters, conjugated by a random change of basis.
pub fn rand_wd(rng: &mut ChaCha8Rng, q: u64, dim: usize) -> WDRep {
    let parts = rand_partition(rng, dim);
    let blocks: Vec<WDRep> = parts
        .iter()
        .map(|&t| sp_construct(t, &character(q, nonzero_q(rng))).unwrap())
        .collect();
    let rho = direct_sum_all(q, &blocks);
    rho.change_basis(&rand_invertible(rng, dim)).unwrap()
}

/// A 2-dimensional unramified representation whose Frobenius has complex
/// eigenvalues of modulus `q^{j/2}`: companion matrix of `x^2 - c x + q^j`
/// with `c^2 < 4 q^j`.
pub fn weil_pair(rng: &mut ChaCha8Rng, q: u64, j: i64) -> WDRep {
    let m = q_pow(&q_int(q as i64), j);
    let c = loop {
        let c = Q::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into()) * q_pow(&q_int(q as i64), j.div_euclid(2));
        if &c * &c < q_int(4) * &m {
            break c;
        }
    };
    let phi = Mat::from_rows(
        vec![
            vec![Scalar::zero(), Scalar::Rat(-m)],
            vec![Scalar::one(), Scalar::Rat(c)],
        ],
        qf(),
    );
    WDRep::unramified(q, phi)
}

/// A random representation of dimension at most `max_dim` that is pure of
/// weight `w`, in a random basis.
pub fn rand_pure(rng: &mut ChaCha8Rng, q: u64, w: i64, max_dim: usize) -> WDRep {
    let qq = q_int(q as i64);
    let mut blocks: Vec<WDRep> = Vec::new();
    let mut dim = 0;
    loop {
        let t = rng.gen_range(1..=max_dim);
        let j = w + t as i64 - 1;
        let block = if j % 2 == 0 && rng.gen_bool(0.6) {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let chi = Scalar::Rat(q_pow(&qq, j / 2) * Q::from_integer(sign.into()));
            sp_construct(t, &character(q, chi)).unwrap()
        } else {
            sp_construct(t, &weil_pair(rng, q, j)).unwrap()
        };
        if dim + block.dim() > max_dim {
            if dim > 0 {
                break;
            }
            continue;
        }
        dim += block.dim();
        blocks.push(block);
        if rng.gen_bool(0.5) {
            break;
        }
    }
    let rho = direct_sum_all(q, &blocks);
    rho.change_basis(&rand_invertible(rng, dim)).unwrap()
}

pub fn t() -> Scalar {
    Scalar::from_rf(RatFunc::t())
}

/// `a t + b` with small random rational `a`, `b`.
pub fn rand_linear_t(rng: &mut ChaCha8Rng) -> Scalar {
    &(&small_q(rng) * &t()) + &nonzero_q(rng)
}

/// Moves `m` to Q(t).
pub fn over_qt(m: &Mat) -> Mat {
    m.clone().with_field(FieldDescriptor::Qt)
}

/// A random valid family over Q(t): a sum of `Sp_t(χ_i(t))` with linear
/// characters, monodromy scaled by `t`, conjugated by a constant matrix and
/// a unipotent `I + t E`.
pub fn rand_family(rng: &mut ChaCha8Rng, q: u64, dim: usize) -> WDRep {
    let parts = rand_partition(rng, dim);
    let qt = FieldDescriptor::Qt;
    let blocks: Vec<WDRep> = parts
        .iter()
        .map(|&s| sp_construct(s, &WDRep::character(q, rand_linear_t(rng), qt.clone())).unwrap())
        .collect();
    let rho = blocks
        .iter()
        .fold(WDRep::zero_dim(q, qt.clone()), |acc, r| wd_direct_sum(&acc, r).unwrap());
    let rho = rho.with_nilp(rho.nilp().scale(&t()));
    let p = over_qt(&rand_invertible(rng, dim));
    let mut u = Mat::identity(dim, qt);
    if dim > 1 {
        let i = rng.gen_range(0..dim);
        let j = (i + rng.gen_range(1..dim)) % dim;
        u.set(i, j, t());
    }
    rho.change_basis(&p.mul(&u)).unwrap()
}

pub fn ints(lo: i64, hi: i64) -> Vec<Q> {
    (lo..=hi).map(q_int).collect()
}

pub fn partition(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn lin(n: i64, d: i64) -> Poly<Scalar> {
    Poly::linear(Scalar::frac(n, d))
}

// ---- independent oracles -------------------------------------------------

/// Number of standard Young tableaux by the branching rule (removing a
/// corner box), independent of the hook length formula.
pub fn count_syt(shape: &[usize]) -> u64 {
    let shape: Vec<usize> = shape.iter().copied().filter(|&p| p > 0).collect();
    if shape.iter().sum::<usize>() <= 1 {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let is_corner = i + 1 == shape.len() || shape[i + 1] < shape[i];
        if is_corner {
            let mut s = shape.clone();
            s[i] -= 1;
            total += count_syt(&s);
        }
    }
    total
}

/// Number of semistandard tableaux of `shape` with entries in `1..=n`, by
/// brute-force filling; equals dim S_μ(Q^n).
pub fn count_ssyt(shape: &[usize], n: usize) -> usize {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
        .collect();
    let mut fill = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
    fn go(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, n: usize) -> usize {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { fill[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { fill[i - 1][j] + 1 } else { 1 };
        let mut total = 0;
        for v in lo_row.max(lo_col)..=n {
            fill[i][j] = v;
            total += go(k + 1, cells, fill, n);
        }
        total
    }
    go(0, &cells, &mut fill, n)
}

/// Basis (columns) of `U ∩ W` for column-basis matrices.
pub fn intersect(u: &Mat, w: &Mat) -> Mat {
    let n = u.rows();
    if u.cols() == 0 || w.cols() == 0 {
        return Mat::zeros(n, 0, u.field().clone());
    }
    let stacked = u.hstack(&w.scale(&Scalar::int(-1)));
    let k = stacked.kernel();
    let vecs: Vec<Vec<Scalar>> = k
        .columns()
        .iter()
        .map(|c| u.mul_vec(&c[..u.cols()]))
        .collect();
    weylmod::algebra::column_echelon_basis(n, &vecs, u.field().clone())
}

pub fn span_sum(n: usize, mats: &[Mat]) -> Mat {
    let vecs: Vec<Vec<Scalar>> = mats.iter().flat_map(|m| m.columns()).collect();
    weylmod::algebra::column_echelon_basis(n, &vecs, qf())
}

/// `M_k = Σ_j ker N^{k+j+1} ∩ im N^j` (terms with negative exponent vanish).
pub fn kernel_sum_filtration_step(nilp: &Mat, k: i64) -> Mat {
    let n = nilp.rows();
    let mut powers = vec![Mat::identity(n, nilp.field().clone())];
    for i in 0..2 * n + 1 {
        powers.push(powers[i].mul(nilp));
    }
    let mut pieces = Vec::new();
    for j in 0..=n as i64 {
        let e = k + j + 1;
        if e < 0 {
            continue;
        }
        let ker = powers[(e as usize).min(2 * n + 1)].kernel();
        let im = powers[j as usize].image();
        pieces.push(intersect(&ker, &im));
    }
    span_sum(n, &pieces)
}

/// True when the column span of `a` lies inside that of `b`.
pub fn span_contains(b: &Mat, a: &Mat) -> bool {
    let mut s = weylmod::algebra::SpanBuilder::new();
    for c in b.columns() {
        s.insert(&c);
    }
    a.columns().iter().all(|v| s.contains(v))
}

pub fn same_span(a: &Mat, b: &Mat) -> bool {
    a.cols() == b.cols() && span_contains(a, b) && span_contains(b, a)
}
