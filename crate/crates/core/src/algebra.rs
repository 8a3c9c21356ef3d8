//! Matrix realization of the simple Lie algebra of type D_n.
//!
//! The algebra is the set of 2n-by-2n complex matrices A with
//! `A = -S A^T S`, where `^T` transposes along the anti-diagonal and S
//! is a fixed diagonal sign matrix. This module builds S, the Weyl
//! generators, the grading element, and the principal-gradation
//! projectors, and provides the normalized Killing form.

use crate::error::{Error, Result};
use crate::matrix::{C64, SquareMatrix, ONE, ZERO};

/// Rank, Coxeter number and the comparison tolerance used by the
/// structure checks.
#[derive(Clone, Copy, Debug)]
pub struct AlgebraConfig {
    pub n: usize,
    pub h: usize,
    pub epsilon: f64,
}

pub const DEFAULT_EPSILON: f64 = 1e-9;

impl AlgebraConfig {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_epsilon(n, DEFAULT_EPSILON)
    }

    pub fn with_epsilon(n: usize, epsilon: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        if !(epsilon > 0.0 && epsilon < 1e-6) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1e-6), got {epsilon}"
            )));
        }
        Ok(Self {
            n,
            h: 2 * n - 2,
            epsilon,
        })
    }
}

/// Weyl generators e_i, f_i, h_i for i = 0..=n.
#[derive(Clone, Debug)]
pub struct WeylSystem {
    pub e: Vec<SquareMatrix>,
    pub f: Vec<SquareMatrix>,
    pub h: Vec<SquareMatrix>,
}

impl WeylSystem {
    pub fn rank(&self) -> usize {
        self.e.len() - 1
    }
}

/// The diagonal grading element rho_vee of the principal gradation.
#[derive(Clone, Debug)]
pub struct GradingElement {
    pub rho_vee: SquareMatrix,
    pub d_entries: Vec<i64>,
}

impl GradingElement {
    /// Principal degree of the matrix position (i, j), 1-based.
    #[inline]
    pub fn degree_of(&self, i: usize, j: usize) -> i64 {
        self.d_entries[i - 1] - self.d_entries[j - 1]
    }
}

/// S = sum_{i=1}^{n} (-1)^{i-1} (e_{ii} + e_{2n+1-i,2n+1-i}).
pub fn involution_matrix(n: usize) -> Result<SquareMatrix> {
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let dim = 2 * n;
    let mut s = SquareMatrix::zero(dim);
    for i in 1..=n {
        let sign = if (i - 1) % 2 == 0 { ONE } else { -ONE };
        s.set(i, i, sign);
        s.set(dim + 1 - i, dim + 1 - i, sign);
    }
    Ok(s)
}

/// Transposition along the anti-diagonal: entry (i, j) of the result is
/// entry (2n+1-j, 2n+1-i) of the input.
pub fn anti_transpose(a: &SquareMatrix) -> SquareMatrix {
    let dim = a.dim();
    let mut out = SquareMatrix::zero(dim);
    for i in 1..=dim {
        for j in 1..=dim {
            out.set(i, j, a.at(dim + 1 - j, dim + 1 - i));
        }
    }
    out
}

/// The projection A -> A - S A^T S onto the algebra.
pub fn sigma(a: &SquareMatrix) -> SquareMatrix {
    let n = a.dim() / 2;
    let s = involution_matrix(n).expect("dim below 6");
    let sats = s.matmul(&anti_transpose(a)).unwrap().matmul(&s).unwrap();
    a - &sats
}

/// True iff `A = -S A^T S` within `epsilon` (max-norm).
pub fn membership_check(a: &SquareMatrix, epsilon: f64) -> bool {
    let n = a.dim() / 2;
    let s = match involution_matrix(n) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let sats = s.matmul(&anti_transpose(a)).unwrap().matmul(&s).unwrap();
    (a + &sats).max_norm() <= epsilon
}

/// Normalized Killing form (A|B) = tr(AB)/2.
pub fn killing_form(a: &SquareMatrix, b: &SquareMatrix) -> Result<C64> {
    a.check_same_dim(b)?;
    Ok(a.matmul(b)?.trace() * C64::new(0.5, 0.0))
}

/// The Weyl generators of D_n in the 2n-dimensional realization,
/// including the affine triple (e_0, f_0, h_0).
pub fn weyl_generators(n: usize) -> Result<WeylSystem> {
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let dim = 2 * n;
    let unit = |i, j| SquareMatrix::unit(dim, i, j);
    let half = C64::new(0.5, 0.0);
    let two = C64::new(2.0, 0.0);

    let mut e = Vec::with_capacity(n + 1);
    let mut f = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n + 1);

    e.push((&unit(1, dim - 1) + &unit(2, dim)).scaled(half));
    f.push((&unit(dim - 1, 1) + &unit(dim, 2)).scaled(two));
    h.push(&(&unit(1, 1) + &unit(2, 2)) - &(&unit(dim - 1, dim - 1) + &unit(dim, dim)));

    for i in 1..n {
        e.push(&unit(i + 1, i) + &unit(dim + 1 - i, dim - i));
        f.push(&unit(i, i + 1) + &unit(dim - i, dim + 1 - i));
        let hi = &(&unit(i + 1, i + 1) - &unit(i, i))
            + &(&unit(dim + 1 - i, dim + 1 - i) - &unit(dim - i, dim - i));
        h.push(hi);
    }

    e.push((&unit(n + 1, n - 1) + &unit(n + 2, n)).scaled(half));
    f.push((&unit(n - 1, n + 1) + &unit(n, n + 2)).scaled(two));
    h.push(
        &(&unit(n + 1, n + 1) + &unit(n + 2, n + 2)) - &(&unit(n - 1, n - 1) + &unit(n, n)),
    );

    Ok(WeylSystem { e, f, h })
}

/// Solve for the diagonal grading element: [rho_vee, e_i] = e_i for
/// i = 1..n together with the antisymmetry d_i = -d_{2n+1-i}.
pub fn grading_element(n: usize) -> Result<GradingElement> {
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let dim = 2 * n;
    // Each row is (coefficients over d_1..d_{2n}, rhs).
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut push_diff = |a: usize, b: usize| {
        // d_a - d_b = 1
        let mut row = vec![0.0; dim + 1];
        row[a - 1] = 1.0;
        row[b - 1] = -1.0;
        row[dim] = 1.0;
        rows.push(row);
    };
    for i in 1..n {
        push_diff(i + 1, i);
        push_diff(dim + 1 - i, dim - i);
    }
    push_diff(n + 1, n - 1);
    push_diff(n + 2, n);
    for i in 1..=n {
        // d_i + d_{2n+1-i} = 0
        let mut row = vec![0.0; dim + 1];
        row[i - 1] = 1.0;
        row[dim - i] += 1.0;
        row[dim] = 0.0;
        rows.push(row);
    }

    let d = solve_consistent(rows, dim).ok_or(Error::SingularGradingSystem)?;
    let mut d_entries = Vec::with_capacity(dim);
    for x in &d {
        let rounded = x.round();
        if (x - rounded).abs() > 1e-9 {
            return Err(Error::SingularGradingSystem);
        }
        d_entries.push(rounded as i64);
    }
    let rho_vee = SquareMatrix::from_diagonal(
        &d_entries
            .iter()
            .map(|&v| C64::new(v as f64, 0.0))
            .collect::<Vec<_>>(),
    );
    Ok(GradingElement { rho_vee, d_entries })
}

/// Gaussian elimination on an overdetermined but consistent system.
/// Returns None if the solution is not unique or a residual survives.
fn solve_consistent(mut rows: Vec<Vec<f64>>, unknowns: usize) -> Option<Vec<f64>> {
    let original = rows.clone();
    let m = rows.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let mut pivot = rank;
        let mut best = 0.0;
        for r in rank..m {
            if rows[r][col].abs() > best {
                best = rows[r][col].abs();
                pivot = r;
            }
        }
        if best < 1e-12 {
            continue;
        }
        rows.swap(rank, pivot);
        let p = rows[rank][col];
        for r in 0..m {
            if r != rank && rows[r][col].abs() > 0.0 {
                let factor = rows[r][col] / p;
                for c in col..=unknowns {
                    let v = rows[rank][c];
                    rows[r][c] -= factor * v;
                }
            }
        }
        pivot_cols.push((rank, col));
        rank += 1;
        if rank == m {
            break;
        }
    }
    if rank < unknowns {
        return None;
    }
    let mut x = vec![0.0; unknowns];
    for &(r, c) in &pivot_cols {
        x[c] = rows[r][unknowns] / rows[r][c];
    }
    // Residual check over the full original system.
    for row in &original {
        let lhs: f64 = row[..unknowns]
            .iter()
            .zip(x.iter())
            .map(|(a, b)| a * b)
            .sum();
        if (lhs - row[unknowns]).abs() > 1e-9 {
            return None;
        }
    }
    Some(x)
}

/// Entrywise mask keeping positions (a, b) with d_a - d_b = j.
pub fn principal_component(
    a: &SquareMatrix,
    j: i64,
    grading: &GradingElement,
) -> Result<SquareMatrix> {
    let dim = a.dim();
    let h = (dim - 2) as i64;
    if j < -h || j > h {
        return Err(Error::DegreeOutOfRange { degree: j, max: h });
    }
    let mut out = SquareMatrix::zero(dim);
    for i in 1..=dim {
        for k in 1..=dim {
            if grading.degree_of(i, k) == j {
                out.set(i, k, a.at(i, k));
            }
        }
    }
    Ok(out)
}

/// Z/hZ-component: positions with d_a - d_b congruent to m mod h.
pub fn cyclic_component(a: &SquareMatrix, m: i64, grading: &GradingElement) -> SquareMatrix {
    let dim = a.dim();
    let h = (dim - 2) as i64;
    let target = m.rem_euclid(h);
    let mut out = SquareMatrix::zero(dim);
    for i in 1..=dim {
        for k in 1..=dim {
            if grading.degree_of(i, k).rem_euclid(h) == target {
                out.set(i, k, a.at(i, k));
            }
        }
    }
    out
}

/// Reads the diagonal b_1..b_{2n} and returns -sum_{i=1}^{n-1} (n-i) b_i,
/// the coefficient sum of the expansion of the diagonal part over the h_i.
pub fn coroot_coefficient_sum(a: &SquareMatrix) -> C64 {
    let n = a.dim() / 2;
    let mut acc = ZERO;
    for i in 1..n {
        acc += C64::new((n - i) as f64, 0.0) * a.at(i, i);
    }
    -acc
}
