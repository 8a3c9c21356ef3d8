//! Principal Heisenberg data for the D_n realization.
//!
//! Builds the cyclic element and its centralizer basis T_j, the
//! eigenvectors of the cyclic element, the root matrices
//! A_{(alpha,beta)}, and the dual bases whose commutators with the
//! Heisenberg generators carry the hierarchy coefficients beta_{r,j}.
//! The coefficients g_r and beta_{r,j} are available both extracted
//! from the matrices and as closed forms.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use crate::algebra::{
    coroot_coefficient_sum, cyclic_component, grading_element, sigma, weyl_generators,
    GradingElement,
};
use crate::error::{Error, Result};
use crate::matrix::{C64, SquareMatrix, ONE, ZERO};

/// A residue label of the exponent lattice: an odd value in (0, h),
/// or the primed copy of n-1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentLabel {
    pub value: u32,
    pub primed: bool,
}

impl ExponentLabel {
    pub fn unprimed(value: u32) -> Self {
        Self {
            value,
            primed: false,
        }
    }

    pub fn primed(value: u32) -> Self {
        Self {
            value,
            primed: true,
        }
    }
}

impl fmt::Display for ExponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primed {
            write!(f, "{}p", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// The exponent labels of D_n: {1, 3, ..., 2n-3} plus the primed n-1.
/// For even n the value n-1 occurs twice (unprimed and primed).
pub fn labels(n: usize) -> Vec<ExponentLabel> {
    let mut out: Vec<ExponentLabel> = (0..n - 1)
        .map(|k| ExponentLabel::unprimed(2 * k as u32 + 1))
        .collect();
    out.push(ExponentLabel::primed(n as u32 - 1));
    out.sort();
    out
}

/// The label of the negated exponent: unprimed v maps to h - v, the
/// primed label is its own negative.
pub fn negate_label(n: usize, label: ExponentLabel) -> ExponentLabel {
    let h = 2 * n as u32 - 2;
    if label.primed {
        label
    } else {
        ExponentLabel::unprimed(h - label.value)
    }
}

/// kappa = 1 for even n, i for odd n.
pub fn kappa(n: usize) -> C64 {
    if n % 2 == 0 {
        ONE
    } else {
        C64::new(0.0, 1.0)
    }
}

/// omega^k with omega = exp(2 pi i / h).
pub fn omega_pow(h: usize, k: i64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k as f64 / h as f64)
}

/// Eigenvalue of the cyclic element: an h-th root of unity, or one of
/// the two labels of the two-dimensional kernel.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EigenvalueTag {
    Root(u32),
    Zero,
    ZeroPrime,
}

impl EigenvalueTag {
    pub fn eigenvalue(&self, h: usize) -> C64 {
        match self {
            EigenvalueTag::Root(s) => omega_pow(h, *s as i64),
            _ => ZERO,
        }
    }
}

/// Tag of the negated eigenvalue: -omega^s = omega^{s + h/2}; both
/// kernel labels are fixed.
pub fn negate_tag(n: usize, tag: EigenvalueTag) -> EigenvalueTag {
    let h = 2 * n as u32 - 2;
    match tag {
        EigenvalueTag::Root(s) => EigenvalueTag::Root((s + h / 2) % h),
        other => other,
    }
}

/// Lambda = sum of all e_i including the affine one.
pub fn cyclic_element(n: usize) -> Result<SquareMatrix> {
    let gens = weyl_generators(n)?;
    let mut lambda = SquareMatrix::zero(2 * n);
    for e in &gens.e {
        lambda = &lambda + e;
    }
    Ok(lambda)
}

/// The centralizer basis {T_j | j in I}: powers of Lambda for unprimed
/// labels, and the explicit kernel combination for the primed one.
pub fn heisenberg_basis(n: usize) -> Result<BTreeMap<ExponentLabel, SquareMatrix>> {
    let lambda = cyclic_element(n)?;
    let dim = 2 * n;
    let mut out = BTreeMap::new();
    let mut power = lambda.clone();
    let mut value = 1u32;
    for label in labels(n) {
        if label.primed {
            continue;
        }
        while value < label.value {
            power = power.matmul(&lambda)?;
            value += 1;
        }
        out.insert(label, power.clone());
    }

    let unit = |i, j| SquareMatrix::unit(dim, i, j);
    let half = C64::new(0.5, 0.0);
    let quarter = C64::new(0.25, 0.0);
    let m1 = &(&unit(n, 1) - &unit(n + 1, 1).scaled(half))
        + &(&unit(n + 1, dim).scaled(quarter) - &unit(n, dim).scaled(half));
    let m2 = &(&unit(dim, n + 1) - &unit(dim, n).scaled(half))
        + &(&unit(1, n).scaled(quarter) - &unit(1, n + 1).scaled(half));
    let sign = if n % 2 == 0 { ONE } else { -ONE };
    let prefactor = kappa(n) * C64::new(((n - 1) as f64).sqrt(), 0.0);
    let primed = (&m1 + &m2.scaled(sign)).scaled(prefactor);
    out.insert(ExponentLabel::primed(n as u32 - 1), primed);
    Ok(out)
}

/// The chosen eigenvector of Lambda for the given tag.
pub fn eta(n: usize, tag: EigenvalueTag) -> Result<Vec<C64>> {
    let dim = 2 * n;
    let h = 2 * n - 2;
    match tag {
        EigenvalueTag::Root(s) => {
            if s as usize >= h {
                return Err(Error::InvalidTag(format!("root index {s} >= h = {h}")));
            }
            let w = |k: i64| omega_pow(h, k * s as i64);
            let mut v = vec![ZERO; dim];
            v[0] = C64::new(0.5, 0.0);
            for j in 2..=n {
                v[j - 1] = w(-(j as i64 - 1));
            }
            v[n] = C64::new(0.5, 0.0) * w(n as i64 - 1);
            for row in n + 2..=dim {
                v[row - 1] = w(dim as i64 - row as i64);
            }
            Ok(v)
        }
        EigenvalueTag::Zero | EigenvalueTag::ZeroPrime => {
            let sign = if tag == EigenvalueTag::Zero { ONE } else { -ONE };
            let ki = sign / kappa(n);
            let mut v = vec![ZERO; dim];
            v[0] = C64::new(-0.5, 0.0);
            v[dim - 1] = ONE;
            v[n - 1] = ki;
            v[n] = ki * C64::new(-0.5, 0.0);
            Ok(v)
        }
    }
}

/// A_{(alpha,beta)} = sigma(eta_alpha eta_{-beta}^T), where the row
/// vector is transposed along the anti-diagonal, i.e. reversed.
pub fn root_matrix(n: usize, alpha: EigenvalueTag, beta: EigenvalueTag) -> Result<SquareMatrix> {
    let left = eta(n, alpha)?;
    let mut right = eta(n, negate_tag(n, beta))?;
    right.reverse();
    Ok(sigma(&SquareMatrix::outer(&left, &right)))
}

/// The dual bases of the finite algebra: {T_j} together with the cyclic
/// components of the normalized root matrices.
#[derive(Clone, Debug)]
pub struct DualBases {
    pub n: usize,
    pub h: usize,
    pub t: BTreeMap<ExponentLabel, SquareMatrix>,
    x: Vec<Vec<SquareMatrix>>,
    y: Vec<Vec<SquareMatrix>>,
}

impl DualBases {
    /// X-tilde component of family r (1-based) at cyclic degree m.
    pub fn x(&self, r: usize, m: i64) -> &SquareMatrix {
        &self.x[r - 1][m.rem_euclid(self.h as i64) as usize]
    }

    pub fn y(&self, r: usize, m: i64) -> &SquareMatrix {
        &self.y[r - 1][m.rem_euclid(self.h as i64) as usize]
    }

    pub fn grading(&self) -> Result<GradingElement> {
        grading_element(self.n)
    }
}

/// Build the dual bases from the root matrices per the normalization
/// table: 1/sqrt(h) for the root-eigenvalue families, 1/sqrt(2) for the
/// two kernel families.
pub fn dual_bases(n: usize) -> Result<DualBases> {
    let h = 2 * n - 2;
    let grading = grading_element(n)?;
    let inv_sqrt_h = C64::new(1.0 / (h as f64).sqrt(), 0.0);
    let inv_sqrt_2 = C64::new(1.0 / 2f64.sqrt(), 0.0);
    let minus_one = EigenvalueTag::Root(n as u32 - 1);

    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for r in 1..=n {
        let (x_full, y_full) = if r <= n - 2 {
            let a = root_matrix(n, EigenvalueTag::Root(0), EigenvalueTag::Root(r as u32))?;
            let b = root_matrix(
                n,
                minus_one,
                negate_tag(n, EigenvalueTag::Root(r as u32)),
            )?;
            (a.scaled(inv_sqrt_h), b.scaled(-inv_sqrt_h))
        } else if r == n - 1 {
            let a = root_matrix(n, EigenvalueTag::Root(0), EigenvalueTag::Zero)?;
            let b = root_matrix(n, minus_one, EigenvalueTag::ZeroPrime)?;
            (a.scaled(inv_sqrt_2), b.scaled(inv_sqrt_2))
        } else {
            let a = root_matrix(n, EigenvalueTag::Root(0), EigenvalueTag::ZeroPrime)?;
            let b = root_matrix(n, minus_one, EigenvalueTag::Zero)?;
            (a.scaled(inv_sqrt_2), b.scaled(inv_sqrt_2))
        };
        let components = |full: &SquareMatrix| -> Vec<SquareMatrix> {
            (0..h as i64)
                .map(|m| cyclic_component(full, m, &grading))
                .collect()
        };
        x.push(components(&x_full));
        y.push(components(&y_full));
    }
    Ok(DualBases {
        n,
        h,
        t: heisenberg_basis(n)?,
        x,
        y,
    })
}

/// Extract beta_{r,label} as the proportionality constant in
/// [sqrt(2) T_label, X_0^{(r)}] = beta X_{label}^{(r)}, cross-checked
/// against the Y-side relation with the opposite sign.
pub fn beta_extract(
    r: usize,
    label: ExponentLabel,
    bases: &DualBases,
    epsilon: f64,
) -> Result<C64> {
    let sqrt2 = C64::new(2f64.sqrt(), 0.0);
    let t = bases
        .t
        .get(&label)
        .ok_or_else(|| Error::InvalidLabel(label.to_string()))?
        .scaled(sqrt2);

    let ratio_x = proportionality(
        &t.commutator(bases.x(r, 0))?,
        bases.x(r, label.value as i64),
        label,
        epsilon,
    )?;
    let ratio_y = proportionality(
        &t.commutator(bases.y(r, 0))?,
        bases.y(r, label.value as i64),
        label,
        epsilon,
    )?;
    let scale = ratio_x.norm().max(1.0);
    if (ratio_x + ratio_y).norm() > epsilon * scale {
        return Err(Error::ProportionalityFailure {
            label: label.to_string(),
            deviation: (ratio_x + ratio_y).norm(),
        });
    }
    Ok(ratio_x)
}

/// Ratio c with `numer = c * target`, verified entrywise.
fn proportionality(
    numer: &SquareMatrix,
    target: &SquareMatrix,
    label: ExponentLabel,
    epsilon: f64,
) -> Result<C64> {
    let dim = target.dim();
    let mut best = ZERO;
    let mut best_mag = 0.0;
    let mut at = (1, 1);
    for i in 1..=dim {
        for j in 1..=dim {
            let mag = target.at(i, j).norm();
            if mag > best_mag {
                best_mag = mag;
                best = target.at(i, j);
                at = (i, j);
            }
        }
    }
    if best_mag == 0.0 {
        return Err(Error::ProportionalityFailure {
            label: label.to_string(),
            deviation: f64::INFINITY,
        });
    }
    let ratio = numer.at(at.0, at.1) / best;
    let deviation = (numer - &target.scaled(ratio)).max_norm();
    let scale = numer.max_norm().max(ratio.norm() * target.max_norm()).max(1.0);
    if deviation > epsilon * scale {
        return Err(Error::ProportionalityFailure {
            label: label.to_string(),
            deviation,
        });
    }
    Ok(ratio)
}

/// Closed form of beta_{r,label}.
pub fn beta_closed(n: usize, r: usize, label: ExponentLabel) -> C64 {
    let h = 2 * n - 2;
    let sqrt2 = C64::new(2f64.sqrt(), 0.0);
    if label.primed {
        let v = ((2 * n - 2) as f64).sqrt();
        if r == n - 1 {
            C64::new(v, 0.0)
        } else if r == n {
            C64::new(-v, 0.0)
        } else {
            ZERO
        }
    } else if r <= n - 2 {
        sqrt2 * (ONE + omega_pow(h, (r as i64) * label.value as i64))
    } else {
        sqrt2
    }
}

/// g_r from the realization: the product of the coroot coefficient sums
/// of the degree-zero dual basis elements.
pub fn g_extract(r: usize, bases: &DualBases) -> C64 {
    coroot_coefficient_sum(bases.x(r, 0)) * coroot_coefficient_sum(bases.y(r, 0))
}

/// Closed form of g_r.
pub fn g_closed(n: usize, r: usize) -> C64 {
    let h = 2 * n - 2;
    if r <= n - 2 {
        let c = omega_pow(h, r as i64) + omega_pow(h, -(r as i64));
        let two = C64::new(2.0, 0.0);
        C64::new((n - 1) as f64 / 2.0, 0.0) * (two - c) / (two + c)
    } else {
        C64::new(((n - 1) * (n - 1)) as f64 / 2.0, 0.0)
    }
}

/// The coefficient package consumed by the bilinear-equation engine.
#[derive(Clone, Debug)]
pub struct HierarchyCoefficients {
    pub n: usize,
    pub h: usize,
    pub kappa: C64,
    labels: Vec<ExponentLabel>,
    beta: BTreeMap<(usize, ExponentLabel), C64>,
    g: Vec<C64>,
    rho_x: Option<Vec<C64>>,
    rho_y: Option<Vec<C64>>,
}

impl HierarchyCoefficients {
    /// Coefficients from the closed forms alone.
    pub fn closed(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        let labels = labels(n);
        let mut beta = BTreeMap::new();
        for r in 1..=n {
            for &label in &labels {
                beta.insert((r, label), beta_closed(n, r, label));
            }
        }
        Ok(Self {
            n,
            h: 2 * n - 2,
            kappa: kappa(n),
            labels,
            beta,
            g: (1..=n).map(|r| g_closed(n, r)).collect(),
            rho_x: None,
            rho_y: None,
        })
    }

    /// Coefficients extracted from the dual bases; also records the two
    /// pairing factors whose product is g_r, needed by the Fock-space
    /// action of the root generators.
    pub fn extracted(n: usize, epsilon: f64) -> Result<Self> {
        let bases = dual_bases(n)?;
        Self::from_bases(&bases, epsilon)
    }

    pub fn from_bases(bases: &DualBases, epsilon: f64) -> Result<Self> {
        let n = bases.n;
        let labels = labels(n);
        let mut beta = BTreeMap::new();
        for r in 1..=n {
            for &label in &labels {
                beta.insert((r, label), beta_extract(r, label, bases, epsilon)?);
            }
        }
        let rho_x: Vec<C64> = (1..=n)
            .map(|r| coroot_coefficient_sum(bases.x(r, 0)))
            .collect();
        let rho_y: Vec<C64> = (1..=n)
            .map(|r| coroot_coefficient_sum(bases.y(r, 0)))
            .collect();
        let g = rho_x.iter().zip(rho_y.iter()).map(|(a, b)| a * b).collect();
        Ok(Self {
            n,
            h: 2 * n - 2,
            kappa: kappa(n),
            labels,
            beta,
            g,
            rho_x: Some(rho_x),
            rho_y: Some(rho_y),
        })
    }

    pub fn labels(&self) -> &[ExponentLabel] {
        &self.labels
    }

    /// beta_{r,label}; levels share the residue label's value.
    pub fn beta(&self, r: usize, label: ExponentLabel) -> C64 {
        self.beta[&(r, label)]
    }

    pub fn g(&self, r: usize) -> C64 {
        self.g[r - 1]
    }

    pub fn sum_g(&self) -> C64 {
        self.g.iter().sum()
    }

    /// n h (h+1) / 12, the constant the g_r must sum to.
    pub fn g_sum_target(&self) -> f64 {
        (self.n * self.h * (self.h + 1)) as f64 / 12.0
    }

    /// (rho_vee | X_0^{(r)}); available only for extracted coefficients.
    pub fn rho_x(&self, r: usize) -> Result<C64> {
        self.rho_x
            .as_ref()
            .map(|v| v[r - 1])
            .ok_or(Error::MissingPairings)
    }

    pub fn rho_y(&self, r: usize) -> Result<C64> {
        self.rho_y
            .as_ref()
            .map(|v| v[r - 1])
            .ok_or(Error::MissingPairings)
    }

    /// Test hook: perturb beta_{1,j_min} in place by `delta`.
    pub fn inject_beta_error(&mut self, delta: f64) {
        let label = self.labels[0];
        if let Some(v) = self.beta.get_mut(&(1, label)) {
            *v += C64::new(delta, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{killing_form, membership_check};
    use crate::matrix::rank_of_rows;

    const EPS: f64 = 1e-9;

    fn assert_c64(a: C64, b: C64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} != {b}");
    }

    fn all_tags(n: usize) -> Vec<EigenvalueTag> {
        let h = 2 * n as u32 - 2;
        let mut tags: Vec<EigenvalueTag> = (0..h).map(EigenvalueTag::Root).collect();
        tags.push(EigenvalueTag::Zero);
        tags.push(EigenvalueTag::ZeroPrime);
        tags
    }

    #[test]
    fn label_sets() {
        let l4 = labels(4);
        assert_eq!(
            l4,
            vec![
                ExponentLabel::unprimed(1),
                ExponentLabel::unprimed(3),
                ExponentLabel::primed(3),
                ExponentLabel::unprimed(5),
            ]
        );
        let l5 = labels(5);
        assert_eq!(l5.len(), 5);
        assert!(l5.contains(&ExponentLabel::primed(4)));
        assert!(!l5.contains(&ExponentLabel::unprimed(4)));
    }

    #[test]
    fn negate_label_examples() {
        assert_eq!(
            negate_label(4, ExponentLabel::unprimed(1)),
            ExponentLabel::unprimed(5)
        );
        assert_eq!(
            negate_label(4, ExponentLabel::primed(3)),
            ExponentLabel::primed(3)
        );
        for n in 3..=8 {
            for label in labels(n) {
                assert_eq!(negate_label(n, negate_label(n, label)), label);
            }
        }
    }

    #[test]
    fn cyclic_element_spectrum() {
        let n = 4;
        let h = 2 * n - 2;
        let lambda = cyclic_element(n).unwrap();
        assert!(lambda.determinant().norm() <= 1e-12);

        for s in 0..h {
            let tag = EigenvalueTag::Root(s as u32);
            let v = eta(n, tag).unwrap();
            let lv = lambda.apply(&v).unwrap();
            let om = tag.eigenvalue(h);
            for (a, b) in lv.iter().zip(v.iter()) {
                assert_c64(*a, om * b, EPS);
            }
        }

        // characteristic polynomial z^2 (z^h - 1) sampled at random points
        let dim = 2 * n;
        for k in 0..5 {
            let z = C64::from_polar(0.7 + 0.1 * k as f64, 1.1 * k as f64);
            let mut m = SquareMatrix::identity(dim).scaled(z);
            m = &m - &lambda;
            let got = m.determinant();
            let expect = z.powu(2) * (z.powu(h as u32) - ONE);
            assert_c64(got, expect, 1e-9 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn heisenberg_basis_properties() {
        for n in 3..=6 {
            let h = 2 * n - 2;
            let ts = heisenberg_basis(n).unwrap();
            let grading = grading_element(n).unwrap();
            assert_eq!(ts.len(), n);

            for (label, t) in &ts {
                assert!(membership_check(t, EPS), "T_{label} not in algebra");
                let proj = cyclic_component(t, label.value as i64, &grading);
                assert!((t - &proj).max_norm() <= 1e-12);
            }

            // commuting family
            let mats: Vec<_> = ts.values().collect();
            for a in &mats {
                for b in &mats {
                    assert!(a.commutator(b).unwrap().max_norm() <= 1e-9);
                }
            }

            // (T_i | T_{h-j}) = (n-1) delta_{ij}
            for (la, ta) in &ts {
                for (lb, tb) in &ts {
                    let pairing = killing_form(ta, ts.get(&negate_label(n, *lb)).unwrap()).unwrap();
                    let expect = if la == lb {
                        C64::new((n - 1) as f64, 0.0)
                    } else {
                        ZERO
                    };
                    assert_c64(pairing, expect, EPS);
                    let _ = (h, tb);
                }
            }
        }
    }

    #[test]
    fn primed_unprimed_orthogonal_for_even_rank() {
        let ts = heisenberg_basis(4).unwrap();
        let t3 = ts.get(&ExponentLabel::unprimed(3)).unwrap();
        let t3p = ts.get(&ExponentLabel::primed(3)).unwrap();
        assert!(killing_form(t3, t3p).unwrap().norm() <= EPS);
    }

    #[test]
    fn eta_eigenrelations() {
        for n in [4usize, 5] {
            let h = 2 * n - 2;
            let ts = heisenberg_basis(n).unwrap();
            let sqrt_nm1 = ((n - 1) as f64).sqrt();
            for tag in all_tags(n) {
                let v = eta(n, tag).unwrap();
                for (label, t) in &ts {
                    let tv = t.apply(&v).unwrap();
                    let expect: C64 = if label.primed {
                        let sign = match tag {
                            EigenvalueTag::Zero => (-1f64).powi(n as i32 - 1),
                            EigenvalueTag::ZeroPrime => (-1f64).powi(n as i32),
                            _ => 0.0,
                        };
                        C64::new(sign * sqrt_nm1, 0.0)
                    } else {
                        match tag {
                            EigenvalueTag::Root(s) => {
                                omega_pow(h, s as i64 * label.value as i64)
                            }
                            _ => ZERO,
                        }
                    };
                    for (a, b) in tv.iter().zip(v.iter()) {
                        assert_c64(*a, expect * b, EPS);
                    }
                }
            }
        }
    }

    #[test]
    fn eta_rejects_bad_tag() {
        assert!(matches!(
            eta(4, EigenvalueTag::Root(6)),
            Err(crate::error::Error::InvalidTag(_))
        ));
    }

    #[test]
    fn eta_vectors_span() {
        for n in 3..=6 {
            let rows: Vec<Vec<C64>> = all_tags(n)
                .into_iter()
                .map(|tag| eta(n, tag).unwrap())
                .collect();
            assert_eq!(rows.len(), 2 * n);
            assert_eq!(rank_of_rows(rows, 1e-9), 2 * n);
        }
    }

    #[test]
    fn root_matrix_commutation() {
        for n in [4usize, 5] {
            let h = 2 * n - 2;
            let ts = heisenberg_basis(n).unwrap();
            let sqrt_nm1 = ((n - 1) as f64).sqrt();
            let delta = |t: EigenvalueTag| -> f64 {
                match t {
                    EigenvalueTag::Zero => 1.0,
                    EigenvalueTag::ZeroPrime => -1.0,
                    _ => 0.0,
                }
            };
            for alpha in all_tags(n) {
                for beta in all_tags(n) {
                    let a = root_matrix(n, alpha, beta).unwrap();
                    assert!(membership_check(&a, EPS));
                    for (label, t) in &ts {
                        let c = t.commutator(&a).unwrap();
                        let factor = if label.primed {
                            // the alpha slot carries the same (-1)^{n-1} sign
                            // as the eigenvalue relation on the kernel vectors
                            let alpha_sign = if n % 2 == 0 { -1.0 } else { 1.0 };
                            C64::new(
                                (alpha_sign * delta(alpha) + delta(beta)) * sqrt_nm1,
                                0.0,
                            )
                        } else {
                            let pow = |tag: EigenvalueTag| -> C64 {
                                match tag {
                                    EigenvalueTag::Root(s) => {
                                        omega_pow(h, s as i64 * label.value as i64)
                                    }
                                    _ => ZERO,
                                }
                            };
                            pow(alpha) + pow(beta)
                        };
                        let scale = a.max_norm().max(1.0);
                        assert!(
                            (&c - &a.scaled(factor)).max_norm() <= EPS * scale,
                            "n={n} label={label} alpha={alpha:?} beta={beta:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn root_matrix_pairing_table() {
        for n in 3..=8 {
            let h = 2 * n - 2;
            let grading = grading_element(n).unwrap();
            let comp0 = |m: &SquareMatrix| cyclic_component(m, 0, &grading);
            let minus_one = EigenvalueTag::Root(n as u32 - 1);

            for r in 1..=n - 2 {
                for s in 1..=n - 2 {
                    let a = comp0(&root_matrix(n, EigenvalueTag::Root(0), EigenvalueTag::Root(r as u32)).unwrap());
                    let b = comp0(
                        &root_matrix(n, minus_one, negate_tag(n, EigenvalueTag::Root(s as u32)))
                            .unwrap(),
                    );
                    let expect = if r == s {
                        C64::new(-(h as f64), 0.0)
                    } else {
                        ZERO
                    };
                    assert_c64(killing_form(&a, &b).unwrap(), expect, EPS);
                }
            }

            let kernels = [EigenvalueTag::Zero, EigenvalueTag::ZeroPrime];
            for r in 1..=n - 2 {
                let a = comp0(&root_matrix(n, EigenvalueTag::Root(0), EigenvalueTag::Root(r as u32)).unwrap());
                for k in kernels {
                    let b = comp0(&root_matrix(n, minus_one, k).unwrap());
                    assert_c64(killing_form(&a, &b).unwrap(), ZERO, EPS);
                }
            }
            for ka in kernels {
                for kb in kernels {
                    let a = comp0(&root_matrix(n, EigenvalueTag::Root(0), ka).unwrap());
                    let b = comp0(&root_matrix(n, minus_one, kb).unwrap());
                    let expect = if ka == kb { ZERO } else { C64::new(2.0, 0.0) };
                    assert_c64(killing_form(&a, &b).unwrap(), expect, EPS);
                }
            }
        }
    }

    #[test]
    fn dual_bases_duality() {
        for n in 3..=6 {
            let bases = dual_bases(n).unwrap();
            let h = bases.h as i64;
            for r in 1..=n {
                for s in 1..=n {
                    for m in 0..h {
                        let v = killing_form(bases.x(r, m), bases.y(s, -m)).unwrap();
                        let expect = if r == s { ONE } else { ZERO };
                        assert_c64(v, expect, EPS);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_bases_diagonals_independent() {
        for n in [4usize, 5] {
            let bases = dual_bases(n).unwrap();
            let rows: Vec<Vec<C64>> = (1..=n).map(|r| bases.x(r, 0).diagonal()).collect();
            assert_eq!(rank_of_rows(rows, 1e-9), n);
        }
        let bases = dual_bases(4).unwrap();
        let v = killing_form(bases.x(1, 0), bases.y(2, 0)).unwrap();
        assert_c64(v, ZERO, EPS);
    }

    #[test]
    fn beta_extract_matches_closed() {
        for n in 3..=8 {
            let bases = dual_bases(n).unwrap();
            for r in 1..=n {
                for label in labels(n) {
                    let got = beta_extract(r, label, &bases, EPS).unwrap();
                    let expect = beta_closed(n, r, label);
                    assert!(
                        (got - expect).norm() <= 1e-9,
                        "n={n} r={r} label={label}: {got} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn beta_closed_examples() {
        let h = 6;
        // n=4, r=1, label 1: sqrt(2)(1 + omega)
        let expect = C64::new(2f64.sqrt(), 0.0) * (ONE + omega_pow(h, 1));
        assert_c64(beta_closed(4, 1, ExponentLabel::unprimed(1)), expect, 1e-12);
        // r = n-1 and r = n on unprimed labels
        assert_c64(
            beta_closed(4, 3, ExponentLabel::unprimed(3)),
            C64::new(2f64.sqrt(), 0.0),
            1e-12,
        );
        // primed label vanishes below r = n-1 and flips sign at r = n
        assert_c64(beta_closed(4, 1, ExponentLabel::primed(3)), ZERO, 1e-12);
        assert_c64(
            beta_closed(4, 4, ExponentLabel::primed(3)),
            C64::new(-(6f64).sqrt(), 0.0),
            1e-12,
        );
        // even n, odd r, unprimed value n-1: 1 + omega^{r(n-1)} = 1 - 1 = 0
        assert_c64(beta_closed(4, 1, ExponentLabel::unprimed(3)), ZERO, 1e-12);
    }

    #[test]
    fn g_values_frozen() {
        let bases = dual_bases(4).unwrap();
        let expect4 = [0.5, 4.5, 4.5, 4.5];
        for r in 1..=4 {
            assert_c64(g_extract(r, &bases), C64::new(expect4[r - 1], 0.0), 1e-9);
            assert_c64(g_closed(4, r), C64::new(expect4[r - 1], 0.0), 1e-12);
        }

        let bases5 = dual_bases(5).unwrap();
        let s = 4.0 * 2f64.sqrt();
        let expect5 = [6.0 - s, 2.0, 6.0 + s, 8.0, 8.0];
        for r in 1..=5 {
            assert_c64(g_extract(r, &bases5), C64::new(expect5[r - 1], 0.0), 1e-9);
            assert_c64(g_closed(5, r), C64::new(expect5[r - 1], 0.0), 1e-12);
        }
    }

    #[test]
    fn g_sum_identity() {
        for n in 3..=8 {
            let bases = dual_bases(n).unwrap();
            let sum: C64 = (1..=n).map(|r| g_extract(r, &bases)).sum();
            let h = 2 * n - 2;
            let target = (n * h * (h + 1)) as f64 / 12.0;
            assert!((sum - C64::new(target, 0.0)).norm() <= 1e-9, "n={n}");
            for r in 1..=n {
                let g = g_extract(r, &bases);
                assert!(g.im.abs() <= 1e-9 && g.re > 0.0);
            }
        }
    }

    #[test]
    fn commutator_grading_full() {
        for n in [4usize, 5] {
            let bases = dual_bases(n).unwrap();
            let sqrt2 = C64::new(2f64.sqrt(), 0.0);
            for r in 1..=n {
                for label in labels(n) {
                    let beta = beta_closed(n, r, label);
                    let t = bases.t.get(&label).unwrap().scaled(sqrt2);
                    for m in 0..bases.h as i64 {
                        let lhs = t.commutator(bases.x(r, m)).unwrap();
                        let rhs = bases.x(r, m + label.value as i64).scaled(beta);
                        assert!((&lhs - &rhs).max_norm() <= EPS * lhs.max_norm().max(1.0));

                        let lhs_y = t.commutator(bases.y(r, -m)).unwrap();
                        let rhs_y = bases.y(r, -m + label.value as i64).scaled(-beta);
                        assert!((&lhs_y - &rhs_y).max_norm() <= EPS * lhs_y.max_norm().max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn g_invariant_under_rescaling() {
        // uniform rescaling (c X, Y/c) is a legitimate change of dual
        // bases; g_extract must not move.
        let n = 4;
        let mut bases = dual_bases(n).unwrap();
        let c = C64::new(1.7, 0.4);
        let g_before: Vec<C64> = (1..=n).map(|r| g_extract(r, &bases)).collect();
        for r in 0..n {
            for m in 0..bases.h {
                bases.x[r][m] = bases.x[r][m].scaled(c);
                bases.y[r][m] = bases.y[r][m].scaled(ONE / c);
            }
        }
        for r in 1..=n {
            assert_c64(g_extract(r, &bases), g_before[r - 1], 1e-9);
            assert_c64(
                killing_form(bases.x(r, 0), bases.y(r, 0)).unwrap(),
                ONE,
                EPS,
            );
        }
    }

    #[test]
    fn beta_depends_on_basis_choice_g_does_not() {
        // reweight components geometrically, X_m -> q^m X_m with q^h = 1:
        // duality survives, beta picks up q^{-value}, g is unchanged.
        let n = 4;
        let h = 2 * n - 2;
        let mut bases = dual_bases(n).unwrap();
        let q = omega_pow(h, 1);
        let before: Vec<Vec<C64>> = (1..=n)
            .map(|r| {
                labels(n)
                    .into_iter()
                    .map(|l| beta_extract(r, l, &bases, EPS).unwrap())
                    .collect()
            })
            .collect();
        let g_before: Vec<C64> = (1..=n).map(|r| g_extract(r, &bases)).collect();

        // the stored y[r][m] plays the role of Y_{-(-m)}, so it carries
        // the same q^m factor; duality survives because q^h = 1
        for r in 0..n {
            for m in 0..h {
                let qm = omega_pow(h, m as i64);
                bases.x[r][m] = bases.x[r][m].scaled(qm);
                bases.y[r][m] = bases.y[r][m].scaled(qm);
            }
        }

        for r in 1..=n {
            for m in 0..h as i64 {
                let v = killing_form(bases.x(r, m), bases.y(r, -m)).unwrap();
                assert_c64(v, ONE, EPS);
            }
            assert_c64(g_extract(r, &bases), g_before[r - 1], 1e-9);
            for (k, label) in labels(n).into_iter().enumerate() {
                let got = beta_extract(r, label, &bases, EPS).unwrap();
                let expect = before[r - 1][k] * (ONE / q.powu(label.value));
                assert_c64(got, expect, 1e-9);
            }
        }
        let _ = q;
    }

    #[test]
    fn extracted_coefficients_package() {
        let coeffs = HierarchyCoefficients::extracted(4, EPS).unwrap();
        assert_c64(coeffs.sum_g(), C64::new(14.0, 0.0), 1e-9);
        assert_eq!(coeffs.g_sum_target(), 14.0);
        for r in 1..=4 {
            let prod = coeffs.rho_x(r).unwrap() * coeffs.rho_y(r).unwrap();
            assert_c64(prod, coeffs.g(r), 1e-9);
        }
        let closed = HierarchyCoefficients::closed(4).unwrap();
        assert!(closed.rho_x(1).is_err());
        for r in 1..=4 {
            for label in closed.labels().to_vec() {
                assert_c64(coeffs.beta(r, label), closed.beta(r, label), 1e-9);
            }
        }

        let mut tampered = coeffs.clone();
        tampered.inject_beta_error(0.01);
        let l1 = ExponentLabel::unprimed(1);
        assert!((tampered.beta(1, l1) - coeffs.beta(1, l1)).norm() > 0.009);
    }
}
