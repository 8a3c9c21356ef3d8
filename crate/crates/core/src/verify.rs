//! Named verification suites with machine-readable results.
//!
//! Each suite condenses a family of structure identities into a single
//! maximal residual. The evaluator-equivalence check deliberately feeds
//! the operator-form evaluator the extracted coefficients and the
//! residue-form evaluator the closed-form ones, so the two routes stay
//! independent end to end; a fault injected into the extracted table
//! shows up both in the coefficient cross-check and here.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    cyclic_component, grading_element, killing_form, membership_check, sigma, weyl_generators,
};
use crate::error::Result;
use crate::heisenberg::{
    beta_closed, cyclic_element, dual_bases, eta, g_closed, heisenberg_basis, labels,
    negate_label, negate_tag, root_matrix, EigenvalueTag, HierarchyCoefficients,
};
use crate::hirota::{exp_series, gm_residual, kw_lhs, orbit_infinitesimal_check, Generator};
use crate::matrix::{C64, SquareMatrix, ONE, ZERO};
use crate::series::{enumerate_family_monomials, Family, TruncatedSeries, VarSpace};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub elapsed: Duration,
}

impl CheckResult {
    fn finish(name: &str, residual: f64, tolerance: f64, start: Instant) -> Self {
        Self {
            name: name.to_string(),
            passed: residual <= tolerance,
            max_residual: residual,
            elapsed: start.elapsed(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub degree: u32,
    pub tolerance: f64,
    pub seed: u64,
    pub pairs: usize,
    pub beta_error: Option<f64>,
}

impl VerifyConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            degree: 8,
            tolerance: 1e-8,
            seed: 42,
            pairs: 20,
            beta_error: None,
        }
    }
}

/// Dense random tau function: every t-monomial up to the bound, with
/// coefficients uniform in the complex unit box.
pub fn random_tau(space: &Arc<VarSpace>, rng: &mut ChaCha8Rng) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(space);
    for m in enumerate_family_monomials(space, Family::T, space.bound()) {
        s.add_term(
            m,
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        );
    }
    s
}

fn random_matrix(dim: usize, rng: &mut ChaCha8Rng) -> SquareMatrix {
    let mut m = SquareMatrix::zero(dim);
    for i in 1..=dim {
        for j in 1..=dim {
            m.set(
                i,
                j,
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
    }
    m
}

/// Weyl relations, membership, grading element, Killing invariance and
/// the principal-gradation partition.
pub fn matrix_algebra_suite(n: usize, tolerance: f64, seed: u64) -> Result<CheckResult> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let gens = weyl_generators(n)?;
    let grading = grading_element(n)?;
    let dim = 2 * n;
    let h = dim as i64 - 2;

    for i in 0..=n {
        for j in 0..=n {
            let c = gens.e[i].commutator(&gens.f[j])?;
            let expect = if i == j {
                gens.h[i].clone()
            } else {
                SquareMatrix::zero(dim)
            };
            worst = worst.max((&c - &expect).max_norm());
        }
        worst = worst.max((killing_form(&gens.e[i], &gens.f[i])? - ONE).norm());
    }

    for g in gens.e.iter().chain(gens.f.iter()).chain(gens.h.iter()) {
        if !membership_check(g, tolerance) {
            worst = worst.max(1.0);
        }
    }

    for i in 1..=n {
        worst = worst.max((&grading.rho_vee.commutator(&gens.e[i])? - &gens.e[i]).max_norm());
        let cf = grading.rho_vee.commutator(&gens.f[i])?;
        worst = worst.max((&cf + &gens.f[i]).max_norm());
    }
    let c0 = grading.rho_vee.commutator(&gens.e[0])?;
    worst = worst.max((&c0 - &gens.e[0].scaled(C64::new(1.0 - h as f64, 0.0))).max_norm());
    worst = worst.max(grading.rho_vee.trace().norm());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let a = sigma(&random_matrix(dim, &mut rng));
        let b = sigma(&random_matrix(dim, &mut rng));
        let c = sigma(&random_matrix(dim, &mut rng));
        if !membership_check(&a, tolerance) {
            worst = worst.max(1.0);
        }
        let lhs = killing_form(&a.commutator(&b)?, &c)?;
        let rhs = killing_form(&b, &a.commutator(&c)?)?;
        let scale = (a.max_norm() * b.max_norm() * c.max_norm()).max(1.0);
        worst = worst.max((lhs + rhs).norm() / scale);

        let mut partition = SquareMatrix::zero(dim);
        for j in -h..=h {
            partition = &partition + &crate::algebra::principal_component(&a, j, &grading)?;
        }
        worst = worst.max((&partition - &a).max_norm());
    }

    for e in &gens.e {
        worst = worst.max((&cyclic_component(e, 1, &grading) - e).max_norm());
    }
    for f in &gens.f {
        worst = worst.max((&cyclic_component(f, -1, &grading) - f).max_norm());
    }

    Ok(CheckResult::finish("matrix-algebra", worst, tolerance, start))
}

/// Heisenberg basis pairings, eigenvector relations, root-matrix
/// pairing table, duality and the commutator grading.
pub fn heisenberg_suite(n: usize, tolerance: f64) -> Result<CheckResult> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let h = 2 * n - 2;
    let ts = heisenberg_basis(n)?;
    let lambda = cyclic_element(n)?;
    let grading = grading_element(n)?;

    // (T_i | T_{h-j}) = (n-1) delta_{ij}
    for (la, ta) in &ts {
        for (lb, _) in &ts {
            let pairing = killing_form(ta, ts.get(&negate_label(n, *lb)).unwrap())?;
            let expect = if la == lb {
                C64::new((n - 1) as f64, 0.0)
            } else {
                ZERO
            };
            worst = worst.max((pairing - expect).norm());
        }
        for tb in ts.values() {
            worst = worst.max(ta.commutator(tb)?.max_norm());
        }
    }

    // eigenvector relations
    for s in 0..h as u32 {
        let tag = EigenvalueTag::Root(s);
        let v = eta(n, tag)?;
        let lv = lambda.apply(&v)?;
        let om = tag.eigenvalue(h);
        for (a, b) in lv.iter().zip(v.iter()) {
            worst = worst.max((a - om * b).norm());
        }
    }
    for tag in [EigenvalueTag::Zero, EigenvalueTag::ZeroPrime] {
        let v = eta(n, tag)?;
        for x in lambda.apply(&v)? {
            worst = worst.max(x.norm());
        }
    }

    // pairing table of the degree-zero root-matrix components
    let comp0 = |m: &SquareMatrix| cyclic_component(m, 0, &grading);
    let minus_one = EigenvalueTag::Root(n as u32 - 1);
    for r in 1..=n - 2 {
        for s in 1..=n - 2 {
            let a = comp0(&root_matrix(
                n,
                EigenvalueTag::Root(0),
                EigenvalueTag::Root(r as u32),
            )?);
            let b = comp0(&root_matrix(
                n,
                minus_one,
                negate_tag(n, EigenvalueTag::Root(s as u32)),
            )?);
            let expect = if r == s {
                C64::new(-(h as f64), 0.0)
            } else {
                ZERO
            };
            worst = worst.max((killing_form(&a, &b)? - expect).norm());
        }
    }
    let kernels = [EigenvalueTag::Zero, EigenvalueTag::ZeroPrime];
    for r in 1..=n - 2 {
        let a = comp0(&root_matrix(
            n,
            EigenvalueTag::Root(0),
            EigenvalueTag::Root(r as u32),
        )?);
        for k in kernels {
            let b = comp0(&root_matrix(n, minus_one, k)?);
            worst = worst.max(killing_form(&a, &b)?.norm());
        }
    }
    for ka in kernels {
        for kb in kernels {
            let a = comp0(&root_matrix(n, EigenvalueTag::Root(0), ka)?);
            let b = comp0(&root_matrix(n, minus_one, kb)?);
            let expect = if ka == kb { ZERO } else { C64::new(2.0, 0.0) };
            worst = worst.max((killing_form(&a, &b)? - expect).norm());
        }
    }

    // duality and commutator grading of the dual bases
    let bases = dual_bases(n)?;
    let sqrt2 = C64::new(2f64.sqrt(), 0.0);
    for r in 1..=n {
        for s in 1..=n {
            for m in 0..h as i64 {
                let v = killing_form(bases.x(r, m), bases.y(s, -m))?;
                let expect = if r == s { ONE } else { ZERO };
                worst = worst.max((v - expect).norm());
            }
        }
    }
    for r in 1..=n {
        for label in labels(n) {
            let beta = beta_closed(n, r, label);
            let t = bases.t.get(&label).unwrap().scaled(sqrt2);
            for m in 0..h as i64 {
                let lhs = t.commutator(bases.x(r, m))?;
                let rhs = bases.x(r, m + label.value as i64).scaled(beta);
                worst = worst.max((&lhs - &rhs).max_norm());
                let lhs_y = t.commutator(bases.y(r, -m))?;
                let rhs_y = bases.y(r, -m + label.value as i64).scaled(-beta);
                worst = worst.max((&lhs_y - &rhs_y).max_norm());
            }
        }
    }

    Ok(CheckResult::finish("heisenberg", worst, tolerance, start))
}

/// Extracted-vs-closed comparison of beta and g plus the g-sum identity.
pub fn coefficient_crosscheck(
    coeffs: &HierarchyCoefficients,
    tolerance: f64,
) -> Result<CheckResult> {
    let start = Instant::now();
    let n = coeffs.n;
    let mut worst: f64 = 0.0;
    for r in 1..=n {
        for &label in coeffs.labels() {
            worst = worst.max((coeffs.beta(r, label) - beta_closed(n, r, label)).norm());
        }
        worst = worst.max((coeffs.g(r) - g_closed(n, r)).norm());
    }
    worst = worst.max((coeffs.sum_g() - C64::new(coeffs.g_sum_target(), 0.0)).norm());
    Ok(CheckResult::finish(
        "coefficient-crosscheck",
        worst,
        tolerance,
        start,
    ))
}

/// Max coefficient difference of the two evaluators over seeded random
/// tau pairs. The kw side uses `coeffs_kw`, the gm side `coeffs_gm`.
pub fn evaluator_equivalence(
    coeffs_kw: &HierarchyCoefficients,
    coeffs_gm: &HierarchyCoefficients,
    degree: u32,
    pairs: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckResult> {
    let start = Instant::now();
    let space = VarSpace::new(coeffs_kw.n, degree, &[Family::T])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let t1 = random_tau(&space, &mut rng);
        let t2 = random_tau(&space, &mut rng);
        let kw = kw_lhs(&t1, &t2, coeffs_kw)?;
        let gm = gm_residual(&t1, &t2, coeffs_gm)?;
        worst = worst.max(kw.distance(&gm)?);
    }
    Ok(CheckResult::finish(
        "evaluator-equivalence",
        worst,
        tolerance,
        start,
    ))
}

/// Vacuum residual, Heisenberg-orbit solutions, and infinitesimal orbit
/// invariance to second order.
pub fn tau_suite(
    coeffs: &HierarchyCoefficients,
    degree: u32,
    seed: u64,
    tolerance: f64,
) -> Result<CheckResult> {
    let start = Instant::now();
    let n = coeffs.n;
    let space = VarSpace::new(n, degree, &[Family::T])?;
    let mut worst: f64 = 0.0;

    let one = TruncatedSeries::one(&space);
    worst = worst.max(gm_residual(&one, &one, coeffs)?.max_norm());

    // exp(sum c_j t_j) over low-weight exponents with |c| <= 0.5
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let mut linear = TruncatedSeries::zero(&space);
        for e in space.exponents().to_vec() {
            if e.value() > 3 {
                continue;
            }
            let c = C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            linear = linear.add(
                &TruncatedSeries::variable(&space, Family::T, &e)?.scale(c),
            )?;
        }
        let tau = exp_series(&linear)?;
        worst = worst.max(gm_residual(&tau, &tau, coeffs)?.max_norm());
    }

    // infinitesimal orbit invariance
    for e in space.exponents().to_vec() {
        if e.value() > 5 {
            continue;
        }
        let check = orbit_infinitesimal_check(Generator::Lowering(e), 2, coeffs, &space)?;
        worst = worst.max(check.max());
    }
    for r in 1..=n {
        for m in -2i32..=2 {
            let check =
                orbit_infinitesimal_check(Generator::VertexX { r, m }, 2, coeffs, &space)?;
            worst = worst.max(check.max());
        }
    }

    Ok(CheckResult::finish("tau-checks", worst, tolerance, start))
}

/// Run every suite in order and assemble the report.
pub fn run_all(config: &VerifyConfig) -> Result<VerificationReport> {
    let mut coeffs_main = HierarchyCoefficients::extracted(config.n, 1e-9)?;
    if let Some(delta) = config.beta_error {
        coeffs_main.inject_beta_error(delta);
    }
    let coeffs_closed = HierarchyCoefficients::closed(config.n)?;

    let checks = vec![
        matrix_algebra_suite(config.n, config.tolerance, config.seed)?,
        heisenberg_suite(config.n, config.tolerance)?,
        coefficient_crosscheck(&coeffs_main, config.tolerance)?,
        evaluator_equivalence(
            &coeffs_main,
            &coeffs_closed,
            config.degree,
            config.pairs,
            config.seed,
            config.tolerance,
        )?,
        tau_suite(&coeffs_main, config.degree, config.seed, config.tolerance)?,
    ];
    let overall = checks.iter().all(|c| c.passed);
    Ok(VerificationReport { checks, overall })
}
