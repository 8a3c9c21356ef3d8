//! The bilinear-equation engine.
//!
//! Two independent evaluators compute the residual of the hierarchy on
//! a pair of tau functions: [`kw_lhs`] expands the operator form
//! (elementary Schur polynomials contracted against y-derivatives of
//! the bilinear kernel), while [`gm_residual`] evaluates the residue
//! form through Laurent blocks and subtracts its right-hand side. The
//! two agree identically because sum g_r = n h (h+1) / 12.
//!
//! The module also provides the vertex operators, the Fock-space action
//! of the algebra generators, first/second-order orbit checks, and
//! explicit emission of the equations as polynomials in commuting
//! Hirota symbols.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::heisenberg::{negate_label, HierarchyCoefficients};
use crate::matrix::{C64, ONE, ZERO};
use crate::series::{Exponent, Family, LaurentBlock, Monomial, TruncatedSeries, VarSpace};

fn binomial(a: u8, q: u8) -> f64 {
    let mut acc = 1.0;
    for k in 0..q.min(a - q) {
        acc = acc * (a as f64 - k as f64) / (k as f64 + 1.0);
    }
    acc.round()
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

fn real_scale(c: C64, k: f64) -> C64 {
    c * C64::new(k, 0.0)
}

fn check_tau_pair(t1: &TruncatedSeries, t2: &TruncatedSeries) -> Result<()> {
    if t1.space().bound() != t2.space().bound() {
        return Err(Error::TruncationMismatch(
            t1.space().bound(),
            t2.space().bound(),
        ));
    }
    if **t1.space() != **t2.space() {
        return Err(Error::SpaceMismatch);
    }
    if t1.space().families() != [Family::T] {
        return Err(Error::Config(
            "tau functions must live in t-variables only".into(),
        ));
    }
    Ok(())
}

/// Truncated product of two series; the named operation of the engine.
pub fn mul_truncated(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// Substitute t_j -> t_j + sign * y_j, mapping a series in t-variables
/// into the joint (t, y) space. Exact on polynomials.
pub fn shift_substitute(tau: &TruncatedSeries, sign: i8) -> Result<TruncatedSeries> {
    if tau.space().families() != [Family::T] {
        return Err(Error::Config(
            "shift_substitute expects a t-only series".into(),
        ));
    }
    let target = tau.space().with_families(&[Family::T, Family::Y]);
    let per = target.exponents().len();
    let s = C64::new(sign as f64, 0.0);
    let mut out = TruncatedSeries::zero(&target);
    for (m, &c) in tau.terms() {
        // expand prod_e (t_e + s y_e)^{a_e}
        let mut partial: Vec<(Vec<u8>, C64)> = vec![(vec![0u8; target.var_count()], c)];
        for (var, &a) in m.powers().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
            for (powers, coeff) in &partial {
                for q in 0..=a {
                    let mut p = powers.clone();
                    p[var] += q;
                    p[per + var] += a - q;
                    let factor = C64::new(binomial(a, q), 0.0) * s.powu((a - q) as u32);
                    next.push((p, coeff * factor));
                }
            }
            partial = next;
        }
        for (p, coeff) in partial {
            out.add_term(Monomial::from_powers(p), coeff);
        }
    }
    Ok(out)
}

/// Elementary Schur polynomials of the exponent set: S_0..S_{m_max} with
/// exp(sum_e c_e v_e z^{value(e)}) = sum_m S_m z^m. Each S_m is
/// weighted-homogeneous of degree m in the `family` variables.
pub fn schur_expand(
    space: &Arc<VarSpace>,
    family: Family,
    coeffs: &dyn Fn(&Exponent) -> C64,
    m_max: u32,
) -> Result<Vec<TruncatedSeries>> {
    if m_max > space.bound() {
        return Err(Error::Config(format!(
            "schur order {m_max} exceeds truncation bound {}",
            space.bound()
        )));
    }
    let mut result: Vec<TruncatedSeries> =
        (0..=m_max).map(|_| TruncatedSeries::zero(space)).collect();
    result[0] = TruncatedSeries::one(space);

    let exps: Vec<Exponent> = space.exponents().to_vec();
    for e in exps {
        let w = e.value();
        if w > m_max || w == 0 {
            continue;
        }
        let c = coeffs(&e);
        if c == ZERO {
            continue;
        }
        let var = space
            .var_index(family, &e)
            .ok_or_else(|| Error::InvalidLabel(format!("{e} missing from space")))?;
        let mut next = result.clone();
        let mut p = 1u8;
        while p as u32 * w <= m_max {
            let shift = p as u32 * w;
            let factor = c.powu(p as u32) / C64::new(factorial(p as u32), 0.0);
            for m in 0..=(m_max - shift) {
                if result[m as usize].is_empty() {
                    continue;
                }
                for (tm, &tc) in result[m as usize].terms() {
                    let mut powers = tm.powers().to_vec();
                    powers[var] += p;
                    next[(m + shift) as usize].add_term(Monomial::from_powers(powers), tc * factor);
                }
            }
            p += 1;
        }
        result = next;
    }
    Ok(result)
}

/// exp of a series with no constant term.
pub fn exp_series(p: &TruncatedSeries) -> Result<TruncatedSeries> {
    if p.constant_term() != ZERO {
        return Err(Error::Config(
            "exp_series needs a vanishing constant term".into(),
        ));
    }
    let mut acc = TruncatedSeries::one(p.space());
    let mut power = TruncatedSeries::one(p.space());
    let mut k = 1u32;
    loop {
        power = power.mul(p)?.scale(ONE / C64::new(k as f64, 0.0));
        if power.is_empty() {
            break;
        }
        acc = acc.add(&power)?;
        k += 1;
        if k > 2 * p.space().bound() + 2 {
            break;
        }
    }
    Ok(acc)
}

/// The kernel F(t, y) = tau1(t+y) tau2(t-y) both evaluators act on.
pub fn bilinear_pair(t1: &TruncatedSeries, t2: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_tau_pair(t1, t2)?;
    shift_substitute(t1, 1)?.mul(&shift_substitute(t2, -1)?)
}

/// Apply a monomial of Hirota operators: differentiate the bilinear
/// kernel by y once per multiset element, then set y = 0.
pub fn hirota_apply(
    dmono: &[Exponent],
    t1: &TruncatedSeries,
    t2: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    check_tau_pair(t1, t2)?;
    let mut f = bilinear_pair(t1, t2)?;
    for e in dmono {
        match f.space().var_index(Family::Y, e) {
            Some(var) => f = f.derivative(var),
            None => return Ok(TruncatedSeries::zero(t1.space())),
        }
    }
    f.family_constant_part(Family::Y).restrict(t1.space())
}

/// Sum over the terms of `poly` (a polynomial in y-variables) of
/// coeff * (d/dy)^monomial applied to `f`.
fn apply_as_derivative(poly: &TruncatedSeries, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(f.space());
    for (m, &c) in poly.terms() {
        let mut df = f.clone();
        for (var, &p) in m.powers().iter().enumerate() {
            for _ in 0..p {
                if df.is_empty() {
                    break;
                }
                df = df.derivative(var);
            }
        }
        if !df.is_empty() {
            out = out.add(&df.scale(c))?;
        }
    }
    Ok(out)
}

/// Operator-form evaluator of the hierarchy: the generating series of
/// the bilinear equations applied to (tau1, tau2), as a series in
/// (t, y). Vanishing up to the truncation characterizes solutions.
pub fn kw_lhs(
    t1: &TruncatedSeries,
    t2: &TruncatedSeries,
    coeffs: &HierarchyCoefficients,
) -> Result<TruncatedSeries> {
    check_tau_pair(t1, t2)?;
    let n = coeffs.n;
    if t1.space().n() != n {
        return Err(Error::Config(
            "coefficient rank differs from space rank".into(),
        ));
    }
    let h = coeffs.h as f64;
    let nn = t1.space().bound();

    let f = bilinear_pair(t1, t2)?;
    let ty = f.space().clone();
    let mut out = f
        .scale_by_family_weight(Family::Y)
        .scale(C64::new(-2.0 * h, 0.0));

    for r in 1..=n {
        let splus = schur_expand(&ty, Family::Y, &|e: &Exponent| real_scale(coeffs.beta(r, e.label), 2.0), nn)?;
        let sminus = schur_expand(
            &ty,
            Family::Y,
            &|e: &Exponent| {
                -coeffs.beta(r, negate_label(n, e.label)) / C64::new(e.value() as f64, 0.0)
            },
            nn,
        )?;
        let g = coeffs.g(r);
        for m in 1..=nn as usize {
            if splus[m].is_empty() || sminus[m].is_empty() {
                continue;
            }
            let derived = apply_as_derivative(&sminus[m], &f)?;
            if derived.is_empty() {
                continue;
            }
            out = out.add(&splus[m].mul(&derived)?.scale(g))?;
        }
    }
    out.prune();
    Ok(out)
}

/// Substitute v_e -> v_e + shift(e) z^{-value(e)} for every variable of
/// `family`, producing a Laurent block on the given window.
fn laurent_shift(
    f: &TruncatedSeries,
    family: Family,
    shift: &dyn Fn(&Exponent) -> C64,
    window: i32,
) -> LaurentBlock {
    let space = f.space();
    let per = space.exponents().len();
    let fi = space.family_index(family);
    let mut collected: BTreeMap<i32, TruncatedSeries> = BTreeMap::new();
    for (m, &c) in f.terms() {
        let mut partial: Vec<(Vec<u8>, i32, C64)> = vec![(m.powers().to_vec(), 0, c)];
        if let Some(fi) = fi {
            for k in 0..per {
                let var = fi * per + k;
                let a = m.power(var);
                if a == 0 {
                    continue;
                }
                let e = space.exponents()[k];
                let s = shift(&e);
                if s == ZERO {
                    continue;
                }
                let w = e.value() as i32;
                let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
                for (powers, zdeg, coeff) in &partial {
                    for q in 0..=a {
                        let dropped = (a - q) as i32;
                        let mut p = powers.clone();
                        p[var] = q;
                        next.push((
                            p,
                            zdeg - w * dropped,
                            coeff * C64::new(binomial(a, q), 0.0) * s.powu((a - q) as u32),
                        ));
                    }
                }
                partial = next;
            }
        }
        for (powers, zdeg, coeff) in partial {
            if zdeg.abs() > window {
                continue;
            }
            collected
                .entry(zdeg)
                .or_insert_with(|| TruncatedSeries::zero(space))
                .add_term(Monomial::from_powers(powers), coeff);
        }
    }
    let mut out = LaurentBlock::new(space, window);
    for (zdeg, series) in collected {
        out.add_block(zdeg, series);
    }
    out
}

/// Residue-form evaluator: the Givental-Milanov left-hand side minus its
/// right-hand side, as a series in (t, y). Agrees with [`kw_lhs`].
pub fn gm_residual(
    t1: &TruncatedSeries,
    t2: &TruncatedSeries,
    coeffs: &HierarchyCoefficients,
) -> Result<TruncatedSeries> {
    check_tau_pair(t1, t2)?;
    let n = coeffs.n;
    if t1.space().n() != n {
        return Err(Error::Config(
            "coefficient rank differs from space rank".into(),
        ));
    }
    let h = coeffs.h as f64;
    let nn = t1.space().bound();
    let window = nn as i32;

    let f = bilinear_pair(t1, t2)?;
    let ty = f.space().clone();

    let constant = C64::new(n as f64 * h * (h + 1.0) / 12.0, 0.0);
    let rhs = f
        .scale_by_family_weight(Family::Y)
        .scale(C64::new(2.0 * h, 0.0))
        .add(&f.scale(constant))?;

    let mut out = rhs.scale(-ONE);
    for r in 1..=n {
        // y -> y - xi(z) sends tau1(t+y) tau2(t-y) to
        // tau1(t+y-xi) tau2(t-y+xi): both slots shift at once
        let shifted = laurent_shift(
            &f,
            Family::Y,
            &|e: &Exponent| {
                -coeffs.beta(r, negate_label(n, e.label)) / C64::new(e.value() as f64, 0.0)
            },
            window,
        );
        let eplus = schur_expand(
            &ty,
            Family::Y,
            &|e: &Exponent| real_scale(coeffs.beta(r, e.label), 2.0),
            nn,
        )?;

        let g = coeffs.g(r);
        for m in 0..=nn {
            if eplus[m as usize].is_empty() {
                continue;
            }
            match shifted.block(-(m as i32)) {
                Some(pm) => {
                    out = out.add(&eplus[m as usize].mul_bounded(pm, nn)?.scale(g))?;
                }
                None => continue,
            }
        }
    }
    out.prune();
    Ok(out)
}

/// The vertex operator X^{(r)}(t; z) applied to a tau function: the
/// derivative (annihilation) factor acts first as a shift of t, then
/// the exponential prefactor multiplies in.
pub fn vertex_apply(
    r: usize,
    tau: &TruncatedSeries,
    window: i32,
    coeffs: &HierarchyCoefficients,
) -> Result<LaurentBlock> {
    vertex_apply_signed(r, tau, window, coeffs, false)
}

fn vertex_apply_signed(
    r: usize,
    tau: &TruncatedSeries,
    window: i32,
    coeffs: &HierarchyCoefficients,
    negate_t: bool,
) -> Result<LaurentBlock> {
    if tau.space().families() != [Family::T] {
        return Err(Error::Config("vertex operators act on t-only series".into()));
    }
    let n = coeffs.n;
    if r == 0 || r > n {
        return Err(Error::UnknownGenerator(format!("vertex family {r}")));
    }
    if window < 0 {
        return Err(Error::WindowOverflow {
            degree: window as i64,
            window: tau.space().bound() as i64,
        });
    }
    let sign = if negate_t { -ONE } else { ONE };
    let shifted = laurent_shift(
        tau,
        Family::T,
        &|e: &Exponent| {
            -sign * coeffs.beta(r, negate_label(n, e.label)) / C64::new(e.value() as f64, 0.0)
        },
        window,
    );
    let m_max = tau.space().bound().min(window as u32);
    let prefactor = schur_expand(
        tau.space(),
        Family::T,
        &|e: &Exponent| sign * coeffs.beta(r, e.label),
        m_max,
    )?;
    let mut pre_block = LaurentBlock::new(tau.space(), window);
    for (m, s) in prefactor.into_iter().enumerate() {
        pre_block.add_block(m as i32, s);
    }
    pre_block.mul(&shifted)
}

/// Descriptor of a represented generator of the affine algebra.
#[derive(Clone, Copy, Debug)]
pub enum Generator {
    /// Central element c: the identity operator.
    Central,
    /// H_{+j}: d/dt_j.
    Raising(Exponent),
    /// H_{-j}: multiplication by value(j) t_j.
    Lowering(Exponent),
    /// X^{(r)}_m: a Fourier mode of the vertex operator.
    VertexX { r: usize, m: i32 },
    /// Y^{(r)}_{-m}: a Fourier mode of the opposite vertex operator.
    VertexY { r: usize, m: i32 },
    /// d_0 = -sum_j value(j) t_j d/dt_j.
    Degree,
}

/// Fock-space action of one generator on a tau function.
pub fn algebra_action(
    gen: Generator,
    tau: &TruncatedSeries,
    coeffs: &HierarchyCoefficients,
) -> Result<TruncatedSeries> {
    if tau.space().families() != [Family::T] {
        return Err(Error::Config(
            "the Fock space is the t-only series space".into(),
        ));
    }
    let h = C64::new(coeffs.h as f64, 0.0);
    match gen {
        Generator::Central => Ok(tau.clone()),
        Generator::Raising(e) => match tau.space().var_index(Family::T, &e) {
            Some(var) => Ok(tau.derivative(var)),
            None => Ok(TruncatedSeries::zero(tau.space())),
        },
        Generator::Lowering(e) => match TruncatedSeries::variable(tau.space(), Family::T, &e) {
            Ok(v) => tau.mul(&v.scale(C64::new(e.value() as f64, 0.0))),
            Err(_) => Ok(TruncatedSeries::zero(tau.space())),
        },
        Generator::VertexX { r, m } => {
            let factor = -coeffs.rho_x(r)? / h;
            let block = vertex_apply_signed(r, tau, tau.space().bound() as i32, coeffs, false)?;
            Ok(block.coefficient(-m)?.scale(factor))
        }
        Generator::VertexY { r, m } => {
            let factor = -coeffs.rho_y(r)? / h;
            let block = vertex_apply_signed(r, tau, tau.space().bound() as i32, coeffs, true)?;
            Ok(block.coefficient(m)?.scale(factor))
        }
        Generator::Degree => Ok(tau.scale_by_family_weight(Family::T).scale(-ONE)),
    }
}

/// Residuals of the first- and second-order orbit conditions along the
/// one-parameter subgroup of a generator.
#[derive(Clone, Copy, Debug)]
pub struct OrbitCheck {
    pub order1: f64,
    pub order2: Option<f64>,
}

impl OrbitCheck {
    pub fn max(&self) -> f64 {
        self.order1.max(self.order2.unwrap_or(0.0))
    }
}

/// Expand gm_residual(exp(eps v) 1, exp(eps v) 1) to first and second
/// order in eps; both coefficients must vanish for algebra directions.
pub fn orbit_infinitesimal_check(
    gen: Generator,
    order: u32,
    coeffs: &HierarchyCoefficients,
    space: &Arc<VarSpace>,
) -> Result<OrbitCheck> {
    if order == 0 || order > 2 {
        return Err(Error::Config("orbit check order must be 1 or 2".into()));
    }
    if matches!(gen, Generator::Central | Generator::Degree) {
        return Err(Error::UnknownGenerator(
            "orbit checks run along root and Heisenberg directions only".into(),
        ));
    }
    let u0 = TruncatedSeries::one(space);
    let u1 = algebra_action(gen, &u0, coeffs)?;
    let r1 = gm_residual(&u1, &u0, coeffs)?
        .add(&gm_residual(&u0, &u1, coeffs)?)?
        .max_norm();
    let r2 = if order >= 2 {
        let u2 = algebra_action(gen, &u1, coeffs)?;
        let double = C64::new(2.0, 0.0);
        Some(
            gm_residual(&u2, &u0, coeffs)?
                .add(&gm_residual(&u1, &u1, coeffs)?.scale(double))?
                .add(&gm_residual(&u0, &u2, coeffs)?)?
                .max_norm(),
        )
    } else {
        None
    };
    Ok(OrbitCheck {
        order1: r1,
        order2: r2,
    })
}

/// Exploratory check: residual of the one-soliton ansatz
/// tau = 1 + a exp(sum_j beta_{r,j} z0^{value(j)} t_j) built from one
/// vertex family at a numeric momentum z0. Informational only: whether
/// this ansatz solves the hierarchy is not settled by the identities
/// the rest of the crate verifies.
pub fn soliton_residual(
    r: usize,
    amplitude: C64,
    momentum: C64,
    coeffs: &HierarchyCoefficients,
    space: &Arc<VarSpace>,
) -> Result<f64> {
    if r == 0 || r > coeffs.n {
        return Err(Error::UnknownGenerator(format!("vertex family {r}")));
    }
    let mut linear = TruncatedSeries::zero(space);
    for e in space.exponents().to_vec() {
        let c = coeffs.beta(r, e.label) * momentum.powu(e.value());
        linear = linear.add(&TruncatedSeries::variable(space, Family::T, &e)?.scale(c))?;
    }
    let tau = TruncatedSeries::one(space).add(&exp_series(&linear)?.scale(amplitude))?;
    Ok(gm_residual(&tau, &tau, coeffs)?.max_norm())
}

/// One bilinear equation of the hierarchy: the D-polynomial multiplying
/// a y-monomial of the generating function. Odd-order D-monomials
/// annihilate every tau . tau, so an equation constrains solutions only
/// through its even part.
#[derive(Clone, Debug)]
pub struct HierarchyEquation {
    pub y_monomial: Vec<Exponent>,
    pub d_polynomial: Vec<(Vec<Exponent>, C64)>,
    pub trivial: bool,
}

impl HierarchyEquation {
    pub fn y_weight(&self) -> u32 {
        self.y_monomial.iter().map(|e| e.value()).sum()
    }

    /// Evaluate the equation on a pair of tau functions via the Hirota
    /// operators.
    pub fn apply(&self, t1: &TruncatedSeries, t2: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(t1.space());
        for (dmono, c) in &self.d_polynomial {
            out = out.add(&hirota_apply(dmono, t1, t2)?.scale(*c))?;
        }
        Ok(out)
    }
}

/// Expand the generating operator of the hierarchy over commuting
/// D-symbols and collect the D-polynomial of every y-monomial of
/// weighted degree at most `max_y_degree`.
pub fn equations_emit(
    coeffs: &HierarchyCoefficients,
    max_y_degree: u32,
) -> Result<Vec<HierarchyEquation>> {
    let n = coeffs.n;
    let h = coeffs.h as f64;
    let space = VarSpace::with_caps(n, max_y_degree, 2 * max_y_degree, &[Family::Y, Family::D])?;
    let per = space.exponents().len();

    // exp(sum_j y_j D_j)
    let mut pairing = TruncatedSeries::zero(&space);
    for (k, e) in space.exponents().to_vec().into_iter().enumerate() {
        if 2 * e.value() > space.bound() {
            continue;
        }
        let mut powers = vec![0u8; space.var_count()];
        powers[k] = 1;
        powers[per + k] = 1;
        pairing.add_term(Monomial::from_powers(powers), ONE);
    }
    let exp_pairing = exp_series(&pairing)?;

    // -2h sum_j value(j) y_j D_j
    let mut operator = pairing
        .scale_by_family_weight(Family::Y)
        .scale(C64::new(-2.0 * h, 0.0));

    for r in 1..=n {
        let splus = schur_expand(
            &space,
            Family::Y,
            &|e: &Exponent| real_scale(coeffs.beta(r, e.label), 2.0),
            max_y_degree,
        )?;
        let sminus = schur_expand(
            &space,
            Family::D,
            &|e: &Exponent| {
                -coeffs.beta(r, negate_label(n, e.label)) / C64::new(e.value() as f64, 0.0)
            },
            max_y_degree,
        )?;
        let g = coeffs.g(r);
        for a in 1..=max_y_degree as usize {
            if splus[a].is_empty() || sminus[a].is_empty() {
                continue;
            }
            operator = operator.add(&splus[a].mul(&sminus[a])?.scale(g))?;
        }
    }

    let mut full = operator.mul(&exp_pairing)?;
    full.prune();

    // group terms by y-monomial, graded-lex order on both sides
    type Key = (u32, Vec<Exponent>);
    let mut grouped: BTreeMap<Key, BTreeMap<Key, C64>> = BTreeMap::new();
    grouped.insert((0, Vec::new()), BTreeMap::new());
    for (m, &c) in full.terms() {
        let mut y_part = Vec::new();
        let mut d_part = Vec::new();
        for (var, &p) in m.powers().iter().enumerate() {
            if p == 0 {
                continue;
            }
            let e = *space.exponent_of(var);
            let bucket = if space.family_of(var) == Family::Y {
                &mut y_part
            } else {
                &mut d_part
            };
            for _ in 0..p {
                bucket.push(e);
            }
        }
        let y_weight = y_part.iter().map(|e| e.value()).sum::<u32>();
        if y_weight > max_y_degree {
            continue;
        }
        let d_weight = d_part.iter().map(|e| e.value()).sum::<u32>();
        *grouped
            .entry((y_weight, y_part))
            .or_default()
            .entry((d_weight, d_part))
            .or_insert(ZERO) += c;
    }

    let mut out = Vec::with_capacity(grouped.len());
    for ((_, y_monomial), dmap) in grouped {
        let d_polynomial: Vec<(Vec<Exponent>, C64)> = dmap
            .into_iter()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|((_, d), c)| (d, c))
            .collect();
        let scale = d_polynomial
            .iter()
            .map(|(_, c)| c.norm())
            .fold(1.0, f64::max);
        let trivial = d_polynomial
            .iter()
            .filter(|(d, _)| d.len() % 2 == 0)
            .all(|(_, c)| c.norm() <= 1e-12 * scale);
        out.push(HierarchyEquation {
            y_monomial,
            d_polynomial,
            trivial,
        });
    }
    Ok(out)
}
