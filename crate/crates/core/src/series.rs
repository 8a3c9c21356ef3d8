//! Truncated formal series in exponent-indexed variables.
//!
//! Variables come in families (t, y, or commuting Hirota symbols D) and
//! are indexed by positive exponents of the algebra: a residue label
//! plus a level, with numeric value `label + level * h`. The weight of
//! a variable is its numeric value, and every series is truncated at a
//! single weighted-degree bound; multiplication drops (never wraps)
//! anything above the bound.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::heisenberg::{labels, ExponentLabel};
use crate::matrix::{C64, ONE, ZERO};

/// Relative threshold below which coefficients are pruned.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// A positive exponent of D_n^(1): residue label plus level.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Exponent {
    pub label: ExponentLabel,
    pub level: u32,
    value: u32,
}

impl Exponent {
    pub fn new(label: ExponentLabel, level: u32, h: u32) -> Self {
        Self {
            label,
            level,
            value: label.value + level * h,
        }
    }

    /// Numeric value, which is also the variable weight.
    pub fn value(&self) -> u32 {
        self.value
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.value, self.label.primed).cmp(&(other.value, other.label.primed))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label.primed {
            write!(f, "{}p", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Variable family tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    T,
    Y,
    D,
}

impl Family {
    pub fn prefix(&self) -> &'static str {
        match self {
            Family::T => "t",
            Family::Y => "y",
            Family::D => "D",
        }
    }
}

/// The finite variable table shared by all series of one computation.
#[derive(Debug, PartialEq)]
pub struct VarSpace {
    n: usize,
    h: u32,
    value_cap: u32,
    bound: u32,
    families: Vec<Family>,
    exponents: Vec<Exponent>,
    weights: Vec<u32>,
}

impl VarSpace {
    /// Variables for every exponent of value at most `bound`.
    pub fn new(n: usize, bound: u32, families: &[Family]) -> Result<Arc<Self>> {
        Self::with_caps(n, bound, bound, families)
    }

    /// Separate caps: exponents up to `value_cap`, truncation at `bound`.
    pub fn with_caps(
        n: usize,
        value_cap: u32,
        bound: u32,
        families: &[Family],
    ) -> Result<Arc<Self>> {
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        if bound == 0 {
            return Err(Error::Config("truncation bound must be positive".into()));
        }
        let h = 2 * n as u32 - 2;
        let mut exponents = Vec::new();
        for label in labels(n) {
            let mut level = 0;
            loop {
                let e = Exponent::new(label, level, h);
                if e.value() > value_cap {
                    break;
                }
                exponents.push(e);
                level += 1;
            }
        }
        exponents.sort();
        let mut weights = Vec::with_capacity(families.len() * exponents.len());
        for _ in families {
            weights.extend(exponents.iter().map(|e| e.value()));
        }
        Ok(Arc::new(Self {
            n,
            h,
            value_cap,
            bound,
            families: families.to_vec(),
            exponents,
            weights,
        }))
    }

    /// Same exponent table, different family list.
    pub fn with_families(&self, families: &[Family]) -> Arc<Self> {
        let mut weights = Vec::with_capacity(families.len() * self.exponents.len());
        for _ in families {
            weights.extend(self.exponents.iter().map(|e| e.value()));
        }
        Arc::new(Self {
            n: self.n,
            h: self.h,
            value_cap: self.value_cap,
            bound: self.bound,
            families: families.to_vec(),
            exponents: self.exponents.clone(),
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coxeter(&self) -> u32 {
        self.h
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn var_count(&self) -> usize {
        self.families.len() * self.exponents.len()
    }

    pub fn family_index(&self, family: Family) -> Option<usize> {
        self.families.iter().position(|&f| f == family)
    }

    pub fn exponent_index(&self, e: &Exponent) -> Option<usize> {
        self.exponents.iter().position(|x| x == e)
    }

    pub fn var_index(&self, family: Family, e: &Exponent) -> Option<usize> {
        let fi = self.family_index(family)?;
        let ei = self.exponent_index(e)?;
        Some(fi * self.exponents.len() + ei)
    }

    pub fn family_of(&self, var: usize) -> Family {
        self.families[var / self.exponents.len()]
    }

    pub fn exponent_of(&self, var: usize) -> &Exponent {
        &self.exponents[var % self.exponents.len()]
    }

    #[inline]
    pub fn weight_of(&self, var: usize) -> u32 {
        self.weights[var]
    }

    pub fn var_name(&self, var: usize) -> String {
        format!("{}_{}", self.family_of(var).prefix(), self.exponent_of(var))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::TruncationMismatch(self.bound, other.bound));
        }
        if self != other {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}

/// Exponent vector over the space's variable table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Box<[u8]>);

impl Monomial {
    pub fn one(space: &VarSpace) -> Self {
        Monomial(vec![0u8; space.var_count()].into_boxed_slice())
    }

    pub fn from_powers(powers: Vec<u8>) -> Self {
        Monomial(powers.into_boxed_slice())
    }

    pub fn powers(&self) -> &[u8] {
        &self.0
    }

    pub fn power(&self, var: usize) -> u8 {
        self.0[var]
    }

    pub fn with_power(space: &VarSpace, var: usize, power: u8) -> Self {
        let mut m = Self::one(space);
        m.0[var] = power;
        m
    }

    pub fn total_order(&self) -> u32 {
        self.0.iter().map(|&p| p as u32).sum()
    }

    pub fn weighted_degree(&self, space: &VarSpace) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(v, &p)| p as u32 * space.weight_of(v))
            .sum()
    }

    fn product(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Weighted degree of the sub-monomial in one family.
    pub fn family_degree(&self, space: &VarSpace, family: Family) -> u32 {
        let fi = match space.family_index(family) {
            Some(fi) => fi,
            None => return 0,
        };
        let per = space.exponents().len();
        self.0[fi * per..(fi + 1) * per]
            .iter()
            .enumerate()
            .map(|(k, &p)| p as u32 * space.exponents()[k].value())
            .sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }
}

/// Multivariate polynomial truncated at the space's weighted bound.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, C64>,
}

impl TruncatedSeries {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        Self {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<VarSpace>, c: C64) -> Self {
        let mut s = Self::zero(space);
        if c != ZERO {
            s.terms.insert(Monomial::one(space), c);
        }
        s
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::constant(space, ONE)
    }

    pub fn variable(space: &Arc<VarSpace>, family: Family, e: &Exponent) -> Result<Self> {
        let var = space.var_index(family, e).ok_or_else(|| {
            Error::InvalidLabel(format!("{}_{e} not in the variable table", family.prefix()))
        })?;
        if e.value() > space.bound() {
            return Ok(Self::zero(space));
        }
        let mut s = Self::zero(space);
        s.terms.insert(Monomial::with_power(space, var, 1), ONE);
        Ok(s)
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C64 {
        self.terms.get(m).copied().unwrap_or(ZERO)
    }

    pub fn constant_term(&self) -> C64 {
        self.coeff(&Monomial::one(&self.space))
    }

    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.max_norm() <= tol
    }

    /// Insert `c * m`, dropping monomials above the bound.
    pub fn add_term(&mut self, m: Monomial, c: C64) {
        if c == ZERO || m.weighted_degree(&self.space) > self.space.bound() {
            return;
        }
        *self.terms.entry(m).or_insert(ZERO) += c;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.check_compatible(&other.space)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, c: C64) -> Self {
        if c == ZERO {
            return Self::zero(&self.space);
        }
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Truncated product. See also [`TruncatedSeries::mul_bounded`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_bounded(other, self.space.bound())
    }

    /// Truncated product keeping only weighted degrees <= `max_wdeg`.
    ///
    /// Term lists are sorted by weight so the inner loop stops at the
    /// first partner that would overflow the bound; accumulation order
    /// is fixed by the sorted lists, keeping results reproducible.
    pub fn mul_bounded(&self, other: &Self, max_wdeg: u32) -> Result<Self> {
        self.space.check_compatible(&other.space)?;
        let max_wdeg = max_wdeg.min(self.space.bound());
        let mut a: Vec<(u32, &Monomial, C64)> = self
            .terms
            .iter()
            .map(|(m, &c)| (m.weighted_degree(&self.space), m, c))
            .collect();
        let mut b: Vec<(u32, &Monomial, C64)> = other
            .terms
            .iter()
            .map(|(m, &c)| (m.weighted_degree(&self.space), m, c))
            .collect();
        a.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        b.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));

        let mut acc: HashMap<Monomial, C64> = HashMap::new();
        for &(wa, ma, ca) in &a {
            if wa > max_wdeg {
                break;
            }
            for &(wb, mb, cb) in &b {
                if wa + wb > max_wdeg {
                    break;
                }
                *acc.entry(ma.product(mb)).or_insert(ZERO) += ca * cb;
            }
        }
        let mut out = Self {
            space: self.space.clone(),
            terms: acc.into_iter().collect(),
        };
        out.prune();
        Ok(out)
    }

    /// Drop coefficients below `PRUNE_THRESHOLD` relative to the largest.
    pub fn prune(&mut self) {
        let max = self.max_norm();
        if max == 0.0 {
            self.terms.clear();
            return;
        }
        let cut = PRUNE_THRESHOLD * max;
        self.terms.retain(|_, c| c.norm() > cut);
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, &c) in &self.terms {
            let p = m.power(var);
            if p == 0 {
                continue;
            }
            let mut powers = m.powers().to_vec();
            powers[var] = p - 1;
            out.add_term(Monomial::from_powers(powers), c * C64::new(p as f64, 0.0));
        }
        out
    }

    /// Multiply every term by the weighted degree of its `family` part:
    /// the action of sum_j (weight j) v_j d/dv_j.
    pub fn scale_by_family_weight(&self, family: Family) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, &c) in &self.terms {
            let w = m.family_degree(&self.space, family);
            if w > 0 {
                out.add_term(m.clone(), c * C64::new(w as f64, 0.0));
            }
        }
        out
    }

    /// Keep only terms with no powers in `family` (sets that family to 0).
    pub fn family_constant_part(&self, family: Family) -> Self {
        let fi = match self.space.family_index(family) {
            Some(fi) => fi,
            None => return self.clone(),
        };
        let per = self.space.exponents().len();
        let mut out = Self::zero(&self.space);
        for (m, &c) in &self.terms {
            if m.powers()[fi * per..(fi + 1) * per].iter().all(|&p| p == 0) {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Drop all terms of weighted degree above `max`.
    pub fn truncate_to(&self, max: u32) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, &c) in &self.terms {
            if m.weighted_degree(&self.space) <= max {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Reinterpret in a space with more families (same exponent table).
    pub fn embed(&self, target: &Arc<VarSpace>) -> Result<Self> {
        if self.space.exponents() != target.exponents()
            || self.space.bound() != target.bound()
            || self.space.n() != target.n()
        {
            return Err(Error::SpaceMismatch);
        }
        let per = self.space.exponents().len();
        let mut out = TruncatedSeries::zero(target);
        for (m, &c) in &self.terms {
            let mut powers = vec![0u8; target.var_count()];
            for (fi, fam) in self.space.families().iter().enumerate() {
                let ti = target.family_index(*fam).ok_or(Error::SpaceMismatch)?;
                powers[ti * per..(ti + 1) * per]
                    .copy_from_slice(&m.powers()[fi * per..(fi + 1) * per]);
            }
            out.add_term(Monomial::from_powers(powers), c);
        }
        Ok(out)
    }

    /// Project onto a sub-family space; terms with powers in dropped
    /// families are skipped.
    pub fn restrict(&self, target: &Arc<VarSpace>) -> Result<Self> {
        if self.space.exponents() != target.exponents()
            || self.space.bound() != target.bound()
            || self.space.n() != target.n()
        {
            return Err(Error::SpaceMismatch);
        }
        let per = self.space.exponents().len();
        let mut out = TruncatedSeries::zero(target);
        'term: for (m, &c) in &self.terms {
            let mut powers = vec![0u8; target.var_count()];
            for (fi, fam) in self.space.families().iter().enumerate() {
                let part = &m.powers()[fi * per..(fi + 1) * per];
                match target.family_index(*fam) {
                    Some(ti) => powers[ti * per..(ti + 1) * per].copy_from_slice(part),
                    None => {
                        if part.iter().any(|&p| p != 0) {
                            continue 'term;
                        }
                    }
                }
            }
            out.add_term(Monomial::from_powers(powers), c);
        }
        Ok(out)
    }

    /// Numeric evaluation at an assignment of all variables.
    pub fn evaluate(&self, values: &[C64]) -> C64 {
        assert_eq!(values.len(), self.space.var_count());
        let mut acc = ZERO;
        for (m, &c) in &self.terms {
            let mut term = c;
            for (v, &p) in m.powers().iter().enumerate() {
                for _ in 0..p {
                    term *= values[v];
                }
            }
            acc += term;
        }
        acc
    }

    /// Largest coefficient norm of the difference.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_norm())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for (v, &p) in m.powers().iter().enumerate() {
                if p == 1 {
                    write!(f, " {}", self.space.var_name(v))?;
                } else if p > 1 {
                    write!(f, " {}^{}", self.space.var_name(v), p)?;
                }
            }
        }
        Ok(())
    }
}

/// All monomials supported on one family with weighted degree <= `max`.
pub fn enumerate_family_monomials(
    space: &Arc<VarSpace>,
    family: Family,
    max: u32,
) -> Vec<Monomial> {
    let fi = space.family_index(family).expect("family present in space");
    let per = space.exponents().len();
    let weights: Vec<u32> = space.exponents().iter().map(|e| e.value()).collect();
    let mut out = Vec::new();
    let mut powers = vec![0u8; space.var_count()];

    fn rec(
        k: usize,
        remaining: u32,
        fi: usize,
        per: usize,
        weights: &[u32],
        powers: &mut Vec<u8>,
        out: &mut Vec<Monomial>,
    ) {
        if k == per {
            out.push(Monomial::from_powers(powers.clone()));
            return;
        }
        let w = weights[k];
        let max_p = (remaining / w) as u8;
        for p in 0..=max_p {
            powers[fi * per + k] = p;
            rec(k + 1, remaining - p as u32 * w, fi, per, weights, powers, out);
        }
        powers[fi * per + k] = 0;
    }
    rec(0, max, fi, per, &weights, &mut powers, &mut out);
    out
}

/// A z-graded family of truncated series on a symmetric window.
#[derive(Clone, Debug)]
pub struct LaurentBlock {
    space: Arc<VarSpace>,
    window: i32,
    blocks: BTreeMap<i32, TruncatedSeries>,
}

impl LaurentBlock {
    pub fn new(space: &Arc<VarSpace>, window: i32) -> Self {
        Self {
            space: space.clone(),
            window,
            blocks: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> i32 {
        self.window
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    /// Add `s * z^degree`; degrees outside the window are dropped, which
    /// is sound because every z^{-k} factor accompanies removal of
    /// weight k and can never climb back to the residue.
    pub fn add_block(&mut self, degree: i32, s: TruncatedSeries) {
        if degree.unsigned_abs() > self.window.unsigned_abs() || s.is_empty() {
            return;
        }
        match self.blocks.remove(&degree) {
            Some(prev) => {
                let sum = prev.add(&s).expect("blocks share a space");
                if !sum.is_empty() {
                    self.blocks.insert(degree, sum);
                }
            }
            None => {
                self.blocks.insert(degree, s);
            }
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.blocks.keys().copied()
    }

    pub fn block(&self, degree: i32) -> Option<&TruncatedSeries> {
        self.blocks.get(&degree)
    }

    /// Coefficient of z^degree; requests outside the window are errors.
    pub fn coefficient(&self, degree: i32) -> Result<TruncatedSeries> {
        if degree.abs() > self.window {
            return Err(Error::WindowOverflow {
                degree: degree as i64,
                window: self.window as i64,
            });
        }
        Ok(self
            .blocks
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(&self.space)))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            space: self.space.clone(),
            window: self.window,
            blocks: self.blocks.iter().map(|(&d, s)| (d, s.scale(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::new(&self.space, self.window.min(other.window));
        for (&da, sa) in &self.blocks {
            for (&db, sb) in &other.blocks {
                let d = da + db;
                if d.abs() > out.window {
                    continue;
                }
                out.add_block(d, sa.mul(sb)?);
            }
        }
        Ok(out)
    }
}
