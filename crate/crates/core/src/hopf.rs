//! U_q(sl₂)-actions on the quantum plane.
//!
//! An action is fixed by its full action matrix: the images of `x` and `y`
//! under `k`, `e`, `f`. Since `k` acts by an algebra automorphism it is
//! diagonal and stored as a [`WeightPair`]. Everything else extends through
//! the coproduct
//!
//! ```text
//! k(uv) = k(u)k(v),  e(uv) = u·e(v) + e(u)·k(v),  f(uv) = f(u)·v + k⁻¹(u)·f(v)
//! ```

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qplane::{Monomial, QPlanePoly};
use crate::scalars::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("weight constants must be nonzero")]
    ZeroWeight,
    #[error("automorphism scalars must be nonzero")]
    ZeroAutomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("polynomial is not a weight vector")]
    NotWeightVector,
}

/// Eigenvalues of `k` on `x` and `y`: `k(x) = αx`, `k(y) = βy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightPair {
    alpha: QScalar,
    beta: QScalar,
}

impl WeightPair {
    pub fn new(alpha: QScalar, beta: QScalar) -> Result<Self, HopfError> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(HopfError::ZeroWeight);
        }
        Ok(WeightPair { alpha, beta })
    }

    /// `(q^a, q^b)`.
    pub fn q_powers(a: i64, b: i64) -> Self {
        WeightPair { alpha: QScalar::q_pow(a), beta: QScalar::q_pow(b) }
    }

    pub fn alpha(&self) -> &QScalar {
        &self.alpha
    }

    pub fn beta(&self) -> &QScalar {
        &self.beta
    }

    /// `α^m β^n`, the weight of `x^m y^n`.
    pub fn of(&self, mono: Monomial) -> QScalar {
        let a = self.alpha.pow(i64::from(mono.m)).expect("nonzero alpha");
        let b = self.beta.pow(i64::from(mono.n)).expect("nonzero beta");
        &a * &b
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha = {}, beta = {}", self.alpha, self.beta)
    }
}

/// A U_q(sl₂)-action given by its full action matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ActionRecord", into = "ActionRecord")]
pub struct Action {
    pub weights: WeightPair,
    pub e_x: QPlanePoly,
    pub e_y: QPlanePoly,
    pub f_x: QPlanePoly,
    pub f_y: QPlanePoly,
}

/// Flat six-entry serialization form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionRecord {
    pub alpha: QScalar,
    pub beta: QScalar,
    pub e_x: QPlanePoly,
    pub e_y: QPlanePoly,
    pub f_x: QPlanePoly,
    pub f_y: QPlanePoly,
}

impl TryFrom<ActionRecord> for Action {
    type Error = HopfError;
    fn try_from(r: ActionRecord) -> Result<Self, HopfError> {
        Ok(Action {
            weights: WeightPair::new(r.alpha, r.beta)?,
            e_x: r.e_x,
            e_y: r.e_y,
            f_x: r.f_x,
            f_y: r.f_y,
        })
    }
}

impl From<Action> for ActionRecord {
    fn from(a: Action) -> Self {
        ActionRecord {
            alpha: a.weights.alpha,
            beta: a.weights.beta,
            e_x: a.e_x,
            e_y: a.e_y,
            f_x: a.f_x,
            f_y: a.f_y,
        }
    }
}

impl Action {
    pub fn new(
        weights: WeightPair,
        e_x: QPlanePoly,
        e_y: QPlanePoly,
        f_x: QPlanePoly,
        f_y: QPlanePoly,
    ) -> Self {
        Action { weights, e_x, e_y, f_x, f_y }
    }

    /// Image of `x` or `y` under `e` or `f`.
    pub fn entry(&self, g: Generator, var: Monomial) -> QPlanePoly {
        let is_x = var == Monomial::X;
        match (g, is_x) {
            (Generator::E, true) => self.e_x.clone(),
            (Generator::E, false) => self.e_y.clone(),
            (Generator::F, true) => self.f_x.clone(),
            (Generator::F, false) => self.f_y.clone(),
            (Generator::K, _) => QPlanePoly::monomial(self.weights.of(var), var),
            (Generator::KInv, _) => {
                QPlanePoly::monomial(self.weights.of(var).inv().expect("nonzero weight"), var)
            }
        }
    }

    /// Entries of the ef-part that are nonzero but not weight vectors.
    pub fn weight_vector_violations(&self) -> Vec<&'static str> {
        [("e(x)", &self.e_x), ("e(y)", &self.e_y), ("f(x)", &self.f_x), ("f(y)", &self.f_y)]
            .into_iter()
            .filter(|(_, p)| matches!(weight_of(p, self), Err(WeightError::NotWeightVector)))
            .map(|(name, _)| name)
            .collect()
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k(x) = ({})*x, k(y) = ({})*y", self.weights.alpha, self.weights.beta)?;
        writeln!(f, "e(x) = {}, e(y) = {}", self.e_x, self.e_y)?;
        write!(f, "f(x) = {}, f(y) = {}", self.f_x, self.f_y)
    }
}

/// Chevalley generators of U_q(sl₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    K,
    KInv,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::K, Generator::KInv, Generator::E, Generator::F];

    pub fn name(self) -> &'static str {
        match self {
            Generator::K => "k",
            Generator::KInv => "kinv",
            Generator::E => "e",
            Generator::F => "f",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A linear combination of words in the generators.
///
/// Words are read as operator composition: `[E, F]` means "apply `F`, then
/// `E`". No normalization inside U_q(sl₂) is attempted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Vec<Generator>, QScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        AlgebraElement::word(Vec::new(), c)
    }

    pub fn generator(g: Generator) -> Self {
        AlgebraElement::word(vec![g], QScalar::one())
    }

    pub fn word(word: Vec<Generator>, c: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        AlgebraElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Generator>, &QScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add_scaled(other, &QScalar::one())
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add_scaled(other, &QScalar::from_int(-1))
    }

    pub fn scale(&self, c: &QScalar) -> AlgebraElement {
        AlgebraElement::zero().add_scaled(self, c)
    }

    fn add_scaled(&self, other: &AlgebraElement, c: &QScalar) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (w, d) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(QScalar::zero);
            *entry += &(c * d);
            if entry.is_zero() {
                terms.remove(w);
            }
        }
        AlgebraElement { terms }
    }

    /// Product in the free algebra (word concatenation).
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let word: Vec<Generator> = w1.iter().chain(w2).copied().collect();
                out = out.add(&AlgebraElement::word(word, c1 * c2));
            }
        }
        out
    }

    /// `kk⁻¹ - 1`
    pub fn relation_k_kinv() -> Self {
        gen2(Generator::K, Generator::KInv).sub(&AlgebraElement::one())
    }

    /// `k⁻¹k - 1`
    pub fn relation_kinv_k() -> Self {
        gen2(Generator::KInv, Generator::K).sub(&AlgebraElement::one())
    }

    /// `ke - q²ek`
    pub fn relation_ke() -> Self {
        gen2(Generator::K, Generator::E).sub(&gen2(Generator::E, Generator::K).scale(&QScalar::q_pow(2)))
    }

    /// `kf - q⁻²fk`
    pub fn relation_kf() -> Self {
        gen2(Generator::K, Generator::F).sub(&gen2(Generator::F, Generator::K).scale(&QScalar::q_pow(-2)))
    }

    /// `ef - fe - (k - k⁻¹)/(q - q⁻¹)`
    pub fn relation_ef() -> Self {
        let denom = &QScalar::q() - &QScalar::q_pow(-1);
        let inv = denom.inv().expect("q - 1/q is nonzero");
        let cartan = AlgebraElement::generator(Generator::K)
            .sub(&AlgebraElement::generator(Generator::KInv))
            .scale(&inv);
        gen2(Generator::E, Generator::F)
            .sub(&gen2(Generator::F, Generator::E))
            .sub(&cartan)
    }
}

fn gen2(a: Generator, b: Generator) -> AlgebraElement {
    AlgebraElement::word(vec![a, b], QScalar::one())
}

/// Applies generators to the quantum plane with a memo table keyed by
/// (generator, monomial).
///
/// The table is a pure cache, so one evaluator per thread is the intended
/// use; it is deliberately not `Sync`.
pub struct Evaluator<'a> {
    action: &'a Action,
    alpha_inv: QScalar,
    beta_inv: QScalar,
    cache: RefCell<HashMap<(Generator, Monomial), QPlanePoly>>,
    weights: RefCell<HashMap<Monomial, QScalar>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(action: &'a Action) -> Self {
        Evaluator {
            action,
            alpha_inv: action.weights.alpha.inv().expect("nonzero alpha"),
            beta_inv: action.weights.beta.inv().expect("nonzero beta"),
            cache: RefCell::new(HashMap::new()),
            weights: RefCell::new(HashMap::new()),
        }
    }

    pub fn action(&self) -> &Action {
        self.action
    }

    /// `α^m β^n`.
    pub fn weight(&self, mono: Monomial) -> QScalar {
        if let Some(w) = self.weights.borrow().get(&mono) {
            return w.clone();
        }
        let w = if mono == Monomial::ONE {
            QScalar::one()
        } else if mono.m > 0 {
            &self.weight(Monomial::new(mono.m - 1, mono.n)) * &self.action.weights.alpha
        } else {
            &self.weight(Monomial::new(0, mono.n - 1)) * &self.action.weights.beta
        };
        self.weights.borrow_mut().insert(mono, w.clone());
        w
    }

    fn inverse_weight_of_generator(&self, var: Monomial) -> &QScalar {
        if var == Monomial::X {
            &self.alpha_inv
        } else {
            &self.beta_inv
        }
    }

    /// A generator applied to a basis monomial, by peeling one `x` (or,
    /// once no `x` is left, one `y`) off the left.
    pub fn on_monomial(&self, g: Generator, mono: Monomial) -> QPlanePoly {
        if let Some(hit) = self.cache.borrow().get(&(g, mono)) {
            return hit.clone();
        }
        let result = match g {
            Generator::K => QPlanePoly::monomial(self.weight(mono), mono),
            Generator::KInv => {
                QPlanePoly::monomial(self.weight(mono).inv().expect("nonzero weight"), mono)
            }
            Generator::E | Generator::F if mono == Monomial::ONE => QPlanePoly::zero(),
            Generator::E | Generator::F => {
                let (head, rest) = if mono.m > 0 {
                    (Monomial::X, Monomial::new(mono.m - 1, mono.n))
                } else {
                    (Monomial::Y, Monomial::new(0, mono.n - 1))
                };
                self.leibniz(g, head, rest)
            }
        };
        self.cache.borrow_mut().insert((g, mono), result.clone());
        result
    }

    /// `g(u·v)` expanded through the coproduct, for monomials `u`, `v`.
    ///
    /// Note that `u·v` itself may carry a power of `q` relative to the
    /// normal-form monomial of the product.
    pub fn leibniz(&self, g: Generator, u: Monomial, v: Monomial) -> QPlanePoly {
        match g {
            Generator::K | Generator::KInv => {
                let gu = self.on_monomial(g, u);
                let gv = self.on_monomial(g, v);
                gu.multiply(&gv)
            }
            Generator::E => {
                // u·e(v) + e(u)·k(v)
                let gu = if u == Monomial::X || u == Monomial::Y {
                    self.action.entry(Generator::E, u)
                } else {
                    self.on_monomial(Generator::E, u)
                };
                let mut out = self.on_monomial(Generator::E, v).mul_monomial_left(u);
                out.add_scaled(&gu.mul_monomial_right(v), &self.weight(v));
                out
            }
            Generator::F => {
                // f(u)·v + k⁻¹(u)·f(v)
                let (gu, uinv) = if u == Monomial::X || u == Monomial::Y {
                    (self.action.entry(Generator::F, u), self.inverse_weight_of_generator(u).clone())
                } else {
                    (
                        self.on_monomial(Generator::F, u),
                        self.weight(u).inv().expect("nonzero weight"),
                    )
                };
                let mut out = gu.mul_monomial_right(v);
                out.add_scaled(&self.on_monomial(Generator::F, v).mul_monomial_left(u), &uinv);
                out
            }
        }
    }

    pub fn on_poly(&self, g: Generator, p: &QPlanePoly) -> QPlanePoly {
        let mut out = QPlanePoly::zero();
        for (mono, c) in p.terms() {
            out.add_scaled(&self.on_monomial(g, *mono), c);
        }
        out
    }

    /// Applies a word, rightmost generator first.
    pub fn on_word(&self, word: &[Generator], p: &QPlanePoly) -> QPlanePoly {
        word.iter().rev().fold(p.clone(), |acc, g| self.on_poly(*g, &acc))
    }

    pub fn apply(&self, elt: &AlgebraElement, p: &QPlanePoly) -> QPlanePoly {
        let mut out = QPlanePoly::zero();
        for (word, c) in elt.terms() {
            out.add_scaled(&self.on_word(word, p), c);
        }
        out
    }

    /// Applies `g` a given number of times.
    pub fn iterate(&self, g: Generator, times: usize, p: &QPlanePoly) -> QPlanePoly {
        (0..times).fold(p.clone(), |acc, _| self.on_poly(g, &acc))
    }
}

/// Applies an algebra element to a polynomial under the given action.
pub fn apply(elt: &AlgebraElement, p: &QPlanePoly, action: &Action) -> QPlanePoly {
    Evaluator::new(action).apply(elt, p)
}

/// The individual axioms swept by [`check_module_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `kk⁻¹ = 1`
    KKinv,
    /// `k⁻¹k = 1`
    KinvK,
    /// `ke = q²ek`
    KE,
    /// `kf = q⁻²fk`
    KF,
    /// `ef − fe = (k − k⁻¹)/(q − q⁻¹)`
    EF,
    /// `h(1) = ε(h)1`
    Unit,
    /// `g(yx) = q·g(xy)` through the coproduct
    PlaneRelation,
    /// `g(u·v)` agrees with the coproduct expansion for a split `u·v`
    Split,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::KKinv => "kk^-1 = 1",
            CheckKind::KinvK => "k^-1k = 1",
            CheckKind::KE => "ke = q^2 ek",
            CheckKind::KF => "kf = q^-2 fk",
            CheckKind::EF => "ef - fe = (k - k^-1)/(q - q^-1)",
            CheckKind::Unit => "h(1) = eps(h) 1",
            CheckKind::PlaneRelation => "h(yx - qxy) = 0",
            CheckKind::Split => "h(uv) = sum h'(u) h''(v)",
        })
    }
}

/// One failed axiom instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: CheckKind,
    /// Generator involved, for the plane-relation, unit and split checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    /// The basis monomial the check was run on.
    #[serde(serialize_with = "serialize_display")]
    pub monomial: Monomial,
    /// For split checks, the left factor of the split.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_display")]
    pub split_left: Option<Monomial>,
    pub residual: QPlanePoly,
}

fn serialize_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn serialize_opt_display<S: serde::Serializer, T: fmt::Display>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.check)?;
        if let Some(g) = self.generator {
            write!(f, " h = {g}")?;
        }
        write!(f, " on {}", self.monomial)?;
        if let Some(u) = self.split_left {
            write!(f, " (split at {u})")?;
        }
        write!(f, ": residual {}", self.residual)
    }
}

/// Outcome of a module-algebra axiom sweep.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub passed: bool,
    pub max_degree: u32,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    /// First failure whose monomial has the smallest degree.
    pub fn lowest_failure(&self) -> Option<&Failure> {
        self.failures.iter().min_by_key(|f| f.monomial)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "module algebra check up to degree {}: {} ({} checks, {} failures)",
            self.max_degree,
            if self.passed { "passed" } else { "FAILED" },
            self.checks_run,
            self.failures.len()
        )?;
        for fail in self.failures.iter().take(20) {
            writeln!(f, "  {fail}")?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  ... {} more", self.failures.len() - 20)?;
        }
        Ok(())
    }
}

/// Sweeps every U_q(sl₂) relation, the plane relation, the unit axiom and
/// every coproduct split over all basis monomials of degree `<= max_degree`.
pub fn check_module_algebra(action: &Action, max_degree: u32) -> Report {
    let ev = Evaluator::new(action);
    let mut failures = Vec::new();
    let mut checks_run = 0;
    let mut record = |check, generator, monomial, split_left, residual: QPlanePoly| {
        checks_run += 1;
        if !residual.is_zero() {
            failures.push(Failure { check, generator, monomial, split_left, residual });
        }
    };

    // Unit axiom.
    let one = QPlanePoly::one();
    for g in Generator::ALL {
        let expected = match g {
            Generator::K | Generator::KInv => QPlanePoly::one(),
            Generator::E | Generator::F => QPlanePoly::zero(),
        };
        record(CheckKind::Unit, Some(g), Monomial::ONE, None, &ev.on_poly(g, &one) - &expected);
    }

    // The plane relation on the generators, through explicit splittings.
    let xy = Monomial::new(1, 1);
    for g in Generator::ALL {
        let yx = ev.leibniz(g, Monomial::Y, Monomial::X);
        let qxy = ev.leibniz(g, Monomial::X, Monomial::Y).scale(&QScalar::q());
        record(CheckKind::PlaneRelation, Some(g), xy, None, &yx - &qxy);
    }

    let relations = [
        (CheckKind::KKinv, AlgebraElement::relation_k_kinv()),
        (CheckKind::KinvK, AlgebraElement::relation_kinv_k()),
        (CheckKind::KE, AlgebraElement::relation_ke()),
        (CheckKind::KF, AlgebraElement::relation_kf()),
        (CheckKind::EF, AlgebraElement::relation_ef()),
    ];
    for mono in Monomial::up_to_degree(max_degree) {
        let u = QPlanePoly::monomial(QScalar::one(), mono);
        for (kind, rel) in &relations {
            record(*kind, None, mono, None, ev.apply(rel, &u));
        }
        // Every split x^a y^b · x^c y^d of this monomial.
        for a in 0..=mono.m {
            for b in 0..=mono.n {
                let left = Monomial::new(a, b);
                let right = Monomial::new(mono.m - a, mono.n - b);
                if left == Monomial::ONE || right == Monomial::ONE {
                    continue;
                }
                let (k, _) = left.times(right);
                let factor = QScalar::q_pow(k);
                for g in Generator::ALL {
                    let split = ev.leibniz(g, left, right);
                    let direct = ev.on_monomial(g, mono).scale(&factor);
                    record(CheckKind::Split, Some(g), mono, Some(left), &split - &direct);
                }
            }
        }
    }

    Report { passed: failures.is_empty(), max_degree, checks_run, failures }
}

/// The common `k`-eigenvalue of the monomials of `p`.
pub fn weight_of(p: &QPlanePoly, action: &Action) -> Result<QScalar, WeightError> {
    let mut weights = p.terms().map(|(mono, _)| action.weights.of(*mono));
    let first = weights.next().ok_or(WeightError::ZeroPolynomial)?;
    if weights.all(|w| w == first) {
        Ok(first)
    } else {
        Err(WeightError::NotWeightVector)
    }
}

/// The automorphism `x ↦ θx, y ↦ ωy` of the quantum plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiagonalAutomorphism {
    theta: QScalar,
    omega: QScalar,
}

impl DiagonalAutomorphism {
    pub fn new(theta: QScalar, omega: QScalar) -> Result<Self, HopfError> {
        if theta.is_zero() || omega.is_zero() {
            return Err(HopfError::ZeroAutomorphism);
        }
        Ok(DiagonalAutomorphism { theta, omega })
    }

    pub fn identity() -> Self {
        DiagonalAutomorphism { theta: QScalar::one(), omega: QScalar::one() }
    }

    pub fn theta(&self) -> &QScalar {
        &self.theta
    }

    pub fn omega(&self) -> &QScalar {
        &self.omega
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagonalAutomorphism) -> DiagonalAutomorphism {
        DiagonalAutomorphism { theta: &self.theta * &other.theta, omega: &self.omega * &other.omega }
    }

    pub fn inverse(&self) -> DiagonalAutomorphism {
        DiagonalAutomorphism {
            theta: self.theta.inv().expect("nonzero theta"),
            omega: self.omega.inv().expect("nonzero omega"),
        }
    }

    pub fn apply(&self, p: &QPlanePoly) -> QPlanePoly {
        p.substitute_diagonal(&self.theta, &self.omega)
    }
}

impl fmt::Display for DiagonalAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> ({})*x, y -> ({})*y", self.theta, self.omega)
    }
}

/// The action `h ↦ Ψ∘π(h)∘Ψ⁻¹`.
pub fn conjugate(action: &Action, aut: &DiagonalAutomorphism) -> Action {
    // Ψ g Ψ⁻¹ (x) = θ⁻¹ Ψ(g(x)), and likewise with ω for y.
    let theta_inv = aut.theta.inv().expect("nonzero theta");
    let omega_inv = aut.omega.inv().expect("nonzero omega");
    Action {
        weights: action.weights.clone(),
        e_x: aut.apply(&action.e_x).scale(&theta_inv),
        e_y: aut.apply(&action.e_y).scale(&omega_inv),
        f_x: aut.apply(&action.f_x).scale(&theta_inv),
        f_y: aut.apply(&action.f_y).scale(&omega_inv),
    }
}
