//! The six nonempty series of actions, their star-matrix labels, the
//! classification of all admissible labels and isomorphism within a family.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hopf::{conjugate, Action, DiagonalAutomorphism, Generator, WeightPair};
use crate::qplane::{Monomial, QPlanePoly};
use crate::scalars::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("malformed star pattern '{0}'")]
    MalformedPattern(String),
}

fn invalid(name: &str, reason: &str) -> CatalogError {
    CatalogError::InvalidParameter { name: name.into(), reason: reason.into() }
}

/// Zero/nonzero pattern of one homogeneous component of the ef-part.
///
/// Rows are `e`, `f`; columns are `x`, `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StarPattern {
    pub cells: [[bool; 2]; 2],
}

impl StarPattern {
    pub const ZERO: StarPattern = StarPattern { cells: [[false; 2]; 2] };
    /// `(0 ⋆ / ⋆ 0)`
    pub const ANTIDIAGONAL: StarPattern = StarPattern { cells: [[false, true], [true, false]] };
    /// `(⋆ 0 / 0 ⋆)`
    pub const DIAGONAL: StarPattern = StarPattern { cells: [[true, false], [false, true]] };

    /// A single star at (`g`, `var`) with `g` ∈ {e, f}, `var` ∈ {x, y}.
    pub fn single(g: Generator, var: Monomial) -> StarPattern {
        let mut p = StarPattern::ZERO;
        p.cells[row(g)][col(var)] = true;
        p
    }

    /// The four single-star patterns in the order e_x, e_y, f_x, f_y.
    pub fn singles() -> [StarPattern; 4] {
        [
            StarPattern::single(Generator::E, Monomial::X),
            StarPattern::single(Generator::E, Monomial::Y),
            StarPattern::single(Generator::F, Monomial::X),
            StarPattern::single(Generator::F, Monomial::Y),
        ]
    }

    /// All sixteen 2×2 patterns.
    pub fn all() -> Vec<StarPattern> {
        (0u8..16)
            .map(|bits| StarPattern {
                cells: [[bits & 8 != 0, bits & 4 != 0], [bits & 2 != 0, bits & 1 != 0]],
            })
            .collect()
    }

    pub fn star_count(&self) -> usize {
        self.cells.iter().flatten().filter(|c| **c).count()
    }

    pub fn is_zero(&self) -> bool {
        self.star_count() == 0
    }

    /// The (generator, variable) of a single-star pattern.
    pub fn single_star(&self) -> Option<(Generator, Monomial)> {
        if self.star_count() != 1 {
            return None;
        }
        let [r, c] = [0, 1]
            .into_iter()
            .flat_map(|r| [0, 1].into_iter().map(move |c| [r, c]))
            .find(|[r, c]| self.cells[*r][*c])?;
        let g = if r == 0 { Generator::E } else { Generator::F };
        let v = if c == 0 { Monomial::X } else { Monomial::Y };
        Some((g, v))
    }
}

fn row(g: Generator) -> usize {
    match g {
        Generator::E => 0,
        Generator::F => 1,
        _ => panic!("star patterns only have e and f rows"),
    }
}

fn col(var: Monomial) -> usize {
    if var == Monomial::X {
        0
    } else {
        1
    }
}

impl fmt::Display for StarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |b: bool| if b { '*' } else { '0' };
        write!(
            f,
            "{}{}/{}{}",
            cell(self.cells[0][0]),
            cell(self.cells[0][1]),
            cell(self.cells[1][0]),
            cell(self.cells[1][1])
        )
    }
}

impl FromStr for StarPattern {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let bad = || CatalogError::MalformedPattern(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (top, bottom) = compact.split_once('/').ok_or_else(bad)?;
        let parse_row = |r: &str| -> Result<[bool; 2], CatalogError> {
            let cells: Vec<bool> = r
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '*' => Ok(true),
                    _ => Err(bad()),
                })
                .collect::<Result<_, _>>()?;
            <[bool; 2]>::try_from(cells).map_err(|_| bad())
        };
        Ok(StarPattern { cells: [parse_row(top)?, parse_row(bottom)?] })
    }
}

impl Serialize for StarPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A pair of star patterns for the degree-0 and degree-1 components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesLabel {
    pub level0: StarPattern,
    pub level1: StarPattern,
}

impl SeriesLabel {
    pub fn new(level0: StarPattern, level1: StarPattern) -> Self {
        SeriesLabel { level0, level1 }
    }

    /// The label of a concrete action.
    pub fn of(action: &Action) -> Self {
        SeriesLabel { level0: star_pattern(action, 0), level1: star_pattern(action, 1) }
    }
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.level0, self.level1)
    }
}

impl FromStr for SeriesLabel {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = inner
            .split_once(';')
            .ok_or_else(|| CatalogError::MalformedPattern(s.to_string()))?;
        Ok(SeriesLabel { level0: a.parse()?, level1: b.parse()? })
    }
}

impl Serialize for SeriesLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which of the six series an action belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    Trivial,
    Standard,
    EB0,
    FC0,
    EA0,
    FD0,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::Trivial,
        FamilyTag::Standard,
        FamilyTag::EB0,
        FamilyTag::FC0,
        FamilyTag::EA0,
        FamilyTag::FD0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Trivial => "Trivial",
            FamilyTag::Standard => "Standard",
            FamilyTag::EB0 => "EB0",
            FamilyTag::FC0 => "FC0",
            FamilyTag::EA0 => "EA0",
            FamilyTag::FD0 => "FD0",
        }
    }

    /// Parameter names accepted by [`SeriesFamily::from_params`].
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            FamilyTag::Trivial => &["sign_x", "sign_y"],
            FamilyTag::Standard => &["tau"],
            FamilyTag::EB0 => &["b0"],
            FamilyTag::FC0 => &["c0"],
            FamilyTag::EA0 => &["a0", "s", "t"],
            FamilyTag::FD0 => &["d0", "s", "t"],
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

/// A member of one of the six series, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRecord", into = "FamilyRecord")]
pub enum SeriesFamily {
    Trivial { sign_x: i8, sign_y: i8 },
    Standard { tau: QScalar },
    EB0 { b0: QScalar },
    FC0 { c0: QScalar },
    EA0 { a0: QScalar, s: QScalar, t: QScalar },
    FD0 { d0: QScalar, s: QScalar, t: QScalar },
}

/// `{tag, params}` serialization form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub tag: FamilyTag,
    #[serde(default)]
    pub params: BTreeMap<String, QScalar>,
}

impl TryFrom<FamilyRecord> for SeriesFamily {
    type Error = CatalogError;
    fn try_from(r: FamilyRecord) -> Result<Self, CatalogError> {
        SeriesFamily::from_params(r.tag, &r.params)
    }
}

impl From<SeriesFamily> for FamilyRecord {
    fn from(f: SeriesFamily) -> Self {
        FamilyRecord { tag: f.tag(), params: f.params() }
    }
}

fn nonzero(name: &str, v: &QScalar) -> Result<(), CatalogError> {
    if v.is_zero() {
        Err(invalid(name, "must be nonzero"))
    } else {
        Ok(())
    }
}

fn sign(name: &str, v: &QScalar) -> Result<i8, CatalogError> {
    if v.is_one() {
        Ok(1)
    } else if (-v).is_one() {
        Ok(-1)
    } else {
        Err(invalid(name, "must be 1 or -1"))
    }
}

impl SeriesFamily {
    pub fn trivial(sign_x: i8, sign_y: i8) -> Result<Self, CatalogError> {
        for (name, s) in [("sign_x", sign_x), ("sign_y", sign_y)] {
            if s != 1 && s != -1 {
                return Err(invalid(name, "must be 1 or -1"));
            }
        }
        Ok(SeriesFamily::Trivial { sign_x, sign_y })
    }

    pub fn standard(tau: QScalar) -> Result<Self, CatalogError> {
        nonzero("tau", &tau)?;
        Ok(SeriesFamily::Standard { tau })
    }

    pub fn eb0(b0: QScalar) -> Result<Self, CatalogError> {
        nonzero("b0", &b0)?;
        Ok(SeriesFamily::EB0 { b0 })
    }

    pub fn fc0(c0: QScalar) -> Result<Self, CatalogError> {
        nonzero("c0", &c0)?;
        Ok(SeriesFamily::FC0 { c0 })
    }

    pub fn ea0(a0: QScalar, s: QScalar, t: QScalar) -> Result<Self, CatalogError> {
        nonzero("a0", &a0)?;
        Ok(SeriesFamily::EA0 { a0, s, t })
    }

    pub fn fd0(d0: QScalar, s: QScalar, t: QScalar) -> Result<Self, CatalogError> {
        nonzero("d0", &d0)?;
        Ok(SeriesFamily::FD0 { d0, s, t })
    }

    /// Builds a family from named parameters. Missing signs and
    /// distinguished parameters default to 1, missing `s`, `t` to 0.
    pub fn from_params(tag: FamilyTag, params: &BTreeMap<String, QScalar>) -> Result<Self, CatalogError> {
        let allowed = tag.parameter_names();
        if let Some(unknown) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(invalid(unknown, &format!("not a parameter of {tag} (expected {})", allowed.join(", "))));
        }
        let get = |name: &str, default: QScalar| params.get(name).cloned().unwrap_or(default);
        let one = QScalar::one;
        let zero = QScalar::zero;
        match tag {
            FamilyTag::Trivial => {
                SeriesFamily::trivial(sign("sign_x", &get("sign_x", one()))?, sign("sign_y", &get("sign_y", one()))?)
            }
            FamilyTag::Standard => SeriesFamily::standard(get("tau", one())),
            FamilyTag::EB0 => SeriesFamily::eb0(get("b0", one())),
            FamilyTag::FC0 => SeriesFamily::fc0(get("c0", one())),
            FamilyTag::EA0 => SeriesFamily::ea0(get("a0", one()), get("s", zero()), get("t", zero())),
            FamilyTag::FD0 => SeriesFamily::fd0(get("d0", one()), get("s", zero()), get("t", zero())),
        }
    }

    /// The family with all parameters at their defaults.
    pub fn default_for(tag: FamilyTag) -> Self {
        SeriesFamily::from_params(tag, &BTreeMap::new()).expect("defaults are valid")
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            SeriesFamily::Trivial { .. } => FamilyTag::Trivial,
            SeriesFamily::Standard { .. } => FamilyTag::Standard,
            SeriesFamily::EB0 { .. } => FamilyTag::EB0,
            SeriesFamily::FC0 { .. } => FamilyTag::FC0,
            SeriesFamily::EA0 { .. } => FamilyTag::EA0,
            SeriesFamily::FD0 { .. } => FamilyTag::FD0,
        }
    }

    pub fn params(&self) -> BTreeMap<String, QScalar> {
        let entries: Vec<(&str, QScalar)> = match self {
            SeriesFamily::Trivial { sign_x, sign_y } => vec![
                ("sign_x", QScalar::from_int(i64::from(*sign_x))),
                ("sign_y", QScalar::from_int(i64::from(*sign_y))),
            ],
            SeriesFamily::Standard { tau } => vec![("tau", tau.clone())],
            SeriesFamily::EB0 { b0 } => vec![("b0", b0.clone())],
            SeriesFamily::FC0 { c0 } => vec![("c0", c0.clone())],
            SeriesFamily::EA0 { a0, s, t } => vec![("a0", a0.clone()), ("s", s.clone()), ("t", t.clone())],
            SeriesFamily::FD0 { d0, s, t } => vec![("d0", d0.clone()), ("s", s.clone()), ("t", t.clone())],
        };
        entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// The parameters of `conjugate(build(self), aut)`.
    pub fn transport(&self, aut: &DiagonalAutomorphism) -> SeriesFamily {
        let (theta, omega) = (aut.theta(), aut.omega());
        let inv = |c: &QScalar| c.inv().expect("automorphism scalars are nonzero");
        let pow = |c: &QScalar, k: i64| c.pow(k).expect("automorphism scalars are nonzero");
        match self {
            SeriesFamily::Trivial { .. } => self.clone(),
            SeriesFamily::Standard { tau } => SeriesFamily::Standard { tau: &(tau * theta) * &inv(omega) },
            SeriesFamily::EB0 { b0 } => SeriesFamily::EB0 { b0: b0 * &inv(omega) },
            SeriesFamily::FC0 { c0 } => SeriesFamily::FC0 { c0: c0 * &inv(theta) },
            SeriesFamily::EA0 { a0, s, t } => SeriesFamily::EA0 {
                a0: a0 * &inv(theta),
                s: s * &pow(omega, 2),
                t: &(t * &inv(theta)) * &pow(omega, 4),
            },
            SeriesFamily::FD0 { d0, s, t } => SeriesFamily::FD0 {
                d0: d0 * &inv(omega),
                s: s * &pow(theta, 2),
                t: &(t * &inv(omega)) * &pow(theta, 4),
            },
        }
    }
}

impl fmt::Display for SeriesFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.tag(), params.join(", "))
    }
}

fn mono(c: QScalar, m: u32, n: u32) -> QPlanePoly {
    QPlanePoly::monomial(c, Monomial::new(m, n))
}

/// The action of a family member, entry by entry.
pub fn build(family: &SeriesFamily) -> Action {
    let q = QScalar::q();
    let neg_q_over = |c: &QScalar| -&(&q * &c.inv().expect("distinguished parameter is nonzero"));
    match family {
        SeriesFamily::Trivial { sign_x, sign_y } => Action::new(
            WeightPair::new(QScalar::from_int(i64::from(*sign_x)), QScalar::from_int(i64::from(*sign_y)))
                .expect("signs are nonzero"),
            QPlanePoly::zero(),
            QPlanePoly::zero(),
            QPlanePoly::zero(),
            QPlanePoly::zero(),
        ),
        SeriesFamily::Standard { tau } => Action::new(
            WeightPair::q_powers(1, -1),
            QPlanePoly::zero(),
            mono(tau.clone(), 1, 0),
            mono(tau.inv().expect("tau is nonzero"), 0, 1),
            QPlanePoly::zero(),
        ),
        SeriesFamily::EB0 { b0 } => {
            let binv = b0.inv().expect("b0 is nonzero");
            Action::new(
                WeightPair::q_powers(1, -2),
                QPlanePoly::zero(),
                QPlanePoly::constant(b0.clone()),
                mono(binv, 1, 1),
                mono(neg_q_over(b0), 0, 2),
            )
        }
        SeriesFamily::FC0 { c0 } => {
            let cinv = c0.inv().expect("c0 is nonzero");
            Action::new(
                WeightPair::q_powers(2, -1),
                mono(neg_q_over(c0), 2, 0),
                mono(cinv, 1, 1),
                QPlanePoly::constant(c0.clone()),
                QPlanePoly::zero(),
            )
        }
        SeriesFamily::EA0 { a0, s, t } => Action::new(
            WeightPair::q_powers(-2, -1),
            QPlanePoly::constant(a0.clone()),
            QPlanePoly::zero(),
            &mono(neg_q_over(a0), 2, 0) + &mono(t.clone(), 0, 4),
            &mono(neg_q_over(a0), 1, 1) + &mono(s.clone(), 0, 3),
        ),
        SeriesFamily::FD0 { d0, s, t } => Action::new(
            WeightPair::q_powers(1, 2),
            &mono(neg_q_over(d0), 1, 1) + &mono(s.clone(), 3, 0),
            &mono(neg_q_over(d0), 0, 2) + &mono(t.clone(), 4, 0),
            QPlanePoly::zero(),
            QPlanePoly::constant(d0.clone()),
        ),
    }
}

/// Cell (g, v) is a star iff the degree-`level` part of g(v) is nonzero.
pub fn star_pattern(action: &Action, level: u32) -> StarPattern {
    let star = |p: &QPlanePoly| !p.homogeneous_component(level).is_zero();
    StarPattern {
        cells: [
            [star(&action.e_x), star(&action.e_y)],
            [star(&action.f_x), star(&action.f_y)],
        ],
    }
}

/// Verdict of the label analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutcomeKind {
    /// Ruled out structurally before any weight computation.
    Excluded { reason: String },
    /// Admissible but no action carries this label.
    Empty { reason: String },
    Nonempty { family: FamilyTag },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationOutcome {
    #[serde(flatten)]
    pub kind: OutcomeKind,
    /// `None` means the label leaves the weights unconstrained.
    pub forced_weights: Option<WeightPair>,
}

impl ClassificationOutcome {
    pub fn family(&self) -> Option<FamilyTag> {
        match self.kind {
            OutcomeKind::Nonempty { family } => Some(family),
            _ => None,
        }
    }

    pub fn is_empty_series(&self) -> bool {
        matches!(self.kind, OutcomeKind::Empty { .. })
    }
}

/// Admissible degree-0 patterns: each column has a zero, and at most one star.
pub fn level0_admissible(p: &StarPattern) -> bool {
    p.star_count() <= 1
}

/// Admissible degree-1 patterns: zero, a single star, or the antidiagonal.
pub fn level1_admissible(p: &StarPattern) -> bool {
    p.star_count() <= 1 || *p == StarPattern::ANTIDIAGONAL
}

/// Weights forced by a single degree-0 star.
fn level0_weights(g: Generator, v: Monomial) -> WeightPair {
    match (g, v == Monomial::X) {
        (Generator::E, true) => WeightPair::q_powers(-2, -1),
        (Generator::E, false) => WeightPair::q_powers(1, -2),
        (Generator::F, true) => WeightPair::q_powers(2, -1),
        _ => WeightPair::q_powers(1, 2),
    }
}

/// Weights forced by an admissible nonzero degree-1 pattern.
fn level1_weights(p: &StarPattern) -> WeightPair {
    if *p == StarPattern::ANTIDIAGONAL {
        return WeightPair::q_powers(1, -1);
    }
    let (g, v) = p.single_star().expect("single star");
    match (g, v == Monomial::X) {
        (Generator::E, true) => WeightPair::q_powers(-3, -1),
        (Generator::E, false) => WeightPair::q_powers(1, -1),
        (Generator::F, true) => WeightPair::q_powers(1, -1),
        _ => WeightPair::q_powers(1, 3),
    }
}

pub fn classify_label(label: &SeriesLabel) -> ClassificationOutcome {
    let SeriesLabel { level0, level1 } = label;
    let outcome = |kind, forced_weights| ClassificationOutcome { kind, forced_weights };
    if !level0_admissible(level0) {
        let reason = if level0.cells[0][0] && level0.cells[1][0] || level0.cells[0][1] && level0.cells[1][1] {
            "degree-0 column with two stars"
        } else {
            "degree-0 pattern with two stars"
        };
        return outcome(OutcomeKind::Excluded { reason: reason.into() }, None);
    }
    if !level1_admissible(level1) {
        let reason = if *level1 == StarPattern::DIAGONAL {
            "diagonal degree-1 pattern is incompatible with the weights"
        } else {
            "degree-1 pattern with more than one star outside the antidiagonal"
        };
        return outcome(OutcomeKind::Excluded { reason: reason.into() }, None);
    }
    match (level0.single_star(), level1.is_zero()) {
        (Some((g, v)), true) => {
            let family = match (g, v == Monomial::X) {
                (Generator::E, true) => FamilyTag::EA0,
                (Generator::E, false) => FamilyTag::EB0,
                (Generator::F, true) => FamilyTag::FC0,
                _ => FamilyTag::FD0,
            };
            outcome(OutcomeKind::Nonempty { family }, Some(level0_weights(g, v)))
        }
        (Some((g, v)), false) => {
            let w0 = level0_weights(g, v);
            let w1 = level1_weights(level1);
            debug_assert_ne!(w0, w1);
            let reason = format!("weight clash: degree 0 forces ({}, {}), degree 1 forces ({}, {})",
                w0.alpha(), w0.beta(), w1.alpha(), w1.beta());
            outcome(OutcomeKind::Empty { reason }, None)
        }
        (None, true) => outcome(OutcomeKind::Nonempty { family: FamilyTag::Trivial }, None),
        (None, false) if *level1 == StarPattern::ANTIDIAGONAL => {
            outcome(OutcomeKind::Nonempty { family: FamilyTag::Standard }, Some(level1_weights(level1)))
        }
        (None, false) => {
            let reason = "degree argument: e(f(.)) - f(e(.)) has zero projection where k - k^-1 does not";
            outcome(OutcomeKind::Empty { reason: reason.into() }, None)
        }
    }
}

/// All admissible labels, degree-0 pattern first.
pub fn admissible_labels() -> Vec<SeriesLabel> {
    let all = StarPattern::all();
    let l0: Vec<_> = all.iter().filter(|p| level0_admissible(p)).copied().collect();
    let l1: Vec<_> = all.iter().filter(|p| level1_admissible(p)).copied().collect();
    l0.iter().flat_map(|a| l1.iter().map(move |b| SeriesLabel::new(*a, *b))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonemptySeries {
    pub label: SeriesLabel,
    pub family: FamilyTag,
    /// `None` when the weights are unconstrained.
    pub alpha: Option<QScalar>,
    pub beta: Option<QScalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmptySeries {
    pub label: SeriesLabel,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationSummary {
    pub total: usize,
    pub empty: usize,
    pub nonempty: usize,
    pub nonempty_series: Vec<NonemptySeries>,
    pub empty_series: Vec<EmptySeries>,
}

pub fn enumerate_classification() -> ClassificationSummary {
    let labels = admissible_labels();
    let mut nonempty_series = Vec::new();
    let mut empty_series = Vec::new();
    for label in &labels {
        let out = classify_label(label);
        match out.kind {
            OutcomeKind::Nonempty { family } => nonempty_series.push(NonemptySeries {
                label: *label,
                family,
                alpha: out.forced_weights.as_ref().map(|w| w.alpha().clone()),
                beta: out.forced_weights.as_ref().map(|w| w.beta().clone()),
            }),
            OutcomeKind::Empty { reason } => empty_series.push(EmptySeries { label: *label, reason }),
            OutcomeKind::Excluded { .. } => unreachable!("admissible labels are not excluded"),
        }
    }
    ClassificationSummary {
        total: labels.len(),
        empty: empty_series.len(),
        nonempty: nonempty_series.len(),
        nonempty_series,
        empty_series,
    }
}

/// `t/(a₀s²)` for EA0 or `t/(d₀s²)` for FD0 when `s, t ≠ 0`.
pub fn invariant_phi(family: &SeriesFamily) -> Option<QScalar> {
    let (lead, s, t) = match family {
        SeriesFamily::EA0 { a0, s, t } => (a0, s, t),
        SeriesFamily::FD0 { d0, s, t } => (d0, s, t),
        _ => return None,
    };
    if s.is_zero() || t.is_zero() {
        return None;
    }
    let denom = &(lead * s) * s;
    Some(t * &denom.inv().expect("nonzero"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// Φ with `conjugate(build(f1), Φ) = build(f2)`, when one exists over ℚ(q).
    pub certificate: Option<DiagonalAutomorphism>,
    pub reason: String,
}

impl IsoVerdict {
    fn no(reason: impl Into<String>) -> Self {
        IsoVerdict { isomorphic: false, certificate: None, reason: reason.into() }
    }

    fn yes(theta: QScalar, omega: QScalar, reason: impl Into<String>) -> Self {
        IsoVerdict {
            isomorphic: true,
            certificate: Some(DiagonalAutomorphism::new(theta, omega).expect("nonzero scalars")),
            reason: reason.into(),
        }
    }

    fn without_certificate(reason: impl Into<String>) -> Self {
        IsoVerdict { isomorphic: true, certificate: None, reason: reason.into() }
    }
}

fn ratio(a: &QScalar, b: &QScalar) -> QScalar {
    a * &b.inv().expect("nonzero")
}

fn zero_pattern(s: &QScalar, t: &QScalar) -> (bool, bool) {
    (s.is_zero(), t.is_zero())
}

/// Decides the EA0/FD0 case. `lead` scales by one coordinate
/// (`main`), `s` by the square and `t` by the fourth power of the other
/// (`aux`), with `t` also carrying the inverse of the `main` factor.
fn iso_with_roots(
    (lead1, s1, t1): (&QScalar, &QScalar, &QScalar),
    (lead2, s2, t2): (&QScalar, &QScalar, &QScalar),
    family: &SeriesFamily,
    assemble: impl Fn(QScalar, QScalar) -> (QScalar, QScalar),
) -> IsoVerdict {
    if zero_pattern(s1, t1) != zero_pattern(s2, t2) {
        return IsoVerdict::no("different zero pattern of (s, t)");
    }
    // main scalar: lead' = lead / main
    let main = ratio(lead1, lead2);
    let aux = match (s1.is_zero(), t1.is_zero()) {
        (true, true) => Some(QScalar::one()),
        (false, _) => {
            if !t1.is_zero() {
                let phi1 = invariant_phi(family).expect("s, t nonzero");
                let phi2 = &ratio(t2, lead2) * &ratio(&QScalar::one(), &(s2 * s2));
                if phi1 != phi2 {
                    return IsoVerdict::no(format!("invariant phi differs: {phi1} vs {phi2}"));
                }
            }
            ratio(s2, s1).sqrt()
        }
        (true, false) => (&main * &ratio(t2, t1)).sqrt().and_then(|r| r.sqrt()),
    };
    match aux {
        Some(aux) => {
            let (theta, omega) = assemble(main, aux);
            IsoVerdict::yes(theta, omega, "same class")
        }
        None => IsoVerdict::without_certificate("same class; certificate omitted (no root in the scalar field)"),
    }
}

/// Isomorphism within the catalog, with a diagonal certificate when one
/// can be written down over ℚ(q).
pub fn are_isomorphic(f1: &SeriesFamily, f2: &SeriesFamily) -> IsoVerdict {
    use SeriesFamily as S;
    if f1.tag() != f2.tag() {
        return IsoVerdict::no(format!("different series {} and {}: k acts differently", f1.tag(), f2.tag()));
    }
    let one = QScalar::one;
    match (f1, f2) {
        (S::Trivial { sign_x: a, sign_y: b }, S::Trivial { sign_x: c, sign_y: d }) => {
            if (a, b) == (c, d) {
                IsoVerdict::yes(one(), one(), "equal actions")
            } else {
                IsoVerdict::no("different signs of k")
            }
        }
        (S::Standard { tau: t1 }, S::Standard { tau: t2 }) => {
            IsoVerdict::yes(one(), ratio(t1, t2), "all Standard actions are isomorphic")
        }
        (S::EB0 { b0: b1 }, S::EB0 { b0: b2 }) => {
            IsoVerdict::yes(one(), ratio(b1, b2), "all EB0 actions are isomorphic")
        }
        (S::FC0 { c0: c1 }, S::FC0 { c0: c2 }) => {
            IsoVerdict::yes(ratio(c1, c2), one(), "all FC0 actions are isomorphic")
        }
        (S::EA0 { a0: a1, s: s1, t: t1 }, S::EA0 { a0: a2, s: s2, t: t2 }) => {
            iso_with_roots((a1, s1, t1), (a2, s2, t2), f1, |theta, omega| (theta, omega))
        }
        (S::FD0 { d0: d1, s: s1, t: t1 }, S::FD0 { d0: d2, s: s2, t: t2 }) => {
            iso_with_roots((d1, s1, t1), (d2, s2, t2), f1, |omega, theta| (theta, omega))
        }
        _ => unreachable!("tags already compared"),
    }
}

/// Checks a certificate: `conjugate(build(f1), Φ) = build(f2)`.
pub fn certificate_holds(f1: &SeriesFamily, f2: &SeriesFamily, aut: &DiagonalAutomorphism) -> bool {
    conjugate(&build(f1), aut) == build(f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_module_algebra;

    fn q(k: i64) -> QScalar {
        QScalar::q_pow(k)
    }

    fn int(n: i64) -> QScalar {
        QScalar::from_int(n)
    }

    #[test]
    fn eb0_matrix() {
        let a = build(&SeriesFamily::eb0(int(1)).unwrap());
        assert_eq!(a.weights, WeightPair::q_powers(1, -2));
        assert!(a.e_x.is_zero());
        assert_eq!(a.e_y, QPlanePoly::one());
        assert_eq!(a.f_x.to_string(), "x*y");
        assert_eq!(a.f_y.to_string(), "-q*y^2");
    }

    #[test]
    fn ea0_without_tail() {
        let a = build(&SeriesFamily::ea0(int(1), int(0), int(0)).unwrap());
        assert_eq!(a.f_x.to_string(), "-q*x^2");
        assert_eq!(a.f_y.to_string(), "-q*x*y");
    }

    #[test]
    fn every_default_family_is_a_module_algebra() {
        for tag in FamilyTag::ALL {
            let a = build(&SeriesFamily::default_for(tag));
            assert!(check_module_algebra(&a, 5).passed, "{tag}");
        }
    }

    #[test]
    fn patterns() {
        let eb0 = build(&SeriesFamily::default_for(FamilyTag::EB0));
        assert_eq!(star_pattern(&eb0, 0).to_string(), "0*/00");
        let st = build(&SeriesFamily::default_for(FamilyTag::Standard));
        assert_eq!(star_pattern(&st, 1), StarPattern::ANTIDIAGONAL);
        let tr = build(&SeriesFamily::default_for(FamilyTag::Trivial));
        assert!(star_pattern(&tr, 0).is_zero());
        assert_eq!("0*/00".parse::<StarPattern>().unwrap().to_string(), "0*/00");
        assert!("0*/0".parse::<StarPattern>().is_err());
        let label: SeriesLabel = "[0*/00; 00/00]".parse().unwrap();
        assert_eq!(label.to_string(), "[0*/00; 00/00]");
    }

    #[test]
    fn label_examples() {
        let out = classify_label(&"[0*/00; 00/00]".parse().unwrap());
        assert_eq!(out.family(), Some(FamilyTag::EB0));
        assert_eq!(out.forced_weights, Some(WeightPair::q_powers(1, -2)));
        assert!(classify_label(&"[00/00; *0/00]".parse().unwrap()).is_empty_series());
        let clash = classify_label(&"[*0/00; 00/0*]".parse().unwrap());
        assert!(clash.is_empty_series());
        let triv = classify_label(&"[00/00; 00/00]".parse().unwrap());
        assert_eq!(triv.family(), Some(FamilyTag::Trivial));
        assert_eq!(triv.forced_weights, None);
        let two = classify_label(&"[*0/*0; 00/00]".parse().unwrap());
        assert!(matches!(two.kind, OutcomeKind::Excluded { .. }));
        let diag = classify_label(&"[00/00; *0/0*]".parse().unwrap());
        assert!(matches!(diag.kind, OutcomeKind::Excluded { .. }));
    }

    #[test]
    fn counts() {
        let s = enumerate_classification();
        assert_eq!((s.total, s.nonempty, s.empty), (30, 6, 24));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(invariant_phi(&SeriesFamily::ea0(int(1), int(1), int(1)).unwrap()), Some(int(1)));
        assert_eq!(invariant_phi(&SeriesFamily::ea0(int(2), int(1), int(4)).unwrap()), Some(int(2)));
        assert_eq!(invariant_phi(&SeriesFamily::ea0(int(1), int(0), int(1)).unwrap()), None);
    }

    #[test]
    fn iso_examples() {
        let v = are_isomorphic(&SeriesFamily::standard(q(2)).unwrap(), &SeriesFamily::standard(int(1)).unwrap());
        let cert = v.certificate.unwrap();
        assert_eq!((cert.theta(), cert.omega()), (&int(1), &q(2)));
        let a = SeriesFamily::ea0(int(1), int(1), int(1)).unwrap();
        let b = SeriesFamily::ea0(int(1), int(1), int(2)).unwrap();
        assert!(!are_isomorphic(&a, &b).isomorphic);
        let eb = SeriesFamily::default_for(FamilyTag::EB0);
        let fc = SeriesFamily::default_for(FamilyTag::FC0);
        assert!(!are_isomorphic(&eb, &fc).isomorphic);
        // s' / s = 2 has no square root in Q(q)
        let c = SeriesFamily::ea0(int(1), int(2), int(0)).unwrap();
        let d = SeriesFamily::ea0(int(1), int(1), int(0)).unwrap();
        let v = are_isomorphic(&c, &d);
        assert!(v.isomorphic && v.certificate.is_none());
    }

    #[test]
    fn params_validation() {
        assert!(SeriesFamily::eb0(int(0)).is_err());
        assert!(SeriesFamily::trivial(2, 1).is_err());
        let mut p = BTreeMap::new();
        p.insert("b0".to_string(), q(1));
        assert!(SeriesFamily::from_params(FamilyTag::Standard, &p).is_err());
        assert_eq!(SeriesFamily::from_params(FamilyTag::EB0, &p).unwrap(), SeriesFamily::EB0 { b0: q(1) });
        let json = serde_json::to_string(&SeriesFamily::ea0(q(1), int(0), int(2)).unwrap()).unwrap();
        assert_eq!(json, r#"{"tag":"EA0","params":{"a0":"q","s":"0","t":"2"}}"#);
        let back: SeriesFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, SeriesFamily::ea0(q(1), int(0), int(2)).unwrap());
    }
}
