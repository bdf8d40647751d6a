//! The quantum plane as a U_q(sl₂)-module: truncated slices, singular
//! vectors, quotients, Verma matching and composition reports.
//!
//! All statements are about finite windows. A basis element whose image
//! leaves the window is recorded as leaking and its column is not used as
//! evidence.

pub mod linalg;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{build, FamilyTag, SeriesFamily};
use crate::hopf::{weight_of, Action, Evaluator, Generator, WeightPair};
use crate::qplane::{Monomial, QPlanePoly};
use crate::scalars::{quantum_integer, QScalar};
use linalg::{column, is_zero, kernel, mat_vec, unit_vector, zeros, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error("truncation size must be at least 1")]
    InvalidSize,
    #[error("Verma weight must be nonzero")]
    ZeroLambda,
    #[error("module has {available} usable basis vectors, {needed} needed")]
    DimensionMismatch { needed: usize, available: usize },
    #[error("generator {0} is not a weight vector")]
    NotWeightVector(String),
    #[error("{0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Highest,
    Lowest,
}

impl Orientation {
    /// The generator that kills the extremal vector.
    pub fn raising(self) -> Generator {
        match self {
            Orientation::Highest => Generator::E,
            Orientation::Lowest => Generator::F,
        }
    }

    /// The generator that walks away from the extremal vector.
    pub fn lowering(self) -> Generator {
        match self {
            Orientation::Highest => Generator::F,
            Orientation::Lowest => Generator::E,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Highest => "highest",
            Orientation::Lowest => "lowest",
        })
    }
}

/// Which part of ℂ_q[x,y] a slice looks at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisDescription {
    /// `x^n ℂ[y]`, basis `x^n y^p` for `p <= cutoff`.
    XPowerTimesYPoly(u32),
    /// `ℂ[x] y^n`, basis `x^p y^n` for `p <= cutoff`.
    YPowerTimesXPoly(u32),
    /// The homogeneous component of degree `n`.
    Homogeneous(u32),
    /// The line through `x^m y^n`.
    SingleMonomial(u32, u32),
    /// The submodule generated by a weight vector, spanned by
    /// `lowering^i raising^j (generator)` with `i < cutoff`.
    Generated { generator: QPlanePoly, orientation: Orientation },
}

impl BasisDescription {
    /// Whether a monomial lies in the (untruncated) subspace, for
    /// descriptions given by monomials.
    fn contains(&self, mono: Monomial) -> Option<bool> {
        match self {
            BasisDescription::XPowerTimesYPoly(n) => Some(mono.m == *n),
            BasisDescription::YPowerTimesXPoly(n) => Some(mono.n == *n),
            BasisDescription::Homogeneous(n) => Some(mono.degree() == *n),
            BasisDescription::SingleMonomial(m, n) => Some(mono == Monomial::new(*m, *n)),
            BasisDescription::Generated { .. } => None,
        }
    }

    fn monomials(&self, cutoff: u32) -> Option<Vec<Monomial>> {
        Some(match self {
            BasisDescription::XPowerTimesYPoly(n) => (0..=cutoff).map(|p| Monomial::new(*n, p)).collect(),
            BasisDescription::YPowerTimesXPoly(n) => (0..=cutoff).map(|p| Monomial::new(p, *n)).collect(),
            BasisDescription::Homogeneous(n) => Monomial::of_degree(*n).collect(),
            BasisDescription::SingleMonomial(m, n) => vec![Monomial::new(*m, *n)],
            BasisDescription::Generated { .. } => return None,
        })
    }
}

impl fmt::Display for BasisDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |v: &str, n: u32| match n {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{n}"),
        };
        match self {
            BasisDescription::XPowerTimesYPoly(n) => match n {
                0 => write!(f, "C[y]"),
                _ => write!(f, "{}*C[y]", power("x", *n)),
            },
            BasisDescription::YPowerTimesXPoly(n) => match n {
                0 => write!(f, "C[x]"),
                _ => write!(f, "C[x]*{}", power("y", *n)),
            },
            BasisDescription::Homogeneous(n) => write!(f, "C_q[x,y]_{n}"),
            BasisDescription::SingleMonomial(m, n) => {
                write!(f, "C*{}", Monomial::new(*m, *n))
            }
            BasisDescription::Generated { generator, .. } => write!(f, "U*({generator})"),
        }
    }
}

/// A finite window of a module, with matrices in a weight basis.
///
/// Matrix entry `[i][j]` is the coefficient of basis vector `i` in the
/// image of basis vector `j`.
#[derive(Debug, Clone, Serialize)]
pub struct TruncatedModule {
    pub description: String,
    pub labels: Vec<String>,
    /// Concrete basis polynomials; absent for abstract modules.
    #[serde(skip)]
    pub vectors: Option<Vec<QPlanePoly>>,
    pub k_matrix: Matrix,
    pub e_matrix: Matrix,
    pub f_matrix: Matrix,
    /// Basis indices whose `e`-image is not (fully) in the window.
    pub leak_e: BTreeSet<usize>,
    pub leak_f: BTreeSet<usize>,
    /// Images that leave the described subspace altogether.
    pub escapes: Vec<String>,
}

impl TruncatedModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn weight(&self, i: usize) -> &QScalar {
        &self.k_matrix[i][i]
    }

    pub fn matrix(&self, g: Generator) -> &Matrix {
        match g {
            Generator::E => &self.e_matrix,
            Generator::F => &self.f_matrix,
            _ => &self.k_matrix,
        }
    }

    pub fn leaks(&self, g: Generator) -> &BTreeSet<usize> {
        match g {
            Generator::E => &self.leak_e,
            Generator::F => &self.leak_f,
            _ => &EMPTY,
        }
    }

    /// True if the described subspace is invariant, as far as computed.
    pub fn is_invariant(&self) -> bool {
        self.escapes.is_empty()
    }

    pub fn render_vector(&self, v: &[QScalar]) -> String {
        if let Some(vectors) = &self.vectors {
            let mut p = QPlanePoly::zero();
            for (c, b) in v.iter().zip(vectors) {
                p.add_scaled(b, c);
            }
            return p.to_string();
        }
        let terms: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({c})*{l}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

static EMPTY: BTreeSet<usize> = BTreeSet::new();

/// An abstract Verma module, truncated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VermaSpec {
    pub lambda: QScalar,
    pub orientation: Orientation,
    pub size: usize,
}

impl VermaSpec {
    pub fn new(lambda: QScalar, orientation: Orientation, size: usize) -> Result<Self, ReprError> {
        if size == 0 {
            return Err(ReprError::InvalidSize);
        }
        if lambda.is_zero() {
            return Err(ReprError::ZeroLambda);
        }
        Ok(VermaSpec { lambda, orientation, size })
    }

    pub fn highest(lambda: QScalar, size: usize) -> Result<Self, ReprError> {
        VermaSpec::new(lambda, Orientation::Highest, size)
    }

    pub fn lowest(lambda: QScalar, size: usize) -> Result<Self, ReprError> {
        VermaSpec::new(lambda, Orientation::Lowest, size)
    }
}

fn q_minus_q_inv_inverse() -> QScalar {
    (&QScalar::q() - &QScalar::q_pow(-1)).inv().expect("q - 1/q is nonzero")
}

/// Verma matrices in the basis `v_0, ..., v_{size-1}`.
///
/// Highest: `k v_i = λq^{-2i} v_i`, `e v_0 = 0`,
/// `e v_{i+1} = (λq^{-i} - λ^{-1}q^i)/(q - q^{-1}) v_i`, `f v_i = [i+1] v_{i+1}`.
/// Lowest is the same under `e ↔ f`, `k ↔ k^{-1}`.
pub fn verma_matrices(spec: &VermaSpec) -> Result<TruncatedModule, ReprError> {
    let spec = VermaSpec::new(spec.lambda.clone(), spec.orientation, spec.size)?;
    let n = spec.size;
    let lambda = &spec.lambda;
    let lambda_inv = lambda.inv().expect("nonzero lambda");
    let denom = q_minus_q_inv_inverse();
    let mut k = zeros(n, n);
    let mut up = zeros(n, n);
    let mut down = zeros(n, n);
    let sign: i64 = match spec.orientation {
        Orientation::Highest => 1,
        Orientation::Lowest => -1,
    };
    for i in 0..n {
        let ii = i as i64;
        k[i][i] = lambda * &QScalar::q_pow(-2 * sign * ii);
        if i + 1 < n {
            down[i + 1][i] = quantum_integer(ii + 1);
            // Highest: λq^{-i} - λ^{-1}q^{i}; lowest: λ^{-1}q^{-i} - λq^{i}.
            let (a, b) = match spec.orientation {
                Orientation::Highest => (lambda, &lambda_inv),
                Orientation::Lowest => (&lambda_inv, lambda),
            };
            let num = &(a * &QScalar::q_pow(-ii)) - &(b * &QScalar::q_pow(ii));
            up[i][i + 1] = &num * &denom;
        }
    }
    let (e, f) = match spec.orientation {
        Orientation::Highest => (up, down),
        Orientation::Lowest => (down, up),
    };
    let edge = BTreeSet::from([n - 1]);
    let (leak_e, leak_f) = match spec.orientation {
        Orientation::Highest => (BTreeSet::new(), edge),
        Orientation::Lowest => (edge, BTreeSet::new()),
    };
    Ok(TruncatedModule {
        description: format!("V({lambda}) [{}]", spec.orientation),
        labels: (0..n).map(|i| format!("v{i}")).collect(),
        vectors: None,
        k_matrix: k,
        e_matrix: e,
        f_matrix: f,
        leak_e,
        leak_f,
        escapes: Vec::new(),
    })
}

/// Independent polynomials with coordinate tracking.
struct PolySpan {
    count: usize,
    rows: Vec<(Monomial, QPlanePoly, Vector)>,
}

impl PolySpan {
    fn new(count: usize) -> Self {
        PolySpan { count, rows: Vec::new() }
    }

    fn reduce(&self, p: &QPlanePoly) -> (QPlanePoly, Vector) {
        let mut rem = p.clone();
        let mut combo = linalg::zero_vector(self.count);
        for (pivot, row, row_combo) in &self.rows {
            let c = rem.coeff(*pivot);
            if c.is_zero() {
                continue;
            }
            rem.add_scaled(row, &-&c);
            for (t, s) in combo.iter_mut().zip(row_combo) {
                if !s.is_zero() {
                    *t += &(&c * s);
                }
            }
        }
        (rem, combo)
    }

    /// Coordinates of `p`, if it lies in the span.
    fn express(&self, p: &QPlanePoly) -> Option<Vector> {
        let (rem, combo) = self.reduce(p);
        rem.is_zero().then_some(combo)
    }

    /// Inserts basis vector number `index`; false if dependent.
    fn insert(&mut self, index: usize, p: &QPlanePoly) -> bool {
        let (rem, combo) = self.reduce(p);
        let Some((pivot, c)) = rem.terms().next().map(|(m, c)| (*m, c.clone())) else {
            return false;
        };
        let inv = c.inv().expect("nonzero");
        let mut combo: Vector = combo.iter().map(|x| -&(x * &inv)).collect();
        combo[index] = inv.clone();
        let row = rem.scale(&inv);
        for (_, other, other_combo) in &mut self.rows {
            let d = other.coeff(pivot);
            if !d.is_zero() {
                other.add_scaled(&row, &-&d);
                for (t, s) in other_combo.iter_mut().zip(&combo) {
                    if !s.is_zero() {
                        *t -= &(&d * s);
                    }
                }
            }
        }
        self.rows.push((pivot, row, combo));
        true
    }
}

/// Matrices of the action restricted to a slice.
///
/// For monomial descriptions `cutoff` bounds the free exponent; for
/// generated submodules it bounds the length of the lowering chains.
pub fn slice(action: &Action, basis: &BasisDescription, cutoff: u32) -> Result<TruncatedModule, ReprError> {
    let ev = Evaluator::new(action);
    match basis.monomials(cutoff) {
        Some(monos) => Ok(monomial_slice(&ev, basis, &monos)),
        None => generated_slice(&ev, basis, cutoff as usize),
    }
}

fn monomial_slice(ev: &Evaluator<'_>, basis: &BasisDescription, monos: &[Monomial]) -> TruncatedModule {
    let n = monos.len();
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut k = zeros(n, n);
    let mut e = zeros(n, n);
    let mut f = zeros(n, n);
    let mut leak_e = BTreeSet::new();
    let mut leak_f = BTreeSet::new();
    let mut escapes = Vec::new();
    for (j, mono) in monos.iter().enumerate() {
        k[j][j] = ev.weight(*mono);
        for (g, matrix, leaks) in [(Generator::E, &mut e, &mut leak_e), (Generator::F, &mut f, &mut leak_f)] {
            for (target, c) in ev.on_monomial(g, *mono).terms() {
                if let Some(&i) = index.get(target) {
                    matrix[i][j] = c.clone();
                } else if basis.contains(*target) == Some(true) {
                    leaks.insert(j);
                } else {
                    escapes.push(format!("{g}({mono}) has a term in {target}"));
                }
            }
        }
    }
    TruncatedModule {
        description: basis.to_string(),
        labels: monos.iter().map(Monomial::to_string).collect(),
        vectors: Some(monos.iter().map(|m| QPlanePoly::monomial(QScalar::one(), *m)).collect()),
        k_matrix: k,
        e_matrix: e,
        f_matrix: f,
        leak_e,
        leak_f,
        escapes,
    }
}

fn generated_slice(ev: &Evaluator<'_>, basis: &BasisDescription, length: usize) -> Result<TruncatedModule, ReprError> {
    let BasisDescription::Generated { generator, orientation } = basis else {
        unreachable!("monomial descriptions handled elsewhere");
    };
    if length == 0 {
        return Err(ReprError::InvalidSize);
    }
    weight_of(generator, ev.action()).map_err(|_| ReprError::NotWeightVector(generator.to_string()))?;
    let (raise, lower) = (orientation.raising(), orientation.lowering());
    // raising chain, then lowering chains from each of its members
    let mut tops = vec![generator.clone()];
    while tops.len() <= length {
        let next = ev.on_poly(raise, tops.last().expect("nonempty"));
        if next.is_zero() {
            break;
        }
        tops.push(next);
    }
    let mut candidates: Vec<(i64, QPlanePoly)> = Vec::new();
    for (j, top) in tops.iter().enumerate() {
        let mut v = top.clone();
        for i in 0..length {
            if v.is_zero() {
                break;
            }
            candidates.push((i as i64 - j as i64, v.clone()));
            v = ev.on_poly(lower, &v);
        }
    }
    candidates.sort_by_key(|(level, _)| *level);
    let mut span = PolySpan::new(candidates.len());
    let mut vectors = Vec::new();
    for (_, v) in candidates {
        if span.insert(vectors.len(), &v) {
            vectors.push(v);
        }
    }
    let n = vectors.len();
    let mut span = PolySpan::new(n);
    for (i, v) in vectors.iter().enumerate() {
        span.insert(i, v);
    }
    let mut k = zeros(n, n);
    let mut e = zeros(n, n);
    let mut f = zeros(n, n);
    let mut leak_e = BTreeSet::new();
    let mut leak_f = BTreeSet::new();
    for (j, v) in vectors.iter().enumerate() {
        k[j][j] = weight_of(v, ev.action()).map_err(|_| ReprError::NotWeightVector(v.to_string()))?;
        for (g, matrix, leaks) in [(Generator::E, &mut e, &mut leak_e), (Generator::F, &mut f, &mut leak_f)] {
            match span.express(&ev.on_poly(g, v)) {
                Some(coords) => {
                    for (i, c) in coords.into_iter().enumerate() {
                        matrix[i][j] = c;
                    }
                }
                None => {
                    leaks.insert(j);
                }
            }
        }
    }
    Ok(TruncatedModule {
        description: basis.to_string(),
        labels: vectors.iter().map(QPlanePoly::to_string).collect(),
        vectors: Some(vectors),
        k_matrix: k,
        e_matrix: e,
        f_matrix: f,
        leak_e,
        leak_f,
        escapes: Vec::new(),
    })
}

/// A vector killed by the raising generator modulo the previously found
/// submodules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularVector {
    pub coordinates: Vector,
    pub weight: QScalar,
    pub rendered: String,
}

/// The submodule generated by `v` inside the window.
pub fn generated_submodule(tm: &TruncatedModule, v: &[QScalar]) -> Subspace {
    let mut sub = Subspace::new(tm.dim());
    extend_submodule(tm, &mut sub, v);
    sub
}

fn extend_submodule(tm: &TruncatedModule, sub: &mut Subspace, v: &[QScalar]) {
    let mut queue = vec![v.to_vec()];
    while let Some(u) = queue.pop() {
        if sub.insert(&u) {
            queue.push(mat_vec(&tm.e_matrix, &u));
            queue.push(mat_vec(&tm.f_matrix, &u));
        }
    }
}

fn weight_groups(tm: &TruncatedModule) -> Vec<Vec<usize>> {
    let mut groups: Vec<(QScalar, Vec<usize>)> = Vec::new();
    for i in 0..tm.dim() {
        match groups.iter_mut().find(|(w, _)| w == tm.weight(i)) {
            Some((_, members)) => members.push(i),
            None => groups.push((tm.weight(i).clone(), vec![i])),
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}

/// Weight vectors killed by the raising generator (`e` for highest, `f`
/// for lowest), layer by layer: each new vector is singular modulo the
/// submodule generated by the earlier ones.
pub fn find_singular_vectors(tm: &TruncatedModule, kind: Orientation) -> Vec<SingularVector> {
    let g = kind.raising();
    let matrix = tm.matrix(g);
    let leaks = tm.leaks(g);
    let dim = tm.dim();
    let mut found = Vec::new();
    let mut sub = Subspace::new(dim);
    'search: loop {
        for group in weight_groups(tm) {
            let cols: Vec<usize> = group.into_iter().filter(|j| !leaks.contains(j)).collect();
            if cols.is_empty() {
                continue;
            }
            let images: Vec<Vector> = cols.iter().map(|&j| sub.reduce(&column(matrix, j))).collect();
            let m: Matrix = (0..dim).map(|i| images.iter().map(|col| col[i].clone()).collect()).collect();
            for kv in kernel(&m, cols.len()) {
                let mut v = linalg::zero_vector(dim);
                for (c, &j) in kv.iter().zip(&cols) {
                    v[j] = c.clone();
                }
                if !sub.contains(&v) {
                    found.push(SingularVector {
                        weight: tm.weight(cols[0]).clone(),
                        rendered: tm.render_vector(&v),
                        coordinates: v.clone(),
                    });
                    extend_submodule(tm, &mut sub, &v);
                    continue 'search;
                }
            }
        }
        return found;
    }
}

/// Dimension of the kernel of the raising generator on the non-leaking
/// part of the window.
pub fn singular_space_dim(tm: &TruncatedModule, kind: Orientation) -> usize {
    let g = kind.raising();
    let cols: Vec<usize> = (0..tm.dim()).filter(|j| !tm.leaks(g).contains(j)).collect();
    let m: Matrix = tm.matrix(g).iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
    kernel(&m, cols.len()).len()
}

/// The quotient window, on the basis vectors that are not pivots of `sub`.
pub fn quotient(tm: &TruncatedModule, sub: &Subspace) -> TruncatedModule {
    let pivots: BTreeSet<usize> = sub.pivots().into_iter().collect();
    let keep: Vec<usize> = (0..tm.dim()).filter(|i| !pivots.contains(i)).collect();
    let n = keep.len();
    let project = |m: &Matrix| -> Matrix {
        let mut out = zeros(n, n);
        for (b, &j) in keep.iter().enumerate() {
            let col = sub.reduce(&column(m, j));
            for (a, &i) in keep.iter().enumerate() {
                out[a][b] = col[i].clone();
            }
        }
        out
    };
    let remap = |leaks: &BTreeSet<usize>| -> BTreeSet<usize> {
        keep.iter().enumerate().filter(|(_, j)| leaks.contains(j)).map(|(b, _)| b).collect()
    };
    TruncatedModule {
        description: format!("{} / submodule of dim {}", tm.description, sub.rank()),
        labels: keep.iter().map(|&i| tm.labels[i].clone()).collect(),
        vectors: tm.vectors.as_ref().map(|vs| keep.iter().map(|&i| vs[i].clone()).collect()),
        k_matrix: project(&tm.k_matrix),
        e_matrix: project(&tm.e_matrix),
        f_matrix: project(&tm.f_matrix),
        leak_e: remap(&tm.leak_e),
        leak_f: remap(&tm.leak_f),
        escapes: tm.escapes.clone(),
    }
}

/// Result of comparing a window against a truncated Verma module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VermaMatch {
    pub isomorphic: bool,
    /// `v_i ↦ c_i b_i`.
    pub scalars: Vec<QScalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Looks for a diagonal rescaling identifying the first `spec.size` basis
/// vectors of `tm` (or of its quotient by `quotient_of`) with the Verma
/// window.
pub fn match_verma(
    tm: &TruncatedModule,
    quotient_of: Option<&Subspace>,
    spec: &VermaSpec,
) -> Result<VermaMatch, ReprError> {
    let owned;
    let tm = match quotient_of {
        Some(sub) => {
            owned = quotient(tm, sub);
            &owned
        }
        None => tm,
    };
    let verma = verma_matrices(spec)?;
    let n = spec.size;
    if tm.dim() < n {
        return Err(ReprError::DimensionMismatch { needed: n, available: tm.dim() });
    }
    let fail = |scalars: Vec<QScalar>, msg: String| {
        Ok(VermaMatch { isomorphic: false, scalars, mismatch: Some(msg) })
    };
    let chain = spec.orientation.lowering();
    let (mm, vm) = (tm.matrix(chain), verma.matrix(chain));
    let mut c = vec![QScalar::one()];
    for i in 0..n - 1 {
        if tm.leaks(chain).contains(&i) {
            return fail(c, format!("{chain}-image of basis vector {i} leaves the window"));
        }
        let entry = &mm[i + 1][i];
        if entry.is_zero() {
            return fail(c, format!("{chain}-chain breaks at basis vector {i}"));
        }
        let next = &(&c[i] * entry) * &vm[i + 1][i].inv().expect("quantum integers are nonzero");
        c.push(next);
    }
    for g in [Generator::K, Generator::E, Generator::F] {
        let (a, b) = (tm.matrix(g), verma.matrix(g));
        for j in 0..n {
            if tm.leaks(g).contains(&j) || verma.leaks(g).contains(&j) {
                continue;
            }
            for i in 0..tm.dim() {
                let ok = if i < n {
                    &a[i][j] * &c[j] == &b[i][j] * &c[i]
                } else {
                    a[i][j].is_zero()
                };
                if !ok {
                    return fail(c, format!("{g}-entry ({i}, {j}) differs"));
                }
            }
        }
    }
    Ok(VermaMatch { isomorphic: true, scalars: c, mismatch: None })
}

/// Evidence that the finite-dimensional submodule is not a direct summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonSplitCertificate {
    pub generator: Generator,
    pub power: u32,
    #[serde(serialize_with = "display")]
    pub source: Monomial,
    #[serde(serialize_with = "display")]
    pub target: Monomial,
    /// `A(q)` with `generator^power(source) = A(q)·target`.
    pub scalar: QScalar,
    /// The image is exactly a multiple of the target monomial.
    pub exact: bool,
}

impl NonSplitCertificate {
    pub fn holds(&self) -> bool {
        self.exact && !self.scalar.is_zero()
    }
}

fn display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Computes `e^{n+1}(x^n y^{n+1})` (weights `(q, q⁻²)`),
/// `f^{n+1}(x^{n+1} y^n)` (weights `(q², q⁻¹)`), `e(x)` (weights
/// `(q⁻², q⁻¹)`, `n = 0`) or `f(y)` (weights `(q, q²)`, `n = 0`).
pub fn non_split_certificate(action: &Action, n: u32) -> Result<NonSplitCertificate, ReprError> {
    let w = &action.weights;
    let (generator, power, source, target) = if *w == WeightPair::q_powers(1, -2) {
        (Generator::E, n + 1, Monomial::new(n, n + 1), Monomial::new(n, 0))
    } else if *w == WeightPair::q_powers(2, -1) {
        (Generator::F, n + 1, Monomial::new(n + 1, n), Monomial::new(0, n))
    } else if *w == WeightPair::q_powers(-2, -1) && n == 0 {
        (Generator::E, 1, Monomial::X, Monomial::ONE)
    } else if *w == WeightPair::q_powers(1, 2) && n == 0 {
        (Generator::F, 1, Monomial::Y, Monomial::ONE)
    } else {
        return Err(ReprError::NotApplicable(format!(
            "no non-split series for weights ({}, {}) at n = {n}",
            w.alpha(),
            w.beta()
        )));
    };
    let ev = Evaluator::new(action);
    let image = ev.iterate(generator, power as usize, &QPlanePoly::monomial(QScalar::one(), source));
    let scalar = image.coeff(target);
    let exact = image.len() == usize::from(!scalar.is_zero());
    Ok(NonSplitCertificate { generator, power, source, target, scalar, exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandKind {
    /// Finite-dimensional simple module.
    Simple,
    /// Simple Verma module.
    Verma,
    /// `0 ⊂ J ⊂ V` with `J` simple finite-dimensional and `V/J` a simple
    /// Verma module, not split.
    Series,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub basis: String,
    #[serde(rename = "type")]
    pub kind: SummandKind,
    pub orientation: Orientation,
    /// Extremal weight of the summand (of `J` for a series).
    pub weight: QScalar,
    /// `None` for infinite-dimensional summands.
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub submodule_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_weight: Option<QScalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Index into the summand list; `None` for global checks.
    pub summand: Option<usize>,
    pub kind: String,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub family: SeriesFamily,
    pub cutoff: u32,
    pub window: usize,
    pub summands: Vec<Summand>,
    pub certificates: Vec<Certificate>,
    pub passed: bool,
}

impl CompositionReport {
    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for CompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "composition of {} up to cutoff {} (Verma window {}): {}",
            self.family,
            self.cutoff,
            self.window,
            if self.passed { "passed" } else { "FAILED" }
        )?;
        for (i, s) in self.summands.iter().enumerate() {
            let dim = s.dim.map_or("inf".to_string(), |d| d.to_string());
            write!(f, "  [{i}] {}: {:?}, {} weight {}, dim {dim}", s.basis, s.kind, s.orientation, s.weight)?;
            if let (Some(j), Some(w)) = (s.submodule_dim, &s.quotient_weight) {
                write!(f, ", J of dim {j}, quotient weight {w}")?;
            }
            writeln!(f)?;
        }
        let bad: Vec<_> = self.failures().collect();
        writeln!(f, "  {} certificates, {} failing", self.certificates.len(), bad.len())?;
        for c in bad {
            writeln!(f, "  FAILED {}: {}", c.kind, c.statement)?;
        }
        Ok(())
    }
}

struct ReportBuilder {
    summands: Vec<Summand>,
    certificates: Vec<Certificate>,
}

impl ReportBuilder {
    fn certify(&mut self, summand: Option<usize>, kind: &str, statement: String, value: Option<String>, holds: bool) {
        self.certificates.push(Certificate { summand, kind: kind.into(), statement, value, holds });
    }

    fn push(&mut self, s: Summand) -> usize {
        self.summands.push(s);
        self.summands.len() - 1
    }
}

/// Decomposes the quantum plane under a family's action, up to the given
/// cutoff, with every structural claim backed by an exact check.
pub fn composition_report(family: &SeriesFamily, cutoff: u32, window: usize) -> CompositionReport {
    let action = build(family);
    let mut b = ReportBuilder { summands: Vec::new(), certificates: Vec::new() };
    match family.tag() {
        FamilyTag::Trivial => report_trivial(&action, cutoff, &mut b),
        FamilyTag::Standard => report_standard(&action, cutoff, &mut b),
        FamilyTag::EB0 => report_line_series(&action, cutoff, window, Orientation::Highest, &mut b),
        FamilyTag::FC0 => report_line_series(&action, cutoff, window, Orientation::Lowest, &mut b),
        FamilyTag::EA0 => report_generated(&action, cutoff, window, Orientation::Highest, &mut b),
        FamilyTag::FD0 => report_generated(&action, cutoff, window, Orientation::Lowest, &mut b),
    }
    let passed = b.certificates.iter().all(|c| c.holds);
    CompositionReport {
        family: family.clone(),
        cutoff,
        window,
        summands: b.summands,
        certificates: b.certificates,
        passed,
    }
}

/// Checks that the monomial slices are invariant and partition all
/// monomials of degree `<= cutoff`.
fn certify_partition(slices: &[(usize, &TruncatedModule)], cutoff: u32, b: &mut ReportBuilder) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut overlap = false;
    for (idx, tm) in slices {
        b.certify(
            Some(*idx),
            "invariance",
            format!("{} is closed under e and f", tm.description),
            (!tm.escapes.is_empty()).then(|| tm.escapes.join("; ")),
            tm.is_invariant(),
        );
        for label in &tm.labels {
            overlap |= seen.insert(label.clone(), *idx).is_some();
        }
    }
    let missing: Vec<String> = Monomial::up_to_degree(cutoff)
        .into_iter()
        .map(|m| m.to_string())
        .filter(|m| !seen.contains_key(m))
        .collect();
    b.certify(
        None,
        "partition",
        format!("summand bases are disjoint and cover every monomial of degree <= {cutoff}"),
        (!missing.is_empty()).then(|| format!("missing {}", missing.join(", "))),
        !overlap && missing.is_empty(),
    );
}

fn report_trivial(action: &Action, cutoff: u32, b: &mut ReportBuilder) {
    let mut slices = Vec::new();
    for mono in Monomial::up_to_degree(cutoff) {
        let tm = slice(action, &BasisDescription::SingleMonomial(mono.m, mono.n), 1).expect("monomial slice");
        let idx = b.push(Summand {
            basis: tm.description.clone(),
            kind: SummandKind::Simple,
            orientation: Orientation::Highest,
            weight: tm.weight(0).clone(),
            dim: Some(1),
            submodule_dim: None,
            quotient_weight: None,
        });
        let zero = is_zero(&tm.e_matrix[0]) && is_zero(&tm.f_matrix[0]) && tm.leak_e.is_empty() && tm.leak_f.is_empty();
        b.certify(Some(idx), "one_dimensional", format!("e and f vanish on {mono}"), None, zero);
        slices.push((idx, tm));
    }
    let refs: Vec<(usize, &TruncatedModule)> = slices.iter().map(|(i, t)| (*i, t)).collect();
    certify_partition(&refs, cutoff, b);
}

fn report_standard(action: &Action, cutoff: u32, b: &mut ReportBuilder) {
    let mut slices = Vec::new();
    for n in 0..=cutoff {
        let tm = slice(action, &BasisDescription::Homogeneous(n), n).expect("monomial slice");
        let top = QScalar::q_pow(i64::from(n));
        let idx = b.push(Summand {
            basis: tm.description.clone(),
            kind: SummandKind::Simple,
            orientation: Orientation::Highest,
            weight: top.clone(),
            dim: Some(tm.dim()),
            submodule_dim: None,
            quotient_weight: None,
        });
        let sv = find_singular_vectors(&tm, Orientation::Highest);
        let kernel_dim = singular_space_dim(&tm, Orientation::Highest);
        let generated = sv.first().map_or(0, |v| generated_submodule(&tm, &v.coordinates).rank());
        let ok = kernel_dim == 1
            && sv.len() == 1
            && sv[0].weight == top
            && sv[0].coordinates == unit_vector(tm.dim(), 0)
            && generated == tm.dim()
            && tm.dim() == n as usize + 1;
        b.certify(
            Some(idx),
            "simple",
            format!("x^{n} spans the e-kernel, has weight q^{n} and generates all {} dimensions", n + 1),
            sv.first().map(|v| v.rendered.clone()),
            ok,
        );
        slices.push((idx, tm));
    }
    let refs: Vec<(usize, &TruncatedModule)> = slices.iter().map(|(i, t)| (*i, t)).collect();
    certify_partition(&refs, cutoff, b);
}

fn fmt_monomial(m: u32, n: u32) -> String {
    Monomial::new(m, n).to_string()
}

/// EB0 (highest) and FC0 (lowest): `0 ⊂ J_n ⊂ V_n` on monomial lines.
fn report_line_series(action: &Action, cutoff: u32, window: usize, o: Orientation, b: &mut ReportBuilder) {
    let mut slices = Vec::new();
    let raise = o.raising();
    let lower = o.lowering();
    for n in 0..=cutoff {
        let reach = (cutoff - n).max(n + window as u32);
        let (desc, extremal, next_gen) = match o {
            Orientation::Highest => (BasisDescription::XPowerTimesYPoly(n), fmt_monomial(n, 0), fmt_monomial(n, n + 1)),
            Orientation::Lowest => (BasisDescription::YPowerTimesXPoly(n), fmt_monomial(0, n), fmt_monomial(n + 1, n)),
        };
        let tm = slice(action, &desc, reach).expect("monomial slice");
        let nn = i64::from(n);
        // J_n has extremal weight q^{±n}, the quotient q^{∓(n+2)}.
        let (top, quotient_weight) = match o {
            Orientation::Highest => (QScalar::q_pow(nn), QScalar::q_pow(-nn - 2)),
            Orientation::Lowest => (QScalar::q_pow(-nn), QScalar::q_pow(nn + 2)),
        };
        let sv = find_singular_vectors(&tm, o);
        let j_dim = sv.first().map_or(0, |v| generated_submodule(&tm, &v.coordinates).rank());
        let idx = b.push(Summand {
            basis: tm.description.clone(),
            kind: SummandKind::Series,
            orientation: o,
            weight: top.clone(),
            dim: None,
            submodule_dim: Some(j_dim),
            quotient_weight: Some(quotient_weight.clone()),
        });
        let k = n as usize;
        let sv_ok = sv.len() == 2
            && sv[0].coordinates == unit_vector(tm.dim(), 0)
            && sv[0].weight == top
            && sv[1].coordinates.iter().enumerate().all(|(i, c)| c.is_zero() == (i != k + 1))
            && sv[1].weight == quotient_weight;
        b.certify(
            Some(idx),
            "singular_vectors",
            format!("{raise}-singular vectors are {extremal} and {next_gen} modulo J"),
            Some(sv.iter().map(|v| format!("{} (weight {})", v.rendered, v.weight)).collect::<Vec<_>>().join(", ")),
            sv_ok,
        );
        let kernel_dim = singular_space_dim(&tm, o);
        b.certify(
            Some(idx),
            "simple_submodule",
            format!("J_{n} has dimension {} and a one-dimensional {raise}-kernel", n + 1),
            Some(j_dim.to_string()),
            j_dim == k + 1 && kernel_dim == 1,
        );
        let last = fmt_monomial(n, n);
        let annihilated = !tm.leaks(lower).contains(&k) && is_zero(&column(tm.matrix(lower), k));
        b.certify(Some(idx), "annihilation", format!("{lower}({last}) = 0"), None, annihilated);
        match non_split_certificate(action, n) {
            Ok(cert) => b.certify(
                Some(idx),
                "non_split",
                format!("{}^{}({}) = A(q)*{}", cert.generator, cert.power, cert.source, cert.target),
                Some(cert.scalar.to_string()),
                cert.holds(),
            ),
            Err(e) => b.certify(Some(idx), "non_split", e.to_string(), None, false),
        }
        let j = sv.first().map_or_else(|| Subspace::new(tm.dim()), |v| generated_submodule(&tm, &v.coordinates));
        certify_quotient(&tm, &j, quotient_weight, o, window, idx, b);
        slices.push((idx, tm));
    }
    let refs: Vec<(usize, &TruncatedModule)> = slices.iter().map(|(i, t)| (*i, t)).collect();
    certify_partition(&refs, cutoff, b);
}

fn certify_quotient(
    tm: &TruncatedModule,
    sub: &Subspace,
    lambda: QScalar,
    o: Orientation,
    window: usize,
    idx: usize,
    b: &mut ReportBuilder,
) {
    let spec = VermaSpec::new(lambda.clone(), o, window).expect("valid spec");
    let statement = format!("quotient matches the {o} weight Verma module V({lambda}) on {window} vectors");
    match match_verma(tm, Some(sub), &spec) {
        Ok(m) => b.certify(Some(idx), "verma_match", statement, m.mismatch.clone(), m.isomorphic),
        Err(e) => b.certify(Some(idx), "verma_match", statement, Some(e.to_string()), false),
    }
    let q = quotient(tm, sub);
    let simple = find_singular_vectors(&q, o).len() == 1;
    b.certify(
        Some(idx),
        "simple_quotient",
        "the quotient window has a single singular vector".into(),
        None,
        simple,
    );
}

/// EA0 (highest) and FD0 (lowest): `V_n = U·y^n` (resp. `U·x^n`) for
/// `n >= 1`, and `V_0 = U·x` (resp. `U·y`) containing `ℂ1`.
fn report_generated(action: &Action, cutoff: u32, window: usize, o: Orientation, b: &mut ReportBuilder) {
    let top_n = (cutoff / 2).max(1);
    let ev = Evaluator::new(action);
    let mut all_vectors: Vec<QPlanePoly> = Vec::new();
    let power = |n: u32| match o {
        Orientation::Highest => QPlanePoly::monomial(QScalar::one(), Monomial::new(0, n)),
        Orientation::Lowest => QPlanePoly::monomial(QScalar::one(), Monomial::new(n, 0)),
    };
    let sign: i64 = if o == Orientation::Highest { -1 } else { 1 };
    for n in 1..=top_n {
        let generator = power(n);
        let desc = BasisDescription::Generated { generator: generator.clone(), orientation: o };
        let tm = slice(action, &desc, window as u32).expect("generator is a weight vector");
        let lambda = QScalar::q_pow(sign * i64::from(n));
        let idx = b.push(Summand {
            basis: tm.description.clone(),
            kind: SummandKind::Verma,
            orientation: o,
            weight: lambda.clone(),
            dim: None,
            submodule_dim: None,
            quotient_weight: None,
        });
        let killed = ev.on_poly(o.raising(), &generator).is_zero();
        b.certify(Some(idx), "extremal", format!("{}({generator}) = 0", o.raising()), None, killed);
        let spec = VermaSpec::new(lambda.clone(), o, window).expect("valid spec");
        let statement = format!("U*({generator}) matches V({lambda}) on {window} vectors");
        match match_verma(&tm, None, &spec) {
            Ok(m) => b.certify(Some(idx), "verma_match", statement, m.mismatch.clone(), m.isomorphic),
            Err(e) => b.certify(Some(idx), "verma_match", statement, Some(e.to_string()), false),
        }
        let sv = find_singular_vectors(&tm, o);
        b.certify(Some(idx), "simple", "the window has a single singular vector".into(), None, sv.len() == 1);
        all_vectors.extend(tm.vectors.clone().unwrap_or_default());
    }

    // V_0
    let generator = match o {
        Orientation::Highest => QPlanePoly::x(),
        Orientation::Lowest => QPlanePoly::y(),
    };
    let desc = BasisDescription::Generated { generator: generator.clone(), orientation: o };
    let tm = slice(action, &desc, window as u32).expect("generator is a weight vector");
    let quotient_weight = QScalar::q_pow(2 * sign);
    let sv = find_singular_vectors(&tm, o);
    let j = sv.first().map_or_else(|| Subspace::new(tm.dim()), |v| generated_submodule(&tm, &v.coordinates));
    let idx = b.push(Summand {
        basis: tm.description.clone(),
        kind: SummandKind::Series,
        orientation: o,
        weight: QScalar::one(),
        dim: None,
        submodule_dim: Some(j.rank()),
        quotient_weight: Some(quotient_weight.clone()),
    });
    let sv_ok = sv.len() == 2
        && tm.vectors.as_ref().is_some_and(|vs| {
            let mut p = QPlanePoly::zero();
            for (c, v) in sv[0].coordinates.iter().zip(vs) {
                p.add_scaled(v, c);
            }
            p.as_constant().is_some_and(|c| !c.is_zero())
        })
        && sv[0].weight.is_one()
        && sv[1].weight == quotient_weight;
    b.certify(
        Some(idx),
        "singular_vectors",
        format!("{}-singular vectors are 1 and {generator} modulo C*1", o.raising()),
        Some(sv.iter().map(|v| format!("{} (weight {})", v.rendered, v.weight)).collect::<Vec<_>>().join(", ")),
        sv_ok,
    );
    b.certify(Some(idx), "simple_submodule", "J_0 = C*1".into(), Some(j.rank().to_string()), j.rank() == 1);
    match non_split_certificate(action, 0) {
        Ok(cert) => b.certify(
            Some(idx),
            "non_split",
            format!("{}({}) = A(q)*{}", cert.generator, cert.source, cert.target),
            Some(cert.scalar.to_string()),
            cert.holds(),
        ),
        Err(e) => b.certify(Some(idx), "non_split", e.to_string(), None, false),
    }
    certify_quotient(&tm, &j, quotient_weight, o, window, idx, b);
    all_vectors.extend(tm.vectors.clone().unwrap_or_default());

    certify_direct_sum(&all_vectors, top_n, b);
}

/// The generated summands are independent and, filtering by lowest
/// degree, reach every monomial of degree `<= degree`.
fn certify_direct_sum(vectors: &[QPlanePoly], degree: u32, b: &mut ReportBuilder) {
    let mut span = PolySpan::new(vectors.len());
    let independent = vectors.iter().enumerate().all(|(i, v)| span.insert(i, v));
    let pivots: BTreeSet<Monomial> = span.rows.iter().map(|(p, _, _)| *p).collect();
    let missing: Vec<String> = Monomial::up_to_degree(degree)
        .into_iter()
        .filter(|m| !pivots.contains(m))
        .map(|m| m.to_string())
        .collect();
    b.certify(
        None,
        "direct_sum",
        format!(
            "the {} summand basis vectors are independent and reach every monomial of degree <= {degree}",
            vectors.len()
        ),
        (!missing.is_empty()).then(|| format!("missing {}", missing.join(", "))),
        independent && missing.is_empty(),
    );
}
