//! Test modules and separation experiments.
//!
//! A test module is a space of test polynomials in the coefficient variables
//! `a_e` of an input polynomial `f = sum a_e x^e`. Coefficient variable `i`
//! is the `i`-th monomial of the module's [`CoeffSpace`]. Modules come as
//! rank-threshold families (all `(r+1)`-minors of a measure matrix, decided by
//! exact rank), explicit spans, or products of two modules.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::EasyClass;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::{all_permutations, induced_coeff_map_on, random_invertible, CoeffSpace, GroupElement};
use crate::linalg::Matrix;
use crate::measures::{Label, Measure};
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::seed;

/// Linearly independent polynomials kept in fully reduced echelon form:
/// distinct monic leading monomials, none of which occurs in another element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    n: usize,
    field: Field,
    /// Sorted by leading monomial, descending.
    basis: Vec<Poly>,
}

impl SpanBasis {
    pub fn empty(n: usize, field: Field) -> Self {
        SpanBasis { n, field, basis: Vec::new() }
    }

    pub fn from_polys(n: usize, field: Field, polys: impl IntoIterator<Item = Poly>) -> Result<Self> {
        let mut s = Self::empty(n, field);
        for p in polys {
            s.insert(p)?;
        }
        Ok(s)
    }

    /// Number of coefficient variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    fn check(&self, p: &Poly) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: p.n() });
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field, p.field()));
        }
        Ok(())
    }

    fn reduce(&self, p: &Poly) -> Poly {
        let mut r = p.clone();
        for b in &self.basis {
            let (lead, _) = b.leading_term().expect("basis elements are nonzero");
            let c = r.coefficient(lead);
            if !c.is_zero() {
                r = &r - &b.scale(&c);
            }
        }
        r
    }

    /// Remainder of `p` modulo the span; zero iff `p` lies in it.
    pub fn remainder(&self, p: &Poly) -> Result<Poly> {
        self.check(p)?;
        Ok(self.reduce(p))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.remainder(p)?.is_zero())
    }

    /// Adds `p` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, p: Poly) -> Result<bool> {
        self.check(&p)?;
        let r = self.reduce(&p);
        let Some((lead, c)) = r.leading_term() else { return Ok(false) };
        let lead = lead.clone();
        let r = r.scale(&c.inv());
        for b in &mut self.basis {
            let c = b.coefficient(&lead);
            if !c.is_zero() {
                *b = &*b - &r.scale(&c);
            }
        }
        let pos = self.basis.partition_point(|b| b.leading_term().expect("nonzero").0 > &lead);
        self.basis.insert(pos, r);
        Ok(true)
    }

    pub fn is_subspace_of(&self, o: &SpanBasis) -> Result<bool> {
        for b in &self.basis {
            if !o.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Does every element vanish at `point`?
    pub fn vanishes_at(&self, point: &[Scalar]) -> Result<bool> {
        for b in &self.basis {
            if !b.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the first basis element that does not vanish at `point`.
    pub fn first_nonvanishing(&self, point: &[Scalar]) -> Result<Option<usize>> {
        for (i, b) in self.basis.iter().enumerate() {
            if !b.evaluate(point)?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Span of all pairwise products.
    pub fn product(&self, o: &SpanBasis) -> Result<SpanBasis> {
        if self.n != o.n || self.field != o.field {
            return Err(Error::AmbientMismatch("spans live in different rings".into()));
        }
        let mut out = Self::empty(self.n, self.field);
        for a in &self.basis {
            for b in &o.basis {
                out.insert(a.mul(b)?)?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// All `(r+1)`-minors of the measure matrix; vanishes iff rank `<= r`.
    MinorsOfMeasure { measure: Measure, r: usize },
    ExplicitSpan(SpanBasis),
    /// Span of products; vanishes iff either factor does.
    Product(Box<TestModule>, Box<TestModule>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestModule {
    space: CoeffSpace,
    kind: ModuleKind,
}

impl TestModule {
    pub fn minors(space: CoeffSpace, measure: Measure, r: usize) -> Self {
        TestModule { space, kind: ModuleKind::MinorsOfMeasure { measure, r } }
    }

    pub fn explicit(space: CoeffSpace, span: SpanBasis) -> Result<Self> {
        if span.n() != space.dim() || span.field() != space.field() {
            return Err(Error::AmbientMismatch(format!(
                "span over {} variables, coefficient space of dimension {}",
                span.n(),
                space.dim()
            )));
        }
        Ok(TestModule { space, kind: ModuleKind::ExplicitSpan(span) })
    }

    /// The zero module, which vanishes everywhere.
    pub fn empty(space: CoeffSpace) -> Self {
        let span = SpanBasis::empty(space.dim(), space.field());
        TestModule { space, kind: ModuleKind::ExplicitSpan(span) }
    }

    pub fn space(&self) -> &CoeffSpace {
        &self.space
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn vanishes_on(&self, f: &Poly) -> Result<bool> {
        self.check_input(f)?;
        self.vanishes_unchecked(f)
    }

    fn check_input(&self, f: &Poly) -> Result<()> {
        if f.n() != self.space.n() || f.field() != self.space.field() || !self.space.contains(f) {
            return Err(Error::AmbientMismatch(format!(
                "input in {} variables over {} is outside the coefficient space",
                f.n(),
                f.field()
            )));
        }
        Ok(())
    }

    fn vanishes_unchecked(&self, f: &Poly) -> Result<bool> {
        match &self.kind {
            ModuleKind::MinorsOfMeasure { measure, r } => Ok(measure.evaluate(f)? <= *r),
            ModuleKind::ExplicitSpan(span) => span.vanishes_at(&self.space.coefficients(f)?),
            ModuleKind::Product(a, b) => Ok(a.vanishes_unchecked(f)? || b.vanishes_unchecked(f)?),
        }
    }

    /// The explicit span, if every leaf is explicit.
    pub fn materialize(&self) -> Result<Option<SpanBasis>> {
        Ok(match &self.kind {
            ModuleKind::MinorsOfMeasure { .. } => None,
            ModuleKind::ExplicitSpan(s) => Some(s.clone()),
            ModuleKind::Product(a, b) => match (a.materialize()?, b.materialize()?) {
                (Some(x), Some(y)) => Some(x.product(&y)?),
                _ => None,
            },
        })
    }
}

/// The product `V·W` of two modules on the same coefficient space.
pub fn module_product(a: &TestModule, b: &TestModule) -> Result<TestModule> {
    if a.space != b.space {
        return Err(Error::AmbientMismatch("modules live on different coefficient spaces".into()));
    }
    Ok(TestModule { space: a.space.clone(), kind: ModuleKind::Product(Box::new(a.clone()), Box::new(b.clone())) })
}

impl fmt::Display for TestModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModuleKind::MinorsOfMeasure { measure: Measure::Shifted { order, shift_degree }, r } => {
                write!(f, "minors:shifted:{order},{shift_degree}:{r}")
            }
            ModuleKind::MinorsOfMeasure { measure, r } => write!(f, "minors:{}:{r}", measure.name()),
            ModuleKind::ExplicitSpan(s) if s.dim() == 0 => write!(f, "empty"),
            ModuleKind::ExplicitSpan(s) => write!(f, "span(dim={})", s.dim()),
            ModuleKind::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

/// Module description without an ambient space:
/// `minors:dim_partials:<r>`, `minors:shifted:<k>,<l>:<r>` or `empty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Minors { measure: Measure, r: usize },
    Empty,
}

impl ModuleSpec {
    pub fn build(&self, space: CoeffSpace) -> TestModule {
        match self {
            ModuleSpec::Minors { measure, r } => TestModule::minors(space, measure.clone(), *r),
            ModuleSpec::Empty => TestModule::empty(space),
        }
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad module spec {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["empty"] => Ok(ModuleSpec::Empty),
            ["minors", "dim_partials", r] => Ok(ModuleSpec::Minors { measure: Measure::dim_partials(), r: num(r)? }),
            ["minors", "shifted", kl, r] => {
                let (k, l) = kl.split_once(',').ok_or_else(bad)?;
                let measure = Measure::Shifted { order: num(k)? as u32, shift_degree: num(l)? as u32 };
                Ok(ModuleSpec::Minors { measure, r: num(r)? })
            }
            _ => Err(bad()),
        }
    }
}

/// Group used by [`group_closure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureGroup {
    /// All `n!` permutations, `n <= 8`.
    Symmetric,
    /// Random invertible matrices from `seed`, until the span is stable for
    /// [`STABLE_SAMPLES`] consecutive samples.
    SampledGl { seed: u64 },
}

pub const MAX_SYMMETRIC_CLOSURE: usize = 8;
pub const STABLE_SAMPLES: usize = 10;
pub const MAX_CLOSURE_SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub span: SpanBasis,
    /// Group elements applied.
    pub samples: usize,
    /// `"exact closure"` or `"sampled closure"`.
    pub label: &'static str,
    /// For sampled closures: whether the span stopped growing before the cap.
    pub stabilized: bool,
}

/// `span{ t∘Coeff_g : t in T, g in G }`.
pub fn group_closure(t: &SpanBasis, space: &CoeffSpace, group: ClosureGroup) -> Result<ClosureResult> {
    if t.n() != space.dim() || t.field() != space.field() {
        return Err(Error::AmbientMismatch("span does not match the coefficient space".into()));
    }
    let n = space.n();
    let field = space.field();
    let mut span = t.clone();
    match group {
        ClosureGroup::Symmetric => {
            if n > MAX_SYMMETRIC_CLOSURE {
                return Err(Error::Infeasible(format!("S_{n} is too large for exhaustive closure")));
            }
            let perms = all_permutations(n);
            for p in &perms {
                let map = induced_coeff_map_on(&GroupElement::permutation(p.clone())?, space)?;
                for b in t.basis() {
                    span.insert(map.pull_back(b)?)?;
                }
            }
            Ok(ClosureResult { span, samples: perms.len(), label: "exact closure", stabilized: true })
        }
        ClosureGroup::SampledGl { seed: master } => {
            let mut quiet = 0;
            let mut samples = 0;
            while quiet < STABLE_SAMPLES && samples < MAX_CLOSURE_SAMPLES {
                let g = random_invertible(n, field, &mut seed::trial_rng(master, samples as u64), 3);
                samples += 1;
                let map = induced_coeff_map_on(&g, space)?;
                let mut grew = false;
                for b in t.basis() {
                    grew |= span.insert(map.pull_back(b)?)?;
                }
                quiet = if grew { 0 } else { quiet + 1 };
            }
            Ok(ClosureResult { span, samples, label: "sampled closure", stabilized: quiet >= STABLE_SAMPLES })
        }
    }
}

/// Is `span` mapped into itself by `t ↦ t∘Coeff_g`?
pub fn is_fixed_by(span: &SpanBasis, space: &CoeffSpace, g: &GroupElement) -> Result<bool> {
    let map = induced_coeff_map_on(g, space)?;
    for b in span.basis() {
        if !span.contains(&map.pull_back(b)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of polynomials in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    field: Field,
    entries: Vec<Vec<Poly>>,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
}

/// Largest row or column count accepted by [`minors_explicit`].
pub const MINOR_CAP: usize = 6;

impl SymbolicMatrix {
    pub fn new(n: usize, field: Field, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        for row in &entries {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged symbolic matrix".into()));
            }
            for p in row {
                if p.n() != n {
                    return Err(Error::ArityMismatch { expected: n, got: p.n() });
                }
                if p.field() != field {
                    return Err(Error::FieldMismatch(field, p.field()));
                }
            }
        }
        let row_labels = (0..entries.len()).map(Label::Index).collect();
        let col_labels = (0..cols).map(Label::Index).collect();
        Ok(SymbolicMatrix { n, field, entries, row_labels, col_labels })
    }

    /// `rows x cols` matrix whose entries are distinct variables, row-major.
    pub fn generic(rows: usize, cols: usize, field: Field) -> Self {
        let n = rows * cols;
        let entries = (0..rows).map(|i| (0..cols).map(|j| Poly::var(n, field, i * cols + j)).collect()).collect();
        Self::new(n, field, entries).expect("consistent shape")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    /// Evaluates every entry at `point`.
    pub fn instantiate(&self, point: &[Scalar]) -> Result<Matrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(self.field, 0, 0));
        }
        Matrix::from_rows(self.field, rows)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let k = rows.len();
        let mut acc = Poly::zero(self.n, self.field);
        for p in all_permutations(k) {
            let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = Poly::one(self.n, self.field);
            for (i, &j) in p.iter().enumerate() {
                term = &term * &self.entries[rows[i]][cols[j]];
                if term.is_zero() {
                    break;
                }
            }
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    monomials_of_degree(n, k as u32)
        .into_iter()
        .filter(Monomial::is_multilinear)
        .map(|m| m.exps().iter().enumerate().filter(|(_, &e)| e == 1).map(|(i, _)| i).collect())
        .collect()
}

/// Reduced basis of the span of all `(r+1) x (r+1)` minors. Empty when
/// `r >= min(rows, cols)`.
pub fn minors_explicit(m: &SymbolicMatrix, r: usize) -> Result<SpanBasis> {
    if m.rows() > MINOR_CAP || m.cols() > MINOR_CAP {
        return Err(Error::Infeasible(format!(
            "{}x{} exceeds the explicit minor cap {MINOR_CAP}x{MINOR_CAP}",
            m.rows(),
            m.cols()
        )));
    }
    let k = r + 1;
    if k > m.rows().min(m.cols()) {
        return Ok(SpanBasis::empty(m.n, m.field));
    }
    let row_sets = subsets(m.rows(), k);
    let col_sets = subsets(m.cols(), k);
    let minors: Vec<Poly> = row_sets
        .par_iter()
        .flat_map_iter(|rs| col_sets.iter().map(move |cs| m.minor(rs, cs)))
        .collect();
    SpanBasis::from_polys(m.n, m.field, minors)
}

/// Partial-derivative matrix of the generic element `sum a_i x^{m_i}` of
/// `space`: rows are operators `∂^c` with `|c| <= max_order` (order 0
/// included), columns are monomials, entries linear in the `a_i`. All-zero
/// rows and columns are dropped.
pub fn symbolic_partials_matrix(space: &CoeffSpace, max_order: u32) -> Result<SymbolicMatrix> {
    let n = space.n();
    let field = space.field();
    let nvars = space.dim();
    let d = space.degree();
    let ops: Vec<Monomial> = (0..=max_order.min(d)).flat_map(|k| monomials_of_degree(n, k)).collect();
    let cols: Vec<Monomial> = crate::poly::monomials_up_to(n, d);
    let mut entries: Vec<Vec<Poly>> = vec![vec![Poly::zero(nvars, field); cols.len()]; ops.len()];
    for (i, basis_mon) in space.monomials().iter().enumerate() {
        let generic = Poly::monomial(n, field, basis_mon.clone(), field.one());
        for (ri, c) in ops.iter().enumerate() {
            for (m, w) in generic.derivative(c).terms() {
                let cj = cols.binary_search(m).expect("derivative stays within degree d");
                let add = Poly::monomial(nvars, field, Monomial::var(nvars, i), w.clone());
                entries[ri][cj] = &entries[ri][cj] + &add;
            }
        }
    }
    let keep_rows: Vec<usize> = (0..ops.len()).filter(|&i| entries[i].iter().any(|p| !p.is_zero())).collect();
    let keep_cols: Vec<usize> = (0..cols.len()).filter(|&j| entries.iter().any(|r| !r[j].is_zero())).collect();
    let kept = keep_rows
        .iter()
        .map(|&i| keep_cols.iter().map(|&j| entries[i][j].clone()).collect())
        .collect();
    let mut out = SymbolicMatrix::new(nvars, field, kept)?;
    out.row_labels = keep_rows.iter().map(|&i| Label::Operator(ops[i].clone())).collect();
    out.col_labels = keep_cols.iter().map(|&j| Label::Monomial(cols[j].clone())).collect();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub rank: Option<usize>,
    pub bound: Option<usize>,
    pub vanished: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub module: String,
    pub easy: String,
    pub hard: String,
    pub field: String,
    pub trials: usize,
    pub master_seed: u64,
    pub easy_vanish_count: usize,
    pub hard_nonvanish: bool,
    /// Measure rank at the hard function, for rank-threshold modules.
    pub hard_rank: Option<usize>,
    /// First non-vanishing basis element at the hard function, for explicit spans.
    pub hard_witness_index: Option<usize>,
    pub insufficient_evidence: bool,
    pub separating: bool,
    pub records: Vec<TrialRecord>,
}

impl SeparationReport {
    /// One row per trial: `trial,seed,rank,bound,vanished`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["trial", "seed", "rank", "bound", "vanished"])?;
        for r in &self.records {
            out.write_record([
                r.trial.to_string(),
                r.seed.to_string(),
                r.rank.map(|v| v.to_string()).unwrap_or_default(),
                r.bound.map(|v| v.to_string()).unwrap_or_default(),
                r.vanished.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

fn rank_and_bound(t: &TestModule, f: &Poly) -> Result<(Option<usize>, Option<usize>)> {
    Ok(match &t.kind {
        ModuleKind::MinorsOfMeasure { measure, r } => (Some(measure.evaluate(f)?), Some(*r)),
        _ => (None, None),
    })
}

/// Samples `trials` easy circuits (trial `i` from `seed::sub_seed(master_seed, i)`),
/// tests vanishing on each, and decides non-vanishing at `hard` exactly.
/// `separating` requires at least one trial.
pub fn run_separation(
    t: &TestModule,
    easy: &EasyClass,
    hard: &Poly,
    hard_label: &str,
    trials: usize,
    master_seed: u64,
) -> Result<SeparationReport> {
    let field = t.space.field();
    t.check_input(hard)?;
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = seed::sub_seed(master_seed, i as u64);
            let f = easy.sample(field, &mut seed::rng_from_seed(s))?.expand();
            if f.is_zero() {
                // the zero function lies in every coefficient space
                return Ok(TrialRecord { trial: i, seed: s, rank: Some(0), bound: None, vanished: true });
            }
            let (rank, bound) = rank_and_bound(t, &f)?;
            let vanished = t.vanishes_on(&f)?;
            Ok(TrialRecord { trial: i, seed: s, rank, bound, vanished })
        })
        .collect::<Result<_>>()?;
    let easy_vanish_count = records.iter().filter(|r| r.vanished).count();
    let hard_nonvanish = !t.vanishes_on(hard)?;
    let (hard_rank, _) = rank_and_bound(t, hard)?;
    let hard_witness_index = match &t.kind {
        ModuleKind::ExplicitSpan(s) => s.first_nonvanishing(&t.space.coefficients(hard)?)?,
        _ => None,
    };
    let insufficient_evidence = trials == 0;
    Ok(SeparationReport {
        module: t.to_string(),
        easy: easy.to_string(),
        hard: hard_label.to_string(),
        field: field.to_string(),
        trials,
        master_seed,
        easy_vanish_count,
        hard_nonvanish,
        hard_rank,
        hard_witness_index,
        insufficient_evidence,
        separating: !insufficient_evidence && easy_vanish_count == trials && hard_nonvanish,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::elementary_symmetric;

    const Q: Field = Field::Rationals;

    fn quad_space() -> CoeffSpace {
        CoeffSpace::homogeneous(2, 2, Q)
    }

    /// `b^2 - 4ac` with `a, b, c` the coefficients of `x^2, xy, y^2`.
    fn discriminant(space: &CoeffSpace) -> Poly {
        let idx = |e: [u32; 2]| space.index_of(&Monomial::new(e.to_vec())).unwrap();
        let (a, b, c) = (idx([2, 0]), idx([1, 1]), idx([0, 2]));
        let v = |i| Poly::var(3, Q, i);
        &(&v(b) * &v(b)) - &(&v(a) * &v(c)).scale(&Q.from_i64(4))
    }

    #[test]
    fn discriminant_module() {
        let space = quad_space();
        let t = TestModule::explicit(space.clone(), SpanBasis::from_polys(3, Q, [discriminant(&space)]).unwrap()).unwrap();
        assert!(t.vanishes_on(&Poly::parse(2, Q, "x1^2 + 2*x1*x2 + x2^2").unwrap()).unwrap());
        assert!(!t.vanishes_on(&Poly::parse(2, Q, "x1*x2").unwrap()).unwrap());
        assert!(matches!(t.vanishes_on(&Poly::parse(2, Q, "x1").unwrap()), Err(Error::AmbientMismatch(_))));
        let closed = group_closure(t.materialize().unwrap().as_ref().unwrap(), &space, ClosureGroup::SampledGl { seed: 3 }).unwrap();
        assert_eq!(closed.span.dim(), 1);
        assert!(closed.stabilized);
        assert_eq!(closed.label, "sampled closure");
    }

    #[test]
    fn minors_module_thresholds() {
        let t = TestModule::minors(quad_space(), Measure::dim_partials(), 3);
        assert!(t.vanishes_on(&Poly::parse(2, Q, "x1^2").unwrap()).unwrap());
        assert!(!t.vanishes_on(&Poly::parse(2, Q, "x1*x2").unwrap()).unwrap());
        assert_eq!(t.to_string(), "minors:dim_partials:3");
    }

    #[test]
    fn span_basis_is_canonical() {
        let p = |s: &str| Poly::parse(3, Q, s).unwrap();
        let a = SpanBasis::from_polys(3, Q, [p("x1 + x2"), p("x2 - x3"), p("x1 + x3")]).unwrap();
        let b = SpanBasis::from_polys(3, Q, [p("x1 + x3"), p("2*x1 + x2 + x3")]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a, b);
        assert!(a.contains(&p("3*x1 + x2 + 2*x3")).unwrap());
        assert!(!a.contains(&p("x1")).unwrap());
    }

    #[test]
    fn products() {
        let space = CoeffSpace::homogeneous(2, 1, Q);
        let a = SpanBasis::from_polys(2, Q, [Poly::var(2, Q, 0)]).unwrap();
        let b = SpanBasis::from_polys(2, Q, [Poly::var(2, Q, 1)]).unwrap();
        let prod = module_product(
            &TestModule::explicit(space.clone(), a).unwrap(),
            &TestModule::explicit(space.clone(), b).unwrap(),
        )
        .unwrap();
        let expect = SpanBasis::from_polys(2, Q, [Poly::parse(2, Q, "x1*x2").unwrap()]).unwrap();
        assert_eq!(prod.materialize().unwrap().unwrap(), expect);
        let with_zero = module_product(&prod, &TestModule::empty(space)).unwrap();
        assert!(with_zero.vanishes_on(&Poly::parse(2, Q, "x1 + x2").unwrap()).unwrap());
        assert_eq!(with_zero.materialize().unwrap().unwrap().dim(), 0);
    }

    #[test]
    fn symmetric_closure_of_a_coordinate() {
        let space = CoeffSpace::homogeneous(2, 1, Q);
        let t = SpanBasis::from_polys(2, Q, [Poly::var(2, Q, space.index_of(&Monomial::new(vec![1, 0])).unwrap())]).unwrap();
        let c = group_closure(&t, &space, ClosureGroup::Symmetric).unwrap();
        assert_eq!(c.span.dim(), 2);
        assert!(is_fixed_by(&c.span, &space, &GroupElement::permutation(vec![1, 0]).unwrap()).unwrap());
        let full = SpanBasis::from_polys(2, Q, [Poly::var(2, Q, 0), Poly::var(2, Q, 1)]).unwrap();
        assert_eq!(group_closure(&full, &space, ClosureGroup::SampledGl { seed: 1 }).unwrap().span, full);
    }

    #[test]
    fn explicit_minors() {
        let m = SymbolicMatrix::generic(2, 2, Q);
        let s = minors_explicit(&m, 1).unwrap();
        assert_eq!(s.basis(), &[Poly::parse(4, Q, "x1*x4 - x2*x3").unwrap()]);
        assert_eq!(minors_explicit(&m, 2).unwrap().dim(), 0);
        assert!(minors_explicit(&SymbolicMatrix::generic(7, 2, Q), 0).is_err());
        assert_eq!(minors_explicit(&SymbolicMatrix::generic(3, 3, Q), 1).unwrap().dim(), 9);
    }

    #[test]
    fn symbolic_partials_agree_with_rank() {
        let space = quad_space();
        let m = symbolic_partials_matrix(&space, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 5));
        let f = Poly::parse(2, Q, "x1^2 + 3*x1*x2").unwrap();
        let a = m.instantiate(&space.coefficients(&f).unwrap()).unwrap();
        let opts = crate::measures::PartialsOptions { include_order_zero: true, max_order: Some(1) };
        assert_eq!(a.rank(), crate::measures::dim_partials_with(&f, opts));
    }

    #[test]
    fn separation_small() {
        let easy: EasyClass = "depth3:4,2,1".parse().unwrap();
        let space = CoeffSpace::homogeneous(4, 2, Q);
        let t = TestModule::minors(space.clone(), Measure::dim_partials(), 4);
        let hard = elementary_symmetric(2, 4, Q).unwrap();
        let rep = run_separation(&t, &easy, &hard, "esym:2,4", 10, 1).unwrap();
        assert_eq!(rep.easy_vanish_count, 10);
        assert_eq!(rep.hard_rank, Some(6));
        assert!(rep.separating);
        let none = run_separation(&t, &easy, &hard, "esym:2,4", 0, 1).unwrap();
        assert!(none.insufficient_evidence && !none.separating);
        let empty = run_separation(&TestModule::empty(space), &easy, &hard, "esym:2,4", 5, 1).unwrap();
        assert!(!empty.separating);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("trial,seed,rank,bound,vanished\n"));
    }

    #[test]
    fn module_specs() {
        for s in ["minors:dim_partials:16", "minors:shifted:1,2:5"] {
            let spec: ModuleSpec = s.parse().unwrap();
            assert_eq!(spec.build(quad_space()).to_string(), s);
        }
        assert_eq!("empty".parse::<ModuleSpec>().unwrap(), ModuleSpec::Empty);
        assert!("minors:foo:1".parse::<ModuleSpec>().is_err());
    }
}
