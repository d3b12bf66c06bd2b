//! The two-point function `F(a, b; x, y) = G / (x^{2h} y^{2h} (x−y)^{2h})`
//! of two weight-h primaries, its two expansions, and the linear systems
//! tying it to Casimir zero modes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::factor::rational_roots_of;
use crate::algebra::laurent::{laurent_expand, LaurentSeries};
use crate::algebra::linear::{row_reduce, EchelonForm};
use crate::algebra::rational::{format_rational, int, BigRational};
use crate::algebra::{MultiPoly, RatFunc};
use crate::casimir::{casimir_zero_mode_unit, dimension_symbol, solve_casimir, zero_mode_eigenvalue};
use crate::error::{Error, Result};
use crate::verma::{pairing, PartitionWord, CHARGE};

/// Expansion parameter about `x = y`: `t = (x − y)/y`.
pub const CASIMIR_PARAM: &str = "t";
/// Expansion parameter about `x = ∞`: `w = −y/(x − y)`.
pub const MODE_PARAM: &str = "w";

/// `G = Σ_j g_j (xy)^{2h−j} (x−y)^{2j}`, normalized by `⟨a, b⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GAnsatz {
    pub weight: i64,
    pub coeffs: Vec<RatFunc>,
}

impl GAnsatz {
    pub fn new(weight: i64, coeffs: Vec<RatFunc>) -> Self {
        assert_eq!(coeffs.len() as i64, 2 * weight + 1, "G has 2h + 1 coefficients");
        GAnsatz { weight, coeffs }
    }

    /// The ansatz with coefficient symbols `g0 … g{2h}`.
    pub fn symbolic(weight: i64) -> Self {
        Self::new(weight, (0..=2 * weight).map(|j| RatFunc::var(&format!("g{j}"))).collect())
    }

    /// The single basis element `(xy)^{2h−j} (x−y)^{2j}`.
    pub fn basis(weight: i64, j: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(); 2 * weight as usize + 1];
        coeffs[j] = RatFunc::one();
        Self::new(weight, coeffs)
    }

    /// `G` as a polynomial in `x, y` over the coefficient field.
    pub fn numerator(&self) -> RatFunc {
        let x = RatFunc::var("x");
        let y = RatFunc::var("y");
        let xy = &x * &y;
        let diff = &x - &y;
        let two_h = 2 * self.weight as i32;
        self.coeffs.iter().enumerate().fold(RatFunc::zero(), |acc, (j, g)| {
            let j = j as i32;
            &acc + &(g * &(&xy.pow(two_h - j) * &diff.pow(2 * j)))
        })
    }

    /// `F(x, y) = G / (x^{2h} y^{2h} (x−y)^{2h})`.
    pub fn function(&self) -> RatFunc {
        let x = RatFunc::var("x");
        let y = RatFunc::var("y");
        let two_h = 2 * self.weight as i32;
        let den = &(&x * &y).pow(two_h) * &(&x - &y).pow(two_h);
        &self.numerator() / &den
    }

    pub fn evaluate(&self, name: &str, value: &BigRational) -> Option<GAnsatz> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval(name, value))
            .collect::<Option<Vec<_>>>()?;
        Some(GAnsatz::new(self.weight, coeffs))
    }
}

impl fmt::Display for GAnsatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let two_h = 2 * self.weight;
        let mut first = true;
        for (j, g) in self.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({g})*(x*y)^{}*(x - y)^{}", two_h - j as i64, 2 * j)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expansion about `x = y` with `y = 1`: `t^{−2h} (c₀ + c₁ t + …)` through
/// `c_order`.
pub fn expansion_casimir_side(g: &GAnsatz, order: u32) -> LaurentSeries {
    let t = RatFunc::var(CASIMIR_PARAM);
    let f = g
        .function()
        .substitute("x", &(&RatFunc::one() + &t))
        .substitute("y", &RatFunc::one());
    laurent_expand(&f, CASIMIR_PARAM, order as i64 - 2 * g.weight)
}

/// Expansion about `x = ∞` with `y = 1`: `e₀ + e₁ w + …` through `e_order`.
pub fn expansion_mode_side(g: &GAnsatz, order: u32) -> LaurentSeries {
    let w = RatFunc::var(MODE_PARAM);
    // w = −1/(x − 1) at y = 1
    let x = &(&w - &RatFunc::one()) / &w;
    let f = g.function().substitute("x", &x).substitute("y", &RatFunc::one());
    laurent_expand(&f, MODE_PARAM, order as i64)
}

/// Casimir-side coefficient `c_n` of a series from [`expansion_casimir_side`].
pub fn casimir_coefficient(series: &LaurentSeries, weight: i64, n: u32) -> RatFunc {
    series.coefficient(n as i64 - 2 * weight)
}

fn check_weight(h: i64) -> Result<()> {
    if (1..=3).contains(&h) {
        Ok(())
    } else {
        Err(Error::UnsupportedWeight(h.to_string()))
    }
}

/// Known mode-side coefficients `(m, e_m)`, normalized by `⟨a, b⟩`.
pub fn mode_side_data(h: i64) -> Result<Vec<(u32, BigRational)>> {
    check_weight(h)?;
    let lead = if h % 2 == 0 { int(1) } else { int(-1) };
    Ok(if h == 1 {
        vec![(0, lead)]
    } else {
        vec![(0, lead), (1, int(0))]
    })
}

/// Where an equation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "side", rename_all = "snake_case")]
pub enum Provenance {
    Casimir { level: u32 },
    Mode { order: u32 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Casimir { level } => write!(f, "casimir level {level}"),
            Provenance::Mode { order } => write!(f, "mode order {order}"),
        }
    }
}

/// `Σ_j coeffs[j] g_j + dim_coeff · d_h = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub provenance: Provenance,
    pub coeffs: Vec<RatFunc>,
    pub dim_coeff: RatFunc,
    pub rhs: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintSystem {
    pub weight: i64,
    pub max_level: u32,
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    /// Reduces the `g` columns twice, once for the constant right-hand side
    /// and once for the `d_h` column; the pivots agree since they depend only
    /// on the coefficient matrix.
    pub fn reduce(&self) -> (EchelonForm, EchelonForm) {
        let a: Vec<Vec<RatFunc>> = self.equations.iter().map(|e| e.coeffs.clone()).collect();
        let b0: Vec<RatFunc> = self.equations.iter().map(|e| e.rhs.clone()).collect();
        let b1: Vec<RatFunc> = self.equations.iter().map(|e| -e.dim_coeff.clone()).collect();
        (row_reduce(&a, &b0), row_reduce(&a, &b1))
    }

    pub fn provenance(&self, row: usize) -> Provenance {
        self.equations[row].provenance
    }

    /// `g_j` as affine functions of `d_h`, or the reason there is no unique
    /// solution.
    pub fn solve(&self) -> Result<Vec<Affine>> {
        let h = self.weight;
        let (e0, e1) = self.reduce();
        if !e0.free.is_empty() {
            let names: Vec<&str> = e0.free.iter().map(|&j| self.unknowns[j].as_str()).collect();
            return Err(Error::InconsistentSystem(format!(
                "weight {h}: coefficients {} undetermined by levels <= {}",
                names.join(", "),
                self.max_level
            )));
        }
        let residuals: Vec<String> = e0
            .residuals()
            .into_iter()
            .zip(e1.residuals())
            .filter(|((_, a), (_, b))| !a.is_zero() || !b.is_zero())
            .map(|((i, a), (_, b))| {
                let r = Affine::new(a, b);
                format!("{}: {}", self.provenance(i), r.to_ratfunc(&dimension_symbol(h)))
            })
            .collect();
        if !residuals.is_empty() {
            return Err(Error::InconsistentSystem(format!(
                "weight {h}: {}",
                residuals.join("; ")
            )));
        }
        let n = self.unknowns.len() - 1;
        Ok((0..n)
            .map(|r| Affine::new(e0.rows[r][n].clone(), e1.rows[r][n].clone()))
            .collect())
    }
}

/// `constant + slope · d_h` with both parts functions of `C` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: RatFunc,
    pub slope: RatFunc,
}

impl Affine {
    pub fn new(constant: RatFunc, slope: RatFunc) -> Self {
        Affine { constant, slope }
    }

    pub fn zero() -> Self {
        Affine::new(RatFunc::zero(), RatFunc::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    pub fn add(&self, other: &Affine) -> Affine {
        Affine::new(&self.constant + &other.constant, &self.slope + &other.slope)
    }

    pub fn scale(&self, c: &RatFunc) -> Affine {
        Affine::new(&self.constant * c, &self.slope * c)
    }

    /// Value at `d_h = d`.
    pub fn at(&self, d: &RatFunc) -> RatFunc {
        &self.constant + &(&self.slope * d)
    }

    /// Numerator and denominator with the denominator free of `d_h`.
    pub fn to_parts(&self, symbol: &str) -> (MultiPoly, MultiPoly) {
        let (cn, cd) = (self.constant.num(), self.constant.den());
        let (sn, sd) = (self.slope.num(), self.slope.den());
        let g = cd.gcd(sd);
        let l = &cd.exact_div(&g).expect("gcd divides") * sd;
        let a = cn * &l.exact_div(cd).expect("lcm");
        let b = sn * &l.exact_div(sd).expect("lcm");
        let common = l.gcd(&a).gcd(&b);
        let (a, b, l) = if common.is_constant() {
            (a, b, l)
        } else {
            (
                a.exact_div(&common).expect("common factor"),
                b.exact_div(&common).expect("common factor"),
                l.exact_div(&common).expect("common factor"),
            )
        };
        (&a + &(&b * &MultiPoly::var(symbol)), l)
    }

    pub fn to_ratfunc(&self, symbol: &str) -> RatFunc {
        let (n, d) = self.to_parts(symbol);
        if n.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::from_coprime(n, d)
    }
}

/// Coefficients of each basis element of `G` in `c_0 … c_max`.
fn casimir_basis_rows(h: i64, max: u32) -> Vec<Vec<RatFunc>> {
    let columns: Vec<LaurentSeries> = (0..=2 * h as usize)
        .map(|j| expansion_casimir_side(&GAnsatz::basis(h, j), max))
        .collect();
    (0..=max)
        .map(|n| columns.iter().map(|s| casimir_coefficient(s, h, n)).collect())
        .collect()
}

/// Coefficients of each basis element of `G` in `e_0 … e_max`.
fn mode_basis_rows(h: i64, max: u32) -> Vec<Vec<RatFunc>> {
    let columns: Vec<LaurentSeries> = (0..=2 * h as usize)
        .map(|j| expansion_mode_side(&GAnsatz::basis(h, j), max))
        .collect();
    (0..=max)
        .map(|m| columns.iter().map(|s| s.coefficient(m as i64)).collect())
        .collect()
}

/// Casimir-side equations `c_n = ⟨a, λ₀⁽ⁿ⁾ b⟩` for `n ≤ max_level`, then the
/// mode-side data.
pub fn assemble_system(h: i64, max_level: u32) -> Result<ConstraintSystem> {
    check_weight(h)?;
    let weight = BigRational::from_integer(h.into());
    let mut equations = Vec::new();
    for (n, row) in casimir_basis_rows(h, max_level).into_iter().enumerate() {
        let kappa = casimir_zero_mode_unit(&weight, n as u32)?;
        equations.push(Equation {
            provenance: Provenance::Casimir { level: n as u32 },
            coeffs: row,
            dim_coeff: -kappa,
            rhs: RatFunc::zero(),
        });
    }
    let data = mode_side_data(h)?;
    let max_order = data.iter().map(|(m, _)| *m).max().unwrap_or(0);
    let rows = mode_basis_rows(h, max_order);
    for (m, value) in data {
        equations.push(Equation {
            provenance: Provenance::Mode { order: m },
            coeffs: rows[m as usize].clone(),
            dim_coeff: RatFunc::zero(),
            rhs: RatFunc::constant(value),
        });
    }
    let mut unknowns: Vec<String> = (0..=2 * h).map(|j| format!("g{j}")).collect();
    unknowns.push(dimension_symbol(h));
    Ok(ConstraintSystem {
        weight: h,
        max_level,
        unknowns,
        equations,
    })
}

/// Highest Casimir level needed to fix `G` with `d_h` left free.
pub fn determining_level(h: i64) -> u32 {
    match h {
        1 => 2,
        2 => 4,
        _ => 8,
    }
}

/// Level whose Casimir equation eliminates `d_h`.
pub fn eliminating_level(h: i64) -> u32 {
    match h {
        1 => 4,
        2 => 6,
        _ => 10,
    }
}

fn solved_cache() -> &'static RwLock<HashMap<i64, Arc<Vec<Affine>>>> {
    static CACHE: OnceLock<RwLock<HashMap<i64, Arc<Vec<Affine>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of `G` as affine functions of `d_h`, fixed by the
/// determining equations.
pub fn solve_affine(h: i64) -> Result<Arc<Vec<Affine>>> {
    check_weight(h)?;
    if let Some(g) = solved_cache().read().unwrap().get(&h) {
        return Ok(g.clone());
    }
    let g = Arc::new(assemble_system(h, determining_level(h))?.solve()?);
    Ok(solved_cache().write().unwrap().entry(h).or_insert(g).clone())
}

/// `G` with `d_h` free.
pub fn solve_ansatz(h: i64) -> Result<GAnsatz> {
    let sym = dimension_symbol(h);
    Ok(GAnsatz::new(
        h,
        solve_affine(h)?.iter().map(|a| a.to_ratfunc(&sym)).collect(),
    ))
}

/// `c_level(G) − ⟨a, λ₀^(level) b⟩` for the solved `G`.
pub fn level_residual_affine(h: i64, level: u32) -> Result<Affine> {
    let g = solve_affine(h)?;
    let rows = casimir_basis_rows(h, level);
    let c = rows[level as usize]
        .iter()
        .zip(g.iter())
        .fold(Affine::zero(), |acc, (b, gj)| acc.add(&gj.scale(b)));
    let weight = BigRational::from_integer(h.into());
    let kappa = casimir_zero_mode_unit(&weight, level)?;
    Ok(Affine::new(c.constant, &c.slope - &kappa))
}

/// [`level_residual_affine`] as a rational function of `C` and `d_h`.
pub fn level_residual(h: i64, level: u32) -> Result<RatFunc> {
    Ok(level_residual_affine(h, level)?.to_ratfunc(&dimension_symbol(h)))
}

/// The polynomial condition on `(C, d_h)` imposed by the Casimir equation
/// at `level` once `G` is fixed; zero when the level adds nothing.
pub fn consistency_constraint(h: i64, level: u32) -> Result<MultiPoly> {
    check_weight(h)?;
    if level <= determining_level(h) {
        return Err(Error::InvalidArgument(format!(
            "level {level} does not exceed the determining level {} for weight {h}",
            determining_level(h)
        )));
    }
    let (num, _) = level_residual_affine(h, level)?.to_parts(&dimension_symbol(h));
    Ok(if num.is_zero() { num } else { num.primitive() })
}

/// A closed form produced by a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedForm {
    pub name: String,
    pub value: DerivedValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedValue {
    Function(RatFunc),
    Ansatz(GAnsatz),
}

impl DerivedForm {
    pub fn function(&self) -> Option<&RatFunc> {
        match &self.value {
            DerivedValue::Function(f) => Some(f),
            DerivedValue::Ansatz(_) => None,
        }
    }

    pub fn ansatz(&self) -> Option<&GAnsatz> {
        match &self.value {
            DerivedValue::Ansatz(g) => Some(g),
            DerivedValue::Function(_) => None,
        }
    }

    pub fn export(&self) -> DerivedExport {
        match &self.value {
            DerivedValue::Function(f) => DerivedExport {
                name: self.name.clone(),
                num: Some(f.num().clone()),
                den: Some(f.den().clone()),
                coeffs: None,
            },
            DerivedValue::Ansatz(g) => DerivedExport {
                name: self.name.clone(),
                num: None,
                den: None,
                coeffs: Some(
                    g.coeffs
                        .iter()
                        .map(|c| RatioExport {
                            num: c.num().clone(),
                            den: c.den().clone(),
                        })
                        .collect(),
                ),
            },
        }
    }
}

impl fmt::Display for DerivedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            DerivedValue::Function(r) => write!(f, "{} = {}", self.name, r),
            DerivedValue::Ansatz(g) => write!(f, "{} = {}", self.name, g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioExport {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

/// JSON shape of a derived form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedExport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub num: Option<MultiPoly>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub den: Option<MultiPoly>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeffs: Option<Vec<RatioExport>>,
}

/// `K(a, b) / ⟨a, b⟩` from the weight-one expansion: the mode-side order-one
/// coefficient is `−K`.
pub fn derive_killing() -> Result<DerivedForm> {
    let g = solve_affine(1)?;
    let rows = mode_basis_rows(1, 1);
    let e1 = rows[1]
        .iter()
        .zip(g.iter())
        .fold(Affine::zero(), |acc, (m, gj)| acc.add(&gj.scale(m)));
    let k = e1.scale(&RatFunc::from_int(-1));
    Ok(DerivedForm {
        name: "killing".into(),
        value: DerivedValue::Function(k.to_ratfunc(&dimension_symbol(1))),
    })
}

/// `d_h(C)` from the eliminating Casimir level.
pub fn derive_dimension(h: i64) -> Result<DerivedForm> {
    check_weight(h)?;
    let r = level_residual_affine(h, eliminating_level(h))?;
    if r.slope.is_zero() {
        return Err(Error::InconsistentSystem(format!(
            "weight {h}: level {} does not involve {}",
            eliminating_level(h),
            dimension_symbol(h)
        )));
    }
    let value = -(&r.constant / &r.slope);
    let name = match h {
        1 => "d_of_C",
        2 => "d2_of_C",
        _ => "d3_of_C",
    };
    Ok(DerivedForm {
        name: name.into(),
        value: DerivedValue::Function(value),
    })
}

/// The weight-two `G` with `d₂` left free.
pub fn derive_g_polynomial() -> Result<DerivedForm> {
    Ok(DerivedForm {
        name: "G_polynomial".into(),
        value: DerivedValue::Ansatz(solve_ansatz(2)?),
    })
}

/// `Tr_{V⁽²⁾} o(a ∙ b) / ⟨a, b⟩` at weight two.
///
/// `a ∙ b = a_(1) b` has `ω`-component `⟨ω, a ∙ b⟩/⟨ω, ω⟩ · ω` with
/// `⟨ω, a ∙ b⟩ = ⟨a_(1) ω, b⟩ = ε(ω)⟨a, b⟩`. The trace of the zero mode of
/// the primary remainder `c` over the primaries is `⟨c, μ⁽²⁾⟩`, which vanishes
/// when `μ⁽²⁾` is a multiple of `ω`. What is left is the `ω`-component times
/// `Tr L₀ = 2 (d₂ + 1)`.
pub fn derive_trace_form() -> Result<DerivedForm> {
    let two = int(2);
    let mu2 = solve_casimir(&two, 2)?;
    if mu2.unit.terms().keys().any(|w| *w != PartitionWord::omega()) {
        return Err(Error::InconsistentSystem("level-2 Casimir is not a multiple of omega".into()));
    }
    let omega = PartitionWord::omega();
    let norm = RatFunc::from_poly(pairing(&omega, &omega));
    let eps = zero_mode_eigenvalue(&omega, &MultiPoly::constant(two.clone())).value;
    let d2 = RatFunc::var(&dimension_symbol(2));
    let dim = &d2 + &RatFunc::one();
    let trace_l0 = &dim * &RatFunc::constant(two);
    let value = &(&eps / &norm) * &trace_l0;
    Ok(DerivedForm {
        name: "trace".into(),
        value: DerivedValue::Function(value),
    })
}

/// The order-two mode-side coefficient at weight two,
/// `Tr_{V̂⁽²⁾} o(a) o(b) / ⟨a, b⟩`, as a function of `C` and `d₂`.
pub fn mode_side_trace() -> Result<RatFunc> {
    let g = solve_affine(2)?;
    let rows = mode_basis_rows(2, 2);
    let e2 = rows[2]
        .iter()
        .zip(g.iter())
        .fold(Affine::zero(), |acc, (m, gj)| acc.add(&gj.scale(m)));
    Ok(e2.to_ratfunc(&dimension_symbol(2)))
}

/// Positive rational roots in `C` of a constraint after substituting
/// `d_h = d_h(C)`, kept only where `d_h(C)` is a positive integer; `None`
/// when the constraint vanishes identically.
pub fn admissible_charges(h: i64, constraint: &MultiPoly) -> Result<Option<BTreeSet<BigRational>>> {
    let d = derive_dimension(h)?;
    let d = d.function().expect("dimension is a function");
    let parts = constraint.to_univariate(&dimension_symbol(h));
    let f = parts
        .iter()
        .rev()
        .fold(RatFunc::zero(), |acc, p| &(&acc * d) + &RatFunc::from_poly(p.clone()));
    if f.is_zero() {
        return Ok(None);
    }
    Ok(Some(
        rational_roots_of(f.num())
            .into_iter()
            .filter(|r| r > &int(0))
            .filter(|r| {
                d.eval(CHARGE, r)
                    .and_then(|v| v.constant_value())
                    .is_some_and(|v| v.is_integer() && v > int(0))
            })
            .collect(),
    ))
}

/// Surviving charges after imposing every level from just past the
/// eliminating level through `max_level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelScan {
    pub weight: i64,
    pub max_level: u32,
    pub per_level: Vec<LevelOutcome>,
    #[serde(with = "crate::algebra::rational::serde_rational_vec")]
    pub surviving: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelOutcome {
    pub level: u32,
    /// `None` when the level imposes nothing.
    pub roots: Option<Vec<String>>,
}

/// Intersects the admissible charge sets of all levels past the eliminating
/// level, starting from `candidates` if given.
pub fn scan_levels(h: i64, max_level: u32, candidates: Option<&[BigRational]>) -> Result<LevelScan> {
    let mut surviving: Option<BTreeSet<BigRational>> = candidates.map(|c| c.iter().cloned().collect());
    let mut per_level = Vec::new();
    for level in eliminating_level(h) + 1..=max_level {
        let c = consistency_constraint(h, level)?;
        let roots = admissible_charges(h, &c)?;
        if let Some(r) = &roots {
            surviving = Some(match surviving {
                None => r.clone(),
                Some(s) => s.intersection(r).cloned().collect(),
            });
        }
        per_level.push(LevelOutcome {
            level,
            roots: roots.map(|r| r.iter().map(format_rational).collect()),
        });
    }
    Ok(LevelScan {
        weight: h,
        max_level,
        per_level,
        surviving: surviving.map(|s| s.into_iter().collect()).unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_one_expansions() {
        let g = GAnsatz::symbolic(1);
        let c = expansion_casimir_side(&g, 2);
        assert_eq!(casimir_coefficient(&c, 1, 0), RatFunc::var("g0"));
        assert!(casimir_coefficient(&c, 1, 1).is_zero());
        assert_eq!(casimir_coefficient(&c, 1, 2), RatFunc::var("g1"));
        let e = expansion_mode_side(&g, 1);
        assert_eq!(e.coefficient(0), RatFunc::var("g2"));
        assert_eq!(
            e.coefficient(1),
            &RatFunc::var("g2").scale(&int(2)) - &RatFunc::var("g1")
        );
    }

    #[test]
    fn mode_side_of_pure_xy() {
        let e = expansion_mode_side(&GAnsatz::basis(1, 0), 2);
        assert!(e.coefficient(0).is_zero());
        assert!(e.coefficient(1).is_zero());
        assert_eq!(e.coefficient(2), RatFunc::one());
    }

    #[test]
    fn unsupported_weight() {
        assert!(matches!(mode_side_data(4), Err(Error::UnsupportedWeight(_))));
    }
}
