//! The full verification suite run by `pseudonull verify`.

use std::fmt;
use std::str::FromStr;

use pseudonull::diffalg::{
    antiderivative, commutator, parse, rational, total_derivative, variational_derivative, AlgebraError,
    DiffPoly, Generator,
};
use pseudonull::geometry::{curvature_identity_check, lie_bracket, FrenetField, GeometryError};
use pseudonull::hierarchy::{generate_hierarchy, recursion_flow, RecursionOperator};
use pseudonull::sample::{random_evolution_field, random_p0, random_poly, PolyShape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::{corpus, round_trip};
use crate::golden::check_hierarchy;
use crate::measure;
use crate::report::{Check, Residual, VerificationReport};

pub type TorsionVariation = fn(&FrenetField) -> Result<DiffPoly, GeometryError>;

/// Inputs shared by all checks. The torsion variation is injectable so that
/// a deliberately broken formula can be shown to be caught.
#[derive(Clone, Copy)]
pub struct Context {
    pub seed: u64,
    pub torsion_variation: TorsionVariation,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            seed: 0x00C0_FFEE,
            torsion_variation: pseudonull::geometry::torsion_variation,
        }
    }
}

impl Context {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Symbolic,
    Numeric,
}

pub struct CheckDef {
    pub name: &'static str,
    pub category: Category,
    run: fn(&Context) -> Check,
}

impl CheckDef {
    pub fn run(&self, ctx: &Context) -> Check {
        (self.run)(ctx)
    }
}

/// `all`, `symbolic`, `numeric`, or any other text to select checks whose
/// name contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Category(Category),
    Name(String),
}

impl Filter {
    pub fn selects(&self, def: &CheckDef) -> bool {
        match self {
            Filter::All => true,
            Filter::Category(c) => def.category == *c,
            Filter::Name(s) => def.name.contains(s.as_str()),
        }
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "" => Err("empty filter".into()),
            "all" => Ok(Filter::All),
            "symbolic" => Ok(Filter::Category(Category::Symbolic)),
            "numeric" => Ok(Filter::Category(Category::Numeric)),
            other => Ok(Filter::Name(other.to_string())),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::All => f.write_str("all"),
            Filter::Category(Category::Symbolic) => f.write_str("symbolic"),
            Filter::Category(Category::Numeric) => f.write_str("numeric"),
            Filter::Name(s) => f.write_str(s),
        }
    }
}

pub fn checks() -> Vec<CheckDef> {
    use Category::*;
    let def = |name, category, run| CheckDef { name, category, run };
    vec![
        def("diffalg.antiderivative_inverts_derivative", Symbolic, antiderivative_inverts_derivative),
        def("diffalg.corpus_round_trip", Symbolic, corpus_round_trip),
        def("diffalg.non_derivatives_rejected", Symbolic, non_derivatives_rejected),
        def("geometry.bracket_closure", Symbolic, bracket_closure),
        def("geometry.bracket_to_commutator", Symbolic, bracket_to_commutator),
        def("geometry.curvature_identity", Symbolic, curvature_identity),
        def("geometry.jacobi", Symbolic, jacobi),
        def("hierarchy.flows_commute", Symbolic, flows_commute),
        def("hierarchy.geometric_brackets_vanish", Symbolic, geometric_brackets_vanish),
        def("hierarchy.golden_listing", Symbolic, golden_listing),
        def("hierarchy.normal_flows_match_recursion", Symbolic, normal_flows_match_recursion),
        def("hierarchy.recursion_chain_flat", Symbolic, recursion_chain_flat),
        def("numerics.burgers_gauge", Numeric, burgers_gauge),
        def("numerics.cylinder_invariants", Numeric, cylinder_invariants),
        def("numerics.filament_velocity", Numeric, filament_velocity),
        def("numerics.heat_gauge", Numeric, heat_gauge),
        def("numerics.hopf_cole", Numeric, hopf_cole),
        def("numerics.reconstruction", Numeric, reconstruction),
    ]
}

/// Runs the selected checks in parallel; the report is sorted by name.
pub fn run_verify(ctx: &Context, filter: &Filter) -> VerificationReport {
    let defs = checks();
    let (selected, skipped): (Vec<&CheckDef>, Vec<&CheckDef>) = defs.iter().partition(|d| filter.selects(d));
    let results: Vec<(String, Check)> = selected
        .par_iter()
        .map(|d| (d.name.to_string(), d.run(ctx)))
        .collect();
    VerificationReport {
        checks: results.into_iter().collect(),
        skipped: skipped.iter().map(|d| d.name.to_string()).collect(),
    }
}

fn exact(residual: Option<String>, details: impl Into<String>) -> Check {
    match residual {
        None => Check::new(true, Residual::Exact("0".into()), details),
        Some(r) => Check::new(false, Residual::Exact(r), details),
    }
}

fn tau(s: &str) -> DiffPoly {
    parse(s, Generator::Tau).expect("built-in expression parses")
}

fn evolution_fields(ctx: &Context, stream: u64, count: usize) -> Vec<FrenetField> {
    let mut rng = ctx.rng(stream);
    let shape = PolyShape::new(2, 2, 3).with_constant().with_g();
    (0..count).map(|_| random_evolution_field(&mut rng, &shape)).collect()
}

const RANDOM_PAIRS: usize = 20;

fn antiderivative_inverts_derivative(ctx: &Context) -> Check {
    let mut rng = ctx.rng(1);
    let shape = PolyShape::new(4, 4, 5).with_g();
    for _ in 0..100 {
        let q = random_p0(&mut rng, Generator::Tau, &shape);
        match antiderivative(&total_derivative(&q)) {
            Ok(back) if back == q => {}
            Ok(back) => return exact(Some(format!("{}", &back - &q)), format!("failed for q = {q}")),
            Err(e) => return Check::fail(format!("q = {q}: {e}")),
        }
    }
    exact(None, "100 random q without constant term")
}

fn non_derivatives_rejected(ctx: &Context) -> Check {
    let mut rng = ctx.rng(2);
    let shape = PolyShape::new(4, 4, 5).with_constant().with_g();
    let mut tested = 0;
    while tested < 100 {
        let p = random_poly(&mut rng, Generator::Tau, &shape);
        if variational_derivative(&p).is_zero() {
            continue;
        }
        tested += 1;
        if antiderivative(&p) != Err(AlgebraError::NotTotalDerivative) {
            return Check::fail(format!("{p} was not rejected"));
        }
    }
    exact(None, "100 random p with nonzero Euler operator")
}

fn corpus_round_trip(_: &Context) -> Check {
    let c = corpus();
    match c.iter().find_map(|s| round_trip(s).err()) {
        None => exact(None, format!("{} expressions", c.len())),
        Some(e) => Check::fail(e),
    }
}

fn bracket_closure(ctx: &Context) -> Check {
    let v = evolution_fields(ctx, 3, 2 * RANDOM_PAIRS);
    for pair in v.chunks(2) {
        let b = match lie_bracket(&pair[0], &pair[1]) {
            Ok(b) => b,
            Err(e) => return Check::fail(e.to_string()),
        };
        if !b.f().is_zero() || !b.h().is_zero() {
            return exact(Some(b.to_string()), "bracket left the evolution fields");
        }
        match lie_bracket(&pair[1], &pair[0]) {
            Ok(r) if r == -&b => {}
            _ => return Check::fail("bracket is not antisymmetric"),
        }
    }
    exact(None, format!("{RANDOM_PAIRS} random pairs"))
}

fn bracket_to_commutator(ctx: &Context) -> Check {
    let tv = ctx.torsion_variation;
    let v = evolution_fields(ctx, 4, 2 * RANDOM_PAIRS);
    for pair in v.chunks(2) {
        let run = || -> Result<DiffPoly, GeometryError> {
            let lhs = tv(&lie_bracket(&pair[0], &pair[1])?)?;
            let rhs = commutator(&tv(&pair[0])?, &tv(&pair[1])?)?;
            Ok(&lhs - &rhs)
        };
        match run() {
            Ok(r) if r.is_zero() => {}
            Ok(r) => return exact(Some(r.to_string()), format!("V1 = {}, V2 = {}", pair[0], pair[1])),
            Err(e) => return Check::fail(e.to_string()),
        }
    }
    exact(None, format!("{RANDOM_PAIRS} random pairs"))
}

fn curvature_identity(ctx: &Context) -> Check {
    let v = evolution_fields(ctx, 5, 2 * RANDOM_PAIRS);
    for pair in v.chunks(2) {
        for u in [FrenetField::tangent(), FrenetField::normal(), FrenetField::binormal()] {
            match curvature_identity_check(&pair[0], &pair[1], &u) {
                Ok(r) if r.is_zero() => {}
                Ok(r) => return exact(Some(r.to_string()), format!("U = {u}")),
                Err(e) => return Check::fail(e.to_string()),
            }
        }
    }
    exact(None, format!("{RANDOM_PAIRS} random pairs, U in T, N, B"))
}

fn jacobi(ctx: &Context) -> Check {
    let v = evolution_fields(ctx, 6, 3 * RANDOM_PAIRS);
    let br = |a: &FrenetField, b: &FrenetField| lie_bracket(a, b);
    for t in v.chunks(3) {
        let sum = || -> Result<FrenetField, GeometryError> {
            Ok(&(&br(&br(&t[0], &t[1])?, &t[2])? + &br(&br(&t[1], &t[2])?, &t[0])?) + &br(&br(&t[2], &t[0])?, &t[1])?)
        };
        match sum() {
            Ok(s) if s.is_zero() => {}
            Ok(s) => return exact(Some(s.to_string()), "Jacobi sum"),
            Err(e) => return Check::fail(e.to_string()),
        }
    }
    exact(None, format!("{RANDOM_PAIRS} random triples"))
}

fn flows_commute(_: &Context) -> Check {
    let levels = generate_hierarchy(6);
    for i in 0..levels.len() {
        for j in i + 1..levels.len() {
            match commutator(&levels[i].tau_flow, &levels[j].tau_flow) {
                Ok(c) if c.is_zero() => {}
                Ok(c) => return exact(Some(c.to_string()), format!("[V{i}, V{j}]")),
                Err(e) => return Check::fail(e.to_string()),
            }
        }
    }
    exact(None, "levels 0 to 5 pairwise")
}

fn geometric_brackets_vanish(_: &Context) -> Check {
    let levels = generate_hierarchy(5);
    for i in 0..levels.len() {
        for j in i + 1..levels.len() {
            match lie_bracket(&levels[i].field, &levels[j].field) {
                Ok(b) if b.is_zero() => {}
                Ok(b) => return exact(Some(b.to_string()), format!("[V{i}, V{j}]")),
                Err(e) => return Check::fail(e.to_string()),
            }
        }
    }
    exact(None, "levels 0 to 4 pairwise")
}

fn golden_listing(_: &Context) -> Check {
    match check_hierarchy(&generate_hierarchy(5)).first() {
        None => exact(None, "levels 0 to 4"),
        Some(m) => exact(
            Some(m.actual.clone()),
            format!("level {} {}: expected {}", m.index, m.column, m.expected),
        ),
    }
}

fn normal_flows_match_recursion(ctx: &Context) -> Check {
    let mut gs: Vec<DiffPoly> = ["t", "t1", "t^2", "t*t1", "t2 + t^3"].into_iter().map(tau).collect();
    let mut rng = ctx.rng(7);
    let shape = PolyShape::new(3, 3, 4).with_g();
    gs.extend((0..10).map(|_| random_p0(&mut rng, Generator::Tau, &shape)));
    for g in &gs {
        let run = || -> Result<DiffPoly, GeometryError> {
            let lhs = (ctx.torsion_variation)(&FrenetField::normal_multiple(g.clone()))?;
            Ok(&lhs - &recursion_flow(g)?)
        };
        match run() {
            Ok(r) if r.is_zero() => {}
            Ok(r) => return exact(Some(r.to_string()), format!("g = {g}")),
            Err(e) => return Check::fail(format!("g = {g}: {e}")),
        }
    }
    exact(None, format!("{} choices of g", gs.len()))
}

fn recursion_chain_flat(_: &Context) -> Check {
    let r = RecursionOperator::burgers();
    let zero = rational(0, 1);
    let levels = generate_hierarchy(6);
    let mut p = tau("t1");
    for level in &levels[1..] {
        p = match r.apply(&p) {
            Ok(p) => p,
            Err(e) => return Check::fail(e.to_string()),
        };
        let expected = level.tau_flow.substitute_g(&zero);
        if p != expected {
            return exact(Some((&p - &expected).to_string()), format!("level {}", level.index));
        }
    }
    exact(None, "five applications from t1 at G = 0")
}

fn numeric(run: impl FnOnce() -> Result<(bool, f64, String), pseudonull::numerics::NumericsError>) -> Check {
    match run() {
        Ok((ok, residual, details)) => Check::new(ok, Residual::Real(residual), details),
        Err(e) => Check::fail(e.to_string()),
    }
}

fn hopf_cole(_: &Context) -> Check {
    numeric(|| {
        let e1 = measure::hopf_cole_error(256, 1e-4)?;
        let e2 = measure::hopf_cole_error(512, 2.5e-5)?;
        let ratio = e1 / e2;
        Ok((
            e1 <= 5e-4 && ratio >= 3.5,
            e1,
            format!("N = 256: {e1:.3e}, N = 512: {e2:.3e}, ratio {ratio:.2}"),
        ))
    })
}

fn reconstruction(_: &Context) -> Check {
    numeric(|| {
        let coarse = [0.08, 0.04, 0.02]
            .iter()
            .map(|&h| measure::reconstruction_drift(h))
            .collect::<Result<Vec<_>, _>>()?;
        let fine = measure::reconstruction_drift(1e-3)?;
        let ratios: Vec<f64> = coarse.windows(2).map(|w| w[0] / w[1]).collect();
        Ok((
            ratios.iter().all(|&r| r >= 12.0) && fine <= 1e-8,
            fine,
            format!(
                "drift ratios {:.1}, {:.1} at h = 0.08, 0.04, 0.02; drift {fine:.3e} at h = 1e-3",
                ratios[0], ratios[1]
            ),
        ))
    })
}

fn cylinder_invariants(_: &Context) -> Check {
    numeric(|| {
        let r = measure::cylinder_residuals(1e-3)?;
        let worst = r.parallelism.max(r.ruling_offset);
        Ok((
            r.parallelism <= 1e-6 && r.ruling_offset <= 1e-6,
            worst,
            format!("parallelism {:.3e}, ruling offset {:.3e}", r.parallelism, r.ruling_offset),
        ))
    })
}

fn filament_velocity(_: &Context) -> Check {
    numeric(|| {
        let a = measure::filament_velocity(1e-3)?;
        let b = measure::filament_velocity(1e-4)?;
        Ok((
            a <= 1e-2 && a / b >= 8.0,
            a,
            format!("residual {a:.3e} at 1e-3, {b:.3e} at 1e-4, ratio {:.2}", a / b),
        ))
    })
}

fn burgers_gauge(_: &Context) -> Check {
    numeric(|| {
        let res = [32, 64, 128, 256]
            .iter()
            .map(|&n| measure::burgers_gauge_residual(n))
            .collect::<Result<Vec<_>, _>>()?;
        let ratios: Vec<f64> = res.windows(2).map(|w| w[0] / w[1]).collect();
        let ok = ratios.iter().all(|r| (3.0..=5.0).contains(r));
        let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
        Ok((ok, res[3], format!("refinement ratios {} for N = 32 to 256", shown.join(", "))))
    })
}

fn heat_gauge(_: &Context) -> Check {
    numeric(|| {
        let r = measure::heat_gauge_residual()?;
        Ok((r <= 1e-12, r, "d = 0.7 against d = 0, relative".to_string()))
    })
}
