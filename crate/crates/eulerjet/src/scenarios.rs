//! Named verification scenarios.

use std::collections::BTreeMap;
use std::time::Instant;

use eulerjet_core::euler2d::*;
use eulerjet_core::exprlang::parse;
use eulerjet_core::jetspace::{self, Matrix3};
use eulerjet_core::kernel::{Poly, Rational};
use eulerjet_core::report::{Status, VerificationReport};
use eulerjet_core::varcalc::{linearize, HorizontalForm2};
use eulerjet_core::{Coeff, Dep, Expr, Generator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::options::{CliError, RunOptions};
use crate::props;

type Run = fn(&RunOptions) -> Result<Vec<VerificationReport>, CliError>;

pub struct Scenario {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    /// The statement being checked.
    pub topic: &'static str,
    run: Run,
}

impl Scenario {
    pub fn run(&self, opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
        (self.run)(opts)
    }
}

/// Registry in listing order.
pub static SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "prop1",
        aliases: &[],
        summary: "W(d_h Omega) equals the Green remainder for symbolic q, p",
        topic: "canonical conservation law",
        run: prop1,
    },
    Scenario {
        name: "adjoint",
        aliases: &[],
        summary: "generic linearization and adjoint match their closed forms",
        topic: "tangent and cotangent equations",
        run: adjoint,
    },
    Scenario {
        name: "prop2",
        aliases: &["cosymmetries"],
        summary: "p0 solves the adjoint equation on the covering",
        topic: "nonlocal cosymmetry",
        run: prop2,
    },
    Scenario {
        name: "prop3",
        aliases: &["symmetries"],
        summary: "the listed generators solve the linearized equation",
        topic: "contact symmetry algebra",
        run: prop3,
    },
    Scenario {
        name: "flatness",
        aliases: &[],
        summary: "the s_t and s_y rules are compatible on the equation",
        topic: "differential covering",
        run: flatness,
    },
    Scenario {
        name: "ncl-closed",
        aliases: &[],
        summary: "every constructed law is d_h-closed on the covering",
        topic: "nonlocal conservation laws",
        run: ncl_closed,
    },
    Scenario {
        name: "two-component",
        aliases: &[],
        summary: "for q = A(t) the dx^dy coefficient vanishes",
        topic: "two-component conservation laws",
        run: two_component,
    },
    Scenario {
        name: "decomposition-ex1",
        aliases: &[],
        summary: "d_h omega - (P F + Q G1 + R G2) is exact for q = u - x u_x",
        topic: "characteristic decomposition",
        run: decomposition_ex1,
    },
    Scenario {
        name: "decomposition-ex2",
        aliases: &[],
        summary: "d_h omega - (P F + Q G1 + R G2) is exact for q = A(t)",
        topic: "characteristic decomposition",
        run: decomposition_ex2,
    },
    Scenario {
        name: "fixture-diff-ex1",
        aliases: &[],
        summary: "computed coefficients against the transcribed L_i",
        topic: "worked example, q = u - x u_x",
        run: fixture_diff_ex1,
    },
    Scenario {
        name: "fixture-diff-ex2",
        aliases: &[],
        summary: "computed coefficients against the transcribed M_i",
        topic: "worked example, q = A(t)",
        run: fixture_diff_ex2,
    },
    Scenario {
        name: "rotation",
        aliases: &[],
        summary: "the complex rotation maps the Laplace form to c times the D form",
        topic: "change of independent variables",
        run: rotation,
    },
    Scenario {
        name: "kernel-props",
        aliases: &[],
        summary: "seeded algebraic property suite for the expression kernel",
        topic: "kernel invariants",
        run: kernel_props,
    },
];

pub fn find_scenario(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name || s.aliases.contains(&name))
}

/// Resolves names (`all` expands to the registry) and keeps registry order
/// for duplicates removed.
pub fn resolve(names: &[String]) -> Result<Vec<&'static Scenario>, CliError> {
    let mut out: Vec<&'static Scenario> = Vec::new();
    for n in names {
        if n == "all" {
            for s in SCENARIOS {
                if !out.iter().any(|x| x.name == s.name) {
                    out.push(s);
                }
            }
            continue;
        }
        let s = find_scenario(n).ok_or_else(|| CliError::UnknownScenario(n.clone()))?;
        if !out.iter().any(|x| x.name == s.name) {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn run_named(name: &str, opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    find_scenario(name).ok_or_else(|| CliError::UnknownScenario(name.to_string()))?.run(opts)
}

/// Runs one check, timing it and turning kernel errors into failed reports.
/// Numeric parameter values are substituted into the residual here, before
/// any control inverts the verdict.
fn check(
    opts: &RunOptions,
    id: impl Into<String>,
    f: impl FnOnce() -> eulerjet_core::Result<VerificationReport>,
) -> VerificationReport {
    let id = id.into();
    let start = Instant::now();
    let mut r = match f() {
        Ok(mut r) => {
            r.claim_id = id;
            r
        }
        Err(e) => VerificationReport::failure(id, format!("error: {e}")),
    };
    if !opts.params.is_symbolic() {
        specialize(&mut r, opts);
    }
    if opts.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

fn specialize(r: &mut VerificationReport, opts: &RunOptions) {
    if r.residual.is_zero() {
        return;
    }
    let bindings = opts.params.bindings();
    let sub = |e: &Expr| e.substitute(&bindings).map(|x| x.normalize());
    let comps: eulerjet_core::Result<Vec<(String, Expr)>> =
        r.components.iter().map(|(n, e)| Ok((n.clone(), sub(e)?))).collect();
    let res = match comps {
        Ok(comps) if !comps.is_empty() => {
            let first = comps.iter().map(|(_, e)| e).find(|e| !e.is_zero()).cloned().unwrap_or_else(Expr::zero);
            r.components = comps;
            Ok(first)
        }
        Ok(_) => sub(&r.residual),
        Err(e) => Err(e),
    };
    match res {
        Ok(res) => {
            r.notes.push(format!("residual specialized at {}", opts.params.describe()));
            if res.is_zero() {
                r.status = if r.assumptions.is_empty() { Status::Verified } else { Status::VerifiedWithAssumptions };
                r.notes.push("the symbolic residual vanishes at these values".into());
            }
            r.residual = res;
        }
        Err(e) => r.notes.push(format!("specialization failed: {e}")),
    }
}

fn covering(v: Variant) -> eulerjet_core::Result<OnShellSystem> {
    OnShellSystem::make_equation_system(v)?.extend_with_covering()
}

fn generator_for(v: Variant, name: &str) -> Result<GeneratorSpec, CliError> {
    lookup_generator(v, name).map_err(|source| CliError::Generator { name: name.to_string(), source })
}

fn prop1(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let mut out = Vec::new();
    for &v in &opts.variants {
        out.push(check(opts, format!("prop1/{}", v.name()), || {
            let r = prop1_residual(v, &canonical_form2_symbolic(v))?;
            Ok(VerificationReport::from_residual("", r, &[]))
        }));
        if canonical_texts(v) != printed_canonical_texts(v) {
            let printed = check(opts, "", || {
                let r = prop1_residual(v, &printed_canonical_form2_symbolic(v))?;
                Ok(VerificationReport::from_residual("", r, &[]))
            });
            out.push(printed.expect_failure(format!("prop1/{}/printed-coefficients", v.name())).with_note(
                "as printed the second and third coefficients read Delta(q_y)*p for Delta(u)*q_y*p \
                 and q*p_y for q*p_yy; the corrected coefficients are the ones checked above",
            ));
        }
    }
    Ok(out)
}

fn adjoint(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    Ok(opts
        .variants
        .iter()
        .map(|&v| {
            check(opts, format!("adjoint/{}", v.name()), || {
                let op = linearize(&builtin_f(v)?, Dep::U);
                let (lq, lp) = closed_form_linearizations(v);
                let a = op.apply_to_jets(Dep::Q).sub(&lq);
                let b = op.adjoint()?.apply_to_jets(Dep::P).sub(&lp);
                Ok(VerificationReport::from_components(
                    "",
                    vec![("linearization".into(), a), ("adjoint".into(), b)],
                    &[],
                ))
            })
        })
        .collect())
}

fn mutated_cosymmetry(v: Variant) -> CosymmetrySpec {
    let source = match v {
        Variant::D => "s - lambda*t*x*y",
        Variant::Laplace => "s - 1/4*lambda*t*(x^2 + y^2)",
    };
    CosymmetrySpec { variant: v, name: "mutated".into(), source: source.into(), expr: parse(source).expect("valid") }
}

fn prop2(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let mut out = Vec::new();
    for &v in &opts.variants {
        let p0 = builtin_cosymmetry(v);
        let printed = printed_cosymmetry(v);
        out.push(check(opts, format!("prop2/{}/p0", v.name()), || {
            verify_cosymmetry(&p0)
        }));
        if printed.expr != p0.expr {
            let r = check(opts, "", || verify_cosymmetry(&printed));
            out.push(r.expect_failure(format!("prop2/{}/p0-printed", v.name())).with_note(format!(
                "the printed form {} lacks the factor t on the lambda term",
                printed.source
            )));
        }
        let m = mutated_cosymmetry(v);
        let r = check(opts, "", || verify_cosymmetry(&m));
        out.push(r.expect_failure(format!("prop2/{}/control-mutated", v.name())));
    }
    Ok(out)
}

/// φ₄ is checked in both readings; the report passes if one of them does
/// and says which.
fn phi4_report(opts: &RunOptions, sys: &OnShellSystem) -> VerificationReport {
    let v = sys.variant();
    let cands = [("printed", PHI4_PRINTED), ("conjectured", PHI4_CONJECTURED)];
    let results: Vec<VerificationReport> = cands
        .iter()
        .map(|(n, src)| check(opts, *n, || verify_symmetry_in(sys, &GeneratorSpec::new(n, src))))
        .collect();
    let passing = results.iter().position(|r| r.is_ok());
    let mut r = results[passing.unwrap_or(0)].clone();
    r.claim_id = format!("prop3/{}/phi4", v.name());
    r.notes.clear();
    r.components = results.iter().zip(cands).map(|(x, (n, _))| (n.to_string(), x.residual.clone())).collect();
    if opts.timing {
        r.elapsed_ms = Some(results.iter().filter_map(|x| x.elapsed_ms).sum());
    }
    for (x, (n, src)) in results.iter().zip(cands) {
        r.notes.push(format!("{n} candidate {src}: {} ({} residual terms)", x.status, x.residual.numer().len()));
    }
    r.notes.push(match passing {
        Some(i) => format!("phi4 is a symmetry in the {} reading", cands[i].0),
        None => "neither reading of phi4 is a symmetry".into(),
    });
    r
}

fn prop3(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let mut out = Vec::new();
    for &v in &opts.variants {
        let sys = match OnShellSystem::make_equation_system(v) {
            Ok(s) => s,
            Err(e) => {
                out.push(VerificationReport::failure(format!("prop3/{}", v.name()), e.to_string()));
                continue;
            }
        };
        if let Some(g) = &opts.generator {
            let g = generator_for(v, g)?;
            out.push(check(opts, format!("prop3/{}/{}", v.name(), g.name), || verify_symmetry_in(&sys, &g)));
            continue;
        }
        for g in builtin_symmetries(v) {
            match g.name.as_str() {
                "phi4-printed" => {}
                "phi4-conjectured" => out.push(phi4_report(opts, &sys)),
                _ => out.push(check(opts, format!("prop3/{}/{}", v.name(), g.name), || {
                    verify_symmetry_in(&sys, &g)
                })),
            }
        }
        let u = GeneratorSpec::new("u", "u");
        let r = check(opts, "", || verify_symmetry_in(&sys, &u));
        out.push(r.expect_failure(format!("prop3/{}/control-u", v.name())).with_note("q = u is not a symmetry"));
    }
    Ok(out)
}

fn flatness(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let mut out = Vec::new();
    for &v in &opts.variants {
        out.push(check(opts, format!("flatness/{}", v.name()), || {
            let sys = covering(v)?;
            Ok(VerificationReport::from_residual("", sys.flatness_residual()?, sys.assumptions()))
        }));
        let r = check(opts, "", || {
            let mut rules = CoveringRules::standard(v)?;
            rules.s_t = rules.s_t.add(&parse("u_x").expect("valid"));
            let sys = OnShellSystem::make_equation_system(v)?.extend_with(rules)?;
            Ok(VerificationReport::from_residual("", sys.flatness_residual()?, sys.assumptions()))
        });
        out.push(r.expect_failure(format!("flatness/{}/control-perturbed", v.name())).with_note("s_t rule perturbed by +u_x"));
    }
    Ok(out)
}

fn ncl_closed(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let mut out = Vec::new();
    for &v in &opts.variants {
        let sys = match covering(v) {
            Ok(s) => s,
            Err(e) => {
                out.push(VerificationReport::failure(format!("ncl-closed/{}", v.name()), e.to_string()));
                continue;
            }
        };
        let gens: Vec<GeneratorSpec> = match &opts.generator {
            Some(g) => vec![generator_for(v, g)?],
            None => builtin_symmetries(v),
        };
        for g in gens {
            let name = g.name.strip_suffix("-conjectured").unwrap_or(&g.name).to_string();
            let r = check(opts, format!("ncl-closed/{}/{}", v.name(), name), || {
                let omega = construct_ncl_in(&sys, &g)?;
                Ok(verify_ncl_closed("", &omega, &sys)?.with_note(format!("q = {}", g.source)))
            });
            if g.name == "phi4-printed" {
                out.push(r.expect_failure(format!("ncl-closed/{}/control-phi4-printed", v.name())).with_note(
                    "the printed phi4 is not a symmetry, so its law is not closed",
                ));
            } else {
                out.push(r);
            }
        }
    }
    Ok(out)
}

fn two_component(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let source = opts.generator.as_deref().unwrap_or("A1(t)");
    let mut out = Vec::new();
    for &v in &opts.variants {
        let g = generator_for(v, source)?;
        out.push(check(opts, format!("two-component/{}", v.name()), || {
            let sys = covering(v)?;
            let omega = construct_ncl_in(&sys, &g)?;
            let others = omega.dydt.numer().len() + omega.dtdx.numer().len();
            Ok(VerificationReport::from_components("", vec![("dx^dy".into(), omega.dxdy)], sys.assumptions())
                .with_note(format!("q = {}; dy^dt and dt^dx carry {} numerator terms", g.source, others)))
        }));
    }
    Ok(out)
}

fn decomposition(opts: &RunOptions, example: u8) -> Result<Vec<VerificationReport>, CliError> {
    let name = format!("decomposition-ex{example}");
    let gen = if example == 1 { "ex1" } else { "ex2" };
    let g = generator_for(Variant::D, gen)?;
    let [p, q, r] = example_multipliers(example).expect("known example").map(|s| parse(s).expect("valid"));
    let sys = match covering(Variant::D) {
        Ok(s) => s,
        Err(e) => return Ok(vec![VerificationReport::failure(name, e.to_string())]),
    };
    let omega = match construct_ncl_in(&sys, &g) {
        Ok(o) => o,
        Err(e) => return Ok(vec![VerificationReport::failure(name, e.to_string())]),
    };
    let main = check(opts, name.clone(), || {
        Ok(verify_decomposition("", &omega, &p, &q, &r, &sys)?
            .with_note(format!("q = {}, P = {p}, Q = {q}, R = {r}", g.source))
            .with_note("zero multipliers pass as well: W(d_h omega) is a divergence by construction"))
    });
    let bump = parse("u_x^2").expect("valid");
    let cp = check(opts, "", || verify_decomposition("", &omega, &p.add(&bump), &q, &r, &sys));
    let cr = check(opts, "", || verify_decomposition("", &omega, &p, &q, &r.add(&bump), &sys));
    Ok(vec![
        main,
        cp.expect_failure(format!("{name}/control-p")).with_note("P perturbed by +u_x^2"),
        cr.expect_failure(format!("{name}/control-r")).with_note("R perturbed by +u_x^2"),
    ])
}

fn decomposition_ex1(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    decomposition(opts, 1)
}

fn decomposition_ex2(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    decomposition(opts, 2)
}

/// Fixture text, bundled or from `--fixtures`.
pub fn fixture_text(opts: &RunOptions, example: u8) -> Result<(String, String), CliError> {
    let file = format!("example{example}.txt");
    match &opts.fixtures {
        None => Ok((file, if example == 1 { EXAMPLE1 } else { EXAMPLE2 }.to_string())),
        Some(dir) => {
            let path = if dir.is_dir() { dir.join(&file) } else { dir.to_path_buf() };
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::FixtureIo { path: path.clone(), source })?;
            Ok((path.display().to_string(), text))
        }
    }
}

pub fn load_fixture(opts: &RunOptions, example: u8) -> Result<CoefficientFixture, CliError> {
    let (path, text) = fixture_text(opts, example)?;
    parse_fixture(&text).map_err(|source| CliError::FixtureParse { path, source })
}

/// Computed form and its diff against a fixture.
pub fn fixture_diff(fx: &CoefficientFixture) -> eulerjet_core::Result<(HorizontalForm2, FixtureDiff)> {
    let g = GeneratorSpec::from_text(&fx.name, &fx.generator)?;
    let omega = construct_ncl(fx.variant, &g)?;
    let d = diff_fixture(&omega, fx)?;
    Ok((omega, d))
}

/// `computed − fixture` of one compared part.
pub fn part_residual(p: &PartDiff) -> Expr {
    let mut terms: Vec<_> = p.only_computed.clone();
    terms.extend(p.only_fixture.iter().map(|(m, c)| (m.clone(), -c)));
    terms.extend(p.mismatched.iter().map(|t| (t.monomial.clone(), &t.computed - &t.fixture)));
    Expr::from_fraction(Poly::from_terms(terms), p.denominator.expand()).unwrap_or_else(|_| Expr::zero())
}

pub fn diff_report(id: &str, d: &FixtureDiff) -> VerificationReport {
    let mut components = Vec::new();
    let mut notes = Vec::new();
    let mut residual = Expr::zero();
    for p in d.mismatching() {
        let mut label = format!("{} {}", p.slot.name(), p.part.name());
        if !p.labels.is_empty() {
            label = format!("{label} {}", p.labels.join("+"));
        }
        let res = part_residual(p);
        if !p.uncertain && residual.is_zero() {
            residual = res.clone();
        }
        components.push((label, res));
        notes.push(p.to_string().trim_end().to_string());
    }
    let uncertain: Vec<String> = d.parts.iter().filter(|p| p.uncertain).flat_map(|p| p.labels.clone()).collect();
    if !uncertain.is_empty() {
        notes.push(format!("transcription uncertain, excluded from the verdict: {}", uncertain.join(", ")));
    }
    let matching = d.parts.iter().filter(|p| p.is_empty()).count();
    notes.push(format!("{matching} of {} compared parts match", d.parts.len()));
    let status = if d.is_empty_where_certain() { Status::Verified } else { Status::Failed };
    VerificationReport {
        claim_id: id.to_string(),
        status,
        residual: residual.normalize(),
        components,
        assumptions: Vec::new(),
        elapsed_ms: None,
        notes,
    }
}

fn fixture_scenario(opts: &RunOptions, example: u8) -> Result<Vec<VerificationReport>, CliError> {
    let fx = load_fixture(opts, example)?;
    let id = format!("fixture-diff-ex{example}");
    Ok(vec![check(opts, id.clone(), || {
        let (_, d) = fixture_diff(&fx)?;
        Ok(diff_report(&id, &d).with_note(format!("q = {}", fx.generator)))
    })])
}

fn fixture_diff_ex1(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    fixture_scenario(opts, 1)
}

fn fixture_diff_ex2(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    fixture_scenario(opts, 2)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    Coeff::new(Rational::from_int(rng.random_range(-9..=9)), Rational::from_int(rng.random_range(-3..=3)))
}

/// Exact comparison of `lhs` and `c · rhs` at random points; returns the
/// number of disagreeing points.
pub fn pointwise_mismatches(lhs: &Expr, rhs: &Expr, c: &Coeff, points: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Generator> = lhs.generators();
    gens.extend(rhs.generators());
    gens.sort();
    gens.dedup();
    let mut bad = 0;
    for _ in 0..points {
        let pt: BTreeMap<Generator, Coeff> = gens.iter().map(|g| (*g, random_coeff(&mut rng))).collect();
        match (lhs.eval_at(&pt), rhs.eval_at(&pt)) {
            (Ok(a), Ok(b)) if a == c * &b => {}
            _ => bad += 1,
        }
    }
    bad
}

fn generic_matrix() -> Matrix3 {
    let c = |re: i64, im: i64| Coeff::new(Rational::from_int(re), Rational::from_int(im));
    [[c(1, 0), c(0, 0), c(0, 0)], [c(0, 0), c(2, 0), c(1, 0)], [c(0, 0), c(1, 3), c(5, 0)]]
}

fn rotation(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let main = check(opts, "rotation", || {
        let out = verify_rotation()?;
        let mut r = out.report;
        if let Some(c) = &out.constant {
            let target = builtin_f(Variant::D)?;
            let bad = pointwise_mismatches(&out.transformed, &target, c, 5, opts.seed);
            if !(c.re.is_zero() && !c.im.is_zero()) {
                r.status = Status::Failed;
                r.notes.push("c is not purely imaginary".into());
            }
            if bad > 0 {
                r.status = Status::Failed;
            }
            r.notes.push(format!("exact evaluation at 5 random points: {} of 5 agree", 5 - bad));
        }
        Ok(r)
    });
    let identity = check(opts, "rotation/identity", || {
        let f = builtin_f(Variant::D)?;
        let out = verify_rotation_with(&f, &f, &jetspace::identity3())?;
        let mut r = out.report;
        if out.constant != Some(Coeff::ONE) {
            r.status = Status::Failed;
        }
        Ok(r)
    });
    let generic = check(opts, "", || {
        Ok(verify_rotation_with(&builtin_f(Variant::Laplace)?, &builtin_f(Variant::D)?, &generic_matrix())?.report)
    });
    Ok(vec![
        main,
        identity,
        generic.expect_failure("rotation/control-generic-matrix").with_note("a generic matrix gives no constant multiple"),
    ])
}

fn kernel_props(opts: &RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let mut reports = props::run(&props::PropConfig::standard(opts.seed));
    if !opts.timing {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    Ok(reports)
}

/// Restricted canonical law for one generator, with parameters applied.
pub fn construct(opts: &RunOptions, v: Variant, name: &str) -> Result<(GeneratorSpec, HorizontalForm2, Vec<Expr>), CliError> {
    let g = generator_for(v, name)?;
    let sys = covering(v).map_err(|e| CliError::Usage(e.to_string()))?;
    let omega = construct_ncl_in(&sys, &g).map_err(|e| CliError::Usage(e.to_string()))?;
    let omega = if opts.params.is_symbolic() {
        omega
    } else {
        let b = opts.params.bindings();
        omega.map(|c| Ok(c.substitute(&b)?.normalize())).map_err(|e| CliError::Usage(e.to_string()))?
    };
    Ok((g, omega, sys.assumptions().to_vec()))
}

/// Runs scenarios on up to `jobs` threads. Results come back in the order
/// given, whatever the scheduling.
pub fn run_scenarios(
    list: &[&'static Scenario],
    opts: &RunOptions,
    jobs: usize,
) -> Result<Vec<VerificationReport>, CliError> {
    let jobs = jobs.max(1).min(list.len().max(1));
    let mut slots: Vec<Option<Result<Vec<VerificationReport>, CliError>>> = (0..list.len()).map(|_| None).collect();
    if jobs == 1 {
        for (slot, s) in slots.iter_mut().zip(list) {
            *slot = Some(s.run(opts));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let done = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let Some(s) = list.get(i) else { break };
                    let r = s.run(opts);
                    done.lock().expect("no poisoned runs")[i] = Some(r);
                });
            }
        });
    }
    let mut out = Vec::new();
    for r in slots {
        out.extend(r.expect("every scenario ran")?);
    }
    Ok(out)
}
