//! One function per subcommand. Each returns a report plus exit code, or a
//! failure when no report can be produced.

use std::collections::BTreeMap;
use std::path::Path;

use foliation_core::classify::{self, ClassificationReport, ClassifyError};
use foliation_core::corpus;
use foliation_core::determine::{
    self, constant_syzygy_space, linear_syzygy_space, Determination, DetermineError, IntegrableMembers,
};
use foliation_core::foliation::{self, ProjectiveOneForm};
use foliation_core::formfile::{parse_form_file, print_form_file, FormFile};
use foliation_core::groebner::{Budget, Ideal};
use foliation_core::poly::{parse_polynomial, MonomialOrder, PolyRing};
use foliation_core::{Poly, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::failure::{Failure, EXIT_EXHAUSTED, EXIT_INVALID, EXIT_NOT_INTEGRABLE, EXIT_OK};
use crate::report::{FamilyReport, Report};

pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self { report, code: EXIT_OK }
    }
}

pub fn read_form(path: &Path) -> Result<FormFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_form_file(&text).map_err(|e| Failure::from(e).context(&path.display().to_string()))
}

fn base_report(path: &Path, form: &ProjectiveOneForm) -> Report {
    let mut r = Report::new(path.display().to_string());
    r.degree = Some(form.degree());
    r
}

/// Integrability gate for commands that need a foliation.
fn require_integrable(report: &mut Report, form: &ProjectiveOneForm) -> bool {
    let integrable = form.is_integrable();
    report.verdicts.integrable = Some(integrable);
    integrable
}

pub fn check(path: &Path, budget: &Budget) -> Result<Outcome, Failure> {
    let file = read_form(path)?;
    let form = &file.form;
    let mut report = base_report(path, form);
    let integrable = require_integrable(&mut report, form);
    let ideal = form.coefficient_ideal().with_budget(*budget);
    let data = ideal.hilbert_data()?;
    let codim_ok = data.krull_dim <= form.nvars() as i64 - 2;
    report.verdicts.codim_ok = Some(codim_ok);
    report.detail("krull_dim", data.krull_dim);
    let code = if !codim_ok {
        EXIT_INVALID
    } else if !integrable {
        EXIT_NOT_INTEGRABLE
    } else {
        EXIT_OK
    };
    Ok(Outcome { report, code })
}

fn fill_classification(report: &mut Report, c: &ClassificationReport) {
    let v = &mut report.verdicts;
    v.codim_ok = Some(c.codim_ok);
    v.saturated = Some(c.saturated);
    v.curve = Some(c.is_curve);
    v.acm = Some(c.is_acm);
    v.split = Some(c.is_split);
    report.splitting_type = c.splitting_type.map(|(a, b)| [a, b]);
    report.rao = c.is_curve.then(|| c.rao_dims.iter().map(|(k, d)| (k.to_string(), *d)).collect());
    let betti: Vec<Value> = c
        .betti
        .iter()
        .map(|step| Value::Object(step.iter().map(|(deg, n)| (deg.to_string(), Value::from(*n))).collect()))
        .collect();
    report.detail("betti", betti);
    report.detail("normal_twist", c.normal_twist);
    report.detail("routes_agree", c.route_saturated == c.route_acm && c.route_acm == c.is_split);
}

fn same_verdicts(a: &ClassificationReport, b: &ClassificationReport) -> bool {
    (a.saturated, a.is_curve, a.is_acm, a.is_split, a.splitting_type, &a.rao_dims, &a.betti)
        == (b.saturated, b.is_curve, b.is_acm, b.is_split, b.splitting_type, &b.rao_dims, &b.betti)
}

/// Re-classify under `count` seeded projectivities.
fn invariance(
    form: &ProjectiveOneForm,
    base: &ClassificationReport,
    count: usize,
    seed: u64,
    budget: &Budget,
) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideal = form.singular_ideal()?;
    for i in 0..count {
        let a = corpus::random_invertible(&mut rng, form.nvars());
        let moved = form.apply_projectivity(&a)?;
        let r = classify::classify(&moved, budget)?;
        if !same_verdicts(base, &r) {
            return Err(Failure::invalid(format!("verdicts changed under projectivity {i} (seed {seed})")));
        }
        if !moved.singular_ideal()?.equals(&ideal.apply_linear_change(&a)?)? {
            return Err(Failure::invalid(format!(
                "singular ideal does not transform under projectivity {i} (seed {seed})"
            )));
        }
    }
    Ok(())
}

pub fn classify(path: &Path, budget: &Budget, check_invariance: Option<(usize, u64)>) -> Result<Outcome, Failure> {
    let file = read_form(path)?;
    let form = &file.form;
    let mut report = base_report(path, form);
    if !require_integrable(&mut report, form) {
        return Ok(Outcome { report, code: EXIT_NOT_INTEGRABLE });
    }
    match classify::classify(form, budget) {
        Ok(c) => {
            fill_classification(&mut report, &c);
            if let Some((count, seed)) = check_invariance {
                invariance(form, &c, count, seed, budget)?;
                report.detail("invariance", format!("unchanged under {count} projectivities (seed {seed})"));
            }
        }
        Err(ClassifyError::UnsupportedDimension { .. }) => {
            // plane forms: only saturation is meaningful
            report.verdicts.codim_ok = Some(true);
            report.verdicts.saturated = Some(classify::is_saturated(form, budget)?);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Outcome::ok(report))
}

pub fn syzygies(path: &Path) -> Result<Outcome, Failure> {
    let file = read_form(path)?;
    let form = &file.form;
    let mut report = base_report(path, form);
    let linear: Vec<Value> = linear_syzygy_space(form)
        .iter()
        .map(|s| Value::from(format!("({})", s.entries().iter().map(Poly::to_string).collect::<Vec<_>>().join(", "))))
        .collect();
    let constant: Vec<Value> = constant_syzygy_space(form)
        .iter()
        .map(|c| Value::from(format!("({})", c.iter().map(Rat::to_string).collect::<Vec<_>>().join(", "))))
        .collect();
    report.detail("linear_syzygy_dim", linear.len());
    report.detail("constant_syzygy_dim", constant.len());
    report.detail("linear_syzygies", linear);
    report.detail("constant_syzygies", constant);
    Ok(Outcome::ok(report))
}

fn alpha_string(alpha: &[Rat]) -> String {
    format!("({})", alpha.iter().map(Rat::to_string).collect::<Vec<_>>().join(", "))
}

pub fn family(path: &Path, budget: &Budget) -> Result<Outcome, Failure> {
    let file = read_form(path)?;
    let form = &file.form;
    let mut report = base_report(path, form);
    if !require_integrable(&mut report, form) {
        return Ok(Outcome { report, code: EXIT_NOT_INTEGRABLE });
    }
    let fam = determine::distribution_family(form, budget).map_err(not_split_hint)?;
    report.verdicts.split = Some(true);
    let system = determine::integrability_system(&fam)?;
    report.detail("integrability_quadrics", system.len());
    let (kind, members, code) = match determine::integrable_members(&fam, budget)? {
        IntegrableMembers::Finite { members, excluded_degenerate } => {
            report.detail("excluded_degenerate", excluded_degenerate);
            ("finite", members, EXIT_OK)
        }
        IntegrableMembers::PositiveDimensional { dim, witnesses } => {
            report.detail("solution_dim", dim);
            ("positive-dimensional", witnesses, EXIT_OK)
        }
        IntegrableMembers::Inconclusive { reason } => {
            report.detail("reason", reason);
            ("inconclusive", Vec::new(), EXIT_EXHAUSTED)
        }
    };
    report.family = Some(FamilyReport {
        dim: fam.parameter_dim(),
        effective_dim: fam.effective_dim(),
        integrable: kind.to_string(),
        members: members.iter().map(|m| format!("alpha = {}: {}", alpha_string(&m.alpha), m.form)).collect(),
    });
    Ok(Outcome { report, code })
}

fn not_split_hint(e: DetermineError) -> Failure {
    match e {
        DetermineError::NotSplit => {
            Failure::invalid("the tangent sheaf does not split; the syzygy family needs a split foliation")
        }
        other => other.into(),
    }
}

pub fn determine(path: &Path, budget: &Budget) -> Result<Outcome, Failure> {
    let file = read_form(path)?;
    let form = &file.form;
    let mut report = base_report(path, form);
    if !require_integrable(&mut report, form) {
        return Ok(Outcome { report, code: EXIT_NOT_INTEGRABLE });
    }
    let verdict = determine::is_determined_by_singular_scheme(form, budget).map_err(not_split_hint)?;
    report.verdicts.split = Some(true);
    report.verdicts.determination = Some(verdict.label().to_string());
    let code = match &verdict {
        Determination::Unique { reason } => {
            report.detail("reason", reason.clone());
            EXIT_OK
        }
        Determination::NonUnique { witness, reason } => {
            report.detail("reason", reason.clone());
            report.detail("witness", witness.to_string());
            EXIT_OK
        }
        Determination::Inconclusive { reason } => {
            report.detail("reason", reason.clone());
            EXIT_EXHAUSTED
        }
    };
    Ok(Outcome { report, code })
}

// ---- make ----

fn parse_list<T>(text: &str, what: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, Failure> {
    text.split(',').map(|s| f(s.trim()).map_err(|e| Failure::invalid(format!("{what} '{}': {e}", s.trim())))).collect()
}

pub fn make_logarithmic(factors: &str, weights: &str, nvars: usize) -> Result<FormFile, Failure> {
    let ring = PolyRing::grevlex(nvars);
    let factors = parse_list(factors, "factor", |s| parse_polynomial(ring, s).map_err(|e| e.to_string()))?;
    let weights = parse_list(weights, "weight", |s| s.parse::<Rat>().map_err(|e| e.to_string()))?;
    let form = foliation::logarithmic_form(&factors, &weights)?;
    Ok(FormFile::new(form))
}

pub fn make_pullback(plane: &Path) -> Result<FormFile, Failure> {
    let file = read_form(plane)?;
    let form = foliation::pullback_from_plane(&file.form)?;
    Ok(FormFile::new(form))
}

pub fn make_exceptional(d: u32) -> Result<FormFile, Failure> {
    let e = foliation::exceptional_form(d)?;
    Ok(FormFile::new(e.form).with_name(format!("exceptional d={d}")))
}

pub fn make_pencil(i: usize, j: usize, nvars: usize) -> Result<FormFile, Failure> {
    Ok(FormFile::new(foliation::pencil(PolyRing::grevlex(nvars), i, j)?))
}

pub fn write_form_file(mut file: FormFile, out: Option<&Path>) -> Result<(), Failure> {
    file.expected_degree = Some(file.form.degree());
    let text = print_form_file(&file);
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Write every corpus form as `<dir>/<name>.form`; returns the paths.
pub fn make_corpus(dir: &Path) -> Result<Vec<String>, Failure> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, form) in corpus::standard_corpus() {
        let path = dir.join(format!("{name}.form"));
        write_form_file(FormFile::new(form).with_name(name), Some(&path))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

// ---- gb / sat ----

pub enum IdealSource<'a> {
    Generators { gens: &'a [String], nvars: usize },
    Form(&'a Path),
}

fn load_ideal(
    source: &IdealSource<'_>,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<(String, Ideal<Rat>), Failure> {
    let (label, ideal) = match source {
        IdealSource::Generators { gens, nvars } => {
            if gens.is_empty() {
                return Err(Failure::invalid("no generators given"));
            }
            let ring = PolyRing::new(*nvars, order);
            let polys = gens.iter().map(|g| parse_polynomial(ring, g)).collect::<Result<Vec<Poly>, _>>()?;
            (gens.join(", "), Ideal::new_inhomogeneous(ring, polys)?)
        }
        IdealSource::Form(path) => {
            let file = read_form(path)?;
            (path.display().to_string(), file.form.coefficient_ideal().with_order(order))
        }
    };
    Ok((label, ideal.with_budget(*budget)))
}

fn poly_list(polys: &[Poly]) -> Vec<Value> {
    polys.iter().map(|p| Value::from(p.to_string())).collect()
}

pub fn gb(source: &IdealSource<'_>, order: MonomialOrder, budget: &Budget) -> Result<Outcome, Failure> {
    let (label, ideal) = load_ideal(source, order, budget)?;
    let mut report = Report::new(label);
    let basis = ideal.groebner_basis()?.to_vec();
    report.detail("order", format!("{order:?}"));
    report.detail("basis", poly_list(&basis));
    if ideal.is_homogeneous() {
        let data = ideal.hilbert_data()?;
        report.detail("krull_dim", data.krull_dim);
    }
    Ok(Outcome::ok(report))
}

pub fn sat(source: &IdealSource<'_>, method: SatMethod, budget: &Budget) -> Result<Outcome, Failure> {
    let (label, ideal) = load_ideal(source, MonomialOrder::GrevLex, budget)?;
    if !ideal.is_homogeneous() {
        return Err(Failure::invalid("saturation needs homogeneous generators"));
    }
    let mut report = Report::new(label);
    let saturation = match method {
        SatMethod::Colon => ideal.saturate_irrelevant()?,
        SatMethod::Variables => ideal.saturate_by_variables()?,
    };
    let saturated = saturation.is_subset_of(&ideal)?;
    report.verdicts.saturated = Some(saturated);
    report.detail("method", format!("{method:?}").to_lowercase());
    report.detail("saturation", poly_list(saturation.groebner_basis()?));
    Ok(Outcome::ok(report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SatMethod {
    /// Iterated colon by the irrelevant ideal.
    Colon,
    /// Intersection of the saturations by each variable.
    Variables,
}

/// Exit code for a set of outcomes: the most severe one.
pub fn combined_code(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes.into_iter().max().unwrap_or(EXIT_OK)
}

/// Map a keyed list of failures into a JSON object for corpus mode.
pub fn failure_json(input: &str, f: &Failure) -> Value {
    let mut m = BTreeMap::new();
    m.insert("input".to_string(), Value::from(input));
    m.insert("error".to_string(), Value::from(f.message.clone()));
    m.insert("exit".to_string(), Value::from(f.code));
    Value::Object(m.into_iter().collect())
}
