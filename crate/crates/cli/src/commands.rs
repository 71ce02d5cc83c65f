use std::collections::BTreeMap;

use serde_json::{json, Value};

use qverma::adjoint::{
    adjoint_action, classical_structure_check, decompose, tensor_square_action, verify_prop3,
};
use qverma::braidedmod::{
    build_intertwiner, ideal_generators, intertwiner_uniqueness, verify_braided_relations,
    verify_casimir, verify_hwv_images, verify_ideal, weight_exponent,
};
use qverma::braiding::{
    build_involutive_twist, construct_braiding, eigen_analysis, verify_multiplicity_block,
    verify_qybe, BraidingError,
};
use qverma::export::{export_braiding, export_intertwiner, export_module};
use qverma::orbit::{
    classical_constants, classical_limit_check, graded_dimensions, hbar_to_mu, mu_to_hbar,
    orbit_intertwiner, specialized_constants, specialized_ideal, verify_classical_constants,
    verify_orbit, OrbitAlgebraConfig, OrbitError,
};
use qverma::repcore::{
    chevalley_action, verify_antipode, verify_uq_relations, HighestWeight, ModuleSpec, RepError,
};
use qverma::report::VerificationReport;
use qverma::ring::{rat, ArithmeticMode, QScalar, RingError};

use crate::config::{ConfigError, ExportObject, QBinding, RunConfig, Suite};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Compute(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::UnitModulus(_)
            | RingError::Parse(_)
            | RingError::InvalidMode(_)
            | RingError::MissingBinding(_) => CliError::Config(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::InvalidSpec(_)
            | RepError::TruncationOverflow { .. }
            | RepError::NotFiniteDim => CliError::Config(e.to_string()),
            RepError::Ring(r) => r.into(),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<BraidingError> for CliError {
    fn from(e: BraidingError) -> Self {
        match e {
            BraidingError::InvalidMode(m) => CliError::Config(m),
            BraidingError::Rep(r) => r.into(),
            BraidingError::Ring(r) => r.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::InvalidConfig(_) | OrbitError::RegimeViolation(_) => {
                CliError::Config(e.to_string())
            }
            OrbitError::Rep(r) => r.into(),
            OrbitError::Ring(r) => r.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

/// Everything a command produces: ordered reports, structured data and any
/// extra text tables.
pub struct Outcome {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub reports: Vec<VerificationReport>,
    pub data: Value,
    pub tables: Vec<String>,
}

impl Outcome {
    fn new(command: &str, cfg: &RunConfig) -> Self {
        Outcome {
            command: command.into(),
            config: cfg.echo(),
            reports: Vec::new(),
            data: Value::Null,
            tables: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::all_passed)
    }
}

fn mu_or(cfg: &RunConfig, default: i64) -> i64 {
    cfg.mu.unwrap_or(default)
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("verify", cfg);
    out.config
        .insert("suite".into(), format!("{suite:?}").to_ascii_lowercase());
    match suite {
        Suite::Uq => {
            let mode = cfg.q.integer_mode();
            let spec = ModuleSpec::finite(cfg.n, mu_or(cfg, 1), mode.clone());
            spec.validate()?;
            let module = chevalley_action(&spec)?;
            out.reports.push(verify_uq_relations(&module));
            out.reports
                .push(verify_uq_relations(&adjoint_action(cfg.n, &mode)?));
            out.reports.push(verify_antipode(&module)?);
        }
        Suite::Adjoint => {
            let mode = cfg.q.integer_mode();
            out.reports.push(verify_prop3(cfg.n, &mode)?);
            out.reports.push(classical_structure_check(cfg.n)?);
        }
        Suite::Braiding => braiding_reports(cfg, &mut out)?,
        Suite::Intertwiner => intertwiner_reports(cfg, &mut out)?,
        Suite::Orbit => orbit_reports(cfg, &mut out)?,
    }
    Ok(out)
}

pub fn decompose_cmd(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("decompose", cfg);
    let mode = cfg.q.integer_mode();
    let dec = decompose(&tensor_square_action(cfg.n, &mode)?)?;
    let mut rep = VerificationReport::new("decompose")
        .with_config("n", cfg.n)
        .with_config("arithmetic", mode.label());
    let d = (cfg.n * cfg.n - 1) as u64;
    rep.record(
        "dimension-audit",
        "the summand dimensions add up to (n^2 - 1)^2",
        dec.audit_sum == d * d && dec.dimension as u64 == d * d,
        Some(format!("{} = {}", dec.audit_sum, d * d)),
    );
    let expected = qverma::adjoint::expected_square_multiplicities(cfg.n);
    let got: Vec<(Vec<i64>, usize)> = dec
        .components
        .iter()
        .map(|c| (c.fundamental.clone(), c.multiplicity))
        .collect();
    let same = expected.len() == got.len() && expected.iter().all(|e| got.contains(e));
    rep.record(
        "multiplicities",
        "highest weights and multiplicities of the tensor square",
        same,
        Some(format!("{} summands", dec.components.len())),
    );
    let mut table = String::from("summand            mult  dim\n");
    for c in &dec.components {
        table.push_str(&format!(
            "{:<20}{:>4}{:>6}\n",
            c.label, c.multiplicity, c.weyl_dim
        ));
    }
    table.push_str(&format!("total {}\n", dec.audit_sum));
    out.tables.push(table);
    out.data = serde_json::to_value(&dec).expect("serializable");
    out.reports.push(rep);
    Ok(out)
}

fn braiding_reports(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let mode = cfg.q.integer_mode();
    let b = construct_braiding(cfg.n, &mode)?;
    out.reports.push(verify_multiplicity_block(&b));
    let eig = eigen_analysis(&b)?;
    out.reports.push(eig.report.clone());
    let twist_ok = !matches!(&cfg.q, QBinding::Rational(q) if q < &rat(0));
    if twist_ok {
        let tw = build_involutive_twist(&b)?;
        let mut table = String::from("eigenvalue of S on summands\n");
        for c in &tw.components {
            table.push_str(&format!(
                "  {:<28} sign {:+}  dim {:<4} {}\n",
                c.labels.join(","),
                c.sign,
                c.dimension,
                c.eigenvalue
            ));
        }
        out.tables.push(table);
        out.data = json!({
            "components": tw.components,
            "plus_dim": tw.plus_dim,
            "minus_dim": tw.minus_dim,
            "certificate": b.certificate,
        });
        out.reports.push(tw.report);
    } else {
        out.data = json!({ "certificate": b.certificate });
    }
    if cfg.n <= 3 || !mode.is_symbolic() {
        out.reports.push(verify_qybe(&b));
    }
    Ok(())
}

fn intertwiner_spec(cfg: &RunConfig) -> Result<ModuleSpec, CliError> {
    let spec = match (cfg.mu, &cfg.q) {
        (Some(mu), q) => ModuleSpec::finite(cfg.n, mu, q.integer_mode()),
        (None, QBinding::Symbolic) => ModuleSpec::verma(
            cfg.n,
            HighestWeight::Generic,
            cfg.truncation.unwrap_or(3),
            ArithmeticMode::GenericWeight,
        ),
        (None, _) => {
            return Err(CliError::Config(
                "--mu is required unless q is symbolic".into(),
            ))
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn intertwiner_reports(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let spec = intertwiner_spec(cfg)?;
    let psi = build_intertwiner(&spec, &cfg.alpha0)?;
    out.reports.push(verify_braided_relations(&psi));
    out.reports.push(verify_casimir(&psi)?);
    out.reports.push(verify_hwv_images(&psi)?);
    let gens = ideal_generators(
        cfg.n,
        weight_exponent(&spec.weight),
        &cfg.alpha0,
        &spec.arithmetic,
    )?;
    out.reports.push(verify_ideal(&psi, &gens)?);
    if spec.is_finite() && psi.dim() <= 6 && spec.arithmetic.is_symbolic() {
        let u = intertwiner_uniqueness(&spec)?;
        let mut rep =
            VerificationReport::new("intertwiner-uniqueness").with_config("module", spec.label());
        rep.record(
            "unique-up-to-scalar",
            "the intertwiner equations have a one-dimensional solution space containing the closed form",
            u.solution_dimension == 1 && u.closed_form_in_solution_space,
            Some(format!("{} unknowns, solution dimension {}", u.unknowns, u.solution_dimension)),
        );
        out.reports.push(rep);
    }
    out.data = serde_json::to_value(&gens).expect("serializable");
    Ok(())
}

fn orbit_reports(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let n = cfg.n;
    let d = cfg.truncation.unwrap_or(2);
    if cfg.q == QBinding::Classical {
        let mu = cfg
            .mu
            .ok_or_else(|| CliError::Config("the classical point needs --mu".into()))?;
        let hbar = match &cfg.hbar {
            Some(h) => h.as_rational().ok_or_else(|| {
                CliError::Config("the classical point needs a rational hbar".into())
            })?,
            None => rat(0),
        };
        let k = classical_constants(n, &rat(mu), &hbar);
        out.tables.push(format!(
            "classical constants: c0 = {}, c1 = {}; with hbar = {}: c0 = {}, c1 = {}\n",
            fmt_rat(&k.c0),
            fmt_rat(&k.c1),
            fmt_rat(&hbar),
            fmt_rat(&k.c0_hbar),
            fmt_rat(&k.c1_hbar)
        ));
        out.data = serde_json::to_value(&k).expect("serializable");
        out.reports.push(verify_classical_constants(n, mu)?);
        out.reports
            .push(classical_limit_check(n, &rat(mu.max(1)), d.max(1))?);
        return Ok(());
    }
    let q = match &cfg.q {
        QBinding::Rational(q) => Some(q.clone()),
        _ => None,
    };
    let regime = cfg.regime()?;
    let hbar = match (cfg.mu, &cfg.hbar) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config(
                "give exactly one of --mu and --hbar".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Config(
                "the orbit commands need --mu or --hbar".into(),
            ))
        }
        (Some(mu), None) => mu_to_hbar(n, mu, regime, q.as_ref())?,
        (None, Some(h)) => h.clone(),
    };
    let mut config = OrbitAlgebraConfig::new(n, regime, hbar, q);
    config.alpha0 = cfg.alpha0.clone();
    config.truncation = 2 * d.max(1);
    let binding = match hbar_to_mu(&config) {
        Ok(b) => b,
        Err(
            e @ (OrbitError::DegenerateDenominator { .. } | OrbitError::WeightAtInfinity { .. }),
        ) => {
            let mut rep = VerificationReport::new("orbit-singular-member")
                .with_config("n", n)
                .with_config("hbar", &config.hbar);
            rep.pass(
                "singular-member",
                "the weight binding degenerates, no q-Verma module carries this member",
                e.to_string(),
            );
            rep.note("at hbar = 0 the orbit algebra is not represented in any module with highest weight mu*w1");
            out.reports.push(rep);
            out.data = json!({ "singular": true, "reason": e.to_string() });
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    out.reports.push(verify_orbit(&config)?);
    let k = specialized_constants(&config)?;
    out.tables.push(format!(
        "invariant constant alpha0^2 q^n [n-1]/[n] (gamma + hbar) = {}\n",
        k.invariant
    ));
    let mut data = json!({
        "binding": binding,
        "constants": k,
        "ideal": specialized_ideal(&config)?,
    });
    match orbit_intertwiner(&config) {
        Ok(psi) => {
            let g = graded_dimensions(&psi, d)?;
            let mut rep =
                VerificationReport::new("graded-dimensions").with_config("module", &g.module);
            let mut table = String::from("degree  dim  oracle\n");
            for (k, (a, b)) in g.dims.iter().zip(&g.oracle).enumerate() {
                table.push_str(&format!("{k:>6}{a:>5}{b:>8}\n"));
            }
            out.tables.push(table);
            rep.record(
                "flatness",
                "graded dimensions equal the sums of dim V(k(w1 + w_(n-1)))",
                g.matches_oracle(),
                Some(format!("{:?} vs {:?}", g.dims, g.oracle)),
            );
            rep.record(
                "filtration",
                "dim_0 = 1 and the dimensions never decrease",
                g.is_filtration(),
                None,
            );
            if !psi.spec.is_finite() {
                rep.record(
                    "top-powers",
                    "the powers of Psi(g_1n) are nonzero operators",
                    g.top_powers_nonzero.iter().all(|b| *b),
                    None,
                );
            }
            data["graded_dimensions"] = serde_json::to_value(&g).expect("serializable");
            out.reports.push(rep);
        }
        Err(OrbitError::Unrepresentable(why)) => {
            out.tables.push(format!("no flatness table: {why}\n"))
        }
        Err(e) => return Err(e.into()),
    }
    out.data = data;
    Ok(())
}

fn fmt_rat(r: &qverma::ring::Rational) -> String {
    qverma::ring::format_rational(r)
}

pub fn braiding_cmd(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("braiding", cfg);
    braiding_reports(cfg, &mut out)?;
    Ok(out)
}

pub fn orbit_cmd(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("orbit", cfg);
    orbit_reports(cfg, &mut out)?;
    Ok(out)
}

pub fn export_cmd(cfg: &RunConfig, object: ExportObject) -> Result<Value, CliError> {
    let value = match object {
        ExportObject::Module => {
            let spec = intertwiner_spec(cfg)?;
            serde_json::to_value(export_module(&chevalley_action(&spec)?))
        }
        ExportObject::Intertwiner => {
            let spec = intertwiner_spec(cfg)?;
            serde_json::to_value(export_intertwiner(&build_intertwiner(&spec, &cfg.alpha0)?))
        }
        ExportObject::Braiding => serde_json::to_value(export_braiding(&construct_braiding(
            cfg.n,
            &cfg.q.integer_mode(),
        )?)),
        ExportObject::Ideal => {
            let spec = intertwiner_spec(cfg)?;
            let alpha: QScalar = cfg.alpha0.clone();
            serde_json::to_value(ideal_generators(
                cfg.n,
                weight_exponent(&spec.weight),
                &alpha,
                &spec.arithmetic,
            )?)
        }
    };
    Ok(value.expect("serializable"))
}
