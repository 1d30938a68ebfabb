//! The commands of the driver.

use std::sync::Arc;
use std::time::Instant;

use dayconv_core::cocomplete::{validate_target_functor, FinSet, TargetFunctor};
use dayconv_core::day::DayStructure;
use dayconv_core::fincat::validate_category;
use dayconv_core::laxmon::{certify_correspondence, enumerate_structures};
use dayconv_core::monoidal::{corpus, validate_monoidal, SymMonoidalStructure};
use dayconv_core::yoneda::PresheafCategory;

use crate::error::{CliError, Pos};
use crate::report::{Check, Report};
use crate::resolve::Workspace;
use crate::spec::Variance;
use crate::suite::{absorb, verify_theorems, SuiteOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    DayTensor { f: String, g: String },
    Enumerate,
    VerifyTheorems,
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub max_n: usize,
    pub carrier_bound: usize,
    pub ceiling: usize,
}

impl Default for Flags {
    fn default() -> Self {
        Self {
            max_n: 2,
            carrier_bound: 2,
            ceiling: dayconv_core::cocomplete::finset::DEFAULT_CEILING,
        }
    }
}

fn echo(cmd: &Command, flags: &Flags) -> String {
    match cmd {
        Command::Validate => "validate".to_string(),
        Command::DayTensor { f, g } => format!("day-tensor {f} {g}"),
        Command::Enumerate => format!("enumerate --carrier-bound {}", flags.carrier_bound),
        Command::VerifyTheorems => format!("verify-theorems --max-n {} --carrier-bound {}", flags.max_n, flags.carrier_bound),
    }
}

/// Run a command against a resolved document (or the bundled corpus when
/// there is none).
pub fn run_command(ws: Option<&Workspace>, cmd: &Command, flags: &Flags) -> Result<Report, CliError> {
    let t = FinSet::with_ceiling(flags.ceiling);
    let mut report = Report::new(echo(cmd, flags));
    match cmd {
        Command::Validate => report.checks = validate(ws, &t),
        Command::DayTensor { f, g } => {
            let ws = ws.ok_or_else(|| CliError::Usage("day-tensor needs --spec".into()))?;
            report.checks.push(day_tensor(ws, &t, f, g)?);
        }
        Command::Enumerate => {
            let structures: Vec<SymMonoidalStructure> = match ws {
                Some(ws) => ws.monoidals.values().cloned().collect(),
                None => vec![corpus::z2()],
            };
            for m in &structures {
                report.checks.push(enumerate(m, &t, flags.carrier_bound)?);
            }
        }
        Command::VerifyTheorems => {
            let extra: Vec<SymMonoidalStructure> = ws.map(|w| w.monoidals.values().cloned().collect()).unwrap_or_default();
            let opts = SuiteOptions {
                max_n: flags.max_n,
                carrier_bound: flags.carrier_bound,
            };
            report.checks = verify_theorems(&t, &opts, &extra)?;
        }
    }
    Ok(report)
}

fn validate(ws: Option<&Workspace>, t: &FinSet) -> Vec<Check> {
    let mut checks = Vec::new();
    let Some(ws) = ws else {
        for m in corpus::corpus() {
            let mut c = Check::new(format!("monoidal {}", m.name));
            absorb(&mut c, &validate_category(&m.base));
            absorb(&mut c, &validate_monoidal(&m));
            checks.push(c);
        }
        return checks;
    };
    for (kind, name) in &ws.order {
        let mut c = Check::new(format!("{kind} {name}"));
        match *kind {
            "category" => absorb(&mut c, &validate_category(&ws.categories[name])),
            "monoidal" => absorb(&mut c, &validate_monoidal(&ws.monoidals[name])),
            "functor" => absorb(&mut c, &validate_target_functor(t, &ws.functors[name].functor)),
            _ => absorb(&mut c, &ws.diagrams[name].diagram.validate(t)),
        }
        checks.push(c);
    }
    checks
}

fn day_tensor(ws: &Workspace, t: &FinSet, f: &str, g: &str) -> Result<Check, CliError> {
    let at = Pos { line: 0, col: 0 };
    let lookup = |n: &str| ws.functors.get(n).ok_or_else(|| CliError::unresolved(at, "functor", n));
    let (ef, eg) = (lookup(f)?, lookup(g)?);
    if ef.on != eg.on || ef.variance != eg.variance {
        return Err(CliError::validation(at, format!("`{f}` and `{g}` live in different functor categories")));
    }
    let m = ws
        .monoidals
        .get(&ef.on)
        .ok_or_else(|| CliError::validation(at, format!("`{}` carries no monoidal structure", ef.on)))?;
    let start = Instant::now();
    let day: Arc<DayStructure<FinSet>> = match ef.variance {
        Variance::Covariant => Arc::new(DayStructure::new(m, t.clone())?),
        Variance::Contravariant => PresheafCategory::new(m, t.clone())?.day,
    };
    let rebase = |x: &TargetFunctor<FinSet>| TargetFunctor::new(day.base().clone(), x.obj.clone(), x.mor.clone());
    let conv = day.day_tensor(&rebase(&ef.functor), &rebase(&eg.functor))?;
    let mut check = Check::new(format!("day-tensor {f} {g}"));
    absorb(&mut check, &validate_target_functor(t, &conv));
    for x in m.base.objects() {
        check.values.push((m.base.obj_label(x).to_string(), conv.obj[x].to_string()));
    }
    check.elapsed = Some(start.elapsed());
    Ok(check)
}

fn enumerate(m: &SymMonoidalStructure, t: &FinSet, bound: usize) -> Result<Check, CliError> {
    let start = Instant::now();
    let day = DayStructure::new(m, t.clone())?;
    let en = enumerate_structures(&day, bound)?;
    let mut check = Check::new(format!("enumerate {}", m.name))
        .value("carriers", en.carriers.len())
        .value("monoids", en.monoids.len())
        .value("lax", en.lax.len());
    let r = certify_correspondence(&day, &en)?;
    absorb(&mut check, &r);
    if r.is_empty() {
        check = check.certificate(format!("bijection certified on {} pairs", en.monoids.len()));
    }
    check.elapsed = Some(start.elapsed());
    Ok(check)
}
