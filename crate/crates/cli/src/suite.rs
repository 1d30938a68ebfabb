//! The certification suite behind `verify-theorems`.

use std::sync::Arc;
use std::time::Instant;

use dayconv_core::cocomplete::{
    check_universality, identity_nat, left_kan_extension, FinFn, FinSet, Target, TargetFunctor,
};
use dayconv_core::day::{
    basic_generators, build_day_fibration, check_bilinearity, check_pushforward_is_kan, representable, DayStructure,
    FunctorDiagram,
};
use dayconv_core::error::Error;
use dayconv_core::fincat::{discrete_category, poset_category, validate_category, FinCategory};
use dayconv_core::grothendieck::{build_tensor_fibration, pushforward_functor, validate_cocartesian_fibration};
use dayconv_core::laxmon::{certify_correspondence, enumerate_structures};
use dayconv_core::monoidal::{corpus, validate_monoidal, PointedSkeleton, SymMonoidalStructure};
use dayconv_core::report::ValidationReport;
use dayconv_core::yoneda::{
    check_fiberwise_hom, check_representable_convolution, check_representable_pairs, check_slice_finality,
    fiberwise_hom, yoneda_embedding, PresheafCategory,
};

use crate::error::CliError;
use crate::report::Check;

/// Largest arity each structure is certified at.
pub fn arity_cap(m: &SymMonoidalStructure, requested: usize, pushforward: bool) -> usize {
    match (m.name.as_str(), pushforward) {
        ("Div12", true) => requested.min(1),
        ("Div12", false) => requested.min(2),
        (_, true) => requested.min(2),
        _ => requested.min(3),
    }
}

pub struct SuiteOptions {
    pub max_n: usize,
    pub carrier_bound: usize,
}

/// Runs `body`, timing it; engine errors other than the ceiling become
/// failures of the check.
fn timed(name: String, body: impl FnOnce(&mut Check) -> Result<(), Error>) -> Result<Check, CliError> {
    let mut check = Check::new(name);
    let start = Instant::now();
    match body(&mut check) {
        Ok(()) => {}
        Err(e) if e.is_resource() => return Err(e.into()),
        Err(e) => check.fail(e.to_string()),
    }
    check.elapsed = Some(start.elapsed());
    Ok(check)
}

pub fn absorb(check: &mut Check, report: &ValidationReport) {
    for f in &report.findings {
        check.fail(format!("{}: {}", f.check, f.witness));
    }
}

fn graded(c: &Arc<FinCategory>, t: &FinSet, sizes: &[usize]) -> TargetFunctor<FinSet> {
    TargetFunctor::new(c.clone(), sizes.to_vec(), sizes.iter().map(|s| t.identity(s)).collect())
}

pub fn coherence(m: &SymMonoidalStructure) -> Result<Check, CliError> {
    timed(format!("coherence/{}", m.name), |c| {
        absorb(c, &validate_category(&m.base));
        absorb(c, &validate_monoidal(m));
        Ok(())
    })
}

pub fn tensor_fibration(m: &SymMonoidalStructure, max_n: usize) -> Result<Check, CliError> {
    let n = arity_cap(m, max_n, false);
    timed(format!("fibration/tensor/{}", m.name), |c| {
        let tf = build_tensor_fibration(m, &PointedSkeleton::new(n))?;
        absorb(c, &validate_cocartesian_fibration(&tf.fibration));
        c.certificates.push(format!("arities up to {n}"));
        Ok(())
    })
}

pub fn verify_theorems(t: &FinSet, opts: &SuiteOptions, extra: &[SymMonoidalStructure]) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let mut all = corpus::corpus();
    all.extend(extra.iter().cloned());

    for m in &all {
        checks.push(coherence(m)?);
    }

    let z2 = corpus::z2();
    checks.push(timed("day-formula/worked-example".into(), |c| {
        let day = DayStructure::new(&z2, t.clone())?;
        let (f, g) = ([2, 3], [1, 4]);
        let conv = day.day_tensor(&graded(day.base(), t, &f), &graded(day.base(), t, &g))?;
        let mut expected = [0; 2];
        for i in 0..2 {
            for j in 0..2 {
                expected[(i + j) % 2] += f[i] * g[j];
            }
        }
        if conv.obj != expected {
            c.fail(format!("convolution {:?}, graded sum {expected:?}", conv.obj));
        }
        for (x, v) in conv.obj.iter().enumerate() {
            c.values.push((x.to_string(), v.to_string()));
        }
        Ok(())
    })?);
    for m in [corpus::z2(), corpus::z3()] {
        let n = opts.max_n.min(2);
        checks.push(timed(format!("day-formula/{}", m.name), |c| {
            let day = Arc::new(DayStructure::new(&m, t.clone())?);
            let df = build_day_fibration(&day, &basic_generators(&day), &PointedSkeleton::new(n), 16)?;
            absorb(c, &check_pushforward_is_kan(&df)?);
            c.certificates.push(format!("{} edges against the Kan formula, arities up to {n}", df.fibration().total.num_morphisms()));
            Ok(())
        })?);
    }

    for m in &all {
        checks.push(tensor_fibration(m, opts.max_n)?);
    }
    for m in corpus::corpus() {
        let n = arity_cap(&m, opts.max_n, false);
        checks.push(timed(format!("fibration/day/{}", m.name), |c| {
            let day = Arc::new(DayStructure::new(&m, t.clone())?);
            let df = build_day_fibration(&day, &basic_generators(&day), &PointedSkeleton::new(n), 16)?;
            absorb(c, &validate_cocartesian_fibration(df.fibration()));
            c.certificates.push(format!("{} representatives, arities up to {n}", df.category.len()));
            Ok(())
        })?);
    }

    for m in [corpus::z2(), corpus::z3()] {
        checks.push(timed(format!("laxmon/{}", m.name), |c| {
            let day = DayStructure::new(&m, t.clone())?;
            let en = enumerate_structures(&day, opts.carrier_bound)?;
            c.values.push(("carriers".into(), en.carriers.len().to_string()));
            c.values.push(("monoids".into(), en.monoids.len().to_string()));
            c.values.push(("lax".into(), en.lax.len().to_string()));
            let r = certify_correspondence(&day, &en)?;
            absorb(c, &r);
            if r.is_empty() {
                c.certificates.push("bijection with identity round trips up to canonical iso".into());
            }
            Ok(())
        })?);
    }

    for (name, d) in bilinearity_diagrams(t) {
        checks.push(timed(format!("bilinearity/{name}"), |c| {
            let day = DayStructure::new(&z2, t.clone())?;
            for sizes in [[1, 0], [2, 3], [0, 2]] {
                let g = graded(day.base(), t, &sizes);
                absorb(c, &check_bilinearity(&day, &d, &g)?.prefixed(&format!("G={sizes:?}")));
            }
            Ok(())
        })?);
    }

    for m in [corpus::z3(), corpus::divisors12()] {
        checks.push(timed(format!("yoneda/pairs/{}", m.name), |c| {
            let p = PresheafCategory::new(&m, t.clone())?;
            absorb(c, &check_representable_pairs(&p)?);
            Ok(())
        })?);
        checks.push(timed(format!("yoneda/representable/{}", m.name), |c| {
            let p = PresheafCategory::new(&m, t.clone())?;
            let k = m.n();
            let mut tuples = 0;
            for n in 0..=3usize {
                for code in 0..k.pow(n as u32) {
                    let zs = dayconv_core::fincat::decode_tuple(code, k, n);
                    absorb(c, &check_representable_convolution(&p, &zs)?);
                    tuples += 1;
                }
            }
            c.certificates.push(format!("{tuples} tuples of length 0 to 3"));
            Ok(())
        })?);
    }
    for m in corpus::corpus() {
        let n = arity_cap(&m, 2, false);
        checks.push(timed(format!("yoneda/final/{}", m.name), |c| {
            let tf = build_tensor_fibration(&m, &PointedSkeleton::new(n))?;
            absorb(c, &check_slice_finality(&tf.fibration)?);
            Ok(())
        })?);
    }
    for m in [corpus::z3(), corpus::chain2(), corpus::super_z2()] {
        checks.push(timed(format!("yoneda/embedding/{}", m.name), |c| {
            let y = yoneda_embedding(&m, &PointedSkeleton::new(opts.max_n.min(2)), 16)?;
            absorb(c, &y.certify());
            Ok(())
        })?);
    }

    for m in corpus::corpus() {
        let n = arity_cap(&m, opts.max_n, true);
        checks.push(timed(format!("pushforward/{}", m.name), |c| {
            let tf = build_tensor_fibration(&m, &PointedSkeleton::new(n))?;
            let pf = pushforward_functor(&tf.fibration)?;
            absorb(c, &pf.validate(&tf.fibration));
            absorb(c, &check_fiberwise_hom(&fiberwise_hom(&tf.fibration), &pf)?);
            c.certificates.push(format!("arities up to {n}"));
            Ok(())
        })?);
    }

    for m in [corpus::z2(), corpus::z3(), corpus::chain2(), corpus::walking_arrow_max()] {
        checks.push(timed(format!("kan/{}", m.name), |c| {
            let day = DayStructure::new(&m, t.clone())?;
            let k = day.tensor_power(2);
            for x in m.base.objects() {
                let f = day.external_product(&[&representable(&m.base, x), &representable(&m.base, m.unit)])?;
                let lan = left_kan_extension(t, &f, &k)?;
                for b in m.base.objects() {
                    absorb(c, &check_universality(t, &lan.diagrams[b], &lan.colimits[b], 100_000)?);
                }
            }
            Ok(())
        })?);
    }
    Ok(checks)
}

/// Empty, coproduct and pushout diagrams of `Z2`-graded sets.
pub fn bilinearity_diagrams(t: &FinSet) -> Vec<(&'static str, FunctorDiagram<FinSet>)> {
    let day = DayStructure::new(&corpus::z2(), t.clone()).expect("Z2 is valid");
    let c = day.base().clone();
    let empty = FunctorDiagram {
        shape: Arc::new(discrete_category("empty", 0)),
        functors: vec![],
        maps: vec![],
    };
    let (a, b) = (graded(&c, t, &[2, 1]), graded(&c, t, &[1, 3]));
    let coproduct = FunctorDiagram {
        shape: Arc::new(discrete_category("two", 2)),
        maps: vec![identity_nat(t, &a), identity_nat(t, &b)],
        functors: vec![a, b],
    };
    let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let shape = Arc::new(poset_category("span", &labels, |i, j| i == j || i == 0));
    let (fa, fb, fc) = (graded(&c, t, &[2, 1]), graded(&c, t, &[2, 2]), graded(&c, t, &[1, 3]));
    let ab = vec![FinFn::new(2, vec![0, 1]), FinFn::new(2, vec![1])];
    let ac = vec![FinFn::new(1, vec![0, 0]), FinFn::new(3, vec![2])];
    let maps = shape
        .morphisms()
        .map(|m| match (shape.source(m), shape.target(m)) {
            (0, 1) => ab.clone(),
            (0, 2) => ac.clone(),
            (0, 0) => identity_nat(t, &fa),
            (1, 1) => identity_nat(t, &fb),
            _ => identity_nat(t, &fc),
        })
        .collect();
    let pushout = FunctorDiagram {
        shape,
        functors: vec![fa, fb, fc],
        maps,
    };
    vec![("empty", empty), ("coproduct", coproduct), ("pushout", pushout)]
}
