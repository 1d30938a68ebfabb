//! From declarations to engine structures: name resolution and validation.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dayconv_core::cocomplete::{compose_nat, validate_target_functor, FinFn, FinSet, Target, TargetFunctor};
use dayconv_core::day::FunctorDiagram;
use dayconv_core::fincat::{opposite_category, validate_category, CategoryBuilder, FinCategory, MorId, ObjId};
use dayconv_core::monoidal::{corpus, validate_monoidal, SymMonoidalStructure};
use dayconv_core::report::ValidationReport;

use crate::error::{CliError, Pos};
use crate::spec::{
    parse_document, ArrowRef, CategoryDecl, Decl, DiagramDecl, FunctorDecl, Located, MonoidalBody, MonoidalDecl,
    SpecDocument, TensorSpec, Variance,
};

#[derive(Clone, Debug)]
pub struct FunctorEntry {
    /// Name of the category (or monoidal structure) it is declared on.
    pub on: String,
    pub variance: Variance,
    /// On the category itself, or on its opposite for presheaves.
    pub functor: TargetFunctor<FinSet>,
}

#[derive(Clone, Debug)]
pub struct DiagramEntry {
    pub on: String,
    pub variance: Variance,
    pub diagram: FunctorDiagram<FinSet>,
}

/// Everything a document declares, resolved and validated.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub monoidals: BTreeMap<String, SymMonoidalStructure>,
    pub functors: BTreeMap<String, FunctorEntry>,
    pub diagrams: BTreeMap<String, DiagramEntry>,
    /// Declaration order, for reports.
    pub order: Vec<(&'static str, String)>,
}

/// Parse, resolve and validate.
pub fn parse_spec(text: &str, target: &FinSet) -> Result<(SpecDocument, Workspace), CliError> {
    let doc = parse_document(text)?;
    let ws = resolve(&doc, target)?;
    Ok((doc, ws))
}

pub fn resolve(doc: &SpecDocument, target: &FinSet) -> Result<Workspace, CliError> {
    let mut ws = Workspace::default();
    let mut seen: HashMap<(&'static str, String), Pos> = HashMap::new();
    for decl in &doc.decls {
        let kind = match decl {
            Decl::Category(_) => "category",
            Decl::Monoidal(_) => "monoidal",
            Decl::Functor(_) => "functor",
            Decl::Diagram(_) => "diagram",
        };
        let n = decl.name();
        if let Some(prev) = seen.insert((kind, n.value.clone()), n.pos) {
            return Err(CliError::validation(n.pos, format!("{kind} `{}` already declared at {prev}", n.value)));
        }
        match decl {
            Decl::Category(d) => {
                let c = build_category(d)?;
                ws.categories.insert(d.name.value.clone(), Arc::new(c));
            }
            Decl::Monoidal(d) => {
                let m = build_monoidal(d, &ws)?;
                ws.categories.entry(d.name.value.clone()).or_insert_with(|| m.base.clone());
                ws.monoidals.insert(d.name.value.clone(), m);
            }
            Decl::Functor(d) => {
                let f = build_functor(d, &ws, target)?;
                ws.functors.insert(d.name.value.clone(), f);
            }
            Decl::Diagram(d) => {
                let dg = build_diagram(d, &ws, target)?;
                ws.diagrams.insert(d.name.value.clone(), dg);
            }
        }
        ws.order.push((kind, n.value.clone()));
    }
    Ok(ws)
}

fn first_finding(r: &ValidationReport) -> String {
    r.to_string().lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim().to_string()
}

fn build_category(d: &CategoryDecl) -> Result<FinCategory, CliError> {
    let at = d.name.pos;
    let n = d.objects;
    let bad_obj = |x: usize| CliError::validation(at, format!("category `{}`: object {x} out of range ({n} objects)", d.name.value));
    if d.discrete && (!d.arrows.is_empty() || !d.order.is_empty()) {
        return Err(CliError::validation(at, format!("category `{}` is discrete but declares arrows", d.name.value)));
    }
    if !d.order.is_empty() && !d.arrows.is_empty() {
        return Err(CliError::validation(at, format!("category `{}` mixes `order` with named arrows", d.name.value)));
    }
    let mut b = CategoryBuilder::new(d.name.value.clone());
    for x in 0..n {
        b.add_object(x.to_string());
    }
    for x in 0..n {
        b.add_morphism(format!("id{x}"), x, x);
    }
    let identities: Vec<MorId> = (0..n).collect();
    if !d.order.is_empty() {
        let mut leq = vec![vec![false; n]; n];
        for &(a, c) in &d.order {
            if a >= n || c >= n {
                return Err(bad_obj(a.max(c)));
            }
            leq[a][c] = true;
        }
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let mut id_of = HashMap::new();
        for i in 0..n {
            id_of.insert((i, i), i);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    if leq[j][i] {
                        return Err(CliError::validation(
                            at,
                            format!("category `{}`: order has a cycle through {i} and {j}", d.name.value),
                        ));
                    }
                    id_of.insert((i, j), b.add_morphism(format!("{i}->{j}"), i, j));
                }
            }
        }
        let ends: Vec<(usize, usize)> = {
            let mut v = vec![(0, 0); id_of.len()];
            for (&e, &m) in &id_of {
                v[m] = e;
            }
            v
        };
        return Ok(b.build(identities, |g, f| id_of.get(&(ends[f].0, ends[g].1)).copied())?);
    }
    let mut names: HashMap<String, MorId> = HashMap::new();
    let mut ends: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    for a in &d.arrows {
        if a.source >= n || a.target >= n {
            return Err(bad_obj(a.source.max(a.target)));
        }
        if names.contains_key(&a.name.value) {
            return Err(CliError::validation(a.name.pos, format!("arrow `{}` declared twice", a.name.value)));
        }
        names.insert(a.name.value.clone(), b.add_morphism(a.name.value.clone(), a.source, a.target));
        ends.push((a.source, a.target));
    }
    let lookup = |r: &Located<ArrowRef>| -> Result<MorId, CliError> {
        match &r.value {
            ArrowRef::Name(s) => names.get(s).copied().ok_or_else(|| CliError::unresolved(r.pos, "arrow", s)),
            ArrowRef::Between(a, c) => {
                let found: Vec<MorId> = (n..ends.len()).filter(|&m| ends[m] == (*a, *c)).collect();
                match found.as_slice() {
                    [m] => Ok(*m),
                    [] if a == c && *a < n => Ok(*a),
                    [] => Err(CliError::unresolved(r.pos, "arrow", r.value.to_string())),
                    _ => Err(CliError::validation(r.pos, format!("`{}` is ambiguous; name the arrow", r.value))),
                }
            }
        }
    };
    let mut table = HashMap::new();
    for [g, f, h] in &d.compose {
        let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(h)?);
        if ends[fi].1 != ends[gi].0 || ends[hi] != (ends[fi].0, ends[gi].1) {
            return Err(CliError::validation(g.pos, format!("`compose {} {} = {}` does not typecheck", g.value, f.value, h.value)));
        }
        if table.insert((gi, fi), hi).is_some_and(|prev| prev != hi) {
            return Err(CliError::validation(g.pos, format!("composite of {} and {} given twice", g.value, f.value)));
        }
    }
    let c = b.build(identities, |g, f| {
        if g < n {
            Some(f)
        } else if f < n {
            Some(g)
        } else {
            table.get(&(g, f)).copied()
        }
    })?;
    let report = validate_category(&c);
    if !report.is_empty() {
        return Err(CliError::validation(at, format!("category `{}`: {}", d.name.value, first_finding(&report))));
    }
    Ok(c)
}

fn build_monoidal(d: &MonoidalDecl, ws: &Workspace) -> Result<SymMonoidalStructure, CliError> {
    let at = d.name.pos;
    let fail = |msg: String| CliError::validation(at, format!("monoidal `{}`: {msg}", d.name.value));
    let (tensor, unit) = match &d.body {
        MonoidalBody::Builtin(b) => {
            let mut m = corpus::by_name(&b.value).ok_or_else(|| CliError::unresolved(b.pos, "builtin structure", &b.value))?;
            m.name = d.name.value.clone();
            return Ok(m);
        }
        MonoidalBody::Tables { tensor, unit } => (tensor, *unit),
    };
    let on = d.on.clone().unwrap_or_else(|| d.name.clone());
    let c = ws
        .categories
        .get(&on.value)
        .ok_or_else(|| CliError::unresolved(on.pos, "category", &on.value))?
        .clone();
    let n = c.num_objects();
    if unit >= n {
        return Err(fail(format!("unit {unit} out of range")));
    }
    if c.objects().any(|a| c.objects().any(|b| c.hom(a, b).len() > 1)) {
        return Err(fail("tensor tables need a category with at most one arrow between two objects".into()));
    }
    let leq = |a: ObjId, b: ObjId| !c.hom(a, b).is_empty();
    let bound = |a: ObjId, b: ObjId, upper: bool| -> Option<ObjId> {
        let cands: Vec<ObjId> = c
            .objects()
            .filter(|&u| if upper { leq(a, u) && leq(b, u) } else { leq(u, a) && leq(u, b) })
            .collect();
        cands
            .iter()
            .copied()
            .find(|&u| cands.iter().all(|&v| if upper { leq(u, v) } else { leq(v, u) }))
    };
    let mut obj = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            obj[a * n + b] = match tensor {
                TensorSpec::AdditionMod(k) => {
                    if *k != n {
                        return Err(fail(format!("addition-mod {k} on {n} objects")));
                    }
                    (a + b) % k
                }
                TensorSpec::Join | TensorSpec::Meet => {
                    let upper = matches!(tensor, TensorSpec::Join);
                    bound(a, b, upper)
                        .ok_or_else(|| fail(format!("no {} of {a} and {b}", if upper { "join" } else { "meet" })))?
                }
                TensorSpec::Table(xs) => {
                    if xs.len() != n * n {
                        return Err(fail(format!("table has {} entries, expected {}", xs.len(), n * n)));
                    }
                    if xs[a * n + b] >= n {
                        return Err(fail(format!("table entry {} out of range", xs[a * n + b])));
                    }
                    xs[a * n + b]
                }
            };
        }
    }
    let t = |a: ObjId, b: ObjId| obj[a * n + b];
    let nm = c.num_morphisms();
    let mut mor = vec![0; nm * nm];
    for f in c.morphisms() {
        for g in c.morphisms() {
            let (s, e) = (t(c.source(f), c.source(g)), t(c.target(f), c.target(g)));
            mor[f * nm + g] = *c
                .hom(s, e)
                .first()
                .ok_or_else(|| fail(format!("tensor is not functorial on {} and {}", c.mor_label(f), c.mor_label(g))))?;
        }
    }
    for a in 0..n {
        if t(unit, a) != a || t(a, unit) != a {
            return Err(fail(format!("{unit} is not a unit at {a}")));
        }
        for b in 0..n {
            if t(a, b) != t(b, a) {
                return Err(fail(format!("tensor is not commutative at ({a}, {b})")));
            }
            for x in 0..n {
                if t(t(a, b), x) != t(a, t(b, x)) {
                    return Err(fail(format!("tensor is not associative at ({a}, {b}, {x})")));
                }
            }
        }
    }
    let m = SymMonoidalStructure::new(
        d.name.value.clone(),
        c.clone(),
        t,
        |f, g| mor[f * nm + g],
        unit,
        |a, b, x| c.identity(t(t(a, b), x)),
        |a| c.identity(a),
        |a| c.identity(a),
        |a, b| c.identity(t(a, b)),
    );
    let report = validate_monoidal(&m);
    if !report.is_empty() {
        return Err(fail(first_finding(&report)));
    }
    Ok(m)
}

fn lookup_arrow(c: &FinCategory, r: &Located<ArrowRef>) -> Result<MorId, CliError> {
    match &r.value {
        ArrowRef::Name(s) => c.find_morphism(s).ok_or_else(|| CliError::unresolved(r.pos, "arrow", s)),
        ArrowRef::Between(a, b) => {
            if *a >= c.num_objects() || *b >= c.num_objects() {
                return Err(CliError::unresolved(r.pos, "arrow", r.value.to_string()));
            }
            match c.hom(*a, *b) {
                [m] => Ok(*m),
                [] => Err(CliError::unresolved(r.pos, "arrow", r.value.to_string())),
                _ => Err(CliError::validation(r.pos, format!("`{}` is ambiguous; name the arrow", r.value))),
            }
        }
    }
}

/// Fill in identities and every composite reachable from the given maps.
fn close_under_composition<M: Clone>(
    c: &FinCategory,
    maps: &mut [Option<M>],
    identity: impl Fn(ObjId) -> M,
    compose: impl Fn(&M, &M) -> M,
) {
    for x in c.objects() {
        maps[c.identity(x)].get_or_insert_with(|| identity(x));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for g in c.morphisms() {
            for &f in c.incoming(c.source(g)) {
                let h = c.comp(g, f);
                if maps[h].is_none() {
                    if let (Some(mg), Some(mf)) = (&maps[g], &maps[f]) {
                        maps[h] = Some(compose(mg, mf));
                        changed = true;
                    }
                }
            }
        }
    }
}

fn base_of(ws: &Workspace, on: &Located<String>) -> Result<Arc<FinCategory>, CliError> {
    if let Some(m) = ws.monoidals.get(&on.value) {
        return Ok(m.base.clone());
    }
    ws.categories
        .get(&on.value)
        .cloned()
        .ok_or_else(|| CliError::unresolved(on.pos, "category", &on.value))
}

fn build_functor(d: &FunctorDecl, ws: &Workspace, target: &FinSet) -> Result<FunctorEntry, CliError> {
    let at = d.name.pos;
    let fail = |msg: String| CliError::validation(at, format!("functor `{}`: {msg}", d.name.value));
    let base = base_of(ws, &d.on)?;
    if d.values.len() != base.num_objects() {
        return Err(fail(format!("{} values for {} objects", d.values.len(), base.num_objects())));
    }
    let mut maps: Vec<Option<FinFn>> = vec![None; base.num_morphisms()];
    for (r, xs) in &d.maps {
        let m = lookup_arrow(&base, r)?;
        let (a, b) = match d.variance {
            Variance::Covariant => (base.source(m), base.target(m)),
            Variance::Contravariant => (base.target(m), base.source(m)),
        };
        if xs.len() != d.values[a] || xs.iter().any(|&x| x >= d.values[b]) {
            return Err(CliError::validation(
                r.pos,
                format!("map of `{}` is not a function from {} to {} elements", r.value, d.values[a], d.values[b]),
            ));
        }
        maps[m] = Some(FinFn::new(d.values[b], xs.clone()));
    }
    let source = match d.variance {
        Variance::Covariant => base.clone(),
        Variance::Contravariant => Arc::new(opposite_category(&base)),
    };
    close_under_composition(&source, &mut maps, |x| target.identity(&d.values[x]), |g, f| target.compose(g, f));
    let mor = maps
        .into_iter()
        .enumerate()
        .map(|(m, f)| f.ok_or_else(|| fail(format!("no map given for arrow {}", base.mor_label(m)))))
        .collect::<Result<Vec<_>, _>>()?;
    let functor = TargetFunctor::new(source, d.values.clone(), mor);
    let report = validate_target_functor(target, &functor);
    if !report.is_empty() {
        return Err(fail(first_finding(&report)));
    }
    Ok(FunctorEntry {
        on: d.on.value.clone(),
        variance: d.variance,
        functor,
    })
}

fn build_diagram(d: &DiagramDecl, ws: &Workspace, target: &FinSet) -> Result<DiagramEntry, CliError> {
    let at = d.name.pos;
    let fail = |msg: String| CliError::validation(at, format!("diagram `{}`: {msg}", d.name.value));
    let base = base_of(ws, &d.on)?;
    let shape = ws
        .categories
        .get(&d.shape.value)
        .cloned()
        .ok_or_else(|| CliError::unresolved(d.shape.pos, "category", &d.shape.value))?;
    let mut functors: Vec<Option<FunctorEntry>> = vec![None; shape.num_objects()];
    for (k, fname) in &d.at {
        let slot = functors.get_mut(*k).ok_or_else(|| fail(format!("shape has no object {k}")))?;
        let f = ws
            .functors
            .get(&fname.value)
            .ok_or_else(|| CliError::unresolved(fname.pos, "functor", &fname.value))?;
        if !Arc::ptr_eq(&base_of(ws, &Located::new(f.on.clone(), fname.pos))?, &base) {
            return Err(CliError::validation(fname.pos, format!("functor `{}` is not on `{}`", fname.value, d.on.value)));
        }
        if slot.replace(f.clone()).is_some() {
            return Err(fail(format!("object {k} assigned twice")));
        }
    }
    let functors = functors
        .into_iter()
        .enumerate()
        .map(|(k, f)| f.ok_or_else(|| fail(format!("no functor at object {k}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let variance = functors.first().map_or(Variance::Covariant, |f| f.variance);
    if functors.iter().any(|f| f.variance != variance) {
        return Err(fail("mixes functors and presheaves".into()));
    }
    let mut maps: Vec<Option<Vec<FinFn>>> = vec![None; shape.num_morphisms()];
    for (r, comps) in &d.maps {
        let m = lookup_arrow(&shape, r)?;
        let (fa, fb) = (&functors[shape.source(m)].functor, &functors[shape.target(m)].functor);
        if comps.len() != base.num_objects() {
            return Err(CliError::validation(r.pos, format!("{} components for {} objects", comps.len(), base.num_objects())));
        }
        let mut nat = Vec::with_capacity(comps.len());
        for (x, xs) in comps.iter().enumerate() {
            if xs.len() != fa.obj[x] || xs.iter().any(|&v| v >= fb.obj[x]) {
                return Err(CliError::validation(
                    r.pos,
                    format!("component {x} of `{}` is not a function from {} to {} elements", r.value, fa.obj[x], fb.obj[x]),
                ));
            }
            nat.push(FinFn::new(fb.obj[x], xs.clone()));
        }
        maps[m] = Some(nat);
    }
    close_under_composition(
        &shape,
        &mut maps,
        |k| functors[k].functor.obj.iter().map(|s| target.identity(s)).collect(),
        |g, f| compose_nat(target, g, f),
    );
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(m, f)| f.ok_or_else(|| fail(format!("no map given for shape arrow {}", shape.mor_label(m)))))
        .collect::<Result<Vec<_>, _>>()?;
    let diagram = FunctorDiagram {
        shape,
        functors: functors.iter().map(|f| f.functor.clone()).collect(),
        maps,
    };
    let report = diagram.validate(target);
    if !report.is_empty() {
        return Err(fail(first_finding(&report)));
    }
    Ok(DiagramEntry {
        on: d.on.value.clone(),
        variance,
        diagram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Workspace, CliError> {
        parse_spec(text, &FinSet::default()).map(|(_, ws)| ws)
    }

    #[test]
    fn bundled_syntax_gives_a_validated_structure() {
        let ws = load("category Z2 { objects: 2; discrete }\nmonoidal Z2 { tensor: addition-mod 2; unit: 0 }").unwrap();
        assert_eq!(ws.monoidals.len(), 1);
        let m = &ws.monoidals["Z2"];
        assert_eq!(m.tensor_obj(1, 1), 0);
        assert!(validate_monoidal(m).is_empty());
    }

    #[test]
    fn poset_join_matches_bundled_lattice() {
        let ws = load("category D { objects: 6; order: 0<1, 0<2, 1<3, 1<4, 2<4, 3<5, 4<5 }\nmonoidal D { tensor: join; unit: 0 }").unwrap();
        let m = &ws.monoidals["D"];
        let bundled = corpus::divisors12();
        assert_eq!(m.base.num_morphisms(), bundled.base.num_morphisms());
        // lcm(4, 6) = 12 in the bundled labelling 1,2,3,4,6,12
        assert_eq!(m.tensor_obj(3, 4), 5);
    }

    #[test]
    fn unresolved_reference_names_it() {
        let err = load("monoidal M on Nowhere { tensor: join; unit: 0 }").unwrap_err();
        assert_eq!(err.code(), "E-UNRESOLVED");
        assert_eq!(err.to_string(), "1:15: unresolved reference: category `Nowhere` is not declared");
        let err = load("category C { objects: 1 }\nfunctor F on C { values: 1; arrow g: 0 }").unwrap_err();
        assert!(err.to_string().contains("arrow `g`"), "{err}");
        let err = load("monoidal S { builtin: Nope }").unwrap_err();
        assert_eq!(err.code(), "E-UNRESOLVED");
    }

    #[test]
    fn validation_failures() {
        let ws = load("category Z2 { objects: 2; discrete }\nmonoidal Z2 { tensor: table 0 1 1 1; unit: 0 }").unwrap();
        assert_eq!(ws.monoidals["Z2"].tensor_obj(1, 1), 1);
        for (text, needle) in [
            ("category Z2 { objects: 2; discrete }\nmonoidal Z2 { tensor: addition-mod 3; unit: 0 }", "addition-mod 3"),
            ("category Z2 { objects: 2; discrete }\nmonoidal Z2 { tensor: table 1 0 0 1; unit: 0 }", "not a unit"),
            ("category Z2 { objects: 2; discrete }\nmonoidal Z2 { tensor: table 0 1 0 1; unit: 0 }", "not commutative"),
            ("category C { objects: 2; arrow f: 0 -> 1 }\nfunctor F on C { values: 2 1 }", "no map given"),
            ("category C { objects: 2; arrow f: 0 -> 1 }\nfunctor F on C { values: 2 1; arrow f: 0 1 }", "not a function"),
            ("category C { objects: 2; order: 0 < 1, 1 < 0 }", "cycle"),
            ("category C { objects: 1; arrow e: 0 -> 0 }", "category `C`"),
            ("category C { objects: 1 }\ncategory C { objects: 2 }", "already declared"),
        ] {
            let err = load(text).unwrap_err();
            assert_eq!(err.code(), "E-VALIDATION", "{text}: {err}");
            assert!(err.to_string().contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn functors_presheaves_and_diagrams() {
        let ws = load(
            "category C { objects: 2; arrow f: 0 -> 1 }
functor F on C { values: 2 1; arrow f: 0 0 }
presheaf P on C { values: 1 2; arrow f: 0 0 }
category K { objects: 2; order: 0 < 1 }
functor G on C { values: 2 2; arrow f: 1 1 }
diagram D on C { shape: K; at 0: F; at 1: G; map 0 -> 1: 1 0 | 1 }",
        )
        .unwrap();
        assert_eq!(ws.functors["P"].functor.mor[2], FinFn::new(1, vec![0, 0]));
        assert_eq!(ws.diagrams["D"].diagram.maps.len(), 3);
        let err = load(
            "category C { objects: 2; arrow f: 0 -> 1 }
functor F on C { values: 2 1; arrow f: 0 0 }
functor G on C { values: 2 2; arrow f: 1 1 }
category K { objects: 2; order: 0 < 1 }
diagram D on C { shape: K; at 0: F; at 1: G; map 0 -> 1: 0 1 | 0 }",
        )
        .unwrap_err();
        assert!(err.to_string().contains("diagram `D`"), "{err}");
    }

    #[test]
    fn composites_follow_from_generators() {
        let ws = load(
            "category C { objects: 3; arrow f: 0 -> 1; arrow g: 1 -> 2; arrow h: 0 -> 2; compose g f = h }
functor F on C { values: 1 1 1; arrow f: 0; arrow g: 0 }",
        )
        .unwrap();
        assert_eq!(ws.functors["F"].functor.mor.len(), 6);
    }
}
