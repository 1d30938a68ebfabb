//! Acceptance criteria, each run in sequence against its time budget.
//!
//! Every criterion prints one line; the binary exits nonzero if any fails.
//! Reference values come from small oracles written here, independent of
//! the engine: graded convolution sums, hom-set counts, pushout sizes, and
//! a brute-force check of the universal property of left Kan extensions.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use dayconv_core::cocomplete::{identity_nat, left_kan_extension, FinFn, FinSet, Target, TargetFunctor};
use dayconv_core::day::{
    basic_generators, build_day_fibration, check_bilinearity, check_pushforward_is_kan, functor_colimit,
    DayStructure, FunctorDiagram,
};
use dayconv_core::fincat::{
    decode_tuple, discrete_category, ordinal, poset_category, terminal_category, validate_category, FinCategory,
    Functor,
};
use dayconv_core::grothendieck::{build_tensor_fibration, pushforward_functor, validate_cocartesian_fibration};
use dayconv_core::laxmon::{certify_correspondence, enumerate_structures};
use dayconv_core::monoidal::{corpus, validate_monoidal, PointedSkeleton, SymMonoidalStructure};
use dayconv_core::yoneda::{
    check_representable_convolution, check_representable_pairs, check_slice_finality, PresheafCategory,
};
use dayconv_core::ValidationReport;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(r: &ValidationReport, what: &str) -> Result<(), String> {
    ensure(r.is_empty(), || format!("{what}: {r}"))
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn graded(c: &Arc<FinCategory>, sizes: &[usize]) -> TargetFunctor<FinSet> {
    let t = FinSet::default();
    TargetFunctor::new(c.clone(), sizes.to_vec(), sizes.iter().map(|s| t.identity(s)).collect())
}

/// Sizes of the convolution of `Z/n`-graded sets.
fn graded_convolution(n: usize, factors: &[Vec<usize>]) -> Vec<usize> {
    let mut acc = vec![0; n];
    acc[0] = 1;
    for f in factors {
        let mut next = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                next[(i + j) % n] += acc[i] * f[j];
            }
        }
        acc = next;
    }
    acc
}

// ---------------------------------------------------------------------------
// 1. coherence
// ---------------------------------------------------------------------------

fn coherence() -> Outcome {
    let all = corpus::corpus();
    for m in &all {
        clean(&validate_category(&m.base), &format!("{} category", m.name))?;
        clean(&validate_monoidal(m), &format!("{} monoidal", m.name))?;
        // the object part is a commutative monoid with unit
        let c = &m.base;
        for x in c.objects() {
            ensure(m.tensor_obj(m.unit, x) == x && m.tensor_obj(x, m.unit) == x, || {
                format!("{}: unit law fails at {x}", m.name)
            })?;
            for y in c.objects() {
                ensure(m.tensor_obj(x, y) == m.tensor_obj(y, x), || format!("{}: {x}⊗{y} not symmetric", m.name))?;
                for z in c.objects() {
                    ensure(
                        m.tensor_obj(m.tensor_obj(x, y), z) == m.tensor_obj(x, m.tensor_obj(y, z)),
                        || format!("{}: objects not associative at {x},{y},{z}", m.name),
                    )?;
                }
            }
        }
        // ⊗ preserves composition
        for f in c.morphisms() {
            for &f2 in c.outgoing(c.target(f)) {
                for g in c.morphisms() {
                    for &g2 in c.outgoing(c.target(g)) {
                        let lhs = m.tensor_mor(c.comp(f2, f), c.comp(g2, g));
                        let rhs = c.comp(m.tensor_mor(f2, g2), m.tensor_mor(f, g));
                        ensure(lhs == rhs, || format!("{}: tensor is not functorial", m.name))?;
                    }
                }
            }
        }
    }
    Ok(format!("{} structures", all.len()))
}

// ---------------------------------------------------------------------------
// 2. Day formula
// ---------------------------------------------------------------------------

fn day_formula() -> Outcome {
    let t = FinSet::default();
    let z2 = corpus::z2();
    let day = ok(DayStructure::new(&z2, t.clone()), "Z2")?;
    let (f, g) = (vec![2, 3], vec![1, 4]);
    let conv = ok(day.day_tensor(&graded(day.base(), &f), &graded(day.base(), &g)), "worked example")?;
    let expected = graded_convolution(2, &[f, g]);
    ensure(conv.obj == expected, || format!("worked example {:?}, oracle {expected:?}", conv.obj))?;
    ensure(conv.obj == [14, 11], || format!("worked example {:?}", conv.obj))?;

    let mut edges = 0;
    for (n, m) in [(2, corpus::z2()), (3, corpus::z3())] {
        let day = Arc::new(ok(DayStructure::new(&m, t.clone()), &m.name)?);
        let df = ok(build_day_fibration(&day, &basic_generators(&day), &PointedSkeleton::new(2), 16), &m.name)?;
        clean(&ok(check_pushforward_is_kan(&df), &m.name)?, &m.name)?;
        // marked edges agree with the graded sum over each fiber of the active part
        let pi = df.fibration();
        let e = &pi.total;
        let s = &df.tensor.skeleton;
        for edge in e.morphisms() {
            if !pi.is_marked(edge) {
                continue;
            }
            let (x, y) = (df.tensor.tuple(e.source(edge)), df.tensor.tuple(e.target(edge)));
            let f = pi.projection.mor(edge);
            for (slot, &yt) in y.iter().enumerate() {
                let factors: Vec<Vec<usize>> = s
                    .preimage(f, slot + 1)
                    .iter()
                    .map(|&i| df.category.functors[x[i - 1]].obj.clone())
                    .collect();
                let want = graded_convolution(n, &factors);
                ensure(df.category.functors[yt].obj == want, || {
                    format!("{}: edge {} slot {} has {:?}, oracle {want:?}", m.name, e.describe_mor(edge), slot + 1, df.category.functors[yt].obj)
                })?;
            }
            edges += 1;
        }
    }
    Ok(format!("14/11 and {edges} marked edges"))
}

// ---------------------------------------------------------------------------
// 3. fibrations
// ---------------------------------------------------------------------------

fn arity(m: &SymMonoidalStructure) -> usize {
    if m.name == "Div12" {
        2
    } else {
        3
    }
}

fn fibrations() -> Outcome {
    let t = FinSet::default();
    let mut summary = Vec::new();
    for m in corpus::corpus() {
        let n = arity(&m);
        let tf = ok(build_tensor_fibration(&m, &PointedSkeleton::new(n)), &m.name)?;
        clean(&validate_cocartesian_fibration(&tf.fibration), &format!("{} tensor", m.name))?;
        let day = Arc::new(ok(DayStructure::new(&m, t.clone()), &m.name)?);
        let df = ok(build_day_fibration(&day, &basic_generators(&day), &PointedSkeleton::new(n), 16), &m.name)?;
        clean(&validate_cocartesian_fibration(df.fibration()), &format!("{} Day", m.name))?;
        summary.push(format!("{}≤{n}", m.name));
    }
    Ok(summary.join(" "))
}

// ---------------------------------------------------------------------------
// 4. lax monoidal functors and commutative monoids
// ---------------------------------------------------------------------------

fn golden_count(name: &str, bound: usize) -> Option<usize> {
    include_str!("golden/laxmon_counts.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|f| f[0] == name && f[1].parse() == Ok(bound))
        .map(|f| f[2].parse().expect("golden count"))
}

fn laxmon() -> Outcome {
    let mut summary = Vec::new();
    for m in [corpus::z2(), corpus::z3()] {
        let day = ok(DayStructure::new(&m, FinSet::default()), &m.name)?;
        let en = ok(enumerate_structures(&day, 2), &m.name)?;
        let want = golden_count(&m.name, 2).ok_or_else(|| format!("no golden count for {}", m.name))?;
        ensure(en.monoids.len() == want && en.lax.len() == want, || {
            format!("{}: {} monoids, {} lax, golden {want}", m.name, en.monoids.len(), en.lax.len())
        })?;
        clean(&ok(certify_correspondence(&day, &en), &m.name)?, &m.name)?;
        summary.push(format!("{} {want}", m.name));
    }
    Ok(summary.join(", "))
}

// ---------------------------------------------------------------------------
// 5. bilinearity
// ---------------------------------------------------------------------------

fn pushout_size(b: usize, c: usize, f: &[usize], g: &[usize]) -> usize {
    let mut parent: Vec<usize> = (0..b + c).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for (&x, &y) in f.iter().zip(g) {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, b + y));
        parent[rx] = ry;
    }
    (0..b + c).filter(|&x| find(&mut parent, x) == x).count()
}

fn bilinearity() -> Outcome {
    let t = FinSet::default();
    let day = ok(DayStructure::new(&corpus::z2(), t.clone()), "Z2")?;
    let c = day.base().clone();

    let empty = FunctorDiagram { shape: Arc::new(discrete_category("empty", 0)), functors: vec![], maps: vec![] };
    let (a, b) = (graded(&c, &[2, 1]), graded(&c, &[1, 3]));
    let coproduct = FunctorDiagram {
        shape: Arc::new(discrete_category("two", 2)),
        maps: vec![identity_nat(&t, &a), identity_nat(&t, &b)],
        functors: vec![a, b],
    };
    let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let shape = Arc::new(poset_category("span", &labels, |i, j| i == j || i == 0));
    let (fa, fb, fc) = (graded(&c, &[2, 1]), graded(&c, &[2, 2]), graded(&c, &[1, 3]));
    let ab = vec![FinFn::new(2, vec![1, 0]), FinFn::new(2, vec![0])];
    let ac = vec![FinFn::new(1, vec![0, 0]), FinFn::new(3, vec![1])];
    let maps = shape
        .morphisms()
        .map(|m| match (shape.source(m), shape.target(m)) {
            (0, 1) => ab.clone(),
            (0, 2) => ac.clone(),
            (0, 0) => identity_nat(&t, &fa),
            (1, 1) => identity_nat(&t, &fb),
            _ => identity_nat(&t, &fc),
        })
        .collect();
    let pushout = FunctorDiagram { shape, functors: vec![fa, fb, fc], maps };
    let pushout_sizes = vec![pushout_size(2, 1, &ab[0].map, &ac[0].map), pushout_size(2, 3, &ab[1].map, &ac[1].map)];

    let cases = [("empty", empty, vec![0, 0]), ("coproduct", coproduct, vec![3, 4]), ("pushout", pushout, pushout_sizes)];
    let gs = [[1, 0], [2, 3], [0, 2]];
    for (name, d, sizes) in &cases {
        let (colim, _) = ok(functor_colimit(&t, d, &c), name)?;
        ensure(&colim.obj == sizes, || format!("{name}: colimit {:?}, oracle {sizes:?}", colim.obj))?;
        for g in gs {
            let gf = graded(&c, &g);
            clean(&ok(check_bilinearity(&day, d, &gf), name)?, &format!("{name} against {g:?}"))?;
            let lhs = ok(day.day_tensor(&colim, &gf), name)?;
            let want = graded_convolution(2, &[sizes.clone(), g.to_vec()]);
            ensure(lhs.obj == want, || format!("{name} ⊛ {g:?}: {:?}, oracle {want:?}", lhs.obj))?;
        }
    }
    Ok("3 diagrams × 3 functors".into())
}

// ---------------------------------------------------------------------------
// 6. Yoneda
// ---------------------------------------------------------------------------

fn hom_count(m: &SymMonoidalStructure, zs: &[usize], z: usize) -> usize {
    let target = zs.iter().fold(m.unit, |acc, &x| m.tensor_obj(acc, x));
    m.base.hom(z, target).len()
}

fn yoneda() -> Outcome {
    let t = FinSet::default();
    let mut tuples = 0;
    for m in [corpus::z3(), corpus::divisors12()] {
        let p = ok(PresheafCategory::new(&m, t.clone()), &m.name)?;
        clean(&ok(check_representable_pairs(&p), &m.name)?, &format!("{} pairs", m.name))?;
        let k = m.n();
        for n in 0..=3usize {
            for code in 0..k.pow(n as u32) {
                let zs = decode_tuple(code, k, n);
                clean(&ok(check_representable_convolution(&p, &zs), &m.name)?, &format!("{} {zs:?}", m.name))?;
                let ys: Vec<_> = zs.iter().map(|&x| p.yoneda(x)).collect();
                let refs: Vec<_> = ys.iter().collect();
                let conv = ok(p.day.convolve(&refs), &m.name)?;
                for z in m.base.objects() {
                    let want = hom_count(&m, &zs, z);
                    ensure(conv.functor().obj[z] == want, || {
                        format!("{} {zs:?} at {z}: {}, hom count {want}", m.name, conv.functor().obj[z])
                    })?;
                }
                tuples += 1;
            }
        }
    }
    for m in corpus::corpus() {
        let tf = ok(build_tensor_fibration(&m, &PointedSkeleton::new(2)), &m.name)?;
        clean(&ok(check_slice_finality(&tf.fibration), &m.name)?, &format!("{} finality", m.name))?;
    }
    Ok(format!("{tuples} tuples, finality on the corpus"))
}

// ---------------------------------------------------------------------------
// 7. pushforward functor
// ---------------------------------------------------------------------------

fn pushforward() -> Outcome {
    let mut squares = 0;
    for m in corpus::corpus() {
        let n = if m.name == "Div12" { 1 } else { 2 };
        let tf = ok(build_tensor_fibration(&m, &PointedSkeleton::new(n)), &m.name)?;
        let pi = &tf.fibration;
        let pf = ok(pushforward_functor(pi), &m.name)?;
        clean(&pf.validate(pi), &m.name)?;
        let pairs: usize = pi.total.objects().map(|x| pi.base.outgoing(pi.over(x)).len()).sum();
        ensure(pf.domain.objects.len() == pairs, || {
            format!("{}: {} objects in the domain, {pairs} pairs", m.name, pf.domain.objects.len())
        })?;
        for (o, &(x, f)) in pf.domain.objects.iter().enumerate() {
            ensure(pi.base.source(f) == pi.over(x), || format!("{}: arrow not at its object", m.name))?;
            ensure(pi.over(pf.functor.obj(o)) == pi.base.target(f), || {
                format!("{}: pushforward of {} along {} lies over the wrong object", m.name, x, pi.base.describe_mor(f))
            })?;
        }
        squares += pf.domain.category.num_morphisms();
    }
    Ok(format!("{squares} morphisms of the domain"))
}

// ---------------------------------------------------------------------------
// 8. Kan extensions against the universal property
// ---------------------------------------------------------------------------

fn compose(g: &FinFn, f: &FinFn) -> FinFn {
    FinFn::new(g.cod, f.map.iter().map(|&i| g.map[i]).collect())
}

fn all_maps(dom: usize, cod: usize) -> Vec<FinFn> {
    if dom > 0 && cod == 0 {
        return vec![];
    }
    let count = cod.pow(dom as u32);
    (0..count)
        .map(|mut code| {
            let mut map = vec![0; dom];
            for v in map.iter_mut() {
                *v = code % cod.max(1);
                code /= cod.max(1);
            }
            FinFn::new(cod, map)
        })
        .collect()
}

/// Every functor `c -> FinSet` with value sets of size at most `bound`.
fn functors(c: &Arc<FinCategory>, bound: usize) -> Vec<TargetFunctor<FinSet>> {
    let n = c.num_objects();
    let free: Vec<usize> = c.morphisms().filter(|&m| !c.is_identity(m)).collect();
    let mut out = Vec::new();
    for code in 0..(bound + 1).pow(n as u32) {
        let sizes = decode_tuple(code, bound + 1, n);
        let mut mor: Vec<Option<FinFn>> = vec![None; c.num_morphisms()];
        for x in c.objects() {
            mor[c.identity(x)] = Some(FinFn::new(sizes[x], (0..sizes[x]).collect()));
        }
        fn consistent(c: &FinCategory, mor: &[Option<FinFn>], k: usize) -> bool {
            let check = |g: usize, f: usize| match (&mor[g], &mor[f], &mor[c.comp(g, f)]) {
                (Some(a), Some(b), Some(h)) => compose(a, b) == *h,
                _ => true,
            };
            c.outgoing(c.target(k)).iter().all(|&g| check(g, k))
                && c.incoming(c.source(k)).iter().all(|&f| check(k, f))
                && c.morphisms().all(|h| {
                    c.incoming(c.source(h)).iter().all(|&f| c.comp(h, f) != k || check(h, f))
                })
        }
        fn go(
            i: usize,
            c: &Arc<FinCategory>,
            free: &[usize],
            sizes: &[usize],
            mor: &mut Vec<Option<FinFn>>,
            out: &mut Vec<TargetFunctor<FinSet>>,
        ) {
            if i == free.len() {
                let mor = mor.iter().map(|m| m.clone().expect("assigned")).collect();
                out.push(TargetFunctor::new(c.clone(), sizes.to_vec(), mor));
                return;
            }
            let k = free[i];
            for f in all_maps(sizes[c.source(k)], sizes[c.target(k)]) {
                mor[k] = Some(f);
                if consistent(c, mor, k) {
                    go(i + 1, c, free, sizes, mor, out);
                }
            }
            mor[k] = None;
        }
        go(0, c, &free, &sizes, &mut mor, &mut out);
    }
    out
}

/// Every natural transformation `a => b`, by elementwise search.
fn nats(a: &TargetFunctor<FinSet>, b: &TargetFunctor<FinSet>) -> Vec<Vec<FinFn>> {
    let c = a.source.clone();
    let elems: Vec<(usize, usize)> = c.objects().flat_map(|x| (0..a.obj[x]).map(move |i| (x, i))).collect();
    let mut val: Vec<Vec<Option<usize>>> = c.objects().map(|x| vec![None; a.obj[x]]).collect();
    let mut out = Vec::new();
    fn go(
        k: usize,
        c: &FinCategory,
        elems: &[(usize, usize)],
        a: &TargetFunctor<FinSet>,
        b: &TargetFunctor<FinSet>,
        val: &mut Vec<Vec<Option<usize>>>,
        out: &mut Vec<Vec<FinFn>>,
    ) {
        if k == elems.len() {
            out.push(
                c.objects()
                    .map(|x| FinFn::new(b.obj[x], val[x].iter().map(|v| v.expect("assigned")).collect()))
                    .collect(),
            );
            return;
        }
        let (x, i) = elems[k];
        for v in 0..b.obj[x] {
            val[x][i] = Some(v);
            let fits = c.outgoing(x).iter().all(|&m| match val[c.target(m)][a.mor[m].map[i]] {
                Some(w) => w == b.mor[m].map[v],
                None => true,
            }) && c.incoming(x).iter().all(|&m| {
                let w = c.source(m);
                (0..a.obj[w]).all(|j| a.mor[m].map[j] != i || val[w][j].is_none_or(|u| b.mor[m].map[u] == v))
            });
            if fits {
                go(k + 1, c, elems, a, b, val, out);
            }
            val[x][i] = None;
        }
    }
    go(0, &c, &elems, a, b, &mut val, &mut out);
    out
}

fn is_functor(f: &TargetFunctor<FinSet>) -> bool {
    let c = &f.source;
    c.objects().all(|x| f.mor[c.identity(x)].map == (0..f.obj[x]).collect::<Vec<_>>())
        && c.morphisms().all(|m| f.mor[m].map.len() == f.obj[c.source(m)] && f.mor[m].cod == f.obj[c.target(m)])
        && c.morphisms()
            .all(|f1| c.outgoing(c.target(f1)).iter().all(|&g| f.mor[c.comp(g, f1)] == compose(&f.mor[g], &f.mor[f1])))
}

/// Checks that `(l, eta)` is initial among pairs `(g, F => gK)` with `g`
/// ranging over every functor with value sets of size at most `bound`: each
/// `F => gK` extends along `eta` to exactly one `l => g`.
fn universal(f: &TargetFunctor<FinSet>, k: &Functor, l: &TargetFunctor<FinSet>, eta: &[FinFn], gs: &[TargetFunctor<FinSet>]) -> Result<(), String> {
    let (c, d) = (&k.source, &k.target);
    ensure(is_functor(l), || "extension is not a functor".into())?;
    for m in c.morphisms() {
        let (x, y) = (c.source(m), c.target(m));
        ensure(compose(&l.mor[k.mor(m)], &eta[x]) == compose(&eta[y], &f.mor[m]), || "unit is not natural".into())?;
    }
    // every element of l is reached from the unit; hence extensions are unique
    let mut reached: Vec<Vec<bool>> = d.objects().map(|x| vec![false; l.obj[x]]).collect();
    let mut generators = Vec::new();
    for x in c.objects() {
        for i in 0..f.obj[x] {
            for &m in d.outgoing(k.obj(x)) {
                reached[d.target(m)][l.mor[m].map[eta[x].map[i]]] = true;
                generators.push((x, i, m));
            }
        }
    }
    ensure(reached.iter().flatten().all(|&r| r), || "extension has elements outside the image of the unit".into())?;
    for g in gs {
        let gk = g.precompose(k);
        for nu in nats(f, &gk) {
            let mut mu: Vec<Vec<Option<usize>>> = d.objects().map(|x| vec![None; l.obj[x]]).collect();
            for &(x, i, m) in &generators {
                let (y, e, v) = (d.target(m), l.mor[m].map[eta[x].map[i]], g.mor[m].map[nu[x].map[i]]);
                match mu[y][e] {
                    Some(w) if w != v => return Err(format!("a transformation into {:?} does not extend", g.obj)),
                    _ => mu[y][e] = Some(v),
                }
            }
            let mu: Vec<FinFn> =
                d.objects().map(|x| FinFn::new(g.obj[x], mu[x].iter().map(|v| v.expect("reached")).collect())).collect();
            for m in d.morphisms() {
                let (x, y) = (d.source(m), d.target(m));
                ensure(compose(&g.mor[m], &mu[x]) == compose(&mu[y], &l.mor[m]), || {
                    format!("the extension into {:?} is not natural", g.obj)
                })?;
            }
        }
    }
    Ok(())
}

fn poset_functor(c: &Arc<FinCategory>, d: &Arc<FinCategory>, obj: &[usize]) -> Functor {
    let mor = c.morphisms().map(|m| d.hom(obj[c.source(m)], obj[c.target(m)])[0]).collect();
    Functor::new(c.clone(), d.clone(), obj.to_vec(), mor)
}

fn kan() -> Outcome {
    let t = FinSet::default();
    let chain2 = Arc::new(ordinal(1));
    let chain3 = Arc::new(ordinal(2));
    let point = Arc::new(terminal_category());
    let two = Arc::new(discrete_category("two", 2));
    let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let span = Arc::new(poset_category("span", &labels, |i, j| i == j || i == 0));

    let mut instances: Vec<(String, Functor, usize, usize)> = vec![
        ("codiagonal".into(), poset_functor(&two, &point, &[0, 0]), 3, 3),
        ("bottom".into(), poset_functor(&point, &chain2, &[0]), 3, 3),
        ("top".into(), poset_functor(&point, &chain2, &[1]), 3, 3),
        ("arrow colimit".into(), poset_functor(&chain2, &point, &[0, 0]), 3, 3),
        ("pushout".into(), poset_functor(&span, &point, &[0, 0, 0]), 3, 3),
        ("endpoints".into(), poset_functor(&two, &chain2, &[0, 1]), 3, 3),
        ("outer edge".into(), poset_functor(&chain2, &chain3, &[0, 2]), 3, 3),
    ];
    for (m, fb, gb) in [(corpus::z2(), 2, 2), (corpus::chain2(), 2, 3), (corpus::super_z2(), 2, 2)] {
        let day = ok(DayStructure::new(&m, t.clone()), &m.name)?;
        instances.push((format!("{} tensor", m.name), (*day.tensor_power(2)).clone(), fb, gb));
        instances.push((format!("{} unit", m.name), (*day.tensor_power(0)).clone(), 3, 3));
        instances.push((format!("{} identity", m.name), (*day.tensor_power(1)).clone(), 3, 3));
    }

    let mut checked = 0;
    for (name, k, f_bound, g_bound) in &instances {
        ensure(k.target.num_objects() <= 3, || format!("{name}: base too large"))?;
        let gs = functors(&k.target, *g_bound);
        for f in functors(&k.source, *f_bound) {
            let lan = ok(left_kan_extension(&t, &f, k), name)?;
            universal(&f, k, &lan.functor, &lan.unit, &gs).map_err(|e| format!("{name}, F = {:?}: {e}", f.obj))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} functors over {} instances", instances.len()))
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("coherence", 1, coherence),
        ("Day formula", 10, day_formula),
        ("cocartesian fibrations", 60, fibrations),
        ("monoids and lax functors", 120, laxmon),
        ("bilinearity", 10, bilinearity),
        ("Yoneda", 30, yoneda),
        ("pushforward functor", 10, pushforward),
        ("Kan extension oracle", 60, kan),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let budget = Duration::from_secs(*budget);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed >= budget => Err(format!("over budget of {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({elapsed:.2?} < {budget:?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
