//! Fibrations over finite categories and their cocartesian edges.
//!
//! A [`GrothFibration`] is a functor `p : E -> B` between finite categories,
//! together with an optional table of chosen lifts and a memoized marking of
//! cocartesian edges. Cocartesianness is decided from the universal property
//! directly: `e : x -> y` over `f` is cocartesian iff composing with `e`
//! is a bijection from morphisms out of `y` onto pairs `(e', h)` with
//! `e'` out of `x` and `h ∘ f = p(e')`.

pub mod arrow;
pub mod pushforward;
pub mod tensor;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::fincat::{
    encode_tuple, power_category, pullback_category, validate_functor, CategoryBuilder, FinCategory,
    Functor, MorId, ObjId,
};
use crate::monoidal::PointedSkeleton;
use crate::report::ValidationReport;

pub use arrow::{build_arrow_category, ArrowCategory};
pub use pushforward::{pushforward_functor, Pushforward};
pub use tensor::{build_tensor_fibration, TensorFibration};

/// A fiber `E_b` together with its embedding into the total category.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub category: Arc<FinCategory>,
    /// Total-category ids of the fiber's objects, in fiber order.
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
    obj_index: HashMap<ObjId, ObjId>,
    mor_index: HashMap<MorId, MorId>,
}

impl Fiber {
    pub fn local_object(&self, x: ObjId) -> Option<ObjId> {
        self.obj_index.get(&x).copied()
    }

    pub fn local_morphism(&self, m: MorId) -> Option<MorId> {
        self.mor_index.get(&m).copied()
    }
}

/// Outcome of a filler search that did not find exactly one filler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FillerError {
    None,
    NotUnique(MorId, MorId),
}

pub struct GrothFibration {
    pub name: String,
    pub total: Arc<FinCategory>,
    pub base: Arc<FinCategory>,
    pub projection: Functor,
    /// Set when the base is a pointed skeleton, enabling the Segal check.
    pub skeleton: Option<PointedSkeleton>,
    chosen: HashMap<(ObjId, MorId), MorId>,
    /// Morphisms of the total category keyed by (source, image in base).
    out_over: HashMap<(ObjId, MorId), Vec<MorId>>,
    /// `#{h : h ∘ f = k}`, keyed by `(f, k)`.
    base_counts: OnceLock<HashMap<(MorId, MorId), usize>>,
    marking: RwLock<HashMap<MorId, bool>>,
    overrides: RwLock<HashMap<MorId, bool>>,
}

impl fmt::Debug for GrothFibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrothFibration")
            .field("name", &self.name)
            .field("total", &self.total)
            .field("base", &self.base.name())
            .finish()
    }
}

impl Clone for GrothFibration {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            total: self.total.clone(),
            base: self.base.clone(),
            projection: self.projection.clone(),
            skeleton: self.skeleton.clone(),
            chosen: self.chosen.clone(),
            out_over: self.out_over.clone(),
            base_counts: self.base_counts.clone(),
            marking: RwLock::new(self.marking.read().unwrap().clone()),
            overrides: RwLock::new(self.overrides.read().unwrap().clone()),
        }
    }
}

impl GrothFibration {
    pub fn new(
        name: impl Into<String>,
        projection: Functor,
        skeleton: Option<PointedSkeleton>,
        chosen: HashMap<(ObjId, MorId), MorId>,
    ) -> Self {
        let total = projection.source.clone();
        let base = projection.target.clone();
        let mut out_over: HashMap<(ObjId, MorId), Vec<MorId>> = HashMap::new();
        for m in total.morphisms() {
            out_over
                .entry((total.source(m), projection.mor(m)))
                .or_default()
                .push(m);
        }
        Self {
            name: name.into(),
            total,
            base,
            projection,
            skeleton,
            chosen,
            out_over,
            base_counts: OnceLock::new(),
            marking: RwLock::new(HashMap::new()),
            overrides: RwLock::new(HashMap::new()),
        }
    }

    pub fn over(&self, x: ObjId) -> ObjId {
        self.projection.obj(x)
    }

    /// Morphisms out of `x` lying over `f`.
    pub fn edges_over(&self, x: ObjId, f: MorId) -> &[MorId] {
        self.out_over.get(&(x, f)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn objects_over(&self, b: ObjId) -> Vec<ObjId> {
        self.total.objects().filter(|&x| self.over(x) == b).collect()
    }

    fn base_counts(&self) -> &HashMap<(MorId, MorId), usize> {
        self.base_counts.get_or_init(|| {
            let b = &self.base;
            let mut counts = HashMap::new();
            for f in b.morphisms() {
                for &h in b.outgoing(b.target(f)) {
                    *counts.entry((f, b.comp(h, f))).or_insert(0) += 1;
                }
            }
            counts
        })
    }

    /// Decide the cocartesian universal property of `e` (ignores overrides).
    pub fn is_cocartesian_edge(&self, e: MorId) -> bool {
        if let Some(&v) = self.marking.read().unwrap().get(&e) {
            return v;
        }
        let v = self.compute_cocartesian(e);
        self.marking.write().unwrap().insert(e, v);
        v
    }

    fn compute_cocartesian(&self, e: MorId) -> bool {
        let t = &self.total;
        let (x, y) = (t.source(e), t.target(e));
        let f = self.projection.mor(e);
        let counts = self.base_counts();
        let expected: usize = t
            .outgoing(x)
            .iter()
            .map(|&e2| counts.get(&(f, self.projection.mor(e2))).copied().unwrap_or(0))
            .sum();
        let mut seen = HashSet::with_capacity(t.outgoing(y).len());
        for &chi in t.outgoing(y) {
            if !seen.insert((t.comp(chi, e), self.projection.mor(chi))) {
                return false;
            }
        }
        seen.len() == expected
    }

    /// Override the marking oracle for one edge (used to build broken
    /// fibrations on purpose).
    pub fn set_marking(&self, e: MorId, marked: bool) {
        self.overrides.write().unwrap().insert(e, marked);
    }

    pub fn is_marked(&self, e: MorId) -> bool {
        if let Some(&v) = self.overrides.read().unwrap().get(&e) {
            return v;
        }
        self.is_cocartesian_edge(e)
    }

    /// Replace the chosen lift of `(x, f)`.
    pub fn set_chosen_lift(&mut self, x: ObjId, f: MorId, e: MorId) {
        self.chosen.insert((x, f), e);
    }

    pub fn chosen_lift(&self, x: ObjId, f: MorId) -> Option<MorId> {
        self.chosen.get(&(x, f)).copied()
    }

    /// A marked lift of `f` starting at `x`: the chosen one when it is
    /// marked, otherwise the first marked edge over `f`.
    pub fn lift(&self, x: ObjId, f: MorId) -> Option<MorId> {
        if let Some(e) = self.chosen_lift(x, f) {
            if self.is_marked(e) {
                return Some(e);
            }
        }
        self.edges_over(x, f).iter().copied().find(|&e| self.is_marked(e))
    }

    pub fn pushforward_object(&self, x: ObjId, f: MorId) -> Result<ObjId> {
        self.lift(x, f).map(|e| self.total.target(e)).ok_or_else(|| {
            Error::NotCocartesian(format!(
                "no cocartesian lift of {} at {}",
                self.base.describe_mor(f),
                self.total.obj_label(x)
            ))
        })
    }

    /// The morphisms `χ` out of `target(e)` over `h` with `χ ∘ e = e2`.
    pub fn fillers(&self, e: MorId, e2: MorId, h: MorId) -> Vec<MorId> {
        let t = &self.total;
        self.edges_over(t.target(e), h)
            .iter()
            .copied()
            .filter(|&chi| t.target(chi) == t.target(e2) && t.compose(chi, e) == Some(e2))
            .collect()
    }

    pub fn unique_filler(&self, e: MorId, e2: MorId, h: MorId) -> std::result::Result<MorId, FillerError> {
        match self.fillers(e, e2, h).as_slice() {
            [] => Err(FillerError::None),
            [chi] => Ok(*chi),
            [a, b, ..] => Err(FillerError::NotUnique(*a, *b)),
        }
    }

    pub fn fiber(&self, b: ObjId) -> Fiber {
        let t = &self.total;
        let id_b = self.base.identity(b);
        let objects = self.objects_over(b);
        let obj_index: HashMap<ObjId, ObjId> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut builder = CategoryBuilder::new(format!("{}_{}", self.name, self.base.obj_label(b)));
        for &x in &objects {
            builder.add_object(t.obj_label(x));
        }
        let mut morphisms = Vec::new();
        let mut mor_index = HashMap::new();
        for &x in &objects {
            for &m in self.edges_over(x, id_b) {
                let id = builder.add_morphism(t.mor_label(m), obj_index[&x], obj_index[&t.target(m)]);
                morphisms.push(m);
                mor_index.insert(m, id);
            }
        }
        let ids = objects.iter().map(|&x| mor_index[&t.identity(x)]).collect();
        let category = builder
            .build(ids, |g, f| mor_index.get(&t.compose(morphisms[g], morphisms[f])?).copied())
            .expect("fiber of a valid fibration is well-formed");
        Fiber {
            category: Arc::new(category),
            objects,
            morphisms,
            obj_index,
            mor_index,
        }
    }
}

/// The strict pullback of `pi` along `k : K -> B`.
pub fn pullback_along(pi: &GrothFibration, k: &Functor) -> Result<GrothFibration> {
    if !k.target.same_tables(&pi.base) {
        return Err(Error::invalid("pullback", "functor does not land in the base"));
    }
    let pb = pullback_category(k, &pi.projection, &format!("{}×{}", k.source.name(), pi.name));
    let mut chosen = HashMap::new();
    for (i, &(a, x)) in pb.objects.iter().enumerate() {
        for &u in k.source.outgoing(a) {
            if let Some(e) = pi.chosen_lift(x, k.mor(u)) {
                let target = pb.object(k.source.target(u), pi.total.target(e));
                if let Some(j) = target {
                    if let Some(m) = pb
                        .category
                        .hom(i, j)
                        .iter()
                        .copied()
                        .find(|&m| pb.morphisms[m] == (u, e))
                    {
                        chosen.insert((i, u), m);
                    }
                }
            }
        }
    }
    Ok(GrothFibration::new(
        format!("{}|{}", pi.name, k.source.name()),
        pb.proj_left.clone(),
        None,
        chosen,
    ))
}

/// Check that `pi` is a cocartesian fibration: lifts exist for every
/// (object, base arrow) pair, lifts compose up to a vertical isomorphism,
/// and, over a pointed skeleton, the Segal condition holds.
pub fn validate_cocartesian_fibration(pi: &GrothFibration) -> ValidationReport {
    let mut report = validate_functor(&pi.projection).prefixed("projection");
    if report.has_structural() {
        return report;
    }
    let (t, b) = (&pi.total, &pi.base);
    let mut lifts: HashMap<(ObjId, MorId), MorId> = HashMap::new();
    for x in t.objects() {
        for &f in b.outgoing(pi.over(x)) {
            match pi.lift(x, f) {
                None => report.violation(
                    "lift-exists",
                    format!("({}, {})", t.obj_label(x), b.describe_mor(f)),
                ),
                Some(e) => {
                    if !pi.is_cocartesian_edge(e) {
                        report.violation("marking", format!("{} is marked but not cocartesian", t.describe_mor(e)));
                    } else {
                        lifts.insert((x, f), e);
                    }
                }
            }
        }
    }
    for (&(x, f), &e1) in &lifts {
        let y = t.target(e1);
        for &g in b.outgoing(b.target(f)) {
            let (Some(&e2), Some(&e)) = (lifts.get(&(y, g)), lifts.get(&(x, b.comp(g, f)))) else {
                continue;
            };
            let composite = t.comp(e2, e1);
            let h = b.identity(b.target(g));
            match pi.unique_filler(e, composite, h) {
                Ok(chi) if t.is_iso(chi) => {}
                Ok(chi) => report.violation(
                    "lift-composition",
                    format!(
                        "({}, {}, {}): comparison {} is not invertible",
                        t.obj_label(x),
                        b.describe_mor(f),
                        b.describe_mor(g),
                        t.describe_mor(chi)
                    ),
                ),
                Err(err) => report.violation(
                    "lift-composition",
                    format!("({}, {}, {}): {err:?}", t.obj_label(x), b.describe_mor(f), b.describe_mor(g)),
                ),
            }
        }
    }
    if let Some(s) = &pi.skeleton {
        if report.is_empty() {
            for n in 0..=s.max_n {
                report.extend(check_segal(pi, s, n));
            }
        }
    }
    report
}

/// The functor `E_⟨n⟩ -> (E_⟨1⟩)^n` assembled from the inert pushforwards.
pub fn segal_functor(pi: &GrothFibration, s: &PointedSkeleton, n: usize) -> Result<(Fiber, Functor)> {
    let t = &pi.total;
    let fiber_n = pi.fiber(n);
    let fiber_1 = if s.max_n >= 1 { pi.fiber(1) } else { pi.fiber(0) };
    let power = Arc::new(power_category(&fiber_1.category, n));
    let (n1, m1) = (fiber_1.category.num_objects(), fiber_1.category.num_morphisms());
    let rho: Vec<MorId> = (1..=n).map(|j| s.inert_projection(n, j)).collect();
    let lift = |x: ObjId, f: MorId| {
        pi.lift(x, f).ok_or_else(|| {
            Error::NotCocartesian(format!("no lift of {} at {}", pi.base.describe_mor(f), t.obj_label(x)))
        })
    };
    let mut obj_map = Vec::with_capacity(fiber_n.objects.len());
    for &x in &fiber_n.objects {
        let mut tuple = Vec::with_capacity(n);
        for &r in &rho {
            let y = t.target(lift(x, r)?);
            tuple.push(fiber_1.local_object(y).expect("inert pushforward lands in the fiber"));
        }
        obj_map.push(encode_tuple(&tuple, n1));
    }
    let id1 = pi.base.identity(if s.max_n >= 1 { 1 } else { 0 });
    let mut mor_map = Vec::with_capacity(fiber_n.morphisms.len());
    for &u in &fiber_n.morphisms {
        let (x, x2) = (t.source(u), t.target(u));
        let mut tuple = Vec::with_capacity(n);
        for &r in &rho {
            let (e, e2) = (lift(x, r)?, lift(x2, r)?);
            let chi = pi
                .unique_filler(e, t.comp(e2, u), id1)
                .map_err(|err| Error::NotCocartesian(format!("segal filler for {}: {err:?}", t.describe_mor(u))))?;
            tuple.push(fiber_1.local_morphism(chi).expect("filler over the identity lies in the fiber"));
        }
        mor_map.push(encode_tuple(&tuple, m1));
    }
    let functor = Functor::new(fiber_n.category.clone(), power, obj_map, mor_map);
    Ok((fiber_n, functor))
}

fn check_segal(pi: &GrothFibration, s: &PointedSkeleton, n: usize) -> ValidationReport {
    let mut report = ValidationReport::new();
    match segal_functor(pi, s, n) {
        Err(e) => report.violation("segal", format!("<{n}>: {e}")),
        Ok((_, func)) => {
            let v = validate_functor(&func);
            if !v.is_empty() {
                report.violation("segal", format!("<{n}>: comparison is not a functor: {v}"));
            } else if !func.is_isomorphism() {
                let injective = func.is_injective_on_objects();
                report.violation(
                    "segal",
                    format!(
                        "<{n}>: comparison with the {n}-fold power is not an isomorphism (injective on objects: {injective})"
                    ),
                );
            }
        }
    }
    report
}
