//! Lax symmetric monoidal functors, commutative monoids for Day
//! convolution, and the translation between the two.
//!
//! A commutative monoid `(M, m, u)` in `Fun(C, T)` with the Day structure
//! carries the same data as a lax symmetric monoidal functor `M : C -> T`:
//! `μ_{a,b}` is the multiplication restricted along the cocone leg of
//! `M ⊛ M` at `(a, b, id_{a⊗b})`, and conversely `m` is the map out of the
//! convolution colimit with legs `M(φ) ∘ μ_{a,b}`.

pub mod csp;
pub mod enumerate;

use std::sync::Arc;

use crate::cocomplete::{
    compose_nat, identity_nat, validate_target_functor, validate_target_nat, MonoidalTarget, Target, TargetFunctor,
};
use crate::day::{Convolution, DayStructure, DayTarget};
use crate::error::{Error, Result};
use crate::fincat::{Functor, MorId, ObjId};
use crate::monoidal::SymMonoidalStructure;
use crate::report::ValidationReport;

pub use enumerate::{certify_correspondence, enumerate_carriers, enumerate_structures, Enumeration};

#[derive(Clone, Debug)]
pub struct LaxMonoidalFunctor<T: MonoidalTarget> {
    pub source: Arc<SymMonoidalStructure>,
    pub underlying: TargetFunctor<T>,
    /// `μ_{a,b} : F a ⊗ F b -> F(a ⊗ b)`, indexed by `a·n + b`.
    pub mult: Vec<T::Mor>,
    /// `ε : I -> F(I)`.
    pub unit: T::Mor,
}

impl<T: MonoidalTarget> LaxMonoidalFunctor<T> {
    pub fn mu(&self, a: ObjId, b: ObjId) -> &T::Mor {
        &self.mult[a * self.source.n() + b]
    }
}

#[derive(Clone, Debug)]
pub struct CommutativeMonoidObject<T: DayTarget> {
    pub carrier: TargetFunctor<T>,
    /// `M ⊛ M` with the colimit presentation the multiplication is read
    /// against.
    pub square: Convolution<T>,
    /// The Day unit `U` as a convolution of no factors.
    pub unit_convolution: Convolution<T>,
    pub multiplication: Vec<T::Mor>,
    pub unit: Vec<T::Mor>,
}

/// A monoidal finite category viewed as a target, so that lax functors
/// between monoidal bases are checked by the same code.
#[derive(Clone, Debug)]
pub struct BaseTarget {
    pub monoidal: Arc<SymMonoidalStructure>,
}

impl Target for BaseTarget {
    type Obj = ObjId;
    type Mor = MorId;

    fn name(&self) -> String {
        self.monoidal.name.clone()
    }
    fn dom(&self, f: &MorId) -> ObjId {
        self.monoidal.base.source(*f)
    }
    fn cod(&self, f: &MorId) -> ObjId {
        self.monoidal.base.target(*f)
    }
    fn identity(&self, x: &ObjId) -> MorId {
        self.monoidal.base.identity(*x)
    }
    fn compose(&self, g: &MorId, f: &MorId) -> MorId {
        self.monoidal.base.comp(*g, *f)
    }
    fn hom(&self, a: &ObjId, b: &ObjId) -> Result<Vec<MorId>> {
        Ok(self.monoidal.base.hom(*a, *b).to_vec())
    }
    fn inverse(&self, f: &MorId) -> Option<MorId> {
        self.monoidal.base.inverse(*f)
    }
    fn describe_obj(&self, x: &ObjId) -> String {
        self.monoidal.base.obj_label(*x).to_string()
    }
    fn describe_mor(&self, f: &MorId) -> String {
        self.monoidal.base.describe_mor(*f)
    }
}

impl MonoidalTarget for BaseTarget {
    fn unit(&self) -> ObjId {
        self.monoidal.unit
    }
    fn tensor(&self, a: &ObjId, b: &ObjId) -> Result<ObjId> {
        Ok(self.monoidal.tensor_obj(*a, *b))
    }
    fn tensor_mor(&self, f: &MorId, g: &MorId) -> Result<MorId> {
        Ok(self.monoidal.tensor_mor(*f, *g))
    }
    fn associator(&self, a: &ObjId, b: &ObjId, c: &ObjId) -> Result<MorId> {
        Ok(self.monoidal.assoc(*a, *b, *c))
    }
    fn left_unitor(&self, a: &ObjId) -> Result<MorId> {
        Ok(self.monoidal.lambda(*a))
    }
    fn right_unitor(&self, a: &ObjId) -> Result<MorId> {
        Ok(self.monoidal.rho(*a))
    }
    fn symmetry(&self, a: &ObjId, b: &ObjId) -> Result<MorId> {
        Ok(self.monoidal.sigma(*a, *b))
    }
}

/// A functor between monoidal bases as a target functor into the codomain.
pub fn as_target_functor(f: &Functor) -> TargetFunctor<BaseTarget> {
    TargetFunctor::new(
        f.source.clone(),
        f.source.objects().map(|x| f.obj(x)).collect(),
        f.source.morphisms().map(|m| f.mor(m)).collect(),
    )
}

pub fn identity_lax(m: &Arc<SymMonoidalStructure>) -> LaxMonoidalFunctor<BaseTarget> {
    let c = &m.base;
    LaxMonoidalFunctor {
        source: m.clone(),
        underlying: as_target_functor(&Functor::identity(c.clone())),
        mult: c
            .objects()
            .flat_map(|a| c.objects().map(move |b| (a, b)))
            .map(|(a, b)| m.id(m.tensor_obj(a, b)))
            .collect(),
        unit: m.id(m.unit),
    }
}

pub fn validate_lax<T: MonoidalTarget>(t: &T, l: &LaxMonoidalFunctor<T>) -> Result<ValidationReport> {
    let m = &l.source;
    let c = &m.base;
    let f = &l.underlying;
    let n = c.num_objects();
    let mut report = validate_target_functor(t, f).prefixed("underlying");
    if !report.is_empty() {
        return Ok(report);
    }
    if !f.source.same_tables(c) {
        report.structural("source", "underlying functor is not defined on the monoidal base");
        return Ok(report);
    }
    if l.mult.len() != n * n {
        report.structural("arity", format!("{} multiplication components for {n} objects", l.mult.len()));
        return Ok(report);
    }
    let label = |a: ObjId| c.obj_label(a).to_string();
    for a in c.objects() {
        for b in c.objects() {
            let mu = l.mu(a, b);
            if t.dom(mu) != t.tensor(&f.obj[a], &f.obj[b])? || t.cod(mu) != f.obj[m.tensor_obj(a, b)] {
                report.structural("mu-type", format!("({}, {})", label(a), label(b)));
            }
        }
    }
    if t.dom(&l.unit) != t.unit() || t.cod(&l.unit) != f.obj[m.unit] {
        report.structural("epsilon-type", "unit component has the wrong type");
    }
    if !report.is_empty() {
        return Ok(report);
    }
    for u in c.morphisms() {
        for v in c.morphisms() {
            let (a, b) = (c.source(u), c.source(v));
            let (a2, b2) = (c.target(u), c.target(v));
            let lhs = t.compose(&f.mor[m.tensor_mor(u, v)], l.mu(a, b));
            let rhs = t.compose(l.mu(a2, b2), &t.tensor_mor(&f.mor[u], &f.mor[v])?);
            if lhs != rhs {
                report.violation("naturality", format!("({}, {})", c.mor_label(u), c.mor_label(v)));
            }
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            for d in c.objects() {
                let (fa, fb, fd) = (&f.obj[a], &f.obj[b], &f.obj[d]);
                let ab = m.tensor_obj(a, b);
                let bd = m.tensor_obj(b, d);
                let lhs = t.compose(
                    &f.mor[m.assoc(a, b, d)],
                    &t.compose(l.mu(ab, d), &t.tensor_mor(l.mu(a, b), &t.identity(fd))?),
                );
                let rhs = t.compose(
                    l.mu(a, bd),
                    &t.compose(&t.tensor_mor(&t.identity(fa), l.mu(b, d))?, &t.associator(fa, fb, fd)?),
                );
                if lhs != rhs {
                    report.violation("associativity", format!("({}, {}, {})", label(a), label(b), label(d)));
                }
            }
        }
    }
    for a in c.objects() {
        let fa = &f.obj[a];
        let left = t.compose(
            &f.mor[m.lambda(a)],
            &t.compose(l.mu(m.unit, a), &t.tensor_mor(&l.unit, &t.identity(fa))?),
        );
        if left != t.left_unitor(fa)? {
            report.violation("left-unit", label(a));
        }
        let right = t.compose(
            &f.mor[m.rho(a)],
            &t.compose(l.mu(a, m.unit), &t.tensor_mor(&t.identity(fa), &l.unit)?),
        );
        if right != t.right_unitor(fa)? {
            report.violation("right-unit", label(a));
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            let lhs = t.compose(&f.mor[m.sigma(a, b)], l.mu(a, b));
            let rhs = t.compose(l.mu(b, a), &t.symmetry(&f.obj[a], &f.obj[b])?);
            if lhs != rhs {
                report.violation("symmetry", format!("({}, {})", label(a), label(b)));
            }
        }
    }
    Ok(report)
}

/// Every lax symmetric monoidal structure on `underlying`, by exhaustive
/// search over candidate components (at most `limit`). A component with no
/// candidate morphism at all is an error naming it.
pub fn lax_structures_on<T: MonoidalTarget>(
    t: &T,
    m: &Arc<SymMonoidalStructure>,
    underlying: &TargetFunctor<T>,
    limit: usize,
) -> Result<Vec<LaxMonoidalFunctor<T>>> {
    let c = &m.base;
    let f = underlying;
    let mut cands = Vec::new();
    for a in c.objects() {
        for b in c.objects() {
            let hom = t.hom(&t.tensor(&f.obj[a], &f.obj[b])?, &f.obj[m.tensor_obj(a, b)])?;
            if hom.is_empty() {
                return Err(Error::NoCandidate(format!(
                    "μ at ({}, {}): no morphism {} -> {}",
                    c.obj_label(a),
                    c.obj_label(b),
                    t.describe_obj(&t.tensor(&f.obj[a], &f.obj[b])?),
                    t.describe_obj(&f.obj[m.tensor_obj(a, b)])
                )));
            }
            cands.push(hom);
        }
    }
    let units = t.hom(&t.unit(), &f.obj[m.unit])?;
    if units.is_empty() {
        return Err(Error::NoCandidate(format!(
            "ε: no morphism from the unit to {}",
            t.describe_obj(&f.obj[m.unit])
        )));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; cands.len()];
    loop {
        for e in &units {
            let l = LaxMonoidalFunctor {
                source: m.clone(),
                underlying: f.clone(),
                mult: idx.iter().zip(&cands).map(|(&i, c)| c[i].clone()).collect(),
                unit: e.clone(),
            };
            if validate_lax(t, &l)?.is_empty() {
                if out.len() >= limit {
                    return Err(Error::Ceiling {
                        what: "lax structures".into(),
                        needed: limit + 1,
                        ceiling: limit,
                    });
                }
                out.push(l);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Convolutions and structure maps needed to state the monoid axioms for
/// a carrier.
struct MonoidFrame<T: DayTarget> {
    ff_f: Convolution<T>,
    f_ff: Convolution<T>,
    uf: Convolution<T>,
    alpha: Vec<T::Mor>,
    lambda: Vec<T::Mor>,
    sigma: Vec<T::Mor>,
}

fn frame<T: DayTarget>(day: &DayStructure<T>, f: &TargetFunctor<T>, ff: &Convolution<T>, u: &Convolution<T>) -> Result<MonoidFrame<T>> {
    let ff_f = day.convolve(&[ff.functor(), f])?;
    let f_ff = day.convolve(&[f, ff.functor()])?;
    let uf = day.convolve(&[u.functor(), f])?;
    let alpha = day.associator(ff, &ff_f, ff, &f_ff)?;
    let lambda = day.left_unitor(u, &uf)?;
    let sigma = day.symmetry(ff, ff)?;
    Ok(MonoidFrame {
        ff_f,
        f_ff,
        uf,
        alpha,
        lambda,
        sigma,
    })
}

/// Assemble a monoid from its carrier and components, computing the
/// presentations of `M ⊛ M` and `U`.
pub fn monoid_object<T: DayTarget>(
    day: &DayStructure<T>,
    carrier: TargetFunctor<T>,
    multiplication: Vec<T::Mor>,
    unit: Vec<T::Mor>,
) -> Result<CommutativeMonoidObject<T>> {
    let square = day.convolve(&[&carrier, &carrier])?;
    let unit_convolution = day.convolve(&[])?;
    Ok(CommutativeMonoidObject {
        carrier,
        square,
        unit_convolution,
        multiplication,
        unit,
    })
}

/// Naturality of `m` and `u`, then associativity, left unit and
/// commutativity as equations of natural transformations, using the Day
/// associator, unitor and symmetry.
pub fn validate_monoid<T: DayTarget>(day: &DayStructure<T>, mo: &CommutativeMonoidObject<T>) -> Result<ValidationReport> {
    let t = &day.target;
    let f = &mo.carrier;
    let mut report = validate_target_functor(t, f).prefixed("carrier");
    report.extend(validate_target_nat(t, mo.square.functor(), f, &mo.multiplication).prefixed("multiplication"));
    report.extend(validate_target_nat(t, mo.unit_convolution.functor(), f, &mo.unit).prefixed("unit"));
    if !report.is_empty() {
        return Ok(report);
    }
    let fr = frame(day, f, &mo.square, &mo.unit_convolution)?;
    let id = identity_nat(t, f);
    let m = &mo.multiplication;
    let m_id = day.tensor_map(&fr.ff_f, &mo.square, &[m, &id])?;
    let id_m = day.tensor_map(&fr.f_ff, &mo.square, &[&id, m])?;
    let lhs = compose_nat(t, m, &m_id);
    let rhs = compose_nat(t, m, &compose_nat(t, &id_m, &fr.alpha));
    let c = day.base();
    for x in c.objects() {
        if lhs[x] != rhs[x] {
            report.violation("associativity", c.obj_label(x).to_string());
        }
    }
    let u_id = day.tensor_map(&fr.uf, &mo.square, &[&mo.unit, &id])?;
    let unit_side = compose_nat(t, m, &u_id);
    for x in c.objects() {
        if unit_side[x] != fr.lambda[x] {
            report.violation("unit", c.obj_label(x).to_string());
        }
    }
    let swapped = compose_nat(t, m, &fr.sigma);
    for x in c.objects() {
        if swapped[x] != m[x] {
            report.violation("commutativity", c.obj_label(x).to_string());
        }
    }
    Ok(report)
}

/// Either side of the correspondence.
#[derive(Clone, Debug)]
pub enum Structure<T: DayTarget> {
    Monoid(CommutativeMonoidObject<T>),
    Lax(LaxMonoidalFunctor<T>),
}

pub fn monoid_lax_correspondence<T: DayTarget>(day: &DayStructure<T>, x: &Structure<T>) -> Result<Structure<T>> {
    match x {
        Structure::Monoid(mo) => Ok(Structure::Lax(monoid_to_lax(day, mo)?)),
        Structure::Lax(l) => Ok(Structure::Monoid(lax_to_monoid(day, l)?)),
    }
}

pub fn monoid_to_lax<T: DayTarget>(day: &DayStructure<T>, mo: &CommutativeMonoidObject<T>) -> Result<LaxMonoidalFunctor<T>> {
    let report = validate_monoid(day, mo)?;
    if !report.is_empty() {
        return Err(Error::invalid("commutative monoid", report.to_string()));
    }
    Ok(extract_lax(day, mo))
}

/// `μ_{a,b} = m_{a⊗b} ∘ leg(a, b, id)` and `ε = u_I ∘ leg(id_I)`, without
/// validating the input.
pub(crate) fn extract_lax<T: DayTarget>(day: &DayStructure<T>, mo: &CommutativeMonoidObject<T>) -> LaxMonoidalFunctor<T> {
    let t = &day.target;
    let m = &day.monoidal;
    let c = day.base();
    let n = c.num_objects();
    let mut mult = Vec::with_capacity(n * n);
    for a in c.objects() {
        for b in c.objects() {
            let ab = m.tensor_obj(a, b);
            let leg = mo.square.kan.leg(ab, a * n + b, m.id(ab)).expect("(a, b, id) is a comma object");
            mult.push(t.compose(&mo.multiplication[ab], leg));
        }
    }
    let leg = mo.unit_convolution.kan.leg(m.unit, 0, m.id(m.unit)).expect("(*, id_I) is a comma object");
    LaxMonoidalFunctor {
        source: m.clone(),
        underlying: mo.carrier.clone(),
        mult,
        unit: t.compose(&mo.unit[m.unit], leg),
    }
}

pub fn lax_to_monoid<T: DayTarget>(day: &DayStructure<T>, l: &LaxMonoidalFunctor<T>) -> Result<CommutativeMonoidObject<T>> {
    let t = &day.target;
    let report = validate_lax(t, l)?;
    if !report.is_empty() {
        return Err(Error::invalid("lax monoidal functor", report.to_string()));
    }
    let f = l.underlying.clone();
    let n = day.base().num_objects();
    let square = day.convolve(&[&f, &f])?;
    let unit_convolution = day.convolve(&[])?;
    let mut multiplication = Vec::with_capacity(n);
    let mut unit = Vec::with_capacity(n);
    for x in day.base().objects() {
        let legs: Vec<T::Mor> = square.kan.commas[x]
            .objects
            .iter()
            .map(|&(y, phi)| t.compose(&f.mor[phi], l.mu(y / n, y % n)))
            .collect();
        multiplication.push(square.kan.mediate(t, x, &legs, &f.obj[x])?);
        let legs: Vec<T::Mor> = unit_convolution.kan.commas[x]
            .objects
            .iter()
            .map(|&(_, psi)| t.compose(&f.mor[psi], &l.unit))
            .collect();
        unit.push(unit_convolution.kan.mediate(t, x, &legs, &f.obj[x])?);
    }
    Ok(CommutativeMonoidObject {
        carrier: f,
        square,
        unit_convolution,
        multiplication,
        unit,
    })
}
