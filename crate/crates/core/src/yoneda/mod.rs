//! Presheaves with Day convolution and the monoidal Yoneda embedding.
//!
//! A presheaf on `C` is a functor `C^op -> FinSet`, and Day convolution of
//! presheaves uses the tensor of `C^op` (same objects, inverted structure
//! maps). The representable `y(X) = hom_C(-, X)` is the covariant
//! representable of `C^op` at `X`.
//!
//! The comparison `y(Z_1) ⊛ … ⊛ y(Z_n) ⇒ y(Z_1 ⊗ … ⊗ Z_n)` is read off the
//! colimit presentation: the leg at `(P_1, …, P_n, φ : X -> ⊗P)` sends
//! `(s_i : P_i -> Z_i)` to `(⊗ s_i) ∘ φ`.

pub mod cofinal;
pub mod fiberwise;
pub mod inert;

use std::collections::HashMap;
use std::sync::Arc;

use crate::cocomplete::{
    compose_nat, inverse_nat, validate_target_functor, validate_target_nat, FinFn, FinSet, Target, TargetFunctor,
};
use crate::day::{build_day_fibration, representable, Convolution, DayFibration, DayStructure};
use crate::error::{Error, Result};
use crate::fincat::{validate_functor, Functor, MorId, ObjId};
use crate::grothendieck::{build_tensor_fibration, TensorFibration};
use crate::monoidal::{opposite_monoidal, PointedSkeleton, SymMonoidalStructure};
use crate::report::ValidationReport;

pub use cofinal::{check_slice_finality, slice_inclusion};
pub use fiberwise::{check_fiberwise_hom, fiberwise_hom, FiberwiseHom};
pub use inert::{build_inert_arrow_category, InertArrowCategory};

/// `Fun(C^op, FinSet)` with Day convolution.
#[derive(Debug)]
pub struct PresheafCategory {
    pub base: Arc<SymMonoidalStructure>,
    pub day: Arc<DayStructure<FinSet>>,
}

impl PresheafCategory {
    pub fn new(m: &SymMonoidalStructure, target: FinSet) -> Result<Self> {
        let op = opposite_monoidal(m)?;
        Ok(Self {
            base: Arc::new(m.clone()),
            day: Arc::new(DayStructure::new(&op, target)?),
        })
    }

    /// `y(X) = hom_C(-, X)`.
    pub fn yoneda(&self, x: ObjId) -> TargetFunctor<FinSet> {
        representable(self.day.base(), x)
    }

    /// `y(u) : y(A) ⇒ y(B)` for `u : A -> B`, by postcomposition.
    pub fn yoneda_map(&self, u: MorId) -> Vec<FinFn> {
        let c = &self.base.base;
        let (a, b) = (c.source(u), c.target(u));
        c.objects()
            .map(|z| {
                let to_b = c.hom(z, b);
                FinFn::new(
                    to_b.len(),
                    c.hom(z, a)
                        .iter()
                        .map(|&s| to_b.iter().position(|&h| h == c.comp(u, s)).expect("composite lies in the hom-set"))
                        .collect(),
                )
            })
            .collect()
    }

    /// The convolution of `y(Z_1), …, y(Z_n)` with the canonical comparison
    /// into `y(Z_1 ⊗ … ⊗ Z_n)`.
    pub fn comparison(&self, zs: &[ObjId]) -> Result<(Convolution<FinSet>, TargetFunctor<FinSet>, Vec<FinFn>)> {
        let (t, m) = (&self.day.target, &self.base);
        let c = &m.base;
        let ys: Vec<TargetFunctor<FinSet>> = zs.iter().map(|&z| self.yoneda(z)).collect();
        let refs: Vec<&TargetFunctor<FinSet>> = ys.iter().collect();
        let conv = self.day.convolve(&refs)?;
        let nz = m.nf_obj(zs);
        let target = self.yoneda(nz);
        let n = c.num_objects();
        let mut comps = Vec::with_capacity(n);
        for x in c.objects() {
            let to_nz = c.hom(x, nz);
            let mut legs = Vec::new();
            for &(y, phi) in &conv.kan.commas[x].objects {
                let ps = crate::fincat::decode_tuple(y, n, zs.len());
                let homs: Vec<&[MorId]> = ps.iter().zip(zs).map(|(&p, &z)| c.hom(p, z)).collect();
                let size: usize = homs.iter().map(|h| h.len()).product();
                let mut map = Vec::with_capacity(size);
                for code in 0..size {
                    // left-associated product: first factor most significant
                    let mut rest = code;
                    let mut picks = vec![0; homs.len()];
                    for i in (0..homs.len()).rev() {
                        picks[i] = homs[i][rest % homs[i].len()];
                        rest /= homs[i].len();
                    }
                    let h = c.comp(m.nf_mor(&picks), phi);
                    map.push(to_nz.iter().position(|&g| g == h).expect("composite lies in the hom-set"));
                }
                legs.push(FinFn::new(to_nz.len(), map));
            }
            comps.push(conv.kan.mediate(t, x, &legs, &to_nz.len())?);
        }
        Ok((conv, target, comps))
    }
}

/// `y(Z_1) ⊛ … ⊛ y(Z_n) ≅ y(Z_1 ⊗ … ⊗ Z_n)` through the canonical
/// comparison, checked pointwise; `n = 0` is the unit case `U ≅ y(I)`.
pub fn check_representable_convolution(p: &PresheafCategory, zs: &[ObjId]) -> Result<ValidationReport> {
    let t = &p.day.target;
    let c = &p.base.base;
    let (conv, target, comps) = p.comparison(zs)?;
    let labels: Vec<&str> = zs.iter().map(|&z| c.obj_label(z)).collect();
    let mut report = validate_target_nat(t, conv.functor(), &target, &comps).prefixed(&format!("({})", labels.join(",")));
    for x in c.objects() {
        if !comps[x].is_bijective() {
            report.violation(
                "bijective",
                format!(
                    "({}) at {}: {} elements against {}",
                    labels.join(","),
                    c.obj_label(x),
                    conv.functor().obj[x],
                    target.obj[x]
                ),
            );
        }
    }
    Ok(report)
}

/// `y(X) ⊛ y(Y) ≅ y(X ⊗ Y)` by isomorphism search, for every pair.
pub fn check_representable_pairs(p: &PresheafCategory) -> Result<ValidationReport> {
    let t = &p.day.target;
    let m = &p.base;
    let c = &m.base;
    let mut report = ValidationReport::new();
    let ys: Vec<TargetFunctor<FinSet>> = c.objects().map(|x| p.yoneda(x)).collect();
    for a in c.objects() {
        for b in c.objects() {
            let conv = p.day.day_tensor(&ys[a], &ys[b])?;
            if t.find_natural_iso(&conv, &ys[m.tensor_obj(a, b)])?.is_none() {
                report.violation("representable-pair", format!("y({}) ⊛ y({})", c.obj_label(a), c.obj_label(b)));
            }
        }
    }
    Ok(report)
}

/// The map of fibrations `C^⊗ -> P(C)^⊗` sending a tuple of objects to the
/// tuple of their representables.
pub struct YonedaEmbedding {
    pub presheaves: PresheafCategory,
    pub source: TensorFibration,
    pub target: DayFibration<FinSet>,
    pub functor: Functor,
    /// Representative of `y(X)` in the generated presheaf category.
    pub representative: Vec<ObjId>,
}

impl std::fmt::Debug for YonedaEmbedding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("YonedaEmbedding")
            .field("base", &self.presheaves.base.name)
            .field("representative", &self.representative)
            .finish()
    }
}

pub fn yoneda_embedding(m: &SymMonoidalStructure, skeleton: &PointedSkeleton, max_objects: usize) -> Result<YonedaEmbedding> {
    let presheaves = PresheafCategory::new(m, FinSet::default())?;
    let c = &presheaves.base.base;
    let t = presheaves.day.target.clone();
    let gens: Vec<(String, TargetFunctor<FinSet>)> =
        c.objects().map(|x| (format!("y{}", c.obj_label(x)), presheaves.yoneda(x))).collect();
    let target = build_day_fibration(&presheaves.day, &gens, skeleton, max_objects)?;
    let source = build_tensor_fibration(m, skeleton)?;
    let dc = &target.category;

    // to_rep[x] : y(x) ⇒ r_x
    let mut representative = Vec::with_capacity(c.num_objects());
    let mut to_rep = Vec::with_capacity(c.num_objects());
    for (x, (_, y)) in gens.iter().enumerate() {
        let (r, iso) = dc.classify(y)?.ok_or_else(|| Error::Closure(format!("y({}) has no representative", c.obj_label(x))))?;
        representative.push(r);
        to_rep.push(iso);
    }

    // β(xs) : nf(r_{x_1}, …, r_{x_k}) ⇒ y(nf(xs)), built left to right
    let mut betas: HashMap<Vec<ObjId>, (ObjId, Vec<FinFn>)> = HashMap::new();
    let (_, _, kappa0) = presheaves.comparison(&[])?;
    let unit_from_rep = inverse_nat(&t, dc.unit_iso()).expect("unit iso is invertible");
    betas.insert(vec![], (dc.monoidal.unit, compose_nat(&t, &kappa0, &unit_from_rep)));
    let mut beta = |xs: &[ObjId]| -> Result<(ObjId, Vec<FinFn>)> {
        for k in 1..=xs.len() {
            if betas.contains_key(&xs[..k]) {
                continue;
            }
            let x = xs[k - 1];
            let from_rep = inverse_nat(&t, &to_rep[x]).expect("classification iso is invertible");
            let entry = if k == 1 {
                (representative[x], from_rep)
            } else {
                let (prev, beta_prev) = betas[&xs[..k - 1]].clone();
                let prod = dc.product(prev, representative[x]);
                let a = presheaves.base.nf_obj(&xs[..k - 1]);
                let (ya, yx) = (presheaves.yoneda(a), presheaves.yoneda(x));
                let (pair, _, kappa) = presheaves.comparison(&[a, x])?;
                debug_assert!(pair.factors[0] == ya && pair.factors[1] == yx);
                let both = presheaves.day.tensor_map(&prod.convolution, &pair, &[&beta_prev, &from_rep])?;
                let theta_inv = inverse_nat(&t, &prod.theta).expect("theta is invertible");
                (prod.rep, compose_nat(&t, &kappa, &compose_nat(&t, &both, &theta_inv)))
            };
            betas.insert(xs[..k].to_vec(), entry);
        }
        Ok(betas[xs].clone())
    };

    let e = &source.fibration.total;
    let obj_map: Vec<ObjId> = e
        .objects()
        .map(|x| {
            let tuple: Vec<ObjId> = source.tuple(x).iter().map(|&a| representative[a]).collect();
            target.tensor.object(&tuple)
        })
        .collect();
    let s = &source.skeleton;
    let mut mor_map = Vec::with_capacity(e.num_morphisms());
    for u in e.morphisms() {
        let x = e.source(u);
        let f = source.fibration.projection.mor(u);
        let tx = source.tuple(x);
        let mut comps = Vec::new();
        for (slot, &phi) in source.components(u).iter().enumerate() {
            let group: Vec<ObjId> = s.preimage(f, slot + 1).iter().map(|&i| tx[i - 1]).collect();
            let (from, b) = beta(&group)?;
            let to = c.target(phi);
            let nat = compose_nat(&t, &to_rep[to], &compose_nat(&t, &presheaves.yoneda_map(phi), &b));
            let id = dc.morphism(from, representative[to], &nat).ok_or_else(|| {
                Error::invalid("Yoneda embedding", format!("image of {} is not a morphism", e.describe_mor(u)))
            })?;
            comps.push(id);
        }
        let image = target.tensor.morphism(obj_map[x], f, &comps).ok_or_else(|| {
            Error::invalid("Yoneda embedding", format!("no morphism over {} for {}", s.category.describe_mor(f), e.describe_mor(u)))
        })?;
        mor_map.push(image);
    }
    let functor = Functor::new(e.clone(), target.fibration().total.clone(), obj_map, mor_map);
    Ok(YonedaEmbedding {
        presheaves,
        source,
        target,
        functor,
        representative,
    })
}

impl YonedaEmbedding {
    /// Functoriality, compatibility with the projections, preservation of
    /// cocartesian edges, and strict commutation with inert pushforwards.
    pub fn certify(&self) -> ValidationReport {
        let mut report = validate_functor(&self.functor).prefixed("embedding");
        if report.has_structural() {
            return report;
        }
        let (src, tgt) = (&self.source.fibration, self.target.fibration());
        let over = self.functor.then(&tgt.projection);
        if over.obj_map != src.projection.obj_map || over.mor_map != src.projection.mor_map {
            report.violation("over-base", "embedding does not commute with the projections");
        }
        let e = &src.total;
        let s = &self.source.skeleton;
        for x in e.objects() {
            for &f in s.category.outgoing(src.over(x)) {
                let lift = self.source.canonical_lift(x, f);
                let image = self.functor.mor(lift);
                if !tgt.is_cocartesian_edge(image) {
                    report.violation("cocartesian", e.describe_mor(lift));
                }
                if s.classify(f).inert {
                    let pushed = tgt.pushforward_object(self.functor.obj(x), f).ok();
                    if pushed != Some(self.functor.obj(e.target(lift))) {
                        report.violation("inert", e.describe_mor(lift));
                    }
                }
            }
        }
        report
    }
}

/// Validate `y` on every object as a presheaf.
pub fn validate_representables(p: &PresheafCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    for x in p.base.base.objects() {
        report.extend(validate_target_functor(&p.day.target, &p.yoneda(x)).prefixed(&format!("y({x})")));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::corpus;

    #[test]
    fn representables_on_z3() {
        let p = PresheafCategory::new(&corpus::z3(), FinSet::default()).unwrap();
        let (conv, target, comps) = p.comparison(&[1, 2]).unwrap();
        assert_eq!(conv.functor().obj, vec![1, 0, 0]);
        assert_eq!(target.obj, vec![1, 0, 0]);
        assert!(comps.iter().all(FinFn::is_bijective));
        for zs in [vec![], vec![1], vec![1, 2], vec![2, 2, 2]] {
            let r = check_representable_convolution(&p, &zs).unwrap();
            assert!(r.is_empty(), "{zs:?}: {r}");
        }
        assert!(check_representable_pairs(&p).unwrap().is_empty());
    }

    #[test]
    fn unit_is_representable_at_unit() {
        for m in corpus::corpus() {
            let p = PresheafCategory::new(&m, FinSet::default()).unwrap();
            let u = p.day.day_unit().unwrap();
            let y = p.yoneda(m.unit);
            assert!(p.day.target.find_natural_iso(&u, &y).unwrap().is_some(), "{}", m.name);
            assert!(check_representable_convolution(&p, &[]).unwrap().is_empty());
        }
    }

    #[test]
    fn poset_representables() {
        let p = PresheafCategory::new(&corpus::divisors12(), FinSet::default()).unwrap();
        assert!(validate_representables(&p).is_empty());
        let r = check_representable_pairs(&p).unwrap();
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn embedding_of_z3() {
        let s = PointedSkeleton::new(2);
        let y = yoneda_embedding(&corpus::z3(), &s, 8).unwrap();
        let r = y.certify();
        assert!(r.is_empty(), "{r}");
        let src = &y.source;
        let x = src.object(&[1, 2]);
        let pushed = src.fibration.pushforward_object(x, s.multiplication(2)).unwrap();
        let image = y.target.tensor.tuple(y.functor.obj(pushed));
        assert_eq!(image, vec![y.representative[0]]);
        // the empty tuple goes to the empty tuple, whose pushforward to <1> is the unit
        let empty = src.object(&[]);
        let unit = y.target.fibration().pushforward_object(y.functor.obj(empty), s.multiplication(0)).unwrap();
        assert_eq!(y.target.tensor.tuple(unit), vec![y.representative[0]]);
    }

    #[test]
    fn tampered_embedding_is_rejected() {
        let s = PointedSkeleton::new(1);
        let mut y = yoneda_embedding(&corpus::z2(), &s, 8).unwrap();
        let x = y.source.object(&[1]);
        y.functor.obj_map[x] = y.target.tensor.object(&[y.representative[0]]);
        assert!(!y.certify().is_empty());
    }

    #[test]
    fn embedding_with_nontrivial_structure_maps() {
        let s = PointedSkeleton::new(2);
        for m in [corpus::super_z2(), corpus::chain2()] {
            let y = yoneda_embedding(&m, &s, 8).unwrap();
            let r = y.certify();
            assert!(r.is_empty(), "{}: {r}", m.name);
        }
    }
}
