//! A finite full subcategory of `Fun(C, T)` closed under Day convolution,
//! its symmetric monoidal structure, and the resulting fibration over the
//! pointed skeleton.
//!
//! Objects are representatives of isomorphism classes: the unit, the
//! generators, and every convolution of two objects, each identified with
//! an existing representative whenever a natural isomorphism exists.
//! Morphisms are all natural transformations between representatives.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cocomplete::{compose_nat, identity_nat, inverse_nat, validate_target_functor, TargetFunctor};
use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, MorId, ObjId};
use crate::grothendieck::{build_tensor_fibration, TensorFibration};
use crate::monoidal::{validate_monoidal, PointedSkeleton, SymMonoidalStructure};
use crate::report::ValidationReport;

use super::{Convolution, DayStructure, DayTarget};

const NAT_LIMIT: usize = 100_000;

pub struct DayCategory<T: DayTarget> {
    pub day: Arc<DayStructure<T>>,
    pub labels: Vec<String>,
    pub functors: Vec<TargetFunctor<T>>,
    pub category: Arc<FinCategory>,
    /// Components of each morphism of `category`.
    pub transformations: Vec<Vec<T::Mor>>,
    pub monoidal: SymMonoidalStructure,
    products: HashMap<(ObjId, ObjId), Product<T>>,
    unit_iso: Vec<T::Mor>,
    mor_index: HashMap<(ObjId, ObjId, Vec<T::Mor>), MorId>,
}

/// `r_i ⊛ r_j`, its representative `rep`, and `theta : r_i ⊛ r_j ⇒ r_rep`.
#[derive(Clone, Debug)]
pub struct Product<T: DayTarget> {
    pub rep: ObjId,
    pub convolution: Convolution<T>,
    pub theta: Vec<T::Mor>,
}

impl<T: DayTarget> std::fmt::Debug for DayCategory<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DayCategory")
            .field("labels", &self.labels)
            .field("morphisms", &self.category.num_morphisms())
            .finish()
    }
}

impl<T: DayTarget> DayCategory<T> {
    pub fn len(&self) -> usize {
        self.functors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functors.is_empty()
    }

    /// The representative isomorphic to `f`, with an isomorphism `f ⇒ r`.
    pub fn classify(&self, f: &TargetFunctor<T>) -> Result<Option<(ObjId, Vec<T::Mor>)>> {
        classify(&self.day.target, &self.functors, f)
    }

    pub fn product(&self, i: ObjId, j: ObjId) -> &Product<T> {
        &self.products[&(i, j)]
    }

    /// The isomorphism from the Day unit onto its representative.
    pub fn unit_iso(&self) -> &[T::Mor] {
        &self.unit_iso
    }

    pub fn morphism(&self, i: ObjId, j: ObjId, comps: &[T::Mor]) -> Option<MorId> {
        self.mor_index.get(&(i, j, comps.to_vec())).copied()
    }
}

fn classify<T: DayTarget>(
    t: &T,
    reps: &[TargetFunctor<T>],
    f: &TargetFunctor<T>,
) -> Result<Option<(ObjId, Vec<T::Mor>)>> {
    for (i, r) in reps.iter().enumerate() {
        if let Some(iso) = t.find_natural_iso(f, r)? {
            return Ok(Some((i, iso)));
        }
    }
    Ok(None)
}

struct Reps<T: DayTarget> {
    labels: Vec<String>,
    functors: Vec<TargetFunctor<T>>,
    max: usize,
}

impl<T: DayTarget> Reps<T> {
    fn insert(&mut self, t: &T, label: String, f: TargetFunctor<T>) -> Result<(ObjId, Vec<T::Mor>)> {
        if let Some(found) = classify(t, &self.functors, &f)? {
            return Ok(found);
        }
        if self.functors.len() >= self.max {
            return Err(Error::Closure(format!(
                "{label} is not isomorphic to any of the {} generated functors",
                self.max
            )));
        }
        let id = identity_nat(t, &f);
        self.functors.push(f);
        self.labels.push(label);
        Ok((self.functors.len() - 1, id))
    }
}

fn lookup<T: DayTarget>(
    index: &HashMap<(ObjId, ObjId, Vec<T::Mor>), MorId>,
    labels: &[String],
    i: ObjId,
    j: ObjId,
    comps: Vec<T::Mor>,
    what: &str,
) -> Result<MorId> {
    index.get(&(i, j, comps)).copied().ok_or_else(|| {
        Error::invalid(
            "Day category",
            format!("{what} {} -> {} is not among the natural transformations", labels[i], labels[j]),
        )
    })
}

fn invert<T: DayTarget>(t: &T, alpha: &[T::Mor], what: &str) -> Result<Vec<T::Mor>> {
    inverse_nat(t, alpha).ok_or_else(|| Error::invalid("Day category", format!("{what} is not invertible")))
}

/// Close `generators` (and the unit) under Day convolution up to
/// isomorphism, with at most `max_objects` representatives, and equip the
/// result with the convolution monoidal structure.
pub fn generate_day_category<T: DayTarget>(
    day: &Arc<DayStructure<T>>,
    generators: &[(String, TargetFunctor<T>)],
    max_objects: usize,
) -> Result<DayCategory<T>> {
    let t = &day.target;
    let mut reps = Reps {
        labels: Vec::new(),
        functors: Vec::new(),
        max: max_objects,
    };
    let unit = day.convolve(&[])?;
    let (unit_rep, unit_iso) = reps.insert(t, "I".to_string(), unit.functor().clone())?;
    for (label, g) in generators {
        let report = validate_target_functor(t, g);
        if !report.is_empty() {
            return Err(Error::invalid(format!("generator {label}"), report.to_string()));
        }
        reps.insert(t, label.clone(), g.clone())?;
    }

    let mut products: HashMap<(ObjId, ObjId), Product<T>> = HashMap::new();
    let mut done = 0;
    while done < reps.functors.len() {
        let n = reps.functors.len();
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                let convolution = day.convolve(&[&reps.functors[i], &reps.functors[j]])?;
                let label = format!("({}⊛{})", reps.labels[i], reps.labels[j]);
                let (rep, theta) = reps.insert(t, label, convolution.functor().clone())?;
                products.insert(
                    (i, j),
                    Product {
                        rep,
                        convolution,
                        theta,
                    },
                );
            }
        }
        done = n;
    }
    let Reps { labels, functors, .. } = reps;
    let n = functors.len();

    // every natural transformation between representatives
    let mut builder = CategoryBuilder::new(format!("Day({})", day.monoidal.name));
    for l in &labels {
        builder.add_object(l.clone());
    }
    let mut transformations: Vec<Vec<T::Mor>> = Vec::new();
    let mut mor_index = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for (k, comps) in t
                .natural_transformations(&functors[i], &functors[j], NAT_LIMIT)?
                .into_iter()
                .enumerate()
            {
                let label = if i == j && comps == identity_nat(t, &functors[i]) {
                    format!("id_{}", labels[i])
                } else {
                    format!("{}->{}#{k}", labels[i], labels[j])
                };
                let id = builder.add_morphism(label, i, j);
                mor_index.insert((i, j, comps.clone()), id);
                transformations.push(comps);
            }
        }
    }
    let identities = (0..n)
        .map(|i| mor_index[&(i, i, identity_nat(t, &functors[i]))])
        .collect();
    let srcs: Vec<ObjId> = {
        let mut v = vec![0; transformations.len()];
        for (&(i, _, _), &m) in &mor_index {
            v[m] = i;
        }
        v
    };
    let tgts: Vec<ObjId> = {
        let mut v = vec![0; transformations.len()];
        for (&(_, j, _), &m) in &mor_index {
            v[m] = j;
        }
        v
    };
    let category = Arc::new(builder.build(identities, |g, f| {
        mor_index
            .get(&(srcs[f], tgts[g], compose_nat(t, &transformations[g], &transformations[f])))
            .copied()
    })?);
    let g = &category;
    let nm = g.num_morphisms();

    // tensor on morphisms: θ' ∘ (α ⊛ β) ∘ θ⁻¹
    let mut tensor_mor = vec![0; nm * nm];
    for a in 0..nm {
        for b in 0..nm {
            let from = &products[&(srcs[a], srcs[b])];
            let to = &products[&(tgts[a], tgts[b])];
            let conv = day.tensor_map(
                &from.convolution,
                &to.convolution,
                &[&transformations[a], &transformations[b]],
            )?;
            let comps = compose_nat(t, &to.theta, &compose_nat(t, &conv, &invert(t, &from.theta, "θ")?));
            tensor_mor[a * nm + b] = lookup::<T>(&mor_index, &labels, from.rep, to.rep, comps, "tensor of morphisms")?;
        }
    }

    let mut symmetry = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let (ij, ji) = (&products[&(i, j)], &products[&(j, i)]);
            let sigma = day.symmetry(&ij.convolution, &ji.convolution)?;
            let comps = compose_nat(t, &ji.theta, &compose_nat(t, &sigma, &invert(t, &ij.theta, "θ")?));
            symmetry[i * n + j] = lookup::<T>(&mor_index, &labels, ij.rep, ji.rep, comps, "symmetry")?;
        }
    }

    let mut associator = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let ij = &products[&(i, j)];
            for k in 0..n {
                let jk = &products[&(j, k)];
                let left = &products[&(ij.rep, k)];
                let right = &products[&(i, jk.rep)];
                let fg_h = day.convolve(&[ij.convolution.functor(), &functors[k]])?;
                let f_gh = day.convolve(&[&functors[i], jk.convolution.functor()])?;
                let alpha = day.associator(&ij.convolution, &fg_h, &jk.convolution, &f_gh)?;
                let id_i = identity_nat(t, &functors[i]);
                let id_k = identity_nat(t, &functors[k]);
                let l1 = day.tensor_map(&fg_h, &left.convolution, &[&ij.theta, &id_k])?;
                let l2 = day.tensor_map(&f_gh, &right.convolution, &[&id_i, &jk.theta])?;
                let into_left = compose_nat(t, &left.theta, &l1);
                let comps = compose_nat(
                    t,
                    &right.theta,
                    &compose_nat(t, &l2, &compose_nat(t, &alpha, &invert(t, &into_left, "θ ∘ (θ ⊛ id)")?)),
                );
                associator[(i * n + j) * n + k] =
                    lookup::<T>(&mor_index, &labels, left.rep, right.rep, comps, "associator")?;
            }
        }
    }

    let mut left_unitor = vec![0; n];
    let mut right_unitor = vec![0; n];
    for i in 0..n {
        let ui = &products[&(unit_rep, i)];
        let uf = day.convolve(&[unit.functor(), &functors[i]])?;
        let lambda = day.left_unitor(&unit, &uf)?;
        let l = day.tensor_map(&uf, &ui.convolution, &[&unit_iso, &identity_nat(t, &functors[i])])?;
        let into = compose_nat(t, &ui.theta, &l);
        let comps = compose_nat(t, &lambda, &invert(t, &into, "θ ∘ (θ_I ⊛ id)")?);
        left_unitor[i] = lookup::<T>(&mor_index, &labels, ui.rep, i, comps, "left unitor")?;
    }
    for i in 0..n {
        // ρ = λ ∘ σ
        right_unitor[i] = g.comp(left_unitor[i], symmetry[i * n + unit_rep]);
    }

    let tensor_obj: Vec<ObjId> = (0..n * n).map(|p| products[&(p / n, p % n)].rep).collect();
    let monoidal = SymMonoidalStructure::new(
        format!("Day({})", day.monoidal.name),
        category.clone(),
        |a, b| tensor_obj[a * n + b],
        |f, h| tensor_mor[f * nm + h],
        unit_rep,
        |a, b, c| associator[(a * n + b) * n + c],
        |a| left_unitor[a],
        |a| right_unitor[a],
        |a, b| symmetry[a * n + b],
    );
    let report = validate_monoidal(&monoidal);
    if !report.is_empty() {
        return Err(Error::invalid(format!("Day structure on {}", day.monoidal.name), report.to_string()));
    }
    Ok(DayCategory {
        day: day.clone(),
        labels,
        functors,
        category,
        transformations,
        monoidal,
        products,
        unit_iso,
        mor_index,
    })
}

/// The tensor fibration of a generated Day category: the fiber over `⟨n⟩`
/// is the `n`-fold power, and the cocartesian pushforward along `f`
/// convolves the entries in each fiber of `f`.
pub struct DayFibration<T: DayTarget> {
    pub category: DayCategory<T>,
    pub tensor: TensorFibration,
}

impl<T: DayTarget> std::fmt::Debug for DayFibration<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DayFibration")
            .field("category", &self.category)
            .field("total", &self.tensor.fibration.total.num_morphisms())
            .finish()
    }
}

impl<T: DayTarget> DayFibration<T> {
    pub fn fibration(&self) -> &crate::grothendieck::GrothFibration {
        &self.tensor.fibration
    }

    /// The functors making up an object of the total category.
    pub fn functors_of(&self, x: ObjId) -> Vec<&TargetFunctor<T>> {
        self.tensor.tuple(x).into_iter().map(|i| &self.category.functors[i]).collect()
    }
}

pub fn build_day_fibration<T: DayTarget>(
    day: &Arc<DayStructure<T>>,
    generators: &[(String, TargetFunctor<T>)],
    skeleton: &PointedSkeleton,
    max_objects: usize,
) -> Result<DayFibration<T>> {
    let category = generate_day_category(day, generators, max_objects)?;
    let tensor = build_tensor_fibration(&category.monoidal, skeleton)?;
    Ok(DayFibration { category, tensor })
}

/// Every marked edge must land, componentwise, on the pointwise Kan
/// extension formula for the convolution of its fibers; and the chosen
/// lift at every `(x, f)` must be cocartesian.
pub fn check_pushforward_is_kan<T: DayTarget>(df: &DayFibration<T>) -> Result<ValidationReport> {
    let pi = df.fibration();
    let (e_cat, s) = (&pi.total, &df.tensor.skeleton);
    let day = &df.category.day;
    let t = &day.target;
    let mut formulas: HashMap<Vec<ObjId>, TargetFunctor<T>> = HashMap::new();
    let mut report = ValidationReport::new();
    for e in e_cat.morphisms() {
        if !pi.is_marked(e) {
            continue;
        }
        let (x, y) = (df.tensor.tuple(e_cat.source(e)), df.tensor.tuple(e_cat.target(e)));
        let f = pi.projection.mor(e);
        for (slot, &yt) in y.iter().enumerate() {
            let group: Vec<ObjId> = s.preimage(f, slot + 1).iter().map(|&i| x[i - 1]).collect();
            if !formulas.contains_key(&group) {
                let fs: Vec<&TargetFunctor<T>> = group.iter().map(|&i| &df.category.functors[i]).collect();
                formulas.insert(group.clone(), day.convolve(&fs)?.kan.functor);
            }
            if t.find_natural_iso(&formulas[&group], &df.category.functors[yt])?.is_none() {
                report.violation(
                    "kan-formula",
                    format!(
                        "edge {}: entry {} is not the left Kan extension of the convolution of its fiber",
                        e_cat.describe_mor(e),
                        slot + 1
                    ),
                );
            }
        }
    }
    for x in e_cat.objects() {
        for &f in pi.base.outgoing(pi.over(x)) {
            let e = df.tensor.canonical_lift(x, f);
            if !pi.is_cocartesian_edge(e) {
                report.violation("kan-edge-cocartesian", e_cat.describe_mor(e));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocomplete::{FinSet, Target};
    use crate::day::{initial_functor, representable};
    use crate::grothendieck::validate_cocartesian_fibration;
    use crate::monoidal::corpus;

    fn representables(day: &DayStructure<FinSet>) -> Vec<(String, TargetFunctor<FinSet>)> {
        let c = day.base();
        c.objects().map(|x| (format!("y{}", c.obj_label(x)), representable(c, x))).collect()
    }

    #[test]
    fn z3_representables_close_up() {
        let day = Arc::new(DayStructure::new(&corpus::z3(), FinSet::default()).unwrap());
        let dc = generate_day_category(&day, &representables(&day), 8).unwrap();
        // the unit is y0, so three representatives
        assert_eq!(dc.len(), 3);
        let y = |k: usize| dc.classify(&representable(day.base(), k)).unwrap().unwrap().0;
        assert_eq!(dc.product(y(1), y(2)).rep, y(0));
        assert_eq!(dc.product(y(2), y(2)).rep, y(1));
    }

    #[test]
    fn closure_failure_names_the_tensor() {
        let day = Arc::new(DayStructure::new(&corpus::z2(), FinSet::default()).unwrap());
        let c = day.base().clone();
        let both = TargetFunctor::new(c.clone(), vec![1, 1], vec![day.target.identity(&1); 2]);
        let err = generate_day_category(&day, &[("P".into(), both)], 4).unwrap_err();
        assert!(matches!(err, Error::Closure(ref m) if m.contains("⊛")), "{err}");
    }

    #[test]
    fn day_fibration_over_z2_with_initial() {
        let day = Arc::new(DayStructure::new(&corpus::z2(), FinSet::default()).unwrap());
        let mut gens = representables(&day);
        gens.push(("0".into(), initial_functor(&day.target, day.base())));
        let df = build_day_fibration(&day, &gens, &PointedSkeleton::new(2), 8).unwrap();
        assert_eq!(df.category.len(), 3);
        let r = validate_cocartesian_fibration(df.fibration());
        assert!(r.is_empty(), "{r}");
        let r = check_pushforward_is_kan(&df).unwrap();
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn super_signs_survive_convolution() {
        let day = Arc::new(DayStructure::new(&corpus::super_z2(), FinSet::default()).unwrap());
        let dc = generate_day_category(&day, &representables(&day), 8).unwrap();
        assert_eq!(dc.len(), 2);
        assert!(!dc.monoidal.is_strict());
    }

    #[test]
    fn z3_multiplication_and_projections() {
        let day = Arc::new(DayStructure::new(&corpus::z3(), FinSet::default()).unwrap());
        let s = PointedSkeleton::new(2);
        let df = build_day_fibration(&day, &representables(&day), &s, 8).unwrap();
        let pi = df.fibration();
        let y = |k: usize| df.category.classify(&representable(day.base(), k)).unwrap().unwrap().0;
        let x = df.tensor.object(&[y(1), y(2)]);
        let pushed = pi.pushforward_object(x, s.multiplication(2)).unwrap();
        assert_eq!(df.tensor.tuple(pushed), vec![y(0)]);
        for x in pi.objects_over(s.object(2)) {
            let tuple = df.tensor.tuple(x);
            for j in 1..=2 {
                let p = pi.pushforward_object(x, s.inert_projection(2, j)).unwrap();
                assert_eq!(df.tensor.tuple(p), vec![tuple[j - 1]]);
            }
        }
        // the only object over <0> is the empty tuple
        assert_eq!(pi.objects_over(s.object(0)).len(), 1);
    }

    #[test]
    fn wrong_marking_names_the_edge() {
        let day = Arc::new(DayStructure::new(&corpus::z2(), FinSet::default()).unwrap());
        let mut gens = representables(&day);
        gens.push(("0".into(), initial_functor(&day.target, day.base())));
        let s = PointedSkeleton::new(2);
        let df = build_day_fibration(&day, &gens, &s, 8).unwrap();
        let pi = df.fibration();
        let zero = df.category.classify(&initial_functor(&day.target, day.base())).unwrap().unwrap().0;
        let y1 = df.category.classify(&representable(day.base(), 1)).unwrap().unwrap().0;
        let y0 = df.category.classify(&representable(day.base(), 0)).unwrap().unwrap().0;
        let x = df.tensor.object(&[zero, y1]);
        let mu = s.multiplication(2);
        let bad = pi
            .edges_over(x, mu)
            .iter()
            .copied()
            .find(|&e| df.tensor.tuple(pi.total.target(e)) == vec![y0])
            .expect("0 ⊛ y1 maps to y0");
        assert!(!pi.is_cocartesian_edge(bad));
        pi.set_marking(bad, true);
        let r = check_pushforward_is_kan(&df).unwrap();
        assert_eq!(r.len(), 1, "{r}");
        assert!(r.mentions("kan-formula", &pi.total.describe_mor(bad)), "{r}");
    }
}
