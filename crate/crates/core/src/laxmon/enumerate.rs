//! Exhaustive enumeration of commutative Day monoids and of lax symmetric
//! monoidal functors into finite sets with bounded carriers, each up to
//! isomorphism, and the certificate that the translation matches them.
//!
//! The two sides are solved independently. Monoid constraints are stated
//! on elements of the convolution colimits and use the Day associator,
//! unitor and symmetry; lax constraints are stated on the components
//! `μ_{a,b}` directly.

use std::collections::{BTreeMap, HashMap};

use crate::cocomplete::{FinFn, FinSet, MonoidalTarget, Target, TargetFunctor};
use crate::day::{Convolution, DayStructure};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, ObjId};
use crate::report::ValidationReport;

use super::csp::Csp;
use super::{extract_lax, frame, lax_to_monoid, validate_lax, validate_monoid};
use super::{CommutativeMonoidObject, LaxMonoidalFunctor};

const SOLUTION_LIMIT: usize = 1_000_000;
const AUTOMORPHISM_LIMIT: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub carriers: Vec<TargetFunctor<FinSet>>,
    pub monoids: Vec<CommutativeMonoidObject<FinSet>>,
    /// Index into `carriers` for each monoid.
    pub monoid_carrier: Vec<usize>,
    pub lax: Vec<LaxMonoidalFunctor<FinSet>>,
    pub lax_carrier: Vec<usize>,
    /// `monoids[i]` translates to a lax functor isomorphic to
    /// `lax[matching[i]]`.
    pub matching: Vec<usize>,
}

/// Functors `C -> FinSet` with every value of size at most `bound`, one per
/// isomorphism class.
pub fn enumerate_carriers(t: &FinSet, c: &std::sync::Arc<FinCategory>, bound: usize) -> Result<Vec<TargetFunctor<FinSet>>> {
    let n = c.num_objects();
    let mut out: Vec<TargetFunctor<FinSet>> = Vec::new();
    let mut sizes = vec![0usize; n];
    loop {
        for f in functors_with_sizes(c, &sizes)? {
            let mut fresh = true;
            for g in out.iter().filter(|g| g.obj == f.obj) {
                if t.find_natural_iso(&f, g)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                out.push(f);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            sizes[k] += 1;
            if sizes[k] <= bound {
                break;
            }
            sizes[k] = 0;
        }
    }
}

fn functors_with_sizes(c: &std::sync::Arc<FinCategory>, sizes: &[usize]) -> Result<Vec<TargetFunctor<FinSet>>> {
    // one variable per (morphism, element of its source)
    let mut off = Vec::with_capacity(c.num_morphisms());
    let mut domains = Vec::new();
    for m in c.morphisms() {
        off.push(domains.len());
        domains.extend(std::iter::repeat(sizes[c.target(m)]).take(sizes[c.source(m)]));
    }
    let mut csp = Csp::new(domains);
    for x in c.objects() {
        let id = c.identity(x);
        for i in 0..sizes[x] {
            let v = off[id] + i;
            csp.add(move |a| Ok(a[v].ok_or(v)? == i));
        }
    }
    for g in c.morphisms() {
        for &f in c.incoming(c.source(g)) {
            let gf = c.comp(g, f);
            let (og, of, ogf) = (off[g], off[f], off[gf]);
            for i in 0..sizes[c.source(f)] {
                csp.add(move |a| {
                    let fi = a[of + i].ok_or(of + i)?;
                    let gfi = a[og + fi].ok_or(og + fi)?;
                    Ok(a[ogf + i].ok_or(ogf + i)? == gfi)
                });
            }
        }
    }
    let solutions = csp.solve(SOLUTION_LIMIT)?;
    Ok(solutions
        .into_iter()
        .map(|sol| {
            let mor = c
                .morphisms()
                .map(|m| FinFn::new(sizes[c.target(m)], sol[off[m]..off[m] + sizes[c.source(m)]].to_vec()))
                .collect();
            TargetFunctor::new(c.clone(), sizes.to_vec(), mor)
        })
        .collect())
}

/// Element `w` of a colimit apex as `(comma index, element of the diagram
/// value)`, for every `w`.
fn representatives(kan_legs: &[FinFn], apex: usize) -> Vec<(usize, usize)> {
    let mut rep = vec![None; apex];
    for (k, leg) in kan_legs.iter().enumerate() {
        for (e, &w) in leg.map.iter().enumerate() {
            rep[w].get_or_insert((k, e));
        }
    }
    rep.into_iter().map(|r| r.expect("colimit legs are jointly surjective")).collect()
}

fn invert(f: &FinFn) -> FinFn {
    let mut map = vec![0; f.cod];
    for (i, &v) in f.map.iter().enumerate() {
        map[v] = i;
    }
    FinFn::new(f.dom(), map)
}

fn flatten(fs: &[FinFn], out: &mut Vec<usize>) {
    for f in fs {
        out.extend(&f.map);
    }
}

struct MonoidSearch {
    ff: Convolution<FinSet>,
    u: Convolution<FinSet>,
    /// `(φ, (φ ⊛ φ)^{-1})` per automorphism `φ` of the carrier.
    actions: Vec<(Vec<FinFn>, Vec<FinFn>)>,
}

impl MonoidSearch {
    fn key(&self, mult: &[FinFn], unit: &[FinFn]) -> Vec<usize> {
        let t = FinSet::default();
        let mut best: Option<Vec<usize>> = None;
        for (phi, pp_inv) in &self.actions {
            let mut key = Vec::new();
            let u2: Vec<FinFn> = unit.iter().zip(phi).map(|(u, p)| t.compose(p, u)).collect();
            let m2: Vec<FinFn> = mult
                .iter()
                .zip(phi)
                .zip(pp_inv)
                .map(|((m, p), q)| t.compose(p, &t.compose(m, q)))
                .collect();
            flatten(&u2, &mut key);
            flatten(&m2, &mut key);
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        best.expect("the identity is an automorphism")
    }
}

fn lax_key(actions: &[(Vec<FinFn>, Vec<FinFn>)], l: &LaxMonoidalFunctor<FinSet>) -> Result<Vec<usize>> {
    let t = FinSet::default();
    let m = &l.source;
    let c = &m.base;
    let mut best: Option<Vec<usize>> = None;
    for (phi, _) in actions {
        let mut key = t.compose(&phi[m.unit], &l.unit).map;
        for a in c.objects() {
            for b in c.objects() {
                let inv = t.tensor_mor(&invert(&phi[a]), &invert(&phi[b]))?;
                key.extend(t.compose(&phi[m.tensor_obj(a, b)], &t.compose(l.mu(a, b), &inv)).map);
            }
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    Ok(best.expect("the identity is an automorphism"))
}

fn automorphism_actions(day: &DayStructure<FinSet>, f: &TargetFunctor<FinSet>, ff: &Convolution<FinSet>) -> Result<Vec<(Vec<FinFn>, Vec<FinFn>)>> {
    let t = &day.target;
    t.natural_isomorphisms(f, f, AUTOMORPHISM_LIMIT)?
        .into_iter()
        .map(|phi| {
            let pp = day.tensor_map(ff, ff, &[&phi, &phi])?;
            Ok((phi, pp.iter().map(invert).collect()))
        })
        .collect()
}

/// Commutative monoid structures `(m, u)` on `f`, as raw solutions.
fn solve_monoids(day: &DayStructure<FinSet>, f: &TargetFunctor<FinSet>, search: &MonoidSearch) -> Result<Vec<(Vec<FinFn>, Vec<FinFn>)>> {
    let c = day.base();
    let n = c.num_objects();
    let (ff, u) = (&search.ff, &search.u);
    let fr = frame(day, f, ff, u)?;
    let ffv = &ff.functor().obj;
    let uv = &u.functor().obj;
    let mut domains = Vec::new();
    let mut uoff = Vec::with_capacity(n);
    for x in c.objects() {
        uoff.push(domains.len());
        domains.extend(std::iter::repeat(f.obj[x]).take(uv[x]));
    }
    let mut moff = Vec::with_capacity(n);
    for x in c.objects() {
        moff.push(domains.len());
        domains.extend(std::iter::repeat(f.obj[x]).take(ffv[x]));
    }
    let mut csp = Csp::new(domains);
    let fo = &f.obj;
    for beta in c.morphisms().filter(|&b| !c.is_identity(b)) {
        let (x, x2) = (c.source(beta), c.target(beta));
        let fb = &f.mor[beta];
        for w in 0..ffv[x] {
            let (v1, v2) = (moff[x] + w, moff[x2] + ff.functor().mor[beta].apply(w));
            csp.add(move |a| Ok(a[v2].ok_or(v2)? == fb.apply(a[v1].ok_or(v1)?)));
        }
        for s in 0..uv[x] {
            let (v1, v2) = (uoff[x] + s, uoff[x2] + u.functor().mor[beta].apply(s));
            csp.add(move |a| Ok(a[v2].ok_or(v2)? == fb.apply(a[v1].ok_or(v1)?)));
        }
    }
    for x in c.objects() {
        for w in 0..ffv[x] {
            let w2 = fr.sigma[x].apply(w);
            if w2 != w {
                let (v1, v2) = (moff[x] + w, moff[x] + w2);
                csp.add(move |a| Ok(a[v1].ok_or(v1)? == a[v2].ok_or(v2)?));
            }
        }
        let reps = representatives(&fr.uf.kan.colimits[x].legs, fr.uf.functor().obj[x]);
        for (w, &(k, e)) in reps.iter().enumerate() {
            let (y, phi) = fr.uf.kan.commas[x].objects[k];
            let (i, b) = (y / n, y % n);
            let (s, z) = (e / fo[b], e % fo[b]);
            let leg = ff.kan.leg(x, y, phi).expect("same comma category");
            let target = fr.lambda[x].apply(w);
            let (vu, mx) = (uoff[i] + s, moff[x]);
            csp.add(move |a| {
                let us = a[vu].ok_or(vu)?;
                let v = mx + leg.apply(us * fo[b] + z);
                Ok(a[v].ok_or(v)? == target)
            });
        }
        let left = representatives(&fr.ff_f.kan.colimits[x].legs, fr.ff_f.functor().obj[x]);
        let right = representatives(&fr.f_ff.kan.colimits[x].legs, fr.f_ff.functor().obj[x]);
        for (w, &(k, e)) in left.iter().enumerate() {
            let (y, psi) = fr.ff_f.kan.commas[x].objects[k];
            let (cc, h) = (y / n, y % n);
            let (vv, z) = (e / fo[h], e % fo[h]);
            let leg_l = ff.kan.leg(x, y, psi).expect("same comma category");
            let (k2, e2) = right[fr.alpha[x].apply(w)];
            let (y2, phi) = fr.f_ff.kan.commas[x].objects[k2];
            let bc = y2 % n;
            let (p, q) = (e2 / ffv[bc], e2 % ffv[bc]);
            let leg_r = ff.kan.leg(x, y2, phi).expect("same comma category");
            let (ml, mr, mx) = (moff[cc] + vv, moff[bc] + q, moff[x]);
            csp.add(move |a| {
                let inner_l = a[ml].ok_or(ml)?;
                let lv = mx + leg_l.apply(inner_l * fo[h] + z);
                let lhs = a[lv].ok_or(lv)?;
                let inner_r = a[mr].ok_or(mr)?;
                let rv = mx + leg_r.apply(p * fo[bc] + inner_r);
                Ok(lhs == a[rv].ok_or(rv)?)
            });
        }
    }
    let sols = csp.solve(SOLUTION_LIMIT)?;
    Ok(sols
        .into_iter()
        .map(|sol| {
            let unit = c
                .objects()
                .map(|x| FinFn::new(fo[x], sol[uoff[x]..uoff[x] + uv[x]].to_vec()))
                .collect();
            let mult = c
                .objects()
                .map(|x| FinFn::new(fo[x], sol[moff[x]..moff[x] + ffv[x]].to_vec()))
                .collect();
            (mult, unit)
        })
        .collect())
}

/// Lax symmetric monoidal structures `(μ, ε)` on `f`, as raw solutions.
fn solve_lax(day: &DayStructure<FinSet>, f: &TargetFunctor<FinSet>) -> Result<Vec<(Vec<FinFn>, FinFn)>> {
    let m = &day.monoidal;
    let c = day.base();
    let n = c.num_objects();
    let fo = &f.obj;
    let mut domains = vec![fo[m.unit]];
    let mut off = Vec::with_capacity(n * n);
    for a in c.objects() {
        for b in c.objects() {
            off.push(domains.len());
            domains.extend(std::iter::repeat(fo[m.tensor_obj(a, b)]).take(fo[a] * fo[b]));
        }
    }
    let mu = |a: ObjId, b: ObjId, p: usize, q: usize| off[a * n + b] + p * fo[b] + q;
    let mut csp = Csp::new(domains);
    for u in c.morphisms() {
        for v in c.morphisms() {
            if c.is_identity(u) && c.is_identity(v) {
                continue;
            }
            let (a, b, a2, b2) = (c.source(u), c.source(v), c.target(u), c.target(v));
            let fuv = &f.mor[m.tensor_mor(u, v)];
            for p in 0..fo[a] {
                for q in 0..fo[b] {
                    let v1 = mu(a, b, p, q);
                    let v2 = mu(a2, b2, f.mor[u].apply(p), f.mor[v].apply(q));
                    csp.add(move |x| Ok(fuv.apply(x[v1].ok_or(v1)?) == x[v2].ok_or(v2)?));
                }
            }
        }
    }
    for a in c.objects() {
        let (fl, fr) = (&f.mor[m.lambda(a)], &f.mor[m.rho(a)]);
        let (la, ra) = (off[m.unit * n + a], off[a * n + m.unit]);
        let (fa, fi) = (fo[a], fo[m.unit]);
        for p in 0..fa {
            csp.add(move |x| {
                let e = x[0].ok_or(0usize)?;
                let v = la + e * fa + p;
                Ok(fl.apply(x[v].ok_or(v)?) == p)
            });
            csp.add(move |x| {
                let e = x[0].ok_or(0usize)?;
                let v = ra + p * fi + e;
                Ok(fr.apply(x[v].ok_or(v)?) == p)
            });
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            let fs = &f.mor[m.sigma(a, b)];
            for p in 0..fo[a] {
                for q in 0..fo[b] {
                    let (v1, v2) = (mu(a, b, p, q), mu(b, a, q, p));
                    csp.add(move |x| Ok(fs.apply(x[v1].ok_or(v1)?) == x[v2].ok_or(v2)?));
                }
            }
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            for d in c.objects() {
                let (ab, bd) = (m.tensor_obj(a, b), m.tensor_obj(b, d));
                let fa = &f.mor[m.assoc(a, b, d)];
                let (o_ab, o_abd, o_bd, o_abd2) = (off[a * n + b], off[ab * n + d], off[b * n + d], off[a * n + bd]);
                let (fb, fd, fbd) = (fo[b], fo[d], fo[bd]);
                for p in 0..fo[a] {
                    for q in 0..fb {
                        for r in 0..fd {
                            csp.add(move |x| {
                                let v = o_ab + p * fb + q;
                                let pq = x[v].ok_or(v)?;
                                let v = o_abd + pq * fd + r;
                                let lhs = fa.apply(x[v].ok_or(v)?);
                                let v = o_bd + q * fd + r;
                                let qr = x[v].ok_or(v)?;
                                let v = o_abd2 + p * fbd + qr;
                                Ok(lhs == x[v].ok_or(v)?)
                            });
                        }
                    }
                }
            }
        }
    }
    let sols = csp.solve(SOLUTION_LIMIT)?;
    Ok(sols
        .into_iter()
        .map(|sol| {
            let mut mult = Vec::with_capacity(n * n);
            for a in c.objects() {
                for b in c.objects() {
                    let o = off[a * n + b];
                    mult.push(FinFn::new(fo[m.tensor_obj(a, b)], sol[o..o + fo[a] * fo[b]].to_vec()));
                }
            }
            (mult, FinFn::new(fo[m.unit], vec![sol[0]]))
        })
        .collect())
}

/// Both enumerations over every carrier with values of size at most
/// `carrier_bound`, deduplicated up to isomorphism, with the matching
/// induced by the translation.
pub fn enumerate_structures(day: &DayStructure<FinSet>, carrier_bound: usize) -> Result<Enumeration> {
    let t = &day.target;
    let carriers = enumerate_carriers(t, day.base(), carrier_bound)?;
    let mut out = Enumeration {
        carriers: carriers.clone(),
        monoids: Vec::new(),
        monoid_carrier: Vec::new(),
        lax: Vec::new(),
        lax_carrier: Vec::new(),
        matching: Vec::new(),
    };
    for (ci, f) in carriers.iter().enumerate() {
        let ff = day.convolve(&[f, f])?;
        let u = day.convolve(&[])?;
        let actions = automorphism_actions(day, f, &ff)?;
        let search = MonoidSearch { ff, u, actions };

        let mut monoids: BTreeMap<Vec<usize>, (Vec<FinFn>, Vec<FinFn>)> = BTreeMap::new();
        for (mult, unit) in solve_monoids(day, f, &search)? {
            monoids.entry(search.key(&mult, &unit)).or_insert((mult, unit));
        }
        let mut lax: BTreeMap<Vec<usize>, LaxMonoidalFunctor<FinSet>> = BTreeMap::new();
        for (mult, unit) in solve_lax(day, f)? {
            let l = LaxMonoidalFunctor {
                source: day.monoidal.clone(),
                underlying: f.clone(),
                mult,
                unit,
            };
            lax.entry(lax_key(&search.actions, &l)?).or_insert(l);
        }
        let base = out.lax.len();
        let index: HashMap<Vec<usize>, usize> = lax.keys().enumerate().map(|(i, k)| (k.clone(), base + i)).collect();
        for l in lax.into_values() {
            out.lax.push(l);
            out.lax_carrier.push(ci);
        }
        for (mult, unit) in monoids.into_values() {
            let mo = CommutativeMonoidObject {
                carrier: f.clone(),
                square: search.ff.clone(),
                unit_convolution: search.u.clone(),
                multiplication: mult,
                unit,
            };
            let key = lax_key(&search.actions, &extract_lax(day, &mo))?;
            let j = *index.get(&key).ok_or_else(|| {
                Error::invalid("correspondence", format!("a monoid on carrier {:?} has no lax counterpart", f.obj))
            })?;
            out.monoids.push(mo);
            out.monoid_carrier.push(ci);
            out.matching.push(j);
        }
    }
    Ok(out)
}

/// Re-check an enumeration: every entry validates, the matching is a
/// bijection along which the translation lands in the right class, and
/// both round trips are the identity.
pub fn certify_correspondence(day: &DayStructure<FinSet>, en: &Enumeration) -> Result<ValidationReport> {
    let t = &day.target;
    let mut report = ValidationReport::new();
    if en.monoids.len() != en.lax.len() {
        report.violation(
            "count",
            format!("{} monoids against {} lax functors", en.monoids.len(), en.lax.len()),
        );
    }
    let mut hit = vec![false; en.lax.len()];
    for &j in &en.matching {
        if j >= hit.len() || std::mem::replace(&mut hit[j], true) {
            report.violation("bijection", format!("lax functor {j} is matched twice or out of range"));
        }
    }
    if hit.iter().any(|h| !h) {
        report.violation("bijection", "some lax functor is not matched");
    }
    let mut actions = HashMap::new();
    for (ci, f) in en.carriers.iter().enumerate() {
        let ff = day.convolve(&[f, f])?;
        actions.insert(ci, automorphism_actions(day, f, &ff)?);
    }
    for (i, mo) in en.monoids.iter().enumerate() {
        let r = validate_monoid(day, mo)?;
        if !r.is_empty() {
            report.violation("monoid", format!("{i}: {r}"));
            continue;
        }
        let l = extract_lax(day, mo);
        let back = lax_to_monoid(day, &l)?;
        if back.multiplication != mo.multiplication || back.unit != mo.unit {
            report.violation("round-trip", format!("monoid {i} -> lax -> monoid"));
        }
        let acts = &actions[&en.monoid_carrier[i]];
        if let Some(&j) = en.matching.get(i) {
            if j < en.lax.len() && lax_key(acts, &l)? != lax_key(acts, &en.lax[j])? {
                report.violation("matching", format!("monoid {i} does not translate to lax functor {j}"));
            }
        }
    }
    for (j, l) in en.lax.iter().enumerate() {
        let r = validate_lax(t, l)?;
        if !r.is_empty() {
            report.violation("lax", format!("{j}: {r}"));
            continue;
        }
        let mo = lax_to_monoid(day, l)?;
        let back = extract_lax(day, &mo);
        if back.mult != l.mult || back.unit != l.unit {
            report.violation("round-trip", format!("lax {j} -> monoid -> lax"));
        }
    }
    let mut keys = std::collections::HashSet::new();
    for (j, l) in en.lax.iter().enumerate() {
        if !keys.insert((en.lax_carrier[j], lax_key(&actions[&en.lax_carrier[j]], l)?)) {
            report.violation("duplicate", format!("lax functor {j} repeats an isomorphism class"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::corpus;

    #[test]
    fn carriers_of_z2() {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        assert_eq!(enumerate_carriers(&day.target, day.base(), 2).unwrap().len(), 9);
    }

    #[test]
    fn carriers_of_the_walking_arrow() {
        // functions a -> b with |a|, |b| <= 1, up to iso: 0->0, 0->1, 1->1
        let day = DayStructure::new(&corpus::chain2(), FinSet::default()).unwrap();
        assert_eq!(enumerate_carriers(&day.target, day.base(), 1).unwrap().len(), 3);
    }

    #[test]
    fn forced_and_empty_carriers() {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        let en = enumerate_structures(&day, 1).unwrap();
        let sizes: Vec<Vec<usize>> = en.monoid_carrier.iter().map(|&c| en.carriers[c].obj.clone()).collect();
        assert!(sizes.contains(&vec![1, 0]));
        assert!(!sizes.iter().any(|s| s[0] == 0));
        assert_eq!(en.monoids.len(), en.lax.len());
        assert!(certify_correspondence(&day, &en).unwrap().is_empty());
    }

    #[test]
    fn z2_bound_two_is_a_bijection() {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        let en = enumerate_structures(&day, 2).unwrap();
        assert_eq!(en.monoids.len(), en.lax.len());
        let r = certify_correspondence(&day, &en).unwrap();
        assert!(r.is_empty(), "{r}");
    }
}
