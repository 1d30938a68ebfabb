//! The skeleton of finite pointed sets `⟨0⟩, …, ⟨max_n⟩`.
//!
//! `⟨n⟩ = {0, 1, …, n}` with basepoint `0`. A morphism `⟨m⟩ -> ⟨n⟩` is stored
//! as the images of `1..=m`; the basepoint always goes to the basepoint.
//! Object ids coincide with `n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::fincat::{CategoryBuilder, FinCategory, MorId, ObjId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub inert: bool,
    pub active: bool,
}

impl MorphismClass {
    pub fn is_generic(&self) -> bool {
        !self.inert && !self.active
    }
}

impl fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.inert, self.active) {
            (true, true) => write!(f, "inert ∧ active"),
            (true, false) => write!(f, "inert"),
            (false, true) => write!(f, "active"),
            (false, false) => write!(f, "generic"),
        }
    }
}

#[derive(Clone)]
pub struct PointedSkeleton {
    pub max_n: usize,
    pub category: Arc<FinCategory>,
    maps: Vec<Vec<usize>>,
    index: HashMap<(usize, usize, Vec<usize>), MorId>,
}

impl fmt::Debug for PointedSkeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointedSkeleton")
            .field("max_n", &self.max_n)
            .field("morphisms", &self.maps.len())
            .finish()
    }
}

fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=n).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn label(map: &[usize], m: usize, n: usize) -> String {
    let body: Vec<String> = map.iter().map(|v| v.to_string()).collect();
    format!("[{}]:{m}->{n}", body.join(","))
}

impl PointedSkeleton {
    pub fn new(max_n: usize) -> Self {
        let mut b = CategoryBuilder::new(format!("Fin*<={max_n}"));
        for n in 0..=max_n {
            b.add_object(format!("<{n}>"));
        }
        let mut maps = Vec::new();
        let mut index = HashMap::new();
        for m in 0..=max_n {
            for n in 0..=max_n {
                for map in all_maps(m, n) {
                    let id = b.add_morphism(label(&map, m, n), m, n);
                    index.insert((m, n, map.clone()), id);
                    maps.push(map);
                }
            }
        }
        let identities: Vec<MorId> = (0..=max_n)
            .map(|n| index[&(n, n, (1..=n).collect::<Vec<_>>())])
            .collect();
        let src_tgt: Vec<(usize, usize)> = {
            let mut v = Vec::new();
            for m in 0..=max_n {
                for n in 0..=max_n {
                    for _ in 0..(n + 1).pow(m as u32) {
                        v.push((m, n));
                    }
                }
            }
            v
        };
        let category = b
            .build(identities, |g, f| {
                let (_, n) = src_tgt[g];
                let (m, _) = src_tgt[f];
                let gm = &maps[g];
                let composite: Vec<usize> = maps[f]
                    .iter()
                    .map(|&v| if v == 0 { 0 } else { gm[v - 1] })
                    .collect();
                index.get(&(m, n, composite)).copied()
            })
            .expect("pointed skeleton tables are well-formed");
        Self {
            max_n,
            category: Arc::new(category),
            maps,
            index,
        }
    }

    pub fn object(&self, n: usize) -> ObjId {
        assert!(n <= self.max_n, "<{n}> exceeds max_n = {}", self.max_n);
        n
    }

    /// Images of `1..=m` under `f`.
    pub fn map(&self, f: MorId) -> &[usize] {
        &self.maps[f]
    }

    /// Image of `i ∈ ⟨m⟩`.
    pub fn apply(&self, f: MorId, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.maps[f][i - 1]
        }
    }

    pub fn lookup(&self, m: usize, n: usize, map: &[usize]) -> Option<MorId> {
        self.index.get(&(m, n, map.to_vec())).copied()
    }

    /// Non-basepoint elements of the source sent to `t`, in increasing order.
    pub fn preimage(&self, f: MorId, t: usize) -> Vec<usize> {
        self.maps[f]
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == t)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn classify(&self, f: MorId) -> MorphismClass {
        let c = &self.category;
        let n = c.target(f);
        let map = &self.maps[f];
        let mut hits = vec![0usize; n + 1];
        for &v in map {
            hits[v] += 1;
        }
        MorphismClass {
            inert: hits[1..].iter().all(|&k| k == 1),
            active: hits[0] == 0,
        }
    }

    /// `⟨n⟩ -> ⟨1⟩` sending `j` to `1` and everything else to the basepoint.
    pub fn inert_projection(&self, n: usize, j: usize) -> MorId {
        assert!((1..=n).contains(&j));
        let map: Vec<usize> = (1..=n).map(|i| usize::from(i == j)).collect();
        self.index[&(n, 1, map)]
    }

    /// The active `⟨n⟩ -> ⟨1⟩`; for `n = 0` the unique map `⟨0⟩ -> ⟨1⟩`.
    pub fn multiplication(&self, n: usize) -> MorId {
        self.index[&(n, 1, vec![1; n])]
    }

    /// `f = active ∘ inert`, the inert part keeping the elements not sent to
    /// the basepoint in their original order.
    pub fn factor(&self, f: MorId) -> (MorId, MorId) {
        let c = &self.category;
        let (m, n) = (c.source(f), c.target(f));
        let kept: Vec<usize> = (1..=m).filter(|&i| self.apply(f, i) != 0).collect();
        let k = kept.len();
        let inert_map: Vec<usize> = (1..=m)
            .map(|i| kept.iter().position(|&x| x == i).map_or(0, |p| p + 1))
            .collect();
        let active_map: Vec<usize> = kept.iter().map(|&i| self.apply(f, i)).collect();
        (
            self.index[&(m, k, inert_map)],
            self.index[&(k, n, active_map)],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    #[test]
    fn hom_counts() {
        let s = PointedSkeleton::new(3);
        assert!(validate_category(&s.category).is_empty());
        for m in 0..=3 {
            for n in 0..=3 {
                assert_eq!(s.category.hom(m, n).len(), (n + 1).pow(m as u32));
            }
        }
        assert_eq!(PointedSkeleton::new(1).category.hom(1, 1).len(), 2);
        assert_eq!(PointedSkeleton::new(2).category.hom(2, 1).len(), 4);
    }

    #[test]
    fn classification_examples() {
        let s = PointedSkeleton::new(2);
        for n in 0..=2 {
            let c = s.classify(s.category.identity(n));
            assert!(c.inert && c.active);
        }
        let mu = s.lookup(2, 1, &[1, 1]).unwrap();
        assert_eq!(s.classify(mu), MorphismClass { inert: false, active: true });
        let proj = s.lookup(2, 1, &[1, 0]).unwrap();
        assert_eq!(s.classify(proj), MorphismClass { inert: true, active: false });
        assert_eq!(proj, s.inert_projection(2, 1));
        let crush = s.lookup(2, 2, &[0, 0]).unwrap();
        assert!(!s.classify(crush).active);
        let generic = s.lookup(2, 2, &[1, 0]).unwrap();
        assert!(s.classify(generic).is_generic());
    }

    #[test]
    fn factorization_and_closure() {
        let s = PointedSkeleton::new(3);
        let c = &s.category;
        for f in c.morphisms() {
            let (i, a) = s.factor(f);
            assert!(s.classify(i).inert);
            assert!(s.classify(a).active);
            assert_eq!(c.comp(a, i), f);
            // any other factorization through an object of the same size
            // differs by an automorphism of the middle object
            let k = c.target(i);
            let mut count = 0;
            for &i2 in c.hom(c.source(f), k) {
                for &a2 in c.hom(k, c.target(f)) {
                    if s.classify(i2).inert && s.classify(a2).active && c.comp(a2, i2) == f {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, (1..=k).product::<usize>());
        }
        for f in c.morphisms() {
            for &g in c.outgoing(c.target(f)) {
                let h = c.comp(g, f);
                if s.classify(f).inert && s.classify(g).inert {
                    assert!(s.classify(h).inert);
                }
                if s.classify(f).active && s.classify(g).active {
                    assert!(s.classify(h).active);
                }
            }
        }
    }
}
