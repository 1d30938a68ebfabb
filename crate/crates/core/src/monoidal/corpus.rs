//! Bundled symmetric monoidal categories.
//!
//! Discrete categories on finite commutative monoids, join-semilattices,
//! the walking arrow under `max`, and one non-strict example (the two-object
//! category with sign automorphisms and the Koszul symmetry) that exercises
//! the coherence machinery with non-identity components.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{discrete_with_labels, poset_category, walking_arrow, CategoryBuilder, MorId, ObjId};

use super::SymMonoidalStructure;

/// The discrete category on a finite commutative monoid.
pub fn discrete_monoid(
    name: &str,
    labels: &[String],
    op: impl Fn(ObjId, ObjId) -> ObjId,
    unit: ObjId,
) -> SymMonoidalStructure {
    let base = Arc::new(discrete_with_labels(name, labels));
    // identities have the same id as their object
    let b = base.clone();
    SymMonoidalStructure::new(
        name,
        base,
        &op,
        |f, g| op(b.source(f), b.source(g)),
        unit,
        |a, b2, c| op(op(a, b2), c),
        |a| a,
        |a| a,
        |a, b2| op(a, b2),
    )
}

/// A finite join-semilattice as a poset category with tensor = join.
pub fn semilattice(
    name: &str,
    labels: &[String],
    leq: impl Fn(usize, usize) -> bool,
    join: impl Fn(ObjId, ObjId) -> ObjId,
    bottom: ObjId,
) -> SymMonoidalStructure {
    let base = Arc::new(poset_category(name, labels, &leq));
    let b = base.clone();
    let arrow = move |x: ObjId, y: ObjId| b.hom(x, y)[0];
    let b2 = base.clone();
    let arrow2 = arrow.clone();
    let join = &join;
    SymMonoidalStructure::new(
        name,
        base,
        join,
        move |f, g| {
            arrow2(
                join(b2.source(f), b2.source(g)),
                join(b2.target(f), b2.target(g)),
            )
        },
        bottom,
        |a, b3, c| arrow(join(join(a, b3), c), join(join(a, b3), c)),
        |a| arrow(a, a),
        |a| arrow(a, a),
        |a, b3| arrow(join(a, b3), join(a, b3)),
    )
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn z2() -> SymMonoidalStructure {
    discrete_monoid("Z2", &labels(&["0", "1"]), |a, b| (a + b) % 2, 0)
}

pub fn z3() -> SymMonoidalStructure {
    discrete_monoid("Z3", &labels(&["0", "1", "2"]), |a, b| (a + b) % 3, 0)
}

/// `Z/n` under addition, for the text format's `addition-mod n`.
pub fn cyclic(n: usize) -> SymMonoidalStructure {
    let ls: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    discrete_monoid(&format!("Z{n}"), &ls, move |a, b| (a + b) % n, 0)
}

/// `Z/2 × Z/2`, element `(a, b)` has id `2a + b`.
pub fn z2xz2() -> SymMonoidalStructure {
    discrete_monoid(
        "Z2xZ2",
        &labels(&["(0,0)", "(0,1)", "(1,0)", "(1,1)"]),
        |a, b| a ^ b,
        0,
    )
}

/// The chain `{0 < 1}` under max.
pub fn chain2() -> SymMonoidalStructure {
    semilattice("chain2", &labels(&["0", "1"]), |a, b| a <= b, |a, b| a.max(b), 0)
}

pub const DIVISORS_OF_12: [usize; 6] = [1, 2, 3, 4, 6, 12];

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Divisors of 12 ordered by divisibility, tensor = lcm, unit 1.
pub fn divisors12() -> SymMonoidalStructure {
    let d = DIVISORS_OF_12;
    let ls: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    let pos = |v: usize| d.iter().position(|&x| x == v).expect("closed under lcm");
    semilattice(
        "Div12",
        &ls,
        |i, j| d[j] % d[i] == 0,
        move |i, j| pos(d[i] * d[j] / gcd(d[i], d[j])),
        0,
    )
}

/// The walking arrow `s -> t` with tensor max (unit `s`), built from the
/// arrow category rather than the generic semilattice helper.
pub fn walking_arrow_max() -> SymMonoidalStructure {
    let base = Arc::new(walking_arrow());
    let arrow = {
        let b = base.clone();
        move |x: ObjId, y: ObjId| -> MorId { b.hom(x, y)[0] }
    };
    let b = base.clone();
    let a2 = arrow.clone();
    SymMonoidalStructure::new(
        "arrow-max",
        base,
        |x, y| x.max(y),
        move |f, g| a2(b.source(f).max(b.source(g)), b.target(f).max(b.target(g))),
        0,
        |x, y, z| arrow(x.max(y).max(z), x.max(y).max(z)),
        |x| arrow(x, x),
        |x| arrow(x, x),
        |x, y| arrow(x.max(y), x.max(y)),
    )
}

/// Objects `0, 1` (even, odd), each with automorphism group `{±1}`; tensor
/// adds degrees and multiplies signs; the symmetry on `1 ⊗ 1` is `-1`.
pub fn super_z2() -> SymMonoidalStructure {
    let mut b = CategoryBuilder::new("SuperZ2");
    b.add_object("0");
    b.add_object("1");
    // id0 = 0, id1 = 1, -0 = 2, -1 = 3
    b.add_morphism("id0", 0, 0);
    b.add_morphism("id1", 1, 1);
    b.add_morphism("-0", 0, 0);
    b.add_morphism("-1", 1, 1);
    let parts = |m: MorId| -> (ObjId, bool) { (m % 2, m >= 2) };
    let make = |x: ObjId, neg: bool| -> MorId { x + if neg { 2 } else { 0 } };
    let base = Arc::new(
        b.build(vec![0, 1], |g, f| {
            let (x, sg) = parts(g);
            let (_, sf) = parts(f);
            Some(make(x, sg != sf))
        })
        .expect("sign category is well-formed"),
    );
    let table: HashMap<(ObjId, ObjId), ObjId> =
        [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)].into_iter().collect();
    let t = move |x: ObjId, y: ObjId| table[&(x, y)];
    let t2 = t.clone();
    SymMonoidalStructure::new(
        "SuperZ2",
        base,
        &t,
        move |f, g| {
            let (x, sf) = parts(f);
            let (y, sg) = parts(g);
            make(t2(x, y), sf != sg)
        },
        0,
        |x, y, z| make((x + y + z) % 2, false),
        |x| make(x, false),
        |x| make(x, false),
        |x, y| make((x + y) % 2, x == 1 && y == 1),
    )
}

/// Every bundled structure.
pub fn corpus() -> Vec<SymMonoidalStructure> {
    vec![
        z2(),
        z3(),
        z2xz2(),
        chain2(),
        divisors12(),
        walking_arrow_max(),
        super_z2(),
    ]
}

pub fn by_name(name: &str) -> Option<SymMonoidalStructure> {
    corpus().into_iter().find(|m| m.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(z2xz2().n(), 4);
        let d = divisors12();
        assert_eq!(d.base.num_morphisms(), 18);
        // lcm(4, 6) = 12
        assert_eq!(d.tensor_obj(3, 4), 5);
        assert_eq!(walking_arrow_max().tensor_obj(0, 1), 1);
        assert!(!super_z2().is_strict());
        for m in corpus() {
            if m.name != "SuperZ2" {
                assert!(m.is_strict(), "{}", m.name);
            }
        }
    }
}
