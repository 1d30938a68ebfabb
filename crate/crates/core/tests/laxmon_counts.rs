//! Enumeration counts for lax structures on cyclic groups, against a
//! brute-force count of graded commutative monoids, frozen in
//! `golden/laxmon_counts.txt`.

use std::collections::BTreeSet;

use dayconv_core::cocomplete::FinSet;
use dayconv_core::day::DayStructure;
use dayconv_core::laxmon::{certify_correspondence, enumerate_structures};
use dayconv_core::monoidal::corpus;

/// Commutative monoid tables on `⊔ sizes[g]` with `grade(x·y) = grade x +
/// grade y mod n`, counted up to grade-preserving relabeling.
fn graded_monoids(n: usize, sizes: &[usize]) -> usize {
    let grade: Vec<usize> = (0..n).flat_map(|g| std::iter::repeat_n(g, sizes[g])).collect();
    let total = grade.len();
    let by_grade: Vec<Vec<usize>> = (0..n).map(|g| (0..total).filter(|&x| grade[x] == g).collect()).collect();
    let pairs: Vec<(usize, usize)> = (0..total).flat_map(|i| (i..total).map(move |j| (i, j))).collect();
    let mut table = vec![vec![None; total]; total];
    let mut found = BTreeSet::new();
    let relabelings = relabelings(&by_grade, total);

    fn assoc_ok(t: &[Vec<Option<usize>>]) -> bool {
        let n = t.len();
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = t[x][y] else { continue };
                for z in 0..n {
                    let (Some(l), Some(yz)) = (t[xy][z], t[y][z]) else { continue };
                    if let Some(r) = t[x][yz] {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn go(
        k: usize,
        pairs: &[(usize, usize)],
        grade: &[usize],
        by_grade: &[Vec<usize>],
        n: usize,
        table: &mut Vec<Vec<Option<usize>>>,
        relabelings: &[Vec<usize>],
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let total = grade.len();
        if k == pairs.len() {
            let has_unit = by_grade[0]
                .iter()
                .any(|&e| (0..total).all(|x| table[e][x] == Some(x)));
            if !has_unit {
                return;
            }
            let key = relabelings
                .iter()
                .map(|p| {
                    let mut inv = vec![0; total];
                    for (i, &v) in p.iter().enumerate() {
                        inv[v] = i;
                    }
                    let mut flat = Vec::with_capacity(total * total);
                    for i in 0..total {
                        for j in 0..total {
                            flat.push(p[table[inv[i]][inv[j]].unwrap()]);
                        }
                    }
                    flat
                })
                .min()
                .unwrap();
            found.insert(key);
            return;
        }
        let (i, j) = pairs[k];
        for &v in &by_grade[(grade[i] + grade[j]) % n] {
            table[i][j] = Some(v);
            table[j][i] = Some(v);
            if assoc_ok(table) {
                go(k + 1, pairs, grade, by_grade, n, table, relabelings, found);
            }
        }
        table[i][j] = None;
        table[j][i] = None;
    }

    go(0, &pairs, &grade, &by_grade, n, &mut table, &relabelings, &mut found);
    found.len()
}

/// Permutations of `0..total` that preserve every block of `by_grade`.
fn relabelings(by_grade: &[Vec<usize>], total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..total).collect::<Vec<_>>()];
    for block in by_grade {
        let mut next = Vec::new();
        for p in &out {
            for perm in permutations(block) {
                let mut q = p.clone();
                for (&from, &to) in block.iter().zip(&perm) {
                    q[from] = to;
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn oracle(n: usize, bound: usize) -> usize {
    let mut count = 0;
    let mut sizes = vec![0; n];
    loop {
        count += graded_monoids(n, &sizes);
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            sizes[k] += 1;
            if sizes[k] <= bound {
                break;
            }
            sizes[k] = 0;
            k += 1;
        }
    }
}

fn golden() -> Vec<(String, usize, usize)> {
    include_str!("golden/laxmon_counts.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn oracle_small_cases() {
    // the trivial grading and Z/2 itself
    assert_eq!(graded_monoids(2, &[1, 0]), 1);
    assert_eq!(graded_monoids(2, &[1, 1]), 1);
    // no unit without a degree-zero element
    assert_eq!(graded_monoids(2, &[0, 2]), 0);
    // {e, x} with x² = x or x² = e
    assert_eq!(graded_monoids(1, &[2]), 2);
}

#[test]
fn counts_match_oracle_and_golden() {
    for (name, bound, expected) in golden() {
        let n = match name.as_str() {
            "Z2" => 2,
            "Z3" => 3,
            other => panic!("unexpected golden entry {other}"),
        };
        assert_eq!(oracle(n, bound), expected, "oracle disagrees with golden for {name}/{bound}");
        let day = DayStructure::new(&corpus::cyclic(n), FinSet::default()).unwrap();
        let en = enumerate_structures(&day, bound).unwrap();
        assert_eq!(en.monoids.len(), expected, "{name}/{bound} monoids");
        assert_eq!(en.lax.len(), expected, "{name}/{bound} lax functors");
        let r = certify_correspondence(&day, &en).unwrap();
        assert!(r.is_empty(), "{r}");
    }
}
