mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{catalog_entries, det3, random_arrangement};
use pkarr_core::arrangement::{
    b_matrix, build_lattice, hirzebruch_check, intersect_lines, Arrangement, IncidenceLattice,
};
use pkarr_core::exactfield::{cyclotomic_polynomial, totient, Rational};
use pkarr_core::relations::pencil_criterion;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Concurrence classes from 3x3 determinants only: for each pair of lines, the set
/// of lines through their meet. No point coordinates are ever formed.
fn brute_force_points(arr: &Arrangement) -> BTreeSet<BTreeSet<usize>> {
    let f = &arr.field;
    let n = arr.n();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let mut s = BTreeSet::from([a, b]);
            for c in 0..n {
                if c != a && c != b {
                    let d = det3(f, [&arr.lines[a].coeffs, &arr.lines[b].coeffs, &arr.lines[c].coeffs]);
                    if d.is_zero() {
                        s.insert(c);
                    }
                }
            }
            out.insert(s);
        }
    }
    out
}

fn lattice_sets(lat: &IncidenceLattice) -> BTreeSet<BTreeSet<usize>> {
    lat.points.iter().map(|p| p.lines.iter().copied().collect()).collect()
}

fn oracle_signature(sets: &BTreeSet<BTreeSet<usize>>) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for s in sets {
        *m.entry(s.len()).or_insert(0) += 1;
    }
    m
}

#[test]
fn catalog_lattices_match_determinant_oracle() {
    for e in catalog_entries() {
        let lat = e.arrangement.lattice().unwrap();
        let oracle = brute_force_points(&e.arrangement);
        assert_eq!(lattice_sets(&lat), oracle, "{}", e.name.label());
        assert_eq!(oracle_signature(&oracle), e.expected_signature, "{}", e.name.label());
    }
}

#[test]
fn random_lattices_match_determinant_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rand::Rng::gen_range(&mut rng, 3..=10);
        let arr = random_arrangement(&mut rng, n, 2);
        let lat = arr.lattice().unwrap();
        assert_eq!(lattice_sets(&lat), brute_force_points(&arr));
    }
}

#[test]
fn documented_signatures() {
    let sig = |name: &str, p: &[i64]| {
        common::catalog_entries()
            .into_iter()
            .find(|e| {
                e.name.label() == name || (name == "near_pencil" && e.name.label() == format!("near_pencil({})", p[0]))
            })
            .map(|e| e.arrangement.lattice().unwrap().signature())
            .unwrap()
    };
    assert_eq!(sig("quadrilateral", &[]), BTreeMap::from([(3, 4), (2, 3)]));
    assert_eq!(sig("hesse", &[]), BTreeMap::from([(4, 9), (2, 12)]));
    assert_eq!(sig("triangle", &[]), BTreeMap::from([(2, 3)]));
    assert_eq!(sig("near_pencil", &[5]), BTreeMap::from([(5, 1), (2, 5)]));
    assert_eq!(sig("near_pencil", &[4]), BTreeMap::from([(4, 1), (2, 4)]));
}

#[test]
fn random_arrangements_satisfy_counting_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rand::Rng::gen_range(&mut rng, 2..=12);
        let arr = random_arrangement(&mut rng, n, 3);
        let lat = arr.lattice().unwrap();
        let pairs: usize = lat.points.iter().map(|p| p.multiplicity * (p.multiplicity - 1) / 2).sum();
        assert_eq!(pairs, n * (n - 1) / 2);
        let h = hirzebruch_check(&lat);
        assert!(h.identity_residual.is_zero());
        let b = b_matrix(&lat);
        for j in 0..n {
            let off: i64 = (0..n).filter(|&k| k != j).map(|k| b.get(j, k)).sum();
            let triple = lat.per_line[j].iter().filter(|&&i| lat.points[i].multiplicity >= 3).count() as i64;
            assert_eq!(off + triple, lat.per_line[j].len() as i64);
            assert_eq!(b.get(j, j), triple - 1);
            for k in 0..n {
                assert_eq!(b.get(j, k), b.get(k, j));
            }
        }
    }
}

#[test]
fn intersections_lie_on_both_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for e in catalog_entries().into_iter().take(6) {
        let arr = &e.arrangement;
        for a in 0..arr.n() {
            for b in (a + 1)..arr.n() {
                let p = intersect_lines(&arr.field, &arr.lines[a], &arr.lines[b]).unwrap();
                assert!(arr.lines[a].contains(&arr.field, &p) && arr.lines[b].contains(&arr.field, &p));
            }
        }
    }
    let arr = random_arrangement(&mut rng, 9, 4);
    let p = intersect_lines(&arr.field, &arr.lines[0], &arr.lines[1]).unwrap();
    assert!(arr.lines[0].contains(&arr.field, &p) && arr.lines[1].contains(&arr.field, &p));
}

#[test]
fn lattice_is_independent_of_line_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cases: Vec<Arrangement> = (0..20).map(|_| random_arrangement(&mut rng, 8, 2)).collect();
    cases.push(pkarr_core::catalog::catalog_build("hesse", &[]).unwrap().arrangement);
    for arr in cases {
        let lat = arr.lattice().unwrap();
        let mut perm: Vec<usize> = (0..arr.n()).collect();
        perm.shuffle(&mut rng);
        let shuffled: Vec<_> = perm.iter().map(|&i| arr.lines[i].clone()).collect();
        let lat2 = build_lattice(&arr.field, &shuffled).unwrap();
        assert_eq!(lat.points.len(), lat2.points.len());
        for (p, q) in lat.points.iter().zip(&lat2.points) {
            assert_eq!(p.point, q.point);
            let mapped: BTreeSet<usize> = q.lines.iter().map(|&i| perm[i]).collect();
            assert_eq!(mapped, p.lines.iter().copied().collect());
        }
    }
}

fn complex_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

#[test]
fn cyclotomic_matches_primitive_root_product() {
    for n in 1u32..=36 {
        let mut poly: Vec<(f64, f64)> = vec![(1.0, 0.0)];
        for k in (1..=n).filter(|&k| num_integer::gcd(k, n) == 1) {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let root = (th.cos(), th.sin());
            // multiply by (t - root)
            let mut next = vec![(0.0, 0.0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1].0 += c.0;
                next[i + 1].1 += c.1;
                let m = complex_mul(*c, root);
                next[i].0 -= m.0;
                next[i].1 -= m.1;
            }
            poly = next;
        }
        let exact = cyclotomic_polynomial(n);
        assert_eq!(exact.len() as u32, totient(n) + 1);
        for (c, z) in exact.iter().zip(&poly) {
            assert!(c.is_integer());
            let v: i64 = c.numer().try_into().unwrap();
            assert!((v as f64 - z.0).abs() < 1e-6 && z.1.abs() < 1e-6, "n = {n}");
        }
    }
}

#[test]
fn pencil_counterexample_found_by_search() {
    // Search 4- and 5-line arrangements with coefficients in {-1, 0, 1} for a line whose
    // double-point partners are not concurrent; confirm with a determinant.
    let f = pkarr_core::FieldSpec::rationals();
    let vals = [-1i64, 0, 1];
    let mut candidates = Vec::new();
    for a in vals {
        for b in vals {
            for c in vals {
                candidates.push([a, b, c]);
            }
        }
    }
    candidates.retain(|c| c.iter().any(|&x| x != 0) && c.iter().find(|&&x| x != 0) == Some(&1));
    let mut found = None;
    'search: for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            for k in (j + 1)..candidates.len() {
                for l in (k + 1)..candidates.len() {
                    let lines: Vec<_> = [i, j, k, l]
                        .iter()
                        .enumerate()
                        .map(|(t, &idx)| {
                            pkarr_core::arrangement::ProjLine::new(
                                format!("l{t}"),
                                candidates[idx].map(|x| common::fe(&f, Rational::from(x))),
                            )
                        })
                        .collect();
                    let arr = Arrangement::new(f.clone(), lines).unwrap();
                    let lat = arr.lattice().unwrap();
                    let rep = pencil_criterion(&lat);
                    if let Some(bad) = rep.lines.iter().find(|l| !l.passes) {
                        found = Some((arr, bad.clone()));
                        break 'search;
                    }
                }
            }
        }
    }
    let (arr, bad) = found.expect("a counterexample exists among small arrangements");
    assert!(bad.partners.len() >= 3 && bad.witness.is_none());
    let p = &bad.partners;
    let d = det3(&f, [&arr.lines[p[0]].coeffs, &arr.lines[p[1]].coeffs, &arr.lines[p[2]].coeffs]);
    assert!(!d.is_zero(), "partners must be non-concurrent");
    let o = bad.obstruction.unwrap();
    let lat = arr.lattice().unwrap();
    assert!(!lat.incident(o.point, o.line));
}

#[test]
fn pencil_criterion_on_catalog() {
    let q = pkarr_core::catalog::catalog_build("quadrilateral", &[]).unwrap().arrangement.lattice().unwrap();
    let rep = pencil_criterion(&q);
    assert!(rep.all_pass && rep.lines.iter().all(|l| l.partners.len() == 1));
    let h = pkarr_core::catalog::catalog_build("hesse", &[]).unwrap().arrangement.lattice().unwrap();
    let rep = pencil_criterion(&h);
    assert!(rep.all_pass && rep.lines.iter().all(|l| l.partners.len() == 2 && l.witness.is_some()));
}
