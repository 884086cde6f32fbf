//! Library results compared against independent fixed-width computations.

mod common;

use catalan_zi::bounds::liouville_bound;
use catalan_zi::interval::{int, rat, Interval};
use catalan_zi::residue::{enumerate_ring, enumerate_units, reduce, unit_group_order};
use catalan_zi::search::{nontrivial, search_catalan, search_general, search_shifted, SearchBox};
use catalan_zi::{GaussianInt, Valuation};
use common::{box_points, catalan_brute, catalan_table, Gi};

fn solution_pairs(p: u32, q: u32, bound: u64) -> Vec<(Gi, Gi)> {
    let mut got: Vec<(Gi, Gi)> = search_catalan(p, q, SearchBox::new(bound))
        .unwrap()
        .iter()
        .map(|s| (Gi::of(&s.x), Gi::of(&s.y)))
        .collect();
    got.sort();
    got
}

#[test]
fn catalan_search_matches_pairwise_enumeration() {
    for (p, q) in [(2, 2), (3, 2), (2, 3), (5, 2), (2, 5), (3, 3), (7, 2), (2, 7), (4, 3)] {
        for bound in [1, 3, 6] {
            assert_eq!(solution_pairs(p, q, bound), catalan_brute(p, q, bound as i64), "p={p} q={q} bound={bound}");
        }
    }
}

#[test]
fn catalan_search_matches_lookup_table() {
    for (p, q) in [(2, 2), (3, 2), (2, 3), (5, 2), (2, 5), (7, 2), (2, 7), (11, 2), (3, 5)] {
        assert_eq!(solution_pairs(p, q, 20), catalan_table(p, q, 20), "p={p} q={q}");
    }
}

#[test]
fn swapping_exponents_maps_solutions() {
    // (x, y) ↦ (iy, -x) sends x^p - y^2 = 1 to X^2 - Y^p = 1 for odd p.
    for p in [3, 5, 7] {
        let mut mapped: Vec<(Gi, Gi)> = solution_pairs(p, 2, 15)
            .into_iter()
            .map(|(x, y)| (Gi(-y.1, y.0), Gi(-x.0, -x.1)))
            .collect();
        mapped.sort();
        assert_eq!(mapped, solution_pairs(2, p, 15), "p={p}");
    }
}

#[test]
fn shifted_search_matches_lookup() {
    for p in [3, 5, 7] {
        let bound = 12;
        let mut expected = Vec::new();
        let pts = box_points(bound);
        for &x2 in &pts {
            let v = x2.pow(p);
            let target = Gi(4 * v.0 + 4, 4 * v.1);
            for &x3 in &pts {
                if x3.pow(p) == target {
                    expected.push((x3, x2));
                }
            }
        }
        expected.sort();
        let mut got: Vec<(Gi, Gi)> = search_shifted(p, SearchBox::new(bound as u64))
            .unwrap()
            .iter()
            .map(|s| (Gi::of(&s.x3), Gi::of(&s.x2)))
            .collect();
        got.sort();
        assert_eq!(got, expected, "p={p}");
    }
}

#[test]
fn general_search_matches_enumeration() {
    let found = search_general(1, 2, 3, SearchBox::new(10)).unwrap();
    let got: Vec<(Gi, Gi)> = found.solutions.iter().map(|s| (Gi::of(&s.x), Gi::of(&s.y))).collect();
    let pts = box_points(10);
    let mut expected = Vec::new();
    for &x in &pts {
        let lhs = x.pow(3);
        for &y in &pts {
            if lhs.sub(y.pow(3)) == Gi(2, 0) {
                expected.push((x, y));
            }
        }
    }
    expected.sort();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    assert_eq!(got_sorted, expected);
    assert_eq!(expected, vec![(Gi(1, 0), Gi(-1, 0))]);
}

fn divides(d: Gi, z: Gi) -> bool {
    // z·conj(d) must be divisible by N(d) componentwise.
    let n = d.norm();
    let w = z.mul(Gi(d.0, -d.1));
    w.0 % n == 0 && w.1 % n == 0
}

#[test]
fn gcd_matches_divisor_enumeration() {
    let samples = [(12, 5), (-7, 3), (0, 4), (6, 8), (15, 0), (3, -9), (10, 10), (1, 0)];
    for &(a0, a1) in &samples {
        for &(b0, b1) in &samples {
            let (a, b) = (Gi(a0, a1), Gi(b0, b1));
            let limit = a.norm().max(b.norm());
            let r = (limit as f64).sqrt() as i64 + 1;
            let best = box_points(r)
                .into_iter()
                .filter(|d| d.norm() > 0 && d.norm() <= limit && divides(*d, a) && divides(*d, b))
                .map(|d| d.norm())
                .max()
                .unwrap();
            let g = a.big().gcd(&b.big()).unwrap().into_inner();
            let gi = Gi::of(&g);
            assert_eq!(gi.norm(), best, "gcd({a:?}, {b:?}) = {g}");
            assert!(divides(gi, a) && divides(gi, b));
            assert!(gi.0 > 0 && gi.1 >= 0);
        }
    }
}

#[test]
fn divmod_remainder_is_minimal() {
    for z in box_points(7) {
        for w in [Gi(2, 0), Gi(1, 1), Gi(3, -2), Gi(0, 5), Gi(-4, 1)] {
            let (q, r) = z.big().divmod(&w.big()).unwrap();
            let (q, r) = (Gi::of(&q), Gi::of(&r));
            assert_eq!(q.mul(w).0 + r.0, z.0);
            assert_eq!(q.mul(w).1 + r.1, z.1);
            // The best remainder over all quotients near z/w.
            let n = w.norm();
            let num = z.mul(Gi(w.0, -w.1));
            let (cr, ci) = (num.0.div_euclid(n), num.1.div_euclid(n));
            let best = (cr..=cr + 1)
                .flat_map(|a| (ci..=ci + 1).map(move |b| Gi(a, b)))
                .map(|c| z.sub(c.mul(w)).norm())
                .min()
                .unwrap();
            assert_eq!(r.norm(), best, "{z:?} / {w:?}");
            assert!(2 * r.norm() <= n);
        }
    }
}

#[test]
fn valuation_matches_repeated_division() {
    for z in box_points(9) {
        let v = z.big().val_one_plus_i();
        if z == Gi(0, 0) {
            assert_eq!(v, Valuation::Infinite);
            continue;
        }
        let mut w = z;
        let mut count = 0;
        while (w.0 + w.1) % 2 == 0 {
            w = Gi((w.0 + w.1) / 2, (w.1 - w.0) / 2);
            count += 1;
        }
        assert_eq!(v, Valuation::Finite(count), "{z:?}");
    }
}

fn pi_power_divides(k: u32, z: Gi) -> bool {
    z.norm() == 0 || z.norm().trailing_zeros() >= k
}

#[test]
fn reduction_matches_brute_force_class() {
    for k in [1, 2, 3, 5, 8] {
        let ring = enumerate_ring(k).unwrap();
        let reps: Vec<Gi> = ring.iter().map(|c| Gi::of(&c.representative())).collect();
        for z in box_points(6) {
            let matching: Vec<usize> = reps
                .iter()
                .enumerate()
                .filter(|(_, r)| pi_power_divides(k, z.sub(**r)))
                .map(|(j, _)| j)
                .collect();
            assert_eq!(matching.len(), 1, "z={z:?} k={k}");
            assert_eq!(reduce(&z.big(), k).unwrap(), ring[matching[0]]);
        }
    }
}

#[test]
fn even_exponent_unit_count_matches_integers_mod_power_of_two() {
    // (1+i)^{2m} is an associate of 2^m, so units are pairs (a, b) mod 2^m
    // with a² + b² odd.
    for m in 1..=6u32 {
        let modulus = 1i64 << m;
        let count = (0..modulus)
            .flat_map(|a| (0..modulus).map(move |b| (a, b)))
            .filter(|(a, b)| (a * a + b * b) % 2 == 1)
            .count() as u64;
        assert_eq!(unit_group_order(2 * m).unwrap(), count);
        assert_eq!(enumerate_units(2 * m).unwrap().len() as u64, count);
    }
}

#[test]
fn liouville_bound_decreases_with_modulus() {
    for p in [5, 7, 11] {
        let mut prev: Option<Interval> = None;
        for num in [7, 8, 10, 16, 30, 100] {
            let x = Interval::point(rat(num, 4));
            let b = liouville_bound(&x, p, 128).unwrap();
            if let Some(prev) = prev {
                assert!(b.hi() < prev.lo(), "p={p} |x2|={num}/4");
            }
            prev = Some(b);
        }
        assert!(liouville_bound(&Interval::point(int(1)), p, 64).is_err());
    }
}

#[test]
fn nontrivial_filter_drops_zero_coordinates() {
    let all = search_catalan(2, 2, SearchBox::new(5)).unwrap();
    let nt = nontrivial(&all);
    assert!(all.iter().any(|s| s.trivial));
    assert!(nt.iter().all(|(x, y)| !x.is_zero() && !y.is_zero()));
    for (x, y) in nt {
        assert_eq!(&x.pow(2) - &y.pow(2), GaussianInt::one());
    }
}
