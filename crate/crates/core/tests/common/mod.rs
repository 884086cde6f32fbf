//! A small fixed-width Gaussian integer used as an independent oracle.

#![allow(dead_code)]

use catalan_zi::GaussianInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gi(pub i128, pub i128);

impl Gi {
    pub fn mul(self, o: Gi) -> Gi {
        Gi(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }

    pub fn sub(self, o: Gi) -> Gi {
        Gi(self.0 - o.0, self.1 - o.1)
    }

    pub fn pow(self, e: u32) -> Gi {
        (0..e).fold(Gi(1, 0), |acc, _| acc.mul(self))
    }

    pub fn norm(self) -> i128 {
        self.0 * self.0 + self.1 * self.1
    }

    pub fn big(self) -> GaussianInt {
        GaussianInt::new(self.0 as i64, self.1 as i64)
    }

    pub fn of(z: &GaussianInt) -> Gi {
        let (a, b) = z.to_i64_pair().expect("fits in i64");
        Gi(a as i128, b as i128)
    }
}

pub fn box_points(bound: i64) -> Vec<Gi> {
    let b = bound as i128;
    (-b..=b).flat_map(|re| (-b..=b).map(move |im| Gi(re, im))).collect()
}

/// Solutions of `x^p - y^q = 1` found by comparing every pair in the box.
pub fn catalan_brute(p: u32, q: u32, bound: i64) -> Vec<(Gi, Gi)> {
    let pts = box_points(bound);
    let xs: Vec<(Gi, Gi)> = pts.iter().map(|&x| (x, x.pow(p))).collect();
    let ys: Vec<(Gi, Gi)> = pts.iter().map(|&y| (y, y.pow(q))).collect();
    let mut out = Vec::new();
    for &(x, xp) in &xs {
        for &(y, yq) in &ys {
            if xp.sub(yq) == Gi(1, 0) {
                out.push((x, y));
            }
        }
    }
    out.sort();
    out
}

/// Same solution set, found by tabulating `y^q + 1` and looking up `x^p`.
pub fn catalan_table(p: u32, q: u32, bound: i64) -> Vec<(Gi, Gi)> {
    use std::collections::HashMap;
    let pts = box_points(bound);
    let mut table: HashMap<Gi, Vec<Gi>> = HashMap::new();
    for &y in &pts {
        let v = y.pow(q);
        table.entry(Gi(v.0 + 1, v.1)).or_default().push(y);
    }
    let mut out = Vec::new();
    for &x in &pts {
        if let Some(ys) = table.get(&x.pow(p)) {
            out.extend(ys.iter().map(|&y| (x, y)));
        }
    }
    out.sort();
    out
}

pub mod curves {
    use catalan_zi::elliptic::{add_coords, Coords, QiNumber};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::rngs::StdRng;
    use rand::Rng;

    fn small_qi(rng: &mut StdRng) -> QiNumber {
        let mut r = || BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=2)));
        QiNumber::new(r(), r())
    }

    pub fn neg(c: &Coords) -> Coords {
        match c {
            Coords::Infinity => Coords::Infinity,
            Coords::Affine { x, y } => Coords::Affine { x: x.clone(), y: -y },
        }
    }

    pub fn on_curve(c: &Coords, d: &QiNumber) -> bool {
        match c {
            Coords::Infinity => true,
            Coords::Affine { x, y } => y * y == &(&(x * x) * x) + d,
        }
    }

    /// A random curve `y² = x³ + d` over `Q(i)` with `d` fitted to a random
    /// base point, and three points drawn from `±{O, P, 2P, 3P}`.
    pub fn random_triple(rng: &mut StdRng) -> (QiNumber, [Coords; 3]) {
        loop {
            let (x0, y0) = (small_qi(rng), small_qi(rng));
            if y0.is_zero() {
                continue;
            }
            let d = &(&y0 * &y0) - &(&(&x0 * &x0) * &x0);
            let base = Coords::Affine { x: x0, y: y0 };
            let mut multiples = vec![Coords::Infinity];
            for _ in 0..3 {
                let next = add_coords(multiples.last().unwrap(), &base).unwrap();
                multiples.push(next);
            }
            let mut pick = || {
                let c = multiples[rng.gen_range(0..multiples.len())].clone();
                if rng.gen_bool(0.5) {
                    neg(&c)
                } else {
                    c
                }
            };
            let triple = [pick(), pick(), pick()];
            return (d, triple);
        }
    }

    /// Checks associativity, closure, identity and inverses on one triple.
    pub fn check_triple(d: &QiNumber, [a, b, c]: &[Coords; 3]) -> Result<(), String> {
        let add = |p: &Coords, q: &Coords| add_coords(p, q).map_err(|e| e.to_string());
        let left = add(&add(a, b)?, c)?;
        let right = add(a, &add(b, c)?)?;
        if left != right {
            return Err(format!("(a+b)+c = {left:?} but a+(b+c) = {right:?}"));
        }
        if !on_curve(&left, d) {
            return Err(format!("sum {left:?} left the curve"));
        }
        if add(a, &neg(a))? != Coords::Infinity || add(a, &Coords::Infinity)? != *a {
            return Err(format!("identity or inverse law fails at {a:?}"));
        }
        if add(a, b)? != add(b, a)? {
            return Err("addition is not commutative".into());
        }
        Ok(())
    }
}

pub mod exprs {
    use catalan_zi::interval::{nth_root_interval, Interval};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{Signed, ToPrimitive, Zero};
    use rand::rngs::StdRng;
    use rand::Rng;

    /// Interval enclosure, f64 reference value and exact value when the
    /// expression stays rational.
    pub struct Evaluated {
        pub enclosure: Interval,
        pub approx: f64,
        pub exact: Option<BigRational>,
        /// Error scale of the f64 evaluation.
        pub scale: f64,
    }

    fn leaf(rng: &mut StdRng) -> Evaluated {
        let q = BigRational::new(BigInt::from(rng.gen_range(-40..=40)), BigInt::from(rng.gen_range(1..=12)));
        let approx = q.to_f64().unwrap();
        Evaluated { enclosure: Interval::point(q.clone()), approx, exact: Some(q), scale: approx.abs() }
    }

    /// A random expression of the given depth over `+ - × ÷`, integer
    /// powers and positive roots.
    pub fn random(rng: &mut StdRng, depth: u32, bits: u32) -> Evaluated {
        if depth == 0 {
            return leaf(rng);
        }
        let a = random(rng, depth - 1, bits);
        match rng.gen_range(0..6) {
            0..=2 => {
                let b = random(rng, depth - 1, bits);
                let op = rng.gen_range(0..3);
                let enclosure = match op {
                    0 => &a.enclosure + &b.enclosure,
                    1 => &a.enclosure - &b.enclosure,
                    _ => &a.enclosure * &b.enclosure,
                };
                let approx = match op {
                    0 => a.approx + b.approx,
                    1 => a.approx - b.approx,
                    _ => a.approx * b.approx,
                };
                let exact = match (a.exact, b.exact) {
                    (Some(x), Some(y)) => Some(match op {
                        0 => x + y,
                        1 => x - y,
                        _ => x * y,
                    }),
                    _ => None,
                };
                let scale = a.scale.max(b.scale).max(approx.abs());
                Evaluated { enclosure, approx, exact, scale }
            }
            3 => {
                let b = random(rng, depth - 1, bits);
                if b.enclosure.contains_zero() {
                    return a;
                }
                let exact = match (a.exact, b.exact) {
                    (Some(x), Some(y)) if !y.is_zero() => Some(x / y),
                    _ => None,
                };
                let approx = a.approx / b.approx;
                let scale = (a.scale / b.approx.abs()).max(b.scale).max(approx.abs());
                Evaluated { enclosure: a.enclosure.div(&b.enclosure).unwrap(), approx, exact, scale }
            }
            4 => {
                let e = rng.gen_range(0..4);
                let approx = a.approx.powi(e as i32);
                let scale = a.scale.max(1.0).powi(e as i32).max(approx.abs());
                Evaluated {
                    enclosure: a.enclosure.powi(e),
                    approx,
                    exact: a.exact.map(|x| num_traits::pow(x, e as usize)),
                    scale,
                }
            }
            _ => {
                if a.enclosure.lo().is_negative() || a.enclosure.lo().is_zero() {
                    return a;
                }
                let n = rng.gen_range(2..6);
                let approx = a.approx.powf(1.0 / n as f64);
                let slope = approx / (n as f64 * a.approx);
                Evaluated {
                    enclosure: nth_root_interval(&a.enclosure, n, bits).unwrap(),
                    approx,
                    exact: None,
                    scale: (a.scale * slope).max(approx.abs()),
                }
            }
        }
    }

    /// Whether the enclosure contains the exact value, or the f64 value up
    /// to a relative tolerance when no exact value exists.
    pub fn sound(e: &Evaluated) -> bool {
        if let Some(x) = &e.exact {
            return e.enclosure.contains(x);
        }
        let (lo, hi) = e.enclosure.to_f64_pair();
        let tol = 1e-9 * (1.0 + e.scale);
        !e.approx.is_finite() || (lo - tol <= e.approx && e.approx <= hi + tol)
    }
}
