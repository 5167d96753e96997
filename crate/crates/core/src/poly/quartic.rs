//! Closed-form roots of polynomials up to degree four, Newton-polished.
//!
//! Coefficients are normalized to a monic polynomial and the variable is
//! rescaled so the scaled coefficients are at most one in magnitude before
//! the Ferrari/Cardano formulas are applied.

use num_complex::Complex64;

use crate::error::PolyError;

const CLUSTER_TOL: f64 = 1e-7;
const POLISH_STEPS: usize = 4;

/// `c8·w⁴ + c6·w³ + c4·w² + c2·w + c0`, read as an even octic in `u = √w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenQuartic {
    pub c8: f64,
    pub c6: f64,
    pub c4: f64,
    pub c2: f64,
    pub c0: f64,
}

impl EvenQuartic {
    pub fn coeffs(&self) -> [f64; 5] {
        [self.c8, self.c6, self.c4, self.c2, self.c0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All roots, repeated according to multiplicity. There are fewer than four
/// when leading coefficients vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticRoots {
    pub roots: Vec<Complex64>,
}

impl QuarticRoots {
    /// Group roots closer than `1e-7 · (1 + |root|)`.
    pub fn clusters(&self) -> Vec<RootCluster> {
        let mut clusters: Vec<(Complex64, usize)> = Vec::new();
        for &r in &self.roots {
            let hit = clusters.iter_mut().find(|(c, n)| {
                let centre = *c / *n as f64;
                (centre - r).norm() <= CLUSTER_TOL * (1.0 + centre.norm().max(r.norm()))
            });
            match hit {
                Some((sum, n)) => {
                    *sum += r;
                    *n += 1;
                }
                None => clusters.push((r, 1)),
            }
        }
        clusters
            .into_iter()
            .map(|(sum, n)| RootCluster {
                value: sum / n as f64,
                multiplicity: n,
            })
            .collect()
    }
}

/// Horner evaluation, highest coefficient first.
#[cfg(test)]
fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn horner_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Newton steps that are only kept while `|p|` decreases.
fn polish(coeffs: &[Complex64], mut x: Complex64, steps: usize) -> Complex64 {
    let (mut px, mut dpx) = horner_with_derivative(coeffs, x);
    for _ in 0..steps {
        if px.norm() == 0.0 || dpx.norm() == 0.0 {
            break;
        }
        let next = x - px / dpx;
        let (pn, dpn) = horner_with_derivative(coeffs, next);
        if pn.norm().partial_cmp(&px.norm()) != Some(std::cmp::Ordering::Less) {
            break;
        }
        x = next;
        px = pn;
        dpx = dpn;
    }
    x
}

/// Roots of `z² + b z + c` without cancellation.
fn quadratic(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    let s = if (b.conj() * disc).re >= 0.0 { disc } else { -disc };
    let q = -(b + s) / 2.0;
    if q.norm() == 0.0 {
        [q, q]
    } else {
        [q, c / q]
    }
}

/// Roots of the monic cubic `m³ + a2 m² + a1 m + a0`.
fn cubic(a2: Complex64, a1: Complex64, a0: Complex64) -> [Complex64; 3] {
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w1 = -q / 2.0 + disc;
    let w2 = -q / 2.0 - disc;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let roots = if w.norm() == 0.0 {
        [Complex64::new(0.0, 0.0); 3]
    } else {
        let c = w.powf(1.0 / 3.0);
        let mut out = [Complex64::new(0.0, 0.0); 3];
        let mut ck = c;
        for slot in out.iter_mut() {
            *slot = ck - p / (3.0 * ck);
            ck *= omega;
        }
        out
    };
    let monic = [Complex64::new(1.0, 0.0), a2, a1, a0];
    roots.map(|n| polish(&monic, n - shift, POLISH_STEPS))
}

/// Roots of the monic quartic `y⁴ + b y³ + c y² + d y + e`.
fn quartic(b: f64, c: f64, d: f64, e: f64) -> [Complex64; 4] {
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = d - b * c / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
    let shift = Complex64::new(-b / 4.0, 0.0);

    let depressed: [Complex64; 4] = if q.abs() <= 1e-14 * (1.0 + p.abs() + r.abs()) {
        let [s1, s2] = quadratic(Complex64::new(p, 0.0), Complex64::new(r, 0.0));
        let (z1, z2) = (s1.sqrt(), s2.sqrt());
        [z1, -z1, z2, -z2]
    } else {
        let ms = cubic(
            Complex64::new(p, 0.0),
            Complex64::new(p * p / 4.0 - r, 0.0),
            Complex64::new(-q * q / 8.0, 0.0),
        );
        let m = ms
            .into_iter()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap_or_default();
        let sigma = (2.0 * m).sqrt();
        let half = Complex64::new(p / 2.0, 0.0) + m;
        let corr = q / (2.0 * sigma);
        let [z1, z2] = quadratic(sigma, half - corr);
        let [z3, z4] = quadratic(-sigma, half + corr);
        [z1, z2, z3, z4]
    };
    depressed.map(|z| z + shift)
}

/// All complex roots of `c4 x⁴ + c3 x³ + c2 x² + c1 x + c0` (highest first),
/// with multiplicity.
///
/// Leading zeros reduce the degree; exact trailing zeros yield exact zero
/// roots. Every root is Newton-polished on the input polynomial.
pub fn solve_quartic(coeffs: &[f64; 5]) -> Result<QuarticRoots, PolyError> {
    let lead = match coeffs.iter().position(|&c| c != 0.0) {
        Some(i) => i,
        None => return Err(PolyError::IdenticallyZero),
    };
    let mut active: Vec<f64> = coeffs[lead..].to_vec();
    let mut roots = Vec::with_capacity(4);
    while active.len() > 1 && active[active.len() - 1] == 0.0 {
        active.pop();
        roots.push(Complex64::new(0.0, 0.0));
    }
    let degree = active.len() - 1;
    if degree == 0 {
        return Ok(QuarticRoots { roots });
    }

    let monic: Vec<f64> = active.iter().map(|&c| c / active[0]).collect();
    // x = s·y with the scaled coefficients bounded by one.
    let s = (1..=degree)
        .map(|k| monic[k].abs().powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    let scaled: Vec<f64> = monic
        .iter()
        .enumerate()
        .map(|(k, &c)| c / s.powi(k as i32))
        .collect();

    let ys: Vec<Complex64> = match degree {
        1 => vec![Complex64::new(-scaled[1], 0.0)],
        2 => quadratic(Complex64::new(scaled[1], 0.0), Complex64::new(scaled[2], 0.0)).to_vec(),
        3 => cubic(
            Complex64::new(scaled[1], 0.0),
            Complex64::new(scaled[2], 0.0),
            Complex64::new(scaled[3], 0.0),
        )
        .to_vec(),
        _ => quartic(scaled[1], scaled[2], scaled[3], scaled[4]).to_vec(),
    };

    let scaled_c: Vec<Complex64> = scaled.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let monic_c: Vec<Complex64> = monic.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    for y in ys {
        let y = polish(&scaled_c, y, POLISH_STEPS);
        roots.push(polish(&monic_c, y * s, 2));
    }
    Ok(QuarticRoots { roots })
}

/// `{±√w : w a root of q}` using the principal square root.
pub fn roots_of_even_octic(q: &EvenQuartic) -> Result<Vec<Complex64>, PolyError> {
    let ws = solve_quartic(&q.coeffs())?;
    Ok(ws
        .roots
        .iter()
        .flat_map(|w| {
            let u = w.sqrt();
            [u, -u]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Greedy nearest matching; order-insensitive.
    fn assert_roots(got: Vec<Complex64>, want: &[Complex64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?}");
        let mut pool = got.clone();
        for w in want {
            let (i, d) = pool
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - w).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(d <= tol, "{got:?} vs {want:?}");
            pool.remove(i);
        }
    }

    #[test]
    fn four_distinct_roots() {
        let r = solve_quartic(&[1.0, -10.0, 35.0, -50.0, 24.0]).unwrap();
        assert_roots(r.roots, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)], 1e-12);
    }

    #[test]
    fn double_root_and_complex_pair() {
        let r = solve_quartic(&[1.0, -2.0, 2.0, -2.0, 1.0]).unwrap();
        assert_roots(r.roots.clone(), &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)], 1e-7);
        let clusters = r.clusters();
        assert_eq!(clusters.len(), 3);
        let one = clusters.iter().find(|k| (k.value - 1.0).norm() < 1e-7).unwrap();
        assert_eq!(one.multiplicity, 2);
    }

    #[test]
    fn golden_elimination_quartic_has_root_100() {
        let q = [-912912.0, 84182720.0, 699099456.0, 1170854400.0, 400000000.0];
        let r = solve_quartic(&q).unwrap();
        assert!(r.roots.iter().any(|w| (w - 100.0).norm() < 1e-9), "{:?}", r.roots);
    }

    #[test]
    fn degree_reduction_and_zero() {
        assert_eq!(solve_quartic(&[0.0; 5]), Err(PolyError::IdenticallyZero));
        let r = solve_quartic(&[0.0, 0.0, 1.0, -3.0, 2.0]).unwrap();
        assert_roots(r.roots, &[c(1.0, 0.0), c(2.0, 0.0)], 1e-14);
        let r = solve_quartic(&[0.0, 0.0, 0.0, 0.0, 5.0]).unwrap();
        assert!(r.roots.is_empty());
        let r = solve_quartic(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.roots, vec![c(0.0, 0.0); 4]);
        assert_eq!(r.clusters(), vec![RootCluster { value: c(0.0, 0.0), multiplicity: 4 }]);
    }

    #[test]
    fn biquadratic_path() {
        // (x² - 1)(x² + 4)
        let r = solve_quartic(&[1.0, 0.0, 3.0, 0.0, -4.0]).unwrap();
        assert_roots(r.roots, &[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0)], 1e-14);
    }

    #[test]
    fn wide_dynamic_range() {
        // roots 1e-6, 1, 1e3, 1e6
        let rs = [1e-6, 1.0, 1e3, 1e6];
        let coeffs = from_roots(&rs.map(|x| c(x, 0.0)));
        let r = solve_quartic(&coeffs).unwrap();
        for want in rs {
            assert!(r.roots.iter().any(|g| (g - want).norm() <= 1e-9 * want), "{want} in {:?}", r.roots);
        }
    }

    #[test]
    fn even_octic_examples() {
        // w-roots 1, 4, 9, 16
        let coeffs = from_roots(&[1.0, 4.0, 9.0, 16.0].map(|x| c(x, 0.0)));
        let q = EvenQuartic { c8: coeffs[0], c6: coeffs[1], c4: coeffs[2], c2: coeffs[3], c0: coeffs[4] };
        let us = roots_of_even_octic(&q).unwrap();
        let want: Vec<Complex64> = [1.0, 2.0, 3.0, 4.0].iter().flat_map(|&x| [c(x, 0.0), c(-x, 0.0)]).collect();
        assert_roots(us, &want, 1e-10);

        // double w-root at zero: w²(w - 1)(w - 2)
        let q = EvenQuartic { c8: 1.0, c6: -3.0, c4: 2.0, c2: 0.0, c0: 0.0 };
        let us = roots_of_even_octic(&q).unwrap();
        assert_eq!(us.iter().filter(|u| u.norm() == 0.0).count(), 4);

        let zero = EvenQuartic { c8: 0.0, c6: 0.0, c4: 0.0, c2: 0.0, c0: 0.0 };
        assert!(zero.is_zero());
        assert_eq!(roots_of_even_octic(&zero), Err(PolyError::IdenticallyZero));
    }

    fn from_roots(rs: &[Complex64; 4]) -> [f64; 5] {
        let mut p = vec![c(1.0, 0.0)];
        for &r in rs {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &pc) in p.iter().enumerate() {
                next[i] += pc;
                next[i + 1] -= pc * r;
            }
            p = next;
        }
        [p[0].re, p[1].re, p[2].re, p[3].re, p[4].re]
    }

    fn coefficient_scale(coeffs: &[f64; 5], root: Complex64) -> f64 {
        coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())) * (1.0 + root.norm()).powi(4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn reconstruction_matches_input(coeffs in prop::array::uniform5(-10.0f64..10.0)) {
            prop_assume!(coeffs[0].abs() > 1e-3);
            let r = solve_quartic(&coeffs).unwrap();
            prop_assert_eq!(r.roots.len(), 4);
            let rebuilt = from_roots(&[r.roots[0], r.roots[1], r.roots[2], r.roots[3]]);
            let monic: Vec<f64> = coeffs.iter().map(|c| c / coeffs[0]).collect();
            let scale = monic.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            for (a, b) in rebuilt.iter().zip(&monic) {
                prop_assert!((a - b).abs() <= 1e-8 * scale, "{:?} vs {:?}", rebuilt, monic);
            }
            for &root in &r.roots {
                let p = horner(&coeffs, root);
                prop_assert!(p.norm() <= 1e-10 * coefficient_scale(&coeffs, root), "|p({})| = {}", root, p.norm());
            }
        }
    }
}
