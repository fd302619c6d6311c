//! Planar orientation and in-circle tests with a floating-point filter and exact fallback.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

const CCW_ERR: f64 = 3.330_669_073_875_472e-16;
const ICC_ERR: f64 = 1.110_223_024_625_157_7e-15;

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of the orientation of `(a, b, c)`: positive when counter-clockwise.
pub fn orient2d(a: &[f64], b: &[f64], c: &[f64]) -> i8 {
    let left = (a[0] - c[0]) * (b[1] - c[1]);
    let right = (a[1] - c[1]) * (b[0] - c[0]);
    let det = left - right;
    let bound = CCW_ERR * (left.abs() + right.abs());
    if det > bound {
        return 1;
    }
    if -det > bound {
        return -1;
    }
    let [ax, ay, bx, by, cx, cy] = [a[0], a[1], b[0], b[1], c[0], c[1]].map(exact);
    sign_of(&((ax - &cx) * (by - &cy) - (ay - cy) * (bx - cx)))
}

/// Sign of the in-circle determinant: positive when `d` lies strictly inside the circle
/// through the counter-clockwise triangle `(a, b, c)`.
pub fn incircle(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> i8 {
    let (adx, ady) = (a[0] - d[0], a[1] - d[1]);
    let (bdx, bdy) = (b[0] - d[0], b[1] - d[1]);
    let (cdx, cdy) = (c[0] - d[0], c[1] - d[1]);
    let (bc1, bc2) = (bdx * cdy, cdx * bdy);
    let (ca1, ca2) = (cdx * ady, adx * cdy);
    let (ab1, ab2) = (adx * bdy, bdx * ady);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    let det = alift * (bc1 - bc2) + blift * (ca1 - ca2) + clift * (ab1 - ab2);
    let perm = (bc1.abs() + bc2.abs()) * alift + (ca1.abs() + ca2.abs()) * blift + (ab1.abs() + ab2.abs()) * clift;
    let bound = ICC_ERR * perm;
    if det > bound {
        return 1;
    }
    if -det > bound {
        return -1;
    }
    let p = |q: &[f64]| (exact(q[0]) - exact(d[0]), exact(q[1]) - exact(d[1]));
    let (adx, ady) = p(a);
    let (bdx, bdy) = p(b);
    let (cdx, cdy) = p(c);
    let lift = |x: &BigRational, y: &BigRational| x * x + y * y;
    let det = lift(&adx, &ady) * (&bdx * &cdy - &cdx * &bdy)
        + lift(&bdx, &bdy) * (&cdx * &ady - &adx * &cdy)
        + lift(&cdx, &cdy) * (&adx * &bdy - &bdx * &ady);
    sign_of(&det)
}

/// In-circle test under a symbolic perturbation of the lifted heights: the point with the
/// smaller index receives the infinitesimally larger lift. Never returns zero for a
/// non-degenerate triangle.
pub fn incircle_perturbed(pts: &[Vec<f64>], a: usize, b: usize, c: usize, d: usize) -> i8 {
    let s = incircle(&pts[a], &pts[b], &pts[c], &pts[d]);
    if s != 0 {
        return s;
    }
    // Coefficient of each lift in the 4x4 lifted determinant.
    let o = |i: usize, j: usize, k: usize| orient2d(&pts[i], &pts[j], &pts[k]);
    let mut terms = [(a, o(b, c, d)), (b, -o(a, c, d)), (c, o(a, b, d)), (d, -o(a, b, c))];
    terms.sort_by_key(|t| t.0);
    terms.iter().map(|t| t.1).find(|&x| x != 0).unwrap_or(0)
}
