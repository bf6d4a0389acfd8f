//! Univariate polynomials over the working field.
//!
//! Coefficients are stored low degree first with trailing zeros trimmed.
//! Beyond the ring operations the module offers the pieces the splitting
//! machinery needs: squarefree part, evaluation at a matrix, and extraction
//! of the roots that lie in the field itself (all roots over a prime field,
//! integer roots over the rationals).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldSpec, Scalar};
use crate::mat::Mat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly {
            field,
            coeffs: vec![field.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 for simplicity, callers
    /// check [`Poly::is_zero`] first where the difference matters.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficients as i64, for terse test assertions. Panics when a
    /// coefficient is not an integer fitting in i64.
    pub fn coeff_i64(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| match c {
                Scalar::Rat(r) => {
                    assert!(r.is_integer(), "non-integer coefficient");
                    r.numer().to_i64().expect("coefficient fits i64")
                }
                Scalar::Fp(v) => *v as i64,
            })
            .collect()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l);
                Poly::new(
                    self.field,
                    self.coeffs
                        .iter()
                        .map(|c| self.field.mul(c, &inv))
                        .collect(),
                )
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = f.add(&out[i], c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = f.add(&out[i], c);
        }
        Poly::new(f, out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = self.field;
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        if rem.len() < dlen {
            return (Poly::zero(f), self.clone());
        }
        let lead_inv = f.inv(divisor.leading().unwrap());
        let mut quot = vec![f.zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dlen - 1], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[k] = c.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, d));
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f, out)
    }

    /// The product of the distinct irreducible factors, computed as
    /// p / gcd(p, p'). Over a prime field the derivative can vanish for
    /// inseparable-looking inputs; in that case the polynomial itself is
    /// returned, which is still a valid multiple of the squarefree part for
    /// the root scan that follows.
    pub fn squarefree_part(&self) -> Poly {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&d);
        if g.degree() == 0 {
            return self.monic();
        }
        self.divrem(&g).0.monic()
    }

    pub fn eval_scalar(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn eval_mat(&self, m: &Mat) -> Mat {
        assert_eq!(m.rows, m.cols, "square matrix");
        let f = self.field;
        let n = m.rows;
        let mut acc = Mat::zero(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// All roots of the polynomial that lie in the field itself.
    ///
    /// Over a prime field every residue is tried. Over the rationals the
    /// polynomial is first scaled to a monic integer polynomial through the
    /// substitution t = s/c (c the cleared leading coefficient), whose
    /// rational roots are integers; candidate integers come from a numeric
    /// root finder and are verified exactly before being mapped back.
    pub fn field_roots(&self) -> Vec<Scalar> {
        let f = self.field;
        if self.is_zero() || self.degree() == 0 {
            return Vec::new();
        }
        match f {
            FieldSpec::Prime(p) => {
                let mut roots = Vec::new();
                for r in 0..p {
                    let x = Scalar::Fp(r);
                    if f.is_zero(&self.eval_scalar(&x)) {
                        roots.push(x);
                    }
                }
                roots
            }
            FieldSpec::Rationals => self.rational_roots(),
        }
    }

    fn rational_roots(&self) -> Vec<Scalar> {
        let f = self.field;
        // Clear denominators: multiply by the lcm of coefficient denominators.
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            let Scalar::Rat(r) = c else { unreachable!() };
            let d = r.denom();
            lcm = &lcm / num::integer::gcd(lcm.clone(), d.clone()) * d;
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let Scalar::Rat(r) = c else { unreachable!() };
                (r * BigRational::from_integer(lcm.clone()))
                    .to_integer()
            })
            .collect();
        let n = ints.len() - 1;
        let lead = ints[n].clone();
        // Substitute t = s / lead: s^n + sum a_i lead^{n-1-i} s^i is monic
        // with integer coefficients, so its rational roots are integers s,
        // and t = s / lead recovers the roots of the original.
        let mut monic_ints = vec![BigInt::zero(); n + 1];
        monic_ints[n] = BigInt::one();
        let mut scale = BigInt::one();
        for i in (0..n).rev() {
            monic_ints[i] = &ints[i] * &scale;
            scale *= &lead;
        }
        let candidates = integer_root_candidates(&monic_ints);
        let mut roots = Vec::new();
        for s in candidates {
            let value = eval_bigint(&monic_ints, &s);
            if value.is_zero() {
                let root = Scalar::Rat(BigRational::new(s, lead.clone()));
                if f.is_zero(&self.eval_scalar(&root)) && !roots.contains(&root) {
                    roots.push(root);
                }
            }
        }
        roots
    }
}

fn eval_bigint(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Candidate integer roots of a monic integer polynomial, found numerically
/// with Durand-Kerner iteration and rounded. Exact verification happens at
/// the caller; misses only cost a skipped candidate.
fn integer_root_candidates(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // Zero roots come for free.
    let mut candidates = vec![BigInt::zero()];
    let floats: Option<Vec<f64>> = coeffs.iter().map(|c| c.to_f64()).collect();
    let Some(floats) = floats else {
        return candidates;
    };
    if floats.iter().any(|v| !v.is_finite()) {
        return candidates;
    }
    let eval = |re: f64, im: f64| -> (f64, f64) {
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for c in floats.iter().rev() {
            let nr = ar * re - ai * im + c;
            let ni = ar * im + ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    };
    let bound = 1.0
        + floats[..n]
            .iter()
            .map(|v| v.abs())
            .fold(0.0f64, f64::max);
    let mut re: Vec<f64> = Vec::with_capacity(n);
    let mut im: Vec<f64> = Vec::with_capacity(n);
    for k in 0..n {
        let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
        re.push(0.4 * bound * angle.cos());
        im.push(0.4 * bound * angle.sin());
    }
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (pr, pi) = eval(re[i], im[i]);
            let (mut dr, mut di) = (1.0f64, 0.0f64);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let (xr, xi) = (re[i] - re[j], im[i] - im[j]);
                let nr = dr * xr - di * xi;
                let ni = dr * xi + di * xr;
                dr = nr;
                di = ni;
            }
            let denom = dr * dr + di * di;
            if denom < 1e-300 {
                continue;
            }
            let qr = (pr * dr + pi * di) / denom;
            let qi = (pi * dr - pr * di) / denom;
            re[i] -= qr;
            im[i] -= qi;
            moved += qr.abs() + qi.abs();
        }
        if moved < 1e-12 {
            break;
        }
    }
    for i in 0..n {
        if im[i].abs() < 0.3 && re[i].abs() < 1e15 {
            let r = re[i].round() as i64;
            for delta in [-1, 0, 1] {
                let c = BigInt::from(r + delta);
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    candidates
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn poly(c: &[i64]) -> Poly {
        let f = q();
        Poly::new(f, c.iter().map(|&n| f.from_i64(n)).collect())
    }

    #[test]
    fn divrem_round_trip() {
        let a = poly(&[2, 0, -3, 1]);
        let b = poly(&[1, 1]);
        let (qt, r) = a.divrem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3) share x-1.
        let a = poly(&[2, -3, 1]);
        let b = poly(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (x-2)^2 (x+1) -> (x-2)(x+1)
        let p = poly(&[4, 0, -3, 1]);
        assert_eq!(p.squarefree_part(), poly(&[-2, -1, 1]));
    }

    #[test]
    fn rational_roots_of_integer_polynomial() {
        // (x-2)(x+5)(x-11)
        let p = poly(&[110, -43, -8, 1]);
        let mut roots = p.field_roots();
        roots.sort_by_key(|r| {
            let Scalar::Rat(x) = r else { unreachable!() };
            x.to_integer().to_i64().unwrap()
        });
        assert_eq!(
            roots,
            vec![q().from_i64(-5), q().from_i64(2), q().from_i64(11)]
        );
    }

    #[test]
    fn rational_roots_with_fractional_leading_coefficient() {
        // (2x - 1)(x - 3) = 2x^2 - 7x + 3: root 1/2 must be found.
        let p = poly(&[3, -7, 2]);
        let roots = p.field_roots();
        assert!(roots.contains(&q().from_ratio(1, 2)));
        assert!(roots.contains(&q().from_i64(3)));
    }

    #[test]
    fn no_rational_roots() {
        let p = poly(&[1, 0, 1]); // x^2 + 1
        assert!(p.field_roots().is_empty());
        let p = poly(&[-2, 0, 1]); // x^2 - 2
        assert!(p.field_roots().is_empty());
    }

    #[test]
    fn prime_field_roots_by_scan() {
        let f = FieldSpec::prime(7).unwrap();
        // x^2 + 1 over GF(7) does not split; x^2 - 2 has roots 3, 4.
        let p1 = Poly::new(f, vec![f.one(), f.zero(), f.one()]);
        assert!(p1.field_roots().is_empty());
        let p2 = Poly::new(f, vec![f.from_i64(-2), f.zero(), f.one()]);
        assert_eq!(p2.field_roots(), vec![f.from_i64(3), f.from_i64(4)]);
    }

    #[test]
    fn eval_mat_matches_direct_substitution() {
        let m = Mat::from_i64(q(), &[&[1, 1], &[0, 1]]);
        let p = poly(&[-1, 0, 1]); // x^2 - 1
        let expect = m.mul(&m).sub(&Mat::identity(q(), 2));
        assert_eq!(p.eval_mat(&m), expect);
    }

    #[test]
    fn large_root_is_still_found() {
        // (x - 1000)(x + 1)
        let p = poly(&[-1000, -999, 1]);
        let roots = p.field_roots();
        assert!(roots.contains(&q().from_i64(1000)));
        assert!(roots.contains(&q().from_i64(-1)));
    }
}
