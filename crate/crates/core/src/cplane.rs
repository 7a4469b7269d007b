//! Complex-number algebra for punctured-plane vectors.
//!
//! Vectors 𝐪 = (q₁, q₂) of the plane are identified with complex numbers
//! through the multiplication rule 𝐪𝐪′ = (q₁q′₁ − q₂q′₂, q₁q′₂ + q₂q′₁),
//! so 𝐞₁ = (1,0) is the unit and 𝐞₂𝐞₂ = −𝐞₁. This keeps the "vector"
//! imaginary unit 𝐞₂ separate from the quantum-mechanical i.
//!
//! The module also houses the two-sheet square root ±√𝐪 and the evaluation
//! of the planar Dirac identity for δ(𝐱 − 𝐪/𝐱), whose support is the pair
//! of roots ±√𝐪.

use crate::error::{CoreError, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

/// A plane vector treated as a complex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec {
    pub c1: f64,
    pub c2: f64,
}

/// Multiplicative identity 𝐞₁ = (1, 0).
pub const E1: CVec = CVec { c1: 1.0, c2: 0.0 };
/// The "imaginary" basis vector 𝐞₂ = (0, 1); 𝐞₂𝐞₂ = −𝐞₁.
pub const E2: CVec = CVec { c1: 0.0, c2: 1.0 };
/// The zero vector (not a punctured-plane point).
pub const ZERO: CVec = CVec { c1: 0.0, c2: 0.0 };

impl CVec {
    pub const fn new(c1: f64, c2: f64) -> Self {
        CVec { c1, c2 }
    }

    /// Build from polar data; the angle is canonicalized to [0, 2π).
    pub fn from_polar(modulus: f64, angle: f64) -> Self {
        CVec::new(modulus * angle.cos(), modulus * angle.sin())
    }

    pub fn modulus(&self) -> f64 {
        self.c1.hypot(self.c2)
    }

    pub fn modulus_sq(&self) -> f64 {
        self.c1 * self.c1 + self.c2 * self.c2
    }

    /// Angle in [0, 2π).
    pub fn angle(&self) -> f64 {
        let a = self.c2.atan2(self.c1);
        let a = if a < 0.0 { a + TAU } else { a };
        // atan2 can return exactly -0.0 -> TAU after the shift
        if a >= TAU {
            a - TAU
        } else {
            a
        }
    }

    pub fn polar(&self) -> (f64, f64) {
        (self.modulus(), self.angle())
    }

    /// Euclidean inner product 𝐚·𝐛 = Re(𝐚*𝐛).
    pub fn dot(&self, other: CVec) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2
    }

    /// Planar cross product 𝐚×𝐛 = a₁b₂ − a₂b₁.
    pub fn cross(&self, other: CVec) -> f64 {
        self.c1 * other.c2 - self.c2 * other.c1
    }

    pub fn scale(&self, s: f64) -> CVec {
        CVec::new(self.c1 * s, self.c2 * s)
    }

    pub fn is_punctured(&self) -> bool {
        self.modulus() > 0.0
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.c1, self.c2)
    }

    pub fn from_complex(z: Complex64) -> CVec {
        CVec::new(z.re, z.im)
    }
}

impl Add for CVec {
    type Output = CVec;
    fn add(self, rhs: CVec) -> CVec {
        CVec::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for CVec {
    type Output = CVec;
    fn sub(self, rhs: CVec) -> CVec {
        CVec::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Neg for CVec {
    type Output = CVec;
    fn neg(self) -> CVec {
        CVec::new(-self.c1, -self.c2)
    }
}

impl Mul for CVec {
    type Output = CVec;
    fn mul(self, rhs: CVec) -> CVec {
        cmul(self, rhs)
    }
}

/// Complex multiplication 𝐚𝐛 = (a₁b₁ − a₂b₂, a₁b₂ + a₂b₁).
pub fn cmul(a: CVec, b: CVec) -> CVec {
    CVec::new(a.c1 * b.c1 - a.c2 * b.c2, a.c1 * b.c2 + a.c2 * b.c1)
}

/// Conjugate 𝐪* = (q₁, −q₂), i.e. (q, −θ) in polar form.
pub fn cconj(a: CVec) -> CVec {
    CVec::new(a.c1, -a.c2)
}

/// Multiplicative inverse 𝐪⁻¹ = (1/q, −θ).
pub fn cinv(a: CVec) -> Result<CVec> {
    let m2 = a.modulus_sq();
    if m2 == 0.0 {
        return Err(CoreError::ZeroModulus);
    }
    Ok(CVec::new(a.c1 / m2, -a.c2 / m2))
}

/// Complex quotient 𝐚/𝐛.
pub fn cdiv(a: CVec, b: CVec) -> Result<CVec> {
    Ok(cmul(a, cinv(b)?))
}

/// Riemann-sheet index for the two-sheet square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// ℛ₁: angles ω ∈ [0, 2π).
    One,
    /// ℛ₂: angles ω ∈ [2π, 4π).
    Two,
}

/// A punctured-plane point with explicit Riemann-sheet membership.
///
/// Sheet data is never inferred from an angle larger than 2π; it is carried
/// explicitly so the ±√𝐪 bookkeeping stays unambiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetedPoint {
    pub base: CVec,
    pub sheet: Sheet,
}

impl SheetedPoint {
    pub fn new(base: CVec, sheet: Sheet) -> Self {
        SheetedPoint { base, sheet }
    }
}

/// Square root selected by the sheet: on ℛ₁ the root (√q, θ/2) with
/// θ/2 ∈ [0, π), on ℛ₂ its negation.
pub fn csqrt_sheets(q: SheetedPoint) -> Result<CVec> {
    let (m, theta) = q.base.polar();
    if m == 0.0 {
        return Err(CoreError::ZeroModulus);
    }
    let root = CVec::from_polar(m.sqrt(), 0.5 * theta);
    Ok(match q.sheet {
        Sheet::One => root,
        Sheet::Two => -root,
    })
}

/// Principal square root √𝐪 = (√q, θ/2) for θ ∈ [0, 2π).
pub fn csqrt_principal(q: CVec) -> Result<CVec> {
    csqrt_sheets(SheetedPoint::new(q, Sheet::One))
}

/// Two-sheet average ½[φ(√𝐪) + φ(−√𝐪)].
///
/// This is the smeared evaluation attached to δ(𝐱 − 𝐪/𝐱): the distribution
/// is supported on the two roots ±√𝐪 and this operation averages a test
/// function over them.
pub fn smeared_delta_pair<F>(q: CVec, phi: F) -> Result<Complex64>
where
    F: Fn(CVec) -> Complex64,
{
    let root = csqrt_principal(q)?;
    Ok(0.5 * (phi(root) + phi(-root)))
}

/// The integral ∫ δ(𝐱 − 𝐪/𝐱) φ(𝐱) d²𝐱 = ¼[φ(√𝐪) + φ(−√𝐪)].
///
/// The map F(𝐱) = 𝐱 − 𝐪/𝐱 has the two simple zeros ±√𝐪 and |det DF| = 4
/// there (F′ = 2 as a holomorphic map), so each root carries weight ¼.
/// Equals half of [`smeared_delta_pair`]; trace formulas built on the
/// inversion operator need this normalization (it is what a nascent-delta
/// quadrature converges to).
pub fn dirac_pair_integral<F>(q: CVec, phi: F) -> Result<Complex64>
where
    F: Fn(CVec) -> Complex64,
{
    let root = csqrt_principal(q)?;
    Ok(0.25 * (phi(root) + phi(-root)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn e2_squares_to_minus_e1() {
        assert_eq!(cmul(E2, E2), CVec::new(-1.0, 0.0));
    }

    #[test]
    fn e1_is_identity() {
        let q = CVec::new(0.3, -1.7);
        assert_eq!(cmul(E1, q), q);
    }

    #[test]
    fn polar_product() {
        let a = CVec::from_polar(2.0, std::f64::consts::FRAC_PI_2);
        let b = CVec::from_polar(3.0, std::f64::consts::FRAC_PI_2);
        let p = cmul(a, b);
        assert_abs_diff_eq!(p.modulus(), 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.angle(), std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn inverse_on_real_axis() {
        let v = cinv(CVec::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.c1, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(v.c2, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_in_polar_form() {
        let q = CVec::from_polar(3.2, 1.1);
        let inv = cinv(q).unwrap();
        assert_abs_diff_eq!(inv.modulus(), 1.0 / 3.2, epsilon = 1e-13);
        assert_abs_diff_eq!(inv.angle(), TAU - 1.1, epsilon = 1e-12);
        let prod = cmul(q, inv);
        assert_abs_diff_eq!(prod.c1, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(prod.c2, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn inverse_of_origin_fails() {
        assert!(matches!(cinv(ZERO), Err(CoreError::ZeroModulus)));
    }

    #[test]
    fn conjugate_flips_second_component() {
        assert_eq!(cconj(CVec::new(1.0, 1.0)), CVec::new(1.0, -1.0));
    }

    #[test]
    fn polar_round_trip() {
        let v = CVec::new(-0.3, 0.95);
        let (m, a) = v.polar();
        let w = CVec::from_polar(m, a);
        assert_abs_diff_eq!(v.c1, w.c1, epsilon = 1e-15);
        assert_abs_diff_eq!(v.c2, w.c2, epsilon = 1e-15);
    }

    #[test]
    fn sqrt_sheets_of_unity() {
        let one = CVec::new(1.0, 0.0);
        let r1 = csqrt_sheets(SheetedPoint::new(one, Sheet::One)).unwrap();
        let r2 = csqrt_sheets(SheetedPoint::new(one, Sheet::Two)).unwrap();
        assert_abs_diff_eq!(r1.c1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r2.c1, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn sqrt_of_polar_4_pi() {
        let r = csqrt_principal(CVec::from_polar(4.0, std::f64::consts::PI)).unwrap();
        assert_abs_diff_eq!(r.modulus(), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r.angle(), std::f64::consts::FRAC_PI_2, epsilon = 1e-13);
    }

    #[test]
    fn sqrt_of_origin_fails() {
        assert!(csqrt_principal(ZERO).is_err());
    }

    #[test]
    fn smeared_pair_examples() {
        // phi == 1 averages to 1
        let v = smeared_delta_pair(CVec::new(0.4, -2.0), |_| c(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        // phi(x) = x1 at q = 1: odd cancellation between the two roots
        let v = smeared_delta_pair(E1, |x| c(x.c1, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        // phi(x) = x1^2 at q = 1: both roots give 1
        let v = smeared_delta_pair(E1, |x| c(x.c1 * x.c1, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn pair_integral_is_half_the_average() {
        let q = CVec::from_polar(1.7, 2.2);
        let phi = |x: CVec| c(x.c1 + 0.3 * x.c2 * x.c2, 0.5 * x.c2);
        let avg = smeared_delta_pair(q, phi).unwrap();
        let int = dirac_pair_integral(q, phi).unwrap();
        assert_abs_diff_eq!(int.re, 0.5 * avg.re, epsilon = 1e-15);
        assert_abs_diff_eq!(int.im, 0.5 * avg.im, epsilon = 1e-15);
    }

    /// Brute-force nascent-delta oracle: ∫ δ_ε(𝐱 − 𝐪/𝐱) φ(𝐱) d²𝐱 on a fine
    /// Cartesian grid with a normalized 2-D Gaussian, extrapolated ε → 0.
    fn nascent_delta_quadrature(q: CVec, phi: &dyn Fn(CVec) -> f64, eps: f64) -> f64 {
        let n = 1100usize;
        let l = 3.5f64;
        let h = 2.0 * l / (n as f64 - 1.0);
        let mut acc = 0.0;
        for i in 0..n {
            let x1 = -l + h * i as f64;
            for j in 0..n {
                let x2 = -l + h * j as f64;
                let x = CVec::new(x1, x2);
                let m2 = x.modulus_sq();
                if m2 < 1e-20 {
                    continue;
                }
                let w = x - cmul(q, cinv(x).unwrap());
                let g = (-w.modulus_sq() / (2.0 * eps * eps)).exp()
                    / (TAU * 0.5 * 2.0 * eps * eps);
                acc += g * phi(x);
            }
        }
        acc * h * h
    }

    #[test]
    fn pair_integral_matches_nascent_delta() {
        // Five smooth test functions, assorted q; 1e-3 after eps-extrapolation.
        let cases: Vec<(CVec, Box<dyn Fn(CVec) -> f64>)> = vec![
            (E1, Box::new(|_x| 1.0)),
            (E1, Box::new(|x: CVec| x.c1 * x.c1)),
            (CVec::from_polar(2.0, 0.8), Box::new(|x: CVec| (-((x - E1).modulus_sq()) / 2.0).exp())),
            (CVec::from_polar(0.7, 2.4), Box::new(|x: CVec| x.c1 + 2.0)),
            (CVec::from_polar(1.3, 4.0), Box::new(|x: CVec| (0.5 * x.c2).cos())),
        ];
        for (q, phi) in &cases {
            let v1 = nascent_delta_quadrature(*q, phi.as_ref(), 0.10);
            let v2 = nascent_delta_quadrature(*q, phi.as_ref(), 0.05);
            // error in eps is O(eps^2): Richardson with factor 4
            let brute = v2 + (v2 - v1) / 3.0;
            let exact = dirac_pair_integral(*q, |x| c(phi(x), 0.0)).unwrap().re;
            assert!(
                (brute - exact).abs() <= 1e-3_f64.max(1e-3 * exact.abs()),
                "q=({},{}) brute={} exact={}",
                q.c1,
                q.c2,
                brute,
                exact
            );
        }
    }

    proptest! {
        #[test]
        fn field_axioms(
            a1 in -10.0..10.0f64, a2 in -10.0..10.0f64,
            b1 in -10.0..10.0f64, b2 in -10.0..10.0f64,
            c1 in -10.0..10.0f64, c2 in -10.0..10.0f64,
        ) {
            let a = CVec::new(a1, a2);
            let b = CVec::new(b1, b2);
            let cc = CVec::new(c1, c2);
            let assoc_l = cmul(cmul(a, b), cc);
            let assoc_r = cmul(a, cmul(b, cc));
            let scale = 1.0_f64.max(assoc_l.modulus());
            prop_assert!((assoc_l - assoc_r).modulus() <= 1e-13 * scale);
            let dist_l = cmul(a, b + cc);
            let dist_r = cmul(a, b) + cmul(a, cc);
            let scale = 1.0_f64.max(dist_l.modulus());
            prop_assert!((dist_l - dist_r).modulus() <= 1e-13 * scale);
            // commutativity
            prop_assert!((cmul(a, b) - cmul(b, a)).modulus() <= 1e-13 * scale);
        }

        #[test]
        fn modulus_multiplicative_angle_additive(
            m1 in 0.01..10.0f64, t1 in 0.0..TAU,
            m2 in 0.01..10.0f64, t2 in 0.0..TAU,
        ) {
            let a = CVec::from_polar(m1, t1);
            let b = CVec::from_polar(m2, t2);
            let p = cmul(a, b);
            prop_assert!((p.modulus() - m1 * m2).abs() <= 1e-12 * (m1 * m2).max(1.0));
            let want = (t1 + t2) % TAU;
            let got = p.angle();
            let d = (got - want).abs();
            let d = d.min((d - TAU).abs());
            prop_assert!(d <= 1e-11);
        }

        #[test]
        fn sqrt_squares_back(m in 0.01..10.0f64, t in 0.0..TAU, sheet2 in proptest::bool::ANY) {
            let q = CVec::from_polar(m, t);
            let sheet = if sheet2 { Sheet::Two } else { Sheet::One };
            let r = csqrt_sheets(SheetedPoint::new(q, sheet)).unwrap();
            let back = cmul(r, r);
            prop_assert!((back - q).modulus() <= 1e-12 * m.max(1.0));
        }
    }
}
