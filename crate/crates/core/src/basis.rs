//! The Laguerre–Fourier orthonormal basis of L²(ℝ²∗) and the matrix
//! elements of the representation U(𝐪,𝐩) in that basis.
//!
//! e^{(α)}_{nm}(𝐱) = √(n!/(2π(n+α)!)) e^{−x/2} x^{(α−1)/2} L_n^{(α)}(x) e^{imφ}
//!
//! Matrix elements reduce to a single oscillatory radial integral with a
//! Laguerre–Laguerre–Bessel integrand, evaluated on oscillation-aware
//! Gauss–Legendre panels.

use crate::cplane::CVec;
use crate::error::{CoreError, Result};
use crate::numerics::special::{bessel_j, integrate_panels, laguerre_all, ln_gamma};
use crate::numerics::{interp_uniform, PolarGrid};
use crate::sim2::{Field, GroupElement};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

/// Index (n, m, α) of a basis state; α > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisIndex {
    pub n: usize,
    pub m: i64,
    pub alpha: f64,
}

impl BasisIndex {
    pub fn new(n: usize, m: i64, alpha: f64) -> Self {
        assert!(alpha > 0.0, "basis parameter alpha must be positive");
        BasisIndex { n, m, alpha }
    }

    /// √(n!/(2π(n+α)!)) with (n+α)! = Γ(n+α+1).
    pub fn norm_const(&self) -> f64 {
        let ln = 0.5
            * (ln_gamma(self.n as f64 + 1.0).expect("n!")
                - (TAU).ln()
                - ln_gamma(self.n as f64 + self.alpha + 1.0).expect("(n+alpha)!"));
        ln.exp()
    }

    /// Radial part R(r) with e^{(α)}_{nm} = R(r) e^{imφ}.
    pub fn radial_at(&self, r: f64) -> f64 {
        let l = *laguerre_all(self.n, self.alpha, r).last().unwrap();
        self.norm_const() * (-0.5 * r).exp() * r.powf(0.5 * (self.alpha - 1.0)) * l
    }

    /// Closed-form pointwise value.
    pub fn eval_at(&self, x: CVec) -> Complex64 {
        let (r, phi) = x.polar();
        Complex64::from_polar(1.0, self.m as f64 * phi) * self.radial_at(r)
    }
}

/// Sample a basis state on a grid.
pub fn basis_eval(idx: &BasisIndex, grid: Arc<PolarGrid>) -> Result<Field> {
    if idx.alpha <= 0.0 {
        return Err(CoreError::BadRange("alpha must be > 0".into()));
    }
    Ok(Field::from_fn(grid, |x| idx.eval_at(x)))
}

/// Matrix element ⟨e^{(α)}_{nm} | U(𝐪,𝐩) e^{(α)}_{n′m′}⟩ by the radial
/// Laguerre–Laguerre–Bessel integral. When 𝐩 = 0 the momentum angle ψ is
/// set to 0 (J_{m′−m}(0) then removes every off-diagonal m term).
pub fn matrix_element_u(idx1: &BasisIndex, idx2: &BasisIndex, g: &GroupElement) -> Result<Complex64> {
    if (idx1.alpha - idx2.alpha).abs() > 0.0 {
        return Err(CoreError::BadRange("matrix elements need equal alpha".into()));
    }
    let alpha = idx1.alpha;
    let (n, m) = (idx1.n, idx1.m);
    let (np, mp) = (idx2.n, idx2.m);
    let (q, theta) = g.q.polar();
    let (p, psi) = if g.p.modulus() > 0.0 {
        g.p.polar()
    } else {
        (0.0, 0.0)
    };

    let k = mp - m;
    let decay = 0.5 + 0.5 / q;
    // truncation: e^{-decay·x} x^{α+n+n'} below 1e-18 of its peak
    let pow = alpha + (n + np) as f64;
    let mut x_max = (46.0 + pow) / decay;
    for _ in 0..3 {
        x_max = (46.0 + pow * x_max.max(2.0).ln()) / decay;
    }
    // oscillation-aware panel count: a few Bessel wavelengths per panel
    let wavelength = TAU / p.max(1e-9);
    let panel_w = (2.5 * wavelength).min(x_max / 16.0);
    let n_panels = ((x_max / panel_w).ceil() as usize).clamp(16, 6000);

    let integral = integrate_panels(0.0, x_max, n_panels, |x| {
        let ln1 = *laguerre_all(n, alpha, x).last().unwrap();
        let ln2 = *laguerre_all(np, alpha, x / q).last().unwrap();
        (-decay * x).exp() * x.powf(alpha) * ln1 * ln2 * bessel_j(k, -p * x)
    });

    let ln_norm = 0.5
        * (ln_gamma(n as f64 + 1.0)? + ln_gamma(np as f64 + 1.0)?
            - ln_gamma(n as f64 + alpha + 1.0)?
            - ln_gamma(np as f64 + alpha + 1.0)?);
    let norm = ln_norm.exp();

    let i_pow = Complex64::new(0.0, 1.0).powi((m - mp) as i32);
    let phase = Complex64::from_polar(1.0, -(mp as f64) * theta - ((m - mp) as f64) * psi);
    let pref = i_pow * phase / q.powf(0.5 * (alpha + 1.0));
    Ok(pref * norm * integral)
}

/// Coarse Γ-box quadrature parameters for the resolution-of-identity check.
#[derive(Debug, Clone, Copy)]
pub struct ResolutionParams {
    pub q_min: f64,
    pub q_max: f64,
    pub n_q: usize,
    pub p_max: f64,
    pub n_p: usize,
}

impl Default for ResolutionParams {
    fn default() -> Self {
        ResolutionParams {
            q_min: 0.04,
            q_max: 25.0,
            n_q: 72,
            p_max: 14.0,
            n_p: 96,
        }
    }
}

/// Result of the resolution-of-identity probe.
#[derive(Debug, Clone, Copy)]
pub struct ResolutionEstimate {
    pub estimate: f64,
    /// crude truncation hint: relative contribution of the outermost p shell
    pub tail_hint: f64,
}

/// Diagonal probe of (1/‖C_DM ψ‖²) ∫ U(g)|ψ⟩⟨ψ|U†(g) dμ(g), which should
/// be the identity. For radial real ψ the Γ integrand collapses to moduli:
///
///   ⟨e|U(q,p)ψ⟩ = 2π i^m e^{−imψ_p} (1/q) ∫ R(r) ψ(r/q) J_m(pr) r dr,
///
/// so the estimate is (4π²/c₀) ∫ (dq/q) ∫ p dp H(q,p)² over the box.
pub fn resolution_check(
    psi: &Field,
    probe: &BasisIndex,
    params: &ResolutionParams,
) -> Result<ResolutionEstimate> {
    let grid = psi.grid();
    // radial profile of ψ (assumed radial; mode 0 of the first angular column)
    let psi_rad: Vec<Complex64> = (0..grid.n_r).map(|i| psi.values[grid.idx(i, 0)]).collect();
    let t0 = grid.log_r[0];
    let h = grid.dlog;

    // c0 = ∫ |ψ|²/x² d²x
    let mut c0 = 0.0;
    for i in 0..grid.n_r {
        c0 += psi_rad[i].norm_sqr() / (grid.r[i] * grid.r[i]) * grid.w_r[i];
    }
    c0 *= TAU;
    if !(c0.is_finite() && c0 > 0.0) {
        return Err(CoreError::NotAdmissible(format!("c0 = {c0}")));
    }

    let m_abs = probe.m.unsigned_abs() as usize;
    use rayon::prelude::*;

    // log-spaced q nodes, trapezoid in log q
    let lq0 = params.q_min.ln();
    let lq1 = params.q_max.ln();
    let hq = (lq1 - lq0) / (params.n_q as f64 - 1.0);
    // p nodes: Gauss-Legendre panels over [0, p_max]
    let n_p = params.n_p;
    let hp = params.p_max / n_p as f64;

    let probe_radial: Vec<f64> = grid.r.iter().map(|&r| probe.radial_at(r)).collect();

    let per_q: Vec<(f64, f64)> = (0..params.n_q)
        .into_par_iter()
        .map(|iq| {
            let q = (lq0 + hq * iq as f64).exp();
            let wq = if iq == 0 || iq + 1 == params.n_q { 0.5 * hq } else { hq };
            // ψ(r/q) on the radial nodes
            let psi_shift: Vec<f64> = grid
                .log_r
                .iter()
                .map(|&t| interp_uniform(&psi_rad, t0, h, t - q.ln()).re)
                .collect();
            let mut acc = 0.0;
            let mut last_shell = 0.0;
            for jp in 0..n_p {
                let p = hp * (jp as f64 + 0.5);
                let mut hqp = 0.0;
                for i in 0..grid.n_r {
                    hqp += probe_radial[i] * psi_shift[i] * bessel_j(m_abs as i64, p * grid.r[i])
                        * grid.w_r[i];
                }
                let contrib = p * hp * hqp * hqp;
                acc += contrib;
                if jp + 1 == n_p {
                    last_shell = contrib;
                }
            }
            (wq * acc, wq * last_shell)
        })
        .collect();

    let mut total = 0.0;
    let mut tail = 0.0;
    for (a, t) in per_q {
        total += a;
        tail += t;
    }
    let estimate = 4.0 * PI * PI / c0 * total;
    let tail_hint = if total > 0.0 { tail / total } else { 0.0 };
    Ok(ResolutionEstimate { estimate, tail_hint })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::inner_product;
    use crate::sim2::uir_apply;
    use approx::assert_abs_diff_eq;

    #[test]
    fn orthonormality_gram() {
        let grid = PolarGrid::default_field();
        let mut states = Vec::new();
        for n in 0..=4usize {
            for m in -3..=3i64 {
                states.push(basis_eval(&BasisIndex::new(n, m, 3.0), grid.clone()).unwrap());
            }
        }
        let mut worst: f64 = 0.0;
        for (a, fa) in states.iter().enumerate() {
            for (b, fb) in states.iter().enumerate() {
                let g = inner_product(fa, fb).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - Complex64::new(want, 0.0)).norm());
            }
        }
        assert!(worst <= 1e-8, "Gram deviation {worst}");
    }

    #[test]
    fn small_radius_decay() {
        // value near the inner edge is suppressed as r^{(α-1)/2}
        let idx = BasisIndex::new(0, 0, 3.0);
        let v = idx.radial_at(1e-4);
        assert!(v.abs() < 1e-4);
        assert!(v.abs() > 0.0);
    }

    #[test]
    fn matrix_element_at_identity() {
        let g = GroupElement::identity();
        for (n, m, np, mp) in [(0, 0, 0, 0), (1, 0, 1, 0), (2, -1, 2, -1)] {
            let v = matrix_element_u(
                &BasisIndex::new(n, m, 3.0),
                &BasisIndex::new(np, mp, 3.0),
                &g,
            )
            .unwrap();
            assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
        }
        for (n, m, np, mp) in [(0, 0, 1, 0), (1, 1, 1, -1), (0, 2, 0, 1)] {
            let v = matrix_element_u(
                &BasisIndex::new(n, m, 3.0),
                &BasisIndex::new(np, mp, 3.0),
                &g,
            )
            .unwrap();
            assert!(v.norm() <= 1e-10, "({n},{m},{np},{mp}) -> {v}");
        }
    }

    #[test]
    fn matrix_element_dual_path() {
        // integral formula vs transport + quadrature, both m' >= m and m' < m
        let grid = PolarGrid::default_field();
        let g = GroupElement::new(CVec::from_polar(1.4, 0.8), CVec::new(0.7, -0.5)).unwrap();
        for (n, m, np, mp) in [
            (0, 0, 0, 0),
            (0, 0, 1, 1),
            (1, 1, 0, 0),
            (1, -1, 0, 1),
            (0, 2, 1, 0),
        ] {
            let i1 = BasisIndex::new(n, m, 3.0);
            let i2 = BasisIndex::new(np, mp, 3.0);
            let direct = matrix_element_u(&i1, &i2, &g).unwrap();
            let e1 = basis_eval(&i1, grid.clone()).unwrap();
            let e2 = basis_eval(&i2, grid.clone()).unwrap();
            let ue2 = uir_apply(&g, &e2).unwrap();
            let quad = inner_product(&ue2, &e1).unwrap();
            assert!(
                (direct - quad).norm() <= 1e-6,
                "({n},{m})({np},{mp}): formula {direct} vs quadrature {quad}"
            );
        }
    }

    #[test]
    fn matrix_element_unitarity() {
        let g = GroupElement::new(CVec::from_polar(0.8, 2.1), CVec::new(-0.4, 0.9)).unwrap();
        let ginv = crate::sim2::inverse(&g);
        for (n, m, np, mp) in [(0, 0, 0, 0), (1, 0, 0, 1), (2, -2, 1, 2), (0, 1, 2, -1)] {
            let i1 = BasisIndex::new(n, m, 3.0);
            let i2 = BasisIndex::new(np, mp, 3.0);
            let lhs = matrix_element_u(&i1, &i2, &ginv).unwrap();
            let rhs = matrix_element_u(&i2, &i1, &g).unwrap().conj();
            assert!(
                (lhs - rhs).norm() <= 1e-6,
                "unitarity ({n},{m},{np},{mp}): {lhs} vs {rhs}"
            );
        }
    }
}
