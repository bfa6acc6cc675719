//! Generator matrices in SO(4), acting on column vectors.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4, Vector4};

use super::spec::{Family, GroupSpec};

pub type Mat4 = Matrix4<f64>;

pub fn rot(t: f64) -> Matrix2<f64> {
    Matrix2::new(t.cos(), -t.sin(), t.sin(), t.cos())
}

/// Block matrix `[[a, c], [d, b]]` from 2×2 blocks.
pub fn blocks(a: Matrix2<f64>, c: Matrix2<f64>, d: Matrix2<f64>, b: Matrix2<f64>) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&d);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
    m
}

pub fn diag_rot(t1: f64, t2: f64) -> Mat4 {
    blocks(rot(t1), Matrix2::zeros(), Matrix2::zeros(), rot(t2))
}

/// Hamilton product with quaternions written as (1, i, j, k) coordinates.
pub fn qmul(p: &Vector4<f64>, q: &Vector4<f64>) -> Vector4<f64> {
    let (a1, b1, c1, d1) = (p[0], p[1], p[2], p[3]);
    let (a2, b2, c2, d2) = (q[0], q[1], q[2], q[3]);
    Vector4::new(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )
}

/// Matrix of right multiplication `x ↦ x·p`.
pub fn right_mult(p: Vector4<f64>) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..4 {
        let mut e = Vector4::zeros();
        e[i] = 1.0;
        m.set_column(i, &qmul(&e, &p));
    }
    m
}

/// Cofactor generator: the same rotation in both coordinate planes.
pub fn cofactor(m: u64) -> Mat4 {
    let t = 2.0 * PI / m as f64;
    diag_rot(t, t)
}

fn tetra_base() -> Mat4 {
    #[rustfmt::skip]
    let w = Mat4::new(
        -1.0, -1.0, -1.0, -1.0,
         1.0, -1.0,  1.0, -1.0,
         1.0, -1.0, -1.0,  1.0,
         1.0,  1.0, -1.0, -1.0,
    );
    w * 0.5
}

/// Named matrices of the free generators of the core group (cofactor excluded).
pub fn core_generators(spec: &GroupSpec) -> Vec<(&'static str, Mat4)> {
    match spec.family {
        Family::Cyclic => {
            let (r1, r2) = spec.lens.unwrap_or((1, 1));
            let t = 2.0 * PI / spec.m as f64;
            vec![("c", diag_rot(t * r1 as f64, t * r2 as f64))]
        }
        Family::BinaryDihedral => {
            let t = PI / spec.n as f64;
            let (c, s) = (t.cos(), t.sin());
            #[rustfmt::skip]
            let b = Mat4::new(
                c, 0.0, 0.0, -s,
                0.0, c, s, 0.0,
                0.0, -s, c, 0.0,
                s, 0.0, 0.0, c,
            );
            vec![("b", b), ("a", diag_rot(PI / 2.0, -PI / 2.0))]
        }
        Family::BinaryOctahedral => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            #[rustfmt::skip]
            let a = Mat4::new(
                 0.0, 1.0, 1.0,  0.0,
                -1.0, 0.0, 0.0,  1.0,
                -1.0, 0.0, 0.0, -1.0,
                 0.0, -1.0, 1.0, 0.0,
            ) * h;
            vec![("b", right_mult(Vector4::new(0.5, 0.5, 0.5, 0.5))), ("a", a)]
        }
        Family::BinaryIcosahedral => {
            // right multiplication by -(φ i + j + φ⁻¹ k)/2, an icosian of order 4
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let a = right_mult(Vector4::new(0.0, -phi / 2.0, -0.5, -1.0 / (2.0 * phi)));
            vec![("b", right_mult(Vector4::new(0.5, 0.5, 0.5, 0.5))), ("a", a)]
        }
        Family::GeneralizedTetrahedral => {
            let a = diag_rot(-PI / 2.0, PI / 2.0);
            let w = if spec.q == 1 {
                tetra_base()
            } else {
                let t = 2.0 * PI / 3f64.powi(spec.q as i32);
                tetra_base() * diag_rot(t, t)
            };
            vec![("a", a), ("w", w)]
        }
        Family::Dicyclic => {
            let t = 2.0 * PI / spec.n as f64;
            let r = rot(PI / 2f64.powi(spec.q as i32 - 1));
            let w = blocks(Matrix2::zeros(), r, r, Matrix2::zeros());
            vec![("u", diag_rot(t, -t)), ("w", w)]
        }
    }
}

/// Cosines of the two rotation angles (larger first), from tr M and tr M².
pub fn rotation_cosines(m: &Mat4) -> (f64, f64) {
    let t1 = m.trace();
    let t2 = (m * m).trace();
    // x + y = t1/2, x² + y² = (t2 + 4)/4
    let s = t1 / 2.0;
    let p = (s * s - (t2 + 4.0) / 4.0) / 2.0;
    let disc = (s * s - 4.0 * p).max(0.0).sqrt();
    let x = ((s + disc) / 2.0).clamp(-1.0, 1.0);
    let y = ((s - disc) / 2.0).clamp(-1.0, 1.0);
    (x, y)
}
