use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use tubeduality::hamiltonian::{pauli, site_operator};
use tubeduality::linalg::CMat;

fn cr(x: f64) -> C64 { C64::new(x, 0.0) }
fn sp() -> CMat { (pauli('x') + (pauli('y') * C64::new(0.0, 1.0))) * cr(0.5) }
fn sm() -> CMat { (pauli('x') - (pauli('y') * C64::new(0.0, 1.0))) * cr(0.5) }

fn xxz_k(l: usize, k: &CMat) -> CMat {
    let z = pauli('z');
    let conj = |s: &CMat| k.adjoint() * s * k;
    let mut t: CMat = DMatrix::zeros(1 << l, 1 << l);
    for i in 0..l {
        let (a, b) = (i, (i + 1) % l);
        let (rsp, rsm, rz) = if i == l - 1 {
            (conj(&sp()), conj(&sm()), conj(&z))
        } else {
            (sp(), sm(), z.clone())
        };
        t += site_operator(l, &[a, b], &[sp(), rsm.clone()]);
        t += site_operator(l, &[a, b], &[sm(), rsp.clone()]);
        t += site_operator(l, &[a, b], &[z.clone(), rz.clone()]);
    }
    t
}

fn main() {
    let g = tubeduality::groups::s3();
    let two = &tubeduality::reps::irreps_of(g)[2].rep;
    let r = two.mats[g.elem_index("r").unwrap()].clone();
    let rst = two.mats[g.elem_index("rs").unwrap()].transpose();
    let (va, _) = tubeduality::linalg::eigh(&xxz_k(4, &r));
    let (vb, _) = tubeduality::linalg::eigh(&xxz_k(4, &rst));
    println!("K=rho(r):    {:?}", va.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());
    println!("K=rho(rs)^T: {:?}", vb.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());
}
