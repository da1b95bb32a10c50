use std::collections::HashMap;
use tubeduality::hamiltonian::*;
use tubeduality::linalg::CMat;
use num_complex::Complex64 as C64;
use nalgebra::DMatrix;
fn cr(x: f64) -> C64 { C64::new(x, 0.0) }
fn main() {
    let spec = builtin_model("rep_z2").unwrap();
    let cpl: HashMap<String, f64> = [("J2".to_string(), 1.0), ("J1".to_string(), 1.0)].into();
    let (space, h) = assemble(&spec, 3, "2", &cpl).unwrap();
    let hd = to_encoded_dense(&space, &h).unwrap();
    let n = 4;
    let (x, z) = (pauli('x'), pauli('z'));
    let mut bulk: CMat = DMatrix::zeros(1 << n, 1 << n);
    for b in 1..3usize {
        let (a, c) = (b - 1, b + 1);
        bulk += site_operator(n, &[a, c], &[z.clone(), z.clone()]) * cr(0.5);
        bulk += site_operator(n, &[a, b, c], &[z.clone(), x.clone(), z.clone()]) * cr(0.5);
        bulk -= site_operator(n, &[b], &[x.clone()]);
    }
    let diff = hd - bulk;
    println!("rep_z2 2-twist boundary (both terms):");
    for r in 0..16 {
        for c in 0..16 {
            if diff[(r, c)].norm() > 1e-10 {
                println!("  ({r:04b} <- {c:04b}): {:.4} {:+.4}i", diff[(r, c)].re, diff[(r, c)].im);
            }
        }
    }
}
