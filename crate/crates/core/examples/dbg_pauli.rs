use std::collections::HashMap;
use tubeduality::hamiltonian::*;
use tubeduality::linalg::CMat;
use num_complex::Complex64 as C64;
use nalgebra::DMatrix;
fn cr(x: f64) -> C64 { C64::new(x, 0.0) }

fn pauli_decompose(m: &CMat, n: usize) {
    // print coefficients over Pauli strings
    let ps = ['i', 'x', 'y', 'z'];
    let mut idx = vec![0usize; n];
    loop {
        let ops: Vec<CMat> = idx.iter().map(|&k| pauli(ps[k])).collect();
        let sites: Vec<usize> = (0..n).collect();
        let basis = site_operator(n, &sites, &ops);
        let coeff = tubeduality::linalg::hs_inner(&basis, m) / cr((1 << n) as f64);
        if coeff.norm() > 1e-10 {
            let name: String = idx.iter().map(|&k| ps[k].to_ascii_uppercase()).collect();
            println!("   {name}: {:.4} {:+.4}i", coeff.re, coeff.im);
        }
        let mut c = n;
        loop {
            if c == 0 { return; }
            c -= 1;
            idx[c] += 1;
            if idx[c] < 4 { break; }
            idx[c] = 0;
        }
    }
}

fn main() {
    let spec = builtin_model("rep_z2").unwrap();
    for (j2, j1, tag) in [(1.0, 0.0, "J2"), (0.0, 1.0, "J1")] {
        let cpl: HashMap<String, f64> = [("J2".to_string(), j2), ("J1".to_string(), j1)].into();
        let (space, h) = assemble(&spec, 3, "2", &cpl).unwrap();
        let hd = to_encoded_dense(&space, &h).unwrap();
        let n = 4;
        let (x, z) = (pauli('x'), pauli('z'));
        let mut bulk: CMat = DMatrix::zeros(1 << n, 1 << n);
        for b in 1..3usize {
            let (a, c) = (b - 1, b + 1);
            bulk += site_operator(n, &[a, c], &[z.clone(), z.clone()]) * cr(0.5 * j2);
            bulk += site_operator(n, &[a, b, c], &[z.clone(), x.clone(), z.clone()]) * cr(0.5 * j2);
            bulk -= site_operator(n, &[b], &[x.clone()]) * cr(j1);
        }
        println!("{tag}-boundary term in Pauli strings (sites 0..3):");
        pauli_decompose(&(hd - bulk), 4);
    }
}
