use tubeduality::duality::*;
use tubeduality::hamiltonian::*;
use tubeduality::tubealg::*;
use tubeduality::linalg::dagger;
use tubeduality::spectra::eigensolve_dense;

fn main() {
    // replicate the verify path for the failing pair at L=3
    let xxz = builtin_model("xxz").unwrap();
    let (space, h) = assemble(&xxz, 3, "rs", &xxz.default_couplings).unwrap();
    let hd = h.to_dense();
    for (sector, slot, p) in sector_projectors(&space).unwrap() {
        let basis = projector_image_basis(&p.to_dense());
        let block = dagger(&basis) * &hd * &basis;
        let vals = eigensolve_dense(&block).unwrap();
        println!(
            "xxz@rs L=3 {sector} slot{slot:?}: {:?}",
            vals.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>()
        );
    }
    let repz2 = builtin_model("rep_z2").unwrap();
    let (space, h) = assemble(&repz2, 3, "2", &repz2.default_couplings).unwrap();
    let hd = h.to_dense();
    for (sector, slot, p) in sector_projectors(&space).unwrap() {
        if sector.class_name != "r" { continue; }
        let basis = projector_image_basis(&p.to_dense());
        let block = dagger(&basis) * &hd * &basis;
        let vals = eigensolve_dense(&block).unwrap();
        println!(
            "rep_z2@2 L=3 {sector} slot{slot:?}: {:?}",
            vals.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>()
        );
    }
    // and the r-boundary reference
    let (space, h) = assemble(&xxz, 3, "r", &xxz.default_couplings).unwrap();
    let hd = h.to_dense();
    for (sector, slot, p) in sector_projectors(&space).unwrap() {
        let basis = projector_image_basis(&p.to_dense());
        let block = dagger(&basis) * &hd * &basis;
        let vals = eigensolve_dense(&block).unwrap();
        println!(
            "xxz@r L=3 {sector} slot{slot:?}: {:?}",
            vals.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>()
        );
    }
}
