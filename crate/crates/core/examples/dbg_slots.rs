use tubeduality::hamiltonian::*;
use tubeduality::tubealg::*;
use tubeduality::spectra::eigensolve_dense;
use tubeduality::linalg::dagger;

fn main() {
    for (model, bcs) in [("xxz", vec!["r", "rs", "rs2"]), ("rep_z2", vec!["0", "1", "2"])] {
        let spec = builtin_model(model).unwrap();
        println!("== {model} ==");
        for bc in bcs {
            let (space, h) = assemble(&spec, 4, bc, &spec.default_couplings).unwrap();
            let hd = h.to_dense();
            for (label, slot, p) in sector_projectors(&space).unwrap() {
                if !label.class_name.contains('r') && model == "xxz" { continue; }
                if model == "rep_z2" && label.class_name != "r" { continue; }
                let basis = projector_image_basis(&p.to_dense());
                let block = dagger(&basis) * &hd * &basis;
                let vals = eigensolve_dense(&block).unwrap();
                let shown: Vec<String> = vals.iter().map(|v| format!("{v:.4}")).collect();
                println!("  {label} @{bc} slot{:?}: {:?}", slot, shown);
            }
        }
    }
}
