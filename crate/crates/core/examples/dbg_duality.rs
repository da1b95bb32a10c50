use tubeduality::duality::*;
use tubeduality::hamiltonian::builtin_model;

fn main() {
    // Kramers-Wannier sector map
    let ising = builtin_model("ising").unwrap();
    let kw = builtin_model("kw").unwrap();
    match sector_map(&ising, &kw, 0, 3) {
        Ok(entries) => {
            for e in &entries {
                println!(
                    "KW: {} @{} -> {} @{} ({:.3})",
                    e.source, e.source_boundary, e.target, e.target_boundary, e.overlap
                );
            }
        }
        Err(e) => println!("KW map error: {e}"),
    }
    // S3 duality rep_z2 -> xxz with functor 0_z3
    let repz2 = builtin_model("rep_z2").unwrap();
    let xxz = builtin_model("xxz").unwrap();
    let b = tubeduality::statespace::bundle("rep_s3").unwrap();
    let mz2 = b.world.module_index("rep_z2").unwrap();
    let mv = b.world.module_index("vect").unwrap();
    let cat = b.world.cat(mz2, mv);
    let x0 = cat.simple_index("0_z3").unwrap();
    match sector_map(&repz2, &xxz, x0, 3) {
        Ok(entries) => {
            for e in &entries {
                println!(
                    "S3: {} @{} -> {} @{} ({:.3})",
                    e.source, e.source_boundary, e.target, e.target_boundary, e.overlap
                );
            }
        }
        Err(e) => println!("S3 map error: {e}"),
    }
}
