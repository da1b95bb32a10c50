use tubeduality::duality::*;
use tubeduality::hamiltonian::builtin_model;

fn main() {
    let ising = builtin_model("ising").unwrap();
    let kw = builtin_model("kw").unwrap();
    for l in [3usize, 4, 5] {
        match verify_pair(&ising, &kw, 0, l, &ising.default_couplings, l <= 3) {
            Ok(rep) => {
                println!("ising:kw L={l}: all_matched={}", rep.all_matched);
                for s in &rep.sectors {
                    println!(
                        "  {} @{} -> {} @{}: dim {}, gap {:.2e}, transport {:?}",
                        s.source, s.source_boundary, s.target, s.target_boundary,
                        s.block_dim, s.spectral_gap,
                        s.transport_gap.map(|g| format!("{g:.2e}"))
                    );
                }
            }
            Err(e) => println!("L={l}: ERROR {e}"),
        }
    }
    let repz2 = builtin_model("rep_z2").unwrap();
    let xxz = builtin_model("xxz").unwrap();
    let b = tubeduality::statespace::bundle("rep_s3").unwrap();
    let x0 = b.world.cat(1, 0).simple_index("0_z3").unwrap();
    for l in [3usize, 4] {
        match verify_pair(&repz2, &xxz, x0, l, &repz2.default_couplings, l <= 3) {
            Ok(rep) => {
                println!("rep_z2:xxz L={l}: all_matched={}", rep.all_matched);
                for s in &rep.sectors {
                    println!(
                        "  {} @{} -> {} @{}: dim {}, gap {:.2e}, transport {:?}",
                        s.source, s.source_boundary, s.target, s.target_boundary,
                        s.block_dim, s.spectral_gap,
                        s.transport_gap.map(|g| format!("{g:.2e}"))
                    );
                }
            }
            Err(e) => println!("L={l}: ERROR {e}"),
        }
    }
}
