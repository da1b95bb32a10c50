use tubeduality::hamiltonian::*;
use tubeduality::tubealg::*;

fn main() {
    let spec = builtin_model("xxz").unwrap();
    for bc in ["r", "rs", "rs2"] {
        let (space, h) = assemble(&spec, 4, bc, &spec.default_couplings).unwrap();
        let world = space.world();
        let module = space.config.module;
        let a = world.endo(module).simple_index(bc).unwrap();
        let ctx = TubeContext::new(&space, &space);
        for t in tubes_between(world, module, module, a, a) {
            if let Ok(op) = tube_to_operator(&ctx, &t) {
                println!(
                    "xxz bc={bc} tube x={}: [H,T] = {:.2e}, norm {:.3}",
                    world.endo(module).simples[t.x].name,
                    op.commutator_norm(&h),
                    op.max_norm()
                );
            }
        }
        // full spectrum vs the r-twist reference
        let (vals, _) = tubeduality::linalg::eigh(&h.to_dense());
        println!("  full spectrum head: {:?}", vals.iter().take(4).map(|v| format!("{v:.4}")).collect::<Vec<_>>());
    }
}
