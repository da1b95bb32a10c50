use tubeduality::hamiltonian::*;
use tubeduality::tubealg::*;

fn main() {
    for model in ["rep_z2", "rep_s3", "ising"] {
        let spec = builtin_model(model).unwrap();
        let world_bcs: Vec<String> = {
            let b = tubeduality::statespace::bundle(spec.world).unwrap();
            let m = b.world.module_index(spec.module).unwrap();
            b.world.endo(m).simples.iter().map(|f| f.name.clone()).collect()
        };
        for bc in &world_bcs {
            let (space, h) = assemble(&spec, 3, bc, &spec.default_couplings).unwrap();
            let world = space.world();
            let module = space.config.module;
            let a = world.endo(module).simple_index(bc).unwrap();
            let ctx = TubeContext::new(&space, &space);
            let mut worst = 0.0f64;
            for t in tubes_between(world, module, module, a, a) {
                if let Ok(op) = tube_to_operator(&ctx, &t) {
                    worst = worst.max(op.commutator_norm(&h));
                }
            }
            println!("{model} bc={bc}: worst [H,T] = {worst:.2e}");
        }
    }
}
