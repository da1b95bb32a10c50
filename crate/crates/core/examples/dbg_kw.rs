use tubeduality::hamiltonian::*;
use tubeduality::tubealg::*;

fn main() {
    let ising = builtin_model("ising").unwrap();
    let kw = builtin_model("kw").unwrap();
    let (si, _) = assemble(&ising, 3, "1", &ising.default_couplings).unwrap();
    let world = si.world();
    let (m_ising, m_kw) = (0usize, 1usize);
    for bkw in ["1", "m"] {
        let (sk, hk) = assemble(&kw, 3, bkw, &kw.default_couplings).unwrap();
        let ctx = TubeContext::new(&si, &sk);
        let a = world.endo(m_ising).simple_index("1").unwrap();
        let b = world.endo(m_kw).simple_index(bkw).unwrap();
        let ts = tubes_between(world, m_ising, m_kw, a, b);
        println!("tubes (ising@1 -> kw@{bkw}): {}", ts.len());
        for t in &ts {
            match tube_to_operator(&ctx, t) {
                Ok(op) => {
                    let (_, hi) = assemble(&ising, 3, "1", &ising.default_couplings).unwrap();
                    let lhs = op.matmul(&hi);
                    let rhs = hk.matmul(&op);
                    println!(
                        "  x={} x'={} k={} k'={}: norm {:.4}, intertwining defect {:.2e}",
                        t.x, t.x2, t.k, t.k2,
                        op.max_norm(),
                        tubeduality::linalg::max_diff(&lhs.to_dense(), &rhs.to_dense())
                    );
                }
                Err(e) => println!("  error: {e}"),
            }
        }
    }
}
