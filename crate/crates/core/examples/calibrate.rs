//! Development scratch: print coherence residuals and selected table
//! entries of the builtin bundles for gauge calibration.

use tubeduality::catdata::{
    self, f_left_action_table, load_bundle, omega_table, f_comp_table,
};

fn main() {
    for name in ["vec_z2", "rep_s3"] {
        let b = load_bundle(name).unwrap();
        println!("== bundle {name} ==");
        for (id, r) in catdata::residual_report(&b) {
            println!("  {id}: {r:.3e}");
        }
    }

    let b = load_bundle("rep_s3").unwrap();
    let w = &b.world;
    let mz2 = w.module_index("rep_z2").unwrap();
    let mv = w.module_index("vect").unwrap();

    println!("\n== F< of rep_z2, Y1=Y2=2 block (want (-1)^(m1+m2+m3)/sqrt2) ==");
    let fl = f_left_action_table(w, mz2);
    for m1 in 0..2 {
        for m2 in 0..2 {
            for m3 in 0..2 {
                let v = fl.get(&[m1, 2, 2, m2, m3, 2], [0, 0, 0, 0]);
                println!("  m1={m1} m2={m2} m3={m3}: {:.4} {:+.4}i", v.re, v.im);
            }
        }
    }
    println!("== F< of rep_z2, (m1,1,2,m2) entries (want +1 at m3=m1^1) ==");
    for m1 in 0..2 {
        for m2 in 0..2 {
            for m3 in 0..2 {
                let v = fl.get(&[m1, 1, 2, m2, m3, 2], [0, 0, 0, 0]);
                if v.norm() > 1e-12 {
                    println!("  m1={m1} m2={m2} via m3={m3}: {:.4} {:+.4}i", v.re, v.im);
                }
            }
        }
    }
    println!("== F< of rep_z2, (m1,2,1,m2) entries (want +1) ==");
    for m1 in 0..2 {
        for m2 in 0..2 {
            for m3 in 0..2 {
                let v = fl.get(&[m1, 2, 1, m2, m3, 2], [0, 0, 0, 0]);
                if v.norm() > 1e-12 {
                    println!("  m1={m1} m2={m2} via m3={m3}: {:.4} {:+.4}i", v.re, v.im);
                }
            }
        }
    }

    println!("\n== omega of Fun(rep_z2→vect), X=0_z3 (want rows (1,1),(1,-1),(-1,1),(-1,-1)/sqrt2) ==");
    let om = omega_table(w, mz2, mv);
    let cat = w.cat(mz2, mv);
    let x0 = cat.simple_index("0_z3").unwrap();
    for m1 in 0..2 {
        for m2 in 0..2 {
            for i in 0..2 {
                let v = om.get(&[x0, m1, 2, 0, 0, m2], [0, i, 0, 0]);
                println!("  m1={m1} m2={m2} i={i}: {:.4} {:+.4}i", v.re, v.im);
            }
        }
    }

    println!("\n== F-bimodule (omega of endo rep_z2), X=2, Y=2 blocks (want ±1/2, ±sqrt3/2) ==");
    let omz = omega_table(w, mz2, mz2);
    let ez2 = w.endo(mz2);
    let x2 = ez2.simple_index("2").unwrap();
    for m1 in 0..2 {
        for m2 in 0..2 {
            for n1 in 0..2 {
                for m4 in 0..2 {
                    let v = omz.get(&[x2, m1, 2, m2, n1, m4], [0, 0, 0, 0]);
                    if v.norm() > 1e-12 {
                        println!(
                            "  (x=2,m1={m1},y=2,n2={m2}) low n1={n1} up m4={m4}: {:.4} {:+.4}i",
                            v.re, v.im
                        );
                    }
                }
            }
        }
    }
    println!("== same with Y=1 (want ±1) ==");
    for m1 in 0..2 {
        for m2 in 0..2 {
            for n1 in 0..2 {
                for m4 in 0..2 {
                    let v = omz.get(&[x2, m1, 1, m2, n1, m4], [0, 0, 0, 0]);
                    if v.norm() > 1e-12 {
                        println!(
                            "  (x=2,m1={m1},y=1,n2={m2}) low n1={n1} up m4={m4}: {:.4} {:+.4}i",
                            v.re, v.im
                        );
                    }
                }
            }
        }
    }

    println!("\n== F-comp Fun(rep_z2→vect)∘endo(rep_z2): (x1=0_z3, x2=2) (want ±1/sqrt2, ±i/sqrt2) ==");
    let ffc = f_comp_table(w, mz2, mz2, mv);
    let c3 = w.cat(mz2, mv);
    for m in 0..2 {
        for x3 in 0..3 {
            for n in 0..2 {
                let v = ffc.get(&[x0, x2, m, 0, x3, n], [0, 0, 0, 0]);
                if v.norm() > 1e-12 {
                    println!(
                        "  m={m} x3={} n={n}: {:.4} {:+.4}i",
                        c3.simples[x3].name, v.re, v.im
                    );
                }
            }
        }
    }
    println!("== F-comp endo(vect)∘Fun(rep_z2→vect): (x1=g, x2=0_z3) (want +1 structure) ==");
    let ffb = f_comp_table(w, mz2, mv, mv);
    let ev = w.endo(mv);
    for g in 0..6 {
        for m in 0..2 {
            for x3 in 0..3 {
                let v = ffb.get(&[g, x0, m, 0, x3, 0], [0, 0, 0, 0]);
                if v.norm() > 1e-12 {
                    println!(
                        "  B={} m={m} x3={}: {:.4} {:+.4}i",
                        ev.simples[g].name, c3.simples[x3].name, v.re, v.im
                    );
                }
            }
        }
    }
}
