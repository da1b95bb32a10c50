//! Explicit unitary irreducible representations of the built-in groups and
//! the intertwiner solver used to construct hom-space bases.

use crate::groups::{s3, trivial, z2, z3, FiniteGroup, Subgroup};
use crate::linalg::{cone, czero, eye, kron, nullspace, CMat};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// A finite-dimensional representation with one explicit matrix per group
/// element (indexed like the group's element list).
#[derive(Debug, Clone)]
pub struct Rep {
    pub dim: usize,
    pub mats: Vec<CMat>,
}

impl Rep {
    pub fn character(&self, g: usize) -> C64 {
        let mut tr = czero();
        for i in 0..self.dim {
            tr += self.mats[g][(i, i)];
        }
        tr
    }

    pub fn tensor(&self, other: &Rep) -> Rep {
        Rep {
            dim: self.dim * other.dim,
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| kron(a, b))
                .collect(),
        }
    }

    /// Restriction along a subgroup embedding; the result is a rep of the
    /// subgroup's own element list.
    pub fn restrict(&self, sub: &Subgroup) -> Rep {
        Rep {
            dim: self.dim,
            mats: sub.embed.iter().map(|&p| self.mats[p].clone()).collect(),
        }
    }

    /// Twist by conjugation, `g ↦ ρ(a⁻¹ g a)`.
    pub fn twist(&self, group: &FiniteGroup, a: usize) -> Rep {
        let ai = group.inverse(a);
        Rep {
            dim: self.dim,
            mats: (0..group.order)
                .map(|g| self.mats[group.prod(group.prod(ai, g), a)].clone())
                .collect(),
        }
    }

    pub fn trivial_of(group: &FiniteGroup) -> Rep {
        Rep {
            dim: 1,
            mats: (0..group.order).map(|_| eye(1)).collect(),
        }
    }
}

/// Named irrep table of a built-in group.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub name: &'static str,
    pub rep: Rep,
}

fn omega() -> C64 {
    C64::from_polar(1.0, 2.0 * PI / 3.0)
}

fn diag2(a: C64, b: C64) -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = a;
    m[(1, 1)] = b;
    m
}

fn off2(a: C64, b: C64) -> CMat {
    // [[0, a], [b, 0]]
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = a;
    m[(1, 0)] = b;
    m
}

fn one_dim(vals: Vec<C64>) -> Rep {
    Rep {
        dim: 1,
        mats: vals
            .into_iter()
            .map(|v| {
                let mut m = CMat::zeros(1, 1);
                m[(0, 0)] = v;
                m
            })
            .collect(),
    }
}

/// Irreps of a built-in group, in the fixed order used for object ids:
/// trivial first, then by ascending dimension.
pub fn irreps_of(group: &'static FiniteGroup) -> &'static [Irrep] {
    static TRIV: OnceLock<Vec<Irrep>> = OnceLock::new();
    static Z2: OnceLock<Vec<Irrep>> = OnceLock::new();
    static Z3: OnceLock<Vec<Irrep>> = OnceLock::new();
    static S3: OnceLock<Vec<Irrep>> = OnceLock::new();
    if std::ptr::eq(group, trivial()) {
        return TRIV.get_or_init(|| {
            vec![Irrep {
                name: "0",
                rep: one_dim(vec![cone()]),
            }]
        });
    }
    if std::ptr::eq(group, z2()) {
        return Z2.get_or_init(|| {
            vec![
                Irrep {
                    name: "0",
                    rep: one_dim(vec![cone(), cone()]),
                },
                Irrep {
                    name: "1",
                    rep: one_dim(vec![cone(), -cone()]),
                },
            ]
        });
    }
    if std::ptr::eq(group, z3()) {
        return Z3.get_or_init(|| {
            let w = omega();
            vec![
                Irrep {
                    name: "0",
                    rep: one_dim(vec![cone(), cone(), cone()]),
                },
                Irrep {
                    name: "1",
                    rep: one_dim(vec![cone(), w, w.conj()]),
                },
                Irrep {
                    name: "1*",
                    rep: one_dim(vec![cone(), w.conj(), w]),
                },
            ]
        });
    }
    if std::ptr::eq(group, s3()) {
        return S3.get_or_init(|| {
            let w = omega();
            let wb = w.conj();
            // elements ordered 1, r, rs, rs2, s, s2
            let two = Rep {
                dim: 2,
                mats: vec![
                    eye(2),
                    off2(cone(), cone()),
                    off2(wb, w),
                    off2(w, wb),
                    diag2(w, wb),
                    diag2(wb, w),
                ],
            };
            vec![
                Irrep {
                    name: "0",
                    rep: one_dim(vec![cone(); 6]),
                },
                Irrep {
                    name: "1",
                    rep: one_dim(vec![
                        cone(),
                        -cone(),
                        -cone(),
                        -cone(),
                        cone(),
                        cone(),
                    ]),
                },
                Irrep { name: "2", rep: two },
            ]
        });
    }
    panic!("irreps_of: unknown builtin group {}", group.name);
}

/// Orthonormal basis (Hilbert-Schmidt) of the intertwiner space
/// `Hom(a, b) = { T : T a(g) = b(g) T for all g }`.
///
/// Matrices are vectorized column-major; the deterministic null-space
/// routine fixes the basis and phases.
pub fn intertwiner_basis(a: &Rep, b: &Rep, group_order: usize) -> Vec<CMat> {
    let (da, db) = (a.dim, b.dim);
    let n = da * db;
    let mut rows = CMat::zeros(group_order * n, n);
    for g in 0..group_order {
        // vec(T a(g)) = (a(g)^T ⊗ I) vec(T); vec(b(g) T) = (I ⊗ b(g)) vec(T)
        let lhs = kron(&a.mats[g].transpose(), &eye(db)) - kron(&eye(da), &b.mats[g]);
        for i in 0..n {
            for j in 0..n {
                rows[(g * n + i, j)] = lhs[(i, j)];
            }
        }
    }
    nullspace(&rows, n, 1e-10)
        .into_iter()
        .map(|v| {
            let mut t = CMat::zeros(db, da);
            for col in 0..da {
                for row in 0..db {
                    t[(row, col)] = v[col * db + row];
                }
            }
            t
        })
        .collect()
}

/// Multiplicity of irrep `w` of `group` in the representation induced from
/// irrep `v` of the subgroup, by Frobenius reciprocity on characters.
pub fn induction_multiplicity(sub: &Subgroup, v: &Rep, _group: &'static FiniteGroup, w: &Rep) -> usize {
    let h = sub.group.order;
    let mut acc = czero();
    for loc in 0..h {
        let par = sub.embed[loc];
        acc += w.character(par) * v.character(loc).conj();
    }
    let m = acc.re / h as f64;
    assert!(
        (m - m.round()).abs() < 1e-9 && acc.im.abs() < 1e-9,
        "non-integral induction multiplicity"
    );
    m.round() as usize
}

/// Explicit induced representation `Ind_H^G(σ ⊗ ρ_V∘Ad_{g⁻¹})` realized on
/// `C[G2/S] ⊗ σ ⊗ V` with a fixed coset transversal, as used by the module
/// functor engine. `g` conjugates the second factor into the subgroup `S` of
/// the target group.
pub struct Induced {
    pub transversal: Vec<usize>,
    pub rep: Rep,
}

pub fn induce(
    host: &'static FiniteGroup,
    s_elems: &[usize],
    sigma: &Rep,
    fiber: &Rep,
    fiber_of_host: impl Fn(usize) -> CMat,
) -> Induced {
    // Transversal of host/S in ascending element order, identity first.
    let mut transversal = vec![0usize];
    let mut covered: Vec<usize> = s_elems.iter().map(|&s| host.prod(0, s)).collect();
    for t in 1..host.order {
        if !covered.contains(&t) {
            transversal.push(t);
            covered.extend(s_elems.iter().map(|&s| host.prod(t, s)));
        }
    }
    let nc = transversal.len();
    let fiber_dim = sigma.dim * fiber.dim;
    let dim = nc * fiber_dim;
    let mats: Vec<CMat> = (0..host.order)
        .map(|h| {
            let mut m = CMat::zeros(dim, dim);
            for (u, &tu) in transversal.iter().enumerate() {
                let htu = host.prod(h, tu);
                // find u', s with h t_u = t_{u'} s
                let (up, s_host) = transversal
                    .iter()
                    .enumerate()
                    .find_map(|(up, &tup)| {
                        let s = host.prod(host.inverse(tup), htu);
                        s_elems.contains(&s).then_some((up, s))
                    })
                    .expect("coset decomposition");
                let s_local = s_elems.iter().position(|&x| x == s_host).unwrap();
                let block = kron(&sigma.mats[s_local], &fiber_of_host(s_host));
                let _ = &fiber;
                for i in 0..fiber_dim {
                    for j in 0..fiber_dim {
                        m[(up * fiber_dim + i, u * fiber_dim + j)] = block[(i, j)];
                    }
                }
            }
            m
        })
        .collect();
    Induced {
        transversal,
        rep: Rep { dim, mats },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::s3_subgroup;
    use crate::linalg::{dagger, max_diff};

    #[test]
    fn s3_irreps_are_unitary_homomorphisms() {
        let g = s3();
        for irr in irreps_of(g) {
            for a in 0..6 {
                let u = &irr.rep.mats[a];
                assert!(max_diff(&(u * dagger(u)), &eye(irr.rep.dim)) < 1e-14);
                for b in 0..6 {
                    let ab = g.prod(a, b);
                    assert!(max_diff(&(u * &irr.rep.mats[b]), &irr.rep.mats[ab]) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn two_dim_tensor_square_decomposes() {
        let g = s3();
        let two = &irreps_of(g)[2].rep;
        let sq = two.tensor(two);
        for (k, expect) in [(0usize, 1usize), (1, 1), (2, 1)] {
            let basis = intertwiner_basis(&sq, &irreps_of(g)[k].rep, 6);
            assert_eq!(basis.len(), expect);
        }
    }

    #[test]
    fn induction_multiplicities_by_reciprocity() {
        let g = s3();
        let z3sub = s3_subgroup("z3").unwrap();
        let z2sub = s3_subgroup("z2").unwrap();
        let s3_irr = irreps_of(g);
        let z3_irr = irreps_of(z3());
        let z2_irr = irreps_of(z2());
        // Ind(0_Z3) = 0 ⊕ 1, Ind(1_Z3) = 2, Ind(1_Z2) = 1 ⊕ 2
        let m = |sub: &Subgroup, v: &Rep, w: &Rep| induction_multiplicity(sub, v, g, w);
        assert_eq!(m(&z3sub, &z3_irr[0].rep, &s3_irr[0].rep), 1);
        assert_eq!(m(&z3sub, &z3_irr[0].rep, &s3_irr[1].rep), 1);
        assert_eq!(m(&z3sub, &z3_irr[0].rep, &s3_irr[2].rep), 0);
        assert_eq!(m(&z3sub, &z3_irr[1].rep, &s3_irr[2].rep), 1);
        assert_eq!(m(&z2sub, &z2_irr[1].rep, &s3_irr[1].rep), 1);
        assert_eq!(m(&z2sub, &z2_irr[1].rep, &s3_irr[2].rep), 1);
    }
}
