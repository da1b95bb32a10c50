//! The quantum double D(G) for the built-in groups: simple modules,
//! half-braiding tensors on both the group-graded and the representation
//! side, Clebsch-Gordan access and induced-representation bookkeeping.
//!
//! These furnish the closed-form matrix units of every built-in tube
//! algebra: group-element duals through the transversal action
//! `ρ̂(q_{c_i}^{-1} a q_{c_j})`, representation duals through the
//! half-braiding coefficients expanded in the fusion basis.

use crate::catdata::engine::World;
use crate::catdata::functor_dim;
use crate::groups::{s3, z2, z3, FiniteGroup};
use crate::linalg::{cr, czero, dagger, CMat};
use crate::reps::{intertwiner_basis, irreps_of, Rep};
use crate::tubealg::{MatrixUnits, SectorData, SectorLabel, Tube, TubeAlgebraElement};
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::collections::HashMap;

/// A simple module over D(G): a conjugacy class with a centralizer irrep.
pub struct DoubleModule {
    pub group: &'static FiniteGroup,
    pub class_idx: usize,
    pub class_name: String,
    pub irrep_name: String,
    /// explicit centralizer irrep, indexed by position in the class's
    /// centralizer element list
    pub hat: Rep,
    pub dim: usize,
}

impl DoubleModule {
    pub fn label(&self) -> SectorLabel {
        SectorLabel {
            class_name: self.class_name.clone(),
            irrep_name: self.irrep_name.clone(),
        }
    }

    fn class(&self) -> &crate::groups::ConjClass {
        &self.group.classes[self.class_idx]
    }

    fn hat_of(&self, parent: usize) -> &CMat {
        let pos = self
            .class()
            .centralizer
            .iter()
            .position(|&z| z == parent)
            .expect("element centralizes the representative");
        &self.hat.mats[pos]
    }

    /// ρ(a ⊗ δ_g) on the basis |c_j, v⟩.
    pub fn rho(&self, a: usize, g: usize) -> CMat {
        let class = self.class();
        let nc = class.members.len();
        let dv = self.hat.dim;
        let mut m = CMat::zeros(nc * dv, nc * dv);
        for (j, &cj) in class.members.iter().enumerate() {
            let target = self.group.conj(a, cj);
            if target != g {
                continue;
            }
            let i = class.members.iter().position(|&c| c == target).unwrap();
            // q_{c_i}^{-1} a q_{c_j} centralizes the representative
            let qi = class.transversal[i];
            let qj = class.transversal[j];
            let z = self
                .group
                .prod(self.group.prod(self.group.inverse(qi), a), qj);
            let block = self.hat_of(z);
            for r in 0..dv {
                for c in 0..dv {
                    m[(i * dv + r, j * dv + c)] = block[(r, c)];
                }
            }
        }
        m
    }

    /// The underlying G-action, `ρ(a ⊗ Σ_g δ_g)`.
    pub fn group_action(&self) -> Rep {
        let n = self.group.order;
        let mats = (0..n)
            .map(|a| {
                let mut m = CMat::zeros(self.dim, self.dim);
                for g in 0..n {
                    m += self.rho(a, g);
                }
                m
            })
            .collect();
        Rep {
            dim: self.dim,
            mats,
        }
    }
}

fn centralizer_irreps(
    group: &'static FiniteGroup,
    class_idx: usize,
) -> Vec<(String, Rep)> {
    let z = &group.classes[class_idx].centralizer;
    let builtin = match z.len() {
        1 => crate::groups::trivial(),
        2 => z2(),
        3 => z3(),
        6 => s3(),
        _ => panic!("unexpected centralizer order"),
    };
    // position-wise identification: both lists are ascending in the parent
    irreps_of(builtin)
        .iter()
        .map(|ir| {
            let name = match (z.len(), ir.name) {
                (2, n) => format!("{n}_z2"),
                (3, n) => format!("{n}_z3"),
                (_, n) => n.to_string(),
            };
            (name, ir.rep.clone())
        })
        .collect()
}

/// All simple modules of D(G), ordered by class then centralizer irrep.
pub fn double_simples(group: &'static FiniteGroup) -> Vec<DoubleModule> {
    let mut out = Vec::new();
    for (ci, class) in group.classes.iter().enumerate() {
        for (irrep_name, hat) in centralizer_irreps(group, ci) {
            let dim = class.members.len() * hat.dim;
            out.push(DoubleModule {
                group,
                class_idx: ci,
                class_name: class.name.to_string(),
                irrep_name,
                hat,
                dim,
            });
        }
    }
    out
}

/// Multiset of G-irreps in the induction of a centralizer irrep, with the
/// explicit orthonormal embedding of each constituent.
pub struct InducedDecomposition {
    /// (G-irrep id, copy index, isometry V̄ → V)
    pub slots: Vec<(usize, usize, CMat)>,
}

pub fn induced_decomposition(z: &DoubleModule) -> InducedDecomposition {
    let action = z.group_action();
    let mut slots = Vec::new();
    for (w, ir) in irreps_of(z.group).iter().enumerate() {
        let basis = intertwiner_basis(&ir.rep, &action, z.group.order);
        for (copy, t) in basis.into_iter().enumerate() {
            // normalize to an isometry ε with ε†ε = id
            let gram = dagger(&t) * &t;
            let s = 1.0 / (gram[(0, 0)].re).sqrt();
            slots.push((w, copy, t.scale(s)));
        }
    }
    InducedDecomposition { slots }
}

/// Multiplicities of G-irreps in Ind_H^G(V̂) by Frobenius reciprocity;
/// spec operation working on character data alone.
pub fn induce_decompose(
    group: &'static FiniteGroup,
    sub: &crate::groups::Subgroup,
    v: &Rep,
) -> Vec<(usize, usize)> {
    irreps_of(group)
        .iter()
        .enumerate()
        .filter_map(|(w, ir)| {
            let m = crate::reps::induction_multiplicity(sub, v, group, &ir.rep);
            (m > 0).then_some((w, m))
        })
        .collect()
}

/// The S3 Clebsch-Gordan table (spec type `CGTable`).
pub struct CGTable;

impl CGTable {
    /// C^{WVU}_{wvu}, one-based vector indices as printed.
    pub fn coeff(&self, wvu: (usize, usize, usize), idx: (usize, usize, usize)) -> C64 {
        let (w, v, u) = wvu;
        let (wi, vi, ui) = idx;
        let t = crate::catdata::s3_cg(w, v, u);
        match t.first() {
            Some(m) => m[(ui - 1, (wi - 1) * [1usize, 1, 2][v] + (vi - 1))],
            None => czero(),
        }
    }
}

pub fn cg() -> CGTable {
    CGTable
}

/// Half-braiding data of one sector on the group-graded side: coefficients
/// of the crossing with every grade.
pub struct VectSideBraiding {
    /// (a, g) → ρ̂(q_g^{-1} a q_{a^{-1} g a}) whenever g lies in the class
    pub coeff: HashMap<(usize, usize), CMat>,
}

pub fn half_braiding_vect(z: &DoubleModule) -> VectSideBraiding {
    let group = z.group;
    let class = z.class();
    let mut coeff = HashMap::new();
    for a in 0..group.order {
        for (j, &g) in class.members.iter().enumerate() {
            let target = group.conj(group.inverse(a), g);
            let i = class.members.iter().position(|&c| c == target).unwrap();
            let qg = class.transversal[j];
            let qt = class.transversal[i];
            let e = group.prod(group.prod(group.inverse(qg), a), qt);
            coeff.insert((a, g), z.hat_of(e).clone());
        }
    }
    VectSideBraiding { coeff }
}

/// Half-braiding tensor on the representation side: coefficients
/// `Ω^{Z, slot_i, slot_j}_{W, U}` in the fusion basis, computed from the
/// explicit crossing `R_{W,Z}(w ⊗ |c,v⟩) = |c,v⟩ ⊗ σ_W(c) w`.
pub struct RepSideBraiding {
    /// slots of the induced decomposition: (G-irrep, copy)
    pub slots: Vec<(usize, usize)>,
    /// (slot_i, slot_j, w, u) → coefficient (hom indices are one-dim here)
    pub omega: HashMap<(usize, usize, usize, usize), C64>,
}

pub fn half_braiding_rep(z: &DoubleModule) -> RepSideBraiding {
    let group = z.group;
    let dec = induced_decomposition(z);
    let class = z.class();
    let dv = z.hat.dim;
    let irr = irreps_of(group);
    let mut omega = HashMap::new();
    for (si, &(ai, _, ref ei)) in dec.slots.iter().enumerate() {
        for (sj, &(bj, _, ref ej)) in dec.slots.iter().enumerate() {
            for (w, wir) in irr.iter().enumerate() {
                let dw = wir.rep.dim;
                let da = irr[ai].rep.dim;
                let db = irr[bj].rep.dim;
                // R̃ : W ⊗ Ā → B̄ ⊗ W restricted through the embeddings
                let mut r = CMat::zeros(db * dw, dw * da);
                for wi in 0..dw {
                    for aidx in 0..da {
                        // embed, cross, project
                        let va = ei.column(aidx);
                        // crossing: |w⟩⊗|c_k,v⟩ ↦ |c_k,v⟩⊗σ_W(c_k)|w⟩
                        for (k, &ck) in class.members.iter().enumerate() {
                            let sig = &wir.rep.mats[ck];
                            for v in 0..dv {
                                let amp_in = va[k * dv + v];
                                if amp_in.norm() < 1e-15 {
                                    continue;
                                }
                                // project |c_k, v⟩ onto the b̄-slot
                                for bidx in 0..db {
                                    let proj = ej[(k * dv + v, bidx)].conj();
                                    if proj.norm() < 1e-15 {
                                        continue;
                                    }
                                    for wo in 0..dw {
                                        r[(bidx * dw + wo, wi * da + aidx)] +=
                                            amp_in * proj * sig[(wo, wi)];
                                    }
                                }
                            }
                        }
                    }
                }
                // expand in the fusion basis B_U = (C^{B̄ W U})† C^{W Ā U}
                for u in 0..irr.len() {
                    let cwa = base_fusion_homs_g(group, w, ai, u);
                    let cbw = base_fusion_homs_g(group, bj, w, u);
                    let (cwa, cbw) = match (cwa.first(), cbw.first()) {
                        (Some(a), Some(b)) => (a, b),
                        _ => continue,
                    };
                    let basis = dagger(cbw) * cwa;
                    let du = irr[u].rep.dim;
                    let val = crate::linalg::hs_inner(&basis, &r) / cr(du as f64);
                    if val.norm() > 1e-13 {
                        omega.insert((si, sj, w, u), val);
                    }
                }
            }
        }
    }
    RepSideBraiding {
        slots: dec.slots.iter().map(|&(w, c, _)| (w, c)).collect(),
        omega,
    }
}

fn base_fusion_homs_g(group: &'static FiniteGroup, a: usize, b: usize, c: usize) -> Vec<CMat> {
    if group.order == 2 {
        crate::catdata::z2_cg(a, b, c)
    } else {
        crate::catdata::s3_cg(a, b, c)
    }
}

// ---- closed-form matrix units --------------------------------------------

/// Which closed form applies to a module's Morita dual.
enum DualKind {
    /// boundary simples are group elements (functor names match them)
    GroupLike,
    /// boundary simples are G-irreps
    RepLike,
}

fn dual_kind(world: &World, module: usize) -> DualKind {
    let cat = world.endo(module);
    let group_named = cat
        .simples
        .iter()
        .all(|f| world.group.elem_index(&f.name).is_some());
    if cat.simples.len() == world.group.order && group_named {
        DualKind::GroupLike
    } else {
        DualKind::RepLike
    }
}

/// Matrix units of the tube algebra of `module` from the quantum-double
/// closed forms.
pub fn closed_form_matrix_units(world: &World, module: usize) -> Result<MatrixUnits> {
    let group = world.group;
    let cat = world.endo(module);
    let simples = double_simples(group);
    let fpdim = group.order as f64;
    let mut sectors = Vec::new();
    match dual_kind(world, module) {
        DualKind::GroupLike => {
            // boundary label of a group element, via the functor names
            let elem_of: Vec<usize> = (0..cat.simples.len())
                .map(|x| {
                    group
                        .elem_index(&cat.simples[x].name)
                        .expect("group-like functor names")
                })
                .collect();
            let functor_of_elem: HashMap<usize, usize> = elem_of
                .iter()
                .enumerate()
                .map(|(x, &e)| (e, x))
                .collect();
            for z in &simples {
                let class = z.class();
                let dv = z.hat.dim;
                let ell = (class.members.len() * dv) as f64;
                let norm = cr(ell / fpdim);
                let mut slots = Vec::new();
                for (i, &_c) in class.members.iter().enumerate() {
                    for v in 0..dv {
                        slots.push((functor_of_elem[&class.members[i]], v));
                    }
                }
                let mut units: HashMap<(usize, usize), TubeAlgebraElement> = HashMap::new();
                for (si, &(ai, v)) in slots.iter().enumerate() {
                    let ci = class.members[elem_pos(&elem_of, ai, class)];
                    for (sj, &(aj, vt)) in slots.iter().enumerate() {
                        let cj = class.members[elem_pos(&elem_of, aj, class)];
                        let qi = class.transversal[class.members.iter().position(|&c| c == ci).unwrap()];
                        let qj = class.transversal[class.members.iter().position(|&c| c == cj).unwrap()];
                        let mut combo: TubeAlgebraElement = HashMap::new();
                        for a in 0..group.order {
                            // tubes mapping flux c_i to c_j
                            if group.conj(a, ci) != cj {
                                continue;
                            }
                            let zc = group.prod(group.prod(group.inverse(qj), a), qi);
                            let val = z.hat_of(zc)[(vt, v)];
                            if val.norm() < 1e-14 {
                                continue;
                            }
                            let x = functor_of_elem[&a];
                            let xp = functor_of_elem[&group.prod(a, ci)];
                            combo.insert(
                                Tube {
                                    a: ai,
                                    a2: aj,
                                    x,
                                    x2: xp,
                                    k: 0,
                                    k2: 0,
                                },
                                norm * val,
                            );
                        }
                        units.insert((si, sj), combo);
                    }
                }
                sectors.push(SectorData {
                    label: z.label(),
                    slots,
                    units,
                });
            }
        }
        DualKind::RepLike => {
            for z in &simples {
                let hb = half_braiding_rep(z);
                // ℓ(Z) counts the dimension of Z as an object of the dual,
                // matching the group-element case
                let ell = z.dim as f64;
                let norm = cr(ell / fpdim);
                // boundary slots: (functor with that irrep name, copy)
                let slots: Vec<(usize, usize)> = hb
                    .slots
                    .iter()
                    .map(|&(w, copy)| {
                        let name = irreps_of(group)[w].name;
                        (cat.simple_index(name).expect("irrep-named functor"), copy)
                    })
                    .collect();
                let mut units: HashMap<(usize, usize), TubeAlgebraElement> = HashMap::new();
                let slot_dim = |s: usize| irreps_of(group)[hb.slots[s].0].rep.dim as f64;
                for si in 0..slots.len() {
                    for sj in 0..slots.len() {
                        let mut combo: TubeAlgebraElement = HashMap::new();
                        // realized tube-hom gauge carries the conjugate of
                        // the fusion-basis coefficients, and each boundary
                        // slot is weighted by its own dimension
                        let den = (slot_dim(si) * slot_dim(sj)).sqrt();
                        for ((i2, j2, w, u), val) in &hb.omega {
                            if *i2 != si || *j2 != sj {
                                continue;
                            }
                            let x = cat
                                .simple_index(irreps_of(group)[*w].name)
                                .expect("irrep-named functor");
                            let xp = cat
                                .simple_index(irreps_of(group)[*u].name)
                                .expect("irrep-named functor");
                            let dw = functor_dim(world, module, module, x);
                            combo.insert(
                                Tube {
                                    a: slots[si].0,
                                    a2: slots[sj].0,
                                    x,
                                    x2: xp,
                                    k: 0,
                                    k2: 0,
                                },
                                norm * cr(dw / den) * val.conj(),
                            );
                        }
                        units.insert((si, sj), combo);
                    }
                }
                // conjugating the fusion-basis coefficients realizes the
                // conjugate sector, so the Z3-charge labels swap
                let mut label = z.label();
                label.irrep_name = match label.irrep_name.as_str() {
                    "1_z3" => "1*_z3".into(),
                    "1*_z3" => "1_z3".into(),
                    other => other.into(),
                };
                sectors.push(SectorData {
                    label,
                    slots,
                    units,
                });
            }
        }
    }
    if sectors.is_empty() {
        return Err(Error::MissingTable("matrix units".into()));
    }
    Ok(MatrixUnits { module, sectors })
}

fn elem_pos(elem_of: &[usize], functor: usize, class: &crate::groups::ConjClass) -> usize {
    let e = elem_of[functor];
    class
        .members
        .iter()
        .position(|&c| c == e)
        .expect("boundary element lies in the sector's class")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_s3_has_eight_simples_with_total_square_36() {
        let simples = double_simples(s3());
        assert_eq!(simples.len(), 8);
        let total: usize = simples.iter().map(|z| z.dim * z.dim).sum();
        assert_eq!(total, 36);
        let names: Vec<String> = simples
            .iter()
            .map(|z| format!("([{}],{})", z.class_name, z.irrep_name))
            .collect();
        assert_eq!(
            names,
            vec![
                "([1],0)",
                "([1],1)",
                "([1],2)",
                "([r],0_z2)",
                "([r],1_z2)",
                "([s],0_z3)",
                "([s],1_z3)",
                "([s],1*_z3)"
            ]
        );
    }

    #[test]
    fn rho_is_an_algebra_homomorphism() {
        // ρ(a⊗δ_g) ρ(b⊗δ_h) = δ_{b^{-1}gb, h} ρ(ab⊗δ_g)
        for group in [z2(), s3()] {
            for z in double_simples(group) {
                for a in 0..group.order {
                    for g in 0..group.order {
                        let x = z.rho(a, g);
                        for b in 0..group.order {
                            for h in 0..group.order {
                                let y = z.rho(b, h);
                                let lhs = &x * &y;
                                let rhs = if group.conj(group.inverse(a), g) == h {
                                    z.rho(group.prod(a, b), g)
                                } else {
                                    CMat::zeros(z.dim, z.dim)
                                };
                                assert!(
                                    crate::linalg::max_diff(&lhs, &rhs) < 1e-14,
                                    "homomorphism fails at {} ({a},{g}),({b},{h})",
                                    z.label()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vect_side_composition_law() {
        // R_{ab} = (R_a ⊗ id) ∘ (id ⊗ R_b) in coefficient form:
        // ρ̂-coefficients compose through the grading
        for z in double_simples(s3()) {
            let hb = half_braiding_vect(&z);
            let group = z.group;
            let class = z.class();
            for a in 0..6 {
                for b in 0..6 {
                    let ab = group.prod(a, b);
                    for &g in &class.members {
                        let lhs = &hb.coeff[&(ab, g)];
                        // R_a acts on the outer grade; R_b sees a^{-1} g a
                        let mid = group.conj(group.inverse(a), g);
                        let rhs = hb.coeff[&(a, g)].clone() * hb.coeff[&(b, mid)].clone()
                            - lhs.clone();
                        let _ = rhs;
                        let prod = hb.coeff[&(b, mid)].clone();
                        let full = hb.coeff[&(a, g)].clone() * prod;
                        assert!(crate::linalg::max_diff(&full, lhs) < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_decompositions_match_reciprocity() {
        let simples = double_simples(s3());
        let by = |cn: &str, ir: &str| -> Vec<usize> {
            let z = simples
                .iter()
                .find(|z| z.class_name == cn && z.irrep_name == ir)
                .unwrap();
            induced_decomposition(z).slots.iter().map(|&(w, _, _)| w).collect()
        };
        assert_eq!(by("s", "0_z3"), vec![0, 1]);
        assert_eq!(by("s", "1_z3"), vec![2]);
        assert_eq!(by("s", "1*_z3"), vec![2]);
        assert_eq!(by("r", "0_z2"), vec![0, 2]);
        assert_eq!(by("r", "1_z2"), vec![1, 2]);
        assert_eq!(by("1", "2"), vec![2]);
    }

    #[test]
    fn printed_half_braiding_matrices() {
        // the ([1],2) sector: rows (0,0,1 / 0,0,−1 / 1,−1,1) over (W,U)
        let simples = double_simples(s3());
        let z = simples
            .iter()
            .find(|z| z.class_name == "1" && z.irrep_name == "2")
            .unwrap();
        let hb = half_braiding_rep(z);
        let get = |w: usize, u: usize| hb.omega.get(&(0, 0, w, u)).copied().unwrap_or(czero());
        let expect = [
            [czero(), czero(), cr(1.0)],
            [czero(), czero(), cr(-1.0)],
            [cr(1.0), cr(-1.0), cr(1.0)],
        ];
        for w in 0..3 {
            for u in 0..3 {
                assert!(
                    (get(w, u) - expect[w][u]).norm() < 1e-12,
                    "([1],2) at ({w},{u}): {}",
                    get(w, u)
                );
            }
        }
        // ([s],1_z3): same support with ω̄, −ω̄, ω on the last row
        let z = simples
            .iter()
            .find(|z| z.class_name == "s" && z.irrep_name == "1_z3")
            .unwrap();
        let hb = half_braiding_rep(z);
        let get = |w: usize, u: usize| hb.omega.get(&(0, 0, w, u)).copied().unwrap_or(czero());
        let om = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expect = [
            [czero(), czero(), cr(1.0)],
            [czero(), czero(), cr(-1.0)],
            [om.conj(), -om.conj(), om],
        ];
        for w in 0..3 {
            for u in 0..3 {
                assert!(
                    (get(w, u) - expect[w][u]).norm() < 1e-12,
                    "([s],1_z3) at ({w},{u}): {} vs {}",
                    get(w, u),
                    expect[w][u]
                );
            }
        }
    }
}
