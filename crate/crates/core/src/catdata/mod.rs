//! Categorical symbol tables: storage, derivation from the concrete
//! realization, coherence validation and the JSON bundle format.
//!
//! Six families of symbols parameterize everything the model library
//! needs. All are sparse maps from labeled index tuples to complex values;
//! the label layout per family is documented on [`SymbolTable`].

pub mod engine;

use crate::groups::FiniteGroup;
use crate::linalg::{cr, czero, dagger, eye, hs_inner, max_abs, CMat};
use crate::reps::Rep;
use crate::{Error, Result, TOL_TABLE};
use engine::{build_world, FunctorData, World};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A simple object of a fusion ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleObject {
    pub id: usize,
    pub name: String,
    pub quantum_dim: f64,
}

/// Fusion multiplicities over a finite set of simples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FusionRing {
    pub objects: Vec<SimpleObject>,
    pub unit: usize,
    /// (y1, y2, y3) → N^{y3}_{y1 y2}, zeros omitted
    pub mult: HashMap<(usize, usize, usize), usize>,
}

impl FusionRing {
    pub fn n(&self, y1: usize, y2: usize, y3: usize) -> usize {
        self.mult.get(&(y1, y2, y3)).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.objects.len()
    }

    /// Frobenius-Perron dimension of one object: the largest eigenvalue of
    /// its fusion matrix.
    pub fn fpdim_object(&self, y: usize) -> f64 {
        let n = self.rank();
        let mut m = CMat::zeros(n, n);
        for a in 0..n {
            for c in 0..n {
                m[(c, a)] = cr(self.n(y, a, c) as f64);
            }
        }
        // power iteration on the entrywise-nonnegative matrix
        let mut v = vec![1.0f64; n];
        for _ in 0..200 {
            let mut w = vec![0.0f64; n];
            for a in 0..n {
                for c in 0..n {
                    w[c] += m[(c, a)].re * v[a];
                }
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-300 {
                return 0.0;
            }
            v = w.into_iter().map(|x| x / norm).collect();
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for a in 0..n {
            let mut row = 0.0;
            for b in 0..n {
                row += m[(a, b)].re * v[b];
            }
            num += v[a] * row;
            den += v[a] * v[a];
        }
        num / den
    }

    /// Frobenius-Perron dimension of the whole ring, Σ d_i².
    pub fn fpdim(&self) -> f64 {
        (0..self.rank()).map(|y| self.fpdim_object(y).powi(2)).sum()
    }

    /// Unit laws and associativity of the multiplicities.
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        for y in 0..n {
            if self.n(self.unit, y, y) != 1 || self.n(y, self.unit, y) != 1 {
                return Err(Error::FusionViolation(format!(
                    "unit law fails at object {}",
                    self.objects[y].name
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: usize = (0..n).map(|e| self.n(a, b, e) * self.n(e, c, d)).sum();
                        let rhs: usize = (0..n).map(|f| self.n(b, c, f) * self.n(a, f, d)).sum();
                        if lhs != rhs {
                            return Err(Error::FusionViolation(format!(
                                "associativity fails at ({a},{b},{c};{d})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Families of symbol tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// associator of the input category: labels `[y1,y2,y3,y4,y5,y6]`
    F,
    /// right module associator: labels `[m1,y1,y2,m2,m3,y3]`
    FLeftAction,
    /// bimodule/functor structure (MPO tensors): labels `[x,m1,y,n2,n1,m2]`
    Omega,
    /// composition of module functors: labels `[x1,x2,m,o,x3,n]`
    FComp,
    /// associativity of functor composition: labels `[x1,x2,x3,x4,x5,x6]`
    FCirc,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::F => "F",
            Family::FLeftAction => "F<",
            Family::Omega => "omega",
            Family::FComp => "Ff",
            Family::FCirc => "Fo",
        }
    }
}

/// Sparse symbol table: entries keyed by object labels plus hom indices
/// `[i,k,l,j]` in the slot order of the family's defining relation
/// (lower pair then upper pair).
#[derive(Debug, Clone)]
pub struct SymbolTable {
    pub family: Family,
    pub entries: HashMap<(Vec<usize>, [usize; 4]), C64>,
}

impl SymbolTable {
    pub fn get(&self, labels: &[usize], hom: [usize; 4]) -> C64 {
        self.entries
            .get(&(labels.to_vec(), hom))
            .copied()
            .unwrap_or_else(czero)
    }

    pub fn insert(&mut self, labels: Vec<usize>, hom: [usize; 4], v: C64) {
        if v.norm() > 1e-15 {
            self.entries.insert((labels, hom), v);
        }
    }

    /// Max deviation of every fixed-external block from unitarity. Rows are
    /// indexed by the lower (object, i, k) triple, columns by the upper
    /// (object, l, j) triple.
    pub fn unitarity_residual(&self) -> f64 {
        type Cell = ((usize, usize, usize), (usize, usize, usize), C64);
        let mut blocks: HashMap<Vec<usize>, Vec<Cell>> = HashMap::new();
        for ((labels, hom), v) in &self.entries {
            blocks.entry(labels[..4].to_vec()).or_default().push((
                (labels[4], hom[0], hom[1]),
                (labels[5], hom[2], hom[3]),
                *v,
            ));
        }
        let mut worst = 0.0f64;
        for cells in blocks.values() {
            let mut rows: Vec<(usize, usize, usize)> =
                cells.iter().map(|c| c.0).collect();
            let mut cols: Vec<(usize, usize, usize)> =
                cells.iter().map(|c| c.1).collect();
            rows.sort();
            rows.dedup();
            cols.sort();
            cols.dedup();
            let mut m = CMat::zeros(rows.len(), cols.len());
            for (r, c, v) in cells {
                let ri = rows.binary_search(r).unwrap();
                let ci = cols.binary_search(c).unwrap();
                m[(ri, ci)] = *v;
            }
            if rows.len() == cols.len() {
                let p = &m * dagger(&m);
                worst = worst.max(crate::linalg::max_diff(&p, &eye(rows.len())));
            } else {
                worst = worst.max(1.0);
            }
        }
        worst
    }
}

/// All derived data of one built-in world, packaged for validation and
/// serialization: the spec-facing bundle.
pub struct CategoryBundle {
    pub name: String,
    pub world: World,
    pub base: FusionRing,
}

impl CategoryBundle {
    pub fn module_names(&self) -> Vec<&'static str> {
        self.world.modules.iter().map(|m| m.name).collect()
    }
}

/// Load a built-in bundle by name (`vec_z2`, `rep_s3`) or a JSON bundle
/// from a file path.
pub fn load_bundle(spec: &str) -> Result<CategoryBundle> {
    if let Some(world) = build_world(spec) {
        let base = base_ring(&world);
        return Ok(CategoryBundle {
            name: spec.into(),
            world,
            base,
        });
    }
    Err(Error::UnknownBuiltin(spec.into()))
}

/// The fusion ring of the input category D.
pub fn base_ring(world: &World) -> FusionRing {
    let n = world.dirreps.len();
    let objects = (0..n)
        .map(|y| SimpleObject {
            id: y,
            name: world.dirreps[y].name.to_string(),
            quantum_dim: world.dirreps[y].rep.dim as f64,
        })
        .collect();
    let mut mult = HashMap::new();
    for y1 in 0..n {
        for y2 in 0..n {
            for y3 in 0..n {
                let c = base_fusion_homs(world, y1, y2, y3).len();
                if c > 0 {
                    mult.insert((y1, y2, y3), c);
                }
            }
        }
    }
    FusionRing {
        objects,
        unit: 0,
        mult,
    }
}

/// Fusion intertwiners of the input category in the fixed CG gauge.
pub fn base_fusion_homs(world: &World, y1: usize, y2: usize, y3: usize) -> Vec<CMat> {
    if world.group.order == 2 {
        engine::z2_cg(y1, y2, y3)
    } else {
        engine::s3_cg(y1, y2, y3)
    }
}

// ---- table derivation ----------------------------------------------------

fn path_overlap(big_dim: usize, rhs: &CMat, lhs: &CMat) -> C64 {
    hs_inner(rhs, lhs) / cr(big_dim as f64)
}

/// F-symbols of the input category from CG paths.
pub fn f_table(world: &World) -> SymbolTable {
    let n = world.dirreps.len();
    let mut t = SymbolTable {
        family: Family::F,
        entries: HashMap::new(),
    };
    for y1 in 0..n {
        for y2 in 0..n {
            for y3 in 0..n {
                for y4 in 0..n {
                    let d4 = world.dirreps[y4].rep.dim;
                    let d3 = world.dirreps[y3].rep.dim;
                    for y5 in 0..n {
                        let c12: Vec<CMat> = base_fusion_homs(world, y1, y2, y5);
                        let c53 = base_fusion_homs(world, y5, y3, y4);
                        for (i, a) in c12.iter().enumerate() {
                            for (k, b) in c53.iter().enumerate() {
                                let lhs = b * crate::linalg::kron(a, &eye(d3));
                                for y6 in 0..n {
                                    let c23 = base_fusion_homs(world, y2, y3, y6);
                                    let c16 = base_fusion_homs(world, y1, y6, y4);
                                    let d1 = world.dirreps[y1].rep.dim;
                                    for (l, c) in c23.iter().enumerate() {
                                        for (j, d) in c16.iter().enumerate() {
                                            let rhs = d * crate::linalg::kron(&eye(d1), c);
                                            let v = path_overlap(d4, &rhs, &lhs);
                                            t.insert(
                                                vec![y1, y2, y3, y4, y5, y6],
                                                [i, k, l, j],
                                                v,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

/// Right module associator table of one module category.
pub fn f_left_action_table(world: &World, module: usize) -> SymbolTable {
    let md = &world.modules[module];
    let nm = md.simples.len();
    let ny = world.dirreps.len();
    let mut t = SymbolTable {
        family: Family::FLeftAction,
        entries: HashMap::new(),
    };
    for m1 in 0..nm {
        for y1 in 0..ny {
            for y2 in 0..ny {
                for m2 in 0..nm {
                    let d2 = md.simples[m2].rep.dim;
                    let dy2 = world.dirreps[y2].rep.dim;
                    for m3 in 0..nm {
                        for (i, a) in md.thom(m1, y1, m3).iter().enumerate() {
                            for (k, b) in md.thom(m3, y2, m2).iter().enumerate() {
                                let lhs = b * crate::linalg::kron(a, &eye(dy2));
                                for y3 in 0..ny {
                                    let cs = base_fusion_homs(world, y1, y2, y3);
                                    let d1 = md.simples[m1].rep.dim;
                                    for (l, c) in cs.iter().enumerate() {
                                        for (j, d) in md.thom(m1, y3, m2).iter().enumerate() {
                                            let rhs = d * crate::linalg::kron(&eye(d1), c);
                                            let v = path_overlap(d2, &rhs, &lhs);
                                            t.insert(
                                                vec![m1, y1, y2, m2, m3, y3],
                                                [i, k, l, j],
                                                v,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

/// MPO tensor table (ω-symbols) for a functor category; equals the
/// bimodule associator when src = dst.
pub fn omega_table(world: &World, src: usize, dst: usize) -> SymbolTable {
    let cat = world.cat(src, dst);
    let msrc = &world.modules[src];
    let mdst = &world.modules[dst];
    let ny = world.dirreps.len();
    let mut t = SymbolTable {
        family: Family::Omega,
        entries: HashMap::new(),
    };
    for (x, f) in cat.simples.iter().enumerate() {
        for m1 in 0..msrc.simples.len() {
            for y in 0..ny {
                let dy = world.dirreps[y].rep.dim;
                let om = world.omega(f, &msrc.simples[m1].rep, y);
                let om_inv = dagger(&om);
                for n2 in 0..mdst.simples.len() {
                    let dn2 = mdst.simples[n2].rep.dim;
                    for n1 in 0..mdst.simples.len() {
                        for (i, u) in cat.uhom(x, m1, n1).iter().enumerate() {
                            for (k, tn) in mdst.thom(n1, y, n2).iter().enumerate() {
                                let lhs = tn * crate::linalg::kron(u, &eye(dy));
                                for m2 in 0..msrc.simples.len() {
                                    for (l, tm) in msrc.thom(m1, y, m2).iter().enumerate() {
                                        for (j, u2) in cat.uhom(x, m2, n2).iter().enumerate() {
                                            let rhs =
                                                u2 * world.apply_mor(f, tm) * &om_inv;
                                            let v = path_overlap(dn2, &rhs, &lhs);
                                            t.insert(
                                                vec![x, m1, y, n2, n1, m2],
                                                [i, k, l, j],
                                                v,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

/// Composition table (F𝔉-symbols) for `x1 ∈ Fun(mid→dst)` after
/// `x2 ∈ Fun(src→mid)`.
pub fn f_comp_table(world: &World, src: usize, mid: usize, dst: usize) -> SymbolTable {
    let c1 = world.cat(mid, dst);
    let c2 = world.cat(src, mid);
    let c3 = world.cat(src, dst);
    let msrc = &world.modules[src];
    let mmid = &world.modules[mid];
    let mdst = &world.modules[dst];
    let mut t = SymbolTable {
        family: Family::FComp,
        entries: HashMap::new(),
    };
    for (x1, f1) in c1.simples.iter().enumerate() {
        for (x2, f2) in c2.simples.iter().enumerate() {
            for m in 0..msrc.simples.len() {
                let vm = &msrc.simples[m].rep;
                let f2m = world.apply(f2, vm);
                for o in 0..mdst.simples.len() {
                    let do_ = mdst.simples[o].rep.dim;
                    for (x3, f3) in c3.simples.iter().enumerate() {
                        let key = (src, mid, dst, x1, x2, x3);
                        for (i, s) in world.theta(key).iter().enumerate() {
                            for (k, u) in c3.uhom(x3, m, o).iter().enumerate() {
                                let lhs = u * dagger(&s[m]);
                                for n in 0..mmid.simples.len() {
                                    for (l, u2) in c2.uhom(x2, m, n).iter().enumerate() {
                                        for (j, u1) in c1.uhom(x1, n, o).iter().enumerate() {
                                            let rhs = u1 * world.apply_mor(f1, u2);
                                            let _ = &f2m;
                                            let _ = f3;
                                            let v = path_overlap(do_, &rhs, &lhs);
                                            t.insert(
                                                vec![x1, x2, m, o, x3, n],
                                                [i, k, l, j],
                                                v,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

/// Associator of functor composition (F∘-symbols) over the path
/// src→m1→m2→dst, giving in particular the F-symbols of every Morita dual
/// when all four legs are one endofunctor category.
pub fn f_circ_entry(
    world: &World,
    legs: (usize, usize, usize, usize),
    xs: [usize; 4],
    x5: usize,
    x6: usize,
    hom: [usize; 4],
) -> C64 {
    let (a0, a1, a2, a3) = legs;
    let [x1, x2, x3, x4] = xs;
    let [i, k, l, j] = hom;
    let c3 = world.cat(a0, a1);
    let f1 = &world.cat(a2, a3).simples[x1];
    let f2 = &world.cat(a1, a2).simples[x2];
    let f3 = &c3.simples[x3];
    let f4 = &world.cat(a0, a3).simples[x4];
    let f5 = &world.cat(a1, a3).simples.get(x5);
    let f6 = &world.cat(a0, a2).simples.get(x6);
    let (f5, f6) = match (f5, f6) {
        (Some(a), Some(b)) => (a, b),
        _ => return czero(),
    };
    let th12_5 = world.theta((a1, a2, a3, x1, x2, x5));
    let th53_4 = world.theta((a0, a1, a3, x5, x3, x4));
    let th23_6 = world.theta((a0, a1, a2, x2, x3, x6));
    let th16_4 = world.theta((a0, a2, a3, x1, x6, x4));
    if i >= th12_5.len() || k >= th53_4.len() || l >= th23_6.len() || j >= th16_4.len() {
        return czero();
    }
    let modsrc = &world.modules[a0];
    let mut num = czero();
    let mut den = 0.0f64;
    for (m, sm) in modsrc.simples.iter().enumerate() {
        let f3m = world.apply(f3, &sm.rep);
        // LHS: S^{x1x2}_{x5,i} at F3(V_m), after S^{x5x3}_{x4,k} at m
        let s12_at = world.nat_at(
            a1,
            &th12_5[i],
            &f3m,
            |t| world.apply_mor(f5, t),
            |t| world.apply_mor(f1, &world.apply_mor(f2, t)),
        );
        let lhs = s12_at * &th53_4[k][m];
        // RHS: F1(S^{x2x3}_{x6,l} at m) after S^{x1x6}_{x4,j} at m
        let rhs = world.apply_mor(f1, &th23_6[l][m]) * &th16_4[j][m];
        num += hs_inner(&rhs, &lhs);
        den += world.apply(f4, &sm.rep).dim as f64;
        let _ = f6;
    }
    num / cr(den)
}

// ---- coherence validators -------------------------------------------------

/// Pulling-through residual for functor `x ∈ Fun(src→dst)`: the pentagon
/// relating its ω-table to the module associators on both sides.
pub fn validate_pulling_through(world: &World, src: usize, dst: usize, x: usize) -> f64 {
    let om = omega_table(world, src, dst);
    let flm = f_left_action_table(world, src);
    let fln = f_left_action_table(world, dst);
    pulling_through_residual(world, src, dst, x, &om, &flm, &fln)
}

pub fn pulling_through_residual(
    world: &World,
    src: usize,
    dst: usize,
    x: usize,
    om: &SymbolTable,
    flm: &SymbolTable,
    fln: &SymbolTable,
) -> f64 {
    let msrc = &world.modules[src];
    let mdst = &world.modules[dst];
    let cat = world.cat(src, dst);
    let ny = world.dirreps.len();
    let nm = msrc.simples.len();
    let nn = mdst.simples.len();
    let hom_u = |x: usize, m: usize, n: usize| cat.uhom(x, m, n).len();
    let hom_tm = |a: usize, y: usize, b: usize| msrc.action_mult(a, y, b);
    let hom_tn = |a: usize, y: usize, b: usize| mdst.action_mult(a, y, b);
    let mut worst = 0.0f64;
    for m1 in 0..nm {
        for y1 in 0..ny {
            for y2 in 0..ny {
                for n3 in 0..nn {
                    for n1 in 0..nn {
                        for i in 0..hom_u(x, m1, n1) {
                            for n2 in 0..nn {
                                for k1 in 0..hom_tn(n1, y1, n2) {
                                    for k2 in 0..hom_tn(n2, y2, n3) {
                                        for m2 in 0..nm {
                                            for l1 in 0..hom_tm(m1, y1, m2) {
                                                for m3 in 0..nm {
                                                    for l2 in 0..hom_tm(m2, y2, m3) {
                                                        for j in 0..hom_u(x, m3, n3) {
                                                            let mut a = czero();
                                                            for ip in 0..hom_u(x, m2, n2) {
                                                                a += om.get(
                                                                    &[x, m1, y1, n2, n1, m2],
                                                                    [i, k1, l1, ip],
                                                                ) * om.get(
                                                                    &[x, m2, y2, n3, n2, m3],
                                                                    [ip, k2, l2, j],
                                                                );
                                                            }
                                                            let mut b = czero();
                                                            for y3 in 0..ny {
                                                                let nf = crate::catdata::base_fusion_homs(
                                                                    world, y1, y2, y3,
                                                                )
                                                                .len();
                                                                for t in 0..nf {
                                                                    for s in 0..hom_tn(n1, y3, n3) {
                                                                        for mm in 0..hom_tm(m1, y3, m3)
                                                                        {
                                                                            b += fln
                                                                                .get(
                                                                                    &[n1, y1, y2, n3, n2, y3],
                                                                                    [k1, k2, t, s],
                                                                                )
                                                                                .conj()
                                                                                * om.get(
                                                                                    &[x, m1, y3, n3, n1, m3],
                                                                                    [i, s, mm, j],
                                                                                )
                                                                                * flm.get(
                                                                                    &[m1, y1, y2, m3, m2, y3],
                                                                                    [l1, l2, t, mm],
                                                                                );
                                                                        }
                                                                    }
                                                                }
                                                            }
                                                            worst = worst.max((a - b).norm());
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

/// MPO fusion residual for the pair (x1 ∈ Fun(mid→dst), x2 ∈ Fun(src→mid)).
pub fn validate_mpo_fusion(world: &World, src: usize, mid: usize, dst: usize, x1: usize, x2: usize) -> f64 {
    let om1 = omega_table(world, mid, dst);
    let om2 = omega_table(world, src, mid);
    let om3 = omega_table(world, src, dst);
    let ff = f_comp_table(world, src, mid, dst);
    mpo_fusion_residual(world, src, mid, dst, x1, x2, &om1, &om2, &om3, &ff)
}

#[allow(clippy::too_many_arguments)]
pub fn mpo_fusion_residual(
    world: &World,
    src: usize,
    mid: usize,
    dst: usize,
    x1: usize,
    x2: usize,
    om1: &SymbolTable,
    om2: &SymbolTable,
    om3: &SymbolTable,
    ff: &SymbolTable,
) -> f64 {
    let msrc = &world.modules[src];
    let mmid = &world.modules[mid];
    let mdst = &world.modules[dst];
    let c1 = world.cat(mid, dst);
    let c2 = world.cat(src, mid);
    let c3 = world.cat(src, dst);
    let ny = world.dirreps.len();
    let mut worst = 0.0f64;
    for m1 in 0..msrc.simples.len() {
        for y in 0..ny {
            for o2 in 0..mdst.simples.len() {
                for o1 in 0..mdst.simples.len() {
                    for n1 in 0..mmid.simples.len() {
                        for i2 in 0..c2.uhom(x2, m1, n1).len() {
                            for i1 in 0..c1.uhom(x1, n1, o1).len() {
                                for k in 0..mdst.action_mult(o1, y, o2) {
                                    for m2 in 0..msrc.simples.len() {
                                        for l in 0..msrc.action_mult(m1, y, m2) {
                                            for n2 in 0..mmid.simples.len() {
                                                for j2 in 0..c2.uhom(x2, m2, n2).len() {
                                                    for j1 in 0..c1.uhom(x1, n2, o2).len() {
                                                        let mut lhs = czero();
                                                        for m in 0..mmid.action_mult(n1, y, n2) {
                                                            lhs += om2.get(
                                                                &[x2, m1, y, n2, n1, m2],
                                                                [i2, m, l, j2],
                                                            ) * om1.get(
                                                                &[x1, n1, y, o2, o1, n2],
                                                                [i1, k, m, j1],
                                                            );
                                                        }
                                                        let mut rhs = czero();
                                                        for x3 in 0..c3.simples.len() {
                                                            let nth = world
                                                                .theta((src, mid, dst, x1, x2, x3))
                                                                .len();
                                                            for o in 0..nth {
                                                                for p in 0..c3.uhom(x3, m1, o1).len() {
                                                                    for q in 0..c3.uhom(x3, m2, o2).len() {
                                                                        rhs += ff
                                                                            .get(
                                                                                &[x1, x2, m1, o1, x3, n1],
                                                                                [o, p, i2, i1],
                                                                            )
                                                                            .conj()
                                                                            * om3.get(
                                                                                &[x3, m1, y, o2, o1, m2],
                                                                                [p, k, l, q],
                                                                            )
                                                                            * ff.get(
                                                                                &[x1, x2, m2, o2, x3, n2],
                                                                                [o, q, j2, j1],
                                                                            );
                                                                    }
                                                                }
                                                            }
                                                        }
                                                        worst = worst.max((lhs - rhs).norm());
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

// ---- spec operations -------------------------------------------------------

/// Derive the right module associator of `Rep(G)` over a subgroup: the
/// engine's hom bases are built from explicit intertwiners, so this is the
/// table-extraction path exposed as an operation.
pub fn derive_module_associator(bundle: &CategoryBundle, module_name: &str) -> Result<SymbolTable> {
    let m = bundle
        .world
        .module_index(module_name)
        .ok_or_else(|| Error::UnknownBuiltin(module_name.into()))?;
    Ok(f_left_action_table(&bundle.world, m))
}

/// Fusion ring of the Morita dual `Fun_D(M, M)`.
pub fn morita_dual_ring(bundle: &CategoryBundle, module_name: &str) -> Result<FusionRing> {
    let m = bundle
        .world
        .module_index(module_name)
        .ok_or_else(|| Error::UnknownBuiltin(module_name.into()))?;
    let world = &bundle.world;
    let cat = world.endo(m);
    let n = cat.simples.len();
    let mut mult = HashMap::new();
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                let c = world.comp_mult((m, m, m, x1, x2, x3));
                if c > 0 {
                    mult.insert((x1, x2, x3), c);
                }
            }
        }
    }
    let unit = (0..n)
        .position(|x| (0..n).all(|y| mult.get(&(x, y, y)).copied().unwrap_or(0) == 1))
        .ok_or_else(|| Error::MissingTable("unit of dual ring".into()))?;
    let ring = FusionRing {
        objects: (0..n)
            .map(|x| SimpleObject {
                id: x,
                name: cat.simples[x].name.clone(),
                quantum_dim: 0.0,
            })
            .collect(),
        unit,
        mult,
    };
    let mut ring = ring;
    for x in 0..n {
        ring.objects[x].quantum_dim = ring.fpdim_object(x);
    }
    ring.validate()?;
    Ok(ring)
}

// ---- JSON bundle io --------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonEntry {
    pub labels: Vec<usize>,
    pub hom: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonBase {
    pub name: String,
    pub simples: Vec<String>,
    pub unit: usize,
    pub fusion: Vec<[usize; 4]>,
    pub f_symbols: Vec<JsonEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonModule {
    pub name: String,
    pub simples: Vec<String>,
    pub action: Vec<[usize; 4]>,
    pub f_left: Vec<JsonEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonFunctorCat {
    pub src: String,
    pub dst: String,
    pub simples: Vec<String>,
    pub omega: Vec<JsonEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonBundle {
    pub base: JsonBase,
    pub modules: Vec<JsonModule>,
    pub functors: Vec<JsonFunctorCat>,
}

fn entries_to_json(t: &SymbolTable) -> Vec<JsonEntry> {
    let mut out: Vec<JsonEntry> = t
        .entries
        .iter()
        .map(|((labels, hom), v)| JsonEntry {
            labels: labels.clone(),
            hom: hom.iter().map(|h| h + 1).collect(),
            re: v.re,
            im: v.im,
        })
        .collect();
    out.sort_by(|a, b| (&a.labels, &a.hom).partial_cmp(&(&b.labels, &b.hom)).unwrap());
    out
}

/// Serialize the derived tables of a builtin world to the JSON bundle
/// format.
pub fn bundle_to_json(bundle: &CategoryBundle) -> JsonBundle {
    let world = &bundle.world;
    let base = JsonBase {
        name: bundle.name.clone(),
        simples: world.dirreps.iter().map(|d| d.name.to_string()).collect(),
        unit: 0,
        fusion: bundle
            .base
            .mult
            .iter()
            .map(|(&(a, b, c), &n)| [a, b, c, n])
            .collect(),
        f_symbols: entries_to_json(&f_table(world)),
    };
    let modules = (0..world.modules.len())
        .map(|m| {
            let md = &world.modules[m];
            let mut action: Vec<[usize; 4]> = md
                .thoms
                .iter()
                .map(|(&(a, y, b), v)| [a, y, b, v.len()])
                .collect();
            action.sort();
            JsonModule {
                name: md.name.to_string(),
                simples: md.simples.iter().map(|s| s.name.clone()).collect(),
                action,
                f_left: entries_to_json(&f_left_action_table(world, m)),
            }
        })
        .collect();
    let functors = world
        .cats
        .keys()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|(s, d)| JsonFunctorCat {
            src: world.modules[s].name.to_string(),
            dst: world.modules[d].name.to_string(),
            simples: world.cat(s, d).simples.iter().map(|f| f.name.clone()).collect(),
            omega: entries_to_json(&omega_table(world, s, d)),
        })
        .collect();
    JsonBundle {
        base,
        modules,
        functors,
    }
}

/// Validate labels of a user-supplied JSON bundle: ranges and fusion
/// admissibility of every F-symbol entry.
pub fn validate_json_bundle(b: &JsonBundle) -> Result<()> {
    let n = b.base.simples.len();
    let mut ring = FusionRing {
        objects: b
            .base
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| SimpleObject {
                id: i,
                name: s.clone(),
                quantum_dim: 1.0,
            })
            .collect(),
        unit: b.base.unit,
        mult: HashMap::new(),
    };
    for &[a, bb, c, m] in &b.base.fusion {
        if a >= n || bb >= n || c >= n {
            return Err(Error::LabelRange(format!("fusion rule ({a},{bb},{c})")));
        }
        ring.mult.insert((a, bb, c), m);
    }
    ring.validate()?;
    for e in &b.base.f_symbols {
        if e.labels.len() != 6 {
            return Err(Error::Parse("F entry needs 6 labels".into()));
        }
        let l = &e.labels;
        if l.iter().any(|&y| y >= n) {
            return Err(Error::LabelRange(format!("F labels {:?}", l)));
        }
        let (y1, y2, y3, y4, y5, y6) = (l[0], l[1], l[2], l[3], l[4], l[5]);
        let admissible = ring.n(y1, y2, y5) > 0
            && ring.n(y5, y3, y4) > 0
            && ring.n(y2, y3, y6) > 0
            && ring.n(y1, y6, y4) > 0;
        if !admissible && (e.re != 0.0 || e.im != 0.0) {
            return Err(Error::FusionViolation(format!("F entry at {:?}", l)));
        }
    }
    Ok(())
}

/// Quantum dimension of a functor simple (Frobenius-Perron of the dual
/// ring), used by the matrix-unit normalizations.
pub fn functor_dim(world: &World, src: usize, dst: usize, x: usize) -> f64 {
    let f: &FunctorData = &world.cat(src, dst).simples[x];
    let tot: usize = world.modules[src]
        .simples
        .iter()
        .map(|s| world.apply(f, &s.rep).dim * s.rep.dim)
        .sum();
    let den: usize = world.modules[src].simples.iter().map(|s| s.rep.dim * s.rep.dim).sum();
    tot as f64 / den as f64
}

/// Per-family maximum coherence residuals of a builtin bundle.
pub fn residual_report(bundle: &CategoryBundle) -> Vec<(String, f64)> {
    let world = &bundle.world;
    let mut out = Vec::new();
    // pulling-through per functor category
    let mut keys: Vec<(usize, usize)> = world.cats.keys().copied().collect();
    keys.sort();
    for (s, d) in keys.iter().copied() {
        let om = omega_table(world, s, d);
        let flm = f_left_action_table(world, s);
        let fln = f_left_action_table(world, d);
        let mut worst = 0.0f64;
        for x in 0..world.cat(s, d).simples.len() {
            worst = worst.max(pulling_through_residual(world, s, d, x, &om, &flm, &fln));
        }
        out.push((
            format!(
                "pulling_through[{}->{}]",
                world.modules[s].name, world.modules[d].name
            ),
            worst,
        ));
    }
    // MPO fusion per composable triple
    let mut triples: Vec<(usize, usize, usize)> = world
        .thetas
        .keys()
        .map(|&(s, m, d, ..)| (s, m, d))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    triples.sort();
    for (s, m, d) in triples {
        let om1 = omega_table(world, m, d);
        let om2 = omega_table(world, s, m);
        let om3 = omega_table(world, s, d);
        let ff = f_comp_table(world, s, m, d);
        let mut worst = 0.0f64;
        for x1 in 0..world.cat(m, d).simples.len() {
            for x2 in 0..world.cat(s, m).simples.len() {
                worst = worst.max(mpo_fusion_residual(
                    world, s, m, d, x1, x2, &om1, &om2, &om3, &ff,
                ));
            }
        }
        out.push((
            format!(
                "mpo_fusion[{}->{}->{}]",
                world.modules[s].name, world.modules[m].name, world.modules[d].name
            ),
            worst,
        ));
    }
    out
}

/// Convenience: assert all residuals below the table tolerance.
pub fn assert_coherent(bundle: &CategoryBundle) -> Result<()> {
    for (name, r) in residual_report(bundle) {
        if r > TOL_TABLE {
            return Err(Error::ToleranceViolated {
                identity: name,
                residual: r,
            });
        }
    }
    Ok(())
}

pub use engine::{s3_cg, z2_cg};

/// Shorthand used across the operator layer.
pub fn dim_of(rep: &Rep) -> usize {
    rep.dim
}

pub fn group_of(bundle: &CategoryBundle) -> &'static FiniteGroup {
    bundle.world.group
}

#[allow(dead_code)]
fn unused_max_abs(m: &CMat) -> f64 {
    max_abs(m)
}
