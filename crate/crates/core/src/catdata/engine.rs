//! Concrete realization of the built-in module categories and module
//! functors.
//!
//! Everything downstream (symbol tables, Hamiltonians, tubes, duality
//! operators) is evaluated from the data in a [`World`]: explicit hom-space
//! bases stored as small complex matrices. A symbol-table entry is the
//! overlap of two composite intertwiners, so unitarity and the coherence
//! identities hold automatically up to float error; the only free choices
//! are basis seeds, which are pinned so that every symbol value printed for
//! these models in the literature is reproduced exactly.
//!
//! Module categories over `D = Rep(G)` are `Rep(H)` for subgroups `H ⊆ G`,
//! acted on by restriction. Simple module functors `Rep(H1) → Rep(H2)` are
//! classified by a double coset `H2 g H1` together with an irrep σ of the
//! stabilizer `S = H2 ∩ g H1 g⁻¹`; they are realized as explicit induced
//! kernels `V ↦ Ind_S^{H2}(σ ⊗ V∘Ad_{g⁻¹})`.

use crate::groups::{s3, s3_subgroup, z2, z2_subgroup, FiniteGroup, Subgroup};
use crate::linalg::{cone, cr, czero, dagger, eye, kron, max_diff, nullspace, CMat};
use crate::reps::{irreps_of, Irrep, Rep};
use num_complex::Complex64 as C64;
use std::collections::HashMap;

/// One simple object of a module category: a named irrep of the subgroup.
#[derive(Debug, Clone)]
pub struct MSimple {
    pub name: String,
    pub rep: Rep,
}

/// A module category `Rep(H)` over the world's `Rep(G)`, with its chosen
/// action hom bases `T^{m1 y m2} : V_{m1} ⊗ Res(Y_y) → V_{m2}`.
pub struct ModuleData {
    pub name: &'static str,
    pub sub: Subgroup,
    pub simples: Vec<MSimple>,
    /// (m1, y, m2) → coisometric hom basis
    pub thoms: HashMap<(usize, usize, usize), Vec<CMat>>,
}

impl ModuleData {
    pub fn simple_index(&self, name: &str) -> Option<usize> {
        self.simples.iter().position(|s| s.name == name)
    }

    pub fn thom(&self, m1: usize, y: usize, m2: usize) -> &[CMat] {
        self.thoms
            .get(&(m1, y, m2))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn action_mult(&self, m1: usize, y: usize, m2: usize) -> usize {
        self.thom(m1, y, m2).len()
    }

    /// The object `V_{m1} ⊗ Res(Y)` as an explicit rep of H.
    pub fn acted(&self, world: &World, m1: usize, y: usize) -> Rep {
        self.simples[m1]
            .rep
            .tensor(&world.dirreps[y].rep.restrict(&self.sub))
    }
}

/// A simple module functor realized as an induced kernel.
#[derive(Debug, Clone)]
pub struct FunctorData {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    /// double-coset representative (parent ids)
    pub g: usize,
    /// stabilizer S = H2 ∩ g H1 g⁻¹, as local ids of the destination group
    pub s_local: Vec<usize>,
    /// irrep of S (indexed by position in `s_local`)
    pub sigma: Rep,
    /// transversal of H2/S, local ids of the destination group, identity first
    pub transversal: Vec<usize>,
}

/// The functor category `Fun_D(M_src, M_dst)` with its hom data.
pub struct FunctorCat {
    pub src: usize,
    pub dst: usize,
    pub simples: Vec<FunctorData>,
    /// (x, m1, m2) → coisometric basis of Hom(F_x(V_{m1}), V_{m2})
    pub uhoms: HashMap<(usize, usize, usize), Vec<CMat>>,
}

impl FunctorCat {
    pub fn simple_index(&self, name: &str) -> Option<usize> {
        self.simples.iter().position(|s| s.name == name)
    }

    pub fn uhom(&self, x: usize, m1: usize, m2: usize) -> &[CMat] {
        self.uhoms
            .get(&(x, m1, m2))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

/// A natural transformation between module functors, one component per
/// simple object of the source module category.
pub type NatTrans = Vec<CMat>;

/// Key of a composition space: (src, mid, dst, x1, x2, x3) for splittings
/// `F_{x3} ⇒ F_{x1} ∘ F_{x2}` with x2 ∈ Fun(src→mid) applied first.
pub type ThetaKey = (usize, usize, usize, usize, usize, usize);

/// One of the two built-in worlds: the full concrete realization of the
/// input category, its module categories and the functor categories needed
/// by the model library.
pub struct World {
    pub name: &'static str,
    pub group: &'static FiniteGroup,
    pub dirreps: Vec<Irrep>,
    pub modules: Vec<ModuleData>,
    pub cats: HashMap<(usize, usize), FunctorCat>,
    pub thetas: HashMap<ThetaKey, Vec<NatTrans>>,
}

fn phase(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl World {
    pub fn module_index(&self, name: &str) -> Option<usize> {
        self.modules.iter().position(|m| m.name == name)
    }

    pub fn dlabel_index(&self, name: &str) -> Option<usize> {
        self.dirreps.iter().position(|d| d.name == name)
    }

    pub fn cat(&self, src: usize, dst: usize) -> &FunctorCat {
        self.cats
            .get(&(src, dst))
            .unwrap_or_else(|| panic!("functor category {}→{} not built", src, dst))
    }

    pub fn endo(&self, m: usize) -> &FunctorCat {
        self.cat(m, m)
    }

    pub fn theta(&self, key: ThetaKey) -> &[NatTrans] {
        self.thetas.get(&key).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Fusion multiplicity N^{x3}_{x1 x2} of the composite `F_{x1}∘F_{x2}`.
    pub fn comp_mult(&self, key: ThetaKey) -> usize {
        self.theta(key).len()
    }

    // ---- functor application -------------------------------------------

    /// Apply a functor to an explicit rep of its source subgroup.
    pub fn apply(&self, f: &FunctorData, v: &Rep) -> Rep {
        let host = self.modules[f.dst].sub.clone();
        let src = self.modules[f.src].sub.clone();
        let g = f.g;
        let gi = self.group.inverse(g);
        let nc = f.transversal.len();
        let ds = f.sigma.dim;
        let dim = nc * ds * v.dim;
        let mats: Vec<CMat> = (0..host.group.order)
            .map(|h| {
                let mut m = CMat::zeros(dim, dim);
                for (u, &tu) in f.transversal.iter().enumerate() {
                    let htu = host.group.prod(h, tu);
                    let (up, s_loc) = f
                        .transversal
                        .iter()
                        .enumerate()
                        .find_map(|(up, &tup)| {
                            let s = host.group.prod(host.group.inverse(tup), htu);
                            f.s_local.contains(&s).then_some((up, s))
                        })
                        .expect("coset decomposition");
                    let spar = host.parent_of(s_loc);
                    // fiber acts through Ad_{g^{-1}}: s ↦ g⁻¹ s g ∈ H1
                    let fib = self
                        .group
                        .prod(self.group.prod(gi, spar), g);
                    let floc = src.local_of(fib).expect("stabilizer conjugates into source");
                    let sidx = f.s_local.iter().position(|&x| x == s_loc).unwrap();
                    let block = kron(&f.sigma.mats[sidx], &v.mats[floc]);
                    let fd = ds * v.dim;
                    for i in 0..fd {
                        for j in 0..fd {
                            m[(up * fd + i, u * fd + j)] = block[(i, j)];
                        }
                    }
                }
                m
            })
            .collect();
        Rep { dim, mats }
    }

    /// Apply a functor to a morphism `φ : R1 → R2` of source reps.
    pub fn apply_mor(&self, f: &FunctorData, phi: &CMat) -> CMat {
        let pref = f.transversal.len() * f.sigma.dim;
        kron(&eye(pref), phi)
    }

    /// Structure map `ω_F^{V,Y} : F(V ⊗ Res Y) → F(V) ⊗ Res Y` as an
    /// explicit unitary; block-diagonal over the coset index.
    pub fn omega(&self, f: &FunctorData, v: &Rep, y: usize) -> CMat {
        let host = &self.modules[f.dst].sub;
        let yrep = &self.dirreps[y].rep;
        let dy = yrep.dim;
        let nc = f.transversal.len();
        let fd = f.sigma.dim * v.dim;
        let dim = nc * fd * dy;
        let mut m = CMat::zeros(dim, dim);
        for (u, &tu) in f.transversal.iter().enumerate() {
            let tg = self.group.prod(host.parent_of(tu), f.g);
            let rot = &yrep.mats[tg];
            // |u, w, v, y⟩ ↦ |u, w, v⟩ ⊗ ρ_Y(t_u g) y
            for wv in 0..fd {
                for yi in 0..dy {
                    for yo in 0..dy {
                        m[(u * fd * dy + wv * dy + yo, u * fd * dy + wv * dy + yi)] =
                            rot[(yo, yi)];
                    }
                }
            }
        }
        m
    }

    /// Decompose an explicit rep of the module's subgroup into simples,
    /// returning coisometries `R → V_m` grouped as (m, basis list).
    pub fn decompose(&self, module: usize, r: &Rep) -> Vec<(usize, Vec<CMat>)> {
        let md = &self.modules[module];
        let order = md.sub.group.order;
        md.simples
            .iter()
            .enumerate()
            .map(|(m, s)| {
                let basis = crate::reps::intertwiner_basis(r, &s.rep, order)
                    .into_iter()
                    .map(|t| t.scale((s.rep.dim as f64).sqrt()))
                    .collect();
                (m, basis)
            })
            .collect()
    }

    /// Evaluate a natural transformation (stored on simples) at an arbitrary
    /// object of the source module category, for the pair of functors
    /// `(p, q)` it connects (`nat : F_q ⇒ F_p∘...` etc. — callers supply the
    /// two functor images of the decomposition coisometries).
    pub fn nat_at(
        &self,
        module: usize,
        nat: &NatTrans,
        r: &Rep,
        dom_of: impl Fn(&CMat) -> CMat,
        cod_of: impl Fn(&CMat) -> CMat,
    ) -> CMat {
        let dec = self.decompose(module, r);
        let mut out: Option<CMat> = None;
        for (m, basis) in dec {
            for t in basis {
                let d = dom_of(&t);
                let c = cod_of(&t);
                let term = dagger(&c) * &nat[m] * d;
                out = Some(match out {
                    None => term,
                    Some(acc) => acc + term,
                });
            }
        }
        out.expect("nonempty decomposition")
    }
}

// ---- construction ------------------------------------------------------

struct WorldBuilder {
    name: &'static str,
    group: &'static FiniteGroup,
    dirreps: Vec<Irrep>,
}

impl WorldBuilder {
    fn dnames(&self) -> Vec<&str> {
        self.dirreps.iter().map(|d| d.name).collect()
    }

    fn build_module(&self, name: &'static str, sub: Subgroup) -> ModuleData {
        let simples: Vec<MSimple> = irreps_of(sub.group)
            .iter()
            .map(|ir| MSimple {
                name: module_simple_name(self.name, name, ir.name),
                rep: ir.rep.clone(),
            })
            .collect();
        let mut thoms = HashMap::new();
        for m1 in 0..simples.len() {
            for y in 0..self.dirreps.len() {
                let acted = simples[m1]
                    .rep
                    .tensor(&self.dirreps[y].rep.restrict(&sub));
                for m2 in 0..simples.len() {
                    let basis = seed_thom(self.name, name, m1, y, m2).unwrap_or_else(|| {
                        solve_homs(&acted, &simples[m2].rep, sub.group.order)
                    });
                    if !basis.is_empty() {
                        thoms.insert((m1, y, m2), basis);
                    }
                }
            }
        }
        ModuleData {
            name,
            sub,
            simples,
            thoms,
        }
    }
}

fn module_simple_name(world: &str, module: &str, irrep: &str) -> String {
    match (world, module) {
        // the regular Vect_Z2 module keeps the graded names
        ("vec_z2", "vect_z2") => match irrep {
            "0" => "1".into(),
            _ => "m".into(),
        },
        (_, "vect") => "1".into(),
        (_, "rep_z2") => format!("{irrep}_z2"),
        (_, "rep_z3") => format!("{irrep}_z3"),
        _ => irrep.into(),
    }
}

/// Solve a coisometric hom basis by the intertwiner solver.
fn solve_homs(a: &Rep, b: &Rep, order: usize) -> Vec<CMat> {
    crate::reps::intertwiner_basis(a, b, order)
        .into_iter()
        .map(|t| {
            // rescale so T T† = id on the (simple) target
            let n = (t.clone() * dagger(&t))[(0, 0)].re;
            t.scale(1.0 / n.sqrt())
        })
        .collect()
}

/// Seeded action hom bases. Seeds exist exactly where a printed symbol
/// value pins the gauge; everything else falls back to the solver.
fn seed_thom(world: &str, module: &str, m1: usize, y: usize, m2: usize) -> Option<Vec<CMat>> {
    let row = |entries: Vec<C64>| -> CMat {
        CMat::from_row_slice(1, entries.len(), &entries)
    };
    match (world, module) {
        ("vec_z2", _) => {
            // all hom spaces are one dimensional with trivial entries
            let target = m1 ^ y;
            if module == "vect" {
                Some(vec![row(vec![cone()])])
            } else if target == m2 {
                Some(vec![row(vec![cone()])])
            } else {
                Some(vec![])
            }
        }
        ("rep_s3", "vect") => {
            // Hom(C ⊗ Y, C): one basis covector per Y-space vector
            let dy = [1, 1, 2][y];
            Some(
                (0..dy)
                    .map(|j| {
                        let mut e = vec![czero(); dy];
                        e[j] = cone();
                        row(e)
                    })
                    .collect(),
            )
        }
        ("rep_s3", "rep_z2") => {
            let m1 = m1 as i32;
            let m2 = m2 as i32;
            match y {
                0 => Some(if m1 == m2 { vec![row(vec![cone()])] } else { vec![] }),
                1 => Some(if m2 == 1 - m1 { vec![row(vec![-cone()])] } else { vec![] }),
                2 => {
                    // T = (−1)^{m1}/√2 (⟨1| + (−1)^{m1+m2} ⟨2|)
                    let s = 1.0 / f64::sqrt(2.0);
                    let a = if m1 == 1 { -s } else { s };
                    let b = a * if (m1 + m2) % 2 == 1 { -1.0 } else { 1.0 };
                    Some(vec![row(vec![cr(a), cr(b)])])
                }
                _ => None,
            }
        }
        ("rep_s3", "rep_z3") => {
            match y {
                0 => Some(if m1 == m2 { vec![row(vec![cone()])] } else { vec![] }),
                1 => Some(if m1 == m2 {
                    // sign pinned by the printed module associator block
                    let s = seed_z3_one(m1);
                    vec![row(vec![cr(s)])]
                } else {
                    vec![]
                }),
                2 => {
                    // Res 2 = 1_z3 ⊕ 1*_z3 on the standard basis
                    if (m1 + 1) % 3 == m2 {
                        Some(vec![row(vec![cr(seed_z3_two(m1, 0)), czero()])])
                    } else if (m1 + 2) % 3 == m2 {
                        Some(vec![row(vec![czero(), cr(seed_z3_two(m1, 1))])])
                    } else {
                        Some(vec![])
                    }
                }
                _ => None,
            }
        }
        ("rep_s3", "rep_s3") => Some(s3_cg(m1, y, m2)),
        _ => None,
    }
}

fn seed_z3_one(m: usize) -> f64 {
    // pinned by the printed clock-model associator sub-table
    if m == 1 {
        -1.0
    } else {
        1.0
    }
}

fn seed_z3_two(_m: usize, _branch: usize) -> f64 {
    1.0
}

/// The S3 Clebsch-Gordan intertwiners `W ⊗ V → U` in the printed gauge.
pub fn s3_cg(w: usize, v: usize, u: usize) -> Vec<CMat> {
    let dims = [1usize, 1, 2];
    let (dw, dv, du) = (dims[w], dims[v], dims[u]);
    let mut m = CMat::zeros(du, dw * dv);
    let mut set = |uu: usize, ww: usize, vv: usize, val: f64| {
        m[(uu, ww * dv + vv)] = cr(val);
    };
    let s = 1.0 / f64::sqrt(2.0);
    match (w, v, u) {
        (0, 0, 0) | (0, 1, 1) | (1, 0, 1) => set(0, 0, 0, 1.0),
        (1, 1, 0) => set(0, 0, 0, -1.0),
        (2, 0, 2) => {
            set(0, 0, 0, 1.0);
            set(1, 1, 0, 1.0);
        }
        (0, 2, 2) => {
            set(0, 0, 0, 1.0);
            set(1, 0, 1, 1.0);
        }
        (1, 2, 2) => {
            set(0, 0, 0, 1.0);
            set(1, 0, 1, -1.0);
        }
        (2, 1, 2) => {
            set(1, 1, 0, 1.0);
            set(0, 0, 0, -1.0);
        }
        (2, 2, 0) => {
            set(0, 0, 1, s);
            set(0, 1, 0, s);
        }
        (2, 2, 1) => {
            set(0, 0, 1, -s);
            set(0, 1, 0, s);
        }
        (2, 2, 2) => {
            set(1, 0, 0, 1.0);
            set(0, 1, 1, 1.0);
        }
        _ => return vec![],
    }
    vec![m]
}

/// Representative preference inside a double coset: powers of s first.
fn coset_rep_order(group: &FiniteGroup) -> Vec<usize> {
    if group.order == 6 {
        let idx = |n: &str| group.elem_index(n).unwrap();
        vec![idx("1"), idx("s"), idx("s2"), idx("r"), idx("rs"), idx("rs2")]
    } else {
        (0..group.order).collect()
    }
}

fn build_cat(world: &World, src: usize, dst: usize) -> FunctorCat {
    let g = world.group;
    let h1 = &world.modules[src].sub;
    let h2 = &world.modules[dst].sub;
    // double cosets H2 g H1
    let mut taken = vec![false; g.order];
    let mut simples = Vec::new();
    for &rep in &coset_rep_order(g) {
        if taken[rep] {
            continue;
        }
        for &a in &h2.embed {
            for &b in &h1.embed {
                taken[g.prod(g.prod(a, rep), b)] = true;
            }
        }
        // stabilizer S = H2 ∩ rep·H1·rep⁻¹, as dst-local ids
        let s_local: Vec<usize> = (0..h2.group.order)
            .filter(|&sl| {
                let sp = h2.parent_of(sl);
                let conj = g.prod(g.prod(g.inverse(rep), sp), rep);
                h1.local_of(conj).is_some()
            })
            .collect();
        // irreps of S: S is one of the builtin groups (trivial or full H2)
        let sigmas: Vec<Rep> = if s_local.len() == h2.group.order {
            irreps_of(h2.group).iter().map(|i| i.rep.clone()).collect()
        } else if s_local.len() == 1 {
            vec![Rep {
                dim: 1,
                mats: vec![eye(1)],
            }]
        } else {
            // Z2 inside S3-regular-ish cases do not occur for the built-ins
            unimplemented!("stabilizer of intermediate size")
        };
        // transversal of H2/S, identity first
        let mut transversal = vec![0usize];
        let mut covered: Vec<usize> = s_local.clone();
        for t in 1..h2.group.order {
            if !covered.contains(&t) {
                transversal.push(t);
                for &sl in &s_local {
                    covered.push(h2.group.prod(t, sl));
                }
            }
        }
        for (si, sigma) in sigmas.into_iter().enumerate() {
            simples.push(FunctorData {
                name: format!("g{}s{}", g.elem_names[rep], si),
                src,
                dst,
                g: rep,
                s_local: s_local.clone(),
                sigma,
                transversal: transversal.clone(),
            });
        }
    }
    name_functors(world, src, dst, &mut simples);
    let mut uhoms = HashMap::new();
    for (x, f) in simples.iter().enumerate() {
        for m1 in 0..world.modules[src].simples.len() {
            let img = world.apply(f, &world.modules[src].simples[m1].rep.clone());
            for m2 in 0..world.modules[dst].simples.len() {
                let basis = seed_uhom(world, f, m1, m2).unwrap_or_else(|| {
                    solve_homs(
                        &img,
                        &world.modules[dst].simples[m2].rep,
                        world.modules[dst].sub.group.order,
                    )
                });
                if !basis.is_empty() {
                    uhoms.insert((x, m1, m2), basis);
                }
            }
        }
    }
    FunctorCat {
        src,
        dst,
        simples,
        uhoms,
    }
}

/// Human-facing names of the functor simples per category.
fn name_functors(world: &World, src: usize, dst: usize, simples: &mut [FunctorData]) {
    let g = world.group;
    let src_name = world.modules[src].name;
    let dst_name = world.modules[dst].name;
    for f in simples.iter_mut() {
        let reflection = g.order == 6 && f.g >= g.elem_index("r").unwrap() && f.g <= g.elem_index("rs2").unwrap();
        f.name = match (src_name, dst_name) {
            // group-like duals: label by group element
            ("vect", "vect") => g.elem_names[f.g].to_string(),
            // regular modules: label by the D-irrep σ
            (a, b) if a == b && world.modules[src].sub.group.order == g.order => {
                world.dirreps[sigma_irrep_index(g, &f.sigma)].name.to_string()
            }
            ("rep_z2", "rep_z2") => {
                if f.s_local.len() == 1 {
                    "2".into()
                } else if f.sigma.mats[1][(0, 0)].re > 0.0 {
                    "0".into()
                } else {
                    "1".into()
                }
            }
            ("rep_z3", "rep_z3") => {
                // (ε, χ) ↦ group element of Ẑ3 ⋊ Z2 ≅ S3
                let chi = sigma_char_z3(&f.sigma);
                let name = match (reflection, chi) {
                    (false, 0) => "1",
                    (false, 1) => "s",
                    (false, 2) => "s2",
                    (true, 0) => "r",
                    (true, 1) => "rs2",
                    (true, 2) => "rs",
                    _ => unreachable!(),
                };
                name.to_string()
            }
            ("rep_z2", "vect") => match g.elem_names[f.g] {
                "1" => "0_z3".into(),
                "s" => "1_z3".into(),
                _ => "1*_z3".into(),
            },
            ("vect", "rep_z2") => match g.elem_names[f.g] {
                "1" => "0_z3'".into(),
                "s" => "1_z3'".into(),
                _ => "1*_z3'".into(),
            },
            ("vect_z2", "vect") => "kw".into(),
            ("vect", "vect_z2") => "kw'".into(),
            _ => f.name.clone(),
        };
    }
}

fn sigma_irrep_index(g: &'static FiniteGroup, sigma: &Rep) -> usize {
    irreps_of(g)
        .iter()
        .position(|ir| {
            ir.rep.dim == sigma.dim
                && (0..g.order).all(|e| max_diff(&ir.rep.mats[e], &sigma.mats[e]) < 1e-9)
        })
        .expect("σ matches a builtin irrep")
}

fn sigma_char_z3(sigma: &Rep) -> usize {
    // χ(s) ∈ {1, ω, ω̄} → {0, 1, 2}
    let v = sigma.mats[1][(0, 0)];
    if (v - cone()).norm() < 1e-9 {
        0
    } else if v.im > 0.0 {
        1
    } else {
        2
    }
}

/// Seeded functor hom bases (calibrated against printed symbol tables);
/// `None` falls back to the solver.
fn seed_uhom(world: &World, f: &FunctorData, m1: usize, m2: usize) -> Option<Vec<CMat>> {
    let row = |entries: Vec<C64>| -> CMat { CMat::from_row_slice(1, entries.len(), &entries) };
    let src_name = world.modules[f.src].name;
    let dst_name = world.modules[f.dst].name;
    match (world.name, src_name, dst_name) {
        ("rep_s3", "rep_z2", "rep_z2") => {
            if f.s_local.len() == 2 {
                // invertible functors σ ⊗ −
                let sgn = f.sigma.mats[1][(0, 0)].re;
                let shift = if sgn > 0.0 { 0 } else { 1 };
                if (m1 + shift) % 2 == m2 {
                    Some(vec![row(vec![cone()])])
                } else {
                    Some(vec![])
                }
            } else {
                // the two-dimensional functor: F(V) = C[Z2] ⊗ V with inert
                // fiber, so the m2-isotypic row depends on m2 alone; the
                // phase makes the printed bimodule associator block real
                let ph = seed_rep_z2_two(m1, m2);
                let s = 1.0 / f64::sqrt(2.0);
                let b = if m2 % 2 == 1 { -s } else { s };
                Some(vec![row(vec![ph * cr(s), ph * cr(b)])])
            }
        }
        ("rep_s3", "rep_z2", "vect") => {
            // F(V) = V as a vector space; phases trivial (validated against
            // the printed duality MPO entries)
            Some(vec![row(vec![cone()])])
        }
        (_, a, b) if a == b && world.modules[f.src].sub.group.order == world.group.order => {
            // regular module: F_σ(V) = σ ⊗ V and the hom basis is the
            // Clebsch-Gordan map, aligning the boundary fusion gauge with
            // the composition data
            let x = sigma_irrep_index(world.group, &f.sigma);
            let cg = if world.group.order == 2 {
                z2_cg(x, m1, m2)
            } else {
                s3_cg(x, m1, m2)
            };
            Some(cg)
        }
        _ => None,
    }
}

fn seed_rep_z2_two(m1: usize, m2: usize) -> C64 {
    // (−i)^{m1+m2}, calibrated against the printed bimodule associator block
    match (m1 + m2) % 4 {
        0 => phase(1.0, 0.0),
        1 => phase(0.0, -1.0),
        2 => phase(-1.0, 0.0),
        _ => phase(0.0, 1.0),
    }
}

// ---- composition data ---------------------------------------------------

/// Solve the space of module natural transformations `F_p ⇒ F_q` between
/// functors with common src/dst, returning isometric components.
pub fn nat_basis(world: &World, p: &FunctorData, q: &FunctorData) -> Vec<NatTrans> {
    let msrc = &world.modules[p.src];
    let dstg = world.modules[p.dst].sub.group;
    let simples = &msrc.simples;
    let pimg: Vec<Rep> = simples.iter().map(|s| world.apply(p, &s.rep)).collect();
    let qimg: Vec<Rep> = simples.iter().map(|s| world.apply(q, &s.rep)).collect();
    // unknowns: η_m (dim Q(m) × dim P(m)), vectorized column-major, stacked
    let sizes: Vec<(usize, usize)> = (0..simples.len())
        .map(|m| (qimg[m].dim, pimg[m].dim))
        .collect();
    let offs: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, (r, c)| {
            let o = *acc;
            *acc += r * c;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().map(|(r, c)| r * c).sum();
    let mut rows: Vec<Vec<C64>> = Vec::new();
    // equivariance per simple and group element
    for m in 0..simples.len() {
        let (dq, dp) = sizes[m];
        for e in 0..dstg.order {
            let a = &pimg[m].mats[e];
            let b = &qimg[m].mats[e];
            // η a(e) − b(e) η = 0 → (a^T ⊗ I − I ⊗ b) vec(η)
            let lhs = kron(&a.transpose(), &eye(dq)) - kron(&eye(dp), b);
            for i in 0..dp * dq {
                let mut r = vec![czero(); total];
                for j in 0..dp * dq {
                    r[offs[m] + j] = lhs[(i, j)];
                }
                rows.push(r);
            }
        }
    }
    // module compatibility per (m, y):
    //   ω_q ∘ η_{m◁y} = (η_m ⊗ id_Y) ∘ ω_p
    // with η on the composite expanded through the decomposition coisometries
    for m in 0..simples.len() {
        for y in 0..world.dirreps.len() {
            let acted = msrc.acted(world, m, y);
            let dy = world.dirreps[y].rep.dim;
            let wp = world.omega(p, &simples[m].rep, y);
            let wq = world.omega(q, &simples[m].rep, y);
            let pa = world.apply(p, &acted);
            let qa = world.apply(q, &acted);
            let rows_dim = qa.dim * dy.pow(0); // target dim of both routes
            let _ = rows_dim;
            // route1 = wq ∘ [Σ Q(T)† η_{m'} P(T)]   (linear in η)
            // route2 = (η_m ⊗ id) ∘ wp              (linear in η)
            // coefficient extraction per unknown entry
            let out_rows = qa.dim; // after wq: dim Q(m)⊗Y = dim Q(m◁y)
            let in_cols = pa.dim;
            let mut coeff: Vec<Vec<C64>> = vec![vec![czero(); total]; out_rows * in_cols];
            for m2 in 0..simples.len() {
                for t in msrc.thom(m, y, m2) {
                    let pt = world.apply_mor(p, t);
                    let qt = world.apply_mor(q, t);
                    let (dq2, dp2) = sizes[m2];
                    // wq · Q(T)† · η_{m2} · P(T): entry (r,c) gets
                    // Σ wq[r,a] Qt†[a,i] η[i,j] Pt[j,c]
                    let left = &wq * dagger(&qt);
                    for i in 0..dq2 {
                        for j in 0..dp2 {
                            let unk = offs[m2] + j * dq2 + i;
                            for rr in 0..out_rows {
                                let lv = left[(rr, i)];
                                if lv.norm() < 1e-14 {
                                    continue;
                                }
                                for cc in 0..in_cols {
                                    coeff[rr * in_cols + cc][unk] += lv * pt[(j, cc)];
                                }
                            }
                        }
                    }
                }
            }
            // subtract route2: (η_m ⊗ id_dy) ∘ wp
            let (dqm, dpm) = sizes[m];
            for i in 0..dqm {
                for j in 0..dpm {
                    let unk = offs[m] + j * dqm + i;
                    for yy in 0..dy {
                        let rr = i * dy + yy;
                        for cc in 0..in_cols {
                            coeff[rr * in_cols + cc][unk] -= wp[(j * dy + yy, cc)];
                        }
                    }
                }
            }
            rows.extend(coeff);
        }
    }
    let nrows = rows.len();
    let mut cm = CMat::zeros(nrows, total);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            cm[(i, j)] = *v;
        }
    }
    let ns = nullspace(&cm, total, 1e-9);
    ns.into_iter()
        .map(|v| {
            let mut comps: NatTrans = Vec::new();
            for m in 0..simples.len() {
                let (dq, dp) = sizes[m];
                let mut h = CMat::zeros(dq, dp);
                for j in 0..dp {
                    for i in 0..dq {
                        h[(i, j)] = v[offs[m] + j * dq + i];
                    }
                }
                comps.push(h);
            }
            // Schur-normalize: η†η = id on the (simple) domain
            let m0 = (0..comps.len())
                .find(|&m| comps[m].ncols() > 0 && crate::linalg::max_abs(&comps[m]) > 1e-9)
                .expect("nonzero nat transf");
            let gram = dagger(&comps[m0]) * &comps[m0];
            let lam = (0..gram.nrows()).map(|i| gram[(i, i)].re).sum::<f64>() / gram.nrows() as f64;
            let s = 1.0 / lam.sqrt();
            for c in comps.iter_mut() {
                *c = c.scale(s);
            }
            comps
        })
        .collect()
}

/// Build the splitting data `F_{x3} ⇒ F_{x1}∘F_{x2}` for a triple of
/// functor categories. Closed CG form on regular modules, solver elsewhere;
/// unit legs are pinned to identity components.
fn build_theta(world: &World, src: usize, mid: usize, dst: usize) -> HashMap<ThetaKey, Vec<NatTrans>> {
    let c12 = world.cat(mid, dst); // x1 : mid → dst
    let c2 = world.cat(src, mid); // x2 : src → mid
    let c3 = world.cat(src, dst);
    let mut out = HashMap::new();
    for (x1, f1) in c12.simples.iter().enumerate() {
        for (x2, f2) in c2.simples.iter().enumerate() {
            // the composite functor, realized through explicit components
            let comp = CompositeFunctor { f1, f2 };
            for (x3, f3) in c3.simples.iter().enumerate() {
                let key = (src, mid, dst, x1, x2, x3);
                // unit shortcuts keep the unit gauge exactly trivial
                if src == mid && is_unit(world, c2, x2) {
                    if x1 == x3 {
                        out.insert(key, vec![identity_nat(world, f3)]);
                    }
                    continue;
                }
                if mid == dst && is_unit(world, c12, x1) {
                    if x2 == x3 {
                        out.insert(key, vec![identity_nat(world, f3)]);
                    }
                    continue;
                }
                let mut basis = theta_closed_form(world, f1, f2, f3)
                    .unwrap_or_else(|| nat_basis_composite(world, &comp, f3));
                let sign = theta_seed_sign(world, src, mid, dst, x1, x2, x3);
                if sign != 1.0 {
                    for nat in basis.iter_mut() {
                        for c in nat.iter_mut() {
                            *c = c.scale(sign);
                        }
                    }
                }
                if !basis.is_empty() {
                    out.insert(key, basis);
                }
            }
        }
    }
    out
}

/// Gauge seeds aligning solver-produced composition bases with the
/// Clebsch-Gordan gauge of the regular module, so one set of closed-form
/// sector data serves every representation-type dual.
fn theta_seed_sign(
    world: &World,
    src: usize,
    mid: usize,
    dst: usize,
    x1: usize,
    x2: usize,
    x3: usize,
) -> f64 {
    if world.name == "rep_s3"
        && src == mid
        && mid == dst
        && world.modules[src].name == "rep_z2"
        && ((x1, x2, x3) == (1, 1, 0) || (x1, x2, x3) == (1, 2, 2))
    {
        return -1.0;
    }
    1.0
}

fn is_unit(world: &World, cat: &FunctorCat, x: usize) -> bool {
    let f = &cat.simples[x];
    cat.src == cat.dst
        && f.g == 0
        && f.s_local.len() == world.modules[cat.dst].sub.group.order
        && f.sigma.dim == 1
        && f.sigma.mats.iter().all(|m| (m[(0, 0)] - cone()).norm() < 1e-12)
}

fn identity_nat(world: &World, f3: &FunctorData) -> NatTrans {
    world.modules[f3.src]
        .simples
        .iter()
        .map(|s| eye(world.apply(f3, &s.rep).dim))
        .collect()
}

/// On regular modules (H = G) the functors are `σ ⊗ −` and the splitting is
/// the Clebsch-Gordan coisometry, giving the CG gauge exactly.
fn theta_closed_form(
    world: &World,
    f1: &FunctorData,
    f2: &FunctorData,
    f3: &FunctorData,
) -> Option<Vec<NatTrans>> {
    let regular = |f: &FunctorData| {
        f.src == f.dst
            && world.modules[f.src].sub.group.order == world.group.order
            && f.g == 0
    };
    if !(regular(f1) && regular(f2) && regular(f3)) {
        return None;
    }
    let gidx = |f: &FunctorData| sigma_irrep_index(world.group, &f.sigma);
    let (a, b, c) = (gidx(f1), gidx(f2), gidx(f3));
    let cg = if world.group.order == 2 {
        z2_cg(a, b, c)
    } else {
        s3_cg(a, b, c)
    };
    if cg.is_empty() {
        return Some(vec![]);
    }
    // F1(F2(V)) = σ1 ⊗ σ2 ⊗ V, F3(V) = σ3 ⊗ V: split with C† ⊗ id
    Some(
        cg.into_iter()
            .map(|cmap| {
                world.modules[f3.src]
                    .simples
                    .iter()
                    .map(|s| kron(&dagger(&cmap), &eye(s.rep.dim)))
                    .collect()
            })
            .collect(),
    )
}

/// All-plus CG intertwiners of Z2 (group-like fusion).
pub fn z2_cg(w: usize, v: usize, u: usize) -> Vec<CMat> {
    if (w + v) % 2 == u {
        vec![eye(1)]
    } else {
        vec![]
    }
}

/// A composite functor presented by its two factors (x2 applied first).
pub struct CompositeFunctor<'a> {
    pub f1: &'a FunctorData,
    pub f2: &'a FunctorData,
}

/// Solve Nat(F_{x3}, F_{x1}∘F_{x2}) directly.
fn nat_basis_composite(world: &World, comp: &CompositeFunctor, f3: &FunctorData) -> Vec<NatTrans> {
    let msrc = &world.modules[f3.src];
    let dstg = world.modules[f3.dst].sub.group;
    let simples = &msrc.simples;
    let pimg: Vec<Rep> = simples
        .iter()
        .map(|s| world.apply(f3, &s.rep))
        .collect();
    let qimg: Vec<Rep> = simples
        .iter()
        .map(|s| world.apply(comp.f1, &world.apply(comp.f2, &s.rep)))
        .collect();
    let sizes: Vec<(usize, usize)> = (0..simples.len())
        .map(|m| (qimg[m].dim, pimg[m].dim))
        .collect();
    let offs: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, (r, c)| {
            let o = *acc;
            *acc += r * c;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().map(|(r, c)| r * c).sum();
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for m in 0..simples.len() {
        let (dq, dp) = sizes[m];
        for e in 0..dstg.order {
            let a = &pimg[m].mats[e];
            let b = &qimg[m].mats[e];
            let lhs = kron(&a.transpose(), &eye(dq)) - kron(&eye(dp), b);
            for i in 0..dp * dq {
                let mut r = vec![czero(); total];
                for j in 0..dp * dq {
                    r[offs[m] + j] = lhs[(i, j)];
                }
                rows.push(r);
            }
        }
    }
    for m in 0..simples.len() {
        for y in 0..world.dirreps.len() {
            let dy = world.dirreps[y].rep.dim;
            let acted = msrc.acted(world, m, y);
            let wp = world.omega(f3, &simples[m].rep, y);
            // composite structure map: F1(ω2) then ω1 at F2(V)
            let f2v = world.apply(comp.f2, &simples[m].rep);
            let w2 = world.omega(comp.f2, &simples[m].rep, y);
            let wq = world.omega(comp.f1, &f2v, y) * world.apply_mor(comp.f1, &w2);
            let pa = world.apply(f3, &acted);
            let qa_dim = wq.nrows();
            let out_rows = qa_dim;
            let in_cols = pa.dim;
            let mut coeff: Vec<Vec<C64>> = vec![vec![czero(); total]; out_rows * in_cols];
            for m2 in 0..simples.len() {
                for t in msrc.thom(m, y, m2) {
                    let pt = world.apply_mor(f3, t);
                    let qt = world.apply_mor(comp.f1, &world.apply_mor(comp.f2, t));
                    let (dq2, dp2) = sizes[m2];
                    let left = &wq * dagger(&qt);
                    for i in 0..dq2 {
                        for j in 0..dp2 {
                            let unk = offs[m2] + j * dq2 + i;
                            for rr in 0..out_rows {
                                let lv = left[(rr, i)];
                                if lv.norm() < 1e-14 {
                                    continue;
                                }
                                for cc in 0..in_cols {
                                    coeff[rr * in_cols + cc][unk] += lv * pt[(j, cc)];
                                }
                            }
                        }
                    }
                }
            }
            let (dqm, dpm) = sizes[m];
            for i in 0..dqm {
                for j in 0..dpm {
                    let unk = offs[m] + j * dqm + i;
                    for yy in 0..dy {
                        let rr = i * dy + yy;
                        for cc in 0..in_cols {
                            coeff[rr * in_cols + cc][unk] -= wp[(j * dy + yy, cc)];
                        }
                    }
                }
            }
            rows.extend(coeff);
        }
    }
    let nrows = rows.len();
    let mut cm = CMat::zeros(nrows, total);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            cm[(i, j)] = *v;
        }
    }
    let ns = nullspace(&cm, total, 1e-9);
    ns.into_iter()
        .map(|v| {
            let mut comps: NatTrans = Vec::new();
            for m in 0..simples.len() {
                let (dq, dp) = sizes[m];
                let mut h = CMat::zeros(dq, dp);
                for j in 0..dp {
                    for i in 0..dq {
                        h[(i, j)] = v[offs[m] + j * dq + i];
                    }
                }
                comps.push(h);
            }
            let m0 = (0..comps.len())
                .find(|&m| crate::linalg::max_abs(&comps[m]) > 1e-9)
                .expect("nonzero nat transf");
            let gram = dagger(&comps[m0]) * &comps[m0];
            let lam = (0..gram.nrows()).map(|i| gram[(i, i)].re).sum::<f64>() / gram.nrows() as f64;
            let s = 1.0 / lam.sqrt();
            for c in comps.iter_mut() {
                *c = c.scale(s);
            }
            comps
        })
        .collect()
}

// ---- world factory ------------------------------------------------------

/// Build a built-in world: `"vec_z2"` (Ising family over Z2) or `"rep_s3"`.
pub fn build_world(name: &str) -> Option<World> {
    let (builder, module_specs, pairs): (WorldBuilder, Vec<(&str, Subgroup)>, Vec<(usize, usize)>) =
        match name {
            "vec_z2" => {
                let b = WorldBuilder {
                    name: "vec_z2",
                    group: z2(),
                    dirreps: irreps_of(z2())
                        .iter()
                        .map(|i| Irrep {
                            name: if i.name == "0" { "1" } else { "m" },
                            rep: i.rep.clone(),
                        })
                        .collect(),
                };
                let m = vec![
                    ("vect_z2", z2_subgroup("z2").unwrap()),
                    ("vect", z2_subgroup("1").unwrap()),
                ];
                (b, m, vec![(0, 1), (1, 0)])
            }
            "rep_s3" => {
                let b = WorldBuilder {
                    name: "rep_s3",
                    group: s3(),
                    dirreps: irreps_of(s3()).to_vec(),
                };
                let m = vec![
                    ("vect", s3_subgroup("1").unwrap()),
                    ("rep_z2", s3_subgroup("z2").unwrap()),
                    ("rep_z3", s3_subgroup("z3").unwrap()),
                    ("rep_s3", s3_subgroup("s3").unwrap()),
                ];
                (b, m, vec![(1, 0), (0, 1)])
            }
            _ => return None,
        };
    let _ = builder.dnames();
    let modules: Vec<ModuleData> = module_specs
        .into_iter()
        .map(|(n, sub)| builder.build_module(n, sub))
        .collect();
    let mut world = World {
        name: builder.name,
        group: builder.group,
        dirreps: builder.dirreps,
        modules,
        cats: HashMap::new(),
        thetas: HashMap::new(),
    };
    // endo categories for every module, plus the duality pair
    let nm = world.modules.len();
    let mut wanted: Vec<(usize, usize)> = (0..nm).map(|i| (i, i)).collect();
    wanted.extend(pairs);
    for (s, d) in wanted {
        let cat = build_cat(&world, s, d);
        world.cats.insert((s, d), cat);
    }
    // composition data: all triples whose three legs were built
    let keys: Vec<(usize, usize)> = world.cats.keys().copied().collect();
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for &(s, m) in &keys {
        for &(m2, d) in &keys {
            if m == m2 && keys.contains(&(s, d)) {
                triples.push((s, m, d));
            }
        }
    }
    triples.sort();
    triples.dedup();
    for (s, m, d) in triples {
        let th = build_theta(&world, s, m, d);
        world.thetas.extend(th);
    }
    Some(world)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::coisometry_defect;

    #[test]
    fn s3_cg_tables_are_equivariant_coisometries() {
        let g = s3();
        let reps = irreps_of(g);
        for w in 0..3 {
            for v in 0..3 {
                for u in 0..3 {
                    for c in s3_cg(w, v, u) {
                        assert!(coisometry_defect(&c) < 1e-12);
                        let wv = reps[w].rep.tensor(&reps[v].rep);
                        for e in 0..6 {
                            let lhs = &c * &wv.mats[e];
                            let rhs = &reps[u].rep.mats[e] * &c;
                            assert!(max_diff(&lhs, &rhs) < 1e-12, "({w}{v}{u}) elem {e}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn worlds_build_with_expected_functor_counts() {
        let w = build_world("vec_z2").unwrap();
        assert_eq!(w.endo(0).simples.len(), 2);
        assert_eq!(w.endo(1).simples.len(), 2);
        assert_eq!(w.cat(0, 1).simples.len(), 1);
        let w = build_world("rep_s3").unwrap();
        assert_eq!(w.endo(0).simples.len(), 6); // Vect_S3
        assert_eq!(w.endo(1).simples.len(), 3); // ≅ Rep(S3)
        assert_eq!(w.endo(2).simples.len(), 6); // ≅ Vect_S3
        assert_eq!(w.endo(3).simples.len(), 3); // ≅ Rep(S3)
        assert_eq!(w.cat(1, 0).simples.len(), 3); // ≅ Rep(Z3)
    }
}
