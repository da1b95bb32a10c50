//! Symmetric local operators and the built-in model library.
//!
//! A local term exchanges a string labeled by an input-category simple
//! between the two edges of a window. Bulk windows sit on vertices
//! `2..L`; the boundary window spans the glued pair of vertices around the
//! boundary strand, through which the exchanged string is threaded by the
//! functor structure map. Matrix elements are contractions of the stored
//! hom bases, so every assembled Hamiltonian commutes with the
//! boundary-preserving tubes by construction.

use crate::catdata::engine::World;
use crate::linalg::{cr, dagger, eye, kron, CMat};
use crate::sparse::SparseOperator;
use crate::statespace::{bundle, enumerate, BasisState, BoundaryObject, ChainConfig, StateSpace};
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::collections::HashMap;

/// Weight multiplying a term's kernel element, as a function of the
/// window's edge labels.
#[derive(Debug, Clone)]
pub enum TermWeight {
    One,
    /// ±1 depending on the right edge label of the window
    RightEdgeSign { negative: usize },
}

impl TermWeight {
    fn eval(&self, _left: usize, right: usize) -> f64 {
        match self {
            TermWeight::One => 1.0,
            TermWeight::RightEdgeSign { negative } => {
                if right == *negative {
                    -1.0
                } else {
                    1.0
                }
            }
        }
    }
}

/// One species of symmetric local term.
#[derive(Debug, Clone)]
pub struct LocalTermSpec {
    pub name: String,
    /// simple object of the input category exchanged between the edges
    pub coupling: usize,
    pub weight: TermWeight,
}

/// A built-in model: module category, kinematic constraint and terms with
/// their coupling-constant names.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub name: &'static str,
    pub world: &'static str,
    pub module: &'static str,
    pub terms: Vec<(String, LocalTermSpec)>,
    pub default_couplings: HashMap<String, f64>,
    pub default_boundary: &'static str,
}

/// Edge labels a model allows on its input-category strands.
pub fn default_allowed_d(world: &World, module: usize) -> Vec<usize> {
    match (world.name, world.modules[module].name) {
        ("vec_z2", _) => vec![0, 1],
        ("rep_s3", _) => vec![2],
        _ => (0..world.dirreps.len()).collect(),
    }
}

/// The model library.
pub fn builtin_model(name: &str) -> Result<ModelSpec> {
    let mut couplings = HashMap::new();
    match name {
        "ising" | "kw" => {
            couplings.insert("J".into(), 1.0);
            couplings.insert("g".into(), 1.0);
            Ok(ModelSpec {
                name: if name == "ising" { "ising" } else { "kw" },
                world: "vec_z2",
                module: if name == "ising" { "vect_z2" } else { "vect" },
                terms: vec![
                    (
                        "-J".into(),
                        LocalTermSpec {
                            name: "flip".into(),
                            coupling: 1,
                            weight: TermWeight::One,
                        },
                    ),
                    (
                        "-Jg".into(),
                        LocalTermSpec {
                            name: "edge_sign".into(),
                            coupling: 0,
                            weight: TermWeight::RightEdgeSign { negative: 1 },
                        },
                    ),
                ],
                default_couplings: couplings,
                default_boundary: "1",
            })
        }
        "xxz" | "rep_z2" | "rep_z3" | "rep_s3" => {
            couplings.insert("J2".into(), 1.0);
            couplings.insert("J1".into(), 1.0);
            let (module, bc): (&'static str, &'static str) = match name {
                "xxz" => ("vect", "1"),
                "rep_z2" => ("rep_z2", "0"),
                "rep_z3" => ("rep_z3", "1"),
                _ => ("rep_s3", "0"),
            };
            Ok(ModelSpec {
                name: match name {
                    "xxz" => "xxz",
                    "rep_z2" => "rep_z2",
                    "rep_z3" => "rep_z3",
                    _ => "rep_s3",
                },
                world: "rep_s3",
                module,
                terms: vec![
                    (
                        "J2".into(),
                        LocalTermSpec {
                            name: "b2".into(),
                            coupling: 2,
                            weight: TermWeight::One,
                        },
                    ),
                    (
                        "-J1".into(),
                        LocalTermSpec {
                            name: "b1".into(),
                            coupling: 1,
                            weight: TermWeight::One,
                        },
                    ),
                ],
                default_couplings: couplings,
                default_boundary: bc,
            })
        }
        _ => Err(Error::UnknownBuiltin(name.into())),
    }
}

/// Resolve a coupling-prefactor expression like "-Jg" against values.
fn prefactor(expr: &str, couplings: &HashMap<String, f64>) -> f64 {
    let (sign, body) = match expr.strip_prefix('-') {
        Some(b) => (-1.0, b),
        None => (1.0, expr),
    };
    match body {
        "J" => sign * couplings["J"],
        "Jg" => sign * couplings["J"] * couplings["g"],
        "J2" => sign * couplings["J2"],
        "J1" => sign * couplings["J1"],
        _ => panic!("unknown coupling expression {expr}"),
    }
}

/// The string-exchange kernel `Ỹ_- ⊗ Ỹ_+ → Y_- ⊗ Y_+` through coupling Y.
fn exchange_kernel(
    world: &World,
    ym_out: usize,
    yp_out: usize,
    ym_in: usize,
    yp_in: usize,
    coupling: usize,
) -> Option<CMat> {
    let split = crate::catdata::base_fusion_homs(world, ym_in, coupling, ym_out);
    let fuse = crate::catdata::base_fusion_homs(world, coupling, yp_out, yp_in);
    let (split, fuse) = (split.first()?, fuse.first()?);
    let dm_in = world.dirreps[ym_in].rep.dim;
    let dp_out = world.dirreps[yp_out].rep.dim;
    // (id_{Y_-} ⊗ fuse) ∘ (split† ⊗ id_{Ỹ_+})
    Some(kron(&eye(dm_in), fuse) * kron(&dagger(split), &eye(dp_out)))
}

/// Build one term summed over all bulk windows.
pub fn build_local_operator(space: &StateSpace, term: &LocalTermSpec) -> SparseOperator {
    let mut op = SparseOperator::new(space.dim(), space.dim());
    let l = space.config.length;
    for v in 1..l {
        accumulate_bulk(space, term, v, &mut op);
    }
    op.normalize();
    op
}

/// One bulk window: vertex v with edges v−1 and v (0-based arrays).
pub fn build_local_operator_at(
    space: &StateSpace,
    term: &LocalTermSpec,
    site: usize,
) -> Result<SparseOperator> {
    let l = space.config.length;
    if site == 0 || site >= l {
        return Err(Error::SiteRange(format!(
            "bulk site {site} outside 1..{}",
            l - 1
        )));
    }
    let mut op = SparseOperator::new(space.dim(), space.dim());
    accumulate_bulk(space, term, site, &mut op);
    op.normalize();
    Ok(op)
}

fn accumulate_bulk(space: &StateSpace, term: &LocalTermSpec, v: usize, op: &mut SparseOperator) {
    let world = space.world();
    let md = &world.modules[space.config.module];
    let em = v - 1;
    let ep = v;
    for (col, s) in space.basis.iter().enumerate() {
        let (mp, mv, mn) = (s.m[v - 1], s.m[v], s.m[v + 1]);
        let t1 = &md.thom(mp, s.d[em], mv)[s.homs[em]];
        let t2 = &md.thom(mv, s.d[ep], mn)[s.homs[ep]];
        let dyp = world.dirreps[s.d[ep]].rep.dim;
        let phi_in = t2 * kron(t1, &eye(dyp));
        let dprev = md.simples[mp].rep.dim;
        let dnext = md.simples[mn].rep.dim;
        // all admissible out-windows
        for &ym in &space.config.allowed_d {
            for &yp in &space.config.allowed_d {
                let kernel = match exchange_kernel(world, ym, yp, s.d[em], s.d[ep], term.coupling)
                {
                    Some(k) => k,
                    None => continue,
                };
                let weight = term.weight.eval(ym, yp);
                if weight == 0.0 {
                    continue;
                }
                let phi_k = &phi_in * kron(&eye(dprev), &kernel);
                for mt in 0..md.simples.len() {
                    for (h1, t1o) in md.thom(mp, ym, mt).iter().enumerate() {
                        for (h2, t2o) in md.thom(mt, yp, mn).iter().enumerate() {
                            let dyo = world.dirreps[yp].rep.dim;
                            let phi_out = t2o * kron(t1o, &eye(dyo));
                            let amp = crate::linalg::hs_inner(&phi_out, &phi_k)
                                / cr(dnext as f64)
                                * cr(weight);
                            if amp.norm() < 1e-14 {
                                continue;
                            }
                            let mut t = s.clone();
                            t.m[v] = mt;
                            t.d[em] = ym;
                            t.d[ep] = yp;
                            t.homs[em] = h1;
                            t.homs[ep] = h2;
                            if let Some(row) = space.index_of(&t) {
                                op.push(row, col, amp);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// The boundary window: glued vertices (L, 0) around the boundary strand,
/// with the exchanged string threaded through the functor structure map.
pub fn build_boundary_operator(space: &StateSpace, term: &LocalTermSpec) -> SparseOperator {
    let world = space.world();
    let md = &world.modules[space.config.module];
    let cat = world.endo(space.config.module);
    let l = space.config.length;
    let (em, ep) = (l - 1, 0);
    let mut op = SparseOperator::new(space.dim(), space.dim());
    for (col, s) in space.basis.iter().enumerate() {
        let (a_in, _mult) = space.config.boundary.constituents[s.bnd_constituent];
        let fa = &cat.simples[a_in];
        let (mp, ml, m0, mn) = (s.m[l - 1], s.m[l], s.m[0], s.m[1]);
        let t1 = &md.thom(mp, s.d[em], ml)[s.homs[em]];
        let ub = &cat.uhom(a_in, ml, m0)[s.bnd_hom];
        let t2 = &md.thom(m0, s.d[ep], mn)[s.homs[ep]];
        // the string crosses the boundary strand with the handedness that
        // matches the tube wrap: transpose, not adjoint
        let om_inv = world.omega(fa, &md.simples[mp].rep, s.d[em]).transpose();
        let dyp = world.dirreps[s.d[ep]].rep.dim;
        // Φ_in : F_A(V_mp) ⊗ Y_- ⊗ Y_+ → V_mn
        let phi_in = t2
            * kron(
                &(ub * world.apply_mor(fa, t1) * &om_inv),
                &eye(dyp),
            );
        let dnext = md.simples[mn].rep.dim;
        let fdim = world.apply(fa, &md.simples[mp].rep).dim;
        for &ym in &space.config.allowed_d {
            for &yp in &space.config.allowed_d {
                let kernel = match exchange_kernel(world, ym, yp, s.d[em], s.d[ep], term.coupling)
                {
                    Some(k) => k,
                    None => continue,
                };
                let weight = term.weight.eval(ym, yp);
                let phi_k = &phi_in * kron(&eye(fdim), &kernel);
                let om_inv_o = world.omega(fa, &md.simples[mp].rep, ym).transpose();
                for mlt in 0..md.simples.len() {
                    for (h1, t1o) in md.thom(mp, ym, mlt).iter().enumerate() {
                        for m0t in 0..md.simples.len() {
                            for (bh, ubo) in cat.uhom(a_in, mlt, m0t).iter().enumerate() {
                                for mt2 in [mn] {
                                    for (h2, t2o) in md.thom(m0t, yp, mt2).iter().enumerate() {
                                        let dyo = world.dirreps[yp].rep.dim;
                                        let phi_out = t2o
                                            * kron(
                                                &(ubo * world.apply_mor(fa, t1o) * &om_inv_o),
                                                &eye(dyo),
                                            );
                                        let amp = crate::linalg::hs_inner(&phi_out, &phi_k)
                                            / cr(dnext as f64)
                                            * cr(weight);
                                        if amp.norm() < 1e-14 {
                                            continue;
                                        }
                                        let mut t = s.clone();
                                        t.m[l] = mlt;
                                        t.m[0] = m0t;
                                        t.d[em] = ym;
                                        t.d[ep] = yp;
                                        t.homs[em] = h1;
                                        t.homs[ep] = h2;
                                        t.bnd_hom = bh;
                                        if let Some(row) = space.index_of(&t) {
                                            op.push(row, col, amp);
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
    op.normalize();
    op
}

/// Assemble a built-in model at length `L` with the given boundary label
/// and couplings.
pub fn assemble(
    model: &ModelSpec,
    l: usize,
    boundary_label: &str,
    couplings: &HashMap<String, f64>,
) -> Result<(StateSpace, SparseOperator)> {
    let b = bundle(model.world)?;
    let module = b
        .world
        .module_index(model.module)
        .ok_or_else(|| Error::UnknownBuiltin(model.module.into()))?;
    let boundary = parse_boundary(&b.world, module, boundary_label)?;
    let allowed = default_allowed_d(&b.world, module);
    let space = enumerate(ChainConfig {
        bundle: b,
        module,
        length: l,
        allowed_d: allowed,
        boundary,
    })?;
    let h = assemble_on(&space, model, couplings);
    Ok((space, h))
}

/// Assemble the model Hamiltonian on an existing space.
pub fn assemble_on(
    space: &StateSpace,
    model: &ModelSpec,
    couplings: &HashMap<String, f64>,
) -> SparseOperator {
    let mut h = SparseOperator::new(space.dim(), space.dim());
    for (cname, term) in &model.terms {
        let c = cr(prefactor(cname, couplings));
        h = h.add(&build_local_operator(space, term).scale(c));
        h = h.add(&build_boundary_operator(space, term).scale(c));
    }
    h.normalize();
    h
}

/// Parse a boundary label: a dual-category simple name, or a formal sum
/// like `"s+s2"` for direct-sum boundary objects.
pub fn parse_boundary(world: &World, module: usize, label: &str) -> Result<BoundaryObject> {
    let cat = world.endo(module);
    let mut constituents: Vec<(usize, usize)> = Vec::new();
    for part in label.split('+') {
        let part = part.trim();
        let a = cat
            .simple_index(part)
            .ok_or_else(|| Error::UnknownBuiltin(format!("boundary label {part}")))?;
        match constituents.iter_mut().find(|(x, _)| *x == a) {
            Some((_, m)) => *m += 1,
            None => constituents.push((a, 1)),
        }
    }
    Ok(BoundaryObject { constituents })
}

/// The symmetry MPO of a functor simple threaded through an A-preserving
/// boundary: the sum over the boundary fusion channels of the corresponding
/// tubes.
pub fn symmetry_mpo(space: &StateSpace, x: usize) -> SparseOperator {
    crate::tubealg::boundary_preserving_tube_sum(space, x)
}

/// Pauli matrices in the convention used throughout: unhalved.
pub fn pauli(which: char) -> CMat {
    let mut m = CMat::zeros(2, 2);
    match which {
        'x' => {
            m[(0, 1)] = cr(1.0);
            m[(1, 0)] = cr(1.0);
        }
        'y' => {
            m[(0, 1)] = C64::new(0.0, -1.0);
            m[(1, 0)] = C64::new(0.0, 1.0);
        }
        'z' => {
            m[(0, 0)] = cr(1.0);
            m[(1, 1)] = cr(-1.0);
        }
        'i' => {
            m[(0, 0)] = cr(1.0);
            m[(1, 1)] = cr(1.0);
        }
        _ => panic!("unknown pauli {which}"),
    }
    m
}

/// Dense operator acting with `ops[k]` on site `sites[k]` of an n-site
/// spin-1/2 chain (identity elsewhere); test/oracle helper.
pub fn site_operator(n: usize, sites: &[usize], ops: &[CMat]) -> CMat {
    let mut m = eye(1);
    for site in 0..n {
        let factor = match sites.iter().position(|&s| s == site) {
            Some(k) => ops[k].clone(),
            None => eye(2),
        };
        m = kron(&m, &factor);
    }
    m
}

/// Dense matrix of the model in the effective encoding basis: basis index
/// = big-endian site values. Returns None when no tensor encoding exists.
pub fn to_encoded_dense(space: &StateSpace, op: &SparseOperator) -> Option<CMat> {
    let dims: Vec<usize> = match crate::statespace::effective_encoding(space) {
        crate::statespace::Encoding::Sites { dims, .. } => dims,
        crate::statespace::Encoding::Opaque { .. } => return None,
    };
    let total: usize = dims.iter().product();
    if total != space.dim() {
        return None;
    }
    let code = |s: &BasisState| -> Option<usize> {
        let vals = crate::statespace::encode_state(space, s)?;
        let mut idx = 0usize;
        for (v, d) in vals.iter().zip(&dims) {
            idx = idx * d + v;
        }
        Some(idx)
    };
    let mut m = CMat::zeros(total, total);
    let dense = op.to_dense();
    for (i, si) in space.basis.iter().enumerate() {
        for (j, sj) in space.basis.iter().enumerate() {
            let (r, c) = (code(si)?, code(sj)?);
            m[(r, c)] += dense[(i, j)];
        }
    }
    Some(m)
}
