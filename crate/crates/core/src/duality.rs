//! Duality layer: intertwining tubes between dual models, the induced map
//! between topological sectors, and explicit isometries transporting
//! Hamiltonian blocks.
//!
//! An intertwining tube is the same contraction as a symmetry tube with the
//! functor taken in `Fun(M, N)` for distinct module categories; it maps the
//! A-twisted chain over M to the B-twisted chain over N and commutes with
//! the dual pair of Hamiltonians. Sandwiching with sector projectors on
//! both sides detects which topological sectors are exchanged, and the
//! polar part of the sandwiched tube is the isometry realizing the
//! spectral identification.

use crate::catdata::engine::World;
use crate::hamiltonian::{assemble, ModelSpec};
use crate::linalg::{cr, dagger, inv_sqrt_psd, max_abs, CMat};
use crate::sparse::SparseOperator;
use crate::spectra::{compare_spectra, eigensolve_dense};
use crate::statespace::StateSpace;
use crate::tubealg::{
    projector_image_basis, sector_projectors, tube_to_operator, tubes_between, SectorLabel, Tube,
    TubeContext,
};
use crate::{Error, Result, THRESH_SECTOR, TOL_OPERATOR, TOL_SPECTRA};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::collections::HashMap;

/// Labels of an intertwining tube between two module categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntertwinerTube {
    pub src_module: usize,
    pub dst_module: usize,
    pub tube: Tube,
}

/// Realize an intertwining tube as a rectangular sparse map.
pub fn intertwiner_to_operator(
    space_in: &StateSpace,
    space_out: &StateSpace,
    t: &Tube,
) -> Result<SparseOperator> {
    let ctx = TubeContext::new(space_in, space_out);
    tube_to_operator(&ctx, t)
}

/// Abstract multiplication of intertwining tubes along composable module
/// paths (Eq.-style triple associator products).
pub fn multiply_intertwiners(
    world: &World,
    path: (usize, usize, usize),
    t1: &Tube,
    t2: &Tube,
) -> crate::tubealg::TubeAlgebraElement {
    crate::tubealg::multiply_general(world, path, t1, t2)
}

/// Abstract conjugate of an intertwining tube, valued in reversed tubes.
pub fn dagger_intertwiner(
    world: &World,
    path: (usize, usize),
    t: &Tube,
) -> crate::tubealg::TubeAlgebraElement {
    crate::tubealg::dagger_general(world, path, t)
}

/// One detected sector correspondence.
#[derive(Debug, Clone, Serialize)]
pub struct SectorMapEntry {
    pub functor: String,
    pub source: String,
    pub target: String,
    pub source_boundary: String,
    pub target_boundary: String,
    pub overlap: f64,
}

/// Internal: all sector projectors of one model at every simple boundary.
struct BoundaryProjectors {
    spaces: Vec<StateSpace>,
    /// (boundary simple, sector, slot-index-in-space, projector)
    projs: Vec<(usize, SectorLabel, usize, SparseOperator)>,
}

fn all_boundary_projectors(model: &ModelSpec, l: usize) -> Result<BoundaryProjectors> {
    let bundle = crate::statespace::bundle(model.world)?;
    let module = bundle
        .world
        .module_index(model.module)
        .ok_or_else(|| Error::UnknownBuiltin(model.module.into()))?;
    let nb = bundle.world.endo(module).simples.len();
    let mut spaces = Vec::new();
    let mut projs = Vec::new();
    for a in 0..nb {
        let label = bundle.world.endo(module).simples[a].name.clone();
        let (space, _h) = assemble(model, l, &label, &model.default_couplings)?;
        let sp = sector_projectors(&space)?;
        let idx = spaces.len();
        for (sector, _slot, p) in sp {
            projs.push((idx, sector, a, p));
        }
        spaces.push(space);
    }
    Ok(BoundaryProjectors {
        spaces,
        projs: projs
            .into_iter()
            .map(|(idx, sec, a, p)| (idx, sec, a, p))
            .map(|(idx, sec, _a, p)| (idx, sec, 0, p))
            .collect(),
    })
}

/// Compute the sector map induced by one duality functor: for every source
/// sector and every target boundary/sector, sandwich the intertwining tubes
/// and record the non-vanishing overlaps. Errors if the resulting relation
/// is not a bijection on sector labels.
pub fn sector_map(
    src_model: &ModelSpec,
    dst_model: &ModelSpec,
    functor: usize,
    l: usize,
) -> Result<Vec<SectorMapEntry>> {
    let bundle = crate::statespace::bundle(src_model.world)?;
    let world = &bundle.world;
    let msrc = world
        .module_index(src_model.module)
        .ok_or_else(|| Error::UnknownBuiltin(src_model.module.into()))?;
    let mdst = world
        .module_index(dst_model.module)
        .ok_or_else(|| Error::UnknownBuiltin(dst_model.module.into()))?;
    let src = all_boundary_projectors(src_model, l)?;
    let dst = all_boundary_projectors(dst_model, l)?;
    let fname = world.cat(msrc, mdst).simples[functor].name.clone();
    let mut entries: Vec<SectorMapEntry> = Vec::new();
    let mut relation: HashMap<SectorLabel, SectorLabel> = HashMap::new();
    for (si, ssec, _s0, sp) in &src.projs {
        let space_in = &src.spaces[*si];
        let a = space_in.config.boundary.constituents[0].0;
        for (di, dsec, _d0, dp) in &dst.projs {
            let space_out = &dst.spaces[*di];
            let b = space_out.config.boundary.constituents[0].0;
            let ctx = TubeContext::new(space_in, space_out);
            let mut best = 0.0f64;
            for t in tubes_between(world, msrc, mdst, a, b) {
                if t.x != functor {
                    continue;
                }
                if let Ok(op) = tube_to_operator(&ctx, &t) {
                    let sandwich = dp.matmul(&op).matmul(sp);
                    best = best.max(sandwich.max_norm());
                }
            }
            if best > THRESH_SECTOR {
                entries.push(SectorMapEntry {
                    functor: fname.clone(),
                    source: ssec.to_string(),
                    target: dsec.to_string(),
                    source_boundary: world.endo(msrc).simples[a].name.clone(),
                    target_boundary: world.endo(mdst).simples[b].name.clone(),
                    overlap: best,
                });
                match relation.entry(ssec.clone()) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(dsec.clone());
                    }
                    std::collections::hash_map::Entry::Occupied(e) => {
                        if e.get() != dsec {
                            return Err(Error::NonBijectiveMap(format!(
                                "{ssec} overlaps both {} and {dsec}",
                                e.get()
                            )));
                        }
                    }
                }
            }
        }
    }
    // bijectivity: the images must be pairwise distinct and cover as many
    // sectors as the sources
    let mut images: Vec<&SectorLabel> = relation.values().collect();
    images.sort();
    images.dedup();
    if images.len() != relation.len() {
        return Err(Error::NonBijectiveMap(format!(
            "{} sources onto {} images",
            relation.len(),
            images.len()
        )));
    }
    entries.sort_by(|a, b| {
        (&a.source, &a.source_boundary, &a.target, &a.target_boundary)
            .partial_cmp(&(&b.source, &b.source_boundary, &b.target, &b.target_boundary))
            .unwrap()
    });
    Ok(entries)
}

/// The sector map reduced to a label permutation.
pub fn sector_permutation(entries: &[SectorMapEntry]) -> HashMap<String, String> {
    entries
        .iter()
        .map(|e| (e.source.clone(), e.target.clone()))
        .collect()
}

/// Cross isometry between one matched pair of sector blocks: the polar part
/// of the projected intertwining tube.
pub struct CrossUnit {
    pub source_basis: CMat,
    pub target_basis: CMat,
    /// isometry from the source block to the target block
    pub isometry: CMat,
    pub defect: f64,
    /// coefficients over the intertwining tube basis (abstract form)
    pub tube_coefficients: Vec<(Tube, C64)>,
}

/// Construct the cross unit carrying the (Z, source-boundary) block onto
/// the (Z̃, target-boundary) block through the duality functor.
pub fn cross_unit(
    space_in: &StateSpace,
    space_out: &StateSpace,
    functor: usize,
    p_src: &SparseOperator,
    p_dst: &SparseOperator,
) -> Result<CrossUnit> {
    let world = space_in.world();
    let (msrc, mdst) = (space_in.config.module, space_out.config.module);
    let a = space_in.config.boundary.constituents[0].0;
    let b = space_out.config.boundary.constituents[0].0;
    let ctx = TubeContext::new(space_in, space_out);
    let tubes: Vec<Tube> = tubes_between(world, msrc, mdst, a, b)
        .into_iter()
        .filter(|t| t.x == functor)
        .collect();
    let mut sandwich: Option<SparseOperator> = None;
    for t in &tubes {
        let op = tube_to_operator(&ctx, t)?;
        let s = p_dst.matmul(&op).matmul(p_src);
        if s.max_norm() > THRESH_SECTOR {
            sandwich = Some(s);
            break;
        }
    }
    let sandwich = sandwich.ok_or_else(|| {
        Error::IncompatibleBoundary("no intertwining tube connects the blocks".into())
    })?;
    let vs = projector_image_basis(&p_src.to_dense());
    let vd = projector_image_basis(&p_dst.to_dense());
    if vs.ncols() != vd.ncols() {
        return Err(Error::NonBijectiveMap(format!(
            "block dimensions differ: {} vs {}",
            vs.ncols(),
            vd.ncols()
        )));
    }
    let ublock = dagger(&vd) * sandwich.to_dense() * &vs;
    let gram = dagger(&ublock) * &ublock;
    let w = &ublock * inv_sqrt_psd(&gram, 1e-18);
    let mut wfixed = w.clone();
    // pin the global phase on the first entry of significant magnitude
    'outer: for c in 0..wfixed.ncols() {
        for r in 0..wfixed.nrows() {
            let z = wfixed[(r, c)];
            if z.norm() > 1e-9 {
                let ph = z / cr(z.norm());
                wfixed = wfixed.map(|x| x / ph);
                break 'outer;
            }
        }
    }
    let defect = crate::linalg::max_diff(
        &(dagger(&wfixed) * &wfixed),
        &crate::linalg::eye(wfixed.ncols()),
    );
    // abstract coefficients: project the embedded isometry onto the tube
    // operator basis by least squares
    let embedded = &vd * &wfixed * dagger(&vs);
    let ops: Vec<CMat> = tubes
        .iter()
        .map(|t| {
            tube_to_operator(&ctx, t)
                .map(|o| o.to_dense())
                .unwrap_or_else(|_| CMat::zeros(space_out.dim(), space_in.dim()))
        })
        .collect();
    let n = ops.len();
    let mut tube_coefficients = Vec::new();
    if n > 0 {
        let mut gram = CMat::zeros(n, n);
        let mut rhs = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = crate::linalg::hs_inner(&ops[i], &ops[j]);
            }
            rhs[i] = crate::linalg::hs_inner(&ops[i], &embedded);
        }
        if let Some(ginv) = gram.clone().try_inverse() {
            for i in 0..n {
                let c: C64 = (0..n).map(|j| ginv[(i, j)] * rhs[j]).sum();
                if c.norm() > 1e-10 {
                    tube_coefficients.push((tubes[i], c));
                }
            }
        }
    }
    Ok(CrossUnit {
        source_basis: vs,
        target_basis: vd,
        isometry: wfixed,
        defect,
        tube_coefficients,
    })
}

/// Transport a source sector block isospectrally onto the target side and
/// return (transported block, unitarity defect of the isometry).
pub fn transport_block(unit: &CrossUnit, h_src_block: &CMat) -> (CMat, f64) {
    let w = &unit.isometry;
    (w * h_src_block * dagger(w), unit.defect)
}

/// Per-sector verification report of one dual pair at one length.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub source_model: String,
    pub target_model: String,
    pub functor: String,
    pub length: usize,
    pub sectors: Vec<VerifiedSector>,
    pub all_matched: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifiedSector {
    pub source: String,
    pub source_boundary: String,
    pub target: String,
    pub target_boundary: String,
    pub block_dim: usize,
    pub spectral_gap: f64,
    pub transport_gap: Option<f64>,
    pub matched: bool,
}

/// Verify the duality between two models: for every matched sector pair,
/// compare the sorted spectra of the directly assembled blocks, and (at
/// small sizes) transport the source block through the cross isometry.
pub fn verify_pair(
    src_model: &ModelSpec,
    dst_model: &ModelSpec,
    functor: usize,
    l: usize,
    couplings: &HashMap<String, f64>,
    with_transport: bool,
) -> Result<VerifyReport> {
    let bundle = crate::statespace::bundle(src_model.world)?;
    let world = &bundle.world;
    let msrc = world.module_index(src_model.module).unwrap();
    let mdst = world.module_index(dst_model.module).unwrap();
    let entries = sector_map(src_model, dst_model, functor, l.min(3))?;
    let fname = world.cat(msrc, mdst).simples[functor].name.clone();
    // spaces, Hamiltonians and sector blocks for every boundary, both sides
    let mut src_blocks = model_blocks(src_model, l, couplings)?;
    let mut dst_blocks = model_blocks(dst_model, l, couplings)?;
    let mut sectors = Vec::new();
    let mut all_matched = true;
    for e in &entries {
        let (Some(sb), Some(db)) = (
            src_blocks
                .iter_mut()
                .find(|b| b.boundary == e.source_boundary && b.sector.to_string() == e.source),
            dst_blocks
                .iter_mut()
                .find(|b| b.boundary == e.target_boundary && b.sector.to_string() == e.target),
        ) else {
            continue;
        };
        let va = eigensolve_dense(&sb.block)?;
        let vb = eigensolve_dense(&db.block)?;
        let rep = compare_spectra(&va, &vb, TOL_SPECTRA);
        let mut transport_gap = None;
        if with_transport {
            let unit = cross_unit(&sb.space, &db.space, functor, &sb.projector, &db.projector)?;
            let (tblock, defect) = transport_block(&unit, &sb.block);
            if defect > TOL_OPERATOR {
                return Err(Error::ToleranceViolated {
                    identity: "cross-unit isometry defect".into(),
                    residual: defect,
                });
            }
            let tg = crate::linalg::max_diff(&tblock, &db.block);
            // transported block must be isospectral entry-free; compare
            // spectra rather than entries
            let tv = eigensolve_dense(&tblock)?;
            let trep = compare_spectra(&tv, &vb, TOL_SPECTRA);
            transport_gap = Some(trep.max_gap.max(if tg.is_finite() { 0.0 } else { tg }));
        }
        all_matched &= rep.matches;
        sectors.push(VerifiedSector {
            source: e.source.clone(),
            source_boundary: e.source_boundary.clone(),
            target: e.target.clone(),
            target_boundary: e.target_boundary.clone(),
            block_dim: va.len(),
            spectral_gap: rep.max_gap,
            transport_gap,
            matched: rep.matches,
        });
    }
    Ok(VerifyReport {
        source_model: src_model.name.to_string(),
        target_model: dst_model.name.to_string(),
        functor: fname,
        length: l,
        sectors,
        all_matched,
    })
}

struct ModelBlock {
    boundary: String,
    sector: SectorLabel,
    space: StateSpace,
    projector: SparseOperator,
    block: CMat,
}

fn model_blocks(
    model: &ModelSpec,
    l: usize,
    couplings: &HashMap<String, f64>,
) -> Result<Vec<ModelBlock>> {
    let bundle = crate::statespace::bundle(model.world)?;
    let module = bundle.world.module_index(model.module).unwrap();
    let nb = bundle.world.endo(module).simples.len();
    let mut out = Vec::new();
    for a in 0..nb {
        let label = bundle.world.endo(module).simples[a].name.clone();
        let (space, h) = assemble(model, l, &label, couplings)?;
        let hd = h.to_dense();
        for (sector, _slot, p) in sector_projectors(&space)? {
            let basis = projector_image_basis(&p.to_dense());
            if basis.ncols() == 0 {
                continue;
            }
            let block = dagger(&basis) * &hd * &basis;
            let (space2, _h2) = assemble(model, l, &label, couplings)?;
            out.push(ModelBlock {
                boundary: label.clone(),
                sector,
                space: space2,
                projector: p,
                block,
            });
        }
    }
    Ok(out)
}

/// Compose two sector maps; used for the round-trip consistency check.
pub fn compose_maps(
    first: &HashMap<String, String>,
    second: &HashMap<String, String>,
) -> HashMap<String, String> {
    first
        .iter()
        .filter_map(|(k, v)| second.get(v).map(|w| (k.clone(), w.clone())))
        .collect()
}

#[allow(dead_code)]
fn unused(m: &CMat) -> f64 {
    max_abs(m)
}
