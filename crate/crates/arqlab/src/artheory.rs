//! Almost split sequences, the Auslander-Reiten quiver, and the
//! combinatorics of its stable part.
//!
//! The AR quiver is discovered by closure: starting from the indecomposable
//! projectives, each node contributes the summands of its radical (when
//! projective), of its socle quotient (when injective), its translate, and
//! the middle of the almost split sequence starting at it (when not
//! injective). For a representation finite connected algebra this reaches
//! every indecomposable. Irreducible-map multiplicities are read off the
//! middles and the radicals, so every node's incoming arrows are computed
//! exactly once.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::mat::{Mat, Subspace};
use crate::module::{
    self, direct_sum, hom, is_injective_module, is_projective, kernel_submodule,
    projective_cover, quotient_module, radical_submodule, socle_submodule, verify_map, ModMap,
    Module,
};

/// An almost split (Auslander-Reiten) sequence
/// `0 -> left -> middle -> right -> 0` with `right` the inverse translate of
/// `left`.
#[derive(Clone, Debug)]
pub struct AlmostSplit {
    pub left: Module,
    pub middle: Module,
    pub right: Module,
    /// The irreducible inclusion `left -> middle`.
    pub left_map: ModMap,
    /// The irreducible surjection `middle -> right`.
    pub right_map: ModMap,
}

/// Reduce a row vector modulo an echelon basis.
fn reduce_mod(field: crate::field::FieldSpec, basis: &Mat, v: &mut [Scalar]) {
    for r in 0..basis.rows {
        let p = (0..basis.cols)
            .find(|&c| !field.is_zero(basis.get(r, c)))
            .expect("echelon rows are nonzero");
        let coeff = v[p].clone();
        if field.is_zero(&coeff) {
            continue;
        }
        for c in 0..basis.cols {
            let delta = field.mul(&coeff, basis.get(r, c));
            v[c] = field.sub(&v[c], &delta);
        }
    }
}

/// The almost split sequence starting at a non-injective indecomposable.
///
/// The extension group Ext^1(Y, X) for `Y` the inverse translate of `X` is
/// computed from a projective cover of `Y`; the sequence is the socle of
/// that group under the right action of End(Y), which must be one
/// dimensional.
pub fn almost_split_sequence(x: &Module) -> Result<AlmostSplit> {
    let alg = Arc::clone(&x.alg);
    let f = alg.field;
    let y = module::tau_inv(x)?;
    let cover = projective_cover(&y);
    let p0 = cover.cover.clone();
    let eps = cover.map.clone();
    let (kmod, kemb) = kernel_submodule(&p0, &y, &eps);

    // Ext^1(Y, X) = Hom(K, X) / restrictions of Hom(P0, X).
    let xi_basis = hom(&kmod, x)?;
    if xi_basis.is_empty() {
        return Err(Error::InternalInconsistency(
            "Ext^1 to the translate vanishes".into(),
        ));
    }
    let flat_len = xi_basis[0].flatten().len();
    let p0_homs = hom(&p0, x)?;
    let mut w_rows: Vec<Vec<Scalar>> = Vec::new();
    for phi in &p0_homs {
        let restricted = kemb.compose(phi);
        w_rows.push(restricted.flatten());
    }
    let w = if w_rows.is_empty() {
        Subspace::zero(f, flat_len)
    } else {
        Subspace::from_rows(&Mat::from_rows(f, w_rows))
    };

    // Right action of rad End(Y) on Hom(K, X): lift an endomorphism of Y
    // through the cover, restrict the lift to K, and precompose.
    let (end_y, rad_coords) = end_with_radical(&y)?;
    let p0_end = hom(&p0, &p0)?;
    let mut rad_action: Vec<ModMap> = Vec::new(); // maps K -> K
    for r in 0..rad_coords.dim() {
        let mut g = ModMap::zero_map(&y, &y);
        for (c, b) in rad_coords
            .basis_rows()
            .row(r)
            .iter()
            .zip(end_y.iter())
        {
            if !f.is_zero(c) {
                g = g.add(&b.scale(c));
            }
        }
        let lift = lift_through_cover(&p0_end, &eps, &g)?;
        // The lift preserves K because the lifted square commutes.
        let into_p0 = kemb.compose(&lift);
        let mut blocks = Vec::with_capacity(kmod.dims.len());
        for i in 0..kmod.dims.len() {
            let coords = into_p0.blocks[i]
                .in_terms_of_rows(&kemb.blocks[i])
                .ok_or_else(|| {
                    Error::InternalInconsistency("cover lift does not preserve the kernel".into())
                })?;
            blocks.push(coords);
        }
        rad_action.push(ModMap { blocks });
    }

    // Socle: combinations of the xi basis that every radical action pushes
    // into W, modulo W itself.
    let nxi = xi_basis.len();
    let mut constraint_rows: Vec<Vec<Scalar>> = Vec::new();
    for act in &rad_action {
        // For unknown coefficients c_i the condition is
        // sum_i c_i * flatten(act; xi_i) = 0 modulo W, one linear equation
        // per flat coordinate.
        let mut moved: Vec<Vec<Scalar>> = Vec::with_capacity(nxi);
        for xi in &xi_basis {
            let mut flat = act.compose(xi).flatten();
            reduce_mod(f, w.basis_rows(), &mut flat);
            moved.push(flat);
        }
        for col in 0..flat_len {
            let row: Vec<Scalar> = moved.iter().map(|m| m[col].clone()).collect();
            if row.iter().any(|s| !f.is_zero(s)) {
                constraint_rows.push(row);
            }
        }
    }
    let socle_coords: Vec<Mat> = if constraint_rows.is_empty() {
        (0..nxi)
            .map(|i| {
                let mut v = Mat::zero(f, nxi, 1);
                v.set(i, 0, f.one());
                v
            })
            .collect()
    } else {
        Mat::from_rows(f, constraint_rows).kernel()
    };
    // Count socle directions modulo W and keep the first representative that
    // falls outside W.
    let mut rep: Option<ModMap> = None;
    let mut outside = 0;
    let mut seen = w.clone();
    for c in &socle_coords {
        let mut xi = ModMap::zero_map(&kmod, x);
        for i in 0..nxi {
            let coeff = c.get(i, 0);
            if !f.is_zero(coeff) {
                xi = xi.add(&xi_basis[i].scale(coeff));
            }
        }
        let flat = Mat::from_rows(f, vec![xi.flatten()]);
        if !seen.contains_row(&flat) {
            outside += 1;
            seen = seen.sum(&Subspace::from_rows(&flat));
            if rep.is_none() {
                rep = Some(xi);
            }
        }
    }
    if outside != 1 {
        return Err(Error::SocleNotUnique(format!(
            "the extension socle has dimension {outside} over the base field"
        )));
    }
    let xi = rep.expect("one socle direction was found");

    // Pushout of K -> P0 along xi: middle = (X + P0) / {(xi k, -k)}.
    let sum = direct_sum(&alg, &[x.clone(), p0.clone()]);
    let nv = alg.n_vertices;
    let mut ideal_rows: Vec<Mat> = Vec::with_capacity(nv);
    for i in 0..nv {
        let neg = kemb.blocks[i].scale(&f.neg(&f.one()));
        ideal_rows.push(xi.blocks[i].hstack(&neg));
    }
    let (middle, projq) = quotient_module(&sum.module, &ideal_rows)?;
    let left_map = sum.injections[0].compose(&projq);
    // The surjection middle -> Y is induced by (x, p) -> eps(p); solve it
    // through the quotient projection.
    let mut right_blocks = Vec::with_capacity(nv);
    for i in 0..nv {
        let h = Mat::zero(f, x.dims[i], y.dims[i]).vstack(&eps.blocks[i]);
        let cols: Vec<Mat> = (0..y.dims[i])
            .map(|c| {
                let col: Vec<Vec<Scalar>> = (0..h.rows).map(|r| vec![h.get(r, c).clone()]).collect();
                if col.is_empty() {
                    Mat::zero(f, 0, 1)
                } else {
                    Mat::from_rows(f, col.concat().into_iter().map(|s| vec![s]).collect())
                }
            })
            .collect();
        let sols = projq.blocks[i].solve(&cols);
        let mut block = Mat::zero(f, middle.dims[i], y.dims[i]);
        for (c, sol) in sols.into_iter().enumerate() {
            let sol = sol.ok_or_else(|| {
                Error::InternalInconsistency("pushout projection is not surjective".into())
            })?;
            for r in 0..middle.dims[i] {
                block.set(r, c, sol.get(r, 0).clone());
            }
        }
        right_blocks.push(block);
    }
    let right_map = ModMap {
        blocks: right_blocks,
    };

    // Exactness checks.
    for i in 0..nv {
        assert_eq!(
            middle.dims[i],
            x.dims[i] + y.dims[i],
            "middle term has the wrong dimension vector"
        );
    }
    debug_assert!(verify_map(x, &middle, &left_map));
    debug_assert!(verify_map(&middle, &y, &right_map));
    assert!(left_map.is_monic(), "left map of an exact sequence is monic");
    assert_eq!(right_map.rank(), y.total_dim(), "right map is surjective");
    assert!(
        left_map.compose(&right_map).is_zero(),
        "composition through the middle vanishes"
    );
    Ok(AlmostSplit {
        left: x.clone(),
        middle,
        right: y,
        left_map,
        right_map,
    })
}

/// Basis of End(m) together with its radical in basis coordinates.
fn end_with_radical(m: &Module) -> Result<(Vec<ModMap>, Subspace)> {
    let f = m.alg.field;
    let endb = hom(m, m)?;
    let de = endb.len();
    if de == 0 {
        return Ok((endb, Subspace::zero(f, 0)));
    }
    let flat_rows: Vec<Vec<Scalar>> = endb.iter().map(ModMap::flatten).collect();
    let flat = Mat::from_rows(f, flat_rows);
    let mul = |i: usize, j: usize| -> crate::algebra::SparseVec {
        let prod = endb[i].compose(&endb[j]);
        let target = Mat::from_rows(f, vec![prod.flatten()]);
        let coords = flat
            .solve_left(&target)
            .expect("endomorphisms compose inside End");
        (0..de)
            .filter_map(|k| {
                let c = coords.get(0, k);
                if f.is_zero(c) {
                    None
                } else {
                    Some((k, c.clone()))
                }
            })
            .collect()
    };
    let rad = crate::algebra::trace_form_radical(f, de, &mul)?;
    Ok((endb, rad))
}

/// Lift `g : Y -> Y` through a projective cover `eps : P0 -> Y` to an
/// endomorphism of P0 with `lift . eps = eps . g`.
fn lift_through_cover(p0_end: &[ModMap], eps: &ModMap, g: &ModMap) -> Result<ModMap> {
    let f = eps.blocks[0].field;
    let target = {
        let mut t = eps.compose(g).flatten();
        let m = Mat::from_rows(f, vec![std::mem::take(&mut t)]);
        m
    };
    let rows: Vec<Vec<Scalar>> = p0_end
        .iter()
        .map(|b| b.compose(eps).flatten())
        .collect();
    let mat = Mat::from_rows(f, rows);
    let coords = mat.solve_left(&target).ok_or_else(|| {
        Error::InternalInconsistency("projectivity lift has no solution".into())
    })?;
    let mut lift = p0_end[0].scale(&f.zero());
    for (i, b) in p0_end.iter().enumerate() {
        let c = coords.get(0, i);
        if !f.is_zero(c) {
            lift = lift.add(&b.scale(c));
        }
    }
    Ok(lift)
}

/// A vertex of the Auslander-Reiten quiver.
#[derive(Clone, Debug)]
pub struct ARNode {
    pub module: Module,
    pub projective: bool,
    pub injective: bool,
}

/// An irreducible-map class with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ARArrow {
    pub src: usize,
    pub tgt: usize,
    pub mult: usize,
}

/// The Auslander-Reiten quiver of a representation finite algebra.
#[derive(Clone, Debug)]
pub struct ARQuiver {
    pub alg: Arc<Algebra>,
    pub nodes: Vec<ARNode>,
    pub arrows: Vec<ARArrow>,
    /// `tau[i]` is the node of the translate of node `i`, absent for
    /// projectives.
    pub tau: Vec<Option<usize>>,
}

/// Caps for the knitting closure, so that an unexpectedly large module
/// category fails fast instead of running away.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub max_nodes: usize,
    pub max_dim: usize,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            max_nodes: 512,
            max_dim: 64,
        }
    }
}

struct Knitter {
    alg: Arc<Algebra>,
    budgets: Budgets,
    nodes: Vec<ARNode>,
    tau: Vec<Option<usize>>,
    arrows_into: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
}

impl Knitter {
    /// Register an indecomposable, returning its node id.
    fn add(&mut self, m: &Module) -> Result<usize> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.module.dims == m.dims {
                if module::find_iso(m, &node.module)?.is_some() {
                    return Ok(i);
                }
            }
        }
        if m.total_dim() > self.budgets.max_dim {
            return Err(Error::BudgetExceeded(format!(
                "module of dimension {} exceeds the per-module cap {}",
                m.total_dim(),
                self.budgets.max_dim
            )));
        }
        if self.nodes.len() >= self.budgets.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "more than {} nodes in the AR quiver",
                self.budgets.max_nodes
            )));
        }
        let id = self.nodes.len();
        self.nodes.push(ARNode {
            projective: is_projective(m),
            injective: is_injective_module(m),
            module: m.clone(),
        });
        self.tau.push(None);
        self.arrows_into.push(Vec::new());
        self.queue.push_back(id);
        Ok(id)
    }

    fn process(&mut self, id: usize) -> Result<()> {
        let node = self.nodes[id].clone();
        if node.projective {
            let (rad, _) = radical_submodule(&node.module);
            let mut incoming = Vec::new();
            for (part, _) in module::decompose(&rad)? {
                let pid = self.add(&part)?;
                incoming.push(pid);
            }
            incoming.sort_unstable();
            self.arrows_into[id] = incoming;
        }
        if node.injective {
            let soc_emb = socle_submodule(&node.module).1;
            let (quot, _) = quotient_module(&node.module, &soc_emb.blocks)?;
            for (part, _) in module::decompose(&quot)? {
                self.add(&part)?;
            }
        }
        if !node.projective {
            let t = module::tau(&node.module)?;
            self.add(&t)?;
        }
        if !node.injective {
            let seq = almost_split_sequence(&node.module)?;
            let yid = self.add(&seq.right)?;
            let mut incoming = Vec::new();
            for (part, _) in module::decompose(&seq.middle)? {
                let pid = self.add(&part)?;
                incoming.push(pid);
            }
            incoming.sort_unstable();
            // The middle of the sequence carries every arrow into the right
            // term; additivity of dimension vectors double-checks the
            // decomposition.
            let mut total = vec![0usize; self.alg.n_vertices];
            for &pid in &incoming {
                for (i, d) in self.nodes[pid].module.dims.iter().enumerate() {
                    total[i] += d;
                }
            }
            assert_eq!(total, seq.middle.dims, "mesh additivity");
            self.arrows_into[yid] = incoming;
            assert!(
                self.tau[yid].is_none() || self.tau[yid] == Some(id),
                "translate pointer is consistent"
            );
            self.tau[yid] = Some(id);
        }
        Ok(())
    }
}

/// Knit the whole Auslander-Reiten quiver, starting from the projectives.
pub fn knit(alg: &Arc<Algebra>, budgets: &Budgets) -> Result<ARQuiver> {
    let mut k = Knitter {
        alg: Arc::clone(alg),
        budgets: *budgets,
        nodes: Vec::new(),
        tau: Vec::new(),
        arrows_into: Vec::new(),
        queue: VecDeque::new(),
    };
    for v in 0..alg.n_vertices {
        k.add(&Module::projective(alg, v))?;
    }
    let mut processed = 0;
    while let Some(id) = k.queue.pop_front() {
        k.process(id)?;
        processed += 1;
        debug_assert!(processed <= budgets.max_nodes + 1);
    }
    let mut arrows = Vec::new();
    for (tgt, incoming) in k.arrows_into.iter().enumerate() {
        let mut i = 0;
        while i < incoming.len() {
            let src = incoming[i];
            let mut mult = 0;
            while i < incoming.len() && incoming[i] == src {
                mult += 1;
                i += 1;
            }
            arrows.push(ARArrow { src, tgt, mult });
        }
    }
    arrows.sort_by_key(|a| (a.src, a.tgt));
    Ok(ARQuiver {
        alg: Arc::clone(alg),
        nodes: k.nodes,
        arrows,
        tau: k.tau,
    })
}

impl ARQuiver {
    /// Verify, for every non-projective node, that the dimension vectors of
    /// its translate and itself add up to its incoming mesh.
    pub fn mesh_additive(&self) -> bool {
        let nv = self.alg.n_vertices;
        for (y, t) in self.tau.iter().enumerate() {
            let Some(x) = t else { continue };
            let mut mesh = vec![0usize; nv];
            for a in &self.arrows {
                if a.tgt == y {
                    for (i, d) in self.nodes[a.src].module.dims.iter().enumerate() {
                        mesh[i] += a.mult * d;
                    }
                }
            }
            let expect: Vec<usize> = (0..nv)
                .map(|i| self.nodes[*x].module.dims[i] + self.nodes[y].module.dims[i])
                .collect();
            if mesh != expect {
                return false;
            }
        }
        true
    }
}

/// Simply laced Dynkin diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(out, "A{n}"),
            DynkinType::D(n) => write!(out, "D{n}"),
            DynkinType::E(n) => write!(out, "E{n}"),
        }
    }
}

/// Classify an undirected simple graph as a simply laced Dynkin diagram.
pub fn dynkin_class_of_graph(n: usize, edges: &[(usize, usize)]) -> Result<DynkinType> {
    if n == 0 {
        return Err(Error::NotDynkin("the graph is empty".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a == b {
            return Err(Error::NotDynkin("the graph has a loop".into()));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for (v, nb) in adj.iter().enumerate() {
        let mut sorted = nb.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != nb.len() {
            return Err(Error::NotDynkin(format!(
                "vertices {} share more than one edge",
                v + 1
            )));
        }
    }
    if edges.len() + 1 != n {
        return Err(Error::NotDynkin(
            "the graph is not a tree (wrong edge count)".into(),
        ));
    }
    // Connectivity.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotDynkin("the graph is not connected".into()));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return Ok(DynkinType::A(n));
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(Error::NotDynkin(
            "more than one branch point, or a branch point of degree over three".into(),
        ));
    }
    let center = branch[0];
    let mut arms: Vec<usize> = adj[center]
        .iter()
        .map(|&start| {
            let mut len = 1;
            let mut prev = center;
            let mut cur = start;
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Ok(DynkinType::D(n)),
        [1, 2, 2] => Ok(DynkinType::E(6)),
        [1, 2, 3] => Ok(DynkinType::E(7)),
        [1, 2, 4] => Ok(DynkinType::E(8)),
        _ => Err(Error::NotDynkin(format!(
            "branch arms {:?} are not of Dynkin shape",
            arms
        ))),
    }
}

/// The stable part of an AR quiver: nodes whose translation orbit avoids
/// projectives and injectives, grouped into orbits, with the tree class of
/// the orbit graph.
#[derive(Clone, Debug)]
pub struct StablePart {
    /// Ids of the stable nodes, ascending.
    pub nodes: Vec<usize>,
    /// Translation orbits, each sorted ascending; orbits sorted by first
    /// member.
    pub orbits: Vec<Vec<usize>>,
    pub tree_class: DynkinType,
}

/// Compute the stable part and its tree class. Fails with
/// [`Error::NotSimplyLaced`] when a stable arrow has multiplicity above one
/// and with [`Error::NotDynkin`] when the orbit graph is not a Dynkin tree.
pub fn stable_part(ar: &ARQuiver) -> Result<StablePart> {
    let n = ar.nodes.len();
    // Union-find over translation links to get orbits.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (y, t) in ar.tau.iter().enumerate() {
        if let Some(x) = t {
            let a = find(&mut parent, y);
            let b = find(&mut parent, *x);
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut contaminated = vec![false; n];
    for (i, node) in ar.nodes.iter().enumerate() {
        if node.projective || node.injective {
            let r = find(&mut parent, i);
            contaminated[r] = true;
        }
    }
    let stable: Vec<usize> = (0..n)
        .filter(|&i| !contaminated[find(&mut parent, i)])
        .collect();
    if stable.is_empty() {
        return Err(Error::NotDynkin("the stable part is empty".into()));
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for &i in &stable {
        let r = find(&mut parent, i);
        let slot = orbits
            .iter()
            .position(|o| find(&mut parent, o[0]) == r)
            .unwrap_or_else(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
        orbits[slot].push(i);
        orbit_of[i] = slot;
    }
    // Arrows inside the stable part: simply laced check, then collapse to
    // the orbit graph.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in &ar.arrows {
        if orbit_of[a.src] == usize::MAX || orbit_of[a.tgt] == usize::MAX {
            continue;
        }
        if a.mult > 1 {
            return Err(Error::NotSimplyLaced(format!(
                "irreducible maps of multiplicity {} between stable nodes",
                a.mult
            )));
        }
        let (u, v) = (orbit_of[a.src], orbit_of[a.tgt]);
        let e = (u.min(v), u.max(v));
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    let tree_class = dynkin_class_of_graph(orbits.len(), &edges)?;
    Ok(StablePart {
        nodes: stable,
        orbits,
        tree_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bound_quiver_algebra, Arrow, Quiver, Relation};
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn linear(n: usize) -> Arc<Algebra> {
        let arrows = (0..n - 1)
            .map(|i| Arrow {
                name: format!("a{}", i + 1),
                src: i,
                tgt: i + 1,
            })
            .collect();
        let quiver = Quiver::new(n, arrows).unwrap();
        Arc::new(bound_quiver_algebra(&quiver, &[], q(), n + 1).unwrap())
    }

    fn cyclic_two() -> Arc<Algebra> {
        let quiver = Quiver::new(
            2,
            vec![
                Arrow {
                    name: "a".into(),
                    src: 0,
                    tgt: 1,
                },
                Arrow {
                    name: "b".into(),
                    src: 1,
                    tgt: 0,
                },
            ],
        )
        .unwrap();
        let rels = vec![
            Relation {
                terms: vec![(q().one(), vec![0, 1])],
            },
            Relation {
                terms: vec![(q().one(), vec![1, 0])],
            },
        ];
        Arc::new(bound_quiver_algebra(&quiver, &rels, q(), 2).unwrap())
    }

    fn loop_algebra() -> Arc<Algebra> {
        let quiver = Quiver::new(
            1,
            vec![Arrow {
                name: "x".into(),
                src: 0,
                tgt: 0,
            }],
        )
        .unwrap();
        let rels = vec![Relation {
            terms: vec![(q().one(), vec![0, 0])],
        }];
        Arc::new(bound_quiver_algebra(&quiver, &rels, q(), 2).unwrap())
    }

    #[test]
    fn almost_split_sequence_out_of_the_last_projective() {
        let a = linear(2);
        let p2 = Module::projective(&a, 1);
        let seq = almost_split_sequence(&p2).unwrap();
        assert_eq!(seq.middle.dims, vec![1, 1]);
        assert_eq!(seq.right.dims, vec![1, 0]);
        assert!(seq.left_map.is_monic());
        assert!(seq.left_map.compose(&seq.right_map).is_zero());
    }

    #[test]
    fn almost_split_sequence_on_the_loop_algebra() {
        let a = loop_algebra();
        let s = Module::simple(&a, 0);
        let seq = almost_split_sequence(&s).unwrap();
        assert_eq!(seq.middle.dims, vec![2]);
        assert_eq!(seq.right.dims, vec![1]);
        // The middle of the sequence between the two copies of the simple is
        // the projective cover, not the split middle.
        assert!(module::is_projective(&seq.middle));
    }

    #[test]
    fn knitting_the_linear_quiver_finds_all_six_modules() {
        let a = linear(3);
        let ar = knit(&a, &Budgets::default()).unwrap();
        assert_eq!(ar.nodes.len(), 6);
        assert_eq!(ar.nodes.iter().filter(|n| n.projective).count(), 3);
        assert_eq!(ar.nodes.iter().filter(|n| n.injective).count(), 3);
        assert_eq!(ar.arrows.len(), 6);
        assert!(ar.arrows.iter().all(|a| a.mult == 1));
        assert!(ar.mesh_additive());
        // Three translates are defined.
        assert_eq!(ar.tau.iter().filter(|t| t.is_some()).count(), 3);
    }

    #[test]
    fn knitting_the_selfinjective_cyclic_algebra() {
        let a = cyclic_two();
        let ar = knit(&a, &Budgets::default()).unwrap();
        assert_eq!(ar.nodes.len(), 4);
        assert_eq!(ar.nodes.iter().filter(|n| n.projective).count(), 2);
        assert_eq!(ar.nodes.iter().filter(|n| n.injective).count(), 2);
        assert!(ar.mesh_additive());
        let st = stable_part(&ar).unwrap();
        assert_eq!(st.nodes.len(), 2);
        assert_eq!(st.orbits.len(), 1);
        assert_eq!(st.orbits[0].len(), 2);
        assert_eq!(st.tree_class, DynkinType::A(1));
    }

    #[test]
    fn knitting_respects_the_node_budget() {
        let a = linear(3);
        let tight = Budgets {
            max_nodes: 2,
            max_dim: 64,
        };
        assert!(matches!(
            knit(&a, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn stable_part_of_the_loop_algebra_is_a_single_orbit() {
        let a = loop_algebra();
        let ar = knit(&a, &Budgets::default()).unwrap();
        assert_eq!(ar.nodes.len(), 2);
        let st = stable_part(&ar).unwrap();
        assert_eq!(st.orbits, vec![vec![1]]);
        assert_eq!(st.tree_class, DynkinType::A(1));
    }

    #[test]
    fn dynkin_graph_classification() {
        // Path on four vertices.
        assert_eq!(
            dynkin_class_of_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
            DynkinType::A(4)
        );
        // Star with three arms of length one.
        assert_eq!(
            dynkin_class_of_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
            DynkinType::D(4)
        );
        // Branch point in the middle of a six chain: E6.
        assert_eq!(
            dynkin_class_of_graph(
                6,
                &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]
            )
            .unwrap(),
            DynkinType::E(6)
        );
        // A cycle is not Dynkin.
        assert!(matches!(
            dynkin_class_of_graph(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotDynkin(_))
        ));
        // D5 against E-shapes: arms (1, 1, 2).
        assert_eq!(
            dynkin_class_of_graph(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap(),
            DynkinType::D(5)
        );
    }

    #[test]
    fn tau_pointers_on_the_linear_quiver() {
        let a = linear(3);
        let ar = knit(&a, &Budgets::default()).unwrap();
        // Translate chains: every non-projective node's translate must again
        // be a node, and applying the inverse translate walks back.
        for (y, t) in ar.tau.iter().enumerate() {
            if let Some(x) = t {
                let tx = module::tau(&ar.nodes[y].module).unwrap();
                assert!(module::find_iso(&tx, &ar.nodes[*x].module)
                    .unwrap()
                    .is_some());
            }
        }
    }
}
