//! Finite dimensional right modules over a basic algebra.
//!
//! A module is stored by its weight spaces: vertex `i` carries a space of
//! dimension `dims[i]`, elements of which are row vectors, and each algebra
//! basis element `k` with grading `(s, t)` acts by a `dims[s] x dims[t]`
//! matrix on the right. Morphisms are per-vertex matrices intertwining the
//! action. On top of this sit the standard constructions: simples,
//! projectives, injectives, duals, radical and socle series, projective
//! covers, minimal presentations, the transpose, and the translates built
//! from it.

use std::sync::Arc;

use crate::algebra::{trace_form_radical, Algebra, SparseVec};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::mat::{Mat, Subspace};
use crate::rng::XorShift64;

/// A finite dimensional right module, graded by the vertices of the algebra.
#[derive(Clone, Debug)]
pub struct Module {
    pub alg: Arc<Algebra>,
    /// Dimension of the weight space at each vertex.
    pub dims: Vec<usize>,
    /// Right action of algebra basis element `k`, a matrix of shape
    /// `dims[src k] x dims[tgt k]`. Vertex idempotents act as identities.
    pub act: Vec<Mat>,
}

/// A homomorphism of modules, one matrix per vertex, applied on the right of
/// row vectors: an element at vertex `i` maps via `m * blocks[i]`.
#[derive(Clone, Debug)]
pub struct ModMap {
    pub blocks: Vec<Mat>,
}

/// A direct sum together with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModMap>,
    pub projections: Vec<ModMap>,
}

/// A projective cover `cover -> module` with the multiset of top vertices.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand of the cover, in order.
    pub vertices: Vec<usize>,
    pub cover: Module,
    /// The surjection onto the covered module.
    pub map: ModMap,
    /// Per summand, per vertex: algebra basis ids forming that summand's
    /// weight-space basis.
    pub(crate) layouts: Vec<Vec<Vec<usize>>>,
    /// Per summand, per vertex: offset of the summand's block inside the
    /// cover's weight space.
    pub(crate) offsets: Vec<Vec<usize>>,
}

/// The start of a minimal projective resolution, `p1 -> p0 -> module -> 0`,
/// with the map `d1` also given componentwise as algebra elements.
#[derive(Clone, Debug)]
pub struct MinimalPresentation {
    pub p0: ProjectiveCover,
    pub p1: ProjectiveCover,
    /// The map `p1.cover -> p0.cover`.
    pub d1: ModMap,
    /// `components[l][k]` is the element of `e_b A e_a` (with `b` the vertex
    /// of p0 summand `k` and `a` the vertex of p1 summand `l`) through which
    /// summand `l` maps into summand `k`.
    pub components: Vec<Vec<SparseVec>>,
}

impl Module {
    pub fn zero(alg: &Arc<Algebra>) -> Module {
        let f = alg.field;
        let dims = vec![0; alg.n_vertices];
        let act = alg
            .grading
            .iter()
            .map(|_| Mat::zero(f, 0, 0))
            .collect();
        Module {
            alg: Arc::clone(alg),
            dims,
            act,
        }
    }

    /// The simple module concentrated at one vertex.
    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Module {
        assert!(v < alg.n_vertices, "vertex out of range");
        let f = alg.field;
        let mut dims = vec![0; alg.n_vertices];
        dims[v] = 1;
        let act = alg
            .grading
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                if k < alg.n_vertices && s == v {
                    Mat::identity(f, 1)
                } else {
                    Mat::zero(f, dims[s], dims[t])
                }
            })
            .collect();
        let m = Module {
            alg: Arc::clone(alg),
            dims,
            act,
        };
        debug_assert!(m.verify().is_ok());
        m
    }

    /// The indecomposable projective at a vertex, with weight-space bases
    /// given by the algebra basis elements starting there.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Module {
        Module::projective_with_basis(alg, v).0
    }

    /// As [`Module::projective`], also returning, per vertex, the ascending
    /// list of algebra basis ids that form the weight-space basis.
    pub fn projective_with_basis(alg: &Arc<Algebra>, v: usize) -> (Module, Vec<Vec<usize>>) {
        assert!(v < alg.n_vertices, "vertex out of range");
        let f = alg.field;
        let nv = alg.n_vertices;
        let mut layout: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for k in 0..alg.dim {
            let (s, t) = alg.grading[k];
            if s == v {
                layout[t].push(k);
            }
        }
        let dims: Vec<usize> = layout.iter().map(|l| l.len()).collect();
        let mut act = Vec::with_capacity(alg.dim);
        for b in 0..alg.dim {
            let (s, t) = alg.grading[b];
            let mut m = Mat::zero(f, dims[s], dims[t]);
            for (r, &k) in layout[s].iter().enumerate() {
                for (kk, c) in alg.mul_basis(k, b) {
                    let col = layout[t]
                        .binary_search(kk)
                        .expect("product stays inside the projective");
                    m.set(r, col, c.clone());
                }
            }
            act.push(m);
        }
        let m = Module {
            alg: Arc::clone(alg),
            dims,
            act,
        };
        debug_assert!(m.verify().is_ok());
        (m, layout)
    }

    /// The indecomposable injective at a vertex: the dual of the opposite
    /// algebra's projective there.
    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Module {
        Module::projective(&alg.opposite(), v).dual()
    }

    /// The algebra as a right module over itself, `⊕ P(v)`.
    pub fn regular(alg: &Arc<Algebra>) -> Module {
        let parts: Vec<Module> = (0..alg.n_vertices)
            .map(|v| Module::projective(alg, v))
            .collect();
        direct_sum(alg, &parts).module
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The dual module over the opposite algebra: weight spaces keep their
    /// dimensions and every action matrix is transposed.
    pub fn dual(&self) -> Module {
        let op = self.alg.opposite();
        let act = self.act.iter().map(Mat::transpose).collect();
        let m = Module {
            alg: op,
            dims: self.dims.clone(),
            act,
        };
        debug_assert!(m.verify().is_ok());
        m
    }

    /// Check the module axioms against the algebra's structure constants.
    pub fn verify(&self) -> Result<()> {
        let alg = &self.alg;
        let f = alg.field;
        if self.dims.len() != alg.n_vertices || self.act.len() != alg.dim {
            return Err(Error::InternalInconsistency(
                "module shape does not match the algebra".into(),
            ));
        }
        for k in 0..alg.dim {
            let (s, t) = alg.grading[k];
            let m = &self.act[k];
            if m.rows != self.dims[s] || m.cols != self.dims[t] {
                return Err(Error::InternalInconsistency(format!(
                    "action of basis element {k} has the wrong shape"
                )));
            }
            if k < alg.n_vertices && *m != Mat::identity(f, self.dims[s]) {
                return Err(Error::InternalInconsistency(format!(
                    "idempotent {k} does not act as the identity"
                )));
            }
        }
        for k1 in 0..alg.dim {
            let (_, t1) = alg.grading[k1];
            for k2 in 0..alg.dim {
                let (s2, t2) = alg.grading[k2];
                if t1 != s2 {
                    continue;
                }
                let lhs = self.act[k1].mul(&self.act[k2]);
                let mut rhs = Mat::zero(f, lhs.rows, lhs.cols);
                for (k, c) in alg.mul_basis(k1, k2) {
                    debug_assert_eq!(alg.grading[*k], (alg.grading[k1].0, t2));
                    rhs = rhs.add(&self.act[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::InternalInconsistency(format!(
                        "action is not multiplicative on basis pair ({k1}, {k2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl ModMap {
    pub fn identity(m: &Module) -> ModMap {
        let f = m.alg.field;
        ModMap {
            blocks: m.dims.iter().map(|&d| Mat::identity(f, d)).collect(),
        }
    }

    pub fn zero_map(m: &Module, n: &Module) -> ModMap {
        let f = m.alg.field;
        ModMap {
            blocks: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&a, &b)| Mat::zero(f, a, b))
                .collect(),
        }
    }

    /// Composition `self` then `then`.
    pub fn compose(&self, then: &ModMap) -> ModMap {
        ModMap {
            blocks: self
                .blocks
                .iter()
                .zip(&then.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModMap {
        ModMap {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    /// Injective at every vertex.
    pub fn is_monic(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows)
    }

    /// Invertible at every vertex.
    pub fn is_iso(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.rows == b.cols && b.rank() == b.rows)
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            blocks.push(b.inverse()?);
        }
        Some(ModMap { blocks })
    }

    /// All matrix entries, concatenated vertex by vertex in row-major order.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for r in 0..b.rows {
                out.extend(b.row(r).iter().cloned());
            }
        }
        out
    }

    fn from_flat(field: FieldSpec, mdims: &[usize], ndims: &[usize], flat: &[Scalar]) -> ModMap {
        let mut blocks = Vec::with_capacity(mdims.len());
        let mut pos = 0;
        for (&a, &b) in mdims.iter().zip(ndims) {
            let mut m = Mat::zero(field, a, b);
            for r in 0..a {
                for c in 0..b {
                    m.set(r, c, flat[pos].clone());
                    pos += 1;
                }
            }
            blocks.push(m);
        }
        debug_assert_eq!(pos, flat.len());
        ModMap { blocks }
    }
}

/// Check that a map intertwines the two actions.
pub fn verify_map(m: &Module, n: &Module, f: &ModMap) -> bool {
    if f.blocks.len() != m.dims.len() {
        return false;
    }
    for (i, b) in f.blocks.iter().enumerate() {
        if b.rows != m.dims[i] || b.cols != n.dims[i] {
            return false;
        }
    }
    let alg = &m.alg;
    for k in alg.n_vertices..alg.dim {
        let (s, t) = alg.grading[k];
        if m.act[k].mul(&f.blocks[t]) != f.blocks[s].mul(&n.act[k]) {
            return false;
        }
    }
    true
}

fn same_algebra(m: &Module, n: &Module) -> Result<()> {
    if Arc::ptr_eq(&m.alg, &n.alg) {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(
            "modules live over different algebras".into(),
        ))
    }
}

/// Basis of the space of homomorphisms from `m` to `n`, canonical for the
/// given presentations of the two modules.
pub fn hom(m: &Module, n: &Module) -> Result<Vec<ModMap>> {
    same_algebra(m, n)?;
    let alg = &m.alg;
    let f = alg.field;
    let nv = alg.n_vertices;
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut unknowns = 0;
    for i in 0..nv {
        offsets.push(unknowns);
        unknowns += m.dims[i] * n.dims[i];
    }
    offsets.push(unknowns);
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for k in nv..alg.dim {
        let (s, t) = alg.grading[k];
        for r in 0..m.dims[s] {
            for c in 0..n.dims[t] {
                let mut row = vec![f.zero(); unknowns];
                for u in 0..m.dims[t] {
                    let a = m.act[k].get(r, u);
                    if !f.is_zero(a) {
                        let idx = offsets[t] + u * n.dims[t] + c;
                        row[idx] = f.add(&row[idx], a);
                    }
                }
                for w in 0..n.dims[s] {
                    let a = n.act[k].get(w, c);
                    if !f.is_zero(a) {
                        let idx = offsets[s] + r * n.dims[s] + w;
                        row[idx] = f.sub(&row[idx], a);
                    }
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel_cols = if rows.is_empty() {
        // No constraints: every per-vertex matrix is a morphism.
        (0..unknowns)
            .map(|i| {
                let mut v = Mat::zero(f, unknowns, 1);
                v.set(i, 0, f.one());
                v
            })
            .collect()
    } else {
        Mat::from_rows(f, rows).kernel()
    };
    Ok(kernel_cols
        .into_iter()
        .map(|col| {
            let flat: Vec<Scalar> = (0..unknowns).map(|i| col.get(i, 0).clone()).collect();
            ModMap::from_flat(f, &m.dims, &n.dims, &flat)
        })
        .collect())
}

fn stack_rows(f: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Mat {
    if rows.is_empty() {
        Mat::zero(f, 0, cols)
    } else {
        Mat::from_rows(f, rows)
    }
}

/// The submodule spanned by the given rows (one matrix of spanning rows per
/// vertex), with its embedding. Fails when the rows do not span a
/// subrepresentation.
pub fn submodule(m: &Module, rows: &[Mat]) -> Result<(Module, ModMap)> {
    let alg = &m.alg;
    let f = alg.field;
    assert_eq!(rows.len(), alg.n_vertices, "one row block per vertex");
    let bases: Vec<Subspace> = rows.iter().map(Subspace::from_rows).collect();
    for (i, b) in bases.iter().enumerate() {
        assert_eq!(b.ambient, m.dims[i], "ambient dimension at vertex {i}");
    }
    for k in alg.n_vertices..alg.dim {
        let (s, t) = alg.grading[k];
        let image = bases[s].basis_rows().mul(&m.act[k]);
        for r in 0..image.rows {
            let row = Mat::from_rows(f, vec![image.row(r).to_vec()]);
            if !bases[t].contains_row(&row) {
                return Err(Error::PreconditionFailed(format!(
                    "rows are not closed under the action at vertex {}",
                    s + 1
                )));
            }
        }
    }
    let dims: Vec<usize> = bases.iter().map(Subspace::dim).collect();
    let mut act = Vec::with_capacity(alg.dim);
    for k in 0..alg.dim {
        let (s, t) = alg.grading[k];
        let image = bases[s].basis_rows().mul(&m.act[k]);
        let coords = image
            .in_terms_of_rows(bases[t].basis_rows())
            .expect("invariance was just checked");
        act.push(coords);
    }
    let sub = Module {
        alg: Arc::clone(alg),
        dims,
        act,
    };
    debug_assert!(sub.verify().is_ok());
    let emb = ModMap {
        blocks: bases.iter().map(|b| b.basis_rows().clone()).collect(),
    };
    debug_assert!(verify_map(&sub, m, &emb));
    Ok((sub, emb))
}

/// The quotient by the submodule spanned by the given rows, with the
/// projection map. Fails when the rows do not span a subrepresentation.
pub fn quotient_module(m: &Module, rows: &[Mat]) -> Result<(Module, ModMap)> {
    let alg = &m.alg;
    let f = alg.field;
    // Reuse the invariance check.
    submodule(m, rows)?;
    let bases: Vec<Subspace> = rows.iter().map(Subspace::from_rows).collect();
    let nv = alg.n_vertices;
    // Per vertex: the non-pivot coordinates survive into the quotient.
    let mut nonpivot: Vec<Vec<usize>> = Vec::with_capacity(nv);
    let mut reduce: Vec<Mat> = Vec::with_capacity(nv); // dims[i] x q_i
    let mut lift: Vec<Mat> = Vec::with_capacity(nv); // q_i x dims[i]
    for i in 0..nv {
        let basis = bases[i].basis_rows();
        let mut pivots = Vec::with_capacity(basis.rows);
        for r in 0..basis.rows {
            let p = (0..basis.cols)
                .find(|&c| !f.is_zero(basis.get(r, c)))
                .expect("echelon rows are nonzero");
            pivots.push(p);
        }
        let np: Vec<usize> = (0..m.dims[i]).filter(|c| !pivots.contains(c)).collect();
        let q = np.len();
        let mut red = Mat::zero(f, m.dims[i], q);
        for j in 0..m.dims[i] {
            let mut v = vec![f.zero(); m.dims[i]];
            v[j] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                let c = v[p].clone();
                if f.is_zero(&c) {
                    continue;
                }
                for col in 0..m.dims[i] {
                    let delta = f.mul(&c, basis.get(r, col));
                    v[col] = f.sub(&v[col], &delta);
                }
            }
            for (qc, &col) in np.iter().enumerate() {
                red.set(j, qc, v[col].clone());
            }
        }
        let mut lf = Mat::zero(f, q, m.dims[i]);
        for (qc, &col) in np.iter().enumerate() {
            lf.set(qc, col, f.one());
        }
        nonpivot.push(np);
        reduce.push(red);
        lift.push(lf);
    }
    let dims: Vec<usize> = nonpivot.iter().map(Vec::len).collect();
    let mut act = Vec::with_capacity(alg.dim);
    for k in 0..alg.dim {
        let (s, t) = alg.grading[k];
        act.push(lift[s].mul(&m.act[k]).mul(&reduce[t]));
    }
    let quot = Module {
        alg: Arc::clone(alg),
        dims,
        act,
    };
    debug_assert!(quot.verify().is_ok());
    let proj = ModMap { blocks: reduce };
    debug_assert!(verify_map(m, &quot, &proj));
    Ok((quot, proj))
}

/// Kernel of a map as a submodule of its source.
pub fn kernel_submodule(m: &Module, n: &Module, f: &ModMap) -> (Module, ModMap) {
    debug_assert!(verify_map(m, n, f));
    let field = m.alg.field;
    let rows: Vec<Mat> = (0..m.dims.len())
        .map(|i| {
            let kerns = f.blocks[i].left_kernel();
            let rows: Vec<Vec<Scalar>> = kerns.iter().map(|k| k.row(0).to_vec()).collect();
            stack_rows(field, m.dims[i], rows)
        })
        .collect();
    submodule(m, &rows).expect("kernel of a morphism is a submodule")
}

/// Image of a map as a submodule of its target.
pub fn image_submodule(m: &Module, n: &Module, f: &ModMap) -> (Module, ModMap) {
    debug_assert!(verify_map(m, n, f));
    let rows: Vec<Mat> = f.blocks.iter().cloned().collect();
    submodule(n, &rows).expect("image of a morphism is a submodule")
}

fn radical_rows(m: &Module) -> Vec<Mat> {
    let alg = &m.alg;
    let f = alg.field;
    let nv = alg.n_vertices;
    let mut per_vertex: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
    for k in nv..alg.dim {
        let (_, t) = alg.grading[k];
        for r in 0..m.act[k].rows {
            per_vertex[t].push(m.act[k].row(r).to_vec());
        }
    }
    (0..nv)
        .map(|i| stack_rows(f, m.dims[i], per_vertex[i].clone()))
        .collect()
}

/// The radical `m * rad A` as a submodule.
pub fn radical_submodule(m: &Module) -> (Module, ModMap) {
    let rows = radical_rows(m);
    submodule(m, &rows).expect("the radical is a submodule")
}

/// The socle, the largest submodule killed by the radical.
pub fn socle_submodule(m: &Module) -> (Module, ModMap) {
    let alg = &m.alg;
    let f = alg.field;
    let nv = alg.n_vertices;
    let rows: Vec<Mat> = (0..nv)
        .map(|i| {
            let mut h = Mat::zero(f, m.dims[i], 0);
            for k in nv..alg.dim {
                if alg.grading[k].0 == i {
                    h = h.hstack(&m.act[k]);
                }
            }
            let kerns = h.left_kernel();
            let rws: Vec<Vec<Scalar>> = kerns.iter().map(|k| k.row(0).to_vec()).collect();
            stack_rows(f, m.dims[i], rws)
        })
        .collect();
    submodule(m, &rows).expect("the socle is a submodule")
}

/// The top `m / m rad A` with the projection.
pub fn top_quotient(m: &Module) -> (Module, ModMap) {
    let rows = radical_rows(m);
    quotient_module(m, &rows).expect("the radical is a submodule")
}

/// The power `m * (rad A)^t` as a submodule (`t >= 1`).
pub fn radical_power_submodule(m: &Module, t: usize) -> (Module, ModMap) {
    assert!(t >= 1);
    let alg = &m.alg;
    let f = alg.field;
    let nv = alg.n_vertices;
    let mut spaces: Vec<Subspace> = radical_rows(m).iter().map(Subspace::from_rows).collect();
    for _ in 1..t {
        let mut next: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
        for k in nv..alg.dim {
            let (s, tt) = alg.grading[k];
            let image = spaces[s].basis_rows().mul(&m.act[k]);
            for r in 0..image.rows {
                next[tt].push(image.row(r).to_vec());
            }
        }
        spaces = (0..nv)
            .map(|i| Subspace::from_rows(&stack_rows(f, m.dims[i], next[i].clone())))
            .collect();
    }
    let rows: Vec<Mat> = spaces.iter().map(|s| s.basis_rows().clone()).collect();
    submodule(m, &rows).expect("a radical power is a submodule")
}

/// Dimension vectors of `m, m rad, m rad^2, ...` down to the last nonzero
/// term; the length is the Loewy length of the module.
pub fn radical_series(m: &Module) -> Vec<Vec<usize>> {
    let mut out = vec![m.dims.clone()];
    if m.is_zero() {
        return out;
    }
    let mut t = 1;
    loop {
        let (sub, _) = radical_power_submodule(m, t);
        if sub.is_zero() {
            return out;
        }
        out.push(sub.dims.clone());
        t += 1;
    }
}

/// Direct sum of modules over a common algebra.
pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Module]) -> DirectSum {
    let f = alg.field;
    let nv = alg.n_vertices;
    for p in parts {
        assert!(Arc::ptr_eq(&p.alg, alg), "summand over a different algebra");
    }
    let mut dims = vec![0usize; nv];
    for p in parts {
        for i in 0..nv {
            dims[i] += p.dims[i];
        }
    }
    let mut act = Vec::with_capacity(alg.dim);
    for k in 0..alg.dim {
        let (s, t) = alg.grading[k];
        let mut m = Mat::zero(f, dims[s], dims[t]);
        let mut ro = 0;
        let mut co = 0;
        for p in parts {
            let b = &p.act[k];
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(ro + r, co + c, b.get(r, c).clone());
                }
            }
            ro += p.dims[s];
            co += p.dims[t];
        }
        act.push(m);
    }
    let module = Module {
        alg: Arc::clone(alg),
        dims: dims.clone(),
        act,
    };
    debug_assert!(module.verify().is_ok());
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = vec![0usize; nv];
    for p in parts {
        let mut inj = Vec::with_capacity(nv);
        let mut prj = Vec::with_capacity(nv);
        for i in 0..nv {
            let mut a = Mat::zero(f, p.dims[i], dims[i]);
            for r in 0..p.dims[i] {
                a.set(r, offset[i] + r, f.one());
            }
            inj.push(a.clone());
            prj.push(a.transpose());
        }
        injections.push(ModMap { blocks: inj });
        projections.push(ModMap { blocks: prj });
        for i in 0..nv {
            offset[i] += p.dims[i];
        }
    }
    DirectSum {
        module,
        injections,
        projections,
    }
}

/// The projective cover of a module, computed from a basis of its top.
pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = &m.alg;
    let f = alg.field;
    let nv = alg.n_vertices;
    let rad = radical_rows(m);
    // Generators: unit vectors at the non-pivot coordinates of the radical.
    let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for i in 0..nv {
        let sub = Subspace::from_rows(&rad[i]);
        let basis = sub.basis_rows();
        let mut pivots = Vec::new();
        for r in 0..basis.rows {
            let p = (0..basis.cols)
                .find(|&c| !f.is_zero(basis.get(r, c)))
                .expect("echelon rows are nonzero");
            pivots.push(p);
        }
        for c in 0..m.dims[i] {
            if pivots.contains(&c) {
                continue;
            }
            let mut g = vec![f.zero(); m.dims[i]];
            g[c] = f.one();
            gens.push((i, g));
        }
    }
    let vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let projs: Vec<(Module, Vec<Vec<usize>>)> = vertices
        .iter()
        .map(|&v| Module::projective_with_basis(alg, v))
        .collect();
    let parts: Vec<Module> = projs.iter().map(|(p, _)| p.clone()).collect();
    let layouts: Vec<Vec<Vec<usize>>> = projs.into_iter().map(|(_, l)| l).collect();
    let sum = direct_sum(alg, &parts);
    let cover = sum.module;
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    let mut running = vec![0usize; nv];
    for p in &parts {
        offsets.push(running.clone());
        for i in 0..nv {
            running[i] += p.dims[i];
        }
    }
    let mut blocks: Vec<Mat> = (0..nv)
        .map(|j| Mat::zero(f, cover.dims[j], m.dims[j]))
        .collect();
    for (s_idx, (_, g)) in gens.iter().enumerate() {
        let grow = Mat::from_rows(f, vec![g.clone()]);
        for j in 0..nv {
            for (pos, &k) in layouts[s_idx][j].iter().enumerate() {
                let image = grow.mul(&m.act[k]);
                let row = offsets[s_idx][j] + pos;
                for c in 0..m.dims[j] {
                    blocks[j].set(row, c, image.get(0, c).clone());
                }
            }
        }
    }
    let map = ModMap { blocks };
    debug_assert!(verify_map(&cover, m, &map));
    for j in 0..nv {
        assert_eq!(
            map.blocks[j].rank(),
            m.dims[j],
            "a projective cover must be surjective"
        );
    }
    ProjectiveCover {
        vertices,
        cover,
        map,
        layouts,
        offsets,
    }
}

/// Whether the module is projective: its projective cover is an isomorphism.
pub fn is_projective(m: &Module) -> bool {
    projective_cover(m).cover.total_dim() == m.total_dim()
}

/// Whether the module is injective: its dual is projective over the opposite
/// algebra.
pub fn is_injective_module(m: &Module) -> bool {
    is_projective(&m.dual())
}

/// The start of a minimal projective resolution, with componentwise algebra
/// elements for the presentation map.
pub fn minimal_presentation(m: &Module) -> MinimalPresentation {
    let alg = &m.alg;
    let p0 = projective_cover(m);
    let (kmod, kemb) = kernel_submodule(&p0.cover, m, &p0.map);
    let p1 = projective_cover(&kmod);
    let d1 = p1.map.compose(&kemb);
    debug_assert!(verify_map(&p1.cover, &p0.cover, &d1));
    let mut components = Vec::with_capacity(p1.vertices.len());
    for l in 0..p1.vertices.len() {
        let a = p1.vertices[l];
        // The generator of summand l sits first in its own weight space.
        debug_assert_eq!(p1.layouts[l][a][0], a, "idempotent leads the layout");
        let row_idx = p1.offsets[l][a];
        let row = d1.blocks[a].row(row_idx);
        let mut per_target = Vec::with_capacity(p0.vertices.len());
        for k in 0..p0.vertices.len() {
            let off = p0.offsets[k][a];
            let ids = &p0.layouts[k][a];
            let mut x: SparseVec = Vec::new();
            for (pos, &id) in ids.iter().enumerate() {
                let c = row[off + pos].clone();
                if !alg.field.is_zero(&c) {
                    x.push((id, c));
                }
            }
            per_target.push(x);
        }
        components.push(per_target);
    }
    MinimalPresentation {
        p0,
        p1,
        d1,
        components,
    }
}

fn total_matrix(field: FieldSpec, dims: &[usize], blocks: &[Mat]) -> Mat {
    let total: usize = dims.iter().sum();
    let mut m = Mat::zero(field, total, total);
    let mut off = 0;
    for b in blocks {
        for r in 0..b.rows {
            for c in 0..b.cols {
                m.set(off + r, off + c, b.get(r, c).clone());
            }
        }
        off += b.rows;
    }
    m
}

/// Search the endomorphism candidates for a Fitting splitting. Returns the
/// row spans of two complementary nonzero submodules when one is found.
fn find_splitting(m: &Module, endb: &[ModMap]) -> Option<(Vec<Mat>, Vec<Mat>)> {
    let f = m.alg.field;
    let d = m.total_dim();
    let nv = m.dims.len();
    let mut candidates: Vec<Vec<(usize, i64)>> = Vec::new();
    for i in 0..endb.len() {
        candidates.push(vec![(i, 1)]);
    }
    for i in 0..endb.len() {
        for j in i + 1..endb.len() {
            candidates.push(vec![(i, 1), (j, 1)]);
        }
    }
    let mut rng = XorShift64::new(0x9e37_79b9_7f4a_7c15 ^ d as u64);
    for _ in 0..32 {
        let combo: Vec<(usize, i64)> = (0..endb.len())
            .map(|i| (i, rng.int_in(-3, 3)))
            .filter(|(_, c)| *c != 0)
            .collect();
        if !combo.is_empty() {
            candidates.push(combo);
        }
    }
    for combo in candidates {
        let mut g = ModMap::zero_map(m, m);
        for (i, c) in &combo {
            g = g.add(&endb[*i].scale(&f.from_i64(*c)));
        }
        let total = total_matrix(f, &m.dims, &g.blocks);
        let roots = total.minpoly().squarefree_part().field_roots();
        for lambda in roots {
            let powers: Vec<Mat> = (0..nv)
                .map(|i| {
                    let id = Mat::identity(f, m.dims[i]);
                    g.blocks[i].sub(&id.scale(&lambda)).pow(d)
                })
                .collect();
            let mut ker_rows: Vec<Mat> = Vec::with_capacity(nv);
            let mut kdim = 0;
            for p in &powers {
                let kerns = p.left_kernel();
                let rows: Vec<Vec<Scalar>> = kerns.iter().map(|k| k.row(0).to_vec()).collect();
                kdim += rows.len();
                ker_rows.push(stack_rows(f, p.rows, rows));
            }
            if kdim == 0 || kdim == d {
                continue;
            }
            let im_rows: Vec<Mat> = powers.iter().cloned().collect();
            let idim: usize = powers.iter().map(Mat::rank).sum();
            assert_eq!(kdim + idim, d, "Fitting decomposition at full power");
            return Some((ker_rows, im_rows));
        }
    }
    None
}

/// Dimension of `End(m)` and of its radical, through the trace form of the
/// endomorphism algebra.
pub fn end_radical_dims(m: &Module) -> Result<(usize, usize)> {
    let endb = hom(m, m)?;
    let de = endb.len();
    if de == 0 {
        return Ok((0, 0));
    }
    let f = m.alg.field;
    let flat_rows: Vec<Vec<Scalar>> = endb.iter().map(ModMap::flatten).collect();
    let flat = Mat::from_rows(f, flat_rows);
    let mul = |i: usize, j: usize| -> SparseVec {
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
    let rad = trace_form_radical(f, de, &mul)?;
    Ok((de, rad.dim()))
}

/// Decide indecomposability. Sound in both directions; may fail with
/// [`Error::DecompositionStalled`] when neither a splitting nor a certificate
/// of locality is found.
pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let endb = hom(m, m)?;
    if endb.len() == 1 {
        return Ok(true);
    }
    match end_radical_dims(m) {
        Ok((de, dr)) if de - dr == 1 => return Ok(true),
        Ok(_) => {}
        Err(Error::CharacteristicTooSmall(_)) => {}
        Err(e) => return Err(e),
    }
    if find_splitting(m, &endb).is_some() {
        return Ok(false);
    }
    Err(Error::DecompositionStalled(
        "no splitting found, but the endomorphism ring is not certified local".into(),
    ))
}

/// Split a module into indecomposable summands, each with its embedding.
pub fn decompose(m: &Module) -> Result<Vec<(Module, ModMap)>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let endb = hom(m, m)?;
    if endb.len() == 1 {
        return Ok(vec![(m.clone(), ModMap::identity(m))]);
    }
    if let Some((ker_rows, im_rows)) = find_splitting(m, &endb) {
        let (ma, ea) = submodule(m, &ker_rows).expect("Fitting kernel is a submodule");
        let (mb, eb) = submodule(m, &im_rows).expect("Fitting image is a submodule");
        let mut out = Vec::new();
        for (p, e) in decompose(&ma)? {
            out.push((p, e.compose(&ea)));
        }
        for (p, e) in decompose(&mb)? {
            out.push((p, e.compose(&eb)));
        }
        return Ok(out);
    }
    match end_radical_dims(m) {
        Ok((de, dr)) if de - dr == 1 => Ok(vec![(m.clone(), ModMap::identity(m))]),
        Ok(_) => Err(Error::DecompositionStalled(format!(
            "no splitting among {} endomorphism candidates",
            endb.len()
        ))),
        Err(Error::CharacteristicTooSmall(msg)) => Err(Error::DecompositionStalled(format!(
            "no splitting found and locality is undecidable: {msg}"
        ))),
        Err(e) => Err(e),
    }
}

/// Search for an isomorphism. `Ok(None)` is a proof that none exists;
/// [`Error::IsoSearchInconclusive`] is an honest "do not know".
pub fn find_iso(m: &Module, n: &Module) -> Result<Option<ModMap>> {
    same_algebra(m, n)?;
    if m.dims != n.dims {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModMap::identity(m)));
    }
    let f = m.alg.field;
    let h_mn = hom(m, n)?;
    let h_nm = hom(n, m)?;
    if h_mn.is_empty() || h_nm.is_empty() {
        return Ok(None);
    }
    for cand in &h_mn {
        if cand.is_iso() {
            return Ok(Some(cand.clone()));
        }
    }
    let d = m.total_dim();
    // With a local endomorphism ring on either side, every roundtrip
    // composite is invertible or nilpotent. An invertible composite exhibits
    // an isomorphism; if every basis composite is nilpotent they all lie in
    // the radical, so by bilinearity no combination can be invertible either,
    // and the two modules are provably not isomorphic.
    if matches!(end_radical_dims(m), Ok((de, dr)) if de - dr == 1) {
        let mut all_nilpotent = true;
        for p in &h_mn {
            for q in &h_nm {
                let c = p.compose(q);
                if c.is_iso() {
                    return Ok(Some(p.clone()));
                }
                if !total_matrix(f, &m.dims, &c.blocks).pow(d).is_zero() {
                    all_nilpotent = false;
                }
            }
        }
        if all_nilpotent {
            return Ok(None);
        }
    } else if matches!(end_radical_dims(n), Ok((de, dr)) if de - dr == 1) {
        let mut all_nilpotent = true;
        for q in &h_nm {
            for p in &h_mn {
                let c = q.compose(p);
                if c.is_iso() {
                    return Ok(Some(q.inverse().expect("invertible roundtrip")));
                }
                if !total_matrix(f, &n.dims, &c.blocks).pow(d).is_zero() {
                    all_nilpotent = false;
                }
            }
        }
        if all_nilpotent {
            return Ok(None);
        }
    }
    for i in 0..h_mn.len() {
        for j in i + 1..h_mn.len() {
            let cand = h_mn[i].add(&h_mn[j]);
            if cand.is_iso() {
                return Ok(Some(cand));
            }
        }
    }
    let mut rng = XorShift64::new(0xd1b5_4a32_d192_ed03 ^ d as u64);
    for _ in 0..32 {
        let mut cand = ModMap::zero_map(m, n);
        for e in &h_mn {
            cand = cand.add(&e.scale(&f.from_i64(rng.int_in(-3, 3))));
        }
        if cand.is_iso() {
            return Ok(Some(cand));
        }
    }
    Err(Error::IsoSearchInconclusive(
        "no invertible combination found and the source is not certified indecomposable".into(),
    ))
}

/// The transpose over the opposite algebra: the cokernel of the dualised
/// minimal presentation. Projective summands are dropped first, so the
/// result of a projective module is zero.
pub fn transpose_module(m: &Module) -> Result<Module> {
    let alg = &m.alg;
    let op = alg.opposite();
    let parts = decompose(m)?;
    let nonproj: Vec<Module> = parts
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| !is_projective(p))
        .collect();
    if nonproj.is_empty() {
        return Ok(Module::zero(&op));
    }
    let md = direct_sum(alg, &nonproj).module;
    let pres = minimal_presentation(&md);
    // Dualising Hom(-, A) swaps the roles of the two projective terms: the
    // map now runs from the duals of the p0 summands to the duals of the p1
    // summands, acting by right multiplication with the same components.
    let sources: Vec<(Module, Vec<Vec<usize>>)> = pres
        .p0
        .vertices
        .iter()
        .map(|&v| Module::projective_with_basis(&op, v))
        .collect();
    let targets: Vec<(Module, Vec<Vec<usize>>)> = pres
        .p1
        .vertices
        .iter()
        .map(|&v| Module::projective_with_basis(&op, v))
        .collect();
    let src_parts: Vec<Module> = sources.iter().map(|(p, _)| p.clone()).collect();
    let tgt_parts: Vec<Module> = targets.iter().map(|(p, _)| p.clone()).collect();
    let q0 = direct_sum(&op, &src_parts).module;
    let q1 = direct_sum(&op, &tgt_parts).module;
    let nv = op.n_vertices;
    let f = op.field;
    let mut src_off = vec![vec![0usize; nv]; src_parts.len()];
    let mut running = vec![0usize; nv];
    for (k, p) in src_parts.iter().enumerate() {
        src_off[k] = running.clone();
        for i in 0..nv {
            running[i] += p.dims[i];
        }
    }
    let mut tgt_off = vec![vec![0usize; nv]; tgt_parts.len()];
    running = vec![0usize; nv];
    for (l, p) in tgt_parts.iter().enumerate() {
        tgt_off[l] = running.clone();
        for i in 0..nv {
            running[i] += p.dims[i];
        }
    }
    let mut blocks: Vec<Mat> = (0..nv)
        .map(|j| Mat::zero(f, q0.dims[j], q1.dims[j]))
        .collect();
    for (k, (_, src_layout)) in sources.iter().enumerate() {
        for j in 0..nv {
            for (pos, &y) in src_layout[j].iter().enumerate() {
                let row = src_off[k][j] + pos;
                let yvec: SparseVec = vec![(y, f.one())];
                for (l, (_, tgt_layout)) in targets.iter().enumerate() {
                    let x = &pres.components[l][k];
                    if x.is_empty() {
                        continue;
                    }
                    // The product is taken in the original algebra; its terms
                    // land in the weight space of the target dual summand.
                    let prod = alg.mul(&yvec, x);
                    for (z, c) in prod {
                        let col = tgt_off[l][j]
                            + tgt_layout[j]
                                .binary_search(&z)
                                .expect("product lies in the dual projective");
                        let old = blocks[j].get(row, col).clone();
                        blocks[j].set(row, col, f.add(&old, &c));
                    }
                }
            }
        }
    }
    let phi = ModMap { blocks };
    debug_assert!(verify_map(&q0, &q1, &phi));
    let image: Vec<Mat> = phi.blocks.clone();
    let (tr, _) = quotient_module(&q1, &image)?;
    Ok(tr)
}

/// The translate `D Tr`. Fails with [`Error::UndefinedTranslate`] when the
/// module has no non-projective summand.
pub fn tau(m: &Module) -> Result<Module> {
    let tr = transpose_module(m)?;
    if tr.is_zero() {
        return Err(Error::UndefinedTranslate(
            "the module is projective, so D Tr vanishes".into(),
        ));
    }
    Ok(tr.dual())
}

/// The inverse translate `Tr D`. Fails with [`Error::UndefinedTranslate`]
/// when the module has no non-injective summand.
pub fn tau_inv(m: &Module) -> Result<Module> {
    let tr = transpose_module(&m.dual())?;
    if tr.is_zero() {
        return Err(Error::UndefinedTranslate(
            "the module is injective, so Tr D vanishes".into(),
        ));
    }
    Ok(tr)
}

/// The right annihilator `{a in A : m a = 0}` as a subspace of the algebra.
pub fn right_annihilator(m: &Module) -> Subspace {
    let alg = &m.alg;
    let f = alg.field;
    // A combination sum c_k b_k annihilates m iff sum c_k act[k] = 0; the
    // gradings keep the conditions per basis element independent except
    // within a common (source, target) pair.
    let mut cols = 0;
    let mut col_of = Vec::with_capacity(alg.dim);
    for &(s, t) in &alg.grading {
        col_of.push(cols);
        cols += m.dims[s] * m.dims[t];
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(alg.dim);
    for k in 0..alg.dim {
        let mut row = vec![f.zero(); cols];
        let (s, t) = alg.grading[k];
        let b = &m.act[k];
        for r in 0..m.dims[s] {
            for c in 0..m.dims[t] {
                row[col_of[k] + r * m.dims[t] + c] = b.get(r, c).clone();
            }
        }
        rows.push(row);
    }
    if cols == 0 {
        return Subspace::full(f, alg.dim);
    }
    let mat = Mat::from_rows(f, rows);
    let kerns = mat.left_kernel();
    let kr: Vec<Vec<Scalar>> = kerns.iter().map(|k| k.row(0).to_vec()).collect();
    Subspace::from_rows(&stack_rows(f, alg.dim, kr))
}

/// The permutation `v -> w` with `soc P(v) = S(w)`, defined exactly for
/// selfinjective algebras.
pub fn nakayama_permutation(alg: &Arc<Algebra>) -> Result<Vec<usize>> {
    if !is_selfinjective(alg) {
        return Err(Error::NotSelfinjective(
            "the regular module is not injective".into(),
        ));
    }
    let nv = alg.n_vertices;
    let mut perm = vec![0usize; nv];
    let mut seen = vec![false; nv];
    for v in 0..nv {
        let p = Module::projective(alg, v);
        let (soc, _) = socle_submodule(&p);
        if soc.total_dim() != 1 {
            return Err(Error::NotSelfinjective(format!(
                "socle of the projective at vertex {} is not simple",
                v + 1
            )));
        }
        let w = soc
            .dims
            .iter()
            .position(|&d| d == 1)
            .expect("one dimensional socle");
        perm[v] = w;
        if seen[w] {
            return Err(Error::NotSelfinjective(
                "two projectives share their socle".into(),
            ));
        }
        seen[w] = true;
    }
    Ok(perm)
}

/// Whether the algebra is selfinjective: the regular module is injective.
pub fn is_selfinjective(alg: &Arc<Algebra>) -> bool {
    is_injective_module(&Module::regular(alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bound_quiver_algebra, Arrow, Quiver, Relation};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// The path algebra of 1 -> 2 -> ... -> n.
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

    /// The selfinjective algebra on a cyclic quiver with two vertices and all
    /// paths of length two equal to zero.
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

    #[test]
    fn projectives_of_the_linear_quiver_have_path_bases() {
        let a = linear(3);
        let p1 = Module::projective(&a, 0);
        assert_eq!(p1.dims, vec![1, 1, 1]);
        let p2 = Module::projective(&a, 1);
        assert_eq!(p2.dims, vec![0, 1, 1]);
        let p3 = Module::projective(&a, 2);
        assert_eq!(p3.dims, vec![0, 0, 1]);
        assert!(p1.verify().is_ok());
        let s2 = Module::simple(&a, 1);
        assert_eq!(s2.dims, vec![0, 1, 0]);
    }

    #[test]
    fn injectives_of_the_linear_quiver() {
        let a = linear(3);
        let i1 = Module::injective(&a, 0);
        assert_eq!(i1.dims, vec![1, 0, 0]);
        let i3 = Module::injective(&a, 2);
        assert_eq!(i3.dims, vec![1, 1, 1]);
        // On this quiver the injective at the sink is the projective at the
        // source.
        let p1 = Module::projective(&a, 0);
        let iso = find_iso(&i3, &p1).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn hom_from_a_projective_has_the_weight_space_dimension() {
        let a = linear(3);
        let mods: Vec<Module> = (0..3).map(|v| Module::projective(&a, v)).collect();
        for v in 0..3 {
            for m in &mods {
                let h = hom(&mods[v], m).unwrap();
                assert_eq!(h.len(), m.dims[v], "Hom(P({}), -)", v + 1);
                for f in &h {
                    assert!(verify_map(&mods[v], m, f));
                }
            }
        }
    }

    #[test]
    fn endomorphisms_of_projectives_are_scalars() {
        let a = linear(3);
        for v in 0..3 {
            let p = Module::projective(&a, v);
            assert_eq!(hom(&p, &p).unwrap().len(), 1);
            assert!(is_indecomposable(&p).unwrap());
        }
    }

    #[test]
    fn regular_module_splits_into_the_projectives() {
        let a = linear(3);
        let reg = Module::regular(&a);
        let parts = decompose(&reg).unwrap();
        assert_eq!(parts.len(), 3);
        let mut found = vec![false; 3];
        for (part, emb) in &parts {
            assert!(verify_map(part, &reg, emb));
            assert!(emb.is_monic());
            for v in 0..3 {
                let p = Module::projective(&a, v);
                if find_iso(part, &p).unwrap().is_some() {
                    found[v] = true;
                }
            }
        }
        assert!(found.iter().all(|&b| b));
    }

    #[test]
    fn direct_sum_maps_are_inverse_on_summands() {
        let a = linear(3);
        let p1 = Module::projective(&a, 0);
        let s2 = Module::simple(&a, 1);
        let sum = direct_sum(&a, &[p1.clone(), s2.clone()]);
        assert_eq!(sum.module.dims, vec![1, 2, 1]);
        let round = sum.injections[0].compose(&sum.projections[0]);
        assert!(round.is_iso());
        let cross = sum.injections[0].compose(&sum.projections[1]);
        assert!(cross.is_zero());
    }

    #[test]
    fn radical_and_socle_series_of_a_uniserial_projective() {
        let a = linear(3);
        let p1 = Module::projective(&a, 0);
        let (rad, _) = radical_submodule(&p1);
        assert_eq!(rad.dims, vec![0, 1, 1]);
        let (soc, _) = socle_submodule(&p1);
        assert_eq!(soc.dims, vec![0, 0, 1]);
        let (top, _) = top_quotient(&p1);
        assert_eq!(top.dims, vec![1, 0, 0]);
        assert_eq!(
            radical_series(&p1),
            vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]
        );
    }

    #[test]
    fn dual_is_an_involution() {
        let a = linear(3);
        let p1 = Module::projective(&a, 0);
        let dd = p1.dual().dual();
        assert!(Arc::ptr_eq(&dd.alg, &p1.alg));
        assert_eq!(dd.dims, p1.dims);
        for (x, y) in dd.act.iter().zip(&p1.act) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn projective_cover_of_a_simple_is_the_projective() {
        let a = linear(3);
        let s1 = Module::simple(&a, 0);
        let cover = projective_cover(&s1);
        assert_eq!(cover.vertices, vec![0]);
        assert_eq!(cover.cover.dims, vec![1, 1, 1]);
        let (ker, _) = kernel_submodule(&cover.cover, &s1, &cover.map);
        assert_eq!(ker.dims, vec![0, 1, 1]);
        let s3 = Module::simple(&a, 2);
        assert!(is_projective(&s3));
        assert!(!is_projective(&s1));
    }

    #[test]
    fn minimal_presentation_of_a_simple_records_the_arrow() {
        let a = linear(3);
        let s1 = Module::simple(&a, 0);
        let pres = minimal_presentation(&s1);
        assert_eq!(pres.p0.vertices, vec![0]);
        assert_eq!(pres.p1.vertices, vec![1]);
        // The component is the arrow from vertex 1 to vertex 2, which is the
        // first basis element after the three idempotents.
        assert_eq!(pres.components.len(), 1);
        assert_eq!(pres.components[0].len(), 1);
        let x = &pres.components[0][0];
        assert_eq!(x.len(), 1);
        assert_eq!(x[0].0, 3);
        assert!(q().is_one(&x[0].1));
    }

    #[test]
    fn translate_on_the_two_vertex_quiver() {
        let a = linear(2);
        let s1 = Module::simple(&a, 0);
        let t = tau(&s1).unwrap();
        assert!(Arc::ptr_eq(&t.alg, &a));
        assert_eq!(t.dims, vec![0, 1]);
        let p1 = Module::projective(&a, 0);
        assert!(matches!(tau(&p1), Err(Error::UndefinedTranslate(_))));
    }

    #[test]
    fn translate_roundtrip_on_the_three_vertex_quiver() {
        let a = linear(3);
        // The three non-projective indecomposables: the two non-projective
        // simples and the interval supported on vertices 1 and 2, obtained
        // as P(1) modulo its socle.
        let s1 = Module::simple(&a, 0);
        let s2 = Module::simple(&a, 1);
        let p1 = Module::projective(&a, 0);
        let soc_emb = socle_submodule(&p1).1;
        let (m12, _) = quotient_module(&p1, &soc_emb.blocks).unwrap();
        assert_eq!(m12.dims, vec![1, 1, 0]);
        for m in [&s1, &s2, &m12] {
            let t = tau(m).unwrap();
            let back = tau_inv(&t).unwrap();
            assert_eq!(back.dims, m.dims);
            assert!(find_iso(&back, m).unwrap().is_some());
        }
    }

    #[test]
    fn translate_on_the_selfinjective_cyclic_algebra() {
        let a = cyclic_two();
        let s1 = Module::simple(&a, 0);
        let t = tau(&s1).unwrap();
        assert_eq!(t.dims, vec![0, 1]);
        let tt = tau(&t).unwrap();
        assert_eq!(tt.dims, vec![1, 0]);
    }

    #[test]
    fn selfinjectivity_and_the_socle_permutation() {
        let a = cyclic_two();
        assert!(is_selfinjective(&a));
        assert_eq!(nakayama_permutation(&a).unwrap(), vec![1, 0]);
        let b = linear(3);
        assert!(!is_selfinjective(&b));
        assert!(matches!(
            nakayama_permutation(&b),
            Err(Error::NotSelfinjective(_))
        ));
    }

    #[test]
    fn submodule_rejects_rows_not_closed_under_the_action() {
        let a = linear(3);
        let p1 = Module::projective(&a, 0);
        let f = q();
        let rows = vec![
            Mat::identity(f, 1),
            Mat::zero(f, 0, 1),
            Mat::zero(f, 0, 1),
        ];
        assert!(matches!(
            submodule(&p1, &rows),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn right_annihilator_of_a_simple() {
        let a = linear(3);
        let s3 = Module::simple(&a, 2);
        let ann = right_annihilator(&s3);
        // Everything except the idempotent at vertex 3 kills S(3).
        assert_eq!(ann.dim(), a.dim - 1);
        let reg = Module::regular(&a);
        assert_eq!(right_annihilator(&reg).dim(), 0);
    }

    #[test]
    fn find_iso_distinguishes_non_isomorphic_modules_of_equal_dims() {
        let a = cyclic_two();
        // P(1) and S(1) + S(2) share the dimension vector (1, 1).
        let p1 = Module::projective(&a, 0);
        let ss = direct_sum(
            &a,
            &[Module::simple(&a, 0), Module::simple(&a, 1)],
        )
        .module;
        assert_eq!(p1.dims, ss.dims);
        assert!(find_iso(&p1, &ss).unwrap().is_none());
        assert!(find_iso(&ss, &p1).unwrap().is_none());
        assert!(!is_indecomposable(&ss).unwrap());
    }

    #[test]
    fn decompose_splits_a_sum_of_isomorphic_simples() {
        let a = linear(2);
        let s = Module::simple(&a, 0);
        let sum = direct_sum(&a, &[s.clone(), s.clone()]).module;
        let parts = decompose(&sum).unwrap();
        assert_eq!(parts.len(), 2);
        for (p, _) in &parts {
            assert!(find_iso(p, &s).unwrap().is_some());
        }
    }

    proptest! {
        #[test]
        fn hom_from_projectives_matches_weight_spaces(n in 2usize..5, v in 0usize..4, w in 0usize..4) {
            prop_assume!(v < n && w < n);
            let a = linear(n);
            let pv = Module::projective(&a, v);
            let pw = Module::projective(&a, w);
            let h = hom(&pv, &pw).unwrap();
            prop_assert_eq!(h.len(), pw.dims[v]);
        }

        #[test]
        fn cover_surjections_have_projective_kernels_of_matching_dimension(n in 2usize..5, v in 0usize..4) {
            prop_assume!(v < n);
            let a = linear(n);
            let s = Module::simple(&a, v);
            let cover = projective_cover(&s);
            prop_assert_eq!(cover.cover.total_dim(), n - v);
            let (ker, _) = kernel_submodule(&cover.cover, &s, &cover.map);
            // Over a hereditary algebra every submodule of a projective is
            // projective.
            prop_assert!(is_projective(&ker));
        }
    }
}
