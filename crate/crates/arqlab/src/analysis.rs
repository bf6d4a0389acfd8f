//! Certificate-producing analyses of a module category: short cycle
//! detection, annihilator and trace ideals, deforming ideals and the glued
//! algebra they induce, Nakayama structure, stable slices of the
//! Auslander-Reiten quiver, and the end-to-end chain that re-derives a
//! short-cycle-free verdict structurally.
//!
//! A short cycle is a pair of indecomposables X, Y with nonzero
//! nonisomorphisms X -> Y -> X; X = Y is allowed, in which case the two maps
//! are radical endomorphisms. [`theorem_check`] brute-forces the verdict
//! over the knitted Auslander-Reiten quiver and, when no cycle exists,
//! re-derives it structurally: a selfinjective Nakayama algebra goes through
//! the radical-series pipeline, anything else through a semiregular doubly
//! tau-rigid stable slice. Every intermediate claim is recorded as a named
//! boolean in the certificate so a verdict can be re-audited step by step;
//! a violated clause that the structure theory guarantees surfaces as
//! [`Error::InternalInconsistency`] (always a bug, never bad user input).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::algebra::{dense_to_sparse, sparse_to_dense, Algebra, Quiver, SparseVec};
use crate::artheory::{dynkin_class_of_graph, knit, stable_part, ARQuiver, Budgets, StablePart};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::mat::{Mat, Subspace};
use crate::module::{self, ModMap, Module};

// ---------------------------------------------------------------------------
// Annihilators, trace ideals, residual identities.

/// Which side of the product with the given set must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `z` with `z * x = 0` for all `x` in the set.
    Left,
    /// `z` with `x * z = 0` for all `x` in the set.
    Right,
}

/// Annihilator of a subspace inside the algebra. The left annihilator of a
/// right ideal and the right annihilator of a left ideal are two-sided.
pub fn annihilator(a: &Algebra, x: &Subspace, side: Side) -> Subspace {
    let f = a.field;
    let n = a.dim;
    assert_eq!(x.ambient, n, "subspace lives in a different algebra");
    if x.dim() == 0 {
        return Subspace::full(f, n);
    }
    // Row k of the system is the concatenation of b_k * x_r (or x_r * b_k)
    // over the basis rows x_r; the annihilator is the left kernel.
    let mut sys = Mat::zero(f, n, x.dim() * n);
    for k in 0..n {
        let bk: SparseVec = vec![(k, f.one())];
        for r in 0..x.dim() {
            let xr = dense_to_sparse(f, x.basis_rows().row(r));
            let prod = match side {
                Side::Left => a.mul(&bk, &xr),
                Side::Right => a.mul(&xr, &bk),
            };
            for (c, coef) in prod {
                sys.set(k, r * n + c, coef);
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = sys
        .left_kernel()
        .into_iter()
        .map(|m| m.row(0).to_vec())
        .collect();
    if rows.is_empty() {
        Subspace::zero(f, n)
    } else {
        Subspace::from_rows(&Mat::from_rows(f, rows))
    }
}

/// The socle of the regular right module, as a subspace of the algebra:
/// everything killed by right multiplication with the radical.
pub fn regular_socle(a: &Algebra) -> Subspace {
    annihilator(a, &a.radical(), Side::Left)
}

/// The trace ideal of a module: the span of the images of all homomorphisms
/// into the regular module. Always a two-sided ideal.
pub fn trace_ideal(m: &Module) -> Result<Subspace> {
    let a = &m.alg;
    let f = a.field;
    let nv = a.n_vertices;
    // Regular module assembled from the projectives so that each coordinate
    // carries its algebra basis id.
    let mut parts = Vec::with_capacity(nv);
    let mut dict: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for v in 0..nv {
        let (p, ids) = Module::projective_with_basis(a, v);
        for (w, list) in ids.into_iter().enumerate() {
            dict[w].extend(list);
        }
        parts.push(p);
    }
    let reg = module::direct_sum(a, &parts).module;
    let mut rows = Vec::new();
    for map in module::hom(m, &reg)? {
        for v in 0..nv {
            let b = &map.blocks[v];
            for r in 0..b.rows {
                let mut row = vec![f.zero(); a.dim];
                for c in 0..b.cols {
                    row[dict[v][c]] = b.get(r, c).clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::zero(f, a.dim));
    }
    Ok(Subspace::from_rows(&Mat::from_rows(f, rows)))
}

/// The vertices whose idempotents survive outside the ideal ("residual
/// identity" of the quotient).
pub fn residual_identity(a: &Algebra, ideal: &Subspace) -> Vec<usize> {
    let f = a.field;
    (0..a.n_vertices)
        .filter(|&v| {
            let row = Mat::from_rows(f, vec![unit_row(f, a.dim, v)]);
            !ideal.contains_row(&row)
        })
        .collect()
}

fn unit_row(f: FieldSpec, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    v
}

fn sub_eq(x: &Subspace, y: &Subspace) -> bool {
    x.dim() == y.dim() && x.contains(y)
}

/// Zero out every coordinate whose grading the predicate rejects. Because
/// the idempotents are vertex sums, this computes products like `I * e` and
/// `e * I` for graded subspaces without any multiplication.
fn masked(a: &Algebra, x: &Subspace, keep: impl Fn(usize, usize) -> bool) -> Subspace {
    let f = a.field;
    let mut rows = Vec::new();
    for r in 0..x.dim() {
        let mut row = x.basis_rows().row(r).to_vec();
        for (k, val) in row.iter_mut().enumerate() {
            let (s, t) = a.grading[k];
            if !keep(s, t) {
                *val = f.zero();
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Subspace::zero(f, a.dim);
    }
    Subspace::from_rows(&Mat::from_rows(f, rows))
}

/// Check that a subspace is a graded two-sided ideal.
fn validate_ideal(a: &Algebra, x: &Subspace) -> Result<()> {
    let f = a.field;
    if x.ambient != a.dim {
        return Err(Error::InvalidParameter(
            "ideal lives in a different algebra".into(),
        ));
    }
    for r in 0..x.dim() {
        let row = x.basis_rows().row(r);
        let mut comp: Option<(usize, usize)> = None;
        for (k, c) in row.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            match comp {
                None => comp = Some(a.grading[k]),
                Some(g) if g == a.grading[k] => {}
                _ => {
                    return Err(Error::PreconditionFailed(
                        "the ideal is not graded".into(),
                    ))
                }
            }
        }
        let xr = dense_to_sparse(f, row);
        for k in 0..a.dim {
            let bk: SparseVec = vec![(k, f.one())];
            for prod in [a.mul(&bk, &xr), a.mul(&xr, &bk)] {
                let dense = sparse_to_dense(f, &prod, a.dim);
                if !x.contains_row(&Mat::from_rows(f, vec![dense])) {
                    return Err(Error::PreconditionFailed(
                        "the subspace is not a two-sided ideal".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Deforming ideals.

/// Outcome of the deforming-ideal axioms and their companion identities on a
/// graded two-sided ideal `I` of a selfinjective algebra, with `e` the sum
/// of the idempotents outside `I`.
#[derive(Clone, Debug)]
pub struct DeformingReport {
    pub ideal_dim: usize,
    /// Vertices whose idempotents survive outside the ideal.
    pub residual: Vec<usize>,
    /// l_{eAe}(I) = eIe = r_{eAe}(I).
    pub corner_condition: bool,
    /// The Gabriel quiver of A/I is acyclic.
    pub quotient_acyclic: bool,
    /// I e I = 0.
    pub iei_zero: bool,
    /// l_A(I) = Ie.
    pub left_ann_is_ie: bool,
    /// r_A(I) = eI.
    pub right_ann_is_ei: bool,
    /// soc(A) is contained in I.
    pub socle_inside: bool,
}

impl DeformingReport {
    /// The two defining axioms (corner condition and acyclic quotient).
    pub fn is_deforming(&self) -> bool {
        self.corner_condition && self.quotient_acyclic
    }
}

/// Evaluate the deforming-ideal axioms on a graded two-sided ideal of a
/// selfinjective algebra. When `IeI = 0` the two annihilator identities are
/// equivalent; a disagreement is reported as an internal inconsistency.
pub fn deforming_ideal_check(a: &Arc<Algebra>, ideal: &Subspace) -> Result<DeformingReport> {
    if !module::is_selfinjective(a) {
        return Err(Error::NotSelfinjective(
            "deforming ideals are defined over selfinjective algebras".into(),
        ));
    }
    validate_ideal(a, ideal)?;
    let f = a.field;
    let residual = residual_identity(a, ideal);
    let e: BTreeSet<usize> = residual.iter().copied().collect();
    let in_e = |v: usize| e.contains(&v);

    let ie = masked(a, ideal, |_, t| in_e(t));
    let ei = masked(a, ideal, |s, _| in_e(s));
    let eie = masked(a, ideal, |s, t| in_e(s) && in_e(t));

    // IeI = 0: products of an Ie basis with an I basis.
    let mut iei_zero = true;
    'outer: for r in 0..ie.dim() {
        let x = dense_to_sparse(f, ie.basis_rows().row(r));
        for s in 0..ideal.dim() {
            let y = dense_to_sparse(f, ideal.basis_rows().row(s));
            if !a.mul(&x, &y).is_empty() {
                iei_zero = false;
                break 'outer;
            }
        }
    }

    let left_ann = annihilator(a, ideal, Side::Left);
    let right_ann = annihilator(a, ideal, Side::Right);
    let corner: Vec<usize> = (0..a.dim)
        .filter(|&k| {
            let (s, t) = a.grading[k];
            in_e(s) && in_e(t)
        })
        .collect();
    let corner_space = coordinate_span(f, a.dim, &corner);
    let corner_condition = sub_eq(&left_ann.intersect(&corner_space), &eie)
        && sub_eq(&eie, &right_ann.intersect(&corner_space));

    let quotient_acyclic = a.quotient(ideal)?.algebra.gabriel_quiver().0.is_acyclic();
    let left_ann_is_ie = sub_eq(&left_ann, &ie);
    let right_ann_is_ei = sub_eq(&right_ann, &ei);
    if iei_zero && left_ann_is_ie != right_ann_is_ei {
        return Err(Error::InternalInconsistency(format!(
            "IeI = 0 but l_A(I) = Ie is {left_ann_is_ie} while r_A(I) = eI is {right_ann_is_ei}"
        )));
    }
    let socle_inside = ideal.contains(&regular_socle(a));

    Ok(DeformingReport {
        ideal_dim: ideal.dim(),
        residual,
        corner_condition,
        quotient_acyclic,
        iei_zero,
        left_ann_is_ie,
        right_ann_is_ei,
        socle_inside,
    })
}

fn coordinate_span(f: FieldSpec, ambient: usize, coords: &[usize]) -> Subspace {
    if coords.is_empty() {
        return Subspace::zero(f, ambient);
    }
    let rows: Vec<Vec<Scalar>> = coords.iter().map(|&k| unit_row(f, ambient, k)).collect();
    Subspace::from_rows(&Mat::from_rows(f, rows))
}

// ---------------------------------------------------------------------------
// The glued algebra on eAe/eIe (+) I.

/// The algebra glued from the corner quotient `eAe/eIe` and the ideal `I`,
/// with multiplication `(b, x)(c, y) = (bc, by + xc + xy)`, together with
/// the invariant comparison against the original algebra.
#[derive(Clone, Debug)]
pub struct GluedAlgebra {
    pub algebra: Arc<Algebra>,
    /// Named invariant comparisons against the source algebra.
    pub checks: Vec<(String, bool)>,
}

impl GluedAlgebra {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Corner,
    Ideal,
}

/// Build the glued algebra of a deforming ideal. The corner condition makes
/// the multiplication well defined (eIe kills I from both sides), and the
/// structure constant verification re-certifies associativity.
pub fn glued_algebra(a: &Arc<Algebra>, ideal: &Subspace) -> Result<GluedAlgebra> {
    let rep = deforming_ideal_check(a, ideal)?;
    if !rep.is_deforming() {
        return Err(Error::PreconditionFailed(
            "the ideal is not deforming: corner or acyclicity axiom fails".into(),
        ));
    }
    let f = a.field;
    let n = a.dim;
    let nv = a.n_vertices;
    let e: BTreeSet<usize> = rep.residual.iter().copied().collect();
    let in_e = |v: usize| e.contains(&v);
    let eie = masked(a, ideal, |s, t| in_e(s) && in_e(t));

    // Corner part: coset representatives of eAe/eIe, graded component by
    // graded component, with the class of each surviving idempotent first in
    // its diagonal component.
    let mut corner_reps: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for &s in &rep.residual {
        for &t in &rep.residual {
            let mut cands: Vec<usize> = (0..n).filter(|&k| a.grading[k] == (s, t)).collect();
            if cands.is_empty() {
                continue;
            }
            if s == t {
                cands.retain(|&k| k != s);
                cands.insert(0, s);
            }
            let mut chosen: Vec<Vec<Scalar>> = Vec::new();
            let mut ech = EchelonSet::new(f);
            for k in cands {
                let mut v = unit_row(f, n, k);
                reduce_mod(f, eie.basis_rows(), &mut v);
                if ech.insert(&v) {
                    chosen.push(v);
                }
            }
            if !chosen.is_empty() {
                corner_reps.insert((s, t), chosen);
            }
        }
    }

    // Ideal part: the echelon basis split by graded component; on the
    // diagonal of a dead vertex, re-seed so the idempotent itself is the
    // first basis vector.
    let mut ideal_comp: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for r in 0..ideal.dim() {
        let row = ideal.basis_rows().row(r).to_vec();
        let k = row
            .iter()
            .position(|c| !f.is_zero(c))
            .expect("echelon basis rows are nonzero");
        ideal_comp.entry(a.grading[k]).or_default().push(row);
    }
    for v in 0..nv {
        if in_e(v) {
            continue;
        }
        let rows = ideal_comp.get_mut(&(v, v)).ok_or_else(|| {
            Error::InternalInconsistency(format!(
                "idempotent of dead vertex {v} is missing from the ideal"
            ))
        })?;
        let mut ech = EchelonSet::new(f);
        let unit = unit_row(f, n, v);
        ech.insert(&unit);
        let mut reseeded = vec![unit];
        for row in rows.iter() {
            let mut w = row.clone();
            ech.reduce(&mut w);
            if ech.insert(&w) {
                reseeded.push(w);
            }
        }
        if reseeded.len() != rows.len() {
            return Err(Error::InternalInconsistency(format!(
                "idempotent of dead vertex {v} is not inside the ideal component"
            )));
        }
        *rows = reseeded;
    }

    // Assemble the basis: vertex slots first, then the remaining corner
    // classes, then the remaining ideal vectors.
    struct Slot {
        part: Part,
        vec: Vec<Scalar>,
        grading: (usize, usize),
        label: String,
    }
    let mut slots: Vec<Slot> = Vec::new();
    for v in 0..nv {
        let (part, vec) = if in_e(v) {
            (Part::Corner, corner_reps[&(v, v)][0].clone())
        } else {
            (Part::Ideal, ideal_comp[&(v, v)][0].clone())
        };
        slots.push(Slot {
            part,
            vec,
            grading: (v, v),
            label: format!("e{}", v + 1),
        });
    }
    let mut counter = 0usize;
    for (&(s, t), list) in &corner_reps {
        for (idx, vec) in list.iter().enumerate() {
            if s == t && idx == 0 {
                continue;
            }
            counter += 1;
            slots.push(Slot {
                part: Part::Corner,
                vec: vec.clone(),
                grading: (s, t),
                label: format!("q{counter}"),
            });
        }
    }
    for (&(s, t), list) in &ideal_comp {
        for (idx, vec) in list.iter().enumerate() {
            if s == t && !in_e(s) && idx == 0 {
                continue;
            }
            counter += 1;
            slots.push(Slot {
                part: Part::Ideal,
                vec: vec.clone(),
                grading: (s, t),
                label: format!("j{counter}"),
            });
        }
    }
    let corner_ids: Vec<usize> = (0..slots.len())
        .filter(|&i| slots[i].part == Part::Corner)
        .collect();
    let ideal_ids: Vec<usize> = (0..slots.len())
        .filter(|&i| slots[i].part == Part::Ideal)
        .collect();
    let corner_stack = Mat::from_rows(f, corner_ids.iter().map(|&i| slots[i].vec.clone()).collect());
    let ideal_stack = Mat::from_rows(f, ideal_ids.iter().map(|&i| slots[i].vec.clone()).collect());

    let express = |dense: &[Scalar], stack: &Mat, ids: &[usize]| -> Result<SparseVec> {
        if dense.iter().all(|c| f.is_zero(c)) {
            return Ok(Vec::new());
        }
        let target = Mat::from_rows(f, vec![dense.to_vec()]);
        let coords = target.in_terms_of_rows(stack).ok_or_else(|| {
            Error::InternalInconsistency("a glued product left its expected component".into())
        })?;
        Ok((0..ids.len())
            .filter_map(|c| {
                let v = coords.get(0, c);
                if f.is_zero(v) {
                    None
                } else {
                    Some((ids[c], v.clone()))
                }
            })
            .collect())
    };

    let m = slots.len();
    let mut table = Vec::with_capacity(m * m);
    for u in &slots {
        for w in &slots {
            if u.grading.1 != w.grading.0 {
                table.push(Vec::new());
                continue;
            }
            let z = a.mul(&dense_to_sparse(f, &u.vec), &dense_to_sparse(f, &w.vec));
            let mut dense = sparse_to_dense(f, &z, n);
            let entry = match (u.part, w.part) {
                (Part::Corner, Part::Corner) => {
                    reduce_mod(f, eie.basis_rows(), &mut dense);
                    express(&dense, &corner_stack, &corner_ids)?
                }
                // Any product touching the ideal lands in the ideal.
                _ => express(&dense, &ideal_stack, &ideal_ids)?,
            };
            table.push(entry);
        }
    }
    let labels: Vec<String> = slots.iter().map(|s| s.label.clone()).collect();
    let grading: Vec<(usize, usize)> = slots.iter().map(|s| s.grading).collect();
    let glued = Arc::new(Algebra::from_table(f, nv, labels, grading, table, None)?);

    let edges = |q: &Quiver| {
        let mut v: Vec<(usize, usize)> = q.arrows.iter().map(|ar| (ar.src, ar.tgt)).collect();
        v.sort_unstable();
        v
    };
    let socles = |x: &Arc<Algebra>| -> Vec<Vec<usize>> {
        (0..x.n_vertices)
            .map(|v| module::socle_submodule(&Module::projective(x, v)).0.dims)
            .collect()
    };
    let mut checks = Vec::new();
    checks.push(("dimension matches".to_string(), glued.dim == a.dim));
    checks.push((
        "quiver matches".to_string(),
        edges(&glued.gabriel_quiver().0) == edges(&a.gabriel_quiver().0),
    ));
    checks.push((
        "cartan matrix matches".to_string(),
        glued.cartan_matrix() == a.cartan_matrix(),
    ));
    checks.push((
        "projective socles match".to_string(),
        socles(&glued) == socles(a),
    ));
    checks.push((
        "socle permutation matches".to_string(),
        match (
            module::nakayama_permutation(a),
            module::nakayama_permutation(&glued),
        ) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        },
    ));
    Ok(GluedAlgebra {
        algebra: glued,
        checks,
    })
}

/// Reduce a dense vector against a row-echelon basis (leading entries with
/// strictly increasing pivot columns), leaving the canonical coset
/// representative with zeros at every pivot column.
fn reduce_mod(f: FieldSpec, basis: &Mat, v: &mut [Scalar]) {
    for r in 0..basis.rows {
        let row = basis.row(r);
        let Some(p) = row.iter().position(|c| !f.is_zero(c)) else {
            continue;
        };
        if f.is_zero(&v[p]) {
            continue;
        }
        let factor = f.div(&v[p], &row[p]);
        for (slot, b) in v.iter_mut().zip(row.iter()) {
            *slot = f.sub(slot, &f.mul(&factor, b));
        }
    }
}

/// Incrementally grown echelon set used to pick independent representatives.
struct EchelonSet {
    f: FieldSpec,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonSet {
    fn new(f: FieldSpec) -> EchelonSet {
        EchelonSet {
            f,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [Scalar]) {
        let f = self.f;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (slot, b) in v.iter_mut().zip(row.iter()) {
                *slot = f.sub(slot, &f.mul(&factor, b));
            }
        }
    }

    /// Reduce a copy of `v`; if a nonzero remainder survives, keep its
    /// normalized form and report true.
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.f;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(&w[p]);
        for c in w.iter_mut() {
            *c = f.mul(c, &inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

// ---------------------------------------------------------------------------
// Nakayama structure.

/// Uniseriality of the projectives, plus the socle permutation when the
/// algebra is selfinjective.
#[derive(Clone, Debug)]
pub struct NakayamaReport {
    /// Every indecomposable projective is uniserial.
    pub is_nakayama: bool,
    /// nu with soc P(i) = S(nu(i)); None when the algebra is not
    /// selfinjective.
    pub nu: Option<Vec<usize>>,
    /// Vertices with nu(i) = i.
    pub fixed_points: Vec<usize>,
}

fn is_uniserial(m: &Module) -> bool {
    let mut prev = m.total_dim();
    for layer in module::radical_series(m) {
        let d: usize = layer.iter().sum();
        if prev - d > 1 {
            return false;
        }
        prev = d;
    }
    prev <= 1
}

/// Test whether every indecomposable projective is uniserial, and report
/// the socle permutation for selfinjective input.
pub fn nakayama_check(a: &Arc<Algebra>) -> Result<NakayamaReport> {
    let is_nakayama = (0..a.n_vertices).all(|v| is_uniserial(&Module::projective(a, v)));
    let nu = if module::is_selfinjective(a) {
        Some(module::nakayama_permutation(a)?)
    } else {
        None
    };
    let fixed_points = nu
        .as_ref()
        .map(|p| (0..p.len()).filter(|&i| p[i] == i).collect())
        .unwrap_or_default();
    Ok(NakayamaReport {
        is_nakayama,
        nu,
        fixed_points,
    })
}

// ---------------------------------------------------------------------------
// Stable slices.

/// A stable slice of the Auslander-Reiten quiver: one node per tau-orbit,
/// inducing a connected acyclic subquiver closed under the two mesh
/// conditions (predecessors up to tau, successors up to tau-inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    /// Node ids, ascending.
    pub nodes: Vec<usize>,
    /// Arrows of the Auslander-Reiten quiver between slice nodes.
    pub arrows: Vec<(usize, usize)>,
}

/// How to search for stable slices.
#[derive(Clone, Copy, Debug)]
pub enum SliceMode {
    /// Every slice, in backtracking order.
    All,
    /// Stop at the first slice found.
    First,
    /// The slice seeded by sectional paths from P/soc P for the projective
    /// at the given vertex.
    FromProjective(usize),
}

/// Enumerate stable slices. Orbits are matched along the orbit tree, so each
/// candidate assignment branches over the at most two neighbours that an
/// already-placed node has in the adjacent orbit.
pub fn stable_slices(ar: &ARQuiver, mode: SliceMode) -> Result<Vec<Slice>> {
    let sp = stable_part(ar)?;
    match mode {
        SliceMode::FromProjective(v) => Ok(vec![slice_from_projective(ar, &sp, v)?]),
        SliceMode::All => enumerate_slices(ar, &sp, false),
        SliceMode::First => enumerate_slices(ar, &sp, true),
    }
}

struct SliceContext<'a> {
    ar: &'a ARQuiver,
    stable: BTreeSet<usize>,
    orbit_of: Vec<usize>,
    n_orbits: usize,
}

impl<'a> SliceContext<'a> {
    fn new(ar: &'a ARQuiver, sp: &StablePart) -> SliceContext<'a> {
        let mut orbit_of = vec![usize::MAX; ar.nodes.len()];
        for (o, orbit) in sp.orbits.iter().enumerate() {
            for &x in orbit {
                orbit_of[x] = o;
            }
        }
        SliceContext {
            ar,
            stable: sp.nodes.iter().copied().collect(),
            orbit_of,
            n_orbits: sp.orbits.len(),
        }
    }

    fn induced_arrows(&self, nodes: &[usize]) -> Vec<(usize, usize)> {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        self.ar
            .arrows
            .iter()
            .filter(|a| set.contains(&a.src) && set.contains(&a.tgt))
            .map(|a| (a.src, a.tgt))
            .collect()
    }

    /// All slice axioms: one node per orbit, no projectives, connected,
    /// acyclic, and both mesh-closure conditions.
    fn verify(&self, nodes: &[usize]) -> bool {
        let ar = self.ar;
        if nodes.len() != self.n_orbits {
            return false;
        }
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        let mut hit = vec![false; self.n_orbits];
        for &x in nodes {
            if !self.stable.contains(&x) {
                return false;
            }
            let o = self.orbit_of[x];
            if hit[o] {
                return false;
            }
            hit[o] = true;
        }
        let induced = self.induced_arrows(nodes);
        // Connected (undirected reachability).
        let mut reached: BTreeSet<usize> = BTreeSet::new();
        let mut queue = VecDeque::from([nodes[0]]);
        reached.insert(nodes[0]);
        while let Some(x) = queue.pop_front() {
            for &(s, t) in &induced {
                let y = if s == x {
                    t
                } else if t == x {
                    s
                } else {
                    continue;
                };
                if reached.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if reached.len() != nodes.len() {
            return false;
        }
        // Acyclic (the induced subquiver is directed).
        let mut indeg: BTreeMap<usize, usize> = nodes.iter().map(|&x| (x, 0)).collect();
        for &(_, t) in &induced {
            *indeg.get_mut(&t).unwrap() += 1;
        }
        let mut ready: VecDeque<usize> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&x, _)| x)
            .collect();
        let mut removed = 0;
        while let Some(x) = ready.pop_front() {
            removed += 1;
            for &(s, t) in &induced {
                if s == x {
                    let d = indeg.get_mut(&t).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push_back(t);
                    }
                }
            }
        }
        if removed != nodes.len() {
            return false;
        }
        // Mesh closure: predecessors lie in the slice or its tau-shift,
        // successors in the slice or its tau-inverse shift.
        let tau_set: BTreeSet<usize> = set.iter().filter_map(|&d| ar.tau[d]).collect();
        let tau_inv_set: BTreeSet<usize> = (0..ar.nodes.len())
            .filter(|&x| ar.tau[x].map_or(false, |t| set.contains(&t)))
            .collect();
        for a in &ar.arrows {
            if set.contains(&a.tgt)
                && !ar.nodes[a.src].projective
                && !set.contains(&a.src)
                && !tau_set.contains(&a.src)
            {
                return false;
            }
            if set.contains(&a.src)
                && !ar.nodes[a.tgt].projective
                && !set.contains(&a.tgt)
                && !tau_inv_set.contains(&a.tgt)
            {
                return false;
            }
        }
        true
    }
}

fn enumerate_slices(ar: &ARQuiver, sp: &StablePart, first_only: bool) -> Result<Vec<Slice>> {
    let ctx = SliceContext::new(ar, sp);
    let q = ctx.n_orbits;
    if q == 0 {
        return Err(Error::NoSliceFound("the stable part is empty".into()));
    }
    // tau-ordered orbit cycles starting at each orbit's minimal node.
    let cycles: Vec<Vec<usize>> = sp
        .orbits
        .iter()
        .map(|orbit| {
            let seed = *orbit.iter().min().expect("orbits are nonempty");
            let mut cycle = vec![seed];
            let mut cur = seed;
            loop {
                let next = ar.tau[cur].expect("stable nodes have a translate");
                if next == seed {
                    break;
                }
                cycle.push(next);
                cur = next;
            }
            cycle
        })
        .collect();
    // BFS tree over the orbit graph (a tree, certified by the Dynkin class
    // of the stable part).
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); q];
    for a in &ar.arrows {
        if ctx.stable.contains(&a.src) && ctx.stable.contains(&a.tgt) {
            let (x, y) = (ctx.orbit_of[a.src], ctx.orbit_of[a.tgt]);
            if x != y {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; q];
    let mut seen = vec![false; q];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let o = order[head];
        head += 1;
        for &nb in &adj[o] {
            if !seen[nb] {
                seen[nb] = true;
                parent[nb] = o;
                order.push(nb);
            }
        }
    }
    if order.len() != q {
        return Err(Error::InternalInconsistency(
            "the orbit graph of the stable part is disconnected".into(),
        ));
    }

    let mut results = Vec::new();
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut assign = vec![usize::MAX; q];
    for &root in &cycles[0] {
        assign[0] = root;
        extend_assignment(&ctx, &order, &parent, 1, &mut assign, &mut |nodes| {
            if ctx.verify(&nodes) && known.insert(nodes.clone()) {
                let arrows = ctx.induced_arrows(&nodes);
                results.push(Slice { nodes, arrows });
            }
            first_only && !results.is_empty()
        });
        if first_only && !results.is_empty() {
            break;
        }
    }
    if results.is_empty() {
        return Err(Error::NoSliceFound(
            "no node assignment satisfies the slice axioms".into(),
        ));
    }
    Ok(results)
}

/// Depth-first extension of a partial orbit-to-node assignment along the
/// orbit tree. The callback returns true to stop the search.
fn extend_assignment(
    ctx: &SliceContext,
    order: &[usize],
    parent: &[usize],
    depth: usize,
    assign: &mut [usize],
    emit: &mut impl FnMut(Vec<usize>) -> bool,
) -> bool {
    if depth == order.len() {
        let mut nodes = assign.to_vec();
        nodes.sort_unstable();
        return emit(nodes);
    }
    let orbit = order[depth];
    let anchor = assign[parent[orbit]];
    let mut cands: Vec<usize> = Vec::new();
    for a in &ctx.ar.arrows {
        if a.src == anchor && ctx.orbit_of.get(a.tgt) == Some(&orbit) {
            cands.push(a.tgt);
        }
        if a.tgt == anchor && ctx.orbit_of.get(a.src) == Some(&orbit) {
            cands.push(a.src);
        }
    }
    cands.sort_unstable();
    cands.dedup();
    for c in cands {
        assign[orbit] = c;
        if extend_assignment(ctx, order, parent, depth + 1, assign, emit) {
            return true;
        }
    }
    false
}

fn locate_node(ar: &ARQuiver, m: &Module) -> Result<usize> {
    for (i, node) in ar.nodes.iter().enumerate() {
        if node.module.dims == m.dims && module::find_iso(m, &node.module)?.is_some() {
            return Ok(i);
        }
    }
    Err(Error::InternalInconsistency(
        "a module is missing from the knitted Auslander-Reiten quiver".into(),
    ))
}

fn tau_inverse_node(ar: &ARQuiver, x: usize) -> Option<usize> {
    (0..ar.nodes.len()).find(|&z| ar.tau[z] == Some(x))
}

/// The slice seeded from a projective P: the tau-inverse of P/soc P plus
/// everything reachable from P/soc P along a nontrivial sectional path.
fn slice_from_projective(ar: &ARQuiver, sp: &StablePart, v: usize) -> Result<Slice> {
    let alg = &ar.alg;
    if v >= alg.n_vertices {
        return Err(Error::InvalidParameter(format!(
            "vertex {v} out of range for {} vertices",
            alg.n_vertices
        )));
    }
    let ctx = SliceContext::new(ar, sp);
    let p = Module::projective(alg, v);
    let soc = module::socle_submodule(&p).1;
    let (qbar, _) = module::quotient_module(&p, &soc.blocks)?;
    if qbar.is_zero() {
        return Err(Error::NoSliceFound(format!(
            "the projective at vertex {v} is simple"
        )));
    }
    let qnode = locate_node(ar, &qbar)?;
    let seed = tau_inverse_node(ar, qnode).ok_or_else(|| {
        Error::NoSliceFound(format!(
            "P/soc P at vertex {v} has no tau-inverse in the quiver"
        ))
    })?;
    let mut chosen: BTreeSet<usize> = BTreeSet::from([seed]);
    // Sectional walk: never step from prev through cur to tau(prev).
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::from([(usize::MAX, qnode)]);
    while let Some((prev, cur)) = queue.pop_front() {
        for a in &ar.arrows {
            if a.src != cur || !ctx.stable.contains(&a.tgt) {
                continue;
            }
            if prev != usize::MAX && ar.tau[a.tgt] == Some(prev) {
                continue;
            }
            chosen.insert(a.tgt);
            if visited.insert((cur, a.tgt)) {
                queue.push_back((cur, a.tgt));
            }
        }
    }
    let nodes: Vec<usize> = chosen.into_iter().collect();
    if !ctx.verify(&nodes) {
        return Err(Error::NoSliceFound(format!(
            "the sectional closure from vertex {v} is not a slice"
        )));
    }
    let arrows = ctx.induced_arrows(&nodes);
    Ok(Slice { nodes, arrows })
}

/// Semiregularity and double tau-rigidity of a slice.
#[derive(Clone, Copy, Debug)]
pub struct SliceProps {
    /// The slice avoids either all socle factors Q/soc Q or all radicals
    /// rad P of the projectives.
    pub semiregular: bool,
    /// Hom(X, tau Y) = 0 and Hom(tau^{-1} X, Y) = 0 for all slice pairs.
    pub double_rigid: bool,
}

/// Decide semiregularity and double tau-rigidity.
pub fn slice_props(ar: &ARQuiver, s: &Slice) -> Result<SliceProps> {
    let alg = &ar.alg;
    let mut rad_mods = Vec::new();
    let mut soc_factors = Vec::new();
    for v in 0..alg.n_vertices {
        let (rad, _) = module::radical_submodule(&Module::projective(alg, v));
        if !rad.is_zero() {
            rad_mods.push(rad);
        }
        let q = Module::injective(alg, v);
        let soc = module::socle_submodule(&q).1;
        let (factor, _) = module::quotient_module(&q, &soc.blocks)?;
        if !factor.is_zero() {
            soc_factors.push(factor);
        }
    }
    let hits = |family: &[Module]| -> Result<bool> {
        for &x in &s.nodes {
            let m = &ar.nodes[x].module;
            for cand in family {
                if m.dims == cand.dims && module::find_iso(m, cand)?.is_some() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    };
    let semiregular = !(hits(&rad_mods)? && hits(&soc_factors)?);

    let mut double_rigid = true;
    'pairs: for &x in &s.nodes {
        let tix = tau_inverse_node(ar, x).ok_or_else(|| {
            Error::InternalInconsistency("a stable node has no tau-inverse".into())
        })?;
        for &y in &s.nodes {
            let ty = ar.tau[y].ok_or_else(|| {
                Error::InternalInconsistency("a stable node has no translate".into())
            })?;
            if !module::hom(&ar.nodes[x].module, &ar.nodes[ty].module)?.is_empty()
                || !module::hom(&ar.nodes[tix].module, &ar.nodes[y].module)?.is_empty()
            {
                double_rigid = false;
                break 'pairs;
            }
        }
    }
    Ok(SliceProps {
        semiregular,
        double_rigid,
    })
}

// ---------------------------------------------------------------------------
// Endomorphism algebras of module sums.

/// The endomorphism algebra of a direct sum of pairwise nonisomorphic
/// indecomposables, as a structure constant algebra graded by the summands.
/// Basis: the identity of each summand, then the radical of each diagonal
/// block, then all maps between distinct summands.
pub fn endomorphism_algebra(alg: &Arc<Algebra>, parts: &[Module]) -> Result<Arc<Algebra>> {
    let f = alg.field;
    let n = parts.len();
    let mut homs: Vec<Vec<Vec<ModMap>>> = Vec::with_capacity(n);
    for mi in parts {
        let mut row = Vec::with_capacity(n);
        for mj in parts {
            row.push(module::hom(mi, mj)?);
        }
        homs.push(row);
    }
    struct Ent {
        src: usize,
        tgt: usize,
        map: ModMap,
    }
    let mut ents: Vec<Ent> = Vec::new();
    for (i, mi) in parts.iter().enumerate() {
        ents.push(Ent {
            src: i,
            tgt: i,
            map: ModMap::identity(mi),
        });
    }
    for (i, mi) in parts.iter().enumerate() {
        let basis = &homs[i][i];
        let de = basis.len();
        let flat = Mat::from_rows(f, basis.iter().map(ModMap::flatten).collect());
        let mul = |x: usize, y: usize| -> SparseVec {
            let prod = basis[x].compose(&basis[y]);
            let coords = Mat::from_rows(f, vec![prod.flatten()])
                .in_terms_of_rows(&flat)
                .expect("endomorphisms compose inside the endomorphism space");
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
        if de != rad.dim() + 1 {
            return Err(Error::InternalInconsistency(
                "a summand's endomorphism ring is not local".into(),
            ));
        }
        for r in 0..rad.dim() {
            let coords = rad.basis_rows().row(r);
            let mut map = ModMap::zero_map(mi, mi);
            for (k, c) in coords.iter().enumerate() {
                if !f.is_zero(c) {
                    map = map.add(&basis[k].scale(c));
                }
            }
            ents.push(Ent {
                src: i,
                tgt: i,
                map,
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for map in &homs[i][j] {
                ents.push(Ent {
                    src: i,
                    tgt: j,
                    map: map.clone(),
                });
            }
        }
    }
    // Coordinate stacks per graded block, in entry order.
    let mut block_ids: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, ent) in ents.iter().enumerate() {
        block_ids.entry((ent.src, ent.tgt)).or_default().push(k);
    }
    let block_stacks: BTreeMap<(usize, usize), Mat> = block_ids
        .iter()
        .map(|(&key, ids)| {
            let rows: Vec<Vec<Scalar>> = ids.iter().map(|&k| ents[k].map.flatten()).collect();
            (key, Mat::from_rows(f, rows))
        })
        .collect();

    let m = ents.len();
    let mut table = Vec::with_capacity(m * m);
    for u in &ents {
        for w in &ents {
            if u.tgt != w.src {
                table.push(Vec::new());
                continue;
            }
            let prod = u.map.compose(&w.map);
            if prod.is_zero() {
                table.push(Vec::new());
                continue;
            }
            let key = (u.src, w.tgt);
            let (ids, stack) = match (block_ids.get(&key), block_stacks.get(&key)) {
                (Some(i), Some(s)) => (i, s),
                _ => {
                    return Err(Error::InternalInconsistency(
                        "a composite landed in an empty hom block".into(),
                    ))
                }
            };
            let coords = Mat::from_rows(f, vec![prod.flatten()])
                .in_terms_of_rows(stack)
                .ok_or_else(|| {
                    Error::InternalInconsistency(
                        "a composite left its expected hom block".into(),
                    )
                })?;
            let entry: SparseVec = (0..ids.len())
                .filter_map(|c| {
                    let v = coords.get(0, c);
                    if f.is_zero(v) {
                        None
                    } else {
                        Some((ids[c], v.clone()))
                    }
                })
                .collect();
            table.push(entry);
        }
    }
    let labels: Vec<String> = (0..m)
        .map(|k| {
            if k < n {
                format!("e{}", k + 1)
            } else {
                format!("f{}", k - n + 1)
            }
        })
        .collect();
    let grading: Vec<(usize, usize)> = ents.iter().map(|e| (e.src, e.tgt)).collect();
    Ok(Arc::new(Algebra::from_table(
        f, n, labels, grading, table, None,
    )?))
}

/// Hereditary test: the radical of every indecomposable projective is
/// projective, so every simple has a projective resolution of length <= 1.
pub fn is_hereditary(a: &Arc<Algebra>) -> bool {
    (0..a.n_vertices).all(|v| {
        let (rad, _) = module::radical_submodule(&Module::projective(a, v));
        rad.is_zero() || module::is_projective(&rad)
    })
}

// ---------------------------------------------------------------------------
// The tilting chain.

/// Record of a full tilting-chain run on one slice: the annihilator ideal,
/// the quotient acting faithfully on the slice sum, its hereditary
/// endomorphism algebra, and the invariant comparison with the glued
/// algebra. All recorded checks are true - a violated clause aborts the
/// chain with [`Error::CheckFailed`] instead.
#[derive(Clone, Debug)]
pub struct TiltedRecord {
    /// Slice node ids in the Auslander-Reiten quiver.
    pub slice: Vec<usize>,
    pub ideal_dim: usize,
    pub residual_idempotents: Vec<usize>,
    /// The algebra modulo the annihilator of the slice sum.
    pub quotient: Arc<Algebra>,
    /// The endomorphism algebra of the slice sum.
    pub endomorphism: Arc<Algebra>,
    /// Dynkin class of the endomorphism quiver, e.g. "A3".
    pub hereditary_type: String,
    pub checks: Vec<(String, bool)>,
}

fn clause(checks: &mut Vec<(String, bool)>, name: &str, ok: bool) -> Result<()> {
    checks.push((name.to_string(), ok));
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(name.to_string()))
    }
}

/// Run the tilting chain on a slice of the Auslander-Reiten quiver: form
/// M = sum of the slice modules and I = r_A(M), check the annihilator and
/// acyclicity clauses, build the hereditary endomorphism algebra and match
/// its quiver against the slice diagram, compare the glued algebra's
/// invariants, and check that no residual vertex is fixed by the socle
/// permutation.
pub fn tilted_certificate(ar: &ARQuiver, s: &Slice) -> Result<TiltedRecord> {
    let alg = &ar.alg;
    let parts: Vec<Module> = s.nodes.iter().map(|&x| ar.nodes[x].module.clone()).collect();
    let msum = module::direct_sum(alg, &parts).module;
    let ideal = module::right_annihilator(&msum);
    let rep = deforming_ideal_check(alg, &ideal)?;
    let mut checks = Vec::new();
    clause(
        &mut checks,
        "right annihilator of the ideal equals eI",
        rep.right_ann_is_ei,
    )?;
    clause(&mut checks, "quotient quiver is acyclic", rep.quotient_acyclic)?;
    clause(
        &mut checks,
        "corner annihilators of the ideal equal eIe",
        rep.corner_condition,
    )?;
    let quotient = Arc::new(alg.quotient(&ideal)?.algebra);
    let endo = endomorphism_algebra(alg, &parts)?;
    clause(
        &mut checks,
        "endomorphism algebra is hereditary",
        is_hereditary(&endo),
    )?;
    let undirected = |pairs: &[(usize, usize)]| {
        let mut v: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(x, y)| (x.min(y), x.max(y)))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let h_edges = undirected(
        &endo
            .gabriel_quiver()
            .0
            .arrows
            .iter()
            .map(|a| (a.src, a.tgt))
            .collect::<Vec<_>>(),
    );
    let pos = |x: usize| s.nodes.binary_search(&x).expect("slice nodes are sorted");
    let s_edges = undirected(
        &s.arrows
            .iter()
            .map(|&(x, y)| (pos(x), pos(y)))
            .collect::<Vec<_>>(),
    );
    let diagram = dynkin_class_of_graph(s.nodes.len(), &h_edges);
    clause(
        &mut checks,
        "endomorphism quiver is a Dynkin diagram",
        diagram.is_ok(),
    )?;
    clause(
        &mut checks,
        "endomorphism quiver matches the slice diagram",
        h_edges == s_edges,
    )?;
    let glued = glued_algebra(alg, &ideal)?;
    for (name, ok) in &glued.checks {
        checks.push((format!("glued algebra: {name}"), *ok));
    }
    clause(
        &mut checks,
        "glued algebra invariants all match",
        glued.all_match(),
    )?;
    let nu = module::nakayama_permutation(alg)?;
    clause(
        &mut checks,
        "no residual vertex is fixed by the socle permutation",
        rep.residual.iter().all(|&v| nu[v] != v),
    )?;
    Ok(TiltedRecord {
        slice: s.nodes.clone(),
        ideal_dim: ideal.dim(),
        residual_idempotents: rep.residual,
        quotient,
        endomorphism: endo,
        hereditary_type: diagram.expect("checked above").to_string(),
        checks,
    })
}

// ---------------------------------------------------------------------------
// Short cycles and the end-to-end certificate.

/// Final verdict of a cycle search or full certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ShortCycleFree,
    HasShortCycle,
}

/// One short cycle X -> Y -> X between nodes of the Auslander-Reiten
/// quiver. For X = Y the maps are radical endomorphisms and the image
/// fields stay empty.
#[derive(Clone, Debug)]
pub struct CycleWitness {
    pub x: usize,
    pub y: usize,
    pub x_dims: Vec<usize>,
    pub y_dims: Vec<usize>,
    /// Dimension vector of the image of the first forward map.
    pub forward_image: Option<Vec<usize>>,
    /// Dimension vector of the image of the first backward map.
    pub backward_image: Option<Vec<usize>>,
}

/// A re-checkable verdict: the witness list for a positive verdict, the
/// structural pipeline record for a cycle-free one, and every named clause
/// evaluated along the way.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witnesses: Vec<CycleWitness>,
    pub pipeline: Option<TiltedRecord>,
    pub checks: Vec<(String, bool)>,
}

/// Scan ordered node pairs (i <= j) for short cycles; radical
/// endomorphisms witness the X = Y case.
fn scan_cycles(ar: &ARQuiver, all: bool) -> Result<Vec<CycleWitness>> {
    let n = ar.nodes.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mi = &ar.nodes[i].module;
            let mj = &ar.nodes[j].module;
            if i == j {
                let (_, rad) = module::end_radical_dims(mi)?;
                if rad > 0 {
                    out.push(CycleWitness {
                        x: i,
                        y: i,
                        x_dims: mi.dims.clone(),
                        y_dims: mi.dims.clone(),
                        forward_image: None,
                        backward_image: None,
                    });
                    if !all {
                        return Ok(out);
                    }
                }
                continue;
            }
            let fwd = module::hom(mi, mj)?;
            if fwd.is_empty() {
                continue;
            }
            let bwd = module::hom(mj, mi)?;
            if bwd.is_empty() {
                continue;
            }
            out.push(CycleWitness {
                x: i,
                y: j,
                x_dims: mi.dims.clone(),
                y_dims: mj.dims.clone(),
                forward_image: Some(module::image_submodule(mi, mj, &fwd[0]).0.dims),
                backward_image: Some(module::image_submodule(mj, mi, &bwd[0]).0.dims),
            });
            if !all {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Search the module category for short cycles. `all_witnesses` asks for
/// the exhaustive pair table instead of the first hit.
pub fn short_cycles(a: &Arc<Algebra>, budgets: &Budgets, all_witnesses: bool) -> Result<Certificate> {
    let ar = knit(a, budgets)?;
    let witnesses = scan_cycles(&ar, all_witnesses)?;
    Ok(Certificate {
        verdict: if witnesses.is_empty() {
            Verdict::ShortCycleFree
        } else {
            Verdict::HasShortCycle
        },
        witnesses,
        pipeline: None,
        checks: Vec::new(),
    })
}

/// Seeded slice selection: try the projective-based construction at every
/// vertex, then fall back to full enumeration, returning the first
/// semiregular doubly tau-rigid slice.
fn select_slice(ar: &ARQuiver) -> Result<Slice> {
    for v in 0..ar.alg.n_vertices {
        match stable_slices(ar, SliceMode::FromProjective(v)) {
            Ok(mut found) => {
                let s = found.pop().expect("one slice per projective seed");
                let props = slice_props(ar, &s)?;
                if props.semiregular && props.double_rigid {
                    return Ok(s);
                }
            }
            Err(Error::NoSliceFound(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    for s in stable_slices(ar, SliceMode::All)? {
        let props = slice_props(ar, &s)?;
        if props.semiregular && props.double_rigid {
            return Ok(s);
        }
    }
    Err(Error::NoSliceFound(
        "no semiregular doubly tau-rigid stable slice".into(),
    ))
}

/// The radical-series pipeline for a selfinjective Nakayama algebra of
/// Loewy length n+1: the slice is rad P, rad^2 P, ..., rad^n P, and the
/// chain additionally verifies the trace-ideal identities and that the
/// quotient is the hereditary chain algebra of length n.
fn nakayama_record(a: &Arc<Algebra>, ar: &ARQuiver) -> Result<TiltedRecord> {
    let n = a.loewy_length() - 1;
    let p = Module::projective(a, 0);
    let mut nodes = Vec::with_capacity(n);
    for j in 1..=n {
        let (mj, _) = module::radical_power_submodule(&p, j);
        if mj.is_zero() {
            return Err(Error::InternalInconsistency(
                "a projective is shorter than the algebra's radical chain".into(),
            ));
        }
        nodes.push(locate_node(ar, &mj)?);
    }
    nodes.sort_unstable();
    let arrows: Vec<(usize, usize)> = ar
        .arrows
        .iter()
        .filter(|x| nodes.contains(&x.src) && nodes.contains(&x.tgt))
        .map(|x| (x.src, x.tgt))
        .collect();
    let s = Slice { nodes, arrows };
    let mut rec = tilted_certificate(ar, &s)?;

    // Trace-ideal identities specific to the radical-series pipeline.
    let parts: Vec<Module> = s.nodes.iter().map(|&x| ar.nodes[x].module.clone()).collect();
    let msum = module::direct_sum(a, &parts).module;
    let ideal = module::right_annihilator(&msum);
    let trace = trace_ideal(&msum)?;
    let e: BTreeSet<usize> = rec.residual_idempotents.iter().copied().collect();
    let ie = masked(a, &ideal, |_, t| e.contains(&t));
    let eie = masked(a, &ideal, |st, t| e.contains(&st) && e.contains(&t));
    let eje = masked(a, &trace, |st, t| e.contains(&st) && e.contains(&t));
    clause(
        &mut rec.checks,
        "trace ideal lies inside the annihilator",
        ideal.contains(&trace),
    )?;
    clause(
        &mut rec.checks,
        "left annihilator of the ideal equals the trace ideal",
        sub_eq(&annihilator(a, &ideal, Side::Left), &trace),
    )?;
    clause(
        &mut rec.checks,
        "trace ideal equals Ie",
        sub_eq(&trace, &ie),
    )?;
    clause(
        &mut rec.checks,
        "corner of the trace ideal equals the corner of the annihilator",
        sub_eq(&eie, &eje),
    )?;
    let rep = deforming_ideal_check(a, &ideal)?;
    clause(&mut rec.checks, "IeI vanishes", rep.iei_zero)?;
    clause(
        &mut rec.checks,
        "socle lies inside the annihilator",
        rep.socle_inside,
    )?;

    // The quotient must be the hereditary chain algebra on n vertices.
    let b = &rec.quotient;
    clause(
        &mut rec.checks,
        "quotient is uniserial",
        nakayama_check(b)?.is_nakayama,
    )?;
    clause(
        &mut rec.checks,
        "quotient dimension matches the chain algebra",
        b.dim == n * (n + 1) / 2 && b.n_vertices == n,
    )?;
    let (bq, _) = b.gabriel_quiver();
    clause(
        &mut rec.checks,
        "quotient quiver is a chain",
        bq.arrows.len() + 1 == n && bq.is_acyclic() && bq.is_connected()
            || (n == 1 && bq.arrows.is_empty()),
    )?;
    clause(
        &mut rec.checks,
        "pipeline type is the chain diagram",
        rec.hereditary_type == format!("A{n}"),
    )?;
    Ok(rec)
}

/// End-to-end certified verdict for a connected selfinjective algebra:
/// brute-force the short-cycle search, then re-derive a cycle-free verdict
/// structurally (radical-series pipeline for Nakayama algebras, a
/// semiregular doubly tau-rigid slice otherwise) and cross-validate the
/// socle permutation fixed-point law.
pub fn theorem_check(a: &Arc<Algebra>, budgets: &Budgets) -> Result<Certificate> {
    if !module::is_selfinjective(a) {
        return Err(Error::NotSelfinjective(
            "the certified verdict needs a selfinjective algebra".into(),
        ));
    }
    if !a.is_connected() {
        return Err(Error::PreconditionFailed(
            "the certified verdict needs a connected algebra".into(),
        ));
    }
    if a.is_semisimple() {
        return Ok(Certificate {
            verdict: Verdict::ShortCycleFree,
            witnesses: Vec::new(),
            pipeline: None,
            checks: vec![(
                "semisimple: no nonzero radical maps exist".to_string(),
                true,
            )],
        });
    }
    let ar = knit(a, budgets)?;
    let witnesses = scan_cycles(&ar, false)?;
    if !witnesses.is_empty() {
        return Ok(Certificate {
            verdict: Verdict::HasShortCycle,
            witnesses,
            pipeline: None,
            checks: Vec::new(),
        });
    }
    let mut checks = Vec::new();
    // Cycle-free forces the socle permutation to be fixed-point free:
    // soc P(i) = top P(i) would give the cycle S(i) -> P(i) -> S(i), which
    // the scan above must have found.
    let nu = module::nakayama_permutation(a)?;
    if let Some(v) = (0..a.n_vertices).find(|&v| nu[v] == v) {
        return Err(Error::InternalInconsistency(format!(
            "no short cycle found, but the socle permutation fixes vertex {v}"
        )));
    }
    checks.push((
        "socle permutation has no fixed vertex".to_string(),
        true,
    ));
    let record = if nakayama_check(a)?.is_nakayama {
        checks.push(("projectives are uniserial: radical-series pipeline".to_string(), true));
        nakayama_record(a, &ar)?
    } else {
        checks.push(("projectives not all uniserial: slice pipeline".to_string(), true));
        let s = match select_slice(&ar) {
            Ok(s) => s,
            Err(Error::NoSliceFound(msg)) => {
                return Err(Error::InternalInconsistency(format!(
                    "cycle-free non-Nakayama algebra without a usable slice: {msg}"
                )))
            }
            Err(e) => return Err(e),
        };
        let props = slice_props(&ar, &s)?;
        if !props.semiregular || !props.double_rigid {
            return Err(Error::InternalInconsistency(
                "the selected slice lost semiregularity or rigidity".into(),
            ));
        }
        checks.push(("slice is semiregular".to_string(), true));
        checks.push(("slice is doubly tau-rigid".to_string(), true));
        tilted_certificate(&ar, &s)?
    };
    Ok(Certificate {
        verdict: Verdict::ShortCycleFree,
        witnesses: Vec::new(),
        pipeline: Some(record),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bound_quiver_algebra;
    use crate::zoo;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn nak(m: usize, ell: usize) -> Arc<Algebra> {
        Arc::new(zoo::nakayama_selfinjective(m, ell, q()).unwrap())
    }

    fn chain(n: usize) -> Arc<Algebra> {
        Arc::new(zoo::hereditary_nakayama(n, q()).unwrap())
    }

    fn two_blocks() -> Arc<Algebra> {
        let quiver = Quiver::new(2, vec![]).unwrap();
        Arc::new(bound_quiver_algebra(&quiver, &[], q(), 2).unwrap())
    }

    fn span(a: &Algebra, coords: &[usize]) -> Subspace {
        coordinate_span(a.field, a.dim, coords)
    }

    #[test]
    fn annihilator_of_zero_and_full() {
        let a = nak(3, 2);
        let zero = Subspace::zero(q(), a.dim);
        assert_eq!(annihilator(&a, &zero, Side::Left).dim(), a.dim);
        let full = Subspace::full(q(), a.dim);
        assert_eq!(annihilator(&a, &full, Side::Right).dim(), 0);
        assert_eq!(module::right_annihilator(&Module::regular(&a)).dim(), 0);
    }

    #[test]
    fn annihilator_semisimple_block() {
        let a = two_blocks();
        let ann = annihilator(&a, &span(&a, &[0]), Side::Right);
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&span(&a, &[1])));
        let ann = module::right_annihilator(&Module::simple(&a, 0));
        assert!(sub_eq(&ann, &span(&a, &[1])));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn annihilator_products_vanish(mask in proptest::collection::vec(any::<bool>(), 8)) {
            let a = nak(4, 2);
            let coords: Vec<usize> = (0..a.dim).filter(|&k| mask[k]).collect();
            let x = span(&a, &coords);
            for side in [Side::Left, Side::Right] {
                let ann = annihilator(&a, &x, side);
                for r in 0..ann.dim() {
                    let z = dense_to_sparse(q(), ann.basis_rows().row(r));
                    for s in 0..x.dim() {
                        let y = dense_to_sparse(q(), x.basis_rows().row(s));
                        let prod = match side {
                            Side::Left => a.mul(&z, &y),
                            Side::Right => a.mul(&y, &z),
                        };
                        prop_assert!(prod.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn trace_of_regular_is_everything() {
        let a = chain(2);
        let t = trace_ideal(&Module::regular(&a)).unwrap();
        assert_eq!(t.dim(), a.dim);
    }

    #[test]
    fn trace_of_sink_simple_is_its_two_copies() {
        // Chain 1 <- 2: the sink simple embeds as the first projective and
        // as the socle of the second, so its trace is exactly that span.
        let a = chain(2);
        let t = trace_ideal(&Module::simple(&a, 0)).unwrap();
        assert_eq!(a.grading[2], (1, 0));
        assert!(sub_eq(&t, &span(&a, &[0, 2])));
        // And it really is a two-sided ideal.
        assert!(validate_ideal(&a, &t).is_ok());
    }

    #[test]
    fn residual_identity_of_degenerate_ideals() {
        let a = nak(3, 2);
        let zero = Subspace::zero(q(), a.dim);
        assert_eq!(residual_identity(&a, &zero), vec![0, 1, 2]);
        let dual = nak(1, 2);
        assert_eq!(residual_identity(&dual, &dual.radical()), vec![0]);
    }

    #[test]
    fn deforming_report_on_zero_ideal_is_structured_falses() {
        let a = nak(3, 2);
        let rep = deforming_ideal_check(&a, &Subspace::zero(q(), a.dim)).unwrap();
        assert!(!rep.corner_condition);
        assert!(!rep.quotient_acyclic);
        assert!(rep.iei_zero);
        assert!(!rep.left_ann_is_ie);
        assert!(!rep.right_ann_is_ei);
        assert!(!rep.socle_inside);
        assert_eq!(rep.residual, vec![0, 1, 2]);
    }

    #[test]
    fn deforming_check_rejects_non_selfinjective() {
        let a = chain(2);
        let err = deforming_ideal_check(&a, &Subspace::zero(q(), a.dim)).unwrap_err();
        assert!(matches!(err, Error::NotSelfinjective(_)));
    }

    /// The radical-series slice sum of N(6,3) and its annihilator.
    fn n63_pipeline() -> (Arc<Algebra>, Module, Subspace) {
        let a = nak(6, 3);
        let p = Module::projective(&a, 0);
        let m1 = module::radical_power_submodule(&p, 1).0;
        let m2 = module::radical_power_submodule(&p, 2).0;
        let m = module::direct_sum(&a, &[m1, m2]).module;
        let ideal = module::right_annihilator(&m);
        (a, m, ideal)
    }

    #[test]
    fn deforming_ideal_of_the_chain_pipeline() {
        let (a, _, ideal) = n63_pipeline();
        let rep = deforming_ideal_check(&a, &ideal).unwrap();
        assert!(rep.corner_condition);
        assert!(rep.quotient_acyclic);
        assert!(rep.iei_zero);
        assert!(rep.left_ann_is_ie);
        assert!(rep.right_ann_is_ei);
        assert!(rep.socle_inside);
        assert_eq!(rep.residual, vec![1, 2]);
        assert_eq!(rep.ideal_dim, 15);
    }

    #[test]
    fn trace_ideal_identities_of_the_chain_pipeline() {
        let (a, m, ideal) = n63_pipeline();
        let trace = trace_ideal(&m).unwrap();
        assert!(ideal.contains(&trace));
        assert!(sub_eq(&annihilator(&a, &ideal, Side::Left), &trace));
    }

    #[test]
    fn glued_algebra_matches_on_the_chain_pipeline() {
        let (a, _, ideal) = n63_pipeline();
        let glued = glued_algebra(&a, &ideal).unwrap();
        assert!(glued.all_match(), "checks: {:?}", glued.checks);
        assert_eq!(glued.algebra.dim, a.dim);
        assert_eq!(glued.algebra.n_vertices, a.n_vertices);
    }

    #[test]
    fn glued_algebra_rejects_non_deforming_ideals() {
        let a = nak(3, 2);
        let err = glued_algebra(&a, &Subspace::zero(q(), a.dim)).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn nakayama_check_shapes() {
        let a = nak(6, 3);
        let rep = nakayama_check(&a).unwrap();
        assert!(rep.is_nakayama);
        assert_eq!(rep.nu, Some(vec![2, 3, 4, 5, 0, 1]));
        assert!(rep.fixed_points.is_empty());

        let dual = nak(1, 2);
        let rep = nakayama_check(&dual).unwrap();
        assert!(rep.is_nakayama);
        assert_eq!(rep.nu, Some(vec![0]));
        assert_eq!(rep.fixed_points, vec![0]);

        let b = chain(3);
        let rep = nakayama_check(&b).unwrap();
        assert!(rep.is_nakayama);
        assert_eq!(rep.nu, None);
    }

    #[test]
    fn nakayama_check_sees_branching() {
        // Two arrows out of one vertex: P(1) has a two-dimensional radical
        // layer, so the algebra is not Nakayama.
        let quiver = Quiver::new(
            3,
            vec![
                crate::algebra::Arrow {
                    name: "a".into(),
                    src: 0,
                    tgt: 1,
                },
                crate::algebra::Arrow {
                    name: "b".into(),
                    src: 0,
                    tgt: 2,
                },
            ],
        )
        .unwrap();
        let a = Arc::new(bound_quiver_algebra(&quiver, &[], q(), 3).unwrap());
        assert!(!nakayama_check(&a).unwrap().is_nakayama);
    }

    #[test]
    fn slices_of_the_three_cycle() {
        let a = nak(3, 2);
        let ar = knit(&a, &Budgets::default()).unwrap();
        let slices = stable_slices(&ar, SliceMode::All).unwrap();
        assert_eq!(slices.len(), 3);
        for s in &slices {
            assert_eq!(s.nodes.len(), 1);
            assert!(s.arrows.is_empty());
            let props = slice_props(&ar, s).unwrap();
            assert!(!props.semiregular);
            assert!(props.double_rigid);
        }
        let first = stable_slices(&ar, SliceMode::First).unwrap();
        assert_eq!(first.len(), 1);
        assert_eq!(first[0], slices[0]);
    }

    #[test]
    fn slice_from_projective_contains_the_shifted_socle_factor() {
        let a = nak(6, 3);
        let ar = knit(&a, &Budgets::default()).unwrap();
        let s = stable_slices(&ar, SliceMode::FromProjective(0))
            .unwrap()
            .pop()
            .unwrap();
        assert_eq!(s.nodes.len(), 2);
        let p = Module::projective(&a, 0);
        let soc = module::socle_submodule(&p).1;
        let (qbar, _) = module::quotient_module(&p, &soc.blocks).unwrap();
        let shifted = module::tau_inv(&qbar).unwrap();
        let node = locate_node(&ar, &shifted).unwrap();
        assert!(s.nodes.contains(&node));
        let props = slice_props(&ar, &s).unwrap();
        assert!(!props.semiregular, "Nakayama slices are never semiregular");
        assert!(props.double_rigid);
    }

    #[test]
    fn every_slice_of_a_nakayama_algebra_fails_semiregularity() {
        let a = nak(6, 3);
        let ar = knit(&a, &Budgets::default()).unwrap();
        let slices = stable_slices(&ar, SliceMode::All).unwrap();
        assert!(!slices.is_empty());
        for s in &slices {
            assert_eq!(s.nodes.len(), 2);
            assert!(!slice_props(&ar, s).unwrap().semiregular);
        }
    }

    #[test]
    fn tilting_chain_on_the_radical_series_of_n63() {
        let a = nak(6, 3);
        let ar = knit(&a, &Budgets::default()).unwrap();
        let rec = nakayama_record(&a, &ar).unwrap();
        assert!(rec.checks.iter().all(|c| c.1), "checks: {:?}", rec.checks);
        assert_eq!(rec.residual_idempotents, vec![1, 2]);
        assert_eq!(rec.hereditary_type, "A2");
        // The quotient invariant-matches the hereditary chain on 2 vertices.
        let b = &rec.quotient;
        let h2 = chain(2);
        assert_eq!(b.dim, h2.dim);
        assert_eq!(b.n_vertices, h2.n_vertices);
        assert_eq!(b.loewy_length(), h2.loewy_length());
        assert_eq!(zoo::cartan_divisors(b), zoo::cartan_divisors(&h2));
        assert!(nakayama_check(b).unwrap().is_nakayama);
        // The endomorphism algebra is the chain algebra as well.
        assert_eq!(rec.endomorphism.dim, 3);
        assert_eq!(rec.endomorphism.n_vertices, 2);
        assert!(is_hereditary(&rec.endomorphism));
    }

    #[test]
    fn short_cycle_scan_shapes() {
        // Semisimple: no radical maps at all.
        let cert = short_cycles(&two_blocks(), &Budgets::default(), false).unwrap();
        assert_eq!(cert.verdict, Verdict::ShortCycleFree);

        // N(3,2) is cycle-free.
        let cert = short_cycles(&nak(3, 2), &Budgets::default(), false).unwrap();
        assert_eq!(cert.verdict, Verdict::ShortCycleFree);

        // N(2,2): the two projectives map onto each other's radicals.
        let cert = short_cycles(&nak(2, 2), &Budgets::default(), false).unwrap();
        assert_eq!(cert.verdict, Verdict::HasShortCycle);
        let w = &cert.witnesses[0];
        assert_eq!((w.x, w.y), (0, 1));
        assert_eq!(w.x_dims, vec![1, 1]);
        assert_eq!(w.y_dims, vec![1, 1]);
        assert_eq!(w.forward_image.as_ref().unwrap().iter().sum::<usize>(), 1);
        assert_eq!(w.backward_image.as_ref().unwrap().iter().sum::<usize>(), 1);

        // Dual numbers: the scan hits the radical endomorphism of P first.
        let cert = short_cycles(&nak(1, 2), &Budgets::default(), true).unwrap();
        assert_eq!(cert.verdict, Verdict::HasShortCycle);
        assert_eq!((cert.witnesses[0].x, cert.witnesses[0].y), (0, 0));
        assert_eq!(cert.witnesses[0].x_dims, vec![2]);
    }

    #[test]
    fn nakayama_boundary_law_small() {
        for m in 1..=5 {
            for ell in 2..=4 {
                let a = nak(m, ell);
                let cert = short_cycles(&a, &Budgets::default(), false).unwrap();
                let expect_free = m >= 2 * ell - 1;
                assert_eq!(
                    cert.verdict == Verdict::ShortCycleFree,
                    expect_free,
                    "N({m},{ell})"
                );
            }
        }
    }

    #[test]
    fn theorem_check_on_the_chain_pipeline() {
        let a = nak(6, 3);
        let cert = theorem_check(&a, &Budgets::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::ShortCycleFree);
        let rec = cert.pipeline.unwrap();
        assert_eq!(rec.hereditary_type, "A2");
        assert_eq!(rec.residual_idempotents, vec![1, 2]);
        assert!(rec.checks.iter().all(|c| c.1));
        assert!(cert.checks.iter().all(|c| c.1));
    }

    #[test]
    fn theorem_check_on_the_threefold_extension_of_the_chain() {
        // The 3-fold trivial extension of the chain on 3 vertices is the
        // selfinjective Nakayama algebra N(9,4), which is cycle-free.
        let b = zoo::hereditary_nakayama(3, q()).unwrap();
        let a = Arc::new(zoo::trivial_extension_r(&b, 3, None).unwrap());
        let cert = theorem_check(&a, &Budgets::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::ShortCycleFree);
        let rec = cert.pipeline.unwrap();
        assert_eq!(rec.hereditary_type, "A3");
        assert_eq!(rec.residual_idempotents.len(), 3);
        assert!(rec.checks.iter().all(|c| c.1), "checks: {:?}", rec.checks);
    }

    #[test]
    fn theorem_check_on_the_twofold_extension_of_the_chain() {
        let b = zoo::hereditary_nakayama(3, q()).unwrap();
        let a = Arc::new(zoo::trivial_extension_r(&b, 2, None).unwrap());
        let cert = theorem_check(&a, &Budgets::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::HasShortCycle);
        assert!(!cert.witnesses.is_empty());
        assert!(cert.pipeline.is_none());
    }

    #[test]
    fn theorem_check_on_dual_numbers_and_semisimple() {
        let cert = theorem_check(&nak(1, 2), &Budgets::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::HasShortCycle);

        let k = chain(1);
        let cert = theorem_check(&k, &Budgets::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::ShortCycleFree);
        assert!(cert.checks[0].0.contains("semisimple"));
    }

    #[test]
    fn theorem_check_rejects_bad_input() {
        let err = theorem_check(&chain(2), &Budgets::default()).unwrap_err();
        assert!(matches!(err, Error::NotSelfinjective(_)));
        let err = theorem_check(&two_blocks(), &Budgets::default()).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }
}
