//! Factorization, lifting, transport, path-fibration synthesis and slices.

use std::collections::BTreeMap;

use crate::dispcat::{check_display_axioms, check_root, fibration_closure, DispCat, MapClass};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId, PullbackWitness};
use crate::par;
use crate::pathcat::{
    bang, check_path_object, find_path_object, homotopic, homotopic_via, path_object_candidates, HomotopyModel,
    HomotopyWitness, PathCat, PathObjectWitness,
};
use crate::report::Finding;

/// `f = p ∘ w` with `w` an equivalence and `p` a fibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub f: MorId,
    /// `Lf = B ×_{f,s} PA`.
    pub square: PullbackWitness,
    pub w: MorId,
    pub p: MorId,
    pub path: PathObjectWitness,
}

impl Factorization {
    pub fn object(&self) -> ObjId {
        self.square.apex
    }
}

fn object_path<M: HomotopyModel + ?Sized>(m: &M, a: ObjId) -> Result<PathObjectWitness> {
    let c = m.cat();
    bang(c, a)
        .and_then(|b| m.path_object(b).copied())
        .ok_or_else(|| Error::NoPathObject(c.obj_name(a).to_string()))
}

/// Mapping path space factorization `w_f = (1, r∘f)`, `p_f = t∘π₁`.
pub fn factorize<M: HomotopyModel + ?Sized>(m: &M, f: MorId) -> Result<Factorization> {
    let c = m.cat();
    let (b, a) = (c.dom(f), c.cod(f));
    let pa = object_path(m, a)?;
    let square = c.pullback_or_err(f, pa.s)?;
    let w = c.mediate_or_err(&square, c.id(b), c.compose(pa.r, f))?;
    let p = c.compose(pa.t, square.proj_right);
    if c.compose(p, w) != f {
        return Err(Error::Precondition(format!("p_f ∘ w_f != {}", c.mor_name(f))));
    }
    if m.is_equivalence(w) == Some(false) {
        return Err(Error::Precondition(format!("w_f = {} is not an equivalence", c.mor_name(w))));
    }
    if !m.fibrations().contains(p) {
        return Err(Error::Precondition(format!("p_f = {} is not a fibration", c.mor_name(p))));
    }
    Ok(Factorization {
        f,
        square,
        w,
        p,
        path: pa,
    })
}

/// A square `p∘f = σ∘w` with `w: B → Δ` an equivalence and `p: A → Γ` a fibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftProblem {
    pub w: MorId,
    pub f: MorId,
    pub p: MorId,
    pub sigma: MorId,
}

impl LiftProblem {
    pub fn describe(&self, c: &FiniteCategory) -> String {
        format!(
            "w={} f={} p={} sigma={}",
            c.mor_name(self.w),
            c.mor_name(self.f),
            c.mor_name(self.p),
            c.mor_name(self.sigma)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSolution {
    pub problem: LiftProblem,
    pub lift: MorId,
    /// `lift ∘ w ≃_Γ f`.
    pub homotopy: HomotopyWitness,
    /// Every lift found, in id order; pairwise fibrewise homotopic.
    pub candidates: Vec<MorId>,
}

fn no_lift(c: &FiniteCategory, prob: &LiftProblem) -> Error {
    Error::NoLift {
        w: c.mor_name(prob.w).to_string(),
        f: c.mor_name(prob.f).to_string(),
        p: c.mor_name(prob.p).to_string(),
        sigma: c.mor_name(prob.sigma).to_string(),
    }
}

/// Searches every `l: Δ → A` with `p∘l = σ` and `l∘w ≃_Γ f`, and checks the lifts
/// found are pairwise fibrewise homotopic.
pub fn lift<M: HomotopyModel + ?Sized>(m: &M, prob: &LiftProblem) -> Result<LiftSolution> {
    let c = m.cat();
    let LiftProblem { w, f, p, sigma } = *prob;
    let typed = c.dom(w) == c.dom(f) && c.cod(f) == c.dom(p) && c.cod(w) == c.dom(sigma) && c.cod(sigma) == c.cod(p);
    if !typed || c.compose(p, f) != c.compose(sigma, w) {
        return Err(Error::Precondition(format!("square does not commute: {}", prob.describe(c))));
    }
    if m.is_equivalence(w) == Some(false) {
        return Err(Error::Precondition(format!("{} is not an equivalence", c.mor_name(w))));
    }
    if !m.fibrations().contains(p) {
        return Err(Error::Precondition(format!("{} is not a fibration", c.mor_name(p))));
    }
    let path = *m
        .path_object(p)
        .ok_or_else(|| Error::NoPathObject(c.mor_name(p).to_string()))?;
    let hom: Vec<MorId> = c.hom(c.cod(w), c.dom(p)).to_vec();
    let found: Vec<Option<HomotopyWitness>> = par::map(&hom, |&l| {
        if c.compose(p, l) != sigma {
            return None;
        }
        homotopic_via(c, &path, c.compose(l, w), f)
    });
    let solutions: Vec<(MorId, HomotopyWitness)> =
        hom.iter().zip(found).filter_map(|(&l, h)| h.map(|h| (l, h))).collect();
    let Some(&(first, homotopy)) = solutions.first() else {
        return Err(no_lift(c, prob));
    };
    let candidates: Vec<MorId> = solutions.iter().map(|(l, _)| *l).collect();
    for (i, &l1) in candidates.iter().enumerate() {
        for &l2 in &candidates[i + 1..] {
            if homotopic_via(c, &path, l1, l2).is_none() {
                return Err(Error::LiftNotUnique(c.mor_name(l1).to_string(), c.mor_name(l2).to_string()));
            }
        }
    }
    Ok(LiftSolution {
        problem: *prob,
        lift: first,
        homotopy,
        candidates,
    })
}

/// Every commuting square with `w` an equivalence and `p` a fibration that has a path object.
pub fn lift_problems<M: HomotopyModel + ?Sized>(m: &M) -> Vec<LiftProblem> {
    let c = m.cat();
    let Some(eq) = m.equivalences() else {
        return Vec::new();
    };
    let ws: Vec<MorId> = eq.iter().collect();
    par::flat_map(&ws, |&w| {
        let mut out = Vec::new();
        for p in m.fibrations().iter() {
            if m.path_object(p).is_none() {
                continue;
            }
            for &f in c.hom(c.dom(w), c.dom(p)) {
                for &sigma in c.hom(c.cod(w), c.cod(p)) {
                    if c.compose(p, f) == c.compose(sigma, w) {
                        out.push(LiftProblem { w, f, p, sigma });
                    }
                }
            }
        }
        out
    })
}

/// `τ: Lp → A` with `p∘τ = t∘π₁` and `τ∘(1, r∘p) ≃_Γ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransportWitness {
    pub fib: MorId,
    pub base_path: PathObjectWitness,
    /// `Lp = A ×_{p,s} PΓ`.
    pub square: PullbackWitness,
    /// `(1, r∘p): A → Lp`.
    pub wp: MorId,
    pub tau: MorId,
    pub homotopy: HomotopyWitness,
}

pub fn transport<M: HomotopyModel + ?Sized>(m: &M, fib: MorId, base_path: &PathObjectWitness) -> Result<TransportWitness> {
    let c = m.cat();
    let (a, gamma) = (c.dom(fib), c.cod(fib));
    if base_path.carrier(c) != gamma {
        return Err(Error::Precondition(format!(
            "path object is not over the base of {}",
            c.mor_name(fib)
        )));
    }
    let square = c.pullback_or_err(fib, base_path.s)?;
    let wp = c.mediate_or_err(&square, c.id(a), c.compose(base_path.r, fib))?;
    let pp = c.compose(base_path.t, square.proj_right);
    let sol = lift(
        m,
        &LiftProblem {
            w: wp,
            f: c.id(a),
            p: fib,
            sigma: pp,
        },
    )?;
    Ok(TransportWitness {
        fib,
        base_path: *base_path,
        square,
        wp,
        tau: sol.lift,
        homotopy: sol.homotopy,
    })
}

/// Path object of the terminal object: `1` itself.
pub fn terminal_path_object(c: &FiniteCategory) -> Result<PathObjectWitness> {
    let t = c.terminal_object().ok_or(Error::NoTerminal)?;
    let id = c.id(t);
    PathObjectWitness::assemble(c, id, id, id, id)
}

/// One induction step output: `PB` together with the data certifying `r_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Synthesis {
    pub witness: PathObjectWitness,
    pub transport: TransportWitness,
    /// `(B×B) ×_{A×A} PA`.
    pub middle: PullbackWitness,
    /// `L_Aτ = Lp ×_{τ,s} P_A B`.
    pub mapping_path_space: PullbackWitness,
    /// The comparison isomorphism `PB → L_Aτ`.
    pub comparison: MorId,
}

/// Combines a path object `PA` of `A` and a path object `P_A B` of `p: B → A`
/// into a path object of `B`.
pub fn synthesize_path_fibration<M: HomotopyModel + ?Sized>(
    m: &M,
    p: MorId,
    pa: &PathObjectWitness,
    pab: &PathObjectWitness,
) -> Result<Synthesis> {
    let c = m.cat();
    let (b, a) = (c.dom(p), c.cod(p));
    let bang_b = bang(c, b).ok_or(Error::NoTerminal)?;
    let bang_a = bang(c, a).ok_or(Error::NoTerminal)?;
    if pa.base != bang_a || pab.base != p {
        return Err(Error::Precondition("path objects do not match the fibration".into()));
    }
    let bb = c.pullback_or_err(bang_b, bang_b)?;
    let (pi0, pi1) = (bb.proj_left, bb.proj_right);
    let pxp = c.mediate_or_err(&pa.square, c.compose(p, pi0), c.compose(p, pi1))?;
    let middle = c.pullback_or_err(pxp, pa.st)?;
    let (rho0, rho1) = (middle.proj_left, middle.proj_right);

    let tr = transport(m, p, pa)?;
    let to_lp = c.mediate_or_err(&tr.square, c.compose(pi0, rho0), rho1)?;
    let first = c.compose(tr.tau, to_lp);
    let second = c.compose(pi1, rho0);
    let classify = c.mediate_or_err(&pab.square, first, second)?;
    let top = c.pullback_or_err(classify, pab.st)?;
    let (nu0, nu1) = (top.proj_left, top.proj_right);

    let diag = c.mediate_or_err(&bb, c.id(b), c.id(b))?;
    let x_r = c.mediate_or_err(&middle, diag, c.comp(&[pa.r, p]))?;
    let r_b = c.mediate(&top, x_r, pab.r).ok_or_else(|| {
        Error::Precondition(format!(
            "transport {} does not fix reflexivity paths on the nose, so r_B is undefined",
            c.mor_name(tr.tau)
        ))
    })?;
    let st = c.compose(rho0, nu0);
    let witness = PathObjectWitness {
        base: bang_b,
        square: bb,
        object: top.apex,
        r: r_b,
        s: c.compose(pi0, st),
        t: c.compose(pi1, st),
        st,
    };

    let lat = c.pullback_or_err(tr.tau, pab.s)?;
    let comparison = c.mediate_or_err(&lat, c.compose(to_lp, nu0), nu1)?;
    if c.is_isomorphism(comparison).is_none() {
        return Err(Error::Precondition(format!(
            "comparison {} to the mapping path space is not invertible",
            c.mor_name(comparison)
        )));
    }
    if c.comp(&[lat.proj_left, comparison, r_b]) != tr.wp {
        return Err(Error::Precondition("comparison does not carry r_B to w_p".into()));
    }

    let eq = m.equivalences().cloned().unwrap_or_else(|| MapClass::isomorphisms(c));
    // r_B is an equivalence: π₀ of L_Aτ and w_p are, and the comparison is invertible.
    if !(eq.contains(lat.proj_left) && eq.contains(tr.wp)) || !eq.contains(r_b) {
        return Err(Error::Precondition(format!("r_B = {} is not an equivalence", c.mor_name(r_b))));
    }
    if let Some(f) = check_path_object(c, &witness, m.fibrations(), &eq).first() {
        return Err(Error::Precondition(format!("synthesized path object fails: {f}")));
    }
    Ok(Synthesis {
        witness,
        transport: tr,
        middle,
        mapping_path_space: lat,
        comparison,
    })
}

/// Iterates the synthesis down a root telescope `B₁ → 1, B₂ → B₁, …`.
pub fn synthesize_telescope<M: HomotopyModel + ?Sized>(m: &M, tower: &[MorId]) -> Result<Vec<Synthesis>> {
    let c = m.cat();
    let mut pa = terminal_path_object(c)?;
    let t = c.terminal_object().ok_or(Error::NoTerminal)?;
    let mut out = Vec::new();
    let mut expected = t;
    for &d in tower {
        if c.cod(d) != expected {
            return Err(Error::Precondition(format!("{} does not extend the telescope", c.mor_name(d))));
        }
        let pab = *m
            .path_object(d)
            .ok_or_else(|| Error::NoPathObject(c.mor_name(d).to_string()))?;
        let syn = synthesize_path_fibration(m, d, &pa, &pab)?;
        pa = syn.witness;
        expected = c.dom(d);
        out.push(syn);
    }
    Ok(out)
}

/// All telescopes of display maps of length `1..=max_len` starting at the terminal object.
pub fn root_telescopes(c: &FiniteCategory, display: &MapClass, max_len: usize) -> Vec<Vec<MorId>> {
    let Some(t) = c.terminal_object() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<MorId>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for tower in &frontier {
            let top = tower.last().map(|&d| c.dom(d)).unwrap_or(t);
            for d in display.iter().filter(|&d| c.cod(d) == top) {
                let mut ext = tower.clone();
                ext.push(d);
                next.push(ext);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The slice of fibrations over `gamma`, with classes inherited and path objects recomputed.
pub fn slice_fib(p: &PathCat, gamma: ObjId) -> Result<PathCat> {
    let c = p.cat();
    let fib = p.fibrations();
    let eq = p.equivalences().cloned().unwrap_or_default();
    let objs: Vec<MorId> = fib.iter().filter(|&x| c.cod(x) == gamma).collect();
    let name = |m: MorId, x: MorId, y: MorId| format!("{}:{}>{}", c.mor_name(m), c.mor_name(x), c.mor_name(y));
    let mut mors = Vec::new();
    let mut arrows = Vec::new();
    for &x in &objs {
        for &y in &objs {
            for &m in c.hom(c.dom(x), c.dom(y)) {
                if c.compose(y, m) == x {
                    mors.push((name(m, x, y), c.mor_name(x).to_string(), c.mor_name(y).to_string()));
                    arrows.push((m, x, y));
                }
            }
        }
    }
    let ids: Vec<(String, String)> = objs
        .iter()
        .map(|&x| (c.mor_name(x).to_string(), name(c.id(c.dom(x)), x, x)))
        .collect();
    let mut comps = Vec::new();
    for &(m1, x, y) in &arrows {
        for &(m2, y2, z) in &arrows {
            if y2 == y {
                comps.push((name(m2, y, z), name(m1, x, y), name(c.compose(m2, m1), x, z)));
            }
        }
    }
    let obj_names: Vec<String> = objs.iter().map(|&x| c.mor_name(x).to_string()).collect();
    let sc = FiniteCategory::from_parts(&obj_names, &mors, &ids, &comps)?;
    let lookup = |(m, x, y): &(MorId, MorId, MorId)| sc.morphism(&name(*m, *x, *y));
    let sfib: MapClass = arrows.iter().filter(|a| fib.contains(a.0)).filter_map(lookup).collect();
    let seq: MapClass = arrows.iter().filter(|a| eq.contains(a.0)).filter_map(lookup).collect();
    PathCat::new(sc, sfib, seq, BTreeMap::new())
}

/// Result of deciding PO, PF, F, T and L independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomMatrix {
    /// Failures of axioms 1–5 or the root; when nonempty the vector is not computed.
    pub precondition: Vec<Finding>,
    /// `(PO, PF, F, T, L)`.
    pub vector: Option<[bool; 5]>,
    pub findings: Vec<Finding>,
}

pub const MATRIX_LABELS: [&str; 5] = ["PO", "PF", "F", "T", "L"];

impl AxiomMatrix {
    pub fn constant(&self) -> bool {
        match self.vector {
            Some(v) => v.iter().all(|&x| x == v[0]),
            None => false,
        }
    }
}

/// Decides each of PO, PF, F, T, L by witness search on a display map category with equivalences.
pub fn check_equivalent_axioms(d: &DispCat, eq: &MapClass) -> AxiomMatrix {
    let c = d.cat();
    let mut pre = check_display_axioms(d);
    pre.extend(check_root(d));
    let fib = fibration_closure(d);
    pre.extend(equivalence_axioms_for(c, &fib, eq));
    for p in d.display().iter() {
        if find_path_object(c, p, d.display(), eq).is_none() {
            pre.push(Finding::new("path-display-map", "display map has no path display map", vec![c.mor_name(p).to_string()]));
        }
    }
    if !pre.is_empty() {
        return AxiomMatrix {
            precondition: pre,
            vector: None,
            findings: Vec::new(),
        };
    }
    let mut findings = Vec::new();

    let po_fail: Vec<ObjId> = c
        .objects()
        .filter(|&o| bang(c, o).and_then(|b| find_path_object(c, b, &fib, eq)).is_none())
        .collect();
    for o in &po_fail {
        findings.push(Finding::new("PO", "object has no path object", vec![c.obj_name(*o).to_string()]));
    }

    let fibs: Vec<MorId> = fib.iter().collect();
    let path_fibs: BTreeMap<MorId, PathObjectWitness> = fibs
        .iter()
        .copied()
        .zip(par::map(&fibs, |&f| find_path_object(c, f, &fib, eq)))
        .filter_map(|(f, w)| w.map(|w| (f, w)))
        .collect();
    for f in fibs.iter().filter(|f| !path_fibs.contains_key(f)) {
        findings.push(Finding::new("PF", "fibration has no path fibration", vec![c.mor_name(*f).to_string()]));
    }

    let maps: Vec<MorId> = c.morphisms().collect();
    let factorable = par::map(&maps, |&f| {
        c.objects().any(|l| {
            c.hom(c.dom(f), l).iter().any(|&w| {
                eq.contains(w) && c.hom(l, c.cod(f)).iter().any(|&q| fib.contains(q) && c.compose(q, w) == f)
            })
        })
    });
    for (f, ok) in maps.iter().zip(&factorable) {
        if !ok {
            findings.push(Finding::new("F", "map has no equivalence-fibration factorization", vec![c.mor_name(*f).to_string()]));
        }
    }

    let displays: Vec<MorId> = d.display().iter().collect();
    let t_fail = par::flat_map(&displays, |&p| transport_failures(c, d, p, &fib, eq));
    findings.extend(t_fail.iter().cloned());

    let model = crate::pathcat::Snapshot {
        cat: c,
        fib: &fib,
        eq,
        paths: &path_fibs,
    };
    let problems = all_squares(c, &fib, eq);
    let l_fail = par::flat_map(&problems, |prob| {
        if !path_fibs.contains_key(&prob.p) {
            return vec![Finding::new("L", "no path fibration to compare lifts", vec![c.mor_name(prob.p).to_string()])];
        }
        match lift(&model, prob) {
            Ok(_) => Vec::new(),
            Err(e) => vec![Finding::new("L", e.to_string(), c.names(&[prob.w, prob.f, prob.p, prob.sigma]))],
        }
    });
    findings.extend(l_fail.iter().cloned());

    let vector = [
        po_fail.is_empty(),
        path_fibs.len() == fibs.len(),
        factorable.iter().all(|&x| x),
        t_fail.is_empty(),
        l_fail.is_empty(),
    ];
    if !vector.iter().all(|&x| x == vector[0]) {
        findings.push(Finding::new(
            "matrix",
            format!("equivalent axioms disagree: {vector:?}"),
            MATRIX_LABELS.iter().map(|s| s.to_string()).collect(),
        ));
    }
    AxiomMatrix {
        precondition: Vec::new(),
        vector: Some(vector),
        findings,
    }
}

fn equivalence_axioms_for(c: &FiniteCategory, fib: &MapClass, eq: &MapClass) -> Vec<Finding> {
    crate::pathcat::check_equivalence_axioms(c, fib, eq)
}

fn all_squares(c: &FiniteCategory, fib: &MapClass, eq: &MapClass) -> Vec<LiftProblem> {
    let mut out = Vec::new();
    for w in eq.iter() {
        for p in fib.iter() {
            for &f in c.hom(c.dom(w), c.dom(p)) {
                for &sigma in c.hom(c.cod(w), c.cod(p)) {
                    if c.compose(p, f) == c.compose(sigma, w) {
                        out.push(LiftProblem { w, f, p, sigma });
                    }
                }
            }
        }
    }
    out
}

fn transport_failures(c: &FiniteCategory, d: &DispCat, p: MorId, fib: &MapClass, eq: &MapClass) -> Vec<Finding> {
    let (a, gamma) = (c.dom(p), c.cod(p));
    let Some(bg) = bang(c, gamma) else {
        return vec![Finding::new("T", "no terminal object", Vec::new())];
    };
    let Some(pp) = find_path_object(c, p, d.display(), eq) else {
        return vec![Finding::new("T", "no path display map", vec![c.mor_name(p).to_string()])];
    };
    let mut out = Vec::new();
    for pg in path_object_candidates(c, bg, fib, eq) {
        let Some(sq) = c.pullback(p, pg.s) else {
            out.push(Finding::new("T", "Lp does not exist", c.names(&[p, pg.s])));
            continue;
        };
        let Some(wp) = c.mediate(&sq, c.id(a), c.compose(pg.r, p)) else {
            out.push(Finding::new("T", "(1, rp) does not exist", c.names(&[p, pg.r])));
            continue;
        };
        let target = c.compose(pg.t, sq.proj_right);
        let ok = c
            .hom(sq.apex, a)
            .iter()
            .any(|&tau| c.compose(p, tau) == target && homotopic_via(c, &pp, c.compose(tau, wp), c.id(a)).is_some());
        if !ok {
            out.push(Finding::new("T", "no transport map", vec![c.mor_name(p).to_string(), pg.describe(c)]));
        }
    }
    out
}

/// Fibrewise homotopy through the model, tolerating a missing path object.
pub fn fibrewise<M: HomotopyModel + ?Sized>(m: &M, base: MorId, f: MorId, g: MorId) -> bool {
    matches!(homotopic(m, base, f, g), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathcat::{check_path_axioms, homotopy_equivalences};

    fn interval() -> FiniteCategory {
        FiniteCategory::from_parts(
            &["0", "1"],
            &[("id0", "0", "0"), ("id1", "1", "1"), ("u", "0", "1"), ("v", "1", "0")],
            &[("0", "id0"), ("1", "id1")],
            &[("v", "u", "id0"), ("u", "v", "id1")],
        )
        .unwrap()
    }

    fn diamond() -> FiniteCategory {
        FiniteCategory::preorder(&["b", "x", "y", "t"], &[("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")]).unwrap()
    }

    fn trivial(c: &FiniteCategory) -> PathCat {
        PathCat::new(c.clone(), MapClass::all(c), MapClass::isomorphisms(c), BTreeMap::new()).unwrap()
    }

    #[test]
    fn factorize_identity_and_all_maps() {
        let c = diamond();
        let p = trivial(&c);
        let he = homotopy_equivalences(&p);
        for f in c.morphisms() {
            let fac = factorize(&p, f).unwrap();
            assert_eq!(c.compose(fac.p, fac.w), f);
            assert!(he.contains(fac.w));
            assert!(p.fibrations().contains(fac.p));
        }
        let id = c.id(c.object("x").unwrap());
        let fac = factorize(&p, id).unwrap();
        assert!(c.is_isomorphism(fac.w).is_some());
    }

    #[test]
    fn factorize_interval() {
        let i = interval();
        let p = PathCat::new(i.clone(), MapClass::all(&i), MapClass::all(&i), BTreeMap::new()).unwrap();
        let u = i.morphism("u").unwrap();
        let fac = factorize(&p, u).unwrap();
        assert_eq!(i.compose(fac.p, fac.w), u);
    }

    #[test]
    fn identity_lift() {
        let c = diamond();
        let p = trivial(&c);
        let f = c.morphism("b_x").unwrap();
        let x_t = c.morphism("x_t").unwrap();
        let sol = lift(
            &p,
            &LiftProblem {
                w: c.id(c.object("b").unwrap()),
                f,
                p: x_t,
                sigma: c.morphism("b_t").unwrap(),
            },
        )
        .unwrap();
        assert_eq!(sol.lift, f);
        assert_eq!(sol.candidates, vec![f]);
    }

    #[test]
    fn lift_rejects_non_commuting_square() {
        let i = interval();
        let p = PathCat::new(i.clone(), MapClass::all(&i), MapClass::isomorphisms(&i), BTreeMap::new()).unwrap();
        let (u, id0, id1) = (i.morphism("u").unwrap(), i.morphism("id0").unwrap(), i.morphism("id1").unwrap());
        let bad = LiftProblem {
            w: id0,
            f: id0,
            p: id1,
            sigma: u,
        };
        assert!(matches!(lift(&p, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_interval_lifts_unique() {
        let i = interval();
        let p = PathCat::new(i.clone(), MapClass::all(&i), MapClass::all(&i), BTreeMap::new()).unwrap();
        let probs = lift_problems(&p);
        assert!(!probs.is_empty());
        for prob in &probs {
            lift(&p, prob).unwrap();
        }
    }

    #[test]
    fn transport_over_terminal_is_identity_like() {
        let c = diamond();
        let p = trivial(&c);
        let pt = terminal_path_object(&c).unwrap();
        let fib = c.morphism("x_t").unwrap();
        let tr = transport(&p, fib, &pt).unwrap();
        assert_eq!(c.compose(fib, tr.tau), c.compose(pt.t, tr.square.proj_right));
        assert!(c.is_isomorphism(tr.square.proj_left).is_some());
        assert_eq!(c.compose(tr.tau, tr.wp), c.id(c.object("x").unwrap()));
    }

    #[test]
    fn synthesize_degenerate_tower() {
        let c = diamond();
        let p = trivial(&c);
        let t = c.object("t").unwrap();
        let pa = terminal_path_object(&c).unwrap();
        let id = c.id(t);
        let syn = synthesize_path_fibration(&p, id, &pa, p.path_object(id).unwrap()).unwrap();
        assert!(c.is_isomorphism(syn.witness.r).is_some());
        for tower in root_telescopes(&c, p.fibrations(), 3) {
            let steps = synthesize_telescope(&p, &tower).unwrap();
            assert_eq!(steps.len(), tower.len());
        }
    }

    #[test]
    fn slice_over_terminal_and_over_x() {
        let c = diamond();
        let p = trivial(&c);
        let s = slice_fib(&p, c.object("t").unwrap()).unwrap();
        assert_eq!(s.cat().object_count(), c.object_count());
        assert_eq!(s.cat().morphism_count(), c.morphism_count());
        assert_eq!(check_path_axioms(&s), vec![]);
        let s = slice_fib(&p, c.object("x").unwrap()).unwrap();
        assert_eq!(s.cat().object_count(), 2);
        assert_eq!(check_path_axioms(&s), vec![]);
    }

    #[test]
    fn matrix_trivial_all_true_and_guard() {
        let c = diamond();
        let d = DispCat::new(c.clone(), MapClass::all(&c)).unwrap();
        let m = check_equivalent_axioms(&d, &MapClass::isomorphisms(&c));
        assert_eq!(m.vector, Some([true; 5]), "{:?}", m.findings);
        assert!(m.constant());
        let w = FiniteCategory::preorder(&["A", "B"], &[("A", "B")]).unwrap();
        let d = DispCat::new(w.clone(), MapClass::all(&w)).unwrap();
        let m = check_equivalent_axioms(&d, &MapClass::all(&w));
        assert!(m.vector.is_none());
        assert!(!m.precondition.is_empty());
    }
}
