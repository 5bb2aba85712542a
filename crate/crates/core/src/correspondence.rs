//! Translations between path categories and display map categories, 1-cells and splitting.

use std::collections::BTreeMap;

use crate::dispcat::{
    check_display_axioms, check_root, check_split, fibration_closure, repletion, DispCat, MapClass, Reindexing, StrictType,
    Structure,
};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId, PullbackWitness};
use crate::par;
use crate::pathcat::{bootstrap_equivalences, check_path_axioms, check_saturation, DisplayPathCat, HomotopyModel, PathCat};
use crate::report::{Finding, Node};
use crate::typeformers::{check_ext_unit_sigma, check_id_structure, check_weak_stability_id, derive_id, ExtUnitSigma, Flavor, IdStructure, StabilityReport};

/// A display map category together with the type formers derived for it.
#[derive(Clone, Debug)]
pub struct DispModel {
    pub disp: DispCat,
    pub id_types: Vec<IdStructure>,
    pub ext: ExtUnitSigma,
    pub stability: StabilityReport,
}

impl DispModel {
    pub fn findings(&self) -> Vec<Finding> {
        let c = self.disp.cat();
        let mut out = check_display_axioms(&self.disp);
        out.extend(check_root(&self.disp));
        out.extend(self.ext.findings.iter().cloned());
        for s in &self.id_types {
            out.extend(check_id_structure(&self.disp, s, Flavor::Axiomatic));
        }
        for e in self.stability.entries.iter().filter(|e| !e.positive()) {
            out.push(Finding::new(
                "weak-stability",
                e.failure.clone().unwrap_or_else(|| "comparison arrows missing".into()),
                c.names(&[e.ty, e.sigma]),
            ));
        }
        out
    }
}

/// Every fibration becomes a display map; =-types come from the chosen path objects.
pub fn path_to_dispcat(p: &PathCat) -> Result<DispModel> {
    let disp = p.clan().clone();
    let tys: Vec<MorId> = disp.display().iter().collect();
    let id_types = par::map(&tys, |&ty| derive_id(p, ty)).into_iter().collect::<Result<Vec<_>>>()?;
    let ext = check_ext_unit_sigma(&disp);
    let stability = check_weak_stability_id(p);
    Ok(DispModel {
        disp,
        id_types,
        ext,
        stability,
    })
}

/// The display path category whose equivalences are grown from the isomorphisms by
/// adding homotopy equivalences for display path objects.
pub fn equip_id_types(d: &DispCat) -> DisplayPathCat {
    let fib = fibration_closure(d);
    let (eq, _) = bootstrap_equivalences(d.cat(), &fib, d.display());
    DisplayPathCat::new(d.clone(), eq)
}

/// Fibrations are the display maps, equivalences the homotopy equivalences.
pub fn dispcat_to_path(d: &DispCat) -> Result<PathCat> {
    let c = d.cat();
    if let Some(f) = check_root(d).first() {
        return Err(Error::Precondition(format!("input is not rooted: {f}")));
    }
    let ext = check_ext_unit_sigma(d);
    if !(ext.unit && ext.sigma) {
        let f = ext.findings.first().map(|f| f.to_string()).unwrap_or_default();
        return Err(Error::Precondition(format!("extensional 1/Σ verdict negative: {f}")));
    }
    let dp = equip_id_types(d);
    let eq = dp.equivalences().cloned().unwrap_or_else(|| MapClass::isomorphisms(c));
    let p = PathCat::new(c.clone(), d.display().clone(), eq, BTreeMap::new())?;
    let mut bad = check_path_axioms(&p);
    bad.extend(check_saturation(&p));
    if let Some(f) = bad.first() {
        return Err(Error::Precondition(format!("path axiom fails: {f}")));
    }
    Ok(p)
}

fn compare_classes(c: &FiniteCategory, rule: &str, before: &MapClass, after: &MapClass) -> Vec<Finding> {
    let mut out = Vec::new();
    for f in before.difference(after).iter() {
        out.push(Finding::new(rule, "lost in the round trip", vec![c.mor_name(f).to_string()]));
    }
    for f in after.difference(before).iter() {
        out.push(Finding::new(rule, "gained in the round trip", vec![c.mor_name(f).to_string()]));
    }
    out
}

/// `dispcat_to_path ∘ path_to_dispcat` compared componentwise with the input.
pub fn roundtrip_path(p: &PathCat) -> Result<Vec<Finding>> {
    let model = path_to_dispcat(p)?;
    let q = dispcat_to_path(&model.disp)?;
    let c = p.cat();
    let mut out = Vec::new();
    if q.cat() != c {
        out.push(Finding::new("roundtrip-category", "underlying category changed", Vec::new()));
        return Ok(out);
    }
    out.extend(compare_classes(c, "roundtrip-fibrations", p.fibrations(), q.fibrations()));
    let e0 = p.equivalences().cloned().unwrap_or_default();
    let e1 = q.equivalences().cloned().unwrap_or_default();
    out.extend(compare_classes(c, "roundtrip-equivalences", &e0, &e1));
    Ok(out)
}

/// `path_to_dispcat ∘ dispcat_to_path` compared componentwise with the input.
pub fn roundtrip_disp(d: &DispCat) -> Result<Vec<Finding>> {
    let p = dispcat_to_path(d)?;
    let model = path_to_dispcat(&p)?;
    let c = d.cat();
    if model.disp.cat() != c {
        return Ok(vec![Finding::new("roundtrip-category", "underlying category changed", Vec::new())]);
    }
    Ok(compare_classes(c, "roundtrip-display", d.display(), model.disp.display()))
}

/// A functor between finite categories, given on ids of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor {
            objects: c.objects().collect(),
            morphisms: c.morphisms().collect(),
        }
    }

    /// Everything to the single object of `target`.
    pub fn constant(source: &FiniteCategory, target: &FiniteCategory, o: ObjId) -> Self {
        Functor {
            objects: vec![o; source.object_count()],
            morphisms: vec![target.id(o); source.morphism_count()],
        }
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.objects[o.idx()]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.morphisms[f.idx()]
    }

    pub fn check_laws(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Vec<Finding> {
        if self.objects.len() != src.object_count() || self.morphisms.len() != src.morphism_count() {
            return vec![Finding::new("functor", "maps do not cover the source", Vec::new())];
        }
        if self.objects.iter().any(|o| o.idx() >= tgt.object_count()) || self.morphisms.iter().any(|f| f.idx() >= tgt.morphism_count()) {
            return vec![Finding::new("functor", "maps leave the target", Vec::new())];
        }
        let mut out = Vec::new();
        for f in src.morphisms() {
            let g = self.mor(f);
            if tgt.dom(g) != self.obj(src.dom(f)) || tgt.cod(g) != self.obj(src.cod(f)) {
                out.push(Finding::new("functor-typing", "image has the wrong endpoints", vec![src.mor_name(f).to_string()]));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in src.objects() {
            if self.mor(src.id(o)) != tgt.id(self.obj(o)) {
                out.push(Finding::new("functor-identity", "identity not preserved", vec![src.obj_name(o).to_string()]));
            }
        }
        for f in src.morphisms() {
            for g in src.out_of(src.cod(f)) {
                if self.mor(src.compose(g, f)) != tgt.compose(self.mor(g), self.mor(f)) {
                    out.push(Finding::new("functor-composition", "composite not preserved", src.names(&[g, f])));
                }
            }
        }
        out
    }
}

fn is_terminal(c: &FiniteCategory, t: ObjId) -> bool {
    c.objects().all(|x| c.hom(x, t).len() == 1)
}

/// Which kind of structure a 1-cell must preserve.
pub enum Cell<'a> {
    Path(&'a PathCat, &'a PathCat),
    Disp(&'a DispCat, &'a DispCat),
}

fn preserves_class(f: &Functor, src: &FiniteCategory, tgt: &FiniteCategory, a: &MapClass, b: &MapClass, rule: &str) -> Vec<Finding> {
    let _ = tgt;
    a.iter()
        .filter(|&m| !b.contains(f.mor(m)))
        .map(|m| Finding::new(rule, "image leaves the class", vec![src.mor_name(m).to_string()]))
        .collect()
}

fn preserves_pullbacks(f: &Functor, src: &FiniteCategory, tgt: &FiniteCategory, class: &MapClass, rule: &str) -> Vec<Finding> {
    let mut out = Vec::new();
    for p in class.iter() {
        for s in src.into(src.cod(p)) {
            if let Some(sq) = src.pullback(s, p) {
                if !tgt.is_pullback(f.mor(s), f.mor(p), f.mor(sq.proj_left), f.mor(sq.proj_right)) {
                    out.push(Finding::new(rule, "pullback square not preserved", src.names(&[s, p])));
                }
            }
        }
    }
    out
}

fn preserves_terminal(f: &Functor, src: &FiniteCategory, tgt: &FiniteCategory) -> Vec<Finding> {
    match src.terminal_object() {
        Some(t) if !is_terminal(tgt, f.obj(t)) => {
            vec![Finding::new("terminal", "terminal object not preserved", vec![src.obj_name(t).to_string()])]
        }
        _ => Vec::new(),
    }
}

pub fn check_1cell(f: &Functor, cell: Cell<'_>) -> Vec<Finding> {
    match cell {
        Cell::Path(s, t) => {
            let (sc, tc) = (s.cat(), t.cat());
            let mut out = f.check_laws(sc, tc);
            if !out.is_empty() {
                return out;
            }
            out.extend(preserves_class(f, sc, tc, s.fibrations(), t.fibrations(), "fibration"));
            out.extend(preserves_class(f, sc, tc, &s.trivial_fibrations(), &t.trivial_fibrations(), "trivial-fibration"));
            out.extend(preserves_pullbacks(f, sc, tc, s.fibrations(), "pullback"));
            out.extend(preserves_terminal(f, sc, tc));
            let (se, te) = (s.equivalences().cloned().unwrap_or_default(), t.equivalences().cloned().unwrap_or_default());
            out.extend(preserves_class(f, sc, tc, &se, &te, "equivalence"));
            out
        }
        Cell::Disp(s, t) => {
            let (sc, tc) = (s.cat(), t.cat());
            let mut out = f.check_laws(sc, tc);
            if !out.is_empty() {
                return out;
            }
            out.extend(preserves_class(f, sc, tc, s.display(), t.display(), "display"));
            out.extend(preserves_pullbacks(f, sc, tc, s.display(), "pullback"));
            if check_root(s).is_empty() && check_root(t).is_empty() {
                out.extend(preserves_terminal(f, sc, tc));
            }
            let (se, te) = (equip_id_types(s), equip_id_types(t));
            out.extend(preserves_class(
                f,
                sc,
                tc,
                se.equivalences().unwrap_or(&MapClass::empty()),
                te.equivalences().unwrap_or(&MapClass::empty()),
                "equivalence",
            ));
            out
        }
    }
}

/// The split category, its unit, and for every split type an old type isomorphic to it.
#[derive(Clone, Debug)]
pub struct Split {
    pub disp: DispCat,
    pub unit: Functor,
    /// Split type `k` is `(σ, A)`.
    pub pairs: Vec<(MorId, usize)>,
    /// `(k, j, iso)`: split type `k` is isomorphic over its context to the image of old type `j`.
    pub type_isos: Vec<(usize, usize, MorId)>,
}

/// Types over `Γ` are pairs `(σ: Γ → Δ, A over Δ)` reindexed by precomposition.
pub fn left_adjoint_split(d: &DispCat) -> Result<Split> {
    let s = d.structure().ok_or(Error::NotStructured)?;
    let c = d.cat();
    let mut pairs = Vec::new();
    for (i, t) in s.types.iter().enumerate() {
        for sigma in c.into(c.cod(t.display)) {
            pairs.push((sigma, i));
        }
    }
    pairs.sort_by_key(|p| (p.1, p.0));
    let index: BTreeMap<(MorId, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let chosen = |sigma: MorId, i: usize| -> Result<(Reindexing, MorId)> {
        let r = *s.table.get(&(i, sigma)).ok_or_else(|| {
            Error::Precondition(format!("no chosen reindexing of {} along {}", s.types[i].name, c.mor_name(sigma)))
        })?;
        Ok((r, s.types[r.result].display))
    };
    let mut types = Vec::new();
    for &(sigma, i) in &pairs {
        let (_, disp) = chosen(sigma, i)?;
        types.push(StrictType {
            name: format!("{}*{}", c.mor_name(sigma), s.types[i].name),
            display: disp,
        });
    }
    let mut table = BTreeMap::new();
    for (k, &(sigma, i)) in pairs.iter().enumerate() {
        let (r, q) = chosen(sigma, i)?;
        let sq = PullbackWitness {
            apex: c.dom(q),
            proj_left: q,
            proj_right: r.weakening,
            f: sigma,
            g: s.types[i].display,
        };
        if !c.is_pullback(sigma, s.types[i].display, q, r.weakening) {
            return Err(Error::Precondition(format!("chosen reindexing {} is not a pullback", types[k].name)));
        }
        for tau in c.into(c.cod(q)) {
            let st = c.compose(sigma, tau);
            let (r2, q2) = chosen(st, i)?;
            let w = c.mediate_or_err(&sq, c.compose(tau, q2), r2.weakening)?;
            table.insert((k, tau), Reindexing { result: index[&(st, i)], weakening: w });
        }
    }
    let display = repletion(c, &types.iter().map(|t| t.display).collect());
    let split = DispCat::structured(c.clone(), display, Structure { types, table })?;

    let mut type_isos = Vec::new();
    for (k, &(sigma, i)) in pairs.iter().enumerate() {
        let q = split.structure().map(|s| s.types[k].display).unwrap_or(s.types[i].display);
        let (r, _) = chosen(sigma, i)?;
        let j = r.result;
        let (_, qj) = chosen(c.id(c.cod(s.types[j].display)), j)?;
        let iso = c
            .hom(c.dom(q), c.dom(qj))
            .iter()
            .copied()
            .find(|&m| c.compose(qj, m) == q && c.is_isomorphism(m).is_some())
            .ok_or_else(|| Error::Precondition(format!("split type {} has no old counterpart", c.mor_name(q))))?;
        type_isos.push((k, j, iso));
    }
    Ok(Split {
        disp: split,
        unit: Functor::identity(c),
        pairs,
        type_isos,
    })
}

/// `1_Γ := (!_Γ, U)` for the first strict type `U` over `1` with invertible display map;
/// checks `1_Γ[σ] = 1_Δ` and `0[σ] = 0` in the chosen table.
pub fn check_strict_unit_stability(split: &Split) -> Vec<Finding> {
    let d = &split.disp;
    let c = d.cat();
    let Some(s) = d.structure() else {
        return vec![Finding::new("unit-strict", "not structured", Vec::new())];
    };
    let Some(t) = c.terminal_object() else {
        return vec![Finding::new("unit-strict", "no terminal object", Vec::new())];
    };
    let Some(&(_, u)) = split
        .pairs
        .iter()
        .enumerate()
        .find(|&(k, &(sigma, _))| c.is_identity(sigma) && c.cod(sigma) == t && c.is_isomorphism(s.types[k].display).is_some())
        .map(|(_, p)| p)
    else {
        return vec![Finding::new("unit-strict", "no strict unit type over the root", Vec::new())];
    };
    let unit_of = |g: ObjId| split.pairs.iter().position(|&(sigma, i)| i == u && c.dom(sigma) == g);
    let mut out = Vec::new();
    for sigma in c.morphisms() {
        let (Some(k), Some(k2)) = (unit_of(c.cod(sigma)), unit_of(c.dom(sigma))) else {
            out.push(Finding::new("unit-strict", "unit type missing", vec![c.mor_name(sigma).to_string()]));
            continue;
        };
        match s.table.get(&(k, sigma)) {
            Some(r) if r.result == k2 => {
                let zero = |k: usize| c.is_isomorphism(s.types[k].display);
                if zero(k).map(|z| c.compose(z, sigma)) != zero(k2).map(|z| c.compose(r.weakening, z)) {
                    out.push(Finding::new("unit-strict", "0[σ] differs from 0", vec![c.mor_name(sigma).to_string()]));
                }
            }
            _ => out.push(Finding::new("unit-strict", "1[σ] differs from 1", vec![c.mor_name(sigma).to_string()])),
        }
    }
    out
}

/// `j ∘ f = u ∘ i` with `u` strict and `i, j` invertible.
pub fn factor_through_strict(c: &FiniteCategory, strict: &MapClass, f: MorId) -> Option<(MorId, MorId, MorId)> {
    for u in strict.iter() {
        for &j in c.hom(c.cod(f), c.cod(u)) {
            if c.is_isomorphism(j).is_none() {
                continue;
            }
            for &i in c.hom(c.dom(f), c.dom(u)) {
                if c.is_isomorphism(i).is_some() && c.compose(u, i) == c.compose(j, f) {
                    return Some((i, u, j));
                }
            }
        }
    }
    None
}

fn describe_factor(c: &FiniteCategory, f: MorId, (i, u, j): (MorId, MorId, MorId)) -> String {
    format!("{} = {}^-1 . {} . {}", c.mor_name(f), c.mor_name(j), c.mor_name(u), c.mor_name(i))
}

/// The repletion of the strict display maps is a clan: root, composition (i)–(iv),
/// pullbacks and identities, each with witness factorizations.
pub fn verify_coherence_closure(split: &DispCat) -> Node {
    let c = split.cat();
    let Some(s) = split.structure() else {
        return Node::fail("coherence", "input is not structured");
    };
    match check_split(split) {
        Ok(f) if f.is_empty() => {}
        Ok(f) => return Node::fail("coherence", format!("precondition: not split: {}", f[0])),
        Err(e) => return Node::fail("coherence", format!("precondition: {e}")),
    }
    let strict: MapClass = s.types.iter().map(|t| t.display).collect();
    let fib = repletion(c, &strict);
    let ext = check_ext_unit_sigma(&DispCat::new(c.clone(), fib.clone()).expect("valid host category"));
    if !(ext.unit && ext.sigma) {
        let why = ext.findings.first().map(|f| f.to_string()).unwrap_or_default();
        return Node::fail("coherence", format!("precondition: extensional 1/Σ verdict negative: {why}"));
    }
    let Some(t) = c.terminal_object() else {
        return Node::fail("coherence", "precondition: no terminal object");
    };

    let mut root = (Vec::new(), Vec::new());
    for g in c.objects() {
        let bang = c.to_terminal(g, t).expect("terminal");
        match factor_through_strict(c, &strict, bang) {
            Some(w) => root.0.push(describe_factor(c, bang, w)),
            None => root.1.push(format!("{} does not factor through a strict display map", c.mor_name(bang))),
        }
    }

    let mut comp = (Vec::new(), Vec::new());
    for f in fib.iter() {
        for g in fib.iter().filter(|&g| c.dom(g) == c.cod(f)) {
            let case = if c.is_isomorphism(f).is_some() {
                "i"
            } else if strict.contains(g) {
                "ii"
            } else if c.is_isomorphism(g).is_none() {
                "iii"
            } else {
                "iv"
            };
            let gf = c.compose(g, f);
            match factor_through_strict(c, &strict, gf) {
                Some(w) if fib.contains(gf) => comp.0.push(format!("({case}) {}", describe_factor(c, gf, w))),
                _ => comp.1.push(format!("({case}) {} . {} leaves the class", c.mor_name(g), c.mor_name(f))),
            }
        }
    }

    let mut pb = (Vec::new(), Vec::new());
    for f in fib.iter() {
        for sigma in c.into(c.cod(f)) {
            match c.pullback(sigma, f) {
                Some(sq) if fib.contains(sq.proj_left) => pb.0.push(format!(
                    "{}[{}] = {}",
                    c.mor_name(f),
                    c.mor_name(sigma),
                    c.mor_name(sq.proj_left)
                )),
                _ => pb.1.push(format!("{} along {} has no pullback in the class", c.mor_name(f), c.mor_name(sigma))),
            }
        }
    }

    let mut ids = (Vec::new(), Vec::new());
    for g in c.objects() {
        let id = c.id(g);
        match factor_through_strict(c, &strict, id) {
            Some(w) => ids.0.push(describe_factor(c, id, w)),
            None => ids.1.push(format!("{} is not a fibration", c.mor_name(id))),
        }
    }

    let node = |name: &str, (w, bad): (Vec<String>, Vec<String>)| {
        if bad.is_empty() {
            Node::pass(name, w)
        } else {
            let mut n = Node::fail(name, bad[0].clone());
            n.counterexamples = bad;
            n.witnesses = w;
            n
        }
    };
    Node::group(
        "coherence",
        vec![
            node("case-1-root", root),
            node("case-2-composition", comp),
            node("case-3-pullback", pb),
            node("case-4-identities", ids),
        ],
    )
}
