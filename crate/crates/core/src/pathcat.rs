//! Path categories, display map path categories, and the homotopy calculus.

use std::collections::{BTreeMap, BTreeSet};

use crate::dispcat::{check_display_axioms, closure_under_composition, fibration_closure, DispCat, MapClass};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId, PullbackWitness};
use crate::par;
use crate::report::Finding;

/// A factorization `A → P → A ×_Γ A` of the diagonal of `base: A → Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathObjectWitness {
    pub base: MorId,
    /// The canonical pullback `A ×_Γ A` of `(base, base)`.
    pub square: PullbackWitness,
    pub object: ObjId,
    pub r: MorId,
    pub s: MorId,
    pub t: MorId,
    /// `(s, t): P → A ×_Γ A`.
    pub st: MorId,
}

impl PathObjectWitness {
    /// Assembles a witness from `(P, r, s, t)`, computing `(s, t)` into the canonical square.
    pub fn assemble(c: &FiniteCategory, base: MorId, r: MorId, s: MorId, t: MorId) -> Result<Self> {
        let square = c.pullback_or_err(base, base)?;
        let st = c.mediate_or_err(&square, s, t)?;
        Ok(PathObjectWitness {
            base,
            square,
            object: c.cod(r),
            r,
            s,
            t,
            st,
        })
    }

    /// The object `A` this is a path object of.
    pub fn carrier(&self, c: &FiniteCategory) -> ObjId {
        c.dom(self.base)
    }

    pub fn describe(&self, c: &FiniteCategory) -> String {
        format!(
            "P{}={} r={} s={} t={}",
            c.mor_name(self.base),
            c.obj_name(self.object),
            c.mor_name(self.r),
            c.mor_name(self.s),
            c.mor_name(self.t)
        )
    }
}

/// `h: A → P` with `s∘h = f` and `t∘h = g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomotopyWitness {
    pub f: MorId,
    pub g: MorId,
    pub h: MorId,
    pub path: PathObjectWitness,
}

impl HomotopyWitness {
    pub fn holds(&self, c: &FiniteCategory) -> bool {
        c.cod(self.h) == self.path.object
            && c.compose(self.path.s, self.h) == self.f
            && c.compose(self.path.t, self.h) == self.g
    }
}

/// What the homotopy-theoretic constructions need from an ambient structure.
pub trait HomotopyModel: Sync {
    fn cat(&self) -> &FiniteCategory;
    fn fibrations(&self) -> &MapClass;
    /// `None` when the structure carries no equivalence class.
    fn equivalences(&self) -> Option<&MapClass>;
    /// The chosen path object of a fibration, if one exists.
    fn path_object(&self, fibration: MorId) -> Option<&PathObjectWitness>;

    fn is_equivalence(&self, f: MorId) -> Option<bool> {
        self.equivalences().map(|e| e.contains(f))
    }
}

/// Every `(P, r, s, t)` factoring the diagonal of `base` with `(s,t) ∈ st_class` and `r ∈ eq`,
/// in lexicographic order.
pub fn path_object_candidates(c: &FiniteCategory, base: MorId, st_class: &MapClass, eq: &MapClass) -> Vec<PathObjectWitness> {
    let Some(square) = c.pullback(base, base) else {
        return Vec::new();
    };
    let a = c.dom(base);
    let id = c.id(a);
    let objects: Vec<ObjId> = c.objects().collect();
    par::flat_map(&objects, |&p| {
        let mut out = Vec::new();
        let back: Vec<MorId> = c.hom(p, a).to_vec();
        for &r in c.hom(a, p) {
            if !eq.contains(r) {
                continue;
            }
            let sections: Vec<MorId> = back.iter().copied().filter(|&s| c.compose(s, r) == id).collect();
            for &s in &sections {
                for &t in &sections {
                    if c.compose(base, s) != c.compose(base, t) {
                        continue;
                    }
                    if let Some(st) = c.mediate(&square, s, t) {
                        if st_class.contains(st) {
                            out.push(PathObjectWitness {
                                base,
                                square,
                                object: p,
                                r,
                                s,
                                t,
                                st,
                            });
                        }
                    }
                }
            }
        }
        out
    })
}

/// The canonical (smallest) path object of `base`.
pub fn find_path_object(c: &FiniteCategory, base: MorId, st_class: &MapClass, eq: &MapClass) -> Option<PathObjectWitness> {
    path_object_candidates(c, base, st_class, eq).into_iter().next()
}

/// Witness invariants: `(s,t)` is the pairing into the canonical square and lies in
/// `st_class`, `r ∈ eq`, `s∘r = t∘r = id`.
pub fn check_path_object(c: &FiniteCategory, w: &PathObjectWitness, st_class: &MapClass, eq: &MapClass) -> Vec<Finding> {
    let mut out = Vec::new();
    let name = c.mor_name(w.base).to_string();
    let a = c.dom(w.base);
    let typed = c.dom(w.r) == a
        && c.cod(w.r) == w.object
        && c.dom(w.s) == w.object
        && c.cod(w.s) == a
        && c.dom(w.t) == w.object
        && c.cod(w.t) == a;
    if !typed {
        return vec![Finding::new("path-object", "maps have the wrong types", vec![name])];
    }
    if c.pullback(w.base, w.base) != Some(w.square) {
        out.push(Finding::new("path-object", "square is not the canonical pullback", vec![name.clone()]));
    }
    if c.compose(w.s, w.r) != c.id(a) || c.compose(w.t, w.r) != c.id(a) {
        out.push(Finding::new("path-object", "s∘r or t∘r is not the identity", c.names(&[w.base, w.r, w.s, w.t])));
    }
    if c.mediate(&w.square, w.s, w.t) != Some(w.st) {
        out.push(Finding::new("path-object", "(s,t) is not the pairing of s and t", c.names(&[w.base, w.st])));
    }
    if !st_class.contains(w.st) {
        out.push(Finding::new("path-object", "(s,t) is not in the required class", c.names(&[w.base, w.st])));
    }
    if !eq.contains(w.r) {
        out.push(Finding::new("path-object", "r is not an equivalence", c.names(&[w.base, w.r])));
    }
    out
}

/// A homotopy `f ≃ g` through the given path object, if any.
pub fn homotopic_via(c: &FiniteCategory, w: &PathObjectWitness, f: MorId, g: MorId) -> Option<HomotopyWitness> {
    let a = c.dom(w.base);
    if c.dom(f) != c.dom(g) || c.cod(f) != a || c.cod(g) != a {
        return None;
    }
    c.hom(c.dom(f), w.object)
        .iter()
        .copied()
        .find(|&h| c.compose(w.s, h) == f && c.compose(w.t, h) == g)
        .map(|h| HomotopyWitness { f, g, h, path: *w })
}

/// Fibrewise homotopy `f ≃_Γ g` for maps into `dom(base)`, with `base: B → Γ` a fibration.
pub fn homotopic<M: HomotopyModel + ?Sized>(m: &M, base: MorId, f: MorId, g: MorId) -> Result<Option<HomotopyWitness>> {
    let c = m.cat();
    let w = m
        .path_object(base)
        .ok_or_else(|| Error::NoPathObject(c.mor_name(base).to_string()))?;
    Ok(homotopic_via(c, w, f, g))
}

/// All pairs of parallel maps into `dom(base)` related by the given path object.
pub fn homotopy_relation(c: &FiniteCategory, w: &PathObjectWitness) -> BTreeSet<(MorId, MorId)> {
    let a = c.dom(w.base);
    let mut out = BTreeSet::new();
    for x in c.objects() {
        for &f in c.hom(x, a) {
            for &g in c.hom(x, a) {
                if homotopic_via(c, w, f, g).is_some() {
                    out.insert((f, g));
                }
            }
        }
    }
    out
}

/// The map `A → 1` for the canonical terminal object.
pub fn bang(c: &FiniteCategory, a: ObjId) -> Option<MorId> {
    c.to_terminal(a, c.terminal_object()?)
}

/// Maps `f` with some `g` such that `g∘f ≃ 1` and `f∘g ≃ 1`.
pub fn homotopy_equivalences<M: HomotopyModel + ?Sized>(m: &M) -> MapClass {
    let c = m.cat();
    let maps: Vec<MorId> = c.morphisms().collect();
    let object_path = |o: ObjId| bang(c, o).and_then(|b| m.path_object(b));
    let keep = par::map(&maps, |&f| {
        let (a, b) = (c.dom(f), c.cod(f));
        let (Some(pa), Some(pb)) = (object_path(a), object_path(b)) else {
            return false;
        };
        c.hom(b, a).iter().any(|&g| {
            homotopic_via(c, pa, c.compose(g, f), c.id(a)).is_some()
                && homotopic_via(c, pb, c.compose(f, g), c.id(b)).is_some()
        })
    });
    maps.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect()
}

/// For composable `f, g, h` with `gf, hg ∈ eq`, requires `f, g, h, hgf ∈ eq`.
pub fn check_two_out_of_six(c: &FiniteCategory, eq: &MapClass) -> Vec<Finding> {
    let mut out = BTreeSet::new();
    for f in c.morphisms() {
        for &g in &c.out_of(c.cod(f)) {
            let gf = c.compose(g, f);
            if !eq.contains(gf) {
                continue;
            }
            for &h in &c.out_of(c.cod(g)) {
                if !eq.contains(c.compose(h, g)) {
                    continue;
                }
                let hgf = c.compose(h, gf);
                for (label, x) in [("f", f), ("g", g), ("h", h), ("hgf", hgf)] {
                    if !eq.contains(x) {
                        out.insert(Finding::new(
                            "2-out-of-6",
                            format!("{label} = {} must be an equivalence", c.mor_name(x)),
                            c.names(&[f, g, h]),
                        ));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Axioms 1–4 for a class of fibrations and equivalences: isos are equivalences,
/// 2-out-of-6, trivial fibrations pull back to trivial fibrations and have sections.
pub(crate) fn check_equivalence_axioms(c: &FiniteCategory, fib: &MapClass, eq: &MapClass) -> Vec<Finding> {
    let mut out = Vec::new();
    for f in MapClass::isomorphisms(c).difference(eq).iter() {
        out.push(Finding::new("isos-are-equivalences", "isomorphism not in eq", vec![c.mor_name(f).to_string()]));
    }
    out.extend(check_two_out_of_six(c, eq));
    let trivial = fib.intersection(eq);
    for p in trivial.iter() {
        for sigma in c.into(c.cod(p)) {
            match c.pullback(sigma, p) {
                None => out.push(Finding::new(
                    "trivial-fibration-pullback",
                    "trivial fibration has no pullback along map",
                    c.names(&[p, sigma]),
                )),
                Some(pb) if !trivial.contains(pb.proj_left) => out.push(Finding::new(
                    "trivial-fibration-pullback",
                    format!("pullback {} is not a trivial fibration", c.mor_name(pb.proj_left)),
                    c.names(&[p, sigma, pb.proj_left]),
                )),
                _ => {}
            }
        }
        if c.sections(p).is_empty() {
            out.push(Finding::new(
                "trivial-fibration-section",
                "trivial fibration has no section",
                vec![c.mor_name(p).to_string()],
            ));
        }
    }
    out
}

/// A path category: a clan (display = fibrations) with equivalences and chosen path objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCat {
    clan: DispCat,
    equivalences: MapClass,
    given: BTreeMap<MorId, PathObjectWitness>,
    paths: BTreeMap<MorId, PathObjectWitness>,
}

impl PathCat {
    /// Path objects for fibrations missing from `path_table` are found by search.
    pub fn new(
        cat: FiniteCategory,
        fibrations: MapClass,
        equivalences: MapClass,
        path_table: BTreeMap<MorId, PathObjectWitness>,
    ) -> Result<Self> {
        let clan = DispCat::new(cat, fibrations)?;
        let paths = resolve_paths(clan.cat(), clan.display(), clan.display(), &equivalences, &path_table);
        Ok(PathCat {
            clan,
            equivalences,
            given: path_table,
            paths,
        })
    }

    pub fn clan(&self) -> &DispCat {
        &self.clan
    }

    pub fn given_paths(&self) -> &BTreeMap<MorId, PathObjectWitness> {
        &self.given
    }

    pub fn paths(&self) -> &BTreeMap<MorId, PathObjectWitness> {
        &self.paths
    }

    pub fn trivial_fibrations(&self) -> MapClass {
        self.clan.display().intersection(&self.equivalences)
    }

    pub fn terminal(&self) -> Option<ObjId> {
        self.clan.cat().terminal_object()
    }

    /// Path object of an object, i.e. of its map to the terminal object.
    pub fn object_path(&self, a: ObjId) -> Option<&PathObjectWitness> {
        bang(self.cat(), a).and_then(|b| self.paths.get(&b))
    }

    /// The cofree display map path category: display := fibrations.
    pub fn as_display_path_cat(&self) -> DisplayPathCat {
        DisplayPathCat {
            disp: self.clan.clone(),
            fibrations: self.clan.display().clone(),
            equivalences: self.equivalences.clone(),
            paths: self.paths.clone(),
        }
    }
}

impl HomotopyModel for PathCat {
    fn cat(&self) -> &FiniteCategory {
        self.clan.cat()
    }

    fn fibrations(&self) -> &MapClass {
        self.clan.display()
    }

    fn equivalences(&self) -> Option<&MapClass> {
        Some(&self.equivalences)
    }

    fn path_object(&self, fibration: MorId) -> Option<&PathObjectWitness> {
        self.paths.get(&fibration)
    }
}

fn resolve_paths(
    c: &FiniteCategory,
    targets: &MapClass,
    st_class: &MapClass,
    eq: &MapClass,
    given: &BTreeMap<MorId, PathObjectWitness>,
) -> BTreeMap<MorId, PathObjectWitness> {
    let todo: Vec<MorId> = targets.iter().filter(|f| !given.contains_key(f)).collect();
    let found = par::map(&todo, |&f| find_path_object(c, f, st_class, eq));
    let mut out = given.clone();
    for (f, w) in todo.into_iter().zip(found) {
        if let Some(w) = w {
            out.insert(f, w);
        }
    }
    out
}

/// Clan axioms: display axioms for fibrations, identities, composition, root.
fn check_clan(d: &DispCat) -> Vec<Finding> {
    let c = d.cat();
    let mut out = check_display_axioms(d);
    for f in MapClass::identities(c).difference(d.display()).iter() {
        out.push(Finding::new("clan-identity", "identity is not a fibration", vec![c.mor_name(f).to_string()]));
    }
    for f in fibration_closure(d).difference(d.display()).iter() {
        out.push(Finding::new(
            "clan-composition",
            "composite of fibrations is not a fibration",
            vec![c.mor_name(f).to_string()],
        ));
    }
    out.extend(crate::dispcat::check_root(d));
    out
}

/// Clan axioms and axioms 1–5.
pub fn check_path_axioms(p: &PathCat) -> Vec<Finding> {
    let c = p.cat();
    let fib = p.clan.display();
    let mut out = check_clan(&p.clan);
    out.extend(check_equivalence_axioms(c, fib, &p.equivalences));
    for (f, w) in &p.given {
        for mut finding in check_path_object(c, w, fib, &p.equivalences) {
            finding.rule = "path-object-table".into();
            finding.culprits.insert(0, c.mor_name(*f).to_string());
            out.push(finding);
        }
    }
    for a in c.objects() {
        if p.object_path(a).is_none() {
            out.push(Finding::new("path-object", "object has no path object", vec![c.obj_name(a).to_string()]));
        }
    }
    out
}

/// `eq` coincides with the homotopy equivalences.
pub fn check_saturation<M: HomotopyModel + ?Sized>(m: &M) -> Vec<Finding> {
    let c = m.cat();
    let Some(eq) = m.equivalences() else {
        return vec![Finding::new("saturation", "no equivalence class to compare", Vec::new())];
    };
    let he = homotopy_equivalences(m);
    let mut out = Vec::new();
    for f in eq.difference(&he).iter() {
        out.push(Finding::new("saturation", "equivalence is not a homotopy equivalence", vec![c.mor_name(f).to_string()]));
    }
    for f in he.difference(eq).iter() {
        out.push(Finding::new("saturation", "homotopy equivalence is not an equivalence", vec![c.mor_name(f).to_string()]));
    }
    out
}

/// A display map category with equivalences; path objects are chosen with `(s,t)` display
/// for display maps (path display maps) and a fibration otherwise (path fibrations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayPathCat {
    disp: DispCat,
    fibrations: MapClass,
    equivalences: MapClass,
    paths: BTreeMap<MorId, PathObjectWitness>,
}

impl DisplayPathCat {
    pub fn new(disp: DispCat, equivalences: MapClass) -> Self {
        let c = disp.cat();
        let fibrations = fibration_closure(&disp);
        let display_paths = resolve_paths(c, disp.display(), disp.display(), &equivalences, &BTreeMap::new());
        let rest: MapClass = fibrations.iter().filter(|f| !display_paths.contains_key(f)).collect();
        let paths = resolve_paths(c, &rest, &fibrations, &equivalences, &display_paths);
        DisplayPathCat {
            disp,
            fibrations,
            equivalences,
            paths,
        }
    }

    pub fn disp(&self) -> &DispCat {
        &self.disp
    }

    pub fn paths(&self) -> &BTreeMap<MorId, PathObjectWitness> {
        &self.paths
    }

    pub fn is_rooted(&self) -> bool {
        crate::dispcat::check_root(&self.disp).is_empty()
    }
}

impl HomotopyModel for DisplayPathCat {
    fn cat(&self) -> &FiniteCategory {
        self.disp.cat()
    }

    fn fibrations(&self) -> &MapClass {
        &self.fibrations
    }

    fn equivalences(&self) -> Option<&MapClass> {
        Some(&self.equivalences)
    }

    fn path_object(&self, fibration: MorId) -> Option<&PathObjectWitness> {
        self.paths.get(&fibration)
    }
}

/// Display axioms, axioms 1–4 for fibrations, path display maps (axiom 5) and
/// path fibrations (PF).
pub fn check_dmpc_axioms(d: &DispCat, eq: &MapClass) -> Vec<Finding> {
    let c = d.cat();
    let mut out = check_display_axioms(d);
    let fib = fibration_closure(d);
    out.extend(check_equivalence_axioms(c, &fib, eq));
    for p in d.display().iter() {
        if find_path_object(c, p, d.display(), eq).is_none() {
            out.push(Finding::new("path-display-map", "display map has no path display map", vec![c.mor_name(p).to_string()]));
        }
    }
    for p in fib.iter() {
        if find_path_object(c, p, &fib, eq).is_none() {
            out.push(Finding::new("path-fibration", "fibration has no path fibration", vec![c.mor_name(p).to_string()]));
        }
    }
    out
}

/// Grows `eq` from the isomorphisms: path objects are searched relative to the current
/// class, and homotopy equivalences computed with them are added until nothing changes.
pub fn bootstrap_equivalences(c: &FiniteCategory, fib: &MapClass, st_class: &MapClass) -> (MapClass, BTreeMap<MorId, PathObjectWitness>) {
    let mut eq = MapClass::isomorphisms(c);
    loop {
        let paths = resolve_paths(c, fib, st_class, &eq, &BTreeMap::new());
        let model = Snapshot {
            cat: c,
            fib,
            eq: &eq,
            paths: &paths,
        };
        let next = eq.union(&homotopy_equivalences(&model));
        if next == eq {
            return (eq, paths);
        }
        eq = next;
    }
}

/// A borrowed model used while iterating a fixpoint.
pub(crate) struct Snapshot<'a> {
    pub cat: &'a FiniteCategory,
    pub fib: &'a MapClass,
    pub eq: &'a MapClass,
    pub paths: &'a BTreeMap<MorId, PathObjectWitness>,
}

impl HomotopyModel for Snapshot<'_> {
    fn cat(&self) -> &FiniteCategory {
        self.cat
    }

    fn fibrations(&self) -> &MapClass {
        self.fib
    }

    fn equivalences(&self) -> Option<&MapClass> {
        Some(self.eq)
    }

    fn path_object(&self, fibration: MorId) -> Option<&PathObjectWitness> {
        self.paths.get(&fibration)
    }
}

/// Composites of fibrations stay fibrations; used by callers that need the class closed.
pub fn closed_fibrations(c: &FiniteCategory, fib: &MapClass) -> MapClass {
    closure_under_composition(c, &fib.union(&MapClass::identities(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> FiniteCategory {
        FiniteCategory::from_parts(
            &["0", "1"],
            &[("id0", "0", "0"), ("id1", "1", "1"), ("u", "0", "1"), ("v", "1", "0")],
            &[("0", "id0"), ("1", "id1")],
            &[("v", "u", "id0"), ("u", "v", "id1")],
        )
        .unwrap()
    }

    fn trivial(c: &FiniteCategory) -> PathCat {
        PathCat::new(c.clone(), MapClass::all(c), MapClass::isomorphisms(c), BTreeMap::new()).unwrap()
    }

    #[test]
    fn two_out_of_six_examples() {
        let i = interval();
        assert!(check_two_out_of_six(&i, &MapClass::isomorphisms(&i)).is_empty());
        assert!(check_two_out_of_six(&i, &MapClass::all(&i)).is_empty());
        let v = check_two_out_of_six(&i, &MapClass::identities(&i));
        assert!(v.iter().any(|f| f.detail.contains("= u ")), "{v:?}");
    }

    #[test]
    fn path_axioms_examples() {
        let diamond = FiniteCategory::preorder(&["b", "x", "y", "t"], &[("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")]).unwrap();
        assert_eq!(check_path_axioms(&trivial(&diamond)), vec![]);
        let i = interval();
        let p = PathCat::new(i.clone(), MapClass::all(&i), MapClass::all(&i), BTreeMap::new()).unwrap();
        assert_eq!(check_path_axioms(&p), vec![]);
        let w = FiniteCategory::preorder(&["A", "B"], &[("A", "B")]).unwrap();
        let p = PathCat::new(w.clone(), MapClass::all(&w), MapClass::all(&w), BTreeMap::new()).unwrap();
        let v = check_path_axioms(&p);
        assert!(v.iter().any(|f| f.rule == "trivial-fibration-section" && f.mentions("A_B")), "{v:?}");
    }

    #[test]
    fn find_path_object_examples() {
        let pt = FiniteCategory::preorder(&["*"], &[]).unwrap();
        let w = find_path_object(&pt, pt.id(ObjId(0)), &MapClass::all(&pt), &MapClass::isomorphisms(&pt)).unwrap();
        assert_eq!(pt.obj_name(w.object), "*");
        let diamond = FiniteCategory::preorder(&["b", "x", "y", "t"], &[("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")]).unwrap();
        let x_t = diamond.morphism("x_t").unwrap();
        let w = find_path_object(&diamond, x_t, &MapClass::all(&diamond), &MapClass::isomorphisms(&diamond)).unwrap();
        assert_eq!(diamond.obj_name(w.object), "x");
        assert!(diamond.is_identity(w.r));
        // Walking arrow: A over B with only identities as fibrations and (s,t) needing to be one.
        let arrow = FiniteCategory::preorder(&["A", "B"], &[("A", "B")]).unwrap();
        let a_b = arrow.morphism("A_B").unwrap();
        let none = find_path_object(&arrow, a_b, &MapClass::empty(), &MapClass::isomorphisms(&arrow));
        assert_eq!(none, None);
        // With every map a fibration, A ×_B A = A and the diagonal is already an identity.
        let w = find_path_object(&arrow, a_b, &MapClass::all(&arrow), &MapClass::isomorphisms(&arrow)).unwrap();
        assert_eq!(arrow.obj_name(w.object), "A");
        assert!(arrow.is_identity(w.r) && arrow.is_identity(w.s) && arrow.is_identity(w.t));
    }

    #[test]
    fn homotopic_reflexive_and_discrete() {
        let c = FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let p = trivial(&c);
        let f = c.morphism("a_b").unwrap();
        let b_c = c.morphism("b_c").unwrap();
        let h = homotopic(&p, b_c, f, f).unwrap().unwrap();
        assert!(h.holds(&c));
        let pb = p.path_object(b_c).unwrap();
        assert_eq!(h.h, c.compose(pb.r, f));
    }

    #[test]
    fn homotopic_without_path_object_errors() {
        let c = FiniteCategory::preorder(&["a", "b"], &[("a", "b")]).unwrap();
        let p = PathCat::new(c.clone(), MapClass::identities(&c), MapClass::isomorphisms(&c), BTreeMap::new()).unwrap();
        let f = c.morphism("a_b").unwrap();
        assert!(matches!(homotopic(&p, f, c.id(ObjId(0)), c.id(ObjId(0))), Err(Error::NoPathObject(_))));
    }

    #[test]
    fn homotopy_equivalences_examples() {
        let c = FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(homotopy_equivalences(&trivial(&c)), MapClass::isomorphisms(&c));
        let i = interval();
        let p = PathCat::new(i.clone(), MapClass::all(&i), MapClass::all(&i), BTreeMap::new()).unwrap();
        assert_eq!(homotopy_equivalences(&p), MapClass::all(&i));
        assert!(check_saturation(&p).is_empty());
    }

    #[test]
    fn enlarged_eq_breaks_saturation() {
        let c = FiniteCategory::preorder(&["a", "b"], &[("a", "b")]).unwrap();
        let p = PathCat::new(c.clone(), MapClass::all(&c), MapClass::all(&c), BTreeMap::new()).unwrap();
        let v = check_saturation(&p);
        assert!(v.iter().any(|f| f.mentions("a_b")), "{v:?}");
    }

    #[test]
    fn dmpc_examples() {
        let c = FiniteCategory::preorder(&["b", "x", "y", "t"], &[("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")]).unwrap();
        let d = DispCat::new(c.clone(), MapClass::all(&c)).unwrap();
        assert_eq!(check_dmpc_axioms(&d, &MapClass::isomorphisms(&c)), vec![]);
        let d = DispCat::new(c.clone(), MapClass::isomorphisms(&c)).unwrap();
        assert_eq!(check_dmpc_axioms(&d, &MapClass::isomorphisms(&c)), vec![]);
    }

    #[test]
    fn bootstrap_on_trivial_is_isos() {
        let c = FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let (eq, paths) = bootstrap_equivalences(&c, &MapClass::all(&c), &MapClass::all(&c));
        assert_eq!(eq, MapClass::isomorphisms(&c));
        assert_eq!(paths.len(), c.morphism_count());
    }
}
