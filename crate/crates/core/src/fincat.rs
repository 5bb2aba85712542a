//! Finite categories given by explicit composition tables.
//!
//! Objects and morphisms are stored sorted by identifier, so the numeric
//! order of [`ObjId`] and [`MorId`] is the lexicographic order of names.
//! Every "smallest" choice in the crate relies on this.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::report::Finding;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Morphism {
    name: String,
    dom: ObjId,
    cod: ObjId,
}

/// A pullback square `f ∘ proj_left = g ∘ proj_right` over the cospan `(f, g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PullbackWitness {
    pub apex: ObjId,
    pub proj_left: MorId,
    pub proj_right: MorId,
    pub f: MorId,
    pub g: MorId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
    /// `table[g * m + f]` is `g ∘ f` when defined.
    table: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
    obj_index: BTreeMap<String, ObjId>,
    mor_index: BTreeMap<String, MorId>,
}

impl FiniteCategory {
    /// Builds a category from named parts.
    ///
    /// Composites with an identity factor that are not listed are filled in.
    /// Dangling identifiers and duplicates are errors; law violations are not,
    /// they are reported by [`FiniteCategory::validate`].
    pub fn from_parts<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        identities: &[(S, S)],
        compositions: &[(S, S, S)],
    ) -> Result<Self> {
        let mut obj_names: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        obj_names.sort();
        for w in obj_names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Duplicate(w[0].clone()));
            }
        }
        let obj_index: BTreeMap<String, ObjId> = obj_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ObjId(i as u32)))
            .collect();
        let obj = |n: &str| obj_index.get(n).copied().ok_or_else(|| Error::UnknownObject(n.to_string()));

        let mut mors: Vec<(String, String, String)> = morphisms
            .iter()
            .map(|(n, d, c)| (n.as_ref().to_string(), d.as_ref().to_string(), c.as_ref().to_string()))
            .collect();
        mors.sort();
        for w in mors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Duplicate(w[0].0.clone()));
            }
        }
        let mut morphism_data = Vec::with_capacity(mors.len());
        let mut mor_index = BTreeMap::new();
        for (i, (n, d, c)) in mors.iter().enumerate() {
            if obj_index.contains_key(n) {
                return Err(Error::Duplicate(n.clone()));
            }
            morphism_data.push(Morphism {
                name: n.clone(),
                dom: obj(d)?,
                cod: obj(c)?,
            });
            mor_index.insert(n.clone(), MorId(i as u32));
        }
        let mor = |n: &str| mor_index.get(n).copied().ok_or_else(|| Error::UnknownMorphism(n.to_string()));

        let mut ids = vec![None; obj_names.len()];
        for (o, m) in identities {
            let o = obj(o.as_ref())?;
            let m = mor(m.as_ref())?;
            if ids[o.idx()].is_some() {
                return Err(Error::Duplicate(obj_names[o.idx()].clone()));
            }
            ids[o.idx()] = Some(m);
        }

        let m = morphism_data.len();
        let mut table = vec![None; m * m];
        for (g, f, h) in compositions {
            let (g, f, h) = (mor(g.as_ref())?, mor(f.as_ref())?, mor(h.as_ref())?);
            let slot = &mut table[g.idx() * m + f.idx()];
            match slot {
                Some(existing) if *existing != h => {
                    return Err(Error::ConflictingComposite {
                        g: morphism_data[g.idx()].name.clone(),
                        f: morphism_data[f.idx()].name.clone(),
                    })
                }
                _ => *slot = Some(h),
            }
        }
        for (fi, f) in morphism_data.iter().enumerate() {
            if let Some(idc) = ids[f.cod.idx()] {
                let slot = &mut table[idc.idx() * m + fi];
                if slot.is_none() {
                    *slot = Some(MorId(fi as u32));
                }
            }
            if let Some(idd) = ids[f.dom.idx()] {
                let slot = &mut table[fi * m + idd.idx()];
                if slot.is_none() {
                    *slot = Some(MorId(fi as u32));
                }
            }
        }

        let n = obj_names.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, f) in morphism_data.iter().enumerate() {
            hom[f.dom.idx() * n + f.cod.idx()].push(MorId(i as u32));
        }

        Ok(FiniteCategory {
            objects: obj_names,
            morphisms: morphism_data,
            identities: ids,
            table,
            hom,
            obj_index,
            mor_index,
        })
    }

    /// The preorder category on `objects` generated by `leq` (reflexive-transitive closure).
    /// The morphism `a → b` is named `a_b`; identities are `id_a`.
    pub fn preorder<S: AsRef<str>>(objects: &[S], leq: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        let pos = |n: &str| names.iter().position(|x| x == n).ok_or_else(|| Error::UnknownObject(n.to_string()));
        let k = names.len();
        let mut rel = vec![vec![false; k]; k];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in leq {
            rel[pos(a.as_ref())?][pos(b.as_ref())?] = true;
        }
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if rel[i][m] && rel[m][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let arrow = |i: usize, j: usize| {
            if i == j {
                format!("id_{}", names[i])
            } else {
                format!("{}_{}", names[i], names[j])
            }
        };
        let mut mors = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if rel[i][j] {
                    mors.push((arrow(i, j), names[i].clone(), names[j].clone()));
                }
            }
        }
        let ids: Vec<(String, String)> = (0..k).map(|i| (names[i].clone(), arrow(i, i))).collect();
        let mut comps = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if rel[i][j] && rel[j][l] {
                        comps.push((arrow(j, l), arrow(i, j), arrow(i, l)));
                    }
                }
            }
        }
        FiniteCategory::from_parts(&names, &mors, &ids, &comps)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn obj_name(&self, o: ObjId) -> &str {
        &self.objects[o.idx()]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f.idx()].name
    }

    pub fn names(&self, fs: &[MorId]) -> Vec<String> {
        fs.iter().map(|&f| self.mor_name(f).to_string()).collect()
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn morphism_or_err(&self, name: &str) -> Result<MorId> {
        self.morphism(name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn object_or_err(&self, name: &str) -> Result<ObjId> {
        self.object(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.idx()].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.idx()].cod
    }

    pub fn identity_of(&self, o: ObjId) -> Option<MorId> {
        self.identities[o.idx()]
    }

    /// Identity on `o`. Only call on validated categories.
    pub fn id(&self, o: ObjId) -> MorId {
        self.identities[o.idx()].expect("validated category has identities")
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.dom(f).idx()] == Some(f) && self.dom(f) == self.cod(f)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.idx() * self.objects.len() + b.idx()]
    }

    /// All morphisms out of `a`, in id order.
    pub fn out_of(&self, a: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&f| self.dom(f) == a).collect()
    }

    /// All morphisms into `b`, in id order.
    pub fn into(&self, b: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&f| self.cod(f) == b).collect()
    }

    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table[g.idx() * self.morphisms.len() + f.idx()]
    }

    /// `g ∘ f`. Only call on validated categories with composable arguments.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        debug_assert_eq!(self.cod(f), self.dom(g), "compose {} after {}", self.mor_name(g), self.mor_name(f));
        self.try_compose(g, f).expect("validated category composes composable pairs")
    }

    /// Composite of a path written outermost first: `comp(&[h, g, f]) = h ∘ g ∘ f`.
    pub fn comp(&self, path: &[MorId]) -> MorId {
        let mut it = path.iter().rev();
        let mut acc = *it.next().expect("nonempty path");
        for &g in it {
            acc = self.compose(g, acc);
        }
        acc
    }

    /// Checks totality, typing, identity laws and associativity of the table.
    pub fn validate(&self) -> Vec<Finding> {
        let mut out = Vec::new();
        let m = self.morphisms.len();
        for o in self.objects() {
            match self.identity_of(o) {
                None => out.push(Finding::new(
                    "identity",
                    format!("object {} has no identity", self.obj_name(o)),
                    vec![self.obj_name(o).to_string()],
                )),
                Some(i) if self.dom(i) != o || self.cod(i) != o => out.push(Finding::new(
                    "identity",
                    format!("identity of {} is not an endomorphism of it", self.obj_name(o)),
                    vec![self.mor_name(i).to_string()],
                )),
                _ => {}
            }
        }
        for g in self.morphisms() {
            for f in self.morphisms() {
                let composable = self.cod(f) == self.dom(g);
                match (composable, self.table[g.idx() * m + f.idx()]) {
                    (true, None) => out.push(Finding::new(
                        "totality",
                        "composite of composable pair undefined",
                        self.names(&[g, f]),
                    )),
                    (false, Some(_)) => out.push(Finding::new(
                        "totality",
                        "composite defined on non-composable pair",
                        self.names(&[g, f]),
                    )),
                    (true, Some(h)) if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) => {
                        out.push(Finding::new(
                            "typing",
                            format!("composite has type {} -> {}", self.obj_name(self.dom(h)), self.obj_name(self.cod(h))),
                            self.names(&[g, f, h]),
                        ))
                    }
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in self.morphisms() {
            let (l, r) = (self.id(self.cod(f)), self.id(self.dom(f)));
            if self.compose(l, f) != f || self.compose(f, r) != f {
                out.push(Finding::new("unit", "identity law fails", self.names(&[f])));
            }
        }
        for f in self.morphisms() {
            for &g in &self.out_of(self.cod(f)) {
                let gf = self.compose(g, f);
                for &h in &self.out_of(self.cod(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        out.push(Finding::new("associativity", "h(gf) != (hg)f", self.names(&[h, g, f])));
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(f) => Err(Error::InvalidCategory(f.to_string())),
        }
    }

    /// Smallest object receiving exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<ObjId> {
        self.objects().find(|&t| self.objects().all(|x| self.hom(x, t).len() == 1))
    }

    /// The unique map `x → t` when `t` is terminal.
    pub fn to_terminal(&self, x: ObjId, t: ObjId) -> Option<MorId> {
        match self.hom(x, t) {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// An inverse of `f` if there is one.
    pub fn is_isomorphism(&self, f: MorId) -> Option<MorId> {
        self.hom(self.cod(f), self.dom(f))
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(self.dom(f)) && self.compose(f, g) == self.id(self.cod(f)))
    }

    pub fn isomorphisms(&self) -> BTreeSet<MorId> {
        self.morphisms().filter(|&f| self.is_isomorphism(f).is_some()).collect()
    }

    /// An isomorphism `a → b` if the objects are isomorphic.
    pub fn iso_between(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.hom(a, b).iter().copied().find(|&f| self.is_isomorphism(f).is_some())
    }

    fn cone_counts(&self, f: MorId, g: MorId) -> Vec<usize> {
        let (x, y) = (self.dom(f), self.dom(g));
        self.objects()
            .map(|q| {
                let mut n = 0;
                for &a in self.hom(q, x) {
                    let fa = self.compose(f, a);
                    n += self.hom(q, y).iter().filter(|&&b| self.compose(g, b) == fa).count();
                }
                n
            })
            .collect()
    }

    fn universal_with(&self, counts: &[usize], apex: ObjId, p: MorId, q: MorId) -> bool {
        self.objects().all(|o| {
            let maps = self.hom(o, apex);
            if maps.len() != counts[o.idx()] {
                return false;
            }
            let images: BTreeSet<(MorId, MorId)> =
                maps.iter().map(|&m| (self.compose(p, m), self.compose(q, m))).collect();
            images.len() == maps.len()
        })
    }

    /// Whether `(p, q)` is a pullback of the cospan `(f, g)`.
    pub fn is_pullback(&self, f: MorId, g: MorId, p: MorId, q: MorId) -> bool {
        if self.cod(f) != self.cod(g)
            || self.dom(p) != self.dom(q)
            || self.cod(p) != self.dom(f)
            || self.cod(q) != self.dom(g)
            || self.compose(f, p) != self.compose(g, q)
        {
            return false;
        }
        self.universal_with(&self.cone_counts(f, g), self.dom(p), p, q)
    }

    /// Canonical pullback of `f: X → Z` and `g: Y → Z`: the universal square with the
    /// smallest `(apex, proj_left, proj_right)`.
    pub fn pullback(&self, f: MorId, g: MorId) -> Option<PullbackWitness> {
        if self.cod(f) != self.cod(g) {
            return None;
        }
        let (x, y) = (self.dom(f), self.dom(g));
        let counts = self.cone_counts(f, g);
        for apex in self.objects() {
            for &p in self.hom(apex, x) {
                let fp = self.compose(f, p);
                for &q in self.hom(apex, y) {
                    if self.compose(g, q) == fp && self.universal_with(&counts, apex, p, q) {
                        return Some(PullbackWitness {
                            apex,
                            proj_left: p,
                            proj_right: q,
                            f,
                            g,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn pullback_or_err(&self, f: MorId, g: MorId) -> Result<PullbackWitness> {
        self.pullback(f, g).ok_or_else(|| Error::NoPullback {
            f: self.mor_name(f).to_string(),
            g: self.mor_name(g).to_string(),
        })
    }

    /// The unique `m` with `proj_left ∘ m = a` and `proj_right ∘ m = b`.
    pub fn mediate(&self, pb: &PullbackWitness, a: MorId, b: MorId) -> Option<MorId> {
        if self.dom(a) != self.dom(b) {
            return None;
        }
        self.hom(self.dom(a), pb.apex)
            .iter()
            .copied()
            .find(|&m| self.compose(pb.proj_left, m) == a && self.compose(pb.proj_right, m) == b)
    }

    pub fn mediate_or_err(&self, pb: &PullbackWitness, a: MorId, b: MorId) -> Result<MorId> {
        self.mediate(pb, a, b).ok_or_else(|| {
            Error::Precondition(format!(
                "pair ({}, {}) does not factor through {}",
                self.mor_name(a),
                self.mor_name(b),
                self.obj_name(pb.apex)
            ))
        })
    }

    /// Canonical binary product, as the pullback over the canonical terminal object.
    pub fn product(&self, a: ObjId, b: ObjId) -> Option<PullbackWitness> {
        let t = self.terminal_object()?;
        self.pullback(self.to_terminal(a, t)?, self.to_terminal(b, t)?)
    }

    /// Sections of `p`: maps `s` with `p ∘ s = id`.
    pub fn sections(&self, p: MorId) -> Vec<MorId> {
        let id = self.id(self.cod(p));
        self.hom(self.cod(p), self.dom(p))
            .iter()
            .copied()
            .filter(|&s| self.compose(p, s) == id)
            .collect()
    }

    /// Maps `x` into `dom(p)` with `p ∘ x = base` (generalized sections over `base`).
    pub fn sections_over(&self, p: MorId, base: MorId) -> Vec<MorId> {
        self.hom(self.dom(base), self.dom(p))
            .iter()
            .copied()
            .filter(|&x| self.compose(p, x) == base)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walking_arrow() -> FiniteCategory {
        FiniteCategory::preorder(&["A", "B"], &[("A", "B")]).unwrap()
    }

    fn interval() -> FiniteCategory {
        FiniteCategory::from_parts(
            &["0", "1"],
            &[("id0", "0", "0"), ("id1", "1", "1"), ("u", "0", "1"), ("v", "1", "0")],
            &[("0", "id0"), ("1", "id1")],
            &[("v", "u", "id0"), ("u", "v", "id1")],
        )
        .unwrap()
    }

    #[test]
    fn one_object_is_valid_and_terminal() {
        let c = FiniteCategory::preorder(&["*"], &[]).unwrap();
        assert!(c.validate().is_empty());
        assert_eq!(c.terminal_object().map(|o| c.obj_name(o).to_string()), Some("*".into()));
    }

    #[test]
    fn walking_arrow_valid_terminal_is_b() {
        let c = walking_arrow();
        assert!(c.validate().is_empty());
        assert_eq!(c.terminal_object(), c.object("B"));
        let f = c.morphism("A_B").unwrap();
        assert_eq!(c.is_isomorphism(f), None);
    }

    #[test]
    fn discrete_two_objects_have_no_terminal() {
        let c = FiniteCategory::preorder(&["P", "Q"], &[]).unwrap();
        assert_eq!(c.terminal_object(), None);
    }

    #[test]
    fn corrupted_chain_entry_is_named() {
        let c = FiniteCategory::from_parts(
            &["a", "b", "c"],
            &[
                ("id_a", "a", "a"),
                ("id_b", "b", "b"),
                ("id_c", "c", "c"),
                ("f", "a", "b"),
                ("g", "b", "c"),
                ("h", "a", "c"),
            ],
            &[("a", "id_a"), ("b", "id_b"), ("c", "id_c")],
            &[("g", "f", "g")],
        )
        .unwrap();
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].mentions("g") && v[0].mentions("f"));
        assert_eq!(v[0].rule, "typing");
    }

    #[test]
    fn missing_composite_reported() {
        let c = FiniteCategory::from_parts(
            &["a", "b", "c"],
            &[
                ("id_a", "a", "a"),
                ("id_b", "b", "b"),
                ("id_c", "c", "c"),
                ("f", "a", "b"),
                ("g", "b", "c"),
            ],
            &[("a", "id_a"), ("b", "id_b"), ("c", "id_c")],
            &[],
        )
        .unwrap();
        let v = c.validate();
        assert!(v.iter().any(|x| x.rule == "totality" && x.mentions("g") && x.mentions("f")));
    }

    #[test]
    fn dangling_and_duplicate_ids_are_errors() {
        let e = FiniteCategory::from_parts(&["a"], &[("f", "a", "z")], &[], &[]).unwrap_err();
        assert_eq!(e, Error::UnknownObject("z".into()));
        let e = FiniteCategory::from_parts(&["a", "a"], &[], &[], &[]).unwrap_err();
        assert_eq!(e, Error::Duplicate("a".into()));
        let e = FiniteCategory::from_parts(&["a"], &[("f", "a", "a")], &[("a", "f")], &[("f", "q", "f")]).unwrap_err();
        assert_eq!(e, Error::UnknownMorphism("q".into()));
    }

    #[test]
    fn associativity_violation_detected() {
        // (a∘a)∘b = b∘b = a but a∘(a∘b) = a∘b = b.
        let c = FiniteCategory::from_parts(
            &["*"],
            &[("1", "*", "*"), ("a", "*", "*"), ("b", "*", "*")],
            &[("*", "1")],
            &[("a", "a", "b"), ("a", "b", "b"), ("b", "a", "b"), ("b", "b", "a")],
        )
        .unwrap();
        let v = c.validate();
        assert!(v.iter().any(|x| x.rule == "associativity"), "{v:?}");
    }

    #[test]
    fn identity_pullback_is_identity_square() {
        let c = walking_arrow();
        let b = c.object("B").unwrap();
        let id = c.id(b);
        let pb = c.pullback(id, id).unwrap();
        assert_eq!((pb.apex, pb.proj_left, pb.proj_right), (b, id, id));
    }

    #[test]
    fn walking_cospan_has_no_pullback() {
        let c = FiniteCategory::preorder(&["A", "B", "C"], &[("A", "C"), ("B", "C")]).unwrap();
        let f = c.morphism("A_C").unwrap();
        let g = c.morphism("B_C").unwrap();
        assert_eq!(c.pullback(f, g), None);
        assert_eq!(c.product(c.object("A").unwrap(), c.object("B").unwrap()), None);
    }

    #[test]
    fn interval_maps_are_isos() {
        let c = interval();
        for f in c.morphisms() {
            assert!(c.is_isomorphism(f).is_some());
        }
        assert_eq!(c.is_isomorphism(c.morphism("u").unwrap()), c.morphism("v"));
        // Both objects are terminal; the smaller id wins.
        assert_eq!(c.terminal_object(), c.object("0"));
    }

    #[test]
    fn mediate_finds_pairing() {
        let c = interval();
        let (u, v) = (c.morphism("u").unwrap(), c.morphism("v").unwrap());
        let pb = c.pullback(u, u).unwrap();
        let m = c.mediate(&pb, c.id(c.object("0").unwrap()), c.id(c.object("0").unwrap())).unwrap();
        assert_eq!(c.compose(pb.proj_left, m), c.compose(v, u));
    }

    #[test]
    fn comp_is_right_to_left() {
        let c = FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let (f, g) = (c.morphism("a_b").unwrap(), c.morphism("b_c").unwrap());
        assert_eq!(c.comp(&[g, f]), c.morphism("a_c").unwrap());
    }
}
