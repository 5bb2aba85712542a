//! =-types, 1- and Σ-types, homotopy Π and the LF condition, computed on finite categories.

use std::collections::BTreeSet;

use crate::constructions::{lift, LiftProblem};
use crate::dispcat::{DispCat, MapClass};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId, PullbackWitness};
use crate::par;
use crate::pathcat::{check_path_object, homotopic_via, DisplayPathCat, HomotopyModel, HomotopyWitness, PathCat, PathObjectWitness};
use crate::report::Finding;

/// A homotopy model whose types are a chosen class of display maps.
pub trait TypeModel: HomotopyModel {
    fn types(&self) -> &MapClass;
    fn disp(&self) -> &DispCat;
}

impl TypeModel for PathCat {
    fn types(&self) -> &MapClass {
        self.fibrations()
    }

    fn disp(&self) -> &DispCat {
        self.clan()
    }
}

impl TypeModel for DisplayPathCat {
    fn types(&self) -> &MapClass {
        DisplayPathCat::disp(self).display()
    }

    fn disp(&self) -> &DispCat {
        DisplayPathCat::disp(self)
    }
}

/// One instance of an eliminator: a term `ind` of the motive together with `β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Elimination {
    /// The constructor map the motive is eliminated along.
    pub point: MorId,
    pub motive: MorId,
    /// `C[point]`.
    pub square: PullbackWitness,
    /// A section of `C[point]`.
    pub datum: MorId,
    pub ind: MorId,
    /// `ind ∘ point ≃ d'` over the base of the motive.
    pub lift_homotopy: HomotopyWitness,
    /// `β: ind[point] ≃ d` in the path object of `C[point]`.
    pub beta: HomotopyWitness,
}

impl Elimination {
    pub fn ind_at_point(&self) -> MorId {
        self.beta.f
    }

    pub fn is_refl(&self, c: &FiniteCategory) -> bool {
        self.beta.f == self.beta.g && self.beta.h == c.compose(self.beta.path.r, self.beta.g)
    }
}

/// Solves the lifting problem `(point, d', motive, 1)` and reads `β` off the path object of `C[point]`.
pub fn eliminate<M: TypeModel + ?Sized>(m: &M, point: MorId, motive: MorId, datum: MorId) -> Result<Elimination> {
    let c = m.cat();
    let square = c.pullback_or_err(point, motive)?;
    if c.dom(datum) != c.dom(point) || c.cod(datum) != square.apex || c.compose(square.proj_left, datum) != c.id(c.dom(point)) {
        return Err(Error::IllTyped(format!("{} is not a term of the reindexed motive", c.mor_name(datum))));
    }
    let dprime = c.compose(square.proj_right, datum);
    let sol = lift(
        m,
        &LiftProblem {
            w: point,
            f: dprime,
            p: motive,
            sigma: c.id(c.cod(point)),
        },
    )?;
    let ind = sol.lift;
    let at = c.mediate_or_err(&square, c.id(c.dom(point)), c.compose(ind, point))?;
    let cp = m
        .path_object(square.proj_left)
        .ok_or_else(|| Error::NoPathObject(c.mor_name(square.proj_left).to_string()))?;
    let beta = homotopic_via(c, cp, at, datum)
        .ok_or_else(|| Error::Precondition(format!("no β witness for {}", c.mor_name(ind))))?;
    Ok(Elimination {
        point,
        motive,
        square,
        datum,
        ind,
        lift_homotopy: sol.homotopy,
        beta,
    })
}

/// All eliminations along `point` for motives in `types` over its codomain.
pub fn eliminate_all<M: TypeModel + ?Sized>(m: &M, point: MorId) -> Result<Vec<Elimination>> {
    let c = m.cat();
    let motives: Vec<MorId> = m.types().iter().filter(|&x| c.cod(x) == c.cod(point)).collect();
    let found = par::map(&motives, |&motive| -> Result<Vec<Elimination>> {
        let sq = c.pullback_or_err(point, motive)?;
        c.sections(sq.proj_left)
            .into_iter()
            .map(|d| eliminate(m, point, motive, d))
            .collect()
    });
    let mut out = Vec::new();
    for r in found {
        out.extend(r?);
    }
    Ok(out)
}

fn elimination_findings(c: &FiniteCategory, types: &MapClass, e: &Elimination, rule: &str) -> Vec<Finding> {
    let mut out = Vec::new();
    let names = c.names(&[e.point, e.motive, e.datum, e.ind]);
    if !types.contains(e.motive) || c.cod(e.motive) != c.cod(e.point) {
        out.push(Finding::new(rule, "motive is not a type over the constructor", names.clone()));
    }
    if !c.is_pullback(e.point, e.motive, e.square.proj_left, e.square.proj_right) {
        out.push(Finding::new(rule, "reindexed motive is not a pullback", names.clone()));
    }
    if c.cod(e.datum) != e.square.apex || c.compose(e.square.proj_left, e.datum) != c.id(c.dom(e.point)) {
        out.push(Finding::new(rule, "datum is not a term", names.clone()));
    }
    if c.dom(e.ind) != c.cod(e.point) || c.compose(e.motive, e.ind) != c.id(c.cod(e.point)) {
        out.push(Finding::new(rule, "ind is not a term of the motive", names.clone()));
        return out;
    }
    if !e.lift_homotopy.holds(c) || e.lift_homotopy.f != c.compose(e.ind, e.point) {
        out.push(Finding::new(rule, "ind does not extend the datum up to homotopy", names.clone()));
    }
    let at = c.mediate(&e.square, c.id(c.dom(e.point)), c.compose(e.ind, e.point));
    let beta_ok = e.beta.holds(c)
        && Some(e.beta.f) == at
        && e.beta.g == e.datum
        && e.beta.path.base == e.square.proj_left
        && types.contains(e.beta.path.st);
    if !beta_ok {
        out.push(Finding::new("beta", "β is not a term of the =-type instance", names));
    }
    out
}

/// A based axiomatic =-type for a type `ty: Γ.A → Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdStructure {
    pub ty: MorId,
    /// `Γ.A.A^▵ = A ×_Γ A`.
    pub square: PullbackWitness,
    pub delta: MorId,
    /// The display map `Γ.A.A^▵.Id_A → Γ.A.A^▵`.
    pub formation: MorId,
    /// `Γ.A.Id_A[δ_A]`.
    pub refl_square: PullbackWitness,
    pub refl: MorId,
    pub entries: Vec<IdEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdEntry {
    pub a: MorId,
    /// `Γ.A.Id_A[a^▵]`.
    pub e_square: PullbackWitness,
    pub elim: Elimination,
}

/// `a^▵`, `Γ.A.Id_A[a^▵]` and `(a, refl[a])` for a term `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdInstance {
    pub a_tri: MorId,
    pub e_square: PullbackWitness,
    pub point: MorId,
}

impl IdStructure {
    /// `δ_A^▵ ∘ refl_A`.
    pub fn reflexivity(&self, c: &FiniteCategory) -> MorId {
        c.compose(self.refl_square.proj_right, self.refl)
    }

    pub fn as_path_object(&self, c: &FiniteCategory) -> PathObjectWitness {
        PathObjectWitness {
            base: self.ty,
            square: self.square,
            object: c.dom(self.formation),
            r: self.reflexivity(c),
            s: c.compose(self.square.proj_left, self.formation),
            t: c.compose(self.square.proj_right, self.formation),
            st: self.formation,
        }
    }

    pub fn instance(&self, c: &FiniteCategory, a: MorId) -> Result<IdInstance> {
        let a_tri = c.mediate_or_err(&self.square, c.compose(a, self.ty), c.id(c.dom(self.ty)))?;
        let e_square = c.pullback_or_err(a_tri, self.formation)?;
        let point = c.mediate_or_err(&e_square, a, c.compose(self.reflexivity(c), a))?;
        Ok(IdInstance { a_tri, e_square, point })
    }
}

/// Formation and introduction from a path object of `ty`; the eliminator table is left empty.
pub fn id_formation<M: TypeModel + ?Sized>(m: &M, ty: MorId, w: &PathObjectWitness) -> Result<IdStructure> {
    let c = m.cat();
    if w.base != ty {
        return Err(Error::Precondition(format!("path object is not over {}", c.mor_name(ty))));
    }
    let eq = m.equivalences().cloned().unwrap_or_else(|| MapClass::isomorphisms(c));
    if let Some(f) = check_path_object(c, w, m.types(), &eq).first() {
        return Err(Error::Precondition(format!("not a path object: {f}")));
    }
    let delta = c.mediate_or_err(&w.square, c.id(c.dom(ty)), c.id(c.dom(ty)))?;
    let refl_square = c.pullback_or_err(delta, w.st)?;
    let refl = c.mediate_or_err(&refl_square, c.id(c.dom(ty)), w.r)?;
    Ok(IdStructure {
        ty,
        square: w.square,
        delta,
        formation: w.st,
        refl_square,
        refl,
        entries: Vec::new(),
    })
}

/// Fills the eliminator table with every `(a, C, d)` of the finite category.
pub fn populate<M: TypeModel + ?Sized>(m: &M, s: &mut IdStructure) -> Result<()> {
    let c = m.cat();
    let mut entries = Vec::new();
    for a in c.sections(s.ty) {
        let inst = s.instance(c, a)?;
        for elim in eliminate_all(m, inst.point)? {
            entries.push(IdEntry {
                a,
                e_square: inst.e_square,
                elim,
            });
        }
    }
    entries.sort();
    s.entries = entries;
    Ok(())
}

/// The =-type of `ty` whose formation is the path object `w`.
pub fn derive_id_from_path_object<M: TypeModel + ?Sized>(m: &M, ty: MorId, w: &PathObjectWitness) -> Result<IdStructure> {
    let mut s = id_formation(m, ty, w)?;
    populate(m, &mut s)?;
    Ok(s)
}

/// The =-type of `ty` built from the model's chosen path object.
pub fn derive_id<M: TypeModel + ?Sized>(m: &M, ty: MorId) -> Result<IdStructure> {
    let w = *m
        .path_object(ty)
        .ok_or_else(|| Error::NoPathObject(m.cat().mor_name(ty).to_string()))?;
    derive_id_from_path_object(m, ty, &w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Axiomatic,
    Intensional,
    Extensional,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Axiomatic => "axiomatic",
            Flavor::Intensional => "intensional",
            Flavor::Extensional => "extensional",
        }
    }
}

pub fn check_id_structure(d: &DispCat, s: &IdStructure, flavor: Flavor) -> Vec<Finding> {
    let c = d.cat();
    let types = d.display();
    let mut out = Vec::new();
    let ty = s.ty;
    let (k0, k1) = (s.square.proj_left, s.square.proj_right);
    if !types.contains(ty) {
        out.push(Finding::new("formation", "base is not a type", vec![c.mor_name(ty).to_string()]));
    }
    if !c.is_pullback(ty, ty, k0, k1) {
        out.push(Finding::new("formation", "context extension is not A ×_Γ A", c.names(&[k0, k1])));
        return out;
    }
    if !types.contains(s.formation) || c.cod(s.formation) != s.square.apex {
        out.push(Finding::new("formation", "Id is not a type over Γ.A.A^▵", vec![c.mor_name(s.formation).to_string()]));
    }
    let base = c.dom(ty);
    if c.dom(s.delta) != base || c.cod(s.delta) != s.square.apex || c.compose(k0, s.delta) != c.id(base) || c.compose(k1, s.delta) != c.id(base) {
        out.push(Finding::new("formation", "δ is not the diagonal", vec![c.mor_name(s.delta).to_string()]));
        return out;
    }
    if !c.is_pullback(s.delta, s.formation, s.refl_square.proj_left, s.refl_square.proj_right) {
        out.push(Finding::new("introduction", "Id[δ] is not a pullback", vec![c.mor_name(s.formation).to_string()]));
        return out;
    }
    if c.dom(s.refl) != base || c.cod(s.refl) != s.refl_square.apex || c.compose(s.refl_square.proj_left, s.refl) != c.id(base) {
        out.push(Finding::new("introduction", "refl is not a term of Id[δ]", vec![c.mor_name(s.refl).to_string()]));
        return out;
    }

    let mut expected = BTreeSet::new();
    for a in c.sections(ty) {
        let Ok(inst) = s.instance(c, a) else {
            out.push(Finding::new("elimination", "instance does not exist", vec![c.mor_name(a).to_string()]));
            continue;
        };
        for motive in types.iter().filter(|&x| c.cod(x) == inst.e_square.apex) {
            if let Some(sq) = c.pullback(inst.point, motive) {
                for dd in c.sections(sq.proj_left) {
                    expected.insert((a, motive, dd));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    for e in &s.entries {
        let names = c.names(&[e.a, e.elim.motive, e.elim.datum]);
        match s.instance(c, e.a) {
            Ok(inst) if c.compose(ty, e.a) == c.id(c.cod(ty)) && inst.e_square == e.e_square && inst.point == e.elim.point => {}
            _ => {
                out.push(Finding::new("elimination", "entry is not at (a, refl[a])", names));
                continue;
            }
        }
        out.extend(elimination_findings(c, types, &e.elim, "elimination"));
        seen.insert((e.a, e.elim.motive, e.elim.datum));
        if flavor >= Flavor::Intensional && !e.elim.is_refl(c) {
            out.push(Finding::new("intensional", "β is not refl", c.names(&[e.a, e.elim.motive, e.elim.datum, e.elim.beta.h])));
        }
        if flavor == Flavor::Extensional {
            for cc in c.sections(e.elim.motive) {
                if c.mediate(&e.elim.square, c.id(c.dom(e.elim.point)), c.compose(cc, e.elim.point)) == Some(e.elim.datum)
                    && cc != e.elim.ind
                {
                    out.push(Finding::new("extensional", "η fails", c.names(&[e.elim.motive, cc, e.elim.ind])));
                }
            }
        }
    }
    for (a, motive, dd) in expected.difference(&seen) {
        out.push(Finding::new("elimination", "missing eliminator instance", c.names(&[*a, *motive, *dd])));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityEntry {
    pub ty: MorId,
    pub sigma: MorId,
    /// `A[σ]`.
    pub reindexed: Option<MorId>,
    /// `Id_{A[σ]} → Id_A[σ^▵▵]` and back.
    pub phi: Option<MorId>,
    pub psi: Option<MorId>,
    pub failure: Option<String>,
}

impl StabilityEntry {
    pub fn positive(&self) -> bool {
        self.failure.is_none() && self.phi.is_some() && self.psi.is_some()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StabilityReport {
    pub entries: Vec<StabilityEntry>,
}

impl StabilityReport {
    pub fn positive(&self) -> bool {
        self.entries.iter().all(StabilityEntry::positive)
    }
}

/// Reindexes the path object `w` of `p` along `σ^▵▵`, for `q = A[σ]` with weakening `sigma_tri`.
pub fn reindex_path_object(c: &FiniteCategory, w: &PathObjectWitness, q: MorId, sigma_tri: MorId) -> Result<PathObjectWitness> {
    let sq = c.pullback_or_err(q, q)?;
    let tt = c.mediate_or_err(
        &w.square,
        c.compose(sigma_tri, sq.proj_left),
        c.compose(sigma_tri, sq.proj_right),
    )?;
    let top = c.pullback_or_err(tt, w.st)?;
    let y = c.dom(q);
    let delta = c.mediate_or_err(&sq, c.id(y), c.id(y))?;
    let r = c.mediate_or_err(&top, delta, c.compose(w.r, sigma_tri))?;
    let st = top.proj_left;
    Ok(PathObjectWitness {
        base: q,
        square: sq,
        object: top.apex,
        r,
        s: c.compose(sq.proj_left, st),
        t: c.compose(sq.proj_right, st),
        st,
    })
}

/// An arrow `Id₁ → Id₂` over `A ×_Γ A` obtained from a section of `Id₁ ×_{A×A} Id₂ → Id₁`.
pub fn compare_id<M: TypeModel + ?Sized>(m: &M, w1: &PathObjectWitness, w2: &PathObjectWitness) -> Result<MorId> {
    let c = m.cat();
    let sq = c.pullback_or_err(w1.st, w2.st)?;
    let f = c.mediate_or_err(&sq, w1.r, w2.r)?;
    let sol = lift(
        m,
        &LiftProblem {
            w: w1.r,
            f,
            p: sq.proj_left,
            sigma: c.id(w1.object),
        },
    )?;
    Ok(c.compose(sq.proj_right, sol.lift))
}

fn stability_entry<M: TypeModel + ?Sized>(m: &M, ty: MorId, sigma: MorId) -> StabilityEntry {
    let c = m.cat();
    let mut e = StabilityEntry {
        ty,
        sigma,
        reindexed: None,
        phi: None,
        psi: None,
        failure: None,
    };
    let run = |e: &mut StabilityEntry| -> Result<()> {
        let wa = *m.path_object(ty).ok_or_else(|| Error::NoPathObject(c.mor_name(ty).to_string()))?;
        let sq = c.pullback_or_err(sigma, ty)?;
        let q = sq.proj_left;
        e.reindexed = Some(q);
        let w1 = *m.path_object(q).ok_or_else(|| Error::NoPathObject(c.mor_name(q).to_string()))?;
        let w2 = reindex_path_object(c, &wa, q, sq.proj_right)?;
        let id2 = derive_id_from_path_object(m, q, &w2)?;
        if let Some(f) = check_id_structure(m.disp(), &id2, Flavor::Axiomatic).first() {
            return Err(Error::Precondition(format!("reindexed =-type: {f}")));
        }
        e.phi = Some(compare_id(m, &w1, &w2)?);
        e.psi = Some(compare_id(m, &w2, &w1)?);
        Ok(())
    };
    if let Err(err) = run(&mut e) {
        e.failure = Some(err.to_string());
    }
    e
}

/// For every type `A` and `σ` into its context: reindexes `Id_A`, completes it to an
/// =-type for `A[σ]` and builds both comparison arrows.
pub fn check_weak_stability_id<M: TypeModel + ?Sized>(m: &M) -> StabilityReport {
    let c = m.cat();
    let pairs: Vec<(MorId, MorId)> = m
        .types()
        .iter()
        .flat_map(|ty| c.into(c.cod(ty)).into_iter().map(move |s| (ty, s)))
        .collect();
    StabilityReport {
        entries: par::map(&pairs, |&(ty, s)| stability_entry(m, ty, s)),
    }
}

/// `Id̲_A := Id_{A^▵}[δ_A^▵]` with its eliminator read off the based table at `δ_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnbasedIdStructure {
    pub ty: MorId,
    pub delta: MorId,
    pub delta_tri: MorId,
    /// `Γ.A.A^▵.Id̲_A`.
    pub formation_square: PullbackWitness,
    /// `(δ_A, refl̲_A): Γ.A → Γ.A.A^▵.Id̲_A`.
    pub refl: MorId,
    pub entries: Vec<Elimination>,
    pub omega: Option<MorId>,
    pub parametrized: Vec<Elimination>,
}

impl UnbasedIdStructure {
    pub fn formation(&self) -> MorId {
        self.formation_square.proj_left
    }
}

pub fn based_to_parametrized_unbased<M: TypeModel + ?Sized>(
    m: &M,
    ty: MorId,
    based: &IdStructure,
    omega: Option<MorId>,
) -> Result<UnbasedIdStructure> {
    let c = m.cat();
    let sq = c.pullback_or_err(ty, ty)?;
    if based.ty != sq.proj_left {
        return Err(Error::Precondition(format!("based =-type is not over {}^▵", c.mor_name(ty))));
    }
    let x = c.dom(ty);
    let delta = c.mediate_or_err(&sq, c.id(x), c.id(x))?;
    let delta_tri = c.mediate_or_err(&based.square, c.compose(delta, sq.proj_left), c.id(sq.apex))?;
    let formation_square = c.pullback_or_err(delta_tri, based.formation)?;
    let refl = c.mediate_or_err(&formation_square, delta, c.compose(based.reflexivity(c), delta))?;

    let inst = based.instance(c, delta)?;
    if inst.a_tri != delta_tri || inst.e_square != formation_square || inst.point != refl {
        return Err(Error::Precondition("based instance at δ_A does not collapse to the unbased one".into()));
    }
    let entries: Vec<Elimination> = based.entries.iter().filter(|e| e.a == delta).map(|e| e.elim).collect();
    let mut want = BTreeSet::new();
    for motive in m.types().iter().filter(|&x| c.cod(x) == formation_square.apex) {
        let msq = c.pullback_or_err(refl, motive)?;
        for dd in c.sections(msq.proj_left) {
            want.insert((motive, dd));
        }
    }
    let have: BTreeSet<(MorId, MorId)> = entries.iter().map(|e| (e.motive, e.datum)).collect();
    if let Some((mo, dd)) = want.difference(&have).next() {
        return Err(Error::Precondition(format!(
            "based table lacks the instance ({}, {})",
            c.mor_name(*mo),
            c.mor_name(*dd)
        )));
    }
    for e in &entries {
        if let Some(f) = elimination_findings(c, m.types(), e, "unbased-elimination").first() {
            return Err(Error::Precondition(f.to_string()));
        }
    }
    let mut parametrized = Vec::new();
    if let Some(om) = omega {
        if c.cod(om) != formation_square.apex || !m.fibrations().contains(om) {
            return Err(Error::Precondition(format!("{} is not a telescope over Id̲", c.mor_name(om))));
        }
        let wsq = c.pullback_or_err(refl, om)?;
        parametrized = eliminate_all(m, wsq.proj_right)?;
    }
    Ok(UnbasedIdStructure {
        ty,
        delta,
        delta_tri,
        formation_square,
        refl,
        entries,
        omega,
        parametrized,
    })
}

/// The based =-type of `A^▵` over `Γ.A` followed by the unbased collapse.
pub fn unbased_id<M: TypeModel + ?Sized>(m: &M, ty: MorId, omega: Option<MorId>) -> Result<UnbasedIdStructure> {
    let c = m.cat();
    let sq = c.pullback_or_err(ty, ty)?;
    let based = derive_id(m, sq.proj_left)?;
    based_to_parametrized_unbased(m, ty, &based, omega)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtUnitSigma {
    pub unit: bool,
    pub sigma: bool,
    pub findings: Vec<Finding>,
    /// `(σ, 1_Γ[σ] ≅ 1_Δ)`.
    pub unit_isos: Vec<(MorId, MorId)>,
    /// `((A, B, σ), (Σ_AB)[σ] ≅ Σ_{A[σ]}B[σ^▵])`.
    pub sigma_isos: Vec<([MorId; 3], MorId)>,
}

/// F/I/E/β/η for a type whose constructor `point` is invertible: `ind_d = d' ∘ point⁻¹`.
fn check_iso_constructor(c: &FiniteCategory, types: &MapClass, point: MorId, rule: &str) -> Vec<Finding> {
    let mut out = Vec::new();
    let Some(inv) = c.is_isomorphism(point) else {
        return vec![Finding::new(rule, "constructor is not invertible", vec![c.mor_name(point).to_string()])];
    };
    let b = c.dom(point);
    for motive in types.iter().filter(|&x| c.cod(x) == c.cod(point)) {
        let Some(sq) = c.pullback(point, motive) else {
            out.push(Finding::new(rule, "motive cannot be reindexed", c.names(&[point, motive])));
            continue;
        };
        let ind_of = |dd: MorId| c.comp(&[sq.proj_right, dd, inv]);
        for dd in c.sections(sq.proj_left) {
            let ind = ind_of(dd);
            if c.compose(motive, ind) != c.id(c.cod(point)) {
                out.push(Finding::new(rule, "ind is not a term", c.names(&[motive, dd])));
            } else if c.mediate(&sq, c.id(b), c.compose(ind, point)) != Some(dd) {
                out.push(Finding::new(rule, "β-rule fails", c.names(&[motive, dd])));
            }
        }
        for s in c.sections(motive) {
            match c.mediate(&sq, c.id(b), c.compose(s, point)) {
                Some(at) if ind_of(at) == s => {}
                _ => out.push(Finding::new(rule, "η-rule fails", c.names(&[motive, s]))),
            }
        }
    }
    out
}

pub fn check_ext_unit_sigma(d: &DispCat) -> ExtUnitSigma {
    let c = d.cat();
    let disp = d.display();
    let mut rep = ExtUnitSigma::default();
    let missing: Vec<MorId> = MapClass::identities(c).difference(disp).iter().collect();
    for f in &missing {
        rep.findings.push(Finding::new("unit", "identity is not a display map", vec![c.mor_name(*f).to_string()]));
    }
    rep.unit = missing.is_empty();
    let pairs: Vec<(MorId, MorId)> = disp
        .iter()
        .flat_map(|pb| disp.iter().filter(move |&pa| c.dom(pa) == c.cod(pb)).map(move |pa| (pa, pb)))
        .collect();
    let mut sigma_ok = true;
    for &(pa, pb) in &pairs {
        if !disp.contains(c.compose(pa, pb)) {
            sigma_ok = false;
            rep.findings.push(Finding::new("sigma", "composite of display maps is not a display map", c.names(&[pa, pb])));
        }
    }
    rep.sigma = sigma_ok;
    if rep.unit {
        for g in c.objects() {
            rep.findings.extend(check_iso_constructor(c, disp, c.id(g), "unit-rules"));
        }
        for s in c.morphisms() {
            let g = c.cod(s);
            match c.pullback(s, c.id(g)) {
                Some(sq) if c.is_isomorphism(sq.proj_left).is_some() => rep.unit_isos.push((s, sq.proj_left)),
                _ => rep.findings.push(Finding::new("unit-pseudo", "1[σ] is not isomorphic to 1", vec![c.mor_name(s).to_string()])),
            }
        }
    }
    if rep.sigma {
        for &(pa, pb) in &pairs {
            rep.findings.extend(check_iso_constructor(c, disp, c.id(c.dom(pb)), "sigma-rules"));
            let sig = c.compose(pa, pb);
            for s in c.into(c.cod(pa)) {
                let iso = (|| {
                    let left = c.pullback(s, sig)?;
                    let sa = c.pullback(s, pa)?;
                    let sb = c.pullback(sa.proj_right, pb)?;
                    let m = c.mediate(&left, c.compose(sa.proj_left, sb.proj_left), sb.proj_right)?;
                    c.is_isomorphism(m).map(|_| m)
                })();
                match iso {
                    Some(m) => rep.sigma_isos.push(([pa, pb, s], m)),
                    None => rep.findings.push(Finding::new("sigma-pseudo", "Σ[σ] is not isomorphic to Σ over Δ", c.names(&[pa, pb, s]))),
                }
            }
        }
    }
    rep
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxUnitSigma {
    pub unit: bool,
    pub sigma: bool,
    pub findings: Vec<Finding>,
    /// `(Γ, 1_Γ, 0)` with `0: Γ → Γ.1` an equivalence over `Γ`.
    pub unit_witnesses: Vec<(ObjId, MorId, MorId)>,
    /// `((A, B), Σ_AB, pair)`.
    pub sigma_witnesses: Vec<((MorId, MorId), MorId, MorId)>,
    pub eliminations: usize,
}

fn equivalent_display<M: TypeModel + ?Sized>(m: &M, target: MorId) -> Option<(MorId, MorId)> {
    let c = m.cat();
    let eq = m.equivalences()?;
    m.types().iter().filter(|&u| c.cod(u) == c.cod(target)).find_map(|u| {
        c.hom(c.dom(target), c.dom(u))
            .iter()
            .find(|&&e| eq.contains(e) && c.compose(u, e) == target)
            .map(|&e| (u, e))
    })
}

pub fn check_axiomatic_unit_sigma<M: TypeModel + ?Sized>(m: &M) -> AxUnitSigma {
    let c = m.cat();
    let mut rep = AxUnitSigma {
        unit: true,
        sigma: true,
        ..Default::default()
    };
    for g in c.objects() {
        match equivalent_display(m, c.id(g)) {
            None => {
                rep.unit = false;
                rep.findings.push(Finding::new("unit", "identity is not equivalent to a display map", vec![c.obj_name(g).to_string()]));
            }
            Some((u, e)) => {
                rep.unit_witnesses.push((g, u, e));
                match eliminate_all(m, e) {
                    Ok(es) => rep.eliminations += es.len(),
                    Err(err) => {
                        rep.unit = false;
                        rep.findings.push(Finding::new("unit-elimination", err.to_string(), c.names(&[u, e])));
                    }
                }
            }
        }
    }
    let types = m.types();
    for pb in types.iter() {
        for pa in types.iter().filter(|&pa| c.dom(pa) == c.cod(pb)) {
            match equivalent_display(m, c.compose(pa, pb)) {
                None => {
                    rep.sigma = false;
                    rep.findings.push(Finding::new("sigma", "composite is not equivalent to a display map", c.names(&[pa, pb])));
                }
                Some((s, e)) => {
                    rep.sigma_witnesses.push(((pa, pb), s, e));
                    match eliminate_all(m, e) {
                        Ok(es) => rep.eliminations += es.len(),
                        Err(err) => {
                            rep.sigma = false;
                            rep.findings.push(Finding::new("sigma-elimination", err.to_string(), c.names(&[pa, pb, s, e])));
                        }
                    }
                }
            }
        }
    }
    rep
}

/// `Π_AB → Γ` with `app: Π_AB ×_Γ A → B` over `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiStructure {
    pub a: MorId,
    pub b: MorId,
    pub pi: MorId,
    pub app: MorId,
}

/// For one `σ`: maps `Δ → Π` over `Γ`, maps `Δ ×_Γ A → B` over `A`, and the image of each
/// of the former under `app ∘ (- ×_Γ A)`.
struct HomMap {
    left: Vec<MorId>,
    right: Vec<MorId>,
    image: Vec<MorId>,
}

fn hom_map(c: &FiniteCategory, cand: &PiStructure, sigma: MorId) -> Option<HomMap> {
    let psq = c.pullback(cand.pi, cand.a)?;
    let dsq = c.pullback(sigma, cand.a)?;
    let delta = c.dom(sigma);
    let left: Vec<MorId> = c.hom(delta, c.dom(cand.pi)).iter().copied().filter(|&f| c.compose(cand.pi, f) == sigma).collect();
    let right: Vec<MorId> = c
        .hom(dsq.apex, c.dom(cand.b))
        .iter()
        .copied()
        .filter(|&g| c.compose(cand.b, g) == dsq.proj_right)
        .collect();
    let image = left
        .iter()
        .map(|&f| {
            c.mediate(&psq, c.compose(f, dsq.proj_left), dsq.proj_right)
                .map(|x| c.compose(cand.app, x))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(HomMap { left, right, image })
}

fn pi_typed(c: &FiniteCategory, cand: &PiStructure) -> bool {
    let Some(psq) = c.pullback(cand.pi, cand.a) else {
        return false;
    };
    c.cod(cand.pi) == c.cod(cand.a)
        && c.cod(cand.b) == c.dom(cand.a)
        && c.dom(cand.app) == psq.apex
        && c.cod(cand.app) == c.dom(cand.b)
        && c.compose(cand.b, cand.app) == psq.proj_right
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiReport {
    pub essentially_surjective: bool,
    pub full: bool,
    pub findings: Vec<Finding>,
}

/// Compares homotopy classes on both sides of the hom-map for every `σ`.
pub fn check_pi_homotopy_exponent<M: TypeModel + ?Sized>(m: &M, cand: &PiStructure) -> PiReport {
    let c = m.cat();
    let mut rep = PiReport {
        essentially_surjective: true,
        full: true,
        findings: Vec::new(),
    };
    if !pi_typed(c, cand) {
        rep.essentially_surjective = false;
        rep.full = false;
        rep.findings.push(Finding::new("pi-typing", "app does not typecheck", c.names(&[cand.pi, cand.app])));
        return rep;
    }
    let same = |base: MorId, f: MorId, g: MorId| match m.path_object(base) {
        Some(w) => homotopic_via(c, w, f, g).is_some(),
        None => f == g,
    };
    for sigma in c.into(c.cod(cand.a)) {
        let Some(hm) = hom_map(c, cand, sigma) else {
            continue;
        };
        for &g in &hm.right {
            if !hm.image.iter().any(|&x| same(cand.b, x, g)) {
                rep.essentially_surjective = false;
                rep.findings.push(Finding::new("pi-surjective", "class not in the image", c.names(&[sigma, g])));
            }
        }
        for (i, &f) in hm.left.iter().enumerate() {
            for (j, &f2) in hm.left.iter().enumerate().skip(i + 1) {
                if same(cand.b, hm.image[i], hm.image[j]) && !same(cand.pi, f, f2) {
                    rep.full = false;
                    rep.findings.push(Finding::new("pi-full", "homotopic images of non-homotopic maps", c.names(&[sigma, f, f2])));
                }
            }
        }
    }
    rep
}

/// First display `Π_AB` with an `app` passing both halves of the homotopy-exponent check.
pub fn search_pi<M: TypeModel + ?Sized>(m: &M, a: MorId, b: MorId) -> Option<PiStructure> {
    let c = m.cat();
    m.types().iter().filter(|&pi| c.cod(pi) == c.cod(a)).find_map(|pi| {
        let psq = c.pullback(pi, a)?;
        c.hom(psq.apex, c.dom(b)).iter().find_map(|&app| {
            let cand = PiStructure { a, b, pi, app };
            let r = check_pi_homotopy_exponent(m, &cand);
            (pi_typed(c, &cand) && r.essentially_surjective && r.full).then_some(cand)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfEntry {
    pub a: MorId,
    pub b: MorId,
    pub witness: Option<(MorId, MorId)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LfReport {
    pub products: bool,
    pub exponents: Vec<LfEntry>,
    pub findings: Vec<Finding>,
}

impl LfReport {
    pub fn holds(&self) -> bool {
        self.products && self.exponents.iter().all(|e| e.witness.is_some())
    }
}

/// The strict exponent: the hom-map is a bijection for every `σ`.
pub fn is_dependent_exponent(c: &FiniteCategory, cand: &PiStructure) -> bool {
    pi_typed(c, cand)
        && c.into(c.cod(cand.a)).into_iter().all(|sigma| match hom_map(c, cand, sigma) {
            Some(hm) => {
                let img: BTreeSet<MorId> = hm.image.iter().copied().collect();
                img.len() == hm.left.len() && img == hm.right.iter().copied().collect()
            }
            None => false,
        })
}

pub fn check_lf(d: &DispCat) -> LfReport {
    let c = d.cat();
    let mut rep = LfReport::default();
    if c.terminal_object().is_none() {
        rep.findings.push(Finding::new("lf-products", "no terminal object", Vec::new()));
        return rep;
    }
    for x in c.objects() {
        for y in c.objects() {
            if c.product(x, y).is_none() {
                rep.findings.push(Finding::new("lf-products", "binary product missing", vec![c.obj_name(x).to_string(), c.obj_name(y).to_string()]));
            }
        }
    }
    if !rep.findings.is_empty() {
        return rep;
    }
    rep.products = true;
    let mut pairs = Vec::new();
    for a in d.display().iter() {
        let ao = c.dom(a);
        let mut bs: BTreeSet<MorId> = d.display().iter().filter(|&b| c.cod(b) == ao).collect();
        for y in c.objects() {
            if let Some(p) = c.product(ao, y) {
                bs.insert(p.proj_left);
            }
        }
        pairs.extend(bs.into_iter().map(|b| (a, b)));
    }
    rep.exponents = par::map(&pairs, |&(a, b)| {
        let witness = c.morphisms().filter(|&pi| c.cod(pi) == c.cod(a)).find_map(|pi| {
            let psq = c.pullback(pi, a)?;
            c.hom(psq.apex, c.dom(b))
                .iter()
                .find(|&&app| is_dependent_exponent(c, &PiStructure { a, b, pi, app }))
                .map(|&app| (pi, app))
        });
        LfEntry { a, b, witness }
    });
    for e in rep.exponents.iter().filter(|e| e.witness.is_none()) {
        rep.findings.push(Finding::new("lf-exponent", "dependent exponent does not exist", c.names(&[e.a, e.b])));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn diamond() -> FiniteCategory {
        FiniteCategory::preorder(&["b", "x", "y", "t"], &[("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")]).unwrap()
    }

    fn chain3() -> FiniteCategory {
        FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
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

    fn trivial(c: &FiniteCategory) -> PathCat {
        PathCat::new(c.clone(), MapClass::all(c), MapClass::isomorphisms(c), BTreeMap::new()).unwrap()
    }

    #[test]
    fn trivial_id_types_are_extensional() {
        let c = diamond();
        let p = trivial(&c);
        for ty in c.morphisms() {
            let s = derive_id(&p, ty).unwrap();
            assert!(c.is_isomorphism(s.reflexivity(&c)).is_some());
            assert_eq!(check_id_structure(p.clan(), &s, Flavor::Extensional), vec![]);
            for e in &s.entries {
                assert_eq!(e.elim.ind_at_point(), e.elim.datum);
                assert!(e.elim.is_refl(&c));
            }
        }
    }

    #[test]
    fn interval_table_nonempty_and_axiomatic() {
        let i = interval();
        let p = PathCat::new(i.clone(), MapClass::all(&i), MapClass::all(&i), BTreeMap::new()).unwrap();
        let mut total = 0;
        for ty in i.morphisms() {
            let s = derive_id(&p, ty).unwrap();
            total += s.entries.len();
            assert_eq!(check_id_structure(p.clan(), &s, Flavor::Axiomatic), vec![]);
            assert_eq!(check_id_structure(p.clan(), &s, Flavor::Intensional), vec![]);
        }
        assert!(total > 0);
    }

    #[test]
    fn corrupted_refl_is_reported() {
        let c = diamond();
        let p = trivial(&c);
        let ty = c.morphism("x_t").unwrap();
        let mut s = derive_id(&p, ty).unwrap();
        s.refl = c.id(c.object("t").unwrap());
        let f = check_id_structure(p.clan(), &s, Flavor::Axiomatic);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].rule, "introduction");
    }

    #[test]
    fn weak_stability_trivial_arrows_are_isos() {
        let c = chain3();
        let p = trivial(&c);
        let rep = check_weak_stability_id(&p);
        assert!(rep.positive(), "{:?}", rep.entries.iter().find(|e| !e.positive()));
        for e in &rep.entries {
            assert!(c.is_isomorphism(e.phi.unwrap()).is_some());
            assert!(c.is_isomorphism(e.psi.unwrap()).is_some());
        }
        let id = c.id(c.object("c").unwrap());
        let e = rep.entries.iter().find(|e| e.sigma == id && e.ty == id).unwrap();
        assert!(e.positive());
    }

    #[test]
    fn unbased_collapse_matches_based_table() {
        let c = diamond();
        let p = trivial(&c);
        for ty in c.morphisms() {
            let sq = c.pullback(ty, ty).unwrap();
            let based = derive_id(&p, sq.proj_left).unwrap();
            let u = based_to_parametrized_unbased(&p, ty, &based, None).unwrap();
            let table: Vec<Elimination> = based.entries.iter().filter(|e| e.a == u.delta).map(|e| e.elim).collect();
            assert_eq!(u.entries, table);
            assert!(!u.entries.is_empty());
        }
    }

    #[test]
    fn ext_unit_sigma_examples() {
        let c = diamond();
        let d = DispCat::new(c.clone(), MapClass::all(&c)).unwrap();
        let r = check_ext_unit_sigma(&d);
        assert!(r.unit && r.sigma, "{:?}", r.findings);
        assert!(r.findings.is_empty());
        assert!(!r.unit_isos.is_empty() && !r.sigma_isos.is_empty());

        let c = chain3();
        let non_id: MapClass = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
        let r = check_ext_unit_sigma(&DispCat::new(c.clone(), non_id).unwrap());
        assert!(!r.unit);

        let steps: MapClass = ["a_b", "b_c"].iter().map(|n| c.morphism(n).unwrap()).collect();
        let r = check_ext_unit_sigma(&DispCat::new(c.clone(), steps).unwrap());
        assert!(!r.sigma);
    }

    #[test]
    fn axiomatic_unit_sigma_follows_extensional() {
        let c = diamond();
        let p = trivial(&c);
        let r = check_axiomatic_unit_sigma(&p);
        assert!(r.unit && r.sigma, "{:?}", r.findings);
        assert!(r.eliminations > 0);
        let i = interval();
        let d = DispCat::new(i.clone(), MapClass::isomorphisms(&i)).unwrap();
        let dp = DisplayPathCat::new(d, MapClass::all(&i));
        assert!(check_axiomatic_unit_sigma(&dp).unit);
    }

    #[test]
    fn pi_in_trivial_diamond() {
        let c = diamond();
        let p = trivial(&c);
        let a = c.morphism("x_t").unwrap();
        let b = c.id(c.object("x").unwrap());
        let pi = search_pi(&p, a, b).unwrap();
        let r = check_pi_homotopy_exponent(&p, &pi);
        assert!(r.essentially_surjective && r.full);
        assert!(is_dependent_exponent(&c, &pi));
        let a = c.morphism("b_x").unwrap();
        let b = c.id(c.object("b").unwrap());
        let found = search_pi(&p, a, b).unwrap();
        assert_eq!(c.dom(found.pi), c.object("x").unwrap());
    }

    #[test]
    fn pi_wrong_app_reports_typing() {
        let c = diamond();
        let p = trivial(&c);
        let a = c.morphism("x_t").unwrap();
        let b = c.id(c.object("x").unwrap());
        let bad = PiStructure {
            a,
            b,
            pi: c.morphism("b_t").unwrap(),
            app: c.morphism("b_x").unwrap(),
        };
        let r = check_pi_homotopy_exponent(&p, &bad);
        assert!(!r.essentially_surjective);
    }

    #[test]
    fn lf_examples() {
        let one = FiniteCategory::preorder(&["*"], &[]).unwrap();
        assert!(check_lf(&DispCat::new(one.clone(), MapClass::all(&one)).unwrap()).holds());
        let c = diamond();
        assert!(check_lf(&DispCat::new(c.clone(), MapClass::all(&c)).unwrap()).holds());
        let disc = FiniteCategory::preorder(&["p", "q"], &[]).unwrap();
        let r = check_lf(&DispCat::new(disc.clone(), MapClass::identities(&disc)).unwrap());
        assert!(!r.products);
    }
}
