//! A small type theory with two primitive types, a handful of generators and
//! identity types, used as a countermodel: unbased path induction is admissible
//! in it, yet no closed term transports `s : S(r)` along `rho` into `S(r')`.
//!
//! Terms are kept in canonical form. The only reduction is the inverse table
//! applied by [`Term::inv`], so syntactic equality is the model's equality.

use crate::error::{Error, Result};
use crate::par;
use crate::report::Node;
use std::collections::BTreeMap;
use std::fmt;

pub const X: &str = "x";
pub const X_PRIME: &str = "x'";
pub const CHI: &str = "chi";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    R,
    RPrime,
    Rho,
    RhoInv,
    S,
}

pub const GENERATORS: [Generator; 5] = [
    Generator::R,
    Generator::RPrime,
    Generator::Rho,
    Generator::RhoInv,
    Generator::S,
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Gen(Generator),
    Refl(Box<Term>),
    /// Formal inverse of a variable of identity type. Built only through
    /// [`Term::inv`], which resolves it on generators and reflexivity.
    Inv(Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    R,
    S(Term),
    Eq(Box<Ty>, Term, Term),
}

pub type Context = Vec<(String, Ty)>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn r() -> Term {
        Term::Gen(Generator::R)
    }

    pub fn r_prime() -> Term {
        Term::Gen(Generator::RPrime)
    }

    pub fn rho() -> Term {
        Term::Gen(Generator::Rho)
    }

    pub fn rho_inv() -> Term {
        Term::Gen(Generator::RhoInv)
    }

    pub fn s() -> Term {
        Term::Gen(Generator::S)
    }

    pub fn refl(t: Term) -> Term {
        Term::Refl(Box::new(t))
    }

    /// Inverse of an equality proof: `refl(b)` is its own inverse, `rho` and
    /// `rho^-1` swap, and a double formal inverse cancels.
    pub fn inv(t: Term) -> Term {
        match t {
            Term::Refl(b) => Term::Refl(b),
            Term::Gen(Generator::Rho) => Term::rho_inv(),
            Term::Gen(Generator::RhoInv) => Term::rho(),
            Term::Inv(u) => *u,
            other => Term::Inv(Box::new(other)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Gen(_) => 1,
            Term::Refl(t) => 1 + t.depth(),
            Term::Inv(t) => t.depth(),
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Gen(_) => false,
            Term::Refl(t) | Term::Inv(t) => t.mentions(name),
        }
    }

    /// Simultaneous substitution.
    pub fn subst(&self, sub: &[(&str, Term)]) -> Term {
        match self {
            Term::Var(v) => sub
                .iter()
                .find(|(n, _)| n == v)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| self.clone()),
            Term::Gen(_) => self.clone(),
            Term::Refl(t) => Term::refl(t.subst(sub)),
            Term::Inv(t) => Term::inv(t.subst(sub)),
        }
    }
}

impl Ty {
    pub fn s(t: Term) -> Ty {
        Ty::S(t)
    }

    pub fn eq(ty: Ty, a: Term, b: Term) -> Ty {
        Ty::Eq(Box::new(ty), a, b)
    }

    /// Number of nested identity types.
    pub fn nesting(&self) -> usize {
        match self {
            Ty::R | Ty::S(_) => 0,
            Ty::Eq(t, _, _) => 1 + t.nesting(),
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Ty::R => false,
            Ty::S(t) => t.mentions(name),
            Ty::Eq(ty, a, b) => ty.mentions(name) || a.mentions(name) || b.mentions(name),
        }
    }

    pub fn subst(&self, sub: &[(&str, Term)]) -> Ty {
        match self {
            Ty::R => Ty::R,
            Ty::S(t) => Ty::S(t.subst(sub)),
            Ty::Eq(ty, a, b) => Ty::eq(ty.subst(sub), a.subst(sub), b.subst(sub)),
        }
    }

    /// Depth from which enumeration of this type's inhabitants is exhaustive.
    pub fn saturation_bound(&self) -> usize {
        self.nesting() + 2
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::R => "r",
            Generator::RPrime => "r'",
            Generator::Rho => "rho",
            Generator::RhoInv => "rho^-1",
            Generator::S => "s",
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Gen(g) => write!(f, "{g}"),
            Term::Refl(t) => write!(f, "refl({t})"),
            Term::Inv(t) => write!(f, "inv({t})"),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::R => f.write_str("R"),
            Ty::S(t) => write!(f, "S({t})"),
            Ty::Eq(ty, a, b) => write!(f, "Eq({ty}, {a}, {b})"),
        }
    }
}

fn lookup<'a>(ctx: &'a Context, name: &str) -> Option<&'a Ty> {
    ctx.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
}

pub fn generator_type(g: Generator) -> Ty {
    match g {
        Generator::R | Generator::RPrime => Ty::R,
        Generator::Rho => Ty::eq(Ty::R, Term::r(), Term::r_prime()),
        Generator::RhoInv => Ty::eq(Ty::R, Term::r_prime(), Term::r()),
        Generator::S => Ty::s(Term::r()),
    }
}

pub fn type_of(ctx: &Context, t: &Term) -> Result<Ty> {
    match t {
        Term::Var(v) => lookup(ctx, v)
            .cloned()
            .ok_or_else(|| Error::IllTyped(format!("unbound variable {v}"))),
        Term::Gen(g) => Ok(generator_type(*g)),
        Term::Refl(u) => {
            let ty = type_of(ctx, u)?;
            Ok(Ty::eq(ty, (**u).clone(), (**u).clone()))
        }
        Term::Inv(u) => match type_of(ctx, u)? {
            Ty::Eq(ty, a, b) => Ok(Ty::Eq(ty, b, a)),
            other => Err(Error::IllTyped(format!("inv({u}) where {u} : {other}"))),
        },
    }
}

pub fn check_type(ctx: &Context, ty: &Ty) -> Result<()> {
    match ty {
        Ty::R => Ok(()),
        Ty::S(t) => match type_of(ctx, t)? {
            Ty::R => Ok(()),
            other => Err(Error::IllTyped(format!("S({t}) where {t} : {other}"))),
        },
        Ty::Eq(inner, a, b) => {
            check_type(ctx, inner)?;
            for end in [a, b] {
                let got = type_of(ctx, end)?;
                if got != **inner {
                    return Err(Error::IllTyped(format!("{end} : {got}, expected {inner}")));
                }
            }
            Ok(())
        }
    }
}

/// Every context in which each type is well formed over the preceding entries.
pub fn check_context(ctx: &Context) -> Result<()> {
    for (i, (name, ty)) in ctx.iter().enumerate() {
        if ctx[..i].iter().any(|(n, _)| n == name) {
            return Err(Error::Duplicate(name.clone()));
        }
        check_type(&ctx[..i].to_vec(), ty)?;
    }
    Ok(())
}

/// All canonical terms in `ctx` up to `depth`, with their types: variables,
/// generators, and towers of `refl` on those. A formal inverse only shows up as
/// the output of the eliminator at an open proof, so it is not enumerated.
pub fn enumerate_terms(ctx: &Context, depth: usize) -> Vec<(Term, Ty)> {
    let mut layer: Vec<(Term, Ty)> = Vec::new();
    for (name, ty) in ctx {
        layer.push((Term::var(name), ty.clone()));
    }
    for g in GENERATORS {
        layer.push((Term::Gen(g), generator_type(g)));
    }
    let mut out = Vec::new();
    for _ in 0..depth {
        if layer.is_empty() {
            break;
        }
        let next = par::map(&layer, |(t, ty)| {
            (Term::refl(t.clone()), Ty::eq(ty.clone(), t.clone(), t.clone()))
        });
        out.append(&mut layer);
        layer = next;
    }
    out
}

pub fn terms_of(ctx: &Context, ty: &Ty, depth: usize) -> Vec<Term> {
    let mut v: Vec<Term> = enumerate_terms(ctx, depth)
        .into_iter()
        .filter(|(_, t)| t == ty)
        .map(|(t, _)| t)
        .collect();
    v.sort();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub ty: Ty,
    pub depth: usize,
    pub bound: usize,
    pub terms: Vec<Term>,
}

impl Enumeration {
    pub fn saturated(&self) -> bool {
        self.depth >= self.bound
    }
}

/// Closed inhabitants of `ty` up to `depth`.
pub fn enumerate_closed_terms(ty: &Ty, depth: usize) -> Result<Enumeration> {
    check_type(&Vec::new(), ty)?;
    Ok(Enumeration {
        ty: ty.clone(),
        depth,
        bound: ty.saturation_bound(),
        terms: terms_of(&Vec::new(), ty, depth),
    })
}

/// A type family `C` in context `gamma, x : A, x' : A, chi : Eq(A, x, x')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motive {
    pub gamma: Context,
    pub ty: Ty,
    pub family: Ty,
}

impl Motive {
    pub fn closed(ty: Ty, family: Ty) -> Self {
        Motive {
            gamma: Vec::new(),
            ty,
            family,
        }
    }

    pub fn context(&self) -> Context {
        let mut ctx = self.gamma.clone();
        ctx.push((X.into(), self.ty.clone()));
        ctx.push((X_PRIME.into(), self.ty.clone()));
        ctx.push((CHI.into(), Ty::eq(self.ty.clone(), Term::var(X), Term::var(X_PRIME))));
        ctx
    }

    pub fn point_context(&self) -> Context {
        let mut ctx = self.gamma.clone();
        ctx.push((X.into(), self.ty.clone()));
        ctx
    }

    /// `C[x/x', refl(x)/chi]`, the type of the datum.
    pub fn at_refl(&self) -> Ty {
        self.family
            .subst(&[(X_PRIME, Term::var(X)), (CHI, Term::refl(Term::var(X)))])
    }

    pub fn instance(&self, a: &Term, a2: &Term, alpha: &Term) -> Ty {
        self.family
            .subst(&[(X, a.clone()), (X_PRIME, a2.clone()), (CHI, alpha.clone())])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IndCase {
    /// `C` does not mention `x'` or `chi`.
    Constant,
    /// `C = Eq(T, t, t)`.
    Reflexive,
    /// `C = Eq(A, x, x')`.
    Forward,
    /// `C = Eq(A, x', x)`.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induction {
    pub case: IndCase,
    pub term: Term,
    pub ty: Ty,
}

/// Unbased path induction computed by case analysis on the motive.
pub fn admissible_ind(m: &Motive, d: &Term, alpha: &Term) -> Result<Induction> {
    if let Some((n, _)) = m.gamma.iter().find(|(n, _)| [X, X_PRIME, CHI].contains(&n.as_str())) {
        return Err(Error::Precondition(format!("context variable {n} shadows the motive")));
    }
    check_context(&m.context())?;
    check_type(&m.context(), &m.family)?;
    let want = m.at_refl();
    let got = type_of(&m.point_context(), d)?;
    if got != want {
        return Err(Error::IllTyped(format!("datum {d} : {got}, expected {want}")));
    }
    let (a, a2) = match type_of(&m.gamma, alpha)? {
        Ty::Eq(inner, a, a2) if *inner == m.ty => (a, a2),
        other => {
            return Err(Error::IllTyped(format!(
                "{alpha} : {other}, expected an equality in {}",
                m.ty
            )))
        }
    };
    let sub = [(X, a.clone()), (X_PRIME, a2.clone()), (CHI, alpha.clone())];
    let (case, term) = if !m.family.mentions(X_PRIME) && !m.family.mentions(CHI) {
        (IndCase::Constant, d.subst(&[(X, a.clone())]))
    } else {
        match &m.family {
            Ty::Eq(_, t1, t2) if t1 == t2 => (IndCase::Reflexive, Term::refl(t1.subst(&sub))),
            Ty::Eq(_, Term::Var(v1), Term::Var(v2)) if v1 == X && v2 == X_PRIME => {
                (IndCase::Forward, alpha.clone())
            }
            Ty::Eq(_, Term::Var(v1), Term::Var(v2)) if v1 == X_PRIME && v2 == X => {
                (IndCase::Backward, Term::inv(alpha.clone()))
            }
            other => {
                return Err(Error::NoAdmissibleCase(format!(
                    "motive {other} with datum {d} at {alpha}"
                )))
            }
        }
    };
    let ty = m.instance(&a, &a2, alpha);
    let got = type_of(&m.gamma, &term)?;
    if got != ty {
        return Err(Error::IllTyped(format!("ind gave {term} : {got}, expected {ty}")));
    }
    Ok(Induction { case, term, ty })
}

/// Well-formed types in `ctx` with at most `nesting` identity layers.
pub fn enumerate_types(ctx: &Context, nesting: usize) -> Vec<Ty> {
    let terms = enumerate_terms(ctx, nesting + 2);
    let mut by_type: BTreeMap<Ty, Vec<Term>> = BTreeMap::new();
    for (t, ty) in terms {
        by_type.entry(ty).or_default().push(t);
    }
    let inhabitants = |ty: &Ty| by_type.get(ty).cloned().unwrap_or_default();
    let mut level: Vec<Ty> = vec![Ty::R];
    level.extend(inhabitants(&Ty::R).into_iter().map(Ty::S));
    let mut all = level.clone();
    for _ in 0..nesting {
        let mut next = Vec::new();
        for ty in &level {
            let ts = inhabitants(ty);
            for a in &ts {
                for b in &ts {
                    next.push(Ty::eq(ty.clone(), a.clone(), b.clone()));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coverage {
    pub contexts: usize,
    pub motives: usize,
    pub instances: usize,
    pub by_case: BTreeMap<String, usize>,
    /// Instances with `alpha = refl(a)` whose result is `d[a/x]`.
    pub beta_checked: usize,
    pub failures: Vec<String>,
}

impl Coverage {
    pub fn complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Parameter contexts used for the coverage sweep.
pub fn coverage_contexts() -> Vec<Context> {
    vec![
        Vec::new(),
        vec![("y".into(), Ty::R)],
        vec![("y".into(), Ty::eq(Ty::R, Term::r(), Term::r_prime()))],
    ]
}

/// Runs [`admissible_ind`] on every motive, datum and equality proof
/// enumerable in the given parameter contexts, with motive types up to
/// `nesting` identity layers.
pub fn check_coverage(contexts: &[Context], nesting: usize) -> Coverage {
    let mut jobs: Vec<(Context, Ty)> = Vec::new();
    for gamma in contexts {
        for a in enumerate_types(gamma, nesting.saturating_sub(1)) {
            jobs.push((gamma.clone(), a));
        }
    }
    let parts = par::map(&jobs, |(gamma, a)| {
        let motive_ctx = Motive {
            gamma: gamma.clone(),
            ty: a.clone(),
            family: Ty::R,
        }
        .context();
        let mut proofs: Vec<Term> = enumerate_terms(gamma, a.saturation_bound() + 1)
            .into_iter()
            .filter(|(_, ty)| matches!(ty, Ty::Eq(inner, _, _) if **inner == *a))
            .map(|(t, _)| t)
            .collect();
        proofs.sort();
        proofs.dedup();
        let mut cov = Coverage::default();
        for family in enumerate_types(&motive_ctx, nesting) {
            let m = Motive {
                gamma: gamma.clone(),
                ty: a.clone(),
                family,
            };
            cov.motives += 1;
            let want = m.at_refl();
            for d in terms_of(&m.point_context(), &want, want.saturation_bound()) {
                for alpha in &proofs {
                    cov.instances += 1;
                    match admissible_ind(&m, &d, alpha) {
                        Ok(ind) => {
                            *cov.by_case.entry(format!("{:?}", ind.case)).or_default() += 1;
                            if let Term::Refl(pt) = alpha {
                                if ind.term != d.subst(&[(X, (**pt).clone())]) {
                                    cov.failures.push(format!(
                                        "beta: ind at {alpha} gave {} for datum {d} in {}",
                                        ind.term, m.family
                                    ));
                                }
                                cov.beta_checked += 1;
                            }
                        }
                        Err(e) => cov.failures.push(format!("{} with {d} at {alpha}: {e}", m.family)),
                    }
                }
            }
        }
        cov
    });
    let mut total = Coverage {
        contexts: contexts.len(),
        ..Coverage::default()
    };
    for c in parts {
        total.motives += c.motives;
        total.instances += c.instances;
        total.beta_checked += c.beta_checked;
        for (k, v) in c.by_case {
            *total.by_case.entry(k).or_default() += v;
        }
        total.failures.extend(c.failures);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportReport {
    pub target: Enumeration,
    pub source: Enumeration,
    pub rho_derivable: bool,
    /// Data `d : S(x)` for the unbased motive `S(x')`; none exist.
    pub unbased_data: Vec<Term>,
    /// What a based eliminator from `r` would produce for motive `S(x')`.
    pub based_contrast: Option<String>,
}

impl TransportReport {
    pub fn underivable(&self) -> bool {
        self.target.saturated()
            && self.target.terms.is_empty()
            && self.source.terms == vec![Term::s()]
            && self.rho_derivable
            && self.unbased_data.is_empty()
    }

    pub fn to_node(&self) -> Node {
        let mut children = Vec::new();
        let t = &self.target;
        children.push(if t.saturated() && t.terms.is_empty() {
            Node::pass(
                "S(r') uninhabited",
                vec![format!("no closed term of {} up to depth {} (bound {})", t.ty, t.depth, t.bound)],
            )
        } else {
            Node::fail(
                "S(r') uninhabited",
                format!(
                    "depth {} bound {} terms [{}]",
                    t.depth,
                    t.bound,
                    join(&t.terms)
                ),
            )
        });
        children.push(if self.source.terms.is_empty() {
            Node::fail("S(r) inhabited", "no closed term of S(r)")
        } else {
            Node::pass("S(r) inhabited", vec![format!("{} : S(r)", join(&self.source.terms))])
        });
        children.push(if self.rho_derivable {
            Node::pass("rho derivable", vec!["rho : Eq(R, r, r')".into()])
        } else {
            Node::fail("rho derivable", "rho does not have type Eq(R, r, r')")
        });
        children.push(if self.unbased_data.is_empty() {
            Node::pass(
                "unbased motive S(x') has no datum",
                vec!["no term of S(x) in context x : R".into()],
            )
        } else {
            Node::fail("unbased motive S(x') has no datum", join(&self.unbased_data))
        });
        children.push(match &self.based_contrast {
            Some(w) => Node::pass("based contrast", vec![w.clone()]),
            None => Node::fail("based contrast", "based premises do not hold"),
        });
        let mut node = Node::group("transport underivable", children);
        if self.underivable() {
            node = node.with_witnesses(vec!["transport underivable".into()]);
        }
        node
    }
}

fn join(ts: &[Term]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

/// Transport would give a closed term of `S(r')` from `s : S(r)` and `rho`.
/// `depth` overrides the enumeration depth for `S(r')`.
pub fn check_transport_underivable(depth: Option<usize>) -> TransportReport {
    let target_ty = Ty::s(Term::r_prime());
    let source_ty = Ty::s(Term::r());
    let d = depth.unwrap_or_else(|| target_ty.saturation_bound());
    let empty = Vec::new();
    let target = Enumeration {
        bound: target_ty.saturation_bound(),
        terms: terms_of(&empty, &target_ty, d),
        ty: target_ty,
        depth: d,
    };
    let source = Enumeration {
        bound: source_ty.saturation_bound(),
        terms: terms_of(&empty, &source_ty, d),
        ty: source_ty,
        depth: d,
    };
    let rho_ty = Ty::eq(Ty::R, Term::r(), Term::r_prime());
    let rho_derivable = type_of(&empty, &Term::rho()).ok() == Some(rho_ty.clone());
    let m = Motive::closed(Ty::R, Ty::s(Term::var(X_PRIME)));
    let want = m.at_refl();
    let unbased_data = terms_of(&m.point_context(), &want, want.saturation_bound() + 1);
    // Based motive over x' : R, chi : Eq(R, r, x'), datum at refl(r).
    let based_datum_ty = Ty::s(Term::var(X_PRIME)).subst(&[(X_PRIME, Term::r())]);
    let based_contrast = (type_of(&empty, &Term::s()).ok() == Some(based_datum_ty) && rho_derivable)
        .then(|| "based ind_s(rho) : S(r') would inhabit S(r')".to_string());
    TransportReport {
        target,
        source,
        rho_derivable,
        unbased_data,
        based_contrast,
    }
}

/// `inv` is an involution on the closed equality proofs up to `depth`.
pub fn check_involution(depth: usize) -> Vec<String> {
    enumerate_terms(&Vec::new(), depth)
        .into_iter()
        .filter(|(_, ty)| matches!(ty, Ty::Eq(..)))
        .filter(|(t, _)| Term::inv(Term::inv(t.clone())) != *t)
        .map(|(t, _)| t.to_string())
        .collect()
}

/// Full countermodel verdict: transport underivable, eliminator coverage and
/// the inverse table.
pub fn counterexample_report(depth: Option<usize>) -> Node {
    let transport = check_transport_underivable(depth).to_node();
    let cov = check_coverage(&coverage_contexts(), 2);
    let mut witnesses = vec![format!(
        "{} contexts, {} motives, {} instances, {} beta instances",
        cov.contexts, cov.motives, cov.instances, cov.beta_checked
    )];
    witnesses.extend(cov.by_case.iter().map(|(k, v)| format!("{k}: {v}")));
    let coverage = Node {
        name: "unbased induction admissible".into(),
        pass: cov.complete(),
        witnesses,
        counterexamples: cov.failures.clone(),
        children: Vec::new(),
    };
    let bad = check_involution(depth.unwrap_or(4));
    let involution = if bad.is_empty() {
        Node::pass("inv involutive", vec![])
    } else {
        Node::fail("inv involutive", bad.join(", "))
    };
    Node::group("counterexample", vec![transport, coverage, involution])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_terms_of_r() {
        let e = enumerate_closed_terms(&Ty::R, 3).unwrap();
        assert_eq!(e.terms, vec![Term::r(), Term::r_prime()]);
        assert!(e.saturated());
    }

    #[test]
    fn closed_terms_of_s_r_prime_empty() {
        let e = enumerate_closed_terms(&Ty::s(Term::r_prime()), 4).unwrap();
        assert!(e.terms.is_empty());
        assert!(e.saturated());
    }

    #[test]
    fn ill_formed_types_rejected() {
        assert!(check_type(&Vec::new(), &Ty::s(Term::rho())).is_err());
        assert!(check_type(&Vec::new(), &Ty::eq(Ty::R, Term::r(), Term::rho())).is_err());
    }

    #[test]
    fn inverse_table() {
        assert_eq!(Term::inv(Term::rho()), Term::rho_inv());
        assert_eq!(Term::inv(Term::rho_inv()), Term::rho());
        assert_eq!(Term::inv(Term::refl(Term::r())), Term::refl(Term::r()));
        let chi = Term::var(CHI);
        assert_eq!(Term::inv(Term::inv(chi.clone())), chi);
    }

    #[test]
    fn forward_and_backward_cases() {
        let d = Term::refl(Term::var(X));
        let fwd = Motive::closed(Ty::R, Ty::eq(Ty::R, Term::var(X), Term::var(X_PRIME)));
        let got = admissible_ind(&fwd, &d, &Term::rho()).unwrap();
        assert_eq!((got.case, got.term), (IndCase::Forward, Term::rho()));
        let bwd = Motive::closed(Ty::R, Ty::eq(Ty::R, Term::var(X_PRIME), Term::var(X)));
        let got = admissible_ind(&bwd, &d, &Term::rho()).unwrap();
        assert_eq!((got.case, got.term), (IndCase::Backward, Term::rho_inv()));
        assert_eq!(got.ty, Ty::eq(Ty::R, Term::r_prime(), Term::r()));
    }

    #[test]
    fn beta_on_refl() {
        let d = Term::refl(Term::var(X));
        let m = Motive::closed(Ty::R, Ty::eq(Ty::R, Term::var(X), Term::var(X_PRIME)));
        let got = admissible_ind(&m, &d, &Term::refl(Term::r())).unwrap();
        assert_eq!(got.term, Term::refl(Term::r()));
    }

    #[test]
    fn motive_without_datum_is_rejected() {
        let m = Motive::closed(Ty::R, Ty::s(Term::var(X_PRIME)));
        assert!(admissible_ind(&m, &Term::s(), &Term::rho()).is_err());
    }

    #[test]
    fn transport_is_underivable() {
        let r = check_transport_underivable(None);
        assert!(r.underivable());
        assert!(r.based_contrast.is_some());
        let node = r.to_node();
        assert!(node.pass && node.well_formed());
    }

    #[test]
    fn coverage_is_complete() {
        let cov = check_coverage(&coverage_contexts(), 2);
        assert!(cov.complete(), "{:?}", cov.failures);
        assert!(cov.beta_checked > 0);
        for case in ["Constant", "Reflexive", "Forward", "Backward"] {
            assert!(cov.by_case.get(case).copied().unwrap_or(0) > 0, "{case}");
        }
    }
}
