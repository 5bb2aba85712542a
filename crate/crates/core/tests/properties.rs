use pathwork::cli::run_command;
use pathwork::corpus;
use pathwork::fincat::{FiniteCategory, MorId};
use pathwork::format::{self, emit, parse};
use pathwork::pathcat::{homotopy_relation, HomotopyModel};
use pathwork::syntaxmodel::{
    admissible_ind, enumerate_closed_terms, enumerate_types, terms_of, type_of, check_type, Motive, Term, Ty,
    X,
};
use proptest::prelude::*;
use proptest::sample::Index;
use std::collections::BTreeSet;

fn preorder(n: usize, bits: &[bool]) -> FiniteCategory {
    let objs: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let mut leq = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && bits[i * 4 + j] {
                leq.push((objs[i].clone(), objs[j].clone()));
            }
        }
    }
    FiniteCategory::preorder(&objs, &leq).unwrap()
}

fn chain(n: usize) -> FiniteCategory {
    let objs: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let leq: Vec<(String, String)> = (1..n).map(|i| (objs[i - 1].clone(), objs[i].clone())).collect();
    FiniteCategory::preorder(&objs, &leq).unwrap()
}

fn to_text(c: &FiniteCategory, classes: &str) -> String {
    let mut s = String::from("[objects]\n");
    let objs: Vec<&str> = c.objects().map(|o| c.obj_name(o)).collect();
    s += &objs.join(" ");
    s += "\n[morphisms]\n";
    for f in c.morphisms() {
        s += &format!("{} : {} -> {}\n", c.mor_name(f), c.obj_name(c.dom(f)), c.obj_name(c.cod(f)));
    }
    s += "[identities]\n";
    for o in c.objects() {
        s += &format!("{} = {}\n", c.obj_name(o), c.mor_name(c.id(o)));
    }
    s += "[composition]\n";
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.try_compose(g, f) {
                s += &format!("{} . {} = {}\n", c.mor_name(g), c.mor_name(f), c.mor_name(h));
            }
        }
    }
    s += "[classes]\n";
    s += classes;
    s
}

/// Every commuting cone over `(f, g)` factors uniquely through `(p, q)`.
fn pullback_by_cones(c: &FiniteCategory, f: MorId, g: MorId, p: MorId, q: MorId) -> bool {
    if c.compose(f, p) != c.compose(g, q) {
        return false;
    }
    for x in c.objects() {
        for &a in c.hom(x, c.dom(f)) {
            for &b in c.hom(x, c.dom(g)) {
                if c.compose(f, a) != c.compose(g, b) {
                    continue;
                }
                let n = c
                    .hom(x, c.dom(p))
                    .iter()
                    .filter(|&&u| c.compose(p, u) == a && c.compose(q, u) == b)
                    .count();
                if n != 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn mutate(text: &str, ops: &[(Index, u8, u8)]) -> String {
    const ALPHABET: &[u8] = b"ab_'*:->=.@#[]\n objectsmrphiaclsfx";
    let mut bytes = text.as_bytes().to_vec();
    for (at, kind, ch) in ops {
        if bytes.is_empty() {
            bytes.push(b'a');
        }
        let i = at.index(bytes.len());
        match kind % 3 {
            0 => {
                bytes.remove(i);
            }
            1 => bytes.insert(i, ALPHABET[*ch as usize % ALPHABET.len()]),
            _ => bytes[i] = ALPHABET[*ch as usize % ALPHABET.len()],
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

fn closed_equality_proofs() -> Vec<(Term, Ty)> {
    pathwork::syntaxmodel::enumerate_terms(&Vec::new(), 4)
        .into_iter()
        .filter(|(_, ty)| matches!(ty, Ty::Eq(..)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preorders_satisfy_category_laws(n in 1usize..=4, bits in prop::collection::vec(any::<bool>(), 16)) {
        let c = preorder(n, &bits);
        prop_assert!(c.validate().is_empty());
        for f in c.morphisms() {
            prop_assert_eq!(c.compose(f, c.id(c.dom(f))), f);
            prop_assert_eq!(c.compose(c.id(c.cod(f)), f), f);
            for g in c.morphisms() {
                for h in c.morphisms() {
                    if let (Some(gf), Some(hg)) = (c.try_compose(g, f), c.try_compose(h, g)) {
                        prop_assert_eq!(c.try_compose(h, gf), c.try_compose(hg, f));
                    }
                }
            }
        }
        for a in c.objects() {
            for b in c.objects() {
                prop_assert!(c.hom(a, b).len() <= 1);
            }
        }
    }

    #[test]
    fn pullbacks_agree_with_cone_search(n in 1usize..=4, bits in prop::collection::vec(any::<bool>(), 16)) {
        let c = preorder(n, &bits);
        for f in c.morphisms() {
            for g in c.morphisms() {
                if c.cod(f) != c.cod(g) {
                    continue;
                }
                let exists = c.morphisms().any(|p| c.morphisms().any(|q| {
                    c.dom(p) == c.dom(q) && c.cod(p) == c.dom(f) && c.cod(q) == c.dom(g)
                        && pullback_by_cones(&c, f, g, p, q)
                }));
                match c.pullback(f, g) {
                    Some(w) => {
                        prop_assert!(pullback_by_cones(&c, f, g, w.proj_left, w.proj_right));
                        prop_assert!(c.is_pullback(f, g, w.proj_left, w.proj_right));
                    }
                    None => prop_assert!(!exists),
                }
            }
        }
    }

    #[test]
    fn text_round_trips(n in 1usize..=4, bits in prop::collection::vec(any::<bool>(), 16)) {
        let c = preorder(n, &bits);
        let text = to_text(&c, "fibration = *\nequivalence = @isos\n");
        let file = parse(&text).unwrap();
        let out = emit(&file);
        let again = parse(&out).unwrap();
        prop_assert_eq!(&again, &file);
        prop_assert_eq!(emit(&again), out);
        prop_assert_eq!(file.build().unwrap().cat, c);
    }

    #[test]
    fn chains_are_path_categories_with_discrete_homotopy(n in 1usize..=4) {
        let c = chain(n);
        let model = format::load(&to_text(&c, "fibration = *\nequivalence = @isos\n")).unwrap();
        let p = model.path_cat().unwrap();
        for f in p.fibrations().iter() {
            if let Some(w) = p.path_object(f) {
                let diagonal: BTreeSet<(MorId, MorId)> =
                    c.morphisms().filter(|&g| c.cod(g) == c.dom(f)).map(|g| (g, g)).collect();
                prop_assert_eq!(homotopy_relation(&c, w), diagonal);
            }
        }
    }

    #[test]
    fn mutated_fixtures_never_panic(
        which in 0usize..corpus::FILES.len(),
        ops in prop::collection::vec((any::<Index>(), any::<u8>(), any::<u8>()), 1..6),
        cmd in 0usize..4,
    ) {
        let text = mutate(corpus::FILES[which].1, &ops);
        let dir = std::env::temp_dir().join(format!("pathwork-fuzz-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.cat");
        std::fs::write(&path, &text).unwrap();
        let words: &[&str] = [&["validate"][..], &["check", "path-axioms"], &["split"], &["matrix"]][cmd];
        let mut argv = vec!["pathwork".to_string()];
        argv.extend(words.iter().map(|w| w.to_string()));
        argv.push(path.to_string_lossy().into_owned());
        let first = run_command(argv.clone());
        prop_assert!([0, 1, 2].contains(&first.code), "exit {}", first.code);
        let second = run_command(argv);
        prop_assert_eq!(first.code, second.code);
        prop_assert_eq!(first.report.map(|r| r.to_json()), second.report.map(|r| r.to_json()));
        if let Ok(file) = parse(&text) {
            prop_assert_eq!(parse(&emit(&file)).unwrap(), file);
        }
    }

    #[test]
    fn closed_terms_typecheck_and_enumeration_finds_them(pick in any::<Index>()) {
        let all = pathwork::syntaxmodel::enumerate_terms(&Vec::new(), 4);
        let (t, ty) = pick.get(&all).clone();
        prop_assert_eq!(type_of(&Vec::new(), &t).unwrap(), ty.clone());
        prop_assert!(check_type(&Vec::new(), &ty).is_ok());
        let e = enumerate_closed_terms(&ty, ty.saturation_bound()).unwrap();
        prop_assert!(e.terms.contains(&t));
    }

    #[test]
    fn enumeration_is_stable_past_the_bound(pick in any::<Index>(), extra in 1usize..3) {
        let types = enumerate_types(&Vec::new(), 2);
        let ty = pick.get(&types);
        let at = enumerate_closed_terms(ty, ty.saturation_bound()).unwrap();
        let past = enumerate_closed_terms(ty, ty.saturation_bound() + extra).unwrap();
        prop_assert!(at.saturated());
        prop_assert_eq!(at.terms, past.terms);
    }

    #[test]
    fn inverse_is_an_involution(pick in any::<Index>()) {
        let proofs = closed_equality_proofs();
        let (t, ty) = pick.get(&proofs).clone();
        prop_assert_eq!(Term::inv(Term::inv(t.clone())), t.clone());
        let Ty::Eq(inner, a, b) = ty else { unreachable!() };
        prop_assert_eq!(type_of(&Vec::new(), &Term::inv(t)).unwrap(), Ty::eq(*inner, b, a));
    }

    #[test]
    fn induction_computes_on_reflexivity(a_pick in any::<Index>(), c_pick in any::<Index>(), d_pick in any::<Index>(), t_pick in any::<Index>()) {
        let base = enumerate_types(&Vec::new(), 1);
        let ty = a_pick.get(&base).clone();
        let points = terms_of(&Vec::new(), &ty, ty.saturation_bound());
        prop_assume!(!points.is_empty());
        let a = t_pick.get(&points).clone();
        let probe = Motive::closed(ty.clone(), Ty::R);
        let families = enumerate_types(&probe.context(), 1);
        let family = c_pick.get(&families).clone();
        let m = Motive::closed(ty, family);
        let data = terms_of(&m.point_context(), &m.at_refl(), m.at_refl().saturation_bound());
        prop_assume!(!data.is_empty());
        let d = d_pick.get(&data).clone();
        let ind = admissible_ind(&m, &d, &Term::refl(a.clone())).unwrap();
        prop_assert_eq!(ind.term, d.subst(&[(X, a)]));
    }
}
