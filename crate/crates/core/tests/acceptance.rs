//! Acceptance checks, one line per criterion. Exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fusion_core::biset::{all_orbit_types, ClassList, ExplicitBiset, Stabilizer, TwistedDiagonal, VirtualGSet};
use fusion_core::catalog::{self, CatalogEntry};
use fusion_core::fusion::{close_fusion, fusion_of_subgroup, FusionSystem, ProductFusion};
use fusion_core::group::{all_subgroups, monomorphisms, DirectSquare, FiniteGroup, GroupMap, Subgroup};
use fusion_core::realization::{
    build_semichar, decide_morphism, find_intertwiner, induced_fusion, rank_and_order, verify_realization,
    SemicharBiset, DEFAULT_INTERTWINER_BOUND,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fusion_of(e: &CatalogEntry) -> Result<FusionSystem, String> {
    e.fusion_system().map_err(|err| format!("{}: {err}", e.name))
}

fn realize(e: &CatalogEntry) -> Result<(fusion_core::realization::RealizationReport, Duration), String> {
    let start = Instant::now();
    let f = fusion_of(e)?;
    let r = verify_realization(&f, DEFAULT_INTERTWINER_BOUND).map_err(|err| format!("{}: {err}", e.name))?;
    Ok((r, start.elapsed()))
}

fn inner_identity() -> Outcome {
    let entries: Vec<_> = catalog::catalog().into_iter().filter(|e| e.is_inner()).collect();
    check(entries.len() == 11, || format!("{} inner entries", entries.len()))?;
    let mut slowest = Duration::ZERO;
    for e in &entries {
        let start = Instant::now();
        let f = fusion_of(e)?;
        let b = build_semichar(&f).map_err(|err| err.to_string())?;
        let sq = b.square();
        let expected = VirtualGSet::transitive(sq.square().clone(), TwistedDiagonal::identity(sq).subgroup())
            .map_err(|err| err.to_string())?;
        check(*b.x() == expected, || format!("{}: X is not the identity orbit", e.name))?;
        check(*b.m() == BigInt::from(1), || format!("{}: m = {}", e.name, b.m()))?;
        let (r, order) = rank_and_order(&b).map_err(|err| err.to_string())?;
        check(r == 1 && order == BigUint::from(e.group.order()), || format!("{}: r = {r}, |G| = {order}", e.name))?;
        let report = verify_realization(&f, DEFAULT_INTERTWINER_BOUND).map_err(|err| err.to_string())?;
        check(report.flags.realized, || format!("{}: not realized", e.name))?;
        let took = start.elapsed();
        check(took < Duration::from_secs(5), || format!("{}: took {took:?}", e.name))?;
        slowest = slowest.max(took);
    }
    Ok(format!("11 entries, slowest {slowest:.2?}"))
}

fn a4_case() -> Outcome {
    let e = catalog::lookup("v4_a4").map_err(|err| err.to_string())?;
    let f = fusion_of(&e)?;
    let b = build_semichar(&f).map_err(|err| err.to_string())?;
    let (r, order) = rank_and_order(&b).map_err(|err| err.to_string())?;
    check(r == 3 && order == BigUint::from(384u32), || format!("r = {r}, |G| = {order}"))?;
    let x = b.explicit().ok_or("no explicit biset")?;
    let counted = common::count_right_automorphisms(x);
    check(counted == 384, || format!("enumerated {counted} automorphisms"))?;
    let (induced, _) = induced_fusion(&b).map_err(|err| err.to_string())?;
    let s = f.base().clone();
    let alpha = GroupMap::from_pairs(&s, &[(0, 0), (1, 2), (2, 3), (3, 1)], Subgroup::whole(&s))
        .map_err(|err| err.to_string())?;
    let closed = close_fusion(s, &[alpha]).map_err(|err| err.to_string())?;
    check(induced == closed, || "induced fusion differs from the closure of alpha".into())?;
    let a4 = catalog::alternating4();
    let v4 = Subgroup::new(&a4, 0..4).map_err(|err| err.to_string())?;
    let direct = fusion_of_subgroup(&a4, &v4).map_err(|err| err.to_string())?;
    check(induced == direct, || "induced fusion differs from conjugation in A4".into())?;
    Ok(format!("r = 3, |G| = 384 (enumerated {counted}), induced fusion matches both"))
}

fn non_saturated() -> Outcome {
    for name in ["v4_partial", "c3xc3_partial"] {
        let e = catalog::lookup(name).map_err(|err| err.to_string())?;
        let (r, _) = realize(&e)?;
        check(r.flags.all_pass(), || format!("{name}: flags {:?}", r.flags))?;
    }
    let f = fusion_of(&catalog::lookup("v4_partial").map_err(|err| err.to_string())?)?;
    let b = build_semichar(&f).map_err(|err| err.to_string())?;
    let s = f.base().clone();
    let whole = Subgroup::whole(&s);
    let p1 = Subgroup::new(&s, [0, 1]).map_err(|err| err.to_string())?;
    let p3 = Subgroup::new(&s, [0, 3]).map_err(|err| err.to_string())?;
    let isos = monomorphisms(&s, &p1, &p3);
    check(!isos.is_empty(), || "no isomorphism P1 -> P3".into())?;
    for phi in &isos {
        let phi = phi.with_codomain(&whole).ok_or("codomain")?;
        check(!decide_morphism(&b, &phi).map_err(|err| err.to_string())?, || format!("{phi} accepted"))?;
    }
    Ok(format!("both realized; {} map(s) P1 -> P3 rejected", isos.len()))
}

fn dihedral_and_quaternion() -> Outcome {
    let mut notes = Vec::new();
    for name in ["d8_s4", "q8", "q8_sl23"] {
        let e = catalog::lookup(name).map_err(|err| err.to_string())?;
        let (r, took) = realize(&e)?;
        check(r.flags.all_pass(), || format!("{name}: flags {:?}", r.flags))?;
        check(took < Duration::from_secs(120), || format!("{name}: took {took:?}"))?;
        notes.push(format!("{name} {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn symmetric3() -> FiniteGroup {
    let compose = |a: &Vec<usize>, b: &Vec<usize>| b.iter().map(|&i| a[i]).collect::<Vec<usize>>();
    let gens = vec![vec![1, 2, 0], vec![1, 0, 2]];
    FiniteGroup::generated_by(&[vec![0, 1, 2]], &gens, compose).expect("permutations form a group").0
}

/// Bitmask of `Gamma`-elements fixing each point, counted directly.
fn stabilizer_masks(sq: &DirectSquare, x: &ExplicitBiset) -> Vec<u64> {
    let s = sq.base();
    (0..x.len())
        .map(|p| {
            (0..sq.square().order())
                .filter(|&g| {
                    let (a, b) = sq.decode(g);
                    x.left_act(a, x.right_act(p, s.inv(b))) == p
                })
                .fold(0u64, |m, g| m | (1 << g))
        })
        .collect()
}

fn burnside_oracle() -> Outcome {
    let mut groups: Vec<(String, FiniteGroup)> = vec![("trivial".into(), FiniteGroup::trivial())];
    for e in catalog::catalog().into_iter().filter(|e| e.is_inner() && e.group.order() <= 8) {
        groups.push((e.name.to_string(), (*e.group).clone()));
    }
    // the remaining isomorphism types of order at most 8
    for n in [5, 6, 7] {
        groups.push((format!("c{n}"), FiniteGroup::cyclic(n)));
    }
    groups.push(("s3".into(), symmetric3()));
    let mut comparisons: u64 = 0;
    for (name, g) in &groups {
        let sq = DirectSquare::new(Arc::new(g.clone()));
        let gamma = sq.square().clone();
        let lattice = all_subgroups(sq.base());
        let all_d = all_subgroups(&gamma);
        if gamma.order() <= 16 {
            let brute = common::subgroups(&gamma).len();
            check(brute == all_d.len(), || format!("{name}: {brute} subgroups by brute force, {}", all_d.len()))?;
        }
        let d_masks: Vec<u64> = all_d
            .subgroups()
            .iter()
            .map(|d| d.elements().iter().fold(0u64, |m, &e| m | (1 << e)))
            .collect();
        for (phi, orbit) in all_orbit_types(&sq, &lattice) {
            let z = TwistedDiagonal::new(&sq, &phi);
            let v = VirtualGSet::transitive(gamma.clone(), z.subgroup()).map_err(|err| err.to_string())?;
            let marks = v.marks();
            let stabs = stabilizer_masks(&sq, &orbit);
            for (d, &dm) in all_d.subgroups().iter().zip(&d_masks) {
                let brute = stabs.iter().filter(|&&st| st & dm == dm).count();
                let formula = marks.fix(d);
                check(formula == BigRational::from_integer(brute.into()), || {
                    format!("{name}: orbit {phi}, D = {:?}: formula {formula}, counted {brute}", d.elements())
                })?;
                comparisons += 1;
            }
        }
    }
    Ok(format!("{} groups, {comparisons} comparisons, 100% agreement", groups.len()))
}

fn random_stabilization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut total = 0;
    for e in catalog::catalog() {
        let f = fusion_of(&e)?;
        let sq = DirectSquare::new(f.base().clone());
        let classes = ClassList::twisted_diagonals(&sq, f.lattice());
        let oracle = ProductFusion::new(&f, &sq);
        let s = f.base().order();
        let st = Stabilizer::new(&classes, &oracle, |d| sq.project_right(d).order() < s)
            .map_err(|err| format!("{}: {err}", e.name))?;
        for _ in 0..100 {
            let x0 = st.random_admissible(&mut rng);
            let x = st.run(&x0).map_err(|err| format!("{}: {err}", e.name))?;
            st.check_postconditions(&x0, &x).map_err(|err| format!("{}: {err}", e.name))?;
            total += 1;
        }
    }
    Ok(format!("{total} random starts over 17 fusion systems"))
}

fn built_all() -> Result<Vec<(&'static str, SemicharBiset)>, String> {
    catalog::catalog()
        .into_iter()
        .map(|e| {
            let f = fusion_of(&e)?;
            build_semichar(&f).map(|b| (e.name, b)).map_err(|err| format!("{}: {err}", e.name))
        })
        .collect()
}

fn injective_maps(b: &SemicharBiset) -> Vec<GroupMap> {
    let s = b.fusion().base();
    let whole = Subgroup::whole(s);
    b.fusion()
        .lattice()
        .subgroups()
        .iter()
        .flat_map(|p| monomorphisms(s, p, &whole))
        .collect()
}

fn wreath_cross_validation() -> Outcome {
    let (mut searched, mut counted) = (0, 0);
    for (name, b) in built_all()? {
        let Some(x) = b.explicit() else { continue };
        if x.len() <= DEFAULT_INTERTWINER_BOUND {
            for phi in injective_maps(&b) {
                let decided = decide_morphism(&b, &phi).map_err(|err| err.to_string())?;
                let found = find_intertwiner(&b, &phi, DEFAULT_INTERTWINER_BOUND)
                    .map_err(|err| err.to_string())?;
                check(decided == found.is_some(), || format!("{name}: {phi} marks {decided}, search {}", found.is_some()))?;
                if let Some(g) = found {
                    let pairs: Vec<(usize, usize)> = phi.pairs().collect();
                    check(common::is_intertwiner(x, &g, &pairs), || format!("{name}: bad witness for {phi}"))?;
                }
                searched += 1;
            }
        }
        if x.len() <= 8 {
            let (_, order) = rank_and_order(&b).map_err(|err| err.to_string())?;
            let n = common::count_right_automorphisms_exhaustive(x);
            check(BigUint::from(n) == order, || format!("{name}: enumerated {n}, formula {order}"))?;
            counted += 1;
        }
    }
    Ok(format!("{searched} maps searched, {counted} automorphism groups enumerated"))
}

fn soundness_sweep() -> Outcome {
    let mut accepted = 0;
    for (name, b) in built_all()? {
        let f = b.fusion();
        for p in 0..f.lattice().len() {
            for phi in f.homs_to_base(p) {
                check(decide_morphism(&b, &phi).map_err(|err| err.to_string())?, || format!("{name}: {phi} rejected"))?;
                accepted += 1;
            }
        }
    }
    Ok(format!("{accepted} morphisms of F accepted"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 inner fusion gives the regular biset", inner_identity),
        ("2 V4 in A4", a4_case),
        ("3 non-saturated systems are realized", non_saturated),
        ("4 D8 in S4 and Q8 entries", dihedral_and_quaternion),
        ("5 marks agree with counted fixed points", burnside_oracle),
        ("6 stabilization postconditions on random starts", random_stabilization),
        ("7 intertwiner search and automorphism counts", wreath_cross_validation),
        ("8 every morphism of F is induced", soundness_sweep),
    ];
    let mut failed = 0;
    for (label, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(note) => println!("PASS  {label}: {note} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {label}: {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
