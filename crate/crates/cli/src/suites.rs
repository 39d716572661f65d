//! Verification suites. Each suite checks one family of identities at zero
//! tolerance and reports every check, with a counterexample on failure.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use burnside_core::explicit::ExplicitBiset;
use burnside_core::linalg::solve_unique;
use burnside_core::sample::{random_actual, random_orbit, random_virtual};
use burnside_core::{all_pairs, frac, group_as_biset, int, orbit_mark, OrbitKey, Scalar, VirtualBiset};
use fusion_core::{check_characteristic, is_fusion_preserving, project_to_fusion, FusionSystem, Fusoid};
use group_core::catalog::lookup;
use group_core::{injective_homs, Embedding, Group, Hom, Subgroup};
use loop_core::{
    check_naturality, ev_matrix, extend_natural_transformation, iota_matrix, morphism, pev_matrix,
    representative_change, sigma_matrix, torus_matrix, BisetMatrix, IdentityFunctor, LoopFunctor, RepPolicy, Twist,
};
use num_traits::{One, Zero};
use p_completion::{verify_commutation, Completion, InvertibleFusionBiset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::report::{Checks, SuiteReport};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Restricts a suite to one system or loop degree where that makes sense.
#[derive(Clone, Debug)]
pub struct Scope {
    pub group: Option<String>,
    pub p: Option<u64>,
    pub n: Option<usize>,
    pub seed: u64,
}

impl Default for Scope {
    fn default() -> Scope {
        Scope { group: None, p: None, n: None, seed: DEFAULT_SEED }
    }
}

pub const SUITES: [&str; 10] = [
    "composition",
    "idempotents",
    "centralizer",
    "preserving",
    "retract",
    "interchange",
    "functor",
    "natural",
    "pcompletion",
    "representatives",
];

pub fn run(name: &str, scope: &Scope) -> Result<SuiteReport> {
    match name {
        "composition" => Ok(composition(scope)),
        "idempotents" => idempotents(scope),
        "centralizer" => centralizer(scope),
        "preserving" => preserving(scope),
        "retract" => retract(scope),
        "interchange" => interchange(scope),
        "functor" => functor(scope),
        "natural" => natural(scope),
        "pcompletion" => pcompletion(scope),
        "representatives" => representatives(scope),
        other => Err(CliError::Usage(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

/// The suite checking acceptance criterion `k` (1-based).
pub fn criterion(k: usize, scope: &Scope) -> Result<SuiteReport> {
    let name = SUITES.get(k.wrapping_sub(1)).ok_or_else(|| CliError::Usage(format!("no criterion {k}")))?;
    run(name, scope)
}

pub fn realized(name: &str, p: u64) -> Result<Arc<FusionSystem>> {
    Ok(FusionSystem::realized(&group_core::io::resolve(name)?, p)?)
}

fn trivial(name: &str) -> Result<Arc<FusionSystem>> {
    Ok(FusionSystem::trivial(&lookup(name)?, 2)?)
}

/// `F_S(S)` for `C4, V4, D8, Q8` and the Sylow 2-systems of `A4, S4, SL(2,3)`.
pub fn corpus_p2() -> Result<Vec<Arc<FusionSystem>>> {
    let mut v = ["C4", "V4", "D8", "Q8"].iter().map(|s| trivial(s)).collect::<Result<Vec<_>>>()?;
    for g in ["A4", "S4", "SL(2,3)"] {
        v.push(realized(g, 2)?);
    }
    Ok(v)
}

/// The Sylow 3-systems of `S3` and `A4`.
pub fn corpus_p3() -> Result<Vec<Arc<FusionSystem>>> {
    ["S3", "A4"].iter().map(|g| realized(g, 3)).collect()
}

fn corpus() -> Result<Vec<Arc<FusionSystem>>> {
    let mut v = corpus_p2()?;
    v.extend(corpus_p3()?);
    Ok(v)
}

fn scoped(scope: &Scope, default: impl FnOnce() -> Result<Vec<Arc<FusionSystem>>>) -> Result<Vec<Arc<FusionSystem>>> {
    match &scope.group {
        Some(g) => Ok(vec![realized(g, scope.p.unwrap_or(2))?]),
        None => default(),
    }
}

fn describe(systems: &[Arc<FusionSystem>]) -> String {
    systems.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(", ")
}

fn find<'a>(systems: &'a [Arc<FusionSystem>], name: &str) -> &'a Arc<FusionSystem> {
    systems.iter().find(|f| f.name().contains(name)).expect("corpus member")
}

fn err_payload(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

/// Runs a fallible check; errors count as failures.
fn attempt(checks: &mut Checks, id: String, anchor: &str, inputs: &str, f: impl FnOnce() -> Result<Option<Value>>) {
    let c = f().unwrap_or_else(|e| Some(err_payload(e)));
    checks.record(id, anchor, inputs, c);
}

fn biset_diff(lhs: &VirtualBiset, rhs: &VirtualBiset) -> Option<Value> {
    (lhs != rhs).then(|| json!({ "lhs": lhs.to_json_value(), "rhs": rhs.to_json_value() }))
}

fn matrix_diff(lhs: &BisetMatrix, rhs: &BisetMatrix) -> Option<Value> {
    lhs.first_difference(rhs).map(|(i, j)| {
        json!({
            "row": lhs.domain.labels[i],
            "col": lhs.codomain.labels[j],
            "lhs": lhs.entry(i, j).to_json_value(),
            "rhs": rhs.entry(i, j).to_json_value(),
        })
    })
}

/// Least `e` with `p^e` at least every element order of the given groups.
fn exponent_e(p: u64, groups: &[&Arc<Group>]) -> u32 {
    let m = groups.iter().map(|g| g.exponent()).max().unwrap_or(1);
    Twist::minimal_e(p, m as usize)
}

/// Double coset composition against composing the sets and decomposing
/// into orbits.
pub fn composition(scope: &Scope) -> SuiteReport {
    let start = Instant::now();
    let names = ["C2", "C3", "C4", "V4", "S3", "C6", "D8", "Q8", "C8", "D10", "A4", "D12", "C12", "D16", "C16"];
    let groups: Vec<Arc<Group>> = names.iter().map(|n| lookup(n).expect("catalog group")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(scope.seed);
    let rounds = scope.n.unwrap_or(200);
    let mut checks = Checks::default();
    for i in 0..rounds {
        let (r, s, t) = (groups.choose(&mut rng).unwrap(), groups.choose(&mut rng).unwrap(), groups.choose(&mut rng).unwrap());
        let x = random_actual(&mut rng, r, s, 2);
        let y = random_actual(&mut rng, s, t, 2);
        let inputs = format!("{} {}", x.to_json_value(), y.to_json_value());
        let v = x.odot(&y);
        let ok = match (ExplicitBiset::from_biset(&x), ExplicitBiset::from_biset(&y)) {
            (Some(ex), Some(ey)) => ex.compose(&ey).agrees_with(&v),
            _ => false,
        };
        checks.expect(format!("pair-{i:03}"), "double coset formula", &inputs, ok, || {
            json!({ "x": x.to_json_value(), "y": y.to_json_value(), "double_coset": v.to_json_value() })
        });
    }
    checks.into_report("composition", format!("{rounds} random pairs over groups of order at most 16"), start)
}

/// `ω_F` found as the unique solution of one linear system: marks equal
/// across each `(F,F)`-class of pairs, coefficient sums `[P = S]`.
pub fn omega_by_marks(f: &FusionSystem) -> Option<VirtualBiset> {
    let s = f.s();
    let keys: Vec<OrbitKey> = all_pairs(s, s, true).into_iter().filter(|k| f.contains_hom(&k.hom(s, s))).collect();
    let mut classes: BTreeMap<Vec<Subgroup>, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        classes.entry(f.class_of(&k.stab_subgroup(s))).or_default().push(i);
    }
    let mark =
        |row: &OrbitKey, col: &OrbitKey| Scalar::from_integer(orbit_mark(s, s, col, &row.stab_subgroup(s), &row.hom(s, s)).into());
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (class, idx) in &classes {
        for w in idx.windows(2) {
            a.push(keys.iter().map(|c| mark(&keys[w[0]], c) - mark(&keys[w[1]], c)).collect());
            b.push(Scalar::zero());
        }
        a.push((0..keys.len()).map(|j| if idx.contains(&j) { Scalar::one() } else { Scalar::zero() }).collect());
        b.push(if class[0].order() == s.order() { Scalar::one() } else { Scalar::zero() });
    }
    let c = solve_unique(&a, &b)?;
    let mut x = VirtualBiset::zero(s, s);
    for (k, v) in keys.into_iter().zip(c) {
        x.add_term(k, v);
    }
    Some(x)
}

pub fn idempotents(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let systems = scoped(scope, corpus)?;
    let mut checks = Checks::default();
    for f in &systems {
        let name = f.name();
        attempt(&mut checks, format!("{name}-characteristic"), "ω_F is characteristic", name, || {
            let w = f.omega()?;
            let r = check_characteristic(f, &w);
            Ok((!r.all()).then(|| json!({ "failed": r.failures(), "omega": w.to_json_value() })))
        });
        attempt(&mut checks, format!("{name}-idempotent"), "ω_F ⊙ ω_F = ω_F", name, || {
            let w = f.omega()?;
            Ok(biset_diff(&w.odot(&w), &w))
        });
        attempt(&mut checks, format!("{name}-augmentation"), "ε(ω_F)/|S| = 1", name, || {
            let w = f.omega()?;
            let ratio = w.augmentation() / Scalar::from_integer(f.s().order().into());
            Ok((!ratio.is_one()).then(|| json!({ "ratio": ratio.to_string() })))
        });
        attempt(&mut checks, format!("{name}-marks"), "ω_F solves the mark-constancy system", name, || {
            let w = f.omega()?;
            Ok(match omega_by_marks(f) {
                Some(x) => biset_diff(&w, &x),
                None => Some(json!({ "error": "the mark system has no unique solution" })),
            })
        });
    }
    if scope.group.is_none() {
        let f = realized("A4", 2)?;
        attempt(&mut checks, "A4-formula".into(), "ω = (1/3) Σ [V4, φ], φ ∈ Aut_F(V4)", "A4", || {
            let s = f.s();
            let v4 = Subgroup::whole(s);
            let mut want = VirtualBiset::zero(s, s);
            for h in f.hom_set(&v4, &v4).iter() {
                want.add_assign_scaled(&VirtualBiset::transitive(s, s, &v4, h), &frac(1, 3));
            }
            Ok(biset_diff(&*f.omega()?, &want))
        });
    }
    Ok(checks.into_report("idempotents", describe(&systems), start))
}

/// For central `a`, every orbit `[P, φ]` of `ω_F` has `a ∈ P` and `φ(a) = a`.
pub fn centralizer(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let f = match &scope.group {
        Some(g) => realized(g, scope.p.unwrap_or(2))?,
        None => realized("SL(2,3)", 2)?,
    };
    let s = f.s();
    let centre: Vec<_> = s.elements().filter(|&z| z != 0 && s.elements().all(|x| s.mul(x, z) == s.mul(z, x))).collect();
    // central elements fixed by all of F
    let whole = Subgroup::whole(s);
    let autos = f.hom_set(&whole, &whole);
    let fixed: Vec<_> = centre.into_iter().filter(|&z| autos.iter().all(|h| h.apply(z) == z)).collect();
    let w = f.omega()?;
    let mut checks = Checks::default();
    for &a in &fixed {
        for (i, k) in w.terms().keys().enumerate() {
            let phi = k.hom(s, s);
            let ok = k.stab.contains(&a) && phi.apply(a) == a;
            checks.expect(format!("a{a}-orbit-{i:03}"), "ω_{C_F(a)} orbits contain a and fix it", &format!("{} {a}", f.name()), ok, || {
                json!({ "a": a, "stab": k.stab, "phi": k.phi })
            });
        }
    }
    if fixed.is_empty() {
        checks.record("centre", "ω_{C_F(a)} orbits contain a and fix it", f.name(), Some(json!({ "error": "no F-central element" })));
    }
    Ok(checks.into_report("centralizer", f.name().to_string(), start))
}

/// Every injective map between the corpus Sylow groups, with the verdict of
/// both criteria (which [`is_fusion_preserving`] requires to agree).
pub fn preserving_maps(systems: &[Arc<FusionSystem>]) -> Vec<(usize, usize, Hom, Result<bool>)> {
    let mut out = Vec::new();
    for (i, e) in systems.iter().enumerate() {
        for (j, f) in systems.iter().enumerate() {
            if e.prime() != f.prime() || e.s().order() > 8 || f.s().order() > 8 {
                continue;
            }
            for phi in injective_homs(e.s(), &Subgroup::whole(e.s()), f.s()) {
                let r = is_fusion_preserving(&phi, e, f).map_err(CliError::from);
                out.push((i, j, phi, r));
            }
        }
    }
    out
}

pub fn preserving(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let systems = scoped(scope, corpus_p2)?;
    let mut checks = Checks::default();
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, j, phi, r) in preserving_maps(&systems) {
        let c = counts.entry((i, j)).or_default();
        let id = format!("{}-{}-{:03}", systems[i].name(), systems[j].name(), *c);
        *c += 1;
        let inputs = format!("{} {} {:?}", systems[i].name(), systems[j].name(), phi.images_of(systems[i].s().elements().collect::<Vec<_>>().as_slice()));
        checks.record(id, "direct criterion = idempotent criterion", &inputs, r.err().map(err_payload));
    }
    Ok(checks.into_report("preserving", describe(&systems), start))
}

fn functors(p: u64, n: usize, f: &Arc<FusionSystem>) -> Result<Vec<LoopFunctor>> {
    Ok(vec![LoopFunctor::free(n), LoopFunctor::twisted(p, Twist::minimal_e(p, f.s().order()), n)?])
}

fn label(l: &LoopFunctor) -> String {
    match l.twist() {
        Some(t) => format!("L†{}(e={})", l.n(), t.e),
        None => format!("L{}", l.n()),
    }
}

pub fn retract(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let systems = scoped(scope, corpus)?;
    let mut checks = Checks::default();
    for f in &systems {
        let mut degrees = vec![scope.n.unwrap_or(1)];
        if scope.n.is_none() && scope.group.is_none() && f.name() == "F_2(A4)" {
            degrees.push(2);
        }
        for n in degrees {
            for l in functors(f.prime(), n, f)? {
                let inputs = format!("{} {}", f.name(), label(&l));
                attempt(&mut checks, format!("{}-{}-TI", f.name(), label(&l)), "T_F ⊙ I_F = id", &inputs, || {
                    Ok(matrix_diff(&l.matrix_t(f)?.compose(&l.matrix_i(f)?)?, &l.identity(f)?))
                });
                attempt(&mut checks, format!("{}-{}-IT", f.name(), label(&l)), "I_F ⊙ T_F = L(ω_F)", &inputs, || {
                    let lw = l.group_matrix(&*f.omega()?, f.prime())?;
                    Ok(matrix_diff(&l.matrix_i(f)?.compose(&l.matrix_t(f)?)?, &lw))
                });
            }
        }
    }
    Ok(checks.into_report("retract", describe(&systems), start))
}

pub fn interchange(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let systems = scoped(scope, || Ok(vec![realized("A4", 2)?, realized("S4", 2)?]))?;
    let n = scope.n.unwrap_or(1);
    let mut checks = Checks::default();
    for f in &systems {
        let p = f.prime();
        let free = LoopFunctor::free(n);
        let tw = LoopFunctor::twisted(p, Twist::minimal_e(p, f.s().order()), n)?;
        let name = f.name();
        let mats = || -> Result<(BisetMatrix, BisetMatrix)> {
            let w = f.omega()?;
            let dagger = tw.group_matrix(&w, p)?;
            let plain = free.group_matrix(&w, p)?;
            let a_plain = torus_matrix(tw.twist(), &plain, &dagger.domain, &dagger.codomain)?;
            Ok((dagger, a_plain))
        };
        attempt(&mut checks, format!("{name}-i"), "(A × L(ω)) ⊙ L†(ω) = L†(ω)", name, || {
            let (d, a) = mats()?;
            Ok(matrix_diff(&a.compose(&d)?, &d))
        });
        attempt(&mut checks, format!("{name}-ii"), "L†(ω) ⊙ (A × L(ω)) = A × L(ω)", name, || {
            let (d, a) = mats()?;
            Ok(matrix_diff(&d.compose(&a)?, &a))
        });
    }
    Ok(checks.into_report("interchange", format!("{}, n = {n}, minimal e", describe(&systems)), start))
}

fn random_stable<R: Rng>(rng: &mut R, e: &Arc<FusionSystem>, f: &Arc<FusionSystem>) -> Result<VirtualBiset> {
    let x = random_virtual(rng, e.s(), f.s(), 3, e.prime());
    Ok(project_to_fusion(&x, e, f)?)
}

pub fn functor(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let systems = scoped(scope, corpus_p2)?;
    let p = systems[0].prime();
    let n = scope.n.unwrap_or(1);
    let e = systems.iter().map(|f| Twist::minimal_e(p, f.s().order())).max().unwrap_or(1);
    let ls = [LoopFunctor::free(n), LoopFunctor::twisted(p, e, n)?];
    let mut rng = ChaCha8Rng::seed_from_u64(scope.seed);
    let mut checks = Checks::default();
    for f in &systems {
        for l in &ls {
            let inputs = format!("{} {}", f.name(), label(l));
            attempt(&mut checks, format!("identity-{}-{}", f.name(), label(l)), "L(ω_F) = id", &inputs, || {
                Ok(matrix_diff(&l.apply_biset(&*f.omega()?, f, f)?, &l.identity(f)?))
            });
        }
    }
    for c in 0..12 {
        let idx: Vec<usize> = (0..3).map(|_| rng.gen_range(0..systems.len())).collect();
        let (e, f, g) = (&systems[idx[0]], &systems[idx[1]], &systems[idx[2]]);
        let x = random_stable(&mut rng, e, f)?;
        let y = random_stable(&mut rng, f, g)?;
        let inputs = format!("{} {}", x.to_json_value(), y.to_json_value());
        for l in &ls {
            attempt(&mut checks, format!("compose-{c:02}-{}", label(l)), "L(X ⊙ Y) = L(X) ⊙ L(Y)", &inputs, || {
                let lhs = l.apply_biset(&x.odot(&y), e, g)?;
                let rhs = l.apply_biset(&x, e, f)?.compose(&l.apply_biset(&y, f, g)?)?;
                Ok(matrix_diff(&lhs, &rhs))
            });
        }
    }
    let (free, tw) = (&ls[0], &ls[1]);
    for (k, (i, j, phi, r)) in preserving_maps(&systems).into_iter().enumerate() {
        if !matches!(r, Ok(true)) {
            continue;
        }
        let (e, f) = (&systems[i], &systems[j]);
        let inputs = format!("{} {} {}", e.name(), f.name(), k);
        attempt(&mut checks, format!("forward-{k:03}"), "L†([R, φ]) = A × L([R, φ])", &inputs, || {
            let x = e.omega()?.odot(&VirtualBiset::from_hom(e.s(), f.s(), &phi).odot(&*f.omega()?));
            let dagger = tw.apply_biset(&x, e, f)?;
            let plain = free.apply_biset(&x, e, f)?;
            Ok(matrix_diff(&dagger, &torus_matrix(tw.twist(), &plain, &dagger.domain, &dagger.codomain)?))
        });
    }
    Ok(checks.into_report("functor", describe(&systems), start))
}

pub fn natural(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let c = scoped(scope, corpus_p2)?;
    let p = c[0].prime();
    let (pairs, iota_pairs) = if scope.group.is_some() {
        (vec![(c[0].clone(), c[0].clone())], vec![(c[0].clone(), c[0].clone())])
    } else {
        let named = |v: &[(&str, &str)]| v.iter().map(|(a, b)| (find(&c, a).clone(), find(&c, b).clone())).collect::<Vec<_>>();
        (
            named(&[("A4", "S4"), ("S4", "A4"), ("V4", "A4"), ("A4", "A4"), ("Q8", "SL"), ("D8", "C4")]),
            named(&[("A4", "A4"), ("V4", "A4"), ("A4", "C4")]),
        )
    };
    // one torus for all of degree one; degree two only needs the exponents
    let e1 = c.iter().map(|f| Twist::minimal_e(p, f.s().order())).max().unwrap_or(1);
    let small = |e: &Arc<FusionSystem>, f: &Arc<FusionSystem>| e.s().order() * f.s().order() <= 32;
    let mut rng = ChaCha8Rng::seed_from_u64(scope.seed);
    let mut checks = Checks::default();
    let single = Fusoid::single;
    for (k, (e, f)) in pairs.iter().enumerate() {
        let x = morphism(&random_stable(&mut rng, e, f)?, e, f);
        let inputs = format!("{} {} {}", e.name(), f.name(), x.entry(0, 0).to_json_value());
        let pe = exponent_e(p, &[e.s(), f.s()]);
        for n in 1..=2 {
            if n == 2 && !small(e, f) {
                continue;
            }
            let l = LoopFunctor::twisted(p, if n == 1 { e1 } else { pe }, n)?;
            attempt(&mut checks, format!("ev-{k}-n{n}"), "L†(X) ⊙ ev_F = ev_E ⊙ X", &inputs, || {
                let r = check_naturality(&l, &IdentityFunctor, &ev_matrix(&l, &single(e))?, &ev_matrix(&l, &single(f))?, &x);
                Ok(r.err().map(err_payload))
            });
        }
        for n in 0..=1 {
            if n == 1 && !small(e, f) {
                continue;
            }
            let q = if n == 0 { e1 } else { pe };
            let (lower, upper) = (LoopFunctor::twisted(p, q, n)?, LoopFunctor::twisted(p, q, n + 1)?);
            attempt(&mut checks, format!("pev-{k}-n{n}"), "L†_{n+1}(X) ⊙ pev_F = pev_E ⊙ L†_n(X)", &inputs, || {
                let r = check_naturality(
                    &upper,
                    &lower,
                    &pev_matrix(&lower, &upper, &single(e))?,
                    &pev_matrix(&lower, &upper, &single(f))?,
                    &x,
                );
                Ok(r.err().map(err_payload))
            });
        }
        if small(e, f) {
            for l in [LoopFunctor::free(2), LoopFunctor::twisted(p, pe, 2)?] {
                for perm in [[0usize, 1], [1, 0]] {
                    attempt(&mut checks, format!("sigma-{k}-{}-{}{}", label(&l), perm[0], perm[1]), "σ_E ⊙ L(X) = L(X) ⊙ σ_F", &inputs, || {
                        let r = check_naturality(&l, &l, &sigma_matrix(&l, &single(e), &perm)?, &sigma_matrix(&l, &single(f), &perm)?, &x);
                        Ok(r.err().map(err_payload))
                    });
                }
            }
        }
    }
    for (k, (e, f)) in iota_pairs.iter().enumerate() {
        let x = morphism(&random_stable(&mut rng, e, f)?, e, f);
        let inputs = format!("{} {} {}", e.name(), f.name(), x.entry(0, 0).to_json_value());
        let pe = exponent_e(p, &[e.s(), f.s()]);
        attempt(&mut checks, format!("iota-{k}"), "ι_E ⊙ L†_1(L†_1(X)) = L†_2(X) ⊙ ι_F", &inputs, || {
            let (inner, outer, total) = (LoopFunctor::twisted(p, pe, 1)?, LoopFunctor::twisted(p, pe, 1)?, LoopFunctor::twisted(p, pe, 2)?);
            let ie = iota_matrix(&inner, &outer, &total, &single(e))?;
            let i_f = iota_matrix(&inner, &outer, &total, &single(f))?;
            let lhs = ie.compose(&outer.apply(&inner.apply(&x)?)?)?;
            let rhs = total.apply(&x)?.compose(&i_f)?;
            Ok(matrix_diff(&lhs, &rhs))
        });
    }
    for f in &c {
        attempt(&mut checks, format!("extend-ev-{}", f.name()), "ev extends from F_S(S) by ω-conjugation", f.name(), || {
            let l = LoopFunctor::twisted(p, e1, 1)?;
            let s = l.underlying(f)?;
            let ext = extend_natural_transformation(&l, &IdentityFunctor, &ev_matrix(&l, &single(&s))?, f, &s)?;
            Ok(matrix_diff(&ext, &ev_matrix(&l, &single(f))?))
        });
    }
    Ok(checks.into_report("natural", format!("pairs among {}", describe(&c)), start))
}

fn inclusion_biset(g: &Arc<Group>, h: &Arc<Group>, p: &Subgroup) -> Result<VirtualBiset> {
    let phi = injective_homs(g, p, h).into_iter().next().ok_or_else(|| CliError::Usage("no embedding".into()))?;
    Ok(VirtualBiset::transitive(g, h, p, &phi))
}

fn random_free<R: Rng>(rng: &mut R, g: &Arc<Group>, h: &Arc<Group>) -> VirtualBiset {
    let mut x = VirtualBiset::zero(g, h);
    for _ in 0..rng.gen_range(1..=3) {
        if let Some(o) = random_orbit(rng, g, h) {
            x.add_assign_scaled(&o, &int(rng.gen_range(-2..=2)));
        }
    }
    x
}

pub fn pcompletion(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let p = scope.p.unwrap_or(2);
    let n = scope.n.unwrap_or(1);
    let names = if p == 2 { vec!["A4", "S4", "SL(2,3)"] } else { vec!["S3", "A4"] };
    let systems = names.iter().map(|g| realized(g, p)).collect::<Result<Vec<_>>>()?;
    let completion = Completion::new();
    let mut checks = Checks::default();
    for f in &systems {
        attempt(&mut checks, format!("inverse-{}", f.name()), "H ⊙ H⁻¹ = H⁻¹ ⊙ H = ω_{F_H}", f.name(), || {
            let h = InvertibleFusionBiset::of_ambient(f)?;
            let w = f.omega()?;
            Ok(biset_diff(&h.base.odot(&h.inverse), &w).or_else(|| biset_diff(&h.inverse.odot(&h.base), &w)))
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(scope.seed);
    for (i, g) in systems.iter().enumerate() {
        for (j, h) in systems.iter().enumerate() {
            for (k, m) in systems.iter().enumerate() {
                let x = random_free(&mut rng, g.ambient(), h.ambient());
                let y = random_free(&mut rng, h.ambient(), m.ambient());
                let inputs = format!("{} {}", x.to_json_value(), y.to_json_value());
                attempt(&mut checks, format!("compose-{i}{j}{k}"), "(X ⊙ Y)^ = X^ ⊙ Y^", &inputs, || {
                    let lhs = completion.complete(&x.odot(&y), g, m)?;
                    let rhs = completion.complete(&x, g, h)?.odot(&completion.complete(&y, h, m)?);
                    Ok(biset_diff(&lhs, &rhs))
                });
            }
        }
    }
    let e = if p == 2 { 3 } else { 1 };
    let l = LoopFunctor::twisted(p, e, n)?;
    let mut cases: Vec<(String, VirtualBiset, Arc<FusionSystem>, Arc<FusionSystem>)> = Vec::new();
    if p == 2 {
        let (a4, s4) = (systems[0].clone(), systems[1].clone());
        let ga = a4.ambient().clone();
        let whole = Embedding::new(&ga, &Subgroup::whole(&ga), ga.name());
        cases.push(("id_A4".into(), VirtualBiset::identity(&ga), a4.clone(), a4.clone()));
        cases.push(("A4_as_biset".into(), group_as_biset(&ga, &whole, &whole), a4.clone(), a4.clone()));
        let v4 = ga.sylow(2);
        cases.push(("V4_incl_A4_S4".into(), inclusion_biset(&ga, s4.ambient(), &v4)?, a4, s4));
    } else {
        let (s3, a4) = (systems[0].clone(), systems[1].clone());
        cases.push(("id_S3".into(), VirtualBiset::identity(s3.ambient()), s3.clone(), s3.clone()));
        let c3 = s3.ambient().sylow(3);
        cases.push(("C3_incl_S3_A4".into(), inclusion_biset(s3.ambient(), a4.ambient(), &c3)?, s3, a4));
    }
    for (name, x, g, h) in &cases {
        let inputs = format!("{name} {}", x.to_json_value());
        attempt(&mut checks, format!("commute-{name}"), "(L†_{n,p} X)^ = L†_n(X^)", &inputs, || {
            let r = verify_commutation(&l, &completion, x, g, h)?;
            Ok(r.first_difference.as_ref().map(|(row, col)| {
                let (i, j) = r.lhs.first_difference(&r.rhs).expect("a difference");
                json!({ "row": row, "col": col, "lhs": r.lhs.entry(i, j).to_json_value(), "rhs": r.rhs.entry(i, j).to_json_value() })
            }))
        });
    }
    Ok(checks.into_report("pcompletion", format!("{}, n = {n}, e = {e}", describe(&systems)), start))
}

pub fn representatives(scope: &Scope) -> Result<SuiteReport> {
    let start = Instant::now();
    let f = match &scope.group {
        Some(g) => realized(g, scope.p.unwrap_or(2))?,
        None => realized("A4", 2)?,
    };
    let p = f.prime();
    let n = scope.n.unwrap_or(1);
    let e = Twist::minimal_e(p, f.s().order());
    let mut rng = ChaCha8Rng::seed_from_u64(scope.seed);
    let mut samples = vec![(*f.omega()?).clone()];
    for _ in 0..3 {
        samples.push(random_stable(&mut rng, &f, &f)?);
    }
    let mut checks = Checks::default();
    for (least, greatest) in [
        (LoopFunctor::free(n), LoopFunctor::free(n).with_policy(RepPolicy::Greatest)),
        (LoopFunctor::twisted(p, e, n)?, LoopFunctor::twisted(p, e, n)?.with_policy(RepPolicy::Greatest)),
    ] {
        let tag = label(&least);
        let name = f.name();
        attempt(&mut checks, format!("{tag}-inverse"), "Z ⊙ Z' = id", name, || {
            let z = representative_change(&least, &greatest, &f)?;
            let back = representative_change(&greatest, &least, &f)?;
            Ok(matrix_diff(&z.compose(&back)?, &least.identity(&f)?).or(matrix_diff(&back.compose(&z)?, &greatest.identity(&f)?)))
        });
        attempt(&mut checks, format!("{tag}-T"), "T = Z ⊙ T'", name, || {
            let z = representative_change(&least, &greatest, &f)?;
            Ok(matrix_diff(&least.matrix_t(&f)?, &z.compose(&greatest.matrix_t(&f)?)?))
        });
        attempt(&mut checks, format!("{tag}-I"), "I ⊙ Z = I'", name, || {
            let z = representative_change(&least, &greatest, &f)?;
            Ok(matrix_diff(&least.matrix_i(&f)?.compose(&z)?, &greatest.matrix_i(&f)?))
        });
        for (k, x) in samples.iter().enumerate() {
            attempt(&mut checks, format!("{tag}-X{k}"), "L(X) ⊙ Z = Z ⊙ L'(X)", &x.to_json_value().to_string(), || {
                let z = representative_change(&least, &greatest, &f)?;
                let lhs = least.apply_biset(x, &f, &f)?.compose(&z)?;
                let rhs = z.compose(&greatest.apply_biset(x, &f, &f)?)?;
                Ok(matrix_diff(&lhs, &rhs))
            });
        }
    }
    Ok(checks.into_report("representatives", format!("{}, n = {n}", f.name()), start))
}
