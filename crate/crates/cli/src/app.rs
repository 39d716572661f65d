//! Command-line interface.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use burnside_core::{format_scalar, BisetJson, VirtualBiset};
use clap::{Parser, Subcommand};
use fusion_core::{project_to_fusion, FusionSystem, Fusoid};
use group_core::io::{resolve, GroupFile};
use group_core::{canonical_generators, Elem, Subgroup};
use loop_core::{ev_matrix, iota_matrix, pev_matrix, sigma_matrix, BisetMatrix, LoopFunctor, Twist};
use p_completion::p_complete;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::suites::{self, Scope, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "fusoid", version, about = "Exact computations in the p-local Burnside category of fusion systems")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Directory for cached subgroup lattices (overrides FUSOID_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum GroupsAction {
    /// Catalog names.
    List,
    /// Basic data of a catalog group or group file.
    Show { group: String },
}

#[derive(Debug, clap::Args)]
pub struct SystemArgs {
    /// Catalog name or group file.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
}

impl SystemArgs {
    fn system(&self) -> Result<Arc<FusionSystem>> {
        suites::realized(&self.group, self.p)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
    /// The maps `F(P, Q)`; subgroups are given by generators in the ambient group.
    Homset {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_delimiter = ',')]
        sub: Vec<Elem>,
        #[arg(long, value_delimiter = ',')]
        tosub: Vec<Elem>,
    },
    /// The characteristic idempotent `ω_F`.
    Idempotent {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// `X ⊙ Y` for two biset files.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Loop components, or the loop functor applied to a morphism.
    Loop {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        twisted: bool,
        /// Exponent of the torus `(Z/p^e)^n`; defaults to the least `e` with `p^e ≥ |S|`.
        #[arg(long)]
        e: Option<u32>,
        /// Biset file from the Sylow subgroup of `--group` to that of `--target`.
        #[arg(long)]
        morphism: Option<PathBuf>,
        #[arg(long)]
        target: Option<String>,
        /// Replace the morphism by `ω_E ⊙ X ⊙ ω_F` first.
        #[arg(long)]
        project: bool,
    },
    /// `ev: L†_n F → F`.
    Ev {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        e: Option<u32>,
    },
    /// `pev: L†_{n+1} F → L†_n F`.
    Pev {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        e: Option<u32>,
    },
    /// Permutation of tuple coordinates on `L_n F` or `L†_n F`.
    Sigma {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
        #[arg(long)]
        twisted: bool,
        #[arg(long)]
        e: Option<u32>,
    },
    /// `ι: L†_n L†_m F → L†_{n+m} F`.
    Iota {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        e: Option<u32>,
    },
    /// `p`-completion of a biset between two groups.
    Pcomplete {
        #[arg(long)]
        biset: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Runs a verification suite; exits with 1 if any check fails.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn read_biset(path: &PathBuf) -> Result<VirtualBiset> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let j: BisetJson = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(VirtualBiset::from_json(&j)?)
}

fn write_biset(out: &mut dyn Write, x: &VirtualBiset, json: bool) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&x.to_json())?)?;
        return Ok(());
    }
    writeln!(out, "{} -> {}, {} orbits", x.left().name(), x.right().name(), x.len())?;
    for (k, c) in x.terms() {
        writeln!(out, "  {}  [{:?}, {:?}]", format_scalar(c), k.stab, k.phi)?;
    }
    Ok(())
}

fn write_matrix(out: &mut dyn Write, m: &BisetMatrix, json: bool) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&m.to_json())?)?;
        return Ok(());
    }
    writeln!(out, "rows: {}", m.domain.labels.join(" "))?;
    writeln!(out, "cols: {}", m.codomain.labels.join(" "))?;
    for (&(i, j), v) in m.entries() {
        write!(out, "({}, {}): ", m.domain.labels[i], m.codomain.labels[j])?;
        write_biset(out, v, false)?;
    }
    Ok(())
}

fn twisted(p: u64, e: Option<u32>, n: usize, f: &FusionSystem) -> Result<LoopFunctor> {
    Ok(LoopFunctor::twisted(p, e.unwrap_or_else(|| Twist::minimal_e(p, f.s().order())), n)?)
}

fn to_sylow(f: &FusionSystem, gens: &[Elem]) -> Result<Subgroup> {
    let syl = f.embedding();
    let inside = gens
        .iter()
        .map(|&x| {
            if x as usize >= f.ambient().order() {
                return None;
            }
            syl.to_sub(x)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            let members: Vec<Elem> = (0..f.s().order() as Elem).map(|y| syl.to_ambient(y)).collect();
            CliError::Usage(format!("generators {gens:?} do not lie in the Sylow subgroup {members:?}"))
        })?;
    Ok(Subgroup::generated(f.s(), &inside))
}

/// Runs a command. `Ok(false)` means a verification failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    if let Some(dir) = &cli.cache_dir {
        group_core::cache::set_cache_dir(Some(dir.clone()));
    }
    let json = cli.json;
    match &cli.command {
        Command::Groups { action: GroupsAction::List } => {
            let names = group_core::catalog::names();
            if json {
                writeln!(out, "{}", serde_json::to_string(&names)?)?;
            } else {
                for n in names {
                    writeln!(out, "{n}")?;
                }
            }
        }
        Command::Groups { action: GroupsAction::Show { group } } => {
            let g = resolve(group)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&GroupFile::from_group(&g))?)?;
            } else {
                let classes = g.subgroup_classes()?;
                writeln!(out, "{}: order {}, exponent {}", g.name(), g.order(), g.exponent())?;
                writeln!(out, "abelian: {}", g.is_abelian())?;
                writeln!(out, "subgroup classes: {}", classes.len())?;
                writeln!(out, "digest: {}", g.digest_hex())?;
            }
        }
        Command::Homset { sys, sub, tosub } => {
            let f = sys.system()?;
            let (p, q) = (to_sylow(&f, sub)?, to_sylow(&f, tosub)?);
            let gens = canonical_generators(f.s(), p.members());
            let syl = f.embedding();
            let amb = |xs: &[Elem]| xs.iter().map(|&x| syl.to_ambient(x)).collect::<Vec<_>>();
            let maps: Vec<Vec<Elem>> = f.hom_set(&p, &q).iter().map(|h| amb(&h.images_of(&gens))).collect();
            if json {
                writeln!(out, "{}", json!({ "generators": amb(&gens), "images": maps }))?;
            } else {
                writeln!(out, "{} maps; generators {:?}", maps.len(), amb(&gens))?;
                for m in maps {
                    writeln!(out, "  {m:?}")?;
                }
            }
        }
        Command::Idempotent { sys } => {
            let f = sys.system()?;
            write_biset(out, &*f.omega()?, json)?;
        }
        Command::Compose { left, right } => {
            let (x, y) = (read_biset(left)?, read_biset(right)?);
            write_biset(out, &x.compose(&y)?, json)?;
        }
        Command::Loop { sys, n, twisted: tw, e, morphism: mor, target, project } => {
            let f = sys.system()?;
            let l = if *tw { twisted(sys.p, *e, *n, &f)? } else { LoopFunctor::free(*n) };
            match mor {
                None => {
                    let sp = l.space(&f)?;
                    if json {
                        let comps: Vec<_> = (0..sp.table.len())
                            .map(|i| json!({ "tuple": sp.table.rep(i), "centralizer_order": sp.table.centralizer(i).s().order() }))
                            .collect();
                        writeln!(out, "{}", json!({ "system": f.name(), "components": comps }))?;
                    } else {
                        writeln!(out, "{} components of {}", sp.table.len(), f.name())?;
                        for i in 0..sp.table.len() {
                            writeln!(out, "  {:?}: |C_S| = {}", sp.table.rep(i), sp.table.centralizer(i).s().order())?;
                        }
                    }
                }
                Some(path) => {
                    let h = match target {
                        Some(t) => suites::realized(t, sys.p)?,
                        None => f.clone(),
                    };
                    let x = read_biset(path)?;
                    if **x.left() != **f.s() || **x.right() != **h.s() {
                        return Err(CliError::Usage(format!(
                            "morphism must go from the Sylow subgroup of {} to that of {}",
                            f.ambient().name(),
                            h.ambient().name()
                        )));
                    }
                    let x = x.with_groups(f.s(), h.s());
                    let x = if *project { project_to_fusion(&x, &f, &h)? } else { x };
                    write_matrix(out, &l.apply_biset(&x, &f, &h)?, json)?;
                }
            }
        }
        Command::Ev { sys, n, e } => {
            let f = sys.system()?;
            write_matrix(out, &ev_matrix(&twisted(sys.p, *e, *n, &f)?, &Fusoid::single(&f))?, json)?;
        }
        Command::Pev { sys, n, e } => {
            let f = sys.system()?;
            let e = e.unwrap_or_else(|| Twist::minimal_e(sys.p, f.s().order()));
            let (lower, upper) = (LoopFunctor::twisted(sys.p, e, *n)?, LoopFunctor::twisted(sys.p, e, n + 1)?);
            write_matrix(out, &pev_matrix(&lower, &upper, &Fusoid::single(&f))?, json)?;
        }
        Command::Sigma { sys, perm, twisted: tw, e } => {
            let f = sys.system()?;
            let n = perm.len();
            let l = if *tw { twisted(sys.p, *e, n, &f)? } else { LoopFunctor::free(n) };
            write_matrix(out, &sigma_matrix(&l, &Fusoid::single(&f), perm)?, json)?;
        }
        Command::Iota { sys, n, m, e } => {
            let f = sys.system()?;
            let e = e.unwrap_or_else(|| Twist::minimal_e(sys.p, f.s().order()));
            let inner = LoopFunctor::twisted(sys.p, e, *m)?;
            let outer = LoopFunctor::twisted(sys.p, e, *n)?;
            let total = LoopFunctor::twisted(sys.p, e, n + m)?;
            write_matrix(out, &iota_matrix(&inner, &outer, &total, &Fusoid::single(&f))?, json)?;
        }
        Command::Pcomplete { biset, p } => {
            let x = read_biset(biset)?;
            let g = FusionSystem::realized(x.left(), *p)?;
            let h = FusionSystem::realized(x.right(), *p)?;
            write_biset(out, &p_complete(&x, &g, &h)?, json)?;
        }
        Command::Verify { suite, group, p, n } => {
            let scope = Scope { group: group.clone(), p: *p, n: *n, seed: cli.seed };
            let report = suites::run(suite, &scope)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(out, "{}", report.summary())?;
                writeln!(out, "corpus: {}", report.corpus)?;
                for c in report.failures() {
                    writeln!(out, "  FAIL {} ({}): {}", c.id, c.anchor, c.counterexample.as_ref().map_or(String::new(), |v| v.to_string()))?;
                }
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

