//! Subcommands. Each returns a [`RunReport`]; printing and exit codes are
//! left to the binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use surfgrp::cosetenum::{abelianization_invariants, reidemeister_schreier, todd_coxeter_by_hom};
use surfgrp::diamond::{
    check_index_conditions, check_modl_conditions, constrained_epi_search, minimal_r, obstruction_scan, Ambient,
};
use surfgrp::embedding::{genus_bound, BruteOutcome, Fsep, PigeonholeOptions, Want};
use surfgrp::fingroup::named::trivial;
use surfgrp::fingroup::{all_actions, FiniteGroup, GroupHom, Limits, SemidirectProduct};
use surfgrp::surface::{count_representations, enumerate_representations, joint_image, surface_label};
use surfgrp::wreath::{induce_problem, InducedProblem, NData};
use surfgrp::{Error, GroupAction, Subgroup, SurfaceAssignment, SurfacePresentation};

use crate::error::{CliError, CliResult};
use crate::expr::{parse_word_set, parse_words, ActionExpr, GroupExpr};
use crate::instance::InstanceFile;
use crate::report::{RunReport, Table, Verdict};
use crate::sample::{describe_action, random_fsep};

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub limits: Limits,
    pub seed: u64,
    pub timings: bool,
}

struct Clock {
    on: bool,
    start: Instant,
    marks: BTreeMap<String, f64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock { on, start: Instant::now(), marks: BTreeMap::new() }
    }

    fn mark(&mut self, what: &str) {
        if self.on {
            self.marks.insert(what.to_string(), self.start.elapsed().as_secs_f64());
            self.start = Instant::now();
        }
    }

    fn finish(self, report: &mut RunReport) {
        if self.on {
            report.timings = Some(self.marks);
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a split embedding problem for a surface group.
    SolveFsep(SolveArgs),
    /// Coset table and genus of a finite-index subgroup.
    Genus(SubgroupArgs),
    /// Reidemeister-Schreier presentation of a finite-index subgroup.
    Rs(SubgroupArgs),
    /// Check the diamond conditions of an instance file.
    Diamond(InstanceArgs),
    /// Build the induced problem of an instance file and restrict its solutions.
    Induce(InstanceArgs),
    /// Count homomorphisms from a surface group.
    CountHoms(CountArgs),
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Pigeonhole,
    Both,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub genus: usize,
    /// Quotient group `B`.
    #[arg(long = "B")]
    pub b: String,
    /// Kernel group `A`.
    #[arg(long = "A")]
    pub a: String,
    /// Action of `B` on `A`.
    #[arg(long, default_value = "trivial")]
    pub action: String,
    /// Images of the surface generators, e.g. `x1=g1, y2=g1^2`; defaults to
    /// sending `x_i` to the i-th generator of B.
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Also count all proper solutions.
    #[arg(long)]
    pub count: bool,
}

#[derive(Debug, Args)]
pub struct SubgroupArgs {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub target: String,
    /// `kernel`, `stabilizer`, `whole` or `{word, ...}`.
    #[arg(long, default_value = "kernel")]
    pub subgroup: String,
    /// Defaults to `x_i = g_i`, everything else trivial.
    #[arg(long)]
    pub mu: Option<String>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub target: String,
    /// Count epimorphisms only.
    #[arg(long)]
    pub surjective: bool,
    /// Cross-check the count by listing every homomorphism.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Solvability of the canonical problem per genus, below and at the bound.
    GenusFrontier(FrontierArgs),
    /// Brute force against the pigeonhole solver on random problems.
    OracleAgreement(OracleArgs),
}

#[derive(Debug, Args)]
pub struct FrontierArgs {
    #[arg(long = "A")]
    pub a: String,
    #[arg(long = "B")]
    pub b: String,
    /// Defaults to every action.
    #[arg(long)]
    pub action: Option<String>,
    #[arg(long)]
    pub max_genus: usize,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 12)]
    pub max_order: usize,
    #[arg(long, default_value_t = 4)]
    pub max_genus: usize,
}

pub fn run(cmd: &Command, ctx: &Ctx) -> CliResult<RunReport> {
    match cmd {
        Command::SolveFsep(a) => solve_fsep(a, ctx),
        Command::Genus(a) => subgroup_report("genus", a, ctx),
        Command::Rs(a) => subgroup_report("rs", a, ctx),
        Command::Diamond(a) => diamond(&a.instance, ctx),
        Command::Induce(a) => induce(&a.instance, ctx),
        Command::CountHoms(a) => count_homs(a, ctx),
        Command::Experiment(Experiment::GenusFrontier(a)) => frontier(a, ctx),
        Command::Experiment(Experiment::OracleAgreement(a)) => oracle(a, ctx),
    }
}

fn group(src: &str, limits: &Limits) -> CliResult<Arc<FiniteGroup>> {
    Ok(src.parse::<GroupExpr>()?.build(limits)?)
}

/// `x1=g1, y2=g1^2`; unnamed generators map to the identity.
pub fn parse_assignment(src: &str, genus: usize, target: &Arc<FiniteGroup>) -> CliResult<SurfaceAssignment> {
    if genus == 0 {
        return Err(Error::Precondition("genus must be at least 1".into()).into());
    }
    let mut images = vec![target.identity(); 2 * genus];
    let mut set = vec![false; 2 * genus];
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = part.split_once('=').ok_or_else(|| CliError::Usage(format!("expected `label=word` in `{part}`")))?;
        let lhs = lhs.trim();
        let gen = (0..2 * genus)
            .find(|&j| surface_label(j) == lhs)
            .ok_or_else(|| Error::UnknownLabel(lhs.to_string()))?;
        if std::mem::replace(&mut set[gen], true) {
            return Err(CliError::Usage(format!("`{lhs}` assigned twice")));
        }
        images[gen] = rhs.trim().parse::<crate::ElemWord>()?.eval(target)?;
    }
    Ok(SurfaceAssignment::new(target, images)?)
}

fn word_of(g: &FiniteGroup, x: usize) -> String {
    g.word_string(x)
}

fn pair_json(sd: &SemidirectProduct, z: usize) -> Value {
    let (a, b) = sd.pair(z);
    json!({ "a": word_of(sd.kernel_group(), a), "b": word_of(sd.top(), b) })
}

fn solution_json(sd: &SemidirectProduct, psi: &SurfaceAssignment) -> Value {
    let map: serde_json::Map<String, Value> =
        psi.images().iter().enumerate().map(|(j, &z)| (surface_label(j), pair_json(sd, z))).collect();
    Value::Object(map)
}

fn solve_fsep(args: &SolveArgs, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new("solve-fsep", ctx.seed);
    let a_expr: GroupExpr = args.a.parse()?;
    let b_expr: GroupExpr = args.b.parse()?;
    let act_expr: ActionExpr = args.action.parse()?;
    rep.input("genus", args.genus);
    rep.input("A", a_expr.to_string());
    rep.input("B", b_expr.to_string());
    rep.input("action", act_expr.to_string());
    if let Some(src) = &args.mu {
        rep.input("mu", src.clone());
    }
    rep.input("method", format!("{:?}", args.method).to_lowercase());

    let (a, b) = (a_expr.build(lim)?, b_expr.build(lim)?);
    let action = act_expr.build(&b, &a)?;
    let mu = match &args.mu {
        Some(src) => parse_assignment(src, args.genus, &b)?,
        None => default_mu(args.genus, &b)?,
    };
    let sd = SemidirectProduct::new(&action, lim)?;
    let e = Fsep::from_extension(mu, sd.split_extension())?;
    clock.mark("setup");

    let mut results = serde_json::Map::new();
    results.insert("kernel_order".into(), json!(e.kernel_order()));
    results.insert("genus_bound".into(), json!(genus_bound(e.kernel_order() as u64)));
    let mut found: Vec<bool> = Vec::new();
    if matches!(args.method, Method::Brute | Method::Both) {
        let BruteOutcome::Existence(sol) = e.brute_solve(Want::Existence, lim)? else { unreachable!() };
        found.push(sol.is_some());
        results.insert("brute".into(), json!({ "solved": sol.is_some() }));
        if let Some(s) = sol {
            rep.witnesses.push(json!({ "method": "brute", "psi": solution_json(&sd, &s.psi) }));
        }
        clock.mark("brute");
    }
    if matches!(args.method, Method::Pigeonhole | Method::Both) {
        let out = e.pigeonhole_solve(PigeonholeOptions { allow_below_bound: true }, lim)?;
        found.push(out.is_some());
        match out {
            Some(o) => {
                let sol = e.check(o.solution.psi.clone())?;
                results.insert(
                    "pigeonhole".into(),
                    json!({
                        "solved": true,
                        "path": o.path.as_str(),
                        "r": o.r,
                        "class": [word_of(&b, o.class.0), word_of(&b, o.class.1)],
                        "pairs": o.indices,
                        "proper": sol.kind == surfgrp::embedding::SolutionKind::Proper,
                    }),
                );
                rep.witnesses.push(json!({ "method": "pigeonhole", "psi": solution_json(&sd, &o.solution.psi) }));
            }
            None => {
                results.insert("pigeonhole".into(), json!({ "solved": false }));
            }
        }
        clock.mark("pigeonhole");
    }
    if found.len() == 2 {
        results.insert("agree".into(), json!(found[0] == found[1]));
        if found[0] != found[1] {
            return Err(Error::Defect("brute force and the pigeonhole solver disagree".into()).into());
        }
    }
    if args.count {
        results.insert("proper_solutions".into(), json!(e.count_proper(lim)?.to_string()));
        clock.mark("count");
    }
    rep.verdict = Verdict::from_bool(found.iter().any(|&f| f));
    rep.results = Value::Object(results);
    clock.finish(&mut rep);
    Ok(rep)
}

fn default_mu(genus: usize, target: &Arc<FiniteGroup>) -> CliResult<SurfaceAssignment> {
    let gens: Vec<usize> = target.generators().iter().copied().filter(|&x| x != target.identity()).collect();
    if gens.len() > genus {
        return Err(Error::Precondition(format!("{} generators do not fit on x1..x{genus}", gens.len())).into());
    }
    let mut images = vec![target.identity(); 2 * genus];
    for (i, &x) in gens.iter().enumerate() {
        images[2 * i] = x;
    }
    Ok(SurfaceAssignment::new(target, images)?)
}

fn subgroup_spec(spec: &str, target: &Arc<FiniteGroup>) -> CliResult<Subgroup> {
    Ok(match spec.trim() {
        "kernel" => Subgroup::trivial(target),
        "whole" => Subgroup::whole(target),
        "stabilizer" => {
            let members = (0..target.order()).filter(|&x| target.perm(x).apply(0) == 0).collect();
            Subgroup::from_members(target, members)?
        }
        other => {
            let words = parse_word_set(other)?;
            let gens = words.iter().map(|w| w.eval(target)).collect::<Result<Vec<_>, _>>()?;
            Subgroup::generated(target, &gens)
        }
    })
}

fn subgroup_report(name: &str, args: &SubgroupArgs, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new(name, ctx.seed);
    let t_expr: GroupExpr = args.target.parse()?;
    rep.input("genus", args.genus);
    rep.input("target", t_expr.to_string());
    rep.input("subgroup", args.subgroup.clone());
    let target = t_expr.build(lim)?;
    let mu = match &args.mu {
        Some(src) => {
            rep.input("mu", src.clone());
            parse_assignment(src, args.genus, &target)?
        }
        None => default_mu(args.genus, &target)?,
    };
    let h = subgroup_spec(&args.subgroup, &target)?;
    let table = todd_coxeter_by_hom(&mu, &h, lim)?;
    clock.mark("cosets");
    let pres = SurfacePresentation::new(args.genus)?;
    let sp = reidemeister_schreier(&table, &[pres.relator()])?;
    let ab = abelianization_invariants(&sp);
    clock.mark("rewrite");

    let n = table.index();
    let g = args.genus;
    let predicted = sp.predicted_genus();
    let ok = sp.generator_count() == n * (2 * g - 1) + 1
        && sp.relator_count() == n
        && ab.torsion.is_empty()
        && ab.free_rank == 2 * predicted;
    let mut results = json!({
        "index": n,
        "generators": sp.generator_count(),
        "relators": sp.relator_count(),
        "deficiency": sp.deficiency(),
        "predicted_genus": predicted,
        "abelian_rank": ab.free_rank,
        "torsion": ab.torsion,
        "match": ok,
    });
    if name == "rs" {
        results["presentation"] = json!(sp.to_text());
    }
    rep.table = Some(coset_table(&table, &pres.labels()));
    rep.results = results;
    rep.verdict = Verdict::from_bool(ok);
    clock.finish(&mut rep);
    Ok(rep)
}

fn coset_table(table: &surfgrp::cosetenum::CosetTable, labels: &[String]) -> Table {
    let csv = table.to_csv(labels);
    let mut lines = csv.lines().map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>());
    let header = lines.next().unwrap_or_default();
    Table { header, rows: lines.collect() }
}

/// The instance file format shared by `diamond` and `induce`.
pub struct DiamondSpec {
    pub genus: usize,
    pub ambient: Ambient,
    /// `Ā` and the action of `G₁` on it
    pub module: Option<GroupAction>,
    pub echo: BTreeMap<String, Value>,
}

const INSTANCE_KEYS: [&str; 16] = [
    "genus", "n1.target", "n1.mu", "n2.target", "n2.mu", "l.target", "l.mu", "n.target", "n.mu", "n.subgroup",
    "pi.target", "pi.images", "module", "action", "check", "note",
];

pub fn read_instance(path: &Path, limits: &Limits) -> CliResult<DiamondSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    parse_instance(&text, limits)
}

pub fn parse_instance(text: &str, limits: &Limits) -> CliResult<DiamondSpec> {
    let f = InstanceFile::parse(text)?;
    f.check_keys(&INSTANCE_KEYS)?;
    let at = |key: &str| {
        let line = f.line(key);
        let key = key.to_string();
        move |e: CliError| match e {
            CliError::Core(inner) => CliError::Instance { line, msg: format!("`{key}`: {inner}") },
            other => other,
        }
    };
    let genus: usize = f
        .require("genus")?
        .parse()
        .map_err(|_| CliError::Instance { line: f.line("genus"), msg: "genus must be a positive integer".into() })?;
    let asg = |prefix: &str| -> CliResult<SurfaceAssignment> {
        let tk = format!("{prefix}.target");
        let mk = format!("{prefix}.mu");
        let target = group(f.require(&tk)?, limits).map_err(at(&tk))?;
        parse_assignment(f.get(&mk).unwrap_or(""), genus, &target).map_err(at(&mk))
    };
    let n1 = asg("n1")?;
    let n2 = asg("n2")?;
    let l = asg("l")?;
    let (sigma, h) = if f.get("n.target").is_some() {
        let sigma = asg("n")?;
        let h = subgroup_spec(f.get("n.subgroup").unwrap_or("kernel"), sigma.target()).map_err(at("n.subgroup"))?;
        (sigma, h)
    } else {
        let j = joint_image(&[n1.clone(), n2.clone()], limits)?;
        let h = Subgroup::trivial(&j.group);
        (j.assignment, h)
    };
    let (hg, _) = h.as_group(limits)?;
    let g1 = match f.get("pi.target") {
        Some(src) => group(src, limits).map_err(at("pi.target"))?,
        None => trivial(),
    };
    let pi = match f.get("pi.images") {
        Some(src) => {
            let imgs = parse_words(src)?.iter().map(|w| w.eval(&g1)).collect::<Result<Vec<_>, _>>().map_err(|e| at("pi.images")(e.into()))?;
            GroupHom::from_generator_images(&hg, &g1, &imgs).map_err(|e| at("pi.images")(e.into()))?
        }
        None => GroupHom::trivial(&hg, &g1),
    };
    let module = match f.get("module") {
        Some(src) => {
            let a = group(src, limits).map_err(at("module"))?;
            let act: ActionExpr = f.get("action").unwrap_or("trivial").parse().map_err(|e: Error| at("action")(e.into()))?;
            Some(act.build(&g1, &a).map_err(|e| at("action")(e.into()))?)
        }
        None => None,
    };
    let echo = f.entries().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Ok(DiamondSpec { genus, ambient: Ambient { n: NData { sigma, h, pi }, n1, n2, l }, module, echo })
}

fn induced(spec: &DiamondSpec, limits: &Limits) -> CliResult<Option<InducedProblem>> {
    let Some(action) = &spec.module else { return Ok(None) };
    Ok(Some(induce_problem(&spec.ambient.l, &spec.ambient.n, action, limits)?))
}

fn diamond(path: &Path, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new("diamond", ctx.seed);
    let spec = read_instance(path, lim)?;
    rep.inputs = spec.echo.clone();
    let amb = &spec.ambient;
    let idx = check_index_conditions(amb, lim)?;
    let modl = check_modl_conditions(&idx.mod_l);
    clock.mark("conditions");
    let [c1, c2, c3, c4] = idx.conditions();
    let mut results = json!({
        "diamond": {
            "meet_inside_n": idx.meet_inside,
            "n1_over_n": idx.n1_over,
            "n2_over_n": idx.n2_over,
            "holds": idx.diamond_hypotheses(),
        },
        "index": {
            "kernel_condition": c1,
            "n1_index": idx.n1_index,
            "n2_index": idx.n2_index,
            "nl_index": idx.nl_index,
            "conditions": [c1, c2, c3, c4],
            "holds": idx.holds(),
        },
        "mod_l": {
            "g_order": idx.mod_l.group().order(),
            "g0_order": idx.mod_l.g0().order(),
            "not_contained": modl.not_contained,
            "index": modl.index,
            "g1_index": modl.g1_index,
            "conditions": [modl.not_contained, modl.index_ok(), modl.g1_index_ok()],
            "holds": modl.holds(),
        },
        "minimal_r": spec.module.as_ref().map(|a| minimal_r(a.module().order() as u64)),
    });
    let mut ok = idx.holds() && modl.holds();

    if c1 && modl.holds() {
        if let Some(ip) = induced(&spec, lim)? {
            let d = idx.mod_l.clone().with_module(ip.wreath.base_action().clone())?;
            let obs = obstruction_scan(&d, lim)?;
            let w = d.wreath(lim)?;
            let wg = w.group();
            for pw in &obs.witnesses {
                rep.witnesses.push(json!({
                    "h1_subgroup_order": obs.h1_candidates[pw.h1_subgroup].order(),
                    "h2_subgroup_order": obs.h2_candidates[pw.h2_subgroup].order(),
                    "h1": word_of(wg, pw.h1),
                    "h2": word_of(wg, pw.h2),
                }));
            }
            clock.mark("obstruction");
            let q = joint_image(&[amb.n1.clone(), amb.n2.clone(), amb.l.clone()], lim)?;
            let mu = SurfaceAssignment::new(w.top(), amb.l.images().to_vec())?;
            let sols = constrained_epi_search(&w, &mu, &q.assignment, lim)?;
            clock.mark("search");
            let agree = !obs.obstructed() || sols.is_empty();
            results["obstruction"] = json!({
                "wreath_order": obs.wreath_order,
                "normal_subgroups": obs.normal_subgroups,
                "h1_candidates": obs.h1_candidates.len(),
                "h2_candidates": obs.h2_candidates.len(),
                "pairs_with_witness": obs.witnesses.len(),
                "obstructed": obs.obstructed(),
                "vacuous": obs.vacuous(),
                "quotient_order": q.group.order(),
                "factoring_solutions": sols.len(),
                "agree": agree,
            });
            if !agree {
                return Err(Error::Defect("obstruction scan and exhaustive search disagree".into()).into());
            }
            ok &= obs.obstructed();
        }
    }
    rep.results = results;
    rep.verdict = Verdict::from_bool(ok);
    clock.finish(&mut rep);
    Ok(rep)
}

fn induce(path: &Path, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new("induce", ctx.seed);
    let spec = read_instance(path, lim)?;
    rep.inputs = spec.echo.clone();
    let ip = induced(&spec, lim)?.ok_or_else(|| CliError::Usage("the instance needs a `module`".into()))?;
    clock.mark("induce");
    let BruteOutcome::All(sols) = ip.fsep.brute_solve(Want::All, lim)? else { unreachable!() };
    clock.mark("solve");
    let restricted = sols.par_iter().map(|s| ip.restrict_solution(&s.psi)).collect::<Result<Vec<_>, _>>()?;
    clock.mark("restrict");
    let proper = restricted.iter().filter(|r| r.proper).count();
    let weak = restricted.iter().filter(|r| r.weak_preserved).count();
    let g1 = ip.g1();
    if let (Some(s), Some(r)) = (sols.first(), restricted.first()) {
        rep.witnesses.push(json!({
            "psi": s.psi.images().iter().enumerate()
                .map(|(j, &z)| (surface_label(j), json!(word_of(ip.wreath.group(), z))))
                .collect::<serde_json::Map<_, _>>(),
            "psi_ind": r.images.iter().map(|&z| pair_json(&ip.target, z)).collect::<Vec<_>>(),
        }));
    }
    rep.results = json!({
        "genus": spec.genus,
        "wreath_order": ip.wreath.group().order(),
        "g0_order": ip.g0.order(),
        "g1_order": g1.order(),
        "n_index": ip.n_table.index(),
        "n_generators": ip.n_presentation.generator_count(),
        "n_genus": ip.n_presentation.predicted_genus(),
        "proper_solutions": sols.len(),
        "restricted_proper": proper,
        "weak_preserved": weak,
        "all_restrict_properly": proper == sols.len() && weak == sols.len(),
    });
    rep.verdict = Verdict::from_bool(!sols.is_empty() && proper == sols.len() && weak == sols.len());
    clock.finish(&mut rep);
    Ok(rep)
}

fn count_homs(args: &CountArgs, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new("count-homs", ctx.seed);
    let t_expr: GroupExpr = args.target.parse()?;
    rep.input("genus", args.genus);
    rep.input("target", t_expr.to_string());
    rep.input("surjective", args.surjective);
    let target = t_expr.build(lim)?;
    let count = count_representations(args.genus, &target, args.surjective, lim)?;
    clock.mark("count");
    let mut results = json!({ "order": target.order(), "count": count.to_string() });
    let mut ok = true;
    if args.list {
        let reps = enumerate_representations(args.genus, &target, args.surjective, lim)?;
        clock.mark("list");
        let labels = SurfacePresentation::new(args.genus)?.labels();
        let mut table = Table::new(&labels.iter().map(String::as_str).collect::<Vec<_>>());
        for r in &reps {
            table.push(r.images().iter().map(|&x| target.perm(x).to_string()).collect());
        }
        results["representations"] = json!(table.rows);
        rep.table = Some(table);
        let listed = reps.len() as u128;
        results["listed"] = json!(listed.to_string());
        results["agree"] = json!(listed == count);
        ok = listed == count;
        if !ok {
            return Err(Error::Defect("counting and listing disagree".into()).into());
        }
    }
    rep.results = results;
    rep.verdict = Verdict::from_bool(ok && count > 0);
    clock.finish(&mut rep);
    Ok(rep)
}

fn frontier(args: &FrontierArgs, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new("experiment genus-frontier", ctx.seed);
    let a_expr: GroupExpr = args.a.parse()?;
    let b_expr: GroupExpr = args.b.parse()?;
    rep.input("A", a_expr.to_string());
    rep.input("B", b_expr.to_string());
    rep.input("max_genus", args.max_genus);
    let (a, b) = (a_expr.build(lim)?, b_expr.build(lim)?);
    let actions = match &args.action {
        Some(src) => {
            let act: ActionExpr = src.parse()?;
            rep.input("action", act.to_string());
            vec![act.build(&b, &a)?]
        }
        None => all_actions(&b, &a, lim)?,
    };
    let per_action = actions
        .par_iter()
        .map(|act| surfgrp::embedding::genus_frontier(act, args.max_genus, lim))
        .collect::<Result<Vec<_>, _>>()?;
    clock.mark("frontier");

    let mut table = Table::new(&["action", "genus", "bound", "proper_solutions", "solvable", "pigeonhole"]);
    let mut rows_json = Vec::new();
    let mut ok = true;
    for (act, rows) in actions.iter().zip(&per_action) {
        let desc = describe_action(act);
        for r in rows {
            let path = r.pigeonhole.map_or("none", |p| p.as_str());
            if r.genus as u64 >= r.bound && !r.solvable() {
                ok = false;
            }
            table.push(vec![
                desc.clone(),
                r.genus.to_string(),
                r.bound.to_string(),
                r.proper_solutions.to_string(),
                r.solvable().to_string(),
                path.to_string(),
            ]);
            rows_json.push(json!({
                "action": desc,
                "genus": r.genus,
                "bound": r.bound,
                "proper_solutions": r.proper_solutions.to_string(),
                "solvable": r.solvable(),
                "pigeonhole": path,
            }));
        }
    }
    let first_solvable: Vec<Value> = per_action
        .iter()
        .map(|rows| json!(rows.iter().find(|r| r.solvable()).map(|r| r.genus)))
        .collect();
    rep.results = json!({ "rows": rows_json, "first_solvable_genus": first_solvable, "solvable_at_bound": ok });
    rep.table = Some(table);
    rep.verdict = Verdict::from_bool(ok);
    clock.finish(&mut rep);
    Ok(rep)
}

fn oracle(args: &OracleArgs, ctx: &Ctx) -> CliResult<RunReport> {
    let lim = &ctx.limits;
    let mut clock = Clock::new(ctx.timings);
    let mut rep = RunReport::new("experiment oracle-agreement", ctx.seed);
    rep.input("samples", args.samples);
    rep.input("max_order", args.max_order);
    rep.input("max_genus", args.max_genus);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let samples = (0..args.samples)
        .map(|_| random_fsep(&mut rng, args.max_order, args.max_genus, lim))
        .collect::<Result<Vec<_>, _>>()?;
    clock.mark("sample");
    let outcomes = samples
        .par_iter()
        .map(|s| -> Result<(bool, Option<&'static str>), Error> {
            let BruteOutcome::Existence(sol) = s.fsep.brute_solve(Want::Existence, lim)? else { unreachable!() };
            if let Some(sol) = &sol {
                s.fsep.check(sol.psi.clone())?;
            }
            let ph = s.fsep.pigeonhole_solve(PigeonholeOptions { allow_below_bound: true }, lim)?;
            if let Some(o) = &ph {
                let checked = s.fsep.check(o.solution.psi.clone())?;
                if checked.kind != surfgrp::embedding::SolutionKind::Proper {
                    return Err(Error::Defect("pigeonhole returned an improper solution".into()));
                }
            }
            Ok((sol.is_some(), ph.map(|o| o.path.as_str())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    clock.mark("solve");

    let mut table = Table::new(&["sample", "B", "A", "action", "genus", "mu", "brute", "pigeonhole", "agree"]);
    let mut agree_all = true;
    let mut solvable = 0;
    for (i, (s, (brute, ph))) in samples.iter().zip(&outcomes).enumerate() {
        let agree = *brute == ph.is_some();
        agree_all &= agree;
        solvable += usize::from(*brute);
        let b = s.fsep.quotient();
        let mu: Vec<String> = s.fsep.mu().images().iter().map(|&x| word_of(b, x)).collect();
        table.push(vec![
            i.to_string(),
            s.b.clone(),
            s.a.clone(),
            describe_action(&s.action),
            s.fsep.genus().to_string(),
            mu.join(" "),
            brute.to_string(),
            ph.unwrap_or("none").to_string(),
            agree.to_string(),
        ]);
    }
    rep.results = json!({
        "samples": samples.len(),
        "solvable": solvable,
        "agree": agree_all,
    });
    rep.table = Some(table);
    rep.verdict = Verdict::from_bool(agree_all);
    clock.finish(&mut rep);
    Ok(rep)
}
