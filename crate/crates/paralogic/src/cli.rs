//! Command-line front end. Exit codes are part of the contract:
//! 0 = answered Yes/true, 1 = answered No/false, 2 = Unknown,
//! 3 = usage or input error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::consistency::{
    consistent_subsets, maximal_consistent_subsets, ConsistencyError, ConsistencyOracle,
    ConsistencyVerdict,
};
use crate::deduction::{closure, deducible, parse_deduction, render_deduction, Budget, SearchVerdict};
use crate::formula::{parse_formula, Formula};
use crate::metatheory::{run_battery, BatteryConfig};
use crate::paradeduction::{
    cn_para, paradeducible, parse_paradeduction, render_paradeduction, strong_consequence,
    verify_paradeduction, weak_consequence, ParaError, ParaVerdict, ParaViolationKind, Provenance,
    Prover,
};
use crate::presets::load_preset;
use crate::system::{parse_system_file, FormalSystem};
use crate::valuation::{
    build_adequate_structure, check_adequacy, parse_valuation_file, render_valuation_file,
    ValuationStructure,
};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "paralogic",
    about = "Deduction and paradeduction over axiomatic formal systems",
    disable_help_flag = false
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Enumerative,
    Semantic,
    Bounded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args)]
struct SystemArgs {
    /// Built-in preset: classical-pl or toy.
    #[arg(long, conflicts_with = "system")]
    preset: Option<String>,
    /// System-definition file.
    #[arg(long)]
    system: Option<PathBuf>,
    /// Consistency oracle backend. Defaults to the preset's oracle, or to
    /// enumerative (finite universe) / bounded (schematic) for files.
    #[arg(long, value_enum)]
    oracle: Option<OracleKind>,
    /// Explicit valuation-structure file.
    #[arg(long)]
    valuations: Option<PathBuf>,
    /// Formula limit for bounded deducibility search.
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    /// Largest premise set the subset scans accept.
    #[arg(long, default_value_t = 20)]
    subset_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct PremiseArgs {
    /// Comma-separated premise formulas.
    #[arg(long, conflicts_with = "premises_file")]
    premises: Option<String>,
    /// File with one premise formula per line.
    #[arg(long)]
    premises_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide A ⊢ goal.
    Deduce {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        goal: String,
    },
    /// Decide A ⊢ᴾ goal: deducibility from some consistent subset.
    Paradeduce {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        goal: String,
    },
    /// Check whether the premise set is consistent.
    Consistent {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
    },
    /// Stream the consistent subsets of the premise set.
    Subsets {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
    },
    /// List the maximal consistent subsets of the premise set.
    Mcs {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
    },
    /// Decide A ⊨ goal against the attached valuation structure.
    Entails {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        goal: String,
    },
    /// Decide A ⊨ᴾ goal: entailment from some satisfiable subset.
    ParaEntails {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        goal: String,
    },
    /// Weak consequence: the goal follows from some maximal consistent subset.
    Weak {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        goal: String,
    },
    /// Strong consequence: the goal follows from every maximal consistent subset.
    Strong {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        goal: String,
    },
    /// The ordinary consequences of the premise set.
    Cn {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        /// Comma-separated formulas to report on. Defaults to the finite
        /// universe; required for schematic systems.
        #[arg(long)]
        report: Option<String>,
    },
    /// The paraconsistentized consequences of the premise set.
    CnPara {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        report: Option<String>,
    },
    /// Verify a serialized deduction against the premise set.
    VerifyDeduction {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        /// Witness file, one step per line.
        #[arg(long)]
        witness: PathBuf,
    },
    /// Verify a serialized paradeduction against the premise set.
    VerifyParadeduction {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        premises: PremiseArgs,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Build the consistent-theory valuation structure for a finite system
    /// and print it as a valuation file.
    BuildAdequate {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Check soundness and completeness of the attached structure.
    CheckAdequacy {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Run the metatheory battery on a finite system and print one
    /// pass/fail line per claim.
    Metatheory {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 5)]
        max_premises: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
    },
}

struct Context {
    system: Arc<FormalSystem>,
    oracle: Arc<ConsistencyOracle>,
    structure: Option<Arc<ValuationStructure>>,
    adequate: bool,
    budget: Budget,
    subset_cap: usize,
    format: Format,
}

fn build_context(args: &SystemArgs) -> Result<Context, String> {
    let budget = Budget {
        max_formulas: args.budget,
        max_rounds: 64,
    };
    if budget.max_formulas == 0 {
        return Err("--budget must be positive".to_string());
    }
    let (system, mut structure, mut adequate, preset_oracle) = match (&args.preset, &args.system) {
        (Some(name), None) => {
            let preset = load_preset(name).map_err(|e| e.to_string())?;
            (
                preset.system,
                preset.structure,
                preset.adequate,
                Some(preset.oracle),
            )
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let system = Arc::new(parse_system_file(&text).map_err(|e| e.to_string())?);
            (system, None, false, None)
        }
        _ => return Err("exactly one of --preset and --system is required".to_string()),
    };
    if let Some(path) = &args.valuations {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let vs = parse_valuation_file(&text, &system.signature).map_err(|e| e.to_string())?;
        structure = Some(Arc::new(vs));
        // A user-supplied structure carries no adequacy promise.
        adequate = false;
    }
    if structure.is_none() {
        if let Some(universe) = system.finite_universe() {
            let vs = build_adequate_structure(&system, &universe).map_err(|e| e.to_string())?;
            structure = Some(Arc::new(vs));
            adequate = true;
        }
    }
    let oracle = match args.oracle {
        None => match preset_oracle {
            Some(oracle) => oracle,
            None => match system.finite_universe() {
                Some(universe) => Arc::new(
                    ConsistencyOracle::enumerative(system.clone(), universe)
                        .map_err(|e| e.to_string())?,
                ),
                None => Arc::new(
                    ConsistencyOracle::bounded_syntactic(
                        system.clone(),
                        budget,
                        probe_formulas(&system),
                    )
                    .map_err(|e| e.to_string())?,
                ),
            },
        },
        Some(OracleKind::Enumerative) => {
            let universe = system
                .finite_universe()
                .ok_or("the enumerative oracle needs a finite universe")?;
            Arc::new(
                ConsistencyOracle::enumerative(system.clone(), universe)
                    .map_err(|e| e.to_string())?,
            )
        }
        Some(OracleKind::Semantic) => {
            let vs = structure
                .clone()
                .ok_or("the semantic oracle needs a valuation structure (--valuations)")?;
            Arc::new(ConsistencyOracle::semantic(vs).map_err(|e| e.to_string())?)
        }
        Some(OracleKind::Bounded) => Arc::new(
            ConsistencyOracle::bounded_syntactic(system.clone(), budget, probe_formulas(&system))
                .map_err(|e| e.to_string())?,
        ),
    };
    Ok(Context {
        system,
        oracle,
        structure,
        adequate,
        budget,
        subset_cap: args.subset_cap,
        format: args.format,
    })
}

/// Probe set for the bounded refutation oracle: the finite universe when
/// there is one, otherwise the atoms.
fn probe_formulas(sys: &FormalSystem) -> Vec<Formula> {
    match sys.finite_universe() {
        Some(u) => u,
        None => sys
            .signature
            .atoms()
            .iter()
            .map(|a| Formula::atom(a))
            .collect(),
    }
}

fn parse_premises(
    ctx: &Context,
    args: &PremiseArgs,
) -> Result<BTreeSet<Formula>, String> {
    let text = match (&args.premises, &args.premises_file) {
        (Some(inline), None) => inline.split(',').map(str::to_string).collect::<Vec<_>>(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?
            .lines()
            .map(str::to_string)
            .collect(),
        (None, None) => Vec::new(),
        _ => return Err("pass --premises or --premises-file, not both".to_string()),
    };
    let mut out = BTreeSet::new();
    for part in text {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let f = parse_formula(part, &ctx.system.signature)
            .map_err(|e| format!("bad premise `{part}`: {e}"))?;
        out.insert(f);
    }
    Ok(out)
}

fn parse_goal(ctx: &Context, text: &str) -> Result<Formula, String> {
    parse_formula(text, &ctx.system.signature).map_err(|e| format!("bad goal `{text}`: {e}"))
}

fn parse_report_list(ctx: &Context, report: &Option<String>) -> Result<Vec<Formula>, String> {
    match report {
        Some(text) => {
            let mut out = Vec::new();
            for part in text.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                out.push(
                    parse_formula(part, &ctx.system.signature)
                        .map_err(|e| format!("bad report formula `{part}`: {e}"))?,
                );
            }
            Ok(out)
        }
        None => ctx
            .system
            .finite_universe()
            .ok_or_else(|| "--report is required for schematic systems".to_string()),
    }
}

fn make_prover<'a>(ctx: &'a Context) -> Prover<'a> {
    let mut prover = Prover::new(&ctx.system).with_budget(ctx.budget);
    if ctx.adequate {
        if let Some(vs) = &ctx.structure {
            prover = prover.with_semantics(vs);
        }
    }
    prover
}

fn subset_line(ctx: &Context, subset: &BTreeSet<Formula>) -> String {
    let ordered = ctx.oracle.canonical_order(subset);
    let body = ordered
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("{}: {}", subset.len(), body)
}

struct Report<'a, W: Write> {
    out: &'a mut W,
    format: Format,
    start: Instant,
}

impl<'a, W: Write> Report<'a, W> {
    fn new(out: &'a mut W, format: Format) -> Self {
        Report {
            out,
            format,
            start: Instant::now(),
        }
    }

    fn field(&mut self, key: &str, value: &str) {
        let _ = match self.format {
            Format::Text => writeln!(self.out, "{key}: {value}"),
            Format::Records => writeln!(self.out, "{key}={value}"),
        };
    }

    fn block(&mut self, key: &str, body: &str) {
        match self.format {
            Format::Text => {
                let _ = writeln!(self.out, "{key}:");
                let _ = write!(self.out, "{body}");
            }
            Format::Records => {
                for (i, line) in body.lines().enumerate() {
                    let _ = writeln!(self.out, "{key}.{}={line}", i + 1);
                }
            }
        }
    }

    fn finish(&mut self) {
        let ms = self.start.elapsed().as_millis();
        self.field("time_ms", &ms.to_string());
    }
}

fn para_error_exit(err: &ParaError) -> Option<u8> {
    match err {
        ParaError::Undecided => Some(EXIT_UNKNOWN),
        ParaError::Consistency(ConsistencyError::Undecided) => Some(EXIT_UNKNOWN),
        _ => None,
    }
}

pub fn run<W: Write>(args: &[String], out: &mut W) -> u8 {
    let mut argv = vec!["paralogic".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            // Help and version requests are not usage errors.
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<u8, String> {
    match command {
        Command::Deduce { sys, premises, goal } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let goal = parse_goal(&ctx, &goal)?;
            let mut report = Report::new(out, ctx.format);
            let verdict = deducible(&ctx.system, &a, &goal, ctx.budget)
                .map_err(|e| e.to_string())?;
            let code = match verdict {
                SearchVerdict::Yes(d) => {
                    report.field("verdict", "yes");
                    report.block("witness", &render_deduction(&d));
                    EXIT_YES
                }
                SearchVerdict::No => {
                    report.field("verdict", "no");
                    EXIT_NO
                }
                SearchVerdict::Unknown => {
                    report.field("verdict", "unknown");
                    EXIT_UNKNOWN
                }
            };
            report.finish();
            Ok(code)
        }
        Command::Paradeduce { sys, premises, goal } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let goal = parse_goal(&ctx, &goal)?;
            let prover = make_prover(&ctx);
            let mut report = Report::new(out, ctx.format);
            let verdict = match paradeducible(&prover, &ctx.oracle, &a, &goal, ctx.subset_cap) {
                Ok(v) => v,
                Err(e) => {
                    if let Some(code) = para_error_exit(&e) {
                        report.field("verdict", "unknown");
                        report.finish();
                        return Ok(code);
                    }
                    return Err(e.to_string());
                }
            };
            report.field("oracle", ctx.oracle.describe());
            let code = match verdict {
                ParaVerdict::Yes {
                    witness,
                    support,
                    provenance,
                } => {
                    report.field("verdict", "yes");
                    report.field(
                        "provenance",
                        match provenance {
                            Provenance::Syntactic => "syntactic",
                            Provenance::Semantic => "semantic",
                        },
                    );
                    report.field("support", &subset_line(&ctx, &support));
                    match witness {
                        Some(sigma) => report.block("witness", &render_paradeduction(&sigma)),
                        None => report.field("witness", "none (semantic verdict)"),
                    }
                    EXIT_YES
                }
                ParaVerdict::No => {
                    report.field("verdict", "no");
                    EXIT_NO
                }
                ParaVerdict::Unknown => {
                    report.field("verdict", "unknown");
                    EXIT_UNKNOWN
                }
            };
            report.finish();
            Ok(code)
        }
        Command::Consistent { sys, premises } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let mut report = Report::new(out, ctx.format);
            let verdict = ctx.oracle.check(&a).map_err(|e| e.to_string())?;
            report.field("oracle", ctx.oracle.describe());
            let code = match verdict {
                ConsistencyVerdict::Consistent => {
                    report.field("verdict", "consistent");
                    EXIT_YES
                }
                ConsistencyVerdict::Inconsistent => {
                    report.field("verdict", "inconsistent");
                    EXIT_NO
                }
                ConsistencyVerdict::Unknown => {
                    report.field("verdict", "unknown");
                    EXIT_UNKNOWN
                }
            };
            report.finish();
            Ok(code)
        }
        Command::Subsets { sys, premises } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let mut report = Report::new(out, ctx.format);
            let mut stream = consistent_subsets(&ctx.oracle, &a, ctx.subset_cap)
                .map_err(|e| e.to_string())?;
            let mut count = 0usize;
            for subset in stream.by_ref() {
                count += 1;
                report.field("subset", &subset_line(&ctx, &subset));
            }
            report.field("count", &count.to_string());
            let skipped = stream.skipped_unknown();
            let code = if skipped > 0 {
                report.field("skipped_unknown", &skipped.to_string());
                EXIT_UNKNOWN
            } else {
                EXIT_YES
            };
            report.finish();
            Ok(code)
        }
        Command::Mcs { sys, premises } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let mut report = Report::new(out, ctx.format);
            match maximal_consistent_subsets(&ctx.oracle, &a, ctx.subset_cap) {
                Ok(mcs) => {
                    for subset in &mcs {
                        report.field("mcs", &subset_line(&ctx, subset));
                    }
                    report.field("count", &mcs.len().to_string());
                    report.finish();
                    Ok(EXIT_YES)
                }
                Err(ConsistencyError::Undecided) => {
                    report.field("verdict", "unknown");
                    report.finish();
                    Ok(EXIT_UNKNOWN)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Entails { sys, premises, goal } => {
            let ctx = build_context(&sys)?;
            let vs = ctx
                .structure
                .clone()
                .ok_or("this command needs a valuation structure (--valuations)")?;
            let a = parse_premises(&ctx, &premises)?;
            let goal = parse_goal(&ctx, &goal)?;
            let mut report = Report::new(out, ctx.format);
            let holds = vs.entails(&a, &goal).map_err(|e| e.to_string())?;
            report.field("verdict", if holds { "true" } else { "false" });
            report.finish();
            Ok(if holds { EXIT_YES } else { EXIT_NO })
        }
        Command::ParaEntails { sys, premises, goal } => {
            let ctx = build_context(&sys)?;
            let vs = ctx
                .structure
                .clone()
                .ok_or("this command needs a valuation structure (--valuations)")?;
            let a = parse_premises(&ctx, &premises)?;
            let goal = parse_goal(&ctx, &goal)?;
            let mut report = Report::new(out, ctx.format);
            let holds = vs
                .para_entails(&a, &goal, ctx.subset_cap)
                .map_err(|e| e.to_string())?;
            report.field("verdict", if holds { "true" } else { "false" });
            report.finish();
            Ok(if holds { EXIT_YES } else { EXIT_NO })
        }
        Command::Weak { sys, premises, goal } => {
            run_rm_query(sys, premises, goal, out, weak_consequence)
        }
        Command::Strong { sys, premises, goal } => {
            run_rm_query(sys, premises, goal, out, strong_consequence)
        }
        Command::Cn { sys, premises, report: report_arg } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let report_universe = parse_report_list(&ctx, &report_arg)?;
            let mut report = Report::new(out, ctx.format);
            let members: Vec<Formula> = match ctx.system.finite_universe() {
                Some(universe) => {
                    let cn = closure(&ctx.system, &a, &universe);
                    report_universe
                        .iter()
                        .filter(|f| cn.contains(*f))
                        .cloned()
                        .collect()
                }
                None => {
                    let vs = ctx.structure.clone().ok_or(
                        "Cn on a schematic system needs a valuation structure (--valuations)",
                    )?;
                    vs.semantic_closure(&a, &report_universe)
                        .map_err(|e| e.to_string())?
                }
            };
            for f in &members {
                report.field("member", &f.to_string());
            }
            report.field("count", &members.len().to_string());
            report.finish();
            Ok(EXIT_YES)
        }
        Command::CnPara { sys, premises, report: report_arg } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let report_universe = parse_report_list(&ctx, &report_arg)?;
            let prover = make_prover(&ctx);
            let mut report = Report::new(out, ctx.format);
            match cn_para(&prover, &ctx.oracle, &a, &report_universe, ctx.subset_cap) {
                Ok(members) => {
                    for f in &members {
                        report.field("member", &f.to_string());
                    }
                    report.field("count", &members.len().to_string());
                    report.finish();
                    Ok(EXIT_YES)
                }
                Err(e) => match para_error_exit(&e) {
                    Some(code) => {
                        report.field("verdict", "unknown");
                        report.finish();
                        Ok(code)
                    }
                    None => Err(e.to_string()),
                },
            }
        }
        Command::VerifyDeduction { sys, premises, witness } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let text = std::fs::read_to_string(&witness)
                .map_err(|e| format!("cannot read {}: {e}", witness.display()))?;
            let d = parse_deduction(&text, &ctx.system).map_err(|e| e.to_string())?;
            let mut report = Report::new(out, ctx.format);
            match crate::deduction::verify_deduction(&ctx.system, &a, &d) {
                Ok(()) => {
                    report.field("verdict", "ok");
                    report.finish();
                    Ok(EXIT_YES)
                }
                Err(violations) => {
                    for v in &violations {
                        report.field(
                            "violation",
                            &format!("step {}: {:?}", v.step + 1, v.kind),
                        );
                    }
                    report.field("verdict", "invalid");
                    report.finish();
                    Ok(EXIT_NO)
                }
            }
        }
        Command::VerifyParadeduction { sys, premises, witness } => {
            let ctx = build_context(&sys)?;
            let a = parse_premises(&ctx, &premises)?;
            let text = std::fs::read_to_string(&witness)
                .map_err(|e| format!("cannot read {}: {e}", witness.display()))?;
            let sigma = parse_paradeduction(&text, &ctx.system).map_err(|e| e.to_string())?;
            let mut report = Report::new(out, ctx.format);
            match verify_paradeduction(&ctx.system, &ctx.oracle, &a, &sigma)
                .map_err(|e| e.to_string())?
            {
                Ok(()) => {
                    report.field("verdict", "ok");
                    report.finish();
                    Ok(EXIT_YES)
                }
                Err(violations) => {
                    for v in &violations {
                        report.field(
                            "violation",
                            &format!("step {}: {:?}", v.step + 1, v.kind),
                        );
                    }
                    let only_undecided = violations
                        .iter()
                        .all(|v| v.kind == ParaViolationKind::UndecidedSupport);
                    report.field(
                        "verdict",
                        if only_undecided { "unknown" } else { "invalid" },
                    );
                    report.finish();
                    Ok(if only_undecided { EXIT_UNKNOWN } else { EXIT_NO })
                }
            }
        }
        Command::BuildAdequate { sys } => {
            let ctx = build_context(&sys)?;
            let universe = ctx
                .system
                .finite_universe()
                .ok_or("building the consistent-theory structure needs a finite universe")?;
            let vs = build_adequate_structure(&ctx.system, &universe).map_err(|e| e.to_string())?;
            let text = render_valuation_file(&vs).map_err(|e| e.to_string())?;
            let _ = write!(out, "{text}");
            Ok(EXIT_YES)
        }
        Command::CheckAdequacy { sys } => {
            let ctx = build_context(&sys)?;
            let universe = ctx
                .system
                .finite_universe()
                .ok_or("adequacy checking needs a finite universe")?;
            let vs = ctx
                .structure
                .clone()
                .ok_or("this command needs a valuation structure (--valuations)")?;
            let mut report = Report::new(out, ctx.format);
            let result = check_adequacy(&ctx.system, &vs, &universe, ctx.subset_cap)
                .map_err(|e| e.to_string())?;
            report.field("sound", &result.sound.to_string());
            report.field("complete", &result.complete.to_string());
            report.field("pairs_checked", &result.pairs_checked.to_string());
            for (a, goal) in &result.soundness_counterexamples {
                report.field("soundness_counterexample", &format!("{a:?} / {goal}"));
            }
            for (a, goal) in &result.completeness_counterexamples {
                report.field("completeness_counterexample", &format!("{a:?} / {goal}"));
            }
            report.finish();
            Ok(if result.adequate() { EXIT_YES } else { EXIT_NO })
        }
        Command::Metatheory { sys, max_premises, samples, seed } => {
            let ctx = build_context(&sys)?;
            let vs = ctx
                .structure
                .clone()
                .ok_or("the battery needs a valuation structure")?;
            let config = BatteryConfig {
                max_premises,
                samples,
                seed,
            };
            let results = run_battery(&ctx.system, &ctx.oracle, &vs, config)
                .map_err(|e| e.to_string())?;
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.pass;
                let _ = match ctx.format {
                    Format::Text => writeln!(
                        out,
                        "{} {} — {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail
                    ),
                    Format::Records => writeln!(
                        out,
                        "claim={} pass={} detail={}",
                        r.name, r.pass, r.detail
                    ),
                };
            }
            Ok(if all_pass { EXIT_YES } else { EXIT_NO })
        }
    }
}

type RmQuery = fn(
    &Prover<'_>,
    &ConsistencyOracle,
    &BTreeSet<Formula>,
    &Formula,
    usize,
) -> Result<bool, ParaError>;

fn run_rm_query<W: Write>(
    sys: SystemArgs,
    premises: PremiseArgs,
    goal: String,
    out: &mut W,
    query: RmQuery,
) -> Result<u8, String> {
    let ctx = build_context(&sys)?;
    let a = parse_premises(&ctx, &premises)?;
    let goal = parse_goal(&ctx, &goal)?;
    let prover = make_prover(&ctx);
    let mut report = Report::new(out, ctx.format);
    match query(&prover, &ctx.oracle, &a, &goal, ctx.subset_cap) {
        Ok(holds) => {
            report.field("verdict", if holds { "true" } else { "false" });
            report.finish();
            Ok(if holds { EXIT_YES } else { EXIT_NO })
        }
        Err(e) => match para_error_exit(&e) {
            Some(code) => {
                report.field("verdict", "unknown");
                report.finish();
                Ok(code)
            }
            None => Err(e.to_string()),
        },
    }
}
