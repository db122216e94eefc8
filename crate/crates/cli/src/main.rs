//! Command-line front end: allocation tables, axiom audits and falsification,
//! signature decomposition and region classification, and the worked
//! three-team example.
//!
//! Exit codes: 0 success, 1 input or parameter error, 2 a witness or rule
//! difference was found, 3 a decomposition came out inconsistent.

use broadcast_sharing::axioms::{audit, falsify, AxiomId, FalsifyOutcome, GeneratorConfig};
use broadcast_sharing::characterize::{classify, decompose, equivalent, Equivalence};
use broadcast_sharing::io::{problem_from_str, problem_to_csv, problem_to_json_value};
use broadcast_sharing::problem::Problem;
use broadcast_sharing::rational::{parse_rat, to_decimal_string, to_fixed_string, to_token, Rat};
use broadcast_sharing::rules::{Rule, RuleSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "broadcast",
    version,
    about = "Revenue sharing rules for broadcast audience matrices, in exact arithmetic",
    after_help = "Rule grammar: uniform | equal-split | cd | split:L | gsplit:L | \
                  general:X,Y,Z | ec:L | uc:L | ue:L | ext-ec:X,Y | ext-uc:X,Y | \
                  ext-ue:X,Y | ext:X,Y | counter:R1..R13 | counter:T1-WETE | counter:T1-ETE.\n\
                  Parameters accept decimals or p/q fractions and are parsed exactly.\n\
                  counter:R8, R10, R11 and R13 are three-team rules: audits need --n-min 3 --n-max 3."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

#[derive(Args)]
struct GenArgs {
    /// Trial budget for the randomized search
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Seed; falls back to the BROADCAST_SEED variable, then to 1
    #[arg(long)]
    seed: Option<u64>,
    /// Smallest generated team count
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    /// Largest generated team count
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Cap on generated audience magnitudes
    #[arg(long, default_value_t = 1000)]
    max_entry: u64,
    /// Probability of zeroing an entry
    #[arg(long, default_value_t = 0.35)]
    sparsity: f64,
    /// Probability of each structure pass (duplicated/null/essential teams)
    #[arg(long, default_value_t = 0.5)]
    duplication_bias: f64,
}

impl GenArgs {
    fn to_config(&self) -> GeneratorConfig {
        let seed = self
            .seed
            .or_else(|| std::env::var("BROADCAST_SEED").ok().and_then(|s| s.parse().ok()))
            .unwrap_or(1);
        GeneratorConfig {
            n_min: self.n_min,
            n_max: self.n_max,
            max_entry: self.max_entry,
            sparsity: self.sparsity,
            duplication_bias: self.duplication_bias,
            trials: self.trials,
            seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate rules on an audience matrix (CSV or JSON)
    Allocate {
        /// Rule name; repeat for several rules
        #[arg(long = "rule", required = true)]
        rules: Vec<String>,
        /// Path to the matrix file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Round table/CSV output to this many decimals (display only)
        #[arg(long)]
        places: Option<u32>,
    },
    /// Randomized multi-axiom audit of one rule
    Audit {
        #[arg(long)]
        rule: String,
        /// Axiom to audit (repeatable, comma-separable); defaults to all 13
        #[arg(long = "axiom", value_delimiter = ',')]
        axioms: Vec<String>,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Search for a counterexample to one axiom
    Falsify {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        axiom: String,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Read a rule's unit-matrix signature off its unit-problem table
    Decompose {
        #[arg(long)]
        rule: String,
        /// Team count for the unit problems
        #[arg(long)]
        teams: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// List every family region containing a signature (x, y)
    Classify {
        /// Home share on a unit problem
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Away share on a unit problem
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        teams: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Print the worked three-team example tables
    Example,
    /// Compare two rules on unit tables and random problems
    Compare {
        #[arg(long)]
        rule_a: String,
        #[arg(long)]
        rule_b: String,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Allocate { rules, input, format, places } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let problem = problem_from_str(&text).map_err(|e| e.to_string())?;
            let mut evaluated = Vec::new();
            for name in &rules {
                let rule = parse_rule(name)?;
                let allocation = rule.evaluate(&problem).map_err(|e| e.to_string())?;
                evaluated.push((rule.to_string(), allocation));
            }
            print_allocations(&problem, &evaluated, format, places);
            Ok(0)
        }
        Command::Audit { rule, axioms, gen, format } => {
            let rule = parse_rule(&rule)?;
            let ids = parse_axioms(&axioms)?;
            let cfg = gen.to_config();
            let report = audit(&rule, &ids, &cfg).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", pretty(&report)?),
                Format::Csv => {
                    println!("axiom,outcome,trials");
                    for entry in &report.entries {
                        println!("{},{},{}", entry.id, entry.outcome, entry.trials);
                    }
                }
                Format::Table => {
                    println!("rule: {}", report.rule);
                    println!("seed: {}", report.seed);
                    for entry in &report.entries {
                        match &entry.witness {
                            None => println!(
                                "{:<5} pass   no witness in {} trials",
                                entry.id.to_string(),
                                entry.trials
                            ),
                            Some(w) => println!(
                                "{:<5} FAIL   witness at trial {}: {}",
                                entry.id.to_string(),
                                entry.trials,
                                w.description
                            ),
                        }
                    }
                }
            }
            Ok(if report.all_passed() { 0 } else { 2 })
        }
        Command::Falsify { rule, axiom, gen, format } => {
            let rule = parse_rule(&rule)?;
            let id: AxiomId = axiom.parse().map_err(|e| format!("{e}"))?;
            let cfg = gen.to_config();
            let outcome = falsify(id, &rule, &cfg).map_err(|e| e.to_string())?;
            match &outcome {
                FalsifyOutcome::Witness { witness, trial } => {
                    match format {
                        OutputFormat::Json => {
                            let mut value = serde_json::to_value(witness.as_ref())
                                .map_err(|e| e.to_string())?;
                            value["trial"] = serde_json::json!(trial);
                            println!("{}", serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?);
                        }
                        _ => {
                            println!("witness at trial {trial}: {}", witness.description);
                            print_instance(&witness.instance);
                        }
                    }
                    Ok(2)
                }
                FalsifyOutcome::Exhausted { trials } => {
                    match format {
                        OutputFormat::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&serde_json::json!({
                                "axiom": id.to_string(),
                                "rule": rule.to_string(),
                                "outcome": "exhausted",
                                "trials": trials,
                                "seed": cfg.seed,
                            }))
                            .map_err(|e| e.to_string())?
                        ),
                        _ => println!("no witness in {trials} trials (seed {})", cfg.seed),
                    }
                    Ok(0)
                }
            }
        }
        Command::Decompose { rule, teams, format } => {
            let rule = parse_rule(&rule)?;
            let d = decompose(&rule, teams).map_err(|e| e.to_string())?;
            match format {
                OutputFormat::Json => println!("{}", pretty(&d)?),
                _ => {
                    println!(
                        "x' = {}, y' = {}, z = {}",
                        to_decimal_string(d.x()),
                        to_decimal_string(d.y()),
                        to_decimal_string(d.z())
                    );
                    if d.is_consistent() {
                        println!("consistent: the signature determines the rule on {teams} teams");
                    } else {
                        println!("INCONSISTENT: shares depend on the pair; full table:");
                        for e in d.table().entries() {
                            let outsiders: Vec<String> = e
                                .outsider_shares
                                .iter()
                                .map(|(k, s)| format!("{k}: {}", to_decimal_string(s)))
                                .collect();
                            println!(
                                "  unit ({}, {}): home {}, away {}, {}",
                                e.home,
                                e.away,
                                to_decimal_string(&e.home_share),
                                to_decimal_string(&e.away_share),
                                outsiders.join(", ")
                            );
                        }
                    }
                }
            }
            Ok(if d.is_consistent() { 0 } else { 3 })
        }
        Command::Classify { x, y, teams, format } => {
            let xr = parse_rat(&x).map_err(|e| e.to_string())?;
            let yr = parse_rat(&y).map_err(|e| e.to_string())?;
            if teams < 3 {
                return Err(format!("{teams} teams given, at least 3 required"));
            }
            let c = classify(&xr, &yr, teams);
            match format {
                OutputFormat::Json => println!("{}", pretty(&c)?),
                _ => {
                    println!(
                        "signature x' = {}, y' = {}, z = {} ({} teams)",
                        to_decimal_string(&c.x),
                        to_decimal_string(&c.y),
                        to_decimal_string(&c.z),
                        teams
                    );
                    if c.memberships.is_empty() {
                        println!("no family region contains this signature");
                    }
                    for m in &c.memberships {
                        match &m.lambda {
                            Some(l) => println!(
                                "{:<18} lambda = {:<8} [{}]",
                                m.family.to_string(),
                                to_decimal_string(l),
                                m.characterization
                            ),
                            None => println!("{:<18} {:<17} [{}]", m.family.to_string(), "", m.characterization),
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Example => {
            print_example();
            Ok(0)
        }
        Command::Compare { rule_a, rule_b, gen, format } => {
            let a = parse_rule(&rule_a)?;
            let b = parse_rule(&rule_b)?;
            let cfg = gen.to_config();
            let outcome = equivalent(&a, &b, &cfg).map_err(|e| e.to_string())?;
            match &outcome {
                Equivalence::Same { trials } => {
                    match format {
                        OutputFormat::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&serde_json::json!({
                                "outcome": "same",
                                "trials": trials,
                                "unit_tables": format!("match for {}..={} teams", cfg.n_min, cfg.n_max),
                            }))
                            .map_err(|e| e.to_string())?
                        ),
                        _ => println!(
                            "same: unit tables match for {}..={} teams and no difference in {} trials",
                            cfg.n_min, cfg.n_max, trials
                        ),
                    }
                    Ok(0)
                }
                Equivalence::Differs { problem, team, left, right } => {
                    match format {
                        OutputFormat::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&serde_json::json!({
                                "outcome": "differ",
                                "team": team.0,
                                "left": to_token(left),
                                "right": to_token(right),
                                "problem": problem_to_json_value(problem),
                            }))
                            .map_err(|e| e.to_string())?
                        ),
                        _ => {
                            println!(
                                "differ on team {team}: {} vs {}",
                                to_decimal_string(left),
                                to_decimal_string(right)
                            );
                            print!("{}", indent(&problem_to_csv(problem)));
                        }
                    }
                    Ok(2)
                }
            }
        }
    }
}

fn parse_rule(name: &str) -> Result<Rule, String> {
    let spec = RuleSpec::parse(name).map_err(|e| e.to_string())?;
    Rule::new(spec).map_err(|e| e.to_string())
}

fn parse_axioms(names: &[String]) -> Result<Vec<AxiomId>, String> {
    if names.is_empty() || names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(AxiomId::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| n.parse::<AxiomId>().map_err(|e| e.to_string()))
        .collect()
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn team_names(problem: &Problem) -> Vec<String> {
    match problem.labels() {
        Some(labels) => labels.to_vec(),
        None => problem.teams().map(|t| format!("Team {t}")).collect(),
    }
}

fn render_share(share: &Rat, places: Option<u32>) -> String {
    match places {
        Some(p) => to_fixed_string(share, p),
        None => to_decimal_string(share),
    }
}

fn print_allocations(
    problem: &Problem,
    evaluated: &[(String, broadcast_sharing::Allocation)],
    format: Format,
    places: Option<u32>,
) {
    let names = team_names(problem);
    match format {
        Format::Table => {
            let mut rows = Vec::new();
            for (rule, allocation) in evaluated {
                let mut row = vec![rule.clone()];
                row.extend(allocation.shares().iter().map(|s| render_share(s, places)));
                rows.push(row);
            }
            let mut header = vec!["Rule".to_string()];
            header.extend(names);
            print!("{}", table(&header, &rows));
        }
        Format::Csv => {
            println!("rule,{}", names.join(","));
            for (rule, allocation) in evaluated {
                let cells: Vec<String> =
                    allocation.shares().iter().map(|s| render_share(s, places)).collect();
                println!("{rule},{}", cells.join(","));
            }
        }
        Format::Json => {
            let allocations: Vec<serde_json::Value> = evaluated
                .iter()
                .map(|(rule, allocation)| {
                    serde_json::json!({
                        "rule": rule,
                        "shares": allocation.shares().iter().map(to_token).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "teams": names,
                "total": to_token(&problem.total()),
                "allocations": allocations,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("report JSON"));
        }
    }
}

fn print_instance(instance: &broadcast_sharing::AxiomInstance) {
    use broadcast_sharing::AxiomInstance::*;
    match instance {
        Relabeling { problem, sigma } => {
            println!("problem:");
            print!("{}", indent(&problem_to_csv(problem)));
            let images: Vec<String> = sigma.as_slice().iter().map(|i| i.to_string()).collect();
            println!("relabeling: ({})", images.join(", "));
        }
        Sum { left, right } => {
            println!("first problem:");
            print!("{}", indent(&problem_to_csv(left)));
            println!("second problem:");
            print!("{}", indent(&problem_to_csv(right)));
        }
        Pair { problem, pair } => {
            println!("problem:");
            print!("{}", indent(&problem_to_csv(problem)));
            println!("pair: ({}, {})", pair.0, pair.1);
        }
        TeamCase { problem, team } => {
            println!("problem:");
            print!("{}", indent(&problem_to_csv(problem)));
            println!("team: {team}");
        }
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

/// Right-aligns every column except the first.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in rows {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: &[String]| {
        let mut line = String::new();
        for (k, cell) in cells.iter().enumerate() {
            if k > 0 {
                line.push_str("  ");
            }
            if k == 0 {
                line.push_str(&format!("{:<width$}", cell, width = widths[0]));
            } else {
                line.push_str(&format!("{:>width$}", cell, width = widths[k]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit(header);
    for row in rows {
        emit(row);
    }
    out
}

fn print_example() {
    let problem =
        Problem::from_ints(&[&[0, 1200, 1030], &[750, 0, 140], &[630, 210, 0]]).unwrap();
    let names = team_names(&problem);

    println!("Worked example: three teams");
    println!();
    let mut matrix_rows = Vec::new();
    for i in problem.teams() {
        let mut row = vec![format!("Team {i}")];
        row.extend(problem.teams().map(|j| to_decimal_string(problem.entry(i, j))));
        matrix_rows.push(row);
    }
    let mut matrix_header = vec![String::new()];
    matrix_header.extend(names.clone());
    print!("{}", table(&matrix_header, &matrix_rows));
    println!();
    println!("Total audience: {}", to_decimal_string(&problem.total()));
    let claims: Vec<String> = problem.claims().iter().map(to_decimal_string).collect();
    println!("Claims: {}", claims.join(", "));

    let section = |title: &str, first_column: &str, rules: &[(&str, &str)]| {
        println!();
        println!("{title}");
        let mut header = vec![first_column.to_string()];
        header.extend(names.clone());
        let rows: Vec<Vec<String>> = rules
            .iter()
            .map(|(label, rule_name)| {
                let rule = Rule::new(RuleSpec::parse(rule_name).unwrap()).unwrap();
                let allocation = rule.evaluate(&problem).unwrap();
                let mut row = vec![label.to_string()];
                row.extend(allocation.shares().iter().map(to_decimal_string));
                row
            })
            .collect();
        print!("{}", table(&header, &rows));
    };

    section(
        "Focal rules",
        "Rule",
        &[("uniform", "uniform"), ("equal-split", "equal-split"), ("cd", "cd")],
    );
    section(
        "Generalized split rules",
        "lambda",
        &[
            ("0", "gsplit:0"),
            ("0.2", "gsplit:0.2"),
            ("1", "gsplit:1"),
            ("4", "gsplit:4"),
        ],
    );
    section(
        "General rules",
        "(x,y,z)",
        &[
            ("(0.5,0.2,0.1)", "general:0.5,0.2,0.1"),
            ("(1,3,-1)", "general:1,3,-1"),
        ],
    );
    section(
        "Convex families at lambda = 0.5",
        "Rule",
        &[("ec", "ec:0.5"), ("uc", "uc:0.5"), ("ue", "ue:0.5")],
    );
}
