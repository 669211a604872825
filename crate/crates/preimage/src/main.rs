//! Command-line front end: build reversible hash circuits as text netlists,
//! verify them against software references, estimate fault-tolerant attack
//! costs, and tabulate search-advantage figures.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use preimage::counts::{count_resources, CountAccumulator, ResourceCounts};
use preimage::ftcost::{
    estimate_attack, sha256_reference_counts, sha3_256_reference_counts, CostReport, GroverParams,
    PhysicalParams,
};
use preimage::keccak;
use preimage::lower;
use preimage::search;
use preimage::sha256;
use preimage::textio;

#[derive(Parser)]
#[command(
    name = "preimage",
    version,
    about = "Reversible hash circuits and fault-tolerant pre-image search cost estimation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a reversible hash circuit and write it as a text netlist.
    Build(BuildArgs),
    /// Run a hash circuit against its software reference on test vectors.
    Verify(VerifyArgs),
    /// Estimate the fault-tolerant cost of a full pre-image search.
    Estimate(EstimateArgs),
    /// Tabulate quantum search advantage and crossover points.
    Advantage(AdvantageArgs),
}

/// Hash functions with circuit builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CircuitHash {
    Sha256,
    Sha3_256,
}

/// Hash selector for the estimator: built circuits or custom counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimateHash {
    Sha256,
    Sha3_256,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct BuildArgs {
    /// Hash function to build.
    #[arg(long, value_enum)]
    hash: CircuitHash,
    /// Output netlist path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Hash function to verify.
    #[arg(long, value_enum)]
    hash: CircuitHash,
    /// Vector file: one `input expected` hex pair per line, `#` comments,
    /// `-` for an empty input. Without it a built-in suite runs.
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Seed for the built-in random vectors.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of built-in random vectors.
    #[arg(long, default_value_t = 10)]
    count: usize,
}

#[derive(Args)]
struct EstimateArgs {
    /// Hash function, or `custom` to pass counts by flag.
    #[arg(long, value_enum)]
    hash: EstimateHash,
    /// Pre-image bit length.
    #[arg(long, default_value_t = 256)]
    k: u32,
    /// Injection error probability of raw magic states.
    #[arg(long, default_value_t = 1e-4)]
    p_in: f64,
    /// Physical gate error probability (default: p_in / 10).
    #[arg(long)]
    p_g: Option<f64>,
    /// Distillation balance parameter.
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Surface-code cycle time in nanoseconds.
    #[arg(long, default_value_t = 200.0)]
    cycle_ns: f64,
    /// Use the published optimized gate counts (T-depth-optimized compiler
    /// output) instead of counting the locally built circuits.
    #[arg(long)]
    paper_counts: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    custom: CustomCounts,
}

/// Per-invocation counts for `--hash custom`.
#[derive(Args)]
struct CustomCounts {
    /// T gates per hash invocation.
    #[arg(long)]
    t_count: Option<u64>,
    /// T layers per hash invocation.
    #[arg(long)]
    t_depth: Option<u64>,
    /// Logical qubits occupied by the hash circuit.
    #[arg(long)]
    logical_qubits: Option<u64>,
    /// CNOT gates per hash invocation.
    #[arg(long, default_value_t = 0)]
    cnot: u64,
    /// Hadamard gates per hash invocation.
    #[arg(long, default_value_t = 0)]
    hadamard: u64,
    /// Phase gates (P and P-dagger) per hash invocation.
    #[arg(long, default_value_t = 0)]
    phase: u64,
    /// Pauli-Z gates per hash invocation.
    #[arg(long, default_value_t = 0)]
    pauli_z: u64,
    /// Pauli-X gates per hash invocation.
    #[arg(long, default_value_t = 0)]
    pauli_x: u64,
}

#[derive(Args)]
struct AdvantageArgs {
    /// Print the classical-crossover key sizes instead of the grid.
    #[arg(long)]
    crossover: bool,
    /// Evaluate a single grid cell, given as `v,c` (overhead exponent and
    /// log2 cost budget).
    #[arg(long)]
    cell: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Build(args) => cmd_build(&args).map(|()| ExitCode::SUCCESS),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Estimate(args) => cmd_estimate(&args).map(|()| ExitCode::SUCCESS),
        Cmd::Advantage(args) => cmd_advantage(&args).map(|()| ExitCode::SUCCESS),
    }
}

fn cmd_build(args: &BuildArgs) -> Result<()> {
    let file = File::create(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let mut w = BufWriter::new(file);
    let gates = match args.hash {
        CircuitHash::Sha256 => {
            let (circuit, _) = sha256::build_sha256();
            textio::write_circuit(&mut w, &circuit)?;
            circuit.gates().len() as u64
        }
        CircuitHash::Sha3_256 => {
            let circuit = keccak::build_components();
            w = circuit.write_text(w)?;
            circuit.gate_len()
        }
    };
    w.flush()?;
    println!("wrote {} ({} gates)", args.out.display(), gates);
    Ok(())
}

/// One parsed verification vector: input bytes and the expected output.
struct Vector {
    input: Vec<u8>,
    expected: Vec<u8>,
}

fn parse_vectors(path: &Path) -> Result<Vec<Vector>> {
    let file =
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut vectors = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(input), Some(expected), None) =
            (tokens.next(), tokens.next(), tokens.next())
        else {
            bail!("{}:{}: expected `input expected`", path.display(), idx + 1);
        };
        let input = if input == "-" {
            Vec::new()
        } else {
            hex::decode(input)
                .with_context(|| format!("{}:{}: bad input hex", path.display(), idx + 1))?
        };
        let expected = hex::decode(expected)
            .with_context(|| format!("{}:{}: bad expected hex", path.display(), idx + 1))?;
        vectors.push(Vector { input, expected });
    }
    Ok(vectors)
}

/// 25 little-endian lanes from a 200-byte state.
fn lanes_from_bytes(bytes: &[u8]) -> Result<[u64; 25]> {
    if bytes.len() != 200 {
        bail!("state must be 200 bytes, got {}", bytes.len());
    }
    let mut lanes = [0u64; 25];
    for (i, chunk) in bytes.chunks_exact(8).enumerate() {
        lanes[i] = u64::from_le_bytes(chunk.try_into().unwrap());
    }
    Ok(lanes)
}

fn bytes_from_lanes(lanes: &[u64; 25]) -> Vec<u8> {
    lanes.iter().flat_map(|l| l.to_le_bytes()).collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (results, expected_from_file): (Vec<(bool, String)>, bool) = match args.hash {
        CircuitHash::Sha256 => {
            let (inputs, expected): (Vec<Vec<u8>>, Vec<Option<Vec<u8>>>) =
                match &args.vectors {
                    Some(path) => parse_vectors(path)?
                        .into_iter()
                        .map(|v| (v.input, Some(v.expected)))
                        .unzip(),
                    None => {
                        let mut inputs = vec![b"abc".to_vec(), Vec::new(), vec![0u8; 32]];
                        for _ in 0..args.count {
                            let len = rng.gen_range(0..=55);
                            inputs.push((0..len).map(|_| rng.gen()).collect());
                        }
                        let n = inputs.len();
                        (inputs, vec![None; n])
                    }
                };
            let from_file = expected[0].is_some();
            let outcomes = sha256::verify_sha256(&inputs);
            let rows = outcomes
                .iter()
                .zip(&expected)
                .map(|(r, want)| describe_sha256(r, want.as_deref()))
                .collect();
            (rows, from_file)
        }
        CircuitHash::Sha3_256 => {
            let (states, expected): (Vec<[u64; 25]>, Vec<Option<Vec<u8>>>) =
                match &args.vectors {
                    Some(path) => {
                        let mut states = Vec::new();
                        let mut exp = Vec::new();
                        for v in parse_vectors(path)? {
                            states.push(lanes_from_bytes(&v.input)?);
                            exp.push(Some(v.expected));
                        }
                        (states, exp)
                    }
                    None => {
                        let mut states = vec![[0u64; 25]];
                        for _ in 0..args.count {
                            states.push(std::array::from_fn(|_| rng.gen()));
                        }
                        let n = states.len();
                        (states, vec![None; n])
                    }
                };
            let from_file = expected[0].is_some();
            let outcomes = keccak::verify_keccak_p(&states);
            let rows = outcomes
                .iter()
                .zip(&expected)
                .map(|(r, want)| describe_keccak(r, want.as_deref()))
                .collect();
            (rows, from_file)
        }
    };

    let total = results.len();
    let mut passed = 0usize;
    for (i, (ok, detail)) in results.iter().enumerate() {
        if *ok {
            passed += 1;
            println!("vector {i}: pass");
        } else {
            println!("vector {i}: FAIL: {detail}");
        }
    }
    let source = if expected_from_file { "file" } else { "built-in" };
    println!("{passed}/{total} {source} vectors passed");
    Ok(if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Pass flag and failure detail for one SHA-256 outcome, also checking the
/// circuit digest against an expected value from a vector file.
fn describe_sha256(r: &sha256::Sha256Verify, want: Option<&[u8]>) -> (bool, String) {
    if !r.pass {
        let word = r.first_diff_word.map_or("none".to_string(), |w| w.to_string());
        return (
            false,
            format!(
                "digest {} != reference {} (first differing word {word}, ancillas clean: {})",
                hex::encode(r.digest),
                hex::encode(r.expected),
                r.ancillas_clean
            ),
        );
    }
    if let Some(want) = want {
        if want != r.digest {
            return (
                false,
                format!(
                    "digest {} != expected {}",
                    hex::encode(r.digest),
                    hex::encode(want)
                ),
            );
        }
    }
    (true, String::new())
}

/// Pass flag and failure detail for one permutation outcome, also checking
/// the output state against an expected value from a vector file.
fn describe_keccak(r: &keccak::KeccakVerify, want: Option<&[u8]>) -> (bool, String) {
    if !r.pass {
        let diff = r
            .first_diff
            .map_or("none".to_string(), |(x, y, z)| format!("({x},{y},{z})"));
        let dirty = r
            .dirty_ancilla
            .map_or("none".to_string(), |(x, y, z, round)| {
                format!("({x},{y},{z}) after round {round}")
            });
        return (
            false,
            format!("first differing bit {diff}, dirty temporary bit {dirty}"),
        );
    }
    if let Some(want) = want {
        let got = bytes_from_lanes(&r.output);
        if want != got {
            return (
                false,
                format!(
                    "state {}... != expected {}...",
                    hex::encode(&got[..8]),
                    hex::encode(&want[..want.len().min(8)])
                ),
            );
        }
    }
    (true, String::new())
}

/// Counts of the locally built, lowered SHA-256 circuit.
fn built_sha256_counts() -> Result<GroverParams> {
    let (circuit, layout) = sha256::build_sha256();
    let lowered = lower::lower(&circuit);
    let counts = count_resources(&lowered)?;
    Ok(GroverParams {
        k: 0, // filled by the caller
        hash_counts: counts,
        hash_logical_qubits: layout.width() as u64,
    })
}

/// Counts of the locally built, lowered permutation circuit, streamed gate
/// by gate (the lowered form is ~35M gates).
fn built_sha3_counts() -> Result<GroverParams> {
    let circuit = keccak::build_components();
    let width = circuit.layout().width();
    let mut acc = CountAccumulator::new(width);
    let mut err = None;
    circuit.for_each_gate(|g| {
        lower::lower_gate(g, &mut |lg| {
            if err.is_none() {
                err = acc.push(lg).err();
            }
        })
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    Ok(GroverParams {
        k: 0,
        hash_counts: acc.finish(),
        hash_logical_qubits: width as u64,
    })
}

/// The estimator report plus the provenance of the hash counts it used.
#[derive(Serialize)]
struct LabeledReport<'a> {
    counts_source: &'a str,
    #[serde(flatten)]
    report: &'a CostReport,
}

fn cmd_estimate(args: &EstimateArgs) -> Result<()> {
    let (mut gp, source) = match (args.hash, args.paper_counts) {
        (EstimateHash::Sha256, true) => (sha256_reference_counts(), "reference-optimized"),
        (EstimateHash::Sha3_256, true) => (sha3_256_reference_counts(), "reference-optimized"),
        (EstimateHash::Sha256, false) => (built_sha256_counts()?, "built"),
        (EstimateHash::Sha3_256, false) => (built_sha3_counts()?, "built"),
        (EstimateHash::Custom, _) => {
            let c = &args.custom;
            let (Some(t_count), Some(t_depth), Some(logical_qubits)) =
                (c.t_count, c.t_depth, c.logical_qubits)
            else {
                bail!("--hash custom needs --t-count, --t-depth, and --logical-qubits");
            };
            let counts = ResourceCounts {
                cnot: c.cnot,
                h: c.hadamard,
                p: c.phase,
                z: c.pauli_z,
                x: c.pauli_x,
                t_count,
                t_depth,
                width: logical_qubits.try_into().context("logical qubit count")?,
                ..Default::default()
            };
            (
                GroverParams {
                    k: 0,
                    hash_counts: counts,
                    hash_logical_qubits: logical_qubits,
                },
                "custom",
            )
        }
    };
    gp.k = args.k;

    let pp = PhysicalParams {
        p_in: args.p_in,
        p_g: args.p_g.unwrap_or(args.p_in / 10.0),
        epsilon: args.epsilon,
        t_sc: args.cycle_ns / 1e9,
        ..PhysicalParams::default()
    };
    let report = estimate_attack(&gp, &pp)?;

    let rendered = match args.format {
        Format::Json => {
            let labeled = LabeledReport {
                counts_source: source,
                report: &report,
            };
            let mut s = serde_json::to_string_pretty(&labeled)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = vec![("counts_source".to_string(), source.to_string())];
            flatten_json("", &serde_json::to_value(&report)?, &mut rows);
            let mut s = String::from("field,value\n");
            for (k, v) in rows {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        }
        Format::Text => render_report_text(&report, source),
    };

    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

/// Flatten a JSON value into dotted-key rows; arrays join with `;`.
fn flatten_json(prefix: &str, value: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_json(&key, v, rows);
            }
        }
        serde_json::Value::Array(items) => {
            let joined = items
                .iter()
                .map(render_scalar)
                .collect::<Vec<_>>()
                .join(";");
            rows.push((prefix.to_string(), joined));
        }
        _ => rows.push((prefix.to_string(), render_scalar(value))),
    }
}

fn render_scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_report_text(r: &CostReport, source: &str) -> String {
    let opt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.6}"));
    let mut s = String::new();
    let mut line = |text: String| {
        s.push_str(&text);
        s.push('\n');
    };
    line(format!("counts source:            {source}"));
    line(format!("key size k:               {}", r.k));
    line(format!("hash T-count:             {}", r.hash_t_count));
    line(format!("hash T-depth:             {}", r.hash_t_depth));
    line(format!("logical qubits (hash):    {}", r.n_hash));
    line(format!(
        "Grover iterations:        {} (log2 {:.6})",
        r.grover_iterations, r.log2_grover_iterations
    ));
    line(format!("oracle T-count:           {}", r.t_count_oracle));
    line(format!("iteration T-count:        {}", r.t_count_iteration));
    line(format!(
        "total T-count:            {} (log2 {:.6})",
        r.t_count_total, r.log2_t_count_total
    ));
    line(format!(
        "total T-depth:            {} (log2 {:.6})",
        r.t_depth_total, r.log2_t_depth_total
    ));
    line(format!("T-width:                  {:.4}", r.t_width));
    line(format!("magic-state error target: {:.4e}", r.p_out));
    line(format!(
        "distillation distances:   {:?}",
        r.distillation.distances
    ));
    line(format!(
        "distillation input states:{}",
        r.distillation.input_states
    ));
    line(format!(
        "distillation cycles:      {}",
        r.distillation.total_cycles
    ));
    line(format!(
        "distillation parallelism: {}",
        r.distillation.parallelism
    ));
    line(format!("distilleries:             {}", r.distilleries));
    line(format!("Clifford budget:          {:.4e}", r.clifford_error_budget));
    line(format!("code distance:            {}", r.code_distance));
    line(format!(
        "Clifford cycles/T layer:  {:.4} (T-limited: {})",
        r.clifford_cycles_per_t_layer, r.t_limited
    ));
    line(format!(
        "physical qubits:          {} algorithm + {} factories = {}",
        r.physical_qubits_algorithm, r.physical_qubits_factories, r.physical_qubits_total
    ));
    line(format!(
        "total cycles:             {} (log2 {})",
        r.cycles_total,
        opt(r.log2_cycles_total)
    ));
    line(format!(
        "total cost:               {} logical-qubit-cycles (log2 {})",
        r.total_cost,
        opt(r.log2_total_cost)
    ));
    line(format!("overhead exponent v:      {}", opt(r.overhead_v)));
    line(format!("distillation wall time:   {:.4e} s", r.t_dist_seconds));
    s
}

fn cmd_advantage(args: &AdvantageArgs) -> Result<()> {
    if let Some(cell) = &args.cell {
        let (v, c) = cell
            .split_once(',')
            .context("--cell takes `v,c`, e.g. 0,64")?;
        let v: f64 = v.trim().parse().context("overhead exponent v")?;
        let c: f64 = c.trim().parse().context("budget c")?;
        println!("{:.2}", search::advantage(v, c));
        return Ok(());
    }

    if args.crossover {
        let pairs: Vec<(u32, u64)> = (1..=5).map(|a| (a, search::crossover_k(a))).collect();
        match args.format {
            Format::Json => {
                let obj: Vec<serde_json::Value> = pairs
                    .iter()
                    .map(|(a, k)| serde_json::json!({"overhead_exponent": a, "crossover_k": k}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&obj)?);
            }
            Format::Csv => {
                println!("overhead_exponent,crossover_k");
                for (a, k) in pairs {
                    println!("{a},{k}");
                }
            }
            Format::Text => {
                println!("a  crossover k");
                for (a, k) in pairs {
                    println!("{a}  {k}");
                }
            }
        }
        return Ok(());
    }

    let v_values: Vec<f64> = (0..=5).map(f64::from).collect();
    let c_values: Vec<f64> = (1..=8).map(|i| 16.0 * i as f64).collect();
    let table = search::advantage_table(&v_values, &c_values);
    match args.format {
        Format::Json => {
            let obj = serde_json::json!({
                "overhead_exponents": v_values,
                "log2_budgets": c_values,
                "advantage": table,
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
        Format::Csv => {
            let header: Vec<String> = c_values.iter().map(|c| format!("{c}")).collect();
            println!("v\\c,{}", header.join(","));
            for (v, row) in v_values.iter().zip(&table) {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:.2}")).collect();
                println!("{v},{}", cells.join(","));
            }
        }
        Format::Text => {
            print!("v\\c ");
            for c in &c_values {
                print!("{c:>8}");
            }
            println!();
            for (v, row) in v_values.iter().zip(&table) {
                print!("{v:>3} ");
                for x in row {
                    print!("{x:>8.2}");
                }
                println!();
            }
        }
    }
    Ok(())
}
