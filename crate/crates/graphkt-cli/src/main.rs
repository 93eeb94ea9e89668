//! Command-line front end: graph ingestion, ideal-lattice listing, K-theory
//! computation, six-term reports, witness/oracle runs, and regeneration of
//! the worked example families.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use graphkt::corpus::{family_e, family_f};
use graphkt::report::{group_report, six_term_report, GroupReport};
use graphkt::sixterm::decompose;
use graphkt::toeplitz::{
    build_vpu, gap_residue, index_oracle, verify_four_identities, witness_report, WitnessIndex,
};
use graphkt::*;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "graphkt",
    about = "K-theory of graph C*-algebras: ideal lattices, six-term exact sequences, and index maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    E,
    F,
}

#[derive(Subcommand)]
enum Command {
    /// List all admissible pairs (H, S) with the ideal-lattice order
    Ideals {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Validate the pairs in parallel
        #[arg(long)]
        parallel: bool,
    },
    /// K-groups of the (relative) graph algebra
    Kgroups {
        file: PathBuf,
        /// Relative set of regular vertices; defaults to all regular vertices
        #[arg(long, value_delimiter = ',')]
        relset: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The six-term exact sequence of the ideal I_(H,S)
    Sixterm {
        file: PathBuf,
        /// Saturated hereditary vertex set H (comma separated names)
        #[arg(long = "H", value_delimiter = ',', default_value = "")]
        h: Vec<String>,
        /// Breaking vertices S ⊆ B_H (comma separated names)
        #[arg(long = "S", value_delimiter = ',', default_value = "")]
        s: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Witness computation for a kernel vector over a relative set
    Witness {
        file: PathBuf,
        /// Relative set of regular vertices (comma separated names)
        #[arg(long, value_delimiter = ',')]
        relset: Vec<String>,
        /// Kernel vector coordinates, one per relset vertex, in the given order
        #[arg(long = "x", value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the index-map matrix against the symbolic defect computation
    Oracle {
        file: PathBuf,
        #[arg(long = "H", value_delimiter = ',', default_value = "")]
        h: Vec<String>,
        #[arg(long = "S", value_delimiter = ',', default_value = "")]
        s: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Regenerate the worked example families as graph JSON
    Examples {
        #[arg(long, value_enum)]
        family: Family,
        /// Parameter values or inclusive ranges a..b, one entry per parameter
        /// (three for family E, two for family F)
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
}

enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Graph::from_json(&text).map_err(CliError::input)
}

fn resolve_vertices(g: &Graph, names: &[String]) -> Result<VertexSet, CliError> {
    let mut out = VertexSet::new();
    for name in names {
        if name.is_empty() {
            continue;
        }
        let v = g
            .vertex_index(name)
            .ok_or_else(|| CliError::Input(format!("unknown vertex {name:?}")))?;
        out.insert(v);
    }
    Ok(out)
}

fn name_list(g: &Graph, ids: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    ids.into_iter().map(|v| g.vertex_name(v).to_string()).collect()
}

fn format_group(r: &GroupReport) -> String {
    let mut parts: Vec<String> =
        r.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
    match r.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        n => parts.push(format!("Z^{n}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ideals { file, format, parallel } => cmd_ideals(&file, format, parallel),
        Command::Kgroups { file, relset, format } => cmd_kgroups(&file, relset, format),
        Command::Sixterm { file, h, s, format } => cmd_sixterm(&file, &h, &s, format),
        Command::Witness { file, relset, x, format } => cmd_witness(&file, &relset, &x, format),
        Command::Oracle { file, h, s, format } => cmd_oracle(&file, &h, &s, format),
        Command::Examples { family, params } => cmd_examples(family, &params),
    }
}

fn cmd_ideals(file: &PathBuf, format: Format, parallel: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let pairs = g.admissible_pairs();
    if parallel {
        // the core is pure, so validating every pair concurrently is safe
        let failures: Vec<String> = pairs
            .par_iter()
            .filter_map(|p| p.validate(&g).err().map(|e| e.to_string()))
            .collect();
        if let Some(msg) = failures.first() {
            return Err(CliError::Verification(msg.clone()));
        }
    }
    let hasse = hasse_edges(&pairs);
    let condition_k = g.condition_k();
    match format {
        Format::Json => {
            let payload = json!({
                "condition_k": condition_k,
                "all_ideals_gauge_invariant": condition_k,
                "pairs": pairs.iter().enumerate().map(|(i, p)| json!({
                    "index": i,
                    "h": name_list(&g, p.h().iter().copied()),
                    "s": name_list(&g, p.s().iter().copied()),
                })).collect::<Vec<_>>(),
                "hasse": hasse,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Text => {
            println!(
                "condition_K: {condition_k}{}",
                if condition_k { " (all ideals of C*(E) are gauge invariant)" } else { "" }
            );
            println!("admissible pairs: {}", pairs.len());
            for (i, p) in pairs.iter().enumerate() {
                println!(
                    "{i}: H={{{}}} S={{{}}}",
                    name_list(&g, p.h().iter().copied()).join(","),
                    name_list(&g, p.s().iter().copied()).join(",")
                );
            }
            for (a, b) in &hasse {
                println!("cover: {a} < {b}");
            }
        }
    }
    Ok(())
}

fn hasse_edges(pairs: &[AdmissiblePair]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, a) in pairs.iter().enumerate() {
        for (j, b) in pairs.iter().enumerate() {
            if i == j || !a.le(b) || b.le(a) {
                continue;
            }
            let covered = pairs.iter().enumerate().any(|(k, c)| {
                k != i && k != j && a.le(c) && c.le(b) && !c.le(a) && !b.le(c)
            });
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn cmd_kgroups(
    file: &PathBuf,
    relset: Option<Vec<String>>,
    format: Format,
) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let rg = match relset {
        None => RelativeGraph::full(g),
        Some(names) => {
            let set = resolve_vertices(&g, &names)?;
            RelativeGraph::new(g, set).map_err(CliError::input)?
        }
    };
    let kg = kgroups(&rg);
    let k0 = group_report(&kg.k0).map_err(CliError::input)?;
    let k1 = group_report(&kg.k1).map_err(CliError::input)?;
    let matrix = kg
        .matrix
        .to_i64_rows()
        .ok_or_else(|| CliError::Input("matrix entry exceeds i64".into()))?;
    match format {
        Format::Json => {
            let payload = json!({
                "matrix": matrix,
                "rows": name_list(rg.graph(), graphkt::sixterm::kgroup_row_order(&rg)),
                "columns": name_list(rg.graph(), rg.relset_ordered()),
                "k0": k0,
                "k1": k1,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Text => {
            println!("matrix [A^t - I; alpha^t] (rows relset first): {matrix:?}");
            println!("K0: {}", format_group(&k0));
            println!("K1: {}", format_group(&k1));
        }
    }
    Ok(())
}

fn admissible_pair_from_names(
    g: &Graph,
    h: &[String],
    s: &[String],
) -> Result<AdmissiblePair, CliError> {
    let h = resolve_vertices(g, h)?;
    let s = resolve_vertices(g, s)?;
    AdmissiblePair::new(g, h, s).map_err(CliError::input)
}

fn cmd_sixterm(file: &PathBuf, h: &[String], s: &[String], format: Format) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let pair = admissible_pair_from_names(&g, h, s)?;
    let seq = build_six_term(&g, &pair).map_err(CliError::input)?;
    let exact = verify_exactness(&seq).map_err(CliError::input)?;
    let report = six_term_report(&seq, &exact).map_err(CliError::input)?;
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            println!("K0(ideal):    {}", format_group(&report.groups.k0_ideal));
            println!("K0(full):     {}", format_group(&report.groups.k0_full));
            println!("K0(quotient): {}", format_group(&report.groups.k0_quot));
            println!("K1(ideal):    {}", format_group(&report.groups.k1_ideal));
            println!("K1(full):     {}", format_group(&report.groups.k1_full));
            println!("K1(quotient): {}", format_group(&report.groups.k1_quot));
            println!("partial1 lift: {:?}", report.maps.partial1.matrix);
            println!(
                "exact at k0_ideal={} k0_full={} k0_quot={} k1_ideal={} k1_full={} k1_quot={}",
                report.exactness.k0_ideal,
                report.exactness.k0_full,
                report.exactness.k0_quot,
                report.exactness.k1_ideal,
                report.exactness.k1_full,
                report.exactness.k1_quot
            );
            println!("partial0_zero: {}", report.partial0_zero);
        }
    }
    if !exact.all_exact() {
        return Err(CliError::Verification(
            "six-term sequence failed an exactness check".into(),
        ));
    }
    Ok(())
}

fn cmd_witness(
    file: &PathBuf,
    relset_names: &[String],
    x: &[i64],
    format: Format,
) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let relset = resolve_vertices(&g, relset_names)?;
    if x.len() != relset.len() {
        return Err(CliError::Input(format!(
            "x has {} coordinates for {} relset vertices",
            x.len(),
            relset.len()
        )));
    }
    // x arrives in the order the names were given; store by vertex
    let mut by_vertex = std::collections::BTreeMap::new();
    let mut seen = VertexSet::new();
    for (name, &value) in relset_names.iter().filter(|n| !n.is_empty()).zip(x) {
        let v = g.vertex_index(name).unwrap();
        if !seen.insert(v) {
            return Err(CliError::Input(format!("vertex {name:?} listed twice")));
        }
        by_vertex.insert(v, value);
    }
    let rg = RelativeGraph::new(g, relset).map_err(CliError::input)?;
    let ordered: Vec<i64> = rg.relset_ordered().iter().map(|v| by_vertex[v]).collect();
    let w = WitnessIndex::new(&rg, &ordered).map_err(CliError::input)?;
    let (v_mat, p_mat, _u) = build_vpu(&rg, &w);
    let residue = gap_residue(&rg, &w, &v_mat, &p_mat).map_err(CliError::input)?;
    let report = witness_report(rg.graph(), &w, &residue, None);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Text => {
            println!("h: {}", report.h);
            println!("residue_vector: {:?}", report.residue_vector);
        }
    }
    if !verify_four_identities(&rg, &w, &v_mat, &p_mat) {
        return Err(CliError::Verification("witness identities failed".into()));
    }
    if residue != ordered {
        return Err(CliError::Verification(
            "gap residue does not reproduce the kernel vector".into(),
        ));
    }
    Ok(())
}

fn cmd_oracle(file: &PathBuf, h: &[String], s: &[String], format: Format) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let pair = admissible_pair_from_names(&g, h, s)?;
    let dec = decompose(&g, &pair).map_err(CliError::input)?;
    let quotient = dec.quotient_matrix();
    let kernel = kernel_basis(&quotient);
    let k0_ideal = FgGroup::cokernel(dec.ideal_matrix());
    let index_matrix = dec.index_map_matrix();

    // the witness lives over the quotient graph; translate the kernel
    // coordinates to its relative-set order
    let qrg = g.quotient_relative_graph(&pair);
    let domain = dec.quotient_domain();
    let relset_original: Vec<VertexId> = qrg
        .relset_ordered()
        .iter()
        .map(|&qv| g.vertex_index(qrg.graph().vertex_name(qv)).unwrap())
        .collect();

    let mut rows = Vec::new();
    let mut all_agree = true;
    for j in 0..kernel.cols() {
        let col = kernel.column(j);
        let x: Vec<i64> = col
            .iter()
            .map(i64::try_from)
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Input("kernel vector exceeds i64".into()))?;
        let matrix_class = index_matrix.mul_vec(&col);
        let oracle_class = index_oracle(&g, &pair, &x).map_err(CliError::input)?;
        let agree = k0_ideal.reduce(&matrix_class) == k0_ideal.reduce(&oracle_class);
        all_agree &= agree;

        let xq: Vec<i64> = relset_original
            .iter()
            .map(|orig| x[domain.iter().position(|d| d == orig).unwrap()])
            .collect();
        let w = WitnessIndex::new(&qrg, &xq).map_err(CliError::input)?;
        let (v_mat, p_mat, _u) = build_vpu(&qrg, &w);
        let residue = gap_residue(&qrg, &w, &v_mat, &p_mat).map_err(CliError::input)?;
        let report =
            witness_report(qrg.graph(), &w, &residue, Some(bigints_to_i64(&oracle_class)?));
        rows.push(json!({
            "x": x,
            "matrix_class": bigints_to_i64(&matrix_class)?,
            "agree": agree,
            "witness": report,
        }));
    }
    let payload = json!({
        "kernel_rank": kernel.cols(),
        "vectors": rows,
        "all_agree": all_agree,
    });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&payload).unwrap()),
        Format::Text => {
            println!("kernel rank: {}", kernel.cols());
            println!("all_agree: {all_agree}");
        }
    }
    if !all_agree {
        return Err(CliError::Verification(
            "index-map oracle disagrees with the matrix formula".into(),
        ));
    }
    Ok(())
}

fn bigints_to_i64(v: &[BigInt]) -> Result<Vec<i64>, CliError> {
    v.iter()
        .map(i64::try_from)
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input("class entry exceeds i64".into()))
}

fn parse_param_values(raw: &str) -> Result<Vec<u64>, CliError> {
    if let Some((a, b)) = raw.split_once("..") {
        let a: u64 = a.trim().parse().map_err(CliError::input)?;
        let b: u64 = b.trim().parse().map_err(CliError::input)?;
        if a > b {
            return Err(CliError::Input(format!("empty range {raw:?}")));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![raw.trim().parse().map_err(CliError::input)?])
    }
}

fn cmd_examples(family: Family, params: &[String]) -> Result<(), CliError> {
    let arity = match family {
        Family::E => 3,
        Family::F => 2,
    };
    if params.len() != arity {
        return Err(CliError::Input(format!(
            "family {} takes {arity} parameters, got {}",
            match family {
                Family::E => "E",
                Family::F => "F",
            },
            params.len()
        )));
    }
    let values: Vec<Vec<u64>> = params
        .iter()
        .map(|p| parse_param_values(p))
        .collect::<Result<_, _>>()?;
    let mut combos: Vec<Vec<u64>> = vec![vec![]];
    for axis in &values {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                axis.iter().map(move |&v| {
                    let mut c2 = c.clone();
                    c2.push(v);
                    c2
                })
            })
            .collect();
    }
    let graph_json = |combo: &[u64]| -> String {
        match family {
            Family::E => family_e(combo[0], combo[1], combo[2]).to_json(),
            Family::F => family_f(combo[0], combo[1]).to_json(),
        }
    };
    if combos.len() == 1 {
        println!("{}", graph_json(&combos[0]));
    } else {
        let entries: Vec<serde_json::Value> = combos
            .iter()
            .map(|c| {
                let raw: Box<serde_json::value::RawValue> =
                    serde_json::from_str(&graph_json(c)).unwrap();
                json!({
                    "family": match family { Family::E => "E", Family::F => "F" },
                    "params": c,
                    "graph": raw,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries).unwrap());
    }
    Ok(())
}
