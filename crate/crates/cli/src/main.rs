//! `magnus`: command-line access to Fox derivatives, flows, the Magnus
//! embedding, geodesic lengths, BFS oracles and the QI campaign.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use magnus_core::{
    bfs_geodesic_oracle_fn, bfs_geodesic_oracle_wreath, equal_in_solvable, flow_of_word, fox_jacobian,
    geodesic_report, magnus_embed, run_campaign, wreath_length_circuit, wreath_length_walk, BaseGroup,
    CampaignConfig, Config, Error, KernelCaps, Lattice, SolvableGroup, Word, WreathGroup,
};

#[derive(Parser)]
#[command(name = "magnus", version, about = "Free metabelian and free solvable groups via the Magnus embedding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Number of generators r.
    #[arg(long)]
    rank: usize,
    /// Solvability degree d; the base group is S_(d-1,r).
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum points for the exact tour kernel.
    #[arg(long, default_value_t = KernelCaps::default().tour_points)]
    kernel_cap: usize,
    /// Maximum terminal groups for the exact Steiner kernel.
    #[arg(long, default_value_t = KernelCaps::default().forest_groups)]
    forest_cap: usize,
}

impl Common {
    fn caps(&self) -> KernelCaps {
        KernelCaps {
            tour_points: self.kernel_cap,
            forest_groups: self.forest_cap,
            ..KernelCaps::default()
        }
    }

    fn word(&self, text: &str) -> Result<Word, Error> {
        Word::parse(text, self.rank)
    }

    fn config(&self) -> Result<Config, Error> {
        Config::new(self.rank, self.degree)
    }

    /// Rejects degrees other than 2 for commands that need `B = Z^r`.
    fn lattice(&self) -> Result<Lattice, Error> {
        if self.degree != 2 {
            return Err(Error::Degree { degree: self.degree, min: 2 });
        }
        Lattice::new(self.rank)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Projected Fox derivatives of a word.
    Derive {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Flow of a word on the Cayley graph of the base group.
    Flow {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Magnus embedding of a word into Z^r wr B.
    Embed {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Geodesic lengths in F/N' and in the wreath product (degree 2).
    Length {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// A geodesic word equal to the input in F/N' (degree 2).
    GeodesicWord {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Whether two words are equal in S_(d,r).
    Wordproblem {
        #[command(flatten)]
        common: Common,
        u: String,
        v: String,
    },
    /// BFS oracle lengths (degree 2).
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        oracle_radius: usize,
        word: String,
    },
    /// Seeded quasi-isometry campaign over random reduced words.
    VerifyQi {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// BFS cross-check radius; 0 disables the oracles.
        #[arg(long, default_value_t = 6)]
        oracle_radius: usize,
    },
}

enum Failure {
    Input(Error),
    Capacity(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e)
        } else {
            Failure::Input(e)
        }
    }
}

/// A CSV table: header then rows. Group elements go in as compact JSON.
struct Table {
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

fn cell<T: Serialize + ?Sized>(v: &T) -> String {
    match serde_json::to_value(v).expect("serializable") {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String, table: impl FnOnce() -> Table) {
    match format {
        Format::Json => {
            let sorted = serde_json::to_value(value).expect("serializable");
            println!("{}", serde_json::to_string_pretty(&sorted).expect("serializable"))
        }
        Format::Text => println!("{}", text()),
        Format::Csv => {
            let t = table();
            let mut out = csv::Writer::from_writer(std::io::stdout());
            out.write_record(t.header).expect("stdout");
            for row in t.rows {
                out.write_record(row).expect("stdout");
            }
            out.flush().expect("stdout");
        }
    }
}

/// Runs `f` against the base group `S_(d-1,r)`, which is `Z^r` at degree 2.
macro_rules! with_base {
    ($common:expr, |$base:ident| $body:expr) => {{
        let cfg = $common.config()?;
        if cfg.degree < 2 {
            return Err(Error::Degree { degree: cfg.degree, min: 2 }.into());
        }
        if cfg.degree == 2 {
            let $base = Lattice::new(cfg.rank)?;
            $body
        } else {
            let $base = SolvableGroup::new(Config { degree: cfg.degree - 1, ..cfg });
            $body
        }
    }};
}

fn derive_cmd<G: BaseGroup>(common: &Common, w: &Word, base: G) -> Result<(), Failure>
where
    G::Element: Serialize,
{
    let jac = fox_jacobian(w, &base)?;
    let derivatives: Vec<_> = jac
        .iter()
        .enumerate()
        .map(|(i, d)| json!({ "gen": i + 1, "derivative": d }))
        .collect();
    let out = json!({ "word": w, "derivatives": derivatives });
    emit(&out, common.format, || {
        jac.iter()
            .enumerate()
            .map(|(i, d)| format!("d/dx{}: {}", i + 1, serde_json::to_string(d).unwrap()))
            .collect::<Vec<_>>()
            .join("\n")
    }, || Table {
        header: &["gen", "at", "coeff"],
        rows: jac
            .iter()
            .enumerate()
            .flat_map(|(i, d)| d.iter().map(move |(b, c)| vec![(i + 1).to_string(), cell(b), c.to_string()]))
            .collect(),
    });
    Ok(())
}

fn flow_cmd<G: BaseGroup>(common: &Common, w: &Word, base: G) -> Result<(), Failure>
where
    G::Element: Serialize,
{
    let f = flow_of_word(w, &base);
    emit(&json!({ "word": w, "flow": f }), common.format, || serde_json::to_string(&f).unwrap(), || Table {
        header: &["base", "gen", "flow"],
        rows: f
            .iter()
            .map(|(k, v)| vec![cell(&k.base), (k.gen + 1).to_string(), v.to_string()])
            .collect(),
    });
    Ok(())
}

fn embed_cmd<G: BaseGroup>(common: &Common, w: &Word, base: G) -> Result<(), Failure>
where
    G::Element: Serialize,
{
    let e = magnus_embed(w, &base);
    emit(&json!({ "word": w, "embedding": e }), common.format, || serde_json::to_string(&e).unwrap(), || {
        let mut rows = vec![vec!["shadow".to_string(), String::new(), cell(&e.shadow)]];
        rows.extend(e.lamps().map(|(b, a)| vec!["lamp".to_string(), cell(b), cell(a)]));
        Table {
            header: &["kind", "at", "value"],
            rows,
        }
    });
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Derive { common, word } => {
            let w = common.word(&word)?;
            with_base!(common, |base| derive_cmd(&common, &w, base))
        }
        Command::Flow { common, word } => {
            let w = common.word(&word)?;
            with_base!(common, |base| flow_cmd(&common, &w, base))
        }
        Command::Embed { common, word } => {
            let w = common.word(&word)?;
            with_base!(common, |base| embed_cmd(&common, &w, base))
        }
        Command::Length { common, word } => {
            let base = common.lattice()?;
            let w = common.word(&word)?;
            let caps = common.caps();
            let report = geodesic_report(&w, &base, &caps)?;
            let e = magnus_embed(&w, &base);
            let circuit = wreath_length_circuit(&e, caps.tour_points)?;
            let walk = wreath_length_walk(&e, caps.tour_points)?;
            let out = json!({
                "input": w,
                "lengthFN": report.length,
                "sumFlow": report.sum_flow,
                "qEdges": report.q_edges,
                "sumLamps": e.sum_lamp_costs(),
                "wreathCircuit": circuit,
                "wreathWalk": walk,
            });
            emit(
                &out,
                common.format,
                || format!("FN {} wreath(circuit) {} wreath(walk) {}", report.length, circuit, walk),
                || Table {
                    header: &["input", "lengthFN", "sumFlow", "qEdges", "sumLamps", "wreathCircuit", "wreathWalk"],
                    rows: vec![vec![
                        w.to_string(),
                        report.length.to_string(),
                        report.sum_flow.to_string(),
                        report.q_edges.to_string(),
                        e.sum_lamp_costs().to_string(),
                        circuit.to_string(),
                        walk.to_string(),
                    ]],
                },
            );
            Ok(())
        }
        Command::GeodesicWord { common, word } => {
            let base = common.lattice()?;
            let w = common.word(&word)?;
            let report = geodesic_report(&w, &base, &common.caps())?;
            emit(&report, common.format, || report.geodesic.to_string(), || Table {
                header: &["input", "length", "sumFlow", "qEdges", "geodesic"],
                rows: vec![vec![
                    report.input.to_string(),
                    report.length.to_string(),
                    report.sum_flow.to_string(),
                    report.q_edges.to_string(),
                    report.geodesic.to_string(),
                ]],
            });
            Ok(())
        }
        Command::Wordproblem { common, u, v } => {
            let cfg = common.config()?;
            let equal = equal_in_solvable(&common.word(&u)?, &common.word(&v)?, cfg);
            println!("{equal}");
            Ok(())
        }
        Command::Oracle { common, oracle_radius, word } => {
            let base = common.lattice()?;
            let w = common.word(&word)?;
            let fn_len = bfs_geodesic_oracle_fn(&w, common.rank, oracle_radius);
            let wr_len = bfs_geodesic_oracle_wreath(&magnus_embed(&w, &base), &WreathGroup::new(base), oracle_radius);
            let out = json!({ "input": w, "radius": oracle_radius, "fn": fn_len, "wreath": wr_len });
            emit(
                &out,
                common.format,
                || format!("FN {} wreath {}", json!(fn_len), json!(wr_len)),
                || Table {
                    header: &["input", "radius", "fn", "wreath"],
                    rows: vec![vec![w.to_string(), oracle_radius.to_string(), cell(&fn_len), cell(&wr_len)]],
                },
            );
            Ok(())
        }
        Command::VerifyQi { common, seed, samples, max_len, oracle_radius } => {
            let cfg = CampaignConfig {
                rank: common.rank,
                degree: common.degree,
                samples,
                max_len,
                seed,
                oracle_radius,
                caps: common.caps(),
            };
            let report = run_campaign(&cfg)?;
            match common.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => print!("{}", report.to_csv()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.summary.passed {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "{} inequality violations, {} oracle mismatches",
                    report.summary.violations.total(),
                    report.summary.oracle_mismatches
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(3);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Capacity(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
