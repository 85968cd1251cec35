use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use coincidence::arith::DEFAULT_FACTOR_LIMIT;
use coincidence::class23;
use coincidence::counting;
use coincidence::lattice::csm_index_for_word;
use coincidence::splitting::{self, SymmetryOrder};
use coincidence::windows;
use coincidence::words::{self, OmegaStore, RotationWord, WordJson};
use coincidence::Error;

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "coincidence", version, about = "Coincidence indices of N-fold symmetric lattices and modules")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Seed for randomized sampling
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Allow inputs above the factorization guard
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime splitting by residue class and the basic indices
    Spectrum {
        #[arg(short)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Leading nonzero terms of the Dirichlet series of f
    Series {
        #[arg(short)]
        n: u64,
        #[arg(short = 'k', long, default_value_t = 12)]
        count: usize,
    },
    /// Number of coincidence site modules (f) and rotations (f-hat) of index m
    Count {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        m: u64,
    },
    /// One rotation word per coincidence site module of index <= bound
    Enumerate {
        #[arg(short)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Compare the index formula with the lattice computation for a word
    Oracle { word_file: PathBuf },
    /// Acceptance factor of a regular polygonal window
    Accept {
        #[arg(long)]
        n_gon: Option<u64>,
        #[arg(long, conflicts_with = "word_file", allow_hyphen_values = true)]
        psi: Option<f64>,
        #[arg(long)]
        word_file: Option<PathBuf>,
        /// Sample this many seeded random angles instead
        #[arg(long, conflicts_with_all = ["psi", "word_file"])]
        samples: Option<usize>,
    },
    /// The 46-fold case
    N23 {
        #[command(subcommand)]
        command: N23Command,
    },
}

#[derive(Subcommand, Debug)]
enum N23Command {
    /// P1/P2 classification of a prime
    Classify { p: u64 },
    /// Whether m is a coincidence index
    Index { m: u64 },
    /// Leading reflection indices of the non-principal modules
    Reflections {
        #[arg(short = 'k', long, default_value_t = 3)]
        count: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DelegatedToClassNumber(_)
            | Error::UnsupportedClassNumber(_)
            | Error::UnsupportedCase(_)
            | Error::NotTabulated(_) => 3,
            Error::SearchExhausted { .. } | Error::Singular | Error::RankMismatch(..) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<String, Failure>;

fn order(n: u64) -> Result<SymmetryOrder, Failure> {
    let o = SymmetryOrder::normalize(n)?;
    if o.was_normalized_from(n) {
        eprintln!("note: n = {n} describes the same module as n = {}; using n = {}", o.n(), o.n());
    }
    Ok(o)
}

fn envelope(command: &str, body: Value) -> String {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn spectrum(fmt: Format, n: u64, bound: u64) -> Outcome {
    let o = order(n)?;
    let table = splitting::residue_table(&o);
    let basics = splitting::splitting_primes(&o, bound);
    Ok(match fmt {
        Format::Json => envelope(
            "spectrum",
            json!({
                "n": o.n(),
                "big_n": o.big_n(),
                "residues": table,
                "basic_indices": basics.iter().map(|&(p, q, pairs)| json!({"p": p, "index": q, "pairs": pairs})).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let mut s = String::from("residue,representative,deg_k,deg_l,splitting\n");
            for e in &table {
                writeln!(s, "{},{},{},{},{}", e.residue, e.representative, e.deg_k, e.deg_l, e.splitting).unwrap();
            }
            s
        }
        Format::Plain => {
            let mut s = format!("n = {} (N = {})\n", o.n(), o.big_n());
            writeln!(s, "{:>8} {:>6} {:>6} {:>6}  splitting", "residue", "p", "deg_K", "deg_L").unwrap();
            for e in &table {
                writeln!(
                    s,
                    "{:>8} {:>6} {:>6} {:>6}  {}",
                    e.residue,
                    e.representative,
                    e.deg_k,
                    e.deg_l,
                    if e.splitting { "yes" } else { "no" }
                )
                .unwrap();
            }
            let list: Vec<String> = basics.iter().map(|&(_, q, _)| q.to_string()).collect();
            writeln!(s, "basic indices <= {bound}: {}", list.join(", ")).unwrap();
            s
        }
    })
}

fn render_table(fmt: Format, command: &str, n: u64, table: &counting::DirichletTable) -> String {
    match fmt {
        Format::Json => envelope(command, json!({ "n": n, "terms": table.to_json() })),
        Format::Csv => table.to_csv(),
        Format::Plain => format!("{}\n", table.to_series_string()),
    }
}

fn series(fmt: Format, n: u64, count: usize) -> Outcome {
    let o = order(n)?;
    let table = if o.n() == 23 {
        class23::series_23(count)?
    } else if o.is_cn1() {
        counting::dirichlet_terms(&o, count)?
    } else {
        return Err(Error::UnsupportedClassNumber(o.n()).into());
    };
    Ok(render_table(fmt, "series", o.n(), &table))
}

fn count(fmt: Format, force: bool, n: u64, m: u64) -> Outcome {
    if m == 0 {
        return Err(usage("m must be positive"));
    }
    if m > DEFAULT_FACTOR_LIMIT && !force {
        return Err(Error::TooLarge {
            value: m,
            limit: DEFAULT_FACTOR_LIMIT,
        }
        .into());
    }
    let o = order(n)?;
    let (f, big_n) = if o.n() == 23 {
        (class23::f_23(m)?, class23::BIG_N_23)
    } else if o.is_cn1() {
        let limit = if force { u64::MAX } else { DEFAULT_FACTOR_LIMIT };
        (counting::f_with_limit(&o, m, limit)?, o.big_n())
    } else {
        return Err(Error::UnsupportedClassNumber(o.n()).into());
    };
    let fhat = f as u128 * big_n as u128;
    Ok(match fmt {
        Format::Json => envelope("count", json!({"n": o.n(), "m": m, "f": f, "fhat": fhat.to_string()})),
        Format::Csv => format!("n,m,f,fhat\n{},{m},{f},{fhat}\n", o.n()),
        Format::Plain => format!("{f}\n"),
    })
}

fn enumerate(fmt: Format, n: u64, bound: u64) -> Outcome {
    let o = order(n)?;
    let list = words::enumerate_rotations(&o, bound)?;
    let store = OmegaStore::build(&o, bound)?;
    let reports = list
        .iter()
        .map(|w| words::rotation_report(&store, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match fmt {
        Format::Json => envelope("enumerate", json!({"n": o.n(), "bound": bound, "rotations": reports})),
        Format::Csv => {
            let mut s = String::from("sigma,angle_radians,word\n");
            for (w, r) in list.iter().zip(&reports) {
                writeln!(s, "{},{:.15},{}", r.sigma, r.angle_radians, word_label(w)).unwrap();
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for (w, r) in list.iter().zip(&reports) {
                writeln!(s, "{:>8}  {:>+.12}  {}", r.sigma, r.angle_radians, word_label(w)).unwrap();
            }
            s
        }
    })
}

fn word_label(w: &RotationWord) -> String {
    if w.exponents().is_empty() {
        return "1".into();
    }
    w.exponents()
        .iter()
        .map(|(&(p, pair), &e)| format!("{p}.{pair}^{e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_word(path: &PathBuf) -> Result<RotationWord, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let json: WordJson =
        serde_json::from_str(&text).map_err(|e| usage(format!("malformed word file: {e}")))?;
    Ok(RotationWord::from_json(&json)?)
}

fn store_for(w: &RotationWord) -> Result<OmegaStore, Failure> {
    let primes: Vec<u64> = w.exponents().keys().map(|&(p, _)| p).collect();
    Ok(OmegaStore::for_primes(&w.order(), &primes)?)
}

fn oracle(fmt: Format, path: &PathBuf) -> Outcome {
    let w = read_word(path)?;
    if !w.order().is_cn1() {
        return Err(Error::DelegatedToClassNumber(w.n()).into());
    }
    let store = store_for(&w)?;
    let sigma = words::sigma(&w)?;
    let oracle = csm_index_for_word(&store, &w)?;
    let ok = sigma == oracle;
    let out = match fmt {
        Format::Json => envelope(
            "oracle",
            json!({"word": w.to_json(), "sigma": sigma.to_string(), "oracle": oracle.to_string(), "ok": ok}),
        ),
        Format::Csv => format!("sigma,oracle,ok\n{sigma},{oracle},{ok}\n"),
        Format::Plain => format!("sigma={sigma} oracle={oracle} {}\n", if ok { "OK" } else { "MISMATCH" }),
    };
    if ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure {
            code: 4,
            message: "index formula and lattice computation disagree".into(),
        })
    }
}

fn accept_row(n_gon: u64, psi: f64) -> Result<(f64, f64, f64, f64), Failure> {
    let formula = windows::acceptance_ngon(n_gon, psi)?;
    let clipped = windows::polygon_overlap_area(n_gon, psi)?;
    Ok((windows::psi_hat(n_gon, psi), formula, clipped, formula - clipped))
}

fn accept(
    fmt: Format,
    seed: u64,
    n_gon: Option<u64>,
    psi: Option<f64>,
    word_file: Option<PathBuf>,
    samples: Option<usize>,
) -> Outcome {
    let mut rows = Vec::new();
    let n_gon = if let Some(path) = word_file {
        let w = read_word(&path)?;
        let store = store_for(&w)?;
        let (_, psi) = windows::word_internal_angle(&store, &w)?;
        let n_gon = n_gon.unwrap_or(w.n());
        rows.push((psi, accept_row(n_gon, psi)?));
        n_gon
    } else {
        let n_gon = n_gon.ok_or_else(|| usage("--n-gon is required unless --word-file is given"))?;
        if let Some(k) = samples {
            for psi in sample_angles(seed, k) {
                rows.push((psi, accept_row(n_gon, psi)?));
            }
        } else {
            let psi = psi.ok_or_else(|| usage("one of --psi, --word-file or --samples is required"))?;
            rows.push((psi, accept_row(n_gon, psi)?));
        }
        n_gon
    };
    Ok(match fmt {
        Format::Json => envelope(
            "accept",
            json!({
                "n_gon": n_gon,
                "rows": rows.iter().map(|&(psi, (h, a, c, d))| json!({
                    "psi": psi, "psi_hat": h, "formula": a, "clipping": c, "difference": d
                })).collect::<Vec<_>>(),
            }),
        ),
        _ => {
            let mut s = String::new();
            if fmt == Format::Csv {
                s.push_str("psi,psi_hat,formula,clipping,difference\n");
            }
            for (psi, (h, a, c, d)) in rows {
                if fmt == Format::Csv {
                    writeln!(s, "{psi:.15},{h:.15},{a:.15},{c:.15},{d:.3e}").unwrap();
                } else {
                    writeln!(s, "psi={psi:.12} psi_hat={h:.12} A={a:.12} clipping={c:.12} diff={d:+.3e}").unwrap();
                }
            }
            s
        }
    })
}

/// Seeded angles in `[0, 2 pi)`; ChaCha keeps the stream reproducible.
fn sample_angles(seed: u64, k: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect()
}

fn n23(fmt: Format, command: N23Command) -> Outcome {
    match command {
        N23Command::Classify { p } => {
            let c = class23::classify_p23(p)?;
            Ok(match fmt {
                Format::Json => envelope("n23 classify", serde_json::to_value(&c).unwrap()),
                Format::Csv => format!("p,kind,d,pairs\n{},{:?},{},{}\n", c.p, c.kind, c.d, c.pairs),
                Format::Plain => format!("{} {:?} d={} pairs={}\n", c.p, c.kind, c.d, c.pairs),
            })
        }
        N23Command::Index { m } => {
            let is = class23::is_index_23(m)?;
            let f = class23::f_23(m)?;
            let r = class23::reflection_count_23(m)?;
            Ok(match fmt {
                Format::Json => envelope(
                    "n23 index",
                    json!({"m": m, "is_index": is, "f": f, "fhat": f * class23::BIG_N_23, "nonprincipal_reflections": r}),
                ),
                Format::Csv => format!("m,is_index,f,fhat,nonprincipal_reflections\n{m},{is},{f},{},{r}\n", f * class23::BIG_N_23),
                Format::Plain => format!("{m}: index={is} f={f} fhat={} reflections(non-principal)={r}\n", f * class23::BIG_N_23),
            })
        }
        N23Command::Reflections { count } => {
            let (min, mult) = class23::min_reflection_index_nonprincipal()?;
            let list = class23::reflection_indices_23(count)?;
            Ok(match fmt {
                Format::Json => envelope(
                    "n23 reflections",
                    json!({"min_index": min, "min_count": mult, "indices": list}),
                ),
                Format::Csv => {
                    let mut s = String::from("index,count\n");
                    for m in list {
                        writeln!(s, "{m},{}", class23::reflection_count_23(m)?).unwrap();
                    }
                    s
                }
                Format::Plain => {
                    let l: Vec<String> = list.iter().map(ToString::to_string).collect();
                    format!("min {min} ({mult})\n{}\n", l.join(", "))
                }
            })
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Spectrum { n, bound } => spectrum(fmt, n, bound),
        Command::Series { n, count } => series(fmt, n, count),
        Command::Count { n, m } => count(fmt, cli.force, n, m),
        Command::Enumerate { n, bound } => enumerate(fmt, n, bound),
        Command::Oracle { word_file } => oracle(fmt, &word_file),
        Command::Accept {
            n_gon,
            psi,
            word_file,
            samples,
        } => accept(fmt, cli.seed, n_gon, psi, word_file, samples),
        Command::N23 { command } => n23(fmt, command),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
