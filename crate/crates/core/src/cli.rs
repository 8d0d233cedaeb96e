//! The `pdef` command line: file IO, text and JSON output, exit codes and
//! run manifests.
//!
//! Exit codes: 0 success, 1 gate not met (or certificate rejected), 2
//! invalid input, 3 inconclusive (coset budget exhausted).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::abelian::{abelian_invariants, p_rank, relation_matrix, smith_normal_form};
use crate::arith::{fmt_fraction, Order, Prime};
use crate::certify::{certify, gradient_scan, verify_certificate, CertifyError, Family, Mode, Outcome};
use crate::corpus::{self, Params, FAMILIES};
use crate::enumeration::{low_index, subgroup_counts, todd_coxeter, ClaimKind, Enumeration, WitnessQuotient};
use crate::presentations::{classify, load_claims, profile_relators, Presentation, RelatorClaim};
use crate::rewriting::{simplify, subgroup_presentation_text, RewriteMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_GATE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pdef", version, about = "p-deficiency tools for finitely presented groups")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write a run manifest (inputs, outputs, digests) to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deficiency, p-deficiency and (with claims) residual deficiency.
    Pdef {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        claims: Option<PathBuf>,
    },
    /// Root and p-root data of every relator.
    Roots {
        file: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, requires = "prime")]
        claims: Option<PathBuf>,
    },
    /// Conjugacy classes of subgroups of small index.
    Subgroups {
        file: PathBuf,
        #[arg(long)]
        max_index: usize,
        #[arg(long)]
        normal: bool,
    },
    /// Reidemeister–Schreier presentation of a finite-index subgroup.
    Rewrite {
        file: PathBuf,
        /// Comma-separated generator words, or `@table.json`.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        orbit_reduced: bool,
        #[arg(long)]
        simplify: bool,
        /// Coset budget for enumeration from generator words.
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Abelian invariants of the presented group.
    Abelian {
        file: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Rank-gradient scan over subgroups of small index.
    Gradient {
        file: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        max_index: usize,
        #[arg(long)]
        normal: bool,
    },
    /// Check a theorem gate and emit certificates.
    Certify {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        claims: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CliMode::Rg)]
        mode: CliMode,
        /// Directory for the certificate files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate file.
    Verify { cert: PathBuf },
    /// Example families.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    List,
    /// Emit one entry: `corpus emit bs_quotient m=2 n=3 p=2`.
    Emit {
        family: String,
        params: Vec<String>,
        /// Write `<stem>.pres` and `<stem>.claims.json` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        stem: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliMode {
    Rg,
    Plarge,
    PdefOne,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Rg => Mode::Rg,
            CliMode::Plarge => Mode::Plarge,
            CliMode::PdefOne => Mode::PdefOne,
        }
    }
}

/// Record of one invocation. Replaying `arguments` on the same inputs
/// reproduces the recorded output digests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub version: String,
    /// sha256 of every file read, by path.
    pub inputs: BTreeMap<String, String>,
    /// sha256 of stdout and of every file written.
    pub outputs: BTreeMap<String, String>,
    pub exit_code: i32,
    pub wall_time_ms: u128,
}

impl RunManifest {
    /// Re-runs the recorded arguments and compares every output digest.
    pub fn replay(&self) -> bool {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["pdef".to_string()];
        argv.extend(self.arguments.iter().cloned());
        let (code, io) = run_inner(argv.into_iter().map(OsString::from), &mut out, &mut err);
        let Some(io) = io else { return false };
        let mut outputs = io.outputs;
        outputs.insert("stdout".into(), sha256_hex(&out));
        code == self.exit_code && outputs == self.outputs && io.inputs == self.inputs
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    msg: String,
}

fn invalid(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INVALID, msg: msg.to_string() }
}

#[derive(Default)]
struct Io {
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl Io {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes).map_err(|_| invalid(format!("{}: not UTF-8", path.display())))
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<(), Failure> {
        std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        self.outputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(())
    }

    fn presentation(&mut self, path: &Path) -> Result<Presentation, Failure> {
        let text = self.read(path)?;
        Presentation::parse(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    fn claims(&mut self, q: &Presentation, p: Prime, path: Option<&Path>) -> Result<Vec<RelatorClaim>, Failure> {
        let Some(path) = path else { return Ok(Vec::new()) };
        let text = self.read(path)?;
        load_claims(q, p, &text, path.parent()).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(invalid)
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_inner(args, out, err).0
}

fn run_inner<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> (i32, Option<Io>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return (code, None);
        }
    };
    let start = Instant::now();
    let mut io = Io::default();
    let mut buf = String::new();
    let code = match execute(&cli, &mut io, &mut buf) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    };
    let _ = out.write_all(buf.as_bytes());
    if let Some(path) = &cli.manifest {
        let mut outputs = io.outputs.clone();
        outputs.insert("stdout".into(), sha256_hex(buf.as_bytes()));
        let manifest = RunManifest {
            command: command_name(&cli.command).into(),
            arguments: strip_manifest(&argv[1..]),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs: io.inputs.clone(),
            outputs,
            exit_code: code,
            wall_time_ms: start.elapsed().as_millis(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return (EXIT_INVALID, Some(io));
        }
    }
    (code, Some(io))
}

fn strip_manifest(args: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        let s = a.to_string_lossy().into_owned();
        if skip {
            skip = false;
        } else if s == "--manifest" {
            skip = true;
        } else if !s.starts_with("--manifest=") {
            out.push(s);
        }
    }
    out
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Pdef { .. } => "pdef",
        Command::Roots { .. } => "roots",
        Command::Subgroups { .. } => "subgroups",
        Command::Rewrite { .. } => "rewrite",
        Command::Abelian { .. } => "abelian",
        Command::Gradient { .. } => "gradient",
        Command::Certify { .. } => "certify",
        Command::Verify { .. } => "verify",
        Command::Corpus { .. } => "corpus",
    }
}

fn emit_json(out: &mut String, v: &serde_json::Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("json"));
    out.push('\n');
}

fn execute(cli: &Cli, io: &mut Io, out: &mut String) -> Result<i32, Failure> {
    match &cli.command {
        Command::Pdef { file, prime: p, claims } => cmd_pdef(cli.json, io, out, file, *p, claims.as_deref()),
        Command::Roots { file, prime: p, claims } => cmd_roots(cli.json, io, out, file, *p, claims.as_deref()),
        Command::Subgroups { file, max_index, normal } => {
            let q = io.presentation(file)?;
            let recs = low_index(&q, *max_index, *normal);
            let counts = subgroup_counts(&recs, *max_index);
            if cli.json {
                let classes: Vec<_> = recs
                    .iter()
                    .map(|r| {
                        json!({
                            "index": r.index,
                            "normal": r.is_normal,
                            "conjugates": r.conjugates,
                            "generators": r.generators.iter().map(|w| q.word_text(w)).collect::<Vec<_>>(),
                            "table": r.table.rows(),
                        })
                    })
                    .collect();
                emit_json(out, &json!({ "max_index": max_index, "normal_only": normal, "counts": counts, "classes": classes }));
            } else {
                for r in &recs {
                    let gens: Vec<String> = r.generators.iter().map(|w| q.word_text(w)).collect();
                    let _ = writeln!(
                        out,
                        "index {} {} conjugates {}: <{}>",
                        r.index,
                        if r.is_normal { "normal" } else { "non-normal" },
                        r.conjugates,
                        gens.join(", ")
                    );
                }
                let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "counts: {}", counts.join(" "));
            }
            Ok(EXIT_OK)
        }
        Command::Rewrite { file, subgroup, orbit_reduced, simplify: simp, max_cosets } => {
            let q = io.presentation(file)?;
            let table = if let Some(path) = subgroup.strip_prefix('@') {
                let text = io.read(Path::new(path))?;
                let w: WitnessQuotient = serde_json::from_str(&text).map_err(|e| invalid(format!("{path}: {e}")))?;
                w.load(&q).map_err(|e| invalid(format!("{path}: {e}")))?
            } else {
                let gens = subgroup
                    .split(',')
                    .map(|s| s.trim())
                    .filter(|s| !s.is_empty())
                    .map(|s| q.parse_word(s))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(invalid)?;
                match todd_coxeter(&q, &gens, *max_cosets).map_err(invalid)? {
                    Enumeration::Complete(t) => t,
                    Enumeration::Inconclusive { cosets_defined } => {
                        return Err(Failure {
                            code: EXIT_INCONCLUSIVE,
                            msg: format!("coset enumeration exhausted its budget after {cosets_defined} cosets"),
                        })
                    }
                }
            };
            let mode = if *orbit_reduced { RewriteMode::OrbitReduced } else { RewriteMode::Full };
            let text = subgroup_presentation_text(&q, &table, mode).map_err(invalid)?;
            let h = Presentation::parse(&text).map_err(invalid)?;
            let h = if *simp { simplify(&h) } else { h };
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "index": table.index(),
                        "mode": if *orbit_reduced { "orbit_reduced" } else { "full" },
                        "generators": h.generator_count(),
                        "relators": h.relators().len(),
                        "presentation": if *simp { h.to_text() } else { text },
                    }),
                );
            } else if *simp {
                out.push_str(&h.to_text());
            } else {
                out.push_str(&text);
            }
            Ok(EXIT_OK)
        }
        Command::Abelian { file, prime: p } => {
            let q = io.presentation(file)?;
            let inv = abelian_invariants(&q);
            let p = p.map(prime).transpose()?;
            let rank = p.map(|p| p_rank(&q, p));
            if cli.json {
                let m = relation_matrix(&q);
                let snf = smith_normal_form(&m);
                emit_json(
                    out,
                    &json!({
                        "invariants": inv,
                        "relation_matrix": m,
                        "smith_diagonal": snf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                        "prime": p.map(|p| p.get()),
                        "p_rank": rank,
                    }),
                );
            } else {
                let _ = writeln!(out, "abelianization: {inv}");
                let t: Vec<String> = inv.torsion.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "torsion: {}", t.join(" "));
                let _ = writeln!(out, "betti: {}", inv.betti);
                if let (Some(p), Some(r)) = (p, rank) {
                    let _ = writeln!(out, "d_{p} = {r}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Gradient { file, prime: p, max_index, normal } => {
            if *max_index == 0 {
                return Err(invalid("--max-index must be at least 1"));
            }
            let q = io.presentation(file)?;
            let p = p.map(prime).transpose()?;
            let family = if *normal { Family::Normal } else { Family::All };
            let scan = gradient_scan(&q, p, *max_index, family).map_err(invalid)?;
            if cli.json {
                emit_json(out, &scan.to_json());
            } else {
                for r in &scan.records {
                    let _ = writeln!(
                        out,
                        "index {} {} rank [{}, {}] quotient {} upper {}",
                        r.index,
                        if r.is_normal { "normal" } else { "non-normal" },
                        r.rank_lower,
                        r.rank_upper,
                        fmt_fraction(&r.quotient),
                        fmt_fraction(&r.upper_quotient)
                    );
                }
                let _ = writeln!(out, "{}: {}", scan.label(), fmt_fraction(&scan.infimum));
            }
            Ok(EXIT_OK)
        }
        Command::Certify { file, prime: p, claims, mode, out: dir } => {
            let q = io.presentation(file)?;
            let p = prime(*p)?;
            let claims = io.claims(&q, p, claims.as_deref())?;
            let outcome = match certify(&q, p, &claims, (*mode).into()) {
                Ok(o) => o,
                Err(CertifyError::NotPdefOne(d)) => Outcome::NotCertified {
                    failed: "def_p(Q) = 1".into(),
                    detail: format!("def_p(Q) = {d}"),
                },
                Err(e) => return Err(invalid(e)),
            };
            match outcome {
                Outcome::Certified(certs) => {
                    let mut paths = Vec::new();
                    if let Some(dir) = dir {
                        std::fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
                        for c in &certs {
                            let name = serde_json::to_value(c.claim).expect("claim").as_str().expect("string").to_string();
                            let path = dir.join(format!("{name}.json"));
                            io.write(&path, &c.to_json())?;
                            paths.push(path.display().to_string());
                        }
                    }
                    if cli.json {
                        let values: Vec<_> = certs.iter().map(|c| serde_json::to_value(c).expect("cert")).collect();
                        emit_json(out, &json!({ "certified": true, "certificates": values, "files": paths }));
                    } else {
                        for (i, c) in certs.iter().enumerate() {
                            let status = serde_json::to_value(c.status).expect("status");
                            let claim = serde_json::to_value(c.claim).expect("claim");
                            let _ = write!(
                                out,
                                "certified {} ({}) def_p = {}",
                                claim.as_str().unwrap_or_default(),
                                status.as_str().unwrap_or_default(),
                                c.payload.def_p
                            );
                            if let Some(b) = c.payload.branch {
                                let _ = write!(out, " branch {b}");
                            }
                            if let Some(path) = paths.get(i) {
                                let _ = write!(out, " -> {path}");
                            }
                            out.push('\n');
                        }
                    }
                    Ok(EXIT_OK)
                }
                Outcome::NotCertified { failed, detail } => {
                    if cli.json {
                        emit_json(out, &json!({ "certified": false, "failed": failed, "detail": detail }));
                    } else {
                        let _ = writeln!(out, "not certified: hypothesis `{failed}` fails ({detail})");
                    }
                    Ok(EXIT_GATE)
                }
            }
        }
        Command::Verify { cert } => {
            let text = io.read(cert)?;
            let ok = verify_certificate(&text).map_err(invalid)?;
            if cli.json {
                emit_json(out, &json!({ "valid": ok }));
            } else {
                let _ = writeln!(out, "{}", if ok { "valid" } else { "invalid" });
            }
            Ok(if ok { EXIT_OK } else { EXIT_GATE })
        }
        Command::Corpus { action } => cmd_corpus(cli.json, io, out, action),
    }
}

fn cmd_pdef(
    json_out: bool,
    io: &mut Io,
    out: &mut String,
    file: &Path,
    p: u64,
    claims: Option<&Path>,
) -> Result<i32, Failure> {
    let q = io.presentation(file)?;
    let p = prime(p)?;
    let claims = io.claims(&q, p, claims)?;
    let def = q.deficiency();
    let def_p = q.p_deficiency(p).map_err(invalid)?;
    let profiles = profile_relators(&q, p, &claims).map_err(invalid)?;
    let orders: Option<Vec<Order>> = profiles
        .iter()
        .map(|prof| match &prof.k {
            Some(k) if k.kind != ClaimKind::StrictlyLess => Some(Order::Finite(k.value)),
            _ => None,
        })
        .collect();
    let rdef = orders.map(|o| q.residual_deficiency(&o)).transpose().map_err(invalid)?;
    // a lower bound whenever some k claim is only a lower bound
    let rdef_exact = profiles.iter().all(|prof| prof.k.as_ref().is_some_and(|k| k.kind == ClaimKind::Exact));
    if json_out {
        emit_json(
            out,
            &json!({
                "generators": q.generator_count(),
                "relators": q.relators().len(),
                "prime": p.get(),
                "def": fmt_fraction(&def),
                "def_p": fmt_fraction(&def_p),
                "rdef": rdef.as_ref().map(fmt_fraction),
                "rdef_exact": rdef.is_some() && rdef_exact,
            }),
        );
    } else {
        let _ = writeln!(out, "def = {}", fmt_fraction(&def));
        let _ = writeln!(out, "def_p = {}", fmt_fraction(&def_p));
        match &rdef {
            Some(r) if rdef_exact => {
                let _ = writeln!(out, "rdef = {}", fmt_fraction(r));
            }
            Some(r) => {
                let _ = writeln!(out, "rdef >= {}", fmt_fraction(r));
            }
            None => {
                let _ = writeln!(out, "rdef = undetermined (no k claim for some proper power)");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_roots(
    json_out: bool,
    io: &mut Io,
    out: &mut String,
    file: &Path,
    p: Option<u64>,
    claims: Option<&Path>,
) -> Result<i32, Failure> {
    let q = io.presentation(file)?;
    let mut rows = Vec::new();
    let p = p.map(prime).transpose()?;
    let (profiles, classes) = match p {
        Some(p) => {
            let claims = io.claims(&q, p, claims)?;
            let profiles = profile_relators(&q, p, &claims).map_err(invalid)?;
            let classes = classify(&profiles, p).ok().map(|c| c.classes);
            (Some(profiles), classes)
        }
        None => (None, None),
    };
    for (i, r) in q.relators().iter().enumerate() {
        let root = r.primitive_root().map_err(|_| invalid(format!("relator {i} is empty")))?;
        let mut row = json!({
            "relator": i,
            "word": q.word_text(r),
            "root": q.word_text(&root.root),
            "multiplicity": root.multiplicity,
        });
        if let (Some(p), Some(profiles)) = (p, &profiles) {
            let prof = &profiles[i];
            let claim = |c: &Option<crate::enumeration::OrderClaim>| {
                c.as_ref().map(|c| {
                    let kind = match c.kind {
                        ClaimKind::Exact => "=",
                        ClaimKind::AtLeast => ">=",
                        ClaimKind::StrictlyLess => "<",
                    };
                    let src = if c.is_witnessed() { "witness" } else { "asserted" };
                    format!("{kind} {} ({src})", c.value)
                })
            };
            row["p_root"] = json!(q.word_text(&prof.p_root));
            row["p_exponent"] = json!(prof.p_exponent);
            row["p_part"] = json!(prof.p_part(p));
            row["k"] = json!(claim(&prof.k));
            row["l"] = json!(claim(&prof.l));
            row["class"] = json!(classes.as_ref().map(|c| c[i]));
        }
        rows.push(row);
    }
    if json_out {
        emit_json(out, &json!({ "prime": p.map(|p| p.get()), "relators": rows }));
        return Ok(EXIT_OK);
    }
    for row in &rows {
        let _ = write!(
            out,
            "r{}: {}  root {}  m = {}",
            row["relator"], row["word"].as_str().unwrap_or(""), row["root"].as_str().unwrap_or(""), row["multiplicity"]
        );
        if p.is_some() {
            let s = |k: &str| match &row[k] {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Null => "?".into(),
                v => v.to_string(),
            };
            let _ = write!(out, "  p-root {}  p^a = {}  k {}  l {}  class {}", s("p_root"), s("p_part"), s("k"), s("l"), s("class"));
        }
        out.push('\n');
    }
    Ok(EXIT_OK)
}

fn cmd_corpus(json_out: bool, io: &mut Io, out: &mut String, action: &CorpusAction) -> Result<i32, Failure> {
    match action {
        CorpusAction::List => {
            if json_out {
                let v: Vec<_> = FAMILIES.iter().map(|(n, p)| json!({ "family": n, "params": p })).collect();
                emit_json(out, &json!(v));
            } else {
                for (n, p) in FAMILIES {
                    let _ = writeln!(out, "{n:<18} {p}");
                }
            }
            Ok(EXIT_OK)
        }
        CorpusAction::Emit { family, params, out_dir, stem } => {
            let params = Params::parse(params).map_err(invalid)?;
            let entry = corpus::make(family, params).map_err(invalid)?;
            entry.check().map_err(invalid)?;
            let text = entry.to_text();
            let claims = entry.claims_json() + "\n";
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
                let stem = stem.clone().unwrap_or_else(|| family.clone());
                io.write(&dir.join(format!("{stem}.pres")), &text)?;
                io.write(&dir.join(format!("{stem}.claims.json")), &claims)?;
            }
            if json_out {
                let g = &entry.goldens;
                let claims_value: serde_json::Value = serde_json::from_str(&claims).expect("claims json");
                emit_json(
                    out,
                    &json!({
                        "name": entry.name,
                        "prime": entry.prime.get(),
                        "presentation": text,
                        "claims": claims_value,
                        "goldens": {
                            "def_p": g.def_p.as_ref().map(fmt_fraction),
                            "derived_def_p": g.derived_def_p.as_ref().map(fmt_fraction),
                            "rdef": g.rdef.as_ref().map(fmt_fraction),
                        },
                    }),
                );
            } else {
                out.push_str(&text);
            }
            Ok(EXIT_OK)
        }
    }
}
