mod fileformat;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use malg::bits::BitSet;
use malg::cabl::validate_cabl;
use malg::core::Universe;
use malg::error::{Caps, Error};
use malg::functors::{
    apply_A, apply_P, apply_P_eq, counit_iso, enumerate_ordered_homs, enumerate_ordered_isos,
    enumerate_plain_isos, phi, phi_inv, unit_iso,
};
use malg::monad::{check_associativity_sampled, check_monad_laws, check_naturality_eta_eps, epsilon, eta};
use malg::multialg::{
    check_full_hom, check_hom, enumerate_homs, eval_term_nd, HomMode, Morphism, MultiAlgebra,
};
use malg::ordalg::{check_ordered_hom, eval_term_ord, validate_ordered_algebra, OrderedAlgebra};
use malg::poset::validate_poset;
use malg::variants::{check_mm_hom, check_partial_hom, SetValuedMorphism};
use malg::verdict::Verdict;

use fileformat::{MorphismFile, OrderedFile, Structure};
use report::Report;

#[derive(Parser)]
#[command(name = "malg", about = "Finite multialgebras and ordered algebras", version)]
struct Cli {
    /// Size cap for enumerations and powerset constructions
    #[arg(long, global = true, env = "MALG_CAP")]
    cap: Option<usize>,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContractArg {
    Hom,
    Full,
    Ordered,
    Partial,
    Mm,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Hom,
    Full,
    Iso,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorArg {
    P,
    A,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file against its kind's contract
    Validate { file: PathBuf },
    /// Apply the powerset (p) or atoms (a) construction and print the result
    Functor {
        which: FunctorArg,
        file: PathBuf,
    },
    /// Check one map against a homomorphism contract
    CheckHom {
        #[arg(long, value_enum)]
        contract: ContractArg,
        map: PathBuf,
        src: PathBuf,
        dst: PathBuf,
    },
    /// Enumerate all maps satisfying a contract
    Enumerate {
        #[arg(long, value_enum)]
        contract: ContractArg,
        #[arg(long, value_enum, default_value = "hom")]
        mode: ModeArg,
        src: PathBuf,
        dst: PathBuf,
    },
    /// Verify the unit (multialgebra input) or counit (ordered input) isomorphism
    Roundtrip { file: PathBuf },
    /// Verify the hom-set bijection and its naturality for a pair of structures
    Adjunction { b: PathBuf, a: PathBuf },
    /// Verify the monad laws over one base structure
    Monad { file: PathBuf },
    /// Built-in demonstrations
    Demo {
        #[command(subcommand)]
        what: DemoCommand,
    },
    /// Evaluate a term in a structure under a valuation
    Eval {
        #[arg(long)]
        term: String,
        #[arg(long)]
        val: String,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Two structures distinguishable only through the order on subsets
    Counterexample,
}

enum Failure {
    Usage(String),
    Cap(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match cli.cap {
        Some(n) => Caps::with_limit(n),
        None => Caps::default(),
    };
    let mut report = Report::new(command_echo());
    let outcome = run(&cli.command, &caps, cli.seed, &mut report);
    report.finish();
    // the functor command's stdout is the constructed structure file, so
    // its report goes to stderr
    let report_to_stderr = matches!(cli.command, Command::Functor { .. });
    match outcome {
        Ok(()) => {
            let rendered = if cli.json {
                report.render_json()
            } else {
                report.render_human()
            };
            if report_to_stderr {
                eprint!("{rendered}");
            } else {
                print!("{rendered}");
            }
            if report.all_pass() {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn load(path: &PathBuf) -> Result<Structure, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    fileformat::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn want_multi(s: Structure, path: &PathBuf) -> Result<MultiAlgebra, Failure> {
    match s {
        Structure::Multi(m) => Ok(m),
        other => Err(Failure::Usage(format!(
            "{}: expected kind multialgebra, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

/// Builds the validated ordered algebra from a parsed file; any failed
/// condition is recorded in the report and `None` is returned.
fn build_ordered(o: &OrderedFile, caps: &Caps, report: &mut Report) -> Option<OrderedAlgebra> {
    let poset = match validate_poset(&o.poset.leq) {
        Ok(p) => p,
        Err(v) => {
            report.verdict("order axioms", false, Some(v.to_string()));
            return None;
        }
    };
    report.verdict("order axioms", true, None);
    let cert = match validate_cabl(&poset, caps) {
        Ok(c) => c,
        Err(v) => {
            report.verdict("order conditions", false, Some(v.to_string()));
            return None;
        }
    };
    report.verdict("order conditions", true, None);
    match validate_ordered_algebra(poset, cert, o.sig.clone(), o.tables.clone(), caps) {
        Ok(a) => {
            report.verdict("atom generation", true, None);
            Some(a)
        }
        Err(w) => {
            report.verdict("atom generation", false, Some(w.to_string()));
            None
        }
    }
}

fn want_ordered(
    s: Structure,
    path: &PathBuf,
    caps: &Caps,
    report: &mut Report,
) -> Result<Option<OrderedAlgebra>, Failure> {
    match s {
        Structure::Ordered(o) => Ok(build_ordered(&o, caps, report)),
        other => Err(Failure::Usage(format!(
            "{}: expected kind ordered-algebra, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn want_morphism(s: Structure, path: &PathBuf) -> Result<MorphismFile, Failure> {
    match s {
        Structure::Morphism(m) => Ok(m),
        other => Err(Failure::Usage(format!(
            "{}: expected kind morphism, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn plain_map(m: &MorphismFile) -> Result<Morphism, Failure> {
    let map: Option<Vec<usize>> = m
        .images
        .iter()
        .map(|img| if img.len() == 1 { img.first() } else { None })
        .collect();
    let map = map.ok_or_else(|| {
        Failure::Usage("this contract needs a single-valued map, found a set image".into())
    })?;
    Morphism::new(m.src_labels.len(), m.dst_labels.len(), map).map_err(Failure::from)
}

fn run(cmd: &Command, caps: &Caps, seed: u64, report: &mut Report) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => validate_cmd(file, caps, report),
        Command::Functor { which, file } => functor_cmd(*which, file, caps, report),
        Command::CheckHom {
            contract,
            map,
            src,
            dst,
        } => check_hom_cmd(*contract, map, src, dst, caps, report),
        Command::Enumerate {
            contract,
            mode,
            src,
            dst,
        } => enumerate_cmd(*contract, *mode, src, dst, caps, report),
        Command::Roundtrip { file } => roundtrip_cmd(file, caps, report),
        Command::Adjunction { b, a } => adjunction_cmd(b, a, caps, report),
        Command::Monad { file } => monad_cmd(file, caps, seed, report),
        Command::Demo {
            what: DemoCommand::Counterexample,
        } => demo_cmd(caps, report),
        Command::Eval { term, val, file } => eval_cmd(term, val, file, report),
    }
}

fn validate_cmd(file: &PathBuf, caps: &Caps, report: &mut Report) -> Result<(), Failure> {
    match load(file)? {
        Structure::Multi(m) => {
            // totality and non-emptiness were enforced while parsing
            report.verdict("multialgebra contract", true, None);
            report.count("universe", m.size() as u64);
        }
        Structure::Partial(m) => {
            report.verdict("partial multialgebra contract", true, None);
            report.count("universe", m.size() as u64);
        }
        Structure::Poset(p) => match validate_poset(&p.leq) {
            Ok(poset) => {
                report.verdict("order axioms", true, None);
                match validate_cabl(&poset, caps) {
                    Ok(cert) => {
                        report.verdict("order conditions", true, None);
                        report.count("atoms", cert.atoms.len() as u64);
                    }
                    Err(v) => report.verdict("order conditions", false, Some(v.to_string())),
                }
            }
            Err(v) => report.verdict("order axioms", false, Some(v.to_string())),
        },
        Structure::Ordered(o) => {
            if let Some(a) = build_ordered(&o, caps, report) {
                report.count("carrier", a.carrier_size() as u64);
                report.count("atoms", a.atoms().len() as u64);
            }
        }
        Structure::Morphism(m) => {
            report.verdict("morphism contract", true, None);
            report.count("source", m.src_labels.len() as u64);
        }
        Structure::Term(t) => {
            report.verdict("term contract", true, None);
            report.count("depth", t.term.depth() as u64);
        }
    }
    Ok(())
}

fn subset_labels(u: &Universe, carrier: usize) -> Vec<String> {
    // mask order; labels joined with + so they stay single tokens
    (1..=carrier as u64)
        .map(|mask| {
            BitSet::from_mask(u.size(), mask)
                .iter()
                .map(|i| u.label(i).to_string())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect()
}

fn functor_cmd(
    which: FunctorArg,
    file: &PathBuf,
    caps: &Caps,
    report: &mut Report,
) -> Result<(), Failure> {
    match which {
        FunctorArg::P => {
            let m = want_multi(load(file)?, file)?;
            let p = apply_P(&m, caps)?;
            let labels = subset_labels(m.universe(), p.carrier_size());
            let n = p.carrier_size();
            let leq: Vec<Vec<bool>> = (0..n)
                .map(|a| (0..n).map(|b| p.poset().leq(a, b)).collect())
                .collect();
            let out = Structure::Ordered(OrderedFile {
                poset: fileformat::PosetFile { labels, leq },
                sig: p.signature().clone(),
                tables: (0..p.signature().len()).map(|s| p.table(s).to_vec()).collect(),
            });
            print!("{}", fileformat::print(&out));
            report.verdict("powerset construction", true, None);
            report.count("carrier", n as u64);
        }
        FunctorArg::A => {
            let loaded = load(file)?;
            let Some(b) = want_ordered(loaded, file, caps, report)? else {
                return Ok(());
            };
            let a = apply_A(&b)?;
            print!("{}", fileformat::print(&Structure::Multi(a.clone())));
            report.verdict("atoms construction", true, None);
            report.count("universe", a.size() as u64);
        }
    }
    Ok(())
}

fn check_hom_cmd(
    contract: ContractArg,
    map: &PathBuf,
    src: &PathBuf,
    dst: &PathBuf,
    caps: &Caps,
    report: &mut Report,
) -> Result<(), Failure> {
    let mf = want_morphism(load(map)?, map)?;
    match contract {
        ContractArg::Hom | ContractArg::Full => {
            let s = want_multi(load(src)?, src)?;
            let d = want_multi(load(dst)?, dst)?;
            let h = plain_map(&mf)?;
            let v = match contract {
                ContractArg::Hom => check_hom(&h, &s, &d)?,
                _ => check_full_hom(&h, &s, &d)?,
            };
            push_verdict(report, "homomorphism", v.map(|w| w.to_string()));
        }
        ContractArg::Ordered => {
            let Some(s) = want_ordered(load(src)?, src, caps, report)? else {
                return Ok(());
            };
            let Some(d) = want_ordered(load(dst)?, dst, caps, report)? else {
                return Ok(());
            };
            let h = plain_map(&mf)?;
            let r = check_ordered_hom(&h, &s, &d, true, caps)?;
            push_verdict(report, "order homomorphism", r.verdict.map(|w| w.to_string()));
            if !r.exhaustive {
                report.count("sampled", 1);
            }
        }
        ContractArg::Partial => {
            let s = match load(src)? {
                Structure::Partial(p) => p,
                Structure::Multi(m) => malg::variants::PartialMultiAlgebra::from_total(&m),
                other => {
                    return Err(Failure::Usage(format!(
                        "{}: expected kind partial, found {}",
                        src.display(),
                        other.kind()
                    )))
                }
            };
            let d = match load(dst)? {
                Structure::Partial(p) => p,
                Structure::Multi(m) => malg::variants::PartialMultiAlgebra::from_total(&m),
                other => {
                    return Err(Failure::Usage(format!(
                        "{}: expected kind partial, found {}",
                        dst.display(),
                        other.kind()
                    )))
                }
            };
            let h = plain_map(&mf)?;
            let v = check_partial_hom(&h, &s, &d)?;
            push_verdict(report, "partial homomorphism", v.map(|w| w.to_string()));
        }
        ContractArg::Mm => {
            let s = want_multi(load(src)?, src)?;
            let d = want_multi(load(dst)?, dst)?;
            let h = SetValuedMorphism::new(mf.src_labels.len(), mf.dst_labels.len(), mf.images)?;
            let v = check_mm_hom(&h, &s, &d)?;
            push_verdict(report, "set-valued homomorphism", v.map(|w| w.to_string()));
        }
    }
    Ok(())
}

fn push_verdict(report: &mut Report, name: &str, v: Verdict<String>) {
    match v {
        Verdict::Pass => report.verdict(name, true, None),
        Verdict::Fail(w) => report.verdict(name, false, Some(w)),
    }
}

fn enumerate_cmd(
    contract: ContractArg,
    mode: ModeArg,
    src: &PathBuf,
    dst: &PathBuf,
    caps: &Caps,
    report: &mut Report,
) -> Result<(), Failure> {
    match contract {
        ContractArg::Hom | ContractArg::Full => {
            let s = want_multi(load(src)?, src)?;
            let d = want_multi(load(dst)?, dst)?;
            let m = match (contract, mode) {
                (ContractArg::Full, ModeArg::Hom) | (_, ModeArg::Full) => HomMode::Full,
                (_, ModeArg::Iso) => HomMode::Iso,
                _ => HomMode::Hom,
            };
            let homs = enumerate_homs(&s, &d, m, caps)?;
            report.count("maps", homs.len() as u64);
            for h in &homs {
                report.count(format!("map {:?}", h.map), 1);
            }
        }
        ContractArg::Ordered => {
            let Some(s) = want_ordered(load(src)?, src, caps, report)? else {
                return Ok(());
            };
            let Some(d) = want_ordered(load(dst)?, dst, caps, report)? else {
                return Ok(());
            };
            let homs = match mode {
                ModeArg::Iso => enumerate_ordered_isos(&s, &d, caps)?,
                _ => enumerate_ordered_homs(&s, &d, caps)?,
            };
            report.count("maps", homs.len() as u64);
            for h in &homs {
                report.count(format!("map {:?}", h.map), 1);
            }
        }
        _ => {
            return Err(Failure::Usage(
                "enumeration supports the hom, full, and ordered contracts".into(),
            ))
        }
    }
    Ok(())
}

fn roundtrip_cmd(file: &PathBuf, caps: &Caps, report: &mut Report) -> Result<(), Failure> {
    match load(file)? {
        Structure::Multi(m) => {
            let r = unit_iso(&m, caps)?;
            push_verdict(report, "atoms of powerset returns the structure", r.verdict);
        }
        Structure::Ordered(o) => {
            let Some(b) = build_ordered(&o, caps, report) else {
                return Ok(());
            };
            let r = counit_iso(&b, caps)?;
            push_verdict(report, "powerset of atoms returns the structure", r.verdict);
        }
        other => {
            return Err(Failure::Usage(format!(
                "{}: roundtrip needs a multialgebra or ordered-algebra, found {}",
                file.display(),
                other.kind()
            )))
        }
    }
    Ok(())
}

fn adjunction_cmd(
    b_path: &PathBuf,
    a_path: &PathBuf,
    caps: &Caps,
    report: &mut Report,
) -> Result<(), Failure> {
    let Some(b) = want_ordered(load(b_path)?, b_path, caps, report)? else {
        return Ok(());
    };
    let a = want_multi(load(a_path)?, a_path)?;
    let atoms_b = apply_A(&b)?;
    let pa = apply_P(&a, caps)?;
    let lower = enumerate_homs(&atoms_b, &a, HomMode::Hom, caps)?;
    let upper = enumerate_ordered_homs(&b, &pa, caps)?;
    report.count("lower homs", lower.len() as u64);
    report.count("upper homs", upper.len() as u64);
    report.verdict("hom-set sizes match", lower.len() == upper.len(), None);
    let mut round = true;
    for g in &lower {
        let up = phi(g, &b, &a, caps)?;
        if !upper.contains(&up) || &phi_inv(&up, &b, &a, caps)? != g {
            round = false;
            break;
        }
    }
    for g in &upper {
        if &phi(&phi_inv(g, &b, &a, caps)?, &b, &a, caps)? != g {
            round = false;
            break;
        }
    }
    report.verdict("bijection roundtrips", round, None);
    let nat = malg::functors::check_naturality(
        &Morphism::identity(a.size()),
        &a,
        &a,
        &Morphism::identity(b.carrier_size()),
        &b,
        &b,
        caps,
    )?;
    push_verdict(report, "naturality", nat.map(|w| format!("at map {:?}", w.map)));
    Ok(())
}

fn monad_cmd(file: &PathBuf, caps: &Caps, seed: u64, report: &mut Report) -> Result<(), Failure> {
    let m = want_multi(load(file)?, file)?;
    // three levels fit only when the second-level carrier stays within the
    // powerset cap
    let level1 = (1usize << m.size()) - 1;
    let exhaustive = level1 <= 6 && (1usize << level1) - 1 <= caps.powerset_universe;
    if exhaustive {
        let v = check_monad_laws(&m, caps)?;
        push_verdict(report, "monad laws (exhaustive)", v);
    } else {
        let p1 = malg::monad::apply_ptilde(&m, caps)?;
        let p2 = malg::monad::apply_ptilde(&p1, caps)?;
        let unit_ok = check_hom(&eta(&m, caps)?, &m, &p1)?.is_pass()
            && check_hom(&epsilon(&m, caps)?, &p2, &p1)?.is_pass();
        report.verdict("unit and union are homomorphisms", unit_ok, None);
        let v = check_associativity_sampled(&m, caps.samples, seed)?;
        push_verdict(report, "associativity (sampled)", v);
        report.count("samples", caps.samples as u64);
    }
    let nat = check_naturality_eta_eps(&Morphism::identity(m.size()), &m, &m, caps)?;
    push_verdict(report, "naturality of unit and union", nat);
    Ok(())
}

fn demo_cmd(caps: &Caps, report: &mut Report) -> Result<(), Failure> {
    let (a, b) = malg::demo::pair();

    let isos = enumerate_homs(&a, &b, HomMode::Iso, caps)?;
    report.count("structure isomorphisms", isos.len() as u64);
    report.verdict("the two structures are not isomorphic", isos.is_empty(), None);

    let pa_eq = apply_P_eq(&a, caps)?;
    let pb_eq = apply_P_eq(&b, caps)?;
    let plain = enumerate_plain_isos(&pa_eq, &pb_eq, caps)?;
    report.count("plain subset-algebra isomorphisms", plain.len() as u64);
    let explicit = Morphism::new(3, 3, malg::demo::plain_iso_map()).map_err(Failure::from)?;
    report.verdict(
        "subset algebras without order are isomorphic",
        !plain.is_empty(),
        None,
    );
    report.verdict(
        "the explicit witness is among them",
        plain.contains(&explicit),
        Some(format!("map {:?}", explicit.map)),
    );

    let pa = apply_P(&a, caps)?;
    let pb = apply_P(&b, caps)?;
    let ordered = enumerate_ordered_isos(&pa, &pb, caps)?;
    report.count("order isomorphisms", ordered.len() as u64);
    report.verdict(
        "subset algebras with order are not isomorphic",
        ordered.is_empty(),
        None,
    );
    Ok(())
}

fn eval_cmd(
    term: &str,
    val: &str,
    file: &PathBuf,
    report: &mut Report,
) -> Result<(), Failure> {
    let t = fileformat::parse_term(term)
        .map_err(|(col, msg)| Failure::Usage(format!("term, column {col}: {msg}")))?;
    let mut bindings: BTreeMap<String, String> = BTreeMap::new();
    for part in val.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding `{part}` is not `var=element`")))?;
        bindings.insert(k.trim().to_string(), v.trim().to_string());
    }
    match load(file)? {
        Structure::Multi(m) => {
            let val: BTreeMap<String, usize> = bindings
                .iter()
                .map(|(k, v)| {
                    m.universe()
                        .index_of(v)
                        .map(|i| (k.clone(), i))
                        .ok_or_else(|| Failure::Usage(format!("unknown element `{v}`")))
                })
                .collect::<Result<_, _>>()?;
            let result = eval_term_nd(&m, &t, &val)?;
            let labels: Vec<&str> = result.iter().map(|i| m.universe().label(i)).collect();
            report.verdict("evaluation", true, Some(format!("{{{}}}", labels.join(","))));
        }
        Structure::Ordered(o) => {
            let mut sub = Report::new("");
            let Some(b) = build_ordered(&o, &Caps::default(), &mut sub) else {
                report.verdict("ordered algebra contract", false, None);
                return Ok(());
            };
            let val: BTreeMap<String, usize> = bindings
                .iter()
                .map(|(k, v)| {
                    o.poset
                        .labels
                        .iter()
                        .position(|l| l == v)
                        .map(|i| (k.clone(), i))
                        .ok_or_else(|| Failure::Usage(format!("unknown element `{v}`")))
                })
                .collect::<Result<_, _>>()?;
            let result = eval_term_ord(&b, &t, &val)?;
            report.verdict("evaluation", true, Some(o.poset.labels[result].clone()));
        }
        other => {
            return Err(Failure::Usage(format!(
                "{}: eval needs a multialgebra or ordered-algebra, found {}",
                file.display(),
                other.kind()
            )))
        }
    }
    Ok(())
}
