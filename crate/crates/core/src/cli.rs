//! Command-line front end. Output is JSON on stdout (or a plain table with `--table`); failures
//! print `{"error": …, "kind": …}` on stderr and exit with 1 (invalid input), 2 (budget) or
//! 3 (internal inconsistency).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::affine_galleries::GalleryFamily;
use crate::deodhar;
use crate::error::{Result, SatakeError};
use crate::hecke::{CountSource, Hecke, HeckeElement};
use crate::mvcells::{expected_dim, mv_decomposition, OrbitSign};
use crate::oracle::{self, FlagCensus};
use crate::rootdata::RootDatum;
use crate::vinberg::{self, check_diagram, extends_to_vinberg, ic_class};

#[derive(Parser, Debug)]
#[command(name = "satake", version, about = "Galleries, MV cells, Deodhar cells and generic spherical Hecke algebras")]
pub struct Cli {
    /// Render a plain-text table instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GroupArg {
    /// A preset: SL2, PGL2, GL2, SL3, PGL3, Sp4, SO5, G2-adjoint, or a product such as SL2xPGL2.
    #[arg(long, conflicts_with = "datum")]
    group: Option<String>,
    /// A root datum in JSON.
    #[arg(long)]
    datum: Option<PathBuf>,
}

impl GroupArg {
    fn load(&self) -> Result<RootDatum> {
        match (&self.group, &self.datum) {
            (Some(g), _) => RootDatum::preset(g),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| SatakeError::invalid(format!("cannot read {}: {e}", path.display())))?;
                RootDatum::from_json_str(&text)
            }
            (None, None) => Err(SatakeError::invalid("either --group or --datum is required")),
        }
    }
}

fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, String> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("'{x}': {e}"))).collect()
}

fn parse_word(s: &str) -> std::result::Result<Vec<usize>, String> {
    if s.trim().is_empty() || s == "e" {
        return Ok(vec![]);
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("'{x}': {e}"))).collect()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a root datum.
    Rootdata {
        #[command(flatten)]
        group: GroupArg,
    },
    /// The gallery type of μ and its combinatorial galleries.
    Galleries {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
        /// Which perturbation of the straight path selects the minimal gallery.
        #[arg(long, default_value_t = 0)]
        choice: usize,
        /// Only list positively folded galleries.
        #[arg(long)]
        positive: bool,
        /// Refuse to list more galleries than this.
        #[arg(long, default_value_t = 10_000)]
        max_galleries: u128,
    },
    /// Cells of S^±_ν ∩ Gr^μ.
    MvCells {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        nu: ::std::vec::Vec<i64>,
        #[arg(long, default_value = "plus")]
        sign: OrbitSign,
    },
    /// Deodhar cells of ByB ∩ B⁻xB; words list simple reflections indexed from 0.
    Deodhar {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_word)]
        y: ::std::vec::Vec<usize>,
        #[arg(long, value_parser = parse_word)]
        x: ::std::vec::Vec<usize>,
    },
    /// The generic spherical Hecke algebra.
    Hecke {
        #[command(subcommand)]
        op: HeckeOp,
    },
    /// The Satake isomorphism.
    Satake {
        #[command(subcommand)]
        op: SatakeOp,
    },
    /// Graded classes and the Vinberg-monoid extension criterion.
    Vinberg {
        #[command(subcommand)]
        op: VinbergOp,
    },
    /// Brute-force finite-field counts.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Reproduce a worked example end to end.
    Report {
        #[command(subcommand)]
        op: ReportOp,
    },
}

#[derive(Subcommand, Debug)]
enum HeckeOp {
    /// T_μ · T_λ in the T-basis.
    Mul {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        lambda: ::std::vec::Vec<i64>,
    },
    /// f_μ = Σ d_{μλ}(q) T_λ.
    ChangeOfBasis {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
    },
    /// Ψ_cl(T_μ) as a Laurent polynomial in q^{1/2} per weight.
    Classical {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum SatakeOp {
    /// Check the specialization diagram on T_μ, ⟨2ρ,μ⟩ ≤ max-height, and their pairwise products.
    Diagram {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        q: i128,
        #[arg(long, default_value_t = 6)]
        max_height: i64,
    },
}

#[derive(Subcommand, Debug)]
enum VinbergOp {
    /// Does IC_μ(−twist) extend to the Vinberg monoid? Negative twists are positive Tate twists.
    Check {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
}

#[derive(Subcommand, Debug)]
enum OracleOp {
    /// #{x ∈ Gr^μ : type(x, t^ν) = λ}, for every ν or a given one.
    Conv {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        lambda: ::std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        nu: Option<::std::vec::Vec<i64>>,
    },
    /// #Gr^μ(F_q).
    Schubert {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
    },
    /// #(S^±_ν ∩ Gr^μ)(F_q).
    Semiinf {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        mu: ::std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        nu: ::std::vec::Vec<i64>,
        #[arg(long, default_value = "plus")]
        sign: OrbitSign,
    },
    /// #(ByB ∩ B⁻xB)(F_q) by enumerating flags.
    Flags {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = parse_word)]
        y: ::std::vec::Vec<usize>,
        #[arg(long, value_parser = parse_word)]
        x: ::std::vec::Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum ReportOp {
    /// Cell shapes, point counts and Hecke data for PGL2, each checked independently.
    Pgl2 {
        #[arg(long, default_value_t = 6)]
        max_mu: i64,
    },
}

/// What a run produced: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &SatakeError) -> i32 {
    match e {
        SatakeError::Invalid(_) => 1,
        SatakeError::Budget(_) => 2,
        SatakeError::Inconsistent(_) => 3,
    }
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    CliOutput { code: 0, stdout: text, stderr: String::new() }
                }
                _ => CliOutput {
                    code: 1,
                    stdout: String::new(),
                    stderr: json!({"error": text.trim(), "kind": "usage"}).to_string() + "\n",
                },
            };
        }
    };
    let table = cli.table;
    match execute(cli.command) {
        Ok((code, value)) => {
            let stdout = if table { render_table(&value) } else { pretty(&value) };
            CliOutput { code, stdout, stderr: String::new() }
        }
        Err(e) => CliOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: json!({"error": e.to_string(), "kind": e.kind()}).to_string() + "\n",
        },
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn execute(cmd: Command) -> Result<(i32, Value)> {
    let ok = |v: Value| Ok((0, v));
    match cmd {
        Command::Rootdata { group } => ok(rootdata_json(&group.load()?)),
        Command::Galleries { group, mu, choice, positive, max_galleries } => {
            let d = group.load()?;
            d.check_coweight(&mu)?;
            let fam = GalleryFamily::with_path(&d, &d.adjoint_coords(&mu), choice)?;
            if fam.count() > max_galleries {
                return Err(SatakeError::Budget(format!(
                    "{} galleries exceed --max-galleries {max_galleries}",
                    fam.count()
                )));
            }
            let mut out = vec![];
            for g in fam.enumerate() {
                let j = fam.gallery_json(&g)?;
                if !positive || j["positive"] == json!(true) {
                    out.push(j);
                }
            }
            ok(json!({
                "mu": mu,
                "count": fam.count() as u64,
                "minimal": fam.words(&fam.minimal()),
                "galleries": out,
            }))
        }
        Command::MvCells { group, mu, nu, sign } => {
            let d = group.load()?;
            let cells = mv_decomposition(&d, &mu, &nu, sign)?;
            ok(cells.to_json(expected_dim(&d, &mu, &nu, sign)))
        }
        Command::Deodhar { group, y, x } => {
            let d = group.load()?;
            let w = d.weyl();
            ok(deodhar::cells_json(w, &y, w.from_word(&x)?)?)
        }
        Command::Hecke { op } => hecke(op),
        Command::Satake { op: SatakeOp::Diagram { group, q, max_height } } => {
            let d = group.load()?;
            if !is_prime_power(q) {
                return Err(SatakeError::invalid(format!("q = {q} is not a prime power")));
            }
            let h = Hecke::new(&d);
            let gens: Vec<HeckeElement> = d.dominant_up_to(max_height, 1).iter().map(|m| HeckeElement::basis(m)).collect();
            let mut cases = gens.clone();
            for (i, a) in gens.iter().enumerate() {
                for b in &gens[i..] {
                    cases.push(h.multiply(a, b)?);
                }
            }
            let mut failures = vec![];
            for c in &cases {
                if !check_diagram(&h, c, q, CountSource::Cells)?.ok {
                    failures.push(c.to_json());
                }
            }
            let all = failures.is_empty();
            Ok((if all { 0 } else { 3 }, json!({"ok": all, "cases": cases.len(), "failures": failures})))
        }
        Command::Vinberg { op: VinbergOp::Check { group, mu, twist } } => {
            let d = group.load()?;
            let class = if twist >= 0 { ic_class(&d, &mu, twist)? } else { ic_class(&d, &mu, 0)?.shift_grading(2 * twist) };
            let check = extends_to_vinberg(&d, &class);
            ok(json!({
                "mu": mu,
                "twist": twist,
                "extends": check.extends,
                "witness": check.witness.map(|(nu, g)| json!({"nu": nu, "grading": g})),
                "character": class.to_json(),
            }))
        }
        Command::Oracle { op } => oracle_cmd(op),
        Command::Report { op: ReportOp::Pgl2 { max_mu } } => {
            let report = pgl2_report(max_mu)?;
            let code = if report["ok"] == json!(true) { 0 } else { 3 };
            Ok((code, report))
        }
    }
}

fn is_prime_power(q: i128) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q % p == 0).expect("q ≥ 2 has a prime factor");
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn rootdata_json(d: &RootDatum) -> Value {
    json!({
        "datum": d.to_json(),
        "rank": d.rank(),
        "semisimple_rank": d.semisimple_rank(),
        "weyl_order": d.weyl().order(),
        "two_rho": d.two_rho(),
        "two_rho_check": d.two_rho_check(),
        "positive_coroots": d.positive_roots().iter().map(|r| r.coroot.clone()).collect::<Vec<_>>(),
        "fundamental_group": {"torsion": d.fundamental_group().torsion, "free_rank": d.fundamental_group().free_rank},
    })
}

fn hecke(op: HeckeOp) -> Result<(i32, Value)> {
    match op {
        HeckeOp::Mul { group, mu, lambda } => {
            let h = Hecke::new(&group.load()?);
            Ok((0, h.multiply(&HeckeElement::basis(&mu), &HeckeElement::basis(&lambda))?.to_json()))
        }
        HeckeOp::ChangeOfBasis { group, mu } => {
            let h = Hecke::new(&group.load()?);
            let d = h.change_of_basis(&mu)?;
            let terms: Vec<Value> = d.iter().map(|(l, p)| json!({"lambda": l, "d": p.coeffs()})).collect();
            Ok((0, json!({"mu": mu, "terms": terms})))
        }
        HeckeOp::Classical { group, mu } => {
            let h = Hecke::new(&group.load()?);
            let f = h.satake_classical(&HeckeElement::basis(&mu))?;
            let terms: Vec<Value> = f
                .coeffs()
                .iter()
                .map(|(nu, p)| json!({"nu": nu, "half_powers": p.terms().collect::<Vec<_>>()}))
                .collect();
            Ok((0, json!({"mu": mu, "terms": terms})))
        }
    }
}

fn oracle_cmd(op: OracleOp) -> Result<(i32, Value)> {
    match op {
        OracleOp::Conv { group, q, mu, lambda, nu } => {
            let d = group.load()?;
            let nus = match nu {
                Some(nu) => vec![nu],
                None => {
                    let sum: Vec<i64> = mu.iter().zip(&lambda).map(|(a, b)| a + b).collect();
                    Hecke::new(&d).dominant_below(&sum)?
                }
            };
            let mut counts = vec![];
            for nu in nus {
                counts.push(json!({"nu": nu, "count": oracle::convolution_count(&d, q, &mu, &lambda, &nu)?}));
            }
            Ok((0, json!({"q": q, "mu": mu, "lambda": lambda, "counts": counts})))
        }
        OracleOp::Schubert { group, q, mu } => {
            let d = group.load()?;
            Ok((0, json!({"q": q, "mu": mu, "count": oracle::schubert_count(&d, q, &mu)?})))
        }
        OracleOp::Semiinf { group, q, mu, nu, sign } => {
            let d = group.load()?;
            let c = oracle::semiinfinite_count(&d, q, &mu, &nu, sign)?;
            Ok((0, json!({"q": q, "mu": mu, "nu": nu, "sign": sign_name(sign), "count": c})))
        }
        OracleOp::Flags { group, q, y, x } => {
            let d = group.load()?;
            let w = d.weyl();
            let census = FlagCensus::new(&d, q)?;
            let c = census.count(w.from_word(&y)?, w.from_word(&x)?);
            Ok((0, json!({"q": q, "y": y, "x": x, "count": c, "flags": census.total})))
        }
    }
}

fn sign_name(s: OrbitSign) -> &'static str {
    match s {
        OrbitSign::Plus => "plus",
        OrbitSign::Minus => "minus",
    }
}

/// Every PGL2 identity, each compared against an independent computation.
pub fn pgl2_report(max_mu: i64) -> Result<Value> {
    let d = RootDatum::preset("PGL2")?;
    let h = Hecke::new(&d);
    let mut checks = vec![];
    let mut record = |name: String, pass: bool| checks.push(json!({"check": name, "ok": pass}));
    for mu in 1..=max_mu {
        for nu in (-mu..=mu).step_by(2) {
            let expect = if nu == mu {
                (0, 0)
            } else if nu == -mu {
                (mu as usize, 0)
            } else {
                (((mu - nu) / 2 - 1) as usize, 1)
            };
            let cells = mv_decomposition(&d, &[mu], &[nu], OrbitSign::Minus)?;
            record(format!("S-_{nu} ∩ Gr^{mu} = {expect:?}"), cells.cells == vec![expect]);
            for q in [2u32, 3] {
                let brute = oracle::semiinfinite_count(&d, q, &[mu], &[nu], OrbitSign::Minus)?;
                record(format!("#(S-_{nu} ∩ Gr^{mu})(F_{q}) = {brute}"), cells.poly().eval(q as i128) == brute as i128);
            }
        }
        let mult_ok = (-mu..=mu)
            .step_by(2)
            .all(|nu| crate::mvcells::weight_multiplicity(&d, &[mu], &[nu]).ok() == Some(1));
        record(format!("weights of V_{mu} have multiplicity one"), mult_ok);
    }
    let t1 = HeckeElement::basis(&[1]);
    let sq = h.multiply(&t1, &t1)?;
    for q in [2u32, 3, 5] {
        let brute = oracle::convolution_count(&d, q, &[1], &[1], &[0])?;
        record(format!("T_1·T_1 at T_0, q = {q}: {brute}"), sq.coeff(&[0]).eval(q as i128) == brute as i128);
    }
    let f2 = h.change_of_basis(&[2])?;
    let geo = h.change_of_basis_geometric(&[2], CountSource::Oracle)?;
    record("f_2 from Kostka–Foulkes equals f_2 from lattice counts".into(), *f2 == geo);
    for q0 in [2, 3, 5] {
        let c = check_diagram(&h, &sq, q0, CountSource::Oracle)?;
        record(format!("Satake diagram for T_1·T_1 at q = {q0}"), c.ok);
    }
    let class = vinberg::psi(&h, &HeckeElement::basis(&[2]))?;
    record("Ψ⁻¹Ψ(T_2) = T_2".into(), vinberg::psi_inverse(&h, &class)? == HeckeElement::basis(&[2]));
    let all = checks.iter().all(|c| c["ok"] == json!(true));
    Ok(json!({"group": "PGL2", "ok": all, "checks": checks}))
}

/// A plain-text rendering: arrays of objects become column tables, everything else key: value.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, "", &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_into(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                        out.push_str(&format!("{indent}{k}:\n"));
                        render_rows(items, &format!("{indent}  "), out);
                    }
                    Value::Object(_) => {
                        out.push_str(&format!("{indent}{k}:\n"));
                        render_into(x, &format!("{indent}  "), out);
                    }
                    _ => out.push_str(&format!("{indent}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) if items.iter().all(Value::is_object) => render_rows(items, indent, out),
        other => out.push_str(&format!("{indent}{}\n", scalar(other))),
    }
}

fn render_rows(items: &[Value], indent: &str, out: &mut String) {
    let mut cols: Vec<String> = vec![];
    for it in items {
        for k in it.as_object().expect("rows are objects").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> =
        items.iter().map(|it| cols.iter().map(|c| it.get(c).map(scalar).unwrap_or_default()).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| -> String {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("{indent}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
}
