use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use posicert::certify::{certify_positivity, text_report, Verdict};
use posicert::constants::DomainSpec;
use posicert::formats::{certificate_to_json, load_problem, ConstantsDoc, NKReportDoc};
use posicert::nk::{nk_radius, radius_from, NKInput};
use posicert::special::{first_zero, BesselOrder, ZeroCertificate};
use posicert::tables::{
    default_embedding_grid, embedding_rows, format_embedding_table, format_rfk_table, rfk_rows, EmbeddingSpec,
    DEFAULT_DIMENSIONS,
};
use posicert::text::{decimal_down, decimal_up, parse_decimal, render_interval, DECIMAL_DIGITS};
use posicert::{Error, Interval, Result};

const EXIT_INCONCLUSIVE: u8 = 10;
const EXIT_INFEASIBLE: u8 = 11;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "posicert", version, about = "Rigorous positivity certificates for -Δu = f(u)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unit-ball volumes, Bessel zeros, Rayleigh–Faber–Krahn and embedding constants.
    Constants(ConstantsArgs),
    /// Run the positivity test on a problem file.
    Certify(CertifyArgs),
    /// Newton–Kantorovich existence radius.
    Nk(NkArgs),
    /// Enclose the first positive zero of J_ν.
    BesselZero(BesselArgs),
}

#[derive(Args)]
struct ConstantsArgs {
    /// Dimensions, as `2..5`, `2,3` or empty for none.
    #[arg(long)]
    dims: Option<String>,
    /// Embedding rows `p,N,volume`; repeatable. `none` for no rows.
    #[arg(long)]
    embed: Vec<String>,
    /// Print constants/1 JSON instead of tables.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CertifyArgs {
    problem: PathBuf,
    /// Where to write the positivity-cert/1 JSON.
    #[arg(short, long)]
    out: PathBuf,
    /// Also write the cell bounds as CSV.
    #[arg(long)]
    cells_csv: Option<PathBuf>,
}

#[derive(Args)]
struct NkArgs {
    #[arg(long, requires = "beta", conflicts_with_all = ["inv_norm", "residual", "residual_l2", "lipschitz"])]
    alpha: Option<String>,
    #[arg(long, requires = "alpha")]
    beta: Option<String>,
    #[arg(long, requires = "lipschitz")]
    inv_norm: Option<String>,
    /// Residual in the dual norm.
    #[arg(long, conflicts_with = "residual_l2")]
    residual: Option<String>,
    /// Residual in L², converted with the Poincaré constant of `--box` or
    /// of `--dimension`/`--volume` (Rayleigh–Faber–Krahn).
    #[arg(long)]
    residual_l2: Option<String>,
    #[arg(long, requires = "inv_norm")]
    lipschitz: Option<String>,
    /// Side lengths of a box domain, e.g. `1,1`.
    #[arg(long, value_delimiter = ',')]
    r#box: Vec<String>,
    #[arg(long, requires = "volume")]
    dimension: Option<u32>,
    #[arg(long, requires = "dimension")]
    volume: Option<String>,
    /// Report whether this ρ lies in [ρ₋, 2α].
    #[arg(long)]
    check_rho: Option<String>,
    /// Where the inputs came from, recorded in the report.
    #[arg(long, default_value = "command line")]
    provenance: String,
    /// Print nk-report/1 JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report here.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BesselArgs {
    /// One of 0, 0.5, 1, 1.5.
    #[arg(long)]
    order: String,
    #[arg(long, default_value = "1e-10")]
    tol: String,
}

fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

fn num(s: &str, what: &str) -> Result<Interval> {
    parse_decimal(s).map_err(|e| Error::Parse(format!("--{what}: {e}")))
}

fn parse_dims(spec: &str) -> Result<Vec<u32>> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "none" {
        return Ok(vec![]);
    }
    let bad = || Error::Parse(format!("--dims {spec:?}: expected `a..b` or a comma list"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    spec.split(',').map(|d| d.trim().parse().map_err(|_| bad())).collect()
}

fn parse_embed(spec: &str) -> Result<EmbeddingSpec> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [p, n, v] = parts[..] else {
        return Err(Error::Parse(format!("--embed {spec:?}: expected p,N,volume")));
    };
    let nearest = |s: &str| -> Result<f64> {
        s.parse::<f64>().map_err(|_| Error::Parse(format!("--embed {spec:?}: {s:?} is not a number")))
    };
    let dimension = n.parse().map_err(|_| Error::Parse(format!("--embed {spec:?}: bad dimension")))?;
    Ok(EmbeddingSpec { p: nearest(p)?, dimension, volume: nearest(v)? })
}

fn cmd_constants(args: ConstantsArgs) -> Result<u8> {
    let dims = match &args.dims {
        Some(d) => parse_dims(d)?,
        None => DEFAULT_DIMENSIONS.to_vec(),
    };
    let grid = if args.embed.is_empty() {
        default_embedding_grid()
    } else if args.embed.iter().any(|e| e == "none") {
        vec![]
    } else {
        args.embed.iter().map(|e| parse_embed(e)).collect::<Result<Vec<_>>>()?
    };
    let rfk = rfk_rows(&dims)?;
    let embedding = embedding_rows(&grid)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&ConstantsDoc::new(&rfk, &embedding)).expect("serializes"));
    } else {
        println!("Unit-ball volumes, first Bessel zeros and Rayleigh–Faber–Krahn constants");
        print!("{}", format_rfk_table(&rfk));
        println!();
        println!("Embedding constants (p = 2: Poincaré constant from the Rayleigh–Faber–Krahn bound)");
        print!("{}", format_embedding_table(&embedding));
    }
    Ok(0)
}

fn cmd_certify(args: CertifyArgs) -> Result<u8> {
    let p = load_problem(&args.problem)?;
    let cert = certify_positivity(&p.mesh, &p.domain, &p.nonlinearity, p.rho, p.q, &p.m_candidates, p.assumptions)?;
    fs::write(&args.out, certificate_to_json(&cert) + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", args.out.display())))?;
    if let Some(csv) = &args.cells_csv {
        let file = fs::File::create(csv).map_err(|e| Error::Io(format!("{}: {e}", csv.display())))?;
        p.mesh.write_csv(std::io::BufWriter::new(file))?;
    }
    print!("{}", text_report(&cert));
    println!("certificate written to {}", args.out.display());
    Ok(match cert.verdict {
        Verdict::VerifiedNonnegative => 0,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn domain_for_l2(args: &NkArgs) -> Result<DomainSpec> {
    if !args.r#box.is_empty() {
        let sides = args.r#box.iter().map(|s| Ok(num(s, "box")?.hi())).collect::<Result<Vec<_>>>()?;
        return DomainSpec::hyperrectangle(&sides);
    }
    match (args.dimension, &args.volume) {
        (Some(n), Some(v)) => {
            DomainSpec::new(n, num(v, "volume")?, Some(posicert::constants::Lambda1Source::RayleighFaberKrahn))
        }
        _ => input("--residual-l2 needs --box or --dimension with --volume"),
    }
}

fn cmd_nk(args: NkArgs) -> Result<u8> {
    let report = match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => radius_from(num(a, "alpha")?, num(b, "beta")?),
        _ => {
            let (Some(i), Some(l)) = (&args.inv_norm, &args.lipschitz) else {
                return input("give --alpha/--beta or --inv-norm/--residual/--lipschitz");
            };
            let (i, l) = (num(i, "inv-norm")?, num(l, "lipschitz")?);
            let inp = match (&args.residual, &args.residual_l2) {
                (Some(r), None) => NKInput::new(i, num(r, "residual")?, l)?,
                (None, Some(r)) => NKInput::with_l2_residual(i, num(r, "residual-l2")?, l, &domain_for_l2(&args)?)?,
                _ => return input("give exactly one of --residual and --residual-l2"),
            };
            nk_radius(&inp)
        }
    };
    let check = args.check_rho.as_deref().map(|r| num(r, "check-rho")).transpose()?;
    let doc = NKReportDoc::new(&report, &args.provenance, check);
    let json = serde_json::to_string_pretty(&doc).expect("serializes");
    if let Some(out) = &args.out {
        fs::write(out, json.clone() + "\n").map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    }
    if args.json {
        println!("{json}");
    } else {
        let show = |x: Interval| {
            let [lo, hi] = render_interval(x, DECIMAL_DIGITS);
            format!("[{lo}, {hi}]")
        };
        println!("alpha             {}", show(report.alpha));
        println!("beta              {}", show(report.beta));
        println!("alpha*beta        <= {}", decimal_up((report.alpha * report.beta).hi(), 10));
        println!("feasible          {}", report.feasible);
        if let Some(r) = report.rho_min {
            println!("rho_min           <= {}", decimal_up(r.hi(), DECIMAL_DIGITS));
        }
        println!("rho_max = 2 alpha >= {}", decimal_down(report.rho_max.lo(), DECIMAL_DIGITS));
        println!("uniqueness radius >= {}", decimal_down(report.uniqueness_radius().lo(), DECIMAL_DIGITS));
        if let Some(c) = &doc.check_rho {
            println!("rho check         {}", if c.admissible { "admissible" } else { "not admissible" });
        }
    }
    Ok(if !report.feasible {
        EXIT_INFEASIBLE
    } else if doc.check_rho.is_some_and(|c| !c.admissible) {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn cmd_bessel(args: BesselArgs) -> Result<u8> {
    let order = match args.order.trim() {
        "0" | "0.0" => BesselOrder::Integer(0),
        "0.5" => BesselOrder::HalfInteger(0),
        "1" | "1.0" => BesselOrder::Integer(1),
        "1.5" => BesselOrder::HalfInteger(1),
        other => return input(format!("--order {other:?}: supported orders are 0, 0.5, 1, 1.5")),
    };
    let tol = args.tol.trim().parse::<f64>().map_err(|_| Error::Parse(format!("--tol {:?}", args.tol)))?;
    let z = first_zero(order, tol)?;
    let [lo, hi] = render_interval(z.zero, DECIMAL_DIGITS);
    println!("order             {order}");
    println!("first zero in     [{lo}, {hi}]");
    println!("width             {:e}", z.zero.width());
    match &z.certificate {
        ZeroCertificate::Analytic { statement } => println!("certificate       {statement}"),
        ZeroCertificate::SignChange { function, at_lo, at_hi, derivative, positive_on, bisections } => {
            println!("certificate       sign change of {function}");
            println!("  f(lo)           in {at_lo}");
            println!("  f(hi)           in {at_hi}");
            println!("  f' on bracket   in {derivative}");
            println!("  f > 0 on        {positive_on}");
            println!("  bisections      {bisections}");
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Constants(a) => cmd_constants(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Nk(a) => cmd_nk(a),
        Command::BesselZero(a) => cmd_bessel(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("posicert: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
