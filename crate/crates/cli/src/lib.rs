//! Command-line front end: parsing of the polynomial grammar flags, the
//! subcommands (frobpoly, certify, det-index, reduction-type, group-check,
//! wild2, density, reproduce), JSON emission, and exit-code policy
//! (0 = success/Proven, 1 = usage error, 2 = Inconclusive or failed check).

pub mod reproduce;
pub mod schema;

use clap::{Args, Parser, Subcommand};
use dmq_core::apoly::{AIdeal, APoly};
use dmq_core::certify::{
    adelic_certificate, all_lambda_certificate, det_index, lambda_adic_full_certificate,
    modl_full_certificate, CertifyOptions,
};
use dmq_core::density::{count_set, surjectivity_scan, to_csv, CountMode, SetDescriptor};
use dmq_core::drinfeld::DrinfeldModule;
use dmq_core::field::Fq;
use dmq_core::frobenius::frob_charpoly_exact;
use dmq_core::groups::{
    filtration, local_fullness_exhaustive, MatGroup, QuotMat, QuotRing, DEFAULT_CLOSURE_CAP,
};
use dmq_core::ratfunc::{valuation, Place, RatFunc};
use dmq_core::wild2::{infinity_class, wild_infinity_criterion};
use dmq_core::{Certificate, FuncField, Status};

#[derive(Parser)]
#[command(
    name = "dmq",
    about = "Rank-2 Drinfeld modules over F_q[t]: Frobenius data, torsion Galois images, certificates",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct FieldArgs {
    /// The base prime power q.
    #[arg(long)]
    pub q: u64,
    /// Override the defining modulus of F_q over F_p: comma-separated F_p
    /// coefficients, ascending (e.g. "1,1,1" for g^2+g+1).
    #[arg(long)]
    pub modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> Result<Fq, String> {
        match &self.modulus {
            None => Fq::new(self.q).map_err(|e| e.to_string()),
            Some(m) => {
                let coeffs: Result<Vec<u32>, _> =
                    m.split(',').map(|s| s.trim().parse::<u32>()).collect();
                let coeffs = coeffs.map_err(|e| format!("bad modulus: {e}"))?;
                let mut p = 2u64;
                while p * p <= self.q {
                    if self.q.is_multiple_of(p) {
                        break;
                    }
                    p += 1;
                }
                if !self.q.is_multiple_of(p) {
                    p = self.q;
                }
                let e = (coeffs.len() - 1) as u32;
                Fq::with_modulus(p, e, coeffs).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Args, Clone)]
pub struct PhiArgs {
    /// Drinfeld module φ_t = a0 + a1·τ + a2·τ², as "a0,a1,a2" in the
    /// polynomial grammar; a0 must be t for generic characteristic.
    #[arg(long)]
    pub phi: String,
}

impl PhiArgs {
    fn module(&self, fq: &Fq) -> Result<DrinfeldModule<FuncField>, String> {
        let parts: Vec<&str> = self.phi.split(',').collect();
        if parts.len() < 2 {
            return Err("--phi needs at least \"t,a1\"".into());
        }
        let a0 = APoly::parse(fq, parts[0]).map_err(|e| e.to_string())?;
        if a0 != APoly::t() {
            return Err("a0 must parse to t (generic characteristic)".into());
        }
        let coeffs: Result<Vec<RatFunc>, String> = parts[1..]
            .iter()
            .map(|s| {
                APoly::parse(fq, s)
                    .map(RatFunc::from_poly)
                    .map_err(|e| e.to_string())
            })
            .collect();
        DrinfeldModule::generic(fq, coeffs?).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact Frobenius characteristic polynomial at a good prime.
    Frobpoly {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        phi: PhiArgs,
        /// The prime, e.g. "(t^2+t+2)".
        #[arg(long)]
        prime: String,
        #[arg(long)]
        json: bool,
    },
    /// Certify a Galois-image property.
    Certify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        phi: PhiArgs,
        /// modl | lambda-adic | all-lambda | adelic
        #[arg(long, default_value = "adelic")]
        claim: String,
        /// The level for modl / lambda-adic claims, e.g. "(t)".
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exact adelic determinant index.
    DetIndex {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Reduction type of the module at a prime.
    ReductionType {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        json: bool,
    },
    /// Closure, determinant image, commutator and fullness report of a
    /// generated matrix group over A/(g)^k.
    GroupCheck {
        #[command(flatten)]
        field: FieldArgs,
        /// Level "(g)^k" or "(g)".
        #[arg(long)]
        level: String,
        /// Generators "[[a,b],[c,d]];[[...]];...".
        #[arg(long)]
        gens: String,
        /// Closure cap (elements).
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// q = 2 infinite-place report: v_inf(j), the two quadratic classes and
    /// the odd-deep-pole verdict.
    Wild2 {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Exact or sampled density of a set over A²(d).
    Density {
        #[command(flatten)]
        field: FieldArgs,
        /// C | R | S | T | modl-full | det-index-k
        #[arg(long)]
        set: String,
        #[arg(long)]
        d: usize,
        /// Parameter m for the S/T sets.
        #[arg(long)]
        m: Option<usize>,
        /// Level for modl-full, e.g. "(t)".
        #[arg(long)]
        lambda: Option<String>,
        /// Index k for det-index-k.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the CSV to this path as well as stdout.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Run the full reproduction manifest and print a pass/fail table.
    Reproduce,
}

/// Run with explicit arguments; returns (exit code, stdout text).
pub fn run(args: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return (1, e.to_string()),
    };
    match dispatch(cli) {
        Ok((code, out)) => (code, out),
        Err(msg) => (1, format!("error: {msg}\n")),
    }
}

pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let (code, out) = run(&args);
    print!("{out}");
    code
}

fn certificate_text(cert: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let status = match cert.status {
        Status::Proven => "Proven",
        Status::Inconclusive => "Inconclusive",
    };
    out.push_str(&format!("{pad}{} [{status}] via {}", cert.claim, cert.rule));
    if !cert.detail.is_empty() {
        out.push_str(&format!(" - {}", cert.detail));
    }
    out.push('\n');
    for p in &cert.premises {
        certificate_text(p, depth + 1, out);
    }
}

fn dispatch(cli: Cli) -> Result<(i32, String), String> {
    match cli.command {
        Command::Frobpoly { field, phi, prime, json } => {
            let fq = field.field()?;
            let dm = phi.module(&fq)?;
            let p = AIdeal::parse(&fq, &prime).map_err(|e| e.to_string())?;
            let fp = frob_charpoly_exact(&dm, &p).map_err(|e| e.to_string())?;
            if json {
                let v = serde_json::json!({
                    "prime": p.to_string(&fq),
                    "degree": p.degree(),
                    "trace": fp.trace.to_string(&fq),
                    "constant": fp.constant.to_string(&fq),
                });
                Ok((0, format!("{}\n", serde_json::to_string_pretty(&v).unwrap())))
            } else {
                Ok((0, format!("{}\n", fp.to_string(&fq))))
            }
        }
        Command::Certify { field, phi, claim, lambda, json } => {
            let fq = field.field()?;
            let dm = phi.module(&fq)?;
            let opts = CertifyOptions::default();
            let lam = match &lambda {
                Some(s) => Some(AIdeal::parse(&fq, s).map_err(|e| e.to_string())?),
                None => None,
            };
            let (cert, extra) = match claim.as_str() {
                "modl" => {
                    let lam = lam.ok_or("--lambda is required for claim modl")?;
                    (modl_full_certificate(&dm, &lam, &opts).map_err(|e| e.to_string())?, None)
                }
                "lambda-adic" => {
                    let lam = lam.ok_or("--lambda is required for claim lambda-adic")?;
                    (
                        lambda_adic_full_certificate(&dm, &lam, &opts)
                            .map_err(|e| e.to_string())?,
                        None,
                    )
                }
                "all-lambda" => {
                    (all_lambda_certificate(&dm, &opts).map_err(|e| e.to_string())?, None)
                }
                "adelic" => {
                    let out = adelic_certificate(&dm, &opts).map_err(|e| e.to_string())?;
                    (out.certificate.clone(), Some(out))
                }
                other => return Err(format!("unknown claim {other}")),
            };
            let code = if cert.proven() { 0 } else { 2 };
            if json {
                let mut v = cert.to_json();
                if let Some(out) = &extra {
                    v["det_index"] = serde_json::json!(out.det_index);
                    v["index_divides"] = serde_json::json!(out.index_divides);
                }
                Ok((code, format!("{}\n", serde_json::to_string_pretty(&v).unwrap())))
            } else {
                let mut text = String::new();
                certificate_text(&cert, 0, &mut text);
                if let Some(out) = &extra {
                    text.push_str(&format!("det_index = {}\n", out.det_index));
                    if let Some(k) = out.index_divides {
                        text.push_str(&format!("image index divides {k}\n"));
                    }
                }
                Ok((code, text))
            }
        }
        Command::DetIndex { field, phi } => {
            let fq = field.field()?;
            let dm = phi.module(&fq)?;
            let idx = det_index(&dm).map_err(|e| e.to_string())?;
            Ok((0, format!("{idx}\n")))
        }
        Command::ReductionType { field, phi, prime, json } => {
            let fq = field.field()?;
            let dm = phi.module(&fq)?;
            let p = AIdeal::parse(&fq, &prime).map_err(|e| e.to_string())?;
            let r = dm.reduction_type(&p).map_err(|e| e.to_string())?;
            if json {
                let v = serde_json::json!({
                    "prime": p.to_string(&fq),
                    "kind": format!("{:?}", r.kind),
                    "potential_rank": r.potential_rank,
                    "m": format!("{}/{}", r.m.num, r.m.den),
                    "v_j": r.v_j,
                });
                Ok((0, format!("{}\n", serde_json::to_string_pretty(&v).unwrap())))
            } else {
                Ok((
                    0,
                    format!(
                        "{:?} (potential stable rank {}, m = {}/{}, v(j) = {})\n",
                        r.kind,
                        r.potential_rank,
                        r.m.num,
                        r.m.den,
                        r.v_j.map(|v| v.to_string()).unwrap_or_else(|| "+inf".into())
                    ),
                ))
            }
        }
        Command::GroupCheck { field, level, gens, cap, json } => {
            let fq = field.field()?;
            let (base, k) = parse_level(&fq, &level)?;
            let modulus = base.generator().pow(&fq, k);
            let ring = QuotRing::new(&fq, &modulus).map_err(|e| e.to_string())?;
            let mats: Result<Vec<QuotMat>, String> = gens
                .split(';')
                .map(|s| QuotMat::parse(&ring, s).map_err(|e| e.to_string()))
                .collect();
            let group = MatGroup::closure(&ring, &mats?, cap).map_err(|e| e.to_string())?;
            let comm = group.commutator_subgroup(cap).map_err(|e| e.to_string())?;
            let report = if k == 2 && base.is_prime(&fq) {
                Some(local_fullness_exhaustive(&group, &base).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let filt_summary = if k >= 2 && base.is_prime(&fq) {
                let f = filtration(&group, &base, k as usize).map_err(|e| e.to_string())?;
                Some(
                    (1..k as usize)
                        .map(|i| format!("|space_{i}| = {}", f.spaces[i - 1].len()))
                        .collect::<Vec<_>>()
                        .join(", "),
                )
            } else {
                None
            };
            if json {
                let v = serde_json::json!({
                    "order": group.order(),
                    "det_image_order": group.det_image().len(),
                    "commutator_order": comm.order(),
                    "fullness": report,
                    "filtration": filt_summary,
                });
                Ok((0, format!("{}\n", serde_json::to_string_pretty(&v).unwrap())))
            } else {
                let mut out = format!(
                    "order = {}\ndet image order = {}\ncommutator order = {}\n",
                    group.order(),
                    group.det_image().len(),
                    comm.order()
                );
                if let Some(r) = report {
                    out.push_str(&format!(
                        "fullness: det {:?}, mod-l {:?}, nonscalar {:?}, mod-l^2 {:?}, order-2 {:?} => {:?}\n",
                        r.det_full,
                        r.modl_full,
                        r.nonscalar_shift,
                        r.modl2_full,
                        r.order2_element,
                        r.verdict
                    ));
                }
                if let Some(f) = filt_summary {
                    out.push_str(&format!("filtration: {f}\n"));
                }
                Ok((0, out))
            }
        }
        Command::Wild2 { field, phi } => {
            let fq = field.field()?;
            if fq.q() != 2 {
                return Err("wild2 requires --q 2".into());
            }
            let dm = phi.module(&fq)?;
            let j = dm.j_invariant();
            let vj = valuation(&fq, &j, &Place::Infinity);
            let mut out = format!(
                "v_inf(j) = {}\n",
                vj.map(|v| v.to_string()).unwrap_or_else(|| "+inf".into())
            );
            for i in 0..2u32 {
                let c = infinity_class(&dm, i).map_err(|e| e.to_string())?;
                out.push_str(&format!(
                    "class at (t+{i}): representative {}, v_inf = {}, {:?}\n",
                    c.rep.to_string(&fq),
                    c.v_inf.map(|v| v.to_string()).unwrap_or_else(|| "+inf".into()),
                    c.verdict
                ));
            }
            let ok = wild_infinity_criterion(&dm).map_err(|e| e.to_string())?;
            out.push_str(&format!(
                "odd-deep-pole criterion: {}\n",
                if ok { "holds (abelianized image is full)" } else { "does not hold" }
            ));
            Ok((if ok { 0 } else { 2 }, out))
        }
        Command::Density { field, set, d, m, lambda, k, exact, samples, seed, csv } => {
            let fq = field.field()?;
            let desc = match set.as_str() {
                "C" => SetDescriptor::C,
                "R" => SetDescriptor::R,
                "S" => SetDescriptor::SM(m.ok_or("--m is required for set S")?),
                "T" => SetDescriptor::TM(m.ok_or("--m is required for set T")?),
                "modl-full" => {
                    let lam = lambda.ok_or("--lambda is required for modl-full")?;
                    SetDescriptor::ModLFullCertified(
                        AIdeal::parse(&fq, &lam).map_err(|e| e.to_string())?,
                    )
                }
                "det-index-k" => SetDescriptor::DetIndexEquals(k.ok_or("--k is required")?),
                other => return Err(format!("unknown set {other}")),
            };
            let mode = if exact {
                CountMode::Exact
            } else {
                CountMode::Sampled { n: samples.ok_or("pass --exact or --samples N")?, seed }
            };
            let est = match (&desc, mode) {
                (SetDescriptor::ModLFullCertified(lam), CountMode::Sampled { n, seed }) => {
                    surjectivity_scan(&fq, lam, d, n, seed).map_err(|e| e.to_string())?
                }
                _ => count_set(&fq, &desc, d, mode).map_err(|e| e.to_string())?,
            };
            let text = to_csv(&[est]);
            if let Some(path) = csv {
                std::fs::write(&path, &text).map_err(|e| format!("writing {path}: {e}"))?;
            }
            Ok((0, text))
        }
        Command::Reproduce => {
            let results = reproduce::run_all();
            let mut out = String::new();
            let mut all_ok = true;
            for r in &results {
                let flag = if r.passed { "PASS" } else { "FAIL" };
                all_ok &= r.passed;
                out.push_str(&format!(
                    "[{flag}] criterion {:>2}: {} - {}\n",
                    r.id, r.name, r.detail
                ));
            }
            out.push_str(if all_ok { "all criteria passed\n" } else { "some criteria failed\n" });
            Ok((if all_ok { 0 } else { 2 }, out))
        }
    }
}

/// Parse "(g)^k" or "(g)" into (ideal, k).
fn parse_level(fq: &Fq, s: &str) -> Result<(AIdeal, u64), String> {
    let t = s.trim();
    let (ideal_part, k) = match t.rfind(")^") {
        Some(pos) => {
            let k: u64 = t[pos + 2..].parse().map_err(|_| "bad level exponent".to_string())?;
            (&t[..pos + 1], k)
        }
        None => (t, 1),
    };
    let ideal = AIdeal::parse(fq, ideal_part).map_err(|e| e.to_string())?;
    Ok((ideal, k))
}
