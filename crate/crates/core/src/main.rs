use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use powersum_forge::exact::{bernoulli, int, parse_integer, parse_rational, Integer};
use powersum_forge::forms::{
    check_characterization, content_reduce, sandor_generate, substitute, verify_cubic_identity,
    CubicQuadruple, FormQuadruple, SubstitutionMatrix,
};
use powersum_forge::identities::{
    build_relation, expand_relation, factor_common_root, ComboQuadruple, PolyIdentity, RelationMode,
};
use powersum_forge::json::{
    AffineRepr, CommonRootRepr, FactoredRepr, FormQuadrupleRepr, FormRepr, PolyIdentityRepr,
    RationalRepr, RelationRepr, TermsRepr,
};
use powersum_forge::powersum::{faulhaber, product, s1_power, s2_s1_power, square};
use powersum_forge::quadratic::{
    equal_sums_family, integer_scale_affine, piezas_degenerate_triple, piezas_generate,
    powersum_quadruple, powersum_triple, PythagoreanQuadruple,
};
use powersum_forge::search::{load_records, run_search, run_search_to_file, SearchConfig};
use powersum_forge::{latex, Error};

#[derive(Parser)]
#[command(
    name = "powersum-forge",
    version,
    about = "Quadratic-form and power-sum solutions of a^3+b^3+c^3=d^3"
)]
struct Cli {
    /// Emit LaTeX instead of JSON.
    #[arg(long, global = true)]
    latex: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bernoulli number B_K (B_1 = -1/2).
    Bernoulli { k: u32 },
    /// S_K as a polynomial in n.
    Faulhaber { k: u32 },
    /// Products and powers of power sums as power-sum combinations.
    Combo {
        #[command(subcommand)]
        op: ComboOp,
    },
    /// Quadratic-form family generated from a seed solution.
    #[command(allow_negative_numbers = true)]
    Sandor {
        a: String,
        b: String,
        c: String,
        d: String,
        /// Divide out the joint content of the twelve coefficients.
        #[arg(long)]
        reduce: bool,
        /// Substitution (u, v) -> M (u, v), given as "m11,m12,m21,m22"; entries may be p/q.
        #[arg(long, allow_hyphen_values = true)]
        subst: Option<String>,
    },
    /// Re-verify a JSON or JSONL file produced by this tool.
    Verify { file: PathBuf },
    /// Cubic relation among power sums built from a seed's family.
    Relation {
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        /// Q:k,m or F:k
        #[arg(long)]
        mode: String,
        /// Also expand to a polynomial identity in u.
        #[arg(long)]
        expand: bool,
        /// Also remove the common factor u^s (u+1)^t (implies --expand).
        #[arg(long)]
        factor: bool,
    },
    /// Quadratic identities.
    Quad {
        #[command(subcommand)]
        op: QuadOp,
    },
    /// Grid search over generated families.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        /// Lift the lattice-point guardrail.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Subcommand)]
enum ComboOp {
    Product { k: u32, m: u32 },
    Square { k: u32 },
    S1pow { k: u32 },
    S2s1pow { k: u32 },
}

#[derive(Subcommand)]
enum QuadOp {
    /// Piezas' forms for a Pythagorean quadruple; with --e, the triple case.
    #[command(allow_negative_numbers = true)]
    Piezas {
        a: String,
        b: String,
        c: String,
        d: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// Pythagorean quadruple in power sums.
    Quadruple { k: u32 },
    /// Pythagorean triple in power sums.
    Triple { k: u32, m: u32 },
    /// (2u-2)^2 + (4u+1)^2 = (2u+2)^2 + (4u-1)^2.
    #[command(name = "equal-sums", allow_negative_numbers = true)]
    EqualSums { u: String },
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(msg) => Failure::Verification(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json value serializes")
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("repr serializes")
}

fn run(cli: &Cli) -> CliResult<String> {
    let tex = cli.latex;
    match &cli.command {
        Command::Bernoulli { k } => {
            let b = bernoulli(*k);
            Ok(if tex {
                latex::bernoulli_row(*k, &b)
            } else {
                pretty(json!({ "k": k, "value": RationalRepr::from(&b) }))
            })
        }
        Command::Faulhaber { k } => {
            let p = faulhaber(*k);
            Ok(if tex {
                latex::faulhaber_row(*k, &p)
            } else {
                pretty(json!({ "k": k, "variable": "n", "terms": TermsRepr::from(&p).terms }))
            })
        }
        Command::Combo { op } => {
            let c = match op {
                ComboOp::Product { k, m } => product(*k, *m),
                ComboOp::Square { k } => square(*k),
                ComboOp::S1pow { k } => s1_power(*k)?,
                ComboOp::S2s1pow { k } => s2_s1_power(*k),
            };
            Ok(if tex {
                latex::combo(&c)
            } else {
                pretty(to_value(TermsRepr::from(&c)))
            })
        }
        Command::Sandor {
            a,
            b,
            c,
            d,
            reduce,
            subst,
        } => {
            let seed = CubicQuadruple::new(
                parse_integer(a)?,
                parse_integer(b)?,
                parse_integer(c)?,
                parse_integer(d)?,
            )?;
            let mut fq = sandor_generate(&seed);
            let mut content = None;
            if *reduce {
                let (r, g) = content_reduce(&fq);
                fq = r;
                content = Some(g);
            }
            if let Some(m) = subst {
                fq = substitute(&fq, &parse_matrix(m)?)?;
            }
            if !verify_cubic_identity(&fq) {
                return Err(Failure::Verification(
                    "generated forms do not cancel".into(),
                ));
            }
            if tex {
                return Ok(latex::form_quadruple(&fq));
            }
            let mut repr = FormQuadrupleRepr::from(&fq);
            repr.content = content.map(|g| g.to_string());
            Ok(pretty(to_value(repr)))
        }
        Command::Verify { file } => verify_file(file),
        Command::Relation {
            seed,
            mode,
            expand,
            factor,
        } => {
            let seed = parse_seed_arg(seed)?;
            let mode: RelationMode = mode.parse()?;
            let cq = build_relation(&sandor_generate(&seed), mode)?;
            relation_output(&cq, *expand || *factor, *factor, tex)
        }
        Command::Quad { op } => quad(op, tex),
        Command::Search {
            config,
            threads,
            allow_large,
        } => {
            let mut cfg = SearchConfig::load(config)?;
            if threads.is_some() {
                cfg.threads = *threads;
            }
            cfg.allow_large |= *allow_large;
            search(&cfg)
        }
    }
}

fn parse_seed_arg(s: &str) -> CliResult<CubicQuadruple> {
    let parts = s
        .split(',')
        .map(parse_integer)
        .collect::<Result<Vec<_>, _>>()?;
    let arr: [Integer; 4] = parts
        .try_into()
        .map_err(|_| Failure::Usage(format!("--seed needs four integers, got {s:?}")))?;
    Ok(CubicQuadruple::from_array(arr)?)
}

fn parse_matrix(s: &str) -> CliResult<SubstitutionMatrix> {
    let parts = s
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    let [m11, m12, m21, m22]: [_; 4] = parts
        .try_into()
        .map_err(|_| Failure::Usage(format!("--subst needs four entries, got {s:?}")))?;
    Ok(SubstitutionMatrix([[m11, m12], [m21, m22]]))
}

fn relation_output(
    cq: &ComboQuadruple,
    expand: bool,
    factor: bool,
    tex: bool,
) -> CliResult<String> {
    let expanded = expand.then(|| expand_relation(cq)).transpose()?;
    let factored = match (&expanded, factor) {
        (Some(pi), true) => Some(factor_common_root(pi)?),
        _ => None,
    };
    if tex {
        let mut lines = vec![latex::combo_relation(cq)];
        if let Some(pi) = &expanded {
            lines.push(latex::poly_identity(pi));
        }
        if let Some((q, _)) = &factored {
            lines.push(latex::poly_identity(q));
        }
        return Ok(lines.join("\n"));
    }
    let mut out = json!({ "relation": RelationRepr::from(cq) });
    if let Some(pi) = &expanded {
        out["expanded"] = to_value(PolyIdentityRepr::from(pi));
    }
    if let Some((q, g)) = &factored {
        out["factored"] = to_value(FactoredRepr {
            quotient: q.into(),
            divisor: CommonRootRepr::from(g),
        });
    }
    Ok(pretty(out))
}

fn quad(op: &QuadOp, tex: bool) -> CliResult<String> {
    match op {
        QuadOp::Piezas { a, b, c, d, e } => {
            let pq = PythagoreanQuadruple::new(
                parse_integer(a)?,
                parse_integer(b)?,
                parse_integer(c)?,
                parse_integer(d)?,
            )?;
            match e {
                None => {
                    let fq = piezas_generate(&pq);
                    if !fq.verify() {
                        return Err(Failure::Verification(
                            "square identity does not cancel".into(),
                        ));
                    }
                    Ok(if tex {
                        latex::square_forms(&fq)
                    } else {
                        let forms: Vec<FormRepr> = fq.forms.iter().map(FormRepr::from).collect();
                        pretty(json!({ "forms": forms }))
                    })
                }
                Some(e) => {
                    let t = piezas_degenerate_triple(&pq, &parse_integer(e)?)?;
                    if !t.verify() {
                        return Err(Failure::Verification(
                            "triple identity does not cancel".into(),
                        ));
                    }
                    Ok(if tex {
                        latex::form_triple(&t)
                    } else {
                        let forms: Vec<FormRepr> = t.forms.iter().map(FormRepr::from).collect();
                        pretty(json!({ "forms": forms }))
                    })
                }
            }
        }
        QuadOp::Quadruple { k } => {
            let q = powersum_quadruple(*k)?;
            let (scaled, scale) = integer_scale_affine(&q);
            Ok(if tex {
                latex::affine_quadruple(&scaled)
            } else {
                let exact: Vec<AffineRepr> = q.iter().map(AffineRepr::from).collect();
                let ints: Vec<AffineRepr> = scaled.iter().map(AffineRepr::from).collect();
                pretty(json!({
                    "k": k,
                    "combos": exact,
                    "integer_scale": RationalRepr::from(&scale),
                    "integer_combos": ints,
                }))
            })
        }
        QuadOp::Triple { k, m } => {
            let t = powersum_triple(*k, *m)?;
            let (scaled, scale) = t.integer_scaled();
            Ok(if tex {
                latex::powersum_triple(&scaled)
            } else {
                let exact: Vec<TermsRepr> = t.combos().iter().map(TermsRepr::from).collect();
                let ints: Vec<TermsRepr> = scaled.combos().iter().map(TermsRepr::from).collect();
                pretty(json!({
                    "k": k,
                    "m": m,
                    "combos": exact,
                    "integer_scale": RationalRepr::from(&scale),
                    "integer_combos": ints,
                }))
            })
        }
        QuadOp::EqualSums { u } => {
            let u = parse_integer(u)?;
            let ((a, b), (c, d)) = equal_sums_family(&u);
            Ok(if tex {
                latex::equal_sums((&a, &b), (&c, &d))
            } else {
                let sum = &a * &a + &b * &b;
                pretty(json!({
                    "u": u.to_string(),
                    "lhs": [a.to_string(), b.to_string()],
                    "rhs": [c.to_string(), d.to_string()],
                    "sum": sum.to_string(),
                }))
            })
        }
    }
}

fn search(cfg: &SearchConfig) -> CliResult<String> {
    let outcome = if cfg.output.is_some() {
        run_search_to_file(cfg)?
    } else {
        run_search(cfg)?
    };
    if cfg.output.is_none() {
        let lines: Vec<String> = outcome.records.iter().map(|r| r.to_json_line()).collect();
        return Ok(lines.join("\n"));
    }
    let taxicabs: Vec<String> = outcome
        .records
        .iter()
        .filter_map(|r| r.taxicab.as_ref().map(Integer::to_string))
        .collect();
    Ok(pretty(json!({
        "output": cfg.output.as_ref().map(|p| p.display().to_string()),
        "points": outcome.points,
        "records": outcome.records.len(),
        "degenerate": outcome.degenerate,
        "duplicates": outcome.duplicates,
        "taxicab": taxicabs,
    })))
}

fn verify_file(path: &Path) -> CliResult<String> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let report = |kind: &str, checked: usize| {
        Ok(pretty(
            json!({ "file": path.display().to_string(), "kind": kind, "checked": checked, "ok": true }),
        ))
    };
    let value: Option<Value> = serde_json::from_str(&text).ok();
    let Some(value) = value.filter(Value::is_object) else {
        let records = load_records(path)?;
        return report("records", records.len());
    };
    if value.get("q").is_some() {
        let repr: FormQuadrupleRepr = serde_json::from_value(value.clone()).map_err(Error::from)?;
        let fq = FormQuadruple::try_from(&repr)?;
        if !verify_cubic_identity(&fq) {
            return Err(Failure::Verification(
                "q1^3 + q2^3 + q3^3 - q4^3 is not zero".into(),
            ));
        }
        if let Some(seed) = &fq.seed {
            if !check_characterization(seed, &fq) {
                return Err(Failure::Verification(
                    "(d-b)(q1+q3) != (a+c)(q4-q2) for the recorded seed".into(),
                ));
            }
        }
        return report("forms", 1);
    }
    let mut checked = 0;
    if let Some(rel) = value
        .get("relation")
        .or_else(|| value.get("combos").map(|_| &value))
    {
        let repr: RelationRepr = serde_json::from_value(rel.clone()).map_err(Error::from)?;
        let cq = ComboQuadruple::try_from(&repr)?;
        let rebuilt = build_relation(&cq.forms, cq.mode)?;
        if rebuilt.combos != cq.combos || rebuilt.common_factor != cq.common_factor {
            return Err(Failure::Verification(
                "combos differ from a fresh build".into(),
            ));
        }
        if !(1..=15).all(|n| cq.holds_at(&int(n))) {
            return Err(Failure::Verification("relation fails numerically".into()));
        }
        checked += 1;
    }
    for key in ["expanded", "polys"] {
        let v = if key == "polys" {
            value.get("polys").map(|_| &value)
        } else {
            value.get(key)
        };
        if let Some(v) = v {
            check_identity(v)?;
            checked += 1;
        }
    }
    if let Some(f) = value.get("factored") {
        check_identity(&f["quotient"])?;
        checked += 1;
    }
    if checked == 0 {
        return Err(Failure::Usage(format!(
            "{}: unrecognized document",
            path.display()
        )));
    }
    report("relation", checked)
}

fn check_identity(v: &Value) -> CliResult<()> {
    let repr: PolyIdentityRepr = serde_json::from_value(v.clone()).map_err(Error::from)?;
    let pi = PolyIdentity::try_from(&repr)?;
    if !pi.verify() {
        return Err(Failure::Verification(
            "polynomial identity does not cancel".into(),
        ));
    }
    Ok(())
}
