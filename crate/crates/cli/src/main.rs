//! `filliform`: JSON front end for the filliform library.
//!
//! Exit codes: 0 on success, 1 on a domain error (the input was understood
//! but violates a precondition), 2 on I/O, parse or usage errors. Errors
//! are printed to stdout as `{"error": {"kind", "detail"}}`.

mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use filliform_core::algebra::{
    koszul_tor, kunneth_s1s2, laurent_snf, tor_ranks_shapiro, Coefficients, GradedRankVector, Subgroup,
};
use filliform_core::doc::{bigint_to_value, matrix_to_value, value_to_vector, KnotDoc};
use filliform_core::lattice::{
    adjunction_genus, complement_quotient, genus_class, is_isometric, minimal_part, root_system, shadow, standard, Form,
};
use filliform_core::ledger::{
    check_filling, connected_sum, embedding_range, enumerate_even_candidates, DEFAULT_MAX_RANK,
};
use filliform_core::linalg::format_rational;
use filliform_core::surgery::{self, KnotOrder};
use filliform_core::Error;

use input::{read_form, read_json, read_knot, read_laurent_matrix, read_link, read_manifold, CliError};
use output::{render, Format};

#[derive(Parser)]
#[command(name = "filliform", version, about = "Intersection forms, surgery homology and correction-term bounds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Accepted for compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Integral bilinear forms.
    #[command(subcommand)]
    Form(FormCmd),
    /// Integral surgery on framed links.
    #[command(subcommand)]
    Surgery(SurgeryCmd),
    /// Correction-term ledger and filling bounds.
    #[command(subcommand)]
    Ledger(LedgerCmd),
    /// Twisted-coefficient algebra.
    #[command(subcommand)]
    Alg(AlgCmd),
}

/// A form given as a JSON file (`-` for stdin) or a standard name.
#[derive(Args, Clone)]
struct FormInput {
    /// Path to a form document, `-` for stdin, or a name such as E8, D4,
    /// Gamma12, cube5 or lorentz9.
    input: Option<String>,
    /// Standard form name (alternative to INPUT).
    #[arg(long)]
    standard: Option<String>,
    /// Sign convention for standard forms: -1 (negative definite) or 1.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    sign: i8,
}

#[derive(Subcommand)]
enum FormCmd {
    /// Rank, signature, determinant, parity and definiteness.
    Invariants(FormInput),
    /// Shadow invariants s and s_bar of a negative-definite form.
    Shadow {
        #[command(flatten)]
        form: FormInput,
        /// Also print a characteristic covector realising s.
        #[arg(long)]
        witness: bool,
    },
    /// Root system of the norm -2 vectors.
    Roots(FormInput),
    /// Splits off <-1> summands: f = k<-1> + minimal part.
    Minimal(FormInput),
    /// Decides isometry of two negative-definite forms.
    Isometric {
        /// First form (path, `-` or standard name).
        left: String,
        /// Second form (path, `-` or standard name).
        right: String,
    },
    /// Induced form on x^perp / <x> for a primitive isotropic class x.
    Quotient {
        #[command(flatten)]
        form: FormInput,
        /// The class x as a JSON integer array.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        /// Use the genus-g class in lorentz(4g + 5) instead.
        #[arg(long, conflicts_with_all = ["class", "input", "standard"])]
        genus: Option<usize>,
    },
    /// Genus forced by adjunction for a class in lorentz(k).
    Adjunction {
        #[command(flatten)]
        form: FormInput,
        /// The class as a JSON integer array.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
}

#[derive(Subcommand)]
enum SurgeryCmd {
    /// H_1 of the surgered manifold from a link document.
    Homology { input: String },
    /// Which of the three homological cases a knot falls into.
    Classify { input: String },
    /// b2 decomposition of the surgery cobordism.
    B2 { input: String },
    /// Rational longitude, its divisibility and the order of the knot.
    Slope { input: String },
    /// The dual knot in the surgered manifold.
    Dual { input: String },
    /// Rational self-linking of a knot of finite order.
    Lk { input: String },
}

#[derive(Subcommand)]
enum LedgerCmd {
    /// delta(Y) = 4 ud + 2 b1, and delta(-Y).
    Delta {
        /// Built-in name (S3, S1xS2, T3, SigmagxS1, poincare) or a JSON file.
        manifold: String,
    },
    /// Connected sum of ledger entries.
    Sum { manifolds: Vec<String> },
    /// Orientation reversal.
    Reverse { manifold: String },
    /// Tests a form against the filling bound of a manifold.
    Check {
        manifold: String,
        #[command(flatten)]
        form: FormInput,
    },
    /// Even negative-definite fillings up to isometry.
    Enumerate {
        manifold: String,
        /// Largest rank searched; rank 8 with determinant 1 takes seconds.
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    /// Range of n for which Y0 # nP is not obstructed.
    Embed {
        #[arg(long)]
        y0: String,
        #[arg(long)]
        p: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffArg {
    Trivial,
    Full,
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Tor ranks: of coker(m) over Q[t, t^-1], or via Shapiro for a subgroup.
    Tor {
        /// Matrix document `{"matrix": [["1 - t"]]}` or `-`.
        input: Option<String>,
        /// Inline matrix, e.g. '[["1 - t"]]'.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = CoeffArg::Trivial)]
        coefficients: CoeffArg,
        /// Subgroup document `{"ambient": r, "basis": [[..]]}` for Shapiro ranks.
        #[arg(long, conflicts_with_all = ["input", "matrix"])]
        subgroup: Option<String>,
    },
    /// Smith form of a Laurent polynomial matrix.
    Snf {
        input: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Degree bookkeeping of # n (S^1 x S^2).
    Kunneth {
        /// Graded rank document or `-`.
        input: String,
        #[arg(long)]
        n: u32,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let _ = cli.seed;
    match run(&cli.group) {
        Ok(v) => {
            println!("{}", render(&v, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (kind, detail, code) = match &e {
                CliError::Domain(err) if err.is_parse() => ("parse".to_string(), err.to_string(), 2),
                CliError::Domain(err) => (err.kind().to_string(), err.to_string(), 1),
                CliError::Io(msg) => ("io".to_string(), msg.clone(), 2),
            };
            let v = json!({"error": {"kind": kind, "detail": detail}});
            println!("{}", render(&v, cli.format));
            ExitCode::from(code)
        }
    }
}

fn run(group: &Group) -> Result<Value, CliError> {
    match group {
        Group::Form(c) => run_form(c),
        Group::Surgery(c) => run_surgery(c),
        Group::Ledger(c) => run_ledger(c),
        Group::Alg(c) => run_alg(c),
    }
}

fn form_of(fi: &FormInput) -> Result<Form, CliError> {
    read_form(fi.input.as_deref(), fi.standard.as_deref(), fi.sign)
}

fn parse_vector(s: &str) -> Result<Vec<num_bigint::BigInt>, CliError> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("class: {e}")))?;
    Ok(value_to_vector(&v)?)
}

fn run_form(c: &FormCmd) -> Result<Value, CliError> {
    Ok(match c {
        FormCmd::Invariants(fi) => serde_json::to_value(form_of(fi)?.invariants()).expect("serializable"),
        FormCmd::Shadow { form, witness } => {
            let s = shadow(&form_of(form)?)?;
            let mut v = json!({"s": format_rational(&s.s), "s_bar": format_rational(&s.s_bar)});
            if *witness {
                v["witness"] = Value::Array(s.witness.coords.iter().map(bigint_to_value).collect());
            }
            v
        }
        FormCmd::Roots(fi) => {
            let r = root_system(&form_of(fi)?)?;
            json!({
                "label": r.label(),
                "components": r.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "root_count": r.root_count,
                "spans_full_rank": r.spans_full_rank,
            })
        }
        FormCmd::Minimal(fi) => {
            let (k, m) = minimal_part(&form_of(fi)?)?;
            json!({"copies": k, "gram": matrix_to_value(m.gram())})
        }
        FormCmd::Isometric { left, right } => {
            let f = read_form(Some(left), None, -1)?;
            let g = read_form(Some(right), None, -1)?;
            match is_isometric(&f, &g)? {
                Some(w) => json!({"isometric": true, "witness": matrix_to_value(&w)}),
                None => json!({"isometric": false, "witness": null}),
            }
        }
        FormCmd::Quotient { form, class, genus } => {
            let (amb, x) = match (genus, class) {
                (Some(g), _) => (standard::lorentz(4 * g + 5), genus_class(*g)),
                (None, Some(c)) => (form_of(form)?, parse_vector(c)?),
                (None, None) => return Err(Error::Parse("quotient needs --class or --genus".into()).into()),
            };
            let q = complement_quotient(&amb, &x)?;
            json!({
                "rank": q.form.rank(),
                "gram": matrix_to_value(q.form.gram()),
                "basis": matrix_to_value(&q.basis),
                "x": x.iter().map(bigint_to_value).collect::<Vec<_>>(),
            })
        }
        FormCmd::Adjunction { form, class } => {
            let g = adjunction_genus(&form_of(form)?, &parse_vector(class)?)?;
            json!({"genus": bigint_to_value(&g)})
        }
    })
}

fn run_surgery(c: &SurgeryCmd) -> Result<Value, CliError> {
    Ok(match c {
        SurgeryCmd::Homology { input } => {
            let h = surgery::homology(&read_link(input)?);
            json!({"b1": h.b1, "torsion": h.torsion_factors.iter().map(bigint_to_value).collect::<Vec<_>>()})
        }
        SurgeryCmd::Classify { input } => {
            let k = read_knot(input)?;
            let case = surgery::classify(&k)?;
            let before = surgery::homology(&k.link).b1;
            let after = surgery::homology(&surgery::extended_link(&k)).b1;
            json!({"case": case.number(), "b1": before, "b1_surgered": after})
        }
        SurgeryCmd::B2 { input } => {
            serde_json::to_value(surgery::cobordism_b2(&read_knot(input)?)?).expect("serializable")
        }
        SurgeryCmd::Slope { input } => {
            let k = read_knot(input)?;
            let mut v = serde_json::to_value(surgery::zero_slope(&k)?).expect("serializable");
            v["order"] = match surgery::knot_order(&k) {
                KnotOrder::Finite(o) => bigint_to_value(&o),
                KnotOrder::Infinite => Value::from("infinite"),
            };
            v
        }
        SurgeryCmd::Dual { input } => {
            serde_json::to_value(KnotDoc::from_knot(&surgery::dual_knot(&read_knot(input)?))).expect("serializable")
        }
        SurgeryCmd::Lk { input } => json!({"lk": format_rational(&surgery::rational_linking(&read_knot(input)?)?)}),
    })
}

fn forms_value(forms: &[Form]) -> Value {
    Value::Array(forms.iter().map(|f| json!({"rank": f.rank(), "gram": matrix_to_value(f.gram())})).collect())
}

fn run_ledger(c: &LedgerCmd) -> Result<Value, CliError> {
    Ok(match c {
        LedgerCmd::Delta { manifold } => {
            let m = read_manifold(manifold)?;
            json!({"name": m.name, "delta": format_rational(&m.delta()), "delta_rev": format_rational(&m.delta_rev())})
        }
        LedgerCmd::Sum { manifolds } => {
            let parts = manifolds.iter().map(|s| read_manifold(s)).collect::<Result<Vec<_>, _>>()?;
            serde_json::to_value(connected_sum(&parts)).expect("serializable")
        }
        LedgerCmd::Reverse { manifold } => {
            serde_json::to_value(read_manifold(manifold)?.reverse()).expect("serializable")
        }
        LedgerCmd::Check { manifold, form } => {
            serde_json::to_value(check_filling(&read_manifold(manifold)?, &form_of(form)?)?).expect("serializable")
        }
        LedgerCmd::Enumerate { manifold, max_rank } => {
            let c = enumerate_even_candidates(&read_manifold(manifold)?, *max_rank)?;
            json!({"forms": forms_value(&c.forms), "searched_rank": c.searched_rank, "truncated": c.truncated})
        }
        LedgerCmd::Embed { y0, p } => {
            serde_json::to_value(embedding_range(&read_manifold(y0)?, &read_manifold(p)?)?).expect("serializable")
        }
    })
}

fn run_alg(c: &AlgCmd) -> Result<Value, CliError> {
    Ok(match c {
        AlgCmd::Tor { input, matrix, coefficients, subgroup } => {
            if let Some(s) = subgroup {
                let v = read_json(s)?;
                let sub: Subgroup = serde_json::from_value(v).map_err(|e| Error::Parse(format!("subgroup: {e}")))?;
                let sub = Subgroup::new(sub.ambient, sub.basis)?;
                json!({"tor": tor_ranks_shapiro(sub.ambient, &sub)?})
            } else {
                let m = read_laurent_matrix(input.as_deref(), matrix.as_deref())?;
                let coeffs = match coefficients {
                    CoeffArg::Trivial => Coefficients::Trivial,
                    CoeffArg::Full => Coefficients::Full,
                };
                serde_json::to_value(koszul_tor(&m, coeffs)?).expect("serializable")
            }
        }
        AlgCmd::Snf { input, matrix } => {
            let m = read_laurent_matrix(input.as_deref(), matrix.as_deref())?;
            let s = laurent_snf(&m)?;
            json!({"factors": s.d.iter().map(|d| d.to_string()).collect::<Vec<_>>()})
        }
        AlgCmd::Kunneth { input, n } => {
            let v = read_json(input)?;
            let g: GradedRankVector =
                serde_json::from_value(v).map_err(|e| Error::Parse(format!("graded ranks: {e}")))?;
            serde_json::to_value(kunneth_s1s2(&g, *n)?).expect("serializable")
        }
    })
}
