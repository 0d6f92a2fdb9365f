use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use ncpos::algebra::rewrite::{reduce, Strategy, WordSum};
use ncpos::algebra::{degree_split, pbw_views, Element, MultiDegree, Order, Presentation, PresetKind};
use ncpos::expr::{eval_element, parse_element, parse_expression, parse_fraction, Ast};
use ncpos::fraction::{
    check_preset_conditions, common_denominator, frac_arith, membership_in_x, multiindex_sequence, ore_right,
    quotient_vanishes, verify_ore, CommonDenominatorReport, Condition, DenomAtom, DenomWord, FracOp, Fraction,
    FractionReport, Membership, Strictness, Vanishing,
};
use ncpos::poly::RatPoly;
use ncpos::rep::{
    finite_rep_split_and_pi_rho, global_minimum, hypothesis_ii_check, isolate_real_roots, min_eig_check, rep_evaluate,
    resolvent_integrability_check, sturm_positive, torsion_spectral_check, Positivity, RepKind, RepReport, TorsionWhich,
    Witness,
};
use ncpos::scalar::{format_rational, parse_rational, rat, Rational, Scalar};
use ncpos::sohs::{positivstellensatz_search, SearchMode, SearchOptions, SearchOutcome, SolverOptions, DEFAULT_MAX_ITER, DEFAULT_TOL};
use ncpos::{Error, Result};

/// Exact *-algebra arithmetic, Ore fractions, SOHS certificates and representation checks.
#[derive(Parser, Debug)]
#[command(name = "ncpos", version)]
struct Cli {
    /// weyl, axb or comm
    #[arg(long, global = true)]
    preset: Option<String>,
    /// first preset parameter, e.g. -3/2
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// second preset parameter
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// seed for randomized strategies
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RewriteStrategy {
    Leftmost,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    FirstLeft,
    SecondLeft,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    Marshall,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Schroedinger,
    AxbGrid,
    AxbScalar,
    CommAtoms,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Pos,
    Neg,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// PBW normal form
    Nf {
        expr: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: RewriteStrategy,
        #[arg(long, value_enum, default_value = "first-left")]
        order: OrderArg,
    },
    /// multidegree of an element or fraction
    Deg { expr: String },
    /// involution of an element or fraction
    Star { expr: String },
    /// fraction arithmetic: mul, add, sub (two operands) or star (one)
    Frac { op: String, lhs: String, rhs: Option<String> },
    /// executable checks of the preset conditions
    CheckConditions {
        /// ia, a1a2, ab or relations
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// membership of a fraction in the resolvent subalgebra
    Member { expr: String },
    /// Positivstellensatz certificate search
    Sohs {
        expr: String,
        /// componentwise Gram basis cap, e.g. 1,1
        #[arg(long)]
        cap: Option<String>,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value_t = 1)]
        max_denom_len: usize,
        #[arg(long, default_value_t = 1)]
        window: i64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// truncated representation checks
    RepCheck {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// element whose smallest eigenvalue is tracked
        #[arg(long)]
        expr: Option<String>,
        /// comma separated truncation sizes
        #[arg(long = "N", value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        #[arg(long, default_value_t = 2)]
        oversample: usize,
        /// grid interval length
        #[arg(long, default_value_t = 8.0)]
        length: f64,
        #[arg(long, value_enum, default_value = "pos")]
        sign: SignArg,
        /// scalar value of the first generator
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// atoms as `l,m;l,m`
        #[arg(long)]
        atoms: Option<String>,
        /// run the resolvent identities instead of the eigenvalue check
        #[arg(long)]
        resolvent: bool,
        /// include the evaluated matrix in the JSON report
        #[arg(long)]
        dump_matrices: bool,
    },
    /// corner coefficient and edge polynomial positivity
    Hyp2 { expr: String },
    /// vanishing of s⁻¹ a t⁻¹ in the quotient representations
    Vanish {
        expr: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value = "weak")]
        strictness: String,
    },
    /// exact strict positivity of a univariate polynomial
    Sturm {
        poly: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// coefficient views gamma, f_n and g_k
    Views { expr: String },
    /// degree split e = Σ b_i c_i with d(b_i) ≤ n and d(c_i) ≤ k
    Split {
        expr: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
    },
    /// right Ore rewriting w⁻¹ b = b' w'⁻¹
    Ore {
        expr: String,
        #[arg(long)]
        s: String,
    },
    /// common denominator of several words
    CommonDen { words: Vec<String> },
    /// multi-index sequence for d(c), d(s) and length m
    Multiindex {
        #[arg(long)]
        dc: String,
        #[arg(long)]
        ds: String,
        #[arg(long)]
        m: usize,
    },
    /// spectral function check in a torsion quotient
    Torsion {
        expr: String,
        /// s1 / s[n] for the first quotient, s2 / sb for the second
        #[arg(long)]
        which: String,
    },
    /// torsion split and pi_rho for commutative atoms
    PiRho {
        expr: String,
        #[arg(long)]
        atoms: String,
    },
}

/// Command result: JSON payload, plain text rendering and exit status.
struct Output {
    json: Value,
    text: String,
    inconclusive: bool,
}

impl Output {
    fn done(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), inconclusive: false }
    }

    fn report<T: Serialize>(value: &T, inconclusive: bool) -> Result<Self> {
        let json = to_json(value)?;
        let text = render(&json, 0);
        Ok(Output { json, text, inconclusive })
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

/// Indented `key: value` rendering of a JSON value.
fn render(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) | Value::Array(_) if !is_flat(x) => format!("{pad}{k}:\n{}", render(x, indent + 1)),
                _ => format!("{pad}{k}: {}", scalar_text(x)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|x| {
                if is_flat(x) {
                    format!("{pad}- {}", scalar_text(x))
                } else {
                    format!("{pad}-\n{}", render(x, indent + 1))
                }
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => format!("{pad}{}", scalar_text(other)),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_) | Value::Null)) && a.len() <= 8,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn rational_arg(text: &str, what: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::InvalidParameters(format!("{what}: `{text}` is not a rational")))
}

fn presentation(cli: &Cli, default: PresetKind) -> Result<Presentation> {
    let kind = match &cli.preset {
        Some(p) => PresetKind::parse(p).ok_or_else(|| Error::InvalidParameters(format!("unknown preset `{p}`")))?,
        None => default,
    };
    if cli.alpha.is_none() && cli.beta.is_none() {
        return Ok(Presentation::default_for(kind));
    }
    let base = Presentation::default_for(kind);
    let alpha = cli.alpha.as_deref().map(|a| rational_arg(a, "alpha")).transpose()?.unwrap_or(base.alpha);
    let beta = cli.beta.as_deref().map(|b| rational_arg(b, "beta")).transpose()?.unwrap_or(base.beta);
    Presentation::new(kind, alpha, beta)
}

fn parse_degree(text: &str) -> Result<MultiDegree> {
    let parts: std::result::Result<Vec<i64>, _> =
        text.trim_matches(|c| c == '(' || c == ')').split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse::<i64>()).collect();
    match parts {
        Ok(p) if !p.is_empty() => Ok(MultiDegree(p)),
        _ => Err(Error::InvalidParameters(format!("`{text}` is not a multidegree like 1,2"))),
    }
}

fn parse_atoms(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let v: Vec<&str> = pair.split(',').map(str::trim).collect();
            let num = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .ok()
                    .or_else(|| parse_rational(s).map(|r| ncpos::scalar::rational_to_f64(&r)))
                    .ok_or_else(|| Error::InvalidParameters(format!("bad atom coordinate `{s}`")))
            };
            match v.as_slice() {
                [l, m] => Ok((num(l)?, num(m)?)),
                _ => Err(Error::InvalidParameters(format!("atom `{pair}` must be `l,m`"))),
            }
        })
        .collect()
}

/// Evaluates an inverse-free AST in the free algebra, leaving rewriting to the caller.
fn free_words(pres: &Presentation, ast: &Ast) -> Result<WordSum> {
    Ok(match ast {
        Ast::Num(r) => WordSum::single(Vec::new(), Scalar::real(r.clone())),
        Ast::ImagUnit => WordSum::single(Vec::new(), Scalar::i()),
        Ast::Gen(name) => match pres.generator_index(name) {
            Some(i) => WordSum::single(vec![i as u8], Scalar::one()),
            None => WordSum::from_element(&eval_element(pres, ast)?),
        },
        Ast::Add(l, r) => free_words(pres, l)?.plus(&free_words(pres, r)?),
        Ast::Sub(l, r) => free_words(pres, l)?.plus(&free_words(pres, r)?.scaled(&Scalar::from_int(-1))),
        Ast::Mul(l, r) => free_words(pres, l)?.times(&free_words(pres, r)?),
        Ast::Pow(b, e) => {
            let base = free_words(pres, b)?;
            (0..*e).fold(WordSum::unit(), |acc, _| acc.times(&base))
        }
        Ast::Adj(e) => free_words(pres, e)?.adjoint(),
        Ast::Inv(_) => return Err(Error::NotPolynomial("nf takes polynomial expressions".into())),
    })
}

fn element_to_ratpoly(pres: &Presentation, e: &Element) -> Result<RatPoly> {
    let deg = e.terms().keys().map(|m| m.j as usize).max().unwrap_or(0);
    let mut coeffs = vec![Rational::from_integer(0.into()); deg + 1];
    for (m, s) in e.terms() {
        if !s.is_real() {
            return Err(Error::NonRealPolynomial(pres.element_to_text(e)));
        }
        coeffs[m.j as usize] = s.re.clone();
    }
    Ok(RatPoly::new(coeffs))
}

fn rename_var(ast: Ast, from: &str) -> Ast {
    let r = |b: Box<Ast>| Box::new(rename_var(*b, from));
    match ast {
        Ast::Gen(n) if n == from => Ast::Gen("x".into()),
        Ast::Add(a, b) => Ast::Add(r(a), r(b)),
        Ast::Sub(a, b) => Ast::Sub(r(a), r(b)),
        Ast::Mul(a, b) => Ast::Mul(r(a), r(b)),
        Ast::Pow(a, e) => Ast::Pow(r(a), e),
        Ast::Inv(a) => Ast::Inv(r(a)),
        Ast::Adj(a) => Ast::Adj(r(a)),
        other => other,
    }
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Point(x) => json!({"point": format_rational(x)}),
        Witness::Interval(lo, hi) => json!({"interval": [format_rational(lo), format_rational(hi)]}),
    }
}

fn frac_text(pres: &Presentation, f: &Fraction) -> String {
    if f.den.is_unit() {
        pres.element_to_text(&f.num)
    } else {
        f.to_text(pres)
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let weyl = PresetKind::Weyl;
    match &cli.cmd {
        Cmd::Nf { expr, strategy, order } => {
            let pres = presentation(cli, weyl)?;
            let ast = parse_expression(expr)?;
            let order = match order {
                OrderArg::FirstLeft => Order::FirstLeft,
                OrderArg::SecondLeft => Order::SecondLeft,
            };
            let words = free_words(&pres, &ast)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let strat = match strategy {
                RewriteStrategy::Leftmost => Strategy::Leftmost,
                RewriteStrategy::Random => Strategy::Random(&mut rng),
            };
            let reduced = reduce(&pres, &words, order, strat);
            let canonical = eval_element(&pres, &ast)?;
            let e = match order {
                Order::FirstLeft => reduced,
                Order::SecondLeft => pres.from_order(reduced.terms(), Order::SecondLeft),
            };
            if e != canonical {
                return Err(Error::Internal("rewriting did not reach the canonical normal form".into()));
            }
            let text = pres.element_to_text(&e);
            Ok(Output::done(json!({"preset": pres.kind, "normal_form": text, "pretty": pres.element_to_pretty(&e)}), text))
        }
        Cmd::Deg { expr } => {
            let pres = presentation(cli, weyl)?;
            let f = parse_fraction(&pres, expr)?;
            let d = f.multidegree(&pres)?;
            Ok(Output::done(json!({"degree": d.components(), "text": d.to_string()}), d.to_string()))
        }
        Cmd::Star { expr } => {
            let pres = presentation(cli, weyl)?;
            let f = parse_fraction(&pres, expr)?;
            let s = frac_arith(&pres, FracOp::Star, &f, None)?;
            let text = frac_text(&pres, &s);
            Ok(Output::done(to_json(&FractionReport::new(&pres, &s))?, text))
        }
        Cmd::Frac { op, lhs, rhs } => {
            let pres = presentation(cli, weyl)?;
            let op = FracOp::parse(op).ok_or_else(|| Error::InvalidParameters(format!("unknown fraction op `{op}`")))?;
            let f = parse_fraction(&pres, lhs)?;
            let g = rhs.as_deref().map(|r| parse_fraction(&pres, r)).transpose()?;
            let out = frac_arith(&pres, op, &f, g.as_ref())?;
            let text = frac_text(&pres, &out);
            Ok(Output::done(to_json(&FractionReport::new(&pres, &out))?, text))
        }
        Cmd::CheckConditions { which, window } => {
            let pres = presentation(cli, weyl)?;
            let cond = Condition::parse(which).ok_or_else(|| Error::InvalidParameters(format!("unknown condition `{which}`")))?;
            let report = check_preset_conditions(&pres, cond, *window)?;
            Output::report(&report, !report.passed)
        }
        Cmd::Member { expr } => {
            let pres = presentation(cli, weyl)?;
            let f = parse_fraction(&pres, expr)?;
            Ok(match membership_in_x(&pres, &f)? {
                Membership::InX(w) => {
                    let text = format!("in X: {w}");
                    Output::done(json!({"decision": "InX", "witness": w.to_string()}), text)
                }
                Membership::CriterionFailed { num_degree, den_degree } => Output {
                    json: json!({"decision": "CriterionFailed", "num_degree": num_degree.to_string(), "den_degree": den_degree.to_string()}),
                    text: format!("criterion failed: d(num) = {num_degree} is not <= d(den) = {den_degree}"),
                    inconclusive: true,
                },
            })
        }
        Cmd::Sohs { expr, cap, mode, epsilon, t, max_denom_len, window, tol, max_iter } => {
            let pres = presentation(cli, weyl)?;
            let c = parse_element(&pres, expr)?;
            let mode = match mode {
                ModeArg::Strict => SearchMode::Strict,
                ModeArg::Marshall => {
                    let eps = rational_arg(epsilon.as_deref().unwrap_or("1"), "epsilon")?;
                    if eps <= rat(0, 1) {
                        return Err(Error::InvalidParameters("epsilon must be positive".into()));
                    }
                    let t = t.as_deref().ok_or_else(|| Error::InvalidParameters("marshall mode needs --t".into()))?;
                    SearchMode::Marshall { epsilon: eps, t: DenomWord::parse(t, &pres)? }
                }
            };
            let opts = SearchOptions {
                max_denom_len: *max_denom_len,
                cap: cap.as_deref().map(parse_degree).transpose()?,
                window: *window,
                solver: SolverOptions { tol: *tol, max_iter: *max_iter, ..SolverOptions::default() },
            };
            let out = positivstellensatz_search(&pres, &c, &mode, &opts)?;
            let inconclusive = matches!(out, SearchOutcome::NotFoundWithinCaps { .. });
            Output::report(&out, inconclusive)
        }
        Cmd::RepCheck { kind, expr, sizes, margin, oversample, length, sign, gamma, atoms, resolvent, dump_matrices } => {
            let rep = match kind {
                KindArg::Schroedinger => RepKind::Schroedinger { n: sizes.iter().copied().max().unwrap_or(128) },
                KindArg::AxbGrid => RepKind::AxBGrid {
                    n: sizes.iter().copied().max().unwrap_or(256),
                    length: *length,
                    positive: matches!(sign, SignArg::Pos),
                },
                KindArg::AxbScalar => RepKind::AxBScalar { gamma: rational_arg(gamma.as_deref().unwrap_or("0"), "gamma")? },
                KindArg::CommAtoms => RepKind::CommAtoms {
                    atoms: parse_atoms(atoms.as_deref().ok_or_else(|| Error::InvalidParameters("comm-atoms needs --atoms".into()))?)?,
                },
            };
            let pres = presentation(cli, rep.preset())?;
            if pres.kind != rep.preset() {
                return Err(Error::UnsupportedRepresentation(format!("{} needs the {} preset", rep.name(), rep.preset())));
            }
            if *resolvent {
                let r = resolvent_integrability_check(&rep, &pres)?;
                let report = RepReport {
                    check: "resolvent".into(),
                    preset: pres.kind.to_string(),
                    params: format!("{}; {:?}", pres.describe_params(), rep),
                    n_sequence: vec![(rep.size(), r.tolerance)],
                    residuals: r.residuals.clone(),
                    decision: if r.passed { "passed".into() } else { "failed".into() },
                };
                return Output::report(&report, !r.passed);
            }
            let text = expr.as_deref().ok_or_else(|| Error::InvalidParameters("rep-check needs --expr or --resolvent".into()))?;
            let c = parse_element(&pres, text)?;
            let default_sizes: Vec<usize> = match rep {
                RepKind::Schroedinger { .. } => vec![32, 64, 128],
                RepKind::AxBGrid { .. } => vec![64, 128, 256],
                _ => vec![rep.size()],
            };
            let sizes = if sizes.is_empty() { default_sizes } else { sizes.clone() };
            let r = min_eig_check(&rep, &pres, &c, *margin, &sizes, *oversample)?;
            let mut residuals = std::collections::BTreeMap::new();
            residuals.insert("min_eig".to_string(), r.value);
            if let [.., (_, a), (_, b)] = r.n_sequence.as_slice() {
                residuals.insert("relative_change".to_string(), (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE));
            }
            let decision = if !r.stabilized {
                "not_stabilized"
            } else if r.margin_positive {
                "margin_positive"
            } else {
                "not_margin_positive"
            };
            let report = RepReport {
                check: "min_eig".into(),
                preset: pres.kind.to_string(),
                params: format!("{}; {}; margin {}; oversample {}", pres.describe_params(), rep.name(), margin, oversample),
                n_sequence: r.n_sequence.clone(),
                residuals,
                decision: decision.into(),
            };
            let mut out = Output::report(&report, !r.stabilized)?;
            if *dump_matrices {
                let largest = r.n_sequence.last().map(|x| x.0).unwrap_or(rep.size());
                let m = rep_evaluate(&rep.with_size(largest), &pres, &c, *oversample)?;
                let rows: Vec<Vec<[f64; 2]>> = m.row_iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect();
                out.json["matrix"] = to_json(&rows)?;
            }
            Ok(out)
        }
        Cmd::Hyp2 { expr } => {
            let pres = presentation(cli, weyl)?;
            let c = parse_element(&pres, expr)?;
            Output::report(&hypothesis_ii_check(&pres, &c)?, false)
        }
        Cmd::Vanish { expr, s, t, r, strictness } => {
            let pres = presentation(cli, weyl)?;
            let a = parse_element(&pres, expr)?;
            let s = DenomWord::parse(s, &pres)?;
            let t = DenomWord::parse(t, &pres)?;
            let r = r.as_deref().map(|x| DenomAtom::parse(x, &pres)).transpose()?;
            let st = Strictness::parse(strictness).ok_or_else(|| Error::InvalidParameters(format!("unknown strictness `{strictness}`")))?;
            let v = quotient_vanishes(&pres, &a, &s, &t, r, st)?;
            let unknown = v == Vanishing::Unknown;
            Output::report(&v, unknown)
        }
        Cmd::Sturm { poly, var } => {
            let comm = Presentation::comm();
            let ast = rename_var(parse_expression(poly)?, var);
            let e = eval_element(&comm, &ast)?;
            let p = element_to_ratpoly(&comm, &e)?;
            let decision = sturm_positive(&p)?;
            let roots: Vec<[String; 2]> =
                isolate_real_roots(&p, &rat(1, 1 << 20)).iter().map(|(lo, hi)| [format_rational(lo), format_rational(hi)]).collect();
            let (positive, witness) = match &decision {
                Positivity::StrictlyPositive => (true, Value::Null),
                Positivity::NotStrictlyPositive { witness } => (false, witness_json(witness)),
            };
            let json = json!({
                "polynomial": p.to_text(var),
                "strictly_positive": positive,
                "witness": witness,
                "real_root_intervals": roots,
                "global_minimum": global_minimum(&p),
            });
            let text = render(&json, 0);
            Ok(Output::done(json, text))
        }
        Cmd::Views { expr } => {
            let pres = presentation(cli, weyl)?;
            let e = parse_element(&pres, expr)?;
            let v = pbw_views(&pres, &e);
            let names = pres.generator_names();
            let second = names.get(1).copied().unwrap_or("y");
            let f: serde_json::Map<String, Value> = v.f.iter().map(|(n, p)| (n.to_string(), Value::String(p.to_text(names[0])))).collect();
            let g: serde_json::Map<String, Value> = v.g.iter().map(|(k, p)| (k.to_string(), Value::String(p.to_text(second)))).collect();
            let json = json!({"normal_form": pres.element_to_text(&e), "f": f, "g": g});
            let text = render(&json, 0);
            Ok(Output::done(json, text))
        }
        Cmd::Split { expr, n, k } => {
            let pres = presentation(cli, weyl)?;
            let e = parse_element(&pres, expr)?;
            let pieces = degree_split(&pres, &e, &parse_degree(n)?, &parse_degree(k)?)?;
            let rows: Vec<Value> =
                pieces.iter().map(|(b, c)| json!({"left": pres.element_to_text(b), "right": pres.element_to_text(c)})).collect();
            let json = json!({"pieces": rows});
            let text = render(&json, 0);
            Ok(Output::done(json, text))
        }
        Cmd::Ore { expr, s } => {
            let pres = presentation(cli, weyl)?;
            let b = parse_element(&pres, expr)?;
            let w = DenomWord::parse(s, &pres)?;
            let (b2, w2) = ore_right(&pres, &w, &b);
            let json = json!({
                "numerator": pres.element_to_text(&b2),
                "denominator": w2.to_string(),
                "verified": verify_ore(&pres, &w, &b, &b2, &w2),
            });
            let text = render(&json, 0);
            Ok(Output::done(json, text))
        }
        Cmd::CommonDen { words } => {
            let pres = presentation(cli, weyl)?;
            let ws = words.iter().map(|w| DenomWord::parse(w, &pres)).collect::<Result<Vec<_>>>()?;
            let cd = common_denominator(&pres, &ws)?;
            Output::report(&CommonDenominatorReport::new(&pres, &cd), false)
        }
        Cmd::Multiindex { dc, ds, m } => {
            let seq = multiindex_sequence(&parse_degree(dc)?, &parse_degree(ds)?, *m)?;
            let rows: Vec<String> = seq.iter().map(|d| d.to_string()).collect();
            let text = rows.join("\n");
            Ok(Output::done(json!({"sequence": rows}), text))
        }
        Cmd::Torsion { expr, which } => {
            let pres = presentation(cli, weyl)?;
            let c = parse_element(&pres, expr)?;
            let w = TorsionWhich::parse(which).ok_or_else(|| Error::InvalidParameters(format!("unknown quotient `{which}`")))?;
            Output::report(&torsion_spectral_check(&pres, &c, w)?, false)
        }
        Cmd::PiRho { expr, atoms } => {
            let pres = presentation(cli, PresetKind::CommPoly)?;
            let c = parse_element(&pres, expr)?;
            let kind = RepKind::CommAtoms { atoms: parse_atoms(atoms)? };
            let split = finite_rep_split_and_pi_rho(&kind, &pres, &c)?;
            let undefined = split.torsionfree.is_empty();
            Output::report(&split, undefined)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).expect("serializable report") } else { out.text };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{body}");
            ExitCode::from(if out.inconclusive { 2 } else { 0 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
