use std::fs;

use diffpi_core::algebra::{
    check_l_stability, split_derivation, wedderburn, Algebra, DerivationAction, LAlgebra,
};
use diffpi_core::cochar::{cocharacter, dimension};
use diffpi_core::codim::codim;
use diffpi_core::exact::{format_scalar, Scalar};
use diffpi_core::free::{
    consequences, factorial_u128, format_diff_poly, operator_basis, parse_diff_poly,
    OperatorBasis,
};
use diffpi_core::growth::{block_sum_split, classify, exponent, Evidence, GrowthOptions, Witness};
use diffpi_core::Error;

use crate::input::{digest, Loaded};
use crate::report::{Cell, Report, Section};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_NON_SPLIT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_INTEGRALITY: i32 = 5;
pub const EXIT_FORMULA: i32 = 6;
pub const EXIT_NOT_SEMISIMPLE: i32 = 7;

/// A failure that ends the run before a report exists.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::NotMultilinear(_)
        | Error::UnknownOperator(_)
        | Error::UnknownBuiltin(_)
        | Error::DegreeMismatch { .. }
        | Error::ArityMismatch(_) => EXIT_USAGE,
        Error::NonSplit(_) => EXIT_NON_SPLIT,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::NonIntegerMultiplicity { .. } => EXIT_INTEGRALITY,
        _ => EXIT_INVARIANT,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut message = e.to_string();
        if let Error::NonSplit(_) = e {
            message.push_str(
                "\nhint: every simple component of A/J must be a full matrix algebra over Q; \
                 if the failure came from the randomized search, retry with another --seed",
            );
        }
        Failure {
            code: exit_code(&e),
            message,
        }
    }
}

/// Settings shared by every command.
pub struct Context {
    pub seed: u64,
    pub budget: u128,
    pub degree_cap: usize,
}

/// `3/2 e11 - e22`, or `0`.
pub fn format_vector(labels: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (x, label) in v.iter().zip(labels) {
        let s = format_scalar(x);
        if s == "0" {
            continue;
        }
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        out.push_str(match (out.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!(
        "[{}]",
        xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
    )
}

fn operators(l: &LAlgebra, ctx: &Context) -> Result<OperatorBasis, Failure> {
    Ok(operator_basis(&l.algebra, &l.action, ctx.degree_cap)?)
}

fn setup_section(l: &LAlgebra, ob: &OperatorBasis) -> Section {
    let words: Vec<String> = (0..ob.len())
        .map(|i| match ob.word_text(i) {
            w if w.is_empty() => "id".to_string(),
            w => w,
        })
        .collect();
    Section::facts("setup")
        .fact("dim", l.algebra.dim())
        .fact("generators", list(&l.action.generator_names()))
        .fact("operator_basis_size", ob.len())
        .fact("operator_words", list(&words))
        .fact(
            "note",
            "monomial labels run over a basis of the image of U(L) in End(A)",
        )
}

fn not_semisimple_warning(report: &mut Report, act: &DerivationAction) {
    if act.lie_dim() > 0 && !act.killing_nondegenerate() {
        report.warn(
            EXIT_NOT_SEMISIMPLE,
            format!(
                "acting Lie algebra (dim {}) is not semisimple: Killing form rank {}; \
                 the block formula for the exponent assumes a semisimple action",
                act.lie_dim(),
                act.killing_rank()
            ),
        );
    }
}

pub fn validate(input: &Loaded, ctx: &Context) -> Report {
    let a = &input.algebra;
    let mut report = Report::new("validate", digest(&[&input.digest_source]), ctx.seed);
    let assoc = a.associativity_witness();
    let mut checks = Section::facts("checks")
        .fact("dim", a.dim())
        .fact("associative", assoc.is_none())
        .fact(
            "associativity_witness",
            assoc.map(|(i, j, k)| format!("({i}, {j}, {k})")),
        );
    if let Some((i, j, k)) = assoc {
        report.warn(
            EXIT_INVARIANT,
            format!("(b{i} b{j}) b{k} != b{i} (b{j} b{k}) (0-based indices)"),
        );
    }
    let unit = a.unit();
    checks.push_fact("unit", unit.as_ref().map(|u| format_vector(a.labels(), u)));
    if let Some(u) = &input.unit {
        let ok = a.is_unit(u);
        checks.push_fact("declared_unit_ok", ok);
        if !ok {
            report.warn(EXIT_INVARIANT, "declared unit is not a two-sided identity");
        }
    }
    let mut ders = Section::table("derivations", &["name", "leibniz", "witness"]);
    for (name, d) in &input.derivations {
        let w = d.leibniz_witness(a);
        ders.push_row(vec![
            name.as_str().into(),
            w.is_none().into(),
            w.map(|(i, j)| format!("({i}, {j})")).into(),
        ]);
        if let Some((i, j)) = w {
            report.warn(
                EXIT_INVARIANT,
                format!("`{name}` violates the Leibniz rule on (b{i}, b{j})"),
            );
        }
    }
    let act = DerivationAction::new(a.dim(), input.derivations.clone());
    let lie = Section::facts("lie")
        .fact("lie_dim", act.lie_dim())
        .fact("generators_closed", act.generators_closed())
        .fact("killing_rank", act.killing_rank())
        .fact("l_semisimple", act.killing_nondegenerate());
    report.sections.extend([checks, ders, lie]);
    report
}

pub fn codim_cmd(
    input: &Loaded,
    l: &LAlgebra,
    ctx: &Context,
    max_n: usize,
    ordinary: bool,
    formula: bool,
) -> Result<Report, Failure> {
    if max_n == 0 {
        return Err(Failure::usage("--max-n must be at least 1"));
    }
    let ob = operators(l, ctx)?;
    let mut report = Report::new("codim", digest(&[&input.digest_source]), ctx.seed);
    let mut headers = vec!["n", "c_n_L", "c_n"];
    if formula {
        headers.extend(["formula", "flag"]);
    }
    let mut table = Section::table("codimensions", &headers);
    let mut mismatches = Vec::new();
    for n in 1..=max_n {
        let r = match codim(&l.algebra, &ob, n, ordinary, ctx.budget) {
            Ok(r) => r,
            Err(e @ Error::BudgetExceeded { .. }) => {
                report.warn(
                    EXIT_BUDGET,
                    format!("{e}; rows for n < {n} are complete"),
                );
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let mut row: Vec<Cell> = vec![n.into(), r.c_n_l.into(), r.c_n_ordinary.into()];
        if formula {
            let f = (1u128 << (n - 1)) * n as u128 - 1;
            row.push(Cell::Int(f as i128));
            row.push(match r.c_n_l {
                Some(c) if c as u128 == f => "MATCH".into(),
                Some(_) => {
                    mismatches.push(n);
                    "MISMATCH".into()
                }
                None => Cell::Null,
            });
        }
        table.push_row(row);
    }
    if !mismatches.is_empty() {
        report.warn(
            EXIT_FORMULA,
            format!(
                "closed form 2^(n-1)*n - 1 disagrees with the computed c_n_L at n = {}",
                mismatches
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        );
    }
    report.sections.push(setup_section(l, &ob));
    report.sections.push(table);
    Ok(report)
}

pub fn cocharacter_cmd(
    input: &Loaded,
    l: &LAlgebra,
    ctx: &Context,
    n: usize,
) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let ob = operators(l, ctx)?;
    let t = cocharacter(&l.algebra, &ob, n, ctx.budget)?;
    let mut report = Report::new("cocharacter", digest(&[&input.digest_source]), ctx.seed);
    let summary = Section::facts("summary")
        .fact("n", n)
        .fact("c_n_L", t.c_n_l)
        .fact("c_n", t.c_n_ordinary)
        .fact("colength_L", t.colength_l)
        .fact("colength", t.colength_ordinary);
    let mut rows = Section::table(
        "multiplicities",
        &["partition", "m_L", "m", "below_first_row", "dim_chi"],
    );
    for r in &t.rows {
        rows.push_row(vec![
            r.partition.to_string().into(),
            r.m_l.into(),
            r.m_ordinary.into(),
            r.partition.below_first_row().into(),
            format_scalar(&dimension(&r.partition)).into(),
        ]);
    }
    let mut traces = Section::table("class_traces", &["class", "class_size", "trace_L", "trace"]);
    for (mu, tr) in &t.module_character {
        traces.push_row(vec![
            mu.to_string().into(),
            Cell::Int(mu.class_size() as i128),
            format_scalar(tr).into(),
            format_scalar(&t.ordinary_character[mu]).into(),
        ]);
    }
    report.sections.extend([setup_section(l, &ob), summary, rows, traces]);
    Ok(report)
}

pub fn exponent_cmd(input: &Loaded, l: &LAlgebra, ctx: &Context) -> Result<Report, Failure> {
    let w = wedderburn(&l.algebra, ctx.seed)?;
    let d = exponent(&l.algebra, &w);
    let mut report = Report::new("exponent", digest(&[&input.digest_source]), ctx.seed);
    report.sections.push(
        Section::facts("exponent")
            .fact("exponent", d)
            .fact("polynomial_growth", d <= 1)
            .fact("block_dims", w.block_dims.as_slice())
            .fact("radical_dim", w.radical_basis.len())
            .fact("q", w.nilpotency_index)
            .fact("l_semisimple", l.action.lie_dim() == 0 || l.action.killing_nondegenerate()),
    );
    not_semisimple_warning(&mut report, &l.action);
    Ok(report)
}

fn witness_cells(labels: &[String], w: &Witness) -> Vec<Cell> {
    match w {
        Witness::RadicalPath { from, to, element } => vec![
            "radical_path".into(),
            format!("({}, {})", from + 1, to + 1).into(),
            format_vector(labels, element).into(),
        ],
        Witness::MatrixBlock { block, size } => vec![
            "matrix_block".into(),
            format!("({})", block + 1).into(),
            format!("M_{size}").into(),
        ],
    }
}

fn evidence_text(e: Evidence) -> &'static str {
    match e {
        Evidence::Consistent => "consistent at computed n",
        Evidence::Inconsistent => "exponential-looking at computed n",
        Evidence::Insufficient => "insufficient data",
    }
}

pub fn classify_cmd(
    input: &Loaded,
    l: &LAlgebra,
    ctx: &Context,
    depth: usize,
) -> Result<Report, Failure> {
    let opts = GrowthOptions {
        seed: ctx.seed,
        depth,
        budget: ctx.budget,
        degree_cap: ctx.degree_cap,
    };
    let r = classify(l, &opts)?;
    let labels = l.algebra.labels();
    let mut report = Report::new("classify", digest(&[&input.digest_source]), ctx.seed);
    let summary = Section::facts("summary")
        .fact("exponent", r.exponent)
        .fact("polynomial_growth", r.polynomial_growth)
        .fact("q", r.q)
        .fact("block_dims", r.block_dims.as_slice())
        .fact("radical_dim", r.radical_dim)
        .fact("max_n", r.max_n);
    let mut witness = Section::facts("witness");
    match &r.witness {
        Some(w) => {
            let cells = witness_cells(labels, w);
            for (k, c) in ["kind", "blocks", "element"].iter().zip(cells) {
                witness.push_fact(k, c);
            }
        }
        None => witness.push_fact("kind", Cell::Null),
    }
    let mut obstructions = Section::table("obstructions", &["kind", "blocks", "element"]);
    for w in &r.obstructions {
        obstructions.push_row(witness_cells(labels, w));
    }
    let h = &r.hypothesis;
    let hypothesis = Section::facts("hypothesis")
        .fact("lie_dim", h.lie_dim)
        .fact("l_semisimple", h.lie_semisimple)
        .fact("generators_closed", h.generators_closed)
        .fact("split_over_q", h.split)
        .fact("radical_l_stable", h.radical_l_stable);
    let c = &r.conditions;
    let mut conditions = Section::table("conditions", &["condition", "verdict", "basis"]);
    let fit = |e: &diffpi_core::growth::GrowthEvidence| match e.fitted_base {
        Some(b) => format!("finite-data evidence, fitted base {b:.3}"),
        None => "finite-data evidence".into(),
    };
    conditions.push_row(vec![
        "(1) c_n_L polynomially bounded".into(),
        evidence_text(c.c1_codim_bounded.verdict).into(),
        fit(&c.c1_codim_bounded).into(),
    ]);
    conditions.push_row(vec![
        "(2) exp_L <= 1".into(),
        c.c2_exp_l_at_most_one.into(),
        "block formula".into(),
    ]);
    conditions.push_row(vec![
        "(3) c_n polynomially bounded".into(),
        evidence_text(c.c3_ordinary_bounded.verdict).into(),
        fit(&c.c3_ordinary_bounded).into(),
    ]);
    conditions.push_row(vec![
        "(4) exp <= 1".into(),
        c.c4_exp_at_most_one.into(),
        "block sizes and radical paths".into(),
    ]);
    conditions.push_row(vec![
        "(5) no UT2 pattern".into(),
        c.c5_no_ut2.into(),
        "structural witness search".into(),
    ]);
    conditions.push_row(vec![
        "(6) block-sum split".into(),
        c.c6_block_sum.into(),
        "dim B/J(B) <= 1 per summand".into(),
    ]);
    for (n, ok) in &c.c7_support {
        conditions.push_row(vec![
            format!("(7) support below q at n = {n}").into(),
            (*ok).into(),
            "cocharacter".into(),
        ]);
    }
    let mut codims = Section::table("codimensions", &["n", "c_n_L", "c_n"]);
    for p in &r.codimensions {
        codims.push_row(vec![p.n.into(), p.c_n_l.into(), p.c_n.into()]);
    }
    if !c.structural_coherent() {
        report.warn(EXIT_INVARIANT, "structural conditions (2), (4), (5), (6) disagree");
    }
    if r.max_n < depth {
        report.warn(
            EXIT_BUDGET,
            format!("budget stopped the cocharacter data at n = {}", r.max_n),
        );
    }
    not_semisimple_warning(&mut report, &l.action);
    report
        .sections
        .extend([summary, witness, obstructions, hypothesis, conditions, codims]);
    Ok(report)
}

pub fn check_identity_cmd(
    input: &Loaded,
    l: &LAlgebra,
    ctx: &Context,
    polys: &[String],
) -> Result<Report, Failure> {
    let ob = operators(l, ctx)?;
    let mut chunks: Vec<&[u8]> = vec![&input.digest_source];
    chunks.extend(polys.iter().map(|p| p.as_bytes()));
    let mut report = Report::new("check-identity", digest(&chunks), ctx.seed);
    let mut table = Section::table("verdicts", &["input", "normalized", "degree", "identity"]);
    for src in polys {
        let p = parse_diff_poly(src, &ob).map_err(|e| Failure {
            code: exit_code(&e),
            message: format!("{src}: {e}"),
        })?;
        let ok = diffpi_core::codim::is_identity(&p, &l.algebra, &ob);
        table.push_row(vec![
            src.as_str().into(),
            format_diff_poly(&p, &ob).into(),
            p.degree().into(),
            ok.into(),
        ]);
    }
    report.sections.extend([setup_section(l, &ob), table]);
    Ok(report)
}

/// Raw bytes and the numbered non-comment lines of a generator file.
type GeneratorLines = (Vec<u8>, Vec<(usize, String)>);

/// Polynomials from a generator file: one per line, `#` starts a comment.
pub fn read_generators(path: &str) -> Result<GeneratorLines, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::usage(format!("{path}: not UTF-8")))?;
    let lines = text
        .lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| (i + 1, body.to_string()))
        })
        .collect();
    Ok((bytes, lines))
}

pub fn consequences_cmd(
    input: &Loaded,
    l: &LAlgebra,
    ctx: &Context,
    gens_path: &str,
    n: usize,
    cross_check: bool,
) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let ob = operators(l, ctx)?;
    let (bytes, lines) = read_generators(gens_path)?;
    let mut gens = Vec::new();
    let mut listed = Section::table("generators", &["line", "polynomial", "degree"]);
    for (line, src) in &lines {
        let p = parse_diff_poly(src, &ob).map_err(|e| Failure {
            code: exit_code(&e),
            message: format!("{gens_path}:{line}: {e}"),
        })?;
        listed.push_row(vec![(*line).into(), format_diff_poly(&p, &ob).into(), p.degree().into()]);
        gens.push(p);
    }
    let basis = consequences(&gens, n, &ob)?;
    let total = factorial_u128(n) * (ob.len() as u128).pow(n as u32);
    let quotient = total - basis.len() as u128;
    let mut report = Report::new(
        "consequences",
        digest(&[&input.digest_source, &bytes]),
        ctx.seed,
    );
    let mut summary = Section::facts("summary")
        .fact("n", n)
        .fact("dim_P_n", Cell::Int(total as i128))
        .fact("ideal_dim", basis.len())
        .fact("quotient_dim", Cell::Int(quotient as i128));
    if cross_check {
        let direct = codim(&l.algebra, &ob, n, false, ctx.budget)?;
        let c = direct.c_n_l.expect("full codimension requested");
        let ok = c as u128 == quotient;
        summary.push_fact("c_n_L_by_evaluation", c);
        summary.push_fact("cross_check", if ok { "OK" } else { "MISMATCH" });
        if !ok {
            report.warn(
                EXIT_INVARIANT,
                format!("ideal quotient {quotient} differs from evaluation rank {c}"),
            );
        }
    }
    report.sections.extend([setup_section(l, &ob), listed, summary]);
    Ok(report)
}

pub fn decompose_cmd(input: &Loaded, l: &LAlgebra, ctx: &Context) -> Result<Report, Failure> {
    let a: &Algebra = &l.algebra;
    let labels = a.labels();
    let w = wedderburn(a, ctx.seed)?;
    let mut report = Report::new("decompose", digest(&[&input.digest_source]), ctx.seed);
    let summary = Section::facts("summary")
        .fact("dim", a.dim())
        .fact("radical_dim", w.radical_basis.len())
        .fact("q", w.nilpotency_index)
        .fact("block_dims", w.block_dims.as_slice())
        .fact(
            "radical_l_stable",
            check_l_stability(a, &l.action, &w.radical_basis),
        );
    let mut radical = Section::table("radical_basis", &["index", "vector"]);
    for (i, v) in w.radical_basis.iter().enumerate() {
        radical.push_row(vec![(i + 1).into(), format_vector(labels, v).into()]);
    }
    let mut blocks = Section::table("blocks", &["block", "n_i", "idempotent", "dim"]);
    for (i, f) in w.block_idempotents.iter().enumerate() {
        blocks.push_row(vec![
            (i + 1).into(),
            w.block_dims[i].into(),
            format_vector(labels, f).into(),
            w.block_bases[i].len().into(),
        ]);
    }
    let mut graph = Section::table("radical_paths", &["from", "to"]);
    for (i, k) in &w.radical_path_graph {
        graph.push_row(vec![(i + 1).into(), (k + 1).into()]);
    }
    let mut ders = Section::table("derivation_split", &["name", "inner_element", "outer_part_zero"]);
    for (name, d) in l.action.generators() {
        let (x, rest) = split_derivation(a, &w, d)?;
        ders.push_row(vec![
            name.as_str().into(),
            format_vector(labels, &x).into(),
            rest.matrix().is_zero().into(),
        ]);
    }
    report.sections.extend([summary, radical, blocks, graph, ders]);
    match block_sum_split(l, &w) {
        Ok(parts) => {
            let mut t = Section::table("block_sum", &["summand", "dim", "radical_dim"]);
            for (i, p) in parts.iter().enumerate() {
                let name = if i + 1 == parts.len() {
                    "J".to_string()
                } else {
                    format!("B{}", i + 1)
                };
                t.push_row(vec![
                    name.into(),
                    p.algebra.dim().into(),
                    diffpi_core::algebra::radical(&p.algebra).len().into(),
                ]);
            }
            report.sections.push(t);
        }
        Err(Error::NotPolynomialGrowth(why)) => {
            report
                .sections
                .push(Section::facts("block_sum").fact("unavailable", why));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffpi_core::exact::{frac, int};

    #[test]
    fn vectors_print_with_labels() {
        let labels: Vec<String> = ["e11", "e12", "e22"].iter().map(|s| s.to_string()).collect();
        assert_eq!(format_vector(&labels, &[frac(1, 2), int(0), frac(-1, 2)]), "1/2 e11 - 1/2 e22");
        assert_eq!(format_vector(&labels, &[int(0), int(-1), int(1)]), "-e12 + e22");
        assert_eq!(format_vector(&labels, &[int(0), int(0), int(0)]), "0");
    }
}
