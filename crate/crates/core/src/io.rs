//! Line-oriented text formats for every object the toolkit exchanges.
//!
//! Each document starts with a `<format> v1` header line.  Blank lines
//! and lines starting with `#` are ignored.  Rationals are always
//! written `numer/denom`, point sets as space-separated indices, and
//! every parser rejects trailing content, so `parse(write(x))` is
//! exact.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::bk::{BkCertificate, BkEmbedding, QuadIneq};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::fh::FhReport;
use crate::invariants::{BoundCheck, InvariantReport, RadonValue};
use crate::pipeline::{
    ColorfulOutcome, LabeledFunction, MTupleWitness, SeparablePair, SeparatedPair, VennCell,
    VennCertificate,
};
use crate::pointset::PointSet;
use crate::space::{
    AxiomReport, Check, ConvexitySpace, Halfspace, SpaceKind, NESTED_UNIONS_NOTE,
};
use crate::{make_box_space, make_explicit_space, make_lattice_space};

fn fmt_indices(set: &PointSet) -> String {
    set.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn fmt_label(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect()
}

/// Cursor over the content lines of a document (1-based numbering,
/// blanks and `#` comments skipped).
struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    eof_line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut eof_line = 1;
        for (idx, raw) in text.lines().enumerate() {
            eof_line = idx + 2;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            lines.push((idx + 1, line));
        }
        Reader {
            lines,
            pos: 0,
            eof_line,
        }
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines
            .get(self.pos)
            .and_then(|(_, l)| l.split_whitespace().next())
    }

    /// Next line as (line number, tokens); errors at end of input.
    fn next_line(&mut self, expected: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.lines.get(self.pos) {
            Some(&(no, line)) => {
                self.pos += 1;
                Ok((no, line.split_whitespace().collect()))
            }
            None => Err(Error::parse(
                self.eof_line,
                format!("unexpected end of input; expected {expected}"),
            )),
        }
    }

    /// Next line, which must start with `keyword`; returns the rest.
    fn expect(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        let (no, tokens) = self.next_line(&format!("`{keyword}`"))?;
        match tokens.split_first() {
            Some((&first, rest)) if first == keyword => Ok((no, rest.to_vec())),
            Some((&first, _)) => Err(Error::parse(
                no,
                format!("expected `{keyword}`, found `{first}`"),
            )),
            None => unreachable!("content lines are nonempty"),
        }
    }

    fn expect_header(&mut self, format: &str) -> Result<()> {
        let (no, rest) = self.expect(format)?;
        if rest != ["v1"] {
            return Err(Error::parse(no, format!("expected `{format} v1`")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(&(no, line)) => Err(Error::parse(no, format!("trailing content: `{line}`"))),
            None => Ok(()),
        }
    }
}

fn one_token<'a>(no: usize, rest: &[&'a str], what: &str) -> Result<&'a str> {
    match rest {
        [tok] => Ok(tok),
        _ => Err(Error::parse(no, format!("expected exactly one {what}"))),
    }
}

fn parse_usize(no: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(no, format!("invalid {what}: `{tok}`")))
}

fn parse_usize_field(no: usize, rest: &[&str], what: &str) -> Result<usize> {
    parse_usize(no, one_token(no, rest, what)?, what)
}

fn parse_indices(no: usize, universe: usize, tokens: &[&str]) -> Result<PointSet> {
    let mut set = PointSet::empty(universe);
    for tok in tokens {
        let idx = parse_usize(no, tok, "point index")?;
        set.try_insert(idx)
            .map_err(|_| Error::parse(no, format!("index {idx} outside universe {universe}")))?;
    }
    Ok(set)
}

fn parse_rational(no: usize, tok: &str) -> Result<BigRational> {
    let (numer, denom) = tok
        .split_once('/')
        .ok_or_else(|| Error::parse(no, format!("rational `{tok}` is not numer/denom")))?;
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::parse(no, format!("invalid numerator `{numer}`")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::parse(no, format!("invalid denominator `{denom}`")))?;
    if denom == BigInt::from(0) {
        return Err(Error::parse(no, "zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_yes_no(no: usize, tok: &str) -> Result<bool> {
    match tok {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(Error::parse(no, format!("expected yes or no, found `{tok}`"))),
    }
}

// ---------------------------------------------------------------------
// convexity-space v1

fn write_space_block(out: &mut String, space: &ConvexitySpace) {
    match space.kind() {
        SpaceKind::Box { dim, side } => writeln!(out, "kind box {dim} {side}").unwrap(),
        SpaceKind::Lattice { dim, side } => writeln!(out, "kind lattice {dim} {side}").unwrap(),
        SpaceKind::Explicit => writeln!(out, "kind explicit").unwrap(),
    }
    writeln!(out, "ground {}", space.len()).unwrap();
    if let Some(family) = space.explicit_family() {
        for set in family {
            writeln!(out, "convex {}", fmt_indices(set)).unwrap();
        }
    }
}

fn parse_space_block(r: &mut Reader) -> Result<ConvexitySpace> {
    let (kind_no, kind) = r.expect("kind")?;
    let (ground_no, rest) = r.expect("ground")?;
    let ground = parse_usize_field(ground_no, &rest, "ground size")?;
    let space = match kind.as_slice() {
        ["box", dim, side] => make_box_space(
            parse_usize(kind_no, dim, "dimension")?,
            parse_usize(kind_no, side, "side length")?,
        ),
        ["lattice", dim, side] => make_lattice_space(
            parse_usize(kind_no, dim, "dimension")?,
            parse_usize(kind_no, side, "side length")?,
        ),
        ["explicit"] => {
            let mut sets = Vec::new();
            while r.peek_keyword() == Some("convex") {
                let (no, rest) = r.expect("convex")?;
                sets.push(parse_indices(no, ground, &rest)?);
            }
            let family = SetFamily::new(ground, sets)
                .map_err(|e| Error::parse(kind_no, e.to_string()))?;
            make_explicit_space(ground, &family)
        }
        _ => {
            return Err(Error::parse(
                kind_no,
                "kind must be `box D S`, `lattice D S`, or `explicit`",
            ));
        }
    }
    .map_err(|e| Error::parse(kind_no, e.to_string()))?;
    if space.len() != ground {
        return Err(Error::parse(
            ground_no,
            format!("ground {} does not match the grid size {}", ground, space.len()),
        ));
    }
    Ok(space)
}

pub fn write_space(space: &ConvexitySpace) -> String {
    let mut out = String::from("convexity-space v1\n");
    write_space_block(&mut out, space);
    out
}

pub fn parse_space(text: &str) -> Result<ConvexitySpace> {
    let mut r = Reader::new(text);
    r.expect_header("convexity-space")?;
    let space = parse_space_block(&mut r)?;
    r.finish()?;
    Ok(space)
}

// ---------------------------------------------------------------------
// set-family v1

pub fn write_set_family(family: &SetFamily) -> String {
    let mut out = String::from("set-family v1\n");
    writeln!(out, "universe {}", family.universe()).unwrap();
    writeln!(out, "count {}", family.len()).unwrap();
    for set in family {
        writeln!(out, "set {}", fmt_indices(set)).unwrap();
    }
    out
}

fn parse_family_sets(r: &mut Reader, universe: usize, count: usize) -> Result<SetFamily> {
    let mut sets = Vec::with_capacity(count);
    let mut first_no = None;
    for _ in 0..count {
        let (no, rest) = r.expect("set")?;
        first_no.get_or_insert(no);
        sets.push(parse_indices(no, universe, &rest)?);
    }
    SetFamily::new(universe, sets)
        .map_err(|e| Error::parse(first_no.unwrap_or(1), e.to_string()))
}

pub fn parse_set_family(text: &str) -> Result<SetFamily> {
    let mut r = Reader::new(text);
    r.expect_header("set-family")?;
    let (no, rest) = r.expect("universe")?;
    let universe = parse_usize_field(no, &rest, "universe size")?;
    let (no, rest) = r.expect("count")?;
    let count = parse_usize_field(no, &rest, "set count")?;
    let family = parse_family_sets(&mut r, universe, count)?;
    r.finish()?;
    Ok(family)
}

// ---------------------------------------------------------------------
// labeled-functions v1

pub fn write_labeled_functions(ground: usize, functions: &[LabeledFunction]) -> String {
    let mut out = String::from("labeled-functions v1\n");
    writeln!(out, "ground {ground}").unwrap();
    let domain = functions.first().map_or(0, |f| f.len());
    writeln!(out, "domain {domain}").unwrap();
    writeln!(out, "count {}", functions.len()).unwrap();
    for f in functions {
        write!(out, "function {}", fmt_label(&f.label)).unwrap();
        for &v in f.values() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_labeled_functions(text: &str) -> Result<(usize, Vec<LabeledFunction>)> {
    let mut r = Reader::new(text);
    r.expect_header("labeled-functions")?;
    let (no, rest) = r.expect("ground")?;
    let ground = parse_usize_field(no, &rest, "ground size")?;
    let (no, rest) = r.expect("domain")?;
    let domain = parse_usize_field(no, &rest, "domain size")?;
    let (no, rest) = r.expect("count")?;
    let count = parse_usize_field(no, &rest, "function count")?;
    let mut functions = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, rest) = r.expect("function")?;
        let (label, value_toks) = rest
            .split_first()
            .ok_or_else(|| Error::parse(no, "function line needs a label"))?;
        if value_toks.len() != domain {
            return Err(Error::parse(
                no,
                format!("function has {} values; domain is {domain}", value_toks.len()),
            ));
        }
        let values = value_toks
            .iter()
            .map(|t| parse_usize(no, t, "ground point"))
            .collect::<Result<Vec<_>>>()?;
        functions.push(
            LabeledFunction::new(*label, values, ground)
                .map_err(|e| Error::parse(no, e.to_string()))?,
        );
    }
    r.finish()?;
    Ok((ground, functions))
}

// ---------------------------------------------------------------------
// colorful-instance v1

pub fn write_colorful_instance(
    space: &ConvexitySpace,
    families: &[SetFamily],
    m: usize,
) -> String {
    let mut out = String::from("colorful-instance v1\n");
    write_space_block(&mut out, space);
    writeln!(out, "m {m}").unwrap();
    writeln!(out, "families {}", families.len()).unwrap();
    for family in families {
        writeln!(out, "family {}", family.len()).unwrap();
        for set in family {
            writeln!(out, "set {}", fmt_indices(set)).unwrap();
        }
    }
    out
}

pub fn parse_colorful_instance(text: &str) -> Result<(ConvexitySpace, Vec<SetFamily>, usize)> {
    let mut r = Reader::new(text);
    r.expect_header("colorful-instance")?;
    let space = parse_space_block(&mut r)?;
    let (no, rest) = r.expect("m")?;
    let m = parse_usize_field(no, &rest, "tuple size")?;
    let (no, rest) = r.expect("families")?;
    let family_count = parse_usize_field(no, &rest, "family count")?;
    let mut families = Vec::with_capacity(family_count);
    for _ in 0..family_count {
        let (no, rest) = r.expect("family")?;
        let count = parse_usize_field(no, &rest, "set count")?;
        families.push(parse_family_sets(&mut r, space.len(), count)?);
    }
    r.finish()?;
    Ok((space, families, m))
}

// ---------------------------------------------------------------------
// invariant-report v1

const BOUND_NAMES: [&str; 5] = [
    "helly-below-radon",
    "halfspace-vc-below-radon",
    "dual-vc-exponential-gap",
    "lattice-radon-within-box-bound",
    "box-radon-within-formula",
];

fn intern_bound_name(no: usize, name: &str) -> Result<&'static str> {
    BOUND_NAMES
        .iter()
        .find(|&&known| known == name)
        .copied()
        .ok_or_else(|| Error::parse(no, format!("unknown bound name `{name}`")))
}

pub fn write_invariant_report(report: &InvariantReport) -> String {
    let mut out = String::from("invariant-report v1\n");
    writeln!(out, "ground {}", report.ground_size).unwrap();
    writeln!(out, "helly {}", report.helly).unwrap();
    writeln!(out, "helly-witness {}", fmt_indices(&report.helly_witness)).unwrap();
    writeln!(out, "critical-count {}", report.helly_critical_family.len()).unwrap();
    for set in &report.helly_critical_family {
        writeln!(out, "critical {}", fmt_indices(set)).unwrap();
    }
    match report.radon {
        RadonValue::Finite(r) => writeln!(out, "radon {r}").unwrap(),
        RadonValue::NoneAtThisScale => writeln!(out, "radon none").unwrap(),
    }
    writeln!(out, "separable {}", if report.separable { "yes" } else { "no" }).unwrap();
    writeln!(out, "halfspaces {}", report.halfspace_count).unwrap();
    writeln!(out, "halfspace-vc {}", report.halfspace_vc).unwrap();
    writeln!(out, "halfspace-dual-vc {}", report.halfspace_dual_vc).unwrap();
    writeln!(out, "bounds {}", report.bounds.len()).unwrap();
    for bound in &report.bounds {
        writeln!(
            out,
            "bound {} {} {}",
            bound.name,
            if bound.holds { "ok" } else { "fail" },
            bound.detail
        )
        .unwrap();
    }
    out
}

pub fn parse_invariant_report(text: &str) -> Result<InvariantReport> {
    let mut r = Reader::new(text);
    r.expect_header("invariant-report")?;
    let (no, rest) = r.expect("ground")?;
    let ground_size = parse_usize_field(no, &rest, "ground size")?;
    let (no, rest) = r.expect("helly")?;
    let helly = parse_usize_field(no, &rest, "helly number")?;
    let (no, rest) = r.expect("helly-witness")?;
    let helly_witness = parse_indices(no, ground_size, &rest)?;
    let (no, rest) = r.expect("critical-count")?;
    let critical_count = parse_usize_field(no, &rest, "critical family size")?;
    let mut helly_critical_family = Vec::with_capacity(critical_count);
    for _ in 0..critical_count {
        let (no, rest) = r.expect("critical")?;
        helly_critical_family.push(parse_indices(no, ground_size, &rest)?);
    }
    let (no, rest) = r.expect("radon")?;
    let radon = match one_token(no, &rest, "radon value")? {
        "none" => RadonValue::NoneAtThisScale,
        tok => RadonValue::Finite(parse_usize(no, tok, "radon number")?),
    };
    let (no, rest) = r.expect("separable")?;
    let separable = parse_yes_no(no, one_token(no, &rest, "separable flag")?)?;
    let (no, rest) = r.expect("halfspaces")?;
    let halfspace_count = parse_usize_field(no, &rest, "halfspace count")?;
    let (no, rest) = r.expect("halfspace-vc")?;
    let halfspace_vc = parse_usize_field(no, &rest, "halfspace vc dimension")?;
    let (no, rest) = r.expect("halfspace-dual-vc")?;
    let halfspace_dual_vc = parse_usize_field(no, &rest, "halfspace dual vc dimension")?;
    let (no, rest) = r.expect("bounds")?;
    let bound_count = parse_usize_field(no, &rest, "bound count")?;
    let mut bounds = Vec::with_capacity(bound_count);
    for _ in 0..bound_count {
        let (no, rest) = r.expect("bound")?;
        if rest.len() < 2 {
            return Err(Error::parse(no, "bound line needs a name and a verdict"));
        }
        let name = intern_bound_name(no, rest[0])?;
        let holds = match rest[1] {
            "ok" => true,
            "fail" => false,
            other => {
                return Err(Error::parse(no, format!("expected ok or fail, found `{other}`")));
            }
        };
        bounds.push(BoundCheck {
            name,
            holds,
            detail: rest[2..].join(" "),
        });
    }
    r.finish()?;
    Ok(InvariantReport {
        ground_size,
        helly,
        helly_witness,
        helly_critical_family,
        radon,
        separable,
        halfspace_count,
        halfspace_vc,
        halfspace_dual_vc,
        bounds,
    })
}

// ---------------------------------------------------------------------
// fh-report v1

pub fn write_fh_report(report: &FhReport) -> String {
    let mut out = String::from("fh-report v1\n");
    writeln!(out, "family-size {}", report.family_size).unwrap();
    writeln!(out, "k {}", report.k).unwrap();
    writeln!(out, "intersecting {}", report.intersecting).unwrap();
    writeln!(out, "total {}", report.total).unwrap();
    writeln!(out, "alpha {}", fmt_rational(&report.alpha)).unwrap();
    writeln!(out, "max-intersecting {}", report.max_intersecting).unwrap();
    match report.best_point {
        Some(p) => writeln!(out, "best-point {p}").unwrap(),
        None => writeln!(out, "best-point none").unwrap(),
    }
    writeln!(out, "beta {}", fmt_rational(&report.beta)).unwrap();
    out
}

pub fn parse_fh_report(text: &str) -> Result<FhReport> {
    let mut r = Reader::new(text);
    r.expect_header("fh-report")?;
    let (no, rest) = r.expect("family-size")?;
    let family_size = parse_usize_field(no, &rest, "family size")?;
    let (no, rest) = r.expect("k")?;
    let k = parse_usize_field(no, &rest, "subfamily size")?;
    let (no, rest) = r.expect("intersecting")?;
    let tok = one_token(no, &rest, "count")?;
    let intersecting: BigUint = tok
        .parse()
        .map_err(|_| Error::parse(no, format!("invalid count `{tok}`")))?;
    let (no, rest) = r.expect("total")?;
    let tok = one_token(no, &rest, "count")?;
    let total: BigUint = tok
        .parse()
        .map_err(|_| Error::parse(no, format!("invalid count `{tok}`")))?;
    let (no, rest) = r.expect("alpha")?;
    let alpha = parse_rational(no, one_token(no, &rest, "rational")?)?;
    let (no, rest) = r.expect("max-intersecting")?;
    let max_intersecting = parse_usize_field(no, &rest, "subfamily size")?;
    let (no, rest) = r.expect("best-point")?;
    let best_point = match one_token(no, &rest, "point")? {
        "none" => None,
        tok => Some(parse_usize(no, tok, "point index")?),
    };
    let (no, rest) = r.expect("beta")?;
    let beta = parse_rational(no, one_token(no, &rest, "rational")?)?;
    r.finish()?;
    Ok(FhReport {
        family_size,
        k,
        intersecting,
        total,
        alpha,
        max_intersecting,
        best_point,
        beta,
    })
}

// ---------------------------------------------------------------------
// bk-embedding v1

pub fn write_bk_embedding(embedding: &BkEmbedding) -> String {
    let mut out = String::from("bk-embedding v1\n");
    writeln!(out, "source-size {}", embedding.source_size).unwrap();
    writeln!(out, "atoms {}", embedding.atom_signatures.len()).unwrap();
    write!(out, "signatures").unwrap();
    for sig in &embedding.atom_signatures {
        write!(out, " {sig}").unwrap();
    }
    out.push('\n');
    write!(out, "candidates").unwrap();
    for p in &embedding.atom_points {
        write!(out, " {}", fmt_rational(p)).unwrap();
    }
    out.push('\n');
    for member in &embedding.members {
        writeln!(out, "member {}", fmt_indices(member)).unwrap();
    }
    writeln!(out, "certificates {}", embedding.certificates.len()).unwrap();
    for cert in &embedding.certificates {
        writeln!(out, "configuration {}", fmt_indices(&cert.configuration)).unwrap();
        writeln!(out, "ineqs {}", cert.inequalities.len()).unwrap();
        for q in &cert.inequalities {
            writeln!(
                out,
                "ineq {} {} {} {} {} {}",
                fmt_rational(&q.cxx),
                fmt_rational(&q.cxy),
                fmt_rational(&q.cyy),
                fmt_rational(&q.cx),
                fmt_rational(&q.cy),
                fmt_rational(&q.c0)
            )
            .unwrap();
        }
    }
    out
}

pub fn parse_bk_embedding(text: &str) -> Result<BkEmbedding> {
    let mut r = Reader::new(text);
    r.expect_header("bk-embedding")?;
    let (no, rest) = r.expect("source-size")?;
    let source_size = parse_usize_field(no, &rest, "family size")?;
    let (no, rest) = r.expect("atoms")?;
    let atoms = parse_usize_field(no, &rest, "atom count")?;
    let (no, rest) = r.expect("signatures")?;
    if rest.len() != atoms {
        return Err(Error::parse(
            no,
            format!("expected {atoms} signatures, found {}", rest.len()),
        ));
    }
    let atom_signatures = rest
        .iter()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::parse(no, format!("invalid signature `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let (no, rest) = r.expect("candidates")?;
    let atom_points = rest
        .iter()
        .map(|t| parse_rational(no, t))
        .collect::<Result<Vec<_>>>()?;
    let mut members = Vec::with_capacity(source_size);
    for _ in 0..source_size {
        let (no, rest) = r.expect("member")?;
        members.push(parse_indices(no, atoms, &rest)?);
    }
    let (no, rest) = r.expect("certificates")?;
    let cert_count = parse_usize_field(no, &rest, "certificate count")?;
    let mut certificates = Vec::with_capacity(cert_count);
    for _ in 0..cert_count {
        let (no, rest) = r.expect("configuration")?;
        let configuration = parse_indices(no, atoms, &rest)?;
        let (no, rest) = r.expect("ineqs")?;
        let ineq_count = parse_usize_field(no, &rest, "inequality count")?;
        let mut inequalities = Vec::with_capacity(ineq_count);
        for _ in 0..ineq_count {
            let (no, rest) = r.expect("ineq")?;
            if rest.len() != 6 {
                return Err(Error::parse(no, "inequality needs six coefficients"));
            }
            let c = rest
                .iter()
                .map(|t| parse_rational(no, t))
                .collect::<Result<Vec<_>>>()?;
            let mut it = c.into_iter();
            inequalities.push(QuadIneq {
                cxx: it.next().unwrap(),
                cxy: it.next().unwrap(),
                cyy: it.next().unwrap(),
                cx: it.next().unwrap(),
                cy: it.next().unwrap(),
                c0: it.next().unwrap(),
            });
        }
        certificates.push(BkCertificate {
            configuration,
            inequalities,
        });
    }
    r.finish()?;
    Ok(BkEmbedding {
        source_size,
        atom_signatures,
        atom_points,
        members,
        certificates,
    })
}

// ---------------------------------------------------------------------
// separated-pair v1

pub fn write_separated_pair(pair: &SeparatedPair) -> String {
    let mut out = String::from("separated-pair v1\n");
    writeln!(out, "ground {}", pair.gamma.gamma().universe()).unwrap();
    writeln!(out, "domain {}", pair.retained.universe()).unwrap();
    writeln!(out, "i {}", pair.i).unwrap();
    writeln!(out, "j {}", pair.j).unwrap();
    writeln!(out, "pivot {}", pair.x0).unwrap();
    writeln!(out, "gamma {}", fmt_indices(pair.gamma.gamma())).unwrap();
    writeln!(out, "retained {}", fmt_indices(&pair.retained)).unwrap();
    out
}

pub fn parse_separated_pair(text: &str) -> Result<SeparatedPair> {
    let mut r = Reader::new(text);
    r.expect_header("separated-pair")?;
    let (no, rest) = r.expect("ground")?;
    let ground = parse_usize_field(no, &rest, "ground size")?;
    let (no, rest) = r.expect("domain")?;
    let domain = parse_usize_field(no, &rest, "domain size")?;
    let (no, rest) = r.expect("i")?;
    let i = parse_usize_field(no, &rest, "function index")?;
    let (no, rest) = r.expect("j")?;
    let j = parse_usize_field(no, &rest, "function index")?;
    let (no, rest) = r.expect("pivot")?;
    let x0 = parse_usize_field(no, &rest, "pivot point")?;
    let (no, rest) = r.expect("gamma")?;
    let gamma = Halfspace::from_gamma_unchecked(parse_indices(no, ground, &rest)?);
    let (no, rest) = r.expect("retained")?;
    let retained = parse_indices(no, domain, &rest)?;
    r.finish()?;
    Ok(SeparatedPair {
        i,
        j,
        x0,
        gamma,
        retained,
    })
}

// ---------------------------------------------------------------------
// colorful-outcome v1

pub fn write_colorful_outcome(outcome: &ColorfulOutcome) -> String {
    let mut out = String::from("colorful-outcome v1\n");
    match outcome {
        ColorfulOutcome::MTuple(w) => {
            writeln!(out, "outcome m-tuple").unwrap();
            writeln!(out, "family {}", w.family).unwrap();
            write!(out, "members").unwrap();
            for &m in &w.members {
                write!(out, " {m}").unwrap();
            }
            out.push('\n');
            writeln!(out, "point {}", w.point).unwrap();
        }
        ColorfulOutcome::Venn(cert) => {
            writeln!(out, "outcome venn").unwrap();
            let ground = cert
                .pairs
                .first()
                .map_or(0, |p| p.gamma.gamma().universe());
            writeln!(out, "ground {ground}").unwrap();
            writeln!(out, "classes {}", cert.pairs.len()).unwrap();
            for pair in &cert.pairs {
                writeln!(out, "pair {} {}", pair.u, pair.v).unwrap();
                writeln!(out, "gamma {}", fmt_indices(pair.gamma.gamma())).unwrap();
            }
            writeln!(out, "cells {}", cert.cells.len()).unwrap();
            for cell in &cert.cells {
                write!(out, "cell {} point {} edge", cell.pattern, cell.point).unwrap();
                for &v in &cell.edge {
                    write!(out, " {v}").unwrap();
                }
                out.push('\n');
            }
        }
        ColorfulOutcome::Inconclusive { stage } => {
            writeln!(out, "outcome inconclusive").unwrap();
            writeln!(out, "stage {stage}").unwrap();
        }
    }
    out
}

pub fn parse_colorful_outcome(text: &str) -> Result<ColorfulOutcome> {
    let mut r = Reader::new(text);
    r.expect_header("colorful-outcome")?;
    let (no, rest) = r.expect("outcome")?;
    let outcome = match one_token(no, &rest, "outcome kind")? {
        "m-tuple" => {
            let (no, rest) = r.expect("family")?;
            let family = parse_usize_field(no, &rest, "family index")?;
            let (no, rest) = r.expect("members")?;
            let members = rest
                .iter()
                .map(|t| parse_usize(no, t, "set index"))
                .collect::<Result<Vec<_>>>()?;
            let (no, rest) = r.expect("point")?;
            let point = parse_usize_field(no, &rest, "point index")?;
            ColorfulOutcome::MTuple(MTupleWitness {
                family,
                members,
                point,
            })
        }
        "venn" => {
            let (no, rest) = r.expect("ground")?;
            let ground = parse_usize_field(no, &rest, "ground size")?;
            let (no, rest) = r.expect("classes")?;
            let classes = parse_usize_field(no, &rest, "class count")?;
            let mut pairs = Vec::with_capacity(classes);
            for _ in 0..classes {
                let (no, rest) = r.expect("pair")?;
                if rest.len() != 2 {
                    return Err(Error::parse(no, "pair line needs two set indices"));
                }
                let u = parse_usize(no, rest[0], "set index")?;
                let v = parse_usize(no, rest[1], "set index")?;
                let (no, rest) = r.expect("gamma")?;
                let gamma = Halfspace::from_gamma_unchecked(parse_indices(no, ground, &rest)?);
                pairs.push(SeparablePair { u, v, gamma });
            }
            let (no, rest) = r.expect("cells")?;
            let cell_count = parse_usize_field(no, &rest, "cell count")?;
            let mut cells = Vec::with_capacity(cell_count);
            for _ in 0..cell_count {
                let (no, rest) = r.expect("cell")?;
                if rest.len() < 4 || rest[1] != "point" || rest[3] != "edge" {
                    return Err(Error::parse(
                        no,
                        "cell line must read `cell P point X edge V...`",
                    ));
                }
                let pattern = rest[0]
                    .parse::<u64>()
                    .map_err(|_| Error::parse(no, format!("invalid pattern `{}`", rest[0])))?;
                let point = parse_usize(no, rest[2], "point index")?;
                let edge = rest[4..]
                    .iter()
                    .map(|t| parse_usize(no, t, "set index"))
                    .collect::<Result<Vec<_>>>()?;
                cells.push(VennCell {
                    pattern,
                    edge,
                    point,
                });
            }
            ColorfulOutcome::Venn(VennCertificate { pairs, cells })
        }
        "inconclusive" => {
            let (_, rest) = r.expect("stage")?;
            ColorfulOutcome::Inconclusive {
                stage: rest.join(" "),
            }
        }
        other => {
            return Err(Error::parse(
                no,
                format!("unknown outcome kind `{other}`"),
            ));
        }
    };
    r.finish()?;
    Ok(outcome)
}

// ---------------------------------------------------------------------
// axiom-report v1

const AXIOM_CHECKS: [&str; 5] = [
    "empty-and-ground-convex",
    "intersection-closed",
    "hull-extensive",
    "hull-monotone",
    "hull-idempotent",
];

fn write_check(out: &mut String, name: &str, check: &Check) {
    match (check.pass, &check.witness) {
        (true, _) => writeln!(out, "check {name} pass").unwrap(),
        (false, Some(w)) => writeln!(out, "check {name} fail {w}").unwrap(),
        (false, None) => writeln!(out, "check {name} fail").unwrap(),
    }
}

pub fn write_axiom_report(report: &AxiomReport) -> String {
    let mut out = String::from("axiom-report v1\n");
    write_check(&mut out, AXIOM_CHECKS[0], &report.empty_and_ground_convex);
    write_check(&mut out, AXIOM_CHECKS[1], &report.intersection_closed);
    write_check(&mut out, AXIOM_CHECKS[2], &report.hull_extensive);
    write_check(&mut out, AXIOM_CHECKS[3], &report.hull_monotone);
    write_check(&mut out, AXIOM_CHECKS[4], &report.hull_idempotent);
    writeln!(out, "note nested-unions {}", report.nested_unions).unwrap();
    out
}

pub fn parse_axiom_report(text: &str) -> Result<AxiomReport> {
    let mut r = Reader::new(text);
    r.expect_header("axiom-report")?;
    let mut checks = Vec::with_capacity(AXIOM_CHECKS.len());
    for expected in AXIOM_CHECKS {
        let (no, rest) = r.expect("check")?;
        if rest.first() != Some(&expected) {
            return Err(Error::parse(
                no,
                format!("expected check `{expected}`, found `{}`", rest.join(" ")),
            ));
        }
        let check = match rest.get(1) {
            Some(&"pass") => Check {
                pass: true,
                witness: None,
            },
            Some(&"fail") => Check {
                pass: false,
                witness: if rest.len() > 2 {
                    Some(rest[2..].join(" "))
                } else {
                    None
                },
            },
            _ => {
                return Err(Error::parse(no, "check verdict must be pass or fail"));
            }
        };
        checks.push(check);
    }
    let (no, rest) = r.expect("note")?;
    if rest.first() != Some(&"nested-unions") || rest[1..].join(" ") != NESTED_UNIONS_NOTE {
        return Err(Error::parse(no, "unrecognized note line"));
    }
    r.finish()?;
    let mut it = checks.into_iter();
    Ok(AxiomReport {
        empty_and_ground_convex: it.next().unwrap(),
        intersection_closed: it.next().unwrap(),
        hull_extensive: it.next().unwrap(),
        hull_monotone: it.next().unwrap(),
        hull_idempotent: it.next().unwrap(),
        nested_unions: NESTED_UNIONS_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_box_space;

    #[test]
    fn space_documents_survive_a_round_trip() {
        let space = make_box_space(2, 3).unwrap();
        let text = write_space(&space);
        let back = parse_space(&text).unwrap();
        assert_eq!(back.kind(), space.kind());
        assert_eq!(back.len(), space.len());
        assert_eq!(write_space(&back), text);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a spacious document\n\nconvexity-space v1\n\nkind box 1 4\n# four points\nground 4\n";
        let space = parse_space(text).unwrap();
        assert_eq!(space.len(), 4);
    }

    #[test]
    fn bad_headers_and_trailing_lines_are_rejected_with_line_numbers() {
        match parse_space("convexity-space v2\nkind box 1 2\nground 2\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected a parse error on line 1, got {other:?}"),
        }
        match parse_space("convexity-space v1\nkind box 1 2\nground 2\nextra stuff\n") {
            Err(Error::Parse { line: 4, .. }) => {}
            other => panic!("expected a parse error on line 4, got {other:?}"),
        }
    }

    #[test]
    fn rationals_must_be_written_as_fractions() {
        match parse_rational(7, "0.5") {
            Err(Error::Parse { line: 7, .. }) => {}
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert_eq!(
            parse_rational(1, "-6/4").unwrap(),
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
    }

    #[test]
    fn set_family_round_trip_preserves_order_and_duplicates() {
        let family = SetFamily::new(
            4,
            vec![
                PointSet::from_indices(4, &[2, 3]).unwrap(),
                PointSet::empty(4),
                PointSet::from_indices(4, &[2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let text = write_set_family(&family);
        let back = parse_set_family(&text).unwrap();
        assert_eq!(back.sets(), family.sets());
    }

    #[test]
    fn truncated_documents_fail_at_end_of_input() {
        match parse_set_family("set-family v1\nuniverse 3\ncount 2\nset 0\n") {
            Err(Error::Parse { line: 5, .. }) => {}
            other => panic!("expected a parse error at the end, got {other:?}"),
        }
    }
}
