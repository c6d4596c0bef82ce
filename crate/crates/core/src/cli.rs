//! Jobs, result tables and the on-disk result cache behind the `relext` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group_cohomology::{group_cohomology, Via};
use crate::groupoid::restrict_to_vertex;
use crate::io::{self, DefinitionKind};
use crate::lie::{cce_complex, cosimplicial_mc, equivariant_ext, CgComplex, LieModule};
use crate::lie_rinehart::{
    induced_mca_map, lr_diagonal, lr_equivariant_cohomology, mc_algebra, mc_matches_cce, product_multiplication_map,
    AclModule,
};
use crate::scalar::Field;
use crate::verify::{monad_isomorphism_findings, Finding};

pub const SCHEMA: &str = "relext.result.v1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever a sign or ordering convention changes cached results.
pub const CONVENTION_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Validate,
    Group,
    Groupoid,
    Lie,
    EquivariantExt,
    Mc,
    Lr,
    LrEquivariant,
    Verify,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Validate => "validate",
            Kind::Group => "group",
            Kind::Groupoid => "groupoid",
            Kind::Lie => "lie",
            Kind::EquivariantExt => "eqext",
            Kind::Mc => "mc",
            Kind::Lr => "lr",
            Kind::LrEquivariant => "lreq",
            Kind::Verify => "verify",
        }
    }

    pub fn from_name(s: &str) -> Result<Kind> {
        [
            Kind::Validate,
            Kind::Group,
            Kind::Groupoid,
            Kind::Lie,
            Kind::EquivariantExt,
            Kind::Mc,
            Kind::Lr,
            Kind::LrEquivariant,
            Kind::Verify,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown computation kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Machine,
}

/// Coefficients for `lreq` jobs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrCoefficients {
    /// The ground field through the augmentation (needs `dim A = 1`).
    Ground,
    /// `A` in degree 0.
    DegreeZero,
    /// `Alt_A(L, A)` itself.
    Regular,
}

impl LrCoefficients {
    pub fn name(self) -> &'static str {
        match self {
            LrCoefficients::Ground => "ground",
            LrCoefficients::DegreeZero => "degree-zero",
            LrCoefficients::Regular => "regular",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub kind: Kind,
    pub input: PathBuf,
    pub scalar: Option<Field>,
    pub max_degree: usize,
    /// Highest cosimplicial degree built; defaults to `max_degree + 1`.
    pub truncation: Option<usize>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub coefficients: Option<LrCoefficients>,
}

impl JobSpec {
    pub fn new(kind: Kind, input: impl Into<PathBuf>, max_degree: usize) -> Self {
        JobSpec {
            kind,
            input: input.into(),
            scalar: None,
            max_degree,
            truncation: None,
            format: Format::Table,
            cache_dir: None,
            coefficients: None,
        }
    }

    fn top(&self) -> Result<usize> {
        let top = self.truncation.unwrap_or(self.max_degree + 1);
        if top < self.max_degree + 1 {
            return Err(Error::TruncationInsufficient(format!(
                "truncation {top} reaches only degree {} but degree {} was requested",
                top as i64 - 1,
                self.max_degree
            )));
        }
        Ok(top)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultTable {
    pub kind: String,
    pub input_hash: String,
    pub scalar: String,
    pub max_degree: usize,
    pub truncation: usize,
    pub tool_version: String,
    pub reliable_up_to: i64,
    /// `dims[n] = dim H^n`, from degree 0.
    pub dims: Vec<usize>,
    pub findings: Vec<Finding>,
}

impl ResultTable {
    pub fn all_passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

/// Aligned human-readable table, or the versioned key/value document.
pub fn emit(t: &ResultTable, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Machine => {
            let _ = writeln!(s, "schema={SCHEMA}");
            let _ = writeln!(s, "kind={}", t.kind);
            let _ = writeln!(s, "input_hash={}", t.input_hash);
            let _ = writeln!(s, "scalar={}", t.scalar);
            let _ = writeln!(s, "max_degree={}", t.max_degree);
            let _ = writeln!(s, "truncation={}", t.truncation);
            let _ = writeln!(s, "tool_version={}", t.tool_version);
            let _ = writeln!(s, "reliable_up_to={}", t.reliable_up_to);
            let _ = writeln!(s, "dims={}", t.dims.len());
            for (n, d) in t.dims.iter().enumerate() {
                let _ = writeln!(s, "dim.{n}={d}");
            }
            let _ = writeln!(s, "findings={}", t.findings.len());
            for (i, f) in t.findings.iter().enumerate() {
                let _ = writeln!(s, "finding.{i}.name={}", one_line(&f.name));
                let _ = writeln!(s, "finding.{i}.status={}", if f.passed { "pass" } else { "fail" });
                if let Some(d) = &f.detail {
                    let _ = writeln!(s, "finding.{i}.detail={}", one_line(d));
                }
            }
        }
        Format::Table => {
            let _ = writeln!(
                s,
                "{}  scalar {}  max degree {}  truncation {}  reliable through {}",
                t.kind, t.scalar, t.max_degree, t.truncation, t.reliable_up_to
            );
            let _ = writeln!(s, "input {}  relext {}", &t.input_hash[..t.input_hash.len().min(16)], t.tool_version);
            if !t.dims.is_empty() {
                let w = t.dims.iter().map(|d| d.to_string().len()).max().unwrap_or(1).max(3);
                let _ = writeln!(s, "{:>6}  {:>w$}", "degree", "dim");
                for (n, d) in t.dims.iter().enumerate() {
                    let _ = writeln!(s, "{n:>6}  {d:>w$}");
                }
            }
            if !t.findings.is_empty() {
                let _ = writeln!(s, "findings");
                for f in &t.findings {
                    let _ = write!(s, "  {}  {}", if f.passed { "pass" } else { "FAIL" }, f.name);
                    if let Some(d) = &f.detail {
                        let _ = write!(s, ": {d}");
                    }
                    s.push('\n');
                }
            }
        }
    }
    s
}

/// Parse the machine format back into a table.
pub fn parse_machine(text: &str) -> Result<ResultTable> {
    let mut kv = std::collections::BTreeMap::new();
    for line in text.lines().filter(|l| !l.is_empty()) {
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("malformed line {line:?}")))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let get = |k: &str| kv.get(k).cloned().ok_or_else(|| Error::Parse(format!("missing key {k}")));
    let num = |k: &str| -> Result<i64> { get(k)?.parse().map_err(|_| Error::Parse(format!("{k} is not a number"))) };
    if get("schema")? != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {}", get("schema")?)));
    }
    let dims = (0..num("dims")?).map(|n| Ok(num(&format!("dim.{n}"))? as usize)).collect::<Result<Vec<_>>>()?;
    let findings = (0..num("findings")?)
        .map(|i| {
            let passed = match get(&format!("finding.{i}.status"))?.as_str() {
                "pass" => true,
                "fail" => false,
                s => return Err(Error::Parse(format!("finding status {s:?}"))),
            };
            Ok(Finding { name: get(&format!("finding.{i}.name"))?, passed, detail: kv.get(&format!("finding.{i}.detail")).cloned() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResultTable {
        kind: get("kind")?,
        input_hash: get("input_hash")?,
        scalar: get("scalar")?,
        max_degree: num("max_degree")? as usize,
        truncation: num("truncation")? as usize,
        tool_version: get("tool_version")?,
        reliable_up_to: num("reliable_up_to")?,
        dims,
        findings,
    })
}

/// Content address of a job: definition bytes, scalar, degrees, coefficients and conventions.
pub fn cache_key(spec: &JobSpec, input: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "relext-cache|{CONVENTION_VERSION}|{TOOL_VERSION}|{}|{:?}|{}|{:?}|{:?}|",
        spec.kind.name(),
        spec.scalar.map(|f| f.to_string()),
        spec.max_degree,
        spec.truncation,
        spec.coefficients.map(LrCoefficients::name),
    ));
    h.update(input);
    hex::encode(h.finalize())
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.result"))
}

/// Store a table with a trailing checksum line. IO errors are ignored.
pub fn cache_resolution(dir: &Path, key: &str, t: &ResultTable) {
    let body = emit(t, Format::Machine);
    let text = format!("{body}checksum={}\n", sha256_hex(body.as_bytes()));
    let _ = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(cache_path(dir, key), text));
}

/// A cached table, or `None` when missing, unreadable or failing its checksum.
pub fn load_cached(dir: &Path, key: &str) -> Option<ResultTable> {
    let text = std::fs::read_to_string(cache_path(dir, key)).ok()?;
    let idx = text.rfind("checksum=")?;
    let (body, tail) = text.split_at(idx);
    if tail.trim_end().strip_prefix("checksum=")? != sha256_hex(body.as_bytes()) {
        return None;
    }
    parse_machine(body).ok()
}

/// Run a job, consulting the cache when one is configured.
pub fn run(spec: &JobSpec) -> Result<ResultTable> {
    let bytes = std::fs::read(&spec.input).map_err(|e| Error::Io(format!("{}: {e}", spec.input.display())))?;
    let top = spec.top()?;
    let key = cache_key(spec, &bytes);
    if let Some(dir) = &spec.cache_dir {
        if let Some(t) = load_cached(dir, &key) {
            return Ok(t);
        }
    }
    let t = compute(spec, &bytes, top)?;
    if let Some(dir) = &spec.cache_dir {
        cache_resolution(dir, &key, &t);
    }
    Ok(t)
}

fn compute(spec: &JobSpec, bytes: &[u8], top: usize) -> Result<ResultTable> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse("definition is not UTF-8".into()))?;
    let doc = io::parse_document(text)?;
    let field = io::definition_field(&doc, spec.scalar)?;
    let n = spec.max_degree;
    let deep = top - 1;
    let mut reliable = deep as i64;
    let mut findings = Vec::new();
    let cut = |mut v: Vec<usize>| {
        v.truncate(n + 1);
        v
    };
    let dims = match spec.kind {
        Kind::Validate => {
            let kind = io::detect_kind(&doc)?;
            let what = match kind {
                DefinitionKind::Group => {
                    io::parse_group_definition(&doc, spec.scalar)?;
                    "group table and module action validate"
                }
                DefinitionKind::Groupoid => {
                    io::parse_groupoid_definition(&doc, spec.scalar)?;
                    "groupoid and module validate"
                }
                DefinitionKind::Lie => {
                    let g = Arc::new(io::parse_lie(field, io::lie_part(&doc))?);
                    if let Some(m) = doc.get("module") {
                        io::parse_lie_module(&g, m)?;
                    }
                    if let Some(a) = doc.get("algebra") {
                        io::parse_module_algebra(&g, a)?;
                    }
                    "Lie algebra (antisymmetry, Jacobi) and attached data validate"
                }
                DefinitionKind::LieRinehart => {
                    io::parse_lr(field, &doc)?;
                    "Lie-Rinehart algebra (anchor, Leibniz, Jacobi) validates"
                }
            };
            findings.push(Finding::check(what, true, String::new));
            Vec::new()
        }
        Kind::Group => {
            let d = io::parse_group_definition(&doc, spec.scalar)?;
            let t = group_cohomology(&d.module, deep, Via::T)?.dims;
            let u = group_cohomology(&d.module, deep, Via::U)?.dims;
            findings.push(Finding::check("monads T and U give the same table", t == u, || format!("T {t:?}, U {u:?}")));
            findings.push(Finding::check("H^0 is the fixed points", t[0] == d.module.fixed_dim(), || {
                format!("H^0 = {}, fixed points {}", t[0], d.module.fixed_dim())
            }));
            cut(t)
        }
        Kind::Groupoid => {
            let z = io::parse_groupoid_definition(&doc, spec.scalar)?;
            let r = restrict_to_vertex(&z, 0, deep)?;
            findings.push(Finding::check(
                "restriction to the vertex group is a quasi-isomorphism",
                r.quasi_iso_failure.is_none(),
                || format!("fails in degree {:?}", r.quasi_iso_failure),
            ));
            findings.push(Finding::check("groupoid and vertex-group tables agree", r.groupoid_dims == r.vertex_dims, || {
                format!("{:?} vs {:?}", r.groupoid_dims, r.vertex_dims)
            }));
            cut(r.groupoid_dims)
        }
        Kind::Lie => {
            let g = Arc::new(io::parse_lie(field, io::lie_part(&doc))?);
            let v = match doc.get("module") {
                Some(m) => io::parse_lie_module(&g, m)?,
                None => LieModule::trivial(g.clone(), 1),
            };
            let c = cce_complex(&g, &v)?;
            findings.push(Finding::from_result("d^2 = 0 and the Cartan identities hold", c.check()));
            let h = c.cohomology_dims()?;
            reliable = h.len() as i64 - 1;
            cut(h)
        }
        Kind::EquivariantExt => {
            let g = Arc::new(io::parse_lie(field, io::lie_part(&doc))?);
            let (cg, trivial) = match doc.get("module") {
                Some(m) => (io::parse_cg_complex(&g, m)?, false),
                None => (CgComplex::trivial(g.clone(), 1), true),
            };
            let h = equivariant_ext(&g, &cg, deep)?;
            if trivial {
                let mc = cosimplicial_mc(&g, None, deep)?;
                findings.push(Finding::check("cosimplicial Maurer-Cartan construction agrees", mc == h, || {
                    format!("{mc:?} vs {h:?}")
                }));
            }
            cut(h)
        }
        Kind::Mc => {
            let g = Arc::new(io::parse_lie(field, io::lie_part(&doc))?);
            let a = doc.get("algebra").map(|a| io::parse_module_algebra(&g, a)).transpose()?;
            cut(cosimplicial_mc(&g, a.as_ref(), deep)?)
        }
        Kind::Lr => {
            let lr = Arc::new(io::parse_lr(field, &doc)?);
            let mc = mc_algebra(&lr)?;
            let diag = lr_diagonal(&lr)?;
            let induced = induced_mca_map(&diag);
            findings.push(Finding::from_result("diagonal is a comorphism inducing a DGA map", induced.as_ref().map(|_| ()).map_err(Clone::clone)));
            if let Ok(m) = &induced {
                let mult = product_multiplication_map(&lr)?;
                findings.push(Finding::check("induced map of the diagonal is the cup product", *m == mult, || {
                    "matrices differ".into()
                }));
            }
            if lr.algebra().dim() == 1 {
                findings.push(Finding::check("Maurer-Cartan algebra is the CE algebra", mc_matches_cce(&lr)?, || {
                    "algebras differ".into()
                }));
            }
            let h = mc.cohomology_dims()?;
            reliable = h.len() as i64 - 1;
            cut(h)
        }
        Kind::LrEquivariant => {
            let lr = Arc::new(io::parse_lr(field, &doc)?);
            let choice = spec.coefficients.unwrap_or(if lr.algebra().dim() == 1 {
                LrCoefficients::Ground
            } else {
                LrCoefficients::Regular
            });
            let m = match choice {
                LrCoefficients::Ground => AclModule::ground(lr)?,
                LrCoefficients::DegreeZero => AclModule::degree_zero(lr)?,
                LrCoefficients::Regular => AclModule::regular(lr)?,
            };
            findings.push(Finding::check(&format!("coefficients: {}", choice.name()), true, String::new));
            cut(lr_equivariant_cohomology(&m, deep)?)
        }
        Kind::Verify => {
            let d = io::parse_group_definition(&doc, spec.scalar)?;
            findings = monad_isomorphism_findings(&d.module, top)?;
            reliable = top as i64;
            Vec::new()
        }
    };
    Ok(ResultTable {
        kind: spec.kind.name().to_string(),
        input_hash: sha256_hex(bytes),
        scalar: field.to_string(),
        max_degree: n,
        truncation: top,
        tool_version: TOOL_VERSION.to_string(),
        reliable_up_to: reliable,
        dims,
        findings,
    })
}

/// Process exit code for a finished job: 3 when any identity check failed.
pub fn exit_code(r: &Result<ResultTable>) -> i32 {
    match r {
        Ok(t) if t.all_passed() => 0,
        Ok(_) => 3,
        Err(e) => e.exit_code(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        ResultTable {
            kind: "group".into(),
            input_hash: "ab".repeat(32),
            scalar: "Fp:2".into(),
            max_degree: 2,
            truncation: 3,
            tool_version: TOOL_VERSION.into(),
            reliable_up_to: 2,
            dims: vec![1, 0, 1],
            findings: vec![
                Finding { name: "a = b".into(), passed: true, detail: None },
                Finding { name: "c".into(), passed: false, detail: Some("x=y".into()) },
            ],
        }
    }

    #[test]
    fn machine_round_trip() {
        let t = sample();
        assert_eq!(parse_machine(&emit(&t, Format::Machine)).unwrap(), t);
    }

    #[test]
    fn table_shows_zero_rows_and_omits_empty_findings() {
        let mut t = sample();
        t.findings.clear();
        let s = emit(&t, Format::Table);
        assert!(s.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "0"]));
        assert!(!s.contains("findings"));
    }
}
