//! Text formats: module files and experiment manifests.
//!
//! A module file has three header lines followed by one generator per line:
//!
//! ```text
//! vars: 4
//! degree: 3
//! prime: 2147483647        # or `rational`
//! F1: y2*y1^2
//! F2: y3*y1^2
//! ```
//!
//! A manifest holds `key: value` directives (`output`, `format`, `prime`, `seed`)
//! and one family per line, `family key=value ...`, where besides the
//! family parameters the keys `c` (comma list or `all`), `trials`, `seed`,
//! `count` and `identities` configure the run.

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::generators::FamilySpec;
use crate::inverse::{InverseSystemModule, DEFAULT_TRIALS};
use crate::poly::parse_form;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

/// A parsed, not yet field-instantiated module file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFile {
    pub num_vars: usize,
    pub degree: usize,
    pub field: FieldSpec,
    /// `(line number, name, expression)` per generator.
    pub generators: Vec<(usize, String, String)>,
    pub label: Option<String>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut num_vars = None;
        let mut degree = None;
        let mut field = None;
        let mut label = None;
        let mut generators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(format_err(line_no, format!("expected `key: value`, got `{line}`")));
            };
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| v.parse::<usize>().map_err(|_| format_err(line_no, format!("`{v}` is not a count")));
            match key {
                "vars" => num_vars = Some(number(value)?),
                "degree" => degree = Some(number(value)?),
                "prime" | "field" => {
                    field = Some(FieldSpec::from_str(value).map_err(|e| format_err(line_no, e.to_string()))?)
                }
                "label" => label = Some(value.to_string()),
                k if k.starts_with('F') && k[1..].parse::<usize>().is_ok() => {
                    if num_vars.is_none() || degree.is_none() {
                        return Err(format_err(line_no, "generators must follow the `vars` and `degree` headers"));
                    }
                    generators.push((line_no, k.to_string(), value.to_string()));
                }
                other => return Err(format_err(line_no, format!("unknown key `{other}`"))),
            }
        }
        let num_vars = num_vars.ok_or_else(|| format_err(0, "missing `vars` header"))?;
        let degree = degree.ok_or_else(|| format_err(0, "missing `degree` header"))?;
        if num_vars == 0 || degree == 0 {
            return Err(format_err(0, "`vars` and `degree` must be positive"));
        }
        if generators.is_empty() {
            return Err(format_err(0, "no generators"));
        }
        Ok(ModuleFile { num_vars, degree, field: field.unwrap_or_default(), generators, label })
    }

    /// Parses each generator over `field`; errors carry the generator's line.
    pub fn build<F: Field>(&self, field: F, default_label: &str) -> Result<InverseSystemModule<F>> {
        let forms = self
            .generators
            .iter()
            .map(|(line, _, text)| {
                parse_form(text, self.num_vars, self.degree, &field).map_err(|e| format_err(*line, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let label = self.label.clone().unwrap_or_else(|| default_label.to_string());
        InverseSystemModule::new(field, forms, label).map_err(|e| match e {
            Error::InvalidField(_) | Error::DependentGenerators { .. } => format_err(0, e.to_string()),
            other => other,
        })
    }
}

/// Writes a module in the module-file format. Fails if a coefficient is
/// not an integer (the grammar only has integer coefficients).
pub fn write_module<F: Field>(m: &InverseSystemModule<F>) -> Result<String> {
    let mut out = format!(
        "label: {}\nvars: {}\ndegree: {}\nprime: {}\n",
        m.label(),
        m.num_vars(),
        m.socle_degree(),
        m.field().spec()
    );
    for (k, g) in m.generators().iter().enumerate() {
        let text = g
            .to_text(m.field())
            .ok_or_else(|| Error::OutOfRange(format!("generator F{} has a non-integer coefficient", k + 1)))?;
        out.push_str(&format!("F{}: {}\n", k + 1, text));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::OutOfRange(format!("unknown report format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeList {
    All,
    List(Vec<usize>),
}

impl TypeList {
    pub fn resolve(&self, t: usize) -> Vec<usize> {
        match self {
            TypeList::All => (1..t).collect(),
            TypeList::List(v) => v.clone(),
        }
    }
}

/// One family line of a manifest, before `count` expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub line: usize,
    pub family: FamilySpec,
    pub types: TypeList,
    pub trials: usize,
    pub seed: u64,
    pub count: usize,
    pub identities: bool,
}

/// One concrete instance to run.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub family: FamilySpec,
    pub types: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub identities: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentManifest {
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
    pub field: FieldSpec,
    /// Global seed, added to every entry's seed.
    pub seed: u64,
    pub entries: Vec<ManifestEntry>,
}

fn parse_kv(line_no: usize, token: &str) -> Result<(&str, &str)> {
    token
        .split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| format_err(line_no, format!("expected `key=value`, got `{token}`")))
}

impl ExperimentManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let mut manifest = ExperimentManifest::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().expect("nonempty line");
            if let Some(key) = head.strip_suffix(':') {
                let value = line[head.len()..].trim();
                match key {
                    "output" => manifest.output = Some(PathBuf::from(value)),
                    "format" => manifest.format = value.parse().map_err(|e: Error| format_err(line_no, e.to_string()))?,
                    "prime" | "field" => {
                        manifest.field = value.parse().map_err(|e: Error| format_err(line_no, e.to_string()))?
                    }
                    "seed" => {
                        manifest.seed = value
                            .parse()
                            .map_err(|_| format_err(line_no, format!("`{value}` is not a seed")))?
                    }
                    other => return Err(format_err(line_no, format!("unknown directive `{other}`"))),
                }
                continue;
            }
            let pairs = tokens.map(|t| parse_kv(line_no, t)).collect::<Result<Vec<_>>>()?;
            manifest.entries.push(parse_entry(line_no, head, &pairs)?);
        }
        Ok(manifest)
    }

    /// Expands `count` and resolves `c=all`; instance `k` of an entry uses
    /// seed `global + seed + k`.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for entry in &self.entries {
            for k in 0..entry.count {
                let seed = self.seed.wrapping_add(entry.seed).wrapping_add(k as u64);
                let family = entry.family.with_seed(seed);
                out.push(Instance {
                    types: entry.types.resolve(family.num_generators()),
                    family,
                    trials: entry.trials,
                    seed,
                    identities: entry.identities,
                });
            }
        }
        out
    }
}

fn parse_entry(line_no: usize, family: &str, pairs: &[(&str, &str)]) -> Result<ManifestEntry> {
    let get = |key: &str| pairs.iter().rev().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let count_of = |key: &str| -> Result<Option<usize>> {
        get(key)
            .map(|v| v.parse::<usize>().map_err(|_| format_err(line_no, format!("`{key}={v}` is not a count"))))
            .transpose()
    };
    let need = |key: &str| -> Result<usize> {
        count_of(key)?.ok_or_else(|| format_err(line_no, format!("`{family}` needs `{key}=`")))
    };
    let seed = match get("seed") {
        Some(v) => v.parse::<u64>().map_err(|_| format_err(line_no, format!("`seed={v}` is not an integer")))?,
        None => 0,
    };
    let known: &[&str] = match family {
        "example211" => &["t", "p", "e"],
        "truncated-gorenstein-conic" => &["s", "e"],
        "random-dense" | "monomial" => &["r", "e", "t"],
        "random-sparse" => &["r", "e", "t", "density"],
        other => return Err(format_err(line_no, format!("unknown family `{other}`"))),
    };
    for (k, _) in pairs {
        if !known.contains(k) && !["c", "trials", "seed", "count", "identities"].contains(k) {
            return Err(format_err(line_no, format!("unknown key `{k}` for `{family}`")));
        }
    }
    let spec = match family {
        "example211" => FamilySpec::Example211 { t: need("t")?, p: need("p")?, e: need("e")? },
        "truncated-gorenstein-conic" => FamilySpec::TruncatedGorensteinConic { s: need("s")?, e: need("e")?, seed },
        "random-dense" => FamilySpec::RandomDense { r: need("r")?, e: need("e")?, t: need("t")?, seed },
        "monomial" => FamilySpec::Monomial { r: need("r")?, e: need("e")?, t: need("t")?, seed },
        _ => {
            let density = get("density")
                .ok_or_else(|| format_err(line_no, "`random-sparse` needs `density=`"))?
                .parse::<f64>()
                .map_err(|_| format_err(line_no, "density must be a number"))?;
            FamilySpec::RandomSparse { r: need("r")?, e: need("e")?, t: need("t")?, density, seed }
        }
    };
    let t = spec.num_generators();
    let types = match get("c") {
        None | Some("all") => TypeList::All,
        Some(list) => {
            let cs = list
                .split(',')
                .map(|c| c.trim().parse::<usize>().map_err(|_| format_err(line_no, format!("bad type list `{list}`"))))
                .collect::<Result<Vec<_>>>()?;
            if let Some(bad) = cs.iter().find(|&&c| c == 0 || c >= t) {
                return Err(format_err(line_no, format!("type c={bad} outside 1..={}", t.saturating_sub(1))));
            }
            TypeList::List(cs)
        }
    };
    let identities = match get("identities") {
        None => false,
        Some("true" | "yes" | "1") => true,
        Some("false" | "no" | "0") => false,
        Some(v) => return Err(format_err(line_no, format!("`identities={v}` is not a boolean"))),
    };
    Ok(ManifestEntry {
        line: line_no,
        family: spec,
        types,
        trials: count_of("trials")?.unwrap_or(DEFAULT_TRIALS).max(1),
        seed,
        count: count_of("count")?.unwrap_or(1),
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::inverse::HVector;

    const SHARP: &str = "vars: 4\ndegree: 3\nprime: 2147483647\nF1: y2*y1^2\nF2: y3*y1^2\nF3: y4*y1^2\n";

    #[test]
    fn module_file_round_trip() {
        let file = ModuleFile::parse(SHARP).unwrap();
        assert_eq!(file.field, FieldSpec::Prime(2147483647));
        let m = file.build(PrimeField::default(), "sharp").unwrap();
        assert_eq!(m.h_vector(), HVector::new(vec![1, 4, 4, 3]));
        let text = write_module(&m).unwrap();
        let again = ModuleFile::parse(&text).unwrap().build(PrimeField::default(), "x").unwrap();
        assert_eq!(again.generators(), m.generators());
        assert_eq!(again.label(), "sharp");
    }

    #[test]
    fn module_file_errors_carry_lines() {
        let bad = "vars: 2\ndegree: 2\n\nF1: y1^2 + y2\n";
        let err = ModuleFile::parse(bad).unwrap().build(PrimeField::default(), "x").unwrap_err();
        assert!(matches!(err, Error::Format { line: 4, .. }), "{err:?}");
        assert!(matches!(ModuleFile::parse("vars: 2\nbogus\n"), Err(Error::Format { line: 2, .. })));
        assert!(ModuleFile::parse("vars: 2\nF1: y1^2\n").is_err());
        assert!(ModuleFile::parse("vars: 2\ndegree: 2\n").is_err());
    }

    #[test]
    fn manifest_parsing() {
        let text = "\
# grid
output: out.json
format: csv
prime: rational
example211 t=3 p=1 e=3
random-sparse r=3 e=4 t=3 density=0.5 seed=10 count=3 c=1 trials=2 identities=yes
";
        let m = ExperimentManifest::parse(text).unwrap();
        assert_eq!(m.format, ReportFormat::Csv);
        assert_eq!(m.field, FieldSpec::Rational);
        let inst = m.instances();
        assert_eq!(inst.len(), 4);
        assert_eq!(inst[0].types, vec![1, 2]);
        assert_eq!(inst[0].trials, DEFAULT_TRIALS);
        assert_eq!(inst[3].seed, 12);
        let shifted = ExperimentManifest::parse(&format!("seed: 100\n{text}")).unwrap().instances();
        assert_eq!(shifted[3].seed, 112);
        assert!(inst[3].identities);
        assert_eq!(inst[3].family.to_string(), "random-sparse r=3 e=4 t=3 density=0.5 seed=12");
    }

    #[test]
    fn manifest_errors() {
        assert!(matches!(ExperimentManifest::parse("example211 t=3 p=1 e=3 c=3"), Err(Error::Format { line: 1, .. })));
        assert!(ExperimentManifest::parse("nope t=1").is_err());
        assert!(ExperimentManifest::parse("example211 t=3 p=1").is_err());
        assert!(ExperimentManifest::parse("example211 t=3 p=1 e=3 q=2").is_err());
        assert!(ExperimentManifest::parse("format: xml").is_err());
        assert!(ExperimentManifest::parse("").unwrap().instances().is_empty());
    }
}
