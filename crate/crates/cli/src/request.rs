use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use hypercert::quotient::PresentationSpec;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::Failure;

pub const SUBCOMMANDS: [&str; 10] =
    ["coord", "line", "theorem-b", "ufd", "fibration", "expmap", "gr", "iso", "aut", "catalog"];

/// One command, read from flags or from a batch line. With presets inlined
/// it doubles as the command echo of a report.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Request {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, deserialize_with = "one_or_many", skip_serializing_if = "Vec::is_empty")]
    pub preset: Vec<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<List>,
    #[serde(default, rename = "F", skip_serializing_if = "Option::is_none")]
    pub big_f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<List>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sn: Option<List>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Plane automorphism for `iso`: a tame word (array), an automorphism
    /// object, or a path to a file holding either.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Value>,
}

/// Presentation file `{"m", "r", "field", "F"}`, optionally with `images`
/// (for `aut`) and a display `name`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresetFile {
    #[serde(flatten)]
    pub spec: PresentationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Preset {
    Path(String),
    Inline(PresetFile),
}

/// Comma-separated text (`"2,3"`) or a JSON array of integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum List {
    Text(String),
    Items(Vec<i64>),
}

impl List {
    pub fn values(&self) -> Result<Vec<i64>, Failure> {
        match self {
            List::Items(v) => Ok(v.clone()),
            List::Text(s) => s
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Input(format!("expected comma-separated integers, got `{s}`"))),
        }
    }

    pub fn text(&self) -> String {
        match self {
            List::Text(s) => s.clone(),
            List::Items(v) => v.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        }
    }
}

fn one_or_many<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Preset>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Preset),
        Many(Vec<Preset>),
    }
    Ok(match Option::<OneOrMany>::deserialize(d)? {
        None => Vec::new(),
        Some(OneOrMany::One(p)) => vec![p],
        Some(OneOrMany::Many(v)) => v,
    })
}

fn read_json(path: &str, base: &Path) -> Result<Value, Failure> {
    let direct = Path::new(path);
    let candidates = [direct.to_path_buf(), base.join(direct)];
    let found =
        candidates.iter().find(|p| p.is_file()).ok_or_else(|| Failure::Input(format!("cannot open `{path}`")))?;
    let text = fs::read_to_string(found).map_err(|e| Failure::Input(format!("cannot read `{path}`: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("`{path}` is not valid JSON: {e}")))
}

impl Request {
    /// Checks the subcommand and replaces file references by their
    /// contents; relative paths are tried as given, then under `base`.
    pub fn resolve(mut self, base: &Path) -> Result<Request, Failure> {
        if !SUBCOMMANDS.contains(&self.command.as_str()) {
            return Err(Failure::Input(format!(
                "unknown command `{}` (expected one of {})",
                self.command,
                SUBCOMMANDS.join(", ")
            )));
        }
        for p in &mut self.preset {
            if let Preset::Path(path) = p {
                let v = read_json(path, base)?;
                let file: PresetFile = serde_json::from_value(v)
                    .map_err(|e| Failure::Input(format!("`{path}` is not a presentation file: {e}")))?;
                *p = Preset::Inline(file);
            }
        }
        if let Some(Value::String(path)) = &self.alpha {
            self.alpha = Some(read_json(path, base)?);
        }
        Ok(self)
    }

    pub fn presets(&self) -> Vec<&PresetFile> {
        self.preset
            .iter()
            .filter_map(|p| match p {
                Preset::Inline(f) => Some(f),
                Preset::Path(_) => None,
            })
            .collect()
    }
}
