//! Fixture files: blocks of polynomial text with a header line
//! `[FIXTURE id=.. vars=.. anchor=.. name=..]`, separated by blank lines.
//! `#` starts a comment line. Fixture text may refer to other fixtures by id.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use crate::polyring::{
    parse_factors_with, MPoly, MacroDef, MacroResolver, ParseError, ParseErrorKind, VarRegistry,
};

use super::ReplayError;

/// The fixture files compiled into the library.
pub const EMBEDDED: [(&str, &str); 2] = [
    ("appendix.fix", include_str!("../../../../fixtures/appendix.fix")),
    ("body.fix", include_str!("../../../../fixtures/body.fix")),
];

/// Source location of a fixture's first text line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub file: String,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub vars: Vec<String>,
    pub anchor: String,
    pub name: Option<String>,
    pub text: String,
    pub origin: Origin,
    pub reg: VarRegistry,
    pub poly: MPoly,
    /// Top-level factors as written (a single entry for sums).
    pub factors: Vec<(MPoly, u32)>,
    /// Fixture ids referenced from the text.
    pub refs: BTreeSet<String>,
}

#[derive(Debug, Clone)]
struct RawBlock {
    id: String,
    vars: Vec<String>,
    anchor: String,
    name: Option<String>,
    text: String,
    origin: Origin,
}

#[derive(Debug, Clone, Default)]
pub struct FixtureSet {
    map: BTreeMap<String, Fixture>,
    corrupted: Option<String>,
}

impl FixtureSet {
    pub fn embedded() -> Result<Self, ReplayError> {
        Self::from_sources(&EMBEDDED, None)
    }

    /// Every `*.fix` file of `dir`, in file-name order.
    pub fn load_dir(dir: &Path) -> Result<Self, ReplayError> {
        Self::load_dir_with(dir, None)
    }

    pub fn load_dir_with(dir: &Path, corrupt: Option<&str>) -> Result<Self, ReplayError> {
        let io = |e: std::io::Error| ReplayError::Io(format!("{}: {e}", dir.display()));
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "fix"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(ReplayError::Io(format!("{}: no .fix files", dir.display())));
        }
        let mut texts = Vec::new();
        for f in &files {
            let name = f.file_name().unwrap().to_string_lossy().into_owned();
            texts.push((name, fs::read_to_string(f).map_err(io)?));
        }
        let refs: Vec<(&str, &str)> = texts.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Self::from_sources(&refs, corrupt)
    }

    /// Parses all sources. With `corrupt`, the sign of that fixture's
    /// leading term is flipped before anything that refers to it is built.
    pub fn from_sources(sources: &[(&str, &str)], corrupt: Option<&str>) -> Result<Self, ReplayError> {
        let mut raw: BTreeMap<String, RawBlock> = BTreeMap::new();
        for (file, text) in sources {
            for block in split_blocks(file, text)? {
                if raw.contains_key(&block.id) {
                    return Err(ReplayError::Fixture {
                        at: format!("{}:{}", block.origin.file, block.origin.line),
                        msg: format!("duplicate fixture id {}", block.id),
                    });
                }
                raw.insert(block.id.clone(), block);
            }
        }
        if let Some(c) = corrupt {
            if !raw.contains_key(c) {
                return Err(ReplayError::MissingFixture(c.to_string()));
            }
        }
        let resolver = Resolver { raw: &raw, done: RefCell::default(), active: RefCell::default(), corrupt };
        for id in raw.keys() {
            resolver.build(id).map_err(|e| e.into_replay())?;
        }
        let map = resolver.done.into_inner();
        Ok(FixtureSet { map, corrupted: corrupt.map(str::to_string) })
    }

    pub fn get(&self, id: &str) -> Result<&Fixture, ReplayError> {
        self.map.get(id).ok_or_else(|| ReplayError::MissingFixture(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn corrupted(&self) -> Option<&str> {
        self.corrupted.as_deref()
    }

    /// `ids` together with every fixture they refer to, transitively.
    pub fn closure<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<String> = ids.into_iter().map(str::to_string).collect();
        while let Some(id) = stack.pop() {
            if out.insert(id.clone()) {
                if let Some(f) = self.map.get(&id) {
                    stack.extend(f.refs.iter().cloned());
                }
            }
        }
        out
    }
}

fn header_field<'a>(fields: &'a HashMap<&str, &str>, key: &str) -> Option<&'a str> {
    fields.get(key).copied()
}

fn split_blocks(file: &str, text: &str) -> Result<Vec<RawBlock>, ReplayError> {
    let mut out = Vec::new();
    let mut cur: Option<RawBlock> = None;
    let finish = |cur: &mut Option<RawBlock>, out: &mut Vec<RawBlock>| -> Result<(), ReplayError> {
        if let Some(b) = cur.take() {
            if b.text.trim().is_empty() {
                return Err(ReplayError::Fixture {
                    at: format!("{}:{}", b.origin.file, b.origin.line),
                    msg: format!("fixture {} has no text", b.id),
                });
            }
            out.push(b);
        }
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            finish(&mut cur, &mut out)?;
            continue;
        }
        if let Some(h) = trimmed.strip_prefix("[FIXTURE").and_then(|s| s.strip_suffix(']')) {
            finish(&mut cur, &mut out)?;
            let fields: HashMap<&str, &str> = h.split_whitespace().filter_map(|kv| kv.split_once('=')).collect();
            let bad = |msg: &str| ReplayError::Fixture { at: format!("{file}:{lineno}"), msg: msg.to_string() };
            let id = header_field(&fields, "id").ok_or_else(|| bad("header lacks id="))?;
            let vars = header_field(&fields, "vars").ok_or_else(|| bad("header lacks vars="))?;
            let anchor = header_field(&fields, "anchor").ok_or_else(|| bad("header lacks anchor="))?;
            cur = Some(RawBlock {
                id: id.to_string(),
                vars: vars.split(',').map(str::to_string).collect(),
                anchor: anchor.to_string(),
                name: header_field(&fields, "name").map(str::to_string),
                text: String::new(),
                origin: Origin { file: file.to_string(), line: lineno + 1 },
            });
            continue;
        }
        match cur.as_mut() {
            Some(b) => {
                b.text.push_str(line);
                b.text.push('\n');
            }
            None => {
                return Err(ReplayError::Fixture {
                    at: format!("{file}:{lineno}"),
                    msg: "text outside a fixture block".into(),
                })
            }
        }
    }
    finish(&mut cur, &mut out)?;
    Ok(out)
}

enum BuildError {
    Replay(ReplayError),
    Parse { origin: Origin, id: String, err: ParseError },
}

impl BuildError {
    fn into_replay(self) -> ReplayError {
        match self {
            BuildError::Replay(e) => e,
            BuildError::Parse { origin, id, err } => ReplayError::Fixture {
                // block-relative positions shifted to file positions
                at: format!("{}:{}:{}", origin.file, origin.line + err.line - 1, err.col),
                msg: format!("fixture {id}: {}", ParseErrorDisplay(&err.kind)),
            },
        }
    }
}

struct ParseErrorDisplay<'a>(&'a ParseErrorKind);

impl std::fmt::Display for ParseErrorDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // reuse ParseError's wording without its position prefix
        let full = ParseError { line: 0, col: 0, kind: self.0.clone() }.to_string();
        f.write_str(full.trim_start_matches("0:0: "))
    }
}

struct Resolver<'a> {
    raw: &'a BTreeMap<String, RawBlock>,
    done: RefCell<BTreeMap<String, Fixture>>,
    active: RefCell<Vec<String>>,
    corrupt: Option<&'a str>,
}

/// Records which macros a parse touched.
struct Tracking<'r, 'a> {
    inner: &'r Resolver<'a>,
    seen: RefCell<BTreeSet<String>>,
    failure: RefCell<Option<BuildError>>,
}

impl MacroResolver for Tracking<'_, '_> {
    fn contains(&self, name: &str) -> bool {
        self.inner.raw.contains_key(name)
    }

    fn expand(&self, name: &str) -> Result<MacroDef, String> {
        self.seen.borrow_mut().insert(name.to_string());
        match self.inner.build(name) {
            Ok(f) => Ok(f),
            Err(e) => {
                let msg = match &e {
                    BuildError::Replay(r) => r.to_string(),
                    BuildError::Parse { id, .. } => format!("fixture {id} does not parse"),
                };
                self.failure.borrow_mut().get_or_insert(e);
                Err(msg)
            }
        }
    }
}

impl Resolver<'_> {
    fn build(&self, id: &str) -> Result<MacroDef, BuildError> {
        if let Some(f) = self.done.borrow().get(id) {
            return Ok(MacroDef { vars: f.vars.clone(), poly: f.poly.clone() });
        }
        let block = self
            .raw
            .get(id)
            .ok_or_else(|| BuildError::Replay(ReplayError::MissingFixture(id.to_string())))?;
        if self.active.borrow().iter().any(|a| a == id) {
            let mut cycle = self.active.borrow().clone();
            cycle.push(id.to_string());
            return Err(BuildError::Replay(ReplayError::Fixture {
                at: format!("{}:{}", block.origin.file, block.origin.line),
                msg: format!("reference cycle {}", cycle.join(" -> ")),
            }));
        }
        self.active.borrow_mut().push(id.to_string());
        let result = self.parse_block(block);
        self.active.borrow_mut().pop();
        let fixture = result?;
        let def = MacroDef { vars: fixture.vars.clone(), poly: fixture.poly.clone() };
        self.done.borrow_mut().insert(id.to_string(), fixture);
        Ok(def)
    }

    fn parse_block(&self, b: &RawBlock) -> Result<Fixture, BuildError> {
        let reg = VarRegistry::new(&b.vars).map_err(|e| {
            BuildError::Replay(ReplayError::Fixture {
                at: format!("{}:{}", b.origin.file, b.origin.line - 1),
                msg: format!("fixture {}: {e}", b.id),
            })
        })?;
        let tracking = Tracking { inner: self, seen: RefCell::default(), failure: RefCell::default() };
        let parsed = parse_factors_with(&b.text, &reg, &tracking);
        if let Some(inner) = tracking.failure.into_inner() {
            // report the innermost failing fixture, not the macro wrapper
            return Err(inner);
        }
        let mut factors =
            parsed.map_err(|err| BuildError::Parse { origin: b.origin.clone(), id: b.id.clone(), err })?;
        let mut poly = factors.iter().fold(MPoly::one(reg.len()), |acc, (f, e)| acc.mul(&f.pow(*e)));
        if self.corrupt == Some(b.id.as_str()) {
            poly = flip_leading_sign(&poly);
            factors = vec![(poly.clone(), 1)];
        }
        Ok(Fixture {
            id: b.id.clone(),
            vars: b.vars.clone(),
            anchor: b.anchor.clone(),
            name: b.name.clone(),
            text: b.text.trim_end().to_string(),
            origin: b.origin.clone(),
            reg,
            poly,
            factors,
            refs: tracking.seen.into_inner(),
        })
    }
}

/// `p` with the coefficient of its leading term negated.
pub fn flip_leading_sign(p: &MPoly) -> MPoly {
    match p.leading_term() {
        // c m -> -c m means adding c m once more in characteristic 3
        Some((m, c)) => p.add(&MPoly::from_terms(p.nvars(), [(m, c as i64)])),
        None => MPoly::one(p.nvars()),
    }
}
