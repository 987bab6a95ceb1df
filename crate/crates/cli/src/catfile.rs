//! The line-oriented category file format.
//!
//! ```text
//! # comments run to end of line
//! category split
//! object A
//! object B
//! mor s : A -> B
//! mor r : B -> A
//! mor e : B -> B
//! comp r . s = id_A
//! comp s . r = e
//! ...
//! class M = { id_A, id_B, r }
//! closure c on M { c(id_A) = id_A ; c(id_B) = id_B ; c(r) = r ; j(r) = id_B }
//! ```
//!
//! Identities are implicit and named `id_X`. Every composable pair of
//! non-identity morphisms needs a `comp` line. A closure block may span
//! several lines up to its closing `}`. `preset NAME` loads a bundled
//! instance, after which only `class` and `closure` lines may follow.

use std::collections::HashMap;
use std::fmt::Write;

use quasifact::fincat::{CategoryBuilder, FinCategory, MorId, ObjId};
use quasifact::{preset, ClosureOperator, Instance, MorClass};

use crate::error::CliError;

/// Parses a category file. Composition must be total and well typed; the
/// remaining category axioms are left to `validate`.
pub fn parse(text: &str) -> Result<Instance, CliError> {
    Parser::default().run(text)
}

/// Loads `preset:NAME` or reads and parses a file.
pub fn load(arg: &str) -> Result<Instance, CliError> {
    if let Some(name) = arg.strip_prefix("preset:") {
        return Ok(preset(name)?);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| CliError::Io {
        path: arg.to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}

/// Canonical text for an instance: objects and morphisms in id order,
/// composites of non-identity pairs ordered by (f, g), then classes and
/// closures in instance order.
pub fn emit(inst: &Instance) -> String {
    let cat = &inst.cat;
    let mut out = String::new();
    let _ = writeln!(out, "category {}", cat.name());
    for x in cat.objects() {
        let _ = writeln!(out, "object {}", cat.object_label(x));
    }
    for f in cat.morphisms().filter(|&f| !cat.is_identity(f)) {
        let _ = writeln!(
            out,
            "mor {} : {} -> {}",
            cat.label(f),
            cat.object_label(cat.dom(f)),
            cat.object_label(cat.cod(f))
        );
    }
    for f in cat.morphisms().filter(|&f| !cat.is_identity(f)) {
        for &g in cat.outgoing(cat.cod(f)) {
            if cat.is_identity(g) {
                continue;
            }
            let h = cat.then(f, g);
            let _ = writeln!(out, "comp {} . {} = {}", cat.label(g), cat.label(f), cat.label(h));
        }
    }
    for class in &inst.classes {
        let members: Vec<&str> = class.iter().map(|m| cat.label(m)).collect();
        let _ = writeln!(out, "class {} = {{ {} }}", class.name(), members.join(", "));
    }
    for op in &inst.closures {
        let _ = writeln!(out, "closure {} on {} {{", op.name(), op.base().name());
        for (m, c) in op.entries() {
            let _ = write!(out, "  c({}) = {}", cat.label(m), cat.label(c));
            if let Some(j) = op.witness(m) {
                let _ = write!(out, " ; j({}) = {}", cat.label(m), cat.label(j));
            }
            out.push('\n');
        }
        out.push_str("}\n");
    }
    out
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    builder: Option<CategoryBuilder>,
    preset: Option<Instance>,
    mor_lines: HashMap<MorId, usize>,
    classes: Vec<(usize, String, Vec<String>)>,
    closures: Vec<ClosureDecl>,
}

struct ClosureDecl {
    line: usize,
    name: String,
    base: String,
    entries: Vec<(usize, char, String, String)>,
}

fn syntax(line: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        message: message.into(),
    }
}

fn semantic(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Semantic {
        line,
        reason: reason.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code).trim()
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || ",;{}()#".contains(c))
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Instance, CliError> {
        let mut open: Option<ClosureDecl> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let code = strip_comment(raw);
            if code.is_empty() {
                continue;
            }
            if let Some(decl) = open.as_mut() {
                let (body, done) = match code.split_once('}') {
                    Some((body, rest)) if rest.trim().is_empty() => (body, true),
                    Some(_) => return Err(syntax(line, "text after `}`")),
                    None => (code, false),
                };
                parse_entries(line, body, &mut decl.entries)?;
                if done {
                    self.closures.push(open.take().expect("open block"));
                }
                continue;
            }
            let (keyword, rest) = code.split_once(char::is_whitespace).unwrap_or((code, ""));
            let rest = rest.trim();
            match keyword {
                "category" => self.category(line, rest)?,
                "preset" => self.preset(line, rest)?,
                "object" => self.object(line, rest)?,
                "mor" => self.mor(line, rest)?,
                "comp" => self.comp(line, rest)?,
                "class" => self.class(line, rest)?,
                "closure" => {
                    let (decl, done) = self.closure_header(line, rest)?;
                    if done {
                        self.closures.push(decl);
                    } else {
                        open = Some(decl);
                    }
                }
                other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        if let Some(decl) = open {
            return Err(syntax(
                decl.line,
                format!("closure `{}` is not closed with `}}`", decl.name),
            ));
        }
        self.finish()
    }

    fn builder(&mut self, line: usize) -> Result<&mut CategoryBuilder, CliError> {
        if self.preset.is_some() {
            return Err(semantic(line, "a preset file may only add classes and closures"));
        }
        let name = self.name.clone().unwrap_or_else(|| "unnamed".into());
        Ok(self.builder.get_or_insert_with(|| CategoryBuilder::new(name)))
    }

    fn category(&mut self, line: usize, rest: &str) -> Result<(), CliError> {
        if !is_label(rest) {
            return Err(syntax(line, "expected `category NAME`"));
        }
        if self.name.is_some() || self.builder.is_some() || self.preset.is_some() {
            return Err(semantic(line, "`category` must come first and only once"));
        }
        self.name = Some(rest.to_string());
        Ok(())
    }

    fn preset(&mut self, line: usize, rest: &str) -> Result<(), CliError> {
        if !is_label(rest) {
            return Err(syntax(line, "expected `preset NAME`"));
        }
        if self.builder.is_some() || self.preset.is_some() {
            return Err(semantic(line, "`preset` must come before any definitions"));
        }
        let mut inst = preset(rest).map_err(|e| semantic(line, e.to_string()))?;
        if let Some(name) = &self.name {
            inst.cat.rename(name.clone());
        }
        self.preset = Some(inst);
        Ok(())
    }

    fn object(&mut self, line: usize, rest: &str) -> Result<(), CliError> {
        if !is_label(rest) {
            return Err(syntax(line, "expected `object X`"));
        }
        let b = self.builder(line)?;
        if b.mor_by_label(&format!("id_{rest}")).is_some() {
            return Err(semantic(line, format!("identity `id_{rest}` is already defined")));
        }
        b.object(rest).map_err(|e| semantic(line, e.to_string()))?;
        Ok(())
    }

    fn mor(&mut self, line: usize, rest: &str) -> Result<(), CliError> {
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let [f, ":", x, "->", y] = tokens[..] else {
            return Err(syntax(line, "expected `mor f : X -> Y`"));
        };
        if !is_label(f) {
            return Err(syntax(line, format!("invalid label `{f}`")));
        }
        if f.starts_with("id_") {
            return Err(semantic(
                line,
                format!("`{f}`: labels starting with `id_` are reserved for identities"),
            ));
        }
        let b = self.builder(line)?;
        let obj = |o: &str| {
            b.obj_by_label(o)
                .ok_or_else(|| semantic(line, format!("unknown object `{o}`")))
        };
        let (dom, cod) = (obj(x)?, obj(y)?);
        let id = b.morphism(f, dom, cod).map_err(|e| semantic(line, e.to_string()))?;
        self.mor_lines.insert(id, line);
        Ok(())
    }

    fn comp(&mut self, line: usize, rest: &str) -> Result<(), CliError> {
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let [g, ".", f, "=", h] = tokens[..] else {
            return Err(syntax(line, "expected `comp g . f = h`"));
        };
        let b = self.builder(line)?;
        let mor = |m: &str| {
            b.mor_by_label(m)
                .ok_or_else(|| semantic(line, format!("unknown morphism `{m}`")))
        };
        let (g, f, h) = (mor(g)?, mor(f)?, mor(h)?);
        for m in [g, f] {
            if b.identity(b.dom(m)) == m {
                return Err(semantic(
                    line,
                    "composites with identities are implicit and cannot be redefined",
                ));
            }
        }
        b.compose(g, f, h).map_err(|e| match e {
            quasifact::Error::NotComposable { .. } => semantic(line, "cod f differs from dom g"),
            e => semantic(line, e.to_string()),
        })?;
        if (b.dom(h), b.cod(h)) != (b.dom(f), b.cod(g)) {
            return Err(semantic(line, "composite has the wrong domain or codomain"));
        }
        Ok(())
    }

    fn class(&mut self, line: usize, rest: &str) -> Result<(), CliError> {
        let Some((name, body)) = rest.split_once('=') else {
            return Err(syntax(line, "expected `class NAME = { f, g, ... }`"));
        };
        let name = name.trim();
        let body = body.trim();
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| syntax(line, "class members must be enclosed in `{ }`"))?;
        if !is_label(name) {
            return Err(syntax(line, format!("invalid class name `{name}`")));
        }
        let members: Vec<String> = inner
            .split(',')
            .map(str::trim)
            .filter(|m| !m.is_empty())
            .map(|m| {
                if is_label(m) {
                    Ok(m.to_string())
                } else {
                    Err(syntax(line, format!("invalid label `{m}`")))
                }
            })
            .collect::<Result<_, _>>()?;
        self.classes.push((line, name.to_string(), members));
        Ok(())
    }

    fn closure_header(&mut self, line: usize, rest: &str) -> Result<(ClosureDecl, bool), CliError> {
        let Some((head, body)) = rest.split_once('{') else {
            return Err(syntax(line, "expected `closure NAME on CLASS { ... }`"));
        };
        let tokens: Vec<&str> = head.split_whitespace().collect();
        let [name, "on", base] = tokens[..] else {
            return Err(syntax(line, "expected `closure NAME on CLASS { ... }`"));
        };
        let mut decl = ClosureDecl {
            line,
            name: name.to_string(),
            base: base.to_string(),
            entries: Vec::new(),
        };
        let (body, done) = match body.split_once('}') {
            Some((body, tail)) if tail.trim().is_empty() => (body, true),
            Some(_) => return Err(syntax(line, "text after `}`")),
            None => (body, false),
        };
        parse_entries(line, body, &mut decl.entries)?;
        Ok((decl, done))
    }

    fn finish(self) -> Result<Instance, CliError> {
        let mut inst = match (self.preset, self.builder) {
            (Some(inst), _) => inst,
            (None, Some(b)) => {
                let cat = b.build()?;
                check_composition(&cat, &self.mor_lines)?;
                Instance {
                    cat,
                    classes: Vec::new(),
                    closures: Vec::new(),
                    factorization: None,
                }
            }
            (None, None) => return Err(syntax(1, "no category defined")),
        };
        let cat = &inst.cat;
        let mor = |line: usize, m: &str| {
            cat.mor_by_label(m)
                .ok_or_else(|| semantic(line, format!("unknown morphism `{m}`")))
        };

        let mut classes = Vec::new();
        for (line, name, members) in &self.classes {
            if inst.classes.iter().chain(&classes).any(|c: &MorClass| c.name() == name) {
                return Err(semantic(*line, format!("class `{name}` defined twice")));
            }
            let ids = members.iter().map(|m| mor(*line, m)).collect::<Result<Vec<_>, _>>()?;
            classes.push(MorClass::from_members(name.clone(), cat, ids)?);
        }

        let mut closures = Vec::new();
        for decl in &self.closures {
            if inst
                .closures
                .iter()
                .chain(&closures)
                .any(|c: &ClosureOperator| c.name() == decl.name)
            {
                return Err(semantic(decl.line, format!("closure `{}` defined twice", decl.name)));
            }
            let base = inst
                .classes
                .iter()
                .chain(&classes)
                .find(|c| c.name() == decl.base)
                .ok_or_else(|| semantic(decl.line, format!("unknown class `{}`", decl.base)))?
                .clone();
            let mut table = Vec::new();
            let mut witnesses = Vec::new();
            let mut seen: HashMap<(char, MorId), usize> = HashMap::new();
            for (line, kind, m, v) in &decl.entries {
                let (m, v) = (mor(*line, m)?, mor(*line, v)?);
                if seen.insert((*kind, m), *line).is_some() {
                    return Err(semantic(*line, format!("{kind}({}) given twice", cat.label(m))));
                }
                if *kind == 'c' {
                    table.push((m, v))
                } else {
                    witnesses.push((m, v))
                }
            }
            let label_err = |e: quasifact::Error| semantic(decl.line, describe(cat, &e));
            let mut op = ClosureOperator::new(decl.name.clone(), cat, base, table).map_err(label_err)?;
            if !witnesses.is_empty() {
                op = op.with_witnesses(cat, witnesses).map_err(label_err)?;
            }
            closures.push(op);
        }
        inst.classes.extend(classes);
        inst.closures.extend(closures);
        Ok(inst)
    }
}

fn parse_entries(line: usize, body: &str, out: &mut Vec<(usize, char, String, String)>) -> Result<(), CliError> {
    for entry in body.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let bad = || syntax(line, format!("expected `c(m) = n` or `j(m) = k`, found `{entry}`"));
        let (lhs, rhs) = entry.split_once('=').ok_or_else(bad)?;
        let lhs = lhs.trim();
        let rhs = rhs.trim();
        let kind = match lhs.chars().next() {
            Some(k @ ('c' | 'j')) => k,
            _ => return Err(bad()),
        };
        let arg = lhs[1..]
            .trim()
            .strip_prefix('(')
            .and_then(|a| a.strip_suffix(')'))
            .map(str::trim)
            .ok_or_else(bad)?;
        if !is_label(arg) || !is_label(rhs) {
            return Err(bad());
        }
        out.push((line, kind, arg.to_string(), rhs.to_string()));
    }
    Ok(())
}

/// Composition must be defined on every composable pair.
fn check_composition(cat: &FinCategory, mor_lines: &HashMap<MorId, usize>) -> Result<(), CliError> {
    for f in cat.morphisms() {
        for &g in cat.outgoing(cat.cod(f)) {
            if cat.comp(g, f).is_none() {
                let line = [f, g]
                    .iter()
                    .filter_map(|m| mor_lines.get(m))
                    .copied()
                    .max()
                    .unwrap_or(1);
                return Err(semantic(
                    line,
                    format!("missing `comp {} . {} = ...`", cat.label(g), cat.label(f)),
                ));
            }
        }
    }
    Ok(())
}

/// Renders an engine error with labels in place of ids.
pub fn describe(cat: &FinCategory, e: &quasifact::Error) -> String {
    use quasifact::Error as E;
    let l = |m: &MorId| cat.label(*m).to_string();
    match e {
        E::NotInClass(m) => format!("`{}` is not a member of the class", l(m)),
        E::TableIncomplete(m) => format!("closure table has no entry for `{}`", l(m)),
        E::CodomainViolation { m, c } => format!("c({}) = {} does not share its codomain", l(m), l(c)),
        E::ImageOutsideClass { m, c } => format!("c({}) = {} is outside the base class", l(m), l(c)),
        E::InvalidWitness { m, j } => format!("j({}) = {} does not satisfy m = c(m) . j", l(m), l(j)),
        E::MissingWitness(m) => format!("no stored witness j({})", l(m)),
        E::NoQuasiRightPart(m) => format!("`{}` has no quasi right part", l(m)),
        E::NoQuasiLeftPart(m) => format!("`{}` has no quasi left part", l(m)),
        E::CodomainMismatch { f, g } => format!("`{}` and `{}` do not share a codomain", l(f), l(g)),
        E::DomainMismatch { f, g } => format!("`{}` and `{}` do not share a domain", l(f), l(g)),
        E::NotComposable { g, f } => format!("`{} . {}` is not defined", l(g), l(f)),
        other => other.to_string(),
    }
}

/// Object lookup shared by commands.
pub fn object(cat: &FinCategory, label: &str) -> Result<ObjId, CliError> {
    cat.obj_by_label(label)
        .ok_or_else(|| CliError::Usage(format!("unknown object `{label}`")))
}
