//! The declaration format.
//!
//! ```text
//! category C { objects: 2; arrow f: 0 -> 1 }
//! category P { objects: 3; order: 0 < 1, 1 < 2 }
//! category Z2 { objects: 2; discrete }
//! monoidal Z2 { tensor: addition-mod 2; unit: 0 }
//! monoidal S { builtin: SuperZ2 }
//! functor F on Z2 { values: 2 3 }
//! presheaf P on C { values: 1 2; arrow f: 0 0 }
//! diagram D on Z2 { shape: K; at 0: F; at 1: G; map k: 0 1 | 2 }
//! ```
//!
//! Statements end at `;` or a line break. `#` starts a comment. An arrow is
//! named, or written `a -> b` when it is the only arrow between its ends.

use std::fmt::{self, Write};

use crate::error::{CliError, Pos};
use crate::lexer::{Cursor, Tok};

/// A value with the position it was read from; positions are ignored by
/// equality so that printing and re-parsing is the identity.
#[derive(Clone, Debug)]
pub struct Located<T> {
    pub value: T,
    pub pos: Pos,
}

impl<T: PartialEq> PartialEq for Located<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T> Located<T> {
    pub fn new(value: T, pos: Pos) -> Self {
        Self { value, pos }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowRef {
    Name(String),
    Between(usize, usize),
}

impl fmt::Display for ArrowRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowRef::Name(n) => write!(f, "{n}"),
            ArrowRef::Between(a, b) => write!(f, "{a} -> {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArrowDecl {
    pub name: Located<String>,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CategoryDecl {
    pub name: Located<String>,
    pub objects: usize,
    pub discrete: bool,
    pub order: Vec<(usize, usize)>,
    pub arrows: Vec<ArrowDecl>,
    /// `compose g f = h` reads `g ∘ f = h`.
    pub compose: Vec<[Located<ArrowRef>; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorSpec {
    AdditionMod(usize),
    Join,
    Meet,
    /// Row-major `a ⊗ b`.
    Table(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MonoidalBody {
    Builtin(Located<String>),
    Tables { tensor: TensorSpec, unit: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonoidalDecl {
    pub name: Located<String>,
    /// The underlying category; the monoidal name itself when absent.
    pub on: Option<Located<String>>,
    pub body: MonoidalBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctorDecl {
    pub name: Located<String>,
    pub variance: Variance,
    pub on: Located<String>,
    pub values: Vec<usize>,
    pub maps: Vec<(Located<ArrowRef>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramDecl {
    pub name: Located<String>,
    pub on: Located<String>,
    pub shape: Located<String>,
    pub at: Vec<(usize, Located<String>)>,
    /// One function per object of the base, separated by `|`.
    pub maps: Vec<(Located<ArrowRef>, Vec<Vec<usize>>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Category(CategoryDecl),
    Monoidal(MonoidalDecl),
    Functor(FunctorDecl),
    Diagram(DiagramDecl),
}

impl Decl {
    pub fn name(&self) -> &Located<String> {
        match self {
            Decl::Category(d) => &d.name,
            Decl::Monoidal(d) => &d.name,
            Decl::Functor(d) => &d.name,
            Decl::Diagram(d) => &d.name,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpecDocument {
    pub decls: Vec<Decl>,
}

/// Syntax only; see [`crate::resolve`] for references and validation.
pub fn parse_document(text: &str) -> Result<SpecDocument, CliError> {
    let mut cur = Cursor::new(text)?;
    let mut decls = Vec::new();
    while !cur.at_end() {
        let (kw, pos) = cur.ident()?;
        let decl = match kw.as_str() {
            "category" => Decl::Category(category(&mut cur)?),
            "monoidal" => Decl::Monoidal(monoidal(&mut cur)?),
            "functor" => Decl::Functor(functor(&mut cur, Variance::Covariant)?),
            "presheaf" => Decl::Functor(functor(&mut cur, Variance::Contravariant)?),
            "diagram" => Decl::Diagram(diagram(&mut cur)?),
            other => {
                return Err(CliError::syntax(
                    pos,
                    format!("unknown declaration `{other}` (expected category, monoidal, functor, presheaf or diagram)"),
                ))
            }
        };
        decls.push(decl);
    }
    Ok(SpecDocument { decls })
}

fn name(cur: &mut Cursor) -> Result<Located<String>, CliError> {
    let (s, pos) = cur.ident()?;
    Ok(Located::new(s, pos))
}

/// Runs `field` on every statement between braces.
fn block(cur: &mut Cursor, mut field: impl FnMut(&mut Cursor, String, Pos) -> Result<(), CliError>) -> Result<(), CliError> {
    cur.skip_newlines();
    cur.expect("{")?;
    loop {
        cur.skip_newlines();
        while cur.eat(";") {
            cur.skip_newlines();
        }
        if cur.eat("}") {
            return Ok(());
        }
        let (key, pos) = cur.ident()?;
        field(cur, key, pos)?;
        cur.end_statement()?;
    }
}

fn arrow_ref(cur: &mut Cursor) -> Result<Located<ArrowRef>, CliError> {
    let pos = cur.pos();
    let r = match cur.peek() {
        Some(Tok::Int(_)) => {
            let a = cur.int()?;
            cur.expect("->")?;
            ArrowRef::Between(a, cur.int()?)
        }
        _ => ArrowRef::Name(cur.ident()?.0),
    };
    Ok(Located::new(r, pos))
}

fn unknown_field(kind: &str, key: &str, pos: Pos) -> CliError {
    CliError::syntax(pos, format!("unknown {kind} field `{key}`"))
}

fn category(cur: &mut Cursor) -> Result<CategoryDecl, CliError> {
    let mut d = CategoryDecl {
        name: name(cur)?,
        objects: 0,
        discrete: false,
        order: Vec::new(),
        arrows: Vec::new(),
        compose: Vec::new(),
    };
    block(cur, |cur, key, pos| {
        match key.as_str() {
            "objects" => {
                cur.expect(":")?;
                d.objects = cur.int()?;
            }
            "discrete" => d.discrete = true,
            "order" => {
                cur.expect(":")?;
                loop {
                    let a = cur.int()?;
                    cur.expect("<")?;
                    d.order.push((a, cur.int()?));
                    if !cur.eat(",") {
                        break;
                    }
                }
            }
            "arrow" => {
                let n = name(cur)?;
                cur.expect(":")?;
                let source = cur.int()?;
                cur.expect("->")?;
                d.arrows.push(ArrowDecl {
                    name: n,
                    source,
                    target: cur.int()?,
                });
            }
            "compose" => {
                let g = arrow_ref(cur)?;
                let f = arrow_ref(cur)?;
                cur.expect("=")?;
                d.compose.push([g, f, arrow_ref(cur)?]);
            }
            _ => return Err(unknown_field("category", &key, pos)),
        }
        Ok(())
    })?;
    Ok(d)
}

fn monoidal(cur: &mut Cursor) -> Result<MonoidalDecl, CliError> {
    let n = name(cur)?;
    let on = if matches!(cur.peek(), Some(Tok::Ident(s)) if s == "on") {
        cur.next();
        Some(name(cur)?)
    } else {
        None
    };
    let start = cur.pos();
    let (mut builtin, mut tensor, mut unit) = (None, None, None);
    block(cur, |cur, key, pos| {
        cur.expect(":")?;
        match key.as_str() {
            "builtin" => builtin = Some(name(cur)?),
            "unit" => unit = Some(cur.int()?),
            "tensor" => {
                let (kind, kpos) = cur.ident()?;
                tensor = Some(match kind.as_str() {
                    "addition-mod" => TensorSpec::AdditionMod(cur.int()?),
                    "join" => TensorSpec::Join,
                    "meet" => TensorSpec::Meet,
                    "table" => TensorSpec::Table(cur.ints()?),
                    _ => {
                        return Err(CliError::syntax(
                            kpos,
                            format!("unknown tensor `{kind}` (expected addition-mod, join, meet or table)"),
                        ))
                    }
                });
            }
            _ => return Err(unknown_field("monoidal", &key, pos)),
        }
        Ok(())
    })?;
    let body = match (builtin, tensor, unit) {
        (Some(b), None, None) => MonoidalBody::Builtin(b),
        (None, Some(tensor), Some(unit)) => MonoidalBody::Tables { tensor, unit },
        (None, _, _) => return Err(CliError::syntax(start, "a monoidal declaration needs `tensor` and `unit`")),
        (Some(_), _, _) => return Err(CliError::syntax(start, "`builtin` excludes `tensor` and `unit`")),
    };
    Ok(MonoidalDecl { name: n, on, body })
}

fn functor(cur: &mut Cursor, variance: Variance) -> Result<FunctorDecl, CliError> {
    let n = name(cur)?;
    cur.keyword("on")?;
    let mut d = FunctorDecl {
        name: n,
        variance,
        on: name(cur)?,
        values: Vec::new(),
        maps: Vec::new(),
    };
    block(cur, |cur, key, pos| {
        match key.as_str() {
            "values" => {
                cur.expect(":")?;
                d.values = cur.ints()?;
            }
            "arrow" => {
                let r = arrow_ref(cur)?;
                cur.expect(":")?;
                d.maps.push((r, cur.ints()?));
            }
            _ => return Err(unknown_field("functor", &key, pos)),
        }
        Ok(())
    })?;
    Ok(d)
}

fn diagram(cur: &mut Cursor) -> Result<DiagramDecl, CliError> {
    let n = name(cur)?;
    cur.keyword("on")?;
    let on = name(cur)?;
    let mut shape = None;
    let mut at = Vec::new();
    let mut maps = Vec::new();
    let start = cur.pos();
    block(cur, |cur, key, pos| {
        match key.as_str() {
            "shape" => {
                cur.expect(":")?;
                shape = Some(name(cur)?);
            }
            "at" => {
                let k = cur.int()?;
                cur.expect(":")?;
                at.push((k, name(cur)?));
            }
            "map" => {
                let r = arrow_ref(cur)?;
                cur.expect(":")?;
                let mut comps = vec![cur.ints()?];
                while cur.eat("|") {
                    comps.push(cur.ints()?);
                }
                maps.push((r, comps));
            }
            _ => return Err(unknown_field("diagram", &key, pos)),
        }
        Ok(())
    })?;
    let shape = shape.ok_or_else(|| CliError::syntax(start, "a diagram needs a `shape`"))?;
    Ok(DiagramDecl {
        name: n,
        on,
        shape,
        at,
        maps,
    })
}

fn ints(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for SpecDocument {
    /// The canonical form: one statement per line, fields in a fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, decl) in self.decls.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match decl {
                Decl::Category(d) => {
                    writeln!(out, "category {} {{", d.name.value)?;
                    writeln!(out, "  objects: {}", d.objects)?;
                    if d.discrete {
                        writeln!(out, "  discrete")?;
                    }
                    if !d.order.is_empty() {
                        let pairs: Vec<String> = d.order.iter().map(|(a, b)| format!("{a} < {b}")).collect();
                        writeln!(out, "  order: {}", pairs.join(", "))?;
                    }
                    for a in &d.arrows {
                        writeln!(out, "  arrow {}: {} -> {}", a.name.value, a.source, a.target)?;
                    }
                    for [g, h, k] in &d.compose {
                        writeln!(out, "  compose {} {} = {}", g.value, h.value, k.value)?;
                    }
                }
                Decl::Monoidal(d) => {
                    match &d.on {
                        Some(on) => writeln!(out, "monoidal {} on {} {{", d.name.value, on.value)?,
                        None => writeln!(out, "monoidal {} {{", d.name.value)?,
                    }
                    match &d.body {
                        MonoidalBody::Builtin(b) => writeln!(out, "  builtin: {}", b.value)?,
                        MonoidalBody::Tables { tensor, unit } => {
                            let t = match tensor {
                                TensorSpec::AdditionMod(n) => format!("addition-mod {n}"),
                                TensorSpec::Join => "join".to_string(),
                                TensorSpec::Meet => "meet".to_string(),
                                TensorSpec::Table(xs) => format!("table {}", ints(xs)),
                            };
                            writeln!(out, "  tensor: {t}")?;
                            writeln!(out, "  unit: {unit}")?;
                        }
                    }
                }
                Decl::Functor(d) => {
                    let kw = match d.variance {
                        Variance::Covariant => "functor",
                        Variance::Contravariant => "presheaf",
                    };
                    writeln!(out, "{kw} {} on {} {{", d.name.value, d.on.value)?;
                    writeln!(out, "  values: {}", ints(&d.values))?;
                    for (r, xs) in &d.maps {
                        writeln!(out, "  arrow {}: {}", r.value, ints(xs))?;
                    }
                }
                Decl::Diagram(d) => {
                    writeln!(out, "diagram {} on {} {{", d.name.value, d.on.value)?;
                    writeln!(out, "  shape: {}", d.shape.value)?;
                    for (k, fname) in &d.at {
                        writeln!(out, "  at {k}: {}", fname.value)?;
                    }
                    for (r, comps) in &d.maps {
                        let parts: Vec<String> = comps.iter().map(|c| ints(c)).collect();
                        writeln!(out, "  map {}: {}", r.value, parts.join(" | "))?;
                    }
                }
            }
            out.push_str("}\n");
        }
        f.write_str(&out)
    }
}
