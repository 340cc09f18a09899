//! The input language: declarations of rings, complexes, chain maps,
//! categories, diagrams, and standard simplicial sets, plus one command.
//!
//! The grammar is line-agnostic and LL(1); a hand-rolled lexer and
//! recursive-descent parser keep error positions exact. Integers are
//! arbitrary precision; matrices are written row-major in brackets.
//!
//! ```text
//! ring Z
//! complex C { 0: rank 1  1: rank 1  d 1: [[2]] }
//! map f : C -> C { 0: [[1]], 1: [[1]] }
//! category I { objects a, b  morphism u : a -> b }
//! diagram F : I { a => C, b => C, u => f }
//! sset K = boundary(2)
//! cmd homology C 0 1
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use hocolim::category::CategoryBuilder;
use hocolim::{
    ChainComplex, ChainMap, Diagram, FiniteCategory, FiniteSimplicialSet, Matrix, Ring,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug)]
pub enum ParseError {
    /// Malformed input: position plus what was expected.
    Syntax { pos: Pos, message: String },
    /// A referenced name is not defined.
    Resolution { pos: Pos, name: String },
    /// Well-formed input describing inconsistent data (matrix shapes,
    /// nonzero differential squares, category laws).
    Shape { pos: Pos, message: String },
    /// A diagram that is not a functor.
    Functoriality { pos: Pos, message: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, message } => write!(f, "syntax error at {pos}: {message}"),
            ParseError::Resolution { pos, name } => {
                write!(f, "undefined name at {pos}: {name}")
            }
            ParseError::Shape { pos, message } => write!(f, "shape error at {pos}: {message}"),
            ParseError::Functoriality { pos, message } => {
                write!(f, "functoriality error at {pos}: {message}")
            }
        }
    }
}

impl ParseError {
    /// Exit code class: 1 for syntax, 2 for every other input failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            ParseError::Syntax { .. } => 1,
            _ => 2,
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer.

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Arrow,       // ->
    FatArrow,    // =>
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    Equals,
    Minus,
    Slash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::FatArrow => write!(f, "'=>'"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Colon => write!(f, "':'"),
            Tok::Comma => write!(f, "','"),
            Tok::Dot => write!(f, "'.'"),
            Tok::Equals => write!(f, "'='"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Slash => write!(f, "'/'"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    out.push((Tok::Arrow, pos));
                } else {
                    out.push((Tok::Minus, pos));
                }
            }
            '=' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    out.push((Tok::FatArrow, pos));
                } else {
                    out.push((Tok::Equals, pos));
                }
            }
            '{' | '}' | '[' | ']' | '(' | ')' | ':' | ',' | '.' | '/' => {
                chars.next();
                col += 1;
                out.push((
                    match c {
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ':' => Tok::Colon,
                        ',' => Tok::Comma,
                        '.' => Tok::Dot,
                        _ => Tok::Slash,
                    },
                    pos,
                ));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(digits.parse().expect("digits")), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(ident), pos));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Manifest data.

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SsetExpr {
    Simplex(usize),
    Boundary(usize),
    Horn(usize, usize),
    Circle,
}

impl fmt::Display for SsetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsetExpr::Simplex(n) => write!(f, "simplex({n})"),
            SsetExpr::Boundary(n) => write!(f, "boundary({n})"),
            SsetExpr::Horn(n, k) => write!(f, "horn({n}, {k})"),
            SsetExpr::Circle => write!(f, "circle"),
        }
    }
}

/// A morphism assignment in a diagram declaration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MapRef {
    Named(String),
    Zero,
    Identity,
}

impl fmt::Display for MapRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapRef::Named(s) => write!(f, "{s}"),
            MapRef::Zero => write!(f, "0"),
            MapRef::Identity => write!(f, "id"),
        }
    }
}

/// An object assignment in a diagram declaration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ComplexRef {
    Named(String),
    Zero,
}

impl fmt::Display for ComplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexRef::Named(s) => write!(f, "{s}"),
            ComplexRef::Zero => write!(f, "0"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramDecl {
    pub category: String,
    pub objects: BTreeMap<String, ComplexRef>,
    pub morphisms: BTreeMap<String, MapRef>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Command {
    Homology { complex: String, lo: i64, hi: i64 },
    Hocolim { diagram: String, lo: i64, hi: i64 },
    Holim { diagram: String, lo: i64, hi: i64 },
    Realize { sset: String, complex: String, lo: i64, hi: i64 },
    Bar { diagram: String, level: usize },
    Snf { matrix: Vec<Vec<BigRational>> },
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Homology { complex, lo, hi } => write!(f, "homology {complex} {lo} {hi}"),
            Command::Hocolim { diagram, lo, hi } => write!(f, "hocolim {diagram} {lo} {hi}"),
            Command::Holim { diagram, lo, hi } => write!(f, "holim {diagram} {lo} {hi}"),
            Command::Realize { sset, complex, lo, hi } => {
                write!(f, "realize linearize({sset}, {complex}) {lo} {hi}")
            }
            Command::Bar { diagram, level } => write!(f, "bar {diagram} {level}"),
            Command::Snf { matrix } => {
                write!(f, "snf ")?;
                write_matrix_literal(f, matrix)
            }
        }
    }
}

fn write_matrix_literal(f: &mut fmt::Formatter<'_>, m: &[Vec<BigRational>]) -> fmt::Result {
    write!(f, "[")?;
    for (i, row) in m.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "[")?;
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// A fully validated input file: every name resolves and every referenced
/// shape is consistent.
#[derive(Clone, PartialEq, Debug)]
pub struct Manifest {
    pub ring: Option<Ring>,
    pub complexes: BTreeMap<String, ChainComplex>,
    pub maps: BTreeMap<String, (String, String, ChainMap)>,
    pub categories: BTreeMap<String, FiniteCategory>,
    pub diagram_decls: BTreeMap<String, DiagramDecl>,
    pub diagrams: BTreeMap<String, Diagram>,
    pub ssets: BTreeMap<String, (SsetExpr, FiniteSimplicialSet)>,
    pub command: Option<Command>,
}

impl Manifest {
    pub fn empty() -> Self {
        Manifest {
            ring: None,
            complexes: BTreeMap::new(),
            maps: BTreeMap::new(),
            categories: BTreeMap::new(),
            diagram_decls: BTreeMap::new(),
            diagrams: BTreeMap::new(),
            ssets: BTreeMap::new(),
            command: None,
        }
    }

    /// Canonical text form; `parse(to_dsl(m))` reproduces `m` exactly.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        if let Some(ring) = self.ring {
            writeln!(out, "ring {ring}").unwrap();
        }
        for (name, c) in &self.complexes {
            writeln!(out, "complex {name} {{").unwrap();
            for (deg, rank) in c.ranks() {
                writeln!(out, "  {deg}: rank {rank}").unwrap();
            }
            for deg in c.ranks().keys() {
                let d = c.differential(*deg);
                if d.rows() > 0 && d.cols() > 0 {
                    writeln!(out, "  d {deg}: {}", render_matrix(&d)).unwrap();
                }
            }
            writeln!(out, "}}").unwrap();
        }
        for (name, (src, tgt, map)) in &self.maps {
            writeln!(out, "map {name} : {src} -> {tgt} {{").unwrap();
            for deg in map.source().ranks().keys() {
                let m = map.component(*deg);
                if m.rows() > 0 && m.cols() > 0 {
                    writeln!(out, "  {deg}: {}", render_matrix(&m)).unwrap();
                }
            }
            writeln!(out, "}}").unwrap();
        }
        for (name, cat) in &self.categories {
            writeln!(out, "category {name} {{").unwrap();
            let objects: Vec<&str> = (0..cat.object_count()).map(|x| cat.object_name(x)).collect();
            writeln!(out, "  objects {}", objects.join(", ")).unwrap();
            for m in 0..cat.morphism_count() {
                if cat.is_identity(m) {
                    continue;
                }
                let mor = cat.morphism(m);
                writeln!(
                    out,
                    "  morphism {} : {} -> {}",
                    mor.name,
                    cat.object_name(mor.source),
                    cat.object_name(mor.target)
                )
                .unwrap();
            }
            for f in 0..cat.morphism_count() {
                for g in 0..cat.morphism_count() {
                    if cat.is_identity(f) || cat.is_identity(g) {
                        continue;
                    }
                    if let Some(h) = cat.compose(g, f) {
                        writeln!(
                            out,
                            "  compose {} . {} = {}",
                            cat.morphism(g).name,
                            cat.morphism(f).name,
                            cat.morphism(h).name
                        )
                        .unwrap();
                    }
                }
            }
            writeln!(out, "}}").unwrap();
        }
        for (name, decl) in &self.diagram_decls {
            writeln!(out, "diagram {name} : {} {{", decl.category).unwrap();
            for (obj, val) in &decl.objects {
                writeln!(out, "  {obj} => {val}").unwrap();
            }
            for (mor, val) in &decl.morphisms {
                writeln!(out, "  {mor} => {val}").unwrap();
            }
            writeln!(out, "}}").unwrap();
        }
        for (name, (expr, _)) in &self.ssets {
            writeln!(out, "sset {name} = {expr}").unwrap();
        }
        if let Some(cmd) = &self.command {
            writeln!(out, "cmd {cmd}").unwrap();
        }
        out
    }
}

fn render_matrix(m: &Matrix) -> String {
    format!("{m}")
}

// ---------------------------------------------------------------------------
// Parser and elaborator.

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    manifest: Manifest,
}

type PResult<T> = Result<T, ParseError>;

pub fn parse(text: &str) -> PResult<Manifest> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, manifest: Manifest::empty() };
    p.manifest()?;
    Ok(p.manifest)
}

impl Parser {
    fn pos(&self) -> Pos {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map_or(Pos { line: 1, col: 1 }, |&(_, p)| p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => {
                let found = t.clone();
                self.syntax(format!("expected {tok}, found {found}"))
            }
            None => self.syntax(format!("expected {tok}, found end of input")),
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            Some(t) => {
                let found = t.clone();
                self.syntax(format!("expected {what}, found {found}"))
            }
            None => self.syntax(format!("expected {what}, found end of input")),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let pos = self.pos();
        let got = self.ident(&format!("keyword '{kw}'"))?;
        if got == kw {
            Ok(())
        } else {
            Err(ParseError::Syntax { pos, message: format!("expected '{kw}', found '{got}'") })
        }
    }

    /// A possibly negative arbitrary-precision integer.
    fn integer(&mut self) -> PResult<BigInt> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(n)) => Ok(if negative { -n } else { n }),
            Some(t) => self.syntax(format!("expected an integer, found {t}")),
            None => self.syntax("expected an integer, found end of input"),
        }
    }

    fn small_int(&mut self) -> PResult<i64> {
        let pos = self.pos();
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| ParseError::Syntax {
            pos,
            message: "degree does not fit in 64 bits".to_string(),
        })
    }

    fn nat(&mut self, what: &str) -> PResult<usize> {
        let pos = self.pos();
        let n = self.integer()?;
        usize::try_from(n)
            .map_err(|_| ParseError::Syntax { pos, message: format!("{what} must be nonnegative") })
    }

    /// `int[/nat]`, exact.
    fn scalar(&mut self) -> PResult<BigRational> {
        let numer = self.integer()?;
        if self.peek() == Some(&Tok::Slash) {
            self.at += 1;
            let pos = self.pos();
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(ParseError::Syntax { pos, message: "division by zero".into() });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn matrix_literal(&mut self) -> PResult<Vec<Vec<BigRational>>> {
        self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.peek() == Some(&Tok::RBracket) {
            self.at += 1;
            return Ok(rows);
        }
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = Vec::new();
            if self.peek() != Some(&Tok::RBracket) {
                loop {
                    row.push(self.scalar()?);
                    if self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RBracket)?;
            rows.push(row);
            if self.peek() == Some(&Tok::Comma) {
                self.at += 1;
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(rows)
    }

    fn current_ring(&self, pos: Pos) -> PResult<Ring> {
        self.manifest.ring.ok_or_else(|| ParseError::Shape {
            pos,
            message: "declare a ring before complexes or maps".into(),
        })
    }

    fn manifest(&mut self) -> PResult<()> {
        while let Some(tok) = self.peek() {
            let pos = self.pos();
            let Tok::Ident(kw) = tok.clone() else {
                let found = tok.clone();
                return self.syntax(format!("expected a declaration keyword, found {found}"));
            };
            self.at += 1;
            match kw.as_str() {
                "ring" => self.ring_decl(pos)?,
                "complex" => self.complex_decl(pos)?,
                "map" => self.map_decl(pos)?,
                "category" => self.category_decl(pos)?,
                "diagram" => self.diagram_decl(pos)?,
                "sset" => self.sset_decl(pos)?,
                "cmd" => self.cmd_decl(pos)?,
                other => {
                    return Err(ParseError::Syntax {
                        pos,
                        message: format!(
                            "expected one of ring/complex/map/category/diagram/sset/cmd, \
                             found '{other}'"
                        ),
                    })
                }
            }
        }
        Ok(())
    }

    fn ring_decl(&mut self, pos: Pos) -> PResult<()> {
        let name = self.ident("ring name")?;
        let ring = if name == "Z" {
            Ring::Integers
        } else if name == "Q" {
            Ring::Rationals
        } else if let Some(p) = name.strip_prefix('F').and_then(|d| d.parse::<u64>().ok()) {
            Ring::PrimeField(p)
        } else {
            return Err(ParseError::Syntax {
                pos,
                message: format!("unknown ring '{name}'; use Z, Q, or F<prime>"),
            });
        };
        ring.validate().map_err(|e| ParseError::Shape { pos, message: e.to_string() })?;
        if self.manifest.ring.is_some() {
            return Err(ParseError::Shape { pos, message: "ring declared twice".into() });
        }
        self.manifest.ring = Some(ring);
        Ok(())
    }

    fn complex_decl(&mut self, pos: Pos) -> PResult<()> {
        let ring = self.current_ring(pos)?;
        let name = self.ident("complex name")?;
        self.check_fresh(&name, pos)?;
        self.expect(Tok::LBrace)?;
        let mut ranks = BTreeMap::new();
        let mut diffs_raw: Vec<(Pos, i64, Vec<Vec<BigRational>>)> = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.at += 1;
                    break;
                }
                Some(Tok::Ident(s)) if s == "d" => {
                    self.at += 1;
                    let dpos = self.pos();
                    let deg = self.small_int()?;
                    self.expect(Tok::Colon)?;
                    let m = self.matrix_literal()?;
                    diffs_raw.push((dpos, deg, m));
                }
                Some(Tok::Int(_)) | Some(Tok::Minus) => {
                    let deg = self.small_int()?;
                    self.expect(Tok::Colon)?;
                    self.keyword("rank")?;
                    let r = self.nat("rank")?;
                    ranks.insert(deg, r);
                }
                _ => return self.syntax("expected a degree, 'd', or '}' in complex body"),
            }
        }
        let mut diffs = BTreeMap::new();
        for (dpos, deg, raw) in diffs_raw {
            let m = Matrix::from_rows(ring, raw)
                .map_err(|e| ParseError::Shape { pos: dpos, message: e.to_string() })?;
            diffs.insert(deg, m);
        }
        let complex = ChainComplex::new(ring, ranks, diffs)
            .map_err(|e| ParseError::Shape { pos, message: e.to_string() })?;
        self.manifest.complexes.insert(name, complex);
        Ok(())
    }

    fn map_decl(&mut self, pos: Pos) -> PResult<()> {
        let ring = self.current_ring(pos)?;
        let name = self.ident("map name")?;
        self.check_fresh(&name, pos)?;
        self.expect(Tok::Colon)?;
        let src_pos = self.pos();
        let src = self.ident("source complex")?;
        self.expect(Tok::Arrow)?;
        let tgt_pos = self.pos();
        let tgt = self.ident("target complex")?;
        let source = self.lookup_complex(&src, src_pos)?.clone();
        let target = self.lookup_complex(&tgt, tgt_pos)?.clone();
        self.expect(Tok::LBrace)?;
        let mut components = BTreeMap::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.at += 1;
                    break;
                }
                Some(Tok::Int(_)) | Some(Tok::Minus) => {
                    let cpos = self.pos();
                    let deg = self.small_int()?;
                    self.expect(Tok::Colon)?;
                    let raw = self.matrix_literal()?;
                    let m = Matrix::from_rows(ring, raw)
                        .map_err(|e| ParseError::Shape { pos: cpos, message: e.to_string() })?;
                    components.insert(deg, m);
                    if self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                    }
                }
                _ => return self.syntax("expected a degree or '}' in map body"),
            }
        }
        let map = ChainMap::new(source, target, components)
            .map_err(|e| ParseError::Shape { pos, message: e.to_string() })?;
        self.manifest.maps.insert(name, (src, tgt, map));
        Ok(())
    }

    fn category_decl(&mut self, pos: Pos) -> PResult<()> {
        let name = self.ident("category name")?;
        self.check_fresh(&name, pos)?;
        self.expect(Tok::LBrace)?;
        let mut objects: Vec<String> = Vec::new();
        let mut morphisms: Vec<(String, String, String)> = Vec::new();
        let mut composites: Vec<(Pos, String, String, String)> = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.at += 1;
                    break;
                }
                Some(Tok::Ident(kw)) if kw == "objects" => {
                    self.at += 1;
                    loop {
                        objects.push(self.ident("object name")?);
                        if self.peek() == Some(&Tok::Comma) {
                            self.at += 1;
                        } else {
                            break;
                        }
                    }
                }
                Some(Tok::Ident(kw)) if kw == "morphism" => {
                    self.at += 1;
                    let mname = self.ident("morphism name")?;
                    self.expect(Tok::Colon)?;
                    let src = self.ident("source object")?;
                    self.expect(Tok::Arrow)?;
                    let tgt = self.ident("target object")?;
                    morphisms.push((mname, src, tgt));
                }
                Some(Tok::Ident(kw)) if kw == "compose" => {
                    self.at += 1;
                    let cpos = self.pos();
                    let second = self.ident("morphism name")?;
                    self.expect(Tok::Dot)?;
                    let first = self.ident("morphism name")?;
                    self.expect(Tok::Equals)?;
                    let result = self.ident("morphism name")?;
                    composites.push((cpos, second, first, result));
                }
                _ => return self.syntax("expected objects/morphism/compose or '}'"),
            }
        }
        let refs: Vec<&str> = objects.iter().map(String::as_str).collect();
        let mut builder = CategoryBuilder::new(&refs);
        for (mname, src, tgt) in &morphisms {
            builder
                .morphism(mname, src, tgt)
                .map_err(|e| ParseError::Shape { pos, message: e.to_string() })?;
        }
        for (cpos, second, first, result) in &composites {
            builder
                .composite(second, first, result)
                .map_err(|e| ParseError::Resolution { pos: *cpos, name: e.to_string() })?;
        }
        let cat =
            builder.build().map_err(|e| ParseError::Shape { pos, message: e.to_string() })?;
        self.manifest.categories.insert(name, cat);
        Ok(())
    }

    fn diagram_decl(&mut self, pos: Pos) -> PResult<()> {
        let name = self.ident("diagram name")?;
        self.check_fresh(&name, pos)?;
        self.expect(Tok::Colon)?;
        let cat_pos = self.pos();
        let cat_name = self.ident("category name")?;
        let cat = self
            .manifest
            .categories
            .get(&cat_name)
            .ok_or_else(|| ParseError::Resolution { pos: cat_pos, name: cat_name.clone() })?
            .clone();
        self.expect(Tok::LBrace)?;
        let mut object_refs: BTreeMap<String, ComplexRef> = BTreeMap::new();
        let mut morphism_refs: BTreeMap<String, MapRef> = BTreeMap::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.at += 1;
                    break;
                }
                Some(Tok::Ident(_)) => {
                    let key_pos = self.pos();
                    let key = self.ident("object or morphism name")?;
                    self.expect(Tok::FatArrow)?;
                    let value_is_zero = self.peek() == Some(&Tok::Int(BigInt::from(0)));
                    if cat.object_index(&key).is_some() {
                        if value_is_zero {
                            self.at += 1;
                            object_refs.insert(key, ComplexRef::Zero);
                        } else {
                            let v = self.ident("complex name")?;
                            object_refs.insert(key, ComplexRef::Named(v));
                        }
                    } else if cat.morphism_index(&key).is_some() {
                        if value_is_zero {
                            self.at += 1;
                            morphism_refs.insert(key, MapRef::Zero);
                        } else {
                            let v = self.ident("map name or 'id'")?;
                            if v == "id" {
                                morphism_refs.insert(key, MapRef::Identity);
                            } else {
                                morphism_refs.insert(key, MapRef::Named(v));
                            }
                        }
                    } else {
                        return Err(ParseError::Resolution { pos: key_pos, name: key });
                    }
                    if self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                    }
                }
                _ => return self.syntax("expected an assignment or '}' in diagram body"),
            }
        }
        // Elaborate to a validated Diagram.
        let mut on_objects = Vec::new();
        for x in 0..cat.object_count() {
            let obj = cat.object_name(x);
            let r = object_refs.get(obj).ok_or_else(|| ParseError::Shape {
                pos,
                message: format!("diagram {name} does not assign a complex to object {obj}"),
            })?;
            on_objects.push(match r {
                ComplexRef::Zero => {
                    ChainComplex::zero(self.current_ring(pos)?)
                }
                ComplexRef::Named(c) => self.lookup_complex(c, pos)?.clone(),
            });
        }
        let mut on_morphisms = Vec::new();
        for mi in 0..cat.morphism_count() {
            let mor = cat.morphism(mi);
            let (src, tgt) = (&on_objects[mor.source], &on_objects[mor.target]);
            if cat.is_identity(mi) {
                on_morphisms.push(ChainMap::identity(src));
                continue;
            }
            let r = morphism_refs.get(&mor.name).ok_or_else(|| ParseError::Shape {
                pos,
                message: format!("diagram {name} does not assign a map to morphism {}", mor.name),
            })?;
            on_morphisms.push(match r {
                MapRef::Zero => ChainMap::zero(src, tgt),
                MapRef::Identity => {
                    if src != tgt {
                        return Err(ParseError::Shape {
                            pos,
                            message: format!(
                                "morphism {} assigned 'id' between different complexes",
                                mor.name
                            ),
                        });
                    }
                    ChainMap::identity(src)
                }
                MapRef::Named(f) => {
                    let (_, _, map) = self
                        .manifest
                        .maps
                        .get(f)
                        .ok_or_else(|| ParseError::Resolution { pos, name: f.clone() })?;
                    map.clone()
                }
            });
        }
        let diagram = Diagram::new(cat, on_objects, on_morphisms)
            .map_err(|e| ParseError::Functoriality { pos, message: e.to_string() })?;
        self.manifest.diagram_decls.insert(
            name.clone(),
            DiagramDecl { category: cat_name, objects: object_refs, morphisms: morphism_refs },
        );
        self.manifest.diagrams.insert(name, diagram);
        Ok(())
    }

    fn sset_decl(&mut self, pos: Pos) -> PResult<()> {
        let name = self.ident("simplicial set name")?;
        self.check_fresh(&name, pos)?;
        self.expect(Tok::Equals)?;
        let kind = self.ident("constructor")?;
        let expr = match kind.as_str() {
            "circle" => SsetExpr::Circle,
            "simplex" | "boundary" => {
                self.expect(Tok::LParen)?;
                let n = self.nat("dimension")?;
                self.expect(Tok::RParen)?;
                if kind == "simplex" {
                    SsetExpr::Simplex(n)
                } else {
                    SsetExpr::Boundary(n)
                }
            }
            "horn" => {
                self.expect(Tok::LParen)?;
                let n = self.nat("dimension")?;
                self.expect(Tok::Comma)?;
                let k = self.nat("horn index")?;
                self.expect(Tok::RParen)?;
                SsetExpr::Horn(n, k)
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!(
                        "unknown constructor '{other}'; use simplex/boundary/horn/circle"
                    ),
                })
            }
        };
        let sset = match &expr {
            SsetExpr::Simplex(n) => FiniteSimplicialSet::simplex(*n),
            SsetExpr::Boundary(n) => FiniteSimplicialSet::boundary(*n),
            SsetExpr::Horn(n, k) => FiniteSimplicialSet::horn(*n, *k)
                .map_err(|e| ParseError::Shape { pos, message: e.to_string() })?,
            SsetExpr::Circle => FiniteSimplicialSet::circle(),
        };
        self.manifest.ssets.insert(name, (expr, sset));
        Ok(())
    }

    fn cmd_decl(&mut self, pos: Pos) -> PResult<()> {
        if self.manifest.command.is_some() {
            return Err(ParseError::Shape { pos, message: "more than one cmd".into() });
        }
        let kind = self.ident("command")?;
        let command = match kind.as_str() {
            "homology" => {
                let cpos = self.pos();
                let complex = self.ident("complex name")?;
                self.lookup_complex(&complex, cpos)?;
                let lo = self.small_int()?;
                let hi = self.small_int()?;
                Command::Homology { complex, lo, hi }
            }
            "hocolim" | "holim" => {
                let dpos = self.pos();
                let diagram = self.ident("diagram name")?;
                if !self.manifest.diagrams.contains_key(&diagram) {
                    return Err(ParseError::Resolution { pos: dpos, name: diagram });
                }
                let lo = self.small_int()?;
                let hi = self.small_int()?;
                if kind == "hocolim" {
                    Command::Hocolim { diagram, lo, hi }
                } else {
                    Command::Holim { diagram, lo, hi }
                }
            }
            "realize" => {
                self.keyword("linearize")?;
                self.expect(Tok::LParen)?;
                let spos = self.pos();
                let sset = self.ident("simplicial set name")?;
                if !self.manifest.ssets.contains_key(&sset) {
                    return Err(ParseError::Resolution { pos: spos, name: sset });
                }
                self.expect(Tok::Comma)?;
                let cpos = self.pos();
                let complex = self.ident("complex name")?;
                self.lookup_complex(&complex, cpos)?;
                self.expect(Tok::RParen)?;
                let lo = self.small_int()?;
                let hi = self.small_int()?;
                Command::Realize { sset, complex, lo, hi }
            }
            "bar" => {
                let dpos = self.pos();
                let diagram = self.ident("diagram name")?;
                if !self.manifest.diagrams.contains_key(&diagram) {
                    return Err(ParseError::Resolution { pos: dpos, name: diagram });
                }
                let level = self.nat("bar level")?;
                Command::Bar { diagram, level }
            }
            "snf" => Command::Snf { matrix: self.matrix_literal()? },
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!(
                        "unknown command '{other}'; use \
                         homology/hocolim/holim/realize/bar/snf"
                    ),
                })
            }
        };
        if let Command::Homology { lo, hi, .. }
        | Command::Hocolim { lo, hi, .. }
        | Command::Holim { lo, hi, .. }
        | Command::Realize { lo, hi, .. } = &command
        {
            if lo > hi {
                return Err(ParseError::Shape {
                    pos,
                    message: format!("empty degree window [{lo}, {hi}]"),
                });
            }
        }
        self.manifest.command = Some(command);
        Ok(())
    }

    fn lookup_complex(&self, name: &str, pos: Pos) -> PResult<&ChainComplex> {
        self.manifest
            .complexes
            .get(name)
            .ok_or_else(|| ParseError::Resolution { pos, name: name.to_string() })
    }

    fn check_fresh(&self, name: &str, pos: Pos) -> PResult<()> {
        let taken = self.manifest.complexes.contains_key(name)
            || self.manifest.maps.contains_key(name)
            || self.manifest.categories.contains_key(name)
            || self.manifest.diagrams.contains_key(name)
            || self.manifest.ssets.contains_key(name);
        if taken {
            Err(ParseError::Shape { pos, message: format!("name '{name}' is already defined") })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_manifest_parses() {
        let m = parse("ring Z\ncomplex C { 0: rank 1 }\ncmd homology C 0 0").unwrap();
        assert_eq!(m.ring, Some(Ring::Integers));
        assert_eq!(m.complexes["C"].rank(0), 1);
        assert!(matches!(m.command, Some(Command::Homology { .. })));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse("ring Z\ncomplex C { 0: rank }").unwrap_err();
        match err {
            ParseError::Syntax { pos, .. } => {
                assert_eq!(pos.line, 2);
            }
            other => panic!("expected a syntax error, got {other}"),
        }
    }

    #[test]
    fn square_violation_is_a_shape_error_naming_degrees() {
        let text = "ring Z\ncomplex C { 0: rank 1  1: rank 1  2: rank 1 \
                    d 1: [[1]] d 2: [[1]] }";
        let err = parse(text).unwrap_err();
        match err {
            ParseError::Shape { message, .. } => {
                assert!(message.contains('2') && message.contains('0'), "{message}");
            }
            other => panic!("expected a shape error, got {other}"),
        }
    }

    #[test]
    fn undefined_names_are_resolution_errors() {
        let err = parse("ring Z\ncmd homology C 0 0").unwrap_err();
        assert!(matches!(err, ParseError::Resolution { .. }));
    }

    #[test]
    fn round_trip_is_identity() {
        let text = "ring Z\n\
                    complex C { 0: rank 1  1: rank 1  d 1: [[2]] }\n\
                    complex Zero { }\n\
                    map f : C -> C { 0: [[1]], 1: [[1]] }\n\
                    category Span { objects a, b, c\n\
                      morphism u : c -> a\n\
                      morphism v : c -> b }\n\
                    diagram F : Span { a => Zero, b => C, c => C, u => 0, v => f }\n\
                    sset K = boundary(2)\n\
                    cmd hocolim F 0 3\n";
        let m = parse(text).unwrap();
        let again = parse(&m.to_dsl()).unwrap();
        assert_eq!(m, again);
        let third = parse(&again.to_dsl()).unwrap();
        assert_eq!(again, third);
    }

    #[test]
    fn prime_field_ring_parses_and_validates() {
        assert!(parse("ring F5").unwrap().ring == Some(Ring::PrimeField(5)));
        assert!(matches!(parse("ring F6"), Err(ParseError::Shape { .. })));
    }

    #[test]
    fn rational_entries_parse() {
        let m = parse("ring Q\ncomplex C { 0: rank 1  1: rank 1  d 1: [[1/2]] }").unwrap();
        let d = m.complexes["C"].differential(1);
        assert_eq!(d.entry(0, 0), &BigRational::new(1.into(), 2.into()));
    }
}
