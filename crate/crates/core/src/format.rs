//! Text syntax for polynomials, matrices, group entries, forms and dataset
//! files, with printers that round-trip exactly.
//!
//! ```text
//! # comment
//! [ring]
//! dim = 2
//! vars = x1, x2
//! [crossed]
//! instance = INNER
//! size = 2
//! [cover]
//! n = 3
//! [lambda 0 1]
//! {mat = [[1, x1], [0, 1]], inv = [[1, -x1], [0, 1]]}
//! [m 0]
//! deg=1 side=A {(1): [[0, 1], [0, 0]]}
//! ```
//!
//! Cover indices in section headers are 0-based; coordinate indices inside
//! forms are 1-based. Entries left out of a present group of sections
//! default to the identity (group entries) or zero (forms).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cech::{
    BundleData, Cochain, CoboundaryData, ConnectionData, CurvingData, DerivedCurving, GerbeCocycle,
};
use crate::crossed::{CrossedModule, GroupMap, InstanceKind};
use crate::error::{Error, Result};
use crate::forms::{LieForm, Side};
use crate::matrix::PolyMatrix;
use crate::poly::{default_vars, Monomial, Poly};
use crate::ring::Rat;

/// Upper bounds enforced while parsing, so hostile input cannot demand
/// unbounded work.
pub const MAX_DIM: usize = 12;
pub const MAX_SIZE: usize = 8;
pub const MAX_COVER: usize = 8;
pub const MAX_EXPONENT: u32 = 255;
pub const MAX_DIGITS: usize = 200;

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src, pos: 0, line: 1, col: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips blanks, newlines and `#` comments.
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Skips blanks and comments but stops at a newline.
    fn skip_inline(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c != '\n' && c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn error(&self, message: impl Into<String>, expected: &[&str]) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.col,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("unexpected `{c}`"),
            None => "unexpected end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            let want = format!("`{c}`");
            Err(self.error(self.found(), &[want.as_str()]))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.error(self.found(), &["identifier"])),
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error(self.found(), &["integer"]));
        }
        let s = &self.src[start..self.pos];
        if s.len() > MAX_DIGITS {
            return Err(self.error(format!("integer longer than {MAX_DIGITS} digits"), &[]));
        }
        Ok(s)
    }

    fn small_int(&mut self, max: usize) -> Result<usize> {
        let s = self.digits()?;
        match s.parse::<usize>() {
            Ok(v) if v <= max => Ok(v),
            _ => Err(self.error(format!("integer {s} exceeds {max}"), &[])),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            for _ in kw.chars() {
                self.bump();
            }
            Ok(())
        } else {
            let want = format!("`{kw}`");
            Err(self.error(self.found(), &[want.as_str()]))
        }
    }
}

fn parse_term(s: &mut Scanner, vars: &[String]) -> Result<Poly> {
    let dim = vars.len();
    let mut coeff = Rat::one();
    let mut exps = vec![0u16; dim];
    loop {
        s.skip_ws();
        match s.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = s.digits()?.parse().expect("digits");
                let mut r = Rat::from_integer(num);
                if s.eat('/') {
                    let den: BigInt = s.digits()?.parse().expect("digits");
                    if den.is_zero() {
                        return Err(s.error("zero denominator", &[]));
                    }
                    r /= Rat::from_integer(den);
                }
                coeff *= r;
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let (line, col) = (s.line, s.col);
                let name = s.ident()?;
                let Some(v) = vars.iter().position(|x| *x == name) else {
                    return Err(Error::Syntax {
                        line,
                        column: col,
                        message: format!("unknown variable `{name}`"),
                        expected: vars.to_vec(),
                    });
                };
                let mut e = 1u32;
                if s.eat('^') {
                    e = s.small_int(MAX_EXPONENT as usize)? as u32;
                }
                let total = exps[v] as u32 + e;
                if total > MAX_EXPONENT {
                    return Err(s.error(format!("exponent exceeds {MAX_EXPONENT}"), &[]));
                }
                exps[v] = total as u16;
            }
            _ => return Err(s.error(s.found(), &["number", "variable"])),
        }
        if !s.eat('*') {
            break;
        }
    }
    Ok(Poly::term(dim, Monomial::from_exponents(&exps), coeff))
}

fn parse_poly_at(s: &mut Scanner, vars: &[String]) -> Result<Poly> {
    let dim = vars.len();
    let mut acc = Poly::zero(dim);
    let mut negate = false;
    s.skip_ws();
    if s.peek() == Some('-') {
        s.bump();
        negate = true;
    } else if s.peek() == Some('+') {
        s.bump();
    }
    loop {
        let t = parse_term(s, vars)?;
        acc = if negate { &acc - &t } else { &acc + &t };
        s.skip_ws();
        match s.peek() {
            Some('+') => negate = false,
            Some('-') => negate = true,
            _ => break,
        }
        s.bump();
    }
    Ok(acc)
}

fn finish<T>(mut s: Scanner, v: T) -> Result<T> {
    if !s.at_end() {
        return Err(s.error(s.found(), &["end of input"]));
    }
    Ok(v)
}

/// Parses `3/2*x1^2*x2 - x3 + 1` over the given variable names.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Poly> {
    let mut s = Scanner::new(text);
    let p = parse_poly_at(&mut s, vars)?;
    finish(s, p)
}

fn parse_matrix_at(s: &mut Scanner, vars: &[String]) -> Result<PolyMatrix> {
    let (line, col) = {
        s.skip_ws();
        (s.line, s.col)
    };
    s.expect('[')?;
    let mut rows = Vec::new();
    loop {
        s.expect('[')?;
        let mut row = Vec::new();
        loop {
            row.push(parse_poly_at(s, vars)?);
            if row.len() > MAX_SIZE {
                return Err(s.error(format!("more than {MAX_SIZE} columns"), &[]));
            }
            if !s.eat(',') {
                break;
            }
        }
        s.expect(']')?;
        rows.push(row);
        if rows.len() > MAX_SIZE {
            return Err(s.error(format!("more than {MAX_SIZE} rows"), &[]));
        }
        if !s.eat(',') {
            break;
        }
    }
    s.expect(']')?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Syntax {
            line,
            column: col,
            message: "matrix is not square".to_string(),
            expected: vec![],
        });
    }
    Ok(PolyMatrix::from_rows(rows).expect("nonempty square rows"))
}

/// Parses `[[p11, p12], [p21, p22]]`; matrices must be square.
pub fn parse_matrix(text: &str, vars: &[String]) -> Result<PolyMatrix> {
    let mut s = Scanner::new(text);
    let m = parse_matrix_at(&mut s, vars)?;
    finish(s, m)
}

/// A group entry before its inverse is validated.
struct RawGroup {
    mat: Option<PolyMatrix>,
    inv: Option<PolyMatrix>,
}

fn parse_group_at(s: &mut Scanner, vars: &[String]) -> Result<RawGroup> {
    s.expect('{')?;
    let mut g = RawGroup { mat: None, inv: None };
    if s.eat('}') {
        return Ok(g);
    }
    loop {
        let key = s.ident()?;
        s.expect('=')?;
        let m = parse_matrix_at(s, vars)?;
        let slot = match key.as_str() {
            "mat" => &mut g.mat,
            "inv" => &mut g.inv,
            _ => return Err(s.error(format!("unknown key `{key}`"), &["mat", "inv"])),
        };
        if slot.replace(m).is_some() {
            return Err(s.error(format!("duplicate key `{key}`"), &[]));
        }
        if !s.eat(',') {
            break;
        }
    }
    s.expect('}')?;
    Ok(g)
}

fn validate_group(g: RawGroup, section: &str) -> Result<GroupMap> {
    let sem = |message: &str| Error::Semantic { section: section.to_string(), message: message.to_string() };
    let mat = g.mat.ok_or_else(|| sem("group entry is missing `mat`"))?;
    let inv = g.inv.ok_or_else(|| sem("group entry is missing `inv`"))?;
    if mat.rows() != inv.rows() {
        return Err(sem("`mat` and `inv` have different sizes"));
    }
    GroupMap::new(mat, inv).map_err(|_| sem("`inv` is not the inverse of `mat`"))
}

/// Parses `{mat = [[..]], inv = [[..]]}` and checks `mat · inv = I`.
pub fn parse_group(text: &str, vars: &[String]) -> Result<GroupMap> {
    let mut s = Scanner::new(text);
    let g = parse_group_at(&mut s, vars)?;
    let g = finish(s, g)?;
    validate_group(g, "group")
}

fn parse_form_at(s: &mut Scanner, vars: &[String]) -> Result<LieForm> {
    let dim = vars.len();
    s.keyword("deg")?;
    s.expect('=')?;
    // Degree above the dimension is allowed so that zero 3-forms on a
    // 2-chart still print and parse.
    let degree = s.small_int(dim.max(3))?;
    if degree == 0 {
        return Err(s.error("form degree must be at least 1", &[]));
    }
    s.keyword("side")?;
    s.expect('=')?;
    let side = match s.ident()?.as_str() {
        "H" => Side::H,
        "A" => Side::A,
        other => return Err(s.error(format!("unknown side `{other}`"), &["H", "A"])),
    };
    s.expect('{')?;
    let mut terms: Vec<(Vec<usize>, PolyMatrix)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut size = None;
    if !s.eat('}') {
        loop {
            s.skip_ws();
            let (line, col) = (s.line, s.col);
            s.expect('(')?;
            let mut idx = Vec::new();
            loop {
                let a = s.small_int(dim)?;
                if a == 0 {
                    return Err(s.error("coordinate indices start at 1", &[]));
                }
                idx.push(a - 1);
                if !s.eat(',') {
                    break;
                }
            }
            s.expect(')')?;
            let at = |message: &str| Error::Syntax {
                line,
                column: col,
                message: message.to_string(),
                expected: vec![],
            };
            if idx.len() != degree {
                return Err(at("index tuple length differs from the degree"));
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(at("index tuple must be strictly increasing"));
            }
            if !seen.insert(idx.clone()) {
                return Err(at("duplicate index tuple"));
            }
            s.expect(':')?;
            let m = parse_matrix_at(s, vars)?;
            if *size.get_or_insert(m.rows()) != m.rows() {
                return Err(at("coefficient matrices differ in size"));
            }
            terms.push((idx, m));
            if !s.eat(',') {
                break;
            }
        }
        s.expect('}')?;
    }
    // An empty form carries no size; callers fix it from context.
    LieForm::from_terms(degree, dim, size.unwrap_or(0), side, terms)
}

/// Parses `deg=2 side=H {(1,2): [[..]], ...}`. The size of an empty form
/// is 0 until placed in a context that fixes it.
pub fn parse_form(text: &str, vars: &[String]) -> Result<LieForm> {
    let mut s = Scanner::new(text);
    let f = parse_form_at(&mut s, vars)?;
    finish(s, f)
}

/// Variable names and chart dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub dim: usize,
    pub vars: Vec<String>,
}

/// A parsed dataset file. Each group of data is present iff at least one of
/// its sections appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub ring: RingSpec,
    pub instance: InstanceKind,
    pub size: usize,
    pub cover: usize,
    pub cocycle: Option<GerbeCocycle>,
    pub connection: Option<ConnectionData>,
    pub curving: Option<CurvingData>,
    pub derived: Option<DerivedCurving>,
    pub coboundary: Option<CoboundaryData>,
    pub bundle: Option<BundleData>,
}

impl Dataset {
    pub fn new(ring: RingSpec, instance: InstanceKind, size: usize, cover: usize) -> Self {
        Dataset {
            ring,
            instance,
            size,
            cover,
            cocycle: None,
            connection: None,
            curving: None,
            derived: None,
            coboundary: None,
            bundle: None,
        }
    }

    pub fn crossed_module(&self) -> Box<dyn CrossedModule> {
        self.instance.build(self.size)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Group {
    Cocycle,
    Connection,
    Curving,
    Derived,
    Coboundary,
    Bundle,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    /// Group-valued; `true` for `A`-valued entries.
    Grp(bool),
    /// Form of the given degree and side.
    Form(usize, Side),
}

struct SectionSpec {
    name: &'static str,
    arity: usize,
    kind: Kind,
    group: Group,
}

const SECTIONS: &[SectionSpec] = &[
    SectionSpec { name: "lambda", arity: 2, kind: Kind::Grp(true), group: Group::Cocycle },
    SectionSpec { name: "g", arity: 3, kind: Kind::Grp(false), group: Group::Cocycle },
    SectionSpec { name: "m", arity: 1, kind: Kind::Form(1, Side::A), group: Group::Connection },
    SectionSpec { name: "gamma", arity: 2, kind: Kind::Form(1, Side::H), group: Group::Connection },
    SectionSpec { name: "B", arity: 1, kind: Kind::Form(2, Side::H), group: Group::Curving },
    SectionSpec { name: "nu", arity: 1, kind: Kind::Form(2, Side::A), group: Group::Derived },
    SectionSpec { name: "delta", arity: 2, kind: Kind::Form(2, Side::H), group: Group::Derived },
    SectionSpec { name: "omega3", arity: 1, kind: Kind::Form(3, Side::H), group: Group::Derived },
    SectionSpec { name: "r", arity: 1, kind: Kind::Grp(true), group: Group::Coboundary },
    SectionSpec { name: "theta", arity: 2, kind: Kind::Grp(false), group: Group::Coboundary },
    SectionSpec { name: "e", arity: 1, kind: Kind::Form(1, Side::H), group: Group::Coboundary },
    SectionSpec { name: "n", arity: 1, kind: Kind::Form(2, Side::H), group: Group::Coboundary },
    SectionSpec { name: "g1", arity: 2, kind: Kind::Grp(false), group: Group::Bundle },
    SectionSpec { name: "omega1", arity: 1, kind: Kind::Form(1, Side::H), group: Group::Bundle },
];

enum Value {
    Grp(GroupMap),
    Form(LieForm),
}

fn section_label(name: &str, idx: &[usize]) -> String {
    let mut s = name.to_string();
    for i in idx {
        s.push(' ');
        s.push_str(&i.to_string());
    }
    s
}

#[derive(Default)]
struct Header {
    ring: Option<RingSpec>,
    instance: Option<InstanceKind>,
    size: Option<usize>,
    cover: Option<usize>,
}

fn parse_key_values(s: &mut Scanner, section: &str, mut f: impl FnMut(&mut Scanner, &str) -> Result<()>) -> Result<()> {
    loop {
        s.skip_ws();
        match s.peek() {
            None | Some('[') => return Ok(()),
            _ => {}
        }
        let key = s.ident()?;
        s.expect('=')?;
        f(s, &key).map_err(|e| match e {
            Error::Semantic { message, .. } => Error::Semantic { section: section.to_string(), message },
            other => other,
        })?;
        s.skip_inline();
        if !matches!(s.peek(), None | Some('\n')) {
            return Err(s.error(s.found(), &["end of line"]));
        }
    }
}

fn semantic(section: &str, message: impl Into<String>) -> Error {
    Error::Semantic { section: section.to_string(), message: message.into() }
}

fn parse_header_section(s: &mut Scanner, name: &str, h: &mut Header) -> Result<()> {
    match name {
        "ring" => {
            let mut dim = None;
            let mut vars: Option<Vec<String>> = None;
            parse_key_values(s, "ring", |s, key| {
                match key {
                    "dim" => dim = Some(s.small_int(MAX_DIM)?),
                    "vars" => {
                        let mut v = vec![s.ident()?];
                        while {
                            s.skip_inline();
                            s.peek() == Some(',')
                        } {
                            s.bump();
                            v.push(s.ident()?);
                            if v.len() > MAX_DIM {
                                return Err(s.error(format!("more than {MAX_DIM} variables"), &[]));
                            }
                        }
                        vars = Some(v);
                    }
                    _ => return Err(s.error(format!("unknown key `{key}`"), &["dim", "vars"])),
                }
                Ok(())
            })?;
            let dim = dim.ok_or_else(|| semantic("ring", "missing `dim`"))?;
            if dim == 0 {
                return Err(semantic("ring", "`dim` must be positive"));
            }
            let vars = vars.unwrap_or_else(|| default_vars(dim));
            if vars.len() != dim {
                return Err(semantic("ring", format!("{} variable names for dim {dim}", vars.len())));
            }
            if vars.iter().collect::<BTreeSet<_>>().len() != dim {
                return Err(semantic("ring", "variable names repeat"));
            }
            h.ring = Some(RingSpec { dim, vars });
        }
        "crossed" => {
            parse_key_values(s, "crossed", |s, key| {
                match key {
                    "instance" => {
                        let tag = s.ident()?;
                        h.instance = Some(InstanceKind::from_tag(&tag).ok_or_else(|| {
                            s.error(format!("unknown instance `{tag}`"), &["INNER", "ABELIAN"])
                        })?);
                    }
                    "size" => h.size = Some(s.small_int(MAX_SIZE)?),
                    _ => return Err(s.error(format!("unknown key `{key}`"), &["instance", "size"])),
                }
                Ok(())
            })?;
            if h.instance.is_none() {
                return Err(semantic("crossed", "missing `instance`"));
            }
            match h.size {
                None => return Err(semantic("crossed", "missing `size`")),
                Some(0) => return Err(semantic("crossed", "`size` must be positive")),
                _ => {}
            }
        }
        "cover" => {
            parse_key_values(s, "cover", |s, key| {
                match key {
                    "n" => h.cover = Some(s.small_int(MAX_COVER)?),
                    _ => return Err(s.error(format!("unknown key `{key}`"), &["n"])),
                }
                Ok(())
            })?;
            match h.cover {
                None => return Err(semantic("cover", "missing `n`")),
                Some(0) => return Err(semantic("cover", "`n` must be positive")),
                _ => {}
            }
        }
        _ => unreachable!(),
    }
    Ok(())
}

/// Parses a dataset file. `[ring]`, `[crossed]` and `[cover]` must come
/// before any cochain section.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let mut s = Scanner::new(text);
    let mut h = Header::default();
    let mut entries: BTreeMap<(usize, Vec<usize>), Value> = BTreeMap::new();
    let mut seen_headers = BTreeSet::new();
    while !s.at_end() {
        let (hline, hcol) = (s.line, s.col);
        s.expect('[')?;
        let name = s.ident()?;
        let mut idx = Vec::new();
        loop {
            s.skip_inline();
            if s.peek().is_some_and(|c| c.is_ascii_digit()) {
                idx.push(s.small_int(MAX_COVER)?);
            } else {
                break;
            }
        }
        s.expect(']')?;
        let label = section_label(&name, &idx);
        if matches!(name.as_str(), "ring" | "crossed" | "cover") {
            if !idx.is_empty() {
                return Err(semantic(&label, "header sections take no indices"));
            }
            if !seen_headers.insert(name.clone()) {
                return Err(semantic(&label, "duplicate section"));
            }
            parse_header_section(&mut s, &name, &mut h)?;
            continue;
        }
        let Some(si) = SECTIONS.iter().position(|sp| sp.name == name) else {
            let mut expected: Vec<&str> = vec!["ring", "crossed", "cover"];
            expected.extend(SECTIONS.iter().map(|sp| sp.name));
            return Err(Error::Syntax {
                line: hline,
                column: hcol,
                message: format!("unknown section `{name}`"),
                expected: expected.into_iter().map(String::from).collect(),
            });
        };
        let spec = &SECTIONS[si];
        let (Some(ring), Some(_), Some(size), Some(cover)) = (&h.ring, h.instance, h.size, h.cover) else {
            return Err(semantic(&label, "[ring], [crossed] and [cover] must come first"));
        };
        if idx.len() != spec.arity {
            return Err(semantic(&label, format!("expected {} indices", spec.arity)));
        }
        if let Some(i) = idx.iter().find(|&&i| i >= cover) {
            return Err(semantic(&label, format!("index {i} is outside the cover 0..{cover}")));
        }
        let kind = h.instance.expect("checked").build(size);
        let value = match spec.kind {
            Kind::Grp(on_a) => {
                let g = validate_group(parse_group_at(&mut s, &ring.vars)?, &label)?;
                let want = if on_a { kind.a_size() } else { kind.h_size() };
                if g.size() != want {
                    return Err(semantic(&label, format!("expected a {want}x{want} entry, got {}x{}", g.size(), g.size())));
                }
                Value::Grp(g)
            }
            Kind::Form(deg, side) => {
                let f = parse_form_at(&mut s, &ring.vars)?;
                let want = if side == Side::A { kind.a_size() } else { kind.h_size() };
                if f.degree() != deg {
                    return Err(semantic(&label, format!("expected degree {deg}, got {}", f.degree())));
                }
                if f.side() != side {
                    return Err(semantic(&label, format!("expected side {side}, got {}", f.side())));
                }
                let f = if f.is_zero() { LieForm::zero(deg, ring.dim, want, side) } else { f };
                if f.size() != want {
                    return Err(semantic(&label, format!("expected {want}x{want} coefficients, got {}x{}", f.size(), f.size())));
                }
                Value::Form(f)
            }
        };
        if entries.insert((si, idx), value).is_some() {
            return Err(semantic(&label, "duplicate section"));
        }
    }
    let ring = h.ring.ok_or_else(|| semantic("ring", "missing section"))?;
    let instance = h.instance.ok_or_else(|| semantic("crossed", "missing section"))?;
    let size = h.size.expect("set with instance");
    let cover = h.cover.ok_or_else(|| semantic("cover", "missing section"))?;
    let mut ds = Dataset::new(ring, instance, size, cover);
    assemble(&mut ds, entries);
    Ok(ds)
}

fn assemble(ds: &mut Dataset, mut entries: BTreeMap<(usize, Vec<usize>), Value>) {
    let cm = ds.crossed_module();
    let (n, dim) = (ds.cover, ds.ring.dim);
    let present: BTreeSet<Group> = entries.keys().map(|(si, _)| SECTIONS[*si].group).collect();
    let mut grp = |name: &str| -> Cochain<GroupMap> {
        let si = SECTIONS.iter().position(|sp| sp.name == name).expect("known section");
        let spec = &SECTIONS[si];
        let k = match spec.kind {
            Kind::Grp(true) => cm.a_size(),
            _ => cm.h_size(),
        };
        Cochain::from_fn(n, spec.arity, |t| match entries.remove(&(si, t.to_vec())) {
            Some(Value::Grp(g)) => g,
            _ => GroupMap::identity(k, dim),
        })
    };
    let cocycle = present.contains(&Group::Cocycle).then(|| GerbeCocycle { lambda: grp("lambda"), g: grp("g") });
    let cob_groups = present.contains(&Group::Coboundary).then(|| (grp("r"), grp("theta")));
    let bundle_g = present.contains(&Group::Bundle).then(|| grp("g1"));
    let mut form = |name: &str| -> Cochain<LieForm> {
        let si = SECTIONS.iter().position(|sp| sp.name == name).expect("known section");
        let spec = &SECTIONS[si];
        let Kind::Form(deg, side) = spec.kind else { unreachable!() };
        let k = if side == Side::A { cm.a_size() } else { cm.h_size() };
        Cochain::from_fn(n, spec.arity, |t| match entries.remove(&(si, t.to_vec())) {
            Some(Value::Form(f)) => f,
            _ => LieForm::zero(deg, dim, k, side),
        })
    };
    ds.cocycle = cocycle;
    ds.connection = present
        .contains(&Group::Connection)
        .then(|| ConnectionData { m: form("m"), gamma: form("gamma") });
    ds.curving = present.contains(&Group::Curving).then(|| CurvingData { b: form("B") });
    ds.derived = present
        .contains(&Group::Derived)
        .then(|| DerivedCurving { nu: form("nu"), delta: form("delta"), omega3: form("omega3") });
    ds.coboundary = cob_groups.map(|(r, theta)| CoboundaryData { r, theta, e: form("e"), n: form("n") });
    ds.bundle = bundle_g.map(|g1| BundleData { g1, omega1: form("omega1") });
}

/// `{mat = [[..]], inv = [[..]]}`.
pub fn print_group(g: &GroupMap, vars: &[String]) -> String {
    format!("{{mat = {}, inv = {}}}", g.mat().to_string_with(vars), g.inv_mat().to_string_with(vars))
}

/// Canonical text of a dataset; `parse_dataset` inverts it.
pub fn print_dataset(ds: &Dataset) -> String {
    let vars = &ds.ring.vars;
    let mut out = String::new();
    out.push_str(&format!("[ring]\ndim = {}\nvars = {}\n\n", ds.ring.dim, vars.join(", ")));
    out.push_str(&format!("[crossed]\ninstance = {}\nsize = {}\n\n", ds.instance.tag(), ds.size));
    out.push_str(&format!("[cover]\nn = {}\n", ds.cover));
    let mut grp = |name: &str, c: &Cochain<GroupMap>| {
        for (t, g) in c.iter() {
            out.push_str(&format!("\n[{}]\n{}\n", section_label(name, &t), print_group(g, vars)));
        }
    };
    if let Some(c) = &ds.cocycle {
        grp("lambda", &c.lambda);
        grp("g", &c.g);
    }
    if let Some(cb) = &ds.coboundary {
        grp("r", &cb.r);
        grp("theta", &cb.theta);
    }
    if let Some(b) = &ds.bundle {
        grp("g1", &b.g1);
    }
    let mut form = |name: &str, c: &Cochain<LieForm>| {
        for (t, f) in c.iter() {
            out.push_str(&format!("\n[{}]\n{}\n", section_label(name, &t), f.to_string_with(vars)));
        }
    };
    if let Some(c) = &ds.connection {
        form("m", &c.m);
        form("gamma", &c.gamma);
    }
    if let Some(c) = &ds.curving {
        form("B", &c.b);
    }
    if let Some(d) = &ds.derived {
        form("nu", &d.nu);
        form("delta", &d.delta);
        form("omega3", &d.omega3);
    }
    if let Some(cb) = &ds.coboundary {
        form("e", &cb.e);
        form("n", &cb.n);
    }
    if let Some(b) = &ds.bundle {
        form("omega1", &b.omega1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn vars(d: usize) -> Vec<String> {
        default_vars(d)
    }

    #[test]
    fn poly_round_trip() {
        let v = vars(3);
        let p = parse_poly("3/2*x1^2*x2 - x3 + 1", &v).unwrap();
        assert_eq!(p.to_string_with(&v), "3/2*x1^2*x2 - x3 + 1");
        assert_eq!(parse_poly(&p.to_string_with(&v), &v).unwrap(), p);
        assert_eq!(parse_poly("2*x1*x1", &v).unwrap(), parse_poly("2*x1^2", &v).unwrap());
        assert_eq!(parse_poly("-1/2", &v).unwrap(), Poly::constant(3, rat(-1, 2)));
        assert!(parse_poly("0", &v).unwrap().is_zero());
    }

    #[test]
    fn poly_errors_have_positions() {
        let v = vars(2);
        match parse_poly("x1 + x3", &v).unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (1, 6)),
            e => panic!("{e}"),
        }
        assert!(parse_poly("x1 +", &v).is_err());
        assert!(parse_poly("1/0", &v).is_err());
        assert!(parse_poly("x1^999", &v).is_err());
        assert!(parse_poly("", &v).is_err());
    }

    #[test]
    fn matrix_and_group() {
        let v = vars(2);
        let m = parse_matrix("[[1, x1], [0, 1]]", &v).unwrap();
        assert_eq!(m.to_string_with(&v), "[[1, x1], [0, 1]]");
        assert!(parse_matrix("[[1, 2]]", &v).is_err());
        let g = parse_group("{mat = [[1, x1], [0, 1]], inv = [[1, -x1], [0, 1]]}", &v).unwrap();
        assert_eq!(parse_group(&print_group(&g, &v), &v).unwrap(), g);
        assert!(parse_group("{mat = [[1, x1], [0, 1]], inv = [[1, x1], [0, 1]]}", &v).is_err());
    }

    #[test]
    fn form_round_trip() {
        let v = vars(3);
        let f = parse_form("deg=2 side=H {(1,2): [[0, x2], [0, 0]], (2,3): [[1, 0], [0, -1]]}", &v).unwrap();
        assert_eq!(parse_form(&f.to_string(), &v).unwrap(), f);
        assert!(parse_form("deg=2 side=H {(2,1): [[1]]}", &v).is_err());
        assert!(parse_form("deg=2 side=H {(1,2): [[1]], (1,2): [[2]]}", &v).is_err());
        assert!(parse_form("deg=1 side=X {}", &v).is_err());
    }

    const MINIMAL: &str = "\
# three charts, trivial data
[ring]
dim = 2
[crossed]
instance = INNER
size = 2
[cover]
n = 3
[lambda 0 1]
{mat = [[1, 0], [0, 1]], inv = [[1, 0], [0, 1]]}
[m 1]
deg=1 side=A {}
";

    #[test]
    fn minimal_dataset_round_trips() {
        let ds = parse_dataset(MINIMAL).unwrap();
        assert!(ds.cocycle.is_some() && ds.connection.is_some() && ds.curving.is_none());
        let text = print_dataset(&ds);
        assert_eq!(parse_dataset(&text).unwrap(), ds);
        assert_eq!(print_dataset(&parse_dataset(&text).unwrap()), text);
    }

    #[test]
    fn missing_inverse_names_section() {
        let text = MINIMAL.replace(", inv = [[1, 0], [0, 1]]", "");
        match parse_dataset(&text).unwrap_err() {
            Error::Semantic { section, message } => {
                assert_eq!(section, "lambda 0 1");
                assert!(message.contains("inv"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn semantic_errors() {
        let bad_index = MINIMAL.replace("[lambda 0 1]", "[lambda 0 3]");
        assert!(matches!(parse_dataset(&bad_index), Err(Error::Semantic { .. })));
        let bad_side = MINIMAL.replace("side=A", "side=H");
        assert!(matches!(parse_dataset(&bad_side), Err(Error::Semantic { .. })));
        let dup = format!("{MINIMAL}[m 1]\ndeg=1 side=A {{}}\n");
        assert!(matches!(parse_dataset(&dup), Err(Error::Semantic { .. })));
        let early = "[m 0]\ndeg=1 side=A {}\n";
        assert!(matches!(parse_dataset(early), Err(Error::Semantic { .. })));
    }

    #[test]
    fn syntax_errors() {
        let text = MINIMAL.replace("[[1, 0], [0, 1]], inv", "[[1, 0], [0, 1], inv");
        match parse_dataset(&text).unwrap_err() {
            Error::Syntax { line, .. } => assert_eq!(line, 10),
            e => panic!("{e}"),
        }
        assert!(matches!(parse_dataset("[bogus]"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_dataset("[ring]\ndim = 2 3\n"), Err(Error::Syntax { .. })));
    }
}
