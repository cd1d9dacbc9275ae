//! The plain-text document format read by the CLI.
//!
//! ```text
//! cubecx 1                # version tag, first non-comment line
//! [pocset]
//! pairs 2
//! 2 0                     # halfspace 2 ⊊ halfspace 0 (the dual relation is implied)
//! [graph]
//! vertices 4
//! 0 1                     # undirected edge
//! [automorphisms]
//! 1 0 3 2                 # image of each halfspace id, one automorphism per line
//! [measure]
//! 0 1/2                   # vertex index and exact weight
//! [tournament]
//! 3                       # vertex count, then one `u v` line per edge u → v
//! 0 1
//! [universe]
//! rays 1
//! tail 0 0 1              # ray, tail for i < 0, tail for i ≥ 0
//! except 0 -5             # toggle membership of (ray, position)
//! element 0 1             # ray permutation (one entry per ray), then one shift per ray
//! ```
//!
//! Blank lines and `#` comments are ignored.

use crate::boundary::{ChainElement, ChainSet, RaySet, UniverseError, ZChainUniverse};
use crate::complex::{from_median_graph, ComplexError};
use crate::measure::MeasureError;
use crate::pocset::{Halfspace, Pocset, PocsetError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("line {line}: syntax error: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("line {line}: unknown section `{name}`")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: id {id} out of range (limit {limit})")]
    IdOutOfRange { line: usize, id: usize, limit: usize },
    #[error("document has no `{0}` section")]
    MissingSection(&'static str),
    #[error("pocset: {0}")]
    Pocset(#[from] PocsetError),
    #[error("complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("measure: {0}")]
    Measure(#[from] MeasureError),
    #[error("universe: {0}")]
    Universe(#[from] UniverseError),
}

/// A parsed document; sections are kept raw until a command needs them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub version: u32,
    /// `(pairs, generating relations (sub, sup))`.
    pub pocset: Option<(usize, Vec<(Halfspace, Halfspace)>)>,
    /// `(vertex count, edges)`.
    pub graph: Option<(usize, Vec<(usize, usize)>)>,
    pub automorphisms: Vec<Vec<Halfspace>>,
    pub measure: Option<Vec<(usize, BigRational)>>,
    /// `(vertex count, directed edges)`.
    pub tournament: Option<(usize, Vec<(usize, usize)>)>,
    pub universe: Option<ZChainUniverse>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Pocset,
    Graph,
    Automorphisms,
    Measure,
    Tournament,
    Universe,
}

fn syntax(line: usize, msg: impl Into<String>) -> DocError {
    DocError::SyntaxError { line, msg: msg.into() }
}

fn ints<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, DocError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| syntax(line, format!("`{t}` is not an integer"))))
        .collect()
}

fn keyword<T: std::str::FromStr>(line: usize, s: &str, key: &str) -> Result<T, DocError> {
    let rest = s.strip_prefix(key).filter(|r| r.starts_with(' ')).ok_or_else(|| syntax(line, format!("expected `{key} <n>`")))?;
    rest.trim().parse().map_err(|_| syntax(line, format!("`{}` is not a count", rest.trim())))
}

fn rational(line: usize, s: &str) -> Result<BigRational, DocError> {
    let bad = || syntax(line, format!("`{s}` is not a rational number"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn parse(text: &str) -> Result<Document, DocError> {
    let mut doc = Document::default();
    let mut section: Option<Section> = None;
    let mut seen_version = false;
    // line numbers of id-bearing lines, checked once all counts are known
    let mut auto_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !seen_version {
            let v = content.strip_prefix("cubecx ").ok_or_else(|| syntax(line, "expected version tag `cubecx 1`"))?;
            doc.version = v.trim().parse().map_err(|_| syntax(line, "version is not an integer"))?;
            if doc.version != FORMAT_VERSION {
                return Err(syntax(line, format!("unsupported version {}", doc.version)));
            }
            seen_version = true;
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let s = match name.trim() {
                "pocset" => Section::Pocset,
                "graph" => Section::Graph,
                "automorphisms" => Section::Automorphisms,
                "measure" => Section::Measure,
                "tournament" => Section::Tournament,
                "universe" => Section::Universe,
                other => return Err(DocError::UnknownSection { line, name: other.to_string() }),
            };
            let duplicate = match s {
                Section::Pocset => doc.pocset.is_some(),
                Section::Graph => doc.graph.is_some(),
                Section::Measure => doc.measure.is_some(),
                Section::Tournament => doc.tournament.is_some(),
                Section::Universe => doc.universe.is_some(),
                Section::Automorphisms => section == Some(Section::Automorphisms) || !doc.automorphisms.is_empty(),
            };
            if duplicate {
                return Err(syntax(line, format!("section `{}` appears twice", name.trim())));
            }
            match s {
                Section::Measure => doc.measure = Some(Vec::new()),
                Section::Universe => {
                    doc.universe = Some(ZChainUniverse { n_rays: 0, set: ChainSet { rays: Vec::new() }, elements: Vec::new() })
                }
                _ => {}
            }
            section = Some(s);
            continue;
        }
        match section {
            None => return Err(syntax(line, "content before the first section")),
            Some(Section::Pocset) => match &mut doc.pocset {
                None => doc.pocset = Some((keyword(line, content, "pairs")?, Vec::new())),
                Some((pairs, rels)) => {
                    let v: Vec<usize> = ints(line, content)?;
                    let [a, b] = v[..] else { return Err(syntax(line, "expected `sub sup`")) };
                    for id in [a, b] {
                        if id >= 2 * *pairs {
                            return Err(DocError::IdOutOfRange { line, id, limit: 2 * *pairs });
                        }
                    }
                    rels.push((a, b));
                }
            },
            Some(Section::Graph) => match &mut doc.graph {
                None => doc.graph = Some((keyword(line, content, "vertices")?, Vec::new())),
                Some((n, edges)) => {
                    let v: Vec<usize> = ints(line, content)?;
                    let [a, b] = v[..] else { return Err(syntax(line, "expected `u v`")) };
                    for id in [a, b] {
                        if id >= *n {
                            return Err(DocError::IdOutOfRange { line, id, limit: *n });
                        }
                    }
                    edges.push((a, b));
                }
            },
            Some(Section::Automorphisms) => {
                doc.automorphisms.push(ints(line, content)?);
                auto_lines.push(line);
            }
            Some(Section::Measure) => {
                let mut parts = content.split_whitespace();
                let (Some(v), Some(w), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(syntax(line, "expected `vertex weight`"));
                };
                let v: usize = v.parse().map_err(|_| syntax(line, format!("`{v}` is not a vertex index")))?;
                doc.measure.as_mut().expect("opened").push((v, rational(line, w)?));
            }
            Some(Section::Tournament) => match &mut doc.tournament {
                None => {
                    let v: Vec<usize> = ints(line, content)?;
                    let [n] = v[..] else { return Err(syntax(line, "expected the vertex count")) };
                    doc.tournament = Some((n, Vec::new()));
                }
                Some((n, edges)) => {
                    let v: Vec<usize> = ints(line, content)?;
                    let [a, b] = v[..] else { return Err(syntax(line, "expected `u v`")) };
                    for id in [a, b] {
                        if id >= *n {
                            return Err(DocError::IdOutOfRange { line, id, limit: *n });
                        }
                    }
                    edges.push((a, b));
                }
            },
            Some(Section::Universe) => parse_universe_line(line, content, doc.universe.as_mut().expect("opened"))?,
        }
    }
    if !seen_version {
        return Err(syntax(1, "missing version tag `cubecx 1`"));
    }

    if let Some(pairs) = doc.pocset.as_ref().map(|p| p.0) {
        for (perm, &line) in doc.automorphisms.iter().zip(&auto_lines) {
            if let Some(&id) = perm.iter().find(|&&id| id >= 2 * pairs) {
                return Err(DocError::IdOutOfRange { line, id, limit: 2 * pairs });
            }
        }
    }
    if let Some(entries) = &doc.measure {
        if let Some(&(vertex, _)) = entries.iter().find(|(_, w)| w.is_negative()) {
            return Err(MeasureError::NegativeWeight { vertex }.into());
        }
        let sum: BigRational = entries.iter().map(|(_, w)| w).sum();
        if !sum.is_one() {
            return Err(MeasureError::SumNotOne { sum: sum.to_string() }.into());
        }
    }
    if let Some(u) = &doc.universe {
        if u.set.rays.is_empty() {
            return Err(DocError::MissingSection("universe rays"));
        }
    }
    Ok(doc)
}

fn parse_universe_line(line: usize, content: &str, u: &mut ZChainUniverse) -> Result<(), DocError> {
    let (key, rest) = content.split_once(' ').unwrap_or((content, ""));
    let need_rays = |u: &ZChainUniverse| if u.n_rays == 0 { Err(syntax(line, "`rays <n>` must come first")) } else { Ok(()) };
    let ray_ok = |u: &ZChainUniverse, r: i64| {
        if r < 0 || r as usize >= u.n_rays {
            Err(DocError::IdOutOfRange { line, id: r.max(0) as usize, limit: u.n_rays })
        } else {
            Ok(r as usize)
        }
    };
    match key {
        "rays" => {
            if u.n_rays != 0 {
                return Err(syntax(line, "`rays` given twice"));
            }
            let n: usize = rest.trim().parse().map_err(|_| syntax(line, "expected `rays <n>`"))?;
            if n == 0 {
                return Err(syntax(line, "a universe needs at least one ray"));
            }
            u.n_rays = n;
            u.set.rays = vec![RaySet::default(); n];
        }
        "tail" => {
            need_rays(u)?;
            let v: Vec<i64> = ints(line, rest)?;
            let [r, neg, pos] = v[..] else { return Err(syntax(line, "expected `tail <ray> <neg 0|1> <pos 0|1>`")) };
            let r = ray_ok(u, r)?;
            if !(0..=1).contains(&neg) || !(0..=1).contains(&pos) {
                return Err(syntax(line, "tail constants must be 0 or 1"));
            }
            u.set.rays[r].neg = neg == 1;
            u.set.rays[r].pos = pos == 1;
        }
        "except" => {
            need_rays(u)?;
            let v: Vec<i64> = ints(line, rest)?;
            let [r, i] = v[..] else { return Err(syntax(line, "expected `except <ray> <position>`")) };
            let r = ray_ok(u, r)?;
            let ex = &mut u.set.rays[r].exceptions;
            if !ex.remove(&i) {
                ex.insert(i);
            }
        }
        "element" => {
            need_rays(u)?;
            let v: Vec<i64> = ints(line, rest)?;
            if v.len() != 2 * u.n_rays {
                return Err(syntax(line, format!("expected {} permutation entries then {} shifts", u.n_rays, u.n_rays)));
            }
            let mut perm = Vec::with_capacity(u.n_rays);
            for &r in &v[..u.n_rays] {
                perm.push(ray_ok(u, r)?);
            }
            u.elements.push(ChainElement::new(perm, v[u.n_rays..].to_vec())?);
        }
        _ => return Err(syntax(line, format!("unknown universe entry `{key}`"))),
    }
    Ok(())
}

impl Document {
    /// The pocset section, or the pocset recovered from the graph section.
    pub fn pocset(&self) -> Result<Pocset, DocError> {
        if let Some((pairs, rels)) = &self.pocset {
            return Ok(Pocset::from_generators(*pairs, rels)?);
        }
        if let Some((n, edges)) = &self.graph {
            return Ok(from_median_graph(*n, edges)?);
        }
        Err(DocError::MissingSection("pocset"))
    }
}

/// A document holding just the pocset, with a reduced generating set.
pub fn pocset_document(p: &Pocset) -> String {
    let mut out = format!("cubecx {FORMAT_VERSION}\n[pocset]\npairs {}\n", p.n_pairs());
    for (a, b) in p.generating_relations() {
        writeln!(out, "{a} {b}").expect("writing to a String");
    }
    out
}

/// Measure lines `vertex num/den` for the nonzero weights.
pub fn measure_section(weights: &[BigRational]) -> String {
    let mut out = String::from("[measure]\n");
    for (v, w) in weights.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
        writeln!(out, "{v} {}/{}", w.numer(), w.denom()).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn minimal_pocset_doc() {
        let doc = parse("cubecx 1\n[pocset]\npairs 2\n2 0\n").unwrap();
        assert_eq!(doc.pocset().unwrap(), generate::path(2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("cubecx 1\n[pocset]\npairs 2\n99 0\n"), Err(DocError::IdOutOfRange { line: 4, id: 99, .. })));
        assert!(matches!(
            parse("cubecx 1\n[measure]\n0 1/2\n1 1/4\n"),
            Err(DocError::Measure(MeasureError::SumNotOne { .. }))
        ));
        assert!(matches!(parse("cubecx 1\n[frobnicate]\n"), Err(DocError::UnknownSection { line: 2, .. })));
        assert!(matches!(parse("[pocset]\n"), Err(DocError::SyntaxError { line: 1, .. })));
        assert!(matches!(parse("cubecx 1\n[pocset]\npairs x\n"), Err(DocError::SyntaxError { line: 3, .. })));
        assert!(matches!(
            parse("cubecx 1\n[pocset]\npairs 1\n[automorphisms]\n0 1 2 3\n"),
            Err(DocError::IdOutOfRange { line: 5, id: 2, .. })
        ));
    }

    #[test]
    fn all_sections() {
        let text = "# sample\ncubecx 1\n[graph]\nvertices 4\n0 1\n1 2\n2 3\n3 0\n[automorphisms]\n1 0 3 2\n\
                    [measure]\n0 1/2\n2 1/2\n[tournament]\n3\n0 1\n1 2\n2 0\n[universe]\nrays 1\ntail 0 0 1\nexcept 0 -5\nelement 0 1\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.pocset().unwrap().n_pairs(), 2);
        assert_eq!(doc.automorphisms, vec![vec![1, 0, 3, 2]]);
        assert_eq!(doc.measure.as_ref().unwrap().len(), 2);
        assert_eq!(doc.tournament.as_ref().unwrap().1.len(), 3);
        let u = doc.universe.unwrap();
        assert_eq!(u.elements.len(), 1);
        assert!(u.set.contains(0, -5) && u.set.contains(0, 3) && !u.set.contains(0, -1));
    }

    #[test]
    fn generated_doc_round_trips() {
        for p in [generate::tripod(2), generate::grid(2, 3), generate::bowtie()] {
            assert_eq!(parse(&pocset_document(&p)).unwrap().pocset().unwrap(), p);
        }
    }
}
