//! Reader for ASCII Gmsh MSH 2.2 files.
//!
//! Only 3-node triangles (element type 2) become cells. 2-node lines (type 1)
//! carrying a physical tag are used to tag boundary edges; every other
//! element type is skipped.

use std::collections::HashMap;
use std::path::Path;

use super::Mesh;
use crate::error::MeshError;
use crate::geometry::Vec2;

const LINE: u32 = 1;
const TRIANGLE: u32 = 2;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            let l = l.trim();
            if !l.is_empty() {
                return Some((i + 1, l));
            }
        }
        None
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str), MeshError> {
        self.next_line().ok_or_else(|| MeshError::Parse {
            line: self.last,
            msg: format!("unexpected end of file, expected {what}"),
        })
    }

    fn expect_exact(&mut self, tag: &str) -> Result<(), MeshError> {
        let (line, l) = self.expect_line(tag)?;
        if l != tag {
            return Err(MeshError::Parse {
                line,
                msg: format!("expected `{tag}`, found `{l}`"),
            });
        }
        Ok(())
    }
}

fn parse<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, MeshError> {
    let tok = tok.ok_or_else(|| MeshError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| MeshError::Parse {
        line,
        msg: format!("invalid {what} `{tok}`"),
    })
}

/// Parses the text of an MSH 2.2 ASCII file.
pub fn parse_gmsh(text: &str) -> Result<Mesh, MeshError> {
    let mut lines = Lines::new(text);
    let mut saw_format = false;
    let mut nodes: Vec<Vec2> = Vec::new();
    let mut node_index: HashMap<i64, usize> = HashMap::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut segments: Vec<([usize; 2], i32)> = Vec::new();

    while let Some((line, l)) = lines.next_line() {
        match l {
            "$MeshFormat" => {
                let (line, fmt) = lines.expect_line("format line")?;
                let mut it = fmt.split_whitespace();
                let version: String = parse(it.next(), line, "version")?;
                if version != "2.2" {
                    return Err(MeshError::UnsupportedVersion { line, version });
                }
                let file_type: u32 = parse(it.next(), line, "file type")?;
                if file_type != 0 {
                    return Err(MeshError::Parse {
                        line,
                        msg: "binary MSH files are not supported".into(),
                    });
                }
                lines.expect_exact("$EndMeshFormat")?;
                saw_format = true;
            }
            "$Nodes" => {
                let (line, count) = lines.expect_line("node count")?;
                let n: usize = parse(Some(count), line, "node count")?;
                nodes.reserve(n);
                for _ in 0..n {
                    let (line, l) = lines.expect_line("node")?;
                    let mut it = l.split_whitespace();
                    let id: i64 = parse(it.next(), line, "node id")?;
                    let x: f64 = parse(it.next(), line, "x coordinate")?;
                    let y: f64 = parse(it.next(), line, "y coordinate")?;
                    if !(x.is_finite() && y.is_finite()) {
                        return Err(MeshError::Parse {
                            line,
                            msg: format!("non-finite coordinates for node {id}"),
                        });
                    }
                    if node_index.insert(id, nodes.len()).is_some() {
                        return Err(MeshError::DuplicateNode { line, id });
                    }
                    nodes.push(Vec2::new(x, y));
                }
                lines.expect_exact("$EndNodes")?;
            }
            "$Elements" => {
                let (line, count) = lines.expect_line("element count")?;
                let n: usize = parse(Some(count), line, "element count")?;
                for _ in 0..n {
                    let (line, l) = lines.expect_line("element")?;
                    let mut it = l.split_whitespace();
                    let _id: i64 = parse(it.next(), line, "element id")?;
                    let ty: u32 = parse(it.next(), line, "element type")?;
                    let ntags: usize = parse(it.next(), line, "tag count")?;
                    let mut physical = None;
                    for t in 0..ntags {
                        let tag: i32 = parse(it.next(), line, "tag")?;
                        if t == 0 {
                            physical = Some(tag);
                        }
                    }
                    let node = |it: &mut std::str::SplitWhitespace| -> Result<usize, MeshError> {
                        let id: i64 = parse(it.next(), line, "node reference")?;
                        node_index
                            .get(&id)
                            .copied()
                            .ok_or(MeshError::UnknownNode { line, id })
                    };
                    match ty {
                        TRIANGLE => {
                            let tri = [node(&mut it)?, node(&mut it)?, node(&mut it)?];
                            triangles.push(tri);
                        }
                        LINE => {
                            let seg = [node(&mut it)?, node(&mut it)?];
                            if let Some(tag) = physical.filter(|&t| t != 0) {
                                segments.push((seg, tag));
                            }
                        }
                        _ => {}
                    }
                }
                lines.expect_exact("$EndElements")?;
            }
            s if s.starts_with("$End") => {
                return Err(MeshError::Parse {
                    line,
                    msg: format!("unmatched `{s}`"),
                });
            }
            s if s.starts_with('$') => {
                // skip sections we do not use ($PhysicalNames, $NodeData, ...)
                let end = format!("$End{}", &s[1..]);
                loop {
                    let (_, l) = lines.expect_line(&end)?;
                    if l == end {
                        break;
                    }
                }
            }
            _ => {
                return Err(MeshError::Parse {
                    line,
                    msg: format!("unexpected content `{l}`"),
                });
            }
        }
    }
    if !saw_format {
        return Err(MeshError::Parse {
            line: 1,
            msg: "missing $MeshFormat section".into(),
        });
    }
    if triangles.is_empty() {
        return Err(MeshError::NoTriangles);
    }

    // keep only nodes referenced by triangles, in file order
    let mut map = vec![usize::MAX; nodes.len()];
    for tri in &triangles {
        for &v in tri {
            map[v] = 0;
        }
    }
    let mut vertices = Vec::new();
    for (old, m) in map.iter_mut().enumerate() {
        if *m == 0 {
            *m = vertices.len();
            vertices.push(nodes[old]);
        }
    }
    let triangles = triangles.into_iter().map(|t| t.map(|v| map[v])).collect();
    let segments: Vec<_> = segments
        .into_iter()
        .filter(|(s, _)| map[s[0]] != usize::MAX && map[s[1]] != usize::MAX)
        .map(|(s, tag)| (s.map(|v| map[v]), tag))
        .collect();
    Mesh::from_tagged_triangles(vertices, triangles, &segments)
}

impl Mesh {
    pub fn load_gmsh(path: impl AsRef<Path>) -> Result<Mesh, MeshError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| MeshError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        parse_gmsh(&text)
    }
}
