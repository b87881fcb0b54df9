//! JSON web files.
//!
//! ```json
//! {
//!   "boundary": ["+", "-"],
//!   "vertices": [{"id": 0, "polarity": "source"}],
//!   "edges": [{"id": 0, "tail": "v0", "head": "b1"}],
//!   "rotation": [{"vertex": 0, "edges": ["0t", "1t", "2t"]}],
//!   "loops": 0
//! }
//! ```
//!
//! Endpoints are `v<k>` (vertex), `b<k>` (boundary point of an ε-web, i.e.
//! a top point) or `d<k>` (bottom point of a general tangle, listed in the
//! optional `bottom` field). Rotation entries are edge ids suffixed by the
//! end sitting at the vertex (`t` tail, `h` head), counter-clockwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Edge, End, Endpoint, Polarity, Web, WebError};
use crate::signs::{Sign, SignSequence};

#[derive(Debug, Error)]
pub enum WebFileError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: {message}")]
    Field { context: String, message: String },
    #[error("invalid web: {0}")]
    Web(#[from] WebError),
}

fn field_err(context: impl Into<String>, message: impl Into<String>) -> WebFileError {
    WebFileError::Field {
        context: context.into(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WebFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bottom: Vec<String>,
    boundary: Vec<String>,
    vertices: Vec<VertexEntry>,
    edges: Vec<EdgeEntry>,
    rotation: Vec<RotationEntry>,
    loops: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: usize,
    polarity: Polarity,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    id: usize,
    tail: String,
    head: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RotationEntry {
    vertex: usize,
    edges: Vec<String>,
}

fn parse_signs(list: &[String], context: &str) -> Result<SignSequence, WebFileError> {
    list.iter()
        .enumerate()
        .map(|(i, s)| {
            let mut chars = s.chars();
            match (chars.next().and_then(Sign::from_char), chars.next()) {
                (Some(sign), None) => Ok(sign),
                _ => Err(field_err(
                    format!("{context}[{i}]"),
                    format!("expected \"+\" or \"-\", found {s:?}"),
                )),
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(SignSequence::new)
}

fn parse_endpoint(s: &str, context: &str) -> Result<Endpoint, WebFileError> {
    let bad = || {
        field_err(
            context,
            format!("bad endpoint {s:?} (expected v<k>, b<k> or d<k>)"),
        )
    };
    let (kind, rest) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
    let k: usize = rest.parse().map_err(|_| bad())?;
    match kind {
        "v" => Ok(Endpoint::Vertex(k)),
        "b" => Ok(Endpoint::Top(k)),
        "d" => Ok(Endpoint::Bottom(k)),
        _ => Err(bad()),
    }
}

fn render_endpoint(p: Endpoint) -> String {
    match p {
        Endpoint::Vertex(k) => format!("v{k}"),
        Endpoint::Top(k) => format!("b{k}"),
        Endpoint::Bottom(k) => format!("d{k}"),
    }
}

/// Parse a web file. Errors carry the JSON position or the offending field.
pub fn parse_web(text: &str) -> Result<Web, WebFileError> {
    let file: WebFile = serde_json::from_str(text)?;
    let bottom = parse_signs(&file.bottom, "bottom")?;
    let top = parse_signs(&file.boundary, "boundary")?;
    let mut polarity = Vec::with_capacity(file.vertices.len());
    for (i, v) in file.vertices.iter().enumerate() {
        if v.id != i {
            return Err(field_err(
                format!("vertices[{i}]"),
                format!("ids must be 0,1,2,... in order, found {}", v.id),
            ));
        }
        polarity.push(v.polarity);
    }
    let mut edges = Vec::with_capacity(file.edges.len());
    for (i, e) in file.edges.iter().enumerate() {
        if e.id != i {
            return Err(field_err(
                format!("edges[{i}]"),
                format!("ids must be 0,1,2,... in order, found {}", e.id),
            ));
        }
        let ctx = format!("edges[{i}]");
        edges.push(Edge {
            tail: parse_endpoint(&e.tail, &ctx)?,
            head: parse_endpoint(&e.head, &ctx)?,
        });
    }
    if file.rotation.len() != polarity.len() {
        return Err(field_err(
            "rotation",
            format!(
                "{} entries for {} vertices",
                file.rotation.len(),
                polarity.len()
            ),
        ));
    }
    let mut rotation = Vec::with_capacity(polarity.len());
    for (i, r) in file.rotation.iter().enumerate() {
        let ctx = format!("rotation[{i}]");
        if r.vertex != i {
            return Err(field_err(
                &ctx,
                format!(
                    "entries must follow vertex order, found vertex {}",
                    r.vertex
                ),
            ));
        }
        if r.edges.len() != 3 {
            return Err(field_err(
                &ctx,
                format!("expected 3 edge ends, found {}", r.edges.len()),
            ));
        }
        let mut slots = [0usize; 3];
        for (k, tok) in r.edges.iter().enumerate() {
            let (id, end) = tok.split_at(tok.len().saturating_sub(1));
            let id: usize = id
                .parse()
                .map_err(|_| field_err(&ctx, format!("bad edge end {tok:?}")))?;
            let end = match end {
                "t" => End::Tail,
                "h" => End::Head,
                _ => {
                    return Err(field_err(
                        &ctx,
                        format!("bad edge end {tok:?} (suffix t or h)"),
                    ))
                }
            };
            let at = match (edges.get(id), end) {
                (Some(e), End::Tail) => e.tail,
                (Some(e), End::Head) => e.head,
                (None, _) => return Err(field_err(&ctx, format!("unknown edge {id}"))),
            };
            if at != Endpoint::Vertex(i) {
                return Err(field_err(
                    &ctx,
                    format!("edge end {tok:?} is not at vertex {i}"),
                ));
            }
            slots[k] = id;
        }
        rotation.push(slots);
    }
    Ok(Web::new(
        bottom, top, polarity, edges, rotation, file.loops,
    )?)
}

/// Render a web file. `parse_web(&render_web(w)) == w` exactly.
pub fn render_web(w: &Web) -> String {
    let signs = |s: &SignSequence| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let file = WebFile {
        bottom: signs(w.bottom()),
        boundary: signs(w.top()),
        vertices: w
            .polarities()
            .iter()
            .enumerate()
            .map(|(id, &polarity)| VertexEntry { id, polarity })
            .collect(),
        edges: w
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeEntry {
                id,
                tail: render_endpoint(e.tail),
                head: render_endpoint(e.head),
            })
            .collect(),
        rotation: (0..w.vertex_count())
            .map(|v| RotationEntry {
                vertex: v,
                edges: w
                    .rotation(v)
                    .iter()
                    .map(|&e| {
                        let end = match w.end_at(e, v) {
                            End::Tail => 't',
                            End::Head => 'h',
                        };
                        format!("{e}{end}")
                    })
                    .collect(),
            })
            .collect(),
        loops: w.loop_count(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("web serialisation cannot fail");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn round_trip_small_webs() {
        for w in [
            cap_pm(),
            y_web(),
            theta(),
            circle(),
            Web::identity(&eps("+-+")),
        ] {
            let text = render_web(&w);
            let back = parse_web(&text).unwrap();
            assert_eq!(back, w);
            assert_eq!(render_web(&back), text);
        }
    }

    #[test]
    fn accepts_unicode_minus() {
        let text = r#"{"boundary": ["+", "−"], "vertices": [], "edges": [{"id": 0, "tail": "b1", "head": "b0"}], "rotation": [], "loops": 0}"#;
        assert_eq!(parse_web(text).unwrap(), cap_pm());
    }

    #[test]
    fn errors_are_located() {
        let err = parse_web("{\n  \"boundary\": [\"+\",\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        let text = r#"{"boundary": ["+", "-"], "vertices": [], "edges": [{"id": 0, "tail": "x1", "head": "b0"}], "rotation": [], "loops": 0}"#;
        let err = parse_web(text).unwrap_err();
        assert!(err.to_string().contains("edges[0]"), "{err}");
        let text = r#"{"boundary": ["+", "-"], "vertices": [], "edges": [{"id": 0, "tail": "b0", "head": "b1"}], "rotation": [], "loops": 0}"#;
        assert!(matches!(parse_web(text), Err(WebFileError::Web(_))));
    }
}
