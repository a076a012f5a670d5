use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::MultiPolytope;
use crate::lpcore::{essential_vertices, HullStrategy};
use crate::Result;

/// CSV of the polytope of space `j`. In the plane the essential vertices
/// (with their negatives for symmetrized hulls) are listed by angle so the
/// rows trace the boundary; otherwise all stored points are listed.
pub fn polytope_csv(polytopes: &MultiPolytope, j: usize) -> Result<String> {
    let recs = &polytopes.spaces[j];
    let d = recs.first().map_or(0, |r| r.point.len());
    let mut out = String::new();
    if d == 2 {
        out.push_str("x,y\n");
        let hull = polytopes.hull(j)?;
        let mut pts: Vec<[f64; 2]> =
            essential_vertices(&hull)?.into_iter().map(|k| [recs[k].point[0], recs[k].point[1]]).collect();
        if polytopes.strategy == HullStrategy::Symmetrized {
            let neg: Vec<[f64; 2]> = pts.iter().map(|p| [-p[0], -p[1]]).collect();
            pts.extend(neg);
        }
        pts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
        for p in pts {
            writeln!(out, "{},{}", p[0], p[1]).expect("string write");
        }
    } else {
        let header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in recs {
            let row: Vec<String> = r.point.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    Ok(out)
}

/// Writes one file per space into `dir` (`space_1.csv`, ... or `.json`) and
/// returns the paths.
pub fn write_polytopes(polytopes: &MultiPolytope, dir: &Path, csv: bool) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for j in 0..polytopes.spaces.len() {
        let path = dir.join(format!("space_{}.{}", j + 1, if csv { "csv" } else { "json" }));
        let body = if csv {
            polytope_csv(polytopes, j)?
        } else {
            serde_json::to_string_pretty(&polytopes.spaces[j])? + "\n"
        };
        std::fs::write(&path, body)?;
        paths.push(path);
    }
    Ok(paths)
}
