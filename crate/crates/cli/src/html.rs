//! Static HTML board diagrams for a solution file.

use std::fmt::Write;

use crate::solution::SolutionFile;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One page: a grid per solution with row 1 at the bottom, anchored as
/// `#solution-N`.
pub fn render(file: &SolutionFile) -> String {
    let mut out = String::new();
    let title = format!("{}x{} with {} queens", file.m, file.n, file.gamma);
    let _ = write!(
        out,
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>{t}</title>\n<style>\
         table.b{{border-collapse:collapse;margin:0.5em 0}}\
         table.b td{{width:1.4em;height:1.4em;text-align:center;padding:0}}\
         td.l{{background:#eeeed2}}td.d{{background:#769656}}\
         </style></head><body>\n<h1>{t}</h1>\n<p>status: {s}; {c} solutions; generator: {g}</p>\n",
        t = title,
        s = file.status,
        c = file.solutions.len(),
        g = escape(&file.generator),
    );
    for (i, rec) in file.solutions.iter().enumerate() {
        let _ = write!(out, "<h2 id=\"solution-{0}\">Solution {0}</h2>\n<p>symmetry: {1}", i + 1, escape(&rec.symmetry));
        if !rec.foursomes.is_empty() {
            let _ = write!(out, "; {} foursome(s)", rec.foursomes.len());
        }
        if let Some(o) = rec.tags.zero_cover {
            let _ = write!(out, "; 0-cover, origin parity ({}, {})", o[0], o[1]);
        }
        if let Some(t) = rec.tags.centrally_strong {
            let strict = if rec.tags.strict { "strict " } else { "" };
            let _ = write!(out, "; {strict}centrally strong ({}, {}, {})", t.m1, t.n1, t.k);
        }
        out.push_str("</p>\n<table class=\"b\">\n");
        for y in (1..=file.m as i32).rev() {
            out.push_str("<tr>");
            for x in 1..=file.n as i32 {
                let class = if (x + y) % 2 == 0 { "d" } else { "l" };
                let glyph = if rec.queens.contains(&[x, y]) { "&#9819;" } else { "" };
                let _ = write!(out, "<td class=\"{class}\">{glyph}</td>");
            }
            out.push_str("</tr>\n");
        }
        out.push_str("</table>\n");
    }
    out.push_str("</body></html>\n");
    out
}
