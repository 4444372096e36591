use std::fmt::Write;

use gradedpi_core::ElementaryGrading;

/// Complete digraph on `v1..vn`; the arrow `v_p -> v_q` carries `g_q - g_p`,
/// the degree of the matrix unit `e_pq`.
pub fn grading_digraph(g: &ElementaryGrading) -> String {
    let desc = g.descriptor();
    let entries = g.tuple().entries();
    let mut out = String::from("digraph grading {\n");
    for (p, e) in entries.iter().enumerate() {
        writeln!(out, "  v{} [label=\"v{}: {}\"];", p + 1, p + 1, e).unwrap();
    }
    for (p, a) in entries.iter().enumerate() {
        for (q, b) in entries.iter().enumerate() {
            let label = desc.sub(b, a).expect("entries belong to the group");
            writeln!(out, "  v{} -> v{} [label=\"{}\"];", p + 1, q + 1, label).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
