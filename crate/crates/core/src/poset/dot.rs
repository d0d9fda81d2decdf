use std::fmt::{self, Write};

use super::Poset;

impl<T: fmt::Display> Poset<T> {
    /// Renders the Hasse diagram as a DOT digraph.
    ///
    /// Each cover `x ⋖ y` becomes an edge `y -> x` drawn with `dir=back`, so
    /// arrowheads point upward and the minimal elements are the sinks.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph poset {\n");
        out.push_str("  node [shape=plaintext];\n");
        out.push_str("  edge [dir=back];\n");
        for (i, x) in self.elements.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", escape(&x.to_string())).unwrap();
        }
        for (x, y) in self.covers() {
            writeln!(out, "  n{y} -> n{x};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
