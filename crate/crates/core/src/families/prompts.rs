//! Prompt templates with `{{name}}` placeholders.

use super::Hint;

macro_rules! templates {
    ($($name:literal),* $(,)?) => {
        /// Template text for a family; panics for unregistered names.
        pub fn template(family: &str) -> &'static str {
            match family {
                $($name => include_str!(concat!("../../resources/prompts/", $name, ".txt")),)*
                other => panic!("no prompt template for {other}"),
            }
        }
    };
}

templates!(
    "all_interval",
    "antimagic_square",
    "bibd",
    "costas_array",
    "debruijn",
    "golomb",
    "graceful_graph",
    "graph_k_coloring",
    "hadamard",
    "hamilton_cycle",
    "knight_tour",
    "langford",
    "latin_square_completion",
    "low_autocorrelation",
    "magic_sequence",
    "magic_square",
    "max_clique",
    "max_independent_set",
    "non_transitive_dice",
    "number_partitioning",
    "ortholatin",
    "pigeons",
    "pysms_chromatic_girth",
    "pysms_clique_coloring",
    "pysms_combined_graph",
    "pysms_contains_cliques",
    "pysms_degree_bounds",
    "pysms_girth_degree",
    "pysms_graph_builder",
    "pysms_independent_connectivity",
    "pysms_min_connectivity",
    "pysms_min_degree",
    "pysms_min_girth",
    "pysms_mtf",
    "pysms_num_edges_bounds",
    "pysms_ramsey",
    "quasigroup_idempotent",
    "queens",
    "ramsey",
    "social_golfers",
    "sudoku",
    "van_der_waerden",
    "vertex_cover",
);

/// Substitutes placeholders. Unknown placeholders are left in place so tests catch them.
pub(crate) fn render(template: &str, vars: &[(&str, String)]) -> String {
    let mut out = String::with_capacity(template.len() + 64);
    let mut rest = template.trim_end_matches('\n');
    while let Some(start) = rest.find("{{") {
        out.push_str(&rest[..start]);
        let after = &rest[start + 2..];
        match after.find("}}") {
            Some(end) => {
                let key = &after[..end];
                match vars.iter().find(|(k, _)| *k == key) {
                    Some((_, v)) => out.push_str(v),
                    None => {
                        out.push_str("{{");
                        out.push_str(key);
                        out.push_str("}}");
                    }
                }
                rest = &after[end + 2..];
            }
            None => {
                out.push_str(&rest[start..]);
                rest = "";
            }
        }
    }
    out.push_str(rest);
    out
}

pub fn render_hint_block(hints: &[Hint]) -> String {
    let mut s = String::from("\n\nPartial assignment (fixed values that must be respected):\n");
    for h in hints {
        s.push_str(&format!("- {}={}\n", h.var, h.value));
    }
    s.push_str("Return a complete solution consistent with these fixed assignments.");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution() {
        let t = "a {{x}} b {0, ..., {{y}}} {{missing}}";
        let s = render(t, &[("x", "1".into()), ("y", "9".into())]);
        assert_eq!(s, "a 1 b {0, ..., 9} {{missing}}");
    }

    #[test]
    fn hint_block_layout() {
        let hints = [
            Hint {
                var: "x[0]".into(),
                value: 0,
            },
            Hint {
                var: "d[0]".into(),
                value: 1,
            },
        ];
        assert_eq!(
            render_hint_block(&hints),
            "\n\nPartial assignment (fixed values that must be respected):\n- x[0]=0\n- d[0]=1\nReturn a complete solution consistent with these fixed assignments."
        );
    }
}
