//! Synthetic MiniJ corpora for the benchmarks.

use convlint_core::minij::{parse_unit, CompilationUnit};

const COMPONENTS: [&str; 4] = ["user", "finance", "production", "service"];
const LAYERS: [&str; 3] = ["ui", "lg", "db"];

/// Source of one class in `fb6.<component>.<layer>` that calls a class in
/// the layer below (and one in another component) `calls` times each.
pub fn layered_class(
    component: usize,
    layer: usize,
    index: usize,
    calls: usize,
) -> (String, String) {
    let comp = COMPONENTS[component % COMPONENTS.len()];
    let lay = LAYERS[layer % LAYERS.len()];
    let below = LAYERS[(layer + 1).min(LAYERS.len() - 1)];
    let other = COMPONENTS[(component + 1) % COMPONENTS.len()];
    let name = format!("C{index}");
    let mut src = format!(
        "package fb6.{comp}.{lay};\n\nimport fb6.{comp}.{below}.C{index};\nimport fb6.{other}.{lay}.C{next};\n\n",
        next = index + 1
    );
    src.push_str(&format!(
        "/** Class {{0}} in {{1}}. */\nclass {name} {{\n    String nameMut;\n\n"
    ));
    for i in 0..calls {
        src.push_str(&format!(
            "    void work{i}(C{index} below, C{next} peer, String s) {{\n        below.load{i}(s);\n        peer.setValue(s);\n        this.nameMut = s;\n        if (s == null) {{\n            throw new IllegalStateExc(s);\n        }}\n    }}\n\n",
            next = index + 1
        ));
    }
    src.push_str("}\n");
    let file = format!("fb6/{comp}/{lay}/{name}.minij");
    (file, src)
}

/// `n` classes spread over the component/layer grid, as (file, source).
pub fn corpus_sources(n: usize, calls: usize) -> Vec<(String, String)> {
    (0..n)
        .map(|i| layered_class(i % 4, (i / 4) % 3, i, calls))
        .collect()
}

pub fn parse_corpus(sources: &[(String, String)]) -> Vec<CompilationUnit> {
    sources
        .iter()
        .map(|(file, src)| parse_unit(src, file).expect("synthetic sources parse"))
        .collect()
}
