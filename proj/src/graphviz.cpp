#include "partlat/graphviz.hpp"

#include <sstream>
#include <stdexcept>

namespace partlat {

namespace {

const char* edge_style(int member) {
    switch (member) {
        case 1: return "solid";   // beta
        case 2: return "dashed";  // gamma
        case 3: return "dotted";  // delta
    }
    return "bold";
}

const char* edge_color(int member) {
    switch (member) {
        case 1: return "blue";
        case 2: return "red";
        case 3: return "black";
    }
    return "gray";
}

}  // namespace

std::string emit_graph(Family f, int k) {
    const GeneratorQuad quad = family_quad(f, k);
    const int n = quad.n;

    std::vector<std::string> label(n + 1);
    for (int i = 1; i <= k + 1; ++i) label[i] = "a" + std::to_string(i);
    for (int i = 1; i <= k; ++i) label[k + 1 + i] = "b" + std::to_string(i);
    if (n >= 2 * k + 2) label[2 * k + 2] = "c";
    if (n >= 2 * k + 3) label[2 * k + 3] = "d";

    std::ostringstream out;
    out << "graph " << family_id(f) << "_k" << k << " {\n";
    out << "  node [shape=circle fontsize=10];\n";
    for (int x = 1; x <= n; ++x) out << "  " << label[x] << ";\n";

    int cluster = 0;
    for (const auto& blk : quad.alpha.nonsingleton_blocks()) {
        out << "  subgraph cluster_alpha_" << cluster++ << " {\n"
            << "    style=rounded; color=gray; label=\"alpha\";\n    ";
        for (int x : blk) out << label[x] << "; ";
        out << "\n  }\n";
    }

    static const char* names[4] = {"alpha", "beta", "gamma", "delta"};
    for (int m = 1; m <= 3; ++m) {
        out << "  // " << names[m] << "\n";
        for (const auto& blk : quad.member(m).nonsingleton_blocks())
            for (std::size_t t = 0; t + 1 < blk.size(); ++t)
                out << "  " << label[blk[t]] << " -- " << label[blk[t + 1]] << " [style="
                    << edge_style(m) << " color=" << edge_color(m) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_graph(const std::string& family_id_text, int k) {
    auto f = family_from_id(family_id_text);
    if (!f) throw std::invalid_argument("unknown construction id '" + family_id_text + "'");
    return emit_graph(*f, k);
}

}  // namespace partlat
