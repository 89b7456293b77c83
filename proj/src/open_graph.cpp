#include "mbqc/open_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace mbqc {

bool lex_less(VertexSet a, VertexSet b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return ia == a.end() && ib != b.end();
}

bool size_lex_less(VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

OpenGraph::OpenGraph(std::vector<std::string> labels, std::vector<std::pair<Vertex, Vertex>> const& edges,
                     VertexSet inputs, VertexSet outputs)
    : _labels{std::move(labels)}, _adjacency(_labels.size()), _inputs{inputs}, _outputs{outputs} {
    auto const n = _labels.size();
    if (n > kMaxVertices) throw std::invalid_argument("OpenGraph: more than 64 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (_labels[i] == _labels[j]) throw std::invalid_argument("OpenGraph: duplicate label " + _labels[i]);
        }
    }
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("OpenGraph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("OpenGraph: self-loop on " + _labels[u]);
        if (_adjacency[u].contains(v)) {
            throw std::invalid_argument("OpenGraph: duplicate edge " + _labels[u] + " " + _labels[v]);
        }
        _adjacency[u].insert(v);
        _adjacency[v].insert(u);
    }
    if (!inputs.subset_of(vertices()) || !outputs.subset_of(vertices())) {
        throw std::invalid_argument("OpenGraph: inputs/outputs must be vertices of the graph");
    }
}

OpenGraph OpenGraph::with_default_labels(std::size_t n, std::vector<std::pair<Vertex, Vertex>> const& edges,
                                         VertexSet inputs, VertexSet outputs) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
    return OpenGraph{std::move(labels), edges, inputs, outputs};
}

std::optional<Vertex> OpenGraph::find(std::string_view label) const {
    auto it = std::find(_labels.begin(), _labels.end(), label);
    if (it == _labels.end()) return std::nullopt;
    return static_cast<Vertex>(it - _labels.begin());
}

std::vector<std::pair<Vertex, Vertex>> OpenGraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < size(); ++u) {
        for (Vertex v : _adjacency[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

std::size_t OpenGraph::edge_count() const {
    std::size_t twice = 0;
    for (auto const& a : _adjacency) twice += a.size();
    return twice / 2;
}

OpenGraph OpenGraph::with_io(VertexSet inputs, VertexSet outputs) const {
    if (!inputs.subset_of(vertices()) || !outputs.subset_of(vertices())) {
        throw std::invalid_argument("OpenGraph::with_io: inputs/outputs must be vertices of the graph");
    }
    OpenGraph g = *this;
    g._inputs = inputs;
    g._outputs = outputs;
    return g;
}

std::string OpenGraph::format_set(VertexSet s) const {
    std::string out = "{";
    bool first = true;
    for (Vertex v : s) {
        if (!first) out += ", ";
        out += label(v);
        first = false;
    }
    return out + "}";
}

VertexSet odd_neighborhood(OpenGraph const& g, VertexSet s) {
    VertexSet odd;
    for (Vertex v : s) odd ^= g.neighbors(v);
    return odd;
}

VertexSet local_set(OpenGraph const& g, VertexSet w) { return odd_neighborhood(g, w) | w; }

std::size_t internal_edge_count(OpenGraph const& g, VertexSet s) {
    std::size_t twice = 0;
    for (Vertex v : s) twice += (g.neighbors(v) & s).size();
    return twice / 2;
}

gf2::BitMatrix induced_adjacency_matrix(OpenGraph const& g, VertexSet row_set, VertexSet col_set) {
    auto const rows = row_set.members();
    auto const cols = col_set.members();
    gf2::BitMatrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (g.adjacent(rows[r], cols[c])) m.set(r, c);
        }
    }
    m.set_labels(rows, cols);
    return m;
}

gf2::BitMatrix induced_adjacency_matrix(OpenGraph const& g) {
    return induced_adjacency_matrix(g, g.non_outputs(), g.non_inputs());
}

gf2::BitVector indicator(VertexSet s, VertexSet domain) {
    gf2::BitVector v(domain.size());
    std::size_t i = 0;
    for (Vertex d : domain) v.set(i++, s.contains(d));
    return v;
}

VertexSet from_indicator(gf2::BitVector const& v, VertexSet domain) {
    if (v.size() != domain.size()) throw std::invalid_argument("from_indicator: size mismatch");
    VertexSet s;
    std::size_t i = 0;
    for (Vertex d : domain) {
        if (v.get(i++)) s.insert(d);
    }
    return s;
}

OpenGraph io_extension(OpenGraph const& g) {
    auto labels = g.labels();
    auto edges = g.edges();
    std::set<std::string> taken(labels.begin(), labels.end());
    auto attach = [&](Vertex v) {
        std::string label = g.label(v) + "'";
        while (taken.count(label)) label += "'";
        taken.insert(label);
        labels.push_back(label);
        edges.emplace_back(v, labels.size() - 1);
        return labels.size() - 1;
    };
    VertexSet inputs;
    VertexSet outputs;
    for (Vertex i : g.inputs()) inputs.insert(attach(i));
    for (Vertex o : g.outputs()) outputs.insert(attach(o));
    return OpenGraph{std::move(labels), edges, inputs, outputs};
}

OpenGraph induced_subgraph(OpenGraph const& g, VertexSet keep) {
    keep &= g.vertices();
    std::vector<Vertex> index(g.size(), 0);
    std::vector<std::string> labels;
    for (Vertex v : keep) {
        index[v] = labels.size();
        labels.push_back(g.label(v));
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [u, v] : g.edges()) {
        if (keep.contains(u) && keep.contains(v)) edges.emplace_back(index[u], index[v]);
    }
    VertexSet inputs;
    VertexSet outputs;
    for (Vertex v : keep & g.inputs()) inputs.insert(index[v]);
    for (Vertex v : keep & g.outputs()) outputs.insert(index[v]);
    return OpenGraph{std::move(labels), edges, inputs, outputs};
}

OpenGraph swapped(OpenGraph const& g) { return g.with_io(g.outputs(), g.inputs()); }

bool is_connected(OpenGraph const& g) {
    if (g.size() == 0) return true;
    VertexSet seen = VertexSet::single(0);
    VertexSet frontier = seen;
    while (!frontier.empty()) {
        VertexSet next;
        for (Vertex v : frontier) next |= g.neighbors(v);
        frontier = next - seen;
        seen |= next;
    }
    return seen == g.vertices();
}

ParseError::ParseError(std::size_t line, std::string const& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), _line{line} {}

namespace {

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::istringstream in{std::string{s}};
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

struct NamedLine {
    std::size_t line;
    std::vector<std::string> names;
};

}  // namespace

OpenGraph parse_open_graph(std::string_view text, std::ostream* warnings) {
    std::optional<NamedLine> vertices_line;
    std::optional<NamedLine> inputs_line;
    std::optional<NamedLine> outputs_line;
    std::vector<NamedLine> edge_lines;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto const eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto const words = split_words(line);
        if (words.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        auto const colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'key: values'");
        auto const key_words = split_words(line.substr(0, colon));
        if (key_words.size() != 1) throw ParseError(line_no, "malformed key");
        auto const& key = key_words.front();
        NamedLine entry{line_no, split_words(line.substr(colon + 1))};

        auto assign_once = [&](std::optional<NamedLine>& slot) {
            if (slot) throw ParseError(line_no, "duplicate '" + key + ":' section");
            slot = std::move(entry);
        };
        if (key == "vertices") {
            assign_once(vertices_line);
        } else if (key == "inputs") {
            assign_once(inputs_line);
        } else if (key == "outputs") {
            assign_once(outputs_line);
        } else if (key == "edge") {
            if (entry.names.size() != 2) throw ParseError(line_no, "edge needs exactly two vertices");
            edge_lines.push_back(std::move(entry));
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
        if (eol == text.size()) break;
    }

    std::vector<std::string> labels;
    std::map<std::string, Vertex, std::less<>> index;
    auto add_label = [&](std::string const& name, std::size_t line) {
        if (index.contains(name)) throw ParseError(line, "duplicate vertex '" + name + "'");
        index.emplace(name, labels.size());
        labels.push_back(name);
    };
    if (vertices_line) {
        for (auto const& name : vertices_line->names) add_label(name, vertices_line->line);
    } else {
        for (auto const& e : edge_lines) {
            for (auto const& name : e.names) {
                if (!index.contains(name)) add_label(name, e.line);
            }
        }
    }
    if (labels.size() > kMaxVertices) {
        throw ParseError(vertices_line ? vertices_line->line : edge_lines.back().line,
                         "more than " + std::to_string(kMaxVertices) + " vertices");
    }

    auto lookup = [&](std::string const& name, std::size_t line) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(line, "unknown vertex '" + name + "'");
        return it->second;
    };

    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<VertexSet> seen(labels.size());
    for (auto const& e : edge_lines) {
        Vertex const u = lookup(e.names[0], e.line);
        Vertex const v = lookup(e.names[1], e.line);
        if (u == v) throw ParseError(e.line, "self-loop on '" + e.names[0] + "'");
        if (seen[u].contains(v)) throw ParseError(e.line, "duplicate edge " + e.names[0] + " " + e.names[1]);
        seen[u].insert(v);
        seen[v].insert(u);
        edges.emplace_back(u, v);
    }

    auto read_set = [&](std::optional<NamedLine> const& l) {
        VertexSet s;
        if (!l) return s;
        for (auto const& name : l->names) {
            Vertex const v = lookup(name, l->line);
            if (s.contains(v)) throw ParseError(l->line, "vertex '" + name + "' listed twice");
            s.insert(v);
        }
        return s;
    };
    VertexSet const inputs = read_set(inputs_line);
    VertexSet const outputs = read_set(outputs_line);

    if (warnings != nullptr && labels.size() > kSoftVertexCap) {
        *warnings << "warning: graph has " << labels.size() << " vertices; exhaustive operations are capped at "
                  << kSoftVertexCap << "\n";
    }
    return OpenGraph{std::move(labels), edges, inputs, outputs};
}

OpenGraph load_open_graph(std::string const& path, std::ostream* warnings) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_open_graph(buffer.str(), warnings);
}

std::string to_text(OpenGraph const& g) {
    std::string out = "vertices:";
    for (auto const& l : g.labels()) out += " " + l;
    out += "\n";
    for (auto [u, v] : g.edges()) out += "edge: " + g.label(u) + " " + g.label(v) + "\n";
    auto write_set = [&](char const* key, VertexSet s) {
        out += key;
        for (Vertex v : s) out += " " + g.label(v);
        out += "\n";
    };
    write_set("inputs:", g.inputs());
    write_set("outputs:", g.outputs());
    return out;
}

nlohmann::json to_json(OpenGraph const& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {
        {"n", g.size()},
        {"labels", g.labels()},
        {"edges", edges},
        {"inputs", g.inputs().members()},
        {"outputs", g.outputs().members()},
    };
}

OpenGraph open_graph_from_json(nlohmann::json const& j) {
    auto const n = j.at("n").get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::string>>();
        if (labels.size() != n) throw std::invalid_argument("open graph JSON: labels do not match n");
    } else {
        for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto const& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    auto read_set = [&](char const* key) {
        VertexSet s;
        for (auto const& v : j.at(key)) {
            auto const idx = v.get<Vertex>();
            if (idx >= n) throw std::invalid_argument(std::string{"open graph JSON: "} + key + " index out of range");
            s.insert(idx);
        }
        return s;
    };
    return OpenGraph{std::move(labels), edges, read_set("inputs"), read_set("outputs")};
}

namespace {

std::string quoted(std::string const& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(OpenGraph const& g, DotOptions const& options) {
    std::ostringstream out;
    out << "graph G {\n";
    for (Vertex v = 0; v < g.size(); ++v) {
        out << "  " << quoted(g.label(v)) << " [shape=" << (g.inputs().contains(v) ? "box" : "circle");
        if (g.outputs().contains(v)) {
            out << ", style=solid, fillcolor=white";
        } else {
            out << ", style=filled, fillcolor=black, fontcolor=white";
        }
        out << "];\n";
    }
    for (auto [u, v] : g.edges()) out << "  " << quoted(g.label(u)) << " -- " << quoted(g.label(v)) << ";\n";
    for (auto [u, v] : options.arcs) {
        out << "  " << quoted(g.label(u)) << " -- " << quoted(g.label(v)) << " [dir=forward, color=" << options.arc_color
            << ", constraint=false];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace mbqc
