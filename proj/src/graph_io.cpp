#include "mbfd/graph_io.hpp"

#include <json.hpp>

#include <istream>
#include <set>
#include <sstream>

namespace mbfd {

namespace {

bool parse_int(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (...) {
        return false;
    }
    return pos == tok.size();
}

} // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool have_header = false;
    long long n = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue; // blank
        if (tag[0] == '#') continue;
        if (tag == "g") {
            if (have_header) throw ParseError(ParseErrorKind::MalformedLine, line_no, "duplicate header");
            std::string tok;
            if (!(ls >> tok)) throw ParseError(ParseErrorKind::MalformedLine, line_no, "header needs a vertex count");
            if (!parse_int(tok, n) || n < 0)
                throw ParseError(ParseErrorKind::BadValue, line_no, "bad vertex count '" + tok + "'");
            std::string extra;
            if (ls >> extra) throw ParseError(ParseErrorKind::MalformedLine, line_no, "trailing tokens after header");
            have_header = true;
        } else if (tag == "e") {
            if (!have_header)
                throw ParseError(ParseErrorKind::MissingHeader, line_no, "edge before 'g <n>' header");
            std::string ta, tb, extra;
            long long u = 0, v = 0;
            if (!(ls >> ta >> tb) || (ls >> extra))
                throw ParseError(ParseErrorKind::MalformedLine, line_no, "expected 'e <u> <v>'");
            if (!parse_int(ta, u) || !parse_int(tb, v))
                throw ParseError(ParseErrorKind::BadValue, line_no, "non-integer vertex id");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ParseError(ParseErrorKind::VertexOutOfRange, line_no,
                                 "vertex id out of range [0," + std::to_string(n) + ")");
            if (u == v) throw ParseError(ParseErrorKind::SelfLoop, line_no, "self-loop");
            Edge e(static_cast<VertexId>(u), static_cast<VertexId>(v));
            if (!seen.insert(e).second)
                throw ParseError(ParseErrorKind::DuplicateEdge, line_no,
                                 "duplicate edge " + std::to_string(e.lo()) + "-" + std::to_string(e.hi()));
            edges.push_back(e);
        } else {
            throw ParseError(ParseErrorKind::MalformedLine, line_no, "unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, line_no, "no 'g <n>' header");
    return Graph(static_cast<int>(n), std::move(edges));
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "g " << g.vertex_count() << "\n";
    for (const Edge& e : g.edges()) out << "e " << e.lo() << " " << e.hi() << "\n";
    return out.str();
}

KBound parse_kbound(const std::string& token) {
    if (token == "inf") return KBound::infinite();
    long long v = 0;
    if (!parse_int(token, v) || v < 1)
        throw std::invalid_argument("bound must be 'inf' or a positive integer, got '" + token + "'");
    return KBound::finite(static_cast<int>(v));
}

namespace {

nlohmann::json kbound_json(const KBound& b) {
    if (b.is_infinite()) return "inf";
    return b.value();
}

KBound kbound_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return KBound::infinite();
        throw std::invalid_argument("bad bound token in certificate");
    }
    if (!j.is_number_integer()) throw std::invalid_argument("bad bound in certificate");
    return KBound::finite(j.get<int>());
}

} // namespace

std::string serialize_certificate(const Decomposition& d) {
    nlohmann::json spec;
    spec["kind"] = d.spec.kind == SpecKind::Linear ? "linear" : "star";
    spec["k"] = kbound_json(d.spec.k);
    if (d.spec.kind == SpecKind::Linear)
        spec["l"] = kbound_json(d.spec.l);
    else
        spec["l"] = nullptr;

    nlohmann::json matching = nlohmann::json::array();
    nlohmann::json forest = nlohmann::json::array();
    for (int id = 0; id < d.graph.edge_count(); ++id) {
        const Edge& e = d.graph.edge(id);
        nlohmann::json pair = {e.lo(), e.hi()};
        (d.label(id) == EdgeLabel::Matching ? matching : forest).push_back(pair);
    }
    nlohmann::json out;
    out["spec"] = spec;
    out["matching"] = matching;
    out["forest"] = forest;
    return out.dump();
}

Decomposition parse_certificate(const Graph& g, const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    const auto& spec_j = j.at("spec");
    DecompSpec spec;
    std::string kind = spec_j.at("kind").get<std::string>();
    if (kind == "linear")
        spec.kind = SpecKind::Linear;
    else if (kind == "star")
        spec.kind = SpecKind::Star;
    else
        throw std::invalid_argument("unknown spec kind '" + kind + "'");
    spec.k = kbound_from_json(spec_j.at("k"));
    if (spec.kind == SpecKind::Linear) {
        if (!spec_j.contains("l") || spec_j.at("l").is_null())
            spec.l = KBound::finite(1);
        else
            spec.l = kbound_from_json(spec_j.at("l"));
    } else {
        spec.l = KBound::finite(1);
    }

    std::vector<EdgeLabel> labels(static_cast<std::size_t>(g.edge_count()), EdgeLabel::Forest);
    std::vector<bool> assigned(static_cast<std::size_t>(g.edge_count()), false);
    auto read_side = [&](const char* key, EdgeLabel lab) {
        for (const auto& pair : j.at(key)) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("edge entries must be [u,v] pairs");
            VertexId u = pair[0].get<VertexId>();
            VertexId v = pair[1].get<VertexId>();
            auto id = g.edge_id(u, v);
            if (!id)
                throw std::invalid_argument("certificate edge " + std::to_string(u) + "-" +
                                            std::to_string(v) + " is not in the graph");
            if (assigned[static_cast<std::size_t>(*id)])
                throw std::invalid_argument("certificate labels edge " + std::to_string(u) + "-" +
                                            std::to_string(v) + " twice");
            assigned[static_cast<std::size_t>(*id)] = true;
            labels[static_cast<std::size_t>(*id)] = lab;
        }
    };
    read_side("matching", EdgeLabel::Matching);
    read_side("forest", EdgeLabel::Forest);
    for (int id = 0; id < g.edge_count(); ++id)
        if (!assigned[static_cast<std::size_t>(id)]) {
            const Edge& e = g.edge(id);
            throw std::invalid_argument("certificate misses edge " + std::to_string(e.lo()) + "-" +
                                        std::to_string(e.hi()));
        }
    return Decomposition(g, std::move(labels), spec);
}

} // namespace mbfd
