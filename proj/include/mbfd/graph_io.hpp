#pragma once

#include "mbfd/decomposition.hpp"
#include "mbfd/graph.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace mbfd {

enum class ParseErrorKind {
    MissingHeader,
    MalformedLine,
    VertexOutOfRange,
    DuplicateEdge,
    SelfLoop,
    BadValue,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}
    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ParseErrorKind kind_;
    int line_;
};

/// Graph file: '#' comment lines, a `g <n>` header, then `e <u> <v>` lines,
/// 0-based vertex ids.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

/// "inf" or a positive integer.
KBound parse_kbound(const std::string& token);

/// Certificate JSON:
/// {"spec":{"kind":"linear"|"star","k":int|"inf","l":int|"inf"|null},
///  "matching":[[u,v],...],"forest":[[u,v],...]}
/// The two lists must partition the graph's edge set.
std::string serialize_certificate(const Decomposition& d);
Decomposition parse_certificate(const Graph& g, const std::string& json_text);

} // namespace mbfd
