#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ksmap/multipoly.hpp"
#include "ksmap/parser.hpp"

namespace ksmap {

struct PencilFile {
    std::string name;
    std::vector<std::string> variables;
    std::string polynomial_source;
    MultiPoly polynomial;
    std::optional<int> truncation;
    std::optional<double> tolerance;
    std::optional<int> degree_bound;
    std::optional<int> samples;
    std::optional<std::vector<std::vector<MultiPoly>>> endomorphism;

    VarNames names() const;
};

/// Line-oriented `key = value`; '#' starts a comment; string values may be quoted.
PencilFile parse_pencil_file(const std::string& text);
PencilFile load_pencil_file(const std::string& path);

}  // namespace ksmap
