#pragma once

#include "mbfd/graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mbfd {

enum class ComplexityClass : std::uint8_t { NpComplete, Polynomial };

/// Dichotomy for decomposing into a k-bounded and an l-bounded linear
/// forest: polynomial exactly when k + l <= 3 (unbounded counts as large).
ComplexityClass classify(KBound k, KBound l);

struct CommandOutcome {
    // 0 = yes/valid/pass, 1 = no/invalid/fail, 2 = usage or I/O error
    // (also used for a size-cap report, which is neither pass nor fail).
    int exit_code = 0;
};

/// Entry point behind the `mbfd` binary; JSON report on `out`, human
/// diagnostics on `err`. argv excludes the program name.
CommandOutcome dispatch(const std::vector<std::string>& argv, std::ostream& out,
                        std::ostream& err);

} // namespace mbfd
