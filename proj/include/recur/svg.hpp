#pragma once

#include <string>

#include "recur/ph/diagram.hpp"

namespace recur::ph {

// Persistence diagram plot: one circle per finite pair, one series (color)
// per dimension, a dashed y=x diagonal and labeled axes. Output is
// deterministic: identical diagrams give identical bytes.
std::string render_svg(const PersistenceDiagrams& dgms);
void save_svg(const PersistenceDiagrams& dgms, const std::string& path);

}  // namespace recur::ph
