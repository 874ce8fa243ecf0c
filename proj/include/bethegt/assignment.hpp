#pragma once

#include <cstddef>
#include <vector>

namespace bethegt {

/// Maximum-weight perfect matching on a square weight table (Hungarian
/// method). Returns col[row].
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<double>>& weight);

}  // namespace bethegt
