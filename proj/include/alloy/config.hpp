#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "alloy/model.hpp"

namespace alloy {

// Raised for malformed or unknown config entries; the message carries the
// file name and line.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelFile {
    ModelConfig model;
    std::optional<std::uint64_t> seed;
};

// YAML model description:
//   dimension: 1
//   lambda: 50
//   potential:
//     support: [[0, 1.0], [1, -0.5]]     # site may be an int (d = 1) or a list
//     tail: {C: 1, alpha: 1, radius: 30} # optional, also `alternating: true`
//   density: {kind: uniform, params: [0, 1]}
//   seed: 7
ModelFile load_model(const std::string& path);
ModelFile parse_model(const std::string& text, const std::string& origin = "<string>");

}  // namespace alloy
