#pragma once

// JSON forms of the library's value types.
//
//   NonlinearitySpec: {"kind": "identity" | "q" | "kerr" | "custom",
//                      "lambda": ..., "chi": ..., "table": [...]}
//   DensityMatrix:    {"dim": N, "re": [[...]], "im": [[...]]}

#include <json.hpp>

#include "fosc/fock.hpp"
#include "fosc/nonlinearity.hpp"

namespace fosc {

/// Throws InvalidArgument for closed-form custom specs (not serializable).
[[nodiscard]] nlohmann::json to_json(const NonlinearitySpec& spec);
/// Unknown keys and keys that do not belong to the kind are rejected.
[[nodiscard]] NonlinearitySpec nonlinearity_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const DensityMatrix& rho);
[[nodiscard]] DensityMatrix density_from_json(const nlohmann::json& j);

}  // namespace fosc
