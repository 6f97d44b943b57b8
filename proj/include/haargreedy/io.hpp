#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "haargreedy/greedy.hpp"
#include "haargreedy/haar.hpp"

namespace haargreedy {

using Json = nlohmann::ordered_json;

/// {"dim": d, "constant": "p/q", "coeffs": [{"cube": "...", "j": n, "value": "p/q"}]}
Json expansion_to_json(const HaarExpansion& f);
HaarExpansion expansion_from_json(const Json& object);

/// {"dim": d, "level": L, "values": ["p/q", ...]} row-major, axis 1 slowest.
Json grid_to_json(const std::vector<Rational>& grid, int dim, int level);
std::vector<Rational> grid_from_json(const Json& object, int& dim, int& level);

/// JSON lines: one header object followed by one object per greedy step, each
/// rational carried as "p/q" plus a 17-digit decimal for plotting.
std::string trace_to_jsonl(const GreedyTrace& trace);

/// CSV projection "m,residual_norm,approximant_norm,ratio" (decimal columns).
std::string trace_to_csv(const GreedyTrace& trace);

HaarExpansion read_expansion_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace haargreedy
