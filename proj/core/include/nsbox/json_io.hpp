#pragma once

#include <istream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nsbox/box.hpp"
#include "nsbox/decompose.hpp"
#include "nsbox/measures.hpp"

namespace nsbox {

using Json = nlohmann::json;

/// {"table": [[...4], ...4]}. Doubles are written with round-trip precision.
Json to_json(const Table& table);
Json to_json(const Box& box);

/// Accepts {"table": [[...]]} or a bare 4x4 array. Throws Parse for malformed
/// JSON or shape, and the usual validation errors for a bad table.
Table table_from_json(const Json& j);
Box box_from_json(const Json& j, double tol = kValTol);
Box read_box(std::istream& in, double tol = kValTol);
Box parse_box(std::string_view text, double tol = kValTol);
Table read_table(std::istream& in);

Json to_json(const BellFunctions& bf);
Json to_json(const MerminFunctions& mf);
Json to_json(const DiscordReport& d);
Json to_json(const VertexWeights& w);
Json to_json(const Decomposition2& d);
Json to_json(const Decomposition3& d);
Json to_json(const MembershipResult& m);

}  // namespace nsbox
