#include "nsbox/json_io.hpp"

#include <cmath>
#include <sstream>

namespace nsbox {

namespace {

Json pr_label(const std::optional<PrIndex>& k) { return k ? Json(k->label()) : Json(nullptr); }

}  // namespace

Json to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table) rows.push_back(Json(row));
  return Json{{"table", rows}};
}

Json to_json(const Box& box) { return to_json(box.table()); }

Table table_from_json(const Json& j) {
  const Json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("table")) throw Error(ErrorKind::Parse, "object has no \"table\" member");
    rows = &j.at("table");
  }
  if (!rows->is_array() || rows->size() != 4) throw Error(ErrorKind::Parse, "table must be an array of 4 rows");
  Table t{};
  for (int r = 0; r < 4; ++r) {
    const Json& row = (*rows)[r];
    if (!row.is_array() || row.size() != 4)
      throw Error(ErrorKind::Parse, "row " + std::to_string(r) + " must be an array of 4 numbers");
    for (int c = 0; c < 4; ++c) {
      if (!row[c].is_number())
        throw Error(ErrorKind::Parse, "entry [" + std::to_string(r) + "][" + std::to_string(c) + "] is not a number");
      t[r][c] = row[c].get<double>();
    }
  }
  return t;
}

Box box_from_json(const Json& j, double tol) { return Box::make(table_from_json(j), tol); }

Table read_table(std::istream& in) {
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return table_from_json(j);
}

Box read_box(std::istream& in, double tol) { return Box::make(read_table(in), tol); }

Box parse_box(std::string_view text, double tol) {
  std::istringstream in{std::string(text)};
  return read_box(in, tol);
}

Json to_json(const BellFunctions& bf) {
  Json signed_values = Json::object();
  for (const PrIndex& k : PrIndex::all()) signed_values[k.label()] = bf.value(k);
  return Json{{"B", bf.b}, {"signed", signed_values}};
}

Json to_json(const MerminFunctions& mf) {
  Json signed_values = Json::object();
  for (const PrIndex& k : PrIndex::all()) signed_values[k.label()] = mf.value(k);
  return Json{{"M", mf.m}, {"signed", signed_values}};
}

Json to_json(const DiscordReport& d) {
  return Json{{"value", d.value}, {"components", d.components}, {"argmin", d.argmin + 1}};
}

Json to_json(const VertexWeights& w) {
  Json pr = Json::object(), det = Json::object();
  for (const PrIndex& k : PrIndex::all()) pr[k.label()] = w.pr[k.ordinal()];
  for (const DetIndex& l : DetIndex::all()) det[l.label()] = w.det[l.ordinal()];
  return Json{{"pr", pr}, {"det", det}, {"total", w.total()}};
}

Json to_json(const Decomposition2& d) {
  return Json{{"mu", d.mu}, {"pr_index", pr_label(d.pr)}, {"residual", to_json(d.residual)}, {"clamp", d.clamp}};
}

Json to_json(const Decomposition3& d) {
  return Json{{"mu", d.mu},
              {"pr_index", pr_label(d.pr)},
              {"nu", d.nu},
              {"mermin_index", d.mermin.label()},
              {"family_weights", d.family_weights},
              {"q2box", to_json(d.q2box)},
              {"residual", to_json(d.residual)},
              {"clamp", d.clamp},
              {"slack", d.slack}};
}

Json to_json(const MembershipResult& m) {
  return Json{{"region", std::string(to_string(m.region))}, {"member", m.member}, {"slack", m.slack}};
}

}  // namespace nsbox
