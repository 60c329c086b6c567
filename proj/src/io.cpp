#include "dbpriv/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dbpriv {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool is_missing(const std::string& v) { return v.empty() || v == "?"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errkind::io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(errkind::io, path + ": " + e.what());
  }
  return j;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errkind::io, "cannot open " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errkind::io, "cannot write " + path);
  out << content;
}

DataSpace load_schema(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.contains("dimensions") || !j["dimensions"].is_array())
    throw Error(errkind::schema, path + ": schema needs a 'dimensions' array");
  std::vector<Dimension> dims;
  for (const auto& d : j["dimensions"]) {
    Dimension dim;
    dim.name = d.at("name").get<std::string>();
    for (const auto& v : d.at("values")) dim.values.push_back(v.get<std::string>());
    dim.ordinal = d.value("ordinal", false);
    dims.push_back(std::move(dim));
  }
  return DataSpace(std::move(dims));
}

std::string schema_to_json(const DataSpace& space) {
  json dims = json::array();
  for (const auto& d : space.dims())
    dims.push_back({{"name", d.name}, {"values", d.values}, {"ordinal", d.ordinal}});
  return json{{"dimensions", dims}}.dump(2) + "\n";
}

Intent intent_from_json_text(const std::string& text, const DataSpace& space) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(errkind::io, std::string("intent JSON: ") + e.what());
  }
  if (!j.contains("selections") || !j["selections"].is_object())
    throw Error(errkind::invalid_intent, "intent needs a 'selections' object");
  std::vector<std::vector<int>> sel(space.rank());
  std::vector<bool> seen(space.rank(), false);
  for (const auto& [dim_name, value] : j["selections"].items()) {
    const int d = space.dim_index(dim_name);
    if (d < 0) throw Error(errkind::invalid_intent, "unknown dimension '" + dim_name + "'");
    seen[d] = true;
    if (value.is_string() && value.get<std::string>() == "ALL") {
      for (int v = 0; v < space.cardinality(d); ++v) sel[d].push_back(v);
      continue;
    }
    if (!value.is_array())
      throw Error(errkind::invalid_intent,
                  "selection for '" + dim_name + "' must be a value list or \"ALL\"");
    for (const auto& v : value) {
      const int vi = space.value_index(d, v.get<std::string>());
      if (vi < 0)
        throw Error(errkind::invalid_intent,
                    "unknown value '" + v.get<std::string>() + "' on dimension '" +
                        dim_name + "'");
      sel[d].push_back(vi);
    }
  }
  // Unlisted dimensions mean ALL.
  for (int d = 0; d < space.rank(); ++d)
    if (!seen[d])
      for (int v = 0; v < space.cardinality(d); ++v) sel[d].push_back(v);
  return Intent(space, std::move(sel));
}

Intent load_intent(const std::string& path, const DataSpace& space) {
  std::ifstream in(path);
  if (!in) throw Error(errkind::io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return intent_from_json_text(ss.str(), space);
}

std::string intent_to_json(const Intent& intent, const DataSpace& space) {
  json sel = json::object();
  for (int d = 0; d < space.rank(); ++d) {
    if (intent.is_all(d)) {
      sel[space.dim(d).name] = "ALL";
      continue;
    }
    json vals = json::array();
    for (int v : intent.selection(d)) vals.push_back(space.dim(d).values[v]);
    sel[space.dim(d).name] = vals;
  }
  return json{{"selections", sel}}.dump(2) + "\n";
}

Dataset load_dataset_csv(const std::string& path, const DataSpace& space,
                         const LoadOptions& options) {
  const CsvTable table = read_csv(path);
  std::vector<int> dim_col(space.rank(), -1);
  int count_col = -1, cost_col = -1;
  const std::string count_name = options.count_column.value_or("__count");
  const std::string cost_name = options.cost_column.value_or("__cost");
  for (int c = 0; c < static_cast<int>(table.header.size()); ++c) {
    const std::string& h = table.header[c];
    const int d = space.dim_index(h);
    if (d >= 0) dim_col[d] = c;
    if (h == count_name) count_col = c;
    if (h == cost_name) cost_col = c;
  }
  for (int d = 0; d < space.rank(); ++d)
    if (dim_col[d] < 0)
      throw Error(errkind::schema,
                  path + ": missing column '" + space.dim(d).name + "'");
  if (options.count_column && count_col < 0)
    throw Error(errkind::schema, path + ": missing count column '" + count_name + "'");
  if (options.cost_column && cost_col < 0)
    throw Error(errkind::schema, path + ": missing cost column '" + cost_name + "'");

  std::vector<int64_t> freq(static_cast<size_t>(space.cell_count()), 0);
  std::vector<double> cost(static_cast<size_t>(space.cell_count()), 1.0);
  Cell coords(space.rank());
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    bool missing = false;
    for (const auto& field : row)
      if (is_missing(field)) missing = true;
    if (missing) continue;
    for (int d = 0; d < space.rank(); ++d) {
      const std::string& v = row[dim_col[d]];
      const int vi = space.value_index(d, v);
      if (vi < 0)
        throw Error(errkind::schema, path + ": row " + std::to_string(r + 2) +
                                         ", column '" + space.dim(d).name +
                                         "': unknown value '" + v + "'");
      coords[d] = vi;
    }
    const int64_t idx = space.index_of(coords);
    int64_t n = 1;
    if (count_col >= 0) {
      try {
        n = std::stoll(row[count_col]);
      } catch (...) {
        throw Error(errkind::schema,
                    path + ": row " + std::to_string(r + 2) + ": bad count");
      }
      if (n < 0)
        throw Error(errkind::schema,
                    path + ": row " + std::to_string(r + 2) + ": negative count");
    }
    freq[idx] += n;
    if (cost_col >= 0) {
      try {
        cost[idx] = std::stod(row[cost_col]);
      } catch (...) {
        throw Error(errkind::schema,
                    path + ": row " + std::to_string(r + 2) + ": bad cost");
      }
    }
  }
  return make_dataset(space, std::move(freq), std::move(cost));
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string dataset_to_csv(const Dataset& dataset) {
  std::ostringstream out;
  const DataSpace& space = dataset.space;
  for (int d = 0; d < space.rank(); ++d) out << space.dim(d).name << ",";
  out << "__count,__cost\n";
  for (int64_t idx : dataset.populated) {
    for (int d = 0; d < space.rank(); ++d)
      out << space.dim(d).values[space.coord_at(idx, d)] << ",";
    out << dataset.freq[idx] << "," << format_double(dataset.cost[idx]) << "\n";
  }
  return out.str();
}

PurchaseSet load_purchased_csv(const std::string& path, const DataSpace& space) {
  const CsvTable table = read_csv(path);
  std::vector<int> dim_col(space.rank(), -1);
  int count_col = -1;
  for (int c = 0; c < static_cast<int>(table.header.size()); ++c) {
    const int d = space.dim_index(table.header[c]);
    if (d >= 0) dim_col[d] = c;
    if (table.header[c] == "__count") count_col = c;
  }
  for (int d = 0; d < space.rank(); ++d)
    if (dim_col[d] < 0)
      throw Error(errkind::schema, path + ": missing column '" + space.dim(d).name + "'");
  std::vector<std::pair<int64_t, int32_t>> counts;
  Cell coords(space.rank());
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (int d = 0; d < space.rank(); ++d) {
      const int vi = space.value_index(d, row[dim_col[d]]);
      if (vi < 0)
        throw Error(errkind::schema, path + ": row " + std::to_string(r + 2) +
                                         ", column '" + space.dim(d).name +
                                         "': unknown value '" + row[dim_col[d]] + "'");
      coords[d] = vi;
    }
    int32_t n = 1;
    if (count_col >= 0) n = static_cast<int32_t>(std::stol(row[count_col]));
    counts.emplace_back(space.index_of(coords), n);
  }
  return PurchaseSet::from_counts(std::move(counts));
}

std::string purchased_to_csv(const PurchaseSet& purchased, const DataSpace& space) {
  std::ostringstream out;
  for (int d = 0; d < space.rank(); ++d) out << space.dim(d).name << ",";
  out << "__count\n";
  for (const auto& [cell, n] : purchased.cells) {
    for (int d = 0; d < space.rank(); ++d)
      out << space.dim(d).values[space.coord_at(cell, d)] << ",";
    out << n << "\n";
  }
  return out.str();
}

std::string format_cell(const DataSpace& space, int64_t index) {
  std::string out = "(";
  for (int d = 0; d < space.rank(); ++d) {
    if (d) out += ", ";
    out += space.dim(d).values[space.coord_at(index, d)];
  }
  out += ")";
  return out;
}

}  // namespace dbpriv
