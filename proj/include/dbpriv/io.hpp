#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbpriv/attacks.hpp"
#include "dbpriv/domain.hpp"

namespace dbpriv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Schema file: {"dimensions":[{"name":..., "values":[...], "ordinal":bool}]}
DataSpace load_schema(const std::string& path);
std::string schema_to_json(const DataSpace& space);

// Intent file: {"selections": {"<dim>": ["v1","v2"] | "ALL"}}
Intent load_intent(const std::string& path, const DataSpace& space);
Intent intent_from_json_text(const std::string& text, const DataSpace& space);
std::string intent_to_json(const Intent& intent, const DataSpace& space);

struct LoadOptions {
  std::optional<std::string> count_column;  // defaults to "__count" when present
  std::optional<std::string> cost_column;   // defaults to "__cost" when present
};

// One column per dimension; rows with a missing token ("?" or empty) are
// dropped, unknown values raise a schema error naming row and column.
Dataset load_dataset_csv(const std::string& path, const DataSpace& space,
                         const LoadOptions& options = {});

// Aggregated form: dimension columns + __count + __cost, populated cells
// only, lexicographic cell order. Re-ingesting the output round-trips.
std::string dataset_to_csv(const Dataset& dataset);

// Purchased-set CSV: dimension columns + "__count".
PurchaseSet load_purchased_csv(const std::string& path, const DataSpace& space);
std::string purchased_to_csv(const PurchaseSet& purchased, const DataSpace& space);

std::string format_cell(const DataSpace& space, int64_t index);

}  // namespace dbpriv
