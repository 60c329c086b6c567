#pragma once

#include <string>

#include "dbpriv/domain.hpp"

namespace dbpriv {

// The five-dimension census schema: age bins (ordinal), ethnicity, gender,
// hours-per-week bins (ordinal), income.
DataSpace adult_space();

struct AdultIngestReport {
  int64_t rows_read = 0;
  int64_t rows_dropped_missing = 0;
  int64_t rows_dropped_malformed = 0;
};

struct AdultDataset {
  Dataset dataset;
  AdultIngestReport report;
};

// Ingests a raw census CSV (headered, or the classic headerless 15-column
// layout). Ages bin into childhood (0-17], young adult (17-24], working
// adult (24-61], retirement >61; hours into part-time [0-34], full-time
// (34-40], overtime >40. Rows with a missing value in any column are
// dropped; malformed numeric fields are dropped and counted separately.
// Every record costs 1.
AdultDataset preprocess_adult(const std::string& csv_path);

}  // namespace dbpriv
