#include "dbpriv/adult.hpp"

#include <array>
#include <charconv>

#include "dbpriv/io.hpp"

namespace dbpriv {

namespace {

const std::array<const char*, 15> kRawColumns = {
    "age",          "workclass",    "fnlwgt",        "education",
    "education-num", "marital-status", "occupation", "relationship",
    "race",         "sex",          "capital-gain",  "capital-loss",
    "hours-per-week", "native-country", "income"};

bool parse_int(const std::string& s, long& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc{} && p == e;
}

int age_bin(long age) {
  if (age <= 17) return 0;  // childhood (0-17]
  if (age <= 24) return 1;  // young adult (17-24]
  if (age <= 61) return 2;  // working adult (24-61]
  return 3;                 // retirement >61
}

int hours_bin(long hours) {
  if (hours <= 34) return 0;  // part-time [0-34]
  if (hours <= 40) return 1;  // full-time (34-40]
  return 2;                   // overtime >40
}

std::string strip_label_dot(std::string v) {
  // The census test split suffixes income labels with '.'.
  if (!v.empty() && v.back() == '.') v.pop_back();
  return v;
}

}  // namespace

DataSpace adult_space() {
  return DataSpace({
      {"age", {"childhood", "young adult", "working adult", "retirement"}, true},
      {"ethnicity",
       {"Amer-Indian-Eskimo", "Asian-Pac-Islander", "Black", "Other", "White"},
       false},
      {"gender", {"Female", "Male"}, false},
      {"hours", {"part-time", "full-time", "overtime"}, true},
      {"income", {"<=50K", ">50K"}, false},
  });
}

AdultDataset preprocess_adult(const std::string& csv_path) {
  CsvTable table = read_csv(csv_path);
  // The classic distribution ships without a header: 15 fields, numeric age
  // first. Treat such a first line as data under the standard column names.
  long probe = 0;
  if (table.header.size() == kRawColumns.size() && parse_int(table.header[0], probe)) {
    table.rows.insert(table.rows.begin(), table.header);
    table.header.assign(kRawColumns.begin(), kRawColumns.end());
  }

  auto column = [&](const std::string& name) {
    for (int c = 0; c < static_cast<int>(table.header.size()); ++c)
      if (table.header[c] == name) return c;
    return -1;
  };
  const int c_age = column("age");
  const int c_race = column("race");
  const int c_sex = column("sex");
  const int c_hours = column("hours-per-week");
  const int c_income = column("income");
  if (c_age < 0 || c_race < 0 || c_sex < 0 || c_hours < 0 || c_income < 0)
    throw Error(errkind::schema,
                csv_path + ": expected census columns age, race, sex, hours-per-week, income");

  const DataSpace space = adult_space();
  std::vector<int64_t> freq(static_cast<size_t>(space.cell_count()), 0);
  AdultIngestReport report;
  Cell coords(5);
  for (const auto& row : table.rows) {
    ++report.rows_read;
    if (static_cast<int>(row.size()) < static_cast<int>(table.header.size())) {
      ++report.rows_dropped_malformed;
      continue;
    }
    bool missing = false;
    for (const auto& field : row)
      if (field.empty() || field == "?") missing = true;
    if (missing) {
      ++report.rows_dropped_missing;
      continue;
    }
    long age = 0, hours = 0;
    if (!parse_int(row[c_age], age) || !parse_int(row[c_hours], hours)) {
      ++report.rows_dropped_malformed;
      continue;
    }
    const int race = space.value_index(1, row[c_race]);
    const int sex = space.value_index(2, row[c_sex]);
    const int income = space.value_index(4, strip_label_dot(row[c_income]));
    if (race < 0 || sex < 0 || income < 0) {
      ++report.rows_dropped_malformed;
      continue;
    }
    coords[0] = age_bin(age);
    coords[1] = race;
    coords[2] = sex;
    coords[3] = hours_bin(hours);
    coords[4] = income;
    ++freq[space.index_of(coords)];
  }
  return AdultDataset{make_dataset(space, std::move(freq), {}), report};
}

}  // namespace dbpriv
