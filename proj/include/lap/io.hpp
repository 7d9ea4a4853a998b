#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lap/scan.hpp"

namespace lap {

// --- series CSV ------------------------------------------------------------
// Format: header "x,<label>[,<label>...]", then one row per grid point with
// integer values, LF newlines, 7-bit text.  Labels may contain commas
// (multi-class sets), so reading re-joins header tokens at label starts.

// Streaming writer used during a scan; append = continue an existing file.
class CsvWriter {
 public:
  // Throws std::runtime_error when the path cannot be opened for writing.
  CsvWriter(const std::string& path, const std::vector<std::string>& labels,
            bool append);
  void row(uint64_t x, const std::vector<int64_t>& values);
  void flush();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct SeriesTable {
  std::vector<std::string> labels;
  std::vector<uint64_t> xs;
  std::vector<std::vector<int64_t>> columns;  // one vector per label
};
// Throws std::runtime_error on missing file or malformed rows.
SeriesTable read_series_csv(const std::string& path);

void write_series_csv(const std::string& path,
                      const std::vector<SummatorySeries>& series);

// Splits a CSV header after the leading "x" into labels, re-joining tokens
// that belong to one comma-carrying label.
std::vector<std::string> parse_csv_header_labels(const std::string& header);

// Rebuilds a SummatorySeries (checkpoint rows only) from one CSV column, for
// fitting.  Throws std::runtime_error when the label is absent.
SummatorySeries series_from_table(const SeriesTable& t, const std::string& label);

// --- sign report JSON -------------------------------------------------------
// {"series","xmax","first_sign_change","sign_changes","max":{"x","value"},
//  "min":{"x","value"}}, null when no sign change occurred.
std::string sign_report_json(const SignReport& r);
// One object for a single series, else a JSON array in series order.
std::string sign_reports_json(const std::vector<SignReport>& rs);

// --- scan checkpoint file ----------------------------------------------------
// Line 1: "LAPCHK v1".  Line 2: "config xmax=<> modulus=<> block=<> ratio=<>".
// Then one record per series, tab-separated: label, last completed n,
// running sum, sign-change count, first sign change ("-" when none), max x,
// max value, min x, min value.
struct CheckpointFile {
  uint64_t xmax = 0;
  uint32_t modulus = 0;
  uint64_t block_size = 0;
  double ratio = 0;
  uint64_t end = 0;  // last processed n; scan continues at end + 1
  std::vector<SeriesProgress> series;  // carried_sign left underived (0)
};

void write_checkpoint(const std::string& path, const CheckpointFile& c);
// Throws std::runtime_error on missing file, wrong version line, or a
// malformed record.
CheckpointFile read_checkpoint(const std::string& path);

// --- small helpers -----------------------------------------------------------
// Writes to path.tmp then renames, so readers never observe a torn file.
void atomic_write_file(const std::string& path, const std::string& content);

// Integer parse accepting scientific notation ("1e9"); rejects values that
// are not exact nonnegative integers or exceed 2^63 - 1.
// Throws std::invalid_argument.
uint64_t parse_extent(const std::string& text);

}  // namespace lap
