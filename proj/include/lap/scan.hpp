#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lap/residues.hpp"

namespace lap {

enum class SeriesKind : uint8_t {
  lambda_sum,               // sum of lambda(n;q,R)          "L;q=Q;set=R"
  omega_sum,                // sum of omega(n;q,a)           "omega;q=Q;a=A"
  big_omega_sum,            // sum of Omega(n;q,a)           "Omega;q=Q;a=A"
  classical_sum,            // sum of lambda(n)              "Lclassical"
  classical_in_progression  // same, n = P (mod Q) only      "Lclassical;q=Q;P=P"
};

struct SeriesSpec {
  SeriesKind kind = SeriesKind::lambda_sum;
  ResidueSet rs;  // lambda_sum / omega_sum / big_omega_sum
  uint32_t progression_modulus = 0;  // classical_in_progression only
  uint32_t progression_residue = 0;

  std::string label() const;

  static SeriesSpec lambda(ResidueSet rs);
  // omega/big_omega track one class at a time.
  static SeriesSpec omega(uint32_t q, uint32_t a);
  static SeriesSpec big_omega(uint32_t q, uint32_t a);
  static SeriesSpec classical();
  // Throws std::domain_error unless 0 <= P < Q and Q >= 2.
  static SeriesSpec classical_progression(uint32_t Q, uint32_t P);
};

struct GridPoint {
  uint64_t x;
  int64_t value;
};

// One scanned running sum with its geometric-grid samples, sign events and
// first-attained extrema.  A sign event is a position where the sum passes
// from one nonzero sign to the other; zeros carry the previous sign.
struct SummatorySeries {
  std::string label;
  uint64_t xmax = 0;
  int64_t final_value = 0;
  std::vector<GridPoint> checkpoints;  // ascending x; only the span this call scanned
  uint64_t first_sign_change = 0;      // 0 = no sign change
  uint64_t sign_change_count = 0;
  uint64_t max_x = 0;
  int64_t max_value = 0;
  uint64_t min_x = 0;
  int64_t min_value = 0;
};

// Running per-series state, sufficient to continue a scan bit-exactly.
struct SeriesProgress {
  std::string label;
  int64_t sum = 0;
  uint64_t sign_change_count = 0;
  uint64_t first_sign_change = 0;  // 0 = none yet
  uint64_t max_x = 0;
  int64_t max_value = 0;  // meaningful once max_x != 0 (first n always sets it)
  uint64_t min_x = 0;
  int64_t min_value = 0;
  int8_t carried_sign = 0;  // sign of the last nonzero prefix, 0 if none yet
};

struct ScanProgress {
  uint64_t next_n = 1;  // first unprocessed n; block-aligned at persist points
  std::vector<SeriesProgress> series;
};

// The carried sign is redundant given the other fields: it is 0 while the
// prefix has never been nonzero (max = min = 0 with max_x set), and otherwise
// equals the sign of the first nonzero prefix flipped once per sign change.
// The first nonzero prefix is +1 for every kind except a progression-
// restricted series, where it is lambda at the smallest n = P (mod Q).
int8_t derive_carried_sign(const SeriesSpec& spec, const SeriesProgress& st);

struct ScanConfig {
  uint32_t modulus = 0;  // 0 = take the (shared) modulus of the residue-set
                         // series, or 1 when none carries a residue set
  uint64_t block_size = uint64_t{1} << 22;
  uint64_t memory_budget_bytes = uint64_t{3} << 30;
};

struct ScanOptions {
  uint32_t workers = 1;
  uint64_t progress_every_blocks = 16;
  // Nonzero: stop (result.completed = false unless already done) after this
  // many on_progress events; simulates an interrupted long run.
  uint64_t stop_after_progress_events = 0;
  // Grid row with every series' prefix sum, strictly ascending x.
  std::function<void(uint64_t x, const std::vector<int64_t>& values)> on_grid_row;
  // Block-aligned persistence hook, fired every progress_every_blocks blocks
  // and after the final block.
  std::function<void(const ScanProgress&)> on_progress;
  // Per-n observer: prefix sums of all series after adding n.  Serial cost;
  // leave empty for long scans unless the bound being checked needs it.
  std::function<void(uint64_t n, const int64_t* sums)> per_n;
  const ScanProgress* resume = nullptr;  // continue from a persisted state
};

struct ScanResult {
  bool completed = true;
  ScanProgress progress;  // next_n = xmax + 1 when completed
  std::vector<SummatorySeries> series;
};

// ceil(ratio^k) for k = 0, 1, ... deduplicated, capped and completed by xmax;
// strictly increasing.  Throws std::invalid_argument unless ratio > 1.
std::vector<uint64_t> grid_points(uint64_t xmax, double ratio);

// The one sieve modulus a scan of these specs uses: the shared modulus of the
// residue-set series (they must agree, and with cfg.modulus when nonzero), or
// 1 when every series is classical.  Throws std::domain_error on conflict.
uint32_t scan_modulus(const std::vector<SeriesSpec>& specs,
                      const ScanConfig& cfg);

// Scans n = 1..xmax once, maintaining every series simultaneously.  Workers
// sieve and extract per-block value arrays in parallel; the calling thread
// folds blocks strictly in index order, so output is byte-identical for any
// worker count.  All residue-set series must share one sieve modulus (equal
// to cfg.modulus when given); progression-restricted/classical series are
// modulus-independent.  Throws std::domain_error on spec violations and
// std::invalid_argument on config errors (ratio <= 1, zero block size,
// memory budget exceeded, malformed resume state).
ScanResult scan(uint64_t xmax, const std::vector<SeriesSpec>& specs,
                const ScanConfig& cfg = {}, double checkpoint_ratio = 1.05,
                const ScanOptions& opt = {});

struct SignReport {
  std::string series;
  uint64_t xmax = 0;
  std::optional<uint64_t> first_sign_change;
  uint64_t sign_changes = 0;
  uint64_t max_x = 0;
  int64_t max_value = 0;
  uint64_t min_x = 0;
  int64_t min_value = 0;
};

SignReport sign_report(const SummatorySeries& s);

}  // namespace lap
