#include "lap/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lap/arith.hpp"
#include "lap/primes.hpp"
#include "lap/sieve.hpp"

namespace lap {

std::string SeriesSpec::label() const {
  switch (kind) {
    case SeriesKind::lambda_sum:
      return "L;" + rs.label_fragment();
    case SeriesKind::omega_sum:
      return "omega;q=" + std::to_string(rs.modulus) +
             ";a=" + std::to_string(rs.residues[0]);
    case SeriesKind::big_omega_sum:
      return "Omega;q=" + std::to_string(rs.modulus) +
             ";a=" + std::to_string(rs.residues[0]);
    case SeriesKind::classical_sum:
      return "Lclassical";
    case SeriesKind::classical_in_progression:
      return "Lclassical;q=" + std::to_string(progression_modulus) +
             ";P=" + std::to_string(progression_residue);
  }
  return {};
}

SeriesSpec SeriesSpec::lambda(ResidueSet rs) {
  SeriesSpec s;
  s.kind = SeriesKind::lambda_sum;
  s.rs = std::move(rs);
  return s;
}

SeriesSpec SeriesSpec::omega(uint32_t q, uint32_t a) {
  SeriesSpec s;
  s.kind = SeriesKind::omega_sum;
  s.rs = ResidueSet(q, {a});
  return s;
}

SeriesSpec SeriesSpec::big_omega(uint32_t q, uint32_t a) {
  SeriesSpec s;
  s.kind = SeriesKind::big_omega_sum;
  s.rs = ResidueSet(q, {a});
  return s;
}

SeriesSpec SeriesSpec::classical() {
  SeriesSpec s;
  s.kind = SeriesKind::classical_sum;
  return s;
}

SeriesSpec SeriesSpec::classical_progression(uint32_t Q, uint32_t P) {
  if (Q < 2 || P >= Q)
    throw std::domain_error("progression series: need Q >= 2 and 0 <= P < Q");
  SeriesSpec s;
  s.kind = SeriesKind::classical_in_progression;
  s.progression_modulus = Q;
  s.progression_residue = P;
  return s;
}

std::vector<uint64_t> grid_points(uint64_t xmax, double ratio) {
  if (!(ratio >= 1.0001) || !(ratio <= 1000.0))
    throw std::invalid_argument("grid_points: ratio must lie in [1.0001, 1000]");
  if (xmax < 1) throw std::domain_error("grid_points: xmax must be >= 1");
  std::vector<uint64_t> pts;
  long double v = 1.0L;
  for (;;) {
    const uint64_t x = static_cast<uint64_t>(std::ceil(static_cast<double>(v)));
    if (x >= xmax) break;
    if (pts.empty() || x > pts.back()) pts.push_back(x);
    v *= static_cast<long double>(ratio);
  }
  pts.push_back(xmax);
  return pts;
}

int8_t derive_carried_sign(const SeriesSpec& spec, const SeriesProgress& st) {
  if (st.max_x == 0) return 0;  // nothing scanned yet
  if (st.max_value == 0 && st.min_value == 0) return 0;  // prefix never nonzero
  int8_t first = 1;
  if (spec.kind == SeriesKind::classical_in_progression) {
    // First nonzero prefix is lambda at the least n = P (mod Q).
    const uint64_t n0 = spec.progression_residue == 0 ? spec.progression_modulus
                                                      : spec.progression_residue;
    first = static_cast<int8_t>(lambda_classical(n0));
  }
  return (st.sign_change_count % 2 == 0) ? first : static_cast<int8_t>(-first);
}

SignReport sign_report(const SummatorySeries& s) {
  SignReport r;
  r.series = s.label;
  r.xmax = s.xmax;
  if (s.first_sign_change) r.first_sign_change = s.first_sign_change;
  r.sign_changes = s.sign_change_count;
  r.max_x = s.max_x;
  r.max_value = s.max_value;
  r.min_x = s.min_x;
  r.min_value = s.min_value;
  return r;
}

namespace {

struct Runner {
  SeriesSpec spec;
  SeriesProgress st;
  std::vector<GridPoint> grid_rows;
};

// Per-block value array for one series, int8 per n: lambda values are +-1,
// class counts are at most Omega(n) <= 63, progression-restricted values
// include 0 off the progression.
void extract_deltas(const BlockCounts& bc, const SeriesSpec& spec, int8_t* out) {
  const uint64_t len = bc.size();
  const uint32_t q = bc.modulus;
  switch (spec.kind) {
    case SeriesKind::lambda_sum:
      lambda_from_counts(bc, spec.rs, out);
      return;
    case SeriesKind::omega_sum: {
      const uint32_t a = spec.rs.residues[0];
      const uint8_t* src = bc.distinct.data() + a;
      for (uint64_t i = 0; i < len; ++i, src += q)
        out[i] = static_cast<int8_t>(*src);
      return;
    }
    case SeriesKind::big_omega_sum: {
      const uint32_t a = spec.rs.residues[0];
      const uint8_t* src = bc.mult.data() + a;
      for (uint64_t i = 0; i < len; ++i, src += q)
        out[i] = static_cast<int8_t>(*src);
      return;
    }
    case SeriesKind::classical_sum: {
      const uint8_t* row = bc.mult.data();
      for (uint64_t i = 0; i < len; ++i) {
        uint32_t total = 0;
        for (uint32_t c = 0; c < q; ++c) total += row[c];
        row += q;
        out[i] = (total & 1) ? -1 : 1;
      }
      return;
    }
    case SeriesKind::classical_in_progression: {
      const uint32_t Q = spec.progression_modulus;
      const uint32_t P = spec.progression_residue;
      uint32_t r = static_cast<uint32_t>(bc.lo % Q);
      const uint8_t* row = bc.mult.data();
      for (uint64_t i = 0; i < len; ++i) {
        if (r == P) {
          uint32_t total = 0;
          for (uint32_t c = 0; c < q; ++c) total += row[c];
          out[i] = (total & 1) ? -1 : 1;
        } else {
          out[i] = 0;
        }
        row += q;
        if (++r == Q) r = 0;
      }
      return;
    }
  }
}

struct Payload {
  uint64_t lo = 0, hi = 0;
  std::vector<int8_t> deltas;  // series-major: deltas[s * len + i]
};

uint32_t derive_modulus(const std::vector<SeriesSpec>& specs, uint32_t cfg_q) {
  uint32_t q = cfg_q;
  for (const auto& s : specs) {
    if (s.kind == SeriesKind::classical_sum ||
        s.kind == SeriesKind::classical_in_progression)
      continue;
    if (q == 0)
      q = s.rs.modulus;
    else if (q != s.rs.modulus)
      throw std::domain_error(
          "scan: residue-set series must share the sieve modulus");
  }
  return q == 0 ? 1 : q;
}

}  // namespace

uint32_t scan_modulus(const std::vector<SeriesSpec>& specs,
                      const ScanConfig& cfg) {
  return derive_modulus(specs, cfg.modulus);
}

ScanResult scan(uint64_t xmax, const std::vector<SeriesSpec>& specs,
                const ScanConfig& cfg, double checkpoint_ratio,
                const ScanOptions& opt) {
  if (xmax < 1) throw std::domain_error("scan: xmax must be >= 1");
  const uint32_t q = derive_modulus(specs, cfg.modulus);
  const size_t S = specs.size();
  const uint64_t block = cfg.block_size;
  if (block < 1024)
    throw std::invalid_argument("scan: block_size must be >= 1024");
  const uint32_t workers = std::max<uint32_t>(1, opt.workers);
  const uint64_t progress_every = std::max<uint64_t>(1, opt.progress_every_blocks);

  // Sieve scratch per worker plus the bounded reorder window of extracted
  // blocks; generous but must respect the configured ceiling.
  {
    const uint64_t per_worker = block * (2 * uint64_t{q} + 8);
    const uint64_t window = (uint64_t{workers} + 3) * block * std::max<size_t>(S, 1);
    if (workers * per_worker + window > cfg.memory_budget_bytes)
      throw std::invalid_argument("scan: memory budget exceeded");
  }

  ScanResult out;
  std::vector<Runner> runners(S);
  for (size_t s = 0; s < S; ++s) runners[s].spec = specs[s];

  uint64_t next_n = 1;
  if (opt.resume) {
    const ScanProgress& rp = *opt.resume;
    if (rp.series.size() != S)
      throw std::invalid_argument("scan: resume state has wrong series count");
    for (size_t s = 0; s < S; ++s) {
      if (rp.series[s].label != specs[s].label())
        throw std::invalid_argument("scan: resume state label mismatch");
      runners[s].st = rp.series[s];
      const int8_t derived = derive_carried_sign(specs[s], runners[s].st);
      if (runners[s].st.carried_sign != 0 &&
          runners[s].st.carried_sign != derived)
        throw std::invalid_argument("scan: inconsistent resume sign state");
      runners[s].st.carried_sign = derived;
    }
    next_n = rp.next_n;
    if (next_n < 1 || next_n > xmax + 1)
      throw std::invalid_argument("scan: resume position out of range");
    if (next_n != xmax + 1 && (next_n - 1) % block != 0)
      throw std::invalid_argument("scan: resume position not block-aligned");
  } else {
    for (size_t s = 0; s < S; ++s) {
      runners[s].st.label = specs[s].label();
      runners[s].st.max_value = std::numeric_limits<int64_t>::min();
      runners[s].st.min_value = std::numeric_limits<int64_t>::max();
    }
  }

  const std::vector<uint64_t> grid = grid_points(xmax, checkpoint_ratio);
  size_t gi = static_cast<size_t>(
      std::lower_bound(grid.begin(), grid.end(), next_n) - grid.begin());

  auto finish = [&](bool completed, uint64_t reached) {
    out.completed = completed;
    out.progress.next_n = reached;
    out.progress.series.clear();
    out.series.clear();
    for (auto& r : runners) {
      out.progress.series.push_back(r.st);
      SummatorySeries ss;
      ss.label = r.st.label;
      ss.xmax = xmax;
      ss.final_value = r.st.sum;
      ss.checkpoints = std::move(r.grid_rows);
      ss.first_sign_change = r.st.first_sign_change;
      ss.sign_change_count = r.st.sign_change_count;
      ss.max_x = r.st.max_x;
      ss.max_value = r.st.max_value;
      ss.min_x = r.st.min_x;
      ss.min_value = r.st.min_value;
      out.series.push_back(std::move(ss));
    }
    return out;
  };

  if (S == 0 || next_n > xmax) return finish(true, xmax + 1);

  const std::vector<uint32_t> primes = base_primes(isqrt_u64(xmax));
  const uint64_t first_block = (next_n - 1) / block;
  const uint64_t num_blocks = (xmax + block - 1) / block;

  std::vector<int64_t> sums(S);
  for (size_t s = 0; s < S; ++s) sums[s] = runners[s].st.sum;
  std::vector<int64_t> row_values(S);
  uint64_t next_grid = gi < grid.size() ? grid[gi]
                                        : std::numeric_limits<uint64_t>::max();

  uint64_t progress_events = 0;
  bool stopped = false;
  uint64_t reached = next_n;

  auto consume_block = [&](const Payload& pl) {
    const uint64_t len = pl.hi - pl.lo;
    const int8_t* base = pl.deltas.data();
    const bool has_per_n = static_cast<bool>(opt.per_n);
    for (uint64_t i = 0; i < len; ++i) {
      const uint64_t n = pl.lo + i;
      for (size_t s = 0; s < S; ++s) {
        const int64_t v = (sums[s] += base[s * len + i]);
        SeriesProgress& st = runners[s].st;
        if (v > st.max_value) {
          st.max_value = v;
          st.max_x = n;
        }
        if (v < st.min_value) {
          st.min_value = v;
          st.min_x = n;
        }
        const int8_t sg = static_cast<int8_t>((v > 0) - (v < 0));
        if (sg != 0) {
          if (st.carried_sign != 0 && sg != st.carried_sign) {
            if (st.first_sign_change == 0) st.first_sign_change = n;
            ++st.sign_change_count;
          }
          st.carried_sign = sg;
        }
      }
      if (has_per_n) opt.per_n(n, sums.data());
      if (n == next_grid) {
        for (size_t s = 0; s < S; ++s) {
          row_values[s] = sums[s];
          runners[s].grid_rows.push_back({n, sums[s]});
        }
        if (opt.on_grid_row) opt.on_grid_row(n, row_values);
        ++gi;
        next_grid = gi < grid.size() ? grid[gi]
                                     : std::numeric_limits<uint64_t>::max();
      }
    }
    for (size_t s = 0; s < S; ++s) runners[s].st.sum = sums[s];
    reached = pl.hi;
  };

  // Returns true when the scan should stop after this block.
  auto after_block = [&](uint64_t b) {
    const bool is_last = (b + 1 == num_blocks);
    const bool cadence = ((b + 1 - first_block) % progress_every == 0);
    if (!cadence && !is_last) return false;
    ++progress_events;
    if (opt.on_progress) {
      ScanProgress prog;
      prog.next_n = reached;
      for (auto& r : runners) prog.series.push_back(r.st);
      opt.on_progress(prog);
    }
    return opt.stop_after_progress_events != 0 &&
           progress_events >= opt.stop_after_progress_events && !is_last;
  };

  if (workers == 1) {
    BlockCounts bc;
    SieveScratch scratch;
    Payload pl;
    for (uint64_t b = first_block; b < num_blocks; ++b) {
      const uint64_t lo = 1 + b * block;
      const uint64_t hi = std::min(lo + block, xmax + 1);
      sieve_block_into(bc, lo, hi, q, primes, scratch);
      pl.lo = lo;
      pl.hi = hi;
      pl.deltas.resize(S * (hi - lo));
      for (size_t s = 0; s < S; ++s)
        extract_deltas(bc, specs[s], pl.deltas.data() + s * (hi - lo));
      consume_block(pl);
      if (after_block(b)) {
        stopped = true;
        break;
      }
    }
    return finish(!stopped, stopped ? reached : xmax + 1);
  }

  // Parallel: workers sieve and extract; this thread folds blocks in order.
  std::mutex mu;
  std::condition_variable cv_ready, cv_space;
  std::map<uint64_t, Payload> ready;
  std::atomic<uint64_t> next_block{first_block};
  uint64_t consumed = first_block;
  bool aborting = false;
  const uint64_t depth = workers + 2;

  auto worker_fn = [&]() {
    BlockCounts bc;
    SieveScratch scratch;
    for (;;) {
      const uint64_t b = next_block.fetch_add(1);
      if (b >= num_blocks) return;
      {
        std::unique_lock<std::mutex> lk(mu);
        cv_space.wait(lk, [&] { return aborting || b < consumed + depth; });
        if (aborting) return;
      }
      Payload pl;
      pl.lo = 1 + b * block;
      pl.hi = std::min(pl.lo + block, xmax + 1);
      const uint64_t len = pl.hi - pl.lo;
      sieve_block_into(bc, pl.lo, pl.hi, q, primes, scratch);
      pl.deltas.resize(S * len);
      for (size_t s = 0; s < S; ++s)
        extract_deltas(bc, specs[s], pl.deltas.data() + s * len);
      {
        std::lock_guard<std::mutex> lk(mu);
        ready.emplace(b, std::move(pl));
      }
      cv_ready.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (uint32_t w = 0; w < workers; ++w) pool.emplace_back(worker_fn);

  for (uint64_t b = first_block; b < num_blocks; ++b) {
    Payload pl;
    {
      std::unique_lock<std::mutex> lk(mu);
      cv_ready.wait(lk, [&] { return ready.count(b) != 0; });
      auto it = ready.find(b);
      pl = std::move(it->second);
      ready.erase(it);
      consumed = b + 1;
    }
    cv_space.notify_all();
    consume_block(pl);
    if (after_block(b)) {
      stopped = true;
      break;
    }
  }
  {
    std::lock_guard<std::mutex> lk(mu);
    aborting = true;
  }
  cv_space.notify_all();
  for (auto& t : pool) t.join();

  return finish(!stopped, stopped ? reached : xmax + 1);
}

}  // namespace lap
