#include "lap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lap/analytics.hpp"
#include "lap/arith.hpp"
#include "lap/characters.hpp"
#include "lap/io.hpp"
#include "lap/primes.hpp"
#include "lap/scan.hpp"
#include "lap/sieve.hpp"
#include "lap/stats.hpp"

namespace lap {

namespace {

using nlohmann::ordered_json;

// Residue tokens are taken mod q so the class of multiples of q may be
// written either "0" or "q" (e.g. --q 2 --set 2 selects the prime 2).
ResidueSet parse_set(uint32_t q, const std::string& text) {
  if (q < 2) throw std::domain_error("--set requires --q >= 2");
  std::vector<uint32_t> rs;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const std::string tok = text.substr(start, i - start);
      start = i + 1;
      const uint64_t v = parse_extent(tok);
      if (v > q)
        throw std::domain_error("residue " + tok + " out of range for q=" +
                                std::to_string(q));
      rs.push_back(static_cast<uint32_t>(v == q ? 0 : v));
    }
  }
  return ResidueSet(q, std::move(rs));
}

std::vector<double> parse_edges(const std::string& text) {
  std::vector<double> edges;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const std::string tok = text.substr(start, i - start);
      start = i + 1;
      char* endp = nullptr;
      const double v = std::strtod(tok.c_str(), &endp);
      if (tok.empty() || endp != tok.c_str() + tok.size())
        throw std::invalid_argument("malformed edge: '" + tok + "'");
      edges.push_back(v);
    }
  }
  return edges;
}

std::string default_report_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".report.json";
  return out + ".report.json";
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

// Options shared by the scan and combos subcommands.
struct ScanArgs {
  uint32_t q = 0;
  std::vector<std::string> sets;
  std::vector<uint32_t> omegas;
  std::vector<uint32_t> big_omegas;
  bool classical = false;
  std::vector<std::string> progressions;
  std::string xmax_text;
  std::string block_text = "4194304";
  std::string budget_text;
  uint32_t workers = 1;
  uint64_t progress_every = 16;
  double ratio = 1.05;
  std::string out, report, checkpoint;
  uint64_t stop_after = 0;
};

std::vector<SeriesSpec> build_specs(const ScanArgs& a) {
  std::vector<SeriesSpec> specs;
  if ((!a.sets.empty() || !a.omegas.empty() || !a.big_omegas.empty()) &&
      a.q < 2)
    throw std::domain_error("--set/--omega/--Omega require --q >= 2");
  for (const auto& s : a.sets)
    specs.push_back(SeriesSpec::lambda(parse_set(a.q, s)));
  for (uint32_t v : a.omegas)
    specs.push_back(SeriesSpec::omega(a.q, v == a.q ? 0 : v));
  for (uint32_t v : a.big_omegas)
    specs.push_back(SeriesSpec::big_omega(a.q, v == a.q ? 0 : v));
  if (a.classical) specs.push_back(SeriesSpec::classical());
  for (const auto& p : a.progressions) {
    const size_t colon = p.find(':');
    if (colon == std::string::npos)
      throw std::domain_error("--progression expects Q:P, got '" + p + "'");
    const uint64_t Q = parse_extent(p.substr(0, colon));
    const uint64_t P = parse_extent(p.substr(colon + 1));
    specs.push_back(SeriesSpec::classical_progression(
        static_cast<uint32_t>(Q), static_cast<uint32_t>(P)));
  }
  if (specs.empty())
    throw std::domain_error(
        "no series requested (--set/--omega/--Omega/--classical/--progression)");
  return specs;
}

// Runs one scan, streaming the grid to a CSV, persisting checkpoints when a
// checkpoint path is given (resuming if that file already exists), and
// emitting the sign report on completion.
int run_scan_to_files(const std::vector<SeriesSpec>& specs, const ScanArgs& a) {
  const uint64_t xmax = parse_extent(a.xmax_text);
  if (xmax < 2) throw std::domain_error("--xmax must be at least 2");
  ScanConfig cfg;
  cfg.block_size = parse_extent(a.block_text);
  if (!a.budget_text.empty())
    cfg.memory_budget_bytes = parse_extent(a.budget_text);
  const uint32_t modulus = scan_modulus(specs, cfg);

  std::vector<std::string> labels;
  for (const auto& s : specs) labels.push_back(s.label());

  // Resume when a checkpoint path was given and the file exists.
  ScanProgress resume_state;
  bool resuming = false;
  if (!a.checkpoint.empty() && file_exists(a.checkpoint)) {
    CheckpointFile c;
    try {
      c = read_checkpoint(a.checkpoint);
    } catch (const std::runtime_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    if (c.xmax != xmax || c.modulus != modulus ||
        c.block_size != cfg.block_size || c.ratio != a.ratio) {
      std::cerr << "error: checkpoint configuration does not match the "
                   "requested scan\n";
      return 2;
    }
    if (c.series.size() != labels.size()) {
      std::cerr << "error: checkpoint series do not match the requested scan\n";
      return 2;
    }
    for (size_t i = 0; i < labels.size(); ++i)
      if (c.series[i].label != labels[i]) {
        std::cerr << "error: checkpoint series '" << c.series[i].label
                  << "' does not match requested '" << labels[i] << "'\n";
        return 2;
      }
    if (c.end >= xmax) {
      std::cerr << "scan already complete (n = " << c.end << "); nothing to do\n";
      return 0;
    }
    resume_state.next_n = c.end + 1;
    resume_state.series = std::move(c.series);
    resuming = true;
  }

  std::optional<CsvWriter> writer;
  if (resuming) {
    // Drop any grid rows past the checkpoint (written after the last persist)
    // and continue appending; retained rows round-trip byte-identically.
    SeriesTable t = read_series_csv(a.out);
    if (t.labels != labels) {
      std::cerr << "error: csv columns do not match the requested scan\n";
      return 2;
    }
    const uint64_t end = resume_state.next_n - 1;
    CsvWriter rebuilt(a.out, labels, false);
    std::vector<int64_t> vals(labels.size());
    for (size_t i = 0; i < t.xs.size(); ++i) {
      if (t.xs[i] > end) break;
      for (size_t j = 0; j < labels.size(); ++j) vals[j] = t.columns[j][i];
      rebuilt.row(t.xs[i], vals);
    }
    writer.emplace(std::move(rebuilt));
  } else {
    writer.emplace(a.out, labels, false);
  }

  const uint64_t start_n = resuming ? resume_state.next_n : 1;
  const auto t0 = std::chrono::steady_clock::now();
  ScanOptions opt;
  opt.workers = a.workers;
  opt.progress_every_blocks = a.progress_every;
  opt.stop_after_progress_events = a.stop_after;
  if (resuming) opt.resume = &resume_state;
  opt.on_grid_row = [&](uint64_t x, const std::vector<int64_t>& values) {
    writer->row(x, values);
  };
  opt.on_progress = [&](const ScanProgress& p) {
    writer->flush();
    if (!a.checkpoint.empty()) {
      CheckpointFile c;
      c.xmax = xmax;
      c.modulus = modulus;
      c.block_size = cfg.block_size;
      c.ratio = a.ratio;
      c.end = p.next_n - 1;
      c.series = p.series;
      write_checkpoint(a.checkpoint, c);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const uint64_t done = p.next_n - 1;
    std::fprintf(stderr, "\rn=%" PRIu64 "/%" PRIu64 " (%.1f%%, %.1f Mn/s)",
                 done, xmax, 100.0 * static_cast<double>(done) / static_cast<double>(xmax),
                 secs > 0 ? static_cast<double>(done - start_n + 1) / secs / 1e6
                          : 0.0);
  };

  ScanResult res = scan(xmax, specs, cfg, a.ratio, opt);
  std::fputc('\n', stderr);
  writer->flush();
  if (!res.completed) {
    std::cerr << "stopped at n = " << res.progress.next_n - 1
              << "; resume with the same flags and --checkpoint\n";
    return 0;
  }

  std::vector<SignReport> reports;
  reports.reserve(res.series.size());
  for (const auto& s : res.series) reports.push_back(sign_report(s));
  const std::string json = sign_reports_json(reports);
  const std::string rpath =
      a.report.empty() ? default_report_path(a.out) : a.report;
  atomic_write_file(rpath, json);
  std::cout << json;
  return 0;
}

int cmd_scan(const ScanArgs& a) { return run_scan_to_files(build_specs(a), a); }

int cmd_combos(const ScanArgs& a, uint32_t r) {
  if (a.q < 2) throw std::domain_error("--q must be >= 2");
  const UnitGroup g = unit_group(a.q);
  if (r < 1 || r > g.units.size())
    throw std::domain_error("--r must be between 1 and phi(q)");
  // All size-r subsets of the coprime classes, lexicographic, one scan.
  std::vector<SeriesSpec> specs;
  std::vector<uint32_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<uint32_t> subset;
    subset.reserve(r);
    for (uint32_t i : idx) subset.push_back(g.units[i]);
    specs.push_back(SeriesSpec::lambda(ResidueSet(a.q, std::move(subset))));
    // next combination
    int32_t i = static_cast<int32_t>(r) - 1;
    while (i >= 0 &&
           idx[i] == g.units.size() - r + static_cast<uint32_t>(i))
      --i;
    if (i < 0) break;
    ++idx[i];
    for (uint32_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return run_scan_to_files(specs, a);
}

int cmd_oracle_check(const std::string& xmax_text, uint32_t qmax) {
  const uint64_t xmax = parse_extent(xmax_text);
  if (xmax < 2 || xmax > 2'000'000)
    throw std::domain_error("oracle-check xmax must be in [2, 2*10^6]");
  if (qmax < 2 || qmax > 64)
    throw std::domain_error("--qmax must be in [2, 64]");
  const auto primes = base_primes(isqrt_u64(xmax));
  std::vector<uint32_t> qs;
  for (uint32_t q = 2; q <= qmax; ++q) qs.push_back(q);
  std::vector<BlockCounts> bcs(qs.size());
  SieveScratch scratch;
  uint32_t mult[64], dist[64];
  uint64_t checked = 0;
  constexpr uint64_t kBlock = uint64_t{1} << 17;
  for (uint64_t lo = 1; lo <= xmax; lo += kBlock) {
    const uint64_t hi = std::min(lo + kBlock, xmax + 1);
    for (size_t i = 0; i < qs.size(); ++i)
      sieve_block_into(bcs[i], lo, hi, qs[i], primes, scratch);
    for (uint64_t n = lo; n < hi; ++n) {
      const Factorization f = factorize(n);
      for (size_t i = 0; i < qs.size(); ++i) {
        const uint32_t q = qs[i];
        std::fill(mult, mult + q, 0);
        std::fill(dist, dist + q, 0);
        for (const auto& [p, e] : f.factors) {
          const uint32_t c = static_cast<uint32_t>(p % q);
          mult[c] += e;
          dist[c] += 1;
        }
        for (uint32_t c = 0; c < q; ++c) {
          if (bcs[i].omega_mult(n, c) != mult[c] ||
              bcs[i].omega_distinct(n, c) != dist[c]) {
            std::cerr << "MISMATCH at n=" << n << " q=" << q << " class=" << c
                      << ": sieve Omega=" << int(bcs[i].omega_mult(n, c))
                      << " omega=" << int(bcs[i].omega_distinct(n, c))
                      << ", factorization Omega=" << mult[c]
                      << " omega=" << dist[c] << '\n';
            return 1;
          }
        }
        // Spot-check the lambda path against the point oracle on a sample.
        if (n % 997 == 0) {
          std::vector<uint32_t> all(q);
          std::iota(all.begin(), all.end(), 0);
          for (const auto& set :
               {std::vector<uint32_t>{1 % q}, all,
                std::vector<uint32_t>{0, 1 % q}}) {
            std::vector<uint32_t> uniq = set;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            const ResidueSet rs(q, uniq);
            uint32_t total = 0;
            for (uint32_t c : rs.residues) total += bcs[i].omega_mult(n, c);
            const int sieved = (total & 1) ? -1 : 1;
            if (sieved != lambda_ap(n, rs)) {
              std::cerr << "MISMATCH lambda at n=" << n << " q=" << q << '\n';
              return 1;
            }
          }
        }
      }
      ++checked;
    }
  }
  std::cout << "oracle check passed: " << checked << " n in [1, " << xmax
            << "] x " << qs.size() << " moduli (q = 2.." << qmax << ")\n";
  return 0;
}

int cmd_identities(const std::string& xmax_text) {
  const uint64_t X = parse_extent(xmax_text);
  bool ok = true;

  {  // closed form of the (q=4, a=3) running sum, exhaustive
    const uint64_t cap = std::min<uint64_t>(std::max<uint64_t>(X, 2), 10'000'000);
    uint64_t bad = 0;
    ScanOptions opt;
    opt.per_n = [&](uint64_t n, const int64_t* sums) {
      if (!bad && sums[0] != static_cast<int64_t>(explicit_l43(n))) bad = n;
    };
    scan(cap, {SeriesSpec::lambda(ResidueSet(4, {3}))}, {}, 2.0, opt);
    ok &= bad == 0;
    std::cout << "L(x;4,3) closed form vs scan, x <= " << cap << ": "
              << (bad == 0 ? "ok" : "FAIL at x=" + std::to_string(bad)) << '\n';
  }

  {  // chi4 * lambda4 convolution = odd-square indicator
    uint64_t bad = 0;
    const uint64_t dense = std::min<uint64_t>(X, 2000);
    for (uint64_t x = 1; x <= dense && !bad; ++x) {
      const auto c = chi4_convolution_check(x);
      if (c.lhs != c.rhs) bad = x;
    }
    for (uint64_t x : {uint64_t{5000}, uint64_t{10000}, uint64_t{100000},
                       uint64_t{1000000}}) {
      if (bad || x > X || x > 20'000'000) break;
      const auto c = chi4_convolution_check(x);
      if (c.lhs != c.rhs) bad = x;
    }
    ok &= bad == 0;
    std::cout << "chi4 convolution vs odd squares: "
              << (bad == 0 ? "ok" : "FAIL at x=" + std::to_string(bad)) << '\n';
  }

  {  // divisor-sum closed form vs literal enumeration
    const uint64_t cap = std::min<uint64_t>(X, 10'000);
    uint64_t bad_n = 0;
    uint32_t bad_q = 0, bad_a = 0;
    for (uint32_t q = 2; q <= 6 && !bad_n; ++q)
      for (uint32_t a = 0; a < q && !bad_n; ++a) {
        const ResidueSet rs(q, {a});
        for (uint64_t n = 1; n <= cap; ++n)
          if (divisor_sum_s_closed(n, rs) != divisor_sum_s_direct(n, rs)) {
            bad_n = n;
            bad_q = q;
            bad_a = a;
            break;
          }
      }
    ok &= bad_n == 0;
    std::cout << "divisor-sum closed vs direct, n <= " << cap << ", q <= 6: "
              << (bad_n == 0
                      ? "ok"
                      : "FAIL at n=" + std::to_string(bad_n) + " q=" +
                            std::to_string(bad_q) + " a=" + std::to_string(bad_a))
              << '\n';
  }

  std::cout << (ok ? "identities: all passed\n" : "identities: FAILURES\n");
  return ok ? 0 : 1;
}

int cmd_characters(uint32_t q, const std::string& set_text) {
  const UnitGroup g = unit_group(q);
  ordered_json j;
  j["modulus"] = q;
  j["phi"] = g.units.size();
  j["generators"] = g.generators;
  j["orders"] = g.orders;
  ordered_json chars = ordered_json::array();
  for (const auto& chi : enumerate_real_characters(q)) {
    ordered_json cj;
    cj["principal"] = chi.is_principal();
    cj["values"] = std::vector<int>(chi.values.begin(), chi.values.end());
    if (!chi.is_principal())
      cj["minus_set"] = character_like_set(chi).residues;
    chars.push_back(std::move(cj));
  }
  j["real_characters"] = std::move(chars);
  if (!set_text.empty()) {
    const ResidueSet rs = parse_set(q, set_text);
    j["set"] = rs.residues;
    const auto chi = is_character_like(rs);
    j["character_like"] = chi.has_value();
    if (chi)
      j["matching_character"] =
          std::vector<int>(chi->values.begin(), chi->values.end());
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_lvalue(uint32_t q, double s, double tol, int index) {
  std::vector<DirichletCharacter> nonprin;
  for (auto& chi : enumerate_real_characters(q))
    if (!chi.is_principal()) nonprin.push_back(std::move(chi));
  if (nonprin.empty()) {
    std::cerr << "error: no non-principal real character mod " << q << '\n';
    return 2;
  }
  if (index < 0 && nonprin.size() > 1) {
    std::cerr << "error: " << nonprin.size()
              << " non-principal real characters mod " << q
              << "; pick one with --index 0.." << nonprin.size() - 1 << '\n';
    return 2;
  }
  const size_t i = index < 0 ? 0 : static_cast<size_t>(index);
  if (i >= nonprin.size()) {
    std::cerr << "error: --index out of range\n";
    return 2;
  }
  std::printf("%.12f\n", l_value(nonprin[i], s, tol));
  return 0;
}

int cmd_hist(uint32_t q, uint32_t a, const std::string& xmax_text,
             const std::string& edges_text) {
  const uint64_t xmax = parse_extent(xmax_text);
  std::vector<double> edges;
  if (!edges_text.empty()) edges = parse_edges(edges_text);
  const ErdosKacHistogram h = erdos_kac_histogram(xmax, q, a, edges);
  ordered_json j;
  j["q"] = q;
  j["a"] = a;
  j["xmax"] = xmax;
  j["edges"] = h.edges;
  j["mass"] = h.mass;
  j["ks"] = h.ks;
  j["total"] = h.total;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_correlate(uint32_t q, const std::string& set_text,
                  const std::string& xmax_text, std::vector<uint32_t> shifts,
                  uint32_t patterns_k) {
  const uint64_t xmax = parse_extent(xmax_text);
  const ResidueSet rs = parse_set(q, set_text);
  if (shifts.empty()) shifts = {0, 1};
  ordered_json j;
  j["series"] = "L;" + rs.label_fragment();
  j["xmax"] = xmax;
  j["shifts"] = shifts;
  const CorrelationResult c = correlation(xmax, rs, shifts);
  j["sum"] = c.sum;
  j["window"] = c.window;
  j["normalized"] = c.normalized;
  if (patterns_k) {
    const auto counts = sign_pattern_counts(xmax, rs, patterns_k);
    const double denom = static_cast<double>(xmax - patterns_k + 1);
    std::vector<double> freq(counts.size());
    for (size_t i = 0; i < counts.size(); ++i)
      freq[i] = static_cast<double>(counts[i]) / denom;
    j["patterns"] = {{"k", patterns_k}, {"counts", counts},
                     {"frequencies", freq}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_fit(const std::string& in, const std::string& column,
            const std::string& model, const std::string& xlo_text,
            const std::string& xhi_text, double power_exp, double log_exp) {
  const SeriesTable t = read_series_csv(in);
  const SummatorySeries s = series_from_table(t, column);
  const uint64_t xlo = parse_extent(xlo_text);
  const uint64_t xhi = parse_extent(xhi_text);
  const FitResult f = model == "sqrt"
                          ? sqrt_coefficient(s, xlo, xhi)
                          : log_power_fit(s, power_exp, log_exp, xlo, xhi);
  ordered_json j;
  j["series"] = column;
  j["model"] = f.model;
  j["coefficient"] = f.coefficients[0];
  j["residual_norm"] = f.residual_norm;
  j["x_lo"] = f.x_lo;
  j["x_hi"] = f.x_hi;
  j["points"] = f.points;
  if (std::isfinite(f.sqrt_prediction)) {
    j["reference_coefficient"] = f.sqrt_prediction;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{
      "Liouville-type functions restricted to residue classes: sieved scans "
      "of running sums, sign reports, identities, characters and L-values, "
      "distributional statistics, and asymptotic fits"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");

  ScanArgs sa;
  uint32_t combos_r = 1;

  auto add_scan_flags = [&](CLI::App* c, bool with_series_flags) {
    if (with_series_flags) {
      c->add_option("--q", sa.q, "modulus for --set/--omega/--Omega");
      c->add_option("--set", sa.sets,
                    "lambda-series residue set, e.g. \"1,2\" (repeatable; one "
                    "series per occurrence)");
      c->add_option("--omega", sa.omegas,
                    "omega(n;q,a) series for class a (repeatable)");
      c->add_option("--Omega", sa.big_omegas,
                    "Omega(n;q,a) series for class a (repeatable)");
      c->add_flag("--classical", sa.classical,
                  "classical Liouville running sum");
      c->add_option("--progression", sa.progressions,
                    "classical lambda over n = P (mod Q), written Q:P "
                    "(repeatable)");
    } else {
      c->add_option("--q", sa.q, "modulus")->required();
    }
    c->add_option("--xmax", sa.xmax_text, "scan limit (accepts 1e9)")
        ->required();
    c->add_option("--block-size", sa.block_text, "sieve block length");
    c->add_option("--workers", sa.workers, "sieve worker threads");
    c->add_option("--checkpoint-ratio", sa.ratio,
                  "geometric grid ratio for CSV rows");
    c->add_option("--out", sa.out, "CSV output path")->required();
    c->add_option("--report", sa.report,
                  "sign-report JSON path (default: <out>.report.json)");
    c->add_option("--memory-budget", sa.budget_text, "scan memory cap, bytes");
    c->add_option("--progress-every", sa.progress_every,
                  "blocks between persistence points");
    if (with_series_flags)
      c->add_option("--checkpoint", sa.checkpoint,
                    "checkpoint file; resumes when it already exists");
    c->add_option("--stop-after", sa.stop_after,
                  "stop after this many persistence points")
        ->group("");
  };

  CLI::App* c_scan = app.add_subcommand(
      "scan", "scan running sums to a CSV grid plus a sign report");
  add_scan_flags(c_scan, true);

  CLI::App* c_combos = app.add_subcommand(
      "combos",
      "scan every size-r set of coprime classes mod q in one sieve pass");
  add_scan_flags(c_combos, false);
  c_combos->add_option("--r", combos_r, "residue-set size")->required();

  std::string oc_xmax = "1e5";
  uint32_t oc_qmax = 12;
  CLI::App* c_oracle = app.add_subcommand(
      "oracle-check",
      "verify the sieve against per-n factorization for all small moduli");
  c_oracle->add_option("--xmax", oc_xmax, "largest n checked");
  c_oracle->add_option("--qmax", oc_qmax, "largest modulus checked");

  std::string id_xmax = "1e6";
  CLI::App* c_ident = app.add_subcommand(
      "identities",
      "exact cross-checks: closed forms, convolution, divisor sums");
  c_ident->add_option("--xmax", id_xmax, "limit for the exhaustive checks");

  uint32_t ch_q = 0;
  std::string ch_set;
  CLI::App* c_chars = app.add_subcommand(
      "characters", "unit group and real characters mod q, as JSON");
  c_chars->add_option("--q", ch_q, "modulus")->required();
  c_chars->add_option("--set", ch_set,
                      "also test this residue set for character likeness");

  uint32_t lv_q = 0;
  double lv_s = 1.0, lv_tol = 1e-10;
  int lv_index = -1;
  CLI::App* c_lvalue = app.add_subcommand(
      "lvalue", "L(s, chi) for a real non-principal character mod q");
  c_lvalue->add_option("--q", lv_q, "modulus")->required();
  c_lvalue->add_option("--s", lv_s, "evaluation point, 0 < s <= 2")
      ->required();
  c_lvalue->add_option("--tol", lv_tol, "absolute error bound");
  c_lvalue->add_option("--index", lv_index,
                       "which non-principal character (order as printed by "
                       "the characters subcommand)");

  uint32_t h_q = 0, h_a = 0;
  std::string h_xmax, h_edges;
  CLI::App* c_hist = app.add_subcommand(
      "hist",
      "distribution of the standardized prime-factor count omega(n;q,a)");
  c_hist->add_option("--q", h_q, "modulus")->required();
  c_hist->add_option("--a", h_a, "residue class")->required();
  c_hist->add_option("--xmax", h_xmax, "sample limit")->required();
  c_hist->add_option("--edges", h_edges,
                     "comma-separated bin edges (default -4,-3.5,...,4)");

  uint32_t co_q = 0, co_patterns = 0;
  std::string co_set, co_xmax;
  std::vector<uint32_t> co_shifts;
  CLI::App* c_corr = app.add_subcommand(
      "correlate", "shifted products of lambda values and sign patterns");
  c_corr->add_option("--q", co_q, "modulus")->required();
  c_corr->add_option("--set", co_set, "residue set")->required();
  c_corr->add_option("--xmax", co_xmax, "sum limit")->required();
  c_corr->add_option("--shift", co_shifts, "shift h (repeatable; default 0 1)");
  c_corr->add_option("--patterns", co_patterns,
                     "also count length-k sign patterns (1 <= k <= 4)")
      ->check(CLI::Range(1, 4));

  std::string f_in, f_column, f_model, f_xlo = "1", f_xhi;
  double f_pe = 1.0, f_le = 0.0;
  CLI::App* c_fit = app.add_subcommand(
      "fit", "least-squares coefficient for a scanned series column");
  c_fit->add_option("--in", f_in, "series CSV path")->required();
  c_fit->add_option("--column", f_column, "series label in the CSV")
      ->required();
  c_fit->add_option("--model", f_model, "sqrt | logpow")
      ->required()
      ->check(CLI::IsMember({"sqrt", "logpow"}));
  c_fit->add_option("--xlo", f_xlo, "fit range lower bound");
  c_fit->add_option("--xhi", f_xhi, "fit range upper bound")->required();
  c_fit->add_option("--power-exp", f_pe, "x exponent (logpow model)");
  c_fit->add_option("--log-exp", f_le, "log x exponent (logpow model)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("lap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_scan)) return cmd_scan(sa);
    if (app.got_subcommand(c_combos)) return cmd_combos(sa, combos_r);
    if (app.got_subcommand(c_oracle)) return cmd_oracle_check(oc_xmax, oc_qmax);
    if (app.got_subcommand(c_ident)) return cmd_identities(id_xmax);
    if (app.got_subcommand(c_chars)) return cmd_characters(ch_q, ch_set);
    if (app.got_subcommand(c_lvalue))
      return cmd_lvalue(lv_q, lv_s, lv_tol, lv_index);
    if (app.got_subcommand(c_hist)) return cmd_hist(h_q, h_a, h_xmax, h_edges);
    if (app.got_subcommand(c_corr))
      return cmd_correlate(co_q, co_set, co_xmax, co_shifts, co_patterns);
    if (app.got_subcommand(c_fit))
      return cmd_fit(f_in, f_column, f_model, f_xlo, f_xhi, f_pe, f_le);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lap
