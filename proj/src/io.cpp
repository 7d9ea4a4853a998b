#include "lap/io.hpp"

#include <cerrno>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lap {

namespace {

bool starts_label(const std::string& tok) {
  return tok.rfind("L;", 0) == 0 || tok.rfind("omega;", 0) == 0 ||
         tok.rfind("Omega;", 0) == 0 || tok.rfind("Lclassical", 0) == 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

int64_t parse_i64(const std::string& tok, const char* what) {
  int64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw std::runtime_error(std::string("malformed ") + what + ": '" + tok +
                             "'");
  return v;
}

uint64_t parse_u64(const std::string& tok, const char* what) {
  uint64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw std::runtime_error(std::string("malformed ") + what + ": '" + tok +
                             "'");
  return v;
}

}  // namespace

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& labels, bool append)
    : impl_(std::make_shared<Impl>()) {
  impl_->out.open(path, append ? (std::ios::out | std::ios::app)
                               : std::ios::out | std::ios::trunc);
  if (!impl_->out)
    throw std::runtime_error("cannot open for writing: " + path);
  if (!append) {
    impl_->out << 'x';
    for (const auto& l : labels) impl_->out << ',' << l;
    impl_->out << '\n';
  }
}

void CsvWriter::row(uint64_t x, const std::vector<int64_t>& values) {
  impl_->out << x;
  for (int64_t v : values) impl_->out << ',' << v;
  impl_->out << '\n';
  if (!impl_->out) throw std::runtime_error("csv write failed");
}

void CsvWriter::flush() { impl_->out.flush(); }

std::vector<std::string> parse_csv_header_labels(const std::string& header) {
  const auto toks = split(header, ',');
  if (toks.empty() || toks[0] != "x")
    throw std::runtime_error("csv header must start with 'x'");
  std::vector<std::string> labels;
  for (size_t i = 1; i < toks.size(); ++i) {
    if (starts_label(toks[i])) {
      labels.push_back(toks[i]);
    } else {
      // continuation of a comma-carrying residue-set label
      if (labels.empty())
        throw std::runtime_error("csv header: unrecognized label start '" +
                                 toks[i] + "'");
      labels.back() += ',' + toks[i];
    }
  }
  return labels;
}

SeriesTable read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  SeriesTable t;
  t.labels = parse_csv_header_labels(line);
  t.columns.resize(t.labels.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto toks = split(line, ',');
    if (toks.size() != t.labels.size() + 1)
      throw std::runtime_error("csv row has " + std::to_string(toks.size()) +
                               " fields, expected " +
                               std::to_string(t.labels.size() + 1));
    t.xs.push_back(parse_u64(toks[0], "csv x"));
    for (size_t j = 0; j < t.labels.size(); ++j)
      t.columns[j].push_back(parse_i64(toks[j + 1], "csv value"));
  }
  return t;
}

void write_series_csv(const std::string& path,
                      const std::vector<SummatorySeries>& series) {
  std::vector<std::string> labels;
  labels.reserve(series.size());
  for (const auto& s : series) labels.push_back(s.label);
  CsvWriter w(path, labels, false);
  const size_t rows = series.empty() ? 0 : series[0].checkpoints.size();
  for (const auto& s : series)
    if (s.checkpoints.size() != rows)
      throw std::runtime_error("series have unequal checkpoint grids");
  std::vector<int64_t> vals(series.size());
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < series.size(); ++j) {
      if (j && series[j].checkpoints[i].x != series[0].checkpoints[i].x)
        throw std::runtime_error("series have unequal checkpoint grids");
      vals[j] = series[j].checkpoints[i].value;
    }
    w.row(series[0].checkpoints[i].x, vals);
  }
  w.flush();
}

SummatorySeries series_from_table(const SeriesTable& t,
                                  const std::string& label) {
  size_t j = t.labels.size();
  for (size_t i = 0; i < t.labels.size(); ++i)
    if (t.labels[i] == label) {
      j = i;
      break;
    }
  if (j == t.labels.size())
    throw std::runtime_error("label not in csv: " + label);
  SummatorySeries s;
  s.label = label;
  s.checkpoints.reserve(t.xs.size());
  for (size_t i = 0; i < t.xs.size(); ++i)
    s.checkpoints.push_back({t.xs[i], t.columns[j][i]});
  if (!t.xs.empty()) {
    s.xmax = t.xs.back();
    s.final_value = t.columns[j].back();
  }
  return s;
}

namespace {

nlohmann::ordered_json report_to_json(const SignReport& r) {
  nlohmann::ordered_json j;
  j["series"] = r.series;
  j["xmax"] = r.xmax;
  if (r.first_sign_change)
    j["first_sign_change"] = *r.first_sign_change;
  else
    j["first_sign_change"] = nullptr;
  j["sign_changes"] = r.sign_changes;
  j["max"] = {{"x", r.max_x}, {"value", r.max_value}};
  j["min"] = {{"x", r.min_x}, {"value", r.min_value}};
  return j;
}

}  // namespace

std::string sign_report_json(const SignReport& r) {
  return report_to_json(r).dump(2) + "\n";
}

std::string sign_reports_json(const std::vector<SignReport>& rs) {
  if (rs.size() == 1) return sign_report_json(rs[0]);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

void write_checkpoint(const std::string& path, const CheckpointFile& c) {
  std::ostringstream os;
  os << "LAPCHK v1\n";
  char ratio[64];
  std::snprintf(ratio, sizeof ratio, "%.17g", c.ratio);
  os << "config xmax=" << c.xmax << " modulus=" << c.modulus
     << " block=" << c.block_size << " ratio=" << ratio << '\n';
  for (const auto& s : c.series) {
    os << s.label << '\t' << c.end << '\t' << s.sum << '\t'
       << s.sign_change_count << '\t';
    if (s.first_sign_change)
      os << s.first_sign_change;
    else
      os << '-';
    os << '\t' << s.max_x << '\t' << s.max_value << '\t' << s.min_x << '\t'
       << s.min_value << '\n';
  }
  atomic_write_file(path, os.str());
}

CheckpointFile read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "LAPCHK v1")
    throw std::runtime_error("not a LAPCHK v1 checkpoint: " + path);
  if (!std::getline(in, line) || line.rfind("config ", 0) != 0)
    throw std::runtime_error("checkpoint missing config line");
  CheckpointFile c;
  {
    bool saw_xmax = false, saw_mod = false, saw_block = false,
         saw_ratio = false;
    for (const auto& kv : split(line.substr(7), ' ')) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("checkpoint config entry without '=': " + kv);
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "xmax") {
        c.xmax = parse_u64(val, "checkpoint xmax");
        saw_xmax = true;
      } else if (key == "modulus") {
        c.modulus = static_cast<uint32_t>(parse_u64(val, "checkpoint modulus"));
        saw_mod = true;
      } else if (key == "block") {
        c.block_size = parse_u64(val, "checkpoint block");
        saw_block = true;
      } else if (key == "ratio") {
        char* endp = nullptr;
        c.ratio = std::strtod(val.c_str(), &endp);
        if (endp != val.c_str() + val.size() || !(c.ratio > 0))
          throw std::runtime_error("malformed checkpoint ratio: " + val);
        saw_ratio = true;
      } else {
        throw std::runtime_error("unknown checkpoint config key: " + key);
      }
    }
    if (!(saw_xmax && saw_mod && saw_block && saw_ratio))
      throw std::runtime_error("checkpoint config line incomplete");
  }
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() != 9)
      throw std::runtime_error("checkpoint record has " +
                               std::to_string(f.size()) +
                               " fields, expected 9");
    const uint64_t end = parse_u64(f[1], "checkpoint end");
    if (first) {
      c.end = end;
      first = false;
    } else if (end != c.end) {
      throw std::runtime_error("checkpoint records disagree on progress");
    }
    SeriesProgress s;
    s.label = f[0];
    s.sum = parse_i64(f[2], "checkpoint sum");
    s.sign_change_count = parse_u64(f[3], "checkpoint change count");
    s.first_sign_change = f[4] == "-" ? 0 : parse_u64(f[4], "first change");
    s.max_x = parse_u64(f[5], "checkpoint max x");
    s.max_value = parse_i64(f[6], "checkpoint max value");
    s.min_x = parse_u64(f[7], "checkpoint min x");
    s.min_value = parse_i64(f[8], "checkpoint min value");
    s.carried_sign = 0;  // derived on resume from the fields above
    c.series.push_back(std::move(s));
  }
  if (c.series.empty())
    throw std::runtime_error("checkpoint has no series records");
  return c;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::out | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
  }
}

uint64_t parse_extent(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  bool digits_only = true;
  for (char ch : text)
    if (ch < '0' || ch > '9') {
      digits_only = false;
      break;
    }
  if (digits_only) {
    uint64_t v = 0;
    const auto [p, ec] =
        std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
      throw std::invalid_argument("number out of range: " + text);
    return v;
  }
  char* endp = nullptr;
  errno = 0;
  const long double v = std::strtold(text.c_str(), &endp);
  if (endp != text.c_str() + text.size() || errno == ERANGE)
    throw std::invalid_argument("not a number: " + text);
  if (!(v >= 0) || v > 9223372036854775807.0L)
    throw std::invalid_argument("number out of range: " + text);
  if (std::floor(v) != v)
    throw std::invalid_argument("not an exact integer: " + text);
  return static_cast<uint64_t>(v);
}

}  // namespace lap
