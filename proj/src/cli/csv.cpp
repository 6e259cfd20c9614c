#include "neorl/cli/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace neorl::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long parse_long(std::string_view text) {
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::string format_row(const runner::StepRecord& r) {
  std::string row = std::to_string(r.t);
  for (double v : {r.cost, r.cum_cost, r.regret, r.avg_cost}) {
    row += ',';
    row += format_double(v);
  }
  row += ',' + std::to_string(r.episode) + ',' + (r.did_reset ? "1" : "0");
  return row;
}

void write_run_csv(const std::string& path, const runner::RunLog& log) {
  RunCsvWriter writer(path);
  writer.sync(log);
}

runner::RunLog read_run_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader) {
    throw std::runtime_error(path + ": missing or unexpected header");
  }
  runner::RunLog log;
  long lineno = 1;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    fields.clear();
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      fields.push_back(rest.substr(0, pos));
    }
    fields.push_back(rest);
    if (fields.size() != 7) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 7 columns");
    }
    try {
      runner::StepRecord r;
      r.t = parse_long(fields[0]);
      r.cost = parse_double(fields[1]);
      r.cum_cost = parse_double(fields[2]);
      r.regret = parse_double(fields[3]);
      r.avg_cost = parse_double(fields[4]);
      r.episode = parse_long(fields[5]);
      const long reset = parse_long(fields[6]);
      if (reset != 0 && reset != 1) throw std::invalid_argument("did_reset must be 0 or 1");
      r.did_reset = reset == 1;
      if (r.did_reset) ++log.reset_count;
      log.steps.push_back(r);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return log;
}

RunCsvWriter::RunCsvWriter(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path);
  out_ << kRunCsvHeader << '\n';
  out_.flush();
}

void RunCsvWriter::sync(const runner::RunLog& log) {
  for (; written_ < log.steps.size(); ++written_) out_ << format_row(log.steps[written_]) << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_);
}

}  // namespace neorl::cli
