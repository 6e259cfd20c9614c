#pragma once

#include "neorl/runner/run_log.hpp"

#include <fstream>
#include <string>
#include <string_view>

namespace neorl::cli {

inline constexpr std::string_view kRunCsvHeader = "t,cost,cum_cost,regret,avg_cost,episode,did_reset";

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
// Whole-string parse; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);
long parse_long(std::string_view text);

std::string format_row(const runner::StepRecord& r);

void write_run_csv(const std::string& path, const runner::RunLog& log);
// Reads the step columns back; reset_count is recomputed from did_reset.
runner::RunLog read_run_csv(const std::string& path);

// Appends rows as a run progresses so an interrupted run keeps its prefix.
class RunCsvWriter {
 public:
  explicit RunCsvWriter(const std::string& path);
  // Writes the rows of log not yet written and flushes.
  void sync(const runner::RunLog& log);
  std::size_t rows_written() const { return written_; }

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t written_ = 0;
};

}  // namespace neorl::cli
