#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/joint_table.hpp"

namespace respkit {

// One recorded interaction. y_values aligns with EventLog::y_columns.
struct EventRecord {
  long long trial = 0;
  std::vector<std::string> y_values;
  std::string z;
  std::optional<double> e;
  std::optional<std::string> state;  // ground truth, "signal" or "noise"
  std::optional<std::string> x_s;    // human-selected action

  bool operator==(const EventRecord&) const = default;
};

// A loaded interaction log. Every record carries values for the same set of
// y_ condition columns, in header order.
struct EventLog {
  std::vector<std::string> y_columns;
  bool has_e = false;
  bool has_state = false;
  bool has_x_s = false;
  std::vector<EventRecord> records;

  std::size_t size() const { return records.size(); }
  bool operator==(const EventLog&) const = default;
};

// CSV dialect: comma-separated, first row header, UTF-8, '.' decimal point,
// no quoting. Columns: required `z`, one or more `y_*` condition columns,
// optional `trial`, `e`, `state`, `x_s`. Any other column is rejected by
// name, so a column can never be silently dropped from the conditioning set.
// Rows with the wrong field count are reported with their row numbers.
// A `trial` column must be strictly increasing; without one, trials are
// numbered 1..n.
EventLog load_events(const std::string& path);
EventLog parse_events_csv(const std::string& text);

// Writes the schema above; `e` uses %.17g so a write/load round trip
// reproduces records exactly.
void write_events_csv(const EventLog& log, const std::string& path);
std::string events_to_csv(const EventLog& log);

// Joint (y-tuple, z) counts over records at positions >= burn_in, further
// restricted to absolute positions [window.first, window.second) when given.
// Throws DomainError("empty selection") when nothing remains.
JointTable build_joint(
    const EventLog& log, std::size_t burn_in,
    std::optional<std::pair<std::size_t, std::size_t>> window = std::nullopt);

struct LogRespReport {
  double resp_z = 0.0;
  double h_z_bits = 0.0;
  double h_z_given_y_bits = 0.0;
  std::size_t n_events = 0;
  std::size_t burn_in = 0;
};

// Average responsibility of the log after burn-in: H(Z|Y)/H(Z) over the
// empirical joint table, optionally add-alpha smoothed (alpha = 0 keeps the
// plain plug-in estimate).
LogRespReport resp_from_log(const EventLog& log, std::size_t burn_in,
                            double alpha = 0.0);

// One sliding-window estimate; resp is empty for windows whose outcome
// column is constant (H(Z) = 0), so a diagnostic series survives boring
// stretches instead of erroring out.
struct SeriesPoint {
  std::size_t start = 0;  // absolute record position of the window start
  std::optional<double> resp;
};

// Sliding-window responsibility series over the post-burn-in records:
// windows of `window_size` records every `stride` records, as a
// stationarity diagnostic. window_size must be >= 2 and fit into the
// post-burn-in log.
std::vector<SeriesPoint> resp_series(const EventLog& log, std::size_t burn_in,
                                     std::size_t window_size,
                                     std::size_t stride, double alpha = 0.0);

// Report JSON with fixed keys resp_z, h_z_bits, h_z_given_y_bits, n_events,
// burn_in, plus a series array of {start, resp_z} when `window` is given.
struct WindowSpec {
  std::size_t window_size = 0;
  std::size_t stride = 1;
};
std::string log_report_json(const EventLog& log, std::size_t burn_in,
                            std::optional<WindowSpec> window,
                            double alpha = 0.0);

}  // namespace respkit
