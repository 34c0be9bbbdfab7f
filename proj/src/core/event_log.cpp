#include "core/event_log.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/info_metrics.hpp"
#include "core/responsibility.hpp"

namespace respkit {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_double_field(const std::string& field, std::size_t row,
                          const char* column) {
  double value = 0.0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                 value);
  if (ec != std::errc() || p != field.data() + field.size()) {
    std::ostringstream msg;
    msg << "row " << row << ": non-numeric value \"" << field
        << "\" for column \"" << column << "\"";
    throw ParseError(msg.str());
  }
  return value;
}

long long parse_int_field(const std::string& field, std::size_t row,
                          const char* column) {
  long long value = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                 value);
  if (ec != std::errc() || p != field.data() + field.size()) {
    std::ostringstream msg;
    msg << "row " << row << ": non-integer value \"" << field
        << "\" for column \"" << column << "\"";
    throw ParseError(msg.str());
  }
  return value;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

EventLog parse_events_csv(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  if (lines.empty()) {
    throw ParseError("event log: empty file");
  }

  std::vector<std::string> header = split_csv_line(lines[0]);
  int col_trial = -1, col_z = -1, col_e = -1, col_state = -1, col_xs = -1;
  std::vector<std::pair<int, std::string>> y_cols;  // (index, name)
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& name = header[i];
    int idx = static_cast<int>(i);
    int* slot = nullptr;
    if (name == "trial") slot = &col_trial;
    else if (name == "z") slot = &col_z;
    else if (name == "e") slot = &col_e;
    else if (name == "state") slot = &col_state;
    else if (name == "x_s") slot = &col_xs;
    else if (name.starts_with("y_") && name.size() > 2) {
      for (const auto& [j, existing] : y_cols) {
        if (existing == name) {
          throw ParseError("event log: duplicate column \"" + name + "\"");
        }
      }
      y_cols.emplace_back(idx, name);
      continue;
    } else {
      throw ParseError("event log: unknown column \"" + name + "\"");
    }
    if (*slot >= 0) {
      throw ParseError("event log: duplicate column \"" + name + "\"");
    }
    *slot = idx;
  }
  if (col_z < 0) {
    throw ParseError("event log: missing required column \"z\"");
  }
  if (y_cols.empty()) {
    throw ParseError("event log: at least one y_ condition column required");
  }

  EventLog log;
  for (const auto& [idx, name] : y_cols) log.y_columns.push_back(name);
  log.has_e = col_e >= 0;
  log.has_state = col_state >= 0;
  log.has_x_s = col_xs >= 0;

  // First pass: rows with the wrong field count, reported together.
  std::vector<std::size_t> malformed;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty() && r + 1 == lines.size()) break;  // trailing newline
    if (split_csv_line(lines[r]).size() != header.size()) {
      malformed.push_back(r + 1);  // 1-based, header is row 1
    }
  }
  if (!malformed.empty()) {
    std::ostringstream msg;
    msg << "event log: malformed rows (wrong field count):";
    std::size_t shown = std::min<std::size_t>(malformed.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) msg << ' ' << malformed[i];
    if (malformed.size() > shown) {
      msg << " (+" << malformed.size() - shown << " more)";
    }
    throw ParseError(msg.str());
  }

  long long prev_trial = 0;
  bool have_prev = false;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty() && r + 1 == lines.size()) break;
    std::vector<std::string> fields = split_csv_line(lines[r]);
    std::size_t row = r + 1;

    EventRecord rec;
    rec.trial = col_trial >= 0
                    ? parse_int_field(fields[col_trial], row, "trial")
                    : static_cast<long long>(r);
    if (col_trial >= 0) {
      if (have_prev && rec.trial <= prev_trial) {
        std::ostringstream msg;
        msg << "row " << row << ": trial index " << rec.trial
            << " not strictly increasing (previous " << prev_trial << ")";
        throw ParseError(msg.str());
      }
      prev_trial = rec.trial;
      have_prev = true;
    }
    for (const auto& [idx, name] : y_cols) {
      if (fields[idx].empty()) {
        std::ostringstream msg;
        msg << "row " << row << ": empty value for column \"" << name << "\"";
        throw ParseError(msg.str());
      }
      rec.y_values.push_back(fields[idx]);
    }
    rec.z = fields[col_z];
    if (rec.z.empty()) {
      std::ostringstream msg;
      msg << "row " << row << ": empty value for column \"z\"";
      throw ParseError(msg.str());
    }
    if (col_e >= 0) rec.e = parse_double_field(fields[col_e], row, "e");
    if (col_state >= 0) {
      const std::string& s = fields[col_state];
      if (s != "signal" && s != "noise") {
        std::ostringstream msg;
        msg << "row " << row << ": column \"state\" must be \"signal\" or "
            << "\"noise\", got \"" << s << "\"";
        throw ParseError(msg.str());
      }
      rec.state = s;
    }
    if (col_xs >= 0) rec.x_s = fields[col_xs];
    log.records.push_back(std::move(rec));
  }
  return log;
}

EventLog load_events(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open event log \"" + path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_events_csv(buf.str());
}

std::string events_to_csv(const EventLog& log) {
  std::ostringstream out;
  out << "trial";
  for (const auto& name : log.y_columns) out << ',' << name;
  if (log.has_e) out << ",e";
  if (log.has_state) out << ",state";
  if (log.has_x_s) out << ",x_s";
  out << ",z\n";
  for (const auto& rec : log.records) {
    out << rec.trial;
    for (const auto& y : rec.y_values) out << ',' << y;
    if (log.has_e) out << ',' << format_double(rec.e.value());
    if (log.has_state) out << ',' << rec.state.value();
    if (log.has_x_s) out << ',' << rec.x_s.value();
    out << ',' << rec.z << '\n';
  }
  return out.str();
}

void write_events_csv(const EventLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open \"" + path + "\" for writing");
  }
  out << events_to_csv(log);
  if (!out) {
    throw IoError("failed writing event log \"" + path + "\"");
  }
}

JointTable build_joint(
    const EventLog& log, std::size_t burn_in,
    std::optional<std::pair<std::size_t, std::size_t>> window) {
  if (burn_in >= log.size()) {
    throw DomainError("empty selection: burn-in consumes the whole log");
  }
  std::size_t first = burn_in;
  std::size_t last = log.size();
  if (window) {
    first = std::max(first, window->first);
    last = std::min(last, window->second);
  }
  if (first >= last) {
    throw DomainError("empty selection");
  }
  JointTable table(log.y_columns, "z");
  for (std::size_t i = first; i < last; ++i) {
    table.add(log.records[i].y_values, log.records[i].z, 1.0);
  }
  return table;
}

LogRespReport resp_from_log(const EventLog& log, std::size_t burn_in,
                            double alpha) {
  JointTable table = build_joint(log, burn_in);
  std::size_t n = log.size() - burn_in;
  if (alpha > 0.0) table = add_alpha_smoothing(table, alpha);
  RespAverage avg = resp_average(table);
  return LogRespReport{avg.resp, avg.h_outcome, avg.h_conditional, n, burn_in};
}

std::vector<SeriesPoint> resp_series(const EventLog& log, std::size_t burn_in,
                                     std::size_t window_size,
                                     std::size_t stride, double alpha) {
  if (window_size < 2) {
    throw InvalidArgument("resp_series: window size must be >= 2");
  }
  if (stride < 1) {
    throw InvalidArgument("resp_series: stride must be >= 1");
  }
  if (burn_in >= log.size()) {
    throw DomainError("empty selection: burn-in consumes the whole log");
  }
  if (window_size > log.size() - burn_in) {
    throw DomainError("resp_series: window larger than the post-burn-in log");
  }
  std::vector<SeriesPoint> series;
  for (std::size_t start = burn_in; start + window_size <= log.size();
       start += stride) {
    JointTable table = build_joint(log, 0, {{start, start + window_size}});
    if (alpha > 0.0) table = add_alpha_smoothing(table, alpha);
    SeriesPoint point{start, std::nullopt};
    if (outcome_entropy(table) > 0.0) {
      point.resp = resp_average(table).resp;
    }
    series.push_back(point);
  }
  return series;
}

std::string log_report_json(const EventLog& log, std::size_t burn_in,
                            std::optional<WindowSpec> window, double alpha) {
  LogRespReport report = resp_from_log(log, burn_in, alpha);
  json root;
  root["resp_z"] = report.resp_z;
  root["h_z_bits"] = report.h_z_bits;
  root["h_z_given_y_bits"] = report.h_z_given_y_bits;
  root["n_events"] = report.n_events;
  root["burn_in"] = report.burn_in;
  if (window) {
    json series = json::array();
    for (const SeriesPoint& p :
         resp_series(log, burn_in, window->window_size, window->stride,
                     alpha)) {
      json point;
      point["start"] = p.start;
      if (p.resp) {
        point["resp_z"] = *p.resp;
      } else {
        point["resp_z"] = nullptr;
      }
      series.push_back(point);
    }
    root["series"] = series;
  }
  return root.dump();
}

}  // namespace respkit
