#include "core/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/responsibility.hpp"

namespace respkit {

namespace {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double parse_double(const std::string& field, std::size_t row) {
  double value = 0.0;
  auto [p, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || p != field.data() + field.size()) {
    std::ostringstream msg;
    msg << "sweep csv: row " << row << ": non-numeric field \"" << field
        << "\"";
    throw ParseError(msg.str());
  }
  return value;
}

constexpr const char* kCsvHeader =
    "e,d_human,d_system,resp_xa,rsnble_accept,rsnble_reject";

// Linear sRGB ramp from #ffffff at 0 to #08306b at 1.
std::string ramp_color(double v) {
  v = std::clamp(v, 0.0, 1.0);
  auto channel = [v](int hi, int lo) {
    return static_cast<int>(std::lround(hi + v * (lo - hi)));
  };
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", channel(255, 0x08),
                channel(255, 0x30), channel(255, 0x6b));
  return buf;
}

struct Slice {
  double e = 0.0;
  std::vector<double> d_human;   // column coordinates, in grid order
  std::vector<double> d_system;  // row coordinates, in grid order
  std::vector<const SweepCell*> cells;  // row-major, d_human fastest
};

std::vector<Slice> slice_by_e(const std::vector<SweepCell>& grid) {
  std::vector<Slice> slices;
  for (const SweepCell& cell : grid) {
    if (slices.empty() || slices.back().e != cell.e) {
      slices.push_back(Slice{cell.e, {}, {}, {}});
    }
    Slice& s = slices.back();
    if (s.d_system.empty() || s.d_system.back() != cell.d_system) {
      s.d_system.push_back(cell.d_system);
    }
    if (s.d_system.size() == 1) {
      s.d_human.push_back(cell.d_human);
    }
    s.cells.push_back(&cell);
  }
  for (const Slice& s : slices) {
    if (s.cells.size() != s.d_human.size() * s.d_system.size()) {
      throw InvalidArgument("sweep grid is not rectangular");
    }
  }
  return slices;
}

}  // namespace

void SweepRange::validate(const char* name) const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw InvalidArgument(std::string("sweep range ") + name +
                          ": min must be below max");
  }
  if (steps < 2) {
    throw InvalidArgument(std::string("sweep range ") + name +
                          ": at least 2 steps required");
  }
}

double SweepRange::value(std::size_t i) const {
  return min + static_cast<double>(i) * (max - min) /
                   static_cast<double>(steps - 1);
}

void SweepSpec::validate() const {
  d_human.validate("d_human");
  d_system.validate("d_system");
  if (e_values.empty()) {
    throw InvalidArgument("sweep: at least one observed value required");
  }
  for (double e : e_values) {
    if (!std::isfinite(e)) {
      throw InvalidArgument("sweep: observed values must be finite");
    }
  }
}

std::vector<SweepCell> sweep(const Scenario& base, const SweepSpec& spec) {
  base.validate();
  spec.validate();
  std::vector<SweepCell> grid;
  grid.reserve(spec.e_values.size() * spec.d_system.steps *
               spec.d_human.steps);
  for (double e : spec.e_values) {
    for (std::size_t is = 0; is < spec.d_system.steps; ++is) {
      for (std::size_t ih = 0; ih < spec.d_human.steps; ++ih) {
        Scenario scenario = base;
        scenario.d_prime_human = spec.d_human.value(ih);
        scenario.d_prime_system = spec.d_system.value(is);
        try {
          AnalysisReport report =
              analyze_event(scenario, spec.system_output, e);
          grid.push_back(SweepCell{
              e, scenario.d_prime_human, scenario.d_prime_system,
              report.resp_information, report.reasonability.at(kActionAccept),
              report.reasonability.at(kActionReject)});
        } catch (const Error& err) {
          std::ostringstream msg;
          msg << "sweep cell (e=" << fmt_short(e)
              << ", d_human=" << fmt_short(scenario.d_prime_human)
              << ", d_system=" << fmt_short(scenario.d_prime_system)
              << "): " << err.what();
          throw DomainError(msg.str());
        }
      }
    }
  }
  return grid;
}

std::string sweep_to_csv(const std::vector<SweepCell>& grid) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const SweepCell& c : grid) {
    out << fmt_full(c.e) << ',' << fmt_full(c.d_human) << ','
        << fmt_full(c.d_system) << ',' << fmt_full(c.resp_xa) << ','
        << fmt_full(c.rsnble_accept) << ',' << fmt_full(c.rsnble_reject)
        << '\n';
  }
  return out.str();
}

void write_sweep_csv(const std::vector<SweepCell>& grid,
                     const std::string& path) {
  if (grid.empty()) {
    throw InvalidArgument("sweep: refusing to write an empty grid");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open \"" + path + "\" for writing");
  }
  out << sweep_to_csv(grid);
  if (!out) {
    throw IoError("failed writing sweep csv \"" + path + "\"");
  }
}

std::vector<SweepCell> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("sweep csv: empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw ParseError("sweep csv: unexpected header \"" + line + "\"");
  }
  std::vector<SweepCell> grid;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
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
    if (fields.size() != 6) {
      std::ostringstream msg;
      msg << "sweep csv: row " << row << ": expected 6 fields, got "
          << fields.size();
      throw ParseError(msg.str());
    }
    grid.push_back(SweepCell{
        parse_double(fields[0], row), parse_double(fields[1], row),
        parse_double(fields[2], row), parse_double(fields[3], row),
        parse_double(fields[4], row), parse_double(fields[5], row)});
  }
  return grid;
}

std::vector<SweepCell> load_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open sweep csv \"" + path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_csv(buf.str());
}

std::string sweep_slice_svg(const std::vector<SweepCell>& grid, double e) {
  std::vector<Slice> slices = slice_by_e(grid);
  const Slice* slice = nullptr;
  for (const Slice& s : slices) {
    if (s.e == e) {
      slice = &s;
      break;
    }
  }
  if (slice == nullptr) {
    throw InvalidArgument("sweep svg: no cells with e = " + fmt_short(e));
  }

  constexpr int kCell = 8;
  constexpr int kLeft = 50;
  constexpr int kTop = 30;
  constexpr int kBottom = 42;
  constexpr int kRight = 16;
  const int cols = static_cast<int>(slice->d_human.size());
  const int rows = static_cast<int>(slice->d_system.size());
  const int width = kLeft + cols * kCell + kRight;
  const int height = kTop + rows * kCell + kBottom;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "  <text x=\"" << kLeft << "\" y=\"18\" font-family=\"sans-serif\" "
      << "font-size=\"12\">resp(x_a), e = " << fmt_short(e) << "</text>\n";

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const SweepCell* cell = slice->cells[static_cast<std::size_t>(r) *
                                               static_cast<std::size_t>(cols) +
                                           static_cast<std::size_t>(c)];
      out << "  <rect x=\"" << kLeft + c * kCell << "\" y=\""
          << kTop + r * kCell << "\" width=\"" << kCell << "\" height=\""
          << kCell << "\" fill=\"" << ramp_color(cell->resp_xa) << "\"/>\n";
    }
  }

  // Tick labels every 0.6 sensitivity units along both axes.
  auto emit_ticks = [&](const std::vector<double>& coords, bool horizontal) {
    double lo = coords.front();
    double hi = coords.back();
    int k_min = static_cast<int>(std::ceil(lo / 0.6 - 1e-9));
    int k_max = static_cast<int>(std::floor(hi / 0.6 + 1e-9));
    for (int k = k_min; k <= k_max; ++k) {
      double t = 0.6 * k;
      double frac = (t - lo) / (hi - lo);
      double along =
          frac * ((horizontal ? cols : rows) - 1) * kCell + kCell / 2.0;
      if (horizontal) {
        out << "  <text x=\"" << fmt_short(kLeft + along) << "\" y=\""
            << kTop + rows * kCell + 14
            << "\" font-family=\"sans-serif\" font-size=\"10\" "
            << "text-anchor=\"middle\">" << fmt_short(t) << "</text>\n";
      } else {
        out << "  <text x=\"" << kLeft - 6 << "\" y=\""
            << fmt_short(kTop + along + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\" "
            << "text-anchor=\"end\">" << fmt_short(t) << "</text>\n";
      }
    }
  };
  emit_ticks(slice->d_human, true);
  emit_ticks(slice->d_system, false);

  out << "  <text x=\"" << kLeft + cols * kCell / 2 << "\" y=\""
      << height - 10 << "\" font-family=\"sans-serif\" font-size=\"11\" "
      << "text-anchor=\"middle\">d' human</text>\n";
  out << "  <text x=\"12\" y=\"" << kTop + rows * kCell / 2
      << "\" font-family=\"sans-serif\" font-size=\"11\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 12 "
      << kTop + rows * kCell / 2 << ")\">d' system</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::vector<std::string> write_sweep_svg(const std::vector<SweepCell>& grid,
                                         const std::string& path_prefix) {
  if (grid.empty()) {
    throw InvalidArgument("sweep: refusing to write an empty grid");
  }
  std::vector<std::string> paths;
  for (const Slice& slice : slice_by_e(grid)) {
    std::string path = path_prefix + "_e" + fmt_short(slice.e) + ".svg";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw IoError("cannot open \"" + path + "\" for writing");
    }
    out << sweep_slice_svg(grid, slice.e);
    if (!out) {
      throw IoError("failed writing sweep svg \"" + path + "\"");
    }
    paths.push_back(path);
  }
  return paths;
}

}  // namespace respkit
