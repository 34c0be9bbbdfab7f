#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/sdt.hpp"

namespace respkit {

// Grid evaluation of the single-event measures over human and system
// detection sensitivities and observed values.

struct SweepRange {
  double min = 0.6;
  double max = 3.0;
  std::size_t steps = 61;

  void validate(const char* name) const;
  // min + i * (max - min) / (steps - 1); a coordinate shared by two grids
  // of different resolution is the identical double.
  double value(std::size_t i) const;
};

struct SweepSpec {
  SweepRange d_human;
  SweepRange d_system;
  std::vector<double> e_values = {-1.5, 0.0, 1.5, 3.0, 4.5};
  SystemOutput system_output = SystemOutput::kSignal;

  void validate() const;
};

struct SweepCell {
  double e = 0.0;
  double d_human = 0.0;
  double d_system = 0.0;
  double resp_xa = 0.0;
  double rsnble_accept = 0.0;
  double rsnble_reject = 0.0;
};

// One cell per (e, d_system, d_human) triple, evaluated through the
// single-event pipeline with the spec's system output fixed. Cells are
// emitted in fixed order: e outermost, then d_system rows, then d_human
// columns. Each cell is a pure function of its coordinates, so the grid is
// identical regardless of evaluation order or resolution.
std::vector<SweepCell> sweep(const Scenario& base, const SweepSpec& spec);

// CSV with header e,d_human,d_system,resp_xa,rsnble_accept,rsnble_reject;
// values printed with %.17g so a reload reproduces the grid exactly.
std::string sweep_to_csv(const std::vector<SweepCell>& grid);
void write_sweep_csv(const std::vector<SweepCell>& grid,
                     const std::string& path);
std::vector<SweepCell> parse_sweep_csv(const std::string& text);
std::vector<SweepCell> load_sweep_csv(const std::string& path);

// One SVG heatmap of resp_xa per distinct e value, named
// <path_prefix>_e<value>.svg. d_human runs left to right, d_system top to
// bottom; one rect per cell, filled by linear sRGB interpolation from
// #ffffff at 0 to #08306b at 1; axis ticks every 0.6 sensitivity units.
// Returns the written paths in e order.
std::vector<std::string> write_sweep_svg(const std::vector<SweepCell>& grid,
                                         const std::string& path_prefix);
std::string sweep_slice_svg(const std::vector<SweepCell>& grid, double e);

}  // namespace respkit
