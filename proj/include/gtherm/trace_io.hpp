#pragma once

#include <iosfwd>
#include <string>

#include "gtherm/simulate.hpp"

namespace gtherm {

/// Trace CSV: comment header with model/params/seed, then one outcome per
/// row. Spin-gas outcomes are written as integers, oscillator outcomes with
/// 17 significant digits, so a round trip is exact.
void write_trace_csv(std::ostream& out, const Trace& trace);
Trace read_trace_csv(std::istream& in);

void write_trace_csv_file(const std::string& path, const Trace& trace);
Trace read_trace_csv_file(const std::string& path);

} // namespace gtherm
