#ifndef SUMBOUNDS_CSV_HPP
#define SUMBOUNDS_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sumbounds/experiments.hpp"

namespace sumbounds {

// Row schema, one line per sweep point:
//   n, trial, precision, distribution, delta, seed, det_variant,
//   true_rel_err, det_bound, azuma_bound, martingale_bound, z_n, sum_abs_x,
//   time_c_path_ns, time_m_path_ns, flags
// Numeric fields use shortest round-trip decimals; flags is a
// semicolon-joined subset of {zero_sum, subnormal, overflow}.
extern const char* const kCsvHeader;

std::string format_shortest(double v);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& is);

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv_file(const std::string& path);

}  // namespace sumbounds

#endif
