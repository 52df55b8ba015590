#include "sumbounds/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sumbounds/errors.hpp"
#include "sumbounds/version.hpp"

namespace sumbounds {

const char* const kCsvHeader =
    "n,trial,precision,distribution,delta,seed,det_variant,true_rel_err,"
    "det_bound,azuma_bound,martingale_bound,z_n,sum_abs_x,time_c_path_ns,"
    "time_m_path_ns,flags";

std::string format_shortest(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

namespace {

double parse_double(std::string_view s, const char* what) {
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        if (s == "nan") return std::nan("");
        if (s == "inf") return HUGE_VAL;
        if (s == "-inf") return -HUGE_VAL;
        throw invalid_input_error(std::string("csv: bad ") + what + " field: " +
                                  std::string(s));
    }
    return v;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw invalid_input_error(std::string("csv: bad ") + what + " field: " +
                                  std::string(s));
    return v;
}

std::int64_t parse_i64(std::string_view s, const char* what) {
    std::int64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw invalid_input_error(std::string("csv: bad ") + what + " field: " +
                                  std::string(s));
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::string flags_of(const BoundReport& r) {
    std::string f;
    auto add = [&f](const char* name) {
        if (!f.empty()) f += ';';
        f += name;
    };
    if (r.zero_sum) add("zero_sum");
    if (r.subnormal) add("subnormal");
    if (r.overflow) add("overflow");
    return f;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "# sumbounds " << kVersion << "\n";
    os << kCsvHeader << "\n";
    for (const SweepRow& row : rows) {
        const BoundReport& r = row.report;
        os << r.n << ',' << row.trial << ',' << r.format_label << ','
           << r.distribution_label << ',' << format_shortest(r.failure_prob) << ','
           << row.seed << ',' << det_variant_label(r.det_variant) << ','
           << format_shortest(r.true_err) << ',' << format_shortest(r.det) << ','
           << format_shortest(r.azuma) << ',' << format_shortest(r.martingale) << ','
           << format_shortest(rational_to_double(r.z_n_exact)) << ','
           << format_shortest(rational_to_double(r.sum_abs_exact)) << ','
           << row.time_c_path_ns << ',' << row.time_m_path_ns << ','
           << flags_of(r) << "\n";
    }
}

std::vector<SweepRow> read_csv(std::istream& is) {
    std::vector<SweepRow> rows;
    std::string line;
    bool saw_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != kCsvHeader)
                throw invalid_input_error("csv: unrecognized header: " + line);
            saw_header = true;
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 16)
            throw invalid_input_error("csv: expected 16 fields, got " +
                                      std::to_string(f.size()));
        SweepRow row;
        BoundReport& r = row.report;
        r.n = parse_u64(f[0], "n");
        row.trial = parse_u64(f[1], "trial");
        r.format_label = std::string(f[2]);
        r.distribution_label = std::string(f[3]);
        r.failure_prob = parse_double(f[4], "delta");
        row.seed = parse_u64(f[5], "seed");
        if (f[6] == "theorem")
            r.det_variant = DetVariant::theorem;
        else if (f[6] == "graphs")
            r.det_variant = DetVariant::graphs;
        else
            throw invalid_input_error("csv: bad det_variant field");
        r.true_err = parse_double(f[7], "true_rel_err");
        r.det = parse_double(f[8], "det_bound");
        r.azuma = parse_double(f[9], "azuma_bound");
        r.martingale = parse_double(f[10], "martingale_bound");
        r.z_n_exact = rational_from_double(parse_double(f[11], "z_n"));
        r.sum_abs_exact = rational_from_double(parse_double(f[12], "sum_abs_x"));
        row.time_c_path_ns = parse_i64(f[13], "time_c_path_ns");
        row.time_m_path_ns = parse_i64(f[14], "time_m_path_ns");
        for (auto flag : split(f[15], ';')) {
            if (flag.empty()) continue;
            if (flag == "zero_sum")
                r.zero_sum = true;
            else if (flag == "subnormal")
                r.subnormal = true;
            else if (flag == "overflow")
                r.overflow = true;
            else
                throw invalid_input_error("csv: unknown flag: " + std::string(flag));
        }
        rows.push_back(std::move(row));
    }
    if (!saw_header) throw invalid_input_error("csv: missing header row");
    return rows;
}

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream os(path);
    if (!os) throw invalid_input_error("cannot open for writing: " + path);
    write_csv(os, rows);
    if (!os) throw invalid_input_error("write failed: " + path);
}

std::vector<SweepRow> read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw invalid_input_error("cannot open for reading: " + path);
    return read_csv(is);
}

}  // namespace sumbounds
