#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "perturb/experiments.hpp"
#include "perturb/sprinkle.hpp"

namespace perturb {

inline constexpr std::string_view kResultsHeader =
    "family,n,d,eta,model,m,p,property,trials,successes,freq,wilson_lo,wilson_hi";
inline constexpr std::string_view kTraceHeader = "trial,round,structure_size,boost_size,samples,hit_u,hit_v,total_Y,outcome";

struct ResultRow {
    std::string family;
    int n = 0;
    int d = 0;
    double eta = 0.0;
    std::string model;
    std::uint64_t m = 0;
    double p = 0.0;
    std::string property;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double freq = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Round 0 is the state before any boost round; total_Y is cumulative.
struct TraceRow {
    int trial = 0;
    int round = 0;
    int structure_size = 0;
    std::uint64_t boost_size = 0;
    std::uint64_t samples = 0;
    int hit_u = -1;
    int hit_v = -1;
    std::uint64_t total_y = 0;
    std::string outcome;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc()) throw CsvError("csv: cannot format number");
    return std::string(buf, res.ptr);
}

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* column) {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size() || field.empty())
        throw CsvError("csv line " + std::to_string(line) + ": bad " + column + " '" + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline void check_text_field(const std::string& s) {
    if (s.find_first_of(",\n\r\"") != std::string::npos) throw CsvError("csv: field '" + s + "' needs quoting");
}

template <class Row, class ParseRow>
std::vector<Row> read_rows(std::istream& in, std::string_view header, std::size_t columns, ParseRow&& parse_row) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError("csv: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw CsvError("csv: unexpected header '" + line + "'");
    std::vector<Row> rows;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != columns)
            throw CsvError("csv line " + std::to_string(number) + ": expected " + std::to_string(columns) +
                           " fields, got " + std::to_string(fields.size()));
        rows.push_back(parse_row(fields, number));
    }
    return rows;
}

}  // namespace detail

inline ResultRow to_result_row(const ProbeResult& probe) {
    const Interval ci = probe.wilson();
    return {probe.family, probe.n,        probe.d,         probe.eta,    to_string(probe.model),
            probe.m,      probe.p,        to_string(probe.property),   probe.trials,
            probe.successes, probe.freq(), ci.lo,           ci.hi};
}

inline void write_results_header(std::ostream& out) { out << kResultsHeader << '\n'; }

inline void write_result_row(std::ostream& out, const ResultRow& r) {
    detail::check_text_field(r.family);
    detail::check_text_field(r.model);
    detail::check_text_field(r.property);
    using detail::format_double;
    out << r.family << ',' << r.n << ',' << r.d << ',' << format_double(r.eta) << ',' << r.model << ',' << r.m << ','
        << format_double(r.p) << ',' << r.property << ',' << r.trials << ',' << r.successes << ','
        << format_double(r.freq) << ',' << format_double(r.wilson_lo) << ',' << format_double(r.wilson_hi) << '\n';
}

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    write_results_header(out);
    for (const auto& r : rows) write_result_row(out, r);
}

inline std::vector<ResultRow> read_results_csv(std::istream& in) {
    return detail::read_rows<ResultRow>(in, kResultsHeader, 13, [](const auto& f, std::size_t line) {
        using detail::parse_number;
        ResultRow r;
        r.family = std::string(f[0]);
        r.n = parse_number<int>(f[1], line, "n");
        r.d = parse_number<int>(f[2], line, "d");
        r.eta = parse_number<double>(f[3], line, "eta");
        r.model = std::string(f[4]);
        r.m = parse_number<std::uint64_t>(f[5], line, "m");
        r.p = parse_number<double>(f[6], line, "p");
        r.property = std::string(f[7]);
        r.trials = parse_number<std::uint64_t>(f[8], line, "trials");
        r.successes = parse_number<std::uint64_t>(f[9], line, "successes");
        r.freq = parse_number<double>(f[10], line, "freq");
        r.wilson_lo = parse_number<double>(f[11], line, "wilson_lo");
        r.wilson_hi = parse_number<double>(f[12], line, "wilson_hi");
        if (r.successes > r.trials) throw CsvError("csv line " + std::to_string(line) + ": successes exceed trials");
        return r;
    });
}

inline std::vector<TraceRow> trace_rows(int trial, const SprinkleTrace& t) {
    const std::string outcome = to_string(t.outcome);
    std::vector<TraceRow> rows;
    rows.push_back({trial, 0, t.initial_size, 0, 0, -1, -1, 0, outcome});
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        const auto& r = t.rounds[i];
        total += r.samples;
        const bool hit = r.hit.u != r.hit.v;
        rows.push_back({trial, static_cast<int>(i) + 1, r.structure_size, r.boost_size, r.samples, hit ? r.hit.u : -1,
                        hit ? r.hit.v : -1, total, outcome});
    }
    return rows;
}

inline void write_trace_header(std::ostream& out) { out << kTraceHeader << '\n'; }

inline void write_trace_row(std::ostream& out, const TraceRow& r) {
    detail::check_text_field(r.outcome);
    out << r.trial << ',' << r.round << ',' << r.structure_size << ',' << r.boost_size << ',' << r.samples << ','
        << r.hit_u << ',' << r.hit_v << ',' << r.total_y << ',' << r.outcome << '\n';
}

inline void write_trace_csv(std::ostream& out, const std::vector<SprinkleTrace>& traces) {
    write_trace_header(out);
    for (std::size_t t = 0; t < traces.size(); ++t)
        for (const auto& row : trace_rows(static_cast<int>(t), traces[t])) write_trace_row(out, row);
}

inline std::vector<TraceRow> read_trace_csv(std::istream& in) {
    return detail::read_rows<TraceRow>(in, kTraceHeader, 9, [](const auto& f, std::size_t line) {
        using detail::parse_number;
        TraceRow r;
        r.trial = parse_number<int>(f[0], line, "trial");
        r.round = parse_number<int>(f[1], line, "round");
        r.structure_size = parse_number<int>(f[2], line, "structure_size");
        r.boost_size = parse_number<std::uint64_t>(f[3], line, "boost_size");
        r.samples = parse_number<std::uint64_t>(f[4], line, "samples");
        r.hit_u = parse_number<int>(f[5], line, "hit_u");
        r.hit_v = parse_number<int>(f[6], line, "hit_v");
        r.total_y = parse_number<std::uint64_t>(f[7], line, "total_Y");
        r.outcome = std::string(f[8]);
        return r;
    });
}

}  // namespace perturb
