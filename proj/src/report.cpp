#include "sscc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <tuple>

namespace sscc {

std::string format_number(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string current_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

CsvRow to_row(const BerEstimate& est, int relay_count, PowerPolicy policy)
{
    CsvRow row;
    row.snr_db = est.snr_point;
    row.method = kMonteCarloMethod;
    row.ber = est.ber;
    row.ci_low = est.ci_low;
    row.ci_high = est.ci_high;
    row.errors = est.errors;
    row.bits = est.bits;
    row.relay_count = relay_count;
    row.policy = policy;
    return row;
}

std::vector<CsvRow> to_rows(const analytic::BerCurve& curve, int relay_count, PowerPolicy policy)
{
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < curve.snr_points.size(); ++i) {
        CsvRow row;
        row.snr_db = curve.snr_points[i];
        row.method = analytic::to_string(curve.method);
        row.ber = curve.values[i];
        row.relay_count = relay_count;
        row.policy = policy;
        rows.push_back(row);
    }
    return rows;
}

void sort_rows(std::vector<CsvRow>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.method, a.snr_db, a.relay_count, a.policy) <
               std::tie(b.method, b.snr_db, b.relay_count, b.policy);
    });
}

void write_manifest(std::ostream& out, const RunManifest& m)
{
    out << "# sscc " << kToolVersion << '\n';
    out << "# subcommand: " << m.subcommand << '\n';
    out << "# seed: " << m.seed << '\n';
    out << "# grid_db:";
    for (double g : m.snr_grid_db)
        out << ' ' << format_number(g);
    out << '\n';
    out << "# pmax_offset_db: " << format_number(m.pmax_offset_db) << '\n';
    out << "# trials: " << m.trials << '\n';
    if (!m.options.empty())
        out << "# options: " << m.options << '\n';
    out << "# timestamp: " << m.timestamp << '\n';
    out << "# scenario:\n";
    std::istringstream scenario(m.scenario_text);
    for (std::string line; std::getline(scenario, line);)
        out << "#   " << line << '\n';
}

void write_csv(std::ostream& out, const RunManifest& m, std::vector<CsvRow> rows)
{
    write_manifest(out, m);
    sort_rows(rows);
    out << kCsvHeader << '\n';
    for (const CsvRow& r : rows) {
        out << format_number(r.snr_db) << ',' << r.method << ',' << format_number(r.ber) << ',';
        out << (r.ci_low ? format_number(*r.ci_low) : "") << ',';
        out << (r.ci_high ? format_number(*r.ci_high) : "") << ',';
        out << (r.errors ? std::to_string(*r.errors) : "") << ',';
        out << (r.bits ? std::to_string(*r.bits) : "") << ',';
        out << r.relay_count << ',' << to_string(r.policy) << '\n';
    }
}

}  // namespace sscc
