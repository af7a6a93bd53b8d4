#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qwalk/oracle.hpp"

namespace qwalk {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& s);

/// Fixed 17-significant-digit decimal rendering, locale-independent, so a
/// given table is byte-identical across runs and round-trips to the same
/// double.
std::string format_double(double v);

/// A generic self-describing table: metadata keys are embedded as
/// '# key=value' lines in CSV and as fields in JSON.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(const std::string& k, double v) { meta.emplace_back(k, format_double(v)); }
    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
    void write(std::ostream& os, OutputFormat fmt) const;
};

/// Long-format exports of the oracle tables (header i,n,value / i,j,value)
/// with params, start, caps and tail mass embedded.
Table to_table(const AbsorptionTable& t, const WalkParams& p, StartPoint s);
Table to_table(const GreenTable& g, const WalkParams& p, StartPoint s);

}  // namespace qwalk
