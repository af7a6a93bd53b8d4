#include "qwalk/table_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace qwalk {

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw Error(ErrorCode::BadInput, "output format must be csv or json");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::write(std::ostream& os, OutputFormat fmt) const {
    if (fmt == OutputFormat::Csv) {
        for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
        for (size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
        os << "\n";
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
            os << "\n";
        }
        return;
    }
    // JSON schema: {params, start, caps, tail_mass, columns, data}; meta
    // keys route to their section by name, anything else lands in "meta"
    nlohmann::ordered_json j;
    for (const auto& [k, v] : meta) {
        if (k == "p_e" || k == "p_w" || k == "p_n" || k == "p_s") j["params"][k] = v;
        else if (k == "n0" || k == "m0") j["start"][k] = v;
        else if (k.size() > 4 && k.substr(k.size() - 4) == "_cap") j["caps"][k] = v;
        else if (k == "tail_mass" || k == "residual_bound") j["tail_mass"] = v;
        else j["meta"][k] = v;
    }
    j["columns"] = columns;
    auto& data = j["data"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        auto& r = data.emplace_back(nlohmann::ordered_json::array());
        for (double v : row) r.push_back(format_double(v));
    }
    os << j.dump(2) << "\n";
}

namespace {

void embed_params(Table& t, const WalkParams& p, StartPoint s) {
    t.add_meta("p_e", p.p_e);
    t.add_meta("p_w", p.p_w);
    t.add_meta("p_n", p.p_n);
    t.add_meta("p_s", p.p_s);
    t.add_meta("n0", std::to_string(s.n0));
    t.add_meta("m0", std::to_string(s.m0));
}

}  // namespace

Table to_table(const AbsorptionTable& a, const WalkParams& p, StartPoint s) {
    Table t;
    embed_params(t, p, s);
    t.add_meta("i_cap", std::to_string(a.i_cap));
    t.add_meta("n_cap", std::to_string(a.n_cap));
    t.add_meta("tail_mass", a.tail_mass);
    t.columns = {"axis", "i", "n", "value"};
    for (int i = 1; i <= a.i_cap; ++i)
        for (int n = 0; n <= a.n_cap; ++n)
            if (a.h[i][n] != 0.0) t.rows.push_back({0.0, double(i), double(n), a.h[i][n]});
    for (int j = 1; j <= a.i_cap; ++j)
        for (int n = 0; n <= a.n_cap; ++n)
            if (a.h_tilde[j][n] != 0.0) t.rows.push_back({1.0, double(j), double(n), a.h_tilde[j][n]});
    return t;
}

Table to_table(const GreenTable& g, const WalkParams& p, StartPoint s) {
    Table t;
    embed_params(t, p, s);
    t.add_meta("grid_cap", std::to_string(g.grid_cap));
    t.add_meta("n_cap", std::to_string(g.n_cap));
    t.add_meta("tail_mass", g.residual_bound);
    t.columns = {"i", "j", "value"};
    for (int i = 1; i <= g.grid_cap; ++i)
        for (int j = 1; j <= g.grid_cap; ++j) t.rows.push_back({double(i), double(j), g.g[i][j]});
    return t;
}

}  // namespace qwalk
