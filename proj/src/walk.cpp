#include "qwalk/walk.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qwalk {

const char* to_string(DriftClass c) {
    switch (c) {
        case DriftClass::ZeroZero: return "ZeroZero";
        case DriftClass::PosPos: return "PosPos";
        case DriftClass::ZeroXPosY: return "ZeroXPosY";
        case DriftClass::PosXZeroY: return "PosXZeroY";
    }
    return "?";
}

DriftClass WalkParams::drift_class() const {
    const bool zx = (p_e == p_w);
    const bool zy = (p_n == p_s);
    if (zx && zy) return DriftClass::ZeroZero;
    if (zx) return DriftClass::ZeroXPosY;
    if (zy) return DriftClass::PosXZeroY;
    return DriftClass::PosPos;
}

WalkParams validate(double p_e, double p_w, double p_n, double p_s) {
    const double ps[4] = {p_e, p_w, p_n, p_s};
    const char* names[4] = {"p_e", "p_w", "p_n", "p_s"};
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(ps[i]) || ps[i] <= 0.0)
            throw Error(ErrorCode::NonPositiveProbability,
                        std::string(names[i]) + " must be strictly positive (hypothesis H2'')");
    }
    const double sum = p_e + p_w + p_n + p_s;
    if (std::abs(sum - 1.0) > 1e-12)
        throw Error(ErrorCode::SumNotOne,
                    "p_e+p_w+p_n+p_s must equal 1 to 1e-12 (hypothesis H2'); got " +
                        std::to_string(sum));
    if (p_e < p_w)
        throw Error(ErrorCode::NegativeDrift, "M_x = p_e - p_w < 0 violates hypothesis H4");
    if (p_n < p_s)
        throw Error(ErrorCode::NegativeDrift, "M_y = p_n - p_s < 0 violates hypothesis H4");
    return WalkParams{p_e, p_w, p_n, p_s};
}

StartPoint validate_start(int n0, int m0) {
    if (n0 < 1 || m0 < 1)
        throw Error(ErrorCode::BadInput, "start point must lie in the open quadrant (n0, m0 >= 1)");
    return StartPoint{n0, m0};
}

DerivedConstants derive(const WalkParams& p) {
    DerivedConstants d;
    d.r = std::sqrt(p.p_w / p.p_e);
    d.rt = std::sqrt(p.p_s / p.p_n);
    d.z1 = 1.0 / (2.0 * std::sqrt(p.p_e * p.p_w) + 2.0 * std::sqrt(p.p_n * p.p_s));
    return d;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadInput, "cannot open config file: " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::BadInput,
                        path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "p_e") cfg.p_e = std::stod(val);
            else if (key == "p_w") cfg.p_w = std::stod(val);
            else if (key == "p_n") cfg.p_n = std::stod(val);
            else if (key == "p_s") cfg.p_s = std::stod(val);
            else if (key == "n0") { cfg.n0 = std::stoi(val); cfg.has_start = true; }
            else if (key == "m0") { cfg.m0 = std::stoi(val); cfg.has_start = true; }
            else
                throw Error(ErrorCode::BadInput,
                            path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::BadInput,
                        path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    return cfg;
}

}  // namespace qwalk
