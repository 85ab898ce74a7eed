#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "factor.hpp"
#include "hyperbolic.hpp"
#include "serialize.hpp"

// CSV plot data. Numbers are written with 17 significant digits so a reader
// recovers the exact doubles.

namespace horoprod {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const CsvTable& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cells[i]);
        }
        out += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) {
        if (r.size() != t.header.size()) throw StructureError("csv: row width differs from header");
        line(r);
    }
    return out;
}

/// RFC 4180 subset: quoted fields, doubled quotes, LF or CRLF line ends.
inline CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> cur;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            cur.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            cur.push_back(std::move(field));
            field.clear();
            lines.push_back(std::move(cur));
            cur.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) throw ParseError("csv: unterminated quote", text.size());
    if (any || !field.empty()) {
        cur.push_back(std::move(field));
        lines.push_back(std::move(cur));
    }
    if (lines.empty()) throw ParseError("csv: missing header row", 0);
    CsvTable t;
    t.header = std::move(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() != t.header.size()) throw ParseError("csv: row " + std::to_string(i) + " has the wrong width", 0);
        t.rows.push_back(std::move(lines[i]));
    }
    return t;
}

/// "0,1,2" -> {0,1,2}; "" -> {}. "a:b:n" gives n evenly spaced values.
inline std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    if (text.empty()) return out;
    auto number = [&](std::string_view s, std::size_t at) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
            throw ParseError("grid: '" + std::string(s) + "' is not a finite number", at, s.size());
        return v;
    };
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw ParseError("grid: range form is start:end:count", c1);
        const double a = number(text.substr(0, c1), 0);
        const double b = number(text.substr(c1 + 1, c2 - c1 - 1), c1 + 1);
        const double n = number(text.substr(c2 + 1), c2 + 1);
        if (n < 1 || n != std::floor(n) || n > 1e6) throw ParseError("grid: count must be an integer in [1, 10^6]", c2 + 1);
        const auto count = static_cast<int>(n);
        for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(number(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// f(C) = acosh(e^{C/2}) for curvature -1; other curvatures per the rule.
inline CsvTable almost_vertical_sweep(const std::vector<double>& grid, double kappa = 1.0,
                                      KappaRescaling rule = KappaRescaling::derived) {
    CsvTable t{{"C", "f"}, {}};
    for (double c : grid) t.rows.push_back({csv_number(c), csv_number(almost_vertical_bound(c, kappa, rule))});
    return t;
}

/// Distance between the points of height t above two feet.
inline CsvTable vertical_convergence_sweep(const Factor& f, const std::vector<double>& grid, double foot1, double foot2) {
    if (!f.is_heintze()) throw CapabilityError("vertical-convergence sweep needs a hyperbolic plane factor h2-a");
    CsvTable t{{"t", "distance"}, {}};
    for (double s : grid)
        t.rows.push_back({csv_number(s), csv_number(h_distance(HPoint::at_height(foot1, s, f.base), HPoint::at_height(foot2, s, f.base)))});
    return t;
}

/// One row per check report (a single report or a batch document).
inline CsvTable report_table(const json& doc) {
    CsvTable t{{"check", "model", "norm", "samples", "seed", "tolerance", "pass", "worst_margin"}, {}};
    auto add = [&](const json& r) {
        if (!r.is_object() || r.value("kind", "") != "check-report") throw ParseError("export: expected a check-report document", 0);
        t.rows.push_back({r.at("check").get<std::string>(), r.at("model").get<std::string>(),
                          r.at("norm").is_null() ? "" : r.at("norm").get<std::string>(),
                          std::to_string(r.at("samples").get<long>()), std::to_string(r.at("seed").get<std::uint64_t>()),
                          csv_number(r.at("tolerance").get<double>()), r.at("pass").get<bool>() ? "true" : "false",
                          csv_number(r.at("worst_margin").get<double>())});
    };
    if (doc.is_object() && doc.value("kind", "") == "verify-batch") {
        for (const auto& r : doc.at("reports")) add(r);
    } else {
        add(doc);
    }
    return t;
}

}  // namespace horoprod
