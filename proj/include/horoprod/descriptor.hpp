#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "groups/group.hpp"
#include "model.hpp"

// Compact model descriptors.
//
//   descriptor := "dl-" INT "-" INT
//               | "sol" [ "-" INT "-" INT "-" INT "-" INT | "-A(" INT "," INT "," INT "," INT ")" ]
//               | "h2xmf-B(" INT "," INT "," INT "," INT ")" [ "-k" INT ]
//               | factor [ "_bowtie_" factor ]
//   factor     := "t-" INT [ "@" NUM ] | "h2-" NUM [ "[" INT "]" ]
//   NUM        := decimal literal | "e"
//
// "h2-a[k]" is the millefeuille H²_a[k]. In "h2-a_bowtie_t-n" without "@"
// the tree edge length is ln n / ln a, so heights match the plane's scale.
// ("⋈" is accepted for "_bowtie_".)

namespace horoprod {

struct Descriptor {
    std::string text;
    std::optional<Model> model;    // products
    std::optional<Factor> factor;  // single factors
    std::optional<groups::Group> group;  // when the product is a model space of one of the four groups
};

namespace detail {

class DescriptorParser {
public:
    explicit DescriptorParser(std::string_view s) : s_(s) {}

    Descriptor parse() {
        Descriptor d;
        d.text = std::string(s_);
        if (s_.empty()) throw ParseError("empty model descriptor", 0, 0);
        if (accept("dl-")) {
            const int m = integer(2, 64, "branching");
            expect("-");
            const int n = integer(2, 64, "branching");
            finish();
            d.model = Model::diestel_leader(m, n);
            if (m == n) d.group = groups::Group::lamplighter(m);
            return d;
        }
        if (accept("sol")) {
            groups::IntMat a = groups::IntMat::two_by_two(2, 1, 1, 1);
            if (accept("-A(")) {
                a = matrix(",", ")");
            } else if (accept("-")) {
                a = matrix("-", "");
            }
            finish();
            const std::size_t at = 0;
            try {
                d.group = groups::Group::sol(a);
            } catch (const ParameterError& e) {
                throw ParseError(std::string("invalid Sol matrix: ") + e.what(), at, s_.size());
            }
            d.model = d.group->model();
            d.model->descriptor = d.text;
            return d;
        }
        if (accept("h2xmf-B(")) {
            const groups::IntMat b = matrix(",", ")");
            std::optional<int> k;
            if (accept("-k")) {
                const std::size_t kpos = pos_;
                k = integer(2, 64, "branching");
                if (*k != std::llabs(b.det())) throw ParseError("millefeuille branching must equal |det B|", kpos, pos_ - kpos);
            }
            finish();
            try {
                d.group = groups::Group::hnn(b);
            } catch (const ParameterError& e) {
                throw ParseError(std::string("invalid HNN matrix: ") + e.what(), 0, s_.size());
            }
            d.model = d.group->model();
            d.model->descriptor = d.text;
            return d;
        }
        const std::size_t first_start = pos_;
        RawFactor fx = factor();
        if (pos_ == s_.size()) {
            if (fx.kind == FactorKind::tree && !fx.edge) fx.edge = 1.0;
            d.factor = build(fx, std::nullopt, first_start);
            return d;
        }
        if (!accept("_bowtie_") && !accept("⋈")) throw ParseError("expected '_bowtie_' or end of descriptor", pos_, 1);
        const std::size_t second_start = pos_;
        RawFactor fy = factor();
        finish();
        if (fx.kind == FactorKind::tree && fy.kind == FactorKind::tree) {
            if (fx.edge || fy.edge) throw ParseError("tree edge lengths are fixed to 1 in DL models; use dl-m-n", first_start, pos_ - first_start);
            d.model = Model::diestel_leader(fx.branching, fy.branching);
            d.model->descriptor = d.text;
            if (fx.branching == fy.branching) d.group = groups::Group::lamplighter(fx.branching);
            return d;
        }
        if (fx.kind != FactorKind::heintze) throw ParseError("X factor must be a hyperbolic plane (or use dl-m-n)", first_start, second_start - first_start);
        const Factor x = build(fx, std::nullopt, first_start);
        const Factor y = build(fy, x.base, second_start);
        d.model = Model(x, y, d.text);
        if (y.is_tree() && static_cast<double>(y.branching) == x.base && y.edge_length == 1.0)
            d.group = groups::Group::baumslag_solitar(y.branching);
        if (y.is_heintze()) {
            const groups::SolGroup sol;
            if (std::fabs(x.base - sol.lambda1) < 1e-12 && std::fabs(y.base - 1.0 / sol.lambda2) < 1e-12) d.group = groups::Group::sol();
        }
        return d;
    }

private:
    struct RawFactor {
        FactorKind kind = FactorKind::heintze;
        double base = 0.0;
        int branching = 0;
        std::optional<double> edge;
        std::size_t start = 0;
        std::size_t length = 0;
    };

    bool accept(std::string_view lit) {
        if (s_.substr(pos_, lit.size()) == lit) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view lit) {
        if (!accept(lit)) throw ParseError("expected '" + std::string(lit) + "'", pos_, 1);
    }

    void finish() {
        if (pos_ != s_.size()) throw ParseError("unexpected trailing text", pos_, s_.size() - pos_);
    }

    long long raw_integer() {
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError("expected an integer", start, 1);
        if (pos_ - digits > 9) throw ParseError("integer too large", start, pos_ - start);
        return std::stoll(std::string(s_.substr(start, pos_ - start)));
    }

    int integer(long long lo, long long hi, const char* what) {
        const std::size_t start = pos_;
        const long long v = raw_integer();
        if (v < lo || v > hi) throw ParseError(std::string(what) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", start, pos_ - start);
        return static_cast<int>(v);
    }

    double number() {
        const std::size_t start = pos_;
        if (accept("e") && (pos_ == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_])))) return std::numbers::e;
        pos_ = start;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            const bool exp_sign = (c == '-' || c == '+') && pos_ > start && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E');
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || exp_sign) ++pos_;
            else break;
        }
        if (pos_ == start) throw ParseError("expected a number", start, 1);
        const std::string lit(s_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(lit.c_str(), &end);
        if (end != lit.c_str() + lit.size() || !std::isfinite(v)) throw ParseError("malformed number '" + lit + "'", start, lit.size());
        return v;
    }

    groups::IntMat matrix(std::string_view sep, std::string_view close) {
        long long e[4];
        const std::size_t start = pos_;
        for (int i = 0; i < 4; ++i) {
            if (i) expect(sep);
            e[i] = raw_integer();
            if (std::llabs(e[i]) > 1000) throw ParseError("matrix entry out of range [-1000, 1000]", start, pos_ - start);
        }
        if (!close.empty()) expect(close);
        return groups::IntMat::two_by_two(e[0], e[1], e[2], e[3]);
    }

    RawFactor factor() {
        RawFactor f;
        f.start = pos_;
        if (accept("t-")) {
            f.kind = FactorKind::tree;
            f.branching = integer(2, 64, "branching");
            if (accept("@")) f.edge = number();
        } else if (accept("h2-")) {
            f.kind = FactorKind::heintze;
            f.base = number();
            if (accept("[")) {
                f.kind = FactorKind::millefeuille;
                f.branching = integer(2, 64, "branching");
                expect("]");
            }
        } else {
            throw ParseError("unknown factor kind (expected t-, h2-, dl-, sol or h2xmf-)", pos_, std::min<std::size_t>(3, s_.size() - pos_));
        }
        f.length = pos_ - f.start;
        return f;
    }

    Factor build(const RawFactor& f, std::optional<double> partner_base, std::size_t at) {
        try {
            switch (f.kind) {
                case FactorKind::tree: {
                    double edge = f.edge.value_or(1.0);
                    if (!f.edge && partner_base && static_cast<double>(f.branching) != *partner_base)
                        edge = std::log(f.branching) / std::log(*partner_base);
                    return Factor::tree(f.branching, edge);
                }
                case FactorKind::heintze: return Factor::heintze(f.base);
                case FactorKind::millefeuille: return Factor::millefeuille(f.base, f.branching);
            }
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), at, f.length);
        }
        throw ParseError("unknown factor", at, f.length);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Descriptor parse_descriptor(std::string_view text) { return detail::DescriptorParser(text).parse(); }

/// Parses a product descriptor; single factors are a ParseError.
inline Model parse_model(std::string_view text) {
    Descriptor d = parse_descriptor(text);
    if (!d.model) throw ParseError("descriptor names a single factor, not a product", 0, text.size());
    return *d.model;
}

}  // namespace horoprod
