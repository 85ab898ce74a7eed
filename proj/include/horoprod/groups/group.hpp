#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "../errors.hpp"
#include "../model.hpp"
#include "bs.hpp"
#include "hnn.hpp"
#include "lamplighter.hpp"
#include "sol.hpp"

// One handle over the four model groups: element union, law, height change,
// model space, base point and action.

namespace horoprod::groups {

using GroupElement = std::variant<LampElement, BSElement, SolElement, HNNElement>;

inline GroupElement multiply(const GroupElement& g, const GroupElement& h) {
    if (g.index() != h.index()) throw ParameterError("group elements from different groups");
    return std::visit(
        [&](const auto& a) -> GroupElement {
            using T = std::decay_t<decltype(a)>;
            return multiply(a, std::get<T>(h));
        },
        g);
}

inline GroupElement inverse(const GroupElement& g) {
    return std::visit([](const auto& a) -> GroupElement { return inverse(a); }, g);
}

inline std::int64_t height_change(const GroupElement& g) {
    return std::visit([](const auto& a) { return height_change(a); }, g);
}

inline std::string to_string(const GroupElement& g) {
    return std::visit([](const auto& a) { return to_string(a); }, g);
}

enum class GroupKind { lamplighter, baumslag_solitar, sol, hnn };

inline const char* group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::lamplighter: return "lamplighter";
        case GroupKind::baumslag_solitar: return "baumslag-solitar";
        case GroupKind::sol: return "sol";
        case GroupKind::hnn: return "hnn";
    }
    return "?";
}

struct NamedElement {
    std::string name;
    GroupElement element;
};

/// A concrete group instance.
class Group {
public:
    static Group lamplighter(int m) { return Group(GroupKind::lamplighter, m, IntMat{}); }
    static Group baumslag_solitar(int n) { return Group(GroupKind::baumslag_solitar, n, IntMat::scalar(n)); }
    static Group sol(IntMat a = IntMat::two_by_two(2, 1, 1, 1)) { return Group(GroupKind::sol, 0, a); }
    static Group hnn(IntMat b = IntMat::two_by_two(3, 1, 1, 1)) { return Group(GroupKind::hnn, 0, b); }

    GroupKind kind() const noexcept { return kind_; }
    int parameter() const noexcept { return n_; }
    const IntMat& matrix() const noexcept { return mat_; }

    std::string name() const {
        switch (kind_) {
            case GroupKind::lamplighter: return "Z/" + std::to_string(n_) + " wr Z";
            case GroupKind::baumslag_solitar: return "BS(1," + std::to_string(n_) + ")";
            case GroupKind::sol: return "Z^2 x|_A Z";
            case GroupKind::hnn: return "HNN(Z^2,B)";
        }
        return "?";
    }

    GroupElement identity() const {
        switch (kind_) {
            case GroupKind::lamplighter: return LampElement::identity(n_);
            case GroupKind::baumslag_solitar: return BSElement::identity(n_);
            case GroupKind::sol: return SolElement::identity(mat_);
            case GroupKind::hnn: return HNNElement::identity(mat_);
        }
        throw CapabilityError("unknown group");
    }

    /// Standard generating set (without inverses): {t, a} or {t, a, b}.
    std::vector<NamedElement> generators() const {
        switch (kind_) {
            case GroupKind::lamplighter: return {{"t", LampElement::t(n_)}, {"a", LampElement::a(n_)}};
            case GroupKind::baumslag_solitar: return {{"t", BSElement::t(n_)}, {"a", BSElement::a(n_)}};
            case GroupKind::sol: return {{"t", SolElement::t(mat_)}, {"a", SolElement::a1(mat_)}, {"b", SolElement::a2(mat_)}};
            case GroupKind::hnn: return {{"t", HNNElement::t(mat_)}, {"a", HNNElement::a(mat_)}, {"b", HNNElement::b_gen(mat_)}};
        }
        throw CapabilityError("unknown group");
    }

    Model model() const {
        switch (kind_) {
            case GroupKind::lamplighter: return Model::diestel_leader(n_, n_);
            case GroupKind::baumslag_solitar:
                return Model(Factor::heintze(n_), Factor::tree(n_),
                             "h2-" + std::to_string(n_) + "_bowtie_t-" + std::to_string(n_));
            case GroupKind::sol: return SolGroup(mat_).model();
            case GroupKind::hnn: return HNNGroup(mat_).model();
        }
        throw CapabilityError("unknown group");
    }

    /// Orbit base point o.
    HoroPoint origin() const {
        const Model m = model();
        switch (kind_) {
            case GroupKind::lamplighter: return lamp_to_dl(LampElement::identity(n_));
            case GroupKind::baumslag_solitar:
                return HoroPoint{HPoint::at_height(0.0, 0.0, m.x.base), TreePoint(TreeVertex::root(n_))};
            case GroupKind::sol: return plane_pair(m, 0.0, 0.0, 0.0);
            case GroupKind::hnn:
                return HoroPoint{HPoint::at_height(0.0, 0.0, m.x.base),
                                 MfPoint(HPoint::at_height(0.0, 0.0, m.y.base), TreePoint(TreeVertex::root(m.y.branching)))};
        }
        throw CapabilityError("unknown group");
    }

    HoroPoint act(const GroupElement& g, const HoroPoint& p) const {
        const Model m = model();
        switch (kind_) {
            case GroupKind::lamplighter: return act_lamplighter(std::get<LampElement>(g), m, p);
            case GroupKind::baumslag_solitar: return act_bs(std::get<BSElement>(g), m, p);
            case GroupKind::sol: return act_sol(SolGroup(mat_), std::get<SolElement>(g), m, p);
            case GroupKind::hnn: return act_hnn(HNNGroup(mat_), std::get<HNNElement>(g), m, p);
        }
        throw CapabilityError("unknown group");
    }

private:
    Group(GroupKind k, int n, IntMat m) : kind_(k), n_(n), mat_(m) {
        if (k == GroupKind::lamplighter && n < 2) throw ParameterError("lamplighter needs m >= 2");
        if (k == GroupKind::baumslag_solitar && n < 2) throw ParameterError("BS(1,n) needs n >= 2");
        if (k == GroupKind::sol) SolGroup{m};
        if (k == GroupKind::hnn) HNNGroup{m};
    }

    GroupKind kind_;
    int n_;
    IntMat mat_;
};

}  // namespace horoprod::groups
