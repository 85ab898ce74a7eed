#pragma once

#include <optional>
#include <utility>
#include <string>

#include "../errors.hpp"
#include "../model.hpp"
#include "../serialize.hpp"
#include "probe.hpp"

// Trichotomy lookup for groups acting geometrically on X ⋈ Y. The relevant
// boundary pieces are the lower boundary of X and the upper boundary of Y;
// each is connected exactly when the factor is a Heintze group.

namespace horoprod::lab {

enum class Verdict { not_finitely_presented, ascending_hnn, virtually_semidirect };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::not_finitely_presented: return "not-finitely-presented";
        case Verdict::ascending_hnn: return "ascending-HNN-over-virtually-nilpotent";
        case Verdict::virtually_semidirect: return "virtually-(H⋊ℤ)";
    }
    return "?";
}

inline const char* verdict_statement(Verdict v) {
    switch (v) {
        case Verdict::not_finitely_presented:
            return "both boundary pieces are disconnected, so a group acting geometrically cannot be finitely presented";
        case Verdict::ascending_hnn:
            return "one boundary piece is connected, so the group is virtually an ascending HNN extension "
                   "of a finitely generated virtually nilpotent group with finite index greater than one";
        case Verdict::virtually_semidirect:
            return "both boundary pieces are connected, so the group is virtually a semidirect product H⋊ℤ";
    }
    return "";
}

struct ClassificationVerdict {
    std::string model;
    FactorKind x_kind = FactorKind::heintze;
    FactorKind y_kind = FactorKind::heintze;
    bool lower_x_connected = false;  // lower boundary of X
    bool upper_y_connected = false;  // upper boundary of Y
    Verdict verdict = Verdict::not_finitely_presented;
    std::optional<ProbeResult> probe;  // evidence, when a probe ran
};

/// Heintze factors have connected boundary pieces (a punctured circle is a
/// line); trees and millefeuille spaces do not (their boundary minus the
/// fixed end is a Cantor set, resp. fibres over one).
inline bool boundary_piece_connected(const Factor& f) {
    switch (f.kind) {
        case FactorKind::heintze: return true;
        case FactorKind::tree:
        case FactorKind::millefeuille: return false;
    }
    throw CapabilityError("classify: unknown factor kind");
}

inline ClassificationVerdict classify(const Model& model) {
    ClassificationVerdict v;
    v.model = model.descriptor;
    v.x_kind = model.x.kind;
    v.y_kind = model.y.kind;
    v.lower_x_connected = boundary_piece_connected(model.x);
    v.upper_y_connected = boundary_piece_connected(model.y);
    const int connected = static_cast<int>(v.lower_x_connected) + static_cast<int>(v.upper_y_connected);
    v.verdict = connected == 0 ? Verdict::not_finitely_presented : connected == 1 ? Verdict::ascending_hnn : Verdict::virtually_semidirect;
    return v;
}

/// Canonical witness pair on the 0-horosphere. DL: the witness X vertex
/// leaves the base's branch at height 4 (tree distance 8). H²⋈T: the two
/// points share the tree point and differ by 2 horizontally.
inline std::pair<HoroPoint, HoroPoint> default_witnesses(const Model& model) {
    if (model.is_dl()) {
        const HoroPoint base{TreePoint(TreeVertex::root(model.x.branching)), TreePoint(TreeVertex::root(model.y.branching))};
        const HoroPoint w{TreePoint(TreeVertex(model.x.branching, 0, {{-4, 1}})), TreePoint(TreeVertex::root(model.y.branching))};
        return {w, base};
    }
    if (model.x.is_heintze() && model.y.is_tree()) {
        const TreePoint root(TreeVertex::root(model.y.branching));
        return {HoroPoint{HPoint::at_height(2.0, 0.0, model.x.base), root}, HoroPoint{HPoint::at_height(0.0, 0.0, model.x.base), root}};
    }
    throw CapabilityError("no default probe witnesses for this model");
}

/// classify plus probe evidence where a probe is available. C = 1 on
/// graphs and 3 mesh on discretizations.
inline ClassificationVerdict classify_with_evidence(const Model& model) {
    ClassificationVerdict v = classify(model);
    if (model.is_dl() || (model.x.is_heintze() && model.y.is_tree())) {
        const auto [w, o] = default_witnesses(model);
        const ProbeOptions opt;
        v.probe = horosphere_connectivity_probe(model, model.is_dl() ? 1.0 : 3.0 * opt.mesh, w, o, opt);
    }
    return v;
}

inline json to_json(const ClassificationVerdict& v) {
    json j = document("classification");
    j["model"] = v.model;
    j["x_factor"] = factor_kind_name(v.x_kind);
    j["y_factor"] = factor_kind_name(v.y_kind);
    j["lower_boundary_x_connected"] = v.lower_x_connected;
    j["upper_boundary_y_connected"] = v.upper_y_connected;
    j["verdict"] = verdict_name(v.verdict);
    j["statement"] = verdict_statement(v.verdict);
    j["probe"] = v.probe ? to_json(*v.probe) : json(nullptr);
    return j;
}

}  // namespace horoprod::lab
