// Walks one point upward in three models and prints how the distance to a
// fixed base point grows, next to the cheap lower and upper bounds.

#include <cstdio>

#include <horoprod/descriptor.hpp>
#include <horoprod/distance.hpp>

using namespace horoprod;

int main() {
    const AdmissibleNorm norm = AdmissibleNorm::l2norm();

    std::printf("DL(2,2): o = (root, root), q_k = k steps up in X then k down a side branch\n");
    const Model dl = Model::diestel_leader(2, 2);
    const TreeVertex r = TreeVertex::root(2);
    const HoroPoint o{TreePoint(r), TreePoint(r)};
    for (int k = 1; k <= 5; ++k) {
        TreeVertex top = r;
        for (int i = 0; i < k; ++i) top = tree_parent(top);
        TreeVertex x = tree_child(top, 1);
        for (int i = 1; i < k; ++i) x = tree_child(x, 0);
        const HoroPoint q{TreePoint(x), TreePoint(r)};
        std::printf("  k=%d  d=%lld  lower=%.3f  upper=%.3f\n", k, static_cast<long long>(dl_distance(dl, o, q)),
                    lower_bound_distance(dl, o, q, norm), upper_bound_distance(dl, o, q));
    }

    for (const char* desc : {"h2-2_bowtie_t-2", "sol"}) {
        const Model m = parse_model(desc);
        std::printf("%s: base and a horizontally shifted point on the 0-horosphere\n", desc);
        const HoroPoint base = m.y.is_tree() ? plane_tree(m, 0, TreePoint(r)) : plane_pair(m, 0, 0, 0);
        for (double shift : {0.5, 2.0, 8.0, 32.0}) {
            const HoroPoint q = m.y.is_tree() ? plane_tree(m, shift, TreePoint(r)) : plane_pair(m, shift, 0, 0);
            const DistanceEstimate e = estimate_distance(m, base, q, norm, Budget::fast());
            std::printf("  shift=%-5g d in [%.4f, %.4f]  lower=%.4f  upper=%.4f%s\n", shift, e.lo, e.hi,
                        lower_bound_distance(m, base, q, norm), upper_bound_distance(m, base, q), e.converged ? "" : "  (not converged)");
        }
    }
}
