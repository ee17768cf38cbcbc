#include <smp/poset.hpp>
#include <smp/error.hpp>
#include <smp/rotation.hpp>

namespace smp {

bool check_realization(const Dag& P, const Instance& inst)
{
    const RotationDigraph dg = rotation_digraph(inst);
    if (dg.size() != P.size()) return false;

    std::vector<int> vertex_of(dg.size(), -1), rotation_of(P.size(), -1);
    for (const auto& rho : dg.rotations) {
        int v = -1;
        for (auto [m, w] : rho.pairs) {
            for (const auto& lab : {inst.label(Side::Man, m), inst.label(Side::Woman, w)}) {
                const int x = label_vertex(lab);
                if (x < 0) throw ValidationError("rotation agent without a construction label");
                if (v >= 0 && x != v)
                    throw ValidationError("rotation " + format_rotation(inst, rho) + " mixes labels of two vertices");
                v = x;
            }
        }
        if (v >= P.size() || rotation_of[v] >= 0) return false;
        vertex_of[rho.id] = v;
        rotation_of[v] = rho.id;
    }

    const auto rp = reachability(P);
    const auto rr = reachability(dg.dag());
    for (int a = 0; a < P.size(); ++a)
        for (int b = 0; b < P.size(); ++b)
            if (rp[a].test(b) != rr[rotation_of[a]].test(rotation_of[b])) return false;
    return true;
}

} // namespace smp
