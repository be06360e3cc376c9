#include "rtinv/surgery.hpp"

#include <sstream>

namespace rtinv {

char role_letter(ComponentRole r) {
    switch (r) {
        case ComponentRole::vertex: return 'K';
        case ComponentRole::genus_a: return 'a';
        case ComponentRole::genus_b: return 'b';
        case ComponentRole::cycle: return 'c';
        case ComponentRole::other: break;
    }
    return '?';
}

std::optional<ComponentRole> role_from_letter(char c) {
    switch (c) {
        case 'K': return ComponentRole::vertex;
        case 'a': return ComponentRole::genus_a;
        case 'b': return ComponentRole::genus_b;
        case 'c': return ComponentRole::cycle;
        default: return std::nullopt;
    }
}

SurgeryPresentation SurgeryPresentation::from_matrix(IntMatrix b) {
    if (b.rows() != b.cols() || !b.is_symmetric()) throw std::invalid_argument("linking matrix must be symmetric");
    SurgeryPresentation sp;
    sp.roles.resize(b.rows());
    sp.B = std::move(b);
    return sp;
}

SurgeryPresentation plumbing_presentation(const Graph& g) {
    if (g.edge_count() == 0) throw UnsupportedInput("graph manifolds need at least one edge");
    if (!g.connected()) throw UnsupportedInput("graph manifolds need a connected graph");
    const int nv = g.vertex_count();
    const int b1 = g.cycle_rank();
    const int m = 3 * nv + b1;
    SurgeryPresentation sp;
    sp.B = IntMatrix(m, m);
    sp.roles.resize(m);
    for (int v = 0; v < nv; ++v) {
        sp.roles[3 * v] = {ComponentRole::vertex, v};
        sp.roles[3 * v + 1] = {ComponentRole::genus_a, v};
        sp.roles[3 * v + 2] = {ComponentRole::genus_b, v};
    }
    for (int c = 0; c < b1; ++c) sp.roles[3 * nv + c] = {ComponentRole::cycle, c};
    for (auto [u, v] : g.edges()) sp.B(3 * u, 3 * v) = sp.B(3 * v, 3 * u) = 1;
    sp.source = g;
    return sp;
}

SurgeryPresentation reverse_presentation(const SurgeryPresentation& sp) {
    SurgeryPresentation out = sp;
    for (int i = 0; i < out.size(); ++i)
        for (int j = 0; j < out.size(); ++j) out.B(i, j) = -sp.B(i, j);
    return out;
}

SignatureData signature_data(const SurgeryPresentation& sp) {
    const Inertia in = inertia(sp.B);
    return {in.positive, in.negative, in.zero};
}

HomologyGroup first_homology(const SurgeryPresentation& sp) {
    HomologyGroup h;
    if (sp.size() == 0) return h;
    const SmithForm f = smith_normal_form(sp.B);
    for (const auto& d : f.diagonal()) {
        if (d == 0)
            ++h.free_rank;
        else if (d != 1)
            h.torsion.push_back(d);
    }
    return h;
}

std::string HomologyGroup::str() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace rtinv
