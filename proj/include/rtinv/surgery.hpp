#pragma once

// Framed-link surgery presentations at the level of linking matrices.

#include <optional>
#include <string>
#include <vector>

#include "rtinv/graph.hpp"
#include "rtinv/integer_matrix.hpp"

namespace rtinv {

enum class ComponentRole { vertex, genus_a, genus_b, cycle, other };

struct ComponentTag {
    ComponentRole role = ComponentRole::other;
    int id = -1;  // graph vertex for vertex/genus roles, cycle index for cycle role

    friend bool operator==(const ComponentTag&, const ComponentTag&) = default;
};

char role_letter(ComponentRole r);
std::optional<ComponentRole> role_from_letter(char c);

struct SurgeryPresentation {
    IntMatrix B;  // symmetric, framings on the diagonal
    std::vector<ComponentTag> roles;
    std::optional<Graph> source;

    int size() const { return B.rows(); }
    static SurgeryPresentation from_matrix(IntMatrix b);
};

/**
 * Linking matrix of the plumbing presentation of M_G.
 *
 * Components 3v, 3v+1, 3v+2 are K_v, a_v, b_v (all 0-framed, unlinked within
 * the block); B[K_u][K_v] = 1 for every edge. A connected G with cycle rank
 * b1 needs b1 further 0-framed split components, one per independent cycle,
 * appended at the end (role `cycle`). For trees the matrix is 3|V| x 3|V|.
 */
SurgeryPresentation plumbing_presentation(const Graph& g);

/// B -> -B: presents the orientation-reversed manifold.
SurgeryPresentation reverse_presentation(const SurgeryPresentation& sp);

struct SignatureData {
    int b_plus = 0;
    int b_minus = 0;
    int b_zero = 0;
};

SignatureData signature_data(const SurgeryPresentation& sp);

struct HomologyGroup {
    int free_rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1
    std::string str() const;
};

/// H_1 of the surgered manifold, coker(B), via Smith normal form.
HomologyGroup first_homology(const SurgeryPresentation& sp);

}  // namespace rtinv
