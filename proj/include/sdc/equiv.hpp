#pragma once

// Equivalence under coordinate permutation: canonical forms, automorphism
// groups, and the induced action of a code's automorphisms on its message
// space (used to cut down extension vectors).

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/bigcount.hpp"
#include "sdc/codeops.hpp"
#include "sdc/perm.hpp"

namespace sdc {

struct CanonicalRecord {
    GenMatrix canon;             // canonical generator matrix, in rref
    BigCount aut_order;          // exact automorphism group order
    std::vector<Perm> aut_gens;  // generators of Aut, in the canon coordinate frame
    std::string origin;          // provenance note
};

struct CanonicalOptions {
    std::uint64_t node_budget = 100'000'000;
    // Known automorphisms of the input code; verified before use. They let
    // the search collapse symmetric branches immediately.
    std::vector<Perm> seeds;
};

// Two codes have identical canon iff they are permutation equivalent. The
// same search harvests Aut generators and the exact group order.
CanonicalRecord canonical_form(const Code& c, const CanonicalOptions& opts = {});

bool are_equivalent(const Code& a, const Code& b);

// Per-coordinate invariant signatures (incidence with the two lightest
// nonzero weight classes, refined to a fixed point). The sorted signature
// multiset is an equivalence invariant used for fast rejection; the
// partition seeds the canonical search.
std::vector<std::vector<std::uint32_t>> coordinate_signatures(const Code& c);

struct TransferMap {
    int k = 0;
    std::vector<GenMatrix> matrices;  // k x k invertible images of Aut generators
};

// Images f(P) = G1 * P * right_inverse(G1) for each Aut generator P of c1;
// each verified against the defining identity f(P) * G1 = G1 * P.
TransferMap transfer_map(const Code& c1, const CanonicalRecord& rec);

// One representative (numerically smallest member) per orbit of F_2^k under
// the group generated by tm.matrices acting on column vectors.
std::vector<BitVector> orbit_representatives(const TransferMap& tm);

// True iff p maps the row space of c onto itself.
bool is_automorphism(const Code& c, const Perm& p);

}  // namespace sdc
