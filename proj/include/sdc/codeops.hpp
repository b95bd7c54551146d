#pragma once

// Code-level predicates and analytics: self-duality, weight distribution,
// length-36 weight-enumerator parameters, shadow, covering radius.

#include <cstdint>
#include <vector>

#include "sdc/gf2linear.hpp"

namespace sdc {

// Full codeword enumeration is budgeted at 2^k steps.
inline constexpr int kMaxEnumerationDim = 28;
// Syndrome-space BFS for the covering radius is budgeted at 2^(n-k) states.
inline constexpr int kMaxSyndromeBits = 22;

// Walks all 2^k codewords in Gray-code order (one XOR per step), calling
// f(codeword) for each, starting with the zero word.
template <typename F>
void for_each_codeword(const GenMatrix& g, F&& f) {
    if (g.k() > kMaxEnumerationDim) throw TooLarge("codeword enumeration: k > 28");
    word v = 0;
    f(v);
    const std::uint64_t total = std::uint64_t{1} << g.k();
    for (std::uint64_t i = 1; i < total; ++i) {
        v ^= g.rows[static_cast<size_t>(std::countr_zero(i))];
        f(v);
    }
}

std::vector<std::uint64_t> weight_distribution(const GenMatrix& g);

// Minimum nonzero codeword weight, with early abort: returns as soon as a
// weight strictly below abort_below has been seen. Returns n+1 for k = 0.
int min_weight_bounded(const GenMatrix& g, int abort_below);

// An immutable code: generator matrix plus cached rref and weight data.
// Construction verifies row independence.
class Code {
public:
    explicit Code(GenMatrix gen);

    const GenMatrix& gen() const { return gen_; }
    int n() const { return gen_.n; }
    int k() const { return gen_.k(); }
    int min_weight() const { return min_weight_; }
    const std::vector<std::uint64_t>& weight_dist() const { return dist_; }
    const RrefResult& reduced() const { return rref_; }

    bool contains(const BitVector& v) const { return reduce_by_rref(rref_, v.bits()) == 0; }
    bool contains_word(word v) const { return reduce_by_rref(rref_, v) == 0; }

private:
    GenMatrix gen_;
    RrefResult rref_;
    std::vector<std::uint64_t> dist_;
    int min_weight_ = 0;
};

bool is_self_dual(const Code& c);

enum class Parity { DoublyEven, SinglyEven };
Parity classify_parity(const Code& c);  // requires is_self_dual(c)

struct WE36Params {
    std::int64_t alpha = 0, beta = 0, gamma = 0, delta = 0;
};

// Extract (alpha, beta, gamma, delta) from a self-dual length-36 code and
// validate the full enumerator shape through y^18 against them.
WE36Params we36_params(const Code& c);
WE36Params we36_from_distribution(const std::vector<std::uint64_t>& dist);

struct ShadowInfo {
    int min_weight = 0;
    std::vector<std::uint64_t> weight_dist;
};

// Shadow of a singly even self-dual code: the two cosets of the doubly even
// subcode C0 inside C0-dual that lie outside C. Throws DoublyEvenInput when
// the code has no weight = 2 mod 4 codeword.
ShadowInfo shadow(const Code& c);

// Doubly even subcode basis of a singly even self-dual code (k-1 rows).
GenMatrix doubly_even_subcode(const Code& c);

// Largest coset-leader weight, by BFS over the 2^(n-k) syndrome space.
int covering_radius(const Code& c);

}  // namespace sdc
