#include "sdc/codeops.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace sdc {

std::vector<std::uint64_t> weight_distribution(const GenMatrix& g) {
    std::vector<std::uint64_t> dist(static_cast<size_t>(g.n) + 1, 0);
    for_each_codeword(g, [&](word v) { ++dist[static_cast<size_t>(weight_of(v))]; });
    return dist;
}

int min_weight_bounded(const GenMatrix& g, int abort_below) {
    if (g.k() == 0) return g.n + 1;
    if (g.k() > kMaxEnumerationDim) throw TooLarge("codeword enumeration: k > 28");
    int best = g.n + 1;
    word v = 0;
    const std::uint64_t total = std::uint64_t{1} << g.k();
    for (std::uint64_t i = 1; i < total; ++i) {
        v ^= g.rows[static_cast<size_t>(std::countr_zero(i))];
        int w = weight_of(v);
        if (w < best) {
            best = w;
            if (best < abort_below) return best;
        }
    }
    return best;
}

Code::Code(GenMatrix gen) : gen_(std::move(gen)) {
    rref_ = rref(gen_);
    if (rref_.mat.k() != gen_.k()) throw RankDeficient("Code: generator rows are dependent");
    dist_ = weight_distribution(gen_);
    min_weight_ = 0;
    for (size_t w = 1; w < dist_.size(); ++w)
        if (dist_[w]) {
            min_weight_ = static_cast<int>(w);
            break;
        }
}

bool is_self_dual(const Code& c) {
    if (c.n() != 2 * c.k()) return false;
    for (int i = 0; i < c.k(); ++i)
        for (int j = i; j < c.k(); ++j)
            if (parity_of(c.gen().rows[static_cast<size_t>(i)] & c.gen().rows[static_cast<size_t>(j)]))
                return false;
    return true;
}

Parity classify_parity(const Code& c) {
    // For a self-orthogonal code, weights mod 4 are additive, so the
    // generator rows decide.
    for (word r : c.gen().rows)
        if (weight_of(r) % 4 != 0) return Parity::SinglyEven;
    return Parity::DoublyEven;
}

WE36Params we36_from_distribution(const std::vector<std::uint64_t>& dist) {
    if (dist.size() != 37) throw LengthMismatch("we36: distribution must cover weights 0..36");
    const auto A = [&](int w) { return static_cast<std::int64_t>(dist[static_cast<size_t>(w)]); };

    WE36Params p;
    p.alpha = A(2);
    p.beta = A(4) - 12 * p.alpha;
    p.gamma = A(6) - 64 * p.alpha - 6 * p.beta;
    std::int64_t num = A(8) - 33 - 196 * p.alpha - 11 * p.beta;
    if (num % 64 != 0) throw InconsistentEnumerator("we36: delta is not an integer");
    p.delta = num / 64;

    // The whole shape through y^18 must reproduce, or the distribution does
    // not belong to a self-dual length-36 code.
    const std::int64_t a = p.alpha, b = p.beta, g = p.gamma, d = p.delta;
    const std::array<std::pair<int, std::int64_t>, 10> expect = {{
        {0, 1},
        {2, a},
        {4, 12 * a + b},
        {6, 64 * a + 6 * b + g},
        {8, 33 + 196 * a + 11 * b + 64 * d},
        {10, 3168 + 364 * a - 4 * b - 6 * g - 384 * d},
        {12, 7059 + 364 * a - 39 * b + 832 * d},
        {14, 30336 - 38 * b + 15 * g - 512 * d},
        {16, 58443 - 572 * a + 27 * b - 896 * d},
        {18, 64064 - 858 * a + 72 * b - 20 * g + 1792 * d},
    }};
    for (auto [w, v] : expect)
        if (A(w) != v)
            throw InconsistentEnumerator("we36: coefficient of y^" + std::to_string(w) +
                                         " is " + std::to_string(A(w)) + ", expected " +
                                         std::to_string(v));
    for (int w = 1; w < 36; w += 2)
        if (A(w) != 0) throw InconsistentEnumerator("we36: odd-weight codeword present");
    for (int w = 0; w <= 36; ++w)
        if (A(w) != A(36 - w)) throw InconsistentEnumerator("we36: distribution not symmetric");
    return p;
}

WE36Params we36_params(const Code& c) {
    if (c.n() != 36) throw LengthMismatch("we36: code length is not 36");
    return we36_from_distribution(c.weight_dist());
}

GenMatrix doubly_even_subcode(const Code& c) {
    // wt mod 4 is linear on a self-orthogonal code; split the generators by
    // the functional x -> (wt(x) mod 4)/2.
    const auto& rows = c.gen().rows;
    int bad = -1;
    for (int i = 0; i < c.k(); ++i)
        if (weight_of(rows[static_cast<size_t>(i)]) % 4 != 0) {
            bad = i;
            break;
        }
    if (bad < 0) throw DoublyEvenInput("shadow: code is doubly even");
    GenMatrix sub;
    sub.n = c.n();
    for (int i = 0; i < c.k(); ++i) {
        if (i == bad) continue;
        word r = rows[static_cast<size_t>(i)];
        if (weight_of(r) % 4 != 0) r ^= rows[static_cast<size_t>(bad)];
        sub.rows.push_back(r);
    }
    return sub;
}

ShadowInfo shadow(const Code& c) {
    GenMatrix c0 = doubly_even_subcode(c);
    GenMatrix c0perp = dual_basis(c0);

    // C0-dual splits into four cosets of C0; C covers two of them. Find a
    // representative outside C, the other shadow coset differs by any
    // element of C \ C0.
    word s1 = 0;
    for (word r : c0perp.rows)
        if (!c.contains_word(r)) {
            s1 = r;
            break;
        }
    word in_c_not_c0 = 0;
    RrefResult c0r = rref(c0);
    for (word r : c.gen().rows)
        if (reduce_by_rref(c0r, r) != 0) {
            in_c_not_c0 = r;
            break;
        }
    word s2 = s1 ^ in_c_not_c0;

    ShadowInfo info;
    info.weight_dist.assign(static_cast<size_t>(c.n()) + 1, 0);
    for (word s : {s1, s2})
        for_each_codeword(c0, [&](word v) { ++info.weight_dist[static_cast<size_t>(weight_of(v ^ s))]; });
    for (size_t w = 0; w < info.weight_dist.size(); ++w)
        if (info.weight_dist[w]) {
            info.min_weight = static_cast<int>(w);
            break;
        }
    return info;
}

int covering_radius(const Code& c) {
    const int r = c.n() - c.k();
    if (r > kMaxSyndromeBits) throw TooLarge("covering radius: n-k > 22");
    GenMatrix h = dual_basis(c.gen());

    // Syndromes of the single-coordinate errors.
    std::vector<std::uint32_t> col(static_cast<size_t>(c.n()));
    for (int i = 0; i < c.n(); ++i) {
        std::uint32_t s = 0;
        for (int t = 0; t < r; ++t)
            if ((h.rows[static_cast<size_t>(t)] >> i) & 1) s |= std::uint32_t{1} << t;
        col[static_cast<size_t>(i)] = s;
    }

    std::vector<std::int8_t> depth(size_t{1} << r, -1);
    std::deque<std::uint32_t> queue;
    depth[0] = 0;
    queue.push_back(0);
    int radius = 0;
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        int d = depth[s];
        radius = std::max(radius, d);
        for (std::uint32_t ci : col) {
            std::uint32_t t = s ^ ci;
            if (depth[t] < 0) {
                depth[t] = static_cast<std::int8_t>(d + 1);
                queue.push_back(t);
            }
        }
    }
    return radius;
}

}  // namespace sdc
