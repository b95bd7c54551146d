#pragma once

// Coordinate permutations and exact permutation-group orders via a
// stabilizer chain (Schreier-Sims). Degrees here never exceed 64.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdc/bigcount.hpp"
#include "sdc/gf2linear.hpp"

namespace sdc {

struct Perm {
    // img[i] is the 0-based image of 0-based point i.
    std::vector<std::uint8_t> img;

    Perm() = default;
    explicit Perm(int n) : img(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = static_cast<std::uint8_t>(i);
    }
    static Perm identity(int n) { return Perm(n); }

    int degree() const { return static_cast<int>(img.size()); }
    int apply(int i) const { return img[static_cast<size_t>(i)]; }
    bool is_identity() const {
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] != i) return false;
        return true;
    }

    // (a * b)(x) = a(b(x))
    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm r(a.degree());
        for (int i = 0; i < a.degree(); ++i)
            r.img[static_cast<size_t>(i)] = a.img[b.img[static_cast<size_t>(i)]];
        return r;
    }
    Perm inverse() const {
        Perm r(degree());
        for (int i = 0; i < degree(); ++i) r.img[img[static_cast<size_t>(i)]] = static_cast<std::uint8_t>(i);
        return r;
    }

    // Move coordinate bits: bit i of v goes to bit img[i].
    word apply_to_word(word v) const {
        word out = 0;
        while (v) {
            int i = std::countr_zero(v);
            v &= v - 1;
            out |= word{1} << img[static_cast<size_t>(i)];
        }
        return out;
    }

    bool is_valid() const;
    friend bool operator==(const Perm&, const Perm&) = default;
};

// Row space of m with every row permuted.
GenMatrix permute_columns(const GenMatrix& m, const Perm& p);

// Incremental stabilizer chain with base 0,1,2,... Supports membership
// tests and exact order; generators may be added at any time.
class PermGroup {
public:
    explicit PermGroup(int degree);

    int degree() const { return n_; }
    void add_generator(const Perm& g);
    bool contains(const Perm& g) const;
    BigCount order() const;
    std::vector<Perm> generators() const { return gens_; }

private:
    struct Level {
        int base = 0;
        // transversal[p] = a group element mapping base to p (identity at base).
        std::vector<std::optional<Perm>> transversal;
        std::vector<Perm> gens;  // generators of this level's group (stabilize all earlier bases)
    };

    void insert(size_t level, const Perm& g);
    void rebuild_orbit(size_t level);
    // Strip g through the chain; returns the residue and the level reached.
    std::pair<Perm, size_t> sift(const Perm& g) const;

    int n_;
    std::vector<Level> chain_;
    std::vector<Perm> gens_;
};

}  // namespace sdc
