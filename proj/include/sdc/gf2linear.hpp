#pragma once

// Bit-packed linear algebra over GF(2). A codeword is one 64-bit word:
// coordinate i (1-based) lives in bit position i-1, so coordinate 1 is the
// least significant bit. Lengths above 64 are rejected.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/errors.hpp"

namespace sdc {

using word = std::uint64_t;

inline int weight_of(word w) { return std::popcount(w); }
inline bool parity_of(word w) { return std::popcount(w) & 1; }

inline word mask_of(int length) {
    return length >= 64 ? ~word{0} : (word{1} << length) - 1;
}

class BitVector {
public:
    BitVector() = default;
    BitVector(int length, word bits) : len_(length), bits_(bits & mask_of(length)) {}

    static BitVector zero(int length) { return BitVector(length, 0); }
    // "0101..." with coordinate 1 first.
    static BitVector from_string(std::string_view s);

    int length() const { return len_; }
    word bits() const { return bits_; }
    bool get(int coord) const { return (bits_ >> (coord - 1)) & 1; }
    void set(int coord, bool v) {
        word m = word{1} << (coord - 1);
        bits_ = v ? (bits_ | m) : (bits_ & ~m);
    }
    int weight() const { return weight_of(bits_); }
    bool dot(const BitVector& o) const { return parity_of(bits_ & o.bits_); }

    BitVector operator^(const BitVector& o) const { return BitVector(len_, bits_ ^ o.bits_); }
    BitVector& operator^=(const BitVector& o) {
        bits_ ^= o.bits_;
        return *this;
    }

    std::string to_string() const;

    friend auto operator<=>(const BitVector&, const BitVector&) = default;

private:
    int len_ = 0;
    word bits_ = 0;
};

// A list of rows over n columns. Used both for generator matrices (rows
// independent, enforced by Code) and for general GF(2) matrices such as the
// n x k output of right_inverse.
struct GenMatrix {
    int n = 0;
    std::vector<word> rows;

    GenMatrix() = default;
    GenMatrix(int n, std::vector<word> rows) : n(n), rows(std::move(rows)) {}

    int k() const { return static_cast<int>(rows.size()); }
    BitVector row(int i) const { return BitVector(n, rows[static_cast<size_t>(i)]); }

    friend bool operator==(const GenMatrix& a, const GenMatrix& b) = default;
    // Numeric-lexicographic on packed rows; total order used for canonical
    // tie-breaking and database ordering.
    friend bool operator<(const GenMatrix& a, const GenMatrix& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.rows < b.rows;
    }
};

GenMatrix matrix_from_strings(const std::vector<std::string>& rows);
GenMatrix identity_matrix(int k);

struct RrefResult {
    GenMatrix mat;            // zero rows dropped; rank = mat.k()
    std::vector<int> pivots;  // 1-based column indices, strictly increasing
    // transform[t] is a bit mask over input rows: mat.rows[t] equals the XOR
    // of the input rows selected by transform[t].
    std::vector<word> transform;
};

RrefResult rref(const GenMatrix& m);
int rank_of(const GenMatrix& m);

// Basis of the orthogonal complement of m's row space, n - rank rows.
GenMatrix dual_basis(const GenMatrix& m);

// n x k matrix R with m * R = I_k. Throws RankDeficient if rank(m) < k.
GenMatrix right_inverse(const GenMatrix& m);

// Coefficients expressing v in m's rows, or nullopt if v is outside the row
// space. The coefficient vector refers to m's rows as given, not to the rref.
std::optional<BitVector> solve_membership(const GenMatrix& m, const BitVector& v);

// (a.k x a.n) * (a.n x b.n); requires a.n == b.k().
GenMatrix multiply(const GenMatrix& a, const GenMatrix& b);

// Reduce v against an rref basis; returns the residue (zero iff member).
word reduce_by_rref(const RrefResult& r, word v);

}  // namespace sdc
