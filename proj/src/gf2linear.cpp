#include "sdc/gf2linear.hpp"

#include <algorithm>

namespace sdc {

BitVector BitVector::from_string(std::string_view s) {
    if (s.empty() || s.size() > 64) throw TooLarge("bit string length must be 1..64");
    word bits = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            bits |= word{1} << i;
        else if (s[i] != '0')
            throw ParseError(0, "bit string may contain only 0 and 1");
    }
    return BitVector(static_cast<int>(s.size()), bits);
}

std::string BitVector::to_string() const {
    std::string s(static_cast<size_t>(len_), '0');
    for (int i = 0; i < len_; ++i)
        if ((bits_ >> i) & 1) s[static_cast<size_t>(i)] = '1';
    return s;
}

GenMatrix matrix_from_strings(const std::vector<std::string>& rows) {
    GenMatrix m;
    if (rows.empty()) return m;
    m.n = static_cast<int>(rows[0].size());
    for (const auto& r : rows) {
        BitVector v = BitVector::from_string(r);
        if (v.length() != m.n) throw ParseError(0, "ragged matrix rows");
        m.rows.push_back(v.bits());
    }
    return m;
}

GenMatrix identity_matrix(int k) {
    GenMatrix m;
    m.n = k;
    for (int i = 0; i < k; ++i) m.rows.push_back(word{1} << i);
    return m;
}

RrefResult rref(const GenMatrix& m) {
    const int k = m.k();
    std::vector<word> rows = m.rows;
    std::vector<word> trans(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) trans[static_cast<size_t>(i)] = word{1} << i;

    RrefResult out;
    out.mat.n = m.n;
    int r = 0;  // next pivot row
    for (int c = 0; c < m.n && r < k; ++c) {
        const word cm = word{1} << c;
        int p = -1;
        for (int i = r; i < k; ++i)
            if (rows[static_cast<size_t>(i)] & cm) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[static_cast<size_t>(p)], rows[static_cast<size_t>(r)]);
        std::swap(trans[static_cast<size_t>(p)], trans[static_cast<size_t>(r)]);
        for (int i = 0; i < k; ++i) {
            if (i != r && (rows[static_cast<size_t>(i)] & cm)) {
                rows[static_cast<size_t>(i)] ^= rows[static_cast<size_t>(r)];
                trans[static_cast<size_t>(i)] ^= trans[static_cast<size_t>(r)];
            }
        }
        out.pivots.push_back(c + 1);
        ++r;
    }
    out.mat.rows.assign(rows.begin(), rows.begin() + r);
    out.transform.assign(trans.begin(), trans.begin() + r);
    return out;
}

int rank_of(const GenMatrix& m) { return rref(m).mat.k(); }

GenMatrix dual_basis(const GenMatrix& m) {
    RrefResult r = rref(m);
    const int rk = r.mat.k();
    std::vector<bool> is_pivot(static_cast<size_t>(m.n), false);
    for (int p : r.pivots) is_pivot[static_cast<size_t>(p - 1)] = true;

    GenMatrix out;
    out.n = m.n;
    for (int f = 0; f < m.n; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        word v = word{1} << f;
        for (int t = 0; t < rk; ++t)
            if ((r.mat.rows[static_cast<size_t>(t)] >> f) & 1)
                v |= word{1} << (r.pivots[static_cast<size_t>(t)] - 1);
        out.rows.push_back(v);
    }
    return out;
}

GenMatrix right_inverse(const GenMatrix& m) {
    RrefResult r = rref(m);
    const int k = m.k();
    if (r.mat.k() < k) throw RankDeficient("right_inverse: rank < row count");
    // R = S * T where S selects pivot rows: row p_t of R is transform row t.
    GenMatrix out;
    out.n = k;
    out.rows.assign(static_cast<size_t>(m.n), 0);
    for (int t = 0; t < k; ++t)
        out.rows[static_cast<size_t>(r.pivots[static_cast<size_t>(t)] - 1)] =
            r.transform[static_cast<size_t>(t)];
    return out;
}

std::optional<BitVector> solve_membership(const GenMatrix& m, const BitVector& v) {
    RrefResult r = rref(m);
    word x = v.bits();
    word coeff = 0;
    for (int t = 0; t < r.mat.k(); ++t) {
        if ((x >> (r.pivots[static_cast<size_t>(t)] - 1)) & 1) {
            x ^= r.mat.rows[static_cast<size_t>(t)];
            coeff ^= r.transform[static_cast<size_t>(t)];
        }
    }
    if (x != 0) return std::nullopt;
    return BitVector(m.k(), coeff);
}

GenMatrix multiply(const GenMatrix& a, const GenMatrix& b) {
    GenMatrix out;
    out.n = b.n;
    out.rows.reserve(a.rows.size());
    for (word ar : a.rows) {
        word acc = 0;
        word bits = ar;
        while (bits) {
            int j = std::countr_zero(bits);
            bits &= bits - 1;
            acc ^= b.rows[static_cast<size_t>(j)];
        }
        out.rows.push_back(acc);
    }
    return out;
}

word reduce_by_rref(const RrefResult& r, word v) {
    for (int t = 0; t < r.mat.k(); ++t)
        if ((v >> (r.pivots[static_cast<size_t>(t)] - 1)) & 1)
            v ^= r.mat.rows[static_cast<size_t>(t)];
    return v;
}

}  // namespace sdc
