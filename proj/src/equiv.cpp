#include "sdc/equiv.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "sdc/massexact.hpp"

namespace sdc {

namespace {

constexpr int kMaxCanonK = 20;
constexpr int kMaxCanonN = 40;
constexpr size_t kWordClassCap = 8192;

struct WeightClasses {
    int d1 = 0, d2 = 0;
    std::vector<word> w1, w2;
};

WeightClasses collect_weight_classes(const Code& c) {
    WeightClasses wc;
    const auto& dist = c.weight_dist();
    for (size_t w = 1; w < dist.size(); ++w)
        if (dist[w]) {
            wc.d1 = static_cast<int>(w);
            break;
        }
    if (wc.d1 == 0) return wc;
    for (size_t w = static_cast<size_t>(wc.d1) + 1; w < dist.size(); ++w)
        if (dist[w]) {
            wc.d2 = static_cast<int>(w);
            break;
        }
    // Keeping or dropping a class depends only on its size, so the choice is
    // permutation invariant.
    const bool keep1 = dist[static_cast<size_t>(wc.d1)] <= kWordClassCap;
    const bool keep2 = wc.d2 != 0 && dist[static_cast<size_t>(wc.d2)] <= kWordClassCap;
    if (keep1 || keep2) {
        for_each_codeword(c.gen(), [&](word v) {
            int w = weight_of(v);
            if (keep1 && w == wc.d1)
                wc.w1.push_back(v);
            else if (keep2 && w == wc.d2)
                wc.w2.push_back(v);
        });
    }
    return wc;
}

// Partition coordinates by iteratively refined incidence signatures.
struct CellPartition {
    std::vector<int> cell_of;                        // coordinate -> cell id
    std::vector<std::vector<int>> cells;             // cell id -> coordinates, ascending
    std::vector<std::vector<std::uint32_t>> sigs;    // final signature per coordinate
};

CellPartition partition_coordinates(const Code& c) {
    const int n = c.n();
    WeightClasses wc = collect_weight_classes(c);

    std::vector<std::vector<std::uint32_t>> sig(static_cast<size_t>(n));
    for (auto& s : sig) s = {0, 0};
    for (word v : wc.w1) {
        word b = v;
        while (b) {
            int i = std::countr_zero(b);
            b &= b - 1;
            ++sig[static_cast<size_t>(i)][0];
        }
    }
    for (word v : wc.w2) {
        word b = v;
        while (b) {
            int i = std::countr_zero(b);
            b &= b - 1;
            ++sig[static_cast<size_t>(i)][1];
        }
    }

    std::vector<int> cell_of(static_cast<size_t>(n), 0);
    auto repartition = [&]() {
        std::vector<int> idx(static_cast<size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return sig[static_cast<size_t>(a)] < sig[static_cast<size_t>(b)];
        });
        int cells = 0;
        for (size_t t = 0; t < idx.size(); ++t) {
            if (t > 0 && sig[static_cast<size_t>(idx[t])] != sig[static_cast<size_t>(idx[t - 1])]) ++cells;
            cell_of[static_cast<size_t>(idx[t])] = cells;
        }
        return cells + 1;
    };
    int ncells = repartition();

    for (int round = 0; round < n && ncells < n; ++round) {
        std::vector<std::vector<std::uint32_t>> next(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            next[static_cast<size_t>(i)].assign(1 + 2 * static_cast<size_t>(ncells), 0);
        for (int i = 0; i < n; ++i) next[static_cast<size_t>(i)][0] = static_cast<std::uint32_t>(cell_of[static_cast<size_t>(i)]);
        auto accumulate = [&](const std::vector<word>& ws, size_t offset) {
            std::vector<std::uint32_t> prof(static_cast<size_t>(ncells));
            for (word v : ws) {
                std::fill(prof.begin(), prof.end(), 0);
                word b = v;
                while (b) {
                    int i = std::countr_zero(b);
                    b &= b - 1;
                    ++prof[static_cast<size_t>(cell_of[static_cast<size_t>(i)])];
                }
                b = v;
                while (b) {
                    int i = std::countr_zero(b);
                    b &= b - 1;
                    for (int cidx = 0; cidx < ncells; ++cidx)
                        next[static_cast<size_t>(i)][offset + static_cast<size_t>(cidx)] += prof[static_cast<size_t>(cidx)];
                }
            }
        };
        accumulate(wc.w1, 1);
        accumulate(wc.w2, 1 + static_cast<size_t>(ncells));
        sig = std::move(next);
        int nc = repartition();
        if (nc == ncells) break;
        ncells = nc;
    }

    CellPartition part;
    part.cell_of = cell_of;
    part.cells.assign(static_cast<size_t>(ncells), {});
    for (int i = 0; i < n; ++i) part.cells[static_cast<size_t>(cell_of[static_cast<size_t>(i)])].push_back(i);
    part.sigs = std::move(sig);
    return part;
}

struct Frame {
    std::array<std::uint32_t, kMaxCanonK> T{};
    int rank = 0;
};

class Searcher {
public:
    Searcher(const Code& c, const CanonicalOptions& opts)
        : code_(c), n_(c.n()), k_(c.k()), budget_(opts.node_budget), group_(c.n()) {
        cols_.assign(static_cast<size_t>(n_), 0);
        for (int t = 0; t < k_; ++t)
            for (int i = 0; i < n_; ++i)
                if ((c.gen().rows[static_cast<size_t>(t)] >> i) & 1)
                    cols_[static_cast<size_t>(i)] |= std::uint32_t{1} << t;

        CellPartition part = partition_coordinates(c);
        // Small cells first cuts early branching; stable sort keeps the
        // signature order among equal sizes, so the order is canonical.
        std::vector<int> order(part.cells.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return part.cells[static_cast<size_t>(a)].size() < part.cells[static_cast<size_t>(b)].size();
        });
        for (int ci : order) cells_.push_back(part.cells[static_cast<size_t>(ci)]);
        cell_of_pos_.reserve(static_cast<size_t>(n_));
        for (size_t ci = 0; ci < cells_.size(); ++ci)
            for (size_t t = 0; t < cells_[ci].size(); ++t) cell_of_pos_.push_back(static_cast<int>(ci));

        for (const Perm& g : opts.seeds) {
            if (!is_automorphism(code_, g)) throw VerificationFailed("canonical_form: seed is not an automorphism");
            if (!group_.contains(g)) {
                group_.add_generator(g);
                autos_.push_back(g);
                ++auto_version_;
            }
        }
    }

    void run() {
        Frame f;
        for (int t = 0; t < k_; ++t) f.T[static_cast<size_t>(t)] = std::uint32_t{1} << t;
        prefix_.reserve(static_cast<size_t>(n_));
        prefix_vals_.reserve(static_cast<size_t>(n_));
        search(f, 0);
    }

    const std::vector<std::uint32_t>& best_vals() const { return best_vals_; }
    const std::vector<int>& best_order() const { return best_order_; }
    const std::vector<Perm>& autos() const { return autos_; }
    const PermGroup& group() const { return group_; }

private:
    bool prefix_tight(int upto) const {
        if (!have_best_) return false;
        for (int t = 0; t < upto; ++t)
            if (prefix_vals_[static_cast<size_t>(t)] != best_vals_[static_cast<size_t>(t)]) return false;
        return true;
    }

    void leaf() {
        if (!have_best_ || prefix_vals_ < best_vals_) {
            best_vals_ = prefix_vals_;
            best_order_ = prefix_;
            have_best_ = true;
            return;
        }
        if (prefix_vals_ != best_vals_)
            throw VerificationFailed("canonical_form: reached a dominated leaf");
        Perm g(n_);
        for (int p = 0; p < n_; ++p)
            g.img[static_cast<size_t>(best_order_[static_cast<size_t>(p)])] =
                static_cast<std::uint8_t>(prefix_[static_cast<size_t>(p)]);
        if (g.is_identity() || group_.contains(g)) return;
        if (!is_automorphism(code_, g))
            throw VerificationFailed("canonical_form: harvested permutation is not an automorphism");
        group_.add_generator(g);
        autos_.push_back(g);
        ++auto_version_;
    }

    void search(const Frame& f, int level) {
        if (++nodes_ > budget_) throw SearchBudgetExceeded("canonical_form: node budget exhausted");
        if (level == n_) {
            leaf();
            return;
        }

        const auto& cell = cells_[static_cast<size_t>(cell_of_pos_[static_cast<size_t>(level)])];
        struct Cand {
            int coord;
            std::uint32_t val, w;
        };
        std::array<Cand, kMaxCanonN> cands;
        int ncand = 0;
        std::uint32_t vmin = ~std::uint32_t{0};
        for (int c : cell) {
            if (assigned_ & (word{1} << c)) continue;
            std::uint32_t w = 0;
            const std::uint32_t col = cols_[static_cast<size_t>(c)];
            for (int t = 0; t < k_; ++t)
                w |= static_cast<std::uint32_t>(std::popcount(f.T[static_cast<size_t>(t)] & col) & 1) << t;
            std::uint32_t val = (w >> f.rank) ? (std::uint32_t{1} << f.rank) : w;
            cands[static_cast<size_t>(ncand++)] = {c, val, w};
            vmin = std::min(vmin, val);
        }

        if (prefix_tight(level) && vmin > best_vals_[static_cast<size_t>(level)]) return;

        int explored[kMaxCanonN];
        int nexplored = 0;
        std::uint64_t uf_version = ~std::uint64_t{0};
        std::array<std::uint8_t, kMaxCanonN> uf{};

        for (int ci = 0; ci < ncand; ++ci) {
            const Cand& cd = cands[static_cast<size_t>(ci)];
            if (cd.val != vmin) continue;
            if (prefix_tight(level) && cd.val > best_vals_[static_cast<size_t>(level)]) continue;
            if (nexplored > 0) {
                if (uf_version != auto_version_) {
                    build_uf(level, uf);
                    uf_version = auto_version_;
                }
                int rc = find(uf, cd.coord);
                bool skip = false;
                for (int e = 0; e < nexplored; ++e)
                    if (find(uf, explored[e]) == rc) {
                        skip = true;
                        break;
                    }
                if (skip) continue;
            }

            Frame f2 = f;
            if (cd.w >> f.rank) {
                int s = f.rank + std::countr_zero(cd.w >> f.rank);
                std::swap(f2.T[static_cast<size_t>(s)], f2.T[static_cast<size_t>(f.rank)]);
                const std::uint32_t col = cols_[static_cast<size_t>(cd.coord)];
                for (int t = 0; t < k_; ++t)
                    if (t != f.rank && (std::popcount(f2.T[static_cast<size_t>(t)] & col) & 1))
                        f2.T[static_cast<size_t>(t)] ^= f2.T[static_cast<size_t>(f.rank)];
                f2.rank = f.rank + 1;
            }
            assigned_ |= word{1} << cd.coord;
            prefix_.push_back(cd.coord);
            prefix_vals_.push_back(cd.val);
            search(f2, level + 1);
            prefix_.pop_back();
            prefix_vals_.pop_back();
            assigned_ &= ~(word{1} << cd.coord);
            explored[nexplored++] = cd.coord;
        }
    }

    static int find(std::array<std::uint8_t, kMaxCanonN>& uf, int x) {
        while (uf[static_cast<size_t>(x)] != x) {
            uf[static_cast<size_t>(x)] = uf[uf[static_cast<size_t>(x)]];
            x = uf[static_cast<size_t>(x)];
        }
        return x;
    }

    void build_uf(int level, std::array<std::uint8_t, kMaxCanonN>& uf) const {
        for (int i = 0; i < n_; ++i) uf[static_cast<size_t>(i)] = static_cast<std::uint8_t>(i);
        auto unite = [&](int a, int b) {
            a = find(uf, a);
            b = find(uf, b);
            if (a != b) uf[static_cast<size_t>(std::max(a, b))] = static_cast<std::uint8_t>(std::min(a, b));
        };
        for (const Perm& g : autos_) {
            bool fixes = true;
            for (int t = 0; t < level; ++t)
                if (g.apply(prefix_[static_cast<size_t>(t)]) != prefix_[static_cast<size_t>(t)]) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int i = 0; i < n_; ++i) unite(i, g.apply(i));
        }
    }

    const Code& code_;
    int n_, k_;
    std::uint64_t budget_;
    std::vector<std::uint32_t> cols_;
    std::vector<std::vector<int>> cells_;
    std::vector<int> cell_of_pos_;

    std::vector<int> prefix_;
    std::vector<std::uint32_t> prefix_vals_;
    word assigned_ = 0;

    bool have_best_ = false;
    std::vector<std::uint32_t> best_vals_;
    std::vector<int> best_order_;

    std::vector<Perm> autos_;
    PermGroup group_;
    std::uint64_t auto_version_ = 0;
    std::uint64_t nodes_ = 0;
};

}  // namespace

bool is_automorphism(const Code& c, const Perm& p) {
    if (p.degree() != c.n() || !p.is_valid()) return false;
    for (word r : c.gen().rows)
        if (!c.contains_word(p.apply_to_word(r))) return false;
    return true;
}

std::vector<std::vector<std::uint32_t>> coordinate_signatures(const Code& c) {
    return partition_coordinates(c).sigs;
}

CanonicalRecord canonical_form(const Code& c, const CanonicalOptions& opts) {
    if (c.k() > kMaxCanonK) throw TooLarge("canonical_form: k > 20");
    if (c.n() > kMaxCanonN) throw TooLarge("canonical_form: n > 40");

    CanonicalRecord rec;
    if (c.k() == 0) {
        // Zero code: every coordinate permutation is an automorphism.
        rec.canon = GenMatrix{c.n(), {}};
        rec.aut_order = factorial_big(c.n());
        if (c.n() >= 2) {
            Perm t(c.n());
            std::swap(t.img[0], t.img[1]);
            rec.aut_gens.push_back(t);
        }
        if (c.n() >= 3) {
            Perm cyc(c.n());
            for (int i = 0; i < c.n(); ++i)
                cyc.img[static_cast<size_t>(i)] = static_cast<std::uint8_t>((i + 1) % c.n());
            rec.aut_gens.push_back(cyc);
        }
        return rec;
    }

    Searcher s(c, opts);
    s.run();

    rec.canon.n = c.n();
    rec.canon.rows.assign(static_cast<size_t>(c.k()), 0);
    const auto& vals = s.best_vals();
    for (int p = 0; p < c.n(); ++p)
        for (int t = 0; t < c.k(); ++t)
            if ((vals[static_cast<size_t>(p)] >> t) & 1)
                rec.canon.rows[static_cast<size_t>(t)] |= word{1} << p;

    // Automorphisms were harvested in the input frame; conjugate them into
    // the canon frame and re-verify.
    const auto& order = s.best_order();
    std::vector<int> pos_of(static_cast<size_t>(c.n()));
    for (int p = 0; p < c.n(); ++p) pos_of[static_cast<size_t>(order[static_cast<size_t>(p)])] = p;
    Code canon_code(rec.canon);
    for (const Perm& g : s.autos()) {
        Perm h(c.n());
        for (int p = 0; p < c.n(); ++p)
            h.img[static_cast<size_t>(p)] = static_cast<std::uint8_t>(
                pos_of[static_cast<size_t>(g.apply(order[static_cast<size_t>(p)]))]);
        if (!is_automorphism(canon_code, h))
            throw VerificationFailed("canonical_form: conjugated generator failed verification");
        rec.aut_gens.push_back(h);
    }
    rec.aut_order = s.group().order();
    return rec;
}

bool are_equivalent(const Code& a, const Code& b) {
    if (a.n() != b.n() || a.k() != b.k()) return false;
    if (a.weight_dist() != b.weight_dist()) return false;
    auto sa = coordinate_signatures(a);
    auto sb = coordinate_signatures(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    return canonical_form(a).canon == canonical_form(b).canon;
}

TransferMap transfer_map(const Code& c1, const CanonicalRecord& rec) {
    TransferMap tm;
    tm.k = c1.k();
    if (tm.k == 0) return tm;
    GenMatrix rinv = right_inverse(c1.gen());
    for (const Perm& P : rec.aut_gens) {
        GenMatrix gp = permute_columns(c1.gen(), P);
        GenMatrix fp = multiply(gp, rinv);
        if (multiply(fp, c1.gen()) != gp)
            throw VerificationFailed("transfer_map: f(P)*G1 != G1*P");
        if (rank_of(fp) != tm.k) throw VerificationFailed("transfer_map: image not invertible");
        tm.matrices.push_back(std::move(fp));
    }
    return tm;
}

std::vector<BitVector> orbit_representatives(const TransferMap& tm) {
    if (tm.k > kMaxCanonK) throw TooLarge("orbit_representatives: k > 20");
    const std::uint32_t total = std::uint32_t{1} << tm.k;
    std::vector<bool> visited(total, false);
    std::vector<std::uint32_t> queue;
    std::vector<BitVector> reps;
    for (std::uint32_t v0 = 0; v0 < total; ++v0) {
        if (visited[v0]) continue;
        reps.emplace_back(tm.k, v0);
        visited[v0] = true;
        queue.assign(1, v0);
        while (!queue.empty()) {
            std::uint32_t v = queue.back();
            queue.pop_back();
            for (const GenMatrix& m : tm.matrices) {
                std::uint32_t img = 0;
                for (int i = 0; i < tm.k; ++i)
                    img |= static_cast<std::uint32_t>(
                               std::popcount(static_cast<std::uint32_t>(m.rows[static_cast<size_t>(i)]) & v) & 1)
                           << i;
                if (!visited[img]) {
                    visited[img] = true;
                    queue.push_back(img);
                }
            }
        }
    }
    return reps;
}

}  // namespace sdc
