#include "sdc/perm.hpp"

#include <algorithm>

namespace sdc {

bool Perm::is_valid() const {
    std::vector<bool> seen(img.size(), false);
    for (auto v : img) {
        if (v >= img.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

GenMatrix permute_columns(const GenMatrix& m, const Perm& p) {
    GenMatrix out;
    out.n = m.n;
    out.rows.reserve(m.rows.size());
    for (word r : m.rows) out.rows.push_back(p.apply_to_word(r));
    return out;
}

PermGroup::PermGroup(int degree) : n_(degree) {}

std::pair<Perm, size_t> PermGroup::sift(const Perm& g) const {
    Perm h = g;
    for (size_t l = 0; l < chain_.size(); ++l) {
        int p = h.apply(chain_[l].base);
        const auto& u = chain_[l].transversal[static_cast<size_t>(p)];
        if (!u) return {h, l};
        h = u->inverse() * h;
    }
    return {h, chain_.size()};
}

bool PermGroup::contains(const Perm& g) const {
    if (g.degree() != n_) return false;
    return sift(g).first.is_identity();
}

BigCount PermGroup::order() const {
    BigCount o = 1;
    for (const auto& lvl : chain_) {
        std::size_t orbit = 0;
        for (const auto& u : lvl.transversal)
            if (u) ++orbit;
        o *= static_cast<unsigned>(orbit);
    }
    return o;
}

void PermGroup::add_generator(const Perm& g) {
    if (g.degree() != n_ || !g.is_valid())
        throw VerificationFailed("PermGroup: malformed generator");
    auto [res, lvl] = sift(g);
    if (res.is_identity()) return;
    gens_.push_back(g);
    insert(lvl, res);
}

void PermGroup::insert(size_t level, const Perm& g) {
    // g stabilizes all bases before `level`. Re-sift so stacked insertions
    // stay consistent as the chain grows.
    auto [res, lvl] = [&] {
        Perm h = g;
        for (size_t l = level; l < chain_.size(); ++l) {
            int p = h.apply(chain_[l].base);
            const auto& u = chain_[l].transversal[static_cast<size_t>(p)];
            if (!u) return std::pair<Perm, size_t>{h, l};
            h = u->inverse() * h;
        }
        return std::pair<Perm, size_t>{h, chain_.size()};
    }();
    if (res.is_identity()) return;

    if (lvl == chain_.size()) {
        Level L;
        L.base = 0;
        while (res.apply(L.base) == L.base) ++L.base;
        L.transversal.assign(static_cast<size_t>(n_), std::nullopt);
        L.transversal[static_cast<size_t>(L.base)] = Perm::identity(n_);
        chain_.push_back(std::move(L));
    }
    chain_[lvl].gens.push_back(res);
    rebuild_orbit(lvl);

    // Close under Schreier generators of this level's point stabilizer.
    // Recursive insertions may grow chain_, so take copies, never references.
    std::vector<int> orbit;
    for (int p = 0; p < n_; ++p)
        if (chain_[lvl].transversal[static_cast<size_t>(p)]) orbit.push_back(p);
    const size_t gen_count = chain_[lvl].gens.size();
    for (int p : orbit) {
        const Perm up = *chain_[lvl].transversal[static_cast<size_t>(p)];
        for (size_t si = 0; si < gen_count; ++si) {
            const Perm s = chain_[lvl].gens[si];
            int q = s.apply(p);
            const Perm uq = *chain_[lvl].transversal[static_cast<size_t>(q)];
            Perm schreier = uq.inverse() * (s * up);
            if (!schreier.is_identity()) insert(lvl + 1, schreier);
        }
    }
}

void PermGroup::rebuild_orbit(size_t level) {
    Level& L = chain_[level];
    std::vector<std::optional<Perm>> tr(static_cast<size_t>(n_), std::nullopt);
    tr[static_cast<size_t>(L.base)] = Perm::identity(n_);
    std::vector<int> queue = {L.base};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int p = queue[qi];
        for (const Perm& s : L.gens) {
            int q = s.apply(p);
            if (!tr[static_cast<size_t>(q)]) {
                tr[static_cast<size_t>(q)] = s * *tr[static_cast<size_t>(p)];
                queue.push_back(q);
            }
        }
    }
    L.transversal = std::move(tr);
}

}  // namespace sdc
