#include "sdc/classify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace sdc {

namespace {

void log_line(const ClassifyOptions& opts, const std::string& s) {
    if (opts.log) opts.log(s);
}

void poll_abort(const ClassifyOptions& opts) {
    if (opts.should_abort && opts.should_abort()) throw AbortRequested("classification aborted");
}

// Weight-2 words of a code are exactly its pairs of equal columns.
std::vector<std::pair<int, int>> weight2_pairs(const GenMatrix& g) {
    std::vector<word> cols(static_cast<size_t>(g.n), 0);
    for (int t = 0; t < g.k(); ++t)
        for (int i = 0; i < g.n; ++i)
            if ((g.rows[static_cast<size_t>(t)] >> i) & 1) cols[static_cast<size_t>(i)] |= word{1} << t;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (cols[static_cast<size_t>(i)] == cols[static_cast<size_t>(j)]) pairs.emplace_back(i, j);
    return pairs;
}

ClassRecord record_from(CanonicalRecord&& rec, const Code& code, std::string origin) {
    ClassRecord r;
    r.canon = std::move(rec.canon);
    r.aut_order = std::move(rec.aut_order);
    r.aut_gens = std::move(rec.aut_gens);
    r.weight_dist = code.weight_dist();
    r.min_weight = code.min_weight();
    r.origin = std::move(origin);
    return r;
}

// The three self-dual codes between C0 and its dual contain exactly one code
// with the doubled-coordinate weight-2 word; the other two (when they exist)
// are swapped by transposing the last two coordinates.
struct ExtensionPair {
    bool valid = false;
    GenMatrix first, second;  // both in rref when valid
};

ExtensionPair extension_pair(const GenMatrix& g1, std::uint32_t avec) {
    const int n = g1.n + 2;
    const word tail = (word{3} << (n - 2));

    GenMatrix c0;
    c0.n = n;
    c0.rows.reserve(g1.rows.size());
    for (int i = 0; i < g1.k(); ++i)
        c0.rows.push_back(g1.rows[static_cast<size_t>(i)] | (((avec >> i) & 1) ? tail : 0));

    RrefResult c0r = rref(c0);
    GenMatrix perp = dual_basis(c0);

    // Two independent coset representatives of C0 inside its dual. Residues
    // stay in the coset of the row they came from.
    word reps[2] = {0, 0};
    int found = 0;
    std::vector<word> resid;
    for (word r : perp.rows) {
        word res = reduce_by_rref(c0r, r);
        if (reduce_by_rref(rref(GenMatrix{n, resid}), res) == 0) continue;
        reps[found++] = res;
        resid.push_back(res);
        if (found == 2) break;
    }
    if (found != 2) throw VerificationFailed("extension_pair: dual/subcode dimension mismatch");

    // Of the three nonzero cosets, the one through the doubled weight-2 word
    // always yields the minimum-weight-2 code; drop it.
    const word e = tail;
    word cands[3] = {reps[0], reps[1], reps[0] ^ reps[1]};
    int skip = -1;
    for (int i = 0; i < 3; ++i)
        if (reduce_by_rref(c0r, cands[i] ^ e) == 0) skip = i;
    if (skip < 0) throw VerificationFailed("extension_pair: weight-2 coset not found");

    ExtensionPair out;
    word x1 = cands[(skip + 1) % 3], x2 = cands[(skip + 2) % 3];
    if (weight_of(x1) % 2 != 0) {
        // Both remaining cosets are odd; no further self-dual code over this C0.
        if (weight_of(x2) % 2 == 0) throw VerificationFailed("extension_pair: coset parity mismatch");
        return out;
    }
    if (weight_of(x2) % 2 != 0) throw VerificationFailed("extension_pair: coset parity mismatch");

    GenMatrix d1 = c0, d2 = c0;
    d1.rows.push_back(x1);
    d2.rows.push_back(x2);
    out.first = rref(d1).mat;
    out.second = rref(d2).mat;
    if (out.second < out.first) std::swap(out.first, out.second);
    out.valid = true;
    return out;
}

std::vector<std::uint32_t> extension_orbit_reps(const ClassRecord& parent, const ClassifyOptions& opts) {
    const int k1 = parent.canon.k();
    std::vector<std::uint32_t> reps;
    if (opts.use_orbit_reduction && !parent.aut_gens.empty()) {
        CanonicalRecord rec;
        rec.canon = parent.canon;
        rec.aut_gens = parent.aut_gens;
        TransferMap tm = transfer_map(Code(parent.canon), rec);
        for (const BitVector& v : orbit_representatives(tm))
            reps.push_back(static_cast<std::uint32_t>(v.bits()));
    } else {
        reps.resize(size_t{1} << k1);
        for (std::uint32_t v = 0; v < reps.size(); ++v) reps[static_cast<size_t>(v)] = v;
    }
    return reps;
}

}  // namespace

Layer weight2_layer(const std::vector<ClassRecord>& prev_all, int n, const ClassifyOptions& opts) {
    Layer layer;
    layer.n = n;
    layer.d = 2;
    std::map<std::vector<word>, ClassRecord> dedup;
    for (size_t pi = 0; pi < prev_all.size(); ++pi) {
        poll_abort(opts);
        const ClassRecord& parent = prev_all[pi];
        GenMatrix g;
        g.n = n;
        g.rows.push_back(3);  // the new i2 block on coordinates 1,2
        for (word r : parent.canon.rows) g.rows.push_back(r << 2);
        Code code(std::move(g));

        CanonicalOptions copts;
        copts.node_budget = opts.node_budget;
        Perm swap01(n);
        std::swap(swap01.img[0], swap01.img[1]);
        copts.seeds.push_back(swap01);
        for (const Perm& pg : parent.aut_gens) {
            Perm lift(n);
            for (int i = 0; i < n - 2; ++i)
                lift.img[static_cast<size_t>(i + 2)] = static_cast<std::uint8_t>(pg.apply(i) + 2);
            copts.seeds.push_back(lift);
        }
        auto pairs = weight2_pairs(parent.canon);
        if (!pairs.empty()) {
            Perm blockswap(n);
            auto [p, q] = pairs.front();
            std::swap(blockswap.img[0], blockswap.img[static_cast<size_t>(p + 2)]);
            std::swap(blockswap.img[1], blockswap.img[static_cast<size_t>(q + 2)]);
            copts.seeds.push_back(blockswap);
        }

        CanonicalRecord rec = canonical_form(code, copts);
        // |Aut(i2 + C)| = 2(m+1)|Aut(C)| where m counts C's i2 blocks.
        BigCount expected = 2 * BigCount(pairs.size() + 1) * parent.aut_order;
        if (!parent.aut_gens.empty() && rec.aut_order != expected)
            throw VerificationFailed("weight2_layer: group order disagrees with the block formula");
        ClassRecord out = record_from(std::move(rec), code, "i2+parent[" + std::to_string(pi) + "]");
        auto key = out.canon.rows;
        if (!dedup.emplace(std::move(key), std::move(out)).second)
            throw VerificationFailed("weight2_layer: equivalent parents produced one class");
    }
    for (auto& [key, rec] : dedup) layer.records.push_back(std::move(rec));
    return layer;
}

std::vector<ExtensionCandidate> build_extensions(const ClassRecord& parent, int target_d,
                                                 const ClassifyOptions& opts) {
    const GenMatrix& g1 = parent.canon;
    std::vector<ExtensionCandidate> out;

    // Coefficients of the all-ones word; extensions with lambda.a = 0 admit
    // no self-dual code beyond the weight-2 one.
    auto lambda = solve_membership(g1, BitVector(g1.n, mask_of(g1.n)));
    if (!lambda) throw VerificationFailed("build_extensions: parent misses the all-ones word");
    const word lam = lambda->bits();

    for (std::uint32_t a : extension_orbit_reps(parent, opts)) {
        if (!parity_of(lam & a)) continue;
        ExtensionPair pair = extension_pair(g1, a);
        if (!pair.valid) throw VerificationFailed("build_extensions: parity filter disagrees with cosets");
        if (min_weight_bounded(pair.first, target_d) != target_d) continue;
        out.push_back(ExtensionCandidate{a, pair.first});
    }
    return out;
}

Layer assemble_layer(int n, int d, const std::vector<const ClassRecord*>& parents,
                     const ClassifyOptions& opts) {
    struct Found {
        size_t parent;
        std::uint32_t avec;
        ClassRecord rec;
    };
    std::vector<Found> found;

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (size_t pi = 0; pi < parents.size(); ++pi) {
            poll_abort(opts);
            for (auto& cand : build_extensions(*parents[pi], d, opts)) {
                Code code(std::move(cand.code));
                CanonicalOptions copts;
                copts.node_budget = opts.node_budget;
                CanonicalRecord rec = canonical_form(code, copts);
                std::ostringstream origin;
                origin << "parent[" << pi << "] a=0x" << std::hex << cand.avec;
                found.push_back({pi, cand.avec, record_from(std::move(rec), code, origin.str())});
            }
        }
    } else {
        std::atomic<size_t> next{0};
        std::atomic<bool> abort_flag{false};
        std::vector<std::vector<Found>> buckets(static_cast<size_t>(jobs));
        std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
        auto worker = [&](int wi) {
            try {
                for (;;) {
                    size_t pi = next.fetch_add(1);
                    if (pi >= parents.size() || abort_flag.load()) return;
                    if (opts.should_abort && opts.should_abort()) {
                        abort_flag.store(true);
                        return;
                    }
                    for (auto& cand : build_extensions(*parents[pi], d, opts)) {
                        Code code(std::move(cand.code));
                        CanonicalOptions copts;
                        copts.node_budget = opts.node_budget;
                        CanonicalRecord rec = canonical_form(code, copts);
                        std::ostringstream origin;
                        origin << "parent[" << pi << "] a=0x" << std::hex << cand.avec;
                        buckets[static_cast<size_t>(wi)].push_back(
                            {pi, cand.avec, record_from(std::move(rec), code, origin.str())});
                    }
                }
            } catch (...) {
                errors[static_cast<size_t>(wi)] = std::current_exception();
                abort_flag.store(true);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        if (abort_flag.load()) throw AbortRequested("classification aborted");
        for (auto& b : buckets)
            for (auto& f : b) found.push_back(std::move(f));
        // Deterministic merge order regardless of thread timing.
        std::stable_sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
            return a.parent != b.parent ? a.parent < b.parent : a.avec < b.avec;
        });
    }

    Layer layer;
    layer.n = n;
    layer.d = d;
    std::map<std::vector<word>, ClassRecord> dedup;
    size_t kept = 0;
    for (auto& f : found) {
        ++kept;
        if (opts.spot_check_interval > 0 && kept % static_cast<size_t>(opts.spot_check_interval) == 0) {
            ExtensionPair pair = extension_pair(parents[f.parent]->canon, f.avec);
            if (!pair.valid || !are_equivalent(Code(pair.first), Code(pair.second)))
                throw VerificationFailed("assemble_layer: paired intermediate codes are not equivalent");
        }
        dedup.emplace(f.rec.canon.rows, std::move(f.rec));
    }
    for (auto& [key, rec] : dedup) layer.records.push_back(std::move(rec));
    return layer;
}

std::vector<const ClassRecord*> LengthClassification::all_records() const {
    std::vector<const ClassRecord*> out;
    for (const auto& l : layers)
        for (const auto& r : l.records) out.push_back(&r);
    return out;
}

std::size_t LengthClassification::total_classes() const {
    std::size_t t = 0;
    for (const auto& l : layers) t += l.records.size();
    return t;
}

LengthClassification base_classification() {
    LengthClassification base;
    base.n = 0;
    Layer l;
    l.n = 0;
    l.d = 0;
    ClassRecord empty;
    empty.canon = GenMatrix{0, {}};
    empty.aut_order = 1;
    empty.weight_dist = {1};
    empty.min_weight = 0;
    empty.origin = "base";
    l.records.push_back(std::move(empty));
    l.certified = true;
    base.layers.push_back(std::move(l));
    base.total_certified = true;
    return base;
}

LengthClassification classify_length(int n, const LengthClassification& prior,
                                     std::optional<int> max_d, const ClassifyOptions& opts) {
    if (n != prior.n + 2) throw LengthMismatch("classify_length: prior must cover length n-2");
    if (!prior.total_certified) throw NotCertified("classify_length: prior classification not certified");

    LengthClassification out;
    out.n = n;

    std::vector<ClassRecord> prior_records;
    for (const auto* r : prior.all_records()) prior_records.push_back(*r);

    std::vector<FamilyEntry> family;
    std::vector<BigCount> orders;
    auto add_layer = [&](Layer&& layer, int d) {
        CertificateReport rep = completeness_check(
            [&] {
                auto fam = family;
                for (const auto& r : layer.records) fam.push_back({r.aut_order, r.weight_dist});
                return fam;
            }(),
            n, d);
        log_line(opts, rep.text + " (classes=" + std::to_string(layer.records.size()) + ")");
        if (!rep.ok) throw CertificateFailed(rep.text);
        for (const auto& r : layer.records) {
            family.push_back({r.aut_order, r.weight_dist});
            orders.push_back(r.aut_order);
        }
        layer.certified = true;
        out.layers.push_back(std::move(layer));
    };

    add_layer(weight2_layer(prior_records, n, opts), 2);

    const BigCount full_mass = sigma_product(n / 2 - 1);
    auto mass_so_far = [&] {
        BigCount m = 0;
        const BigCount nf = factorial_big(n);
        for (const auto& a : orders) m += nf / a;
        return m;
    };

    for (int d = 4; mass_so_far() != full_mass; d += 2) {
        if (max_d && d > *max_d) return out;  // partial: total mass not certified
        if (d > n)
            throw CertificateFailed("classify_length: layers exhausted without reaching full mass");
        std::vector<const ClassRecord*> parents;
        for (const auto& r : prior_records)
            if (r.min_weight >= d - 2) parents.push_back(&r);
        add_layer(assemble_layer(n, d, parents, opts), d);
    }

    CertificateReport total = total_mass_check(orders, n);
    log_line(opts, total.text + " (total classes=" + std::to_string(out.total_classes()) + ")");
    if (!total.ok) throw CertificateFailed(total.text);
    out.total_certified = true;
    return out;
}

std::vector<LengthClassification> classify_up_to(int n_max, std::optional<int> max_d,
                                                 const ClassifyOptions& opts) {
    std::vector<LengthClassification> out;
    LengthClassification prior = base_classification();
    for (int n = 2; n <= n_max; n += 2) {
        LengthClassification lc = classify_length(n, prior, max_d, opts);
        if (!lc.total_certified)
            throw CertificateFailed("classify_up_to: intermediate length not fully certified");
        out.push_back(std::move(lc));
        prior = out.back();
    }
    return out;
}

}  // namespace sdc
