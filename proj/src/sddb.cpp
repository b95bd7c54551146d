#include "sdc/sddb.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sdc {

std::string digest_hex(const GenMatrix& m) {
    std::uint64_t h = 14695981039346656037ull;
    auto feed = [&](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    };
    for (int i = 0; i < m.k(); ++i) {
        for (int j = 0; j < m.n; ++j) feed(((m.rows[static_cast<size_t>(i)] >> j) & 1) ? '1' : '0');
        feed('\n');
    }
    std::ostringstream os;
    os << std::hex;
    for (int nib = 15; nib >= 0; --nib) os << ((h >> (4 * nib)) & 0xf);
    return os.str();
}

std::string serialize(const Layer& layer) {
    std::ostringstream os;
    os << "SDDB 1\n";
    os << "n=" << layer.n << " d=";
    if (layer.d < 0)
        os << "any";
    else
        os << layer.d;
    os << " count=" << layer.records.size() << " certified=" << (layer.certified ? 1 : 0) << "\n";
    for (const auto& r : layer.records) {
        os << "code id=" << digest_hex(r.canon) << " aut=" << r.aut_order << " minwt=" << r.min_weight
           << "\n";
        for (int i = 0; i < r.canon.k(); ++i) os << r.canon.row(i).to_string() << "\n";
        os << "end\n";
    }
    return os.str();
}

namespace {

bool consume(std::string& s, const std::string& prefix) {
    if (s.rfind(prefix, 0) != 0) return false;
    s.erase(0, prefix.size());
    return true;
}

std::string take_token(std::string& s) {
    size_t sp = s.find(' ');
    std::string tok = s.substr(0, sp);
    s.erase(0, sp == std::string::npos ? s.size() : sp + 1);
    return tok;
}

}  // namespace

Layer parse_db(std::istream& in) {
    Layer layer;
    std::string line;
    int lineno = 0;
    long declared_count = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        return true;
    };

    if (!next_line()) throw ParseError(1, "empty file");
    if (line != "SDDB 1") throw ParseError(lineno, "bad magic, expected 'SDDB 1'");
    if (!next_line()) throw ParseError(lineno + 1, "missing header");
    {
        std::string s = line;
        if (!consume(s, "n=")) throw ParseError(lineno, "header: expected n=");
        layer.n = std::stoi(take_token(s));
        if (!consume(s, "d=")) throw ParseError(lineno, "header: expected d=");
        std::string dtok = take_token(s);
        layer.d = dtok == "any" ? -1 : std::stoi(dtok);
        if (!consume(s, "count=")) throw ParseError(lineno, "header: expected count=");
        declared_count = std::stol(take_token(s));
        if (!consume(s, "certified=")) throw ParseError(lineno, "header: expected certified=");
        layer.certified = take_token(s) == "1";
        layer.records.reserve(static_cast<size_t>(declared_count));
    }
    if (layer.n < 1 || layer.n > 64) throw ParseError(lineno, "header: n out of range");

    while (next_line()) {
        if (line.empty()) continue;
        std::string s = line;
        if (!consume(s, "code id=")) throw ParseError(lineno, "expected 'code' block");
        ClassRecord rec;
        std::string id = take_token(s);
        if (!consume(s, "aut=")) throw ParseError(lineno, "record: expected aut=");
        rec.aut_order = BigCount(take_token(s));
        if (!consume(s, "minwt=")) throw ParseError(lineno, "record: expected minwt=");
        rec.min_weight = std::stoi(take_token(s));

        rec.canon.n = layer.n;
        for (;;) {
            if (!next_line()) throw ParseError(lineno, "unterminated record");
            if (line == "end") break;
            if (line.size() != static_cast<size_t>(layer.n))
                throw ParseError(lineno, "generator row has wrong length");
            rec.canon.rows.push_back(BitVector::from_string(line).bits());
        }
        if (digest_hex(rec.canon) != id) throw IntegrityError("record digest mismatch (" + id + ")");
        rec.origin = "db";
        layer.records.push_back(std::move(rec));
    }

    if (static_cast<long>(layer.records.size()) != declared_count)
        throw IntegrityError("header count " + std::to_string(declared_count) + " but " +
                             std::to_string(layer.records.size()) + " records present");

    // Never trust stored rows: re-verify independence and self-duality.
    for (const auto& rec : layer.records) {
        const GenMatrix& g = rec.canon;
        if (rank_of(g) != g.k()) throw IntegrityError("record has dependent generator rows");
        if (layer.n != 2 * g.k()) throw IntegrityError("record dimension is not n/2");
        for (int i = 0; i < g.k(); ++i)
            for (int j = i; j < g.k(); ++j)
                if (parity_of(g.rows[static_cast<size_t>(i)] & g.rows[static_cast<size_t>(j)]))
                    throw IntegrityError("record is not self-dual");
    }
    for (size_t i = 1; i < layer.records.size(); ++i)
        if (!(layer.records[i - 1].canon < layer.records[i].canon))
            throw IntegrityError("records are not in ascending canonical order");
    return layer;
}

Layer parse_db(const std::string& text) {
    std::istringstream is(text);
    return parse_db(is);
}

Layer combined_layer(const LengthClassification& lc) {
    Layer out;
    out.n = lc.n;
    out.d = -1;
    out.certified = lc.total_certified;
    for (const auto& l : lc.layers)
        for (const auto& r : l.records) out.records.push_back(r);
    std::sort(out.records.begin(), out.records.end(),
              [](const ClassRecord& a, const ClassRecord& b) { return a.canon < b.canon; });
    return out;
}

ReportKind report_kind_from_string(const std::string& s) {
    if (s == "counts") return ReportKind::Counts;
    if (s == "we") return ReportKind::WE;
    if (s == "aut") return ReportKind::Aut;
    if (s == "shadow") return ReportKind::Shadow;
    if (s == "cr") return ReportKind::CR;
    throw ParseError(0, "unknown report kind: " + s);
}

std::string report(const Layer& db, ReportKind kind) {
    std::ostringstream os;
    std::map<int, std::vector<const ClassRecord*>> by_d;
    for (const auto& r : db.records) by_d[r.min_weight].push_back(&r);

    switch (kind) {
        case ReportKind::Counts: {
            if (!db.certified) throw NotCertified("report: counts requires a certified database");
            os << "n=" << db.n << " total=" << db.records.size() << " certified=1\n";
            for (const auto& [d, recs] : by_d) os << "d=" << d << ": " << recs.size() << "\n";
            break;
        }
        case ReportKind::WE: {
            os << "distinct weight enumerators, n=" << db.n << "\n";
            for (const auto& [d, recs] : by_d) {
                std::map<std::vector<std::uint64_t>, std::size_t> dists;
                for (const auto* r : recs) ++dists[Code(r->canon).weight_dist()];
                os << "d=" << d << ": " << dists.size() << "\n";
                if (db.n == 36 && d == 6) {
                    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> gd;
                    for (const auto& [dist, cnt] : dists) {
                        WE36Params p = we36_from_distribution(dist);
                        gd[{p.gamma, p.delta}] += cnt;
                    }
                    for (const auto& [p, cnt] : gd)
                        os << "  (gamma,delta)=(" << p.first << "," << p.second << "): " << cnt << "\n";
                }
            }
            break;
        }
        case ReportKind::Aut: {
            os << "automorphism group orders, n=" << db.n << "\n";
            for (const auto& [d, recs] : by_d) {
                std::map<BigCount, std::size_t> hist;
                for (const auto* r : recs) ++hist[r->aut_order];
                os << "d=" << d << ": min=" << hist.begin()->first << " max=" << hist.rbegin()->first
                   << "\n";
                for (const auto& [o, cnt] : hist) os << "  aut=" << o << ": " << cnt << "\n";
            }
            break;
        }
        case ReportKind::Shadow: {
            os << "shadow minimum weights, n=" << db.n << "\n";
            for (const auto& [d, recs] : by_d) {
                std::map<int, std::size_t> hist;
                std::size_t doubly = 0;
                for (const auto* r : recs) {
                    Code c(r->canon);
                    if (classify_parity(c) == Parity::DoublyEven)
                        ++doubly;
                    else
                        ++hist[shadow(c).min_weight];
                }
                os << "d=" << d << ":";
                for (const auto& [s, cnt] : hist) os << " s=" << s << ":" << cnt;
                if (doubly) os << " doubly-even:" << doubly;
                os << "\n";
            }
            break;
        }
        case ReportKind::CR: {
            os << "covering radii, n=" << db.n << "\n";
            for (const auto& [d, recs] : by_d) {
                std::map<int, std::size_t> hist;
                for (const auto* r : recs) ++hist[covering_radius(Code(r->canon))];
                os << "d=" << d << ":";
                for (const auto& [rr, cnt] : hist) os << " R=" << rr << ":" << cnt;
                os << "\n";
            }
            break;
        }
    }
    return os.str();
}

}  // namespace sdc
