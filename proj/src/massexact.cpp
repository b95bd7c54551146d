#include "sdc/massexact.hpp"

#include <sstream>

#include "sdc/errors.hpp"

namespace sdc {

BigCount factorial_big(int n) {
    BigCount f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigCount binomial_big(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount num = 1;
    for (int i = 1; i <= k; ++i) {
        num *= (n - k + i);
        num /= i;  // exact: product of i consecutive integers is divisible by i!
    }
    return num;
}

BigCount sigma_product(int m) {
    BigCount p = 1;
    for (int i = 1; i <= m; ++i) p *= (BigCount(1) << i) + 1;
    return p;
}

MassPolynomial mass_polynomial(int n) {
    if (n < 2 || n % 2 != 0) throw LengthMismatch("mass_polynomial: n must be even and >= 2");
    MassPolynomial mp;
    mp.n = n;
    mp.coeff.assign(static_cast<size_t>(n) + 1, 0);
    const BigCount ends = sigma_product(n / 2 - 1);
    const BigCount mid = sigma_product(n / 2 - 2);  // n = 2 has no middle terms
    mp.coeff[0] = ends;
    mp.coeff[static_cast<size_t>(n)] += ends;
    for (int j = 1; j <= n / 2 - 1; ++j) mp.coeff[static_cast<size_t>(2 * j)] += binomial_big(n, 2 * j) * mid;
    return mp;
}

namespace {

BigCount exact_quotient(const BigCount& num, const BigCount& den, const char* what) {
    if (den <= 0 || num % den != 0)
        throw NonDivisible(std::string(what) + ": " + den.str() + " does not divide " + num.str());
    return num / den;
}

}  // namespace

CertificateReport completeness_check(const std::vector<FamilyEntry>& family, int n, int d) {
    const BigCount nf = factorial_big(n);
    CertificateReport rep;
    rep.lhs = 0;
    for (const auto& e : family) {
        BigCount codes = exact_quotient(nf, e.aut_order, "completeness_check: #Aut must divide n!");
        if (e.weight_dist.size() != static_cast<size_t>(n) + 1)
            throw LengthMismatch("completeness_check: weight distribution size mismatch");
        rep.lhs += codes * e.weight_dist[static_cast<size_t>(d)];
    }
    rep.rhs = binomial_big(n, d) * sigma_product(std::max(0, n / 2 - 2));
    rep.ok = rep.lhs == rep.rhs;
    std::ostringstream os;
    os << "layer mass n=" << n << " d=" << d << ": lhs=" << rep.lhs << " rhs=" << rep.rhs
       << (rep.ok ? " OK" : " MISMATCH");
    rep.text = os.str();
    return rep;
}

CertificateReport total_mass_check(const std::vector<BigCount>& aut_orders, int n) {
    const BigCount nf = factorial_big(n);
    CertificateReport rep;
    rep.lhs = 0;
    for (const auto& a : aut_orders)
        rep.lhs += exact_quotient(nf, a, "total_mass_check: #Aut must divide n!");
    rep.rhs = sigma_product(n / 2 - 1);
    rep.ok = rep.lhs == rep.rhs;
    std::ostringstream os;
    os << "total mass n=" << n << ": lhs=" << rep.lhs << " rhs=" << rep.rhs
       << (rep.ok ? " OK" : " MISMATCH");
    rep.text = os.str();
    return rep;
}

BoundResult lower_bound_next_length(int n) {
    if (n < 2 || n % 2 != 0) throw LengthMismatch("lower_bound_next_length: n must be even and >= 2");
    BoundResult r;
    r.numerator = sigma_product(n / 2 - 1);
    r.denominator = factorial_big(n);
    const BigCount g = boost::multiprecision::gcd(r.numerator, r.denominator);
    r.numerator /= g;
    r.denominator /= g;
    r.ceiling = (r.numerator + r.denominator - 1) / r.denominator;
    const BigCount scaled = (r.numerator * 1000) / r.denominator;  // truncated
    const BigCount ip = scaled / 1000, fp = scaled % 1000;
    std::ostringstream os;
    os << ip << ".";
    std::string f = fp.str();
    os << std::string(3 - f.size(), '0') << f;
    r.decimal3 = os.str();
    return r;
}

}  // namespace sdc
