#pragma once

// Exact arbitrary-precision certificates: the weight-enumerator mass
// identity, the per-layer completeness criterion, the total-mass identity,
// and the class-count lower bound for the next length.

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/bigcount.hpp"

namespace sdc {

BigCount factorial_big(int n);
BigCount binomial_big(int n, int k);

// prod_{i=1..m} (2^i + 1); the empty product is 1.
BigCount sigma_product(int m);

struct MassPolynomial {
    int n = 0;
    std::vector<BigCount> coeff;  // coefficient of y^w, w = 0..n
};

// Exact sum of weight enumerators over all (labeled) self-dual codes of
// length n: coefficient of y^0 and y^n is sigma_product(n/2-1), coefficient
// of y^(2j) for 0 < 2j < n is binom(n,2j) * sigma_product(n/2-2).
MassPolynomial mass_polynomial(int n);

struct FamilyEntry {
    BigCount aut_order;
    std::vector<std::uint64_t> weight_dist;
};

struct CertificateReport {
    bool ok = false;
    BigCount lhs, rhs;
    std::string text;
};

// Layer completeness: the family lists one representative per known class of
// minimum weight <= d. The family is complete iff
//   sum over classes of (n!/#Aut) * A_d(C)  ==  binom(n,d) * sigma_product(n/2-2).
CertificateReport completeness_check(const std::vector<FamilyEntry>& family, int n, int d);

// Full-length completeness: sum n!/#Aut == sigma_product(n/2-1).
CertificateReport total_mass_check(const std::vector<BigCount>& aut_orders, int n);

struct BoundResult {
    BigCount numerator, denominator;  // reduced exact fraction
    BigCount ceiling;                 // least possible class count
    std::string decimal3;             // decimal rendering truncated to 3 places
};

// sigma_product(n/2-1) / n! : each equivalence class contains at most n!
// distinct codes, so the ceiling bounds the class count from below.
BoundResult lower_bound_next_length(int n);

}  // namespace sdc
